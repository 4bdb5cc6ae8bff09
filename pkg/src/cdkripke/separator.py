"""Synthesis of sequents separating classical from constant-domain validity.

Given any signature containing a non-monotonic connective c, these
builders produce a propositional sequent over the symbols p, q, r, s
that is classically valid yet refuted in an explicit two-world
constant-domain model, together with the expected evaluation tables, and
then verify the whole package mechanically. The construction splits on
the pair (f(all-zeros), f(all-ones)) of c's truth function:

    case a: (0, 0)   sequent  phi => p        refuted in the p/r chain
    case b: (0, 1)   phi => chi, or psi => phi' (two subcases)
    case c: (1, 0)   c-negation: not_c not_c p => p
    case d: (1, 1)   sequent  => phi          refuted in the p/q chain

The countermodel is always the same two-world chain w0 < w1 over a
one-element domain: p is false at w0 and true at w1, q is false
everywhere, and r (when used) is true everywhere. Unmentioned symbols
are false everywhere, which keeps heredity trivially intact.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

from .classical import (
    ClassicalEvaluator,
    ClassicalModel,
    Valid,
    decide_propositional,
)
from .errors import ConstructionError, UsageError
from .kripke import (
    Failure,
    KripkeEvaluator,
    KripkeModel,
    kripke_model_to_json,
    model_validity,
    validate_kripke_model,
)
from .syntax import (
    Atom,
    Conn,
    Formula,
    Sequent,
    is_propositional_sequent,
    predicates,
    print_formula,
    print_sequent,
    substitute_symbol,
)
from .truthfn import (
    Signature,
    TruthTable,
    classify_case,
    eval_table,
    index_vector,
    invert,
    monotonicity_witness,
    ones,
    relative_invert,
    zeros,
)

P, Q, R, S = Atom("p"), Atom("q"), Atom("r"), Atom("s")

ALLOWED_SYMBOLS = frozenset(["p", "q", "r", "s"])


@dataclass(frozen=True)
class AllMonotone:
    """Every connective preserves the pointwise order; nothing separates."""


@dataclass(frozen=True)
class ExpectedCell:
    formula: str  # key into SeparationResult.formulas, or a bare symbol
    kind: str  # "value" or "args" (argument values of the top connective)
    expected: object


@dataclass(frozen=True)
class ExpectedRow:
    label: str
    cells: tuple
    world: Optional[str] = None  # Kripke rows
    valuation: Optional[tuple] = None  # classical rows: ((symbol, bit), ...)


@dataclass(frozen=True)
class ExpectedTable:
    name: str
    rows: tuple


@dataclass(frozen=True)
class SeparationResult:
    connective: TruthTable
    case: str
    subcase: Optional[int]
    witness_a: Optional[tuple]
    witness_b: Optional[tuple]
    formulas: Mapping
    sequent: Sequent
    countermodel: KripkeModel
    failing_world: str
    tables: tuple
    notes: tuple = ()

    def signature(self) -> Signature:
        return Signature.of(self.connective)


def chain_countermodel(with_r: bool) -> KripkeModel:
    """The two-world chain with p rising 0 -> 1, q constant 0, and r
    constant 1 when requested."""
    interp = {("w1", "p", ()): 1}
    if with_r:
        interp[("w0", "r", ())] = 1
        interp[("w1", "r", ())] = 1
    return validate_kripke_model(
        ["w0", "w1"],
        [("w0", "w1")],
        {"w0": ("a1",), "w1": ("a1",)},
        interp,
    )


def build_negation(table: TruthTable, f: Formula) -> Formula:
    """c(f, ..., f): behaves as negation whenever f(0...0)=1 and f(1...1)=0."""
    if table.arity < 1:
        raise UsageError("negation needs arity >= 1")
    return Conn(table.name, (f,) * table.arity)


def build_tau(table: TruthTable) -> Formula:
    """c(s, ..., s): valid in every Kripke model when f(0...0)=f(1...1)=1,
    because every argument vector it can see is all-zeros or all-ones."""
    if classify_case(table) != "d":
        raise UsageError("tau construction needs f(0...0) = f(1...1) = 1")
    return Conn(table.name, (S,) * table.arity)


def _repeated(table: TruthTable, f: Formula) -> Formula:
    """c(f, ..., f) with no case gate; a placeholder that a later
    substitution replaces wholesale."""
    if table.arity < 1:
        raise UsageError("needs arity >= 1")
    return Conn(table.name, (f,) * table.arity)


def _slots(a: tuple, b: tuple, on_zz: Formula, on_zo: Formula, on_one: Formula) -> tuple:
    """Per-index formula choices keyed by the (a[i], b[i]) pattern; a <= b,
    so the patterns are (0,0), (0,1) and (1,1)."""
    out = []
    for x, y in zip(a, b):
        if x == 1:
            out.append(on_one)
        elif y == 1:
            out.append(on_zo)
        else:
            out.append(on_zz)
    return tuple(out)


def _vec(formula_key: str, expected: tuple) -> ExpectedCell:
    return ExpectedCell(formula_key, "args", tuple(expected))


def _val(formula_key: str, expected: int) -> ExpectedCell:
    return ExpectedCell(formula_key, "value", expected)


def _classical_row(valuation: Sequence, cells: Sequence) -> ExpectedRow:
    label = ",".join(f"{sym}={bit}" for sym, bit in valuation)
    return ExpectedRow(label, tuple(cells), valuation=tuple(valuation))


def _kripke_row(world: str, cells: Sequence) -> ExpectedRow:
    return ExpectedRow(world, tuple(cells), world=world)


def _layer_tables(
    subcase: int,
    a: tuple,
    b: tuple,
    rel: tuple,
    keys: tuple = ("sigma", "psi", "phi"),
    extra_valuation: tuple = (),
) -> tuple:
    """Expected classical and Kripke tables for the three-layer stack of
    case d; also reused by case b subcase 2 with the tau slots renamed to
    r (extra_valuation then pins r to 1 in the classical rows)."""
    n = len(a)
    one = ones(n)
    sg, ps, ph = keys
    if subcase == 1:
        classical = [
            ((0, 0), (_vec(sg, a), _val(sg, 1), _vec(ps, b), _val(ps, 0), _vec(ph, a), _val(ph, 1))),
            ((0, 1), (_vec(sg, rel), _val(sg, 1), _vec(ps, b), _val(ps, 0), _vec(ph, a), _val(ph, 1))),
            ((1, 0), (_vec(sg, b), _val(sg, 0), _vec(ps, rel), _val(ps, 1), _vec(ph, one), _val(ph, 1))),
            ((1, 1), (_vec(sg, one), _val(sg, 1), _vec(ps, one), _val(ps, 1), _vec(ph, one), _val(ph, 1))),
        ]
        kripke = [
            ("w1", (_vec(sg, b), _val(sg, 0), _vec(ps, rel), _val(ps, 1), _vec(ph, one), _val(ph, 1))),
            ("w0", (_vec(sg, a), _val(sg, 0), _vec(ps, a), _val(ps, 1), _vec(ph, b), _val(ph, 0))),
        ]
    else:
        classical = [
            ((0, 0), (_vec(sg, a), _val(sg, 1), _vec(ps, rel), _val(ps, 0), _vec(ph, a), _val(ph, 1))),
            ((0, 1), (_vec(sg, rel), _val(sg, 0), _vec(ps, b), _val(ps, 0), _vec(ph, a), _val(ph, 1))),
            ((1, 0), (_vec(sg, b), _val(sg, 0), _vec(ps, a), _val(ps, 1), _vec(ph, one), _val(ph, 1))),
            ((1, 1), (_vec(sg, one), _val(sg, 1), _vec(ps, one), _val(ps, 1), _vec(ph, one), _val(ph, 1))),
        ]
        kripke = [
            ("w1", (_vec(sg, b), _val(sg, 0), _vec(ps, a), _val(ps, 1), _vec(ph, one), _val(ph, 1))),
            ("w0", (_vec(sg, a), _val(sg, 0), _vec(ps, a), _val(ps, 1), _vec(ph, rel), _val(ph, 0))),
        ]
    classical_rows = [
        _classical_row((("p", pv), ("q", qv)) + tuple(extra_valuation), cells)
        for (pv, qv), cells in classical
    ]
    kripke_rows = [_kripke_row(w, cells) for w, cells in kripke]
    return (
        ExpectedTable(f"classical-subcase-{subcase}", tuple(classical_rows)),
        ExpectedTable(f"kripke-subcase-{subcase}", tuple(kripke_rows)),
    )


def build_case_d(table: TruthTable) -> SeparationResult:
    """f(0...0) = f(1...1) = 1: the sequent => phi, refuted at w0 of the
    p/q chain. Subcase 1 or 2 by the value of f on the relative
    inversion of the witness pair."""
    if classify_case(table) != "d":
        raise UsageError("case d needs f(0...0) = f(1...1) = 1")
    witness = monotonicity_witness(table)
    if witness is None:
        raise UsageError("case d construction needs a non-monotonic table")
    a, b = witness
    rel = relative_invert(a, b)
    subcase = 1 if eval_table(table, rel) == 1 else 2
    tau = build_tau(table)
    name = table.name
    sigma = Conn(name, _slots(a, b, Q, P, tau))
    if subcase == 1:
        psi = Conn(name, _slots(a, b, P, sigma, tau))
        phi = Conn(name, _slots(a, b, P, psi, tau))
    else:
        psi = Conn(name, _slots(a, b, sigma, Q, tau))
        phi = Conn(name, _slots(a, b, psi, P, tau))
    result = SeparationResult(
        connective=table,
        case="d",
        subcase=subcase,
        witness_a=a,
        witness_b=b,
        formulas={"tau": tau, "sigma": sigma, "psi": psi, "phi": phi},
        sequent=Sequent((), (phi,)),
        countermodel=chain_countermodel(with_r=False),
        failing_world="w0",
        tables=_layer_tables(subcase, a, b, rel),
    )
    return _checked(result)


def build_case_c(table: TruthTable) -> SeparationResult:
    """f(0...0) = 1 and f(1...1) = 0: double c-negation of p is classically
    equivalent to p but fails at the root of the chain, where p only holds
    later."""
    if classify_case(table) != "c":
        raise UsageError("case c needs f(0...0) = 1 and f(1...1) = 0")
    not_p = build_negation(table, P)
    not_not_p = build_negation(table, not_p)
    tables = (
        ExpectedTable(
            "classical-negation",
            (
                _classical_row((("p", 0),), (_val("not_p", 1), _val("not_not_p", 0))),
                _classical_row((("p", 1),), (_val("not_p", 0), _val("not_not_p", 1))),
            ),
        ),
        ExpectedTable(
            "kripke-negation",
            (
                _kripke_row("w1", (_val("not_p", 0), _val("not_not_p", 1), _val("p", 1))),
                _kripke_row("w0", (_val("not_p", 0), _val("not_not_p", 1), _val("p", 0))),
            ),
        ),
    )
    result = SeparationResult(
        connective=table,
        case="c",
        subcase=None,
        witness_a=None,
        witness_b=None,
        formulas={"not_p": not_p, "not_not_p": not_not_p},
        sequent=Sequent((not_not_p,), (P,)),
        countermodel=chain_countermodel(with_r=False),
        failing_world="w0",
        tables=tables,
    )
    return _checked(result)


def build_case_b(table: TruthTable) -> SeparationResult:
    """f(0...0) = 0 and f(1...1) = 1, yet non-monotonic. Subcase 1
    (f on the inversion of a is 1) refutes phi => chi; subcase 2 reuses
    the case-d stack with its tau slots replaced by r and refutes
    psi => phi."""
    if classify_case(table) != "b":
        raise UsageError("case b needs f(0...0) = 0 and f(1...1) = 1")
    witness = monotonicity_witness(table)
    if witness is None:
        raise UsageError("case b construction needs a non-monotonic table")
    a, b = witness
    name = table.name
    if eval_table(table, invert(a)) == 1:
        n = len(a)
        chi = Conn(name, tuple(P if x else Q for x in a))
        psi = Conn(name, _slots(a, b, Q, P, R))
        phi = Conn(name, _slots(a, b, Q, psi, R))
        tables = (
            ExpectedTable(
                "classical-facts",
                (
                    _classical_row((("p", 0), ("q", 1), ("r", 0)), (_val("chi", 1),)),
                    _classical_row((("p", 1), ("q", 0), ("r", 0)), (_val("chi", 1),)),
                    _classical_row((("p", 1), ("q", 1), ("r", 0)), (_val("chi", 1),)),
                    _classical_row((("p", 0), ("q", 0), ("r", 0)), (_val("psi", 0), _val("phi", 0))),
                    _classical_row((("p", 0), ("q", 0), ("r", 1)), (_val("psi", 1), _val("phi", 0))),
                ),
            ),
            ExpectedTable(
                "kripke-chain",
                (
                    _kripke_row(
                        "w1",
                        (_vec("chi", a), _val("chi", 1), _vec("psi", b), _val("psi", 0),
                         _vec("phi", a), _val("phi", 1)),
                    ),
                    _kripke_row(
                        "w0",
                        (_vec("chi", zeros(n)), _val("chi", 0), _vec("psi", a), _val("psi", 0),
                         _vec("phi", a), _val("phi", 1)),
                    ),
                ),
            ),
        )
        result = SeparationResult(
            connective=table,
            case="b",
            subcase=1,
            witness_a=a,
            witness_b=b,
            formulas={"chi": chi, "psi": psi, "phi": phi},
            sequent=Sequent((phi,), (chi,)),
            countermodel=chain_countermodel(with_r=True),
            failing_world="w0",
            tables=tables,
        )
        return _checked(result)
    return _case_b_subcase2(table, a, b)


def _case_b_subcase2(table: TruthTable, a: tuple, b: tuple) -> SeparationResult:
    rel = relative_invert(a, b)
    name = table.name
    psi = Conn(name, tuple(R if x else Q for x in a))
    tau = _repeated(table, S)
    candidates = {}
    for variant, layer_subcase in (("PP", 1), ("QQ", 2)):
        sigma_t = Conn(name, _slots(a, b, Q, P, tau))
        if layer_subcase == 1:
            psi_t = Conn(name, _slots(a, b, P, sigma_t, tau))
            phi_t = Conn(name, _slots(a, b, P, psi_t, tau))
        else:
            psi_t = Conn(name, _slots(a, b, sigma_t, Q, tau))
            phi_t = Conn(name, _slots(a, b, psi_t, P, tau))
        sigma_r = substitute_symbol(sigma_t, tau, R)
        psi_r = substitute_symbol(psi_t, tau, R)
        phi_r = substitute_symbol(phi_t, tau, R)
        layer_cls, layer_kr = _layer_tables(
            layer_subcase,
            a,
            b,
            rel,
            keys=("sigma_layer", "psi_layer", "phi"),
            extra_valuation=(("r", 1),),
        )
        tables = (
            ExpectedTable(
                "classical-facts",
                (
                    _classical_row((("q", 0), ("r", 0)), (_val("psi", 0),)),
                    _classical_row((("q", 1), ("r", 0)), (_val("psi", 0),)),
                ),
            ),
            layer_cls,
            ExpectedTable(
                layer_kr.name,
                layer_kr.rows
                + (
                    _kripke_row("w1", (_val("psi", 1),)),
                    _kripke_row("w0", (_val("psi", 1),)),
                ),
            ),
        )
        candidates[variant] = SeparationResult(
            connective=table,
            case="b",
            subcase=2,
            witness_a=a,
            witness_b=b,
            formulas={
                "psi": psi,
                "sigma_layer": sigma_r,
                "psi_layer": psi_r,
                "phi": phi_r,
            },
            sequent=Sequent((psi,), (phi_r,)),
            countermodel=chain_countermodel(with_r=True),
            failing_world="w0",
            tables=tables,
            notes=(f"variant={variant}",),
        )
    preferred = "PP" if eval_table(table, rel) == 1 else "QQ"
    other = "QQ" if preferred == "PP" else "PP"
    reports = {v: verify_separation(r) for v, r in candidates.items()}
    if reports[preferred].passed:
        chosen = candidates[preferred]
    elif reports[other].passed:
        chosen = candidates[other]
    else:
        raise ConstructionError(
            f"neither candidate verifies for {table.name} ({table.bits()}): "
            f"PP: {reports['PP'].summary()}; QQ: {reports['QQ'].summary()}"
        )
    return replace(
        chosen,
        notes=chosen.notes
        + (
            f"preferred={preferred}",
            f"PP_verified={reports['PP'].passed}",
            f"QQ_verified={reports['QQ'].passed}",
        ),
    )


def build_case_a(table: TruthTable) -> SeparationResult:
    """f(0...0) = f(1...1) = 0 with f(a) = 1 somewhere: phi => p is
    classically valid but the chain satisfies phi at w0 while p fails."""
    if classify_case(table) != "a":
        raise UsageError("case a needs f(0...0) = f(1...1) = 0")
    a = None
    for i in range(2 ** table.arity):
        if table.outputs[i] == 1:
            a = index_vector(i, table.arity)
            break
    if a is None:
        raise UsageError("case a construction needs a non-monotonic table")
    name = table.name
    psi = Conn(name, tuple(R if x else P for x in a))
    phi = Conn(name, tuple(R if x else psi for x in a))
    n = len(a)
    tables = (
        ExpectedTable(
            "classical-facts",
            (
                _classical_row((("p", 0), ("r", 0)), (_val("psi", 0), _val("phi", 0))),
                _classical_row((("p", 0), ("r", 1)), (_val("psi", 1), _val("phi", 0))),
            ),
        ),
        ExpectedTable(
            "kripke-chain",
            (
                _kripke_row("w1", (_vec("psi", ones(n)), _val("psi", 0), _vec("phi", a), _val("phi", 1))),
                _kripke_row("w0", (_vec("psi", a), _val("psi", 0), _vec("phi", a), _val("phi", 1),
                                   _val("p", 0))),
            ),
        ),
    )
    result = SeparationResult(
        connective=table,
        case="a",
        subcase=None,
        witness_a=a,
        witness_b=None,
        formulas={"psi": psi, "phi": phi},
        sequent=Sequent((phi,), (P,)),
        countermodel=chain_countermodel(with_r=True),
        failing_world="w0",
        tables=tables,
    )
    return _checked(result)


_CASE_BUILDERS = {
    "a": build_case_a,
    "b": build_case_b,
    "c": build_case_c,
    "d": build_case_d,
}


def separate(sig: Signature):
    """AllMonotone, or a verified SeparationResult for the first
    non-monotonic connective in name order."""
    for name in sig.names():
        table = sig.connectives[name]
        if monotonicity_witness(table) is not None:
            return _CASE_BUILDERS[classify_case(table)](table)
    return AllMonotone()


def _checked(result: SeparationResult) -> SeparationResult:
    report = verify_separation(result)
    if not report.passed:
        raise ConstructionError(
            f"separation for {result.connective.name} "
            f"({result.connective.bits()}) failed verification: {report.summary()}"
        )
    return result


# --- verification ----------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    classical_symbols: tuple = ()
    classical_valuations: int = 0

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def summary(self) -> str:
        bad = self.failures()
        if not bad:
            return f"all {len(self.checks)} checks passed"
        return f"{len(bad)}/{len(self.checks)} checks failed: " + "; ".join(
            f"{c.name} ({c.detail})" for c in bad[:5]
        )

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "classical_symbols": list(self.classical_symbols),
            "classical_valuations": self.classical_valuations,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }


def _resolve(result: SeparationResult, key: str) -> Formula:
    f = result.formulas.get(key)
    if f is not None:
        return f
    if key in ALLOWED_SYMBOLS:
        return Atom(key)
    raise UsageError(f"expected-table cell names unknown formula {key!r}")


def verify_separation(result: SeparationResult) -> VerificationReport:
    """Re-derive everything the result claims; mismatches become failed
    checks, never exceptions."""
    report = VerificationReport()
    sig = result.signature()

    # the countermodel must itself validate
    try:
        validate_kripke_model(
            result.countermodel.worlds,
            result.countermodel.order,
            result.countermodel.domains,
            result.countermodel.interp,
        )
        report.add("countermodel-validates", True)
    except Exception as exc:  # noqa: BLE001 - recorded, not raised
        report.add("countermodel-validates", False, str(exc))

    # shape of the sequent
    report.add(
        "sequent-propositional",
        is_propositional_sequent(result.sequent),
        print_sequent(result.sequent),
    )
    try:
        symbols = set(predicates(result.sequent))
        report.add(
            "sequent-symbols",
            symbols <= set(ALLOWED_SYMBOLS),
            f"symbols {sorted(symbols)}",
        )
    except UsageError as exc:
        report.add("sequent-symbols", False, str(exc))
        symbols = set()

    # classical half: exhaustive enumeration over the occurring symbols
    try:
        verdict = decide_propositional(sig, result.sequent)
        report.classical_symbols = tuple(sorted(symbols))
        report.classical_valuations = 2 ** len(symbols)
        report.add(
            "classically-valid",
            isinstance(verdict, Valid),
            "valid" if isinstance(verdict, Valid) else f"refuted by {verdict}",
        )
    except UsageError as exc:
        report.add("classically-valid", False, str(exc))

    # constant-domain half: the countermodel refutes it at the stated world
    verdict = model_validity(result.countermodel, result.sequent, sig)
    if isinstance(verdict, Failure):
        report.add(
            "cd-refuted",
            verdict.world == result.failing_world and not verdict.assignment,
            f"failure at {verdict.world}",
        )
    else:
        report.add("cd-refuted", False, "countermodel does not refute the sequent")

    # every embedded expected table cell
    kripke_eval = KripkeEvaluator(result.countermodel, sig)
    for table in result.tables:
        for row in table.rows:
            if row.world is not None:
                world = row.world

                def evaluate(g, _w=world):
                    return kripke_eval.value(g, _w, {})
            else:
                interp = {(sym, ()): bit for sym, bit in row.valuation}
                model = ClassicalModel(("a1",), interp)
                evaluator = ClassicalEvaluator(model, sig)

                def evaluate(g, _e=evaluator):
                    return _e.value(g, {})
            for cell in row.cells:
                f = _resolve(result, cell.formula)
                where = f"{table.name}/{row.label}/{cell.formula}"
                if cell.kind == "value":
                    actual = evaluate(f)
                    report.add(
                        f"table:{where}",
                        actual == cell.expected,
                        f"expected {cell.expected}, got {actual}",
                    )
                elif isinstance(f, Conn):
                    actual = tuple(evaluate(g) for g in f.args)
                    report.add(
                        f"table:{where}",
                        actual == tuple(cell.expected),
                        f"expected {tuple(cell.expected)}, got {actual}",
                    )
                else:
                    report.add(f"table:{where}", False, "args cell on a non-connective")
    return report


# --- serialization ---------------------------------------------------------


def separation_to_json(
    result: SeparationResult, report: Optional[VerificationReport] = None
) -> dict:
    if report is None:
        report = verify_separation(result)
    return {
        "connective": {
            "name": result.connective.name,
            "arity": result.connective.arity,
            "bits": result.connective.bits(),
        },
        "case": result.case,
        "subcase": result.subcase,
        "witness_a": list(result.witness_a) if result.witness_a is not None else None,
        "witness_b": list(result.witness_b) if result.witness_b is not None else None,
        "formulas": {k: print_formula(f) for k, f in sorted(result.formulas.items())},
        "sequent": print_sequent(result.sequent),
        "countermodel": kripke_model_to_json(result.countermodel),
        "failing_world": result.failing_world,
        "notes": list(result.notes),
        "verification": report.to_json(),
    }


def render_separation(
    result: SeparationResult, report: Optional[VerificationReport] = None
) -> str:
    if report is None:
        report = verify_separation(result)
    lines = [
        f"connective {result.connective.name} "
        f"(arity {result.connective.arity}, bits {result.connective.bits()})",
        f"case {result.case}" + (f" subcase {result.subcase}" if result.subcase else ""),
    ]
    if result.witness_a is not None:
        lines.append(f"witness a = {result.witness_a}")
    if result.witness_b is not None:
        lines.append(f"witness b = {result.witness_b}")
    for key, f in sorted(result.formulas.items()):
        lines.append(f"  {key} = {print_formula(f)}")
    lines.append(f"sequent: {print_sequent(result.sequent)}")
    lines.append(f"refuted at {result.failing_world} of the two-world chain")
    for table in result.tables:
        lines.append(f"table {table.name}:")
        for row in table.rows:
            cells = "  ".join(
                f"{c.formula}{'[args]' if c.kind == 'args' else ''}={c.expected}"
                for c in row.cells
            )
            lines.append(f"  {row.label}: {cells}")
    lines.append(
        "verification: "
        + ("PASS" if report.passed else "FAIL")
        + f" ({len(report.checks)} checks, "
        + f"{report.classical_valuations} classical valuations)"
    )
    for c in report.failures():
        lines.append(f"  FAIL {c.name}: {c.detail}")
    return "\n".join(lines)
