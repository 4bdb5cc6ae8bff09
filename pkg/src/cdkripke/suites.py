"""Seeded randomized suites for the semantic invariants.

Three suites, all reproducible from their seed:

  heredity   formula values never drop along the order of a validated
             Kripke model (growing domains allowed, non-monotonic
             connectives allowed);
  lift       a propositional sequent with a classical countermodel is
             refuted by the one-world lift of that countermodel;
  collapse   over a monotonic signature, constant-domain Kripke values
             coincide with the per-world classical projections.

Reports are plain data. Rendering them twice from the same seed gives
byte-identical text, so they can serve as golden artifacts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .classical import Countermodel, decide_propositional
from .collapse import check_collapse, lift_classical
from .kripke import (
    Failure,
    KripkeModel,
    check_heredity,
    model_validity,
    validate_kripke_model,
)
from .syntax import Atom, Conn, Exists, Forall, Formula, Sequent
from .truthfn import Signature, standard_signature

MIXED_SIGNATURE = standard_signature("and", "or", "implies", "nand", "xor", "not")
MONOTONE_SIGNATURE = standard_signature("and", "or")

_PREDS = {"p": 0, "q": 0, "P": 1}
_ATOMS = (Atom("p"), Atom("q"), Atom("P", ("x",)))


def random_kripke_model(
    rng: random.Random,
    max_worlds: int = 3,
    max_domain: int = 2,
    constant_domain: bool = False,
) -> KripkeModel:
    """A validated random model; heredity and domain growth hold by
    construction (raw random bits are closed upward along the order)."""
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    pairs = [
        (worlds[i], worlds[j])
        for i in range(n)
        for j in range(n)
        if i != j and rng.random() < 0.5
    ]
    # future sets under the closure, needed to close things upward
    probe = validate_kripke_model(worlds, pairs, {w: ("a1",) for w in worlds}, {})
    future = probe.future

    pool = [f"a{i + 1}" for i in range(max_domain)]
    domains = {w: {"a1"} for w in worlds}
    for elem in pool[1:]:
        if constant_domain:
            if rng.random() < 0.7:
                for w in worlds:
                    domains[w].add(elem)
        else:
            for w in worlds:
                if rng.random() < 0.4:
                    for v in future[w]:
                        domains[v].add(elem)
    domains = {w: tuple(sorted(domains[w])) for w in worlds}

    interp = {}
    for pred, arity in sorted(_PREDS.items()):
        if arity == 0:
            tuples = [()]
        else:
            tuples = [(a,) for a in pool]
        for args in tuples:
            for w in worlds:
                if any(a not in domains[w] for a in args):
                    continue
                if rng.random() < 0.4:
                    for v in future[w]:
                        interp[(v, pred, args)] = 1
    return validate_kripke_model(worlds, pairs, domains, interp)


def random_formula(
    rng: random.Random,
    sig: Signature,
    depth: int,
    atoms: Sequence[Formula] = _ATOMS,
    quantifiers: bool = True,
) -> Formula:
    if depth <= 1 or rng.random() < 0.25:
        return rng.choice(atoms)
    names = sig.names()
    kinds = ["conn"] * 4 + (["forall", "exists"] if quantifiers else [])
    kind = rng.choice(kinds)
    if kind == "conn":
        name = rng.choice(names)
        arity = sig.arity(name)
        return Conn(
            name,
            tuple(random_formula(rng, sig, depth - 1, atoms, quantifiers)
                  for _ in range(arity)),
        )
    body = random_formula(rng, sig, depth - 1, atoms, quantifiers)
    return Forall("x", body) if kind == "forall" else Exists("x", body)


def random_propositional_sequent(
    rng: random.Random,
    sig: Signature,
    symbols: Sequence[str] = ("p", "q", "r"),
    depth: int = 3,
    max_side: int = 2,
) -> Sequent:
    atoms = tuple(Atom(s) for s in symbols)

    def formula():
        return random_formula(rng, sig, rng.randint(1, depth), atoms, quantifiers=False)

    antecedent = [formula() for _ in range(rng.randint(0, max_side))]
    succedent = [formula() for _ in range(rng.randint(1, max_side))]
    return Sequent(antecedent, succedent)


@dataclass
class SuiteReport:
    name: str
    seed: int
    trials: int
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def render(self) -> str:
        head = (
            f"{self.name}: seed={self.seed} trials={self.trials} "
            f"violations={len(self.violations)}"
        )
        return "\n".join([head] + [f"  {v}" for v in self.violations[:20]])

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "violations": list(self.violations[:100]),
            "passed": self.passed,
        }


def run_heredity_suite(
    seed: int,
    trials: int = 10_000,
    sig: Optional[Signature] = None,
) -> SuiteReport:
    """Formula values never drop along the order, whatever the tables."""
    sig = sig or MIXED_SIGNATURE
    rng = random.Random(seed)
    report = SuiteReport("heredity", seed, trials)
    for i in range(trials):
        model = random_kripke_model(rng)
        f = random_formula(rng, sig, depth=4)
        rho = {"x": "a1"} if f.fv else {}
        if not check_heredity(model, f, rho, sig):
            report.violations.append(f"trial {i}: {f} drops along the order of {model}")
    return report


def run_lift_suite(
    seed: int,
    trials: int = 1_000,
    sig: Optional[Signature] = None,
) -> SuiteReport:
    """A classical countermodel, lifted to one world, still refutes."""
    sig = sig or MIXED_SIGNATURE
    rng = random.Random(seed)
    report = SuiteReport("lift", seed, trials)
    for i in range(trials):
        s = random_propositional_sequent(rng, sig)
        verdict = decide_propositional(sig, s)
        if not isinstance(verdict, Countermodel):
            continue
        lifted = lift_classical(verdict.model)
        outcome = model_validity(lifted, s, sig)
        if not isinstance(outcome, Failure):
            report.violations.append(
                f"trial {i}: lift of classical countermodel fails to refute {s}"
            )
    return report


def run_collapse_suite(
    seed: int,
    trials: int = 10_000,
    sig: Optional[Signature] = None,
    depth: int = 3,
) -> SuiteReport:
    """Constant-domain values match per-world classical projections over
    a monotonic signature."""
    sig = sig or MONOTONE_SIGNATURE
    rng = random.Random(seed)
    report = SuiteReport("collapse", seed, trials)
    for i in range(trials):
        model = random_kripke_model(rng, constant_domain=True)
        f = random_formula(rng, sig, depth=depth)
        sub = check_collapse(model, [f], sig, keep_pairs=False, precheck=(i == 0))
        if not sub.agreement:
            w, g, rho, kv, cv = sub.disagreements[0]
            report.violations.append(
                f"trial {i}: {g} at {w} under {dict(rho)}: kripke={kv} classical={cv}"
            )
    return report


@dataclass
class FuzzReport:
    reports: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def render(self) -> str:
        lines = [r.render() for r in self.reports]
        lines.append("fuzz verdict: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "suites": [r.to_json() for r in self.reports],
            "passed": self.passed,
        }


def run_fuzz(seed: int, trials: int = 10_000) -> FuzzReport:
    """The three suites with one master seed; lift runs a tenth of the
    trials since each trial includes a validity decision."""
    return FuzzReport(
        [
            run_heredity_suite(seed, trials),
            run_lift_suite(seed + 1, max(1, trials // 10)),
            run_collapse_suite(seed + 2, trials),
        ]
    )
