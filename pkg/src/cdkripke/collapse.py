"""Collapsing constant-domain Kripke evaluation to classical evaluation.

Over a signature whose connectives all preserve the pointwise order, the
value of any formula at a world of a constant-domain model equals its
classical value in the per-world projection of that model. This module
provides the projection, the inverse one-world lift of a classical
model, an equivalence checker, and an exhaustive sweep over all small
models and formulas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .classical import ClassicalEvaluator, ClassicalModel
from .errors import UsageError
from .kripke import (
    KripkeEvaluator,
    KripkeModel,
    enumerate_cd_models,
    validate_kripke_model,
)
from .syntax import Atom, Conn, Exists, Forall, Formula, connective_names
from .truthfn import Signature, monotonicity_witness


def project_world(model: KripkeModel, w: str) -> ClassicalModel:
    """The classical model seen at one world of a constant-domain model."""
    if not model.constant_domain:
        raise UsageError("project_world needs a constant-domain model")
    if w not in set(model.worlds):
        raise UsageError(f"unknown world {w!r}")
    interp = {
        (pred, args): value
        for (world, pred, args), value in model.interp.items()
        if world == w
    }
    return ClassicalModel(model.domains[w], interp)


def lift_classical(model: ClassicalModel, world: str = "w0") -> KripkeModel:
    """A classical model viewed as a one-world constant-domain Kripke model."""
    interp = {(world, pred, args): value for (pred, args), value in model.interp.items()}
    return validate_kripke_model(
        [world], [], {world: model.domain}, interp
    )


@dataclass
class CollapseReport:
    """Per-(world, formula, assignment) comparison of the two semantics."""

    model_id: str
    checked: int = 0
    pairs: list = field(default_factory=list)
    disagreements: list = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "model": self.model_id,
            "checked": self.checked,
            "agreement": self.agreement,
            "disagreements": [
                {
                    "world": w,
                    "formula": str(f),
                    "assignment": dict(rho),
                    "kripke": kv,
                    "classical": cv,
                }
                for (w, f, rho, kv, cv) in self.disagreements[:100]
            ],
        }

    def render(self) -> str:
        status = "agree" if self.agreement else "DISAGREE"
        lines = [f"collapse check {self.model_id}: {self.checked} values, {status}"]
        for (w, f, rho, kv, cv) in self.disagreements[:100]:
            lines.append(f"  {w} {f} {dict(rho)}: kripke={kv} classical={cv}")
        return "\n".join(lines)


def require_monotone(formulas: Sequence[Formula], sig: Signature):
    """Reject any non-monotonic connective occurring in the formulas,
    naming it together with its witness pair."""
    for name in sorted({n for f in formulas for n in connective_names(f)}):
        witness = monotonicity_witness(sig.table(name))
        if witness is not None:
            raise UsageError(
                f"connective {name!r} is not monotonic: "
                f"f{witness[0]} = 1 but f{witness[1]} = 0"
            )


def check_collapse(
    model: KripkeModel,
    formulas: Sequence[Formula],
    sig: Signature,
    assignments: Optional[Iterable[Mapping]] = None,
    keep_pairs: bool = True,
    model_id: str = "model",
    precheck: bool = True,
) -> CollapseReport:
    """Compare Kripke and projected-classical values on one model.

    Every connective occurring in the formulas must be monotonic; a
    non-monotonic one is rejected with its witness pair, because the
    equivalence genuinely fails there (see the separator module for that
    half of the story). With assignments=None, each formula is checked
    under every assignment of its free variables into the domain.
    Callers that sweep many models with one formula inventory may run
    require_monotone once themselves and pass precheck=False.
    """
    if not model.constant_domain:
        raise UsageError("check_collapse needs a constant-domain model")
    if precheck:
        require_monotone(formulas, sig)
    report = CollapseReport(model_id)
    worlds = model.worlds
    kripke_eval = KripkeEvaluator(model, sig)
    classical_evals = [
        ClassicalEvaluator(project_world(model, w), sig) for w in worlds
    ]
    domain = model.domains[worlds[0]]
    fixed = list(assignments) if assignments is not None else None
    assign_cache: dict = {}
    for f in formulas:
        if fixed is not None:
            rhos = fixed
        else:
            rhos = assign_cache.get(f.fvs)
            if rhos is None:
                rhos = assign_cache[f.fvs] = [
                    dict(zip(f.fvs, values))
                    for values in itertools.product(domain, repeat=len(f.fvs))
                ]
        for rho in rhos:
            kripke_profile = kripke_eval.profile(f, rho)
            report.checked += len(worlds)
            for i, w in enumerate(worlds):
                kv = kripke_profile[i]
                cv = classical_evals[i].value(f, rho)
                if keep_pairs:
                    report.pairs.append((w, f, tuple(sorted(rho.items())), kv, cv))
                if kv != cv:
                    report.disagreements.append(
                        (w, f, tuple(sorted(rho.items())), kv, cv)
                    )
    return report


# --- exhaustive sweep ------------------------------------------------------


def enumerate_formulas(
    sig: Signature,
    atoms: Sequence[Formula],
    depth: int,
    quantifier_var: str = "x",
) -> list:
    """Every formula of depth <= depth over the given atoms, connectives,
    and the quantifiers binding one fixed variable.

    Depth counts nodes on the longest root-to-leaf path, atoms being
    depth 1. Subformulas are shared between entries, so evaluators that
    memoize per node evaluate each distinct subformula once.
    """
    layers = [list(atoms)]
    tables = [sig.table(name) for name in sig.names()]
    for _ in range(depth - 1):
        smaller = [f for layer in layers for f in layer]
        new: list = []
        for table in tables:
            for args in itertools.product(smaller, repeat=table.arity):
                new.append(Conn(table.name, args))
        for f in smaller:
            new.append(Forall(quantifier_var, f))
            new.append(Exists(quantifier_var, f))
        layers.append(new)
    return [f for layer in layers for f in layer]


@dataclass
class SweepReport:
    models: int = 0
    values: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return not self.disagreements

    def render(self) -> str:
        status = "agree" if self.agreement else "DISAGREE"
        return (
            f"collapse sweep: {self.models} models, {self.values} value "
            f"comparisons, {status}"
        )


def run_collapse_sweep(
    sig: Signature,
    max_worlds: int = 3,
    max_domain: int = 2,
    depth: int = 3,
    up_to_iso: bool = True,
    cap: Optional[int] = None,
) -> SweepReport:
    """Exhaustively compare the two semantics on small models.

    Models: every constant-domain Kripke model with at most max_worlds
    worlds (one preorder per isomorphism class by default; values
    transport along frame isomorphisms, so nothing is lost), domains of
    size 1..max_domain, and every hereditary interpretation of one unary
    predicate P and two propositional symbols p, q. Formulas: every
    formula of depth <= depth over the signature, the atoms p, q, P(x),
    and quantifiers over x.
    """
    preds = {"p": 0, "q": 0, "P": 1}
    atoms = [Atom("p"), Atom("q"), Atom("P", ("x",))]
    formulas = enumerate_formulas(sig, atoms, depth)
    require_monotone(formulas, sig)
    report = SweepReport()
    for model in enumerate_cd_models(preds, max_worlds, max_domain, up_to_iso=up_to_iso, cap=cap):
        sub = check_collapse(
            model,
            formulas,
            sig,
            keep_pairs=False,
            model_id=f"model{report.models}",
            precheck=False,
        )
        report.models += 1
        report.values += sub.checked
        report.disagreements.extend(sub.disagreements[:100])
    return report
