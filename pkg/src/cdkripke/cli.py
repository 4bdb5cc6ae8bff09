"""Command-line front end.

Commands: check-mono, eval, valid, separate, verify-paper, fuzz.
Exit codes are a stable contract:

    0  success / affirmative analysis
    1  analysis-negative (non-monotone connective, countermodel found,
       suite violation, unexpected golden diff)
    2  input or usage error
    3  all connectives monotone (separate only)
    4  internal verification failure (a construction bug, never expected)

The environment variable CDKRIPKE_MAX_ENUM caps how many interpretations
or models any bounded search may enumerate (default 2**24).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import golden, suites
from .classical import (
    ClassicalEvaluator,
    NoCountermodelUpTo,
    Valid,
    bounded_fo_validity,
    classical_model_from_json,
    classical_model_to_json,
    decide_propositional,
)
from .errors import (
    ConstructionError,
    EnumerationCapError,
    ModelValidationError,
    ParseError,
    UsageError,
)
from .kripke import (
    CdCountermodel,
    KripkeEvaluator,
    bounded_cd_countermodel_search,
    kripke_model_from_json,
    kripke_model_to_json,
    model_validity,
)
from .separator import (
    AllMonotone,
    render_separation,
    separate,
    separation_to_json,
    verify_separation,
)
from .syntax import free_vars, parse_formula, parse_sequent
from .truthfn import classify_case, load_signature, monotonicity_witness

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_ALL_MONOTONE = 3
EXIT_INTERNAL = 4


@dataclass
class RunConfig:
    command: str
    sig_path: Optional[str] = None
    model_path: Optional[str] = None
    formula: Optional[str] = None
    sequent: Optional[str] = None
    world: Optional[str] = None
    all_worlds: bool = False
    mode: Optional[str] = None
    max_domain: int = 3
    max_worlds: int = 3
    trials: int = 10_000
    seed: int = 0
    format: str = "human"

    def __post_init__(self):
        if self.max_domain < 1 or self.max_worlds < 1 or self.trials < 1:
            raise UsageError("bounds and trial counts must be >= 1")


def _emit(config: RunConfig, human: str, payload: dict):
    if config.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _load_model_file(path: str):
    """Classical or Kripke model by file shape ('worlds' key marks Kripke)."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if "worlds" in obj:
        return kripke_model_from_json(obj), "kripke"
    return classical_model_from_json(obj), "classical"


def _text_or_file(value: str) -> str:
    """Formula/sequent arguments are literal text, or @path to read one."""
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as fh:
            return fh.read().strip()
    return value


def cmd_check_mono(config: RunConfig) -> int:
    sig = load_signature(config.sig_path)
    rows = []
    all_monotone = True
    for name in sig.names():
        table = sig.connectives[name]
        witness = monotonicity_witness(table)
        case = classify_case(table)
        rows.append(
            {
                "connective": name,
                "arity": table.arity,
                "bits": table.bits(),
                "monotone": witness is None,
                "witness": None if witness is None else [list(witness[0]), list(witness[1])],
                "case": case,
            }
        )
        all_monotone = all_monotone and witness is None
    lines = []
    for row in rows:
        if row["monotone"]:
            lines.append(f"{row['connective']}: monotone (case {row['case']})")
        else:
            a, b = row["witness"]
            lines.append(
                f"{row['connective']}: NOT monotone, witness f({tuple(a)}) = 1, "
                f"f({tuple(b)}) = 0 (case {row['case']})"
            )
    lines.append("all monotone" if all_monotone else "non-monotone connective present")
    _emit(config, "\n".join(lines), {"connectives": rows, "all_monotone": all_monotone})
    return EXIT_OK if all_monotone else EXIT_NEGATIVE


def cmd_eval(config: RunConfig) -> int:
    sig = load_signature(config.sig_path)
    model, flavor = _load_model_file(config.model_path)
    f = parse_formula(_text_or_file(config.formula), sig)
    if free_vars(f):
        raise UsageError(
            f"formula has free variables {sorted(free_vars(f))}; eval takes closed formulas"
        )
    if flavor == "classical":
        value = ClassicalEvaluator(model, sig).value(f, {})
        _emit(config, str(value), {"value": value})
        return EXIT_OK
    evaluator = KripkeEvaluator(model, sig)
    if config.all_worlds:
        values = {w: evaluator.value(f, w, {}) for w in model.worlds}
        human = "\n".join(f"{w}: {values[w]}" for w in model.worlds)
        _emit(config, human, {"values": values})
        return EXIT_OK
    if config.world is None:
        raise UsageError("Kripke evaluation needs --world or --all-worlds")
    value = evaluator.value(f, config.world, {})
    _emit(config, str(value), {"value": value, "world": config.world})
    return EXIT_OK


def cmd_valid(config: RunConfig) -> int:
    sig = load_signature(config.sig_path)
    s = parse_sequent(_text_or_file(config.sequent), sig)
    mode = config.mode
    if mode == "classical-prop":
        verdict = decide_propositional(sig, s)
        if isinstance(verdict, Valid):
            _emit(config, "Valid", {"verdict": "valid"})
            return EXIT_OK
        _emit(
            config,
            f"Countermodel: {classical_model_to_json(verdict.model)}",
            {"verdict": "countermodel", "model": classical_model_to_json(verdict.model)},
        )
        return EXIT_NEGATIVE
    if mode == "classical-bounded":
        verdict = bounded_fo_validity(sig, s, config.max_domain)
        if isinstance(verdict, NoCountermodelUpTo):
            _emit(
                config,
                f"NoCountermodelUpTo({verdict.max_domain})",
                {"verdict": "no-countermodel-up-to", "max_domain": verdict.max_domain},
            )
            return EXIT_OK
        _emit(
            config,
            f"Countermodel: {classical_model_to_json(verdict.model)} "
            f"assignment {dict(verdict.assignment)}",
            {
                "verdict": "countermodel",
                "model": classical_model_to_json(verdict.model),
                "assignment": dict(verdict.assignment),
            },
        )
        return EXIT_NEGATIVE
    if mode == "kripke-model":
        if config.model_path is None:
            raise UsageError("kripke-model mode needs --model")
        model, flavor = _load_model_file(config.model_path)
        if flavor != "kripke":
            raise UsageError("kripke-model mode needs a Kripke model file")
        verdict = model_validity(model, s, sig)
        if isinstance(verdict, Valid):
            _emit(config, "Valid", {"verdict": "valid"})
            return EXIT_OK
        _emit(
            config,
            f"Failure(world={verdict.world}, assignment={dict(verdict.assignment)})",
            {
                "verdict": "failure",
                "world": verdict.world,
                "assignment": dict(verdict.assignment),
            },
        )
        return EXIT_NEGATIVE
    if mode == "cd-search":
        verdict = bounded_cd_countermodel_search(
            sig, s, config.max_worlds, config.max_domain
        )
        if isinstance(verdict, CdCountermodel):
            _emit(
                config,
                f"Countermodel at {verdict.world}: "
                f"{json.dumps(kripke_model_to_json(verdict.model), sort_keys=True)} "
                f"assignment {dict(verdict.assignment)}",
                {
                    "verdict": "countermodel",
                    "world": verdict.world,
                    "assignment": dict(verdict.assignment),
                    "model": kripke_model_to_json(verdict.model),
                },
            )
            return EXIT_NEGATIVE
        _emit(
            config,
            f"NoCountermodelUpTo(worlds={verdict.max_worlds}, domain={verdict.max_domain})",
            {
                "verdict": "no-countermodel-up-to",
                "max_worlds": verdict.max_worlds,
                "max_domain": verdict.max_domain,
            },
        )
        return EXIT_OK
    raise UsageError(f"unknown mode {mode!r}")


def cmd_separate(config: RunConfig) -> int:
    sig = load_signature(config.sig_path)
    result = separate(sig)
    if isinstance(result, AllMonotone):
        _emit(config, "all monotone", {"verdict": "all-monotone"})
        return EXIT_ALL_MONOTONE
    report = verify_separation(result)
    if not report.passed:
        raise ConstructionError(report.summary())
    _emit(
        config,
        render_separation(result, report),
        separation_to_json(result, report),
    )
    return EXIT_OK


def cmd_verify_paper(config: RunConfig) -> int:
    report = golden.run_golden_checks()
    _emit(config, report.render(), report.to_json())
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_fuzz(config: RunConfig) -> int:
    report = suites.run_fuzz(config.seed, config.trials)
    _emit(config, report.render(), report.to_json())
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdkripke",
        description="Truth-table connectives under classical and "
        "constant-domain Kripke semantics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sig=False, model=False, bounds=False):
        if sig:
            p.add_argument("--sig", required=True, help="signature file")
        if model:
            p.add_argument("--model", help="model file (JSON)")
        if bounds:
            p.add_argument("--max-domain", type=int, default=3)
            p.add_argument("--max-worlds", type=int, default=3)
        p.add_argument("--format", choices=("human", "json"), default="human")

    p = sub.add_parser("check-mono", help="monotonicity report per connective")
    common(p, sig=True)

    p = sub.add_parser("eval", help="evaluate a closed formula on a model")
    common(p, sig=True, model=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--world")
    p.add_argument("--all-worlds", action="store_true")

    p = sub.add_parser("valid", help="validity checks and countermodel search")
    common(p, sig=True, model=True, bounds=True)
    p.add_argument(
        "--mode",
        required=True,
        choices=("classical-prop", "classical-bounded", "kripke-model", "cd-search"),
    )
    p.add_argument("--sequent", required=True)

    p = sub.add_parser("separate", help="synthesize a separating sequent")
    common(p, sig=True)

    p = sub.add_parser("verify-paper", help="re-derive the golden reference tables")
    common(p)

    p = sub.add_parser("fuzz", help="run the seeded property suites")
    common(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)

    return parser


_COMMANDS = {
    "check-mono": cmd_check_mono,
    "eval": cmd_eval,
    "valid": cmd_valid,
    "separate": cmd_separate,
    "verify-paper": cmd_verify_paper,
    "fuzz": cmd_fuzz,
}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            sig_path=getattr(args, "sig", None),
            model_path=getattr(args, "model", None),
            formula=getattr(args, "formula", None),
            sequent=getattr(args, "sequent", None),
            world=getattr(args, "world", None),
            all_worlds=getattr(args, "all_worlds", False),
            mode=getattr(args, "mode", None),
            max_domain=getattr(args, "max_domain", 3),
            max_worlds=getattr(args, "max_worlds", 3),
            trials=getattr(args, "trials", 10_000),
            seed=getattr(args, "seed", 0),
            format=args.format,
        )
        return _COMMANDS[args.command](config)
    except (ParseError, UsageError, ModelValidationError, EnumerationCapError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConstructionError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
