"""Command-line front end and JSON file formats.

Schemas (all JSON, UTF-8):
  domain     {"alternatives": [...], "sets": [[...], ...]}
  orderings  {"global": [best, ..., worst]}
             or {"per_set": [{"set": [...], "rank": [...]}, ...]}
  model      {"functions": [{"picks": [{"set": [...], "x": "..."}, ...]}, ...]}
             functions may also be compact strings ("aaab") or symbol lists,
             both keyed to the canonical set order (a top-level "sets" key
             pins that order when no function spells its sets out)
  rcf        {"probs": [{"set": [...], "x": "...", "p": "p/q"}, ...]}

Exit codes: 0 pass, 1 semantic fail, 2 parse/schema error, 3 invariant
violation in the input data.  All output is deterministic byte for byte.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .core import (
    ChoiceDomain,
    ChoiceError,
    ChoiceFunction,
    Comparison,
    DomainMismatchError,
    PrimitiveOrderings,
    compare,
)
from .models import (
    ChoiceModel,
    enumerate_rational,
    is_chain,
    is_lattice,
    is_mixture_closed,
    lattice_closure,
    satisfies_theta,
    theta_model,
)
from .random_choice import RandomChoiceFunction, decompose_progressive, satisfies_rtheta
from .identify import identify_primitive
from .generators import gen_random_model

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_SCHEMA = 2
EXIT_INVARIANT = 3


class SchemaError(Exception):
    """Malformed input file (shape, keys, or unparsable values)."""


@dataclass(frozen=True)
class Workspace:
    """Resolved input paths for one invocation."""

    model_path: Path | None = None
    rcf_path: Path | None = None
    orderings_path: Path | None = None
    output_dir: Path | None = None


def _read_json(path: str | Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None


def _need(obj: Any, key: str, path) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{path}: missing key {key!r}")
    return obj[key]


def _parse_fraction(text: Any, path) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{path}: bad rational {text!r} ({exc})") from None


def _infer_domain(sets: list[tuple[str, ...]],
                  alternatives: Sequence[str] | None) -> ChoiceDomain:
    if alternatives is None:
        alternatives = sorted({a for s in sets for a in s})
    try:
        return ChoiceDomain.from_symbols(alternatives, sets)
    except DomainMismatchError as exc:
        raise SchemaError(str(exc)) from None


def load_domain(path: str | Path) -> ChoiceDomain:
    data = _read_json(path)
    alts = _need(data, "alternatives", path)
    sets = _need(data, "sets", path)
    try:
        return ChoiceDomain.from_symbols(alts, sets)
    except DomainMismatchError as exc:
        raise SchemaError(str(exc)) from None


def load_model(path: str | Path) -> ChoiceModel:
    data = _read_json(path)
    raw = _need(data, "functions", path)
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{path}: 'functions' must be a nonempty list")
    explicit = [f for f in raw if isinstance(f, dict)]
    sets: list[tuple[str, ...]] = []
    if "sets" in data:
        sets = [tuple(str(a) for a in s) for s in data["sets"]]
    elif explicit:
        picks = _need(explicit[0], "picks", path)
        sets = [tuple(str(a) for a in _need(entry, "set", path))
                for entry in picks]
    else:
        raise SchemaError(f"{path}: compact functions need a top-level 'sets' key")
    domain = _infer_domain(sets, data.get("alternatives"))
    functions = []
    for f in raw:
        if isinstance(f, str):
            functions.append(ChoiceFunction.from_string(domain, f))
        elif isinstance(f, list):
            functions.append(ChoiceFunction.from_symbols(domain, [str(x) for x in f]))
        elif isinstance(f, dict):
            by_set = {}
            for entry in _need(f, "picks", path):
                members = tuple(str(a) for a in _need(entry, "set", path))
                try:
                    key = tuple(sorted(domain.index[a] for a in members))
                except KeyError as exc:
                    raise SchemaError(
                        f"{path}: unknown alternative {exc.args[0]!r}") from None
                by_set[key] = str(_need(entry, "x", path))
            try:
                picks = [by_set[s] for s in domain.sets]
            except KeyError:
                raise SchemaError(f"{path}: a function misses some choice set") from None
            functions.append(ChoiceFunction.from_symbols(domain, picks))
        else:
            raise SchemaError(f"{path}: unrecognized function entry {f!r}")
    return ChoiceModel.from_functions(functions)


def load_rcf(path: str | Path) -> RandomChoiceFunction:
    data = _read_json(path)
    raw = _need(data, "probs", path)
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{path}: 'probs' must be a nonempty list")
    entries = []
    for entry in raw:
        members = tuple(str(a) for a in _need(entry, "set", path))
        symbol = str(_need(entry, "x", path))
        p = _parse_fraction(_need(entry, "p", path), path)
        entries.append((members, symbol, p))
    sets = sorted({tuple(sorted(m)) for m, _, _ in entries})
    domain = _infer_domain(sets, data.get("alternatives"))
    table = {(m, x): p for m, x, p in entries}
    return RandomChoiceFunction.from_table(domain, table)


def load_orderings(path: str | Path, domain: ChoiceDomain) -> PrimitiveOrderings:
    data = _read_json(path)
    if isinstance(data, dict) and "global" in data:
        return PrimitiveOrderings.from_global(
            domain, [str(a) for a in data["global"]])
    if isinstance(data, dict) and "per_set" in data:
        by_set = {}
        for entry in data["per_set"]:
            members = tuple(str(a) for a in _need(entry, "set", path))
            try:
                key = tuple(sorted(domain.index[a] for a in members))
            except KeyError as exc:
                raise SchemaError(f"{path}: unknown alternative {exc.args[0]!r}") from None
            by_set[key] = [str(a) for a in _need(entry, "rank", path)]
        try:
            rankings = [by_set[s] for s in domain.sets]
        except KeyError:
            raise SchemaError(f"{path}: per-set orderings miss some choice set") from None
        return PrimitiveOrderings.from_per_set(domain, rankings)
    raise SchemaError(f"{path}: orderings need a 'global' or 'per_set' key")


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def func_repr(c: ChoiceFunction) -> Any:
    if all(len(a) == 1 for a in c.domain.alternatives):
        return c.to_string()
    return list(c.symbols())


def model_json(model: ChoiceModel) -> dict:
    dom = model.domain
    return {
        "alternatives": list(dom.alternatives),
        "sets": [list(dom.set_symbols(i)) for i in range(len(dom.sets))],
        "functions": [
            {"picks": [{"set": list(dom.set_symbols(si)),
                        "x": dom.alternatives[x]}
                       for si, x in enumerate(c.picks)]}
            for c in model.functions],
    }


def rcf_json(rcf: RandomChoiceFunction) -> dict:
    dom = rcf.domain
    probs = []
    for si, s in enumerate(dom.sets):
        for pos, x in enumerate(s):
            p = rcf.probs[si][pos]
            if p != 0:
                probs.append({"set": list(dom.set_symbols(si)),
                              "x": dom.alternatives[x], "p": str(p)})
    return {"alternatives": list(dom.alternatives), "probs": probs}


def cmd_decompose(args) -> int:
    rcf = load_rcf(args.rcf)
    ordering = load_orderings(args.orderings, rcf.domain)
    rep = decompose_progressive(rcf, ordering)
    out = [{"w": str(w), "c": func_repr(c)} for w, c in rep.components]
    sys.stdout.write(_dumps(out))
    return EXIT_PASS


def _check_lattice(model, ordering):
    ok, witness = is_lattice(model, ordering)
    if ok:
        return True, None
    return False, {"left": func_repr(witness.left),
                   "right": func_repr(witness.right),
                   "kind": witness.kind,
                   "escapee": func_repr(witness.escapee)}


def _check_theta(model, ordering):
    order = ordering.global_symbols()
    for c in model.functions:
        ok, violation = satisfies_theta(c, order)
        if not ok:
            return False, {"function": func_repr(c),
                           "set": list(violation.set_symbols),
                           "removed": violation.removed,
                           "chosen": violation.chosen,
                           "after": violation.chosen_after,
                           "axiom": violation.axiom}
    return True, None


def _check_chain(model, ordering):
    for c1, c2 in itertools.combinations(model.functions, 2):
        if compare(c1, c2, ordering) is Comparison.INCOMPARABLE:
            return False, {"left": func_repr(c1), "right": func_repr(c2)}
    return True, None


def _check_mixture(model, _ordering):
    ok, witness = is_mixture_closed(model)
    if ok:
        return True, None
    return False, {"left": func_repr(witness.left),
                   "right": func_repr(witness.right),
                   "escapee": func_repr(witness.escapee)}


def cmd_check(args) -> int:
    if args.check == "rtheta":
        rcf = load_rcf(args.model)
        ordering = load_orderings(args.orderings, rcf.domain)
        ok, violation = satisfies_rtheta(rcf, ordering.global_symbols())
        witness = None if ok else {"set": list(violation.set_symbols),
                                   "removed": violation.removed,
                                   "fixed": violation.fixed,
                                   "axiom": violation.axiom}
    else:
        model = load_model(args.model)
        if args.check == "mixture":
            ordering = None
        else:
            if args.orderings is None:
                raise SchemaError("this check needs an orderings file")
            ordering = load_orderings(args.orderings, model.domain)
        runner = {"lattice": _check_lattice, "theta": _check_theta,
                  "chain": _check_chain, "mixture": _check_mixture}[args.check]
        ok, witness = runner(model, ordering)
    sys.stdout.write(_dumps({"check": args.check, "pass": ok, "witness": witness}))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_closure(args) -> int:
    model = load_model(args.model)
    ordering = load_orderings(args.orderings, model.domain)
    closed = lattice_closure(model, ordering)
    if args.oracle:
        dom = model.domain
        if (dom.is_full and ordering.global_order is not None
                and model.picks_set() == enumerate_rational(dom).picks_set()):
            expected = theta_model(dom, ordering.global_symbols())
            if closed.picks_set() != expected.picks_set():
                sys.stderr.write("oracle mismatch: closure of the rational "
                                 "model differs from the axiom filter\n")
                return EXIT_FAIL
        else:
            sys.stderr.write("oracle check skipped: input is not the rational "
                             "model of a full domain with a global order\n")
    sys.stdout.write(_dumps(model_json(closed)))
    return EXIT_PASS


def cmd_identify(args) -> int:
    model = load_model(args.model)
    orders, report = identify_primitive(model)
    out = {
        "orderings": [">".join(o) for o in orders],
        "axioms": {"B1": report.b1, "sB1": report.sb1,
                   "B2": report.b2, "B3": report.b3},
    }
    sys.stdout.write(_dumps(out))
    return EXIT_PASS if orders else EXIT_FAIL


def cmd_hasse(args) -> int:
    model = load_model(args.model)
    ordering = load_orderings(args.orderings, model.domain)
    fns = model.functions
    dominates = {}
    for c1, c2 in itertools.permutations(fns, 2):
        if compare(c1, c2, ordering) is Comparison.DOMINATES:
            dominates.setdefault(c1, set()).add(c2)
    lines = ["digraph choicemodel {"]
    names = {c: json.dumps(str(func_repr(c))) for c in fns}
    for c in fns:
        lines.append(f"  {names[c]};")
    for c1 in fns:
        below = dominates.get(c1, set())
        for c2 in sorted(below, key=lambda c: c.picks):
            if not any(c2 in dominates.get(mid, ()) for mid in below if mid != c2):
                lines.append(f"  {names[c1]} -> {names[c2]};")
    sys.stdout.write("\n".join(lines) + "\n}\n")
    return EXIT_PASS


def cmd_generate(args) -> int:
    alternatives = [a for a in args.alternatives.split(",") if a]
    domain = ChoiceDomain.full(alternatives)
    if args.kind == "random":
        model = gen_random_model(args.seed, domain, args.size)
    elif args.kind == "rational":
        model = enumerate_rational(domain)
    else:  # theta
        order = (args.order.split(">") if args.order else list(alternatives))
        model = theta_model(domain, order)
    sys.stdout.write(_dumps(model_json(model)))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choicelattice",
        description="Progressive decomposition and lattice analysis of "
                    "random choice models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="progressive representation of an RCF")
    p.add_argument("rcf")
    p.add_argument("orderings")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("check", help="verify a model or RCF property")
    p.add_argument("model", help="model file (RCF file for --rtheta)")
    p.add_argument("orderings", nargs="?", default=None)
    group = p.add_mutually_exclusive_group(required=True)
    for name in ("lattice", "theta", "rtheta", "mixture", "chain"):
        group.add_argument(f"--{name}", dest="check", action="store_const",
                           const=name)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("closure", help="smallest join/meet-closed superset")
    p.add_argument("model")
    p.add_argument("orderings")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the axiom filter when the input "
                        "is the rational model")
    p.set_defaults(run=cmd_closure)

    p = sub.add_parser("identify", help="recover compatible primitive orderings")
    p.add_argument("model")
    p.set_defaults(run=cmd_identify)

    p = sub.add_parser("hasse", help="DOT diagram of the comparison relation")
    p.add_argument("model")
    p.add_argument("orderings")
    p.set_defaults(run=cmd_hasse)

    p = sub.add_parser("generate", help="emit a generated model as JSON")
    p.add_argument("--kind", choices=("random", "rational", "theta"),
                   default="random")
    p.add_argument("--alternatives", default="a,b,c")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--order", default=None,
                   help="global order for --kind theta, e.g. 'a>b>c'")
    p.set_defaults(run=cmd_generate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except SchemaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SCHEMA
    except DomainMismatchError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SCHEMA
    except ChoiceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
