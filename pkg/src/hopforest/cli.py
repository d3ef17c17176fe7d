"""The ``hopf`` command line.

Output is JSON with sorted keys unless ``--text`` is given.  Exit codes: 0 on
success, 2 for usage errors, 3 for invalid input, 4 when an internal
invariant fails (for instance the two antipode engines disagree).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from typing import Any, Sequence

from . import __version__
from .cancel import (
    cancellation_report,
    family_check,
    is_sui,
    is_sui_lower,
    is_upper_indecomposable,
    sui_witness,
)
from .canonical import ClassId, ClassRegistry, register_in_documented_order
from .decompose import center, factor_indecomposable, prime_center
from .errors import EngineMismatch, HopfError, InvalidInput, InvariantViolation, SizeLimit
from .families import (
    boolean_lattice,
    chain_lattice,
    colored_partition_poset,
    distributive_lattice_of_ideals,
    figure_lattice,
    partition_lattice,
    poset_from_covers,
    random_interval,
    random_lattice,
    random_nonlattice_interval,
)
from .forest import Forest, antipode_forests, forest_terms
from .hopf import (
    HopfElement,
    Monomial,
    antipode_chains,
    evaluate_mobius,
    format_element,
    mobius_recursive,
    monomial_names,
    sorted_terms,
)
from .jsonio import interval_to_json, load
from .poset import Interval, is_lattice

EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_INVARIANT = 4


class Session:
    """Per-invocation state: the loaded input and the class registry."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.registry = ClassRegistry()
        self.digest: str | None = None
        self.text = ""

    def load(self, path: str) -> Interval:
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
        h = hashlib.sha256(raw).hexdigest()
        self.digest = h if self.digest is None else hashlib.sha256((self.digest + h).encode()).hexdigest()
        P = load(path)
        limit = getattr(self.args, "max_size", None)
        if limit is not None and P.size > limit:
            raise SizeLimit(f"input has {P.size} elements, limit is {limit}")
        return P

    def names(self, classes) -> dict[ClassId, str]:
        register_in_documented_order(self.registry, classes)
        return {c: self.registry.name(c) for c in self.registry.classes()}

    def registry_json(self) -> dict[str, Any]:
        return {
            self.registry.name(c): {"certificate": c.hex(), "size": self.registry.representative(c).size}
            for c in self.registry.classes()
        }


def _element_json(h: HopfElement, names: dict[ClassId, str]) -> list[dict]:
    return [{"monomial": fn, "coeff": c} for fn, c in sorted_terms(h, names)]


def _forest_json(P: Interval, F: Forest) -> dict:
    out: dict[str, Any] = {"nodes": F.names(P)}
    if F.jmap is not None:
        out["jmap"] = [
            {"set": [P.names[a] for a in A], "value": P.names[v]} for A, v in F.jmap.assignments
        ]
    return out


def _mono_names(m: Monomial, names: dict[ClassId, str]) -> list[str]:
    return monomial_names(m, names)


def _poset_flag(args: argparse.Namespace, P: Interval) -> bool | None:
    return True if getattr(args, "poset", False) else None


def cmd_antipode(s: Session) -> dict:
    args = s.args
    P = s.load(args.input)
    poset = _poset_flag(args, P)
    result: dict[str, Any] = {"engine": args.engine}
    chains = forests = None
    terms = None
    if args.engine in ("chains", "both"):
        chains = antipode_chains(P)
    if args.engine in ("forests", "both"):
        terms = forest_terms(P, poset) if P.size > 1 else []
        forests = antipode_forests(P, poset)
    classes = set()
    for h in (chains, forests):
        if h is not None:
            classes |= h.classes()
    if terms:
        for _, _, m in terms:
            classes |= set(m)
    names = s.names(classes)
    main = chains if chains is not None else forests
    result["terms"] = _element_json(main, names)
    result["expression"] = format_element(main, names)
    if args.engine == "both":
        result["comparison"] = {
            "equal": chains == forests,
            "chain_terms": len(chains),
            "forest_terms": len(forests),
            "forests_before_collection": len(terms) if P.size > 1 else 0,
        }
        if chains != forests:
            raise EngineMismatch(
                f"chain engine gives {format_element(chains, names)}, "
                f"forest engine gives {format_element(forests, names)}"
            )
    if args.trace and terms is not None:
        result["trace"] = [
            {**_forest_json(P, F), "sign": sign, "theta": _mono_names(m, names)} for F, sign, m in terms
        ]
    s.text = result["expression"]
    return result


def cmd_mobius(s: Session) -> dict:
    P = s.load(s.args.input)
    mu = evaluate_mobius(P)
    rec = mobius_recursive(P)
    if mu != rec:
        raise InvariantViolation(f"chain count gives {mu}, recursion gives {rec}")
    s.text = str(mu)
    return {"mobius": mu}


def cmd_forests(s: Session) -> dict:
    args = s.args
    P = s.load(args.input)
    poset = True if args.poset else None
    if P.size == 1:
        terms = []
    else:
        terms = forest_terms(P, poset)
    names = s.names({c for _, _, m in terms for c in m})
    rows = [{**_forest_json(P, F), "sign": sign, "theta": _mono_names(m, names)} for F, sign, m in terms]
    s.text = "\n".join("{" + ", ".join(r["nodes"]) + "}" for r in rows)
    return {"count": len(rows), "forests": rows, "poset": bool(poset) or not is_lattice(P)}


def cmd_center(s: Session) -> dict:
    P = s.load(s.args.input)
    fac = factor_indecomposable(P)
    names = s.names(fac.classes)
    out = {
        "center": sorted(P.names[a] for a in center(P)),
        "prime_center": sorted(P.names[a] for a in prime_center(P)),
        "factors": _mono_names(fac.classes, names),
    }
    s.text = " ".join(out["center"])
    return out


def cmd_factor(s: Session) -> dict:
    P = s.load(s.args.input)
    fac = factor_indecomposable(P)
    names = s.names(fac.classes)
    out = {
        "factors": _mono_names(fac.classes, names),
        "witnesses": [{"class": names[c], "element": P.names[a]} for c, a in fac.factors],
        "complete": fac.complete,
    }
    if not fac.complete:
        raise InvariantViolation("product of the factors is not equivalent to the input")
    s.text = "*".join(out["factors"]) or "1"
    return out


def cmd_check(s: Session) -> dict:
    args = s.args
    if args.what == "family":
        if not args.inputs:
            raise InvalidInput("check family needs --inputs")
        gens = [s.load(p) for p in args.inputs]
        verdict = family_check(gens)
        out: dict[str, Any] = {
            "upper_indecomposable": verdict.upper_indecomposable,
            "indecomposable_intervals_checked": verdict.checked,
            "scope": "subinterval closure of the given generators only",
        }
        if verdict.witness is not None:
            i, x, y, z = verdict.witness
            P = gens[i]
            out["witness"] = {"input": args.inputs[i], "x": P.names[x], "y": P.names[y], "z": P.names[z]}
        s.text = str(verdict.upper_indecomposable).lower()
        return out
    if not args.input:
        raise InvalidInput(f"check {args.what} needs --input")
    P = s.load(args.input)
    if args.what == "sui":
        sui = is_sui(P)
        lower = is_sui_lower(P)
        out = {
            "upper_indecomposable": is_upper_indecomposable(P),
            "sui": sui,
            "sui_lower_intervals": lower,
        }
        w = sui_witness(P)
        if w is not None:
            x, y, z = w
            out["witness"] = {"x": P.names[x], "y": P.names[y], "z": P.names[z]}
        s.text = str(sui).lower()
        return out
    rep = cancellation_report(P, _poset_flag(args, P))
    classes = {c for m in rep.groups for c in m}
    names = s.names(classes)
    out = {
        "cancellation_free": rep.is_cancellation_free,
        "canceling_pairs": [[F.names(P), G.names(P)] for F, G in rep.canceling_pairs],
    }
    if P.size > 1 and len(factor_indecomposable(P, verify=False).factors) == 1:
        out["sui"] = is_sui(P)
    if args.trace:
        out["groups"] = [
            {
                "theta": _mono_names(m, names),
                "forests": [{**_forest_json(P, F), "sign": sg} for F, sg in terms],
            }
            for m, terms in sorted(rep.groups.items(), key=lambda kv: _mono_names(kv[0], names))
        ]
    s.text = "cancellation-free" if rep.is_cancellation_free else "\n".join(
        "{" + ", ".join(a) + "} ~ {" + ", ".join(b) + "}" for a, b in out["canceling_pairs"]
    )
    return out


def _counts(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise InvalidInput(f"bad color counts {text!r}") from None


def cmd_family(s: Session) -> dict:
    args = s.args
    kind = args.kind
    if kind == "partition":
        P = partition_lattice(args.n)
    elif kind == "boolean":
        P = boolean_lattice(args.n)
    elif kind == "chain":
        P = chain_lattice(args.n)
    elif kind == "colored":
        P = colored_partition_poset(_counts(args.counts), args.top_color)
    elif kind == "figure":
        P = figure_lattice(args.which)
    elif kind == "ideals":
        if not args.input:
            raise InvalidInput("family ideals needs --input")
        data = _read_json(args.input)
        up = poset_from_covers(data.get("elements", []), [tuple(p) for p in data.get("covers", [])])
        P = distributive_lattice_of_ideals(up, data.get("elements"))
    else:
        size = args.max_size if args.max_size is not None else 8
        if args.shape == "lattice":
            P = random_lattice(args.seed, size)
        elif args.shape == "nonlattice":
            P = random_nonlattice_interval(args.seed, size)
        else:
            P = random_interval(args.seed, size)
    out = interval_to_json(P)
    s.text = json.dumps(out, sort_keys=True)
    return out


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidInput("poset JSON must be an object")
    return data


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="print a human-readable result")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the output")
    common.add_argument("--registry", metavar="FILE", help="write class names and certificates to FILE")
    common.add_argument("--max-size", type=int, default=None, help="reject larger inputs (random size for family random)")

    parser = argparse.ArgumentParser(prog="hopf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hopf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("antipode", parents=[common], help="antipode of an interval")
    p.add_argument("--input", required=True)
    p.add_argument("--engine", choices=["chains", "forests", "both"], default="chains")
    p.add_argument("--poset", action="store_true", help="use poset forests with J maps")
    p.add_argument("--trace", action="store_true", help="list each forest with its sign and theta")
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("mobius", parents=[common], help="Moebius value mu(0, 1)")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("forests", parents=[common], help="list forests")
    p.add_argument("--input", required=True)
    p.add_argument("--poset", action="store_true")
    p.set_defaults(func=cmd_forests)

    p = sub.add_parser("center", parents=[common], help="center and prime center")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("factor", parents=[common], help="factor into indecomposables")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("check", parents=[common], help="upper-indecomposability and cancellation checks")
    p.add_argument("what", choices=["sui", "cancellation", "family"])
    p.add_argument("--input")
    p.add_argument("--inputs", nargs="+")
    p.add_argument("--poset", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("family", parents=[common], help="emit a built-in interval as JSON")
    p.add_argument("kind", choices=["partition", "colored", "figure", "ideals", "boolean", "chain", "random"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--counts", default="1,1")
    p.add_argument("--top-color", type=int, default=1)
    p.add_argument("--which", type=int, default=1)
    p.add_argument("--input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", choices=["any", "lattice", "nonlattice"], default="any")
    p.set_defaults(func=cmd_family)
    return parser


def _threads() -> int:
    raw = os.environ.get("HOPF_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise InvalidInput(f"HOPF_THREADS must be a positive integer, got {raw!r}")
    return n


def _emit(text: str, stream) -> None:
    stream.write(text)
    if not text.endswith("\n"):
        stream.write("\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    s = Session(args)
    start = time.perf_counter()
    try:
        _threads()
        payload = args.func(s)
    except InvariantViolation as exc:
        _emit(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True), sys.stderr)
        return EXIT_INVARIANT
    except HopfError as exc:
        _emit(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True), sys.stderr)
        return EXIT_INVALID
    elapsed = time.perf_counter() - start
    if args.registry:
        with open(args.registry, "w", encoding="utf-8") as fh:
            json.dump(s.registry_json(), fh, sort_keys=True, indent=2)
            fh.write("\n")
    if args.text:
        _emit(s.text, sys.stdout)
        return 0
    if args.command == "family":
        # bare interval JSON so the output feeds straight back into --input
        _emit(json.dumps(payload, sort_keys=True, indent=2), sys.stdout)
        return 0
    report = {"command": args.command, "result": payload}
    if s.digest is not None:
        report["input_sha256"] = s.digest
    if len(s.registry):
        report["registry"] = s.registry_json()
    if args.timing:
        report["timing_seconds"] = round(elapsed, 6)
    _emit(json.dumps(report, sort_keys=True, indent=2), sys.stdout)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
