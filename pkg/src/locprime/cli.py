"""Command-line front end: ``analyze``, ``compute`` and ``verify``.

Exit status is 0 on success (including a NotRepresentable answer), 1 when a
campaign finds violations, and 2 for unreadable input or bad arguments.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Optional

from . import harness
from .description import (
    DescriptionError,
    context_string,
    describe,
    load_description,
    parse_context,
)
from .errors import LocPrimeError, UnknownLaw
from .functors import NotRepresentable, gamma, hom_module, lambda_, localize, tensor_module
from .harness import global_feasible
from .module import PresentedModule, annihilator_ideal
from .predicates import (
    GLOBAL_KINDS,
    LOCAL_KINDS,
    format_witness,
    global_predicate,
    local_predicate,
)


class InputError(Exception):
    pass


def _emit(obj, fmt: str, text: str):
    if fmt == "structured":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def _module_json(M: PresentedModule) -> dict:
    R = M.context.base
    return {
        "invariant_factors": [R.to_json(d) for d in M.torsion_factors],
        "free_rank": M.free_rank,
        "size": M.size(),
        "structure": str(M),
    }


# -- analyze ---------------------------------------------------------------

def _verdict_json(M, kind, names, v) -> dict:
    return {"predicate": kind.value, "ideals": list(names), "holds": v.holds,
            "witness": format_witness(M, kind, v.witness), "evidence": v.evidence}


def cmd_analyze(args) -> int:
    desc = load_description(args.file)
    if args.emit_input:
        print(json.dumps(describe(desc.module, desc.ideals), indent=2, sort_keys=True))
        return 0
    M, ideals = desc.module, desc.ideals
    R = M.context.base
    local = []
    for kind in LOCAL_KINDS:
        if kind.needs_pair:
            for a, b in itertools.product(ideals, repeat=2):
                local.append(_verdict_json(M, kind, (a, b), local_predicate(M, kind, ideals[a], ideals[b])))
        else:
            for a in ideals:
                local.append(_verdict_json(M, kind, (a,), local_predicate(M, kind, ideals[a])))
    glob = []
    if global_feasible(M):
        for kind in GLOBAL_KINDS:
            glob.append(_verdict_json(M, kind, (), global_predicate(M, kind)))
    report = {
        "context": context_string(M.context),
        "module": _module_json(M),
        "annihilator": str(annihilator_ideal(M)),
        "ideals": {k: str(I) for k, I in ideals.items()},
        "local": local,
        "global": glob,
    }
    lines = [
        f"context: {report['context']}",
        f"module: {M}",
        f"invariant factors: [{', '.join(R.fmt(d) for d in M.torsion_factors)}], free rank {M.free_rank}",
        f"annihilator: {report['annihilator']}",
    ]
    if ideals:
        lines.append("ideals: " + ", ".join(f"{k} = {v}" for k, v in report["ideals"].items()))
    for row in local + glob:
        head = f"{row['predicate']}({','.join(row['ideals'])})" if row["ideals"] else row["predicate"]
        line = f"  {head}: {'holds' if row['holds'] else 'fails'}"
        if row["witness"] is not None:
            line += f"  witness {row['witness']}"
        if row["evidence"]:
            line += f"  [{row['evidence']}]"
        lines.append(line)
    if not glob:
        lines.append("  global predicates skipped: quantifier range too large")
    _emit(report, args.format, "\n".join(lines))
    return 0


# -- compute ---------------------------------------------------------------

def _pick_ideal(desc, name: Optional[str]):
    if name is None:
        if not desc.ideals:
            raise InputError("this functor needs an ideal; the file names none")
        name = next(iter(desc.ideals))
    if name not in desc.ideals:
        raise InputError(f"ideal {name!r} is not named in the file")
    return name, desc.ideals[name]


def _parse_prime(ctx, text: str):
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    try:
        return ctx.element(value if not isinstance(value, int) else str(value))
    except LocPrimeError as exc:
        raise InputError(f"--prime: {exc}") from None


def cmd_compute(args) -> int:
    desc = load_description(args.file)
    M = desc.module
    R = M.context.base
    f = args.functor
    if f in ("gamma", "lambda"):
        name, I = _pick_ideal(desc, args.ideal)
        if f == "gamma":
            S = gamma(M, I)
            gens = [[R.to_json(x) for x in g] for g in S.canonical_generators]
            N = S.module()
            out = {"functor": "gamma", "ideal": name, "generators": gens, "module": _module_json(N)}
            shown = ", ".join("[" + ", ".join(R.fmt(x) for x in g) + "]" for g in S.canonical_generators)
            text = f"Gamma_{name}(M) generated by [{shown}]  ~ {N}"
        else:
            L = lambda_(M, I)
            if isinstance(L, NotRepresentable):
                out = {"functor": "lambda", "ideal": name, "representable": False, "reason": L.reason,
                       "stabilization_bound_tried": L.stabilization_bound_tried}
                text = f"Lambda_{name}(M): NotRepresentable: {L.reason}"
            else:
                out = {"functor": "lambda", "ideal": name, "representable": True, "module": _module_json(L)}
                text = (f"Lambda_{name}(M) ~ {L}  invariant factors "
                        f"[{', '.join(R.fmt(d) for d in L.torsion_factors)}], free rank {L.free_rank}")
    elif f in ("hom", "tensor"):
        if not args.with_file:
            raise InputError(f"{f} needs a second module: --with FILE")
        other = load_description(args.with_file)
        if other.context != M.context:
            raise InputError(f"--with module is over {other.context}, first module over {M.context}")
        X = hom_module(M, other.module) if f == "hom" else tensor_module(M, other.module)
        out = {"functor": f, "module": _module_json(X)}
        text = (f"{'Hom(M, N)' if f == 'hom' else 'M (x) N'} ~ {X}  invariant factors "
                f"[{', '.join(R.fmt(d) for d in X.torsion_factors)}], free rank {X.free_rank}")
    else:
        if args.prime is None:
            raise InputError("localize needs --prime")
        p = _parse_prime(M.context, args.prime)
        Lp = localize(M, p)
        out = {"functor": "localize", "prime": R.to_json(Lp.prime), "free_rank": Lp.free_rank,
               "local_exponents": list(Lp.local_factors)}
        parts = [f"R_p/(p^{e})" for e in Lp.local_factors] + ["R_p"] * Lp.free_rank
        text = f"M_p at p = {R.fmt(Lp.prime)} ~ {' + '.join(parts) if parts else '0'}"
    _emit(out, args.format, text)
    return 0


# -- verify ----------------------------------------------------------------

def split_contexts(text: str) -> list[str]:
    """Split on commas that are not inside brackets, so ``F2[x]/[0,0,1]`` survives."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in ",;" and depth == 0:
            if cur.strip():
                out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def cmd_verify(args) -> int:
    if args.law not in harness.LAWS:
        raise UnknownLaw(args.law)
    contexts = None
    if args.contexts:
        contexts = tuple(parse_context(c) for c in split_contexts(args.contexts))
    cfg = harness.CampaignConfig(
        law=args.law, seed=args.seed, case_count=args.count, size_profile=args.profile,
        context_set=contexts, oracle_bound=args.max_size,
    )
    report = harness.run_campaign(cfg)
    if args.format == "structured":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        lines = [f"law {report.law}  seed {report.seed}  cases {report.cases_run}  "
                 f"violations {len(report.violations)}  oracle checks {report.oracle_cross_checks_run}  "
                 f"{report.runtime:.2f}s"]
        for row in report.table:
            lines.append(f"  {row['example']:<18} {row['context']:<6} {row['module']:<10} "
                         f"{row['predicate']}{'(' + row['ideals'] + ')' if row['ideals'] else ''}: "
                         f"expected {row['expected']} got {row['got']}"
                         + (f"  witness {row['witness']}" if row["witness"] else ""))
        for k, v in sorted(report.notes.items()):
            lines.append(f"  note: {k}: {v}")
        for v in report.violations:
            lines.append(f"  VIOLATION case {v.case_index}: {v.claim}: expected {v.expected}, got {v.got}"
                         + (f" (witness {v.witness})" if v.witness else ""))
            lines.append(f"    rerun: {json.dumps(v.case, sort_keys=True)}")
        lines.append("PASS" if report.passed else "FAIL")
        print("\n".join(lines))
    return 0 if report.passed else 1


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locprime", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="invariants and every predicate verdict for a described module")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--emit-input", action="store_true", help="print the parsed description back as JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compute", help="apply a functor to a described module")
    p.add_argument("file")
    p.add_argument("functor", choices=("gamma", "lambda", "hom", "tensor", "localize"))
    p.add_argument("--ideal", help="name of the ideal to use (default: the first one in the file)")
    p.add_argument("--with", dest="with_file", metavar="FILE", help="second module for hom and tensor")
    p.add_argument("--prime", help="irreducible element for localize (decimal or coefficient array)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run a seeded law campaign")
    p.add_argument("law", help="one of: " + ", ".join(harness.LAW_NAMES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--contexts", help='comma-separated contexts, e.g. "Z,Z/12,F2[x]/[0,0,1]"')
    p.add_argument("--profile", choices=tuple(harness.PROFILES), default="default")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--max-size", type=int, default=harness.oracle.DEFAULT_BOUND, help="oracle size bound")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is not None and not (0 <= getattr(args, "seed", 0) < 2 ** 64):
        parser.error("--seed must be an unsigned 64-bit integer")
    if getattr(args, "count", 1) < 0:
        parser.error("--count must be non-negative")
    try:
        return args.func(args)
    except UnknownLaw as exc:
        print(f"error: unknown law {exc.args[0]!r}; known laws: {', '.join(harness.LAW_NAMES)}", file=sys.stderr)
        return 2
    except (DescriptionError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LocPrimeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
