"""Command-line front end.

Algebra sources are builtin catalog names or paths to algebra files.  Exit
codes: 0 success, 1 a check failed, 2 usage or parse error, 3 ill-defined
contraction.
"""

import argparse
import json
import os
import sys

from . import catalog
from .algebra import jacobi_check, load_algebra, structure_differences
from .contraction import contract, parse_relabel, parse_scale, scaling_from_dict
from .errors import IllDefinedContraction, LieError
from .invariants import DEFAULT_DEGREE_CAP, invariant_count, invariant_ledger, invariant_space
from .verify import run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ILL_DEFINED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_source(source):
    """``(algebra, is_builtin)`` for a catalog name or an algebra file path."""
    if catalog.is_builtin(source):
        return catalog.builtin_algebra(source), True
    if not os.path.exists(source):
        raise UsageError(f"{source!r} is neither a builtin algebra nor a readable file "
                         f"(builtins: {', '.join(catalog.builtin_names())})")
    try:
        return load_algebra(source), False
    except OSError as exc:
        raise UsageError(f"cannot read {source!r}: {exc.strerror}") from None
    except LieError as exc:
        raise UsageError(f"{source}: {exc}") from None


def bracket_lines(L):
    g = L.generators
    out = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            e = L.bracket_basis(g[i], g[j])
            if e:
                out.append(f"[{g[i]}, {g[j]}] = {e.format(g)}")
    return out


def render_algebra(L, fmt):
    if fmt == "report":
        return json.dumps(L.to_dict(), sort_keys=True) + "\n"
    lines = [f"algebra {L.name} (dimension {L.dim})", "generators: " + ", ".join(L.generators)]
    lines += bracket_lines(L)
    return "\n".join(lines) + "\n"


def cmd_show(args, out):
    L, _ = load_source(args.algebra)
    out.write(render_algebra(L, args.format))
    return EXIT_OK


def cmd_check(args, out):
    L, _ = load_source(args.algebra)
    bad = jacobi_check(L)
    if args.format == "report":
        out.write(json.dumps({"algebra": L.name, "valid": not bad, "violations": [list(t) for t in bad]},
                             sort_keys=True) + "\n")
    elif bad:
        out.write(f"{L.name}: Jacobi identity fails on {len(bad)} triple(s)\n")
        for a, b, c in bad:
            out.write(f"  ({a}, {b}, {c})\n")
    else:
        out.write(f"{L.name}: valid\n")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_casimir(args, out):
    L, _ = load_source(args.algebra)
    if args.degree < 1:
        raise UsageError("--degree must be at least 1")
    if args.degree > args.degree_cap:
        raise UsageError(f"--degree {args.degree} exceeds the cap {args.degree_cap} (raise it with --degree-cap)")
    if args.new:
        basis = invariant_ledger(L, args.degree)[args.degree][1]
    else:
        basis = invariant_space(L, args.degree)
    if args.format == "report":
        out.write(json.dumps(basis.to_dict(), sort_keys=True) + "\n")
    else:
        for s in basis.strings():
            out.write(s + "\n")
        if not len(basis):
            out.write("(none)\n")
    return EXIT_OK


def _load_scaling(text, L, groups):
    if os.path.exists(text):
        try:
            with open(text) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{text}: line {exc.lineno}: {exc.msg}") from None
        return scaling_from_dict(data, L)
    return parse_scale(text, L, groups=groups)


def cmd_contract(args, out):
    L, builtin = load_source(args.algebra)
    s = _load_scaling(args.scale, L, builtin)
    if args.map and not args.compare:
        raise UsageError("--map needs --compare")
    C = contract(L, s, name=f"{L.name}~")
    if not args.compare:
        out.write(render_algebra(C, args.format))
        return EXIT_OK
    ref, ref_builtin = load_source(args.compare)
    relabel = parse_relabel(args.map, L, ref, groups=builtin and ref_builtin) if args.map else {}
    full = {g: relabel.get(g, g) for g in L.generators}
    if sorted(full.values()) != sorted(ref.generators) or len(set(full.values())) != len(full):
        raise UsageError(f"relabeling does not map {L.name} bijectively onto {ref.name}")
    diffs = structure_differences(C, ref, full)
    if args.format == "report":
        out.write(json.dumps({"algebra": C.name, "reference": ref.name, "match": not diffs,
                              "differences": [[a, b, c, str(x), str(y)] for a, b, c, x, y in diffs]},
                             sort_keys=True) + "\n")
    else:
        out.write(render_algebra(C, "text"))
        if diffs:
            out.write(f"MISMATCH against {ref.name}\n")
            for a, b, c, x, y in diffs:
                out.write(f"  coefficient of {c} in [{a}, {b}]: {x} vs {y}\n")
        else:
            out.write("MATCH\n")
    return EXIT_FAIL if diffs else EXIT_OK


def cmd_rank(args, out):
    L, _ = load_source(args.algebra)
    n = invariant_count(L, seed=args.seed)
    if args.format == "report":
        out.write(json.dumps({"algebra": L.name, "dimension": L.dim, "generic_rank": L.dim - n,
                              "invariants": n, "seed": args.seed}, sort_keys=True) + "\n")
    else:
        out.write(f"{L.name}: dimension {L.dim}, generic rank {L.dim - n}, independent invariants {n}\n")
    return EXIT_OK


def cmd_verify_paper(args, out):
    rep = run_verification()
    out.write(rep.to_report() if args.format == "report" else rep.to_text())
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(rep.to_report())
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser():
    # the global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "report"), default=argparse.SUPPRESS)
    common.add_argument("--degree-cap", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="liecontract", parents=[common],
                                description="Exact Lie algebra contractions and Casimir invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    add("show", cmd_show, "print generators and bracket table").add_argument("algebra")
    add("check", cmd_check, "run the Jacobi check").add_argument("algebra")
    sp = add("casimir", cmd_casimir, "list homogeneous invariants of one degree")
    sp.add_argument("algebra")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--new", action="store_true", help="only invariants not generated by lower degrees")
    sp = add("contract", cmd_contract, "contract under a graded scaling")
    sp.add_argument("algebra")
    sp.add_argument("--scale", required=True, help="e.g. J=0,P=1,K=1,Hbar=0,M=2, or a scaling file")
    sp.add_argument("--compare", help="reference algebra to compare the limit with")
    sp.add_argument("--map", help="relabeling onto the reference, e.g. KP=KG,Hbar=H")
    add("rank", cmd_rank, "count independent invariants via the generic rank").add_argument("algebra")
    sp = add("verify-paper", cmd_verify_paper, "run the full reproduction suite")
    sp.add_argument("--report", help="also write the JSON-lines report to this file")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    args.format = getattr(args, "format", "text")
    args.degree_cap = getattr(args, "degree_cap", DEFAULT_DEGREE_CAP)
    args.seed = getattr(args, "seed", 0)
    try:
        return args.func(args, out)
    except IllDefinedContraction as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ILL_DEFINED
    except (UsageError, LieError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
