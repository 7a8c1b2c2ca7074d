"""Command-line front end.

Subcommands: ``classify``, ``witness``, ``ppt``, ``gen`` and ``durcheck``.
Reports are ``key: value`` lines with floats at 12 significant digits, or
JSON with ``--json``.

Exit codes: 0 success, 1 usage error, 2 validation or I/O failure,
3 numerical failure.
"""

import argparse
import json
import sys
from itertools import combinations

from . import criteria, dmx, states
from .hilbert import TwoLevelSelection, ValidationError
from .linalg import EigenSolverError, min_eigenvalue
from .hilbert import partial_transpose
from .partitions import Partition, union_family

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x):
    """Float at 12 significant digits; magnitudes below 5e-13 print as 0."""
    x = float(x)
    if abs(x) < 5e-13:
        x = 0.0
    return format(x, ".12g")


def _yes(flag):
    return "yes" if flag else "no"


def _subset(beta):
    return "{" + ",".join(str(s) for s in sorted(beta)) + "}"


def _dims(text):
    try:
        return tuple(int(x) for x in text.replace(" ", ",").split(",") if x)
    except ValueError:
        raise UsageError(f"bad --dims {text!r}; expected e.g. 2,2,3") from None


def _load(args):
    return dmx.load_state(args.state, validate=not args.no_validate, renormalize=args.renormalize)


def _emit(lines, payload, as_json, out):
    if as_json:
        json.dump(payload, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        out.write("\n".join(lines) + "\n")


def cmd_classify(args, out):
    w = _load(args)
    rep = criteria.classify(w, strategy=args.strategy, seed=args.seed, oracle=args.oracle)
    lines = [
        f"state: {args.state}",
        f"n: {rep.n}",
        "dims: " + " ".join(str(d) for d in rep.dims),
        f"strategy: {rep.strategy}",
    ]
    for k, r in rep.per_k.items():
        lines.append(
            f"witness[k={k}]: value={fmt(r.value)} bound={fmt(r.bound)} violated={_yes(r.violated)} "
            f'selection="{r.selection}" swapped={_yes(r.swapped)} searched={r.searched}'
        )
    lines.append(f"fidelity: {fmt(rep.fidelity)}")
    lines.append(f"min_violated_k: {rep.min_violated_k if rep.min_violated_k is not None else 'none'}")
    lines.append(f"conclusion: {rep.conclusion}")
    if rep.oracle is not None:
        for k, results in rep.oracle.items():
            for r in results:
                lines.append(
                    f"oracle[k={k}] {r.partition}: {'PPT' if r.ppt else 'NPT'} "
                    f"min_eig={fmt(min(r.min_eigenvalues))}"
                )
        bad = rep.oracle_contradictions()
        lines.append("oracle_consistent: " + ("yes" if not bad else "no (" + " ".join(str(p) for p in bad) + ")"))
    lines.extend(f"note: {n}" for n in rep.notes)
    _emit(lines, rep.as_dict(), args.json, out)
    return EXIT_OK


def cmd_witness(args, out):
    w = _load(args)
    sel = TwoLevelSelection.parse(args.selection).validate(w.dims)
    r = criteria.witness_value(w, args.k, sel, swapped=args.swapped)
    by_exp = criteria.witness_value_by_expectation(w, args.k, sel, swapped=args.swapped)
    lines = [
        f"k: {r.k}",
        f"selection: {sel}",
        f"swapped: {_yes(r.swapped)}",
        f"lambda0_plus: {fmt(r.lambda0_plus)}",
        f"lambda0_minus: {fmt(r.lambda0_minus)}",
        f"value: {fmt(r.value)}",
        f"value_by_expectation: {fmt(by_exp)}",
        f"bound: {fmt(r.bound)}",
        f"violated: {_yes(r.violated)}",
    ]
    payload = {
        "k": r.k,
        "selection": str(sel),
        "swapped": r.swapped,
        "lambda0_plus": r.lambda0_plus,
        "lambda0_minus": r.lambda0_minus,
        "value": r.value,
        "value_by_expectation": by_exp,
        "bound": r.bound,
        "violated": r.violated,
    }
    _emit(lines, payload, args.json, out)
    return EXIT_OK


def cmd_ppt(args, out):
    w = _load(args)
    p = Partition.parse(args.partition, n=w.n)
    res = criteria.is_k_ppt(w, p, tol=args.tol)
    full = frozenset(range(1, w.n + 1))
    by_subset = {}
    for beta, e in zip(res.subsets, res.min_eigenvalues):
        # X^{T_a} and X^{T_complement} are transposes of each other
        by_subset[beta] = e
        by_subset[full - beta] = e
    order = [a for a in union_family(p) if a and a != full]
    lines = [f"partition: {p}", f"k: {p.k}"]
    for beta in order:
        e = by_subset[beta]
        lines.append(f"T{_subset(beta)}: min_eig={fmt(e)} verdict={'PPT' if e >= -args.tol else 'NPT'}")
    lines.append(f"k_ppt: {_yes(res.ppt)}")
    payload = {
        "partition": str(p),
        "k": p.k,
        "subsets": [{"beta": sorted(b), "min_eigenvalue": by_subset[b], "ppt": by_subset[b] >= -args.tol} for b in order],
        "k_ppt": res.ppt,
    }
    _emit(lines, payload, args.json, out)
    return EXIT_OK


def cmd_gen(args, out):
    dims = _dims(args.dims)
    if args.n is not None and args.n != len(dims):
        raise UsageError(f"--n {args.n} conflicts with --dims {args.dims}")
    spec = states.GeneratorSpec(
        kind=args.kind,
        dims=dims,
        p=args.p,
        partition=Partition.parse(args.partition, n=len(dims)) if args.partition else None,
        terms=args.terms,
        seed=args.seed,
        coefficients=criteria.DurCoefficients.parse(len(dims), args.coeffs) if args.coeffs else None,
        selection=TwoLevelSelection.parse(args.selection) if args.selection else None,
    )
    w = spec.build()
    dmx.save_state(w, args.out, comment=f"generated: {args.kind}")
    out.write(f"wrote: {args.out}\n")
    return EXIT_OK


def cmd_durcheck(args, out):
    c = criteria.DurCoefficients.parse(args.n, args.coeffs)
    rho = criteria.dur_state(c)
    dims = (2,) * args.n
    lines = [f"n: {c.n}", f"delta: {fmt(c.delta)}", f"trace: {fmt(c.trace)}"]
    rows = []
    agree_all = True
    for r in range(1, args.n):
        for beta in combinations(range(1, args.n + 1), r):
            v = criteria.dur_ppt_analytic(c, beta, tol=args.tol)
            e = min_eigenvalue(partial_transpose(rho, beta, dims))
            brute = e >= -args.tol
            agree_all &= brute == v.ppt
            label = "PPT(equality)" if v.ppt and v.equality else ("PPT" if v.ppt else "NPT")
            lines.append(
                f"beta={_subset(beta)} g={v.g}: analytic: {label}; brute-force: min eig {fmt(e)} "
                f"({'PPT' if brute else 'NPT'})"
            )
            rows.append({"beta": list(beta), "g": v.g, "analytic_ppt": v.ppt, "equality": v.equality,
                         "margin": v.margin, "min_eigenvalue": e, "brute_force_ppt": brute})
    lines.append(f"agreement: {_yes(agree_all)}")
    _emit(lines, {"n": c.n, "delta": c.delta, "trace": c.trace, "subsets": rows, "agreement": agree_all},
          args.json, out)
    return EXIT_OK if agree_all else EXIT_NUMERICAL


def build_parser():
    parser = _Parser(prog="ghzsep", description="GHZ-witness classification of multipartite states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def state_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("state", help="DMX state file")
        p.add_argument("--no-validate", action="store_true", help="skip trace/positivity checks")
        p.add_argument("--renormalize", action="store_true", help="divide by the trace on load")
        p.add_argument("--json", action="store_true")
        return p

    p = state_cmd("classify", "witness scan over k = 2..n")
    p.add_argument("--strategy", default=None, help="exhaustive | random:N (default depends on size)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="brute-force k-PPT check of every partition")
    p.set_defaults(func=cmd_classify)

    p = state_cmd("witness", "evaluate one (k, selection)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--selection", required=True, help='"a1,b1;a2,b2;..."')
    p.add_argument("--swapped", action="store_true", help="exchange the roles of G0+ and G0-")
    p.set_defaults(func=cmd_witness)

    p = state_cmd("ppt", "partial-transpose spectra for a partition")
    p.add_argument("--partition", required=True, help='e.g. "1|2,3"')
    p.add_argument("--tol", type=float, default=criteria.PPT_TOL)
    p.set_defaults(func=cmd_ppt)

    p = sub.add_parser("gen", help="write a generated state to a DMX file")
    p.add_argument("kind", choices=states.GENERATOR_KINDS)
    p.add_argument("--dims", required=True, help="e.g. 2,2,3")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--partition", default=None)
    p.add_argument("--terms", type=int, default=4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--coeffs", default=None, help="l0+,l0-,l1,... for kind dur")
    p.add_argument("--selection", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("durcheck", help="analytic vs brute-force PPT for GHZ-diagonal coefficients")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeffs", required=True, help="l0+,l0-,l1,...,l_{2^(n-1)-1}")
    p.add_argument("--tol", type=float, default=criteria.PPT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_durcheck)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"ghzsep: usage error: {exc}\n")
        return EXIT_USAGE
    except (ValidationError, OSError) as exc:
        err.write(f"ghzsep: {exc}\n")
        return EXIT_INVALID
    except (EigenSolverError, FloatingPointError, RuntimeError) as exc:
        err.write(f"ghzsep: numerical failure: {exc}\n")
        return EXIT_NUMERICAL


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
