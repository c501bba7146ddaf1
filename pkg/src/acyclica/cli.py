"""``acyclica`` command-line front end.

Exit status: 0 on success, 1 on a domain error (bad complex, failed
precondition, cap exceeded, I/O), 2 on a usage error. Output files are
written only after the computation has succeeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import coupling, random_cluster as rc
from .complex import (
    CellComplex,
    cubical_face_census,
    cubical_lattice,
    load_complex,
    simplicial_skeleton,
)
from .enumeration import DEFAULT_CAP, resolve_cap
from .experiments import experiment_cubical_bounds
from .filtration import (
    barcode,
    mc_expected_lifetime,
    min_spanning_acycle,
    msa_lifetime,
    sample_process,
)
from .homology import betti
from .linalg import Field
from .tutte import expected_lifetime_exact, tutte_polynomial

PROG = "acyclica"
COMMANDS = (
    "load", "simplicial", "cubical", "betti", "census", "barcode", "msa",
    "lifetime", "tutte", "rc", "es", "fkg", "limit", "experiment",
)


class UsageError(Exception):
    pass


def _keyvals(tokens: Sequence[str]) -> dict[str, int]:
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or not val.lstrip("-").isdigit():
            raise UsageError(f"expected key=integer, got {tok!r}")
        out[key] = int(val)
    return out


def _sides(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise UsageError(f"expected comma separated side lengths, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("complex source (exactly one)")
    src.add_argument("--simplicial", nargs="+", metavar="KEY=VAL", help="full simplex skeleton, e.g. n=4 l=2")
    src.add_argument("--cubical", metavar="SIDES", help="cubical lattice, e.g. 2,3")
    src.add_argument("--file", metavar="PATH", help="complex in JSON format")
    common.add_argument("--l", type=int, dest="ell", help="degree of the process")
    common.add_argument("--field", type=_field, default=Field(0), help="Q or GFp:<q>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--out", help="write result here instead of stdout")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--cap", type=int, help="enumeration cap on the number of cells (env ACYCLICA_CAP)")
    common.add_argument("--allow-long", action="store_true", help=f"acknowledge a cap above {DEFAULT_CAP}")

    parser = argparse.ArgumentParser(prog=PROG, description="Homology of random cell complexes.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{" + "|".join(COMMANDS) + "}")
    mk = lambda name, help_: sub.add_parser(name, parents=[common], help=help_)  # noqa: E731

    mk("load", "validate a complex file and summarise it")
    p = mk("simplicial", "emit the skeleton of a full simplex as JSON")
    p.add_argument("params", nargs="*", metavar="KEY=VAL")
    p = mk("cubical", "emit a cubical lattice as JSON")
    p.add_argument("sides", nargs="?")
    p = mk("betti", "Betti numbers of the complex")
    p.add_argument("--reduced", action="store_true")
    p = mk("census", "number of k-cells")
    p.add_argument("--k", type=int, required=True)
    p = mk("barcode", "barcode of one sampled process")
    p.add_argument("--exact", action="store_true", help="rational birth times")
    p = mk("msa", "minimum spanning acycle of one sampled process")
    p.add_argument("--exact", action="store_true", help="rational birth times")
    p = mk("lifetime", "expected lifetime sum")
    p.add_argument("--exact", action="store_true", help="exact value by subset enumeration")
    p = mk("tutte", "Tutte polynomial")
    p.add_argument("--plain", action="store_true", help="use non-reduced Betti numbers")
    p.add_argument("--order", choices=("desc", "asc"), default="desc")
    for name, help_ in (("rc", "random-cluster distribution"), ("es", "coupling table, marginal check or sampler"),
                        ("fkg", "FKG lattice and positive association checks")):
        p = mk(name, help_)
        p.add_argument("--p", type=_fraction, required=True)
        p.add_argument("--q", type=_fraction, required=True)
    sub.choices["rc"].add_argument("--check", action="store_true", help="partition function identity residual")
    sub.choices["es"].add_argument("--check", action="store_true", help="marginal residuals")
    sub.choices["es"].add_argument("--sweeps", type=int, help="run the Gibbs sampler instead")
    p = mk("limit", "total variation to the uniform spanning-acycle measure")
    p.add_argument("--kmax", type=int, default=4)
    p = mk("experiment", "finite-size lifetime bounds on [0,n]^(l+1)")
    p.add_argument("--n", type=int, required=True)
    return parser


def _complex(args, required: bool = True) -> CellComplex | None:
    given = [s for s in (args.simplicial, args.cubical, args.file) if s is not None]
    if len(given) > 1:
        raise UsageError("give exactly one of --simplicial, --cubical, --file")
    if not given:
        if required:
            raise UsageError("a complex source is required (--simplicial, --cubical or --file)")
        return None
    if args.simplicial is not None:
        kv = _keyvals(args.simplicial)
        if "n" not in kv:
            raise UsageError("--simplicial needs n=<vertices>")
        ell = kv.get("l", args.ell if args.ell is not None else 2)
        if args.ell is None:
            args.ell = ell
        return simplicial_skeleton(kv["n"], ell)
    if args.cubical is not None:
        sides = _sides(args.cubical)
        X = cubical_lattice(sides)
        if args.ell is None:
            args.ell = len(sides) - 1
        return X
    return load_complex(args.file)


def _degree(args, X: CellComplex) -> int:
    return args.ell if args.ell is not None else X.dim


def _emit_value(args, value, key: str) -> str:
    if args.format == "json":
        return json.dumps({key: str(value)}) + "\n"
    if args.format == "csv":
        return f"{key}\n{value}\n"
    return f"{value}\n"


def _run(args) -> str:
    cmd = args.command
    cap = args.cap
    if cap is not None:
        if cap < 0:
            raise UsageError("--cap must be nonnegative")
        if cap > DEFAULT_CAP and not args.allow_long:
            raise UsageError(f"--cap above {DEFAULT_CAP} needs --allow-long")
    cap = resolve_cap(cap)

    if cmd == "simplicial":
        kv = _keyvals(args.params)
        if args.simplicial:
            kv = {**_keyvals(args.simplicial), **kv}
        if "n" not in kv:
            raise UsageError("simplicial needs n=<vertices>")
        return simplicial_skeleton(kv["n"], kv.get("l", args.ell or 2)).to_json() + "\n"
    if cmd == "cubical":
        text = args.sides or args.cubical
        if not text:
            raise UsageError("cubical needs side lengths, e.g. 2,3")
        return cubical_lattice(_sides(text), args.ell).to_json() + "\n"
    if cmd == "census" and args.cubical is not None and args.file is None and args.simplicial is None:
        return _emit_value(args, cubical_face_census(_sides(args.cubical), args.k), "count")
    if cmd == "experiment":
        if args.ell is None:
            raise UsageError("experiment needs --l")
        rep = experiment_cubical_bounds(args.ell, args.n, args.trials, args.seed, workers=args.threads)
        d = rep.as_dict()
        if args.format == "json":
            return json.dumps(d) + "\n"
        if args.format == "csv":
            return ",".join(d) + "\n" + ",".join(str(v) for v in d.values()) + "\n"
        return "".join(f"{k}: {v}\n" for k, v in d.items())

    X = _complex(args)
    ell = _degree(args, X)
    field = args.field

    if cmd == "load":
        if args.format == "json":
            return X.to_json() + "\n"
        return "dims: " + " ".join(str(d) for d in X.dims) + "\n"
    if cmd == "betti":
        bs = [betti(X, k, field=field, reduced=args.reduced) for k in range(X.dim + 1)]
        if args.format == "json":
            return json.dumps({"betti": bs}) + "\n"
        if args.format == "csv":
            return "k,betti\n" + "".join(f"{k},{b}\n" for k, b in enumerate(bs))
        return " ".join(map(str, bs)) + "\n"
    if cmd == "census":
        return _emit_value(args, X.n(args.k), "count")
    if cmd in ("barcode", "msa"):
        f = sample_process(X, ell, args.seed, exact=args.exact)
        if cmd == "barcode":
            bc = barcode(f, field)
            if args.format == "csv":
                return bc.to_csv()
            if args.format == "json":
                return json.dumps({"pairs": [[str(b), str(d)] for b, d in bc.pairs]}) + "\n"
            return "".join(f"[{b}, {d})\n" for b, d in bc.pairs) + f"lifetime sum: {bc.lifetime_sum()}\n"
        sa = min_spanning_acycle(f, field)
        if args.format == "csv":
            return sa.to_csv(f)
        if args.format == "json":
            return json.dumps({"cells": sorted(sa.cells), "weight": str(sa.weight),
                               "lifetime": str(msa_lifetime(f, field))}) + "\n"
        return f"cells: {' '.join(map(str, sorted(sa.cells)))}\nweight: {sa.weight}\nlifetime: {msa_lifetime(f, field)}\n"
    if cmd == "lifetime":
        if args.exact:
            return _emit_value(args, expected_lifetime_exact(X, ell, field=field, cap=cap), "lifetime")
        est = mc_expected_lifetime(X, ell, args.trials, args.seed, workers=args.threads)
        if args.format == "csv":
            return est.to_csv()
        if args.format == "json":
            return json.dumps({"mean": est.mean, "stderr": est.stderr, "trials": args.trials}) + "\n"
        return f"{est.mean!r} +/- {est.stderr!r}\n"
    if cmd == "tutte":
        T = tutte_polynomial(X, ell, reduced=not args.plain, field=field, cap=cap)
        if args.format == "json":
            return T.to_json() + "\n"
        return T.to_string(args.order) + "\n"
    if cmd == "rc":
        params = rc.RCParams(args.p, args.q, ell, field)
        if args.check:
            return _emit_value(args, rc.rc_partition_identity_check(X, params), "residual")
        dist = rc.rc_distribution(X, params, cap=cap)
        if args.format == "csv":
            return dist.to_csv()
        return _emit_value(args, dist.Z, "Z")
    if cmd == "es":
        q = args.q
        if q.denominator != 1:
            raise ValueError(f"the coupling needs a prime q, got {q}")
        q = int(q)
        if args.sweeps is not None:
            return coupling.sampler_csv(X, args.p, q, ell, args.sweeps, args.seed)
        if args.check:
            rp, rr = coupling.es_marginal_check(X, args.p, q, ell)
            if args.format == "json":
                return json.dumps({"potts": str(rp), "rc": str(rr)}) + "\n"
            return f"potts residual: {rp}\nrc residual: {rr}\n"
        joint = coupling.es_joint_distribution(X, args.p, q, ell)
        if args.format == "csv":
            return joint.to_csv()
        return _emit_value(args, joint.Z, "Z")
    if cmd == "fkg":
        params = rc.RCParams(args.p, args.q, ell, field)
        bad = rc.fkg_lattice_check(X, params)
        margin = rc.positive_association_check(X, params, args.trials, args.seed)
        if args.format == "json":
            return json.dumps({"violations": [list(v) for v in bad], "min_margin": str(margin)}) + "\n"
        if args.format == "csv":
            return "Y,Y2,kind\n" + "".join(f"{a},{b},{k}\n" for a, b, k in bad)
        return f"violations: {len(bad)}\nmin covariance: {margin}\n"
    if cmd == "limit":
        sched = rc.geometric_schedule(args.kmax)
        tvs = rc.uniform_sa_limit_check(X, ell, sched, field=field)
        if args.format == "json":
            return json.dumps([{"p": str(p), "q": str(q), "tv": str(tv)} for (p, q), tv in zip(sched, tvs)]) + "\n"
        if args.format == "csv":
            return "p,q,tv\n" + "".join(f"{p},{q},{float(tv)!r}\n" for (p, q), tv in zip(sched, tvs))
        return "".join(f"p={p} q={q} tv={float(tv):.6g}\n" for (p, q), tv in zip(sched, tvs))
    raise UsageError(f"unknown command {cmd!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = _run(args)
    except UsageError as exc:
        print(f"{PROG}: usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"{PROG}: error: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
