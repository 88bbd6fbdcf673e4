"""Command-line front end.

Subcommands: gs, hilbert, generic, dsearch, tensor, construct, inflate,
alpha, verify.  Human output is aligned plain text; --json switches to a
machine-readable dump.  Every randomized command prints its effective
(seed, prime, trials) so any reported number can be reproduced.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 size-guard refusal.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import groebner, search, series, tensors, verify
from .fields import DEFAULT_SAMPLING_PRIME, FieldError, parse_field
from .freealg import (ParseError, builtin_presentation, default_order,
                      effective_relation_count, parse_presentation)
from .linalg import read_rowspace, write_rowspace
from .tensors import (AmbientSizeError, TensorContext, WitnessSubspace,
                      certify_vanishing, construct as construct_witness)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SIZE_GUARD = 3


def _emit(args, human: str, machine: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(machine, indent=2, sort_keys=True))
    else:
        print(human)


def _load_presentation(args):
    if args.builtin:
        field = parse_field(args.field) if args.field else None
        pres = builtin_presentation(args.builtin, field=field)
    elif args.file:
        with open(args.file) as f:
            pres = parse_presentation(f.read(), name=args.file)
        if args.field:
            pres = pres.with_field(parse_field(args.field))
    else:
        raise ValueError("give a presentation file or --builtin NAME")
    if args.order:
        from .freealg import DegLexOrder
        ranking = tuple(int(tok.strip().lstrip("x")) for tok in args.order.split(">"))
        pres = pres.with_order(DegLexOrder(ranking))
    return pres


def _load_witness(path) -> WitnessSubspace:
    space, extra = read_rowspace(path)
    import math
    n = int(extra.get("n", math.isqrt(space.ambient)))
    if n * n != space.ambient:
        raise ValueError(f"witness file ambient {space.ambient} is not a square")
    vanish_q = int(extra["vanish_q"]) if "vanish_q" in extra else None
    return WitnessSubspace(TensorContext(n, space.field), space,
                           provenance=extra.get("construction", path),
                           vanish_q=vanish_q)


def _save_witness(w: WitnessSubspace, path, seed=None):
    extra = {"n": w.n, "construction": w.provenance}
    if seed is not None:
        extra["seed"] = seed
    if w.vanish_q is not None:
        extra["vanish_q"] = w.vanish_q
    write_rowspace(w.space, path, extra)


def cmd_gs(args) -> int:
    bound = series.gs_bound(args.n, args.d, args.max_degree)
    _emit(args, str(bound), {"n": args.n, "d": args.d, "coefficients": list(bound.coeffs)})
    return EXIT_OK


def cmd_hilbert(args) -> int:
    pres = _load_presentation(args)
    cap = args.max_degree
    ser, basis = groebner.hilbert_with_basis(pres, cap)
    d = effective_relation_count(pres)
    lines = []
    for w in pres.warnings:
        lines.append(f"# {w}")
    lines.append(f"# n = {pres.n}, independent relations d = {d}, field {pres.field.spec}")
    lines.append(str(ser))
    if args.dump_basis:
        lines.append("# reduced basis elements, leading term first")
        lines.append(basis.dump().rstrip("\n"))
    machine = {"n": pres.n, "d": d, "field": str(pres.field.spec),
               "coefficients": list(ser.coeffs), "warnings": pres.warnings}
    if args.dump_basis:
        machine["basis"] = basis.dump().splitlines()
    _emit(args, "\n".join(lines), machine)
    return EXIT_OK


def cmd_generic(args) -> int:
    ser, report = tensors.generic_dims(args.n, args.d, args.max_degree,
                                       trials=args.trials, seed=args.seed,
                                       p=args.prime, max_ambient=args.max_ambient)
    head = f"# seed = {args.seed}, prime = {args.prime}, trials = {args.trials}"
    agree = report["agreement"]
    _emit(args, f"{head}\n{ser}\n# trial agreement per degree: {agree}",
          {"series": list(ser.coeffs), **{k: v for k, v in report.items()}})
    return EXIT_OK


def cmd_dsearch(args) -> int:
    res = search.dsearch(args.n, args.q, trials=args.trials, seed=args.seed,
                         p=args.prime, max_ambient=args.max_ambient)
    machine = {"n": res.n, "q": res.q, "gs_lower": res.gs_lower,
               "mc_upper": res.mc_upper, "exact": res.exact,
               "certificates": res.certificates, "trials": res.trials,
               "seed": res.seed, "prime": res.prime}
    _emit(args, str(res), machine)
    return EXIT_OK


def cmd_tensor(args) -> int:
    if args.action == "eq":
        w = _load_witness(args.file)
        dim = tensors.lattice_dim(w, args.q, max_ambient=args.max_ambient)
        _emit(args, f"dim T_{args.q} = {dim}",
              {"q": args.q, "dim": dim, "witness_dim": w.dim, "n": w.n})
        return EXIT_OK
    if args.action == "perp":
        field = parse_field(args.field) if args.field else None
        pres = builtin_presentation(args.builtin, field=field) if args.builtin else None
        if pres is None:
            with open(args.file) as f:
                pres = parse_presentation(f.read(), name=args.file)
        w = tensors.relation_perp(pres)
        if args.out:
            _save_witness(w, args.out)
            print(f"# wrote witness of dim {w.dim} (ambient {w.space.ambient}) to {args.out}")
        else:
            _emit(args, f"perp dim = {w.dim}", {"dim": w.dim, "n": w.n})
        return EXIT_OK
    if args.action == "blocks":
        w = _load_witness(args.file)
        sizes = [int(s) for s in args.sizes.split(",")]
        table = tensors.block_dims(w, sizes)
        lines = [f"L_({a},{b}) dim {table[(a, b)]}" for a in sizes for b in sizes]
        _emit(args, "\n".join(lines),
              {"blocks": {f"{a},{b}": table[(a, b)] for a in sizes for b in sizes}})
        return EXIT_OK
    raise ValueError(f"unknown tensor action {args.action!r}")


def cmd_construct(args) -> int:
    field = parse_field(args.field) if args.field else None
    w = construct_witness(args.name, field=field, n=args.n, r=args.r)
    if args.out:
        _save_witness(w, args.out, seed=args.seed)
        print(f"# wrote {w.provenance}: dim {w.dim}, ambient {w.space.ambient} to {args.out}")
    else:
        _emit(args, f"{w.provenance}: dim {w.dim} in ambient {w.space.ambient}",
              {"name": args.name, "dim": w.dim, "ambient": w.space.ambient})
    return EXIT_OK


def cmd_inflate(args) -> int:
    w = _load_witness(args.infile)
    if args.q is not None:
        w.vanish_q = args.q
    big, cert = tensors.inflate(w, args.m)
    if args.out:
        _save_witness(big, args.out)
    machine = {"claim": cert.claim, "ok": cert.ok, "dim": big.dim,
               "ambient": big.space.ambient, "method": cert.method,
               "prime": cert.prime}
    _emit(args, str(cert), machine)
    return EXIT_OK if cert.ok else EXIT_CHECK_FAILED


def cmd_alpha(args) -> int:
    table = search.alpha_table(args.q, args.n_max, trials=args.trials,
                               seed=args.seed, p=args.prime,
                               max_ambient=args.max_ambient)
    machine = {"q": table.q, "reference": table.reference,
               "rows": [{"n": n, "d_upper": d, "ratio": str(r)} for n, d, r in table.rows],
               "infimum": str(table.infimum()), "prime": table.prime,
               "trials": table.trials, "seed": table.seed}
    _emit(args, str(table), machine)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify.run_verify(args.filter)
    if args.json_out is not None:
        payload = report.to_json()
        if args.json_out == "-":
            print(payload)
        else:
            with open(args.json_out, "w") as f:
                f.write(payload)
            print(report.to_text())
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _add_common(p, prime=False, trials=False, ambient=False):
    if prime:
        p.add_argument("--prime", type=int, default=DEFAULT_SAMPLING_PRIME,
                       help="sampling prime (default 2^31 - 1)")
    if trials:
        p.add_argument("--trials", type=int, default=5)
        p.add_argument("--seed", type=int, default=0)
    if ambient:
        p.add_argument("--max-ambient", type=int, default=tensors.DEFAULT_MAX_AMBIENT,
                       help="refuse computations above this coordinate count")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadalg",
                                 description="Hilbert series of quadratic algebras: "
                                             "exact, generic, and certified vanishing.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gs", help="growth lower-bound series at (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("-D", "--max-degree", type=int, default=series.DEFAULT_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_gs)

    p = sub.add_parser("hilbert", help="exact Hilbert series by completion")
    p.add_argument("file", nargs="?", help="presentation file")
    p.add_argument("--builtin", help="named example presentation")
    p.add_argument("-D", "--max-degree", type=int, default=6)
    p.add_argument("--field", help="rational or gf<p> override")
    p.add_argument("--order", help="variable ranking, e.g. 'x2 > x1 > x3'")
    p.add_argument("--dump-basis", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_hilbert)

    p = sub.add_parser("generic", help="Monte Carlo dims of a generic algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("-D", "--max-degree", type=int, default=4)
    _add_common(p, prime=True, trials=True, ambient=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_generic)

    p = sub.add_parser("dsearch", help="bracket the vanishing threshold d(., n, q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_common(p, prime=True, trials=True, ambient=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_dsearch)

    p = sub.add_parser("tensor", help="witness-subspace operations")
    p.add_argument("action", choices=["eq", "perp", "blocks"])
    p.add_argument("file", nargs="?", help="witness or presentation file")
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--builtin", help="presentation name for 'perp'")
    p.add_argument("--field")
    p.add_argument("--sizes", default="2,3", help="comma list for 'blocks'")
    p.add_argument("--out")
    _add_common(p, ambient=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("construct", help="named witness constructions")
    p.add_argument("name", help="cor3-41 | cor3-31 | g30 | alp4 | gfield | whatnot1")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--field")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("inflate", help="scale a vanishing witness to (mn, m^2 d)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--out")
    _add_common(p, prime=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_inflate)

    p = sub.add_parser("alpha", help="threshold ratio table for fixed q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-max", type=int, default=5)
    _add_common(p, prime=True, trials=True, ambient=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_alpha)

    p = sub.add_parser("verify", help="run the reproduction suite")
    p.add_argument("--filter", help="substring filter on check ids")
    p.add_argument("--json", dest="json_out", nargs="?", const="-",
                   help="write the machine-readable report (to a file, or stdout)")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except AmbientSizeError as e:
        print(f"size guard: {e}", file=sys.stderr)
        return EXIT_SIZE_GUARD
    except (ValueError, FieldError, ParseError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
