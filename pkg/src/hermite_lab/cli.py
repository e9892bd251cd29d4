"""``hermite-lab`` command line.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import HermiteLabError
from .field import FieldSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _partition(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}; expected e.g. 4,2,2,1") from None
    return parts


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _emit(out: str, payload: dict, text_lines: list) -> None:
    if out == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _matrix_lines(M) -> list:
    fmt = M.field.format
    rows = [[fmt(x) for x in row] for row in M.entries]
    width = max((len(s) for r in rows for s in r), default=1)
    return [" ".join(s.rjust(width) for s in r) for r in rows]


# -- subcommands ---------------------------------------------------------------------------

def cmd_qbinom(args) -> int:
    from .partitions import b_coefficient, gaussian_binomial

    coeffs = gaussian_binomial(args.ell, args.m)
    b = [b_coefficient(k, args.ell, args.m) for k in range(args.ell * args.m // 2 + 1)]
    _emit(args.out, {"ell": args.ell, "m": args.m, "coefficients": list(coeffs), "b": b},
          [" ".join(map(str, coeffs))])
    return EXIT_OK


def cmd_partition_maps(args) -> int:
    from .partitions import box_basis, pad, tilde_D, tilde_W, tilde_W_star, transpose

    m, ell = args.m, args.ell
    if args.partition is not None:
        lam = pad(args.partition, m)
        a = tilde_W(lam, m, ell)
        b = tilde_D(a, m, ell)
        c = tilde_W_star(b, ell, m)
        t = pad(transpose(lam), ell)
        ok = c == t
        _emit(args.out,
              {"lambda": list(lam), "W": list(a), "D": list(b), "Wstar": list(c), "transpose": list(t), "commutes": ok},
              [f"{lam} -> {a} -> {b} -> {c}", f"transpose {t}: {'ok' if ok else 'MISMATCH'}"])
        return EXIT_OK if ok else EXIT_FAIL
    bad = [lam for lam in box_basis(m, ell)
           if tilde_W_star(tilde_D(tilde_W(lam, m, ell), m, ell), ell, m) != pad(transpose(lam), ell)]
    n = len(box_basis(m, ell))
    _emit(args.out, {"m": m, "ell": ell, "checked": n, "failures": [list(x) for x in bad]},
          [f"box ({m},{ell}): {n - len(bad)}/{n} partitions commute"])
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_hermite_matrix(args) -> int:
    from .isomorphisms import check_triangularity, hermite_R

    R = hermite_R(args.m, args.ell, args.field)
    rep = check_triangularity(R)
    det = R.det()
    fmt = args.field.format
    payload = R.to_json()
    payload.update({"unit_triangular": rep.ok, "determinant": fmt(det), "diagonal": [fmt(x) for x in rep.diagonal]})
    lines = [
        f"R_(m={args.m}, ell={args.ell}) over {args.field}: {len(R.target_basis)}x{len(R.source_basis)}",
        f"unit-triangular (lambda <-> lambda^T): {'yes' if rep.ok else 'NO'}",
        f"determinant: {fmt(det)}",
        "diagonal: " + " ".join(fmt(x) for x in rep.diagonal),
    ] + _matrix_lines(R)
    _emit(args.out, payload, lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_mixed_det(args) -> int:
    from .polyring import mixed_determinant

    if args.k is None:
        raise UsageError("mixed-det needs --k")
    p = mixed_determinant(args.ell, args.k, args.field)
    payload = {"ell": args.ell, "k": args.k, "polynomial": p.to_json(), "text": str(p)}
    _emit(args.out, payload, [str(p)])
    return EXIT_OK


def cmd_k_map(args) -> int:
    from .checks import random_vector
    from .isomorphisms import k_forward, k_inverse
    from .partitions import pad
    from .tensor_spaces import Shape, SpaceDescriptor, SparseVector

    d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, args.m, args.ell, args.field)
    if args.partition is not None:
        v = SparseVector.basis(d, pad(args.partition, args.m))
    else:
        v = random_vector(random.Random(args.seed), d, 0.6)
    p = k_inverse(v)
    back = k_forward(p, args.ell, args.m)
    ok = back == v
    payload = {"vector": v.to_json(), "polynomial": p.to_json(), "round_trip": ok}
    _emit(args.out, payload, [f"v = {_vector_text(v)}", f"K^-1(v) = {p}", f"round trip: {'ok' if ok else 'FAILED'}"])
    return EXIT_OK if ok else EXIT_FAIL


def _vector_text(v) -> str:
    if not v.terms:
        return "0"
    fmt = v.field.format
    return " + ".join(f"{fmt(c)}*F{tuple(k)}" for k, c in sorted(v.terms.items(), reverse=True))


def cmd_iso_i(args) -> int:
    from .isomorphisms import iso_I

    M = iso_I(args.m, args.ell, args.field)
    det = M.det()
    ok = det != 0
    fmt = args.field.format
    payload = M.to_json()
    payload.update({"determinant": fmt(det), "invertible": ok})
    lines = [f"I_(m={args.m}, ell={args.ell}) over {args.field}", f"determinant: {fmt(det)}",
             f"invertible: {'yes' if ok else 'NO'}"] + _matrix_lines(M)
    _emit(args.out, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    from .invariant_hunter import DEFAULT_BUDGET, fixed_subspace

    if args.field.modulus is None:
        raise UsageError("invariants needs a prime field, e.g. --field Fp:2")
    if args.degree is None:
        raise UsageError("invariants needs --degree")
    rep = fixed_subspace(args.ell, args.degree, args.field.modulus, args.slices, args.budget or DEFAULT_BUDGET)
    lines = [
        f"ell={rep.ell} degree={rep.d} field={rep.field} slices={rep.slices.value}",
        f"fixed subspace dimension: {rep.dim_fq_invariants}",
        f"closure span dimension: {rep.dim_closure_span}",
        f"strict superset: {'yes' if rep.strict_superset else 'no'}",
    ]
    lines += [f"extra: {p}" for p in rep.extra_basis]
    _emit(args.out, rep.to_json(), lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .checks import ALL_FIELDS, CheckContext, run_suite

    fields = (args.field,) if args.field_given else ALL_FIELDS
    try:
        results = run_suite(args.suite, CheckContext(seed=args.seed, fields=fields))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = all(r.ok for r in results)
    payload = {"suite": args.suite, "seed": args.seed, "field": str(args.field) if args.field_given else "all",
               "ok": ok, "checks": [r.to_json() for r in results]}
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    _emit(args.out, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "qbinom": cmd_qbinom,
    "partition-maps": cmd_partition_maps,
    "hermite-matrix": cmd_hermite_matrix,
    "mixed-det": cmd_mixed_det,
    "k-map": cmd_k_map,
    "iso-i": cmd_iso_i,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None, help="Q or Fp:<prime> (default Q)")
    common.add_argument("--ell", type=_positive, default=2)
    common.add_argument("--m", type=_positive, default=2)
    common.add_argument("--degree", type=_positive, default=None)
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--partition", type=_partition, default=None, help="comma separated, e.g. 4,2,2,1")
    common.add_argument("--out", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=_positive, default=None, help="monomial cap for invariants")
    common.add_argument("--slices", choices=("one", "two"), default="one")
    common.add_argument("--suite", default="all")

    parser = argparse.ArgumentParser(prog="hermite-lab", description="Exact plethysm and tensor-invariant computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.field_given = args.field is not None
    if args.field is None:
        args.field = FieldSpec.rationals()
    try:
        return COMMANDS[args.command](args)
    except (UsageError, HermiteLabError, ValueError) as exc:
        sys.stderr.write(f"hermite-lab {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
