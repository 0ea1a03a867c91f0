"""Command line: membership checks, LMI export, witnesses, verification campaigns.

Exit codes are a stable contract: 0 for membership or overall success, 1
for non-membership (or a failed verification / indefinite pencil), 2 for
usage and file errors, 3 for numerical failures.  Every JSON output
carries a schemaVersion field, and identical flags plus seed produce
byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bmap, fileio, suites
from .basisgen import canonical_traceless_basis, ones_perp_basis, orthonormalize
from .errors import NotPositiveDefiniteError, NumericalFailureError
from .oracles import (
    in_dorthant,
    in_dpsd,
    in_psd,
    in_qcone,
    in_quadcone_closed,
    in_s1_repr,
)

EXIT_MEMBER = 0
EXIT_NONMEMBER = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

CONES = ("psd", "dpsd", "qcone", "s1repr", "quad", "dorthant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conerelax",
        description="Membership oracles, spectrahedral representations, and "
        "identity verification for derivative relaxations of the PSD cone.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide cone membership for a matrix or vector file")
    check.add_argument("path", help="matrix file (vector file for dorthant)")
    check.add_argument(
        "--cone",
        required=True,
        help="one of psd, dpsd:K, qcone, s1repr, quad, dorthant:K",
    )
    _basis_flags(check)
    check.add_argument("--tol", type=float, default=None, help="membership slack")
    check.add_argument("--symmetrize", action="store_true", help="average asymmetric input")
    check.add_argument("--plain", action="store_true", help="whitespace-delimited input")

    repr_p = sub.add_parser("repr", help="export a cone representation as an LMI")
    repr_p.add_argument(
        "--kind", required=True, choices=("s1", "orthant2", "quad", "derivative")
    )
    repr_p.add_argument("--n", type=int, help="matrix side (s1, quad) or vector length (orthant2)")
    repr_p.add_argument("--family", help="family file for kind=derivative")
    repr_p.add_argument(
        "--basis",
        choices=("canonical", "orthonormal"),
        default="canonical",
        help="trace-zero basis flavour (quad always uses orthonormal)",
    )
    repr_p.add_argument("--format", choices=("json", "sdpa"), default="json")
    repr_p.add_argument("--out", help="output path (stdout when omitted)")

    witness = sub.add_parser(
        "witness", help="extract a traceless certificate for a non-member"
    )
    witness.add_argument("path", help="matrix file")
    _basis_flags(witness)
    witness.add_argument("--tol", type=float, default=None)
    witness.add_argument("--symmetrize", action="store_true")
    witness.add_argument("--plain", action="store_true")
    witness.add_argument("--out", help="witness file path (stdout when omitted)")

    verify = sub.add_parser("verify", help="run verification campaigns")
    verify.add_argument(
        "--suite",
        choices=suites.SUITE_NAMES + ("all",),
        default="all",
    )
    verify.add_argument("--n-range", default="2..6", help="inclusive range like 2..6")
    verify.add_argument("--trials", type=int, default=500)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tol", type=float, default=None, help="suite tolerance override")
    verify.add_argument("--out", help="report path (stdout when omitted)")
    return parser


def _basis_flags(parser) -> None:
    parser.add_argument(
        "--basis", choices=("canonical", "orthonormal"), default="canonical"
    )
    parser.add_argument("--basis-file", help="custom trace-zero basis (JSON array)")


def _resolve_basis(args, n: int):
    if getattr(args, "basis_file", None):
        basis = fileio.load_basis_file(args.basis_file)
        if basis.n != n:
            raise ValueError(
                f"{args.basis_file}: basis side {basis.n} does not match input side {n}"
            )
        return basis
    basis = canonical_traceless_basis(n)
    if args.basis == "orthonormal":
        basis = orthonormalize(basis)
    return basis


def _parse_cone(spec: str) -> tuple[str, int | None]:
    name, _, arg = spec.partition(":")
    if name not in CONES:
        raise ValueError(f"unknown cone {name!r}; expected one of {', '.join(CONES)}")
    if name in ("dpsd", "dorthant"):
        if not arg:
            raise ValueError(f"cone {name} needs a derivative order, e.g. {name}:1")
        try:
            return name, int(arg)
        except ValueError:
            raise ValueError(f"bad derivative order {arg!r} for cone {name}") from None
    if arg:
        raise ValueError(f"cone {name} takes no argument, got {spec!r}")
    return name, None


def _parse_n_range(spec: str) -> range:
    lo, sep, hi = spec.partition("..")
    if not sep:
        raise ValueError(f"bad n-range {spec!r}; expected like 2..6")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"bad n-range {spec!r}; expected like 2..6") from None
    if lo_i < 2 or hi_i < lo_i or hi_i > 8:
        raise ValueError(f"n-range must satisfy 2 <= lo <= hi <= 8, got {spec!r}")
    return range(lo_i, hi_i + 1)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_check(args) -> int:
    cone, k = _parse_cone(args.cone)
    if cone == "dorthant":
        x = fileio.load_vector(args.path, plain=args.plain)
        verdict = in_dorthant(x, k, args.tol)
    else:
        X = fileio.load_matrix(args.path, plain=args.plain, symmetrize=args.symmetrize)
        if cone == "psd":
            verdict = in_psd(X, args.tol)
        elif cone == "dpsd":
            verdict = in_dpsd(X, k, args.tol)
        elif cone == "qcone":
            verdict = in_qcone(X, args.tol)
        elif cone == "quad":
            verdict = in_quadcone_closed(X, args.tol)
        else:
            verdict = in_s1_repr(X, _resolve_basis(args, X.shape[0]), args.tol)
    sys.stdout.write(
        fileio.dump_json(
            {
                "schemaVersion": fileio.SCHEMA_VERSION,
                "cone": args.cone,
                "member": verdict.member,
                "margin": verdict.margin,
                "method": verdict.method,
            }
        )
    )
    return EXIT_MEMBER if verdict.member else EXIT_NONMEMBER


def _cmd_repr(args) -> int:
    if args.kind == "derivative":
        if not args.family:
            raise ValueError("kind=derivative needs --family FILE")
        mats, e = fileio.load_family(args.family)
        side = mats.shape[1]
        basis = canonical_traceless_basis(side)
        if args.basis == "orthonormal":
            basis = orthonormalize(basis)
        try:
            system = bmap.derivative_cone_lmi(mats, e, basis)
        except NotPositiveDefiniteError as exc:
            sys.stderr.write(
                f"pencil at e is not positive definite: smallest eigenvalue "
                f"{exc.min_eigenvalue:.6e}\n"
            )
            return EXIT_NONMEMBER
    else:
        if args.n is None:
            raise ValueError(f"kind={args.kind} needs --n")
        n = args.n
        if args.kind == "s1":
            basis = canonical_traceless_basis(n)
            if args.basis == "orthonormal":
                basis = orthonormalize(basis)
            system = bmap.bmap_lmi(basis)
        elif args.kind == "orthant2":
            basis = canonical_traceless_basis(n - 1) if n >= 3 else None
            if basis is None:
                raise ValueError("kind=orthant2 needs n >= 3")
            if args.basis == "orthonormal":
                basis = orthonormalize(basis)
            system = bmap.orthant2_lmi(n, basis, ones_perp_basis(n))
        else:  # quad
            if args.basis != "orthonormal":
                raise ValueError("kind=quad requires --basis orthonormal")
            system = bmap.quad_cone_lmi(orthonormalize(canonical_traceless_basis(n)))
    if args.format == "json":
        _emit(fileio.dump_json(bmap.lmi_to_json_dict(system)), args.out)
    else:
        import io

        buf = io.StringIO()
        bmap.write_sdpa_sparse(system, buf)
        _emit(buf.getvalue(), args.out)
    return EXIT_MEMBER


def _cmd_witness(args) -> int:
    X = fileio.load_matrix(args.path, plain=args.plain, symmetrize=args.symmetrize)
    verdict = in_s1_repr(X, _resolve_basis(args, X.shape[0]), args.tol)
    if verdict.member:
        sys.stderr.write(
            f"matrix is a member (margin {verdict.margin:.6e}); no witness exists\n"
        )
        return EXIT_NONMEMBER
    Y = verdict.witness
    value = float(np.einsum("ab,bc,ca->", Y, X, Y))
    _emit(
        fileio.dump_json(
            {
                "schemaVersion": fileio.SCHEMA_VERSION,
                "n": int(Y.shape[0]),
                "rows": Y.tolist(),
                "value": value,
                "trace": float(np.trace(Y)),
                "margin": verdict.margin,
            }
        ),
        args.out,
    )
    if args.out:
        sys.stdout.write(f"witness written to {args.out}; tr(YXY) = {value:.6e}\n")
    return EXIT_MEMBER


def _cmd_verify(args) -> int:
    n_range = _parse_n_range(args.n_range)
    names = suites.SUITE_NAMES if args.suite == "all" else (args.suite,)
    body = suites.run_suites(names, n_range, trials=args.trials, seed=args.seed, tol=args.tol)
    report = {
        "schemaVersion": fileio.SCHEMA_VERSION,
        "suite": args.suite,
        "nRange": [n_range.start, n_range.stop - 1],
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        **body,
    }
    _emit(fileio.dump_json(report), args.out)
    return EXIT_MEMBER if report["passed"] else EXIT_NONMEMBER


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the contract
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "repr":
            return _cmd_repr(args)
        if args.command == "witness":
            return _cmd_witness(args)
        return _cmd_verify(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NumericalFailureError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
