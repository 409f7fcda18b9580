"""Command-line interface: ``sppt {gen,verdict,conjecture,channel,factorize}``.

Exit codes: 0 analysis complete (verdicts may be negative), 1 conjecture
violation or non-representable factor, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import families
from .bipartite import from_matrix, maximally_entangled
from .channels import channel, eb_report
from .factor import SAMPLERS, NotRepresentable, assemble_matrix, canonical_factorize, random_unitary
from .harness import derive_seed, run_conjecture
from .io import FileFormatError, MatrixFile, dumps, factor_to_json, parse_matrix_literal, read_matrix
from .matrix_core import LinalgError, Tolerance, max_abs
from .report import analyze

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# -- gen ---------------------------------------------------------------------


def _gen_spec(args) -> tuple[families.FamilySpec, dict]:
    fam = args.family
    if fam in ("werner", "isotropic"):
        if args.maximally_mixed == (args.p is not None):
            raise UsageError("give exactly one of --p or --maximally-mixed")
        p = 0.0 if args.maximally_mixed else args.p
        params = {"n": args.n, "p": p}
        return families.FamilySpec(fam, params), params
    if fam == "orthogonally-invariant":
        if args.a is None:
            args.a = 1.0 - args.b - args.c
        params = {"a": float(args.a), "b": args.b, "c": args.c}
        return families.FamilySpec("orthogonally_invariant", params), params
    if fam == "horodecki-2x4":
        return families.FamilySpec("horodecki_2x4", {"b": args.b}), {"b": args.b}
    if fam == "horodecki-3x3":
        return families.FamilySpec("horodecki_3x3", {"a": args.a}), {"a": args.a}
    if fam == "circulant-2x2":
        a, b = parse_matrix_literal(args.a), parse_matrix_literal(args.b)
        return families.FamilySpec("circulant2x2", {"a": a, "b": b}), {"a": args.a, "b": args.b}
    if fam == "circulant":
        blocks = [parse_matrix_literal(t) for t in args.block]
        return families.FamilySpec("circulant_NxN", {"blocks": blocks}), {"blocks": args.block}
    if fam == "diagonal-class":
        a = parse_matrix_literal(args.a)
        b = parse_matrix_literal(args.b).real
        return families.FamilySpec("diagonal_class", {"a": a, "b": b}), {"a": args.a, "b": args.b}
    raise UsageError(f"unknown family {fam!r}")


def cmd_gen(args, tol: Tolerance) -> int:
    fam = args.family
    if fam == "max-entangled":
        s = from_matrix(maximally_entangled(args.n), args.n, args.n, tol=tol)
        meta = {"family": fam, "params": {"n": args.n}}
    elif fam == "product":
        rng = np.random.default_rng(args.seed)
        va = random_unitary(args.m, rng)[:, 0]
        vb = random_unitary(args.n, rng)[:, 0]
        s = from_matrix(np.kron(np.outer(va, va.conj()), np.outer(vb, vb.conj())), args.m, args.n,
                        require_normalized=True, tol=tol)
        meta = {"family": fam, "params": {"m": args.m, "n": args.n}, "seed": args.seed}
    elif fam == "sppt-sample":
        seed = derive_seed(args.seed, args.index)
        f = SAMPLERS[args.sampler](args.m, args.n, seed)
        s = from_matrix(assemble_matrix(f), args.m, args.n, require_normalized=True, tol=tol)
        meta = {"family": fam, "params": {"m": args.m, "n": args.n, "sampler": args.sampler},
                "seed": args.seed, "index": args.index, "derived_seed": seed}
    else:
        spec, shown = _gen_spec(args)
        s = families.make(spec, tol)
        meta = {"family": spec.family_id, "params": shown}
    _emit(dumps(MatrixFile.from_state(s, meta).to_json()), args.out)
    return EXIT_OK


# -- verdict / channel / factorize ------------------------------------------


def cmd_verdict(args, tol: Tolerance) -> int:
    s = read_matrix(args.input).to_state(tol)
    r = analyze(s, tol)
    if args.json:
        sys.stdout.write(dumps(r.to_json()))
        return EXIT_OK
    lines = [
        r.summary(),
        f"dims: {r.dims[0]}x{r.dims[1]}",
        f"PPT: {r.ppt.value} (min eigenvalue of partial transpose {r.min_eig_pt:.6e})",
    ]
    if r.representable:
        lines.append(f"SPPT along canonical factorization: {_yes(r.is_sppt)} (max defect {r.max_defect:.6e})")
        for (i, j), res in sorted(r.condition_residuals.items()):
            lines.append(f"  condition ({i + 1},{j + 1}) residual {res:.6e}")
    else:
        i, j = r.not_representable_block
        lines.append(f"SPPT along canonical factorization: no (not representable at block ({i + 1},{j + 1}))")
    lines.append(f"realignment: {r.realignment_value:.12f}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_channel(args, tol: Tolerance) -> int:
    s = read_matrix(args.input).to_state(tol)
    r = eb_report(channel(s), tol)
    print(f"CP: {_yes(r.cp)}")
    print(f"TP defect: {r.tp_defect:.6e}")
    print(f"Choi PPT: {_yes(r.choi_ppt)} (min eigenvalue {r.choi_min_eig_pt:.6e})")
    print(f"Choi realignment: {r.choi_realignment:.12f}")
    print(f"EB: {r.status.value}")
    print(f"note: {r.note}")
    return EXIT_OK


def cmd_factorize(args, tol: Tolerance) -> int:
    mf = read_matrix(args.input)
    s = mf.to_state(tol)
    try:
        f = canonical_factorize(s, tol)
    except NotRepresentable as exc:
        print(f"NotRepresentable: block ({exc.i + 1},{exc.j + 1}) residual {exc.residual:.6e}")
        return EXIT_FOUND
    residual = max_abs(assemble_matrix(f) - s.matrix)
    doc = factor_to_json(f, residual, {"source": str(args.input), **mf.metadata})
    _emit(dumps(doc), args.out)
    if args.out not in (None, "-"):
        print(f"reconstruction residual: {residual:.6e}")
    return EXIT_OK


# -- conjecture ---------------------------------------------------------------


def cmd_conjecture(args, tol: Tolerance) -> int:
    try:
        report = run_conjecture(args.m, args.n, args.count, args.sampler, args.seed, tol)
    except (ValueError, LinalgError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps(report.to_json()), args.out)
    if args.out not in (None, "-"):
        agg = report.to_json()["aggregate"]
        print(
            f"{report.sample_count} samples {args.m}x{args.n} ({args.sampler}): "
            f"max realignment {agg['max_realignment']:.12f}, "
            f"min eigenvalue {agg['min_eigenvalue']:.6e}, "
            f"violations {agg['violations']}, sppt failures {agg['sppt_failures']}"
        )
    return EXIT_OK if report.ok else EXIT_FOUND


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sppt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a family state to a matrix file")
    g.add_argument(
        "family",
        choices=[
            "werner", "isotropic", "orthogonally-invariant", "horodecki-2x4", "horodecki-3x3",
            "circulant-2x2", "circulant", "diagonal-class", "max-entangled", "product", "sppt-sample",
        ],
    )
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--p", type=float)
    g.add_argument("--maximally-mixed", action="store_true")
    g.add_argument("--a", help="number, or JSON matrix for circulant-2x2 / diagonal-class")
    g.add_argument("--b", help="number, or JSON matrix for circulant-2x2 / diagonal-class")
    g.add_argument("--c", type=float)
    g.add_argument("--block", action="append", default=[], help="JSON matrix a^(k); repeat per k")
    g.add_argument("--sampler", choices=list(SAMPLERS), default="commuting")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--index", type=int, default=0)
    g.add_argument("-o", "--out")

    v = sub.add_parser("verdict", help="PPT / SPPT / realignment verdicts for a matrix file")
    v.add_argument("input")
    v.add_argument("--json", action="store_true")

    c = sub.add_parser("conjecture", help="sample SPPT states and test them with realignment")
    c.add_argument("--m", type=int, default=3)
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--sampler", default="commuting")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--out")

    ch = sub.add_parser("channel", help="entanglement-breaking diagnostics of the induced channel")
    ch.add_argument("input")

    fz = sub.add_parser("factorize", help="write the canonical factor of a matrix file")
    fz.add_argument("input")
    fz.add_argument("-o", "--out")
    return p


NUMERIC_PARAMS = {
    "orthogonally-invariant": ("a", "b"),
    "horodecki-2x4": ("b",),
    "horodecki-3x3": ("a",),
}


def _coerce_numeric(args) -> None:
    for name in NUMERIC_PARAMS.get(getattr(args, "family", None), ()):
        raw = getattr(args, name)
        if raw is None:
            if name == "a" and args.family == "orthogonally-invariant":
                continue
            raise UsageError(f"--{name} is required for {args.family}")
        try:
            setattr(args, name, float(raw))
        except ValueError as exc:
            raise UsageError(f"--{name} must be a number, got {raw!r}") from exc
    if getattr(args, "family", None) == "orthogonally-invariant" and (args.b is None or args.c is None):
        raise UsageError("--b and --c are required for orthogonally-invariant")


COMMANDS = {
    "gen": cmd_gen,
    "verdict": cmd_verdict,
    "conjecture": cmd_conjecture,
    "channel": cmd_channel,
    "factorize": cmd_factorize,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = Tolerance.from_env()
        _coerce_numeric(args)
        return COMMANDS[args.command](args, tol)
    except (UsageError, FileFormatError, families.ParamOutOfRange, LinalgError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"sppt {args.command}: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
