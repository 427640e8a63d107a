"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 mathematical domain
error (e.g. the matrix does not define a derivation), 4 a verify check failed.
"""
from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass, field as dc_field
from math import lcm
from typing import Callable, Sequence

from .constants import (
    NotInvariantError,
    PreconditionError,
    build_even_family,
    build_odd_family,
    certify,
    darboux_eigenvalue,
    diagonal_parameter,
    find_alpha,
    kernel_up_to_degree,
)
from .derivation import (
    ArityError,
    CertificationRequiredError,
    Derivation,
    NotADerivationError,
    apply,
    generator_dij,
    generator_epsilon,
)
from .exactla import Matrix, ShapeError, is_nilpotent
from .field import FieldMismatchError, FieldSpec, UnsupportedElementError
from .linearder import (
    LinearDerivation,
    UnsupportedShapeError,
    classify,
    decompose,
    diagonal_derivation,
    is_locally_nilpotent,
    linear_derivation_space,
)
from .parsing import (
    GrammarError,
    ParseError,
    parse_candidates,
    parse_coefficient,
    parse_expression,
    parse_images,
    parse_matrix,
    parse_monomial,
    parse_ring,
)
from .ring import RingMismatchError, RingSpec
from .suite import SuiteConfig, default_grid, run_suite

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3, 4

DEFAULT_RING = "n=3;m=2,2,2;field=4"

DOMAIN_ERRORS = (
    NotADerivationError,
    NotInvariantError,
    PreconditionError,
    UnsupportedShapeError,
    ShapeError,
    ArityError,
    CertificationRequiredError,
    UnsupportedElementError,
    FieldMismatchError,
    RingMismatchError,
    ZeroDivisionError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")

    def exit(self, status=0, message=None):
        # --help lands here; keep it inside run() instead of exiting the interpreter
        if message:
            sys.stderr.write(message)
        raise SystemExit(status)


@dataclass
class CliConfig:
    ring: RingSpec
    verb: str
    args: argparse.Namespace = dc_field(repr=False)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fermatder", description="Exact algebra for derivations of Fermat rings.")
    p.add_argument("--ring", default=DEFAULT_RING, help=f'ring spec, default "{DEFAULT_RING}"')
    sub = p.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    def der_flags(sp, required=True):
        g = sp.add_mutually_exclusive_group(required=required)
        g.add_argument("--matrix", help='associated matrix, e.g. "0,0,-1; 0,0,-i; 1,i,0"')
        g.add_argument("--images", help='images, e.g. "d(x1)=x2; d(x2)=-x1; d(x3)=0"')

    sp = sub.add_parser("reduce", help="normal form of an expression")
    sp.add_argument("expr")

    sp = sub.add_parser("apply", help="apply a derivation to an expression")
    der_flags(sp)
    sp.add_argument("expr")

    sub.add_parser("gens", help="list the generators d_ij and epsilon")
    sub.add_parser("linspace", help="basis of all linear derivations")

    for name, text in (("classify", "classify a linear derivation"),
                       ("decompose", "scalar plus skew split (m = 2,...,2)"),
                       ("lnd", "decide local nilpotency")):
        der_flags(sub.add_parser(name, help=text))

    sp = sub.add_parser("kernel", help="constants of a derivation degree by degree")
    der_flags(sp)
    sp.add_argument("--max-degree", type=int, default=6)

    sp = sub.add_parser("darboux", help="Darboux certificate of a monomial for x_i -> (alpha/m_i) x_i")
    sp.add_argument("monomial")
    sp.add_argument("--alpha", default="1", help="scalar alpha (ignored when --matrix is given)")
    sp.add_argument("--matrix", help="diagonal matrix diag(alpha/m_i) instead of --alpha")

    sp = sub.add_parser("find-alpha", help="search alpha with trivial constants for alpha*I + skew")
    sp.add_argument("--matrix", required=True, help="skew-symmetric matrix of d_s")
    sp.add_argument("--max-degree", type=int, default=8)
    sp.add_argument("--candidates", default="1,2,1/2")

    sp = sub.add_parser("family", help="nilpotent skew families and their constants")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--odd", type=int, metavar="N")
    g.add_argument("--even", type=int, metavar="N")
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--max-degree", type=int, default=6)

    sp = sub.add_parser("verify", help="replay every structural check on a grid of rings")
    sp.add_argument("--max-degree", type=int, default=6)
    sp.add_argument("--grid", help='exponent vectors, e.g. "2,2,2; 3,3,3" (default: built-in grid)')
    sp.add_argument("--bound", type=int, default=2, help="degree bound for triangular derivations")
    sp.add_argument("--seed", type=int, default=SuiteConfig.seed)
    return p


# ---------------------------------------------------------------------------
# helpers


def _derivation(cfg: CliConfig) -> Derivation:
    a = cfg.args
    if a.matrix is not None:
        return _linear(cfg).derivation
    d = Derivation(cfg.ring, parse_images(a.images, cfg.ring))
    if not d.certified:
        raise NotADerivationError(d.residue)
    return d


def _linear(cfg: CliConfig) -> LinearDerivation:
    a, spec = cfg.args, cfg.ring
    if a.matrix is not None:
        M = parse_matrix(a.matrix, spec.field)
        if M.shape != (spec.n, spec.n):
            raise ShapeError(f"expected a {spec.n}x{spec.n} matrix, got {M.rows}x{M.cols}")
        return LinearDerivation(spec, M)
    images = parse_images(a.images, spec)
    rows = []
    for img in images:
        if any(sum(e) != 1 for e in img.terms):
            raise UnsupportedShapeError(f"image {img} is not linear in x1..x{spec.n}")
        rows.append([img.coefficient(tuple(int(i == j) for i in range(spec.n))) for j in range(spec.n)])
    return LinearDerivation(spec, Matrix(spec.field, rows))


def _positive(value: int, flag: str) -> None:
    if value < 1:
        raise UsageError(f"{flag} must be at least 1, got {value}")


def _parse_grid(text: str) -> list[tuple[int, ...]]:
    grid = []
    offset = 0
    for part in text.split(";"):
        if part.strip():
            try:
                m = tuple(int(x) for x in part.split(","))
                RingSpec(m)
            except ValueError as exc:
                raise GrammarError(f"bad exponent vector {part.strip()!r}: {exc}", text, offset) from None
            grid.append(m)
        offset += len(part) + 1
    return grid


# ---------------------------------------------------------------------------
# verbs; each prints its report and returns an exit code


def _reduce(cfg):
    print(parse_expression(cfg.args.expr, cfg.ring))
    return EXIT_OK


def _apply(cfg):
    d = _derivation(cfg)
    print(apply(d, parse_expression(cfg.args.expr, cfg.ring)))
    return EXIT_OK


def _gens(cfg):
    spec = cfg.ring
    print(f"epsilon: {generator_epsilon(spec)}")
    for i in range(1, spec.n + 1):
        for j in range(i + 1, spec.n + 1):
            print(f"d_{i}{j}: {generator_dij(spec, i, j)}")
    print(f"COUNT={1 + spec.n * (spec.n - 1) // 2}")
    return EXIT_OK


def _linspace(cfg):
    basis = linear_derivation_space(cfg.ring)
    for idx, B in enumerate(basis, start=1):
        print(f"basis {idx}:")
        print(B)
    print(f"DIM={len(basis)}")
    return EXIT_OK


def _classify(cfg):
    c = classify(_linear(cfg))
    print(f"CLASS={c.kind}")
    if c.kind == "diagonal":
        print(f"alpha = {c.alpha}")
    elif c.kind == "scalar+skew":
        print(f"alpha = {c.decomposition.alpha}")
        print("skew part:")
        print(c.decomposition.skew)
    else:
        print(c.matrix)
    return EXIT_OK


def _decompose(cfg):
    dec = decompose(_linear(cfg))
    print(f"alpha = {dec.alpha}")
    print("skew part:")
    print(dec.skew)
    return EXIT_OK


def _lnd(cfg):
    ld = _linear(cfg)
    nil = is_locally_nilpotent(ld)
    if nil:
        print(f"nilpotency index = {is_nilpotent(ld.matrix)[1]}")
    print(f"LND={'true' if nil else 'false'}")
    return EXIT_OK


def _kernel(cfg):
    _positive(cfg.args.max_degree, "--max-degree")
    report = kernel_up_to_degree(_derivation(cfg), cfg.args.max_degree)
    print("\n".join(report.lines()))
    return EXIT_OK


def _darboux(cfg):
    spec = cfg.ring
    if cfg.args.matrix is not None:
        ld = _linear(cfg)
        alpha = diagonal_parameter(ld)
    else:
        alpha = parse_coefficient(cfg.args.alpha, spec.field)
        ld = diagonal_derivation(spec, alpha)
    mono = parse_monomial(cfg.args.monomial, spec)
    cert = certify(ld, spec.monomial(mono), darboux_eigenvalue(spec, alpha, mono))
    print(f"element = {cert.element}")
    print(f"alpha = {alpha}")
    print(f"EIGENVALUE={cert.eigenvalue}")
    print(f"PROPER={'true' if cert.is_proper else 'false'}")
    return EXIT_OK


def _find_alpha(cfg):
    _positive(cfg.args.max_degree, "--max-degree")
    d_s = _linear(cfg)
    if not d_s.matrix.is_skew_symmetric():
        raise PreconditionError("find-alpha needs a skew-symmetric matrix")
    cands = parse_candidates(cfg.args.candidates, cfg.ring.field)
    alpha = find_alpha(d_s, cfg.args.max_degree, cands)
    print(f"ALPHA={'none' if alpha is None else alpha}")
    return EXIT_OK


def _family(cfg):
    a = cfg.args
    _positive(a.max_degree, "--max-degree")
    n = a.odd if a.odd is not None else a.even
    requested = cfg.ring.field.conductor
    need = 4 if a.odd is not None else lcm(4, n - 1)
    conductor = lcm(requested, need)
    if conductor != requested:
        print(f"field conductor raised from {requested} to {conductor}")
    fld = FieldSpec(conductor)
    d_s = build_odd_family(n, fld) if a.odd is not None else build_even_family(n, fld)
    alpha = parse_coefficient(a.alpha, fld)
    print(f"ring: n={n}; m={','.join(map(str, d_s.spec.m))}; field={conductor}")
    print("skew matrix:")
    print(d_s.matrix)
    nil, index = is_nilpotent(d_s.matrix)
    print(f"skew={'true' if d_s.matrix.is_skew_symmetric() else 'false'} nilpotency index={index}")
    print(f"LND={'true' if is_locally_nilpotent(d_s) else 'false'}")
    d = LinearDerivation(d_s.spec, d_s.matrix + Matrix.scalar(fld, n, alpha))
    print(f"constants of alpha*I + d_s with alpha = {alpha}:")
    print("\n".join(kernel_up_to_degree(d, a.max_degree).lines()))
    return EXIT_OK


def _verify(cfg):
    a = cfg.args
    _positive(a.max_degree, "--max-degree")
    _positive(a.bound, "--bound")
    grid = _parse_grid(a.grid) if a.grid else default_grid()
    suite_cfg = SuiteConfig(a.max_degree, grid, a.bound, a.seed, cfg.ring.field.conductor)
    results = run_suite(suite_cfg)
    for r in results:
        print(r.line())
    failed = sum(r.status == "FAIL" for r in results)
    print(f"FAILED={failed}")
    return EXIT_VERIFY if failed else EXIT_OK


VERBS: dict[str, Callable[[CliConfig], int]] = {
    "reduce": _reduce, "apply": _apply, "gens": _gens, "linspace": _linspace,
    "classify": _classify, "decompose": _decompose, "lnd": _lnd, "kernel": _kernel,
    "darboux": _darboux, "find-alpha": _find_alpha, "family": _family, "verify": _verify,
}


def run_verb(cfg: CliConfig) -> int:
    try:
        return VERBS[cfg.verb](cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        residue = getattr(exc, "residue", None)
        if residue is not None and residue:
            print(f"residue: {residue}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        ring = parse_ring(args.ring)
    except ParseError as exc:
        print(f"parse error in --ring: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return run_verb(CliConfig(ring, args.verb, args))


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run the CLI in-process and capture (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:
            code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
