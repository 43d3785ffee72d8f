"""Skew matrix of linear forms attached to a 3-form and its rank strata.

A 3-form ``omega`` on V determines the square matrix ``M`` of size
``dim V`` whose (i, j) entry is the linear functional
``P -> <omega, e_i ^ e_j ^ P>``.  Evaluating ``M`` at a point gives a
scalar skew-symmetric matrix whose rank is the rank of the 2-form
``contract(omega, P)``; the locus where that rank drops below its
generic value is the fundamental locus of the line congruence attached
to ``omega`` (points lying on infinitely many of its lines).

This module builds ``M`` exactly, evaluates ranks at points, samples
rank statistics over prime fields, measures the degree of the drop
locus for even ``n`` by restricting principal sub-Pfaffians to random
lines, extracts the secant polynomial of a congruence line for odd
``n`` from the quotient Pfaffian pencil, and enumerates the full rank
stratification over small prime fields.

No floating point is used anywhere; scalars are rationals or prime
residues throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional, Sequence, Union

from .exact_scalar import (
    ConventionError,
    FieldSpec,
    Matrix,
    Scalar,
    UniPoly,
    _rref,
    interpolate,
    pfaffian,
    poly_gcd,
    rank_kernel,
)
from .exterior_core import (
    AlternatingTensor,
    SpaceContext,
    contract,
    covector_contract,
    derive_seed,
    projective_point_count,
    projective_points,
    reduced_square,
    wedge,
)
from .form_analysis import (
    EXHAUSTIVE_POINT_BUDGET,
    _pair_action_table,
    j_rank,
    point_contraction_rank,
)

__all__ = [
    "NonGenericFormError",
    "SkewLinearMatrix",
    "StratumReport",
    "SecantPencil",
    "ExhaustiveStrata",
    "build_M",
    "rank_at",
    "stratify",
    "hypersurface_degree",
    "secant_pencil",
    "exhaustive_strata",
    "ROOT_SCAN_PRIME_BOUND",
]

# Polynomial roots over F_p are located by scanning the field, which is
# adequate for the desk-scale primes used throughout.
ROOT_SCAN_PRIME_BOUND = 10_000

PointLike = Union[AlternatingTensor, Sequence]


class NonGenericFormError(RuntimeError):
    """A sampling computation detected that the input form is degenerate."""


@dataclass(frozen=True)
class SkewLinearMatrix:
    """Square skew matrix whose entries are linear functionals on V."""

    ctx: SpaceContext
    size: int
    entries: tuple[tuple[AlternatingTensor, ...], ...]

    def __post_init__(self) -> None:
        if self.size != len(self.entries):
            raise ConventionError("entry grid does not match declared size")
        for i, row in enumerate(self.entries):
            if len(row) != self.size:
                raise ConventionError("entry grid is not square")
            for j, form in enumerate(row):
                if form.ctx != self.ctx or form.degree != 1 or form.variance != "form":
                    raise ConventionError("entries must be 1-forms on the same space")
                if i == j and not form.is_zero():
                    raise ConventionError("diagonal entries must vanish")
                if i < j and form.neg() != self.entries[j][i]:
                    raise ConventionError("entries must be skew-symmetric")

    def entry_form(self, i: int, j: int) -> AlternatingTensor:
        return self.entries[i][j]

    def evaluate(self, point: PointLike) -> Matrix:
        """Scalar skew matrix obtained by evaluating every entry at a point."""
        coords = _point_coords(self.ctx, point)
        fld = self.ctx.field
        dim = self.size
        rows = [[fld.zero()] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                acc = fld.zero()
                for key, coeff in self.entries[i][j].terms:
                    acc = fld.add(acc, fld.mul(coeff, coords[key[0]]))
                rows[i][j] = acc
                rows[j][i] = fld.neg(acc)
        flat = tuple(value for row in rows for value in row)
        return Matrix(fld, dim, dim, flat)


def _point_coords(ctx: SpaceContext, point: PointLike) -> tuple[Scalar, ...]:
    if isinstance(point, AlternatingTensor):
        if point.ctx != ctx or point.degree != 1 or point.variance != "vector":
            raise ConventionError("point must be a vector of the same space")
        return point.coords()
    coords = tuple(ctx.field.coerce(value) for value in point)
    if len(coords) != ctx.dim:
        raise ConventionError(f"expected {ctx.dim} coordinates, got {len(coords)}")
    return coords


def build_M(omega: AlternatingTensor) -> SkewLinearMatrix:
    """The skew matrix of linear forms (i, j) -> <omega, e_i ^ e_j ^ P>."""
    _require_three_form(omega)
    ctx = omega.ctx
    dim = ctx.dim
    table = _pair_action_table(omega)
    grid: list[list[AlternatingTensor]] = [
        [ctx.zero_tensor(1, "form") for _ in range(dim)] for _ in range(dim)
    ]
    for (i, j), contributions in table.items():
        mapping = {(k,): value for k, value in contributions}
        form = AlternatingTensor.make(ctx, 1, "form", mapping)
        grid[i][j] = form
        grid[j][i] = form.neg()
    entries = tuple(tuple(row) for row in grid)
    return SkewLinearMatrix(ctx=ctx, size=dim, entries=entries)


def rank_at(M: SkewLinearMatrix, point: PointLike) -> int:
    """Exact rank of the matrix evaluated at a nonzero point."""
    coords = _point_coords(M.ctx, point)
    if all(M.ctx.field.is_zero(value) for value in coords):
        raise ConventionError("rank is evaluated at nonzero points only")
    return rank_kernel(M.evaluate(coords))[0]


def _require_three_form(omega: AlternatingTensor) -> None:
    if omega.degree != 3 or omega.variance != "form":
        raise ConventionError("expected an alternating 3-form")


# -- sampled stratification -------------------------------------------------------


@dataclass(frozen=True)
class StratumReport:
    """Rank statistics of the skew matrix over a prime field.

    ``rank_histogram`` counts samples per rank, ``generic_rank`` is the
    largest rank observed, and ``strata_hits`` lists distinct projective
    witnesses (first nonzero coordinate normalized to 1) for every rank
    seen strictly below the generic one.
    """

    n: int
    rank_histogram: Mapping[int, int]
    generic_rank: int
    strata_hits: Mapping[int, tuple[tuple[int, ...], ...]]

    def __post_init__(self) -> None:
        if not self.rank_histogram:
            raise ConventionError("empty rank histogram")
        for rank in self.rank_histogram:
            if rank % 2 != 0:
                raise ConventionError("skew matrix ranks must be even")
        bound = self.n if self.n % 2 == 0 else self.n - 1
        if not 0 <= self.generic_rank <= bound:
            raise ConventionError("generic rank exceeds the parity bound")
        for rank in self.strata_hits:
            if rank % 2 != 0 or rank >= self.generic_rank:
                raise ConventionError("witness ranks must sit below the generic rank")


def _normalize_projective(coords: Sequence[int], p: int) -> tuple[int, ...]:
    values = [value % p for value in coords]
    for value in values:
        if value:
            inverse = pow(value, p - 2, p)
            return tuple(v * inverse % p for v in values)
    raise ConventionError("cannot normalize the zero vector")


def _poly_roots_prime(poly: UniPoly, p: int) -> list[int]:
    return [t for t in range(p) if poly.field.is_zero(poly.eval(t))]


def stratify(omega: AlternatingTensor, samples: int = 10_000, seed: int = 0) -> StratumReport:
    """Sample matrix ranks at random points and hunt for low-rank witnesses.

    Witnesses below the generic rank are located by restricting to lines
    and factoring the restricted rank-drop polynomial: for even ``n`` the
    gcd of the principal sub-Pfaffians on random lines, for odd ``n`` the
    quotient Pfaffian pencil along lines of the congruence through random
    points (a random line misses the codimension-3 drop locus, so the
    congruence's own lines, which meet it, are used instead).  Root scans
    run only for primes up to ``ROOT_SCAN_PRIME_BOUND``.
    """
    _require_three_form(omega)
    ctx = omega.ctx
    field = ctx.field
    if field.kind != "prime":
        raise ConventionError("stratification sampling requires a prime field")
    if samples < 1:
        raise ConventionError("at least one sample is required")
    p: int = field.p  # type: ignore[assignment]
    n = ctx.n
    dim = ctx.dim
    rng = random.Random(derive_seed("stratify", n, p, samples, seed))
    table = _pair_action_table(omega)
    M = build_M(omega)

    histogram: dict[int, int] = {}
    seen: dict[int, set[tuple[int, ...]]] = {}

    def record(coords: Sequence[int]) -> int:
        rank = point_contraction_rank(omega, list(coords), table)
        seen.setdefault(rank, set()).add(_normalize_projective(coords, p))
        return rank

    for _ in range(samples):
        coords = [rng.randrange(p) for _ in range(dim)]
        while all(value == 0 for value in coords):
            coords = [rng.randrange(p) for _ in range(dim)]
        rank = record(coords)
        histogram[rank] = histogram.get(rank, 0) + 1

    generic = max(histogram)

    nodes_needed = dim // 2 if n % 2 else n // 2 + 1
    if nodes_needed <= p <= ROOT_SCAN_PRIME_BOUND:
        trials = max(3, min(40, samples // 250))
        if n % 2 == 0:
            _even_witness_search(omega, M, rng, trials, record)
        else:
            _odd_witness_search(omega, M, rng, trials, record)

    hits = dict(
        sorted(
            (rank, tuple(sorted(points)))
            for rank, points in seen.items()
            if rank < generic
        )
    )
    return StratumReport(
        n=n,
        rank_histogram=MappingProxyType(dict(sorted(histogram.items()))),
        generic_rank=generic,
        strata_hits=MappingProxyType(hits),
    )


def _random_coords(field: FieldSpec, dim: int, rng: random.Random) -> list[Scalar]:
    if field.kind == "prime":
        p: int = field.p  # type: ignore[assignment]
        coords = [field.coerce(rng.randrange(p)) for _ in range(dim)]
    else:
        coords = [field.coerce(rng.randint(-9, 9)) for _ in range(dim)]
    if all(field.is_zero(value) for value in coords):
        return _random_coords(field, dim, rng)
    return coords


def _independent_pair(
    field: FieldSpec, dim: int, rng: random.Random
) -> tuple[list[Scalar], list[Scalar]]:
    while True:
        first = _random_coords(field, dim, rng)
        second = _random_coords(field, dim, rng)
        flat = tuple(first) + tuple(second)
        if rank_kernel(Matrix(field, 2, dim, flat))[0] == 2:
            return first, second


def _line_subpfaffian_gcd(
    M: SkewLinearMatrix, first: Sequence[Scalar], second: Sequence[Scalar]
) -> Optional[UniPoly]:
    """Monic gcd of the principal sub-Pfaffians along first + t*second.

    Returns None when every sub-Pfaffian vanishes identically on the
    line, which signals a degenerate line choice.
    """
    field = M.ctx.field
    dim = M.size
    degree_bound = (dim - 1) // 2
    nodes = _interpolation_nodes(field, degree_bound + 1)
    samples: list[list[tuple[Scalar, Scalar]]] = [[] for _ in range(dim)]
    for node in nodes:
        coords = [
            field.add(a, field.mul(node, b)) for a, b in zip(first, second)
        ]
        evaluated = M.evaluate(coords)
        for i in range(dim):
            keep = [k for k in range(dim) if k != i]
            value = pfaffian(evaluated.submatrix(keep, keep))
            samples[i].append((node, value))
    polys = [interpolate(field, pts) for pts in samples]
    nonzero = [poly for poly in polys if not poly.is_zero()]
    if not nonzero:
        return None
    gcd = nonzero[0]
    for poly in nonzero[1:]:
        gcd = poly_gcd(gcd, poly)
    return gcd.monic()


def _interpolation_nodes(field: FieldSpec, count: int) -> list[Scalar]:
    if field.kind == "prime":
        p: int = field.p  # type: ignore[assignment]
        if p < count:
            raise ConventionError(
                f"field with {p} elements cannot host {count} interpolation nodes"
            )
    return [field.coerce(value) for value in range(count)]


def _even_witness_search(omega, M, rng, trials, record) -> None:
    field = omega.ctx.field
    p: int = field.p  # type: ignore[assignment]
    dim = M.size
    for _ in range(trials):
        first, second = _independent_pair(field, dim, rng)
        gcd = _line_subpfaffian_gcd(M, first, second)
        if gcd is None or gcd.degree < 1:
            continue
        for root in _poly_roots_prime(gcd, p):
            coords = [
                (int(a) + root * int(b)) % p for a, b in zip(first, second)
            ]
            if any(coords):
                record(coords)
        record([int(b) % p for b in second])


def _odd_witness_search(omega, M, rng, trials, record) -> None:
    field = omega.ctx.field
    p: int = field.p  # type: ignore[assignment]
    ctx = omega.ctx
    dim = M.size
    n = ctx.n
    for _ in range(trials):
        coords = _random_coords(field, dim, rng)
        rank = record([int(value) for value in coords])
        if rank != n - 1:
            continue
        direction = _kernel_complement_direction(M, coords)
        if direction is None:
            continue
        point = ctx.vector_from_coords(coords)
        line = wedge(point, ctx.vector_from_coords(direction))
        try:
            pencil = secant_pencil(omega, line)
        except NonGenericFormError:
            continue
        for root in _poly_roots_prime(pencil.poly, p):
            witness = pencil.point_at(root)
            record([int(value) for value in witness.coords()])
        if pencil.infinity_multiplicity > 0:
            witness = pencil.point_at_infinity()
            record([int(value) for value in witness.coords()])


def _kernel_complement_direction(
    M: SkewLinearMatrix, coords: Sequence[Scalar]
) -> Optional[list[Scalar]]:
    """A kernel vector of M(P) independent of P itself, if one exists."""
    field = M.ctx.field
    _, kernel = rank_kernel(M.evaluate(coords))
    for column in range(kernel.cols):
        candidate = [kernel.entry(row, column) for row in range(kernel.rows)]
        flat = tuple(coords) + tuple(candidate)
        if rank_kernel(Matrix(field, 2, len(coords), flat))[0] == 2:
            return candidate
    return None


# -- even n: degree of the rank-drop hypersurface ---------------------------------


def hypersurface_degree(omega: AlternatingTensor, *, seed: int = 0) -> int:
    """Degree of the rank-drop locus for even ``n``, by line restriction.

    Restricts the matrix to three independent random lines, interpolates
    the principal sub-Pfaffians as univariate polynomials, and returns
    the degree of their monic gcd, which all three lines must agree on.
    Requires the contraction map of the form to have full rank.
    """
    _require_three_form(omega)
    ctx = omega.ctx
    n = ctx.n
    if n % 2 != 0:
        raise ConventionError("the rank-drop locus is a hypersurface only for even n")
    if j_rank(omega, 1) != ctx.dim:
        raise ConventionError("requires a form whose contraction map has full rank")
    field = ctx.field
    M = build_M(omega)
    rng = random.Random(derive_seed("hypersurface-degree", n, seed))
    degrees: list[int] = []
    attempts = 0
    while len(degrees) < 3:
        attempts += 1
        if attempts > 24:
            raise NonGenericFormError(
                "could not find three usable lines; the form looks degenerate"
            )
        first, second = _independent_pair(field, ctx.dim, rng)
        gcd = _line_subpfaffian_gcd(M, first, second)
        if gcd is None:
            continue
        degrees.append(gcd.degree)
    if len(set(degrees)) != 1:
        raise NonGenericFormError(
            f"rank-drop degree disagrees across lines: {degrees}"
        )
    return degrees[0]


# -- odd n: secant polynomial of a congruence line --------------------------------


@dataclass(frozen=True)
class SecantPencil:
    """Pfaffian of the quotient pencil along a congruence line.

    The line is spanned by ``base`` and ``direction``; the point at
    parameter ``t`` is ``base + t*direction``.  ``poly`` vanishes at the
    parameters where the line meets the rank-drop locus; the root at
    infinity (the point ``direction`` itself) is reported through
    ``infinity_multiplicity = total_degree - poly.degree``.
    """

    poly: UniPoly
    total_degree: int
    infinity_multiplicity: int
    base: AlternatingTensor
    direction: AlternatingTensor

    def __post_init__(self) -> None:
        if self.poly.is_zero():
            raise ConventionError("secant polynomial must be nonzero")
        if self.infinity_multiplicity != self.total_degree - self.poly.degree:
            raise ConventionError("inconsistent root count at infinity")

    def point_at(self, t) -> AlternatingTensor:
        scalar = self.base.ctx.field.coerce(t)
        return self.base.add(self.direction.scale(scalar))

    def point_at_infinity(self) -> AlternatingTensor:
        return self.direction


def _split_decomposable(line: AlternatingTensor) -> tuple[AlternatingTensor, AlternatingTensor]:
    """Vectors e, f with e ^ f equal to the given decomposable bivector."""
    ctx = line.ctx
    field = ctx.field
    (i, j), coefficient = line.terms[0]
    first = covector_contract(ctx.basis_covector(i), line)
    second = covector_contract(ctx.basis_covector(j), line)
    product = wedge(first, second)
    factor = field.div(product.coefficient((i, j)), coefficient)
    if field.is_zero(factor):
        raise ConventionError("failed to split the bivector into two factors")
    second = second.scale(field.inv(factor))
    if wedge(first, second) != line:
        raise ConventionError("bivector does not factor; it is not decomposable")
    return first, second


def secant_pencil(omega: AlternatingTensor, line: AlternatingTensor) -> SecantPencil:
    """Quotient Pfaffian pencil along a line of the congruence, odd ``n``.

    The two evaluated matrices at the spanning points of the line both
    annihilate the line's plane, so the pencil descends to the quotient
    space; its Pfaffian is a polynomial of total degree (n-1)/2 whose
    roots are the intersections of the line with the rank-drop locus.
    """
    _require_three_form(omega)
    ctx = omega.ctx
    n = ctx.n
    if n % 2 == 0:
        raise ConventionError("the secant pencil is defined for odd n")
    if line.ctx != ctx or line.degree != 2 or line.variance != "vector":
        raise ConventionError("expected a bivector on the same space")
    if line.is_zero() or not reduced_square(line).is_zero():
        raise ConventionError("expected a nonzero decomposable bivector")
    if not contract(omega, line).is_zero():
        raise ConventionError("the line does not belong to the congruence")

    field = ctx.field
    base, direction = _split_decomposable(line)
    M = build_M(omega)
    first = M.evaluate(base)
    second = M.evaluate(direction)
    base_coords = base.coords()
    direction_coords = direction.coords()
    for matrix in (first, second):
        for vector in (base_coords, direction_coords):
            if any(not field.is_zero(v) for v in matrix.matvec(vector)):
                raise RuntimeError("pencil members fail to annihilate the line")

    complement = _complement_indices(field, base_coords, direction_coords)
    reduced_first = first.submatrix(complement, complement)
    reduced_second = second.submatrix(complement, complement)

    total = (n - 1) // 2
    nodes = _interpolation_nodes(field, total + 1)
    values = []
    for node in nodes:
        member = reduced_first.add(reduced_second.scale(node))
        values.append((node, pfaffian(member)))
    poly = interpolate(field, values)
    if poly.is_zero():
        raise NonGenericFormError("the quotient Pfaffian vanishes identically")
    return SecantPencil(
        poly=poly,
        total_degree=total,
        infinity_multiplicity=total - poly.degree,
        base=base,
        direction=direction,
    )


def _complement_indices(
    field: FieldSpec, first: Sequence[Scalar], second: Sequence[Scalar]
) -> list[int]:
    """Indices of standard basis vectors completing span{first, second}."""
    rows = [list(first), list(second)]
    pivots = _rref(field, rows, len(first))
    if len(pivots) != 2:
        raise ConventionError("expected two independent spanning vectors")
    return [k for k in range(len(first)) if k not in pivots]


# -- exhaustive stratification over small prime fields -----------------------------


@dataclass(frozen=True)
class ExhaustiveStrata:
    """Full rank stratification of projective space over F_p."""

    n: int
    p: int
    counts: Mapping[int, int]
    points: Mapping[int, tuple[tuple[int, ...], ...]]

    def __post_init__(self) -> None:
        expected = projective_point_count(self.p, self.n + 1)
        if sum(self.counts.values()) != expected:
            raise ConventionError("stratification does not cover projective space")
        for rank, members in self.points.items():
            if rank % 2 != 0:
                raise ConventionError("skew matrix ranks must be even")
            if len(members) != self.counts[rank]:
                raise ConventionError("point lists disagree with their counts")

    @property
    def generic_rank(self) -> int:
        return max(self.counts)

    def stratum(self, max_rank: int) -> tuple[tuple[int, ...], ...]:
        """All points of rank at most ``max_rank``, in enumeration order."""
        collected = []
        for rank in sorted(self.points):
            if rank <= max_rank:
                collected.extend(self.points[rank])
        return tuple(collected)


def _reduce_mod_p(omega: AlternatingTensor, p: int) -> AlternatingTensor:
    field = FieldSpec.prime(p)
    source = omega.ctx.field
    if source.kind == "prime":
        if source.p != p:
            raise ConventionError(
                "form already lives over a different prime field"
            )
        return omega
    ctx = SpaceContext(n=omega.ctx.n, field=field)
    mapping = {key: field.coerce(value) for key, value in omega.terms}
    return AlternatingTensor.make(ctx, 3, "form", mapping)


def exhaustive_strata(omega: AlternatingTensor, p: int) -> ExhaustiveStrata:
    """Rank of the matrix at every point of P^n(F_p)."""
    _require_three_form(omega)
    n = omega.ctx.n
    total = projective_point_count(p, n + 1)
    if total > EXHAUSTIVE_POINT_BUDGET:
        raise ConventionError(
            f"{total} projective points exceed the enumeration budget"
        )
    reduced = _reduce_mod_p(omega, p)
    table = _pair_action_table(reduced)
    counts: dict[int, int] = {}
    points: dict[int, list[tuple[int, ...]]] = {}
    for coords in projective_points(reduced.ctx.field, n + 1):
        rank = point_contraction_rank(reduced, list(coords), table)
        counts[rank] = counts.get(rank, 0) + 1
        points.setdefault(rank, []).append(tuple(int(value) for value in coords))
    return ExhaustiveStrata(
        n=n,
        p=p,
        counts=MappingProxyType(dict(sorted(counts.items()))),
        points=MappingProxyType(
            {rank: tuple(members) for rank, members in sorted(points.items())}
        ),
    )
