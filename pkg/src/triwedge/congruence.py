"""The line congruence of a 3-form: the family of lines the form vanishes on.

A projective line corresponds to a nonzero decomposable bivector ``L``; the
form contains the line exactly when ``contract(omega, L) = 0``.  Everything
here is exact linear algebra in the bivector space:

* ``kernel_span`` / ``CongruenceHandle`` — the linear span of the family,
  computed as the kernel of ``L -> contract(omega, L)``;
* ``lines_through`` — the star of family lines through a point, read off the
  kernel of the evaluated skew matrix of the point;
* ``order`` — the sampled count of family lines through a random point, with
  an all-samples-must-agree policy;
* ``sample_line_on_X`` — a seed-deterministic line of the family, found via
  kernel directions (odd ``n``) or rank-drop points on a restricted line
  (even ``n``);
* ``tangent_certificate`` — exact tangent dimension at a family line, by
  intersecting the tangent space of the decomposable locus with the span;
* ``quadrics_through_span`` — all quadratic equations (4-forms evaluated on
  reduced squares) vanishing on the span, compared with the wedge family
  ``{omega ^ x}``;
* ``recover_forms`` — all 3-forms vanishing on a given bivector subspace;
* ``classify_linear_section`` — exhaustive small-field classification of the
  decomposable points of the hyperplane-relaxed span into the family of
  ``omega`` and the family of its split-off restriction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .degeneracy import (
    NonGenericFormError,
    SkewLinearMatrix,
    _independent_pair,
    _kernel_complement_direction,
    _line_subpfaffian_gcd,
    _point_coords,
    _poly_roots_prime,
    _random_coords,
    _require_three_form,
    _split_decomposable,
    build_M,
    rank_at,
)
from .exact_scalar import ConventionError, FieldSpec, Matrix, Scalar, _rref, rank_kernel
from .exterior_core import (
    AlternatingTensor,
    SpaceContext,
    contract,
    covector_contract,
    derive_seed,
    pair,
    projective_point_count,
    projective_points,
    reduced_square,
    split_along_covector,
    wedge,
)
from .form_analysis import LinearSubspace, contraction_matrix, j_rank

__all__ = [
    "MIN_ORDER_PRIME",
    "SECTION_POINT_BUDGET",
    "CongruenceHandle",
    "LocalCertificate",
    "QuadricSystem",
    "SectionPartition",
    "classify_linear_section",
    "kernel_span",
    "lines_through",
    "member_X",
    "order",
    "quadrics_through_span",
    "recover_forms",
    "sample_line_on_X",
    "tangent_certificate",
    "tangent_intersection_dim",
]

MIN_ORDER_PRIME = 101
SECTION_POINT_BUDGET = 10**6
_SAMPLE_RETRY_BUDGET = 64
_WITNESS_CAP = 128


def kernel_span(omega: AlternatingTensor) -> LinearSubspace:
    """Linear span of the line family: the exact kernel of L -> contract(omega, L)."""
    _require_three_form(omega)
    return LinearSubspace.from_kernel(
        contraction_matrix(omega, 2), "bivectors", omega.ctx
    )


@dataclass(frozen=True)
class CongruenceHandle:
    """A 3-form bundled with the linear span of its line family."""

    omega: AlternatingTensor
    span: LinearSubspace
    ctx: SpaceContext

    def __post_init__(self) -> None:
        _require_three_form(self.omega)
        if self.ctx != self.omega.ctx:
            raise ConventionError("handle context does not match the form")
        if self.span.ambient != "bivectors" or self.span.ctx != self.ctx:
            raise ConventionError("span must be a bivector subspace on the same space")
        if self.span.codim != j_rank(self.omega, 2):
            raise ConventionError("span is not the exact contraction kernel")
        for b in self.span.basis_tensors():
            if not contract(self.omega, b).is_zero():
                raise ConventionError("span is not the exact contraction kernel")

    @staticmethod
    def build(omega: AlternatingTensor) -> "CongruenceHandle":
        return CongruenceHandle(omega=omega, span=kernel_span(omega), ctx=omega.ctx)


def _require_bivector(ctx: SpaceContext, line: AlternatingTensor) -> None:
    if line.ctx != ctx:
        raise ConventionError("bivector lives on a different space")
    if line.variance != "vector" or line.degree != 2:
        raise ConventionError("expected a bivector")


def member_X(omega: AlternatingTensor, line: AlternatingTensor) -> bool:
    """True iff the nonzero bivector is decomposable and killed by the form."""
    _require_three_form(omega)
    _require_bivector(omega.ctx, line)
    if line.is_zero():
        raise ConventionError("membership of the zero bivector is undefined")
    return reduced_square(line).is_zero() and contract(omega, line).is_zero()


def lines_through(omega: AlternatingTensor, point) -> LinearSubspace:
    """Directions f (mod the point) with contract(omega, P ^ f) = 0.

    The result is a complement of the point inside the kernel of its
    evaluated skew matrix, so its linear dimension is that kernel dimension
    minus one; projective dimension d means a d-dimensional family of lines
    of the congruence through the point.
    """
    _require_three_form(omega)
    ctx = omega.ctx
    field = ctx.field
    coords = _point_coords(ctx, point)
    if all(field.is_zero(c) for c in coords):
        raise ConventionError("directions through the zero point are undefined")
    matrix = build_M(omega)
    _, kernel = rank_kernel(matrix.evaluate(coords))
    pivot = next(i for i, c in enumerate(coords) if not field.is_zero(c))
    inv_pivot = field.inv(coords[pivot])
    projected: list[list[Scalar]] = []
    for j in range(kernel.cols):
        column = kernel.column(j)
        factor = field.mul(column[pivot], inv_pivot)
        reduced = [
            field.sub(value, field.mul(factor, base))
            for value, base in zip(column, coords)
        ]
        if any(not field.is_zero(v) for v in reduced):
            projected.append(reduced)
    pivots = _rref(field, projected, ctx.dim)
    basis_rows = projected[: len(pivots)]
    flat = tuple(basis_rows[c][r] for r in range(ctx.dim) for c in range(len(basis_rows)))
    return LinearSubspace(
        "vectors", ctx, Matrix(field, ctx.dim, len(basis_rows), flat)
    )


def order(omega: AlternatingTensor, samples: int = 200, seed: int = 0) -> int:
    """Count of family lines through a general point, sampled over a prime field.

    Each draw contributes the projective star dimension plus one at a random
    point.  The returned count is the statistic of a general point — the
    minimal draw value, since the point rank only drops on a proper closed
    subset — and it is returned only once `samples` draws agree on it.  Draws
    with a strictly larger statistic land on that special subset; they are
    expected at a rate of about 1/p and are tolerated up to a fixed fraction
    of the requested samples, beyond which the form is reported non-generic
    instead of guessing a value.
    """
    _require_three_form(omega)
    field = omega.ctx.field
    if field.kind != "prime" or field.p < MIN_ORDER_PRIME:  # type: ignore[operator]
        raise ConventionError(
            f"order sampling needs a prime field with p >= {MIN_ORDER_PRIME}"
        )
    if samples < 1:
        raise ConventionError("order sampling needs at least one sample")
    rng = random.Random(
        derive_seed("congruence-order", omega.ctx.n, field.p, samples, seed)
    )
    matrix = build_M(omega)
    dim = omega.ctx.dim
    slack = max(16, samples // 4)
    best = dim
    agree = 0
    disagree = 0
    while agree < samples:
        if disagree > slack:
            raise NonGenericFormError(
                "line-count statistic disagreed beyond the special-locus tolerance"
            )
        coords = _random_coords(field, dim, rng)
        value = dim - rank_at(matrix, coords) - 1
        if value < best:
            disagree += agree
            best = value
            agree = 1
        elif value == best:
            agree += 1
        else:
            disagree += 1
    return best


def sample_line_on_X(omega: AlternatingTensor, seed: int = 0) -> AlternatingTensor:
    """A seed-deterministic decomposable bivector of the line family.

    Odd ``n``: draw points until one has the generic corank two, then wedge
    it with an independent kernel direction.  Even ``n``: restrict the skew
    matrix to a random line, locate a rank-drop point among the roots of the
    sub-Pfaffian gcd (the restriction's direction covers the root at
    infinity), and wedge that point with one of its kernel directions.
    """
    _require_three_form(omega)
    ctx = omega.ctx
    field = ctx.field
    if field.kind != "prime":
        raise ConventionError("line sampling needs a prime field")
    if j_rank(omega, 1) != ctx.n + 1:
        raise ConventionError(
            "line sampling requires a form whose contraction map has full rank"
        )
    rng = random.Random(derive_seed("congruence-sample-line", ctx.n, field.p, seed))
    matrix = build_M(omega)
    attempt = _odd_line_attempt if ctx.n % 2 else _even_line_attempt
    for _ in range(_SAMPLE_RETRY_BUDGET):
        line = attempt(omega, matrix, rng)
        if line is not None and member_X(omega, line):
            return line
    raise NonGenericFormError(
        "line sampling budget exhausted (non-generic form or small field)"
    )


def _line_from_kernel(
    matrix: SkewLinearMatrix, coords: list[Scalar]
) -> AlternatingTensor | None:
    direction = _kernel_complement_direction(matrix, coords)
    if direction is None:
        return None
    ctx = matrix.ctx
    return wedge(ctx.vector_from_coords(coords), ctx.vector_from_coords(direction))


def _odd_line_attempt(
    omega: AlternatingTensor, matrix: SkewLinearMatrix, rng: random.Random
) -> AlternatingTensor | None:
    ctx = omega.ctx
    coords = _random_coords(ctx.field, ctx.dim, rng)
    if rank_at(matrix, coords) != ctx.n - 1:
        return None
    return _line_from_kernel(matrix, coords)


def _even_line_attempt(
    omega: AlternatingTensor, matrix: SkewLinearMatrix, rng: random.Random
) -> AlternatingTensor | None:
    ctx = omega.ctx
    field = ctx.field
    first, second = _independent_pair(field, ctx.dim, rng)
    gcd = _line_subpfaffian_gcd(matrix, first, second)
    if gcd is None:
        return None
    candidates = [
        [field.add(a, field.mul(root, b)) for a, b in zip(first, second)]
        for root in _poly_roots_prime(gcd, field.p)  # type: ignore[arg-type]
    ]
    candidates.append(list(second))
    for coords in candidates:
        if all(field.is_zero(c) for c in coords):
            continue
        if rank_at(matrix, coords) > ctx.n - 2:
            continue
        line = _line_from_kernel(matrix, coords)
        if line is not None:
            return line
    return None


@dataclass(frozen=True)
class LocalCertificate:
    """Exact local data of the line family at one of its lines."""

    point: AlternatingTensor
    on_X: bool
    tangent_dim: int
    smooth_of_expected_dim: bool

    def __post_init__(self) -> None:
        _require_bivector(self.point.ctx, self.point)
        if self.point.is_zero():
            raise ConventionError("certificate point must be a nonzero bivector")
        expected = self.on_X and self.tangent_dim == self.point.ctx.n - 1
        if self.smooth_of_expected_dim != expected:
            raise ConventionError(
                "smoothness flag must mirror tangent_dim == n - 1 on the family"
            )


def tangent_intersection_dim(
    span: LinearSubspace, line: AlternatingTensor
) -> int:
    """Projective dimension of T_L(decomposable locus) meet a bivector subspace.

    The tangent space of the decomposable locus at ``L = e ^ f`` is spanned by
    ``e ^ V`` and ``V ^ f``; its intersection with the given subspace is
    computed exactly by joining the two column spans.
    """
    ctx = line.ctx
    field = ctx.field
    _require_bivector(ctx, line)
    if span.ambient != "bivectors" or span.ctx != ctx:
        raise ConventionError("span must be a bivector subspace on the line's space")
    if line.is_zero() or not reduced_square(line).is_zero():
        raise ConventionError("tangent space requires a nonzero decomposable bivector")
    first, second = _split_decomposable(line)
    columns: list[tuple[Scalar, ...]] = []
    for i in range(ctx.dim):
        basis_vec = ctx.basis_vector(i)
        for generator in (wedge(first, basis_vec), wedge(basis_vec, second)):
            if not generator.is_zero():
                columns.append(generator.coords())
    ambient = len(list(ctx.index_sets(2)))
    tangent = Matrix(
        field,
        ambient,
        len(columns),
        tuple(columns[c][r] for r in range(ambient) for c in range(len(columns))),
    )
    tangent_rank = rank_kernel(tangent)[0]
    joined = Matrix(
        field,
        ambient,
        tangent.cols + span.basis.cols,
        tuple(
            value
            for r in range(ambient)
            for value in (*tangent.row(r), *span.basis.row(r))
        ),
    )
    joined_rank = rank_kernel(joined)[0]
    return tangent_rank + span.linear_dim - joined_rank - 1


def tangent_certificate(
    omega: AlternatingTensor, line: AlternatingTensor
) -> LocalCertificate:
    """Projective tangent dimension of the family at one of its lines.

    Intersects the tangent space of the decomposable locus with the span of
    the family; the certificate is smooth exactly when the projective
    intersection dimension equals ``n - 1``.
    """
    if not member_X(omega, line):
        raise ConventionError("tangent certificate requires a line of the family")
    tangent_dim = tangent_intersection_dim(kernel_span(omega), line)
    return LocalCertificate(
        point=line,
        on_X=True,
        tangent_dim=tangent_dim,
        smooth_of_expected_dim=tangent_dim == line.ctx.n - 1,
    )


@dataclass(frozen=True)
class QuadricSystem:
    """All quadratic equations through the span of the line family."""

    dimension: int
    basis: tuple[AlternatingTensor, ...]
    matches_wedge_family: bool

    def __post_init__(self) -> None:
        if self.dimension != len(self.basis):
            raise ConventionError("quadric system dimension must match its basis")
        for eta in self.basis:
            if eta.variance != "form" or eta.degree != 4:
                raise ConventionError("quadric system basis must consist of 4-forms")


def quadrics_through_span(omega: AlternatingTensor) -> QuadricSystem:
    """Solve for 4-forms whose quadric L -> eta(reduced_square(L)) kills the span.

    Vanishing on the subspace is encoded on a basis {b_i} by the diagonal
    evaluations eta(reduced_square(b_i)) together with the mixed evaluations
    eta(b_i ^ b_j); the mixed 4-vector equals the polarization
    reduced_square(b_i + b_j) - reduced_square(b_i) - reduced_square(b_j) as
    an integer-coefficient identity, so the same rows are correct in every
    characteristic, including two.  Also reports whether the solution space
    equals the wedge family {omega ^ x : x a covector}.
    """
    _require_three_form(omega)
    ctx = omega.ctx
    field = ctx.field
    span = kernel_span(omega)
    tensors = span.basis_tensors()
    rows: list[tuple[Scalar, ...]] = [reduced_square(b).coords() for b in tensors]
    for i in range(len(tensors)):
        for j in range(i + 1, len(tensors)):
            rows.append(wedge(tensors[i], tensors[j]).coords())
    quartic_dim = len(list(ctx.index_sets(4)))
    conditions = Matrix(
        field, len(rows), quartic_dim, tuple(v for row in rows for v in row)
    )
    _, kernel = rank_kernel(conditions)
    basis = tuple(
        ctx.tensor_from_coords(4, "form", kernel.column(j)) for j in range(kernel.cols)
    )
    family_columns = [
        wedge(omega, ctx.basis_covector(k)).coords() for k in range(ctx.dim)
    ]
    family = Matrix(
        field,
        quartic_dim,
        len(family_columns),
        tuple(
            family_columns[c][r]
            for r in range(quartic_dim)
            for c in range(len(family_columns))
        ),
    )
    family_rank = rank_kernel(family)[0]
    joined = Matrix(
        field,
        quartic_dim,
        kernel.cols + family.cols,
        tuple(
            value
            for r in range(quartic_dim)
            for value in (*kernel.row(r), *family.row(r))
        ),
    )
    matches = (
        kernel.cols == family_rank and rank_kernel(joined)[0] == kernel.cols
    )
    return QuadricSystem(
        dimension=kernel.cols, basis=basis, matches_wedge_family=matches
    )


def recover_forms(
    span: LinearSubspace,
) -> tuple[int, tuple[AlternatingTensor, ...]]:
    """All 3-forms vanishing on a bivector subspace: dimension and a basis.

    Solves the exact linear system contract(form, b_i) = 0 over the given
    basis; the zero subspace therefore recovers the whole space of 3-forms.
    """
    if span.ambient != "bivectors":
        raise ConventionError("form recovery expects a subspace of bivectors")
    ctx = span.ctx
    field = ctx.field
    triples = list(ctx.index_sets(3))
    basis_forms = [
        AlternatingTensor.make(ctx, 3, "form", {key: 1}) for key in triples
    ]
    rows: list[tuple[Scalar, ...]] = []
    for b in span.basis_tensors():
        columns = [contract(f, b).coords() for f in basis_forms]
        for r in range(ctx.dim):
            rows.append(tuple(col[r] for col in columns))
    conditions = Matrix(
        field, len(rows), len(triples), tuple(v for row in rows for v in row)
    )
    _, kernel = rank_kernel(conditions)
    solutions = tuple(
        ctx.tensor_from_coords(3, "form", kernel.column(j)) for j in range(kernel.cols)
    )
    return kernel.cols, solutions


@dataclass(frozen=True)
class SectionPartition:
    """Exhaustive classification of the decomposable small-field points of a
    bivector subspace against two line families."""

    n: int
    p: int
    space_linear_dim: int
    total_points: int
    grassmannian_points: int
    only_full: int
    only_split: int
    overlap: int
    neither: int
    neither_witnesses: tuple[tuple[int, ...], ...]
    overlap_off_hyperplane: tuple[tuple[int, ...], ...]
    exhaustive: bool
    overlap_on_hyperplane: bool

    def __post_init__(self) -> None:
        parts = self.only_full + self.only_split + self.overlap + self.neither
        if parts != self.grassmannian_points:
            raise ConventionError("partition buckets must cover the decomposables")
        if self.grassmannian_points > self.total_points:
            raise ConventionError("more decomposables than enumerated points")
        if self.exhaustive != (self.neither == 0):
            raise ConventionError("exhaustive flag must mirror an empty neither bucket")
        if self.overlap_on_hyperplane != (not self.overlap_off_hyperplane):
            raise ConventionError(
                "hyperplane flag must mirror an empty violation list"
            )


def _to_prime_field(tensor: AlternatingTensor, p: int) -> AlternatingTensor:
    field = FieldSpec.prime(p)
    source = tensor.ctx.field
    if source.kind == "prime":
        if source.p != p:
            raise ConventionError("tensor already lives over a different prime field")
        return tensor
    ctx = SpaceContext(n=tensor.ctx.n, field=field)
    mapping = {key: field.coerce(value) for key, value in tensor.terms}
    return AlternatingTensor.make(ctx, tensor.degree, tensor.variance, mapping)


def _relaxed_span(
    omega: AlternatingTensor, x: AlternatingTensor
) -> LinearSubspace:
    """Bivectors whose contraction against the form is a multiple of x."""
    ctx = omega.ctx
    rows = []
    for key in ctx.index_sets(2):
        blade = AlternatingTensor.make(ctx, 2, "vector", {key: 1})
        rows.append(wedge(contract(omega, blade), x).coords())
    columns = len(rows)
    width = len(rows[0])
    flat = tuple(rows[c][r] for r in range(width) for c in range(columns))
    return LinearSubspace.from_kernel(
        Matrix(ctx.field, width, columns, flat), "bivectors", ctx
    )


def classify_linear_section(
    omega: AlternatingTensor,
    x: AlternatingTensor,
    p: int,
    space: LinearSubspace | None = None,
) -> SectionPartition:
    """Enumerate the F_p-points of the x-relaxed span and classify each
    decomposable one against the family of omega and the family of the
    split-off restriction omega_x (lines inside the hyperplane x = 0).

    The report also checks that every overlap point lies on the hyperplane
    cut out by the split residue beta_x.
    """
    _require_three_form(omega)
    if x.variance != "form" or x.degree != 1:
        raise ConventionError("classification needs a covector direction")
    if x.ctx != omega.ctx:
        raise ConventionError("covector lives on a different space")
    if x.is_zero():
        raise ConventionError("cannot classify along the zero covector")
    omega_p = _to_prime_field(omega, p)
    x_p = _to_prime_field(x, p)
    ctx = omega_p.ctx
    field = ctx.field
    if space is None:
        space = _relaxed_span(omega_p, x_p)
    elif space.ambient != "bivectors" or space.ctx != ctx:
        raise ConventionError(
            "custom space must be a bivector subspace over the same prime field"
        )
    total = projective_point_count(p, space.linear_dim)
    if total > SECTION_POINT_BUDGET:
        raise ConventionError(
            f"{total} projective points exceed the enumeration budget"
        )
    split_form, beta, _ = split_along_covector(omega_p, x_p)
    basis_columns = [space.basis.column(j) for j in range(space.linear_dim)]
    ambient = space.ambient_linear_dim
    counts = {"only_full": 0, "only_split": 0, "overlap": 0, "neither": 0}
    grassmannian = 0
    neither_witnesses: list[tuple[int, ...]] = []
    violations: list[tuple[int, ...]] = []
    for coeffs in projective_points(field, space.linear_dim):
        coords = [field.zero()] * ambient
        for c, column in zip(coeffs, basis_columns):
            if field.is_zero(c):
                continue
            for r in range(ambient):
                coords[r] = field.add(coords[r], field.mul(c, column[r]))
        line = ctx.tensor_from_coords(2, "vector", coords)
        if not reduced_square(line).is_zero():
            continue
        grassmannian += 1
        in_full = contract(omega_p, line).is_zero()
        in_split = (
            covector_contract(x_p, line).is_zero()
            and contract(split_form, line).is_zero()
        )
        if in_full and in_split:
            counts["overlap"] += 1
            if not field.is_zero(pair(beta, line)):
                if len(violations) < _WITNESS_CAP:
                    violations.append(tuple(int(v) for v in coords))
        elif in_full:
            counts["only_full"] += 1
        elif in_split:
            counts["only_split"] += 1
        else:
            counts["neither"] += 1
            if len(neither_witnesses) < _WITNESS_CAP:
                neither_witnesses.append(tuple(int(v) for v in coords))
    return SectionPartition(
        n=ctx.n,
        p=p,
        space_linear_dim=space.linear_dim,
        total_points=total,
        grassmannian_points=grassmannian,
        only_full=counts["only_full"],
        only_split=counts["only_split"],
        overlap=counts["overlap"],
        neither=counts["neither"],
        neither_witnesses=tuple(neither_witnesses),
        overlap_off_hyperplane=tuple(violations),
        exhaustive=counts["neither"] == 0,
        overlap_on_hyperplane=not violations,
    )
