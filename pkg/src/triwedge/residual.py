"""The residual line family of a 3-form along a pencil of hyperplanes.

Fix a 3-form ``omega`` and two independent covectors ``x, y``.  The
hyperplanes ``{a*x + b*y = 0}`` form a pencil whose base locus is the
codimension-two subspace ``Pi = {x = y = 0}``; restricting ``omega`` to a
pencil member yields a smaller line family, and the residual family ``Y`` is
the union of those restricted families over the whole pencil.  A nonzero
decomposable bivector ``L`` belongs to ``Y`` exactly when ``(x^y)(L) = 0``
and ``contract(omega, L) ^ x ^ y = 0``, i.e. when the contraction lands in
the plane of covectors spanned by ``x`` and ``y``.

Everything is exact linear algebra plus seeded sampling over prime fields:

* ``ResidualHandle`` — the form, the two directions, the linear span of the
  family (the pencil kernel of the span lattice) and the base locus ``Pi``;
* ``line_system`` — the matrix of ``f -> (omega(P^f) mod <x,y>, (x^y)(P^f))``
  whose kernel beyond ``P`` consists of the family directions through ``P``;
* ``member_Y`` / ``pencil_parameter`` — membership and the pencil member a
  family line lives on;
* ``sample_line_on_Y`` — restrict to a random pencil member, sample a line of
  the restricted family there, and lift it back;
* ``sing_Y_dimension`` — the singular locus (lines inside ``Pi`` killed by
  the full form), certified at a sampled point of its exact linear span;
* ``G_membership`` / ``G_degree_odd`` — the locus of points lying on
  infinitely many family lines, detected by the kernel dimension of the line
  system and measured, for odd ``n``, by the gcd of its maximal minors along
  restricted lines;
* ``Y_secancy_even`` — for even ``n``, the rank-drop count along a sampled
  family line inside its pencil member.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .congruence import (
    _even_line_attempt,
    _odd_line_attempt,
    member_X,
    sample_line_on_X,
    tangent_intersection_dim,
)
from .degeneracy import (
    NonGenericFormError,
    _kernel_complement_direction,
    _point_coords,
    _poly_roots_prime,
    _random_coords,
    _require_three_form,
    _split_decomposable,
    build_M,
    secant_pencil,
)
from .exact_scalar import (
    ConventionError,
    Matrix,
    Scalar,
    _rref,
    interpolate,
    poly_gcd,
    rank_kernel,
)
from .exterior_core import (
    AlternatingTensor,
    SpaceContext,
    contract,
    covector_contract,
    derive_seed,
    pair,
    projective_points,
    pullback,
    random_tensor,
    reduced_square,
    wedge,
)
from .form_analysis import LinearSubspace, contraction_matrix, span_lattice

__all__ = [
    "LineSystem",
    "ResidualHandle",
    "G_degree_odd",
    "G_membership",
    "Y_secancy_even",
    "general_directions",
    "line_system",
    "member_Y",
    "pencil_parameter",
    "sample_line_on_Y",
    "sing_Y_dimension",
]

_DIRECTION_BUDGET = 64
_SAMPLE_BUDGET = 64
_INNER_LINE_BUDGET = 16
_LINE_SEARCH_ROUNDS = 12
_PLANE_SCAN_ROUNDS = 8
_AGREEING_LINES = 3
_DEGREE_LINE_BUDGET = 24


def _require_covector(ctx: SpaceContext, direction: AlternatingTensor) -> None:
    if direction.ctx != ctx:
        raise ConventionError("direction lives on a different space")
    if direction.variance != "form" or direction.degree != 1:
        raise ConventionError("directions must be 1-forms")


def _directions_in_image(
    omega: AlternatingTensor, x: AlternatingTensor, y: AlternatingTensor
) -> bool:
    """Whether <x, y> lies in the image of the bivector contraction of omega."""
    cm = contraction_matrix(omega, 2)
    base_rank = rank_kernel(cm)[0]
    flat: list[Scalar] = []
    xc, yc = x.coords(), y.coords()
    for r in range(cm.rows):
        flat.extend(cm.row(r))
        flat.append(xc[r])
        flat.append(yc[r])
    augmented = Matrix(omega.ctx.field, cm.rows, cm.cols + 2, tuple(flat))
    return rank_kernel(augmented)[0] == base_rank


def general_directions(
    omega: AlternatingTensor, seed: int = 0
) -> tuple[AlternatingTensor, AlternatingTensor]:
    """Seeded random independent covectors inside the contraction image.

    The image condition is what makes the pencil kernel of the span lattice
    have codimension exactly ``n``; it holds automatically when the
    contraction map of the form has full rank.
    """
    _require_three_form(omega)
    ctx = omega.ctx
    for attempt in range(_DIRECTION_BUDGET):
        x = random_tensor(
            ctx, 1, "form", derive_seed("residual-x", ctx.n, ctx.field, seed, attempt)
        )
        y = random_tensor(
            ctx, 1, "form", derive_seed("residual-y", ctx.n, ctx.field, seed, attempt)
        )
        if wedge(x, y).is_zero():
            continue
        if not _directions_in_image(omega, x, y):
            continue
        return x, y
    raise NonGenericFormError(
        "no independent covector pair found inside the contraction image"
    )


@dataclass(frozen=True)
class ResidualHandle:
    """A 3-form with a pencil of hyperplane directions and the family data.

    ``span`` is the exact kernel of ``L -> ((x^y)(L), contract(omega, L)^x^y)``
    — the linear span of the residual family — and ``pi`` is the base locus
    ``{x = y = 0}`` of the pencil, as a subspace of the vector space.
    """

    omega: AlternatingTensor
    x: AlternatingTensor
    y: AlternatingTensor
    span: LinearSubspace
    pi: LinearSubspace
    ctx: SpaceContext

    def __post_init__(self) -> None:
        _require_three_form(self.omega)
        if self.ctx != self.omega.ctx:
            raise ConventionError("handle context does not match the form")
        _require_covector(self.ctx, self.x)
        _require_covector(self.ctx, self.y)
        xy = wedge(self.x, self.y)
        if xy.is_zero():
            raise ConventionError("pencil directions are dependent (x^y = 0)")
        if self.span.ambient != "bivectors" or self.span.ctx != self.ctx:
            raise ConventionError("span must be a bivector subspace on the same space")
        field = self.ctx.field
        for b in self.span.basis_tensors():
            if not field.is_zero(pair(xy, b)):
                raise ConventionError("span is not the exact pencil kernel")
            if not wedge(contract(self.omega, b), xy).is_zero():
                raise ConventionError("span is not the exact pencil kernel")
        if _directions_in_image(self.omega, self.x, self.y):
            if self.span.codim != self.ctx.n:
                raise ConventionError(
                    "pencil kernel codimension must equal n for directions "
                    "inside the contraction image"
                )
        if self.pi.ambient != "vectors" or self.pi.ctx != self.ctx:
            raise ConventionError("base locus must be a vector subspace")
        if self.pi.codim != 2:
            raise ConventionError("base locus of an honest pencil has codimension 2")
        for b in self.pi.basis_tensors():
            if not field.is_zero(pair(self.x, b)) or not field.is_zero(
                pair(self.y, b)
            ):
                raise ConventionError("base locus must be cut out by both directions")

    @staticmethod
    def build(
        omega: AlternatingTensor, x: AlternatingTensor, y: AlternatingTensor
    ) -> "ResidualHandle":
        ctx = omega.ctx
        _require_three_form(omega)
        _require_covector(ctx, x)
        _require_covector(ctx, y)
        if wedge(x, y).is_zero():
            raise ConventionError("pencil directions are dependent (x^y = 0)")
        span = span_lattice(omega, x, y).pencil_at_xy
        rows = tuple(x.coords()) + tuple(y.coords())
        pi = LinearSubspace.from_kernel(
            Matrix(ctx.field, 2, ctx.dim, rows), "vectors", ctx
        )
        return ResidualHandle(omega=omega, x=x, y=y, span=span, pi=pi, ctx=ctx)

    @staticmethod
    def general(omega: AlternatingTensor, seed: int = 0) -> "ResidualHandle":
        x, y = general_directions(omega, seed)
        return ResidualHandle.build(omega, x, y)


def member_Y(handle: ResidualHandle, line: AlternatingTensor) -> bool:
    """True iff the nonzero bivector is decomposable, kills x^y, and its
    contraction lies in the covector plane spanned by x and y."""
    ctx = handle.ctx
    if line.ctx != ctx or line.variance != "vector" or line.degree != 2:
        raise ConventionError("expected a bivector on the handle's space")
    if line.is_zero():
        raise ConventionError("membership of the zero bivector is undefined")
    xy = wedge(handle.x, handle.y)
    return (
        reduced_square(line).is_zero()
        and ctx.field.is_zero(pair(xy, line))
        and wedge(contract(handle.omega, line), xy).is_zero()
    )


@dataclass(frozen=True)
class LineSystem:
    """Evaluated matrix of ``f -> (omega(P^f) mod <x,y>, (x^y)(P^f))``.

    Columns are indexed by the ambient basis directions; the two coordinates
    pinned by the pivots of ``x`` and ``y`` are eliminated from the covector
    part, leaving ``dim - 1`` rows.  The kernel always contains the point
    itself; each further kernel dimension is a pencil-worth of family lines
    through the point.
    """

    point: AlternatingTensor
    matrix: Matrix

    def __post_init__(self) -> None:
        ctx = self.point.ctx
        if self.point.variance != "vector" or self.point.degree != 1:
            raise ConventionError("line system is anchored at a vector point")
        if self.matrix.rows != ctx.dim - 1 or self.matrix.cols != ctx.dim:
            raise ConventionError("line system must have shape (dim-1) x dim")
        field = ctx.field
        if any(
            not field.is_zero(v) for v in self.matrix.matvec(self.point.coords())
        ):
            raise ConventionError("line system must annihilate its own point")

    def kernel_dim(self) -> int:
        return self.matrix.cols - rank_kernel(self.matrix)[0]


def line_system(handle: ResidualHandle, point) -> LineSystem:
    """Build the line system of the family at a nonzero point."""
    ctx = handle.ctx
    field = ctx.field
    coords = _point_coords(ctx, point)
    if all(field.is_zero(c) for c in coords):
        raise ConventionError("the line system at the zero point is undefined")
    quotient = [list(handle.x.coords()), list(handle.y.coords())]
    pivots = _rref(field, quotient, ctx.dim)
    keep = [i for i in range(ctx.dim) if i not in pivots]
    xy = wedge(handle.x, handle.y)
    anchor = ctx.vector_from_coords(coords)
    columns: list[list[Scalar]] = []
    for j in range(ctx.dim):
        blade = wedge(anchor, ctx.basis_vector(j))
        g = list(contract(handle.omega, blade).coords())
        for piv, row in zip(pivots, quotient):
            factor = g[piv]
            if not field.is_zero(factor):
                g = [field.sub(a, field.mul(factor, b)) for a, b in zip(g, row)]
        column = [g[i] for i in keep]
        column.append(pair(xy, blade))
        columns.append(column)
    nrows = ctx.dim - 1
    matrix = Matrix(
        field,
        nrows,
        ctx.dim,
        tuple(columns[c][r] for r in range(nrows) for c in range(ctx.dim)),
    )
    return LineSystem(point=anchor, matrix=matrix)


def G_membership(handle: ResidualHandle, point) -> tuple[bool, int]:
    """Whether infinitely many family lines pass through the point.

    Returns ``(on_G, line_star_dim)`` where ``line_star_dim`` is the linear
    dimension of the space of family directions through the point (the kernel
    of the line system minus the point itself).  A general point sees no line
    for odd ``n`` and exactly one line for even ``n``, so membership starts
    at kernel dimension two (odd) respectively three (even).
    """
    kernel_dim = line_system(handle, point).kernel_dim()
    threshold = 2 if handle.ctx.n % 2 else 3
    return kernel_dim >= threshold, kernel_dim - 1


def pencil_parameter(
    handle: ResidualHandle, line: AlternatingTensor
) -> tuple[Scalar, Scalar]:
    """The pencil member ``{a*x + b*y = 0}`` containing the line.

    Solves ``a * iota_x(L) + b * iota_y(L) = 0``; a unique projective
    solution is returned as ``(a, b)``.  Lines inside the base locus lie on
    every member and are rejected, as are bivectors on no member at all.
    """
    ctx = handle.ctx
    if line.ctx != ctx or line.variance != "vector" or line.degree != 2:
        raise ConventionError("expected a bivector on the handle's space")
    if line.is_zero():
        raise ConventionError("the zero bivector lies on no pencil member")
    cx = covector_contract(handle.x, line).coords()
    cy = covector_contract(handle.y, line).coords()
    system = Matrix(
        ctx.field,
        ctx.dim,
        2,
        tuple(v for row in zip(cx, cy) for v in row),
    )
    _, kernel = rank_kernel(system)
    if kernel.cols == 0:
        raise ConventionError("the line lies on no pencil member")
    if kernel.cols > 1:
        raise ConventionError(
            "every pencil member contains the line (it lies in the base locus)"
        )
    a, b = kernel.column(0)
    return a, b


def _pencil_member_data(
    handle: ResidualHandle, a: Scalar, b: Scalar
) -> tuple[list[AlternatingTensor], AlternatingTensor]:
    """Basis of the hyperplane {a*x + b*y = 0} and the restricted form on it."""
    ctx = handle.ctx
    z = handle.x.scale(a).add(handle.y.scale(b))
    conditions = Matrix(ctx.field, 1, ctx.dim, tuple(z.coords()))
    basis = LinearSubspace.from_kernel(conditions, "vectors", ctx).basis_tensors()
    return basis, pullback(handle.omega, basis)


def _lift_bivector(
    ctx: SpaceContext,
    basis: list[AlternatingTensor],
    line: AlternatingTensor,
) -> AlternatingTensor:
    """Push a bivector of the sub-context through the basis into the ambient."""
    acc = ctx.zero_tensor(2, "vector")
    for (i, j), c in line.terms:
        acc = acc.add(wedge(basis[i], basis[j]).scale(c))
    return acc


def _restricted_line(
    omega_sub: AlternatingTensor, rng: random.Random
) -> AlternatingTensor | None:
    """A line of the restricted family, without the full-rank gate.

    Hyperplane restrictions can have structurally non-maximal contraction
    rank (a 3-form on a 4-dimensional space never reaches it), so the
    attempts are run directly and failures are left to the caller's retry
    over other pencil members.
    """
    matrix = build_M(omega_sub)
    attempt = _odd_line_attempt if omega_sub.ctx.n % 2 else _even_line_attempt
    for _ in range(_INNER_LINE_BUDGET):
        line = attempt(omega_sub, matrix, rng)
        if line is not None and member_X(omega_sub, line):
            return line
    return None


def _sample_on_member(
    handle: ResidualHandle, rng: random.Random
) -> tuple[AlternatingTensor, AlternatingTensor, AlternatingTensor] | None:
    """One sampling attempt: (lifted line, line downstairs, restricted form)."""
    field = handle.ctx.field
    a = field.coerce(rng.randrange(field.p))  # type: ignore[arg-type]
    b = field.coerce(rng.randrange(field.p))  # type: ignore[arg-type]
    if field.is_zero(a) and field.is_zero(b):
        return None
    basis, omega_sub = _pencil_member_data(handle, a, b)
    line_sub = _restricted_line(omega_sub, rng)
    if line_sub is None:
        return None
    lifted = _lift_bivector(handle.ctx, basis, line_sub)
    if not member_Y(handle, lifted):
        return None
    return lifted, line_sub, omega_sub


def sample_line_on_Y(handle: ResidualHandle, seed: int = 0) -> AlternatingTensor:
    """A seed-deterministic line of the residual family.

    Draws a random pencil member, samples a line of the restricted family
    inside it (kernel directions for odd sub-dimension, rank-drop roots for
    even), and lifts the result back to the ambient space.
    """
    ctx = handle.ctx
    if ctx.field.kind != "prime":
        raise ConventionError("residual line sampling needs a prime field")
    rng = random.Random(
        derive_seed("residual-sample-line", ctx.n, ctx.field.p, seed)
    )
    for _ in range(_SAMPLE_BUDGET):
        found = _sample_on_member(handle, rng)
        if found is not None:
            return found[0]
    raise NonGenericFormError(
        "residual line sampling budget exhausted (non-generic form or small field)"
    )


def Y_secancy_even(handle: ResidualHandle, seed: int = 0) -> tuple[int, bool]:
    """Rank-drop count along a sampled family line, inside its pencil member.

    For even ``n`` the restricted family downstairs has odd projective
    dimension, so the quotient Pfaffian pencil applies; the returned count is
    its total degree ``(n-2)/2``.  The second component reports whether the
    lifted line meets the base locus — inside a common hyperplane of
    dimension ``n`` that intersection is forced to be nonempty.
    """
    ctx = handle.ctx
    if ctx.n % 2:
        raise ConventionError("the secancy count along the pencil needs even n")
    if ctx.field.kind != "prime":
        raise ConventionError("residual line sampling needs a prime field")
    rng = random.Random(
        derive_seed("residual-secancy", ctx.n, ctx.field.p, seed)
    )
    for _ in range(_SAMPLE_BUDGET):
        found = _sample_on_member(handle, rng)
        if found is None:
            continue
        lifted, line_sub, omega_sub = found
        pencil = secant_pencil(omega_sub, line_sub)
        first, second = _split_decomposable(lifted)
        columns = [first.coords(), second.coords()] + [
            t.coords() for t in handle.pi.basis_tensors()
        ]
        joined = Matrix(
            ctx.field,
            ctx.dim,
            len(columns),
            tuple(columns[c][r] for r in range(ctx.dim) for c in range(len(columns))),
        )
        meets_pi = 2 + handle.pi.linear_dim - rank_kernel(joined)[0] >= 1
        return pencil.total_degree, meets_pi
    raise NonGenericFormError(
        "residual line sampling budget exhausted (non-generic form or small field)"
    )


# -- the singular locus: lines inside the base locus killed by the full form ------


def _base_locus_context(
    handle: ResidualHandle,
) -> tuple[SpaceContext, list[AlternatingTensor], dict]:
    basis = handle.pi.basis_tensors()
    ctx_pi = SpaceContext(len(basis) - 1, handle.ctx.field)
    lifted = {
        key: wedge(basis[key[0]], basis[key[1]]) for key in ctx_pi.index_sets(2)
    }
    return ctx_pi, basis, lifted


def _singular_span(
    handle: ResidualHandle, ctx_pi: SpaceContext, lifted: dict
) -> LinearSubspace:
    """Bivectors of the base locus whose lift the full form kills (exact)."""
    columns = [
        contract(handle.omega, lifted[key]).coords()
        for key in ctx_pi.index_sets(2)
    ]
    nrows = len(columns[0])
    conditions = Matrix(
        handle.ctx.field,
        nrows,
        len(columns),
        tuple(columns[c][r] for r in range(nrows) for c in range(len(columns))),
    )
    return LinearSubspace.from_kernel(conditions, "bivectors", ctx_pi)


def _decomposable_in_basis(
    span: LinearSubspace, rng: random.Random | None
) -> AlternatingTensor | None:
    """Direct hits: basis vectors and a few random small combinations."""
    basis = span.basis_tensors()
    for b in basis:
        if not b.is_zero() and reduced_square(b).is_zero():
            return b
    if rng is None or len(basis) < 2:
        return None
    field = span.ctx.field
    for _ in range(8):
        acc = span.ctx.zero_tensor(2, "vector")
        for b in basis:
            if field.kind == "prime":
                c = field.coerce(rng.randrange(field.p))  # type: ignore[arg-type]
            else:
                c = field.coerce(rng.randint(-5, 5))
            acc = acc.add(b.scale(c))
        if not acc.is_zero() and reduced_square(acc).is_zero():
            return acc
    return None


def _decomposable_by_line_search(
    span: LinearSubspace, rng: random.Random
) -> AlternatingTensor | None:
    """Roots of the decomposability quadrics along random lines of the span."""
    ctx = span.ctx
    field = ctx.field
    basis = span.basis_tensors()
    keys = list(ctx.index_sets(4))
    nodes = [field.coerce(v) for v in range(3)]
    for _ in range(_LINE_SEARCH_ROUNDS):
        combos = []
        for _ in range(2):
            acc = ctx.zero_tensor(2, "vector")
            for b in basis:
                acc = acc.add(b.scale(field.coerce(rng.randrange(field.p))))  # type: ignore[arg-type]
            combos.append(acc)
        base, direction = combos
        if base.is_zero() or direction.is_zero():
            continue
        samples: dict[tuple, list] = {key: [] for key in keys}
        for t in nodes:
            values = reduced_square(base.add(direction.scale(t))).coeff_map()
            for key in keys:
                samples[key].append((t, values.get(key, field.zero())))
        polys = [interpolate(field, pts) for pts in samples.values()]
        polys = [q for q in polys if not q.is_zero()]
        if not polys:
            continue
        gcd = polys[0]
        for q in polys[1:]:
            gcd = poly_gcd(gcd, q)
        candidates = [
            base.add(direction.scale(field.coerce(root)))
            for root in _poly_roots_prime(gcd.monic(), field.p)  # type: ignore[arg-type]
        ]
        candidates.append(direction)
        for candidate in candidates:
            if not candidate.is_zero() and reduced_square(candidate).is_zero():
                return candidate
    return None


def _decomposable_by_plane_scan(
    handle: ResidualHandle,
    ctx_pi: SpaceContext,
    basis: list[AlternatingTensor],
    lifted: dict,
    rng: random.Random,
) -> AlternatingTensor | None:
    """Odd ``n``: scan a plane of base-locus points for the one restricted
    line through each, keeping a line whose lift the full form kills.

    The restriction to the base locus has odd projective dimension, so a
    general point carries exactly one line of the restricted family; the
    locus of points whose line survives the two extra conditions has
    codimension two, so a random plane meets it in finitely many points and
    the scan visits them all.
    """
    field = ctx_pi.field
    matrix = build_M(pullback(handle.omega, basis))
    generic_rank = ctx_pi.n - 1
    dim = ctx_pi.dim
    for _ in range(_PLANE_SCAN_ROUNDS):
        anchors = [_random_coords(field, dim, rng) for _ in range(3)]
        flat = tuple(v for q in anchors for v in q)
        if rank_kernel(Matrix(field, 3, dim, flat))[0] != 3:
            continue
        slices = [matrix.evaluate(q) for q in anchors]
        rows = [[m.row(r) for r in range(dim)] for m in slices]
        for s, t, u in projective_points(field, 3):
            flat2: list[Scalar] = []
            for r in range(dim):
                ra, rb, rc = rows[0][r], rows[1][r], rows[2][r]
                for c in range(dim):
                    flat2.append(
                        field.add(
                            field.add(field.mul(s, ra[c]), field.mul(t, rb[c])),
                            field.mul(u, rc[c]),
                        )
                    )
            evaluated = Matrix(field, dim, dim, tuple(flat2))
            if rank_kernel(evaluated)[0] != generic_rank:
                continue
            point = [
                field.add(
                    field.add(field.mul(s, qa), field.mul(t, qb)), field.mul(u, qc)
                )
                for qa, qb, qc in zip(*anchors)
            ]
            direction = _kernel_complement_direction(matrix, point)
            if direction is None:
                continue
            line_sub = wedge(
                ctx_pi.vector_from_coords(point),
                ctx_pi.vector_from_coords(direction),
            )
            candidate = handle.ctx.zero_tensor(2, "vector")
            for key, c in line_sub.terms:
                candidate = candidate.add(lifted[key].scale(c))
            if contract(handle.omega, candidate).is_zero():
                return line_sub
    return None


def sing_Y_dimension(handle: ResidualHandle, seed: int = 0) -> int:
    """Certified dimension of the singular locus of the residual family.

    The singular locus consists of the lines inside the base locus that the
    full form kills.  Its linear span is computed exactly; a decomposable
    point of that span is then sampled (direct basis hits, root search along
    random lines of the span, or — for odd ``n`` — a plane scan through the
    one-line-per-point structure of the base-locus restriction), and the
    tangent dimension there is certified to equal the expected ``n - 5``.
    A sampling field with no reachable point is reported as an error rather
    than asserted around.
    """
    ctx = handle.ctx
    if ctx.n < 5:
        raise ConventionError("the singular locus needs n >= 5")
    ctx_pi, basis, lifted = _base_locus_context(handle)
    span = _singular_span(handle, ctx_pi, lifted)
    if span.linear_dim == 0:
        raise NonGenericFormError(
            "the singular locus has an empty linear span over this field"
        )
    rng = random.Random(derive_seed("residual-singular", ctx.n, ctx.field, seed))
    point = _decomposable_in_basis(span, rng if ctx.field.kind == "prime" else None)
    if point is None and ctx.field.kind == "prime":
        point = _decomposable_by_line_search(span, rng)
        if point is None and ctx.n % 2:
            point = _decomposable_by_plane_scan(handle, ctx_pi, basis, lifted, rng)
    if point is None:
        raise NonGenericFormError(
            "no singular point found over the sampling field"
        )
    tangent = tangent_intersection_dim(span, point)
    if tangent != ctx.n - 5:
        raise NonGenericFormError(
            f"singular point certifies tangent dimension {tangent}, "
            f"expected {ctx.n - 5}"
        )
    return tangent


# -- degree of the infinitely-many-lines locus, odd n ------------------------------


def _degree_containment_checks(handle: ResidualHandle, rng: random.Random) -> None:
    """The base locus, and sampled degeneracy points of lines of the ambient
    congruence, must lie on the locus whose degree was just measured."""
    ctx = handle.ctx
    field = ctx.field
    pi_point = ctx.zero_tensor(1, "vector")
    while pi_point.is_zero():
        for b in handle.pi.basis_tensors():
            pi_point = pi_point.add(b.scale(field.coerce(rng.randrange(field.p))))  # type: ignore[arg-type]
    if not G_membership(handle, pi_point)[0]:
        raise NonGenericFormError("a base-locus point fell off the measured locus")
    for attempt in range(6):
        try:
            line = sample_line_on_X(handle.omega, seed=attempt)
            pencil = secant_pencil(handle.omega, line)
        except (ConventionError, NonGenericFormError):
            continue
        roots = _poly_roots_prime(pencil.poly.monic(), field.p)  # type: ignore[arg-type]
        if not roots:
            continue
        for root in roots[:2]:
            point = pencil.point_at(field.coerce(root))
            if not G_membership(handle, point)[0]:
                raise NonGenericFormError(
                    "a degeneracy point of a congruence line fell off the "
                    "measured locus"
                )
        return


def G_degree_odd(handle: ResidualHandle, seed: int = 0) -> int:
    """Degree of the locus of points on infinitely many family lines, odd n.

    Restricts the line system to random lines of points; each maximal minor
    interpolates to a polynomial of degree at most ``n``, and their gcd cuts
    the locus with multiplicity two (the kernel jumps by two there, so every
    maximal minor vanishes doubly).  Clean restrictions therefore show an
    even gcd degree; the halved value must agree across three lines.  The
    result is spot-checked for containment: a random base-locus point, and
    the rank-drop points of a sampled congruence line when the field shows
    some, must test as members.
    """
    ctx = handle.ctx
    field = ctx.field
    if ctx.n % 2 == 0:
        raise ConventionError("the minor-gcd degree applies to odd n")
    if field.kind != "prime":
        raise ConventionError("degree sampling needs a prime field")
    if field.p <= ctx.n:  # type: ignore[operator]
        raise ConventionError("field too small for the interpolation nodes")
    rng = random.Random(derive_seed("residual-degree", ctx.n, field.p, seed))
    nodes = [field.coerce(v) for v in range(ctx.n + 1)]
    agreed: list[int] = []
    for _ in range(_DEGREE_LINE_BUDGET):
        if len(agreed) >= _AGREEING_LINES:
            break
        base = _random_coords(field, ctx.dim, rng)
        direction = _random_coords(field, ctx.dim, rng)
        flat = tuple(base) + tuple(direction)
        if rank_kernel(Matrix(field, 2, ctx.dim, flat))[0] != 2:
            continue
        samples: dict[int, list] = {j: [] for j in range(ctx.dim)}
        for t in nodes:
            coords = [
                field.add(a, field.mul(t, b)) for a, b in zip(base, direction)
            ]
            matrix = line_system(handle, coords).matrix
            row_idx = list(range(matrix.rows))
            for j in range(ctx.dim):
                keep = [c for c in range(ctx.dim) if c != j]
                samples[j].append((t, matrix.submatrix(row_idx, keep).det()))
        polys = [interpolate(field, pts) for pts in samples.values()]
        polys = [q for q in polys if not q.is_zero()]
        if not polys:
            continue
        gcd = polys[0]
        for q in polys[1:]:
            gcd = poly_gcd(gcd, q)
        if gcd.degree % 2:
            continue
        agreed.append(gcd.degree)
    if len(agreed) < _AGREEING_LINES or len(set(agreed)) != 1:
        raise NonGenericFormError(
            f"restricted line degrees disagree or ran out: {agreed}"
        )
    _degree_containment_checks(handle, rng)
    return agreed[0] // 2
