"""Tests for the skew linear matrix and its rank stratification."""

from __future__ import annotations

import random

import pytest

from triwedge import catalog
from triwedge.degeneracy import (
    NonGenericFormError,
    SkewLinearMatrix,
    StratumReport,
    build_M,
    exhaustive_strata,
    hypersurface_degree,
    rank_at,
    secant_pencil,
    stratify,
)
from triwedge.exact_scalar import ConventionError, FieldSpec, Matrix, rank_kernel
from triwedge.exterior_core import (
    AlternatingTensor,
    SpaceContext,
    contract,
    random_tensor,
    wedge,
)
from triwedge.form_analysis import j_rank, point_contraction_rank

Q = FieldSpec.rationals()
F101 = FieldSpec.prime(101)
F1009 = FieldSpec.prime(1009)


def normalized(coords, field):
    for value in coords:
        if not field.is_zero(value):
            inv = field.inv(value)
            return tuple(field.mul(inv, v) for v in coords)
    raise AssertionError("zero vector")


def kernel_line(omega, M, coords):
    """The congruence line through a point whose matrix kernel is a plane."""
    field = omega.ctx.field
    _, kernel = rank_kernel(M.evaluate(coords))
    for column in range(kernel.cols):
        candidate = [kernel.entry(row, column) for row in range(kernel.rows)]
        stacked = Matrix(field, 2, len(coords), tuple(coords) + tuple(candidate))
        if rank_kernel(stacked)[0] == 2:
            point = omega.ctx.vector_from_coords(coords)
            return wedge(point, omega.ctx.vector_from_coords(candidate))
    raise AssertionError("kernel contains no direction besides the point")


# -- construction ------------------------------------------------------------------


def test_entries_match_the_full_contraction():
    for n in range(3, 8):
        for field in (Q, F101):
            ctx = SpaceContext(n=n, field=field)
            omega = random_tensor(ctx, 3, "form", seed=n)
            point = random_tensor(ctx, 1, "vector", seed=50 + n)
            evaluated = build_M(omega).evaluate(point)
            two_form = contract(omega, point)
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    assert evaluated.entry(i, j) == two_form.coefficient((i, j))


def test_matrix_annihilates_its_own_point():
    for n in range(3, 9):
        ctx = SpaceContext(n=n, field=F101)
        omega = random_tensor(ctx, 3, "form", seed=2 * n)
        M = build_M(omega)
        for seed in range(5):
            point = random_tensor(ctx, 1, "vector", seed=300 + seed)
            product = M.evaluate(point).matvec(point.coords())
            assert all(F101.is_zero(value) for value in product)


def test_entry_grid_is_skew_with_linear_entries():
    omega, _ = catalog.get("n5")
    M = build_M(omega)
    assert M.size == 6
    for i in range(6):
        assert M.entry_form(i, i).is_zero()
        for j in range(6):
            assert M.entry_form(i, j).degree == 1
            assert M.entry_form(i, j) == M.entry_form(j, i).neg()


def test_two_plane_form_has_a_single_block_at_the_first_plane_point():
    omega, _ = catalog.get("n5")
    M = build_M(omega)
    at_e0 = M.evaluate(omega.ctx.basis_vector(0))
    nonzero = {
        (i, j): at_e0.entry(i, j)
        for i in range(6)
        for j in range(6)
        if not Q.is_zero(at_e0.entry(i, j))
    }
    assert nonzero == {(1, 2): Q.one(), (2, 1): Q.neg(Q.one())}
    assert rank_at(M, omega.ctx.basis_vector(0)) == 2
    assert rank_at(M, [0, 0, 0, 1, 0, 0]) == 2
    assert rank_at(M, [1, 2, 3, 4, 5, 6]) == 4


def test_generic_rank_follows_the_parity_law():
    rng = random.Random(9)
    for name, expected in (("n6-g2", 6), ("n7-ozeki", 6), ("n7-djokovic", 6), ("n8-family", 8)):
        omega, entry = catalog.get(name, field=F101)
        M = build_M(omega)
        observed = 0
        for _ in range(8):
            coords = [rng.randrange(101) for _ in range(entry.n + 1)]
            if all(value == 0 for value in coords):
                continue
            observed = max(observed, rank_at(M, coords))
        assert observed == expected


def test_rank_at_rejects_the_zero_point():
    omega, _ = catalog.get("n5")
    M = build_M(omega)
    with pytest.raises(ConventionError):
        rank_at(M, [0, 0, 0, 0, 0, 0])


def test_build_requires_a_three_form():
    ctx = SpaceContext(n=5, field=Q)
    bivector = random_tensor(ctx, 2, "form", seed=1)
    with pytest.raises(ConventionError):
        build_M(bivector)


def test_skew_grid_validation_rejects_nonzero_diagonal():
    omega, _ = catalog.get("n4")
    M = build_M(omega)
    ctx = omega.ctx
    corrupted = list(list(row) for row in M.entries)
    corrupted[0][0] = ctx.basis_covector(0)
    with pytest.raises(ConventionError):
        SkewLinearMatrix(ctx=ctx, size=M.size, entries=tuple(tuple(r) for r in corrupted))


# -- even n: degree of the rank-drop hypersurface ----------------------------------


def test_drop_locus_degrees_for_the_even_catalog_forms():
    omega4, _ = catalog.get("n4")
    assert hypersurface_degree(omega4) == 1

    omega6, _ = catalog.get("n6-g2", field=F1009)
    assert hypersurface_degree(omega6) == 2

    omega8, _ = catalog.get("n8-family", field=F1009)
    assert hypersurface_degree(omega8) == 3


def test_drop_locus_degree_is_seed_stable():
    omega6, _ = catalog.get("n6-g2", field=F1009)
    assert hypersurface_degree(omega6, seed=0) == hypersurface_degree(omega6, seed=5)


def test_drop_locus_degree_rejects_odd_or_degenerate_input():
    omega5, _ = catalog.get("n5")
    with pytest.raises(ConventionError):
        hypersurface_degree(omega5)

    ctx = SpaceContext(n=4, field=Q)
    degenerate = AlternatingTensor.make(ctx, 3, "form", {(0, 1, 2): Q.one()})
    assert j_rank(degenerate, 1) < 5
    with pytest.raises(ConventionError):
        hypersurface_degree(degenerate)


# -- odd n: secant polynomial ------------------------------------------------------


def test_two_plane_line_meets_both_planes():
    omega, _ = catalog.get("n5")
    ctx = omega.ctx
    line = wedge(ctx.basis_vector(0), ctx.basis_vector(3))
    pencil = secant_pencil(omega, line)
    assert pencil.total_degree == 2
    assert pencil.poly.degree == 1
    assert pencil.infinity_multiplicity == 1

    root = next(
        t for t in range(3) if Q.is_zero(pencil.poly.eval(Q.coerce(t)))
    )
    finite_point = normalized(pencil.point_at(root).coords(), Q)
    infinite_point = normalized(pencil.point_at_infinity().coords(), Q)
    e0 = normalized(ctx.basis_vector(0).coords(), Q)
    e3 = normalized(ctx.basis_vector(3).coords(), Q)
    assert {finite_point, infinite_point} == {e0, e3}

    M = build_M(omega)
    assert rank_at(M, pencil.point_at(root)) == 2
    assert rank_at(M, pencil.point_at_infinity()) == 2


def test_sampled_congruence_lines_are_trisecant_for_n7():
    omega, _ = catalog.get("n7-ozeki", field=F1009)
    M = build_M(omega)
    rng = random.Random(17)
    checked = 0
    while checked < 4:
        coords = [rng.randrange(1009) for _ in range(8)]
        if all(value == 0 for value in coords) or rank_at(M, coords) != 6:
            continue
        line = kernel_line(omega, M, coords)
        pencil = secant_pencil(omega, line)
        assert pencil.total_degree == 3
        assert pencil.poly.degree + pencil.infinity_multiplicity == 3
        for t in range(1009):
            if F1009.is_zero(pencil.poly.eval(t)):
                assert rank_at(M, pencil.point_at(t)) == 4
        checked += 1


def test_sampled_pencils_are_quartic_for_n9():
    ctx = SpaceContext(n=9, field=F1009)
    omega = random_tensor(ctx, 3, "form", seed=12)
    assert j_rank(omega, 1) == 10
    M = build_M(omega)
    rng = random.Random(23)
    checked = 0
    while checked < 3:
        coords = [rng.randrange(1009) for _ in range(10)]
        if all(value == 0 for value in coords) or rank_at(M, coords) != 8:
            continue
        pencil = secant_pencil(omega, kernel_line(omega, M, coords))
        assert pencil.total_degree == 4
        assert pencil.poly.degree + pencil.infinity_multiplicity == 4
        checked += 1


def test_pencil_point_parameterization():
    omega, _ = catalog.get("n5")
    ctx = omega.ctx
    line = wedge(ctx.basis_vector(0), ctx.basis_vector(3))
    pencil = secant_pencil(omega, line)
    expected = pencil.base.add(pencil.direction.scale(Q.coerce(7)))
    assert pencil.point_at(7) == expected


def test_secant_pencil_rejects_bad_lines():
    omega, _ = catalog.get("n5")
    ctx = omega.ctx

    not_decomposable = wedge(ctx.basis_vector(0), ctx.basis_vector(1)).add(
        wedge(ctx.basis_vector(2), ctx.basis_vector(3))
    )
    with pytest.raises(ConventionError):
        secant_pencil(omega, not_decomposable)

    off_congruence = wedge(ctx.basis_vector(0), ctx.basis_vector(1))
    assert not contract(omega, off_congruence).is_zero()
    with pytest.raises(ConventionError):
        secant_pencil(omega, off_congruence)

    omega6, _ = catalog.get("n6-g2")
    ctx6 = omega6.ctx
    line6 = wedge(ctx6.basis_vector(1), ctx6.basis_vector(2))
    with pytest.raises(ConventionError):
        secant_pencil(omega6, line6)


# -- exhaustive stratification ------------------------------------------------------


def test_two_plane_form_drops_exactly_on_the_two_planes_mod_3():
    omega, _ = catalog.get("n5")
    strata = exhaustive_strata(omega, 3)
    assert dict(strata.counts) == {2: 26, 4: 338}
    assert strata.generic_rank == 4

    low = set(strata.stratum(2))
    assert len(low) == 26
    plane_a = {pt for pt in low if pt[0] == pt[1] == pt[2] == 0}
    plane_b = {pt for pt in low if pt[3] == pt[4] == pt[5] == 0}
    assert len(plane_a) == 13
    assert len(plane_b) == 13
    assert not plane_a & plane_b
    assert plane_a | plane_b == low


def test_hyperplane_form_drops_exactly_on_the_hyperplane_mod_3():
    omega, _ = catalog.get("n4")
    strata = exhaustive_strata(omega, 3)
    assert dict(strata.counts) == {2: 40, 4: 81}
    low = strata.stratum(2)
    assert len(low) == 40
    assert all(pt[0] == 0 for pt in low)


def test_decomposable_form_has_a_single_zero_point_mod_5():
    omega, _ = catalog.get("n3")
    strata = exhaustive_strata(omega, 5)
    assert dict(strata.counts) == {0: 1, 2: 155}
    assert strata.points[0] == ((1, 0, 0, 0),)


def test_exhaustive_budget_and_field_guards():
    ctx = SpaceContext(n=9, field=F101)
    omega = random_tensor(ctx, 3, "form", seed=1)
    with pytest.raises(ConventionError):
        exhaustive_strata(omega, 101)

    omega101, _ = catalog.get("n5", field=F101)
    with pytest.raises(ConventionError):
        exhaustive_strata(omega101, 3)


# -- sampled stratification ---------------------------------------------------------


def test_stratify_finds_the_single_drop_point_for_n3():
    omega, _ = catalog.get("n3", field=FieldSpec.prime(5))
    report = stratify(omega, samples=2000, seed=1)
    assert report.generic_rank == 2
    assert set(report.rank_histogram) <= {0, 2}
    assert report.strata_hits[0] == ((1, 0, 0, 0),)


def test_stratify_hits_the_quadric_for_n6():
    omega, _ = catalog.get("n6-g2", field=F101)
    report = stratify(omega, samples=3000, seed=2)
    assert report.generic_rank == 6
    assert set(report.rank_histogram) <= {4, 6}
    witnesses = report.strata_hits[4]
    assert witnesses
    for point in witnesses:
        assert point_contraction_rank(omega, list(point)) == 4


def test_stratify_finds_codimension_three_witnesses_for_n9():
    ctx = SpaceContext(n=9, field=F101)
    omega = random_tensor(ctx, 3, "form", seed=12)
    report = stratify(omega, samples=2000, seed=3)
    assert report.generic_rank == 8
    witnesses = report.strata_hits.get(6, ())
    assert witnesses
    for point in witnesses:
        assert point_contraction_rank(omega, list(point)) == 6


def test_stratify_is_deterministic_per_seed():
    omega, _ = catalog.get("n5", field=F101)
    first = stratify(omega, samples=500, seed=4)
    second = stratify(omega, samples=500, seed=4)
    assert dict(first.rank_histogram) == dict(second.rank_histogram)
    assert dict(first.strata_hits) == dict(second.strata_hits)


def test_stratify_requires_a_prime_field():
    omega, _ = catalog.get("n5")
    with pytest.raises(ConventionError):
        stratify(omega, samples=10, seed=0)


def test_report_validation_rejects_odd_ranks_and_bad_bounds():
    with pytest.raises(ConventionError):
        StratumReport(
            n=5, rank_histogram={3: 1}, generic_rank=3, strata_hits={}
        )
    with pytest.raises(ConventionError):
        StratumReport(
            n=5, rank_histogram={6: 1}, generic_rank=6, strata_hits={}
        )
