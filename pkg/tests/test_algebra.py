import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shoda import (
    AlgebraSpec,
    Element,
    conjugate_projections,
    frobenius,
    left_ideal_isomorphism,
    minimal_ideal_index,
    multiply,
    projection_path,
    rank,
    rank_preserving_path,
    riesz_projection,
    separating_element,
    spectrum,
    trace,
)
from shoda.algebra import allclose, largest_singular_value
from shoda.errors import (
    DependentInputs,
    DifferentMinimalIdeal,
    NoSuchSpectralValue,
    NotRankOne,
    NotShodaComplete,
    RankMismatch,
    ShapeMismatch,
    ZeroElement,
)
from shoda.sampling import random_element, random_rank_one_projection

SMALL_SPECS = [(2, 3), (1, 1), (3,), (2, 2, 2), (1, 2)]


def _random(spec, seed):
    return random_element(AlgebraSpec(spec), np.random.default_rng(seed))


# ---------------------------------------------------------------------------
# multiplication


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from(SMALL_SPECS))
def test_identity_is_neutral(seed, dims):
    spec = AlgebraSpec(dims)
    a = _random(dims, seed)
    assert allclose(multiply(spec.identity(), a), a)
    assert allclose(multiply(a, spec.identity()), a)


def test_canonical_projections_multiply_to_zero(spec23):
    p1, p2 = spec23.canonical_projections()
    assert frobenius(multiply(p1, p2)) == 0.0
    assert frobenius(multiply(p2, p1)) == 0.0


def test_matrix_unit_multiplication_table(spec23):
    # E_{kl} E_{k'l'} = delta(l, k') E_{kl'}, within one block
    e12 = spec23.matrix_unit(0, 0, 1)
    e21 = spec23.matrix_unit(0, 1, 0)
    assert allclose(multiply(e12, e21), spec23.matrix_unit(0, 0, 0))
    assert allclose(multiply(e21, e12), spec23.matrix_unit(0, 1, 1))
    assert frobenius(multiply(e12, e12)) == 0.0


def test_multiply_rejects_foreign_elements(spec23):
    other = AlgebraSpec((5,))
    with pytest.raises(ShapeMismatch):
        multiply(spec23.identity(), other.identity())


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from(SMALL_SPECS))
def test_multiply_associative_and_bilinear(seed, dims):
    rng = np.random.default_rng(seed)
    spec = AlgebraSpec(dims)
    a, b, c = (random_element(spec, rng) for _ in range(3))
    lhs = multiply(multiply(a, b), c)
    rhs = multiply(a, multiply(b, c))
    assert allclose(lhs, rhs, tol=1e-10 * (1 + frobenius(lhs)))
    lin = multiply(a + 2.0 * b, c)
    assert allclose(lin, multiply(a, c) + 2.0 * multiply(b, c), tol=1e-10 * (1 + frobenius(lin)))


# ---------------------------------------------------------------------------
# spectrum


def test_spectrum_of_identity(spec23):
    report = spectrum(spec23.identity())
    assert report.eigenvalues == ((1 + 0j, 5),)
    assert report.total_multiplicity == 5


def test_spectrum_of_partial_diagonal(spec23):
    a = 2.0 * spec23.matrix_unit(0, 0, 0)
    report = spectrum(a)
    as_dict = {v: m for v, m in report.eigenvalues}
    assert as_dict == {2 + 0j: 1, 0j: 4}
    assert report.nonzero == ((2 + 0j, 1),)


def test_spectrum_of_nilpotent_block_has_empty_nonzero_part(spec23, rng):
    blocks = [np.triu(rng.normal(size=(n, n)), k=1).astype(complex) for n in spec23.block_dims]
    a = Element(spec23, tuple(blocks))
    # independent check that the element is genuinely nilpotent
    power = a
    for _ in range(max(spec23.block_dims) - 1):
        power = multiply(power, a)
    assert frobenius(power) < 1e-12
    assert spectrum(a).nonzero == ()


def test_spectrum_zero_detects_singular_blocks(spec23, rng):
    a = random_element(spec23, rng)  # generically invertible in every block
    values = [v for v, _ in spectrum(a).eigenvalues]
    assert all(abs(v) > 1e-9 for v in values)


def test_nonzero_spectrum_invariant_under_swap(spec23):
    # sigma'(xy) = sigma'(yx) as multisets
    rng = np.random.default_rng(99)
    for _ in range(100):
        x, y = random_element(spec23, rng), random_element(spec23, rng)
        left = sorted(
            (v for v, m in spectrum(multiply(x, y)).nonzero for _ in range(m)),
            key=lambda z: (z.real, z.imag),
        )
        right = sorted(
            (v for v, m in spectrum(multiply(y, x)).nonzero for _ in range(m)),
            key=lambda z: (z.real, z.imag),
        )
        assert len(left) == len(right)
        scale = largest_singular_value(multiply(x, y))
        assert all(abs(l - r) < 1e-7 * (1 + scale) for l, r in zip(left, right))


# ---------------------------------------------------------------------------
# trace


def test_trace_of_canonical_projection(spec23):
    p1 = spec23.canonical_projections()[0]
    assert trace(p1) == 1.0


def test_trace_of_per_block_scalars(spec23):
    # block traces 3*2 and (-2)*3 cancel
    a = Element(spec23, (3.0 * np.eye(2), -2.0 * np.eye(3)))
    assert trace(a) == 0.0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31))
def test_trace_is_linear(seed):
    spec = AlgebraSpec((2, 3))
    rng = np.random.default_rng(seed)
    a, b = random_element(spec, rng), random_element(spec, rng)
    assert abs(trace(a + b) - trace(a) - trace(b)) < 1e-12 * (1 + abs(trace(a)))


def test_trace_agrees_with_eigenvalue_sum(spec23):
    rng = np.random.default_rng(7)
    for _ in range(100):
        a = random_element(spec23, rng)
        by_eigs = sum(v * m for v, m in spectrum(a).eigenvalues)
        assert abs(trace(a) - by_eigs) < 1e-9 * (1.0 + frobenius(a))


# ---------------------------------------------------------------------------
# rank


def test_rank_examples(spec23):
    assert rank(spec23.zero()) == 0
    assert rank(spec23.identity()) == 2 + 3  # block rank sum
    assert rank(spec23.matrix_unit(0, 0, 0)) == 1


def test_rank_is_subadditive(spec23, rng):
    for _ in range(25):
        a, b = random_element(spec23, rng), random_element(spec23, rng)
        assert rank(a + b) <= rank(a) + rank(b)


# ---------------------------------------------------------------------------
# Riesz projections


def test_riesz_projection_of_isolated_value(spec23):
    a = 2.0 * spec23.matrix_unit(0, 0, 0)
    p = riesz_projection(a, 2.0)
    assert allclose(p, spec23.matrix_unit(0, 0, 0), tol=1e-12)
    assert rank(p) == 1


def test_riesz_projection_of_identity(spec23):
    p = riesz_projection(spec23.identity(), 1.0)
    assert allclose(p, spec23.identity(), tol=1e-12)


def test_riesz_rejects_absent_value(spec23):
    nilpotent = spec23.matrix_unit(0, 0, 1)
    with pytest.raises(NoSuchSpectralValue):
        riesz_projection(nilpotent, 1.0)


def test_riesz_rejects_too_tight_contour():
    from shoda.errors import ContourTooTight

    # gap wide enough to keep two spectral values apart, narrower than the
    # four-tolerance guard band for the contour radius
    m3 = AlgebraSpec((3,))
    a = m3.from_blocks([np.diag([2.0, 2.0 + 1.2e-8, 5.0])])
    with pytest.raises(ContourTooTight):
        riesz_projection(a, 2.0)


def test_riesz_family_properties(spec23):
    from shoda.sampling import random_diagonalizable

    rng = np.random.default_rng(11)
    for _ in range(10):
        a = random_diagonalizable(spec23, rng, min_gap=0.1)
        report = spectrum(a)
        projections = [(riesz_projection(a, v), m) for v, m in report.nonzero]
        total = 0
        for p, m in projections:
            assert frobenius(multiply(p, p) - p) < 1e-9
            assert frobenius(multiply(p, a) - multiply(a, p)) < 1e-9
            assert rank(p) == m
            total += m
        for i, (p, _) in enumerate(projections):
            for q, _ in projections[i + 1 :]:
                assert frobenius(multiply(p, q)) < 1e-9
        assert total == sum(m for _, m in report.nonzero)


# ---------------------------------------------------------------------------
# separating elements


def test_separating_element_linear_solve():
    m2 = AlgebraSpec((2,))
    b = m2.matrix_unit(0, 0, 0)
    a1 = m2.matrix_unit(0, 0, 1)
    y = separating_element(b, [a1])
    assert allclose(y, m2.matrix_unit(0, 0, 0), tol=1e-12)
    assert abs(trace(multiply(b, y)) - 1.0) < 1e-12
    assert abs(trace(multiply(a1, y))) < 1e-12
    # rank-one c: sigma(c y) = {0} exactly when Tr(c y) = 0
    assert spectrum(multiply(a1, y)).nonzero == ()
    assert spectrum(multiply(b, y)).nonzero != ()


def test_separating_element_without_constraints(spec23):
    p1 = spec23.canonical_projections()[0]
    y = separating_element(p1, [])
    assert allclose(y, p1, tol=1e-12)


def test_separating_element_rejects_dependent_inputs(spec23):
    p1 = spec23.canonical_projections()[0]
    with pytest.raises(DependentInputs):
        separating_element(p1, [p1])


def test_separating_element_rejects_higher_rank(spec23):
    with pytest.raises(NotRankOne):
        separating_element(spec23.identity(), [])


# ---------------------------------------------------------------------------
# minimal ideal index


def test_minimal_ideal_index_of_unit(spec23):
    assert minimal_ideal_index(spec23.matrix_unit(1, 0, 0)) == 1


def test_minimal_ideal_index_by_construction(spec23, rng):
    p1 = spec23.canonical_projections()[0]
    for _ in range(10):
        x, y = random_element(spec23, rng), random_element(spec23, rng)
        q = multiply(multiply(x, p1), y)
        assert frobenius(q) > 0
        assert minimal_ideal_index(q) == 0


def test_minimal_ideal_index_rejections(spec23):
    two_blocks = spec23.matrix_unit(0, 0, 0) + spec23.matrix_unit(1, 0, 0)
    with pytest.raises(NotRankOne):
        minimal_ideal_index(two_blocks)
    with pytest.raises(ZeroElement):
        minimal_ideal_index(spec23.zero())


# ---------------------------------------------------------------------------
# similarity orbits of projections


def test_conjugate_projection_to_itself(spec23):
    p = spec23.canonical_projections()[0]
    u = conjugate_projections(p, p)
    assert allclose(u, spec23.identity(), tol=0.0)
    u_inv = Element(spec23, tuple(np.linalg.inv(m) for m in u.blocks))
    assert frobenius(p - multiply(multiply(u, p), u_inv)) < 1e-12


def test_conjugate_diagonal_units_in_one_block():
    m2 = AlgebraSpec((2,))
    p, q = m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 1, 1)
    u = conjugate_projections(p, q)
    u_inv = Element(m2, (np.linalg.inv(u.blocks[0]),))
    assert frobenius(q - multiply(multiply(u, p), u_inv)) < 1e-12
    assert np.linalg.cond(u.blocks[0]) < 1e6


def test_conjugate_random_projections_same_block(spec23, rng):
    for _ in range(10):
        p = random_rank_one_projection(spec23, 1, rng)
        q = random_rank_one_projection(spec23, 1, rng)
        u = conjugate_projections(p, q)
        u_inv = Element(spec23, tuple(np.linalg.inv(m) for m in u.blocks))
        moved = multiply(multiply(u, p), u_inv)
        assert frobenius(q - moved) < 1e-9 * (1 + frobenius(q))
        assert frobenius(multiply(moved, moved) - moved) < 1e-9
        assert rank(moved) == 1


def test_conjugate_projections_across_blocks_fails(spec23):
    p1, p2 = spec23.canonical_projections()
    with pytest.raises(DifferentMinimalIdeal):
        conjugate_projections(p1, p2)


# ---------------------------------------------------------------------------
# projection paths


def test_projection_path_constant_for_equal_endpoints(spec23):
    p = spec23.canonical_projections()[0]
    arc = projection_path(p, p, 17)
    assert all(allclose(e, p, tol=1e-12) for e in arc)


def test_projection_path_samples_are_rank_one_idempotents():
    m2 = AlgebraSpec((2,))
    p, q = m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 1, 1)
    arc = projection_path(p, q, 101)
    for e in arc:
        assert frobenius(multiply(e, e) - e) < 1e-9
        assert rank(e) == 1


def test_projection_path_endpoints_exact():
    m2 = AlgebraSpec((2,))
    p, q = m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 1, 1)
    arc = projection_path(p, q, 1000)
    assert all((x == y).all() for x, y in zip(arc[0].blocks, p.blocks))
    assert all((x == y).all() for x, y in zip(arc[-1].blocks, q.blocks))


def test_projection_path_rejects_cross_block(spec23):
    p1, p2 = spec23.canonical_projections()
    with pytest.raises(DifferentMinimalIdeal):
        projection_path(p1, p2, 10)


def test_projection_path_dodges_exceptional_set():
    # endpoints whose pencil trace vanishes at the midpoint: the sample at
    # one half must be pushed off the real axis and stay a rank-one idempotent
    m2 = AlgebraSpec((2,))
    p = m2.matrix_unit(0, 0, 0)
    q = Element(m2, (np.array([[1.0, 0.0], [-1.0, 0.0]], dtype=complex),))
    assert frobenius(multiply(q, q) - q) == 0.0
    arc = projection_path(p, q, 3)
    middle = arc[1]
    assert frobenius(multiply(middle, middle) - middle) < 1e-9
    assert rank(middle) == 1


# ---------------------------------------------------------------------------
# minimal left ideal isomorphisms


def test_left_ideal_isomorphism_identity(spec23):
    p = spec23.canonical_projections()[0]
    iso = left_ideal_isomorphism(p, p)
    xp = multiply(spec23.matrix_unit(0, 1, 0), p)
    assert allclose(iso(xp), xp, tol=1e-12)


def test_left_ideal_isomorphism_is_multiplicative(spec23, rng):
    p = spec23.canonical_projections()[1]
    q = random_rank_one_projection(spec23, 1, rng)
    iso = left_ideal_isomorphism(p, q)
    for _ in range(20):
        xp = multiply(random_element(spec23, rng), p)
        yp = multiply(random_element(spec23, rng), p)
        lhs = iso(multiply(xp, yp))
        rhs = multiply(iso(xp), iso(yp))
        assert frobenius(lhs - rhs) < 1e-10 * (1 + frobenius(lhs))


def test_left_ideal_isomorphism_preserves_dimension(spec23, rng):
    p = spec23.canonical_projections()[1]
    q = random_rank_one_projection(spec23, 1, rng)
    iso = left_ideal_isomorphism(p, q)
    n = spec23.block_dims[1]
    images = []
    for k in range(n):
        xp = multiply(spec23.matrix_unit(1, k, 0), p)
        images.append(np.concatenate([m.ravel() for m in iso(xp).blocks]))
    s = np.linalg.svd(np.stack(images), compute_uv=False)
    assert int(np.sum(s > 1e-9 * s[0])) == n


# ---------------------------------------------------------------------------
# rank preserving paths


def test_rank_path_constant_for_equal_endpoints():
    m3 = AlgebraSpec((3,))
    a = m3.from_blocks([np.diag([1.0, 2.0, 0.0])])
    arc = rank_preserving_path(a, a, 2, 9)
    assert all(allclose(e, a, tol=1e-12) for e in arc)


def test_rank_path_keeps_rank_two():
    m3 = AlgebraSpec((3,))
    a = m3.from_blocks([np.diag([1.0, 2.0, 0.0])])
    b = m3.from_blocks([np.diag([0.0, 3.0, 4.0])])
    arc = rank_preserving_path(a, b, 2, 101)
    for e in arc:
        svals = np.linalg.svd(e.blocks[0], compute_uv=False)
        assert int(np.sum(svals > 1e-9 * svals[0])) == 2
    assert all((x == y).all() for x, y in zip(arc[0].blocks, a.blocks))
    assert all((x == y).all() for x, y in zip(arc[-1].blocks, b.blocks))


def test_rank_path_rejects_cross_block_endpoints():
    spec = AlgebraSpec((2, 2))
    a = spec.matrix_unit(0, 0, 0)
    b = spec.matrix_unit(1, 0, 0)
    with pytest.raises(NotShodaComplete):
        rank_preserving_path(a, b, 1, 10)


def test_rank_path_rejects_rank_mismatch():
    m3 = AlgebraSpec((3,))
    a = m3.from_blocks([np.diag([1.0, 2.0, 0.0])])
    b = m3.identity()
    with pytest.raises(RankMismatch):
        rank_preserving_path(a, b, 2, 10)


# ---------------------------------------------------------------------------
# exact orthogonality of the minimal ideals


@pytest.mark.parametrize("dims", [(1, 1), (2, 3), (2, 2, 2)])
def test_minimal_ideals_are_orthogonal_exactly(dims):
    spec = AlgebraSpec(dims)
    units = list(spec.basis())
    blocks_of = [minimal_ideal_index(u) for u in units]
    for x, bx in zip(units, blocks_of):
        for y, by in zip(units, blocks_of):
            if bx != by:
                assert frobenius(multiply(x, y)) == 0.0
                assert frobenius(multiply(y, x)) == 0.0
