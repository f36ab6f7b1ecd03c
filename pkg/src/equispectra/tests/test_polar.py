"""
Tests for the polar representation tools in :mod:`equispectra.polar`.
"""

from itertools import permutations, product

import numpy as np
from pytest import mark, raises
from scipy.stats import ortho_group
from sympy.polys.domains import QQ

from equispectra import polar
from equispectra.errors import BudgetError, NotSymmetricError
from equispectra.pencil import AffinePencil, det_poly
from equispectra.polar import (
    PolarFamily, SectionPoint, chevalley_lift, hopf_counterexample,
    hull_membership, kostant_check, majorization_check,
    moment_polytope_membership, orbitope_membership, project_to_section,
    real_zero_check, reduce_linear_problem, reduction_equivalence_check,
    section_embedding, solve_orbit_polytope_lp, weyl_orbit
)
from equispectra.polyring import (
    evaluate_exact, parse_polynomial, polynomial_ring
)


def random_symmetric(n, rng):
    a = rng.standard_normal((n, n))
    return a + a.T


def random_skew(n, rng):
    a = rng.standard_normal((n, n))
    return a - a.T


def test_family():
    sym = PolarFamily('sym', 3)
    assert (sym.section_dim, sym.original_dim) == (3, 6)
    assert PolarFamily('SKEW', 5) == PolarFamily('skew', 5)
    with raises(ValueError):
        PolarFamily('herm', 3)
    with raises(ValueError):
        PolarFamily('sym', 1)


@mark.parametrize('kind, n, dims', [
    ('sym', 3, (6, 3)), ('skew', 4, (6, 2)), ('skew', 5, (10, 2)),
])
def test_reduction_dimensions(kind, n, dims, rng):
    """
    The section is much smaller than the representation space.
    """
    F = PolarFamily(kind, n)
    v = random_symmetric(n, rng) if kind == 'sym' else random_skew(n, rng)
    problem = reduce_linear_problem(F, v)
    assert (problem.original_dim, problem.reduced_dim) == dims
    assert len(problem.objective) == dims[1]


@mark.parametrize('n', [2, 3, 5])
def test_project_sym(n, rng):
    """
    Eigenvalues come out sorted and the conjugation reconstructs `A`.
    """
    F = PolarFamily('sym', n)
    a = random_symmetric(n, rng)
    result = project_to_section(F, a)
    s = result.section_point.array
    g = result.group_element
    assert (np.diff(s) <= 0).all()
    assert np.allclose(g @ section_embedding(F, s) @ g.T, a)
    assert np.allclose(g @ g.T, np.eye(n))


@mark.parametrize('n', [2, 4, 5, 6])
def test_project_skew(n, rng):
    """
    Schur blocks are oriented and sorted, and the conjugation
    reconstructs `A`.
    """
    F = PolarFamily('skew', n)
    a = random_skew(n, rng)
    result = project_to_section(F, a)
    s = result.section_point.array
    g = result.group_element
    assert len(s) == n // 2
    assert (s >= 0).all()
    assert (np.diff(s) <= 0).all()
    assert np.allclose(g @ section_embedding(F, s) @ g.T, a)


def test_project_errors():
    with raises(NotSymmetricError):
        project_to_section(PolarFamily('sym', 2), [[1, 2], [0, 1]])
    with raises(NotSymmetricError):
        project_to_section(PolarFamily('skew', 2), [[0, 1], [1, 0]])
    with raises(ValueError):
        project_to_section(PolarFamily('sym', 3), np.eye(2))


def test_weyl_orbit():
    """
    Permutations for ``sym``, signed permutations for ``skew``.
    """
    sym = PolarFamily('sym', 3)
    assert len(weyl_orbit(sym, (1, 2, 3))) == 6
    orbit = weyl_orbit(sym, SectionPoint((1, 1, 2)))
    assert [p.coords for p in orbit] == [(2, 1, 1), (1, 2, 1), (1, 1, 2)]
    skew = PolarFamily('skew', 4)
    assert len(weyl_orbit(skew, (1, 2))) == 8
    assert len(weyl_orbit(skew, (1, 0))) == 4
    with raises(BudgetError):
        weyl_orbit(PolarFamily('sym', 9), range(9))


def test_majorization():
    assert majorization_check((2, 2, 2), (3, 2, 1))
    assert majorization_check((1, 3, 2), (3, 2, 1))
    assert not majorization_check((4, 1, 1), (3, 2, 1))
    assert not majorization_check((1, 1, 1), (3, 2, 1))
    with raises(ValueError):
        majorization_check((1, 2), (1, 2, 3))


def test_orbitope(rng):
    """
    Schur-Horn: membership is majorization of the spectra.
    """
    F = PolarFamily('sym', 3)
    g = ortho_group.rvs(3, random_state=rng)
    x = np.diag([3.0, 2.0, 1.0])
    assert orbitope_membership(F, 2 * np.eye(3), g @ x @ g.T)
    assert not orbitope_membership(F, x, 2 * np.eye(3))
    with raises(ValueError):
        orbitope_membership(PolarFamily('skew', 3), x, x)


def test_hull():
    square = [[0, 0], [1, 0], [0, 1], [1, 1]]
    inside, residual, weights = hull_membership(square, (0.5, 0.5))
    assert inside
    assert np.isclose(residual, 0.0, atol=1e-9)
    assert np.isclose(weights.sum(), 1.0)
    assert np.allclose(weights @ np.array(square), [0.5, 0.5])
    inside, residual, _ = hull_membership(square, (2, 0))
    assert not inside
    assert np.isclose(residual, 1.0)
    with raises(ValueError):
        hull_membership(square, (1, 2, 3))


def test_moment_polytope():
    skew = PolarFamily('skew', 4)
    assert moment_polytope_membership(skew, (0, 0), (2, 1))
    assert moment_polytope_membership(skew, (1, -1), (2, 1))
    assert not moment_polytope_membership(skew, (2, 2), (2, 1))
    sym = PolarFamily('sym', 3)
    assert moment_polytope_membership(sym, (2, 2, 2), (1, 2, 3))


@mark.parametrize('c, lam', [
    ((3, -1, 2), (5, 0, -2)),
    ((0, 4, 4), (1, -7, 3)),
    ((-2, 1, 5, 3), (2, 2, -1, 0)),
])
def test_orbit_lp_sym(c, lam):
    """
    The rearrangement solution matches brute force over permutations.
    """
    F = PolarFamily('sym', len(c))
    value, argmax = solve_orbit_polytope_lp(F, c, lam)
    best = max(sum(a * b for a, b in zip(c, p)) for p in permutations(lam))
    assert value == best
    assert sum(a * b for a, b in zip(c, argmax)) == best
    assert sorted(argmax) == sorted(lam)


@mark.parametrize('c, lam', [
    ((-3, 1), (2, -5)),
    ((1, 0), (0, 4)),
    ((2, -2, 1), (3, 1, -4)),
])
def test_orbit_lp_skew(c, lam):
    """
    The signed rearrangement matches brute force over the hyperoctahedral
    group.
    """
    F = PolarFamily('skew', 2 * len(c))
    value, _ = solve_orbit_polytope_lp(F, c, lam)
    best = max(sum(a * e * b for a, e, b in zip(c, signs, p))
               for p in permutations(lam)
               for signs in product((1, -1), repeat=len(c)))
    assert value == best


def test_reduction_equivalence(rng, seed):
    F = PolarFamily('sym', 3)
    v = random_symmetric(3, rng)
    ok, report = reduction_equivalence_check(F, v, (2.0, 0.5, -1.0),
                                             trials=500, seed=seed)
    assert ok
    assert report['sampled'] <= report['reduced'] + 1e-6
    assert np.isclose(report['aligned'], report['reduced'])
    ok, _ = reduction_equivalence_check(F, v, (1.0, 0.0, 0.0), trials=0)
    assert ok


def test_kostant(seed):
    ok, report = kostant_check(PolarFamily('sym', 3), trials=10,
                               conjugates=20, seed=seed)
    assert ok
    assert report['agree'] == 10
    with raises(ValueError):
        kostant_check(PolarFamily('skew', 4))


def test_chevalley_e2(rng):
    """
    :math:`e_2` lifts to :math:`(T_1^2 - T_2) / 2`.
    """
    ring = polynomial_ring(('x1', 'x2', 'x3'))
    e2 = parse_polynomial('x1*x2 + x1*x3 + x2*x3', ring)
    lift = chevalley_lift(e2)
    T = polynomial_ring(('T1', 'T2', 'T3'))
    assert lift.poly == parse_polynomial('1/2*T1^2 - 1/2*T2', T)
    assert lift.evaluate_exact([[1, 0, 0], [0, 2, 0], [0, 0, 3]]) == 11
    g = ortho_group.rvs(3, random_state=rng)
    assert np.isclose(lift(g @ np.diag([1.0, 2.0, 3.0]) @ g.T), 11.0)


def test_chevalley_determinant():
    """
    The product of two variables lifts to the determinant.
    """
    ring = polynomial_ring(('x1', 'x2'))
    lift = chevalley_lift(parse_polynomial('x1*x2', ring))
    det = lift.to_matrix_polynomial()
    expected = parse_polynomial('a1_1*a2_2 - a1_2^2', det.ring)
    assert det == expected
    with raises(ValueError):
        chevalley_lift(parse_polynomial('x1 + 2*x2', ring))


def test_chevalley_power_sums():
    ring = polynomial_ring(('x1', 'x2'))
    lift = chevalley_lift(parse_polynomial('x1^3 + x2^3 + 4', ring))
    T = polynomial_ring(('T1', 'T2'))
    assert lift.poly == parse_polynomial('-1/2*T1^3 + 3/2*T1*T2 + 4', T)
    assert lift.evaluate_exact([[1, 0], [0, 2]]) == 13
    assert lift.evaluate_exact([[0, 1], [1, 0]]) == 4


def test_real_zero():
    """
    Determinants are real-zero at interior points; ``1 + x1^2`` is not.
    """
    ring = polynomial_ring(('a1_1', 'a1_2', 'a2_2'))
    det = parse_polynomial('a1_1*a2_2 - a1_2^2', ring)
    ok, witness = real_zero_check(det, (1, 0, 1), directions=50)
    assert ok
    assert witness is None
    ring = polynomial_ring(('x1', 'x2'))
    ok, witness = real_zero_check(parse_polynomial('1 + x1^2', ring))
    assert not ok
    assert witness == {'direction': [1, 0]}
    with raises(ValueError):
        real_zero_check(parse_polynomial('x1', ring))


def test_hopf():
    """
    A subspace meeting every orbit need not be a section.
    """
    report = hopf_counterexample()
    assert report['passed']
    assert report['in_projection']
    assert not report['in_slice']
    assert report['distance_squared'] == '1'


@mark.parametrize('n', [2, 3, 4, 5])
def test_kostant_suite(n, full, seed):
    """
    Orbitope membership agrees with the hull of sampled conjugates, both
    inside and outside the orbitope.
    """
    trials, conjugates = (25, 5000) if full else (2, 50)
    ok, report = kostant_check(PolarFamily('sym', n), trials=trials,
                               conjugates=conjugates, seed=seed)
    assert ok, report['witness']


def test_kostant_detects_wrong_membership(monkeypatch):
    """
    A membership test that accepts everything fails the outside points.
    """
    monkeypatch.setattr(polar, 'orbitope_membership', lambda *a, **k: True)
    ok, report = kostant_check(PolarFamily('sym', 3), trials=5,
                               conjugates=20)
    assert not ok
    assert report['agree'] == 0
    assert report['witness']['point'] == 'outer'
    assert not report['witness']['hull']


def test_reduction_equivalence_suite(full, rng):
    for _ in range(50 if full else 5):
        n = int(rng.integers(2, 6))
        v = rng.integers(-5, 6, size=(n, n))
        lam = rng.integers(-5, 6, size=n).astype(float)
        ok, report = reduction_equivalence_check(
            PolarFamily('sym', n), v + v.T, lam, trials=200,
            seed=int(rng.integers(1 << 16)))
        assert ok, report


def test_project_random(full, rng):
    """
    Reconstruction and orthogonality of the conjugating element for
    random matrices of both families.
    """
    for _ in range(500 if full else 50):
        n = int(rng.integers(2, 9))
        kind = ('sym', 'skew')[int(rng.integers(2))]
        F = PolarFamily(kind, n)
        a = random_symmetric(n, rng) if kind == 'sym' else random_skew(n, rng)
        result = project_to_section(F, a)
        g = result.group_element
        emb = section_embedding(F, result.section_point)
        scale = max(1.0, np.linalg.norm(a))
        assert np.linalg.norm(g @ emb @ g.T - a) < 1e-8 * scale
        assert np.allclose(g.T @ g, np.eye(n), rtol=0, atol=1e-10)


def test_orbit_lp_random(rng):
    """
    Rearrangement matches brute force exactly on random integer data.
    """
    for _ in range(100):
        n = int(rng.integers(2, 7))
        c = [int(a) for a in rng.integers(-9, 10, size=n)]
        lam = [int(a) for a in rng.integers(-9, 10, size=n)]
        value, _ = solve_orbit_polytope_lp(PolarFamily('sym', n), c, lam)
        assert value == max(sum(a * b for a, b in zip(c, p))
                            for p in permutations(lam))
        k = n // 2
        value, _ = solve_orbit_polytope_lp(PolarFamily('skew', 2 * k),
                                           c[:k], lam[:k])
        assert value == max(sum(a * e * b for a, e, b in zip(c, signs, p))
                            for p in permutations(lam[:k])
                            for signs in product((1, -1), repeat=k))


def test_real_zero_determinants(full, rng):
    """
    Determinants of random based pencils are real-zero at the origin.
    """
    for _ in range(200 if full else 20):
        d, n = int(rng.integers(2, 5)), int(rng.integers(1, 4))
        matrices = [np.eye(d, dtype=int).tolist()]
        for _ in range(n):
            a = rng.integers(-3, 4, size=(d, d))
            matrices.append((a + a.T).tolist())
        ok, witness = real_zero_check(det_poly(AffinePencil(matrices)),
                                      directions=100)
        assert ok, witness


def test_real_zero_lift():
    """
    The lift of a symmetric real-zero polynomial in three variables is
    real-zero on the symmetric 3x3 matrices.
    """
    ring = polynomial_ring(('x1', 'x2', 'x3'))
    p = parse_polynomial('(1 + x1)*(1 + x2)*(1 + x3)', ring)
    lifted = chevalley_lift(p).to_matrix_polynomial()
    assert lifted.ring.ngens == 6
    ok, witness = real_zero_check(lifted, directions=100)
    assert ok, witness


def test_chevalley_restriction(rng):
    """
    The lift restricted to diagonal matrices is the polynomial itself,
    exactly at rational points.
    """
    ring = polynomial_ring(('x1', 'x2', 'x3'))
    p = parse_polynomial('x1^3 + x2^3 + x3^3 - 2*x1*x2 - 2*x1*x3 - 2*x2*x3'
                         ' + 5*x1*x2*x3 + 1', ring)
    lift = chevalley_lift(p)
    for _ in range(100):
        point = [QQ(int(a), int(b)) for a, b in
                 zip(rng.integers(-9, 10, size=3), rng.integers(1, 7, size=3))]
        A = [[point[i] if i == j else 0 for j in range(3)] for i in range(3)]
        assert lift.evaluate_exact(A) == evaluate_exact(p, point)
