"""
Tests for the group coordinate rings in :mod:`equispectra.groupring`.
"""

import numpy as np
from pytest import fixture, raises
from sympy.polys.domains import QQ

from equispectra.errors import GroupError
from equispectra.groupring import (
    GroupSpec, action_at, copy_ring, finite_group, haar_integrate,
    inverse_substitute, is_zero, left_translate, normal_form,
    o2_quartic_moments, orbit_center, sample_elements, so2_rotation,
    su2_hermitian, trivial_group
)
from equispectra.polyring import polynomial_ring
from equispectra.util import to_float


@fixture(scope='module')
def so2():
    return so2_rotation()


@fixture(scope='module')
def su2():
    return su2_hermitian()


def test_haar_circle(so2):
    """
    Wallis moments of the circle.
    """
    c, s = so2.ring.gens
    assert haar_integrate(so2, c**4) == QQ(3, 8)
    assert haar_integrate(so2, c**2 * s**2) == QQ(1, 8)
    assert haar_integrate(so2, c**3 * s) == 0
    assert haar_integrate(so2, so2.ring.one) == 1


def test_haar_sphere(su2):
    """
    Moments of the uniform measure on the three-sphere.
    """
    x, y, s, t = su2.ring.gens
    assert haar_integrate(su2, x**4) == QQ(1, 8)
    assert haar_integrate(su2, x**2) == QQ(1, 4)
    assert haar_integrate(su2, x**2 * y**2) == QQ(1, 24)
    assert haar_integrate(su2, x * y) == 0


def test_haar_o2():
    """
    The reflection coset cancels odd powers of `e`.
    """
    G = o2_quartic_moments()
    c, s, e = G.ring.gens
    assert haar_integrate(G, e * c**2) == 0
    assert haar_integrate(G, e**2 * c**2) == QQ(1, 2)


def test_haar_coefficients(so2):
    """
    Integration with extra variables is coefficient-wise.
    """
    ring = copy_ring(so2, '', extra=('x1',))
    c, s, x1 = ring.gens
    target = polynomial_ring('x1')
    value = haar_integrate(so2, x1 * c**2 + x1**2 * s + 3, ring=target)
    assert value == target.gens[0] / 2 + 3


def test_normal_form(so2, su2):
    c, s = so2.ring.gens
    assert normal_form(so2, s**2) == 1 - c**2
    assert normal_form(so2, s**3 * c) == s * c - s * c**3
    x, y, s, t = su2.ring.gens
    assert normal_form(su2, t**2 + x**2) == 1 - y**2 - s**2
    assert is_zero(su2, x**2 + y**2 + s**2 + t**2 - 1)
    with raises(GroupError):
        normal_form(so2, su2.ring.gens[0])


def test_inverse(so2, su2):
    """
    Inversion negates the imaginary parts and is an involution.
    """
    c, s = so2.ring.gens
    assert inverse_substitute(so2, s) == -s
    assert inverse_substitute(so2, c * s) == -c * s
    x, y, s, t = su2.ring.gens
    p = x * y + s * t
    assert inverse_substitute(su2, inverse_substitute(su2, p)) == p


def test_left_translate(so2):
    """
    :math:`c(g^{-1} h) = c_g c_h + s_g s_h`.
    """
    ring = copy_ring(so2, '_g', '_h')
    c_g, s_g, c_h, s_h = ring.gens
    c = so2.ring.gens[0]
    assert left_translate(so2, c) == c_g * c_h + s_g * s_h


def test_samples_on_group(so2, su2, rng):
    """
    Sampled elements satisfy the relations exactly, identity first.
    """
    elements = sample_elements(so2, 6, rng)
    assert elements[0] == (1, 0)
    for c, s in elements:
        assert c * c + s * s == 1
    for x, y, s, t in sample_elements(su2, 6, rng):
        assert x * x + y * y + s * s + t * t == 1
    signs = [g[2] for g in sample_elements(o2_quartic_moments(), 4, rng)]
    assert signs == [1, -1, 1, -1]


def test_action_preserves_norm(su2, rng):
    """
    Conjugation keeps the Frobenius norm, which weights the off-diagonal
    coordinates twice.
    """
    w = [1, 2, 1, 2]
    for g in sample_elements(su2, 4, rng):
        a = action_at(su2, g)
        for i in range(4):
            for j in range(4):
                dot = sum((a[k][i] * w[k] * a[k][j] for k in range(4)),
                          QQ.zero)
                assert dot == (w[i] if i == j else 0)


def test_orbit_center(so2, su2):
    """
    Rotations average to the origin; conjugation averages to the trace.
    """
    assert orbit_center(so2, (1, 2)) == [0, 0]
    assert orbit_center(su2, (1, 0, 0, 0)) == [QQ(1, 2), 0, QQ(1, 2), 0]
    with raises(ValueError):
        orbit_center(so2, (1, 2, 3))


def test_finite():
    """
    Finite groups average over their elements.
    """
    G = finite_group([[[1, 0], [0, 1]], [[-1, 0], [0, -1]]])
    assert G.order == 2
    g11 = G.ring.gens[0]
    assert haar_integrate(G, g11) == 0
    assert haar_integrate(G, g11**2) == 1
    assert is_zero(G, g11**2 - 1)
    assert orbit_center(G, (3, 4)) == [0, 0]
    assert trivial_group(3).order == 1


def test_invalid_groups():
    """
    Bad actions and element sets are rejected.
    """
    with raises(GroupError):
        GroupSpec('SO2', 2, [['c', 's'], ['s', 'c']])
    with raises(GroupError):
        GroupSpec('SO3', 3, [['1']])
    with raises(GroupError):
        finite_group([[[1, 0], [0, 1]], [[0, -1], [1, 0]]])
    with raises(GroupError):
        finite_group([[[1, 0], [0, 2]]])


def test_haar_quadrature(so2, full, rng):
    """
    Exact integrals of random trigonometric polynomials agree with
    equispaced quadrature, which is exact below its number of nodes.
    """
    theta = 2 * np.pi * np.arange(32) / 32
    cos, sin = np.cos(theta), np.sin(theta)
    c, s = so2.ring.gens
    for _ in range(100 if full else 10):
        e = so2.ring.zero
        numeric = np.zeros_like(theta)
        for a, b in rng.integers(0, 4, size=(4, 2)):
            k = int(rng.integers(-5, 6))
            e += k * c**int(a) * s**int(b)
            numeric += k * cos**a * sin**b
        assert np.isclose(to_float(haar_integrate(so2, e)), numeric.mean())


def test_haar_quadrature_sphere(su2, full, rng):
    """
    Exact integrals over the three-sphere agree with a product rule in
    Hopf coordinates: equispaced on both circles, Gauss-Legendre in
    ``u = sin^2``, under which the uniform measure is a product.
    """
    theta = 2 * np.pi * np.arange(16) / 16
    nodes, weights = np.polynomial.legendre.leggauss(8)
    u, a, b = np.meshgrid((nodes + 1) / 2, theta, theta, indexing='ij')
    w = np.broadcast_to(weights[:, None, None] / 2, u.shape) / theta.size**2
    coords = [np.sqrt(1 - u) * np.cos(a), np.sqrt(1 - u) * np.sin(a),
              np.sqrt(u) * np.cos(b), np.sqrt(u) * np.sin(b)]
    gens = su2.ring.gens
    for _ in range(50 if full else 10):
        e = su2.ring.zero
        numeric = np.zeros_like(u)
        for _ in range(4):
            exps = rng.multinomial(int(rng.integers(0, 7)), [0.25] * 4)
            k = int(rng.integers(-5, 6))
            term, values = su2.ring.one, np.ones_like(u)
            for g, x, p in zip(gens, coords, exps):
                term *= g**int(p)
                values = values * x**p
            e += k * term
            numeric += k * values
        assert np.isclose(to_float(haar_integrate(su2, e)),
                          (w * numeric).sum(), rtol=1e-8, atol=1e-8)
