"""
Tests for the pencil operations in :mod:`equispectra.pencil`.
"""

from math import inf

import numpy as np
from pytest import fixture, raises
from sympy.polys.domains import QQ

from equispectra.catalog import disk_pencil, hermitian_pencil
from equispectra.errors import NotPSDError, NotSymmetricError
from equispectra.groupring import so2_rotation
from equispectra.pencil import (
    AffinePencil, BasedPencil, adjugate_polys, base_reduce,
    boundary_parameter, congruence, det_poly, evaluate, exact_psd,
    invariance_sample_check, psd_check, subspace_pencil, translate
)
from equispectra.sampling import sample_points


@fixture(scope='module')
def disk():
    return disk_pencil()


def test_construction(disk):
    """
    Matrices must be square and symmetric, names must match.
    """
    assert (disk.n, disk.d) == (2, 2)
    assert disk.is_based
    with raises(NotSymmetricError):
        AffinePencil([[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    with raises(ValueError):
        AffinePencil([[[1]]])
    with raises(ValueError):
        AffinePencil([[[1]], [[1]]], ('x', 'y'))


def test_matrix_polynomial(disk):
    """
    Round trip through polynomial entries.
    """
    entries = disk.matrix_polynomial()
    x1, x2 = disk.ring.gens
    assert entries == [[1 + x1, -x2], [-x2, 1 - x1]]
    assert AffinePencil.from_polynomials(entries) == disk
    with raises(ValueError):
        AffinePencil.from_polynomials([[x1 * x2]])


def test_exact_psd(disk):
    """
    A boundary point is PSD, an exterior point has a negative witness.
    """
    m = evaluate(disk, ['3/5', '4/5'])
    assert m == [[QQ(8, 5), QQ(-4, 5)], [QQ(-4, 5), QQ(2, 5)]]
    assert exact_psd(m) == (True, None)
    a = evaluate(disk, [1, 1])
    psd, w = exact_psd(a)
    assert not psd
    value = sum(w[i] * a[i][j] * w[j] for i in range(2) for j in range(2))
    assert value < 0
    assert exact_psd([[0, 0], [0, 0]]) == (True, None)
    assert not exact_psd([[0, 1], [1, 0]])[0]


def test_evaluate_float(disk):
    m = evaluate(disk, np.array([0.5, 0.0]))
    assert np.allclose(m, [[1.5, 0.0], [0.0, 0.5]])
    with raises(ValueError):
        evaluate(disk, [1])


def test_psd_check():
    """
    The tolerance is relative to the spectral radius.
    """
    assert psd_check(np.eye(3))
    assert psd_check([[1e6, 0], [0, -1e-4]], tol=1e-9)
    assert not psd_check([[1, 0], [0, -1e-4]], tol=1e-9)
    with raises(NotSymmetricError):
        psd_check([[1, 1], [0, 1]])


def test_det_adjugate(disk):
    """
    ``det`` of the disk pencil is the disk polynomial and ``M adj(M)``
    is ``det I`` for the Hermitian pencil.
    """
    x1, x2 = disk.ring.gens
    assert det_poly(disk) == 1 - x1**2 - x2**2
    P = hermitian_pencil()
    det = det_poly(P)
    m = P.matrix_polynomial()
    adj = adjugate_polys(P)
    for i in range(3):
        for j in range(3):
            entry = sum((m[i][k] * adj[k][j] for k in range(3)),
                        P.ring.zero)
            assert entry == (det if i == j else P.ring.zero)


def test_translate_congruence(disk):
    moved = translate(disk, [1, 0])
    assert moved.matrices[0] == ((2, 0), (0, 0))
    assert moved.matrices[1:] == disk.matrices[1:]
    swapped = congruence(disk, [[0, 1], [1, 0]])
    x1, x2 = disk.ring.gens
    assert swapped.matrix_polynomial() == [[1 - x1, -x2], [-x2, 1 + x1]]


def test_base_reduce():
    """
    A common kernel of ``M(0)`` is dropped without changing the set.
    """
    P = AffinePencil([[[1, 0], [0, 0]], [[1, 0], [0, 0]]])
    B = base_reduce(P)
    assert isinstance(B, BasedPencil)
    assert B.d == 1
    assert B.kernel_common
    assert B.matrices == (((1,),), ((1,),))
    assert B.reduction == [[1], [0]]


def test_base_reduce_keeps_set(disk, seed):
    """
    Hiding the disk behind a common kernel and a rational congruence
    does not change its PSD set.
    """
    padded = AffinePencil([[list(row) + [0] for row in m] + [[0, 0, 0]]
                           for m in disk.matrices])
    P = congruence(padded, [[1, 2, 0], [0, 1, -1], [1, 0, 1]])
    B = base_reduce(P)
    assert B.kernel_common
    assert B.d == 2
    points = sample_points(B, 500, seed=seed)
    for x in points:
        assert psd_check(evaluate(P, x)) == psd_check(evaluate(B, x)), x


def test_base_reduce_larger_set(disk):
    """
    A kernel that is not common is reported.
    """
    B = base_reduce(translate(disk, [1, 0]))
    assert B.d == 1
    assert not B.kernel_common


def test_base_reduce_not_psd():
    P = AffinePencil([[[1, 0], [0, -1]], [[1, 0], [0, 0]]])
    with raises(NotPSDError) as info:
        base_reduce(P)
    w = info.value.witness
    assert w[0] ** 2 - w[1] ** 2 < 0
    with raises(NotPSDError):
        BasedPencil(P.matrices)
    with raises(ValueError):
        base_reduce(AffinePencil([[[0]], [[1]]]))


def test_subspace_pencil():
    """
    The PSD set of the subspace pencil is the line ``x2 = 1``.
    """
    P = subspace_pencil([[1, 0]], [0, 1])
    assert exact_psd(evaluate(P, [5, 1]))[0]
    assert exact_psd(evaluate(P, [-2, 1]))[0]
    assert not exact_psd(evaluate(P, [0, 0]))[0]
    assert not exact_psd(evaluate(P, [0, '3/2']))[0]
    with raises(ValueError):
        subspace_pencil([[1, 0], [2, 0]], [0, 0])


def test_boundary_parameter(disk):
    assert np.isclose(boundary_parameter(disk, [1, 0]), 1.0)
    assert np.isclose(boundary_parameter(disk, [0, 2]), 0.5)
    ray = AffinePencil([[[1]], [[1]]])
    assert boundary_parameter(ray, [1]) == inf
    assert np.isclose(boundary_parameter(ray, [-1]), 1.0)


def test_invariance(disk, seed):
    """
    The disk is rotation invariant and the square is not.
    """
    G = so2_rotation()
    ok, witness = invariance_sample_check(disk, G, samples=200, seed=seed)
    assert ok
    assert witness is None
    square = AffinePencil([[[1, 0], [0, 1]], [[1, 0], [0, 0]],
                           [[0, 0], [0, 1]]])
    ok, witness = invariance_sample_check(square, G, samples=500, seed=seed)
    assert not ok
    assert set(witness) == {'x', 'g'}
