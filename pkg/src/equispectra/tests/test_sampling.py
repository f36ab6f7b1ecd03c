"""
Tests for the point generators in :mod:`equispectra.sampling`.
"""

import numpy as np

from equispectra.catalog import disk_pencil
from equispectra.pencil import AffinePencil
from equispectra.sampling import (
    boundary_points, gaussian_directions, map_chunks, sample_points
)


def test_directions(rng):
    w = gaussian_directions(2.0, (50, 3), rng)
    assert w.shape == (50, 3)
    assert np.allclose(np.linalg.norm(w, axis=1), 2.0)


def test_sample_mixture(seed):
    """
    Samples of the disk cover the interior, both sides of the boundary
    and the far exterior.
    """
    points = sample_points(disk_pencil(), 400, seed)
    r = np.linalg.norm(points, axis=1)
    assert points.shape == (400, 2)
    assert np.allclose(r[1::4], 0.99)
    assert np.allclose(r[2::4], 1.01)
    assert (r[0::4] < 0.9).all()
    assert (r[3::4] >= 1.1).all()
    assert np.array_equal(points, sample_points(disk_pencil(), 400, seed))


def test_sample_not_based(seed):
    """
    Without a positive-definite base matrix radii are log-normal.
    """
    P = AffinePencil([[[0, 0], [0, 1]], [[1, 0], [0, 0]]])
    points = sample_points(P, 100, seed)
    assert points.shape == (100, 1)
    assert np.isfinite(points).all()


def test_boundary(seed):
    points = boundary_points(disk_pencil(), 100, seed)
    assert np.allclose(np.linalg.norm(points, axis=1), 1.0)
    ray = AffinePencil([[[1]], [[1]]])
    points = boundary_points(ray, 100, seed)
    assert (points < 0).all()


def test_map_chunks_workers(seed):
    """
    Results depend on the seed, not on the number of threads.
    """
    def draw(block, rng):
        return [float(rng.uniform()) + x for x in block]

    items = list(range(300))
    one = map_chunks(draw, items, seed, chunk=32, workers=1)
    four = map_chunks(draw, items, seed, chunk=32, workers=4)
    assert one == four
    assert len(one) == 10
    assert [len(b) for b in one][-1] == 300 - 9 * 32
    assert map_chunks(draw, [], seed) == []
