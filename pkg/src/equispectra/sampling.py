"""
Point generators for the sampling checks.

The generators follow one signature, ``(scale, size, rng)``: a radial
scale, the output shape and a :py:class:`numpy.random.Generator`.
Pencil-aware samplers combine them into mixtures of interior,
near-boundary and exterior points along random directions.

Work is fanned out over a thread pool in fixed chunks. Each chunk gets
its own child generator spawned from the run seed, so results depend on
the seed and never on the number of workers (capped by the
``EQUISPECTRA_THREADS`` environment variable).
"""

from concurrent.futures import ThreadPoolExecutor
import logging

import numpy as np
from numpy.linalg import LinAlgError

from .util import max_workers


__all__ = [
    'gaussian_directions', 'lognormal_radii',
    'sample_points', 'boundary_points', 'map_chunks', 'CHUNK',
]


logger = logging.getLogger(__name__)


#: Number of items handled by one task of :py:func:`map_chunks`.
CHUNK = 64

#: Relative offset of the near-boundary samples.
NEAR = 1e-2


def gaussian_directions(scale, size, rng):
    """
    Unit directions uniformly distributed on the sphere.

    `size` is ``(count, n)``; `scale` multiplies the unit vectors.
    """
    v = rng.standard_normal(size)
    norms = np.linalg.norm(v, axis=-1, keepdims=True)
    norms[norms == 0] = 1.0
    return scale * v / norms


def lognormal_radii(scale, size, rng):
    """
    Radii spread over several orders of magnitude around `scale`.
    """
    return scale * rng.lognormal(mean=0.0, sigma=1.0, size=size)


def _radii(t, rng):
    """
    Mixture of radii for directions with boundary parameters `t`.

    The four kinds cycle: deep interior, just inside, just outside and
    far outside the boundary. Unbounded directions get log-normal radii.
    """
    count = len(t)
    kinds = np.arange(count) % 4
    r = np.empty(count)
    finite = np.isfinite(t)
    u = rng.uniform(0.0, 1.0, size=count)
    r[kinds == 0] = 0.9 * u[kinds == 0]
    r[kinds == 1] = 1.0 - NEAR
    r[kinds == 2] = 1.0 + NEAR
    r[kinds == 3] = 1.1 + 1.9 * u[kinds == 3]
    r[finite] *= t[finite]
    r[~finite] = lognormal_radii(1.0, size=(~finite).sum(), rng=rng)
    return r


def sample_points(P, count, seed=0):
    """
    Sample points for comparing PSD verdicts of a pencil.

    Directions are uniform on the sphere. When :math:`M(0)` is
    positive-definite each direction's radius comes from the mixture of
    interior, near-boundary (boundary parameter times ``1 -+ 1e-2``)
    and exterior scales; otherwise radii are log-normal.

    Parameters
    ----------
    P : ~equispectra.pencil.AffinePencil
        The pencil.
    count : int
        Number of points.
    seed : int
        Seed of the generator.

    Return
    ------
    points : ~numpy.ndarray
        Shape ``(count, P.n)``.
    """
    rng = np.random.default_rng(seed)
    w = gaussian_directions(1.0, (count, P.n), rng)
    try:
        t = np.array(P.boundary_parameters(w)) if count else np.empty(0)
    except (LinAlgError, ValueError):
        logger.debug('M(0) is not positive-definite; using log-normal radii')
        return w * lognormal_radii(1.0, (count, 1), rng)
    return w * _radii(t, rng)[:, None]


def boundary_points(P, count, seed=0):
    """
    Points on the boundary of the PSD set of a based pencil.

    Each point is :math:`t^* w` for a random direction `w` with finite
    boundary parameter :math:`t^*`. Directions with an unbounded ray are
    skipped, so fewer than `count` points come back for unbounded sets.
    """
    rng = np.random.default_rng(seed)
    w = gaussian_directions(1.0, (count, P.n), rng)
    t = np.array(P.boundary_parameters(w))
    finite = np.isfinite(t)
    return w[finite] * t[finite, None]


def map_chunks(func, items, seed=0, chunk=CHUNK, workers=None):
    """
    Apply `func` to consecutive chunks of `items` in a thread pool.

    Parameters
    ----------
    func : callable
        Called as ``func(block, rng)`` with a slice of `items` and a
        child generator for that slice.
    items : sequence
        The work items.
    seed : int
        Root of the :py:class:`~numpy.random.SeedSequence` whose spawned
        children seed the chunks.
    chunk : int
        Items per task.
    workers : int, optional
        Thread count; defaults to :py:func:`~equispectra.util.max_workers`.

    Return
    ------
    results : list
        One result per chunk, in chunk order.
    """
    blocks = [items[i:i + chunk] for i in range(0, len(items), chunk)]
    if not blocks:
        return []
    children = np.random.SeedSequence(seed).spawn(len(blocks))
    rngs = [np.random.default_rng(c) for c in children]
    workers = max_workers() if workers is None else workers
    if workers == 1 or len(blocks) == 1:
        return [func(b, r) for b, r in zip(blocks, rngs)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, blocks, rngs))
