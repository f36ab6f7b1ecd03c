r"""
Affine symmetric matrix pencils.

A pencil is the affine map

.. math::

   M(x) = M_0 + x_1 M_1 + \cdots + x_n M_n

with symmetric rational :math:`d \times d` matrices :math:`M_i`. Its
positive-semidefinite set :math:`\{x : M(x) \succeq 0\}` is a
spectrahedron.

Exact operations (determinant, adjugate, base point reduction,
congruences, translations) work over the rationals. Floating point is
used only for sampling checks, which compare PSD verdicts through a
symmetric eigensolver with a relative tolerance.
"""

import logging

from numpy import einsum, inf, stack
from numpy.random import default_rng
from numpy.linalg import LinAlgError
from scipy.linalg import eigh, eigvalsh
from sympy.polys.domains import QQ

from .errors import GroupError, NotPSDError, NotSymmetricError
from .groupring import action_at_float, sample_elements
from .polyring import (
    format_rational, polynomial_adjugate, polynomial_det, polynomial_ring,
    rational_nullspace, rational_rank, variables
)
from .sampling import map_chunks, sample_points
from .util import (
    float_matrix, preprocess, preprocess_square, rational, rational_matrix,
    rational_vector
)


__all__ = [
    'AffinePencil', 'BasedPencil', 'evaluate', 'psd_check', 'det_poly',
    'adjugate_polys', 'base_reduce', 'subspace_pencil',
    'invariance_sample_check', 'translate', 'congruence',
    'boundary_parameter', 'exact_psd',
]


logger = logging.getLogger(__name__)


def _symmetric(matrix, label):
    d = len(matrix)
    for i in range(d):
        if len(matrix[i]) != d:
            raise ValueError(f'{label} is not square')
        for j in range(i):
            if matrix[i][j] != matrix[j][i]:
                raise NotSymmetricError(f'{label} is not symmetric at '
                                        f'({i}, {j})')


class AffinePencil:
    """
    The affine symmetric matrix pencil :math:`M_0 + \\sum_i x_i M_i`.

    Parameters
    ----------
    matrices : sequence
        The ``n + 1`` matrices :math:`M_0, \\ldots, M_n`, each a ``d x d``
        nested sequence of rationals (or rational strings).
    names : sequence of str, optional
        Names of the variables :math:`x_1, \\ldots, x_n`. Defaults to
        ``x1, ..., xn``.

    Attributes
    ----------
    n : int
        Number of variables.
    d : int
        Size of the matrices.
    ring : ~sympy.polys.rings.PolyRing
        The polynomial ring of the variables.

    Raises
    ------
    NotSymmetricError
        If any matrix is not exactly symmetric.
    """
    def __init__(self, matrices, names=None):
        matrices = [rational_matrix(m) for m in matrices]
        if len(matrices) < 2:
            raise ValueError('A pencil needs M0 and at least one M_i')
        d = len(matrices[0])
        if d == 0:
            raise ValueError('Pencil matrices must be at least 1x1')
        for k, m in enumerate(matrices):
            if len(m) != d:
                raise ValueError(f'M{k} has {len(m)} rows, expected {d}')
            _symmetric(m, f'M{k}')
        n = len(matrices) - 1
        if names is None:
            names = [f'x{i + 1}' for i in range(n)]
        names = tuple(names)
        if len(names) != n:
            raise ValueError(f'Expected {n} variable names, got {len(names)}')
        self.matrices = tuple(tuple(tuple(row) for row in m)
                              for m in matrices)
        self.names = names
        self.n = n
        self.d = d
        self.ring = polynomial_ring(names)
        self._float = None

    def __repr__(self):
        return f'{type(self).__name__}(n={self.n}, d={self.d})'

    def __eq__(self, other):
        return isinstance(other, AffinePencil) and \
            (self.names, self.matrices) == (other.names, other.matrices)

    def __hash__(self):
        return hash((self.names, self.matrices))

    @classmethod
    def from_polynomials(cls, matrix, names=None):
        """
        Build a pencil from a symmetric matrix of affine polynomials.

        Parameters
        ----------
        matrix : sequence of sequences
            Polynomials of total degree at most one, all in one ring.
        names : sequence of str, optional
            Variable order; defaults to the variables of the ring.
        """
        ring = matrix[0][0].ring
        names = variables(ring) if names is None else tuple(names)
        own = variables(ring)
        index = [own.index(n) for n in names]
        d = len(matrix)
        zero = ring.domain.zero
        mats = [[[zero] * d for _ in range(d)] for _ in range(len(names) + 1)]
        for i in range(d):
            for j in range(d):
                for monom, coeff in matrix[i][j].items():
                    degree = sum(monom)
                    if degree == 0:
                        mats[0][i][j] = coeff
                    elif degree == 1:
                        k = index.index(monom.index(1))
                        mats[k + 1][i][j] = coeff
                    else:
                        raise ValueError(f'Entry ({i}, {j}) is not affine')
        return cls(mats, names)

    def matrix_polynomial(self, ring=None):
        """
        The matrix :math:`M(x)` with polynomial entries in `ring`
        (default: the pencil's own ring).
        """
        ring = self.ring if ring is None else ring
        own = variables(ring)
        gens = [ring.gens[own.index(n)] for n in self.names]
        out = []
        for i in range(self.d):
            row = []
            for j in range(self.d):
                p = ring.ground_new(self.matrices[0][i][j])
                for x, m in zip(gens, self.matrices[1:]):
                    if m[i][j]:
                        p += x * m[i][j]
                row.append(p)
            out.append(row)
        return out

    @property
    def float_matrices(self):
        """
        All matrices as one floating point array of shape
        ``(n + 1, d, d)``.
        """
        if self._float is None:
            self._float = stack([float_matrix(m) for m in self.matrices])
        return self._float

    def evaluate_float(self, points):
        """
        :math:`M(x)` at an ``(N, n)`` array of points, as ``(N, d, d)``.
        """
        points = preprocess(points, float=True)
        mats = self.float_matrices
        return mats[0] + einsum('...i,ijk->...jk', points, mats[1:])

    def boundary_parameters(self, directions):
        """
        For each row `w` of `directions`, the largest `t` with
        :math:`M(t w) \\succeq 0`.

        Requires :math:`M_0 \\succ 0`. Rays that never leave the PSD set
        give ``inf``.
        """
        mats = self.float_matrices
        directions = preprocess(directions, float=True)
        if directions.ndim == 1:
            directions = directions[None, :]
        out = []
        for w in directions:
            lam = eigh(einsum('i,ijk->jk', w, mats[1:]), mats[0],
                       eigvals_only=True)
            low = lam.min() if lam.size else 0.0
            out.append(-1.0 / low if low < 0 else inf)
        return out

    @property
    def is_based(self):
        """
        Whether :math:`M_0` is positive-definite (exact check).
        """
        return _leading_pivots_positive(self.matrices[0])


class BasedPencil(AffinePencil):
    """
    An :py:class:`AffinePencil` whose base matrix :math:`M(0)` is
    certified positive-definite.

    Attributes
    ----------
    reduction : list or None
        The ``d_original x d`` rational matrix `Q` with
        ``Q^T M(x) Q`` equal to this pencil, when produced by
        :py:func:`base_reduce`.
    kernel_common : bool
        Whether the kernel of the original :math:`M(0)` was in the
        kernel of every :math:`M_i`, which makes the reduction preserve
        the PSD set.

    Raises
    ------
    NotPSDError
        If :math:`M(0)` has a non-positive leading principal minor.
    """
    def __init__(self, matrices, names=None, reduction=None,
                 kernel_common=True):
        super().__init__(matrices, names)
        if not _leading_pivots_positive(self.matrices[0]):
            _, _, witness = _eliminate(self.matrices[0])
            raise NotPSDError('M(0) is not positive-definite', witness)
        self.reduction = reduction
        self.kernel_common = kernel_common


def _leading_pivots_positive(a):
    """Gaussian elimination without pivoting has positive pivots."""
    a = [list(row) for row in a]
    d = len(a)
    for k in range(d):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, d):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, d):
                    a[i][j] -= f * a[k][j]
    return True


def _eliminate(a):
    """
    Symmetric elimination of a rational symmetric matrix.

    Return
    ------
    pivots : list of int
        Positions of the positive pivots, in elimination order.
    q : list
        ``d x d`` matrix with ``q^T a q`` diagonal; the pivot columns
        carry the positive entries and all other columns are in the
        kernel.
    witness : list or None
        A vector `w` with ``w^T a w < 0`` when `a` is not PSD.
    """
    d = len(a)
    a = [list(row) for row in a]
    q = [[QQ.one if i == j else QQ.zero for j in range(d)] for i in range(d)]
    active = list(range(d))
    pivots = []

    def column(k):
        return [q[i][k] for i in range(d)]

    while active:
        positive = [i for i in active if a[i][i] > 0]
        if not positive:
            negative = [i for i in active if a[i][i] < 0]
            if negative:
                return pivots, q, column(negative[0])
            for i in active:
                for j in active:
                    if a[i][j]:
                        sign = 1 if a[i][j] > 0 else -1
                        return pivots, q, [q[r][i] - sign * q[r][j]
                                           for r in range(d)]
            break
        p = positive[0]
        active.remove(p)
        pivots.append(p)
        for j in active:
            f = a[j][p] / a[p][p]
            if not f:
                continue
            for r in range(d):
                a[j][r] -= f * a[p][r]
            for r in range(d):
                a[r][j] -= f * a[r][p]
            for r in range(d):
                q[r][j] -= f * q[r][p]
    return pivots, q, None


def exact_psd(a):
    """
    Exact PSD verdict for a rational symmetric matrix.

    Parameters
    ----------
    a : sequence of sequences
        Rational entries (or rational strings).

    Return
    ------
    psd : bool
        Whether `a` is positive-semidefinite.
    witness : list or None
        A rational vector with negative quadratic form when `a` is not
        PSD.
    """
    a = rational_matrix(a)
    _symmetric(a, 'Matrix')
    if not a:
        return True, None
    _, _, witness = _eliminate(a)
    return witness is None, witness


def evaluate(P, a):
    """
    The matrix :math:`M(a)`.

    Exact rational input (ints, fractions, rational strings) gives a
    nested list of rationals; floating point input gives a
    :py:class:`numpy.ndarray`.

    Raises
    ------
    ValueError
        If ``len(a) != P.n``.
    """
    if len(a) != P.n:
        raise ValueError(f'Expected {P.n} coordinates, got {len(a)}')
    if hasattr(a, 'dtype') or any(isinstance(v, float) for v in a):
        return P.evaluate_float(a)
    a = rational_vector(a)
    out = [list(row) for row in P.matrices[0]]
    for v, m in zip(a, P.matrices[1:]):
        if v:
            for i in range(P.d):
                for j in range(P.d):
                    out[i][j] += v * m[i][j]
    return out


def psd_check(a, tol=1e-9):
    """
    Floating point PSD test.

    Parameters
    ----------
    a : array-like
        A symmetric matrix.
    tol : float
        Relative tolerance: the matrix passes when its smallest
        eigenvalue is at least ``-tol * max(1, ||a||)``.

    Return
    ------
    psd : bool

    Raises
    ------
    NotSymmetricError
        If `a` is not symmetric within `tol`.
    """
    a = preprocess_square(a, 'symmetric', tol)
    if a.size == 0:
        return True
    lam = eigvalsh(a)
    scale = max(1.0, float(abs(lam).max()))
    return bool(lam[0] >= -tol * scale)


def det_poly(P):
    """
    Exact determinant :math:`\\det M(x)` as a polynomial.

    See Also
    --------
    adjugate_polys : The matching adjugate.
    """
    det = polynomial_det(P.matrix_polynomial())
    return P.ring.ground_new(det) if isinstance(det, int) else det


def adjugate_polys(P):
    """
    Exact adjugate of :math:`M(x)`, satisfying
    :math:`M \\operatorname{adj}(M) = \\det(M) I`.
    """
    return polynomial_adjugate(P.matrix_polynomial())


def _transform(matrix, q):
    """``q^T matrix q`` for rational matrices."""
    d, r = len(q), len(q[0]) if q else 0
    mq = [[sum((matrix[i][k] * q[k][j] for k in range(d)), QQ.zero)
           for j in range(r)] for i in range(d)]
    return [[sum((q[k][i] * mq[k][j] for k in range(d)), QQ.zero)
             for j in range(r)] for i in range(r)]


def congruence(P, Q):
    """
    The pencil :math:`x \\mapsto Q^T M(x) Q` for a rational ``d x r``
    matrix `Q`.
    """
    Q = rational_matrix(Q)
    if len(Q) != P.d:
        raise ValueError(f'Q must have {P.d} rows')
    return AffinePencil([_transform(m, Q) for m in P.matrices], P.names)


def translate(P, v):
    """
    The pencil :math:`x \\mapsto M(x + v)`.
    """
    v = rational_vector(v)
    if len(v) != P.n:
        raise ValueError(f'Expected {P.n} coordinates, got {len(v)}')
    base = evaluate(P, v)
    return AffinePencil([base] + [list(map(list, m)) for m in P.matrices[1:]],
                        P.names)


def base_reduce(P):
    """
    Reduce a pencil with :math:`M(0) \\succeq 0` to a based pencil.

    A rational congruence `Q` from symmetric Gaussian elimination
    (no square roots) diagonalizes :math:`M(0)` as
    ``diag(delta_1, ..., delta_r, 0, ..., 0)`` with positive
    ``delta_i``. The result is the leading ``r x r`` block of
    :math:`Q^T M(x) Q`.

    Return
    ------
    B : BasedPencil
        The reduced pencil. Its `reduction` attribute holds the
        ``d x r`` part of `Q` and `kernel_common` records whether the
        dropped rows and columns vanish for every :math:`M_i`. Only then
        does the reduction keep the PSD set unchanged.

    Raises
    ------
    NotPSDError
        If :math:`M(0)` is not PSD, with a rational witness vector.
    ValueError
        If :math:`M(0)` is zero.
    """
    pivots, q, witness = _eliminate(P.matrices[0])
    if witness is not None:
        raise NotPSDError('M(0) is not positive-semidefinite: w^T M(0) w = '
                          + format_rational(_quadratic(P.matrices[0],
                                                       witness)),
                          witness)
    if not pivots:
        raise ValueError('M(0) is zero; translate the pencil to an '
                         'interior point first')
    kernel = [j for j in range(P.d) if j not in pivots]
    order = pivots + kernel
    full = [[q[i][j] for j in order] for i in range(P.d)]
    r = len(pivots)
    transformed = [_transform(m, full) for m in P.matrices]
    common = all(not m[i][j] for m in transformed
                 for i in range(P.d) for j in range(r, P.d))
    if not common:
        logger.warning('Kernel of M(0) is not common to all M_i; the '
                       'reduced pencil describes a larger set')
    reduced = [[row[:r] for row in m[:r]] for m in transformed]
    logger.debug('Base reduction kept rank %d of %d', r, P.d)
    return BasedPencil(reduced, P.names,
                       reduction=[row[:r] for row in full],
                       kernel_common=common)


def _quadratic(a, w):
    return sum((w[i] * a[i][j] * w[j] for i in range(len(w))
                for j in range(len(w))), QQ.zero)


def subspace_pencil(W_basis, v_shift):
    """
    A pencil whose PSD set is the affine subspace
    :math:`\\operatorname{span}(W) + v`.

    With a rational basis :math:`u_1, \\ldots, u_k` of the orthogonal
    complement of `W` and :math:`y_j = u_j^T (x - v)`, the pencil is
    the ``(k + 1) x (k + 1)`` block matrix
    :math:`\\begin{pmatrix} 0 & y \\\\ y^T & 0 \\end{pmatrix}`,
    which is PSD exactly when :math:`y = 0`.

    Parameters
    ----------
    W_basis : sequence
        Linearly independent rational vectors of :math:`\\mathbb{R}^n`.
        May be empty.
    v_shift : sequence
        The translation vector; its length fixes `n`.

    Raises
    ------
    ValueError
        If `W_basis` is linearly dependent.
    """
    v = rational_vector(v_shift)
    n = len(v)
    W = rational_matrix(W_basis)
    if any(len(w) != n for w in W):
        raise ValueError(f'Basis vectors must have length {n}')
    if W and rational_rank(W, n) != len(W):
        raise ValueError('Subspace basis is linearly dependent')
    U = rational_nullspace(W, n) if W else \
        [[rational(int(i == j)) for j in range(n)] for i in range(n)]
    k = len(U)
    size = k + 1
    zero = rational(0)
    mats = []
    offsets = [-sum((u[i] * v[i] for i in range(n)), zero) for u in U]
    for coeffs in [offsets] + [[u[i] for u in U] for i in range(n)]:
        m = [[zero] * size for _ in range(size)]
        for j, c in enumerate(coeffs):
            m[j][k] = m[k][j] = c
        mats.append(m)
    return AffinePencil(mats)


def boundary_parameter(P, w):
    """
    Largest `t` with :math:`M(t w) \\succeq 0`, ``inf`` if unbounded.

    Solved as the generalized symmetric eigenproblem
    :math:`(\\sum_i w_i M_i) v = \\lambda M_0 v`:
    :math:`t^* = -1 / \\lambda_{min}` when :math:`\\lambda_{min} < 0`.

    Raises
    ------
    ValueError
        If :math:`M_0` is not positive-definite.
    """
    try:
        return P.boundary_parameters([w])[0]
    except LinAlgError as e:
        raise ValueError('boundary_parameter needs M(0) positive-definite') \
            from e


def invariance_sample_check(P, G, samples=1000, tol=1e-9, seed=0,
                            group_samples=10):
    """
    Sample the invariance of the PSD set of `P` under `G`.

    Points come from :py:func:`~equispectra.sampling.sample_points`, a
    mixture of interior, near-boundary and exterior radii, and group
    elements from :py:func:`~equispectra.groupring.sample_elements`.

    Parameters
    ----------
    P : AffinePencil
        The pencil.
    G : ~equispectra.groupring.GroupSpec
        The group; ``G.n`` must equal ``P.n``.
    samples : int
        Number of points.
    tol : float
        PSD tolerance.
    seed : int
        Seed of all randomness.
    group_samples : int
        Number of group elements for continuous groups.

    Return
    ------
    ok : bool
        ``False`` if some `x` and `g` disagree on PSD-ness of
        :math:`M(x)` and :math:`M(g x)`. A ``True`` result is evidence,
        not proof.
    witness : dict or None
        ``{'x': point, 'g': coordinates}`` for the first disagreement.
    """
    if G.n != P.n:
        raise GroupError(f'Group acts on R^{G.n} but the pencil has '
                         f'{P.n} variables')
    elements = sample_elements(G, group_samples, default_rng(seed))
    actions = [action_at_float(G, g) for g in elements]
    points = sample_points(P, samples, seed)

    def check(block, rng):
        for x in block:
            base = psd_check(P.evaluate_float(x), tol)
            for g, a in zip(elements, actions):
                if psd_check(P.evaluate_float(a @ x), tol) != base:
                    return {'x': [float(c) for c in x],
                            'g': [format_rational(c) for c in g]}
        return None

    for witness in map_chunks(check, points, seed):
        if witness is not None:
            logger.info('Invariance check failed at %s', witness)
            return False, witness
    logger.debug('Invariance check passed on %d points x %d elements',
                 len(points), len(elements))
    return True, None
