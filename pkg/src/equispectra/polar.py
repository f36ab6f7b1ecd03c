r"""
Polar representations of the orthogonal group on matrices.

Two families are supported:

``sym``
    :math:`O(n)` acting by conjugation on symmetric matrices. The
    section is the diagonal, the Weyl group is the symmetric group
    permuting the diagonal, and orbit hulls meet the section in
    permutohedra (Schur-Horn).
``skew``
    :math:`O(n)` acting by conjugation on skew-symmetric matrices. The
    section is the block diagonal
    :math:`\operatorname{diag}(\theta_1 J, \ldots, \theta_m J)` with
    :math:`J = \begin{pmatrix} 0 & 1 \\ -1 & 0 \end{pmatrix}` and
    :math:`m = \lfloor n/2 \rfloor`. Membership tests use the full
    hyperoctahedral group of permutations and sign changes.

Section coordinates are sorted non-increasingly everywhere. The
floating point routines (eigen and Schur decompositions) take explicit
tolerances. The module also lifts symmetric polynomials to trace
polynomials and certifies real-zero polynomials along lines with exact
Sturm sequences.
"""

from dataclasses import dataclass
from itertools import product
import logging

from numpy import (
    abs as np_abs, argsort, array, concatenate, cos,
    cumsum, diag, einsum, eye, float64, hstack, linspace, ones, pi,
    rint, sin, sort, trace, triu_indices, vstack, zeros
)
from numpy.linalg import matrix_power
from numpy.random import default_rng
from scipy.linalg import eigh, eigvalsh, schur
from scipy.optimize import linprog
from scipy.stats import ortho_group, qmc
from sympy import sympify
from sympy.polys.polyfuncs import symmetrize
from sympy.utilities.iterables import multiset_permutations

from .errors import BudgetError
from .polyring import (
    evaluate_exact, evaluate_float, format_polynomial, polynomial_ring,
    sturm_all_roots_real, substitute, variables
)
from .util import (
    preprocess, preprocess_square, rational, rational_matrix, rational_vector
)


__all__ = [
    'PolarFamily', 'SectionPoint', 'ProjectionResult', 'ReducedProblem',
    'TracePolynomial', 'section_embedding', 'project_to_section',
    'weyl_orbit', 'majorization_check', 'orbitope_membership',
    'hull_membership', 'moment_polytope_membership',
    'reduce_linear_problem', 'solve_orbit_polytope_lp',
    'reduction_equivalence_check', 'kostant_check', 'chevalley_lift',
    'real_zero_check', 'hopf_counterexample', 'WEYL_BUDGET',
]


logger = logging.getLogger(__name__)


#: Largest section dimension for which Weyl orbits are enumerated.
WEYL_BUDGET = 8

FAMILIES = ('sym', 'skew')


class PolarFamily:
    """
    :math:`O(n)` acting by conjugation on symmetric or skew matrices.

    Parameters
    ----------
    kind : {'sym', 'skew'}
        The family.
    n : int
        Matrix size, at least 2.

    Attributes
    ----------
    section_dim : int
        ``n`` for ``sym``, ``n // 2`` for ``skew``.
    original_dim : int
        Dimension of the representation space: ``n (n + 1) / 2`` or
        ``n (n - 1) / 2``.
    """
    def __init__(self, kind, n):
        kind = str(kind).lower()
        if kind not in FAMILIES:
            raise ValueError(f'Unknown family {kind!r}; expected one of '
                             f'{FAMILIES}')
        n = int(n)
        if n < 2:
            raise ValueError(f'Matrix size must be at least 2, got {n}')
        self.kind = kind
        self.n = n

    def __repr__(self):
        return f'PolarFamily({self.kind!r}, {self.n})'

    def __eq__(self, other):
        return isinstance(other, PolarFamily) and \
            (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    @property
    def section_dim(self):
        return self.n if self.kind == 'sym' else self.n // 2

    @property
    def original_dim(self):
        if self.kind == 'sym':
            return self.n * (self.n + 1) // 2
        return self.n * (self.n - 1) // 2

    @property
    def symmetry(self):
        return 'symmetric' if self.kind == 'sym' else 'skew'


@dataclass(frozen=True)
class SectionPoint:
    """
    A point of the section, stored as a tuple of coordinates.
    """
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index):
        return self.coords[index]

    @property
    def array(self):
        return array([float(c) for c in self.coords], dtype=float64)


@dataclass(frozen=True)
class ProjectionResult:
    """
    A section point `s` and an orthogonal `g` with
    ``g @ section_embedding(F, s) @ g.T`` equal to the input.
    """
    section_point: SectionPoint
    group_element: object


@dataclass(frozen=True)
class ReducedProblem:
    """
    A linear objective on an orbitope restricted to the section.

    The original problem maximizes :math:`\\operatorname{tr}(v^T X)` over
    an invariant convex set; the reduced one maximizes
    ``objective @ x`` over its intersection with the section, in
    section coordinates.
    """
    objective: SectionPoint
    group_element: object
    original_dim: int
    reduced_dim: int


def _coords(s):
    if isinstance(s, SectionPoint):
        s = s.coords
    return preprocess(s, float=True)


def section_embedding(F, s):
    """
    The matrix of the representation space at section coordinates `s`.

    ``diag(s)`` for ``sym``; for ``skew`` the blocks
    :math:`\\begin{pmatrix} 0 & s_i \\\\ -s_i & 0 \\end{pmatrix}` on the
    diagonal, padded with a zero row and column when `n` is odd.
    """
    s = _coords(s)
    if s.size != F.section_dim:
        raise ValueError(f'Expected {F.section_dim} section coordinates, '
                         f'got {s.size}')
    if F.kind == 'sym':
        return diag(s)
    out = zeros((F.n, F.n))
    for i, theta in enumerate(s):
        out[2 * i, 2 * i + 1] = theta
        out[2 * i + 1, 2 * i] = -theta
    return out


def project_to_section(F, A, tol=1e-10):
    """
    Move `A` into the section by an orthogonal conjugation.

    Symmetric matrices are diagonalized with eigenvalues sorted
    non-increasingly. Skew matrices are brought to real Schur form,
    whose ``2 x 2`` blocks are oriented as ``[[0, theta], [-theta, 0]]``
    with ``theta >= 0`` and sorted non-increasingly.

    Parameters
    ----------
    F : PolarFamily
        The family.
    A : array-like
        An ``n x n`` matrix of the family's symmetry type.
    tol : float
        Symmetry tolerance, relative to ``max(1, max|A|)``.

    Return
    ------
    result : ProjectionResult

    Raises
    ------
    NotSymmetricError
        If `A` violates the family's symmetry.
    """
    a = preprocess_square(A, F.symmetry, tol)
    if a.shape[0] != F.n:
        raise ValueError(f'Expected a {F.n}x{F.n} matrix, got {a.shape}')
    if F.kind == 'sym':
        w, v = eigh(a)
        return ProjectionResult(SectionPoint(w[::-1]), v[:, ::-1])

    t, z = schur(a, output='real')
    scale = max(1.0, float(np_abs(a).max()))
    blocks, singles = [], []
    i = 0
    while i < F.n:
        if i + 1 < F.n and abs(t[i + 1, i]) > tol * scale:
            b = 0.5 * (t[i, i + 1] - t[i + 1, i])
            cols = [i, i + 1] if b >= 0 else [i + 1, i]
            blocks.append((abs(b), cols))
            i += 2
        else:
            singles.append(i)
            i += 1
    blocks.sort(key=lambda item: -item[0])
    order = [c for _, cols in blocks for c in cols] + singles
    thetas = [theta for theta, _ in blocks]
    thetas += [0.0] * (F.section_dim - len(thetas))
    return ProjectionResult(SectionPoint(thetas), z[:, order])


def weyl_orbit(F, s, budget=WEYL_BUDGET):
    """
    The Weyl group orbit of a section point.

    All distinct permutations for ``sym``; permutations combined with all
    sign changes for ``skew``. Points are returned in lexicographically
    decreasing order.

    Raises
    ------
    BudgetError
        If the section dimension exceeds `budget`.
    """
    coords = list(s.coords if isinstance(s, SectionPoint) else s)
    if len(coords) != F.section_dim:
        raise ValueError(f'Expected {F.section_dim} section coordinates, '
                         f'got {len(coords)}')
    if len(coords) > budget:
        raise BudgetError(f'Weyl orbit of a {len(coords)}-dimensional '
                          f'section exceeds the budget of {budget}')
    points = set()
    for perm in multiset_permutations(coords):
        if F.kind == 'sym':
            points.add(tuple(perm))
            continue
        for signs in product((1, -1), repeat=len(perm)):
            points.add(tuple(c * e if c else c for c, e in zip(perm, signs)))
    return [SectionPoint(p) for p in sorted(points, reverse=True)]


def majorization_check(y, x, tol=1e-9):
    """
    Whether `y` is majorized by `x`.

    The partial sums of `y` sorted non-increasingly must not exceed
    those of `x`, and the totals must agree, all within `tol`.

    Raises
    ------
    ValueError
        If the lengths differ.
    """
    y, x = _coords(y), _coords(x)
    if y.shape != x.shape:
        raise ValueError(f'Lengths differ: {y.size} and {x.size}')
    cy = cumsum(sort(y)[::-1])
    cx = cumsum(sort(x)[::-1])
    return bool((cy <= cx + tol).all() and abs(cy[-1] - cx[-1]) <= tol)


def orbitope_membership(F, Y, X, tol=1e-9):
    """
    Whether `Y` lies in the convex hull of the conjugation orbit of `X`.

    For symmetric matrices this holds exactly when the eigenvalues of
    `Y` are majorized by those of `X`.
    """
    if F.kind != 'sym':
        raise ValueError('Orbitope membership by eigenvalues needs the '
                         'sym family')
    Y = preprocess_square(Y, 'symmetric')
    X = preprocess_square(X, 'symmetric')
    return majorization_check(eigvalsh(Y), eigvalsh(X), tol)


def hull_membership(points, y, tol=1e-6):
    """
    Test whether `y` is a convex combination of `points`.

    Solves the linear program minimizing the :math:`\\ell^1` residual
    :math:`\\|\\sum_i \\lambda_i p_i - y\\|_1` over the simplex with
    :py:func:`scipy.optimize.linprog` (HiGHS).

    Parameters
    ----------
    points : array-like
        ``(k, dim)`` candidate vertices.
    y : array-like
        The point to test.
    tol : float
        Largest residual accepted as membership.

    Return
    ------
    inside : bool
    residual : float
    weights : ~numpy.ndarray
        The convex weights found.
    """
    points = preprocess(points, float=True)
    y = _coords(y)
    if points.ndim != 2 or points.shape[1] != y.size:
        raise ValueError(f'Points of shape {points.shape} do not match a '
                         f'{y.size}-vector')
    k, dim = points.shape
    cost = concatenate([zeros(k), ones(2 * dim)])
    equality = vstack([hstack([points.T, eye(dim), -eye(dim)]),
                       concatenate([ones(k), zeros(2 * dim)])])
    rhs = concatenate([y, [1.0]])
    result = linprog(cost, A_eq=equality, b_eq=rhs, bounds=(0, None),
                     method='highs')
    if not result.success:
        raise RuntimeError(f'Hull LP failed: {result.message}')
    return bool(result.fun <= tol), float(result.fun), result.x[:k]


def moment_polytope_membership(F, y, x, tol=1e-6):
    """
    Whether `y` lies in the convex hull of the Weyl orbit of `x`.

    Majorization for ``sym``; the hull linear program over the
    hyperoctahedral orbit for ``skew``.
    """
    if F.kind == 'sym':
        return majorization_check(y, x, tol)
    orbit = array([p.coords for p in weyl_orbit(F, x)], dtype=float64)
    return hull_membership(orbit, y, tol)[0]


def reduce_linear_problem(F, v):
    """
    Reduce :math:`\\max_{X \\in O} \\operatorname{tr}(v^T X)` to the section.

    For an invariant convex set `O` and `g` moving `v` into the section,
    the maximum equals that of the section objective over
    :math:`O \\cap \\mathfrak{a}`. For ``skew`` the trace pairing of two
    section points is twice the dot product of their coordinates.

    Return
    ------
    problem : ReducedProblem
    """
    projection = project_to_section(F, v)
    problem = ReducedProblem(projection.section_point,
                             projection.group_element, F.original_dim,
                             F.section_dim)
    logger.debug('Reduced a %d-dimensional objective to %d dimensions',
                 F.original_dim, F.section_dim)
    return problem


def solve_orbit_polytope_lp(F, c, lam):
    """
    Maximize :math:`\\langle c, \\sigma(\\lambda) \\rangle` over the Weyl group.

    For ``sym`` the rearrangement inequality pairs the sorted entries of
    `c` and `lam`; for ``skew`` the absolute values are paired and signs
    follow `c`. Integer input stays integer, so the value is exact.

    Return
    ------
    value : scalar
        The maximum.
    argmax : ~numpy.ndarray
        The maximizing image of `lam`.
    """
    c = preprocess(c.coords if isinstance(c, SectionPoint) else c)
    lam = preprocess(lam.coords if isinstance(lam, SectionPoint) else lam)
    if c.shape != lam.shape:
        raise ValueError(f'Lengths differ: {c.size} and {lam.size}')
    if F.kind == 'sym':
        order = argsort(-c, kind='stable')
        argmax = zeros(lam.shape, dtype=lam.dtype)
        argmax[order] = sort(lam)[::-1]
    else:
        order = argsort(-np_abs(c), kind='stable')
        argmax = zeros(lam.shape, dtype=lam.dtype)
        argmax[order] = sort(np_abs(lam))[::-1]
        argmax[c < 0] = -argmax[c < 0]
    value = (c * argmax).sum()
    return value.item(), argmax


def reduction_equivalence_check(F, v, lam, trials=5000, seed=0, tol=1e-6):
    """
    Compare the reduced optimum with sampled conjugates.

    The feasible set is the orbitope of ``diag(lam)``. The reduced value
    from :py:func:`solve_orbit_polytope_lp` must dominate
    :math:`\\operatorname{tr}(v X)` at `trials` random conjugates
    :math:`X = g \\operatorname{diag}(\\lambda) g^T`, and must be attained
    by the conjugate aligned with `v`.

    Return
    ------
    ok : bool
    report : dict
        ``reduced``, ``sampled`` and ``aligned`` values.
    """
    if F.kind != 'sym':
        raise ValueError('The reduction equivalence check needs the sym '
                         'family')
    v = preprocess_square(v, 'symmetric')
    lam = preprocess(lam, float=True)
    problem = reduce_linear_problem(F, v)
    value, argmax = solve_orbit_polytope_lp(F, problem.objective.array, lam)
    g = problem.group_element
    aligned = float(trace(v @ g @ diag(argmax) @ g.T))
    sampled = -float('inf')
    if trials > 0:
        rng = default_rng(seed)
        samples = ortho_group.rvs(F.n, size=trials, random_state=rng)
        if trials == 1:
            samples = samples[None]
        rotated = einsum('kji,jl,klm->kim', samples, v, samples)
        sampled = float(einsum('kii,i->k', rotated, lam).max())
    ok = sampled <= value + tol and abs(aligned - value) <= tol
    report = {'reduced': float(value), 'sampled': sampled,
              'aligned': aligned}
    if not ok:
        logger.info('Reduction equivalence failed: %s', report)
    return ok, report


def kostant_check(F, trials=100, conjugates=5000, seed=0, tol=1e-6):
    """
    Cross-check orbitope membership against a hull of sampled conjugates.

    Each trial draws a spectrum `lam` and `conjugates` random conjugates
    :math:`g \\operatorname{diag}(\\lambda) g^T`, whose upper triangles
    span an inner approximation of the orbitope. Two matrices are then
    tested:

    * a random convex combination of three of the conjugates, which lies
      in the sampled hull;
    * a random conjugate of a spectrum spread by 1.5 about its mean,
      which is not majorized by `lam` and so lies outside.

    For both, :py:func:`orbitope_membership` and the majorization of the
    eigenvalues must agree with :py:func:`hull_membership` over the
    sampled conjugates.

    Return
    ------
    ok : bool
    report : dict
        ``trials``, ``agree`` and the first disagreeing ``witness``.
    """
    if F.kind != 'sym':
        raise ValueError('The Kostant check needs the sym family')
    rng = default_rng(seed)
    rows, cols = triu_indices(F.n)
    report = {'trials': trials, 'agree': 0, 'witness': None}
    for k in range(trials):
        lam = sort(rng.standard_normal(F.n))[::-1]
        g = ortho_group.rvs(F.n, size=max(conjugates, 3), random_state=rng)
        orbit = einsum('kij,j,klj->kil', g, lam, g)[:, rows, cols]
        pick = rng.choice(len(g), size=3, replace=False)
        weights = rng.dirichlet(ones(3))
        inner = einsum('k,kij,j,klj->il', weights, g[pick], lam, g[pick])
        h = ortho_group.rvs(F.n, random_state=rng)
        outer = h @ diag(lam.mean() + 1.5 * (lam - lam.mean())) @ h.T
        agree = True
        for label, Y in (('inner', inner), ('outer', outer)):
            hull, residual, _ = hull_membership(orbit, Y[rows, cols], tol)
            orbitope = orbitope_membership(F, Y, diag(lam), tol)
            majorized = majorization_check(eigvalsh(Y), lam, tol)
            if orbitope == majorized == hull:
                continue
            agree = False
            if report['witness'] is None:
                report['witness'] = {'trial': k, 'point': label,
                                     'lam': lam.tolist(), 'Y': Y.tolist(),
                                     'orbitope': orbitope,
                                     'majorized': majorized, 'hull': hull,
                                     'residual': residual}
        report['agree'] += agree
    ok = report['agree'] == trials
    logger.debug('Kostant check: %d of %d trials agree', report['agree'],
                 trials)
    return ok, report


def _newton_elementary(ring, n):
    """Elementary symmetric polynomials in terms of power sums."""
    T = ring.gens
    e = [ring.one]
    for k in range(1, n + 1):
        total = ring.zero
        for i in range(1, k + 1):
            term = e[k - i] * T[i - 1]
            total += term if i % 2 else -term
        e.append(total * rational(f'1/{k}'))
    return e


class TracePolynomial:
    """
    A polynomial in the trace powers :math:`T_d = \\operatorname{tr}(A^d)`.

    Parameters
    ----------
    poly : ~sympy.polys.rings.PolyElement
        A polynomial in the variables ``T1, ..., Tn``.
    n : int
        Matrix size.
    """
    def __init__(self, poly, n):
        self.poly = poly
        self.n = n

    def __repr__(self):
        return f'TracePolynomial({format_polynomial(self.poly)!r}, n={self.n})'

    def __str__(self):
        return format_polynomial(self.poly)

    def traces(self, A):
        """Floating point :math:`(T_1, \\ldots, T_n)` of `A`."""
        A = preprocess_square(A, 'symmetric')
        return array([trace(matrix_power(A, k))
                      for k in range(1, self.n + 1)])

    def __call__(self, A):
        """Evaluate at a symmetric matrix in floating point."""
        return float(evaluate_float(self.poly, self.traces(A)))

    def evaluate_exact(self, A):
        """Evaluate at a rational symmetric matrix."""
        A = rational_matrix(A)
        n = len(A)
        power = A
        traces = []
        for k in range(1, self.n + 1):
            if k > 1:
                power = [[sum((power[i][m] * A[m][j] for m in range(n)),
                              rational(0)) for j in range(n)]
                         for i in range(n)]
            traces.append(sum((power[i][i] for i in range(n)), rational(0)))
        return evaluate_exact(self.poly, traces)

    def to_matrix_polynomial(self, names=None):
        """
        Expand into a polynomial on the upper triangle of
        :math:`\\operatorname{Sym}^2(\\mathbb{R}^n)`.

        The default coordinates are ``a1_1, a1_2, ..., an_n`` in row
        order.
        """
        n = self.n
        if names is None:
            names = [f'a{i + 1}_{j + 1}' for i in range(n)
                     for j in range(i, n)]
        ring = polynomial_ring(names)
        gens = iter(ring.gens)
        S = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                S[i][j] = S[j][i] = next(gens)
        power = S
        images = {}
        for k in range(1, n + 1):
            if k > 1:
                power = [[sum((power[i][m] * S[m][j] for m in range(n)),
                              ring.zero) for j in range(n)]
                         for i in range(n)]
            images[f'T{k}'] = sum((power[i][i] for i in range(n)), ring.zero)
        return substitute(self.poly, images, ring)


def _is_symmetric(p):
    names = variables(p)
    gens = dict(zip(names, p.ring.gens))
    if len(names) < 2:
        return True
    swap = dict(gens, **{names[0]: gens[names[1]], names[1]: gens[names[0]]})
    cycle = {n: gens[names[(i + 1) % len(names)]]
             for i, n in enumerate(names)}
    return substitute(p, swap, p.ring) == p and \
        substitute(p, cycle, p.ring) == p


def chevalley_lift(p):
    """
    Lift a symmetric polynomial to a trace polynomial.

    The polynomial is written in elementary symmetric polynomials with
    :py:func:`sympy.polys.polyfuncs.symmetrize`, and those in power sums
    by Newton's identities. Replacing the power sums by
    :math:`\\operatorname{tr}(A^d)` gives the unique :math:`O(n)`-invariant
    polynomial on symmetric matrices restricting to `p` on the diagonal.

    Parameters
    ----------
    p : ~sympy.polys.rings.PolyElement
        A polynomial in `n` variables, invariant under all permutations.

    Return
    ------
    lift : TracePolynomial

    Raises
    ------
    ValueError
        If `p` is not symmetric.

    Examples
    --------
    :math:`e_2 = \\sum_{i<j} x_i x_j` lifts to :math:`(T_1^2 - T_2)/2`.
    """
    if not _is_symmetric(p):
        raise ValueError(f'{format_polynomial(p)} is not symmetric')
    n = p.ring.ngens
    ring = polynomial_ring([f'T{k}' for k in range(1, n + 1)])
    gens = p.ring.symbols
    elementary = _newton_elementary(ring, n)
    symmetric, remainder, definitions = symmetrize(p.as_expr(), *gens,
                                                   formal=True)
    if sympify(remainder) != 0:
        raise ValueError(f'{format_polynomial(p)} is not symmetric')
    images = {s: elementary[k + 1].as_expr()
              for k, (s, _) in enumerate(definitions)}
    lifted = sympify(symmetric).subs(images, simultaneous=True).expand()
    return TracePolynomial(ring.from_expr(lifted) if lifted.free_symbols
                           else ring.ground_new(rational(str(lifted))), n)


def _directions(n, count, seed=0):
    """
    Integer directions: the standard basis, then a Halton sequence
    scaled to ``[-16, 16]^n`` and rounded.
    """
    out = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    halton = qmc.Halton(d=n, scramble=False, seed=seed)
    seen = set(out)
    grown = True
    while len(out) < count and grown:
        block = rint((2.0 * halton.random(count) - 1.0) * 16).astype(int)
        grown = False
        for w in block:
            w = tuple(int(c) for c in w)
            if any(w) and w not in seen:
                seen.add(w)
                out.append(w)
                grown = True
    return out[:count]


def real_zero_check(p, u=None, directions=100):
    """
    Certify the real-zero property of `p` at `u` along many lines.

    For each integer direction `w`, the univariate restriction
    :math:`t \\mapsto p(u + t w)` must have only real zeros, which is
    decided exactly by :py:func:`~equispectra.polyring.sturm_all_roots_real`.

    Parameters
    ----------
    p : ~sympy.polys.rings.PolyElement
        The polynomial.
    u : sequence, optional
        A rational point with :math:`p(u) > 0`; defaults to the origin.
    directions : int
        Number of directions: the standard basis first, then a
        low-discrepancy sequence.

    Return
    ------
    ok : bool
    witness : dict or None
        The first direction whose restriction has a non-real zero.

    Raises
    ------
    ValueError
        If :math:`p(u) \\le 0`.
    """
    n = p.ring.ngens
    u = [rational(0)] * n if u is None else rational_vector(u)
    if len(u) != n:
        raise ValueError(f'Expected {n} coordinates, got {len(u)}')
    if evaluate_exact(p, u) <= 0:
        raise ValueError('The base point must satisfy p(u) > 0')
    line = polynomial_ring('t')
    t = line.gens[0]
    for w in _directions(n, directions):
        images = {name: line.ground_new(a) + t * c
                  for name, a, c in zip(variables(p), u, w)}
        if not sturm_all_roots_real(substitute(p, images, line)):
            logger.debug('Direction %s has non-real zeros', w)
            return False, {'direction': list(w)}
    return True, None


def _segment_distance_squared(point, direction):
    """Exact squared distance from `point` to the line spanned by `direction`."""
    point = rational_vector(point)
    direction = rational_vector(direction)
    dot = sum((a * b for a, b in zip(point, direction)), rational(0))
    norm = sum((b * b for b in direction), rational(0))
    return sum((a * a for a in point), rational(0)) - dot * dot / norm


def hopf_counterexample(samples=720, tol=1e-6):
    """
    A subspace meeting all orbits that is not a section.

    :math:`U(1)` acts on :math:`\\mathbb{C}^2` by
    :math:`e^{it} (z_1, z_2) = (e^{it} z_1, e^{it} z_2)`, and
    :math:`\\mathfrak{a} = \\{\\operatorname{Im} z_2 = 0\\}` meets every
    orbit. For the hull `O` of the orbit of ``(1, 1)``,
    :math:`O \\cap \\mathfrak{a}` is the segment between :math:`\\pm(1, 1)`,
    but the projection of `O` to :math:`\\mathfrak{a}` is the hull of the
    ellipse :math:`(e^{it}, \\cos t)`.

    The witness ``(0, 1, 0)`` in coordinates
    :math:`(\\operatorname{Re} z_1, \\operatorname{Im} z_1, \\operatorname{Re} z_2)`
    is shown to be in the projection by a hull LP over `samples` orbit
    points, and to be at squared distance exactly 1 from the line through
    the segment.

    Return
    ------
    report : dict
        ``witness``, ``in_projection``, ``residual``,
        ``distance_squared``, ``in_slice``, the base point and midpoint
        sanity checks and the overall ``passed`` verdict.
    """
    t = linspace(0.0, 2.0 * pi, samples, endpoint=False)
    orbit = array([cos(t), sin(t), cos(t), sin(t)]).T
    projected = orbit[:, :3]
    witness = (0, 1, 0)
    inside, residual, _ = hull_membership(projected, witness, tol)
    distance = _segment_distance_squared(witness, (1, 0, 1))
    in_slice = distance == 0
    checks = {}
    for label, point in (('base', (1, 0, 1)), ('midpoint', (0, 0, 0))):
        on_line = _segment_distance_squared(point, (1, 0, 1)) == 0
        checks[label] = {
            'in_projection': hull_membership(projected, point, tol)[0],
            'in_slice': bool(on_line and max(abs(c) for c in point) <= 1),
        }
    passed = inside and not in_slice and 4 * distance >= 1 and \
        all(c['in_projection'] and c['in_slice'] for c in checks.values())
    report = {
        'witness': list(witness), 'in_projection': inside,
        'residual': residual, 'distance_squared': str(distance),
        'in_slice': in_slice, 'checks': checks, 'passed': passed,
    }
    logger.debug('Hopf counterexample: %s', report)
    return report
