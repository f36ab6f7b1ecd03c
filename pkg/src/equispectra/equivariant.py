r"""
Equivariant descriptions of invariant spectrahedra.

Given a based pencil :math:`M(x)` whose PSD set `S` is invariant under a
compact group `G`, the pipeline builds a representation `V` of `G` and
an equivariant pencil :math:`\bar{M}` on `V` with the same PSD set:

1. The defining polynomial `p` of `S` is the square-free part of
   :math:`\det M`, pruned of factors that do not vanish on the boundary.
2. A polynomial vector :math:`\xi` with :math:`M \xi = q p v` is cut out
   of the adjugate.
3. The span `W` of the coordinates of :math:`\xi(g^{-1} x)` over all `g`
   gets a basis `F`, and the unique matrix `B(g)` with
   :math:`B(g) F(x) = \xi(g^{-1} x)` is solved exactly.
4. :math:`\bar{M}(x)_{jk} = \int_G B^j(g^{-1})^T M(g x) B^k(g^{-1}) \, d\mu`
   is integrated exactly, and the left regular action on the columns of
   `B` gives the representation :math:`\rho`.

Every identity of the construction is verified exactly; the set equality
is confirmed by sampling.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
import logging
from time import perf_counter

from numpy import abs as np_abs, maximum, zeros
from sympy.polys.domains import QQ

from .errors import GroupError, NotDivisible, NotPSDError, StageError
from .groupring import (
    copy_ring, haar_integrate, inverse_substitute, is_zero, left_translate,
    normal_form, orbit_center, rename_copy
)
from .pencil import (
    AffinePencil, BasedPencil, adjugate_polys, base_reduce, congruence,
    det_poly, exact_psd, evaluate, invariance_sample_check, psd_check,
    translate
)
from .polyring import (
    adjoin, evaluate_exact, evaluate_float, exact_div, factor_squarefree,
    format_polynomial, format_rational, gcd_multivariate, parse_polynomial,
    rational_inverse, rational_rank, rational_rref, split_variables,
    squarefree_part, substitute, total_degree, variables
)
from .sampling import boundary_points, map_chunks, sample_points
from .util import rational, rational_matrix


__all__ = [
    'XiData', 'OrbitSpanData', 'EquivariantDescription', 'Certificate',
    'defining_polynomial', 'compute_xi', 'xi_candidates',
    'expand_orbit_span', 'gram_pencil', 'equivariance_check',
    'set_equality_check', 'equivariantize', 'change_basis', 'shift',
    'verified_description',
]


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class XiData:
    """
    A solution of :math:`M(x) \\xi(x) = q(x) p(x) v`.

    Attributes
    ----------
    xi : tuple
        The ``d`` coordinates of :math:`\\xi`, polynomials in the pencil
        variables.
    v : tuple
        The rational vector `v`.
    q : ~sympy.polys.rings.PolyElement
        The cofactor `q`.
    p : ~sympy.polys.rings.PolyElement
        The defining polynomial.
    """
    xi: tuple
    v: tuple
    q: object
    p: object


@dataclass(frozen=True)
class OrbitSpanData:
    """
    A basis `F` of the orbit span of :math:`\\xi` and the matrix `B`.

    `F` holds ``m`` polynomials in the pencil variables and `B` is a
    ``d x m`` nested tuple of ring elements in the group coordinates,
    related by :math:`B(g) F(x) = \\xi(g^{-1} x)`.
    """
    F: tuple
    B: tuple


@dataclass(frozen=True)
class EquivariantDescription:
    """
    An equivariant pencil and the representation it is equivariant for.

    Attributes
    ----------
    Mbar : ~equispectra.pencil.AffinePencil
        The ``m x m`` pencil :math:`\\bar{M}`.
    gram0 : tuple
        :math:`\\bar{M}(0)`, the Haar Gram matrix of the columns of `B`
        weighted by :math:`M(0)`.
    rho : tuple
        ``m x m`` ring elements: the representation in the basis given
        by the columns of `B`. It satisfies
        :math:`\\rho(g)^T \\bar{M}(g x) \\rho(g) = \\bar{M}(x)`.
    group : ~equispectra.groupring.GroupSpec
        The group.
    span : OrbitSpanData or None
        The basis `F` and matrix `B`; ``None`` for descriptions that
        were verified rather than constructed.
    xi : XiData or None
        The polynomial vector the span was built from.
    center : tuple or None
        The fixed point the input pencil was translated by, if any. The
        description is then in the coordinates ``x - center``.
    """
    Mbar: AffinePencil
    gram0: tuple
    rho: tuple
    group: object
    span: OrbitSpanData = None
    xi: XiData = None
    center: tuple = None

    @property
    def m(self):
        """Dimension of the representation."""
        return self.Mbar.d


@dataclass
class StageVerdict:
    stage: str
    verdict: str
    ms: float = 0.0
    witness: object = None
    reason: str = None

    def to_dict(self, timings=False):
        out = {'stage': self.stage, 'verdict': self.verdict}
        if self.witness is not None:
            out['witness'] = self.witness
        if self.reason is not None:
            out['reason'] = self.reason
        if timings:
            out['ms'] = round(self.ms, 3)
        return out


@dataclass
class Certificate:
    """
    Ordered verdicts of the pipeline stages.

    Each verdict is ``'pass'``, ``'fail'`` (with a witness) or
    ``'skipped'`` (with a reason). Timings are kept but only exported on
    request, so certificates of identical runs serialize identically.
    """
    stages: list = field(default_factory=list)

    def record(self, stage, verdict, ms=0.0, witness=None, reason=None):
        self.stages.append(StageVerdict(stage, verdict, ms, witness, reason))
        if verdict == 'pass':
            logger.info('Stage %s passed in %.1f ms', stage, ms)
        elif verdict == 'skipped':
            logger.info('Stage %s skipped: %s', stage, reason)
        else:
            logger.warning('Stage %s failed: %s', stage, witness)

    @property
    def passed(self):
        return all(s.verdict != 'fail' for s in self.stages)

    def timings(self):
        return {s.stage: s.ms for s in self.stages}

    def to_dict(self, timings=False):
        return {'passed': self.passed,
                'stages': [s.to_dict(timings) for s in self.stages]}


def _matmul(a, b, zero):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), zero)
             for j in range(len(b[0]))] for i in range(len(a))]


def _transpose(a):
    return [list(col) for col in zip(*a)]


def _substitute_action(G, matrix, names, ring):
    """Entries of `matrix` with ``x -> A(g) x``, in normal form."""
    action = [[adjoin(p, ring) for p in row] for row in G.action]
    gens = [ring.gens[variables(ring).index(n)] for n in names]
    images = {n: sum((a * x for a, x in zip(row, gens)), ring.zero)
              for n, row in zip(names, action)}
    return [[normal_form(G, substitute(adjoin(p, ring), images, ring),
                         extra=True) for p in row] for row in matrix]


def _table(G, e):
    """
    Coordinates of a ring element as a function on the group.

    Continuous groups use the normal-form monomials, finite groups the
    values at the elements.
    """
    if G.kind == 'Finite':
        return {i: evaluate_exact(e, G._element_tuple(g))
                for i, g in enumerate(G.elements)}
    return dict(normal_form(G, e).items())


def defining_polynomial(P, G=None, samples=50, seed=0, tol=1e-7):
    """
    The defining polynomial of the PSD set of a based pencil.

    The square-free part of :math:`\\det M(x)` is factored over the
    rationals. A factor is kept when it vanishes at one or more of
    `samples` numerically located boundary points; every boundary point
    must be a zero of some kept factor. The product of the kept factors
    is scaled to ``p(0) = 1``.

    Parameters
    ----------
    P : ~equispectra.pencil.BasedPencil
        The pencil.
    G : ~equispectra.groupring.GroupSpec, optional
        When given, `p` must also be exactly invariant:
        :math:`p(A(g) x) \\equiv p(x)` modulo the relations.
    samples : int
        Number of boundary points.
    seed : int
        Seed of the boundary directions.
    tol : float
        Vanishing threshold, relative to the size of the factor's terms
        at the point.

    Return
    ------
    p : ~sympy.polys.rings.PolyElement

    Raises
    ------
    StageError
        If some boundary point is not a zero of any factor, or `p` is not
        invariant.
    """
    det = det_poly(P)
    factors = factor_squarefree(squarefree_part(det))
    points = boundary_points(P, samples, seed) if factors else \
        zeros((0, P.n))
    vanish = [np_abs(evaluate_float(f, points)) <=
              tol * maximum(_term_scale(f, points), 1.0) for f in factors]
    kept = [f for f, v in zip(factors, vanish) if v.any()]
    for f, v in zip(factors, vanish):
        if not v.any():
            logger.debug('Pruned factor %s: no boundary zeros',
                         format_polynomial(f))
    for k in range(len(points)):
        if not any(v[k] for v in vanish):
            raise StageError('defining_polynomial',
                             'boundary point is not a zero of the '
                             'square-free determinant',
                             [float(c) for c in points[k]])
    p = P.ring.one
    for f in kept:
        p *= f
    p = p * (QQ.one / evaluate_exact(p, [QQ.zero] * P.n))
    if G is not None and not _invariant(G, p):
        raise StageError('defining_polynomial',
                         f'{format_polynomial(p)} is not invariant under '
                         f'{G.name}')
    logger.debug('Defining polynomial %s from %d of %d factors',
                 format_polynomial(p), len(kept), len(factors))
    return p


def _term_scale(f, points):
    """Sum of the absolute values of the terms of `f` at `points`."""
    total = zeros(len(points))
    for monom, coeff in f.items():
        term = abs(int(coeff.numerator) / int(coeff.denominator))
        for i, e in enumerate(monom):
            if e:
                term = term * np_abs(points[:, i]) ** e
        total = total + term
    return total


def _invariant(G, p):
    ring = copy_ring(G, '', extra=variables(p))
    image = _substitute_action(G, [[p]], variables(p), ring)[0][0]
    return is_zero(G, image - adjoin(p, ring))


def xi_candidates(d):
    """
    The deterministic sequence of candidate vectors `v`.

    Standard basis vectors come first, then combinations with entries in
    ``{-1, 0, 1}`` by growing support, then entries up to 2 in absolute
    value, and so on. Of `v` and `-v` only the one with a positive first
    nonzero entry is produced.
    """
    bound = 1
    while True:
        values = [s * k for k in range(1, bound + 1) for s in (1, -1)]
        for size in range(1, d + 1):
            for support in combinations(range(d), size):
                for entries in product(values, repeat=size):
                    if entries[0] < 0 or \
                            max(abs(e) for e in entries) != bound:
                        continue
                    v = [0] * d
                    for i, e in zip(support, entries):
                        v[i] = e
                    yield tuple(QQ(e) for e in v)
        bound += 1


def compute_xi(P, p, candidates=100):
    """
    Find :math:`\\xi` and `q` with :math:`M(x) \\xi(x) = q(x) p(x) v`.

    For each candidate `v` from :py:func:`xi_candidates`,
    :math:`w = \\operatorname{adj}(M) v` is divided by the gcd `g` of its
    coordinates. The candidate is accepted when the coordinates of
    :math:`\\xi = w / g` have a gcd coprime to `p` and `p` divides
    :math:`\\det M / g`, giving :math:`q = \\det M / (g p)`. Of the
    accepted candidates the one with the smallest degree of `q` wins,
    and the scan stops at the first constant `q`.

    Parameters
    ----------
    P : ~equispectra.pencil.AffinePencil
        The pencil.
    p : ~sympy.polys.rings.PolyElement
        Its defining polynomial.
    candidates : int
        How many candidates to try.

    Return
    ------
    xi : XiData

    Raises
    ------
    StageError
        If none of the candidates is accepted.

    Notes
    -----
    The result is not necessarily the first accepted candidate. A later
    candidate replaces an earlier one only when its `q` has strictly
    smaller total degree, so ties go to the earliest. For the cone of
    Hermitian matrices translated to the identity, :math:`e_1` is
    accepted with :math:`q = 1 + a_{11}` and :math:`e_2` is returned
    with :math:`q = 1`.
    """
    det = det_poly(P)
    adj = adjugate_polys(P)
    zero = P.ring.zero
    best = None
    tried = 0
    for v in xi_candidates(P.d):
        if tried >= candidates:
            break
        tried += 1
        w = [sum((a * c for a, c in zip(row, v) if c), zero) for row in adj]
        if not any(w):
            continue
        g = zero
        for c in w:
            g = gcd_multivariate(g, c)
        xi = [exact_div(c, g) for c in w]
        content = zero
        for c in xi:
            content = gcd_multivariate(content, c)
        if total_degree(gcd_multivariate(content, p)) > 0:
            continue
        try:
            q = exact_div(exact_div(det, g), p)
        except NotDivisible:
            logger.debug('Candidate %s rejected: p does not divide det/g',
                         [format_rational(c) for c in v])
            continue
        if best is None or total_degree(q) < total_degree(best.q):
            best = XiData(tuple(xi), v, q, p)
            logger.debug('Candidate %s accepted with deg q = %d',
                         [format_rational(c) for c in v], total_degree(q))
            if total_degree(q) <= 0:
                break
    if best is None:
        raise StageError('compute_xi', f'no candidate among the first '
                         f'{tried} satisfies M xi = q p v')
    _check_xi(P, best)
    return best


def _check_xi(P, data):
    M = P.matrix_polynomial()
    zero = P.ring.zero
    qp = data.q * data.p
    for i, row in enumerate(M):
        lhs = sum((a * b for a, b in zip(row, data.xi)), zero)
        if lhs != qp * data.v[i]:
            raise StageError('compute_xi', f'M xi differs from q p v in row '
                             f'{i}')


def _monomial_key(monom):
    return (sum(monom), tuple(-e for e in monom))


def _coefficient_rows(G, polys, names):
    """
    Rational rows of the functions ``g -> coefficients of polys``.

    `polys` are polynomials in the group coordinates and `names`. Each
    row is indexed by (polynomial, group function coordinate), each
    column by a monomial in `names`.
    """
    inner = G.ring
    parts = [split_variables(e, names, inner) for e in polys]
    monomials = sorted({m for part in parts for m in part},
                       key=_monomial_key)
    rows = []
    for part in parts:
        table = {m: _table(G, e) for m, e in part.items()}
        keys = sorted({k for t in table.values() for k in t})
        for key in keys:
            row = [table[m].get(key, QQ.zero) if m in table else QQ.zero
                   for m in monomials]
            if any(row):
                rows.append(row)
    return monomials, rows, parts


def _monomial_vector(f, monomials, names):
    own = variables(f)
    index = [own.index(n) if n in own else None for n in names]
    coeffs = {}
    for monom, coeff in f.items():
        key = tuple(0 if i is None else monom[i] for i in index)
        coeffs[key] = coeff
    extra = set(coeffs) - set(monomials)
    if extra:
        return None
    return [coeffs.get(m, QQ.zero) for m in monomials]


def expand_orbit_span(xi, G, basis=None):
    """
    Basis `F` of the orbit span of :math:`\\xi` and the matrix `B`.

    The coordinates of :math:`\\xi(g^{-1} x)` are expanded over the
    monomials of `x`, with coefficients that are functions on `G`. Their
    rational coefficient matrix (rows indexed by coordinate and group
    function, columns by monomials of `x` in ascending graded order) has
    the span `W` as its row space. The default `F` is its reduced row
    echelon basis. `B` is solved from :math:`B(g) F(x) = \\xi(g^{-1} x)`
    through the pivot columns of `F` and verified exactly.

    Parameters
    ----------
    xi : XiData
        Output of :py:func:`compute_xi`.
    G : ~equispectra.groupring.GroupSpec
        The group.
    basis : sequence, optional
        A basis of `W` to use for `F`, as polynomials or strings. It
        must span exactly `W`.

    Return
    ------
    span : OrbitSpanData

    Raises
    ------
    StageError
        If `basis` does not span `W`, or the solved `B` fails its
        identity.
    """
    x_ring = xi.p.ring
    names = variables(x_ring)
    if G.n != len(names):
        raise GroupError(f'Group acts on R^{G.n} but xi has {len(names)} '
                         'variables')
    ring = copy_ring(G, '', extra=names)
    inverse = G.inverse_action(ring)
    gens = [ring.gens[variables(ring).index(n)] for n in names]
    images = {n: sum((a * x for a, x in zip(row, gens)), ring.zero)
              for n, row in zip(names, inverse)}
    moved = [normal_form(G, substitute(adjoin(c, ring), images, ring),
                         extra=True) for c in xi.xi]

    monomials, rows, parts = _coefficient_rows(G, moved, names)
    echelon, pivots = rational_rref(rows, len(monomials))
    m = len(pivots)
    if basis is None:
        coeffs = echelon
    else:
        F = [parse_polynomial(f, x_ring) if isinstance(f, (str, int))
             else adjoin(f, x_ring) for f in basis]
        coeffs = [_monomial_vector(f, monomials, names) for f in F]
        if any(c is None for c in coeffs) or len(coeffs) != m or \
                rational_rank(coeffs, len(monomials)) != m or \
                rational_rank(rows + coeffs, len(monomials)) != m:
            raise StageError('expand_orbit_span', f'the given basis does '
                             f'not span the {m}-dimensional orbit span')
    F = tuple(_from_coefficients(x_ring, c, monomials) for c in coeffs)

    _, columns = rational_rref(coeffs, len(monomials))
    square = [[row[c] for c in columns] for row in coeffs]
    inverse_f = rational_inverse(square)
    B = []
    for part in parts:
        v = [part.get(monomials[c], G.ring.zero) for c in columns]
        B.append(tuple(sum((v[l] * inverse_f[l][j] for l in range(m)),
                           G.ring.zero) for j in range(m)))
    B = tuple(B)

    for k, (row, target) in enumerate(zip(B, moved)):
        lhs = sum((adjoin(b, ring) * adjoin(f, ring)
                   for b, f in zip(row, F)), ring.zero)
        if not is_zero(G, lhs - target):
            raise StageError('expand_orbit_span', f'B(g) F(x) differs from '
                             f'xi(g^-1 x) in coordinate {k}')
    _check_columns(G, B)
    logger.debug('Orbit span of dimension %d from %d coefficient rows',
                 m, len(rows))
    return OrbitSpanData(F, B)


def _from_coefficients(ring, coeffs, monomials):
    return ring.from_dict({mon: c for mon, c in zip(monomials, coeffs) if c})


def _check_columns(G, B):
    m = len(B[0])
    gram = [[haar_integrate(G, sum((B[a][j] * B[a][k] for a in range(len(B))),
                                   G.ring.zero))
             for k in range(m)] for j in range(m)]
    if rational_rank(gram, m) != m:
        raise StageError('expand_orbit_span', 'the columns of B are '
                         'linearly dependent')


def _representation(G, B):
    """
    Solve :math:`B^k(g^{-1} h) = \\sum_j \\rho_{jk}(g) B^j(h)`.
    """
    d, m = len(B), len(B[0])
    inner = copy_ring(G, '_g')
    hnames = G.names('_h')
    keys, basis_rows, targets = [], {}, {}
    for a in range(d):
        for j in range(m):
            for key, value in _table(G, B[a][j]).items():
                basis_rows.setdefault((a, key), [QQ.zero] * m)[j] = value
        for k in range(m):
            moved = left_translate(G, B[a][k])
            if G.kind == 'Finite':
                table = {}
                for i, g in enumerate(G.elements):
                    images = dict(zip(hnames, G._element_tuple(g)))
                    images.update({n: inner.gens[t] for t, n in
                                   enumerate(G.names('_g'))})
                    table[i] = substitute(moved, images, inner)
            else:
                table = split_variables(moved, hnames, inner)
            for key, value in table.items():
                targets.setdefault((a, key), [inner.zero] * m)[k] = value
    keys = sorted(set(basis_rows) | set(targets), key=repr)
    A = [basis_rows.get(key, [QQ.zero] * m) for key in keys]
    T = [targets.get(key, [inner.zero] * m) for key in keys]
    _, rows = rational_rref(_transpose(A), len(keys))
    if len(rows) != m:
        raise StageError('gram_pencil', 'the columns of B are linearly '
                         'dependent')
    S = rational_inverse([A[r] for r in rows])
    rho = [[sum((T[rows[l]][k] * S[j][l] for l in range(m)), inner.zero)
            for k in range(m)] for j in range(m)]
    for r in range(len(keys)):
        for k in range(m):
            residual = sum((rho[j][k] * A[r][j] for j in range(m)),
                           inner.zero) - T[r][k]
            if not is_zero(G, residual, '_g'):
                raise StageError('gram_pencil', 'the orbit span is not '
                                 'invariant under left translation')
    return tuple(tuple(rename_copy(G, e, '_g', '', G.ring) for e in row)
                 for row in rho)


def gram_pencil(P, span, G):
    """
    Integrate the equivariant pencil and its representation.

    Computes
    :math:`\\bar{M}(x)_{jk} = \\int_G B^j(g^{-1})^T M(A(g) x) B^k(g^{-1}) \\, d\\mu(g)`
    exactly: the integrand is expanded in the ring of the group
    coordinates and `x`, and integrated coefficient-wise.

    Parameters
    ----------
    P : ~equispectra.pencil.BasedPencil
        The pencil the span was built from.
    span : OrbitSpanData
        Output of :py:func:`expand_orbit_span`.
    G : ~equispectra.groupring.GroupSpec
        The group.

    Return
    ------
    description : EquivariantDescription

    Raises
    ------
    StageError
        If an entry is not affine in `x`, :math:`\\bar{M}(0)` is not
        positive-definite, or the representation cannot be solved.
    """
    names = P.names
    ring = copy_ring(G, '', extra=names)
    moved = _substitute_action(G, P.matrix_polynomial(ring), names, ring)
    B = [[adjoin(inverse_substitute(G, b), ring) for b in row]
         for row in span.B]
    right = _matmul(moved, B, ring.zero)
    m = len(span.F)
    entries = [[None] * m for _ in range(m)]
    for j in range(m):
        for k in range(j, m):
            integrand = sum((B[a][j] * right[a][k] for a in range(P.d)),
                            ring.zero)
            value = haar_integrate(G, integrand, ring=P.ring)
            if total_degree(value) > 1:
                raise StageError('gram_pencil', f'entry ({j}, {k}) has '
                                 f'degree {total_degree(value)} in x')
            entries[j][k] = entries[k][j] = value
    Mbar = AffinePencil.from_polynomials(entries, names)
    try:
        Mbar = BasedPencil(Mbar.matrices, names)
    except NotPSDError as e:
        raise StageError('gram_pencil', 'the Gram matrix is not '
                         'positive-definite', e.witness) from e
    rho = _representation(G, span.B)
    return EquivariantDescription(Mbar, Mbar.matrices[0], rho, G, span)


def equivariance_check(E, G=None):
    """
    Verify the equivariance of a description exactly.

    Checks, modulo the relations of the group,

    * :math:`\\rho(g)^T \\bar{M}(0) \\rho(g) \\equiv \\bar{M}(0)` and
    * :math:`\\rho(g)^T \\bar{M}(A(g) x) \\rho(g) \\equiv \\bar{M}(x)`.

    Parameters
    ----------
    E : EquivariantDescription
        The description.
    G : ~equispectra.groupring.GroupSpec, optional
        Defaults to ``E.group``.

    Return
    ------
    ok : bool
    witness : dict or None
        The first failing identity, entry and residual.
    """
    G = E.group if G is None else G
    names = E.Mbar.names
    ring = copy_ring(G, '', extra=names)
    rho = [[adjoin(e, ring) for e in row] for row in E.rho]
    rho_t = _transpose(rho)
    gram = [[ring.ground_new(v) for v in row] for row in E.gram0]
    moved = _substitute_action(G, E.Mbar.matrix_polynomial(ring), names, ring)
    plain = E.Mbar.matrix_polynomial(ring)
    for label, lhs, rhs in (('gram0', gram, gram), ('Mbar', moved, plain)):
        image = _matmul(_matmul(rho_t, lhs, ring.zero), rho, ring.zero)
        for j in range(E.m):
            for k in range(j, E.m):
                residual = image[j][k] - rhs[j][k]
                if not is_zero(G, residual):
                    witness = {
                        'identity': label, 'entry': [j, k],
                        'residual': format_polynomial(
                            normal_form(G, residual, extra=True)),
                    }
                    logger.info('Equivariance check failed: %s', witness)
                    return False, witness
    return True, None


def set_equality_check(P, E, samples=1000, tol=1e-9, seed=0, points=()):
    """
    Compare the PSD sets of a pencil and a description by sampling.

    Parameters
    ----------
    P : ~equispectra.pencil.AffinePencil
        The original pencil, in the coordinates of the description.
    E : EquivariantDescription or ~equispectra.pencil.AffinePencil
        The description (or any pencil in the same variables).
    samples : int
        Number of points from :py:func:`~equispectra.sampling.sample_points`.
    tol : float
        PSD tolerance.
    seed : int
        Seed of the points.
    points : sequence
        Rational points whose verdicts are compared exactly.

    Return
    ------
    ok : bool
    report : dict
        ``samples``, ``agree`` and, on failure, the first disagreeing
        ``witness``.
    """
    Mbar = E.Mbar if isinstance(E, EquivariantDescription) else E
    if Mbar.n != P.n:
        raise ValueError(f'Pencils have {P.n} and {Mbar.n} variables')
    report = {'samples': 0, 'agree': 0, 'witness': None}
    for x in points:
        report['samples'] += 1
        a, _ = exact_psd(evaluate(P, x))
        b, _ = exact_psd(evaluate(Mbar, x))
        if a != b:
            if report['witness'] is None:
                report['witness'] = {'x': [format_rational(rational(c))
                                           for c in x],
                                     'pencil': a, 'description': b}
        else:
            report['agree'] += 1

    def check(block, rng):
        first, agree = None, 0
        for x in block:
            a = psd_check(P.evaluate_float(x), tol)
            b = psd_check(Mbar.evaluate_float(x), tol)
            if a == b:
                agree += 1
            elif first is None:
                first = {'x': [float(c) for c in x], 'pencil': a,
                         'description': b}
        return agree, first

    sampled = sample_points(P, samples, seed)
    for agree, first in map_chunks(check, sampled, seed):
        report['agree'] += agree
        if report['witness'] is None and first is not None:
            report['witness'] = first
    report['samples'] += len(sampled)
    ok = report['agree'] == report['samples']
    logger.debug('Set equality: %d of %d agree', report['agree'],
                 report['samples'])
    return ok, report


def change_basis(E, T):
    """
    Re-express a description in the basis :math:`F' = T F`.

    With :math:`S = T^{-1}` the new matrix is :math:`B' = B S`, the
    pencil :math:`S^T \\bar{M} S` and the representation
    :math:`T \\rho S`.

    Raises
    ------
    ValueError
        If `T` is singular.
    """
    T = rational_matrix(T)
    S = rational_inverse(T)
    ring = E.group.ring
    Mbar = congruence(E.Mbar, S)
    Mbar = BasedPencil(Mbar.matrices, Mbar.names)
    Tp = [[ring.ground_new(v) for v in row] for row in T]
    Sp = [[ring.ground_new(v) for v in row] for row in S]
    rho = _matmul(_matmul(Tp, [list(r) for r in E.rho], ring.zero), Sp,
                  ring.zero)
    span = None
    if E.span is not None:
        x_ring = E.span.F[0].ring
        F = tuple(sum((x_ring.ground_new(t) * f
                       for t, f in zip(row, E.span.F)), x_ring.zero)
                  for row in T)
        B = tuple(tuple(e) for e in _matmul([list(r) for r in E.span.B],
                                            Sp, ring.zero))
        span = OrbitSpanData(F, B)
    return EquivariantDescription(Mbar, Mbar.matrices[0],
                                  tuple(tuple(r) for r in rho), E.group,
                                  span, E.xi, E.center)


def shift(E, c):
    """
    The description of :math:`\\bar{M}(x) + c \\bar{M}(0)`.

    The representation preserves :math:`\\bar{M}(0)`, so the shifted
    pencil stays equivariant. `gram0` is left unchanged.
    """
    c = rational(c)
    matrices = [list(map(list, m)) for m in E.Mbar.matrices]
    matrices[0] = [[a + c * g for a, g in zip(row, grow)]
                   for row, grow in zip(matrices[0], E.gram0)]
    Mbar = AffinePencil(matrices, E.Mbar.names)
    return EquivariantDescription(Mbar, E.gram0, E.rho, E.group, E.span,
                                  E.xi, E.center)


def verified_description(Mbar, rho, G, gram0=None):
    """
    Wrap a published pencil and representation as a description.

    Parameters
    ----------
    Mbar : ~equispectra.pencil.AffinePencil
        The pencil.
    rho : sequence
        ``m x m`` ring elements as polynomials or strings in the group
        coordinates.
    G : ~equispectra.groupring.GroupSpec
        The group.
    gram0 : sequence, optional
        The preserved form; defaults to :math:`\\bar{M}(0)`.
    """
    rho = tuple(tuple(normal_form(G, parse_polynomial(e, G.ring)
                                  if isinstance(e, (str, int)) else
                                  adjoin(e, G.ring)) for e in row)
                for row in rho)
    if len(rho) != Mbar.d or any(len(row) != Mbar.d for row in rho):
        raise ValueError(f'rho must be {Mbar.d}x{Mbar.d}')
    gram0 = Mbar.matrices[0] if gram0 is None else \
        tuple(tuple(rational(v) for v in row) for row in gram0)
    return EquivariantDescription(Mbar, gram0, rho, G)


class _Stages:
    """Run pipeline stages, timing them into a certificate."""
    def __init__(self, certificate):
        self.certificate = certificate

    def run(self, stage, func, *args, **kwargs):
        start = perf_counter()
        try:
            result = func(*args, **kwargs)
        except StageError as e:
            self.certificate.record(e.stage, 'fail',
                                    (perf_counter() - start) * 1e3,
                                    witness=str(e))
            raise
        except ValueError as e:
            self.certificate.record(stage, 'fail',
                                    (perf_counter() - start) * 1e3,
                                    witness=str(e))
            raise StageError(stage, str(e), getattr(e, 'witness', None)) \
                from e
        self.certificate.record(stage, 'pass',
                                (perf_counter() - start) * 1e3)
        return result

    def check(self, stage, func, *args, **kwargs):
        start = perf_counter()
        ok, witness = func(*args, **kwargs)
        ms = (perf_counter() - start) * 1e3
        if not ok:
            self.certificate.record(stage, 'fail', ms, witness=witness)
            raise StageError(stage, 'check failed', witness)
        self.certificate.record(stage, 'pass', ms)
        return witness


def equivariantize(P, G, samples=1000, tol=1e-9, seed=0, group_samples=10,
                   interior_point=None, basis=None, check_points=()):
    """
    Convert an invariant pencil into an equivariant description.

    Runs the stages ``invariance``, ``base_reduce``,
    ``defining_polynomial``, ``compute_xi``, ``expand_orbit_span``,
    ``gram_pencil``, ``equivariance_check`` and ``set_equality_check``
    in order, recording each verdict in a :py:class:`Certificate`.

    Parameters
    ----------
    P : ~equispectra.pencil.AffinePencil
        The pencil. Its PSD set must be invariant under `G`.
    G : ~equispectra.groupring.GroupSpec
        The group, acting on the pencil variables.
    samples : int
        Points for the sampling checks.
    tol : float
        PSD tolerance of the sampling checks.
    seed : int
        Seed of all randomness.
    group_samples : int
        Group elements per point in the invariance check.
    interior_point : sequence, optional
        A rational interior point of the PSD set. Its orbit center, a
        fixed point, becomes the new origin. Needed when :math:`M(0)` is
        not positive-definite.
    basis : sequence, optional
        A basis for `F` passed to :py:func:`expand_orbit_span`.
    check_points : sequence
        Rational points for exact set comparisons.

    Return
    ------
    description : EquivariantDescription
    certificate : Certificate

    Raises
    ------
    StageError
        Naming the first stage that fails.
    """
    certificate = Certificate()
    stages = _Stages(certificate)
    if G.n != P.n:
        raise GroupError(f'Group acts on R^{G.n} but the pencil has {P.n} '
                         'variables')
    logger.info('Equivariantizing a %dx%d pencil in %d variables under %s',
                P.d, P.d, P.n, G.name)

    stages.check('invariance', invariance_sample_check, P, G, samples, tol,
                 seed, group_samples)

    center = None
    if interior_point is not None:
        center = tuple(orbit_center(G, interior_point))
        P = translate(P, center)
        logger.info('Translated the pencil to the orbit center %s',
                    [format_rational(c) for c in center])

    def reduce_base():
        based = base_reduce(P)
        if not based.kernel_common:
            raise StageError('base_reduce', '0 is not an interior point; '
                             'supply an invariant interior point')
        return based

    based = stages.run('base_reduce', reduce_base)

    p = stages.run('defining_polynomial', defining_polynomial, based, G,
                   seed=seed)
    xi = stages.run('compute_xi', compute_xi, based, p)
    span = stages.run('expand_orbit_span', expand_orbit_span, xi, G, basis)
    E = stages.run('gram_pencil', gram_pencil, based, span, G)
    E = EquivariantDescription(E.Mbar, E.gram0, E.rho, G, span, xi, center)
    stages.check('equivariance_check', equivariance_check, E, G)

    def sets():
        ok, report = set_equality_check(based, E, samples, tol, seed,
                                        check_points)
        return ok, (None if ok else report)

    stages.check('set_equality_check', sets)
    return E, certificate
