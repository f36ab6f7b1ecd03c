r"""
Exact multivariate polynomial arithmetic over the rationals.

Polynomials are sympy sparse polynomials (:py:class:`~sympy.polys.rings.PolyElement`)
over :py:data:`~sympy.polys.domains.QQ`, ordered graded-lexicographically
in the declared variable order. A polynomial is a dictionary from
exponent tuples to rational coefficients with no zero entries, so two
polynomials built from the same terms compare equal.

Rings are identified by their tuple of variable names. Operations that
combine polynomials from different rings move them into the ring
spanned by the union of the names first (see :py:func:`combined_ring`).

The module also carries the small amount of exact linear algebra the
pipeline needs: echelon forms, ranks, inverses and solves over
:math:`\mathbb{Q}`, and determinants and adjugates of matrices with
polynomial entries.
"""

from functools import lru_cache, reduce
from itertools import product
from math import gcd as igcd, lcm as ilcm
from operator import mul

from numpy import array, float64, prod, zeros
from sympy import Float, Poly
from sympy.parsing.sympy_parser import (
    convert_xor, parse_expr, standard_transformations
)
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from .errors import DocumentError, NotDivisible


__all__ = [
    'polynomial_ring', 'combined_ring', 'variables', 'parse_polynomial',
    'format_polynomial', 'format_rational', 'normalize', 'total_degree',
    'adjoin', 'gcd_multivariate', 'squarefree_part', 'exact_div',
    'substitute', 'sturm_all_roots_real', 'evaluate_float',
    'evaluate_exact', 'factor_squarefree', 'split_variables',
    'rational_rref', 'rational_rank', 'rational_nullspace',
    'rational_inverse', 'rational_solve',
    'polynomial_det', 'polynomial_adjugate',
]


@lru_cache(maxsize=None)
def _ring(names):
    return PolyRing(names, QQ, grlex)


def polynomial_ring(names):
    """
    The polynomial ring over ``QQ`` in the variables `names`.

    Parameters
    ----------
    names : str or sequence of str
        Variable names in their declared order. A single string is split
        on commas and whitespace.

    Return
    ------
    ring : ~sympy.polys.rings.PolyRing
        A graded-lexicographic ring. Rings are cached, so equal name
        tuples return the same object.
    """
    if isinstance(names, str):
        names = [n for n in names.replace(',', ' ').split() if n]
    names = tuple(str(n) for n in names)
    if not names:
        raise ValueError('A polynomial ring needs at least one variable')
    if len(set(names)) != len(names):
        raise ValueError(f'Duplicate variable names in {names}')
    return _ring(names)


def variables(ring):
    """
    Variable names of a ring (or of the ring of a polynomial).
    """
    if isinstance(ring, PolyElement):
        ring = ring.ring
    return tuple(s.name for s in ring.symbols)


def combined_ring(*items):
    """
    The ring whose variables are the union of those of `items`.

    Names keep the order of their first appearance. Each item may be a
    ring, a polynomial or a sequence of names.
    """
    names = []
    for item in items:
        if isinstance(item, (PolyRing, PolyElement)):
            item = variables(item)
        elif isinstance(item, str):
            item = [item]
        for name in item:
            if name not in names:
                names.append(name)
    return polynomial_ring(names)


def adjoin(p, ring):
    """
    Move `p` into `ring`.

    Every variable that occurs in `p` must be a variable of `ring`.
    Variables that do not occur may be dropped.
    """
    if p.ring == ring:
        return p
    names = variables(p)
    target = variables(ring)
    index = [target.index(n) if n in target else -1 for n in names]
    terms = {}
    for monom, coeff in p.items():
        new = [0] * ring.ngens
        for k, (i, e) in enumerate(zip(index, monom)):
            if e:
                if i < 0:
                    raise ValueError(f'Variable {names[k]} is not in '
                                     f'{target}')
                new[i] = e
        terms[tuple(new)] = coeff
    return ring.from_dict(terms)


_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_polynomial(text, ring):
    """
    Parse the text format ``coeff * x1^a1*...*xn^an + ...``.

    Coefficients must be integers or ``num/den`` rationals; ``**`` is
    accepted as a synonym for ``^``.

    Parameters
    ----------
    text : str or int
        The polynomial to parse. Integers are accepted as constants.
    ring : ~sympy.polys.rings.PolyRing
        The ring the result lives in.

    Return
    ------
    p : ~sympy.polys.rings.PolyElement

    Raises
    ------
    DocumentError
        If the text is not a polynomial with rational coefficients in
        the variables of `ring`.
    """
    if isinstance(text, int) and not isinstance(text, bool):
        return ring.ground_new(text)
    if not isinstance(text, str):
        raise DocumentError(f'Expected a polynomial string, got {text!r}')
    local = {s.name: s for s in ring.symbols}
    try:
        expr = parse_expr(text, local_dict=local,
                          transformations=_TRANSFORMATIONS)
    except Exception as e:
        raise DocumentError(f'Cannot parse polynomial {text!r}: {e}') from e
    if expr.atoms(Float):
        raise DocumentError(f'Floating point coefficient in {text!r}; '
                            'use num/den')
    foreign = {s.name for s in expr.free_symbols} - set(local)
    if foreign:
        raise DocumentError(f'Unknown variables {sorted(foreign)} in '
                            f'{text!r}')
    try:
        return ring.from_expr(expr)
    except ValueError as e:
        raise DocumentError(f'Not a polynomial: {text!r}') from e


def format_rational(q):
    """
    Text form of a rational: ``'n'`` or ``'n/d'``.
    """
    q = QQ.convert(q)
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f'{num}/{den}'


def format_polynomial(p):
    """
    Canonical text form of `p`.

    Terms appear in descending graded-lexicographic order, powers are
    written with ``^`` and coefficients as ``num/den``. The zero
    polynomial is ``'0'``.

    Examples
    --------
    The disk polynomial prints as ``'-x1^2 - x2^2 + 1'``.
    """
    if not p:
        return '0'
    names = variables(p)
    out = []
    for monom, coeff in p.terms():
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f'{name}^{e}')
        negative = coeff < 0
        mag = format_rational(-coeff if negative else coeff)
        if factors:
            body = '*'.join(factors)
            if mag != '1':
                body = f'{mag}*{body}'
        else:
            body = mag
        if not out:
            out.append(f'-{body}' if negative else body)
        else:
            out.append(f'- {body}' if negative else f'+ {body}')
    return ' '.join(out)


def total_degree(p):
    """
    Total degree of `p`; ``-1`` for the zero polynomial.
    """
    return max((sum(m) for m in p), default=-1)


def normalize(p):
    """
    Scale `p` to integer coefficients with content 1 and a positive
    leading coefficient in graded-lexicographic order.

    The zero polynomial is returned unchanged.
    """
    if not p:
        return p
    coeffs = p.values()
    den = reduce(ilcm, (int(c.denominator) for c in coeffs), 1)
    num = reduce(igcd, (int(c.numerator) for c in coeffs), 0)
    if p.LC < 0:
        den = -den
    return p * QQ(den, num)


def _unify(p, q):
    if p.ring == q.ring:
        return p, q
    ring = combined_ring(p, q)
    return adjoin(p, ring), adjoin(q, ring)


def gcd_multivariate(p, q):
    """
    Normalized greatest common divisor of two polynomials.

    ``gcd(p, 0)`` is ``normalize(p)`` and ``gcd(0, 0)`` is zero.

    See Also
    --------
    normalize : The normalization applied to the result.
    """
    p, q = _unify(p, q)
    if not q:
        return normalize(p)
    if not p:
        return normalize(q)
    return normalize(p.gcd(q))


def squarefree_part(p):
    r"""
    Remove repeated factors from `p`.

    Computes :math:`p / \gcd(p, \partial_1 p, \ldots, \partial_n p)`,
    which over a field of characteristic zero is the product of the
    distinct irreducible factors of `p`.

    Raises
    ------
    ValueError
        If `p` is zero.
    """
    if not p:
        raise ValueError('The square-free part of zero is undefined')
    g = p
    for x in p.ring.gens:
        g = gcd_multivariate(g, p.diff(x))
    return normalize(exact_div(p, g))


def exact_div(p, q):
    """
    The exact quotient ``p / q``.

    Raises
    ------
    ValueError
        If `q` is zero.
    NotDivisible
        If `q` does not divide `p` over the rationals.
    """
    p, q = _unify(p, q)
    if not q:
        raise ValueError('Division by the zero polynomial')
    try:
        return p.exquo(q)
    except ExactQuotientFailed:
        raise NotDivisible(f'{format_polynomial(q)} does not divide '
                           f'{format_polynomial(p)}') from None


def substitute(p, images, ring=None):
    """
    Compose `p` with the substitution `images`.

    Parameters
    ----------
    p : ~sympy.polys.rings.PolyElement
        The polynomial to transform.
    images : dict
        Maps variable names of `p` to polynomials (or rationals). All
        images are moved into a common ring.
    ring : ~sympy.polys.rings.PolyRing, optional
        The ring of the result. Defaults to the union of the rings of
        the images.

    Return
    ------
    r : ~sympy.polys.rings.PolyElement
        The expanded composition.

    Raises
    ------
    ValueError
        If a variable that occurs in `p` has no image.
    """
    if ring is None:
        rings = [v for v in images.values() if isinstance(v, PolyElement)]
        ring = combined_ring(*rings) if rings else p.ring
    names = variables(p)
    used = [any(m[i] for m in p) for i in range(len(names))]
    gens = []
    for name, occurs in zip(names, used):
        if name in images:
            image = images[name]
            if isinstance(image, PolyElement):
                image = adjoin(image, ring)
            else:
                image = ring.ground_new(image)
            gens.append(image)
        elif occurs:
            raise ValueError(f'No image for variable {name}')
        else:
            gens.append(ring.zero)
    powers = [[ring.one] for _ in gens]
    result = ring.zero
    for monom, coeff in p.items():
        term = ring.ground_new(coeff)
        for i, e in enumerate(monom):
            if e:
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * gens[i])
                term = term * cache[e]
        result += term
    return result


def _univariate(p):
    """Index of the only variable of `p`, or ``None`` for constants."""
    used = [i for i in range(p.ring.ngens) if any(m[i] for m in p)]
    if len(used) > 1:
        raise ValueError(f'{format_polynomial(p)} is not univariate')
    return used[0] if used else None


def _sign_variations(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def sturm_all_roots_real(p):
    """
    Decide whether a univariate polynomial has only real zeros.

    The square-free part of `p` is run through an exact Sturm sequence
    and its count of distinct real roots, read from sign variations of
    the leading coefficients at :math:`\\pm\\infty`, is compared with
    its degree. Constants have no zeros and pass.

    Raises
    ------
    ValueError
        If `p` is zero or depends on more than one variable.
    """
    if not p:
        raise ValueError('The zero polynomial has no root count')
    i = _univariate(p)
    if i is None:
        return True
    gen = p.ring.symbols[i]
    f = Poly(p.as_expr(), gen, domain=QQ).sqf_part()
    seq = f.sturm()
    plus = [s.LC() for s in seq]
    minus = [s.LC() * (-1) ** s.degree() for s in seq]
    roots = _sign_variations(minus) - _sign_variations(plus)
    return roots == f.degree()


def evaluate_exact(p, point):
    """
    Exact value of `p` at a rational point.

    `point` is either a sequence in ring variable order or a mapping
    from variable names to values.
    """
    if isinstance(point, dict):
        point = [point[n] for n in variables(p)]
    point = [QQ.convert(v) for v in point]
    if len(point) != p.ring.ngens:
        raise ValueError(f'Expected {p.ring.ngens} coordinates, got '
                         f'{len(point)}')
    total = QQ.zero
    for monom, coeff in p.items():
        total += coeff * reduce(mul, (v ** e for v, e in zip(point, monom)
                                      if e), QQ.one)
    return total


def evaluate_float(p, points):
    """
    Evaluate `p` at an array of floating point points.

    Parameters
    ----------
    p : ~sympy.polys.rings.PolyElement
        The polynomial.
    points : array-like
        Shape ``(N, n)`` or ``(n,)``, with the last axis in ring
        variable order.

    Return
    ------
    values : ~numpy.ndarray
        Shape ``(N,)``, or a 0-d array for a single point.
    """
    points = array(points, dtype=float64)
    single = points.ndim == 1
    if single:
        points = points[None, :]
    if points.shape[-1] != p.ring.ngens:
        raise ValueError(f'Expected points with {p.ring.ngens} '
                         f'coordinates, got shape {points.shape}')
    if not p:
        values = zeros(points.shape[0])
    else:
        monoms = array(list(p.keys()), dtype=float64)
        coeffs = array([int(c.numerator) / int(c.denominator)
                        for c in p.values()])
        values = prod(points[:, None, :] ** monoms[None, :, :],
                      axis=-1) @ coeffs
    return values[0] if single else values


def factor_squarefree(p):
    """
    Distinct normalized irreducible factors of `p` over the rationals.

    Constant factors are dropped, so a nonzero constant has no factors.
    """
    if not p:
        raise ValueError('Cannot factor the zero polynomial')
    _, factors = p.factor_list()
    out = [normalize(f) for f, _ in factors if total_degree(f) > 0]
    return sorted(out, key=lambda f: (total_degree(f), format_polynomial(f)))


def split_variables(p, names, inner):
    """
    Group the terms of `p` by the monomials in `names`.

    Parameters
    ----------
    p : ~sympy.polys.rings.PolyElement
        A polynomial in a ring containing `names` and the variables of
        `inner`.
    names : sequence of str
        The outer variables.
    inner : ~sympy.polys.rings.PolyRing
        The ring of the coefficients, holding the remaining variables.

    Return
    ------
    parts : dict
        Maps exponent tuples over `names` to nonzero polynomials in
        `inner`.
    """
    own = variables(p)
    outer = [own.index(n) if n in own else None for n in names]
    inner_names = variables(inner)
    rest = []
    for i, n in enumerate(own):
        if n in names:
            continue
        if n in inner_names:
            rest.append((i, inner_names.index(n)))
        elif any(m[i] for m in p):
            raise ValueError(f'Variable {n} belongs to neither side')
    parts = {}
    for monom, coeff in p.items():
        key = tuple(0 if i is None else monom[i] for i in outer)
        sub = [0] * inner.ngens
        for i, j in rest:
            sub[j] = monom[i]
        part = parts.setdefault(key, {})
        part[tuple(sub)] = coeff
    return {k: inner.from_dict(v) for k, v in parts.items()}


def _domain_matrix(rows, ncols=None):
    rows = [[QQ.convert(v) for v in row] for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def rational_rref(rows, ncols=None):
    """
    Reduced row echelon form over the rationals.

    Return
    ------
    rref : list
        The nonzero rows of the echelon form, as lists of ``QQ``.
    pivots : tuple
        Pivot column of each returned row.
    """
    if not rows:
        return [], ()
    reduced, pivots = _domain_matrix(rows, ncols).rref()
    return reduced.to_list()[:len(pivots)], tuple(pivots)


def rational_rank(rows, ncols=None):
    """
    Rank of a rational matrix.
    """
    return len(rational_rref(rows, ncols)[1])


def rational_nullspace(rows, ncols):
    """
    Basis of the right kernel of a rational matrix with `ncols` columns.

    One vector per non-pivot column of the echelon form, with a 1 in
    that column.
    """
    reduced, pivots = rational_rref(rows, ncols)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [QQ.zero] * ncols
        v[free] = QQ.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis


def rational_inverse(rows):
    """
    Inverse of a square rational matrix.

    Raises
    ------
    ValueError
        If the matrix is singular.
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError('Expected a square matrix')
    augmented = [list(row) + [QQ.one if i == j else QQ.zero
                              for j in range(n)]
                 for i, row in enumerate(rows)]
    reduced, pivots = rational_rref(augmented)
    if pivots != tuple(range(n)):
        raise ValueError('Matrix is singular')
    return [row[n:] for row in reduced]


def rational_solve(a, b):
    """
    Solve ``a @ x = b`` for the unique `x`.

    `a` must have full column rank; it may have more rows than columns.
    `b` is a matrix (list of rows) so several right hand sides are
    solved at once.

    Raises
    ------
    ValueError
        If the system is inconsistent or the solution is not unique.
    """
    if len(a) != len(b):
        raise ValueError('Row counts of a and b differ')
    if not a:
        raise ValueError('Empty system')
    n = len(a[0])
    k = len(b[0]) if b else 0
    reduced, pivots = rational_rref([list(r) + list(s) for r, s in zip(a, b)],
                                    n + k)
    if any(c >= n for c in pivots):
        raise ValueError('Inconsistent linear system')
    if pivots != tuple(range(n)):
        raise ValueError('Linear system has no unique solution')
    return [row[n:] for row in reduced]


def polynomial_det(matrix):
    """
    Determinant of a square matrix of polynomials from a common ring.

    Uses fraction-free Bareiss elimination with row swaps on zero
    pivots. All quotients are exact. An empty matrix has determinant 1,
    returned as the integer ``1``.
    """
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError('Expected a square matrix')
    ring = a[0][0].ring
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exquo(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def polynomial_adjugate(matrix):
    """
    Adjugate (transposed cofactor matrix) of a square polynomial matrix.

    Satisfies ``M @ adj(M) == det(M) * I`` identically.
    """
    n = len(matrix)
    if n == 0:
        return []
    ring = matrix[0][0].ring
    if n == 1:
        return [[ring.one]]
    adj = [[None] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        minor = [[matrix[r][c] for c in range(n) if c != j]
                 for r in range(n) if r != i]
        cofactor = polynomial_det(minor)
        adj[j][i] = cofactor if (i + j) % 2 == 0 else -cofactor
    return adj
