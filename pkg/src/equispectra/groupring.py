r"""
Compact groups presented through their coordinate rings.

A :py:class:`GroupSpec` is one of four kinds:

``SO2``
    Coordinates ``(c, s)`` with relation :math:`c^2 + s^2 - 1`.
``O2``
    Coordinates ``(c, s, e)`` with relations :math:`c^2 + s^2 - 1` and
    :math:`e^2 - 1`. The element ``(c, s, e)`` is the matrix
    :math:`\begin{pmatrix} c & -e s \\ s & e c \end{pmatrix}`, so
    ``e = 1`` is the rotation coset and ``e = -1`` the reflection coset
    through ``diag(1, -1)``.
``SU2``
    Coordinates ``(x, y, s, t)`` of
    :math:`\begin{pmatrix} x + iy & -s + it \\ s + it & x - iy \end{pmatrix}`
    with relation :math:`x^2 + y^2 + s^2 + t^2 - 1`.
``Finite``
    A finite group of orthogonal rational matrices, with the matrix
    entries ``g1_1, g1_2, ...`` as coordinates. Functions on a finite
    group are handled by evaluation at its elements.

Representative functions (:py:data:`RingElement`) are polynomials in
the coordinates, kept in a normal form that eliminates the square of
the last coordinate of each relation. Haar integrals of monomials are
exact closed forms, so every integral over the group is an exact
rational.

Several copies of the coordinates can coexist in one polynomial ring.
A copy is named by a suffix appended to every coordinate: ``c_g`` is
the ``c`` coordinate of the ``_g`` copy. Functions that accept a
`suffix` operate on the copy it names and leave all other variables
alone.
"""

import logging

from numpy import array, float64
from sympy.polys.domains import QQ

from .errors import GroupError
from .polyring import (
    adjoin, combined_ring, evaluate_exact, format_polynomial,
    parse_polynomial, polynomial_ring, split_variables, substitute,
    variables
)
from .util import rational_matrix, rational_vector


__all__ = [
    'GroupSpec', 'KINDS', 'normal_form', 'haar_integrate',
    'inverse_substitute', 'left_translate', 'is_zero', 'sample_elements',
    'action_at', 'action_at_float', 'orbit_center', 'so2_rotation',
    'o2_quartic_moments', 'QUARTIC_BASIS',
    'su2_hermitian', 'trivial_group', 'finite_group', 'copy_ring',
    'rename_copy',
]


logger = logging.getLogger(__name__)


#: Supported group kinds.
KINDS = ('Finite', 'SO2', 'O2', 'SU2')

_COORDINATES = {
    'SO2': ('c', 's'),
    'O2': ('c', 's', 'e'),
    'SU2': ('x', 'y', 's', 't'),
}


def _finite_coordinates(n):
    return tuple(f'g{i + 1}_{j + 1}' for i in range(n) for j in range(n))


class GroupSpec:
    """
    A compact group and its linear action on :math:`\\mathbb{R}^n`.

    Parameters
    ----------
    kind : {'Finite', 'SO2', 'O2', 'SU2'}
        The group.
    n : int
        Dimension of the space acted on.
    action : sequence of sequences, optional
        The ``n x n`` matrix :math:`A(g)` of polynomials (or polynomial
        strings) in the coordinates. Ignored for ``Finite`` groups,
        whose elements act by themselves.
    elements : sequence, optional
        For ``Finite`` groups only: the group elements as ``n x n``
        orthogonal rational matrices, closed under products and
        inverses.
    name : str, optional
        A label used in reports.

    Attributes
    ----------
    coordinates : tuple of str
        Names of the coordinate ring variables.
    ring : ~sympy.polys.rings.PolyRing
        The ring of the coordinates.
    relations : tuple
        Generators of the relation ideal.
    inverse_map : dict
        Images of the coordinates under :math:`g \\mapsto g^{-1}`.
    is_orthogonal : bool
        Whether :math:`A(g) A(g)^T \\equiv I` holds. Actions that are not
        orthogonal in their coordinates are allowed; the pipeline always
        uses :math:`A(g^{-1})` through `inverse_map`.

    Raises
    ------
    GroupError
        If the action is not a homomorphism on inverses
        (:math:`A(g) A(g^{-1}) \\not\\equiv I`) or the finite element
        set is not an orthogonal group.
    """
    def __init__(self, kind, n, action=None, elements=None, name=None):
        if kind not in KINDS:
            raise GroupError(f'Unknown group kind {kind!r}; expected one '
                             f'of {KINDS}')
        n = int(n)
        if n < 1:
            raise ValueError(f'Action dimension must be positive, got {n}')
        self.kind = kind
        self.n = n
        self.name = name or kind

        if kind == 'Finite':
            if not elements:
                raise GroupError('A finite group needs its elements')
            self.coordinates = _finite_coordinates(n)
        else:
            if elements:
                raise GroupError(f'{kind} does not take explicit elements')
            if action is None:
                raise GroupError(f'{kind} needs an action matrix')
            self.coordinates = _COORDINATES[kind]
        self.ring = polynomial_ring(self.coordinates)
        gens = dict(zip(self.coordinates, self.ring.gens))

        if kind == 'Finite':
            self.elements = tuple(self._check_element(g) for g in elements)
            self._check_closed()
            self.action = [[gens[f'g{i + 1}_{j + 1}'] for j in range(n)]
                           for i in range(n)]
            self.relations = ()
            self.inverse_map = {f'g{i + 1}_{j + 1}': gens[f'g{j + 1}_{i + 1}']
                                for i in range(n) for j in range(n)}
            self._reductions = ()
            self.components = ()
        else:
            self.elements = ()
            one = self.ring.one
            c, s = gens.get('c'), gens['s']
            if kind == 'SO2':
                self.relations = (c**2 + s**2 - one,)
                self.inverse_map = {'c': c, 's': -s}
                self._reductions = (('s', one - c**2),)
                self.components = ()
            elif kind == 'O2':
                e = gens['e']
                self.relations = (c**2 + s**2 - one, e**2 - one)
                self.inverse_map = {'c': c, 's': -e * s, 'e': e}
                self._reductions = (('s', one - c**2), ('e', one))
                self.components = ({'e': QQ(1)}, {'e': QQ(-1)})
            else:
                x, y, t = gens['x'], gens['y'], gens['t']
                self.relations = (x**2 + y**2 + s**2 + t**2 - one,)
                self.inverse_map = {'x': x, 'y': -y, 's': -s, 't': -t}
                self._reductions = (('t', one - x**2 - y**2 - s**2),)
                self.components = ()
            self.action = self._parse_action(action)
            self._check_action()

        self.is_orthogonal = self._orthogonal()
        logger.debug('Constructed %s group %r acting on R^%d (orthogonal=%s)',
                     kind, self.name, n, self.is_orthogonal)

    def __repr__(self):
        return f'GroupSpec({self.kind!r}, n={self.n}, name={self.name!r})'

    def names(self, suffix=''):
        """
        Coordinate names of the copy named by `suffix`.
        """
        return tuple(f'{c}{suffix}' for c in self.coordinates)

    @property
    def order(self):
        """
        Number of elements of a finite group, ``None`` otherwise.
        """
        return len(self.elements) if self.kind == 'Finite' else None

    @property
    def multiplication_law(self):
        """
        Coordinates of :math:`g h` as polynomials in the ``_g`` and ``_h``
        copies of the coordinates.
        """
        ring = copy_ring(self, '_g', '_h')
        a = {c: _gen(ring, f'{c}_g')
             for c in self.coordinates}
        b = {c: _gen(ring, f'{c}_h') for c in self.coordinates}
        return self.multiply(a, b)

    def multiply(self, a, b):
        """
        Coordinates of the product of two elements given by coordinate
        images `a` and `b` (dicts of polynomials in a common ring).
        """
        if self.kind == 'SO2':
            return {'c': a['c'] * b['c'] - a['s'] * b['s'],
                    's': a['s'] * b['c'] + a['c'] * b['s']}
        if self.kind == 'O2':
            return {'c': a['c'] * b['c'] - a['e'] * a['s'] * b['s'],
                    's': a['s'] * b['c'] + a['e'] * a['c'] * b['s'],
                    'e': a['e'] * b['e']}
        if self.kind == 'SU2':
            x1, y1, s1, t1 = (a[k] for k in 'xyst')
            x2, y2, s2, t2 = (b[k] for k in 'xyst')
            return {'x': x1 * x2 - y1 * y2 - s1 * s2 - t1 * t2,
                    'y': x1 * y2 + y1 * x2 - s1 * t2 + t1 * s2,
                    's': s1 * x2 - t1 * y2 + x1 * s2 + y1 * t2,
                    't': s1 * y2 + t1 * x2 + x1 * t2 - y1 * s2}
        n = self.n
        return {f'g{i + 1}_{j + 1}': sum((a[f'g{i + 1}_{k + 1}'] *
                                          b[f'g{k + 1}_{j + 1}']
                                          for k in range(n)),
                                         next(iter(a.values())).ring.zero)
                for i in range(n) for j in range(n)}

    def inverse_action(self, ring=None):
        """
        The matrix :math:`A(g^{-1})`, optionally moved into `ring`.
        """
        inv = [[substitute(p, self.inverse_map, self.ring) for p in row]
               for row in self.action]
        inv = [[normal_form(self, p) for p in row] for row in inv]
        if ring is not None:
            inv = [[adjoin(p, ring) for p in row] for row in inv]
        return inv

    def _parse_action(self, action):
        rows = [[parse_polynomial(p, self.ring) if not hasattr(p, 'ring')
                 else adjoin(p, self.ring) for p in row] for row in action]
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise GroupError(f'Action must be a {self.n}x{self.n} matrix')
        return [[normal_form(self, p) for p in row] for row in rows]

    def _check_action(self):
        inv = self.inverse_action()
        for i in range(self.n):
            for j in range(self.n):
                entry = sum((self.action[i][k] * inv[k][j]
                             for k in range(self.n)), self.ring.zero)
                if i == j:
                    entry -= self.ring.one
                if not is_zero(self, entry):
                    raise GroupError(
                        f'A(g) A(g^-1) differs from the identity at '
                        f'({i}, {j}): {format_polynomial(normal_form(self, entry))}'
                    )
        for c in self.coordinates:
            twice = substitute(self.inverse_map[c], self.inverse_map,
                               self.ring)
            if not is_zero(self, twice - _gen(self.ring, c)):
                raise GroupError(f'Inverse map is not an involution on {c}')

    def _check_element(self, g):
        g = rational_matrix(g)
        n = self.n
        if len(g) != n or any(len(row) != n for row in g):
            raise GroupError(f'Group elements must be {n}x{n} matrices')
        for i in range(n):
            for j in range(n):
                dot = sum((g[k][i] * g[k][j] for k in range(n)), QQ.zero)
                if dot != (QQ.one if i == j else QQ.zero):
                    raise GroupError('Finite group elements must be '
                                     'orthogonal')
        return tuple(tuple(row) for row in g)

    def _check_closed(self):
        elements = set(self.elements)
        n = self.n
        for g in self.elements:
            if tuple(zip(*g)) not in elements:
                raise GroupError('Finite group is not closed under inverses')
            for h in self.elements:
                gh = tuple(tuple(sum((g[i][k] * h[k][j] for k in range(n)),
                                     QQ.zero) for j in range(n))
                           for i in range(n))
                if gh not in elements:
                    raise GroupError('Finite group is not closed under '
                                     'products')

    def _orthogonal(self):
        if self.kind == 'Finite':
            return True
        for i in range(self.n):
            for j in range(self.n):
                entry = sum((self.action[i][k] * self.action[j][k]
                             for k in range(self.n)), self.ring.zero)
                if i == j:
                    entry -= self.ring.one
                if not is_zero(self, entry):
                    return False
        return True

    def element_values(self, element):
        """
        Map coordinate names to the values of a group element.
        """
        return dict(zip(self.coordinates, element))

    def _element_tuple(self, g):
        """Coordinate tuple of a finite group element."""
        return tuple(v for row in g for v in row)


def _gen(ring, name):
    return ring.gens[variables(ring).index(name)]


def copy_ring(G, *suffixes, extra=()):
    """
    Ring holding the copies of the coordinates named by `suffixes`,
    followed by the variable names in `extra`.
    """
    names = [n for suffix in suffixes for n in G.names(suffix)]
    clash = set(names) & set(extra)
    if clash:
        raise GroupError(f'Variables {sorted(clash)} clash with group '
                         'coordinates')
    return combined_ring(names, list(extra))


def rename_copy(G, e, source, target, ring=None):
    """
    Rename the `source` copy of the coordinates in `e` to `target`.

    Variables outside the copy keep their names. The result lives in
    `ring`, by default the ring of `e` with the names replaced.
    """
    own = variables(e)
    mapping = {f'{c}{source}': f'{c}{target}' for c in G.coordinates}
    if ring is None:
        ring = polynomial_ring([mapping.get(n, n) for n in own])
    targets = variables(ring)
    images = {n: _gen(ring, mapping.get(n, n)) for n in own
              if mapping.get(n, n) in targets}
    return substitute(e, images, ring)


def _reduce(e, index, rhs):
    ring = e.ring
    powers = [ring.one]
    result = ring.zero
    for monom, coeff in e.items():
        q, r = divmod(monom[index], 2)
        while len(powers) <= q:
            powers.append(powers[-1] * rhs)
        monom = monom[:index] + (r,) + monom[index + 1:]
        result += ring.term_new(monom, coeff) * powers[q]
    return result


def _foreign(G, e, suffix):
    names = G.names(suffix)
    return [n for i, n in enumerate(variables(e))
            if n not in names and any(m[i] for m in e)]


def normal_form(G, e, suffix='', extra=False):
    """
    Canonical representative of `e` modulo the relation ideal.

    For ``SO2`` and ``O2``, :math:`s^2 \\to 1 - c^2`; for ``O2`` also
    :math:`e^2 \\to 1`; for ``SU2``, :math:`t^2 \\to 1 - x^2 - y^2 - s^2`.
    Finite groups are left unchanged, use :py:func:`is_zero` to compare
    their functions.

    Parameters
    ----------
    G : GroupSpec
        The group.
    e : ~sympy.polys.rings.PolyElement
        A polynomial in the copy of the coordinates named by `suffix`.
    suffix : str
        The copy to reduce.
    extra : bool
        Allow `e` to depend on variables outside the copy. They are
        carried along unchanged.

    Return
    ------
    e : ~sympy.polys.rings.PolyElement
        The reduced polynomial. A plain ring element (no suffix, no
        extra variables) is returned in ``G.ring``.

    Raises
    ------
    GroupError
        If `e` depends on foreign variables and `extra` is not set.
    """
    if not extra:
        foreign = _foreign(G, e, suffix)
        if foreign:
            raise GroupError(f'Foreign variables {foreign} in a '
                             f'{G.kind} ring element')
        if not suffix:
            e = adjoin(e, G.ring)
    names = G.names(suffix)
    if any(n not in variables(e) for n in names):
        e = adjoin(e, combined_ring(e, names))
    own = variables(e)
    for coordinate, rhs in G._reductions:
        rhs = rename_copy(G, rhs, '', suffix, e.ring)
        e = _reduce(e, own.index(f'{coordinate}{suffix}'), rhs)
    return e


def _double_factorial(k):
    r = 1
    while k > 1:
        r *= k
        k -= 2
    return r


def _circle_moment(a, b):
    if a % 2 or b % 2:
        return QQ.zero
    return QQ(_double_factorial(a - 1) * _double_factorial(b - 1),
              _double_factorial(a + b))


def _sphere3_moment(exps):
    if any(a % 2 for a in exps):
        return QQ.zero
    num = 1
    for a in exps:
        num *= _double_factorial(a - 1)
    den = 1
    for j in range(sum(exps) // 2):
        den *= 4 + 2 * j
    return QQ(num, den)


def _monomial_integral(G, exps):
    if G.kind == 'SO2':
        return _circle_moment(*exps)
    if G.kind == 'O2':
        c, s, e = exps
        return QQ.zero if e % 2 else _circle_moment(c, s)
    return _sphere3_moment(exps)


def _integrate_coordinates(G, e):
    """Haar integral of a polynomial in ``G.ring``."""
    if G.kind == 'Finite':
        total = QQ.zero
        for g in G.elements:
            total += evaluate_exact(e, G._element_tuple(g))
        return total / len(G.elements)
    total = QQ.zero
    for monom, coeff in e.items():
        total += coeff * _monomial_integral(G, monom)
    return total


def haar_integrate(G, e, suffix='', ring=None):
    """
    Exact integral of `e` over `G` for the normalized Haar measure.

    Monomials integrate by closed forms: Wallis-type moments
    :math:`\\int c^a s^b = (a-1)!!(b-1)!!/(a+b)!!` on the circle (zero
    when an exponent is odd), the average of the two cosets for ``O2``,
    and moments of the uniform measure on :math:`S^3` for ``SU2``.
    Finite groups average over their elements.

    Parameters
    ----------
    G : GroupSpec
        The group.
    e : ~sympy.polys.rings.PolyElement
        The integrand. Any representative of its coset works, since
        the closed forms integrate functions on the group.
    suffix : str
        The copy of the coordinates to integrate over.
    ring : ~sympy.polys.rings.PolyRing, optional
        When given, `e` may also depend on the variables of `ring`; the
        integral is taken coefficient-wise and returned as a polynomial
        in `ring`.

    Return
    ------
    value : ~sympy.polys.domains.QQ or ~sympy.polys.rings.PolyElement
        The integral.
    """
    if ring is None:
        foreign = _foreign(G, e, suffix)
        if foreign:
            raise GroupError(f'Integrand depends on {foreign}; pass the '
                             'ring of the remaining variables')
        if suffix:
            e = rename_copy(G, e, suffix, '', G.ring)
        return _integrate_coordinates(G, adjoin(e, G.ring))
    inner = copy_ring(G, suffix)
    parts = split_variables(e, variables(ring), inner)
    terms = {}
    for monom, part in parts.items():
        if suffix:
            part = rename_copy(G, part, suffix, '', G.ring)
        value = _integrate_coordinates(G, adjoin(part, G.ring))
        if value:
            terms[monom] = value
    return ring.from_dict(terms)


def is_zero(G, e, suffix=''):
    """
    Whether `e` vanishes identically on the group.

    Continuous groups compare the normal form with zero; finite groups
    evaluate the coordinates named by `suffix` at every element. Other
    variables of `e` are treated as indeterminates.
    """
    if G.kind != 'Finite':
        return not normal_form(G, e, suffix, extra=True)
    own = variables(e)
    names = G.names(suffix)
    rest = [n for n in own if n not in names]
    ring = polynomial_ring(rest) if rest else None
    for g in G.elements:
        values = dict(zip(names, G._element_tuple(g)))
        if ring is not None:
            images = {n: values[n] if n in values else _gen(ring, n)
                      for n in own}
            if substitute(e, images, ring):
                return False
        elif evaluate_exact(e, [values[n] for n in own]):
            return False
    return True


def inverse_substitute(G, e, suffix=''):
    """
    The function :math:`g \\mapsto e(g^{-1})`, in normal form.

    Variables outside the copy named by `suffix` are left alone.
    """
    own = variables(e)
    ring = e.ring
    images = {n: _gen(ring, n) for n in own}
    for c in G.coordinates:
        name = f'{c}{suffix}'
        if name in own:
            images[name] = rename_copy(G, G.inverse_map[c], '', suffix, ring)
    return normal_form(G, substitute(e, images, ring), suffix, extra=True)


def left_translate(G, e):
    """
    The two-copy function :math:`(g, h) \\mapsto e(g^{-1} h)`.

    Parameters
    ----------
    G : GroupSpec
        The group.
    e : ~sympy.polys.rings.PolyElement
        A ring element in the plain coordinates.

    Return
    ------
    t : ~sympy.polys.rings.PolyElement
        A polynomial in the ``_g`` and ``_h`` copies, in normal form in
        each copy.

    Examples
    --------
    For ``SO2``, ``c`` translates to ``c_g*c_h + s_g*s_h``.
    """
    ring = copy_ring(G, '_g', '_h')
    g = {c: _gen(ring, f'{c}_g') for c in G.coordinates}
    h = {c: _gen(ring, f'{c}_h') for c in G.coordinates}
    ginv = {c: substitute(G.inverse_map[c], g, ring) for c in G.coordinates}
    result = substitute(adjoin(e, G.ring), G.multiply(ginv, h), ring)
    result = normal_form(G, result, '_g', extra=True)
    return normal_form(G, result, '_h', extra=True)


def _rational_point(rng, bound):
    num = int(rng.integers(-bound, bound + 1))
    den = int(rng.integers(1, bound + 1))
    return QQ(num, den)


def sample_elements(G, count, rng, bound=12):
    """
    Exact rational group elements.

    Circles are sampled through the rational parametrization
    :math:`((1 - u^2)/(1 + u^2), 2u/(1 + u^2))` and :math:`S^3` through
    inverse stereographic projection of a rational point of
    :math:`\\mathbb{R}^3`. The identity always comes first. ``O2``
    alternates between its two cosets. Finite groups return all of
    their elements regardless of `count`.

    Parameters
    ----------
    G : GroupSpec
        The group.
    count : int
        Number of elements for continuous groups.
    rng : ~numpy.random.Generator
        Source of randomness.
    bound : int
        Bound on the numerators and denominators of the parameters.

    Return
    ------
    elements : list of tuple
        Coordinate tuples of exact rationals.
    """
    if G.kind == 'Finite':
        return [G._element_tuple(g) for g in G.elements]
    out = []
    for k in range(count):
        if G.kind in ('SO2', 'O2'):
            u = QQ.zero if k == 0 else _rational_point(rng, bound)
            den = 1 + u * u
            point = ((1 - u * u) / den, 2 * u / den)
            if G.kind == 'O2':
                point += (QQ(1) if k % 2 == 0 else QQ(-1),)
        else:
            w = [QQ.zero] * 3 if k == 0 else \
                [_rational_point(rng, bound) for _ in range(3)]
            norm = sum(v * v for v in w)
            den = 1 + norm
            point = ((1 - norm) / den,) + tuple(2 * v / den for v in w)
        out.append(point)
    return out


def action_at(G, element):
    """
    The rational matrix :math:`A(g)` at a coordinate tuple.
    """
    if G.kind == 'Finite':
        n = G.n
        return [list(element[i * n:(i + 1) * n]) for i in range(n)]
    return [[evaluate_exact(p, element) for p in row] for row in G.action]


def action_at_float(G, element):
    """
    :py:func:`action_at` as a floating point array.
    """
    return array([[int(v.numerator) / int(v.denominator) for v in row]
                  for row in action_at(G, element)], dtype=float64)


def orbit_center(G, s):
    """
    Center of mass :math:`\\int_G A(g) s \\, d\\mu(g)` of the orbit of `s`.

    The result is a fixed point of the action. It is the point used to
    translate a pencil whose base point is not interior.

    Parameters
    ----------
    G : GroupSpec
        The group.
    s : sequence
        A rational point of :math:`\\mathbb{R}^n`.

    Return
    ------
    center : list
        Exact rational coordinates.
    """
    s = rational_vector(s)
    if len(s) != G.n:
        raise ValueError(f'Expected a point of R^{G.n}, got {len(s)} '
                         'coordinates')
    center = []
    for row in G.action:
        image = sum((p * v for p, v in zip(row, s)), G.ring.zero)
        center.append(haar_integrate(G, image))
    return center


def so2_rotation():
    """
    ``SO2`` acting on :math:`\\mathbb{R}^2` by rotations.
    """
    return GroupSpec('SO2', 2, [['c', '-s'], ['s', 'c']], name='so2-rotation')


#: The basis of binary quartics acted on by :py:func:`o2_quartic_moments`.
QUARTIC_BASIS = ((4, 0), (3, 1), (2, 2), (1, 3), (0, 4))


def o2_quartic_moments():
    """
    ``O2`` acting on linear functionals on binary quartics.

    A functional :math:`\\ell` has coordinates :math:`\\ell_i =
    \\ell(b_i)` in the basis :math:`(x^4, x^3 y, x^2 y^2, x y^3, y^4)`
    and :math:`(g \\cdot \\ell)(p) = \\ell(p \\circ g)`, where `g` acts on
    :math:`(x, y)` by its defining matrix.
    """
    base = polynomial_ring(_COORDINATES['O2'])
    ring = combined_ring(base, ['X', 'Y'])
    c, s, e, X, Y = ring.gens
    gx = c * X - e * s * Y
    gy = s * X + e * c * Y
    index = {m: k for k, m in enumerate(QUARTIC_BASIS)}
    action = []
    for a, b in QUARTIC_BASIS:
        parts = split_variables(gx**a * gy**b, ('X', 'Y'), base)
        row = [base.zero] * len(QUARTIC_BASIS)
        for monom, part in parts.items():
            row[index[monom]] = part
        action.append(row)
    return GroupSpec('O2', 5, action, name='o2-quartic-moments')


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cmatmul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            re, im = a[i][0][0].ring.zero, a[i][0][0].ring.zero
            for k in range(n):
                pr, pi = _cmul(a[i][k], b[k][j])
                re, im = re + pr, im + pi
            row.append((re, im))
        out.append(row)
    return out


def su2_hermitian():
    """
    ``SU2`` acting by conjugation :math:`H \\mapsto g H g^*` on Hermitian
    :math:`2 \\times 2` matrices
    :math:`\\begin{pmatrix} a_{11} & a_{12} + i b_{12} \\\\ a_{12} - i b_{12} & a_{22} \\end{pmatrix}`
    in the coordinates :math:`(a_{11}, a_{12}, a_{22}, b_{12})`.
    """
    ring = polynomial_ring(_COORDINATES['SU2'])
    x, y, s, t = ring.gens
    zero, one = ring.zero, ring.one
    g = [[(x, y), (-s, t)], [(s, t), (x, -y)]]
    gstar = [[(x, -y), (s, -t)], [(-s, -t), (x, y)]]
    units = [
        [[(one, zero), (zero, zero)], [(zero, zero), (zero, zero)]],
        [[(zero, zero), (one, zero)], [(one, zero), (zero, zero)]],
        [[(zero, zero), (zero, zero)], [(zero, zero), (one, zero)]],
        [[(zero, zero), (zero, one)], [(zero, -one), (zero, zero)]],
    ]
    columns = []
    for h in units:
        r = _cmatmul(_cmatmul(g, h), gstar)
        columns.append([r[0][0][0], r[0][1][0], r[1][1][0], r[0][1][1]])
    action = [[columns[j][i] for j in range(4)] for i in range(4)]
    return GroupSpec('SU2', 4, action, name='su2-hermitian')


def finite_group(elements, name=None):
    """
    A finite group of orthogonal rational matrices acting on
    :math:`\\mathbb{R}^n` by matrix multiplication.
    """
    elements = [rational_matrix(g) for g in elements]
    if not elements:
        raise GroupError('A finite group needs at least one element')
    return GroupSpec('Finite', len(elements[0]), elements=elements,
                     name=name)


def trivial_group(n):
    """
    The trivial group acting on :math:`\\mathbb{R}^n`.
    """
    identity = [[QQ.one if i == j else QQ.zero for j in range(n)]
                for i in range(n)]
    return finite_group([identity], name='trivial')
