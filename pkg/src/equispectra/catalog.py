r"""
Built-in worked examples with their golden documents.

``disk-so2``
    The unit disk :math:`\{1 - x_1^2 - x_2^2 \ge 0\}` from a
    :math:`2 \times 2` pencil, under rotations.
``hermitian-su2``
    Positive-semidefinite Hermitian :math:`2 \times 2` matrices, described
    by a :math:`3 \times 3` real pencil, under conjugation by ``SU2``. The
    pencil is shifted by the identity to make it based, and the result is
    shifted back.
``quartic-o2``
    The moment cone of binary quartics under ``O2``. The published
    equivariant pencil is verified rather than constructed: its entries
    involve :math:`\sqrt{2}`, so the rational congruent form
    :math:`K \bar{M} K` with :math:`K = \operatorname{diag}(\sqrt{2}, 1, 1)`
    is checked instead.

The golden documents hold the published matrices. Comparisons are
semantic: polynomial strings are compared as polynomials.
"""

from dataclasses import dataclass
import logging

from .document import description_to_document, diff_documents
from .equivariant import (
    Certificate, equivariance_check, equivariantize, set_equality_check,
    shift, verified_description
)
from .groupring import o2_quartic_moments, so2_rotation, su2_hermitian
from .pencil import AffinePencil, translate
from .polyring import parse_polynomial, polynomial_ring


__all__ = [
    'Example', 'EXAMPLES', 'get_example', 'BUILTIN_GROUPS', 'builtin_group',
    'disk_pencil', 'hermitian_pencil', 'quartic_pencil',
    'quartic_description', 'construct', 'run_example',
]


logger = logging.getLogger(__name__)


#: Groups available by name wherever a group document is expected.
BUILTIN_GROUPS = {
    'so2-rotation': so2_rotation,
    'su2-hermitian': su2_hermitian,
    'o2-quartic-moments': o2_quartic_moments,
}


def disk_pencil():
    """
    :math:`\\begin{pmatrix} 1 + x_1 & -x_2 \\\\ -x_2 & 1 - x_1 \\end{pmatrix}`.
    """
    return AffinePencil([
        [[1, 0], [0, 1]],
        [[1, 0], [0, -1]],
        [[0, -1], [-1, 0]],
    ], ('x1', 'x2'))


def hermitian_pencil():
    """
    The leading :math:`3 \\times 3` block of the real form of a Hermitian
    :math:`2 \\times 2` matrix, in the variables
    ``(a11, a12, a22, b12)``.
    """
    ring = polynomial_ring(('a11', 'a12', 'a22', 'b12'))
    entries = [['a11', 'a12', '0'], ['a12', 'a22', 'b12'],
               ['0', 'b12', 'a11']]
    return AffinePencil.from_polynomials(
        [[parse_polynomial(e, ring) for e in row] for row in entries])


#: Variables of the quartic moment functionals.
QUARTIC_NAMES = ('l1', 'l2', 'l3', 'l4', 'l5')

#: Coordinates of integration against the uniform measure on the circle.
QUARTIC_CENTER = ('3/8', '0', '1/8', '0', '3/8')


def quartic_pencil():
    """
    The Hankel moment pencil of binary quartics, translated so that the
    uniform measure sits at the origin.
    """
    ring = polynomial_ring(QUARTIC_NAMES)
    entries = [['l1', 'l2', 'l3'], ['l2', 'l3', 'l4'], ['l3', 'l4', 'l5']]
    hankel = AffinePencil.from_polynomials(
        [[parse_polynomial(e, ring) for e in row] for row in entries])
    return translate(hankel, QUARTIC_CENTER)


_QUARTIC_MBAR = [
    ['2*l1 + 4*l3 + 2*l5 + 2', '2*l5 - 2*l1', '-4*l2 - 4*l4'],
    ['2*l5 - 2*l1', '2*l1 - 4*l3 + 2*l5 + 1', '4*l2 - 4*l4'],
    ['-4*l2 - 4*l4', '4*l2 - 4*l4', '8*l3 + 1'],
]

_QUARTIC_RHO = [
    ['1', '0', '0'],
    ['0', '2*c^2 - 1', '-2*c*e*s'],
    ['0', '2*c*s', '2*c^2*e - e'],
]


def quartic_description(G=None):
    """
    The published quartic pencil in rational form with its representation.

    :math:`\\rho(g)` is :math:`g` acting on quadratic forms in the basis
    ``(x^2 + y^2, x^2 - y^2, 2xy)``: the identity on the first
    coordinate and the rotation (or reflection) by the double angle on
    the other two.
    """
    G = o2_quartic_moments() if G is None else G
    ring = polynomial_ring(QUARTIC_NAMES)
    Mbar = AffinePencil.from_polynomials(
        [[parse_polynomial(e, ring) for e in row] for row in _QUARTIC_MBAR])
    return verified_description(Mbar, _QUARTIC_RHO, G,
                                gram0=[[2, 0, 0], [0, 1, 0], [0, 0, 1]])


@dataclass(frozen=True)
class Example:
    """
    A worked example.

    Attributes
    ----------
    name : str
        The name used on the command line.
    group : callable
        Factory of the group.
    pencil : callable
        Factory of the input pencil.
    basis : tuple or None
        The published basis `F` of the orbit span, as strings.
    offset : tuple or None
        Translation making the pencil based: the pipeline runs on
        ``x -> M(x + offset)``.
    unshift : str or None
        Multiple of ``gram0`` added to the result afterwards.
    golden : dict
        The expected entries of the output document.
    verify_only : bool
        Whether the published description is verified instead of
        constructed.
    check_points : tuple
        Rational points compared exactly.
    """
    name: str
    group: object
    pencil: object
    golden: dict
    basis: tuple = None
    offset: tuple = None
    unshift: str = None
    verify_only: bool = False
    check_points: tuple = ()


DISK = Example(
    name='disk-so2', group=so2_rotation, pencil=disk_pencil,
    basis=('1', '-x1', '-x2'),
    check_points=(('3/5', '4/5'), ('0', '0'), ('1', '1')),
    golden={
        'names': ['x1', 'x2'],
        'Mbar': [['1', 'x1', 'x2'], ['x1', '1', '0'], ['x2', '0', '1']],
        'gram0': [['1', '0', '0'], ['0', '1', '0'], ['0', '0', '1']],
        'rho': [['1', '0', '0'], ['0', 'c', '-s'], ['0', 's', 'c']],
        'F': ['1', '-x1', '-x2'],
        'B': [['1', 'c', 's'], ['0', 's', '-c']],
        'xi': {'xi': ['-x1 + 1', 'x2'], 'v': ['1', '0'], 'q': '1',
               'p': '-x1^2 - x2^2 + 1'},
    },
)

HERMITIAN = Example(
    name='hermitian-su2', group=su2_hermitian, pencil=hermitian_pencil,
    basis=('1 + 1/2*a11 + 1/2*a22', '-a12', '-1/2*a11 + 1/2*a22', 'b12'),
    offset=('1', '0', '1', '0'), unshift='-1',
    golden={
        'names': ['a11', 'a12', 'a22', 'b12'],
        'Mbar': [
            ['1/2*a11 + 1/2*a22', 'a12', '1/2*a11 - 1/2*a22', '-b12'],
            ['a12', '1/2*a11 + 1/2*a22', '0', '0'],
            ['1/2*a11 - 1/2*a22', '0', '1/2*a11 + 1/2*a22', '0'],
            ['-b12', '0', '0', '1/2*a11 + 1/2*a22'],
        ],
        'gram0': [['1', '0', '0', '0'], ['0', '1', '0', '0'],
                  ['0', '0', '1', '0'], ['0', '0', '0', '1']],
        'F': ['1 + 1/2*a11 + 1/2*a22', '-a12', '-1/2*a11 + 1/2*a22', 'b12'],
        'B': [
            ['0', '1 - 2*y^2 - 2*s^2', '2*t*y - 2*s*x', '-2*x*y - 2*s*t'],
            ['1', '-2*s*x - 2*t*y', '1 - 2*x^2 - 2*y^2', '2*s*y - 2*t*x'],
            ['0', '2*s*t - 2*x*y', '2*s*y + 2*t*x', '1 - 2*x^2 - 2*s^2'],
        ],
        'xi': {'xi': ['-a12', '1 + a11', '-b12'], 'v': ['0', '1', '0'],
               'q': '1',
               'p': '1 + a11 - a12^2 + a22 + a11*a22 - b12^2'},
    },
)

QUARTIC = Example(
    name='quartic-o2', group=o2_quartic_moments, pencil=quartic_pencil,
    verify_only=True,
    check_points=(('0', '0', '0', '0', '0'),
                  ('-3/8', '0', '-1/8', '0', '-3/8'),
                  ('1/8', '0', '-1/8', '0', '1/8')),
    golden={
        'names': list(QUARTIC_NAMES),
        'Mbar': _QUARTIC_MBAR,
        'gram0': [['2', '0', '0'], ['0', '1', '0'], ['0', '0', '1']],
        'rho': _QUARTIC_RHO,
    },
)

#: The examples by name; ``disk``, ``hermitian`` and ``quartic`` are
#: accepted as short names.
EXAMPLES = {e.name: e for e in (DISK, HERMITIAN, QUARTIC)}

_SHORT = {name.split('-')[0]: name for name in EXAMPLES}


def get_example(name):
    """
    The :py:class:`Example` called `name` (or its short name).
    """
    name = _SHORT.get(name, name)
    try:
        return EXAMPLES[name]
    except KeyError:
        raise ValueError(f'Unknown example {name!r}; expected one of '
                         f'{sorted(EXAMPLES)}') from None


def builtin_group(name):
    """
    A built-in group by its own name or by the name of an example.
    """
    if name in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[name]()
    return get_example(name).group()


def _verify(example, G, samples, tol, seed):
    E = quartic_description(G)
    certificate = Certificate()
    ok, witness = equivariance_check(E, G)
    certificate.record('equivariance_check', 'pass' if ok else 'fail',
                       witness=witness)
    ok, report = set_equality_check(example.pencil(), E, samples, tol, seed,
                                    example.check_points)
    certificate.record('set_equality_check', 'pass' if ok else 'fail',
                       witness=None if ok else report)
    return E, certificate


def construct(name, samples=1000, tol=1e-9, seed=0):
    """
    Run the pipeline (or the verification) of a built-in example.

    Return
    ------
    description : ~equispectra.equivariant.EquivariantDescription
    certificate : ~equispectra.equivariant.Certificate

    Raises
    ------
    ~equispectra.errors.StageError
        If a pipeline stage fails.
    """
    example = get_example(name)
    G = example.group()
    logger.info('Running example %s', example.name)
    if example.verify_only:
        return _verify(example, G, samples, tol, seed)
    P = example.pencil()
    if example.offset is not None:
        P = translate(P, example.offset)
    E, certificate = equivariantize(P, G, samples, tol, seed,
                                    basis=example.basis,
                                    check_points=example.check_points)
    if example.unshift is not None:
        E = shift(E, example.unshift)
    return E, certificate


def run_example(name, samples=1000, tol=1e-9, seed=0):
    """
    Run a built-in example and compare it with its golden document.

    Return
    ------
    ok : bool
        Whether every check passed and the document matches.
    document : dict
        The output document, certificate included.
    diffs : list of dict
        Mismatches against the golden document, see
        :py:func:`~equispectra.document.diff_documents`.
    """
    example = get_example(name)
    E, certificate = construct(example.name, samples, tol, seed)
    document = description_to_document(E, certificate)
    actual = {key: document.get(key) for key in example.golden}
    diffs = diff_documents(example.golden, actual)
    for diff in diffs:
        logger.warning('%s: %s differs: expected %r, got %r', example.name,
                       diff['path'], diff['expected'], diff['actual'])
    return certificate.passed and not diffs, document, diffs
