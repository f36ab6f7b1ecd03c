"""
Text documents for pencils, groups, descriptions and reports.

Documents are JSON. Rationals are written as ``'n'`` or ``'n/d'``
strings and polynomials in the canonical text form of
:py:func:`~equispectra.polyring.format_polynomial`, so a document
round-trips exactly and two runs with the same inputs and seed write
identical bytes. Keys appear in a fixed order per document type.

Pencil document::

    {"n": 2, "d": 2, "names": ["x1", "x2"],
     "matrices": [[["1", "0"], ["0", "1"]], ...]}

Group document::

    {"kind": "SO2", "n": 2, "action": [["c", "-s"], ["s", "c"]]}

Finite groups carry ``"elements"`` instead of ``"action"``.
"""

from json import JSONDecodeError, dumps as json_dumps, loads as json_loads
import logging
from pathlib import Path

from numpy import bool_, floating, integer, ndarray
from sympy import expand
from sympy.parsing.sympy_parser import (
    convert_xor, parse_expr, standard_transformations
)
from sympy.polys.domains import QQ

from .equivariant import (
    Certificate, EquivariantDescription, OrbitSpanData, verified_description
)
from .errors import DocumentError
from .groupring import GroupSpec, finite_group
from .pencil import AffinePencil
from .polar import ReducedProblem, SectionPoint
from .polyring import (
    format_polynomial, format_rational, parse_polynomial, polynomial_ring
)
from .util import rational_matrix


__all__ = [
    'loads', 'dumps', 'read_document', 'write_document',
    'pencil_to_document', 'pencil_from_document', 'group_to_document',
    'group_from_document', 'description_to_document',
    'description_from_document', 'reduced_to_document',
    'polynomial_matrix', 'diff_documents',
]


logger = logging.getLogger(__name__)


_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _default(obj):
    """JSON fallback for exact rationals and numpy scalars."""
    if isinstance(obj, QQ.dtype):
        return format_rational(obj)
    if isinstance(obj, bool_):
        return bool(obj)
    if isinstance(obj, integer):
        return int(obj)
    if isinstance(obj, floating):
        return float(obj)
    if isinstance(obj, ndarray):
        return obj.tolist()
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    raise TypeError(f'Object of type {type(obj).__name__} is not '
                    'serializable')


def dumps(doc):
    """
    Serialize a document with two-space indentation and a final newline.
    """
    return json_dumps(doc, indent=2, default=_default,
                      ensure_ascii=False) + '\n'


def loads(text):
    """
    Parse a document.

    Raises
    ------
    DocumentError
        With the 1-based line and column of the syntax error.
    """
    try:
        return json_loads(text)
    except JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno) from e


def read_document(path):
    """
    Load the document stored at `path`.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise DocumentError(f'Cannot read {path}: {e.strerror}') from e
    logger.debug('Read %d bytes from %s', len(text), path)
    return loads(text)


def write_document(doc, path):
    """
    Write `doc` to `path`, creating parent directories as needed.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(doc), encoding='utf-8')
    logger.info('Wrote %s', path)
    return path


def _require(doc, key, kind):
    if not isinstance(doc, dict):
        raise DocumentError(f'A {kind} document must be an object')
    if key not in doc:
        raise DocumentError(f'{kind.capitalize()} document has no {key!r}')
    return doc[key]


def _rational_matrix(rows, label):
    try:
        return rational_matrix(rows)
    except (TypeError, ValueError) as e:
        raise DocumentError(f'{label}: {e}') from e


def _rational_strings(rows):
    return [[format_rational(v) for v in row] for row in rows]


def polynomial_matrix(rows):
    """
    Canonical strings of a nested sequence of polynomials.
    """
    return [[format_polynomial(p) for p in row] for row in rows]


def pencil_to_document(P):
    """
    The pencil document of an :py:class:`~equispectra.pencil.AffinePencil`.
    """
    return {'n': P.n, 'd': P.d, 'names': list(P.names),
            'matrices': [_rational_strings(m) for m in P.matrices]}


def pencil_from_document(doc):
    """
    Build a pencil from its document.

    ``n`` and ``d`` are optional but checked when present; ``names``
    defaults to ``x1, ..., xn``.

    Raises
    ------
    DocumentError
        If the document is malformed or inconsistent.
    """
    matrices = _require(doc, 'matrices', 'pencil')
    if not isinstance(matrices, list) or len(matrices) < 2:
        raise DocumentError('Pencil matrices must be a list of at least '
                            'two matrices')
    matrices = [_rational_matrix(m, f'M{k}') for k, m in enumerate(matrices)]
    n, d = len(matrices) - 1, len(matrices[0])
    if doc.get('n', n) != n:
        raise DocumentError(f'Pencil declares n={doc["n"]} but has {n} '
                            'variable matrices')
    if doc.get('d', d) != d:
        raise DocumentError(f'Pencil declares d={doc["d"]} but its '
                            f'matrices are {d}x{d}')
    try:
        return AffinePencil(matrices, doc.get('names'))
    except ValueError as e:
        raise DocumentError(str(e)) from e


def group_to_document(G):
    """
    The group document of a :py:class:`~equispectra.groupring.GroupSpec`.
    """
    doc = {'kind': G.kind, 'n': G.n, 'name': G.name}
    if G.kind == 'Finite':
        doc['elements'] = [_rational_strings(g) for g in G.elements]
    else:
        doc['action'] = polynomial_matrix(G.action)
    return doc


def group_from_document(doc):
    """
    Build a group from its document.
    """
    kind = _require(doc, 'kind', 'group')
    try:
        if kind == 'Finite':
            elements = _require(doc, 'elements', 'group')
            return finite_group([_rational_matrix(g, 'element')
                                 for g in elements], doc.get('name'))
        return GroupSpec(kind, _require(doc, 'n', 'group'),
                         _require(doc, 'action', 'group'),
                         name=doc.get('name'))
    except DocumentError:
        raise
    except ValueError as e:
        raise DocumentError(str(e)) from e


def description_to_document(E, certificate=None):
    """
    The output document of an equivariant description.

    Keys, in order: ``group``, ``names``, ``Mbar`` (polynomial strings),
    ``gram0``, ``rho``, then ``F``, ``B``, ``xi`` and ``center`` when
    known, and ``certificate`` when given. Certificates are written
    without timings.
    """
    doc = {
        'group': E.group.name,
        'names': list(E.Mbar.names),
        'Mbar': polynomial_matrix(E.Mbar.matrix_polynomial()),
        'gram0': _rational_strings(E.gram0),
        'rho': polynomial_matrix(E.rho),
    }
    if E.span is not None:
        doc['F'] = [format_polynomial(f) for f in E.span.F]
        doc['B'] = polynomial_matrix(E.span.B)
    if E.xi is not None:
        doc['xi'] = {
            'xi': [format_polynomial(f) for f in E.xi.xi],
            'v': [format_rational(c) for c in E.xi.v],
            'q': format_polynomial(E.xi.q),
            'p': format_polynomial(E.xi.p),
        }
    if E.center is not None:
        doc['center'] = [format_rational(c) for c in E.center]
    if certificate is not None:
        doc['certificate'] = certificate.to_dict() \
            if isinstance(certificate, Certificate) else certificate
    return doc


def description_from_document(doc, G):
    """
    Rebuild a description from its document under the group `G`.

    Only ``names``, ``Mbar``, ``rho`` and the optional ``gram0``, ``F``
    and ``B`` are read.
    """
    names = _require(doc, 'names', 'description')
    ring = polynomial_ring(names)
    entries = [[parse_polynomial(e, ring) for e in row]
               for row in _require(doc, 'Mbar', 'description')]
    try:
        Mbar = AffinePencil.from_polynomials(entries, names)
        E = verified_description(Mbar, _require(doc, 'rho', 'description'),
                                 G, doc.get('gram0'))
    except DocumentError:
        raise
    except ValueError as e:
        raise DocumentError(str(e)) from e
    if 'F' in doc and 'B' in doc:
        F = tuple(parse_polynomial(f, ring) for f in doc['F'])
        B = tuple(tuple(parse_polynomial(e, G.ring) for e in row)
                  for row in doc['B'])
        E = EquivariantDescription(E.Mbar, E.gram0, E.rho, G,
                                   OrbitSpanData(F, B))
    return E


def reduced_to_document(F, problem):
    """
    The document of a :py:class:`~equispectra.polar.ReducedProblem`.
    """
    if not isinstance(problem, ReducedProblem):
        raise TypeError('Expected a ReducedProblem')
    objective = problem.objective
    if isinstance(objective, SectionPoint):
        objective = objective.coords
    return {
        'family': F.kind, 'n': F.n,
        'original_dim': problem.original_dim,
        'reduced_dim': problem.reduced_dim,
        'objective': [float(c) for c in objective],
        'group_element': [[float(v) for v in row]
                          for row in problem.group_element],
    }


def _expression(text):
    try:
        return parse_expr(text, transformations=_TRANSFORMATIONS)
    except Exception:
        return None


def _same_leaf(a, b):
    if a == b:
        return True
    if not (isinstance(a, str) and isinstance(b, str)):
        return False
    ea, eb = _expression(a), _expression(b)
    if ea is None or eb is None:
        return False
    return expand(ea - eb) == 0


def diff_documents(expected, actual, path=''):
    """
    Structural differences between two documents.

    Strings are compared as polynomials with rational coefficients, so
    ``'2/4'`` matches ``'1/2'`` and ``'1 - x1'`` matches ``'-x1 + 1'``.
    Everything else must be equal.

    Return
    ------
    diffs : list of dict
        ``{'path', 'expected', 'actual'}`` for each mismatch, with paths
        such as ``'Mbar/0/1'``.
    """
    diffs = []
    if isinstance(expected, dict) and isinstance(actual, dict):
        for key in expected:
            sub = f'{path}/{key}' if path else str(key)
            if key not in actual:
                diffs.append({'path': sub, 'expected': expected[key],
                              'actual': None})
            else:
                diffs.extend(diff_documents(expected[key], actual[key], sub))
        for key in actual:
            if key not in expected:
                sub = f'{path}/{key}' if path else str(key)
                diffs.append({'path': sub, 'expected': None,
                              'actual': actual[key]})
    elif isinstance(expected, list) and isinstance(actual, list) and \
            len(expected) == len(actual):
        for k, (a, b) in enumerate(zip(expected, actual)):
            diffs.extend(diff_documents(a, b, f'{path}/{k}' if path
                                        else str(k)))
    elif not _same_leaf(expected, actual):
        diffs.append({'path': path, 'expected': expected, 'actual': actual})
    return diffs
