"""
Tests for the JSON documents in :mod:`equispectra.document`.
"""

import numpy as np
from pytest import fixture, raises
from sympy.polys.domains import QQ

from equispectra.catalog import DISK, disk_pencil
from equispectra.document import (
    description_from_document, description_to_document, diff_documents,
    dumps, group_from_document, group_to_document, loads,
    pencil_from_document, pencil_to_document, read_document,
    reduced_to_document, write_document
)
from equispectra.equivariant import verified_description
from equispectra.errors import DocumentError
from equispectra.groupring import finite_group, so2_rotation
from equispectra.pencil import AffinePencil
from equispectra.polar import PolarFamily, reduce_linear_problem


@fixture(scope='module')
def so2():
    return so2_rotation()


def test_loads_location():
    """
    Syntax errors report their line and column.
    """
    with raises(DocumentError) as info:
        loads('{\n  "a": 1,\n}')
    assert (info.value.line, info.value.column) == (3, 1)
    assert 'line 3' in str(info.value)


def test_dumps():
    text = dumps({'q': QQ(-3, 4), 'i': np.int64(2), 'f': np.float64(0.5),
                  'b': np.bool_(True), 'a': np.arange(2), 't': (1, 2)})
    assert text.endswith('}\n')
    assert loads(text) == {'q': '-3/4', 'i': 2, 'f': 0.5, 'b': True,
                           'a': [0, 1], 't': [1, 2]}


def test_files(tmp_path):
    path = write_document({'x': '1/2'}, tmp_path / 'nested' / 'doc.json')
    assert read_document(path) == {'x': '1/2'}
    with raises(DocumentError):
        read_document(tmp_path / 'missing.json')


def test_pencil_document():
    """
    Pencils survive serialization exactly.
    """
    P = AffinePencil([[[1, '1/3'], ['1/3', 2]], [[0, 1], [1, 0]]], ('u',))
    doc = pencil_to_document(P)
    assert doc['matrices'][0] == [['1', '1/3'], ['1/3', '2']]
    assert pencil_from_document(loads(dumps(doc))) == P


def test_pencil_document_errors():
    with raises(DocumentError):
        pencil_from_document({'matrices': [[[1]]]})
    with raises(DocumentError):
        pencil_from_document({'n': 3, 'matrices': [[[1]], [[1]]]})
    with raises(DocumentError):
        pencil_from_document({'matrices': [[[1, 0], [1, 1]], [[0, 0],
                                                               [0, 0]]]})
    with raises(DocumentError):
        pencil_from_document({'matrices': [[['1.5x']], [[1]]]})
    with raises(DocumentError):
        pencil_from_document([])


def test_group_document(so2):
    G = group_from_document(loads(dumps(group_to_document(so2))))
    assert (G.kind, G.n, G.name) == ('SO2', 2, 'so2-rotation')
    assert G.action == so2.action
    flip = finite_group([[[1, 0], [0, 1]], [[0, 1], [1, 0]]], 'swap')
    H = group_from_document(loads(dumps(group_to_document(flip))))
    assert H.order == 2
    with raises(DocumentError):
        group_from_document({'n': 2})
    with raises(DocumentError):
        group_from_document({'kind': 'SO2', 'n': 2,
                             'action': [['c', 's'], ['s', 'c']]})


def test_description_document(so2):
    """
    A published description round-trips with its span.
    """
    golden = DISK.golden
    Mbar = AffinePencil([
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
    ])
    E = verified_description(Mbar, golden['rho'], so2)
    doc = description_to_document(E)
    assert list(doc) == ['group', 'names', 'Mbar', 'gram0', 'rho']
    assert diff_documents({k: golden[k] for k in doc if k in golden},
                          {k: doc[k] for k in doc if k in golden}) == []
    doc.update(F=golden['F'], B=golden['B'])
    E2 = description_from_document(loads(dumps(doc)), so2)
    assert E2.Mbar == E.Mbar
    assert E2.rho == E.rho
    assert len(E2.span.F) == 3
    with raises(DocumentError):
        description_from_document({'names': ['x1', 'x2'],
                                   'Mbar': [['x1 +']], 'rho': [['1']]}, so2)


def test_reduced_document():
    F = PolarFamily('sym', 2)
    problem = reduce_linear_problem(F, [[2.0, 0.0], [0.0, 1.0]])
    doc = reduced_to_document(F, problem)
    assert (doc['original_dim'], doc['reduced_dim']) == (3, 2)
    assert np.allclose(doc['objective'], [2.0, 1.0])
    with raises(TypeError):
        reduced_to_document(F, None)


def test_diff_semantic():
    """
    Polynomial strings are compared as polynomials.
    """
    expected = {'a': '1 - x1', 'b': ['2/4', 'x^2'], 'c': 3}
    actual = {'a': '-x1 + 1', 'b': ['1/2', 'x**2'], 'c': 3}
    assert diff_documents(expected, actual) == []


def test_diff_paths():
    expected = {'Mbar': [['1', 'x1'], ['x1', '1']], 'rho': ['c']}
    actual = {'Mbar': [['1', 'x2'], ['x1', '1']], 'extra': 1}
    diffs = diff_documents(expected, actual)
    assert diffs == [
        {'path': 'Mbar/0/1', 'expected': 'x1', 'actual': 'x2'},
        {'path': 'rho', 'expected': ['c'], 'actual': None},
        {'path': 'extra', 'expected': None, 'actual': 1},
    ]
    assert diff_documents(['1', '2'], ['1']) == [
        {'path': '', 'expected': ['1', '2'], 'actual': ['1']}
    ]
