"""
Tests for the ``equispectra`` command in :mod:`equispectra.cli`.
"""

from pytest import raises

from equispectra.cli import FAILURE, INPUT_ERROR, SUCCESS, main
from equispectra.document import loads, write_document


def run(capsys, *argv):
    status = main(list(argv))
    return status, loads(capsys.readouterr().out)


def test_hopf(capsys):
    status, report = run(capsys, 'check', 'hopf')
    assert status == SUCCESS
    assert report['passed']
    assert report['hopf']['passed']
    assert report['checks'] == [{'check': 'hopf', 'verdict': 'pass'}]
    assert 'timings' not in report


def test_rigid(capsys):
    """
    ``1 + x1^2`` is not real-zero; a determinant is.
    """
    status, report = run(capsys, 'check', 'rigid', '1 + x1^2')
    assert status == FAILURE
    assert report['checks'][0]['witness'] == {'direction': [1]}
    status, _ = run(capsys, 'check', 'rigid', 'x1*x2 - x3^2',
                    '--point', '1,1,0', '--directions', '30')
    assert status == SUCCESS


def test_rigid_pencil(capsys, tmp_path):
    """
    A pencil document is checked through its determinant.
    """
    path = write_document({'matrices': [[['1', '0'], ['0', '1']],
                                        [['1', '0'], ['0', '-1']],
                                        [['0', '1'], ['1', '0']]]},
                          tmp_path / 'disk.json')
    status, _ = run(capsys, 'check', 'rigid', str(path))
    assert status == SUCCESS


def test_malformed(capsys, tmp_path):
    """
    Unreadable documents are input errors.
    """
    path = tmp_path / 'bad.json'
    path.write_text('{"matrices": [', encoding='utf-8')
    status, report = run(capsys, 'equivariantize', str(path), 'so2-rotation')
    assert status == INPUT_ERROR
    assert 'line 1' in report['error']
    status, _ = run(capsys, 'check', 'invariance', str(tmp_path / 'no.json'),
                    'so2-rotation')
    assert status == INPUT_ERROR
    status, _ = run(capsys, 'check', 'invariance', 'disk')
    assert status == INPUT_ERROR


def test_invariance(capsys):
    status, report = run(capsys, 'check', 'invariance', 'disk',
                         'so2-rotation', '--samples', '100')
    assert status == SUCCESS
    assert report['checks'][0]['verdict'] == 'pass'


def test_equivariantize(capsys):
    """
    The pipeline reports every stage and inlines the description.
    """
    status, report = run(capsys, '--seed', '3', 'equivariantize', 'disk',
                         '--samples', '200', '--timings')
    assert status == SUCCESS
    assert report['seed'] == 3
    assert [c['check'] for c in report['checks']][-1] == \
        'set_equality_check'
    assert report['documents']['description']['names'] == ['x1', 'x2']
    assert 'base_reduce' in report['timings']


def test_equivariantize_failure(capsys, tmp_path):
    """
    A non-invariant pencil fails its first stage.
    """
    path = write_document({'matrices': [[['1', '0'], ['0', '1']],
                                        [['1', '0'], ['0', '0']],
                                        [['0', '0'], ['0', '1']]]},
                          tmp_path / 'square.json')
    status, report = run(capsys, 'equivariantize', str(path), 'so2-rotation',
                         '--samples', '500')
    assert status == FAILURE
    assert report['checks'][-1]['check'] == 'invariance'
    assert not report['passed']


def test_reduce(capsys, tmp_path):
    objective = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]]
    path = write_document({'matrix': objective}, tmp_path / 'v.json')
    status, report = run(capsys, 'reduce', '--family', 'skew', '--n', '4',
                         str(path), '--out', str(tmp_path / 'out'))
    assert status == SUCCESS
    assert report['savings'] == '6 -> 2'
    assert (tmp_path / 'out' / 'reduced.json').is_file()


def test_examples(capsys, tmp_path):
    status, report = run(capsys, 'examples', 'disk', '--samples', '200',
                         '--out', str(tmp_path))
    assert status == SUCCESS
    assert report['checks'][0]['check'] == 'examples/disk'
    assert (tmp_path / 'disk.json').is_file()


def test_version(capsys):
    with raises(SystemExit) as info:
        main(['--version'])
    assert info.value.code == 0
    assert capsys.readouterr().out.startswith('equispectra ')
