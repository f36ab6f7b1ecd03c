"""
Command line interface.

::

    equispectra [--seed N] [--samples N] [--tol X] [--out DIR] [-v | -q]
                COMMAND ...

Commands
--------
``equivariantize PENCIL [GROUP]``
    Run the pipeline. `PENCIL` is a pencil document or the name of a
    built-in example; `GROUP` is a group document or a built-in group
    name.
``reduce --family sym|skew --n N OBJECTIVE``
    Move a linear objective on matrices into the section.
``check NAME [INPUT ...]``
    One of the sampling or exact checks: ``invariance``,
    ``equivariance``, ``set``, ``kostant``, ``rigid`` or ``hopf``.
``examples NAME``
    Rerun a worked example and compare it with its golden document.

A JSON run report goes to standard output; documents go to ``--out``
when it is given. The exit status is 0 on success, 1 when a check or
pipeline stage fails and 2 for unusable input.
"""

from argparse import SUPPRESS, ArgumentParser
from dataclasses import dataclass, field
import logging
from pathlib import Path
import sys
from time import perf_counter

from sympy.parsing.sympy_parser import parse_expr

from .catalog import (
    BUILTIN_GROUPS, builtin_group, construct, get_example, run_example
)
from .document import (
    description_from_document, description_to_document, dumps,
    group_from_document, pencil_from_document, read_document,
    reduced_to_document, write_document
)
from .equivariant import (
    equivariance_check, equivariantize, set_equality_check
)
from .errors import DocumentError, StageError
from .pencil import det_poly, invariance_sample_check
from .polar import (
    PolarFamily, hopf_counterexample, kostant_check, real_zero_check,
    reduce_linear_problem
)
from .polyring import parse_polynomial, polynomial_ring
from .util import rational, to_float
from .version import __version__


__all__ = [
    'RunReport', 'main', 'build_parser', 'cmd_equivariantize', 'cmd_reduce',
    'cmd_check', 'cmd_examples', 'CHECKS', 'SUCCESS', 'FAILURE',
    'INPUT_ERROR',
]


logger = logging.getLogger(__name__)


SUCCESS = 0
FAILURE = 1
INPUT_ERROR = 2

CHECKS = ('invariance', 'equivariance', 'set', 'kostant', 'rigid', 'hopf')

_EXAMPLE_NAMES = ('disk', 'quartic', 'hermitian', 'all')


@dataclass
class RunReport:
    """
    The record of one invocation.

    Every entry of `checks` has a ``verdict`` of ``'pass'``, ``'fail'``
    (with a ``witness``) or ``'skipped'`` (with a ``reason``). Timings
    are only written when requested, so that reports of identical runs
    are identical.
    """
    command: list
    seed: int
    checks: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, check, ok, witness=None, ms=None):
        entry = {'check': check, 'verdict': 'pass' if ok else 'fail'}
        if not ok and witness is not None:
            entry['witness'] = witness
        self.checks.append(entry)
        if ms is not None:
            self.timings[check] = round(ms, 3)
        return ok

    def extend(self, certificate):
        """Copy the stage verdicts of a pipeline certificate."""
        for stage in certificate.stages:
            self.checks.append(stage.to_dict())
            self.timings[stage.stage] = round(stage.ms, 3)

    @property
    def passed(self):
        return all(c['verdict'] != 'fail' for c in self.checks)

    def to_dict(self, timings=False):
        out = {'command': self.command, 'seed': self.seed,
               'passed': self.passed, 'checks': self.checks,
               'outputs': [str(p) for p in self.outputs]}
        out.update(self.extra)
        if timings:
            out['timings'] = self.timings
        return out


def _emit(args, report, name, document):
    """Write `document` under ``--out`` or inline it in the report."""
    if args.out is None:
        report.extra.setdefault('documents', {})[name] = document
    else:
        report.outputs.append(write_document(document,
                                             Path(args.out) / f'{name}.json'))


def _is_example(name):
    try:
        get_example(name)
    except ValueError:
        return False
    return True


def _load_group(spec):
    if spec is None:
        raise DocumentError('A group document or built-in name is required')
    if spec in BUILTIN_GROUPS or _is_example(spec):
        return builtin_group(spec)
    return group_from_document(read_document(spec))


def _load_pencil(spec):
    if _is_example(spec):
        return get_example(spec).pencil()
    return pencil_from_document(read_document(spec))


def _load_description(spec, group=None):
    if _is_example(spec):
        return construct(spec)[0]
    doc = read_document(spec)
    G = _load_group(group if group is not None else doc.get('group'))
    return description_from_document(doc, G)


def _point(text, n):
    values = [v for v in text.replace(',', ' ').split() if v]
    if len(values) != n:
        raise DocumentError(f'Expected {n} coordinates, got {len(values)}')
    return tuple(rational(v) for v in values)


def cmd_equivariantize(args, report):
    """
    Run the pipeline on a pencil and a group.
    """
    if _is_example(args.pencil) and args.group is None:
        E, certificate = construct(args.pencil, args.samples, args.tol,
                                   args.seed)
    else:
        P = _load_pencil(args.pencil)
        G = _load_group(args.group)
        interior = None if args.interior_point is None else \
            _point(args.interior_point, P.n)
        E, certificate = equivariantize(P, G, args.samples, args.tol,
                                        args.seed,
                                        group_samples=args.group_samples,
                                        interior_point=interior)
    report.extend(certificate)
    _emit(args, report, 'description', description_to_document(E))
    return SUCCESS if certificate.passed else FAILURE


def _objective(doc):
    matrix = doc.get('matrix') if isinstance(doc, dict) else doc
    if not isinstance(matrix, list):
        raise DocumentError('An objective document is a matrix or '
                            '{"matrix": [...]}')
    try:
        return [[to_float(rational(v)) if isinstance(v, str) else float(v)
                 for v in row] for row in matrix]
    except (TypeError, ValueError) as e:
        raise DocumentError(f'Objective entries must be numbers: {e}') \
            from e


def cmd_reduce(args, report):
    """
    Reduce a linear objective to the section of a polar family.
    """
    F = PolarFamily(args.family, args.n)
    v = _objective(read_document(args.objective))
    problem = reduce_linear_problem(F, v)
    savings = f'{F.original_dim} -> {F.section_dim}'
    logger.info('Reduced the %s problem for n=%d: %s dimensions', F.kind,
                F.n, savings)
    report.extra['savings'] = savings
    _emit(args, report, 'reduced', reduced_to_document(F, problem))
    return SUCCESS


def _polynomial(text):
    try:
        expr = parse_expr(text.replace('^', '**'))
    except Exception as e:
        raise DocumentError(f'Cannot parse polynomial {text!r}: {e}') from e
    names = sorted(s.name for s in expr.free_symbols) or ['x1']
    return parse_polynomial(text, polynomial_ring(names))


def _check_inputs(args, count, usage):
    if len(args.inputs) < count:
        raise DocumentError(f'check {args.check} needs {usage}')
    return args.inputs


def cmd_check(args, report):
    """
    Run one named check.
    """
    start = perf_counter()
    which = args.check
    if which == 'invariance':
        pencil, group = _check_inputs(args, 2, 'PENCIL GROUP')[:2]
        ok, witness = invariance_sample_check(
            _load_pencil(pencil), _load_group(group), args.samples,
            args.tol, args.seed, args.group_samples)
    elif which == 'equivariance':
        inputs = _check_inputs(args, 1, 'DESCRIPTION [GROUP]')
        E = _load_description(inputs[0], inputs[1] if len(inputs) > 1
                              else None)
        ok, witness = equivariance_check(E)
    elif which == 'set':
        inputs = _check_inputs(args, 1, 'PENCIL [DESCRIPTION [GROUP]]')
        if len(inputs) == 1 and _is_example(inputs[0]):
            example = inputs[0]
            E, certificate = construct(example, args.samples, args.tol,
                                       args.seed)
            stage = [s for s in certificate.stages
                     if s.stage == 'set_equality_check']
            ok = bool(stage) and stage[0].verdict == 'pass'
            witness = stage[0].witness if stage else None
        else:
            P = _load_pencil(inputs[0])
            E = _load_description(inputs[1] if len(inputs) > 1 else
                                  inputs[0],
                                  inputs[2] if len(inputs) > 2 else None)
            ok, witness = set_equality_check(P, E, args.samples, args.tol,
                                             args.seed)
            report.extra['set'] = witness
            witness = None if ok else witness
    elif which == 'kostant':
        n = int(args.inputs[0]) if args.inputs else 4
        ok, witness = kostant_check(PolarFamily('sym', n), seed=args.seed)
        report.extra['kostant'] = witness
        witness = None if ok else witness
    elif which == 'rigid':
        target = _check_inputs(args, 1, 'POLYNOMIAL|PENCIL')[0]
        if Path(target).is_file():
            p = det_poly(pencil_from_document(read_document(target)))
        else:
            p = _polynomial(target)
        u = None if args.point is None else _point(args.point, p.ring.ngens)
        ok, witness = real_zero_check(p, u, args.directions)
    else:
        witness = hopf_counterexample()
        ok = witness['passed']
        report.extra['hopf'] = witness
        witness = None if ok else witness
    report.add(which, ok, witness, (perf_counter() - start) * 1e3)
    return SUCCESS if ok else FAILURE


def cmd_examples(args, report):
    """
    Rerun worked examples against their golden documents.
    """
    names = ['disk', 'hermitian', 'quartic'] if args.name == 'all' \
        else [args.name]
    status = SUCCESS
    for name in names:
        start = perf_counter()
        ok, document, diffs = run_example(name, args.samples, args.tol,
                                          args.seed)
        report.add(f'examples/{name}', ok, {'diff': diffs} if diffs else
                   document.get('certificate'),
                   (perf_counter() - start) * 1e3)
        _emit(args, report, name, document)
        if not ok:
            status = FAILURE
    return status


def build_parser():
    """
    The argument parser of the ``equispectra`` command.

    Global options are accepted before or after the command name.
    """
    common = ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=SUPPRESS,
                        help='Seed of all sampling (default 0).')
    common.add_argument('--samples', type=int, default=SUPPRESS,
                        help='Points per sampling check (default 1000).')
    common.add_argument('--group-samples', type=int, default=SUPPRESS,
                        help='Group elements per point (default 10).')
    common.add_argument('--tol', type=float, default=SUPPRESS,
                        help='PSD tolerance (default 1e-9).')
    common.add_argument('--out', default=SUPPRESS,
                        help='Directory for output documents.')
    common.add_argument('--timings', action='store_true', default=SUPPRESS,
                        help='Include stage timings in the report.')
    common.add_argument('-v', '--verbose', action='store_true',
                        default=SUPPRESS, help='Log at DEBUG level.')
    common.add_argument('-q', '--quiet', action='store_true',
                        default=SUPPRESS, help='Log warnings only.')

    parser = ArgumentParser(
        prog='equispectra', parents=[common],
        description='Equivariant descriptions of invariant spectrahedra.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    parser.set_defaults(seed=0, samples=1000, group_samples=10, tol=1e-9,
                        out=None, timings=False, verbose=False, quiet=False)
    commands = parser.add_subparsers(dest='command', required=True)

    sub = commands.add_parser('equivariantize', parents=[common],
                              help='Build an equivariant description.')
    sub.add_argument('pencil', help='Pencil document or example name.')
    sub.add_argument('group', nargs='?',
                     help='Group document or built-in group name.')
    sub.add_argument('--interior-point',
                     help='Rational interior point, e.g. "1/2,0".')
    sub.set_defaults(func=cmd_equivariantize)

    sub = commands.add_parser('reduce', parents=[common],
                              help='Reduce a linear objective.')
    sub.add_argument('--family', choices=('sym', 'skew'), required=True)
    sub.add_argument('--n', type=int, required=True)
    sub.add_argument('objective', help='Objective matrix document.')
    sub.set_defaults(func=cmd_reduce)

    sub = commands.add_parser('check', parents=[common],
                              help='Run a single check.')
    sub.add_argument('check', choices=CHECKS)
    sub.add_argument('inputs', nargs='*')
    sub.add_argument('--point', help='Base point of the rigid check.')
    sub.add_argument('--directions', type=int, default=100,
                     help='Lines tried by the rigid check.')
    sub.set_defaults(func=cmd_check)

    sub = commands.add_parser('examples', parents=[common],
                              help='Rerun the worked examples.')
    sub.add_argument('name', choices=_EXAMPLE_NAMES)
    sub.set_defaults(func=cmd_examples)
    return parser


def _configure_logging(args):
    level = logging.DEBUG if args.verbose else \
        logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    """
    Entry point of the ``equispectra`` command.

    Return
    ------
    status : int
        0 on success, 1 when a check fails, 2 for input errors.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    report = RunReport(['equispectra'] + argv, args.seed)
    try:
        status = args.func(args, report)
    except StageError as e:
        logger.error('Stage %s failed: %s', e.stage, e)
        report.checks.append({'check': e.stage, 'verdict': 'fail',
                              'witness': e.witness if e.witness is not None
                              else str(e)})
        status = FAILURE
    except (DocumentError, ValueError, OSError) as e:
        logger.error('%s', e)
        report.extra['error'] = str(e)
        status = INPUT_ERROR
    sys.stdout.write(dumps(report.to_dict(args.timings)))
    return status
