"""
Shared utility functions used by the exact and floating point
routines.
"""

from fractions import Fraction
from os import environ

from numpy import (
    abs as np_abs, array, float64, inexact, issubdtype, max as np_max
)
from sympy import Rational
from sympy.polys.domains import QQ

from .errors import NotSymmetricError


__all__ = [
    'max_workers', 'preprocess', 'preprocess_square', 'rational',
    'rational_matrix', 'rational_vector', 'to_float', 'float_matrix',
]


#: Name of the environment variable capping the sampling thread pool.
THREADS_VARIABLE = 'EQUISPECTRA_THREADS'


def preprocess(x, copy=False, float=False):
    """
    Ensure that `x` is a properly formatted numpy array.

    Proper formatting means at least one dimension, and may include
    optional copying and coersion into a floating point datatype.

    Parameters
    ----------
    x : array-like
        The array to process. If not already a numpy array, it will be
        converted to one.
    copy : bool, optional
        If True, a copy is made regardless of whether `x` is already a
        numpy array or not. The default is False.
    float : bool, optional
        If True, and `x` is not an inexact array already, coerce to
        :py:class:`numpy.float64`. Defaults to False.

    Return
    ------
    x : ~numpy.ndarray
        Processed version of the input.
    """
    if float:
        dtype = x.dtype if hasattr(x, 'dtype') and \
                           issubdtype(x.dtype, inexact) else float64
    else:
        dtype = None
    return array(x, copy=True if copy else None, ndmin=1, dtype=dtype)


def preprocess_square(a, kind='symmetric', tol=1e-10):
    """
    Convert `a` to a square floating point matrix and verify its
    symmetry type.

    Parameters
    ----------
    a : array-like
        The matrix to check.
    kind : {'symmetric', 'skew'}
        Whether ``a == a.T`` or ``a == -a.T`` is required.
    tol : float
        Tolerance relative to ``max(1, max|a|)``.

    Return
    ------
    a : ~numpy.ndarray
        A floating point copy of the input, exactly (skew-)symmetrized.

    Raises
    ------
    ValueError
        If `a` is not a square 2D matrix.
    NotSymmetricError
        If the symmetry check fails beyond `tol`.
    """
    a = preprocess(a, copy=True, float=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError('Expected a square matrix, got shape '
                         f'{a.shape}')
    sign = 1.0 if kind == 'symmetric' else -1.0
    scale = max(1.0, float(np_max(np_abs(a)))) if a.size else 1.0
    if a.size and float(np_max(np_abs(a - sign * a.T))) > tol * scale:
        raise NotSymmetricError(f'Matrix is not {kind} within {tol}')
    a += sign * a.T
    a *= 0.5
    return a


def rational(value):
    """
    Convert `value` to an exact rational in the :py:data:`QQ` domain.

    Accepts integers, :py:class:`~fractions.Fraction`, sympy rationals,
    ``QQ`` elements and strings such as ``'-3/4'``. Floats are converted
    exactly (their binary expansion), which is rarely what is wanted
    for golden data but keeps the conversion total.
    """
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except ValueError:
            raise ValueError(f'Not a rational number: {value!r}') from None
    if isinstance(value, float):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    return QQ.convert(value)


def rational_vector(values):
    """
    Convert a sequence to a list of ``QQ`` elements.
    """
    return [rational(v) for v in values]


def rational_matrix(rows):
    """
    Convert a nested sequence to a list of lists of ``QQ`` elements.
    """
    return [rational_vector(row) for row in rows]


def to_float(q):
    """
    Correctly rounded float value of a ``QQ`` element.
    """
    return int(q.numerator) / int(q.denominator)


def float_matrix(rows):
    """
    Convert a nested list of ``QQ`` elements to a float array.
    """
    return array([[to_float(q) for q in row] for row in rows],
                 dtype=float64, ndmin=2)


def max_workers(default=None):
    """
    Number of worker threads allowed for sampling checks.

    The value comes from the ``EQUISPECTRA_THREADS`` environment
    variable, falling back to `default` (``None`` lets
    :py:class:`~concurrent.futures.ThreadPoolExecutor` decide).
    Non-positive or malformed values mean a single worker.
    """
    value = environ.get(THREADS_VARIABLE)
    if value is None:
        return default
    try:
        value = int(value)
    except ValueError:
        return 1
    return max(value, 1)
