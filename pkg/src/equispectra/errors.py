"""
Exceptions raised by the equispectra routines.

Every exception derives from :py:class:`EquispectraError`, which is
itself a :py:class:`ValueError`, so code that guards a call with
``except ValueError`` keeps working. Shape and argument problems that
are not specific to this package raise a plain :py:class:`ValueError`.
"""

__all__ = [
    'EquispectraError', 'NotDivisible', 'NotSymmetricError', 'NotPSDError',
    'GroupError', 'StageError', 'DocumentError', 'BudgetError',
]


class EquispectraError(ValueError):
    """
    Base class of all equispectra errors.
    """


class NotDivisible(EquispectraError):
    """
    Raised by :py:func:`~equispectra.polyring.exact_div` when the
    divisor does not divide the dividend over the rationals.
    """


class NotSymmetricError(EquispectraError):
    """
    A matrix that must be symmetric (or skew-symmetric) is not.
    """


class NotPSDError(EquispectraError):
    """
    The base matrix of a pencil is not positive-semidefinite.

    Parameters
    ----------
    message : str
        Human readable explanation.
    witness : list
        Rational vector ``w`` with ``w^T M(0) w < 0``.
    """
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class GroupError(EquispectraError):
    """
    A group specification is inconsistent or incompatible with the data
    it is applied to.
    """


class StageError(EquispectraError):
    """
    A stage of the equivariantization pipeline failed.

    Parameters
    ----------
    stage : str
        Name of the failing stage, e.g. ``'compute_xi'``.
    message : str
        Human readable explanation.
    witness : optional
        Any data that helps diagnose the failure.
    """
    def __init__(self, stage, message, witness=None):
        super().__init__(f'{stage}: {message}')
        self.stage = stage
        self.witness = witness


class DocumentError(EquispectraError):
    """
    An input document (or a polynomial string inside it) can not be
    parsed.

    `line` and `column` are 1-based and may be `None` when the location
    is not known.
    """
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f'{message} (line {line}, column {column})'
        super().__init__(message)
        self.line = line
        self.column = column


class BudgetError(EquispectraError):
    """
    An enumeration would exceed its size budget.
    """
