"""
The namespace of equispectra is called :mod:`equispectra`. It turns
spectrahedra invariant under a compact group into equivariant
spectrahedral descriptions, and reduces invariant convex problems on
symmetric and skew-symmetric matrices to their sections.

The exact machinery (polynomials over the rationals, group coordinate
rings, pencils) lives in individual sub-modules, together with the
pipeline, the polar reductions and the command line.

.. rubric:: Sub-modules

.. autosummary::
   :toctree: generated/

   polyring
   groupring
   pencil
   sampling
   equivariant
   polar
   catalog
   document
   errors
   cli
   util

.. rubric:: Exported Functions

These functions and classes are available directly in the
:py:mod:`equispectra` namespace in addition to the modules that define
them.

.. autosummary::
   :toctree: generated/

   AffinePencil
   BasedPencil
   GroupSpec
   PolarFamily
   equivariantize
   equivariance_check
   set_equality_check
   invariance_sample_check
   project_to_section
   reduce_linear_problem
   chevalley_lift
   real_zero_check
   hopf_counterexample
"""

from .equivariant import (
    equivariantize as equivariantize,
    equivariance_check as equivariance_check,
    set_equality_check as set_equality_check,
)
from .groupring import GroupSpec as GroupSpec
from .pencil import (
    AffinePencil as AffinePencil, BasedPencil as BasedPencil,
    invariance_sample_check as invariance_sample_check,
)
from .polar import (
    PolarFamily as PolarFamily, chevalley_lift as chevalley_lift,
    hopf_counterexample as hopf_counterexample,
    project_to_section as project_to_section,
    real_zero_check as real_zero_check,
    reduce_linear_problem as reduce_linear_problem,
)

from .version import __version__ as __version__


__all__ = [
    'AffinePencil', 'BasedPencil', 'GroupSpec', 'PolarFamily',
    'equivariantize', 'equivariance_check', 'set_equality_check',
    'invariance_sample_check', 'project_to_section',
    'reduce_linear_problem', 'chevalley_lift', 'real_zero_check',
    'hopf_counterexample',
]


def test(*args, **kwargs):
    """
    Run the tests.

    Positional arguments will be inserted as command line arguments to
    the main test routine. Keyword arguments will be passed directly.
    """
    from pytest import main

    cmd = ['-p', 'equispectra.tests.options', '--pyargs', 'equispectra.tests']
    cmd.extend(args)
    return main(cmd, **kwargs)
