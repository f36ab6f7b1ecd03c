"""
:mod:`equispectra.tests` is the `equispectra` test package. Each module in
the main :mod:`equispectra` package has a corresponding test module here.

Exact routines are tested on small hand-checked inputs and on the
worked examples, whose published matrices serve as the reference.
Floating point routines are tested for agreement with independent
oracles: brute force enumeration, linear programming over sampled
points, or exact rational computations at sampled inputs.

The default run keeps the property suites small. The ``--full`` option
of the :mod:`equispectra.tests.options` plugin runs them at full size:

Kostant
    Majorization against the hull oracle with 5000 sampled conjugates.
Sturm
    Real-zero certificates of 200 random determinant polynomials.
Haar
    Exact moments against quadrature on 100 random elements.
"""
