"""triwedge: exact linear and exterior algebra for alternating trilinear forms.

The package computes, over the rationals or a prime field, the invariants
attached to an alternating trilinear form omega on an (n+1)-dimensional
vector space: pointwise ranks of the contracted skew form, the quadric
carried by a degenerate wedge square, the line congruence of kernel lines,
the degeneracy hypersurface or pencil structure of the contraction matrix,
the residual line family cut out by a pencil of covectors (its membership
test, line system, degree, secancy, and singular locus), and the integer
tables (multidegrees, Chern numbers, stratum degrees) that govern them.
All arithmetic is exact: `fractions.Fraction` over the rationals and Python
ints reduced modulo p over a prime field.  No floating point is used
anywhere.

The ``triwedge`` command line (see :mod:`triwedge.cli`) exposes four
subcommands: ``analyze`` for one form's invariants, ``tables`` for the
integer tables, ``verify`` for named suites of frozen claims with JSON
reports, and ``random-form`` for seeded reproducible form files.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
