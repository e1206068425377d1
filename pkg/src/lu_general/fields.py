"""Scalar fields the matrices are defined over.

Two backends are supported:

* ``rational`` -- exact arithmetic over arbitrary-precision fractions.
  ``is_zero`` means literal equality with zero; every algebraic identity
  in the package holds bit-exactly.  This backend is normative.
* ``float64`` -- IEEE doubles with a positive absolute ``zero_tolerance``;
  ``is_zero(x)`` means ``|x| <= zero_tolerance``.  Rank and existence
  verdicts under this backend are tolerance-dependent and therefore
  advisory.

The default float tolerance, resolved when a matrix is built, is
``2**-26`` times the largest absolute entry (a heuristic; pass an explicit
tolerance to override).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

RATIONAL_KIND = "rational"
FLOAT64_KIND = "float64"

#: Relative factor used to derive a default float tolerance from a matrix.
DEFAULT_REL_TOLERANCE = 2.0 ** -26


@dataclass(frozen=True)
class ScalarField:
    """Identifies the scalar backend and, for floats, the zero threshold.

    ``zero_tolerance`` is absolute.  For the rational backend it is 0 and
    unused.  For the float backend it must be positive; a value of ``None``
    marks a field whose tolerance is still to be resolved from matrix data
    (see :meth:`resolved_for`).
    """

    kind: str
    zero_tolerance: float | None = 0.0

    @property
    def exact(self) -> bool:
        return self.kind == RATIONAL_KIND

    def coerce(self, value):
        """Coerce ``value`` into this field's entry type."""
        if self.exact:
            if isinstance(value, float):
                raise TypeError(
                    "refusing to coerce float %r to an exact rational; "
                    "pass a Fraction, int or 'p/q' string" % value
                )
            return Fraction(value)
        return float(value)

    def is_zero(self, value) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= self.zero_tolerance

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def one(self):
        return Fraction(1) if self.exact else 1.0

    def resolved_for(self, entries) -> "ScalarField":
        """Return a field with a concrete tolerance for the given entries.

        Exact fields are returned unchanged.  Float fields with a pending
        tolerance get ``DEFAULT_REL_TOLERANCE * max|entry|`` (or the bare
        relative factor when all entries vanish, keeping the tolerance
        positive as required).
        """
        if self.exact or self.zero_tolerance is not None:
            return self
        amax = max((abs(float(e)) for e in entries), default=0.0)
        tol = DEFAULT_REL_TOLERANCE * amax if amax > 0 else DEFAULT_REL_TOLERANCE
        return ScalarField(FLOAT64_KIND, tol)


#: The exact rational field (the reference backend).
RATIONAL = ScalarField(RATIONAL_KIND, 0.0)


def float64(zero_tolerance: float | None = None) -> ScalarField:
    """Float backend; tolerance defaults per-matrix when left as ``None``."""
    if zero_tolerance is not None and zero_tolerance <= 0:
        raise ValueError("float64 zero_tolerance must be positive")
    return ScalarField(FLOAT64_KIND, zero_tolerance)
