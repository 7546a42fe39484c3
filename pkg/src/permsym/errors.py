"""Exception hierarchy shared across the package.

Errors are grouped by how a caller should react to them: bad input
(``ValidationError``), geometry that cannot support the requested frames
(``GeometryError``), and requests that exceed the built-in search budgets
(``BudgetExceeded``).  The command-line client maps each group to its own
exit code.
"""


class PermsymError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PermsymError):
    """Input is malformed or violates a documented precondition."""


class SpinError(ValidationError):
    """Spin projection is out of range or has the wrong parity."""


class SameParticle(ValidationError):
    """A ranking sequence step pairs a particle with itself."""


class InvalidSequence(ValidationError):
    """A ranking sequence is malformed (bad index, self-reference,
    or an immediately repeated entry)."""


class UnknownIdentity(ValidationError):
    """A particle id does not exist in the configuration."""


class InexactTie(ValidationError):
    """Two angles are too close to order reliably and at least one of
    them is not exact, so the tie cannot be certified."""


class InexactAngle(ValidationError):
    """An operation that requires exact angles received an inexact one."""


class GeometryError(PermsymError):
    """Base class for degenerate-geometry conditions."""


class ZeroMomentum(GeometryError):
    """A particle has (numerically) zero momentum."""


class DegenerateAxis(GeometryError):
    """The summed momentum direction vanishes, so no common axis exists."""


class CollinearDegenerate(GeometryError):
    """A momentum is (anti)parallel to the reference axis, so the frame
    or azimuth built from their cross product is undefined."""


class IndeterminatePhi(GeometryError):
    """The transverse recoil of the other particles vanishes, so the
    dependent azimuth is undefined."""


class TooManyFermions(ValidationError):
    """The rule set only covers configurations with at most three fermions."""


class BudgetExceeded(PermsymError):
    """A search request exceeds the supported problem size."""


class IrrationalSum(PermsymError):
    """Internal arithmetic error: a sum of square roots did not collapse
    to a single square root of a rational (never expected for
    Clebsch-Gordan ladder recursions)."""
