"""Exception types shared across the package."""


class ChLabError(Exception):
    """Base class for all package-specific errors."""


class NonFiniteField(ChLabError):
    """A field contains NaN or infinite values."""


class MeanNotZero(ChLabError):
    """An operation requiring a mean-zero field received one with nonzero mean."""


class BlowUp(ChLabError):
    """Time integration produced non-finite values.

    Carries the step index at which the blow-up was detected.
    """

    def __init__(self, step_index: int, message: str = ""):
        self.step_index = step_index
        super().__init__(message or f"solution blew up at step {step_index}")


class InvalidParams(ChLabError):
    """Parameters outside the admissible range of a formula or model."""


class EmptyInterface(ChLabError):
    """The field has no zero crossing, so there is no interface to extract."""


class BoundaryContact(ChLabError):
    """A zero-level contour touches the domain boundary (open contour)."""


class DegenerateGeometry(ChLabError):
    """A polyline is self-intersecting or otherwise unusable."""


class BoundaryProximity(ChLabError):
    """An approximation geometry runs too close to the domain boundary."""


class CorruptSnapshot(ChLabError):
    """A snapshot file failed its integrity checks (magic, size, CRC)."""


class UnsupportedVersion(ChLabError):
    """A snapshot file declares a format version this code does not read."""


class ConfigError(ChLabError):
    """Configuration text failed validation; carries all collected errors."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
