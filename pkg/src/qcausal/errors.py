"""Exception and warning types.

Every error carries a ``status`` slug used in report files and sweep rows.
"""


class QCausalError(ValueError):
    status = "error"


class InvalidBoundsError(QCausalError):
    status = "invalid_bounds"


class GridMismatchError(QCausalError):
    status = "grid_mismatch"


class RegionTooSmallError(QCausalError):
    status = "region_too_small"


class NonContiguousMaskError(QCausalError):
    status = "non_contiguous_mask"


class BoxTooSmallError(QCausalError):
    status = "box_too_small"


class ResolutionError(QCausalError):
    status = "resolution_too_coarse"


class BoxOverflowError(QCausalError):
    status = "box_overflow"


class NormalizationError(QCausalError):
    status = "not_normalized"


class ZeroChirpError(QCausalError):
    status = "zero_chirp"


class VanishingOverlapError(QCausalError):
    status = "vanishing_overlap"


class NonRealOverlapError(QCausalError):
    status = "non_real_overlap"


class AntiparallelDegenerateError(QCausalError):
    status = "antiparallel_degenerate"


class EmptyMaskError(QCausalError):
    status = "empty_mask"


class SupportEscapesMaskError(QCausalError):
    status = "support_escapes_mask"


class UnderResolvedError(QCausalError):
    status = "under_resolved"


class MuOutsideMaskError(QCausalError):
    status = "mu_outside_mask"


class ZeroDensityError(QCausalError):
    status = "zero_density"


class ConfigError(QCausalError):
    status = "config_error"


class AnalysisNotApplicable(QCausalError):
    """The single-stationary-point analysis does not apply to this pair.

    ``partial`` holds whatever report fields were computed before the
    failing stage.
    """

    status = "not_applicable"

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial or {}


class NoStationaryPointError(AnalysisNotApplicable):
    status = "no_stationary_point"


class MultiStationaryPointError(AnalysisNotApplicable):
    status = "multiple_stationary_points"


class DegenerateCurvatureError(AnalysisNotApplicable):
    status = "degenerate_curvature"


class AliasingWarning(UserWarning):
    """Adjacent raw phase samples jump by more than pi/2."""
