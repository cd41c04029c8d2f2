"""Exact verification of power-series determinant identities.

The package constructs the coefficient matrices of three determinant
identities (multiplicative powers, compositional iterates, and their
common bivariate generalization, plus the full derivative form), computes
their determinants exactly, and checks them against closed forms; all
arithmetic is exact, over rationals, polynomials, or truncated series.
"""

from .rings import (
    BPOLY,
    QQ,
    ZZ,
    InexactDivisionError,
    MultiPoly,
    Ring,
    format_rational,
    parse_rational,
)
from .series import BiSeries, SeriesRing, UniSeries, series_from_json, series_to_json
from .closedform import (
    StirlingTable,
    bivariate_det_closed_form,
    derivative_det_closed_form,
    iteration_det_closed_form,
    power_det_closed_form,
    stirling2,
    superfactorial,
)
from .matrices import (
    RingMatrix,
    TriangularizationResult,
    binomial_transform,
    bivariate_iteration_matrix,
    derivative_power_matrix,
    det_bareiss,
    det_division_free,
    det_leibniz,
    iteration_matrix,
    power_matrix,
    triangularization_check,
)

__version__ = "0.1.0"
