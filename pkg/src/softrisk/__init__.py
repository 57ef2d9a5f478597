"""Group risk elicitation with soft-triangle uncertainty distributions.

Core pieces: closed-form soft-triangle densities elicited as
(low, median, high, phi); linear opinion pooling across experts; numerical
product distributions for risk = consequences x vulnerability x threat; a
file-backed session store; and an HTTP facade for the interactive front end.
"""

from .aggregation import (
    ExpertEstimate,
    PooledDensity,
    aggregate,
    common_grid,
    count_modes,
    grid_to_csv,
)
from .distributions import (
    BetaParams,
    DerivedCoefficients,
    GriddedDensity,
    SoftTriangleParams,
    TriangularParams,
    cdf_soft,
    cdf_triangular,
    derive_coefficients,
    pdf_beta,
    pdf_curve,
    pdf_sharp,
    pdf_soft,
    pdf_triangular,
    quantile_soft,
    sample_soft,
    to_grid,
    validate_params,
)
from .errors import ElicitationError
from .risk_product import (
    ProductResult,
    RiskSpec,
    product_cdf,
    product_csv,
    product_density,
    risk_triple,
)
from .session_store import Question, Session, SessionStore

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ElicitationError",
    "SoftTriangleParams",
    "DerivedCoefficients",
    "TriangularParams",
    "BetaParams",
    "GriddedDensity",
    "validate_params",
    "derive_coefficients",
    "pdf_soft",
    "pdf_sharp",
    "cdf_soft",
    "quantile_soft",
    "sample_soft",
    "pdf_triangular",
    "cdf_triangular",
    "pdf_beta",
    "to_grid",
    "pdf_curve",
    "ExpertEstimate",
    "PooledDensity",
    "common_grid",
    "aggregate",
    "count_modes",
    "grid_to_csv",
    "RiskSpec",
    "ProductResult",
    "product_cdf",
    "product_density",
    "risk_triple",
    "product_csv",
    "Question",
    "Session",
    "SessionStore",
]
