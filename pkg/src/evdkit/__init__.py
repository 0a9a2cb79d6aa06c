"""evdkit: Gumbel-family extreme value distributions.

Densities, quantiles and moments for nine generalisations of the Gumbel
law, likelihood fitting, right-tail goodness of fit, tail-heaviness
classification and a simulation study harness.
"""

__version__ = "0.1.0"

from ._core import BACKEND
from ._family import Family
from .dataio import MonthlySeries, load_embedded_wind, read_csv, seasonal_adjust, write_csv
from .distributions import (
    PRESETS,
    TABLE3_PRESETS,
    DistributionSpec,
    cdf,
    logpdf,
    moments,
    pdf,
    quantile,
    reduce_to_identifiable,
    sample,
    sf,
)
from .errors import (
    DataError,
    DomainError,
    EvdkitError,
    InsufficientDataError,
    InvalidSpecError,
    InvariantError,
    NonConvergenceError,
    ParseError,
)
from .estimation import FitConfig, FitResult, Method, fit_gev_pwm, fit_mle, fit_tev_profile, profile_loglik_curve
from .gof import GofReport, QqEnvelope, ad2r, adr, aic, gof_report, q999_discrepancy, qq_envelope
from .montecarlo import StudyConfig, StudyReport, run_study
from .tails import TailClassification, compare_right_tails, rigby_classify, survival_ratio, tail_index
