"""
Utility functions for the identity verification system.
"""

from .exact import (
    ALPHA,
    BETA,
    SQRT5,
    DensePoly,
    QuadExt,
    binomial,
    format_poly,
    format_quad,
    parse_quad,
    poly_eval,
    quad_pow,
)
from .sequences import (
    alpha_power,
    beta_power,
    binet_fib,
    binet_lucas,
    fib,
    fib_naive,
    lucas,
    lucas_naive,
)
from .bernoulli import (
    akiyama_tanigawa,
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_poly,
    bernoulli_poly_at,
    bernoulli_translation,
    raabe_fraction_sum,
    von_staudt_clausen_denominator,
    von_staudt_clausen_integer,
)
from .egf import (
    HyperbolicKind,
    LaurentEgf,
    PoleOrderError,
    TruncationError,
    check_functional_equation,
    egf_coeff,
    egf_exp,
    egf_hyperbolic,
    egf_mul,
)
from .models import (
    CliConfig,
    DiscrepancyEntry,
    FunctionalEquation,
    GridSpec,
    IdentityId,
    IdentityParams,
    IdentitySummary,
    IdentityVerdict,
    LedgerEvidence,
    OracleSummary,
    SeriesVerdict,
    VerdictStatus,
    VerificationReport,
)
from .catalog import CATALOG, CatalogEntry, Family, SequenceKind
from .identities import (
    NoOracleError,
    ParameterError,
    evaluate_identity,
    golden_value,
    lucas_transform,
    lucas_transform_closed,
    oracle_agrees,
    oracle_check,
    oracle_path,
    rationality_split,
)
from .grid import expand_entry, expand_grid, resolve_sample, verify_grid
from .config_loader import (
    get_run_setting,
    get_series_order,
    load_grid_spec,
    clear_cache as clear_config_cache
)
from .ledger_loader import collect_evidence, ledger_to_yaml, load_ledger
from .report_serializer import (
    render_ledger,
    render_report,
    render_series,
    render_table,
    report_to_dict,
)
from .save_report import save_report

__all__ = [
    # Exact arithmetic
    'ALPHA',
    'BETA',
    'SQRT5',
    'DensePoly',
    'QuadExt',
    'binomial',
    'format_poly',
    'format_quad',
    'parse_quad',
    'poly_eval',
    'quad_pow',

    # Sequences
    'alpha_power',
    'beta_power',
    'binet_fib',
    'binet_lucas',
    'fib',
    'fib_naive',
    'lucas',
    'lucas_naive',

    # Bernoulli numbers and polynomials
    'akiyama_tanigawa',
    'bernoulli_number',
    'bernoulli_numbers',
    'bernoulli_poly',
    'bernoulli_poly_at',
    'bernoulli_translation',
    'raabe_fraction_sum',
    'von_staudt_clausen_denominator',
    'von_staudt_clausen_integer',

    # Generating functions
    'HyperbolicKind',
    'LaurentEgf',
    'PoleOrderError',
    'TruncationError',
    'check_functional_equation',
    'egf_coeff',
    'egf_exp',
    'egf_hyperbolic',
    'egf_mul',

    # Models
    'CliConfig',
    'DiscrepancyEntry',
    'FunctionalEquation',
    'GridSpec',
    'IdentityId',
    'IdentityParams',
    'IdentitySummary',
    'IdentityVerdict',
    'LedgerEvidence',
    'OracleSummary',
    'SeriesVerdict',
    'VerdictStatus',
    'VerificationReport',

    # Identities
    'CATALOG',
    'CatalogEntry',
    'Family',
    'SequenceKind',
    'NoOracleError',
    'ParameterError',
    'evaluate_identity',
    'golden_value',
    'lucas_transform',
    'lucas_transform_closed',
    'oracle_agrees',
    'oracle_check',
    'oracle_path',
    'rationality_split',

    # Grid runner
    'expand_entry',
    'expand_grid',
    'resolve_sample',
    'verify_grid',

    # Configuration
    'get_run_setting',
    'get_series_order',
    'load_grid_spec',
    'clear_config_cache',

    # Ledger
    'collect_evidence',
    'ledger_to_yaml',
    'load_ledger',

    # Rendering and output
    'render_ledger',
    'render_report',
    'render_series',
    'render_table',
    'report_to_dict',
    'save_report',
]
