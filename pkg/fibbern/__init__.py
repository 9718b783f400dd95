"""
fibbern - exact verification of identities linking Fibonacci and Lucas
numbers with Bernoulli numbers and polynomials.

Every identity in the catalog is evaluated in exact arithmetic over
Q(sqrt 5) and cross-checked through an independent derivation: coefficient
extraction from exponential generating functions, or Binet substitution.
The command line front end runs the verification grid, checks the
generating-function equations, prints value tables, benchmarks the kernels
and rebuilds the discrepancy ledger. Orchestration follows the Pocket Flow
node/flow pattern.
"""

__version__ = "0.1.0"
__description__ = "Exact Fibonacci-Lucas-Bernoulli identity verification"

# Core components
from .nodes import (
    LoadCatalogNode,
    EvaluateGridNode,
    OracleCrossCheckNode,
    AssembleReportNode,
    PrintSummaryNode,
    SeriesCheckNode,
    LoadLedgerNode,
    CollectEvidenceNode,
    AssembleLedgerNode,
    resolve_ids,
)

from .flow import (
    create_verification_flow,
    create_series_flow,
    create_ledger_flow,
)

from .utils import (
    # Exact arithmetic
    QuadExt,
    DensePoly,
    fib,
    lucas,
    bernoulli_number,
    bernoulli_poly,

    # Identities
    IdentityId,
    IdentityParams,
    IdentityVerdict,
    VerificationReport,
    GridSpec,
    evaluate_identity,
    oracle_check,
    verify_grid,
    check_functional_equation,
)

# Main entry point
from .main import run, main

__all__ = [
    # Nodes
    'LoadCatalogNode',
    'EvaluateGridNode',
    'OracleCrossCheckNode',
    'AssembleReportNode',
    'PrintSummaryNode',
    'SeriesCheckNode',
    'LoadLedgerNode',
    'CollectEvidenceNode',
    'AssembleLedgerNode',
    'resolve_ids',

    # Flows
    'create_verification_flow',
    'create_series_flow',
    'create_ledger_flow',

    # Exact arithmetic
    'QuadExt',
    'DensePoly',
    'fib',
    'lucas',
    'bernoulli_number',
    'bernoulli_poly',

    # Identities
    'IdentityId',
    'IdentityParams',
    'IdentityVerdict',
    'VerificationReport',
    'GridSpec',
    'evaluate_identity',
    'oracle_check',
    'verify_grid',
    'check_functional_equation',

    # Main functions
    'run',
    'main',
]
