"""Quasi-randomness analysis for tournaments.

Exact even/odd cycle counting through integer powers of the skew-symmetric
sign matrix, spectral certificates from its Gram matrix, and subset
discrepancy search, with brute-force oracles validating the identities at
small scale.
"""

__version__ = "0.1.0"

from .core import (
    CoinStream,
    GeneratorSpec,
    Tournament,
    d_minus,
    d_plus,
    decode,
    edge_sign,
    encode,
    generate,
    paley_tournament,
    random_tournament,
    relabel,
    reverse,
    rotational_tournament,
    transitive_tournament,
)
from .discrepancy import (
    DiscrepancyReport,
    disc_exhaustive,
    disc_given,
    disc_given_report,
    disc_localsearch,
    disc_sample,
    spectral_upper_bound,
    witness_vectors,
)
from .errors import (
    InternalInvariantError,
    ParseError,
    ResourceLimitError,
    SpectralNonConvergence,
)
from .exactcount import (
    BoundCheckResult,
    CycleCountReport,
    SignMatrix,
    brute_force_count,
    cycle_parity,
    ec_bound_check,
    even_cycles_trace,
    mat_pow,
    mat_pow_trace,
    sign_matrix,
    total_cycles,
)
from .spectral import (
    CertificateReport,
    GramMatrix,
    SpectralSummary,
    full_spectrum,
    gram,
    lambda1,
    moment_crosscheck,
    quasirandom_certificate,
)

__all__ = [
    "__version__",
    "BoundCheckResult",
    "CertificateReport",
    "CoinStream",
    "CycleCountReport",
    "DiscrepancyReport",
    "GeneratorSpec",
    "GramMatrix",
    "InternalInvariantError",
    "ParseError",
    "ResourceLimitError",
    "SignMatrix",
    "SpectralNonConvergence",
    "SpectralSummary",
    "Tournament",
    "brute_force_count",
    "cycle_parity",
    "d_minus",
    "d_plus",
    "decode",
    "disc_exhaustive",
    "disc_given",
    "disc_given_report",
    "disc_localsearch",
    "disc_sample",
    "ec_bound_check",
    "edge_sign",
    "encode",
    "even_cycles_trace",
    "full_spectrum",
    "generate",
    "gram",
    "lambda1",
    "mat_pow",
    "mat_pow_trace",
    "moment_crosscheck",
    "paley_tournament",
    "quasirandom_certificate",
    "random_tournament",
    "relabel",
    "reverse",
    "rotational_tournament",
    "sign_matrix",
    "spectral_upper_bound",
    "total_cycles",
    "transitive_tournament",
    "witness_vectors",
]
