"""Hafnians and permanents of complex matrices, induced matrices of
permanents, and Gaussian-boson-sampler encodability of ``A(Y, B)`` blocks."""

from .combinatorics import (
    IndexSequence,
    complement,
    mu,
    nondecreasing_sequences,
    perfect_matchings,
    strict_subsets,
    submatrix,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    HafkitError,
    NumericalError,
    ParityError,
    ParseError,
    PreconditionError,
    SingularMatrixError,
    SizeLimitError,
)
from .gbs import (
    CovarianceMatrix,
    EncodabilityReport,
    build_covariance,
    check_encodable,
    scale_interval,
    symplectic_spectrum,
)
from .hafper import (
    BlockMatrix,
    assemble,
    hafnian,
    hafnian_block,
    hafnian_naive,
    permanent,
    permanent_naive,
    permanent_ryser,
)
from .induced import InducedMatrix, induced_c, induced_p, subset_permanent_matrix
from .linalg import (
    HermitianEigenDecomposition,
    determinant,
    eigh,
    inverse,
    is_hermitian,
    is_psd,
    is_symmetric,
    loewner_geq,
    psd_sqrt,
    spectral_norm,
)

__version__ = "0.1.0"
