"""voalog: exact symbolic verification of logarithmic lattice VOA constructions."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    CutoffTooSmall,
    InvalidParameters,
    IrrationalEigenvalue,
    NonIntegralExponent,
    NonIntegralWeight,
    NotInKernel,
    NotNilpotent,
    UnregisteredVector,
    VoalogError,
)
from .fock import (  # noqa: E402
    FockBasisVector,
    FockElement,
    basis_vector,
    exp_state,
    graded_basis,
    vacuum,
)

# the affine lattice constructor lives in voalog.lattice (voalog.affine is the sl2 module)
from .lattice import LatticeConfig, Sector, sector, super_ns, triplet  # noqa: E402

__all__ = [
    "ConfigError",
    "CutoffTooSmall",
    "FockBasisVector",
    "FockElement",
    "InvalidParameters",
    "IrrationalEigenvalue",
    "LatticeConfig",
    "NonIntegralExponent",
    "NonIntegralWeight",
    "NotInKernel",
    "NotNilpotent",
    "Sector",
    "UnregisteredVector",
    "VoalogError",
    "__version__",
    "basis_vector",
    "exp_state",
    "graded_basis",
    "sector",
    "super_ns",
    "triplet",
    "vacuum",
]
