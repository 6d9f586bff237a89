"""Indices of symplectic paths, recurrence certificates, filtered-complex
normal forms and closed-orbit multiplicity bounds."""

__version__ = "0.1.0"

from .errors import (
    CertificateRangeError,
    ClassificationError,
    DegeneracyError,
    InputError,
    NearResonanceError,
    NumericalError,
    SearchExhaustedError,
    SymindexError,
    UnwrapError,
    VerificationError,
)
from .homalg import (
    CollapsedComplex,
    FilteredComplex,
    Generator,
    RationalMatrix,
    SpectralPages,
    collapse,
    homology,
    pages,
)
from .mult import (
    ContactSetting,
    Ellipsoid,
    MultiplicityBound,
    chat_limit_check,
    ellipsoid_capacity,
    ellipsoid_orbit_models,
    ellipsoid_spectral_invariants,
    lower_bound,
    mult_witness,
    resonance_check,
    verify_carrier_indices,
)
from .orbitmodel import DegenerateBlock, OrbitModel, RotationBlock, model_to_path
from .pathindex import (
    GeneratedPath,
    SampledPath,
    cz_index,
    integrate,
    iterate,
    mean_index,
    mu_pm,
    nullity,
    rs_index,
)
from .shdim import (
    d_chain_sphere,
    d_chain_stsn,
    grassmann_homology,
    sphere_sh_dims,
    stsn_sh_dims_cases,
    stsn_sh_dims_morsebott,
)
from .recurrence import (
    RecurrenceCertificate,
    epsilon0,
    find_recurrence,
    jump_intervals,
    verify_certificate,
)
from .symlin import DEFAULT_TOL, check_symplectic, eigen_classify, standard_J

__all__ = [
    "__version__",
    "CertificateRangeError",
    "ClassificationError",
    "CollapsedComplex",
    "ContactSetting",
    "DEFAULT_TOL",
    "DegenerateBlock",
    "DegeneracyError",
    "Ellipsoid",
    "FilteredComplex",
    "GeneratedPath",
    "Generator",
    "InputError",
    "MultiplicityBound",
    "NearResonanceError",
    "NumericalError",
    "OrbitModel",
    "RationalMatrix",
    "RecurrenceCertificate",
    "RotationBlock",
    "SampledPath",
    "SearchExhaustedError",
    "SpectralPages",
    "SymindexError",
    "UnwrapError",
    "VerificationError",
    "chat_limit_check",
    "check_symplectic",
    "collapse",
    "cz_index",
    "d_chain_sphere",
    "d_chain_stsn",
    "eigen_classify",
    "ellipsoid_capacity",
    "ellipsoid_orbit_models",
    "ellipsoid_spectral_invariants",
    "epsilon0",
    "find_recurrence",
    "grassmann_homology",
    "homology",
    "integrate",
    "iterate",
    "jump_intervals",
    "lower_bound",
    "mean_index",
    "model_to_path",
    "mu_pm",
    "mult_witness",
    "nullity",
    "pages",
    "resonance_check",
    "rs_index",
    "sphere_sh_dims",
    "standard_J",
    "stsn_sh_dims_cases",
    "stsn_sh_dims_morsebott",
    "verify_carrier_indices",
    "verify_certificate",
]
