"""XX spin chains with perfect state transfer built from dual -1 Hahn polynomials."""

__version__ = "0.1.0"

from .dual_hahn import (
    BannaiItoGrid,
    ChainParameters,
    RecurrenceData,
    WeightTable,
    bi_grid,
    closed_form_weights,
    mu_number,
    pochhammer,
    positivity_check,
    recurrence_coefficients,
)
from .orthopoly import (
    ChristoffelData,
    characteristic_derivative,
    christoffel_k_closed_form,
    christoffel_transform,
    evaluate_monic_sequence,
    stieltjes_reconstruct,
    verify_orthogonality,
)
from .pst import (
    DesignRequest,
    PSTCertificate,
    certify_pst,
    design_chain,
    fidelity_trace,
    spacing_certificate,
    verify_christoffel_link,
)
from .spinchain import (
    SpectralDecomposition,
    SpinChain,
    build_jacobi,
    eigensystem,
    is_mirror_symmetric,
    spectral_weights,
    transfer_amplitude,
)
