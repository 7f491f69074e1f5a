# SPDX-License-Identifier: Apache-2.0
"""Cell-free massive MIMO uplink simulator with Golden-code STBC users."""

from ._core import (
    DegenerateSinrError,
    DegenerateSplitError,
    ScenarioConfig,
    SingularMatrixError,
    __version__,
    convergence_margin,
    diagnostics,
    encode,
    equivalent_channel,
    exact_inverse,
    golden_params,
    gram,
    inversion_flops,
    mmse_matrix,
    neumann_inverse,
    neumann_r2,
    run_ber_sweep,
    run_se_sweep,
    zf_matrix,
)

__all__ = [
    "DegenerateSinrError",
    "DegenerateSplitError",
    "ScenarioConfig",
    "SingularMatrixError",
    "__version__",
    "convergence_margin",
    "diagnostics",
    "encode",
    "equivalent_channel",
    "exact_inverse",
    "golden_params",
    "gram",
    "inversion_flops",
    "mmse_matrix",
    "neumann_inverse",
    "neumann_r2",
    "run_ber_sweep",
    "run_se_sweep",
    "zf_matrix",
]
