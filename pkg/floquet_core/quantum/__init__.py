"""
量子模組
二維網格波函數、旋轉座標系傳播子與色散估計
"""
from .grid import (
    ALLOWED_SIZES,
    GridSpec,
    WaveFunction,
    escaped_mass_fraction,
    gaussian,
    load_wavefunction,
    save_wavefunction,
    spectral_edge_fraction,
)
from .propagators import (
    ChirpFactorization,
    chirp_factorization,
    gamma,
    lab_frame_strang,
    mehler_propagate,
    rotate_wavefunction,
    strang_oracle,
)
from .estimates import (
    ScaledTransform,
    dispersive_ratio,
    lq_dispersive_ratio,
    scaled_transform,
    second_moment,
    weighted_norm_ratio,
    weighted_propagated_norm,
)

__all__ = [
    'ALLOWED_SIZES',
    'GridSpec',
    'WaveFunction',
    'escaped_mass_fraction',
    'gaussian',
    'load_wavefunction',
    'save_wavefunction',
    'spectral_edge_fraction',
    'ChirpFactorization',
    'chirp_factorization',
    'gamma',
    'lab_frame_strang',
    'mehler_propagate',
    'rotate_wavefunction',
    'strang_oracle',
    'ScaledTransform',
    'dispersive_ratio',
    'lq_dispersive_ratio',
    'scaled_transform',
    'second_moment',
    'weighted_norm_ratio',
    'weighted_propagated_norm',
]
