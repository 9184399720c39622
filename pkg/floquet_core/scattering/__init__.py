"""
散射模組
奇異時間積分、Floquet 切片範數、Cook 和與波算子缺陷
"""
from .floquet import (
    ExcludedPair,
    FloquetNormTable,
    FloquetVector,
    floquet_free_evolution_norm,
    floquet_free_norm,
)
from .resolvent import (
    DecayReport,
    ResolventSeries,
    decay_fit,
    gamma_double_integral,
    resolvent_series_partial_sums,
    zeta2_power_integral,
    zeta2_singular_integral,
)
from .cook import (
    CookBound,
    CookReport,
    DefectReport,
    SigmaRReport,
    cook_bound,
    cook_integrand_partial_sums,
    sigma_R_quadrature,
    wave_operator_defect,
)

__all__ = [
    'ExcludedPair',
    'FloquetNormTable',
    'FloquetVector',
    'floquet_free_evolution_norm',
    'floquet_free_norm',
    'DecayReport',
    'ResolventSeries',
    'decay_fit',
    'gamma_double_integral',
    'resolvent_series_partial_sums',
    'zeta2_power_integral',
    'zeta2_singular_integral',
    'CookBound',
    'CookReport',
    'DefectReport',
    'SigmaRReport',
    'cook_bound',
    'cook_integrand_partial_sums',
    'sigma_R_quadrature',
    'wave_operator_defect',
]
