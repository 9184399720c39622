#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
色散估計相關的範數計算

遠場表示：|Ũ₀(τ,s)f(x)| = (m/(2π|b|))·|ĝ(mx/b)|，其中 g = f·exp(i·m·M₁₁|y|²/(2b))、
ĝ 為其 Fourier 變換。傳播後態的 sup、L^Q 與徑向加權 L² 範數都由 ĝ 直接得到，
不需要把展開後的態放回網格。
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import fft, integrate
from scipy.interpolate import RectBivariateSpline

from ..errors import (
    AliasingRisk,
    CausticProximity,
    DivergentWeight,
    GridEscape,
    InvalidArgument,
)
from ..hill import FundamentalPair, Monodromy
from ..models import PotentialSpec, potential_lp_norm, rho1, rho2
from .grid import WaveFunction, escaped_mass_fraction
from .propagators import (
    DEFAULT_ALIASING_TOL,
    DEFAULT_GAMMA_MIN,
    chirp_factorization,
    gamma,
    mehler_propagate,
)

RadialWeight = Callable[[np.ndarray], np.ndarray]

_ANGULAR_NODES = 256


@dataclass(frozen=True, eq=False)
class ScaledTransform:
    """ĝ 的取樣（fftshift 後），以及重建傳播態範數所需的常數"""
    b: float
    mass: float
    k_axis: np.ndarray
    power: np.ndarray
    dk: float

    @property
    def scale(self) -> float:
        return self.mass / (2.0 * math.pi * abs(self.b))

    def sup_norm(self) -> float:
        return self.scale * math.sqrt(float(np.max(self.power)))

    def l2_norm(self) -> float:
        return math.sqrt(float(np.sum(self.power)) * self.dk ** 2) / (2.0 * math.pi)

    def lq_norm(self, Q: float) -> float:
        """‖Ũ₀f‖_Q = (m/(2π|b|))·(|b|/m)^{2/Q}·‖ĝ‖_Q"""
        if math.isinf(Q):
            return self.sup_norm()
        if Q < 1:
            raise InvalidArgument("Q must be >= 1", Q=Q)
        ghat_q = (float(np.sum(self.power ** (Q / 2.0))) * self.dk ** 2) ** (1.0 / Q)
        return self.scale * (abs(self.b) / self.mass) ** (2.0 / Q) * ghat_q

    def weighted_l2_norm(self, weight: RadialWeight, rel_tol: float = 1e-8) -> float:
        """
        ‖w·Ũ₀f‖₂，w 為徑向權重 w(r)

        ‖w·Ũ₀f‖² = (2π)⁻² ∫ w(|b|κ/m)²·|ĝ(k)|² d²k，角度平均由 |ĝ|² 的雙三次樣條求得，
        徑向積分交給 quad，權重的尺度 κ ~ m/|b| 作為斷點。
        """
        power = self.power
        peak = float(np.max(power))
        if peak == 0.0:
            return 0.0
        centre = len(self.k_axis) // 2
        rows, cols = np.nonzero(power > 1e-16 * peak)
        reach = int(max(np.max(np.abs(rows - centre)), np.max(np.abs(cols - centre)))) + 4
        reach = max(reach, 8)
        lo, hi = max(centre - reach, 0), min(centre + reach + 1, len(self.k_axis))
        axis = self.k_axis[lo:hi]
        spline = RectBivariateSpline(axis, axis, power[lo:hi, lo:hi], kx=3, ky=3)
        kappa_max = float(min(-axis[0], axis[-1]))

        theta = 2.0 * math.pi * np.arange(_ANGULAR_NODES) / _ANGULAR_NODES
        cos_t, sin_t = np.cos(theta), np.sin(theta)
        length_scale = abs(self.b) / self.mass

        def integrand(kappa: float) -> float:
            ring = spline.ev(kappa * cos_t, kappa * sin_t)
            angular = 2.0 * math.pi * float(np.mean(ring))
            w = float(weight(np.asarray(length_scale * kappa)))
            return kappa * w * w * angular

        knee = 1.0 / length_scale
        points = [knee] if 0.0 < knee < kappa_max else None
        value, _ = integrate.quad(
            integrand, 0.0, kappa_max, points=points, limit=400, epsabs=0.0, epsrel=rel_tol
        )
        return math.sqrt(max(value, 0.0)) / (2.0 * math.pi)


def scaled_transform(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    psi: WaveFunction,
    pad: int = 2,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> ScaledTransform:
    """
    計算 ĝ 並檢查輸入啁啾的混疊

    Raises:
        CausticProximity: 接近焦散
        AliasingRisk: 輸入啁啾 m·M₁₁/b 在支撐上超出 Nyquist
    """
    factor = chirp_factorization(pair, mono, tau, s, gamma_min)
    grid = psi.grid
    m = pair.field.mass
    g = psi.amplitudes * np.exp(0.5j * m * factor.a11 * grid.r2() / factor.b)

    size = pad * grid.n
    raw = fft.fft2(g, s=(size, size))
    power_raw = np.abs(raw) ** 2
    total = float(np.sum(power_raw))
    if total > 0.0:
        k = 2.0 * np.pi * fft.fftfreq(size, d=grid.dx)
        k1, k2 = np.meshgrid(k, k, indexing="ij")
        edge = 0.9 * grid.k_nyquist
        frame = (np.abs(k1) > edge) | (np.abs(k2) > edge)
        fraction = float(np.sum(power_raw[frame])) / total
        if fraction > aliasing_tol:
            raise AliasingRisk(
                f"far-field chirp exceeds the grid Nyquist bound (edge fraction {fraction:.2e})",
                tau=tau, s=s, edge_fraction=fraction,
            )

    power = fft.fftshift(power_raw) * grid.dx ** 4
    k_axis = fft.fftshift(2.0 * np.pi * fft.fftfreq(size, d=grid.dx))
    dk = 2.0 * np.pi / (size * grid.dx)
    return ScaledTransform(factor.b, m, k_axis, power, dk)


def weighted_propagated_norm(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    f: WaveFunction,
    weight: RadialWeight,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
    escape_tol: float = 1e-6,
) -> float:
    """
    ‖w·Ũ₀(τ,s)f‖₂

    先用遠場表示；輸入啁啾混疊（|b| 小）時改為同網格 Mehler 傳播並檢查外框質量。

    Raises:
        CausticProximity / AliasingRisk / GridEscape: 兩條路徑都不可靠時
    """
    if f.is_zero:
        return 0.0
    if tau == s:
        r = np.sqrt(f.grid.r2())
        return f.multiplied(weight(r)).l2_norm
    try:
        return scaled_transform(
            pair, mono, tau, s, f, gamma_min=gamma_min, aliasing_tol=aliasing_tol
        ).weighted_l2_norm(weight)
    except AliasingRisk:
        out = mehler_propagate(pair, mono, tau, s, f, gamma_min, aliasing_tol)
        escaped = escaped_mass_fraction(out)
        if escaped > escape_tol:
            raise GridEscape(
                f"propagated state leaves the grid (frame mass {escaped:.2e})",
                tau=tau, s=s, escaped_fraction=escaped,
            )
        r = np.sqrt(out.grid.r2())
        return out.multiplied(weight(r)).l2_norm


def _check_gamma(pair: FundamentalPair, mono: Monodromy, tau: float, s: float, gamma_min: float) -> float:
    g = gamma(pair, mono, tau, s)
    if g == 0.0 or g / pair.field.mass < gamma_min:
        raise CausticProximity(
            f"Gamma={g:.3e} too small at (tau={tau!r}, s={s!r})", tau=tau, s=s, gamma=g
        )
    return g


def dispersive_ratio(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    psi: WaveFunction,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
    pad: int = 2,
) -> float:
    """
    ‖Ũ₀(τ,s)ψ‖_∞·Γ(τ,s)/‖ψ‖₁

    sup 與 l1 範數在旋轉下不變，旋轉座標系的結果即為 U₀ 的結果；
    Hausdorff–Young 給出上界 m/(2π)。
    """
    g = _check_gamma(pair, mono, tau, s, gamma_min)
    l1 = psi.l1_norm
    if l1 == 0.0:
        raise InvalidArgument("dispersive_ratio needs a non-zero wavefunction")
    st = scaled_transform(pair, mono, tau, s, psi, pad=pad, gamma_min=gamma_min, aliasing_tol=aliasing_tol)
    return st.sup_norm() * g / l1


def lq_dispersive_ratio(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    psi: WaveFunction,
    Q: float,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> float:
    """
    插值估計 ‖Ũ₀f‖_Q·Γ^{2(1/2 − 1/Q)}/‖f‖_{Q′}，1/Q + 1/Q′ = 1

    Q = 2 時為 1（么正），Q = ∞ 時即 dispersive_ratio。
    """
    if Q < 2:
        raise InvalidArgument("Q must be >= 2", Q=Q)
    g = _check_gamma(pair, mono, tau, s, gamma_min)
    amps = np.abs(psi.amplitudes)
    dx2 = psi.grid.dx ** 2
    if math.isinf(Q):
        dual_norm = float(np.sum(amps)) * dx2
        exponent = 1.0
    else:
        dual = Q / (Q - 1.0)
        dual_norm = (float(np.sum(amps ** dual)) * dx2) ** (1.0 / dual)
        exponent = 2.0 * (0.5 - 1.0 / Q)
    if dual_norm == 0.0:
        raise InvalidArgument("lq_dispersive_ratio needs a non-zero wavefunction")
    st = scaled_transform(pair, mono, tau, s, psi, gamma_min=gamma_min, aliasing_tol=aliasing_tol)
    return st.lq_norm(Q) * g ** exponent / dual_norm


def weight_norms(pot: PotentialSpec, p: float):
    """(‖ρ₁‖_p, ‖ρ₂‖_p)，發散時拋出 DivergentWeight"""
    n1 = potential_lp_norm(pot, "rho1", p)
    n2 = potential_lp_norm(pot, "rho2", p)
    if not (n1.finite and n2.finite):
        raise DivergentWeight(
            f"||rho||_{p} diverges for rho={pot.rho} (need p*rho > 4)", p=p, rho=pot.rho
        )
    return n1.value, n2.value


def weighted_norm_ratio(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    psi: WaveFunction,
    pot: PotentialSpec,
    p_tilde: float,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> float:
    """
    ‖ρ₁·Ũ₀(τ,s)(ρ₂ψ)‖₂·Γ^{2/p̃}/(‖ρ₁‖_p̃·‖ρ₂‖_p̃·‖ψ‖₂)

    Raises:
        DivergentWeight: ‖ρⱼ‖_p̃ 發散
    """
    if not 2.0 <= p_tilde < math.inf:
        raise InvalidArgument("p_tilde must lie in [2, inf)", p_tilde=p_tilde)
    n1, n2 = weight_norms(pot, p_tilde)
    if psi.is_zero:
        return 0.0
    if n1 == 0.0:
        raise InvalidArgument("weighted_norm_ratio needs a non-zero potential")
    g = _check_gamma(pair, mono, tau, s, gamma_min)
    f = psi.multiplied(rho2(pot, psi.grid.r2()))
    numerator = weighted_propagated_norm(
        pair, mono, tau, s, f, lambda r: rho1(pot, r ** 2), gamma_min, aliasing_tol
    )
    return numerator * g ** (2.0 / p_tilde) / (n1 * n2 * psi.l2_norm)


def second_moment(psi: WaveFunction) -> float:
    """(Σ|x|²|ψ|² dx²)^{1/2} / ‖ψ‖₂"""
    norm = psi.l2_norm
    if norm == 0.0:
        raise InvalidArgument("second_moment needs a non-zero wavefunction")
    moment = float(np.sum(psi.grid.r2() * np.abs(psi.amplitudes) ** 2)) * psi.grid.dx ** 2
    return math.sqrt(moment) / norm
