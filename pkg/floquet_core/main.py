#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
週期磁場中帶電粒子的 Floquet 分析 - 命令列入口
主要功能：
- 讀取 JSON 配置並建立基本解與單值矩陣
- 將各子命令分派到 hill / classical / quantum / scattering 模組
- 寫出確定性的 CSV/JSON 結果與運行清單

結束碼：0 成功，2 前置條件錯誤（stderr 上印出錯誤名稱），1 內部錯誤。
"""

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
import numpy as np
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table
from scipy import fft
from tqdm import tqdm

from .classical import PhaseState, growth_fit, stroboscopic_trajectory
from .config import FloquetSettings, GridConfig, RunConfig, ToleranceConfig
from .errors import AliasingRisk, CausticProximity, ConfigError, FloquetError, InvalidArgument
from .events import create_run_stage_event, get_event_bus, reset_event_bus
from .hill import classify, find_zeros, integrate_fundamental, monodromy
from .models import ExperimentDocument, describe_validation_error, load_experiment, omega_integral
from .quantum import (
    dispersive_ratio,
    escaped_mass_fraction,
    gamma,
    gaussian,
    lab_frame_strang,
    load_wavefunction,
    mehler_propagate,
    save_wavefunction,
    second_moment,
    strang_oracle,
)
from .scattering import (
    cook_integrand_partial_sums,
    decay_fit,
    resolvent_series_partial_sums,
    sigma_R_quadrature,
    wave_operator_defect,
)
from .scattering.floquet import exclude_pair
from .utils.logger import log_run_status, setup_logger, timed
from .utils.output import RunManifest, dumps_json

console = Console(stderr=True)

SCANNABLE_TOP_LEVEL = ("period", "mass", "charge")


class FloquetSession:
    """單次執行的計算上下文：基本解、單值矩陣與網格按需建立"""

    def __init__(self, run_config: RunConfig):
        self.run_config = run_config
        self.document: ExperimentDocument = run_config.document
        self.field = self.document.field_spec()
        self.tol: ToleranceConfig = run_config.tolerances

    @cached_property
    def pair(self):
        steps = self.run_config.integrator.steps_per_period
        return integrate_fundamental(
            self.field,
            h=self.field.period / steps,
            method=self.run_config.integrator.method,
            wronskian_tol=self.tol.wronskian_tol,
        )

    @cached_property
    def mono(self):
        return monodromy(self.pair, self.tol.wronskian_tol)

    @cached_property
    def stability(self):
        return classify(self.mono, self.tol.tau_D)

    @property
    def grid(self):
        return self.run_config.grid.spec()

    @property
    def potential(self):
        if self.document.potential is None:
            raise ConfigError("this command needs a 'potential' entry in the config", key="potential")
        return self.document.potential


# ------------------------------------------------------------------
# 共用選項與執行框架
# ------------------------------------------------------------------

def common_options(func: Callable) -> Callable:
    """所有子命令共用的選項"""
    options = [
        click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False), help="JSON 配置文件"),
        click.option("--out", "out_dir", default=".", show_default=True, type=click.Path(file_okay=False), help="輸出目錄"),
        click.option("--threads", default=0, show_default=True, type=int, help="執行緒數（0 = 自動）"),
        click.option("--grid-n", "grid_n", default=None, type=int, help="每軸網格點數"),
        click.option("--grid-L", "grid_L", default=None, type=float, help="網格半寬 L"),
        click.option("--log-level", default=None, help="日誌等級"),
        click.option("--tau-D", "tau_D", default=None, type=float, help="拋物型判別容許值"),
        click.option("--gamma-min", "gamma_min", default=None, type=float, help="焦散門檻"),
        click.option("--wronskian-tol", "wronskian_tol", default=None, type=float, help="Wronskian 漂移容許值"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _parse_pair(text: str, name: str) -> Tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise InvalidArgument(f"--{name} expects two comma-separated numbers, got '{text}'") from exc
    return a, b


def build_run_config(common: Dict[str, Any]) -> RunConfig:
    """由共用選項組出 RunConfig"""
    document = load_experiment(common["config_path"])
    defaults = GridConfig()
    grid = GridConfig(
        n=common["grid_n"] if common["grid_n"] is not None else defaults.n,
        half_extent=common["grid_L"] if common["grid_L"] is not None else defaults.half_extent,
    )
    try:
        run_config = RunConfig(
            config_path=str(common["config_path"]),
            document=document,
            grid=grid,
            output_dir=str(common["out_dir"]),
        )
        return run_config.with_overrides(
            tau_D=common["tau_D"], gamma_min=common["gamma_min"], wronskian_tol=common["wronskian_tol"]
        )
    except ValidationError as exc:
        raise ConfigError(describe_validation_error(exc), location="command line") from exc


def run_command(command: str, common: Dict[str, Any], flags: Dict[str, Any], body: Callable) -> None:
    """
    執行子命令主體並處理錯誤與運行清單

    Args:
        command: 子命令名稱
        common: 共用選項
        flags: 子命令專屬旗標（記錄在清單中）
        body: body(session, manifest, threads)
    """
    settings = FloquetSettings()
    setup_logger(common["log_level"] or settings.log_level, settings.log_dir)
    reset_event_bus()
    manifest: Optional[RunManifest] = None
    try:
        run_config = build_run_config(common)
        out = run_config.ensure_output_dir()
        recorded = {k: v for k, v in common.items() if k not in ("config_path", "out_dir", "log_level", "threads")}
        recorded.update(flags)
        manifest = RunManifest(command, out, run_config, recorded)
        threads = settings.resolve_threads(common["threads"])
        log_run_status(command, "START", threads=threads, config=run_config.config_hash[:12])
        get_event_bus().publish(create_run_stage_event("cli", command=command, stage="start"))

        session = FloquetSession(run_config)
        with fft.set_workers(threads), timed(command):
            body(session, manifest, threads)

        get_event_bus().publish(create_run_stage_event("cli", command=command, stage="done"))
        manifest.write()
        log_run_status(command, "DONE", outputs=len(manifest.outputs))
    except FloquetError as e:
        click.echo(f"ERROR {e.code}: {e.message}", err=True)
        log_run_status(command, "FAILED", error=e.code)
        if manifest is not None:
            manifest.write("error", e.to_dict())
        sys.exit(2)
    except Exception as e:
        logger.exception(f"❌ {command} 內部錯誤: {e}")
        click.echo(f"ERROR InternalError: {e}", err=True)
        sys.exit(1)


def _summary(title: str, rows: List[Tuple[str, Any]]):
    table = Table(title=title)
    table.add_column("quantity", style="cyan")
    table.add_column("value", style="green")
    for key, value in rows:
        table.add_row(key, str(value))
    console.print(table)


@click.group()
@click.version_option(package_name="floquet-scattering")
def cli():
    """週期磁場中帶電粒子的 Floquet 穩定性、色散與散射計算"""


# ------------------------------------------------------------------
# hill / classical
# ------------------------------------------------------------------

def stability_record(session: FloquetSession) -> Dict[str, Any]:
    stab = session.stability
    return {
        "D": stab.discriminant,
        "regime": stab.regime.value,
        "lambda": stab.floquet_exponent,
        "lambda_tilde": stab.lambda_tilde,
        "zeta2_T": float(session.mono.phi_T[0, 1]),
        "zeta2_T_nonzero": stab.zeta2_T_nonzero,
        "zeros_zeta1": find_zeros(session.pair, 1, xtol=session.tol.zero_xtol).zeros,
        "zeros_zeta2": find_zeros(session.pair, 2, xtol=session.tol.zero_xtol).zeros,
        "eigenvalues": [[ev.real, ev.imag] for ev in stab.eigenvalues],
        "monodromy": session.mono.phi_T.tolist(),
        "det": session.mono.det,
        "wronskian_drift": session.pair.wronskian_drift(),
        "method": session.pair.method,
    }


@cli.command("classify")
@common_options
def classify_cmd(**common):
    """判別式、穩定性分類與 Floquet 指數"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        record = stability_record(session)
        manifest.json("classify.json", record)
        manifest.results.update(record)
        click.echo(dumps_json(record), nl=False)

    run_command("classify", common, {}, body)


def _parse_scan(text: str) -> Tuple[str, np.ndarray]:
    parts = text.split(":")
    if len(parts) != 4:
        raise InvalidArgument(f"scan flag must be name:start:stop:count, got '{text}'")
    name, start, stop, count = parts
    try:
        values = np.linspace(float(start), float(stop), int(count))
    except ValueError as exc:
        raise InvalidArgument(f"scan flag '{text}' has non-numeric bounds") from exc
    if int(count) < 1:
        raise InvalidArgument("scan count must be positive", count=count)
    return name, values


def _check_scan_names(doc: ExperimentDocument, names: List[str]):
    profile_keys = set(doc.profile.model_dump()) - {"kind"}
    for name in names:
        if name not in SCANNABLE_TOP_LEVEL and name not in profile_keys:
            raise ConfigError(f"cannot scan unknown parameter '{name}'", key=name, location="scan")


def _scan_document(doc: ExperimentDocument, overrides: Dict[str, float]) -> ExperimentDocument:
    data = doc.model_dump()
    for name, value in overrides.items():
        if name in SCANNABLE_TOP_LEVEL:
            data[name] = value
        else:
            data["profile"][name] = value
    try:
        return ExperimentDocument.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(describe_validation_error(exc), location="scan") from exc


@cli.command()
@common_options
@click.option("--param1", required=True, help="name:start:stop:count")
@click.option("--param2", default=None, help="name:start:stop:count")
def scan(param1: str, param2: Optional[str], **common):
    """參數掃描的穩定性圖（Mathieu 圖）"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        name1, values1 = _parse_scan(param1)
        axes = [(name1, values1)]
        if param2:
            axes.append(_parse_scan(param2))
        names = [a[0] for a in axes]
        points = [(v,) for v in values1] if len(axes) == 1 else [
            (v1, v2) for v1 in values1 for v2 in axes[1][1]
        ]
        _check_scan_names(session.document, names)
        integ = session.run_config.integrator
        tol = session.tol

        def evaluate(point):
            try:
                doc = _scan_document(session.document, dict(zip(names, point)))
            except ConfigError:
                return list(point) + [None, "Invalid", None], "ConfigError"
            field = doc.field_spec()
            try:
                pair = integrate_fundamental(
                    field, h=field.period / integ.steps_per_period, method=integ.method,
                    wronskian_tol=tol.wronskian_tol,
                )
                stab = classify(monodromy(pair, tol.wronskian_tol), tol.tau_D)
            except FloquetError as e:
                return list(point) + [None, "Invalid", None], e.code
            return list(point) + [stab.discriminant, stab.regime.value, stab.floquet_exponent], None

        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(tqdm(pool.map(evaluate, points), total=len(points), desc="scan", file=sys.stderr, leave=False))
        rows = [row for row, _ in outcomes]
        errors = {}
        for _, code in outcomes:
            if code is not None:
                errors[code] = errors.get(code, 0) + 1

        headers = ["param1", "param2"][: len(names)]
        manifest.csv("scan.csv", headers + ["D", "regime", "lambda"], rows)
        counts: Dict[str, int] = {}
        for row in rows:
            counts[row[len(names) + 1]] = counts.get(row[len(names) + 1], 0) + 1
        manifest.results.update({"rows": len(rows), "parameters": names, "regime_counts": counts, "errors": errors})
        _summary("scan", [("rows", len(rows))] + sorted(counts.items()))

    run_command("scan", common, {"param1": param1, "param2": param2}, body)


@cli.command()
@common_options
@click.option("--j", "which", type=click.Choice(["1", "2", "both"]), default="both", show_default=True)
def zeros(which: str, **common):
    """ζ₁、ζ₂ 在一個週期內的零點"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        js = (1, 2) if which == "both" else (int(which),)
        rows = []
        for j in js:
            zs = find_zeros(session.pair, j, xtol=session.tol.zero_xtol)
            rows.extend([j, t, d] for t, d in zip(zs.zeros, zs.derivative_at_zero))
        manifest.csv("zeros.csv", ["j", "t", "derivative"], rows)
        manifest.results["count"] = len(rows)

    run_command("zeros", common, {"j": which}, body)


@cli.command()
@common_options
@click.option("--x0", default="1,0", show_default=True, help="初始位置 x1,x2")
@click.option("--p0", default="0,0", show_default=True, help="初始動量 p1,p2")
@click.option("--N", "n_periods", default=20, show_default=True, type=int, help="週期數")
def trajectory(x0: str, p0: str, n_periods: int, **common):
    """頻閃古典軌跡與成長模式擬合"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        state = PhaseState(_parse_pair(x0, "x0"), _parse_pair(p0, "p0"))
        Omega_T = omega_integral(session.field, session.field.period)
        states = stroboscopic_trajectory(session.mono, Omega_T, state, n_periods)
        rows = [[n, *s.x, *s.p, s.norm_x] for n, s in enumerate(states)]
        manifest.csv("trajectory.csv", ["N", "x1", "x2", "p1", "p2", "norm_x"], rows)

        norms = [s.norm_x for s in states]
        start = 0 if norms[0] > 0 else 1
        try:
            fit = growth_fit(norms[start:], N0=start)
            manifest.results["growth_fit"] = {
                "model": fit.model.value,
                "rate": fit.rate,
                "slope": fit.slope,
                "quality": fit.quality,
                "quadratic_coefficient": fit.quadratic_coefficient,
            }
        except FloquetError as e:
            logger.warning(f"⚠️ 成長擬合略過: {e.code}")
            manifest.results["growth_fit"] = {"error": e.code}
        manifest.results["lambda"] = session.stability.floquet_exponent

    run_command("trajectory", common, {"x0": x0, "p0": p0, "N": n_periods}, body)


# ------------------------------------------------------------------
# quantum
# ------------------------------------------------------------------

def _initial_state(session: FloquetSession, psi_path: Optional[str], width: float, center: str, momentum: str):
    if psi_path:
        return load_wavefunction(psi_path)
    return gaussian(session.grid, width, _parse_pair(center, "center"), _parse_pair(momentum, "momentum"))


@cli.command()
@common_options
@click.option("--tau", required=True, type=float, help="終止時間")
@click.option("--s", "s", default=0.0, show_default=True, type=float, help="起始時間")
@click.option("--psi", "psi_path", default=None, type=click.Path(dir_okay=False), help="輸入波函數快照")
@click.option("--width", default=1.0, show_default=True, type=float)
@click.option("--center", default="0,0", show_default=True)
@click.option("--momentum", default="0,0", show_default=True)
@click.option("--method", type=click.Choice(["mehler", "strang", "lab"]), default="mehler", show_default=True)
@click.option("--dt", default=None, type=float, help="Strang 步長（預設 |τ−s|/512）")
def propagate(tau, s, psi_path, width, center, momentum, method, dt, **common):
    """傳播波函數並寫出快照與摘要"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        psi = _initial_state(session, psi_path, width, center, momentum)
        potential = session.document.potential
        if method == "mehler":
            out = mehler_propagate(session.pair, session.mono, tau, s, psi, session.tol.gamma_min, session.tol.aliasing_tol)
        else:
            step = dt if dt is not None else abs(tau - s) / 512
            run = strang_oracle if method == "strang" else lab_frame_strang
            out = run(session.field, potential, s, tau, step, psi)
        path = manifest.out_dir / "psi.bin"
        save_wavefunction(path, out)
        manifest.add_output(path)
        summary = {
            "tau": tau,
            "s": s,
            "method": method,
            "gamma": gamma(session.pair, session.mono, tau, s),
            "l2_norm": out.l2_norm,
            "l1_norm": out.l1_norm,
            "sup_norm": out.sup_norm,
            "second_moment": second_moment(out),
            "escaped_fraction": escaped_mass_fraction(out),
            "input_l2_norm": psi.l2_norm,
        }
        manifest.json("propagate.json", summary)
        manifest.results.update(summary)

    flags = {"tau": tau, "s": s, "psi": psi_path, "width": width, "center": center,
             "momentum": momentum, "method": method, "dt": dt}
    run_command("propagate", common, flags, body)


@cli.command()
@common_options
@click.option("--pairs", "n_pairs", default=50, show_default=True, type=int, help="(τ, s) 時間對數")
@click.option("--gamma-floor", default=0.1, show_default=True, type=float, help="只取 Γ ≥ 此值的時間對")
@click.option("--span", default=None, type=float, help="時間取樣範圍 [0, span]（預設 2T）")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--width", default=1.0, show_default=True, type=float)
def dispersive(n_pairs, gamma_floor, span, seed, width, **common):
    """色散比 ‖Ũ₀ψ‖_∞·Γ/‖ψ‖₁ 的時間對掃描"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        pair, mono = session.pair, session.mono
        horizon = span if span is not None else 2.0 * session.field.period
        rng = np.random.default_rng(seed)
        pairs: List[Tuple[float, float, float]] = []
        attempts = 0
        while len(pairs) < n_pairs and attempts < 100 * n_pairs:
            attempts += 1
            t1, t2 = (float(v) for v in rng.uniform(0.0, horizon, size=2))
            g = gamma(pair, mono, t1, t2)
            if g >= gamma_floor:
                pairs.append((max(t1, t2), min(t1, t2), g))
        if len(pairs) < n_pairs:
            raise InvalidArgument(
                f"found only {len(pairs)} pairs with Gamma >= {gamma_floor}", found=len(pairs)
            )
        psi = gaussian(session.grid, width)
        pad = session.run_config.scattering.pad_factor

        def evaluate(item):
            tau, s, g = item
            try:
                return [tau, s, g, dispersive_ratio(pair, mono, tau, s, psi, session.tol.gamma_min, session.tol.aliasing_tol, pad)]
            except (CausticProximity, AliasingRisk) as e:
                exclude_pair("dispersive", tau, s, g, e.code)
                return [tau, s, g, None]

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(tqdm(pool.map(evaluate, pairs), total=len(pairs), desc="dispersive", file=sys.stderr, leave=False))
        manifest.csv("dispersive.csv", ["tau", "s", "gamma", "ratio"], rows)
        ratios = [r[3] for r in rows if r[3] is not None]
        manifest.results.update({
            "pairs": len(rows),
            "max_ratio": max(ratios) if ratios else None,
            "hausdorff_young_bound": session.field.mass / (2.0 * math.pi),
        })
        _summary("dispersive", [("pairs", len(rows)), ("max ratio", manifest.results["max_ratio"])])

    flags = {"pairs": n_pairs, "gamma_floor": gamma_floor, "span": span, "seed": seed, "width": width}
    run_command("dispersive", common, flags, body)


# ------------------------------------------------------------------
# scattering
# ------------------------------------------------------------------

@cli.command()
@common_options
@click.option("--p", "p", default=6.0, show_default=True, type=float, help="指數 p > 4")
@click.option("--N-max", "N_max", default=12, show_default=True, type=int)
def resolvent(p, N_max, **common):
    """I_N 與預解級數部分和 S_N"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        window = session.run_config.scattering.window_fraction
        series = resolvent_series_partial_sums(session.pair, session.mono, p, N_max, window)
        rows = [[n, i, s] for n, i, s in zip(series.N_values, series.I_values, series.partial_sums)]
        manifest.csv("resolvent.csv", ["N", "I_N", "S_N"], rows)
        manifest.results["lambda"] = session.stability.floquet_exponent
        if N_max >= 8:
            report = decay_fit(session.pair, session.mono, p, range(3, N_max + 1), window)
            manifest.results.update({
                "fitted_rate": report.fitted_rate,
                "predicted_rate": report.predicted_rate,
                "rel_deviation": report.rel_deviation,
            })

    run_command("resolvent", common, {"p": p, "N_max": N_max}, body)


@cli.command()
@common_options
@click.option("--p", "p", default=6.0, show_default=True, type=float)
@click.option("--N-max", "N_max", default=8, show_default=True, type=int)
@click.option("--width", default=1.0, show_default=True, type=float)
def cook(p, N_max, width, **common):
    """Cook 積分部分和 C_N"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        psi0 = gaussian(session.grid, width)
        report = cook_integrand_partial_sums(
            session.pair, session.mono, session.potential, psi0, N_max, p,
            slices=session.run_config.scattering.slices,
            gamma_min=session.tol.gamma_min, aliasing_tol=session.tol.aliasing_tol,
        )
        rows = [[n, c, inc] for n, c, inc in zip(report.N_values, report.partial_sums, report.increments)]
        manifest.csv("cook.csv", ["N", "C_N", "increment"], rows)
        manifest.results.update({
            "predicted_ratio": report.predicted_ratio,
            "fitted_ratio": report.fitted_ratio(),
            "extrapolated_tail": report.extrapolated_tail(),
        })

    run_command("cook", common, {"p": p, "N_max": N_max, "width": width}, body)


@cli.command("sigma-r")
@common_options
@click.option("--lambda-spec", "lambda_spec", default=0.0, show_default=True, type=float,
              help="實譜參數（只進入模為 1 的相位，不影響結果）")
@click.option("--tau-im", "tau_im", default=0.0, show_default=True, type=float)
@click.option("--R", "R", default=None, type=float, help="積分上限（預設 8T）")
@click.option("--dsigma", default=None, type=float, help="步長（預設 T/8）")
@click.option("--p", "p", default=6.0, show_default=True, type=float)
@click.option("--width", default=1.0, show_default=True, type=float)
def sigma_r(lambda_spec, tau_im, R, dsigma, p, width, **common):
    """Σ_R 的累積積分"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        T = session.field.period
        phi = gaussian(session.grid, width)
        report = sigma_R_quadrature(
            session.pair, session.mono, session.potential, phi, lambda_spec, tau_im,
            R if R is not None else 8 * T, dsigma if dsigma is not None else T / 8, p=p,
            gamma_min=session.tol.gamma_min, aliasing_tol=session.tol.aliasing_tol,
        )
        h = report.R / len(report.sigma)
        rows = [[(k + 1) * h, v] for k, v in enumerate(report.running)]
        manifest.csv("sigma_r.csv", ["R", "sigma_R"], rows)
        manifest.results.update({
            "value": report.value,
            "plateau_change": report.plateau_change(),
            "epsilon_limit": report.epsilon_limit,
        })

    flags = {"lambda_spec": lambda_spec, "tau_im": tau_im, "R": R, "dsigma": dsigma, "p": p, "width": width}
    run_command("sigma-r", common, flags, body)


@cli.command()
@common_options
@click.option("--N1", "N1", required=True, type=int)
@click.option("--N2", "N2", required=True, type=int)
@click.option("--dt", default=None, type=float, help="Strang 步長（預設 T/256）")
@click.option("--width", default=1.0, show_default=True, type=float)
def waveop(N1, N2, dt, width, **common):
    """波算子 Cauchy 缺陷 ‖W_{N2} − W_{N1}‖"""

    def body(session: FloquetSession, manifest: RunManifest, threads: int):
        psi0 = gaussian(session.grid, width)
        step = dt if dt is not None else session.field.period / 256
        report = wave_operator_defect(
            session.pair, session.mono, session.potential, psi0, N1, N2, step,
            escape_tol=session.tol.escape_tol, gamma_min=session.tol.gamma_min,
            aliasing_tol=session.tol.aliasing_tol,
        )
        manifest.csv("waveop.csv", ["N1", "N2", "defect"], [[N1, N2, report.defect]])
        manifest.results.update({
            "defect": report.defect,
            "relative_defect": report.relative_defect,
            "max_escaped_fraction": report.max_escaped_fraction,
        })

    run_command("waveop", common, {"N1": N1, "N2": N2, "dt": dt, "width": width}, body)


def main():
    """console script 入口"""
    cli()


if __name__ == "__main__":
    main()
