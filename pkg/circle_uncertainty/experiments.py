"""Experiment drivers: origin sweeps, uncertainty-sum minimization, free
evolution and the real-line demo.

Every driver is deterministic for a fixed ExperimentConfig (seed included);
grid points and restarts are independent and collected in grid/restart order.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from . import state_families
from .circle_state import expectation_U_power, inner_product, phase_estimate, windowed_moments
from .config import settings
from .models import TWO_PI, FourierState, PiecewisePacket
from .schemas import (
    CoherentFamilyRow,
    CoherentParams,
    EpsilonSweepRow,
    ExperimentConfig,
    HeisenbergPoint,
    LambdaSweepRow,
    LineDemoReport,
    MinimizationReport,
    RestartResult,
    SeedKind,
    SweepReport,
    Trajectory,
)
from .uncertainty_measures import (
    angular_momentum_variance,
    batch_uncertainty_sums,
    build_report,
    char_packet_difference_closed_form,
    circular_variance,
    circular_variance_difference,
    kr_angle_uncertainty,
    line_heisenberg_sum,
    line_position_variance,
    uncertainty_sum,
)

logger = logging.getLogger(__name__)

_CAT_ALPHA_POINTS = 360


# ----------------------------------- Origin sweeps -----------------------------------
def char_epsilon(packet: PiecewisePacket) -> Optional[float]:
    """Width eps if ``packet`` is the normalized indicator packet on [0, eps], else None."""
    if len(packet.segments) != 1:
        return None
    seg = packet.segments[0]
    if math.fmod(seg.start, TWO_PI) != 0.0 or not 0.0 < seg.width < TWO_PI:
        return None
    if abs(seg.density - TWO_PI / seg.width) > 1e-12 * seg.density:
        return None
    return seg.width


def lambda_sweep(packet: PiecewisePacket, config: ExperimentConfig) -> SweepReport:
    epsilon = char_epsilon(packet)
    rows = []
    for lam in config.lambda_grid:
        closed_form = None
        if epsilon is not None:
            closed_form = char_packet_difference_closed_form(epsilon, float(np.mod(lam, TWO_PI)))
        rows.append(LambdaSweepRow(
            lambda_=lam,
            circ_variance=circular_variance(packet, lam),
            difference=circular_variance_difference(packet, lam),
            kr_angle=kr_angle_uncertainty(packet, lam),
            closed_form=closed_form,
        ))
    logger.info("lambda sweep: %d origins, char packet eps=%s", len(rows), epsilon)
    return SweepReport(kind="lambda", epsilon=epsilon, lambda_rows=rows)


def epsilon_sweep(config: ExperimentConfig) -> SweepReport:
    rows = []
    for epsilon in config.epsilon_grid:
        packet = state_families.char_packet(epsilon)
        rows.append(EpsilonSweepRow(
            epsilon=epsilon,
            u2_magnitude=abs(expectation_U_power(packet, 2)),
            u2_closed_form=abs(math.sin(epsilon)) / epsilon,
            kr_angle=kr_angle_uncertainty(packet),
            circ_variance=circular_variance(packet, 0.0),
        ))
    logger.info("epsilon sweep: %d widths", len(rows))
    return SweepReport(kind="epsilon", epsilon_rows=rows)


# ----------------------------------- Minimization -----------------------------------
def _objective(x: np.ndarray, n_min: int, size: int) -> float:
    # evaluating at x/|x| is the norm projection applied at every step
    norm2 = float(np.dot(x, x))
    if norm2 < 1e-300:
        return math.inf
    coeffs = (x[:size] + 1j * x[size:]) / math.sqrt(norm2)
    return float(batch_uncertainty_sums(coeffs, n_min)[0])


def _to_real(state: FourierState) -> np.ndarray:
    return np.concatenate([state.coeffs.real, state.coeffs.imag])


def _optimizer_options(method: str, max_iters: int, step_tol: float) -> dict:
    if method == "Nelder-Mead":
        return {"maxiter": max_iters, "xatol": step_tol, "fatol": step_tol, "adaptive": True}
    return {"maxiter": max_iters, "xtol": step_tol, "ftol": step_tol}


def _converged(result, step_tol: float) -> bool:
    """Met the step test, or the final simplex is flat to within step_tol."""
    if result.success:
        return True
    final_simplex = getattr(result, "final_simplex", None)
    if final_simplex is None:
        return False
    values = np.asarray(final_simplex[1], dtype=float)
    return bool(np.all(np.isfinite(values)) and values.max() - values.min() <= step_tol)


def _run_restart(task: tuple) -> tuple[RestartResult, np.ndarray]:
    index, seed_kind, x0, n_min, size, method, max_iters, step_tol = task
    start_value = _objective(x0, n_min, size)
    result = minimize(
        _objective,
        x0,
        args=(n_min, size),
        method=method,
        options=_optimizer_options(method, max_iters, step_tol),
    )
    best_x = np.asarray(result.x, dtype=float)
    final_value = _objective(best_x, n_min, size)
    if not final_value <= start_value:
        best_x, final_value = x0, start_value
    converged = _converged(result, step_tol)
    if not converged:
        logger.warning("restart %d (%s) stopped without meeting step_tol: %s", index, seed_kind.value, result.message)
    logger.info("restart %d (%s): %.12g -> %.12g in %d iterations", index, seed_kind.value, start_value, final_value, result.nit)
    restart = RestartResult(
        index=index,
        seed_kind=seed_kind,
        start_value=start_value,
        final_value=final_value,
        iterations=int(result.nit),
        converged=converged,
    )
    return restart, best_x / np.linalg.norm(best_x)


def _seed_states(config: ExperimentConfig, rng: np.random.Generator) -> list[tuple[SeedKind, FourierState]]:
    n_min, n_max = config.lattice((settings.OPT_N_MIN, settings.OPT_N_MAX))
    centre = CoherentParams(l=min(max(0, n_min), n_max))
    fixed = [
        (SeedKind.coherent, lambda: state_families.coherent_state(centre, n_min, n_max)),
        (SeedKind.cat, lambda: state_families.cat_state(centre, 0.0, n_min, n_max)),
        (SeedKind.number, lambda: state_families.number_state(int(centre.l), n_min, n_max)),
    ]
    seeds = []
    for index in range(config.optimizer.restarts):
        if index < len(fixed):
            kind, build = fixed[index]
            seeds.append((kind, build()))
        else:
            seeds.append((SeedKind.random, state_families.random_state(rng, n_min, n_max)))
    return seeds


def _fix_gauge(coeffs: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest coefficient is real and positive."""
    peak = int(np.argmax(np.abs(coeffs)))
    magnitude = abs(coeffs[peak])
    coeffs = coeffs * (np.conj(coeffs[peak]) / magnitude)
    coeffs[peak] = magnitude
    return coeffs


def random_sum_sweep(config: ExperimentConfig, samples: Optional[int] = None) -> float:
    """Smallest uncertainty sum over random states on the configured lattice."""
    samples = config.random_samples if samples is None else samples
    if samples <= 0:
        return math.inf
    n_min, n_max = config.lattice((settings.OPT_N_MIN, settings.OPT_N_MAX))
    size = n_max - n_min + 1
    rng = np.random.default_rng([config.optimizer.seed, 1])
    coeffs = rng.standard_normal((samples, size)) + 1j * rng.standard_normal((samples, size))
    coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
    sums = batch_uncertainty_sums(coeffs, n_min)
    logger.info("random sweep: %d states, min sum %.12g", samples, sums.min())
    return float(sums.min())


def _coherent_row(l: float, n_min: int, n_max: int) -> CoherentFamilyRow:
    state = state_families.coherent_state(CoherentParams(l=l), n_min, n_max)
    kr = kr_angle_uncertainty(state)
    j_var = angular_momentum_variance(state)
    return CoherentFamilyRow(l=l, kr_angle=kr, j_variance=j_var, sum_kr=kr + j_var)


def minimize_uncertainty_sum(config: ExperimentConfig) -> MinimizationReport:
    opt = config.optimizer
    n_min, n_max = config.lattice((settings.OPT_N_MIN, settings.OPT_N_MAX))
    size = n_max - n_min + 1
    rng = np.random.default_rng(opt.seed)
    seeds = _seed_states(config, rng)
    tasks = [
        (index, kind, _to_real(state), n_min, size, opt.method, opt.max_iters, opt.step_tol)
        for index, (kind, state) in enumerate(seeds)
    ]
    logger.info("minimizing over n in [%d, %d] with %d restarts (%s)", n_min, n_max, len(tasks), opt.method)
    if opt.workers > 1:
        with ProcessPoolExecutor(max_workers=opt.workers) as pool:
            outcomes = list(pool.map(_run_restart, tasks))
    else:
        outcomes = [_run_restart(task) for task in tasks]

    restarts = [restart for restart, _ in outcomes]
    best_index = min(range(len(outcomes)), key=lambda i: (restarts[i].final_value, i))
    best_x = outcomes[best_index][1]
    best = FourierState(n_min, n_max, _fix_gauge(best_x[:size] + 1j * best_x[size:]))

    centre = CoherentParams(l=min(max(0, n_min), n_max))
    coherent_value = uncertainty_sum(state_families.coherent_state(centre, n_min, n_max))
    coherent_rows = [_coherent_row(l, n_min, n_max) for l in config.l_grid]
    cat_value = uncertainty_sum(state_families.cat_state(centre, 0.0, n_min, n_max))
    cat_overlap = abs(inner_product(best, state_families.cat_state(centre, 0.0, n_min, n_max))) ** 2
    alphas = np.arange(_CAT_ALPHA_POINTS) * (TWO_PI / _CAT_ALPHA_POINTS)
    overlaps = [
        abs(inner_product(best, state_families.cat_state(centre.model_copy(update={"alpha": a}), 0.0, n_min, n_max))) ** 2
        for a in alphas
    ]
    best_alpha_index = int(np.argmax(overlaps))
    even = best.ns % 2 == 0
    best_value = restarts[best_index].final_value

    return MinimizationReport(
        method=opt.method,
        n_range=(n_min, n_max),
        seed=opt.seed,
        best_value=best_value,
        below_one=best_value < 1.0,
        best_re=best.coeffs.real.tolist(),
        best_im=best.coeffs.imag.tolist(),
        restarts=restarts,
        coherent_value=coherent_value,
        coherent_rows=coherent_rows,
        cat_value=cat_value,
        cat_overlap=cat_overlap,
        cat_overlap_best_alpha=overlaps[best_alpha_index],
        best_alpha=float(alphas[best_alpha_index]),
        even_weight=float(np.sum(np.abs(best.coeffs[even]) ** 2)),
        random_samples=config.random_samples,
        random_sweep_min=random_sum_sweep(config) if config.random_samples else None,
        any_non_convergence=not all(r.converged for r in restarts),
    )


# ----------------------------------- Free evolution -----------------------------------
def evolve(state: FourierState, t: float, hamiltonian_scale: float = 1.0) -> FourierState:
    """c_n(t) = c_n exp(-i scale n^2 t / 2)."""
    period = 2.0 * TWO_PI / hamiltonian_scale
    # reduce modulo the revival period so t = 4pi/scale returns the input bit for bit
    turns = np.mod(state.ns.astype(float) ** 2 * (t / period), 1.0)
    return state.with_coeffs(state.coeffs * np.exp(-1j * TWO_PI * turns))


def free_evolution(state: FourierState, config: ExperimentConfig) -> Trajectory:
    estimates, magnitudes, means, norms, reports = [], [], [], [], []
    for t in config.time_grid:
        evolved = evolve(state, t, config.hamiltonian_scale)
        angle, magnitude = phase_estimate(evolved)
        estimates.append(angle)
        magnitudes.append(magnitude)
        means.append(windowed_moments(evolved, 0.0)[0])
        norms.append(evolved.norm_squared)
        reports.append(build_report(evolved, 0.0))
    undefined = sum(angle is None for angle in estimates)
    if undefined:
        logger.info("free evolution: phase estimate undefined at %d of %d times", undefined, len(estimates))
    return Trajectory(
        times=list(config.time_grid),
        phase_estimate=estimates,
        u1_magnitude=magnitudes,
        windowed_mean=means,
        norm=norms,
        report_per_time=reports,
    )


# ----------------------------------- Line demo -----------------------------------
def line_demo(length: float, config: Optional[ExperimentConfig] = None) -> LineDemoReport:
    config = config or ExperimentConfig()
    box = line_position_variance(state_families.box_packet(length))
    split = line_position_variance(state_families.split_box_packet(length))
    curve = [HeisenbergPoint(sigma2=s2, sum=line_heisenberg_sum(s2)) for s2 in config.sigma2_grid]
    lowest = min(curve, key=lambda point: point.sum)
    return LineDemoReport(
        L=length,
        box_variance=box,
        split_box_variance=split,
        ratio=split / box,
        heisenberg_curve=curve,
        heisenberg_min=lowest.sum,
        heisenberg_argmin=lowest.sigma2,
    )
