"""Time evolution engines and observable recording.

The default integrator steps with the exact exponential of the midpoint
Hamiltonian, exp(-i H(t + dt/2) dt), which is unconditionally unitary.
Open-system runs use a Strang splitting around that unitary step: the
per-site z dephasing of the master equation has diagonal jump operators,
so each half step of the dissipator is an exact entrywise damping of the
coherences (a completely positive, trace-preserving map). Trace, Hermiticity
and positivity are therefore preserved to roundoff; the only discretization
error is the O(dt^3) splitting commutator per step.

An adaptive Runge-Kutta integrator (scipy's DOP853) is available as an
alternative, mainly useful as a cross-check; it does not conserve norm
structurally, only to its tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .linalg import (
    ToleranceError,
    check_density_matrix,
    fidelity_pure,
    hermiticity_defect,
    max_abs,
    overlap_fidelity,
)
from .spinops import LOCAL_DIM, all_zero_state, basis_index, ghz_state, parity_op

INTEGRATORS = ("stepwise-exponential", "adaptive-rk")

# lab-frame stepping must resolve the carrier: at least this many steps per period
MIN_STEPS_PER_PERIOD = 20
DEFAULT_STEPS_PER_PERIOD = 40
DEFAULT_RWA_STEPS = 8000

NORM_DRIFT_TOL = 1e-8
TRACE_DRIFT_TOL = 1e-7
RHO_HERM_TOL = 1e-9
RHO_EIG_FLOOR = -1e-7


@dataclass(frozen=True)
class EvolveOptions:
    """Integration controls.

    n_steps = None picks a default: DEFAULT_RWA_STEPS in the rotating
    frame, steps_per_period * (carrier periods in t_total) in the lab
    frame. Lab-frame runs require omega to enforce the step constraint.
    """

    n_steps: int | None = None
    n_out: int = 201
    frame: str = "rwa"
    integrator: str = "stepwise-exponential"
    omega: float | None = None
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD
    rtol: float = 1e-10
    atol: float = 1e-12
    track_levels: bool = False

    def __post_init__(self) -> None:
        if self.n_out < 2:
            raise ValueError("n_out must be >= 2")
        if self.frame not in ("lab", "rwa"):
            raise ValueError(f"unknown frame {self.frame!r}")
        if self.integrator not in INTEGRATORS:
            raise ValueError(f"unknown integrator {self.integrator!r}")
        if self.n_steps is not None and self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")

    def resolve_steps(self, t_total: float) -> int:
        if self.frame == "lab":
            if self.omega is None or self.omega <= 0:
                raise ValueError("lab-frame evolution needs the carrier omega (rad/s)")
            period = 2.0 * np.pi / self.omega
            min_steps = int(np.ceil(t_total / period * MIN_STEPS_PER_PERIOD))
            if self.n_steps is None:
                return int(np.ceil(t_total / period * self.steps_per_period))
            if self.n_steps < min_steps:
                raise ValueError(
                    f"lab frame needs >= {MIN_STEPS_PER_PERIOD} steps per drive period "
                    f"({min_steps} total), got n_steps={self.n_steps}"
                )
            return self.n_steps
        return self.n_steps if self.n_steps is not None else DEFAULT_RWA_STEPS


@dataclass(frozen=True)
class ObservableTargets:
    """Precomputed targets for the standard observable set of an L-site chain."""

    n_sites: int
    ghz_plus: np.ndarray
    ghz_minus: np.ndarray
    parity: np.ndarray
    zero_index: int

    @classmethod
    def for_chain(cls, n_sites: int) -> "ObservableTargets":
        return cls(
            n_sites=n_sites,
            ghz_plus=ghz_state(n_sites, +1),
            ghz_minus=ghz_state(n_sites, -1),
            parity=parity_op(n_sites),
            zero_index=basis_index((0,) * n_sites),
        )

    @property
    def dim(self) -> int:
        return LOCAL_DIM**self.n_sites


@dataclass
class Trajectory:
    """Sampled observables along one evolution run."""

    times: np.ndarray
    fidelity: np.ndarray | None = None
    fidelity_minus: np.ndarray | None = None
    parity_expect: np.ndarray | None = None
    purity: np.ndarray | None = None
    pop_all_zero: np.ndarray | None = None
    pop_ghz_manifold: np.ndarray | None = None
    energy_levels: np.ndarray | None = None
    final_state: np.ndarray | None = None

    @property
    def final_fidelity(self) -> float:
        if self.fidelity is None:
            raise ValueError("trajectory was recorded without observable targets")
        return float(self.fidelity[-1])

    def observable_columns(self) -> dict[str, np.ndarray]:
        cols = {"t_s": self.times}
        for name, key in (
            ("fidelity_ghz_plus", "fidelity"),
            ("fidelity_ghz_minus", "fidelity_minus"),
            ("parity_expect", "parity_expect"),
            ("purity", "purity"),
            ("pop_all_zero", "pop_all_zero"),
            ("pop_ghz_manifold", "pop_ghz_manifold"),
        ):
            arr = getattr(self, key)
            if arr is not None:
                cols[name] = arr
        return cols


def record_observables(state: np.ndarray, targets: ObservableTargets) -> dict[str, float]:
    """One row of observables for a pure state (1d) or density matrix (2d)."""
    state = np.asarray(state)
    if state.ndim == 1:
        if state.shape[0] != targets.dim:
            raise ValueError(f"state dim {state.shape[0]} != targets dim {targets.dim}")
        f_plus = min(1.0, overlap_fidelity(state, targets.ghz_plus))
        f_minus = min(1.0, overlap_fidelity(state, targets.ghz_minus))
        parity = float(np.real(np.vdot(state, targets.parity @ state)))
        norm2 = float(np.real(np.vdot(state, state)))
        purity = norm2 * norm2
        pop_zero = float(abs(state[targets.zero_index]) ** 2)
        pop_ghz = float(abs(state[0]) ** 2 + abs(state[-1]) ** 2)
    elif state.ndim == 2:
        if state.shape != (targets.dim, targets.dim):
            raise ValueError(f"state shape {state.shape} != ({targets.dim}, {targets.dim})")
        f_plus = fidelity_pure(state, targets.ghz_plus)
        f_minus = fidelity_pure(state, targets.ghz_minus)
        parity = float(np.real(np.trace(targets.parity @ state)))
        purity = float(np.real(np.trace(state @ state)))
        diag = np.real(np.diag(state))
        pop_zero = float(diag[targets.zero_index])
        pop_ghz = float(diag[0] + diag[-1])
    else:
        raise ValueError("state must be a vector or a square matrix")
    return {
        "fidelity_ghz_plus": f_plus,
        "fidelity_ghz_minus": f_minus,
        "parity_expect": parity,
        "purity": purity,
        "pop_all_zero": pop_zero,
        "pop_ghz_manifold": pop_ghz,
    }


def _sample_steps(n_steps: int, n_out: int) -> np.ndarray:
    """Step indices (including 0 and n_steps) at which observables are recorded."""
    return np.unique(np.round(np.linspace(0.0, n_steps, n_out)).astype(int))


class _Recorder:
    def __init__(self, targets: ObservableTargets | None, track_levels: bool):
        self.targets = targets
        self.track_levels = track_levels
        self.times: list[float] = []
        self.rows: list[dict[str, float]] = []
        self.levels: list[np.ndarray] = []

    def record(self, t: float, state: np.ndarray, h: np.ndarray | None) -> None:
        self.times.append(t)
        if self.targets is not None:
            self.rows.append(record_observables(state, self.targets))
        if self.track_levels and h is not None:
            self.levels.append(np.linalg.eigvalsh(h))

    def trajectory(self, final_state: np.ndarray) -> Trajectory:
        traj = Trajectory(times=np.asarray(self.times), final_state=final_state)
        if self.targets is not None:
            traj.fidelity = np.array([r["fidelity_ghz_plus"] for r in self.rows])
            traj.fidelity_minus = np.array([r["fidelity_ghz_minus"] for r in self.rows])
            traj.parity_expect = np.array([r["parity_expect"] for r in self.rows])
            traj.purity = np.array([r["purity"] for r in self.rows])
            traj.pop_all_zero = np.array([r["pop_all_zero"] for r in self.rows])
            traj.pop_ghz_manifold = np.array([r["pop_ghz_manifold"] for r in self.rows])
        if self.levels:
            traj.energy_levels = np.vstack(self.levels)
        return traj


def _propagator_step(h: np.ndarray, dt: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * vals * dt)) @ vecs.conj().T


def evolve_schrodinger(
    h_of_t: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    t_total: float,
    options: EvolveOptions | None = None,
    targets: ObservableTargets | None = None,
) -> Trajectory:
    """Propagate a pure state under a time-dependent Hamiltonian.

    Midpoint-exponential stepping: psi <- exp(-i H(t_k + dt/2) dt) psi.
    The norm is checked against NORM_DRIFT_TOL at the end of the run.
    """
    opts = options or EvolveOptions()
    psi = np.asarray(psi0, dtype=complex).copy()
    if opts.integrator == "adaptive-rk":
        return _evolve_schrodinger_rk(h_of_t, psi, t_total, opts, targets)
    n_steps = opts.resolve_steps(t_total)
    dt = t_total / n_steps
    samples = set(_sample_steps(n_steps, opts.n_out).tolist())
    rec = _Recorder(targets, opts.track_levels)
    for k in range(n_steps):
        if k in samples:
            rec.record(k * dt, psi, h_of_t(k * dt) if opts.track_levels else None)
        h_mid = h_of_t((k + 0.5) * dt)
        psi = _propagator_step(h_mid, dt) @ psi
    rec.record(t_total, psi, h_of_t(t_total) if opts.track_levels else None)
    drift = abs(float(np.linalg.norm(psi)) - 1.0)
    if drift > NORM_DRIFT_TOL:
        raise ToleranceError(f"norm drifted by {drift:.3e} over the run")
    return rec.trajectory(psi)


def _evolve_schrodinger_rk(h_of_t, psi0, t_total, opts: EvolveOptions, targets):
    t_eval = np.linspace(0.0, t_total, opts.n_out)
    max_step = np.inf
    if opts.frame == "lab":
        if opts.omega is None or opts.omega <= 0:
            raise ValueError("lab-frame evolution needs the carrier omega (rad/s)")
        max_step = (2.0 * np.pi / opts.omega) / MIN_STEPS_PER_PERIOD

    def rhs(t, y):
        return -1j * (h_of_t(t) @ y)

    sol = solve_ivp(
        rhs, (0.0, t_total), psi0, method="DOP853", t_eval=t_eval,
        rtol=opts.rtol, atol=opts.atol, max_step=max_step,
    )
    if not sol.success:
        raise ToleranceError(f"adaptive integrator failed: {sol.message}")
    rec = _Recorder(targets, opts.track_levels)
    for i, t in enumerate(sol.t):
        rec.record(float(t), sol.y[:, i], h_of_t(float(t)) if opts.track_levels else None)
    psi_final = sol.y[:, -1]
    drift = abs(float(np.linalg.norm(psi_final)) - 1.0)
    if drift > 1e-6:
        raise ToleranceError(f"adaptive run norm drifted by {drift:.3e}")
    return rec.trajectory(psi_final)


def _dephasing_rates(
    jump_ops: Sequence[np.ndarray], gamma: float, dim: int
) -> np.ndarray | None:
    """Coherence damping matrix R for diagonal jump operators.

    For diagonal L_j with diagonal l^j, the dissipator acts entrywise:
    d rho_mn / dt = -R_mn rho_mn with
    R_mn = (gamma/2) sum_j (l^j_m - l^j_n)^2.
    """
    if gamma == 0.0 or not jump_ops:
        return None
    r = np.zeros((dim, dim))
    for op in jump_ops:
        op = np.asarray(op)
        if op.shape != (dim, dim):
            raise ValueError(f"jump operator shape {op.shape} != ({dim}, {dim})")
        if max_abs(op - np.diag(np.diag(op))) > 1e-12:
            raise ValueError(
                "evolve_lindblad handles diagonal jump operators only "
                "(per-site z dephasing); got a non-diagonal operator"
            )
        diag = np.real(np.diag(op))
        r += 0.5 * gamma * (diag[:, None] - diag[None, :]) ** 2
    return r


def evolve_lindblad(
    h_of_t: Callable[[float], np.ndarray],
    rho0: np.ndarray,
    jump_ops: Sequence[np.ndarray],
    gamma: float,
    t_total: float,
    options: EvolveOptions | None = None,
    targets: ObservableTargets | None = None,
) -> Trajectory:
    """Propagate a density matrix under the dephasing master equation.

    Strang splitting per step: half dissipator, midpoint unitary, half
    dissipator. Both half steps are exact CPTP maps for the diagonal
    jump operators used here. Physicality (trace, Hermiticity, positive
    spectrum) is checked at every sample time.
    """
    opts = options or EvolveOptions()
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    rho = np.asarray(rho0, dtype=complex).copy()
    dim = rho.shape[0]
    check_density_matrix(rho)
    if opts.integrator == "adaptive-rk":
        return _evolve_lindblad_rk(h_of_t, rho, jump_ops, gamma, t_total, opts, targets)
    n_steps = opts.resolve_steps(t_total)
    dt = t_total / n_steps
    rates = _dephasing_rates(jump_ops, gamma, dim)
    damp_half = np.exp(-rates * (0.5 * dt)) if rates is not None else None
    samples = set(_sample_steps(n_steps, opts.n_out).tolist())
    rec = _Recorder(targets, opts.track_levels)

    def check_physical(r: np.ndarray, t: float) -> None:
        tr = float(np.real(np.trace(r)))
        if abs(tr - 1.0) > TRACE_DRIFT_TOL:
            raise ToleranceError(f"trace drifted to {tr:.10f} at t={t:.3e}")
        if hermiticity_defect(r) > RHO_HERM_TOL:
            raise ToleranceError(f"rho lost Hermiticity at t={t:.3e}")
        lo = float(np.linalg.eigvalsh(0.5 * (r + r.conj().T))[0])
        if lo < RHO_EIG_FLOOR:
            raise ToleranceError(
                f"rho minimum eigenvalue {lo:.3e} at t={t:.3e}; step size too large"
            )

    for k in range(n_steps):
        if k in samples:
            check_physical(rho, k * dt)
            rec.record(k * dt, rho, h_of_t(k * dt) if opts.track_levels else None)
        u = _propagator_step(h_of_t((k + 0.5) * dt), dt)
        if damp_half is not None:
            rho = damp_half * rho
        rho = u @ rho @ u.conj().T
        if damp_half is not None:
            rho = damp_half * rho
    check_physical(rho, t_total)
    rec.record(t_total, rho, h_of_t(t_total) if opts.track_levels else None)
    return rec.trajectory(rho)


def _evolve_lindblad_rk(h_of_t, rho0, jump_ops, gamma, t_total, opts: EvolveOptions, targets):
    dim = rho0.shape[0]
    rates = _dephasing_rates(jump_ops, gamma, dim)
    t_eval = np.linspace(0.0, t_total, opts.n_out)
    max_step = np.inf
    if opts.frame == "lab":
        if opts.omega is None or opts.omega <= 0:
            raise ValueError("lab-frame evolution needs the carrier omega (rad/s)")
        max_step = (2.0 * np.pi / opts.omega) / MIN_STEPS_PER_PERIOD

    def rhs(t, y):
        rho = y.reshape(dim, dim)
        h = h_of_t(t)
        drho = -1j * (h @ rho - rho @ h)
        if rates is not None:
            drho = drho - rates * rho
        return drho.ravel()

    sol = solve_ivp(
        rhs, (0.0, t_total), rho0.ravel(), method="DOP853", t_eval=t_eval,
        rtol=opts.rtol, atol=opts.atol, max_step=max_step,
    )
    if not sol.success:
        raise ToleranceError(f"adaptive integrator failed: {sol.message}")
    rec = _Recorder(targets, opts.track_levels)
    for i, t in enumerate(sol.t):
        rho_t = sol.y[:, i].reshape(dim, dim)
        rec.record(float(t), rho_t, h_of_t(float(t)) if opts.track_levels else None)
    rho_final = sol.y[:, -1].reshape(dim, dim)
    check_density_matrix(rho_final, trace_tol=1e-6, eig_floor=-1e-6)
    return rec.trajectory(rho_final)


def oracle_propagate(
    h_of_t: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    t_total: float,
    n_fine: int,
    rule: str = "trapezoid",
) -> np.ndarray:
    """Brute-force reference propagation on a fine uniform grid.

    Piecewise-constant exponentials with the frozen Hamiltonian chosen by
    ``rule``: "trapezoid" averages the substep endpoints (second-order
    accurate, still a different sampling than the midpoint integrator),
    "left" freezes the left endpoint (first-order; its own O(dt) error
    dominates any comparison unless n_fine is taken impractically large,
    so it serves for constant-H and slowly-varying checks only).
    """
    if n_fine < 1:
        raise ValueError("n_fine must be >= 1")
    if rule not in ("trapezoid", "left"):
        raise ValueError(f"unknown sampling rule {rule!r}")
    psi = np.asarray(psi0, dtype=complex).copy()
    dt = t_total / n_fine
    for k in range(n_fine):
        if rule == "trapezoid":
            h = 0.5 * (h_of_t(k * dt) + h_of_t((k + 1) * dt))
        else:
            h = h_of_t(k * dt)
        psi = _propagator_step(h, dt) @ psi
    return psi


def site_dephasing_ops(n_sites: int) -> list[np.ndarray]:
    """Per-site z jump operators for the dephasing master equation."""
    from .hamiltonians import _spin1_chain_ops

    return list(_spin1_chain_ops(n_sites)["sz"])


def default_initial_state(n_sites: int) -> np.ndarray:
    """|0...0>, the annealing start state (identical in both frames)."""
    return all_zero_state(n_sites)


def instantaneous_ground_state(h: np.ndarray) -> np.ndarray:
    """Ground eigenvector of h, phased so its largest component is real positive.

    Alternative anneal start for sensitivity studies; at t = 0 it differs
    from |0...0> only by the residual of the drive envelope.
    """
    vals, vecs = np.linalg.eigh(h)
    ground = vecs[:, 0]
    pivot = ground[int(np.argmax(np.abs(ground)))]
    return ground * (abs(pivot) / pivot)
