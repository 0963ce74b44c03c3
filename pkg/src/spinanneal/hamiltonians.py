"""Hamiltonian builders for the annealing models.

Covers the conventional spin-1/2 transverse-field anneal, the generic
spin-1 bifurcation driver, the static dipolar-coupled spin-1 chain, the
microwave-driven chain in the lab frame, and its rotating-frame form
after dropping terms oscillating at +-omega and +-2*omega.

Conventions, fixed across the package:

* All coefficients are angular frequencies (rad/s). ``from_hz``
  constructors accept ordinary frequencies and multiply by 2*pi.
* Pair sums count each unordered pair once: a quoted coupling J_{jk} is
  the full coefficient of the (j, k) pair term, not half of it.
* In the lab frame the carrier frequency is constant and the effective
  zero-field splitting follows omega + detuning(t), so the instantaneous
  detuning from the carrier equals the scheduled ramp exactly. (The
  equivalent experimental knob is a frequency-chirped carrier at fixed
  splitting; both produce the same rotating-frame generator.)
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .linalg import assert_hermitian, kron_embed
from .schedules import Schedule
from .spinops import LOCAL_DIM, spin1_ops, spin_half_ops

TWO_PI = 2.0 * np.pi

FRAMES = ("lab", "rwa")


@dataclass(frozen=True, eq=False)
class ChainSpec:
    """Physical parameters of the driven spin-1 chain (angular frequencies).

    gamma is the per-site dephasing rate entering the master equation
    (units 1/s); its value is fixed by the configuration layer's rate
    convention, not rescaled here.
    """

    n_sites: int
    d0: float
    ex: np.ndarray
    j_ff: np.ndarray
    j_zz: np.ndarray
    b_amp: float
    sigma: float
    t_total: float
    omega: float
    d0_prime_max: float
    gamma: float = 0.0
    frame: str = "rwa"

    def __post_init__(self) -> None:
        object.__setattr__(self, "ex", np.asarray(self.ex, dtype=float))
        object.__setattr__(self, "j_ff", np.asarray(self.j_ff, dtype=float))
        object.__setattr__(self, "j_zz", np.asarray(self.j_zz, dtype=float))
        n = self.n_sites
        if n < 1:
            raise ValueError("n_sites must be >= 1")
        if self.t_total <= 0:
            raise ValueError("t_total must be > 0")
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.frame not in FRAMES:
            raise ValueError(f"frame must be one of {FRAMES}, got {self.frame!r}")
        if self.ex.shape != (n,):
            raise ValueError(f"ex must have shape ({n},), got {self.ex.shape}")
        for name, mat in (("j_ff", self.j_ff), ("j_zz", self.j_zz)):
            if mat.shape != (n, n):
                raise ValueError(f"{name} must have shape ({n}, {n}), got {mat.shape}")
            if np.any(np.abs(np.diag(mat)) > 0):
                raise ValueError(f"{name} must have zero diagonal")
            if np.max(np.abs(mat - mat.T)) > 0:
                raise ValueError(f"{name} must be symmetric")

    @classmethod
    def from_hz(
        cls,
        n_sites: int,
        d0_hz: float,
        ex_hz: Sequence[float],
        j_ff_hz: np.ndarray,
        j_zz_hz: np.ndarray,
        b_amp_hz: float,
        sigma_s: float,
        t_total_s: float,
        omega_hz: float,
        d0_prime_max_hz: float,
        gamma_hz: float = 0.0,
        gamma_convention: str = "angular",
        frame: str = "rwa",
    ) -> "ChainSpec":
        """Build from ordinary frequencies in Hz (all spectral values get a 2*pi).

        gamma_convention selects how a quoted dephasing value in "kHz" is
        read: "angular" multiplies by 2*pi like every other parameter,
        "plain" takes it as a bare rate in 1/s.
        """
        if gamma_convention not in ("angular", "plain"):
            raise ValueError("gamma_convention must be 'angular' or 'plain'")
        gamma = TWO_PI * gamma_hz if gamma_convention == "angular" else float(gamma_hz)
        return cls(
            n_sites=n_sites,
            d0=TWO_PI * d0_hz,
            ex=TWO_PI * np.asarray(ex_hz, dtype=float),
            j_ff=TWO_PI * np.asarray(j_ff_hz, dtype=float),
            j_zz=TWO_PI * np.asarray(j_zz_hz, dtype=float),
            b_amp=TWO_PI * b_amp_hz,
            sigma=sigma_s,
            t_total=t_total_s,
            omega=TWO_PI * omega_hz,
            d0_prime_max=TWO_PI * d0_prime_max_hz,
            gamma=gamma,
            frame=frame,
        )

    @property
    def dim(self) -> int:
        return LOCAL_DIM**self.n_sites

    def schedule(self) -> Schedule:
        return Schedule(
            t_total=self.t_total,
            d0_prime_max=self.d0_prime_max,
            b_amp=self.b_amp,
            sigma=self.sigma,
            kind="nv-bifurcation",
        )

    def with_(self, **changes) -> "ChainSpec":
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """Longitudinal fields and symmetric pair couplings of an Ising instance."""

    h: np.ndarray
    j: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", np.asarray(self.h, dtype=float))
        object.__setattr__(self, "j", np.asarray(self.j, dtype=float))
        n = self.h.shape[0]
        if self.j.shape != (n, n):
            raise ValueError(f"j must have shape ({n}, {n}), got {self.j.shape}")
        if np.max(np.abs(self.j - self.j.T)) > 0:
            raise ValueError("j must be symmetric")

    @property
    def n_sites(self) -> int:
        return int(self.h.shape[0])


@lru_cache(maxsize=None)
def _spin1_chain_ops(n_sites: int):
    """Embedded spin-1 operators for an L-site chain, cached per L."""
    ops = spin1_ops()
    b0 = np.outer(ops.bright, ops.zero.conj())  # |B><0|
    d0 = np.outer(ops.dark, ops.zero.conj())    # |D><0|
    sx_j = [kron_embed(ops.sx, j, n_sites) for j in range(1, n_sites + 1)]
    sz_j = [kron_embed(ops.sz, j, n_sites) for j in range(1, n_sites + 1)]
    sy_j = [kron_embed(ops.sy, j, n_sites) for j in range(1, n_sites + 1)]
    sz2_j = [kron_embed(ops.sz2, j, n_sites) for j in range(1, n_sites + 1)]
    strain_j = [kron_embed(ops.strain, j, n_sites) for j in range(1, n_sites + 1)]
    b0_j = [kron_embed(b0, j, n_sites) for j in range(1, n_sites + 1)]
    d0_j = [kron_embed(d0, j, n_sites) for j in range(1, n_sites + 1)]
    exchange = {}
    szsz = {}
    for j in range(n_sites):
        for k in range(j + 1, n_sites):
            x = b0_j[j] @ b0_j[k].conj().T + d0_j[j] @ d0_j[k].conj().T
            exchange[(j, k)] = x + x.conj().T
            szsz[(j, k)] = sz_j[j] @ sz_j[k]
    return {
        "sx": sx_j,
        "sy": sy_j,
        "sz": sz_j,
        "sz2": sz2_j,
        "strain": strain_j,
        "exchange": exchange,
        "szsz": szsz,
        "sx_total": sum(sx_j),
        "sz2_total": sum(sz2_j),
    }


def build_problem_spin_half(problem: ProblemSpec, n_sites: int) -> np.ndarray:
    """Ising problem Hamiltonian sum_j h_j sigz_j + sum_{j<k} J_jk sigz_j sigz_k."""
    if problem.n_sites != n_sites:
        raise ValueError(f"problem has {problem.n_sites} sites, expected {n_sites}")
    ops = spin_half_ops()
    sigz = [kron_embed(ops.sigz, j, n_sites, local_dim=2) for j in range(1, n_sites + 1)]
    h = np.zeros((2**n_sites, 2**n_sites), dtype=complex)
    for j in range(n_sites):
        h += problem.h[j] * sigz[j]
    for j in range(n_sites):
        for k in range(j + 1, n_sites):
            if problem.j[j, k] != 0.0:
                h += problem.j[j, k] * (sigz[j] @ sigz[k])
    return h


def build_driver_spin_half(b_fields: Sequence[float], n_sites: int) -> np.ndarray:
    """Transverse driver sum_j B_j sigx_j; uniform B > 0 has ground state |-)^L."""
    b_fields = np.asarray(b_fields, dtype=float)
    if b_fields.shape != (n_sites,):
        raise ValueError(f"b_fields must have shape ({n_sites},), got {b_fields.shape}")
    ops = spin_half_ops()
    h = np.zeros((2**n_sites, 2**n_sites), dtype=complex)
    for j in range(n_sites):
        h += b_fields[j] * kron_embed(ops.sigx, j + 1, n_sites, local_dim=2)
    return h


def total_spin_half(
    problem: ProblemSpec, b_fields: Sequence[float], n_sites: int, s: float
) -> np.ndarray:
    """Convex interpolation (1-s) H_driver + s H_problem."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s = {s!r} outside [0, 1]")
    return (1.0 - s) * build_driver_spin_half(b_fields, n_sites) + s * build_problem_spin_half(
        problem, n_sites
    )


def build_bifurcation_driver(a: float, c: float, n_sites: int) -> np.ndarray:
    """Generic spin-1 bifurcation driver sum_j a*sx_j + c*sz2_j."""
    ops = _spin1_chain_ops(n_sites)
    return a * ops["sx_total"] + c * ops["sz2_total"]


def build_problem_spin1(problem: ProblemSpec, n_sites: int) -> np.ndarray:
    """Spin-1 Ising problem sum_j h_j sz_j + sum_{j<k} J_jk sz_j sz_k (diagonal)."""
    if problem.n_sites != n_sites:
        raise ValueError(f"problem has {problem.n_sites} sites, expected {n_sites}")
    ops = _spin1_chain_ops(n_sites)
    h = np.zeros((LOCAL_DIM**n_sites,) * 2, dtype=complex)
    for j in range(n_sites):
        h += problem.h[j] * ops["sz"][j]
    for (j, k), zz in ops["szsz"].items():
        if problem.j[j, k] != 0.0:
            h += problem.j[j, k] * zz
    return h


def dipolar_couplings(j_nn: float, n_sites: int, exponent: float = 3.0) -> np.ndarray:
    """Coupling matrix J_jk = j_nn / |j-k|^exponent for a unit-spaced chain."""
    if n_sites < 2:
        raise ValueError("n_sites must be >= 2 for a coupling matrix")
    mat = np.zeros((n_sites, n_sites))
    for j in range(n_sites):
        for k in range(j + 1, n_sites):
            mat[j, k] = mat[k, j] = j_nn / abs(j - k) ** exponent
    return mat


def build_nv_static(spec: ChainSpec) -> np.ndarray:
    """Static chain Hamiltonian: splitting, strain, flip-flop and -J' Ising terms."""
    ops = _spin1_chain_ops(spec.n_sites)
    h = spec.d0 * ops["sz2_total"].astype(complex)
    for j in range(spec.n_sites):
        if spec.ex[j] != 0.0:
            h = h + spec.ex[j] * ops["strain"][j]
    for (j, k), zz in ops["szsz"].items():
        jf = spec.j_ff[j, k]
        if jf != 0.0:
            h = h + jf * (
                ops["sx"][j] @ ops["sx"][k] + ops["sy"][j] @ ops["sy"][k]
            )
        jz = spec.j_zz[j, k]
        if jz != 0.0:
            h = h - jz * zz
    assert_hermitian(h, what="build_nv_static output")
    return h


def _lab_static_part(spec: ChainSpec) -> np.ndarray:
    """Strain plus full (non-RWA) couplings; the time-dependent pieces are added per t."""
    ops = _spin1_chain_ops(spec.n_sites)
    h = np.zeros((spec.dim, spec.dim), dtype=complex)
    for j in range(spec.n_sites):
        if spec.ex[j] != 0.0:
            h += spec.ex[j] * ops["strain"][j]
    for (j, k), zz in ops["szsz"].items():
        if spec.j_ff[j, k] != 0.0:
            h += spec.j_ff[j, k] * (ops["sx"][j] @ ops["sx"][k] + ops["sy"][j] @ ops["sy"][k])
        if spec.j_zz[j, k] != 0.0:
            h -= spec.j_zz[j, k] * zz
    return h


def _rwa_static_part(spec: ChainSpec) -> np.ndarray:
    """Strain plus excitation-conserving exchange and Ising terms (frame-static)."""
    ops = _spin1_chain_ops(spec.n_sites)
    h = np.zeros((spec.dim, spec.dim), dtype=complex)
    for j in range(spec.n_sites):
        if spec.ex[j] != 0.0:
            h += spec.ex[j] * ops["strain"][j]
    for (j, k), zz in ops["szsz"].items():
        if spec.j_ff[j, k] != 0.0:
            h += spec.j_ff[j, k] * ops["exchange"][(j, k)]
        if spec.j_zz[j, k] != 0.0:
            h -= spec.j_zz[j, k] * zz
    return h


def lab_hamiltonian(spec: ChainSpec, schedule: Schedule | None = None) -> Callable[[float], np.ndarray]:
    """Time-indexed lab-frame Hamiltonian builder.

    H(t) = sum_j (omega + detuning(t)) sz2_j + strain/couplings
         + 2 * drive_amp(t) * cos(omega t) * sum_j sx_j
    """
    sched = schedule if schedule is not None else spec.schedule()
    ops = _spin1_chain_ops(spec.n_sites)
    h_static = _lab_static_part(spec)
    g = ops["sz2_total"]
    sx_total = ops["sx_total"]
    omega = spec.omega

    def h_of_t(t: float) -> np.ndarray:
        splitting = omega + sched.detuning(t)
        drive = 2.0 * sched.drive_amp(t) * np.cos(omega * t)
        return h_static + splitting * g + drive * sx_total

    return h_of_t


def rwa_hamiltonian(spec: ChainSpec, schedule: Schedule | None = None) -> Callable[[float], np.ndarray]:
    """Time-indexed rotating-frame Hamiltonian builder.

    The frame rotates each site with the squared-z generator at the
    carrier frequency, which leaves strain, Ising and single-excitation
    exchange terms static; the double-raising halves of the flip-flop
    and the counter-rotating half of the drive oscillate at 2*omega and
    are dropped. What remains:

    H(t) = sum_j detuning(t) sz2_j + drive_amp(t) sx_j + strain/exchange/Ising
    """
    sched = schedule if schedule is not None else spec.schedule()
    ops = _spin1_chain_ops(spec.n_sites)
    h_static = _rwa_static_part(spec)
    g = ops["sz2_total"]
    sx_total = ops["sx_total"]

    def h_of_t(t: float) -> np.ndarray:
        return h_static + sched.detuning(t) * g + sched.drive_amp(t) * sx_total

    return h_of_t


def build_lab_frame(spec: ChainSpec, t: float, schedule: Schedule | None = None) -> np.ndarray:
    """Lab-frame Hamiltonian at time t (validated Hermitian)."""
    h = lab_hamiltonian(spec, schedule)(t)
    assert_hermitian(h, what="build_lab_frame output")
    return h


def build_rwa_frame(spec: ChainSpec, t: float, schedule: Schedule | None = None) -> np.ndarray:
    """Rotating-frame Hamiltonian at time t (validated Hermitian)."""
    h = rwa_hamiltonian(spec, schedule)(t)
    assert_hermitian(h, what="build_rwa_frame output")
    return h


def hamiltonian_for_frame(spec: ChainSpec, schedule: Schedule | None = None) -> Callable[[float], np.ndarray]:
    """Dispatch on spec.frame."""
    if spec.frame == "lab":
        return lab_hamiltonian(spec, schedule)
    return rwa_hamiltonian(spec, schedule)
