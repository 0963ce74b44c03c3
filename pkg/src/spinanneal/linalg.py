"""Dense complex linear algebra over many-body Hilbert spaces.

Everything here operates on plain numpy arrays: operators are square
complex matrices, pure states are complex vectors, mixed states are
complex Hermitian matrices. Dimensions stay small (<= 27 for states at
the chain lengths this package targets), so dense storage and full
eigendecompositions are the right tool.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-12          # builders must meet this
EIG_HERMITIAN_RTOL = 1e-8      # relative tolerance for eig_herm input check
FIDELITY_IMAG_TOL = 1e-8


class ToleranceError(RuntimeError):
    """A numerical invariant (hermiticity, trace, positivity, norm) was violated."""


def max_abs(a: np.ndarray) -> float:
    """Largest absolute entry of an array (0.0 for empty input)."""
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_defect(a: np.ndarray) -> float:
    """max |A - A^dag|, the distance from Hermiticity in the max norm."""
    return max_abs(a - a.conj().T)


def assert_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL, what: str = "operator") -> None:
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ToleranceError(f"{what} is not Hermitian: max|A - A^dag| = {defect:.3e} > {tol:.1e}")


def kron_embed(local_op: np.ndarray, site: int, n_sites: int, local_dim: int = 3) -> np.ndarray:
    """Embed a single-site operator into the chain Hilbert space.

    Returns I x ... x local_op x ... x I with ``local_op`` acting on
    ``site`` (1-based, site 1 is the leftmost tensor factor).
    """
    local_op = np.asarray(local_op, dtype=complex)
    if local_op.shape != (local_dim, local_dim):
        raise ValueError(
            f"local operator has shape {local_op.shape}, expected ({local_dim}, {local_dim})"
        )
    if not 1 <= site <= n_sites:
        raise ValueError(f"site {site} out of range 1..{n_sites}")
    out = np.ones((1, 1), dtype=complex)
    eye = np.eye(local_dim, dtype=complex)
    for j in range(1, n_sites + 1):
        out = np.kron(out, local_op if j == site else eye)
    return out


def eig_herm(a: np.ndarray, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns). Refuses input
    whose hermiticity defect exceeds EIG_HERMITIAN_RTOL * max|A|.
    """
    a = np.asarray(a, dtype=complex)
    if check:
        scale = max(1.0, max_abs(a))
        assert_hermitian(a, tol=EIG_HERMITIAN_RTOL * scale, what="eig_herm input")
    vals, vecs = np.linalg.eigh(a)
    return vals, vecs


def expm_factor(h: np.ndarray, dt: float, check: bool = True) -> np.ndarray:
    """Unitary propagator exp(-i H dt) via Hermitian eigendecomposition.

    Exact up to the eigensolver for the matrix sizes used here, and
    exactly unitary up to roundoff (no Pade/Taylor truncation).
    """
    vals, vecs = eig_herm(h, check=check)
    return (vecs * np.exp(-1j * vals * dt)) @ vecs.conj().T


def expm_mul(h: np.ndarray, dt: float, psi: np.ndarray, check: bool = True) -> np.ndarray:
    """Apply exp(-i H dt) to a state vector."""
    psi = np.asarray(psi, dtype=complex)
    if h.shape[0] != psi.shape[0]:
        raise ValueError(f"dimension mismatch: H is {h.shape}, psi has length {psi.shape[0]}")
    vals, vecs = eig_herm(h, check=check)
    return (vecs * np.exp(-1j * vals * dt)) @ (vecs.conj().T @ psi)


def fidelity_pure(rho: np.ndarray, phi: np.ndarray) -> float:
    """Fidelity <phi|rho|phi> of a density matrix against a pure target.

    The quadratic form must be real up to FIDELITY_IMAG_TOL; a larger
    imaginary residue signals a corrupted (non-Hermitian) rho.
    """
    rho = np.asarray(rho, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    if rho.shape != (phi.shape[0], phi.shape[0]):
        raise ValueError(f"dimension mismatch: rho is {rho.shape}, phi has length {phi.shape[0]}")
    val = complex(phi.conj() @ (rho @ phi))
    if abs(val.imag) > FIDELITY_IMAG_TOL:
        raise ToleranceError(f"<phi|rho|phi> has imaginary residue {val.imag:.3e}")
    return float(min(1.0, max(0.0, val.real)))


def overlap_fidelity(psi: np.ndarray, phi: np.ndarray) -> float:
    """|<phi|psi>|^2 for two pure states."""
    return float(abs(np.vdot(phi, psi)) ** 2)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """max |AB - BA|."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return max_abs(a @ b - b @ a)


def check_density_matrix(
    rho: np.ndarray,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-8,
    eig_floor: float = -1e-8,
) -> None:
    """Validate the density-matrix invariants, raising ToleranceError on failure."""
    defect = hermiticity_defect(rho)
    if defect > herm_tol:
        raise ToleranceError(f"density matrix hermiticity defect {defect:.3e} > {herm_tol:.1e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ToleranceError(f"density matrix trace {tr:.12f} deviates from 1 by > {trace_tol:.1e}")
    lo = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if lo < eig_floor:
        raise ToleranceError(f"density matrix minimum eigenvalue {lo:.3e} < {eig_floor:.1e}")


def normalized(psi: np.ndarray) -> np.ndarray:
    """Return psi / ||psi||."""
    psi = np.asarray(psi, dtype=complex)
    norm = float(np.linalg.norm(psi))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return psi / norm
