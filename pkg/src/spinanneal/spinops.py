"""Single-site spin operators, the parity operator, and reference states.

Basis convention, used everywhere in this package: the local spin-1
basis is ordered {|+1>, |0>, |-1>} (indices 0, 1, 2), and chain sites
are laid out left to right in the tensor product, so site 1 is the most
significant trit of a basis index.

The bright/dark combinations |B> = (|+1> + |-1>)/sqrt(2) and
|D> = (|+1> - |-1>)/sqrt(2) diagonalize the per-site parity
|B><B| - |D><D| + |0><0|, which in the bare basis is the |+1> <-> |-1>
swap. The x operator couples only |0> <-> |B>; the y operator couples
only |0> <-> |D>.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .linalg import kron_embed

LOCAL_DIM = 3

# ghz_state for spin-1 lives on the |+1...+1> and |-1...-1> corners
_PLUS1, _ZERO, _MINUS1 = 0, 1, 2
_SYMBOL_TO_INDEX = {+1: _PLUS1, 0: _ZERO, -1: _MINUS1}


@dataclass(frozen=True)
class Spin1Ops:
    """Spin-1 operator set and the bright/dark/zero single-site states."""

    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    sz2: np.ndarray
    bright: np.ndarray
    dark: np.ndarray
    zero: np.ndarray

    @property
    def strain(self) -> np.ndarray:
        """sx^2 - sy^2 = |B><B| - |D><D| = |+1><-1| + |-1><+1|."""
        return self.sx @ self.sx - self.sy @ self.sy


@dataclass(frozen=True)
class SpinHalfOps:
    sigx: np.ndarray
    sigz: np.ndarray


def spin1_ops() -> Spin1Ops:
    """Build the spin-1 operators from their bright/dark outer-product definitions."""
    bright = np.array([1.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
    dark = np.array([1.0, 0.0, -1.0], dtype=complex) / np.sqrt(2.0)
    zero = np.array([0.0, 1.0, 0.0], dtype=complex)
    sx = np.outer(bright, zero.conj()) + np.outer(zero, bright.conj())
    sy = -1j * np.outer(dark, zero.conj()) + 1j * np.outer(zero, dark.conj())
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return Spin1Ops(sx=sx, sy=sy, sz=sz, sz2=sz @ sz, bright=bright, dark=dark, zero=zero)


def spin_half_ops() -> SpinHalfOps:
    sigx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sigz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    return SpinHalfOps(sigx=sigx, sigz=sigz)


@lru_cache(maxsize=None)
def _parity_cached(n_sites: int) -> np.ndarray:
    # |B><B| - |D><D| + |0><0| collapses to the exact |+1> <-> |-1| swap;
    # building the permutation directly keeps the entries exactly 0/1 so
    # symmetry checks against it are not polluted by outer-product roundoff
    p1 = np.zeros((LOCAL_DIM, LOCAL_DIM), dtype=complex)
    p1[_PLUS1, _MINUS1] = p1[_MINUS1, _PLUS1] = p1[_ZERO, _ZERO] = 1.0
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n_sites):
        out = np.kron(out, p1)
    return out


def parity_op(n_sites: int) -> np.ndarray:
    """L-fold tensor power of the per-site parity; Hermitian, unitary, involutory."""
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    return _parity_cached(n_sites).copy()


def ghz_state(n_sites: int, sign: int = +1) -> np.ndarray:
    """(|+1...+1> +/- |-1...-1>)/sqrt(2), with real positive amplitude on |+1...+1>."""
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    psi = np.zeros(LOCAL_DIM**n_sites, dtype=complex)
    psi[0] = 1.0 / np.sqrt(2.0)
    psi[-1] = sign / np.sqrt(2.0)
    return psi


def basis_index(labels: Sequence[int]) -> int:
    """Index of the product basis state with per-site symbols in {+1, 0, -1}."""
    idx = 0
    for symbol in labels:
        if symbol not in _SYMBOL_TO_INDEX:
            raise ValueError(f"invalid spin symbol {symbol!r}; expected +1, 0 or -1")
        idx = idx * LOCAL_DIM + _SYMBOL_TO_INDEX[symbol]
    return idx


def product_state(n_sites: int, labels: Sequence[int]) -> np.ndarray:
    """Computational basis vector for the given per-site symbols."""
    if len(labels) != n_sites:
        raise ValueError(f"expected {n_sites} labels, got {len(labels)}")
    psi = np.zeros(LOCAL_DIM**n_sites, dtype=complex)
    psi[basis_index(labels)] = 1.0
    return psi


def all_zero_state(n_sites: int) -> np.ndarray:
    """|0>^(x n_sites), the annealing start state."""
    return product_state(n_sites, (0,) * n_sites)


def embedded(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Spin-1 single-site operator embedded at 1-based ``site``."""
    return kron_embed(op, site, n_sites, local_dim=LOCAL_DIM)
