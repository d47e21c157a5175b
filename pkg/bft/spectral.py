# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Spectral realisations of J_del, K_del and the Laplacian on T^3.

Derivatives are exact multiplications by 2 pi i k with the Nyquist mode
zeroed, so the identities of the Clifford system carry over to the grid
up to rounding.
"""

__all__ = [
    "SpectralOperators",
    "apply_Jdel",
    "apply_Kdel",
    "derivative",
    "field_values",
    "get_operators",
    "hk_identity_check",
    "is_parity_swapping",
    "laplacian",
    "sobolev_norm_sq",
    "symbol_nullity",
    "symbol_table",
    "verify_square",
]

import itertools
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy import fft

from bft.algebra import extract_K, get_clifford_system
from bft.fields import EVEN_CHANNELS, ODD_CHANNELS, FieldState, l2_norm

AXES = (-3, -2, -1)

RANK_THRESHOLD = 1e-10

FieldLike = Union[FieldState, np.ndarray]


def _zeroed_wavenumbers(n: int, real: bool = False) -> np.ndarray:
    k = fft.rfftfreq(n, 1.0 / n) if real else fft.fftfreq(n, 1.0 / n)
    k = k.copy()
    k[np.abs(k) == n // 2] = 0.0
    return k


class SpectralOperators:
    """Fourier multipliers for one grid, using real-to-complex transforms."""

    def __init__(self, grid: Sequence[int]) -> None:
        self.grid = tuple(int(n) for n in grid)
        k1 = _zeroed_wavenumbers(self.grid[0])[:, None, None]
        k2 = _zeroed_wavenumbers(self.grid[1])[None, :, None]
        k3 = _zeroed_wavenumbers(self.grid[2], real=True)[None, None, :]
        shape = (self.grid[0], self.grid[1], self.grid[2] // 2 + 1)
        #: 2 pi k_j on the half spectrum, Nyquist zeroed
        self.k = np.array(
            [
                np.broadcast_to(2 * np.pi * k1, shape),
                np.broadcast_to(2 * np.pi * k2, shape),
                np.broadcast_to(2 * np.pi * k3, shape),
            ]
        )
        self.D = [1j * kj for kj in self.k]
        self.k_squared = np.sum(self.k**2, axis=0)
        self.laplace_symbol = -self.k_squared

    def forward(self, values: np.ndarray) -> np.ndarray:
        return fft.rfftn(values, axes=AXES)

    def backward(self, hat: np.ndarray) -> np.ndarray:
        return fft.irfftn(hat, s=self.grid, axes=AXES)

    def apply_matrices(
        self, matrices: Sequence[np.ndarray], values: np.ndarray
    ) -> np.ndarray:
        """Return sum_i M_i d_i applied channelwise to (d, C, N1, N2, N3)."""
        hat = self.forward(values)
        out = np.zeros(
            hat.shape[:1] + (matrices[0].shape[0],) + hat.shape[2:],
            dtype=complex,
        )
        for M, D in zip(matrices, self.D):
            out += np.einsum("ab,db...->da...", M, hat) * D
        return self.backward(out)


@lru_cache(maxsize=16)
def get_operators(grid: Tuple[int, int, int]) -> SpectralOperators:
    return SpectralOperators(grid)


def field_values(Z: FieldLike) -> np.ndarray:
    return Z.values if isinstance(Z, FieldState) else np.asarray(Z)


def _operators_for(values: np.ndarray) -> SpectralOperators:
    return get_operators(tuple(values.shape[-3:]))  # type: ignore[arg-type]


def derivative(Z: FieldLike, i: int) -> np.ndarray:
    """Spectral partial derivative along t_i, i in 1..3."""
    values = field_values(Z)
    ops = _operators_for(values)
    return ops.backward(ops.forward(values) * ops.D[i - 1])


def apply_Jdel(Z: FieldLike) -> np.ndarray:
    """J_del Z = sum_i (Id_d (x) J_i) d_i Z."""
    values = field_values(Z)
    return _operators_for(values).apply_matrices(
        get_clifford_system(3).J, values
    )


def apply_Kdel(u: np.ndarray) -> np.ndarray:
    """K_del u for a field of shape (d, 4, N1, N2, N3)."""
    u = np.asarray(u)
    if u.shape[1] != 4:
        raise ValueError(
            f"K_del acts on 4 channels per component, got {u.shape[1]}."
        )
    return _operators_for(u).apply_matrices(
        extract_K(get_clifford_system(3)), u
    )


def laplacian(Z: FieldLike) -> np.ndarray:
    values = field_values(Z)
    ops = _operators_for(values)
    return ops.backward(ops.forward(values) * ops.laplace_symbol)


def verify_square(Z: FieldLike) -> float:
    """L2 norm of J_del(J_del Z) + Delta Z."""
    values = field_values(Z)
    return l2_norm(apply_Jdel(apply_Jdel(values)) + laplacian(values))


def is_parity_swapping(Z: FieldLike) -> float:
    """Largest leak of J_del between channels of equal degree parity.

    Zero means even output channels see only odd input channels and vice
    versa.
    """
    values = field_values(Z)
    leak = 0.0
    for keep, check in (
        (EVEN_CHANNELS, EVEN_CHANNELS),
        (ODD_CHANNELS, ODD_CHANNELS),
    ):
        masked = np.zeros_like(values)
        masked[:, keep] = values[:, keep]
        out = apply_Jdel(masked)
        leak = max(leak, float(np.abs(out[:, check]).max()))
    return leak


def sobolev_norm_sq(values: np.ndarray, k: int) -> float:
    """Squared H^k norm: sum over derivative orders j <= k of all d^j terms."""
    if k < 0:
        raise ValueError(f"Sobolev order must be nonnegative, got {k}.")
    values = np.asarray(values)
    grid = values.shape[-3:]
    k_full = np.meshgrid(
        *[2 * np.pi * _zeroed_wavenumbers(n) for n in grid], indexing="ij"
    )
    k_squared = sum(kj**2 for kj in k_full)
    weights = sum(k_squared**j for j in range(k + 1))
    hat = fft.fftn(values, axes=AXES, norm="forward")
    return float(np.sum(np.abs(hat) ** 2 * weights))


def hk_identity_check(Z: FieldLike, k: int) -> Tuple[float, float]:
    """Return (||J_del Z||^2_{H^k}, ||grad Z||^2_{H^k})."""
    values = field_values(Z)
    lhs = sobolev_norm_sq(apply_Jdel(values), k)
    rhs = sum(sobolev_norm_sq(derivative(values, i), k) for i in (1, 2, 3))
    return lhs, rhs


def _symbol_matrices(operator_tag: str) -> List[np.ndarray]:
    system = get_clifford_system(3)
    if operator_tag == "J":
        return list(system.J)
    elif operator_tag == "K":
        return extract_K(system)
    raise ValueError(f"Unknown operator {operator_tag!r}; use 'J' or 'K'.")


def symbol_nullity(operator_tag: str, k: Sequence[int]) -> int:
    """Nullity of sum_i M_i k_i by relative singular-value thresholding."""
    matrices = _symbol_matrices(operator_tag)
    symbol = sum(
        float(kj) * M.astype(float) for kj, M in zip(k, matrices)
    )
    singular_values = np.linalg.svd(symbol, compute_uv=False)
    largest = singular_values.max()
    if largest == 0.0:
        return len(singular_values)
    return int(np.sum(singular_values < RANK_THRESHOLD * largest))


def symbol_table(
    operator_tag: str, kmax: int
) -> List[Tuple[int, int, int, int]]:
    """Nullity for every k with ||k||_inf <= kmax."""
    _symbol_matrices(operator_tag)
    rows = []
    for k in itertools.product(range(-kmax, kmax + 1), repeat=3):
        rows.append(k + (symbol_nullity(operator_tag, k),))
    return rows
