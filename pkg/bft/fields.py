# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Discretized periodic maps from the unit 3-torus into B = T^4d x R^4d."""

__all__ = [
    "CHANNELS",
    "CHANNEL_NAMES",
    "EVEN_CHANNELS",
    "ODD_CHANNELS",
    "O_IJ_CHANNELS",
    "FieldState",
    "SpectralField",
    "combine",
    "even_odd_split",
    "family_distance",
    "from_spectral",
    "grid_points",
    "l2_inner",
    "l2_norm",
    "to_spectral",
]

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft

from bft.algebra import basis_labels, odd_mask

CHANNELS = 8
CHANNEL_NAMES = tuple(basis_labels(3))
_ODD = odd_mask(3)
EVEN_CHANNELS = tuple(int(c) for c in np.flatnonzero(~_ODD))
ODD_CHANNELS = tuple(int(c) for c in np.flatnonzero(_ODD))
# o23, o31, o12: the directions of the T^{3d} family action
O_IJ_CHANNELS = (4, 5, 6)

BFT1_MAGIC = "BFT1"

Grid = Tuple[int, int, int]


def _check_grid(grid: Sequence[int]) -> Grid:
    grid = tuple(int(n) for n in grid)
    if len(grid) != 3:
        raise ValueError(f"Expected a 3-dimensional grid, got {grid}.")
    for n in grid:
        if n <= 0 or n % 2:
            raise ValueError(
                f"Grid sizes must be positive and even, got {grid}."
            )
    return grid  # type: ignore[return-value]


def grid_points(grid: Sequence[int]) -> np.ndarray:
    """Return t-coordinates of shape (3, N1, N2, N3) on the unit torus."""
    grid = _check_grid(grid)
    axes = [np.arange(n) / n for n in grid]
    return np.array(np.meshgrid(*axes, indexing="ij"))


def l2_inner(a: np.ndarray, b: np.ndarray) -> float:
    """L2 pairing over the unit-volume torus; leading axes are summed."""
    grid_size = np.prod(a.shape[-3:])
    return float(np.sum(a * b) / grid_size)


def l2_norm(a: np.ndarray) -> float:
    return float(np.sqrt(max(l2_inner(a, a), 0.0)))


@dataclass(frozen=True, eq=False)
class FieldState:
    """A field Z with values of shape (d, 8, N1, N2, N3).

    Even channels (q, o23, o31, o12) hold real lifts of torus values with
    period 1; the lift is single-valued, so Z is null-homotopic.
    """

    d: int
    grid: Grid
    values: np.ndarray = field(repr=False)
    lifted: bool = True

    def __post_init__(self) -> None:
        grid = _check_grid(self.grid)
        object.__setattr__(self, "grid", grid)
        if self.d < 1:
            raise ValueError(f"Target dimension must be positive: {self.d}")
        values = np.array(self.values, dtype=float)
        expected = (self.d, CHANNELS) + grid
        if values.shape != expected:
            raise ValueError(
                f"Field values have shape {values.shape}, expected "
                f"{expected}."
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("Field values must be finite.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, d: int, grid: Sequence[int]) -> "FieldState":
        grid = _check_grid(grid)
        return cls(d=d, grid=grid, values=np.zeros((d, CHANNELS) + grid))

    @classmethod
    def constant(
        cls, d: int, grid: Sequence[int], point: np.ndarray
    ) -> "FieldState":
        """A constant field; `point` has shape (d, 8) or 8d entries."""
        grid = _check_grid(grid)
        point = np.asarray(point, dtype=float).reshape(d, CHANNELS)
        values = np.broadcast_to(
            point[:, :, None, None, None], (d, CHANNELS) + grid
        )
        return cls(d=d, grid=grid, values=values)

    @classmethod
    def random_band_limited(
        cls,
        d: int,
        grid: Sequence[int],
        rng: np.random.Generator,
        amplitude: float = 1.0,
        kmax: int = 2,
    ) -> "FieldState":
        """A random real field whose modes satisfy |k_j| <= kmax."""
        grid = _check_grid(grid)
        if 2 * kmax >= min(grid):
            raise ValueError(
                f"Band limit {kmax} does not fit below the Nyquist mode of "
                f"grid {grid}."
            )
        shape = (d, CHANNELS) + grid
        coefficients = rng.standard_normal(shape) + 1j * rng.standard_normal(
            shape
        )
        k = np.meshgrid(
            *[fft.fftfreq(n, 1.0 / n) for n in grid], indexing="ij"
        )
        band = (
            (np.abs(k[0]) <= kmax)
            & (np.abs(k[1]) <= kmax)
            & (np.abs(k[2]) <= kmax)
        )
        coefficients *= band
        values = fft.ifftn(coefficients, axes=(-3, -2, -1), norm="forward")
        values = values.real
        scale = np.sqrt(np.mean(values**2))
        if scale > 0:
            values *= amplitude / scale
        return cls(d=d, grid=grid, values=values)

    def with_values(self, values: np.ndarray) -> "FieldState":
        return FieldState(d=self.d, grid=self.grid, values=values)

    @property
    def even(self) -> np.ndarray:
        return self.values[:, EVEN_CHANNELS]

    @property
    def odd(self) -> np.ndarray:
        return self.values[:, ODD_CHANNELS]

    def channel(self, name: str, alpha: int = 0) -> np.ndarray:
        return self.values[alpha, CHANNEL_NAMES.index(name)]

    def canonicalize(self) -> "FieldState":
        """Shift even lifts by integers so each channel mean lies in [0, 1)."""
        values = self.values.copy()
        means = values[:, EVEN_CHANNELS].mean(axis=(-3, -2, -1))
        values[:, EVEN_CHANNELS] -= np.floor(means)[..., None, None, None]
        return self.with_values(values)

    def odd_magnitude(self) -> np.ndarray:
        """Pointwise |Z^odd|, summed over all target components."""
        return np.sqrt(np.sum(self.odd**2, axis=(0, 1)))

    def sup_odd(self) -> float:
        return float(self.odd_magnitude().max())

    def odd_l2(self) -> float:
        return l2_norm(self.odd)

    def channel_variance(self, channels: Sequence[int]) -> float:
        """Largest spatial variance among the given channels."""
        selected = self.values[:, list(channels)]
        return float(selected.var(axis=(-3, -2, -1)).max())

    def save(self, path: Union[str, Path]) -> None:
        """Write the BFT1 snapshot format."""
        header = f"{BFT1_MAGIC} {self.d} {' '.join(map(str, self.grid))}\n"
        with Path(path).open("wb") as f:
            f.write(header.encode("ascii"))
            f.write(self.values.astype("<f8").tobytes(order="C"))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "FieldState":
        data = Path(path).read_bytes()
        newline = data.find(b"\n")
        if newline < 0:
            raise ValueError(f"{str(path)!r} has no BFT1 header line.")
        parts = data[:newline].decode("ascii", errors="replace").split()
        if len(parts) != 5 or parts[0] != BFT1_MAGIC:
            raise ValueError(f"{str(path)!r} is not a BFT1 snapshot.")
        d, *grid = (int(part) for part in parts[1:])
        payload = data[newline + 1 :]
        expected = 8 * d * CHANNELS * int(np.prod(grid))
        if len(payload) != expected:
            raise ValueError(
                f"{str(path)!r} holds {len(payload)} payload bytes, expected "
                f"{expected}."
            )
        values = np.frombuffer(payload, dtype="<f8").reshape(
            (d, CHANNELS) + tuple(grid)
        )
        return cls(d=d, grid=tuple(grid), values=values)  # type: ignore

    def export_csv(self, directory: Union[str, Path]) -> None:
        """Write one CSV per channel: grid indices, t-coordinates, value."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        t = grid_points(self.grid).reshape(3, -1).T
        index = np.array(
            np.meshgrid(*[np.arange(n) for n in self.grid], indexing="ij")
        ).reshape(3, -1)
        for alpha in range(self.d):
            for c, name in enumerate(CHANNEL_NAMES):
                table = np.column_stack(
                    [index.T, t, self.values[alpha, c].reshape(-1)]
                )
                np.savetxt(
                    directory / f"{name}_{alpha + 1}.csv",
                    table,
                    delimiter=",",
                    fmt="%.17g",
                    header="i1,i2,i3,t1,t2,t3,value",
                    comments="",
                )


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier-series coefficients of a FieldState (norm="forward")."""

    d: int
    grid: Grid
    coefficients: np.ndarray = field(repr=False)

    @property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers of shape (3, N1, N2, N3)."""
        return np.array(
            np.meshgrid(
                *[fft.fftfreq(n, 1.0 / n).astype(int) for n in self.grid],
                indexing="ij",
            )
        )

    def coefficient(
        self, k: Sequence[int], channel: int = 0, alpha: int = 0
    ) -> complex:
        index = tuple(int(kj) % n for kj, n in zip(k, self.grid))
        return complex(self.coefficients[(alpha, channel) + index])


def to_spectral(Z: FieldState) -> SpectralField:
    coefficients = fft.fftn(Z.values, axes=(-3, -2, -1), norm="forward")
    return SpectralField(d=Z.d, grid=Z.grid, coefficients=coefficients)


def from_spectral(S: SpectralField) -> FieldState:
    values = fft.ifftn(S.coefficients, axes=(-3, -2, -1), norm="forward")
    return FieldState(d=S.d, grid=S.grid, values=values.real)


def even_odd_split(Z: FieldState) -> Tuple[np.ndarray, np.ndarray]:
    """Return (Z^even, Z^odd), each of shape (d, 4, N1, N2, N3)."""
    return Z.even.copy(), Z.odd.copy()


def combine(
    even: np.ndarray, odd: np.ndarray, d: Optional[int] = None
) -> FieldState:
    """Inverse of `even_odd_split`."""
    d = even.shape[0] if d is None else d
    values = np.empty((d, CHANNELS) + even.shape[-3:])
    values[:, EVEN_CHANNELS] = even
    values[:, ODD_CHANNELS] = odd
    return FieldState(d=d, grid=even.shape[-3:], values=values)


def family_distance(Z1: FieldState, Z2: FieldState) -> float:
    """L2 distance between the T^{3d}-orbits of two fields.

    q lifts are aligned by the integer shift nearest to their mean
    difference, the o_ij channels are compared after removing their means,
    and the odd channels are compared directly.
    """
    if Z1.d != Z2.d or Z1.grid != Z2.grid:
        raise ValueError(
            f"Cannot compare fields of shapes {Z1.values.shape} and "
            f"{Z2.values.shape}."
        )
    a = Z1.values.copy()
    b = Z2.values.copy()
    q_shift = np.round(np.mean(a[:, 0] - b[:, 0], axis=(-3, -2, -1)))
    b[:, 0] += q_shift[:, None, None, None]
    for values in (a, b):
        values[:, O_IJ_CHANNELS] -= values[:, O_IJ_CHANNELS].mean(
            axis=(-3, -2, -1), keepdims=True
        )
    return l2_norm(a - b)
