# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Clifford systems generated by the exterior-algebra operator d + d*.

The matrices J_1, ..., J_n act on coordinates of the total exterior algebra
of (R^n)*.  Each basis element is a multi-index, stored as an ordered tuple
whose permutation sign fixes the orientation of the coordinate; for n = 3
the degree-2 block is (23, 31, 12) so that the coordinates are
(q, p1, p2, p3, o23, o31, o12, o123).
"""

__all__ = [
    "MAX_DIMENSION",
    "CliffordSystem",
    "PointTangent",
    "basis_labels",
    "basis_order",
    "check_clifford",
    "check_hyperkahler",
    "complex_structures",
    "extract_K",
    "generate_J",
    "get_clifford_system",
    "odd_mask",
    "omega",
    "omega_nondegenerate",
    "theta",
    "xi",
]

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from bft.errors import UnsupportedError

MAX_DIMENSION = 8

MultiIndex = Tuple[int, ...]


def _permutation_sign(indices: Sequence[int]) -> int:
    """Sign of the permutation sorting `indices` (0 if any repeat)."""
    if len(set(indices)) != len(indices):
        return 0
    sign = 1
    values = list(indices)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] > values[j]:
                sign = -sign
    return sign


def basis_order(n: int) -> List[MultiIndex]:
    """Return the ordered basis of the total exterior algebra of (R^n)*.

    Degree-major, lexicographic within a degree.  The 3-dimensional degree-2
    block uses the cyclic labels (2, 3), (3, 1), (1, 2).
    """
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(
            f"Domain dimension must be between 1 and {MAX_DIMENSION}, "
            f"got {n}."
        )
    order: List[MultiIndex] = []
    for degree in range(n + 1):
        if n == 3 and degree == 2:
            order.extend([(2, 3), (3, 1), (1, 2)])
        else:
            order.extend(itertools.combinations(range(1, n + 1), degree))
    return order


def basis_labels(n: int) -> List[str]:
    """Human-readable coordinate labels matching `basis_order`."""
    labels = []
    for index in basis_order(n):
        if not index:
            labels.append("q")
        elif len(index) == 1:
            labels.append(f"p{index[0]}")
        else:
            labels.append("o" + "".join(str(i) for i in index))
    return labels


def odd_mask(n: int) -> np.ndarray:
    """Boolean mask of the odd-degree coordinates."""
    return np.array([len(index) % 2 == 1 for index in basis_order(n)])


def generate_J(n: int) -> List[np.ndarray]:
    """Return J_1..J_n with d + d* = sum_i J_i d_i on the chosen basis.

    J_i is exterior multiplication by dt_i minus contraction with the i-th
    coordinate vector field.  Entries are small signed integers.
    """
    order = basis_order(n)
    # Map each sorted multi-index to (position, orientation sign).
    position: Dict[MultiIndex, Tuple[int, int]] = {
        tuple(sorted(index)): (row, _permutation_sign(index))
        for row, index in enumerate(order)
    }
    size = len(order)
    matrices = []
    for i in range(1, n + 1):
        J = np.zeros((size, size), dtype=np.int64)
        for column, index in enumerate(order):
            column_sign = _permutation_sign(index)
            canonical = tuple(sorted(index))
            if i not in canonical:
                # dt_i ^ dt_I, moved into sorted order.
                wedged = (i,) + canonical
                row, row_sign = position[tuple(sorted(wedged))]
                sign = _permutation_sign(wedged)
                J[row, column] += sign * row_sign * column_sign
            else:
                # -iota_i dt_I: bring i to the front, then drop it.
                k = canonical.index(i)
                remainder = canonical[:k] + canonical[k + 1 :]
                row, row_sign = position[remainder]
                sign = -((-1) ** k)
                J[row, column] += sign * row_sign * column_sign
        matrices.append(J)
    return matrices


@dataclass(frozen=True, eq=False)
class CliffordSystem:
    """The matrices J_1..J_n for domain dimension n and target dimension d.

    m = 2^(n-1) d is the dimension of each of the even and odd halves of
    the fibre.
    """

    n: int
    d: int
    J: Tuple[np.ndarray, ...] = field(repr=False)
    basis: Tuple[MultiIndex, ...] = field(repr=False)

    @property
    def m(self) -> int:
        return 2 ** (self.n - 1) * self.d

    @property
    def size(self) -> int:
        """Number of exterior-algebra coordinates per target component."""
        return 2**self.n

    @property
    def odd(self) -> np.ndarray:
        return odd_mask(self.n)

    def block(self, i: int) -> np.ndarray:
        """Return Id_d (x) J_i acting on flattened (alpha, channel) vectors."""
        _check_index(self, i)
        return np.kron(np.eye(self.d, dtype=np.int64), self.J[i - 1])


@lru_cache(maxsize=None)
def get_clifford_system(n: int = 3, d: int = 1) -> CliffordSystem:
    if d < 1:
        raise ValueError(f"Target dimension must be positive, got {d}.")
    matrices = tuple(generate_J(n))
    for matrix in matrices:
        matrix.setflags(write=False)
    return CliffordSystem(
        n=n, d=d, J=matrices, basis=tuple(basis_order(n))
    )


def extract_K(system: CliffordSystem) -> List[np.ndarray]:
    """Top-left 4x4 minors of J_1, J_2, J_3: the polysymplectic K_i."""
    if system.n != 3:
        raise UnsupportedError(
            f"The K_i matrices are only defined for n = 3, not n = "
            f"{system.n}."
        )
    return [matrix[:4, :4].copy() for matrix in system.J]


def check_clifford(system: CliffordSystem) -> Dict[str, int]:
    """Maximum absolute deviation of each Clifford identity family.

    All arithmetic is in integers, so a valid system reports exact zeros.
    """
    identity = np.eye(system.size, dtype=np.int64)
    square = antisymmetry = anticommutation = parity = 0
    odd = system.odd
    for a, J_a in enumerate(system.J):
        square = max(square, int(np.abs(J_a @ J_a + identity).max()))
        antisymmetry = max(antisymmetry, int(np.abs(J_a + J_a.T).max()))
        # even coordinates feed odd ones and vice versa
        same_parity = J_a[np.ix_(odd, odd)], J_a[np.ix_(~odd, ~odd)]
        for block in same_parity:
            if block.size:
                parity = max(parity, int(np.abs(block).max()))
        for J_b in system.J[a + 1 :]:
            anticommutation = max(
                anticommutation, int(np.abs(J_a @ J_b + J_b @ J_a).max())
            )
    return {
        "square": square,
        "anticommutation": anticommutation,
        "antisymmetry": antisymmetry,
        "parity": parity,
    }


def complex_structures(system: CliffordSystem) -> List[np.ndarray]:
    """The complex structures J1J2, J2J3, J3J1 of the hyperkahler fibre."""
    if system.n != 3:
        raise UnsupportedError(
            "Complex structures are only formed for n = 3."
        )
    J1, J2, J3 = system.J
    return [J1 @ J2, J2 @ J3, J3 @ J1]


def check_hyperkahler(system: CliffordSystem) -> Dict[str, int]:
    """Deviation of I, J, K = J1J2, J2J3, J3J1 from quaternion relations."""
    I, J, K = complex_structures(system)
    identity = np.eye(system.size, dtype=np.int64)
    square = max(int(np.abs(M @ M + identity).max()) for M in (I, J, K))
    # J1J2 J2J3 = -J1J3 = J3J1, so I J = K up to the chosen orientation.
    product = int(np.abs(I @ J - K).max())
    return {"square": square, "product": product}


def omega_nondegenerate(system: CliffordSystem) -> Dict[str, object]:
    """Rank report contrasting omega^{J_i} with the presymplectic K_i."""
    report: Dict[str, object] = {
        "J_ranks": [int(np.linalg.matrix_rank(J)) for J in system.J],
    }
    if system.n == 3:
        K = extract_K(system)
        report["K_ranks"] = [int(np.linalg.matrix_rank(M)) for M in K]
        # the kernels of the K_i intersect trivially
        report["K_joint_kernel"] = 4 - int(
            np.linalg.matrix_rank(np.vstack(K))
        )
    return report


@dataclass(frozen=True)
class PointTangent:
    """A point of B together with a tangent vector there.

    Both arrays have shape (d, 2^n); even coordinates of `base` are lifts.
    """

    base: np.ndarray
    vector: np.ndarray

    def __post_init__(self) -> None:
        if self.base.shape != self.vector.shape:
            raise ValueError(
                f"Base shape {self.base.shape} does not match tangent shape "
                f"{self.vector.shape}."
            )
        if not (
            np.all(np.isfinite(self.base))
            and np.all(np.isfinite(self.vector))
        ):
            raise ValueError("Point and tangent entries must be finite.")


def _check_index(system: CliffordSystem, i: int) -> None:
    if not 1 <= i <= system.n:
        raise ValueError(
            f"Structure index must be between 1 and {system.n}, got {i}."
        )


def _as_points(system: CliffordSystem, value: np.ndarray) -> np.ndarray:
    return np.asarray(value, dtype=float).reshape(system.d, system.size)


def omega(
    system: CliffordSystem, i: int, v: np.ndarray, w: np.ndarray
) -> float:
    """omega^{J_i}(v, w) = <v, (Id_d (x) J_i) w>.

    Evaluated as the antisymmetric part so that omega(v, v) is exactly 0.
    """
    _check_index(system, i)
    v = _as_points(system, v)
    w = _as_points(system, w)
    J = system.J[i - 1]
    forward = np.einsum("ab,ab->", v, w @ J.T)
    backward = np.einsum("ab,ab->", w, v @ J.T)
    return float(0.5 * (forward - backward))


def xi(system: CliffordSystem, base: np.ndarray) -> np.ndarray:
    """The field sum of odd coordinates times their coordinate vectors."""
    base = _as_points(system, base)
    return np.where(system.odd, base, 0.0)


def theta(system: CliffordSystem, i: int, pt: PointTangent) -> float:
    """Primitive theta_i of omega^{J_i}, evaluated as iota_xi omega^{J_i}."""
    _check_index(system, i)
    return omega(system, i, xi(system, pt.base), pt.vector)
