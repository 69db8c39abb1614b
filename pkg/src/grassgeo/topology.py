"""Exact combinatorial invariants and the seven-way characteristic report.

This module uses integer arithmetic only; Python integers make the binomial
path overflow-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

import numpy as np

from .errors import ConsistencyError, EnumerationSizeError, PreconditionError
from .kernels import EnergySpec, coordinate_plane_frame, critical_points, plucker_overlap_oracle
from .loci import SchubertSymbol
from .spaces import GrassmannSpace

MAX_CELLS = 10**6
ORTHOGONALITY_TOL = 1e-14


@dataclass(frozen=True)
class CharacteristicReport:
    """The seven characteristic numbers, all provably equal."""

    euler: int
    weyl_ratio: int
    cell_count: int
    fundamental_rep_dim: int
    kodaira_N: int
    critical_count: int
    max_orthogonal_coherent: int

    def values(self) -> tuple:
        return (
            self.euler,
            self.weyl_ratio,
            self.cell_count,
            self.fundamental_rep_dim,
            self.kodaira_N,
            self.critical_count,
            self.max_orthogonal_coherent,
        )

    def __post_init__(self):
        vals = self.values()
        if len(set(vals)) != 1:
            raise ConsistencyError(f"characteristic numbers disagree: {vals}")


def euler_characteristic(n: int, m: int) -> int:
    """Weyl group order ratio (n+m)! / (n! m!) for the Grassmannian."""
    if n < 1 or m < 1:
        raise PreconditionError("n and m must be >= 1")
    return math.comb(n + m, n)


def weyl_group_ratio(n: int, m: int) -> int:
    """The same number computed as the explicit factorial quotient."""
    if n < 1 or m < 1:
        raise PreconditionError("n and m must be >= 1")
    return math.factorial(n + m) // (math.factorial(n) * math.factorial(m))


def schubert_cells(n: int, m: int) -> list[SchubertSymbol]:
    """All Schubert symbols for G_n(C^{n+m}): nondecreasing omega in [0, m]^n."""
    count = euler_characteristic(n, m)
    if count > MAX_CELLS:
        raise EnumerationSizeError(f"cell enumeration of size {count} exceeds {MAX_CELLS}")
    return [
        SchubertSymbol(w, m) for w in combinations_with_replacement(range(m + 1), n)
    ]


def orthogonal_coherent_count(space: GrassmannSpace) -> int:
    """Constructive count of pairwise orthogonal coherent states: the
    coordinate n-planes, verified pairwise orthogonal through the Plucker
    overlap oracle."""
    frames = [
        coordinate_plane_frame(space, S)
        for S in combinations(range(space.N), space.n)
    ]
    for i in range(len(frames)):
        for j in range(i + 1, len(frames)):
            ov = abs(plucker_overlap_oracle(frames[i], frames[j]))
            if ov >= ORTHOGONALITY_TOL:
                raise ConsistencyError(
                    f"coordinate planes {i} and {j} are not orthogonal ({ov:.3e})"
                )
    return len(frames)


def characteristic_report(n: int, m: int, spec: EnergySpec) -> CharacteristicReport:
    """Assemble the seven equal numbers, each through its own route.

    The minimal projective embedding dimension is reported as the Plucker
    dimension of the very ample determinant bundle; no independent
    minimality search is attempted.
    """
    space = GrassmannSpace(n, m, epsilon=1)
    chi = euler_characteristic(n, m)
    cells = schubert_cells(n, m)
    dims = np.array([c.cell_dim for c in cells])
    if dims.min() != 0 or dims.max() != n * m or len(cells) != chi:
        raise ConsistencyError("Schubert cell enumeration failed its Poincare check")
    crit = critical_points(space, spec)
    return CharacteristicReport(
        euler=chi,
        weyl_ratio=weyl_group_ratio(n, m),
        cell_count=len(cells),
        fundamental_rep_dim=math.comb(n + m, n),
        kodaira_N=math.comb(n + m, n),
        critical_count=len(crit),
        max_orthogonal_coherent=orthogonal_coherent_count(space),
    )
