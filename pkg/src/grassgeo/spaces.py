"""Domain types: the space, chart points, tangent vectors and frames."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PreconditionError
from .linalg import as_matrix, svd

FRAME_GRAM_TOL = 1e-10


@dataclass(frozen=True)
class GrassmannSpace:
    """G_n(C^{n+m}) when epsilon = +1, its noncompact dual when epsilon = -1.

    n is the plane dimension, m the codimension.  Points are n-planes in
    C^{n+m}; the noncompact dual is realized as the bounded domain of n x m
    matrices with all singular values < 1.
    """

    n: int
    m: int
    epsilon: int = 1

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise PreconditionError("n and m must be >= 1")
        if self.epsilon not in (1, -1):
            raise PreconditionError("epsilon must be +1 (compact) or -1 (noncompact)")

    @property
    def N(self) -> int:
        return self.n + self.m

    @property
    def rank(self) -> int:
        """Symmetric rank r = min(n, m)."""
        return min(self.n, self.m)

    @property
    def compact(self) -> bool:
        return self.epsilon == 1

    def j_matrix(self) -> np.ndarray:
        """Indefinite metric J = diag(I_n, -I_m) of the noncompact realization."""
        return np.diag(np.concatenate([np.ones(self.n), -np.ones(self.m)]))


@dataclass(frozen=True)
class ChartPoint:
    """Local coordinates Z (n x m) in the maximal chart around the origin plane."""

    space: GrassmannSpace
    Z: np.ndarray

    def __post_init__(self):
        Z = as_matrix(self.Z, "Z")
        if Z.shape != (self.space.n, self.space.m):
            raise PreconditionError(
                f"Z must be {self.space.n}x{self.space.m}, got {Z.shape}"
            )
        object.__setattr__(self, "Z", Z)
        if not self.space.compact:
            top = svd(Z).s[0] if Z.size else 0.0
            if top >= 1.0:
                raise DomainError(
                    f"noncompact chart point needs all singular values < 1, "
                    f"largest is {top:.6g}"
                )


@dataclass(frozen=True)
class TangentVector:
    """Normal coordinates B (n x m) at the origin plane."""

    space: GrassmannSpace
    B: np.ndarray

    def __post_init__(self):
        B = as_matrix(self.B, "B")
        if B.shape != (self.space.n, self.space.m):
            raise PreconditionError(
                f"B must be {self.space.n}x{self.space.m}, got {B.shape}"
            )
        object.__setattr__(self, "B", B)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.B))


@dataclass(frozen=True)
class Frame:
    """(n+m) x n matrix whose column span is the plane.

    Compact: orthonormal columns.  Noncompact: J-orthonormal columns with
    J = diag(I_n, -I_m), i.e. F^dagger J F = I_n.  Chart-free, so it also
    covers the polar divisor.
    """

    space: GrassmannSpace
    F: np.ndarray

    def __post_init__(self):
        F = as_matrix(self.F, "F")
        if F.shape != (self.space.N, self.space.n):
            raise PreconditionError(
                f"frame must be {self.space.N}x{self.space.n}, got {F.shape}"
            )
        object.__setattr__(self, "F", F)
        if self.space.compact:
            gram = F.conj().T @ F
        else:
            gram = F.conj().T @ self.space.j_matrix() @ F
        dev = np.max(np.abs(gram - np.eye(self.space.n)))
        if dev > FRAME_GRAM_TOL:
            kind = "orthonormality" if self.space.compact else "J-orthonormality"
            raise PreconditionError(f"frame {kind} deviation {dev:.3e} exceeds 1e-10")

    @property
    def top(self) -> np.ndarray:
        return self.F[: self.space.n]

    @property
    def bottom(self) -> np.ndarray:
        return self.F[self.space.n :]


def origin_frame(space: GrassmannSpace) -> Frame:
    """Frame of the origin plane O = span(e_1, ..., e_n)."""
    F = np.zeros((space.N, space.n), dtype=complex)
    F[: space.n] = np.eye(space.n)
    return Frame(space, F)
