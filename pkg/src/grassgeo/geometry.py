"""Charts, frames, geodesics and distance on the Grassmannian and its dual.

The chart convention is fixed once: the raw frame of a chart point Z is the
stacked matrix [I_n ; Z^dagger], so that the raw Gram identity
F_raw(Z')^dagger F_raw(Z) = I + Z' Z^dagger holds exactly.  The determinant
kernel in the coherent-state module relies on this identity verbatim.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    ConjugateToChartError,
    DomainError,
    LeftChartError,
    OnPolarDivisorError,
    PreconditionError,
    WrongChartError,
)
from .linalg import apply_spectral, inv_sqrt_hermitian, principal_angles, svd
from .spaces import ChartPoint, Frame, GrassmannSpace, TangentVector, origin_frame

CHART_SINGULAR_TOL = 1e-12
TAN_POLE_TOL = 1e-12
BLOWUP_LIMIT = 1e8


def raw_frame(p: ChartPoint) -> np.ndarray:
    """Unnormalized frame [I_n ; Z^dagger] of a chart point."""
    n = p.space.n
    return np.vstack([np.eye(n, dtype=complex), p.Z.conj().T])


def frame_of_chart(p: ChartPoint) -> Frame:
    """Orthonormalized (compact) or J-orthonormalized (noncompact) frame of Z."""
    space = p.space
    Z = p.Z
    gram = np.eye(space.n) + space.epsilon * (Z @ Z.conj().T)
    if not space.compact:
        # positive definiteness of I - Z Z^dagger == bounded-domain condition
        w = np.linalg.eigvalsh(gram)
        if w[0] <= 0:
            raise DomainError("chart point lies outside the bounded domain")
    return Frame(space, raw_frame(p) @ inv_sqrt_hermitian(gram))


def chart_of_frame(F: Frame) -> ChartPoint:
    """Inverse chart map: Z^dagger = F_bottom @ F_top^{-1}.

    Raises OnPolarDivisorError when the top block is singular; that failure
    is itself meaningful (the plane meets the orthocomplement of the chart
    origin, see the loci module).
    """
    top = F.top
    smin = svd(top).s[-1]
    if smin < CHART_SINGULAR_TOL:
        raise OnPolarDivisorError(
            f"plane is on the polar divisor of the chart origin "
            f"(top-block smallest singular value {smin:.3e})"
        )
    Zdag = F.bottom @ np.linalg.inv(top)
    return ChartPoint(F.space, Zdag.conj().T)


def exp0(space: GrassmannSpace, B: TangentVector) -> ChartPoint:
    """Geodesic exponential at the origin, in chart coordinates.

    Z = B ta(sqrt(B*B)) / sqrt(B*B) with ta = tan (compact) or tanh
    (noncompact); unit speed, so ||B||_F is arc length.
    """
    if B.space != space:
        raise PreconditionError("tangent vector belongs to a different space")
    if space.compact:
        s = svd(B.B).s
        # distance of each singular value to the nearest pi/2 + k*pi pole
        r = np.remainder(s - np.pi / 2, np.pi)
        pole_dist = np.minimum(r, np.pi - r)
        if s.size and np.min(pole_dist) < TAN_POLE_TOL:
            raise ConjugateToChartError(
                "tan singularity: a singular value of B equals pi/2 mod pi; "
                "the point exists but leaves the chart -- use exp0_frame"
            )
        Z = apply_spectral(B.B, np.tan)
    else:
        Z = apply_spectral(B.B, np.tanh)
    return ChartPoint(space, Z)


def exp0_frame(space: GrassmannSpace, B: TangentVector) -> Frame:
    """Geodesic exponential at the origin as a frame; globally defined.

    Block form [co(sqrt(BB*)) ; si(sqrt(B*B))/sqrt(B*B) B*] evaluated through
    one full SVD of B, with co/si = cos/sin (compact) or cosh/sinh
    (noncompact).
    """
    if B.space != space:
        raise PreconditionError("tangent vector belongs to a different space")
    n, m = space.n, space.m
    u, s, vh = np.linalg.svd(B.B, full_matrices=True)
    k = s.size
    if space.compact:
        co, si = np.cos(s), np.sin(s)
    else:
        co, si = np.cosh(s), np.sinh(s)
    cpad = np.ones(n)
    cpad[:k] = co
    top = (u * cpad) @ u.conj().T
    S = np.zeros((m, n), dtype=complex)
    S[:k, :k] = np.diag(si)
    bottom = vh.conj().T @ S @ u.conj().T
    return Frame(space, np.vstack([top, bottom]))


def log0(space: GrassmannSpace, p: ChartPoint) -> TangentVector:
    """Inverse of exp0 on the principal domain.

    Compact: principal branch, all singular values of B land in [0, pi/2).
    """
    if p.space != space:
        raise PreconditionError("chart point belongs to a different space")
    if space.compact:
        B = apply_spectral(p.Z, np.arctan)
    else:
        # bounded-domain invariant already enforced by ChartPoint
        B = apply_spectral(p.Z, np.arctanh)
    return TangentVector(space, B)


def geodesic_ode(
    space: GrassmannSpace, B: TangentVector, t: float, steps: int
) -> ChartPoint:
    """Integrate the chart geodesic equation with fixed-step classical RK4.

    Z'' = 2 eps Z' Z^dagger (I + eps Z Z^dagger)^{-1} Z', Z(0) = 0,
    Z'(0) = B.  Independent oracle for exp0; fixed stepping keeps the output
    deterministic for golden tests.
    """
    if steps < 100:
        raise PreconditionError("geodesic_ode requires steps >= 100")
    if B.space != space:
        raise PreconditionError("tangent vector belongs to a different space")
    n = space.n
    eps = space.epsilon
    eye = np.eye(n)

    def acc(Z, W):
        gram = eye + eps * (Z @ Z.conj().T)
        return (2.0 * eps) * W @ np.linalg.solve(gram.T, Z.conj()).T @ W

    Z = np.zeros_like(B.B)
    W = B.B.copy()
    h = t / steps
    half = 0.5 * h
    sixth = h / 6.0
    for step in range(steps):
        k1z, k1w = W, acc(Z, W)
        k2z = W + half * k1w
        k2w = acc(Z + half * k1z, k2z)
        k3z = W + half * k2w
        k3w = acc(Z + half * k2z, k3z)
        k4z = W + h * k3w
        k4w = acc(Z + h * k3z, k4z)
        Z = Z + sixth * (k1z + 2 * k2z + 2 * k3z + k4z)
        W = W + sixth * (k1w + 2 * k2w + 2 * k3w + k4w)
        if step % 64 == 0 and np.max(np.abs(Z)) > BLOWUP_LIMIT:
            raise LeftChartError("geodesic left the chart during integration")
    if np.max(np.abs(Z)) > BLOWUP_LIMIT:
        raise LeftChartError("geodesic left the chart during integration")
    return ChartPoint(space, Z)


def _complete_unitary(F: np.ndarray) -> np.ndarray:
    """Extend an orthonormal (n+m) x n matrix to a full unitary."""
    q, _ = np.linalg.qr(F, mode="complete")
    return q


def _complete_j_unitary(space: GrassmannSpace, F: np.ndarray) -> np.ndarray:
    """Extend a J-orthonormal frame to a J-unitary matrix Q = [F, G].

    G is built by hyperbolic Gram-Schmidt over the standard basis with
    pivoting on the most negative remaining J-norm.
    """
    J = space.j_matrix()
    N, n = F.shape
    pos = [F[:, i] for i in range(n)]
    neg: list[np.ndarray] = []
    candidates = [np.eye(N, dtype=complex)[:, i] for i in range(N)]
    for _ in range(space.m):
        best = None
        best_norm = 0.0
        for c in candidates:
            v = c.copy()
            for u in pos:
                v = v - u * (u.conj() @ (J @ v))
            for u in neg:
                v = v + u * (u.conj() @ (J @ v))
            jn = float(np.real(v.conj() @ (J @ v)))
            if jn < best_norm:
                best_norm = jn
                best = v
        if best is None or best_norm > -1e-12:
            raise PreconditionError("failed to complete a J-orthonormal basis")
        neg.append(best / np.sqrt(-best_norm))
    return np.column_stack(pos + neg)


def transport_to_origin(space: GrassmannSpace, p: ChartPoint) -> np.ndarray:
    """Isometry g (unitary / J-unitary (n+m) x (n+m)) sending p's plane to O.

    Compact: g^dagger g = I; noncompact: g^dagger J g = J.  Applying g to
    frames preserves all pairwise principal angles (compact) and all J-Gram
    matrices (noncompact).
    """
    F = frame_of_chart(p).F
    if space.compact:
        return _complete_unitary(F).conj().T
    J = space.j_matrix()
    Q = _complete_j_unitary(space, F)
    return J @ Q.conj().T @ J


def apply_isometry(g: np.ndarray, F: Frame) -> Frame:
    return Frame(F.space, g @ F.F)


def frame_distance(space: GrassmannSpace, F1: Frame, F2: Frame) -> float:
    """Compact geodesic distance as the 2-norm of the principal-angle vector.

    Valid through the polar divisor, where the largest angle equals pi/2.
    """
    if not space.compact:
        raise PreconditionError("frame_distance is the compact angle formula")
    return float(np.linalg.norm(principal_angles(F1.F, F2.F)))


def distance(space: GrassmannSpace, p1: ChartPoint, p2: ChartPoint) -> float:
    """Geodesic distance: transport p1 to the origin, then ||log0||_F.

    Compact pairs whose second image lands on the polar divisor of the first
    fall back to the principal-angle formula, which tolerates pi/2 angles.
    """
    g = transport_to_origin(space, p1)
    moved = apply_isometry(g, frame_of_chart(p2))
    try:
        return log0(space, chart_of_frame(moved)).norm
    except OnPolarDivisorError:
        if not space.compact:
            raise
        return frame_distance(space, origin_frame(space), moved)


def chart_transition(
    space: GrassmannSpace, F: Frame, row_selection
) -> ChartPoint:
    """Chart coordinates in the chart centered at the selected coordinate plane.

    row_selection lists the n rows forming the new top block; it must be
    invertible there.
    """
    rows = sorted(int(i) for i in row_selection)
    if len(rows) != space.n or len(set(rows)) != space.n:
        raise PreconditionError(f"row_selection must pick {space.n} distinct rows")
    if rows[0] < 0 or rows[-1] >= space.N:
        raise PreconditionError("row_selection indices out of range")
    rest = [i for i in range(space.N) if i not in set(rows)]
    top = F.F[rows]
    if svd(top).s[-1] < CHART_SINGULAR_TOL:
        raise WrongChartError(
            "selected rows give a singular block; plane not in that chart"
        )
    Zdag = F.F[rest] @ np.linalg.inv(top)
    return ChartPoint(space, Zdag.conj().T)
