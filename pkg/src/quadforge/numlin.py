"""Dense floating point linear algebra on small matrices.

Householder QR and least squares, SOR sweeps, definiteness and signature of
symmetric matrices, cyclic Jacobi eigenvalues, the Moore-Penrose inverse via
a complete orthogonal factorisation, and affine fixed-point iteration.
Inputs are never modified.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, ContractionError, DomainError, RankError

SYMMETRY_RTOL = 1e-12
RANK_RTOL = 1e-10
SIGNATURE_RTOL = 1e-10
JACOBI_RTOL = 1e-12
CRITICAL_RTOL = 1e-8


def as_matrix(A) -> np.ndarray:
    A = np.array(A, dtype=float)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.ndim != 2:
        raise DomainError(f"expected a 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix has non-finite entries")
    return A


def as_vector(b) -> np.ndarray:
    b = np.array(b, dtype=float).reshape(-1)
    if not np.all(np.isfinite(b)):
        raise DomainError("vector has non-finite entries")
    return b


def inf_norm(A) -> float:
    """Maximum absolute row sum."""
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0.0
    if A.ndim == 1:
        return float(np.max(np.abs(A)))
    return float(np.max(np.sum(np.abs(A), axis=1)))


def check_symmetric(S) -> np.ndarray:
    S = as_matrix(S)
    if S.shape[0] != S.shape[1]:
        raise DomainError(f"matrix of shape {S.shape} is not square")
    if inf_norm(S - S.T) > SYMMETRY_RTOL * max(inf_norm(S), 1e-300):
        raise DomainError("matrix is not symmetric")
    return (S + S.T) / 2


class QRResult(NamedTuple):
    """``A = Q @ R`` with ``Q`` orthogonal (m x m) and ``R`` upper triangular (m x n).

    ``Q.T`` is the product of the Householder reflections, i.e. ``Q.T @ A == R``.
    """

    Q: np.ndarray
    R: np.ndarray


def householder_vector(x: np.ndarray) -> tuple[np.ndarray, float] | None:
    """Reflection vector ``y`` sending ``x`` to ``-sign(x[0]) |x| e1``.

    Returns ``(y, beta)`` with ``beta = 2 / (y.y)``, or ``None`` for ``x = 0``.
    ``y`` is scaled to unit length, so ``beta`` is 2; this keeps tiny or huge
    columns away from underflow and overflow in ``y y^t``.
    """
    scale = float(np.max(np.abs(x))) if x.size else 0.0
    if scale == 0.0:
        return None
    # scale first: x.x underflows for entries below ~1e-154
    y = x / scale
    y /= np.linalg.norm(y)
    sigma = 1.0 if x[0] >= 0 else -1.0
    # adding sigma*|x| avoids cancellation in the first coordinate
    y[0] += sigma
    y /= np.linalg.norm(y)
    return y, 2.0


def householder_matrix(y) -> np.ndarray:
    """``E - 2 y y^t / |y|^2``."""
    y = as_vector(y)
    return np.eye(len(y)) - 2.0 * np.outer(y, y) / float(y @ y)


def householder_qr(A) -> QRResult:
    A = as_matrix(A)
    m, n = A.shape
    if m < n:
        raise DomainError(f"need rows >= cols, got {m}x{n}")
    R = A.copy()
    H = np.eye(m)
    for j in range(min(n, m - 1)):
        v = householder_vector(R[j:, j])
        if v is None:
            continue
        y, beta = v
        R[j:, j:] -= beta * np.outer(y, y @ R[j:, j:])
        H[j:, :] -= beta * np.outer(y, y @ H[j:, :])
        R[j + 1:, j] = 0.0
    return QRResult(H.T, np.triu(R))


def _rank_threshold(A: np.ndarray) -> float:
    return RANK_RTOL * inf_norm(A) * max(A.shape)


def back_substitute(R: np.ndarray, c: np.ndarray) -> np.ndarray:
    n = R.shape[1]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (c[i] - R[i, i + 1:n] @ x[i + 1:n]) / R[i, i]
    return x


def least_squares(A, b) -> tuple[np.ndarray, float]:
    """Minimiser of ``|Ax - b|_2`` and the minimal residual.

    The residual is the norm of the tail of ``Q^t b`` below row ``n``.
    """
    A = as_matrix(A)
    b = as_vector(b)
    m, n = A.shape
    if len(b) != m:
        raise DomainError(f"right side has length {len(b)}, expected {m}")
    Q, R = householder_qr(A)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > _rank_threshold(A)))
    if rank < n:
        raise RankError(f"matrix has numerical rank {rank} < {n}", rank)
    c = Q.T @ b
    x = back_substitute(R[:n, :n], c[:n])
    return x, float(np.linalg.norm(c[n:]))


def sor_sweep(A, b, x, omega: float) -> np.ndarray:
    """One relaxed Gauss-Seidel sweep, coordinates updated in order."""
    A = np.asarray(A, dtype=float)
    x = np.array(x, dtype=float)
    for i in range(len(x)):
        s = b[i] - A[i, :i] @ x[:i] - A[i, i + 1:] @ x[i + 1:]
        x[i] = (1.0 - omega) * x[i] + omega * s / A[i, i]
    return x


def sor_solve(A, b, omega: float = 1.0, x0=None, tol: float = 1e-10, maxiter: int = 10_000):
    """Solve ``Ax = b`` for symmetric positive definite ``A`` by SOR.

    Returns ``(x, sweeps)`` once ``|Ax - b|_2 <= tol``. Convergence is only
    guaranteed for ``0 < omega < 2``; other values emit a warning.
    Raises :class:`ConvergenceError` (with the last iterate) after
    ``maxiter`` sweeps or when the iterates overflow.
    """
    A = check_symmetric(A)
    b = as_vector(b)
    n = A.shape[0]
    if len(b) != n:
        raise DomainError("dimension mismatch")
    if np.any(np.diag(A) <= 0):
        raise DomainError("diagonal must be positive")
    if not 0 < omega < 2:
        warnings.warn(f"omega = {omega} is outside (0, 2); SOR will not converge", RuntimeWarning, stacklevel=2)
    x = np.zeros(n) if x0 is None else as_vector(x0)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(maxiter + 1):
            r = np.linalg.norm(A @ x - b)
            if r <= tol:
                return x, k
            if not np.isfinite(r):
                raise ConvergenceError(f"SOR diverged after {k} sweeps", x, k)
            if k == maxiter:
                break
            x = sor_sweep(A, b, x, omega)
    raise ConvergenceError(f"SOR did not reach tol {tol} in {maxiter} sweeps", x, maxiter)


def leading_minors(S) -> list[float]:
    """Leading principal minors via elimination without pivoting.

    Stops after the first non-positive pivot, so a short list means the
    matrix is not positive definite.
    """
    U = as_matrix(S).copy()
    n = U.shape[0]
    minors = []
    det = 1.0
    for k in range(n):
        piv = U[k, k]
        det *= piv
        minors.append(det)
        if piv <= 0:
            break
        U[k + 1:, k:] -= np.outer(U[k + 1:, k] / piv, U[k, k:])
    return minors


def is_positive_definite_minors(S) -> bool:
    S = check_symmetric(S)
    minors = leading_minors(S)
    return len(minors) == S.shape[0] and all(m > 0 for m in minors)


class Signature(NamedTuple):
    r: int
    s: int
    zeros: int


def signature(S) -> Signature:
    """Inertia ``(r, s, zeros)`` by symmetric congruence diagonalisation.

    Pivots on the largest diagonal entry; when every remaining diagonal entry
    is negligible but an off-diagonal one is not, the congruence
    ``e_i -> e_i +- e_j`` first creates a usable diagonal pivot.
    """
    S = check_symmetric(S)
    n = S.shape[0]
    thr = SIGNATURE_RTOL * max(inf_norm(S), 1e-300)
    if inf_norm(S) == 0:
        return Signature(0, 0, n)
    T = S.copy()
    pos = neg = 0
    active = list(range(n))
    while active:
        sub = T[np.ix_(active, active)]
        d = np.abs(np.diag(sub))
        k = int(np.argmax(d))
        if d[k] <= thr:
            off = np.abs(sub - np.diag(np.diag(sub)))
            if off.size == 0 or off.max() <= thr:
                break
            i, j = np.unravel_index(int(np.argmax(off)), off.shape)
            gi, gj = active[i], active[j]
            sign = 1.0 if T[gi, gj] >= 0 else -1.0
            # congruence with E + sign * e_i e_j^t applied to row/column i
            T[gi, :] += sign * T[gj, :]
            T[:, gi] += sign * T[:, gj]
            k = i
        p = active[k]
        piv = T[p, p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        rest = [q for q in active if q != p]
        if rest:
            col = T[rest, p]
            T[np.ix_(rest, rest)] -= np.outer(col, col) / piv
        active = rest
    return Signature(pos, neg, n - pos - neg)


def symmetric_eigen(S, return_vectors: bool = False):
    """Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm is below
    ``1e-12 * |S|_F``. With ``return_vectors`` the orthogonal matrix of
    eigenvectors (as columns) is returned too.
    """
    A = check_symmetric(S).copy()
    n = A.shape[0]
    V = np.eye(n)
    target = JACOBI_RTOL * np.linalg.norm(A)
    for _ in range(100):
        # from the entries themselves; sum(A^2) - sum(diag^2) cancels badly
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                d = A[q, q] - A[p, p]
                if abs(apq) < 1e-150 * abs(d):
                    # theta would overflow; t ~ 1/(2 theta)
                    t = apq / d
                else:
                    theta = d / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                G = np.array([[c, s], [-s, c]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ G
    else:
        raise ConvergenceError("Jacobi sweeps did not converge")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    if return_vectors:
        return w[order], V[:, order]
    return w[order]


def spectral_norm(A) -> float:
    A = as_matrix(A)
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    if scale == 0.0:
        return 0.0
    B = A / scale
    lam = symmetric_eigen(B.T @ B)
    return scale * math.sqrt(max(float(lam[-1]), 0.0))


def _pivoted_qr(A: np.ndarray):
    """Householder QR with column pivoting; returns (Q, R, perm) with ``A[:, perm] = Q R``."""
    m, n = A.shape
    R = A.copy()
    H = np.eye(m)
    perm = np.arange(n)
    for j in range(min(m, n)):
        norms = np.sum(R[j:, j:] ** 2, axis=0)
        k = j + int(np.argmax(norms))
        if k != j:
            R[:, [j, k]] = R[:, [k, j]]
            perm[[j, k]] = perm[[k, j]]
        if j == m - 1:
            break
        v = householder_vector(R[j:, j])
        if v is None:
            continue
        y, beta = v
        R[j:, j:] -= beta * np.outer(y, y @ R[j:, j:])
        H[j:, :] -= beta * np.outer(y, y @ H[j:, :])
        R[j + 1:, j] = 0.0
    return H.T, np.triu(R), perm


def pseudoinverse(A) -> np.ndarray:
    """Moore-Penrose inverse from a complete orthogonal factorisation.

    ``A P = Q [[R11, R12], [0, 0]]`` (pivoted QR, rank ``r`` from the pivot
    threshold), then ``[R11 R12]^t = Z [[T], [0]]``, so that
    ``A = Q1 T^t Z1^t P^t`` and ``A^+ = P Z1 T^{-t} Q1^t``.
    """
    A = as_matrix(A)
    m, n = A.shape
    if A.size == 0 or inf_norm(A) == 0:
        return np.zeros((n, m))
    Q, R, perm = _pivoted_qr(A)
    thr = _rank_threshold(A)
    diag = np.abs(np.diag(R))
    r = int(np.sum(diag > thr))
    if r == 0:
        return np.zeros((n, m))
    top = R[:r, :]
    Z, T = householder_qr(top.T)
    T = T[:r, :r]
    Z1 = Z[:, :r]
    Q1 = Q[:, :r]
    # Y = T^{-t} Q1^t, solving T^t Y = Q1^t by forward substitution
    Y = np.zeros((r, m))
    Tt = T.T
    for i in range(r):
        Y[i] = (Q1.T[i] - Tt[i, :i] @ Y[:i]) / Tt[i, i]
    X = Z1 @ Y
    out = np.zeros((n, m))
    out[perm, :] = X
    return out


def spectrum_distance(A, B, norm: str = "2") -> tuple[float, float]:
    """Distance between sorted spectra and between the matrices.

    ``norm="2"`` gives ``(|lambda(A) - lambda(B)|_2, |A - B|_2)`` with the
    spectral norm on the right. That pair does NOT always satisfy lhs <= rhs:
    for ``E`` and ``E + eps*[[0, 1], [1, 0]]`` it is ``(sqrt(2) eps, eps)``.
    The two valid bounds are ``norm="fro"`` (Frobenius norm on the right,
    Hoffman-Wielandt) and ``norm="weyl"`` (largest eigenvalue shift on the
    left, spectral norm on the right).
    """
    A = check_symmetric(A)
    B = check_symmetric(B)
    if A.shape != B.shape:
        raise DomainError(f"shape mismatch {A.shape} vs {B.shape}")
    shift = symmetric_eigen(A) - symmetric_eigen(B)
    D = A - B
    if norm == "fro":
        return float(np.linalg.norm(shift)), float(np.linalg.norm(D))
    d2 = float(np.max(np.abs(symmetric_eigen(D)))) if D.size else 0.0
    if norm == "2":
        return float(np.linalg.norm(shift)), d2
    if norm == "weyl":
        return float(np.max(np.abs(shift))) if shift.size else 0.0, d2
    raise DomainError(f"unknown norm {norm!r}")


class CriticalPoint(str, enum.Enum):
    ISOLATED_MIN = "isolated_min"
    ISOLATED_MAX = "isolated_max"
    SADDLE = "saddle"
    INDETERMINATE = "indeterminate"


def classify_critical_point(H) -> CriticalPoint:
    """Second-derivative test from the Hessian at a stationary point."""
    H = check_symmetric(H)
    lam = symmetric_eigen(H)
    thr = CRITICAL_RTOL * inf_norm(H)
    has_pos = bool(np.any(lam > thr))
    has_neg = bool(np.any(lam < -thr))
    if has_pos and has_neg:
        return CriticalPoint.SADDLE
    if np.any(np.abs(lam) <= thr):
        return CriticalPoint.INDETERMINATE
    return CriticalPoint.ISOLATED_MIN if has_pos else CriticalPoint.ISOLATED_MAX


@dataclass
class FixedPointResult:
    x: np.ndarray
    iterations: int
    apriori: float
    aposteriori: float
    kappa: float
    norm: str

    def __iter__(self):
        return iter((self.x, self.iterations, self.apriori, self.aposteriori))


def fixed_point_affine(A, b, x0=None, tol: float = 1e-12, maxiter: int = 10_000) -> FixedPointResult:
    """Iterate ``x <- A x + b`` to its fixed point.

    The Lipschitz constant is the smaller of ``|A|_inf`` and ``|A|_2``, and
    distances use the matching vector norm. Reports both error bounds of the
    contraction principle at termination: ``k^n/(1-k) |x1 - x0|`` and
    ``k/(1-k) |x_n - x_{n-1}|``.
    """
    A = as_matrix(A)
    b = as_vector(b)
    n = A.shape[0]
    if A.shape != (n, n) or len(b) != n:
        raise DomainError("need square A and matching b")
    k_inf, k_2 = inf_norm(A), spectral_norm(A)
    if k_inf <= k_2:
        kappa, ord_, name = k_inf, np.inf, "inf"
    else:
        kappa, ord_, name = k_2, 2, "2"
    if kappa >= 1:
        raise ContractionError(f"|A| = {kappa} >= 1, not a contraction")
    x = np.zeros(n) if x0 is None else as_vector(x0)
    first_step = float(np.linalg.norm(A @ x + b - x, ord_))
    last_step = first_step
    for it in range(maxiter + 1):
        nxt = A @ x + b
        if float(np.linalg.norm(nxt - x, ord_)) <= tol:
            break
        if it == maxiter:
            raise ConvergenceError(f"no fixed point within {maxiter} iterations", x, it)
        last_step = float(np.linalg.norm(nxt - x, ord_))
        x = nxt
    apriori = kappa**it / (1 - kappa) * first_step
    aposteriori = (kappa / (1 - kappa) * last_step) if it else apriori
    return FixedPointResult(x, it, apriori, aposteriori, kappa, name)


def parse_matrix(text: str) -> np.ndarray:
    """One row per line, whitespace separated floats; blank lines and ``#`` comments skipped."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([float(v) for v in line.replace(",", " ").split()])
    if not rows:
        raise DomainError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise DomainError("ragged matrix rows")
    return as_matrix(rows)


def parse_vector(text: str) -> np.ndarray:
    return as_vector([float(v) for v in text.replace(",", " ").split()])
