"""Dense complex linear algebra kernels.

Complex matrices are plain ``numpy.complex128`` 2-D arrays; ``as_cmatrix``
validates shape and finiteness at API boundaries.  The SVD is a one-sided
Jacobi orthogonalization of the matrix columns themselves (never of the Gram
matrix), which keeps small singular values accurate for condition numbers up
to around 1e15.  Everything downstream (condition numbers, pseudoinverse,
least squares) is derived from that factorization.
"""

from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, NumericalError, ShapeError

EPS = float(np.finfo(np.float64).eps)

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 60


def as_cmatrix(a) -> np.ndarray:
    """Coerce to a C-contiguous complex128 matrix, rejecting non-finite entries."""
    mat = np.asarray(a)
    if mat.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {mat.shape}")
    cm = np.ascontiguousarray(mat, dtype=np.complex128)
    if cm.size and not (
        np.all(np.isfinite(cm.real)) and np.all(np.isfinite(cm.imag))
    ):
        raise DomainError("matrix entries must be finite (no NaN/Inf)")
    return cm


def matops(a, b, kind: str = "product") -> np.ndarray:
    """Dense product ``A @ B`` or adjoint product ``A^H @ B``.

    Accumulation is row-major and deterministic under the numba backend; the
    numpy backend delegates to BLAS (deterministic per process, summation
    order unspecified).
    """
    am = as_cmatrix(a)
    bm = as_cmatrix(b)
    if kind == "product":
        if am.shape[1] != bm.shape[0]:
            raise ShapeError(f"cannot multiply {am.shape} by {bm.shape}")
        return kernels.matmul(am, bm)
    if kind == "adjoint-product":
        if am.shape[0] != bm.shape[0]:
            raise ShapeError(
                f"cannot adjoint-multiply {am.shape} by {bm.shape} (row counts differ)"
            )
        return kernels.matmul_adjoint(am, bm)
    raise ValueError(f"unknown kind {kind!r}")


class SvdResult(NamedTuple):
    u: np.ndarray  # (m, r)
    sigma: np.ndarray  # (r,) descending, non-negative
    v: np.ndarray  # (n, r)


def _complete_orthonormal(u_rows: np.ndarray, start: int) -> None:
    """Fill rows ``start:`` of ``u_rows`` with deterministic orthonormal vectors."""
    m = u_rows.shape[1]
    cand = 0
    for i in range(start, u_rows.shape[0]):
        while True:
            w = np.zeros(m, dtype=np.complex128)
            w[cand % m] = 1.0
            cand += 1
            if i:
                w -= (u_rows[:i].conj() @ w) @ u_rows[:i]
            nrm = np.linalg.norm(w)
            if nrm > 0.5:
                u_rows[i] = w / nrm
                break


def svd(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> SvdResult:
    """Thin SVD by one-sided Jacobi rotations on the columns of ``a``.

    Converged when every off-diagonal column correlation is at most ``tol``;
    raises :class:`NumericalError` (carrying the worst remaining correlation)
    if that does not happen within ``max_sweeps`` sweeps.
    """
    mat = as_cmatrix(a)
    if mat.shape[0] < 1 or mat.shape[1] < 1:
        raise ShapeError(f"cannot decompose an empty matrix of shape {mat.shape}")
    transposed = mat.shape[0] < mat.shape[1]
    if transposed:
        mat = mat.conj().T
    m, n = mat.shape

    cols_t = np.ascontiguousarray(mat.T)  # row p holds column p
    v_t = np.eye(n, dtype=np.complex128)
    pairs = kernels.round_robin_pairs(n)
    _, residual, converged = kernels.jacobi_sweeps(
        cols_t, v_t, pairs, float(tol), int(max_sweeps)
    )
    if not converged:
        raise NumericalError(
            f"one-sided Jacobi SVD did not converge in {max_sweeps} sweeps "
            f"(worst column correlation {residual:.3e})",
            residual=float(residual),
        )

    norms = np.sqrt(np.einsum("ij,ij->i", cols_t.real, cols_t.real)
                    + np.einsum("ij,ij->i", cols_t.imag, cols_t.imag))
    order = np.argsort(-norms, kind="stable")
    sigma = norms[order]
    u_rows = np.empty_like(cols_t)
    n_pos = int(np.count_nonzero(sigma > 0.0))
    for i in range(n_pos):
        u_rows[i] = cols_t[order[i]] / sigma[i]
    if n_pos < n:
        _complete_orthonormal(u_rows, n_pos)
    u = np.ascontiguousarray(u_rows.T)
    v = np.ascontiguousarray(v_t[order].T)
    if transposed:
        u, v = v, u
    return SvdResult(u=u, sigma=sigma, v=v)


def condition_number(a) -> float:
    """Spectral condition number sigma_max / sigma_min over min(m, n) values.

    Returns ``inf`` when sigma_min falls below sigma_max * 1e-300.
    """
    mat = as_cmatrix(a)
    if not np.any(mat):
        raise DomainError("condition number of the zero matrix is undefined")
    sigma = svd(mat).sigma
    smax, smin = float(sigma[0]), float(sigma[-1])
    if smin < smax * 1e-300:
        return float("inf")
    return smax / smin


def default_rcond(shape: tuple[int, int]) -> float:
    return max(shape) * EPS


def pseudoinverse(a, rcond: float | None = None) -> np.ndarray:
    """Truncated-SVD Moore-Penrose pseudoinverse (n x m).

    Singular values below ``rcond * sigma_max`` are dropped; ``rcond``
    defaults to ``max(m, n) * machine_epsilon``.
    """
    mat = as_cmatrix(a)
    if rcond is None:
        rcond = default_rcond(mat.shape)
    if rcond < 0:
        raise DomainError(f"rcond must be non-negative, got {rcond}")
    res = svd(mat)
    return _pinv_from_svd(res, rcond)


def _pinv_from_svd(res: SvdResult, rcond: float) -> np.ndarray:
    cutoff = rcond * (res.sigma[0] if res.sigma.size else 0.0)
    keep = res.sigma > cutoff
    n, m = res.v.shape[0], res.u.shape[0]
    if not np.any(keep):
        return np.zeros((n, m), dtype=np.complex128)
    scaled = np.ascontiguousarray(res.v[:, keep] / res.sigma[keep])
    return kernels.matmul(scaled, np.ascontiguousarray(res.u[:, keep].conj().T))


def lstsq(a, b, rcond: float | None = None) -> np.ndarray:
    """Minimal-norm least-squares solution ``x = A^+ b``."""
    am = as_cmatrix(a)
    bv = np.asarray(b)
    vector = bv.ndim == 1
    bm = as_cmatrix(bv[:, None] if vector else bv)
    if am.shape[0] != bm.shape[0]:
        raise ShapeError(
            f"lstsq row mismatch: A is {am.shape}, b is {bv.shape}"
        )
    x = kernels.matmul(pseudoinverse(am, rcond), bm)
    return x[:, 0] if vector else x
