"""Hot numeric kernels, in two interchangeable flavors.

Each public name below is bound at import time to either a numba-compiled
loop implementation (``*_loops``) or a vectorized pure-numpy fallback
(``*_numpy``), depending on :mod:`lrnn_memory._backend`.  The raw variants
stay importable so the backend benchmark can time them side by side.

Conventions:

* complex matrices are C-contiguous ``complex128``;
* the Jacobi kernel works on the *transposed* factor (rows = columns of the
  original matrix) so inner products run over contiguous memory;
* integer kernels (xoshiro, FNV) are exact and produce identical output on
  both backends.
"""

import functools

import numpy as np

from ._backend import NUMBA_ENABLED

_MASK64 = 0xFFFFFFFFFFFFFFFF
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


# --------------------------------------------------------------------------
# xoshiro256++ bulk generation


def _xoshiro_fill_loops(state, out):
    s0 = state[0]
    s1 = state[1]
    s2 = state[2]
    s3 = state[3]
    c17 = np.uint64(17)
    c19 = np.uint64(19)
    c23 = np.uint64(23)
    c41 = np.uint64(41)
    c45 = np.uint64(45)
    for i in range(out.shape[0]):
        t0 = s0 + s3
        out[i] = ((t0 << c23) | (t0 >> c41)) + s0
        t = s1 << c17
        s2 = s2 ^ s0
        s3 = s3 ^ s1
        s1 = s1 ^ s2
        s0 = s0 ^ s3
        s2 = s2 ^ t
        s3 = (s3 << c45) | (s3 >> c19)
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3


def _xoshiro_fill_numpy(state, out):
    # Exact-integer reference path; the state advance is inherently serial.
    m = _MASK64
    s0, s1, s2, s3 = (int(x) for x in state)
    for i in range(out.shape[0]):
        t0 = (s0 + s3) & m
        rot = (((t0 << 23) & m) | (t0 >> 41))
        out[i] = (rot + s0) & m
        t = (s1 << 17) & m
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = (((s3 << 45) & m) | (s3 >> 19))
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3


# --------------------------------------------------------------------------
# FNV-1a digests


def _fnv1a64_loops(data):
    h = np.uint64(_FNV_OFFSET)
    prime = np.uint64(_FNV_PRIME)
    for i in range(data.shape[0]):
        h = (h ^ np.uint64(data[i])) * prime
    return h


def _fnv1a64_numpy(data):
    m = _MASK64
    h = _FNV_OFFSET
    for b in data.tobytes():
        h = ((h ^ b) * _FNV_PRIME) & m
    return np.uint64(h)


# --------------------------------------------------------------------------
# dense complex products (row-major accumulation)


def _matmul_loops(a, b):
    m, kk = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.complex128)
    for i in range(m):
        for k in range(kk):
            aik = a[i, k]
            for j in range(n):
                out[i, j] += aik * b[k, j]
    return out


def _matmul_numpy(a, b):
    return a @ b


def _matmul_adjoint_loops(a, b):
    m, ca = a.shape
    cb = b.shape[1]
    out = np.zeros((ca, cb), dtype=np.complex128)
    for i in range(ca):
        for k in range(m):
            aki = np.conj(a[k, i])
            for j in range(cb):
                out[i, j] += aki * b[k, j]
    return out


def _matmul_adjoint_numpy(a, b):
    return a.conj().T @ b


# --------------------------------------------------------------------------
# one-sided Jacobi sweeps


@functools.lru_cache(maxsize=None)
def round_robin_pairs(n: int) -> np.ndarray:
    """Round-robin (circle method) pairings of ``n`` columns.

    Returns an int64 array of shape (rounds, n_pairs, 2); byes are (-1, -1).
    Pairs within one round are disjoint, so rotations commute and the
    ordering is identical for both backends.
    """
    players = list(range(n))
    if n % 2:
        players.append(-1)
    nn = len(players)
    half = nn // 2
    rounds = np.empty((max(nn - 1, 1), half, 2), dtype=np.int64)
    arr = players[:]
    for r in range(max(nn - 1, 1)):
        for k in range(half):
            a, b = arr[k], arr[nn - 1 - k]
            if a < 0 or b < 0:
                rounds[r, k] = (-1, -1)
            else:
                rounds[r, k] = (min(a, b), max(a, b))
        arr = [arr[0], arr[-1]] + arr[1:-1]
    return rounds


def _jacobi_sweeps_loops(cols_t, v_t, pairs, tol, max_sweeps):
    # cols_t: (n, m) rows are the columns being orthogonalized
    n, m = cols_t.shape
    n_rounds, n_pairs = pairs.shape[0], pairs.shape[1]
    last = 0.0
    for sweep in range(max_sweeps):
        max_corr = 0.0
        for r in range(n_rounds):
            for k in range(n_pairs):
                p = pairs[r, k, 0]
                q = pairs[r, k, 1]
                if p < 0:
                    continue
                app = 0.0
                aqq = 0.0
                apq = 0.0 + 0.0j
                for i in range(m):
                    cp = cols_t[p, i]
                    cq = cols_t[q, i]
                    app += cp.real * cp.real + cp.imag * cp.imag
                    aqq += cq.real * cq.real + cq.imag * cq.imag
                    apq += np.conj(cp) * cq
                if app == 0.0 or aqq == 0.0:
                    continue
                g = abs(apq)
                corr = g / np.sqrt(app * aqq)
                if corr > max_corr:
                    max_corr = corr
                if corr <= tol:
                    continue
                tau = (aqq - app) / (2.0 * g)
                sign = 1.0 if tau >= 0.0 else -1.0
                at = abs(tau)
                if at > 1e150:  # avoid tau*tau overflow; t -> 1/(2 tau)
                    t = sign / (2.0 * at)
                else:
                    t = sign / (at + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                pc = np.conj(apq / g)
                for i in range(m):
                    cp = cols_t[p, i]
                    cq = pc * cols_t[q, i]
                    cols_t[p, i] = c * cp - s * cq
                    cols_t[q, i] = s * cp + c * cq
                for i in range(v_t.shape[1]):
                    vp = v_t[p, i]
                    vq = pc * v_t[q, i]
                    v_t[p, i] = c * vp - s * vq
                    v_t[q, i] = s * vp + c * vq
        last = max_corr
        if max_corr <= tol:
            return sweep + 1, last, True
    return max_sweeps, last, False


def _jacobi_sweeps_numpy(cols_t, v_t, pairs, tol, max_sweeps):
    last = 0.0
    for sweep in range(max_sweeps):
        max_corr = 0.0
        for r in range(pairs.shape[0]):
            pq = pairs[r]
            pq = pq[pq[:, 0] >= 0]
            if pq.shape[0] == 0:
                continue
            pp, qq = pq[:, 0], pq[:, 1]
            cp = cols_t[pp]
            cq = cols_t[qq]
            app = np.einsum("km,km->k", cp.real, cp.real) + np.einsum(
                "km,km->k", cp.imag, cp.imag
            )
            aqq = np.einsum("km,km->k", cq.real, cq.real) + np.einsum(
                "km,km->k", cq.imag, cq.imag
            )
            apq = np.einsum("km,km->k", cp.conj(), cq)
            g = np.abs(apq)
            valid = (app > 0.0) & (aqq > 0.0)
            corr = np.zeros_like(g)
            corr[valid] = g[valid] / np.sqrt(app[valid] * aqq[valid])
            if corr.size:
                max_corr = max(max_corr, float(corr.max()))
            rot = corr > tol
            if not rot.any():
                continue
            pp, qq = pp[rot], qq[rot]
            g_r, apq_r = g[rot], apq[rot]
            tau = (aqq[rot] - app[rot]) / (2.0 * g_r)
            sign = np.where(tau >= 0.0, 1.0, -1.0)
            at = np.abs(tau)
            big = at > 1e150
            at_c = np.where(big, 0.0, at)
            denom = np.where(big, 2.0 * at, at_c + np.sqrt(1.0 + at_c * at_c))
            t = sign / denom
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            pc = (apq_r / g_r).conj()
            cpv = cols_t[pp]
            cqv = pc[:, None] * cols_t[qq]
            cols_t[pp] = c[:, None] * cpv - s[:, None] * cqv
            cols_t[qq] = s[:, None] * cpv + c[:, None] * cqv
            vpv = v_t[pp]
            vqv = pc[:, None] * v_t[qq]
            v_t[pp] = c[:, None] * vpv - s[:, None] * vqv
            v_t[qq] = s[:, None] * vpv + c[:, None] * vqv
        last = max_corr
        if max_corr <= tol:
            return sweep + 1, last, True
    return max_sweeps, last, False


# --------------------------------------------------------------------------
# diagonal recurrence scans


def _scan_fwd_loops(lam, w, out):
    nb, ln, n = w.shape
    for b in range(nb):
        for j in range(n):
            out[b, 0, j] = w[b, 0, j]
        for k in range(1, ln):
            for j in range(n):
                out[b, k, j] = lam[j] * out[b, k - 1, j] + w[b, k, j]


def _scan_fwd_numpy(lam, w, out):
    out[:, 0, :] = w[:, 0, :]
    for k in range(1, w.shape[1]):
        out[:, k, :] = lam * out[:, k - 1, :] + w[:, k, :]


def _scan_adj_loops(lam_conj, g, out):
    nb, ln, n = g.shape
    for b in range(nb):
        for j in range(n):
            out[b, ln - 1, j] = g[b, ln - 1, j]
        for k in range(ln - 2, -1, -1):
            for j in range(n):
                out[b, k, j] = lam_conj[j] * out[b, k + 1, j] + g[b, k, j]


def _scan_adj_numpy(lam_conj, g, out):
    ln = g.shape[1]
    out[:, ln - 1, :] = g[:, ln - 1, :]
    for k in range(ln - 2, -1, -1):
        out[:, k, :] = lam_conj * out[:, k + 1, :] + g[:, k, :]


def _scan_last_loops(lam, u, out):
    # all-ones input row: x_k = lam * x_{k-1} + u_k, returns x_L only
    nb, ln = u.shape
    n = lam.shape[0]
    for b in range(nb):
        for j in range(n):
            out[b, j] = 0.0 + 0.0j
        for k in range(ln):
            uk = u[b, k]
            for j in range(n):
                out[b, j] = lam[j] * out[b, j] + uk
    return out


def _scan_last_numpy(lam, u, out):
    out[:] = 0.0
    for k in range(u.shape[1]):
        out *= lam
        out += u[:, k, None]
    return out


# --------------------------------------------------------------------------
# Blelloch prefix scan (fixed power-of-two tree)


def _prefix_scan_loops(lam, w):
    ln, n = w.shape
    lp = 1
    while lp < ln:
        lp <<= 1
    acc_a = np.empty((lp, n), dtype=np.complex128)
    acc_w = np.zeros((lp, n), dtype=np.complex128)
    for k in range(lp):
        for j in range(n):
            acc_a[k, j] = lam[j] if k < ln else 1.0 + 0.0j
            if k < ln:
                acc_w[k, j] = w[k, j]
    h = 1
    while h < lp:
        for i in range(2 * h - 1, lp, 2 * h):
            l = i - h
            for j in range(n):
                acc_w[i, j] = acc_a[i, j] * acc_w[l, j] + acc_w[i, j]
                acc_a[i, j] = acc_a[l, j] * acc_a[i, j]
        h <<= 1
    for j in range(n):
        acc_a[lp - 1, j] = 1.0 + 0.0j
        acc_w[lp - 1, j] = 0.0 + 0.0j
    h = lp >> 1
    while h >= 1:
        for i in range(2 * h - 1, lp, 2 * h):
            l = i - h
            for j in range(n):
                ta = acc_a[l, j]
                tw = acc_w[l, j]
                acc_a[l, j] = acc_a[i, j]
                acc_w[l, j] = acc_w[i, j]
                acc_w[i, j] = ta * acc_w[i, j] + tw
                acc_a[i, j] = acc_a[i, j] * ta
        h >>= 1
    out = np.empty((ln, n), dtype=np.complex128)
    for k in range(ln):
        for j in range(n):
            out[k, j] = lam[j] * acc_w[k, j] + w[k, j]
    return out


def _prefix_scan_numpy(lam, w):
    ln, n = w.shape
    lp = 1 << max(ln - 1, 0).bit_length() if ln > 1 else 1
    acc_a = np.ones((lp, n), dtype=np.complex128)
    acc_a[:ln] = lam
    acc_w = np.zeros((lp, n), dtype=np.complex128)
    acc_w[:ln] = w
    h = 1
    while h < lp:
        i = np.arange(2 * h - 1, lp, 2 * h)
        l = i - h
        acc_w[i] = acc_a[i] * acc_w[l] + acc_w[i]
        acc_a[i] = acc_a[l] * acc_a[i]
        h <<= 1
    acc_a[lp - 1] = 1.0
    acc_w[lp - 1] = 0.0
    h = lp >> 1
    while h >= 1:
        i = np.arange(2 * h - 1, lp, 2 * h)
        l = i - h
        ta = acc_a[l].copy()
        tw = acc_w[l].copy()
        acc_a[l] = acc_a[i]
        acc_w[l] = acc_w[i]
        acc_w[i] = ta * acc_w[i] + tw
        acc_a[i] = acc_a[i] * ta
        h >>= 1
    return lam * acc_w[:ln] + w


# --------------------------------------------------------------------------
# classical RK4 for the named ODE systems (zero-order-hold input)

SYSTEM_IDS = {"pt": 0, "lv": 1, "lorenz": 2}
BLOWUP_BOUND = 1e6


def _named_rhs(system_id, z, v, p, dz):
    if system_id == 0:  # protein transduction, p = (k1, k2, k3, k4, V, Km)
        mm = p[4] * z[4] / (p[5] + z[4])
        dz[0] = -p[0] * z[0] - p[1] * z[0] * z[2] + p[2] * z[3] + v
        dz[1] = p[0] * z[0]
        dz[2] = -p[1] * z[0] * z[2] + p[2] * z[3] + mm
        dz[3] = p[1] * z[0] * z[2] - (p[2] + p[3]) * z[3]
        dz[4] = p[3] * z[3] - mm
    elif system_id == 1:  # Lotka-Volterra, p = (a, b, c, d)
        dz[0] = z[0] * (p[0] - p[1] * z[1])
        dz[1] = -z[1] * (p[2] - p[3] * z[0]) + v
    else:  # Lorenz, p = (sigma, r, b)
        dz[0] = p[0] * (z[1] - z[0])
        dz[1] = (p[1] - z[2]) * z[0] - z[1] + v
        dz[2] = z[1] * z[0] - p[2] * z[2]


def _rk4_named_loops(system_id, params, z0, delta, u):
    ln = u.shape[0]
    d = z0.shape[0]
    states = np.zeros((ln, d))
    z = z0.copy()
    zt = np.empty(d)
    k1 = np.empty(d)
    k2 = np.empty(d)
    k3 = np.empty(d)
    k4 = np.empty(d)
    for k in range(ln):
        v = u[k]
        _named_rhs(system_id, z, v, params, k1)
        for i in range(d):
            zt[i] = z[i] + 0.5 * delta * k1[i]
        _named_rhs(system_id, zt, v, params, k2)
        for i in range(d):
            zt[i] = z[i] + 0.5 * delta * k2[i]
        _named_rhs(system_id, zt, v, params, k3)
        for i in range(d):
            zt[i] = z[i] + delta * k3[i]
        _named_rhs(system_id, zt, v, params, k4)
        for i in range(d):
            z[i] = z[i] + (delta / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        for i in range(d):
            if not (np.abs(z[i]) <= BLOWUP_BOUND):
                return states, False, k + 1
        for i in range(d):
            states[k, i] = z[i]
    return states, True, 0


def _rk4_named_numpy(system_id, params, z0, delta, u):
    ln = u.shape[0]
    d = z0.shape[0]
    states = np.zeros((ln, d))
    z = z0.copy()
    k1 = np.empty(d)
    k2 = np.empty(d)
    k3 = np.empty(d)
    k4 = np.empty(d)
    for k in range(ln):
        v = u[k]
        _named_rhs(system_id, z, v, params, k1)
        _named_rhs(system_id, z + 0.5 * delta * k1, v, params, k2)
        _named_rhs(system_id, z + 0.5 * delta * k2, v, params, k3)
        _named_rhs(system_id, z + delta * k3, v, params, k4)
        z = z + (delta / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.abs(z) <= BLOWUP_BOUND):
            return states, False, k + 1
        states[k] = z
    return states, True, 0


# --------------------------------------------------------------------------
# backend binding

if NUMBA_ENABLED:
    from numba import njit

    _jit = njit(cache=True)
    xoshiro_fill = _jit(_xoshiro_fill_loops)
    fnv1a64_array = _jit(_fnv1a64_loops)
    matmul = _jit(_matmul_loops)
    matmul_adjoint = _jit(_matmul_adjoint_loops)
    jacobi_sweeps = _jit(_jacobi_sweeps_loops)
    scan_fwd = _jit(_scan_fwd_loops)
    scan_adj = _jit(_scan_adj_loops)
    scan_last = _jit(_scan_last_loops)
    prefix_scan = _jit(_prefix_scan_loops)
    _named_rhs = _jit(_named_rhs)
    rk4_named = _jit(_rk4_named_loops)
else:
    xoshiro_fill = _xoshiro_fill_numpy
    fnv1a64_array = _fnv1a64_numpy
    matmul = _matmul_numpy
    matmul_adjoint = _matmul_adjoint_numpy
    jacobi_sweeps = _jacobi_sweeps_numpy
    scan_fwd = _scan_fwd_numpy
    scan_adj = _scan_adj_numpy
    scan_last = _scan_last_numpy
    prefix_scan = _prefix_scan_numpy
    rk4_named = _rk4_named_numpy
