"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

Each kernel is written once, in numba-compatible numpy, and compiled a
second time with ``@njit``. The compiled variants are selected at import
unless the environment variable ``HURWITZ_PURE_NUMPY`` is set to a truthy
value (or numba is unavailable), in which case the interpreted versions
run. ``benchmarks/bench_kernels.py`` times the two backends against each
other.

Matrix arguments must be square, C-contiguous ``complex128`` arrays of the
same dimension.

Two recursions are implemented. The raw one fills cells with the Hurwitz
products themselves,

    S[m, k] = A @ S[m-1, k] + B @ S[m-1, k-1],    S[0, 0] = identity,

whose entries grow like binomial(m, k) and therefore overflow float64 near
m ~ 1030 at central k. The normalized one divides each cell by its word
count, T[m, k] = S[m, k] / binomial(m, k), which turns the recursion into
the convex combination

    T[m, k] = (m-k)/m * A @ T[m-1, k] + k/m * B @ T[m-1, k-1],

bounded by 1 in norm for norm-1 inputs at any m; trace(T)/n is exactly the
normalized trace quotient.
"""

import os

import numpy as np


def _raw_table(A, B, m_max, k_max):
    """Full memo table of Hurwitz products, shape (m_max+1, k_max+1, n, n).

    Cell (m, k) holds S_{m,k}(A, B) for k <= min(m, k_max); cells with
    k > m stay zero.
    """
    n = A.shape[0]
    out = np.zeros((m_max + 1, k_max + 1, n, n), dtype=np.complex128)
    for i in range(n):
        out[0, 0, i, i] = 1.0 + 0.0j
    for m in range(1, m_max + 1):
        top = min(m, k_max)
        for k in range(top + 1):
            S = np.zeros((n, n), dtype=np.complex128)
            if k < m:
                S = S + A @ out[m - 1, k]
            if k >= 1:
                S = S + B @ out[m - 1, k - 1]
            out[m, k] = S
    return out


def _raw_cell(A, B, m, k):
    """Single Hurwitz product S_{m,k}(A, B), keeping only two rows live."""
    n = A.shape[0]
    rows = np.zeros((2, k + 1, n, n), dtype=np.complex128)
    for i in range(n):
        rows[0, 0, i, i] = 1.0 + 0.0j
    for mm in range(1, m + 1):
        cur = mm % 2
        prev = 1 - cur
        top = min(mm, k)
        for kk in range(top + 1):
            S = np.zeros((n, n), dtype=np.complex128)
            if kk < mm:
                S = S + A @ rows[prev, kk]
            if kk >= 1:
                S = S + B @ rows[prev, kk - 1]
            rows[cur, kk] = S
    return rows[m % 2, k].copy()


def _quotient_window(A, B, m_lo, m_hi, k_max):
    """Traces of normalized cells T_{m,k} over a window of m values.

    Returns a complex array of shape (m_hi - m_lo + 1, k_max + 1) whose
    (m - m_lo, k) entry is trace(T_{m,k}(A, B)); entries with k > m are 0.
    The normalized trace quotient is the returned value divided by n.
    """
    n = A.shape[0]
    rows = np.zeros((2, k_max + 1, n, n), dtype=np.complex128)
    out = np.zeros((m_hi - m_lo + 1, k_max + 1), dtype=np.complex128)
    for i in range(n):
        rows[0, 0, i, i] = 1.0 + 0.0j
    if m_lo == 0:
        out[0, 0] = n
    for m in range(1, m_hi + 1):
        cur = m % 2
        prev = 1 - cur
        top = min(m, k_max)
        for k in range(top + 1):
            S = np.zeros((n, n), dtype=np.complex128)
            if k < m:
                S = S + ((m - k) / m) * (A @ rows[prev, k])
            if k >= 1:
                S = S + (k / m) * (B @ rows[prev, k - 1])
            rows[cur, k] = S
        if m >= m_lo:
            for k in range(top + 1):
                t = 0.0 + 0.0j
                for i in range(n):
                    t += rows[cur, k, i, i]
                out[m - m_lo, k] = t
    return out


def _word_sum_trace(masks, A, B, m):
    """Sum of traces of the word products encoded in ``masks``.

    Each mask packs one word of length m, most significant bit first,
    with bit 1 meaning letter B. Products are accumulated left to right,
    one word at a time, with no sharing between words.
    """
    n = A.shape[0]
    total = 0.0 + 0.0j
    one = np.uint64(1)
    for idx in range(masks.shape[0]):
        v = masks[idx]
        if (v >> np.uint64(m - 1)) & one:
            P = B.copy()
        else:
            P = A.copy()
        for j in range(1, m):
            if (v >> np.uint64(m - 1 - j)) & one:
                P = P @ B
            else:
                P = P @ A
        for i in range(n):
            total += P[i, i]
    return total


raw_table_numpy = _raw_table
raw_cell_numpy = _raw_cell
quotient_window_numpy = _quotient_window
word_sum_trace_numpy = _word_sum_trace

raw_table_njit = None
raw_cell_njit = None
quotient_window_njit = None
word_sum_trace_njit = None

_FORCE_NUMPY = os.environ.get("HURWITZ_PURE_NUMPY", "").strip() not in ("", "0")

if not _FORCE_NUMPY:
    try:
        from numba import njit
    except ImportError:
        BACKEND = "numpy"
    else:
        raw_table_njit = njit(cache=True)(_raw_table)
        raw_cell_njit = njit(cache=True)(_raw_cell)
        quotient_window_njit = njit(cache=True)(_quotient_window)
        word_sum_trace_njit = njit(cache=True)(_word_sum_trace)
        BACKEND = "numba"
else:
    BACKEND = "numpy"

if BACKEND == "numba":
    raw_table = raw_table_njit
    raw_cell = raw_cell_njit
    quotient_window = quotient_window_njit
    word_sum_trace = word_sum_trace_njit
else:
    raw_table = raw_table_numpy
    raw_cell = raw_cell_numpy
    quotient_window = quotient_window_numpy
    word_sum_trace = word_sum_trace_numpy
