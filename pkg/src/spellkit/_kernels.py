"""Hot inner loops for edit-distance computation.

Two implementations live here: numba ``@njit`` kernels and a pure
NumPy/Python fallback with identical semantics.  Selection happens once at
import time via the ``SPELLKIT_NUMBA`` environment variable: ``0`` forces
the fallback, anything else (or unset) uses numba when it is importable.
``benchmarks/bench_distance.py`` compares the two paths.

All kernels operate on int32 codepoint arrays; string encoding happens in
:mod:`spellkit.editops`.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("SPELLKIT_NUMBA", "1") != "0"

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        USE_NUMBA = False

INF = 1 << 30


def _osa_py(a: np.ndarray, b: np.ndarray) -> int:
    """Optimal string alignment distance over codepoint arrays.

    Insertion, deletion, substitution and adjacent transposition all cost 1;
    no substring is edited twice.
    """
    la = a.shape[0]
    lb = b.shape[0]
    if la == 0:
        return lb
    if lb == 0:
        return la
    # three-row rolling DP; row2 is needed for the transposition lookback
    prev2 = [0] * (lb + 1)
    prev = list(range(lb + 1))
    cur = [0] * (lb + 1)
    for i in range(1, la + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ai == b[j - 1] else 1
            best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            if prev[j - 1] + cost < best:
                best = prev[j - 1] + cost
            if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == b[j - 1]:
                if prev2[j - 2] + 1 < best:
                    best = prev2[j - 2] + 1
            cur[j] = best
        prev2, prev, cur = prev, cur, prev2
    return prev[lb]


def _osa_bounded_py(a: np.ndarray, b: np.ndarray, max_dist: int) -> int:
    """Like ``_osa_py`` but returns ``max_dist + 1`` once the distance is
    provably above ``max_dist`` (row-minimum cutoff)."""
    la = a.shape[0]
    lb = b.shape[0]
    if abs(la - lb) > max_dist:
        return max_dist + 1
    if la == 0:
        return lb if lb <= max_dist else max_dist + 1
    if lb == 0:
        return la if la <= max_dist else max_dist + 1
    prev2 = [0] * (lb + 1)
    prev = list(range(lb + 1))
    cur = [0] * (lb + 1)
    for i in range(1, la + 1):
        cur[0] = i
        ai = a[i - 1]
        row_min = i
        for j in range(1, lb + 1):
            cost = 0 if ai == b[j - 1] else 1
            best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            if prev[j - 1] + cost < best:
                best = prev[j - 1] + cost
            if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == b[j - 1]:
                if prev2[j - 2] + 1 < best:
                    best = prev2[j - 2] + 1
            cur[j] = best
            if best < row_min:
                row_min = best
        if row_min > max_dist:
            return max_dist + 1
        prev2, prev, cur = prev, cur, prev2
    d = prev[lb]
    return d if d <= max_dist else max_dist + 1


def _osa_many_py(
    query: np.ndarray,
    flat: np.ndarray,
    starts: np.ndarray,
    lengths: np.ndarray,
    max_dist: int,
    out: np.ndarray,
) -> None:
    """Bounded distance from ``query`` to each packed word in ``flat``."""
    for k in range(starts.shape[0]):
        s = starts[k]
        w = flat[s : s + lengths[k]]
        out[k] = _osa_bounded_py(query, w, max_dist)


if USE_NUMBA:

    @njit(cache=True)
    def _osa_jit(a, b):  # pragma: no cover - exercised via dispatch
        la = a.shape[0]
        lb = b.shape[0]
        if la == 0:
            return lb
        if lb == 0:
            return la
        prev2 = np.zeros(lb + 1, dtype=np.int64)
        prev = np.empty(lb + 1, dtype=np.int64)
        cur = np.zeros(lb + 1, dtype=np.int64)
        for j in range(lb + 1):
            prev[j] = j
        for i in range(1, la + 1):
            cur[0] = i
            ai = a[i - 1]
            for j in range(1, lb + 1):
                cost = 0 if ai == b[j - 1] else 1
                best = prev[j] + 1
                if cur[j - 1] + 1 < best:
                    best = cur[j - 1] + 1
                if prev[j - 1] + cost < best:
                    best = prev[j - 1] + cost
                if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == b[j - 1]:
                    if prev2[j - 2] + 1 < best:
                        best = prev2[j - 2] + 1
                cur[j] = best
            tmp = prev2
            prev2 = prev
            prev = cur
            cur = tmp
        return prev[lb]

    @njit(cache=True)
    def _osa_bounded_jit(a, b, max_dist):  # pragma: no cover
        la = a.shape[0]
        lb = b.shape[0]
        if la - lb > max_dist or lb - la > max_dist:
            return max_dist + 1
        if la == 0:
            return lb if lb <= max_dist else max_dist + 1
        if lb == 0:
            return la if la <= max_dist else max_dist + 1
        prev2 = np.zeros(lb + 1, dtype=np.int64)
        prev = np.empty(lb + 1, dtype=np.int64)
        cur = np.zeros(lb + 1, dtype=np.int64)
        for j in range(lb + 1):
            prev[j] = j
        for i in range(1, la + 1):
            cur[0] = i
            ai = a[i - 1]
            row_min = i
            for j in range(1, lb + 1):
                cost = 0 if ai == b[j - 1] else 1
                best = prev[j] + 1
                if cur[j - 1] + 1 < best:
                    best = cur[j - 1] + 1
                if prev[j - 1] + cost < best:
                    best = prev[j - 1] + cost
                if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == b[j - 1]:
                    if prev2[j - 2] + 1 < best:
                        best = prev2[j - 2] + 1
                cur[j] = best
                if best < row_min:
                    row_min = best
            if row_min > max_dist:
                return max_dist + 1
            tmp = prev2
            prev2 = prev
            prev = cur
            cur = tmp
        d = prev[lb]
        return d if d <= max_dist else max_dist + 1

    @njit(cache=True)
    def _osa_many_jit(query, flat, starts, lengths, max_dist, out):  # pragma: no cover
        for k in range(starts.shape[0]):
            s = starts[k]
            out[k] = _osa_bounded_jit(query, flat[s : s + lengths[k]], max_dist)

    osa_codes = _osa_jit
    osa_codes_bounded = _osa_bounded_jit
    osa_codes_many = _osa_many_jit
else:
    osa_codes = _osa_py
    osa_codes_bounded = _osa_bounded_py
    osa_codes_many = _osa_many_py


def backend_name() -> str:
    return "numba" if USE_NUMBA else "python"


def encode(word: str) -> np.ndarray:
    """Codepoint array for a word (logical character order)."""
    return np.array([ord(c) for c in word], dtype=np.int32) if word else _EMPTY


_EMPTY = np.empty(0, dtype=np.int32)
