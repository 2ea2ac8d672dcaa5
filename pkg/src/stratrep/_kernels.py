"""Hot loops for brute-force family scans.

Every scan iterates over all 2^B positive families of B candidate
k-subsets, with each item reduced to a B-bit column mask (bit j set iff
the j-th candidate subset is contained in the item).  A family F engages
an item iff F & colmask != 0.

Two interchangeable backends: compiled (numba) and vectorized (numpy).
Select with STRATREP_BACKEND=numba|numpy; default is numba when
importable, else numpy.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - environment without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return deco


def backend() -> str:
    choice = os.environ.get("STRATREP_BACKEND", "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not HAVE_NUMBA:
            raise RuntimeError("STRATREP_BACKEND=numba but numba is not importable")
        return choice
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numba backend (scalar loops; SWAR popcount since bit_count is unsupported)


@njit(cache=True)
def _popcount64(v):
    v = v - ((v >> 1) & 0x5555555555555555)
    v = (v & 0x3333333333333333) + ((v >> 2) & 0x3333333333333333)
    v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (v * 0x0101010101010101) >> 56


@njit(cache=True)
def _min_error_scan_nb(cols, pos, weights, nfam):
    best_f = np.int64(0)
    best_err = np.int64(-1)
    for F in range(nfam):
        err = np.int64(0)
        for i in range(cols.shape[0]):
            engaged = (F & cols[i]) != 0
            if engaged != (pos[i] != 0):
                err += weights[i]
        if best_err < 0 or err < best_err:
            best_err = err
            best_f = F
    return best_f, best_err


@njit(cache=True)
def _table_match_nb(cols, pos, nfam):
    for F in range(nfam):
        ok = True
        for i in range(cols.shape[0]):
            if ((F & cols[i]) != 0) != (pos[i] != 0):
                ok = False
                break
        if ok:
            return np.int64(F)
    return np.int64(-1)


@njit(cache=True)
def _bridge_scan_nb(cols, gammas, a_plus, nfam):
    """First family where the containment test and the weighted-sum sign
    disagree on some item, or -1.  Weighted sum uses weights a_plus on
    family members and -1/2 elsewhere, doubled to stay integral:
    2*sum = 2*a_plus*pc - (gamma - pc) with pc = popcount(F & col)."""
    for F in range(nfam):
        for i in range(cols.shape[0]):
            pc = _popcount64(np.int64(F) & cols[i])
            logical = pc > 0
            weighted = 2 * a_plus * pc > gammas[i] - pc
            if logical != weighted:
                return np.int64(F)
    return np.int64(-1)


# ---------------------------------------------------------------------------
# numpy backend (chunked vectorization over families)

_CHUNK = 1 << 14


def _family_chunks(nfam):
    start = 0
    while start < nfam:
        stop = min(start + _CHUNK, nfam)
        yield np.arange(start, stop, dtype=np.int64)
        start = stop


def _min_error_scan_np(cols, pos, weights, nfam):
    best_f, best_err = 0, None
    posb = pos.astype(bool)
    for fams in _family_chunks(nfam):
        engaged = (fams[:, None] & cols[None, :]) != 0
        errs = ((engaged != posb[None, :]) * weights[None, :]).sum(axis=1)
        j = int(np.argmin(errs))
        if best_err is None or errs[j] < best_err:
            best_err = int(errs[j])
            best_f = int(fams[j])
    return best_f, best_err


def _table_match_np(cols, pos, nfam):
    posb = pos.astype(bool)
    for fams in _family_chunks(nfam):
        engaged = (fams[:, None] & cols[None, :]) != 0
        hits = np.nonzero((engaged == posb[None, :]).all(axis=1))[0]
        if hits.size:
            return int(fams[hits[0]])
    return -1


def _popcount_arr(v):
    v = v - ((v >> 1) & 0x5555555555555555)
    v = (v & 0x3333333333333333) + ((v >> 2) & 0x3333333333333333)
    v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (v * 0x0101010101010101) >> 56


def _bridge_scan_np(cols, gammas, a_plus, nfam):
    for fams in _family_chunks(nfam):
        pc = _popcount_arr(fams[:, None] & cols[None, :])
        logical = pc > 0
        weighted = 2 * a_plus * pc > gammas[None, :] - pc
        bad = np.nonzero((logical != weighted).any(axis=1))[0]
        if bad.size:
            return int(fams[bad[0]])
    return -1


# ---------------------------------------------------------------------------
# dispatch


def min_error_scan(cols, pos, weights, nfam) -> tuple[int, int]:
    """(family, weighted error) minimizing the engagement/label mismatch,
    first minimum in ascending family order."""
    cols = np.asarray(cols, dtype=np.int64)
    pos = np.asarray(pos, dtype=np.uint8)
    weights = np.asarray(weights, dtype=np.int64)
    if backend() == "numba":
        f, e = _min_error_scan_nb(cols, pos, weights, np.int64(nfam))
        return int(f), int(e)
    return _min_error_scan_np(cols, pos, weights, int(nfam))


def table_match(cols, pos, nfam) -> int:
    """The first family reproducing the target engagement pattern, or -1."""
    cols = np.asarray(cols, dtype=np.int64)
    pos = np.asarray(pos, dtype=np.uint8)
    if backend() == "numba":
        return int(_table_match_nb(cols, pos, np.int64(nfam)))
    return _table_match_np(cols, pos, int(nfam))


def bridge_scan(cols, gammas, a_plus, nfam) -> int:
    """First family where containment and weighted-sum sign disagree, or -1."""
    cols = np.asarray(cols, dtype=np.int64)
    gammas = np.asarray(gammas, dtype=np.int64)
    if backend() == "numba":
        return int(_bridge_scan_nb(cols, gammas, np.int64(a_plus), np.int64(nfam)))
    return _bridge_scan_np(cols, gammas, int(a_plus), int(nfam))
