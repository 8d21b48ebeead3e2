"""Bitmask kernels for exterior monomials.

A monomial e^{i1}...e^{ik} (i1 < ... < ik) is an integer with bit i-1 set
for every index i.  Reordering the concatenation of two monomials into
increasing order costs the parity of the number of inversions, so every
sign in the package comes from ``wedge_sign``.

Two batched kernels build the tables that the linear algebra consumes:

``pair_products(a, b)``
    all products a[i] * b[j] (result mask and sign, 0 when they overlap)
``leibniz_terms(src, gen_bit, term_mask)``
    the nonzero terms of d(src[s]) contributed by relation term t, where
    relation t says that d(e^{gen_bit+1}) contains the 2-monomial term_mask

Each kernel exists as a numba ``@njit`` function and as a vectorised numpy
function with identical output (ordering included).  The numba path is used
when numba imports and ``CDGAKIT_NUMBA`` is not set to ``0``/``false``/``off``.
Masks are int64, so the batched kernels require at most 62 generators; the
scalar Python helpers work for any number of generators.
"""

from __future__ import annotations

import os

import numpy as np

MAX_KERNEL_BITS = 62

_flag = os.environ.get("CDGAKIT_NUMBA", "1").strip().lower()
try:
    import numba  # noqa: F401
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and _flag not in ("0", "false", "off", "no")


# ---------------------------------------------------------------- scalar path


def popcount(x: int) -> int:
    return x.bit_count() if hasattr(x, "bit_count") else bin(x).count("1")


def wedge_sign(a: int, b: int) -> int:
    """Sign of reordering monomial ``a`` followed by ``b``; 0 on overlap."""
    if a & b:
        return 0
    inversions = 0
    while b:
        low = b & -b
        # generators of a sitting above this generator of b
        inversions += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if inversions & 1 else 1


def below_sign(mask: int, bit: int) -> int:
    """(-1)^(number of generators of ``mask`` below ``bit``)."""
    return -1 if popcount(mask & ((1 << bit) - 1)) & 1 else 1


# ----------------------------------------------------------------- numpy path


def _popcount_np(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x).astype(np.int64)


def _wedge_sign_np(a: np.ndarray, b: np.ndarray, nbits: int) -> np.ndarray:
    inv = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for j in range(nbits):
        has_j = (b >> j) & 1
        inv += has_j * _popcount_np(a >> (j + 1))
    sign = 1 - 2 * (inv & 1)
    return np.where((a & b) != 0, 0, sign).astype(np.int8)


def pair_products_numpy(a: np.ndarray, b: np.ndarray):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    nbits = int(max(int(a.max(initial=0)), int(b.max(initial=0)))).bit_length()
    A = a[:, None]
    B = b[None, :]
    signs = _wedge_sign_np(A, B, nbits)
    masks = np.where(signs != 0, A | B, 0).astype(np.int64)
    return masks, signs


def leibniz_terms_numpy(src: np.ndarray, gen_bit: np.ndarray, term_mask: np.ndarray):
    src = np.asarray(src, dtype=np.int64)
    gen_bit = np.asarray(gen_bit, dtype=np.int64)
    term_mask = np.asarray(term_mask, dtype=np.int64)
    nbits = int(max(int(src.max(initial=0)), int(term_mask.max(initial=0)))).bit_length()
    S = src[:, None]
    G = gen_bit[None, :]
    T = term_mask[None, :]
    gbit = np.left_shift(np.int64(1), G)
    rest = S ^ gbit
    ok = ((S & gbit) != 0) & ((rest & T) == 0)
    s_idx, t_idx = np.nonzero(ok)
    r = rest[s_idx, t_idx]
    t = term_mask[t_idx]
    g = gen_bit[t_idx]
    s = src[s_idx]
    pos = _popcount_np(s & ((np.left_shift(np.int64(1), g)) - 1))
    sign = (1 - 2 * (pos & 1)) * _wedge_sign_np(t, r, nbits)
    return (
        s_idx.astype(np.int64),
        t_idx.astype(np.int64),
        (r | t).astype(np.int64),
        sign.astype(np.int8),
    )


# ----------------------------------------------------------------- numba path

if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _popcount_nb(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @njit(cache=True)
    def _wedge_sign_nb(a, b):
        if a & b:
            return 0
        inv = 0
        while b:
            low = b & -b
            inv += _popcount_nb(a & ~((low << 1) - 1))
            b ^= low
        return -1 if inv & 1 else 1

    @njit(cache=True)
    def _pair_products_nb(a, b):
        na = a.shape[0]
        nb_ = b.shape[0]
        masks = np.zeros((na, nb_), dtype=np.int64)
        signs = np.zeros((na, nb_), dtype=np.int8)
        for i in range(na):
            for j in range(nb_):
                s = _wedge_sign_nb(a[i], b[j])
                if s != 0:
                    masks[i, j] = a[i] | b[j]
                    signs[i, j] = s
        return masks, signs

    @njit(cache=True)
    def _leibniz_terms_nb(src, gen_bit, term_mask):
        ns = src.shape[0]
        nt = term_mask.shape[0]
        cap = ns * nt
        s_out = np.empty(cap, dtype=np.int64)
        t_out = np.empty(cap, dtype=np.int64)
        m_out = np.empty(cap, dtype=np.int64)
        sg_out = np.empty(cap, dtype=np.int8)
        k = 0
        for s in range(ns):
            m = src[s]
            for t in range(nt):
                gb = np.int64(1) << gen_bit[t]
                if (m & gb) == 0:
                    continue
                rest = m ^ gb
                tm = term_mask[t]
                if rest & tm:
                    continue
                pos = _popcount_nb(m & (gb - 1))
                sg = _wedge_sign_nb(tm, rest)
                if pos & 1:
                    sg = -sg
                s_out[k] = s
                t_out[k] = t
                m_out[k] = rest | tm
                sg_out[k] = sg
                k += 1
        return s_out[:k], t_out[:k], m_out[:k], sg_out[:k]

    def pair_products_numba(a, b):
        return _pair_products_nb(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def leibniz_terms_numba(src, gen_bit, term_mask):
        return _leibniz_terms_nb(
            np.asarray(src, dtype=np.int64),
            np.asarray(gen_bit, dtype=np.int64),
            np.asarray(term_mask, dtype=np.int64),
        )

else:  # pragma: no cover
    pair_products_numba = pair_products_numpy
    leibniz_terms_numba = leibniz_terms_numpy


if USE_NUMBA:
    pair_products = pair_products_numba
    leibniz_terms = leibniz_terms_numba
else:
    pair_products = pair_products_numpy
    leibniz_terms = leibniz_terms_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
