"""Shared strategies and small independent oracles for the test suite."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from cdgakit.cdga import CDGA
from cdgakit.exterior import Form, Vector, monomial_basis
from cdgakit.linalg import kernel

small_rationals = st.builds(
    Fraction, st.integers(min_value=-4, max_value=4), st.integers(min_value=1, max_value=3)
)
nonzero_ints = st.integers(min_value=-3, max_value=3).filter(bool)


@st.composite
def forms(draw, n: int, degree: int | None = None, max_terms: int = 5) -> Form:
    if degree is None:
        degree = draw(st.integers(min_value=0, max_value=n))
    masks, _ = monomial_basis(n, degree)
    chosen = draw(st.lists(st.sampled_from(masks), max_size=max_terms, unique=True)) if masks else []
    return Form(n, {m: draw(small_rationals) for m in chosen})


@st.composite
def mixed_forms(draw, n: int) -> Form:
    out = Form.zero(n)
    for k in draw(st.lists(st.integers(min_value=0, max_value=n), max_size=3)):
        out = out + draw(forms(n, k, max_terms=3))
    return out


@st.composite
def vectors(draw, n: int) -> Vector:
    return Vector(tuple(draw(st.lists(small_rationals, min_size=n, max_size=n))))


# ------------------------------------------------------------ oracles


def permutation_sign(seq) -> int:
    """Sign of sorting ``seq`` (0 if it repeats an entry), by counting inversions."""
    if len(set(seq)) < len(seq):
        return 0
    inv = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def brute_bracket(consts, n, x, y):
    """[x, y] for coordinate vectors x, y from constants {(i, j): {k: c}} with i < j."""
    out = [Fraction(0)] * n
    for (i, j), row in consts.items():
        a = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
        if a:
            for k, c in row.items():
                out[k - 1] += a * c
    return out


def brute_jacobi(consts, n) -> bool:
    basis = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    for a, b, c in itertools.combinations(range(n), 3):
        x, y, z = basis[a], basis[b], basis[c]
        t1 = brute_bracket(consts, n, x, brute_bracket(consts, n, y, z))
        t2 = brute_bracket(consts, n, y, brute_bracket(consts, n, z, x))
        t3 = brute_bracket(consts, n, z, brute_bracket(consts, n, x, y))
        if any(p + q + r for p, q, r in zip(t1, t2, t3)):
            return False
    return True


def ce_forms(consts, n) -> CDGA:
    """The CE differential written out directly, without any validation."""
    diffs = {}
    for (i, j), row in consts.items():
        for k, c in row.items():
            diffs[k] = diffs.get(k, Form.zero(n)) - Form.monomial(n, i, j, coef=c)
    return CDGA(n, diffs)


# ------------------------------------------------------------ model helpers


def closed_basis(c: CDGA, k: int) -> list[Form]:
    """A basis of the closed k-forms of ``c``."""
    n = c.n
    masks, _ = monomial_basis(n, k)
    if k == n:
        return [Form(n, {m: 1}) for m in masks]
    cols = c.d_columns(k)
    return [Form.from_vector(n, k, v) for v in kernel(cols)]


@st.composite
def closed_forms(draw, c: CDGA, k: int, basis: list[Form] | None = None) -> Form:
    basis = closed_basis(c, k) if basis is None else basis
    out = Form.zero(c.n)
    for b in basis:
        a = draw(st.integers(min_value=-2, max_value=2))
        if a:
            out = out + b.scale(a)
    return out


@st.composite
def two_step_nilpotent(draw, max_dim: int = 6) -> CDGA:
    """Random two-step nilpotent model: closed e^1..e^m, de^k in the span of e^{ij}, i<j<=m."""
    n = draw(st.integers(min_value=2, max_value=max_dim))
    m = draw(st.integers(min_value=max(1, n // 2), max_value=n))
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    diffs = {}
    for k in range(m + 1, n + 1):
        terms = draw(st.lists(st.sampled_from(pairs), max_size=3, unique=True)) if pairs else []
        f = Form.zero(n)
        for i, j in terms:
            f = f + Form.monomial(n, i, j, coef=draw(nonzero_ints))
        diffs[k] = f
    return CDGA(n, diffs)


def conjugate(c: CDGA, P) -> CDGA:
    """The model transported by the basis change e^i -> sum_j P[i][j] e^j (P invertible)."""
    from cdgakit.cdga import AlgebraMap, differential
    from cdgakit.linalg import solve

    n = c.n
    phi = AlgebraMap(n, {i + 1: Form(n, {1 << j: P[i][j] for j in range(n) if P[i][j]}) for i in range(n)})
    inv_rows = []
    for i in range(n):
        # coordinates of e^i in the new basis
        cols = [[Fraction(P[r][s]) for r in range(n)] for s in range(n)]
        inv_rows.append(solve(cols, [Fraction(int(s == i)) for s in range(n)]))
    diffs = {}
    for i in range(n):
        pre = Form(n, {1 << j: x for j, x in enumerate(inv_rows[i]) if x})
        diffs[i + 1] = phi(differential(c, pre))
    return CDGA(n, diffs)


@st.composite
def unitriangular(draw, n: int):
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and draw(st.booleans()):
                P[i][j] = draw(st.integers(min_value=-1, max_value=1)) if i < j else 0
    perm = draw(st.permutations(range(n)))
    return [P[p] for p in perm]
