"""Exact linear algebra over the rationals.

Two tools:

* ``Echelon`` -- a sparse, fraction-free semi-echelon basis over the
  integers.  Rows are ``dict[col, int]`` with content removed; each row has a
  distinct pivot, its lowest nonzero column.  Rows can carry a *tag*, a
  second sparse vector transformed by the same row operations, which is how
  kernels and preimages are tracked while eliminating.
* small dense helpers on ``Fraction`` matrices (rank, solve, nullspace) for
  the handful of systems whose size is bounded by the number of generators.

Pivots are always the lowest available column, so all bases are
deterministic.
"""

from __future__ import annotations

from bisect import insort
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

IntVec = dict[int, int]


def integerize(vec: Mapping[int, Fraction | int]) -> tuple[IntVec, int]:
    """Return ``(w, s)`` with ``w = s * vec`` integral and ``s >= 1``."""
    s = 1
    for c in vec.values():
        if isinstance(c, Fraction):
            s = lcm(s, c.denominator)
    if s == 1:
        return {k: int(c) for k, c in vec.items() if c}, 1
    return {k: int(c * s) for k, c in vec.items() if c}, s


def _content(*vecs: IntVec) -> int:
    g = 0
    for v in vecs:
        for c in v.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def _combine(b: int, v: IntVec, a: int, r: IntVec) -> IntVec:
    """b*v - a*r, dropping zeros."""
    out = {k: b * c for k, c in v.items()} if b != 1 else dict(v)
    for k, c in r.items():
        t = out.get(k, 0) - a * c
        if t:
            out[k] = t
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally built semi-echelon basis with optional tags."""

    def __init__(self):
        self.rows: dict[int, IntVec] = {}
        self.tags: dict[int, IntVec] = {}
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: IntVec, tag: IntVec | None = None) -> tuple[IntVec, int, IntVec]:
        """Fully reduce ``vec`` against the basis.

        Returns ``(residual, scale, acc)`` where ``residual`` vanishes at every
        pivot and ``scale * vec - residual`` equals the combination of rows
        whose tags combine to ``scale * tag - acc`` (``acc`` starts as ``tag``
        and is transformed alongside ``vec``).
        """
        v = dict(vec)
        t = dict(tag) if tag is not None else {}
        scale = 1
        if not v:
            return v, scale, t
        lo = min(v)
        for p in self.pivots:
            if p < lo:
                continue
            a = v.get(p)
            if not a:
                continue
            row = self.rows[p]
            b = row[p]
            g = gcd(a, b)
            a //= g
            b //= g
            if b < 0:
                a, b = -a, -b
            v = _combine(b, v, a, row)
            if tag is not None:
                rt = self.tags.get(p)
                t = _combine(b, t, a, rt) if rt else ({k: b * c for k, c in t.items()} if b != 1 else t)
            scale *= b
            if not v:
                break
        return v, scale, t

    def insert(self, vec: IntVec, tag: IntVec | None = None) -> IntVec | None:
        """Reduce and add ``vec``; return the reduced tag if ``vec`` was dependent.

        For a dependent vector with a tag, the returned tag is a normalised
        relation (a kernel vector when tags record preimages).
        """
        v, _, t = self.reduce(vec, tag if tag is not None else None)
        if not v:
            if tag is None:
                return None
            g = _content(t)
            return {k: c // g for k, c in t.items()} if g > 1 else t
        g = _content(v, t)
        if g > 1:
            v = {k: c // g for k, c in v.items()}
            t = {k: c // g for k, c in t.items()}
        p = min(v)
        if v[p] < 0:
            v = {k: -c for k, c in v.items()}
            t = {k: -c for k, c in t.items()}
        self.rows[p] = v
        if tag is not None:
            self.tags[p] = t
        insort(self.pivots, p)
        return None

    def contains(self, vec: IntVec) -> bool:
        return not self.reduce(vec)[0]

    def back_substitute(self) -> None:
        """Clear every pivot column from all other rows (reduced echelon form)."""
        for p in reversed(self.pivots):
            row = self.rows[p]
            b = row[p]
            for q in self.pivots:
                if q >= p:
                    break
                other = self.rows[q]
                a = other.get(p)
                if not a:
                    continue
                g = gcd(a, b)
                a2, b2 = a // g, b // g
                if b2 < 0:
                    a2, b2 = -a2, -b2
                new = _combine(b2, other, a2, row)
                tq = self.tags.get(q)
                tp = self.tags.get(p)
                newt = _combine(b2, tq or {}, a2, tp or {}) if (tq or tp) else None
                c = _content(new, newt or {})
                if c > 1:
                    new = {k: x // c for k, x in new.items()}
                    if newt is not None:
                        newt = {k: x // c for k, x in newt.items()}
                self.rows[q] = new
                if newt is not None:
                    self.tags[q] = newt

    def fraction_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        """Rows normalised to pivot coefficient 1, in pivot order."""
        out = []
        for p in self.pivots:
            row = self.rows[p]
            b = row[p]
            out.append((p, {k: Fraction(c, b) for k, c in row.items()}))
        return out


# ------------------------------------------------------------- dense helpers


def _to_fraction_matrix(a: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def rref(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a dense matrix and its pivot columns."""
    m = _to_fraction_matrix(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    if not a or not len(a[0]):
        return 0
    return len(rref(a)[1])


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : a x = 0}, one vector per free column."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    m, pivots = rref(a)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -m[r][f]
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of a x = b (free variables zero), or None if inconsistent."""
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    if not aug:
        return []
    m, pivots = rref(aug)
    n = len(aug[0]) - 1
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = m[r][n]
    return x


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matsub(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) - Fraction(y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def span_contains(basis: Iterable[Mapping[int, Fraction]], vec: Mapping[int, Fraction]) -> bool:
    e = Echelon()
    for b in basis:
        e.insert(integerize(b)[0])
    return e.contains(integerize(vec)[0])


def kernel(columns: Sequence[Mapping[int, Fraction | int]]) -> list[IntVec]:
    """Integer basis of {x : sum_i x_i columns[i] = 0}, one vector per dependency.

    Columns are sparse rational vectors; the result is in source coordinates.
    """
    s = 1
    for col in columns:
        for c in col.values():
            if isinstance(c, Fraction):
                s = lcm(s, c.denominator)
    e = Echelon()
    out: list[IntVec] = []
    for i, col in enumerate(columns):
        v = {k: int(c * s) for k, c in col.items() if c}
        rel = e.insert(v, {i: 1})
        if rel is not None:
            out.append(rel)
    return out
