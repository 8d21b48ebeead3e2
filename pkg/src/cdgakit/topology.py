"""Betti-number constructions that need no cochain model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import TopologyInputError
from .linalg import identity, matsub, rank

BettiVector = tuple[int, ...]


def betti_vector(b: Sequence[int]) -> BettiVector:
    out = tuple(int(x) for x in b)
    if not out:
        raise TopologyInputError("a Betti vector needs at least b_0")
    if any(x < 0 for x in out):
        raise TopologyInputError(f"Betti numbers must be nonnegative: {out}")
    return out


@dataclass(frozen=True)
class AutomorphismAction:
    """Matrices of an automorphism on H^k, keyed by degree."""

    matrices: Mapping[int, tuple[tuple[Fraction, ...], ...]]

    @classmethod
    def from_lists(cls, mats: Mapping[int, Sequence[Sequence]] | Sequence[Sequence[Sequence]]) -> "AutomorphismAction":
        items = mats.items() if isinstance(mats, Mapping) else enumerate(mats)
        return cls({k: tuple(tuple(Fraction(x) for x in row) for row in m) for k, m in items})

    @classmethod
    def identity(cls, b: Sequence[int]) -> "AutomorphismAction":
        return cls({k: tuple(map(tuple, identity(bk))) for k, bk in enumerate(b)})

    def get(self, k: int, size: int) -> list[list[Fraction]]:
        m = self.matrices.get(k)
        if m is None:
            if size == 0:
                return []
            raise TopologyInputError(f"no action matrix supplied for degree {k}")
        if len(m) != size or any(len(row) != size for row in m):
            raise TopologyInputError(f"action on H^{k} must be {size}x{size}")
        return [list(row) for row in m]


def kunneth_betti(b1: Sequence[int], b2: Sequence[int]) -> BettiVector:
    b1, b2 = betti_vector(b1), betti_vector(b2)
    out = [0] * (len(b1) + len(b2) - 1)
    for i, x in enumerate(b1):
        for j, y in enumerate(b2):
            out[i + j] += x * y
    return tuple(out)


def blowup_betti(bX: Sequence[int], bY: Sequence[int], codim: int) -> BettiVector:
    """Betti numbers of the blow-up of X along Y, Y of real codimension ``codim``.

    The cohomology of the blow-up is that of X plus one copy of H(Y) shifted
    by 2i for each 1 <= i <= codim/2 - 1.
    """
    bX, bY = betti_vector(bX), betti_vector(bY)
    if codim < 2 or codim % 2:
        raise TopologyInputError(f"codimension must be even and at least 2, got {codim}")
    dim_x = len(bX) - 1
    dim_y = len(bY) - 1
    if dim_x % 2 or dim_y % 2:
        raise TopologyInputError("both X and Y must be even-dimensional")
    if dim_y + codim != dim_x:
        raise TopologyInputError(f"dim Y + codim = {dim_y + codim} but dim X = {dim_x}")
    k = codim // 2
    out = list(bX)
    for m in range(len(out)):
        for i in range(1, k):
            j = m - 2 * i
            if 0 <= j < len(bY):
                out[m] += bY[j]
    return tuple(out)


def mapping_torus_betti(b: Sequence[int], act: AutomorphismAction | Mapping | Sequence) -> BettiVector:
    """b_k = dim ker(A_k - 1) + dim coker(A_(k-1) - 1).

    The output has one more entry than ``b`` (the total space has one more
    dimension).
    """
    b = betti_vector(b)
    if not isinstance(act, AutomorphismAction):
        act = AutomorphismAction.from_lists(act)
    ker = []
    coker = []
    for k, bk in enumerate(b):
        a = act.get(k, bk)
        if bk == 0:
            ker.append(0)
            coker.append(0)
            continue
        m = matsub(a, identity(bk))
        rk = rank(m)
        ker.append(bk - rk)
        coker.append(bk - rk)
    out = [ker[k] + (coker[k - 1] if k else 0) for k in range(len(b))]
    out.append(coker[-1])
    return tuple(out)


def euler_characteristic(b: Sequence[int]) -> int:
    return sum((-1) ** k * x for k, x in enumerate(b))
