"""Cohomology of degree-one-generated CDGAs and of their d-stable subcomplexes.

Per degree k the ring keeps

* an echelon basis of the coboundaries B^k, each row tagged with a preimage
  under d (this gives ``primitive`` for free), and
* representative cocycles spanning a complement of B^k in Z^k, in reduced
  echelon form and ordered by leading monomial.

A closed form is reduced by clearing the coboundary pivots; what remains is
a combination of representatives whose coefficients are read off at their
pivots.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from .cdga import CDGA, AlgebraMap, differential
from .errors import DimensionMismatch, NonCommutingError, NotClosedError
from .exterior import Form, wedge
from .linalg import Echelon, IntVec, integerize, rank

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    coords: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if other.degree != self.degree:
            raise ValueError("cannot add classes of different degree")
        return CohomologyClass(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "CohomologyClass":
        c = Fraction(c)
        return CohomologyClass(self.degree, tuple(c * a for a in self.coords))

    def __str__(self) -> str:
        return f"H^{self.degree}[" + ", ".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class InducedMap:
    """Per-degree matrices; ``matrices[k][i][j]`` is coordinate i of the image of basis class j."""

    matrices: Mapping[int, tuple[tuple[Fraction, ...], ...]]

    def __getitem__(self, k: int):
        return self.matrices[k]


class CohomologyRing:
    """Cohomology of ``cdga`` or of a subcomplex given by per-degree spanning vectors.

    ``subspaces[k]``, when given, lists vectors (``{lex index: coefficient}``)
    spanning the degree-k part of a subcomplex; the caller guarantees that d
    maps it into the degree k+1 part.
    """

    def __init__(self, cdga: CDGA, subspaces: Mapping[int, Sequence[Mapping[int, Fraction]]] | None = None):
        self.cdga = cdga.validated() if subspaces is None else cdga
        self.n = cdga.n
        self._sub = subspaces is not None
        n = self.n
        self._src: dict[int, list[IntVec] | None] = {}
        for k in range(n + 1):
            if subspaces is None:
                self._src[k] = None
            else:
                e = Echelon()
                for v in subspaces.get(k, ()):
                    e.insert(integerize(v)[0])
                e.back_substitute()
                self._src[k] = [e.rows[p] for p in e.pivots]
        self._image: dict[int, Echelon] = {}  # image of d inside degree k, tagged by source coords in k-1
        self._cocycles: dict[int, list[IntVec]] = {}
        for k in range(n + 1):
            self._eliminate(k)
        self._image.setdefault(0, Echelon())
        self._reps: dict[int, Echelon] = {}
        self._rep_forms: dict[int, list[Form]] = {}
        for k in range(n + 1):
            h = Echelon()
            img = self._image.get(k) or Echelon()
            for z in self._cocycles[k]:
                r, _, _ = img.reduce(z)
                if r:
                    h.insert(r)
            h.back_substitute()
            self._reps[k] = h
            self._rep_forms[k] = [Form.from_vector(n, k, row) for _, row in h.fraction_rows()]
        self.betti: tuple[int, ...] = tuple(len(self._rep_forms[k]) for k in range(n + 1))
        self._units: dict[tuple[int, int], CohomologyClass] = {}

    # construction --------------------------------------------------------
    def dim_cochains(self, k: int) -> int:
        src = self._src[k]
        return comb(self.n, k) if src is None else len(src)

    def _source_vector(self, k: int, i: int) -> IntVec:
        src = self._src[k]
        return {i: 1} if src is None else src[i]

    def _eliminate(self, k: int) -> None:
        cols = self.cdga.d_columns(k) if k < self.n else None
        img = Echelon()
        cocycles: list[IntVec] = []
        for i in range(self.dim_cochains(k)):
            s = self._source_vector(k, i)
            if cols is None:
                image: IntVec = {}
            else:
                image = {}
                for j, a in s.items():
                    for r, v in cols[j].items():
                        t = image.get(r, 0) + a * v
                        if t:
                            image[r] = t
                        else:
                            image.pop(r, None)
            rel = img.insert(image, {i: 1})
            if rel is not None:
                cocycles.append(self._to_ambient(k, rel))
        self._cocycles[k] = cocycles
        if k + 1 <= self.n:
            self._image[k + 1] = img

    def _to_ambient(self, k: int, coords: IntVec) -> IntVec:
        src = self._src[k]
        if src is None:
            return dict(coords)
        out: IntVec = {}
        for i, a in coords.items():
            for j, v in src[i].items():
                t = out.get(j, 0) + a * v
                if t:
                    out[j] = t
                else:
                    out.pop(j, None)
        return out

    # queries -------------------------------------------------------------
    def basis(self, k: int) -> list[Form]:
        """Representative cocycles of H^k, ordered by leading monomial."""
        if not 0 <= k <= self.n:
            return []
        return list(self._rep_forms[k])

    def representative(self, cls: CohomologyClass) -> Form:
        out = Form.zero(self.n)
        for c, f in zip(cls.coords, self._rep_forms[cls.degree]):
            if c:
                out = out + f.scale(c)
        return out

    def zero(self, k: int) -> CohomologyClass:
        return CohomologyClass(k, (_ZERO,) * (self.betti[k] if 0 <= k <= self.n else 0))

    def unit(self, k: int, i: int) -> CohomologyClass:
        key = (k, i)
        u = self._units.get(key)
        if u is None:
            if not 0 <= i < self.betti[k]:
                raise IndexError(f"H^{k} has dimension {self.betti[k]}")
            u = CohomologyClass(k, tuple(_ONE if j == i else _ZERO for j in range(self.betti[k])))
            self._units[key] = u
        return u

    def classes(self, k: int) -> list[CohomologyClass]:
        if not 0 <= k <= self.n:
            return []
        return [self.unit(k, i) for i in range(self.betti[k])]

    def _degree_of(self, z: Form, degree: int | None) -> int:
        if z.degree is not None:
            if degree is not None and degree != z.degree:
                raise ValueError(f"form has degree {z.degree}, expected {degree}")
            return z.degree
        if z.is_zero():
            if degree is None:
                raise ValueError("the zero form needs an explicit degree")
            return degree
        raise ValueError(f"form is not homogeneous (degrees {z.degrees})")

    def is_closed(self, z: Form) -> bool:
        return differential(self.cdga, z).is_zero()

    def reduce(self, z: Form, degree: int | None = None, check: bool = True) -> CohomologyClass:
        """Coordinates of the class of a closed form against ``basis(k)``.

        ``check=False`` skips the closedness test (for callers that know z is
        closed, e.g. products of cocycles).
        """
        if z.n != self.n:
            raise DimensionMismatch(f"form on {z.n} generators, ring has {self.n}")
        k = self._degree_of(z, degree)
        if not 0 <= k <= self.n:
            return CohomologyClass(k, ())
        if check:
            dz = differential(self.cdga, z)
            if dz:
                raise NotClosedError(f"form is not closed: d({z}) = {dz}", witness=dz)
        if z.is_zero():
            return self.zero(k)
        coords = self._coords(k, z)
        if coords is None:
            raise NotClosedError(f"form {z} does not lie in this complex", witness=z)
        return CohomologyClass(k, coords)

    def _coords(self, k: int, z: Form) -> tuple[Fraction, ...] | None:
        v, s = integerize(z.to_vector(k))
        img = self._image.get(k) or Echelon()
        r, scale, _ = img.reduce(v)
        h = self._reps[k]
        coords = []
        rest = dict(r)
        denom = s * scale
        for p in h.pivots:
            row = h.rows[p]
            a = rest.get(p, 0)
            if not a:
                coords.append(_ZERO)
                continue
            x = Fraction(a, row[p])
            coords.append(x / denom)
            for j, c in row.items():
                t = rest.get(j, 0) - x * c
                if t:
                    rest[j] = t
                else:
                    rest.pop(j, None)
        if rest:
            return None
        return tuple(coords)

    def is_exact(self, z: Form, degree: int | None = None) -> bool:
        return self.reduce(z, degree).is_zero()

    def primitive(self, z: Form, degree: int | None = None) -> Form | None:
        """Some beta with d(beta) = z, or None when z is not exact."""
        if z.n != self.n:
            raise DimensionMismatch(f"form on {z.n} generators, ring has {self.n}")
        if z.is_zero():
            return Form.zero(self.n)
        k = self._degree_of(z, degree)
        dz = differential(self.cdga, z)
        if dz:
            raise NotClosedError(f"form is not closed: d({z}) = {dz}", witness=dz)
        if k == 0:
            return None
        v, s = integerize(z.to_vector(k))
        img = self._image.get(k) or Echelon()
        r, scale, t = img.reduce(v, {})
        if r:
            return None
        amb = self._to_ambient(k - 1, t)
        denom = -(scale * s * self.cdga.scale)
        return Form.from_vector(self.n, k - 1, {j: Fraction(c, denom) for j, c in amb.items()})

    def cup(self, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
        k = a.degree + b.degree
        if k > self.n:
            return CohomologyClass(k, ())
        return self.reduce(wedge(self.representative(a), self.representative(b)), k, check=False)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def coboundary_dim(self, k: int) -> int:
        img = self._image.get(k)
        return img.rank if img is not None else 0


@lru_cache(maxsize=128)
def cohomology(c: CDGA) -> CohomologyRing:
    return CohomologyRing(c)


def reduce(r: CohomologyRing, z: Form, degree: int | None = None) -> CohomologyClass:
    return r.reduce(z, degree)


def primitive(c: CDGA | CohomologyRing, z: Form, degree: int | None = None) -> Form | None:
    ring = c if isinstance(c, CohomologyRing) else cohomology(c)
    return ring.primitive(z, degree)


def cup(r: CohomologyRing, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return r.cup(a, b)


def euler_characteristic(r: CohomologyRing) -> int:
    return r.euler_characteristic()


def induced_map(r: CohomologyRing, endo: AlgebraMap | Mapping[int, Form]) -> InducedMap:
    """Matrices of the map induced on H^k by a cochain algebra endomorphism."""
    if not isinstance(endo, AlgebraMap):
        endo = AlgebraMap(r.n, endo)
    if endo.n != r.n:
        raise DimensionMismatch("endomorphism and ring have different numbers of generators")
    bad = endo.commutation_defect(r.cdga)
    if bad is not None:
        i, diff = bad
        raise NonCommutingError(f"map does not commute with d on e{i}: defect {diff}", generator=i, witness=diff)
    mats = {}
    for k in range(r.n + 1):
        cols = [r.reduce(endo(f), k).coords for f in r.basis(k)]
        b = r.betti[k]
        mats[k] = tuple(tuple(cols[j][i] for j in range(b)) for i in range(b))
    return InducedMap(mats)


def matrix_rank(m: Sequence[Sequence]) -> int:
    return rank([list(row) for row in m]) if m and len(m[0]) else 0
