"""Triple Massey products, obstruction scans and the nilmanifold criterion.

For classes a_i of degree p_i with a1 a2 = 0 = a2 a3, pick representatives
alpha_i and primitives d(sigma) = alpha1 ^ alpha2, d(tau) = alpha2 ^ alpha3.
The product is the coset of

    alpha1 ^ tau + (-1)^(p1+1) sigma ^ alpha3

modulo a1 H^(p2+p3-1) + H^(p1+p2-1) a3.  A product is nonvanishing when the
coset misses zero, which is decided by span membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .cdga import CDGA, is_nilpotent
from .cohomology import CohomologyClass, CohomologyRing
from .errors import NotNilpotentError, PreconditionError
from .exterior import Form, wedge
from .linalg import Echelon, integerize

Verdict = Literal["vanishes", "nonvanishing"]


@dataclass(frozen=True)
class MasseyValue:
    classes: tuple[CohomologyClass, CohomologyClass, CohomologyClass]
    value: CohomologyClass
    indeterminacy: tuple[CohomologyClass, ...]
    sigma: Form
    tau: Form
    labels: tuple[str, str, str] = ("a1", "a2", "a3")

    @property
    def verdict(self) -> Verdict:
        return "vanishes" if _in_span(self.indeterminacy, self.value) else "nonvanishing"

    @property
    def nonvanishing(self) -> bool:
        return self.verdict == "nonvanishing"

    @property
    def indeterminacy_dim(self) -> int:
        return len(self.indeterminacy)

    def line(self, r: CohomologyRing | None = None) -> str:
        cls = str(r.representative(self.value)) if r is not None else str(self.value)
        a, b, c = self.labels
        tag = "NONVANISHING" if self.nonvanishing else "vanishes"
        return f"<{a},{b},{c}> -> [{cls}], indeterminacy dim {self.indeterminacy_dim}, {tag}"


def _echelon(classes) -> Echelon:
    e = Echelon()
    for c in classes:
        e.insert(integerize(dict(enumerate(c.coords)))[0])
    return e


def _in_span(basis: tuple[CohomologyClass, ...], v: CohomologyClass) -> bool:
    if v.is_zero():
        return True
    return _echelon(basis).contains(integerize(dict(enumerate(v.coords)))[0])


def _basis_of(gens, k: int, r: CohomologyRing) -> tuple[CohomologyClass, ...]:
    e = _echelon(gens)
    e.back_substitute()
    size = r.betti[k] if k <= r.n else 0
    return tuple(
        CohomologyClass(k, tuple(row.get(i, Fraction(0)) for i in range(size))) for _, row in e.fraction_rows()
    )


def indeterminacy(r: CohomologyRing, a1: CohomologyClass, a3: CohomologyClass, p2: int) -> tuple[CohomologyClass, ...]:
    """A basis of a1 H^(p2+p3-1) + H^(p1+p2-1) a3."""
    p1, p3 = a1.degree, a3.degree
    gens = [r.cup(a1, h) for h in r.classes(p2 + p3 - 1)]
    gens += [r.cup(h, a3) for h in r.classes(p1 + p2 - 1)]
    return _basis_of([g for g in gens if not g.is_zero()], p1 + p2 + p3 - 1, r)


def _massey_forms(alpha1: Form, alpha3: Form, sigma: Form, tau: Form, p1: int) -> Form:
    sign = 1 if (p1 + 1) % 2 == 0 else -1
    return wedge(alpha1, tau) + wedge(sigma, alpha3).scale(sign)


def triple_massey(
    r: CohomologyRing,
    a1: CohomologyClass,
    a2: CohomologyClass,
    a3: CohomologyClass,
    sigma: Form | None = None,
    tau: Form | None = None,
) -> MasseyValue:
    """The triple product <a1, a2, a3>.

    ``sigma`` and ``tau`` may be supplied (they must be primitives of the
    products of the chosen representatives); otherwise the canonical
    primitives of the ring are used.
    """
    alpha1, alpha2, alpha3 = (r.representative(a) for a in (a1, a2, a3))
    p1, p2, p3 = a1.degree, a2.degree, a3.degree
    k = p1 + p2 + p3 - 1
    if k > r.n:
        raise PreconditionError(f"total degree {k} exceeds the dimension {r.n}")
    x12 = wedge(alpha1, alpha2)
    x23 = wedge(alpha2, alpha3)
    if sigma is None:
        sigma = r.primitive(x12, p1 + p2)
        if sigma is None:
            raise PreconditionError("a1 a2 is not zero in cohomology")
    elif r.cdga.d(sigma) != x12:
        raise PreconditionError("sigma is not a primitive of alpha1 ^ alpha2")
    if tau is None:
        tau = r.primitive(x23, p2 + p3)
        if tau is None:
            raise PreconditionError("a2 a3 is not zero in cohomology")
    elif r.cdga.d(tau) != x23:
        raise PreconditionError("tau is not a primitive of alpha2 ^ alpha3")
    value = r.reduce(_massey_forms(alpha1, alpha3, sigma, tau, p1), k)
    return MasseyValue((a1, a2, a3), value, indeterminacy(r, a1, a3, p2), sigma, tau)


def massey_scan(r: CohomologyRing, max_degree: int | None = None, limit: int | None = None) -> list[MasseyValue]:
    """Nonvanishing products of basis classes with total degree <= max_degree.

    Triples are enumerated by degrees (p1, p2, p3) and then basis index, both
    lexicographically, so the output order is deterministic.  With ``limit``
    the scan stops after that many hits (the result is a prefix of the full
    scan).
    """
    n = r.n
    if max_degree is None:
        max_degree = n - 1
    max_degree = min(max_degree, n)
    reps = {p: r.basis(p) for p in range(1, n + 1)}
    prim: dict[tuple[int, int, int, int], Form | None] = {}
    cups: dict[tuple[int, int, int, int], CohomologyClass] = {}
    indet: dict[tuple[int, int, int, int, int], tuple[CohomologyClass, ...]] = {}

    def primitive_of(p: int, i: int, q: int, j: int) -> Form | None:
        key = (p, i, q, j)
        if key not in prim:
            prim[key] = r.primitive(wedge(reps[p][i], reps[q][j]), p + q) if p + q <= n else None
        return prim[key]

    def cup(p: int, i: int, q: int, j: int) -> CohomologyClass:
        key = (p, i, q, j)
        if key not in cups:
            cups[key] = r.reduce(wedge(reps[p][i], reps[q][j]), p + q, check=False)
        return cups[key]

    def indeterminacy_of(p1: int, i1: int, p2: int, p3: int, i3: int) -> tuple[CohomologyClass, ...]:
        key = (p1, i1, p2, p3, i3)
        if key not in indet:
            q, q2 = p2 + p3 - 1, p1 + p2 - 1
            gens = [cup(p1, i1, q, j) for j in range(r.betti[q])]
            gens += [cup(q2, j, p3, i3) for j in range(r.betti[q2])]
            indet[key] = _basis_of([g for g in gens if not g.is_zero()], p1 + p2 + p3 - 1, r)
        return indet[key]

    found = []
    for p1 in range(1, n + 1):
        for p2 in range(1, n + 1):
            for p3 in range(1, n + 1):
                k = p1 + p2 + p3 - 1
                if k > max_degree or not r.betti[k]:
                    continue
                for i1, x1 in enumerate(reps[p1]):
                    for i2 in range(len(reps[p2])):
                        sigma = primitive_of(p1, i1, p2, i2)
                        if sigma is None:
                            continue
                        for i3, x3 in enumerate(reps[p3]):
                            tau = primitive_of(p2, i2, p3, i3)
                            if tau is None:
                                continue
                            form = _massey_forms(x1, x3, sigma, tau, p1)
                            if not form:
                                continue
                            value = r.reduce(form, k, check=False)
                            if value.is_zero():
                                continue
                            ind = indeterminacy_of(p1, i1, p2, p3, i3)
                            if _in_span(ind, value):
                                continue
                            a1, a2, a3 = r.unit(p1, i1), r.unit(p2, i2), r.unit(p3, i3)
                            labels = (f"H{p1}.{i1}", f"H{p2}.{i2}", f"H{p3}.{i3}")
                            found.append(MasseyValue((a1, a2, a3), value, ind, sigma, tau, labels))
                            if limit is not None and len(found) >= limit:
                                return found
    return found


HasegawaVerdict = Literal["formal", "non-formal"]


def hasegawa_verdict(c: CDGA) -> HasegawaVerdict:
    """Nilpotent models: formal exactly when the differential vanishes."""
    if not is_nilpotent(c):
        raise NotNilpotentError("the model is not nilpotent; the torus criterion does not apply")
    return "formal" if c.is_abelian() else "non-formal"


FormalityVerdict = Literal["formal", "non-formal", "undetermined"]


@dataclass(frozen=True)
class Formality:
    verdict: FormalityVerdict
    reason: str


def formality(c: CDGA, r: CohomologyRing, max_degree: int | None = None) -> Formality:
    """Three-valued verdict; an empty scan never certifies formality."""
    if is_nilpotent(c):
        v = hasegawa_verdict(c)
        return Formality(v, "hasegawa")
    if massey_scan(r, max_degree, limit=1):
        return Formality("non-formal", "massey")
    return Formality("undetermined", "no triple obstruction found")
