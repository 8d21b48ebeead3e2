"""Lefschetz maps.

Symplectic case: [a] -> [w^(n-k) ^ a] from H^k to H^(2n-k).

Cosymplectic case, on forms of degree k <= n in dimension 2n+1:

    L(a) = w^(n-k+1) ^ i_xi a + w^(n-k) ^ eta ^ a

This does not in general carry closed forms to closed forms; on closed a
one has d(L a) = w^(n-k+1) ^ d(i_xi a).  It does descend to the cohomology of
the subcomplex of xi-invariant forms (L_xi a = 0), which splits as basic
forms plus eta times basic forms.

The algebraic map z -> w^(n-1) ^ v ^ z + w^n ^ i_theta z on H^1 -> H^2n is
the degree-one test behind the notion of a 1-Lefschetz model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cdga import CDGA, derivation_columns, differential, lie_derivative
from .cohomology import CohomologyRing, cohomology
from .errors import NotClosedError, StructureError
from .exterior import Form, Vector, contract, power, wedge
from .linalg import kernel, rank
from .structures import CosymplecticStructure, SymplecticStructure, algebraic_reeb

Matrix = tuple[tuple[Fraction, ...], ...]


class LefschetzInputError(StructureError):
    module = "lefschetz"


@dataclass(frozen=True)
class DegreeMap:
    k: int
    matrix: Matrix
    rank: int
    src: int
    tgt: int

    @property
    def injective(self) -> bool:
        return self.rank == self.src

    @property
    def surjective(self) -> bool:
        return self.rank == self.tgt

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def line(self) -> str:
        return f"L[{self.k}]: rank {self.rank}, src {self.src}, tgt {self.tgt}, iso {'yes' if self.bijective else 'no'}"


@dataclass(frozen=True)
class LefschetzReport:
    degrees: tuple[DegreeMap, ...]

    def __getitem__(self, k: int) -> DegreeMap:
        return self.degrees[k]

    @property
    def lefschetz_type(self) -> bool:
        return len(self.degrees) > 1 and self.degrees[1].bijective

    @property
    def lefschetz_property(self) -> bool:
        return all(d.bijective for d in self.degrees)

    @property
    def bijective_flags(self) -> tuple[bool, ...]:
        return tuple(d.bijective for d in self.degrees)

    def lines(self) -> list[str]:
        out = [d.line() for d in self.degrees]
        out.append(f"lefschetz_type = {'yes' if self.lefschetz_type else 'no'}")
        out.append(f"lefschetz_property = {'yes' if self.lefschetz_property else 'no'}")
        return out


def _degree_map(
    source: CohomologyRing, target: CohomologyRing, k: int, k_out: int, f: Callable[[Form], Form]
) -> DegreeMap:
    cols = [target.reduce(f(z), k_out).coords for z in source.basis(k)]
    src = source.betti[k]
    tgt = target.betti[k_out]
    m = tuple(tuple(cols[j][i] for j in range(src)) for i in range(tgt))
    r = rank([list(row) for row in m]) if src and tgt else 0
    return DegreeMap(k, m, r, src, tgt)


def symplectic_lefschetz(r: CohomologyRing, s: SymplecticStructure) -> LefschetzReport:
    n = s.n
    maps = []
    for k in range(n + 1):
        wk = power(s.omega, n - k)
        maps.append(_degree_map(r, r, k, 2 * n - k, lambda z, wk=wk: wedge(wk, z)))
    return LefschetzReport(tuple(maps))


def cosymplectic_map(s: CosymplecticStructure, alpha: Form, k: int | None = None) -> Form:
    """The cosymplectic Lefschetz map on forms of degree k <= n."""
    n = s.n
    if k is None:
        k = alpha.degree if alpha.degree is not None else 0
    if not 0 <= k <= n:
        raise LefschetzInputError(f"the cosymplectic Lefschetz map acts in degrees 0..{n}, got {k}")
    a = wedge(power(s.omega, n - k + 1), contract(s.xi, alpha))
    b = wedge(wedge(power(s.omega, n - k), s.eta), alpha)
    return a + b


def cosymplectic_closedness(c: CDGA, s: CosymplecticStructure, alpha: Form) -> Form:
    """d(L(alpha)) for a closed alpha; zero exactly when the image is closed."""
    da = differential(c, alpha)
    if da:
        raise NotClosedError(f"alpha is not closed: d(alpha) = {da}", witness=da)
    return differential(c, cosymplectic_map(s, alpha))


# ------------------------------------------------------------ subcomplexes


@dataclass(frozen=True)
class SubcomplexCohomology:
    """Cohomology of the xi-invariant forms and of the basic forms."""

    structure: CosymplecticStructure
    invariant: CohomologyRing
    basic: CohomologyRing
    invariant_dims: tuple[int, ...]
    basic_dims: tuple[int, ...]
    eta_invariant: bool
    omega_invariant: bool

    @property
    def invariant_betti(self) -> tuple[int, ...]:
        return self.invariant.betti

    @property
    def basic_betti(self) -> tuple[int, ...]:
        return self.basic.betti

    def splitting_holds(self) -> bool:
        hb = self.basic.betti
        return all(
            h == hb[k] + (hb[k - 1] if k else 0) for k, h in enumerate(self.invariant.betti)
        )


def xi_invariant_cohomology(
    c: CDGA, s: CosymplecticStructure, r: CohomologyRing | None = None
) -> SubcomplexCohomology:
    """Invariant forms are ker L_xi; basic forms are ker i_xi there.

    Both L_xi and i_xi are derivations, so their matrices come from their
    values on generators: L_xi e^i = i_xi d e^i and i_xi e^i = xi_i.
    (For a with i_xi a = 0 one has i_xi d a = L_xi a, so ker i_xi cap ker L_xi
    is the basic complex.)  When L_xi vanishes on generators every form is
    invariant and ``r`` (the cohomology of ``c``) is reused if given.
    """
    n = c.n
    xi = s.xi
    lie = {i: contract(xi, f) for i, f in enumerate(c.differentials, start=1) if f}
    lie = {i: f for i, f in lie.items() if f}
    ins = {i: Form.scalar(n, x) for i, x in enumerate(xi.coords, start=1) if x}
    inv: dict[int, list] = {}
    bas: dict[int, list] = {}
    for k in range(n + 1):
        lcols = derivation_columns(n, k, lie)
        icols = derivation_columns(n, k, ins)
        inv[k] = kernel(lcols)
        both = []
        for lc, ic in zip(lcols, icols):
            col = {2 * m: v for m, v in lc.items()}
            col.update({2 * m + 1: v for m, v in ic.items()})
            both.append(col)
        bas[k] = kernel(both)
    invariant = r if (r is not None and not lie) else CohomologyRing(c, inv)
    basic = CohomologyRing(c, bas)
    return SubcomplexCohomology(
        s,
        invariant,
        basic,
        tuple(len(inv[k]) for k in range(n + 1)),
        tuple(len(bas[k]) for k in range(n + 1)),
        not lie_derivative(c, xi, s.eta),
        not lie_derivative(c, xi, s.omega),
    )


def k_cosymplectic_lefschetz(sub: SubcomplexCohomology, s: CosymplecticStructure | None = None) -> LefschetzReport:
    s = s or sub.structure
    if not (sub.eta_invariant and sub.omega_invariant):
        raise LefschetzInputError("eta and omega must be invariant under the Reeb flow")
    r = sub.invariant
    n = s.n
    maps = [_degree_map(r, r, k, 2 * n + 1 - k, lambda z, k=k: cosymplectic_map(s, z, k)) for k in range(n + 1)]
    return LefschetzReport(tuple(maps))


@dataclass(frozen=True)
class OneLefschetzResult:
    is_1_lefschetz: bool
    map: DegreeMap
    theta: Vector

    def __bool__(self) -> bool:
        return self.is_1_lefschetz


def algebraic_1_lefschetz(c: CDGA, v: Form, w: Form, r: CohomologyRing | None = None) -> OneLefschetzResult:
    for label, f in (("v", v), ("w", w)):
        df = differential(c, f)
        if df:
            raise NotClosedError(f"{label} is not closed: d({label}) = {df}", witness=df)
    theta = algebraic_reeb(c, v, w)
    n = c.n // 2
    r = r or cohomology(c)
    a = wedge(power(w, n - 1), v)
    wn = power(w, n)

    def f(z: Form) -> Form:
        return wedge(a, z) + wn.scale(contract(theta, z).coefficient())

    m = _degree_map(r, r, 1, 2 * n, f)
    return OneLefschetzResult(m.bijective, m, theta)

