"""Symplectic and cosymplectic data on a model, and the two Reeb vectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cdga import CDGA, differential
from .errors import DegenerateError, DimensionMismatch, NotClosedError, StructureError
from .exterior import Form, Vector, contract, power, wedge
from .linalg import rank, solve


class StructureNotClosed(NotClosedError):
    module = "structures"


@dataclass(frozen=True)
class SymplecticStructure:
    cdga: CDGA
    omega: Form
    n: int

    @property
    def volume(self) -> Form:
        return power(self.omega, self.n)


@dataclass(frozen=True)
class CosymplecticStructure:
    cdga: CDGA
    eta: Form
    omega: Form
    n: int
    xi: Vector
    theta: Vector

    @property
    def volume(self) -> Form:
        return wedge(self.eta, power(self.omega, self.n))

    @property
    def reeb_agrees(self) -> bool:
        return self.xi == self.theta


def _check_form(c: CDGA, f: Form, degree: int, label: str) -> None:
    if f.n != c.n:
        raise DimensionMismatch(f"{label} lives on {f.n} generators, model has {c.n}")
    if f.is_zero() or f.degree != degree:
        raise StructureError(f"{label} must be a nonzero {degree}-form, got {f}")
    df = differential(c, f)
    if df:
        raise StructureNotClosed(f"{label} is not closed: d({label}) = {df}", witness=df)


def validate_symplectic(c: CDGA, omega: Form) -> SymplecticStructure:
    if c.n % 2:
        raise StructureError(f"a symplectic model needs even dimension, got {c.n}")
    c.validated()
    _check_form(c, omega, 2, "omega")
    n = c.n // 2
    if not power(omega, n):
        raise DegenerateError(f"omega^{n} = 0, so omega is degenerate")
    return SymplecticStructure(c, omega, n)


def _unique_solve(rows: list[list[Fraction]], rhs: list[Fraction], n: int, what: str) -> Vector:
    if rank(rows) != n:
        raise DegenerateError(f"the {what} is not unique; the data is degenerate")
    x = solve(rows, rhs)
    if x is None:
        raise DegenerateError(f"no {what} exists for this data")
    return Vector(tuple(x))


def reeb(c: CDGA, eta: Form, omega: Form) -> Vector:
    """The vector xi with i_xi eta = 1 and i_xi omega = 0."""
    n = c.n
    rows: list[list[Fraction]] = [[eta.coefficient(i) for i in range(1, n + 1)]]
    rhs = [Fraction(1)]
    # (i_xi omega)_j = sum_i xi_i * omega(e_i, e_j)
    for j in range(1, n + 1):
        row = []
        for i in range(1, n + 1):
            if i == j:
                row.append(Fraction(0))
            elif i < j:
                row.append(omega.coefficient(i, j))
            else:
                row.append(-omega.coefficient(j, i))
        rows.append(row)
        rhs.append(Fraction(0))
    return _unique_solve(rows, rhs, n, "Reeb vector")


def algebraic_reeb(c: CDGA, v: Form, w: Form) -> Vector:
    """The vector theta solving i_theta(v ^ w^m) = w^m, where dim = 2m+1."""
    n = c.n
    if n % 2 == 0:
        raise StructureError(f"the algebraic Reeb vector needs odd dimension, got {n}")
    m = n // 2
    wm = power(w, m)
    top = wedge(v, wm)
    if not top:
        raise DegenerateError("v ^ w^m = 0")
    # i_theta is linear in theta: collect the 2m-form equations coefficient-wise
    images = [contract(Vector.basis(n, i), top) for i in range(1, n + 1)]
    monos = sorted({mk for f in images for mk in f.terms} | set(wm.terms))
    rows = [[f.terms.get(mk, Fraction(0)) for f in images] for mk in monos]
    rhs = [wm.terms.get(mk, Fraction(0)) for mk in monos]
    return _unique_solve(rows, rhs, n, "algebraic Reeb vector")


def validate_cosymplectic(c: CDGA, eta: Form, omega: Form) -> CosymplecticStructure:
    if c.n % 2 == 0:
        raise StructureError(f"a cosymplectic model needs odd dimension, got {c.n}")
    c.validated()
    _check_form(c, eta, 1, "eta")
    _check_form(c, omega, 2, "omega")
    n = c.n // 2
    if not wedge(eta, power(omega, n)):
        raise DegenerateError(f"eta ^ omega^{n} = 0, so (eta, omega) is degenerate")
    xi = reeb(c, eta, omega)
    theta = algebraic_reeb(c, eta, omega)
    return CosymplecticStructure(c, eta, omega, n, xi, theta)
