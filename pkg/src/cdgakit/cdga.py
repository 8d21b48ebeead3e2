"""CDGAs generated in degree one, and the Lie algebras they encode.

A degree-one-generated CDGA on e^1..e^n is determined by the 2-forms
d(e^k); the matching Lie bracket is read off through the Chevalley-Eilenberg
convention

    d e^k = - sum_{i<j} c_{ij}^k e^i ^ e^j,      [e_i, e_j] = sum_k c_{ij}^k e_k,

so ``CDGA`` and ``LieAlgebra`` are two views of the same data and the
constructions (circle product, semidirect extension, direct sum) work on
either.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from . import _accel
from ._accel import below_sign, wedge_sign
from .errors import DimensionMismatch, JacobiError, NotADerivationError
from .exterior import Form, Vector, as_fraction, contract, indices_of, monomial_basis, wedge
from .linalg import rank, rref


# ---------------------------------------------------------------- Lie algebra


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``constants[(i, j)] = {k: c_ij^k}`` for i < j (1-based)."""

    n: int
    constants: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), out in self.constants.items():
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise DimensionMismatch(f"bracket [e{i},e{j}] outside dimension {self.n}")
            if i == j:
                if any(as_fraction(v) for v in out.values()):
                    raise ValueError(f"[e{i},e{i}] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            for k, v in out.items():
                if not 1 <= k <= self.n:
                    raise DimensionMismatch(f"bracket output e{k} outside dimension {self.n}")
                v = sign * as_fraction(v)
                if v:
                    slot = clean.setdefault((i, j), {})
                    slot[k] = slot.get(k, 0) + v
                    if not slot[k]:
                        del slot[k]
        object.__setattr__(self, "constants", {key: val for key, val in clean.items() if val})

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return dict(self.constants.get((i, j), {}))
        return {k: -v for k, v in self.constants.get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        """Bracket of two coordinate vectors."""
        out = [Fraction(0)] * self.n
        for i, a in enumerate(x, start=1):
            if not a:
                continue
            for j, b in enumerate(y, start=1):
                if not b:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k - 1] += a * b * c
        return out

    def jacobi_violation(self) -> tuple[tuple[int, int, int], list[Fraction]] | None:
        """First triple (i<j<l) whose Jacobiator is nonzero, with its value."""
        e = [[Fraction(int(a == b)) for a in range(self.n)] for b in range(self.n)]
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                for l in range(j + 1, self.n + 1):
                    x, y, z = e[i - 1], e[j - 1], e[l - 1]
                    t1 = self.bracket(self.bracket(x, y), z)
                    t2 = self.bracket(self.bracket(y, z), x)
                    t3 = self.bracket(self.bracket(z, x), y)
                    jac = [a + b + c for a, b, c in zip(t1, t2, t3)]
                    if any(jac):
                        return (i, j, l), jac
        return None


# ----------------------------------------------------------------------- CDGA


@dataclass(frozen=True)
class DSquaredCheck:
    ok: bool
    generator: int | None = None
    witness: Form | None = None

    def __bool__(self) -> bool:
        return self.ok


class CDGA:
    """Exterior algebra on n degree-one generators with d given on generators.

    Construction does not insist on d^2 = 0 so that ``check_d_squared`` can
    diagnose bad input; use ``validated()`` (or the builders below, which
    validate) before computing cohomology.
    """

    def __init__(self, n: int, differentials: Sequence[Form] | Mapping[int, Form] | None = None, name: str = ""):
        self.n = n
        self.name = name
        diffs = [Form.zero(n)] * n
        if differentials is not None:
            items = differentials.items() if isinstance(differentials, Mapping) else enumerate(differentials, 1)
            for i, f in items:
                if not 1 <= i <= n:
                    raise DimensionMismatch(f"generator e{i} outside 1..{n}")
                if f.n != n:
                    raise DimensionMismatch(f"d e{i} lives on {f.n} generators, expected {n}")
                if f and f.degree != 2:
                    raise ValueError(f"d e{i} must be a 2-form, got degrees {f.degrees}")
                diffs[i - 1] = f
        self.differentials: tuple[Form, ...] = tuple(diffs)

    # relation tables ---------------------------------------------------
    @cached_property
    def _relations(self) -> tuple[list[int], list[int], list[Fraction]]:
        gens, masks, coefs = [], [], []
        for bit, f in enumerate(self.differentials):
            for m, c in f.items():
                gens.append(bit)
                masks.append(m)
                coefs.append(c)
        return gens, masks, coefs

    @cached_property
    def scale(self) -> int:
        """Common denominator of the differential's coefficients."""
        s = 1
        for f in self.differentials:
            for c in f.terms.values():
                s = lcm(s, c.denominator)
        return s

    def d_columns(self, k: int) -> list[dict[int, int]]:
        """Integer matrix of ``scale * d`` from degree k to k+1, one sparse column per monomial."""
        cache = self.__dict__.setdefault("_dcols", {})
        if k in cache:
            return cache[k]
        _, target = monomial_basis(self.n, k + 1)
        gens, tmasks, coefs = self._relations
        icoefs = [int(c * self.scale) for c in coefs]
        cols = [
            {target[m]: v for m, v in col.items()} for col in leibniz_columns(self.n, k, gens, tmasks, icoefs)
        ]
        cache[k] = cols
        return cols

    # operations --------------------------------------------------------
    def d(self, a: Form) -> Form:
        return differential(self, a)

    def gen(self, i: int) -> Form:
        return Form.gen(self.n, i)

    def form(self, text: str) -> Form:
        return Form.parse(text, self.n)

    def lie_algebra(self) -> LieAlgebra:
        consts: dict[tuple[int, int], dict[int, Fraction]] = {}
        for k, f in enumerate(self.differentials, start=1):
            for m, c in f.items():
                i, j = indices_of(m)
                consts.setdefault((i, j), {})[k] = -c
        return LieAlgebra(self.n, consts)

    def is_abelian(self) -> bool:
        return not any(self.differentials)

    def check_d_squared(self) -> DSquaredCheck:
        return check_d_squared(self)

    def validated(self) -> "CDGA":
        res = check_d_squared(self)
        if not res:
            triple = None
            viol = self.lie_algebra().jacobi_violation()
            if viol is not None:
                triple = viol[0]
            raise JacobiError(
                f"d^2 e{res.generator} = {res.witness} != 0"
                + (f" (Jacobi fails on e{triple[0]}, e{triple[1]}, e{triple[2]})" if triple else ""),
                triple=triple,
                generator=res.generator,
                witness=res.witness,
            )
        return self

    def relations_text(self) -> list[str]:
        return [f"d e{i} = {f}" for i, f in enumerate(self.differentials, start=1) if f]

    def __eq__(self, other) -> bool:
        return isinstance(other, CDGA) and self.n == other.n and self.differentials == other.differentials

    def __hash__(self) -> int:
        return hash((self.n, self.differentials))

    def __repr__(self) -> str:
        rel = ", ".join(self.relations_text()) or "d = 0"
        return f"CDGA(n={self.n}, {rel})"


def leibniz_columns(n: int, k: int, gens: Sequence[int], tmasks: Sequence[int], coefs: Sequence) -> list[dict]:
    """Sparse columns (keyed by monomial mask) of a derivation on k-forms.

    The derivation sends generator bit ``gens[t]`` to a sum of terms
    ``coefs[t] * tmasks[t]``; a term mask of 0 stands for a scalar, so the same
    routine covers d, Lie derivatives and contractions.
    """
    masks, _ = monomial_basis(n, k)
    cols: list[dict] = [dict() for _ in masks]
    if not masks or not len(coefs):
        return cols
    if n <= _accel.MAX_KERNEL_BITS:
        s_idx, t_idx, out, sign = _accel.leibniz_terms(
            np.array(masks, dtype=np.int64), np.array(gens, dtype=np.int64), np.array(tmasks, dtype=np.int64)
        )
        triples = zip(s_idx.tolist(), t_idx.tolist(), out.tolist(), sign.tolist())
    else:
        triples = []
        for s, m in enumerate(masks):
            for t, (g, tm) in enumerate(zip(gens, tmasks)):
                gb = 1 << g
                if not m & gb:
                    continue
                rest = m ^ gb
                sg = wedge_sign(tm, rest) * below_sign(m, g)
                if sg:
                    triples.append((s, t, rest | tm, sg))
    for s, t, r, sg in triples:
        col = cols[s]
        v = col.get(r, 0) + sg * coefs[t]
        if v:
            col[r] = v
        else:
            col.pop(r, None)
    return cols


def derivation_columns(n: int, k: int, values: Mapping[int, Form]) -> list[dict[int, Fraction]]:
    """Columns of the derivation fixed by ``values`` (generator index -> form of degree 0 or 1)."""
    gens, tmasks, coefs = [], [], []
    for i, f in values.items():
        for m, c in f._terms.items():
            gens.append(i - 1)
            tmasks.append(m)
            coefs.append(c)
    return leibniz_columns(n, k, gens, tmasks, coefs)


def differential(c: CDGA, a: Form) -> Form:
    """d extended to all forms by the graded Leibniz rule."""
    if a.n != c.n:
        raise DimensionMismatch(f"form on {a.n} generators, CDGA has {c.n}")
    out: dict[int, Fraction] = {}
    rel = [(bit, list(f._terms.items())) for bit, f in enumerate(c.differentials) if f]
    for m, coef in a._terms.items():
        for bit, terms in rel:
            gb = 1 << bit
            if not m & gb:
                continue
            rest = m ^ gb
            s0 = below_sign(m, bit)
            for tm, tc in terms:
                sg = wedge_sign(tm, rest)
                if not sg:
                    continue
                r = rest | tm
                v = out.get(r, 0) + (s0 * sg) * coef * tc
                if v:
                    out[r] = v
                else:
                    out.pop(r, None)
    return Form(c.n, out)


def check_d_squared(c: CDGA) -> DSquaredCheck:
    for i, f in enumerate(c.differentials, start=1):
        dd = differential(c, f)
        if dd:
            return DSquaredCheck(False, i, dd)
    return DSquaredCheck(True)


def ce_differential(g: LieAlgebra, name: str = "") -> CDGA:
    """Chevalley-Eilenberg CDGA of a Lie algebra; raises JacobiError if d^2 != 0."""
    viol = g.jacobi_violation()
    if viol is not None:
        (i, j, l), jac = viol
        raise JacobiError(f"Jacobi identity fails on (e{i}, e{j}, e{l}): {jac}", triple=(i, j, l))
    diffs: dict[int, dict[int, Fraction]] = {}
    for (i, j), out in g.constants.items():
        m = (1 << (i - 1)) | (1 << (j - 1))
        for k, v in out.items():
            diffs.setdefault(k, {})[m] = diffs.get(k, {}).get(m, 0) - v
    c = CDGA(g.n, {k: Form(g.n, t) for k, t in diffs.items()}, name=name)
    return c.validated()


def _embed(f: Form, n: int, shift: int = 0) -> Form:
    return Form(n, {m << shift: v for m, v in f.terms.items()})


def circle_product(c: CDGA, name: str = "") -> CDGA:
    """Model of the product with a circle: one extra closed generator."""
    n = c.n + 1
    return CDGA(n, [_embed(f, n) for f in c.differentials] + [Form.zero(n)], name=name)


def direct_sum(c1: CDGA, c2: CDGA, name: str = "") -> CDGA:
    """Tensor product of the two models (generators of ``c2`` shifted by ``c1.n``)."""
    n = c1.n + c2.n
    diffs = [_embed(f, n) for f in c1.differentials] + [_embed(f, n, c1.n) for f in c2.differentials]
    return CDGA(n, diffs, name=name)


def is_derivation(g: LieAlgebra, D: Sequence[Sequence]) -> tuple[int, int] | None:
    """First basis pair violating D[x,y] = [Dx,y] + [x,Dy], or None."""
    n = g.n
    Dm = [[as_fraction(x) for x in row] for row in D]
    if len(Dm) != n or any(len(r) != n for r in Dm):
        raise DimensionMismatch(f"derivation matrix must be {n}x{n}")

    def apply(v):
        return [sum((Dm[k][i] * v[i] for i in range(n)), Fraction(0)) for k in range(n)]

    e = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = apply(g.bracket(e[i], e[j]))
            rhs = [a + b for a, b in zip(g.bracket(apply(e[i]), e[j]), g.bracket(e[i], apply(e[j])))]
            if lhs != rhs:
                return i + 1, j + 1
    return None


def semidirect_extend(c: CDGA, D: Sequence[Sequence], name: str = "") -> CDGA:
    """Model of g (+)_D R, the new basis vector e_{n+1} acting by [e_{n+1}, x] = D x.

    ``D[k][i]`` is the e_k-coordinate of D(e_i) (columns are images).
    """
    g = c.lie_algebra()
    bad = is_derivation(g, D)
    if bad is not None:
        raise NotADerivationError(f"D is not a derivation: fails on (e{bad[0]}, e{bad[1]})", pair=bad)
    n = c.n + 1
    diffs = []
    for k in range(c.n):
        extra = Form(n, {(1 << i) | (1 << c.n): as_fraction(D[k][i]) for i in range(c.n) if D[k][i]})
        diffs.append(_embed(c.differentials[k], n) + extra)
    diffs.append(Form.zero(n))
    return CDGA(n, diffs, name=name).validated()


# --------------------------------------------------------- structural checks


def _span_rank(vectors: list[list[Fraction]]) -> int:
    vs = [v for v in vectors if any(v)]
    return rank(vs) if vs else 0


def lower_central_series(c: CDGA) -> list[int]:
    """Dimensions of g = g^1 > g^2 = [g,g] > g^3 = [g,g^2] > ... until stable."""
    g = c.lie_algebra()
    n = c.n
    basis = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    current = basis
    dims = [n]
    while True:
        brackets = [g.bracket(x, y) for x in basis for y in current]
        brackets = [b for b in brackets if any(b)]
        if not brackets:
            dims.append(0)
            return dims
        m, piv = rref(brackets)
        current = [row for row in m[: len(piv)]]
        if len(current) == dims[-1]:
            return dims
        dims.append(len(current))


def is_nilpotent(c: CDGA) -> bool:
    return lower_central_series(c)[-1] == 0


def is_unimodular(c: CDGA) -> bool:
    g = c.lie_algebra()
    for i in range(1, c.n + 1):
        if sum((g.bracket_basis(i, j).get(j, 0) for j in range(1, c.n + 1)), Fraction(0)) != 0:
            return False
    return True


# ------------------------------------------------------------ maps and flows


def lie_derivative(c: CDGA, x: Vector, a: Form) -> Form:
    """Cartan's formula L_x = d i_x + i_x d on the model."""
    return differential(c, contract(x, a)) + contract(x, differential(c, a))


class AlgebraMap:
    """Algebra endomorphism of the exterior algebra fixed by images of generators."""

    def __init__(self, n: int, images: Mapping[int, Form]):
        self.n = n
        imgs = []
        for i in range(1, n + 1):
            f = images.get(i, Form.gen(n, i))
            if f.n != n:
                raise DimensionMismatch("image lives on a different ambient dimension")
            if f and f.degree != 1:
                raise ValueError(f"image of e{i} must be a 1-form")
            imgs.append(f)
        self.images = tuple(imgs)

    @classmethod
    def from_matrix(cls, M: Sequence[Sequence]) -> "AlgebraMap":
        """``M[k][i]`` is the e^k-coordinate of the image of e^i."""
        n = len(M)
        return cls(n, {i + 1: Form(n, {1 << k: as_fraction(M[k][i]) for k in range(n) if M[k][i]}) for i in range(n)})

    def __call__(self, a: Form) -> Form:
        out = Form.zero(self.n)
        for m, c in a.terms.items():
            term = Form.scalar(self.n, c)
            for i in indices_of(m):
                term = wedge(term, self.images[i - 1])
                if not term:
                    break
            out = out + term
        return out

    def commutation_defect(self, c: CDGA) -> tuple[int, Form] | None:
        """First generator where phi(d e^i) != d(phi e^i), with the difference."""
        for i in range(1, self.n + 1):
            diff = self(c.differentials[i - 1]) - differential(c, self.images[i - 1])
            if diff:
                return i, diff
        return None
