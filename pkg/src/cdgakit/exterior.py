"""Exact exterior algebra on n degree-one generators e^1, ..., e^n.

Forms are sparse maps ``mask -> Fraction``; bit ``i-1`` of a mask stands for
e^i (see ``_accel``).  Monomials are always stored with strictly increasing
indices, the sign of a reordering being the parity of its sorting
permutation.  Forms may mix degrees; every operation distributes over the
homogeneous parts.

Text syntax (shared with the corpus files)::

    e14 + e23        2 e1245        -1/2 e3        3 - e[1,10,12]

A monomial is ``e`` followed by its index digits, or ``e[i,j,...]`` when an
index exceeds 9.  Indices need not be sorted on input; ``e21`` reads as
``-e12`` and ``e11`` as ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import _accel
from ._accel import below_sign, popcount, wedge_sign
from .errors import DerivationDegreeError, DimensionMismatch, FormSyntaxError

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not accepted; use Fraction or str")
    return Fraction(x)


# ------------------------------------------------------------------ monomials


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_basis(n: int, k: int) -> tuple[tuple[int, ...], dict[int, int]]:
    """Masks of degree-k monomials in lexicographic order, and their positions."""
    masks = tuple(mask_of(c) for c in combinations(range(1, n + 1), k))
    return masks, {m: i for i, m in enumerate(masks)}


def _sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return popcount(mask), indices_of(mask)


# ---------------------------------------------------------------------- forms


class Form:
    """Immutable exact element of the exterior algebra on ``n`` generators."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        if n < 0:
            raise ValueError("ambient dimension must be nonnegative")
        clean: dict[int, Fraction] = {}
        if terms:
            top = 1 << n
            for m, c in terms.items():
                if m < 0 or m >= top:
                    raise DimensionMismatch(f"monomial {indices_of(m)} outside {n} generators")
                c = as_fraction(c)
                if c:
                    clean[m] = c
        self.n = n
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[int, Fraction]) -> "Form":
        f = object.__new__(cls)
        f.n = n
        f._terms = terms
        f._hash = None
        return f

    # constructors
    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "Form":
        return cls._raw(n, {0: Fraction(1)})

    @classmethod
    def scalar(cls, n: int, c) -> "Form":
        return cls(n, {0: c})

    @classmethod
    def gen(cls, n: int, i: int) -> "Form":
        if not 1 <= i <= n:
            raise DimensionMismatch(f"generator index {i} outside 1..{n}")
        return cls._raw(n, {1 << (i - 1): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, *indices: int, coef=1) -> "Form":
        """Product e^{i1} ^ ... ^ e^{ik} in the order given (sign applied)."""
        for i in indices:
            if not 1 <= i <= n:
                raise DimensionMismatch(f"generator index {i} outside 1..{n}")
        mask, sign = 0, 1
        for i in indices:
            b = 1 << (i - 1)
            s = wedge_sign(mask, b)
            if s == 0:
                return cls.zero(n)
            sign *= s
            mask |= b
        return cls(n, {mask: sign * as_fraction(coef)})

    @classmethod
    def parse(cls, text: str, n: int) -> "Form":
        return parse_form(text, n)

    # inspection
    @property
    def terms(self) -> Mapping[int, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coefficient(self, *indices: int) -> Fraction:
        return self._terms.get(mask_of(indices), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({popcount(m) for m in self._terms}))

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous form; None for zero or mixed forms."""
        ds = self.degrees
        return ds[0] if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def part(self, k: int) -> "Form":
        return Form._raw(self.n, {m: c for m, c in self._terms.items() if popcount(m) == k})

    def to_vector(self, k: int) -> dict[int, Fraction]:
        """Coordinates of the degree-k part against the lexicographic basis."""
        _, index = monomial_basis(self.n, k)
        return {index[m]: c for m, c in self._terms.items() if popcount(m) == k}

    @classmethod
    def from_vector(cls, n: int, k: int, vec: Mapping[int, object]) -> "Form":
        masks, _ = monomial_basis(n, k)
        return cls(n, {masks[i]: c for i, c in vec.items()})

    # arithmetic
    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"ambient dimensions differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Form):
            if isinstance(other, (int, Fraction)):
                other = Form.scalar(self.n, other)
            else:
                return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Form._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Form._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Form.scalar(self.n, other)
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Form":
        c = as_fraction(c)
        if not c:
            return Form.zero(self.n)
        return Form._raw(self.n, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return wedge(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Form":
        return power(self, k)

    def __eq__(self, other) -> bool:
        if isinstance(other, Form):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {0: Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"Form({self.n}, {format_form(self)!r})"


@dataclass(frozen=True)
class Vector:
    """Exact vector in the span of e_1, ..., e_n (dual to the generators)."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def basis(cls, n: int, i: int) -> "Vector":
        if not 1 <= i <= n:
            raise DimensionMismatch(f"basis index {i} outside 1..{n}")
        return cls(tuple(Fraction(int(j == i - 1)) for j in range(n)))

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __add__(self, other: "Vector") -> "Vector":
        if other.n != self.n:
            raise DimensionMismatch("vector lengths differ")
        return Vector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "Vector":
        c = as_fraction(c)
        return Vector(tuple(c * a for a in self.coords))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


# ------------------------------------------------------------ core operations

_KERNEL_THRESHOLD = 256


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    ta, tb = a._terms, b._terms
    if not ta or not tb:
        return Form.zero(a.n)
    out: dict[int, Fraction] = {}
    if len(ta) * len(tb) >= _KERNEL_THRESHOLD and a.n <= _accel.MAX_KERNEL_BITS:
        ka, ca = list(ta), list(ta.values())
        kb, cb = list(tb), list(tb.values())
        masks, signs = _accel.pair_products(np.array(ka, dtype=np.int64), np.array(kb, dtype=np.int64))
        ii, jj = np.nonzero(signs)
        for i, j in zip(ii.tolist(), jj.tolist()):
            m = int(masks[i, j])
            v = out.get(m, 0) + (ca[i] * cb[j] if signs[i, j] > 0 else -ca[i] * cb[j])
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Form._raw(a.n, out)
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            s = wedge_sign(ma, mb)
            if not s:
                continue
            m = ma | mb
            v = out.get(m, 0) + (ca * cb if s > 0 else -ca * cb)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Form._raw(a.n, out)


def wedge_all(forms: Sequence[Form], n: int | None = None) -> Form:
    if not forms:
        if n is None:
            raise ValueError("empty product needs an ambient dimension")
        return Form.one(n)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def power(a: Form, k: int) -> Form:
    if k < 0:
        raise ValueError("negative power")
    out = Form.one(a.n)
    for _ in range(k):
        out = wedge(out, a)
    return out


def contract(x: Vector, a: Form) -> Form:
    """Interior product, the degree -1 antiderivation with contract(e_i, e^j) = delta_ij."""
    if x.n != a.n:
        raise DimensionMismatch(f"vector has {x.n} coordinates, form lives on {a.n} generators")
    out: dict[int, Fraction] = {}
    active = [(i, c) for i, c in enumerate(x.coords) if c]
    for m, c in a._terms.items():
        for bit, xc in active:
            b = 1 << bit
            if not m & b:
                continue
            v = c * xc
            if below_sign(m, bit) < 0:
                v = -v
            r = m ^ b
            t = out.get(r, 0) + v
            if t:
                out[r] = t
            else:
                out.pop(r, None)
    return Form._raw(a.n, out)


def evaluate(a: Form, x: Vector) -> Fraction:
    """Pairing of a 1-form with a vector."""
    return contract(x, a.part(1)).coefficient()


def derivation_extend(values: Mapping[int, Form], a: Form, degree: int) -> Form:
    """Apply the derivation of the given degree fixed by its values on generators.

    ``values[i]`` is the image of e^i and must be homogeneous of degree
    ``1 + degree`` (or zero); missing generators map to zero.  The extension
    obeys D(u ^ v) = D(u) ^ v + (-1)^(degree*|u|) u ^ D(v).
    """
    n = a.n
    target = 1 + degree
    if target < 0:
        raise DerivationDegreeError(f"a derivation of degree {degree} cannot act on degree-1 generators")
    vals: dict[int, Form] = {}
    for i, v in values.items():
        if not 1 <= i <= n:
            raise DimensionMismatch(f"generator index {i} outside 1..{n}")
        if v.n != n:
            raise DimensionMismatch("derivation value lives on a different ambient dimension")
        if v and v.degree != target:
            raise DerivationDegreeError(
                f"value on e{i} has degree {v.degrees}, expected {target} for a degree {degree} derivation"
            )
        if v:
            vals[i - 1] = v
    out = Form.zero(n)
    odd = degree & 1
    for m, c in a._terms.items():
        for bit, v in vals.items():
            b = 1 << bit
            if not m & b:
                continue
            below = m & (b - 1)
            above = m & ~((b << 1) - 1)
            term = wedge(wedge(Form._raw(n, {below: c}), v), Form._raw(n, {above: Fraction(1)}))
            if odd and popcount(below) & 1:
                term = -term
            out = out + term
    return out


# ------------------------------------------------------------------ text I/O

_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+\-−])|(?P<num>\d+(?:/\d+)?)|(?P<mono>e(?:\[[\d,\s]*\]|\d+))|(?P<star>\*)|(?P<bad>\S))"
)


def _parse_monomial(tok: str, n: int, col: int) -> tuple[int, ...]:
    body = tok[1:]
    if body.startswith("["):
        inner = body[1:-1].strip()
        idx = tuple(int(x) for x in inner.split(",") if x.strip()) if inner else ()
    else:
        idx = tuple(int(ch) for ch in body)
    for i in idx:
        if not 1 <= i <= n:
            raise FormSyntaxError(f"index {i} out of range 1..{n} in {tok!r}", column=col)
    return idx


def parse_form(text: str, n: int) -> Form:
    """Parse the textual syntax described in the module docstring."""
    terms: list[tuple[Fraction, tuple[int, ...] | None]] = []
    state = "start"  # start | sign | number | term
    sign = 1
    coef = Fraction(0)
    s = text.rstrip()
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        val = m.group(kind)
        col = m.start(kind) + 1
        pos = m.end()
        if kind == "bad":
            raise FormSyntaxError(f"unexpected character {val!r}", column=col)
        if kind == "sign":
            if state == "number":
                terms.append((coef, None))
            elif state == "sign":
                raise FormSyntaxError("two signs in a row", column=col)
            sign = -1 if val in "-\u2212" else 1
            state = "sign"
        elif kind == "num":
            if state not in ("start", "sign"):
                raise FormSyntaxError("missing operator before number", column=col)
            try:
                coef = sign * Fraction(val)
            except ZeroDivisionError:
                raise FormSyntaxError(f"zero denominator in {val!r}", column=col) from None
            state = "number"
        elif kind == "star":
            if state != "number":
                raise FormSyntaxError("'*' must follow a coefficient", column=col)
        else:
            if state == "term":
                raise FormSyntaxError("missing operator before monomial", column=col)
            if state != "number":
                coef = Fraction(sign)
            terms.append((coef, _parse_monomial(val, n, col)))
            sign = 1
            state = "term"
    if state == "number":
        terms.append((coef, None))
    elif state in ("start", "sign"):
        raise FormSyntaxError("empty form or trailing operator", column=len(s) + 1)
    out: dict[int, Fraction] = {}
    for c, idx in terms:
        f = Form.scalar(n, c) if idx is None else Form.monomial(n, *idx, coef=c)
        for mk, v in f._terms.items():
            t = out.get(mk, 0) + v
            if t:
                out[mk] = t
            else:
                out.pop(mk, None)
    return Form._raw(n, out)


def format_monomial(mask: int, n: int) -> str:
    idx = indices_of(mask)
    if n <= 9:
        return "e" + "".join(str(i) for i in idx)
    return "e[" + ",".join(str(i) for i in idx) + "]"


def format_form(a: Form) -> str:
    items = a.items()
    if not items:
        return "0"
    parts = []
    for k, (m, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        if m == 0:
            body = str(mag)
        elif mag == 1:
            body = format_monomial(m, a.n)
        else:
            body = f"{mag} {format_monomial(m, a.n)}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def iter_monomials(n: int, k: int) -> Iterator[Form]:
    masks, _ = monomial_basis(n, k)
    for m in masks:
        yield Form._raw(n, {m: Fraction(1)})
