"""Line-oriented input format and the built-in example registry.

Grammar (one statement per line, ``#`` starts a comment)::

    name <identifier>
    dim <N>
    bracket [ei,ej] = <1-form>      # structure constants, or ...
    d ei = <2-form>                 # ... differentials, never both
    eta = <1-form>
    omega = <2-form>
    flag <nilpotent|completely_solvable|unimodular|model_level>
    fiber <registry name>           # the model is a mapping torus of this fiber
    monodromy ei = <1-form>         # pullback of the monodromy on fiber forms

Forms use the exterior syntax (``e14 + e23``, ``-1/2 e3``; ``e[10,11]`` once
indices exceed 9).  Every ``d``/``bracket`` line must come after ``dim``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cdga import CDGA, LieAlgebra, ce_differential, circle_product, direct_sum, semidirect_extend
from .errors import FormSyntaxError, SpecParseError, UnknownEntryError
from .exterior import Form, format_form, indices_of, parse_form

KNOWN_FLAGS = ("nilpotent", "completely_solvable", "unimodular", "model_level")


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    dim: int
    style: str | None = None  # "bracket", "differential" or None (abelian)
    brackets: tuple[tuple[int, int, Form], ...] = ()
    differentials: tuple[tuple[int, Form], ...] = ()
    eta: Form | None = None
    omega: Form | None = None
    flags: frozenset[str] = field(default_factory=frozenset)
    fiber: str | None = None
    monodromy: tuple[tuple[int, str], ...] = ()

    def cdga(self) -> CDGA:
        return build_cdga(self)

    def to_text(self) -> str:
        return to_text(self)


# --------------------------------------------------------------- parsing

_NAME = re.compile(r"name\s+(\S+)\s*$")
_DIM = re.compile(r"dim\s+(\S+)\s*$")
_BRACKET = re.compile(r"bracket\s*\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=(.*)$")
_DIFF = re.compile(r"d\s+e(\d+)\s*=(.*)$")
_STRUCT = re.compile(r"(eta|omega)\s*=(.*)$")
_FLAG = re.compile(r"flag\s+(\S+)\s*$")
_FIBER = re.compile(r"fiber\s+(\S+)\s*$")
_MONO = re.compile(r"monodromy\s+e(\d+)\s*=(.*)$")


def _form_at(text: str, n: int, lineno: int, line: str, start: int) -> Form:
    try:
        return parse_form(text, n)
    except FormSyntaxError as exc:
        col = start + (exc.column or 1)
        raise SpecParseError(str(exc.args[0]), line=lineno, column=col) from None


def parse(text: str, default_name: str = "unnamed") -> AlgebraSpec:
    name = default_name
    dim: int | None = None
    style: str | None = None
    brackets: dict[tuple[int, int], Form] = {}
    diffs: dict[int, Form] = {}
    eta = omega = None
    flags: set[str] = set()
    fiber = None
    mono: dict[int, str] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)

        def need_dim():
            if dim is None:
                raise SpecParseError("'dim' must come before this line", line=lineno, column=indent + 1)
            return dim

        def check_index(i: int, col: int):
            if not 1 <= i <= need_dim():
                raise SpecParseError(f"index {i} outside 1..{dim}", line=lineno, column=col)

        if m := _NAME.match(stripped):
            name = m.group(1)
        elif m := _DIM.match(stripped):
            if dim is not None:
                raise SpecParseError("'dim' given twice", line=lineno, column=indent + 1)
            try:
                dim = int(m.group(1))
            except ValueError:
                raise SpecParseError(f"bad dimension {m.group(1)!r}", line=lineno, column=indent + m.start(1) + 1) from None
            if dim < 1:
                raise SpecParseError("dimension must be positive", line=lineno, column=indent + m.start(1) + 1)
        elif m := _BRACKET.match(stripped):
            if style == "differential":
                raise SpecParseError("bracket line in a file that uses d lines", line=lineno, column=indent + 1)
            style = "bracket"
            i, j = int(m.group(1)), int(m.group(2))
            check_index(i, indent + m.start(1) + 1)
            check_index(j, indent + m.start(2) + 1)
            if i == j:
                raise SpecParseError(f"[e{i},e{i}] is always zero", line=lineno, column=indent + 1)
            f = _form_at(m.group(3), dim, lineno, raw, indent + m.start(3))
            if f and f.degree != 1:
                raise SpecParseError("a bracket must be a combination of generators", line=lineno, column=indent + m.start(3) + 1)
            if i > j:
                i, j, f = j, i, -f
            if (i, j) in brackets:
                raise SpecParseError(f"[e{i},e{j}] given twice", line=lineno, column=indent + 1)
            brackets[(i, j)] = f
        elif m := _DIFF.match(stripped):
            if style == "bracket":
                raise SpecParseError("d line in a file that uses bracket lines", line=lineno, column=indent + 1)
            style = "differential"
            i = int(m.group(1))
            check_index(i, indent + m.start(1) + 1)
            f = _form_at(m.group(2), dim, lineno, raw, indent + m.start(2))
            if f and f.degree != 2:
                raise SpecParseError(f"d e{i} must be a 2-form", line=lineno, column=indent + m.start(2) + 1)
            if i in diffs:
                raise SpecParseError(f"d e{i} given twice", line=lineno, column=indent + 1)
            diffs[i] = f
        elif m := _STRUCT.match(stripped):
            f = _form_at(m.group(2), need_dim(), lineno, raw, indent + m.start(2))
            if m.group(1) == "eta":
                eta = f
            else:
                omega = f
        elif m := _FLAG.match(stripped):
            if m.group(1) not in KNOWN_FLAGS:
                raise SpecParseError(f"unknown flag {m.group(1)!r}", line=lineno, column=indent + m.start(1) + 1)
            flags.add(m.group(1))
        elif m := _FIBER.match(stripped):
            fiber = m.group(1)
        elif m := _MONO.match(stripped):
            mono[int(m.group(1))] = m.group(2).strip()
        else:
            raise SpecParseError(f"unrecognised statement {stripped.split()[0]!r}", line=lineno, column=indent + 1)

    if dim is None:
        raise SpecParseError("missing 'dim' line")
    if mono and fiber is None:
        raise SpecParseError("monodromy lines need a 'fiber' line")
    return AlgebraSpec(
        name=name,
        dim=dim,
        style=style,
        brackets=tuple((i, j, f) for (i, j), f in sorted(brackets.items())),
        differentials=tuple(sorted(diffs.items())),
        eta=eta,
        omega=omega,
        flags=frozenset(flags),
        fiber=fiber,
        monodromy=tuple(sorted(mono.items())),
    )


def to_text(spec: AlgebraSpec) -> str:
    lines = [f"name {spec.name}", f"dim {spec.dim}"]
    for i, j, f in spec.brackets:
        lines.append(f"bracket [e{i},e{j}] = {format_form(f)}")
    for i, f in spec.differentials:
        lines.append(f"d e{i} = {format_form(f)}")
    if spec.eta is not None:
        lines.append(f"eta = {format_form(spec.eta)}")
    if spec.omega is not None:
        lines.append(f"omega = {format_form(spec.omega)}")
    for fl in sorted(spec.flags):
        lines.append(f"flag {fl}")
    if spec.fiber is not None:
        lines.append(f"fiber {spec.fiber}")
    for i, t in spec.monodromy:
        lines.append(f"monodromy e{i} = {t}")
    return "\n".join(lines) + "\n"


def build_cdga(spec: AlgebraSpec) -> CDGA:
    n = spec.dim
    if spec.style == "bracket":
        consts: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i, j, f in spec.brackets:
            consts[(i, j)] = {indices_of(m)[0]: c for m, c in f.terms.items()}
        return ce_differential(LieAlgebra(n, consts), name=spec.name)
    return CDGA(n, dict(spec.differentials), name=spec.name).validated()


def monodromy_images(spec: AlgebraSpec, fiber_dim: int) -> dict[int, Form]:
    return {i: parse_form(t, fiber_dim) for i, t in spec.monodromy}


# -------------------------------------------------------------- registry


def _spec_from_cdga(
    name: str, c: CDGA, eta: Form | None = None, omega: Form | None = None, flags=(), **extra
) -> AlgebraSpec:
    diffs = tuple((i, f) for i, f in enumerate(c.differentials, start=1) if f)
    return AlgebraSpec(
        name=name,
        dim=c.n,
        style="differential" if diffs else None,
        differentials=diffs,
        eta=eta,
        omega=omega,
        flags=frozenset(flags),
        **extra,
    )


def _embed(f: Form | None, n: int, shift: int = 0) -> Form | None:
    if f is None:
        return None
    return Form(n, {m << shift: v for m, v in f.terms.items()})


def _standard_omega(n: int, pairs: int) -> Form:
    out = Form.zero(n)
    for p in range(pairs):
        out = out + Form.monomial(n, 2 * p + 1, 2 * p + 2)
    return out


def torus(n: int) -> AlgebraSpec:
    c = CDGA(n)
    flags = ("nilpotent", "completely_solvable", "unimodular")
    if n % 2 == 0:
        return _spec_from_cdga(f"torus_{n}", c, None, _standard_omega(n, n // 2), flags)
    eta = Form.gen(n, n)
    return _spec_from_cdga(f"torus_{n}", c, eta, _standard_omega(n, n // 2) if n > 1 else None, flags)


_TEXTS = {
    "heisenberg": """
        name heisenberg
        dim 3
        d e3 = e12
        flag nilpotent
        flag unimodular
    """,
    "kt": """
        name kt
        dim 4
        d e3 = e12
        omega = e14 + e23
        flag nilpotent
        flag unimodular
    """,
    "e4": """
        name e4
        dim 4
        d e3 = e12
        d e4 = e13
        omega = e14 + e23
        flag nilpotent
        flag unimodular
    """,
    "g6_78": """
        name g6_78
        dim 6
        d e1 = e25 - e16
        d e2 = e45
        d e3 = e24 + e36 + e46
        d e4 = e46
        d e5 = -e56
        d e6 = 0
        omega = e14 + e26 + e35
        flag completely_solvable
        flag unimodular
    """,
    "nil5_cosymp": """
        name nil5_cosymp
        dim 5
        d e3 = e15
        d e4 = e12
        eta = e5
        omega = e13 - e24
        flag nilpotent
        flag unimodular
    """,
    "solv5": """
        name solv5
        dim 5
        d e1 = -e15
        d e2 = e25
        d e3 = -e15 - e35
        d e4 = -e25 + e45
        d e5 = 0
        eta = e5
        omega = e14 + e23
        flag completely_solvable
        flag unimodular
    """,
    "h7": """
        name h7
        dim 6
        bracket [e1,e2] = -e4
        bracket [e1,e3] = -e5
        bracket [e2,e3] = -e6
        omega = -e16 + e25 + 2 e34
        flag nilpotent
        flag unimodular
    """,
}

# the rotation generator acting on h7; columns are images D(e_i)
H7_DERIVATION = (
    (0, 1, 0, 0, 0, 0),
    (-1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, -1, 0),
)

# pullback of the quarter-turn exp((pi/2) D) on h7's generators (signs as
# images of the dual basis; the fixed subspaces do not depend on the direction)
H7_QUARTER_TURN = {1: "-e2", 2: "e1", 5: "-e6", 6: "e5"}


def _g7() -> AlgebraSpec:
    h7 = registry("h7")
    c = semidirect_extend(h7.cdga(), H7_DERIVATION, name="g7")
    return _spec_from_cdga(
        "g7",
        c,
        Form.gen(7, 7),
        _embed(h7.omega, 7),
        ("unimodular", "model_level"),
        fiber="h7",
        monodromy=tuple(sorted(H7_QUARTER_TURN.items())),
    )


def _sum(name: str, a: AlgebraSpec, b: AlgebraSpec, flags) -> AlgebraSpec:
    n = a.dim + b.dim
    c = direct_sum(a.cdga(), b.cdga())
    omega = None
    if a.omega is not None and b.omega is not None:
        omega = _embed(a.omega, n) + _embed(b.omega, n, a.dim)
    return _spec_from_cdga(name, c, None, omega, flags)


def _times_circle(base: AlgebraSpec) -> AlgebraSpec:
    n = base.dim + 1
    c = circle_product(base.cdga())
    return _spec_from_cdga(
        base.name + "_x_s1",
        c,
        Form.gen(n, n),
        _embed(base.omega, n),
        base.flags - {"model_level"},
    )


_COMPOSITES = {
    "kt_x_kt": lambda: _sum("kt_x_kt", registry("kt"), registry("kt"), ("nilpotent", "unimodular")),
    "g6_78_x_g6_78": lambda: _sum(
        "g6_78_x_g6_78", registry("g6_78"), registry("g6_78"), ("completely_solvable", "unimodular")
    ),
    "g7": _g7,
}

# entries listed by ``corpus --all``; any symplectic entry also has an _x_s1 variant
CORPUS = (
    "torus_4",
    "torus_5",
    "torus_6",
    "torus_7",
    "heisenberg",
    "kt",
    "e4",
    "g6_78",
    "nil5_cosymp",
    "solv5",
    "h7",
    "g7",
    "kt_x_kt",
    "g6_78_x_g6_78",
    "kt_x_s1",
    "e4_x_s1",
    "g6_78_x_s1",
    "h7_x_s1",
    "kt_x_kt_x_s1",
    "g6_78_x_g6_78_x_s1",
)


@lru_cache(maxsize=None)
def registry(name: str) -> AlgebraSpec:
    """Built-in example by name (``torus_<n>``, ``<symplectic entry>_x_s1``, ...)."""
    if m := re.fullmatch(r"torus_(\d+)", name):
        n = int(m.group(1))
        if n < 1:
            raise UnknownEntryError(f"no registry entry {name!r}")
        return torus(n)
    if name in _TEXTS:
        return parse(_dedent(_TEXTS[name]))
    if name in _COMPOSITES:
        return _COMPOSITES[name]()
    if name.endswith("_x_s1"):
        base = registry(name[: -len("_x_s1")])
        if base.omega is None or base.dim % 2 or base.eta is not None:
            raise UnknownEntryError(f"no registry entry {name!r}: the base is not symplectic")
        return _times_circle(base)
    raise UnknownEntryError(f"no registry entry {name!r}")


def _dedent(text: str) -> str:
    return "\n".join(line.strip() for line in text.strip().splitlines()) + "\n"


def registry_names() -> tuple[str, ...]:
    return CORPUS
