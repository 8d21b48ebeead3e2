"""Full analysis of one model, rendered as stable ``key = value`` lines.

Machine format: one fact per line, lists in brackets, sections introduced by
``[section]`` lines.  The human format is the same content with the section
headers turned into titles and keys padded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cdga import AlgebraMap, is_nilpotent, is_unimodular
from .cohomology import cohomology, induced_map
from .corpus import AlgebraSpec, monodromy_images, registry
from .errors import StructureError
from .exterior import Vector, format_form
from .lefschetz import (
    LefschetzReport,
    algebraic_1_lefschetz,
    k_cosymplectic_lefschetz,
    symplectic_lefschetz,
    xi_invariant_cohomology,
)
from .massey import Formality, massey_scan
from .structures import validate_cosymplectic, validate_symplectic
from .topology import AutomorphismAction, mapping_torus_betti


class FlagMismatch(StructureError):
    module = "corpus_cli"


def _lst(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _vec(v: Vector) -> str:
    return _lst(v.coords)


@dataclass
class AnalysisReport:
    name: str
    dim: int
    jacobi: str = "ok"
    betti: tuple[int, ...] = ()
    representatives: dict[int, list[str]] = field(default_factory=dict)
    euler: int = 0
    nilpotent: bool = False
    unimodular: bool = False
    structure: str = "none"
    xi: Vector | None = None
    theta: Vector | None = None
    invariant_betti: tuple[int, ...] | None = None
    basic_betti: tuple[int, ...] | None = None
    splitting: bool | None = None
    lefschetz: LefschetzReport | None = None
    lefschetz_kind: str | None = None
    one_lefschetz: bool | None = None
    massey_max_degree: int = 0
    massey: list[str] = field(default_factory=list)
    massey_limit: int | None = None
    hasegawa: str | None = None
    formality: Formality | None = None
    manifold_betti: tuple[int, ...] | None = None
    caveats: list[str] = field(default_factory=list)

    def sections(self) -> list[tuple[str, list[tuple[str, str]]]]:
        out: list[tuple[str, list[tuple[str, str]]]] = []
        model = [
            ("name", self.name),
            ("dim", str(self.dim)),
            ("jacobi", self.jacobi),
            ("nilpotent", _yn(self.nilpotent)),
            ("unimodular", _yn(self.unimodular)),
        ]
        out.append(("model", model))
        coh = [("betti", _lst(self.betti)), ("euler", str(self.euler))]
        for k in sorted(self.representatives):
            coh.append((f"H{k}", _lst(self.representatives[k])))
        if self.manifold_betti is not None:
            coh.append(("manifold_betti", _lst(self.manifold_betti)))
        out.append(("cohomology", coh))
        st = [("structure", self.structure)]
        if self.xi is not None:
            st.append(("xi", _vec(self.xi)))
            st.append(("theta", _vec(self.theta)))
            st.append(("reeb_agrees", _yn(self.xi == self.theta)))
        if self.invariant_betti is not None:
            st.append(("invariant_betti", _lst(self.invariant_betti)))
            st.append(("basic_betti", _lst(self.basic_betti)))
            st.append(("splitting", _yn(bool(self.splitting))))
        out.append(("structure", st))
        if self.lefschetz is not None:
            lf = [("kind", self.lefschetz_kind or "")]
            for d in self.lefschetz.degrees:
                lf.append((f"L[{d.k}]", f"rank {d.rank}, src {d.src}, tgt {d.tgt}, iso {_yn(d.bijective)}"))
            lf.append(("lefschetz_type", _yn(self.lefschetz.lefschetz_type)))
            lf.append(("lefschetz_property", _yn(self.lefschetz.lefschetz_property)))
            if self.one_lefschetz is not None:
                lf.append(("one_lefschetz", _yn(self.one_lefschetz)))
            out.append(("lefschetz", lf))
        ms = [("max_degree", str(self.massey_max_degree)), ("nonvanishing", str(len(self.massey)))]
        if self.massey_limit is not None:
            ms.append(("limit", str(self.massey_limit)))
            ms.append(("truncated", _yn(len(self.massey) >= self.massey_limit)))
        ms += [("triple", line) for line in self.massey]
        if self.hasegawa is not None:
            ms.append(("hasegawa", self.hasegawa))
        if self.formality is not None:
            ms.append(("formality", self.formality.verdict))
            ms.append(("formality_reason", self.formality.reason))
        out.append(("massey", ms))
        if self.caveats:
            out.append(("caveats", [("provenance", c) for c in self.caveats]))
        return out

    def machine_lines(self) -> list[str]:
        lines = []
        for title, items in self.sections():
            lines.append(f"[{title}]")
            lines += [f"{k} = {v}" for k, v in items]
        return lines

    def human_lines(self) -> list[str]:
        lines = []
        for title, items in self.sections():
            lines.append(title.upper())
            width = max((len(k) for k, _ in items), default=0)
            lines += [f"  {k.ljust(width)}  {v}" for k, v in items]
        return lines

    def render(self, machine: bool = True) -> str:
        return "\n".join(self.machine_lines() if machine else self.human_lines()) + "\n"


def report(
    spec: AlgebraSpec,
    max_degree: int | None = None,
    representatives: bool = True,
    massey_limit: int | None = None,
) -> AnalysisReport:
    """Run the whole pipeline on a parsed spec.

    ``massey_limit`` caps the number of nonvanishing triples listed (the scan
    stops there); ``None`` lists them all.

    Raises the module-tagged errors of the inner steps (Jacobi failures,
    non-closed or degenerate structures, declared flags that do not hold).
    """
    c = spec.cdga()
    n = c.n
    r = cohomology(c)
    rep = AnalysisReport(spec.name, n)
    rep.betti = r.betti
    rep.euler = r.euler_characteristic()
    if representatives:
        rep.representatives = {k: [format_form(f) for f in r.basis(k)] for k in range(n + 1)}
    rep.nilpotent = is_nilpotent(c)
    rep.unimodular = is_unimodular(c)
    if "nilpotent" in spec.flags and not rep.nilpotent:
        raise FlagMismatch(f"{spec.name} is flagged nilpotent but its lower central series does not terminate")
    if "unimodular" in spec.flags and not rep.unimodular:
        raise FlagMismatch(f"{spec.name} is flagged unimodular but some ad(x) has nonzero trace")

    if spec.omega is not None and spec.eta is None:
        s = validate_symplectic(c, spec.omega)
        rep.structure = "symplectic"
        rep.lefschetz = symplectic_lefschetz(r, s)
        rep.lefschetz_kind = "symplectic"
    elif spec.omega is not None and spec.eta is not None:
        cs = validate_cosymplectic(c, spec.eta, spec.omega)
        rep.structure = "cosymplectic"
        rep.xi, rep.theta = cs.xi, cs.theta
        sub = xi_invariant_cohomology(c, cs, r)
        rep.invariant_betti = sub.invariant_betti
        rep.basic_betti = sub.basic_betti
        rep.splitting = sub.splitting_holds()
        rep.lefschetz = k_cosymplectic_lefschetz(sub, cs)
        rep.lefschetz_kind = "k_cosymplectic"
        rep.one_lefschetz = algebraic_1_lefschetz(c, spec.eta, spec.omega, r).is_1_lefschetz
        if not cs.reeb_agrees:
            rep.caveats.append("algebraic Reeb vector differs from the Reeb vector")

    rep.massey_max_degree = min(n, n - 1 if max_degree is None else max_degree)
    if massey_limit is not None and massey_limit < 1:
        raise ValueError("massey_limit must be positive (or None for no limit)")
    rep.massey_limit = massey_limit
    found = massey_scan(r, rep.massey_max_degree, massey_limit)
    rep.massey = [m.line(r) for m in found]
    if rep.nilpotent:
        rep.hasegawa = "formal" if c.is_abelian() else "non-formal"
        rep.formality = Formality(rep.hasegawa, "hasegawa")
    elif found:
        rep.formality = Formality("non-formal", "massey")
    else:
        rep.formality = Formality("undetermined", "no triple obstruction found")

    if spec.fiber is not None:
        fib = registry(spec.fiber)
        fr = cohomology(fib.cdga())
        phi = AlgebraMap(fib.dim, monodromy_images(spec, fib.dim))
        act = AutomorphismAction(induced_map(fr, phi).matrices)
        rep.manifold_betti = mapping_torus_betti(fr.betti, act)
    if "model_level" in spec.flags:
        rep.caveats.append(
            "model-level: cochain model cohomology; manifold Betti numbers come from the mapping torus of the fiber"
        )
    return rep
