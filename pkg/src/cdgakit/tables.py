"""Verdict tables for the registry entries that realise the classification rows.

Three tables are rendered, one line per entry::

    table1 <entry> <formality> <lefschetz> <odd Betti numbers even>
    table3 <entry> <formality> <lefschetz> <b1 odd>
    table4 <entry> <formality> <lefschetz> <b1 = 1>

Formality is three-valued (``formal`` only through the nilpotent criterion,
``non-formal`` only from a nonvanishing triple product, ``undetermined``
otherwise).  Table 1 uses the symplectic Lefschetz map and Table 3 the map on
xi-invariant cohomology.

Table 4 entries are not Lie models: their Betti numbers come from
``blowup_betti`` and ``kunneth_betti``.  There the Lefschetz column can only
be decided negatively (a factor K with some odd b_(2k+1) cannot be Lefschetz),
so it reads ``no`` or ``unobstructed``, and formality is ``not-modeled``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .corpus import registry
from .report import AnalysisReport, report
from .topology import blowup_betti, kunneth_betti

TABLE1 = ("torus_4", "torus_6", "g6_78_x_g6_78", "g6_78", "e4", "kt_x_kt", "kt")
TABLE3 = ("torus_5", "torus_7", "g6_78_x_g6_78_x_s1", "g6_78_x_s1", "kt_x_kt_x_s1", "e4_x_s1", "kt_x_s1")

CIRCLE = (1, 1)
KT_BETTI = (1, 3, 4, 3, 1)


def cpn_betti(n: int) -> tuple[int, ...]:
    return tuple(1 if k % 2 == 0 else 0 for k in range(2 * n + 1))


def _blowup_kt_cp5() -> tuple[int, ...]:
    # KT (real dimension 4) inside CP^5 (real dimension 10), codimension 6
    return blowup_betti(cpn_betti(5), KT_BETTI, 6)


TABLE4: dict[str, Callable[[], tuple[int, ...]]] = {
    "cp5_x_s1": lambda: cpn_betti(5),
    "blowup_kt_cp5_x_s1": _blowup_kt_cp5,
}


def _yn(b: bool) -> str:
    return "yes" if b else "no"


@dataclass(frozen=True)
class TableRow:
    table: str
    entry: str
    formality: str
    lefschetz: str
    parity: str

    def line(self) -> str:
        return f"{self.table} {self.entry} {self.formality} {self.lefschetz} {self.parity}"


def verdict_report(name: str) -> AnalysisReport:
    """The report the tables are read from (one triple obstruction suffices)."""
    return report(registry(name), representatives=False, massey_limit=1)


def _model_row(table: str, name: str, reports: Mapping[str, AnalysisReport]) -> TableRow:
    rep = reports[name] if name in reports else verdict_report(name)
    if rep.lefschetz is None:
        raise ValueError(f"{name} carries no structure, so it has no Lefschetz verdict")
    b = rep.betti
    if table == "table1":
        parity = all(x % 2 == 0 for x in b[1::2])
    else:
        parity = b[1] % 2 == 1
    return TableRow(table, name, rep.formality.verdict, _yn(rep.lefschetz.lefschetz_property), _yn(parity))


def _betti_row(name: str) -> TableRow:
    k = TABLE4[name]()
    total = kunneth_betti(k, CIRCLE)
    obstructed = any(x % 2 for x in k[1::2])
    return TableRow("table4", name, "not-modeled", "no" if obstructed else "unobstructed", _yn(total[1] == 1))


def rows(reports: Mapping[str, AnalysisReport] | None = None) -> list[TableRow]:
    """Table rows; ``reports`` may supply already computed verdict reports by name."""
    reports = reports or {}
    out = [_model_row("table1", n, reports) for n in TABLE1]
    out += [_model_row("table3", n, reports) for n in TABLE3]
    out += [_betti_row(n) for n in TABLE4]
    return out


def render(table_rows: list[TableRow] | None = None) -> str:
    table_rows = rows() if table_rows is None else table_rows
    return "".join(r.line() + "\n" for r in table_rows)
