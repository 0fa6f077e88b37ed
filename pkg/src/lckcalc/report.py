"""Harmonic dimension tables with deterministic row ordering."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .complexes import InvariantComplex, complex_for
from .foliation import foliation_for
from .models import LieModel, ModelError


@dataclass
class HarmonicTable:
    """Exact kernel dimensions of a model's invariant complex."""

    model: str
    betti: List[int]
    morse_novikov: List[int]
    hodge: Dict[Tuple[int, int], int]
    box_pq: Dict[Tuple[int, int], int]
    box_degree: List[int]
    s_k: Optional[List[int]]
    s_pq: Optional[Dict[Tuple[int, int], int]]
    chi: int
    betti_expected: Optional[List[int]] = None

    @property
    def betti_matches_expected(self) -> Optional[bool]:
        if self.betti_expected is None:
            return None
        return self.betti == self.betti_expected


def harmonic_table(model: LieModel) -> HarmonicTable:
    ic = complex_for(model)
    betti = ic.betti_numbers()
    chi = sum((-1) ** k * b for k, b in enumerate(betti))
    s_k = None
    s_pq = None
    if not model.theta_is_zero() and ic.is_lck and model.vaisman:
        td = foliation_for(ic).transversal_dimensions()
        s_k = td["s_k"]
        s_pq = td["s_pq"]
    return HarmonicTable(
        model=model.name,
        betti=betti,
        morse_novikov=ic.morse_novikov_numbers(),
        hodge=ic.hodge_numbers(),
        box_pq=ic.box_numbers(),
        box_degree=ic.box_degree_numbers(),
        s_k=s_k,
        s_pq=s_pq,
        chi=chi,
        betti_expected=model.expected_betti,
    )


Row = Tuple[str, int, Optional[int], Optional[int], int]


def table_rows(table: HarmonicTable) -> List[Row]:
    """Flat rows (kind, degree, p, q, value), degree-major then p."""
    rows: List[Row] = []
    for k, v in enumerate(table.betti):
        rows.append(("b", k, None, None, v))
    for k, v in enumerate(table.morse_novikov):
        rows.append(("b_theta", k, None, None, v))
    for (p, q), v in sorted(table.hodge.items(), key=lambda kv: (sum(kv[0]), kv[0][0])):
        rows.append(("h", p + q, p, q, v))
    for k, v in enumerate(table.box_degree):
        rows.append(("h_box_total", k, None, None, v))
    for (p, q), v in sorted(table.box_pq.items(), key=lambda kv: (sum(kv[0]), kv[0][0])):
        rows.append(("h_box", p + q, p, q, v))
    if table.s_k is not None:
        for k, v in enumerate(table.s_k):
            rows.append(("s", k, None, None, v))
    if table.s_pq is not None:
        for (p, q), v in sorted(
            table.s_pq.items(), key=lambda kv: (sum(kv[0]), kv[0][0])
        ):
            rows.append(("s", p + q, p, q, v))
    rows.append(("chi", 0, None, None, table.chi))
    return rows


def rows_to_csv(rows: List[Row]) -> str:
    lines = ["kind,degree,p,q,value"]
    for kind, degree, p, q, value in rows:
        lines.append(
            f"{kind},{degree},{'' if p is None else p},{'' if q is None else q},{value}"
        )
    return "\n".join(lines) + "\n"


def rows_to_text(table: HarmonicTable, rows: List[Row]) -> str:
    lines = [f"harmonic table: {table.model}"]
    for kind, degree, p, q, value in rows:
        if p is None:
            lines.append(f"  {kind}[{degree}] = {value}")
        else:
            lines.append(f"  {kind}[{p},{q}] = {value}")
    if table.betti_expected is not None:
        status = "match" if table.betti_matches_expected else "MISMATCH"
        lines.append(
            f"  expected betti {table.betti_expected}: {status}"
        )
    return "\n".join(lines) + "\n"
