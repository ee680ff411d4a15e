# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# core/output_formatter.py — JSON / CSV Serialization & Rich Table Output
# ============================================================

import csv
import io
import json
from typing import Any, Dict, Iterable, List, Optional, Sequence

from rich import box
from rich.console import Console
from rich.table import Table
from rich.text import Text

from core.gdof import PiecewiseLinearCurve
from core.numeric_verify import SuiteResult
from core.polytope import Halfspace, Region2, SplitRegion, SplitWitness, SPLIT_VARIABLES
from utils.helpers import format_rational, rational_from_json, rational_to_json


def _dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2)


def _number(value) -> str:
    return f"{float(value):.10g}"


# ── JSON ──────────────────────────────────────────────────────

def region_to_json(region: Region2) -> str:
    return _dumps(region.to_dict())


def region_from_json(text: str) -> Region2:
    """Inverse of region_to_json; vertices are read back, not recomputed."""
    data = json.loads(text)
    halfspaces = tuple(
        Halfspace(
            tuple(rational_from_json(c) for c in h["c"]),
            rational_from_json(h["rhs"]),
            label=h.get("label", ""),
        )
        for h in data["halfspaces"]
    )
    vertices = tuple(tuple(rational_from_json(v) for v in point) for point in data["vertices"])
    return Region2(halfspaces=halfspaces, vertices=vertices)


def split_to_json(split: SplitRegion, witness: Optional[SplitWitness] = None) -> str:
    payload: Dict[str, Any] = {
        "variables": list(SPLIT_VARIABLES),
        "constraints": [h.to_dict() for h in split.halfspaces],
    }
    if witness is not None:
        payload.update(witness.to_dict())
    return _dumps(payload)


def curve_to_json(curve: PiecewiseLinearCurve, value_name: str = "d_s") -> str:
    return _dumps({
        "columns": ["alpha", value_name],
        "points": [[rational_to_json(a), rational_to_json(v)] for a, v in curve.points],
    })


def suite_to_json(result: SuiteResult) -> str:
    return _dumps(result.to_dict())


# ── CSV ───────────────────────────────────────────────────────

def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_number(v) for v in row])
    return buffer.getvalue()


def curve_to_csv(curve: PiecewiseLinearCurve, value_name: str = "d_s") -> str:
    return _csv(("alpha", value_name), curve.rows())


def vertices_to_csv(region: Region2) -> str:
    return _csv(("d1", "d2"), region.vertices)


def split_to_csv(split: SplitRegion) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("label",) + SPLIT_VARIABLES + ("rhs",))
    for h in split.halfspaces:
        writer.writerow([h.label] + [_number(c) for c in h.coefficients] + [_number(h.rhs)])
    return buffer.getvalue()


def suite_to_csv(result: SuiteResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("label", "trial", "predicted", "estimated", "abs_error", "pass"))
    for r in result.reports:
        writer.writerow((r.label, r.trial, _number(r.predicted), f"{r.estimated:.6f}",
                         f"{r.abs_error:.6f}", int(r.passed)))
    return buffer.getvalue()


# ── Rich Tables ───────────────────────────────────────────────

class OutputFormatter:
    """Human-readable tables on a rich Console."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def _table(self, title: str, columns: List[str]) -> Table:
        table = Table(
            title=title,
            box=box.SIMPLE_HEAVY,
            show_header=True,
            header_style="bold cyan",
            border_style="dim white",
            pad_edge=False,
        )
        for name in columns:
            table.add_column(name, style="white")
        return table

    def print_region(self, region: Region2, title: str = "GDoF region"):
        bounds = self._table(f"{title}: bounds", ["label", "inequality"])
        for h in region.halfspaces:
            terms = " + ".join(f"{format_rational(c)}·d{k + 1}" for k, c in enumerate(h.coefficients) if c != 0)
            bounds.add_row(h.label or "-", f"{terms or '0'} ≤ {format_rational(h.rhs)}")
        self.console.print(bounds)

        vertices = self._table(f"{title}: vertices", ["#", "d1", "d2", "d1+d2"])
        for k, (x, y) in enumerate(region.vertices):
            vertices.add_row(str(k), format_rational(x), format_rational(y), format_rational(x + y))
        if region.is_empty:
            self.console.print(Text("Empty region", style="dim italic yellow"))
        else:
            self.console.print(vertices)

    def print_split(self, split: SplitRegion, witness: Optional[SplitWitness] = None):
        table = self._table("Split constraints", ["label"] + list(SPLIT_VARIABLES) + ["rhs"])
        for h in split.halfspaces:
            table.add_row(h.label, *[format_rational(c) for c in h.coefficients], format_rational(h.rhs))
        self.console.print(table)
        if witness is None:
            return
        status = Text()
        if witness.feasible:
            status.append("Feasible", style="bold green")
            status.append(f": {witness.split}", style="green")
        else:
            status.append("Infeasible", style="bold red")
            status.append(f" at ({witness.point[0]}, {witness.point[1]})", style="red")
        self.console.print(status)

    def print_curve(self, curve: PiecewiseLinearCurve, title: str = "Symmetric GDoF", value_name: str = "d_s"):
        table = self._table(title, ["alpha", value_name])
        for alpha, value in curve.points:
            table.add_row(format_rational(alpha), format_rational(value))
        self.console.print(table)

    def print_suite(self, result: SuiteResult):
        table = self._table(f"Suite {result.suite}", ["label", "trial", "predicted", "estimated", "error", "status"])
        for r in result.reports:
            status = Text("PASS", style="bold green") if r.passed else Text("FAIL", style="bold red")
            table.add_row(r.label, str(r.trial), format_rational(r.predicted),
                          f"{r.estimated:.4f}", f"{r.abs_error:.4f}", status)
        self.console.print(table)

        verdicts = self._table("Median per bound", ["label", "predicted", "median error", "max error", "status"])
        for v in result.verdicts():
            status = Text("PASS", style="bold green") if v.passed else Text("FAIL", style="bold red")
            verdicts.add_row(v.label, format_rational(v.predicted), f"{v.median_error:.4f}",
                             f"{v.max_error:.4f}", status)
        self.console.print(verdicts)

        summary = Text()
        summary.append(f"{len(result.reports)} checks, {result.within_share():.0%} within tolerance, ", style="dim")
        summary.append("all bounds passed" if result.passed else "failures present",
                       style="green" if result.passed else "bold red")
        self.console.print(summary)
