import io
import json
from fractions import Fraction as F

from rich.console import Console

from core.gdof import AntennaConfig, gdof_region, split_region, symmetric_curve
from core.numeric_verify import SlopeReport, SuiteResult
from core.output_formatter import (
    OutputFormatter,
    curve_to_csv,
    curve_to_json,
    region_from_json,
    region_to_json,
    split_to_csv,
    split_to_json,
    suite_to_csv,
    suite_to_json,
    vertices_to_csv,
)
from core.polytope import find_split


def test_region_json_round_trip(example1):
    region = gdof_region(*example1)
    assert region_from_json(region_to_json(region)) == region


def test_region_json_has_decimal_vertex(example1):
    data = json.loads(region_to_json(gdof_region(*example1)))
    approx = [[v["approx"] for v in point] for point in data["vertices"]]
    assert [1.8, 1.6] in approx


def test_curve_csv_is_two_column():
    curve = symmetric_curve(AntennaConfig(1, 1, 1, 1), [0, F(1, 2), 1])
    lines = curve_to_csv(curve).splitlines()
    assert lines == ["alpha,d_s", "0,1", "0.5,0.5", "1,0.5"]


def test_curve_json_exact():
    curve = symmetric_curve(AntennaConfig(1, 1, 1, 1), [F(2, 3)])
    data = json.loads(curve_to_json(curve))
    assert data["columns"] == ["alpha", "d_s"]
    assert data["points"][0][1] == {"num": 2, "den": 3, "approx": 2 / 3}


def test_vertices_csv(example2):
    lines = vertices_to_csv(gdof_region(*example2)).splitlines()
    assert lines[0] == "d1,d2"
    assert "3,0.5" in lines


def test_split_outputs(example1):
    constraints = split_region(*example1)
    data = json.loads(split_to_json(constraints, find_split(constraints, 1, 2)))
    assert data["variables"] == ["d1p", "d1c", "d2p", "d2c"]
    assert len(data["constraints"]) == 14
    assert data["feasible"] is True
    witness = {k: F(v["num"], v["den"]) for k, v in data["witness"].items()}
    assert witness["d1p"] + witness["d1c"] == 1
    assert witness["d2p"] + witness["d2c"] == 2
    assert split_to_csv(constraints).splitlines()[1] == "rx1.private,1,0,0,0,1.8"


def sample_suite() -> SuiteResult:
    return SuiteResult("custom", [
        SlopeReport("ok", 0, F(2), 2.01, (1e6, 1e9)),
        SlopeReport("bad", 1, F(1), 1.5, (1e6, 1e9)),
    ])


def test_suite_serializers():
    data = json.loads(suite_to_json(sample_suite()))
    assert data["suite"] == "custom"
    assert [r["pass"] for r in data["reports"]] == [True, False]
    assert data["pass"] is False
    assert suite_to_csv(sample_suite()).splitlines()[0] == "label,trial,predicted,estimated,abs_error,pass"


def test_rich_tables(example1):
    buffer = io.StringIO()
    formatter = OutputFormatter(Console(file=buffer, width=160, color_system=None))
    formatter.print_region(gdof_region(*example1))
    formatter.print_suite(sample_suite())
    constraints = split_region(*example1)
    formatter.print_split(constraints, find_split(constraints, 3, 2))
    text = buffer.getvalue()
    assert "double2" in text
    assert "PASS" in text and "FAIL" in text
    assert "Infeasible" in text
