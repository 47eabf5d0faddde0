import csv
import io
import json
import random
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings, strategies as st
from synthetic import random_project

from modindex.charts import CHART_SERIES, render_chart, write_charts
from modindex.errors import UsageError
from modindex.evolution import COLUMNS, EvolutionRow, EvolutionTable
from modindex.java.frontend import extract_project
from modindex.quality import analyze_system
from modindex.report import (ReportDocument, explain, format_float, render_csv, worst_offenders)

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def demo_doc():
    from conftest import DEMO
    return ReportDocument.from_analysis(analyze_system(extract_project(DEMO, workers=1)))


def test_format_float():
    assert format_float(0.5) == "0.500000"
    assert format_float(1.0) == "1.000000"
    assert format_float(0.30613422928485173) == "0.30613422928485173"
    assert format_float(1.153e-4) == "0.0001153"
    assert format_float(12.5) == "12.500000"
    assert float(format_float(1e-20)) == 1e-20
    with pytest.raises(ValueError):
        format_float(float("nan"))


@settings(max_examples=300)
@given(st.floats(min_value=0, max_value=1e9, allow_nan=False))
def test_format_float_round_trips(x):
    text = format_float(x)
    assert float(text) == x
    assert len(text.split(".")[1]) >= 6


def test_json_round_trip(demo_doc):
    text = demo_doc.to_json()
    back = ReportDocument.from_json(text)
    assert back == demo_doc
    assert back.to_json() == text
    assert json.loads(text)["schema_version"] == "1.0"


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_report_round_trips(seed):
    doc = ReportDocument.from_analysis(analyze_system(random_project(random.Random(seed))), worst=3)
    assert ReportDocument.from_json(doc.to_json()) == doc


def test_unknown_schema_rejected(demo_doc):
    d = json.loads(demo_doc.to_json())
    d["schema_version"] = "9.9"
    with pytest.raises(ValueError, match="schema"):
        ReportDocument.from_dict(d)


def test_worst_offenders(demo_doc, demo_expected):
    (worst,) = worst_offenders(demo_doc, 1)
    assert worst.name == demo_expected["worst_class"]
    assert worst.lever == demo_expected["worst_lever"]
    assert len(worst_offenders(demo_doc, 100)) == 8
    with pytest.raises(UsageError):
        worst_offenders(demo_doc, 0)


def test_worst_offenders_tie_break_by_name():
    import dataclasses
    from modindex.report import ClassEntry, PackageEntry
    entry = ClassEntry("z", "class", 10, 1, 1, 0.5, 0.5, 0.5, 0.5)
    pkg = PackageEntry("p", 0.5, tuple(dataclasses.replace(entry, name=f"p.C{i}")
                                       for i in (3, 1, 2)))
    doc = ReportDocument("x", "", None, (pkg,), None)
    assert [o.name for o in worst_offenders(doc, 3)] == ["p.C1", "p.C2", "p.C3"]


def test_explain(demo_doc):
    text = explain(demo_doc, "demo.app.Report")
    assert "LCOM4  = 2" in text and "h_q" in text
    with pytest.raises(UsageError):
        explain(demo_doc, "demo.Nope")


def row(label, **values):
    base = {c: 1 for c in COLUMNS[2:6]} | {c: 0.5 for c in COLUMNS[6:]}
    base.update(values)
    return EvolutionRow(label, "2001-02-03", **base)


def test_csv_line_counts():
    assert render_csv(EvolutionTable("x", (row("a"),))).count("\n") == 2
    assert render_csv(EvolutionTable("x", ())) == ",".join(COLUMNS) + "\n"


def test_report_csv_agrees_with_json(demo_doc):
    d = json.loads(demo_doc.to_json())
    json_classes = {c["name"]: c for p in d["packages"] for c in p["classes"]}
    rows = list(csv.DictReader(io.StringIO(render_csv(demo_doc))))
    assert len(rows) == 8
    for r in rows:
        c = json_classes[r["class"]]
        for key in ("loc_q", "f_q", "h_q", "c_q"):
            assert round(float(r[key]), 6) == round(c[key], 6)
            assert r[key] == format_float(c[key])


def test_evolution_csv_agrees_with_json(tmp_path):
    from modindex.report import dumps, evolution_document
    table = EvolutionTable("x", (row("a", m_i=0.1234567891), row("b", m_i=0.3)))
    doc = json.loads(dumps(evolution_document(table)))
    rows = list(csv.DictReader(io.StringIO(render_csv(table))))
    for j, c in zip(doc["rows"], rows):
        for key in COLUMNS[2:]:
            assert float(c[key]) == pytest.approx(j[key], abs=1e-6)
    assert doc["growth"]["m_i"]["ratio"] == pytest.approx(0.3 / 0.1234567891, abs=1e-9)


def parse_svg(text):
    assert "href" not in text and "url(" not in text
    return ET.fromstring(text.encode())


def test_single_point_chart():
    root = parse_svg(render_chart("m_i", ["1.0"], [0.3]))
    assert len(root.findall(f".//{SVG}circle")) == 1


def test_flat_quality_series_on_unit_axis():
    root = parse_svg(render_chart("m_i", [str(i) for i in range(5)], [0.3] * 5))
    ys = {c.get("cy") for c in root.iter(f"{SVG}circle")}
    assert len(ys) == 1
    ticks = [t.text for t in root.find(f".//{SVG}g[@class='y-ticks']")]
    assert ticks[0] == "0.0" and ticks[-1] == "1.0"


def test_many_point_chart_markers_monotone():
    ys = [5835 + 2600 * i for i in range(23)]
    root = parse_svg(render_chart("ncloc", [f"v{i}" for i in range(23)], ys))
    xs = [float(c.get("cx")) for c in root.iter(f"{SVG}circle")]
    assert len(xs) == 23 and xs == sorted(xs) and len(set(xs)) == 23


def test_chart_rejects_empty():
    with pytest.raises(ValueError):
        render_chart("ncloc", [], [])


def test_write_charts(tmp_path):
    table = EvolutionTable("demo", (row("a"), row("b", ncloc=4)))
    paths = write_charts(table, tmp_path / "charts")
    assert sorted(p.stem for p in paths) == sorted(CHART_SERIES)
    for p in paths:
        parse_svg(p.read_text())
