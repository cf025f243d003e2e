"""Artifact rendering: schemas, float round-trips, and determinism."""

import json
import math
import xml.etree.ElementTree as ET

from entrolab import run_demon, run_mix_distinct, run_partition_identical
from entrolab import szilard_cycle, gibbs_mixing_composite, PressureDemon
from entrolab import outputs


def test_trace_csv_schema_and_roundtrip():
    trace = run_partition_identical(8.0, 1.0, 1.0, steps=4)
    text = outputs.trace_csv(trace)
    lines = text.splitlines()
    header = lines[0].split(",")
    assert header[0] == "progress"
    assert header[-4:] == ["dS_th", "material_term", "dS_st", "info_bits"]
    assert any(col.startswith("P_") for col in header)
    assert any(col.startswith("mu_") for col in header)
    assert len(lines) == 1 + len(trace.snapshots)
    assert text.endswith("\n") and "\r" not in text
    # repr floats must round-trip exactly
    final = lines[-1].split(",")
    ds_st = float(final[header.index("dS_st")])
    assert ds_st == trace.final_ledger.dS_statistical


def test_mix_trace_csv_has_per_phase_columns():
    trace = run_mix_distinct(4.0, 4.0, 1.0, 1.0, steps=4)
    header = outputs.trace_csv(trace).splitlines()[0].split(",")
    for col in ("P_alpha", "P_beta", "P_gamma", "mu_alpha_A", "mu_beta_A",
                "mu_beta_B", "mu_gamma_B"):
        assert col in header


def test_float_formatting_normalizes_negative_zero():
    assert outputs._f(-0.0) == "0.0"
    assert outputs._f(0.1) == "0.1"
    assert float(outputs._f(1.0 / 3.0)) == 1.0 / 3.0


def test_json_text_is_sorted_and_newline_terminated():
    text = outputs.json_text({"b": 1, "a": [2.5, None], "c": {"z": 1, "y": 2}})
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed == {"b": 1, "a": [2.5, None], "c": {"z": 1, "y": 2}}
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')


def test_summary_payload_shape():
    payload = outputs.summary_payload("partition", "reduced", {"steps": 4},
                                      {"x": 1.0}, ["partition_trace.csv"])
    assert payload["schema"] == "entrolab.summary/1"
    assert payload["tool"]["name"] == "entrolab"
    assert payload["experiment"] == "partition"
    assert payload["artifacts"] == ["partition_trace.csv"]


def test_svg_is_wellformed_and_self_contained():
    trace = run_partition_identical(8.0, 1.0, 1.0, steps=6)
    svg = outputs.trace_svg(trace)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert "http" not in svg.replace("http://www.w3.org/2000/svg", "")
    assert "timestamp" not in svg.lower()
    assert "date" not in svg.lower()
    assert svg.count("<polyline") == 3


def test_svg_downsamples_long_series():
    xs = [float(i) for i in range(5000)]
    ys = [math.sin(i / 100.0) for i in range(5000)]
    svg = outputs.line_chart_svg("t", "x", "y", [("s", xs, ys)])
    points = svg.split('points="')[1].split('"')[0].split()
    assert len(points) <= 700
    # endpoints survive
    assert points[0].startswith("70.00,") or "," in points[0]
    ET.fromstring(svg)


def test_demon_artifacts():
    trace = run_demon(n=30, box=(2.0, 1.0), t0=1.0, policy=PressureDemon(),
                      duration=5.0, seed=21)
    csv_text = outputs.demon_events_csv(trace)
    header = csv_text.splitlines()[0].split(",")
    assert header == ["time", "kind", "particle", "bit_recorded", "side_from"]
    assert len(csv_text.splitlines()) == 1 + len(trace.events)
    payload = outputs.demon_series_payload(trace)
    assert payload["policy"] == "pressure_demon"
    assert len(payload["samples"]) == len(trace.ledger_series)
    assert {"time", "n_left", "n_right", "dS_sides", "dS_st_paper",
            "brillouin_balance", "paper_margin"} <= set(payload["samples"][0])
    ET.fromstring(outputs.demon_svg(trace))


def test_szilard_and_composite_artifacts():
    cycle = szilard_cycle(1.0, 32)
    rows = outputs.szilard_csv(cycle).splitlines()
    assert rows[0] == "step,cumulative_work"
    assert len(rows) == 1 + 32
    ET.fromstring(outputs.szilard_svg(cycle))

    result = gibbs_mixing_composite(4.0, 1.0, 1.0, steps=6)
    comp_rows = outputs.composite_csv(result).splitlines()
    assert comp_rows[0] == "component,dS_th,material_term,dS_st,info_bits"
    assert [r.split(",")[0] for r in comp_rows[1:]] == [
        "expansion", "relocation", "total"]


def test_renderers_are_deterministic():
    def render():
        trace = run_demon(n=25, box=(2.0, 1.0), t0=1.0, policy=PressureDemon(),
                          duration=4.0, seed=3)
        return (outputs.demon_events_csv(trace),
                outputs.json_text(outputs.demon_series_payload(trace)),
                outputs.demon_svg(trace))

    assert render() == render()
