"""Deterministic CSV/JSON/SVG rendering of results.

Byte-identical reruns are part of the contract, so: floats are written with
repr (shortest round-trip), newlines are always "\\n", JSON is sorted and
indented, and the SVG is assembled by hand with fixed formatting so it
carries no timestamps or library metadata.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

from . import __version__ as _version
from .demon import DemonTrace, accounting_report
from .ledger import EntropyLedger, ProcessTrace, SecondLawVerdict
from .processes import CompositeResult
from .lattice import McEstimate
from .szilard import SzilardCycle

SUMMARY_SCHEMA = "entrolab.summary/1"
CONFIG_SCHEMA = "entrolab.config/1"

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _f(x: float) -> str:
    # + 0.0 collapses negative zero so equal values serialize identically.
    return repr(float(x) + 0.0)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def ledger_payload(led: EntropyLedger) -> dict:
    return {
        "dS_th": led.dS_thermo,
        "material_term": led.material_term,
        "dS_st": led.dS_statistical,
        "info_bits": led.info_delta_bits + 0.0,
    }


def verdict_payload(v: SecondLawVerdict) -> dict:
    return {
        "satisfied_statistical": v.satisfied_statistical,
        "satisfied_classical": v.satisfied_classical,
        "violations_statistical": list(v.violations_statistical),
        "violations_classical": list(v.violations_classical),
        "max_abs_statistical_margin": max((abs(m) for m in v.statistical_margins), default=0.0),
        "cumulative_statistical_margin": v.cumulative_statistical_margin,
        "cumulative_classical_margin": v.cumulative_classical_margin,
        "tolerance": v.tolerance,
    }


def summary_payload(experiment: str, units: str, config: dict, results: dict,
                    artifact_names: Sequence[str]) -> dict:
    return {
        "schema": SUMMARY_SCHEMA,
        "tool": {"name": "entrolab", "version": _version},
        "experiment": experiment,
        "units": units,
        "config": config,
        "results": results,
        "artifacts": sorted(artifact_names),
    }


def trace_csv(trace: ProcessTrace) -> str:
    """One row per snapshot: progress, per-phase P, per-phase mu, ledger."""
    labels = sorted(trace.snapshots[0].pressures)
    mu_cols = sorted(
        (label, sp)
        for label in labels
        for sp in trace.snapshots[0].potentials[label]
    )
    header = (
        ["progress"]
        + [f"P_{lb}" for lb in labels]
        + [f"mu_{lb}_{sp}" for lb, sp in mu_cols]
        + ["dS_th", "material_term", "dS_st", "info_bits"]
    )
    rows = []
    for snap in trace.snapshots:
        led = snap.ledger
        rows.append(
            [_f(snap.progress)]
            + [_f(snap.pressures[lb]) for lb in labels]
            + [_f(snap.potentials[lb][sp]) for lb, sp in mu_cols]
            + [_f(led.dS_thermo), _f(led.material_term),
               _f(led.dS_statistical), _f(led.info_delta_bits)]
        )
    return csv_text(header, rows)


def demon_events_csv(trace: DemonTrace) -> str:
    header = ["time", "kind", "particle", "bit_recorded", "side_from"]
    rows = [
        [_f(e.time), e.kind, str(e.particle), str(int(e.bit_recorded)), str(e.side_from)]
        for e in trace.events
    ]
    return csv_text(header, rows)


def demon_series_payload(trace: DemonTrace) -> dict:
    report = accounting_report(trace)
    samples = []
    for s, row in zip(trace.ledger_series, report.rows):
        led = s.ledger
        samples.append({
            "time": s.time,
            "n_left": s.n_left,
            "n_right": s.n_right,
            "temp_left": s.temp_left,
            "temp_right": s.temp_right,
            "kinetic_energy": s.kinetic_energy,
            "bits_recorded": led.bits_recorded,
            "bits_erased": led.bits_erased,
            "landauer_heat": led.landauer_heat,
            "dS_sides": led.dS_sides,
            "dS_st_paper": led.dS_st_paper,
            "material_term": led.material_term,
            "brillouin_balance": led.brillouin_balance,
            "paper_margin": row.paper_margin,
        })
    return {
        "policy": trace.policy_name,
        "n_particles": trace.n_particles,
        "box": list(trace.box),
        "t0": trace.t0,
        "duration": trace.duration,
        "seed": trace.seed,
        "memory_capacity": trace.memory_capacity,
        "samples": samples,
        "accounting": {
            "brillouin_nonnegative": report.brillouin_nonnegative,
            "paper_inequality_satisfied": report.paper_inequality_satisfied,
        },
    }


def szilard_payload(cycle: SzilardCycle) -> dict:
    return {
        "work_extracted": cycle.work_extracted,
        "ideal_work": cycle.ideal_work,
        "relative_shortfall": 1.0 - cycle.work_extracted / cycle.ideal_work,
        "expansion_steps": cycle.expansion_steps,
        "bits_recorded": cycle.bits_recorded,
        "bits_erased": cycle.bits_erased,
        "erasure_heat": cycle.erasure_heat,
        "bath_entropy_delta": cycle.bath_entropy_delta,
        "landauer_net": cycle.landauer_net,
        "memory_delta_bits": cycle.memory_delta_bits,
        "cycle_closed": cycle.cycle_closed,
        "dS_measurement": cycle.dS_measurement,
        "dS_expansion": cycle.dS_expansion,
        "temperature": cycle.temperature,
        "volume": cycle.volume,
    }


def composite_payload(result: CompositeResult) -> dict:
    return {
        "distinguishable": result.distinguishable,
        "expansion": ledger_payload(result.expansion),
        "relocation": ledger_payload(result.relocation),
        "total": ledger_payload(result.total),
    }


def mc_payload(est: McEstimate) -> dict:
    return {
        "p_hat": est.p_hat,
        "std_err": est.std_err,
        "hits": est.hits,
        "samples": est.samples,
        "lambda": est.lamb,
        "n": est.n,
        "seed": est.seed,
        "sample_offset": est.sample_offset,
        "p_exact": est.p_exact,
        "deviation_in_std_err": (
            abs(est.p_hat - est.p_exact) / est.std_err if est.std_err > 0 else 0.0
        ),
        "low_statistics": est.low_statistics,
    }


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        pad = max(abs(lo) * 0.1, 1e-12)
        lo, hi = lo - pad, hi + pad
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _fmt_tick(v: float) -> str:
    return format(v, ".6g")


def _downsample(xs: Sequence[float], ys: Sequence[float], limit: int = 600
                ) -> tuple[list[float], list[float]]:
    if len(xs) <= limit:
        return list(xs), list(ys)
    stride = -(-len(xs) // limit)
    keep_x = list(xs[::stride])
    keep_y = list(ys[::stride])
    if keep_x[-1] != xs[-1]:
        keep_x.append(xs[-1])
        keep_y.append(ys[-1])
    return keep_x, keep_y


def line_chart_svg(title: str, x_label: str, y_label: str,
                   series: Sequence[tuple[str, Sequence[float], Sequence[float]]]) -> str:
    """Fixed-size line chart; axes, grid, legend, nothing external."""
    width, height = 640.0, 400.0
    ml, mr, mt, mb = 70.0, 20.0, 40.0, 45.0
    plot_w, plot_h = width - ml - mr, height - mt - mb

    data = [_downsample(xs, ys) for _, xs, ys in series]
    all_x = [x for xs, _ in data for x in xs]
    all_y = [y for _, ys in data for y in ys]
    if not all_x:
        raise ValueError("chart needs at least one point")
    x_lo, x_hi = min(all_x), max(all_x)
    y_lo, y_hi = min(all_y), max(all_y)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        pad = max(abs(y_lo) * 0.1, 1e-12)
        y_lo, y_hi = y_lo - pad, y_hi + pad
    else:
        pad = 0.05 * (y_hi - y_lo)
        y_lo, y_hi = y_lo - pad, y_hi + pad

    def px(x: float) -> float:
        return ml + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return mt + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="#ffffff"/>',
        f'<text x="{width / 2:.1f}" y="24" font-family="monospace" font-size="15" '
        f'text-anchor="middle" fill="#222222">{title}</text>',
    ]
    for tv in _ticks(y_lo, y_hi):
        yy = py(tv)
        parts.append(f'<line x1="{ml:.1f}" y1="{yy:.2f}" x2="{width - mr:.1f}" y2="{yy:.2f}" '
                     f'stroke="#dddddd" stroke-width="1"/>')
        parts.append(f'<text x="{ml - 6:.1f}" y="{yy + 4:.2f}" font-family="monospace" '
                     f'font-size="11" text-anchor="end" fill="#444444">{_fmt_tick(tv)}</text>')
    for tv in _ticks(x_lo, x_hi):
        xx = px(tv)
        parts.append(f'<text x="{xx:.2f}" y="{height - mb + 18:.1f}" font-family="monospace" '
                     f'font-size="11" text-anchor="middle" fill="#444444">{_fmt_tick(tv)}</text>')
    parts.append(f'<rect x="{ml:.1f}" y="{mt:.1f}" width="{plot_w:.1f}" height="{plot_h:.1f}" '
                 f'fill="none" stroke="#222222" stroke-width="1"/>')

    for idx, ((name, _, _), (xs, ys)) in enumerate(zip(series, data)):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = mt + 14 + 16 * idx
        lx = width - mr - 150
        parts.append(f'<rect x="{lx:.1f}" y="{ly - 9:.1f}" width="10" height="10" fill="{color}"/>')
        parts.append(f'<text x="{lx + 14:.1f}" y="{ly:.1f}" font-family="monospace" '
                     f'font-size="11" fill="#222222">{name}</text>')

    parts.append(f'<text x="{ml + plot_w / 2:.1f}" y="{height - 8:.1f}" font-family="monospace" '
                 f'font-size="12" text-anchor="middle" fill="#222222">{x_label}</text>')
    parts.append(f'<text x="16" y="{mt + plot_h / 2:.1f}" font-family="monospace" font-size="12" '
                 f'text-anchor="middle" fill="#222222" '
                 f'transform="rotate(-90 16 {mt + plot_h / 2:.1f})">{y_label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def trace_svg(trace: ProcessTrace) -> str:
    xs = [s.progress for s in trace.snapshots]
    return line_chart_svg(
        title=f"{trace.kind.name} entropy ledger",
        x_label="progress",
        y_label="entropy (units of k at k=1; J/K in SI)",
        series=[
            ("dS_th", xs, [s.ledger.dS_thermo for s in trace.snapshots]),
            ("material_term", xs, [s.ledger.material_term for s in trace.snapshots]),
            ("dS_st", xs, [s.ledger.dS_statistical for s in trace.snapshots]),
        ],
    )


def demon_svg(trace: DemonTrace) -> str:
    ts = [s.time for s in trace.ledger_series]
    return line_chart_svg(
        title=f"demon run ({trace.policy_name})",
        x_label="time",
        y_label="particles / entropy",
        series=[
            ("n_left", ts, [float(s.n_left) for s in trace.ledger_series]),
            ("n_right", ts, [float(s.n_right) for s in trace.ledger_series]),
            ("dS_sides/k", ts,
             [s.ledger.dS_sides / trace.constants.boltzmann_k for s in trace.ledger_series]),
            ("bits_recorded*ln2", ts,
             [s.ledger.bits_recorded * math.log(2.0) for s in trace.ledger_series]),
        ],
    )


def szilard_svg(cycle: SzilardCycle) -> str:
    steps = list(range(1, cycle.expansion_steps + 1))
    xs = [float(s) for s in steps]
    return line_chart_svg(
        title="szilard cycle work extraction",
        x_label="expansion step",
        y_label="cumulative work",
        series=[
            ("work", xs, list(cycle.work_series)),
            ("k T ln 2", xs, [cycle.ideal_work] * len(xs)),
        ],
    )


def composite_csv(result: CompositeResult) -> str:
    header = ["component", "dS_th", "material_term", "dS_st", "info_bits"]
    rows = []
    for name, led in (("expansion", result.expansion),
                      ("relocation", result.relocation),
                      ("total", result.total)):
        rows.append([name, _f(led.dS_thermo), _f(led.material_term),
                     _f(led.dS_statistical), _f(led.info_delta_bits)])
    return csv_text(header, rows)


def ledger_csv(led: EntropyLedger) -> str:
    header = ["dS_th", "material_term", "dS_st", "info_bits"]
    row = [_f(led.dS_thermo), _f(led.material_term),
           _f(led.dS_statistical), _f(led.info_delta_bits)]
    return csv_text(header, [row])


def szilard_csv(cycle: SzilardCycle) -> str:
    header = ["step", "cumulative_work"]
    rows = [[str(i + 1), _f(w)] for i, w in enumerate(cycle.work_series)]
    return csv_text(header, rows)
