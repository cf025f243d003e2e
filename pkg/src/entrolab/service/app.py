"""FastAPI application exposing each experiment as one POST endpoint.

Handlers run the core package, render the requested artifact formats, and
return everything in the response body; writing files is the client's job.
ValueError maps to 400 (bad parameters), RuntimeError to 500.
"""

from __future__ import annotations

import math
import time

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, outputs
from ..demon import (
    AlwaysClosed,
    AlwaysOpen,
    Gate,
    PressureDemon,
    TemperatureDemon,
    accounting_report,
    run_demon,
)
from ..gases import Species
from ..lattice import (
    EnumerationLimitError,
    LatticeModel,
    RegionConstraint,
    enumerate_and_count,
    log_multiplicity,
    sample_localization_mc,
    stirling_gap,
)
from ..ledger import ProcessTrace
from ..processes import (
    check_generalized_second_law,
    expansion_trace,
    gibbs_mixing_composite,
    run_isothermal_expansion,
    run_mix_distinct,
    run_partition_identical,
    run_relocate_identical,
)
from ..szilard import szilard_cycle
from ..units import constants_for
from . import schemas


def _config_echo(req: schemas.BaseRequest) -> dict:
    return req.model_dump(by_alias=True)


def _trace_bundle(name: str, trace: ProcessTrace, req: schemas.BaseRequest,
                  extra_results: dict | None = None) -> tuple[dict, dict]:
    verdict = check_generalized_second_law(trace)
    fm = set(req.formats)
    names = []
    if "csv" in fm:
        names.append(f"{name}_trace.csv")
    if "svg" in fm:
        names.append(f"{name}_chart.svg")
    if "json" in fm:
        names.append(f"{name}_summary.json")
    results = {
        "final_ledger": outputs.ledger_payload(trace.final_ledger),
        "verdict": outputs.verdict_payload(verdict),
        "snapshots": len(trace.snapshots),
    }
    if extra_results:
        results.update(extra_results)
    summary = outputs.summary_payload(name, req.units, _config_echo(req), results, names)
    artifacts = {}
    if "csv" in fm:
        artifacts[f"{name}_trace.csv"] = outputs.trace_csv(trace)
    if "svg" in fm:
        artifacts[f"{name}_chart.svg"] = outputs.trace_svg(trace)
    if "json" in fm:
        artifacts[f"{name}_summary.json"] = outputs.json_text(summary)
    return summary, artifacts


def _simple_bundle(name: str, req: schemas.BaseRequest, results: dict,
                   csv_art: str | None, svg_art: str | None,
                   extra_json: dict[str, dict] | None = None) -> tuple[dict, dict]:
    fm = set(req.formats)
    csv_name = f"{name}_{'events' if name == 'demon' else 'data'}.csv"
    names = []
    if "csv" in fm and csv_art is not None:
        names.append(csv_name)
    if "svg" in fm and svg_art is not None:
        names.append(f"{name}_chart.svg")
    if "json" in fm:
        names.append(f"{name}_summary.json")
        if extra_json:
            names.extend(extra_json)
    summary = outputs.summary_payload(name, req.units, _config_echo(req), results, names)
    artifacts = {}
    if "csv" in fm and csv_art is not None:
        artifacts[csv_name] = csv_art
    if "svg" in fm and svg_art is not None:
        artifacts[f"{name}_chart.svg"] = svg_art
    if "json" in fm:
        artifacts[f"{name}_summary.json"] = outputs.json_text(summary)
        if extra_json:
            for fname, payload in extra_json.items():
                artifacts[fname] = outputs.json_text(payload)
    return summary, artifacts


def run_mix(req: schemas.MixRequest) -> tuple[dict, dict]:
    c = constants_for(req.units)
    trace = run_mix_distinct(
        req.n_a, req.n_b, req.volume, req.temperature, steps=req.steps,
        direction=req.direction,
        species_a=Species("A", req.mass_a, "gas A"),
        species_b=Species("B", req.mass_b, "gas B"), c=c)
    return _trace_bundle("mix", trace, req)


def run_partition(req: schemas.PartitionRequest) -> tuple[dict, dict]:
    c = constants_for(req.units)
    trace = run_partition_identical(
        req.n_total, req.volume, req.temperature, steps=req.steps,
        species=Species("A", req.mass, "gas A"), c=c)
    return _trace_bundle("partition", trace, req)


def run_relocate(req: schemas.RelocateRequest) -> tuple[dict, dict]:
    c = constants_for(req.units)
    trace = run_relocate_identical(
        req.lamb, req.n_a, req.volume, req.temperature, steps=req.steps,
        species=Species("A", req.mass, "gas A"), c=c)
    return _trace_bundle("relocate", trace, req)


def run_expand(req: schemas.ExpandRequest) -> tuple[dict, dict]:
    c = constants_for(req.units)
    sp = Species("A", req.mass, "gas A")
    closed = run_isothermal_expansion(req.n, req.v1, req.v2, req.temperature, c=c)
    trace = expansion_trace(req.n, req.v1, req.v2, req.temperature,
                            steps=req.steps, species=sp, c=c)
    return _trace_bundle("expand", trace, req, extra_results={
        "closed_form_ledger": outputs.ledger_payload(closed),
    })


def run_composite(req: schemas.CompositeRequest) -> tuple[dict, dict]:
    c = constants_for(req.units)
    result = gibbs_mixing_composite(
        req.n_a, req.volume, req.temperature, steps=req.steps,
        distinguishable=req.distinguishable,
        species=Species("A", req.mass, "gas A"), c=c)
    results = outputs.composite_payload(result)
    csv_art = outputs.composite_csv(result)
    xs = [0.0, 1.0, 2.0]
    svg_art = outputs.line_chart_svg(
        title="composite cycle running totals",
        x_label="stage (0=start, 1=after expansion, 2=after relocation)",
        y_label="entropy",
        series=[
            ("dS_th", xs, [0.0, result.expansion.dS_thermo, result.total.dS_thermo]),
            ("dS_st", xs, [0.0, result.expansion.dS_statistical,
                           result.total.dS_statistical]),
        ])
    return _simple_bundle("composite", req, results, csv_art, svg_art)


def run_oracle(req: schemas.OracleRequest) -> tuple[dict, dict]:
    model = LatticeModel(req.cells, req.particles, req.counting)
    log_w = log_multiplicity(model)
    constraint = None
    if req.constraint_start is not None:
        constraint = RegionConstraint(req.constraint_start, req.constraint_size)
    enumerated = None
    constrained = None
    limit_note = None
    try:
        enumerated = enumerate_and_count(model)
        if constraint is not None:
            constrained = enumerate_and_count(model, constraint)
    except EnumerationLimitError as exc:
        limit_note = str(exc)
    closed_count = None
    matches = None
    if req.counting == "distinguishable":
        closed_count = req.cells ** req.particles
        if enumerated is not None:
            matches = enumerated == closed_count
    results = {
        "cells": req.cells,
        "particles": req.particles,
        "counting": req.counting,
        "log_multiplicity": log_w,
        "enumerated_count": enumerated,
        "closed_form_count": closed_count,
        "count_matches_closed_form": matches,
        "constrained_count": constrained,
        "enumeration_limit_note": limit_note,
        "stirling_gap_lambda2": stirling_gap(2, req.particles)
        if req.particles >= 1 else None,
    }
    csv_art = outputs.csv_text(
        ["cells", "particles", "counting", "log_multiplicity",
         "enumerated_count", "constrained_count"],
        [[str(req.cells), str(req.particles), req.counting, repr(log_w),
          "" if enumerated is None else str(enumerated),
          "" if constrained is None else str(constrained)]])
    return _simple_bundle("oracle", req, results, csv_art, None)


def run_mc(req: schemas.McRequest) -> tuple[dict, dict]:
    est = sample_localization_mc(req.lamb, req.n, req.samples,
                                 seed=req.seed, sample_offset=req.sample_offset)
    results = outputs.mc_payload(est)
    csv_art = outputs.csv_text(
        ["lambda", "n", "samples", "seed", "sample_offset",
         "hits", "p_hat", "std_err", "p_exact"],
        [[str(est.lamb), str(est.n), str(est.samples), str(est.seed),
          str(est.sample_offset), str(est.hits), repr(est.p_hat),
          repr(est.std_err), repr(est.p_exact)]])
    return _simple_bundle("mc", req, results, csv_art, None)


_POLICIES = {
    "always_open": lambda req: AlwaysOpen(),
    "always_closed": lambda req: AlwaysClosed(),
    "pressure_demon": lambda req: PressureDemon(direction=req.direction),
    "temperature_demon": lambda req: TemperatureDemon(speed_threshold=req.speed_threshold),
}


def run_demon_experiment(req: schemas.DemonRequest) -> tuple[dict, dict]:
    c = constants_for(req.units)
    gate = None
    if req.gate_half_width is not None:
        gate = Gate(center=req.box_y / 2.0, half_width=req.gate_half_width)
    trace = run_demon(
        n=req.n, box=(req.box_x, req.box_y), t0=req.t0,
        policy=_POLICIES[req.policy](req), duration=req.duration, seed=req.seed,
        gate=gate, memory_capacity=req.memory_capacity,
        sample_interval=req.sample_interval, mass=req.mass, c=c)
    first = trace.ledger_series[0]
    last = trace.ledger_series[-1]
    report = accounting_report(trace)
    results = {
        "policy": trace.policy_name,
        "n_particles": trace.n_particles,
        "events": len(trace.events),
        "final": {
            "time": last.time,
            "n_left": last.n_left,
            "n_right": last.n_right,
            "temp_left": last.temp_left,
            "temp_right": last.temp_right,
            "bits_recorded": last.ledger.bits_recorded,
            "bits_erased": last.ledger.bits_erased,
            "landauer_heat": last.ledger.landauer_heat,
            "dS_sides": last.ledger.dS_sides,
            "dS_st_paper": last.ledger.dS_st_paper,
            "brillouin_balance": last.ledger.brillouin_balance,
        },
        "energy_drift_relative": (
            abs(last.kinetic_energy - first.kinetic_energy) / first.kinetic_energy
            if first.kinetic_energy > 0 else 0.0),
        "accounting": {
            "brillouin_nonnegative": report.brillouin_nonnegative,
            "paper_inequality_satisfied": report.paper_inequality_satisfied,
            "min_paper_margin": min(r.paper_margin for r in report.rows),
        },
    }
    csv_art = outputs.demon_events_csv(trace)
    svg_art = outputs.demon_svg(trace)
    extra_json = {"demon_ledger.json": outputs.demon_series_payload(trace)}
    return _simple_bundle("demon", req, results, csv_art, svg_art, extra_json)


def run_szilard(req: schemas.SzilardRequest) -> tuple[dict, dict]:
    c = constants_for(req.units)
    cycle = szilard_cycle(req.temperature, req.steps, c=c, volume=req.volume,
                          erase=req.erase, mass=req.mass)
    results = outputs.szilard_payload(cycle)
    results["work_over_kT_ln2"] = cycle.work_extracted / cycle.ideal_work
    results["ideal_is_kT_ln2"] = math.isclose(
        cycle.ideal_work, c.boltzmann_k * req.temperature * math.log(2.0))
    return _simple_bundle("szilard", req, results,
                          outputs.szilard_csv(cycle), outputs.szilard_svg(cycle))


_RUNNERS = {
    "mix": run_mix,
    "partition": run_partition,
    "relocate": run_relocate,
    "expand": run_expand,
    "composite": run_composite,
    "oracle": run_oracle,
    "mc": run_mc,
    "demon": run_demon_experiment,
    "szilard": run_szilard,
}


def create_app() -> FastAPI:
    app = FastAPI(title="entrolab", version=__version__)

    @app.exception_handler(ValueError)
    def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(RuntimeError)
    def _runtime_error(request: Request, exc: RuntimeError) -> JSONResponse:
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok")

    @app.get("/version", response_model=schemas.VersionResponse)
    def version() -> schemas.VersionResponse:
        return schemas.VersionResponse(name="entrolab", version=__version__)

    def _make_endpoint(name: str, model: type[schemas.BaseRequest]):
        runner = _RUNNERS[name]

        def endpoint(req):
            start = time.perf_counter()
            summary, artifacts = runner(req)
            return schemas.RunResponse(
                experiment=name, summary=summary, artifacts=artifacts,
                duration_seconds=time.perf_counter() - start)

        endpoint.__name__ = f"run_{name}"
        # Real class objects, not strings: the model is a closure variable,
        # so stringified annotations would not resolve at route build time.
        endpoint.__annotations__ = {"req": model, "return": schemas.RunResponse}
        return endpoint

    for name, model in schemas.REQUEST_MODELS.items():
        app.post(f"/experiments/{name}", response_model=schemas.RunResponse)(
            _make_endpoint(name, model))

    return app


app = create_app()
