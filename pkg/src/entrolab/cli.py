"""Command-line client for the experiment service.

Each subcommand posts one request to the HTTP app (in-process by default,
or a remote base URL via --server), writes the returned artifacts, and
prints the run summary as JSON on stdout. Precedence for every setting:
flag, then config file, then service default. The output directory adds an
environment override between flag and config: --out, then ENTROLAB_OUT,
then the config's output_dir, then ./out.

Exit codes: 0 success, 2 invalid usage or parameters, 1 runtime failure.
"""

from __future__ import annotations

import json
import os
import pathlib
import warnings
from concurrent.futures import ThreadPoolExecutor

import click
import httpx

with warnings.catch_warnings():
    # starlette warns about its httpx backing at import; not actionable here
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from . import __version__
from .outputs import CONFIG_SCHEMA
from .service.app import app as service_app

ENV_OUT = "ENTROLAB_OUT"
DEFAULT_OUT = "./out"
_CONFIG_KEYS = {"schema", "experiment", "seed", "units", "output_dir",
                "formats", "parameters"}
_FORMATS = {"csv", "json", "svg"}


def _load_config(path: str, experiment: str | None) -> dict:
    try:
        data = json.loads(pathlib.Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise click.UsageError(f"config {path} must be a JSON object")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise click.UsageError(f"config {path} has unknown keys: {', '.join(unknown)}")
    if "schema" in data and data["schema"] != CONFIG_SCHEMA:
        raise click.UsageError(
            f"config {path} declares schema {data['schema']!r}, expected {CONFIG_SCHEMA!r}")
    if experiment is not None and "experiment" in data and data["experiment"] != experiment:
        raise click.UsageError(
            f"config {path} is for experiment {data['experiment']!r}, "
            f"but the {experiment!r} subcommand was invoked")
    params = data.get("parameters", {})
    if not isinstance(params, dict):
        raise click.UsageError(f"config {path}: parameters must be an object")
    # Parameter keys are case-normalized; all schema fields are lowercase.
    lowered: dict = {}
    for key, value in params.items():
        lk = str(key).lower()
        if lk in lowered:
            raise click.UsageError(f"config {path}: duplicate parameter {lk!r}")
        lowered[lk] = value
    data["parameters"] = lowered
    if "units" in data and isinstance(data["units"], str):
        data["units"] = data["units"].lower()
    return data


def _parse_formats(text: str) -> list[str]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    bad = sorted(set(parts) - _FORMATS)
    if bad:
        raise click.UsageError(
            f"unknown formats: {', '.join(bad)} (choose from csv, json, svg)")
    return parts


def _detail(resp: httpx.Response) -> str:
    try:
        body = resp.json()
    except ValueError:
        return resp.text.strip() or f"HTTP {resp.status_code}"
    detail = body.get("detail", body)
    if isinstance(detail, list):  # pydantic field-level errors
        lines = []
        for err in detail:
            loc = ".".join(str(p) for p in err.get("loc", []) if p != "body")
            lines.append(f"{loc}: {err.get('msg', err)}")
        return "; ".join(lines)
    return str(detail)


def _post(experiment: str, payload: dict, server: str | None) -> dict:
    if server:
        client = httpx.Client(base_url=server, timeout=600.0)
    else:
        client = TestClient(service_app, raise_server_exceptions=False)
    try:
        try:
            resp = client.post(f"/experiments/{experiment}", json=payload)
        except httpx.HTTPError as exc:
            raise click.ClickException(f"could not reach {server}: {exc}")
        if resp.status_code in (400, 422):
            raise click.UsageError(_detail(resp))
        if resp.status_code != 200:
            raise click.ClickException(_detail(resp))
        return resp.json()
    finally:
        client.close()


def _emit(run: dict, out_dir: str) -> list[str]:
    artifacts = run.get("artifacts", {})
    written = []
    if artifacts:
        out = pathlib.Path(out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise click.ClickException(f"cannot create output dir {out_dir}: {exc}")
        for fname in sorted(artifacts):
            target = out / fname
            try:
                target.write_bytes(artifacts[fname].encode("utf-8"))
            except OSError as exc:
                raise click.ClickException(f"cannot write {target}: {exc}")
            written.append(str(target))
    click.echo(json.dumps(run["summary"], sort_keys=True, indent=2))
    for path in written:
        click.echo(f"wrote {path}", err=True)
    return written


def _execute(experiment: str, config_path: str | None, seed: int | None,
             out_dir: str | None, formats: str | None, units: str | None,
             server: str | None, params: dict) -> None:
    config = _load_config(config_path, experiment) if config_path else {}
    payload = dict(config.get("parameters", {}))
    payload.update({k: v for k, v in params.items() if v is not None})
    if seed is not None:
        payload["seed"] = seed
    elif "seed" in config:
        payload["seed"] = config["seed"]
    if units is not None:
        payload["units"] = units
    elif "units" in config:
        payload["units"] = config["units"]
    if formats is not None:
        payload["formats"] = _parse_formats(formats)
    elif "formats" in config:
        payload["formats"] = config["formats"]
    resolved_out = (out_dir or os.environ.get(ENV_OUT)
                    or config.get("output_dir") or DEFAULT_OUT)
    run = _post(experiment, payload, server)
    _emit(run, resolved_out)


def common_options(fn):
    for opt in reversed([
        click.option("--config", "config_path",
                     type=click.Path(exists=True, dir_okay=False),
                     help="JSON config file; flags override its fields."),
        click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None,
                     help="RNG seed (64-bit)."),
        click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
                     help=f"Output directory (overrides ${ENV_OUT} and config)."),
        click.option("--formats", default=None,
                     help="Comma-separated subset of csv,json,svg; empty for stdout only."),
        click.option("--units", type=click.Choice(["si", "reduced"]), default=None,
                     help="Unit system (default reduced: k = h = 1)."),
        click.option("--server", default=None,
                     help="Base URL of a running service; default runs in-process."),
    ]):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="entrolab")
def main() -> None:
    """Entropy-ledger experiments on ideal gases, demons, and engines."""


@main.command()
@common_options
@click.option("--n-a", type=float, default=None, help="Particles of gas A.")
@click.option("--n-b", type=float, default=None, help="Particles of gas B.")
@click.option("--volume", type=float, default=None)
@click.option("--temperature", type=float, default=None)
@click.option("--steps", type=int, default=None)
@click.option("--direction", type=click.Choice(["mix", "separate"]), default=None)
@click.option("--mass-a", type=float, default=None)
@click.option("--mass-b", type=float, default=None)
def mix(config_path, seed, out_dir, formats, units, server, **params) -> None:
    """Mix (or separate) two distinct gases through overlapping vessels."""
    _execute("mix", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--n-total", type=float, default=None, help="Even total particle count.")
@click.option("--volume", type=float, default=None)
@click.option("--temperature", type=float, default=None)
@click.option("--steps", type=int, default=None)
@click.option("--mass", type=float, default=None)
def partition(config_path, seed, out_dir, formats, units, server, **params) -> None:
    """Split one identical gas into two half-volumes."""
    _execute("partition", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--lambda", "lamb", type=int, default=None, help="Number of merged samples.")
@click.option("--n-a", type=float, default=None, help="Particles per sample.")
@click.option("--volume", type=float, default=None)
@click.option("--temperature", type=float, default=None)
@click.option("--steps", type=int, default=None)
@click.option("--mass", type=float, default=None)
def relocate(config_path, seed, out_dir, formats, units, server, lamb, **params) -> None:
    """Merge lambda identical gas samples into one vessel."""
    if lamb is not None:
        params["lambda"] = lamb
    _execute("relocate", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--n", type=float, default=None, help="Particle count.")
@click.option("--v1", type=float, default=None, help="Initial volume.")
@click.option("--v2", type=float, default=None, help="Final volume.")
@click.option("--temperature", type=float, default=None)
@click.option("--steps", type=int, default=None)
@click.option("--mass", type=float, default=None)
def expand(config_path, seed, out_dir, formats, units, server, **params) -> None:
    """Reversible isothermal expansion (pure heat-over-T entropy)."""
    _execute("expand", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--n-a", type=float, default=None, help="Particles per gas.")
@click.option("--volume", type=float, default=None)
@click.option("--temperature", type=float, default=None)
@click.option("--steps", type=int, default=None)
@click.option("--distinguishable", is_flag=True, default=None,
              help="Skip the identical-gas correction (exhibits the paradox).")
@click.option("--mass", type=float, default=None)
def composite(config_path, seed, out_dir, formats, units, server, **params) -> None:
    """Expansion plus reverse relocation; nets to zero for identical gases."""
    _execute("composite", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--cells", type=int, default=None, help="Lattice cells per particle choice.")
@click.option("--particles", type=int, default=None)
@click.option("--counting", type=click.Choice(["distinguishable", "boltzmann_corrected"]),
              default=None)
@click.option("--constraint-start", type=int, default=None)
@click.option("--constraint-size", type=int, default=None)
def oracle(config_path, seed, out_dir, formats, units, server, **params) -> None:
    """Count lattice microstates by brute force and closed form."""
    _execute("oracle", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--lambda", "lamb", type=int, default=None, help="Equal regions.")
@click.option("--n", type=int, default=None, help="Particles per region.")
@click.option("--samples", type=int, default=None)
@click.option("--sample-offset", type=int, default=None,
              help="Skip this many samples first (shard-stable).")
def mc(config_path, seed, out_dir, formats, units, server, lamb, **params) -> None:
    """Monte Carlo estimate of the localization probability."""
    if lamb is not None:
        params["lambda"] = lamb
    _execute("mc", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--n", type=int, default=None, help="Particle count.")
@click.option("--box-x", type=float, default=None)
@click.option("--box-y", type=float, default=None)
@click.option("--t0", type=float, default=None, help="Initial temperature.")
@click.option("--policy", type=click.Choice(["always_open", "always_closed",
                                             "pressure_demon", "temperature_demon"]),
              default=None)
@click.option("--direction", type=click.Choice(["left", "right"]), default=None)
@click.option("--speed-threshold", type=float, default=None)
@click.option("--duration", type=float, default=None)
@click.option("--memory-capacity", type=int, default=None)
@click.option("--sample-interval", type=float, default=None)
@click.option("--gate-half-width", type=float, default=None)
@click.option("--mass", type=float, default=None)
def demon(config_path, seed, out_dir, formats, units, server, **params) -> None:
    """Event-driven two-chamber gas with a gate policy."""
    _execute("demon", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@common_options
@click.option("--temperature", type=float, default=None)
@click.option("--steps", type=int, default=None, help="Expansion steps per cycle.")
@click.option("--volume", type=float, default=None)
@click.option("--erase/--no-erase", default=None,
              help="Erase the measurement record at cycle end (default: erase).")
@click.option("--mass", type=float, default=None)
def szilard(config_path, seed, out_dir, formats, units, server, **params) -> None:
    """One-particle measurement engine with a Landauer ledger."""
    _execute("szilard", config_path, seed, out_dir, formats, units, server, params)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host: str, port: int) -> None:
    """Run the experiment service over HTTP."""
    import uvicorn

    uvicorn.run("entrolab.service.app:app", host=host, port=port)


@main.command()
@click.argument("configs", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--workers", type=click.IntRange(1, 64), default=4)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Base directory; each config writes to <base>/<config stem> "
                   "unless it sets output_dir.")
@click.option("--server", default=None)
def batch(configs, workers: int, out_dir: str | None, server: str | None) -> None:
    """Run several config files in parallel, each fully isolated."""
    base = out_dir or os.environ.get(ENV_OUT) or DEFAULT_OUT

    def one(path: str) -> str:
        config = _load_config(path, None)
        experiment = config.get("experiment")
        if not experiment:
            raise click.UsageError(f"config {path} must name an experiment")
        payload = dict(config.get("parameters", {}))
        for key in ("seed", "units", "formats"):
            if key in config:
                payload[key] = config[key]
        target = config.get("output_dir") or str(
            pathlib.Path(base) / pathlib.Path(path).stem)
        run = _post(experiment, payload, server)
        written = _emit(run, target)
        return f"ok {path} ({experiment}, {len(written)} files)"

    failures = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(one, path): path for path in configs}
        for future, path in futures.items():
            try:
                click.echo(future.result(), err=True)
            except click.ClickException as exc:
                failures += 1
                click.echo(f"failed {path}: {exc.message}", err=True)
            except Exception as exc:  # noqa: BLE001 - isolate worker crashes
                failures += 1
                click.echo(f"failed {path}: {exc}", err=True)
    if failures:
        raise click.ClickException(f"{failures} of {len(configs)} configs failed")


if __name__ == "__main__":
    main()
