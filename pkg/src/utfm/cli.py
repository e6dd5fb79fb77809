"""Command-line pipeline: generate, train, cross-validate, decode, export."""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import jsonutil
from .data.crossval import cross_validate
from .data.io import load_csv, render_csv, write_csv
from .data.split import segment
from .decode import NORMALIZATION_MODES, AssessmentReport, utfm_decode
from .errors import ConfigError, InputError, ModelFileError, UtfmError
from .features.layout import (build_observation_matrix, fit_feature_spec,
                              fit_observation_standardizer,
                              inter_hidden_features, inter_observation_sources,
                              intra_hidden_features, intra_observation_sources,
                              record_sequences)
from .hmm.train import TrainConfig, initial_model_from_data
from .learn import dataset_fingerprint, load_model, render_model, utfm_learn
from .report import export_dot, render_report, summarize
from .synth import NetworkConfig, default_network, generate
from .topology import COMPONENT_ORDER, build_topology, edge_name


def _fail_on_utfm_error(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except UtfmError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(1)
    return wrapper


@click.group()
def main():
    """Uncertainty transfer maps for airline disruption management."""


@main.command()
@click.option("--n", "n_flights", type=int, required=True, help="Number of flight legs.")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default="flights.csv",
              show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Network config JSON; defaults to the built-in network.")
@click.option("--disruption-rate", type=float, default=None,
              help="Override the config's disruption rate.")
@_fail_on_utfm_error
def gen(n_flights, seed, output, config_path, disruption_rate):
    """Write a synthetic flight-leg CSV."""
    if config_path is not None:
        try:
            config = NetworkConfig.from_document(json.loads(Path(config_path).read_text()))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ConfigError(f"network config {config_path} is invalid: {exc}") from exc
    else:
        config = default_network()
    if disruption_rate is not None:
        config = NetworkConfig.from_document(
            {**config.to_document(), "disruption_rate": disruption_rate})
    records = generate(config, n_flights, seed)
    write_csv(records, output)
    meta = {
        "seed": seed,
        "n_flights": n_flights,
        "config_sha256": jsonutil.sha256_text(jsonutil.dumps(config.to_document())),
        "output_sha256": jsonutil.sha256_text(render_csv(records)),
    }
    Path(str(output) + ".meta.json").write_text(jsonutil.dumps(meta) + "\n", encoding="utf-8")
    click.echo(f"wrote {len(records)} records to {output}")


def _train_config(tol: float, max_iter: int) -> TrainConfig:
    return TrainConfig(tol=tol, max_iter=max_iter)


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              default="flights.csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default="model.json",
              show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--max-iter", type=int, default=500, show_default=True)
@click.option("--weather-only", is_flag=True, default=False,
              help="Keep only weather-coded disrupted records.")
@_fail_on_utfm_error
def train(input_path, output, seed, tol, max_iter, weather_only):
    """Train all 29 models and write the bundle JSON plus a training log."""
    records = load_csv(input_path)
    split = segment(records, seed=seed, weather_only=weather_only)
    model = utfm_learn(split, _train_config(tol, max_iter))
    Path(output).write_text(render_model(model), encoding="utf-8")
    log = {
        "provenance": model.provenance,
        "hmms": {
            trained.name: {
                "iterations": len(trained.trace),
                "converged": trained.converged,
                "final_log_likelihood": trained.trace[-1],
                "trace": list(trained.trace),
            }
            for trained in [model.intra[c] for c in COMPONENT_ORDER]
            + [model.inter[e] for e in build_topology().inter_edges]
        },
    }
    Path(str(output) + ".train-log.json").write_text(jsonutil.dumps(log) + "\n",
                                                     encoding="utf-8")
    n_converged = sum(1 for h in log["hmms"].values() if h["converged"])
    click.echo(f"trained 29 HMMs ({n_converged} converged) -> {output}")


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              default="flights.csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default="cv-report.json",
              show_default=True)
@click.option("--folds", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--max-iter", type=int, default=500, show_default=True)
@click.option("--weather-only", is_flag=True, default=False)
@_fail_on_utfm_error
def cv(input_path, output, folds, seed, tol, max_iter, weather_only):
    """K-fold cross-validation of every component HMM."""
    records = load_csv(input_path)
    split = segment(records, seed=seed, weather_only=weather_only)
    config = _train_config(tol, max_iter)
    non_disrupted = split.train_non_disrupted()
    disrupted = split.train_disrupted()

    jobs = []
    for component in COMPONENT_ORDER:
        lot = disrupted if component.row == "D" else non_disrupted
        jobs.append((component.value, intra_hidden_features(component.value),
                     intra_observation_sources(component.value), lot, False))
    for edge in build_topology().inter_edges:
        key = (edge[0].value, edge[1].value)
        jobs.append((edge_name(edge), inter_hidden_features(key),
                     inter_observation_sources(key), disrupted, True))

    results = {}
    any_flag = False
    for name, hidden, sources, lot, absorbing in jobs:
        if len(lot) < folds:
            raise ConfigError(f"{name}: {len(lot)} sequences is fewer than {folds} folds")
        spec = fit_feature_spec(name, hidden, sources, lot)
        standardizer = fit_observation_standardizer(lot, spec)
        sequences = record_sequences(build_observation_matrix(lot, spec, standardizer))
        def factory(train_sequences, h=hidden, a=absorbing):
            return initial_model_from_data(h, train_sequences, absorbing=a)
        cv_report = cross_validate(factory, sequences, k=folds, config=config)
        results[name] = cv_report.to_document()
        any_flag = any_flag or cv_report.flagged

    doc = {
        "provenance": {"seed": seed, "folds": folds,
                       "dataset_sha256": dataset_fingerprint(split.records),
                       "config": {"tol": tol, "max_iter": max_iter}},
        "flagged": any_flag,
        "hmms": results,
    }
    Path(output).write_text(jsonutil.dumps(doc) + "\n", encoding="utf-8")
    click.echo(f"cross-validated 29 HMMs (flagged: {any_flag}) -> {output}")


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True, dir_okay=False),
              default="model.json", show_default=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              default="flights.csv", show_default=True)
@click.option("--flight-id", required=True, help="Flight leg to assess.")
@click.option("--output", type=click.Path(dir_okay=False), default="report.json",
              show_default=True)
@click.option("--mode", type=click.Choice(NORMALIZATION_MODES), default="log-sum-exp",
              show_default=True)
@_fail_on_utfm_error
def decode(model_path, input_path, flight_id, output, mode):
    """Decode one flight into its stochastic transition map."""
    model = load_model(model_path)
    records = load_csv(input_path)
    matches = [r for r in records if r.flight_id == flight_id]
    if not matches:
        raise InputError(f"flight {flight_id!r} not found in {input_path}")
    report = utfm_decode(model, matches[0], mode=mode)
    Path(output).write_text(render_report(report), encoding="utf-8")
    summary_path = Path(str(output) + ".txt")
    summary_path.write_text(summarize(report), encoding="utf-8")
    click.echo(f"decoded {flight_id} -> {output} (summary: {summary_path})")


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              default="report.json", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default="report.dot",
              show_default=True)
@_fail_on_utfm_error
def export(input_path, output):
    """Render an assessment report as a DOT transition graph."""
    try:
        doc = json.loads(Path(input_path).read_text(encoding="utf-8"))
        report = AssessmentReport.from_document(doc)
    except (json.JSONDecodeError, KeyError) as exc:
        raise ModelFileError(f"report file {input_path} is not a valid report: {exc}") from exc
    Path(output).write_text(export_dot(report), encoding="utf-8")
    click.echo(f"exported {input_path} -> {output}")


if __name__ == "__main__":
    main()
