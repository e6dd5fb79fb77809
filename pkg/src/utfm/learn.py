"""Training of the full 29-model bundle and its persistence.

Schedule-row and Outcome-row intra-state models learn from the
non-disrupted training lot; Decision-row intra-state models and all 17
inter-state (transition) models learn from the disrupted training lot.
Intra-state models are ergodic; inter-state models carry an absorbing end
state. Everything is deterministic given (data, seed, config).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

from . import jsonutil
from .data.io import render_csv
from .data.split import DatasetSplit
from .errors import DegenerateDataError, ModelFileError, VersionError
from .features.layout import (FeatureVectorSpec, fit_feature_spec,
                              fit_observation_standardizer,
                              build_observation_matrix,
                              inter_hidden_features, inter_observation_sources,
                              intra_hidden_features, intra_observation_sources,
                              record_sequences)
from .features.standardize import StandardizationParams
from .hmm.model import GaussianHmm
from .hmm.train import (NonConvergenceWarning, TrainConfig, baum_welch,
                        has_converged, initial_model_from_data)
from .kernels import BACKEND_NAME
from .topology import COMPONENT_ORDER, StateComponentId, build_topology, edge_name

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class TrainedComponentHmm:
    """One trained model plus everything needed to encode its inputs."""

    name: str
    hmm: GaussianHmm
    feature_spec: FeatureVectorSpec
    standardizer: StandardizationParams
    trace: tuple[float, ...]
    converged: bool

    def to_document(self) -> dict:
        return {
            "name": self.name,
            "hmm": self.hmm.to_document(),
            "feature_spec": self.feature_spec.to_document(),
            "standardizer": self.standardizer.to_document(),
            "trace": [float(v) for v in self.trace],
            "converged": self.converged,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "TrainedComponentHmm":
        return cls(
            name=doc["name"],
            hmm=GaussianHmm.from_document(doc["hmm"]),
            feature_spec=FeatureVectorSpec.from_document(doc["feature_spec"]),
            standardizer=StandardizationParams.from_document(doc["standardizer"]),
            trace=tuple(float(v) for v in doc["trace"]),
            converged=bool(doc["converged"]),
        )


@dataclass(frozen=True)
class UtfmModel:
    """The trained bundle: 12 intra-state + 17 inter-state models."""

    intra: dict  # StateComponentId -> TrainedComponentHmm
    inter: dict  # (StateComponentId, StateComponentId) -> TrainedComponentHmm
    provenance: dict

    def __post_init__(self):
        topology = build_topology()
        missing = [c.value for c in topology.intra_nodes if c not in self.intra]
        missing += [edge_name(e) for e in topology.inter_edges if e not in self.inter]
        if missing:
            raise ModelFileError(f"model bundle is missing HMMs: {missing}")
        for component, trained in self.intra.items():
            expected = intra_hidden_features(component.value)
            if trained.hmm.state_labels != expected:
                raise ModelFileError(
                    f"{component.value}: state labels {trained.hmm.state_labels} "
                    f"do not match the component's hidden features {expected}")
        for edge, trained in self.inter.items():
            expected = inter_hidden_features((edge[0].value, edge[1].value))
            if trained.hmm.state_labels != expected:
                raise ModelFileError(
                    f"{edge_name(edge)}: state labels do not match the source "
                    f"component's hidden features {expected}")

    def payload(self) -> dict:
        return {
            "provenance": self.provenance,
            "intra": {c.value: self.intra[c].to_document() for c in COMPONENT_ORDER},
            "inter": {edge_name(e): self.inter[e].to_document()
                      for e in build_topology().inter_edges},
        }


def dataset_fingerprint(records) -> str:
    return jsonutil.sha256_text(render_csv(records))


def _fit_component(name: str, hidden, sources, records, absorbing: bool,
                   config: TrainConfig) -> TrainedComponentHmm:
    if not records:
        raise DegenerateDataError(f"no training records available for HMM {name}")
    spec = fit_feature_spec(name, hidden, sources, records)
    standardizer = fit_observation_standardizer(records, spec)
    matrix = build_observation_matrix(records, spec, standardizer)
    sequences = record_sequences(matrix)
    init = initial_model_from_data(hidden, sequences, absorbing=absorbing)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonConvergenceWarning)
        hmm, trace = baum_welch(init, sequences, config)
    return TrainedComponentHmm(name=name, hmm=hmm, feature_spec=spec,
                               standardizer=standardizer, trace=tuple(trace),
                               converged=has_converged(trace, config.tol))


def utfm_learn(split: DatasetSplit, config: TrainConfig | None = None,
               provenance: dict | None = None) -> UtfmModel:
    """Train all 29 models from a segmented dataset."""
    config = config or TrainConfig()
    non_disrupted = split.train_non_disrupted()
    disrupted = split.train_disrupted()

    intra: dict = {}
    for component in COMPONENT_ORDER:
        lot = disrupted if component.row == "D" else non_disrupted
        intra[component] = _fit_component(
            component.value,
            intra_hidden_features(component.value),
            intra_observation_sources(component.value),
            lot, absorbing=False, config=config)

    inter: dict = {}
    for edge in build_topology().inter_edges:
        key = (edge[0].value, edge[1].value)
        inter[edge] = _fit_component(
            edge_name(edge),
            inter_hidden_features(key),
            inter_observation_sources(key),
            disrupted, absorbing=True, config=config)

    meta = {
        "seed": split.seed,
        "dataset_sha256": dataset_fingerprint(split.records),
        "n_records": len(split.records),
        "n_disrupted": len(split.disrupted),
        "config": {"tol": config.tol, "max_iter": config.max_iter,
                   "variance_floor": config.variance_floor},
        "kernel_backend": BACKEND_NAME,
    }
    if provenance:
        meta.update(provenance)
    return UtfmModel(intra=intra, inter=inter, provenance=meta)


def render_model(model: UtfmModel) -> str:
    payload = model.payload()
    payload_text = jsonutil.dumps(payload)
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "payload_sha256": jsonutil.sha256_text(payload_text),
        "payload": payload,
    }
    return jsonutil.dumps(doc) + "\n"


def save_model(model: UtfmModel, path) -> None:
    from pathlib import Path

    Path(path).write_text(render_model(model), encoding="utf-8")


def parse_model(text: str) -> UtfmModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise ModelFileError("model file lacks a format_version tag")
    if doc["format_version"] != MODEL_FORMAT_VERSION:
        raise VersionError(
            f"unsupported model format version {doc['format_version']!r} "
            f"(expected {MODEL_FORMAT_VERSION})")
    payload = doc.get("payload")
    if payload is None or "payload_sha256" not in doc:
        raise ModelFileError("model file lacks payload or checksum")
    digest = jsonutil.sha256_text(jsonutil.dumps(payload))
    if digest != doc["payload_sha256"]:
        raise ModelFileError("model file checksum mismatch: content is corrupt")
    intra = {StateComponentId(name): TrainedComponentHmm.from_document(sub)
             for name, sub in payload["intra"].items()}
    inter = {}
    for name, sub in payload["inter"].items():
        a, b = name.split("->")
        inter[(StateComponentId(a), StateComponentId(b))] = \
            TrainedComponentHmm.from_document(sub)
    return UtfmModel(intra=intra, inter=inter, provenance=payload["provenance"])


def load_model(path) -> UtfmModel:
    from pathlib import Path

    return parse_model(Path(path).read_text(encoding="utf-8"))
