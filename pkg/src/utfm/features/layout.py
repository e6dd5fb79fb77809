"""Observation-vector assembly for the 12 activity components and 17 edges.

Each component's HMM names its hidden states after epistemic features and
observes an encoded tour over its input features: every source (an
aleatoric category such as RTE/FREQ, or an epistemic field for the
transition models) expands into one or more numeric columns, the columns
are standardized, and one flight leg's row read column-by-column is that
leg's observation sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data.records import DELAY_CODES, FlightLegRecord, HOURS_PER_DAY
from ..errors import ConfigError, RecordError
from .encode import one_hot, periodic_encode
from .geo import GeoPoint, route_distance, spherical_coords
from .standardize import StandardizationParams, apply_standardizer, fit_standardizer

# Hidden-state labels and observation categories per intra-state component.
INTRA_FEATURES: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "TAS": (("SWAP_FLT_FLAG", "SCHED_ACFT_TYPE", "SCHED_TURN_MINS", "tod_sched_PB"),
            ("RTE", "FREQ", "PAX DMD")),
    "TOS": (("taxi_out", "tod_actl_TO", "sched_block_mins"),
            ("RTE", "FREQ", "PAX DMD")),
    "ES": (("actl_enroute_mins", "tod_actl_LD", "sched_block_mins"),
           ("RTE", "FREQ", "PAX DMD")),
    "TIS": (("taxi_in", "tod_sched_GP", "sched_block_mins"),
            ("RTE", "FREQ", "PAX DMD")),
    "TAD": (("shiftper_sched_PB", "ADJST_TURN_MINS", "DELY_MIN", "SWAP_FLT_FLAG"),
            ("ORIG", "DEST", "FREQ", "PAX DMD", "DISRP")),
    "TOD": (("late_out_vs_sched_mins", "shiftper_actl_PB", "DELY_MIN"),
            ("ORIG", "DEST", "FREQ", "PAX DMD", "DISRP")),
    "ED": (("shiftper_actl_TO", "shiftper_actl_LD", "DOT_DELAY_MINS"),
           ("ORIG", "DEST", "FREQ", "PAX DMD", "DISRP")),
    "TID": (("DOT_DELAY_MINS", "shiftper_sched_GP", "shiftper_actl_GP"),
            ("ORIG", "DEST", "FREQ", "PAX DMD", "DISRP")),
    "TAO": (("SWAP_FLT_FLAG", "ACTL_ACFT_TYPE", "ACTL_TURN_MINS", "tod_actl_PB"),
            ("RTE", "FREQ", "PAX DMD")),
    "TOO": (("taxi_out", "tod_actl_TO", "actl_block_mins"),
            ("RTE", "FREQ", "PAX DMD")),
    "EO": (("actl_enroute_mins", "tod_actl_LD", "actl_block_mins"),
           ("RTE", "FREQ", "PAX DMD")),
    "TIO": (("taxi_in", "tod_actl_GP", "actl_block_mins"),
            ("RTE", "FREQ", "PAX DMD")),
}

ALEATORIC_CATEGORIES = ("ORIG", "DEST", "FREQ", "RTE", "PAX DMD", "DISRP")

# Hidden-state labels reuse table spellings; map the two that differ from
# the record schema.
_FIELD_ALIASES = {"DELY_MIN": "DELY_MINS"}

_PERIODS = {"dow": 7.0, "doy": 365.25, "moy": 12.0, "season": 4.0}

_ACFT_FIELDS = ("SCHED_ACFT_TYPE", "ACTL_ACFT_TYPE")


@dataclass(frozen=True)
class ManifestEntry:
    source: str
    encoding: str
    columns: tuple[int, ...]

    def to_document(self) -> dict:
        return {"source": self.source, "encoding": self.encoding,
                "columns": list(self.columns)}


@dataclass(frozen=True, eq=False)
class FeatureVectorSpec:
    """Fitted observation layout for one HMM.

    ``observation_features`` is the post-encoding column order; ``manifest``
    records which source produced which columns under which encoding.
    """

    component_id: str
    hidden_features: tuple[str, ...]
    observation_sources: tuple[str, ...]
    observation_features: tuple[str, ...]
    manifest: tuple[ManifestEntry, ...]
    vocabularies: dict

    @property
    def n_columns(self) -> int:
        return len(self.observation_features)

    def to_document(self) -> dict:
        return {
            "component_id": self.component_id,
            "hidden_features": list(self.hidden_features),
            "observation_sources": list(self.observation_sources),
            "observation_features": list(self.observation_features),
            "manifest": [entry.to_document() for entry in self.manifest],
            "vocabularies": {k: list(v) for k, v in self.vocabularies.items()},
        }

    @classmethod
    def from_document(cls, doc: dict) -> "FeatureVectorSpec":
        return cls(
            component_id=doc["component_id"],
            hidden_features=tuple(doc["hidden_features"]),
            observation_sources=tuple(doc["observation_sources"]),
            observation_features=tuple(doc["observation_features"]),
            manifest=tuple(ManifestEntry(e["source"], e["encoding"], tuple(e["columns"]))
                           for e in doc["manifest"]),
            vocabularies={k: tuple(v) for k, v in doc["vocabularies"].items()},
        )


def intra_hidden_features(component: str) -> tuple[str, ...]:
    return INTRA_FEATURES[component][0]


def intra_observation_sources(component: str) -> tuple[str, ...]:
    return INTRA_FEATURES[component][1]


def inter_hidden_features(edge: tuple[str, str]) -> tuple[str, ...]:
    return INTRA_FEATURES[edge[0]][0]


def inter_observation_sources(edge: tuple[str, str]) -> tuple[str, ...]:
    # Transition models observe the destination component's epistemic features.
    return INTRA_FEATURES[edge[1]][0]


def record_field(feature: str) -> str:
    return _FIELD_ALIASES.get(feature, feature)


def _source_columns(source: str, vocabularies: dict) -> tuple[tuple[str, ...], str]:
    """Expanded column names and the encoding tag for one source."""
    if source == "ORIG":
        return (("orig_x_dir", "orig_y_dir", "orig_z_dir",
                 "sched_route_originator_flag"), "spherical+flag")
    if source == "DEST":
        return (("dest_x_dir", "dest_y_dir", "dest_z_dir"), "spherical")
    if source == "FREQ":
        names = []
        for part in ("dow", "doy", "moy", "season"):
            names += [f"{part}_sin", f"{part}_cos"]
        return (tuple(names), "periodic")
    if source == "RTE":
        return (("route",), "distance")
    if source == "PAX DMD":
        return (("ONBD_CT",), "raw")
    if source == "DISRP":
        return (tuple(f"disrp_{code}" for code in DELAY_CODES), "one_hot")
    # epistemic fields
    field = record_field(source)
    if field.startswith("tod_"):
        return ((f"{source}_sin", f"{source}_cos"), "periodic")
    if field in _ACFT_FIELDS:
        vocab = vocabularies.get(field)
        if vocab is None:
            raise ConfigError(f"no fitted vocabulary for {field}")
        return (tuple(f"{source}={v}" for v in vocab), "one_hot")
    return ((source,), "raw")


def _source_values(source: str, record: FlightLegRecord, vocabularies: dict) -> list[float]:
    if source == "ORIG":
        x, y, z = spherical_coords(GeoPoint(record.orig_lat, record.orig_lon))
        return [x, y, z, float(record.sched_route_originator_flag)]
    if source == "DEST":
        return list(spherical_coords(GeoPoint(record.dest_lat, record.dest_lon)))
    if source == "FREQ":
        values = []
        for part in ("dow", "doy", "moy", "season"):
            values += periodic_encode(float(getattr(record, part)), _PERIODS[part])
        return values
    if source == "RTE":
        return [route_distance(GeoPoint(record.orig_lat, record.orig_lon),
                               GeoPoint(record.dest_lat, record.dest_lon))]
    if source == "PAX DMD":
        return [float(record.ONBD_CT)]
    if source == "DISRP":
        if record.delay_code is None:
            return [0.0] * len(DELAY_CODES)
        return list(one_hot(record.delay_code, DELAY_CODES))
    field = record_field(source)
    value = getattr(record, field, None)
    if value is None:
        raise RecordError(f"record {record.flight_id} is missing mandatory field {field}",
                          field=field)
    if field.startswith("tod_"):
        return list(periodic_encode(float(value), HOURS_PER_DAY))
    if field in _ACFT_FIELDS:
        return list(one_hot(value, vocabularies[field]))
    return [float(value)]


def fit_feature_spec(component_id: str, hidden_features, observation_sources,
                     records) -> FeatureVectorSpec:
    """Freeze the expanded column layout, fitting one-hot vocabularies.

    Aircraft-type vocabularies come from the training records (sorted
    unique values) so the expansion is stable across runs.
    """
    sources = tuple(observation_sources)
    vocabularies: dict = {}
    for source in sources:
        field = record_field(source)
        if field in _ACFT_FIELDS:
            values = sorted({getattr(r, field) for r in records})
            if not values:
                raise ConfigError(f"cannot fit vocabulary for {field}: no records")
            vocabularies[field] = tuple(values)
    names: list[str] = []
    manifest: list[ManifestEntry] = []
    for source in sources:
        cols, encoding = _source_columns(source, vocabularies)
        start = len(names)
        names.extend(cols)
        manifest.append(ManifestEntry(source=source, encoding=encoding,
                                      columns=tuple(range(start, len(names)))))
    return FeatureVectorSpec(
        component_id=component_id,
        hidden_features=tuple(hidden_features),
        observation_sources=sources,
        observation_features=tuple(names),
        manifest=tuple(manifest),
        vocabularies=vocabularies,
    )


def encode_raw_matrix(records, spec: FeatureVectorSpec) -> np.ndarray:
    """Unstandardized (n_records, n_columns) design matrix in spec order."""
    rows = np.empty((len(records), spec.n_columns))
    for i, record in enumerate(records):
        values: list[float] = []
        for source in spec.observation_sources:
            values.extend(_source_values(source, record, spec.vocabularies))
        rows[i] = values
    return rows


def build_observation_matrix(records, spec: FeatureVectorSpec,
                             params: StandardizationParams) -> np.ndarray:
    """Standardized observation matrix, one row per record, columns per spec."""
    raw = encode_raw_matrix(records, spec)
    if raw.shape[0] == 0:
        return raw
    return apply_standardizer(params, raw)


def fit_observation_standardizer(records, spec: FeatureVectorSpec) -> StandardizationParams:
    return fit_standardizer(encode_raw_matrix(records, spec), spec.observation_features)


def record_sequences(matrix: np.ndarray):
    """Each matrix row becomes one univariate sequence over the column tour."""
    from ..hmm.model import ObservationSequence

    return [ObservationSequence(row[:, None]) for row in np.asarray(matrix)]
