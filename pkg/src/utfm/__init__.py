"""Uncertainty transfer maps for airline disruption management.

Learns 12 intra-state and 17 inter-state Gaussian hidden Markov models
from flight-operations data, assembles them on the fixed 12-node activity
graph, and decodes disrupted flights into stochastic transition maps over
flight phases (turnaround, taxi-out, enroute, taxi-in) and schedule
evolution rows (schedule, decision, outcome).
"""

from .data.crossval import cross_validate
from .data.io import load_csv, write_csv
from .data.records import FlightLegRecord
from .data.split import DatasetSplit, segment
from .decode import AssessmentReport, utfm_decode
from .errors import UtfmError
from .features.geo import GeoPoint, route_distance, spherical_coords
from .hmm import (GaussianHmm, ObservationSequence, Posteriors, TrainConfig,
                  ViterbiResult, baum_welch, forward_backward, initial_model,
                  log_likelihood, sample, viterbi)
from .learn import UtfmModel, load_model, save_model, utfm_learn
from .report import export_dot, summarize
from .synth import NetworkConfig, default_network, generate
from .topology import StateComponentId, UtfmTopology, build_topology

__version__ = "0.1.0"

__all__ = [
    "cross_validate",
    "load_csv",
    "write_csv",
    "FlightLegRecord",
    "DatasetSplit",
    "segment",
    "AssessmentReport",
    "utfm_decode",
    "UtfmError",
    "GeoPoint",
    "route_distance",
    "spherical_coords",
    "GaussianHmm",
    "ObservationSequence",
    "Posteriors",
    "TrainConfig",
    "ViterbiResult",
    "baum_welch",
    "forward_backward",
    "initial_model",
    "log_likelihood",
    "sample",
    "viterbi",
    "UtfmModel",
    "load_model",
    "save_model",
    "utfm_learn",
    "export_dot",
    "summarize",
    "NetworkConfig",
    "default_network",
    "generate",
    "StateComponentId",
    "UtfmTopology",
    "build_topology",
    "__version__",
]
