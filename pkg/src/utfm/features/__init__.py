"""Feature engineering: encodings, standardization, observation layouts."""

from .encode import one_hot, periodic_encode
from .geo import EARTH_RADIUS_KM, GeoPoint, route_distance, spherical_coords
from .layout import (ALEATORIC_CATEGORIES, INTRA_FEATURES, FeatureVectorSpec,
                     ManifestEntry, build_observation_matrix, encode_raw_matrix,
                     fit_feature_spec, fit_observation_standardizer,
                     inter_hidden_features, inter_observation_sources,
                     intra_hidden_features, intra_observation_sources,
                     record_field, record_sequences)
from .standardize import StandardizationParams, apply_standardizer, fit_standardizer

__all__ = [
    "one_hot",
    "periodic_encode",
    "EARTH_RADIUS_KM",
    "GeoPoint",
    "route_distance",
    "spherical_coords",
    "ALEATORIC_CATEGORIES",
    "INTRA_FEATURES",
    "FeatureVectorSpec",
    "ManifestEntry",
    "build_observation_matrix",
    "encode_raw_matrix",
    "fit_feature_spec",
    "fit_observation_standardizer",
    "inter_hidden_features",
    "inter_observation_sources",
    "intra_hidden_features",
    "intra_observation_sources",
    "record_field",
    "record_sequences",
    "StandardizationParams",
    "apply_standardizer",
    "fit_standardizer",
]
