"""Feature transforms: geography, encodings, standardization, layouts."""

import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utfm.data.records import DELAY_CODES
from utfm.errors import ConfigError, InputError, StateError
from utfm.features import (EARTH_RADIUS_KM, GeoPoint, apply_standardizer,
                           build_observation_matrix, fit_feature_spec,
                           fit_observation_standardizer, fit_standardizer,
                           intra_hidden_features, intra_observation_sources,
                           one_hot, periodic_encode, route_distance,
                           spherical_coords)
from utfm.synth import default_network, generate

from oracles import haversine_reference_km

latitudes = st.floats(-90.0, 90.0)
longitudes = st.floats(-179.999, 180.0)


# --- spherical coordinates ---------------------------------------------------

def test_spherical_equator_prime_meridian():
    assert spherical_coords(GeoPoint(0.0, 0.0)) == pytest.approx((1.0, 0.0, 0.0))


def test_spherical_north_pole():
    x, y, z = spherical_coords(GeoPoint(90.0, 45.0))
    assert (x, y) == pytest.approx((0.0, 0.0), abs=1e-12)
    assert z == pytest.approx(1.0)


def test_spherical_45_45():
    x, y, z = spherical_coords(GeoPoint(45.0, 45.0))
    assert x == pytest.approx(0.5)
    assert y == pytest.approx(0.5)
    assert z == pytest.approx(math.sqrt(2.0) / 2.0)


@settings(max_examples=200, deadline=None)
@given(lat=latitudes, lon=longitudes)
def test_spherical_unit_norm(lat, lon):
    x, y, z = spherical_coords(GeoPoint(lat, lon))
    assert x * x + y * y + z * z == pytest.approx(1.0, abs=1e-12)


def test_geo_point_bounds():
    with pytest.raises(InputError):
        GeoPoint(91.0, 0.0)
    with pytest.raises(InputError):
        GeoPoint(0.0, -180.0)


# --- route distance -----------------------------------------------------------

def test_route_distance_identical_points_is_zero():
    p = GeoPoint(35.2, -101.7)
    assert route_distance(p, p) == 0.0


def test_route_distance_antipodal_half_circumference():
    d = route_distance(GeoPoint(0.0, 0.0), GeoPoint(0.0, 180.0))
    assert d == pytest.approx(math.pi * EARTH_RADIUS_KM, rel=1e-12)


def test_route_distance_dal_hou_against_reference():
    dal = GeoPoint(32.8471, -96.8518)
    hou = GeoPoint(29.6454, -95.2789)
    expected = haversine_reference_km(32.8471, -96.8518, 29.6454, -95.2789)
    assert route_distance(dal, hou) == pytest.approx(expected, rel=1e-6)


def test_route_distance_metric_properties(rng):
    for _ in range(1000):
        pts = [GeoPoint(rng.uniform(-90, 90), rng.uniform(-179.9, 180.0))
               for _ in range(3)]
        ab = route_distance(pts[0], pts[1])
        ba = route_distance(pts[1], pts[0])
        bc = route_distance(pts[1], pts[2])
        ac = route_distance(pts[0], pts[2])
        assert ab >= 0.0
        assert ab == pytest.approx(ba, abs=1e-9)
        assert ac <= ab + bc + 1e-9


# --- periodic encoding ---------------------------------------------------------

def test_periodic_zero_of_week():
    assert periodic_encode(0.0, 7.0) == pytest.approx((0.0, 1.0))


def test_periodic_half_period():
    s, c = periodic_encode(3.5, 7.0)
    assert s == pytest.approx(0.0, abs=1e-12)
    assert c == pytest.approx(-1.0)


@settings(max_examples=200, deadline=None)
@given(value=st.floats(-1e4, 1e4), period=st.floats(0.1, 1e3))
def test_periodic_identity_and_translation(value, period):
    s, c = periodic_encode(value, period)
    assert s * s + c * c == pytest.approx(1.0, abs=1e-12)
    s2, c2 = periodic_encode(value + period, period)
    assert s2 == pytest.approx(s, abs=1e-9)
    assert c2 == pytest.approx(c, abs=1e-9)


def test_periodic_rejects_bad_period():
    with pytest.raises(InputError):
        periodic_encode(1.0, 0.0)


# --- one-hot -------------------------------------------------------------------

def test_one_hot_delay_code_positions():
    vec = one_hot("HD06", DELAY_CODES)
    assert vec.tolist() == [0, 1, 0, 0, 0, 0, 0, 0]
    assert one_hot("HD03", DELAY_CODES).tolist() == [1, 0, 0, 0, 0, 0, 0, 0]


def test_one_hot_unknown_category_warns_and_zeroes(caplog):
    with caplog.at_level(logging.WARNING, logger="utfm.features.encode"):
        vec = one_hot("ZZ99", DELAY_CODES)
    assert vec.sum() == 0.0
    assert any("unknown category" in message for message in caplog.messages)


def test_one_hot_config_errors():
    with pytest.raises(ConfigError):
        one_hot("a", [])
    with pytest.raises(ConfigError):
        one_hot("a", ["a", "a"])


# --- standardization -----------------------------------------------------------

def test_fit_standardizer_population_convention():
    params = fit_standardizer(np.array([[1.0], [2.0], [3.0]]), ["f"])
    assert params.means[0] == pytest.approx(2.0)
    assert params.stds[0] == pytest.approx(0.816496580927726)
    assert apply_standardizer(params, np.array([2.0]))[0] == pytest.approx(0.0)


def test_constant_column_flagged_and_zeroed():
    params = fit_standardizer(np.array([[5.0], [5.0], [5.0]]), ["f"])
    assert params.constant_mask[0]
    assert apply_standardizer(params, np.array([5.0]))[0] == 0.0


def test_standardization_idempotent():
    rng = np.random.default_rng(5)
    raw = rng.normal(3.0, 2.0, size=(100, 4))
    params = fit_standardizer(raw, list("abcd"))
    standardized = apply_standardizer(params, raw)
    refit = fit_standardizer(standardized, list("abcd"))
    np.testing.assert_allclose(refit.means, 0.0, atol=1e-12)
    np.testing.assert_allclose(refit.stds, 1.0, atol=1e-12)


def test_unfitted_standardizer_is_state_error():
    with pytest.raises(StateError):
        apply_standardizer(None, np.zeros(3))


# --- observation layouts --------------------------------------------------------

@pytest.fixture(scope="module")
def sample_records():
    return generate(default_network(disruption_rate=0.5), 60, seed=11)


def test_tas_layout_has_no_disruption_columns(sample_records):
    spec = fit_feature_spec("TAS", intra_hidden_features("TAS"),
                            intra_observation_sources("TAS"), sample_records)
    assert spec.observation_sources == ("RTE", "FREQ", "PAX DMD")
    assert spec.observation_features == (
        "route", "dow_sin", "dow_cos", "doy_sin", "doy_cos", "moy_sin", "moy_cos",
        "season_sin", "season_cos", "ONBD_CT")
    assert not any(name.startswith("disrp_") for name in spec.observation_features)


def test_tad_layout_includes_disruption_one_hot(sample_records):
    spec = fit_feature_spec("TAD", intra_hidden_features("TAD"),
                            intra_observation_sources("TAD"), sample_records)
    assert spec.observation_sources == ("ORIG", "DEST", "FREQ", "PAX DMD", "DISRP")
    disrp = [name for name in spec.observation_features if name.startswith("disrp_")]
    assert disrp == [f"disrp_{code}" for code in DELAY_CODES]
    assert "sched_route_originator_flag" in spec.observation_features
    assert ("orig_x_dir", "orig_y_dir", "orig_z_dir") == spec.observation_features[:3]


def test_empty_record_list_keeps_column_count(sample_records):
    spec = fit_feature_spec("TAS", intra_hidden_features("TAS"),
                            intra_observation_sources("TAS"), sample_records)
    params = fit_observation_standardizer(sample_records, spec)
    matrix = build_observation_matrix([], spec, params)
    assert matrix.shape == (0, spec.n_columns)


def test_standardized_training_matrix_is_centered(sample_records):
    spec = fit_feature_spec("TAD", intra_hidden_features("TAD"),
                            intra_observation_sources("TAD"), sample_records)
    params = fit_observation_standardizer(sample_records, spec)
    matrix = build_observation_matrix(sample_records, spec, params)
    live = ~params.constant_mask
    np.testing.assert_allclose(matrix[:, live].mean(axis=0), 0.0, atol=1e-9)
    np.testing.assert_allclose(matrix[:, live].std(axis=0), 1.0, atol=1e-9)
    np.testing.assert_allclose(matrix[:, params.constant_mask], 0.0, atol=0)


def test_layout_manifest_covers_all_columns(sample_records):
    spec = fit_feature_spec("TAD", intra_hidden_features("TAD"),
                            intra_observation_sources("TAD"), sample_records)
    covered = [i for entry in spec.manifest for i in entry.columns]
    assert covered == list(range(spec.n_columns))
    assert [e.source for e in spec.manifest] == list(spec.observation_sources)


def test_missing_mandatory_field_names_the_field(sample_records):
    import dataclasses

    from utfm.errors import RecordError
    from utfm.features.layout import encode_raw_matrix

    spec = fit_feature_spec("TAS->TOS", ("SWAP_FLT_FLAG",), ("taxi_out",),
                            sample_records)
    broken = dataclasses.replace(sample_records[0], taxi_out=None)
    with pytest.raises(RecordError) as err:
        encode_raw_matrix([broken], spec)
    assert err.value.field == "taxi_out"


def test_standardization_is_invertible_for_live_columns(sample_records):
    spec = fit_feature_spec("TAD", intra_hidden_features("TAD"),
                            intra_observation_sources("TAD"), sample_records)
    params = fit_observation_standardizer(sample_records, spec)
    standardized = build_observation_matrix(sample_records, spec, params)
    recovered = standardized * params.stds + params.means
    from utfm.features.layout import encode_raw_matrix

    raw = encode_raw_matrix(sample_records, spec)
    live = ~params.constant_mask
    np.testing.assert_allclose(recovered[:, live], raw[:, live], atol=1e-9)


def test_layout_is_stable_across_runs(sample_records):
    a = fit_feature_spec("TAO", intra_hidden_features("TAO"),
                         intra_observation_sources("TAO"), sample_records)
    b = fit_feature_spec("TAO", intra_hidden_features("TAO"),
                         intra_observation_sources("TAO"), sample_records)
    assert a.observation_features == b.observation_features
    assert a.vocabularies == b.vocabularies
