"""Seeded synthetic flight-leg generator.

Stands in for the proprietary airline feed: a small point-to-point network
with configurable disruption rate, weather delay-code mixture, and at
least two latent behavioral regimes (e.g. swap-prone vs delay-prone
recovery policies) so that learned models have recoverable structure.
Identical (config, n, seed) produce identical records.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass

import numpy as np

from .data.records import DELAY_CODES, FlightLegRecord
from .errors import ConfigError
from .features.geo import GeoPoint, route_distance

_BASE_YEAR = 2023  # non-leap: day-of-year spans 1..365


@dataclass(frozen=True)
class Regime:
    """One latent recovery policy with its characteristic decision levels."""

    name: str
    weight: float
    dely_mins_mean: float
    dely_mins_std: float
    dot_delay_offset: float  # arrival-delay drift relative to pushback delay
    swap_rate: float
    turn_adjust_mean: float

    def to_document(self) -> dict:
        return {"name": self.name, "weight": self.weight,
                "dely_mins_mean": self.dely_mins_mean,
                "dely_mins_std": self.dely_mins_std,
                "dot_delay_offset": self.dot_delay_offset,
                "swap_rate": self.swap_rate,
                "turn_adjust_mean": self.turn_adjust_mean}

    @classmethod
    def from_document(cls, doc: dict) -> "Regime":
        return cls(**doc)


@dataclass(frozen=True)
class NetworkConfig:
    airports: tuple  # (code, lat, lon)
    routes: tuple  # (orig_code, dest_code, base_block_mins, frequency_weight)
    aircraft_types: tuple
    disruption_rate: float
    delay_code_weights: dict  # code -> probability
    regimes: tuple  # Regime

    def __post_init__(self):
        if len(self.airports) < 2:
            raise ConfigError("network needs at least 2 airports")
        if not (0.0 <= self.disruption_rate <= 1.0):
            raise ConfigError("disruption_rate must lie in [0, 1]")
        if len(self.regimes) < 2:
            raise ConfigError("need at least 2 behavioral regimes")
        codes = set(self.delay_code_weights)
        if not codes or not codes.issubset(set(DELAY_CODES)):
            raise ConfigError(f"delay_code_weights keys must be delay codes {DELAY_CODES}")
        if abs(sum(self.delay_code_weights.values()) - 1.0) > 1e-9:
            raise ConfigError("delay_code_weights must sum to 1")
        if abs(sum(r.weight for r in self.regimes) - 1.0) > 1e-9:
            raise ConfigError("regime weights must sum to 1")
        known = {code for code, _, _ in self.airports}
        for orig, dest, block, weight in self.routes:
            if orig not in known or dest not in known:
                raise ConfigError(f"route {orig}-{dest} references an unknown airport")
            if block <= 30:
                raise ConfigError(f"route {orig}-{dest} base block must exceed 30 minutes")
            if weight <= 0:
                raise ConfigError(f"route {orig}-{dest} frequency weight must be positive")
        if not self.routes:
            raise ConfigError("network needs at least one route")

    def airport(self, code: str) -> GeoPoint:
        for c, lat, lon in self.airports:
            if c == code:
                return GeoPoint(lat, lon)
        raise ConfigError(f"unknown airport {code}")

    def to_document(self) -> dict:
        return {
            "airports": [[c, float(lat), float(lon)] for c, lat, lon in self.airports],
            "routes": [[o, d, float(b), float(w)] for o, d, b, w in self.routes],
            "aircraft_types": list(self.aircraft_types),
            "disruption_rate": float(self.disruption_rate),
            "delay_code_weights": {k: float(v) for k, v in self.delay_code_weights.items()},
            "regimes": [r.to_document() for r in self.regimes],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "NetworkConfig":
        return cls(
            airports=tuple((c, float(lat), float(lon)) for c, lat, lon in doc["airports"]),
            routes=tuple((o, d, float(b), float(w)) for o, d, b, w in doc["routes"]),
            aircraft_types=tuple(doc["aircraft_types"]),
            disruption_rate=float(doc["disruption_rate"]),
            delay_code_weights={k: float(v) for k, v in doc["delay_code_weights"].items()},
            regimes=tuple(Regime.from_document(r) for r in doc["regimes"]),
        )


_DEFAULT_AIRPORTS = (
    ("DAL", 32.8471, -96.8518),
    ("HOU", 29.6454, -95.2789),
    ("MDW", 41.7868, -87.7522),
    ("BOS", 42.3656, -71.0096),
    ("AUS", 30.1945, -97.6699),
    ("PHX", 33.4343, -112.0116),
)

_DEFAULT_CODE_WEIGHTS = {
    "HD03": 0.20, "HD06": 0.20, "HD07": 0.15, "HD08": 0.10,
    "HD09": 0.10, "MX05": 0.10, "MX07": 0.10, "MX08": 0.05,
}


def default_network(disruption_rate: float = 0.25) -> NetworkConfig:
    """Point-to-point network over six airports, both directions per pair."""
    points = {code: GeoPoint(lat, lon) for code, lat, lon in _DEFAULT_AIRPORTS}
    pairs = (("DAL", "HOU"), ("MDW", "BOS"), ("DAL", "AUS"),
             ("DAL", "PHX"), ("MDW", "DAL"), ("HOU", "AUS"), ("PHX", "MDW"))
    routes = []
    for orig, dest in pairs:
        block = 35.0 + round(route_distance(points[orig], points[dest]) / 11.5, 0)
        routes.append((orig, dest, block, 1.0))
        routes.append((dest, orig, block, 1.0))
    regimes = (
        Regime(name="delay-prone", weight=0.5, dely_mins_mean=60.0, dely_mins_std=15.0,
               dot_delay_offset=5.0, swap_rate=0.10, turn_adjust_mean=20.0),
        Regime(name="swap-prone", weight=0.5, dely_mins_mean=10.0, dely_mins_std=4.0,
               dot_delay_offset=2.0, swap_rate=0.75, turn_adjust_mean=35.0),
    )
    return NetworkConfig(
        airports=_DEFAULT_AIRPORTS,
        routes=tuple(routes),
        aircraft_types=("B737-700", "B737-800", "B738-MAX"),
        disruption_rate=disruption_rate,
        delay_code_weights=dict(_DEFAULT_CODE_WEIGHTS),
        regimes=regimes,
    )


def _shift_pct(tod_hours: float) -> float:
    # work shifts anchored at 00/08/16; percentage of the 8h shift elapsed
    return round((tod_hours % 8.0) / 8.0 * 100.0, 2)


def _tod(value_hours: float) -> float:
    rounded = round(value_hours % 24.0, 4)
    return 0.0 if rounded >= 24.0 else rounded


def generate(config: NetworkConfig, n_flights: int, seed: int) -> list[FlightLegRecord]:
    """Produce schema-valid records, disrupted per the configured rate."""
    if n_flights < 1:
        raise ConfigError("n_flights must be >= 1")
    rng = np.random.default_rng(seed)
    route_weights = np.array([w for *_, w in config.routes], dtype=float)
    route_weights /= route_weights.sum()
    codes = sorted(config.delay_code_weights)
    code_weights = np.array([config.delay_code_weights[c] for c in codes])
    regime_weights = np.array([r.weight for r in config.regimes])

    records = []
    for i in range(n_flights):
        orig_code, dest_code, base_block, _ = config.routes[
            int(rng.choice(len(config.routes), p=route_weights))]
        orig = config.airport(orig_code)
        dest = config.airport(dest_code)

        doy = int(rng.integers(1, 366))
        day = datetime.date(_BASE_YEAR, 1, 1) + datetime.timedelta(days=doy - 1)
        moy = day.month
        season = (moy % 12) // 3 + 1

        sched_acft = str(rng.choice(config.aircraft_types))
        tod_sched_pb = round(float(rng.uniform(5.0, 22.0)) * 12.0) / 12.0
        sched_turn = round(float(np.clip(rng.normal(45.0, 10.0), 25.0, 90.0)), 1)
        plan_taxi_out = float(np.clip(rng.normal(12.0, 2.5), 5.0, 25.0))
        plan_taxi_in = float(np.clip(rng.normal(7.0, 1.5), 3.0, 20.0))
        sched_block = round(float(base_block + rng.normal(0.0, 5.0)), 1)
        plan_enroute = max(20.0, sched_block - plan_taxi_out - plan_taxi_in)
        onboard = int(np.clip(rng.normal(120.0, 30.0), 40, 180))
        originator = 1 if tod_sched_pb < 8.0 else 0

        tod_sched_to = _tod(tod_sched_pb + plan_taxi_out / 60.0)
        tod_sched_ld = _tod(tod_sched_pb + (plan_taxi_out + plan_enroute) / 60.0)
        tod_sched_gp = _tod(tod_sched_pb + sched_block / 60.0)

        disrupted = bool(rng.random() < config.disruption_rate)
        if disrupted:
            delay_code = str(rng.choice(codes, p=code_weights / code_weights.sum()))
            regime = config.regimes[int(rng.choice(len(config.regimes), p=regime_weights))]
            dely = round(max(0.0, float(rng.normal(regime.dely_mins_mean, regime.dely_mins_std))), 1)
            swap = int(rng.random() < regime.swap_rate)
            adjst_turn = round(sched_turn + max(0.0, float(rng.normal(regime.turn_adjust_mean, 5.0))), 1)
            actl_turn = round(max(15.0, adjst_turn + float(rng.normal(0.0, 3.0))), 1)
            taxi_out = round(float(np.clip(plan_taxi_out + max(0.0, rng.normal(8.0, 4.0)), 4.0, 60.0)), 1)
            enroute = round(max(20.0, plan_enroute + float(rng.normal(5.0, 6.0))), 1)
            taxi_in = round(float(np.clip(plan_taxi_in + max(0.0, rng.normal(3.0, 2.0)), 3.0, 40.0)), 1)
            late_out = round(dely + max(0.0, float(rng.normal(0.5, 0.5))), 1)
            tod_actl_pb = _tod(tod_sched_pb + dely / 60.0)
            if swap:
                others = [t for t in config.aircraft_types if t != sched_acft]
                actl_acft = str(rng.choice(others)) if others else sched_acft
            else:
                actl_acft = sched_acft
            delay_code_mins = round(dely * float(rng.uniform(0.6, 1.0)), 1)
        else:
            delay_code = None
            dely = 0.0
            swap = 0
            adjst_turn = sched_turn
            actl_turn = round(max(15.0, sched_turn + float(rng.normal(0.0, 2.0))), 1)
            taxi_out = round(max(3.0, plan_taxi_out + float(rng.normal(0.0, 1.5))), 1)
            enroute = round(max(20.0, plan_enroute + float(rng.normal(0.0, 4.0))), 1)
            taxi_in = round(max(2.0, plan_taxi_in + float(rng.normal(0.0, 1.0))), 1)
            late_out = 0.0
            tod_actl_pb = tod_sched_pb
            actl_acft = sched_acft
            delay_code_mins = 0.0

        actl_block = round(taxi_out + enroute + taxi_in, 1)
        if disrupted:
            dot_delay = round(max(0.0, dely + (actl_block - sched_block)
                                  + float(rng.normal(regime.dot_delay_offset, 5.0))), 1)
        else:
            dot_delay = 0.0
        tod_actl_to = _tod(tod_actl_pb + taxi_out / 60.0)
        tod_actl_ld = _tod(tod_actl_pb + (taxi_out + enroute) / 60.0)
        tod_actl_gp = _tod(tod_actl_pb + actl_block / 60.0)

        record = FlightLegRecord(
            flight_id=f"F{i:05d}",
            date=day.isoformat(),
            dow=day.isoweekday(),
            doy=doy,
            moy=moy,
            season=season,
            orig_lat=orig.latitude_deg,
            orig_lon=orig.longitude_deg,
            dest_lat=dest.latitude_deg,
            dest_lon=dest.longitude_deg,
            ONBD_CT=onboard,
            sched_route_originator_flag=originator,
            delay_code=delay_code,
            delay_code_mins=delay_code_mins,
            SCHED_ACFT_TYPE=sched_acft,
            ACTL_ACFT_TYPE=actl_acft,
            SWAP_FLT_FLAG=swap,
            SCHED_TURN_MINS=sched_turn,
            ACTL_TURN_MINS=actl_turn,
            ADJST_TURN_MINS=adjst_turn,
            taxi_out=taxi_out,
            taxi_in=taxi_in,
            sched_block_mins=sched_block,
            actl_block_mins=actl_block,
            actl_enroute_mins=enroute,
            tod_sched_PB=_tod(tod_sched_pb),
            tod_sched_TO=tod_sched_to,
            tod_sched_LD=tod_sched_ld,
            tod_sched_GP=tod_sched_gp,
            tod_actl_PB=_tod(tod_actl_pb),
            tod_actl_TO=tod_actl_to,
            tod_actl_LD=tod_actl_ld,
            tod_actl_GP=tod_actl_gp,
            shiftper_sched_PB=_shift_pct(tod_sched_pb),
            shiftper_sched_TO=_shift_pct(tod_sched_to),
            shiftper_sched_LD=_shift_pct(tod_sched_ld),
            shiftper_sched_GP=_shift_pct(tod_sched_gp),
            shiftper_actl_PB=_shift_pct(tod_actl_pb),
            shiftper_actl_TO=_shift_pct(tod_actl_to),
            shiftper_actl_LD=_shift_pct(tod_actl_ld),
            shiftper_actl_GP=_shift_pct(tod_actl_gp),
            DELY_MINS=dely,
            DOT_DELAY_MINS=dot_delay,
            late_out_vs_sched_mins=late_out,
        )
        record.validate()
        records.append(record)
    return records
