"""Flight-leg record schema and validation.

One record is one flight leg with three field classes: determinate
aleatoric (schedule facts: calendar, geography, demand), indeterminate
aleatoric (the optional disruption delay code), and epistemic
(schedule/decision/outcome quantities whose alteration risk is
knowledge-driven). A record is *disrupted* iff it carries a delay code.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from ..errors import RecordError

# Delay-cause codes, all weather-functional: gate holds, icing, inspections.
DELAY_CODES = ("HD03", "HD06", "HD07", "HD08", "HD09", "MX05", "MX07", "MX08")
WEATHER_CODES = frozenset(DELAY_CODES)

HOURS_PER_DAY = 24.0


@dataclass(frozen=True)
class FlightLegRecord:
    # identifiers
    flight_id: str
    date: str  # ISO yyyy-mm-dd

    # determinate aleatoric
    dow: int  # day of week, 1..7
    doy: int  # day of year, 1..366
    moy: int  # month of year, 1..12
    season: int  # 1..4
    orig_lat: float
    orig_lon: float
    dest_lat: float
    dest_lon: float
    ONBD_CT: int
    sched_route_originator_flag: int  # 1 on the first leg of the day

    # indeterminate aleatoric
    delay_code: str | None
    delay_code_mins: float

    # epistemic: schedule / decision / outcome quantities
    SCHED_ACFT_TYPE: str
    ACTL_ACFT_TYPE: str
    SWAP_FLT_FLAG: int
    SCHED_TURN_MINS: float
    ACTL_TURN_MINS: float
    ADJST_TURN_MINS: float
    taxi_out: float
    taxi_in: float
    sched_block_mins: float
    actl_block_mins: float
    actl_enroute_mins: float
    tod_sched_PB: float
    tod_sched_TO: float
    tod_sched_LD: float
    tod_sched_GP: float
    tod_actl_PB: float
    tod_actl_TO: float
    tod_actl_LD: float
    tod_actl_GP: float
    shiftper_sched_PB: float
    shiftper_sched_TO: float
    shiftper_sched_LD: float
    shiftper_sched_GP: float
    shiftper_actl_PB: float
    shiftper_actl_TO: float
    shiftper_actl_LD: float
    shiftper_actl_GP: float
    DELY_MINS: float
    DOT_DELAY_MINS: float
    late_out_vs_sched_mins: float

    @property
    def is_disrupted(self) -> bool:
        return self.delay_code is not None

    def validate(self, row: int | None = None) -> None:
        """Raise RecordError on the first violated invariant."""
        def bad(field: str, message: str):
            where = f" (row {row})" if row is not None else ""
            return RecordError(f"{field}: {message}{where}", row=row, field=field)

        if not self.flight_id:
            raise bad("flight_id", "must be non-empty")
        if not (1 <= self.dow <= 7):
            raise bad("dow", f"{self.dow} outside 1..7")
        if not (1 <= self.doy <= 366):
            raise bad("doy", f"{self.doy} outside 1..366")
        if not (1 <= self.moy <= 12):
            raise bad("moy", f"{self.moy} outside 1..12")
        if not (1 <= self.season <= 4):
            raise bad("season", f"{self.season} outside 1..4")
        if not (-90.0 <= self.orig_lat <= 90.0):
            raise bad("orig_lat", f"{self.orig_lat} outside [-90, 90]")
        if not (-90.0 <= self.dest_lat <= 90.0):
            raise bad("dest_lat", f"{self.dest_lat} outside [-90, 90]")
        if not (-180.0 < self.orig_lon <= 180.0):
            raise bad("orig_lon", f"{self.orig_lon} outside (-180, 180]")
        if not (-180.0 < self.dest_lon <= 180.0):
            raise bad("dest_lon", f"{self.dest_lon} outside (-180, 180]")
        if self.ONBD_CT < 0:
            raise bad("ONBD_CT", "must be >= 0")
        if self.sched_route_originator_flag not in (0, 1):
            raise bad("sched_route_originator_flag", "must be 0 or 1")
        if self.SWAP_FLT_FLAG not in (0, 1):
            raise bad("SWAP_FLT_FLAG", "must be 0 or 1")
        if self.delay_code is not None and self.delay_code not in DELAY_CODES:
            raise bad("delay_code", f"{self.delay_code!r} not one of {DELAY_CODES}")
        for field in ("delay_code_mins", "SCHED_TURN_MINS", "ACTL_TURN_MINS",
                      "ADJST_TURN_MINS", "taxi_out", "taxi_in", "sched_block_mins",
                      "actl_block_mins", "actl_enroute_mins", "DELY_MINS",
                      "DOT_DELAY_MINS", "late_out_vs_sched_mins"):
            if getattr(self, field) < 0:
                raise bad(field, "duration must be >= 0")
        for field in (f"tod_{kind}_{event}" for kind in ("sched", "actl")
                      for event in ("PB", "TO", "LD", "GP")):
            value = getattr(self, field)
            if not (0.0 <= value < HOURS_PER_DAY):
                raise bad(field, f"{value} outside [0, 24)")
        for field in (f"shiftper_{kind}_{event}" for kind in ("sched", "actl")
                      for event in ("PB", "TO", "LD", "GP")):
            value = getattr(self, field)
            if not (0.0 <= value <= 100.0):
                raise bad(field, f"{value} outside [0, 100]")
        if self.actl_block_mins < self.actl_enroute_mins:
            raise bad("actl_block_mins", "block time must cover the enroute time")


RECORD_FIELDS = tuple(f.name for f in fields(FlightLegRecord))
