"""Dataset segmentation: disrupted/non-disrupted lots, folds, hold-out."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from .records import WEATHER_CODES, FlightLegRecord

DEFAULT_SEED = 42
DEFAULT_FOLDS = 5
DEFAULT_TEST_FRACTION = 0.2


@dataclass(frozen=True)
class DatasetSplit:
    """Immutable segmentation of one record list.

    ``folds`` and ``test_hold_out`` index into ``records``; the folds
    partition the training indices (everything outside the hold-out)
    exactly. Identical (records, seed) always produce identical partitions.
    """

    records: tuple[FlightLegRecord, ...]
    non_disrupted: tuple[FlightLegRecord, ...]
    disrupted: tuple[FlightLegRecord, ...]
    folds: tuple[tuple[int, ...], ...]
    test_hold_out: tuple[int, ...]
    seed: int

    @property
    def train_indices(self) -> tuple[int, ...]:
        return tuple(i for fold in self.folds for i in fold)

    def train_records(self) -> tuple[FlightLegRecord, ...]:
        chosen = sorted(self.train_indices)
        return tuple(self.records[i] for i in chosen)

    def train_non_disrupted(self) -> tuple[FlightLegRecord, ...]:
        return tuple(r for r in self.train_records() if not r.is_disrupted)

    def train_disrupted(self) -> tuple[FlightLegRecord, ...]:
        return tuple(r for r in self.train_records() if r.is_disrupted)

    def test_records(self) -> tuple[FlightLegRecord, ...]:
        return tuple(self.records[i] for i in sorted(self.test_hold_out))


def segment(records, seed: int = DEFAULT_SEED, n_folds: int = DEFAULT_FOLDS,
            test_fraction: float = DEFAULT_TEST_FRACTION,
            weather_only: bool = False) -> DatasetSplit:
    """Partition records by delay-code presence and build seeded splits.

    ``weather_only`` drops disrupted records whose delay code is outside
    the weather-functional set before segmentation.
    """
    records = list(records)
    if not records:
        raise InputError("segment requires at least one record")
    if n_folds < 1:
        raise InputError("n_folds must be >= 1")
    if not (0.0 <= test_fraction < 1.0):
        raise InputError("test_fraction must lie in [0, 1)")
    if weather_only:
        records = [r for r in records
                   if not r.is_disrupted or r.delay_code in WEATHER_CODES]

    disrupted = tuple(r for r in records if r.is_disrupted)
    non_disrupted = tuple(r for r in records if not r.is_disrupted)

    rng = np.random.default_rng(seed)
    order = rng.permutation(len(records))
    n_test = int(round(len(records) * test_fraction))
    test = tuple(int(i) for i in np.sort(order[:n_test]))
    train_order = order[n_test:]
    folds = tuple(tuple(int(i) for i in np.sort(chunk))
                  for chunk in np.array_split(train_order, n_folds))
    return DatasetSplit(records=tuple(records), non_disrupted=non_disrupted,
                        disrupted=disrupted, folds=folds, test_hold_out=test,
                        seed=seed)
