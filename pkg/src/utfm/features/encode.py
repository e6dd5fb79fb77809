"""First-degree encodings: periodic sine/cosine pairs and one-hot vectors."""

from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import ConfigError, InputError

log = logging.getLogger(__name__)


def periodic_encode(value: float, period: float) -> tuple[float, float]:
    """Map a value on a cycle of the given period to (sin, cos)."""
    if period <= 0:
        raise InputError(f"period must be > 0, got {period}")
    angle = 2.0 * math.pi * value / period
    return math.sin(angle), math.cos(angle)


def one_hot(category: str, vocabulary) -> np.ndarray:
    """0/1 indicator over the vocabulary.

    Unknown categories yield an all-zero vector and a warning in the run
    log rather than an error, so a single odd row cannot abort a batch.
    """
    vocab = list(vocabulary)
    if not vocab:
        raise ConfigError("one_hot vocabulary must be non-empty")
    if len(set(vocab)) != len(vocab):
        raise ConfigError("one_hot vocabulary entries must be unique")
    out = np.zeros(len(vocab))
    try:
        out[vocab.index(category)] = 1.0
    except ValueError:
        log.warning("unknown category %r for vocabulary %s; encoding all zeros", category, vocab)
    return out
