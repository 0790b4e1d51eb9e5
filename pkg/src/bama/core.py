"""The BAMA catalyst: treatment search and block encode/decode.

A treatment anchors at the first eligible 1 of a block, tries every later 1 as
the second element of an arithmetic progression, and keeps the longest run
(smallest step on ties). Each accepted run becomes a triple
``(count, start, step)`` and its ones are cleared from the residual block.

Mode 1 clears a run's ones before the next search, so later runs only see
what is left. Mode 2 searches the original bits throughout: anchors skip ones
already claimed, but runs may pass through them. All claimed ones are cleared
at the end, and overlapping triples decode by set union.
"""
import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import _treat
from .bitio import BitBlock, BitVector, varint_len
from .errors import ConfigError, CorruptStreamError


class Mode(enum.IntEnum):
    MODE1 = 1
    MODE2 = 2


class Triphthong(NamedTuple):
    count_a: int
    start_b: int
    step_m: int

    def positions(self):
        return self.start_b + self.step_m * np.arange(self.count_a, dtype=np.int64)

    def serialized_bits(self):
        return 8 * (varint_len(self.count_a) + varint_len(self.start_b) + varint_len(self.step_m))


@dataclass(frozen=True)
class TreatmentParams:
    min_run: int = 3
    guard: bool = True
    max_treatments_per_block: Optional[int] = None

    def __post_init__(self):
        if self.min_run < 3:
            raise ConfigError("min_run must be at least 3")
        if self.max_treatments_per_block is not None and self.max_treatments_per_block < 0:
            raise ConfigError("max_treatments_per_block must be nonnegative")

    @property
    def kernel_limit(self):
        return -1 if self.max_treatments_per_block is None else self.max_treatments_per_block


@dataclass(frozen=True)
class CatalyzedBlock:
    residual: BitBlock
    triples: tuple
    mode: Mode
    original_length: int


class BlockStats(NamedTuple):
    ones: int
    length: int


def find_treatment(bits, anchor_mask, params=TreatmentParams()):
    """First acceptable run in ``bits`` whose anchor is not set in ``anchor_mask``."""
    if len(anchor_mask) != len(bits):
        raise ValueError("anchor_mask must match bits in length")
    c, b, m = _treat.run_find_first(bits.array, anchor_mask.array, params.min_run)
    if c == 0:
        return None
    return Triphthong(int(c), int(b), int(m))


def guard_accepts(triple, block_stats, guard=True, new_ones=None):
    """Profitability check: side-info bits must undercut the estimated cost of the ones removed.

    ``new_ones`` defaults to ``count_a``; Mode 2 passes the number of ones the
    triple covers that no earlier triple claimed.
    """
    if not guard:
        return True
    new = triple.count_a if new_ones is None else new_ones
    return bool(_treat.guard_ok(triple.count_a, triple.start_b, triple.step_m,
                                new, block_stats.ones, block_stats.length))


def _encode(block, params, mode):
    residual, triples = _treat.run_treatments(
        block.bits.array, max(len(block), 1), mode == Mode.MODE2,
        params.min_run, params.guard, params.kernel_limit)[:2]
    return CatalyzedBlock(
        residual=BitBlock(block.index, BitVector._wrap(residual), block.nominal_size),
        triples=tuple(Triphthong(*map(int, row)) for row in triples),
        mode=mode,
        original_length=len(block),
    )


def encode_block_mode1(block, params=TreatmentParams()):
    return _encode(block, params, Mode.MODE1)


def encode_block_mode2(block, params=TreatmentParams()):
    return _encode(block, params, Mode.MODE2)


def encode_block(block, mode, params=TreatmentParams()):
    return _encode(block, params, Mode(mode))


def coverage_mask(triples, length):
    """Union of the positions covered by ``triples`` as a uint8 array."""
    mask = np.zeros(length, dtype=np.uint8)
    for t in triples:
        if t.count_a < 1 or t.step_m < 1 or t.start_b < 0:
            raise CorruptStreamError(f"malformed triple {tuple(t)}")
        last = t.start_b + (t.count_a - 1) * t.step_m
        if last >= length:
            raise CorruptStreamError(f"triple {tuple(t)} reaches past block length {length}")
        mask[t.start_b:last + 1:t.step_m] = 1
    return mask


def decode_block(cb):
    res = cb.residual.bits.array
    if res.size != cb.original_length:
        raise CorruptStreamError("residual length does not match original length")
    covered = coverage_mask(cb.triples, cb.original_length)
    if np.any(res & covered):
        raise CorruptStreamError("residual has a 1 at a position covered by a triple")
    return BitBlock(cb.residual.index, BitVector._wrap(res | covered), cb.residual.nominal_size)
