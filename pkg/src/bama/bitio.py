"""Bit vectors, block segmentation, byte packing and varints.

Bits are packed MSB-first: bit 0 of a vector is the most significant bit of
byte 0. A ragged tail is zero-padded when packed; the true bit length travels
separately.
"""
from dataclasses import dataclass

import numpy as np

from .errors import CorruptStreamError, VarintOverflowError

MAX_VARINT_BYTES = 10


class BitVector:
    """Immutable sequence of 0/1 values backed by a read-only uint8 array."""

    __slots__ = ("_bits",)

    def __init__(self, bits=()):
        arr = np.array(bits, dtype=np.uint8).reshape(-1)
        if arr.size and arr.max() > 1:
            raise ValueError("BitVector values must be 0 or 1")
        arr.setflags(write=False)
        self._bits = arr

    @classmethod
    def _wrap(cls, arr):
        # trusted path: arr is already a 0/1 uint8 array nobody else holds
        obj = cls.__new__(cls)
        arr.setflags(write=False)
        obj._bits = arr
        return obj

    @classmethod
    def zeros(cls, length):
        return cls._wrap(np.zeros(length, dtype=np.uint8))

    @classmethod
    def from_positions(cls, length, positions):
        arr = np.zeros(length, dtype=np.uint8)
        arr[np.asarray(list(positions), dtype=np.int64)] = 1
        return cls._wrap(arr)

    @classmethod
    def from_bytes(cls, data, length=None):
        return cls._wrap(unpack_bits(data, length))

    @classmethod
    def from_string(cls, text):
        """Build from a string such as ``"1001 0010"``; whitespace is ignored."""
        digits = "".join(text.split())
        if set(digits) - {"0", "1"}:
            raise ValueError("bit string may only contain 0 and 1")
        return cls._wrap(np.frombuffer(digits.encode(), dtype=np.uint8) - ord("0"))

    @property
    def array(self):
        return self._bits

    def to_bytes(self):
        return pack_bits(self._bits)

    def positions(self):
        return np.flatnonzero(self._bits)

    def count_ones(self):
        return int(np.count_nonzero(self._bits))

    def __len__(self):
        return self._bits.size

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return BitVector._wrap(self._bits[idx].copy())
        return int(self._bits[idx])

    def __iter__(self):
        return iter(self._bits.tolist())

    def __eq__(self, other):
        if not isinstance(other, BitVector):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash((self._bits.size, self._bits.tobytes()))

    def __repr__(self):
        if len(self) <= 64:
            return f"BitVector('{''.join(map(str, self._bits.tolist()))}')"
        return f"BitVector(<{len(self)} bits, {self.count_ones()} ones>)"


@dataclass(frozen=True)
class BitBlock:
    index: int
    bits: BitVector
    nominal_size: int

    def __post_init__(self):
        if len(self.bits) > self.nominal_size:
            raise ValueError("block holds more bits than its nominal size")

    def __len__(self):
        return len(self.bits)


def pack_bits(bits):
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


def unpack_bits(data, length=None):
    """Unpack bytes into a writable uint8 0/1 array, trimmed to ``length`` bits."""
    arr = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))
    if length is not None:
        if length > arr.size:
            raise CorruptStreamError(f"need {length} bits but only {arr.size} available")
        arr = arr[:length]
    return arr.copy()


def split_blocks(stream, block_size):
    if block_size < 1:
        raise ValueError("block_size must be positive")
    bits = stream.array
    return [
        BitBlock(i, BitVector._wrap(bits[start:start + block_size].copy()), block_size)
        for i, start in enumerate(range(0, bits.size, block_size))
    ]


def join_blocks(blocks):
    for expected, block in enumerate(blocks):
        if block.index != expected:
            raise CorruptStreamError(f"block index {block.index} found where {expected} expected")
    if not blocks:
        return BitVector()
    return BitVector._wrap(np.concatenate([b.bits.array for b in blocks]))


def varint_encode(v):
    """Unsigned LEB128: 7-bit groups, least significant first, high bit = more."""
    if v < 0:
        raise ValueError("varint_encode takes nonnegative integers")
    out = bytearray()
    while True:
        group = v & 0x7F
        v >>= 7
        if v:
            out.append(group | 0x80)
        else:
            out.append(group)
            return bytes(out)


def varint_decode(data, offset=0, codec=None):
    """Return ``(value, bytes_consumed)`` for the varint starting at ``offset``.

    ``codec`` is attached to any error raised, for callers inside a coder.
    """
    value = 0
    shift = 0
    pos = offset
    while True:
        if pos - offset >= MAX_VARINT_BYTES:
            raise VarintOverflowError("varint longer than 10 bytes", codec=codec, offset=offset)
        if pos >= len(data):
            raise CorruptStreamError("truncated varint", codec=codec, offset=pos)
        byte = data[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            return value, pos - offset


def varint_len(v):
    n = 1
    while v >= 0x80:
        v >>= 7
        n += 1
    return n
