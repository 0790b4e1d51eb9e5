"""Adaptive order-0 binary arithmetic coder.

Input bytes are coded bit by bit (MSB first) against a single adaptive
probability estimated from 0/1 counts, which are halved once their sum
exceeds ``COUNT_LIMIT``. The coder keeps 32-bit ``low``/``high`` bounds and
renormalizes with the usual underflow (pending-bit) handling.

Stream layout: varint input length in bits, then the code bits packed
MSB-first and zero-padded. The decoder knows exactly how many code bits the
encoder emitted, so truncation and trailing bytes are both detected.
"""
import numpy as np

from .._accel import jit
from ..bitio import varint_decode, varint_encode
from ..errors import CorruptStreamError

TOP = (1 << 32) - 1
HALF = 1 << 31
QUARTER = 1 << 30
THREE_QUARTERS = 3 << 30
COUNT_LIMIT = 1 << 16


@jit
def _put(buf, n, bit):
    if n == buf.size:
        grown = np.zeros(buf.size * 2, dtype=np.uint8)
        grown[:n] = buf
        buf = grown
    buf[n] = bit
    return buf, n + 1


@jit
def _encode(data):
    low = np.int64(0)
    high = np.int64(TOP)
    pending = 0
    c0 = np.int64(1)
    c1 = np.int64(1)
    buf = np.zeros(max(64, data.size * 2), dtype=np.uint8)
    nout = 0
    for byte in data:
        for s in range(7, -1, -1):
            bit = (byte >> s) & 1
            split = low + ((high - low + 1) * c0) // (c0 + c1) - 1
            if bit:
                low = split + 1
                c1 += 1
            else:
                high = split
                c0 += 1
            if c0 + c1 > COUNT_LIMIT:
                c0 = (c0 + 1) >> 1
                c1 = (c1 + 1) >> 1
            while True:
                if high < HALF:
                    buf, nout = _put(buf, nout, 0)
                    for _ in range(pending):
                        buf, nout = _put(buf, nout, 1)
                    pending = 0
                elif low >= HALF:
                    buf, nout = _put(buf, nout, 1)
                    for _ in range(pending):
                        buf, nout = _put(buf, nout, 0)
                    pending = 0
                    low -= HALF
                    high -= HALF
                elif low >= QUARTER and high < THREE_QUARTERS:
                    pending += 1
                    low -= QUARTER
                    high -= QUARTER
                else:
                    break
                low = 2 * low
                high = 2 * high + 1
    pending += 1
    final = 0 if low < QUARTER else 1
    buf, nout = _put(buf, nout, final)
    for _ in range(pending):
        buf, nout = _put(buf, nout, 1 - final)
    return buf[:nout]


@jit
def _read(data, pos):
    if pos >= data.size * 8:
        return 0
    return (np.int64(data[pos >> 3]) >> (7 - (pos & 7))) & 1


@jit
def _decode(data, nbits):
    """Returns ``(output, code_bits_emitted_by_encoder)``."""
    out = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    low = np.int64(0)
    high = np.int64(TOP)
    value = np.int64(0)
    for i in range(32):
        value = (value << 1) | _read(data, i)
    pos = 32
    shifts = 0
    c0 = np.int64(1)
    c1 = np.int64(1)
    for i in range(nbits):
        split = low + ((high - low + 1) * c0) // (c0 + c1) - 1
        if value > split:
            out[i >> 3] |= 0x80 >> (i & 7)
            low = split + 1
            c1 += 1
        else:
            high = split
            c0 += 1
        if c0 + c1 > COUNT_LIMIT:
            c0 = (c0 + 1) >> 1
            c1 = (c1 + 1) >> 1
        while True:
            if high < HALF:
                pass
            elif low >= HALF:
                low -= HALF
                high -= HALF
                value -= HALF
            elif low >= QUARTER and high < THREE_QUARTERS:
                low -= QUARTER
                high -= QUARTER
                value -= QUARTER
            else:
                break
            low = 2 * low
            high = 2 * high + 1
            value = 2 * value + _read(data, pos)
            pos += 1
            shifts += 1
    return out, shifts + 2


def encode(data):
    arr = np.frombuffer(data, dtype=np.uint8)
    return varint_encode(arr.size * 8) + np.packbits(_encode(arr)).tobytes()


def decode(data):
    nbits, pos = varint_decode(data, 0, codec="arith")
    if nbits % 8:
        raise CorruptStreamError("bit length is not a whole number of bytes", codec="arith", offset=0)
    payload = np.frombuffer(data, dtype=np.uint8, offset=pos)
    out, code_bits = _decode(payload, nbits)
    expected = (code_bits + 7) // 8
    if payload.size < expected:
        raise CorruptStreamError("truncated arithmetic payload", codec="arith", offset=len(data))
    if payload.size > expected:
        raise CorruptStreamError("trailing bytes after arithmetic payload", codec="arith",
                                 offset=pos + expected)
    return out.tobytes()
