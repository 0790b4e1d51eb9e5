"""Packet run-length coder.

Each packet starts with a control byte whose low 7 bits hold a length in
1..127. With the high bit set it is a repeat packet followed by the byte to
repeat; otherwise it is a literal packet followed by that many raw bytes.
There is no header: the stream ends where the last packet ends.
"""
import numpy as np

from .._accel import jit
from ..errors import CorruptStreamError

MAX_RUN = 127


@jit
def _encode(data):
    n = data.size
    out = np.empty(n + n // MAX_RUN + 2, dtype=np.uint8)
    o = 0
    lit_start = 0
    lit_len = 0
    i = 0
    while i < n:
        run = 1
        while i + run < n and run < MAX_RUN and data[i + run] == data[i]:
            run += 1
        if run >= 3 or (run == 2 and lit_len == 0):
            if lit_len:
                out[o] = lit_len
                out[o + 1:o + 1 + lit_len] = data[lit_start:lit_start + lit_len]
                o += 1 + lit_len
                lit_len = 0
            out[o] = 0x80 | run
            out[o + 1] = data[i]
            o += 2
            i += run
        else:
            if lit_len == 0:
                lit_start = i
            lit_len += 1
            i += 1
            if lit_len == MAX_RUN:
                out[o] = lit_len
                out[o + 1:o + 1 + lit_len] = data[lit_start:lit_start + lit_len]
                o += 1 + lit_len
                lit_len = 0
    if lit_len:
        out[o] = lit_len
        out[o + 1:o + 1 + lit_len] = data[lit_start:lit_start + lit_len]
        o += 1 + lit_len
    return out[:o]


@jit
def _decoded_size(data):
    """Total output length, or ``-(offset + 1)`` of the first bad packet."""
    pos = 0
    total = 0
    n = data.size
    while pos < n:
        c = np.int64(data[pos])
        length = c & 0x7F
        if length == 0:
            return -(pos + 1)
        need = 2 if c & 0x80 else 1 + length
        if pos + need > n:
            return -(pos + 1)
        total += length
        pos += need
    return total


@jit
def _decode(data, size):
    out = np.empty(size, dtype=np.uint8)
    pos = 0
    o = 0
    while pos < data.size:
        c = np.int64(data[pos])
        length = c & 0x7F
        if c & 0x80:
            out[o:o + length] = data[pos + 1]
            pos += 2
        else:
            out[o:o + length] = data[pos + 1:pos + 1 + length]
            pos += 1 + length
        o += length
    return out


def encode(data):
    return _encode(np.frombuffer(data, dtype=np.uint8)).tobytes()


def decode(data):
    arr = np.frombuffer(data, dtype=np.uint8)
    size = _decoded_size(arr)
    if size < 0:
        raise CorruptStreamError("bad or truncated RLE packet", codec="rle", offset=-size - 1)
    return _decode(arr, size).tobytes()
