"""LZW with fixed 12-bit codes.

The dictionary starts with the 256 single-byte strings. When it is full
(4096 entries) both sides reset it to the initial 256 entries instead of
adding the next phrase; no clear code is transmitted. Codes are packed
MSB-first and the final byte is zero-padded.
"""
import numpy as np

from .._accel import jit
from ..errors import CorruptStreamError

CODE_BITS = 12
DICT_SIZE = 1 << CODE_BITS


@jit
def _encode_codes(data):
    n = data.size
    codes = np.empty(n, dtype=np.int32)
    if n == 0:
        return codes
    child = np.full(DICT_SIZE * 256, -1, dtype=np.int16)
    keys = np.zeros(DICT_SIZE, dtype=np.int64)
    nxt = 256
    k = 0
    w = np.int64(data[0])
    for i in range(1, n):
        c = np.int64(data[i])
        key = w * 256 + c
        hit = child[key]
        if hit >= 0:
            w = np.int64(hit)
            continue
        codes[k] = w
        k += 1
        if nxt < DICT_SIZE:
            child[key] = nxt
            keys[nxt] = key
            nxt += 1
        else:
            for j in range(256, DICT_SIZE):
                child[keys[j]] = -1
            nxt = 256
        w = c
    codes[k] = w
    return codes[:k + 1]


@jit
def _pack12(codes):
    nbits = codes.size * CODE_BITS
    out = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    bit = 0
    for code in codes:
        for s in range(CODE_BITS - 1, -1, -1):
            if (code >> s) & 1:
                out[bit >> 3] |= 0x80 >> (bit & 7)
            bit += 1
    return out


@jit
def _decode(data):
    """Returns ``(output, error_offset)``; error_offset is -1 on success."""
    ncodes = data.size * 8 // CODE_BITS
    empty = np.empty(0, dtype=np.uint8)
    # more than a byte of leftover bits, or nonzero padding, means garbage
    pad = data.size * 8 - ncodes * CODE_BITS
    if pad >= 8:
        return empty, data.size - 1
    if pad and data[data.size - 1] & ((1 << pad) - 1):
        return empty, data.size - 1
    prefix = np.zeros(DICT_SIZE, dtype=np.int32)
    suffix = np.zeros(DICT_SIZE, dtype=np.uint8)
    first = np.zeros(DICT_SIZE, dtype=np.uint8)
    length = np.zeros(DICT_SIZE, dtype=np.int64)
    for s in range(256):
        suffix[s] = s
        first[s] = s
        length[s] = 1
    out = np.empty(max(16, data.size * 2), dtype=np.uint8)
    o = 0
    nxt = 256
    prev = -1
    bit = 0
    for i in range(ncodes):
        code = 0
        for _ in range(CODE_BITS):
            code = (code << 1) | ((np.int64(data[bit >> 3]) >> (7 - (bit & 7))) & 1)
            bit += 1
        if prev >= 0 and nxt == DICT_SIZE:
            nxt = 256
            prev = -1
        if prev < 0:
            if code >= 256:
                return empty, (i * CODE_BITS) >> 3
            entry_len = 1
            entry_first = code
        elif code < nxt:
            entry_len = length[code]
            entry_first = first[code]
        elif code == nxt:
            entry_len = length[prev] + 1
            entry_first = first[prev]
        else:
            return empty, (i * CODE_BITS) >> 3
        if prev >= 0:
            prefix[nxt] = prev
            suffix[nxt] = entry_first
            first[nxt] = first[prev]
            length[nxt] = length[prev] + 1
            nxt += 1
        while o + entry_len > out.size:
            grown = np.empty(out.size * 2, dtype=np.uint8)
            grown[:o] = out[:o]
            out = grown
        c = code
        for j in range(entry_len - 1, -1, -1):
            out[o + j] = suffix[c]
            c = prefix[c]
        o += entry_len
        prev = code
    return out[:o].copy(), -1


def encode(data):
    return _pack12(_encode_codes(np.frombuffer(data, dtype=np.uint8))).tobytes()


def decode(data):
    out, err = _decode(np.frombuffer(data, dtype=np.uint8))
    if err >= 0:
        raise CorruptStreamError("invalid LZW code stream", codec="lzw", offset=int(err))
    return out.tobytes()
