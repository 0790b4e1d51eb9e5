"""Static order-0 canonical Huffman coder over bytes.

Stream layout::

    varint   number of input bytes (n); nothing follows when n == 0
    table    (code_length, repeat - 1) byte pairs covering all 256 symbols
    payload  canonical codes, MSB-first, zero-padded to a byte boundary

Canonical codes are assigned in (length, symbol) order. A stream with a
single distinct symbol gives it a 1-bit code.
"""
import heapq

import numpy as np

from .._accel import jit
from ..bitio import varint_decode, varint_encode
from ..errors import CorruptStreamError

MAX_CODE_LENGTH = 63


def code_lengths(freqs):
    """Huffman code length per symbol (0 for absent symbols); ties break on symbol order."""
    lengths = [0] * len(freqs)
    heap = [(int(f), s, (s,)) for s, f in enumerate(freqs) if f > 0]
    if not heap:
        return lengths
    if len(heap) == 1:
        lengths[heap[0][1]] = 1
        return lengths
    heapq.heapify(heap)
    order = len(freqs)
    while len(heap) > 1:
        f1, _, syms1 = heapq.heappop(heap)
        f2, _, syms2 = heapq.heappop(heap)
        for s in syms1 + syms2:
            lengths[s] += 1
        heapq.heappush(heap, (f1 + f2, order, syms1 + syms2))
        order += 1
    return lengths


def canonical_codes(lengths):
    """Map code lengths to canonical code values (as ints)."""
    codes = [0] * len(lengths)
    code = 0
    prev_len = 0
    for length, sym in sorted((l, s) for s, l in enumerate(lengths) if l):
        code <<= length - prev_len
        codes[sym] = code
        code += 1
        prev_len = length
    return codes


def _pack_table(lengths):
    out = bytearray()
    i = 0
    while i < 256:
        j = i
        while j + 1 < 256 and lengths[j + 1] == lengths[i] and j - i < 255:
            j += 1
        out += bytes((lengths[i], j - i))
        i = j + 1
    return bytes(out)


def _unpack_table(data, pos):
    lengths = []
    while len(lengths) < 256:
        if pos + 2 > len(data):
            raise CorruptStreamError("truncated code-length table", codec="huffman", offset=pos)
        length, rep = data[pos], data[pos + 1] + 1
        if length > MAX_CODE_LENGTH or len(lengths) + rep > 256:
            raise CorruptStreamError("bad code-length table entry", codec="huffman", offset=pos)
        lengths += [length] * rep
        pos += 2
    return lengths, pos


@jit
def _encode_payload(data, codes, lengths):
    nbits = 0
    for b in data:
        nbits += lengths[b]
    out = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    bit = 0
    for b in data:
        code = codes[b]
        for s in range(lengths[b] - 1, -1, -1):
            if (code >> np.uint64(s)) & np.uint64(1):
                out[bit >> 3] |= 0x80 >> (bit & 7)
            bit += 1
    return out


@jit
def _decode_payload(data, n, first_code, count, base, symbols, max_len):
    """Decode ``n`` symbols; returns ``(output, bits_used, error_offset)``."""
    out = np.empty(n, dtype=np.uint8)
    total_bits = data.size * 8
    bit = 0
    for i in range(n):
        code = 0
        found = False
        for length in range(1, max_len + 1):
            if bit >= total_bits:
                return out, bit, bit >> 3
            code = (code << 1) | ((np.int64(data[bit >> 3]) >> (7 - (bit & 7))) & 1)
            bit += 1
            idx = code - first_code[length]
            if 0 <= idx < count[length]:
                out[i] = symbols[base[length] + idx]
                found = True
                break
        if not found:
            return out, bit, (bit - 1) >> 3
    return out, bit, -1


def encode(data):
    arr = np.frombuffer(data, dtype=np.uint8)
    head = varint_encode(arr.size)
    if arr.size == 0:
        return head
    lengths = code_lengths(np.bincount(arr, minlength=256))
    if max(lengths) > MAX_CODE_LENGTH:  # pragma: no cover - needs ~2^44 input bytes
        raise ValueError("Huffman code too long")
    codes = np.array(canonical_codes(lengths), dtype=np.uint64)
    payload = _encode_payload(arr, codes, np.array(lengths, dtype=np.int64))
    return head + _pack_table(lengths) + payload.tobytes()


def decode(data):
    n, pos = varint_decode(data, 0, codec="huffman")
    if n == 0:
        if pos != len(data):
            raise CorruptStreamError("trailing bytes after empty stream", codec="huffman", offset=pos)
        return b""
    lengths, pos = _unpack_table(data, pos)
    present = [(l, s) for s, l in enumerate(lengths) if l]
    if not present:
        raise CorruptStreamError("empty code table for nonempty stream", codec="huffman", offset=pos)
    kraft = sum(2.0 ** -l for l, _ in present)
    if kraft > 1.0:
        raise CorruptStreamError("code lengths violate the Kraft inequality", codec="huffman", offset=pos)
    max_len = max(l for l, _ in present)
    first_code = np.zeros(max_len + 2, dtype=np.int64)
    count = np.zeros(max_len + 2, dtype=np.int64)
    base = np.zeros(max_len + 2, dtype=np.int64)
    for l, _ in present:
        count[l] += 1
    code = 0
    idx = 0
    for l in range(1, max_len + 1):
        first_code[l] = code
        base[l] = idx
        code = (code + count[l]) << 1
        idx += count[l]
    symbols = np.array([s for _, s in sorted(present)], dtype=np.uint8)
    payload = np.frombuffer(data, dtype=np.uint8, offset=pos)
    out, used, err = _decode_payload(payload, n, first_code, count, base, symbols, max_len)
    if err >= 0:
        raise CorruptStreamError("truncated or invalid Huffman payload", codec="huffman", offset=pos + int(err))
    if (used + 7) // 8 != payload.size:
        raise CorruptStreamError("trailing bytes after Huffman payload", codec="huffman",
                                 offset=pos + (used + 7) // 8)
    return out.tobytes()
