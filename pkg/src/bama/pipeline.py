"""Container format and the end-to-end compress/decompress paths.

Container layout (all varints unsigned LEB128)::

    b"BAMA"            magic
    0x01               version
    flags              bit 0: mode (0 = Mode 1, 1 = Mode 2); bits 1-3: codec id
    varint             block size in bits
    varint             total stream length in bits
    varint             payload length in bytes
    payload            codec-encoded (side info || packed residual stream)

Side info is, for every block in order, a varint triple count followed by
each triple as three varints (count, start, step). The residual stream is
packed MSB-first as one piece and zero-padded to a byte boundary.
"""
import time
from dataclasses import dataclass, replace

import numpy as np

from . import _treat, entropy
from .bitio import BitVector, pack_bits, unpack_bits, varint_decode, varint_encode
from .core import Mode, TreatmentParams
from .entropy import CodecSelector
from .errors import ConfigError, CorruptStreamError, UnsupportedFormatError
from .metrics import ccfpb_block, make_report

MAGIC = b"BAMA"
VERSION = 1
DEFAULT_BLOCK_SIZE = 1024
MIN_BLOCK_SIZE = 1024


@dataclass(frozen=True)
class ContainerHeader:
    mode: Mode
    codec: CodecSelector
    block_size_bits: int
    total_bits: int
    payload_byte_length: int

    @property
    def flags(self):
        return (self.mode - 1) | (int(self.codec) << 1)

    def to_bytes(self):
        return (MAGIC + bytes((VERSION, self.flags)) + varint_encode(self.block_size_bits)
                + varint_encode(self.total_bits) + varint_encode(self.payload_byte_length))


def parse_header(data):
    """Returns ``(header, payload_offset)``."""
    if len(data) < 6 or data[:4] != MAGIC:
        raise UnsupportedFormatError("not a BAMA container (bad magic)")
    if data[4] != VERSION:
        raise UnsupportedFormatError(f"unsupported container version {data[4]}")
    flags = data[5]
    codec_id = (flags >> 1) & 0x7
    if flags & 0xF0 or codec_id > max(CodecSelector):
        raise UnsupportedFormatError(f"invalid flags byte 0x{flags:02x}")
    pos = 6
    fields = []
    for _ in range(3):
        value, used = varint_decode(data, pos)
        fields.append(value)
        pos += used
    block_size, total_bits, payload_len = fields
    if block_size < 1:
        raise CorruptStreamError("block size must be positive", offset=6)
    header = ContainerHeader(Mode(1 + (flags & 1)), CodecSelector(codec_id),
                             block_size, total_bits, payload_len)
    return header, pos


@dataclass
class Catalysis:
    """Stream-level result of running the catalyst over every block."""
    bits: np.ndarray
    residual: np.ndarray
    triples: np.ndarray  # (K, 3) rows of (count, start, step), block order
    counts: np.ndarray   # triples per block
    block_size: int

    @property
    def nb(self):
        return self.counts.size

    def block_triples(self):
        edges = np.concatenate(([0], np.cumsum(self.counts)))
        return [self.triples[edges[i]:edges[i + 1]] for i in range(self.nb)]

    def side_info_blocks(self):
        """Serialized side info, one bytes object per block."""
        out = []
        for rows in self.block_triples():
            chunk = bytearray(varint_encode(len(rows)))
            for value in rows.ravel().tolist():
                chunk += varint_encode(value)
            out.append(bytes(chunk))
        return out

    def residual_ones(self):
        return int(np.count_nonzero(self.residual))


def _as_bits(stream):
    if isinstance(stream, BitVector):
        return stream.array
    return np.asarray(stream, dtype=np.uint8)


def check_block_size(block_size, allow_small_blocks=False):
    if block_size < 1:
        raise ConfigError("block size must be positive")
    if block_size < MIN_BLOCK_SIZE and not allow_small_blocks:
        raise ConfigError(f"block size must be at least {MIN_BLOCK_SIZE} bits")


def catalyze(stream, mode=Mode.MODE1, params=TreatmentParams(), block_size=DEFAULT_BLOCK_SIZE):
    bits = _as_bits(stream)
    residual, triples, counts = _treat.run_treatments(
        bits, block_size, Mode(mode) == Mode.MODE2, params.min_run, params.guard,
        params.kernel_limit)
    return Catalysis(bits, residual, triples, counts, block_size)


def build_container(cat, mode, codec):
    codec = CodecSelector(codec)
    body = b"".join(cat.side_info_blocks()) + pack_bits(cat.residual)
    payload = entropy.encode(codec, body)
    header = ContainerHeader(Mode(mode), codec, cat.block_size, cat.bits.size, len(payload))
    return header.to_bytes() + payload


def compress(stream, mode=Mode.MODE1, codec=CodecSelector.HUFFMAN, params=TreatmentParams(),
             block_size=DEFAULT_BLOCK_SIZE, allow_small_blocks=False):
    check_block_size(block_size, allow_small_blocks)
    cat = catalyze(stream, mode, params, block_size)
    return build_container(cat, mode, codec)


def _parse_side_info(body, nb, block_size, total_bits):
    pos = 0
    counts = np.zeros(nb, dtype=np.int64)
    values = []
    for i in range(nb):
        k, used = varint_decode(body, pos)
        pos += used
        # each triple takes at least three bytes
        if 3 * k > len(body) - pos:
            raise CorruptStreamError("triple count exceeds remaining side info", offset=pos)
        counts[i] = k
        for _ in range(3 * k):
            v, used = varint_decode(body, pos)
            pos += used
            values.append(v)
    triples = np.array(values, dtype=np.int64).reshape(-1, 3)
    return counts, triples, pos


def _coverage_positions(triples, counts, block_size, total_bits):
    """Absolute stream positions covered by every triple, validated against block bounds."""
    if triples.size == 0:
        return np.empty(0, dtype=np.int64)
    a, b, m = triples[:, 0], triples[:, 1], triples[:, 2]
    block = np.repeat(np.arange(counts.size, dtype=np.int64), counts)
    lo = block * block_size
    length = np.minimum(block_size, total_bits - lo)
    if np.any(a < 1) or np.any(m < 1) or np.any(b + (a - 1) * m >= length):
        bad = int(np.flatnonzero((a < 1) | (m < 1) | (b + (a - 1) * m >= length))[0])
        raise CorruptStreamError(f"triple {tuple(triples[bad].tolist())} out of block range")
    total = int(a.sum())
    first = np.repeat(lo + b, a)
    k = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(a) - a, a)
    return first + k * np.repeat(m, a)


def decompress(container):
    data = bytes(container)
    header, pos = parse_header(data)
    payload = data[pos:]
    if len(payload) < header.payload_byte_length:
        raise CorruptStreamError("container truncated", offset=len(data))
    if len(payload) > header.payload_byte_length:
        raise CorruptStreamError("trailing bytes after payload", offset=pos + header.payload_byte_length)
    body = entropy.decode(header.codec, payload)
    total = header.total_bits
    nb = -(-total // header.block_size_bits)
    counts, triples, pos = _parse_side_info(body, nb, header.block_size_bits, total)
    packed = body[pos:]
    if len(packed) != (total + 7) // 8:
        raise CorruptStreamError(
            f"residual holds {len(packed)} bytes, expected {(total + 7) // 8}", offset=pos)
    residual = unpack_bits(packed)
    if np.any(residual[total:]):
        raise CorruptStreamError("nonzero padding after residual", offset=len(body) - 1)
    residual = residual[:total]
    covered = _coverage_positions(triples, counts, header.block_size_bits, total)
    if np.any(residual[covered]):
        raise CorruptStreamError("residual has a 1 at a covered position")
    residual[covered] = 1
    return BitVector._wrap(residual)


@dataclass
class Comparison:
    coder_alone: object
    mode1: object
    mode2: object

    def reports(self):
        return [self.coder_alone, self.mode1, self.mode2]


def block_ccfpb(cat, codec):
    """Per-block catalyst factors for a catalysis result."""
    values = []
    bs = cat.block_size
    for i, side in enumerate(cat.side_info_blocks()):
        lo = i * bs
        original = pack_bits(cat.bits[lo:lo + bs])
        catalyzed = side + pack_bits(cat.residual[lo:lo + bs])
        values.append(ccfpb_block(codec, original, catalyzed))
    return values


def run_comparison(stream, codec=CodecSelector.HUFFMAN, params=TreatmentParams(),
                   block_size=DEFAULT_BLOCK_SIZE, cg_form="log", allow_small_blocks=False):
    """Coder alone versus Mode 1 + coder versus Mode 2 + coder on one stream."""
    check_block_size(block_size, allow_small_blocks)
    codec = CodecSelector(codec)
    bits = _as_bits(stream)
    if bits.size == 0:
        raise ConfigError("cannot compare on an empty stream")
    plain = replace(params, max_treatments_per_block=0)
    runs = [("coder_alone", Mode.MODE1, plain), ("mode1", Mode.MODE1, params),
            ("mode2", Mode.MODE2, params)]
    reports = []
    for label, mode, p in runs:
        t0 = time.perf_counter()
        cat = catalyze(bits, mode, p, block_size)
        container = build_container(cat, mode, codec)
        elapsed = time.perf_counter() - t0
        ccfpb = [] if label == "coder_alone" else block_ccfpb(cat, codec)
        reports.append(make_report(bits.size, 8 * len(container), ccfpb, label=label,
                                   cg_form=cg_form, ns_per_byte=1e9 * elapsed / (bits.size / 8)))
    return Comparison(*reports)
