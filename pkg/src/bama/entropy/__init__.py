"""Back-end byte-stream coders and a selector-based dispatch."""
import enum

from . import arith, huffman, lzw, rle


class CodecSelector(enum.IntEnum):
    NONE = 0
    RLE = 1
    LZW = 2
    HUFFMAN = 3
    ARITHMETIC = 4

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown coder {name!r}") from None

    @property
    def cli_name(self):
        return _CLI_NAMES[self]


_CLI_NAMES = {
    CodecSelector.NONE: "none",
    CodecSelector.RLE: "rle",
    CodecSelector.LZW: "lzw",
    CodecSelector.HUFFMAN: "huffman",
    CodecSelector.ARITHMETIC: "arith",
}
_ALIASES = {v: k for k, v in _CLI_NAMES.items()}
_ALIASES["arithmetic"] = CodecSelector.ARITHMETIC

_CODERS = {
    CodecSelector.RLE: rle,
    CodecSelector.LZW: lzw,
    CodecSelector.HUFFMAN: huffman,
    CodecSelector.ARITHMETIC: arith,
}


def encode(codec, data):
    codec = CodecSelector(codec)
    if codec is CodecSelector.NONE:
        return bytes(data)
    return _CODERS[codec].encode(bytes(data))


def decode(codec, data):
    codec = CodecSelector(codec)
    if codec is CodecSelector.NONE:
        return bytes(data)
    return _CODERS[codec].decode(bytes(data))


def coded_size_bits(codec, data):
    return 8 * len(encode(codec, data))
