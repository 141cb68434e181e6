"""Letterwise reduction of s-type words to 2-type words.

An opener of type t becomes the binary expansion of t-1 written with
the two opener letters, most significant bit first; the matching closer
emits the same bits least significant first as closers.  A matched pair
therefore unfolds into nested pairs that agree level by level, and a
mismatched pair differs in at least one bit, so the encoded word is
well-formed exactly when the original is.  Each input letter maps to
ceil(log2 s) output letters (one for s = 1) and the encoding is
streamable letter by letter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Letter, Word

__all__ = ["ReductionParams", "encode_letter", "reduce_stream", "reduce_word",
           "encode_tag_stream"]


@dataclass(frozen=True)
class ReductionParams:
    """Alphabet size ``s`` and the per-letter code length it induces."""

    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("alphabet size must be >= 1")

    @property
    def l(self) -> int:
        return max(1, (self.s - 1).bit_length())


def _letter_code(letter) -> int:
    if isinstance(letter, Letter):
        return letter.to_code()
    return int(letter)


def encode_letter(params: ReductionParams, letter) -> Word:
    """Encode one letter as a 2-type word of length ``params.l``."""
    code = _letter_code(letter)
    kind = code & 1
    value = code >> 1
    if not 0 <= value < params.s:
        raise ValueError(f"letter type {value + 1} outside alphabet of {params.s}")
    width = params.l
    bits = [(value >> (width - 1 - i)) & 1 for i in range(width)]
    if kind:
        # closers replay the bits in reverse, closing the nesting
        out = bytes(2 * bit + 1 for bit in reversed(bits))
    else:
        out = bytes(2 * bit for bit in bits)
    return Word(out)


def reduce_stream(params: ReductionParams, stream):
    """Yield 2-type letter codes for a stream of s-type letters."""
    for letter in stream:
        yield from encode_letter(params, letter).codes


def reduce_word(params: ReductionParams, word) -> Word:
    """Encode a whole word at once."""
    if isinstance(word, Word):
        stream = word.codes
    else:
        stream = word
    return Word(bytes(reduce_stream(params, stream)))


def encode_tag_stream(events):
    """Yield 2-type letter codes for a stream of named tag events.

    ``events`` holds ``(kind, name)`` pairs with ``kind`` one of
    ``"open"``/``"close"`` and ``name`` a non-empty str or bytes.  An
    open tag emits each name byte's bits most significant first as
    openers; the matching close tag emits the byte-reversed,
    bit-reversed pattern as closers.  A close whose name equals its
    open's cancels it exactly; a same-length name difference leaves a
    mismatched pair.  As with any delimiter-free byte encoding, names
    that concatenate other names can alias (one "aa" close also closes
    two nested "a" tags), so distinct tag names should not be prefixes
    stacked into one another.
    """
    for kind, name in events:
        data = name.encode() if isinstance(name, str) else bytes(name)
        if not data:
            raise ValueError("empty tag name")
        if kind == "open":
            for byte in data:
                for i in range(7, -1, -1):
                    yield 2 * ((byte >> i) & 1)
        elif kind == "close":
            for byte in reversed(data):
                for i in range(8):
                    yield 2 * ((byte >> i) & 1) + 1
        else:
            raise ValueError(f"unknown tag event kind {kind!r}")
