"""Words over multi-type bracket alphabets, and the linear-space oracle.

A word with ``s`` bracket types is stored as ``bytes`` of letter codes:

    code = 2 * (type_index - 1) + closer_bit

so for ``s == 2`` the codes 0, 1, 2, 3 are ``( ) [ ]``.  Positions in the
public API are 1-based; heights are counted with openers as +1 steps and
closers as -1 steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from ._status import MISMATCHED, MISSING_CLOSING, NEGATIVE_HEIGHT, OK, REASONS

BRACKETS = "()[]"


def opener(type_index: int) -> int:
    return 2 * (type_index - 1)


def closer(type_index: int) -> int:
    return 2 * (type_index - 1) + 1


def is_closer(code: int) -> bool:
    return bool(code & 1)


def type_of(code: int) -> int:
    """1-based bracket type of a letter code."""
    return (code >> 1) + 1


def dual(code: int) -> int:
    """Opener <-> closer of the same type."""
    return code ^ 1


def step(code: int) -> int:
    return -1 if code & 1 else 1


class Letter(NamedTuple):
    kind: str  # "open" or "close"
    type_index: int

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls("close" if code & 1 else "open", type_of(code))

    def to_code(self) -> int:
        if self.kind == "open":
            return opener(self.type_index)
        if self.kind == "close":
            return closer(self.type_index)
        raise ValueError(f"bad letter kind: {self.kind!r}")


class Verdict(NamedTuple):
    accepted: bool
    reason: str

    @classmethod
    def from_status(cls, status: int) -> "Verdict":
        return cls(status == OK, REASONS[status])


@dataclass(frozen=True)
class Word:
    codes: bytes
    alphabet_size: int = 2

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        limit = 2 * self.alphabet_size
        for i, c in enumerate(self.codes):
            if c >= limit:
                raise ValueError(
                    f"letter code {c} at position {i + 1} needs more than "
                    f"{self.alphabet_size} bracket types"
                )

    def __len__(self) -> int:
        return len(self.codes)

    @classmethod
    def from_brackets(cls, text: str) -> "Word":
        try:
            codes = bytes(BRACKETS.index(ch) for ch in text)
        except ValueError:
            raise ValueError(f"bracket strings may only contain {BRACKETS!r}")
        return cls(codes, alphabet_size=2)

    def to_brackets(self) -> str:
        if self.alphabet_size > 2:
            raise ValueError("bracket rendering only covers 2 types")
        return "".join(BRACKETS[c] for c in self.codes)


def _as_codes(word) -> bytes:
    if isinstance(word, Word):
        return word.codes
    return bytes(word)


def prefix_heights(word) -> list[int]:
    """Heights h[0..n], h[0] == 0, one entry per prefix."""
    codes = _as_codes(word)
    heights = [0] * (len(codes) + 1)
    h = 0
    for i, c in enumerate(codes):
        h += 1 if not c & 1 else -1
        heights[i + 1] = h
    return heights


def pair_heights(word) -> list[int]:
    """Per-letter height of the upper endpoint of each step.

    An opener rising from d-1 to d and a closer falling from d to d-1
    both sit at pair height d.  Entry i (0-based) describes position i+1.
    """
    codes = _as_codes(word)
    out = [0] * len(codes)
    h = 0
    for i, c in enumerate(codes):
        if c & 1:
            out[i] = h
            h -= 1
        else:
            h += 1
            out[i] = h
    return out


def matching_pairs(word) -> set[tuple[int, int]]:
    """All (opener position, closer position) pairs at equal height.

    Pairs are matched by height structure alone: position j closes the
    nearest earlier unclosed opener, whatever the bracket types are.
    Positions are 1-based.  Closers with no earlier unclosed opener are
    left unpaired.
    """
    codes = _as_codes(word)
    pairs = set()
    stack: list[int] = []
    for i, c in enumerate(codes):
        if c & 1:
            if stack:
                pairs.add((stack.pop(), i + 1))
        else:
            stack.append(i + 1)
    return pairs


def is_balanced(word, indices: Iterable[int], type_index: int | None = None) -> bool:
    """Whether an index set has equal opener/closer counts per height and type.

    At every (pair height, bracket type) the number of openers in
    ``indices`` must equal the number of closers; with ``type_index``
    given, only letters of that bracket type are counted at all.
    Positions are 1-based.
    """
    codes = _as_codes(word)
    ph = pair_heights(codes)
    counts: dict[tuple[int, int], int] = {}
    for pos in indices:
        if not 1 <= pos <= len(codes):
            raise IndexError(f"position {pos} out of range")
        c = codes[pos - 1]
        if type_index is not None and type_of(c) != type_index:
            continue
        key = (ph[pos - 1], type_of(c))
        counts[key] = counts.get(key, 0) + (-1 if c & 1 else 1)
    return all(v == 0 for v in counts.values())


def oracle_scan(data: bytes) -> tuple[int, int, int]:
    """Reference linear-space scan: (status, peak stack size, letters read).

    Keeps every open bracket type on a stack; rejects on the first closer
    that arrives at height zero or closes the wrong type, and on leftover
    openers at the end.
    """
    stack: list[int] = []
    peak = 0
    for i, c in enumerate(data):
        if c & 1:
            if not stack:
                return NEGATIVE_HEIGHT, peak, i + 1
            if stack.pop() != c >> 1:
                return MISMATCHED, peak, i + 1
        else:
            stack.append(c >> 1)
            if len(stack) > peak:
                peak = len(stack)
    if stack:
        return MISSING_CLOSING, peak, len(data)
    return OK, peak, len(data)


def oracle_check(word) -> Verdict:
    """Exact membership: nonnegative heights, zero total, matching types."""
    status, _, _ = oracle_scan(_as_codes(word))
    return Verdict.from_status(status)
