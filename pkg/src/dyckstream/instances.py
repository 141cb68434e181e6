"""Hard-instance and random-word generators with ground-truth labels.

The adversarial family concatenates m "mountain" segments
X Ybar cbar c Y whose probe letter c must equal a specific letter of X
for the whole word to be well-formed, followed by the matching words of
all the X's in reverse order.  Deciding membership amounts to m
simultaneous index queries into earlier stream content, which is what
makes the family expensive for small-space checkers; the generator
knows the intended labels by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .words import Word, _as_codes, matching_pairs, oracle_scan
from ._status import OK

__all__ = [
    "matching_word",
    "gen_mountain",
    "gen_ascension",
    "InstanceSpec",
    "gen_random_member",
    "mutate_member",
]

_OPENER_FROM_BIT = {"0": 0, "1": 2, "a": 0, "b": 2}


def matching_word(word) -> Word:
    """The unique closer string that matches ``word`` letter by letter.

    ``word`` must consist of openers only; the result closes them in
    reverse order with the same types, so ``word + matching_word(word)``
    is always a member.
    """
    codes = _as_codes(word)
    if any(code & 1 for code in codes):
        raise ValueError("matching_word expects openers only")
    alphabet = word.alphabet_size if isinstance(word, Word) else 2
    return Word(bytes(code | 1 for code in reversed(codes)), alphabet)


def _opener_codes(x) -> bytes:
    """Normalise an opener string given as Word, codes, '01' or 'ab'."""
    if isinstance(x, str):
        try:
            return bytes(_OPENER_FROM_BIT[ch] for ch in x)
        except KeyError as exc:
            raise ValueError(f"unexpected symbol {exc.args[0]!r} in opener string")
    codes = _as_codes(x)
    if any(code & 1 for code in codes):
        raise ValueError("expected openers only")
    return bytes(codes)


def _opener_code(c) -> int:
    if isinstance(c, str):
        if c not in _OPENER_FROM_BIT:
            raise ValueError(f"unexpected probe letter {c!r}")
        return _OPENER_FROM_BIT[c]
    code = int(c)
    if code & 1:
        raise ValueError("the probe letter must be an opener")
    return code


def gen_mountain(n: int, x, k: int, c):
    """One segment X Ybar cbar c Y plus its closing tail Xbar.

    ``x`` gives the n openers of X, ``k`` the probe depth (1-based from
    the end of X) and ``c`` the probe opener.  Returns ``(word, label)``
    where the label is the membership truth: the word is well-formed
    exactly when c equals letter n-k+1 of X.
    """
    word, label = _segments([_opener_codes(x)], [k], [_opener_code(c)], n)
    return word, label


def gen_ascension(xs, ks, cs):
    """m segments followed by the closing tail Xbar_m ... Xbar_1.

    All X's must share one length n.  Returns ``(word, label)``; the
    word is well-formed exactly when every segment's probe letter
    matches, i.e. the label is the conjunction of the per-segment
    conditions.
    """
    xs = [_opener_codes(x) for x in xs]
    if not xs:
        raise ValueError("need at least one segment")
    n = len(xs[0])
    if any(len(x) != n for x in xs):
        raise ValueError("all X strings must have the same length")
    if not (len(xs) == len(ks) == len(cs)):
        raise ValueError("xs, ks and cs must have equal lengths")
    return _segments(xs, list(ks), [_opener_code(c) for c in cs], n)


def _segments(xs, ks, cs, n):
    if n < 1:
        raise ValueError("X must be non-empty")
    parts = []
    label = True
    for x, k, c in zip(xs, ks, cs):
        if not 1 <= k <= n:
            raise ValueError(f"probe depth k={k} outside 1..{n}")
        y = x[n - k + 1:]  # the k-1 letters of X after the probed one
        parts.append(x)
        parts.append(matching_word(Word(y)).codes)
        parts.append(bytes([c | 1]))
        parts.append(bytes([c]))
        parts.append(y)
        label = label and (c == x[n - k])
    for x in reversed(xs):
        parts.append(matching_word(Word(x)).codes)
    return Word(b"".join(parts)), label


@dataclass(frozen=True)
class InstanceSpec:
    """Serializable description of one adversarial instance.

    ``xs`` holds each X as a '01' string (0 = first opener type,
    1 = second), ``ks`` the probe depths, ``cs`` the probe letters as
    '0'/'1'.  ``build`` regenerates the word and its label on demand.
    """

    n: int
    xs: tuple
    ks: tuple
    cs: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ks) or len(self.xs) != len(self.cs):
            raise ValueError("xs, ks and cs must have equal lengths")
        if any(len(x) != self.n for x in self.xs):
            raise ValueError("every X must have length n")

    @property
    def m(self) -> int:
        return len(self.xs)

    def build(self):
        return gen_ascension(self.xs, self.ks, self.cs)

    def to_record(self) -> str:
        return (
            f"ascension n={self.n}"
            f" k={','.join(str(k) for k in self.ks)}"
            f" c={','.join(self.cs)}"
            f" x={','.join(self.xs)}"
        )

    @classmethod
    def from_record(cls, line: str) -> "InstanceSpec":
        parts = line.split()
        if not parts or parts[0] != "ascension":
            raise ValueError("not an ascension record")
        fields = dict(part.split("=", 1) for part in parts[1:])
        return cls(
            n=int(fields["n"]),
            xs=tuple(fields["x"].split(",")),
            ks=tuple(int(k) for k in fields["k"].split(",")),
            cs=tuple(fields["c"].split(",")),
        )

    @classmethod
    def random(cls, m: int, n: int, seed=None, fault=None) -> "InstanceSpec":
        """Random instance; ``fault=i`` plants a wrong probe in segment i."""
        if fault is not None and not 1 <= fault <= m:
            raise ValueError(f"fault segment {fault} outside 1..{m}")
        rng = random.Random(seed)
        xs = []
        ks = []
        cs = []
        for index in range(m):
            x = "".join(rng.choice("01") for _ in range(n))
            k = rng.randrange(1, n + 1)
            truth = x[n - k]
            if fault is not None and index == fault - 1:
                cs.append("1" if truth == "0" else "0")
            else:
                cs.append(truth)
            xs.append(x)
            ks.append(k)
        return cls(n=n, xs=tuple(xs), ks=tuple(ks), cs=tuple(cs))


def gen_random_member(pairs: int, seed=None, alphabet_size: int = 2) -> Word:
    """Uniform random member with ``pairs`` matched pairs.

    The height profile is drawn uniformly over all balanced nonnegative
    walks (cycle-lemma rotation of a shuffled step multiset), then each
    matched pair gets an independent uniform type.
    """
    if pairs < 0:
        raise ValueError("pairs must be >= 0")
    rng = random.Random(seed)
    if pairs == 0:
        return Word(b"", alphabet_size)
    steps = [1] * (pairs + 1) + [-1] * pairs
    rng.shuffle(steps)
    # rotate to just after the last minimum of the prefix sums; the
    # rotated walk is strictly positive, and dropping its first upstep
    # leaves a uniform nonnegative balanced walk
    total = 0
    low = 0
    cut = 0
    for i, step in enumerate(steps):
        total += step
        if total <= low:
            low = total
            cut = i + 1
    walk = steps[cut:] + steps[:cut]
    out = bytearray()
    stack = []
    for step in walk[1:]:
        if step > 0:
            t = rng.randrange(alphabet_size)
            stack.append(t)
            out.append(2 * t)
        else:
            out.append(2 * stack.pop() + 1)
    return Word(bytes(out), alphabet_size)


def mutate_member(word: Word, seed=None) -> Word:
    """Flip the type of one matched pair's opener, keeping the shape.

    The input must be a member; the result has the same height profile
    and exactly one ill-formed pair, so it is never a member.
    """
    codes = _as_codes(word)
    alphabet = word.alphabet_size if isinstance(word, Word) else 2
    status, _, _ = oracle_scan(codes)
    if status != OK:
        raise ValueError("mutate_member expects a member")
    if not codes:
        raise ValueError("cannot mutate the empty word")
    rng = random.Random(seed)
    pairs = sorted(matching_pairs(codes))
    open_pos, _ = pairs[rng.randrange(len(pairs))]
    old_type = codes[open_pos - 1] >> 1
    if alphabet < 2:
        raise ValueError("need at least two bracket types to mutate")
    new_type = rng.randrange(alphabet - 1)
    if new_type >= old_type:
        new_type += 1
    mutated = bytearray(codes)
    mutated[open_pos - 1] = 2 * new_type
    return Word(bytes(mutated), alphabet)
