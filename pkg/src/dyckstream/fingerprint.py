"""Randomized fingerprints for index sets of a word.

A letter of the first bracket type at pair height d contributes alpha^d
(opener) or -alpha^d (closer) mod p; letters of every other type
contribute 0.  A balanced index set therefore always hashes to 0, and a
set that is unbalanced on type 1 hashes to 0 for at most n of the p
possible alpha values, since the sum is a nonzero polynomial in alpha of
degree at most n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

import sympy

from .words import _as_codes, pair_heights

MERSENNE_61 = (1 << 61) - 1

#: Largest modulus the compiled kernels handle (products must fit in 128 bits).
KERNEL_P_MAX = 1 << 62


@dataclass(frozen=True)
class HashParams:
    mode: str
    p: int
    alpha: int
    n_bound: int
    c: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("modulus must be >= 2")
        if not 0 <= self.alpha < self.p:
            raise ValueError("alpha must lie in [0, p)")
        if self.n_bound < 1:
            raise ValueError("n_bound must be >= 1")


def make_params(
    n_bound: int,
    c: int = 2,
    seed: int | None = None,
    mode: str = "fixed_prime",
) -> HashParams:
    """Draw hash parameters for words of length up to ``n_bound``.

    ``paper_exact`` takes the smallest prime p >= n_bound^(1+c), which by
    Bertrand's postulate also satisfies p < 2 * n_bound^(1+c); the error
    probability per unbalanced set is then at most n_bound/p <= 1/n_bound^c.
    ``fixed_prime`` uses 2^61 - 1, which keeps the same guarantee for
    every n_bound the kernels accept and avoids a prime search.
    """
    if n_bound < 1:
        raise ValueError("n_bound must be >= 1")
    if c < 1:
        raise ValueError("c must be >= 1")
    if mode == "paper_exact":
        lo = n_bound ** (1 + c)
        p = int(sympy.nextprime(lo - 1))
        assert lo <= p < 2 * lo
    elif mode == "fixed_prime":
        p = MERSENNE_61
        if n_bound >= p:
            raise ValueError("n_bound too large for the fixed prime")
    else:
        raise ValueError(f"unknown mode: {mode!r}")
    alpha = random.Random(seed).randrange(p)
    return HashParams(mode=mode, p=p, alpha=alpha, n_bound=n_bound, c=c)


def letter_hash(params: HashParams, code: int, d: int) -> int:
    """Hash of one letter code at pair height d (d must be >= 0)."""
    if d < 0:
        raise ValueError("letter hash is undefined below height 0")
    if code >= 2:
        return 0
    v = pow(params.alpha, d, params.p)
    if code & 1:
        return (params.p - v) % params.p
    return v


def combine(params: HashParams, h1: int, h2: int) -> int:
    """Hash of a disjoint union, given the two parts' hashes."""
    return (h1 + h2) % params.p


def subsequence_hash(params: HashParams, word, indices: Iterable[int]) -> int:
    """Hash of the index set (1-based positions) within ``word``.

    Linear: the hash of a union of disjoint sets is the sum of their
    hashes mod p.  Raises ValueError if any chosen letter sits at a
    negative pair height.
    """
    codes = _as_codes(word)
    ph = pair_heights(codes)
    total = 0
    for pos in indices:
        if not 1 <= pos <= len(codes):
            raise IndexError(f"position {pos} out of range")
        total += letter_hash(params, codes[pos - 1], ph[pos - 1])
    return total % params.p


def powmod_mult_count(exponent: int) -> int:
    """Multiplications a square-and-multiply ladder spends on one power.

    Right-to-left binary exponentiation: every set bit costs one multiply
    into the accumulator, and every shift except the last costs one
    squaring of the running base, so the total for e >= 1 is
    popcount(e) + bitlength(e) - 1; raising to the 0th power is free.
    """
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    if exponent == 0:
        return 0
    return bin(exponent).count("1") + exponent.bit_length() - 1
