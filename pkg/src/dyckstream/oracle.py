"""Exact linear-space checking behind the same driver interface.

The kernel keeps the full stack of open bracket types, so it is the
ground truth the randomized checkers are measured against.
"""

from __future__ import annotations

from .backend import pick
from .metrics import Metrics
from .words import Verdict, Word, _as_codes

__all__ = ["check_oracle"]


def check_oracle(stream, *, alphabet_size: int | None = None, backend: str | None = None):
    """Scan the whole word with an explicit stack.  Returns (Verdict, Metrics)."""
    if isinstance(stream, Word):
        codes = stream.codes
        if alphabet_size is None:
            alphabet_size = stream.alphabet_size
    else:
        codes = bytes(_as_codes(stream))
    if alphabet_size is None:
        alphabet_size = 2
    _, kernels = pick(backend, 2)
    status, peak, letters = kernels.oracle_scan(codes)
    verdict = Verdict.from_status(status)
    metrics = Metrics(
        algo="oracle",
        n=len(codes),
        peak_stack_items=peak,
        item_bits=max(1, alphabet_size.bit_length()),
        letters_read=letters,
        hash_mults=0,
        checks_performed=0,
        verdict=verdict,
        pass_count=1,
    )
    return verdict, metrics
