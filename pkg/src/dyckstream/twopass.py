"""Two passes over the stream in O(log^2 n) bits.

The word is padded with trailing "()" pairs up to a power of two, then
scanned once forwards and once backwards with every letter dualized
(openers and closers swapped), so the second pass sees the reversed
word as another well-formed-or-not stream.  Each pass keeps one item
per letter and merges the top two items whenever an aligned block of
length 2, 4, 8, ... completes with both items inside it; the pending
count reaching zero triggers a fingerprint check exactly as in the
one-pass checker.  A mismatched pair can survive one direction's
merging, but not both.
"""

from __future__ import annotations

from ._status import MISMATCHED, MISSING_CLOSING, NEGATIVE_HEIGHT, OK
from .backend import pick
from .fingerprint import HashParams
from .metrics import Metrics
from .words import Letter, Verdict, Word, _as_codes
from .words import dual as _dual_code

__all__ = ["pad_to_pow2", "dual", "block_pass", "check_two_pass"]

_CHUNK = 1 << 16


def pad_to_pow2(n: int):
    """Return ``(padded_n, pad_letters)`` for an even-length word.

    Odd-length words are never members and the checker rejects them
    before scanning, so odd ``n`` is an error here.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2:
        raise ValueError("odd lengths are rejected before padding")
    if n == 0:
        return 0, 0
    padded = 1 << (n - 1).bit_length()
    return padded, padded - n


def dual(letter):
    """Swap opener and closer of the same type (code or Letter)."""
    if isinstance(letter, Letter):
        return Letter.from_code(letter.to_code() ^ 1)
    return _dual_code(letter)


def block_pass(level: int, state, data) -> bool:
    """Feed one aligned block of ``2**level`` letters into a scanner.

    ``state`` is a kernel ``TwoPassCore`` positioned at a block
    boundary; returns what ``feed`` returns.  The scanner itself merges
    at every level on the fly, so this helper only enforces alignment
    for callers that want to drive it block by block.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    size = 1 << level
    if len(data) != size:
        raise ValueError(f"expected {size} letters, got {len(data)}")
    if state.letters_read % size:
        raise ValueError("scanner is not at an aligned block boundary")
    return state.feed(bytes(data))


def _dual_reverse(codes: bytes) -> bytes:
    return bytes(code ^ 1 for code in reversed(codes))


def check_two_pass(
    stream,
    params: HashParams,
    n: int | None = None,
    *,
    backend: str | None = None,
    tracer=None,
    buffered_reverse: bool | None = None,
):
    """Check the stream in two passes (forward, then reversed dual).

    ``stream`` is a :class:`Word`, a bytes-like of letter codes, or an
    iterable of byte chunks; iterables are materialised since the second
    pass needs the word reversed.  Returns ``(Verdict, Metrics)``.

    The second pass runs only on words the first pass accepted, so it
    can only fail a fingerprint check; a structural failure there means
    the two passes disagree about the shape of the same word and raises
    ``RuntimeError`` instead of producing a verdict.
    """
    if isinstance(stream, Word):
        if stream.alphabet_size > 2:
            raise ValueError(
                "the streaming checkers cover 2 bracket types; "
                "reduce wider alphabets first"
            )
        codes = stream.codes
        buffered = False
    elif isinstance(stream, (bytes, bytearray, memoryview)):
        codes = bytes(stream)
        buffered = False
    else:
        codes = b"".join(bytes(chunk) for chunk in stream)
        buffered = True
    if n is not None and n != len(codes):
        raise ValueError(f"declared n={n} but the input has {len(codes)} letters")
    total = len(codes)
    if buffered_reverse is not None:
        buffered = buffered_reverse

    if total % 2:
        # Members have even length; reject without scanning.
        verdict = Verdict(False, "missing_closing")
        metrics = Metrics(
            algo="twopass",
            n=total,
            verdict=verdict,
            pass_count=0,
            buffered_reverse=buffered,
        )
        return verdict, metrics

    padded, pad_letters = pad_to_pow2(total)
    if padded > params.n_bound:
        raise ValueError(
            f"padded length {padded} exceeds the hash bound "
            f"n_bound={params.n_bound}"
        )
    item_bits = params.p.bit_length() + 2 * max(1, padded.bit_length())
    _, kernels = pick(backend, params.p, tracer)
    pad = b"\x00\x01" * (pad_letters // 2)

    def make_core():
        if tracer is None:
            return kernels.TwoPassCore(padded, params.p, params.alpha)
        return kernels.TwoPassCore(padded, params.p, params.alpha, tracer)

    def feed_all(core, data) -> bool:
        for i in range(0, len(data), _CHUNK):
            if not core.feed(data[i:i + _CHUNK]):
                return False
        return True

    if tracer is not None:
        tracer(("pass", 1))
    forward = make_core()
    if feed_all(forward, codes):
        feed_all(forward, pad)
    status = forward.finish()

    metrics = Metrics(
        algo="twopass",
        n=total,
        padded_n=padded,
        peak_stack_items=forward.peak_stack,
        item_bits=item_bits,
        letters_read=forward.letters_read,
        hash_mults=forward.hash_mults,
        checks_performed=forward.checks,
        pass_count=1,
        buffered_reverse=buffered,
    )
    if status != OK:
        metrics.verdict = Verdict.from_status(status)
        return metrics.verdict, metrics

    if tracer is not None:
        tracer(("pass", 2))
    backward = make_core()
    if feed_all(backward, pad):
        feed_all(backward, _dual_reverse(codes))
    status = backward.finish()
    if status in (NEGATIVE_HEIGHT, MISSING_CLOSING):
        raise RuntimeError(
            "reverse pass hit a structural failure on a word the forward "
            "pass accepted; checker state is inconsistent"
        )
    if status not in (OK, MISMATCHED):
        raise RuntimeError(f"unexpected scanner status {status}")

    metrics.peak_stack_items = max(forward.peak_stack, backward.peak_stack)
    metrics.letters_read += backward.letters_read
    metrics.hash_mults += backward.hash_mults
    metrics.checks_performed += backward.checks
    metrics.pass_count = 2
    metrics.verdict = Verdict.from_status(status)
    return metrics.verdict, metrics
