"""One forward pass over the stream in O(sqrt(n) log n) bits.

The stream is cut into blocks of ceil(sqrt(n)) letters.  Each block is
first simplified locally (pairs completed inside the block cancel, with
their types checked); the closers that escape the block then consume
pending openers from earlier blocks, and the openers that survive are
pushed as a single stack item carrying a fingerprint of their heights
and a count.  An item whose count returns to zero must have fingerprint
zero, otherwise some pair in it was mismatched.
"""

from __future__ import annotations

from .backend import pick
from .fingerprint import HashParams
from .metrics import Metrics
from .words import Verdict, Word, _as_codes

__all__ = ["BlockMismatch", "simplify_block", "check_one_pass"]


class BlockMismatch(ValueError):
    """An in-block cancellation paired two different bracket types."""


def simplify_block(block, base_height: int = 0):
    """Cancel the matching pairs completed inside ``block``.

    Returns ``(down_run, up_run)``: the closers that escape the block,
    then the openers still open at its end.  Every cancelled pair is
    type-checked; a mismatch raises :class:`BlockMismatch`.
    ``base_height`` is the stream height at block start and is used only
    to report the offending height in the error message.
    """
    codes = _as_codes(block)
    alphabet = block.alphabet_size if isinstance(block, Word) else 2
    ups = []
    downs = bytearray()
    height = base_height
    for i, code in enumerate(codes):
        if code & 1:
            height -= 1
            if ups:
                opener = ups.pop()
                if opener ^ 1 != code:
                    raise BlockMismatch(
                        f"letter {i + 1} of the block closes at height "
                        f"{height + 1} with the wrong bracket type"
                    )
            else:
                downs.append(code)
        else:
            height += 1
            ups.append(code)
    return Word(bytes(downs), alphabet), Word(bytes(ups), alphabet)


_CHUNK = 1 << 16


def _coerce_stream(stream, n):
    """Normalise checker input to (chunk iterable, total letters)."""
    if isinstance(stream, Word):
        data = stream.codes
    elif isinstance(stream, (bytes, bytearray, memoryview)):
        data = bytes(stream)
    else:
        if n is None:
            raise TypeError(
                "a chunked stream needs an explicit letter count n"
            )
        return stream, n
    if n is not None and n != len(data):
        raise ValueError(f"declared n={n} but the input has {len(data)} letters")
    chunks = (data[i:i + _CHUNK] for i in range(0, len(data), _CHUNK))
    return chunks, len(data)


def check_one_pass(
    stream,
    params: HashParams,
    n: int | None = None,
    *,
    backend: str | None = None,
    tracer=None,
):
    """Check the stream in one forward pass.

    ``stream`` is a :class:`Word`, a bytes-like of letter codes, or an
    iterable of byte chunks (which requires ``n``).  Returns
    ``(Verdict, Metrics)``.  The checker covers two bracket types; wider
    alphabets should be reduced first (see :mod:`dyckstream.reduction`).
    """
    if isinstance(stream, Word) and stream.alphabet_size > 2:
        raise ValueError(
            "the streaming checkers cover 2 bracket types; "
            "reduce wider alphabets first"
        )
    chunks, total = _coerce_stream(stream, n)
    if total > params.n_bound:
        raise ValueError(
            f"input length {total} exceeds the hash bound n_bound={params.n_bound}"
        )
    _, kernels = pick(backend, params.p, tracer)
    if tracer is None:
        core = kernels.OnePassCore(total, params.p, params.alpha)
    else:
        core = kernels.OnePassCore(total, params.p, params.alpha, tracer)
    for chunk in chunks:
        if not core.feed(chunk):
            break
    status = core.finish()
    verdict = Verdict.from_status(status)
    metrics = Metrics(
        algo="onepass",
        n=total,
        peak_stack_items=core.peak_stack,
        item_bits=params.p.bit_length() + max(1, total.bit_length()),
        letters_read=core.letters_read,
        hash_mults=core.hash_mults,
        checks_performed=core.checks,
        verdict=verdict,
        pass_count=1,
    )
    return verdict, metrics
