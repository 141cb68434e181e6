"""Pure-Python checker kernels.

Mirrors the compiled kernels in ``_speedups``: same constructors, same
counters, same status codes, so the driver layer can swap backends
freely.  Unlike the compiled kernels these also accept an event tracer,
which the invariant and coverage test suites hook into.
"""

from __future__ import annotations

import math

from ._status import EXTRA_CLOSING, MISMATCHED, MISSING_CLOSING, NEGATIVE_HEIGHT, OK
from .words import oracle_scan

__all__ = ["OnePassCore", "TwoPassCore", "oracle_scan"]


def _mult_count(exponent: int) -> int:
    # square-and-multiply cost; keep in sync with fingerprint.powmod_mult_count
    if exponent == 0:
        return 0
    return bin(exponent).count("1") + exponent.bit_length() - 1


class OnePassCore:
    """Block-structured forward scanner over letter codes.

    Letters arrive through :meth:`feed` in arbitrary chunks and are cut
    into blocks of ``ceil(sqrt(n))``; :meth:`finish` flushes the final
    partial block and runs the end-of-stream check.  ``feed`` returns
    ``False`` as soon as the verdict is a rejection.

    Tracer events (1-based stream positions):
      ("block", first, last, base_height)
      ("cancel", open_pos, close_pos)
      ("absorb", pos, pair_height, item_hash, item_pending)
      ("check", pos, item_hash)
      ("push", last_pos, item_hash, item_pending)
    """

    backend = "python"

    def __init__(self, n, p, alpha, tracer=None):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        self.p = p
        self.alpha = alpha
        root = math.isqrt(n)
        if root * root < n:
            root += 1
        self.block_size = max(1, root)
        self.letters_read = 0
        self.height = 0
        self.peak_stack = 0
        self.hash_mults = 0
        self.checks = 0
        self.status = OK
        self._stack = []  # (item hash, pending opener count)
        self._buf = bytearray()
        self._start = 0  # 0-based position of the first buffered letter
        self._tracer = tracer
        self._finished = False

    def stack_items(self):
        return list(self._stack)

    def feed(self, data) -> bool:
        if self._finished:
            raise ValueError("feed after finish")
        if self.status != OK:
            return False
        data = bytes(data)
        if self.letters_read + len(data) > self.n:
            raise ValueError("stream longer than the declared length")
        self.letters_read += len(data)
        buf = self._buf
        buf += data
        size = self.block_size
        while len(buf) >= size:
            block = bytes(buf[:size])
            del buf[:size]
            if not self._process_block(block):
                return False
        return True

    def finish(self) -> int:
        if self._finished:
            return self.status
        if self.status != OK:
            self._finished = True
            return self.status
        if self.letters_read < self.n:
            raise ValueError("stream shorter than the declared length")
        self._finished = True
        if self._buf:
            block = bytes(self._buf)
            self._buf.clear()
            if not self._process_block(block):
                return self.status
        if self._stack:
            self.status = MISSING_CLOSING
        return self.status

    def _process_block(self, block) -> bool:
        tracer = self._tracer
        base = self._start
        if tracer is not None:
            tracer(("block", base + 1, base + len(block), self.height))
        # Local simplification: cancel the pairs completed inside the
        # block, type-checking each; what survives is a run of closers
        # followed by a run of openers.
        ups = []    # (0-based position, code) of openers still open
        downs = []  # same for closers that escape the block
        for i, code in enumerate(block):
            if code & 1:
                if ups:
                    opos, ocode = ups.pop()
                    if ocode ^ 1 != code:
                        self.status = MISMATCHED
                        return False
                    if tracer is not None:
                        tracer(("cancel", opos + 1, base + i + 1))
                else:
                    downs.append((base + i, code))
            else:
                ups.append((base + i, code))
        p = self.p
        alpha = self.alpha
        stack = self._stack
        height = self.height
        # Escaping closers consume pending openers from earlier blocks,
        # newest item first.
        for pos, code in downs:
            if not stack:
                self.status = EXTRA_CLOSING
                return False
            pair_height = height  # height just before this closer
            height -= 1
            item_hash, pending = stack[-1]
            if code == 1:  # only the first bracket type is fingerprinted
                item_hash = (item_hash + p - pow(alpha, pair_height, p)) % p
                self.hash_mults += _mult_count(pair_height)
            pending -= 1
            if tracer is not None:
                tracer(("absorb", pos + 1, pair_height, item_hash, pending))
            if pending == 0:
                self.checks += 1
                if tracer is not None:
                    tracer(("check", pos + 1, item_hash))
                if item_hash != 0:
                    self.status = MISMATCHED
                    return False
                stack.pop()
            else:
                stack[-1] = (item_hash, pending)
        # Surviving openers become one fresh item.
        if ups:
            up_hash = 0
            for _, code in ups:
                height += 1
                if code == 0:
                    up_hash = (up_hash + pow(alpha, height, p)) % p
                    self.hash_mults += _mult_count(height)
            stack.append((up_hash, len(ups)))
            if len(stack) > self.peak_stack:
                self.peak_stack = len(stack)
            if tracer is not None:
                tracer(("push", base + len(block), up_hash, len(ups)))
        self.height = height
        self._start = base + len(block)
        return True


class TwoPassCore:
    """Single-direction scanner with aligned-block compression.

    The caller feeds exactly ``total`` letters (``total`` a power of
    two, or zero); after each position j the top items are merged
    whenever an aligned block of length 2, 4, 8, ... ends at j and both
    items started inside it, which keeps the stack logarithmic.

    Tracer events (1-based positions):
      ("push", j, item_hash, 1, j)
      ("absorb", j, pair_height, item_hash, item_pending)
      ("check", j, item_hash)
      ("merge", j, block_len, item_hash, item_pending, first_pos)
    """

    backend = "python"

    def __init__(self, total, p, alpha, tracer=None):
        if total < 0 or (total & (total - 1)):
            raise ValueError("total letter count must be a power of two or zero")
        self.total = total
        self.p = p
        self.alpha = alpha
        self.letters_read = 0
        self.height = 0
        self.peak_stack = 0
        self.hash_mults = 0
        self.checks = 0
        self.status = OK
        self._stack = []  # (item hash, pending opener count, first position)
        self._tracer = tracer
        self._finished = False

    def stack_items(self):
        return list(self._stack)

    def feed(self, data) -> bool:
        if self._finished:
            raise ValueError("feed after finish")
        if self.status != OK:
            return False
        data = bytes(data)
        if self.letters_read + len(data) > self.total:
            raise ValueError("stream longer than the declared length")
        p = self.p
        alpha = self.alpha
        stack = self._stack
        tracer = self._tracer
        j = self.letters_read
        height = self.height
        for code in data:
            j += 1
            if code & 1:
                if not stack:
                    self.status = NEGATIVE_HEIGHT
                    break
                pair_height = height
                height -= 1
                item_hash, pending, first = stack[-1]
                if code == 1:
                    item_hash = (item_hash + p - pow(alpha, pair_height, p)) % p
                    self.hash_mults += _mult_count(pair_height)
                pending -= 1
                if tracer is not None:
                    tracer(("absorb", j, pair_height, item_hash, pending))
                if pending == 0:
                    self.checks += 1
                    if tracer is not None:
                        tracer(("check", j, item_hash))
                    if item_hash != 0:
                        self.status = MISMATCHED
                        break
                    stack.pop()
                else:
                    stack[-1] = (item_hash, pending, first)
            else:
                height += 1
                if code == 0:
                    item_hash = pow(alpha, height, p)
                    self.hash_mults += _mult_count(height)
                else:
                    item_hash = 0
                stack.append((item_hash, 1, j))
                if len(stack) > self.peak_stack:
                    self.peak_stack = len(stack)
                if tracer is not None:
                    tracer(("push", j, item_hash, 1, j))
            # Merge the completed aligned blocks ending here, innermost
            # first; each level folds at most one pair of items.
            rest = j
            block_len = 2
            while rest & 1 == 0:
                start = j - block_len + 1
                if len(stack) >= 2 and stack[-2][2] >= start:
                    top_hash, top_pending, _ = stack.pop()
                    low_hash, low_pending, low_first = stack.pop()
                    merged = (
                        (low_hash + top_hash) % p,
                        low_pending + top_pending,
                        low_first,
                    )
                    stack.append(merged)
                    if tracer is not None:
                        tracer(("merge", j, block_len) + merged)
                rest >>= 1
                block_len <<= 1
        self.letters_read = j
        self.height = height
        return self.status == OK

    def finish(self) -> int:
        if self._finished:
            return self.status
        if self.status != OK:
            self._finished = True
            return self.status
        if self.letters_read < self.total:
            raise ValueError("stream shorter than the declared length")
        self._finished = True
        if self._stack:
            self.status = MISSING_CLOSING
        return self.status
