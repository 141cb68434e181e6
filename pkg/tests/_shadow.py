"""Event-level shadows for the streaming checkers.

Each shadow replays a checker run from its tracer events against
explicitly kept per-item state: the exact pending-opener positions and
heights, an independently accumulated hash, first/last positions, and a
well-formedness bit.  Every event is checked against that state, so a
single run asserts, letter by letter:

  * absorbed closers extend the top item and pair with its newest
    pending opener at the same height, and that (opener, closer) is a
    true matching pair of the scanned word;
  * item hashes equal the hash of the encoded subsequence, accumulated
    from reference per-letter values;
  * pending counts equal the item's unmatched opener count and hit zero
    only at a check, which pops the item;
  * item positions stay disjoint and ordered bottom-to-top;
  * a type-correct discarded set hashes to zero for the run's alpha;
  * aligned merges fire exactly when the block rule says, keep the
    lower first position, and add hashes and pendings;
  * after every fully processed letter each older stack item began at a
    strictly smaller height than the current step, and first-letter
    heights increase strictly up the stack.
"""

from dyckstream import Word, check_one_pass, check_two_pass, matching_pairs
from dyckstream.words import pair_heights
from dyckstream.twopass import pad_to_pow2


def _as_codes(word):
    return word.codes if isinstance(word, Word) else bytes(word)


class OnePassShadow:
    """Tracer for the block-simplifying single-pass scanner."""

    def __init__(self, codes, params):
        self.codes = codes
        self.p = params.p
        self.alpha = params.alpha
        self.pairs = matching_pairs(codes)
        self.heights = pair_heights(codes)
        self.stack = []  # [hash, [(height, opener pos)...], max pos, well formed]
        self.height = 0
        self.block = None
        self.expect_cancels = []
        self.expect_downs = []
        self.expect_ups = []
        self.events = 0

    def _letter_hash(self, code, d):
        if code >= 2:
            return 0
        v = pow(self.alpha, d, self.p)
        return v if code == 0 else (self.p - v) % self.p

    def __call__(self, event):
        self.events += 1
        getattr(self, "_on_" + event[0])(*event[1:])

    def _on_block(self, first, last, base_height):
        assert base_height == self.height
        if self.block is None:
            assert first == 1
        else:
            assert first == self.block[1] + 1
        assert last <= len(self.codes)
        self.block = (first, last)
        assert not self.expect_cancels and not self.expect_downs
        assert not self.expect_ups
        # replay the local simplification to know what must survive
        cancels, downs, ups = [], [], []
        for pos in range(first, last + 1):
            code = self.codes[pos - 1]
            if code & 1:
                if ups:
                    cancels.append((ups.pop(), pos))
                else:
                    downs.append(pos)
            else:
                ups.append(pos)
        self.expect_cancels = cancels
        self.expect_downs = downs
        self.expect_ups = ups

    def _on_cancel(self, opos, cpos):
        assert (opos, cpos) == self.expect_cancels.pop(0)
        # locally canceled pairs are true matching pairs and type-correct
        assert (opos, cpos) in self.pairs
        assert self.codes[opos - 1] ^ 1 == self.codes[cpos - 1]

    def _on_absorb(self, pos, d, item_hash, pending_after):
        assert pos == self.expect_downs.pop(0)
        code = self.codes[pos - 1]
        assert code & 1
        assert d == self.height == self.heights[pos - 1]
        self.height -= 1
        assert self.stack, "absorb with no stacked item"
        item = self.stack[-1]
        assert item[1], "absorb into an item with no pending openers"
        opener_height, opener_pos = item[1].pop()
        assert opener_height == d
        assert (opener_pos, pos) in self.pairs
        assert pos > item[2]
        item[2] = pos
        if self.codes[opener_pos - 1] ^ 1 != code:
            item[3] = False
        item[0] = (item[0] + self._letter_hash(code, d)) % self.p
        assert item_hash == item[0]
        assert pending_after == len(item[1])

    def _on_check(self, pos, item_hash):
        item = self.stack.pop()
        assert not item[1]
        assert item_hash == item[0]
        if item[3]:
            # a type-correct matching set hashes to zero for every alpha
            assert item_hash == 0

    def _on_push(self, last_pos, item_hash, pending):
        assert last_pos == self.block[1]
        assert not self.expect_downs, "push before the block's closers"
        ups = self.expect_ups
        assert ups and pending == len(ups)
        h_exp = 0
        heights = []
        for opener_pos in ups:
            d = self.height + 1
            assert d == self.heights[opener_pos - 1]
            self.height = d
            heights.append((d, opener_pos))
            h_exp = (h_exp + self._letter_hash(self.codes[opener_pos - 1], d)) % self.p
        assert item_hash == h_exp
        if self.stack:
            assert ups[0] > self.stack[-1][2]
        self.stack.append([h_exp, heights, ups[-1], True])
        self.expect_ups = []

    def assert_accepted_state(self):
        assert not self.stack
        assert self.height == 0
        if self.codes:
            assert self.block is not None
            assert self.block[1] == len(self.codes)
        assert not self.expect_cancels and not self.expect_downs
        assert not self.expect_ups


class TwoPassShadow:
    """Tracer for both directions of the aligned-merge scanner."""

    def __init__(self, codes, params):
        padded, pad_letters = pad_to_pow2(len(codes))
        pad = b"\x00\x01" * (pad_letters // 2)
        backward = bytes(c ^ 1 for c in reversed(codes))
        self.streams = {1: codes + pad, 2: pad + backward}
        self.padded = padded
        self.p = params.p
        self.alpha = params.alpha
        self.current_pass = 0
        self.events = 0

    def _letter_hash(self, code, d):
        if code >= 2:
            return 0
        v = pow(self.alpha, d, self.p)
        return v if code == 0 else (self.p - v) % self.p

    def __call__(self, event):
        self.events += 1
        getattr(self, "_on_" + event[0])(*event[1:])

    def _on_pass(self, which):
        if which == 2:
            self.assert_pass_complete(accepted=True)
        else:
            assert self.current_pass == 0
        self.current_pass = which
        self.scanned = self.streams[which]
        self.pairs = matching_pairs(self.scanned)
        self.heights = pair_heights(self.scanned)
        # items: [hash, [(height, pos)...], first, first height, max pos, well formed]
        self.stack = []
        self.height = 0
        self.j = 0
        self.last_d = 0

    def _letter_boundary(self, j):
        if self.j:
            self._finish_letter()
        assert j == self.j + 1, "a letter passed without an event"
        self.j = j

    def _finish_letter(self):
        stack = self.stack
        if stack:
            top = stack[-1]
            if top[2] < self.j:
                # every older item began strictly below the current step
                assert top[3] < self.last_d
            if len(stack) >= 2:
                assert stack[-2][3] < top[3]
        # the kernel merged everything the aligned-block rule allows
        rest, block_len = self.j, 2
        while rest & 1 == 0:
            start = self.j - block_len + 1
            if len(stack) >= 2:
                assert stack[-2][2] < start, "a due merge was skipped"
            rest >>= 1
            block_len <<= 1

    def _on_push(self, j, item_hash, pending, first):
        self._letter_boundary(j)
        code = self.scanned[j - 1]
        assert not code & 1
        assert pending == 1 and first == j
        self.height += 1
        d = self.height
        assert d == self.heights[j - 1]
        h_exp = self._letter_hash(code, d)
        assert item_hash == h_exp
        if self.stack:
            below = self.stack[-1]
            assert below[3] < d
            assert below[4] < j
        self.stack.append([h_exp, [(d, j)], j, d, j, True])
        self.last_d = d

    def _on_absorb(self, j, d, item_hash, pending_after):
        self._letter_boundary(j)
        code = self.scanned[j - 1]
        assert code & 1
        assert self.stack, "absorb with an empty stack"
        assert d == self.height == self.heights[j - 1]
        self.height -= 1
        item = self.stack[-1]
        assert item[1], "absorb into an exhausted item"
        opener_height, opener_pos = item[1].pop()
        assert opener_height == d
        assert (opener_pos, j) in self.pairs
        if self.scanned[opener_pos - 1] ^ 1 != code:
            item[5] = False
        item[0] = (item[0] + self._letter_hash(code, d)) % self.p
        assert item_hash == item[0]
        assert pending_after == len(item[1])
        assert j > item[4]
        item[4] = j
        self.last_d = d

    def _on_check(self, j, item_hash):
        assert j == self.j
        item = self.stack.pop()
        assert not item[1]
        assert item_hash == item[0]
        if item[5]:
            assert item_hash == 0

    def _on_merge(self, j, block_len, item_hash, pending, first):
        assert j == self.j and j % block_len == 0
        start = j - block_len + 1
        assert len(self.stack) >= 2
        top = self.stack.pop()
        low = self.stack.pop()
        assert low[2] >= start, "merge outside the aligned block"
        assert first == low[2]
        assert item_hash == (low[0] + top[0]) % self.p
        assert low[1] and top[1], "a finished item lingered on the stack"
        assert pending == len(low[1]) + len(top[1])
        # pending heights stay sorted across the seam
        assert low[1][-1][0] < top[1][0][0]
        low[0] = item_hash
        low[1].extend(top[1])
        low[4] = top[4]
        low[5] = low[5] and top[5]
        self.stack.append(low)

    def assert_pass_complete(self, accepted):
        assert self.current_pass in (1, 2)
        if self.padded:
            assert self.j == self.padded
            self._finish_letter()
        if accepted:
            assert not self.stack
            assert self.height == 0


def shadow_one_pass(word, params):
    """Run the one-pass checker shadowed; returns (verdict, metrics)."""
    codes = _as_codes(word)
    shadow = OnePassShadow(codes, params)
    verdict, metrics = check_one_pass(codes, params, backend="python", tracer=shadow)
    if verdict.accepted:
        shadow.assert_accepted_state()
    if codes:
        assert shadow.events > 0
    return verdict, metrics


def shadow_two_pass(word, params):
    """Run the two-pass checker shadowed; returns (verdict, metrics)."""
    codes = _as_codes(word)
    shadow = TwoPassShadow(codes, params)
    verdict, metrics = check_two_pass(codes, params, backend="python", tracer=shadow)
    if len(codes) % 2:
        assert shadow.events == 0
    elif verdict.accepted:
        shadow.assert_pass_complete(accepted=True)
    return verdict, metrics
