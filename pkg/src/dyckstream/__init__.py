"""Small-space membership checking for nested bracket streams.

A word over s kinds of matched brackets is checked in one forward pass
with O(sqrt(n) log n) bits, or in a forward plus a backward pass with
O(log^2 n) bits, using height-indexed fingerprints; an explicit-stack
oracle provides ground truth and generators supply labeled corpora.
"""

from ._status import REASONS
from .fingerprint import (
    HashParams,
    KERNEL_P_MAX,
    MERSENNE_61,
    combine,
    letter_hash,
    make_params,
    powmod_mult_count,
    subsequence_hash,
)
from .formats import FORMATS, ParsedInput, parse_stream, render_stream
from .instances import (
    InstanceSpec,
    gen_ascension,
    gen_mountain,
    gen_random_member,
    matching_word,
    mutate_member,
)
from .metrics import Metrics, emit, parse_line
from .onepass import BlockMismatch, check_one_pass, simplify_block
from .oracle import check_oracle
from .reduction import (
    ReductionParams,
    encode_letter,
    encode_tag_stream,
    reduce_stream,
    reduce_word,
)
from .twopass import block_pass, check_two_pass, dual, pad_to_pow2
from .words import (
    BRACKETS,
    Letter,
    Verdict,
    Word,
    is_balanced,
    matching_pairs,
    oracle_check,
    pair_heights,
    prefix_heights,
)

__version__ = "0.1.0"

__all__ = [
    "BRACKETS",
    "BlockMismatch",
    "FORMATS",
    "HashParams",
    "InstanceSpec",
    "KERNEL_P_MAX",
    "Letter",
    "MERSENNE_61",
    "Metrics",
    "ParsedInput",
    "ReductionParams",
    "REASONS",
    "Verdict",
    "Word",
    "block_pass",
    "check_one_pass",
    "check_oracle",
    "check_two_pass",
    "combine",
    "dual",
    "emit",
    "encode_letter",
    "encode_tag_stream",
    "gen_ascension",
    "gen_mountain",
    "gen_random_member",
    "is_balanced",
    "letter_hash",
    "make_params",
    "matching_pairs",
    "matching_word",
    "mutate_member",
    "oracle_check",
    "pad_to_pow2",
    "pair_heights",
    "parse_line",
    "parse_stream",
    "powmod_mult_count",
    "prefix_heights",
    "reduce_stream",
    "reduce_word",
    "render_stream",
    "simplify_block",
    "subsequence_hash",
    "__version__",
]
