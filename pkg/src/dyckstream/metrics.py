"""Run accounting: space and work counters with a stable text record."""

from __future__ import annotations

from dataclasses import dataclass

from .words import Verdict

RECORD_TAG = "dyckstream-metrics/1"


@dataclass
class Metrics:
    """Counters for one checker run.

    The drivers fold the kernel totals straight into the fields; the
    ``record_*`` methods offer the equivalent event-level route (used by
    instrumented runs and tests) and maintain the same peak/check
    counters from individual push/pop/check events.
    """

    algo: str
    n: int
    padded_n: int = 0
    peak_stack_items: int = 0
    item_bits: int = 0
    letters_read: int = 0
    hash_mults: int = 0
    checks_performed: int = 0
    verdict: Verdict | None = None
    pass_count: int = 0
    buffered_reverse: bool = False

    def __post_init__(self):
        if self.padded_n == 0:
            self.padded_n = self.n
        self._live_items = 0

    def record_push(self) -> None:
        self._live_items += 1
        if self._live_items > self.peak_stack_items:
            self.peak_stack_items = self._live_items

    def record_pop(self) -> None:
        if self._live_items <= 0:
            raise ValueError("pop without a matching push")
        self._live_items -= 1

    def record_check(self) -> None:
        self.checks_performed += 1

    def space_bits(self) -> int:
        """Peak stack footprint in bits (items times stored item width)."""
        return self.peak_stack_items * self.item_bits

    def to_line(self) -> str:
        if self.verdict is None:
            raise ValueError("cannot emit metrics before a verdict is set")
        values = {
            "record": RECORD_TAG,
            "algo": self.algo,
            "n": self.n,
            "padded_n": self.padded_n,
            "peak_stack_items": self.peak_stack_items,
            "item_bits": self.item_bits,
            "letters_read": self.letters_read,
            "hash_mults": self.hash_mults,
            "checks_performed": self.checks_performed,
            "verdict": "accept" if self.verdict.accepted else "reject",
            "reason": self.verdict.reason,
            "pass_count": self.pass_count,
            "buffered_reverse": "true" if self.buffered_reverse else "false",
        }
        return " ".join(f"{key}={value}" for key, value in values.items())


def emit(metrics: Metrics) -> str:
    """Render one run as a single self-describing key=value line."""
    return metrics.to_line()


def parse_line(line: str) -> dict:
    """Parse a line produced by :func:`emit` back into a dict.

    Integer-valued fields come back as ints; unknown keys are kept as
    strings so newer records stay readable.
    """
    fields = {}
    for part in line.split():
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"malformed metrics field {part!r}")
        fields[key] = int(value) if value.lstrip("-").isdigit() else value
    if fields.get("record") != RECORD_TAG:
        raise ValueError("not a metrics record")
    return fields
