"""Shared status codes for the checker cores.

The compiled and pure-Python kernels report outcomes as small ints so the
hot loops never touch Python strings; the driver layer maps them back to
the public reason names.
"""

OK = 0
NEGATIVE_HEIGHT = 1
MISSING_CLOSING = 2
MISMATCHED = 3
EXTRA_CLOSING = 4

REASONS = {
    OK: "none",
    NEGATIVE_HEIGHT: "negative_height",
    MISSING_CLOSING: "missing_closing",
    MISMATCHED: "mismatched",
    EXTRA_CLOSING: "extra_closing",
}
