"""Textual stream formats.

Three interchangeable surface forms for letter streams:

- ``chars2``: one character per letter over "()[]" (two bracket types);
- ``tokens``: whitespace-separated signed type indices, "+3" opening
  type 3 and "-3" closing it, for any alphabet size;
- ``tags``: one named event per line, "<name" opening and ">name"
  closing, encoded to two bracket types byte by byte.

Lines whose first non-blank character is '#' are comments everywhere; a
comment of the form ``# label=...`` is captured so generated corpora
can carry their ground truth inline.
"""

from __future__ import annotations

from dataclasses import dataclass

from .reduction import encode_tag_stream
from .words import BRACKETS, Word, _as_codes

__all__ = ["FORMATS", "ParsedInput", "parse_stream", "render_stream"]

FORMATS = ("chars2", "tokens", "tags")

_CHAR_TO_CODE = {ch: code for code, ch in enumerate(BRACKETS)}


@dataclass
class ParsedInput:
    """A parsed stream: letter codes plus what the surface form knew."""

    codes: bytes
    alphabet_size: int
    fmt: str
    events: list | None = None
    label: str | None = None

    @property
    def word(self) -> Word:
        return Word(self.codes, self.alphabet_size)


def _as_text(data) -> str:
    if isinstance(data, str):
        return data
    return bytes(data).decode("utf-8")


def _split_comments(text: str):
    label = None
    body = []
    for line in text.splitlines():
        stripped = line.lstrip()
        if stripped.startswith("#"):
            comment = stripped[1:].strip()
            if comment.startswith("label=") and label is None:
                label = comment[len("label="):].strip()
        else:
            body.append(line)
    return body, label


def parse_stream(data, fmt: str = "chars2", alphabet_size: int | None = None) -> ParsedInput:
    """Parse ``data`` (str or bytes) in the given format.

    ``alphabet_size`` is enforced when given; otherwise it is 2 for
    ``chars2`` and ``tags`` and the largest type seen for ``tokens``.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    lines, label = _split_comments(_as_text(data))
    if fmt == "chars2":
        out = bytearray()
        for line in lines:
            for ch in line:
                if ch.isspace():
                    continue
                code = _CHAR_TO_CODE.get(ch)
                if code is None:
                    raise ValueError(f"unexpected character {ch!r} in chars2 input")
                out.append(code)
        if alphabet_size is not None and alphabet_size != 2:
            raise ValueError("chars2 carries exactly 2 bracket types")
        return ParsedInput(bytes(out), 2, fmt, label=label)
    if fmt == "tokens":
        out = bytearray()
        seen = 1
        for line in lines:
            for token in line.replace("−", "-").split():
                sign = token[0]
                if sign not in "+-" or not token[1:].isdigit():
                    raise ValueError(f"unexpected token {token!r}; want +N or -N")
                t = int(token[1:])
                if t < 1:
                    raise ValueError("type indices start at 1")
                if alphabet_size is not None and t > alphabet_size:
                    raise ValueError(
                        f"type {t} outside the declared alphabet of {alphabet_size}"
                    )
                seen = max(seen, t)
                out.append(2 * (t - 1) + (1 if sign == "-" else 0))
        return ParsedInput(bytes(out), alphabet_size or seen, fmt, label=label)
    events = []
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        kind = stripped[0]
        name = stripped[1:]
        if kind not in "<>" or not name:
            raise ValueError(f"unexpected tag line {stripped!r}; want <name or >name")
        events.append(("open" if kind == "<" else "close", name))
    if alphabet_size is not None and alphabet_size != 2:
        raise ValueError("tags encode to exactly 2 bracket types")
    codes = bytes(encode_tag_stream(events))
    return ParsedInput(codes, 2, fmt, events=events, label=label)


def render_stream(source, fmt: str = "chars2", events=None) -> str:
    """Render a word (or ParsedInput) in the given format, no trailing newline.

    ``tags`` cannot be recovered from letter codes alone, so it needs
    the original events (or a ParsedInput that kept them).
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if isinstance(source, ParsedInput):
        if events is None:
            events = source.events
        codes = source.codes
    else:
        codes = bytes(_as_codes(source))
    if fmt == "chars2":
        if any(code >= 4 for code in codes):
            raise ValueError("chars2 carries exactly 2 bracket types")
        return "".join(BRACKETS[code] for code in codes)
    if fmt == "tokens":
        return " ".join(
            f"{'-' if code & 1 else '+'}{(code >> 1) + 1}" for code in codes
        )
    if events is None:
        raise ValueError("rendering tags needs the original events")
    return "\n".join(
        ("<" if kind == "open" else ">") + (name if isinstance(name, str) else bytes(name).decode("utf-8"))
        for kind, name in events
    )
