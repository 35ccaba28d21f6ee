"""Bounded-prefix extraction of summary blocks and token estimation.

The point of the summary block is that a reader never has to load the
body: this module pulls fixed-size chunks through a minimal JSON
structure scanner and stops as soon as the first top-level value is
complete.  The scanner tracks nesting depth and string/escape state
only; nothing past the summary is validated.  For a file whose summary
ends at byte offset ``o`` read with block size ``b``, at most ``o + b``
bytes are ever read.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import IoFailure, MalformedFile, NoSummary, SummaryNotFirst
from .library import SUMMARY_KEY, Finding, SEVERITY_WARNING, SummaryBlock, \
    summary_block_from_dict, summary_to_dict

DEFAULT_BLOCK_SIZE = 4096

# The design target for a well-hinted summary block; overruns are
# reported, never clamped.
DEFAULT_TOKEN_BUDGET = 200

_WS = frozenset(b" \t\r\n")


def estimate_tokens(text: str) -> int:
    """Deterministic token proxy: ceil(scalar values / 4)."""
    return (len(text) + 3) // 4


def summary_token_estimate(summary: SummaryBlock) -> int:
    """Token estimate of a summary in its compact serialized form."""
    payload = json.dumps(summary_to_dict(summary), ensure_ascii=False, separators=(",", ":"))
    return estimate_tokens(payload)


@dataclass(frozen=True)
class RegistryEntry:
    file_id: str
    path: str
    byte_size: int


@dataclass(frozen=True)
class FileRegistry:
    entries: tuple[RegistryEntry, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class PrefixReadResult:
    summary: SummaryBlock
    bytes_read: int
    summary_end_offset: int
    warning: str | None = None


def scan_registry(directory: str | Path, extension: str = ".json") -> FileRegistry:
    """List every file under *directory* matching *extension*, sorted by path.

    File ids are the paths relative to *directory* in POSIX form, which
    keeps them unique and makes registry order deterministic.
    """
    root = Path(directory)
    if not root.is_dir():
        raise IoFailure(f"not a readable directory: {root}")
    try:
        paths = sorted(p for p in root.rglob(f"*{extension}") if p.is_file())
    except OSError as exc:
        raise IoFailure(f"cannot scan {root}: {exc}") from exc
    entries = []
    for p in paths:
        try:
            size = p.stat().st_size
        except OSError as exc:
            raise IoFailure(f"cannot stat {p}: {exc}") from exc
        entries.append(RegistryEntry(
            file_id=p.relative_to(root).as_posix(), path=str(p), byte_size=size))
    return FileRegistry(entries=tuple(entries))


class _TopLevelScanner:
    """Streams bytes of a JSON object and finds top-level value spans.

    Only structural state is tracked: brace/bracket depth, whether the
    cursor is inside a string, and escape state.  UTF-8 continuation
    bytes never collide with ASCII structural characters, so byte-wise
    scanning is safe for any UTF-8 input.
    """

    def __init__(self) -> None:
        self.buffer = bytearray()
        self.entries: list[tuple[str, int, int]] = []  # (key, value_start, value_end)
        self.first_key: str | None = None
        self.closed = False
        self._state = "start"
        self._pos = 0
        self._depth = 0
        self._in_string = False
        self._escaped = False
        self._key_start = 0
        self._value_start = 0
        self._current_key = ""

    def feed(self, chunk: bytes) -> None:
        self.buffer.extend(chunk)
        buf = self.buffer
        pos = self._pos
        end = len(buf)
        while pos < end:
            byte = buf[pos]
            state = self._state
            if state == "start":
                if pos == 0 and byte == 0xEF:
                    if end < 3:
                        break  # partial BOM; wait for more bytes
                    if buf[:3] == b"\xef\xbb\xbf":
                        pos += 3
                        continue
                    raise MalformedFile("invalid leading bytes (not a UTF-8 BOM)")
                if byte in _WS:
                    pos += 1
                    continue
                if byte != 0x7B:  # {
                    raise MalformedFile(
                        f"expected a top-level object, found byte {byte:#x} at offset {pos}")
                self._state = "before_key"
                pos += 1
            elif state == "before_key":
                if byte in _WS:
                    pos += 1
                    continue
                if byte == 0x22:  # "
                    self._key_start = pos
                    self._in_string = True
                    self._escaped = False
                    self._state = "in_key"
                    pos += 1
                elif byte == 0x7D:  # }
                    self.closed = True
                    self._state = "done"
                    pos += 1
                else:
                    raise MalformedFile(f"expected a key string at offset {pos}")
            elif state == "in_key":
                if self._escaped:
                    self._escaped = False
                elif byte == 0x5C:  # backslash
                    self._escaped = True
                elif byte == 0x22:
                    raw = bytes(buf[self._key_start:pos + 1])
                    try:
                        self._current_key = json.loads(raw.decode("utf-8"))
                    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                        raise MalformedFile(f"unparseable key at offset {self._key_start}") from exc
                    if self.first_key is None:
                        self.first_key = self._current_key
                    self._in_string = False
                    self._state = "after_key"
                pos += 1
            elif state == "after_key":
                if byte in _WS:
                    pos += 1
                    continue
                if byte != 0x3A:  # :
                    raise MalformedFile(f"expected ':' at offset {pos}")
                self._state = "before_value"
                pos += 1
            elif state == "before_value":
                if byte in _WS:
                    pos += 1
                    continue
                self._value_start = pos
                if byte in (0x7B, 0x5B):  # { [
                    self._depth = 1
                    self._in_string = False
                    self._escaped = False
                    self._state = "in_container"
                elif byte == 0x22:
                    self._in_string = True
                    self._escaped = False
                    self._state = "in_string_value"
                else:
                    self._state = "in_scalar"
                pos += 1
            elif state == "in_container":
                if self._in_string:
                    if self._escaped:
                        self._escaped = False
                    elif byte == 0x5C:
                        self._escaped = True
                    elif byte == 0x22:
                        self._in_string = False
                else:
                    if byte == 0x22:
                        self._in_string = True
                        self._escaped = False
                    elif byte in (0x7B, 0x5B):
                        self._depth += 1
                    elif byte in (0x7D, 0x5D):
                        self._depth -= 1
                        if self._depth == 0:
                            self._finish_value(pos + 1)
                pos += 1
            elif state == "in_string_value":
                if self._escaped:
                    self._escaped = False
                elif byte == 0x5C:
                    self._escaped = True
                elif byte == 0x22:
                    self._in_string = False
                    self._finish_value(pos + 1)
                pos += 1
            elif state == "in_scalar":
                if byte in _WS or byte in (0x2C, 0x7D):  # , }
                    self._finish_value(pos)
                    continue  # reprocess the delimiter in after_value
                pos += 1
            elif state == "after_value":
                if byte in _WS:
                    pos += 1
                    continue
                if byte == 0x2C:  # ,
                    self._state = "before_key"
                    pos += 1
                elif byte == 0x7D:
                    self.closed = True
                    self._state = "done"
                    pos += 1
                else:
                    raise MalformedFile(f"expected ',' or '}}' at offset {pos}")
            else:  # done: trailing bytes are not our business
                pos = end
        self._pos = pos

    def _finish_value(self, value_end: int) -> None:
        self.entries.append((self._current_key, self._value_start, value_end))
        self._state = "after_value"

    def find_entry(self, key: str) -> tuple[int, int, int] | None:
        """Return (entry_index, value_start, value_end) for *key*, if complete."""
        for idx, (entry_key, start, end) in enumerate(self.entries):
            if entry_key == key:
                return idx, start, end
        return None


def extract_summary(
    path: str | Path,
    block_size: int = DEFAULT_BLOCK_SIZE,
    strict: bool = True,
) -> PrefixReadResult:
    """Read just enough of *path* to return its summary block.

    In strict mode the summary must be the file's first key; finding
    any other key first raises SummaryNotFirst without reading further.
    In lenient mode the scanner walks forward through the top-level
    object and returns the summary with a warning recording its actual
    position; a file with no summary key at all raises NoSummary.  The
    returned block is identical to what a full-file parse would produce
    regardless of ``block_size``; only ``bytes_read`` varies.
    """
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    try:
        handle = open(path, "rb")
    except OSError as exc:
        raise IoFailure(f"cannot open {path}: {exc}") from exc

    scanner = _TopLevelScanner()
    bytes_read = 0
    with handle:
        while True:
            chunk = handle.read(block_size)
            if chunk:
                bytes_read += len(chunk)
                scanner.feed(chunk)

            if strict and scanner.first_key is not None and scanner.first_key != SUMMARY_KEY:
                raise SummaryNotFirst(
                    f"{path}: first top-level key is {scanner.first_key!r}, not {SUMMARY_KEY!r}")

            found = scanner.find_entry(SUMMARY_KEY)
            if found is not None:
                index, start, end = found
                warning = None
                if index > 0:
                    warning = (f"summary block is key #{index + 1} of the file, "
                               "not the first key")
                return PrefixReadResult(
                    summary=_parse_summary_span(scanner.buffer, start, end, path),
                    bytes_read=bytes_read,
                    summary_end_offset=end,
                    warning=warning,
                )
            if scanner.closed:
                raise NoSummary(f"{path}: no {SUMMARY_KEY!r} key in top-level object")
            if not chunk:
                if bytes_read == 0:
                    raise MalformedFile(f"{path}: empty file")
                raise MalformedFile(f"{path}: truncated before the summary completed")


def _parse_summary_span(buffer: bytearray, start: int, end: int, path) -> SummaryBlock:
    raw = bytes(buffer[start:end])
    try:
        obj = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedFile(f"{path}: summary value does not parse: {exc}") from exc
    return summary_block_from_dict(obj)


def read_registry_summaries(
    registry: FileRegistry,
    block_size: int = DEFAULT_BLOCK_SIZE,
    strict: bool = True,
    token_budget: int = DEFAULT_TOKEN_BUDGET,
) -> tuple[list[tuple[str, PrefixReadResult]], list[Finding]]:
    """Extract every registry entry's summary, in registry order.

    Returns the per-file results plus findings: a warning for every
    summary whose token estimate exceeds *token_budget* (the estimate
    is reported, never clamped) and for every lenient-mode position
    warning.
    """
    results: list[tuple[str, PrefixReadResult]] = []
    findings: list[Finding] = []
    for entry in registry.entries:
        result = extract_summary(entry.path, block_size=block_size, strict=strict)
        results.append((entry.file_id, result))
        estimate = summary_token_estimate(result.summary)
        if estimate > token_budget:
            findings.append(Finding(
                SEVERITY_WARNING, "TOKEN_BUDGET_OVERRUN",
                f"{entry.file_id}: summary estimates {estimate} tokens "
                f"(budget {token_budget})"))
        if result.warning:
            findings.append(Finding(
                SEVERITY_WARNING, "SUMMARY_POSITION", f"{entry.file_id}: {result.warning}"))
    return results, findings
