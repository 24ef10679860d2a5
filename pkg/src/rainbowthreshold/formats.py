"""RTS v1 / RTG v1 text formats and their JSON mirrors.

RTS v1::

    RTS 1 k=2 n=3
    0 a=0 e=-
    1 a=1 e=0
    2 a=0 e=1

RTG v1 stores the strict lower triangle, one line per vertex ``j >= 1`` holding ``j``
characters; character ``i`` is ``adj(i, j)``::

    RTG 1 n=3
    1
    01
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Mapping

from .core_model import Graph, RainbowSequence, colors_to_mask, mask_to_colors
from .errors import InvalidGraphError, InvalidSequenceError, ParseError

FORMAT_VERSION = 1

_RTS_HEADER = re.compile(r"^RTS (\d+) k=(\d+) n=(\d+)$")
_RTS_ENTRY = re.compile(r"^(\d+) a=(\d+) e=(-|\d+(?:,\d+)*)$")
_RTG_HEADER = re.compile(r"^RTG (\d+) n=(\d+)$")


def dump_sequence(sequence: RainbowSequence) -> str:
    lines = [f"RTS {FORMAT_VERSION} k={sequence.k} n={sequence.n}"]
    for index, (color, colorset) in enumerate(zip(sequence.colors, sequence.colorsets)):
        colors = mask_to_colors(colorset)
        rendered = ",".join(str(c) for c in colors) if colors else "-"
        lines.append(f"{index} a={color} e={rendered}")
    return "\n".join(lines) + "\n"


def dump_graph(graph: Graph) -> str:
    return "\n".join([f"RTG {FORMAT_VERSION} n={graph.n}", *graph_bit_rows(graph)]) + "\n"


def graph_bit_rows(graph: Graph) -> list[str]:
    return [
        "".join("1" if (graph.rows[j] >> i) & 1 else "0" for i in range(j)) for j in range(1, graph.n)
    ]


def graph_payload_bytes(graph: Graph) -> bytes:
    """RTG bit payload packed most-significant bit first, zero padded to whole bytes."""

    bits = "".join(graph_bit_rows(graph))
    if not bits:
        return b""
    padded = bits + "0" * (-len(bits) % 8)
    return int(padded, 2).to_bytes(len(padded) // 8, "big")


def graph_payload_hex(graph: Graph) -> str:
    return graph_payload_bytes(graph).hex()


def _body_lines(text: str, source: str | None) -> list[str]:
    if not text:
        raise ParseError("document is empty", line=1, source=source)
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    for number, line in enumerate(lines, start=1):
        if line.endswith("\r"):
            raise ParseError("carriage returns are not allowed", line=number, column=len(line), source=source)
    return lines


def _check_version(version: str, line: int, source: str | None) -> None:
    if int(version) != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version}", line=line, column=5, source=source)


def parse_sequence(text: str, *, source: str | None = None) -> RainbowSequence:
    lines = _body_lines(text, source)
    header = _RTS_HEADER.match(lines[0])
    if header is None:
        raise ParseError("expected header 'RTS 1 k=<k> n=<n>'", line=1, source=source)
    _check_version(header.group(1), 1, source)
    k, n = int(header.group(2)), int(header.group(3))
    if len(lines) - 1 != n:
        raise ParseError(
            f"header declares n={n} but {len(lines) - 1} entry lines follow",
            line=len(lines) + 1 if len(lines) - 1 < n else n + 2,
            source=source,
        )
    colors: list[int] = []
    colorsets: list[int] = []
    for offset, line in enumerate(lines[1:]):
        number = offset + 2
        match = _RTS_ENTRY.match(line)
        if match is None:
            raise ParseError("expected '<i> a=<color> e=<colors or ->'", line=number, source=source)
        if int(match.group(1)) != offset:
            raise ParseError(f"expected index {offset}", line=number, column=1, source=source)
        color = int(match.group(2))
        if color >= k:
            raise ParseError(f"color {color} is outside [{k}]", line=number, column=match.start(2) + 1, source=source)
        raw = match.group(3)
        members = [] if raw == "-" else [int(value) for value in raw.split(",")]
        if members != sorted(set(members)):
            raise ParseError("colorset must be strictly increasing", line=number, column=match.start(3) + 1, source=source)
        if members and members[-1] >= k:
            raise ParseError(
                f"colorset member {members[-1]} is outside [{k}]", line=number, column=match.start(3) + 1, source=source
            )
        colors.append(color)
        colorsets.append(colors_to_mask(members))
    try:
        return RainbowSequence(k, tuple(colors), tuple(colorsets))
    except InvalidSequenceError as exc:
        raise ParseError(str(exc), line=1, source=source) from exc


def parse_graph(text: str, *, source: str | None = None) -> Graph:
    lines = _body_lines(text, source)
    header = _RTG_HEADER.match(lines[0])
    if header is None:
        raise ParseError("expected header 'RTG 1 n=<n>'", line=1, source=source)
    _check_version(header.group(1), 1, source)
    n = int(header.group(2))
    expected = max(n - 1, 0)
    if len(lines) - 1 != expected:
        raise ParseError(
            f"header declares n={n} so {expected} adjacency lines must follow, found {len(lines) - 1}",
            line=len(lines) + 1 if len(lines) - 1 < expected else expected + 2,
            source=source,
        )
    return _graph_from_rows(n, lines[1:], first_line=2, source=source)


def _graph_from_rows(n: int, rows: list[str], *, first_line: int, source: str | None) -> Graph:
    adjacency = [0] * n
    for offset, row in enumerate(rows):
        j = offset + 1
        number = first_line + offset
        if len(row) != j:
            raise ParseError(f"line for vertex {j} must hold {j} characters", line=number, column=1, source=source)
        for i, char in enumerate(row):
            if char == "1":
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
            elif char != "0":
                raise ParseError(f"unexpected character {char!r}", line=number, column=i + 1, source=source)
    return Graph._trusted(n, adjacency)


def sequence_to_json(sequence: RainbowSequence) -> dict[str, Any]:
    return {
        "format": "RTS",
        "version": FORMAT_VERSION,
        "k": sequence.k,
        "n": sequence.n,
        "entries": [
            {"i": index, "a": color, "e": mask_to_colors(colorset)}
            for index, (color, colorset) in enumerate(zip(sequence.colors, sequence.colorsets))
        ],
    }


def graph_to_json(graph: Graph) -> dict[str, Any]:
    return {"format": "RTG", "version": FORMAT_VERSION, "n": graph.n, "rows": graph_bit_rows(graph)}


def _require(payload: Mapping[str, Any], key: str, source: str | None) -> Any:
    if key not in payload:
        raise ParseError(f"missing field {key!r}", line=1, source=source)
    return payload[key]


def sequence_from_json(payload: Mapping[str, Any], *, source: str | None = None) -> RainbowSequence:
    if _require(payload, "format", source) != "RTS" or _require(payload, "version", source) != FORMAT_VERSION:
        raise ParseError("expected an RTS version 1 document", line=1, source=source)
    k = int(_require(payload, "k", source))
    n = int(_require(payload, "n", source))
    entries = _require(payload, "entries", source)
    if not isinstance(entries, list) or len(entries) != n:
        raise ParseError(f"expected {n} entries", line=1, source=source)
    pairs = []
    for index, entry in enumerate(entries):
        if not isinstance(entry, Mapping) or entry.get("i") != index:
            raise ParseError(f"entry {index} is malformed", line=1, source=source)
        pairs.append((entry.get("a"), entry.get("e") or []))
    try:
        return RainbowSequence.from_entries(k, pairs)
    except (InvalidSequenceError, TypeError) as exc:
        raise ParseError(str(exc), line=1, source=source) from exc


def graph_from_json(payload: Mapping[str, Any], *, source: str | None = None) -> Graph:
    if _require(payload, "format", source) != "RTG" or _require(payload, "version", source) != FORMAT_VERSION:
        raise ParseError("expected an RTG version 1 document", line=1, source=source)
    n = int(_require(payload, "n", source))
    rows = _require(payload, "rows", source)
    if not isinstance(rows, list) or len(rows) != max(n - 1, 0) or not all(isinstance(r, str) for r in rows):
        raise ParseError(f"expected {max(n - 1, 0)} row strings", line=1, source=source)
    return _graph_from_rows(n, rows, first_line=1, source=source)


def _load_json(text: str, source: str | None) -> Mapping[str, Any]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno, source=source) from exc
    if not isinstance(payload, Mapping):
        raise ParseError("expected a JSON object", line=1, source=source)
    return payload


def loads_sequence(text: str, *, source: str | None = None) -> RainbowSequence:
    """Parse RTS text or its JSON mirror, whichever ``text`` holds."""

    if text.lstrip().startswith("{"):
        return sequence_from_json(_load_json(text, source), source=source)
    return parse_sequence(text, source=source)


def loads_graph(text: str, *, source: str | None = None) -> Graph:
    if text.lstrip().startswith("{"):
        return graph_from_json(_load_json(text, source), source=source)
    try:
        return parse_graph(text, source=source)
    except InvalidGraphError as exc:  # pragma: no cover - rows are symmetric by construction
        raise ParseError(str(exc), line=1, source=source) from exc


def read_sequence_file(path: str | Path) -> RainbowSequence:
    file_path = Path(path)
    return loads_sequence(file_path.read_text(encoding="utf-8"), source=str(file_path))


def read_graph_file(path: str | Path) -> Graph:
    file_path = Path(path)
    return loads_graph(file_path.read_text(encoding="utf-8"), source=str(file_path))


__all__ = [
    "FORMAT_VERSION",
    "dump_sequence",
    "dump_graph",
    "graph_bit_rows",
    "graph_payload_bytes",
    "graph_payload_hex",
    "parse_sequence",
    "parse_graph",
    "sequence_to_json",
    "graph_to_json",
    "sequence_from_json",
    "graph_from_json",
    "loads_sequence",
    "loads_graph",
    "read_sequence_file",
    "read_graph_file",
]
