"""graph6 and edge-list text formats."""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import GraphFormatError
from .graph import Graph

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    """Standard graph6 encoding (upper triangle, column by column)."""
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        col = adj[j]
        for i in range(j):
            acc = (acc << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise GraphFormatError(f"character outside the graph6 range in {s!r}")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] < 63:
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
    elif len(data) >= 8 and data[1] == 63:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
    else:
        raise GraphFormatError(f"malformed graph6 size header in {s!r}")
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 body has {len(body)} bytes, expected {need} for n={n}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, frozenset(edges))


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"{g.label(u)} {g.label(v)}")
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (indices or labels)."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise GraphFormatError("empty edge list")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
    except (IndexError, ValueError):
        raise GraphFormatError("edge list must start with 'n m'") from None
    pairs = rows[1:]
    if len(pairs) != m or any(len(p) != 2 for p in pairs):
        raise GraphFormatError(f"expected {m} lines of 'u v', got {len(pairs)}")
    tokens = [t for p in pairs for t in p]
    if all(t.isdigit() and int(t) < n for t in tokens):
        return Graph(n, frozenset((int(u), int(v)) for u, v in pairs))
    names: list[str] = []
    for t in tokens:
        if t not in names:
            names.append(t)
    if len(names) > n:
        raise GraphFormatError(f"{len(names)} distinct labels for n={n}")
    k = 0
    while len(names) < n:
        cand = f"v{k}"
        k += 1
        if cand not in names:
            names.append(cand)
    pos = {s: i for i, s in enumerate(names)}
    try:
        return Graph(n, frozenset((pos[u], pos[v]) for u, v in pairs), tuple(names))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def looks_like_graph6(line: str) -> bool:
    s = line.strip()
    return bool(s) and (s.startswith(">>") or 63 <= ord(s[0]) <= 126)


def read_graphs(text: str) -> Iterator[Graph]:
    """Auto-detect: graph6 stream (one per line) or a single edge list."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return
    if looks_like_graph6(lines[0]):
        for ln in lines:
            yield from_graph6(ln)
    else:
        yield from_edge_list_text(text)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | None, str]]:
    """Yield ``(line_no, graph_or_None, raw)``; malformed lines give ``None``."""
    for no, ln in enumerate(lines, 1):
        s = ln.strip()
        if not s:
            continue
        try:
            yield no, from_graph6(s), s
        except GraphFormatError:
            yield no, None, s
