"""graph6 text encoding: 6-bit groups offset by 63, upper triangle packed
column-major (x(0,1), x(0,2), x(1,2), x(0,3), ...)."""

from __future__ import annotations

from .graphs import BipartiteGraph, Graph, GraphError


class Graph6Error(GraphError):
    """Malformed graph6 input."""


def _encode_size(n: int) -> str:
    if n < 0:
        raise Graph6Error(f"negative order {n}")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        bits = [(n >> s) & 63 for s in (12, 6, 0)]
        return "~" + "".join(chr(b + 63) for b in bits)
    if n <= 68719476735:
        bits = [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
        return "~~" + "".join(chr(b + 63) for b in bits)
    raise Graph6Error(f"order {n} too large for graph6")


def _decode_size(text: str) -> tuple:
    """Return (n, offset of the first edge character)."""
    if not text:
        raise Graph6Error("empty graph6 string")
    if text[0] != "~":
        return ord(text[0]) - 63, 1
    if len(text) >= 2 and text[1] == "~":
        chunk, off = text[2:8], 8
    else:
        chunk, off = text[1:4], 4
    if len(text) < off:
        raise Graph6Error("truncated graph6 size prefix")
    n = 0
    for ch in chunk:
        n = (n << 6) | (ord(ch) - 63)
    return n, off


def encode_graph6(g) -> str:
    """Encode a Graph (or the flattened form of a BipartiteGraph)."""
    graph = g.to_graph() if isinstance(g, BipartiteGraph) else g
    n = graph.n
    out = [_encode_size(n)]
    bits = 0
    nbits = 0
    edges = graph.edges
    for j in range(1, n):
        for i in range(j):
            bits = (bits << 1) | ((i, j) in edges)
            nbits += 1
            if nbits == 6:
                out.append(chr(bits + 63))
                bits = nbits = 0
    if nbits:
        bits <<= 6 - nbits
        out.append(chr(bits + 63))
    return "".join(out)


def decode_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    for ch in text:
        if not (63 <= ord(ch) <= 126):
            raise Graph6Error(f"character {ch!r} outside graph6 range")
    n, off = _decode_size(text)
    body = text[off:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise Graph6Error(
            f"expected {need} edge characters for order {n}, got {len(body)}")
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            ch = ord(body[pos // 6]) - 63
            if (ch >> (5 - pos % 6)) & 1:
                edges.append((i, j))
            pos += 1
    return Graph.from_edges(n, edges)
