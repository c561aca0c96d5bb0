"""graph6 encoding/decoding and DOT export."""

from __future__ import annotations

from .errors import Graph6ParseError
from .graphs import DiGraph, SimpleGraph

_MAX_SHORT = 258047


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= _MAX_SHORT:
        return chr(126) + "".join(
            chr(((n >> shift) & 0x3F) + 63) for shift in (12, 6, 0)
        )
    raise ValueError(f"graph6 short form supports at most {_MAX_SHORT} vertices")


def to_graph6(g: SimpleGraph) -> str:
    """Standard graph6: size prefix, then the upper triangle column by column
    packed into 6-bit chunks offset by 63."""
    out = [_encode_size(g.m)]
    chunk = 0
    filled = 0
    for j in range(1, g.m):
        col = g.adj[j]
        for i in range(j):
            chunk = (chunk << 1) | ((col >> i) & 1)
            filled += 1
            if filled == 6:
                out.append(chr(chunk + 63))
                chunk, filled = 0, 0
    if filled:
        chunk <<= 6 - filled
        out.append(chr(chunk + 63))
    return "".join(out)


def from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6ParseError("empty graph6 string")
    vals = []
    for ch in s:
        code = ord(ch)
        if not 63 <= code <= 126:
            raise Graph6ParseError(f"byte {code} out of graph6 range")
        vals.append(code - 63)
    if vals[0] == 63:
        if len(vals) < 4:
            raise Graph6ParseError("truncated size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6ParseError(
            f"expected {(nbits + 5) // 6} data bytes for {n} vertices, got {len(body)}"
        )
    bitstream = []
    for v in body:
        for shift in range(5, -1, -1):
            bitstream.append((v >> shift) & 1)
    if any(bitstream[nbits:]):
        raise Graph6ParseError("nonzero padding bits")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return SimpleGraph(n, adj)


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: SimpleGraph | DiGraph, name: str = "G") -> str:
    lines = []
    if isinstance(g, SimpleGraph):
        lines.append(f"graph {_quote(name)} {{")
        edge = "--"
        rows = g.adj
    else:
        lines.append(f"digraph {_quote(name)} {{")
        edge = "->"
        rows = g.out
    for v in range(g.m):
        lines.append(f"  {v} [label={_quote(g.labels[v])}];")
    for v in range(g.m):
        row = rows[v]
        for u in range(g.m):
            if (row >> u) & 1 and (isinstance(g, DiGraph) or u > v):
                lines.append(f"  {v} {edge} {u};")
    lines.append("}")
    return "\n".join(lines) + "\n"
