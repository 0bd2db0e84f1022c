"""Text formats: graph6 and a plain edge list.

Edge-list layout::

    n 4
    0 1
    1 2

Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import warnings

import numpy as np

from .graph import Graph


class GraphFormatError(ValueError):
    pass


_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 2**36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphFormatError("graph too large for graph6")


def to_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 string (no header, no trailing newline)."""
    n = g.n
    # graph6 walks the upper triangle column by column: (0,1), (0,2), (1,2), ...
    bits = g.to_numpy()[np.tril_indices(n, -1)].astype(np.uint8)
    bits = np.concatenate([bits, np.zeros(-len(bits) % 6, dtype=np.uint8)])
    vals = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8) + 63
    return _g6_size(n) + vals.astype(np.uint8).tobytes().decode("ascii")


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r} at position {pos}")
    vals = [ord(c) - 63 for c in s]
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphFormatError("truncated graph6 size field")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    else:
        if len(vals) < 4:
            raise GraphFormatError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    need = n * (n - 1) // 2
    if len(body) != -(-need // 6):
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {-(-need // 6)}")
    raw = np.array(body, dtype=np.uint8)
    bits = ((raw[:, None] >> np.arange(5, -1, -1, dtype=np.uint8)) & 1).ravel()
    if bits[need:].any():
        raise GraphFormatError("nonzero padding bits in graph6 string")
    adj = np.zeros((n, n), dtype=bool)
    adj[np.tril_indices(n, -1)] = bits[:need].astype(bool)
    return Graph.from_numpy(adj | adj.T)


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [
        (no, ln.strip())
        for no, ln in enumerate(text.splitlines(), 1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty edge list")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise GraphFormatError(f"line {no}: expected header 'n <count>', got {head!r}")
    n = int(parts[1])
    edges = []
    seen = set()
    for no, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {no}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {no}: non-integer vertex in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {no}: vertex index out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"line {no}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            warnings.warn(f"line {no}: duplicate edge {key} ignored", stacklevel=2)
            continue
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def read_graph(text: str, fmt: str | None = None) -> Graph:
    """Parse ``text`` as ``"graph6"`` or ``"edgelist"``; autodetect when ``fmt`` is None."""
    if fmt is None:
        first = next((ln.strip() for ln in text.splitlines()
                      if ln.strip() and not ln.lstrip().startswith("#")), "")
        fmt = "edgelist" if first.split()[:1] == ["n"] else "graph6"
    if fmt == "graph6":
        return from_graph6(text)
    if fmt == "edgelist":
        return from_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def write_graph(g: Graph, fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edgelist":
        return to_edge_list(g)
    raise ValueError(f"unknown graph format {fmt!r}")
