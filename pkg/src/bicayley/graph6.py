"""Standard graph6 encoding (as produced by nauty's ``geng`` and networkx)."""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def graph6_encode(g: Graph) -> str:
    out = _encode_n(g.n)
    bits = []
    for j in range(1, g.n):
        mask = g.masks[j]
        bits.extend((mask >> i) & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        chunk = bits[k:k + 6]
        out.append(sum(b << (5 - t) for t, b in enumerate(chunk)))
    return "".join(chr(63 + x) for x in out)


def graph6_decode(s: str) -> Graph:
    s = s.strip()
    start = 0
    if s.startswith(_HEADER):
        start = len(_HEADER)
    data = []
    for pos in range(start, len(s)):
        x = ord(s[pos]) - 63
        if not 0 <= x <= 63:
            raise ParseError("invalid graph6 character %r" % s[pos], offset=pos)
        data.append(x)
    if not data:
        raise ParseError("empty graph6 string", offset=start)
    if data[0] < 63:
        n, k = data[0], 1
    elif len(data) >= 2 and data[1] < 63:
        if len(data) < 4:
            raise ParseError("truncated vertex count", offset=start + len(data))
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        k = 4
    else:
        if len(data) < 8:
            raise ParseError("truncated vertex count", offset=start + len(data))
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        k = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[k:]
    if len(body) != need:
        raise ParseError(
            "expected %d data bytes for %d vertices, got %d" % (need, n, len(body)),
            offset=start + k + min(len(body), need),
        )
    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if (body[bit // 6] >> (5 - bit % 6)) & 1:
                edges.append((i, j))
            bit += 1
    if nbits % 6 and body and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("nonzero padding bits", offset=start + len(data) - 1)
    return Graph(n, edges)
