"""A local pseudorandom generator: a fixed k-ary predicate applied to the
seed's restriction along each hyperedge of a random hypergraph.

Each of the m output bits reads only k seed positions (the generator's
locality).  Everything here is combinatorial plumbing: hyperedge sampling is
exactly uniform over ordered distinct k-tuples (by rejection), and the
generator itself is a deterministic map from (predicate, hypergraph, seed) to
an m-bit string.  No security property is claimed or tested for the bundled
default predicate; it is a stand-in so the pipeline can run end to end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .syntax import Word

__all__ = [
    "Hyperedge", "Hypergraph", "Predicate", "HypergraphFormatError",
    "sample_hypergraph", "restrict", "eval_predicate", "prg_output",
    "default_predicate", "serialize_hypergraph", "parse_hypergraph",
    "serialize_predicate", "parse_predicate",
]

Hyperedge = tuple[int, ...]  # ordered, pairwise distinct, 1-based indices


class HypergraphFormatError(ValueError):
    """Malformed hypergraph or predicate text."""


def _check_edge(edge: Hyperedge, n: int, k: int) -> None:
    if len(edge) != k:
        raise ValueError(f"edge {edge} has arity {len(edge)}, expected {k}")
    if len(set(edge)) != k:
        raise ValueError(f"edge {edge} repeats a vertex")
    for v in edge:
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} outside [1..{n}]")


@dataclass(frozen=True)
class Hypergraph:
    """m ordered hyperedges of arity k over the vertex set [1..n]."""

    n: int
    k: int
    edges: tuple[Hyperedge, ...]

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        for edge in self.edges:
            _check_edge(edge, self.n, self.k)

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Predicate:
    """k-ary Boolean predicate as a truth table of 2^k bits; entry j is the
    value on the big-endian k-bit pattern of j."""

    k: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("predicate arity must be at least 1")
        if len(self.table) != 2 ** self.k:
            raise ValueError(
                f"table has {len(self.table)} entries, expected {2 ** self.k}")
        if any(bit not in (0, 1) for bit in self.table):
            raise ValueError("table entries must be bits")


def sample_hypergraph(n: int, m: int, k: int,
                      rng: random.Random) -> Hypergraph:
    """m hyperedges drawn independently and uniformly from all
    n(n-1)...(n-k+1) ordered distinct k-tuples, by rejection sampling."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    edges = []
    for _ in range(m):
        while True:
            edge = tuple(rng.randrange(1, n + 1) for _ in range(k))
            if len(set(edge)) == k:
                break
        edges.append(edge)
    return Hypergraph(n, k, tuple(edges))


def restrict(x: Word, edge: Hyperedge) -> Word:
    """The seed bits along the edge, in edge order."""
    for v in edge:
        if not 1 <= v <= len(x):
            raise ValueError(f"vertex {v} outside the seed of length {len(x)}")
    return "".join(x[v - 1] for v in edge)


def eval_predicate(predicate: Predicate, u: Word) -> int:
    """Table lookup at the big-endian index of u."""
    if len(u) != predicate.k:
        raise ValueError(
            f"input has length {len(u)}, expected arity {predicate.k}")
    return predicate.table[int(u, 2)] if u else predicate.table[0]


def prg_output(predicate: Predicate, graph: Hypergraph, x: Word) -> Word:
    """The m-bit generator output: bit i is the predicate applied to the seed
    restricted to edge i."""
    if predicate.k != graph.k:
        raise ValueError(
            f"predicate arity {predicate.k} != hypergraph arity {graph.k}")
    if len(x) != graph.n:
        raise ValueError(f"seed has length {len(x)}, expected {graph.n}")
    return "".join(str(eval_predicate(predicate, restrict(x, edge)))
                   for edge in graph.edges)


def default_predicate(k: int) -> Predicate:
    """The stand-in predicate used by default: for k >= 3 the first bit XORed
    with the AND of the next two (balanced, and not a pure parity); XOR for
    k = 2; the identity for k = 1.  Chosen for the pipeline only, with no
    pseudorandomness claim attached."""
    if k < 1:
        raise ValueError("predicate arity must be at least 1")

    def value(bits: str) -> int:
        if k == 1:
            return int(bits[0])
        if k == 2:
            return int(bits[0]) ^ int(bits[1])
        return int(bits[0]) ^ (int(bits[1]) & int(bits[2]))

    table = tuple(value(format(j, f"0{k}b")) for j in range(2 ** k))
    return Predicate(k, table)


# ---------------------------------------------------------------------------
# Text formats.  Hypergraph: header `hg <n> <m> <k>`, one edge per line as k
# 1-based indices.  Predicate: `pred <k> <2^k-bit string>`.

def serialize_hypergraph(graph: Hypergraph) -> str:
    lines = [f"hg {graph.n} {graph.m} {graph.k}"]
    for edge in graph.edges:
        lines.append(" ".join(str(v) for v in edge))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    entries = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
               if ln.strip()]
    if not entries:
        raise HypergraphFormatError("line 1: empty hypergraph description")
    lineno, header = entries[0]
    fields = header.split()
    if len(fields) != 4 or fields[0] != "hg":
        raise HypergraphFormatError(
            f"line {lineno}: expected 'hg <n> <m> <k>', got {header!r}")
    try:
        n, m, k = int(fields[1]), int(fields[2]), int(fields[3])
    except ValueError:
        raise HypergraphFormatError(f"line {lineno}: bad header numbers") from None
    if len(entries) - 1 != m:
        raise HypergraphFormatError(
            f"line {lineno}: header promises {m} edges, found {len(entries) - 1}")
    edges = []
    for lineno, line in entries[1:]:
        try:
            edge = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise HypergraphFormatError(
                f"line {lineno}: bad vertex in {line!r}") from None
        edges.append(edge)
    try:
        return Hypergraph(n, k, tuple(edges))
    except ValueError as exc:
        raise HypergraphFormatError(f"line 1: {exc}") from None


def serialize_predicate(predicate: Predicate) -> str:
    return (f"pred {predicate.k} "
            + "".join(str(b) for b in predicate.table) + "\n")


def parse_predicate(text: str) -> Predicate:
    fields = text.split()
    if len(fields) != 3 or fields[0] != "pred":
        raise HypergraphFormatError(
            f"line 1: expected 'pred <k> <table>', got {text.strip()!r}")
    try:
        k = int(fields[1])
    except ValueError:
        raise HypergraphFormatError("line 1: bad arity") from None
    if fields[2].strip("01"):
        raise HypergraphFormatError("line 1: table must be a 0/1 string")
    try:
        return Predicate(k, tuple(int(b) for b in fields[2]))
    except ValueError as exc:
        raise HypergraphFormatError(f"line 1: {exc}") from None
