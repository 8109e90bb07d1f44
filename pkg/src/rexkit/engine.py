"""Word membership for extended regexes, plus an independent set-semantics
oracle over length-truncated languages.

``matches`` decides membership by taking one symbol derivative per input bit
and testing nullability at the end.  Derivative results flow through smart
constructors (empty-language absorption, empty-word units, idempotent and
canonically ordered union/intersection, involutive complement) and a global
memo table, which keeps the reachable derivative state space small enough to
match the large generated target expressions within the test-suite budgets.

``enumerate_language`` implements the denotational semantics directly on
truncated word sets and exists to cross-check the matcher; the two paths share
no matching logic.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .syntax import (
    EMPTY, EPSILON, Compl, Concat, Count, Empty, Epsilon, Inter, Regex, Star,
    Sym, Union, Word, _reset_intern, compl, concat, count, inter, postorder,
    union,
)

__all__ = [
    "LanguageSample", "EnumerationLimitError", "DEFAULT_ENUM_LIMIT",
    "nullable", "derivative", "matches", "enumerate_language",
    "equivalent_upto", "clear_caches",
]

# Derivative chains stay shallow on the expressions this package builds, but
# deeply nested user input can still recurse; give it room.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))

DEFAULT_ENUM_LIMIT = 12

_DERIV: dict[tuple[int, int], Regex] = {}
_ENUM: dict[tuple[int, int], frozenset[str]] = {}
_UNIVERSE: dict[int, frozenset[str]] = {}


class EnumerationLimitError(ValueError):
    """Requested truncation length exceeds the configured enumeration bound."""


@dataclass(frozen=True)
class LanguageSample:
    """All members of a regex's language up to a length cutoff."""

    max_len: int
    words: frozenset[str]

    def __contains__(self, w: str) -> bool:
        return w in self.words

    def __len__(self) -> int:
        return len(self.words)


def clear_caches() -> None:
    """Drop the derivative/enumeration memo tables and the node interning
    table.  Safe at any point: live nodes keep working and structural
    equality still holds across the reset."""
    _DERIV.clear()
    _ENUM.clear()
    _UNIVERSE.clear()
    _reset_intern()


def nullable(r: Regex) -> bool:
    """True iff the empty word belongs to L(r)."""
    return r.nullable


# ---------------------------------------------------------------------------
# Smart constructors (used only on derivative results)

def _is_sigma_star(r: Regex) -> bool:
    # the complement of the empty language, which absorbs unions and is the
    # intersection unit
    return type(r) is Compl and type(r.inner) is Empty


def _s_union(a: Regex, b: Regex) -> Regex:
    ops: list[Regex] = []
    seen: set[int] = set()
    stack = [b, a]
    while stack:
        x = stack.pop()
        if type(x) is Union:
            stack.append(x.right)
            stack.append(x.left)
            continue
        if x is EMPTY:
            continue
        if _is_sigma_star(x):
            return x
        if x.uid not in seen:
            seen.add(x.uid)
            ops.append(x)
    if not ops:
        return EMPTY
    ops.sort(key=lambda n: n.uid)
    result = ops[-1]
    for x in reversed(ops[:-1]):
        result = union(x, result)
    return result


def _s_inter(a: Regex, b: Regex) -> Regex:
    ops: list[Regex] = []
    seen: set[int] = set()
    stack = [b, a]
    while stack:
        x = stack.pop()
        if type(x) is Inter:
            stack.append(x.right)
            stack.append(x.left)
            continue
        if x is EMPTY:
            return EMPTY
        if _is_sigma_star(x):
            continue
        if x.uid not in seen:
            seen.add(x.uid)
            ops.append(x)
    if not ops:
        return compl(EMPTY)
    ops.sort(key=lambda n: n.uid)
    result = ops[-1]
    for x in reversed(ops[:-1]):
        result = inter(x, result)
    return result


def _s_concat(a: Regex, b: Regex) -> Regex:
    if a is EMPTY or b is EMPTY:
        return EMPTY
    if a is EPSILON:
        return b
    if b is EPSILON:
        return a
    parts = []
    while type(a) is Concat:
        parts.append(a.left)
        a = a.right
    parts.append(a)
    result = b
    for p in reversed(parts):
        result = concat(p, result)
    return result


def _s_compl(r: Regex) -> Regex:
    if type(r) is Compl:
        return r.inner
    return compl(r)


def _s_count(r: Regex, reps: int) -> Regex:
    if reps == 0 or r is EPSILON:
        return EPSILON
    if reps == 1:
        return r
    if r is EMPTY:
        return EMPTY
    return count(r, reps)


# ---------------------------------------------------------------------------
# Derivatives

def derivative(r: Regex, bit: int) -> Regex:
    """The left derivative: L(derivative(r, b)) = { w : b w in L(r) }."""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    key = (r.uid, bit)
    result = _DERIV.get(key)
    if result is None:
        result = _derive(r, bit)
        _DERIV[key] = result
    return result


def _derive(r: Regex, bit: int) -> Regex:
    kind = type(r)
    if kind is Sym:
        return EPSILON if r.bit == bit else EMPTY
    if kind is Union:
        return _s_union(derivative(r.left, bit), derivative(r.right, bit))
    if kind is Concat:
        head = _s_concat(derivative(r.left, bit), r.right)
        if r.left.nullable:
            return _s_union(head, derivative(r.right, bit))
        return head
    if kind is Star:
        return _s_concat(derivative(r.inner, bit), r)
    if kind is Inter:
        return _s_inter(derivative(r.left, bit), derivative(r.right, bit))
    if kind is Compl:
        return _s_compl(derivative(r.inner, bit))
    if kind is Count:
        if r.reps == 0:
            return EMPTY
        # Sound even for nullable bodies: when the empty word is in L(r) the
        # power r{reps-1} already contains every shorter power.
        return _s_concat(derivative(r.inner, bit), _s_count(r.inner, r.reps - 1))
    return EMPTY  # Empty, Epsilon


def _check_word(w: Word) -> None:
    if w.strip("01"):
        bad = w.strip("01")[0]
        raise ValueError(f"word may contain only 0/1, got {bad!r}")


def matches(r: Regex, w: Word) -> bool:
    """True iff w belongs to L(r)."""
    _check_word(w)
    current = r
    for ch in w:
        current = derivative(current, 1 if ch == "1" else 0)
        if current is EMPTY:
            return False
    return current.nullable


# ---------------------------------------------------------------------------
# Brute-force truncated-language oracle

def _universe(max_len: int) -> frozenset[str]:
    cached = _UNIVERSE.get(max_len)
    if cached is None:
        words = [""]
        layer = [""]
        for _ in range(max_len):
            layer = [w + b for w in layer for b in "01"]
            words.extend(layer)
        cached = frozenset(words)
        _UNIVERSE[max_len] = cached
    return cached


def _concat_sets(a: frozenset[str], b: frozenset[str],
                 max_len: int) -> frozenset[str]:
    if not a or not b:
        return frozenset()
    out = set()
    for x in a:
        room = max_len - len(x)
        for y in b:
            if len(y) <= room:
                out.add(x + y)
    return frozenset(out)


def enumerate_language(r: Regex, max_len: int,
                       limit: int = DEFAULT_ENUM_LIMIT) -> LanguageSample:
    """Exactly the members of L(r) with length at most ``max_len``, computed
    bottom-up from the denotational semantics (no derivatives involved).

    Refuses ``max_len`` beyond ``limit`` (default 12) since the working sets
    grow as 2^(max_len+1).
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    if max_len > limit:
        raise EnumerationLimitError(
            f"max_len {max_len} exceeds the enumeration limit {limit}")
    for node in postorder(r):
        key = (node.uid, max_len)
        if key in _ENUM:
            continue
        kind = type(node)
        if kind is Empty:
            value: frozenset[str] = frozenset()
        elif kind is Epsilon:
            value = frozenset([""])
        elif kind is Sym:
            bit = "1" if node.bit else "0"
            value = frozenset([bit]) if max_len >= 1 else frozenset()
        elif kind is Union:
            value = (_ENUM[(node.left.uid, max_len)]
                     | _ENUM[(node.right.uid, max_len)])
        elif kind is Inter:
            value = (_ENUM[(node.left.uid, max_len)]
                     & _ENUM[(node.right.uid, max_len)])
        elif kind is Compl:
            value = _universe(max_len) - _ENUM[(node.inner.uid, max_len)]
        elif kind is Concat:
            value = _concat_sets(_ENUM[(node.left.uid, max_len)],
                                 _ENUM[(node.right.uid, max_len)], max_len)
        elif kind is Star:
            body = _ENUM[(node.inner.uid, max_len)]
            value = frozenset([""])
            while True:
                grown = value | _concat_sets(value, body, max_len)
                if grown == value:
                    break
                value = grown
        else:  # Count: iterate the concatenation, stopping at a fixed point
            body = _ENUM[(node.inner.uid, max_len)]
            value = frozenset([""])
            for _ in range(node.reps):
                grown = _concat_sets(value, body, max_len)
                if grown == value:
                    break
                value = grown
                if not value:
                    break
        _ENUM[key] = value
    return LanguageSample(max_len, _ENUM[(r.uid, max_len)])


def equivalent_upto(r1: Regex, r2: Regex, max_len: int,
                    limit: int = DEFAULT_ENUM_LIMIT) -> tuple[bool, Word | None]:
    """Compare truncated languages.  Returns (True, None) when they coincide
    on every word of length <= max_len, else (False, w) with w a shortest
    (then lexicographically least) word on which they differ."""
    s1 = enumerate_language(r1, max_len, limit).words
    s2 = enumerate_language(r2, max_len, limit).words
    if s1 == s2:
        return True, None
    witness = min(s1 ^ s2, key=lambda w: (len(w), w))
    return False, witness
