"""Extended regular expressions over the binary alphabet {0, 1}.

Nine node kinds: the empty language, the empty word, the two symbols, union,
concatenation, Kleene star, intersection, complement, and bounded repetition
("counting", written ``r{k}``).  ``r{0}`` denotes the language containing only
the empty word.

Nodes are immutable and hash-consed: building the same shape twice through the
factory functions yields the same object, which keeps equality checks and the
match engine's memo tables cheap even for very large expressions.  Derived
attributes (nullability, the two size measures, operator-presence flags) are
computed once at construction, bottom-up, so no operation here recurses over
deep trees.

Concrete text syntax (``parse`` / ``to_text``)::

    atoms       0  1  e (empty word)  @ (empty language)
    postfix     r*      Kleene star
                r{k}    k-fold repetition, k in decimal
    prefix      !r      complement
    infix       r&s     intersection
                rs      concatenation (juxtaposition)
                r|s     union

Precedence, tightest first: unary (postfix/prefix) > concatenation > ``&`` >
``|``.  ``!`` applies to the unary expression that follows it, so ``!01*``
reads as ``(!0)(1*)``.  Whitespace between tokens is ignored.

The size measure counts atoms and operators: atoms cost 1, union /
intersection / star / complement add 1, concatenation adds nothing, and
``r{k}`` costs ``|r| + ceil(log2 k)`` when counting is allowed and ``k * |r|``
(repeated concatenation) otherwise.  Parentheses are free.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

Word = str  # finite 0/1 string; "" is the empty word

__all__ = [
    "Regex", "Empty", "Epsilon", "Sym", "Union", "Concat", "Star", "Inter",
    "Compl", "Count", "EMPTY", "EPSILON", "SYM0", "SYM1", "ANY_BIT",
    "sym", "union", "concat", "star", "inter", "compl", "count",
    "union_all", "concat_all", "wildcard_run", "literal_word", "bin_index",
    "parse", "to_text", "size_of", "desugar_count", "postorder",
    "OperatorProfile", "PLAIN", "WITH_INTER", "WITH_COMPL", "WITH_COUNT",
    "STAR_FREE", "STAR_FREE_COUNTING",
    "RegexSyntaxError", "ZeroRepetitionWarning", "ceil_log2", "Word",
]


class RegexSyntaxError(ValueError):
    """Parse failure, carrying the offending position in the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"position {position}: {message}")
        self.message = message
        self.position = position


class ZeroRepetitionWarning(UserWarning):
    """``r{0}`` sized with counting disallowed: the repetitions contribute
    size 0 even though the subtree still denotes the empty word."""


def ceil_log2(k: int) -> int:
    """Ceiling of log2(k), with ceil_log2(1) = 0 and ceil_log2(0) = 1
    (one binary digit is needed to write "0")."""
    if k < 0:
        raise ValueError("ceil_log2 is undefined for negative values")
    if k == 0:
        return 1
    return (k - 1).bit_length()


_uid_counter = itertools.count()
_intern: dict[tuple, "Regex"] = {}


class Regex:
    """Base class for all nodes.  Construct through the factory functions
    (``sym``, ``union``, ...); direct instantiation bypasses hash-consing."""

    __slots__ = ("uid", "nullable", "size_counted", "size_expanded",
                 "has_star", "has_inter", "has_compl", "has_count",
                 "has_zero_count", "_hash")

    children: tuple = ()

    def _payload(self):
        return None

    def _init_base(self, nullable: bool, size_counted: int, size_expanded: int,
                   flags: tuple[bool, bool, bool, bool, bool], h: int) -> None:
        self.uid = next(_uid_counter)
        self.nullable = nullable
        self.size_counted = size_counted
        self.size_expanded = size_expanded
        (self.has_star, self.has_inter, self.has_compl,
         self.has_count, self.has_zero_count) = flags
        self._hash = h

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        # Identity is the common case thanks to interning; the structural walk
        # only runs when comparing nodes built in different cache epochs.
        if self is other:
            return True
        if not isinstance(other, Regex):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b) or a._hash != b._hash:
                return False
            if a._payload() != b._payload():
                return False
            stack.extend(zip(a.children, b.children))
        return True

    def __repr__(self) -> str:
        text = to_text(self)
        if len(text) > 60:
            text = text[:57] + "..."
        return f"Regex({text!r})"


def _child_flags(*nodes: Regex) -> tuple[bool, bool, bool, bool, bool]:
    return (any(n.has_star for n in nodes), any(n.has_inter for n in nodes),
            any(n.has_compl for n in nodes), any(n.has_count for n in nodes),
            any(n.has_zero_count for n in nodes))


class Empty(Regex):
    __slots__ = ()

    def __init__(self):
        self._init_base(False, 1, 1, (False,) * 5, hash("@"))


class Epsilon(Regex):
    __slots__ = ()

    def __init__(self):
        self._init_base(True, 1, 1, (False,) * 5, hash("e"))


class Sym(Regex):
    __slots__ = ("bit",)

    def __init__(self, bit: int):
        self.bit = bit
        self._init_base(False, 1, 1, (False,) * 5, hash(("s", bit)))

    def _payload(self):
        return self.bit


class Union(Regex):
    __slots__ = ("left", "right", "children")

    def __init__(self, left: Regex, right: Regex):
        self.left, self.right = left, right
        self.children = (left, right)
        self._init_base(left.nullable or right.nullable,
                        left.size_counted + right.size_counted + 1,
                        left.size_expanded + right.size_expanded + 1,
                        _child_flags(left, right),
                        hash(("|", left._hash, right._hash)))


class Concat(Regex):
    __slots__ = ("left", "right", "children")

    def __init__(self, left: Regex, right: Regex):
        self.left, self.right = left, right
        self.children = (left, right)
        self._init_base(left.nullable and right.nullable,
                        left.size_counted + right.size_counted,
                        left.size_expanded + right.size_expanded,
                        _child_flags(left, right),
                        hash((".", left._hash, right._hash)))


class Star(Regex):
    __slots__ = ("inner", "children")

    def __init__(self, inner: Regex):
        self.inner = inner
        self.children = (inner,)
        f = _child_flags(inner)
        self._init_base(True, inner.size_counted + 1, inner.size_expanded + 1,
                        (True, f[1], f[2], f[3], f[4]),
                        hash(("*", inner._hash)))


class Inter(Regex):
    __slots__ = ("left", "right", "children")

    def __init__(self, left: Regex, right: Regex):
        self.left, self.right = left, right
        self.children = (left, right)
        f = _child_flags(left, right)
        self._init_base(left.nullable and right.nullable,
                        left.size_counted + right.size_counted + 1,
                        left.size_expanded + right.size_expanded + 1,
                        (f[0], True, f[2], f[3], f[4]),
                        hash(("&", left._hash, right._hash)))


class Compl(Regex):
    __slots__ = ("inner", "children")

    def __init__(self, inner: Regex):
        self.inner = inner
        self.children = (inner,)
        f = _child_flags(inner)
        self._init_base(not inner.nullable,
                        inner.size_counted + 1, inner.size_expanded + 1,
                        (f[0], f[1], True, f[3], f[4]),
                        hash(("!", inner._hash)))


class Count(Regex):
    __slots__ = ("inner", "reps", "children")

    def __init__(self, inner: Regex, reps: int):
        self.inner = inner
        self.reps = reps
        self.children = (inner,)
        f = _child_flags(inner)
        self._init_base(reps == 0 or inner.nullable,
                        inner.size_counted + ceil_log2(reps),
                        reps * inner.size_expanded,
                        (f[0], f[1], f[2], True, f[4] or reps == 0),
                        hash(("#", inner._hash, reps)))

    def _payload(self):
        return self.reps


def _interned(key: tuple, build) -> Regex:
    node = _intern.get(key)
    if node is None:
        node = build()
        _intern[key] = node
    return node


EMPTY = Empty()
EPSILON = Epsilon()
SYM0 = Sym(0)
SYM1 = Sym(1)


def _register_constants() -> None:
    _intern[("@",)] = EMPTY
    _intern[("e",)] = EPSILON
    _intern[("s", 0)] = SYM0
    _intern[("s", 1)] = SYM1


_register_constants()


def _reset_intern() -> None:
    """Drop the interning table (see engine.clear_caches).  Existing nodes
    stay valid; structurally equal nodes built afterwards are new objects,
    which __eq__ still compares correctly."""
    _intern.clear()
    _register_constants()


def sym(bit: int) -> Regex:
    if bit == 0:
        return SYM0
    if bit == 1:
        return SYM1
    raise ValueError(f"symbol must be 0 or 1, got {bit!r}")


def union(left: Regex, right: Regex) -> Regex:
    return _interned(("|", left.uid, right.uid), lambda: Union(left, right))


def concat(left: Regex, right: Regex) -> Regex:
    return _interned((".", left.uid, right.uid), lambda: Concat(left, right))


def star(inner: Regex) -> Regex:
    return _interned(("*", inner.uid), lambda: Star(inner))


def inter(left: Regex, right: Regex) -> Regex:
    return _interned(("&", left.uid, right.uid), lambda: Inter(left, right))


def compl(inner: Regex) -> Regex:
    return _interned(("!", inner.uid), lambda: Compl(inner))


def count(inner: Regex, reps: int) -> Regex:
    if reps < 0:
        raise ValueError(f"repetition count must be nonnegative, got {reps}")
    return _interned(("#", inner.uid, reps), lambda: Count(inner, reps))


ANY_BIT = union(SYM0, SYM1)  # the two-word language {0, 1}, printed "0|1"


def union_all(parts) -> Regex:
    """Right-nested union of the given expressions; the empty union is the
    empty language."""
    items = [p for p in parts if p is not None]
    if not items:
        return EMPTY
    result = items[-1]
    for p in reversed(items[:-1]):
        result = union(p, result)
    return result


def concat_all(parts) -> Regex:
    """Right-nested concatenation, skipping ``None`` entries; the empty
    concatenation is the empty word."""
    items = [p for p in parts if p is not None]
    if not items:
        return EPSILON
    result = items[-1]
    for p in reversed(items[:-1]):
        result = concat(p, result)
    return result


def wildcard_run(length: int, counted: bool) -> Regex | None:
    """(0|1) repeated ``length`` times: a Count node when ``counted``, an
    explicit concatenation chain otherwise.  Returns None for length 0 so
    callers can skip the factor entirely."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return None
    if length == 1:
        return ANY_BIT
    if counted:
        return count(ANY_BIT, length)
    result = ANY_BIT
    for _ in range(length - 1):
        result = concat(ANY_BIT, result)
    return result


def literal_word(w: Word) -> Regex:
    """The one-word language {w}; the empty word yields the epsilon node."""
    if not w:
        return EPSILON
    result: Regex | None = None
    for ch in reversed(w):
        if ch == "0":
            node: Regex = SYM0
        elif ch == "1":
            node = SYM1
        else:
            raise ValueError(f"word may contain only 0/1, got {ch!r}")
        result = node if result is None else concat(node, result)
    assert result is not None
    return result


def bin_index(i: int, n: int) -> Word:
    """Binary block for index i in [1..n]: (i - 1) written big-endian in
    exactly log2(n) bits.  Requires n to be a power of two."""
    if n < 1 or n & (n - 1):
        raise ValueError(f"n must be a power of two, got {n}")
    if not 1 <= i <= n:
        raise ValueError(f"index {i} outside [1..{n}]")
    width = n.bit_length() - 1
    if width == 0:
        return ""
    return format(i - 1, f"0{width}b")


def size_of(r: Regex, counting_allowed: bool = False) -> int:
    """Size of the expression under the atoms-and-operators measure.

    With counting disallowed every ``r{k}`` is priced as k-fold repeated
    concatenation; ``r{0}`` then contributes 0 and a ZeroRepetitionWarning is
    emitted because the subtree still denotes the empty word.
    """
    if counting_allowed:
        return r.size_counted
    if r.has_zero_count:
        warnings.warn(
            "expression contains r{0}: sized as 0 repetitions but denotes "
            "the empty word", ZeroRepetitionWarning, stacklevel=2)
    return r.size_expanded


def postorder(root: Regex) -> list[Regex]:
    """All distinct nodes reachable from root, children before parents."""
    out: list[Regex] = []
    visited: set[int] = set()
    stack: list[tuple[Regex, bool]] = [(root, False)]
    while stack:
        node, ready = stack.pop()
        if ready:
            out.append(node)
            continue
        if node.uid in visited:
            continue
        visited.add(node.uid)
        stack.append((node, True))
        for child in node.children:
            stack.append((child, False))
    return out


def desugar_count(r: Regex) -> Regex:
    """Replace every ``r{k}`` by explicit k-fold concatenation (``r{0}``
    becomes the empty word).  Denotes the same language."""
    rebuilt: dict[int, Regex] = {}
    for node in postorder(r):
        kind = type(node)
        if not node.children:
            rebuilt[node.uid] = node
            continue
        kids = [rebuilt[c.uid] for c in node.children]
        if kind is Count:
            inner = kids[0]
            if node.reps == 0:
                new = EPSILON
            else:
                new = inner
                for _ in range(node.reps - 1):
                    new = concat(inner, new)
        elif all(k is c for k, c in zip(kids, node.children)):
            new = node
        elif kind is Union:
            new = union(kids[0], kids[1])
        elif kind is Concat:
            new = concat(kids[0], kids[1])
        elif kind is Star:
            new = star(kids[0])
        elif kind is Inter:
            new = inter(kids[0], kids[1])
        else:
            new = compl(kids[0])
        rebuilt[node.uid] = new
    return rebuilt[r.uid]


# ---------------------------------------------------------------------------
# Operator profiles

@dataclass(frozen=True)
class OperatorProfile:
    """Which extended operators a regex may use.  Count nodes are admitted by
    every profile (they are shorthand for repeated concatenation);
    ``allow_count`` only selects which size rule applies."""

    allow_star: bool
    allow_inter: bool
    allow_compl: bool
    allow_count: bool

    def admits(self, r: Regex) -> bool:
        return ((self.allow_star or not r.has_star)
                and (self.allow_inter or not r.has_inter)
                and (self.allow_compl or not r.has_compl))


PLAIN = OperatorProfile(True, False, False, False)
WITH_INTER = OperatorProfile(True, True, False, False)
WITH_COMPL = OperatorProfile(True, False, True, False)
WITH_COUNT = OperatorProfile(True, False, False, True)
STAR_FREE = OperatorProfile(False, False, False, False)
STAR_FREE_COUNTING = OperatorProfile(False, False, False, True)


# ---------------------------------------------------------------------------
# Parsing

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise RegexSyntaxError(message, self.pos)

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def parse_union(self) -> Regex:
        parts = [self.parse_inter()]
        while self.peek() == "|":
            self.advance()
            parts.append(self.parse_inter())
        return union_all(parts)

    def parse_inter(self) -> Regex:
        parts = [self.parse_concat()]
        while self.peek() == "&":
            self.advance()
            parts.append(self.parse_concat())
        result = parts[-1]
        for p in reversed(parts[:-1]):
            result = inter(p, result)
        return result

    def parse_concat(self) -> Regex:
        parts = []
        while self.peek() not in (None, ")", "|", "&"):
            parts.append(self.parse_unary())
        if not parts:
            self.error("expected an expression")
        return concat_all(parts)

    def parse_unary(self) -> Regex:
        if self.peek() == "!":
            self.advance()
            if self.peek() is None:
                self.error("expected an expression after '!'")
            return compl(self.parse_unary())
        node = self.parse_primary()
        while True:
            ch = self.peek()
            if ch == "*":
                self.advance()
                node = star(node)
            elif ch == "{":
                self.advance()
                node = count(node, self.parse_reps())
            else:
                return node

    def parse_reps(self) -> int:
        digits = []
        while self.peek() is not None and self.text[self.pos].isdigit():
            digits.append(self.advance())
        if not digits:
            self.error("expected a decimal repetition count")
        if self.peek() != "}":
            self.error("expected '}'")
        self.advance()
        return int("".join(digits))

    def parse_primary(self) -> Regex:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of input")
        self.advance()
        if ch == "0":
            return SYM0
        if ch == "1":
            return SYM1
        if ch == "e":
            return EPSILON
        if ch == "@":
            return EMPTY
        if ch == "(":
            node = self.parse_union()
            if self.peek() != ")":
                self.error("expected ')'")
            self.advance()
            return node
        self.pos -= 1
        self.error(f"unexpected {ch!r}")


def parse(text: str) -> Regex:
    """Parse the concrete syntax described in the module docstring."""
    p = _Parser(text)
    node = p.parse_union()
    if p.peek() is not None:
        p.error(f"unexpected {p.text[p.pos]!r}")
    return node


# ---------------------------------------------------------------------------
# Printing

_LEVEL = {Union: 0, Inter: 1, Concat: 2, Compl: 3, Star: 4, Count: 4,
          Empty: 5, Epsilon: 5, Sym: 5}


def to_text(r: Regex, parenthesize: bool = False) -> str:
    """Render to the concrete syntax.  The default emits minimal parentheses
    and re-parses to a structurally equal tree; ``parenthesize=True`` wraps
    every composite subexpression (for golden files)."""
    out: list[str] = []
    # Stack holds literal strings or (node, min_level, wrapped) frames.
    stack: list = [(r, 0, False)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        node, min_level, wrapped = item
        kind = type(node)
        if kind is Empty:
            out.append("@")
            continue
        if kind is Epsilon:
            out.append("e")
            continue
        if kind is Sym:
            out.append("1" if node.bit else "0")
            continue
        if not wrapped and (parenthesize or _LEVEL[kind] < min_level):
            stack.append(")")
            stack.append((node, 0, True))
            stack.append("(")
            continue
        if kind is Union:
            stack.append((node.right, 0, False))
            stack.append("|")
            stack.append((node.left, 1, False))
        elif kind is Inter:
            stack.append((node.right, 1, False))
            stack.append("&")
            stack.append((node.left, 2, False))
        elif kind is Concat:
            stack.append((node.right, 2, False))
            stack.append((node.left, 3, False))
        elif kind is Compl:
            stack.append((node.inner, 3, False))
            stack.append("!")
        elif kind is Star:
            stack.append("*")
            stack.append((node.inner, 4, False))
        else:  # Count
            stack.append("{%d}" % node.reps)
            stack.append((node.inner, 4, False))
    return "".join(out)
