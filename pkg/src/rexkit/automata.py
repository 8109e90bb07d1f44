"""Finite automata over {0, 1} and conversions between automata and regexes.

The NFA type has no epsilon transitions; ``regex_to_nfa`` builds the position
(Glushkov) automaton, which is epsilon-free by construction and linear in the
regex size.  ``determinize`` is the subset construction with a hard cap on the
number of reachable subsets: several conversion directions are known to blow
up exponentially (or worse), and the cap turns that into a loud failure
instead of a silent stall.  ``dfa_to_regex`` eliminates states in a fixed
order so its output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    EMPTY, EPSILON, Compl, Concat, Count, Empty, Epsilon, Inter, Regex, Star,
    Sym, Union, Word, ceil_log2, concat, desugar_count, star, sym, union,
)

__all__ = [
    "Nfa", "Dfa", "DescriptionMetrics", "SubsetLimitError",
    "UnsupportedOperatorError", "AutomatonFormatError", "DEFAULT_SUBSET_CAP",
    "regex_to_nfa", "determinize", "complement_dfa", "product_dfa",
    "compile_extended", "minimize_dfa", "dfa_to_regex", "description_metrics",
    "serialize_automaton", "parse_automaton",
]

DEFAULT_SUBSET_CAP = 2 ** 20


class SubsetLimitError(RuntimeError):
    """Subset construction exceeded the configured state cap."""


class UnsupportedOperatorError(ValueError):
    """Regex uses intersection/complement; use compile_extended instead."""


class AutomatonFormatError(ValueError):
    """Malformed automaton text, carrying the offending line."""


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton: a set of initial states, per-(state, bit)
    successor sets (missing entries mean the empty set), and final states."""

    state_count: int
    initials: frozenset[int]
    transitions: dict[tuple[int, int], frozenset[int]]
    finals: frozenset[int]

    def __post_init__(self):
        states = range(self.state_count)
        if not self.initials <= set(states) or not self.finals <= set(states):
            raise ValueError("initial/final states out of range")
        for (q, b), targets in self.transitions.items():
            if q not in states or b not in (0, 1) or not targets <= set(states):
                raise ValueError(f"bad transition ({q}, {b}) -> {sorted(targets)}")

    def accepts(self, w: Word) -> bool:
        current = self.initials
        for ch in w:
            bit = 1 if ch == "1" else 0
            nxt: set[int] = set()
            for q in current:
                nxt |= self.transitions.get((q, bit), frozenset())
            current = frozenset(nxt)
            if not current:
                return False
        return bool(current & self.finals)


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton with a total transition map."""

    state_count: int
    initial: int
    transitions: dict[tuple[int, int], int]
    finals: frozenset[int]

    def __post_init__(self):
        states = range(self.state_count)
        if self.initial not in states or not self.finals <= set(states):
            raise ValueError("initial/final states out of range")
        for q in states:
            for b in (0, 1):
                if (q, b) not in self.transitions:
                    raise ValueError(f"missing transition ({q}, {b})")
                if self.transitions[(q, b)] not in states:
                    raise ValueError(f"transition ({q}, {b}) out of range")

    def accepts(self, w: Word) -> bool:
        q = self.initial
        for ch in w:
            q = self.transitions[(q, 1 if ch == "1" else 0)]
        return q in self.finals


@dataclass(frozen=True)
class DescriptionMetrics:
    """State count plus the description-length estimate in bits: a DFA with q
    states encodes in O(q log q) bits, a dense NFA in O(q^2)."""

    states: int
    description_bits: int


# ---------------------------------------------------------------------------
# Regex -> NFA (position automaton)

def regex_to_nfa(r: Regex) -> Nfa:
    """Epsilon-free position automaton for a plain regex (union,
    concatenation, star; counting is desugared first).  One state per symbol
    occurrence plus a fresh start, so the state count is linear in the
    expanded size."""
    if r.has_inter or r.has_compl:
        raise UnsupportedOperatorError(
            "intersection/complement are not supported here; "
            "use compile_extended")
    r = desugar_count(r)

    follow: dict[int, set[int]] = {}
    sym_of: dict[int, int] = {}
    next_pos = 1
    # Iterative post-order over the expression *tree*: shared subterms are
    # visited once per occurrence because positions are per occurrence.
    work: list[tuple[Regex, bool]] = [(r, False)]
    results: list[tuple[bool, frozenset[int], frozenset[int]]] = []
    while work:
        node, ready = work.pop()
        kind = type(node)
        if not ready:
            if kind is Sym:
                p = next_pos
                next_pos += 1
                sym_of[p] = node.bit
                results.append((False, frozenset([p]), frozenset([p])))
            elif kind is Epsilon:
                results.append((True, frozenset(), frozenset()))
            elif kind is Empty:
                results.append((False, frozenset(), frozenset()))
            else:
                work.append((node, True))
                for child in reversed(node.children):
                    work.append((child, False))
            continue
        if kind is Union:
            n2, f2, l2 = results.pop()
            n1, f1, l1 = results.pop()
            results.append((n1 or n2, f1 | f2, l1 | l2))
        elif kind is Concat:
            n2, f2, l2 = results.pop()
            n1, f1, l1 = results.pop()
            for p in l1:
                follow.setdefault(p, set()).update(f2)
            results.append((n1 and n2,
                            f1 | f2 if n1 else f1,
                            l2 | l1 if n2 else l2))
        elif kind is Star:
            n1, f1, l1 = results.pop()
            for p in l1:
                follow.setdefault(p, set()).update(f1)
            results.append((True, f1, l1))
        else:  # pragma: no cover - precluded by the profile check + desugar
            raise UnsupportedOperatorError(f"unexpected node {kind.__name__}")

    is_nullable, first, last = results.pop()
    transitions: dict[tuple[int, int], set[int]] = {}
    for p in first:
        transitions.setdefault((0, sym_of[p]), set()).add(p)
    for p, successors in follow.items():
        for q in successors:
            transitions.setdefault((p, sym_of[q]), set()).add(q)
    finals = set(last)
    if is_nullable:
        finals.add(0)
    return Nfa(next_pos, frozenset([0]),
               {k: frozenset(v) for k, v in transitions.items()},
               frozenset(finals))


# ---------------------------------------------------------------------------
# Subset construction and DFA algebra

def determinize(a: Nfa, cap: int = DEFAULT_SUBSET_CAP) -> Dfa:
    """Subset construction restricted to reachable subsets, numbered in BFS
    discovery order (symbol 0 before 1) for deterministic output."""
    start = frozenset(a.initials)
    index: dict[frozenset[int], int] = {start: 0}
    order: list[frozenset[int]] = [start]
    transitions: dict[tuple[int, int], int] = {}
    i = 0
    while i < len(order):
        subset = order[i]
        for bit in (0, 1):
            nxt: set[int] = set()
            for q in subset:
                nxt |= a.transitions.get((q, bit), frozenset())
            target = frozenset(nxt)
            j = index.get(target)
            if j is None:
                if len(order) >= cap:
                    raise SubsetLimitError(
                        f"subset construction exceeded the cap of {cap} states")
                j = len(order)
                index[target] = j
                order.append(target)
            transitions[(i, bit)] = j
        i += 1
    finals = frozenset(i for i, subset in enumerate(order)
                       if subset & a.finals)
    return Dfa(len(order), 0, transitions, finals)


def complement_dfa(d: Dfa) -> Dfa:
    """Same states and transitions, final set flipped."""
    return Dfa(d.state_count, d.initial, dict(d.transitions),
               frozenset(range(d.state_count)) - d.finals)


def product_dfa(d1: Dfa, d2: Dfa, op: str) -> Dfa:
    """Reachable product automaton; ``op`` is "and" (intersection) or "or"
    (union)."""
    if op not in ("and", "or"):
        raise ValueError(f"op must be 'and' or 'or', got {op!r}")
    combine = (lambda x, y: x and y) if op == "and" else (lambda x, y: x or y)
    start = (d1.initial, d2.initial)
    index: dict[tuple[int, int], int] = {start: 0}
    order = [start]
    transitions: dict[tuple[int, int], int] = {}
    i = 0
    while i < len(order):
        q1, q2 = order[i]
        for bit in (0, 1):
            target = (d1.transitions[(q1, bit)], d2.transitions[(q2, bit)])
            j = index.get(target)
            if j is None:
                j = len(order)
                index[target] = j
                order.append(target)
            transitions[(i, bit)] = j
        i += 1
    finals = frozenset(i for i, (q1, q2) in enumerate(order)
                       if combine(q1 in d1.finals, q2 in d2.finals))
    return Dfa(len(order), 0, transitions, finals)


def minimize_dfa(d: Dfa) -> Dfa:
    """Unique minimal DFA: unreachable states dropped, equivalent states
    merged by partition refinement, then states renumbered canonically in BFS
    order so equal languages give identical objects."""
    # Reachable restriction.
    reach_order = [d.initial]
    seen = {d.initial}
    i = 0
    while i < len(reach_order):
        q = reach_order[i]
        for bit in (0, 1):
            t = d.transitions[(q, bit)]
            if t not in seen:
                seen.add(t)
                reach_order.append(t)
        i += 1
    remap = {q: i for i, q in enumerate(reach_order)}
    count = len(reach_order)
    trans = {(remap[q], b): remap[d.transitions[(q, b)]]
             for q in reach_order for b in (0, 1)}
    finals = {remap[q] for q in reach_order if q in d.finals}

    # Moore refinement.
    cls = [1 if q in finals else 0 for q in range(count)]
    if not finals or len(finals) == count:
        cls = [0] * count
    while True:
        signatures = {}
        new_cls = [0] * count
        for q in range(count):
            sig = (cls[q], cls[trans[(q, 0)]], cls[trans[(q, 1)]])
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_cls[q] = signatures[sig]
        if len(signatures) == len(set(cls)):
            break
        cls = new_cls

    # Quotient, then canonical BFS numbering from the initial class.
    bfs = [cls[0]]
    number = {cls[0]: 0}
    i = 0
    quotient: dict[tuple[int, int], int] = {}
    reps = {}
    for q in range(count):
        reps.setdefault(cls[q], q)
    while i < len(bfs):
        c = bfs[i]
        rep = reps[c]
        for bit in (0, 1):
            t = cls[trans[(rep, bit)]]
            if t not in number:
                number[t] = len(bfs)
                bfs.append(t)
            quotient[(i, bit)] = number[t]
        i += 1
    new_finals = frozenset(number[cls[q]] for q in finals)
    return Dfa(len(bfs), 0, quotient, new_finals)


# ---------------------------------------------------------------------------
# Extended regex -> DFA

def _dfa_to_nfa(d: Dfa) -> Nfa:
    return Nfa(d.state_count, frozenset([d.initial]),
               {k: frozenset([v]) for k, v in d.transitions.items()},
               d.finals)


def _nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    offset = a.state_count
    trans: dict[tuple[int, int], set[int]] = {
        k: set(v) for k, v in a.transitions.items()}
    for (q, bit), targets in b.transitions.items():
        trans[(q + offset, bit)] = {t + offset for t in targets}
    b_initials = {q + offset for q in b.initials}
    for key, targets in list(trans.items()):
        if key[0] < offset and targets & a.finals:
            trans[key] = targets | b_initials
    initials = set(a.initials)
    if a.initials & a.finals:  # first factor accepts the empty word
        initials |= b_initials
    finals = {q + offset for q in b.finals}
    if b.initials & b.finals:  # second factor accepts the empty word
        finals |= set(a.finals)
    return Nfa(a.state_count + b.state_count, frozenset(initials),
               {k: frozenset(v) for k, v in trans.items()}, frozenset(finals))


def _nfa_star(a: Nfa) -> Nfa:
    # Fresh start state with no in-edges except loop-backs, so accepting at it
    # is sound; it duplicates the out-edges of the old initial states.
    s = a.state_count
    trans: dict[tuple[int, int], set[int]] = {
        k: set(v) for k, v in a.transitions.items()}
    for (q, bit), targets in a.transitions.items():
        if q in a.initials:
            trans.setdefault((s, bit), set()).update(targets)
    for key, targets in list(trans.items()):
        if targets & a.finals:
            trans[key] = targets | {s}
    return Nfa(a.state_count + 1, frozenset([s]),
               {k: frozenset(v) for k, v in trans.items()},
               frozenset(a.finals | {s}))


def compile_extended(r: Regex, cap: int = DEFAULT_SUBSET_CAP) -> Dfa:
    """DFA for a regex that may use intersection and complement: plain
    subtrees go through the position automaton and determinization,
    intersection through the product, complement by flipping finals of a
    determinized automaton.  Intermediate results are minimized to curb the
    inevitable blow-ups; the subset cap still applies."""
    if not (r.has_inter or r.has_compl):
        return minimize_dfa(determinize(regex_to_nfa(r), cap))
    kind = type(r)
    if kind is Inter:
        return minimize_dfa(product_dfa(compile_extended(r.left, cap),
                                        compile_extended(r.right, cap), "and"))
    if kind is Compl:
        return minimize_dfa(complement_dfa(compile_extended(r.inner, cap)))
    if kind is Union:
        return minimize_dfa(product_dfa(compile_extended(r.left, cap),
                                        compile_extended(r.right, cap), "or"))
    if kind is Concat:
        left = _dfa_to_nfa(compile_extended(r.left, cap))
        right = _dfa_to_nfa(compile_extended(r.right, cap))
        return minimize_dfa(determinize(_nfa_concat(left, right), cap))
    if kind is Star:
        inner = _dfa_to_nfa(compile_extended(r.inner, cap))
        return minimize_dfa(determinize(_nfa_star(inner), cap))
    if kind is Count:
        if r.reps == 0:
            return compile_extended(EPSILON, cap)
        inner = _dfa_to_nfa(compile_extended(r.inner, cap))
        acc = inner
        for _ in range(r.reps - 1):
            acc = _nfa_concat(acc, inner)
        return minimize_dfa(determinize(acc, cap))
    raise AssertionError("leaf nodes cannot carry extended-operator flags")


# ---------------------------------------------------------------------------
# DFA -> regex (state elimination)

def _elim_union(a: Regex | None, b: Regex) -> Regex:
    return b if a is None else union(a, b)


def _elim_concat(a: Regex, b: Regex) -> Regex:
    if a is EPSILON:
        return b
    if b is EPSILON:
        return a
    return concat(a, b)


def dfa_to_regex(d: Dfa) -> Regex:
    """Plain regex for the DFA's language, by eliminating states in a fixed
    order: non-initial non-final states first (ascending), then the rest
    (ascending).  Deterministic output for golden tests."""
    START, ACCEPT = -1, -2
    edges: dict[tuple[int, int], Regex] = {}

    def add(i: int, j: int, r: Regex) -> None:
        edges[(i, j)] = _elim_union(edges.get((i, j)), r)

    for q in range(d.state_count):
        for bit in (0, 1):
            add(q, d.transitions[(q, bit)], sym(bit))
    add(START, d.initial, EPSILON)
    for q in sorted(d.finals):
        add(q, ACCEPT, EPSILON)

    order = sorted(range(d.state_count),
                   key=lambda s: (s == d.initial or s in d.finals, s))
    for v in order:
        loop = edges.pop((v, v), None)
        loop_star = None
        if loop is not None and loop is not EPSILON:
            loop_star = star(loop)
        incoming = sorted(((p, r) for (p, t), r in edges.items() if t == v),
                          key=lambda pr: pr[0])
        outgoing = sorted(((q, r) for (s, q), r in edges.items() if s == v),
                          key=lambda qr: qr[0])
        for p, _ in incoming:
            del edges[(p, v)]
        for q, _ in outgoing:
            del edges[(v, q)]
        for p, r_in in incoming:
            for q, r_out in outgoing:
                path = r_in
                if loop_star is not None:
                    path = _elim_concat(path, loop_star)
                path = _elim_concat(path, r_out)
                add(p, q, path)
    return edges.get((START, ACCEPT), EMPTY)


def description_metrics(a: Nfa | Dfa) -> DescriptionMetrics:
    """Description-length estimate: q * ceil(log2 q) bits for a DFA (at least
    q, so the measure stays monotone), q^2 bits for a dense NFA encoding."""
    q = a.state_count
    if isinstance(a, Dfa):
        return DescriptionMetrics(q, q * max(1, ceil_log2(q)))
    return DescriptionMetrics(q, q * q)


# ---------------------------------------------------------------------------
# Text format:  header `dfa|nfa <state_count>`; `init <s...>`; `final <s...>`;
# transition lines `t <from> <0|1> <to...>`.  States are 0-based decimals.

def serialize_automaton(a: Nfa | Dfa) -> str:
    lines = []
    if isinstance(a, Dfa):
        lines.append(f"dfa {a.state_count}")
        lines.append(f"init {a.initial}")
        lines.append("final" + "".join(f" {q}" for q in sorted(a.finals)))
        for q in range(a.state_count):
            for bit in (0, 1):
                lines.append(f"t {q} {bit} {a.transitions[(q, bit)]}")
    else:
        lines.append(f"nfa {a.state_count}")
        lines.append("init" + "".join(f" {q}" for q in sorted(a.initials)))
        lines.append("final" + "".join(f" {q}" for q in sorted(a.finals)))
        for (q, bit), targets in sorted(a.transitions.items()):
            if targets:
                lines.append(f"t {q} {bit}"
                             + "".join(f" {t}" for t in sorted(targets)))
    return "\n".join(lines) + "\n"


def _parse_ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise AutomatonFormatError(
            f"line {lineno}: expected integers, got {' '.join(parts)!r}") from None


def parse_automaton(text: str) -> Nfa | Dfa:
    lines = [ln for ln in text.splitlines()]
    entries = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not entries:
        raise AutomatonFormatError("line 1: empty automaton description")
    lineno, header = entries[0]
    fields = header.split()
    if len(fields) != 2 or fields[0] not in ("dfa", "nfa"):
        raise AutomatonFormatError(
            f"line {lineno}: expected 'dfa <n>' or 'nfa <n>', got {header!r}")
    kind = fields[0]
    state_count = _parse_ints(fields[1:], lineno)[0]
    initials: list[int] = []
    finals: list[int] = []
    transitions: dict[tuple[int, int], set[int]] = {}
    saw_init = saw_final = False
    for lineno, line in entries[1:]:
        fields = line.split()
        tag = fields[0]
        if tag == "init":
            initials = _parse_ints(fields[1:], lineno)
            saw_init = True
        elif tag == "final":
            finals = _parse_ints(fields[1:], lineno)
            saw_final = True
        elif tag == "t":
            values = _parse_ints(fields[1:], lineno)
            if len(values) < 3:
                raise AutomatonFormatError(
                    f"line {lineno}: transition needs from, bit, targets")
            q, bit, targets = values[0], values[1], values[2:]
            if bit not in (0, 1):
                raise AutomatonFormatError(f"line {lineno}: bit must be 0 or 1")
            if kind == "dfa" and len(targets) != 1:
                raise AutomatonFormatError(
                    f"line {lineno}: dfa transition must have one target")
            if kind == "dfa" and (q, bit) in transitions:
                raise AutomatonFormatError(
                    f"line {lineno}: duplicate transition for ({q}, {bit})")
            transitions.setdefault((q, bit), set()).update(targets)
        else:
            raise AutomatonFormatError(f"line {lineno}: unknown tag {tag!r}")
    if not saw_init or not saw_final:
        raise AutomatonFormatError("line 1: missing init or final line")
    try:
        if kind == "dfa":
            if len(initials) != 1:
                raise AutomatonFormatError(
                    "line 2: dfa needs exactly one initial state")
            return Dfa(state_count, initials[0],
                       {k: next(iter(v)) for k, v in transitions.items()},
                       frozenset(finals))
        return Nfa(state_count, frozenset(initials),
                   {k: frozenset(v) for k, v in transitions.items()},
                   frozenset(finals))
    except ValueError as exc:
        raise AutomatonFormatError(f"line 1: {exc}") from None
