"""Compiling Boolean functions into regular expressions.

A DNF over n variables becomes a plain regex of size O(mn): each term turns
into a length-n template whose position i is ``1`` for a positive literal,
``0`` for a negative literal, and ``(0|1)`` for an unconstrained variable, and
the templates are joined by union.  A general Boolean formula becomes an
extended regex: after conversion to negation normal form, the literal for
variable i is ``(0|1)^(i-1) b (0|1)^(n-i)`` and connectives map to
union/intersection (or, for the complement-only target, to union and De
Morgan's dual of intersection).  With the counting operator the wildcard runs
shrink from O(n) symbols to O(log n).

Both compilers agree with direct Boolean evaluation on every assignment; the
test suite checks this exhaustively against the truth tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    ANY_BIT, Regex, SYM0, SYM1, Word, compl, concat_all, inter, union,
    union_all, wildcard_run,
)

__all__ = [
    "Dnf", "Var", "Not", "And", "Or", "BooleanFormula", "FormulaFormatError",
    "eval_dnf", "dnf_to_regex", "eval_formula", "formula_size", "nnf",
    "formula_to_regex", "pad_input", "parse_dnf", "serialize_dnf",
    "parse_formula", "serialize_formula",
]


class FormulaFormatError(ValueError):
    """Malformed DNF or formula text, naming the offending token/line."""


# ---------------------------------------------------------------------------
# DNF

@dataclass(frozen=True)
class Dnf:
    """Disjunction of terms; each term is a conjunction of distinct literals
    given as (1-based variable index, polarity) pairs.  Size is the total
    literal count.  A width-0 term is the always-true conjunction."""

    n: int
    terms: tuple[tuple[tuple[int, bool], ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("variable count must be at least 1")
        for term in self.terms:
            seen = set()
            for index, _ in term:
                if not 1 <= index <= self.n:
                    raise ValueError(f"variable x{index} outside [1..{self.n}]")
                if index in seen:
                    raise ValueError(f"variable x{index} repeated in a term")
                seen.add(index)

    @property
    def size(self) -> int:
        return sum(len(term) for term in self.terms)


def eval_dnf(dnf: Dnf, x: Word) -> bool:
    """True iff some term is satisfied by the assignment x (x[i-1] is the
    value of variable i)."""
    if len(x) != dnf.n:
        raise ValueError(f"assignment has length {len(x)}, expected {dnf.n}")
    for term in dnf.terms:
        if all((x[index - 1] == "1") == positive for index, positive in term):
            return True
    return False


def dnf_to_regex(dnf: Dnf) -> Regex:
    """Plain regex matching exactly the satisfying length-n assignments.

    Size is at most 3mn + m - 1 for m >= 1 terms; the empty disjunction
    compiles to the empty language.
    """
    templates = []
    for term in dnf.terms:
        constrained = {index: positive for index, positive in term}
        factors = []
        for i in range(1, dnf.n + 1):
            if i in constrained:
                factors.append(SYM1 if constrained[i] else SYM0)
            else:
                factors.append(ANY_BIT)
        templates.append(concat_all(factors))
    return union_all(templates)


# ---------------------------------------------------------------------------
# Boolean formulas

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Not:
    inner: "FormulaNode"


@dataclass(frozen=True)
class And:
    left: "FormulaNode"
    right: "FormulaNode"


@dataclass(frozen=True)
class Or:
    left: "FormulaNode"
    right: "FormulaNode"


FormulaNode = Var | Not | And | Or


@dataclass(frozen=True)
class BooleanFormula:
    """Formula AST plus its variable count; size is the node count."""

    n: int
    root: FormulaNode

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("variable count must be at least 1")
        for index in _var_indices(self.root):
            if not 1 <= index <= self.n:
                raise ValueError(f"variable x{index} outside [1..{self.n}]")

    @property
    def size(self) -> int:
        return formula_size(self.root)


def _var_indices(node: FormulaNode):
    stack = [node]
    while stack:
        item = stack.pop()
        if isinstance(item, Var):
            yield item.index
        elif isinstance(item, Not):
            stack.append(item.inner)
        else:
            stack.append(item.left)
            stack.append(item.right)


def formula_size(node: FormulaNode) -> int:
    """Node count of the AST."""
    total = 0
    stack = [node]
    while stack:
        item = stack.pop()
        total += 1
        if isinstance(item, Not):
            stack.append(item.inner)
        elif isinstance(item, (And, Or)):
            stack.append(item.left)
            stack.append(item.right)
    return total


def eval_formula(formula: BooleanFormula, x: Word) -> bool:
    """Standard Boolean evaluation of the formula on assignment x."""
    if len(x) != formula.n:
        raise ValueError(f"assignment has length {len(x)}, expected {formula.n}")

    def value(node: FormulaNode) -> bool:
        if isinstance(node, Var):
            return x[node.index - 1] == "1"
        if isinstance(node, Not):
            return not value(node.inner)
        if isinstance(node, And):
            return value(node.left) and value(node.right)
        return value(node.left) or value(node.right)

    return value(formula.root)


def nnf(formula: BooleanFormula) -> BooleanFormula:
    """Negation normal form: negations pushed down to variables.  Truth-table
    equal to the input and at most twice its size."""

    def push(node: FormulaNode, negated: bool) -> FormulaNode:
        if isinstance(node, Var):
            return Not(node) if negated else node
        if isinstance(node, Not):
            return push(node.inner, not negated)
        if isinstance(node, And):
            cls = Or if negated else And
            return cls(push(node.left, negated), push(node.right, negated))
        cls = And if negated else Or
        return cls(push(node.left, negated), push(node.right, negated))

    return BooleanFormula(formula.n, push(formula.root, False))


def formula_to_regex(formula: BooleanFormula, target: str = "inter",
                     counting_allowed: bool = True) -> Regex:
    """Extended regex agreeing with the formula on every length-n word.

    ``target="inter"`` uses intersection for conjunction; ``target="neg"``
    instead expresses it as the complement of a union of complements, so the
    output contains no intersection node.  With ``counting_allowed`` the
    wildcard runs are emitted as counted repetitions (size O(|formula| log n)),
    otherwise as explicit concatenations (size O(|formula| n)).

    Membership is only meaningful for words of length n; the language at other
    lengths is unspecified.
    """
    if target not in ("inter", "neg"):
        raise ValueError(f"target must be 'inter' or 'neg', got {target!r}")
    n = formula.n

    def literal(index: int, node: Regex) -> Regex:
        return concat_all([
            wildcard_run(index - 1, counting_allowed),
            node,
            wildcard_run(n - index, counting_allowed),
        ])

    def build(node: FormulaNode) -> Regex:
        if isinstance(node, Var):
            return literal(node.index, SYM1)
        if isinstance(node, Not):
            if not isinstance(node.inner, Var):
                raise AssertionError("negation below NNF literal level")
            return literal(node.inner.index, SYM0)
        if isinstance(node, Or):
            return union(build(node.left), build(node.right))
        left, right = build(node.left), build(node.right)
        if target == "inter":
            return inter(left, right)
        return compl(union(compl(left), compl(right)))

    return build(nnf(formula).root)


def pad_input(x: Word, target_len: int) -> Word:
    """x followed by zeros up to target_len.  A regex extended with the
    matching zero run accepts the padded word iff the original accepts x."""
    if target_len < len(x):
        raise ValueError(
            f"target length {target_len} shorter than the word ({len(x)})")
    return x + "0" * (target_len - len(x))


# ---------------------------------------------------------------------------
# Text formats.  DNF: header `dnf <n> <m>`, one term per line as signed
# indices (`+3 -1` means x3 and not-x1).  Formulas: s-expressions like
# `(and (var 1) (not (var 2)))`.

def serialize_dnf(dnf: Dnf) -> str:
    lines = [f"dnf {dnf.n} {len(dnf.terms)}"]
    for term in dnf.terms:
        lines.append(" ".join(f"{'+' if positive else '-'}{index}"
                              for index, positive in term))
    return "\n".join(lines) + "\n"


def parse_dnf(text: str) -> Dnf:
    entries = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
               if ln.strip()]
    if not entries:
        raise FormulaFormatError("line 1: empty DNF description")
    lineno, header = entries[0]
    fields = header.split()
    if len(fields) != 3 or fields[0] != "dnf":
        raise FormulaFormatError(
            f"line {lineno}: expected 'dnf <n> <m>', got {header!r}")
    try:
        n, m = int(fields[1]), int(fields[2])
    except ValueError:
        raise FormulaFormatError(f"line {lineno}: bad header numbers") from None
    if len(entries) - 1 != m:
        raise FormulaFormatError(
            f"line {lineno}: header promises {m} terms, found {len(entries) - 1}")
    terms = []
    for lineno, line in entries[1:]:
        literals = []
        for token in line.split():
            if len(token) < 2 or token[0] not in "+-" or not token[1:].isdigit():
                raise FormulaFormatError(
                    f"line {lineno}: bad literal {token!r}")
            literals.append((int(token[1:]), token[0] == "+"))
        terms.append(tuple(literals))
    try:
        return Dnf(n, tuple(terms))
    except ValueError as exc:
        raise FormulaFormatError(f"line 1: {exc}") from None


def serialize_formula(formula: BooleanFormula) -> str:
    def render(node: FormulaNode) -> str:
        if isinstance(node, Var):
            return f"(var {node.index})"
        if isinstance(node, Not):
            return f"(not {render(node.inner)})"
        op = "and" if isinstance(node, And) else "or"
        return f"({op} {render(node.left)} {render(node.right)})"

    return render(formula.root) + "\n"


def parse_formula(text: str, n: int | None = None) -> BooleanFormula:
    """Parse an s-expression formula.  When ``n`` is omitted it defaults to
    the highest variable index used."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def fail(message: str):
        raise FormulaFormatError(f"token {pos + 1}: {message}")

    def next_token() -> str:
        nonlocal pos
        if pos >= len(tokens):
            fail("unexpected end of input")
        token = tokens[pos]
        pos += 1
        return token

    def parse_node() -> FormulaNode:
        token = next_token()
        if token != "(":
            fail(f"expected '(', got {token!r}")
        head = next_token()
        if head == "var":
            value = next_token()
            if not value.isdigit():
                fail(f"expected a variable index, got {value!r}")
            node: FormulaNode = Var(int(value))
        elif head == "not":
            node = Not(parse_node())
        elif head in ("and", "or"):
            left = parse_node()
            right = parse_node()
            node = And(left, right) if head == "and" else Or(left, right)
        else:
            fail(f"unknown operator {head!r}")
        closing = next_token()
        if closing != ")":
            fail(f"expected ')', got {closing!r}")
        return node

    root = parse_node()
    if pos != len(tokens):
        fail(f"trailing input {tokens[pos]!r}")
    if n is None:
        n = max(_var_indices(root), default=1)
    return BooleanFormula(n, root)
