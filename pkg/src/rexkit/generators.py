"""Seeded random instance generators used by the property and acceptance
suites.

All generators draw from a caller-supplied ``random.Random``, so a fixed seed
reproduces the exact instance stream.  Regexes are generated under a size
budget measured with the counting rule; DNF terms pick a uniform width and a
uniform variable subset; formulas grow under a node-count budget.
"""

from __future__ import annotations

import random

from ._seeds import random_bits
from .reductions import And, BooleanFormula, Dnf, FormulaNode, Not, Or, Var
from .syntax import (
    EMPTY, EPSILON, Regex, SYM0, SYM1, ceil_log2, compl, concat, count, inter,
    size_of, star, union,
)

__all__ = [
    "random_word", "random_regex", "random_plain_regex", "random_dnf",
    "random_formula",
]

_LEAVES = (SYM0, SYM1, SYM0, SYM1, EPSILON, EMPTY)  # symbols twice as likely

_ALL_OPS = ("union", "concat", "star", "inter", "compl", "count")
_PLAIN_OPS = ("union", "concat", "star")


def random_word(rng: random.Random, length: int) -> str:
    return random_bits(rng, length)


def _gen_regex(rng: random.Random, budget: int, ops: tuple[str, ...]) -> Regex:
    if budget <= 1 or rng.random() < 0.25:
        return rng.choice(_LEAVES)
    pool = []
    for op in ops:
        if op in ("union", "inter") and budget >= 3:
            pool.append(op)
        elif op == "concat" and budget >= 2:
            pool.append(op)
        elif op in ("star", "compl") and budget >= 2:
            pool.append(op)
        elif op == "count" and budget >= 2:
            pool.append(op)
    if not pool:
        return rng.choice(_LEAVES)
    op = rng.choice(pool)
    if op in ("union", "inter"):
        left_budget = rng.randint(1, budget - 2)
        left = _gen_regex(rng, left_budget, ops)
        right = _gen_regex(rng, budget - 1 - left_budget, ops)
        return union(left, right) if op == "union" else inter(left, right)
    if op == "concat":
        left_budget = rng.randint(1, budget - 1)
        return concat(_gen_regex(rng, left_budget, ops),
                      _gen_regex(rng, budget - left_budget, ops))
    if op == "star":
        return star(_gen_regex(rng, budget - 1, ops))
    if op == "compl":
        return compl(_gen_regex(rng, budget - 1, ops))
    affordable = [r for r in range(6) if ceil_log2(r) <= budget - 1]
    reps = rng.choice(affordable)
    return count(_gen_regex(rng, budget - ceil_log2(reps), ops), reps)


def random_regex(rng: random.Random, max_size: int = 12) -> Regex:
    """Random extended regex (all operators) of counted size <= max_size."""
    r = _gen_regex(rng, max_size, _ALL_OPS)
    assert size_of(r, counting_allowed=True) <= max_size
    return r


def random_plain_regex(rng: random.Random, max_size: int = 12) -> Regex:
    """Random plain regex (union, concatenation, star) of size <= max_size."""
    r = _gen_regex(rng, max_size, _PLAIN_OPS)
    assert size_of(r, counting_allowed=True) <= max_size
    return r


def random_dnf(rng: random.Random, max_n: int = 10, max_m: int = 6) -> Dnf:
    """Uniform shape: n in [1..max_n], m in [1..max_m] terms, each of uniform
    width in [1..n] over a uniform variable subset with uniform polarities."""
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    terms = []
    for _ in range(m):
        width = rng.randint(1, n)
        variables = sorted(rng.sample(range(1, n + 1), width))
        terms.append(tuple((v, rng.random() < 0.5) for v in variables))
    return Dnf(n, tuple(terms))


def _gen_formula(rng: random.Random, budget: int, n: int) -> FormulaNode:
    if budget <= 1:
        return Var(rng.randint(1, n))
    choices = ["not"]
    if budget >= 3:
        choices += ["and", "or", "and", "or"]
    op = rng.choice(choices)
    if op == "not":
        return Not(_gen_formula(rng, budget - 1, n))
    left_budget = rng.randint(1, budget - 2)
    left = _gen_formula(rng, left_budget, n)
    right = _gen_formula(rng, budget - 1 - left_budget, n)
    return And(left, right) if op == "and" else Or(left, right)


def random_formula(rng: random.Random, max_n: int = 8,
                   max_size: int = 25) -> BooleanFormula:
    """Random formula with n in [2..max_n] variables and node count at most
    max_size."""
    n = rng.randint(2, max_n)
    budget = rng.randint(1, max_size)
    return BooleanFormula(n, _gen_formula(rng, budget, n))
