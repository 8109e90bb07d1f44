"""The learning-hardness gadget: encode hyperedges as bit strings, label them
with a hidden-seed predicate, and build a single regex that realizes exactly
that labeling.

A hyperedge over [1..n] (n a power of two) is encoded compactly as the
concatenation of the k index blocks, each log2(n) bits.  A uniformly random
length-N word is a *valid* extended encoding when its first k blocks decode to
pairwise distinct indices, which happens with probability
n(n-1)...(n-k+1) / n^k.

For a hidden seed x the target regex is the union of two parts:

* the predicate part accepts a word whose blocks decode to (i_1 .. i_k) iff
  the predicate accepts (x_{i_1} .. x_{i_k}); it is a union, over accepted
  k-bit patterns, of concatenations of per-block index matchers, and
* the duplicate catcher accepts exactly the words in which two of the first k
  blocks carry the same index, so every invalid encoding is labeled 1.

Three structural variants produce the same language on length-N words:
``starred`` pads each branch with ``(0|1)*``; ``star_free`` replaces the pads
by explicit fixed-length wildcard runs (no star anywhere); ``counting`` writes
those runs with the counting operator, shrinking them to O(log N) symbols.

``target_size`` recomputes the exact symbol count of the construction from a
closed form that never touches the regex, and reports it next to the measured
size, so any drift between formula and construction fails loudly.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from ._seeds import derive_seed, random_bits
from .prg import Hyperedge, Predicate, prg_output, sample_hypergraph
from .syntax import (
    ANY_BIT, EMPTY, Regex, Word, ceil_log2, bin_index, concat_all,
    literal_word, size_of, star, union, union_all, wildcard_run,
)

__all__ = [
    "VARIANTS", "GadgetConfig", "LabeledExample", "Challenge", "SizeAudit",
    "ValidityMarginWarning", "ChallengeExhaustedError", "GadgetFormatError",
    "log2_exact", "encode_onehot", "encode_compressed", "decode_indices",
    "is_valid_extended", "validity_probability", "block_matcher",
    "tuple_branch", "predicate_part", "duplicate_catcher", "target_regex",
    "closed_form_size", "target_size", "seed_bits", "make_challenge",
    "simulate_oracle", "serialize_config", "parse_config",
    "serialize_challenge", "parse_challenge", "serialize_examples",
    "parse_examples",
]

VARIANTS = ("starred", "star_free", "counting")


class ValidityMarginWarning(UserWarning):
    """The invalid-encoding probability exceeds gamma/2, so the random-case
    error floor argument loses its margin at this scale."""


class ChallengeExhaustedError(RuntimeError):
    """The challenge does not hold enough labeled edges for the request."""


class GadgetFormatError(ValueError):
    """Malformed gadget config, challenge, or example text."""


def log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"n must be a power of two, got {n}")
    return n.bit_length() - 1


@dataclass(frozen=True)
class GadgetConfig:
    """Parameters of one gadget instance.

    N is the total example length (at least k * log2 n); gamma is the weak
    learner's advantage, kept as an exact rational because the distinguisher
    thresholds at 1/2 - gamma/2; prng_seed pins every randomized artifact
    derived from the config.
    """

    n: int
    k: int
    N: int
    gamma: Fraction
    variant: str
    predicate: Predicate
    prng_seed: int

    def __post_init__(self):
        width = log2_exact(self.n)
        if self.n < 2:
            raise ValueError("seed length n must be at least 2")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}")
        if self.predicate.k != self.k:
            raise ValueError(
                f"predicate arity {self.predicate.k} != locality {self.k}")
        if self.N < self.k * width:
            raise ValueError(
                f"N={self.N} shorter than the encoding ({self.k * width} bits)")
        if not Fraction(0) < self.gamma < Fraction(1, 2):
            raise ValueError("gamma must lie strictly between 0 and 1/2")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        invalid = 1 - validity_probability(self.n, self.k)
        if invalid > self.gamma / 2:
            warnings.warn(
                f"invalid-encoding probability {float(invalid):.4f} exceeds "
                f"gamma/2 = {float(self.gamma / 2):.4f} at n={self.n}, "
                f"k={self.k}; the random-case error floor is not guaranteed",
                ValidityMarginWarning, stacklevel=2)

    @property
    def block_len(self) -> int:
        return log2_exact(self.n)

    @property
    def prefix_len(self) -> int:
        return self.k * self.block_len

    @property
    def pad_len(self) -> int:
        return self.N - self.prefix_len

    @property
    def counted(self) -> bool:
        return self.variant == "counting"


@dataclass(frozen=True)
class LabeledExample:
    z: Word
    y: int


@dataclass(frozen=True)
class Challenge:
    """Labeled random hyperedges.  In pseudorandom mode the labels are the
    generator output on the hidden seed; in random mode they are uniform and
    the hidden seed is absent."""

    edges: tuple[Hyperedge, ...]
    y: Word
    mode: str
    hidden_seed: Word | None

    def __post_init__(self):
        if self.mode not in ("random", "pseudorandom"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.y) != len(self.edges):
            raise ValueError("one label per edge required")
        if (self.hidden_seed is None) != (self.mode == "random"):
            raise ValueError("hidden seed present iff mode is pseudorandom")


# ---------------------------------------------------------------------------
# Encodings

def encode_onehot(edge: Hyperedge, n: int) -> Word:
    """k blocks of length n; block j is all ones except a zero at the j-th
    vertex position."""
    blocks = []
    for v in edge:
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} outside [1..{n}]")
        blocks.append("1" * (v - 1) + "0" + "1" * (n - v))
    return "".join(blocks)


def encode_compressed(edge: Hyperedge, n: int) -> Word:
    """Concatenation of the k binary index blocks, each log2(n) bits."""
    return "".join(bin_index(v, n) for v in edge)


def decode_indices(z: Word, n: int, k: int) -> tuple[int, ...]:
    """The k indices encoded by the first k blocks of z (extra bits are
    ignored)."""
    width = log2_exact(n)
    if len(z) < k * width:
        raise ValueError(
            f"word of length {len(z)} shorter than {k} blocks of {width} bits")
    if width == 0:
        return (1,) * k
    return tuple(int(z[j * width:(j + 1) * width], 2) + 1 for j in range(k))


def is_valid_extended(z: Word, n: int, k: int) -> bool:
    """True iff the first k index blocks decode to pairwise distinct
    indices."""
    indices = decode_indices(z, n, k)
    return len(set(indices)) == k


def validity_probability(n: int, k: int) -> Fraction:
    """Probability that k independently uniform indices are pairwise
    distinct: n(n-1)...(n-k+1) / n^k."""
    log2_exact(n)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}")
    numerator = 1
    for j in range(k):
        numerator *= n - j
    return Fraction(numerator, n ** k)


# ---------------------------------------------------------------------------
# Target regex construction

def block_matcher(x: Word, bit: int, n: int) -> Regex:
    """Union, in ascending index order, of the log2(n)-bit blocks of indices i
    with x_i equal to the given bit; the empty union is the empty language."""
    if len(x) != n:
        raise ValueError(f"seed has length {len(x)}, expected {n}")
    want = "1" if bit else "0"
    return union_all(literal_word(bin_index(i, n))
                     for i in range(1, n + 1) if x[i - 1] == want)


def tuple_branch(x: Word, u: Word, cfg: GadgetConfig) -> Regex:
    """One branch of the predicate part: the k block matchers selected by the
    bit pattern u, concatenated; the starred variant appends (0|1)*."""
    if len(u) != cfg.k:
        raise ValueError(f"pattern has length {len(u)}, expected {cfg.k}")
    factors: list[Regex | None] = [
        block_matcher(x, 1 if ch == "1" else 0, cfg.n) for ch in u]
    if cfg.variant == "starred":
        factors.append(star(ANY_BIT))
    return concat_all(factors)


def predicate_part(x: Word, cfg: GadgetConfig) -> Regex:
    """Union over the predicate's accepted patterns (lexicographic order) of
    their branches.  The star-free and counting variants attach the wildcard
    pad to example length N once, here."""
    k = cfg.k
    accepted = [format(j, f"0{k}b") for j in range(2 ** k)
                if cfg.predicate.table[j]]
    body = union_all(tuple_branch(x, u, cfg) for u in accepted)
    if cfg.variant == "starred":
        return body
    return concat_all([body, wildcard_run(cfg.pad_len, cfg.counted)])


def duplicate_catcher(cfg: GadgetConfig) -> Regex:
    """Accepts exactly the words whose index blocks a < b carry the same
    index.  Branches are ordered lexicographically by (a, b, i).  For k = 1 no
    duplicate is possible and the result is the empty language."""
    if cfg.k < 2:
        return EMPTY
    width = cfg.block_len
    counted = cfg.counted
    starred = cfg.variant == "starred"
    branches = []
    for a in range(1, cfg.k):
        for b in range(a + 1, cfg.k + 1):
            for i in range(1, cfg.n + 1):
                block = literal_word(bin_index(i, cfg.n))
                factors: list[Regex | None] = [
                    wildcard_run((a - 1) * width, counted),
                    block,
                    wildcard_run((b - a - 1) * width, counted),
                    block,
                ]
                if starred:
                    factors.append(star(ANY_BIT))
                else:
                    factors.append(wildcard_run((cfg.k - b) * width, counted))
                branches.append(concat_all(factors))
    body = union_all(branches)
    if starred:
        return body
    return concat_all([body, wildcard_run(cfg.pad_len, counted)])


def target_regex(x: Word, cfg: GadgetConfig) -> Regex:
    """The labeling regex: predicate part or duplicate catcher.  On every
    length-N word z it matches iff z is an invalid encoding, or z is valid and
    the predicate accepts the seed restricted to the decoded edge."""
    if len(x) != cfg.n:
        raise ValueError(f"seed has length {len(x)}, expected {cfg.n}")
    return union(predicate_part(x, cfg), duplicate_catcher(cfg))


# ---------------------------------------------------------------------------
# Size accounting

@dataclass(frozen=True)
class SizeAudit:
    """Measured size of the built regex next to the closed-form prediction
    computed without building it."""

    measured: int
    closed_form: int


def _run_size(length: int, counted: bool) -> int:
    if length == 0:
        return 0
    if counted:
        return 3 + ceil_log2(length)
    return 3 * length


def _matcher_size(members: int, width: int) -> int:
    if members == 0:
        return 1  # the empty-language atom
    return members * width + (members - 1)


def closed_form_size(cfg: GadgetConfig, x: Word) -> int:
    """Exact symbol count of target_regex(x, cfg), derived from the
    construction alone.  Kept deliberately independent of the builder code:
    the audit compares this number against the measured size."""
    width = cfg.block_len
    counted = cfg.counted
    starred = cfg.variant == "starred"
    members = {0: x.count("0"), 1: x.count("1")}
    matcher = {bit: _matcher_size(members[bit], width) for bit in (0, 1)}
    star_suffix = 4  # (0|1)* costs 3 + 1

    accepted = [format(j, f"0{cfg.k}b") for j in range(2 ** cfg.k)
                if cfg.predicate.table[j]]
    if accepted:
        part = sum(sum(matcher[1 if ch == "1" else 0] for ch in u)
                   + (star_suffix if starred else 0) for u in accepted)
        part += len(accepted) - 1
    else:
        part = 1
    if not starred:
        part += _run_size(cfg.pad_len, counted)

    if cfg.k < 2:
        catcher = 1
    else:
        per_index = 0
        pairs = 0
        for a in range(1, cfg.k):
            for b in range(a + 1, cfg.k + 1):
                pairs += 1
                per_index += (_run_size((a - 1) * width, counted) + width
                              + _run_size((b - a - 1) * width, counted) + width)
                per_index += (star_suffix if starred
                              else _run_size((cfg.k - b) * width, counted))
        catcher = cfg.n * per_index + (cfg.n * pairs - 1)
        if not starred:
            catcher += _run_size(cfg.pad_len, counted)

    return part + catcher + 1  # final union


def seed_bits(cfg: GadgetConfig) -> Word:
    """The deterministic hidden seed derived from the config's prng seed;
    used when no explicit seed is supplied."""
    rng = random.Random(derive_seed(cfg.prng_seed, "seed-bits"))
    return random_bits(rng, cfg.n)


def target_size(cfg: GadgetConfig, x: Word | None = None) -> SizeAudit:
    """Closed-form and measured size of the target regex (the closed form is
    evaluated first).  The size measure follows the variant: the counting
    variant prices Count nodes logarithmically, the others have none."""
    if x is None:
        x = seed_bits(cfg)
    predicted = closed_form_size(cfg, x)
    measured = size_of(target_regex(x, cfg), counting_allowed=cfg.counted)
    return SizeAudit(measured, predicted)


# ---------------------------------------------------------------------------
# Challenge sampling and the simulated example oracle

def make_challenge(cfg: GadgetConfig, m: int, mode: str,
                   rng: random.Random) -> Challenge:
    """m uniform hyperedges with labels: uniform bits in random mode, the
    generator output on a fresh hidden seed in pseudorandom mode.  Edges are
    drawn before anything mode-specific, so equal rng seeds give identical
    edges in both modes."""
    if mode not in ("random", "pseudorandom"):
        raise ValueError(f"unknown mode {mode!r}")
    graph = sample_hypergraph(cfg.n, m, cfg.k, rng)
    if mode == "pseudorandom":
        hidden = random_bits(rng, cfg.n)
        y = prg_output(cfg.predicate, graph, hidden)
        return Challenge(graph.edges, y, mode, hidden)
    y = random_bits(rng, m)
    return Challenge(graph.edges, y, mode, None)


def simulate_oracle(cfg: GadgetConfig, challenge: Challenge, count: int,
                    rng: random.Random) -> list[LabeledExample]:
    """Simulated example oracle: draw a uniform length-N word per example; an
    invalid draw is returned as-is with label 1, a valid draw has its first
    k blocks replaced by the next challenge edge's encoding and takes that
    edge's label.  The output marginal stays uniform on length-N words
    because a uniform valid encoding is swapped for another one.

    Challenge pairs are consumed only on valid draws, so a challenge with at
    least ``count`` edges can never run out.
    """
    if count > len(challenge.edges):
        raise ChallengeExhaustedError(
            f"challenge holds {len(challenge.edges)} labeled edges but up to "
            f"{count} may be consumed")
    prefix = cfg.prefix_len
    examples = []
    next_edge = 0
    for _ in range(count):
        z = random_bits(rng, cfg.N)
        if is_valid_extended(z, cfg.n, cfg.k):
            edge = challenge.edges[next_edge]
            label = int(challenge.y[next_edge])
            next_edge += 1
            z = encode_compressed(edge, cfg.n) + z[prefix:]
            examples.append(LabeledExample(z, label))
        else:
            examples.append(LabeledExample(z, 1))
    return examples


# ---------------------------------------------------------------------------
# Text formats

def serialize_config(cfg: GadgetConfig) -> str:
    table = "".join(str(b) for b in cfg.predicate.table)
    return (f"gadget n={cfg.n} k={cfg.k} N={cfg.N} gamma={cfg.gamma} "
            f"variant={cfg.variant} pred={table} seed={cfg.prng_seed}\n")


def parse_config(text: str) -> GadgetConfig:
    fields = text.split()
    if not fields or fields[0] != "gadget":
        raise GadgetFormatError(f"line 1: expected 'gadget ...', got {text.strip()!r}")
    values: dict[str, str] = {}
    for token in fields[1:]:
        if "=" not in token:
            raise GadgetFormatError(f"line 1: bad field {token!r}")
        key, _, value = token.partition("=")
        values[key] = value
    try:
        table = tuple(int(b) for b in values["pred"])
        predicate = Predicate(len(table).bit_length() - 1, table)
        return GadgetConfig(
            n=int(values["n"]), k=int(values["k"]), N=int(values["N"]),
            gamma=Fraction(values["gamma"]), variant=values["variant"],
            predicate=predicate, prng_seed=int(values["seed"]))
    except KeyError as exc:
        raise GadgetFormatError(f"line 1: missing field {exc.args[0]!r}") from None
    except ValueError as exc:
        raise GadgetFormatError(f"line 1: {exc}") from None


def serialize_challenge(cfg: GadgetConfig, challenge: Challenge) -> str:
    lines = [f"challenge {cfg.n} {cfg.k} {len(challenge.edges)} "
             f"{challenge.mode}"]
    lines.append(f"y {challenge.y}")
    if challenge.hidden_seed is not None:
        lines.append(f"x {challenge.hidden_seed}")
    for edge in challenge.edges:
        lines.append("e " + " ".join(str(v) for v in edge))
    return "\n".join(lines) + "\n"


def parse_challenge(text: str) -> tuple[int, int, Challenge]:
    """Returns (n, k, challenge)."""
    entries = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
               if ln.strip()]
    if not entries:
        raise GadgetFormatError("line 1: empty challenge description")
    lineno, header = entries[0]
    fields = header.split()
    if len(fields) != 5 or fields[0] != "challenge":
        raise GadgetFormatError(
            f"line {lineno}: expected 'challenge <n> <k> <m> <mode>'")
    try:
        n, k, m = int(fields[1]), int(fields[2]), int(fields[3])
    except ValueError:
        raise GadgetFormatError(f"line {lineno}: bad header numbers") from None
    mode = fields[4]
    y: Word | None = None
    hidden: Word | None = None
    edges = []
    for lineno, line in entries[1:]:
        tag, _, rest = line.partition(" ")
        if tag == "y":
            y = rest.strip()
        elif tag == "x":
            hidden = rest.strip()
        elif tag == "e":
            try:
                edges.append(tuple(int(tok) for tok in rest.split()))
            except ValueError:
                raise GadgetFormatError(
                    f"line {lineno}: bad vertex in {rest!r}") from None
        else:
            raise GadgetFormatError(f"line {lineno}: unknown tag {tag!r}")
    if y is None:
        raise GadgetFormatError("line 1: missing label line")
    if len(edges) != m:
        raise GadgetFormatError(
            f"line 1: header promises {m} edges, found {len(edges)}")
    try:
        return n, k, Challenge(tuple(edges), y, mode, hidden)
    except ValueError as exc:
        raise GadgetFormatError(f"line 1: {exc}") from None


def serialize_examples(N: int, examples: list[LabeledExample]) -> str:
    lines = [f"examples {N} {len(examples)}"]
    for example in examples:
        lines.append(f"{example.z} {example.y}")
    return "\n".join(lines) + "\n"


def parse_examples(text: str) -> tuple[int, list[LabeledExample]]:
    entries = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())
               if ln.strip()]
    if not entries:
        raise GadgetFormatError("line 1: empty example set")
    lineno, header = entries[0]
    fields = header.split()
    if len(fields) != 3 or fields[0] != "examples":
        raise GadgetFormatError(
            f"line {lineno}: expected 'examples <N> <count>'")
    try:
        N, count = int(fields[1]), int(fields[2])
    except ValueError:
        raise GadgetFormatError(f"line {lineno}: bad header numbers") from None
    examples = []
    for lineno, line in entries[1:]:
        fields = line.split()
        if (len(fields) != 2 or fields[0].strip("01")
                or fields[1] not in ("0", "1") or len(fields[0]) != N):
            raise GadgetFormatError(f"line {lineno}: bad example {line!r}")
        examples.append(LabeledExample(fields[0], int(fields[1])))
    if len(examples) != count:
        raise GadgetFormatError(
            f"line 1: header promises {count} examples, found {len(examples)}")
    return N, examples
