"""Experiment plumbing around the gadget: example/membership oracles,
empirical error, baseline learners, the distinguishing procedure, and
empirical advantage estimation.

The distinguisher trains a candidate learner on simulated examples, measures
its empirical error on a held-out set, and outputs 1 (pseudorandom) iff the
error is at most 1/2 - gamma/2.  All error and advantage arithmetic stays in
exact rationals; values become floats only when a report is rendered.

Trials pair the two challenge modes on common random numbers: trial t uses the
same derived seeds for edge sampling and for the oracle's uniform draws in
both arms, which cancels shared sampling noise out of the advantage estimate.
Distinct trials use independently derived seeds.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from ._seeds import derive_seed
from .engine import clear_caches, matches
from .gadget import (
    Challenge, GadgetConfig, LabeledExample, make_challenge, simulate_oracle,
    target_regex,
)
from .syntax import Regex, Word

__all__ = [
    "Hypothesis", "Learner", "LearnerFactory", "MembershipOracle",
    "SplitSample", "TrialRecord", "ExperimentResult", "LEARNER_NAMES",
    "empirical_error", "split_sample", "regex_hypothesis",
    "constant_hypothesis", "oracle_learner", "baseline_learners",
    "learner_factory", "decision_threshold", "distinguisher",
    "advantage_estimate", "run_experiment", "render_report",
]

Hypothesis = Callable[[Word], int]
Learner = Callable[[Sequence[LabeledExample], "MembershipOracle | None",
                    random.Random], Hypothesis]
LearnerFactory = Callable[[Challenge], Learner]

LEARNER_NAMES = ("oracle", "const0", "const1", "majority")


class MembershipOracle:
    """Answers label queries against a fixed concept and counts them."""

    def __init__(self, concept: Hypothesis):
        self._concept = concept
        self.query_count = 0

    def query(self, w: Word) -> int:
        self.query_count += 1
        return self._concept(w)


@dataclass(frozen=True)
class SplitSample:
    """Training examples handed to the learner and the held-out validation
    examples it never sees."""

    train: tuple[LabeledExample, ...]
    validation: tuple[LabeledExample, ...]


def split_sample(examples: Sequence[LabeledExample],
                 p_train: int) -> SplitSample:
    if not 0 <= p_train <= len(examples):
        raise ValueError(f"cannot take {p_train} training examples "
                         f"from {len(examples)}")
    return SplitSample(tuple(examples[:p_train]), tuple(examples[p_train:]))


def empirical_error(h: Hypothesis, samples: Sequence[LabeledExample]) -> Fraction:
    """Exact fraction of samples the hypothesis mislabels."""
    if not samples:
        raise ValueError("empirical error over an empty sample is undefined")
    wrong = sum(1 for example in samples if h(example.z) != example.y)
    return Fraction(wrong, len(samples))


def regex_hypothesis(r: Regex) -> Hypothesis:
    def h(w: Word) -> int:
        return 1 if matches(r, w) else 0

    return h


def constant_hypothesis(bit: int) -> Hypothesis:
    def h(w: Word) -> int:
        return bit

    return h


def oracle_learner(cfg: GadgetConfig, challenge: Challenge) -> Learner:
    """The cheating learner: it is constructed alongside the challenge and
    reads the hidden seed, returning the matcher of the true target regex, so
    its error on pseudorandom-mode samples is exactly 0.

    In random mode no target exists (no hidden seed), and the learner falls
    back to the reject-everything hypothesis: on valid encodings its error
    against the fresh uniform labels is exactly 1/2, and it mislabels every
    invalid encoding, keeping the validation error safely above the
    distinguisher threshold.
    """
    if challenge.hidden_seed is not None:
        hypothesis = regex_hypothesis(target_regex(challenge.hidden_seed, cfg))
    else:
        hypothesis = constant_hypothesis(0)

    def learn(train: Sequence[LabeledExample],
              mq: MembershipOracle | None = None,
              rng: random.Random | None = None) -> Hypothesis:
        return hypothesis

    return learn


def baseline_learners() -> dict[str, Learner]:
    """Label-blind baselines: the two constant predictors and the
    training-majority predictor (ties predict 1)."""

    def constant_zero(train, mq=None, rng=None):
        return constant_hypothesis(0)

    def constant_one(train, mq=None, rng=None):
        return constant_hypothesis(1)

    def majority_label(train, mq=None, rng=None):
        ones = sum(example.y for example in train)
        return constant_hypothesis(1 if 2 * ones >= len(train) else 0)

    return {"constant_zero": constant_zero, "constant_one": constant_one,
            "majority_label": majority_label}


def learner_factory(name: str, cfg: GadgetConfig) -> LearnerFactory:
    """Factory mapping a challenge to a learner, by CLI name."""
    if name == "oracle":
        return lambda challenge: oracle_learner(cfg, challenge)
    key = {"const0": "constant_zero", "const1": "constant_one",
           "majority": "majority_label"}.get(name)
    if key is None:
        raise ValueError(f"unknown learner {name!r}; pick from {LEARNER_NAMES}")
    learner = baseline_learners()[key]
    return lambda challenge: learner


def decision_threshold(cfg: GadgetConfig) -> Fraction:
    return Fraction(1, 2) - cfg.gamma / 2


def _run_trial(cfg: GadgetConfig, learner: Learner, challenge: Challenge,
               p_train: int, v_size: int, sim_rng: random.Random,
               learn_rng: random.Random) -> tuple[int, Fraction]:
    examples = simulate_oracle(cfg, challenge, p_train + v_size, sim_rng)
    split = split_sample(examples, p_train)
    hypothesis = learner(split.train, None, learn_rng)
    error = empirical_error(hypothesis, split.validation)
    verdict = 1 if error <= decision_threshold(cfg) else 0
    return verdict, error


def distinguisher(cfg: GadgetConfig, learner: Learner, challenge: Challenge,
                  p_train: int, v_size: int, rng: random.Random) -> int:
    """Simulate the oracle, train on the first p_train examples, measure the
    empirical error on the next v_size, and return 1 (pseudorandom) iff it is
    at most 1/2 - gamma/2.  The comparison is exact rational arithmetic."""
    if v_size < 1:
        raise ValueError("validation size must be at least 1")
    verdict, _ = _run_trial(cfg, learner, challenge, p_train, v_size, rng, rng)
    return verdict


@dataclass(frozen=True)
class TrialRecord:
    pseudo_error: Fraction
    pseudo_verdict: int
    random_error: Fraction
    random_verdict: int


@dataclass(frozen=True)
class ExperimentResult:
    learner: str
    cfg: GadgetConfig
    trials: int
    p_train: int
    v_size: int
    challenge_size: int
    seed: int
    records: tuple[TrialRecord, ...]

    @property
    def ones_pseudo(self) -> int:
        return sum(record.pseudo_verdict for record in self.records)

    @property
    def ones_random(self) -> int:
        return sum(record.random_verdict for record in self.records)

    @property
    def advantage(self) -> Fraction:
        return Fraction(self.ones_pseudo - self.ones_random, self.trials)

    @property
    def mean_error_pseudo(self) -> Fraction:
        return sum(r.pseudo_error for r in self.records) / self.trials

    @property
    def mean_error_random(self) -> Fraction:
        return sum(r.random_error for r in self.records) / self.trials


def run_experiment(cfg: GadgetConfig, learner_name: str, trials: int,
                   p_train: int, v_size: int, master_seed: int,
                   challenge_size: int | None = None) -> ExperimentResult:
    """Run paired distinguishing trials for the named learner and collect
    verdicts and validation errors for both challenge modes."""
    if trials < 1:
        raise ValueError("at least one trial required")
    if v_size < 1:
        raise ValueError("validation size must be at least 1")
    if challenge_size is None:
        challenge_size = p_train + v_size
    factory = learner_factory(learner_name, cfg)
    records = []
    for t in range(trials):
        outcomes = {}
        for mode in ("pseudorandom", "random"):
            challenge_rng = random.Random(
                derive_seed(master_seed, "trial", t, "challenge"))
            sim_rng = random.Random(
                derive_seed(master_seed, "trial", t, "simulate"))
            learn_rng = random.Random(
                derive_seed(master_seed, "trial", t, "learn"))
            challenge = make_challenge(cfg, challenge_size, mode, challenge_rng)
            learner = factory(challenge)
            outcomes[mode] = _run_trial(cfg, learner, challenge, p_train,
                                        v_size, sim_rng, learn_rng)
        records.append(TrialRecord(outcomes["pseudorandom"][1],
                                   outcomes["pseudorandom"][0],
                                   outcomes["random"][1],
                                   outcomes["random"][0]))
        # Each trial builds a fresh target regex; drop the engine caches so
        # long experiments stay within memory.
        clear_caches()
    return ExperimentResult(learner_name, cfg, trials, p_train, v_size,
                            challenge_size, master_seed, tuple(records))


def advantage_estimate(cfg: GadgetConfig, learner_name: str, trials: int,
                       p_train: int, v_size: int,
                       master_seed: int) -> Fraction:
    """Fraction of pseudorandom trials answered 1 minus fraction of random
    trials answered 1, over freshly sampled challenges."""
    return run_experiment(cfg, learner_name, trials, p_train, v_size,
                          master_seed).advantage


def render_report(result: ExperimentResult) -> str:
    """Plain-text key=value block, stable for golden-file diffing.
    Probabilities are rendered as floats only here."""
    lines = [
        f"learner={result.learner}",
        "mode=advantage",
        f"trials={result.trials}",
        f"adv={float(result.advantage):.6f}",
        f"mean_err_pseudo={float(result.mean_error_pseudo):.6f}",
        f"mean_err_random={float(result.mean_error_random):.6f}",
        f"seed={result.seed}",
    ]
    return "\n".join(lines) + "\n"
