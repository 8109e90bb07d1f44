"""Tests for oracles, empirical error, the distinguisher, and experiments."""

import random
from fractions import Fraction

import pytest

from rexkit._seeds import derive_seed, random_bits
from rexkit.gadget import (
    GadgetConfig, LabeledExample, make_challenge, simulate_oracle,
    target_regex,
)
from rexkit.harness import (
    MembershipOracle, advantage_estimate, baseline_learners,
    constant_hypothesis, decision_threshold, distinguisher, empirical_error,
    learner_factory, oracle_learner, regex_hypothesis, render_report,
    run_experiment, split_sample,
)
from rexkit.engine import matches
from rexkit.prg import default_predicate


def config(n=8, k=2, N=12, variant="starred", gamma=Fraction(2, 5), seed=3):
    return GadgetConfig(n=n, k=k, N=N, gamma=gamma, variant=variant,
                        predicate=default_predicate(k), prng_seed=seed)


def labeled(pairs):
    return [LabeledExample(z, y) for z, y in pairs]


class TestEmpiricalError:
    def test_perfect_and_negated(self):
        samples = labeled([("00", 0), ("01", 1), ("10", 1)])
        truth = {"00": 0, "01": 1, "10": 1}
        assert empirical_error(lambda w: truth[w], samples) == 0
        assert empirical_error(lambda w: 1 - truth[w], samples) == 1

    def test_exact_fraction(self):
        samples = labeled([(format(i, "04b"), 1 if i >= 3 else 0)
                           for i in range(10)])
        assert empirical_error(constant_hypothesis(1), samples) == Fraction(3, 10)

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            empirical_error(constant_hypothesis(0), [])


class TestMembershipOracle:
    def test_answers_and_counts(self):
        oracle = MembershipOracle(lambda w: int(w.count("1") % 2 == 0))
        assert oracle.query("11") == 1
        assert oracle.query("1") == 0
        assert oracle.query_count == 2

    def test_agrees_with_target_matcher(self):
        cfg = config()
        rng = random.Random(1)
        x = random_bits(rng, cfg.n)
        r = target_regex(x, cfg)
        oracle = MembershipOracle(regex_hypothesis(r))
        for _ in range(100):
            w = random_bits(rng, cfg.N)
            assert oracle.query(w) == (1 if matches(r, w) else 0)
        assert oracle.query_count == 100


class TestSplit:
    def test_split(self):
        samples = labeled([("0", 0), ("1", 1), ("00", 1)])
        split = split_sample(samples, 2)
        assert split.train == tuple(samples[:2])
        assert split.validation == (samples[2],)
        with pytest.raises(ValueError):
            split_sample(samples, 4)


class TestLearners:
    def test_oracle_learner_reads_hidden_seed(self):
        cfg = config()
        ch = make_challenge(cfg, 300, "pseudorandom", random.Random(2))
        learner = oracle_learner(cfg, ch)
        h = learner([], None, None)
        examples = simulate_oracle(cfg, ch, 300, random.Random(3))
        assert empirical_error(h, examples) == 0

    def test_oracle_learner_random_mode_rejects_everything(self):
        cfg = config()
        ch = make_challenge(cfg, 5, "random", random.Random(4))
        h = oracle_learner(cfg, ch)([], None, None)
        assert h("0" * cfg.N) == 0 and h("1" * cfg.N) == 0

    def test_random_mode_error_floor(self):
        # At n=16, k=2 the invalid-encoding mass (1/16) is below gamma/2, so
        # a fixed target matcher's error against fresh random labels stays
        # above 1/2 * (1 - gamma/2); on valid encodings alone it sits at 1/2.
        cfg = GadgetConfig(n=16, k=2, N=16, gamma=Fraction(1, 5),
                           variant="starred", predicate=default_predicate(2),
                           prng_seed=5)
        rng = random.Random(derive_seed(99, "floor"))
        ch = make_challenge(cfg, 4000, "random", rng)
        examples = simulate_oracle(cfg, ch, 4000,
                                   random.Random(derive_seed(99, "floor-sim")))
        h = regex_hypothesis(target_regex(random_bits(rng, 16), cfg))
        error = empirical_error(h, examples)
        assert error >= Fraction(1, 2) * (1 - cfg.gamma / 2) - Fraction(3, 100)
        # the mean sits at validity/2: the matcher agrees on invalid draws
        assert abs(float(error) - 0.5 * 15 / 16) < 0.03

    def test_baselines(self):
        base = baseline_learners()
        ones = labeled([("0", 1)] * 6 + [("1", 0)] * 4)
        assert base["constant_one"](ones, None, None)("x") == 1
        assert base["constant_zero"](ones, None, None)("x") == 0
        assert base["majority_label"](ones, None, None)("w") == 1
        zeros = labeled([("0", 0)] * 6 + [("1", 1)] * 4)
        assert base["majority_label"](zeros, None, None)("w") == 0

    def test_factory_names(self):
        cfg = config()
        for name in ("oracle", "const0", "const1", "majority"):
            factory = learner_factory(name, cfg)
            ch = make_challenge(cfg, 4, "random", random.Random(6))
            assert callable(factory(ch))
        with pytest.raises(ValueError):
            learner_factory("boost", cfg)


class TestDistinguisher:
    def test_threshold_law_is_exact(self):
        # 2/5 gamma puts the threshold at 3/10: with 10 validation examples,
        # exactly 3 mistakes answers 1 and 4 answers 0.
        cfg = config()
        threshold = decision_threshold(cfg)
        assert threshold == Fraction(3, 10)

        class FixedChallenge:
            pass

        def run(mistakes):
            samples = labeled([("0" * cfg.N, 1)] * (10 - mistakes)
                              + [("1" * cfg.N, 1)] * mistakes)

            def h(w):
                return 0 if w == "1" * cfg.N else 1

            return 1 if empirical_error(h, samples) <= threshold else 0

        assert run(3) == 1
        assert run(4) == 0

    def test_requires_validation_examples(self):
        cfg = config()
        ch = make_challenge(cfg, 10, "random", random.Random(7))
        learner = baseline_learners()["constant_one"]
        with pytest.raises(ValueError):
            distinguisher(cfg, learner, ch, 10, 0, random.Random(8))

    def test_oracle_learner_pseudorandom_answers_one(self):
        cfg = config()
        for t in range(10):
            ch = make_challenge(cfg, 60, "pseudorandom",
                                random.Random(derive_seed(1, t)))
            learner = oracle_learner(cfg, ch)
            bit = distinguisher(cfg, learner, ch, 10, 50,
                                random.Random(derive_seed(2, t)))
            assert bit == 1

    def test_constant_zero_random_answers_zero(self):
        cfg = config(n=16, k=3, N=32, gamma=Fraction(1, 5))
        learner = baseline_learners()["constant_zero"]
        for t in range(20):
            ch = make_challenge(cfg, 250, "random",
                                random.Random(derive_seed(3, t)))
            bit = distinguisher(cfg, learner, ch, 50, 200,
                                random.Random(derive_seed(4, t)))
            assert bit == 0

    def test_validation_isolation(self):
        cfg = config()
        seen = {}

        def spy_learner(train, mq=None, rng=None):
            seen["train"] = tuple(train)
            return constant_hypothesis(1)

        ch = make_challenge(cfg, 30, "random", random.Random(9))
        sim_rng = random.Random(10)
        all_examples = simulate_oracle(cfg, ch, 30, random.Random(10))
        distinguisher(cfg, spy_learner, ch, 12, 18, sim_rng)
        assert seen["train"] == tuple(all_examples[:12])


class TestExperiments:
    def test_trial_values_in_range(self):
        cfg = config()
        adv = advantage_estimate(cfg, "const1", trials=1, p_train=5,
                                 v_size=20, master_seed=17)
        assert adv in (Fraction(-1), Fraction(0), Fraction(1))

    def test_deterministic_reruns(self):
        cfg = config()
        first = run_experiment(cfg, "oracle", trials=3, p_train=10, v_size=30,
                               master_seed=77)
        second = run_experiment(cfg, "oracle", trials=3, p_train=10, v_size=30,
                                master_seed=77)
        assert first == second
        assert render_report(first) == render_report(second)

    def test_report_format(self):
        cfg = config()
        result = run_experiment(cfg, "oracle", trials=2, p_train=5, v_size=20,
                                master_seed=5)
        report = render_report(result)
        lines = report.splitlines()
        assert lines[0] == "learner=oracle"
        assert lines[1] == "mode=advantage"
        assert lines[2] == "trials=2"
        assert lines[3].startswith("adv=")
        assert lines[4].startswith("mean_err_pseudo=")
        assert lines[5].startswith("mean_err_random=")
        assert lines[6] == "seed=5"

    def test_oracle_advantage_positive_at_small_scale(self):
        cfg = config()
        result = run_experiment(cfg, "oracle", trials=10, p_train=10,
                                v_size=60, master_seed=99)
        assert result.ones_pseudo == 10
        assert result.advantage >= Fraction(4, 5)
