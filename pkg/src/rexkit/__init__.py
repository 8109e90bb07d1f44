"""rexkit: extended regular expressions over {0, 1}, automata conversions,
Boolean-function-to-regex compilers, a local pseudorandom generator, and the
regex learning-hardness gadget with its distinguishing-experiment harness."""

from .syntax import (
    ANY_BIT, EMPTY, EPSILON, OperatorProfile, PLAIN, Regex, STAR_FREE,
    STAR_FREE_COUNTING, SYM0, SYM1, WITH_COMPL, WITH_COUNT, WITH_INTER, Word,
    bin_index, compl, concat, concat_all, count, desugar_count, inter,
    literal_word, parse, size_of, star, sym, to_text, union, union_all,
)
from .engine import (
    LanguageSample, clear_caches, derivative, enumerate_language,
    equivalent_upto, matches, nullable,
)
from .automata import (
    Dfa, Nfa, compile_extended, complement_dfa, description_metrics,
    determinize, dfa_to_regex, minimize_dfa, product_dfa, regex_to_nfa,
)
from .reductions import (
    And, BooleanFormula, Dnf, Not, Or, Var, dnf_to_regex, eval_dnf,
    eval_formula, formula_to_regex, nnf, pad_input,
)
from .prg import (
    Hypergraph, Predicate, default_predicate, eval_predicate, prg_output,
    restrict, sample_hypergraph,
)
from .gadget import (
    Challenge, GadgetConfig, LabeledExample, SizeAudit, block_matcher,
    duplicate_catcher, encode_compressed, encode_onehot, is_valid_extended,
    make_challenge, predicate_part, simulate_oracle, target_regex,
    target_size, tuple_branch, validity_probability,
)
from .harness import (
    ExperimentResult, MembershipOracle, advantage_estimate, baseline_learners,
    distinguisher, empirical_error, oracle_learner, render_report,
    run_experiment,
)

__version__ = "0.1.0"
