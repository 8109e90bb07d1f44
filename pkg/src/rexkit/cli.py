"""Command-line front door.

Every subcommand is a thin shell over one library operation; outputs use the
text formats owned by the corresponding modules.  Exit codes: 0 for success
(or a positive match/equivalence verdict), 1 for a negative verdict, 2 for
any error, which is reported as a single diagnostic line on stderr.

Randomized subcommands require an explicit --seed and reproduce their output
byte-for-byte under the same arguments.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import automata, gadget, harness, reductions
from .engine import EnumerationLimitError, equivalent_upto, matches
from .prg import (
    HypergraphFormatError, default_predicate, parse_predicate,
    sample_hypergraph, serialize_hypergraph,
)
from .syntax import RegexSyntaxError, parse, size_of, to_text

_ERRORS = (
    RegexSyntaxError, EnumerationLimitError, automata.AutomatonFormatError,
    automata.SubsetLimitError, automata.UnsupportedOperatorError,
    reductions.FormulaFormatError, HypergraphFormatError,
    gadget.GadgetFormatError, gadget.ChallengeExhaustedError,
    ValueError, OSError,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _check_word(word: str) -> str:
    if word.strip("01"):
        raise ValueError(f"word must be a 0/1 string, got {word!r}")
    return word


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", default=None,
                        help="output file (default: stdout)")


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True,
                        help="seed length (a power of two)")
    parser.add_argument("--k", type=int, required=True, help="locality")
    parser.add_argument("--N", type=int, required=True,
                        help="example length")
    parser.add_argument("--gamma", default="1/5",
                        help="weak-learning advantage, a rational like 1/5")
    parser.add_argument("--variant", choices=gadget.VARIANTS,
                        default="starred")
    parser.add_argument("--pred", default=None,
                        help="predicate truth table as a 2^k-bit string "
                             "(default: the built-in predicate)")


def _config_from_args(args: argparse.Namespace, seed: int) -> gadget.GadgetConfig:
    if args.pred is not None:
        predicate = parse_predicate(f"pred {args.k} {args.pred}")
    else:
        predicate = default_predicate(args.k)
    return gadget.GadgetConfig(n=args.n, k=args.k, N=args.N,
                               gamma=Fraction(args.gamma),
                               variant=args.variant, predicate=predicate,
                               prng_seed=seed)


# ---------------------------------------------------------------------------
# Handlers

def _cmd_match(args) -> int:
    r = parse(args.regex)
    ok = matches(r, _check_word(args.word))
    print("true" if ok else "false")
    return 0 if ok else 1


def _cmd_size(args) -> int:
    print(size_of(parse(args.regex), counting_allowed=args.counting))
    return 0


def _cmd_compile_dnf(args) -> int:
    dnf = reductions.parse_dnf(_read(args.file))
    _write(to_text(reductions.dnf_to_regex(dnf)) + "\n", args.output)
    return 0


def _cmd_compile_formula(args) -> int:
    formula = reductions.parse_formula(_read(args.file), n=args.n)
    r = reductions.formula_to_regex(formula, target=args.target,
                                    counting_allowed=args.counting)
    _write(to_text(r) + "\n", args.output)
    return 0


def _cmd_re2nfa(args) -> int:
    nfa = automata.regex_to_nfa(parse(args.regex))
    _write(automata.serialize_automaton(nfa), args.output)
    return 0


def _require(kind, automaton, what: str):
    if not isinstance(automaton, kind):
        raise ValueError(f"{what} requires a {kind.__name__.lower()} input")
    return automaton


def _cmd_nfa2dfa(args) -> int:
    nfa = automata.parse_automaton(_read(args.file))
    if isinstance(nfa, automata.Dfa):
        nfa = automata.Nfa(nfa.state_count, frozenset([nfa.initial]),
                           {k: frozenset([v]) for k, v in nfa.transitions.items()},
                           nfa.finals)
    dfa = automata.determinize(nfa, cap=args.cap)
    _write(automata.serialize_automaton(dfa), args.output)
    return 0


def _cmd_dfa2re(args) -> int:
    dfa = _require(automata.Dfa, automata.parse_automaton(_read(args.file)),
                   "dfa2re")
    _write(to_text(automata.dfa_to_regex(dfa)) + "\n", args.output)
    return 0


def _cmd_min(args) -> int:
    dfa = _require(automata.Dfa, automata.parse_automaton(_read(args.file)),
                   "min")
    _write(automata.serialize_automaton(automata.minimize_dfa(dfa)),
           args.output)
    return 0


def _cmd_complement(args) -> int:
    dfa = _require(automata.Dfa, automata.parse_automaton(_read(args.file)),
                   "complement")
    _write(automata.serialize_automaton(automata.complement_dfa(dfa)),
           args.output)
    return 0


def _cmd_product(args) -> int:
    d1 = _require(automata.Dfa, automata.parse_automaton(_read(args.file1)),
                  "product")
    d2 = _require(automata.Dfa, automata.parse_automaton(_read(args.file2)),
                  "product")
    _write(automata.serialize_automaton(automata.product_dfa(d1, d2, args.op)),
           args.output)
    return 0


def _cmd_equiv(args) -> int:
    equal, witness = equivalent_upto(parse(args.regex1), parse(args.regex2),
                                     args.maxlen)
    if equal:
        print("equivalent")
        return 0
    print(f"not equivalent: counterexample {witness if witness else 'e'}")
    return 1


def _cmd_gen_hypergraph(args) -> int:
    rng = random.Random(args.seed)
    graph = sample_hypergraph(args.n, args.m, args.k, rng)
    _write(serialize_hypergraph(graph), args.output)
    return 0


def _cmd_gen_challenge(args) -> int:
    cfg = _config_from_args(args, args.seed)
    rng = random.Random(args.seed)
    challenge = gadget.make_challenge(cfg, args.m, args.mode, rng)
    _write(gadget.serialize_challenge(cfg, challenge), args.output)
    return 0


def _cmd_gen_gadget(args) -> int:
    cfg = _config_from_args(args, args.seed)
    x = gadget.seed_bits(cfg)
    r = gadget.target_regex(x, cfg)
    text = gadget.serialize_config(cfg) + f"x {x}\n" + f"re {to_text(r)}\n"
    _write(text, args.output)
    return 0


def _cmd_gen_examples(args) -> int:
    n, k, challenge = gadget.parse_challenge(_read(args.challenge))
    predicate = default_predicate(k)
    cfg = gadget.GadgetConfig(n=n, k=k, N=args.N, gamma=Fraction(args.gamma),
                              variant=args.variant, predicate=predicate,
                              prng_seed=args.seed)
    rng = random.Random(args.seed)
    examples = gadget.simulate_oracle(cfg, challenge, args.count, rng)
    _write(gadget.serialize_examples(cfg.N, examples), args.output)
    return 0


def _cmd_distinguish(args) -> int:
    cfg = _config_from_args(args, args.seed)
    result = harness.run_experiment(
        cfg, args.learner, trials=args.trials, p_train=args.p_train,
        v_size=args.v_size, master_seed=args.seed,
        challenge_size=args.challenge_size)
    _write(harness.render_report(result), args.output)
    if args.figures is not None:
        from .reporting import save_experiment_figures
        for path in save_experiment_figures(result, args.figures):
            print(f"figure: {path}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# Parser assembly

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rexkit",
        description="Extended binary-alphabet regex toolkit: matching, "
                    "automata conversions, Boolean-function compilers, and "
                    "the learning-hardness gadget pipeline.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="decide word membership")
    p.add_argument("regex")
    p.add_argument("word")
    p.set_defaults(handler=_cmd_match)

    p = sub.add_parser("size", help="size of a regex")
    p.add_argument("regex")
    p.add_argument("--counting", action="store_true",
                   help="price r{k} as |r| + ceil(log2 k)")
    p.set_defaults(handler=_cmd_size)

    p = sub.add_parser("compile-dnf", help="DNF file to plain regex")
    p.add_argument("file")
    _add_output(p)
    p.set_defaults(handler=_cmd_compile_dnf)

    p = sub.add_parser("compile-formula",
                       help="Boolean formula file to extended regex")
    p.add_argument("file")
    p.add_argument("--target", choices=("inter", "neg"), required=True)
    p.add_argument("--counting", action="store_true",
                   help="emit counted wildcard runs")
    p.add_argument("--n", type=int, default=None,
                   help="variable count (default: highest index used)")
    _add_output(p)
    p.set_defaults(handler=_cmd_compile_formula)

    p = sub.add_parser("re2nfa", help="regex to NFA text")
    p.add_argument("regex")
    _add_output(p)
    p.set_defaults(handler=_cmd_re2nfa)

    p = sub.add_parser("nfa2dfa", help="determinize an automaton file")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=automata.DEFAULT_SUBSET_CAP)
    _add_output(p)
    p.set_defaults(handler=_cmd_nfa2dfa)

    p = sub.add_parser("dfa2re", help="DFA file to plain regex")
    p.add_argument("file")
    _add_output(p)
    p.set_defaults(handler=_cmd_dfa2re)

    p = sub.add_parser("min", help="minimize a DFA file")
    p.add_argument("file")
    _add_output(p)
    p.set_defaults(handler=_cmd_min)

    p = sub.add_parser("complement", help="complement a DFA file")
    p.add_argument("file")
    _add_output(p)
    p.set_defaults(handler=_cmd_complement)

    p = sub.add_parser("product", help="product of two DFA files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--op", choices=("and", "or"), required=True)
    _add_output(p)
    p.set_defaults(handler=_cmd_product)

    p = sub.add_parser("equiv", help="compare truncated languages")
    p.add_argument("regex1")
    p.add_argument("regex2")
    p.add_argument("--maxlen", type=int, required=True)
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("gen-hypergraph", help="sample a random hypergraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_output(p)
    p.set_defaults(handler=_cmd_gen_hypergraph)

    p = sub.add_parser("gen-challenge", help="sample a labeled challenge")
    _add_config_args(p)
    p.add_argument("--m", type=int, required=True, help="number of edges")
    p.add_argument("--mode", choices=("random", "pseudorandom"),
                   required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_output(p)
    p.set_defaults(handler=_cmd_gen_challenge)

    p = sub.add_parser("gen-gadget",
                       help="build the target regex for a fresh hidden seed")
    _add_config_args(p)
    p.add_argument("--seed", type=int, required=True)
    _add_output(p)
    p.set_defaults(handler=_cmd_gen_gadget)

    p = sub.add_parser("gen-examples",
                       help="simulate labeled examples from a challenge file")
    p.add_argument("--challenge", required=True)
    p.add_argument("--N", type=int, required=True, help="example length")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--gamma", default="1/5")
    p.add_argument("--variant", choices=gadget.VARIANTS, default="starred")
    p.add_argument("--seed", type=int, required=True)
    _add_output(p)
    p.set_defaults(handler=_cmd_gen_examples)

    p = sub.add_parser("distinguish",
                       help="run the distinguishing experiment")
    _add_config_args(p)
    p.add_argument("--learner", choices=harness.LEARNER_NAMES, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p-train", type=int, default=100,
                   help="training examples per trial")
    p.add_argument("--v-size", type=int, default=200,
                   help="held-out validation examples per trial")
    p.add_argument("--challenge-size", type=int, default=None,
                   help="labeled edges per challenge "
                        "(default: p_train + v_size)")
    p.add_argument("--figures", default=None, metavar="DIR",
                   help="also render report figures into DIR")
    _add_output(p)
    p.set_defaults(handler=_cmd_distinguish)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
