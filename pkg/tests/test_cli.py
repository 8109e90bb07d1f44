"""End-to-end tests of the command-line interface."""

import pytest

from rexkit.cli import main
from rexkit.engine import equivalent_upto
from rexkit.syntax import parse


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBasics:
    def test_size(self, capsys):
        code, out, _ = run(capsys, "size", "(0|1)*")
        assert code == 0 and out == "4\n"

    def test_size_counting(self, capsys):
        code, out, _ = run(capsys, "size", "(0|1){8}", "--counting")
        assert code == 0 and out == "6\n"
        code, out, _ = run(capsys, "size", "(0|1){8}")
        assert code == 0 and out == "24\n"

    def test_match_exit_codes(self, capsys):
        code, out, _ = run(capsys, "match", "(0|1)*1", "01")
        assert code == 0 and out == "true\n"
        code, out, _ = run(capsys, "match", "(0|1)*1", "10")
        assert code == 1 and out == "false\n"
        code, out, _ = run(capsys, "match", "(0|1)*", "")
        assert code == 0 and out == "true\n"

    def test_error_exit_and_diagnostic(self, capsys):
        code, out, err = run(capsys, "match", "((", "0")
        assert code == 2 and out == ""
        assert err.startswith("error: ") and err.count("\n") == 1

    def test_word_validation(self, capsys):
        code, _, err = run(capsys, "match", "0", "2")
        assert code == 2 and "word" in err

    def test_equiv(self, capsys):
        code, out, _ = run(capsys, "equiv", "0|1", "1|0", "--maxlen", "4")
        assert code == 0 and out == "equivalent\n"
        code, out, _ = run(capsys, "equiv", "0", "1", "--maxlen", "2")
        assert code == 1 and out == "not equivalent: counterexample 0\n"
        code, out, _ = run(capsys, "equiv", "e", "@", "--maxlen", "2")
        assert code == 1 and "counterexample e" in out

    def test_unknown_flag_rejected(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["size", "0", "--fast"])
        assert info.value.code == 2


class TestCompilers:
    def test_compile_dnf_worked_example(self, capsys, tmp_path):
        path = tmp_path / "phi.dnf"
        path.write_text("dnf 4 2\n+1 -3 +4\n-2 +3\n")
        code, out, _ = run(capsys, "compile-dnf", str(path))
        assert code == 0
        assert parse(out.strip()) == parse("(1(0|1)01)|((0|1)01(0|1))")

    def test_compile_formula(self, capsys, tmp_path):
        path = tmp_path / "phi.bf"
        path.write_text("(and (var 1) (not (var 2)))\n")
        code, out, _ = run(capsys, "compile-formula", str(path),
                           "--target", "inter")
        assert code == 0
        assert parse(out.strip()) == parse("1(0|1)&(0|1)0")
        code, out, _ = run(capsys, "compile-formula", str(path),
                           "--target", "neg")
        assert code == 0 and "&" not in out

    def test_compile_dnf_bad_file(self, capsys, tmp_path):
        path = tmp_path / "bad.dnf"
        path.write_text("dnf 2 1\n+x\n")
        code, _, err = run(capsys, "compile-dnf", str(path))
        assert code == 2 and "line 2" in err


class TestAutomataPipeline:
    def test_roundtrip_through_files(self, capsys, tmp_path):
        source = "(1(0|1))*|0"
        nfa_path = tmp_path / "a.nfa"
        dfa_path = tmp_path / "a.dfa"
        min_path = tmp_path / "a.min"
        code, _, _ = run(capsys, "re2nfa", source, "-o", str(nfa_path))
        assert code == 0
        code, _, _ = run(capsys, "nfa2dfa", str(nfa_path), "-o", str(dfa_path))
        assert code == 0
        code, _, _ = run(capsys, "min", str(dfa_path), "-o", str(min_path))
        assert code == 0
        code, out, _ = run(capsys, "dfa2re", str(min_path))
        assert code == 0
        equal, witness = equivalent_upto(parse(out.strip()), parse(source), 6)
        assert equal, witness

    def test_complement_and_product(self, capsys, tmp_path):
        d0 = tmp_path / "d0.dfa"
        d1 = tmp_path / "d1.dfa"
        for regex, path in (("0", d0), ("1", d1)):
            run(capsys, "re2nfa", regex, "-o", str(tmp_path / "t.nfa"))
            run(capsys, "nfa2dfa", str(tmp_path / "t.nfa"), "-o", str(path))
        code, out, _ = run(capsys, "product", str(d0), str(d1), "--op", "or")
        assert code == 0 and out.startswith("dfa ")
        code, _, _ = run(capsys, "complement", str(d0),
                         "-o", str(tmp_path / "c.dfa"))
        assert code == 0

    def test_dfa2re_requires_dfa(self, capsys, tmp_path):
        path = tmp_path / "a.nfa"
        run(capsys, "re2nfa", "0|1", "-o", str(path))
        code, _, err = run(capsys, "dfa2re", str(path))
        assert code == 2 and "dfa" in err


class TestGenerators:
    def test_gen_hypergraph_deterministic(self, capsys):
        _, first, _ = run(capsys, "gen-hypergraph", "--n", "8", "--m", "5",
                          "--k", "3", "--seed", "42")
        _, second, _ = run(capsys, "gen-hypergraph", "--n", "8", "--m", "5",
                           "--k", "3", "--seed", "42")
        assert first == second and first.startswith("hg 8 5 3\n")

    def test_gen_challenge_and_examples(self, capsys, tmp_path):
        ch_path = tmp_path / "ch.txt"
        args = ("gen-challenge", "--n", "8", "--k", "3", "--N", "16",
                "--gamma", "2/5", "--variant", "starred", "--m", "30",
                "--mode", "pseudorandom", "--seed", "5", "-o", str(ch_path))
        code, _, _ = run(capsys, *args)
        assert code == 0
        first = ch_path.read_text()
        run(capsys, *args)
        assert ch_path.read_text() == first
        code, out, _ = run(capsys, "gen-examples", "--challenge", str(ch_path),
                           "--N", "16", "--count", "10", "--seed", "6")
        assert code == 0 and out.startswith("examples 16 10\n")
        assert len(out.strip().splitlines()) == 11

    def test_gen_gadget(self, capsys):
        code, out, _ = run(capsys, "gen-gadget", "--n", "4", "--k", "2",
                           "--N", "8", "--gamma", "2/5", "--variant",
                           "star_free", "--seed", "3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("gadget n=4 k=2 N=8 gamma=2/5")
        assert lines[1].startswith("x ")
        assert lines[2].startswith("re ")
        assert "*" not in lines[2]

    def test_seed_is_required(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["gen-hypergraph", "--n", "4", "--m", "2", "--k", "2"])
        assert info.value.code == 2


class TestDistinguish:
    def test_report_and_determinism(self, capsys):
        args = ("distinguish", "--n", "8", "--k", "2", "--N", "12",
                "--gamma", "2/5", "--variant", "starred", "--learner",
                "oracle", "--trials", "3", "--p-train", "10", "--v-size",
                "30", "--seed", "11")
        code, first, _ = run(capsys, *args)
        assert code == 0
        lines = first.splitlines()
        assert lines[0] == "learner=oracle"
        assert lines[2] == "trials=3"
        assert lines[6] == "seed=11"
        code, second, _ = run(capsys, *args)
        assert first == second

    def test_figures_written(self, capsys, tmp_path):
        figures = tmp_path / "figs"
        code, out, err = run(capsys, "distinguish", "--n", "8", "--k", "2",
                             "--N", "12", "--gamma", "2/5", "--variant",
                             "starred", "--learner", "const1", "--trials",
                             "2", "--p-train", "5", "--v-size", "10",
                             "--seed", "12", "--figures", str(figures))
        assert code == 0
        assert (figures / "validation_errors.png").exists()
        assert (figures / "verdict_rates.png").exists()
        assert "figure:" in err
