import json
import random
import subprocess
import sys

import pytest

from mnring import sampling, serialize
from mnring.cli import main
from mnring.crossed import CrossedModel, crossed_inv
from mnring.expr import (
    Atom,
    BinOp,
    Neg,
    ParseError,
    Pow,
    Session,
    evaluate_text,
    format_crossed,
    parse,
)
from mnring.numfield import PrimeBasis
from mnring.series import SeriesElement, format_series


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParser:
    def test_sum_of_product(self):
        node = parse("r1*x1 + 2")
        assert isinstance(node, BinOp) and node.op == "+"
        assert node.left == BinOp("*", Atom("r", 1), Atom("x", 1))

    def test_inversion_node(self):
        node = parse("(1 - x1)^-1")
        assert isinstance(node, Pow) and node.exponent == -1

    def test_implicit_multiplication(self):
        assert parse("r1 x1") == parse("r1*x1")
        assert parse("2(x1 + 1)") == parse("2*(x1 + 1)")

    def test_unary_minus_binds_looser_than_power(self):
        node = parse("-x1^2")
        assert isinstance(node, Neg) and isinstance(node.operand, Pow)

    def test_index_beyond_level(self):
        with pytest.raises(ParseError) as exc:
            parse("x1 + r9", level=3)
        assert exc.value.offset == 5

    def test_syntax_errors(self):
        for bad in ("x1 +", "(x1", "x1 ^ y", "x1 $ 2", "x1^1.5", "r0"):
            with pytest.raises(ParseError):
                parse(bad, level=3)

    def test_atom_restriction(self):
        with pytest.raises(ParseError):
            Session("crossed-L", 2).parse("s + 1")
        with pytest.raises(ParseError):
            Session("series", 2).parse("s")


class TestEvaluation:
    def test_commutator_expression(self):
        assert evaluate_text("r1 x1 r1^-1 x1^-1", Session()) == -1

    def test_generator_square(self):
        assert format_crossed(evaluate_text("x1^2", Session())) == "t1"

    def test_alpha_tail(self):
        s = Session("crossed-R", 2)
        assert format_crossed(evaluate_text("a - (x1^-1 + x2^-1)", s)) == "s"

    def test_series_inverse_frontier(self):
        v = evaluate_text("(1 - x1)^-1", Session("series", 2, budget=3))
        assert str(v.body) == "1 + x1 + x1^2 + x1^3"
        assert str(v.exact_below) == "x1^4"

    def test_series_alpha(self):
        v = evaluate_text("a", Session("series", 2))
        assert str(v.body) == "x1^-1 + x2^-1" and str(v.exact_below) == "x3^-1"

    def test_decimal_literal(self):
        assert format_crossed(evaluate_text("0.25 x1", Session())) == "1/4*x1"

    def test_custom_primes(self):
        s = Session("crossed-L", 2, PrimeBasis((3, 7)))
        assert evaluate_text("r2^2", s) == 7


def _crossed_round_trip(session, value):
    text = format_crossed(value)
    again = evaluate_text(text, session)
    assert again == value, text
    assert format_crossed(again) == text


def test_round_trip_crossed_l():
    session = Session("crossed-L", 2)
    model = session.model
    rng = random.Random(20)
    for k in range(100):
        a = sampling.nonzero_crossed(rng, model, max_terms=4, coeff_terms=2, bound=2)
        if k % 4 == 0:
            a = crossed_inv(a)
        _crossed_round_trip(session, a)


def test_round_trip_crossed_r():
    session = Session("crossed-R", 2)
    model = session.model
    rng = random.Random(21)
    for k in range(50):
        a = sampling.nonzero_crossed(rng, model, max_terms=3, coeff_terms=2)
        if k % 5 == 0:
            a = crossed_inv(a)
        _crossed_round_trip(session, a)


def test_round_trip_series():
    session = Session("series", 3)
    rng = random.Random(22)
    for _ in range(50):
        s = sampling.series_element(rng, session.primes, max_terms=5, bound=3, coeff_terms=3)
        text = format_series(s)
        assert evaluate_text(text, session).body == s, text


class TestCommands:
    def test_comm(self, capsys):
        assert run(capsys, "comm", "r1", "x1") == (0, "-1\n", "")

    def test_dim(self, capsys):
        assert run(capsys, "dim", "--level", "2") == (0, "16\n", "")

    def test_eval_golden(self, capsys):
        code, out, _ = run(capsys, "eval", "(1 + r1 x1)^-1")
        assert out == "(2*t1 + 1)^-1 - (2*t1 + 1)^-1*r1*x1\n"

    def test_inv_series(self, capsys):
        code, out, _ = run(capsys, "inv", "--mode", "series", "--budget", "2", "1 - x1")
        assert (code, out) == (0, "1 + x1 + x1^2\n# exact below x1^3\n")

    def test_central_and_witness(self, capsys):
        assert run(capsys, "central", "t1 + 3")[1] == "true\n"
        assert run(capsys, "central", "x1")[1] == "false\n"
        assert run(capsys, "witness", "--level", "3", "r1 x1 x2")[1] == "{1, 2}\n"

    def test_norm(self, capsys):
        assert run(capsys, "norm", "x1")[1] == "t1^8\n"
        assert run(capsys, "norm", "r1 x1 r1^-1 x1^-1")[1] == "1\n"

    def test_center_basis(self, capsys):
        assert run(capsys, "center-basis", "--level", "1")[1] == "1\n"

    def test_r_mode(self, capsys):
        assert run(capsys, "eval", "--mode", "crossed-R", "a - (x1^-1 + x2^-1)")[1] == "s\n"

    def test_check_only(self, capsys):
        code, out, _ = run(capsys, "check", "--only", "commutation_table", "--seed", "0")
        assert code == 0 and out.startswith("PASS commutation_table")

    def test_check_structured(self, capsys):
        code, out, _ = run(capsys, "check", "--only", "center", "--format", "structured")
        rec = json.loads(out)
        assert rec["status"] == "pass" and rec["check_id"] == "center"

    def test_usage_errors(self, capsys):
        assert run(capsys, "eval", "--level", "3", "r9")[0] == 2
        assert run(capsys, "eval", "x1 +")[0] == 2
        assert run(capsys, "eval", "--primes", "2,4", "r1")[0] == 2
        assert run(capsys, "eval", "--mode", "crossed-L", "s")[0] == 2
        assert run(capsys, "norm", "--mode", "series", "x1")[0] == 2
        assert run(capsys, "check", "--only", "nonsense")[0] == 2
        assert run(capsys, "check", "--level", "0")[0] == 2

    def test_math_errors(self, capsys):
        assert run(capsys, "eval", "1/0")[0] == 1
        assert run(capsys, "inv", "x1 - x1")[0] == 1
        assert run(capsys, "eval", "--mode", "series", "(1 - x1)^-1 ^ -1")[0] == 2
        assert run(capsys, "comm", "--mode", "series", "1 - x1", "x2")[0] == 1

    def test_env_defaults(self, capsys, monkeypatch):
        monkeypatch.setenv("MNRING_LEVEL", "3")
        assert run(capsys, "dim")[1] == "64\n"
        monkeypatch.setenv("MNRING_PRIMES", "5,7,11")
        assert run(capsys, "eval", "r3^2")[1] == "11\n"


class TestStructured:
    def test_comm_record(self, capsys):
        _, out, _ = run(capsys, "comm", "r1", "x1", "--format", "structured")
        rec = json.loads(out)
        assert rec["mode"] == "crossed-L" and rec["level"] == 2 and rec["primes"] == [2, 3]
        (term,) = rec["terms"]
        assert term["epsilon"] == [0, 0] and term["mu"] == [0, 0]
        assert term["coefficient"]["numerator"] == [{"den": "1", "exponents": [0, 0], "num": "-1"}]

    @pytest.mark.parametrize(
        "argv",
        [
            ("eval", "(1 + r1 x1 + t2^-1)^-1"),
            ("eval", "--mode", "crossed-R", "a^2 + s r2"),
            ("inv", "--mode", "series", "1 - x1 + r1 x2"),
            ("norm", "1 + r1 x2"),
            ("center-basis",),
        ],
    )
    def test_byte_stable(self, capsys, argv):
        first = run(capsys, *argv, "--format", "structured", "--seed", "5")
        second = run(capsys, *argv, "--format", "structured", "--seed", "5")
        assert first == second and first[0] == 0
        json.loads(first[1])

    def test_crossed_record_round_trip(self):
        model = CrossedModel.first(2, with_s=True)
        rng = random.Random(30)
        for _ in range(30):
            a = crossed_inv(sampling.nonzero_crossed(rng, model))
            rec = json.loads(serialize.dumps(serialize.crossed_record(a, "crossed-R")))
            assert serialize.read_crossed(rec) == a

    def test_series_record_round_trip(self):
        basis = PrimeBasis.first(3)
        rng = random.Random(31)
        for _ in range(30):
            s = sampling.series_element(rng, basis)
            rec = json.loads(serialize.dumps(serialize.series_record(s)))
            assert serialize.read_series(rec) == s

    def test_large_integers_are_strings(self):
        basis = PrimeBasis.first(1)
        s = SeriesElement.scalar(basis, 3**80)
        rec = serialize.series_record(s)
        assert rec["terms"][0]["coefficient"][0]["num"] == str(3**80)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mnring.cli", "comm", "r1", "x1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "-1\n"
