import json

import pytest

from lcn.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEddeg:
    def test_value(self, capsys):
        code, out, _ = run(capsys, "eddeg", "-k", "2,3,4,5")
        assert code == 0
        assert out == "2976084\n"

    def test_usage_error_small_filter(self, capsys):
        code, _, err = run(capsys, "eddeg", "-k", "1,2")
        assert code == 2
        assert "at least 2" in err

    def test_tree(self, capsys):
        code, out, _ = run(capsys, "eddeg", "-k", "2,3,8", "--tree")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "C[2,3,8] = 12698"
        assert "C[2,10] = 38" in [l.strip() for l in lines]

    def test_table(self, capsys):
        code, out, _ = run(capsys, "eddeg", "-k", "2,2", "--table", "9", "9")
        assert code == 0
        rows = [line.split("\t") for line in out.splitlines()]
        assert rows[0][0] == "k1\\k2"
        assert rows[1][1] == "6"
        assert rows[8][8] == "10218105"


class TestIdeal:
    def test_two_layer_text(self, capsys):
        code, out, _ = run(capsys, "ideal", "-k", "2,2", "-s", "2,1")
        assert code == 0
        assert out == "A*D - B*C\n"

    def test_provenance(self, capsys):
        code, out, _ = run(capsys, "ideal", "-k", "5,2", "-s", "3,1", "--provenance")
        assert code == 0
        assert "two_layer(5,2;3):I1" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "ideal", "-k", "2,2", "-s", "2,1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["vars"] == ["c0", "c1", "c2", "c3"]
        assert payload["generators"][0]["terms"][0]["coeff"] == "1"

    def test_missing_strides(self, capsys):
        code, _, err = run(capsys, "ideal", "-k", "2,2")
        assert code == 2
        assert "strides" in err


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "-k", "5,2", "-s", "3,1", "--samples", "15", "--seed", "1")
        assert code == 0
        assert "jacobian rank  : 6 (expected 6)" in out
        assert out.rstrip().endswith("ok")

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "verify", "-k", "2,2", "-s", "2,1", "--samples", "10",
            "--seed", "1", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        assert payload["failures"] == []


class TestResultant:
    def test_recipe_and_matrices(self, capsys):
        code, out, _ = run(capsys, "resultant", "-k", "5,2", "-s", "3,1", "--print-matrices")
        assert code == 0
        assert "n*=2, n_*=1, r=2" in out
        assert "[ B  E  H ]" in out
        assert "I2 = R_3" in out

    def test_rejects_deep_architectures(self, capsys):
        code, _, err = run(capsys, "resultant", "-k", "2,2,2", "-s", "2,2,1")
        assert code == 2
        assert "two-layer" in err


class TestCompose:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "compose", "-k", "2,2", "-s", "2,1", "--seed", "5")
        assert code == 0
        assert out.splitlines()[1].startswith("w1 = ")

    def test_json_members(self, capsys):
        code, out, _ = run(
            capsys, "compose", "-k", "3,2", "-s", "2,1", "--seed", "9", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        from fractions import Fraction

        w = [Fraction(v) for v in payload["filter"]]
        layers = [[Fraction(v) for v in layer] for layer in payload["layers"]]
        from lcn.arch import Architecture, compose_filters

        assert tuple(w) == compose_filters(Architecture((3, 2), (2, 1)), layers)


class TestCritpoints:
    def test_small_run(self, capsys):
        code, out, _ = run(
            capsys, "critpoints", "-k", "2,2", "-s", "2,1",
            "--starts", "400", "--seed", "42", "--data-seed", "7",
        )
        assert code == 0
        assert "expected count : 6" in out
        assert "distinct found : 6" in out

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "critpoints", "-k", "2,2", "-s", "2,1",
            "--starts", "400", "--seed", "42", "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["distinct"] == payload["expected"] == 6
        assert payload["max_residual"] < 1e-10

    def test_shortfall_exit_code(self, capsys):
        code, out, _ = run(
            capsys, "critpoints", "-k", "2,2", "-s", "2,1", "--starts", "2", "--seed", "0"
        )
        assert code == 1

    def test_non_hypersurface_usage_error(self, capsys):
        code, _, err = run(capsys, "critpoints", "-k", "5,2", "-s", "3,1")
        assert code == 2
        assert "non-hypersurface" in err


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("ideal", "-k", "3,2,2", "-s", "2,2,1", "--format", "json", "--provenance"),
            ("eddeg", "-k", "2,3,4,5", "--tree"),
            ("compose", "-k", "3,2,2", "-s", "2,2,1", "--seed", "3"),
            ("verify", "-k", "2,2", "-s", "2,1", "--samples", "5", "--seed", "2"),
        ],
    )
    def test_byte_identical_reruns(self, capsys, argv):
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2
