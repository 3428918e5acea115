"""End-to-end command-line behavior: exit codes, JSON reports, determinism."""

import json

import pytest

from commend.cli import main

DESC_F = "(z1^2 - 2*z2, z2^2)"
DESC_G = "(z1^3 - 3*z1*z2, z2^3)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestExitCodes:
    def test_affirmative(self, capsys):
        code, rep = run(capsys, "commute", "--f", DESC_F, "--g", DESC_G)
        assert code == 0
        assert rep["result"]["commute"] is True

    def test_negative_verdict(self, capsys):
        code, rep = run(capsys, "commute", "--f", DESC_F,
                        "--g", "(z1^3, z2^3)")
        assert code == 1
        assert rep["result"]["commute"] is False

    def test_input_error(self, capsys):
        code, rep = run(capsys, "commute", "--f", "(z1 +* 2, z2)",
                        "--g", DESC_G)
        assert code == 2
        assert "error" in rep

    def test_budget_exceeded(self, capsys):
        code, rep = run(capsys, "search", "--degrees", "2,2",
                        "--coeffs", "0,1", "--pair-budget", "10")
        assert code == 3
        assert rep["partial"]["total_pairs"] == 10


class TestCommands:
    def test_classify_descent_pair(self, capsys):
        code, rep = run(capsys, "classify", "--f", DESC_F, "--g", DESC_G)
        assert code == 0
        assert rep["result"]["tag"] == "Ex4"

    def test_iterate(self, capsys):
        code, rep = run(capsys, "iterate", "--f", "(z1^2, z2^2)", "--n", "2")
        assert code == 0
        assert rep["result"]["iterate"] == "(z1^4, z2^4)"

    def test_infinity(self, capsys):
        code, rep = run(capsys, "infinity", "--f", DESC_F)
        assert code == 0
        assert rep["result"]["restriction"] == "[s^2 : t^2]"
        assert rep["result"]["class"] == "PowerLike"

    def test_orbifold_cover_chebyshev(self, capsys):
        code, rep = run(capsys, "orbifold-cover", "--map", "cheb:2",
                        "--orbifold", "inf:inf,2:2,-2:2")
        assert code == 0
        assert rep["result"]["selfcover"] is True

    def test_parabolic(self, capsys):
        code, rep = run(capsys, "parabolic", "--orbifold",
                        "inf:2,0:2,1:2,-1:2")
        assert code == 0 and rep["result"]["parabolic"] is True
        code, _rep = run(capsys, "parabolic", "--orbifold", "inf:2,0:3")
        assert code == 1

    def test_classify_p1(self, capsys):
        code, rep = run(capsys, "classify-p1", "--map", "x^2 - 2")
        assert code == 0 and rep["result"]["class"] == "ChebyshevLike"
        code, rep = run(capsys, "classify-p1", "--map", "x^2 + 1")
        assert code == 1 and rep["result"]["class"] == "Unknown"

    def test_lattes_shorthand(self, capsys):
        code, rep = run(capsys, "portrait", "--map", "lattes:-1,0,2",
                        "--orbifold", "inf:2,0:2,1:2,-1:2")
        assert code == 0
        assert rep["result"]["case"] == "O4-even-all-to-one"

    def test_construct_ex4(self, capsys):
        code, rep = run(capsys, "construct", "--family", "ex4",
                        "--h", "x^2")
        assert code == 0
        assert rep["result"]["map"] == "(z1^2 - 2*z2, z2^2)"

    def test_ramified_invariance(self, capsys):
        code, rep = run(capsys, "ramified-invariance", "--f", DESC_F,
                        "--phi", "z1^2 - 4*z2")
        assert code == 0 and rep["result"]["witness"] == "z1"

    def test_cyclotomic_session(self, capsys):
        code, rep = run(capsys, "--cyclotomic", "4", "commute",
                        "--f", "(w*z1^2, z2^2)", "--g", "(z1^3, z2^3)")
        assert code == 1  # w != w^3, so the scaled compositions differ
        code, rep = run(capsys, "commute",
                        "--f", "(w*z1, z2)", "--g", "(z1, z2)",
                        "--cyclotomic", "4")
        assert code == 0

    def test_local_degree(self, capsys):
        code, rep = run(capsys, "local-degree", "--f", DESC_F,
                        "--point", "0,0")
        assert code == 0 and rep["result"]["local_degree"] == 4


class TestReports:
    def test_json_file_matches_stdout(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code = main(["extends", "--f", DESC_F, "--json", str(path)])
        out = capsys.readouterr().out
        assert code == 0
        assert path.read_text() == out

    def test_deterministic_bytes(self, capsys):
        outs = []
        for _ in range(2):
            main(["classify", "--f", DESC_F, "--g", DESC_G])
            outs.append(capsys.readouterr().out)
        assert outs[0] == outs[1]

    def test_search_report_fields(self, capsys):
        code, rep = run(capsys, "search", "--degrees", "2,2",
                        "--coeffs=-1,0,1")
        assert code == 0
        res = rep["result"]
        assert res["total_pairs"] == 3240
        assert res["unknown"] == []
