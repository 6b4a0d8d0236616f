import json

import pytest

from paleylab.cli import Config, main, parse_props

GF16_TABLE = [
    "a^1 = a", "a^2 = a^2", "a^3 = a^3", "a^4 = a+1", "a^5 = a^2+a",
    "a^6 = a^3+a^2", "a^7 = a^3+a+1", "a^8 = a^2+1", "a^9 = a^3+a",
    "a^10 = a^2+a+1", "a^11 = a^3+a^2+a", "a^12 = a^3+a^2+a+1",
    "a^13 = a^3+a^2+1", "a^14 = a^3+1", "a^15 = 1",
]

GF9_TABLE = [
    "a^1 = a", "a^2 = 2a+1", "a^3 = 2a+2", "a^4 = 2",
    "a^5 = 2a", "a^6 = a+2", "a^7 = a+1", "a^8 = 1",
]


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestFieldCommand:
    def test_gf16_table(self, capsys):
        rc, out, _ = run(capsys, "field", "2", "4", "--tables")
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0] == "GF(16) = Z_2[x]/(x^4+x+1)"
        assert lines[-15:] == GF16_TABLE

    def test_gf9_table_with_paper_modulus(self, capsys):
        rc, out, _ = run(capsys, "field", "3", "2", "--poly", "x^2+x+2", "--tables")
        assert rc == 0
        assert out.strip().splitlines()[-8:] == GF9_TABLE

    def test_nonprime_exits_2(self, capsys):
        rc, _, err = run(capsys, "field", "4", "1")
        assert rc == 2
        assert "4 is not prime" in err

    def test_bad_modulus_exits_2(self, capsys):
        rc, _, err = run(capsys, "field", "2", "4", "--poly", "x^4+x^2+1")
        assert rc == 2
        assert "reducible" in err

    def test_json_schema(self, capsys):
        rc, out, _ = run(capsys, "field", "5", "2", "--json")
        assert rc == 0
        assert json.loads(out) == {"p": 5, "n": 2, "modulus": [2, 0, 1], "q": 25}

    def test_element_listing(self, capsys):
        _, out, _ = run(capsys, "field", "3", "2")
        assert "elements: 0, 1, 2, a, a+1, a+2, 2a, 2a+1, 2a+2" in out


class TestGraphCommand:
    def test_paley13_edges(self, capsys):
        rc, out, _ = run(capsys, "graph", "paley", "13", "--out", "edges")
        assert rc == 0
        lines = out.strip().splitlines()
        assert len(lines) == 39
        assert lines == sorted(lines, key=lambda s: tuple(map(int, s.split())))

    def test_mpaley_7_3_is_c7(self, capsys):
        rc, out, _ = run(capsys, "graph", "mpaley", "7", "3", "--out", "edges")
        assert rc == 0
        assert out.strip().splitlines() == [
            "0 1", "0 6", "1 2", "2 3", "3 4", "4 5", "5 6",
        ]

    def test_congruence_violation_exits_2(self, capsys):
        rc, _, err = run(capsys, "graph", "paley", "7")
        assert rc == 2
        assert "7 ≢ 1 (mod 4)" in err

    def test_non_prime_power_exits_2(self, capsys):
        rc, _, err = run(capsys, "graph", "paley", "12")
        assert rc == 2
        assert "prime power" in err

    def test_missing_parameter_exits_2(self, capsys):
        rc, _, err = run(capsys, "graph", "mpaley", "7")
        assert rc == 2

    def test_json_output(self, capsys):
        rc, out, _ = run(capsys, "graph", "paley", "9", "--out", "json")
        data = json.loads(out)
        assert data["q"] == 9 and len(data["edges"]) == 18

    def test_dot_output(self, capsys):
        rc, out, _ = run(capsys, "graph", "paley", "5", "--out", "dot")
        assert out.startswith('graph "Paley(5)" {')

    def test_file_output(self, capsys, tmp_path):
        target = tmp_path / "g.edges"
        rc, out, _ = run(capsys, "graph", "paley", "5", "--out", "edges", "--file", str(target))
        assert rc == 0 and out == ""
        assert target.read_text() == "0 1\n0 4\n1 2\n2 3\n3 4\n"

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "graph", "paley", "13", "--out", "dot")
        _, out2, _ = run(capsys, "graph", "paley", "13", "--out", "dot")
        assert out1 == out2


class TestCheckCommand:
    def test_paley29_all_pass(self, capsys):
        rc, out, _ = run(
            capsys, "check", "paley", "29",
            "--props", "srg,selfcomp,symmetric,ec:3",
        )
        assert rc == 0
        assert "FAIL" not in out

    def test_mpaley27_disconnected(self, capsys):
        rc, out, _ = run(capsys, "check", "mpaley", "27", "13", "--props", "connected")
        assert rc == 1
        assert "connected: FAIL  9" in out

    def test_mpaley_11_5_report(self, capsys):
        rc, out, _ = run(
            capsys, "check", "mpaley", "11", "5", "--props", "complete,regular"
        )
        assert rc == 1
        assert "complete: FAIL" in out
        assert "regular: pass  2" in out

    def test_json_report(self, capsys):
        rc, out, _ = run(
            capsys, "check", "paley", "13", "--json", "--props", "srg,ec:3"
        )
        assert rc == 1  # ec:3 fails at q=13
        data = json.loads(out)
        assert data["graph"] == "Paley(13)"
        srg, ec = data["checks"]
        assert srg == {"name": "srg", "pass": True, "value": [13, 6, 2, 3], "witness": None}
        assert ec["pass"] is False
        assert ec["witness"]["vertices"] == [[0, 1, 2], [1]]

    def test_pmnk_prop_parsing(self, capsys):
        rc, out, _ = run(
            capsys, "check", "paley", "13", "--props", "pmnk:1,1,1,regular"
        )
        assert rc == 0
        assert "pmnk:1,1,1: pass" in out
        assert "regular: pass" in out

    def test_ec_cap_exits_2(self, capsys):
        rc, _, err = run(capsys, "check", "paley", "13", "--props", "ec:5")
        assert rc == 2
        assert "cap" in err

    def test_unknown_prop_exits_2(self, capsys):
        rc, _, err = run(capsys, "check", "paley", "13", "--props", "girth")
        assert rc == 2

    def test_jobs_flag(self, capsys):
        rc, out, _ = run(
            capsys, "check", "paley", "13", "--jobs", "2", "--props", "ec:3", "--json"
        )
        data = json.loads(out)
        assert data["checks"][0]["witness"]["vertices"] == [[0, 1, 2], [1]]

    def test_pstar_symmetry_failure_reported(self, capsys):
        rc, out, _ = run(capsys, "check", "pstar", "9", "--props", "regular,srg")
        assert rc == 0
        assert "srg: pass  (9, 4, 1, 2)" in out


class TestSurveyCommand:
    def test_q7_rows_match_worked_examples(self, capsys):
        rc, out, _ = run(
            capsys, "survey", "--q-range", "7..7", "--m-range", "3..9", "--json"
        )
        assert rc == 0
        rows = json.loads(out)["rows"]
        assert [(r["m"], r["d"], r["degree"], r["complete"]) for r in rows] == [
            (3, 3, 2, False),
            (5, 1, 6, True),
            (7, 1, 6, True),
            (9, 3, 2, False),
        ]

    def test_q27_m13_row(self, capsys):
        rc, out, _ = run(
            capsys, "survey", "--q-range", "27..27", "--m-range", "13..13", "--json"
        )
        (row,) = json.loads(out)["rows"]
        assert row == {
            "q": 27, "m": 13, "d": 13, "degree": 2,
            "complete": False, "connected": False, "components": 9,
        }

    def test_q5_all_complete(self, capsys):
        rc, out, _ = run(
            capsys, "survey", "--q-range", "5..5", "--m-range", "3..5", "--json"
        )
        rows = json.loads(out)["rows"]
        assert len(rows) == 2
        assert all(r["complete"] and r["degree"] == 4 for r in rows)

    def test_table_output(self, capsys):
        rc, out, _ = run(capsys, "survey", "--q-range", "7..7", "--m-range", "3..5")
        lines = out.strip().splitlines()
        assert lines[0].split() == [
            "q", "m", "d", "degree", "complete", "connected", "components",
        ]
        assert len(lines) == 3

    def test_even_q_skipped(self, capsys):
        rc, out, _ = run(
            capsys, "survey", "--q-range", "8..9", "--m-range", "3..3", "--json"
        )
        rows = json.loads(out)["rows"]
        assert [r["q"] for r in rows] == [9]

    def test_bad_range_exits_2(self, capsys):
        rc, _, err = run(capsys, "survey", "--q-range", "7", "--m-range", "3..3")
        assert rc == 2


class TestCapsAndConfig:
    def test_env_var_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("PALEYLAB_Q_CAP", "10")
        rc, _, err = run(capsys, "field", "2", "4")
        assert rc == 2
        assert "cap" in err

    def test_flag_overrides_env(self, capsys, monkeypatch):
        monkeypatch.setenv("PALEYLAB_Q_CAP", "10")
        rc, _, _ = run(capsys, "field", "2", "4", "--q-cap", "100")
        assert rc == 0

    def test_graph_cap(self, capsys):
        rc, _, err = run(capsys, "graph", "paley", "13", "--q-cap", "10")
        assert rc == 2

    def test_survey_cap(self, capsys):
        rc, _, err = run(
            capsys, "survey", "--q-range", "3..50", "--m-range", "3..3", "--q-cap", "20"
        )
        assert rc == 2

    def test_config_validation(self):
        with pytest.raises(ValueError):
            Config(q_cap=0)
        with pytest.raises(ValueError):
            Config(output_format="yaml")


class TestPropParsing:
    def test_mixed_list(self):
        props = parse_props("srg,ec:3,pmnk:1,1,1,regular")
        assert props == [
            ("srg", ()), ("ec", (3,)), ("pmnk", (1, 1, 1)), ("regular", ()),
        ]

    def test_truncated_pmnk(self):
        with pytest.raises(ValueError):
            parse_props("pmnk:1,1")
