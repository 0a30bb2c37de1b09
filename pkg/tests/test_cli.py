"""End-to-end CLI tests: exit codes, JSON round-trips, atlas, SVG."""

import json
from fractions import Fraction

import pytest

from hotelling.cli import main
from hotelling.serialize import parse_profile_document

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


class TestConstruct:
    def test_pure_odd_game(self, capsys):
        code, doc, _ = run_json(capsys, "construct", "--game", "1,2,2", "--kind", "pure")
        assert code == 0
        assert doc["strategies"] == [["1/2"], ["1/6", "5/6"], ["1/6", "5/6"]]

    def test_mixed_dominant_game(self, capsys, tmp_path):
        out = tmp_path / "profile.json"
        code, _, _ = run(
            capsys, "construct", "--game", "1,1,4", "--kind", "mixed", "--out", str(out)
        )
        assert code == 0
        code, payoffs, _ = run_json(capsys, "payoff", "--profile", str(out))
        assert code == 0 and payoffs == ["1/8", "1/8", "3/4"]

    def test_pure_unavailable(self, capsys):
        code, out, err = run(capsys, "construct", "--game", "1,2", "--kind", "pure")
        assert code == 3 and "construction unavailable" in err

    def test_two_player_kind(self, capsys):
        code, doc, _ = run_json(
            capsys, "construct", "--game", "2,4", "--kind", "two-player"
        )
        assert code == 0
        assert len(doc["mixed_strategies"][0]) == 6
        assert doc["mixed_strategies"][1] == [
            {"strategy": ["1/8", "3/8", "5/8", "7/8"], "prob": "1/1"}
        ]

    def test_bad_game_string(self, capsys):
        code, _, err = run(capsys, "construct", "--game", "1,x", "--kind", "pure")
        assert code == 2 and "input error" in err


class TestVerify:
    def test_constructed_profile_passes(self, capsys, tmp_path):
        out = tmp_path / "even.json"
        run(capsys, "construct", "--game", "2,2", "--kind", "pure", "--out", str(out))
        code, doc, err = run_json(capsys, "verify", "--profile", str(out))
        assert code == 0 and doc["verdict"] is True
        assert "[pass]" in err

    def test_unequal_masses_detected(self, capsys, tmp_path):
        doc = {
            "game": {"counts": [1, 1, 2, 2]},
            "strategies": [["1/7"], ["4/7"], ["3/7", "6/7"], ["1/7", "6/7"]],
        }
        path = tmp_path / "s4.json"
        path.write_text(json.dumps(doc))
        code, report, _ = run_json(capsys, "verify", "--profile", str(path))
        assert code == 1 and report["verdict"] is False
        failing = {c["id"]: c for c in report["conditions"] if not c["passed"]}
        assert set(failing) == {"T4-2"}
        assert failing["T4-2"]["witness"]["player"] == 2
        # a failing pure profile also carries a concrete beneficial deviation
        deviation = report["deviation"]
        assert deviation["player"] == 2
        assert F(deviation["gain"]) > 0
        assert all(w["side"] in ("below", "exact", "above") for w in deviation["witness"])

    def test_malformed_rational(self, capsys, tmp_path):
        doc = {"game": {"counts": [1, 1]}, "strategies": [["1/0"], ["1/2"]]}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        code, _, err = run(capsys, "verify", "--profile", str(path))
        assert code == 2
        assert "strategies[0][0]" in err


class TestScalarCommands:
    def test_midpoint_payoff(self, capsys, tmp_path):
        doc = {"game": {"counts": [1, 1]}, "strategies": [["1/2"], ["1/2"]]}
        path = tmp_path / "mid.json"
        path.write_text(json.dumps(doc))
        code, payoffs, _ = run_json(capsys, "payoff", "--profile", str(path))
        assert code == 0 and payoffs == ["1/2", "1/2"]

    def test_social_cost(self, capsys):
        code, value, _ = run_json(capsys, "social-cost", "--locations", "1/6,1/2,5/6")
        assert code == 0 and value == "1/12"

    def test_full_mass_report(self, capsys, tmp_path):
        doc = {"game": {"counts": [1, 1]}, "strategies": [["1/4"], ["3/4"]]}
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(doc))
        code, report, _ = run_json(capsys, "payoff", "--profile", str(path), "--full")
        assert code == 0
        assert report["payoffs"] == ["1/2", "1/2"]
        assert report["facilities"][0] == {
            "player": 0,
            "slot": 0,
            "position": "1/4",
            "mass": "1/2",
            "left": "1/4",
            "right": "1/4",
        }

    def test_best_response_inline(self, capsys):
        code, doc, _ = run_json(capsys, "best-response", "--against", "1/4", "--m", "1")
        assert code == 0
        assert doc["sup"] == "3/4" and doc["attained"] is False
        assert doc["witness"] == [{"position": "1/4", "side": "above"}]

    def test_best_response_grid_cross_check(self, capsys):
        code, doc, _ = run_json(
            capsys, "best-response", "--against", "1/4", "--m", "1", "--grid", "100"
        )
        assert code == 0
        assert F(doc["grid_max"]) <= F(doc["sup"])

    def test_capped_search_exit_code(self, capsys):
        code, doc, _ = run_json(
            capsys,
            "best-response",
            "--against", "1/17,2/17,3/17,4/17,5/17,6/17,7/17,8/17,9/17,10/17",
            "--m", "4",
            "--cap", "50",
        )
        assert code == 4 and doc["exhaustive"] is False


class TestAtlas:
    def test_small_table(self, capsys):
        code, doc, _ = run_json(capsys, "atlas", "--max-n", "3")
        assert code == 0
        rows = {tuple(r["counts"]): r for r in doc["games"]}
        assert rows[(1, 1)]["pure_exists"] is True
        assert rows[(1, 2)]["pure_exists"] is False
        assert rows[(1, 1, 1)]["pure_exists"] is False

    def test_four_facility_classification(self, capsys):
        code, doc, _ = run_json(capsys, "atlas", "--max-n", "4")
        rows = {tuple(r["counts"]): r for r in doc["games"]}
        assert rows[(1, 3)]["pure_exists"] is False
        assert rows[(2, 2)]["pure_exists"] is True
        assert rows[(1, 1, 2)]["pure_exists"] is True
        assert rows[(1, 1, 1, 1)]["pure_exists"] is True
        assert rows[(2, 2)]["verified"] is True

    def test_dominant_game_has_partition_plan(self, capsys):
        code, doc, _ = run_json(capsys, "atlas", "--max-n", "6")
        rows = {tuple(r["counts"]): r for r in doc["games"]}
        row = rows[(1, 1, 4)]
        assert row["pure_exists"] is False
        assert row["partition_plan"] == {
            "b": [2, 2],
            "blocks": [["1/8", "3/8"], ["5/8", "7/8"]],
        }

    def test_svg_and_csv_outputs(self, capsys, tmp_path):
        svg_dir = tmp_path / "plots"
        csv_path = tmp_path / "atlas.csv"
        code, _, _ = run(
            capsys,
            "atlas", "--max-n", "4",
            "--svg", str(svg_dir),
            "--out", str(csv_path),
        )
        assert code == 0
        assert (svg_dir / "game_2_2.svg").read_text().startswith("<svg")
        header = csv_path.read_text().splitlines()[0]
        assert header.startswith("counts,")


class TestRoundTrip:
    @pytest.mark.parametrize(
        "argv",
        [
            ("construct", "--game", "1,2,2", "--kind", "pure"),
            ("construct", "--game", "2,2,3", "--kind", "pure"),
            ("construct", "--game", "1,1,4", "--kind", "mixed"),
            ("construct", "--game", "3,4", "--kind", "two-player"),
        ],
    )
    def test_emitted_documents_reparse(self, capsys, argv):
        code, doc, _ = run_json(capsys, *argv)
        assert code == 0
        game, profile = parse_profile_document(doc)
        from hotelling.serialize import profile_document

        assert profile_document(game, profile) == doc
