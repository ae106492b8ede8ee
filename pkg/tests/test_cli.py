import json

import pytest

from fairalloc import canonical_scenario, scenario_to_dict
from fairalloc.cli import main


def write_config(tmp_path, r_values=(30.0, 60.0), name="canonical.json"):
    path = tmp_path / name
    doc = scenario_to_dict(canonical_scenario(r_values=r_values))
    path.write_text(json.dumps(doc, indent=2))
    return path


def read_csv(path):
    header, *rows = path.read_text().splitlines()
    return header.split(","), [line.split(",") for line in rows]


class TestRun:
    def test_writes_summary_and_trajectories(self, tmp_path):
        cfg = write_config(tmp_path, r_values=(60.0,))
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "summary.csv")
        assert header == ["R", "user_id", "final_rate", "final_utility", "final_price", "iterations", "status"]
        assert len(rows) == 6
        assert {row[1] for row in rows} == {"Sig1", "Sig2", "Sig3", "Log1", "Log2", "Log3"}
        assert all(row[6] == "converged" for row in rows)
        total = sum(float(row[2]) for row in rows)
        price = float(rows[0][4])
        assert abs(total - 60.0) <= 6 * 0.001 / price

    def test_trajectory_rows_are_bid_consistent(self, tmp_path):
        cfg = write_config(tmp_path, r_values=(60.0,))
        out = tmp_path / "out"
        main(["run", "--config", str(cfg), "--out", str(out)])
        header, rows = read_csv(out / "traj_R60.csv")
        assert header == ["n", "price", "user_id", "bid", "rate"]
        iterations = int(rows[-1][0])
        assert len(rows) == 6 * iterations
        for n, price, _, bid, rate in rows:  # re-checkable from the file alone
            assert float(bid) == float(price) * float(rate)

    def test_rate_override_replaces_config_values(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out), "--R", "65"]) == 0
        assert (out / "traj_R65.csv").exists()
        assert not (out / "traj_R30.csv").exists()
        _, rows = read_csv(out / "summary.csv")
        assert {row[0] for row in rows} == {"65.0"}

    def test_byte_identical_reruns(self, tmp_path):
        cfg = write_config(tmp_path, r_values=(30.0, 60.0))
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["run", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["run", "--config", str(cfg), "--out", str(out2)]) == 0
        for name in ("summary.csv", "traj_R30.csv", "traj_R60.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_bad_utility_type_exits_2(self, tmp_path, capsys):
        doc = scenario_to_dict(canonical_scenario(r_values=(60.0,)))
        doc["users"][0]["type"] = "sigmoidal"
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps(doc))
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "out")]) == 2
        assert "users[0].type" in capsys.readouterr().err

    def test_empty_users_exits_2(self, tmp_path, capsys):
        doc = scenario_to_dict(canonical_scenario(r_values=(60.0,)))
        doc["users"] = []
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps(doc))
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "out")]) == 2

    def test_missing_config_exits_2(self, tmp_path, capsys):
        assert main(["run", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path / "out")]) == 2

    def test_allocation_failure_exits_3_naming_the_rate(self, tmp_path, capsys):
        doc = {
            "name": "starved",
            "users": [{"id": "lone", "type": "log", "params": {"k": 0.5, "r_max": 100}}],
            "R_values": [1e12],
        }
        cfg = tmp_path / "starved.json"
        cfg.write_text(json.dumps(doc))
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "out")]) == 3
        assert "1000000000000" in capsys.readouterr().err


class TestCurves:
    def test_samples_the_unit_grid(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["curves", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "curves.csv")
        assert header == ["r", "user_id", "utility", "dlogU"]
        assert len(rows) == 101 * 6
        at_zero = [row for row in rows if row[0] == "0.0"]
        assert len(at_zero) == 6
        assert all(row[2] == "0.0" for row in at_zero)  # U(0) = 0
        assert all(row[3] == "" for row in at_zero)  # slope diverges at 0
        log1_at_100 = [row for row in rows if row[0] == "100.0" and row[1] == "Log1"]
        assert log1_at_100[0][2] == "1.0"  # U(r_max) = 1

    def test_slope_column_parses_beyond_zero(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        main(["curves", "--config", str(cfg), "--out", str(out)])
        _, rows = read_csv(out / "curves.csv")
        beyond = [row for row in rows if row[0] != "0.0"]
        assert all(float(row[3]) > 0.0 for row in beyond)


class TestFit:
    def test_reproduces_the_video_fit(self, capsys):
        assert main(["fit", "200", "0.05", "740", "0.99"]) == 0
        out = capsys.readouterr().out.strip()
        fields = dict(part.split("=") for part in out.split(" "))
        assert set(fields) == {"a", "b", "c", "d"}
        assert abs(float(fields["a"]) - 0.174) <= 0.001
        assert float(fields["b"]) == 470.0

    def test_swapped_points_exit_2(self, capsys):
        assert main(["fit", "740", "0.05", "200", "0.99"]) == 2
        assert "r_low" in capsys.readouterr().err

    def test_symmetric_points_print_the_midpoint(self, capsys):
        assert main(["fit", "50", "0.2", "150", "0.8"]) == 0
        out = capsys.readouterr().out.strip()
        fields = dict(part.split("=") for part in out.split(" "))
        assert float(fields["b"]) == 100.0


class TestUsage:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_required_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--out", "somewhere"])
        assert exc.value.code == 2

    def test_malformed_rate_list_exits_2(self, tmp_path):
        cfg = write_config(tmp_path)
        with pytest.raises(SystemExit) as exc:
            main(["run", "--config", str(cfg), "--out", str(tmp_path / "o"), "--R", "30;60"])
        assert exc.value.code == 2
