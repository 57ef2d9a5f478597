import json
import socket
import subprocess
import sys
import time
import urllib.request

import numpy as np
import pytest

from softrisk.cli import main

from conftest import SIX_EXPERT_PANEL


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def panel_file(tmp_path):
    panel = [
        {
            "expert_id": f"expert-{i + 1}",
            "params": {"low": low, "median": median, "high": high, "phi": phi},
        }
        for i, (low, median, high, phi) in enumerate(SIX_EXPERT_PANEL)
    ]
    return write_json(tmp_path / "panel.json", panel)


class TestEval:
    def test_pdf_and_cdf_at_x(self, capsys):
        code, out, _ = run_cli(
            ["eval", "--low", "20", "--median", "40", "--high", "80", "--phi", "1", "--x", "60"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "pdf 0.00625"
        assert lines[1].startswith("cdf ")

    def test_quantile(self, capsys):
        code, out, _ = run_cli(
            ["eval", "--low", "20", "--median", "40", "--high", "80", "--phi", "1", "--q", "0.5"],
            capsys,
        )
        assert code == 0
        assert out == "quantile 40\n"

    def test_phi_zero_exits_2(self, capsys):
        code, _, err = run_cli(
            ["eval", "--low", "20", "--median", "40", "--high", "80", "--phi", "0", "--x", "60"],
            capsys,
        )
        assert code == 2
        assert "PHI_OUT_OF_RANGE" in err

    def test_x_and_q_mutually_exclusive(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["eval", "--low", "20", "--median", "40", "--high", "80", "--phi", "1",
                  "--x", "60", "--q", "0.5"])
        assert excinfo.value.code == 2


class TestGrid:
    def test_uniform_beta(self, tmp_path, capsys):
        params = write_json(tmp_path / "b.json", {"kind": "beta", "a": 1, "b": 1})
        out_csv = tmp_path / "grid.csv"
        code, _, _ = run_cli(
            ["grid", "--params-file", params, "--n", "101", "--out", str(out_csv)], capsys
        )
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "x,density"
        assert all(line.endswith(",1") for line in lines[1:])

    def test_phi_sweep_tail_floor_decreases(self, tmp_path, capsys):
        # the family from phi = 0.1 (broadest tail) to 1.0 (sharpest)
        floors = []
        for k in range(1, 11):
            phi = k / 10.0
            params = write_json(
                tmp_path / f"p{k}.json",
                {"low": 20.0, "median": 40.0, "high": 80.0, "phi": phi},
            )
            out_csv = tmp_path / f"g{k}.csv"
            code, _, _ = run_cli(
                ["grid", "--params-file", params, "--n", "1001", "--out", str(out_csv)], capsys
            )
            assert code == 0
            last = out_csv.read_text().splitlines()[-1]
            floors.append(float(last.split(",")[1]))
        assert all(a > b for a, b in zip(floors, floors[1:]))
        assert floors[-1] == 0.0

    def test_rejects_coarse_grid(self, tmp_path, capsys):
        params = write_json(tmp_path / "p.json", {"low": 0, "median": 1, "high": 2, "phi": 1})
        code, _, err = run_cli(
            ["grid", "--params-file", params, "--n", "32", "--out", str(tmp_path / "g.csv")],
            capsys,
        )
        assert code == 2
        assert "GRID_TOO_COARSE" in err

    def test_byte_stable(self, tmp_path, capsys):
        params = write_json(tmp_path / "p.json", {"low": 20, "median": 40, "high": 80, "phi": 0.3})
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli(["grid", "--params-file", params, "--n", "501", "--out", str(a)], capsys)
        run_cli(["grid", "--params-file", params, "--n", "501", "--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()


class TestAggregate:
    def test_panel_reports_modes(self, tmp_path, capsys):
        out_csv = tmp_path / "pooled.csv"
        code, out, _ = run_cli(
            ["aggregate", "--panel-file", panel_file(tmp_path), "--out", str(out_csv)], capsys
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("modes ")
        assert int(lines[0].split()[1]) >= 2
        assert out_csv.read_text().splitlines()[0] == "x,density"

    def test_single_expert_single_mode(self, tmp_path, capsys):
        panel = [{"expert_id": "solo", "params": {"low": 20, "median": 40, "high": 80, "phi": 1}}]
        code, out, _ = run_cli(
            [
                "aggregate",
                "--panel-file", write_json(tmp_path / "solo.json", panel),
                "--out", str(tmp_path / "pooled.csv"),
            ],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "modes 1"
        assert abs(float(lines[1].split()[1]) - 40.0) <= 0.06

    def test_empty_panel_exits_2(self, tmp_path, capsys):
        code, _, err = run_cli(
            [
                "aggregate",
                "--panel-file", write_json(tmp_path / "empty.json", []),
                "--out", str(tmp_path / "pooled.csv"),
            ],
            capsys,
        )
        assert code == 2
        assert "EMPTY_PANEL" in err

    def test_weighted_flag(self, tmp_path, capsys):
        panel = [
            {"expert_id": "a", "params": {"low": 0, "median": 1, "high": 3, "phi": 1}, "weight": 3},
            {"expert_id": "b", "params": {"low": 2, "median": 3, "high": 4, "phi": 1}, "weight": 1},
        ]
        f = write_json(tmp_path / "p.json", panel)
        plain, weighted = tmp_path / "plain.csv", tmp_path / "weighted.csv"
        run_cli(["aggregate", "--panel-file", f, "--out", str(plain)], capsys)
        run_cli(["aggregate", "--panel-file", f, "--weighted", "--out", str(weighted)], capsys)
        assert plain.read_bytes() != weighted.read_bytes()


class TestRisk:
    def test_uniform_product_oracle(self, tmp_path, capsys):
        c = write_json(tmp_path / "c.json", {"low": 0.99, "median": 0.995, "high": 1.0, "phi": 1})
        v = write_json(tmp_path / "v.json", {"kind": "beta", "a": 1, "b": 1})
        t = write_json(tmp_path / "t.json", {"kind": "beta", "a": 1, "b": 1})
        out_csv = tmp_path / "risk.csv"
        code, _, _ = run_cli(
            ["risk", "--c", c, "--v", v, "--t", t, "--n", "2001", "--out", str(out_csv)], capsys
        )
        assert code == 0
        rows = [line.split(",") for line in out_csv.read_text().splitlines()[1:]]
        ts = np.array([float(r[0]) for r in rows])
        cdf = np.array([float(r[1]) for r in rows])
        assert float(np.interp(0.5, ts, cdf)) == pytest.approx(0.8466, abs=0.02)

    def test_all_spikes_step_near_one(self, tmp_path, capsys):
        spike = {"low": 0.99, "median": 0.995, "high": 1.0, "phi": 1}
        files = [write_json(tmp_path / f"{name}.json", spike) for name in "cvt"]
        out_csv = tmp_path / "risk.csv"
        code, _, _ = run_cli(
            ["risk", "--c", files[0], "--v", files[1], "--t", files[2],
             "--n", "1001", "--out", str(out_csv)],
            capsys,
        )
        assert code == 0
        rows = [line.split(",") for line in out_csv.read_text().splitlines()[1:]]
        ts = np.array([float(r[0]) for r in rows])
        cdf = np.array([float(r[1]) for r in rows])
        assert float(np.interp(0.9, ts, cdf)) <= 0.01
        assert cdf[-1] == pytest.approx(1.0, abs=1e-9)

    def test_negative_support_exits_2(self, tmp_path, capsys):
        xs = np.linspace(-0.2, 1.0, 101)
        bad = write_json(
            tmp_path / "bad.json",
            {"kind": "grid", "x": xs.tolist(), "density": [1.0] * 101},
        )
        ok = write_json(tmp_path / "ok.json", {"kind": "beta", "a": 1, "b": 1})
        code, _, err = run_cli(
            ["risk", "--c", bad, "--v", ok, "--t", ok, "--out", str(tmp_path / "r.csv")], capsys
        )
        assert code == 2
        assert "NEGATIVE_SUPPORT" in err


class TestServe:
    def test_serves_and_answers(self, tmp_path):
        with socket.socket() as probe:
            probe.bind(("127.0.0.1", 0))
            port = probe.getsockname()[1]
        data_dir = tmp_path / "fresh" / "data"
        proc = subprocess.Popen(
            [
                sys.executable, "-m", "softrisk.cli",
                "serve", "--port", str(port), "--data-dir", str(data_dir),
            ],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            deadline = time.time() + 15.0
            status = None
            while time.time() < deadline:
                try:
                    urllib.request.urlopen(f"http://127.0.0.1:{port}/api/v1/sessions/ghost")
                except urllib.error.HTTPError as exc:
                    status = exc.code
                    break
                except OSError:
                    time.sleep(0.1)
            assert status == 404
            assert data_dir.is_dir()
        finally:
            proc.terminate()
            proc.wait(timeout=10)
