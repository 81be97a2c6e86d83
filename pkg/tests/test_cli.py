import json
import subprocess
import sys

import pytest

from crordinal.cli import main
from crordinal.generators import generate_complete, generate_cycle, generate_path
from crordinal.graphio import format_dot, format_edge_list


@pytest.fixture
def graphs(tmp_path):
    out = {}
    for name, G, fmt in [("p5", generate_path(5), format_edge_list), ("k2", generate_complete(2), format_edge_list),
                         ("c4", generate_cycle(4), format_dot)]:
        f = tmp_path / f"{name}.txt"
        f.write_text(fmt(G))
        out[name] = str(f)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


class TestSolve:
    def test_path(self, capsys, graphs):
        code, out, _ = run(capsys, "solve", "--graph", graphs["p5"])
        assert code == 0 and "eta(G)=2" in out and "rho(G)=4" in out

    def test_pair(self, capsys, graphs):
        code, out, _ = run(capsys, "solve", "--graph", graphs["k2"], "--pair", "0", "1")
        assert code == 0 and out.strip() == "1"

    def test_cycle_is_robber_win_everywhere(self, capsys, graphs):
        code, out, _ = run(capsys, "solve", "--graph", graphs["c4"], "--format", "structured")
        data = json.loads(out)
        assert code == 0 and data["eta_per_cop_start"] == ["ROBBER_WINS"] * 4

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", "--graph", str(tmp_path / "none.txt"))
        assert code == 2 and "cannot read" in err

    def test_parse_error_has_line(self, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("a b\na b c\n")
        code, _, err = run(capsys, "solve", "--graph", str(f))
        assert code == 2 and "line 2" in err


class TestOtherFiniteCommands:
    def test_dismantle(self, capsys, graphs):
        assert run(capsys, "dismantle", "--graph", graphs["c4"])[1].strip() == "NOT_DISMANTLABLE"
        code, out, _ = run(capsys, "dismantle", "--graph", graphs["p5"])
        assert code == 0 and sorted(out.split()) == ["0", "1", "2", "3", "4"]

    def test_gen_round_trips_through_solve(self, capsys, tmp_path):
        f = tmp_path / "t.dot"
        code, _, _ = run(capsys, "gen", "truncation", "3", "--tail", "1", "--graph-format", "dot", "--out", str(f))
        assert code == 0 and f.read_text().startswith("graph")
        code, out, _ = run(capsys, "solve", "--graph", str(f), "--pair", "T(2)", "(0,0)")
        assert code == 0 and out.strip() == "2"

    def test_gen_random_is_seeded(self, capsys):
        a = run(capsys, "gen", "random", "8", "--seed", "4")[1]
        b = run(capsys, "gen", "random", "8", "--seed", "4")[1]
        assert a == b

    def test_gen_bad_size(self, capsys):
        assert run(capsys, "gen", "cycle", "2")[0] == 2


class TestSymbolicCommands:
    def test_rho(self, capsys):
        assert run(capsys, "rho", "--gamma", "w^2", "--tail", "5")[1].strip() == "w^2+5"
        assert run(capsys, "rho", "--gamma", "w^w", "--no-diagonal")[1].strip() == "w^w"

    def test_eta(self, capsys):
        code, out, _ = run(capsys, "eta", "--gamma", "w^2", "--u", "(w,w)", "--v", "(3,7)")
        assert code == 0 and out.strip() == "exact w^2"
        code, out, _ = run(capsys, "eta", "--gamma", "w", "--u", "(5,5)", "--v", "(2,3)")
        assert out.strip() == "exact w+1"

    def test_bad_vertex(self, capsys):
        code, _, err = run(capsys, "eta", "--gamma", "w", "--u", "(w_invalid)", "--v", "(1,1)")
        assert code == 2 and "--u" in err
        assert run(capsys, "eta", "--gamma", "w", "--u", "(w,1)", "--v", "(1,1)")[0] == 2

    def test_bad_gamma(self, capsys):
        assert run(capsys, "rho", "--gamma", "w+1")[0] == 2
        assert run(capsys, "rho", "--gamma", "w", "--tail", "2", "--no-diagonal")[0] == 2

    def test_certify(self, capsys):
        code, out, _ = run(capsys, "certify", "--gamma", "w^2", "--u", "(w,5)", "--v", "(w+1,0)")
        assert code == 0 and out.startswith("PASS")
        code, out, _ = run(capsys, "certify", "--gamma", "w", "--u", "(5,5)", "--v", "(2,3)", "--lemma", "grid-upper")
        assert code == 1 and out.startswith("FAIL")

    def test_certify_hypothesis_mismatch(self, capsys):
        assert run(capsys, "certify", "--gamma", "w", "--u", "(2,3)", "--v", "(9,0)", "--lemma", "x-axis")[0] == 2

    def test_simulate(self, capsys):
        code, out, _ = run(capsys, "simulate", "--gamma", "w", "--cop", "(0,0)", "--robber", "(3,3)",
                           "--robber-policy", "stay")
        assert code == 0 and "captured after" in out.splitlines()[-1]

    def test_simulate_same_start(self, capsys):
        assert run(capsys, "simulate", "--gamma", "w", "--cop", "(1,1)", "--robber", "(1,1)")[0] == 2

    def test_ord(self, capsys):
        assert run(capsys, "ord", "w*2+5 + w")[1].strip() == "w*3"
        assert run(capsys, "ord", "w^")[0] == 2


class TestVerify:
    def test_writes_report(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        table = tmp_path / "r.txt"
        code, stdout, _ = run(capsys, "verify", "--suite", "paths", "--out", str(out), "--table", str(table))
        assert code == 0
        data = json.loads(out.read_text())
        assert data["exit_code"] == 0 and "paths" in data["suites"]
        assert "exit code 0" in table.read_text() and "paths" in stdout

    def test_bad_config_leaves_no_report(self, capsys, tmp_path):
        cfg = tmp_path / "c.cfg"
        cfg.write_text("gammas = 5\n")
        out = tmp_path / "r.json"
        code, _, err = run(capsys, "verify", "--suite", "paths", "--config", str(cfg), "--out", str(out))
        assert code == 2 and not out.exists() and "configuration" in err

    def test_unknown_suite_is_usage_error(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        assert run(capsys, "verify", "--suite", "nope", "--out", str(out))[0] == 2
        assert not out.exists()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "crordinal", "ord", "1 + w"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "w"


def test_no_subcommand(capsys):
    assert main([]) == 2
