import json
import subprocess
import sys

import pytest

from semibent.cli import main, partition_text
from golden import PARTITION_M5, ORTHO_M5


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_counts(tmp_path, capsys):
    code, out, _ = run(["generate", "--construction", "1", "--m", "5", "-o", str(tmp_path),
                        "--sequences"], capsys)
    assert code == 0
    assert "64 sets x 4 sequences x length 32" in out
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["n_sets"] == 64 and man["audit"]["all_semibent"]
    lines = (tmp_path / "sequences.txt").read_text().splitlines()
    assert len(lines) == 256 and lines[0].startswith("S_{000,000} 0 ")
    code, out, _ = run(["generate", "--construction", "3", "--m", "6", "--d", "2"], capsys)
    assert code == 0 and "16 sets x 16 sequences x length 64" in out


def test_generate_rejects_bad_split(capsys):
    code, _, err = run(["generate", "--construction", "1", "--m", "4", "--s", "2", "--t", "2"],
                       capsys)
    assert code == 2 and "s < t" in err


def test_table_csv_and_figure(tmp_path, capsys):
    fig = tmp_path / "t.svg"
    code, out, _ = run(["table", "--m", "5", "--cyclic-order", "--figure", str(fig)], capsys)
    assert code == 0 and fig.read_text().startswith("<?xml")
    rows = [line.split(",") for line in out.strip().splitlines()]
    cols = [h[2:] for h in rows[0][1:]]
    for row in rows[1:]:
        c = row[0][2:]
        assert {a for a, v in zip(cols, row[1:]) if v == "1"} == ORTHO_M5[c]


def test_partition_matches_reference_layout(capsys):
    code, out, _ = run(["partition", "--m", "5"], capsys)
    assert code == 0 and out == PARTITION_M5
    assert partition_text(5) == PARTITION_M5


@pytest.mark.parametrize("name", ["m3_D4", "m5_D8", "m6_D4"])
def test_verify_builtin(name, tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(["verify", "--layout", name, "--method", "both", "-o", str(report)], capsys)
    data = json.loads(report.read_text())
    assert code == 0 and data["passes"] and "PASS" in out
    assert data["closed_form_disagreements"] == []


def test_verify_corrupted_file(tmp_path, capsys):
    run(["export", "--layout", "m5_D8", "-o", str(tmp_path)], capsys)
    path = tmp_path / "m5_D8.hex"
    lines = path.read_text().splitlines()
    body = [i for i, line in enumerate(lines) if not line.startswith("#")]
    q, r, c, a = lines[body[0]].split()
    q1, r1, _, _ = lines[body[1]].split()  # next cell in the same row
    lines[body[1]] = f"{q1} {r1} {c} {a}"
    path.write_text("\n".join(lines) + "\n")
    report = tmp_path / "r.json"
    code, _, _ = run(["verify", "--layout-file", str(path), "-o", str(report)], capsys)
    data = json.loads(report.read_text())
    assert code == 1 and not data["passes"] and data["adjacent_violations"]


def test_depth_endpoints(capsys):
    code, out, _ = run(["depth", "--construction", "2", "--m", "3", "--u", "4"], capsys)
    assert code == 0 and "endpoints: order 0 ok, order 4 ok" in out
    code, out, _ = run(["depth", "--m", "5", "--c", "011", "--alpha", "101", "--json"], capsys)
    assert code == 0 and json.loads(out)["depth"] == 1


def test_plot_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(["plot", "--layout", "m3_D4", "-o", str(a)], capsys)[0] == 0
    assert run(["plot", "--layout", "m3_D4", "-o", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"<svg" in a.read_bytes()


def test_export_family(tmp_path, capsys):
    code, _, _ = run(["export", "--construction", "2", "--m", "3", "--u", "4", "-o", str(tmp_path)],
                     capsys)
    assert code == 0
    assert {p.name for p in tmp_path.iterdir()} == {"manifest.json", "sequences.txt", "table.csv"}
    assert len((tmp_path / "sequences.txt").read_text().splitlines()) == 16 * 32


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"construction": 3, "m": 6, "d": 2}))
    code, out, _ = run(["--config", str(cfg), "generate"], capsys)
    assert code == 0 and "construction=3" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "semibent", "partition", "--m", "5"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == PARTITION_M5
