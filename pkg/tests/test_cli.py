import json
import subprocess
import sys

import pytest

from qwbrauer.cli import CliConfig, run
from qwbrauer.errors import DomainError


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gram_det_example(capsys):
    code, out, _ = invoke(capsys, "gram-det", "--r", "2", "--t", "2", "--f", "1", "--shape", "1|1")
    assert code == 0 and out.strip() == "q^-4 * [d]^2 * [d-2] * [d+2]"


def test_gram_det_norms_listed(capsys):
    code, out, _ = invoke(capsys, "gram-det", "--r", "2", "--t", "2", "--f", "1", "--shape", "1|1", "--norms")
    assert code == 0 and len(out.strip().splitlines()) == 5


def test_dims_example(capsys):
    assert invoke(capsys, "dims", "--r", "2", "--t", "2", "--f", "1", "--shape", "1|1")[:2] == (0, "4\n")


def test_blocks_example(capsys):
    code, out, _ = invoke(capsys, "blocks", "--r", "1", "--t", "1", "--params", "e=2,p=0,n=0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["classes"]) == 1 and len(data["classes"][0]) == 2


def test_gram_table(capsys):
    code, out, _ = invoke(capsys, "gram-table", "--r", "1", "--t", "1", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["determinant"] for r in rows] == ["1", "[d]"]
    assert all(r["in_base_ring"] for r in rows)
    code, out, _ = invoke(capsys, "gram-table", "--r", "2", "--t", "0")
    assert {line.split()[1] for line in out.strip().splitlines()} == {"2|-", "1,1|-"}


def test_gram_table_bound(capsys, tmp_path):
    code, _, err = invoke(capsys, "gram-table", "--r", "4", "--t", "4")
    assert code == 1 and "bound" in err
    cfg = tmp_path / "qwb.cfg"
    cfg.write_text("bound = 2\nformat = json\n")
    code, _, _ = invoke(capsys, "gram-table", "--r", "2", "--t", "1", "--config", str(cfg))
    assert code == 1
    code, out, _ = invoke(capsys, "gram-table", "--r", "1", "--t", "1", "--config", str(cfg))
    assert code == 0 and isinstance(json.loads(out), list)


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(DomainError):
        CliConfig.load(str(cfg))


def test_gamma(capsys):
    code, out, _ = invoke(capsys, "gamma", "--r", "1", "--t", "1", "--f", "1", "--shape=-|-", "--mu", "1|-", "--mu-f", "0")
    assert code == 0 and out.strip() == "[d]"


def test_updown(capsys):
    code, out, _ = invoke(capsys, "updown", "--r", "2", "--t", "2", "--f", "1", "--shape", "1|1", "--format", "json")
    assert code == 0 and len(json.loads(out)["tableaux"]) == 4


def test_simple_head(capsys):
    code, out, _ = invoke(capsys, "simple-head", "--r", "2", "--t", "2", "--f", "1", "--shape", "1|1",
                          "--params", "e=inf,p=0,n=2")
    assert code == 0 and out.startswith("not simple")
    code, out, _ = invoke(capsys, "simple-head", "--r", "2", "--t", "2", "--f", "1", "--shape", "1|1",
                          "--params", "e=inf,p=0,n=5")
    assert out.strip() == "simple head"


def test_qdim(capsys):
    code, out, _ = invoke(capsys, "qdim", "--shape", "1", "--n", "2")
    assert code == 0 and out.splitlines() == ["[d]", "rho = q^2: q^-1 + q"]


def test_residue_check(capsys):
    code, out, _ = invoke(capsys, "residue-check", "--r", "2")
    assert code == 0 and "all agree" in out


@pytest.mark.parametrize("argv", [
    ["dims", "--r", "2", "--t", "2", "--f", "1", "--shape", "2|1"],
    ["dims", "--r", "2"],
    ["blocks", "--r", "3", "--t", "1", "--params", "e=3,p=0,n=0"],
    ["blocks", "--r", "1", "--t", "1", "--params", "e=oops"],
    ["qdim", "--shape", "1|1"],
    ["nonsense"],
    ["dims", "--r", "x"],
])
def test_domain_and_usage_errors_exit_1(capsys, argv):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_output_file(capsys, tmp_path):
    target = tmp_path / "det.txt"
    code, out, _ = invoke(capsys, "gram-det", "--r", "1", "--t", "1", "--f", "1", "--shape=-|-", "--output", str(target))
    assert code == 0 and out == "" and target.read_text(encoding="utf-8") == "[d]\n"


def test_output_is_deterministic(capsys):
    argv = ["gram-table", "--r", "2", "--t", "2", "--format", "json"]
    first = invoke(capsys, *argv)[1]
    second = invoke(capsys, *argv)[1]
    assert first == second


def test_selftest_quick_via_subprocess():
    proc = subprocess.run([sys.executable, "-m", "qwbrauer.cli", "selftest", "--quick"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 12
    assert all(line.startswith("PASS") for line in lines if not line.startswith("FAIL 11b"))
