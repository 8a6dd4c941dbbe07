import json
from itertools import permutations

import pytest

from app.cli.router import ExitCode
from app.crud.crud_permset import write_perm_set
from app.main import main
from app.models.permutation import PermSet


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.splitlines()


@pytest.fixture
def positive_certificate(tmp_path, capsys):
    path = tmp_path / "row.json"
    code, out = _run(capsys, "dual-solve", "--l0", "0", "--k0", "19", "--c", "149/100", "--out", str(path))
    assert code == ExitCode.SUCCESS
    assert out[-1] == "verdict positive"
    return path


def test_dual_solve_then_verify(capsys, positive_certificate):
    code, out = _run(capsys, "--threads", "2", "dual-verify", str(positive_certificate))
    assert code == ExitCode.SUCCESS
    assert out[0].startswith("objective ")
    assert out[-1] == "verdict positive"


def test_edited_certificate_fails_verification(capsys, positive_certificate):
    document = json.loads(positive_certificate.read_text())
    document["objective"] = "1000"
    positive_certificate.write_text(json.dumps(document))
    code, out = _run(capsys, "dual-verify", str(positive_certificate))
    assert code == ExitCode.VERIFICATION_FAILED
    assert out[-1] == "verdict infeasible objective-mismatch"


def test_truncated_certificate_is_invalid_input(capsys, positive_certificate):
    text = positive_certificate.read_text()
    positive_certificate.write_text(text[: len(text) // 3])
    code, _ = _run(capsys, "dual-verify", str(positive_certificate))
    assert code == ExitCode.INVALID_INPUT


def test_nonpositive_row(capsys, tmp_path):
    code, out = _run(capsys, "dual-solve", "--l0", "0", "--c", "199/100", "--out", str(tmp_path / "c.json"))
    assert code == ExitCode.NONPOSITIVE
    assert out[-1] == "verdict nonpositive"


def test_construct_counts_without_materializing(capsys):
    code, out = _run(capsys, "construct", "--n", "8", "--kind", "indep-pow2")
    assert code == ExitCode.SUCCESS
    assert out == ["size 192", "target 192"]


def test_construct_and_verify_coloring(capsys, tmp_path):
    path = tmp_path / "colors.txt"
    code, out = _run(capsys, "construct", "--n", "4", "--kind", "coloring-pow2", "--verify", "--out", str(path))
    assert code == ExitCode.SUCCESS
    assert out == ["palette 6", "target 6", "verified"]
    assert path.read_text().splitlines()[0] == "4"


def test_construct_verify_limit(capsys):
    code, _ = _run(capsys, "construct", "--n", "8", "--kind", "indep", "--verify")
    assert code == ExitCode.INVALID_INPUT


def test_brute_alpha(capsys):
    code, out = _run(capsys, "brute", "--n", "4", "--alpha")
    assert code == ExitCode.SUCCESS
    assert out[0] == "alpha 4"
    assert out[1] == "1 2 3 4"
    assert len(out) == 5


def test_brute_parseval_and_edges(capsys, tmp_path, symmetric_group_5):
    path = write_perm_set(symmetric_group_5, tmp_path / "s5.txt")
    code, out = _run(capsys, "brute", "--n", "5", "--parseval", str(path), "--ell", "0")
    assert code == ExitCode.SUCCESS
    assert out == ["direct 2880", "spectral 2880", "equal"]
    code, out = _run(capsys, "brute", "--n", "5", "--edges", str(path), "--ell", "1")
    assert code == ExitCode.SUCCESS
    assert out == ["edges 3600"]


def test_brute_increment(capsys, tmp_path, klein_four):
    path = write_perm_set(klein_four, tmp_path / "klein.txt")
    code, out = _run(capsys, "brute", "--n", "4", "--increment", str(path), "--c0", "3/2")
    assert code == ExitCode.SUCCESS
    assert int(out[0].split()[1]) % 2 == 1


def test_brute_rejects_mismatched_ground_set(capsys, tmp_path):
    path = write_perm_set(PermSet(n=3, elements=list(permutations(range(3)))), tmp_path / "s3.txt")
    code, _ = _run(capsys, "brute", "--n", "5", "--edges", str(path), "--ell", "0")
    assert code == ExitCode.INVALID_INPUT


def test_lp_export(capsys, tmp_path):
    code, out = _run(capsys, "lp-export", "--family", "1", "--n", "5", "--l0", "0", "--out", str(tmp_path / "a.lp"))
    assert code == ExitCode.SUCCESS
    assert out[0] == "variables 9"
    code, out = _run(capsys, "lp-export", "--family", "dual", "--l0", "0", "--k0", "3")
    assert code == ExitCode.SUCCESS
    assert out[0] == "LP dual params l0=0 k0=3 m0=6 c=3/2"
    assert sum(line.startswith("restriction[") for line in out) == 3


def test_char(capsys):
    code, out = _run(capsys, "char", "--lambda", "2,1", "--mu", "3")
    assert code == ExitCode.SUCCESS
    assert out == ["-1"]


@pytest.mark.parametrize(
    "argv",
    [
        ["dual-solve", "--l0", "0", "--c", "1.49"],
        ["dual-solve", "--l0", "1", "--c", "3/2"],
        ["brute", "--n", "4"],
        ["brute", "--n", "4", "--alpha", "--edges", "x.txt"],
        ["char", "--lambda", "2,1", "--mu", "2"],
        ["lp-export", "--family", "1", "--l0", "0"],
        ["nonsense"],
    ],
)
def test_invalid_input(capsys, argv):
    assert main(argv) == ExitCode.INVALID_INPUT
