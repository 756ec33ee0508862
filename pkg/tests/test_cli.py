import csv
import io
import json

import numpy as np
import pytest

from numrad import matrixio
from numrad.blocks import BlockMatrix
from numrad.cli import main


@pytest.fixture
def swap_file(tmp_path):
    path = tmp_path / "swap.json"
    matrixio.dump(BlockMatrix.from_scalars([[0, 1], [1, 0]]), path)
    return str(path)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestBound:
    def test_swap_all_bounds_one(self, swap_file, capsys):
        assert main(["bound", swap_file, "--json"]) == 0
        out = json.loads(capsys.readouterr().out)
        for name in ("exact", "new_t", "new_half", "aok", "hou_du"):
            assert out["bounds"][name] == pytest.approx(1.0, abs=1e-9)
        assert out["ok"] is True

    def test_text_output(self, swap_file, capsys):
        assert main(["bound", swap_file]) == 0
        out = capsys.readouterr().out
        assert "hou_du" in out and "holds" in out

    def test_malformed_json(self, tmp_path, capsys):
        path = write(tmp_path, "bad.json", '{"block_dims": [1, 1],\n "blocks": [[null null]]}')
        assert main(["bound", path]) == 1
        assert "line 2" in capsys.readouterr().err

    def test_mismatched_block_dims(self, tmp_path, capsys):
        obj = {"block_dims": [1, 2], "blocks": [[matrixio.matrix_to_obj(np.eye(2)), None], [None, None]]}
        path = write(tmp_path, "mis.json", json.dumps(obj))
        assert main(["bound", path]) == 1
        assert "conformance" in capsys.readouterr().err

    def test_plain_matrix_rejected(self, tmp_path, capsys):
        path = tmp_path / "a.json"
        matrixio.dump(np.eye(2), path)
        assert main(["bound", str(path)]) == 1

    def test_missing_file(self, tmp_path, capsys):
        assert main(["bound", str(tmp_path / "none.json")]) == 1


class TestW:
    def test_identity(self, tmp_path, capsys):
        path = tmp_path / "i.json"
        matrixio.dump(np.eye(3), path)
        assert main(["w", str(path), "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["w"] == pytest.approx(1.0, abs=1e-12)

    def test_nilpotent(self, tmp_path, capsys):
        path = tmp_path / "n.json"
        matrixio.dump(np.array([[0, 1], [0, 0]]), path)
        assert main(["w", str(path), "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["w"] == pytest.approx(0.5, abs=1e-12)

    def test_tolerances_agree(self, tmp_path, capsys, rng):
        path = tmp_path / "g.json"
        matrixio.dump(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)), path)
        values = []
        for tol in ("1e-4", "1e-10"):
            assert main(["w", str(path), "--tol", tol, "--json"]) == 0
            values.append(json.loads(capsys.readouterr().out)["w"])
        assert abs(values[0] - values[1]) <= 1e-4

    def test_block_file_is_embedded(self, swap_file, capsys):
        assert main(["w", swap_file]) == 0
        assert "w = 1" in capsys.readouterr().out


class TestFuzz:
    ARGS = ["fuzz", "--seed", "42", "--count", "4", "--props", "chain,commutator,oracle"]

    def test_byte_identical(self, tmp_path, monkeypatch):
        outs = []
        for threads in ("1", "1", "8"):
            monkeypatch.setenv("NUMRAD_THREADS", threads)
            path = tmp_path / f"r{len(outs)}.json"
            assert main([*self.ARGS, "--out", str(path)]) == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1] == outs[2]

    def test_stdout_report(self, capsys):
        assert main(self.ARGS) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["ok"] is True
        assert report["config"]["seed"] == 42

    def test_violation_exits_2(self, capsys):
        assert main(["fuzz", "--count", "10", "--props", "inverted_chain"]) == 2
        report = json.loads(capsys.readouterr().out)
        assert report["violations"][0]["witness"]["M"]["block_dims"]

    def test_block_dims_flag(self, capsys):
        assert main(["fuzz", "--count", "2", "--props", "chain", "--block-dims", "1,2,1"]) == 0
        assert json.loads(capsys.readouterr().out)["config"]["block_grid"] == [3, [1, 2, 1]]

    @pytest.mark.parametrize(
        "argv",
        [
            ["fuzz", "--profile", "nightly"],
            ["fuzz", "--props", "nope", "--count", "1"],
            ["fuzz", "--count", "0"],
            ["fuzz", "--block-dims", "1,x"],
            ["frobnicate"],
        ],
    )
    def test_bad_flags(self, argv, capsys):
        assert main(argv) == 1


class TestSweep:
    def test_csv(self, tmp_path):
        path = tmp_path / "s.csv"
        assert main(["sweep", "--dims", "2", "--t-grid", "0.5", "--count", "20", "--out", str(path)]) == 0
        rows = list(csv.DictReader(io.StringIO(path.read_text())))
        assert list(rows[0]) == ["dim", "t", "bound_id", "min_gap", "median_gap", "mean_gap", "max_gap", "trials"]
        by_id = {r["bound_id"]: r for r in rows}
        for col in ("min_gap", "median_gap", "mean_gap", "max_gap"):
            a, b, c = (float(by_id[k][col]) for k in ("new_half", "aok", "hou_du"))
            assert a <= b + 1e-6 and b <= c + 1e-6

    def test_deterministic(self, capsys):
        argv = ["sweep", "--dims", "2", "--t-grid", "0,1", "--count", "5"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first

    def test_bad_t_grid(self, capsys):
        assert main(["sweep", "--t-grid", "2.0", "--count", "1"]) == 1


class TestIncomparable:
    def test_prints_both_directions(self, capsys, tmp_path):
        out_path = tmp_path / "inc.json"
        assert main(["incomparable", "--count", "500", "--out", str(out_path)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("p11 < p12: ")
        assert lines[1].startswith("p12 < p11: ")
        payload = json.loads(out_path.read_text())
        for key in ("p11_lt_p12", "p12_lt_p11"):
            assert payload[key] == "NotFound" or payload[key]["verified"] is True

    def test_not_found(self, capsys):
        assert main(["incomparable", "--kind", "unitary", "--dims", "1", "--count", "5"]) == 0
        assert capsys.readouterr().out.count("NotFound after 5 pairs") == 2
