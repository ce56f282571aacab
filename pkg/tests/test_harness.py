import json

import pytest

from adaptvqe.harness import (KCAL_PER_HARTREE, ScanRow, ScanSpec, read_rows,
                              run_ordering_comparison, run_scan, summarize,
                              write_rows)
from conftest import fixture_path


def test_kcal_constant():
    assert KCAL_PER_HARTREE == 627.509474


class TestCsv:
    def test_round_trip(self, tmp_path):
        rows = [ScanRow("lih", 1.6, "fci", -7.88, 0.0, 0, 0, 0.1),
                ScanRow("lih", 1.6, "adapt(0.001)", -7.87, 6.27, 12, 12, 3.5,
                        status="ok")]
        path = tmp_path / "rows.csv"
        write_rows(path, rows)
        back = read_rows(path)
        assert back == rows

    def test_empty_methods_header_only(self, tmp_path):
        spec = ScanSpec(molecule="lih",
                        geometries=[(1.6, str(fixture_path("lih_1.60.fcidump")))],
                        methods=[])
        rows, summary = run_scan(spec)
        assert rows == [] and summary == {}
        path = tmp_path / "empty.csv"
        write_rows(path, rows)
        assert path.read_text().count("\n") == 1  # header only


class TestScanSpec:
    def test_from_json(self, tmp_path):
        fixture = fixture_path("lih_1.60.fcidump")
        doc = {"molecule": "lih",
               "geometries": [{"r": 1.6, "fcidump": str(fixture)}],
               "methods": ["hf", "fci", "adapt"],
               "epsilons": [0.1]}
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(doc))
        spec = ScanSpec.from_json(path)
        assert spec.molecule == "lih"
        assert spec.epsilons == [0.1]
        spec.validate()

    def test_validate_rejects_unknown_method(self):
        spec = ScanSpec("lih", [], methods=["dmrg"])
        with pytest.raises(ValueError, match="unknown method"):
            spec.validate()

    def test_validate_requires_epsilons_for_adapt(self):
        spec = ScanSpec("lih", [], methods=["adapt"])
        with pytest.raises(ValueError, match="epsilon"):
            spec.validate()

    def test_validate_fails_fast_on_missing_fixture(self):
        spec = ScanSpec("lih", [(1.0, "/nonexistent.fcidump")], methods=["hf"])
        with pytest.raises(FileNotFoundError):
            spec.validate()


class TestRunScan:
    def test_lih_two_points(self):
        geometries = [(1.6, str(fixture_path("lih_1.60.fcidump"))),
                      (2.39, str(fixture_path("lih_2.39.fcidump")))]
        spec = ScanSpec("lih", geometries,
                        methods=["hf", "fci", "adapt"], epsilons=[0.1])
        rows, summary = run_scan(spec)
        assert len(rows) == 6
        fci_rows = [r for r in rows if r.method == "fci"]
        assert all(r.error_vs_fci == 0.0 for r in fci_rows)
        hf_rows = [r for r in rows if r.method == "hf"]
        assert all(r.error_vs_fci > 0 for r in hf_rows)
        adapt_rows = [r for r in rows if r.method.startswith("adapt")]
        assert all(r.error_vs_fci >= -1e-6 for r in adapt_rows)
        assert all(r.status == "ok" for r in rows)
        assert summary["adapt(0.1)"]["n_geometries"] == 2

    def test_summary_shapes(self):
        rows = [ScanRow("m", 1.0, "hf", -1.0, 2.0, 0, 0, 0.0),
                ScanRow("m", 2.0, "hf", -1.0, 4.0, 0, 0, 0.0),
                ScanRow("m", 2.0, "hf", float("nan"), 0.0, 0, 0, 0.0,
                        status="ScfError: bad")]
        summary = summarize(rows)
        assert summary["hf"]["mean_abs_error_kcal"] == 3.0
        assert summary["hf"]["n_geometries"] == 2


class TestOrderingComparison:
    def test_toy_comparison_deterministic(self, toy_h3):
        c1 = run_ordering_comparison(toy_h3, max_ops=4, seeds=(0,),
                                     strategies=("adapt", "random-pqrs",
                                                 "lexical-pqrs"))
        c2 = run_ordering_comparison(toy_h3, max_ops=4, seeds=(0,),
                                     strategies=("adapt", "random-pqrs",
                                                 "lexical-pqrs"))
        assert c1["trajectories"] == c2["trajectories"]
        for label, traj in c1["trajectories"].items():
            counts = [n for n, _ in traj]
            assert counts[0] == 0
            energies = [e for _, e in traj]
            assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:])), label
        assert c1["uccsd_point"][0] > 0
