import filecmp
import json
import subprocess
import sys

import numpy as np
import pytest

from letterfit import english, fit, fixture_manifest, io, to_ranked
from letterfit.cli import run

from conftest import US_RANKINGS, counts_from_rank_string

EN = str(fixture_manifest("en"))
ES = str(fixture_manifest("es"))


def _files(d):
    return sorted(p.name for p in d.iterdir())


def test_count(tmp_path, english_fixture):
    assert run(["count", "--manifest", EN, "--out", str(tmp_path)]) == 0
    ids = [d.id for d in english_fixture.documents]
    assert set(_files(tmp_path)) == {f"counts_{i}.tsv" for i in ids} | {
        "counts_merged.tsv", "count_diagnostics.tsv"}
    merged = io.read_counts(tmp_path / "counts_merged.tsv", english())
    assert merged.values == english_fixture.merged().values


def test_counts_roundtrip_with_space(tmp_path):
    assert run(["count", "--manifest", ES, "--lang", "es", "--keep-space",
                "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "counts_merged.tsv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "letter\tcount"
    assert lines[-2].startswith("␣\t") and lines[-1].startswith("total\t")


def test_rank_from_counts_reproduces_rank_string(tmp_path):
    label, _, ranking, num = next(t for t in US_RANKINGS if t[0] == "Obama")
    counts = counts_from_rank_string(english(), ranking, num)
    src = io.write_counts(tmp_path / "obama.tsv", counts)
    out = tmp_path / "out"
    assert run(["rank", "--counts", str(src), "--out", str(out)]) == 0
    assert (out / "rank_string.txt").read_text().strip() == "etoanrsihdlucwfmgypbvkjqxz"
    rows = (out / "ranked.tsv").read_text().splitlines()
    assert rows[0] == "rank\tletter\tcount\tfrequency"
    assert rows[1].split("\t")[:2] == ["1", "e"]


def test_fit_single_model_matches_library(tmp_path, english_fixture):
    assert run(["fit", "--manifest", EN, "--model", "cocho_beta", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "fit_cocho_beta.json").read_text())
    ref = fit("cocho_beta", to_ranked(english_fixture.merged()))
    for k in ("C", "a", "b"):
        assert data["params"][k] == pytest.approx(getattr(ref.params, k), rel=1e-12)
    assert data["sse"] == pytest.approx(ref.sse, rel=1e-12)
    assert _files(tmp_path) == ["fit_cocho_beta.json", "fitted_curves.tsv"]


def test_fit_matches_scipy(tmp_path, english_fixture):
    least_squares = pytest.importorskip("scipy.optimize").least_squares
    assert run(["fit", "--manifest", EN, "--model", "cocho_beta", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "fit_cocho_beta.json").read_text())
    dist = to_ranked(english_fixture.merged())
    r = np.arange(1, 27.0)
    y = dist.frequencies

    def resid(q):
        C, a, b = q
        return C * (27 - r) ** b / r ** a - y

    sol = least_squares(resid, [data["params"]["C"], 0.5, 0.5], xtol=1e-15, ftol=1e-15, gtol=1e-15)
    assert data["sse"] <= 2 * sol.cost * (1 + 1e-8)


def test_select_header_and_best(tmp_path):
    assert run(["select", "--manifest", EN, "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "selection.tsv").read_text().splitlines()
    assert lines[0] == "function\teq\tp\tsse\tdelta_aic\tdelta_bic"
    assert len(lines) == 11
    summary = json.loads((tmp_path / "selection_summary.json").read_text())
    best = [l.split("\t") for l in lines[1:] if l.split("\t")[0] == summary["best_aic"]]
    assert float(best[0][4]) == 0


def test_select_from_fit_directory(tmp_path):
    fits, sel = tmp_path / "fits", tmp_path / "sel"
    assert run(["fit", "--manifest", EN, "--out", str(fits)]) == 0
    assert run(["select", "--fits", str(fits), "--out", str(sel)]) == 0
    direct = tmp_path / "direct"
    assert run(["select", "--manifest", EN, "--out", str(direct)]) == 0
    assert (sel / "selection.tsv").read_text() == (direct / "selection.tsv").read_text()


def test_piecewise(tmp_path):
    assert run(["piecewise", "--manifest", EN, "--segments", "3", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "piecewise.json").read_text())
    assert len(data["breakpoints"]) == 2
    assert "gusein_ratio.tsv" in _files(tmp_path)


def test_trends(tmp_path):
    assert run(["trends", "--manifest", ES, "--lang", "es", "--keep-space",
                "--pair", "d,l", "--out", str(tmp_path)]) == 0
    assert set(_files(tmp_path)) == {"letter_matrix.tsv", "letter_series.tsv", "rank_table.tsv",
                                     "rank_switches.tsv", "era_means.tsv", "space_fraction.tsv"}


def test_json_format(tmp_path):
    assert run(["rank", "--manifest", EN, "--format", "json", "--out", str(tmp_path)]) == 0
    records = json.loads((tmp_path / "ranked.json").read_text())
    assert len(records) == 26 and records[0]["rank"] == 1
    assert sum(r["frequency"] for r in records) == pytest.approx(1, abs=1e-12)


def test_report_is_union_of_steps(tmp_path):
    rep = tmp_path / "report"
    assert run(["report", "--manifest", EN, "--out", str(rep)]) == 0
    union = set()
    for step in ("count", "rank", "fit", "select", "piecewise", "trends"):
        d = tmp_path / step
        assert run([step, "--manifest", EN, "--out", str(d)]) == 0
        union |= set(_files(d))
        for name in _files(d):
            assert filecmp.cmp(d / name, rep / name, shallow=False), name
    assert set(_files(rep)) == union


def test_error_leaves_no_outputs(tmp_path, capsys):
    out = tmp_path / "out"
    assert run(["fit", "--manifest", EN, "--model", "no_such_model", "--out", str(out)]) != 0
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("letterfit: error:")
    assert list(out.iterdir()) == []


def test_missing_manifest(tmp_path, capsys):
    assert run(["count", "--manifest", str(tmp_path / "nope.tsv"), "--out", str(tmp_path)]) == 1
    assert "letterfit: error:" in capsys.readouterr().err


def test_empty_document_error(tmp_path, capsys):
    (tmp_path / "a.txt").write_text("1234 !!", encoding="utf-8")
    (tmp_path / "m.tsv").write_text("id\tlabel\tyears\tpath\na\tA\t1900\ta.txt\n")
    out = tmp_path / "out"
    assert run(["count", "--manifest", str(tmp_path / "m.tsv"), "--out", str(out)]) == 1
    assert list(out.iterdir()) == []


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "letterfit.cli", "rank", "--manifest", EN,
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "rank_string.txt").exists()
