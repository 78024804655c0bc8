import json
import math
from dataclasses import replace

import numpy as np
import pytest

import qsatom.spectrum
from qsatom import mollow_xsections
from qsatom.cli import (ConfigError, format_csv, main, parse_config,
                        run_xsection_sweep)

FANO_BLOCK = {"delta0_plus": -0.03, "delta0_minus": 0.13,
              "norm2_pg_plus": 0.005, "norm2_pg_minus": 0.005,
              "norm2_pdg": 0.02, "eps_r": -0.001}

MOLLOW_BLOCK = {k: 0.0 for k in FANO_BLOCK}


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _fano_config(**over):
    doc = {"mode": "scalars", "scalars": dict(FANO_BLOCK),
           "eta2": [10.0, 18.0], "ztilde": [-4.0, 0.0, 3.0],
           "x_grid": [-6.0, -1.0, 0.0, 1.0, 6.0], "gammatilde": 0.6}
    doc.update(over)
    return doc


def test_parse_config_requires_single_mode_block():
    with pytest.raises(ConfigError):
        parse_config(_fano_config(phase_shifts={"delta_plus": [0], "delta_minus": [0]}))
    with pytest.raises(ConfigError):
        parse_config({"mode": "scalars", "eta2": [1.0], "ztilde": [0.0]})
    with pytest.raises(ConfigError):
        parse_config(_fano_config(mode="phase_shifts"))
    with pytest.raises(ConfigError):
        parse_config(_fano_config(mode="other"))


def test_parse_config_rejects_non_finite():
    with pytest.raises(ConfigError):
        parse_config(_fano_config(ztilde=[0.0, float("inf")]))
    with pytest.raises(ConfigError):
        parse_config(_fano_config(gammatilde=-0.1))


def test_empty_sweep_list_exits_2(tmp_path, capsys):
    cfg = _write(tmp_path, "bad.json", _fano_config(ztilde=[]))
    assert main(["xsection", "--config", cfg]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_file_exits_2(capsys):
    assert main(["xsection", "--config", "/nonexistent/cfg.json"]) == 2


def test_spectrum_rejects_zero_width(tmp_path, capsys):
    cfg = _write(tmp_path, "g0.json", _fano_config(gammatilde=0.0))
    assert main(["spectrum", "--config", cfg]) == 2


def test_xsection_sweep_rows_and_plateau(tmp_path):
    doc = _fano_config(eta2=[10.0], ztilde=[-1e4, 0.0, 1e4])
    cfg = parse_config(doc)
    columns, rows = run_xsection_sweep(cfg)
    assert columns == ["eta2", "ztilde", "sigma_tot", "sigma_el", "sigma_inel"]
    assert [r[1] for r in rows] == [-1e4, 0.0, 1e4]
    plateau = 0.005 + math.sin(0.13) ** 2
    assert rows[0][2] == pytest.approx(plateau, abs=5e-4)
    assert rows[2][2] == pytest.approx(plateau, abs=5e-4)
    for r in rows:
        assert r[3] + r[4] == pytest.approx(r[2], rel=1e-12)


def test_xsection_sweep_mollow_symmetric_lorentzian(tmp_path):
    doc = {"mode": "scalars", "scalars": dict(MOLLOW_BLOCK),
           "eta2": [4.0], "ztilde": [-2.0, -1.0, 0.0, 1.0, 2.0]}
    columns, rows = run_xsection_sweep(parse_config(doc))
    for r in rows:
        ref = mollow_xsections(r[1], 2.0)
        assert r[2] == pytest.approx(ref.total, rel=1e-14)
    by_z = {r[1]: r[2] for r in rows}
    assert by_z[2.0] == by_z[-2.0] and by_z[1.0] == by_z[-1.0]


def test_csv_header_carries_schema_and_columns():
    text = format_csv(["a", "b"], [(1.0, 2.0)])
    first = text.splitlines()[0]
    assert first.startswith("# qsatom v1, reduced units (alpha2=1), columns: ")
    assert first.endswith("a,b")


def test_output_byte_stable_and_thread_independent(tmp_path):
    cfg = _write(tmp_path, "fano.json", _fano_config())
    out1, out2, out4 = (str(tmp_path / f"o{i}.csv") for i in (1, 2, 4))
    assert main(["spectrum", "--config", cfg, "--out", out1]) == 0
    assert main(["spectrum", "--config", cfg, "--out", out2]) == 0
    assert main(["spectrum", "--config", cfg, "--threads", "4", "--out", out4]) == 0
    b1 = open(out1, "rb").read()
    assert b1 == open(out2, "rb").read()
    assert b1 == open(out4, "rb").read()


def test_spectrum_json_round_trip(tmp_path, capsys):
    cfg = _write(tmp_path, "fano.json", _fano_config())
    assert main(["spectrum", "--config", cfg, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == "qsatom v1"
    assert doc["columns"][:3] == ["eta2", "ztilde", "x"]
    assert len(doc["rows"]) == 2 * 3 * 5
    # Sigma_tot = Sigma_inel + elastic Lorentzian, column-wise
    for row in doc["rows"]:
        assert row[3] == pytest.approx(row[4] + row[5], rel=1e-12)
    # direct scattering makes the on-resonance spectrum asymmetric in x
    onres = {row[2]: row[4] for row in doc["rows"]
             if row[0] == 18.0 and row[1] == 0.0}
    assert abs(onres[6.0] - onres[-6.0]) > 1e-5


def test_spectrum_mollow_reference_column_even_in_x(tmp_path, capsys):
    doc = {"mode": "scalars", "scalars": dict(MOLLOW_BLOCK),
           "eta2": [10.0], "ztilde": [0.0],
           "x_grid": [-3.0, -1.0, 0.0, 1.0, 3.0], "gammatilde": 0.6,
           "mollow_reference": True}
    cfg = _write(tmp_path, "mollow.json", doc)
    assert main(["spectrum", "--config", cfg, "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["columns"][-1] == "Sigma_tot_mollow"
    rows = {row[2]: row for row in out["rows"]}
    for x in (1.0, 3.0):
        assert rows[x][3] == pytest.approx(rows[-x][3], rel=1e-12)
        assert rows[x][6] == pytest.approx(rows[-x][6], rel=1e-12)
        assert rows[x][3] == pytest.approx(rows[x][6], rel=1e-10)


def test_verify_default_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out


def test_verify_reports_finite_beam_in_phase_shift_mode(tmp_path, capsys):
    doc = {"mode": "phase_shifts",
           "phase_shifts": {"delta_plus": [-0.03, 0.0, 0.0633],
                            "delta_minus": [0.13, 0.0, 0.0]},
           "eta2": [4.0], "ztilde": [0.0], "gammatilde": 0.6}
    cfg = _write(tmp_path, "ps.json", doc)
    assert main(["verify", "--config", cfg, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    names = [c["check"] for c in doc["checks"]]
    assert "finite-beam photon balance" in names
    assert doc["passed"] is True


def test_verify_scalars_mode_skips_finite_beam(tmp_path, capsys):
    cfg = _write(tmp_path, "sc.json", _fano_config())
    assert main(["verify", "--config", cfg, "--format", "json"]) == 0
    names = [c["check"] for c in json.loads(capsys.readouterr().out)["checks"]]
    assert "finite-beam photon balance" not in names


def test_verify_detects_injected_coherence_sign_error(monkeypatch, capsys):
    # flip the sign of the coherence rotation inside the spectral drift.
    # The full-line integral of the resolvent is drift-independent
    # (residues), so the normalization sum rule cannot see this bug;
    # the closed-form, positivity and time-domain checks must.
    true_build = qsatom.spectrum.build_spectral_drift

    def flawed(rs, eta, s, gammatilde):
        return true_build(replace(rs, bprime=np.conj(rs.bprime)), eta, s, gammatilde)

    monkeypatch.setattr(qsatom.spectrum, "build_spectral_drift", flawed)
    assert main(["verify", "--format", "json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    failed = {c["check"] for c in doc["checks"] if not c["passed"]}
    assert "Mollow closed form vs resolvent" in failed
    assert "time-domain spectrum vs resolvent" in failed


def test_verify_detects_injected_weight_sign_error(monkeypatch, capsys):
    # a sign error in the spectral weight vectors does break the
    # normalization machinery (the broken tails may also defeat the
    # quadrature itself, which is reported as its own failure)
    true_co = qsatom.spectrum.spectral_coefficients

    def flawed(rs, eta, s):
        co = true_co(rs, eta, s)
        bad = co.dprime.copy()
        bad[2] = np.conj(bad[2])
        return replace(co, dprime=bad)

    monkeypatch.setattr(qsatom.spectrum, "spectral_coefficients", flawed)
    assert main(["verify", "--format", "json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    failed = {c["check"] for c in doc["checks"] if not c["passed"]}
    assert failed & {"spectral normalization sum rules",
                     "spectral quadrature convergence"}
