import json
import math
import os
import subprocess

import pytest

import symkit


def test_structure_sl3():
    s = symkit.SymmetricSpace("sl_n_r", 3)
    assert (s.rank, s.dim_n, s.dim_gk) == (2, 3, 5)
    assert s.multiplicities == [1, 1, 1]
    assert s.rho_norm_sq == pytest.approx(4.0 / 3.0, rel=1e-12)


def test_descriptor_round_trip_fields():
    d = symkit.SymmetricSpace("hyperbolic", 3, "unit_curvature").to_dict()
    assert d["family"] == "hyperbolic"
    assert d["roots"][0]["multiplicity"] == 2


def test_bad_family_raises():
    with pytest.raises(symkit.ConstructionError):
        symkit.SymmetricSpace("so_n", 3)


def test_heat_kernel_h3_closed_matches_spectral():
    h3 = symkit.SymmetricSpace("hyperbolic", 3, "unit_curvature")
    # closed form (4 pi t)^{-3/2} r / sinh r e^{-t - r^2 / 4t}
    t, r = 0.7, 1.3
    ref = (4 * math.pi * t) ** -1.5 * r / math.sinh(r) * math.exp(-t - r * r / (4 * t))
    assert symkit.heat_kernel(h3, t, r) == pytest.approx(ref, rel=1e-12)


def test_casimir_norm_divergence_reported():
    h3 = symkit.SymmetricSpace("hyperbolic", 3, "unit_curvature")
    assert symkit.casimir_inverse_l2_norm(h3, 1.0)["finite"]
    out = symkit.casimir_inverse_l2_norm(h3, 0.5)
    assert not out["finite"] and out["value"] is None


def test_region_and_weights():
    lo, hi = symkit.p_interval(1.3, 1.0)
    assert lo == pytest.approx(26.0 / 23.0, rel=1e-12)
    assert hi == pytest.approx(26.0 / 3.0, rel=1e-12)
    w0, w1 = symkit.three_lines_weights(0.3)
    assert w0 == pytest.approx(0.7, abs=1e-10)
    assert w1 == pytest.approx(0.3, abs=1e-10)
    with pytest.raises(symkit.PreconditionError):
        symkit.p_interval(0.5, 1.0)


def test_slnr_report_n3():
    rep = symkit.slnr_report(3)
    assert rep["d_G"] == 2
    assert rep["A_threshold"] == pytest.approx(math.sqrt(4.0 / 3.0) / 5.0, rel=1e-5)
    assert rep["verdict"] is True


def test_cli_json_deterministic(tmp_path):
    cli = os.environ.get("SYMKIT_CLI")
    if not cli:
        pytest.skip("SYMKIT_CLI not set")
    cmd = [cli, "region", "--dim", "5", "--sg", "1.3", "--s", "1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    assert json.loads(a)["p_max"] == pytest.approx(26.0 / 3.0, rel=1e-11)
