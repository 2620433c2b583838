import numpy as np
import pytest

import orbitcone


def test_algebra_and_classify():
    sl2 = orbitcone.build_algebra("sl2R")
    assert sl2.dim == 3
    assert np.allclose(sl2.gram, np.diag([2.0, 2.0, -2.0]))
    assert orbitcone.classify("sl2R", [1.0, 0.0, 1.0]) == "Nilpotent"
    assert orbitcone.classify("sl2R", [0.0, 0.0, 2.0]) == "Elliptic"
    assert orbitcone.classify("sl2R", [1.0, 0.0, 0.0]) == "Hyperbolic"
    d = orbitcone.build_algebra("su(2,1)").structure_defects()
    assert d["jacobi"] < 1e-12


def test_orbit_sample_preserves_casimir():
    pts = orbitcone.orbit_sample("sl2R", [2.0, 0.0, 0.0], n=200, seed=3)
    assert pts.shape == (200, 3)
    casimir = pts[:, 0] ** 2 + pts[:, 1] ** 2 - pts[:, 2] ** 2
    # Random group walks reach large norms; compare at the scale of |xi|^2.
    scale = np.maximum(1.0, np.sum(pts**2, axis=1))
    assert np.all(np.abs(casimir - 4.0) <= 1e-9 * scale)


def test_exp_jacobian_at_zero():
    j, j_sqrt = orbitcone.exp_jacobian("sl2R", [0.0, 0.0, 0.0])
    assert j == pytest.approx(1.0)
    assert j_sqrt == pytest.approx(1.0)


def test_dual_cone_of_orthant():
    gens = orbitcone.dual_cone([[1.0, 0.0], [0.0, 1.0]])
    for g in gens:
        assert np.all(np.asarray(g) <= 1e-12)


def test_wavefront_discrete_series():
    wf = orbitcone.wavefront("sigma_disc:3:+")
    assert wf["expected"] == "Nplus"
    assert wf["defect"] <= 0.05


def test_tempered_example():
    cert = orbitcone.tempered("so(3,1)|blocks[(1,1),(2,0)]")
    assert cert["verdict"] == "Contained"
    assert orbitcone.tempered("pair(sl2R, sl2R)")["verdict"] == "Violated"


def test_saturation_and_conditions():
    assert orbitcone.saturation("pair(sl2R, diag)") == "Full"
    assert orbitcone.saturation("pair(sl2R, so(2))") == "NotFull"
    assert orbitcone.sopq_conditions(2, 2, [(2, 1), (0, 1)]) == (True, False)


def test_tensor():
    r = orbitcone.tensor(2, "+", 3, "-", samples=2000)
    assert r["discretely_decomposable_obstructed"] is True


def test_run_is_deterministic_and_reports_errors():
    a = orbitcone.run("classify", algebra="sl2R", point="1,0,1")
    b = orbitcone.run("classify", algebra="sl2R", point="1,0,1")
    assert a == b
    report, code, _ = a
    assert code == 0
    assert report["result"]["class"] == "Nilpotent"
    report, code, _ = orbitcone.run("classify", point="1,x,1")
    assert code == 2
    assert report["error"]["code"] == "ParseError"


def test_errors_raise():
    with pytest.raises(orbitcone.OrbitconeError):
        orbitcone.build_algebra("sl3R")
    with pytest.raises(orbitcone.OrbitconeError):
        orbitcone.tempered("pair(so(3,1), blocks[(1,1)])")
