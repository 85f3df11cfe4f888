import math

import pytest

import vmlp


def test_catalog_names():
    assert vmlp.catalog_names() == ["R", "A", "B", "C", "D", "E", "F", "G", "Q", "HQ", "DC"]


def test_complex_product():
    c = vmlp.catalog("C")
    assert c.mul([0.0, 1.0], [0.0, 1.0]) == [-1.0, 0.0]
    assert c.labels == ["1", "i"]


def test_degeneracy():
    assert vmlp.catalog("C").is_nondegenerate()["overall_nondegenerate"]
    report = vmlp.catalog("D").is_nondegenerate()
    assert not report["overall_nondegenerate"]
    assert report["singular_components"] == [0]


def test_identity():
    assert vmlp.catalog("C").find_identity() == [1.0, 0.0]
    assert vmlp.catalog("A").find_identity() is None


def test_change_of_basis_matches_catalog():
    d = vmlp.catalog("D")
    e = vmlp.catalog("E")
    changed = d.change_of_basis([[1.0, 1.0], [1.0, -1.0]])
    for k in range(2):
        got = changed.bilinear_matrix(k)
        want = e.bilinear_matrix(k)
        for i in range(2):
            for j in range(2):
                assert got[i][j] == pytest.approx(want[i][j], abs=1e-12)


def test_represent_and_verify():
    q = vmlp.catalog("Q")
    coeffs = [[1.0, -2.0, 0.5, 3.0], [0.25, 0.0, -1.0, 2.0]]
    rep = vmlp.represent(q, 2, coeffs)
    assert rep["residual"] == 0.0
    dev = vmlp.verify_representation(q, 2, rep["ys"], coeffs, samples=300, seed=5)
    assert dev < 1e-9


def test_eval_target():
    c = vmlp.catalog("C")
    assert vmlp.eval_target("quad2d", c, [1.0, 0.0]) == [1.0, 1.0]


def test_forward_shapes_and_determinism():
    hq = vmlp.catalog("HQ")
    net1 = vmlp.init_vmlp(hq, 1, 6, output_mode="vector", seed=11)
    net2 = vmlp.init_vmlp(hq, 1, 6, output_mode="vector", seed=11)
    assert net1.params == net2.params
    out = net1.forward([[0.3, -0.2, 0.1, 0.7]])
    assert len(out) == 4
    assert all(math.isfinite(v) for v in out)


def test_checkpoint_roundtrip(tmp_path):
    c = vmlp.catalog("C")
    net = vmlp.init_vmlp(c, 1, 5, output_mode="scalar", seed=3)
    path = str(tmp_path / "net.json")
    vmlp.save_checkpoint(net, path)
    loaded = vmlp.load_checkpoint(path)
    assert loaded.params == net.params
    assert loaded.forward([[0.4, -0.9]]) == net.forward([[0.4, -0.9]])


def test_train_small_run_decreases_mse():
    c = vmlp.catalog("C")
    net, curve = vmlp.train(c, "quad2d", hidden=16, samples=128, epochs=30, batch=32, seed=1)
    assert len(curve) == 30
    assert curve[-1][1] < curve[0][1]
    _, curve2 = vmlp.train(c, "quad2d", hidden=16, samples=128, epochs=30, batch=32, seed=1)
    assert curve == curve2


def test_validation_errors_map_to_value_error():
    with pytest.raises(ValueError):
        vmlp.catalog("nope")
    with pytest.raises(ValueError):
        vmlp.catalog("C").mul([1.0], [0.0, 1.0])
