import pytest
from sklearn.base import clone

from fockmodel.estimators import FockSpectralModel, GNSReconstructor, GrowthCertifier, JordanClassifier
from fockmodel.kernel import eval_F
from fockmodel.models import jordan_block_tuple, varopoulos_kaijser
from fockmodel.tuples import CyclicTuple, moments


def test_fock_model_transform_gives_kernel():
    t = jordan_block_tuple(3)
    est = FockSpectralModel(degree=6).fit(t)
    assert est.report_.passed
    phi = est.transform([[0.5], [1j]])
    assert phi[0] @ phi[1].conj() == pytest.approx(eval_F(t, [0.5], [1j]))


def test_fock_model_accepts_table_and_clones():
    est = FockSpectralModel(degree=2)
    est.fit(moments(varopoulos_kaijser().tuple, 2))
    assert est.eigenvalues_[0] == pytest.approx(1.5)
    assert clone(est).get_params() == {"degree": 2, "rank_tol": 1e-10}
    with pytest.raises(TypeError):
        est.fit([[1.0]])


def test_gns_and_classifier():
    g = GNSReconstructor().fit(moments(jordan_block_tuple(2), 3))
    assert g.tuple_.m == 2
    clf = JordanClassifier().fit(jordan_block_tuple(2))
    assert clf.is_jordan_ and clf.distribution_.order == 1
    labels = clf.predict([jordan_block_tuple(2), CyclicTuple([[[0, 0], [1, 1]]], [1, 0])])
    assert list(labels) == ["Jordan", "NotJordan"]


def test_growth_certifier_defaults_to_spectrum():
    est = GrowthCertifier().fit(jordan_block_tuple(2, 0.5))
    assert est.certificate_.N_hat == pytest.approx(2.0, abs=0.15)
