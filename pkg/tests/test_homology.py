import numpy as np
import pytest

import csobstruct as cs
from csobstruct.complex_core import Cochain
from csobstruct.errors import Error
from conftest import random_real_cochain
from oracles import betti as betti_oracle


def test_real_equals_integer_betti(fixtures3d, sphere2):
    for K in list(fixtures3d.values()) + [sphere2]:
        for k in range(K.dim + 1):
            assert cs.homology_groups(K, k, "real").betti == \
                cs.homology_groups(K, k, "int").betti


def test_euler_characteristic_from_betti(fixtures3d):
    for K in fixtures3d.values():
        chi = sum((-1) ** k * cs.homology_groups(K, k, "real").betti
                  for k in range(4))
        assert chi == K.euler_characteristic()


def test_betti_against_exact_rank_oracle(s3, s1xs2):
    for K in (s3, s1xs2):
        for k in range(4):
            assert cs.homology_groups(K, k, "real").betti == \
                betti_oracle(K, k)


def test_degree_out_of_range(s3):
    with pytest.raises(Error) as e:
        cs.homology_groups(s3, 7)
    assert e.value.code == "DEGREE_OUT_OF_RANGE"


def test_s3_connected(s3):
    g = cs.homology_groups(s3, 0, "int")
    assert g.betti == 1 and g.torsion == []


class TestBasis:
    def test_sizes(self, s3, s1xs2, t3):
        assert cs.basis(s3, 1).size == 0
        assert cs.basis(s1xs2, 1).size == 1
        assert cs.basis(t3, 1).size == 3

    def test_representatives_are_closed_unit_coordinates(self, t3, s1xs2):
        for K in (t3, s1xs2):
            for k in range(1, 3):
                b = cs.basis(K, k)
                for i, w in enumerate(b.representative_cochains()):
                    dv = cs.apply_d(K, w).values
                    assert np.abs(dv).max() < 1e-9
                    coords = b.coordinates(w.values)
                    expect = np.zeros(b.size)
                    expect[i] = 1.0
                    assert np.abs(coords - expect).max() < 1e-9

    def test_exact_cochains_project_to_zero(self, t3):
        rng = np.random.default_rng(5)
        for k in range(1, 4):
            b = cs.basis(t3, k)
            for _ in range(5):
                w = cs.apply_d(t3, random_real_cochain(rng, t3, k - 1))
                assert np.abs(b.coordinates(w.values)).max() < 1e-9


class TestFindPrimitive:
    def test_exact_input_recovers_primitive(self, t3):
        rng = np.random.default_rng(6)
        beta0 = random_real_cochain(rng, t3, 1)
        w = cs.apply_d(t3, beta0)
        res = cs.find_primitive(t3, w)
        assert res.exact
        recon = cs.apply_d(t3, res.primitive).values
        assert np.abs(recon - w.values).max() < 1e-9

    def test_generator_is_not_exact(self, s1xs2):
        g = cs.basis(s1xs2, 1).representative_cochains()[0]
        res = cs.find_primitive(s1xs2, g)
        assert not res.exact
        assert np.abs(np.abs(res.class_coordinates) - 1.0).max() < 1e-9

    def test_zero_cochain(self, s3):
        res = cs.find_primitive(s3, Cochain.zeros(s3, 2))
        assert res.exact
        assert np.abs(res.primitive.values).max() < 1e-12

    def test_not_closed_rejected(self, s3):
        rng = np.random.default_rng(7)
        w = random_real_cochain(rng, s3, 1)
        with pytest.raises(Error) as e:
            cs.find_primitive(s3, w)
        assert e.value.code == "NOT_CLOSED"

    def test_randomized_exactness_discrimination(self, s1xs2, t3):
        # success iff class coordinates vanish, over >= 100 cochains
        rng = np.random.default_rng(8)
        for K in (s1xs2, t3):
            gens = cs.basis(K, 2).representatives
            for i in range(50):
                w = cs.apply_d(K, random_real_cochain(rng, K, 1))
                vals = w.values.copy()
                make_exact = i % 2 == 0
                if not make_exact:
                    coeffs = rng.standard_normal(len(gens))
                    while np.abs(coeffs).max() < 0.1:
                        coeffs = rng.standard_normal(len(gens))
                    for cf, g in zip(coeffs, gens):
                        vals = vals + cf * g
                res = cs.find_primitive(K, Cochain(2, "real", vals))
                assert res.exact == make_exact
