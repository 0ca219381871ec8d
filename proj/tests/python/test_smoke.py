import json

import pytest

import flasque_lab as fl


def test_catalog_round_trip():
    names = fl.catalog_names()
    assert "norm-one-biquadratic" in names
    doc = json.loads(fl.catalog_json("sign-C2"))
    assert doc["lattice"] == {"rank": 1, "action": [[[-1]]]}
    assert fl.Lattice.from_json(fl.catalog_json("regular-S3")) == fl.Lattice.regular("S3")


def test_cohomology_of_sign():
    sign = fl.Lattice.from_catalog("sign-C2")
    assert fl.cohomology(sign, 1)["invariant_factors"] == [2]
    assert fl.cohomology(fl.Lattice.trivial("C2", 1), 1) == {"invariant_factors": [], "free_rank": 0, "structure": "0"}
    assert fl.cohomology(fl.Lattice.trivial("C2", 1), 0)["free_rank"] == 1


def test_sha_over_v4():
    j = fl.Lattice.norm_one("V4")
    i = fl.Lattice.augmentation("V4")
    assert i == j.dual()
    assert fl.sha_omega(i, 1)["invariant_factors"] == [2]
    assert fl.sha_omega(j, 1)["invariant_factors"] == []
    assert fl.sha_omega(j, 2)["invariant_factors"] == [2]


def test_flasque_resolution():
    m = fl.Lattice.norm_one("S3")
    res = fl.flasque_resolution(m, seed=7)
    assert res["sub"] == m
    assert res["middle"].is_certified_permutation
    assert fl.is_flasque(res["quotient"])
    assert res["middle"].rank == m.rank + res["quotient"].rank
    cof = fl.coflasque_resolution(fl.Lattice.from_catalog("sign-C2"))
    assert fl.is_coflasque(cof["sub"])


def test_reports():
    r = fl.brauer_torus(fl.Lattice.norm_one("V4"))
    assert r["invariant_factors"] == [2]
    assert r["consistent"]
    assert set(r["routes"]) == {"H1_of_F", "sha2_Q_shifted", "sha2_Q_direct"}
    chain = fl.chain_check("augmentation-biquadratic")
    assert len(chain["routes"]) == 4
    assert all(v["invariant_factors"] == [2] for v in chain["routes"].values())
    h = fl.brauer_homspace(fl.Lattice.trivial("V4", 0))
    assert h["invariant_factors"] == [] and h["notes"]


def test_split_check():
    assert fl.split_check("sign-extension-C2") == {
        "split": False,
        "ext1": {"invariant_factors": [2], "free_rank": 0, "structure": "Z/2"},
        "class_vanishes": False,
    }
    assert fl.split_check("split-extension-C2")["split"]


def test_lattice_from_generators_and_errors():
    m = fl.Lattice.from_generators("C2", 2, [[[0, 1], [1, 0]]])
    assert m == fl.Lattice.regular("C2")
    assert m.generator_action() == [[[0, 1], [1, 0]]]
    big = 10**30
    n = fl.Lattice.from_generators("C2", 2, [[[1, big], [0, -1]]])
    assert n.generator_action()[0][0][1] == big
    with pytest.raises(fl.PreconditionError):
        fl.Lattice.from_generators("C3", 1, [[[-1]]])
    with pytest.raises(fl.InputError):
        fl.Lattice.from_catalog("no-such-entry")
    with pytest.raises(fl.InputError):
        fl.Lattice.from_json("{")
    assert issubclass(fl.SizeLimitError, fl.PreconditionError)


def test_fingerprint_stability():
    m = fl.Lattice.norm_one("V4")
    a = fl.fingerprint(m)
    b = fl.fingerprint(m + fl.Lattice.regular("V4"))
    assert [e["h1"] for e in a] == [e["h1"] for e in b]
    assert [e["h1_dual"] for e in a] == [e["h1_dual"] for e in b]
