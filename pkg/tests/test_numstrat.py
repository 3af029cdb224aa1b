from __future__ import annotations

import json
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from homsplit.errors import ClassificationError, DimensionError, SingularityError
from homsplit.numstrat import (
    SkewHermitianTuple,
    Tolerances,
    UnitaryTuple,
    block_decompose,
    cayley,
    cayley_bound,
    cayley_inv,
    classify,
    closure_probe,
    commutator_residual,
    haar_unitary,
    random_commuting_skew,
    random_commuting_tuple,
    random_torus_tuple,
    reassemble,
    rows_to_tuple,
    shuffle,
    simultaneous_diagonalize,
)
from homsplit.poset import IndexedPartition, enumerate_partitions, leq, pattern_matrix, weight

P = IndexedPartition.from_parts
TOL = Tolerances(one=1e-6, margin=0.1)


def test_haar_is_unitary():
    g = haar_unitary(5, np.random.default_rng(0))
    assert np.allclose(g.conj().T @ g, np.eye(5), atol=1e-12)


def test_bottom_is_identity():
    for seed in range(5):
        t = random_commuting_tuple(IndexedPartition.bottom(3, 4), seed)
        assert np.allclose(t.matrices, np.eye(4), atol=1e-12)
    assert np.array_equal(random_torus_tuple(IndexedPartition.bottom(2, 3), 0).matrices[0], np.eye(3))


def test_torus_tuple_pattern():
    t = random_torus_tuple(P((1, 1, 2, 2)), 4)
    rows = np.stack([np.diag(x) for x in t.matrices], axis=1)
    ones = np.abs(rows - 1) < 1e-12
    assert ones.tolist() == [[True, True], [True, False], [False, True], [False, True],
                             [False, False], [False, False]]


def test_diagonal_example_classifies():
    z = np.exp(1j * np.array([2.0, 2.5, 3.0, 3.5, 4.0, 4.5]))
    rows = np.array([[1, 1], [1, z[0]], [z[1], 1], [z[2], 1], [z[3], z[4]], [z[5], z[0]]])
    assert classify(rows_to_tuple(rows)).partition == P((1, 1, 2, 2))


def test_identity_tuple():
    t = UnitaryTuple(np.stack([np.eye(3)] * 2))
    assert classify(t).partition == IndexedPartition.bottom(2, 3)


@pytest.mark.parametrize("lam", enumerate_partitions(2, 3), ids=lambda l: l.label())
def test_torus_round_trip(lam):
    for seed in range(100):
        assert classify(random_torus_tuple(lam, seed, TOL), seed, TOL).partition == lam


def test_commutator_residual_small():
    for m in range(1, 9):
        for seed in range(100):
            lam = IndexedPartition.top(2, m)
            assert random_commuting_tuple(lam, seed).commutator_residual() <= 1e-12 * m


def test_diagonal_input_is_fixed():
    t = random_torus_tuple(P((0, 1, 1, 1)), 2)
    h, rows, residual = simultaneous_diagonalize(t)
    assert residual < 1e-14
    # h is a permutation matrix up to phases.
    assert np.allclose(np.sort(np.abs(h).ravel())[-3:], 1, atol=1e-12)
    assert np.allclose(np.abs(h).sum(axis=0), 1, atol=1e-12)


def test_recovers_eigenvalues():
    lam = P((1, 0, 2, 1))
    rng = np.random.default_rng(3)
    base = random_torus_tuple(lam, 3)
    t = base.conjugate(haar_unitary(4, rng))
    _, rows, _ = simultaneous_diagonalize(t, 1)
    for j in range(2):
        got = np.sort_complex(np.round(rows[:, j], 9))
        want = np.sort_complex(np.round(np.diag(base.matrices[j]), 9))
        assert np.allclose(got, want)


def test_broken_commutativity_rejected():
    theta = 0.05
    rot = np.eye(3, dtype=complex)
    rot[:2, :2] = [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
    t = UnitaryTuple(np.stack([np.diag([1, -1, 1j]), rot]))
    assert 0.05 < t.commutator_residual() < 0.2
    with pytest.raises(ClassificationError):
        classify(t)


def test_non_unitary_rejected():
    with pytest.raises(ClassificationError):
        classify(UnitaryTuple(np.stack([2 * np.eye(2)])))


@pytest.mark.parametrize("lam", [P((1, 1, 2, 2)), P((0, 0, 1, 0, 2, 0, 0, 1))], ids=str)
def test_conjugation_invariance(lam):
    t = random_commuting_tuple(lam, 9)
    rng = np.random.default_rng(1)
    for seed in range(100):
        assert classify(t.conjugate(haar_unitary(lam.m, rng)), seed).partition == lam


def test_ambiguity_band_warns():
    near = np.exp(1j * 1.5e-6)
    rows = np.array([[near], [np.exp(1j)]])
    with pytest.warns(UserWarning):
        rep = classify(rows_to_tuple(rows), tol=TOL)
    assert rep.warning and rep.partition == P((0, 2))


def test_report_json():
    rep = classify(random_commuting_tuple(P((1, 2)), 0))
    obj = json.loads(json.dumps(rep.to_json()))
    assert IndexedPartition.from_json(obj["partition"]) == P((1, 2))
    assert obj["warning"] is False


def test_tuple_json_round_trip():
    t = random_commuting_tuple(P((1, 0, 1, 1)), 5)
    back = UnitaryTuple.from_json(json.dumps(t.to_json()))
    assert np.array_equal(back.matrices, t.matrices)
    bad = t.to_json()
    bad["m"] = 7
    with pytest.raises(DimensionError):
        UnitaryTuple.from_json(bad)


def test_block_decomposition_round_trip():
    for lam in enumerate_partitions(2, 3):
        for seed in range(10):
            t = random_commuting_tuple(lam, seed)
            dec = block_decompose(t, seed)
            assert np.max(np.abs(reassemble(dec).matrices - t.matrices)) < 1e-10
            for a, sub in dec.blocks.items():
                assert sub.shape == (sum(a), lam[a], lam[a])


def test_block_margins_stay_away_from_one():
    dec = block_decompose(random_commuting_tuple(P((0, 1, 1, 2)), 0, TOL), 0, TOL)
    for a, margins in dec.singular_margins().items():
        assert all(x > 0.09 for x in margins)


def test_bottom_block():
    t = UnitaryTuple(np.stack([np.eye(3)] * 2))
    dec = block_decompose(t)
    assert dec.partition == IndexedPartition.bottom(2, 3)
    assert np.allclose(reassemble(dec).matrices, t.matrices)


def test_shuffle():
    sub = np.stack([2 * np.eye(2)])
    out = shuffle((0, 1, 0), sub)
    assert np.array_equal(out[0], np.eye(2)) and np.array_equal(out[1], sub[0])
    with pytest.raises(DimensionError):
        shuffle((1, 1), sub)


def test_cayley_examples():
    assert np.allclose(cayley(SkewHermitianTuple(np.zeros((1, 3, 3)))).matrices[0], -np.eye(3))
    assert np.allclose(cayley(SkewHermitianTuple(np.array([[[1j]]]))).matrices[0], [[1j]])


@pytest.mark.parametrize("m", range(1, 7))
def test_cayley_round_trips(m):
    for seed in range(20):
        x = random_commuting_skew(m, 2, seed)
        a = cayley(x)
        assert a.unitary_residual() < 1e-12
        assert np.max(np.abs(cayley_inv(a).matrices - x.matrices)) < 1e-11


def test_cayley_commutator_bound():
    rng = np.random.default_rng(0)
    x = random_commuting_skew(4, 2, 0)
    noise = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    mats = x.matrices.copy()
    mats[1] += 1e-6 * (noise - noise.conj().T)
    y = SkewHermitianTuple(mats)
    assert commutator_residual(cayley(y).matrices) <= cayley_bound(y) * y.commutator_residual()


def test_cayley_inv_singular():
    with pytest.raises(SingularityError):
        cayley_inv(UnitaryTuple(np.stack([np.diag([1.0, -1.0])])))


def test_closure_probe():
    lam = P((0, 1, 1, 1))
    assert closure_probe(lam, 0) == [lam]
    chain = closure_probe(lam, 6, seed=2)
    assert chain[-1] == IndexedPartition.bottom(2, 3)
    assert all(leq(b, a) for a, b in zip(chain, chain[1:]))


@pytest.mark.parametrize("lam", enumerate_partitions(2, 3), ids=lambda l: l.label())
def test_single_entry_lowers_one_bit(lam):
    rows = [(r, c) for r, row in enumerate(pattern_matrix(lam)) for c, bit in enumerate(row) if bit]
    for entry in rows:
        mu = closure_probe(lam, 1, seed=1, entries=[entry])[-1]
        assert leq(mu, lam) and weight(mu) == weight(lam) - 1


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerances(one=0)
    with pytest.raises(ValueError):
        Tolerances(one=1e-16)


@given(st.integers(0, 2 ** 32 - 1))
def test_random_round_trip_property(seed):
    lam = enumerate_partitions(2, 3)[seed % 20]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert classify(random_commuting_tuple(lam, seed, TOL), seed, TOL).partition == lam
