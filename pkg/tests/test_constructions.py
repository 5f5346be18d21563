"""Achievability constructions: explicit states against their closed forms."""

from __future__ import annotations

import math

import numpy as np
import pytest

from renyicone.constructions import (
    Kind,
    analytic_entropy_vector,
    analytic_marginal_spectrum,
    composite_bound,
    composite_error,
    dilution_classical_gt1,
    explicit_state,
    min_alphabet_size,
    purify,
    renyi_target_distribution,
    spike_classical,
    spike_quantum_gt1,
    spike_quantum_lt1,
    spike_weight,
    target_vector_state,
    two_atom_distribution,
    with_alphabet,
)
from renyicone.constructions.spikes import purification_descriptor
from renyicone.core import EntropyVector, SubsetMask, WeightedSpectrum, subset_enumerate
from renyicone.entropy import entropy_vector, renyi_entropy
from renyicone.errors import AlphabetTooSmallError, DimensionError, RenyiConeError

LT1 = ("0.3", "0.5", "0.9")
GT1 = ("1.5", "2", "inf")


def assert_vectors_close(a: EntropyVector, b: EntropyVector, tol: float):
    assert a.n == b.n
    assert a.sup_distance(b) <= tol, (a.as_dict(), b.as_dict())


def assert_complementary_duality(vec: EntropyVector):
    for mask, value in vec.items():
        if not mask.is_full():
            assert value == pytest.approx(vec[mask.complement()], abs=1e-9)


class TestMinAlphabetSize:
    @pytest.mark.parametrize("s,alpha,expected", [(1, 0.5, 1), (3, 0.5, 4), (1e-9, 0.5, 1), (2, 0.5, 1)])
    def test_values(self, s, alpha, expected):
        assert min_alphabet_size(s, alpha) == expected

    @pytest.mark.parametrize("s,alpha", [(3, 0.5), (5, 0.3), (4, 0.9), (10, 0.5)])
    def test_is_minimal(self, s, alpha):
        m = min_alphabet_size(s, alpha)
        assert spike_weight(s, alpha, m) <= 1 + 1e-12
        if m > 1:
            assert spike_weight(s, alpha, m - 1) > 1

    @pytest.mark.parametrize("alpha", [0, 1, 2, "inf"])
    def test_rejects_orders_outside_unit_interval(self, alpha):
        with pytest.raises(RenyiConeError):
            min_alphabet_size(1, alpha)


class TestSpikeClassical:
    def test_weight_at_small_alphabet(self):
        cons = spike_classical(2, 2.0, 0.5, (2, 2))
        assert cons.descriptor.params["t"] == pytest.approx(0.25, abs=1e-15)
        assert cons.state.support_size == 2 * 2 + 1

    def test_closed_form_at_256(self):
        # t = ((2 - 1) / 256) ** 2 = 1 / 65536
        cons = spike_classical(2, 2.0, 0.5, 256, explicit=False)
        assert cons.descriptor.params["t"] == pytest.approx(1 / 65536, rel=1e-14)
        vec = analytic_entropy_vector(cons.descriptor, 0.5)
        assert vec["12"] == pytest.approx(1.9999889930473623, abs=1e-12)
        assert vec["1"] == pytest.approx(0.17490496349613848, abs=1e-12)

    @pytest.mark.parametrize("alpha", LT1 + ("1", "2", "inf", "0"))
    @pytest.mark.parametrize("M", [(3, 3), (2, 5), (4, 1)])
    def test_explicit_matches_analytic(self, alpha, M):
        cons = spike_classical(2, 1.5, 0.5, M)
        assert_vectors_close(entropy_vector(cons.state, alpha), analytic_entropy_vector(cons.descriptor, alpha), 1e-12)

    def test_three_parties(self):
        cons = spike_classical(3, 3.0, 0.3, (2, 3, 4))
        assert_vectors_close(entropy_vector(cons.state, 0.3), analytic_entropy_vector(cons.descriptor, 0.3), 1e-12)

    def test_off_target_entries_decrease(self):
        prev = None
        for M in (4, 16, 64, 256):
            vec = analytic_entropy_vector(spike_classical(2, 3.0, 0.5, M, explicit=False).descriptor, 0.5)
            off = max(vec["1"], vec["2"])
            if prev is not None:
                assert off < prev
            prev = off

    def test_alphabet_too_small(self):
        with pytest.raises(AlphabetTooSmallError) as info:
            spike_classical(2, 3.0, 0.5, 1)
        assert info.value.min_size == 4
        assert "min_alphabet_size" in str(info.value)

    def test_budget_refuses_explicit_state(self):
        cons = spike_classical(2, 3.0, 0.5, 2**20)
        assert cons.state is None
        assert analytic_entropy_vector(cons.descriptor, 0.5)["12"] == pytest.approx(3.0, abs=0.01)

    @pytest.mark.parametrize("alpha", ["1", "2", "inf", "0"])
    def test_rejects_orders_outside_unit_interval(self, alpha):
        with pytest.raises(RenyiConeError):
            spike_classical(2, 1.0, alpha, 4)


class TestPurification:
    def test_marginals_preserved_and_dual(self):
        cons = spike_classical(2, 2.0, 0.5, 3)
        psi = purify(cons.state)
        vec = entropy_vector(psi, 0.5)
        assert_vectors_close(vec.restrict(2), entropy_vector(cons.state, 0.5), 1e-12)
        assert_complementary_duality(vec)

    def test_descriptor_matches_explicit(self):
        cons = spike_classical(2, 2.0, 0.5, 3)
        desc = purification_descriptor(cons.descriptor)
        assert desc.kind is Kind.PURIFICATION and desc.parties == 3
        assert_vectors_close(entropy_vector(explicit_state(desc), 0.7), analytic_entropy_vector(desc, 0.7), 1e-12)


class TestSpikeQuantumLt1:
    def test_grid_shape(self):
        cons = spike_quantum_lt1(3, "12", 1.0, 0.5, 2)
        assert cons.state.num_amplitudes == 17
        assert tuple(cons.state.dims) == (5, 5, 5, 5)
        assert cons.descriptor.params["t"] == pytest.approx(0.010723304703363119, rel=1e-12)

    def test_grid_closed_form(self):
        cons = spike_quantum_lt1(3, "12", 1.0, 0.5, 2)
        closed = 2 * math.log2(math.sqrt(1 - cons.descriptor.params["t"]) + math.sqrt(2) - 1)
        assert renyi_entropy(analytic_marginal_spectrum(cons.descriptor, "12"), 0.5) == pytest.approx(closed, abs=1e-12)
        assert entropy_vector(cons.state, 0.5)["12"] == pytest.approx(0.9890103475763061, abs=1e-9)

    @pytest.mark.parametrize(
        "n,I,M", [(3, "12", 2), (3, "12", 3), (3, "13", 2), (3, "123", 3), (3, "2", 3), (2, "1", 3), (4, "12", 2)]
    )
    @pytest.mark.parametrize("alpha", ["0.5", "0.8"])
    def test_explicit_matches_analytic(self, n, I, M, alpha):
        cons = spike_quantum_lt1(n, I, 0.5, 0.5, M)
        vec = entropy_vector(cons.state, alpha)
        assert_vectors_close(vec, analytic_entropy_vector(cons.descriptor, alpha), 1e-9)
        assert_complementary_duality(vec)

    def test_full_set_case_is_purified_classical_spike(self):
        quantum = spike_quantum_lt1(2, "12", 2.0, 0.5, 3)
        classical = spike_classical(2, 2.0, 0.5, 3)
        assert entropy_vector(quantum.state, 0.5)["12"] == pytest.approx(
            entropy_vector(classical.state, 0.5)["12"], abs=1e-12
        )

    def test_target_reached_with_large_alphabet(self):
        desc = spike_quantum_lt1(3, "13", 2.0, 0.5, 2**12, explicit=False).descriptor
        vec = analytic_entropy_vector(desc, 0.5)
        assert vec["13"] == pytest.approx(2.0, abs=1e-9)
        assert max(v for m, v in vec.restrict(3).items() if str(m) != "13") < 0.05

    def test_invalid_alphabet(self):
        with pytest.raises(DimensionError):
            spike_quantum_lt1(3, "12", 1.0, 0.5, 1)


class TestDilution:
    def test_two_party_uniform(self):
        cons = dilution_classical_gt1(2, 2, WeightedSpectrum.uniform(4))
        vec = entropy_vector(cons.state, 2)
        assert vec["12"] == pytest.approx(3.0, abs=1e-12)
        assert vec["1"] == pytest.approx(1.6780719051126376, abs=1e-12)
        assert cons.descriptor.params["C"] == pytest.approx(2.0)
        marginal = analytic_marginal_spectrum(cons.descriptor, "1")
        assert marginal.allclose(WeightedSpectrum([(0.5, 1), (0.125, 4)]), 1e-15)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("alpha", GT1)
    def test_explicit_matches_analytic(self, n, alpha):
        R = renyi_target_distribution(1.3, alpha, 5)
        cons = dilution_classical_gt1(n, alpha, R)
        assert cons.state.support_size == n * 5
        assert_vectors_close(entropy_vector(cons.state, alpha), analytic_entropy_vector(cons.descriptor, alpha), 1e-12)

    def test_rejects_low_order(self):
        with pytest.raises(RenyiConeError):
            dilution_classical_gt1(2, 0.5, WeightedSpectrum.uniform(2))


class TestTargetDistribution:
    @pytest.mark.parametrize("s", [0.1, 1.0, 2.5, 3.9])
    @pytest.mark.parametrize("alpha", GT1 + ("0.5",))
    def test_hits_target(self, s, alpha):
        R = renyi_target_distribution(s, alpha, 16)
        assert renyi_entropy(R, alpha) == pytest.approx(s, abs=1e-9)

    def test_unreachable_target(self):
        with pytest.raises(RenyiConeError):
            renyi_target_distribution(5.0, 2, 16)

    def test_two_atom_shape(self):
        R = two_atom_distribution(0.4, 4)
        assert R.allclose(WeightedSpectrum([(0.4, 1), (0.2, 3)]), 1e-15)


class TestSpikeQuantumGt1:
    @pytest.mark.parametrize("n,I,blocks", [(3, "12", 4), (2, "1", 2), (3, "1", 3), (2, "13", 2)])
    @pytest.mark.parametrize("alpha", GT1)
    def test_target_and_bounds(self, n, I, blocks, alpha):
        s = 1.5
        cons = spike_quantum_gt1(n, I, s, alpha)
        vec = entropy_vector(cons.state, alpha)
        assert_vectors_close(vec, analytic_entropy_vector(cons.descriptor, alpha), 1e-10)
        assert_complementary_duality(vec)
        target = SubsetMask.parse(I, n + 1)
        assert vec[target] == pytest.approx(s + math.log2(blocks), abs=1e-9)
        C = cons.descriptor.params["C"]
        for mask, value in vec.items():
            if mask != target and mask != target.complement():
                assert value <= C + 1e-9

    def test_wrong_distribution(self):
        with pytest.raises(RenyiConeError):
            spike_quantum_gt1(3, "12", 2.0, 2, WeightedSpectrum.uniform(2))

    def test_full_subset_rejected(self):
        with pytest.raises(DimensionError):
            spike_quantum_gt1(2, "123", 1.0, 2)


class TestComposite:
    def test_zero_target_is_point_mass(self):
        cons = target_vector_state(EntropyVector.zeros(2), 2)
        assert all(v == 0 for _, v in entropy_vector(cons.state, 2).items())

    def test_negative_target_rejected(self):
        with pytest.raises(RenyiConeError):
            target_vector_state(EntropyVector(2, [1.0, -0.5, 1.0]), 2)

    @pytest.mark.parametrize("alpha", ["0", "1"])
    def test_tagged_orders_rejected(self, alpha):
        with pytest.raises(RenyiConeError):
            target_vector_state(EntropyVector(2, [1.0, 1.0, 1.0]), alpha)

    def test_bounded_error_above_one(self):
        target = EntropyVector.from_mapping(2, {"1": 1.0, "2": 1.5, "12": 2.0})
        cons = target_vector_state(target, 2, explicit=False)
        C = composite_bound(2, 2)
        assert C == pytest.approx(2 * math.log2(3) * 8)
        assert composite_error(cons.descriptor, target) <= C

    def test_error_vanishes_below_one(self):
        target = EntropyVector.from_mapping(2, {"1": 1.0, "2": 0.5, "12": 1.2})
        cons = target_vector_state(target, 0.5, epsilon=0.05, explicit=False)
        assert composite_error(cons.descriptor, target) <= 0.05

    def test_extensivity_explicit(self):
        target = EntropyVector.from_mapping(2, {"1": 0.3, "2": 0.0, "12": 0.4})
        cons = target_vector_state(target, 0.5, 2)
        assert cons.state is not None
        analytic = analytic_entropy_vector(cons.descriptor, 0.5)
        assert_vectors_close(entropy_vector(cons.state, 0.5).restrict(2), analytic.restrict(2), 1e-9)

    def test_composite_error_is_sum_bounded(self):
        target = EntropyVector.from_mapping(2, {"1": 0.3, "2": 0.2, "12": 0.4})
        desc = target_vector_state(target, 0.5, 16, explicit=False).descriptor
        per_factor = 0.0
        for bits, comp in zip(desc.params["subsets"], desc.components):
            s = target[bits]
            own = EntropyVector.from_function(2, lambda m, b=bits, s=s: s if m.bits == b else 0.0)
            per_factor += analytic_entropy_vector(comp, 0.5).restrict(2).sup_distance(own)
        assert composite_error(desc, target) <= per_factor + 1e-12


class TestRebuild:
    def test_with_alphabet_changes_only_size(self):
        desc = spike_classical(2, 3.0, 0.5, 16, explicit=False).descriptor
        bigger = with_alphabet(desc, 1024)
        assert bigger.params["M"] == (1024, 1024)
        assert bigger.params["s_bits"] == desc.params["s_bits"]
        assert bigger.params["t"] < desc.params["t"]

    def test_with_alphabet_gt1_rebuilds_distribution(self):
        desc = spike_quantum_gt1(3, "12", 2.0, 2, explicit=False).descriptor
        other = with_alphabet(desc, 8)
        assert renyi_entropy(other.params["R"], 2) == pytest.approx(2.0, abs=1e-9)
        assert other.params["R"].rank == 8


def test_every_subset_is_covered_by_closed_forms():
    desc = spike_classical(3, 2.0, 0.5, 3, explicit=False).descriptor
    for mask in subset_enumerate(3):
        spec = analytic_marginal_spectrum(desc, mask)
        assert math.fsum(spec.values * spec.multiplicities) == pytest.approx(1.0)
        assert np.all(spec.values > 0)
