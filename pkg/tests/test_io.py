"""JSON/CSV formats: round trips and deterministic text."""

from __future__ import annotations

import json

import numpy as np
import pytest

from renyicone import io
from renyicone.constructions import (
    analytic_entropy_vector,
    dilution_classical_gt1,
    renyi_target_distribution,
    spike_classical,
    spike_quantum_gt1,
    spike_quantum_lt1,
    target_vector_state,
    upset_classical_gt1,
    upset_classical_lt1,
)
from renyicone.constructions.spikes import purification_descriptor
from renyicone.core import DensityMatrix, EntropyVector, RenyiOrder, SparsePureState, WeightedSpectrum
from renyicone.entropy import entropy_vector
from renyicone.errors import RenyiConeError


def _descriptors():
    spike = spike_classical(2, 3.0, 0.5, 4, explicit=False).descriptor
    target = EntropyVector.from_mapping(2, {"1": 1.0, "2": 1.0, "12": 1.0})
    return [
        spike,
        spike_quantum_lt1(3, "12", 1.0, 0.5, 2, explicit=False).descriptor,
        spike_quantum_gt1(3, "12", 2.0, 2, explicit=False).descriptor,
        upset_classical_lt1(3, ["1", "23"], 4.0, 0.5, 64, explicit=False).descriptor,
        upset_classical_gt1(3, ["12"], 3.0, 2, explicit=False).descriptor,
        dilution_classical_gt1(2, "inf", renyi_target_distribution(2.0, "inf", 4), explicit=False).descriptor,
        target_vector_state(target, 2, explicit=False).descriptor,
        target_vector_state(target, 0.5, 8, explicit=False).descriptor,
        purification_descriptor(spike),
    ]


@pytest.mark.parametrize("desc", _descriptors(), ids=lambda d: d.kind.value)
def test_descriptor_round_trip(desc):
    text = io.dumps(io.descriptor_to_json(desc))
    back = io.descriptor_from_json(json.loads(text))
    assert back.kind is desc.kind and back.n == desc.n and back.parties == desc.parties
    assert io.dumps(io.descriptor_to_json(back)) == text
    a = analytic_entropy_vector(desc, desc.order)
    b = analytic_entropy_vector(back, back.order)
    assert a.sup_distance(b) == 0.0


def test_descriptor_json_shape():
    desc = spike_classical(2, 3.0, 0.5, 256, explicit=False).descriptor
    data = io.descriptor_to_json(desc)
    assert data["kind"] == "spike_classical" and data["alpha"] == "0.5" and data["M"] == [256, 256]
    gens = io.descriptor_to_json(upset_classical_lt1(3, ["1", "23"], 4.0, 0.5, 64, explicit=False).descriptor)
    assert gens["generators"] == ["1", "23"]


def test_descriptor_derived_fields_recomputed():
    data = io.descriptor_to_json(spike_classical(2, 3.0, 0.5, 4, explicit=False).descriptor)
    data["t"] = 0.999
    assert io.descriptor_from_json(data).params["t"] == pytest.approx(0.20894660940672619)


@pytest.mark.parametrize(
    "state",
    [
        spike_classical(2, 2.0, 0.5, 3).state,
        spike_quantum_lt1(3, "12", 1.0, 0.5, 2).state,
        SparsePureState.from_amplitudes((2, 2), {(0, 0): 0.6, (1, 1): 0.8j}),
        DensityMatrix((2, 2), np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex)),
    ],
    ids=["classical", "pure", "complex-pure", "dense"],
)
def test_state_round_trip(state):
    data = json.loads(io.dumps(io.state_to_json(state)))
    back, desc = io.state_from_json(data)
    assert desc is None and type(back) is type(state)
    for alpha in ("0.5", "2"):
        assert entropy_vector(back, alpha).sup_distance(entropy_vector(state, alpha)) == 0.0


def test_state_json_format():
    data = io.state_to_json(spike_classical(2, 2.0, 0.5, 2).state)
    assert data["type"] == "classical" and data["alphabet_sizes"] == [3, 3]
    assert data["atoms"][0] == {"x": [0, 0], "p": 0.75}


def test_descriptor_only_state():
    desc = spike_classical(2, 3.0, 0.5, 2**20, explicit=False).descriptor
    state, back = io.state_from_json(io.descriptor_only_json(desc))
    assert state is None and back.kind is desc.kind


@pytest.mark.parametrize(
    "data",
    [
        {"type": "mystery"},
        {"atoms": []},
        {"type": "classical", "n": 3, "alphabet_sizes": [2, 2], "atoms": [{"x": [0, 0], "p": 1.0}]},
        {"type": "pure", "dims": [2], "amplitudes": [{"index": [0], "re": 0.5}]},
        {"type": "descriptor"},
    ],
)
def test_state_errors(data):
    with pytest.raises(RenyiConeError):
        io.state_from_json(data)


def test_vector_round_trip():
    vec = EntropyVector.from_mapping(3, {"1": 0.01, "2": 0.01, "12": 0.02, "3": 0, "13": 1, "23": 1, "123": 3},
                                     RenyiOrder.parse("0.5"))
    data = json.loads(io.dumps(io.vector_to_json(vec)))
    assert data["alpha"] == "0.5" and set(data["entries"]) == {"1", "2", "12", "3", "13", "23", "123"}
    back = io.vector_from_json(data)
    assert back.sup_distance(vec) == 0.0 and back.order == vec.order


@pytest.mark.parametrize("alpha,text", [("0", "0"), ("1", "1"), ("inf", "inf"), ("0.5", "0.5")])
def test_order_strings(alpha, text):
    assert io.order_to_json(RenyiOrder.parse(alpha)) == text
    assert io.order_from_json(text) == RenyiOrder.parse(alpha)


def test_floats_round_trip_bit_exact(rng):
    values = rng.random(200) * 10.0 ** rng.integers(-30, 30, 200)
    back = json.loads(io.dumps([float(v) for v in values]))
    assert all(a == b for a, b in zip(values, back))


def test_dumps_deterministic():
    desc = upset_classical_lt1(3, ["1", "23"], 4.0, 0.5, 64, explicit=False).descriptor
    assert io.dumps(io.descriptor_to_json(desc)) == io.dumps(io.descriptor_to_json(desc))
    assert io.dumps({"a": 1.0, "b": [1, 2]}, indent=0) == '{"a": 1.0, "b": [1, 2]}'


def test_non_finite_rejected():
    with pytest.raises(RenyiConeError):
        io.dumps({"x": float("inf")})


def test_spectrum_round_trip():
    spec = WeightedSpectrum([(0.5, 1), (2.0**-81, 2**80)])
    back = io.spectrum_from_json(json.loads(io.dumps(io.spectrum_to_json(spec))))
    assert back == spec


def test_csv():
    vec = EntropyVector.from_mapping(2, {"1": 1.0, "2": 0.5, "12": 1.5})
    assert io.vector_csv(vec) == "subset,entropy_bits\n1,1.0\n2,0.5\n12,1.5\n"


def test_invalid_json_text():
    with pytest.raises(RenyiConeError):
        io.loads("{not json")
