import json
import math

import pytest
from hypothesis import given

from jumpreturn.ir import (
    Delay, FrameRotation, HardPulse, PulseSequence, SchemaError, format_sequence, seq,
    sequence_from_json, sequence_to_json,
)

from strategies import sequences


def test_negative_nutation_rejected():
    with pytest.raises(ValueError):
        HardPulse(-0.1)


def test_physical_flag():
    assert seq(HardPulse(1.0), Delay(0.5), FrameRotation(0.2)).is_physical
    assert not seq(Delay(-0.1)).is_physical
    assert PulseSequence().is_physical


def test_json_format_in_degrees():
    s = seq(HardPulse(math.pi / 2, -math.pi / 2), Delay(math.pi / 4), FrameRotation(math.pi))
    data = json.loads(sequence_to_json(s))
    assert data == [
        {"kind": "pulse", "nutation_deg": 90.0, "phase_deg": -90.0},
        {"kind": "delay", "angle_deg": 45.0},
        {"kind": "frame", "angle_deg": 180.0},
    ]


@given(sequences)
def test_json_round_trip(s):
    back = sequence_from_json(sequence_to_json(s))
    assert len(back) == len(s)
    for a, b in zip(s, back):
        assert type(a) is type(b)
        for name in a.__dataclass_fields__:
            assert getattr(b, name) == pytest.approx(getattr(a, name), abs=1e-12)


@pytest.mark.parametrize("text", [
    "{}",
    "[{\"kind\": \"wiggle\"}]",
    "[{\"kind\": \"pulse\"}]",
    "[{\"kind\": \"pulse\", \"nutation_deg\": -10}]",
    "[{\"kind\": \"delay\", \"angle_deg\": \"ten\"}]",
    "not json",
])
def test_json_schema_errors(text):
    with pytest.raises(SchemaError):
        sequence_from_json(text)


def test_format_sequence():
    s = seq(HardPulse(math.pi / 2, -math.pi / 2), Delay(math.pi / 4), FrameRotation(math.pi / 4))
    assert format_sequence(s) == "90_{-90} D(45) F(45)"
    assert format_sequence(PulseSequence()) == "(identity)"
