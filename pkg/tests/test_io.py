import json
import random
from fractions import Fraction

import numpy as np
import pytest

from trackshear import fixtures, io
from trackshear.sampling import random_configuration, random_element, random_exact_configuration
from trackshear.shear import compose_shearing, finite_gap_derivative


@pytest.mark.parametrize("name", ["genus2_complete", "theta", "theta_oriented"])
def test_track_roundtrip(name):
    t = getattr(fixtures, name)()
    again = io.track_from_dict(json.loads(io.dumps(io.track_to_dict(t))))
    assert again == t


def test_cover_roundtrip(cover):
    assert io.track_from_dict(io.track_to_dict(cover)) == cover


def test_weights_roundtrip(twisted):
    w = random_element(twisted[4], random.Random(0))
    data = io.weights_to_dict(w)
    assert all(isinstance(x, str) for v in data["weights"].values() for x in v)
    assert io.weights_from_dict(json.loads(io.dumps(data))) == w


def test_config_roundtrip_exact():
    cfg = random_exact_configuration(3, 2, random.Random(1))
    again = io.config_from_dict(json.loads(io.dumps(io.config_to_dict(cfg))))
    assert (finite_gap_derivative(again) == finite_gap_derivative(cfg)).all()


def test_config_roundtrip_float():
    cfg = random_configuration(4, 3, np.random.default_rng(2))
    again = io.config_from_dict(json.loads(io.dumps(io.config_to_dict(cfg))))
    assert np.array_equal(compose_shearing(again), compose_shearing(cfg))


def test_unknown_fields_rejected():
    data = io.track_to_dict(fixtures.theta())
    data["colour"] = "blue"
    with pytest.raises(io.FormatError, match="unknown"):
        io.track_from_dict(data)
    data = io.track_to_dict(fixtures.theta())
    data["switches"][0]["extra"] = 1
    with pytest.raises(io.FormatError):
        io.track_from_dict(data)
    with pytest.raises(io.FormatError):
        io.weights_from_dict({"d": 1, "weights": {}, "n": 2})


@pytest.mark.parametrize("bad", ["1.5", "1e3", "1/0", 3, "x", "2/-3"])
def test_rational_strings(bad):
    with pytest.raises(io.FormatError):
        io.parse_rational(bad)


def test_rational_format():
    assert io.parse_rational("-6/4") == Fraction(-3, 2)
    assert io.format_rational(Fraction(-3, 2)) == "-3/2"
    assert io.format_rational(4) == "4"
    assert io.format_float(0.1) == "0.10000000000000001"


def test_weight_length_checked():
    with pytest.raises(io.FormatError):
        io.weights_from_dict({"d": 2, "weights": {"e1": ["1"]}})


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"switches": [', encoding="utf-8")
    with pytest.raises(io.FormatError, match="malformed"):
        io.load_track(p)
