import json
import math

import numpy as np
import pytest

from squatcalc.core.linalg import QuatMatrix
from squatcalc.core.quaternion import Quaternion
from squatcalc.utils.codec import dumps


def test_floats_keep_every_digit():
    assert dumps(0.1) == "0.10000000000000001"
    assert float(dumps(1 / 3)) == 1 / 3
    assert dumps([1.0, 2]) == "[1, 2]"


def test_non_finite_values():
    assert dumps([math.nan, math.inf, -math.inf]) == "[NaN, Infinity, -Infinity]"
    decoded = json.loads(dumps({"x": math.inf}))
    assert decoded["x"] == math.inf


def test_numpy_scalars_and_arrays():
    assert dumps(np.float64(0.5)) == "0.5"
    assert dumps(np.int32(7)) == "7"
    assert dumps(np.bool_(True)) == "true"
    assert dumps(np.array([[1.5, 2.0]])) == "[[1.5, 2]]"


def test_objects_with_to_json():
    assert json.loads(dumps({"q": Quaternion(1.0, 2.0, 3.0, 4.0)})) == {"q": [1.0, 2.0, 3.0, 4.0]}
    m = QuatMatrix.identity(2)
    assert QuatMatrix.from_json(json.loads(dumps(m))).allclose(m, atol=0.0)


def test_strings_and_none():
    assert dumps({"name": "diag-i", "k": None, "ok": False}) == '{"name": "diag-i", "k": null, "ok": false}'


def test_unknown_objects():
    with pytest.raises(TypeError):
        dumps(object())
