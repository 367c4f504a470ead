import pathlib
from fractions import Fraction

import numpy as np
import pytest

from netctrl.type_utilities import type_validation


def test_valid_arguments():
    type_validation(
        text="nodes 2\nleaders 2\n",
        path=pathlib.Path("net.top"),
        x0=np.array([0.0, 1.0]),
        x_f=[1, 2.5],
        weight_values=(1, Fraction(1, 2)),
        subset={1, 2},
        roots=(np.int64(3),),
        cap=20,
        t_f=5,
        dt=0.01,
        edge_probability=0.5,
        timings=True,
        seed=None,
    )
    # index sets may be empty
    type_validation(subset=set(), leader_ids=[])


def test_invalid_types():
    with pytest.raises(TypeError):
        type_validation(cap=20.0)
    with pytest.raises(TypeError):
        type_validation(cap=True)
    with pytest.raises(TypeError):
        type_validation(subset=[1, True])
    with pytest.raises(TypeError):
        type_validation(weight_values=(1, 0.5))
    with pytest.raises(TypeError):
        type_validation(x0=["a", 1.0])
    with pytest.raises(TypeError):
        type_validation(x0=np.array(["a", "b"]))
    with pytest.raises(TypeError):
        type_validation(edge_probability=1)
    with pytest.raises(TypeError):
        type_validation(timings=1)
    with pytest.raises(TypeError) as excinfo:
        type_validation(text=3)
    assert "text" in str(excinfo.value)


def test_empty_vectors_and_unknown_names():
    with pytest.raises(ValueError):
        type_validation(x0=[])
    with pytest.raises(ValueError):
        type_validation(x_f=np.array([]))
    with pytest.raises(ValueError):
        type_validation(weights=[1, 2])
