"""

``netctrl.type_utilities`` Module

This module defines a type validation utility for the arguments accepted by the public
functions of netctrl, utilizing the 'numpy' library.

Dependencies:
-------------
This module requires the following external libraries:

- 'numpy' (imported as 'np')

Example usage:
--------------
Example:

.. code-block:: python

    type_validation(
        text="nodes 2\\nleaders 2\\nedge 1 2\\n",
        cap=20,
        t_f=5.0,
    )

"""

import pathlib
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple, Type, Union

import numpy as np

# supress some pylint complaints for this module only
# pylint: disable=R0912

_SEQUENCE_TYPES = (list, tuple, set, frozenset)


def _type_names(types: Union[Type[Any], Tuple[Type[Any], ...]]) -> str:
    if isinstance(types, tuple):
        return ", ".join(cls.__name__ for cls in types)
    return types.__name__


def _check_type(
    arg_name: str,
    arg_values: Any,
    expected_type: Union[Type[Any], Tuple[Type[Any], ...]],
    element_type: Optional[Union[Type[Any], Tuple[Type[Any], ...]]] = None,
) -> None:
    validation_failed = False

    if not isinstance(arg_values, expected_type):
        validation_failed = True
    # bool is an int subclass, but never a valid count/index
    elif isinstance(arg_values, bool) and bool not in (
        expected_type if isinstance(expected_type, tuple) else (expected_type,)
    ):
        validation_failed = True

    if not validation_failed and element_type is not None:
        if isinstance(arg_values, np.ndarray):
            if arg_values.dtype != object:
                if not np.issubdtype(arg_values.dtype, np.number):
                    validation_failed = True
            elif not all(isinstance(val, element_type) for val in arg_values.flat):
                validation_failed = True
        elif isinstance(arg_values, _SEQUENCE_TYPES) and not all(
            isinstance(val, element_type) and not isinstance(val, bool)
            for val in arg_values
        ):
            validation_failed = True

    if validation_failed:
        error_msg = f"Error: {arg_name} is expected to be {_type_names(expected_type)}"
        if element_type is not None:
            error_msg += f" with elements of type '{_type_names(element_type)}'"
        raise TypeError(error_msg)


def _check_empty_data(arg_name: str, arg_values: Any) -> None:
    if isinstance(arg_values, (list, tuple, np.ndarray)) and len(arg_values) == 0:
        raise ValueError(f"Error: {arg_name} is an empty list, tuple or numpy array")


# Define a dictionary mapping each argument name to its expected type and, if applicable, element type
type_dict: Dict[
    str,
    Tuple[
        Union[Type[Any], Tuple[Type[Any], ...]],
        Optional[Union[Type[Any], Tuple[Type[Any], ...]]],
    ],
] = {
    # Strings / paths:
    "text": (str, None),
    "path": ((str, pathlib.Path), None),
    "what": (str, None),
    # Vectors:
    "x0": ((list, tuple, np.ndarray), (int, float, np.integer, np.floating)),
    "x_f": ((list, tuple, np.ndarray), (int, float, np.integer, np.floating)),
    "x0_followers": ((list, tuple, np.ndarray), (int, float, np.integer, np.floating)),
    "x0_leaders": ((list, tuple, np.ndarray), (int, float, np.integer, np.floating)),
    "weight_values": ((list, tuple), (int, Fraction)),
    # Index sets:
    "subset": (_SEQUENCE_TYPES, (int, np.integer)),
    "roots": (_SEQUENCE_TYPES, (int, np.integer)),
    "leader_ids": (_SEQUENCE_TYPES, (int, np.integer)),
    # INTs:
    "node_count": ((int, np.integer), None),
    "leader_count": ((int, np.integer), None),
    "sigma": ((int, np.integer), None),
    "cap": ((int, np.integer), None),
    "trials": ((int, np.integer), None),
    "seed": ((int, np.integer), None),
    "trial": ((int, np.integer), None),
    # FLOATs:
    "edge_probability": ((float, np.floating), None),
    # NUMERICs:
    "t_f": ((int, np.integer, float, np.floating), None),
    "dt": ((int, np.integer, float, np.floating), None),
    # Booleans:
    "timings": (bool, None),
}


def type_validation(**kwargs: Any) -> None:
    """
    Perform generic type validations on input variables.

    This function performs various type validations on a set of input variables. It helps to ensure that the input
    values conform to the expected types and conditions, raising a TypeError with a descriptive error message
    if any type validation fails and a ValueError if a list, tuple or numpy.array is empty.

    :param kwargs: Arbitrary keyword arguments representing the input variables to be checked.

    Raises:
        ``TypeError``:
            If any of the type validations fail, a TypeError is raised with a descriptive error message
            indicating the expected type and conditions for each variable.
        ``ValueError``:
            If an argument name is unknown, or if a vector argument is empty.

    Example usage:

    .. code-block:: python

        type_validation(cap=20, t_f=5.0, subset={1, 2})
    """

    for arg_name, arg_values in kwargs.items():
        if arg_name not in type_dict:
            raise ValueError(
                f"Error: '{arg_name}' is not a valid argument. "
                f"Please only use argument names defined in `type_dict`."
            )

        # Some arguments are allowed to be None, so skip them
        if arg_values is None:
            continue

        expected_type, element_type = type_dict[arg_name]
        # Validation of type
        _check_type(arg_name, arg_values, expected_type, element_type)
        # Vectors must not be empty, index sets may be
        if arg_name in ("x0", "x_f", "x0_followers", "x0_leaders"):
            _check_empty_data(arg_name, arg_values)
