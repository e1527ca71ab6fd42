import numpy as np


def readonly(value, dtype=float) -> np.ndarray:
    """Copy `value` into a numpy array that cannot be mutated in place"""

    array = np.array(value, dtype=dtype)
    array.flags.writeable = False
    return array
