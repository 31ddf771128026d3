import numpy as np
import pytest

# paired model-minus-system differences used by the model-validation example
TABLE1 = np.array(
    [
        [-0.255, -0.631], [0.201, 0.372], [0.008, -0.128], [0.014, 0.035],
        [-0.146, -0.390], [0.321, 0.639], [0.097, 0.303], [0.679, 1.240],
        [0.361, 0.398], [0.269, 0.505], [0.153, 0.207], [0.329, 0.465],
        [0.283, 0.438], [0.657, 0.905], [-0.314, -0.458],
    ]
)


@pytest.fixture
def table1():
    return TABLE1.copy()
