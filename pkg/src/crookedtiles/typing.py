from typing import Tuple

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]
Coefficients = Tuple[float, float]
AlphaTriple = Tuple[float, float, float]
