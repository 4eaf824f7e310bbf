"""
crookedtiles/feasibility
~~~~~~~~~~~~~~~~~~~~~~~~

Small linear feasibility problems with strict inequalities, decided by
maximizing a common slack with :func:`scipy.optimize.linprog`.
"""

import logging
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .typing import FloatArray
from .utilities import DegenerateConfigurationError

logger = logging.getLogger(__name__)

# linprog status codes
_OPTIMAL = 0
_INFEASIBLE = 2


def max_margin(
    rows: FloatArray,
    rhs: FloatArray,
    strict: Sequence[bool],
    equalities: Optional[FloatArray] = None,
    equality_rhs: Optional[FloatArray] = None,
    cap: float = 1.0,
) -> Optional[float]:
    """Largest t such that some x satisfies ``rows[i]·x + t ≤ rhs[i]`` for the
    strict rows, ``rows[i]·x ≤ rhs[i]`` for the others, and the equalities.

    Rows are rescaled to unit Euclidean length first, so t is a distance
    measured against every strict row. The margin is capped at ``cap``.
    Returns None when the non-strict part alone is infeasible.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    rhs = np.asarray(rhs, dtype=float)
    norms = np.linalg.norm(rows, axis=1)
    norms[norms == 0.0] = 1.0
    rows, rhs = rows / norms[:, None], rhs / norms
    slack_column = np.asarray(strict, dtype=float)[:, None]
    a_ub = np.hstack([rows, slack_column])
    variables = rows.shape[1]
    objective = np.zeros(variables + 1)
    objective[-1] = -1.0
    a_eq = b_eq = None
    if equalities is not None:
        a_eq = np.hstack([np.atleast_2d(equalities), np.zeros((len(equality_rhs), 1))])
        b_eq = equality_rhs
    result = linprog(
        objective,
        A_ub=a_ub,
        b_ub=rhs,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(None, None)] * variables + [(None, cap)],
        method="highs",
    )
    if result.status == _INFEASIBLE:
        return None
    if result.status != _OPTIMAL:
        # A capped margin cannot be unbounded, so anything else is numerical.
        raise DegenerateConfigurationError(
            f"Feasibility solve failed: {result.message}"
        )
    margin = float(-result.fun)
    logger.debug("Margin %.3g over %d inequalities", margin, len(rhs))
    return margin
