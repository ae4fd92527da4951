"""Park transformation between the stationary abc frame and the rotating qd0 frame.

The q row uses cosines (q-axis aligned with phase a at theta = 0) and the
matrix carries the 2/3 amplitude-invariant scale with a 1/2 zero-sequence row.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

#: Phase displacement of a balanced three-phase set.
THETA_EO = 2.0 * np.pi / 3.0


class ThreePhase(NamedTuple):
    a: float
    b: float
    c: float


class QdoFrame(NamedTuple):
    q: float
    d: float
    o: float


def park_matrix(theta: float) -> np.ndarray:
    """Return the 3x3 abc -> qd0 matrix for rotor angle ``theta``."""
    angles = np.array([theta, theta - THETA_EO, theta + THETA_EO])
    return (2.0 / 3.0) * np.vstack([np.cos(angles), np.sin(angles), np.full(3, 0.5)])


def inverse_park_matrix(theta: float) -> np.ndarray:
    """Closed-form inverse of :func:`park_matrix`."""
    angles = np.array([theta, theta - THETA_EO, theta + THETA_EO])
    return np.column_stack([np.cos(angles), np.sin(angles), np.ones(3)])


def park(f: ThreePhase, theta: float) -> QdoFrame:
    """Project a three-phase snapshot onto the qd0 frame at angle ``theta``."""
    q, d, o = park_matrix(theta) @ np.asarray(f, dtype=float)
    return QdoFrame(float(q), float(d), float(o))


def inverse_park(f: QdoFrame, theta: float) -> ThreePhase:
    """Map a qd0 triple back to phase quantities at angle ``theta``."""
    a, b, c = inverse_park_matrix(theta) @ np.asarray(f, dtype=float)
    return ThreePhase(float(a), float(b), float(c))


def inverse_park_series(q, d, o, theta):
    """Vectorised inverse Park for arrays of samples.

    All arguments broadcast together; returns ``(a, b, c)`` arrays.
    """
    q, d, o, theta = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (q, d, o, theta)))
    a = q * np.cos(theta) + d * np.sin(theta) + o
    b = q * np.cos(theta - THETA_EO) + d * np.sin(theta - THETA_EO) + o
    c = q * np.cos(theta + THETA_EO) + d * np.sin(theta + THETA_EO) + o
    return a, b, c
