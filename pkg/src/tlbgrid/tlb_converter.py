"""Three-level bidirectional buck-boost (TLB) converter model.

Switch S1/S2 and S3/S4 are complementary pairs, so the converter has four
valid configurations selected by (S1, S4):

====  ==  ==  ==  ==
Mode  S1  S2  S3  S4
====  ==  ==  ==  ==
I     0   1   1   0
II    0   1   0   1
III   1   0   1   0
IV    1   0   0   1
====  ==  ==  ==  ==

With the unified switching function the state equations are::

    L  diL/dt  = Vs - s1*vc1 - s4*vc2
    C1 dvc1/dt = -io + s1*iL
    C2 dvc2/dt = -io + s4*iL
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional


class InvalidSwitchState(ValueError):
    """Switch combination violates S2 = not S1 or S3 = not S4."""


class DegenerateDuty(ValueError):
    """d1 + d4 == 0, the steady gain is undefined."""


class InfeasibleGain(ValueError):
    """Requested output voltage is below the source voltage."""


class Mode(enum.Enum):
    I = 1
    II = 2
    III = 3
    IV = 4


class SwitchState(NamedTuple):
    s1: bool
    s2: bool
    s3: bool
    s4: bool

    @classmethod
    def from_pair(cls, s1: bool, s4: bool) -> "SwitchState":
        """Build the valid state whose S1 and S4 are given."""
        s1, s4 = bool(s1), bool(s4)
        return cls(s1, not s1, not s4, s4)

    @property
    def is_valid(self) -> bool:
        return bool(self.s2) != bool(self.s1) and bool(self.s3) != bool(self.s4)


_MODES = {
    (False, False): Mode.I,
    (False, True): Mode.II,
    (True, False): Mode.III,
    (True, True): Mode.IV,
}

MODE_SWITCHES = {mode: SwitchState.from_pair(*pair) for pair, mode in _MODES.items()}


class ConverterState(NamedTuple):
    iL: float
    vc1: float
    vc2: float

    @property
    def vo(self) -> float:
        return self.vc1 + self.vc2


class DutyPair(NamedTuple):
    d1: float
    d4: float


@dataclass(frozen=True)
class ConverterParams:
    """Converter component values and load.

    Exactly one of ``r_load`` (ohms) or ``io_load`` (amps, constant current)
    should be set; ``r_load`` wins if both are given.
    """

    L: float = 0.2e-3
    C1: float = 250e-6
    C2: float = 250e-6
    Vs: float = 400.0
    r_load: Optional[float] = None
    io_load: Optional[float] = None

    def __post_init__(self):
        if min(self.L, self.C1, self.C2) <= 0:
            raise ValueError("L, C1 and C2 must be positive")
        if self.Vs <= 0:
            raise ValueError("Vs must be positive")
        if self.r_load is not None and self.r_load <= 0:
            raise ValueError("r_load must be positive")
        if self.r_load is None and self.io_load is None:
            raise ValueError("a load (r_load or io_load) is required")

    def load_current(self, vo: float) -> float:
        if self.r_load is not None:
            return vo / self.r_load
        return self.io_load

    @classmethod
    def for_power(cls, vo_target: float, p_target: float, **kwargs) -> "ConverterParams":
        """Resistive load drawing ``p_target`` at ``vo_target``."""
        return cls(r_load=vo_target**2 / p_target, **kwargs)


def mode_of(s: SwitchState) -> Mode:
    if not s.is_valid:
        raise InvalidSwitchState(f"complementarity violated: {tuple(int(x) for x in s)}")
    return _MODES[(bool(s.s1), bool(s.s4))]


def state_derivative(x: ConverterState, s: SwitchState, p: ConverterParams, io: float) -> ConverterState:
    """Time derivative of (iL, vc1, vc2) for switch state ``s`` and output current ``io``."""
    s1 = 1.0 if s.s1 else 0.0
    s4 = 1.0 if s.s4 else 0.0
    return ConverterState(
        (p.Vs - s1 * x.vc1 - s4 * x.vc2) / p.L,
        (-io + s1 * x.iL) / p.C1,
        (-io + s4 * x.iL) / p.C2,
    )


def _check_duty(d: DutyPair) -> None:
    for name, v in zip(("d1", "d4"), d):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"duty {name}={v} out of range [0, 1]")


def voltage_gain(d: DutyPair) -> float:
    """Steady-state Vo/Vs = 2 / (d1 + d4)."""
    _check_duty(d)
    total = d.d1 + d.d4
    if total <= 0.0:
        raise DegenerateDuty("d1 + d4 must be positive")
    return 2.0 / total


def average_current_ratio(d: DutyPair) -> float:
    """Steady-state Io/IL = (d1 + d4) / 2, the reciprocal of the gain."""
    _check_duty(d)
    total = d.d1 + d.d4
    if total <= 0.0:
        raise DegenerateDuty("d1 + d4 must be positive")
    return total / 2.0


def steady_state_duties(Vs: float, Vo_target: float) -> DutyPair:
    """Symmetric duties (d1 = d4) that give ``Vo_target`` from ``Vs``."""
    if Vs <= 0:
        raise ValueError("Vs must be positive")
    if Vo_target < Vs:
        raise InfeasibleGain(f"Vo_target={Vo_target} below Vs={Vs}; gain must be >= 1")
    d = Vs / Vo_target
    return DutyPair(d, d)


def equilibrium_state(p: ConverterParams, d: DutyPair) -> ConverterState:
    """Averaged equilibrium used to initialise switched runs."""
    vo = p.Vs * voltage_gain(d)
    io = p.load_current(vo)
    return ConverterState(io * voltage_gain(d), vo / 2.0, vo / 2.0)
