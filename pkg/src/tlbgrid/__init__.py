"""Ultracapacitor/fuel-cell grid chain: TLB DC-DC converter and dq-frame inverter models."""
from .inverter_dq import (
    DqCurrents,
    GridParams,
    InvalidPowerFactor,
    ModulationPair,
    NoRealRoot,
    PowerFactorAngle,
    dc_link_current,
    dq_dynamics,
    grid_currents,
    modulation_indices,
    powers,
    reactive_from_active,
    theta_from_pf,
)
from .reference_frames import QdoFrame, ThreePhase, inverse_park, park
from .simulation import (
    Metrics,
    NumericBlowup,
    SimConfig,
    SimulationResult,
    Waveform,
    WindowTooShort,
    section4_preset,
    simulate_converter,
    simulate_inverter_dq,
    steady_metrics,
    tlb_pwm,
)
from .steady_state import (
    OperatingPoint,
    SteadyStateRow,
    TrendSeries,
    pf_sweep,
    solve_point,
    trend_series,
)
from .tlb_converter import (
    ConverterParams,
    ConverterState,
    DegenerateDuty,
    DutyPair,
    InfeasibleGain,
    InvalidSwitchState,
    Mode,
    SwitchState,
    average_current_ratio,
    mode_of,
    state_derivative,
    steady_state_duties,
    voltage_gain,
)

__version__ = "0.1.0"
