"""Exception types shared across the simulator."""


class WavebroError(Exception):
    """Base class for all simulator errors."""


class MechanismError(WavebroError):
    """Slider-crank kinematic lockup: the rod cannot reach the slider axis."""


class AccumulatorEmptyError(WavebroError):
    """Accumulator liquid inventory exhausted (pressure below precharge)."""


class AccumulatorOverfillError(WavebroError):
    """Liquid volume reached the total gas-bottle volume."""


class BackflowError(WavebroError):
    """Negative pressure drop across an orifice whose flow direction is fixed."""


class IntegrationDivergedError(WavebroError):
    """Integrator produced a non-finite state."""


class UndefinedMetricError(WavebroError):
    """A ratio metric (SEC, LCOW, ...) was requested with a zero denominator."""


class CycleAccountingError(WavebroError):
    """Batch tank volume underflowed before the cycle-reset trigger."""


class ScenarioError(WavebroError):
    """Scenario file failed to parse or validate."""


class SimulationAbort(WavebroError):
    """Base for hard feasibility violations that stop a run.

    Carries the simulation time and a snapshot of the plant state at the
    first violation.
    """

    def __init__(self, message, t=None, snapshot=None):
        super().__init__(message)
        self.t = t
        self.snapshot = snapshot

    def __str__(self):
        base = super().__str__()
        if self.t is not None:
            base += f" (t={self.t:.3f} s)"
        return base


class InfeasibleSeaStateError(SimulationAbort):
    """Kidney-loop backflow or drained accumulator: sea state cannot carry the load."""


class OverloadError(SimulationAbort):
    """Main-loop FCD inlet pressure reached zero: downstream load too large."""
