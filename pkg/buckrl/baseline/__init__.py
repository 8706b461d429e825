from buckrl.baseline.pi import (
    DoubleLoopPiController,
    PiGains,
    PiState,
    pi_controller_step,
    run_pi_closed_loop,
)

__all__ = [
    "DoubleLoopPiController",
    "PiGains",
    "PiState",
    "pi_controller_step",
    "run_pi_closed_loop",
]
