# Simulation package: fixed-step integrators, bifurcation sweeps and phase portraits
from .history_buffer import HistoryBuffer
from .integrators import (
    SimConfig, Trajectory, simulate, simulate_dirac, simulate_uniform,
    simulate_gamma_chain, simulate_gamma_direct
)
from .sweeps import (
    BifurcationRow, BifurcationSweep, PhasePortrait, bifurcation_row, bifurcation_sweep,
    amplitude_settled, settled_run, sweep_delays, refined_delays, phase_portrait, window_amplitudes,
    asymptotic_amplitude
)
