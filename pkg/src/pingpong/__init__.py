"""Finite-sample statistics of the ping-pong protocol under the u/s eavesdropping attack."""

from .bits import (
    AttackPattern,
    BitString,
    JointCounts,
    PingPongError,
    RateVector,
    feasible,
    pair_counts,
    qber,
    qber_attainable,
    rates_from_params,
)
from .channel import (
    asymptotic_frequencies,
    asymptotic_operating_point,
    attack_outcome_dist,
    enumerate_outcomes,
    expected_statistics,
    extracted_frequencies,
    sample_transmission,
)
from .infotheory import (
    mutual_information_closed_form,
    mutual_information_from_counts,
    shannon_entropy,
    single_bit_mutual_information,
    surface_grid,
)
from .montecarlo import ExperimentConfig, convergence_study, run_experiment
