"""Bicomplex arithmetic, BCR derivative operators and bicomplex LMS filters."""
from .bicomplex import (
    E1, E2, I, J, K, ONE, ZERO, Bicomplex, BicomplexMatrix, BicomplexVector,
    DimensionError, HyperbolicNorm, IdempotentPair, ZeroDivisorError,
)
from .gradients import FDConfig, PartialKind, bc_partial, grad, wirtinger
from .harness import ConfigError, ExperimentConfig, LearningCurve, run_experiment
from .lms import AdaptiveFilter, Algorithm

__version__ = "0.1.0"
