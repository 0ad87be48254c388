"""Entropy-stable TeCNO solver with SP-WENO and DSP-WENO reconstructions."""

from ._tecno import (
    ConfigError,
    WeightsFileError,
    cases,
    convergence,
    default_weights_path,
    git_blob_sha1,
    load_weights,
    pseudo_discontinuity_jumps,
    reconstruct,
    reconstruction_accuracy,
    run,
    sign_bracket,
    train,
)

__all__ = [
    "ConfigError",
    "WeightsFileError",
    "cases",
    "convergence",
    "default_weights_path",
    "git_blob_sha1",
    "load_weights",
    "pseudo_discontinuity_jumps",
    "reconstruct",
    "reconstruction_accuracy",
    "run",
    "sign_bracket",
    "train",
]
