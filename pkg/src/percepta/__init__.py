"""Perceptual spectrogram metrics and GTZAN genre-classification experiments."""

from .metrics import (
    MetricKind,
    NlpdParams,
    Pyramid,
    SsimParams,
    collapse,
    distance,
    distance_and_gradient,
    divisive_normalize,
    laplacian_pyramid,
    metric_gradient,
    ms_ssim,
    mse,
    nlpd,
    ssim,
)

__all__ = [
    "MetricKind",
    "NlpdParams",
    "Pyramid",
    "SsimParams",
    "collapse",
    "distance",
    "distance_and_gradient",
    "divisive_normalize",
    "laplacian_pyramid",
    "metric_gradient",
    "ms_ssim",
    "mse",
    "nlpd",
    "ssim",
]

__version__ = "0.1.0"
