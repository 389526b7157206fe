"""Density-adaptive kernel classifier for imbalanced binary data."""

from ._kotaro import (
    KotaroError,
    Model,
    cross_validate,
    design_matrix,
    f1,
    fit,
    generate,
    gmean,
    imbalance_sweep,
    load_model,
    metrics,
    neighbor_scales,
    stratified_kfold,
)

__all__ = [
    "KotaroError",
    "Model",
    "cross_validate",
    "design_matrix",
    "f1",
    "fit",
    "generate",
    "gmean",
    "imbalance_sweep",
    "load_model",
    "metrics",
    "neighbor_scales",
    "stratified_kfold",
]
