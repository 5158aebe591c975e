"""Scene classification from complex-network texture and HSV color features."""

from ._core import (
    COLOR_FEATURE_LENGTH,
    GLOBAL_FEATURE_LENGTH,
    Error,
    evaluate,
    extract_features,
    feature_fingerprint,
    graph_edges,
    predict,
    read_deep_features,
    rgb_to_hsv,
    sobel_gradient,
    slices,
    to_grayscale,
    train,
    ulbp_histogram,
)

__all__ = [
    "COLOR_FEATURE_LENGTH",
    "GLOBAL_FEATURE_LENGTH",
    "Error",
    "evaluate",
    "extract_features",
    "feature_fingerprint",
    "graph_edges",
    "predict",
    "read_deep_features",
    "rgb_to_hsv",
    "sobel_gradient",
    "slices",
    "to_grayscale",
    "train",
    "ulbp_histogram",
]
