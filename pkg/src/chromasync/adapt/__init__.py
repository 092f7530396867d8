from .domain_adaptation import (
    AdaptationResult,
    ExpectationPair,
    ExpectationTable,
    adapt_and_predict,
    estimate_expectations,
    scale_features,
)

__all__ = [
    "AdaptationResult",
    "ExpectationPair",
    "ExpectationTable",
    "adapt_and_predict",
    "estimate_expectations",
    "scale_features",
]
