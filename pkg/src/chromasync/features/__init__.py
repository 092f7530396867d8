from .extractor import extract, extract_batch, extract_image_features, pairwise_diff, pearson
from .table import FeatureTable, split_table

__all__ = [
    "FeatureTable",
    "extract",
    "extract_batch",
    "extract_image_features",
    "pairwise_diff",
    "pearson",
    "split_table",
]
