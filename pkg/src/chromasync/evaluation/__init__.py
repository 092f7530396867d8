from .experiments import run_benchmark, run_unbalanced
from .histogram import Histogram, histogram, histograms_by_label
from .metrics import ConfusionCounts, MetricsReport, evaluate_labels, metrics, render_metrics_table
from .predictions import PredictionSet, predict_table

__all__ = [
    "ConfusionCounts",
    "MetricsReport",
    "metrics",
    "evaluate_labels",
    "render_metrics_table",
    "Histogram",
    "histogram",
    "histograms_by_label",
    "PredictionSet",
    "predict_table",
    "run_benchmark",
    "run_unbalanced",
]
