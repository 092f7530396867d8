from .gmm import GmmClassification, GmmModel, classify, em_fit, feature_expectations
from .persistence import (
    Provenance,
    load_expectations,
    load_model,
    read_document,
    save_expectations,
    save_model,
)
from .svm import SmoSolver, SvmModel, decision, rbf_kernel, smo_train, train_with_solver

__all__ = [
    "GmmModel",
    "GmmClassification",
    "em_fit",
    "classify",
    "feature_expectations",
    "SvmModel",
    "SmoSolver",
    "rbf_kernel",
    "smo_train",
    "train_with_solver",
    "decision",
    "Provenance",
    "save_model",
    "load_model",
    "save_expectations",
    "load_expectations",
    "read_document",
]
