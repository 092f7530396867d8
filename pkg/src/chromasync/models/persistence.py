"""
Versioned JSON documents for fitted models and expectation tables.

Every document carries `format_version` and a `kind` discriminator; readers
reject unknown kinds and versions with ModelFormatError. Floats are written
with Python's shortest round-trip repr, so parameters reload bit-for-bit.
"""

import json
from pathlib import Path
from typing import Any, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from chromasync.core.constants import FEATURE_NAMES, FORMAT_VERSION
from chromasync.core.exceptions import ModelFormatError
from chromasync.core.utils import logger
from chromasync.models.gmm import GmmModel
from chromasync.models.svm import SvmModel


class Provenance(BaseModel):
    """Where a model came from: run config, seed and a digest of the training CSV."""

    config: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    input_digest: Optional[str] = None
    input_rows: Optional[int] = Field(default=None, ge=0)


class GmmDocument(BaseModel):
    format_version: int = FORMAT_VERSION
    kind: Literal["gmm"] = "gmm"
    dim: int = Field(ge=1)
    weights: list[float]
    means: list[list[float]]
    variances: list[list[float]]
    real_component: int = Field(ge=0, le=1)
    provenance: Optional[Provenance] = None

    @classmethod
    def from_model(cls, model: GmmModel, provenance: Optional[Provenance] = None) -> "GmmDocument":
        return cls(
            dim=model.dim,
            weights=model.weights.tolist(),
            means=model.means.tolist(),
            variances=model.variances.tolist(),
            real_component=model.real_component,
            provenance=provenance,
        )

    def to_model(self) -> GmmModel:
        if np.asarray(self.means).shape != (2, self.dim):
            raise ModelFormatError(f"GMM means do not match dim={self.dim}")
        return GmmModel(
            weights=self.weights,
            means=self.means,
            variances=self.variances,
            real_component=self.real_component,
        )


class Scaling(BaseModel):
    shift: list[float]
    scale: list[float]


class SvmDocument(BaseModel):
    format_version: int = FORMAT_VERSION
    kind: Literal["svm"] = "svm"
    gamma: float = Field(gt=0)
    c: float = Field(gt=0)
    bias: float
    scaling: Scaling
    support_vectors: list[list[float]]
    dual_coefs: list[float]
    provenance: Optional[Provenance] = None

    @classmethod
    def from_model(cls, model: SvmModel, provenance: Optional[Provenance] = None) -> "SvmDocument":
        return cls(
            gamma=model.gamma,
            c=model.c,
            bias=model.bias,
            scaling=Scaling(shift=model.scale_shift.tolist(), scale=model.scale_scale.tolist()),
            support_vectors=model.support_vectors.tolist(),
            dual_coefs=model.dual_coefs.tolist(),
            provenance=provenance,
        )

    def to_model(self) -> SvmModel:
        n_features = len(self.scaling.shift)
        support_vectors = np.asarray(self.support_vectors, dtype=np.float64).reshape(-1, n_features)
        return SvmModel(
            support_vectors=support_vectors,
            dual_coefs=self.dual_coefs,
            bias=self.bias,
            gamma=self.gamma,
            c=self.c,
            scale_shift=self.scaling.shift,
            scale_scale=self.scaling.scale,
        )


class ExpectationEntry(BaseModel):
    name: str
    m0: float
    m1: float


class ExpectationDocument(BaseModel):
    format_version: int = FORMAT_VERSION
    kind: Literal["expectations"] = "expectations"
    features: list[ExpectationEntry]
    provenance: Optional[Provenance] = None


ModelDocument = Union[GmmDocument, SvmDocument]
_DOCUMENTS: dict[str, type[BaseModel]] = {
    "gmm": GmmDocument,
    "svm": SvmDocument,
    "expectations": ExpectationDocument,
}


def _write_document(document: BaseModel, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = document.model_dump_json(indent=2, exclude_none=True)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {document.kind} document to {path}")
    return path


def read_document(path: str | Path) -> BaseModel:
    """Parse any chromasync JSON document, dispatching on `kind`."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path} is not valid JSON: {e}") from e

    if not isinstance(raw, dict):
        raise ModelFormatError(f"{path} does not hold a JSON object")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"{path} has format_version {version!r}; this build reads version {FORMAT_VERSION}"
        )
    kind = raw.get("kind")
    document_cls = _DOCUMENTS.get(kind)
    if document_cls is None:
        raise ModelFormatError(f"{path} has unknown kind {kind!r}")
    try:
        return document_cls.model_validate(raw)
    except ValidationError as e:
        raise ModelFormatError(f"{path} is not a valid {kind} document: {e}") from e


def save_model(
    model: Union[GmmModel, SvmModel], path: str | Path, provenance: Optional[Provenance] = None
) -> Path:
    if isinstance(model, GmmModel):
        document = GmmDocument.from_model(model, provenance)
    elif isinstance(model, SvmModel):
        document = SvmDocument.from_model(model, provenance)
    else:
        raise TypeError(f"Cannot persist {type(model).__name__}")
    return _write_document(document, path)


def load_model(path: str | Path) -> Union[GmmModel, SvmModel]:
    document = read_document(path)
    if not isinstance(document, (GmmDocument, SvmDocument)):
        raise ModelFormatError(f"{path} holds a {document.kind} document, not a model")
    try:
        return document.to_model()
    except ValueError as e:
        if isinstance(e, ModelFormatError):
            raise
        raise ModelFormatError(f"{path} holds inconsistent model parameters: {e}") from e


def save_expectations(
    pairs: list[tuple[float, float]], path: str | Path, provenance: Optional[Provenance] = None
) -> Path:
    if len(pairs) != len(FEATURE_NAMES):
        raise ModelFormatError(f"Expected {len(FEATURE_NAMES)} expectation pairs, got {len(pairs)}")
    document = ExpectationDocument(
        features=[
            ExpectationEntry(name=name, m0=float(m0), m1=float(m1))
            for name, (m0, m1) in zip(FEATURE_NAMES, pairs)
        ],
        provenance=provenance,
    )
    return _write_document(document, path)


def load_expectations(path: str | Path) -> list[tuple[str, float, float]]:
    """(name, m0, m1) per feature in canonical feature order; pair validity is checked by the caller."""
    document = read_document(path)
    if not isinstance(document, ExpectationDocument):
        raise ModelFormatError(f"{path} holds a {document.kind} document, not expectations")
    names = [entry.name for entry in document.features]
    if sorted(names) != sorted(FEATURE_NAMES):
        raise ModelFormatError(f"{path} must list exactly the features {', '.join(FEATURE_NAMES)}")
    by_name = {entry.name: entry for entry in document.features}
    return [(name, by_name[name].m0, by_name[name].m1) for name in FEATURE_NAMES]
