"""
Dataset manifests: one JSON object per line, `{"path": ..., "label": 0|1}`.

The label key is omitted for unlabeled entries. Relative paths are resolved
against the manifest's own directory.
"""

import json
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from chromasync.core.exceptions import ManifestError


class ManifestEntry(BaseModel):
    path: str = Field(..., min_length=1)
    label: Optional[int] = Field(default=None, description="0 = real, 1 = fake")

    @field_validator("label")
    @classmethod
    def validate_label(cls, v):
        if v is not None and v not in (0, 1):
            raise ValueError(f"label must be 0 (real) or 1 (fake), got {v}")
        return v

    model_config = {"frozen": True}


class DatasetManifest(BaseModel):
    entries: list[ManifestEntry] = Field(default_factory=list)
    root: Optional[Path] = Field(default=None, exclude=True)

    @model_validator(mode="after")
    def validate_unique_paths(self):
        seen = set()
        for entry in self.entries:
            if entry.path in seen:
                raise ValueError(f"Duplicate manifest path: {entry.path}")
            seen.add(entry.path)
        return self

    def __len__(self) -> int:
        return len(self.entries)

    def resolve(self, entry: ManifestEntry) -> Path:
        """Absolute-or-root-relative location of an entry's file."""
        path = Path(entry.path)
        if path.is_absolute() or self.root is None:
            return path
        return self.root / path

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        lines = [
            json.dumps(entry.model_dump(exclude_none=True), separators=(", ", ": "))
            for entry in self.entries
        ]
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return path

    @classmethod
    def read(cls, path: str | Path) -> "DatasetManifest":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ManifestError(f"Cannot read manifest {path}: {e}") from e

        entries = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                entries.append(ManifestEntry.model_validate(json.loads(line)))
            except (json.JSONDecodeError, ValidationError) as e:
                raise ManifestError(f"{path}:{lineno}: invalid manifest entry: {e}") from e
        try:
            return cls(entries=entries, root=path.parent)
        except ValidationError as e:
            raise ManifestError(f"{path}: {e}") from e
