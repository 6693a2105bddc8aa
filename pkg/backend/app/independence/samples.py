import csv
import io
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.core.errors import InputError


class SampleMatrix(BaseModel):
    """Observations in rows, measurement variables in columns."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    column_labels: Optional[tuple[str, ...]] = None

    @field_validator("values", mode="before")
    @classmethod
    def _as_float_matrix(cls, values: Any) -> np.ndarray:
        try:
            matrix = np.array(values, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"samples must be numeric: {exc}") from exc
        if matrix.ndim != 2:
            raise ValueError(f"samples must be a 2-D matrix, got {matrix.ndim} dimensions")
        if matrix.shape[0] < 2:
            raise ValueError(f"need at least 2 observations, got {matrix.shape[0]}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("samples contain non-finite values")
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _labels_match(self) -> "SampleMatrix":
        labels = self.column_labels
        if labels is not None:
            if len(labels) != self.values.shape[1]:
                raise ValueError(f"expected {self.values.shape[1]} column labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise ValueError("column labels must be unique")
        return self

    @classmethod
    def of(cls, values: Any, column_labels: Optional[list[str]] = None) -> "SampleMatrix":
        """Build from raw data, turning validation failures into input errors."""
        try:
            return cls(values=values, column_labels=tuple(column_labels) if column_labels is not None else None)
        except ValueError as exc:
            raise InputError(str(exc)) from exc

    @property
    def num_samples(self) -> int:
        return int(self.values.shape[0])

    @property
    def num_variables(self) -> int:
        return int(self.values.shape[1])

    def column(self, j: int) -> np.ndarray:
        return self.values[:, j]


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def parse_samples(text: str, header: Optional[bool] = None, source: Optional[str] = None) -> SampleMatrix:
    """
    Comma-separated observations, one per line.

    ``header=None`` treats the first row as labels when any of its cells is not a number.
    """
    reader = csv.reader(io.StringIO(text))
    rows: list[tuple[int, list[str]]] = []
    for cells in reader:
        if not cells or all(not cell.strip() for cell in cells):
            continue
        rows.append((reader.line_num, [cell.strip() for cell in cells]))
    if not rows:
        raise InputError("no sample data found", source=source)

    labels = None
    first_line, first = rows[0]
    if header is None:
        header = not all(_is_number(cell) for cell in first)
    if header:
        labels = first
        rows = rows[1:]
        if not rows:
            raise InputError("header row without observations", line=first_line, source=source)

    width = len(labels) if labels is not None else len(rows[0][1])
    values = []
    for number, cells in rows:
        if len(cells) != width:
            raise InputError(f"expected {width} values, got {len(cells)}", line=number, source=source)
        parsed = []
        for cell in cells:
            try:
                value = float(cell)
            except ValueError:
                raise InputError(f"not a number: {cell!r}", line=number, source=source) from None
            if not np.isfinite(value):
                raise InputError(f"non-finite value {cell!r}", line=number, source=source)
            parsed.append(value)
        values.append(parsed)

    try:
        return SampleMatrix(values=values, column_labels=tuple(labels) if labels is not None else None)
    except ValueError as exc:
        raise InputError(str(exc), source=source) from exc


def read_samples(path: str | Path, header: Optional[bool] = None) -> SampleMatrix:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read sample file: {exc.strerror}", source=str(path)) from exc
    return parse_samples(text, header=header, source=str(path))


def format_samples(samples: SampleMatrix) -> str:
    lines = []
    if samples.column_labels is not None:
        lines.append(",".join(samples.column_labels))
    for row in samples.values:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"
