from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, ValidationError

from app.core.errors import InputError
from app.mcm.model import MeDILCausalModel


class ModelDocument(BaseModel):
    num_measurements: int = Field(..., ge=0)
    num_latents: int = Field(..., ge=0)
    edges: list[tuple[int, int]] = Field(default_factory=list, description="(latent, measurement) pairs")
    latent_labels: Optional[list[str]] = None
    measurement_labels: Optional[list[str]] = None

    @classmethod
    def from_model(cls, m: MeDILCausalModel) -> "ModelDocument":
        return cls(
            num_measurements=m.num_measurements,
            num_latents=m.num_latents,
            edges=m.edges(),
            latent_labels=[m.latent_label(a) for a in range(m.num_latents)],
            measurement_labels=[m.measurement_label(b) for b in range(m.num_measurements)],
        )

    def to_model(self) -> MeDILCausalModel:
        children: list[list[int]] = [[] for _ in range(self.num_latents)]
        for a, b in self.edges:
            if not 0 <= a < self.num_latents:
                raise InputError(f"edge ({a}, {b}) names latent {a} outside 0..{self.num_latents - 1}")
            children[a].append(b)
        return MeDILCausalModel(
            self.num_measurements,
            children,
            latent_labels=self.latent_labels,
            measurement_labels=self.measurement_labels,
        )


def format_model(m: MeDILCausalModel) -> str:
    return ModelDocument.from_model(m).model_dump_json(indent=2) + "\n"


def parse_model(text: str, source: Optional[str] = None) -> MeDILCausalModel:
    try:
        document = ModelDocument.model_validate_json(text)
    except ValidationError as exc:
        raise InputError(f"invalid model document: {exc.errors()[0]['msg']}", source=source) from exc
    return document.to_model()


def read_model(path: str | Path) -> MeDILCausalModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read model file: {exc.strerror}", source=str(path)) from exc
    return parse_model(text, source=str(path))


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(m: MeDILCausalModel, name: str = "minMCM") -> str:
    """Latents as ellipses on one rank, measurements as boxes on the next."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=TB;"]
    lines.append("  { rank=same;")
    for a in range(m.num_latents):
        lines.append(f"    L{a} [label={_quote(m.latent_label(a))}, shape=ellipse];")
    lines.append("  }")
    lines.append("  { rank=same;")
    for b in range(m.num_measurements):
        lines.append(f"    M{b} [label={_quote(m.measurement_label(b))}, shape=box];")
    lines.append("  }")
    for a, b in m.edges():
        lines.append(f"  L{a} -> M{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
