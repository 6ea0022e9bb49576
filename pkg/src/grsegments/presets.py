"""Named tame quivers and quiver-file loading."""

from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

from grsegments.algebra.rep import Quiver
from grsegments.errors import InvalidInput

PRESETS: dict[str, Quiver] = {
    "kronecker": Quiver(name="kronecker", vertex_count=2, arrows=((0, 1), (0, 1))),
    "a21": Quiver(name="a21", vertex_count=3, arrows=((0, 1), (1, 2), (0, 2))),
    "a22_sink_source": Quiver(name="a22_sink_source", vertex_count=4, arrows=((0, 1), (2, 1), (2, 3), (0, 3))),
    "d4_tilde": Quiver(name="d4_tilde", vertex_count=5, arrows=((0, 4), (1, 4), (2, 4), (3, 4))),
}

DESCRIPTIONS = {
    "kronecker": "0 ⇉ 1, two parallel arrows",
    "a21": "0→1, 1→2, 0→2: a triangle with one long path",
    "a22_sink_source": "0→1, 2→1, 2→3, 0→3: a square of alternating orientation",
    "d4_tilde": "four arms 0..3 into the hub 4",
}


class QuiverFile(BaseModel):
    """JSON quiver file: {name, vertices, arrows: [[s, t], ...], p?, L?}."""
    name: str = "quiver"
    vertices: int
    arrows: list[tuple[int, int]] = Field(default_factory=list)
    p: int | None = None
    L: int | None = None

    def to_quiver(self) -> Quiver:
        return Quiver(name=self.name, vertex_count=self.vertices, arrows=tuple(self.arrows))


def preset(name: str) -> Quiver:
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidInput(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def load_quiver_file(path: Path) -> QuiverFile:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        qf = QuiverFile.model_validate(data)
        qf.to_quiver()
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        raise InvalidInput(f"cannot load quiver from {path}: {e}") from e
    return qf
