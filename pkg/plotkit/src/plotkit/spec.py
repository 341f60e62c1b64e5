from dataclasses import dataclass, field
from pathlib import Path

# viridis runs dark blue -> green -> yellow, the usual stand-in for a
# "BlueGreenYellow" scale; any perceptually ordered dark-to-light map works.
DEFAULT_CMAP = "viridis"


@dataclass
class FigureSpec:
    """What to draw: input tables, plane selection, colors, output path."""

    inputs: tuple
    output: Path
    planes: tuple = ("Q1-Pi1", "Q2-Pi2")
    cmap: str = DEFAULT_CMAP
    dpi: int = 150
    split_panels: bool = False

    def __post_init__(self):
        self.inputs = tuple(Path(p) for p in self.inputs)
        self.output = Path(self.output)
