import csv
import json
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from . import __version__

CSV_FORMAT_VERSION = 1


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


def ensure_dir(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(path: Path, kind: str, header: list[str], rows: Iterable) -> Path:
    """Write rows under a versioned ``# twomode <kind> v<n>`` comment line."""
    ensure_dir(path.parent)
    with open(path, "w", newline="") as f:
        f.write(f"# twomode {kind} v{CSV_FORMAT_VERSION}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    return path


def write_json(path: Path, data: dict) -> Path:
    ensure_dir(path.parent)
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


@dataclass
class RunManifest:
    command: str
    parameters: dict
    tolerances: dict = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    tool_version: str = __version__
    wall_time: float = 0.0
    started: float = field(default_factory=time.perf_counter, repr=False)

    def add_output(self, path: Path) -> None:
        self.outputs.append(str(path))

    def write(self, directory: Path) -> Path:
        self.wall_time = time.perf_counter() - self.started
        data = asdict(self)
        del data["started"]
        return write_json(directory / f"{self.command}.manifest.json", data)


def resolve_threads(requested: Optional[int]) -> int:
    """Worker count, with METRO_THREADS taking precedence over the flag."""
    override = os.environ.get("METRO_THREADS")
    if override:
        try:
            requested = int(override)
        except ValueError:
            raise ValueError(f'METRO_THREADS "{override}" is not a number.') from None
    return max(int(requested or 1), 1)


def plot_svg(
    path: Path,
    x,
    series: dict,
    title: str,
    xlabel: str,
    ylabel: str,
    logy: bool = False,
) -> Path:
    """Scatter plot of each series against x, saved as SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for label, values in series.items():
        ax.plot(x, values, "o", markersize=3, label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if len(series) > 1:
        ax.legend()
    fig.tight_layout()
    ensure_dir(path.parent)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
