"""Writers for experiment reports, sample tables and cell meshes.

JSON documents keep exact "num/den" strings; OFF meshes are for external
viewers and carry the shortest decimal that round-trips to the same float.
"""

import csv
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import TYPE_CHECKING

from pydantic import BaseModel

from src.dirichlet import StereohedronReport
from src.geometry import ConvexPolyhedron
from src.logger import logger

if TYPE_CHECKING:
    from src.experiments.sampling import SampleRecord

CSV_HEADER = ("sample_id", "px", "py", "pz", "facet_count", "neighbor_labels")


def file_stem(group_name: str) -> str:
    """Group name usable in a file name ("F2/d-3" -> "F2-d-3")."""
    return group_name.replace("/", "-").replace(" ", "")


def write_json(document: BaseModel, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document.model_dump_json(indent=2) + "\n")
    logger.debug("JSON written", path=str(path))
    return path


def write_samples_csv(records: Sequence["SampleRecord"], path: Path) -> Path:
    """One row per sample; neighbour labels are joined with semicolons."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(
                [
                    record.sample_id,
                    *record.point.as_strings(),
                    record.facet_count,
                    ";".join(record.labels),
                ]
            )
    logger.debug("CSV written", path=str(path), rows=len(records))
    return path


def off_text(cell: ConvexPolyhedron) -> str:
    """The cell as an OFF mesh with one polygon per facet."""
    lines = ["OFF", f"{len(cell.vertices)} {cell.facet_count} {len(cell.edges)}"]
    for v in cell.vertices:
        lines.append(" ".join(format(float(c), ".17g") for c in v))
    for polygon in cell.facet_adjacency:
        lines.append(" ".join(str(i) for i in (len(polygon), *polygon)))
    return "\n".join(lines) + "\n"


def write_off(report: StereohedronReport, sample_id: int, out_dir: Path) -> Path:
    path = out_dir / f"{file_stem(report.group_name)}_{sample_id}.off"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(off_text(report.cell))
    logger.debug("OFF written", path=str(path), facets=report.facet_count)
    return path


def write_off_meshes(
    reports: Iterable[tuple[int, StereohedronReport]], out_dir: Path
) -> list[Path]:
    return [write_off(report, sample_id, out_dir) for sample_id, report in reports]
