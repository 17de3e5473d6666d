"""Report and field writers: ``quantity,value`` CSV, plain-text summaries and
legacy ASCII VTK unstructured grids."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .mesh import Mesh

VTK_TRIANGLE = 5
VTK_QUAD = 9


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.15g}"
    return str(value)


def write_vtk(path, mesh: Mesh, name, values, location="point", title=None):
    """One scalar field on the mesh; ``location`` is ``point`` or ``cell``."""
    values = np.asarray(values, float)
    expected = mesh.n_nodes if location == "point" else mesh.n_elements
    if values.shape != (expected,):
        raise ValueError(f"{location} data needs {expected} values, got {values.shape}")
    nt, nq = len(mesh.tris), len(mesh.quads)
    lines = ["# vtk DataFile Version 3.0", (title or name)[:255], "ASCII",
             "DATASET UNSTRUCTURED_GRID", f"POINTS {mesh.n_nodes} double"]
    lines += [f"{x:.15g} {y:.15g} 0" for x, y in mesh.nodes.tolist()]
    lines.append(f"CELLS {nt + nq} {4 * nt + 5 * nq}")
    lines += ["3 " + " ".join(map(str, t)) for t in mesh.tris.tolist()]
    lines += ["4 " + " ".join(map(str, q)) for q in mesh.quads.tolist()]
    lines.append(f"CELL_TYPES {nt + nq}")
    lines += [str(VTK_TRIANGLE)] * nt + [str(VTK_QUAD)] * nq
    lines.append(f"{'POINT' if location == 'point' else 'CELL'}_DATA {expected}")
    lines += [f"SCALARS {name} double 1", "LOOKUP_TABLE default"]
    lines += [f"{v:.15g}" for v in values.tolist()]
    Path(path).write_text("\n".join(lines) + "\n")


def write_quantities(path, rows):
    """``quantity,value`` CSV from (name, value) pairs."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["quantity", "value"])
        for name, value in rows:
            w.writerow([name, fmt(value)])


def read_quantities(path):
    with open(path, newline="") as fh:
        return {row["quantity"]: row["value"] for row in csv.DictReader(fh)}


def write_table(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def write_text(path, title, rows, sections=()):
    """Aligned human-readable report; ``sections`` is a list of (heading, lines)."""
    width = max((len(k) for k, _ in rows), default=0)
    out = [title, "=" * len(title)]
    out += [f"{k.ljust(width)}  {fmt(v)}" for k, v in rows]
    for heading, body in sections:
        out += ["", heading, "-" * len(heading), *body]
    Path(path).write_text("\n".join(out) + "\n")
