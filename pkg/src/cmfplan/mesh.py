"""Triangle-mesh container and ASCII PLY / OBJ file handling.

PLY is the primary format (read + write, human-diffable, exact float
round-trip via repr); OBJ is import-only.  Coordinates are millimeters,
stated in the PLY header comment.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray   # (V, 3) float64, mm
    triangles: np.ndarray  # (T, 3) int64 vertex indices

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=np.float64)
        t = np.ascontiguousarray(self.triangles, dtype=np.int64)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 1:
            raise InvalidArgumentError(f"vertices must be (V>=1, 3), got {v.shape}")
        if not np.isfinite(v).all():
            raise InvalidArgumentError("vertices contain non-finite values")
        if t.ndim != 2 or t.shape[1] != 3:
            raise InvalidArgumentError(f"triangles must be (T, 3), got {t.shape}")
        if t.size and (t.min() < 0 or t.max() >= v.shape[0]):
            raise InvalidArgumentError("triangle indices out of range")
        v.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)

    def with_vertices(self, vertices: np.ndarray) -> "Mesh":
        return Mesh(vertices, self.triangles)


def write_ply(path, mesh: Mesh) -> None:
    lines = [
        "ply",
        "format ascii 1.0",
        "comment units: millimeters",
        f"element vertex {mesh.vertices.shape[0]}",
        "property double x",
        "property double y",
        "property double z",
        f"element face {mesh.triangles.shape[0]}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    for v in mesh.vertices:
        lines.append(f"{v[0]!r} {v[1]!r} {v[2]!r}")
    for t in mesh.triangles:
        lines.append(f"3 {t[0]} {t[1]} {t[2]}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_ply(path) -> Mesh:
    text = Path(path).read_text()
    lines = iter(text.splitlines())
    if next(lines, None) != "ply":
        raise InvalidArgumentError(f"{path}: not a PLY file")
    n_vert = n_face = 0
    for line in lines:
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "element":
            if parts[1] == "vertex":
                n_vert = int(parts[2])
            elif parts[1] == "face":
                n_face = int(parts[2])
        elif parts[0] == "end_header":
            break
    else:
        raise InvalidArgumentError(f"{path}: missing end_header")
    verts = np.empty((n_vert, 3))
    for i in range(n_vert):
        parts = next(lines).split()
        verts[i] = [float(parts[0]), float(parts[1]), float(parts[2])]
    tris = np.empty((n_face, 3), dtype=np.int64)
    for i in range(n_face):
        parts = next(lines).split()
        if parts[0] != "3":
            raise InvalidArgumentError(f"{path}: only triangle faces are supported")
        tris[i] = [int(parts[1]), int(parts[2]), int(parts[3])]
    return Mesh(verts, tris)


def read_obj(path) -> Mesh:
    """Minimal OBJ import: v and f records, 1-based indices, fans split."""
    verts: list[list[float]] = []
    tris: list[list[int]] = []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(parts[1]), float(parts[2]), float(parts[3])])
        elif parts[0] == "f":
            idx = [int(p.split("/")[0]) - 1 for p in parts[1:]]
            for a, b in zip(idx[1:-1], idx[2:]):
                tris.append([idx[0], a, b])
    if not verts:
        raise InvalidArgumentError(f"{path}: no vertices found")
    return Mesh(np.asarray(verts), np.asarray(tris, dtype=np.int64).reshape(-1, 3))
