"""Point-set containers, rigid-transform algebra, subsampling, and the
closed-form least-squares rigid fit.

All coordinates are in millimeters.  Types are immutable after
construction; operations are pure functions.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DegenerateGeometryError, InvalidArgumentError, InvariantViolationError

NORMAL_UNIT_TOL = 1e-6
ROTATION_TOL = 1e-10
# Smallest/largest singular-value ratio below which a reflective SVD
# solution makes the rotation ambiguous.
DEGENERACY_RATIO = 1e-12


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PointSet:
    """N points in mm, optionally with unit normals."""

    coords: np.ndarray
    normals: np.ndarray | None = None

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[1] != 3 or coords.shape[0] < 1:
            raise InvalidArgumentError(f"coords must be (N>=1, 3), got {coords.shape}")
        if not np.isfinite(coords).all():
            raise InvalidArgumentError("coords contain non-finite values")
        object.__setattr__(self, "coords", _freeze(coords))
        if self.normals is not None:
            normals = np.ascontiguousarray(self.normals, dtype=np.float64)
            if normals.shape != coords.shape:
                raise InvalidArgumentError("normals must match coords shape")
            lengths = np.linalg.norm(normals, axis=1)
            if not np.all(np.abs(lengths - 1.0) <= NORMAL_UNIT_TOL):
                raise InvariantViolationError("normals must have unit length")
            object.__setattr__(self, "normals", _freeze(normals))

    def __len__(self) -> int:
        return self.coords.shape[0]


class SegmentLabel(enum.IntEnum):
    LF = 0       # LeFort-1
    DI = 1       # distal
    RP = 2       # right proximal
    LP = 3       # left proximal
    CRANIUM = 4  # fixed reference, never assigned a transform


MOVABLE_SEGMENTS = (SegmentLabel.LF, SegmentLabel.DI, SegmentLabel.RP, SegmentLabel.LP)


@dataclass(frozen=True)
class SegmentedBone:
    """Bony point set with a per-point segment label."""

    points: PointSet
    labels: np.ndarray

    def __post_init__(self):
        labels = np.ascontiguousarray(self.labels, dtype=np.int8)
        if labels.shape != (len(self.points),):
            raise InvalidArgumentError("labels length must equal the point count")
        if labels.min() < 0 or labels.max() > SegmentLabel.CRANIUM:
            raise InvalidArgumentError("unknown segment label value")
        object.__setattr__(self, "labels", _freeze(labels))

    def mask(self, label: SegmentLabel) -> np.ndarray:
        return self.labels == label

    def movable_segments(self) -> list[SegmentLabel]:
        present = set(np.unique(self.labels).tolist())
        return [s for s in MOVABLE_SEGMENTS if s in present]

    def validate(self) -> None:
        """Full invariant check: each movable segment has >= 4 non-coplanar points."""
        for seg in self.movable_segments():
            pts = self.points.coords[self.mask(seg)]
            if pts.shape[0] < 4:
                raise InvariantViolationError(f"segment {seg.name} has fewer than 4 points")
            centered = pts - pts.mean(axis=0)
            s = np.linalg.svd(centered, compute_uv=False)
            if s[2] <= 1e-9 * max(s[0], 1.0):
                raise InvariantViolationError(f"segment {seg.name} points are coplanar")


@dataclass(frozen=True)
class RigidTransform:
    """Proper rigid motion x -> rotation @ x + translation."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        rot = np.ascontiguousarray(self.rotation, dtype=np.float64)
        tr = np.ascontiguousarray(self.translation, dtype=np.float64)
        if rot.shape != (3, 3) or tr.shape != (3,):
            raise InvalidArgumentError("rotation must be 3x3 and translation length 3")
        if not (np.isfinite(rot).all() and np.isfinite(tr).all()):
            raise InvalidArgumentError("transform contains non-finite values")
        if np.abs(rot.T @ rot - np.eye(3)).max() > ROTATION_TOL:
            raise InvariantViolationError("rotation is not orthonormal")
        if abs(np.linalg.det(rot) - 1.0) > ROTATION_TOL:
            raise InvariantViolationError("rotation determinant is not +1")
        object.__setattr__(self, "rotation", _freeze(rot))
        object.__setattr__(self, "translation", _freeze(tr))

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls(np.eye(3), np.zeros(3))

    def inverse(self) -> "RigidTransform":
        rt = self.rotation.T
        return RigidTransform(rt.copy(), -(rt @ self.translation))

    def compose(self, other: "RigidTransform") -> "RigidTransform":
        """self after other: (self @ other)(x) = self(other(x))."""
        return RigidTransform(self.rotation @ other.rotation,
                              self.rotation @ other.translation + self.translation)

    def as_matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m

    @classmethod
    def from_matrix(cls, m) -> "RigidTransform":
        m = np.asarray(m, dtype=np.float64)
        if m.shape != (4, 4):
            raise InvalidArgumentError("homogeneous matrix must be 4x4")
        if np.abs(m[3] - np.array([0.0, 0.0, 0.0, 1.0])).max() > 1e-12:
            raise InvalidArgumentError("last row of a rigid matrix must be [0,0,0,1]")
        return cls(m[:3, :3], m[:3, 3])

    def is_identity(self, tol: float = 0.0) -> bool:
        return (np.abs(self.rotation - np.eye(3)).max() <= tol
                and np.abs(self.translation).max() <= tol)


@dataclass(frozen=True)
class BonyPlan:
    """Per-segment rigid transforms; never contains CRANIUM."""

    transforms: dict[SegmentLabel, RigidTransform] = field(default_factory=dict)

    def __post_init__(self):
        for seg in self.transforms:
            if seg == SegmentLabel.CRANIUM:
                raise InvariantViolationError("a plan must not contain a CRANIUM transform")

    def segments(self) -> list[SegmentLabel]:
        return sorted(self.transforms, key=lambda s: s.value)

    def __getitem__(self, seg: SegmentLabel) -> RigidTransform:
        return self.transforms[seg]

    def __contains__(self, seg: SegmentLabel) -> bool:
        return seg in self.transforms

    @classmethod
    def identity_for(cls, bone: SegmentedBone) -> "BonyPlan":
        return cls({seg: RigidTransform.identity() for seg in bone.movable_segments()})


def _coords_of(points) -> np.ndarray:
    if isinstance(points, PointSet):
        return points.coords
    a = np.asarray(points, dtype=np.float64)
    if a.ndim != 2 or a.shape[1] != 3:
        raise InvalidArgumentError(f"expected (N, 3) points, got shape {a.shape}")
    return a


def farthest_point_sample(points, k: int, seed_index: int = 0) -> np.ndarray:
    """Deterministic farthest-point subsample of k indices.

    The first index is ``seed_index``; each next index maximizes the
    minimum distance to everything already chosen, ties broken by lowest
    index.
    """
    coords = _coords_of(points)
    n = coords.shape[0]
    if not 1 <= k <= n:
        raise InvalidArgumentError(f"k must be in [1, {n}], got {k}")
    if not 0 <= seed_index < n:
        raise InvalidArgumentError(f"seed_index must be in [0, {n}), got {seed_index}")
    return _kernels.fps(coords, k, seed_index, lex_ties=False)


def fit_rigid(src, dst) -> RigidTransform:
    """Least-squares rigid alignment of index-corresponded point sets.

    Centroids are subtracted, the 3x3 cross-covariance is decomposed by
    SVD, and the reflection case is repaired with diag(1, 1, det) so the
    result is always a proper rotation.
    """
    a = _coords_of(src)
    b = _coords_of(dst)
    if a.shape != b.shape:
        raise InvalidArgumentError(f"src and dst must match, got {a.shape} vs {b.shape}")
    if a.shape[0] < 3:
        raise InvalidArgumentError("rigid fit needs at least 3 points")
    ca = a.mean(axis=0)
    cb = b.mean(axis=0)
    h = (a - ca).T @ (b - cb)
    u, s, vt = np.linalg.svd(h)
    v = vt.T
    det = np.linalg.det(v @ u.T)
    if s[0] <= 0.0 or s[1] < DEGENERACY_RATIO * s[0]:
        raise DegenerateGeometryError("source points are collinear or coincident")
    if det < 0.0 and s[2] < DEGENERACY_RATIO * s[0]:
        raise DegenerateGeometryError(
            "planar/degenerate configuration with a reflective solution")
    d = np.array([1.0, 1.0, np.sign(det)])
    rot = v @ np.diag(d) @ u.T
    tr = cb - rot @ ca
    return RigidTransform(rot, tr)


def apply_transform(t: RigidTransform, points: PointSet) -> PointSet:
    """Apply a rigid transform; normals are rotated only."""
    coords = points.coords @ t.rotation.T + t.translation
    normals = None if points.normals is None else points.normals @ t.rotation.T
    return PointSet(coords, normals)


def alignment_error(t: RigidTransform, src, dst) -> float:
    """Mean squared residual (mm^2) of dst vs the transformed src."""
    a = _coords_of(src)
    b = _coords_of(dst)
    if a.shape != b.shape:
        raise InvalidArgumentError(f"src and dst must match, got {a.shape} vs {b.shape}")
    resid = a @ t.rotation.T + t.translation - b
    return float(np.mean(np.sum(resid * resid, axis=1)))
