"""Concrete convex bodies and the geometric predicates the estimators need.

Bodies keep exact rational parameters (so the verification harness can ask
for exact intrinsic volumes) next to cached float arrays for the numeric
kernels.  Intersection tests are exact closed forms for ball/box pairs and a
support-function search (GJK) with tolerance 1e-10 for polytopes; tangency
counts as intersection.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .euclid import TemplateBody, intrinsic_volume

GJK_TOL = 1e-10


def _frac(x):
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 12)
    return Fraction(x)


class ConvexBody:
    """Ball, axis-aligned box, or polytope (vertex list) in R^n."""

    def __init__(self, kind, dimension, **params):
        self.kind = kind
        self.dimension = dimension
        if kind == "ball":
            self.center = tuple(_frac(c) for c in params["center"])
            self.radius = _frac(params["radius"])
            if self.radius <= 0:
                raise ValueError("ball radius must be positive")
            if len(self.center) != dimension:
                raise ValueError("center dimension mismatch")
        elif kind == "box":
            self.lo = tuple(_frac(c) for c in params["lo"])
            self.hi = tuple(_frac(c) for c in params["hi"])
            if len(self.lo) != dimension or len(self.hi) != dimension:
                raise ValueError("box corner dimension mismatch")
            if any(a >= b for a, b in zip(self.lo, self.hi)):
                raise ValueError("box must be nondegenerate")
        elif kind == "polytope":
            self.vertices = tuple(tuple(_frac(c) for c in v)
                                  for v in params["vertices"])
            if not self.vertices:
                raise ValueError("polytope needs at least one vertex")
            if any(len(v) != dimension for v in self.vertices):
                raise ValueError("vertex dimension mismatch")
        else:
            raise ValueError(f"unknown body kind {kind!r}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def ball(center, radius):
        return ConvexBody("ball", len(tuple(center)), center=center, radius=radius)

    @staticmethod
    def box(lo, hi):
        return ConvexBody("box", len(tuple(lo)), lo=lo, hi=hi)

    @staticmethod
    def cube(dimension, side=1):
        h = Fraction(side) / 2
        return ConvexBody.box([-h] * dimension, [h] * dimension)

    @staticmethod
    def polytope(vertices):
        vertices = tuple(vertices)
        if not vertices:
            raise ValueError("polytope needs at least one vertex")
        return ConvexBody("polytope", len(tuple(vertices[0])), vertices=vertices)

    # -- float views --------------------------------------------------------

    def center_f(self):
        return np.array([float(c) for c in self.center])

    def lo_f(self):
        return np.array([float(c) for c in self.lo])

    def hi_f(self):
        return np.array([float(c) for c in self.hi])

    def vertices_f(self):
        if self.kind == "box":
            corners = []
            n = self.dimension
            for mask in range(2 ** n):
                corners.append([float(self.hi[i] if mask >> i & 1 else self.lo[i])
                                for i in range(n)])
            return np.array(corners)
        if self.kind == "polytope":
            return np.array([[float(c) for c in v] for v in self.vertices])
        raise ValueError("a ball has no vertex list")

    def circumradius(self):
        """Exact-ish bound max |x| over the body, measured from the origin."""
        if self.kind == "ball":
            return float(np.linalg.norm(self.center_f())) + float(self.radius)
        return float(np.max(np.linalg.norm(self.vertices_f(), axis=1)))

    def support(self, d):
        """Farthest point of the body in direction d."""
        d = np.asarray(d, dtype=float)
        if self.kind == "ball":
            nrm = np.linalg.norm(d)
            if nrm == 0:
                return self.center_f()
            return self.center_f() + float(self.radius) * d / nrm
        verts = self.vertices_f()
        return verts[int(np.argmax(verts @ d))]

    def to_template(self):
        """Template body with the same intrinsic volumes, when one exists."""
        if self.kind == "ball":
            return TemplateBody.ball(self.radius)
        if self.kind == "box":
            return TemplateBody.box(*[b - a for a, b in zip(self.lo, self.hi)])
        if self.kind == "polytope" and len(set(self.vertices)) == 1:
            return TemplateBody.point()
        raise ValueError("no exact template for a general polytope")

    def exact_intrinsic_volume(self, i):
        return intrinsic_volume(self.to_template(), self.dimension, i)

    def describe(self):
        if self.kind == "ball":
            return {"kind": "ball", "center": [str(c) for c in self.center],
                    "radius": str(self.radius)}
        if self.kind == "box":
            return {"kind": "box", "min": [str(c) for c in self.lo],
                    "max": [str(c) for c in self.hi]}
        return {"kind": "polytope",
                "vertices": [[str(c) for c in v] for v in self.vertices]}


def body_from_spec(doc):
    kind = doc["kind"]
    if kind == "ball":
        return ConvexBody.ball([Fraction(str(c)) for c in doc["center"]],
                               Fraction(str(doc["radius"])))
    if kind == "box":
        return ConvexBody.box([Fraction(str(c)) for c in doc["min"]],
                              [Fraction(str(c)) for c in doc["max"]])
    if kind == "polytope":
        return ConvexBody.polytope([[Fraction(str(c)) for c in v]
                                    for v in doc["vertices"]])
    raise ValueError(f"unknown body kind {kind!r}")


# -- exact pairwise tests -------------------------------------------------------

def _ball_ball(a, b):
    gap = a.center_f() - b.center_f()
    return float(np.dot(gap, gap)) <= (float(a.radius) + float(b.radius)) ** 2


def _ball_box(ball, box):
    c = ball.center_f()
    q = np.clip(c, box.lo_f(), box.hi_f())
    return float(np.dot(c - q, c - q)) <= float(ball.radius) ** 2


def _box_box(a, b):
    return bool(np.all(a.lo_f() <= b.hi_f()) and np.all(b.lo_f() <= a.hi_f()))


def _nearest_on_simplex(pts):
    """Closest point of the convex hull of pts (list of arrays) to the origin,
    with the supporting sub-simplex."""
    best = None
    for r in range(1, len(pts) + 1):
        for idx in combinations(range(len(pts)), r):
            sub = np.array([pts[i] for i in idx])
            if r == 1:
                coords = np.array([1.0])
            else:
                # barycentric coordinates of the projection of the origin
                diffs = sub[1:] - sub[0]
                g = diffs @ diffs.T
                rhs = -diffs @ sub[0]
                try:
                    sol = np.linalg.lstsq(g, rhs, rcond=None)[0]
                except np.linalg.LinAlgError:
                    continue
                coords = np.concatenate(([1.0 - sol.sum()], sol))
            if np.any(coords < -1e-12):
                continue
            point = coords @ sub
            d = float(np.dot(point, point))
            if best is None or d < best[0] - 1e-18:
                best = (d, point, [pts[i] for i in idx])
    return best[1], best[2]


def gjk_intersects(a, b, tol=GJK_TOL, max_iter=200):
    """Boolean convex intersection via support-function separation search."""
    def support(d):
        return a.support(d) - b.support(-d)

    d0 = a.center_f() - b.center_f() if a.kind == "ball" and b.kind == "ball" \
        else np.ones(a.dimension)
    if not np.any(d0):
        d0 = np.ones(a.dimension)
    simplex = [support(d0)]
    for _ in range(max_iter):
        v, simplex = _nearest_on_simplex(simplex)
        dist = float(np.linalg.norm(v))
        if dist <= tol:
            return True
        w = support(-v)
        # every difference point x satisfies <x, v>/|v| >= <w, v>/|v|, a lower
        # bound on the distance to the origin
        lower = float(np.dot(w, v)) / dist
        if lower > tol:
            return False
        if dist - lower <= tol:
            return True
        simplex.append(w)
    return dist <= tol


def intersects(a, b):
    """Whether two convex bodies meet (closed-set convention)."""
    if a.dimension != b.dimension:
        raise ValueError("bodies live in different dimensions")
    kinds = (a.kind, b.kind)
    if kinds == ("ball", "ball"):
        return _ball_ball(a, b)
    if kinds == ("ball", "box"):
        return _ball_box(a, b)
    if kinds == ("box", "ball"):
        return _ball_box(b, a)
    if kinds == ("box", "box"):
        return _box_box(a, b)
    return gjk_intersects(a, b)


# -- Minkowski sums --------------------------------------------------------------

def polygon_area(vertices):
    """Shoelace area of a convex polygon given in counterclockwise order."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def convex_hull_volume(points):
    from scipy.spatial import ConvexHull
    return float(ConvexHull(points).volume)


def minkowski_sum_volume(a_vertices, b_vertices):
    """Volume of the Minkowski sum of two convex polytopes (vertex lists)."""
    a = np.asarray(a_vertices, dtype=float)
    b = np.asarray(b_vertices, dtype=float)
    sums = (a[:, None, :] + b[None, :, :]).reshape(-1, a.shape[1])
    return convex_hull_volume(sums)


def polygon_edges(vertices):
    """Edge vectors, outward normals and lengths of a ccw convex polygon."""
    v = np.asarray(vertices, dtype=float)
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.linalg.norm(edges, axis=1)
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    normals /= lengths[:, None]
    return edges, normals, lengths


def ccw_order(vertices):
    v = np.asarray(vertices, dtype=float)
    c = v.mean(axis=0)
    ang = np.arctan2(v[:, 1] - c[1], v[:, 0] - c[0])
    return v[np.argsort(ang)]
