"""Monte Carlo verification of the exact euclidean tables.

Every estimator integrates an indicator (or a closed-form integrand) against
a product measure that dominates the support exactly, so the estimators are
unbiased; each run carries its exact prediction and a z-score.

Randomness comes from the counter-based Philox generator.  A run is split
into fixed-size chunks; chunk c draws from ``Philox(key=seed).jumped(c)`` and
partial sums are reduced in chunk order, so results are bit-identical for any
worker count.  Rotations are orthonormalized Gaussian matrices (explicit
Gram-Schmidt, no LAPACK) with the determinant flipped to +1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import euclid
from .bodies import ConvexBody, gjk_intersects, polygon_edges, ccw_order, \
    minkowski_sum_volume
from .scalars import Scalar

CHUNK = 1 << 17


def scalar_float(s):
    """Cast an exact Scalar to a float; the one place pi becomes 3.14159..."""
    if isinstance(s, (int, float, Fraction)):
        return float(s)
    return float(sum(float(c) * math.pi ** p for p, c in s.terms.items()))


def rng_chunk(seed, chunk_index):
    """Generator for one chunk: the Philox stream jumped chunk_index times."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(chunk_index))


def _gram_schmidt(g):
    """Orthonormalize batched n x n Gaussian matrices (columns)."""
    m, n, _ = g.shape
    q = np.empty_like(g)
    for j in range(n):
        v = g[:, :, j].copy()
        for i in range(j):
            proj = np.sum(q[:, :, i] * g[:, :, j], axis=1, keepdims=True)
            v -= proj * q[:, :, i]
        nrm = np.sqrt(np.sum(v * v, axis=1, keepdims=True))
        q[:, :, j] = v / nrm
    return q


def _det_small(q):
    n = q.shape[1]
    if n == 1:
        return q[:, 0, 0]
    if n == 2:
        return q[:, 0, 0] * q[:, 1, 1] - q[:, 0, 1] * q[:, 1, 0]
    if n == 3:
        return (q[:, 0, 0] * (q[:, 1, 1] * q[:, 2, 2] - q[:, 1, 2] * q[:, 2, 1])
                - q[:, 0, 1] * (q[:, 1, 0] * q[:, 2, 2] - q[:, 1, 2] * q[:, 2, 0])
                + q[:, 0, 2] * (q[:, 1, 0] * q[:, 2, 1] - q[:, 1, 1] * q[:, 2, 0]))
    return np.linalg.det(q)


def random_rotations(n, gen, count):
    """Haar-uniform elements of SO(n), batched."""
    if n == 1:
        return np.ones((count, 1, 1))
    g = gen.standard_normal((count, n, n))
    q = _gram_schmidt(g)
    det = _det_small(q)
    q[det < 0, :, -1] *= -1.0
    return q


ORTHOGONALITY_TOL = 1e-12


@dataclass
class RigidMotion:
    """Orientation-preserving isometry: rotation matrix plus translation."""
    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rotation, dtype=float)
        t = np.asarray(self.translation, dtype=float)
        n = len(t)
        if r.shape != (n, n):
            raise ValueError("rotation/translation dimensions disagree")
        if np.max(np.abs(r.T @ r - np.eye(n))) > ORTHOGONALITY_TOL:
            raise ValueError("rotation is not orthogonal within tolerance")
        if abs(float(_det_small(r[None, :, :])[0]) - 1.0) > ORTHOGONALITY_TOL:
            raise ValueError("rotation must have determinant +1")
        self.rotation = r
        self.translation = t

    def apply(self, points):
        return np.asarray(points, dtype=float) @ self.rotation.T + self.translation


def random_rotation(n, gen):
    """One Haar-uniform rotation, as the rotation part of a RigidMotion."""
    return RigidMotion(random_rotations(n, gen, 1)[0], np.zeros(n))


@dataclass
class MCEstimate:
    """Seeded estimate with its standard error and exact prediction."""
    name: str
    mean: float
    stderr: float
    samples: int
    seed: int
    prediction: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def z(self):
        if self.prediction is None:
            return 0.0
        err = self.mean - self.prediction
        if self.stderr == 0.0:
            return 0.0 if abs(err) < 1e-12 else math.inf
        return err / self.stderr

    def row(self):
        return {
            "test": self.name, "seed": self.seed, "samples": self.samples,
            "estimate": repr(self.mean), "stderr": repr(self.stderr),
            "prediction": "" if self.prediction is None else repr(self.prediction),
            "z": repr(self.z),
        }


def _estimate_from_values(name, total, total_sq, samples, seed, prediction, extra):
    mean = total / samples
    var = max(0.0, (total_sq - samples * mean * mean) / (samples - 1))
    stderr = math.sqrt(var / samples)
    return MCEstimate(name, mean, stderr, samples, seed,
                      prediction=prediction, extra=extra)


def _chunks(samples):
    done = 0
    index = 0
    while done < samples:
        m = min(CHUNK, samples - done)
        yield index, m
        done += m
        index += 1


# -- intersection indicator kernels ---------------------------------------------

def _hits_kinematic(a, b, xs, rots):
    """Indicator of a meeting x + R b, vectorized over samples."""
    kinds = (a.kind, b.kind)
    if kinds == ("ball", "ball"):
        centers = xs + np.einsum("mij,j->mi", rots, b.center_f())
        gap = centers - a.center_f()
        rr = float(a.radius) + float(b.radius)
        return np.einsum("mi,mi->m", gap, gap) <= rr * rr
    if kinds == ("ball", "box"):
        # coordinates of the ball center in the moved box's frame
        local = np.einsum("mji,mj->mi", rots, a.center_f() - xs)
        q = np.clip(local, b.lo_f(), b.hi_f())
        gap = local - q
        return np.einsum("mi,mi->m", gap, gap) <= float(a.radius) ** 2
    if kinds == ("box", "ball"):
        centers = xs + np.einsum("mij,j->mi", rots, b.center_f())
        q = np.clip(centers, a.lo_f(), a.hi_f())
        gap = centers - q
        return np.einsum("mi,mi->m", gap, gap) <= float(b.radius) ** 2
    if kinds == ("box", "box"):
        return _hits_box_box(a, b, xs, rots)
    hits = np.empty(len(xs), dtype=bool)
    bverts = b.vertices_f() if b.kind != "ball" else None
    for i in range(len(xs)):
        if bverts is None:
            moved = _MovedBall(xs[i] + rots[i] @ b.center_f(), float(b.radius),
                               b.dimension)
        else:
            moved = _MovedPolytope(xs[i] + bverts @ rots[i].T, b.dimension)
        hits[i] = gjk_intersects(a, moved)
    return hits


class _MovedPolytope:
    """Minimal support-function view of a rigidly moved polytope."""

    kind = "polytope"

    def __init__(self, vertices, dimension):
        self._v = vertices
        self.dimension = dimension

    def support(self, d):
        return self._v[int(np.argmax(self._v @ np.asarray(d, dtype=float)))]


class _MovedBall:
    kind = "ball"

    def __init__(self, center, radius, dimension):
        self._c = center
        self._r = radius
        self.dimension = dimension

    def center_f(self):
        return self._c

    def support(self, d):
        d = np.asarray(d, dtype=float)
        nrm = np.linalg.norm(d)
        if nrm == 0:
            return self._c
        return self._c + self._r * d / nrm


def _hits_box_box(a, b, xs, rots):
    """Separating-axis test for an axis-aligned box against moved boxes."""
    n = a.dimension
    ac = (a.lo_f() + a.hi_f()) / 2
    ah = (a.hi_f() - a.lo_f()) / 2
    bc = (b.lo_f() + b.hi_f()) / 2
    bh = (b.hi_f() - b.lo_f()) / 2
    centers = xs + np.einsum("mij,j->mi", rots, bc)
    diff = centers - ac
    m = len(xs)
    separated = np.zeros(m, dtype=bool)

    def test_axes(axes, valid=None):
        nonlocal separated
        # axes: (m, k, n), possibly unnormalized; zero axes carry no information
        proj_d = np.abs(np.einsum("mkn,mn->mk", axes, diff))
        ra = np.einsum("mkn,n->mk", np.abs(axes), ah)
        rb = np.einsum("mkj,j->mk", np.abs(np.einsum("mkn,mnj->mkj", axes, rots)), bh)
        sep = proj_d > ra + rb
        if valid is not None:
            sep &= valid
        separated |= np.any(sep, axis=1)

    eye = np.broadcast_to(np.eye(n), (m, n, n)).copy()
    test_axes(eye)
    test_axes(np.transpose(rots, (0, 2, 1)))
    if n == 3:
        cross_axes = []
        for i in range(3):
            for j in range(3):
                e = np.zeros(3)
                e[i] = 1.0
                axis = np.cross(e[None, :], rots[:, :, j])
                cross_axes.append(axis)
        axes = np.stack(cross_axes, axis=1)
        norms = np.linalg.norm(axes, axis=2)
        valid = norms > 1e-9
        test_axes(axes, valid)
    return ~separated


def principal_kinematic_prediction(a, b):
    """Exact motion-measure of intersections: sum of the chi-table pairings
    of the two bodies' intrinsic volumes."""
    n = a.dimension
    table = euclid.kinematic_so(n, basis="mu")
    total = Scalar.zero()
    for ((i, _), (j, _)), c in table.entries.items():
        total = total + c * a.exact_intrinsic_volume(i) * b.exact_intrinsic_volume(j)
    return total


def estimate_principal_kinematic(a, b, samples, seed, name="kinematic"):
    """Window-uniform translations + Haar rotations against chi(A cap gB)."""
    if a.dimension != b.dimension:
        raise ValueError("bodies live in different dimensions")
    n = a.dimension
    half = a.circumradius() + b.circumradius()
    if half <= 0:
        raise ValueError("window underflow: degenerate bodies")
    vol_w = (2 * half) ** n
    total = 0.0
    count = 0
    support_bound = half + 1e-9
    for index, m in _chunks(samples):
        gen = rng_chunk(seed, index)
        rots = random_rotations(n, gen, m)
        xs = gen.uniform(-half, half, size=(m, n))
        hits = _hits_kinematic(a, b, xs, rots)
        if np.any(hits):
            worst = float(np.max(np.linalg.norm(xs[hits], axis=1)))
            if worst > support_bound:
                raise AssertionError("window does not dominate the integrand")
        total += float(np.count_nonzero(hits))
        count += m
    pred = scalar_float(principal_kinematic_prediction(a, b))
    # indicator values are vol_w * {0,1}
    hits_total = total
    mean_ind = hits_total / count
    total_value = vol_w * hits_total
    total_sq = vol_w ** 2 * hits_total
    est = _estimate_from_values(name, total_value, total_sq, count, seed, pred,
                                {"window_halfwidth": half, "hit_rate": mean_ind})
    return est


# -- Crofton flats ---------------------------------------------------------------

def _flat_hits(a, dirs, normals, offsets):
    """Whether the affine flat {sum_t t_i d_i + sum_u u_j n_j} meets the body.

    dirs: (m, n-k, n) spanning directions; normals: (m, k, n) fiber frame;
    offsets: (m, k) coordinates in the fiber.
    """
    m = dirs.shape[0]
    n = dirs.shape[2]
    flat_dim = dirs.shape[1]
    base = np.einsum("mk,mkn->mn", offsets, normals)
    if a.kind == "ball":
        rel = a.center_f() - base
        tang = np.einsum("mfn,mn->mf", dirs, rel)
        closest = rel - np.einsum("mf,mfn->mn", tang, dirs)
        return np.einsum("mn,mn->m", closest, closest) <= float(a.radius) ** 2
    if a.kind == "box":
        if flat_dim == n - 1:
            # hyperplane with normal normals[:,0]: box straddles the offset
            u = normals[:, 0, :]
            c = (a.lo_f() + a.hi_f()) / 2
            h = (a.hi_f() - a.lo_f()) / 2
            centered = np.einsum("mn,n->m", u, c) - offsets[:, 0]
            reach = np.einsum("mn,n->m", np.abs(u), h)
            return np.abs(centered) <= reach
        if flat_dim == 1:
            # line base + t d against an axis-aligned box: slab clipping
            d = dirs[:, 0, :]
            lo = np.full(m, -np.inf)
            hi = np.full(m, np.inf)
            ok = np.ones(m, dtype=bool)
            for i in range(n):
                di = d[:, i]
                bi = base[:, i]
                par = np.abs(di) < 1e-14
                out = par & ((bi < a.lo_f()[i]) | (bi > a.hi_f()[i]))
                ok &= ~out
                with np.errstate(divide="ignore", invalid="ignore"):
                    t1 = (a.lo_f()[i] - bi) / di
                    t2 = (a.hi_f()[i] - bi) / di
                tlo = np.where(par, -np.inf, np.minimum(t1, t2))
                thi = np.where(par, np.inf, np.maximum(t1, t2))
                lo = np.maximum(lo, tlo)
                hi = np.minimum(hi, thi)
            return ok & (lo <= hi)
    raise ValueError(f"no flat test for body kind {a.kind!r} and "
                     f"flat dimension {flat_dim}")


def estimate_crofton(a, k, samples, seed, name="crofton"):
    """Estimate mu_k as the weighted measure of affine (n-k)-flats meeting
    the body: rotate a fixed flat, then offset uniformly in the fiber ball."""
    n = a.dimension
    if not 1 <= k <= n - 1:
        raise ValueError("crofton estimator needs 1 <= k <= n-1")
    rho = a.circumradius()
    from .scalars import omega
    fiber_vol = scalar_float(omega(k)) * rho ** k
    const = scalar_float(euclid.crofton_constant(n, k))
    hits_total = 0.0
    count = 0
    for index, m in _chunks(samples):
        gen = rng_chunk(seed, index)
        rots = random_rotations(n, gen, m)
        dirs = np.transpose(rots[:, :, : n - k], (0, 2, 1))
        normals = np.transpose(rots[:, :, n - k:], (0, 2, 1))
        if k == 1:
            offsets = gen.uniform(-rho, rho, size=(m, 1))
        elif k == 2:
            r = rho * np.sqrt(gen.uniform(0.0, 1.0, size=m))
            th = gen.uniform(0.0, 2 * math.pi, size=m)
            offsets = np.stack([r * np.cos(th), r * np.sin(th)], axis=1)
        else:
            raise ValueError("fiber sampling implemented for k <= 2")
        hits = _flat_hits(a, dirs, normals, offsets)
        if np.any(hits):
            worst = float(np.max(np.linalg.norm(offsets[hits], axis=1)))
            if worst > rho + 1e-9:
                raise AssertionError("fiber ball does not dominate the integrand")
        hits_total += float(np.count_nonzero(hits))
        count += m
    pred = scalar_float(a.exact_intrinsic_volume(k))
    scale = fiber_vol * const
    est = _estimate_from_values(name, scale * hits_total, scale ** 2 * hits_total,
                                count, seed, pred, {"fiber_radius": rho})
    return est


# -- Cauchy projection formula -----------------------------------------------------

def cauchy_projection_check(sides, samples, seed, name="cauchy"):
    """Sphere-average of exact box shadow volumes against mu_{n-1}."""
    sides_f = [float(Fraction(s)) for s in sides]
    n = len(sides_f)
    if n < 2:
        raise ValueError("projection check needs n >= 2")
    others = [math.prod(sides_f[:i] + sides_f[i + 1:]) for i in range(n)]
    const = scalar_float(euclid.cauchy_constant(n))
    total = 0.0
    total_sq = 0.0
    count = 0
    for index, m in _chunks(samples):
        gen = rng_chunk(seed, index)
        v = gen.standard_normal((m, n))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        shadow = np.abs(v) @ np.array(others)
        vals = const * shadow
        total += float(vals.sum())
        total_sq += float(np.dot(vals, vals))
        count += m
    body = euclid.TemplateBody.box(*[Fraction(s) for s in sides])
    pred = scalar_float(euclid.intrinsic_volume(body, n, n - 1))
    return _estimate_from_values(name, total, total_sq, count, seed, pred, {})


# -- Steiner tube volumes ------------------------------------------------------------

def steiner_mc(box, r, samples, seed, name="steiner"):
    """Hit-or-miss volume of the r-neighborhood of a box vs. the exact
    tube-volume polynomial."""
    rf = float(r)
    lo = box.lo_f() - rf
    hi = box.hi_f() + rf
    n = box.dimension
    vol_w = float(np.prod(hi - lo))
    hits_total = 0.0
    count = 0
    for index, m in _chunks(samples):
        gen = rng_chunk(seed, index)
        pts = gen.uniform(0.0, 1.0, size=(m, n)) * (hi - lo) + lo
        q = np.clip(pts, box.lo_f(), box.hi_f())
        gap = pts - q
        hits = np.einsum("mi,mi->m", gap, gap) <= rf * rf
        hits_total += float(np.count_nonzero(hits))
        count += m
    poly = euclid.steiner_polynomial(box.to_template(), n)
    pred = sum(scalar_float(c) * rf ** j for j, c in poly.items())
    scale = vol_w
    return _estimate_from_values(name, scale * hits_total, scale ** 2 * hits_total,
                                 count, seed, pred, {"tube_radius": rf})


# -- additive (Minkowski sum) formula -------------------------------------------------

def additive_volume_prediction(a, b):
    """Exact rotation-average of the volume of A + gB."""
    n = a.dimension
    table = euclid.additive_so(n, basis="mu")
    total = Scalar.zero()
    for ((i, _), (j, _)), c in table.entries.items():
        total = total + c * a.exact_intrinsic_volume(i) * b.exact_intrinsic_volume(j)
    return total


def estimate_additive(a, b, samples, seed, name="additive"):
    """Mean volume of A + gB over Haar rotations.

    Ball pairs are rotation-invariant (zero variance); polygon pairs use the
    exact mixed-area support formula; 3-dimensional polytope pairs fall back
    to convex hulls of pairwise vertex sums.
    """
    n = a.dimension
    try:
        pred = scalar_float(additive_volume_prediction(a, b))
    except ValueError:
        pred = None  # general polytopes have no exact template prediction
    if a.kind == "ball" and b.kind == "ball":
        from .scalars import omega
        rr = a.radius + b.radius
        val = scalar_float(omega(n)) * float(rr) ** n
        return MCEstimate(name, val, 0.0, samples, seed, prediction=pred,
                          extra={"zero_variance": True})
    if b.kind == "polytope" and len(set(b.vertices)) == 1:
        # a single point only translates: the volume never varies
        val = scalar_float(a.exact_intrinsic_volume(n))
        return MCEstimate(name, val, 0.0, samples, seed, prediction=pred,
                          extra={"zero_variance": True})
    if n == 2:
        av = ccw_order(a.vertices_f())
        bv = ccw_order(b.vertices_f())
        area_a = _shoelace(av)
        area_b = _shoelace(bv)
        _, b_normals, b_lengths = polygon_edges(bv)
        total = 0.0
        total_sq = 0.0
        count = 0
        for index, m in _chunks(samples):
            gen = rng_chunk(seed, index)
            rots = random_rotations(2, gen, m)
            normals = np.einsum("mij,kj->mki", rots, b_normals)
            h = np.max(np.einsum("vi,mki->mkv", av, normals), axis=2)
            mixed = np.einsum("mk,k->m", h, b_lengths)
            vals = area_a + area_b + mixed
            total += float(vals.sum())
            total_sq += float(np.dot(vals, vals))
            count += m
        return _estimate_from_values(name, total, total_sq, count, seed, pred, {})
    if n == 3:
        av = a.vertices_f()
        bv = b.vertices_f()
        vals = []
        for index, m in _chunks(samples):
            gen = rng_chunk(seed, index)
            rots = random_rotations(3, gen, m)
            for i in range(m):
                vals.append(minkowski_sum_volume(av, (rots[i] @ bv.T).T))
        vals = np.array(vals)
        return _estimate_from_values(name, float(vals.sum()),
                                     float(np.dot(vals, vals)),
                                     len(vals), seed, pred, {})
    raise ValueError("additive estimator supports dimensions 2 and 3")


def _shoelace(v):
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


# -- the default verification suite ----------------------------------------------------

def _square(side=1):
    h = Fraction(side) / 2
    return ConvexBody.box([-h, -h], [h, h])


def default_suite(samples=10 ** 6, seed=20260809):
    """The 12-run verification suite; every |z| must be <= 3 at a million
    samples.  Per-run seeds are seed + 7919 * index."""
    runs = []
    disk = ConvexBody.ball([0, 0], 1)
    square = _square(1)
    ball3 = ConvexBody.ball([0, 0, 0], 1)
    cube = ConvexBody.cube(3, 1)

    def sub(i):
        return seed + 7919 * i

    runs.append(estimate_principal_kinematic(disk, square, samples, sub(0),
                                             "kinematic-R2-disk-square"))
    runs.append(estimate_principal_kinematic(square, square, samples, sub(1),
                                             "kinematic-R2-square-square"))
    runs.append(estimate_principal_kinematic(ball3, cube, samples, sub(2),
                                             "kinematic-R3-ball-cube"))
    runs.append(estimate_principal_kinematic(ball3, ball3, samples, sub(3),
                                             "kinematic-R3-ball-ball"))
    runs.append(estimate_crofton(disk, 1, samples, sub(4), "crofton-R2-disk"))
    runs.append(estimate_crofton(square, 1, samples, sub(5), "crofton-R2-square"))
    runs.append(estimate_crofton(ball3, 1, samples, sub(6), "crofton-R3-ball-k1"))
    runs.append(estimate_crofton(cube, 2, samples, sub(7), "crofton-R3-cube-k2"))
    runs.append(cauchy_projection_check([1, 1], samples, sub(8), "cauchy-R2-square"))
    runs.append(cauchy_projection_check([1, 1, 1], samples, sub(9), "cauchy-R3-cube"))
    runs.append(steiner_mc(square, 1, samples, sub(10), "steiner-R2-square"))
    runs.append(estimate_additive(square, square, samples, sub(11),
                                  "additive-R2-squares"))
    return runs
