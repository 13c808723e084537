import math
from fractions import Fraction

import numpy as np
import pytest

from intgeo.bodies import (ConvexBody, body_from_spec, ccw_order,
                           gjk_intersects, intersects, minkowski_sum_volume,
                           polygon_area, polygon_edges)
from intgeo.scalars import Scalar


def test_ball_ball():
    assert not intersects(ConvexBody.ball([0, 0], 1), ConvexBody.ball([3, 0], 1))
    assert intersects(ConvexBody.ball([0, 0], 1), ConvexBody.ball([1, 0], 1))
    # tangency counts (closed convention)
    assert intersects(ConvexBody.ball([0, 0], 1), ConvexBody.ball([2, 0], 1))


def test_ball_box():
    ball = ConvexBody.ball([0, 0], 1)
    assert intersects(ball, ConvexBody.box([-0.5, -0.5], [0.5, 0.5]))
    assert not intersects(ball, ConvexBody.box([2, 2], [3, 3]))
    assert intersects(ball, ConvexBody.box([1, 0], [2, 1]))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        intersects(ConvexBody.ball([0, 0], 1), ConvexBody.ball([0, 0, 0], 1))


def test_polytope_pairs():
    sq = ConvexBody.polytope([[0, 0], [1, 0], [1, 1], [0, 1]])
    far = ConvexBody.polytope([[2, 0], [3, 0], [2.5, 1]])
    near = ConvexBody.polytope([[0.5, 0.5], [3, 0], [2.5, 1]])
    assert not intersects(sq, far)
    assert intersects(sq, near)


def test_gjk_against_exact_balls():
    gen = np.random.Generator(np.random.Philox(key=17))
    for _ in range(400):
        c1 = gen.uniform(-2, 2, 3)
        c2 = gen.uniform(-2, 2, 3)
        r1, r2 = gen.uniform(0.2, 1.5, 2)
        a = ConvexBody.ball(c1.tolist(), Fraction(str(round(r1, 6))))
        b = ConvexBody.ball(c2.tolist(), Fraction(str(round(r2, 6))))
        margin = np.linalg.norm(c1 - c2) - (float(a.radius) + float(b.radius))
        if abs(margin) > 1e-6:
            assert gjk_intersects(a, b) == intersects(a, b)


def test_circumradius():
    assert ConvexBody.ball([3, 4], 2).circumradius() == pytest.approx(7.0)
    assert ConvexBody.cube(2, 1).circumradius() == pytest.approx(math.sqrt(0.5))


def test_exact_intrinsic_volumes():
    cube = ConvexBody.cube(3, 1)
    assert cube.exact_intrinsic_volume(2) == Scalar.from_rational(3)
    ball = ConvexBody.ball([0, 0, 0], 1)
    assert ball.exact_intrinsic_volume(1) == Scalar.from_rational(4)
    point = ConvexBody.polytope([[0, 0]])
    assert point.exact_intrinsic_volume(0) == Scalar.one()
    assert point.exact_intrinsic_volume(2).is_zero()


def test_polygon_helpers():
    square = ccw_order([[0, 0], [1, 0], [1, 1], [0, 1]])
    assert polygon_area(square) == pytest.approx(1.0)
    _, normals, lengths = polygon_edges(square)
    assert lengths == pytest.approx(np.ones(4))
    assert np.allclose(np.linalg.norm(normals, axis=1), 1.0)
    # outward: each normal points away from the centroid
    centroid = square.mean(axis=0)
    mids = (square + np.roll(square, -1, axis=0)) / 2
    assert np.all(np.einsum("ij,ij->i", normals, mids - centroid) > 0)


def test_minkowski_sum_volume_squares():
    sq = [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]
    assert minkowski_sum_volume(sq, sq) == pytest.approx(4.0)
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    rot = [[c * x - s * y, s * x + c * y] for x, y in sq]
    assert minkowski_sum_volume(sq, rot) == pytest.approx(2 + 2 * math.sqrt(2))


def test_minkowski_sum_volume_cubes():
    cube = ConvexBody.cube(3, 1).vertices_f()
    assert minkowski_sum_volume(cube, cube) == pytest.approx(8.0)


def test_body_spec_round_trip():
    for body in (ConvexBody.ball([0, Fraction(1, 2)], Fraction(3, 2)),
                 ConvexBody.box([-1, -2], [1, 2]),
                 ConvexBody.polytope([[0, 0], [1, 0], [0, 1]])):
        doc = body.describe()
        back = body_from_spec(doc)
        assert back.describe() == doc


def test_validation_errors():
    with pytest.raises(ValueError):
        ConvexBody.ball([0, 0], 0)
    with pytest.raises(ValueError):
        ConvexBody.box([0, 0], [0, 1])
    with pytest.raises(ValueError):
        ConvexBody.polytope([])
