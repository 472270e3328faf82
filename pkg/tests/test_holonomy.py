import random
from fractions import Fraction

import pytest

from conftest import mat
from hodgegauge.connection import (
    EquivariantConnection,
    connection_form,
    connection_from_delta,
)
from hodgegauge.fixtures import kummer_delta, random_delta, t3_delta
from hodgegauge.holonomy import (
    TRIANGLE,
    PathError,
    PolygonalPath,
    convention_selftest,
    flat_sections_on_line,
    holonomy_path,
    transport_segment,
    triangle_delta,
)
from hodgegauge.linalg import Matrix, NotNilpotentError
from hodgegauge.mhs import HodgeNumbers
from hodgegauge.poly import PolyMatrix
from hodgegauge.scalars import ONE, Scalar, ZERO

KH = HodgeNumbers({(0, 0): 1, (-1, -1): 1})
E = mat([[0, 1], [0, 0]])


def test_path_validation():
    with pytest.raises(PathError):
        PolygonalPath([(0, 0)])
    with pytest.raises(PathError):
        PolygonalPath([(0, 0), (0, 0)])
    p = PolygonalPath(TRIANGLE)
    assert len(p.segments()) == 3
    assert p.reversed().points[0] == p.points[-1]


def test_zero_connection_transports_trivially():
    forms = connection_form(EquivariantConnection.zero(KH))
    assert transport_segment(forms, (0, 0), (5, 7)) == Matrix.identity(2)
    assert triangle_delta(EquivariantConnection.zero(KH)).delta == Matrix.identity(2)


def test_hypotenuse_transport_k_type():
    C = connection_from_delta(kummer_delta(Scalar(3)))
    forms = connection_form(C)
    T = transport_segment(forms, (-1, 0), (0, -1))
    assert T == Matrix.identity(2) + E.scale(Scalar(-3))


def test_reversed_segment_is_inverse():
    C = connection_from_delta(t3_delta(2, 5))
    forms = connection_form(C)
    T = transport_segment(forms, (-1, 0), (0, -1))
    back = transport_segment(forms, (0, -1), (-1, 0))
    assert T @ back == Matrix.identity(3)


def test_two_point_path_equals_segment():
    C = connection_from_delta(kummer_delta(Scalar(1, 2)))
    forms = connection_form(C)
    path = PolygonalPath([(-1, 0), (0, -1)])
    assert holonomy_path(forms, path) == transport_segment(forms, (-1, 0), (0, -1))


def test_rectangle_defect():
    # around the unit square the K-type connection picks up 1 - 2cE
    c = Scalar(4)
    C = connection_from_delta(kummer_delta(c))
    forms = connection_form(C)
    square = PolygonalPath([(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)])
    T = holonomy_path(forms, square)
    assert T == Matrix.identity(2) + E.scale(-2 * c)


def test_triangle_recovers_delta():
    for d in (kummer_delta(Scalar(2, 1)), t3_delta(2, 5), t3_delta(-1, Fraction(1, 3))):
        C = connection_from_delta(d)
        assert triangle_delta(C) == d


def test_triangle_on_random_data():
    rng = random.Random(31)
    for _ in range(5):
        d = random_delta(rng, max_dim=5, weight_lo=-4, weight_hi=4)
        assert triangle_delta(connection_from_delta(d)) == d


def test_flat_triangle_subdivision():
    # flat connection: holonomy is path independent, subdividing the
    # boundary does not change the (trivial) loop transport
    C = EquivariantConnection.zero(KH)
    forms = connection_form(C)
    fine = PolygonalPath(
        [
            (0, 0),
            (Fraction(-1, 2), 0),
            (-1, 0),
            (Fraction(-1, 2), Fraction(-1, 2)),
            (0, -1),
            (0, Fraction(-1, 2)),
            (0, 0),
        ]
    )
    assert holonomy_path(forms, fine) == Matrix.identity(2)


def test_flat_sections_normalization():
    C = connection_from_delta(kummer_delta(Scalar(5)))
    S = flat_sections_on_line(C)
    assert S.eval((-ONE,)) == Matrix.identity(2)
    forms = connection_form(C)
    hyp = transport_segment(forms, (-1, 0), (0, -1))
    assert S.eval((ZERO,)) == hyp


def test_flat_sections_zero_connection():
    S = flat_sections_on_line(EquivariantConnection.zero(KH))
    assert S == PolyMatrix.identity(1, 2)


def test_convention_selftest():
    assert convention_selftest()


def test_nonnilpotent_transport_rejected():
    P = PolyMatrix.from_scalar_matrix(2, mat([[1]]))
    Q = PolyMatrix.zeros(2, 1, 1)
    with pytest.raises(NotNilpotentError):
        transport_segment((P, Q), (0, 0), (1, 0))
