import random
from fractions import Fraction

import pytest

from conftest import mat
from hodgegauge.connection import (
    AdmissibilityError,
    EquivariantConnection,
    GaugeTransformation,
    apply_gauge,
    connection_form,
    connection_from_delta,
    curvature,
    normalize_fock_schwinger,
)
from hodgegauge.fixtures import kummer_delta, random_delta, t3_delta
from hodgegauge.linalg import Matrix
from hodgegauge.mhs import HodgeNumbers
from hodgegauge.poly import Poly, PolyMatrix
from hodgegauge.scalars import ONE, Scalar, ZERO

KH = HodgeNumbers({(0, 0): 1, (-1, -1): 1})
E = mat([[0, 1], [0, 0]])  # sends the weight-0 line to the weight-(-2) line


def k_connection(a):
    A = E.scale(Scalar(a))
    return EquivariantConnection(KH, {(1, 1): A}, {(1, 1): -A})


def test_connection_form_k_type():
    C = k_connection(3)
    P, Q = connection_form(C)
    t2 = Poly.monomial(2, (0, 1))
    t1 = Poly.monomial(2, (1, 0))
    assert P == PolyMatrix.from_scalar_matrix(2, E.scale(Scalar(3))).scale_poly(t2)
    assert Q == PolyMatrix.from_scalar_matrix(2, E.scale(Scalar(-3))).scale_poly(t1)


def test_admissibility_rejects_bad_support():
    with pytest.raises(AdmissibilityError):
        EquivariantConnection(KH, {(0, 1): E}, {})
    with pytest.raises(AdmissibilityError):
        EquivariantConnection(KH, {(1, 2): E}, {})  # exceeds the weight spread
    # an entry that does not move (0,0) to (-1,-1) violates the bidegree
    with pytest.raises(AdmissibilityError):
        EquivariantConnection(KH, {(1, 1): mat([[0, 0], [1, 0]])}, {})


def test_curvature_zero_connection():
    assert curvature(EquivariantConnection.zero(KH)).is_zero()


def test_curvature_k_type_is_minus_two_a():
    C = k_connection(5)
    F = curvature(C)
    assert F.support() == {(0, 0)}
    assert F.coefficient_matrix((0, 0)) == E.scale(Scalar(-10))


def test_apply_gauge_identity():
    C = k_connection(2)
    assert apply_gauge(C, GaugeTransformation.identity(KH)) == C


def test_gauge_of_zero_connection():
    g = GaugeTransformation(KH, {(1, 1): E})
    out = apply_gauge(EquivariantConnection.zero(KH), g)
    assert out.A == {(1, 1): E}
    assert out.B == {(1, 1): E}


def test_gauge_composition_is_matrix_product():
    h3 = HodgeNumbers({(0, 0): 1, (-1, -1): 1, (-2, -2): 1})
    n1 = mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    n2 = mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    g1 = GaugeTransformation(h3, {(1, 1): n1})
    g2 = GaugeTransformation(h3, {(2, 2): n2})
    d = t3_delta(1, 1)
    C = connection_from_delta(d)
    left = apply_gauge(apply_gauge(C, g1), g2)
    right = apply_gauge(C, g1.compose(g2))
    assert left == right


def test_gauge_inverse_matrix():
    g = GaugeTransformation(KH, {(1, 1): E})
    prod = g.matrix() @ g.inverse_matrix()
    assert prod == PolyMatrix.identity(2, 2)


def test_normalize_single_level():
    C = EquivariantConnection(KH, {(1, 1): E}, {})
    Cn, g = normalize_fock_schwinger(C)
    half = Scalar(Fraction(1, 2))
    assert Cn.A == {(1, 1): E.scale(half)}
    assert Cn.B == {(1, 1): E.scale(-half)}
    assert g.C == {(1, 1): E.scale(-half)}


def test_normalize_idempotent():
    C = k_connection(7)
    Cn, g = normalize_fock_schwinger(C)
    assert Cn == C
    assert g == GaugeTransformation.identity(KH)


def test_normalize_gauge_invariant_t3():
    d = t3_delta(2, 5)
    C = connection_from_delta(d)
    h3 = C.hodge
    n1 = mat([[0, 2, 0], [0, 0, -1], [0, 0, 0]])
    g = GaugeTransformation(h3, {(1, 1): n1})
    Cn1, _ = normalize_fock_schwinger(apply_gauge(C, g))
    Cn2, _ = normalize_fock_schwinger(C)
    assert Cn1 == Cn2


def test_connection_from_identity_delta():
    d = kummer_delta(0)
    assert connection_from_delta(d).is_zero()


def test_connection_from_kummer_delta():
    c = Scalar(2, 1)
    C = connection_from_delta(kummer_delta(c))
    assert C.A == {(1, 1): E.scale(c)}
    assert C.B == {(1, 1): E.scale(-c)}


def test_connection_from_t3_has_two_levels():
    C = connection_from_delta(t3_delta(2, 5))
    assert set(C.A) == {(1, 1), (2, 2)}
    assert C.B == {k: -v for k, v in C.A.items()}


def test_random_gauge_normalization_agrees():
    rng = random.Random(23)
    for _ in range(5):
        d = random_delta(rng, max_dim=4, weight_lo=-3, weight_hi=3)
        C = connection_from_delta(d)
        hodge = C.hodge
        owner = d.block_of_index()
        spread = hodge.weights()[-1] - hodge.weights()[0]
        Cg = {}
        n = hodge.dim
        for p in range(1, spread):
            for q in range(1, spread - p + 1):
                rows = [[ZERO] * n for _ in range(n)]
                hit = False
                for i in range(n):
                    for j in range(n):
                        pi, qi = owner[i]
                        pj, qj = owner[j]
                        if (pi, qi) == (pj - p, qj - q) and rng.random() < 0.5:
                            rows[i][j] = Scalar(rng.randint(-2, 2))
                            hit = hit or bool(rows[i][j])
                if hit:
                    Cg[(p, q)] = Matrix(rows)
        g = GaugeTransformation(hodge, Cg)
        a, _ = normalize_fock_schwinger(apply_gauge(C, g))
        b, _ = normalize_fock_schwinger(C)
        assert a == b
