import random
from fractions import Fraction

import pytest

from conftest import mat, span, vec
from hodgegauge.fixtures import kummer, random_mhs, t3
from hodgegauge.linalg import Subspace
from hodgegauge.mhs import (
    ComplexMHS,
    Filtration,
    FiltrationError,
    HodgeNumbers,
    OpposednessViolation,
    RealMHS,
    conjugate_mhs,
    direct_sum_mhs,
    dual_mhs,
    pure,
    realize_real,
    tensor_mhs,
    validate_mhs,
    validate_morphism,
)
from hodgegauge.scalars import I, ONE, Scalar, ZERO


def test_filtration_at_semantics():
    f = Filtration(Filtration.INC, 2, {0: span(2, [[1, 0]]), 2: Subspace.full(2)})
    assert f.at(-1) == Subspace.zero(2)
    assert f.at(0) == f.at(1) == span(2, [[1, 0]])
    assert f.at(5) == Subspace.full(2)
    g = Filtration(Filtration.DEC, 2, {0: span(2, [[1, 0]]), 1: Subspace.zero(2)})
    assert g.at(-3) == Subspace.full(2)
    assert g.at(0) == span(2, [[1, 0]])
    assert g.at(7) == Subspace.zero(2)


def test_filtration_validate():
    bad = Filtration(
        Filtration.INC, 2, {0: Subspace.full(2), 1: span(2, [[1, 0]])}
    )
    with pytest.raises(FiltrationError):
        bad.validate()
    not_exhaustive = Filtration(Filtration.INC, 2, {0: span(2, [[1, 0]])})
    with pytest.raises(FiltrationError):
        not_exhaustive.validate()
    not_separated = Filtration(Filtration.DEC, 2, {0: span(2, [[1, 0]])})
    with pytest.raises(FiltrationError):
        not_separated.validate()


def test_filtration_equality_ignores_redundant_steps():
    a = Filtration(Filtration.INC, 1, {0: Subspace.full(1)})
    b = Filtration(
        Filtration.INC, 1, {0: Subspace.full(1), 3: Subspace.full(1)}
    )
    assert a == b


def test_hodge_numbers_block_order():
    h = HodgeNumbers({(0, 0): 1, (-1, -1): 2, (-2, 0): 1})
    assert h.dim == 4
    assert [b[0] for b in h.blocks()] == [(-2, 0), (-1, -1), (0, 0)]
    assert h.weights() == [-2, 0]
    assert h.transpose().blocks()[0][0] == (-1, -1)
    assert h.transpose().counts == {(0, 0): 1, (-1, -1): 2, (0, -2): 1}


def test_pure_structures_validate():
    for (p, q) in ((0, 0), (-1, -1), (1, 2), (3, -1)):
        h = validate_mhs(pure(p, q))
        assert h.counts == {(p, q): 1}


def test_kummer_validates():
    for c in (Scalar(1), Scalar(Fraction(1, 2)), Scalar(2, 1)):
        h = validate_mhs(kummer(c))
        assert h.counts == {(0, 0): 1, (-1, -1): 1}


def test_forgotten_weight_step_is_reported():
    # K(c) with the weight -2 step removed: part of the graded space now
    # sits at indices with p + q != 0, and the first witness in the scan
    # order is (p, q) = (-1, 0) at weight 0
    V = kummer(1)
    W = Filtration(Filtration.INC, 2, {0: Subspace.full(2)})
    bad = ComplexMHS(2, W, V.Fp, V.Fpp)
    with pytest.raises(OpposednessViolation) as exc:
        validate_mhs(bad)
    assert (exc.value.weight, exc.value.p, exc.value.q) == (0, -1, 0)


def test_degenerate_zero_space():
    empty = Filtration(Filtration.INC, 0, {})
    emptyd = Filtration(Filtration.DEC, 0, {})
    V = ComplexMHS(0, empty, emptyd, emptyd)
    assert validate_mhs(V).dim == 0


def test_tensor_with_pure_twist():
    V = tensor_mhs(kummer(3), pure(1, 1))
    h = validate_mhs(V)
    assert h.counts == {(1, 1): 1, (0, 0): 1}


def test_tensor_of_kummers():
    V = tensor_mhs(kummer(1), kummer(2))
    h = validate_mhs(V)
    assert h.counts == {(0, 0): 1, (-1, -1): 2, (-2, -2): 1}


def test_dual_is_involutive():
    for V in (kummer(2), t3(1, 2), pure(1, -1)):
        assert dual_mhs(dual_mhs(V)) == V


def test_dual_hodge_numbers_negate():
    h = validate_mhs(dual_mhs(kummer(2)))
    assert h.counts == {(0, 0): 1, (1, 1): 1}


def test_conjugate_is_involutive():
    V = kummer(Scalar(2, 1))
    assert conjugate_mhs(conjugate_mhs(V)) == V
    assert validate_mhs(conjugate_mhs(V)).counts == {(0, 0): 1, (-1, -1): 1}


def test_direct_sum():
    V = direct_sum_mhs(pure(0, 0), pure(-1, -1))
    assert validate_mhs(V).counts == {(0, 0): 1, (-1, -1): 1}


def test_morphisms():
    V = kummer(0)
    assert validate_morphism(mat([[2, 0], [0, 2]]), V, V)
    # e_{-1} -> e_0 raises the weight and is not a morphism
    assert not validate_morphism(mat([[0, 1], [0, 0]]), V, V)
    # e_0 -> e_{-1} lowers the weight but breaks F'
    assert not validate_morphism(mat([[0, 0], [1, 0]]), V, V)


def test_real_mhs_requires_rational_weights():
    W = Filtration(Filtration.INC, 1, {0: span(1, [[I]])})
    F = Filtration(Filtration.DEC, 1, {0: Subspace.full(1), 1: Subspace.zero(1)})
    # span(i) is the full line, with a canonical rational basis
    RealMHS(1, W, F)
    Wbad = Filtration(
        Filtration.INC, 2, {0: span(2, [[1, I]]), 1: Subspace.full(2)}
    )
    Fbad = Filtration(
        Filtration.DEC, 2, {0: Subspace.full(2), 1: Subspace.zero(2)}
    )
    with pytest.raises(FiltrationError):
        RealMHS(2, Wbad, Fbad)


def test_realize_real():
    W = Filtration(Filtration.INC, 1, {-2: Subspace.full(1)})
    F = Filtration(
        Filtration.DEC, 1, {-1: Subspace.full(1), 0: Subspace.zero(1)}
    )
    V = realize_real(RealMHS(1, W, F))
    assert validate_mhs(V).counts == {(-1, -1): 1}


def test_random_structures_validate():
    rng = random.Random(5)
    for _ in range(5):
        V = random_mhs(rng, max_dim=5, weight_lo=-4, weight_hi=4)
        validate_mhs(V)
