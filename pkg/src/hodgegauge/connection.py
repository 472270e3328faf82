"""Torus-equivariant connections on the affine plane, in coordinates.

An admissible connection on the bundle attached to a bigraded space is
determined by coefficient blocks A_{p,q}, B_{p,q} (p, q >= 1) of bidegree
(-p, -q), assembled into the form

    Omega = sum A_{p,q} t1^{p-1} t2^q dt1  +  B_{p,q} t1^p t2^{q-1} dt2.

Gauge transformations are unipotent with the same strict double-lowering
shape.  The Fock-Schwinger condition A + B = 0 picks a unique representative
in each gauge orbit, and that representative is computable from a delta
datum through the inverted universal holonomy-log tables.
"""

from __future__ import annotations

from fractions import Fraction

from .freelie import generator_change_table
from .linalg import Matrix
from .poly import Poly, PolyMatrix
from .scalars import Scalar
from .splitting import DeltaObject, log_delta_components


class AdmissibilityError(ValueError):
    """Coefficient block violates the bidegree constraint."""


def _check_block(hodge, M, p, q, what):
    n = hodge.dim
    if M.shape != (n, n):
        raise AdmissibilityError(
            "%s block at (%d, %d) has shape %r" % (what, p, q, M.shape)
        )
    owner = {}
    for pq, off, h in hodge.blocks():
        for k in range(h):
            owner[off + k] = pq
    for i in range(n):
        pi, qi = owner[i]
        for j in range(n):
            if not M[i, j]:
                continue
            pj, qj = owner[j]
            if (pi, qi) != (pj - p, qj - q):
                raise AdmissibilityError(
                    "%s_{%d,%d} has an entry of bidegree %r"
                    % (what, p, q, (pi - pj, qi - qj))
                )


def _weight_spread(hodge):
    ws = hodge.weights()
    return ws[-1] - ws[0] if ws else 0


class EquivariantConnection:
    """Hodge numbers plus the coefficient maps A, B keyed by (p, q)."""

    __slots__ = ("hodge", "A", "B")

    def __init__(self, hodge, A, B):
        A = {k: v for k, v in A.items() if not v.is_zero()}
        B = {k: v for k, v in B.items() if not v.is_zero()}
        spread = _weight_spread(hodge)
        for coeffs, what in ((A, "A"), (B, "B")):
            for (p, q), M in coeffs.items():
                if p < 1 or q < 1:
                    raise AdmissibilityError(
                        "%s block at non-admissible (%d, %d)" % (what, p, q)
                    )
                if p + q > spread:
                    raise AdmissibilityError(
                        "%s block at (%d, %d) exceeds the weight spread %d"
                        % (what, p, q, spread)
                    )
                _check_block(hodge, M, p, q, what)
        object.__setattr__(self, "hodge", hodge)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    def __setattr__(self, name, value):
        raise AttributeError("EquivariantConnection is immutable")

    @classmethod
    def zero(cls, hodge):
        return cls(hodge, {}, {})

    def __eq__(self, other):
        if not isinstance(other, EquivariantConnection):
            return NotImplemented
        return (
            self.hodge == other.hodge
            and self.A == other.A
            and self.B == other.B
        )

    def is_zero(self):
        return not self.A and not self.B

    def __repr__(self):
        return "EquivariantConnection(dim=%d, A=%r, B=%r)" % (
            self.hodge.dim,
            sorted(self.A),
            sorted(self.B),
        )


class GaugeTransformation:
    """Unipotent change of frame g = 1 + sum C_{p,q} t1^p t2^q."""

    __slots__ = ("hodge", "C")

    def __init__(self, hodge, C):
        C = {k: v for k, v in C.items() if not v.is_zero()}
        for (p, q), M in C.items():
            if p < 1 or q < 1:
                raise AdmissibilityError(
                    "gauge block at non-lowering (%d, %d)" % (p, q)
                )
            _check_block(hodge, M, p, q, "C")
        object.__setattr__(self, "hodge", hodge)
        object.__setattr__(self, "C", C)

    def __setattr__(self, name, value):
        raise AttributeError("GaugeTransformation is immutable")

    @classmethod
    def identity(cls, hodge):
        return cls(hodge, {})

    def __eq__(self, other):
        if not isinstance(other, GaugeTransformation):
            return NotImplemented
        return self.hodge == other.hodge and self.C == other.C

    def matrix(self):
        """g as a polynomial matrix in (t1, t2)."""
        n = self.hodge.dim
        g = PolyMatrix.identity(2, n)
        for (p, q), M in sorted(self.C.items()):
            g = g + PolyMatrix.from_scalar_matrix(2, M).scale_poly(
                Poly.monomial(2, (p, q))
            )
        return g

    def inverse_matrix(self):
        """g^{-1} via the terminating geometric series (g - 1 is nilpotent)."""
        n = self.hodge.dim
        one = PolyMatrix.identity(2, n)
        N = self.matrix() - one
        acc = one
        term = one
        while True:
            term = -(term @ N)
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def compose(self, other):
        """Pointwise product; apply_gauge(apply_gauge(C, g), h) equals
        apply_gauge(C, g.compose(h))."""
        prod = self.matrix() @ other.matrix()
        C = {}
        for (p, q) in prod.support():
            if p == 0 and q == 0:
                continue
            C[(p, q)] = prod.coefficient_matrix((p, q))
        return GaugeTransformation(self.hodge, C)


def connection_form(C):
    """The pair (P, Q) with Omega = P dt1 + Q dt2."""
    n = C.hodge.dim
    P = PolyMatrix.zeros(2, n, n)
    Q = PolyMatrix.zeros(2, n, n)
    for (p, q), M in sorted(C.A.items()):
        P = P + PolyMatrix.from_scalar_matrix(2, M).scale_poly(
            Poly.monomial(2, (p - 1, q))
        )
    for (p, q), M in sorted(C.B.items()):
        Q = Q + PolyMatrix.from_scalar_matrix(2, M).scale_poly(
            Poly.monomial(2, (p, q - 1))
        )
    return P, Q


def curvature(C):
    """The dt1^dt2 coefficient d1 Q - d2 P + [P, Q]; zero iff flat."""
    P, Q = connection_form(C)
    return Q.diff(0) - P.diff(1) + P.commutator(Q)


def _extract_connection(hodge, P, Q):
    A = {}
    B = {}
    for (a, b) in P.support():
        A[(a + 1, b)] = P.coefficient_matrix((a, b))
    for (a, b) in Q.support():
        B[(a, b + 1)] = Q.coefficient_matrix((a, b))
    return EquivariantConnection(hodge, A, B)


def apply_gauge(C, g):
    """Omega -> g^{-1} dg + g^{-1} Omega g, repackaged into coefficients."""
    if C.hodge != g.hodge:
        raise AdmissibilityError("connection and gauge on different spaces")
    G = g.matrix()
    Ginv = g.inverse_matrix()
    P, Q = connection_form(C)
    Pn = Ginv @ (G.diff(0) + P @ G)
    Qn = Ginv @ (G.diff(1) + Q @ G)
    return _extract_connection(C.hodge, Pn, Qn)


def normalize_fock_schwinger(C):
    """The unique gauge-equivalent connection with A + B = 0, plus the gauge.

    Solved level by level on the total drop d = p + q: at each level the
    defect (A + B)_{p,q} of the partially corrected connection determines
    C_{p,q} = -(A + B)_{p,q} / (p + q).
    """
    hodge = C.hodge
    current = C
    total = GaugeTransformation.identity(hodge)
    for d in range(2, _weight_spread(hodge) + 1):
        Cd = {}
        for p in range(1, d):
            q = d - p
            n = hodge.dim
            S = current.A.get((p, q), Matrix.zeros(n, n)) + current.B.get(
                (p, q), Matrix.zeros(n, n)
            )
            if not S.is_zero():
                Cd[(p, q)] = S.scale(Scalar(Fraction(-1, d)))
        if not Cd:
            continue
        g = GaugeTransformation(hodge, Cd)
        current = apply_gauge(current, g)
        total = total.compose(g)
    for (p, q), M in current.A.items():
        resid = M + current.B.get((p, q), Matrix.zeros(*M.shape))
        assert resid.is_zero(), "normalization left a defect at %r" % ((p, q),)
    for (p, q), M in current.B.items():
        assert (p, q) in current.A or M.is_zero()
    return current, total


def connection_from_delta(dobj, table=None):
    """The Fock-Schwinger connection whose triangle holonomy is delta.

    The log components D_{p,q} of delta are the evaluations of the universal
    Lie polynomials z_{p,q} at the A blocks; the triangular inverse of that
    generator change recovers the blocks, and B = -A.
    """
    hodge = dobj.hodge
    spread = _weight_spread(hodge)
    if spread < 2:
        return EquivariantConnection.zero(hodge)
    if table is None:
        table = generator_change_table(spread)
    D = log_delta_components(dobj)
    n = hodge.dim
    zero = Matrix.zeros(n, n)
    assignment = {}
    for d in range(2, spread + 1):
        for p in range(1, d):
            assignment["z%d,%d" % (p, d - p)] = D.get((p, d - p), zero)
    A = {}
    for d in range(2, spread + 1):
        for p in range(1, d):
            q = d - p
            M = table[(p, q)].substitute(assignment)
            if not M.is_zero():
                A[(p, q)] = M
    B = {k: -v for k, v in A.items()}
    return EquivariantConnection(hodge, A, B)
