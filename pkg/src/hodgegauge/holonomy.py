"""Exact parallel transport of nilpotent polynomial connections.

Transport along a segment solves T' = M(t) T with T(0) = 1, where M is the
pullback of Omega to the segment; the iterated integrals terminate because
every coefficient block strictly lowers the weight.  The sign and the
triangle orientation (0,0) -> (-1,0) -> (0,-1) -> (0,0) are the unique
combination under which the triangle holonomy of the canonical connection
of a structure reproduces its splitting comparison operator; a runtime
self-test (convention_selftest) re-derives this pin on a rank-2 fixture.
"""

from __future__ import annotations

from .connection import EquivariantConnection, connection_form
from .linalg import Matrix, NotNilpotentError
from .mhs import HodgeNumbers
from .poly import Poly, PolyMatrix
from .scalars import ONE, ZERO, Scalar
from .splitting import DeltaObject


class PathError(ValueError):
    """Degenerate polygonal path."""


class PolygonalPath:
    """Ordered list of points of the plane, consecutive points distinct."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = tuple(
            (Scalar(0) + x, Scalar(0) + y) for (x, y) in points
        )
        if len(pts) < 2:
            raise PathError("a path needs at least two points")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise PathError("consecutive path points coincide")
        object.__setattr__(self, "points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("PolygonalPath is immutable")

    def segments(self):
        return list(zip(self.points, self.points[1:]))

    def reversed(self):
        return PolygonalPath(tuple(reversed(self.points)))


TRIANGLE = ((0, 0), (-1, 0), (0, -1), (0, 0))


def _segment_pullback(P, Q, a, b):
    """Univariate matrix M(t) = P(gamma(t)) x1' + Q(gamma(t)) x2' for the
    straight segment gamma(t) = a + t (b - a), t in [0, 1]."""
    d1 = b[0] - a[0]
    d2 = b[1] - a[1]
    t = Poly.variable(1, 0)
    g1 = Poly.constant(1, a[0]) + t.scale(d1)
    g2 = Poly.constant(1, a[1]) + t.scale(d2)

    cache = {}

    def mono(e1, e2):
        if (e1, e2) not in cache:
            acc = Poly.constant(1, ONE)
            for _ in range(e1):
                acc = acc * g1
            for _ in range(e2):
                acc = acc * g2
            cache[(e1, e2)] = acc
        return cache[(e1, e2)]

    def pull(pm, speed):
        nr, nc = pm.shape
        rows = []
        for row in pm.rows:
            out = []
            for poly in row:
                acc = Poly(1, {})
                for (e1, e2), c in poly.terms.items():
                    acc = acc + mono(e1, e2).scale(c * speed)
                out.append(acc)
            rows.append(tuple(out))
        return PolyMatrix(1, rows)

    return pull(P, d1) + pull(Q, d2)


def _picard(M, lower, upper):
    """Fundamental solution of T' = M T, T(lower) = 1, evaluated at upper.

    Terminates because M takes values in nilpotent matrices; guarded by the
    ambient dimension.
    """
    n = M.shape[0]
    ident = PolyMatrix.identity(1, n)
    T = ident
    for _ in range(n + 1):
        prod = M @ T
        F = prod.antiderivative()
        Tn = ident + F - PolyMatrix.from_scalar_matrix(1, F.eval((lower,)))
        if Tn == T:
            return T.eval((upper,))
        T = Tn
    raise NotNilpotentError("transport iteration did not terminate")


def transport_segment(forms, a, b):
    """Exact transport matrix along the straight segment from a to b."""
    P, Q = forms
    a = (Scalar(0) + a[0], Scalar(0) + a[1])
    b = (Scalar(0) + b[0], Scalar(0) + b[1])
    M = _segment_pullback(P, Q, a, b)
    return _picard(M, ZERO, ONE)


def holonomy_path(forms, path):
    """Transport along a polygonal path, composed in path order: a section
    at the start maps to T at the end, with later segments acting on the
    left."""
    n = forms[0].shape[0]
    T = Matrix.identity(n)
    for a, b in path.segments():
        T = transport_segment(forms, a, b) @ T
    return T


def triangle_delta(C):
    """Holonomy around the fixed triangle, as a DeltaObject.

    The pullback of an admissible form to either coordinate axis vanishes
    (every monomial carries both variables), so the loop reduces to the
    hypotenuse transport; the full three-segment product is computed anyway
    and the axis segments are asserted trivial.
    """
    forms = connection_form(C)
    path = PolygonalPath(TRIANGLE)
    segs = path.segments()
    n = C.hodge.dim
    first = transport_segment(forms, *segs[0])
    last = transport_segment(forms, *segs[2])
    assert first == Matrix.identity(n), "axis transport is not trivial"
    assert last == Matrix.identity(n), "axis transport is not trivial"
    T = holonomy_path(forms, path)
    return DeltaObject(C.hodge, T)


def flat_sections_on_line(C):
    """Fundamental solution S(u) on the line t1 = u, t2 = -1 - u with
    S(-1) = 1; columns span the covariantly constant sections, S(0) is the
    hypotenuse transport."""
    P, Q = connection_form(C)
    a = (-ONE, ZERO)
    b = (ZERO, -ONE)
    M = _segment_pullback(P, Q, a, b)
    # reparametrize: the pullback above is in the segment parameter
    # s in [0, 1] with u = s - 1; shift to the u variable
    shift = Poly.constant(1, ONE) + Poly.variable(1, 0)
    M = M.subs(0, shift)
    n = C.hodge.dim
    ident = PolyMatrix.identity(1, n)
    S = ident
    for _ in range(n + 1):
        prod = M @ S
        F = prod.antiderivative()
        Sn = ident + F - PolyMatrix.from_scalar_matrix(1, F.eval((-ONE,)))
        if Sn == S:
            return S
        S = Sn
    raise NotNilpotentError("flat section iteration did not terminate")


def convention_selftest():
    """Re-derive the transport sign and orientation pin on a rank-2 fixture.

    For the two-block datum with a single comparison entry -1, the canonical
    connection has A_{1,1} = E and the triangle holonomy must return exactly
    the original comparison matrix.
    """
    from .connection import connection_from_delta

    hodge = HodgeNumbers({(0, 0): 1, (-1, -1): 1})
    delta = Matrix([[ONE, -ONE], [ZERO, ONE]])
    dobj = DeltaObject(hodge, delta)
    C = connection_from_delta(dobj)
    assert C.A.get((1, 1)) == Matrix([[ZERO, ONE], [ZERO, ZERO]]), (
        "canonical connection block drifted"
    )
    back = triangle_delta(C)
    assert back.delta == delta, "orientation pin failed"
    return True
