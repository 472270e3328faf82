import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hodgegauge.linalg import Matrix, Subspace
from hodgegauge.scalars import Scalar


def sc(x):
    if isinstance(x, Scalar):
        return x
    return Scalar(Fraction(x))


def mat(rows):
    return Matrix([[sc(x) for x in row] for row in rows])


def vec(entries):
    return tuple(sc(x) for x in entries)


def span(n, rows):
    return Subspace.from_rows(n, [vec(r) for r in rows])


def fixture_dir():
    import hodgegauge

    return os.path.join(os.path.dirname(hodgegauge.__file__), "fixtures")
