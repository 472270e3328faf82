"""Sparse exact polynomials and polynomial matrices.

Supports one- and two-variable (Laurent) polynomials over Scalar.  Exponent
tuples index the terms; negative exponents are allowed only when the Laurent
flag is set.  Used for connection forms, patching functions, and exact
segment integration.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar, _coerce
from .linalg import DimensionMismatch, Matrix


class LaurentError(ValueError):
    """Negative exponent in a non-Laurent polynomial."""


class Poly:
    __slots__ = ("nvars", "laurent", "terms")

    def __init__(self, nvars, terms, laurent=False):
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError("exponent arity %d != nvars %d" % (len(exps), nvars))
            coeff = _coerce(coeff)
            if not coeff:
                continue
            if not laurent and any(e < 0 for e in exps):
                raise LaurentError("negative exponent %r" % (exps,))
            clean[exps] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "laurent", laurent)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, nvars, c, laurent=False):
        return cls(nvars, {(0,) * nvars: _coerce(c)}, laurent)

    @classmethod
    def monomial(cls, nvars, exps, c=ONE, laurent=False):
        return cls(nvars, {tuple(exps): _coerce(c)}, laurent)

    @classmethod
    def variable(cls, nvars, idx, laurent=False):
        exps = [0] * nvars
        exps[idx] = 1
        return cls(nvars, {tuple(exps): ONE}, laurent)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def _compat(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatch("nvars %d vs %d" % (self.nvars, other.nvars))
        return self.laurent or other.laurent

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        laurent = self._compat(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, ZERO) + c
        return Poly(self.nvars, terms, laurent)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(
            self.nvars, {e: -c for e, c in self.terms.items()}, self.laurent
        )

    def __mul__(self, other):
        laurent = self._compat(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                terms[key] = terms.get(key, ZERO) + ca * cb
        return Poly(self.nvars, terms, laurent)

    def scale(self, c):
        c = _coerce(c)
        return Poly(
            self.nvars, {e: c * x for e, x in self.terms.items()}, self.laurent
        )

    def conjugate(self):
        return Poly(
            self.nvars,
            {e: c.conjugate() for e, c in self.terms.items()},
            self.laurent,
        )

    def diff(self, var):
        terms = {}
        for exps, c in self.terms.items():
            e = exps[var]
            if e == 0:
                continue
            key = exps[:var] + (e - 1,) + exps[var + 1 :]
            terms[key] = terms.get(key, ZERO) + c * Scalar(e)
        return Poly(self.nvars, terms, self.laurent)

    def subs(self, var, repl):
        """Substitute the polynomial `repl` for variable `var`.

        The substituted variable must appear with non-negative exponents only.
        `repl` is a polynomial in the full new variable set; remaining
        variables keep their positions.
        """
        if repl.nvars != self.nvars:
            raise DimensionMismatch("substitution arity mismatch")
        out = Poly(self.nvars, {}, self.laurent or repl.laurent)
        pow_cache = {0: Poly.constant(self.nvars, ONE, repl.laurent)}

        def rpow(k):
            if k not in pow_cache:
                pow_cache[k] = rpow(k - 1) * repl
            return pow_cache[k]

        for exps, c in self.terms.items():
            e = exps[var]
            if e < 0:
                raise LaurentError("cannot substitute into negative power")
            rest = exps[:var] + (0,) + exps[var + 1 :]
            mono = Poly(self.nvars, {rest: c}, self.laurent or repl.laurent)
            out = out + mono * rpow(e)
        return out

    def eval(self, point):
        """Evaluate at a tuple of Scalars (nonzero where Laurent requires)."""
        acc = ZERO
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e == 0:
                    continue
                if e < 0:
                    term = term / (x ** (-e))
                else:
                    term = term * (x ** e)
            acc = acc + term
        return acc

    def exponent_range(self, var):
        """(min, max) exponent of `var` over the support, or None if zero."""
        if not self.terms:
            return None
        es = [exps[var] for exps in self.terms]
        return (min(es), max(es))

    def antiderivative(self, var=0):
        terms = {}
        for exps, c in self.terms.items():
            e = exps[var]
            if e == -1:
                raise LaurentError("no rational antiderivative of 1/x")
            key = exps[:var] + (e + 1,) + exps[var + 1 :]
            terms[key] = c / Scalar(e + 1)
        return Poly(self.nvars, terms, self.laurent)

    def integrate(self, a, b, var=0):
        """Exact definite integral over [a, b] in the given variable."""
        if self.nvars != 1:
            raise ValueError("definite integration needs a univariate polynomial")
        F = self.antiderivative(var)
        return F.eval((b,)) - F.eval((a,))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            mono = "*".join(
                "x%d^%d" % (i, e) for i, e in enumerate(exps) if e != 0
            )
            parts.append("(%s)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(parts)


class PolyMatrix:
    __slots__ = ("nvars", "rows")

    def __init__(self, nvars, rows):
        rows = tuple(tuple(rows_i) for rows_i in rows)
        for row in rows:
            for p in row:
                if p.nvars != nvars:
                    raise DimensionMismatch("entry arity mismatch")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def from_scalar_matrix(cls, nvars, m, laurent=False):
        return cls(
            nvars,
            tuple(
                tuple(Poly.constant(nvars, x, laurent) for x in row)
                for row in m.rows
            ),
        )

    @classmethod
    def zeros(cls, nvars, r, c, laurent=False):
        zero = Poly(nvars, {}, laurent)
        return cls(nvars, tuple(tuple(zero for _ in range(c)) for _ in range(r)))

    @classmethod
    def identity(cls, nvars, n, laurent=False):
        zero = Poly(nvars, {}, laurent)
        one = Poly.constant(nvars, ONE, laurent)
        return cls(
            nvars,
            tuple(
                tuple(one if i == j else zero for j in range(n)) for i in range(n)
            ),
        )

    @property
    def shape(self):
        if not self.rows:
            return (0, 0)
        return (len(self.rows), len(self.rows[0]))

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.rows == other.rows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        return PolyMatrix(
            self.nvars,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolyMatrix(
            self.nvars, tuple(tuple(-p for p in row) for row in self.rows)
        )

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch("matmul shape mismatch")
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = None
                for a, b in zip(row, col):
                    if a.is_zero() or b.is_zero():
                        continue
                    prod = a * b
                    acc = prod if acc is None else acc + prod
                if acc is None:
                    acc = Poly(self.nvars, {}, True)
                out_row.append(acc)
            out.append(tuple(out_row))
        return PolyMatrix(self.nvars, out)

    def scale_poly(self, p):
        return PolyMatrix(
            self.nvars, tuple(tuple(p * x for x in row) for row in self.rows)
        )

    def diff(self, var):
        return PolyMatrix(
            self.nvars, tuple(tuple(p.diff(var) for p in row) for row in self.rows)
        )

    def subs(self, var, repl):
        return PolyMatrix(
            self.nvars,
            tuple(tuple(p.subs(var, repl) for p in row) for row in self.rows),
        )

    def eval(self, point):
        return Matrix(
            tuple(tuple(p.eval(point) for p in row) for row in self.rows)
        )

    def is_zero(self):
        return all(p.is_zero() for row in self.rows for p in row)

    def commutator(self, other):
        return self @ other - other @ self

    def coefficient_matrix(self, exps):
        """Scalar matrix of the coefficient of the given monomial."""
        exps = tuple(exps)
        return Matrix(
            tuple(
                tuple(p.terms.get(exps, ZERO) for p in row) for row in self.rows
            )
        )

    def support(self):
        s = set()
        for row in self.rows:
            for p in row:
                s.update(p.terms)
        return s

    def antiderivative(self, var=0):
        return PolyMatrix(
            self.nvars,
            tuple(tuple(p.antiderivative(var) for p in row) for row in self.rows),
        )

    def integrate(self, a, b, var=0):
        return Matrix(
            tuple(
                tuple(p.integrate(a, b, var) for p in row) for row in self.rows
            )
        )


def integrate_poly_segment(pm, a, b):
    """Exact entrywise integral of a univariate polynomial matrix over [a, b]."""
    return pm.integrate(a, b)
