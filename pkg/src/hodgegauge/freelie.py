"""Free Lie algebras in Lyndon coordinates and the universal holonomy log.

Generators carry bidegrees (-p, -q); we store the positive pair (p, q) and
call p + q the weight.  Elements are kept as rational coordinates on the
Lyndon-word basis; brackets are computed by expanding into the truncated
tensor algebra and re-extracting, which is triangular with respect to the
lexicographic order and hence exact.

The universal tables express the logarithm of the transport along the
hypotenuse from (-1, 0) to (0, -1) as a Lie series z = sum z_{p,q} in the
connection coefficients alpha_{p,q}, and invert that (triangular) change of
generators.  Tables depend only on the truncation weight and are cached.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .linalg import Matrix


class NotLieElement(ValueError):
    """A tensor element failed to reduce to the Lyndon basis."""


class GeneratorChangeError(ValueError):
    """A leading coefficient needed for the triangular inversion vanished."""


class Alphabet:
    """Ordered list of generator labels with positive bidegrees (p, q)."""

    __slots__ = ("letters", "bidegrees")

    def __init__(self, letters):
        letters = tuple((str(lab), int(p), int(q)) for lab, p, q in letters)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(
            self, "bidegrees", tuple((p, q) for _, p, q in letters)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Alphabet is immutable")

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def weight(self, i):
        p, q = self.bidegrees[i]
        return p + q

    def word_weight(self, w):
        return sum(self.weight(i) for i in w)

    def word_bidegree(self, w):
        p = sum(self.bidegrees[i][0] for i in w)
        q = sum(self.bidegrees[i][1] for i in w)
        return (p, q)

    def index_of(self, label):
        for i, (lab, _, _) in enumerate(self.letters):
            if lab == label:
                return i
        raise KeyError(label)


def alpha_alphabet(N):
    """Connection-coefficient generators alpha_{p,q}, p,q >= 1, p+q <= N."""
    letters = []
    for d in range(2, N + 1):
        for p in range(1, d):
            letters.append(("a%d,%d" % (p, d - p), p, d - p))
    return Alphabet(letters)


def z_alphabet(N):
    """Holonomy-log generators z_{p,q} with the same bidegrees."""
    letters = []
    for d in range(2, N + 1):
        for p in range(1, d):
            letters.append(("z%d,%d" % (p, d - p), p, d - p))
    return Alphabet(letters)


TT_ALPHABET = Alphabet([("t1", 1, 0), ("t2", 0, 1)])


def is_lyndon(w):
    """A word is Lyndon iff it is strictly smaller than every proper suffix."""
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(alphabet, N):
    """All Lyndon words of total weight <= N, sorted by (weight, word)."""
    out = []

    def grow(word, weight):
        if word and is_lyndon(word):
            out.append(word)
        for i in range(len(alphabet)):
            wt = weight + alphabet.weight(i)
            if wt <= N:
                grow(word + (i,), wt)

    grow((), 0)
    out.sort(key=lambda w: (alphabet.word_weight(w), w))
    return out


def lyndon_basis(alphabet, N):
    """Lyndon words of weight <= N grouped by bidegree."""
    out = {}
    for w in lyndon_words(alphabet, N):
        out.setdefault(alphabet.word_bidegree(w), []).append(w)
    return out


def standard_factorization(w):
    """Split a Lyndon word of length >= 2 as u v with v the longest
    proper Lyndon suffix; the recursive bracketing [b(u), b(v)] is the
    classical basis element."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("no factorization: %r is not Lyndon" % (w,))


def _tensor_bracket(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            c = ca * cb
            key = wa + wb
            out[key] = out.get(key, Fraction(0)) + c
            key = wb + wa
            out[key] = out.get(key, Fraction(0)) - c
    return {w: c for w, c in out.items() if c}


_EXPAND_CACHE = {}


def expand_lyndon(alphabet, w):
    """Tensor expansion of the bracketed Lyndon word."""
    key = (alphabet, w)
    if key in _EXPAND_CACHE:
        return _EXPAND_CACHE[key]
    if len(w) == 1:
        out = {w: Fraction(1)}
    else:
        u, v = standard_factorization(w)
        out = _tensor_bracket(expand_lyndon(alphabet, u), expand_lyndon(alphabet, v))
    _EXPAND_CACHE[key] = out
    return out


class LiePolynomial:
    """Rational coordinates on the Lyndon basis of a free Lie algebra."""

    __slots__ = ("alphabet", "coords")

    def __init__(self, alphabet, coords):
        clean = {}
        for w, c in coords.items():
            w = tuple(w)
            c = Fraction(c)
            if not c:
                continue
            if not is_lyndon(w):
                raise NotLieElement("%r is not a Lyndon word" % (w,))
            clean[w] = c
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "coords", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LiePolynomial is immutable")

    @classmethod
    def generator(cls, alphabet, i):
        return cls(alphabet, {(i,): Fraction(1)})

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet, {})

    @classmethod
    def from_tensor(cls, alphabet, tensor):
        """Extract Lyndon coordinates; raises NotLieElement on non-Lie input.

        Greedy: the minimal surviving word of a Lie element is Lyndon and
        appears with coefficient 1 in its own bracketing.
        """
        work = {w: Fraction(c) for w, c in tensor.items() if c}
        coords = {}
        while work:
            w = min(work, key=lambda u: (len(u), u))
            if not is_lyndon(w):
                raise NotLieElement("minimal word %r is not Lyndon" % (w,))
            c = work[w]
            coords[w] = c
            for u, cu in expand_lyndon(alphabet, w).items():
                new = work.get(u, Fraction(0)) - c * cu
                if new:
                    work[u] = new
                else:
                    work.pop(u, None)
        return cls(alphabet, coords)

    def to_tensor(self):
        out = {}
        for w, c in self.coords.items():
            for u, cu in expand_lyndon(self.alphabet, w).items():
                out[u] = out.get(u, Fraction(0)) + c * cu
        return {w: c for w, c in out.items() if c}

    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, LiePolynomial):
            return NotImplemented
        return self.alphabet == other.alphabet and self.coords == other.coords

    def __add__(self, other):
        coords = dict(self.coords)
        for w, c in other.coords.items():
            coords[w] = coords.get(w, Fraction(0)) + c
        return LiePolynomial(self.alphabet, coords)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, c):
        c = Fraction(c)
        return LiePolynomial(
            self.alphabet, {w: c * x for w, x in self.coords.items()}
        )

    def bracket(self, other):
        t = _tensor_bracket(self.to_tensor(), other.to_tensor())
        return LiePolynomial.from_tensor(self.alphabet, t)

    def bidegree_components(self):
        out = {}
        for w, c in self.coords.items():
            pq = self.alphabet.word_bidegree(w)
            out.setdefault(pq, {})[w] = c
        return {
            pq: LiePolynomial(self.alphabet, cs) for pq, cs in out.items()
        }

    def substitute(self, assignment):
        """Evaluate with generator label -> Matrix, brackets as commutators."""
        mats = {}
        size = None
        for lab, _, _ in self.alphabet.letters:
            if lab in assignment:
                m = assignment[lab]
                mats[lab] = m
                size = m.nrows

        def need(i):
            lab = self.alphabet.letters[i][0]
            if lab not in mats:
                raise KeyError("no matrix assigned to generator %r" % (lab,))
            return mats[lab]

        if size is None:
            raise ValueError("empty assignment")
        cache = {}

        def ev(w):
            if w in cache:
                return cache[w]
            if len(w) == 1:
                out = need(w[0])
            else:
                u, v = standard_factorization(w)
                a, b = ev(u), ev(v)
                out = a @ b - b @ a
            cache[w] = out
            return out

        acc = Matrix.zeros(size, size)
        for w, c in self.coords.items():
            acc = acc + ev(w).scale(c)
        return acc

    def substitute_lie(self, target_alphabet, mapping):
        """Evaluate with generator label -> LiePolynomial over another alphabet."""
        cache = {}

        def ev(w):
            if w in cache:
                return cache[w]
            if len(w) == 1:
                lab = self.alphabet.letters[w[0]][0]
                out = mapping[lab]
            else:
                u, v = standard_factorization(w)
                out = ev(u).bracket(ev(v))
            cache[w] = out
            return out

        acc = LiePolynomial.zero(target_alphabet)
        for w, c in self.coords.items():
            acc = acc + ev(w).scale(c)
        return acc

    def __repr__(self):
        parts = []
        for w in sorted(self.coords, key=lambda u: (len(u), u)):
            labels = "".join(
                "[%s]" % self.alphabet.letters[i][0] for i in w
            )
            parts.append("%s*%s" % (self.coords[w], labels))
        return "LiePolynomial(%s)" % (" + ".join(parts) or "0")


# ---------------------------------------------------------------------------
# univariate rational polynomials for the hypotenuse integrals


def _poly_mul(a, b):
    out = {}
    for da, ca in a.items():
        for db, cb in b.items():
            out[da + db] = out.get(da + db, Fraction(0)) + ca * cb
    return {d: c for d, c in out.items() if c}


def _poly_int(a):
    # antiderivative vanishing at t = -1
    F = {d + 1: c / (d + 1) for d, c in a.items()}
    const = -sum(c * Fraction(-1) ** d for d, c in F.items())
    if const:
        F[0] = F.get(0, Fraction(0)) + const
    return {d: c for d, c in F.items() if c}


def _poly_at_zero(a):
    return a.get(0, Fraction(0))


def hypotenuse_coefficient(p, q):
    """The univariate pullback -t^{p-1}(-1-t)^{q-1} on the segment
    t1 = t, t2 = -1 - t for t in [-1, 0]."""
    acc = {0: Fraction(-1)}
    for _ in range(p - 1):
        acc = _poly_mul(acc, {1: Fraction(1)})
    for _ in range(q - 1):
        acc = _poly_mul(acc, {0: Fraction(-1), 1: Fraction(-1)})
    return acc


def abelianized_coefficient(p, q):
    """Exact integral of the hypotenuse pullback over [-1, 0]; this is the
    leading coefficient of z_{p,q} on alpha_{p,q} and is always nonzero."""
    return _poly_at_zero(_poly_int(hypotenuse_coefficient(p, q)))


def _ts_mul(a, b, alphabet, N):
    out = {}
    for wa, ca in a.items():
        la = alphabet.word_weight(wa)
        for wb, cb in b.items():
            if la + alphabet.word_weight(wb) > N:
                continue
            key = wa + wb
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {w: c for w, c in out.items() if c}


def _ts_log(u, alphabet, N):
    x = {w: c for w, c in u.items() if w}
    acc = {}
    power = dict(x)
    k = 1
    while power:
        sign = Fraction(1 if k % 2 == 1 else -1, k)
        for w, c in power.items():
            acc[w] = acc.get(w, Fraction(0)) + sign * c
        power = _ts_mul(power, x, alphabet, N)
        k += 1
    return {w: c for w, c in acc.items() if c}


def _dynkin(alphabet, tensor):
    """Left-nested bracketing word by word, expanded back to tensors."""
    out = {}
    for w, c in tensor.items():
        if not w:
            continue
        br = {(w[0],): Fraction(1)}
        for i in w[1:]:
            br = _tensor_bracket(br, {(i,): Fraction(1)})
        for u, cu in br.items():
            out[u] = out.get(u, Fraction(0)) + c * cu
    return {w: c for w, c in out.items() if c}


def universal_log_pexp(N):
    """Bihomogeneous components of log of the hypotenuse transport.

    The transport solves U' = omega(t) U with
    omega(t) = sum alpha_{p,q} * (-t^{p-1}(-1-t)^{q-1}), U(-1) = 1,
    in the tensor algebra truncated at weight N.  Returns the map
    (p, q) -> z_{p,q} as Lyndon-coordinate Lie polynomials.
    """
    alphabet = alpha_alphabet(N)
    letters = list(range(len(alphabet)))
    fs = [hypotenuse_coefficient(*alphabet.bidegrees[i]) for i in letters]
    # Picard iteration; each step prepends one letter, weight >= 2 per letter
    state = {(): {0: Fraction(1)}}
    for _ in range(N // 2):
        new = {(): {0: Fraction(1)}}
        for w, poly in state.items():
            wt = alphabet.word_weight(w)
            for i in letters:
                if wt + alphabet.weight(i) > N:
                    continue
                contrib = _poly_int(_poly_mul(fs[i], poly))
                key = (i,) + w
                if key in new:
                    merged = dict(new[key])
                    for d, c in contrib.items():
                        merged[d] = merged.get(d, Fraction(0)) + c
                    new[key] = {d: c for d, c in merged.items() if c}
                else:
                    new[key] = contrib
        if new == state:
            break
        state = new
    u = {w: _poly_at_zero(poly) for w, poly in state.items()}
    u = {w: c for w, c in u.items() if c}
    z = _ts_log(u, alphabet, N)
    # the log of a group-like series is primitive; the Dynkin projection
    # detects any extraction bug exactly
    by_len = {}
    for w, c in z.items():
        by_len.setdefault(len(w), {})[w] = c
    for ell, part in by_len.items():
        proj = _dynkin(alphabet, part)
        want = {w: Fraction(ell) * c for w, c in part.items()}
        assert proj == want, "log of the transport is not primitive"
    lie = LiePolynomial.from_tensor(alphabet, z)
    comps = lie.bidegree_components()
    out = {}
    for d in range(2, N + 1):
        for p in range(1, d):
            q = d - p
            out[(p, q)] = comps.get((p, q), LiePolynomial.zero(alphabet))
    return out


def invert_generator_change(N):
    """Express each alpha_{p,q} as a Lie polynomial in the z generators.

    Triangular back-substitution on the total weight: z_{p,q} equals its
    leading coefficient times alpha_{p,q} plus brackets of strictly lower
    generators.
    """
    ztab = universal_log_pexp(N)
    A = alpha_alphabet(N)
    Z = z_alphabet(N)
    out = {}
    for d in range(2, N + 1):
        for p in range(1, d):
            q = d - p
            zpq = ztab[(p, q)]
            gen = (A.index_of("a%d,%d" % (p, q)),)
            c = zpq.coords.get(gen, Fraction(0))
            if not c:
                raise GeneratorChangeError(
                    "vanishing leading coefficient at (%d, %d)" % (p, q)
                )
            tail = LiePolynomial(
                A, {w: x for w, x in zpq.coords.items() if w != gen}
            )
            mapping = {
                "a%d,%d" % (pp, qq): poly for (pp, qq), poly in out.items()
            }
            zsym = LiePolynomial.generator(Z, Z.index_of("z%d,%d" % (p, q)))
            if tail.is_zero():
                subbed = LiePolynomial.zero(Z)
            else:
                subbed = tail.substitute_lie(Z, mapping)
            out[(p, q)] = (zsym - subbed).scale(Fraction(1) / c)
    return out


def commutant_generators(N):
    """The lifts ad(t2)^{q-1}(ad(t1)^p(t2)) in the free Lie algebra on two
    letters, for p, q >= 1 with p + q <= N."""
    t1 = LiePolynomial.generator(TT_ALPHABET, 0)
    t2 = LiePolynomial.generator(TT_ALPHABET, 1)
    out = {}
    for d in range(2, N + 1):
        for p in range(1, d):
            q = d - p
            x = t2
            for _ in range(p):
                x = t1.bracket(x)
            for _ in range(q - 1):
                x = t2.bracket(x)
            out[(p, q)] = x
    return out


def verify_commutant_generation(N):
    """Check that the lifted generators freely generate the bidegrees with
    p, q >= 1 up to weight N.

    For each such bidegree the Lyndon basis of the free algebra on the
    abstract z generators must map to a basis of the corresponding piece of
    the free Lie algebra on t1, t2.  Returns the per-bidegree dimensions;
    raises on any rank defect.
    """
    Z = z_alphabet(N)
    phis = commutant_generators(N)
    mapping = {"z%d,%d" % (p, q): phi for (p, q), phi in phis.items()}
    zbasis = lyndon_basis(Z, N)
    tbasis = lyndon_basis(TT_ALPHABET, N)
    dims = {}
    for d in range(2, N + 1):
        for p in range(1, d):
            q = d - p
            zwords = zbasis.get((p, q), [])
            twords = tbasis.get((p, q), [])
            index = {w: i for i, w in enumerate(twords)}
            rows = []
            for w in zwords:
                img = LiePolynomial(Z, {w: Fraction(1)}).substitute_lie(
                    TT_ALPHABET, mapping
                )
                row = [Fraction(0)] * len(twords)
                for u, c in img.coords.items():
                    row[index[u]] = c
                rows.append(row)
            if len(zwords) != len(twords):
                raise NotLieElement(
                    "bidegree (%d, %d): %d abstract basis words vs %d"
                    % (p, q, len(zwords), len(twords))
                )
            if twords:
                m = Matrix(rows)
                if m.rank() != len(twords):
                    raise NotLieElement(
                        "rank defect in bidegree (%d, %d)" % (p, q)
                    )
            dims[(p, q)] = len(twords)
    return dims


# ---------------------------------------------------------------------------
# table cache

_MEM_CACHE = {}

CACHE_ENV = "HODGEGAUGE_TABLE_CACHE"


def _serialize_table(table):
    doc = {}
    for (p, q), poly in table.items():
        doc["%d,%d" % (p, q)] = {
            ";".join(str(i) for i in w): str(c) for w, c in poly.coords.items()
        }
    return doc


def _deserialize_table(doc, alphabet):
    out = {}
    for key, coords in doc.items():
        p, q = (int(x) for x in key.split(","))
        cs = {}
        for wkey, cstr in coords.items():
            w = tuple(int(i) for i in wkey.split(";")) if wkey else ()
            cs[w] = Fraction(cstr)
        out[(p, q)] = LiePolynomial(alphabet, cs)
    return out


def generator_change_table(N):
    """The alpha-in-z table at truncation N, memoized and optionally
    persisted to the directory named by HODGEGAUGE_TABLE_CACHE."""
    if N in _MEM_CACHE:
        return _MEM_CACHE[N]
    cache_dir = os.environ.get(CACHE_ENV)
    path = None
    if cache_dir:
        path = os.path.join(cache_dir, "generator_change_%d.json" % N)
        if os.path.exists(path):
            with open(path) as fh:
                doc = json.load(fh)
            table = _deserialize_table(doc, z_alphabet(N))
            _MEM_CACHE[N] = table
            return table
    table = invert_generator_change(N)
    _MEM_CACHE[N] = table
    if path is not None:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(_serialize_table(table), fh, sort_keys=True)
        os.replace(tmp, path)
    return table
