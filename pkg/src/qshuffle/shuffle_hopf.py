"""The shuffle Hopf algebra T(X) and its Nichols quotient.

Elements are finite sums of tensor words in the basis of one braided space X.
The product is the quantum shuffle, the coproduct is deconcatenation and the
antipode is the signed half twist in each degree.
"""

import numpy as np

from .braidrep import (Bbin, Bfac, Report, antipode_halftwist, block_braiding,
                       compare, identity)
from .coeff import Cyclotomic, rref


def _zero_like(c):
    return c * 0


class HElement:
    """Finite sum of (coefficient, word); a word is a tuple of basis indices."""

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            c = clean[w] + c if w in clean else c
            if (c.is_zero() if isinstance(c, Cyclotomic) else c == 0):
                clean.pop(w, None)
            else:
                clean[w] = c
        self.terms = clean

    @classmethod
    def unit(cls):
        return cls({(): 1})

    @classmethod
    def word(cls, *letters):
        return cls({tuple(letters): 1})

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def homogeneous(self, n):
        return HElement({w: c for w, c in self.terms.items() if len(w) == n})

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t[w] + c if w in t else c
        return HElement(t)

    def __neg__(self):
        return HElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return HElement({w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HElement):
            return NotImplemented
        return (self - other).terms == {}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)%s" % (c, list(w)) for w, c in sorted(self.terms.items()))


class ShuffleAlgebra:
    """H(X) over the space labeled `label` of a MixedBraiding."""

    def __init__(self, braiding, label="X"):
        self.braiding = braiding
        self.label = label
        self.dim = braiding.dims[label]
        if (label, label) not in braiding.pairs:
            raise ValueError("space %r has no self braiding" % (label,))

    def spaces(self, n):
        return (self.label,) * n

    def op(self, elem, n):
        return self.braiding.evaluate(elem, self.spaces(n))

    def matrix(self, elem, n):
        """Matrix of a braid element on X^n (the single block)."""
        op = self.op(elem, n)
        sp = self.spaces(n)
        m = op.block(sp, sp)
        if m is None:
            size = self.dim ** n
            m = np.zeros((size, size), dtype=object)
        return m

    def _index(self, word):
        idx = 0
        for x in word:
            idx = idx * self.dim + x
        return idx

    def _word(self, idx, n):
        out = []
        for _ in range(n):
            out.append(idx % self.dim)
            idx //= self.dim
        return tuple(reversed(out))

    def apply(self, elem, x, n):
        """Apply a braid element to the degree-n part of x."""
        m = self.matrix(elem, n)
        out = {}
        for w, c in x.terms.items():
            if len(w) != n:
                continue
            col = self._index(w)
            for row in range(m.shape[0]):
                v = m[row, col]
                if not (v.is_zero() if isinstance(v, Cyclotomic) else v == 0):
                    key = self._word(row, n)
                    out[key] = out[key] + c * v if key in out else c * v
        return HElement(out)

    def shuffle_product(self, a, b):
        out = HElement()
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                n = len(wa) + len(wb)
                word = HElement({wa + wb: ca * cb})
                out = out + self.apply(Bbin(len(wa), len(wb)), word, n)
        return out

    def deconcat_coproduct(self, a):
        """Dict (left word, right word) -> coefficient."""
        out = {}
        for w, c in a.terms.items():
            for i in range(len(w) + 1):
                key = (w[:i], w[i:])
                out[key] = out[key] + c if key in out else c
        return out

    def antipode(self, a):
        out = HElement()
        for n in a.degrees():
            out = out + self.apply(antipode_halftwist(n), a.homogeneous(n), n)
        return out

    def counit(self, a):
        return a.terms.get((), 0)

    def nichols_component(self, n):
        return nichols_component(self, n)

    def hilbert_series(self, max_degree):
        return [nichols_component(self, n).rank for n in range(max_degree + 1)]


class NicholsData:
    """Degree-n part of the Nichols algebra as the image of the total symmetrizer."""

    def __init__(self, degree, rank, image_basis, projection, total_dim):
        self.degree = degree
        self.rank = rank
        self.image_basis = image_basis
        self.projection = projection
        self.total_dim = total_dim

    @property
    def nullity(self):
        return self.total_dim - self.rank


def nichols_component(alg, n):
    m = alg.matrix(Bfac(n), n) if n > 0 else np.array([[1]], dtype=object)
    rows, pivots = rref([list(r) for r in m.T])
    # rows of the rref of m^T span the column space of m
    image = [list(r) for r in rows]
    # projection: coordinates of m's columns in the image basis are m's columns
    # at the pivot positions of that basis
    proj = [[m[pc, col] for col in range(m.shape[1])] for pc in pivots]
    return NicholsData(n, len(pivots), image, proj, m.shape[1])


# ---------------------------------------------------------------------------
# Hopf axioms as braid-group identities

def bialgebra_lhs(r, s):
    total = None
    for i in range(r + 1):
        for j in range(s + 1):
            term = Bbin(i, j) * Bbin(r - i, s - j).shift(i + j) * block_braiding(r - i, j).shift(i)
            total = term if total is None else total + term
    return total.with_strands(max(r + s, 1)) if total.n < r + s else total


def check_bialgebra(braiding, r, s, label="X"):
    sp = (label,) * (r + s)
    lhs = braiding.evaluate(bialgebra_lhs(r, s), sp)
    rhs = braiding.evaluate(Bbin(r, s), sp).scale(r + s + 1)
    return compare("bialgebra", {"r": r, "s": s}, lhs, rhs)


def antipode_sums(r):
    left = None
    right = None
    for s in range(r + 1):
        a = Bbin(s, r - s) * antipode_halftwist(s)
        b = Bbin(s, r - s) * antipode_halftwist(r - s).shift(s)
        left = a if left is None else left + a
        right = b if right is None else right + b
    return left, right


def check_antipode(braiding, r, label="X"):
    sp = (label,) * r
    left, right = antipode_sums(r)
    zero = braiding.evaluate(identity(r), sp).scale(0)
    a = compare("antipode-left", {"r": r}, braiding.evaluate(left, sp), zero)
    b = compare("antipode-right", {"r": r}, braiding.evaluate(right, sp), zero)
    return Report("antipode", {"r": r}, a.passed and b.passed, a.witness or b.witness)
