"""Braid group algebra elements and their exact evaluation on labeled tensor spaces.

A braid word is a tuple of nonzero integers; i stands for Psi_i and -i for its
inverse.  Words are written as operator products, so the rightmost generator
acts first.  Strand positions are 1-based: Psi_i exchanges the tensor factors in
positions i and i+1.

Permutations are given as arrangements: perm[k] is the original strand that
ends up in position k+1.
"""

from fractions import Fraction
from math import gcd
from itertools import permutations
import numpy as np

from .coeff import Cyclotomic, rank, solve


class BraidingError(ValueError):
    """A braiding fails the braid equation, is singular, or is missing."""


def _coeff_is_zero(c):
    if isinstance(c, Cyclotomic):
        return c.is_zero()
    return c == 0


# ---------------------------------------------------------------------------
# formal combinations of braid words

class BraidElement:
    """Finite formal sum of braid words with exact coefficients."""

    __slots__ = ("n", "terms", "_key")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if word in clean:
                c = clean[word] + c
            if _coeff_is_zero(c):
                clean.pop(word, None)
            else:
                clean[word] = c
        for word in clean:
            for g in word:
                if g == 0 or abs(g) >= n:
                    raise ValueError("generator %d out of range for %d strands" % (g, n))
        self.terms = clean
        self._key = None

    @classmethod
    def identity(cls, n):
        return cls(n, {(): 1})

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def generator(cls, i, n=None):
        return cls(n if n is not None else abs(i) + 1, {(i,): 1})

    @classmethod
    def word(cls, gens, n):
        return cls(n, {tuple(gens): 1})

    def key(self):
        if self._key is None:
            self._key = (self.n, frozenset(self.terms.items()))
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if not isinstance(other, BraidElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def with_strands(self, n):
        if n < self.n:
            raise ValueError("cannot shrink strand count")
        return BraidElement(n, self.terms)

    def __add__(self, other):
        n = max(self.n, other.n)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return BraidElement(n, terms)

    def __neg__(self):
        return BraidElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BraidElement):
            n = max(self.n, other.n)
            terms = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    terms[w] = terms[w] + c if w in terms else c
            return BraidElement(n, terms)
        return BraidElement(self.n, {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, scalar):
        return BraidElement(self.n, {w: scalar * c for w, c in self.terms.items()})

    def shift(self, m):
        """Shift^m: add m to every generator index."""
        if m == 0:
            return self
        terms = {tuple(g + m if g > 0 else g - m for g in w): c
                 for w, c in self.terms.items()}
        return BraidElement(self.n + m, terms)

    def words(self):
        return sorted(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            name = "".join("P%d" % g if g > 0 else "P%d^-1" % -g for g in w) or "id"
            parts.append(name if c == 1 else "(%s)%s" % (c, name))
        return " + ".join(parts)


def shift(elem, m):
    return elem.shift(m)


def word_permutation(word, n):
    """Arrangement produced by applying the word to strands 1..n."""
    arr = list(range(1, n + 1))
    for g in reversed(word):
        i = abs(g) - 1
        arr[i], arr[i + 1] = arr[i + 1], arr[i]
    return tuple(arr)


def inversions(perm):
    n = len(perm)
    return sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])


def matsumoto_lift(perm):
    """Canonical reduced positive word realizing the arrangement perm."""
    perm = tuple(perm)
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..%d" % n)
    pos = {e: k for k, e in enumerate(perm)}
    applied = []
    for e in range(n - 1, 0, -1):
        k_e = sum(1 for f in range(e + 1, n + 1) if pos[f] < pos[e])
        applied.extend(range(e, e + k_e))
    return BraidElement(max(n, 1), {tuple(reversed(applied)): 1})


def shuffle_arrangements(parts):
    """Arrangements keeping the relative order inside each block, in a fixed order."""
    n = sum(parts)
    blocks = []
    start = 1
    for size in parts:
        blocks.append(list(range(start, start + size)))
        start += size
    labels = [b for b, size in enumerate(parts) for _ in range(size)]
    seen = sorted(set(permutations(labels))) if n <= 9 else _multiset_perms(labels)
    out = []
    for seq in seen:
        nxt = [0] * len(parts)
        arr = []
        for b in seq:
            arr.append(blocks[b][nxt[b]])
            nxt[b] += 1
        out.append(tuple(arr))
    return out


def _multiset_perms(labels):
    labels = sorted(labels)
    out = []

    def rec(prefix, remaining):
        if not remaining:
            out.append(tuple(prefix))
            return
        prev = None
        for i, x in enumerate(remaining):
            if x == prev:
                continue
            prev = x
            rec(prefix + [x], remaining[:i] + remaining[i + 1:])

    rec([], labels)
    return out


def shuffle_sum(parts):
    n = sum(parts)
    terms = {}
    for arr in shuffle_arrangements(tuple(parts)):
        (word,) = matsumoto_lift(arr).terms
        terms[word] = terms.get(word, 0) + 1
    return BraidElement(max(n, 1), terms)


_bbin_cache = {}


def braided_binomial(r, s):
    """Bbin{r,s}: sum of lifts of the (r,s)-shuffles."""
    key = (r, s)
    if key not in _bbin_cache:
        _bbin_cache[key] = shuffle_sum((r, s))
    return _bbin_cache[key]


def braided_factorial(n):
    """Bfac{n}: the total braided symmetrizer."""
    key = ("fac", n)
    if key not in _bbin_cache:
        _bbin_cache[key] = shuffle_sum((1,) * n)
    return _bbin_cache[key]


Bbin = braided_binomial
Bfac = braided_factorial


def block_braiding(m, n):
    """Psi_{m,n}: the first m strands travel past the next n strands."""
    word = []
    for k in range(1, m + 1):
        # (Psi_{n+k-1} ... Psi_k)
        word.extend(range(n + k - 1, k - 1, -1))
    return BraidElement(max(m + n, 1), {tuple(word): 1})


def antipode_halftwist(r):
    """A_r = (-1)^r Psi_1 (Psi_2 Psi_1) ... (Psi_{r-1} ... Psi_1)."""
    word = []
    for k in range(1, r):
        word.extend(range(k, 0, -1))
    return BraidElement(max(r, 1), {tuple(word): (-1) ** r})


def full_twist(r):
    a = antipode_halftwist(r)
    return a * a


def identity(n):
    return BraidElement.identity(max(n, 1))


# ---------------------------------------------------------------------------
# graded operators

def _entry_is_zero(x):
    if isinstance(x, Cyclotomic):
        return x.is_zero()
    return x == 0


class Operator:
    """Linear map between direct sums of labeled tensor products.

    blocks maps (domain labels, codomain labels) to an exact object matrix of
    shape (dim codomain, dim domain).  Absent blocks are zero.
    """

    def __init__(self, blocks=None):
        self.blocks = {}
        for k, m in (blocks or {}).items():
            self.blocks[k] = np.asarray(m, dtype=object)

    def copy(self):
        return Operator({k: m.copy() for k, m in self.blocks.items()})

    def domains(self):
        return sorted({d for d, _ in self.blocks}, key=repr)

    def codomains(self):
        return sorted({c for _, c in self.blocks}, key=repr)

    def block(self, dom, cod):
        return self.blocks.get((tuple(dom), tuple(cod)))

    def __add__(self, other):
        out = {k: m.copy() for k, m in self.blocks.items()}
        for k, m in other.blocks.items():
            out[k] = out[k] + m if k in out else m.copy()
        return Operator(out)

    def __neg__(self):
        return Operator({k: -m for k, m in self.blocks.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Operator({k: m * c for k, m in self.blocks.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        """Composition: self after other."""
        out = {}
        by_dom = {}
        for (d, c), m in self.blocks.items():
            by_dom.setdefault(d, []).append((c, m))
        for (d, mid), m2 in other.blocks.items():
            for c, m1 in by_dom.get(mid, []):
                prod = _exact_dot(m1, m2)
                key = (d, c)
                out[key] = out[key] + prod if key in out else prod
        return Operator(out)

    def restrict(self, dom):
        dom = tuple(dom)
        return Operator({k: m for k, m in self.blocks.items() if k[0] == dom})

    def project(self, cods):
        cods = {tuple(c) for c in cods}
        return Operator({k: m for k, m in self.blocks.items() if k[1] in cods})

    def relabel(self, dom_map=None, cod_map=None):
        out = {}
        for (d, c), m in self.blocks.items():
            nd = dom_map(d) if dom_map else d
            nc = cod_map(c) if cod_map else c
            key = (nd, nc)
            out[key] = out[key] + m if key in out else m
        return Operator(out)

    def is_zero(self):
        return all(_block_is_zero(m) for m in self.blocks.values())

    def nonzero_blocks(self):
        return {k: m for k, m in self.blocks.items() if not _block_is_zero(m)}

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return (self - other).is_zero()

    def first_difference(self, other):
        """(block key, row, col, lhs, rhs) of the first mismatching entry, or None."""
        keys = sorted(set(self.blocks) | set(other.blocks), key=repr)
        for k in keys:
            a = self.blocks.get(k)
            b = other.blocks.get(k)
            shape = (a if a is not None else b).shape
            if a is None:
                a = np.zeros(shape, dtype=object)
            if b is None:
                b = np.zeros(shape, dtype=object)
            pos = _first_nonzero(a - b)
            if pos is not None:
                r, c = pos
                return k, r, c, a[r, c], b[r, c]
        return None

    def scalar(self):
        """Single entry of a single 1x1 block (useful for one-dimensional spaces)."""
        nz = self.nonzero_blocks()
        if not nz:
            return 0
        if len(nz) != 1:
            raise ValueError("operator has several nonzero blocks")
        (m,) = nz.values()
        if m.shape != (1, 1):
            raise ValueError("block is not 1x1")
        return m[0, 0]

    def __repr__(self):
        parts = []
        for (d, c), m in sorted(self.blocks.items(), key=repr):
            parts.append("%s->%s %s" % (d, c, m.shape))
        return "Operator(%s)" % ", ".join(parts)


def _block_is_zero(m):
    return _first_nonzero(m) is None


def _first_nonzero(m):
    """(row, col) of the first nonzero entry in row-major order, or None."""
    if m.size == 0:
        return None
    iv = _int_view(m)
    if iv is not None:
        hits = np.flatnonzero(iv)
        return None if hits.size == 0 else tuple(int(x) for x in np.unravel_index(hits[0], m.shape))
    for idx, x in np.ndenumerate(m):
        if not _entry_is_zero(x):
            return idx
    return None


def _int_view(m):
    """int64 copy of an object array of Python ints, or None."""
    try:
        v = m.astype(np.int64)
    except (TypeError, ValueError, OverflowError):
        return None
    if not (v.astype(object) == m).all():
        return None
    if not all(type(x) is int or isinstance(x, np.integer) for x in m.flat[:64]):
        return None
    return v


def _exact_dot(a, b):
    """Matrix product of exact object arrays, through machine integers when that is exact.

    Products with small enough bounds go through float64 BLAS, where every
    partial sum is an integer below 2**53 and hence exact.
    """
    if a.size and b.size:
        ia, ib = _int_view(a), _int_view(b)
        if ia is not None and ib is not None:
            bound = int(np.abs(ia).max()) * int(np.abs(ib).max()) * a.shape[1]
            if bound < 2 ** 52:
                prod = np.dot(ia.astype(np.float64), ib.astype(np.float64))
                return np.rint(prod).astype(np.int64).astype(object)
            if bound < _INT64_LIMIT:
                return np.dot(ia, ib).astype(object)
    return np.dot(a, b)


def identity_operator(labels, dims):
    labels = tuple(labels)
    d = int(np.prod([dims[l] for l in labels])) if labels else 1
    m = np.zeros((d, d), dtype=object)
    for i in range(d):
        m[i, i] = 1
    return Operator({(labels, labels): m})


# ---------------------------------------------------------------------------
# braided spaces

class MixedBraiding:
    """Several labeled spaces with braidings between declared ordered pairs.

    spaces: dict label -> dimension.
    pairs: dict (a, b) -> braiding a(x)b -> b(x)a, given either as
        ("phase", N, E) meaning x_i (x) y_k -> zeta_N**E[i][k] y_k (x) x_i, or
        ("matrix", M) with M of shape (db*da, da*db); basis of a(x)b is indexed
        by i*db + k.
    """

    def __init__(self, spaces, pairs, validate=True):
        self.dims = dict(spaces)
        self.pairs = {}
        self.order = None
        for (a, b), spec in pairs.items():
            if a not in self.dims or b not in self.dims:
                raise BraidingError("pair %r uses an undeclared space" % ((a, b),))
            kind = spec[0]
            da, db = self.dims[a], self.dims[b]
            if kind == "phase":
                n = int(spec[1])
                e = np.asarray(spec[2], dtype=np.int64).reshape(da, db) % n
                if self.order is None:
                    self.order = n
                elif self.order != n:
                    raise BraidingError("phase braidings with different orders")
                self.pairs[(a, b)] = ("phase", n, e)
            elif kind == "matrix":
                m = np.array(spec[1], dtype=object).reshape(db * da, da * db)
                self.pairs[(a, b)] = ("matrix", m)
            else:
                raise BraidingError("unknown braiding kind %r" % kind)
        self._dense = {}
        self._dense_inv = {}
        self._cache = {}
        if validate:
            self.validate()

    # -- data access --------------------------------------------------------

    def all_phase(self, labels=None):
        pairs = self.pairs.values() if labels is None else [
            self.pairs[(a, b)] for a in labels for b in labels if (a, b) in self.pairs]
        return all(p[0] == "phase" for p in pairs)

    def dense(self, a, b):
        """Matrix of Psi: a(x)b -> b(x)a."""
        key = (a, b)
        if key not in self._dense:
            if key not in self.pairs:
                raise BraidingError("missing braiding %r -> %r" % (a, b))
            spec = self.pairs[key]
            if spec[0] == "matrix":
                self._dense[key] = spec[1]
            else:
                n, e = spec[1], spec[2]
                da, db = self.dims[a], self.dims[b]
                m = np.zeros((db * da, da * db), dtype=object)
                for i in range(da):
                    for k in range(db):
                        m[k * da + i, i * db + k] = Cyclotomic.zeta(n, int(e[i, k]))
                for idx in range(m.size):
                    if m.flat[idx] == 0 and not isinstance(m.flat[idx], Cyclotomic):
                        m.flat[idx] = Cyclotomic.const(n, 0)
                self._dense[key] = m
        return self._dense[key]

    def dense_inverse(self, a, b):
        """Matrix of Psi^{-1}: b(x)a -> a(x)b, the inverse of dense(a, b)."""
        key = (a, b)
        if key not in self._dense_inv:
            m = self.dense(a, b)
            size = m.shape[0]
            ident = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
            sol = solve([list(row) for row in m], ident)
            self._dense_inv[key] = np.array(sol, dtype=object)
        return self._dense_inv[key]

    def validate(self):
        labels = sorted(self.dims, key=repr)
        for a, b in self.pairs:
            m = self.dense(a, b)
            if rank([list(r) for r in m]) != m.shape[0]:
                raise BraidingError("braiding %r -> %r is not invertible" % (a, b))
        for a in labels:
            for b in labels:
                for c in labels:
                    need = [(a, b), (b, c), (a, c)]
                    if not all(k in self.pairs for k in need):
                        continue
                    lhs = self.evaluate(BraidElement(3, {(1, 2, 1): 1}), (a, b, c), cache=False)
                    rhs = self.evaluate(BraidElement(3, {(2, 1, 2): 1}), (a, b, c), cache=False)
                    if lhs != rhs:
                        raise BraidingError("braid equation fails on %r" % ((a, b, c),))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, elem, spaces, cache=True):
        """Exact operator of elem on the tensor product of the given spaces."""
        spaces = tuple(spaces)
        top = max((abs(g) for w in elem.terms for g in w), default=0)
        if top >= max(len(spaces), 1):
            raise ValueError("word uses Psi_%d but only %d spaces given" % (top, len(spaces)))
        for s in spaces:
            if s not in self.dims:
                raise BraidingError("undeclared space %r" % (s,))
        key = (elem.key(), spaces)
        if cache and key in self._cache:
            return self._cache[key]
        if self.order is not None and self.all_phase():
            op = _eval_phase(self, _build_trie(elem), spaces)
        else:
            op = self._eval_rational_scaled(elem, spaces)
            if op is None:
                op = _eval_dense(self, _build_trie(elem), spaces)
        if cache:
            self._cache[key] = op
        return op

    def identity(self, spaces):
        return identity_operator(spaces, self.dims)

    def _eval_rational_scaled(self, elem, spaces):
        """Evaluate with rational matrices by clearing denominators.

        Every positive generator is scaled by D and every inverse by E, so a
        word with a positive and b inverse letters picks up D**a * E**b.  The
        coefficients are rescaled so that the integer computation can run in
        int64, and the result is divided back at the end.  Returns None when
        the matrices are not all rational or already integral.
        """
        mats = [self.dense(a, b) for (a, b) in self.pairs]
        if not all(isinstance(x, (int, Fraction)) for m in mats for x in m.flat):
            return None
        if all(isinstance(x, int) or x.denominator == 1 for m in mats for x in m.flat) \
                and not any(g < 0 for w in elem.terms for g in w):
            return None
        if not all(isinstance(c, (int, Fraction)) for c in elem.terms.values()):
            return None

        def lcm_den(ms):
            d = 1
            for m in ms:
                for x in m.flat:
                    den = Fraction(x).denominator
                    d = d * den // gcd(d, den)
            return d

        dpos = lcm_den(mats)
        has_neg = any(g < 0 for w in elem.terms for g in w)
        dneg = lcm_den([self.dense_inverse(a, b) for (a, b) in self.pairs]) if has_neg else 1
        pmax = max((sum(1 for g in w if g > 0) for w in elem.terms), default=0)
        nmax = max((sum(1 for g in w if g < 0) for w in elem.terms), default=0)
        terms = {}
        for w, c in elem.terms.items():
            a = sum(1 for g in w if g > 0)
            b = len(w) - a
            terms[w] = Fraction(c) * dpos ** (pmax - a) * dneg ** (nmax - b)
        den_c = 1
        for c in terms.values():
            den_c = den_c * c.denominator // gcd(den_c, c.denominator)
        terms = {w: int(c * den_c) for w, c in terms.items()}
        scaled = MixedBraiding(self.dims, {}, validate=False)
        for (a, b), spec in self.pairs.items():
            m = np.array([[int(Fraction(x) * dpos) for x in row] for row in self.dense(a, b)],
                         dtype=object)
            scaled.pairs[(a, b)] = ("matrix", m)
            if has_neg:
                inv = self.dense_inverse(a, b)
                scaled._dense_inv[(a, b)] = np.array(
                    [[int(Fraction(x) * dneg) for x in row] for row in inv], dtype=object)
        op = _eval_dense(scaled, _build_trie(BraidElement(elem.n, terms)), spaces)
        total = Fraction(den_c) * dpos ** pmax * dneg ** nmax
        out = {}
        for k, m in op.blocks.items():
            mm = np.empty(m.shape, dtype=object)
            for idx, x in np.ndenumerate(m):
                v = Fraction(int(x), 1) / total
                mm[idx] = v.numerator if v.denominator == 1 else v
            out[k] = mm
        return Operator(out)


def _build_trie(elem):
    root = [{}, None]
    for word, c in elem.terms.items():
        node = root
        for g in reversed(word):
            nxt = node[0].get(g)
            if nxt is None:
                nxt = [{}, None]
                node[0][g] = nxt
            node = nxt
        node[1] = c if node[1] is None else node[1] + c
    return root


def _eval_phase(br, trie, spaces):
    n_ord = br.order
    dims = [br.dims[s] for s in spaces]
    total = int(np.prod(dims)) if dims else 1
    if dims:
        idx0 = np.array(np.unravel_index(np.arange(total), dims), dtype=np.int64)
    else:
        idx0 = np.zeros((0, 1), dtype=np.int64)
    rows = np.arange(total)
    hist = {}
    extra = {}

    def visit(node, labels, idx, exps):
        children, coeff = node
        if coeff is not None:
            cod_dims = [br.dims[l] for l in labels]
            cod = np.ravel_multi_index(idx, cod_dims) if labels else np.zeros(total, dtype=np.int64)
            key = tuple(labels)
            if isinstance(coeff, int):
                if key not in hist:
                    hist[key] = np.zeros((int(np.prod(cod_dims)) if cod_dims else 1, total, n_ord),
                                         dtype=np.int64)
                np.add.at(hist[key], (cod, rows, exps % n_ord), coeff)
            else:
                acc = extra.setdefault(key, {})
                for r in range(total):
                    k = (int(cod[r]), r)
                    val = coeff * Cyclotomic.zeta(n_ord, int(exps[r]))
                    acc[k] = acc[k] + val if k in acc else val
        for g, child in children.items():
            i = abs(g) - 1
            a, b = labels[i], labels[i + 1]
            if g > 0:
                e = br.pairs.get((a, b))
                if e is None:
                    raise BraidingError("missing braiding %r -> %r" % (a, b))
                new_exps = exps + e[2][idx[i], idx[i + 1]]
            else:
                e = br.pairs.get((b, a))
                if e is None:
                    raise BraidingError("missing braiding %r -> %r" % (b, a))
                new_exps = exps - e[2][idx[i + 1], idx[i]]
            new_idx = idx.copy()
            new_idx[[i, i + 1]] = idx[[i + 1, i]]
            new_labels = list(labels)
            new_labels[i], new_labels[i + 1] = b, a
            visit(child, new_labels, new_idx, new_exps)

    visit(trie, list(spaces), idx0, np.zeros(total, dtype=np.int64))
    blocks = {}
    zero = Cyclotomic.const(n_ord, 0)
    for key in set(hist) | set(extra):
        cod_dim = int(np.prod([br.dims[l] for l in key])) if key else 1
        m = np.empty((cod_dim, total), dtype=object)
        m.fill(zero)
        if key in hist:
            h = hist[key]
            nz = np.argwhere(h.any(axis=2))
            for r, c in nz:
                m[r, c] = Cyclotomic.from_exponent_counts(n_ord, h[r, c])
        for (r, c), v in extra.get(key, {}).items():
            m[r, c] = m[r, c] + v
        blocks[(tuple(spaces), key)] = m
    return Operator(blocks)


_INT64_LIMIT = 2 ** 62


class _Overflow(Exception):
    pass


def _integral(m):
    return all(isinstance(x, (int, np.integer)) for x in m.flat)


def _eval_dense(br, trie, spaces):
    """Dense evaluation; tries exact int64 first and falls back to Python objects."""
    dag = _Dag(trie)
    try:
        return _eval_dense_with(br, dag, spaces, np.int64)
    except _Overflow:
        return _eval_dense_with(br, dag, spaces, object)


class _Dag:
    """Hash-consed trie: structurally equal subtrees become one shared node."""

    def __init__(self, trie):
        self.nodes = []
        self.index = {}
        self.root = self._intern(trie)
        self.indegree = [0] * len(self.nodes)
        for coeff, kids in self.nodes:
            for _, c in kids:
                self.indegree[c] += 1

    def _intern(self, node):
        children, coeff = node
        kids = tuple(sorted((g, self._intern(ch)) for g, ch in children.items()))
        key = (coeff, kids)
        if key not in self.index:
            self.index[key] = len(self.nodes)
            self.nodes.append(key)
        return self.index[key]


def _eval_dense_with(br, dag, spaces, dtype):
    dims_of = br.dims
    n = len(spaces)
    as_int = dtype is not object
    reshaped = {}
    growth = {}
    memo = {}

    def gen_tensor(g, a, b):
        rk = (g > 0, a, b)
        if rk not in reshaped:
            m = br.dense(a, b) if g > 0 else br.dense_inverse(b, a)
            shape = (dims_of[b], dims_of[a], dims_of[a], dims_of[b])
            if as_int:
                if not _integral(m):
                    raise _Overflow()
                arr = np.array([[int(x) for x in row] for row in m], dtype=np.int64)
                growth[rk] = max(1, int(np.abs(arr).sum(axis=0).max()))
            else:
                arr = np.array(m, dtype=object)
            reshaped[rk] = arr.reshape(shape)
        return reshaped[rk], growth.get(rk, 1)

    def ident(labels):
        d = [dims_of[l] for l in labels]
        size = int(np.prod(d)) if d else 1
        eye = np.zeros((size, size), dtype=dtype)
        for k in range(size):
            eye[k, k] = 1
        return eye.reshape(d + d)

    def bound_of(arr):
        return int(np.abs(arr).max()) if arr.size else 0

    def visit(nid, labels):
        # returns {codomain labels: (tensor with codomain legs then current legs, bound)}
        key = (nid, labels)
        if key in memo:
            return memo[key]
        coeff, kids = dag.nodes[nid]
        out = {}
        if coeff is not None:
            if as_int and not isinstance(coeff, int):
                raise _Overflow()
            out[labels] = (ident(labels) * coeff, abs(coeff) if as_int else 0)
        for g, child in kids:
            i = abs(g) - 1
            a, b = labels[i], labels[i + 1]
            r4, grow = gen_tensor(g, a, b)
            nl = list(labels)
            nl[i], nl[i + 1] = b, a
            for cod, (ten, bnd) in visit(child, tuple(nl)).items():
                if as_int and bnd * grow >= _INT64_LIMIT:
                    raise _Overflow()
                new = np.tensordot(ten, r4, axes=([n + i, n + i + 1], [0, 1]))
                new = np.moveaxis(new, [2 * n - 2, 2 * n - 1], [n + i, n + i + 1])
                nb = bound_of(new) if as_int else 0
                if cod in out:
                    old, ob = out[cod]
                    if as_int and ob + nb >= _INT64_LIMIT:
                        raise _Overflow()
                    s = old + new
                    out[cod] = (s, bound_of(s) if as_int else 0)
                else:
                    out[cod] = (new, nb)
        if dag.indegree[nid] > 1:
            memo[key] = out
        return out

    total = int(np.prod([dims_of[s] for s in spaces])) if spaces else 1
    blocks = {}
    for cod, (ten, _) in visit(dag.root, tuple(spaces)).items():
        cd = int(np.prod([dims_of[l] for l in cod])) if cod else 1
        m = ten.reshape(cd, total)
        if as_int:
            m = np.array([[int(x) for x in row] for row in m], dtype=object).reshape(m.shape)
        blocks[(tuple(spaces), cod)] = m
    return Operator(blocks)


def evaluate(elem, spaces, braidings):
    return braidings.evaluate(elem, spaces)


# ---------------------------------------------------------------------------
# constructors for braided spaces

def diagonal_braiding(order, labels, exponents):
    """One space 'X' with basis labels; Psi(x_i (x) x_j) = zeta**E[i][j] x_j (x) x_i."""
    d = len(labels)
    e = np.array(exponents, dtype=np.int64).reshape(d, d)
    return MixedBraiding({"X": d}, {("X", "X"): ("phase", order, e)})


def from_group_data(order, group_elements, characters, labels=None):
    """Diagonal braiding q_ij = chi_j(g_i) on a cyclic group of order N.

    g_i is an integer a_i, chi_j is an integer b_j, and chi_j(g_i) = zeta**(a_i*b_j).
    """
    d = len(group_elements)
    e = [[group_elements[i] * characters[j] for j in range(d)] for i in range(d)]
    return diagonal_braiding(order, labels or list(range(d)), e)


# Integral solution of the braid equation on a 2-dim space with det -1:
# Psi = P R with a Jordanian R.  Used as the generic non-diagonal test case.
JORDANIAN = [[1, -1, 1, 1],
             [0, 0, 1, 1],
             [0, 1, 0, -1],
             [0, 0, 0, 1]]

# A second non-diagonal solution (Hecke type, rational entries).
HECKE = [[2, 0, 0, 0],
         [0, Fraction(3, 2), 1, 0],
         [0, 1, 0, 0],
         [0, 0, 0, 2]]


def matrix_braiding(matrix, labels=("X",), extra_labels=()):
    """Braiding on a d-dim space X; extra labels are copies of X braided by the same matrix."""
    m = np.array(matrix, dtype=object)
    d = int(round(m.shape[0] ** 0.5))
    names = tuple(labels) + tuple(extra_labels)
    spaces = {l: d for l in names}
    pairs = {(a, b): ("matrix", m) for a in names for b in names}
    return MixedBraiding(spaces, pairs)


def jordanian_plane(extra_labels=("Y", "Z")):
    """X and copies Y, Z of the 2-dim Jordanian braided plane."""
    return matrix_braiding(JORDANIAN, ("X",), extra_labels)


def load_braiding(data):
    """Build a one-space braiding from the JSON form used by the command line."""
    if "diagonal" in data:
        diag = data["diagonal"]
        labels = list(diag["labels"])
        d = len(labels)
        phases = diag["phases"]
        vals = {}
        order = None
        for key, v in phases.items():
            i, j = [labels.index(x.strip()) if x.strip() in labels else int(x) for x in key.split(",")]
            if isinstance(v, dict):
                v = Cyclotomic.from_json(v)
                order = v.order if order is None else order
            vals[(i, j)] = v
        if len(vals) != d * d:
            raise ValueError("diagonal braiding needs a phase for every ordered pair")
        exps = {}
        if order is not None and all(isinstance(v, Cyclotomic) for v in vals.values()):
            for k, v in vals.items():
                e = v.phase_exponent()
                if e is None:
                    break
                exps[k] = e
        if len(exps) == d * d:
            e = [[exps[(i, j)] for j in range(d)] for i in range(d)]
            return MixedBraiding({"X": d}, {("X", "X"): ("phase", order, e)})
        m = np.zeros((d * d, d * d), dtype=object)
        for (i, j), v in vals.items():
            m[j * d + i, i * d + j] = v if isinstance(v, Cyclotomic) else Fraction(v)
        return MixedBraiding({"X": d}, {("X", "X"): ("matrix", m)})
    if "matrix" not in data:
        raise ValueError("braiding file needs 'matrix' or 'diagonal'")
    d = int(data["dim"])
    field = data.get("field", "Q")
    rows = data["matrix"]
    if len(rows) != d * d or any(len(r) != d * d for r in rows):
        raise ValueError("matrix must be %d x %d" % (d * d, d * d))
    if field == "Q":
        m = [[Fraction(x) if not isinstance(x, dict) else None for x in r] for r in rows]
        m = [[int(x) if x.denominator == 1 else x for x in r] for r in m]
    else:
        order = int(field["cyclotomic"])
        m = [[Cyclotomic.from_json(x) if isinstance(x, dict) else Cyclotomic.const(order, Fraction(x))
              for x in r] for r in rows]
    return matrix_braiding(m)


# ---------------------------------------------------------------------------
# identity checks shared by the higher modules

class Report:
    """Outcome of one exact operator identity."""

    def __init__(self, name, params, passed, witness=None, cases=1):
        self.name = name
        self.params = dict(params)
        self.passed = bool(passed)
        self.witness = witness
        self.cases = cases

    def to_json(self):
        out = {"identity": self.name, "params": self.params, "passed": self.passed,
               "cases": self.cases}
        if self.witness is not None:
            out["witness"] = _json_witness(self.witness)
        return out

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return "Report(%s %s %s)" % (self.name, self.params, "pass" if self.passed else "FAIL")


def _json_witness(w):
    if isinstance(w, tuple) and len(w) == 5:
        key, r, c, x, y = w
        return {"block": repr(key), "row": int(r), "col": int(c), "lhs": repr(x), "rhs": repr(y)}
    return repr(w)


def compare(name, params, lhs, rhs):
    """Report comparing two operators exactly."""
    diff = lhs.first_difference(rhs)
    return Report(name, params, diff is None, diff)


# ---------------------------------------------------------------------------
# shuffle identities

def _on(br, elem, n, label="X"):
    """Operator of elem padded to n strands on X^n."""
    n = max(n, 1)
    return br.evaluate(elem.with_strands(n) if elem.n < n else elem, (label,) * n)


def _prod(br, n, *elems, label="X"):
    """Composite of several elements, leftmost applied last."""
    out = _on(br, elems[-1], n, label)
    for e in reversed(elems[:-1]):
        out = _on(br, e, n, label) @ out
    return out


def check_sh_s(br, r, s, label="X"):
    """Bbin{r,s+1} = Bbin{r,s} + Bbin{r-1,s+1} Shift^{r-1} Psi_{1,s+1}, for r >= 1."""
    n = r + s + 1
    lhs = _on(br, Bbin(r, s + 1), n, label)
    rhs = _on(br, Bbin(r, s), n, label) + _prod(br, n, Bbin(r - 1, s + 1),
                                                block_braiding(1, s + 1).shift(r - 1), label=label)
    return compare("Sh(s+1)", {"r": r, "s": s}, lhs, rhs)


def check_sh_r(br, r, s, label="X"):
    """Bbin{r+1,s} = Shift Bbin{r,s} + Shift Bbin{r+1,s-1} Psi_{r+1,1}, for s >= 1."""
    n = r + s + 1
    lhs = _on(br, Bbin(r + 1, s), n, label)
    rhs = _on(br, Bbin(r, s).shift(1), n, label) + _prod(br, n, Bbin(r + 1, s - 1).shift(1),
                                                         block_braiding(r + 1, 1), label=label)
    return compare("Sh(r+1)", {"r": r, "s": s}, lhs, rhs)


def check_bb(br, m, n, k, label="X"):
    """Bbin{m+n,k} Bbin{m,n} = Bbin{m,n+k} Shift^m Bbin{n,k}."""
    size = m + n + k
    lhs = _prod(br, size, Bbin(m + n, k), Bbin(m, n), label=label)
    rhs = _prod(br, size, Bbin(m, n + k), Bbin(n, k).shift(m), label=label)
    return compare("BB", {"m": m, "n": n, "k": k}, lhs, rhs)


def check_factorial(br, m, n, label="X"):
    """Bfac{m+n} = Bbin{m,n} Bfac{m} Shift^m Bfac{n}."""
    size = m + n
    lhs = _on(br, Bfac(size), size, label)
    rhs = _prod(br, size, Bbin(m, n), Bfac(m), Bfac(n).shift(m), label=label)
    return compare("factorial", {"m": m, "n": n}, lhs, rhs)


def check_summed_split(br, r, s, t, label="X"):
    """Sum over i of Bbin{i,s} Shift^{i+s+1} Bbin{r-i,t-1} Shift^i Psi_{r-i,s+1} = Bbin{r,s+t}, t >= 1."""
    size = r + s + t
    total = None
    for i in range(r + 1):
        term = _prod(br, size, Bbin(i, s), Bbin(r - i, t - 1).shift(i + s + 1),
                     block_braiding(r - i, s + 1).shift(i), label=label)
        total = term if total is None else total + term
    return compare("summed-split", {"r": r, "s": s, "t": t}, total, _on(br, Bbin(r, s + t), size, label))


def check_summed_single(br, s, t, label="X"):
    """Sum over j of Bbin{s,j} Shift^s Psi_{1,j} = Bbin{s+1,t}."""
    size = s + t + 1
    total = None
    for j in range(t + 1):
        term = _prod(br, size, Bbin(s, j), block_braiding(1, j).shift(s), label=label)
        total = term if total is None else total + term
    return compare("summed-single", {"s": s, "t": t}, total, _on(br, Bbin(s + 1, t), size, label))


def shuffle_identity_reports(br, max_index=4, max_bb=3, max_factorial=None, max_summed=None, label="X",
                             operator_strands=None):
    """All shuffle identities with indices up to the given bounds.

    The factorial identity runs over m, n <= max_index with m + n <= max_factorial
    (no extra bound by default); summed identities default to max_index.

    Summed split cases on more than operator_strands strands are certified in
    the braid group algebra instead of being evaluated on the braiding.
    """
    out = []
    for r in range(1, max_index + 1):
        for s in range(max_index + 1):
            out.append(check_sh_s(br, r, s, label))
    for r in range(max_index + 1):
        for s in range(1, max_index + 1):
            out.append(check_sh_r(br, r, s, label))
    for m in range(max_bb + 1):
        for n in range(max_bb + 1):
            for k in range(max_bb + 1):
                out.append(check_bb(br, m, n, k, label))
    if max_factorial is None:
        max_factorial = 2 * max_index
    if max_summed is None:
        max_summed = max_index
    for m in range(max_index + 1):
        for n in range(max_index + 1):
            if m + n <= max_factorial:
                out.append(check_factorial(br, m, n, label))
    for r in range(max_summed + 1):
        for s in range(max_summed + 1):
            for t in range(1, max_summed + 1):
                if operator_strands is not None and r + s + t > operator_strands:
                    out.append(certify_summed_split(r, s, t))
                else:
                    out.append(check_summed_split(br, r, s, t, label))
    for s in range(max_summed + 1):
        for t in range(max_summed + 1):
            out.append(check_summed_single(br, s, t, label))
    return out


# ---------------------------------------------------------------------------
# identities certified inside the braid group algebra


def _reduced_sum(products, n):
    """Sum of products of positive elements as {permutation: coeff}, or None.

    Each product word that is positive and reduced is, by Matsumoto's theorem,
    the lift of its permutation; otherwise no certificate is produced.
    """
    out = {}
    for factors in products:
        partial = {(): 1}
        for f in factors:
            nxt = {}
            for w, c in partial.items():
                for v, d in f.terms.items():
                    key = w + v
                    nxt[key] = nxt.get(key, 0) + c * d
            partial = nxt
        for w, c in partial.items():
            if any(g < 0 for g in w):
                return None
            perm = tuple(word_permutation(w, n))
            if inversions(perm) != len(w):
                return None
            out[perm] = out.get(perm, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def certify_equal(lhs_products, rhs_products, n):
    """True/False when both sides reduce to lifts of permutations, None when they do not."""
    a, b = _reduced_sum(lhs_products, n), _reduced_sum(rhs_products, n)
    if a is None or b is None:
        return None
    return a == b


def certify_summed_split(r, s, t):
    """The summed split identity as an equality in the braid group algebra (any braiding)."""
    size = r + s + t
    lhs = [[Bbin(i, s), Bbin(r - i, t - 1).shift(i + s + 1), block_braiding(r - i, s + 1).shift(i)]
           for i in range(r + 1)]
    rhs = [[Bbin(r, s + t)]]
    ok = certify_equal(lhs, rhs, size)
    return Report("summed-split-group-algebra", {"r": r, "s": s, "t": t}, bool(ok),
                  None if ok else "no reduced-word certificate" if ok is None else "sums differ")
