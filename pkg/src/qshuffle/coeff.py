"""Exact arithmetic in cyclotomic fields and q-combinatorics at roots of unity.

A Cyclotomic is a polynomial in a primitive N-th root of unity zeta, reduced
modulo the N-th cyclotomic polynomial.  It is stored as a tuple of integer
numerators over one positive common denominator, so two elements are equal
exactly when their stored data are equal.

For the rank-one computations the order is N = 4p, q = zeta**2, and every
half-integer power of q is an integral power of zeta.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd
import json


# ---------------------------------------------------------------------------
# integer polynomials (lists of coefficients, lowest degree first)

def _poly_trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(a, b):
    """Quotient and remainder of a by the monic integer polynomial b."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], _poly_trim(a)
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            quot[k - db] = c
            for i in range(db + 1):
                a[k - db + i] -= c * b[i]
    return _poly_trim(quot), _poly_trim(a[:db] or [0])


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, lowest degree first.

    Computed by dividing x^n - 1 by Phi_d for all proper divisors d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly, rem = _poly_divmod_monic(poly, list(cyclotomic_polynomial(d)))
            assert rem == [0]
    return tuple(poly)


def euler_phi(n):
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n):
    """Row k holds the reduced coefficients of zeta**k for 0 <= k < n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by zeta: shift up, then fold the top coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _normalize(num, den):
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = den
    for x in num:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g != 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


class Cyclotomic:
    """Element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order, num, den=1):
        deg = euler_phi(order)
        num = list(num)
        if len(num) > deg:
            raise ValueError("coefficient vector longer than phi(N); use from_poly")
        num = num + [0] * (deg - len(num))
        self.order = order
        self.num, self.den = _normalize(num, den)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, order, num, den):
        obj = object.__new__(cls)
        obj.order = order
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_poly(cls, order, coeffs):
        """Reduce a polynomial in zeta with rational coefficients."""
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        table = _power_table(order)
        deg = euler_phi(order)
        out = [0] * deg
        for k, c in enumerate(ints):
            if c:
                row = table[k % order]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return cls(order, out, den)

    @classmethod
    def from_exponent_counts(cls, order, counts):
        """Sum of counts[k] * zeta**k; counts is any integer sequence of length order."""
        table = _power_table(order)
        deg = euler_phi(order)
        out = [0] * deg
        for k, c in enumerate(counts):
            c = int(c)
            if c:
                row = table[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        num, den = _normalize(out, 1)
        return cls._raw(order, num, den)

    @classmethod
    def zeta(cls, order, k=1):
        num = _power_table(order)[k % order]
        return cls._raw(order, num, 1)

    @classmethod
    def const(cls, order, value):
        value = Fraction(value)
        deg = euler_phi(order)
        num = [0] * deg
        num[0] = value.numerator
        return cls._raw(order, tuple(num), value.denominator)

    # -- helpers ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError("order mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.const(self.order, other)
        return NotImplemented

    @property
    def coeffs(self):
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational element")
        return Fraction(self.num[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            num = [a + b for a, b in zip(self.num, other.num)]
            return Cyclotomic(self.order, num, d1)
        num = [a * d2 + b * d1 for a, b in zip(self.num, other.num)]
        return Cyclotomic(self.order, num, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyclotomic(self.order, [x * other.numerator for x in self.num],
                              self.den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.order
        deg = len(self.num)
        conv = [0] * (2 * deg - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:deg])
        table = _power_table(n)
        for k in range(deg, len(conv)):
            c = conv[k]
            if c:
                row = table[k % n]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclotomic(n, out, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        deg = len(self.num)
        if self.is_rational():
            return Cyclotomic.const(self.order, 1 / self.rational_value())
        # columns of the multiplication-by-self matrix are self * zeta^k
        cols = [(self * Cyclotomic.zeta(self.order, k)).coeffs for k in range(deg)]
        mat = [[cols[k][i] for k in range(deg)] for i in range(deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        sol = solve(mat, [[x] for x in rhs])
        return Cyclotomic.from_poly(self.order, [row[0] for row in sol])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.const(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError("order mismatch")
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.order, self.num, self.den))
        return self._hash

    # -- output -------------------------------------------------------------

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                if k == 0:
                    terms.append(str(c))
                elif c == 1:
                    terms.append("z^%d" % k)
                else:
                    terms.append("%s*z^%d" % (c, k))
        body = " + ".join(terms) if terms else "0"
        return "Cyclotomic[%d](%s)" % (self.order, body)

    def phase_exponent(self):
        """k with self == zeta**k, or None if self is not a pure root of unity."""
        table = _power_table(self.order)
        if self.den != 1:
            return None
        for k, row in enumerate(table):
            if row == self.num:
                return k
        return None

    def to_json(self):
        return {"order": self.order,
                "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = [Fraction(int(n), int(d)) for n, d in data["coeffs"]]
        return cls.from_poly(int(data["order"]), coeffs)

    def to_complex(self):
        """Floating point value, for diagnostics only."""
        import cmath
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z ** k for k, c in enumerate(self.coeffs))


def arith(a, b, op):
    """Functional front end: op in {'add', 'mul', 'inv', 'neg'}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError("unknown op %r" % op)


# ---------------------------------------------------------------------------
# q-numbers at q = zeta**2, zeta of order 4p

def q_order(p):
    return 4 * p


def q_power(p, k):
    """q**k = zeta**(2k)."""
    return Cyclotomic.zeta(4 * p, 2 * k)


def half_q_power(p, k):
    """q**(k/2) = zeta**k."""
    return Cyclotomic.zeta(4 * p, k)


@lru_cache(maxsize=None)
def q_int(n, p):
    """[n] = 1 + q^2 + ... + q^(2(n-1)) evaluated at q = zeta**2, zeta of order 4p."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    counts = [0] * (4 * p)
    for a in range(n):
        counts[(4 * a) % (4 * p)] += 1
    return Cyclotomic.from_exponent_counts(4 * p, counts)


@lru_cache(maxsize=None)
def q_fac(n, p):
    out = Cyclotomic.const(4 * p, 1)
    for k in range(1, n + 1):
        out = out * q_int(k, p)
    return out


@lru_cache(maxsize=None)
def gaussian_binomial_poly(r, s):
    """Integer coefficients in v of the Gaussian binomial [r choose s]_v."""
    if s < 0 or s > r:
        return (0,)
    if s == 0 or s == r:
        return (1,)
    a = gaussian_binomial_poly(r - 1, s - 1)
    b = gaussian_binomial_poly(r - 1, s)
    out = [0] * max(len(a), len(b) + s)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + s] += c
    return tuple(out)


@lru_cache(maxsize=None)
def q_binom(r, s, p):
    """Gaussian binomial in v = q^2 evaluated exactly at q = zeta**2."""
    if s < 0 or s > r:
        raise ValueError("q_binom needs 0 <= s <= r")
    counts = [0] * (4 * p)
    for k, c in enumerate(gaussian_binomial_poly(r, s)):
        counts[(4 * k) % (4 * p)] += c
    return Cyclotomic.from_exponent_counts(4 * p, counts)


# ---------------------------------------------------------------------------
# exact linear algebra over any field whose elements support + - * / and == 0

def _is_zero(x):
    if isinstance(x, Cyclotomic):
        return x.is_zero()
    return x == 0


def rref(mat):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in mat]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not _is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c] if not isinstance(rows[r][c], int) else Fraction(1, rows[r][c])
        rows[r] = [x * inv if not _is_zero(x) else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b if not _is_zero(b) else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(mat):
    return len(rref(mat)[1])


def nullspace(mat, ncols=None, zero=0, one=1):
    """Basis of {x : mat x = 0} as a list of column vectors (lists)."""
    if not mat:
        if ncols is None:
            raise ValueError("empty matrix needs ncols")
        return [[one if i == k else zero for i in range(ncols)] for k in range(ncols)]
    ncols = len(mat[0])
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(rows, pivots):
            if not _is_zero(row[f]):
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """Solve mat X = rhs for X (rhs given as a list of rows).  Raises if inconsistent.

    Free variables are set to zero.
    """
    n = len(mat)
    ncols = len(mat[0])
    k = len(rhs[0])
    aug = [list(mat[i]) + list(rhs[i]) for i in range(n)]
    rows, pivots = rref(aug)
    for row, pc in zip(rows, pivots):
        if pc >= ncols:
            raise ValueError("inconsistent linear system")
    zero = 0
    sol = [[zero] * k for _ in range(ncols)]
    for row, pc in zip(rows, pivots):
        sol[pc] = row[ncols:]
    return sol
