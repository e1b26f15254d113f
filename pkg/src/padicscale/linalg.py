"""Exact rational matrix algebra and polynomial factorization over Q.

Matrices carry ``Fraction`` entries.  The determinant goes through
fraction-free Bareiss elimination on a denominator-cleared integer copy;
the characteristic polynomial through Faddeev-LeVerrier (division-free up
to exact integer divisions).  No numeric eigenvalue routine appears
anywhere: eigenvalues are only ever consumed through their valuations.

Rational factorization is squarefree split + Zassenhaus on each
squarefree part (factor modulo an auxiliary prime, Hensel lift to a
Mignotte-bound modulus, subset recombination), capped at degree
:data:`FACTOR_DEGREE_CAP`.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import (
    DegreeCapExceededError,
    NotSquareError,
    SingularMatrixError,
)

FACTOR_DEGREE_CAP = 8


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QMatrix:
    """Immutable rectangular matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(_frac(e) for e in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        self.rows = len(rows)
        self.cols = width
        self.entries = rows

    # -- constructors ---------------------------------------------------

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "QMatrix":
        return QMatrix([[Fraction(0)] * cols for _ in range(rows)])

    @staticmethod
    def diagonal(values) -> "QMatrix":
        values = [_frac(v) for v in values]
        n = len(values)
        return QMatrix(
            [[values[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def companion(poly: "MonicPoly") -> "QMatrix":
        """Companion matrix of a monic polynomial of degree >= 1."""
        n = poly.degree
        if n < 1:
            raise ValueError("companion matrix needs degree >= 1")
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(1, n):
            m[i][i - 1] = Fraction(1)
        for i in range(n):
            m[i][n - 1] = -poly.coeffs[i]
        return QMatrix(m)

    @staticmethod
    def from_columns(columns, rows: int) -> "QMatrix":
        columns = list(columns)
        return QMatrix(
            [[_frac(col[i]) for col in columns] for i in range(rows)]
        )

    # -- basics ---------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"QMatrix({[[str(e) for e in row] for row in self.entries]})"

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def column(self, j: int):
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "QMatrix":
        return QMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return QMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "QMatrix":
        c = _frac(c)
        return QMatrix([[c * e for e in row] for row in self.entries])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().entries
        return QMatrix(
            [
                [
                    sum((a * b for a, b in zip(row, col)), Fraction(0))
                    for col in ot
                ]
                for row in self.entries
            ]
        )

    def apply(self, vector):
        """Matrix-vector product; vector is any sequence of rationals."""
        if len(vector) != self.cols:
            raise ValueError("shape mismatch")
        vec = [_frac(v) for v in vector]
        return tuple(
            sum((a * b for a, b in zip(row, vec)), Fraction(0))
            for row in self.entries
        )

    def trace(self) -> Fraction:
        self._require_square()
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def _require_square(self):
        if self.rows != self.cols:
            raise NotSquareError(f"{self.rows}x{self.cols} matrix is not square")

    # -- elimination-based operations -----------------------------------

    def det(self) -> Fraction:
        """Exact determinant via fraction-free Bareiss elimination."""
        self._require_square()
        n = self.rows
        if n == 0:
            return Fraction(1)
        # Clear denominators row by row; divide the integer determinant back.
        scale = Fraction(1)
        m = []
        for row in self.entries:
            lcm = 1
            for e in row:
                lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
            scale *= lcm
            m.append([int(e * lcm) for e in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return Fraction(sign * m[n - 1][n - 1]) / scale

    def inverse(self) -> "QMatrix":
        """Exact inverse via Gauss-Jordan; raises for singular input."""
        self._require_square()
        n = self.rows
        a = [list(row) for row in self.entries]
        b = [list(row) for row in QMatrix.identity(n).entries]
        for col in range(n):
            pivot = None
            for i in range(col, n):
                if a[i][col] != 0:
                    pivot = i
                    break
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
            pv = a[col][col]
            a[col] = [e / pv for e in a[col]]
            b[col] = [e / pv for e in b[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [e - f * g for e, g in zip(a[i], a[col])]
                    b[i] = [e - f * g for e, g in zip(b[i], b[col])]
        return QMatrix(b)

    def kernel(self):
        """Exact basis of the right null space, as a list of tuples."""
        m, n = self.rows, self.cols
        a = [list(row) for row in self.entries]
        pivots = []
        row = 0
        for col in range(n):
            pivot = None
            for i in range(row, m):
                if a[i][col] != 0:
                    pivot = i
                    break
            if pivot is None:
                continue
            a[row], a[pivot] = a[pivot], a[row]
            pv = a[row][col]
            a[row] = [e / pv for e in a[row]]
            for i in range(m):
                if i != row and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [e - f * g for e, g in zip(a[i], a[row])]
            pivots.append(col)
            row += 1
            if row == m:
                break
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * n
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -a[r][fc]
            basis.append(tuple(v))
        return basis

    def rank(self) -> int:
        return self.cols - len(self.kernel())

    def power(self, k: int) -> "QMatrix":
        """Integer matrix power, negative exponents via the exact inverse."""
        self._require_square()
        if k < 0:
            return self.inverse().power(-k)
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def charpoly(self) -> "MonicPoly":
        """Characteristic polynomial det(xI - M) via Faddeev-LeVerrier."""
        self._require_square()
        n = self.rows
        if n == 0:
            return MonicPoly([Fraction(1)])
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        m = QMatrix.identity(n)
        for k in range(1, n + 1):
            m = self @ m
            c = -m.trace() / k
            coeffs[n - k] = c
            m = m + QMatrix.identity(n).scale(c)
        return MonicPoly(coeffs)


class MonicPoly:
    """Monic polynomial over Q, coefficients stored constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [_frac(c) for c in coeffs]
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, MonicPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"MonicPoly({[str(c) for c in self.coeffs]})"

    def __call__(self, x):
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "MonicPoly") -> "MonicPoly":
        return MonicPoly(_poly_mul(list(self.coeffs), list(other.coeffs)))

    def at_matrix(self, m: QMatrix) -> QMatrix:
        """Evaluate the polynomial at a square matrix (Horner)."""
        n = m.rows
        acc = QMatrix.zero(n, n)
        for c in reversed(self.coeffs):
            acc = (m @ acc) + QMatrix.identity(n).scale(c)
        return acc

    def reciprocal(self) -> "MonicPoly":
        """Monic polynomial whose roots are the inverses of this one's.

        Requires a nonzero constant term.
        """
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ValueError("reciprocal of polynomial with root 0")
        rev = list(reversed(self.coeffs))
        return MonicPoly([c / c0 for c in rev])

    @staticmethod
    def from_roots(roots) -> "MonicPoly":
        acc = [Fraction(1)]
        for r in roots:
            acc = _poly_mul(acc, [-_frac(r), Fraction(1)])
        return MonicPoly(acc)


# -- dense polynomial helpers over Q (lists, constant term first) -------


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_divmod(a, b):
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if db < 0:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(da - db + 1, 0)
    for i in range(da - db, -1, -1):
        c = a[i + db] / b[db]
        if c != 0:
            q[i] = c
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, _poly_trim(a)

def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _poly_derivative(a):
    return _poly_trim([i * c for i, c in enumerate(a)][1:])


# -- factorization over Q ----------------------------------------------


def _squarefree_decomposition(f):
    """Yun's algorithm on a monic polynomial (list form, monic)."""
    out = []
    fp = _poly_derivative(f)
    a = _poly_gcd(f, fp)
    b, _ = _poly_divmod(f, a)
    c, _ = _poly_divmod(fp, a)
    d = _poly_trim([ci - di for ci, di in itertools.zip_longest(
        c, _poly_derivative(b), fillvalue=Fraction(0))])
    i = 1
    while len(b) > 1:
        g = _poly_gcd(b, d)
        if len(g) > 1:
            out.append((g, i))
        b, _ = _poly_divmod(b, g)
        cq, _ = _poly_divmod(d, g)
        d = _poly_trim([ci - di for ci, di in itertools.zip_longest(
            cq, _poly_derivative(b), fillvalue=Fraction(0))])
        i += 1
    return out


# modular polynomial arithmetic: dense lists of ints mod q


def _zmod_trim(a, q):
    a = [c % q for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmod_mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return out


def _zmod_divmod(a, b, q):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[db], -1, q)
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db] * inv % q
        if c:
            quo[i] = c
            for j in range(db + 1):
                a[i + j] = (a[i + j] - c * b[j]) % q
    return quo, _zmod_trim(a, q)


def _zmod_gcd(a, b, q):
    a, b = _zmod_trim(a, q), _zmod_trim(b, q)
    while b:
        _, r = _zmod_divmod(a, b, q)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def _zmod_powmod(base, e, mod, q):
    result = [1]
    base = _zmod_divmod(base, mod, q)[1]
    while e:
        if e & 1:
            result = _zmod_divmod(_zmod_mul(result, base, q), mod, q)[1]
        base = _zmod_divmod(_zmod_mul(base, base, q), mod, q)[1]
        e >>= 1
    return result


def _factor_mod_q(f, q, rng):
    """Factor a squarefree monic polynomial into monic irreducibles mod q."""
    # distinct-degree then Cantor-Zassenhaus equal-degree splitting
    factors = []
    work = list(f)
    d = 1
    while len(work) - 1 >= 2 * d:
        h = _zmod_powmod([0, 1], q ** d, work, q)
        h = _zmod_trim([c - (1 if i == 1 else 0) for i, c in enumerate(
            h + [0] * max(0, 2 - len(h)))], q)
        g = _zmod_gcd(work, h, q)
        if len(g) > 1:
            factors.extend(_equal_degree_split(g, d, q, rng))
            work, _ = _zmod_divmod(work, g, q)
        d += 1
    if len(work) > 1:
        factors.append(work)
    return factors


def _equal_degree_split(g, d, q, rng):
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        r = [rng.randrange(q) for _ in range(n - 1)] + [1]
        if q == 2:
            # trace map splitting for q = 2
            h = list(r)
            acc = list(r)
            for _ in range(d - 1):
                acc = _zmod_powmod(acc, 2, g, q)
                h = _zmod_trim([x + y for x, y in itertools.zip_longest(
                    h, acc, fillvalue=0)], q)
            cand = h
        else:
            cand = _zmod_powmod(r, (q ** d - 1) // 2, g, q)
            cand = _zmod_trim([c - (1 if i == 0 else 0) for i, c in enumerate(
                cand + [0])], q)
        w = _zmod_gcd(g, cand, q)
        if 1 < len(w) < len(g):
            rest, _ = _zmod_divmod(g, w, q)
            return _equal_degree_split(w, d, q, rng) + _equal_degree_split(
                rest, d, q, rng)


def _hensel_lift_pair(f, g, h, s, t, q, m):
    """One quadratic Hensel step: modulus m -> m*m (all ints, f = g*h mod m).

    Inputs satisfy s*g + t*h = 1 mod m with g monic.  Returns lifted
    (g, h, s, t) valid modulo m*m, g monic.
    """
    mm = m * m

    def mul(a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % mm
        return out

    def sub(a, b):
        return [
            (x - y) % mm for x, y in itertools.zip_longest(a, b, fillvalue=0)
        ]

    def trim(a):
        a = [c % mm for c in a]
        while a and a[-1] == 0:
            a.pop()
        return a

    def divmod_monic(a, b):
        a = list(a)
        db = len(b) - 1
        quo = [0] * max(len(a) - db, 0)
        for i in range(len(a) - db - 1, -1, -1):
            c = a[i + db] % mm
            if c:
                quo[i] = c
                for j in range(db + 1):
                    a[i + j] = (a[i + j] - c * b[j]) % mm
        return quo, trim(a)

    e = trim(sub(f, mul(g, h)))
    qq, r = divmod_monic(mul(s, e), h)
    # g1 = g + t*e + q*g ; h (the monic factor) absorbs the remainder r
    g1 = trim([
        (x + y + z) % mm
        for x, y, z in itertools.zip_longest(
            g, mul(t, e), mul(qq, g), fillvalue=0)
    ])
    h1 = trim([
        (x + y) % mm for x, y in itertools.zip_longest(h, r, fillvalue=0)
    ])
    # b = s*g1 + t*h1 - 1 measures the Bezout defect at the new modulus
    b = trim([
        (x + y - (1 if i == 0 else 0)) % mm
        for i, (x, y) in enumerate(
            itertools.zip_longest(mul(s, g1), mul(t, h1), fillvalue=0))
    ])
    cq, d = divmod_monic(mul(s, b), h1)
    s1 = trim(sub(s, d))
    t1 = trim(sub(sub(t, mul(t, b)), mul(cq, g1)))
    return g1, h1, s1, t1


def _hensel_lift_list(f, modular_factors, q, target):
    """Lift a list of pairwise-coprime monic factors of f from mod q to
    a modulus >= target (a power of q).  f must be monic mod q."""
    if len(modular_factors) == 1:
        m = q
        while m < target:
            m *= m
        return [[c % m for c in f]], m
    k = len(modular_factors) // 2
    g0 = [1]
    for fac in modular_factors[:k]:
        g0 = _zmod_mul(g0, fac, q)
    h0 = [1]
    for fac in modular_factors[k:]:
        h0 = _zmod_mul(h0, fac, q)
    # Bezout s*g0 + t*h0 = 1 mod q via extended Euclid
    s, t = _zmod_bezout(g0, h0, q)
    m = q
    g, h = g0, h0
    while m < target:
        g, h, s, t = _hensel_lift_pair([c % (m * m) for c in f], g, h, s, t, q, m)
        m *= m
    left, _ = _hensel_lift_list(g, modular_factors[:k], q, target)
    right, _ = _hensel_lift_list(h, modular_factors[k:], q, target)
    return left + right, m


def _zmod_bezout(a, b, q):
    """s, t with s*a + t*b = 1 mod q for coprime monic a, b."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, rem = _zmod_divmod(r0, r1, q)
        r0, r1 = r1, rem
        s0, s1 = s1, _zmod_trim(
            [x - y for x, y in itertools.zip_longest(
                s0, _zmod_mul(quo, s1, q), fillvalue=0)], q)
        t0, t1 = t1, _zmod_trim(
            [x - y for x, y in itertools.zip_longest(
                t0, _zmod_mul(quo, t1, q), fillvalue=0)], q)
    inv = pow(r0[-1], -1, q) if r0[-1] != 1 else 1
    s = [c * inv % q for c in s0]
    t = [c * inv % q for c in t0]
    return s, t


_AUX_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
)


def _factor_squarefree_z(g):
    """Factor a squarefree primitive integer polynomial (list of ints,
    positive leading coefficient) into irreducible integer polynomials."""
    import random

    n = len(g) - 1
    if n <= 1:
        return [g]
    rng = random.Random(math.prod(abs(c) + 1 for c in g) % (2 ** 31))
    lead = g[-1]
    for q in _AUX_PRIMES:
        if lead % q == 0:
            continue
        gq = _zmod_trim(list(g), q)
        if len(gq) - 1 != n:
            continue
        if len(_zmod_gcd(gq, [c % q for c in _int_derivative(g)], q)) != 1:
            continue
        break
    else:  # pragma: no cover - 29 auxiliary primes always suffice at cap 8
        raise DegreeCapExceededError("no usable auxiliary prime")
    inv_lead = pow(lead % q, -1, q)
    gq_monic = [c * inv_lead % q for c in gq]
    modular = _factor_mod_q(gq_monic, q, rng)
    if len(modular) == 1:
        return [g]
    # Mignotte-style bound on factor coefficients of lead * (monic factor)
    norm = math.isqrt(sum(c * c for c in g)) + 1
    bound = 2 ** n * norm * abs(lead)
    target = 2 * bound + 1
    final_modulus = q
    while final_modulus < target:
        final_modulus *= final_modulus
    inv_lead_final = pow(lead, -1, final_modulus)
    monic_assoc = [c * inv_lead_final % final_modulus for c in g]
    lifted, modulus = _hensel_lift_list(monic_assoc, modular, q, target)
    # recombination over subsets
    remaining = list(range(len(lifted)))
    g_cur = list(g)
    result = []
    size = 1
    while 2 * size <= len(remaining):
        found = True
        while found:
            found = False
            for subset in itertools.combinations(remaining, size):
                cand = [g_cur[-1] % modulus]
                for idx in subset:
                    cand = _lift_mul(cand, lifted[idx], modulus)
                cand = _symmetric(cand, modulus)
                cand = _int_primitive(cand)
                if len(cand) < 2:
                    continue
                quo, rem = _int_divmod_exact(g_cur, cand)
                if quo is not None and not rem:
                    result.append(cand)
                    g_cur = quo
                    remaining = [i for i in remaining if i not in subset]
                    found = True
                    break
        size += 1
    if len(g_cur) > 1:
        result.append(_int_primitive(g_cur))
    return result


def _int_derivative(a):
    return [i * c for i, c in enumerate(a)][1:]


def _lift_mul(a, b, m):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return out


def _symmetric(a, m):
    return [c - m if c > m // 2 else c for c in a]


def _int_primitive(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _int_divmod_exact(a, b):
    """Divide integer polynomials exactly; (None, a) when not divisible."""
    a = [Fraction(c) for c in a]
    bq = [Fraction(c) for c in b]
    quo, rem = _poly_divmod(a, bq)
    if rem:
        return None, rem
    if any(c.denominator != 1 for c in quo):
        return None, [Fraction(1)]
    return [int(c) for c in quo], []


def factor_over_q(f: MonicPoly, degree_cap: int = FACTOR_DEGREE_CAP):
    """Factor a monic rational polynomial into monic irreducibles over Q.

    Returns a list of (MonicPoly, multiplicity); the product of the
    factors with multiplicities reproduces the input exactly.
    """
    if f.degree > degree_cap:
        raise DegreeCapExceededError(
            f"degree {f.degree} exceeds cap {degree_cap}")
    if f.degree == 0:
        return []
    result = []
    for sqfree, mult in _squarefree_decomposition(list(f.coeffs)):
        # clear denominators to a primitive integer polynomial
        lcm = 1
        for c in sqfree:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        gz = _int_primitive([int(c * lcm) for c in sqfree])
        for fac in _factor_squarefree_z(gz):
            lead = Fraction(fac[-1])
            result.append((MonicPoly([Fraction(c) / lead for c in fac]), mult))
    result.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return result
