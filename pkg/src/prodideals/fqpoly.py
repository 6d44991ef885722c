"""Arithmetic for F_q and for polynomials over F_q.

Field elements are encoded as integers 0..q-1.  For q = p**k with k > 1 the
code is the base-p digit vector of a polynomial in a generator y, reduced
modulo a fixed monic irreducible of degree k over F_p (the first one in
base-p code order, so the encoding is deterministic).

Polynomials over F_q are tuples of element codes in ascending degree with no
trailing zeros; () is the zero polynomial.  Factorization is deterministic
trial division: divisors are tried in (degree, code) order, so every divisor
found is automatically irreducible, exactly as in integer trial division.
"""

from __future__ import annotations

import functools

from .errors import FactorizationBudgetExceeded

#: Cap on q**d when scanning trial divisors of degree d.
DEFAULT_POLY_BUDGET = 1 << 16


def is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int):
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            return (q, 1) if q > 1 else None
        if q % p:
            continue
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        return (p, k) if m == 1 else None
    return None


# ---------------------------------------------------------------------------
# F_p[y] helpers used only to build the field tables for q = p**k, k > 1.

def _fp_trim(t):
    t = list(t)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


def _fp_mul(p, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _fp_trim(out)


def _fp_mod(p, f, g):
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    while len(f) - 1 >= dg and f:
        if f[-1] == 0:
            f.pop()
            continue
        c = (f[-1] * inv_lead) % p
        shift = len(f) - 1 - dg
        for j, b in enumerate(g):
            f[shift + j] = (f[shift + j] - c * b) % p
        while f and f[-1] == 0:
            f.pop()
    return tuple(f)


def _fp_irreducible(p, f):
    d = len(f) - 1
    if d < 1:
        return False
    for dd in range(1, d // 2 + 1):
        for code in range(p**dd):
            g = _digits(code, p, dd) + (1,)
            if not _fp_mod(p, f, g):
                return False
    return True


def _digits(code: int, base: int, length: int):
    out = []
    for _ in range(length):
        code, r = divmod(code, base)
        out.append(r)
    return tuple(out)


def _undigits(t, base: int) -> int:
    out = 0
    for c in reversed(t):
        out = out * base + c
    return out


class GF:
    """The field with q elements; element codes are ints in range(q)."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        if self.k == 1:
            self.modulus = None
        else:
            self.modulus = self._find_modulus()
        self._mul_table = None
        self._inv_table = None
        if q <= 256:
            self._build_tables()

    def _find_modulus(self):
        p, k = self.p, self.k
        for code in range(p**k):
            cand = _digits(code, p, k) + (1,)
            if _fp_irreducible(p, cand):
                return cand
        raise AssertionError("no irreducible modulus found")

    def _build_tables(self):
        q = self.q
        self._mul_table = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul_table[a]
            inv[a] = row.index(1)
        self._inv_table = inv

    # -- raw ops on codes ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = _digits(a, self.p, self.k), _digits(b, self.p, self.k)
        return _undigits(tuple((x + y) % self.p for x, y in zip(da, db)), self.p)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return _undigits(tuple((-x) % self.p for x in _digits(a, self.p, self.k)), self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        fa = _fp_trim(_digits(a, self.p, self.k))
        fb = _fp_trim(_digits(b, self.p, self.k))
        prod = _fp_mod(self.p, _fp_mul(self.p, fa, fb), self.modulus)
        return _undigits(prod + (0,) * (self.k - len(prod)), self.p)

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        # scan is fine for the rare large-q case
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise AssertionError("inverse not found")


@functools.lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


# ---------------------------------------------------------------------------
# Polynomials over F_q: tuples of codes, ascending degree, no trailing zeros.

def trim(t) -> tuple:
    t = list(t)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


def deg(f) -> int:
    return len(f) - 1


def padd(K: GF, f, g):
    n = max(len(f), len(g))
    f = f + (0,) * (n - len(f))
    g = g + (0,) * (n - len(g))
    return trim(K.add(a, b) for a, b in zip(f, g))


def pneg(K: GF, f):
    return tuple(K.neg(a) for a in f)


def psub(K: GF, f, g):
    return padd(K, f, pneg(K, g))


def pscale(K: GF, c: int, f):
    if c == 0:
        return ()
    return trim(K.mul(c, a) for a in f)


def pmul(K: GF, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(out)


def pdivmod(K: GF, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = deg(g)
    inv_lead = K.inv(g[-1])
    quot = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        if f[-1] == 0:
            f.pop()
            continue
        c = K.mul(f[-1], inv_lead)
        shift = len(f) - 1 - dg
        quot[shift] = c
        for j, b in enumerate(g):
            f[shift + j] = K.sub(f[shift + j], K.mul(c, b))
        while f and f[-1] == 0:
            f.pop()
    return trim(quot), tuple(f)


def pmod(K: GF, f, g):
    return pdivmod(K, f, g)[1]


def monic(K: GF, f):
    """Return (leading coefficient, monic associate)."""
    if not f:
        return 1, ()
    lead = f[-1]
    if lead == 1:
        return 1, f
    return lead, pscale(K, K.inv(lead), f)


def pgcd(K: GF, f, g):
    while g:
        f, g = g, pmod(K, f, g)
    return monic(K, f)[1]


def pxgcd(K: GF, f, g):
    """Return (d, u, v) with u*f + v*g = d; d is the monic gcd (or ())."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = pdivmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(K, s0, pmul(K, q, s1))
        t0, t1 = t1, psub(K, t0, pmul(K, q, t1))
    if not r0:
        return (), s0, t0
    lead, d = monic(K, r0)
    if lead != 1:
        c = K.inv(lead)
        s0, t0 = pscale(K, c, s0), pscale(K, c, t0)
    return d, s0, t0


def ppow(K: GF, f, e: int):
    out = (1,)
    base = f
    while e:
        if e & 1:
            out = pmul(K, out, base)
        base = pmul(K, base, base)
        e >>= 1
    return out


def monic_by_code(K: GF, d: int, code: int):
    """The monic polynomial of degree d whose lower coefficients encode code."""
    return _digits(code, K.q, d) + (1,)


def all_monic(K: GF, d: int):
    for code in range(K.q**d):
        yield monic_by_code(K, d, code)


def factor_monic(K: GF, f, budget: int = DEFAULT_POLY_BUDGET):
    """Factor a monic polynomial into monic irreducibles with multiplicity.

    Returns a list of (irreducible, exponent) sorted by (degree, code order).
    Trial divisors are scanned in ascending (degree, code) order; a cap of
    ``budget`` candidates per degree guards against oversized inputs.
    """
    assert f and f[-1] == 1
    factors = []
    d = 1
    while 2 * d <= deg(f):
        if K.q**d > budget:
            raise FactorizationBudgetExceeded(
                f"degree-{d} divisor scan needs {K.q**d} candidates (budget {budget})")
        for g in all_monic(K, d):
            e = 0
            while True:
                q, r = pdivmod(K, f, g)
                if r:
                    break
                f = q
                e += 1
            if e:
                factors.append((g, e))
            if 2 * d > deg(f):
                break
        d += 1
    if deg(f) >= 1:
        factors.append((f, 1))
    factors.sort(key=lambda pair: (deg(pair[0]), _undigits(pair[0][:-1], K.q)))
    return factors


def is_irreducible(K: GF, f) -> bool:
    if deg(f) < 1:
        return False
    _, f = monic(K, f)
    for d in range(1, deg(f) // 2 + 1):
        for g in all_monic(K, d):
            if not pmod(K, f, g):
                return False
    return True


def irreducibles_up_to(K: GF, max_deg: int):
    """All monic irreducibles of degree <= max_deg in (degree, code) order.

    Earlier irreducibles are reused as the trial divisors, so the scan
    mirrors a prime sieve.
    """
    found = []
    for d in range(1, max_deg + 1):
        for g in all_monic(K, d):
            if all(pmod(K, g, h) for h in found if 2 * deg(h) <= d):
                found.append(g)
    return found


def poly_str(f, var: str = "x") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(deg(f), -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            coeff = "" if c == 1 else f"{c}*"
            power = var if i == 1 else f"{var}^{i}"
            parts.append(f"{coeff}{power}")
    return "+".join(parts)
