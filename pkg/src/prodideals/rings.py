"""The catalog of component rings: exact arithmetic, maximal ideals, valuations.

Four kinds are supported, all of finite character (every nonzero element lies
in finitely many maximal ideals):

* ``IntegerRing()``          -- the integers; maximal ideals (p), infinitely many.
* ``ResidueRing(n)``         -- integers mod n >= 2; maximal ideals (p) for p | n.
* ``LocalizedIntegersRing(S)`` -- integers localized so that the maximal ideals
  are exactly (p) for p in the finite prime set S (a semilocal PID); elements
  are fractions whose denominator is coprime to every prime of S.
* ``PolynomialRing(q)``      -- polynomials over the field with q elements;
  maximal ideals generated by monic irreducibles, infinitely many.

Subsets of a maximal spectrum are carried as ``FinCofSet`` values: an explicit
finite set, or the complement of one.  For rings with finite spectrum the
cofinite form normalizes away, so equality of sets is equality of values.

Integer factorization is deterministic trial division capped by a budget;
polynomial factorization mirrors it degree by degree.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import fqpoly
from .errors import (
    FactorizationBudgetExceeded,
    InconsistentInput,
    NotUnitIdeal,
    UnsupportedRing,
)
from .values import INF

#: Trial-division limit for integer factorization.
DEFAULT_FACTOR_BUDGET = 1_000_000


@functools.lru_cache(maxsize=None)
def prime_factors(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> tuple:
    """Distinct prime factors of |n| in ascending order, by trial division.

    Raises FactorizationBudgetExceeded when a cofactor survives trial
    division up to ``budget`` and is too large to be certified prime.
    """
    n = abs(n)
    if n <= 1:
        return ()
    out = []
    f = 2
    while f <= budget and f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        # The loop stopped either because f*f > n (cofactor is prime) or
        # because f passed the budget (cofactor may hide two large primes).
        if f * f <= n:
            raise FactorizationBudgetExceeded(
                f"cofactor {n} not certified prime within trial budget {budget}")
        out.append(n)
    return tuple(out)


def int_valuation(n: int, p: int):
    """Exponent of p in n; INF for n == 0."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with x*a + y*b = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# Handles, elements, maximal ideals


class RingHandle:
    """Base class of the catalog; instances are immutable and hashable."""

    kind: str = ""

    # -- structure ----------------------------------------------------------

    @property
    def spectrum_finite(self) -> bool:
        raise NotImplementedError

    @property
    def is_domain(self) -> bool:
        raise NotImplementedError

    @property
    def short_name(self) -> str:
        raise NotImplementedError

    def maximal_spectrum(self) -> tuple:
        raise UnsupportedRing(f"{self.short_name} has an infinite maximal spectrum")

    def maximal_ideals_up_to(self, bound: int) -> tuple:
        raise NotImplementedError

    def max_ideal(self, generator) -> "MaxIdealId":
        raise NotImplementedError

    def smallest_max_ideal(self) -> "MaxIdealId":
        return self.maximal_ideals_up_to(2)[0]

    def nonzero_nonunit(self):
        """Some element that is neither zero nor a unit, or None (fields)."""
        raise NotImplementedError

    # -- raw element arithmetic ----------------------------------------------

    def normalize(self, value):
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _is_unit(self, x) -> bool:
        raise NotImplementedError

    def _zero_raw(self):
        raise NotImplementedError

    def _one_raw(self):
        raise NotImplementedError

    def _repr_raw(self, x) -> str:
        return repr(x)

    # -- public element surface ----------------------------------------------

    def element(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring != self:
                raise UnsupportedRing(
                    f"element of {value.ring.short_name} used in {self.short_name}")
            return value
        return RingElement(self, self.normalize(value))

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self._zero_raw())

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self._one_raw())

    def vset(self, elem, budget: int = DEFAULT_FACTOR_BUDGET) -> "FinCofSet":
        raise NotImplementedError

    def valuation(self, elem, ideal: "MaxIdealId"):
        raise UnsupportedRing(f"{self.short_name} carries no discrete valuations")

    def __repr__(self):
        return self.short_name


@dataclass(frozen=True)
class RingElement:
    ring: RingHandle
    raw: object

    @property
    def is_zero(self) -> bool:
        return self.raw == self.ring._zero_raw()

    @property
    def is_unit(self) -> bool:
        return self.ring._is_unit(self.raw)

    def __add__(self, other):
        other = self.ring.element(other)
        return RingElement(self.ring, self.ring._add(self.raw, other.raw))

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.raw))

    def __sub__(self, other):
        return self + (-self.ring.element(other))

    def __mul__(self, other):
        other = self.ring.element(other)
        return RingElement(self.ring, self.ring._mul(self.raw, other.raw))

    def __repr__(self):
        return f"{self.ring._repr_raw(self.raw)} in {self.ring.short_name}"


@dataclass(frozen=True)
class MaxIdealId:
    """A maximal ideal, identified by its canonical generator."""

    ring: RingHandle
    generator: object

    @property
    def sort_key(self):
        if isinstance(self.generator, tuple):
            return (len(self.generator), self.generator)
        return (0, self.generator)

    def contains(self, elem: RingElement) -> bool:
        elem = self.ring.element(elem)
        return self.ring._in_max_ideal(elem.raw, self.generator)

    def __repr__(self):
        if isinstance(self.generator, tuple):
            return f"({fqpoly.poly_str(self.generator)})"
        return f"({self.generator})"


# ---------------------------------------------------------------------------
# Finite / cofinite subsets of a maximal spectrum


@dataclass(frozen=True)
class FinCofSet:
    """A finite, or cofinite, set of maximal ideals of one ring.

    ``support`` lists the members (finite form) or the non-members
    (cofinite form).  Over a ring with finite spectrum the cofinite form is
    normalized away at construction, so value equality is set equality.
    """

    ring: RingHandle
    is_cofinite: bool
    support: frozenset

    def __post_init__(self):
        for m in self.support:
            if m.ring != self.ring:
                raise InconsistentInput(f"{m} does not belong to {self.ring.short_name}")
        if self.is_cofinite and self.ring.spectrum_finite:
            full = set(self.ring.maximal_spectrum())
            object.__setattr__(self, "support", frozenset(full - self.support))
            object.__setattr__(self, "is_cofinite", False)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def finite(cls, ring, ideals: Iterable[MaxIdealId]) -> "FinCofSet":
        return cls(ring, False, frozenset(ideals))

    @classmethod
    def cofinite(cls, ring, excluded: Iterable[MaxIdealId] = ()) -> "FinCofSet":
        return cls(ring, True, frozenset(excluded))

    @classmethod
    def empty(cls, ring) -> "FinCofSet":
        return cls(ring, False, frozenset())

    @classmethod
    def all(cls, ring) -> "FinCofSet":
        return cls(ring, True, frozenset())

    # -- predicates -----------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.is_cofinite and not self.support

    @property
    def is_all(self) -> bool:
        if self.is_cofinite:
            return not self.support
        if self.ring.spectrum_finite:
            return self.support == frozenset(self.ring.maximal_spectrum())
        return False

    def __contains__(self, ideal: MaxIdealId) -> bool:
        return (ideal not in self.support) if self.is_cofinite else (ideal in self.support)

    def sorted_support(self) -> list:
        return sorted(self.support, key=lambda m: m.sort_key)

    # -- boolean operations -----------------------------------------------------

    def _check(self, other: "FinCofSet"):
        if self.ring != other.ring:
            raise InconsistentInput("sets over different rings")

    def intersection(self, other: "FinCofSet") -> "FinCofSet":
        self._check(other)
        a, b = self, other
        if not a.is_cofinite and not b.is_cofinite:
            return FinCofSet(self.ring, False, a.support & b.support)
        if not a.is_cofinite:
            return FinCofSet(self.ring, False, a.support - b.support)
        if not b.is_cofinite:
            return FinCofSet(self.ring, False, b.support - a.support)
        return FinCofSet(self.ring, True, a.support | b.support)

    def union(self, other: "FinCofSet") -> "FinCofSet":
        self._check(other)
        a, b = self, other
        if not a.is_cofinite and not b.is_cofinite:
            return FinCofSet(self.ring, False, a.support | b.support)
        if not a.is_cofinite:
            return FinCofSet(self.ring, True, b.support - a.support)
        if not b.is_cofinite:
            return FinCofSet(self.ring, True, a.support - b.support)
        return FinCofSet(self.ring, True, a.support & b.support)

    def complement(self) -> "FinCofSet":
        return FinCofSet(self.ring, not self.is_cofinite, self.support)

    def issubset(self, other: "FinCofSet") -> bool:
        self._check(other)
        a, b = self, other
        if not a.is_cofinite and not b.is_cofinite:
            return a.support <= b.support
        if not a.is_cofinite and b.is_cofinite:
            return not (a.support & b.support)
        if a.is_cofinite and not b.is_cofinite:
            return False  # a is infinite here, b finite
        return b.support <= a.support

    __and__ = intersection
    __or__ = union
    __invert__ = complement
    __le__ = issubset

    def __repr__(self):
        names = ",".join(repr(m) for m in self.sorted_support())
        return f"Cof{{{names}}}" if self.is_cofinite else f"Fin{{{names}}}"


# ---------------------------------------------------------------------------
# The four catalog kinds


@dataclass(frozen=True)
class IntegerRing(RingHandle):
    kind = "integers"

    @property
    def spectrum_finite(self):
        return False

    @property
    def is_domain(self):
        return True

    @property
    def short_name(self):
        return "Z"

    def normalize(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{value} is not an integer")
            return int(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"not an integer: {value!r}")
        return value

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _is_unit(self, x):
        return x in (1, -1)

    def _zero_raw(self):
        return 0

    def _one_raw(self):
        return 1

    def max_ideal(self, generator):
        generator = int(generator)
        if not fqpoly.is_prime_int(generator):
            raise InconsistentInput(f"{generator} is not prime")
        return MaxIdealId(self, generator)

    def maximal_ideals_up_to(self, bound: int):
        return tuple(MaxIdealId(self, p) for p in range(2, bound + 1)
                     if fqpoly.is_prime_int(p))

    def nonzero_nonunit(self):
        return self.element(2)

    def _in_max_ideal(self, raw, gen):
        return raw % gen == 0

    def vset(self, elem, budget: int = DEFAULT_FACTOR_BUDGET):
        elem = self.element(elem)
        if elem.raw == 0:
            return FinCofSet.cofinite(self)
        return FinCofSet.finite(
            self, (MaxIdealId(self, p) for p in prime_factors(elem.raw, budget)))

    def valuation(self, elem, ideal):
        elem = self.element(elem)
        return int_valuation(elem.raw, ideal.generator)


@dataclass(frozen=True)
class ResidueRing(RingHandle):
    modulus: int
    kind = "residue"

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")

    @property
    def spectrum_finite(self):
        return True

    @property
    def is_domain(self):
        return fqpoly.is_prime_int(self.modulus)

    @property
    def short_name(self):
        return f"Z/{self.modulus}"

    @functools.cached_property
    def _primes(self):
        return prime_factors(self.modulus)

    def normalize(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"not an integer: {value!r}")
        return value % self.modulus

    def _add(self, x, y):
        return (x + y) % self.modulus

    def _neg(self, x):
        return (-x) % self.modulus

    def _mul(self, x, y):
        return (x * y) % self.modulus

    def _is_unit(self, x):
        return math.gcd(x, self.modulus) == 1

    def _zero_raw(self):
        return 0

    def _one_raw(self):
        return 1

    def maximal_spectrum(self):
        return tuple(MaxIdealId(self, p) for p in self._primes)

    def maximal_ideals_up_to(self, bound: int):
        return self.maximal_spectrum()

    def max_ideal(self, generator):
        generator = int(generator)
        if generator not in self._primes:
            raise InconsistentInput(
                f"{generator} is not a prime divisor of {self.modulus}")
        return MaxIdealId(self, generator)

    def nonzero_nonunit(self):
        p = self._primes[0]
        return None if p == self.modulus else self.element(p)

    def _in_max_ideal(self, raw, gen):
        return raw % gen == 0

    def vset(self, elem, budget: int = DEFAULT_FACTOR_BUDGET):
        elem = self.element(elem)
        return FinCofSet.finite(
            self, (MaxIdealId(self, p) for p in self._primes if elem.raw % p == 0))


@dataclass(frozen=True)
class LocalizedIntegersRing(RingHandle):
    """Integers localized to have maximal spectrum {(p) : p in primes}."""

    primes: tuple
    kind = "localized_integers"

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        if not ps:
            raise ValueError("prime set must be nonempty")
        for p in ps:
            if not fqpoly.is_prime_int(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @property
    def spectrum_finite(self):
        return True

    @property
    def is_domain(self):
        return True

    @property
    def short_name(self):
        return "Z_(" + ",".join(str(p) for p in self.primes) + ")"

    def normalize(self, value):
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        if not isinstance(value, Fraction):
            raise ValueError(f"not a fraction: {value!r}")
        for p in self.primes:
            if value.denominator % p == 0:
                raise ValueError(
                    f"denominator of {value} is not invertible here (divisible by {p})")
        return value

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _is_unit(self, x):
        return x != 0 and all(x.numerator % p for p in self.primes)

    def _zero_raw(self):
        return Fraction(0)

    def _one_raw(self):
        return Fraction(1)

    def maximal_spectrum(self):
        return tuple(MaxIdealId(self, p) for p in self.primes)

    def maximal_ideals_up_to(self, bound: int):
        return self.maximal_spectrum()

    def max_ideal(self, generator):
        generator = int(generator)
        if generator not in self.primes:
            raise InconsistentInput(f"{generator} is not in the prime set")
        return MaxIdealId(self, generator)

    def nonzero_nonunit(self):
        return self.element(self.primes[0])

    def _repr_raw(self, x):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def _in_max_ideal(self, raw, gen):
        return raw.numerator % gen == 0

    def vset(self, elem, budget: int = DEFAULT_FACTOR_BUDGET):
        elem = self.element(elem)
        if elem.raw == 0:
            return FinCofSet.finite(self, self.maximal_spectrum())
        return FinCofSet.finite(
            self, (MaxIdealId(self, p) for p in self.primes
                   if elem.raw.numerator % p == 0))

    def valuation(self, elem, ideal):
        elem = self.element(elem)
        return int_valuation(elem.raw.numerator, ideal.generator)

    def s_part(self, raw: Fraction) -> int:
        """The part of a nonzero element supported on the spectrum primes."""
        out = 1
        n = abs(raw.numerator)
        for p in self.primes:
            while n % p == 0:
                n //= p
                out *= p
        return out


@dataclass(frozen=True)
class PolynomialRing(RingHandle):
    """Polynomials over the field with q elements."""

    q: int
    kind = "poly_fq"

    def __post_init__(self):
        if fqpoly.prime_power(self.q) is None:
            raise ValueError(f"{self.q} is not a prime power")

    @property
    def K(self) -> fqpoly.GF:
        return fqpoly.field(self.q)

    @property
    def spectrum_finite(self):
        return False

    @property
    def is_domain(self):
        return True

    @property
    def short_name(self):
        return f"F{self.q}[x]"

    def normalize(self, value):
        if isinstance(value, int) and not isinstance(value, bool):
            value = (value,)
        if not isinstance(value, (tuple, list)):
            raise ValueError(f"not a coefficient sequence: {value!r}")
        coeffs = tuple(int(c) for c in value)
        for c in coeffs:
            if not 0 <= c < self.q:
                raise ValueError(f"coefficient {c} out of range for F{self.q}")
        return fqpoly.trim(coeffs)

    def _add(self, x, y):
        return fqpoly.padd(self.K, x, y)

    def _neg(self, x):
        return fqpoly.pneg(self.K, x)

    def _mul(self, x, y):
        return fqpoly.pmul(self.K, x, y)

    def _is_unit(self, x):
        return fqpoly.deg(x) == 0

    def _zero_raw(self):
        return ()

    def _one_raw(self):
        return (1,)

    def _repr_raw(self, x):
        return fqpoly.poly_str(x)

    def max_ideal(self, generator):
        gen = self.normalize(generator)
        if not gen or gen[-1] != 1 or not fqpoly.is_irreducible(self.K, gen):
            raise InconsistentInput(
                f"{fqpoly.poly_str(gen)} is not monic irreducible over F{self.q}")
        return MaxIdealId(self, gen)

    def maximal_ideals_up_to(self, bound: int):
        """All maximal ideals with generator degree <= bound."""
        return tuple(MaxIdealId(self, g)
                     for g in fqpoly.irreducibles_up_to(self.K, bound))

    def smallest_max_ideal(self):
        return MaxIdealId(self, (0, 1))

    def nonzero_nonunit(self):
        return self.element((0, 1))

    def _in_max_ideal(self, raw, gen):
        return not fqpoly.pmod(self.K, raw, gen)

    def vset(self, elem, budget: int = DEFAULT_FACTOR_BUDGET):
        elem = self.element(elem)
        if not elem.raw:
            return FinCofSet.cofinite(self)
        if fqpoly.deg(elem.raw) == 0:
            return FinCofSet.empty(self)
        _, monic_part = fqpoly.monic(self.K, elem.raw)
        poly_budget = min(budget, fqpoly.DEFAULT_POLY_BUDGET)
        return FinCofSet.finite(
            self, (MaxIdealId(self, g)
                   for g, _ in fqpoly.factor_monic(self.K, monic_part, poly_budget)))

    def valuation(self, elem, ideal):
        elem = self.element(elem)
        raw = elem.raw
        if not raw:
            return INF
        v = 0
        while True:
            q, r = fqpoly.pdivmod(self.K, raw, ideal.generator)
            if r:
                return v
            raw = q
            v += 1


#: Convenient shared handle for the integers.
ZZ = IntegerRing()


# ---------------------------------------------------------------------------
# Module-level operation surface


def vset(ring: RingHandle, elem, budget: int = DEFAULT_FACTOR_BUDGET) -> FinCofSet:
    """The maximal ideals containing the element."""
    return ring.vset(elem, budget)


def dset(ring: RingHandle, elem, budget: int = DEFAULT_FACTOR_BUDGET) -> FinCofSet:
    """The maximal ideals avoiding the element (complement of vset)."""
    return ring.vset(elem, budget).complement()


def vset_pair(ring: RingHandle, a, b, budget: int = DEFAULT_FACTOR_BUDGET) -> FinCofSet:
    """The maximal ideals containing the ideal generated by both elements."""
    a, b = ring.element(a), ring.element(b)
    if isinstance(ring, IntegerRing):
        return ring.vset(ring.element(math.gcd(a.raw, b.raw)), budget)
    if isinstance(ring, ResidueRing):
        g = math.gcd(math.gcd(a.raw, b.raw), ring.modulus)
        return ring.vset(ring.element(g), budget)
    if isinstance(ring, LocalizedIntegersRing):
        ids = [m for m in ring.maximal_spectrum() if m.contains(a) and m.contains(b)]
        return FinCofSet.finite(ring, ids)
    if isinstance(ring, PolynomialRing):
        g = fqpoly.pgcd(ring.K, a.raw, b.raw)
        return ring.vset(ring.element(g), budget)
    raise UnsupportedRing(ring.short_name)


def valuation(ring: RingHandle, elem, ideal: MaxIdealId):
    """Exact exponent of the ideal's generator in the element; INF at zero."""
    if isinstance(ring, ResidueRing):
        raise UnsupportedRing("residue rings carry no discrete valuations")
    if ideal.ring != ring:
        raise InconsistentInput(f"{ideal} is not a maximal ideal of {ring.short_name}")
    return ring.valuation(elem, ideal)


def crt_solve(ring: RingHandle, congruences: Sequence) -> RingElement:
    """Solve r = residue_i mod ideal_i**exp_i over a PID-kind ring.

    ``congruences`` is a sequence of (MaxIdealId, exponent, residue) with
    pairwise distinct ideals.  The result is the canonical representative:
    smallest non-negative integer, or the remainder of least degree.
    """
    if isinstance(ring, ResidueRing):
        raise UnsupportedRing("residue rings are not PID kinds here")
    gens = [m.generator for m, _, _ in congruences]
    if len(set(gens)) != len(gens):
        raise InconsistentInput("repeated maximal ideals in congruence list")
    for m, e, _ in congruences:
        if m.ring != ring:
            raise InconsistentInput(f"{m} does not belong to {ring.short_name}")
        if e < 0:
            raise InconsistentInput("exponents must be non-negative")
    live = [(m, e, r) for m, e, r in congruences if e > 0]
    if not live:
        return ring.zero

    if isinstance(ring, PolynomialRing):
        K = ring.K
        x, modulus = (), (1,)
        for m, e, r in live:
            step = fqpoly.ppow(K, m.generator, e)
            r = ring.element(r).raw
            # solve x + modulus*t = r (mod step)
            d, u, _ = fqpoly.pxgcd(K, modulus, step)
            assert d == (1,), "moduli of distinct irreducibles are coprime"
            diff = fqpoly.pmod(K, fqpoly.psub(K, r, x), step)
            t = fqpoly.pmod(K, fqpoly.pmul(K, diff, u), step)
            x = fqpoly.padd(K, x, fqpoly.pmul(K, modulus, t))
            modulus = fqpoly.pmul(K, modulus, step)
            x = fqpoly.pmod(K, x, modulus)
        return ring.element(x)

    # integer-like kinds
    x, modulus = 0, 1
    for m, e, r in live:
        step = m.generator**e
        r = ring.element(r).raw
        if isinstance(r, Fraction):
            r = r.numerator * pow(r.denominator, -1, step) % step
        g, u, _ = xgcd(modulus, step)
        assert g == 1
        t = ((r - x) * u) % step
        x = (x + modulus * t) % (modulus * step)
        modulus *= step
    return ring.element(x)


def bezout_certificate(ring: RingHandle, elems: Sequence) -> list:
    """Coefficients c_i with sum(c_i * elems_i) == 1 exactly.

    Raises NotUnitIdeal (with a common maximal ideal as witness) when the
    elements do not generate the unit ideal.
    """
    elems = [ring.element(e) for e in elems]
    if not elems:
        raise NotUnitIdeal(ring.smallest_max_ideal())

    if isinstance(ring, (IntegerRing, ResidueRing)):
        raws = [e.raw for e in elems]
        values = raws + [ring.modulus] if isinstance(ring, ResidueRing) else raws
        g, coeffs = values[0], [1]
        for v in values[1:]:
            g2, x, y = xgcd(g, v)
            coeffs = [c * x for c in coeffs] + [y]
            g = g2
        if g != 1:
            if g == 0:
                witness = ring.smallest_max_ideal() if not isinstance(ring, ResidueRing) \
                    else ring.maximal_spectrum()[0]
            else:
                p = prime_factors(g)[0]
                witness = MaxIdealId(ring, p)
            raise NotUnitIdeal(witness)
        if isinstance(ring, ResidueRing):
            coeffs = coeffs[:-1]  # drop the modulus coefficient
        return [ring.element(c) for c in coeffs]

    if isinstance(ring, LocalizedIntegersRing):
        nonzero = [(i, e) for i, e in enumerate(elems) if e.raw != 0]
        if not nonzero:
            raise NotUnitIdeal(ring.maximal_spectrum()[0])
        parts = [(i, e, ring.s_part(e.raw)) for i, e in nonzero]
        g, coeffs = parts[0][2], [1]
        for _, _, m in parts[1:]:
            g2, x, y = xgcd(g, m)
            coeffs = [c * x for c in coeffs] + [y]
            g = g2
        if g != 1:
            p = next(p for p in ring.primes if g % p == 0)
            raise NotUnitIdeal(MaxIdealId(ring, p))
        out = [ring.zero for _ in elems]
        for (i, e, m), c in zip(parts, coeffs):
            out[i] = ring.element(Fraction(c) * Fraction(m) / e.raw)
        return out

    if isinstance(ring, PolynomialRing):
        K = ring.K
        g, coeffs = elems[0].raw, [(1,)]
        for e in elems[1:]:
            g2, x, y = fqpoly.pxgcd(K, g, e.raw)
            coeffs = [fqpoly.pmul(K, c, x) for c in coeffs] + [y]
            g = g2
        if fqpoly.deg(g) != 0:
            if not g:
                raise NotUnitIdeal(ring.smallest_max_ideal())
            _, monic_g = fqpoly.monic(K, g)
            factor = fqpoly.factor_monic(K, monic_g)[0][0]
            raise NotUnitIdeal(MaxIdealId(ring, factor))
        inv = K.inv(g[0])
        return [ring.element(fqpoly.pscale(K, inv, c)) for c in coeffs]

    raise UnsupportedRing(ring.short_name)


class ZeroMarker:
    """Marks a zero Jacobson radical (infinitely many maximal ideals)."""

    def __repr__(self):
        return "ZeroMarker"

    def __eq__(self, other):
        return isinstance(other, ZeroMarker)

    def __hash__(self):
        return hash("prodideals.ZeroMarker")


ZERO_MARKER = ZeroMarker()


def jacobson_radical_generator(ring: RingHandle):
    """A generator of the intersection of all maximal ideals."""
    if isinstance(ring, (IntegerRing, PolynomialRing)):
        return ZERO_MARKER
    if isinstance(ring, ResidueRing):
        rad = math.prod(ring._primes)
        return ring.element(rad)
    if isinstance(ring, LocalizedIntegersRing):
        return ring.element(math.prod(ring.primes))
    raise UnsupportedRing(ring.short_name)
