"""Separating-element properties of the catalog rings, with witnesses.

A ring satisfies the weak separation property when for every r and nonzero a
there is a d lying in every maximal ideal that contains a but not r, and in
no maximal ideal containing r.  It satisfies the strong separation property
when for every r some d has exactly the complement of r's vanishing set as
its own vanishing set.

Every catalog ring has finite character, so the weak witness is simply the
product of the generators of the finitely many maximal ideals that must
contain d.  The strong property is a catalog-level fact: it holds for
residue rings (zero-dimensional) and localized integers (nonzero Jacobson
radical), and fails for the integers and polynomial rings, where the
complement of a nonempty finite vanishing set is an infinite coinfinite set
that no vanishing set can match.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoWitness, UnsupportedRing, ZeroElement
from .rings import (
    DEFAULT_FACTOR_BUDGET,
    FinCofSet,
    IntegerRing,
    LocalizedIntegersRing,
    MaxIdealId,
    PolynomialRing,
    ResidueRing,
    RingElement,
    RingHandle,
    xgcd,
)

RULE_PLUS_FINITE_CHARACTER = "rule:plus-finite-character-product"
RULE_PLUSPLUS_ZERO_DIMENSIONAL = "rule:plusplus-zero-dimensional"
RULE_PLUSPLUS_NONZERO_JACOBSON = "rule:plusplus-nonzero-jacobson"
RULE_PLUSPLUS_COFINITE_GAP = "rule:plusplus-fails-infinite-cofinite-gap"


@dataclass(frozen=True)
class PlusWitness:
    d: RingElement
    lower: FinCofSet   # must-contain set: maximal ideals with a but not r
    upper: FinCofSet   # allowed set: maximal ideals avoiding r
    vset_d: FinCofSet

    def __post_init__(self):
        assert self.lower.issubset(self.vset_d)
        assert self.vset_d.issubset(self.upper)


def _generator_product(ring: RingHandle, ideals) -> RingElement:
    out = ring.one
    for m in ideals:
        out = out * ring.element(m.generator)
    return out


def plus_witness(ring: RingHandle, r, a,
                 budget: int = DEFAULT_FACTOR_BUDGET) -> PlusWitness:
    """A separating element for (r, a): product of the generators of the
    maximal ideals containing a but not r (the empty product is one).

    Finite character makes the ideal set finite, so the product exists; both
    containments are re-verified exactly before returning.  Nonzero means a
    literal nonzero value, also in rings with zero divisors.
    """
    r = ring.element(r)
    a = ring.element(a)
    if a.is_zero:
        raise ZeroElement("a must be nonzero")
    upper = ring.vset(r, budget).complement()
    lower = ring.vset(a, budget).intersection(upper)
    d = _generator_product(ring, lower.sorted_support())
    return PlusWitness(d, lower, upper, ring.vset(d, budget))


@dataclass(frozen=True)
class PlusPlusVerdict:
    ring: RingHandle
    holds: bool
    rule: str
    obstruction: RingElement  # None when the property holds

    def __bool__(self):
        return self.holds


def plusplus_check(ring: RingHandle) -> PlusPlusVerdict:
    """Catalog-level verdict for the strong separation property."""
    if isinstance(ring, ResidueRing):
        return PlusPlusVerdict(ring, True, RULE_PLUSPLUS_ZERO_DIMENSIONAL, None)
    if isinstance(ring, LocalizedIntegersRing):
        return PlusPlusVerdict(ring, True, RULE_PLUSPLUS_NONZERO_JACOBSON, None)
    if isinstance(ring, (IntegerRing, PolynomialRing)):
        # the complement of the vanishing set of a nonzero nonunit is
        # cofinite with nonempty exclusion; vanishing sets are finite
        # (nonzero elements) or everything (zero): no match exists
        return PlusPlusVerdict(ring, False, RULE_PLUSPLUS_COFINITE_GAP,
                               ring.nonzero_nonunit())
    raise UnsupportedRing(ring.short_name)


def plusplus_witness(ring: RingHandle, r,
                     budget: int = DEFAULT_FACTOR_BUDGET) -> RingElement:
    """An element d whose vanishing set is exactly the complement of r's.

    Where the property holds the witness is built as in the idempotent
    construction: modulo the (squarefree) Jacobson radical generator the
    class of r generates the same ideal as an idempotent e, and d lifts
    1 - e; the canonical lift is the smallest non-negative representative.
    For the integers and polynomial rings the witness only exists at zero
    (d = 1) and at units (d = 0); anything else raises NoWitness.
    """
    r = ring.element(r)
    if isinstance(ring, (IntegerRing, PolynomialRing)):
        if r.is_zero:
            return ring.one
        if r.is_unit:
            return ring.zero
        raise NoWitness(r, f"the complement of the vanishing set of {r!r} is "
                           "infinite and coinfinite; no vanishing set matches it")
    if isinstance(ring, ResidueRing):
        primes = ring._primes
        value = r.raw
    elif isinstance(ring, LocalizedIntegersRing):
        primes = ring.primes
        value = r.raw.numerator
    else:
        raise UnsupportedRing(ring.short_name)
    # e = 1 at primes not containing r, 0 at primes containing r; d lifts 1-e
    m = math.prod(primes)
    e = _crt_int([(p, 0 if value % p == 0 else 1) for p in primes], m)
    d = (1 - e) % m
    witness = ring.element(d)
    assert ring.vset(witness, budget) == ring.vset(r, budget).complement()
    return witness


def _crt_int(congruences, modulus: int) -> int:
    x, mod = 0, 1
    for p, res in congruences:
        g, u, _ = xgcd(mod, p)
        assert g == 1
        t = ((res - x) * u) % p
        x += mod * t
        mod *= p
    return x % modulus


def one_dim_plus_witness(ring: RingHandle, r, a,
                         budget: int = DEFAULT_FACTOR_BUDGET) -> RingElement:
    """The separating element obtained through the idempotent route.

    Let Z be the intersection of the maximal ideals containing a but not r,
    generated by the product z of their generators.  Every one of those
    ideals avoids r, so r is a unit modulo Z and the idempotent generating
    the same class is 1 itself; d = 1 - e then lives in Z, and the canonical
    nonzero lift is z.  (The lift 0 is only admissible when r is a unit.)
    The result satisfies the same two containments as plus_witness.
    """
    if isinstance(ring, ResidueRing):
        raise UnsupportedRing("domain kinds only")
    r = ring.element(r)
    a = ring.element(a)
    if a.is_zero:
        raise ZeroElement("a must be nonzero")
    upper = ring.vset(r, budget).complement()
    lower = ring.vset(a, budget).intersection(upper)
    # d must lie in Z and avoid every maximal ideal of r; the lift 0 of
    # 1 - e is admissible only for units r, so the generator z of Z is the
    # canonical choice (z = 1 for empty Z, covering the unit case too)
    d = _generator_product(ring, lower.sorted_support())
    assert lower.issubset(ring.vset(d, budget))
    assert ring.vset(d, budget).issubset(upper)
    return d
