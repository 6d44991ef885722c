"""Finite products of catalog rings and their induced ideals.

Ideal descriptors come in four kinds:

* ``UltrafilterIdeal(u)`` -- elements whose tuple of vanishing sets belongs
  to the ultrafilter ``u``.
* ``KernelIdeal(f)`` -- elements vanishing at the concentration coordinate
  of the index ultrafilter ``f`` (the prototype of a minimal prime).
* ``PointwiseMaxIdeal(f, M)`` -- elements lying in M at the concentration
  coordinate.
* ``ValuationIdeal(u, g)`` -- the valuation-threshold ideal attached to an
  ultrafilter and a positive value vector.

The index set is finite, so every ultrafilter on it is principal and every
descriptor is decidable by a closed form; the test suite re-verifies the
closed forms against element-level brute force on finite instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .boolalg import AlgebraElement, UltrafilterDescriptor, membership
from .errors import (
    InconsistentInput,
    NotUnitIdeal,
    ShapeMismatch,
    UnsupportedDescriptor,
)
from .rings import (
    DEFAULT_FACTOR_BUDGET,
    FinCofSet,
    MaxIdealId,
    RingElement,
    RingHandle,
    bezout_certificate,
)


@dataclass(frozen=True)
class ProductRing:
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InconsistentInput("a product needs at least one component")
        for r in comps:
            if not isinstance(r, RingHandle):
                raise InconsistentInput(f"not a ring handle: {r!r}")
        object.__setattr__(self, "components", comps)

    @property
    def shape(self) -> tuple:
        return self.components

    @property
    def size(self) -> int:
        return len(self.components)

    def element(self, values) -> "ProductElement":
        values = list(values)
        if len(values) != self.size:
            raise ShapeMismatch(
                f"expected {self.size} entries, got {len(values)}")
        return ProductElement(
            self, tuple(r.element(v) for r, v in zip(self.components, values)))

    @property
    def zero(self) -> "ProductElement":
        return ProductElement(self, tuple(r.zero for r in self.components))

    @property
    def one(self) -> "ProductElement":
        return ProductElement(self, tuple(r.one for r in self.components))

    def indicator(self, support) -> "ProductElement":
        """The element with entry one at the listed coordinates, zero elsewhere."""
        support = set(support)
        return ProductElement(
            self, tuple(r.one if i in support else r.zero
                        for i, r in enumerate(self.components)))

    def __repr__(self):
        return " x ".join(r.short_name for r in self.components)


@dataclass(frozen=True)
class ProductElement:
    ring: ProductRing
    entries: tuple

    def _check(self, other: "ProductElement"):
        if self.ring != other.ring:
            raise ShapeMismatch("elements of different products")

    def __add__(self, other):
        self._check(other)
        return ProductElement(self.ring,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check(other)
        return ProductElement(self.ring,
                              tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, other):
        self._check(other)
        return ProductElement(self.ring,
                              tuple(a * b for a, b in zip(self.entries, other.entries)))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def __repr__(self):
        return "(" + ", ".join(r._repr_raw(e.raw)
                               for r, e in zip(self.ring.components, self.entries)) + ")"


@dataclass(frozen=True)
class IndexUltrafilter:
    """An ultrafilter on the (finite) index set: always principal."""

    coordinate: int

    def __repr__(self):
        return f"IndexPrincipal({self.coordinate})"


# ---------------------------------------------------------------------------
# Ideal descriptors


@dataclass(frozen=True)
class UltrafilterIdeal:
    product: ProductRing
    u: UltrafilterDescriptor

    def __post_init__(self):
        if self.u.shape != self.product.shape:
            raise ShapeMismatch("ultrafilter over a different shape")


@dataclass(frozen=True)
class KernelIdeal:
    product: ProductRing
    f: IndexUltrafilter

    def __post_init__(self):
        if not 0 <= self.f.coordinate < self.product.size:
            raise ShapeMismatch("index out of range")


@dataclass(frozen=True)
class PointwiseMaxIdeal:
    product: ProductRing
    f: IndexUltrafilter
    ideals: tuple  # one MaxIdealId per coordinate

    def __post_init__(self):
        object.__setattr__(self, "ideals", tuple(self.ideals))
        if len(self.ideals) != self.product.size:
            raise ShapeMismatch("need one maximal ideal per coordinate")
        for r, m in zip(self.product.components, self.ideals):
            if m.ring != r:
                raise InconsistentInput(f"{m} does not belong to {r.short_name}")
        if not 0 <= self.f.coordinate < self.product.size:
            raise ShapeMismatch("index out of range")


@dataclass(frozen=True)
class ValuationIdeal:
    product: ProductRing
    u: UltrafilterDescriptor
    g: object  # ValueVector

    def __post_init__(self):
        if self.u.shape != self.product.shape:
            raise ShapeMismatch("ultrafilter over a different shape")
        if self.g.shape != self.product.shape:
            raise ShapeMismatch("value vector over a different shape")


# ---------------------------------------------------------------------------
# Operations


def vset_vector(a: ProductElement, budget: int = DEFAULT_FACTOR_BUDGET) -> AlgebraElement:
    """The tuple of coordinatewise vanishing sets of a product element."""
    return AlgebraElement(tuple(r.vset(e, budget)
                                for r, e in zip(a.ring.components, a.entries)))


def ideal_member(ideal, a: ProductElement) -> bool:
    """Exact membership test for each descriptor kind.

    For ultrafilter ideals the defining test is membership of the vanishing
    tuple in the ultrafilter; over the catalog this reduces to a division
    test at a principal descriptor and to a zero test at a cofinite one
    (a vanishing set is cofinite exactly for the zero element, by finite
    character), so no factorization is needed.
    """
    if isinstance(ideal, UltrafilterIdeal):
        if a.ring != ideal.product:
            raise ShapeMismatch("element of a different product")
        u = ideal.u
        entry = a.entries[u.coordinate]
        if u.is_frechet:
            return entry.is_zero
        return u.principal.contains(entry)
    if isinstance(ideal, KernelIdeal):
        if a.ring != ideal.product:
            raise ShapeMismatch("element of a different product")
        return a.entries[ideal.f.coordinate].is_zero
    if isinstance(ideal, PointwiseMaxIdeal):
        if a.ring != ideal.product:
            raise ShapeMismatch("element of a different product")
        i = ideal.f.coordinate
        return ideal.ideals[i].contains(a.entries[i])
    if isinstance(ideal, ValuationIdeal):
        from .valuations import ug_member
        return ug_member(ideal.u, ideal.g, a)
    raise UnsupportedDescriptor(f"unknown descriptor {ideal!r}")


def is_prime(ideal) -> bool:
    """Primality verdict for a descriptor.

    Ultrafilter ideals are prime (the vanishing tuple of a product is the
    join of the factors' tuples, and an ultrafilter picks a side of every
    join).  Kernel and pointwise ideals are prime exactly when the quotient
    they induce -- the concentration-coordinate ring, or its residue field
    -- has no zero divisors.  Valuation-threshold ideals are prime for
    positive vectors; a vector with a zero position is rejected.
    """
    if isinstance(ideal, UltrafilterIdeal):
        return True
    if isinstance(ideal, KernelIdeal):
        return ideal.product.components[ideal.f.coordinate].is_domain
    if isinstance(ideal, PointwiseMaxIdeal):
        return True  # quotient is the residue field at the concentration coordinate
    if isinstance(ideal, ValuationIdeal):
        if not ideal.g.everywhere_positive:
            raise UnsupportedDescriptor(
                "valuation-threshold ideals need a positive value vector")
        return True
    raise UnsupportedDescriptor(f"unknown descriptor {ideal!r}")


@dataclass(frozen=True)
class MaximalityVerdict:
    is_maximal: bool
    rule: str
    witness: object  # ProductElement | None
    detail: str

    def __bool__(self):
        return self.is_maximal


#: provenance tags used in reports
RULE_PRINCIPAL_QUOTIENT_FIELD = "rule:principal-quotient-field"
RULE_FRECHET_NO_COFINITE_VANISHING = "rule:frechet-no-cofinite-vanishing"


def is_maximal(ideal: UltrafilterIdeal) -> MaximalityVerdict:
    """Decide maximality of an ultrafilter ideal, with witness or obstruction.

    Principal descriptor: the ideal is the pullback of one maximal ideal
    along a projection, so the quotient is a field and the ideal is maximal.
    When every component admits a nonzero element vanishing exactly where
    needed, a witness tuple a with all entries nonzero and vanishing-set
    tuple inside the ultrafilter is returned (entry: the generator at the
    concentration coordinate, a nonzero nonunit elsewhere, any nonzero
    element over a field).  At a field concentration coordinate no such
    tuple exists and the verdict rests on the quotient argument alone.

    Cofinite descriptor: membership forces a cofinite vanishing set at the
    coordinate, which by finite character happens only for the zero element;
    the ideal is the projection kernel, its quotient is the component ring,
    not a field -- never maximal.
    """
    u = ideal.u
    product = ideal.product
    if u.is_frechet:
        ring = product.components[u.coordinate]
        return MaximalityVerdict(
            False, RULE_FRECHET_NO_COFINITE_VANISHING, None,
            f"no nonzero element of {ring.short_name} vanishes on a cofinite "
            f"set of maximal ideals; the ideal is the kernel of the projection "
            f"and the quotient {ring.short_name} is not a field")
    entries = []
    witness_ok = True
    for i, ring in enumerate(product.components):
        if i == u.coordinate:
            gen_elem = ring.element(u.principal.generator)
            if gen_elem.is_zero:
                # field component: the generator reduces to zero and no
                # nonzero element lies in the maximal ideal
                witness_ok = False
                break
            entries.append(gen_elem)
        else:
            nzn = ring.nonzero_nonunit()
            entries.append(nzn if nzn is not None else ring.one)
    if witness_ok:
        witness = ProductElement(product, tuple(entries))
        assert membership(u, vset_vector(witness))
        detail = "witness tuple has nonzero entries and vanishing sets inside the ultrafilter"
    else:
        witness = None
        detail = ("concentration coordinate is a field: maximality holds via the "
                  "field quotient, no nonzero-entry witness exists")
    return MaximalityVerdict(True, RULE_PRINCIPAL_QUOTIENT_FIELD, witness, detail)


def index_filter_of(u: UltrafilterDescriptor) -> IndexUltrafilter:
    """The induced ultrafilter on the index set (nonempty-coordinate map).

    Every member of the ultrafilter is nonempty at the concentration
    coordinate, and some member is empty everywhere else, so the induced
    family is the principal ultrafilter at that coordinate.
    """
    return IndexUltrafilter(u.coordinate)


def minimal_prime_below(ideal: UltrafilterIdeal) -> KernelIdeal:
    """The unique minimal prime below the ultrafilter ideal.

    Returns the kernel ideal at the induced index ultrafilter.  The
    containment is re-verified on indicator elements: the tuple vanishing
    exactly at the concentration coordinate lies in both ideals.
    """
    f = index_filter_of(ideal.u)
    kernel = KernelIdeal(ideal.product, f)
    others = [i for i in range(ideal.product.size) if i != f.coordinate]
    chi = ideal.product.indicator(others)
    assert ideal_member(kernel, chi)
    assert ideal_member(ideal, chi)
    return kernel


def enumerate_maximal_ideals(product: ProductRing, bound: int = None) -> list:
    """All maximal ideals whose descriptors respect the generator bound.

    Complete for all-finite-spectrum products; for infinite spectra the
    principal descriptors are complete up to the bound and the cofinite
    descriptors are rejected as non-maximal.
    """
    from .boolalg import enumerate_ultrafilters
    out = []
    for u in enumerate_ultrafilters(product.shape, bound):
        ideal = UltrafilterIdeal(product, u)
        if is_maximal(ideal):
            out.append(ideal)
    return out


@dataclass(frozen=True)
class SkolemResult:
    holds: bool
    certificate: tuple  # coefficient ProductElements, or ()
    witness: tuple      # (coordinate, MaxIdealId) or ()


def skolem_check(elems: Sequence[ProductElement],
                 budget: int = DEFAULT_FACTOR_BUDGET) -> SkolemResult:
    """Certify that coordinatewise unit generation lifts to the product.

    If at every coordinate the entries generate the unit ideal, coefficient
    tuples with sum(c_i * a_i) = 1 are assembled coordinatewise; otherwise a
    coordinate and a maximal ideal containing every entry are returned.
    """
    elems = list(elems)
    if not elems:
        raise InconsistentInput("need at least one element")
    product = elems[0].ring
    for e in elems[1:]:
        if e.ring != product:
            raise ShapeMismatch("elements of different products")
    columns = []
    for i, ring in enumerate(product.components):
        try:
            coeffs = bezout_certificate(ring, [e.entries[i] for e in elems])
        except NotUnitIdeal as exc:
            return SkolemResult(False, (), (i, exc.witness))
        columns.append(coeffs)
    certificate = tuple(
        ProductElement(product, tuple(columns[i][j] for i in range(product.size)))
        for j in range(len(elems)))
    total = product.zero
    for c, e in zip(certificate, elems):
        total = total + c * e
    assert total == product.one
    return SkolemResult(True, certificate, ())
