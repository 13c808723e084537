"""Weighted-graded commutative polynomial algebras with exact quotients.

A ``QuotientAlgebra`` is built from a generator set with positive integer
weights, a list of ideal generators, and a truncation degree D.  Construction
enumerates every monomial of degree <= D, row-reduces the span of all ideal
multiples over an exact field, and keeps the non-pivot monomials as the
normal-form basis.  The monomial order eliminates high exponents of heavier
generators first, so low-s monomials survive as basis representatives.

Ideal generators may be inhomogeneous (a filtered quotient); the truncation
then silently kills every monomial of degree > D instead of raising.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import rref
from .scalars import Scalar


class DegreeOverflow(ArithmeticError):
    """A product left the truncated degree range of a graded algebra."""


class NonHomogeneousIdeal(ValueError):
    pass


def _is_zero(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


class GeneratorSet:
    """Ordered generator symbols with positive integer weights."""

    def __init__(self, names, weights):
        names = tuple(names)
        weights = tuple(int(w) for w in weights)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        if len(names) != len(weights) or any(w < 1 for w in weights):
            raise ValueError("need one weight >= 1 per generator")
        self.names = names
        self.weights = weights

    def degree(self, mono):
        return sum(e * w for e, w in zip(mono, self.weights))

    def monomials_of_degree(self, d):
        """All exponent tuples of weighted degree exactly d."""
        out = []

        def rec(i, rem, acc):
            if i == len(self.weights) - 1:
                w = self.weights[i]
                if rem % w == 0:
                    out.append(tuple(acc + [rem // w]))
                return
            w = self.weights[i]
            for e in range(rem // w + 1):
                rec(i + 1, rem - e * w, acc + [e])

        if len(self.weights) == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        return out

    def elimination_key(self, mono):
        # heavier generators first, high exponents first: those monomials are
        # preferred as pivots, leaving low-weight monomials in the basis
        order = sorted(range(len(self.weights)),
                       key=lambda i: (-self.weights[i], i))
        return tuple(-mono[i] for i in order)

    def format_monomial(self, mono):
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            prod = c1 * c2
            out[m] = out[m] + prod if m in out else prod
    return {m: c for m, c in out.items() if not _is_zero(c)}


class GradedElement:
    """Sparse polynomial supported on the normal-form basis of its algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if not _is_zero(c)}

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({self.algebra.gens.degree(m) for m in self.terms})

    def homogeneous_part(self, d):
        gens = self.algebra.gens
        return GradedElement(self.algebra,
                             {m: c for m, c in self.terms.items()
                              if gens.degree(m) == d})

    def __add__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GradedElement(self.algebra, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GradedElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        return GradedElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, hash(c)) for m, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        gens = self.algebra.gens
        bits = [f"({c})*{gens.format_monomial(m)}" for m, c in sorted(self.terms.items())]
        return " + ".join(bits)


class QuotientAlgebra:
    """Truncated quotient of a weighted polynomial ring by per-degree row reduction."""

    def __init__(self, gens, ideal, truncation, field_zero=Fraction(0),
                 field_one=Fraction(1), require_homogeneous=True,
                 zero_above_truncation=False):
        self.gens = gens
        self.truncation = int(truncation)
        self.field_zero = field_zero
        self.field_one = field_one
        self.require_homogeneous = require_homogeneous
        # set when every monomial above the truncation degree genuinely
        # vanishes in the quotient, so products may be truncated silently
        self.zero_above_truncation = zero_above_truncation
        self.ideal = [dict(g) for g in ideal]
        self._build()

    # -- construction ----------------------------------------------------

    def _column_order(self):
        cols = []
        for d in range(self.truncation + 1):
            monos = sorted(self.gens.monomials_of_degree(d),
                           key=self.gens.elimination_key)
            cols.extend(monos)
        return cols

    def _build(self):
        gens = self.gens
        D = self.truncation
        self.ideal = [g for g in self.ideal if g]
        for g in self.ideal:
            degs = {gens.degree(m) for m in g}
            if self.require_homogeneous and len(degs) > 1:
                raise NonHomogeneousIdeal(f"ideal generator mixes degrees {sorted(degs)}")

        self.columns = self._column_order()
        self.col_index = {m: i for i, m in enumerate(self.columns)}
        ncols = len(self.columns)

        rows = []
        for g in self.ideal:
            w = min(gens.degree(m) for m in g)
            for d in range(D - w + 1):
                for m in gens.monomials_of_degree(d):
                    prod = {}
                    for mg, c in g.items():
                        mm = mono_mul(m, mg)
                        if gens.degree(mm) <= D:
                            prod[mm] = prod.get(mm, self.field_zero) + c
                    row = [self.field_zero] * ncols
                    nonzero = False
                    for mm, c in prod.items():
                        if not _is_zero(c):
                            row[self.col_index[mm]] = c
                            nonzero = True
                    if nonzero:
                        rows.append(row)

        reduced, pivots = rref(rows, ncols, self.field_zero, self.field_one)
        pivot_set = set(pivots)

        self.basis = {d: [] for d in range(D + 1)}
        for i, m in enumerate(self.columns):
            if i not in pivot_set:
                self.basis[self.gens.degree(m)].append(m)
        for d in self.basis:
            # display order: low exponents of heavy generators first
            self.basis[d] = sorted(self.basis[d],
                                   key=lambda m: tuple(reversed(self.gens.elimination_key(m))))

        # reduction map: every monomial (degree <= D) -> basis coordinates
        self.reduction = {}
        for d in range(D + 1):
            for m in self.gens.monomials_of_degree(d):
                self.reduction[m] = None  # filled below
        for m in self.reduction:
            if self.col_index[m] not in pivot_set:
                self.reduction[m] = {m: self.field_one}
        for row, p in zip(reduced, pivots):
            mono = self.columns[p]
            expansion = {}
            for j, c in enumerate(row):
                if j != p and not _is_zero(c):
                    expansion[self.columns[j]] = self.field_zero - c
            self.reduction[mono] = expansion

        self.basis_index = {
            d: {m: i for i, m in enumerate(self.basis[d])} for d in self.basis
        }

    # -- the algebra interface --------------------------------------------

    def zero(self):
        return GradedElement(self, {})

    def one(self):
        unit = tuple(0 for _ in self.gens.names)
        return GradedElement(self, {unit: Fraction(1)})

    def element(self, terms):
        """Normal form of a raw {monomial exponent tuple: coefficient} dict."""
        return self.normal_form_raw(terms)

    def generator(self, name):
        i = self.gens.names.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(self.gens.names)))
        return self.normal_form_raw({mono: Fraction(1)})

    def basis_element(self, d, i):
        return GradedElement(self, {self.basis[d][i]: Fraction(1)})

    def normal_form_raw(self, terms):
        out = {}
        for m, c in terms.items():
            if _is_zero(c):
                continue
            d = self.gens.degree(m)
            if d > self.truncation:
                if self.zero_above_truncation or not self.require_homogeneous:
                    continue
                raise DegreeOverflow(
                    f"degree {d} exceeds truncation {self.truncation}")
            for bm, r in self.reduction[m].items():
                v = c * r
                out[bm] = out[bm] + v if bm in out else v
        return GradedElement(self, out)

    def normal_form(self, x):
        if isinstance(x, GradedElement):
            return self.normal_form_raw(x.terms)
        return self.normal_form_raw(x)

    def multiply(self, x, y):
        return self.normal_form_raw(poly_mul(x.terms, y.terms))

    def hilbert_series(self):
        return [len(self.basis[d]) for d in range(self.truncation + 1)]

    def dimension(self, d):
        return len(self.basis[d])

    def coordinates(self, x, d):
        """Coordinate vector of the degree-d part of x on the degree-d basis."""
        idx = self.basis_index[d]
        vec = [Fraction(0)] * len(idx)
        for m, c in x.terms.items():
            if self.gens.degree(m) == d:
                vec[idx[m]] = c
        return vec

    def describe(self):
        return {
            "generators": list(self.gens.names),
            "weights": list(self.gens.weights),
            "truncation": self.truncation,
            "hilbert": self.hilbert_series(),
            "ideal": [
                {self.gens.format_monomial(m): str(c) for m, c in g.items()}
                for g in self.ideal
            ],
        }


def build_quotient(names, weights, ideal, truncation, **kw):
    return QuotientAlgebra(GeneratorSet(names, weights), ideal, truncation, **kw)


class LinearFunctional:
    """Values on normal-form basis monomials; extended linearly."""

    def __init__(self, algebra, values):
        self.algebra = algebra
        self.values = dict(values)

    def __call__(self, x):
        x = self.algebra.normal_form(x)
        total = None
        for m, c in x.terms.items():
            if m in self.values:
                v = c * self.values[m]
                total = v if total is None else total + v
        if total is None:
            return Scalar.zero()
        return total


def pairing_matrix(algebra, k, functional, left=None, right=None, top=None):
    """Poincare pairing block M[i][j] = functional(nu_i * phi_j).

    ``left`` defaults to the degree-k basis, ``right`` to the complementary
    basis in degree top-k (top defaults to the truncation degree).
    """
    top = algebra.truncation if top is None else top
    if left is None:
        left = [algebra.basis_element(k, i) for i in range(algebra.dimension(k))]
    if right is None:
        right = [algebra.basis_element(top - k, j)
                 for j in range(algebra.dimension(top - k))]
    return [[functional(algebra.multiply(nu, phi)) for phi in right] for nu in left]


class TensorTable:
    """Bidegree-indexed exact coefficients on basis x basis pairs.

    Legs are addressed as (degree, index) into per-degree ordered bases.  The
    table carries its group/normalization/basis tags so emitted documents are
    never ambiguous about conventions.
    """

    def __init__(self, group, dim, normalization, basis, entries=None,
                 basis_labels=None):
        self.group = group
        self.dim = dim
        self.normalization = normalization
        self.basis = basis
        self.entries = dict(entries or {})
        self.basis_labels = basis_labels or {}

    def set(self, left, right, coeff):
        if _is_zero(coeff):
            self.entries.pop((left, right), None)
        else:
            self.entries[(left, right)] = coeff

    def add(self, left, right, coeff):
        key = (left, right)
        cur = self.entries.get(key)
        new = coeff if cur is None else cur + coeff
        self.set(left, right, new)

    def get(self, left, right, zero=None):
        return self.entries.get((left, right), Scalar.zero() if zero is None else zero)

    def swapped(self):
        out = TensorTable(self.group, self.dim, self.normalization, self.basis,
                          basis_labels=self.basis_labels)
        for (l, r), c in self.entries.items():
            out.add(r, l, c)
        return out

    def is_swap_symmetric(self):
        return self.swapped().entries == self.entries

    def scaled(self, c):
        out = TensorTable(self.group, self.dim, self.normalization, self.basis,
                          basis_labels=self.basis_labels)
        for (l, r), v in self.entries.items():
            out.add(l, r, c * v)
        return out

    def map_legs(self, left_map=None, right_map=None, basis=None):
        """Apply per-degree linear maps (deg, i) -> {(deg', i'): coeff} to the legs."""
        out = TensorTable(self.group, self.dim, self.normalization,
                          basis or self.basis, basis_labels=self.basis_labels)
        for (l, r), c in self.entries.items():
            limg = left_map(l) if left_map else {l: 1}
            rimg = right_map(r) if right_map else {r: 1}
            for l2, cl in limg.items():
                for r2, cr in rimg.items():
                    out.add(l2, r2, c * cl * cr)
        return out

    def __eq__(self, other):
        return isinstance(other, TensorTable) and self.entries == other.entries

    def sorted_items(self):
        return sorted(self.entries.items(),
                      key=lambda kv: (kv[0][0][0], kv[0][0][1], kv[0][1][0], kv[0][1][1]))
