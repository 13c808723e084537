"""Classical integral geometry of (R^n, SO(n)).

Intrinsic-volume bases and conversions, Steiner polynomials on template
bodies, the kinematic and additive coproducts with explicit normalization
tags, Crofton/Cauchy constants, and the unit-coefficient rescaling of both
coproducts.

Normalizations.  "standard" means the motion measure is the product of
Lebesgue measure on translations with the probability measure on rotations,
so the measure of motions taking the origin into E equals vol(E).  "unit"
rescales the motion measure so the kinematic table in the t basis has all
coefficients 1.  Additive tables always use the probability rotation measure.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .graded import GradedElement, TensorTable, build_quotient, LinearFunctional
from .scalars import Scalar, alpha, binomial, factorial, omega


@lru_cache(maxsize=None)
def so_algebra(n):
    """The algebra of SO(n)-invariant valuations: one generator t, t^{n+1} = 0."""
    return build_quotient(("t",), (1,), [{(n + 1,): Fraction(1)}], n,
                           zero_above_truncation=True)


def t_power(n, i):
    return GradedElement(so_algebra(n), {(i,): Fraction(1)})


def t_mu_coefficient(i):
    """The exact c_i with t^i = c_i * mu_i."""
    return omega(i) * Scalar.pi_power(-i, factorial(i))


def mu_in_t(n, i):
    """mu_i as an element of the t-algebra."""
    return t_power(n, i).scale(t_mu_coefficient(i).inverse())


def mu_ball(n, i, radius=1):
    """mu_i of the ball of the given radius in R^n."""
    r = Fraction(radius)
    return omega(n) * omega(n - i).inverse() * Scalar.from_rational(binomial(n, i) * r ** i)


def psi_coefficient(n, i):
    """c with psi_i = c * t^i (psi_i = mu_i / mu_i(B_1), so psi_i(B_r) = r^i)."""
    return (t_mu_coefficient(i) * mu_ball(n, i)).inverse()


def volume_functional(n):
    """Top-degree functional normalized so vol corresponds to 1."""
    return LinearFunctional(so_algebra(n), {(n,): t_mu_coefficient(n)})


# -- template bodies ---------------------------------------------------------

class TemplateBody:
    """Bodies with exactly computable intrinsic volumes: balls and boxes.

    Segments and points are degenerate boxes.  Sizes are exact rationals.
    """

    def __init__(self, kind, **params):
        if kind == "ball":
            radius = Fraction(params["radius"])
            if radius <= 0:
                raise ValueError("ball radius must be positive")
            self.params = {"radius": radius}
        elif kind == "box":
            sides = tuple(Fraction(s) for s in params["sides"])
            if any(s < 0 for s in sides):
                raise ValueError("box sides must be nonnegative")
            self.params = {"sides": sides}
        elif kind == "segment":
            kind = "box"
            self.params = {"sides": (Fraction(params["length"]),)}
        elif kind == "point":
            kind = "box"
            self.params = {"sides": ()}
        else:
            raise ValueError(f"unknown template body kind {kind!r}")
        self.kind = kind

    @staticmethod
    def ball(radius):
        return TemplateBody("ball", radius=radius)

    @staticmethod
    def box(*sides):
        return TemplateBody("box", sides=sides)

    @staticmethod
    def point():
        return TemplateBody("point")


def _elementary_symmetric(values, i):
    sigma = [Fraction(1)] + [Fraction(0)] * len(values)
    top = 0
    for v in values:
        top += 1
        for j in range(min(top, len(sigma) - 1), 0, -1):
            sigma[j] += v * sigma[j - 1]
    return sigma[i] if i < len(sigma) else Fraction(0)


def intrinsic_volume(body, n, i):
    """Exact mu_i of a template body embedded in R^n."""
    if not 0 <= i <= n:
        raise ValueError(f"mu_{i} undefined in R^{n}")
    if body.kind == "ball":
        return mu_ball(n, i, body.params["radius"])
    sides = body.params["sides"]
    if len(sides) > n:
        raise ValueError("box has more sides than ambient dimension")
    return Scalar.from_rational(_elementary_symmetric(sides, i))


def steiner_polynomial(body, n):
    """Tube-volume polynomial: coefficient of r^j in vol of the r-neighborhood."""
    return {n - i: omega(n - i) * intrinsic_volume(body, n, i) for i in range(n + 1)}


# -- valuations and display bases --------------------------------------------

BASIS_TAGS = ("t", "mu", "psi", "nijenhuis")


class SOValuation:
    """An SO(n)-invariant valuation, stored in the t basis."""

    def __init__(self, n, element, basis="t"):
        if basis not in BASIS_TAGS:
            raise ValueError(f"unknown basis {basis!r}")
        self.n = n
        self.element = element
        self.basis = basis

    @classmethod
    def from_coeffs(cls, n, coeffs, basis="t"):
        """Build from {degree: coefficient} in the given display basis."""
        el = so_algebra(n).zero()
        for i, c in coeffs.items():
            el = el + t_power(n, i).scale(_so_basis_coeff(n, basis, i) * c)
        return cls(n, el)

    @classmethod
    def chi(cls, n):
        return cls(n, t_power(n, 0))

    @classmethod
    def volume(cls, n):
        return cls.from_coeffs(n, {n: Scalar.one()}, basis="mu")

    def t_coeffs(self):
        return {m[0]: c for m, c in self.element.terms.items()}

    def in_basis(self, basis):
        coeffs = {}
        for i, c in self.t_coeffs().items():
            coeffs[i] = c * _so_basis_coeff(self.n, basis, i).inverse()
        return {i: c for i, c in coeffs.items() if not c.is_zero()}

    def __mul__(self, other):
        return SOValuation(self.n, self.element * other.element)

    def __add__(self, other):
        return SOValuation(self.n, self.element + other.element)

    def scale(self, c):
        return SOValuation(self.n, self.element.scale(c))


def fourier_so(n, val):
    """Degree-reversing transform fixed by Klain complementarity: mu_k -> mu_{n-k}."""
    out = so_algebra(n).zero()
    for k, c in val.t_coeffs().items():
        h = t_mu_coefficient(k) * t_mu_coefficient(n - k).inverse()
        out = out + t_power(n, n - k).scale(c * h)
    return SOValuation(n, out)


# -- coproducts ---------------------------------------------------------------

def _table(n, basis, normalization):
    labels = {d: [f"{basis}_{d}"] for d in range(n + 1)}
    return TensorTable("SO", n, normalization, basis, basis_labels=labels)


def kinematic_so(n, phi=None, basis="t", normalization="standard"):
    """Kinematic coproduct table of phi (default: the Euler characteristic).

    In the t basis with standard normalization the image of t^c is
    (alpha_n / 2^(n+1)) * sum of t^a (x) t^b over a+b = n+c; "unit"
    normalization drops the constant.  Other display bases are exact diagonal
    conversions of this table.
    """
    if phi is None:
        phi = SOValuation.chi(n)
    if normalization not in ("standard", "unit"):
        raise ValueError(f"unknown normalization {normalization!r}")
    factor = alpha(n) * Scalar.from_rational(Fraction(1, 2 ** (n + 1)))
    if normalization == "unit":
        factor = Scalar.one()
    table = _table(n, "t", normalization)
    for c, coeff in phi.t_coeffs().items():
        for a in range(c, n + 1):
            b = n + c - a
            if 0 <= b <= n:
                table.add((a, 0), (b, 0), factor * coeff)
    if basis != "t":
        table = convert_so_table(table, n, basis)
    return table


def additive_so(n, phi=None, basis="psi"):
    """Additive (Minkowski-sum) coproduct table of phi, probability rotations.

    The image of psi_k is sum of C(k,i) psi_i (x) psi_j over i+j = k; default
    input is the volume, whose table equals the kinematic table of chi.
    """
    if phi is None:
        phi = SOValuation.volume(n)
    table = _table(n, "psi", "standard")
    for k, coeff in phi.in_basis("psi").items():
        for i in range(k + 1):
            j = k - i
            table.add((i, 0), (j, 0), coeff * binomial(k, i))
    if basis != "psi":
        table = convert_so_table(table, n, basis)
    return table


def _so_basis_coeff(n, basis, i):
    # c with basis_i = c * t^i
    if basis == "t":
        return Scalar.one()
    if basis == "mu":
        return t_mu_coefficient(i).inverse()
    if basis == "psi":
        return psi_coefficient(n, i)
    if basis == "nijenhuis":
        return psi_coefficient(n, i) * Fraction(1, factorial(i))
    raise ValueError(f"unknown basis {basis!r}")


def convert_so_table(table, n, basis):
    """Re-express a table between the diagonal bases t / mu / psi."""
    if basis == table.basis:
        return table
    out = _table(n, basis, table.normalization)
    for ((a, _), (b, _)), c in table.entries.items():
        ca = _so_basis_coeff(n, table.basis, a) * _so_basis_coeff(n, basis, a).inverse()
        cb = _so_basis_coeff(n, table.basis, b) * _so_basis_coeff(n, basis, b).inverse()
        out.add((a, 0), (b, 0), c * ca * cb)
    return out


def kinematic_via_pairing(n):
    """Independent route to the kinematic table of chi: invert the Poincare
    pairing degree by degree (1x1 blocks in the t basis)."""
    ev = volume_functional(n)
    table = _table(n, "t", "standard")
    for k in range(n + 1):
        m = ev(t_power(n, k) * t_power(n, n - k))
        table.add((k, 0), (n - k, 0), m.inverse())
    return table


def nijenhuis_constants(n):
    """Unit-coefficient presentations of the two coproducts.

    The kinematic coproduct has every structure constant exactly 1 in the
    t basis once the motion measure is rescaled by 2^(n+1)/alpha_n (the
    "unit" normalization); the additive coproduct has every structure
    constant exactly 1 in the basis theta'_i = psi_i / i! with the
    probability rotation measure.  Both facts are verified exactly here.

    A single basis doing both jobs at once would need the kinematic table in
    the theta' basis to carry one uniform constant; for n >= 3 it does not
    (the distinct values are reported), so the two unity presentations use
    different bases.  The kinematic constant removed by the "unit" rescaling
    is alpha_n / 2^(n+1).
    """
    thetap = {i: psi_coefficient(n, i) * Fraction(1, factorial(i)) for i in range(n + 1)}

    kin_t_unit_ok = True
    for c in range(n + 1):
        phi = SOValuation(n, t_power(n, c))
        for v in kinematic_so(n, phi, normalization="unit").entries.values():
            if v != Scalar.one():
                kin_t_unit_ok = False

    add_theta_ok = True
    for k in range(n + 1):
        phi = SOValuation(n, t_power(n, k).scale(thetap[k]))
        for ((i, _), (j, _)), v in additive_so(n, phi, basis="t").entries.items():
            if v.exact_div(thetap[i] * thetap[j]) != Scalar.one():
                add_theta_ok = False

    theta_consts = set()
    for c in range(n + 1):
        phi = SOValuation(n, t_power(n, c).scale(thetap[c]))
        for ((a, _), (b, _)), v in kinematic_so(n, phi).entries.items():
            theta_consts.add(v.exact_div(thetap[a] * thetap[b]) * Scalar.one())

    return {
        "kinematic_all_ones": kin_t_unit_ok,
        "kinematic_unity_basis": "t",
        "additive_all_ones": add_theta_ok,
        "additive_unity_basis": "nijenhuis",
        "t_table_constant": alpha(n) * Fraction(1, 2 ** (n + 1)),
        "theta_kinematic_constants": sorted(theta_consts, key=repr),
        "joint_unity_basis_exists": len(theta_consts) == 1,
    }


def mu_product_coefficient(n, i, j):
    """Coefficient c in mu_i * mu_j = c * mu_{i+j}."""
    if i + j > n:
        raise ValueError(f"mu_{i} * mu_{j} vanishes beyond degree {n}")
    return omega(i + j) * (omega(i) * omega(j)).inverse() * Fraction(binomial(i + j, i))


def mu_product_coefficient_via_t(n, i, j):
    """Same coefficient computed by multiplying in the t basis."""
    prod = mu_in_t(n, i) * mu_in_t(n, j)
    (mono, c), = prod.terms.items()
    assert mono == (i + j,)
    return c * t_mu_coefficient(i + j)


def crofton_constant(n, k):
    """c with mu_k = c * integral of chi(. meet H) over affine (n-k)-flats,
    the flat measure being rotation-invariant probability times Lebesgue on
    the k-dimensional fiber; fixed by the ball template."""
    if not 0 <= k <= n:
        raise ValueError("crofton_constant needs 0 <= k <= n")
    return omega(n) * (omega(n - k) * omega(k)).inverse() * Fraction(binomial(n, k))


def cauchy_constant(n):
    """c with mu_{n-1} = c * sphere-average of the shadow volume."""
    return omega(n) * omega(n - 1).inverse() * Fraction(n, 2)
