"""Truncated Laurent series in q^(1/D) with exact rational coefficients.

The public series of the character analysis all live in exponents from
(1/2)Z, so D = 2 throughout that layer; the arithmetic itself works for any
fixed denominator.  A series knows its truncation bound T: coefficients at
exponent n/D are stored only for n < T and arithmetic propagates the
smallest valid bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

C24_2 = 276  # binomial(24, 2)
C48_2 = 1128  # binomial(48, 2)
DIM_CONSTANT = C24_2 + 24 * 2**12  # 98580, the weight-two constant
# default truncation: twelve coefficients past the q^-1 leading term of the
# hauptmodul, in q^(1/2)-numerator units
DEFAULT_TRUNC = 22


class QSeriesError(ValueError):
    pass


class QSeries:
    """A truncated series sum_n c_n q^(n/denom), exact rational c_n."""

    __slots__ = ("denom", "coeffs", "trunc")

    def __init__(self, denom: int, coeffs: dict, trunc: int):
        self.denom = denom
        self.trunc = trunc
        self.coeffs = {n: Fraction(c) for n, c in coeffs.items() if c and n < trunc}

    # -- basics ------------------------------------------------------------

    def __getitem__(self, exponent) -> Fraction:
        """Coefficient at rational exponent; raises beyond the truncation."""
        e = Fraction(exponent) * self.denom
        if e.denominator != 1:
            return Fraction(0)
        n = int(e)
        if n >= self.trunc:
            raise QSeriesError(f"coefficient at {exponent} is beyond truncation")
        return self.coeffs.get(n, Fraction(0))

    def valuation(self) -> int:
        """Lowest stored exponent numerator (trunc bound if identically zero)."""
        return min(self.coeffs) if self.coeffs else self.trunc

    def __eq__(self, other):
        """Mathematical equality of the known parts, denominator-agnostic."""
        if not isinstance(other, QSeries):
            return NotImplemented
        from math import lcm

        d = lcm(self.denom, other.denom)
        a, b = d // self.denom, d // other.denom
        t = min(self.trunc * a, other.trunc * b)
        left = {n * a: c for n, c in self.coeffs.items() if n * a < t}
        right = {n * b: c for n, c in other.coeffs.items() if n * b < t}
        return left == right

    def __hash__(self):
        raise TypeError("QSeries is unhashable")

    def __repr__(self):
        terms = []
        for n in sorted(self.coeffs)[:6]:
            terms.append(f"{self.coeffs[n]}*q^({n}/{self.denom})")
        tail = " + ..." if len(self.coeffs) > 6 else ""
        return f"QSeries({' + '.join(terms) or '0'}{tail}; trunc {self.trunc}/{self.denom})"

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if self.denom != other.denom:
            raise QSeriesError("exponent denominators differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant(other, self.denom, self.trunc)
        self._check(other)
        t = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + c
        return QSeries(self.denom, out, t)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.denom, {n: -c for n, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant(other, self.denom, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries(
                self.denom, {n: c * other for n, c in self.coeffs.items()}, self.trunc
            )
        self._check(other)
        t = min(self.trunc + other.valuation(), other.trunc + self.valuation())
        out: dict[int, Fraction] = {}
        for n1, c1 in self.coeffs.items():
            for n2, c2 in other.coeffs.items():
                n = n1 + n2
                if n < t:
                    out[n] = out.get(n, Fraction(0)) + c1 * c2
        return QSeries(self.denom, out, t)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        if not self.coeffs:
            raise QSeriesError("cannot invert the zero series")
        v = self.valuation()
        lead = self.coeffs[v]
        n_terms = self.trunc - v  # known coefficients of self past the leading one
        # self = lead q^v (1 + x); invert the unit part by recursion
        inv: dict[int, Fraction] = {0: 1 / lead}
        for n in range(1, n_terms):
            s = Fraction(0)
            for m, c in self.coeffs.items():
                k = m - v
                if 0 < k <= n and (n - k) in inv:
                    s += c * inv[n - k]
            val = -s / lead
            if val:
                inv[n] = val
        return QSeries(self.denom, {n - v: c for n, c in inv.items()}, n_terms - v)

    def __pow__(self, e: int) -> "QSeries":
        if e == 0:
            return constant(1, self.denom, self.trunc - self.valuation())
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def rescale_exponents(self, num: int, den: int = 1) -> "QSeries":
        """Substitute q -> q^(num/den), adjusting the exponent denominator."""
        d = self.denom * den
        g = _gcd_all([d] + [n * num for n in self.coeffs] + [self.trunc * num])
        return QSeries(
            d // g,
            {n * num // g: c for n, c in self.coeffs.items()},
            self.trunc * num // g,
        )

    def dump(self) -> str:
        """One line per coefficient: 'n/D<TAB>p/q', sorted by exponent."""
        lines = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            lines.append(f"{n}/{self.denom}\t{c.numerator}/{c.denominator}")
        return "\n".join(lines)


def _gcd_all(values):
    from math import gcd

    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g or 1


def constant(c, denom: int, trunc: int) -> QSeries:
    return QSeries(denom, {0: Fraction(c)}, trunc)


def monomial(c, exponent, denom: int, trunc: int) -> QSeries:
    e = Fraction(exponent) * denom
    if e.denominator != 1:
        raise QSeriesError(f"exponent {exponent} not representable over denominator {denom}")
    return QSeries(denom, {int(e): Fraction(c)}, trunc)


# -- eta powers and the hauptmodul ------------------------------------------


@lru_cache(maxsize=None)
def _euler_product_pow24(n_terms: int) -> tuple:
    """Coefficients of prod_{n>=1} (1-q^n)^24 up to q^(n_terms-1), via the
    pentagonal-number expansion of the Euler product."""
    phi = [0] * n_terms
    phi[0] = 1
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= n_terms and e2 >= n_terms:
            break
        s = -1 if k % 2 else 1
        if e1 < n_terms:
            phi[e1] += s
        if e2 < n_terms:
            phi[e2] += s
        k += 1
    out = [1] + [0] * (n_terms - 1)
    for _ in range(24):
        new = [0] * n_terms
        for i, a in enumerate(out):
            if a:
                for j, b in enumerate(phi[: n_terms - i]):
                    if b:
                        new[i + j] += a * b
        out = new
    return tuple(out)


def eta24(scale, trunc: int) -> QSeries:
    """eta(scale*tau)^24 as a series in q^(1/2), for scale in {1/2, 1, 2}.

    eta(tau)^24 = q prod (1-q^n)^24; the q^(1/24) prefactors cancel in the
    24th power, so only integer multiples of the scale appear.
    """
    scale = Fraction(scale)
    if scale not in (Fraction(1, 2), Fraction(1), Fraction(2)):
        raise QSeriesError(f"unsupported eta scale {scale}")
    if trunc < 1:
        raise QSeriesError("truncation must be positive")
    # exponents are scale*(1 + j) for j >= 0 in units of q^(1/2): step = 2*scale
    step = int(2 * scale)
    n_terms = trunc // step + 1
    coeffs = {}
    for j, c in enumerate(_euler_product_pow24(n_terms)):
        n = step * (1 + j)
        if c and n < trunc:
            coeffs[n] = Fraction(c)
    return QSeries(2, coeffs, trunc)


def hauptmodul(trunc: int) -> QSeries:
    """The hauptmodul f = eta(tau)^24 / eta(2 tau)^24 = q^-1 - 24 + 276 q + ..."""
    window = trunc + 4  # room for the q^-1 shift
    return eta24(1, window) * eta24(2, window).inverse()


def hauptmodul_S_power(n: int, trunc: int) -> QSeries:
    """f(S tau)^n = 2^(12n) (eta(tau)^24 / eta(tau/2)^24)^n, for n in {1, -1, -2}."""
    if n not in (1, -1, -2):
        raise QSeriesError("supported powers are 1, -1, -2")
    window = trunc + 4 * abs(n)
    base = eta24(1, window) * eta24(Fraction(1, 2), window).inverse()
    return Fraction(2**12) ** n * base**n


def t_transform(s: QSeries) -> QSeries:
    """Shift tau -> tau+1: the coefficient at q^(n/2) picks up (-1)^n."""
    if s.denom != 2:
        raise QSeriesError("t_transform requires exponent denominator 2")
    return QSeries(2, {n: (-c if n % 2 else c) for n, c in s.coeffs.items()}, s.trunc)


# -- the character fit and the dimension formula -----------------------------


@dataclass(frozen=True)
class CharacterFit:
    """The fixed-point character as a Laurent polynomial in the hauptmodul."""

    c0: Fraction
    c_minus1: Fraction
    series: QSeries


def character_fit(dim_g1: int, dim_half: int, trunc: int = DEFAULT_TRUNC) -> CharacterFit:
    """Fit Z = f + c0 + c_{-1} f^-1 + 2^23 f^-2 from the two dimensions.

    The constant term pins c0 = dim_g1 + 24 and the q^(-1/2) coefficient of
    the S-transform pins c_{-1} = 2^12 (dim_half/2 + 24).
    """
    if dim_g1 < 0 or dim_half < 0:
        raise QSeriesError("dimensions must be nonnegative")
    c0 = Fraction(dim_g1 + 24)
    c_minus1 = Fraction(2**12) * (Fraction(dim_half, 2) + 24)
    f = hauptmodul(trunc)
    series = f + c0 + c_minus1 * f.inverse() + Fraction(2**23) * (f.inverse() ** 2)
    assert series[Fraction(-1)] == 1
    assert series[0] == dim_g1
    return CharacterFit(c0, c_minus1, series)


def fitted_S_series(fit: CharacterFit, trunc: int = DEFAULT_TRUNC) -> QSeries:
    """The fitted character with f replaced by its S-transform expansions."""
    return (
        hauptmodul_S_power(1, trunc)
        + fit.c0
        + fit.c_minus1 * hauptmodul_S_power(-1, trunc)
        + Fraction(2**23) * hauptmodul_S_power(-2, trunc)
    )


def dimension_identities(
    dim_V1: int, dim_g1: int, dim_half: int, trunc: int = DEFAULT_TRUNC
) -> tuple[int, int]:
    """Weight-one and weight-two dimension bookkeeping for the order-2 orbifold.

    Returns (dim of the new weight-one space, dim of the fixed-point
    weight-two space).  The closed forms are

        new_dim = 3*dim_g1 - dim_V1 + 24*(1 - dim_half)
        g2_dim  = 98580 + 2^11 * dim_half

    and the first is re-derived by expanding the three-term character sum
    Z(tau) + Z(S tau) + Z(ST tau) with the fitted series and comparing the
    constant term; disagreement raises.
    """
    if min(dim_V1, dim_g1, dim_half) < 0:
        raise QSeriesError("dimensions must be nonnegative")
    closed = 3 * dim_g1 - dim_V1 + 24 * (1 - dim_half)
    g2_dim = DIM_CONSTANT + 2**11 * dim_half

    fit = character_fit(dim_g1, dim_half, trunc)
    s_series = fitted_S_series(fit, trunc)
    assert s_series[Fraction(-1, 2)] == Fraction(dim_half, 2)
    total = fit.series + s_series + t_transform(s_series)
    series_route = total[0] - dim_V1
    if series_route != closed:
        raise QSeriesError(
            f"dimension formula mismatch: closed form {closed}, series route {series_route}"
        )
    # the fitted series also knows the weight-two coefficient
    assert fit.series[1] == g2_dim
    return int(closed), int(g2_dim)
