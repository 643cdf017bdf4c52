"""Exact arithmetic for univariate polynomials over Q and Q(i).

Dense polynomials carry `Fraction` or `GaussianRational` coefficients and are
immutable.  Gcds are computed with the subresultant polynomial remainder
sequence: denominators are cleared once, the PRS runs over Z (or Z[i]) with
the Brown/Knuth reduction factors g*h**delta keeping every division exact, and
the last nonzero remainder's primitive part is returned monic.  This keeps
intermediate coefficient growth polynomial in the input size, unlike the naive
Euclidean remainder sequence whose numerators explode.

Real roots are isolated by Sturm's theorem: the signed remainder chain is
built once per squarefree factor over Z with positive content stripped at
each step, sign variations are counted by exact integer evaluation at
rational points, and bisection produces refinable isolating intervals whose
endpoints are dyadic rationals.  An exact rational hit during bisection is
returned as a degenerate interval [r, r].

Complex roots are approximated by the Aberth-Ehrlich simultaneous iteration
(vectorised, with a batch entry point so many same-degree polynomials share
one iteration loop), then grouped into clusters whose multiplicity is the
cluster size.  Cluster centers are validated against a backward-error bound;
failure raises `NonConvergenceError` after deterministic restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

__all__ = [
    "ExactPolynomial",
    "GaussianRational",
    "NonConvergenceError",
    "RealRoot",
    "RootCluster",
    "Scalar",
    "cauchy_root_bound",
    "complex_roots_many",
    "complex_roots_numeric",
    "count_distinct_real_roots",
    "gcd_exact",
    "gcd_many",
    "poly_from_json",
    "poly_to_json",
    "real_roots_exact",
    "resultant_exact",
    "scalar_from_json",
    "scalar_to_json",
    "squarefree_decomposition",
]


class NonConvergenceError(RuntimeError):
    """The numeric root finder could not certify its clusters."""


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class GaussianRational:
    """An element of Q(i), kept as an exact pair of Fractions."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", _to_fraction(self.re))
        object.__setattr__(self, "im", _to_fraction(self.im))

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(_to_fraction(x), Fraction(0))

    def canonical(self) -> Union[Fraction, "GaussianRational"]:
        """Collapse to a plain Fraction when the imaginary part vanishes."""
        return self.re if self.im == 0 else self

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("only nonnegative integer powers")
        out = GaussianRational(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """|x|^2, exactly."""
        return self.re * self.re + self.im * self.im

    # -- predicates / conversions ------------------------------------------
    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # real values must hash like their Fraction counterpart
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


Scalar = Union[Fraction, GaussianRational]


def _canonical_scalar(x) -> Scalar:
    """Coerce int/Fraction/GaussianRational to canonical exact form."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise TypeError(
        f"exact coefficient required, got {type(x).__name__}; "
        "wrap floats explicitly via Fraction(x) if that is intended"
    )


def conjugate_scalar(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, GaussianRational) else x


def _scalar_inv(x: Scalar) -> Scalar:
    if isinstance(x, GaussianRational):
        return (GaussianRational(Fraction(1), Fraction(0)) / x).canonical()
    return Fraction(1) / x


@dataclass(frozen=True)
class ExactPolynomial:
    """Dense univariate polynomial, coefficients ascending by degree.

    Real values are always stored as Fraction; a GaussianRational coefficient
    is kept only when its imaginary part is nonzero, so `is_real` is a purely
    structural test.  The zero polynomial has an empty coefficient tuple and
    degree -1.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = [_canonical_scalar(c) for c in self.coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero() -> "ExactPolynomial":
        return ExactPolynomial(())

    @staticmethod
    def one() -> "ExactPolynomial":
        return ExactPolynomial((1,))

    @staticmethod
    def variable() -> "ExactPolynomial":
        return ExactPolynomial((0, 1))

    @staticmethod
    def constant(c) -> "ExactPolynomial":
        return ExactPolynomial((c,))

    @staticmethod
    def from_roots(roots: Iterable, lead=1) -> "ExactPolynomial":
        out = ExactPolynomial.constant(lead)
        for r in roots:
            out = out * ExactPolynomial((-_canonical_scalar(r), 1))
        return out

    # -- structure ----------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_real(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coefficients)

    @property
    def leading_coefficient(self) -> Scalar:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading_coefficient == 1

    def coefficient(self, k: int) -> Scalar:
        return self.coefficients[k] if 0 <= k <= self.degree else Fraction(0)

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return ExactPolynomial(
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(n))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return ExactPolynomial(
            tuple(self.coefficient(k) - other.coefficient(k) for k in range(n))
        )

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __neg__(self):
        return ExactPolynomial(tuple(-c for c in self.coefficients))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return ExactPolynomial(tuple(c * other for c in self.coefficients))
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return ExactPolynomial.zero()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return ExactPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("only nonnegative integer powers")
        out = ExactPolynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = len(rem) - len(other.coefficients)
        if dq < 0:
            return ExactPolynomial.zero(), self
        inv_lead = _scalar_inv(other.leading_coefficient)
        quo = [Fraction(0)] * (dq + 1)
        db = other.degree
        for k in range(dq, -1, -1):
            c = rem[db + k] * inv_lead
            quo[k] = c
            if c:
                for i, b in enumerate(other.coefficients):
                    rem[i + k] = rem[i + k] - c * b
        return ExactPolynomial(tuple(quo)), ExactPolynomial(tuple(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "ExactPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division was expected to be exact")
        return q

    def derivative(self, order: int = 1) -> "ExactPolynomial":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        out = self
        for _ in range(order):
            out = ExactPolynomial(
                tuple(k * c for k, c in enumerate(out.coefficients) if k >= 1)
            )
        return out

    def monic(self) -> "ExactPolynomial":
        if self.is_zero:
            raise ValueError("cannot make the zero polynomial monic")
        if self.is_monic:
            return self
        return self * _scalar_inv(self.leading_coefficient)

    def conjugate(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(conjugate_scalar(c) for c in self.coefficients))

    # -- evaluation ------------------------------------------------------------
    @cached_property
    def complex_coefficients(self) -> tuple:
        return tuple(complex(c) for c in self.coefficients)

    @cached_property
    def float_coefficients(self) -> tuple:
        if not self.is_real:
            raise ValueError("polynomial has nonreal coefficients")
        return tuple(float(c) for c in self.coefficients)

    def __call__(self, x):
        if isinstance(x, (int, Fraction, GaussianRational)):
            acc: Scalar = Fraction(0)
            for c in reversed(self.coefficients):
                acc = acc * x + c
            return acc.canonical() if isinstance(acc, GaussianRational) else acc
        if isinstance(x, complex):
            acc_c = 0j
            for c in reversed(self.complex_coefficients):
                acc_c = acc_c * x + c
            return acc_c
        if isinstance(x, float):
            if self.is_real:
                acc_f = 0.0
                for cf in reversed(self.float_coefficients):
                    acc_f = acc_f * x + cf
                return acc_f
            return self(complex(x))
        raise TypeError(f"cannot evaluate at {type(x).__name__}")

    # -- display ------------------------------------------------------------
    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficient(k)
            if not c:
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"{c}*z" if c != 1 else "z")
            else:
                parts.append(f"{c}*z^{k}" if c != 1 else f"z^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ExactPolynomial({self})"


def _as_poly(x) -> ExactPolynomial:
    if isinstance(x, ExactPolynomial):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return ExactPolynomial((x,))
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


# ---------------------------------------------------------------------------
# gcd over Z via the subresultant PRS
# ---------------------------------------------------------------------------


def _int_coeffs(f: ExactPolynomial) -> list:
    """Clear denominators; the result spans the same ideal up to units."""
    L = 1
    for c in f.coefficients:
        L = L * c.denominator // math.gcd(L, c.denominator)
    return [int(c * L) for c in f.coefficients]


def _int_content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _int_primitive(cs: Sequence[int]) -> list:
    g = _int_content(cs)
    return [c // g for c in cs] if g > 1 else list(cs)


def _int_prem(a: Sequence[int], b: Sequence[int]) -> list:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(da - db, -1, -1):
        c = r[db + k]
        for i in range(db + k):
            r[i] = lb * r[i] - (c * b[i - k] if i >= k else 0)
        del r[db + k :]
    while r and r[-1] == 0:
        r.pop()
    return r


def _int_prs_gcd(a: list, b: list) -> list:
    """Primitive gcd of primitive integer polynomials, deg a >= deg b >= 1."""
    g = h = 1
    while True:
        delta = (len(a) - 1) - (len(b) - 1)
        r = _int_prem(a, b)
        if not r:
            return _int_primitive(b)
        if len(r) == 1:
            return [1]
        div = g * h**delta
        a, b = b, [c // div for c in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)


# ---------------------------------------------------------------------------
# gcd over Z[i]; elements are (re, im) integer pairs
# ---------------------------------------------------------------------------


def _gauss_coeffs(f: ExactPolynomial) -> list:
    L = 1
    for c in f.coefficients:
        if isinstance(c, GaussianRational):
            for d in (c.re.denominator, c.im.denominator):
                L = L * d // math.gcd(L, d)
        else:
            L = L * c.denominator // math.gcd(L, c.denominator)
    out = []
    for c in f.coefficients:
        if isinstance(c, GaussianRational):
            out.append((int(c.re * L), int(c.im * L)))
        else:
            out.append((int(c * L), 0))
    return out


def _g_is_zero(a) -> bool:
    return a[0] == 0 and a[1] == 0


def _g_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _g_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _round_div(x: int, n: int) -> int:
    # nearest integer to x/n for n > 0 (ties toward +inf); |x - q*n| <= n/2
    return (2 * x + n) // (2 * n)


def _g_mod(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    x = a[0] * b[0] + a[1] * b[1]
    y = a[1] * b[0] - a[0] * b[1]
    qx, qy = _round_div(x, n), _round_div(y, n)
    return (a[0] - qx * b[0] + qy * b[1], a[1] - qx * b[1] - qy * b[0])


def _g_gcd(a, b):
    while not _g_is_zero(b):
        a, b = b, _g_mod(a, b)
    return a


def _g_divexact(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    x = a[0] * b[0] + a[1] * b[1]
    y = a[1] * b[0] - a[0] * b[1]
    if x % n or y % n:
        raise ArithmeticError("inexact division in Z[i]")
    return (x // n, y // n)


def _g_pow(a, k: int):
    out = (1, 0)
    while k:
        if k & 1:
            out = _g_mul(out, a)
        a = _g_mul(a, a)
        k >>= 1
    return out


def _g_primitive(cs: list) -> list:
    g = (0, 0)
    for c in cs:
        if not _g_is_zero(c):
            g = _g_gcd(g, c) if not _g_is_zero(g) else c
            if g[0] * g[0] + g[1] * g[1] == 1:
                return list(cs)
    return [_g_divexact(c, g) for c in cs]


def _g_prem(a: list, b: list) -> list:
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(da - db, -1, -1):
        c = r[db + k]
        for i in range(db + k):
            t = _g_mul(lb, r[i])
            if i >= k:
                u = _g_mul(c, b[i - k])
                t = (t[0] - u[0], t[1] - u[1])
            r[i] = t
        del r[db + k :]
    while r and _g_is_zero(r[-1]):
        r.pop()
    return r


def _g_prs_gcd(a: list, b: list) -> list:
    g, h = (1, 0), (1, 0)
    while True:
        delta = (len(a) - 1) - (len(b) - 1)
        r = _g_prem(a, b)
        if not r:
            return _g_primitive(b)
        if len(r) == 1:
            return [(1, 0)]
        div = _g_mul(g, _g_pow(h, delta))
        a, b = b, [_g_divexact(c, div) for c in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = _g_divexact(_g_pow(g, delta), _g_pow(h, delta - 1))


def _poly_from_gauss(cs: list) -> ExactPolynomial:
    return ExactPolynomial(
        tuple(GaussianRational(Fraction(x), Fraction(y)) for x, y in cs)
    )


def gcd_exact(f: ExactPolynomial, g: ExactPolynomial) -> ExactPolynomial:
    """Monic gcd of two polynomials over Q or Q(i), never both zero."""
    if f.is_zero and g.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    if f.degree == 0 or g.degree == 0:
        return ExactPolynomial.one()
    if f.is_real and g.is_real:
        a, b = _int_primitive(_int_coeffs(f)), _int_primitive(_int_coeffs(g))
        if len(a) < len(b):
            a, b = b, a
        raw = _int_prs_gcd(a, b)
        return ExactPolynomial(tuple(raw)).monic()
    a2, b2 = _g_primitive(_gauss_coeffs(f)), _g_primitive(_gauss_coeffs(g))
    if len(a2) < len(b2):
        a2, b2 = b2, a2
    return _poly_from_gauss(_g_prs_gcd(a2, b2)).monic()


def gcd_many(polys: Sequence[ExactPolynomial]) -> ExactPolynomial:
    """Monic gcd of a nonempty family, with an early exit at gcd == 1."""
    if not polys:
        raise ValueError("gcd of an empty family")
    acc = polys[0]
    for p in polys[1:]:
        if acc.degree == 0 and not acc.is_zero:
            return ExactPolynomial.one()
        acc = gcd_exact(acc, p) if not (acc.is_zero and p.is_zero) else acc
    if acc.is_zero:
        raise ValueError("gcd of the zero family")
    return acc.monic() if acc.degree >= 1 else ExactPolynomial.one()


def squarefree_decomposition(f: ExactPolynomial) -> list:
    """Yun's algorithm: [(p_i, i), ...] with f = lc * prod p_i**i, p_i monic,
    pairwise coprime and squarefree; factors of multiplicity i are listed in
    increasing i with trivial levels omitted."""
    if f.is_zero:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if f.degree == 0:
        return []
    w = f.monic()
    g = gcd_exact(w, w.derivative())
    if g.degree == 0:
        return [(w, 1)]
    out = []
    c = w.exact_div(g)
    d = w.derivative().exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        p = gcd_exact(c, d) if not d.is_zero else c.monic()
        if p.degree > 0:
            out.append((p, i))
        c = c.exact_div(p)
        d = d.exact_div(p) - c.derivative()
        i += 1
    return out


# ---------------------------------------------------------------------------
# real root isolation (Sturm)
# ---------------------------------------------------------------------------


def _int_derivative(cs: Sequence[int]) -> list:
    return [k * c for k, c in enumerate(cs)][1:]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _sign_at(cs: Sequence[int], x: Fraction) -> int:
    # sign of sum a_k p^k q^(d-k) = q^d f(p/q), exact
    p, q = x.numerator, x.denominator
    s = 0
    qq = 1
    for a in reversed(cs):
        s = s * p + a * qq
        qq *= q
    return _sign(s)


def _sturm_chain(cs: Sequence[int]) -> list:
    """Sturm chain of a squarefree primitive integer polynomial.

    Each element is the negated remainder of the previous two, rescaled by a
    positive rational; positivity of the rescaling is what preserves the sign
    variation count, so the pseudo-remainder's leading-coefficient power is
    sign-corrected before stripping content.
    """
    chain = [list(cs), _int_primitive(_int_derivative(cs))]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        delta = (len(a) - 1) - (len(b) - 1)
        r = _int_prem(a, b)
        if not r:
            raise ValueError("input was not squarefree")
        mult_sign = _sign(b[-1]) if (delta + 1) % 2 else 1
        nxt = [c * (-mult_sign) for c in r]
        chain.append(_int_primitive(nxt))
    return chain


def _variations(signs: Iterable[int]) -> int:
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def _variations_at(chain: list, x: Fraction) -> int:
    return _variations(_sign_at(cs, x) for cs in chain)


def _variations_at_inf(chain: list, positive: bool) -> int:
    if positive:
        return _variations(_sign(cs[-1]) for cs in chain)
    return _variations(
        _sign(cs[-1]) * (-1 if (len(cs) - 1) % 2 else 1) for cs in chain
    )


@dataclass(frozen=True)
class RealRoot:
    """One real root: an isolating open interval (lo, hi) with rational
    endpoints not themselves roots, or an exact rational root when lo == hi.
    `refine` bisects down to a requested width and returns a new value."""

    lo: Fraction
    hi: Fraction
    multiplicity: int
    _factor: tuple
    _sign_lo: int

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def refine(self, max_width: Fraction) -> "RealRoot":
        lo, hi, s_lo = self.lo, self.hi, self._sign_lo
        while hi - lo > max_width:
            mid = (lo + hi) / 2
            s = _sign_at(self._factor, mid)
            if s == 0:
                lo = hi = mid
                s_lo = 0
                break
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        return RealRoot(lo, hi, self.multiplicity, self._factor, s_lo)

    def float_value(self, rel: float = 1e-16) -> float:
        """Float approximation refined until the width is negligible."""
        if self.is_exact:
            return float(self.lo)
        scale = max(Fraction(1), abs(self.lo), abs(self.hi))
        r = self.refine(Fraction(rel) * scale)
        return float(r.midpoint)

    def rational_value(self) -> Optional[Fraction]:
        """The root as an exact rational, or None when it is irrational.

        A rational root p/q of the primitive integer factor has q dividing
        the leading coefficient, and two rationals with denominator <= lc
        differ by more than 1/lc^2; so after refining below that, the
        simplest rational in the interval is the only candidate.
        """
        if self.is_exact:
            return self.lo
        lc = abs(self._factor[-1])
        r = self.refine(Fraction(1, 2 * lc * lc))
        if r.is_exact:
            return r.lo
        candidate = _simplest_between(r.lo, r.hi)
        if _sign_at(self._factor, candidate) == 0:
            return candidate
        return None


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Minimal-denominator rational in [lo, hi] (standard mediant recursion)."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo == hi:
        return lo
    cl, fl = math.ceil(lo), math.floor(hi)
    if cl <= fl:
        if cl <= 0 <= fl:
            return Fraction(0)
        return Fraction(cl if cl > 0 else fl)
    n = math.floor(lo)
    return n + 1 / _simplest_between(1 / (hi - n), 1 / (lo - n))


def _isolate_squarefree(cs: Sequence[int]) -> list:
    """Isolating intervals/exact points for a squarefree integer polynomial."""
    d = len(cs) - 1
    if d < 1:
        return []
    if d == 1:
        r = Fraction(-cs[0], cs[1])
        return [(r, r, 0)]
    chain = _sturm_chain(cs)
    lead = abs(cs[-1])
    bound = 1 + max(abs(c) for c in cs[:-1]) / Fraction(lead)
    b = Fraction(1)
    while b < bound:
        b *= 2
    out = []
    var_cache = {}

    def var(x: Fraction) -> int:
        if x not in var_cache:
            var_cache[x] = _variations_at(chain, x)
        return var_cache[x]

    def rec(lo: Fraction, hi: Fraction, count: int):
        # invariant: f(lo) != 0 != f(hi), count = #roots in (lo, hi)
        if count == 0:
            return
        if count == 1:
            out.append((lo, hi, _sign_at(cs, lo)))
            return
        mid = (lo + hi) / 2
        if _sign_at(cs, mid) == 0:
            # exact rational hit: record it and excise a root-free strip so
            # recursion endpoints are never themselves roots
            out.append((mid, mid, 0))
            eps = (hi - lo) / 8
            while True:
                a, b2 = mid - eps, mid + eps
                if (
                    a > lo
                    and b2 < hi
                    and _sign_at(cs, a) != 0
                    and _sign_at(cs, b2) != 0
                    and var(a) - var(b2) == 1
                ):
                    break
                eps /= 2
            rec(lo, a, var(lo) - var(a))
            rec(b2, hi, var(b2) - var(hi))
        else:
            v = var(mid)
            rec(lo, mid, var(lo) - v)
            rec(mid, hi, v - var(hi))

    rec(-b, b, var(-b) - var(b))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _disjoint(a: RealRoot, b: RealRoot) -> bool:
    return a.hi <= b.lo or b.hi <= a.lo


def real_roots_exact(f: ExactPolynomial) -> list:
    """All real roots of a nonzero rational polynomial, sorted ascending,
    as RealRoot values carrying multiplicities; intervals are pairwise
    disjoint so the ordering is the ordering of the roots themselves."""
    if f.is_zero:
        raise ValueError("the zero polynomial has every root")
    if not f.is_real:
        raise ValueError("real root isolation needs real coefficients")
    if f.degree == 0:
        return []
    roots = []
    for factor, mult in squarefree_decomposition(f):
        ics = tuple(_int_primitive(_int_coeffs(factor)))
        for lo, hi, s_lo in _isolate_squarefree(ics):
            roots.append(RealRoot(lo, hi, mult, ics, s_lo))
    # roots of coprime factors are distinct: refine until intervals separate
    changed = True
    guard = 0
    while changed:
        changed = False
        guard += 1
        if guard > 400:
            raise RuntimeError("failed to separate isolating intervals")
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                a, b = roots[i], roots[j]
                if a._factor is b._factor or _disjoint(a, b):
                    continue
                w_a, w_b = a.hi - a.lo, b.hi - b.lo
                # an exact root cannot shrink; refine the other interval
                if w_b == 0 or (w_a >= w_b and w_a > 0):
                    roots[i] = a.refine(w_a / 4)
                else:
                    roots[j] = b.refine(w_b / 4)
                changed = True
    roots.sort(key=lambda r: (r.lo, r.hi))
    return roots


def count_distinct_real_roots(f: ExactPolynomial) -> int:
    """Number of distinct real roots, by Sturm variations at minus/plus infinity."""
    if f.is_zero:
        raise ValueError("the zero polynomial has every root")
    if not f.is_real:
        raise ValueError("Sturm counting needs real coefficients")
    if f.degree == 0:
        return 0
    g = gcd_exact(f, f.derivative())
    w = f.exact_div(g) if g.degree > 0 else f
    cs = _int_primitive(_int_coeffs(w))
    if len(cs) == 2:
        return 1
    chain = _sturm_chain(cs)
    return _variations_at_inf(chain, False) - _variations_at_inf(chain, True)


def cauchy_root_bound(polys: Sequence[ExactPolynomial]) -> Fraction:
    """Exact rational B with every complex root of every input inside |z| < B."""
    if not polys:
        raise ValueError("no polynomials given")
    best = Fraction(1)
    for f in polys:
        if f.is_zero:
            raise ValueError("the zero polynomial has unbounded roots")
        if f.degree == 0:
            continue
        lead = f.leading_coefficient
        if isinstance(lead, GaussianRational):
            lead_low = max(abs(lead.re), abs(lead.im))  # <= |lead|
        else:
            lead_low = abs(lead)
        m = Fraction(0)
        for c in f.coefficients[:-1]:
            mag = abs(c.re) + abs(c.im) if isinstance(c, GaussianRational) else abs(c)
            if mag > m:
                m = mag
        best = max(best, 1 + m / lead_low)
    return best


# ---------------------------------------------------------------------------
# numeric roots (Aberth-Ehrlich) and clustering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootCluster:
    """A group of numerically coincident roots: center, radius, multiplicity."""

    center: complex
    radius: float
    multiplicity: int


_ABERTH_RESTARTS = (0.41, 1.13, 1.97)


def _aberth_batch(coeffs: np.ndarray, max_iter: int, offset: float) -> np.ndarray:
    """Run Aberth-Ehrlich on a batch of monic polynomials of equal degree.

    coeffs: (B, d+1) complex, ascending, last column all ones. Returns (B, d).
    """
    batch, dp1 = coeffs.shape
    d = dp1 - 1
    radius = 1.0 + np.abs(coeffs[:, :-1]).max(axis=1)
    angles = 2.0 * np.pi * np.arange(d) / d + offset
    z = radius[:, None] * np.exp(1j * angles)[None, :]
    dcoeffs = coeffs[:, 1:] * np.arange(1, dp1)[None, :]
    abs_coeffs = np.abs(coeffs)
    active = np.ones((batch, d), dtype=bool)
    for _ in range(max_iter):
        p = np.broadcast_to(coeffs[:, -1][:, None], z.shape).copy()
        for k in range(d - 1, -1, -1):
            p = p * z + coeffs[:, k][:, None]
        dp = np.broadcast_to(dcoeffs[:, -1][:, None], z.shape).copy()
        for k in range(d - 2, -1, -1):
            dp = dp * z + dcoeffs[:, k][:, None]
        az = np.maximum(1.0, np.abs(z))
        # backward-error scale: sum |c_k| * max(1,|z|)^k via Horner in |z|
        s = np.broadcast_to(abs_coeffs[:, -1][:, None], z.shape).copy()
        for k in range(d - 1, -1, -1):
            s = s * az + abs_coeffs[:, k][:, None]
        small = np.abs(p) <= 1e-14 * s
        active &= ~small
        if not active.any():
            break
        dp = np.where(np.abs(dp) < 1e-290, 1e-290, dp)
        newton = p / dp
        diff = z[:, :, None] - z[:, None, :]
        np.einsum("bii->bi", diff)[:] = np.inf
        diff = np.where(np.abs(diff) < 1e-290, 1e-290, diff)
        ssum = (1.0 / diff).sum(axis=2)
        denom = 1.0 - newton * ssum
        denom = np.where(np.abs(denom) < 1e-12, 1.0, denom)
        w = np.where(active, newton / denom, 0.0)
        z = z - w
        if np.max(np.abs(w) / (1.0 + np.abs(z))) < 1e-15:
            break
    return z


def _cluster_roots(roots: Sequence[complex], tol: float) -> list:
    """Single-linkage clusters at radius tol, merged until pairwise disjoint."""
    clusters = [[r] for r in sorted(roots, key=lambda c: (c.real, c.imag))]

    def center(c):
        return sum(c) / len(c)

    merged = True
    while merged and len(clusters) > 1:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                ci, cj = clusters[i], clusters[j]
                if min(abs(a - b) for a in ci for b in cj) <= tol:
                    clusters[i] = ci + cj
                    del clusters[j]
                    merged = True
                    break
            if merged:
                break
    out = []
    for c in clusters:
        z0 = center(c)
        rad = max((abs(a - z0) for a in c), default=0.0)
        out.append(RootCluster(z0, max(rad, tol / 10), len(c)))
    out.sort(key=lambda cl: (cl.center.real, cl.center.imag))
    return out


def _validate_clusters(f: ExactPolynomial, clusters: list) -> float:
    """Max relative backward error of cluster centers; inf when degenerate."""
    worst = 0.0
    cs = f.complex_coefficients
    for cl in clusters:
        z = cl.center
        az = max(1.0, abs(z))
        s = 0.0
        for k in range(len(cs) - 1, -1, -1):
            s = s * az + abs(cs[k])
        err = abs(f(z)) / s
        # an m-fold cluster center is accurate to about the cluster radius,
        # so its residual scales like radius**m
        allowed = max(1e-9, (4.0 * max(cl.radius, 1e-15)) ** cl.multiplicity)
        if err > allowed * 1.0:
            worst = max(worst, err / allowed)
    return worst


def complex_roots_numeric(f: ExactPolynomial, cluster_tol: float = None) -> list:
    """Root clusters of a nonconstant polynomial; multiplicities sum to deg f."""
    return complex_roots_many([f], cluster_tol)[0]


def complex_roots_many(polys: Sequence[ExactPolynomial], cluster_tol: float = None) -> list:
    """Batch variant of `complex_roots_numeric`: one Aberth loop per degree."""
    results: list = [None] * len(polys)
    by_degree: dict = {}
    for idx, f in enumerate(polys):
        if f.is_zero:
            raise ValueError("the zero polynomial has every root")
        if f.degree == 0:
            results[idx] = []
            continue
        by_degree.setdefault(f.degree, []).append(idx)
    for d, indices in by_degree.items():
        for start in range(0, len(indices), 4096):
            chunk = indices[start : start + 4096]
            mat = np.empty((len(chunk), d + 1), dtype=complex)
            for row, idx in enumerate(chunk):
                f = polys[idx]
                cc = np.array(f.complex_coefficients, dtype=complex)
                mat[row] = cc / cc[-1]
            pending = list(range(len(chunk)))
            for attempt, offset in enumerate(_ABERTH_RESTARTS):
                roots = _aberth_batch(
                    mat[pending], max_iter=120 * (attempt + 1), offset=offset
                )
                still = []
                for row_pos, row in enumerate(pending):
                    idx = chunk[row]
                    f = polys[idx]
                    rts = [complex(v) for v in roots[row_pos]]
                    scale = max(1.0, max(abs(r) for r in rts))
                    # double roots blur to ~1e-7 in binary64, so "coincident"
                    # defaults to a 1e-6 resolution
                    tol = cluster_tol if cluster_tol is not None else 1e-6 * scale
                    clusters = _cluster_roots(rts, tol)
                    if _validate_clusters(f, clusters) == 0.0:
                        results[idx] = clusters
                    else:
                        still.append(row)
                pending = still
                if not pending:
                    break
            if pending:
                bad = polys[chunk[pending[0]]]
                raise NonConvergenceError(
                    f"root finding failed to certify clusters for {bad!r}"
                )
    return results


# ---------------------------------------------------------------------------
# resultants (exact)
# ---------------------------------------------------------------------------


def resultant_exact(f: ExactPolynomial, g: ExactPolynomial):
    """Resultant of f and g over Q or Q(i), as an exact scalar."""
    if f.is_zero or g.is_zero:
        return Fraction(0)
    m, n = f.degree, g.degree
    if m == 0:
        return (f.coefficients[0] ** n) if n else Fraction(1)
    if n == 0:
        return g.coefficients[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coefficients))
    gc = list(reversed(g.coefficients))
    for k in range(n):
        rows.append([Fraction(0)] * k + fc + [Fraction(0)] * (size - m - 1 - k))
    for k in range(m):
        rows.append([Fraction(0)] * k + gc + [Fraction(0)] * (size - n - 1 - k))
    det: Scalar = Fraction(1)
    sign = 1
    for col in range(size):
        pivot_row = None
        for r in range(col, size):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            sign = -sign
        pivot = rows[col][col]
        det = det * pivot
        inv = _scalar_inv(pivot)
        for r in range(col + 1, size):
            factor = rows[r][col]
            if factor:
                scaled = factor * inv
                rows[r] = [
                    rows[r][c] - scaled * rows[col][c] for c in range(size)
                ]
    det = det * sign
    return det.canonical() if isinstance(det, GaussianRational) else det


# ---------------------------------------------------------------------------
# JSON forms: rationals are "p/q" strings, Q(i) scalars are {"re","im"} maps
# ---------------------------------------------------------------------------


def scalar_to_json(x: Scalar):
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return str(x.re)
        return {"re": str(x.re), "im": str(x.im)}
    return str(x)


def scalar_from_json(v) -> Scalar:
    if isinstance(v, bool):
        raise ValueError("booleans are not coefficients")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        raise ValueError(
            "float coefficients are not accepted; send exact 'p/q' strings"
        )
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, dict) and set(v) <= {"re", "im"}:
        re = scalar_from_json(v.get("re", "0"))
        im = scalar_from_json(v.get("im", "0"))
        if isinstance(re, GaussianRational) or isinstance(im, GaussianRational):
            raise ValueError("nested complex parts")
        return GaussianRational(re, im).canonical()
    raise ValueError(f"cannot parse coefficient {v!r}")


def poly_to_json(f: ExactPolynomial) -> list:
    return [scalar_to_json(c) for c in f.coefficients]


def poly_from_json(arr) -> ExactPolynomial:
    if not isinstance(arr, (list, tuple)):
        raise ValueError("polynomial JSON must be an array of coefficients")
    return ExactPolynomial(tuple(scalar_from_json(v) for v in arr))
