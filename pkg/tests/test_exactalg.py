import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonresultant.exactalg import (
    ExactPolynomial,
    GaussianRational,
    RealRoot,
    cauchy_root_bound,
    complex_roots_many,
    complex_roots_numeric,
    count_distinct_real_roots,
    gcd_exact,
    gcd_many,
    poly_from_json,
    poly_to_json,
    real_roots_exact,
    resultant_exact,
    scalar_from_json,
    scalar_to_json,
    squarefree_decomposition,
)

from oracles import gcd_from_factor_multisets, resultant_from_roots

z = ExactPolynomial.variable()
i_unit = GaussianRational(F(0), F(1))

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def poly_strategy(max_degree=5):
    return st.lists(small_fractions, min_size=0, max_size=max_degree + 1).map(
        lambda cs: ExactPolynomial(tuple(cs))
    )


def random_rational(rng, num=20, den=6):
    return F(rng.randint(-num, num), rng.randint(1, den))


def random_poly(rng, degree, monic=True, gaussian=False):
    def scalar():
        if gaussian:
            return GaussianRational(random_rational(rng), random_rational(rng))
        return random_rational(rng)

    coeffs = [scalar() for _ in range(degree)]
    coeffs.append(
        F(1) if monic else (scalar() or F(1))
    )
    return ExactPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# construction and scalar behaviour
# ---------------------------------------------------------------------------


def test_construction_canonical():
    assert ExactPolynomial((1, 2, 0, 0)).degree == 1
    assert ExactPolynomial(()).degree == -1
    assert ExactPolynomial((0,)).degree == -1
    # gaussian coefficients with zero imaginary part collapse to Fraction
    p = ExactPolynomial((GaussianRational(F(3), F(0)), 1))
    assert p.is_real
    assert p.coefficients[0] == F(3)
    with pytest.raises(TypeError):
        ExactPolynomial((0.5, 1))


def test_gaussian_scalar_arithmetic():
    a = GaussianRational(F(1, 2), F(3))
    b = GaussianRational(F(2), F(-1))
    assert a + b == GaussianRational(F(5, 2), F(2))
    assert a * b == GaussianRational(F(4), F(11, 2))
    assert (a / b) * b == a
    assert a.conjugate().im == -a.im
    assert GaussianRational(F(2), F(0)) == F(2)
    assert hash(GaussianRational(F(2), F(0))) == hash(F(2))
    assert complex(i_unit) == 1j
    assert i_unit**2 == F(-1)


def test_evaluate_exact_and_float():
    f = (z - 1) * (z + F(1, 2)) * (z - F(3, 4))
    assert f(F(1)) == 0
    x = F(7, 5)
    assert abs(float(f(x)) - f(float(x))) < 1e-12
    val = f(0.5 + 0.25j)
    assert abs(val - f(complex(0.5, 0.25))) == 0


def test_derivative_rules():
    assert (z**2).derivative() == 2 * z
    assert (z**3).derivative(2) == 6 * z
    assert (z**3).derivative(5).is_zero
    rng = random.Random(7)
    for _ in range(25):
        f = random_poly(rng, rng.randint(0, 4), monic=False)
        g = random_poly(rng, rng.randint(0, 4), monic=False)
        lhs = (f * g).derivative()
        rhs = f.derivative() * g + f * g.derivative()
        assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_identities(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert f - f == ExactPolynomial.zero()


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy(4))
def test_divmod_reconstruction(f, g):
    if g.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(f, g)
        return
    q, r = divmod(f, g)
    assert f == q * g + r
    assert r.degree < g.degree


# ---------------------------------------------------------------------------
# gcd
# ---------------------------------------------------------------------------


def test_gcd_frozen_example():
    f = (z**2 - 1) * (z + 2)
    g = (z + 1) * (z + 5)
    assert gcd_exact(f, g) == z + 1


def test_gcd_edge_cases():
    assert gcd_exact(z - 1, ExactPolynomial.zero()) == z - 1
    assert gcd_exact(ExactPolynomial.zero(), 2 * (z - 1)) == z - 1
    assert gcd_exact(z - 1, ExactPolynomial.constant(5)) == ExactPolynomial.one()
    with pytest.raises(ValueError):
        gcd_exact(ExactPolynomial.zero(), ExactPolynomial.zero())


def test_gcd_matches_factor_multiset_oracle():
    rng = random.Random(42)
    pool = [F(k, 2) for k in range(-6, 7)]
    for _ in range(120):
        roots_f = [rng.choice(pool) for _ in range(rng.randint(1, 5))]
        roots_g = [rng.choice(pool) for _ in range(rng.randint(1, 5))]
        f = ExactPolynomial.from_roots(roots_f)
        g = ExactPolynomial.from_roots(roots_g)
        assert gcd_exact(f, g) == gcd_from_factor_multisets(roots_f, roots_g)


def test_gcd_matches_factor_multiset_oracle_gaussian():
    rng = random.Random(43)
    pool = [
        GaussianRational(F(a), F(b)).canonical()
        for a in range(-2, 3)
        for b in range(-2, 3)
    ]
    for _ in range(60):
        roots_f = [rng.choice(pool) for _ in range(rng.randint(1, 4))]
        roots_g = [rng.choice(pool) for _ in range(rng.randint(1, 4))]
        f = ExactPolynomial.from_roots(roots_f)
        g = ExactPolynomial.from_roots(roots_g)
        assert gcd_exact(f, g) == gcd_from_factor_multisets(roots_f, roots_g)


def test_gcd_common_factor_property():
    rng = random.Random(44)
    for _ in range(60):
        # build f, g coprime by giving them disjoint root sets
        f = ExactPolynomial.from_roots([F(k) for k in rng.sample(range(1, 9), 2)])
        g = ExactPolynomial.from_roots([F(-k) for k in rng.sample(range(1, 9), 2)])
        h = random_poly(rng, rng.randint(1, 3))
        assert gcd_exact(f * h, g * h) == h.monic() * gcd_exact(f, g)


def test_gcd_scaling_invariance():
    f = (z - 1) * (z - 2)
    g = (z - 1) * (z + 3)
    assert gcd_exact(f * F(7, 3), g * F(-2, 5)) == z - 1
    fg = f * GaussianRational(F(2), F(1))
    assert gcd_exact(fg, g * i_unit) == z - 1


# ---------------------------------------------------------------------------
# squarefree decomposition
# ---------------------------------------------------------------------------


def test_squarefree_frozen_example():
    f = z**3 + z**2
    assert squarefree_decomposition(f) == [(z + 1, 1), (z, 2)]


def test_squarefree_reconstruction_property():
    rng = random.Random(45)
    for _ in range(40):
        roots = rng.sample([F(k, 2) for k in range(-8, 9)], rng.randint(1, 4))
        mults = [rng.randint(1, 3) for _ in roots]
        f = ExactPolynomial.one()
        for r, m in zip(roots, mults):
            f = f * ExactPolynomial.from_roots([r]) ** m
        lead = random_rational(rng) or F(1)
        f = f * lead
        parts = squarefree_decomposition(f)
        rebuilt = ExactPolynomial.constant(lead)
        for p, m in parts:
            rebuilt = rebuilt * p**m
            assert gcd_exact(p, p.derivative()).degree == 0
        assert rebuilt == f
        for a in range(len(parts)):
            for b in range(a + 1, len(parts)):
                assert gcd_exact(parts[a][0], parts[b][0]).degree == 0
        assert max(m for _, m in parts) == max(mults)


def test_squarefree_gaussian():
    f = (z - i_unit) ** 2 * (z + 1)
    parts = squarefree_decomposition(f)
    assert parts == [(z + 1, 1), (z - i_unit, 2)]


# ---------------------------------------------------------------------------
# real roots
# ---------------------------------------------------------------------------


def test_real_roots_frozen_example():
    f = z**3 - 3 * z**2 + 2 * z
    roots = real_roots_exact(f)
    assert [r.multiplicity for r in roots] == [1, 1, 1]
    values = [r.float_value() for r in roots]
    assert values == pytest.approx([0.0, 1.0, 2.0], abs=1e-12)


def test_real_roots_multiplicity_and_order():
    f = (z - 1) ** 2 * z * (z + F(5, 2)) ** 3
    roots = real_roots_exact(f)
    assert [(round(r.float_value(), 6), r.multiplicity) for r in roots] == [
        (-2.5, 3),
        (0.0, 1),
        (1.0, 2),
    ]
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo


def test_real_roots_planted_random():
    rng = random.Random(46)
    for _ in range(50):
        planted = sorted(rng.sample([F(k, 4) for k in range(-20, 21)], rng.randint(1, 6)))
        f = ExactPolynomial.from_roots(planted)
        # optionally multiply by a positive irreducible quadratic
        if rng.random() < 0.5:
            c = F(rng.randint(1, 5))
            f = f * (z**2 + c)
        roots = real_roots_exact(f)
        assert len(roots) == len(planted)
        for r, expected in zip(roots, planted):
            refined = r.refine(F(1, 10**12))
            assert refined.lo <= expected <= refined.hi or refined.lo == expected


def test_real_root_refine_and_exact_hit():
    f = (z - F(1, 2)) * (z - F(9, 4))
    roots = real_roots_exact(f)
    r0 = roots[0].refine(F(1, 2**40))
    assert r0.hi - r0.lo <= F(1, 2**40)
    # dyadic roots are eventually hit exactly by dyadic bisection
    assert r0.is_exact or (r0.lo < F(1, 2) < r0.hi)


def test_count_distinct_real_roots():
    assert count_distinct_real_roots((z - 1) ** 5) == 1
    assert count_distinct_real_roots(z**2 + 1) == 0
    assert count_distinct_real_roots(z**4 - 1) == 2
    rng = random.Random(47)
    for _ in range(40):
        f = random_poly(rng, rng.randint(1, 6))
        assert count_distinct_real_roots(f) == len(real_roots_exact(f))


def test_real_roots_rejects_nonreal_and_zero():
    with pytest.raises(ValueError):
        real_roots_exact(ExactPolynomial.zero())
    with pytest.raises(ValueError):
        real_roots_exact(z - i_unit)


# ---------------------------------------------------------------------------
# bounds, numeric roots
# ---------------------------------------------------------------------------


def test_cauchy_bound_values():
    assert cauchy_root_bound([z**2]) == 1
    assert cauchy_root_bound([z - 3]) == 4
    assert cauchy_root_bound([z**2 - 2 * z + 1]) == 3
    assert cauchy_root_bound([z**2, z - 3]) == 4


def test_cauchy_bound_contains_all_roots():
    rng = random.Random(48)
    polys = [random_poly(rng, rng.randint(1, 7), gaussian=(k % 3 == 0)) for k in range(30)]
    bound = float(cauchy_root_bound(polys))
    for f in polys:
        for cl in complex_roots_numeric(f):
            assert abs(cl.center) < bound


def test_complex_roots_frozen_example():
    clusters = complex_roots_numeric((z - 1) ** 2)
    assert len(clusters) == 1
    assert clusters[0].multiplicity == 2
    assert abs(clusters[0].center - 1.0) < 1e-6
    assert clusters[0].radius <= 1e-6


def test_complex_roots_planted_products():
    # bulk agreement statistics: planted factored products, degree <= 10
    rng = random.Random(49)
    polys = []
    planted = []
    for _ in range(1000):
        deg = rng.randint(1, 10)
        roots = rng.sample(
            [complex(a / 2, b / 2) for a in range(-6, 7) for b in range(-4, 5)], deg
        )
        planted.append(sorted(roots, key=lambda c: (c.real, c.imag)))
        polys.append(
            ExactPolynomial.from_roots(
                [
                    GaussianRational(F(int(2 * r.real), 2), F(int(2 * r.imag), 2)).canonical()
                    for r in roots
                ]
            )
        )
    results = complex_roots_many(polys)
    hits = 0
    for expected, clusters in zip(planted, results):
        centers = [
            cl.center for cl in clusters for _ in range(cl.multiplicity)
        ]
        ok = len(centers) == len(expected)
        if ok:
            pool = list(centers)
            for want in expected:
                best = min(pool, key=lambda c: abs(c - want))
                if abs(best - want) < 1e-7:
                    pool.remove(best)
                else:
                    ok = False
                    break
        if ok:
            hits += 1
    assert hits >= 990


def test_complex_roots_multiplicity_sums():
    rng = random.Random(50)
    for _ in range(20):
        f = random_poly(rng, rng.randint(1, 8), gaussian=True)
        clusters = complex_roots_numeric(f)
        assert sum(c.multiplicity for c in clusters) == f.degree


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------


def test_resultant_known_values():
    assert resultant_exact(z - 1, z + 1) == 2
    f = z * (z - 1) * (z - 2)
    assert resultant_exact(f, f.derivative()) == -4
    assert resultant_exact(z - 3, ExactPolynomial.constant(5)) == 5


def test_resultant_zero_iff_common_root():
    assert resultant_exact((z - 2) * (z + 1), (z - 2) * (z + 5)) == 0
    assert resultant_exact((z - 2), (z + 2)) != 0


def test_resultant_matches_root_product_oracle():
    rng = random.Random(51)
    for _ in range(40):
        f = random_poly(rng, rng.randint(1, 5))
        g = random_poly(rng, rng.randint(1, 5))
        exact = resultant_exact(f, g)
        approx = resultant_from_roots(f, g)
        assert abs(complex(float(exact)) - approx) <= 1e-6 * max(1.0, abs(approx))


def test_resultant_gaussian():
    r = resultant_exact(z - i_unit, z + i_unit)
    assert r == GaussianRational(F(0), F(2))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_poly_json_round_trip():
    f = ExactPolynomial((F(1, 2), 0, 1))
    assert poly_to_json(f) == ["1/2", "0", "1"]
    assert poly_from_json(["1/2", "0", "1"]) == f
    g = (z - i_unit) * (z - 2)
    assert poly_from_json(poly_to_json(g)) == g


def test_scalar_json_forms():
    assert scalar_to_json(F(-3, 4)) == "-3/4"
    assert scalar_from_json("-3/4") == F(-3, 4)
    assert scalar_from_json(7) == F(7)
    assert scalar_from_json({"re": "1", "im": "2"}) == GaussianRational(F(1), F(2))
    assert scalar_from_json({"re": "1", "im": "0"}) == F(1)
    with pytest.raises(ValueError):
        scalar_from_json(0.5)
    with pytest.raises(ValueError):
        poly_from_json("nope")
