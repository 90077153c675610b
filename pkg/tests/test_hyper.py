import math
import random
from fractions import Fraction

import pytest

from disbessel import hyper
from disbessel.errors import ConvergenceError, DomainError, PreconditionError
from disbessel.hyper import Hyp2F1Request, hyp2f1, hyp2f1_pfaff, hyp2f1_terminating


def test_pochhammer():
    assert hyper.pochhammer(3, 0) == 1
    assert hyper.pochhammer(-2, 3) == 0
    assert hyper.pochhammer(0.5, 2) == 0.75
    assert hyper.pochhammer(Fraction(-1, 2), 3) == Fraction(-1, 2) * Fraction(1, 2) * Fraction(3, 2)


def test_ln_gamma_ratio_examples():
    assert hyper.ln_gamma_ratio([5], [4]) == pytest.approx(math.log(4), rel=1e-15)
    assert hyper.ln_gamma_ratio([1], [1]) == 0
    assert hyper.ln_gamma_ratio([7.5], [6.5, 1]) == pytest.approx(math.log(6.5), rel=1e-15)


def test_ln_gamma_ratio_large_arguments():
    # mpmath at 30 digits
    assert hyper.ln_gamma_ratio([1e6 + 0.5], [1e6]) == pytest.approx(6.90775515398213705, rel=1e-14)
    assert hyper.ln_gamma_ratio([123.25], [3.5, 100]) == pytest.approx(108.279303978594171, rel=1e-14)
    # Gamma(x+1)/Gamma(x) = x all the way out
    for x in (0.5, 17.25, 1e3, 9.5e5):
        assert hyper.ln_gamma_ratio([x + 1], [x]) == pytest.approx(math.log(x), rel=1e-13)


def test_ln_gamma_ratio_rejects_nonpositive():
    with pytest.raises(DomainError):
        hyper.ln_gamma_ratio([0], [])
    with pytest.raises(DomainError):
        hyper.ln_gamma_ratio([2], [-1.5])


def test_terminating_examples():
    assert hyp2f1_terminating(0, 0.5, 1, -4) == 1
    assert hyp2f1_terminating(-1, 0.5, 1, -1) == 1.5
    assert hyp2f1_terminating(-1, -0.5, 2, 1) == 1.25


def test_terminating_is_exact_for_rationals():
    v = hyp2f1_terminating(-3, Fraction(1, 3), Fraction(5, 2), Fraction(-7, 4))
    assert isinstance(v, Fraction)
    # term by term
    a, b, g, z = -3, Fraction(1, 3), Fraction(5, 2), Fraction(-7, 4)
    ref = sum(Fraction(hyper.pochhammer(a, k) * hyper.pochhammer(b, k)) / (hyper.pochhammer(g, k) * math.factorial(k)) * z ** k
              for k in range(4))
    assert v == ref


def test_terminating_needs_nonpositive_parameter():
    with pytest.raises(PreconditionError):
        hyp2f1_terminating(0.5, 1.5, 1, 0.2)


def test_pfaff_examples():
    assert hyp2f1_pfaff(Hyp2F1Request(0.5, 1, 1, -1)).value == pytest.approx(2 ** -0.5, rel=1e-15)
    assert hyp2f1_pfaff(Hyp2F1Request(0, 2, 3, -5)).value == 1
    assert hyp2f1_pfaff(Hyp2F1Request(1.5, 1, 1, -0.25)).value == pytest.approx(1.25 ** -1.5, rel=1e-15)


def test_pfaff_nonterminating_against_mpmath():
    # mpmath.hyp2f1 at 30 digits
    r = hyp2f1_pfaff(Hyp2F1Request(0.3, 0.7, 1.5, -3))
    assert r.value == pytest.approx(0.79600322784480462, rel=1e-13)
    assert r.truncation_bound >= 0
    r = hyp2f1(Hyp2F1Request(1.25, -0.5, 2, -9))
    assert r.value == pytest.approx(2.5160589061401158, rel=1e-13)


def test_pfaff_needs_negative_argument():
    with pytest.raises(PreconditionError):
        hyp2f1_pfaff(Hyp2F1Request(0.5, 1, 1, 0.5))


def test_pfaff_reports_nonconvergence():
    with pytest.raises(ConvergenceError) as info:
        hyp2f1_pfaff(Hyp2F1Request(0.5, 0.25, 1.5, -1e6, max_terms=10))
    assert info.value.partial.terms_used == 10


def test_dispatch():
    r = hyp2f1(Hyp2F1Request(-2, 7, 1, 0.9))
    assert r.value == pytest.approx(1 - 2 * 7 * 0.9 + 7 * 8 / 2 * 0.81)
    assert r.truncation_bound == 0
    assert hyp2f1(Hyp2F1Request(1, 1.5, 1, 0.25)).value == pytest.approx(0.75 ** -1.5, rel=1e-13)
    assert hyp2f1(Hyp2F1Request(0.3, 0.7, 1.5, 0.6)).value == pytest.approx(1.12012051173234769, rel=1e-13)
    with pytest.raises(DomainError):
        hyp2f1(Hyp2F1Request(1, 1.5, 1, 1.0))


def test_request_invariants():
    with pytest.raises(DomainError):
        Hyp2F1Request(1, 1, -2, 0.1)
    with pytest.raises(DomainError):
        Hyp2F1Request(1, 1, 1, 0.1, tol=0)
    with pytest.raises(DomainError):
        Hyp2F1Request(1, 1, 1, 0.1, max_terms=0)


def test_terms_used_within_budget():
    req = Hyp2F1Request(0.5, 0.5, 1, 0.95, max_terms=5000)
    assert hyp2f1(req).terms_used <= 5000


def test_pfaff_matches_terminating_sum():
    rng = random.Random(11)
    for _ in range(200):
        m = rng.randint(0, 12)
        b = rng.uniform(-3, 3)
        g = rng.uniform(0.2, 4)
        z = -rng.uniform(0.01, 20)
        direct = hyp2f1_terminating(-m, b, g, z)
        # force the Pfaff route by asking through the request
        pf = hyp2f1_pfaff(Hyp2F1Request(-m, b, g, z)).value
        assert pf == pytest.approx(direct, rel=1e-12, abs=1e-12 * max(1, abs(direct)))


def test_partial_sums_nondecreasing_for_positive_parameters():
    rng = random.Random(5)
    for _ in range(50):
        a, b, g = rng.uniform(0.1, 3), rng.uniform(0.1, 3), rng.uniform(0.1, 3)
        z = rng.uniform(0, 0.99)
        s = hyper.partial_sums(a, b, g, z, 60)
        assert all(y >= x for x, y in zip(s, s[1:]))


def _relations(a, b, g, z):
    def F(a_, b_, g_):
        return hyp2f1(Hyp2F1Request(a_, b_, g_, z)).value

    parts = {
        "i": (g * F(a, b, g), -g * F(a, b + 1, g), a * z * F(a + 1, b + 1, g + 1)),
        "ii": (g * F(a, b, g), -g * F(a + 1, b, g), b * z * F(a + 1, b + 1, g + 1)),
        "iii": (g * F(a, b, g), -(g - a) * F(a, b, g + 1), -a * F(a + 1, b, g + 1)),
        "iv": ((g - a - b) * F(a, b, g), -(g - a) * F(a - 1, b, g), b * (1 - z) * F(a, b + 1, g)),
    }
    return {k: (sum(v), max(abs(x) for x in v)) for k, v in parts.items()}


def test_recursion_relations_random():
    rng = random.Random(2024)
    for _ in range(200):
        a, b = rng.uniform(-2.5, 3), rng.uniform(-2.5, 3)
        g = rng.uniform(0.6, 5)
        z = rng.uniform(-4, 0.9)
        for name, (res, scale) in _relations(a, b, g, z).items():
            assert abs(res) < 1e-10 * scale, (name, a, b, g, z, res)
