import math

import pytest

from disbessel import laplace
from disbessel.bessel import BesselSpec, evaluate
from disbessel.errors import ConvergenceError, DomainError, RegionError


def spec(kind, direction, n, c):
    return BesselSpec(kind, direction, n, c)


def test_closed_examples():
    assert laplace.laplace_closed(spec("J", "forward", 0, 1.0), 2) == pytest.approx(1 / math.sqrt(5), rel=1e-15)
    assert laplace.laplace_closed(spec("I", "forward", 0, 0.5), 1) == pytest.approx(1 / math.sqrt(0.75), rel=1e-15)
    assert laplace.laplace_closed(spec("J", "forward", 1, 1.0), 0) == 1


def test_closed_on_negative_branch():
    # series summed in mpmath at 30 digits from the polynomial form
    assert laplace.laplace_closed(spec("J", "forward", 2, 2.0), -5) == pytest.approx(-0.0068870653902001525, rel=1e-13)
    assert laplace.laplace_closed(spec("J", "forward", 1, 1.0), -4) == pytest.approx(0.029857499854668106, rel=1e-13)


def test_closed_i_domain():
    with pytest.raises(DomainError):
        laplace.laplace_closed(spec("I", "forward", 0, 0.5), 0.25)


def test_series_examples():
    e = laplace.laplace_series(spec("J", "forward", 0, 1.0), 2)
    assert e.in_region
    assert abs(e.series - 1 / math.sqrt(5)) < 1e-10
    e = laplace.laplace_series(spec("I", "backward", 1, 0.5), 1.2)
    assert abs(e.series - e.closed) < 1e-10
    with pytest.raises(RegionError):
        laplace.laplace_series(spec("J", "forward", 0, 1.0), -0.5)


def test_backward_n0_offset():
    e = laplace.laplace_series(spec("I", "backward", 0, 0.5), 0.9)
    assert e.series - e.closed == pytest.approx(10, rel=1e-12)
    for z in (0.8, 1.2):
        e = laplace.laplace_series(spec("I", "backward", 0, 0.5), z)
        assert abs(e.series - e.closed - 1 / (1 - z)) < 1e-10
    for z in (0.9, 1.1, 0.7):
        e = laplace.laplace_series(spec("J", "backward", 0, 0.3), z)
        assert abs(e.series - e.closed - 1 / (1 - z)) < 1e-10


def test_regions():
    s = spec("J", "backward", 1, 1.0)
    assert laplace.laplace_in_region(s, 1 - 1.4)
    assert not laplace.laplace_in_region(s, 1 - 1.42)
    assert not laplace.laplace_in_region(s, 1.0)
    s = spec("I", "backward", 1, 0.5)
    assert laplace.laplace_in_region(s, 1.4)
    assert not laplace.laplace_in_region(s, 1.5)
    s = spec("I", "forward", 1, 0.5)
    assert laplace.laplace_in_region(s, 0.51)
    assert not laplace.laplace_in_region(s, 0.5)
    assert laplace.laplace_in_region(s, -2.6)
    # guard band
    s = spec("J", "forward", 0, 1.0)
    assert not laplace.laplace_in_region(s, math.sqrt(2) - 1 + 1e-10)


def test_laplace_eval_flags_out_of_region():
    e = laplace.laplace_eval(spec("I", "backward", 0, 0.5), 0.0)
    assert not e.in_region and math.isnan(e.series)


def test_series_nonconvergence():
    with pytest.raises(ConvergenceError):
        laplace.laplace_series(spec("J", "forward", 0, 1.0), 1.0, max_terms=5)


def test_genfun_examples():
    assert laplace.genfun_closed(spec("J", "forward", 0, 1.0), 0) == 1
    assert laplace.genfun_closed(spec("I", "backward", 0, 0.5), 0) == 0
    assert laplace.genfun_closed(spec("I", "forward", 0, 0.5), 0) == 1
    for s in (spec("J", "backward", 2, 0.7), spec("I", "forward", 3, 0.2)):
        assert laplace.genfun_series(s, 0).value == evaluate(s, 0)


def test_genfun_series_matches_closed():
    s = spec("J", "forward", 0, 1.0)
    assert abs(laplace.genfun_series(s, 0.5).value - laplace.genfun_closed(s, 0.5)) < 1e-12
    s = spec("I", "backward", 2, 0.5)
    assert abs(laplace.genfun_series(s, 0.3).value - laplace.genfun_closed(s, 0.3)) < 1e-12
    s = spec("I", "backward", 0, 0.5)
    assert abs(laplace.genfun_series(s, 0.3).value - laplace.genfun_closed(s, 0.3) - 1) < 1e-12


def test_genfun_region():
    with pytest.raises(RegionError):
        laplace.genfun_series(spec("J", "forward", 0, 1.0), 0.71)
    assert laplace.genfun_radius(spec("J", "backward", 0, 1.0)) == pytest.approx(math.sqrt(2))
    assert laplace.genfun_radius(spec("I", "forward", 0, -0.5)) == pytest.approx(2 / 3)


def test_genfun_branch_point():
    with pytest.raises(DomainError):
        laplace.genfun_closed(spec("I", "backward", 0, 0.5), 0.5)


def test_genfun_laplace_identity():
    for kind, c in (("J", 0.7), ("J", -2.0), ("I", 0.4), ("I", 1.5)):
        for n in range(4):
            s = spec(kind, "forward", n, c)
            for z in (3.0, 7.5, -4.5, -9.0):
                if not laplace.laplace_in_region(s, z):
                    continue
                lhs = laplace.genfun_closed(s, 1 / (1 + z)) / (1 + z)
                assert lhs == pytest.approx(laplace.laplace_closed(s, z), rel=1e-12, abs=1e-14)
