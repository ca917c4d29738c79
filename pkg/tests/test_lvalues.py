import json
import threading
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

from borcherds_lab import lvalues
from borcherds_lab.arith import l_value_neg
from borcherds_lab._config import analytic_dps
from borcherds_lab.lvalues import (
    LValueDisagreement,
    dirichlet_l_deriv_neg1,
    dirichlet_l_neg1,
    hurwitz_em,
    l_logderiv_neg1,
    zeta_deriv_neg1,
    zeta_logderiv_neg1,
    zeta_value_neg1,
    zetaK_logderiv_neg1,
)

from oracles import l_neg1_mpmath, zeta_neg1_mpmath

GOLDEN = json.loads(Path(__file__).with_name("golden_values.json").read_text())
DS = (5, 13, 17, 29)


def test_zeta_against_golden_and_mpmath():
    assert zeta_value_neg1().value == pytest.approx(-1 / 12, abs=1e-15)
    assert zeta_deriv_neg1().value == pytest.approx(GOLDEN["zeta_deriv_neg1"], abs=1e-14)
    _, d = zeta_neg1_mpmath()
    assert zeta_deriv_neg1().value == pytest.approx(float(d), abs=1e-14)
    assert zeta_logderiv_neg1().value == pytest.approx(12 * float(-d), rel=1e-13)


@pytest.mark.parametrize("D", DS)
def test_dirichlet_against_golden_and_mpmath(D):
    assert Fraction(GOLDEN["L_neg1"][str(D)]) == l_value_neg(D, 2)
    val, der = l_neg1_mpmath(D)
    assert dirichlet_l_neg1(D).value == pytest.approx(float(val), abs=1e-13)
    assert dirichlet_l_deriv_neg1(D).value == pytest.approx(float(der), abs=1e-13)
    assert dirichlet_l_deriv_neg1(D).value == pytest.approx(GOLDEN["L_deriv_neg1"][str(D)], abs=1e-13)
    assert l_logderiv_neg1(D).value == pytest.approx(GOLDEN["L_logderiv_neg1"][str(D)], abs=1e-13)


@pytest.mark.parametrize("D", DS)
def test_shipped_values_carry_two_agreeing_routes(D):
    for lv in (dirichlet_l_neg1(D), dirichlet_l_deriv_neg1(D), zetaK_logderiv_neg1(D)):
        assert lv.method != lv.check_method
        assert lv.agreement <= 1e-10 and lv.abs_error_estimate <= 1e-10
        assert abs(lv.value - lv.check_value) <= 1e-10


def test_dedekind_logderiv_is_a_sum():
    for D in DS:
        assert zetaK_logderiv_neg1(D).value == pytest.approx(
            zeta_logderiv_neg1().value + l_logderiv_neg1(D).value, abs=1e-15)


@pytest.mark.parametrize("s, a", [(-1, 0.2), (-1, 0.8), (2, 1), (2, 0.4), (0.5, 0.3), (-3, 0.6)])
def test_hurwitz_em_against_mpmath(s, a):
    with mpmath.workdps(40):
        v, d, bound = hurwitz_em(s, mpmath.mpf(a))
        assert bound < mpmath.mpf(10) ** -25
        assert abs(v - mpmath.zeta(s, mpmath.mpf(a))) <= 10 * bound + mpmath.mpf(10) ** -35
        assert abs(d - mpmath.zeta(s, mpmath.mpf(a), 1)) <= 10 * bound + mpmath.mpf(10) ** -35


def test_hurwitz_em_bound_shrinks_with_more_terms():
    with mpmath.workdps(40):
        b1 = hurwitz_em(-1, mpmath.mpf("0.2"), n_terms=10)[2]
        b2 = hurwitz_em(-1, mpmath.mpf("0.2"), n_terms=40)[2]
    assert b2 < b1


def test_to_json_fields():
    js = dirichlet_l_deriv_neg1(5).to_json()
    assert set(js) == {"label", "value", "abs_error_estimate", "method", "check_method", "method_agreement"}
    json.dumps(js)


def test_precision_env(monkeypatch):
    monkeypatch.delenv("BORCHERDS_LAB_PRECISION", raising=False)
    assert analytic_dps() == 30
    monkeypatch.setenv("BORCHERDS_LAB_PRECISION", "45")
    assert analytic_dps() == 45
    assert dirichlet_l_deriv_neg1(13).value == pytest.approx(GOLDEN["L_deriv_neg1"]["13"], abs=1e-13)
    monkeypatch.setenv("BORCHERDS_LAB_PRECISION", "12")
    with pytest.raises(ValueError):
        analytic_dps()
    monkeypatch.setenv("BORCHERDS_LAB_PRECISION", "many")
    with pytest.raises(ValueError):
        analytic_dps()


def test_disagreeing_routes_are_refused():
    with pytest.raises(LValueDisagreement):
        lvalues._make("x", mpmath.mpf(1), mpmath.mpf(1.1), mpmath.mpf(1e-20), mpmath.mpf(1e-20), 30)


def test_cache_is_thread_safe():
    lvalues._CACHE.clear()
    out = []

    def work():
        out.append(dirichlet_l_deriv_neg1(17, dps=33))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(out) == 8 and all(x is out[0] for x in out)
