import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twocenter.errors import (
    ComplexRadicand,
    ConditionViolated,
    NoCaseApplies,
    OutOfDomain,
)
from twocenter.elliptic_identities import (
    LemmaParams,
    alpha_beta,
    aux_functions,
    cor_case,
    good_formula_t_down,
    lemma_lhs,
    lemma_rhs,
    principal_sqrt,
    real_part_corollary_check,
    sample_lemma_params,
    t_down_complex_line,
    verify_lemma_batch,
)
from twocenter.param_domain import NormalizedParams
from twocenter.period_engine import t_circ, t_down, t_up

finite = dict(allow_nan=False, allow_infinity=False)


def complex_in_disk(radius):
    return st.tuples(
        st.floats(min_value=0.0, max_value=radius, **finite),
        st.floats(min_value=0.0, max_value=2.0 * math.pi, **finite),
    ).map(lambda rt: rt[0] * cmath.exp(1j * rt[1]))


class TestLemma:
    def test_zero_b_constant_integrand(self):
        p = LemmaParams(2.0, 0.0, 0.3)
        assert lemma_lhs(p) == pytest.approx(2.0 * math.pi / 2.0, rel=1e-12)
        assert lemma_rhs(p) == pytest.approx(2.0 * math.pi / 2.0, rel=1e-12)

    def test_real_parameters(self):
        p = LemmaParams(1.0, 0.4, 0.6)
        l, r = lemma_lhs(p), lemma_rhs(p)
        assert abs(l - r) <= 1e-9 * max(1.0, abs(l))

    def test_real_ratio_segment(self):
        # b proportional to t + i sqrt(1 - t^2): the straight segment on which the
        # two integrals agree by a real change of variables
        t = 0.3
        b = 0.5 * (t + 1j * math.sqrt(1.0 - t * t))
        p = LemmaParams(1.0, b, t)
        assert p.satisfies_conditions()
        l, r = lemma_lhs(p), lemma_rhs(p)
        assert abs(l - r) <= 1e-9 * max(1.0, abs(l))

    def test_condition_violation_rejected(self):
        p = LemmaParams(1.0, 2.0, 0.1)
        assert not p.satisfies_conditions()
        with pytest.raises(ConditionViolated):
            lemma_lhs(p)

    def test_batch_residuals(self):
        out = verify_lemma_batch(2000, seed=11)
        assert out["max_residual"] < 1e-8
        assert out["max_case_residual"] < 1e-8

    def test_sampler_respects_conditions(self):
        a, b, t = sample_lemma_params(500, seed=5)
        for k in range(500):
            assert LemmaParams(complex(a[k]), complex(b[k]),
                               complex(t[k])).satisfies_conditions()


class TestAlphaBeta:
    def test_trivial(self):
        ab = alpha_beta(LemmaParams(1.0, 0.0, 0.5))
        assert ab.alpha == pytest.approx(1.0)
        assert abs(ab.beta) < 1e-12

    def test_t_zero_product_vanishes(self):
        ab = alpha_beta(LemmaParams(1.0, 0.5, 0.0))
        assert abs(ab.alpha * ab.beta) < 1e-12

    def test_degenerate_sum(self):
        ab = alpha_beta(LemmaParams(1.0, 1j, 1.0))
        assert abs(ab.alpha**2 + ab.beta**2) < 1e-12
        assert abs(abs(ab.alpha * ab.beta) - 1.0) < 1e-12

    @settings(max_examples=150, deadline=None)
    @given(complex_in_disk(2.0), complex_in_disk(2.0), complex_in_disk(1.5))
    def test_vieta_relations(self, a, b, t):
        ab = alpha_beta(LemmaParams(a, b, t))
        scale = max(1.0, abs(a) ** 2 + abs(b) ** 2)
        assert abs(ab.alpha**2 + ab.beta**2 - (a * a + b * b)) < 1e-12 * scale
        assert abs(abs(ab.alpha * ab.beta) - abs(a * b * t)) < 1e-12 * scale


class TestCorCase:
    def test_generic_case_agrees(self):
        a, b, t = sample_lemma_params(40, seed=2)
        for k in range(40):
            p = LemmaParams(complex(a[k]), complex(b[k]), complex(t[k]))
            res = cor_case(p)
            ref = lemma_lhs(p)
            assert abs(res.value - ref) <= 1e-9 * (1.0 + abs(ref))
            assert res.case in ("i", "ii", "iii", "iv")

    def test_real_params_modulus_below_one(self):
        # complex t keeps the pairing ratio complex: plain first case
        p = LemmaParams(1.0, 0.3, 0.2 + 0.5j)
        res = cor_case(p)
        ref = lemma_lhs(p)
        assert abs(res.value - ref) <= 1e-9 * (1.0 + abs(ref))

    def test_imaginary_roots_real_ratio(self):
        # imaginary a with real b and imaginary t makes both pairing roots
        # purely imaginary with a real ratio: the real-part reduction applies
        p = LemmaParams(1j, 0.5, 0.4j)
        assert p.satisfies_conditions()
        ab = alpha_beta(p)
        assert abs(complex(ab.alpha).real) < 1e-12
        assert abs(complex(ab.beta).real) < 1e-12
        ratio = ab.beta / ab.alpha
        assert abs(complex(ratio).imag) < 1e-10 * abs(ratio)
        res = cor_case(p)
        ref = lemma_lhs(p)
        assert res.case in ("iii", "iv")
        assert abs(res.value - ref) <= 1e-9 * (1.0 + abs(ref))

    def test_real_roots_real_ratio(self):
        # real a, imaginary b, imaginary t: both roots real, small real ratio
        p = LemmaParams(1.0, 0.3j, 0.4j)
        assert p.satisfies_conditions()
        ab = alpha_beta(p)
        assert abs(complex(ab.alpha).imag) < 1e-12
        assert abs(complex(ab.beta).imag) < 1e-12
        res = cor_case(p)
        ref = lemma_lhs(p)
        assert res.case == "iii"
        assert abs(res.value - ref) <= 1e-9 * (1.0 + abs(ref))

    def test_ratio_collapse_sits_on_condition_boundary(self):
        # for real parameters the pairing collapses (|beta/alpha| = 1)
        # exactly where |b/a| meets the validity bound, so the excluded
        # ratio is unreachable from valid parameters
        a, b = 1.0, 0.5
        t_collapse = (a * a + b * b) / (2.0 * a * b)
        p = LemmaParams(a, b, t_collapse)
        assert abs(abs(b / a) - p.min_modulus()) < 1e-12
        with pytest.raises(ConditionViolated):
            cor_case(p)

    def test_degenerate_ratio_guard(self, monkeypatch):
        import twocenter.elliptic_identities as ell
        monkeypatch.setattr(ell, "alpha_beta",
                            lambda p: ell.AlphaBetaPair(1.0 + 0j, 1.0 + 0j))
        with pytest.raises(NoCaseApplies):
            ell.cor_case(LemmaParams(1.0, 0.3, 0.2))

    def test_alpha_beta_zero_rejected(self):
        with pytest.raises((NoCaseApplies, ConditionViolated)):
            cor_case(LemmaParams(0.0, 0.0, 0.5))


class TestAuxFunctions:
    def test_gamma_zero(self):
        aux = aux_functions(1.0, 1.0, 0.5)
        assert aux.gamma == pytest.approx(0.0, abs=1e-15)

    def test_psi_zero_at_top(self):
        aux = aux_functions(1.0, 1.0, 1.25)
        assert aux.psi == pytest.approx(0.0, abs=1e-15)

    def test_hand_evaluated_point(self):
        aux = aux_functions(1.0, 1.0, 1.0)
        assert aux.eps == pytest.approx(0.5)
        assert aux.chi == pytest.approx(0.5)
        assert aux.gamma == pytest.approx(0.5)
        assert aux.psi == pytest.approx(0.5)

    def test_complex_radicand(self):
        with pytest.raises(ComplexRadicand):
            aux_functions(1.0, 1.0, 1.3)

    def test_reflected_combinations_negative_above_line(self):
        # both eps(-dh) +- chi(-dh) stay negative on the upper triangle
        for fh in (1.05, 1.15, 1.24):
            aux = aux_functions(1.0, -1.0, fh)
            assert aux.eps + aux.chi < 0.0
            assert aux.eps - aux.chi < 0.0


class TestGoodFormula:
    def test_reflected_term_purely_imaginary(self):
        from twocenter.elliptic_identities import _periodic_inv_sqrt
        from twocenter.quadrature import DEFAULT_SPEC
        aux = aux_functions(1.0, -1.0, 1.1)
        val = _periodic_inv_sqrt(0.0, -aux.chi, aux.eps, DEFAULT_SPEC)
        assert abs(val.real) < 1e-10 * abs(val)

    def test_symmetric_in_delta_sign(self):
        g1 = good_formula_t_down(1.0, 1.0, 1.1)
        g2 = good_formula_t_down(1.0, -1.0, 1.1)
        assert abs(g1 - g2) < 1e-10 * abs(g1)

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomain):
            good_formula_t_down(1.0, 1.0, 0.5)

    def test_matches_plain_t_down_nowhere_needed(self):
        # on the triangle the real part is half the line-form real part
        g = good_formula_t_down(1.0, 1.0, 1.2)
        line = t_down_complex_line(1.0, 1.0, 1.2)
        assert 2.0 * g.real == pytest.approx(line.real, rel=1e-9)
        assert g.imag == pytest.approx(line.imag, rel=1e-9)


class TestRealPartCorollary:
    def test_equality_on_triangle(self):
        for fh in (1.02, 1.1, 1.2, 1.249):
            tc, tr = real_part_corollary_check(1.0, 1.0, fh)
            assert abs(tc - tr) < 1e-8 * tc

    def test_regular_on_upper_boundary(self):
        # t_circ stays regular on the top edge of the triangle even though
        # the two-term continuation degenerates there (its turning point
        # collides with the far endpoint zero)
        n = NormalizedParams(1.0, 1.0, 1.25)
        res = t_circ(n)
        assert res.status.value == "Ok"
        assert np.isfinite(res.value) and res.value > 0.0
        # just inside, the corollary equality still holds
        tc, tr = real_part_corollary_check(1.0, 1.0, 1.25 - 1e-6)
        assert abs(tc - tr) < 1e-8 * tc

    def test_line_form_real_part_is_t_circ(self):
        n = NormalizedParams(1.0, 1.0, 1.15)
        line = t_down_complex_line(1.0, 1.0, 1.15)
        assert line.real == pytest.approx(t_circ(n).value, rel=1e-9)

    def test_line_form_beyond_triangle(self):
        # above the triangle only the initial stretch contributes a real
        # part, which is half of the t_up value
        fh = 1.5
        n = NormalizedParams(1.0, 1.0, fh)
        line = t_down_complex_line(1.0, 1.0, fh)
        assert 2.0 * line.real == pytest.approx(t_up(n).value, rel=1e-9)

    def test_line_form_reduces_to_t_down_below(self):
        n = NormalizedParams(1.0, 1.0, 0.5)
        line = t_down_complex_line(1.0, 1.0, 0.5)
        assert abs(line.imag) < 1e-12
        assert line.real == pytest.approx(t_down(n).value, rel=1e-10)
