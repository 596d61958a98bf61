"""The stabilizing chains: sigma, its tails, the Cartier shortcut, tau."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fsing import (
    Ideal,
    MonomialIdeal,
    PolyRing,
    QDivisor,
    SigmaOptions,
    Triple,
    cartier_period,
    frobenius_root,
    is_sharply_fpure,
    is_strongly_fregular,
    newton_ideal,
    sigma,
    sigma_fast_cartier,
    sigma_prime_n,
    sigma_step,
    tau_b,
    verify_monomial_theorem,
)
from fsing.errors import NonconvergenceError
from fsing.nonfpure import _SigmaEngine

from oracles import random_monomial_gens


def cusp_triple(p: int, coef=1) -> Triple:
    R = PolyRing(p, ["x", "y"])
    f = R.variable(0) ** 3 - R.variable(1) ** 2
    return Triple(R, QDivisor([(coef, f)]))


def maximal_ideal(R: PolyRing) -> Ideal:
    return Ideal(R, [R.variable(i) for i in range(R.nvars)])


class TestTripleValidation:
    def test_unit_a_normalized(self):
        R = PolyRing(5, ["x"])
        T = Triple(R, a=MonomialIdeal.unit(1), t=2)
        assert T.a is None

    def test_zero_a_rejected(self):
        R = PolyRing(5, ["x"])
        with pytest.raises(ValueError):
            Triple(R, a=MonomialIdeal(1), t=1)

    def test_nonpositive_t_rejected(self):
        R = PolyRing(5, ["x"])
        with pytest.raises(ValueError):
            Triple(R, a=MonomialIdeal(1, [(1,)]), t=0)

    def test_divisor_ring_mismatch(self):
        R, S = PolyRing(5, ["x"]), PolyRing(5, ["y"])
        entry = QDivisor([(1, S.variable(0))])
        with pytest.raises(ValueError):
            Triple(R, entry)

    def test_divisor_rejects_bad_entries(self):
        R = PolyRing(5, ["x"])
        with pytest.raises(ValueError):
            QDivisor([(0, R.variable(0))])
        with pytest.raises(ValueError):
            QDivisor([(1, R.one())])
        with pytest.raises(ValueError):
            QDivisor([(-2, R.variable(0))])


class TestCuspChain:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_value_maximal_ideal(self, p):
        opts = SigmaOptions(e_max=3, probe=1 if p == 11 else 2)
        result = sigma(cusp_triple(p), opts)
        assert result.ideal == maximal_ideal(result.ideal.ring)
        assert result.converged
        assert result.iterations <= 3
        assert result.probe_stable

    def test_fixed_point(self):
        T = cusp_triple(5)
        result = sigma(T, SigmaOptions(e_max=3))
        assert sigma_step(result.ideal, T, SigmaOptions(e_max=3)) == result.ideal


class TestFormalPowerSensitivity:
    @pytest.mark.parametrize("p", [2, 5])
    def test_variable_t_one_is_unit(self, p):
        R = PolyRing(p, ["x"])
        T = Triple(R, a=MonomialIdeal(1, [(1,)]), t=1)
        assert sigma(T).ideal.is_unit()
        assert is_sharply_fpure(T)

    @pytest.mark.parametrize("p", [2, 5])
    def test_pth_power_fractional_t_is_proper(self, p):
        R = PolyRing(p, ["x"])
        T = Triple(R, a=MonomialIdeal(1, [(p,)]), t=Fraction(1, p))
        result = sigma(T)
        assert str(result.ideal) == "(x)"
        assert not is_sharply_fpure(T)
        # the same numeric exponent on the smaller ideal behaves differently
        # (rounding happens before the root), and tau at any smaller exponent
        # is trivial, so the two chains genuinely separate
        assert tau_b(Triple(R, a=MonomialIdeal(1, [(p,)]), t=Fraction(1, p) - Fraction(1, 100))).is_unit()


class TestThresholdPairs:
    def test_p5(self):
        T = cusp_triple(5, Fraction(4, 5))
        assert sigma(T).ideal == maximal_ideal(T.ring)
        assert tau_b(cusp_triple(5, Fraction(79, 100))).is_unit()
        assert is_strongly_fregular(cusp_triple(5, Fraction(79, 100)))

    def test_p11(self):
        T = cusp_triple(11, Fraction(9, 11))
        opts = SigmaOptions(e_max=3, probe=1)
        assert sigma(T, opts).ideal == maximal_ideal(T.ring)
        assert tau_b(cusp_triple(11, Fraction(889, 1100))).is_unit()

    def test_tau_plateau_resumes(self):
        # partial sums sit at (x, y) for two levels before jumping to R
        T = cusp_triple(5, Fraction(79, 100))
        ring = T.ring
        f = T.divisor.entries[0][1]
        from fsing.nonfpure import _ceil_mul

        t = Fraction(79, 100)
        terms = [
            frobenius_root(Ideal(ring, [f ** _ceil_mul(t, 5**e)]), e) for e in (1, 2, 3)
        ]
        m = maximal_ideal(ring)
        assert terms[0] == m
        assert m.contains_ideal(terms[1])
        assert not m.contains_ideal(terms[2])
        assert tau_b(T).is_unit()


class TestLanesAgree:
    def test_step_cross_check(self, rng):
        for p in (2, 3, 5):
            R = PolyRing(p, ["x", "y"])
            for _ in range(6):
                gens = random_monomial_gens(rng, 2, 3, 4)
                t = Fraction(rng.randint(1, 6), rng.randint(1, 4))
                T = Triple(R, a=MonomialIdeal(2, gens), t=t)
                opts = SigmaOptions(e_max=3)
                J = maximal_ideal(R) if rng.random() < 0.5 else Ideal.unit(R)
                fast = sigma_step(J, T, opts)
                forced = _SigmaEngine(T, opts)
                forced.monomial_lane = False
                assert forced.step(J) == fast

    def test_full_chain_cross_check(self, rng):
        for p in (2, 3):
            R = PolyRing(p, ["x", "y"])
            for _ in range(4):
                gens = random_monomial_gens(rng, 2, 2, 3)
                t = Fraction(rng.randint(1, 5), rng.randint(1, 4))
                T = Triple(R, a=MonomialIdeal(2, gens), t=t)
                opts = SigmaOptions(e_max=3, probe=1)
                fast = sigma(T, opts).ideal
                state = Ideal.unit(R)
                forced = _SigmaEngine(T, opts)
                forced.monomial_lane = False
                for _ in range(opts.n_max):
                    new = forced.step(state)
                    if new == state:
                        break
                    state = new
                assert state == fast


class TestTails:
    def test_cusp_tails_constant(self):
        T = cusp_triple(2)
        m = maximal_ideal(T.ring)
        wide = SigmaOptions(e_max=9)
        values = [sigma_prime_n(T, n, wide) for n in (1, 2, 3)]
        assert all(v == m for v in values)

    def test_tail_zero_starts_at_unit(self):
        T = cusp_triple(3)
        assert sigma_prime_n(T, 0).is_unit()

    def test_chain_value_inside_tails(self):
        # the stabilized chain lies in every truncated tail when the tail
        # window covers the composite levels (here 3 * chain e_max)
        for p in (2, 3, 5):
            T = cusp_triple(p, Fraction(4, 5) if p == 5 else 1)
            value = sigma(T, SigmaOptions(e_max=3)).ideal
            for n in (1, 2, 3):
                tail = sigma_prime_n(T, n, SigmaOptions(e_max=9))
                assert tail.contains_ideal(value)


class TestCartier:
    def test_period_values(self):
        R5 = PolyRing(5, ["x", "y"])
        f5 = R5.variable(0) ** 3 - R5.variable(1) ** 2
        assert cartier_period(Triple(R5, QDivisor([(Fraction(5, 6), f5)]))) == 2
        assert cartier_period(cusp_triple(3)) == 1  # integer coefficients
        # p divides a denominator: no period
        assert cartier_period(Triple(R5, QDivisor([(Fraction(4, 5), f5)]))) is None
        # order exceeds the bound: 2 has order 20 mod 25
        R2 = PolyRing(2, ["x", "y"])
        f2 = R2.variable(0) ** 3 - R2.variable(1) ** 2
        assert cartier_period(Triple(R2, QDivisor([(Fraction(2, 25), f2)]))) is None
        assert cartier_period(Triple(R2, QDivisor([(Fraction(2, 25), f2)])), bound=25) == 20

    def test_fast_chain_matches_sigma_on_cusp(self):
        for p in (2, 3, 5):
            T = cusp_triple(p)
            fast = sigma_fast_cartier(T)
            assert fast.ideal == maximal_ideal(T.ring)
            assert fast.probe_stable

    def test_fast_chain_principal_variable(self):
        R = PolyRing(5, ["y"])
        T = Triple(R, QDivisor([(2, R.variable(0))]))
        result = sigma_fast_cartier(T)
        assert str(result.ideal) == "(y)"

    def test_fast_chain_requires_divisor_only(self):
        R = PolyRing(5, ["x"])
        T = Triple(R, a=MonomialIdeal(1, [(1,)]), t=1)
        with pytest.raises(ValueError):
            sigma_fast_cartier(T)

    def test_fast_chain_requires_period(self):
        T = cusp_triple(5, Fraction(4, 5))
        with pytest.raises(ValueError):
            sigma_fast_cartier(T)


class TestTau:
    def test_monomial_values(self):
        R = PolyRing(5, ["x"])
        a = MonomialIdeal(1, [(1,)])
        assert tau_b(Triple(R, a=a, t=Fraction(1, 2))).is_unit()
        assert str(tau_b(Triple(R, a=a, t=1))) == "(x)"
        assert str(tau_b(Triple(R, a=a, t=Fraction(3, 2)))) == "(x)"
        assert str(tau_b(Triple(R, a=a, t=2))) == "(x^2)"

    def test_ascending_partial_sums(self):
        # every level's summand stays inside the final value
        T = cusp_triple(3, Fraction(1, 2))
        total = tau_b(T)
        ring = T.ring
        f = T.divisor.entries[0][1]
        from fsing.nonfpure import _ceil_mul

        for e in (1, 2, 3, 4):
            term = frobenius_root(Ideal(ring, [f ** _ceil_mul(Fraction(1, 2), 3**e)]), e)
            assert total.contains_ideal(term)

    def test_fregular_iff_tau_unit(self):
        assert is_strongly_fregular(cusp_triple(5, Fraction(1, 2)))
        assert not is_strongly_fregular(cusp_triple(5, 1))

    def test_nonconvergence_budget(self):
        T = cusp_triple(5)
        with pytest.raises(NonconvergenceError):
            tau_b(T, SigmaOptions(n_max=1))


class TestProperties:
    def test_monotone_in_t(self):
        R = PolyRing(5, ["x", "y"])
        a = MonomialIdeal(2, [(2, 0), (0, 3)])
        small = sigma(Triple(R, a=a, t=Fraction(5, 6))).ideal
        large = sigma(Triple(R, a=a, t=Fraction(7, 6))).ideal
        assert small.contains_ideal(large)

    def test_monotone_in_divisor(self):
        T1 = cusp_triple(5, Fraction(4, 5))
        T2 = cusp_triple(5, 1)
        assert sigma(T1).ideal.contains_ideal(sigma(T2).ideal)

    def test_closure_insensitive(self):
        R = PolyRing(5, ["x", "y"])
        a = MonomialIdeal(2, [(2, 0), (0, 3)])
        b = MonomialIdeal(2, [(2, 0), (1, 2), (0, 3)])  # adds a closure element
        for t in (Fraction(5, 6), 1, Fraction(11, 6)):
            assert sigma(Triple(R, a=a, t=t)).ideal == sigma(Triple(R, a=b, t=t)).ideal

    def test_step_monotone_in_input(self):
        T = cusp_triple(5)
        R = T.ring
        opts = SigmaOptions(e_max=3)
        big = sigma_step(Ideal.unit(R), T, opts)
        small = sigma_step(maximal_ideal(R), T, opts)
        assert big.contains_ideal(small)

    def test_fpure_iff_sigma_unit(self):
        cases = [
            cusp_triple(2),
            cusp_triple(5, Fraction(4, 5)),
            Triple(PolyRing(5, ["x"]), a=MonomialIdeal(1, [(1,)]), t=1),
            Triple(PolyRing(5, ["x"]), a=MonomialIdeal(1, [(5,)]), t=Fraction(1, 5)),
            Triple(PolyRing(3, ["x", "y"]), a=MonomialIdeal(2, [(1, 0), (0, 1)]), t=Fraction(3, 2)),
        ]
        for T in cases:
            assert is_sharply_fpure(T) == sigma(T).ideal.is_unit()

    def test_sigma_inside_closed_newton(self, rng):
        # containment holds even when p divides the exponent denominator
        for p, den in ((2, 2), (2, 6), (3, 6), (5, 5), (5, 6)):
            R = PolyRing(p, ["x", "y"])
            for _ in range(3):
                gens = random_monomial_gens(rng, 2, 3, 4)
                t = Fraction(rng.randint(1, 2 * den), den)
                a = MonomialIdeal(2, gens)
                T = Triple(R, a=a, t=t)
                value = sigma(T, SigmaOptions(e_max=4)).ideal
                closed = newton_ideal(a, t, "closed").to_ideal(R)
                assert closed.contains_ideal(value), (p, gens, t)


class TestMonomialTheorem:
    def test_cusp_exponents(self):
        a = MonomialIdeal(2, [(2, 0), (0, 3)])
        report = verify_monomial_theorem(a, Fraction(5, 6), 5)
        assert report.equal
        assert report.ideal.is_unit()
        report2 = verify_monomial_theorem(a, Fraction(7, 6), 5)
        assert report2.equal
        assert str(report2.ideal) == "(x, y)"

    def test_rejects_p_dividing_denominator(self):
        a = MonomialIdeal(2, [(2, 0), (0, 3)])
        with pytest.raises(ValueError):
            verify_monomial_theorem(a, Fraction(5, 6), 2)

    def test_custom_variables(self):
        a = MonomialIdeal(1, [(2,)])
        report = verify_monomial_theorem(a, Fraction(1, 3), 2, variables=["u"])
        assert report.equal
        assert report.ideal.ring.variables == ("u",)

    def test_nontrivial_three_vars(self):
        a = MonomialIdeal(3, [(1, 1, 0), (0, 0, 2)])
        report = verify_monomial_theorem(a, Fraction(3, 2), 3)
        assert report.equal
