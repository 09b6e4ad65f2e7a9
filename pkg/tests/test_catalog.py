import math
from fractions import Fraction

import numpy as np
import pytest

from majdet import refdata
from majdet.blocks import Partition, diag_blocks, direct_sum
from majdet.catalog import (
    EVALUATOR_IDS,
    INEQUALITY_IDS,
    Instance,
    check_choi,
    check_det_power,
    check_fischer_tail,
    check_kyfan,
    check_lemma31,
    check_main_theorem,
    check_matic,
    check_open_q,
    check_thm32,
    evaluate_general,
    identity_abs_square,
    inv_square_sum_exact,
    matic_exact,
    run_check,
)
from majdet.errors import (
    BadExponent,
    IndexOutOfRange,
    NegativePower,
    UnknownInequality,
)
from majdet.exact import det_exact, rational_matrix, submatrix
from majdet.linalg import eigvals_sym, pd_inverse

from oracles import rand_pd

PART22 = Partition((2, 2))


def ref_wlog_blocks():
    return tuple(diag_blocks(refdata.WLOG_D, PART22))


def ref_invsq_blocks():
    return tuple(diag_blocks(refdata.INV_SQ_D, PART22))


def random_block_instance(rng, n, sizes, kappa=1e3):
    part = Partition(sizes)
    c = rand_pd(rng, n, kappa=kappa)
    blocks = tuple(rand_pd(rng, s, kappa=kappa) for s in part.sizes)
    return c, blocks, part


class TestMainTheorem:
    def test_identity_d_reduces_to_inverse_case(self):
        # with D = I the statement becomes the blockwise-inverse relation
        blocks = (np.eye(2), np.eye(2))
        verdict = check_main_theorem(refdata.WLOG_C, blocks, PART22)
        assert verdict.holds

    def test_block_diagonal_c_gives_equality(self, rng):
        part = Partition((2, 3))
        c = direct_sum([rand_pd(rng, 2), rand_pd(rng, 3)])
        blocks = tuple(rand_pd(rng, s) for s in part.sizes)
        verdict = check_main_theorem(c, blocks, part)
        assert verdict.holds
        assert max(abs(m) for m in verdict.order.margins) <= 1e-9

    def test_reference_holds_weak_log_but_not_log(self):
        verdict = check_main_theorem(refdata.WLOG_C, ref_wlog_blocks(), PART22)
        assert verdict.holds
        # the total products differ: 0.6538 vs 2.1717
        total_margin = verdict.order.margins[-1]
        assert total_margin == pytest.approx(
            math.log(refdata.WLOG_FULL_DET / refdata.WLOG_BLOCK_DET), abs=1e-3
        )
        assert total_margin > 1e-2  # far from log-majorization equality

    def test_scaling_invariance(self, rng):
        c, blocks, part = random_block_instance(rng, 5, (2, 3))
        base = check_main_theorem(c, blocks, part)
        alpha = 37.5
        scaled = check_main_theorem(alpha * c, tuple(alpha * b for b in blocks), part)
        np.testing.assert_allclose(scaled.order.margins, base.order.margins,
                                   rtol=0, atol=1e-10)

    def test_random_instances_hold(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 7))
            sizes = []
            left = n
            while left:
                s = int(rng.integers(1, left + 1))
                sizes.append(s)
                left -= s
            c, blocks, part = random_block_instance(rng, n, tuple(sizes))
            assert check_main_theorem(c, blocks, part).holds


class TestMatic:
    def test_block_diagonal_equality(self, rng):
        part = Partition((2, 2))
        c = direct_sum([rand_pd(rng, 2), rand_pd(rng, 2)])
        blocks = tuple(rand_pd(rng, 2) for _ in range(2))
        verdict = check_matic(c, blocks, part)
        assert verdict.holds
        assert abs(verdict.margin) <= 1e-12

    def test_reference_against_exact_oracle(self):
        blocks = ref_wlog_blocks()
        verdict = check_matic(refdata.WLOG_C, blocks, PART22)
        assert verdict.holds
        c_exact = rational_matrix([[int(x) for x in row] for row in refdata.WLOG_C])
        blocks_exact = [rational_matrix([[int(x) for x in row] for row in b]) for b in blocks]
        lhs_exact, rhs_exact = matic_exact(c_exact, blocks_exact, PART22)
        assert verdict.lhs == pytest.approx(float(lhs_exact), rel=1e-10)
        assert verdict.rhs == pytest.approx(float(rhs_exact), rel=1e-10)
        assert lhs_exact <= rhs_exact

    def test_matches_det_power_p1(self, rng):
        for _ in range(10):
            c, blocks, part = random_block_instance(rng, 4, (2, 2))
            m = check_matic(c, blocks, part)
            d = check_det_power(c, blocks, part, p=1.0)
            assert m.margin == pytest.approx(d.margin, abs=1e-12)


class TestDetPower:
    def test_p0_trivial_equality(self, rng):
        c, blocks, part = random_block_instance(rng, 4, (2, 2))
        verdict = check_det_power(c, blocks, part, p=0.0)
        assert verdict.holds
        assert verdict.margin == 0.0
        assert verdict.lhs == pytest.approx(2.0**4)

    def test_p2_reference_with_bruteforce_oracle(self):
        blocks = ref_wlog_blocks()
        verdict = check_det_power(refdata.WLOG_C, blocks, PART22, p=2.0)
        assert verdict.holds
        # independent route: nonsymmetric eigenvalues of the explicit products
        d_full = direct_sum(blocks)
        lam_full = np.linalg.eigvals(np.linalg.inv(refdata.WLOG_C) @ d_full).real
        rhs = float(np.prod(1.0 + lam_full**2))
        assert verdict.rhs == pytest.approx(rhs, rel=1e-9)
        lhs = 1.0
        for cb, db in zip(diag_blocks(refdata.WLOG_C, PART22), blocks):
            lam = np.linalg.eigvals(np.linalg.inv(cb) @ db).real
            lhs *= float(np.prod(1.0 + lam**2))
        assert verdict.lhs == pytest.approx(lhs, rel=1e-9)

    def test_negative_power_rejected(self, rng):
        c, blocks, part = random_block_instance(rng, 2, (1, 1))
        with pytest.raises(NegativePower):
            check_det_power(c, blocks, part, p=-1.0)

    def test_chain_consistency_with_main_theorem(self, rng):
        for _ in range(10):
            c, blocks, part = random_block_instance(rng, 5, (2, 1, 2))
            assert check_main_theorem(c, blocks, part).holds
            for p in (0.0, 0.5, 1.0, 2.0, 3.0):
                assert check_det_power(c, blocks, part, p).holds


class TestEvaluators:
    def test_inv_square_sum_reference(self):
        inst = Instance(partition=PART22, c=refdata.INV_SQ_C, d_blocks=ref_invsq_blocks())
        verdict = evaluate_general("inv-square-sum", inst)
        assert not verdict.holds
        assert verdict.lhs == pytest.approx(refdata.INV_SQ_BLOCKS, abs=1e-3)
        assert verdict.rhs == pytest.approx(refdata.INV_SQ_FULL, abs=1e-3)

    def test_inv_square_sum_exact_certification(self):
        blocks_exact = [
            submatrix(refdata.INV_SQ_D_EXACT, lo, hi) for lo, hi in PART22.offsets()
        ]
        lhs, rhs = inv_square_sum_exact(refdata.INV_SQ_C_EXACT, blocks_exact, PART22)
        assert isinstance(lhs, Fraction) and isinstance(rhs, Fraction)
        assert lhs > rhs

    def test_matic_general_d_reference(self):
        inst = Instance(partition=refdata.MATIC_GEN_PART,
                        c=refdata.MATIC_GEN_C, d=refdata.MATIC_GEN_D)
        verdict = evaluate_general("matic-general-d", inst)
        assert not verdict.holds
        assert verdict.rhs == pytest.approx(3.1549, abs=1e-3)
        assert verdict.lhs == pytest.approx(3.5, abs=1e-12)

    def test_neg_power_closed_form(self):
        # q = 1: full side f = 2 + 2*5 = 12, blockwise g = (1+3)^2 = 16
        part = refdata.NEG_POWER_PART
        blocks = tuple(diag_blocks(refdata.NEG_POWER_D, part))
        inst = Instance(partition=part, c=refdata.NEG_POWER_C, d_blocks=blocks, p=-1.0)
        verdict = evaluate_general("neg-power", inst)
        assert not verdict.holds
        assert verdict.rhs == pytest.approx(12.0, rel=1e-12)
        assert verdict.lhs == pytest.approx(16.0, rel=1e-12)

    def test_neg_power_needs_negative_exponent(self):
        part = refdata.NEG_POWER_PART
        blocks = tuple(diag_blocks(refdata.NEG_POWER_D, part))
        inst = Instance(partition=part, c=refdata.NEG_POWER_C, d_blocks=blocks, p=1.0)
        with pytest.raises(BadExponent):
            evaluate_general("neg-power", inst)

    def test_weak_log_general_d_reference(self):
        inst = Instance(partition=PART22, c=refdata.WLOG_C, d=refdata.WLOG_D)
        verdict = evaluate_general("weak-log-general-d", inst)
        assert not verdict.holds
        assert verdict.order.fail_index == 2

    def test_sv_weak_log_reference_violated(self):
        inst = Instance(partition=PART22, c=refdata.INV_SQ_C, d_blocks=ref_invsq_blocks())
        verdict = evaluate_general("sv-weak-log", inst)
        assert not verdict.holds

    def test_abs_power_matches_inv_square_sum_at_p2(self, rng):
        # the two statements are the same inequality in disguise at p = 2
        for _ in range(10):
            c, blocks, part = random_block_instance(rng, 4, (2, 2), kappa=100.0)
            inst = Instance(partition=part, c=c, d_blocks=blocks, p=2.0)
            a = evaluate_general("abs-power", inst)
            b = evaluate_general("inv-square-sum", inst)
            assert a.margin == pytest.approx(b.margin, abs=1e-8)
            assert a.holds == b.holds

    def test_commuted_power_matches_inv_square_sum_at_p2(self, rng):
        for _ in range(10):
            c, blocks, part = random_block_instance(rng, 4, (2, 2), kappa=100.0)
            inst = Instance(partition=part, c=c, d_blocks=blocks, p=2.0)
            a = evaluate_general("commuted-power", inst)
            b = evaluate_general("inv-square-sum", inst)
            assert a.margin == pytest.approx(b.margin, abs=1e-8)
            assert a.holds == b.holds

    def test_unknown_evaluator(self):
        with pytest.raises(UnknownInequality):
            evaluate_general("matic", Instance())


class TestIdentityAbsSquare:
    def test_identity_d_trivial(self, rng):
        c = rand_pd(rng, 4, kappa=100.0)
        blocks = (np.eye(2), np.eye(2))
        verdict = identity_abs_square(c, blocks, PART22)
        assert verdict.holds

    def test_reference_instance(self):
        verdict = identity_abs_square(refdata.INV_SQ_C, ref_invsq_blocks(), PART22)
        assert verdict.holds
        assert verdict.detail["residual_global"] <= 1e-9
        assert verdict.detail["residual_blockwise"] <= 1e-9

    def test_random_instances(self, rng):
        for _ in range(20):
            c, blocks, part = random_block_instance(rng, 4, (2, 2), kappa=100.0)
            assert identity_abs_square(c, blocks, part).holds


class TestChoi:
    def test_single_identity(self):
        verdict = check_choi([np.eye(3)], Partition((1, 2)))
        assert verdict.holds
        assert verdict.lhs == pytest.approx(1.0)
        assert verdict.rhs == pytest.approx(1.0)

    def test_m1_reference_with_exact_oracle(self):
        # m = 1 reduces to a Fischer-type inequality for the inverse
        verdict = check_choi([refdata.WLOG_C], PART22)
        assert verdict.holds
        c_exact = rational_matrix([[int(x) for x in row] for row in refdata.WLOG_C])
        det_c = det_exact(c_exact)
        rhs_exact = 1 / det_c
        lhs_exact = Fraction(1)
        for lo, hi in PART22.offsets():
            lhs_exact /= det_exact(submatrix(c_exact, lo, hi))
        assert verdict.rhs == pytest.approx(float(rhs_exact), rel=1e-10)
        assert verdict.lhs == pytest.approx(float(lhs_exact), rel=1e-10)

    def test_random_pairs(self, rng):
        for _ in range(10):
            mats = [rand_pd(rng, 4, kappa=1e3) for _ in range(2)]
            assert check_choi(mats, PART22).holds


class TestThm32AndOpenQ:
    def test_single_identity_equality(self):
        verdict = check_thm32([np.eye(4)], PART22, p=1.0)
        assert verdict.holds
        assert max(abs(m) for m in verdict.order.margins) <= 1e-12

    def test_p_grid_random(self, rng):
        for p in (1.0, 2.0, 3.0):
            mats = [rand_pd(rng, 4, kappa=1e3) for _ in range(2)]
            assert check_thm32(mats, PART22, p=p).holds

    def test_bad_exponent(self, rng):
        mats = [rand_pd(rng, 4)]
        with pytest.raises(BadExponent):
            check_thm32(mats, PART22, p=0.5)

    def test_open_q_proved_case(self, rng):
        part = Partition((1, 1))
        for _ in range(25):
            mats = [rand_pd(rng, 2, kappa=1e3) for _ in range(2)]
            assert check_open_q(mats, part).holds

    def test_open_q_m1_specialization(self, rng):
        # m = 1 reduces to the blockwise-inverse weak log majorization
        for _ in range(10):
            mats = [rand_pd(rng, 4, kappa=1e3)]
            assert check_open_q(mats, PART22).holds


class TestLemma31:
    def test_full_index_equality(self, rng):
        a = rand_pd(rng, 4)
        verdict = check_lemma31(a, range(4))
        assert verdict.holds
        assert abs(verdict.margin) <= 1e-9

    def test_diagonal_equality(self):
        verdict = check_lemma31(np.diag([1.0, 2.0, 3.0]), [0, 2])
        assert verdict.holds
        assert abs(verdict.margin) <= 1e-12

    def test_random_with_eigen_oracle(self, rng):
        from majdet.blocks import principal_submatrix
        from majdet.linalg import loewner_le
        for _ in range(10):
            a = rand_pd(rng, 5, kappa=1e3)
            idx = (0, 2, 3)
            verdict = check_lemma31(a, idx)
            assert verdict.holds
            sub_inv = pd_inverse(principal_submatrix(a, idx))
            inv_sub = principal_submatrix(pd_inverse(a), idx)
            assert verdict.holds == loewner_le(sub_inv, inv_sub)
            diff = inv_sub - sub_inv
            lam_min = float(np.min(np.linalg.eigvalsh((diff + diff.T) / 2)))
            assert lam_min >= -1e-9 * max(1.0, float(np.linalg.norm(diff)))

    def test_bad_index(self, rng):
        with pytest.raises(IndexOutOfRange):
            check_lemma31(rand_pd(rng, 3), [0, 5])


class TestFischerTail:
    def test_m1_is_fischer_with_exact_oracle(self):
        verdict = check_fischer_tail(refdata.WLOG_C, PART22, m=1)
        assert verdict.holds
        c_exact = rational_matrix([[int(x) for x in row] for row in refdata.WLOG_C])
        det_c = det_exact(c_exact)
        prod_blocks = math.prod(
            det_exact(submatrix(c_exact, lo, hi)) for lo, hi in PART22.offsets()
        )
        assert det_c <= prod_blocks
        assert verdict.lhs == pytest.approx(float(det_c), rel=1e-9)
        assert verdict.rhs == pytest.approx(float(prod_blocks), rel=1e-9)

    def test_block_diagonal_equality_every_m(self, rng):
        part = Partition((2, 3))
        c = direct_sum([rand_pd(rng, 2), rand_pd(rng, 3)])
        verdict = check_fischer_tail(c, part)
        assert verdict.holds
        for margin in verdict.detail["margins_by_m"].values():
            assert abs(margin) <= 1e-9

    def test_m_equals_n_lambda_min(self, rng):
        for _ in range(10):
            c = rand_pd(rng, 5, kappa=1e3)
            part = Partition((2, 3))
            verdict = check_fischer_tail(c, part, m=5)
            assert verdict.holds
            lam_full = eigvals_sym(c)
            lam_diag = np.concatenate([eigvals_sym(b) for b in diag_blocks(c, part)])
            assert lam_full[-1] <= np.min(lam_diag) + 1e-9

    def test_bad_m(self, rng):
        with pytest.raises(IndexOutOfRange):
            check_fischer_tail(rand_pd(rng, 4), PART22, m=5)


class TestKyFan:
    def test_diagonal_equality(self):
        verdict = check_kyfan(np.diag([3.0, 1.0, 2.0]), Partition((1, 2)))
        assert verdict.holds
        assert max(abs(m) for m in verdict.order.margins) <= 1e-12

    def test_reference(self):
        assert check_kyfan(refdata.WLOG_C, PART22).holds

    def test_random(self, rng):
        for _ in range(10):
            c = rand_pd(rng, 6, kappa=1e4)
            assert check_kyfan(c, Partition((1, 2, 3))).holds


class TestDispatch:
    def test_run_check_all_ids(self, rng):
        part = Partition((1, 1))
        c = rand_pd(rng, 2, kappa=10.0)
        blocks = tuple(rand_pd(rng, 1) for _ in range(2))
        d = rand_pd(rng, 2, kappa=10.0)
        mats = tuple(rand_pd(rng, 2, kappa=10.0) for _ in range(2))
        instances = {
            "main-thm": Instance(partition=part, c=c, d_blocks=blocks),
            "matic": Instance(partition=part, c=c, d_blocks=blocks),
            "det-power": Instance(partition=part, c=c, d_blocks=blocks, p=2.0),
            "abs-power": Instance(partition=part, c=c, d_blocks=blocks, p=2.0),
            "commuted-power": Instance(partition=part, c=c, d_blocks=blocks, p=2.0),
            "inv-square-sum": Instance(partition=part, c=c, d_blocks=blocks),
            "neg-power": Instance(partition=part, c=c, d_blocks=blocks, p=-1.0),
            "matic-general-d": Instance(partition=part, c=c, d=d),
            "weak-log-general-d": Instance(partition=part, c=c, d=d),
            "sv-weak-log": Instance(partition=part, c=c, d_blocks=blocks),
            "choi": Instance(partition=part, mats=mats),
            "thm32": Instance(partition=part, mats=mats, p=2.0),
            "open-q": Instance(partition=part, mats=mats),
            "lemma31": Instance(c=c, idx=(0,)),
            "fischer-tail": Instance(partition=part, c=c),
            "ky-fan": Instance(partition=part, c=c),
        }
        assert set(instances) == set(INEQUALITY_IDS)
        for ineq, inst in instances.items():
            verdict = run_check(ineq, inst)
            assert verdict.inequality == ineq
            assert isinstance(verdict.holds, bool)
            payload = verdict.to_json()
            assert payload["inequality"] == ineq
            assert payload["fingerprint"]["digest"]

    def test_unknown_id(self):
        with pytest.raises(UnknownInequality):
            run_check("nope", Instance())

    def test_fingerprint_deterministic(self, rng):
        c, blocks, part = random_block_instance(rng, 4, (2, 2))
        v1 = check_matic(c, blocks, part)
        v2 = check_matic(c, blocks, part)
        assert v1.fingerprint == v2.fingerprint

    def test_evaluator_ids_subset(self):
        assert EVALUATOR_IDS < set(INEQUALITY_IDS)

    def test_instance_json_roundtrip(self, rng):
        c, blocks, part = random_block_instance(rng, 4, (2, 2))
        inst = Instance(partition=part, c=c, d_blocks=blocks, p=2.0)
        back = Instance.from_json(inst.to_json())
        np.testing.assert_array_equal(back.c, inst.c)
        assert back.partition.sizes == part.sizes
        assert back.p == 2.0
        v1 = run_check("inv-square-sum", inst)
        v2 = run_check("inv-square-sum", back)
        assert v1.margin == v2.margin
