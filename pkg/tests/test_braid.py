import cmath
import math

import numpy as np
import pytest

from anyonmask.braid import (
    SPLIT,
    BraidError,
    BraidOp,
    ChannelConflictError,
    apply_op,
    apply_ops,
    circle,
    exchange,
    parse_ops,
    tripartite_braid,
    verify_invariance,
)
from anyonmask.masker import encode, random_unit_coeffs, verify_masking
from anyonmask.qstate import (
    BasisKet,
    StateVector,
    basis_state,
    max_amplitude_diff,
    norm,
    partial_trace,
    product_basis,
)
from helpers import ROWS_D3, ROWS_D4

INV_SQRT2 = 1.0 / math.sqrt(2.0)
R1_SS = cmath.exp(-1j * math.pi / 8)
REPS_SS = cmath.exp(3j * math.pi / 8)

# Abelian label pairs whose left-over-right exchange phase is -1;
# every other pair (including anything with the vacuum) gives +1
NEG_EXCHANGE_PAIRS = {("m", "e"), ("eps", "e"), ("m", "eps"), ("eps", "eps")}


def abelian_exchange_phase(a, b):
    return -1.0 if (a, b) in NEG_EXCHANGE_PAIRS else 1.0


def seeded_encoded(scheme, seed):
    rng = np.random.default_rng(seed)
    coeffs = random_unit_coeffs(scheme.d, rng)
    return coeffs, encode(scheme, coeffs)


class TestExchange:
    def test_abelian_bc_factors_match_display_pattern(self, abelian_scheme):
        coeffs, state = seeded_encoded(abelian_scheme, 3)
        out = exchange(abelian_scheme.model, state, 1, 2)
        expected = {}
        for j, row in enumerate(ROWS_D4):
            for a, b, c in row:
                phase = abelian_exchange_phase(b, c)
                expected[BasisKet((a, c, b))] = coeffs[j] / 2.0 * phase
        assert set(out.amplitudes) == set(expected)
        for ket, amp in expected.items():
            assert out.amplitude(ket) == pytest.approx(amp, abs=1e-12)

    def test_vacuum_term_unchanged(self, abelian_model):
        state = basis_state(["1", "1", "1"])
        out = exchange(abelian_model, state, 0, 1)
        assert out.amplitudes == state.amplitudes

    def test_non_adjacent_rejected(self, abelian_model):
        state = basis_state(["1", "e", "m"])
        with pytest.raises(BraidError, match="adjacent"):
            exchange(abelian_model, state, 0, 2)

    def test_out_of_range_rejected(self, abelian_model):
        with pytest.raises(BraidError, match="out of range"):
            exchange(abelian_model, basis_state(["1", "e"]), 1, 2)

    def test_ising_ab_alpha_row(self, ising_scheme):
        coeffs, state = seeded_encoded(ising_scheme, 5)
        out = exchange(ising_scheme.model, state, 0, 1)
        amp0 = coeffs[0] / math.sqrt(3)
        assert out.amplitude(BasisKet(("1", "1", "1"))) == pytest.approx(amp0, abs=1e-12)
        assert out.amplitude(BasisKet(("eps", "eps", "eps"))) == pytest.approx(-amp0, abs=1e-12)
        # the sigma-pair term splits into equal-weight tagged channel branches
        assert out.amplitude(BasisKet(("sigma",) * 3, "1")) == pytest.approx(
            amp0 * R1_SS * INV_SQRT2, abs=1e-12
        )
        assert out.amplitude(BasisKet(("sigma",) * 3, "eps")) == pytest.approx(
            amp0 * REPS_SS * INV_SQRT2, abs=1e-12
        )

    def test_ising_ab_mixed_rows_swap_with_phases(self, ising_scheme):
        coeffs, state = seeded_encoded(ising_scheme, 5)
        out = exchange(ising_scheme.model, state, 0, 1)
        amp1 = coeffs[1] / math.sqrt(3)
        amp2 = coeffs[2] / math.sqrt(3)
        # beta row: |1 sigma eps> -> |sigma 1 eps>, |sigma eps 1> -> -i |eps sigma 1>
        assert out.amplitude(BasisKet(("sigma", "1", "eps"))) == pytest.approx(amp1, abs=1e-12)
        assert out.amplitude(BasisKet(("1", "eps", "sigma"))) == pytest.approx(amp1, abs=1e-12)
        assert out.amplitude(BasisKet(("eps", "sigma", "1"))) == pytest.approx(
            amp1 * -1j + amp2 * 0, abs=1e-12
        )
        # gamma row: |eps sigma 1> -> -i |sigma eps 1>
        assert out.amplitude(BasisKet(("sigma", "eps", "1"))) == pytest.approx(
            amp2 * -1j, abs=1e-12
        )

    def test_resolved_mode_tags_output(self, ising_model):
        state = basis_state(["sigma", "sigma", "1"])
        out = exchange(ising_model, state, 0, 1, mode="eps")
        assert out.amplitudes == {BasisKet(("sigma", "sigma", "1"), "eps"): REPS_SS}

    def test_resolved_mode_conflicting_tag_rejected(self, ising_model):
        state = basis_state(["sigma", "sigma", "1"], tag="1")
        with pytest.raises(ChannelConflictError):
            exchange(ising_model, state, 0, 1, mode="eps")

    def test_tagged_term_braids_in_its_channel(self, ising_model):
        state = basis_state(["sigma", "sigma", "1"], tag="eps")
        out = exchange(ising_model, state, 0, 1, mode=SPLIT)
        assert out.amplitudes == {BasisKet(("sigma", "sigma", "1"), "eps"): REPS_SS}

    def test_bad_mode_rejected(self, ising_model):
        with pytest.raises(BraidError, match="channel mode"):
            exchange(ising_model, basis_state(["sigma", "sigma", "1"]), 0, 1, mode="both")

    @pytest.mark.parametrize("mode", [SPLIT, "1", "eps"])
    def test_both_channel_conventions_preserve_masking(self, ising_scheme, mode):
        rng = np.random.default_rng(7)
        for _ in range(20):
            state = encode(ising_scheme, random_unit_coeffs(3, rng))
            out = exchange(ising_scheme.model, state, 1, 2, mode=mode)
            assert verify_masking(out, ising_scheme.model.alphabet, tol=2e-12).verdict


class TestCircle:
    def test_ising_circle_b_around_a_matches_display(self, ising_scheme):
        coeffs, state = seeded_encoded(ising_scheme, 11)
        out = circle(ising_scheme.model, state, 1, 0)
        phases = {
            ("1", "1", "1"): 1.0,
            ("eps", "eps", "eps"): -1.0,
            ("sigma", "sigma", "sigma"): cmath.exp(-1j * math.pi / 4),
            ("1", "sigma", "eps"): 1.0,
            ("eps", "1", "sigma"): 1.0,
            ("sigma", "eps", "1"): -1.0,
            ("1", "eps", "sigma"): 1.0,
            ("eps", "sigma", "1"): -1.0,
            ("sigma", "1", "eps"): 1.0,
        }
        expected = {}
        for j, row in enumerate(ROWS_D3):
            for labels in row:
                expected[BasisKet(labels)] = coeffs[j] / math.sqrt(3) * phases[labels]
        assert max_amplitude_diff(out, StateVector(expected)) <= 1e-12

    def test_abelian_circle_c_around_b_monodromy_pattern(self, abelian_scheme):
        coeffs, state = seeded_encoded(abelian_scheme, 13)
        out = circle(abelian_scheme.model, state, 2, 1)
        expected = {}
        for j, row in enumerate(ROWS_D4):
            for labels in row:
                b, c = labels[1], labels[2]
                phase = abelian_exchange_phase(b, c) * abelian_exchange_phase(c, b)
                expected[BasisKet(labels)] = coeffs[j] / 2.0 * phase
        assert max_amplitude_diff(out, StateVector(expected)) <= 1e-12

    def test_circle_around_vacuum_trivial(self, ising_model):
        state = basis_state(["sigma", "1", "eps"])
        out = circle(ising_model, state, 0, 1)
        assert out.amplitudes == state.amplitudes

    def test_same_party_rejected(self, ising_model):
        with pytest.raises(BraidError, match="itself"):
            circle(ising_model, basis_state(["1", "1", "1"]), 1, 1)

    def test_circle_equals_two_exchanges_abelian(self, abelian_scheme):
        _, state = seeded_encoded(abelian_scheme, 17)
        circled = circle(abelian_scheme.model, state, 1, 2)
        twice = exchange(
            abelian_scheme.model, exchange(abelian_scheme.model, state, 1, 2), 1, 2
        )
        assert max_amplitude_diff(circled, twice) <= 1e-12

    def test_abelian_double_circle_is_identity(self, abelian_scheme):
        _, state = seeded_encoded(abelian_scheme, 19)
        for x, y in ((0, 1), (0, 2), (1, 2)):
            out = circle(abelian_scheme.model, circle(abelian_scheme.model, state, x, y), x, y)
            assert max_amplitude_diff(out, state) == 0.0

    def test_tagged_sigma_pair_circles_in_its_channel(self, ising_model):
        vac_branch = basis_state(["sigma", "sigma", "1"], tag="1")
        eps_branch = basis_state(["sigma", "sigma", "1"], tag="eps")
        out_vac = circle(ising_model, vac_branch, 0, 1)
        out_eps = circle(ising_model, eps_branch, 0, 1)
        assert out_vac.amplitude(BasisKet(("sigma", "sigma", "1"), "1")) == pytest.approx(
            cmath.exp(-1j * math.pi / 4), abs=1e-15
        )
        assert out_eps.amplitude(BasisKet(("sigma", "sigma", "1"), "eps")) == pytest.approx(
            cmath.exp(3j * math.pi / 4), abs=1e-15
        )


class TestTripartiteBraid:
    def test_displayed_output_on_encoded_state(self, ising_scheme):
        coeffs, state = seeded_encoded(ising_scheme, 23)
        out = tripartite_braid(ising_scheme.model, state)
        n3 = 1.0 / math.sqrt(3)
        expected = {
            BasisKet(("1", "1", "1")): coeffs[0] * n3,
            BasisKet(("eps", "eps", "eps")): -coeffs[0] * n3,
            BasisKet(("sigma",) * 3, "1"): coeffs[0] * n3 * R1_SS**2 * INV_SQRT2,
            BasisKet(("sigma",) * 3, "eps"): coeffs[0] * n3 * R1_SS * REPS_SS * INV_SQRT2,
        }
        for j, sign_coeff in ((1, coeffs[1]), (2, coeffs[2])):
            for labels in ROWS_D3[j]:
                expected[BasisKet(labels)] = sign_coeff * n3 * -1j
        assert max_amplitude_diff(out, StateVector(expected)) <= 1e-12

    def test_vacuum_component_unchanged(self, ising_model):
        out = tripartite_braid(ising_model, basis_state(["1", "1", "1"]))
        assert out.amplitudes == {BasisKet(("1", "1", "1")): 1.0 + 0j}

    def test_norm_preserved_on_encoded_state(self, ising_scheme):
        _, state = seeded_encoded(ising_scheme, 29)
        out = tripartite_braid(ising_scheme.model, state)
        assert abs(norm(out) - norm(state)) <= 1e-12

    def test_non_ising_model_rejected(self, abelian_model):
        with pytest.raises(BraidError, match="Ising"):
            tripartite_braid(abelian_model, basis_state(["1", "1", "1"]))

    def test_tagged_all_sigma_term_evolves_in_channel(self, ising_model):
        vac_in = basis_state(["sigma"] * 3, tag="1")
        eps_in = basis_state(["sigma"] * 3, tag="eps")
        out_vac = tripartite_braid(ising_model, vac_in)
        out_eps = tripartite_braid(ising_model, eps_in)
        assert out_vac.amplitude(BasisKet(("sigma",) * 3, "1")) == pytest.approx(
            R1_SS**2, abs=1e-15
        )
        assert out_eps.amplitude(BasisKet(("sigma",) * 3, "eps")) == pytest.approx(
            R1_SS * REPS_SS, abs=1e-15
        )

    def test_two_sigma_term_splits_and_preserves_norm(self, ising_model):
        state = basis_state(["sigma", "sigma", "eps"])
        out = tripartite_braid(ising_model, state)
        assert abs(norm(out) - 1.0) <= 1e-12
        tags = {ket.tag for ket in out.amplitudes}
        assert tags == {"1", "eps"}

    def test_fermion_pair_term(self, ising_model):
        # pairs (eps,eps), (eps,1), (eps,1): single nontrivial factor -1
        out = tripartite_braid(ising_model, basis_state(["eps", "eps", "1"]))
        assert out.amplitudes == {BasisKet(("eps", "eps", "1")): -1.0 + 0j}


class TestTagBookkeeping:
    def test_tagged_branches_never_interfere(self, ising_scheme):
        _, state = seeded_encoded(ising_scheme, 31)
        out = tripartite_braid(ising_scheme.model, state)
        basis = product_basis(ising_scheme.model.alphabet, 1)
        whole = partial_trace(out, {0}, basis)
        # replay the trace with the tag sectors separated by hand
        sectors = {}
        for ket, amp in out.items():
            sectors.setdefault(ket.tag, {})[ket] = amp
        summed = sum(
            partial_trace(StateVector(sector), {0}, basis).entries
            for sector in sectors.values()
        )
        assert np.max(np.abs(whole.entries - summed)) == 0.0


class TestOpStrings:
    def test_round_trip(self):
        ops = parse_ops("xBC;cBA;t3")
        assert [op.token() for op in ops] == ["xBC", "cBA", "t3"]
        assert ops[0] == BraidOp(kind="exchange", x=1, y=2)
        assert ops[1] == BraidOp(kind="circle", x=1, y=0)
        assert ops[2] == BraidOp(kind="tripartite")

    def test_unknown_token_rejected(self):
        with pytest.raises(BraidError, match="unknown op token"):
            parse_ops("xBC;zap")

    def test_unknown_party_rejected(self):
        with pytest.raises(BraidError, match="party"):
            parse_ops("xBD")

    def test_empty_rejected(self):
        with pytest.raises(BraidError, match="empty"):
            parse_ops(" ; ")

    def test_apply_op_dispatch(self, ising_scheme):
        _, state = seeded_encoded(ising_scheme, 37)
        assert apply_op(ising_scheme.model, state, BraidOp(kind="tripartite")) == tripartite_braid(
            ising_scheme.model, state
        )


class TestVerifyInvariance:
    def test_abelian_exchange_campaign(self, abelian_scheme):
        report = verify_invariance(abelian_scheme, parse_ops("xBC"), trials=50, seed=1)
        assert report.verdict
        assert report.worst_deviation <= 2e-12
        assert report.unitarity_defect <= 1e-12

    def test_ising_circle_campaign(self, ising_scheme):
        report = verify_invariance(ising_scheme, parse_ops("cBA"), trials=50, seed=2)
        assert report.verdict

    def test_two_stage_far_exchange(self, ising_scheme):
        # exchanging the outer parties decomposes into tripartite + adjacent exchange
        report = verify_invariance(ising_scheme, parse_ops("t3;xBC"), trials=50, seed=3)
        assert report.verdict

    def test_longer_mixed_sequence(self, ising_scheme):
        report = verify_invariance(ising_scheme, parse_ops("xAB;t3;cAC"), trials=30, seed=4)
        assert report.verdict

    def test_report_is_deterministic(self, ising_scheme):
        ops = parse_ops("t3")
        a = verify_invariance(ising_scheme, ops, trials=20, seed=5)
        b = verify_invariance(ising_scheme, ops, trials=20, seed=5)
        assert a.record() == b.record()

    def test_campaign_records_pre_and_post(self, abelian_scheme):
        report = verify_invariance(abelian_scheme, parse_ops("cAB"), trials=10, seed=6)
        assert report.pre_report.verdict
        assert report.post_report.verdict

    def test_norm_preserved_across_random_sequences(self, ising_scheme):
        rng = np.random.default_rng(41)
        ops_pool = [
            BraidOp(kind="exchange", x=0, y=1),
            BraidOp(kind="exchange", x=1, y=2),
            BraidOp(kind="circle", x=0, y=2),
            BraidOp(kind="tripartite"),
        ]
        for _ in range(20):
            state = encode(ising_scheme, random_unit_coeffs(3, rng))
            picks = rng.integers(0, len(ops_pool), size=3)
            out = apply_ops(ising_scheme.model, state, [ops_pool[i] for i in picks])
            assert abs(norm(out) - 1.0) <= 1e-12
