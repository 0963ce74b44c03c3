import numpy as np
import pytest

from spinanneal import (
    ToleranceError,
    commutator_norm,
    eig_herm,
    expm_mul,
    fidelity_pure,
    ghz_state,
    kron_embed,
    parity_op,
    spin1_ops,
)
from spinanneal.hamiltonians import rwa_hamiltonian
from spinanneal.linalg import max_abs

from oracles import jacobi_eigvalsh, taylor_expm_mul
from specs import spectrum_spec


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


class TestKronEmbed:
    def test_identity_embeds_to_identity(self):
        out = kron_embed(np.eye(3), site=2, n_sites=2)
        assert np.array_equal(out, np.eye(9))

    def test_sz_at_site_one(self):
        out = kron_embed(spin1_ops().sz, site=1, n_sites=2)
        assert np.allclose(np.diag(out), [1, 1, 1, 0, 0, 0, -1, -1, -1])
        assert max_abs(out - np.diag(np.diag(out))) == 0

    def test_sigma_x_three_qubits(self):
        sigx = np.array([[0, 1], [1, 0]], dtype=complex)
        out = kron_embed(sigx, site=1, n_sites=3, local_dim=2)
        assert np.allclose(out, np.kron(sigx, np.eye(4)))
        assert out[0, 4] == 1

    def test_site_out_of_range(self):
        with pytest.raises(ValueError):
            kron_embed(np.eye(3), site=0, n_sites=2)
        with pytest.raises(ValueError):
            kron_embed(np.eye(3), site=3, n_sites=2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            kron_embed(np.eye(2), site=1, n_sites=2, local_dim=3)

    def test_embedded_operators_at_different_sites_commute(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = random_hermitian(rng, 3)
            b = random_hermitian(rng, 3)
            ea = kron_embed(a, site=1, n_sites=3)
            eb = kron_embed(b, site=3, n_sites=3)
            assert commutator_norm(ea, eb) < 1e-12 * max(1.0, max_abs(ea) * max_abs(eb))


class TestEigHerm:
    def test_diagonal_sorted(self):
        vals, _ = eig_herm(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert np.allclose(vals, [1, 2, 3])

    def test_spin1_sx_spectrum(self):
        vals, _ = eig_herm(spin1_ops().sx)
        assert np.allclose(vals, [-1, 0, 1], atol=1e-12)

    def test_rwa_ground_energy_matches_jacobi_oracle(self):
        h = rwa_hamiltonian(spectrum_spec())(0.0)
        vals, _ = eig_herm(h)
        ref = jacobi_eigvalsh(h)
        assert np.allclose(vals, ref, atol=1e-8 * max_abs(h))

    def test_rejects_non_hermitian(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(ToleranceError):
            eig_herm(bad)

    def test_reconstruction(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            h = random_hermitian(rng, 9)
            vals, vecs = eig_herm(h)
            assert max_abs(h - (vecs * vals) @ vecs.conj().T) <= 1e-8 * max_abs(h)
            assert max_abs(vecs.conj().T @ vecs - np.eye(9)) < 1e-8


class TestExpmMul:
    def test_zero_generator(self):
        psi = ghz_state(2)
        assert np.allclose(expm_mul(np.zeros((9, 9)), 0.3, psi), psi)

    def test_diagonal_phase(self):
        plus_one = np.array([1.0, 0.0, 0.0], dtype=complex)
        out = expm_mul(spin1_ops().sz, np.pi, plus_one)
        assert np.allclose(out, -plus_one, atol=1e-12)

    def test_against_taylor_oracle_small_dt(self):
        rng = np.random.default_rng(11)
        h = random_hermitian(rng, 9)
        psi = rng.normal(size=9) + 1j * rng.normal(size=9)
        psi /= np.linalg.norm(psi)
        out = expm_mul(h, 1e-7, psi)
        ref = taylor_expm_mul(h, 1e-7, psi)
        assert np.linalg.norm(out - ref) <= 1e-10

    def test_against_taylor_oracle_order_one_dt(self):
        rng = np.random.default_rng(12)
        h = random_hermitian(rng, 9)
        psi = rng.normal(size=9) + 1j * rng.normal(size=9)
        psi /= np.linalg.norm(psi)
        out = expm_mul(h, 0.37, psi)
        ref = taylor_expm_mul(h, 0.37, psi)
        assert np.linalg.norm(out - ref) <= 1e-10

    def test_unitary_for_random_hamiltonians(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            h = random_hermitian(rng, 6)
            psi = rng.normal(size=6) + 1j * rng.normal(size=6)
            psi /= np.linalg.norm(psi)
            out = expm_mul(h, rng.uniform(0.0, 2.0), psi)
            assert abs(np.linalg.norm(out) - 1.0) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            expm_mul(np.zeros((9, 9)), 0.1, np.zeros(3))


class TestFidelityPure:
    def test_self_fidelity(self):
        phi = ghz_state(2)
        assert fidelity_pure(np.outer(phi, phi.conj()), phi) == pytest.approx(1.0)

    def test_maximally_mixed(self):
        phi = ghz_state(2)
        assert fidelity_pure(np.eye(9) / 9.0, phi) == pytest.approx(1.0 / 9.0)

    def test_orthogonal_ghz_states(self):
        minus = ghz_state(2, -1)
        rho = np.outer(minus, minus.conj())
        assert fidelity_pure(rho, ghz_state(2, +1)) == pytest.approx(0.0, abs=1e-15)

    def test_linear_in_rho_and_bounded(self):
        rng = np.random.default_rng(21)
        phi = ghz_state(2)
        psi1 = rng.normal(size=9) + 1j * rng.normal(size=9)
        psi2 = rng.normal(size=9) + 1j * rng.normal(size=9)
        rho1 = np.outer(psi1, psi1.conj())
        rho1 /= np.trace(rho1).real
        rho2 = np.outer(psi2, psi2.conj())
        rho2 /= np.trace(rho2).real
        for a in (0.0, 0.25, 0.7, 1.0):
            mix = fidelity_pure(a * rho1 + (1 - a) * rho2, phi)
            expect = a * fidelity_pure(rho1, phi) + (1 - a) * fidelity_pure(rho2, phi)
            assert mix == pytest.approx(expect, abs=1e-12)
            assert 0.0 <= mix <= 1.0

    def test_imaginary_residue_rejected(self):
        rho = np.eye(9, dtype=complex) / 9.0
        rho[0, 8] = 0.5j  # non-Hermitian corruption
        with pytest.raises(ToleranceError):
            fidelity_pure(rho, ghz_state(2))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            fidelity_pure(np.eye(9) / 9.0, ghz_state(1))


class TestCommutatorNorm:
    def test_diagonal_operators_commute(self):
        ops = spin1_ops()
        assert commutator_norm(ops.sz, ops.sz2) == 0.0

    def test_sx_sz_single_site(self):
        ops = spin1_ops()
        # [sx, sz] = -i sy, checked by direct 3x3 multiplication
        direct = ops.sx @ ops.sz - ops.sz @ ops.sx
        assert np.allclose(direct, -1j * ops.sy, atol=1e-15)
        val = commutator_norm(ops.sx, ops.sz)
        assert val == pytest.approx(1.0 / np.sqrt(2.0))
        assert val > 0.5

    def test_rwa_hamiltonian_commutes_with_parity(self):
        spec = spectrum_spec()
        h_of_t = rwa_hamiltonian(spec)
        parity = parity_op(2)
        rng = np.random.default_rng(2)
        for t in rng.uniform(0.0, spec.t_total, size=50):
            assert commutator_norm(h_of_t(t), parity) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            commutator_norm(np.eye(3), np.eye(9))
