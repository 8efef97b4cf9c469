import numpy as np
import pytest

from frameavg import max_norm
from frameavg.lattice import (
    HamiltonianSpec,
    LatticeSizeError,
    LatticeSpec,
    SiteOperator,
    build_hamiltonian,
    embed_site_operator,
    pauli,
    reduce_to_site,
    sigma_x,
    sigma_z,
    translation_defect,
    translation_operator,
)


class TestLatticeSpec:
    def test_dim(self):
        assert LatticeSpec(4).dim == 16
        assert LatticeSpec(3, local_dim=3).dim == 27

    def test_rejects_single_site(self):
        with pytest.raises(ValueError):
            LatticeSpec(1)

    def test_rejects_open_chain(self):
        with pytest.raises(ValueError):
            LatticeSpec(4, periodic=False)

    def test_guard_refuses_blowup(self):
        with pytest.raises(LatticeSizeError):
            LatticeSpec(15)

    def test_guard_env_lowers(self, monkeypatch):
        monkeypatch.setenv("FRAMEAVG_MAX_DIM", "256")
        LatticeSpec(8)
        with pytest.raises(LatticeSizeError):
            LatticeSpec(9)

    def test_guard_env_cannot_raise(self, monkeypatch):
        monkeypatch.setenv("FRAMEAVG_MAX_DIM", "1000000")
        with pytest.raises(LatticeSizeError):
            LatticeSpec(15)

    def test_guard_env_rejects_garbage(self, monkeypatch):
        monkeypatch.setenv("FRAMEAVG_MAX_DIM", "lots")
        with pytest.raises(ValueError):
            LatticeSpec(4)


class TestHamiltonianSpec:
    def test_unknown_model(self):
        with pytest.raises(ValueError):
            HamiltonianSpec("ising", {"J": 1.0})

    def test_missing_coupling(self):
        with pytest.raises(ValueError):
            HamiltonianSpec("transverse-field-ising", {"J": 1.0})

    def test_unknown_coupling(self):
        with pytest.raises(ValueError):
            HamiltonianSpec("free-spins", {"h": 1.0, "g": 2.0})

    def test_non_finite_coupling(self):
        with pytest.raises(ValueError):
            HamiltonianSpec("free-spins", {"h": float("nan")})


class TestEmbedding:
    def test_identity_embeds_to_identity(self):
        lat = LatticeSpec(2)
        out = embed_site_operator(lat, SiteOperator(0, np.eye(2)))
        assert max_norm(out - np.eye(4)) == 0.0

    def test_pauli_z_site0_fixes_basis_order(self):
        # site 0 is the most significant digit of the basis index
        lat = LatticeSpec(2)
        out = embed_site_operator(lat, SiteOperator(0, sigma_z))
        assert max_norm(out - np.diag([1.0, 1.0, -1.0, -1.0])) == 0.0

    def test_disjoint_sites_commute(self):
        lat = LatticeSpec(3)
        a = embed_site_operator(lat, SiteOperator(2, sigma_x))
        b = embed_site_operator(lat, SiteOperator(0, sigma_x))
        assert max_norm(a @ b - b @ a) == 0.0

    def test_site_out_of_range(self):
        with pytest.raises(ValueError):
            embed_site_operator(LatticeSpec(2), SiteOperator(2, sigma_x))

    def test_local_dim_mismatch(self):
        with pytest.raises(ValueError):
            embed_site_operator(LatticeSpec(2, local_dim=3), SiteOperator(0, sigma_x))

    def test_pauli_lookup(self):
        assert max_norm(pauli("Y") - np.array([[0, -1j], [1j, 0]])) == 0.0
        with pytest.raises(ValueError):
            pauli("W")


class TestTranslation:
    def test_order_n(self):
        lat = LatticeSpec(4)
        t = translation_operator(lat).matrix
        power = np.eye(16)
        for _ in range(4):
            power = t @ power
        assert max_norm(power - np.eye(16)) == 0.0

    def test_shift_convention(self):
        # |01> is basis index 1; the right shift sends it to |10>, index 2
        t = translation_operator(LatticeSpec(2)).matrix
        e1 = np.zeros(4)
        e1[1] = 1.0
        np.testing.assert_array_equal(t @ e1, [0.0, 0.0, 1.0, 0.0])

    def test_covariance_moves_site_forward(self):
        lat = LatticeSpec(3)
        t = translation_operator(lat)
        rng = np.random.default_rng(17)
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        for j in range(3):
            lhs = t.matrix @ embed_site_operator(lat, SiteOperator(j, a)) @ t.matrix.conj().T
            rhs = embed_site_operator(lat, SiteOperator((j + 1) % 3, a))
            assert max_norm(lhs - rhs) < 1e-12

    def test_permutation_rides_along(self):
        t = translation_operator(LatticeSpec(3))
        assert t.permutation is not None
        dense = np.zeros((8, 8))
        dense[t.permutation, np.arange(8)] = 1.0
        assert max_norm(t.matrix - dense) == 0.0


class TestHamiltonians:
    def test_free_spins_n2(self):
        h = build_hamiltonian(LatticeSpec(2), HamiltonianSpec("free-spins", {"h": 1.0}))
        assert max_norm(h.matrix - np.diag([2.0, 0.0, 0.0, -2.0])) == 0.0

    def test_ising_n2_single_bond(self):
        spec = HamiltonianSpec("transverse-field-ising", {"J": 1.0, "g": 0.0})
        h = build_hamiltonian(LatticeSpec(2), spec)
        np.testing.assert_allclose(np.linalg.eigvalsh(h.matrix), [-1.0, -1.0, 1.0, 1.0], atol=1e-14)

    def test_ising_matches_explicit_sum(self):
        lat = LatticeSpec(4)
        spec = HamiltonianSpec("transverse-field-ising", {"J": 1.3, "g": 0.7})
        h = build_hamiltonian(lat, spec).matrix
        ref = np.zeros((16, 16), dtype=complex)
        z = [embed_site_operator(lat, SiteOperator(i, sigma_z)) for i in range(4)]
        x = [embed_site_operator(lat, SiteOperator(i, sigma_x)) for i in range(4)]
        for i in range(4):
            ref -= 1.3 * z[i] @ z[(i + 1) % 4] + 0.7 * x[i]
        assert max_norm(h - ref) < 1e-12

    def test_xxz_matches_explicit_sum(self):
        lat = LatticeSpec(3)
        spec = HamiltonianSpec("heisenberg-xxz", {"J": 0.9, "delta": 1.4})
        h = build_hamiltonian(lat, spec).matrix
        ref = np.zeros((8, 8), dtype=complex)
        for name, coeff in (("X", 0.9), ("Y", 0.9), ("Z", 0.9 * 1.4)):
            ops = [embed_site_operator(lat, SiteOperator(i, pauli(name))) for i in range(3)]
            for i in range(3):
                ref += coeff * ops[i] @ ops[(i + 1) % 3]
        assert max_norm(h - ref) < 1e-12

    @pytest.mark.parametrize(
        "spec",
        [
            HamiltonianSpec("free-spins", {"h": 0.8}),
            HamiltonianSpec("transverse-field-ising", {"J": 1.0, "g": 0.6}),
            HamiltonianSpec("heisenberg-xxz", {"J": 1.0, "delta": 0.5}),
        ],
    )
    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_translation_symmetry(self, spec, n):
        lat = LatticeSpec(n)
        h = build_hamiltonian(lat, spec)
        assert translation_defect(h.matrix, translation_operator(lat)) <= 1e-10


def test_reduce_to_site_product_state():
    lat = LatticeSpec(3)
    rng = np.random.default_rng(23)
    locals_ = []
    for _ in range(3):
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        m = g @ g.conj().T
        locals_.append(m / m.trace())
    full = np.kron(np.kron(locals_[0], locals_[1]), locals_[2])
    for site in range(3):
        got = reduce_to_site(lat, full, site)
        assert max_norm(got - locals_[site]) < 1e-12


def test_reduce_to_site_preserves_trace():
    lat = LatticeSpec(4)
    rng = np.random.default_rng(29)
    g = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    m = g @ g.conj().T
    m /= m.trace()
    red = reduce_to_site(lat, m, 2)
    assert abs(red.trace() - 1.0) < 1e-12
