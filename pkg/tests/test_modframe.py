import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fundgroup.errors import AlgebraMismatch, InvalidRank, NotABimodule, NotAProjection
from fundgroup.modframe import (
    ToyAlgebra,
    ToyModule,
    frame_of,
    gram_projection,
    haar_unitary,
    identity_module,
    inner,
    module_unitary,
    random_bimodule,
    random_projection,
    random_sweep,
    reconstruction_error,
    resample_frame,
    sweep,
    t_value,
    tau_tr,
    tensor_modules,
    transform_frame,
)

TOL = 1e-9


def test_haar_unitary_is_unitary():
    U = haar_unitary(6, np.random.default_rng(0))
    assert np.allclose(U.conj().T @ U, np.eye(6), atol=1e-12)


def test_trivial_module():
    assert t_value(frame_of(identity_module(1))) == 1.0
    assert all(row.T == 1.0 for row in sweep(1, 1, 1, trials=3, seed=0).rows)


def test_standard_frame_gram_is_p():
    M = random_projection(3, 2, 4, seed=1)
    F = frame_of(M)
    assert np.allclose(gram_projection(F), M.p, atol=1e-12)
    assert reconstruction_error(F) < TOL
    assert abs(t_value(F) - tau_tr(M)) < TOL
    assert abs(t_value(F) - 4 / 3) < TOL


def test_rank_validation():
    with pytest.raises(InvalidRank):
        random_projection(2, 1, 3)
    with pytest.raises(InvalidRank):
        random_projection(2, 2, 0)
    with pytest.raises(InvalidRank):
        random_bimodule(2, 1, 2)


def test_projection_validation():
    with pytest.raises(NotAProjection):
        ToyModule(ToyAlgebra(2), 1, np.array([[1, 1], [0, 1]], dtype=complex))
    with pytest.raises(NotAProjection):
        ToyModule(ToyAlgebra(2), 2, np.eye(2))


def test_resample_deterministic():
    F = frame_of(random_projection(2, 3, 4, seed=2))
    assert resample_frame(F, seed=9).equals(resample_frame(F, seed=9))
    assert not resample_frame(F, seed=9).equals(resample_frame(F, seed=10))


def test_resample_changes_length_keeps_frame():
    F = frame_of(random_projection(2, 2, 3, seed=3))
    G = resample_frame(F, seed=4, extra=2)
    assert len(G) == len(F) + 2
    assert reconstruction_error(G) < TOL
    g = gram_projection(G)
    assert np.linalg.norm(g @ g - g) < TOL
    assert abs(t_value(G) - t_value(F)) < TOL


def test_module_unitary_preserves_inner_products():
    M = random_projection(3, 2, 5, seed=5)
    F = frame_of(M)
    u = module_unitary(M, seed=6)
    G = transform_frame(F, u)
    for a, b in zip(F.vectors, G.vectors):
        assert np.allclose(inner(a, a), inner(b, b), atol=1e-12)
    assert reconstruction_error(G) < TOL


def test_bimodule_left_action_is_homomorphism():
    B = random_bimodule(2, 3, 2, seed=7)
    rng = np.random.default_rng(8)
    a, b = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
    assert np.allclose(B.left_action(a @ b), B.left_action(a) @ B.left_action(b), atol=1e-12)
    assert np.allclose(B.left_action(a.conj().T), B.left_action(a).conj().T, atol=1e-12)
    assert np.allclose(B.left_action(np.eye(2)), B.p, atol=1e-12)
    assert abs(t_value(frame_of(B)) - 2) < TOL


def test_tensor_is_multiplicative():
    F = frame_of(random_projection(2, 2, 3, seed=11))
    B = frame_of(random_bimodule(2, 2, 2, seed=12))
    P = tensor_modules(F, B)
    assert reconstruction_error(P) < TOL
    assert abs(t_value(P) - t_value(F) * t_value(B)) < 1e-8


def test_tensor_of_bimodules_is_bimodule():
    B1 = frame_of(random_bimodule(2, 2, 2, seed=1))
    B2 = frame_of(random_bimodule(2, 3, 1, seed=2))
    P = tensor_modules(B1, B2)
    assert P.module.left is not None
    Q = tensor_modules(P, B1)
    assert abs(t_value(Q) - 2 * 1 * 2) < 1e-8


def test_tensor_with_identity():
    F = frame_of(random_projection(3, 2, 2, seed=13))
    P = tensor_modules(F, frame_of(identity_module(3)))
    assert np.allclose(P.module.p, F.module.p, atol=1e-12)


def test_tensor_errors():
    F = frame_of(random_projection(2, 1, 1, seed=0))
    with pytest.raises(AlgebraMismatch):
        tensor_modules(F, frame_of(identity_module(3)))
    with pytest.raises(NotABimodule):
        tensor_modules(F, frame_of(random_projection(2, 1, 1, seed=1)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_frame_independence(n, k, data):
    rank = data.draw(st.integers(1, n * k))
    seed = data.draw(st.integers(0, 2**32 - 1))
    M = random_projection(n, k, rank, seed)
    F = frame_of(M)
    G = resample_frame(F, seed + 1)
    assert abs(t_value(G) - t_value(F)) < TOL
    assert abs(t_value(F) - rank / n) < TOL


@pytest.mark.parametrize("n, k, rank", [(2, 2, 3), (1, 1, 1), (3, 4, 7)])
def test_sweep_values(n, k, rank):
    r = sweep(n, k, rank, trials=5, seed=1)
    assert all(abs(row.T - rank / n) < TOL for row in r.rows)
    assert r.max_spread <= TOL


def test_sweep_csv():
    text = sweep(2, 2, 3, trials=3, seed=1).to_csv()
    lines = text.strip().splitlines()
    assert lines[0] == "module_id,n,k,rank,T,resample_spread,mult_deviation"
    assert len(lines) == 4


def test_random_sweep_reproducible():
    assert random_sweep(5, seed=3) == random_sweep(5, seed=3)
