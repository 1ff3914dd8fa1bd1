import itertools
import math

import numpy as np
import pytest
import scipy.linalg
import sympy

from hiddencorr import (
    DomainError,
    InvalidStateError,
    MarginalSpec,
    artificial_reduce,
    conditional_information,
    conditional_quantum_information,
    correlation_defect_matrix,
    embed_pad,
    is_ppt,
    mutual_information,
    mutual_quantum_information,
    partial_transpose,
    pure_state,
    separable_mixture,
    spectrum,
    tensor_product,
    validate,
    von_neumann_entropy,
)
from hiddencorr.ensembles import random_density_matrix, random_diagonal_state
from oracles import brute_partial_transpose, brute_reduce, entropy_eig, entropy_logm

LN2 = math.log(2)
HALF_I = np.eye(2) / 2


def test_validate():
    assert validate(np.eye(3) / 3).ok
    bad = validate(np.eye(2))
    assert not bad.ok and bad.trace_defect == pytest.approx(1.0)
    assert bad.failures() == [("trace", pytest.approx(1.0))]
    assert not validate(np.array([[0.5, 1], [0, 0.5]])).hermitian
    assert not validate(np.diag([1.5, -0.5])).positive
    with pytest.raises(DomainError):
        validate(np.ones((2, 3)))


def test_bell_state_is_valid(bell):
    assert validate(bell).ok


def test_spectrum_reconstructs(rng):
    rho = random_density_matrix(5, rng)
    w, v = spectrum(rho)
    assert np.all(np.diff(w) <= 0)
    assert np.abs((v * w) @ v.conj().T - rho).max() < 1e-9
    assert w.sum() == pytest.approx(1, abs=1e-9)


def test_von_neumann_entropy(rng):
    assert von_neumann_entropy(pure_state(rng.standard_normal(5) + 1j * rng.standard_normal(5))) == pytest.approx(0, abs=1e-9)
    assert von_neumann_entropy(np.eye(6) / 6) == pytest.approx(math.log(6), abs=1e-12)
    assert von_neumann_entropy(np.diag([0.5, 0.25, 0.25])) == pytest.approx(1.0397207708399179, abs=1e-12)
    for _ in range(20):
        rho = random_density_matrix(4, rng)
        assert von_neumann_entropy(rho) == pytest.approx(entropy_logm(rho), abs=1e-9)
    with pytest.raises(InvalidStateError):
        von_neumann_entropy(np.diag([1.1, -0.1]))


@pytest.mark.parametrize("factors", [(2, 2), (2, 3), (3, 2), (2, 2, 2), (2, 3, 2)])
def test_reduce_matches_brute_force(factors, rng):
    rho = random_density_matrix(math.prod(factors), rng)
    n = len(factors)
    for k in range(1, n + 1):
        for keep in itertools.combinations(range(1, n + 1), k):
            np.testing.assert_allclose(
                artificial_reduce(rho, MarginalSpec(factors, keep)), brute_reduce(rho, factors, keep), atol=1e-13
            )


def test_bell_reductions(bell):
    for axis in (1, 2):
        np.testing.assert_allclose(artificial_reduce(bell, MarginalSpec((2, 2), (axis,))), HALF_I, atol=1e-12)


def test_reduce_product_state(rng):
    r1, r2 = random_density_matrix(2, rng), random_density_matrix(3, rng)
    rho = tensor_product([r1, r2])
    np.testing.assert_allclose(artificial_reduce(rho, MarginalSpec((2, 3), (1,))), r1, atol=1e-12)
    np.testing.assert_allclose(artificial_reduce(rho, MarginalSpec((2, 3), (2,))), r2, atol=1e-12)


def test_reduce_properties(rng):
    for _ in range(100):
        rho = random_density_matrix(4, rng)
        for axis in (1, 2):
            red = artificial_reduce(rho, MarginalSpec((2, 2), (axis,)))
            assert abs(np.trace(red) - 1) < 1e-12
            assert validate(red).ok


def test_reduce_shape_mismatch():
    with pytest.raises(DomainError):
        artificial_reduce(np.eye(4) / 4, MarginalSpec((2, 3), (1,)))


def test_tensor_product():
    rho = np.array([[0.7, 0.1j], [-0.1j, 0.3]])
    np.testing.assert_allclose(tensor_product([np.ones((1, 1)), rho]), rho)
    np.testing.assert_allclose(tensor_product([HALF_I, HALF_I]), np.eye(4) / 4)
    np.testing.assert_allclose(
        tensor_product([np.diag([1 / 3, 2 / 3]), HALF_I]), np.diag([1 / 6, 1 / 3, 1 / 6, 1 / 3]), atol=1e-15
    )
    with pytest.raises(DomainError):
        tensor_product([])


def test_mutual_quantum_information(bell):
    assert mutual_quantum_information(np.eye(4) / 4, (2, 2)) == pytest.approx(0, abs=1e-12)
    assert mutual_quantum_information(bell, (2, 2)) == pytest.approx(2 * LN2, abs=1e-9)
    assert mutual_quantum_information(np.diag([0.5, 0, 0, 0.5]), (2, 2)) == pytest.approx(LN2, abs=1e-12)
    with pytest.raises(DomainError):
        mutual_quantum_information(np.eye(8) / 8, (2, 2, 2))


def test_conditional_quantum_information(rng):
    rho = tensor_product([random_density_matrix(2, rng) for _ in range(3)])
    assert conditional_quantum_information(rho, (2, 2, 2)) == pytest.approx(0, abs=1e-9)
    diag = np.zeros(8)
    diag[[1, 2, 4]] = 1 / 3
    assert conditional_quantum_information(np.diag(diag), (2, 2, 2)) == pytest.approx(0.46209812037329684, abs=1e-9)
    psi = np.zeros(8)
    psi[[0, 7]] = 1
    assert conditional_quantum_information(pure_state(psi), (2, 2, 2)) == pytest.approx(LN2, abs=1e-9)
    with pytest.raises(DomainError):
        conditional_quantum_information(np.eye(4) / 4, (2, 2))


def test_conditional_against_oracle(rng):
    factors = (2, 3, 2)
    for _ in range(5):
        rho = random_density_matrix(12, rng)
        s = lambda keep: entropy_logm(brute_reduce(rho, factors, keep))
        expected = s((1, 2)) + s((2, 3)) - s((2,)) - entropy_logm(rho)
        assert conditional_quantum_information(rho, factors) == pytest.approx(expected, abs=1e-9)


def test_correlation_defect_matrix(bell, rng):
    prod = tensor_product([random_density_matrix(2, rng), random_density_matrix(2, rng)])
    assert np.abs(correlation_defect_matrix(prod, (2, 2))).max() < 1e-12
    expected = np.array([[1, 0, 0, 2], [0, -1, 0, 0], [0, 0, -1, 0], [2, 0, 0, 1]]) / 4
    np.testing.assert_allclose(correlation_defect_matrix(bell, (2, 2)), expected, atol=1e-12)
    for _ in range(10):
        d = correlation_defect_matrix(random_density_matrix(6, rng), (3, 2))
        assert abs(np.trace(d)) < 1e-12
        assert np.abs(d - d.conj().T).max() < 1e-12


def test_separable_mixture(rng):
    r1, r2 = random_density_matrix(2, rng), random_density_matrix(3, rng)
    np.testing.assert_allclose(separable_mixture([1.0], [(r1, r2)]), tensor_product([r1, r2]))
    ket0, ket1 = np.diag([1.0, 0]), np.diag([0, 1.0])
    np.testing.assert_allclose(
        separable_mixture([0.5, 0.5], [(ket0, ket0), (ket1, ket1)]), np.diag([0.5, 0, 0, 0.5])
    )
    for _ in range(50):
        k = rng.integers(1, 5)
        w = rng.exponential(size=k)
        pairs = [(random_density_matrix(2, rng), random_density_matrix(3, rng)) for _ in range(k)]
        verdict = is_ppt(separable_mixture(w / w.sum(), pairs), (2, 3))
        assert verdict.ppt and verdict.conclusive
    with pytest.raises(DomainError):
        separable_mixture([0.5, 0.5], [(ket0, ket0)])


def test_partial_transpose(bell, rng):
    for factors in [(2, 2), (2, 3), (3, 2)]:
        rho = random_density_matrix(math.prod(factors), rng)
        for axis in (1, 2):
            pt = partial_transpose(rho, factors, axis)
            np.testing.assert_allclose(pt, brute_partial_transpose(rho, factors, axis), atol=1e-15)
            np.testing.assert_allclose(partial_transpose(pt, factors, axis), rho, atol=1e-15)
            assert abs(np.trace(pt) - 1) < 1e-12
            assert np.abs(pt - pt.conj().T).max() < 1e-12
    prod = tensor_product([random_density_matrix(2, rng), random_density_matrix(2, rng)])
    assert validate(partial_transpose(prod, (2, 2), 1)).ok
    with pytest.raises(DomainError):
        partial_transpose(bell, (2, 2), 3)


def test_bell_partial_transpose_spectrum(bell):
    # exact eigenvalues of the rational matrix
    exact = sympy.Matrix(brute_partial_transpose(bell.real, (2, 2), 1)).applyfunc(sympy.nsimplify)
    assert exact.eigenvals() == {sympy.Rational(1, 2): 3, sympy.Rational(-1, 2): 1}
    for axis in (1, 2):
        got = np.sort(np.linalg.eigvalsh(partial_transpose(bell, (2, 2), axis)))
        np.testing.assert_allclose(got, [-0.5, 0.5, 0.5, 0.5], atol=1e-9)
        np.testing.assert_allclose(got, np.sort(scipy.linalg.eigvals(partial_transpose(bell, (2, 2), axis)).real), atol=1e-9)


def test_is_ppt(bell):
    v = is_ppt(bell, (2, 2))
    assert not v.ppt and v.conclusive and v.verdict == "entangled"
    assert v.min_pt_eigenvalue == pytest.approx(-0.5, abs=1e-9)
    v = is_ppt(np.eye(4) / 4, (2, 2))
    assert v.ppt and v.conclusive and v.verdict == "separable"
    v = is_ppt(np.eye(9) / 9, (3, 3))
    assert v.ppt and not v.conclusive and v.verdict == "inconclusive"
    psi = np.zeros(9)
    psi[[0, 4, 8]] = 1
    v = is_ppt(pure_state(psi), (3, 3))
    assert not v.ppt and v.conclusive


def test_embed_pad(rng):
    rho = random_density_matrix(5, rng)
    np.testing.assert_array_equal(embed_pad(rho, 0), rho)
    padded = embed_pad(rho, 1)
    assert padded.shape == (6, 6) and validate(padded).ok
    assert von_neumann_entropy(padded) == pytest.approx(von_neumann_entropy(rho), abs=1e-12)
    assert mutual_quantum_information(padded, (2, 3)) >= -1e-9
    w = np.sort(np.linalg.eigvalsh(padded))
    np.testing.assert_allclose(w, np.sort(np.append(np.linalg.eigvalsh(rho), 0)), atol=1e-12)
    with pytest.raises(DomainError):
        embed_pad(rho, -1)


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (3, 3)])
def test_subadditivity_sweep(shape, rng):
    n = math.prod(shape)
    for _ in range(500):
        assert mutual_quantum_information(random_density_matrix(n, rng), shape) >= -1e-9


@pytest.mark.parametrize("shape", [(2, 2, 2), (2, 2, 3)])
def test_strong_subadditivity_sweep(shape, rng):
    n = math.prod(shape)
    for _ in range(500):
        assert conditional_quantum_information(random_density_matrix(n, rng), shape) >= -1e-9


def test_diagonal_states_match_classical(rng):
    for _ in range(100):
        rho = random_diagonal_state(8, rng)
        p = np.diag(rho).real
        assert mutual_quantum_information(rho, (2, 4)) == pytest.approx(mutual_information(p, (2, 4)), abs=1e-9)
        assert conditional_quantum_information(rho, (2, 2, 2)) == pytest.approx(
            conditional_information(p, (2, 2, 2)), abs=1e-9
        )


def test_pure_state_purity_criterion(rng):
    for _ in range(20):
        rho = random_density_matrix(6, rng, rank=1)
        r1 = artificial_reduce(rho, MarginalSpec((2, 3), (1,)))
        r2 = artificial_reduce(rho, MarginalSpec((2, 3), (2,)))
        w1 = np.sort(np.linalg.eigvalsh(r1))
        w2 = np.sort(np.linalg.eigvalsh(r2))[-2:]
        np.testing.assert_allclose(w1, w2, atol=1e-9)
        assert mutual_quantum_information(rho, (2, 3)) == pytest.approx(2 * von_neumann_entropy(r1), abs=1e-9)


def test_entropy_additive(rng):
    for _ in range(20):
        r1, r2 = random_density_matrix(2, rng), random_density_matrix(3, rng)
        assert von_neumann_entropy(tensor_product([r1, r2])) == pytest.approx(
            von_neumann_entropy(r1) + von_neumann_entropy(r2), abs=1e-9
        )
        assert von_neumann_entropy(r1) == pytest.approx(entropy_eig(r1), abs=1e-9)
