"""Occupation states, ladder operators, anticommutators, and wave functions."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracfock import (
    FockVector,
    ProductWaveFunction,
    annihilate,
    antisymmetrize,
    antisymmetrized_values,
    basis_state,
    car_report,
    create,
    format_fock_vector,
    indices_from_occupation,
    multiparticle_inner,
    occupation_from_indices,
    operator_matrix,
    parse_fock_vector,
    particle_number,
    permutation_parity,
    vacuum,
)


def test_occupation_bitset_round_trip():
    for indices in [(), (0,), (0, 2), (1, 3, 5), (0, 1, 2, 3)]:
        state = occupation_from_indices(indices)
        assert indices_from_occupation(state) == indices
        assert particle_number(state) == len(indices)
    with pytest.raises(ValueError):
        occupation_from_indices((2, 1))
    with pytest.raises(ValueError):
        occupation_from_indices((0, 0))
    with pytest.raises(ValueError):
        occupation_from_indices((-1,))
    with pytest.raises(ValueError):
        indices_from_occupation(-3)


def test_ladder_on_sorted_slot_states():
    # one occupied mode below the acted slot flips the sign
    assert (annihilate(2, basis_state((0, 2))) + basis_state((0,))).norm() == 0.0
    assert (create(1, basis_state((0, 2))) + basis_state((0, 1, 2))).is_zero()
    assert create(0, basis_state((0,))).is_zero()
    assert annihilate(1, basis_state((0,))).is_zero()


def test_ladder_positional_signs():
    assert (create(3, basis_state((0, 1))) - basis_state((0, 1, 3))).is_zero()
    assert (annihilate(0, basis_state((0, 1))) - basis_state((1,))).is_zero()
    assert (annihilate(1, basis_state((0, 1))) + basis_state((0,))).is_zero()
    assert (create(0, vacuum()) - basis_state((0,))).is_zero()


def test_antisymmetrize_examples():
    assert (antisymmetrize((3, 1, 2)) - basis_state((1, 2, 3))).is_zero()
    assert (antisymmetrize((2, 1)) + basis_state((1, 2))).is_zero()
    assert antisymmetrize((1, 1)).is_zero()
    assert antisymmetrize((0, 1, 0)).is_zero()
    assert (antisymmetrize((0, 5)) - basis_state((0, 5))).is_zero()


@settings(derandomize=True, deadline=None, max_examples=60)
@given(st.permutations(list(range(5))))
def test_antisymmetrize_carries_the_sorting_parity(perm):
    expected = permutation_parity(perm) * basis_state(tuple(range(5)))
    assert (antisymmetrize(perm) - expected).is_zero()


def test_permutation_parity_agrees_with_transposition_count():
    rng = np.random.default_rng(12)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        perm = list(rng.permutation(n))
        # parity from explicit bubble sort
        work, swaps = list(perm), 0
        for a in range(n):
            for b in range(n - 1 - a):
                if work[b] > work[b + 1]:
                    work[b], work[b + 1] = work[b + 1], work[b]
                    swaps += 1
        assert permutation_parity(perm) == (-1) ** swaps


@pytest.mark.parametrize("nmodes", range(1, 7))
def test_car_residuals_are_exact_zero(nmodes):
    rep = car_report(nmodes)
    assert rep.annihilate_pairs == 0.0
    assert rep.create_pairs == 0.0
    assert rep.mixed_pairs == 0.0
    assert rep.adjointness == 0.0
    assert rep.max() == 0.0


def test_operator_matrix_adjointness_and_validation():
    for nmodes in (2, 4):
        for i in range(nmodes):
            c = operator_matrix("create", i, nmodes)
            a = operator_matrix("annihilate", i, nmodes)
            assert np.array_equal(c, a.T)
    with pytest.raises(ValueError):
        operator_matrix("number", 0, 2)
    with pytest.raises(ValueError):
        operator_matrix("create", 5, 2)
    with pytest.raises(ValueError):
        create(6, vacuum(), nmodes=6)
    with pytest.raises(ValueError):
        annihilate(-1, vacuum())


def test_multiparticle_inner_orthonormal_basis():
    states = [(), (0,), (1,), (0, 1), (0, 2, 4)]
    for a in states:
        for b in states:
            got = multiparticle_inner(basis_state(a), basis_state(b))
            assert got == (1.0 if a == b else 0.0)
    # conjugate linear in the first argument
    u = (0.3 + 0.4j) * basis_state((0,))
    v = basis_state((0,))
    assert multiparticle_inner(u, v) == (0.3 - 0.4j)
    assert multiparticle_inner(v, u) == (0.3 + 0.4j)


def slater(coeffs):
    """c+(row 0) ... c+(row n-1) applied to the vacuum."""
    out = vacuum()
    for row in reversed(coeffs):
        acc = FockVector()
        for b, c in enumerate(row):
            acc = acc + c * create(b, out)
        out = acc
    return out


def test_slater_inner_equals_gram_determinant():
    rng = np.random.default_rng(21)
    for n in (2, 3, 4):
        nm = 6
        u = rng.standard_normal((n, nm)) + 1j * rng.standard_normal((n, nm))
        v = rng.standard_normal((n, nm)) + 1j * rng.standard_normal((n, nm))
        gram = np.conj(u) @ v.T
        got = multiparticle_inner(slater(u), slater(v))
        want = np.linalg.det(gram)
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_slater_with_dependent_rows_vanishes():
    rng = np.random.default_rng(22)
    row = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    dependent = np.stack([row, 2.0 * row])
    assert slater(dependent).norm() <= 1e-14


def test_product_wave_function_is_plain_outer_product():
    rng = np.random.default_rng(31)
    table = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    pwf = ProductWaveFunction(indices=(4, 0, 2))
    out = pwf.values(table)
    assert out.shape == (4, 4, 4)
    want = np.einsum("a,b,c->abc", table[0], table[1], table[2])
    assert np.max(np.abs(out - want)) <= 1e-14
    with pytest.raises(ValueError):
        pwf.values(table[:2])


def test_antisymmetrized_values_matches_permutation_sum():
    rng = np.random.default_rng(32)
    n = 3
    table = rng.standard_normal((n, n, 4)) + 1j * rng.standard_normal((n, n, 4))
    got = antisymmetrized_values(table)
    want = np.zeros((4,) * n, dtype=np.complex128)
    pwf = ProductWaveFunction(indices=tuple(range(n)))
    for perm in itertools.permutations(range(n)):
        slot_table = np.stack([table[perm[s], s] for s in range(n)])
        want = want + permutation_parity(perm) * pwf.values(slot_table)
    want /= math.sqrt(math.factorial(n))
    assert np.max(np.abs(got - want)) <= 1e-14


def test_antisymmetrized_values_is_antisymmetric_in_the_points():
    rng = np.random.default_rng(33)
    table = rng.standard_normal((2, 2, 4)) + 1j * rng.standard_normal((2, 2, 4))
    out = antisymmetrized_values(table)
    swapped = antisymmetrized_values(table[:, ::-1])
    assert np.max(np.abs(swapped + np.swapaxes(out, 0, 1))) <= 1e-14
    # identical mode rows collapse the state
    same = np.stack([table[0], table[0]])
    assert np.max(np.abs(antisymmetrized_values(same))) == 0.0
    with pytest.raises(ValueError):
        antisymmetrized_values(table[:, :, :3])


def test_fock_vector_algebra_and_pruning():
    v = basis_state((0, 2)) + 2.0j * basis_state((1,))
    assert v.norm() == pytest.approx(np.sqrt(5.0))
    assert v.sectors() == {1, 2}
    assert (v - v).is_zero()
    assert len(v - v) == 0
    w = v.conjugate()
    assert w[occupation_from_indices((1,))] == -2.0j
    assert multiparticle_inner(v, v) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        FockVector({-2: 1.0})


def test_numpy_scalars_multiply_into_fock_vectors():
    # ndarray ops must defer to the vector's own scalar multiplication
    v = basis_state((0,))
    for scalar in (np.float64(2.0), np.complex128(1.0 - 1.0j)):
        out = scalar * v
        assert isinstance(out, FockVector)
        assert out[1] == complex(scalar)
        out = v * scalar
        assert isinstance(out, FockVector)


def test_dump_round_trip():
    v = basis_state((0, 3)) + (0.5 - 0.25j) * basis_state((1,)) + 1e-17 * basis_state((2,))
    text = format_fock_vector(v)
    back = parse_fock_vector(text)
    assert (back - v).is_zero()
    assert format_fock_vector(FockVector()) == ""
    assert parse_fock_vector("\n\n").is_zero()


def test_dump_parse_errors():
    with pytest.raises(ValueError):
        parse_fock_vector("0 1 2\n")
    with pytest.raises(ValueError):
        parse_fock_vector("[0] 1.0\n")
    with pytest.raises(ValueError):
        parse_fock_vector("[0] 1.0 0.0\n[0] 2.0 0.0\n")
