import pytest
from hypothesis import given, strategies as st

from heegaard.exact import IntMatrix, determinant
from heegaard.splitting import (
    GluingData,
    ValidationError,
    anti_symplectic_check,
    block_relation_violations,
    blocks_to_matrix,
    connected_sum,
    intersection_form,
    lens,
    matrix_to_blocks,
    random_splitting,
    stabilize,
    validate,
)
from oracle_helpers import plain_anti_symplectic

splitting_params = st.tuples(
    st.integers(1, 3), st.integers(0, 200), st.sampled_from([0, 3, 6, 10, 15])
)


def blocks_of(G):
    return (
        [list(r) for r in G.R.to_rows()],
        [list(r) for r in G.P.to_rows()],
        [list(r) for r in G.S.to_rows()],
        [list(r) for r in G.Q.to_rows()],
    )


# -------------------------------------------------------------- validation


def test_identity_quadruple_violations_pinned():
    v = block_relation_violations([[1]], [[0]], [[0]], [[1]])
    assert list(v) == ["P†S − Q†R = -1 ≠ 1", "SP† − QR† = -1 ≠ 1"]


def test_standard_sphere_splitting_is_valid():
    G = validate([[0]], [[1]], [[1]], [[0]])
    assert isinstance(G, GluingData)
    assert G.genus == 1


def test_validation_error_carries_violations():
    with pytest.raises(ValidationError) as exc:
        validate([[1]], [[0]], [[0]], [[1]])
    assert exc.value.violations
    assert all(isinstance(s, str) for s in exc.value.violations)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValidationError):
        validate([[0, 0]], [[1]], [[1]], [[0]])
    with pytest.raises(ValidationError):
        validate([[0, 0], [0, 0]], [[1]], [[1]], [[0]])


def test_genus_zero_rejected():
    with pytest.raises(ValidationError):
        validate([], [], [], [])


def test_gluing_data_immutable_hashable():
    a = lens(5, 1)
    b = lens(5, 1)
    assert a == b and hash(a) == hash(b)
    assert a != lens(5, 2)
    with pytest.raises(AttributeError):
        a.R = IntMatrix.identity(1)


@given(splitting_params)
def test_valid_samples_pass_both_checkers_and_oracle(params):
    G = random_splitting(*params)
    r, p, s, q = blocks_of(G)
    assert not block_relation_violations(r, p, s, q)
    assert anti_symplectic_check(r, p, s, q)
    assert plain_anti_symplectic(r, p, s, q)


@given(
    splitting_params,
    st.sampled_from("RPSQ"),
    st.integers(0, 5),
    st.integers(0, 5),
    st.sampled_from([-2, -1, 1, 2]),
)
def test_perturbed_samples_agree_across_checkers(params, block, i, j, delta):
    G = random_splitting(*params)
    r, p, s, q = blocks_of(G)
    target = {"R": r, "P": p, "S": s, "Q": q}[block]
    g = len(target)
    target[i % g][j % g] += delta
    ok_relations = not block_relation_violations(r, p, s, q)
    assert ok_relations == anti_symplectic_check(r, p, s, q)
    assert ok_relations == plain_anti_symplectic(r, p, s, q)


@given(splitting_params)
def test_valid_determinant_sign(params):
    G = random_splitting(*params)
    assert determinant(G.matrix) == (-1) ** G.genus


@given(splitting_params)
def test_matrix_inverse_closed_form(params):
    G = random_splitting(*params)
    ident = IntMatrix.identity(2 * G.genus)
    assert G.matrix @ G.matrix_inverse == ident
    assert G.matrix_inverse @ G.matrix == ident


def test_block_matrix_roundtrip():
    G = random_splitting(2, 5, 6)
    M = blocks_to_matrix(G.R, G.P, G.S, G.Q)
    r, p, s, q = matrix_to_blocks(M)
    assert (r, p, s, q) == (G.R, G.P, G.S, G.Q)


def test_intersection_form_shape():
    J = intersection_form(2)
    assert J.to_rows() == ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))
    assert J.transpose() == -J


# ------------------------------------------------------------------- lens


def test_lens_pinned_completions():
    cases = {
        (1, 0): (0, 1, 1, 0),
        (0, 1): (-1, 0, 0, 1),
        (7, 2): (3, 7, 1, 2),
        (2, 1): (-1, 2, 0, 1),
        (5, 2): (2, 5, 1, 2),
    }
    for (p, q), (r, pp, s, qq) in cases.items():
        G = lens(p, q)
        assert (G.R[0, 0], G.P[0, 0], G.S[0, 0], G.Q[0, 0]) == (r, pp, s, qq)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_lens_completion_law(p, q):
    from math import gcd

    if gcd(p, q) != 1:
        with pytest.raises(ValueError):
            lens(p, q)
        return
    G = lens(p, q)
    r, pp, s, qq = G.R[0, 0], G.P[0, 0], G.S[0, 0], G.Q[0, 0]
    assert pp == abs(p)
    assert qq == (q if p >= 0 else -q) or p == 0
    assert pp * s - qq * r == 1


def test_lens_negative_p_normalizes():
    assert lens(-5, 2) == lens(5, -2)


def test_lens_gcd_error_message():
    with pytest.raises(ValueError, match="gcd"):
        lens(4, 2)


# ------------------------------------------------- composite constructions


def test_connected_sum_blocks():
    G = connected_sum(lens(2, 1), lens(3, 1))
    assert G.genus == 2
    assert G.P.to_rows() == ((2, 0), (0, 3))
    # off-diagonal blocks are zero in every block
    for blk in (G.R, G.P, G.S, G.Q):
        assert blk[0, 1] == 0 and blk[1, 0] == 0


@given(splitting_params, splitting_params)
def test_connected_sum_valid(a, b):
    G = connected_sum(random_splitting(*a), random_splitting(*b))
    r, p, s, q = blocks_of(G)
    assert not block_relation_violations(r, p, s, q)


def test_stabilize_adds_trivial_handle():
    G = lens(7, 2)
    S = stabilize(G)
    assert S.genus == 2
    assert S == connected_sum(G, lens(1, 0))


# --------------------------------------------------------- random gluings


def test_random_splitting_deterministic():
    a = random_splitting(2, 11, 8)
    b = random_splitting(2, 11, 8)
    assert a == b


def test_random_splitting_seed_sensitivity():
    assert random_splitting(2, 0, 8) != random_splitting(2, 1, 8)


def test_random_splitting_word_length_zero_is_standard():
    G = random_splitting(3, 0, 0)
    z = IntMatrix.zeros(3, 3)
    i = IntMatrix.identity(3)
    assert (G.R, G.P, G.S, G.Q) == (z, i, i, z)


@given(splitting_params)
def test_random_splitting_genus(params):
    assert random_splitting(*params).genus == params[0]
