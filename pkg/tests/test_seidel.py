import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerseidel import seidel as sd
from eulerseidel.errors import ClassMismatch, DivisionByZero, InsufficientData, ParseError
from eulerseidel.expr import parse_expr
from eulerseidel.seidel import DependenceClass, SeidelSpec, SeidelTable, build_table

from helpers import nonvanishing_expr, random_expr, rng_for

DELTA = SeidelSpec.parse("-1", "n+1")


def test_derangement_table():
    t = build_table(DELTA, 4)
    assert t.final_sequence() == [1, 0, 1, 2, 9]
    assert t.rows[0] == (1,) * 5
    assert t.rows[1] == (0, 1, 2, 3)
    assert t.rows[2] == (1, 3, 7)
    assert t.rows[3] == (2, 11)


def test_binomial_case_doubles():
    t = build_table(SeidelSpec.parse("1", "1"), 10)
    assert t.final_sequence() == [2**k for k in range(11)]


def test_shift_case():
    t = build_table(SeidelSpec.parse("0", "1", "n*n"), 6)
    assert t.final_sequence() == [k * k for k in range(7)]


def test_row_zero_never_evaluates_coefficients():
    t = build_table(SeidelSpec.parse("1/k", "1/k"), 5)
    assert t.final_sequence() == [F(2**k, math.factorial(k)) for k in range(6)]


def test_division_by_zero_in_table():
    with pytest.raises(DivisionByZero) as info:
        build_table(SeidelSpec.parse("1/(n-2)", "1"), 4)
    assert info.value.n == 2


def test_init_forms():
    assert sd.parse_init("factorial")(4) == 24
    assert sd.parse_init("ones")(9) == 1
    assert sd.parse_init("1,2,3/4")(2) == F(3, 4)
    assert sd.parse_init("n*n+1")(3) == 10
    with pytest.raises(ParseError):
        sd.parse_init("n+k")
    with pytest.raises(InsufficientData):
        build_table(SeidelSpec.parse("1", "1", "1,2"), 3)


def test_table_json_round_trip_and_bounds():
    t = build_table(DELTA, 5)
    assert SeidelTable.from_json(t.to_json()) == t
    with pytest.raises(IndexError):
        t.cell(3, 3)
    with pytest.raises(ValueError):
        SeidelTable.from_json({"N": 2, "rows": [["1"], ["1"]]})


# coefficients ------------------------------------------------------------------


def test_delta_coefficients():
    u, v = DELTA.u, DELTA.v
    row = [sd.coeff_enum(0, 4, l, u, v) for l in range(5)]
    assert row == [1, -4, 12, -24, 24]
    assert sd.associated_matrix(DELTA, N=4).rows[4] == (1, -4, 12, -24, 24)


@given(st.integers(0, 100_000))
@settings(max_examples=25, deadline=None)
def test_three_coefficient_methods_agree(seed):
    rng = rng_for(seed)
    u, v = random_expr(rng), random_expr(rng)
    W = sd.path_weights(u, v, 6)
    for n in range(3):
        for k in range(6 - n + 1):
            for l in range(k + 1):
                c = sd.coeff_enum(n, k, l, u, v)
                assert c == sd.coeff_unit_vector(n, k, l, u, v) == W[n][k][l]


def test_final_sequence_is_associated_matrix_times_initial():
    rng = rng_for(5)
    u, v = random_expr(rng), random_expr(rng)
    init = [F(rng.randint(-4, 4)) for _ in range(8)]
    t = build_table(SeidelSpec(u, v, sd.sequence_from_list(init)), 7)
    assert t.final_sequence() == sd.associated_matrix(u, v, 7) @ init


def test_coefficient_ranges():
    with pytest.raises(ValueError):
        sd.coeff_enum(0, 2, 3, DELTA.u, DELTA.v)
    with pytest.raises(ValueError):
        sd.coeff_unit_vector(0, 2, -1, DELTA.u, DELTA.v)


@pytest.mark.parametrize(
    "u,v,cls",
    [
        ("n+1", "2*n-3", DependenceClass.UN_VN),
        ("-1", "n+1", DependenceClass.UN_VN),
        ("1/k", "k", DependenceClass.UK_VK),
        ("k*k", "n+2", DependenceClass.UK_VN),
        ("n/k", "1/k", DependenceClass.UNK_VK),
    ],
)
def test_detect_class(u, v, cls):
    assert sd.detect_class(parse_expr(u), parse_expr(v)) is cls


def test_class_mismatch():
    u, v = parse_expr("n*k"), parse_expr("n+k")
    with pytest.raises(ClassMismatch):
        sd.detect_class(u, v)
    with pytest.raises(ClassMismatch):
        sd.coeff_triangle(0, 3, parse_expr("n"), parse_expr("k"), DependenceClass.UK_VK)


def test_inverse_k_class_gives_scaled_binomials():
    u = v = parse_expr("1/k")
    C = sd.coeff_triangle(0, 8, u, v)
    assert all(C[k][l] == F(math.comb(k, l), math.factorial(k)) for k in range(9) for l in range(k + 1))


def test_mixed_class_neighbour_column():
    # u = n, v = 1: the two paths from (n, 2) to column n+1 weigh n and n+1
    u, v = parse_expr("n"), parse_expr("1")
    for n in range(4):
        assert sd.coeff_recurrence(n, 2, 1, u, v) == 2 * n + 1 == sd.coeff_enum(n, 2, 1, u, v)


@pytest.mark.parametrize("seed,cls", list(enumerate(DependenceClass)))
def test_recurrence_matches_enumeration(seed, cls):
    rng = rng_for(seed)
    uvars = {"UN_VN": ("n",), "UK_VK": ("k",), "UK_VN": ("k",), "UNK_VK": ("n", "k")}[cls.name]
    vvars = {"UN_VN": ("n",), "UK_VK": ("k",), "UK_VN": ("n",), "UNK_VK": ("k",)}[cls.name]
    for _ in range(4):
        u, v = random_expr(rng, uvars), random_expr(rng, vvars)
        for n in range(3):
            C = sd.coeff_triangle(n, 7, u, v, cls)
            for k in range(8):
                for l in range(k + 1):
                    assert C[k][l] == sd.coeff_enum(n, k, l, u, v)


# reconstruction and transpose --------------------------------------------------


def test_reconstruct_delta():
    final = build_table(DELTA, 8).final_sequence()
    t = build_table(DELTA, 8)
    for n in range(5):
        for k in range(8 - n + 1):
            assert sd.reconstruct_from_final(n, k, final, DELTA.u, DELTA.v) == t.cell(n, k)


@given(st.integers(0, 100_000))
@settings(max_examples=15, deadline=None)
def test_reconstruct_random(seed):
    rng = rng_for(seed)
    u, v = random_expr(rng), nonvanishing_expr(rng)
    init = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(8)]
    t = build_table(SeidelSpec(u, v, sd.sequence_from_list(init)), 7)
    final = t.final_sequence()
    for n in range(8):
        for k in range(8 - n):
            assert sd.reconstruct_from_final(n, k, final, u, v) == t.cell(n, k)


def test_reconstruct_errors():
    final = build_table(DELTA, 4).final_sequence()
    with pytest.raises(InsufficientData):
        sd.reconstruct_from_final(3, 3, final, DELTA.u, DELTA.v)
    with pytest.raises(DivisionByZero):
        sd.reconstruct_from_final(2, 0, final, DELTA.u, parse_expr("n-1"))


def test_transpose_delta_table():
    t = build_table(DELTA, 6)
    tt = build_table(sd.transpose_spec(DELTA, t.final_sequence()), 6)
    assert tt.rows == t.transposed_rows()


def test_transpose_associated_matrices_are_inverse():
    t = build_table(DELTA, 8)
    T = sd.transpose_spec(DELTA, t.final_sequence())
    assert (sd.associated_matrix(DELTA, N=8) @ sd.associated_matrix(T, N=8)).is_identity()


@given(st.integers(0, 100_000))
@settings(max_examples=15, deadline=None)
def test_transpose_is_involution(seed):
    rng = rng_for(seed)
    spec = SeidelSpec(random_expr(rng), nonvanishing_expr(rng))
    t = build_table(spec, 6)
    T = sd.transpose_spec(spec, t.final_sequence())
    t2 = build_table(T, 6)
    assert t2.rows == t.transposed_rows()
    back = build_table(sd.transpose_spec(T, t2.final_sequence()), 6)
    assert back.rows == t.rows


def test_transpose_rejects_vanishing_v():
    spec = SeidelSpec.parse("1", "n-2")
    with pytest.raises(DivisionByZero):
        sd.transpose_spec(spec, [1] * 6)


@given(st.integers(0, 100_000), st.fractions(-3, 3, max_denominator=4))
@settings(max_examples=20, deadline=None)
def test_table_is_linear_in_initial_sequence(seed, c):
    rng = rng_for(seed)
    u, v = random_expr(rng), random_expr(rng)
    a = [F(rng.randint(-4, 4)) for _ in range(7)]
    b = [F(rng.randint(-4, 4)) for _ in range(7)]
    ta = build_table(SeidelSpec(u, v, sd.sequence_from_list(a)), 6)
    tb = build_table(SeidelSpec(u, v, sd.sequence_from_list(b)), 6)
    tab = build_table(SeidelSpec(u, v, sd.sequence_from_list([x + c * y for x, y in zip(a, b)])), 6)
    for k, row in enumerate(tab.rows):
        assert list(row) == [x + c * y for x, y in zip(ta.rows[k], tb.rows[k])]
