import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsqcipher.errors import (
    ColViolation,
    DimensionMismatch,
    EmptyKeyBlock,
    OrderTooSmall,
    RowViolation,
)
from lsqcipher.latin import (
    Quasigroup,
    fold_left_div,
    fold_mul,
    generate_latin,
    validate_latin,
)

from conftest import cyclic_table


def qg(n):
    return Quasigroup(validate_latin(cyclic_table(n)))


class TestValidate:
    def test_z2_ok(self):
        sq = validate_latin([[0, 1], [1, 0]])
        assert sq.order == 2

    def test_z3_ok(self):
        assert validate_latin(cyclic_table(3)).order == 3

    def test_column_violation(self):
        with pytest.raises(ColViolation) as exc:
            validate_latin([[0, 1], [0, 1]])
        assert exc.value.col == 0
        assert exc.value.symbol == 0

    def test_row_violation(self):
        with pytest.raises(RowViolation) as exc:
            validate_latin([[0, 0], [1, 1]])
        assert exc.value.row == 0

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            validate_latin([[0, 1, 2], [1, 2, 0]])

    def test_out_of_range_entry(self):
        with pytest.raises(DimensionMismatch):
            validate_latin([[0, 2], [2, 0]])

    def test_order_one_rejected(self):
        with pytest.raises(OrderTooSmall):
            validate_latin([[0]])


class TestGenerate:
    def test_identity_isotopy_is_cyclic(self):
        ident = list(range(3))
        sq = generate_latin(3, b"S", _perms=(ident, ident, ident))
        assert sq.entries.tolist() == cyclic_table(3)

    def test_big_order_is_latin(self):
        sq = generate_latin(256, b"S")
        validate_latin(sq.entries)

    def test_deterministic(self):
        a = generate_latin(256, b"S")
        b = generate_latin(256, b"S")
        assert a == b

    def test_seed_changes_table(self):
        assert generate_latin(16, b"a") != generate_latin(16, b"b")

    def test_order_too_small(self):
        with pytest.raises(OrderTooSmall):
            generate_latin(1, b"S")

    @pytest.mark.parametrize("steps", [1, 17, 100])
    def test_jm_walk_stays_latin_and_deterministic(self, steps):
        sq = generate_latin(7, b"walk", walk_steps=steps)
        validate_latin(sq.entries)
        assert sq == generate_latin(7, b"walk", walk_steps=steps)

    def test_jm_walk_moves_somewhere(self):
        assert generate_latin(7, b"walk", walk_steps=100) != generate_latin(7, b"walk")


class TestOperations:
    def test_mul_derived(self):
        assert qg(3).mul(2, 1) == 0  # (2+1) mod 3

    def test_mul_identity_row(self):
        q = qg(3)
        assert [q.mul(0, y) for y in range(3)] == [0, 1, 2]

    def test_mul_row_is_permutation(self):
        q = Quasigroup(generate_latin(9, b"row"))
        for x in range(9):
            assert sorted(q.mul(x, y) for y in range(9)) == list(range(9))

    def test_left_div_derived(self):
        assert qg(3).left_div(2, 0) == 1  # (0-2) mod 3

    def test_right_div_derived(self):
        assert qg(3).right_div(0, 2) == 1  # (0-2) mod 3

    @pytest.mark.parametrize("n", range(2, 17))
    def test_division_identities_exhaustive(self, n):
        q = Quasigroup(generate_latin(n, b"p7"))
        for x in range(n):
            for y in range(n):
                assert q.left_div(x, q.mul(x, y)) == y
                assert q.mul(x, q.left_div(x, y)) == y

    def test_division_identities_sampled_large(self, key256, rng):
        q = key256.quasigroup()
        xs = rng.integers(0, 256, 10_000)
        ys = rng.integers(0, 256, 10_000)
        for x, y in zip(xs, ys):
            assert q.left_div(x, q.mul(x, y)) == y
            assert q.mul(x, q.left_div(x, y)) == y

    def test_right_div_cancellation(self):
        q = Quasigroup(generate_latin(7, b"rd"))
        for x in range(7):
            for y in range(7):
                assert q.right_div(q.mul(y, x), x) == y
                assert q.mul(q.right_div(y, x), x) == y

    @pytest.mark.parametrize("n", range(2, 17))
    def test_cancellation_exhaustive(self, n):
        q = Quasigroup(generate_latin(n, b"cancel"))
        for a in range(n):
            row = [q.mul(a, b) for b in range(n)]
            col = [q.mul(b, a) for b in range(n)]
            assert len(set(row)) == n
            assert len(set(col)) == n


class TestLeftInverse:
    def test_z3_left_inverse_table(self):
        li = qg(3).left_inverse()
        expected = [[(c - a) % 3 for c in range(3)] for a in range(3)]
        assert li.cayley.entries.tolist() == expected

    def test_z2_self_inverse(self):
        q = qg(2)
        assert q.left_inverse().cayley == q.cayley

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_defining_equation_small(self, n):
        q = Quasigroup(generate_latin(n, b"li"))
        li = q.left_inverse()
        for a in range(n):
            for c in range(n):
                assert q.mul(a, li.mul(a, c)) == c

    @pytest.mark.parametrize("n", range(2, 9))
    def test_double_left_inverse_restores_table(self, n):
        q = Quasigroup(generate_latin(n, b"double"))
        assert q.left_inverse().left_inverse().cayley == q.cayley


class TestFolds:
    def test_fold_mul_derived(self, z3_q):
        # 2*1=0, 0*0=0, 1*0=1
        assert fold_mul(z3_q, (2, 0, 1), 1) == 1

    def test_fold_left_div_derived(self, z3_q):
        # 1\1=0, 0\0=0, 2\0=1
        assert fold_left_div(z3_q, (2, 0, 1), 1) == 1

    def test_single_factor_is_mul(self):
        q = Quasigroup(generate_latin(11, b"one"))
        for k in range(11):
            for p in range(11):
                assert fold_mul(q, (k,), p) == q.mul(k, p)

    def test_empty_block_rejected(self, z3_q):
        with pytest.raises(EmptyKeyBlock):
            fold_mul(z3_q, (), 0)
        with pytest.raises(EmptyKeyBlock):
            fold_left_div(z3_q, (), 0)

    def test_fold_matches_stepwise_loop(self, rng):
        q = Quasigroup(generate_latin(5, b"loop"))
        for _ in range(200):
            ks = rng.integers(0, 5, rng.integers(1, 9)).tolist()
            p = int(rng.integers(0, 5))
            acc = p
            for k in ks:
                acc = q.mul(k, acc)
            assert fold_mul(q, ks, p) == acc

    @pytest.mark.parametrize("n", [2, 3, 5, 256])
    def test_chain_roundtrip(self, n, rng):
        q = Quasigroup(generate_latin(n, b"chain"))
        for _ in range(100):
            ks = rng.integers(0, n, rng.integers(1, 33)).tolist()
            p = int(rng.integers(0, n))
            assert fold_left_div(q, ks, fold_mul(q, ks, p)) == p

    def test_fold_bijective_in_p(self):
        q = Quasigroup(generate_latin(5, b"bij"))
        for ks in [(0,), (1, 2), (4, 4, 3)]:
            images = {fold_mul(q, ks, p) for p in range(5)}
            assert images == set(range(5))


@given(n=st.integers(2, 12), seed=st.binary(max_size=8), data=st.data())
@settings(max_examples=60, deadline=None)
def test_chain_inversion_property(n, seed, data):
    q = Quasigroup(generate_latin(n, seed))
    ks = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=16))
    p = data.draw(st.integers(0, n - 1))
    c = fold_mul(q, ks, p)
    assert fold_left_div(q, ks, c) == p


@given(n=st.integers(2, 12), seed=st.binary(max_size=8))
@settings(max_examples=40, deadline=None)
def test_generated_square_always_latin(n, seed):
    validate_latin(generate_latin(n, seed).entries)
