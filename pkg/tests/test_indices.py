import numpy as np
import pytest

from qfermat import indices
from qfermat.indices import (
    CarryVector,
    MultiIndex,
    complement,
    enumerate_index_set,
    index_add,
    weight,
    weight_histogram,
)

# ---------------------------------------------------------
# enumeration of the index set
# ---------------------------------------------------------


def test_index_set_size_and_membership():
    idx = enumerate_index_set()
    assert len(idx) == 625
    for a in idx:
        assert len(a) == 5
        assert all(0 <= d <= 4 for d in a)
        assert sum(a) % 5 == 0
    # no duplicates
    assert len({tuple(a) for a in idx}) == 625


def test_index_set_is_lex_sorted():
    idx = enumerate_index_set()
    tuples = [tuple(a) for a in idx]
    assert tuples == sorted(tuples)
    assert tuples[0] == (0, 0, 0, 0, 0)
    assert tuples[-1] == (4, 4, 4, 4, 4)


def test_weight_histogram_frozen_values():
    assert weight_histogram() == (1, 121, 381, 121, 1)
    # recount from scratch
    counts = [0] * 5
    for a in enumerate_index_set():
        counts[weight(a)] += 1
    assert tuple(counts) == (1, 121, 381, 121, 1)


# ---------------------------------------------------------
# addition with carries
# ---------------------------------------------------------


def test_add_with_zero_is_identity():
    zero = (0, 0, 0, 0, 0)
    for a in enumerate_index_set():
        s, c = index_add(a, zero)
        assert s == a
        assert c.count == 0


def test_top_plus_top_carries_everywhere():
    s, c = index_add((4, 4, 4, 4, 4), (4, 4, 4, 4, 4))
    assert tuple(s) == (3, 3, 3, 3, 3)
    assert c.count == 5
    assert c.positions() == (0, 1, 2, 3, 4)


def test_complement_pairs_never_carry():
    for a in enumerate_index_set():
        b = complement(a)
        s, c = index_add(a, b)
        assert tuple(s) == (4, 4, 4, 4, 4)
        assert c.count == 0


def test_carry_count_equals_weight_drop_all_pairs():
    # #carries = |a| + |b| - |a+b|, checked over all 625^2 pairs via arrays
    t = indices.tables()
    wa = t.weight[:, None]
    wb = t.weight[None, :]
    ws = t.weight[t.sum_idx]
    assert (t.ncarry == wa + wb - ws).all()


def test_sum_closure_and_commutativity_arrays():
    t = indices.tables()
    assert t.sum_idx.shape == (625, 625)
    assert (t.sum_idx == t.sum_idx.T).all()
    assert (t.carry == np.swapaxes(t.carry, 0, 1)).all()
    # componentwise: digits of the sum match (a_i + b_i) mod 5
    digits = t.idx
    for trial_a in (0, 17, 311, 624):
        got = digits[t.sum_idx[trial_a]]
        assert (got == (digits[trial_a] + digits) % 5).all()


def test_carry_associativity_sampled():
    # multiset of carries agrees between (a+b)+c and a+(b+c)
    rng = np.random.default_rng(501)
    t = indices.tables()
    for _ in range(300):
        a, b, c = (int(x) for x in rng.integers(0, 625, size=3))
        ab = int(t.sum_idx[a, b])
        bc = int(t.sum_idx[b, c])
        left = sorted(t.carry[a, b].tolist() + t.carry[ab, c].tolist())
        right = sorted(t.carry[b, c].tolist() + t.carry[a, bc].tolist())
        assert left == right
        assert t.sum_idx[ab, c] == t.sum_idx[a, bc]


def test_negation_is_additive_inverse():
    t = indices.tables()
    for pos in range(625):
        npos = int(t.neg[pos])
        assert t.sum_idx[pos, npos] == 0


# ---------------------------------------------------------
# MultiIndex and CarryVector types
# ---------------------------------------------------------


def test_multiindex_validation():
    with pytest.raises(Exception):
        MultiIndex((1, 2, 3))
    with pytest.raises(Exception):
        MultiIndex((5, 0, 0, 0, 0))
    with pytest.raises(Exception):
        MultiIndex((1, 0, 0, 0, 0))  # digit sum not divisible by 5


def test_multiindex_ordering_and_hash():
    a = MultiIndex((0, 0, 1, 1, 3))
    b = MultiIndex((0, 1, 0, 1, 3))
    assert a < b
    assert a == MultiIndex((0, 0, 1, 1, 3))
    assert hash(a) == hash(MultiIndex((0, 0, 1, 1, 3)))
    assert list(a) == [0, 0, 1, 1, 3]
    assert a.to_json() == [0, 0, 1, 1, 3]


def test_weight_additivity_with_carries():
    a = MultiIndex((4, 4, 2, 0, 0))
    b = MultiIndex((2, 2, 4, 1, 1))
    s, c = index_add(a, b)
    assert weight(a) + weight(b) == weight(s) + c.count


def test_carryvector_flags_and_positions():
    c = CarryVector((True, False, False, True, False))
    assert c.count == 2
    assert c.positions() == (0, 3)
    assert c[0] and not c[1]
    assert c == CarryVector((1, 0, 0, 1, 0))
    assert c.to_json() == [True, False, False, True, False]


def test_enumerate_returns_fresh_list():
    first = enumerate_index_set()
    second = enumerate_index_set()
    assert first == second
    first.pop()
    assert len(enumerate_index_set()) == 625


def test_shared_tables_are_readonly():
    t = indices.tables()
    with pytest.raises(ValueError):
        t.sum_idx[0, 0] = 1
    with pytest.raises(ValueError):
        t.carry[0, 0, 0] = True
