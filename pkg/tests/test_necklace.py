import json

import pytest
from hypothesis import given, strategies as st

from harmonica.combinatorics import Matching, noncrossing_matchings
from harmonica.errors import BadTransition, InvalidInput, NotNoncrossing, WrongLength
from harmonica.necklace import (
    Multiear,
    Necklace,
    enumerate_necklaces,
    is_transition,
    multiears,
    pairwise_basketball_check,
    transition_successors,
    validate_necklace,
)


class TestTransition:
    def test_examples(self):
        m = Matching(((0, 1), (2, 3)))
        assert is_transition(m, Matching(((0, 3), (1, 2))))
        assert not is_transition(m, m)
        assert not is_transition(
            Matching(((0, 1), (2, 3), (4, 5))),
            Matching(((0, 5), (1, 2), (3, 4))),
        )

    def test_ground_set_mismatch(self):
        with pytest.raises(InvalidInput):
            is_transition(Matching(((0, 1),)), Matching(((0, 1), (2, 3))))

    def test_symmetric(self):
        for n in (2, 3, 4):
            for m in noncrossing_matchings(n):
                for s in transition_successors(m):
                    assert is_transition(m, s) and is_transition(s, m)

    def test_successors_change_exactly_two_pairs(self):
        for m in noncrossing_matchings(4):
            for s in transition_successors(m):
                shared = set(m.pairs) & set(s.pairs)
                assert len(shared) == m.size - 2


class TestValidate:
    def test_order_two_both(self):
        for pairs in (((0, 1), (2, 3)), ((0, 3), (1, 2))):
            necklace = validate_necklace((Matching(pairs),))
            assert necklace.order == 2
            assert necklace.closure() == Matching(pairs).shift(-1)

    def test_repeat_is_bad_transition(self):
        m = Matching(((0, 1), (2, 3), (4, 5)))
        with pytest.raises(BadTransition):
            validate_necklace((m, m))

    def test_wrong_length(self):
        with pytest.raises(WrongLength):
            validate_necklace(())
        with pytest.raises(WrongLength):
            validate_necklace((Matching(((0, 1),)),))

    def test_crossing_rejected(self):
        with pytest.raises(NotNoncrossing):
            validate_necklace((Matching(((0, 2), (1, 3))),))

    def test_every_enumerated_necklace_validates(self):
        for n in (2, 3, 4):
            for necklace in enumerate_necklaces(n):
                assert validate_necklace(necklace.matchings) == necklace


class TestEnumeration:
    def test_counts(self):
        assert sum(1 for _ in enumerate_necklaces(2)) == 2
        assert sum(1 for _ in enumerate_necklaces(3)) == 12
        assert sum(1 for _ in enumerate_necklaces(4)) == 128

    def test_distinct(self):
        items = list(enumerate_necklaces(4))
        assert len(set(items)) == len(items)

    def test_order_two_contents(self):
        found = {nk.matchings[0].pairs for nk in enumerate_necklaces(2)}
        assert found == {((0, 1), (2, 3)), ((0, 3), (1, 2))}

    def test_rotational_closure(self):
        # Dropping M_1 and appending the closure matching is again a necklace.
        for n in (2, 3, 4):
            for necklace in enumerate_necklaces(n):
                rotated = necklace.matchings[1:] + (necklace.closure(),)
                validate_necklace(rotated)


class TestMultiears:
    def test_order_two_first(self):
        necklace = validate_necklace((Matching(((0, 1), (2, 3))),))
        found = multiears(necklace)
        assert Multiear(0, 1) in found
        # {0,1} in M_1 and {3,0} in M_2
        assert necklace.closure().has_pair(3, 0)

    def test_order_two_second(self):
        necklace = validate_necklace((Matching(((0, 3), (1, 2))),))
        found = multiears(necklace)
        # Brute scan: {i,i+1} in M_1 and {i-1,i} in M_2.
        chain = necklace.with_closure()
        expected = []
        for i in range(4):
            up = tuple(sorted((i, (i + 1) % 4)))
            down = tuple(sorted(((i - 1) % 4, i)))
            if chain[0].has_pair(*up) and chain[1].has_pair(*down):
                expected.append(Multiear(i, 1))
        assert list(found) == expected
        assert found  # nonempty

    def test_extended_range_adds_nothing(self):
        # The shift closure makes an all-prefix or all-suffix multiear
        # impossible; the strict-reading flag exists but finds nothing new.
        for n in (2, 3):
            for necklace in enumerate_necklaces(n):
                assert multiears(necklace) == multiears(necklace, extended_range=True)

    def test_all_necklaces_have_multiears(self):
        for n in (2, 3, 4):
            for necklace in enumerate_necklaces(n):
                assert multiears(necklace)


class TestPairwise:
    def test_small_orders(self):
        for n in (2, 3):
            for necklace in enumerate_necklaces(n):
                assert pairwise_basketball_check(necklace)

    def test_equal_pair_is_still_basketball(self):
        # interleave(M, M) always validates: every pair crosses exactly its
        # own shifted copy.  A repeated matching is not what breaks the check.
        for m in noncrossing_matchings(4):
            fake = Necklace((m, m))
            assert pairwise_basketball_check(fake)

    def test_negative_control(self):
        # A pair of noncrossing matchings with an excess crossing fails; the
        # check is non-vacuous.
        a = Matching(((0, 9), (1, 8), (2, 3), (4, 7), (5, 6)))
        b = Matching(((0, 1), (2, 9), (3, 4), (5, 6), (7, 8)))
        fake = Necklace((a, b))
        assert not pairwise_basketball_check(fake)


class TestJson:
    def test_round_trip(self):
        for necklace in enumerate_necklaces(3):
            data = json.loads(json.dumps(necklace.to_json_dict()))
            assert Necklace.from_json_dict(data) == necklace

    def test_closure_never_serialized(self):
        necklace = next(iter(enumerate_necklaces(3)))
        assert len(necklace.to_json_dict()["matchings"]) == necklace.order - 1
