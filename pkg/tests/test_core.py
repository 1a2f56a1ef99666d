import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import origamis, relabellings
from square_tiled import (
    DisconnectedOrigami,
    InvalidPermutation,
    Origami,
    Permutation,
    canonical_form,
    canonical_key,
    commutator,
    compose,
    is_connected,
    origami_from_key,
)
from square_tiled.core import parse_cycles


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(InvalidPermutation):
            Permutation((1, 1, 2))

    def test_rejects_out_of_range_cycle(self):
        with pytest.raises(InvalidPermutation):
            Permutation.from_cycles("(1,4)", 3)

    def test_rejects_repeated_point_in_cycles(self):
        with pytest.raises(InvalidPermutation):
            Permutation.from_cycles("(1,2)(2,3)", 3)

    def test_cycle_round_trip(self):
        p = Permutation.from_cycles("(1,3,5)(2,4)", 6)
        assert p.images == (3, 4, 5, 2, 1, 6)
        assert p.cycle_string() == "(1,3,5)(2,4)"
        assert p.cycle_type() == [3, 2, 1]

    def test_identity_prints_as_empty_cycle(self):
        assert Permutation.identity(3).cycle_string() == "()"
        assert Permutation.identity(3).is_identity()

    def test_compose_applies_right_factor_first(self):
        a = Permutation.from_cycles("(1,2)", 3)
        b = Permutation.from_cycles("(2,3)", 3)
        # b first: 2 -> 3 -> 3 ; a first would give 2 -> 1 -> 1
        assert compose(a, b)(2) == 3
        assert compose(b, a)(2) == 1

    def test_inverse(self):
        p = Permutation.from_cycles("(1,2,3,4)", 5)
        assert compose(p, p.inverse()).is_identity()

    def test_parse_cycles_rejects_garbage(self):
        with pytest.raises(InvalidPermutation):
            parse_cycles("(1,2")
        assert parse_cycles("()") == []

    @given(st.permutations(range(1, 8)))
    def test_cycles_rebuild_the_permutation(self, images):
        p = Permutation(tuple(images))
        assert Permutation.from_cycles(p.cycles(), p.n) == p


class TestOrigami:
    def test_disconnected_pair_is_rejected(self):
        with pytest.raises(DisconnectedOrigami):
            Origami.from_cycles("(1,2)", "(1,2)", 3)

    def test_connectivity_helper(self):
        assert is_connected(Permutation.from_cycles("(1,2)", 2), Permutation.identity(2))
        assert not is_connected(Permutation.identity(2), Permutation.identity(2))

    def test_size_mismatch(self):
        with pytest.raises(InvalidPermutation):
            Origami(Permutation.identity(2), Permutation.identity(3))

    def test_commutator_of_l_shape(self, surface):
        c = commutator(surface("l_shape_5"))
        assert sorted(c.cycle_type()) == [1, 1, 3]

    def test_str_uses_cycle_notation(self, surface):
        assert str(surface("four_square_holonomy")) == "(1,2)(3,4)|(2,3)"


class TestCanonicalKey:
    def test_torus(self):
        assert canonical_key(Origami.torus()) == (1, 1, 1)

    def test_key_layout(self, surface):
        key = canonical_key(surface("swiss_cross"))
        assert key[0] == 5 and len(key) == 11

    def test_bfs_base_gets_label_one(self, surface):
        # the least key always starts from a square labelled 1 whose right
        # neighbour is labelled 1 or 2
        key = canonical_key(surface("l_shape_6"))
        assert key[1] in (1, 2)

    def test_distinguishes_non_isomorphic(self, surface):
        assert canonical_key(surface("l_shape_5")) != canonical_key(surface("swiss_cross"))

    @given(st.data())
    def test_invariant_under_relabelling(self, data):
        o = data.draw(origamis(1, 8))
        g = data.draw(relabellings(o.n))
        assert canonical_key(o.relabel(g)) == canonical_key(o)

    @given(origamis(1, 8))
    def test_canonical_form_is_a_fixed_point(self, o):
        f = canonical_form(o)
        assert canonical_key(f) == canonical_key(o)
        assert origami_from_key(canonical_key(o)) == f

    @given(st.data())
    def test_equal_keys_mean_isomorphic(self, data):
        # two random surfaces with equal keys must be conjugate: the key
        # itself is a relabelling of both
        o = data.draw(origamis(2, 6))
        f = canonical_form(o)
        assert sorted(f.sigma.cycle_type()) == sorted(o.sigma.cycle_type())
        assert sorted(f.tau.cycle_type()) == sorted(o.tau.cycle_type())
