from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import origamis, singular_origamis
from oracles import in_hol
from square_tiled import Origami, canonical_key, is_reduced, origami_from_key
from square_tiled.census import census_keys
from square_tiled.formulas import lr_orbit_sizes
from square_tiled.sl2z import (
    NotReduced,
    OrbitTooLarge,
    act_S,
    act_S_inv,
    act_T,
    apply_word,
    horizontal_reduction,
    is_characteristic,
    is_symmetry_torus,
    matmul,
    orbit,
    orbit_keys,
    orbit_partition,
    veech_index,
    word_matrix,
)
from square_tiled.topology import Stratum, stratum


def _mat_vec(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


class TestGenerators:
    def test_matrices(self):
        assert word_matrix("T") == ((1, 1), (0, 1))
        assert word_matrix("S") == ((0, -1), (1, 0))
        assert word_matrix("SSSS") == ((1, 0), (0, 1))
        assert word_matrix("Tt") == ((1, 0), (0, 1))
        assert matmul(word_matrix("S"), word_matrix("s")) == ((1, 0), (0, 1))

    def test_st_relation(self):
        # (ST)^3 = S^2 = -I in SL(2,Z)
        assert word_matrix("ST" * 3) == word_matrix("SS") == ((-1, 0), (0, -1))

    @given(origamis(1, 8))
    def test_s_has_order_four_exactly(self, o):
        assert act_S(act_S(act_S(act_S(o)))) == o
        assert act_S_inv(act_S(o)) == o

    @given(origamis(1, 8), st.integers(-4, 4))
    def test_t_powers(self, o, k):
        step = o
        for _ in range(abs(k)):
            step = act_T(step, 1 if k > 0 else -1)
        assert act_T(o, k) == step

    @given(origamis(1, 6))
    def test_minus_identity_acts_by_relabelling_or_not_consistently(self, o):
        # (ST)^3 and S^2 are the same matrix, so they give the same surface
        assert canonical_key(apply_word(o, "ST" * 3)) == canonical_key(apply_word(o, "SS"))

    def test_word_application_order(self, surface):
        o = surface("swiss_cross")
        assert apply_word(o, "TS") == act_T(act_S(o))

    def test_shear_keeps_horizontal_gluing(self, surface):
        o = surface("l_shape_5")
        assert act_T(o).sigma == o.sigma


class TestHolonomyEquivariance:
    @given(singular_origamis(2, 7), st.text("TtSs", min_size=1, max_size=5), st.integers(-3, 3), st.integers(-3, 3))
    def test_hol_of_image_is_image_of_hol(self, o, word, a, b):
        if a == 0 and b == 0:
            return
        m = word_matrix(word)
        img = apply_word(o, word)
        ma, mb = _mat_vec(m, (a, b))
        assert in_hol(o._r, o._u, a, b) == in_hol(img._r, img._u, ma, mb)

    @pytest.mark.parametrize("v", [(3, 5), (-4, 7), (0, -3), (6, 0), (-2, -2), (5, -8), (1, 0)])
    def test_horizontal_reduction(self, v):
        steps, g = horizontal_reduction(*v)
        a, b = v
        for op, k in steps:
            if op == "T":
                a += k * b
            else:
                a, b = -b, a
        assert b == 0 and abs(a) == g

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            horizontal_reduction(0, 0)


class TestOrbits:
    @pytest.mark.parametrize(
        "name,size",
        [("l_shape_6", 36), ("l_shape_5", 18), ("four_square_holonomy", 6), ("swiss_cross", 9), ("eierlegende_wollmilchsau", 1), ("torus", 1)],
    )
    def test_named_orbit_sizes(self, surface, name, size):
        assert veech_index(surface(name)) == size

    def test_veech_index_needs_reduced(self):
        with pytest.raises(NotReduced):
            veech_index(Origami.from_cycles("(1,2)", "", 2))

    def test_orbit_cap(self, surface):
        with pytest.raises(OrbitTooLarge) as err:
            orbit(surface("l_shape_6"), cap=5)
        assert len(err.value.partial) == 5

    @given(origamis(2, 6))
    def test_orbit_is_independent_of_the_starting_point(self, o):
        orb = orbit(o)
        img = apply_word(o, "TSt")
        assert orbit(img).representatives == orb.representatives

    @given(origamis(2, 6))
    def test_orbit_stays_in_stratum(self, o):
        st_ = stratum(o)
        for key in orbit_keys(o):
            assert stratum(origami_from_key(key)) == st_

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_reduced_h2_orbits_match_closed_forms(self, n):
        keys = [k for k in census_keys(n) if stratum(origami_from_key(k)) == Stratum((2,))]
        keys = [k for k in keys if is_reduced(origami_from_key(k))]
        sizes = sorted(Counter(orbit_partition(keys).values()).values(), reverse=True)
        assert tuple(sizes) == lr_orbit_sizes(n)

    def test_partition_rejects_open_collections(self, surface):
        with pytest.raises(ValueError):
            orbit_partition([canonical_key(surface("swiss_cross"))])

    def test_partition_matches_bfs(self):
        keys = census_keys(5)
        part = orbit_partition(keys)
        for k in keys[::7]:
            same = {x for x in keys if part[x] == part[k]}
            assert same == set(orbit(origami_from_key(k)).representatives)


class TestSymmetry:
    def test_wollmilchsau(self, surface):
        o = surface("eierlegende_wollmilchsau")
        assert is_symmetry_torus(o)
        assert is_characteristic(o)

    def test_ornithorynque_is_symmetric_but_not_normal(self, surface):
        o = surface("ornithorynque")
        assert is_symmetry_torus(o)
        assert not is_characteristic(o)

    def test_non_reduced_cover_is_never_symmetric(self, surface):
        # fixed by the whole group up to relabelling, but not reduced
        o = surface("klein_four_cover")
        assert not is_symmetry_torus(o)
        assert not is_characteristic(o)

    def test_torus(self):
        assert is_symmetry_torus(Origami.torus())
        assert is_characteristic(Origami.torus())

    @given(origamis(1, 7))
    def test_cross_check_never_disagrees(self, o):
        is_characteristic(o, cross_check=True)
