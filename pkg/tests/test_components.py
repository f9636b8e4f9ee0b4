"""Component pyramids: the recursion against the closed product formula,
the two e = 5 families redone by hand, and the failure modes."""

import pytest
from hypothesis import given, settings, strategies as st

from cqs.components import (Absent, component_pyramid,
                            deformed_component_family, versal_coordinates)
from cqs.lattice import InvalidEntry, toric_eqs
from cqs.ring import NotDivisible, stname, tname, zname
from cqs.triangle import ColouredTriangle, enumerate_sparse, triangle_data


def perturbed(R, beta, d):
    """z_beta^d + st1 z^{d-1} + ... + st_d, the generic monic factor."""
    out = R.var(zname(beta)) ** d
    for m in range(1, d + 1):
        out = out + R.var(stname(beta, m)) * R.var(zname(beta)) ** (d - m)
    return out


def entry_formula(p, delta, eps):
    """Closed form of an undeformed entry from its own sub-triangle."""
    data = triangle_data(p.triangle.sub(delta, eps))
    out = p.ring.one()
    for beta in range(delta, eps + 1):
        d = (p.a[beta - 2] - data.k[beta]) * data.alpha[beta]
        out = out * p.ring.var(zname(beta)) ** d
    return out


def top_formula(p):
    """Closed form of the deformed top entry."""
    data = triangle_data(p.triangle)
    out = p.ring.one()
    for beta in range(2, p.e):
        f = perturbed(p.ring, beta, p.a[beta - 2] - data.k[beta])
        out = out * f ** data.alpha[beta]
    return out


def fitting_vectors(t):
    """A few continued fractions a with a_beta >= max(2, k_beta)."""
    k = triangle_data(t).k
    base = [max(2, k[b]) for b in sorted(k)]
    yield base
    yield [x + 2 for x in base]
    yield [x + (i % 2) for i, x in enumerate(base)]


# ---------------------------------------------------------------------------
# undeformed pyramids


def test_every_entry_is_a_subtriangle_product():
    for e in range(4, 8):
        for t in enumerate_sparse(e - 4):
            for a in fitting_vectors(t):
                p = component_pyramid(a, t)
                for (delta, eps), val in p.entries.items():
                    assert val == entry_formula(p, delta, eps)


def test_bottom_line_gives_back_the_toric_equations():
    t = ColouredTriangle(2, 5, {(2, 4)})
    a = [3, 2, 4, 2]
    p = component_pyramid(a, t)
    eqs = toric_eqs(a, p.ring)
    for eps in range(2, 6):
        assert p.lhs(eps, eps) - p.entries[eps, eps] == eqs[eps - 2]


def test_undeformed_has_no_parameters():
    t = ColouredTriangle(2, 4, set())
    p = component_pyramid([2, 3, 2], t)
    assert p.params == ()
    assert p.ring.names == ("z1", "z2", "z3", "z4", "z5")


# ---------------------------------------------------------------------------
# the two families over a height-one triangle, written out by hand


def artin_fixture():
    return deformed_component_family([3, 4, 3], ColouredTriangle(2, 4, set()))


def test_artin_family_entries():
    p = artin_fixture()
    R = p.ring
    z = {k: R.var(zname(k)) for k in range(1, 6)}
    t3 = R.var(tname(3))
    Z2, Z3, Z4 = (perturbed(R, b, d) for b, d in [(2, 2), (3, 2), (4, 2)])
    assert p.params == ("t3", "st2_1", "st2_2", "st3_1", "st3_2",
                        "st4_1", "st4_2")
    assert p.entries[2, 2] == Z2 * z[2]
    assert p.entries[3, 3] == (z[3] + t3) * Z3 * z[3]
    assert p.entries[4, 4] == z[4] * Z4
    assert p.entries[2, 3] == Z2 * Z3 * z[3]
    assert p.entries[3, 4] == (z[3] + t3) * Z3 * Z4
    assert p.top == Z2 * Z3 * Z4
    # the only left-hand side seeing a t is the one facing line 3
    assert p.lhs(2, 2) == z[1] * (z[3] + t3)
    assert p.lhs(3, 3) == z[2] * z[4]
    assert p.lhs(2, 4) == z[1] * z[5]


def test_vertex_family_entries():
    p = deformed_component_family([3, 4, 3], ColouredTriangle(2, 4, {(2, 4)}))
    R = p.ring
    z = {k: R.var(zname(k)) for k in range(1, 6)}
    Z2, Z3, Z4 = (perturbed(R, b, d) for b, d in [(2, 1), (3, 3), (4, 1)])
    assert p.params == ("st2_1", "st3_1", "st3_2", "st3_3", "st4_1")
    assert p.entries[2, 2] == Z2 * z[2] ** 2
    assert p.entries[3, 3] == Z3 * z[3]
    assert p.entries[4, 4] == z[4] ** 2 * Z4
    assert p.entries[2, 3] == z[2] * Z2 * Z3
    assert p.entries[3, 4] == Z3 * Z4 * z[4]
    assert p.top == Z2 * Z3 ** 2 * Z4
    # alpha_3 > 1 means no t anywhere in this family
    assert not any(n.startswith("t") for n in p.params if "_" not in n)
    assert p.lhs(2, 2) == z[1] * z[3]


def test_equations_iterator_matches_entries():
    p = artin_fixture()
    eqs = list(p.equations())
    assert len(eqs) == 6
    assert eqs[0] == (p.lhs(2, 2), p.entries[2, 2])
    assert eqs[-1] == (p.lhs(2, 4), p.top)


# ---------------------------------------------------------------------------
# deformed pyramids in general


def test_deformed_top_is_the_product_of_perturbed_powers():
    for e in range(4, 7):
        for t in enumerate_sparse(e - 4):
            for a in fitting_vectors(t):
                p = deformed_component_family(a, t)
                assert p.top == top_formula(p)


def test_zero_parameters_recover_the_undeformed_pyramid():
    for e in range(4, 7):
        for t in enumerate_sparse(e - 4):
            a = next(fitting_vectors(t))
            p = deformed_component_family(a, t)
            u = component_pyramid(a, t)
            zero = {n: 0 for n in p.params}
            for key, val in u.entries.items():
                assert p.entries[key].eval_subst(zero).map_to(u.ring) == val


def test_t_parameters_appear_only_on_interior_free_lines():
    # alpha_beta = 1 on an interior line is what admits a t_beta
    t = ColouredTriangle(2, 6, {(3, 5)})
    p = deformed_component_family([2, 3, 2, 3, 2], t)
    data = triangle_data(t)
    want = {tname(b) for b in range(3, 6) if data.alpha[b] == 1}
    assert {n for n in p.params if not n.startswith("st")} == want


@st.composite
def fitted_family(draw):
    height = draw(st.integers(0, 2))
    t = draw(st.sampled_from(enumerate_sparse(height)))
    k = triangle_data(t).k
    a = [max(2, k[b]) + draw(st.integers(0, 2)) for b in sorted(k)]
    return a, t


@given(fitted_family())
@settings(max_examples=40, deadline=None)
def test_random_families_build_and_close_up(af):
    a, t = af
    p = deformed_component_family(a, t)
    assert p.top == top_formula(p)
    assert set(p.entries) == {(d, e) for d in range(2, p.e)
                              for e in range(d, p.e)}


# ---------------------------------------------------------------------------
# versal coordinates of the bottom line


def test_versal_coordinates_fixtures():
    p = artin_fixture()
    R = p.ring
    assert versal_coordinates(p, 2) == [R.var("st2_1"), R.var("st2_2")]
    assert versal_coordinates(p, 3) == [R.var("st3_1"), R.var("st3_2"),
                                        R.zero()]
    q = deformed_component_family([3, 4, 3], ColouredTriangle(2, 4, {(2, 4)}))
    assert versal_coordinates(q, 2) == [q.ring.var("st2_1"), q.ring.zero()]
    assert versal_coordinates(q, 3) == [q.ring.var(stname(3, m))
                                        for m in (1, 2, 3)]


def test_versal_coordinates_rebuild_the_bottom_entry():
    for e in (5, 6):
        for t in enumerate_sparse(e - 4):
            a = [x + 1 for x in next(fitting_vectors(t))]
            p = deformed_component_family(a, t)
            for eps in range(2, e):
                z = p.ring.var(zname(eps))
                s = z ** (a[eps - 2] - 1)
                for m, c in enumerate(versal_coordinates(p, eps), start=1):
                    s = s + c * z ** (a[eps - 2] - 1 - m)
                assert p.zt(eps) * s == p.entries[eps, eps]


def test_versal_coordinates_range_check():
    with pytest.raises(ValueError):
        versal_coordinates(artin_fixture(), 5)


# ---------------------------------------------------------------------------
# failure modes


def test_component_absent_when_a_line_is_overloaded():
    t = ColouredTriangle(2, 6, {(2, 4), (4, 6), (2, 6)})
    assert triangle_data(t).k[2] == 3
    with pytest.raises(Absent, match="a_2 = 2 < k_2 = 3"):
        component_pyramid([2, 4, 4, 4, 4], t)
    with pytest.raises(Absent):
        deformed_component_family([3, 4, 4, 4, 2], t)
    # equality a_beta = k_beta is fine and just produces no st's there
    p = deformed_component_family([3, 4, 4, 4, 3], t)
    assert not any(n.startswith(stname(2, 1)[:3]) and n.startswith("st2")
                   for n in p.params)


def test_non_sparse_colouring_fails_honestly():
    # an overfull corner dot makes a division inexact
    bad = ColouredTriangle(2, 5, {(2, 5)})
    with pytest.raises(NotDivisible):
        deformed_component_family([3, 3, 3, 3], bad)
    # two incomparable dots divide through, but the result is not a
    # component: the closed product formula breaks down
    crossed = ColouredTriangle(2, 6, {(2, 4), (3, 5)})
    assert not crossed.is_sparse()
    data = triangle_data(crossed, check=False)
    p = component_pyramid([3, 3, 3, 3, 3], crossed)
    would_be = p.ring.one()
    for beta in range(2, 7):
        d = (3 - data.k[beta]) * data.alpha[beta]
        would_be = would_be * p.ring.var(zname(beta)) ** d
    assert p.top != would_be
    q = deformed_component_family([3, 3, 3, 3, 3], crossed)
    deformed_would_be = q.ring.one()
    for beta in range(2, 7):
        f = perturbed(q.ring, beta, 3 - data.k[beta])
        deformed_would_be = deformed_would_be * f ** data.alpha[beta]
    assert q.top != deformed_would_be


def test_input_validation():
    with pytest.raises(InvalidEntry):
        component_pyramid([4], ColouredTriangle(2, 2, set()))
    with pytest.raises(InvalidEntry):
        component_pyramid([2, 1, 2], ColouredTriangle(2, 4, set()))
    with pytest.raises(ValueError, match="lines"):
        component_pyramid([2, 2, 2, 2], ColouredTriangle(2, 4, set()))
