import numpy as np
import pytest

from fourgroup.errors import ValidationError
from fourgroup.actions import (
    ActionSpec,
    Automorphism,
    abstract_acting_group,
    build_action,
    check_product_decomposition,
    fixed_points,
    minimal_invariant_closure,
    quotient_action,
    validate_action,
)
from fourgroup.groups import (
    cyclic_group,
    direct_product,
    generated_subgroup,
    trivial_subgroup,
    whole_group,
)
from tests.test_groups import heisenberg


def heis_perm(p, fn):
    """Permutation of Heisenberg indices from a map on exponent triples."""
    n = p**3
    perm = np.empty(n, dtype=np.int64)
    for idx in range(n):
        a, b, c = idx // (p * p), (idx // p) % p, idx % p
        a2, b2, c2 = fn(a, b, c)
        perm[idx] = ((a2 % p) * p + (b2 % p)) * p + (c2 % p)
    return perm


def heis_v_spec(p):
    return ActionSpec(
        "V",
        {
            "v1": heis_perm(p, lambda a, b, c: (a, -b, -c)),
            "v2": heis_perm(p, lambda a, b, c: (-a, b, -c)),
        },
    )


def heis_d8_spec(p):
    images = dict(heis_v_spec(p).images)
    images["alpha"] = heis_perm(p, lambda a, b, c: (b, a, -c - a * b))
    return ActionSpec("D8", images)


def test_abstract_acting_groups():
    v = abstract_acting_group("V")
    d8 = abstract_acting_group("D8")
    s4 = abstract_acting_group("S4")
    assert (v.order, d8.order, s4.order) == (4, 8, 24)
    for grp in (v, d8, s4):
        i1, i2, i3 = grp.v_indices
        assert grp.table[i1, i2] == i3
        assert grp.table[i1, i1] == 0
    # v1 conjugated by alpha is v2
    for grp in (d8, s4):
        a = grp.generators["alpha"]
        i1, i2, _ = grp.v_indices
        conj = grp.table[grp.table[grp.inverse[a], i1], a]
        assert conj == i2
    # beta has order 3 in S4
    b = s4.generators["beta"]
    assert s4.table[s4.table[b, b], b] == 0


def test_spec_requires_right_generators():
    g = heisenberg(3)
    ident = np.arange(27)
    with pytest.raises(ValidationError, match="v3"):
        ActionSpec("V", {"v1": ident, "v2": ident, "v3": ident})
    with pytest.raises(ValidationError, match="missing"):
        ActionSpec("D8", {"v1": ident, "v2": ident})
    with pytest.raises(ValidationError, match="acting type"):
        ActionSpec("Q8", {"v1": ident})


def test_identity_maps_give_valid_but_not_fpf_action():
    g = heisenberg(3)
    ident = np.arange(27)
    report = validate_action(g, ActionSpec("V", {"v1": ident, "v2": ident}))
    assert report.well_defined
    assert report.relations_hold
    assert not report.fpf_on_V


def test_heisenberg_v_action_all_checks_pass():
    g = heisenberg(3)
    report = validate_action(g, heis_v_spec(3))
    assert report.well_defined
    assert report.relations_hold
    assert report.coprime  # 27 against 4
    assert report.fpf_on_V


def test_heisenberg_d8_action_relations():
    g = heisenberg(3)
    action = build_action(g, heis_d8_spec(3))
    alpha = action.perm("alpha")
    assert (alpha[alpha] == np.arange(27)).all()
    # v1 conjugated by alpha equals v2 as a permutation of G
    v1, v2 = action.perm("v1"), action.perm("v2")
    assert (alpha[v1[alpha]] == v2).all()


def test_malformed_permutation_is_reported():
    g = heisenberg(3)
    bad = np.zeros(27, dtype=np.int64)
    report = validate_action(g, ActionSpec("V", {"v1": bad, "v2": np.arange(27)}))
    assert not report.well_defined
    assert "bijection" in report.details


def test_non_multiplicative_map_is_reported():
    g = heisenberg(3)
    perm = np.arange(27)
    perm[[1, 2]] = [2, 1]  # swap z and z^2 only: not multiplicative
    report = validate_action(g, ActionSpec("V", {"v1": perm, "v2": np.arange(27)}))
    assert not report.well_defined or not report.relations_hold


def test_fixed_points_examples():
    g = heisenberg(3)
    action = build_action(g, heis_d8_spec(3))
    assert fixed_points(g, [action.automorphism("v1")]).order == 3
    # alpha fixes exactly {1, xyz, x^2 y^2 z}
    c_alpha = fixed_points(g, [action.automorphism("alpha")])
    assert set(c_alpha.members) == {0, 13, 25}
    both = fixed_points(g, [action.automorphism("v1"), action.automorphism("v2")])
    assert both.is_trivial()
    identity = Automorphism(g, np.arange(27))
    assert fixed_points(g, [identity]).order == 27


def test_fixed_points_closure_is_exhaustively_a_subgroup():
    g = heisenberg(3)
    action = build_action(g, heis_d8_spec(3))
    for name in ("v1", "v2", "v3", "alpha"):
        sub = fixed_points(g, [action.automorphism(name)])
        mem = set(sub.members)
        for a in mem:
            assert g.inv(a) in mem
            for b in mem:
                assert g.mul(a, b) in mem


def test_action_maps_respect_word_composition():
    g = heisenberg(3)
    action = build_action(g, heis_d8_spec(3))
    acting = action.acting
    for a in range(acting.order):
        for b in range(acting.order):
            c = acting.table[a, b]
            assert (action.maps[c] == action.maps[b][action.maps[a]]).all()


def test_quotient_action_by_trivial_subgroup():
    g = heisenberg(3)
    action = build_action(g, heis_v_spec(3))
    res = quotient_action(g, trivial_subgroup(g), action)
    assert res.quotient.order == 27
    assert res.centralizer_formula_holds is True
    for name in ("v1", "v2"):
        assert (res.induced_action.perm(name)[res.projection] == res.projection[action.perm(name)]).all()


def test_quotient_action_heisenberg_by_center():
    g = heisenberg(3)
    action = build_action(g, heis_v_spec(3))
    z = generated_subgroup(g, [1])
    res = quotient_action(g, z, action)
    assert res.quotient.order == 9
    assert res.centralizer_formula_holds is True
    # C_{G/N}(v1) is the image of C_G(v1) = <x>
    x_image = sorted(set(int(res.projection[m]) for m in generated_subgroup(g, [9]).members))
    acting = res.induced_action.acting
    fixed = res.induced_action.fixed_members([acting.v_indices[0]])
    assert sorted(int(v) for v in fixed) == x_image


def test_quotient_action_non_coprime_reports_not_applicable():
    klein = direct_product(cyclic_group(2), cyclic_group(2))
    ident = np.arange(4)
    action = build_action(klein, ActionSpec("V", {"v1": ident, "v2": ident}))
    assert not action.is_coprime()
    res = quotient_action(klein, trivial_subgroup(klein), action)
    assert res.centralizer_formula_holds is None


def test_centralizer_formula_for_every_abstract_element():
    g = heisenberg(3)
    action = build_action(g, heis_d8_spec(3))
    z = generated_subgroup(g, [1])
    res = quotient_action(g, z, action)
    assert res.centralizer_formula_holds is True


def test_minimal_invariant_closure_degenerate_cases():
    g = heisenberg(3)
    action = build_action(g, heis_d8_spec(3))
    whole = whole_group(g)
    assert minimal_invariant_closure(whole, whole, action).order == 27
    assert minimal_invariant_closure(whole, trivial_subgroup(g), action).is_trivial()
    with pytest.raises(ValidationError, match="inside"):
        minimal_invariant_closure(trivial_subgroup(g), whole, action)


def test_product_decomposition_on_heisenberg():
    g = heisenberg(3)
    action = build_action(g, heis_d8_spec(3))
    res = check_product_decomposition(whole_group(g), action)
    assert res.holds
    assert res.product_order == 27
    trivial_res = check_product_decomposition(trivial_subgroup(g), action)
    assert trivial_res.holds


def test_product_decomposition_needs_alpha():
    g = heisenberg(3)
    action = build_action(g, heis_v_spec(3))
    with pytest.raises(ValidationError, match="D8 or S4"):
        check_product_decomposition(whole_group(g), action)


def test_fpf_v_fixture_has_odd_order():
    g = heisenberg(3)
    report = validate_action(g, heis_v_spec(3))
    assert report.fpf_on_V
    assert g.order % 2 == 1
