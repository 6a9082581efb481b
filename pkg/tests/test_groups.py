import math

import numpy as np
import pytest

from fourgroup.errors import InputFormatError, ValidationError
from fourgroup.groups import (
    PcPresentation,
    center,
    centralizer_of_set,
    cyclic_group,
    derived_subgroup,
    direct_product,
    exponent,
    from_mult_function,
    from_pc_presentation,
    generated_subgroup,
    group_from_dict,
    group_to_dict,
    is_powerful,
    load_group,
    nilpotency_class,
    pc_generators,
    power_subgroup,
    quotient,
    read_group_file,
    series,
    subgroup_as_group,
    trivial_group,
    whole_group,
    write_group_file,
)


def heisenberg_presentation(p):
    zero = (0,) * 3
    return PcPresentation(
        prime=p,
        ngens=3,
        powers=(zero, zero, zero),
        commutators=((1, 0, (0, 0, p - 1)),),
    )


def heisenberg_table_oracle(p):
    """Independent route: the explicit normal-form product formula."""
    n = p**3

    def enc(a, b, c):
        return (a * p + b) * p + c

    table = [[0] * n for _ in range(n)]
    for a1 in range(p):
        for b1 in range(p):
            for c1 in range(p):
                for a2 in range(p):
                    for b2 in range(p):
                        for c2 in range(p):
                            val = enc((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 - b1 * a2) % p)
                            table[enc(a1, b1, c1)][enc(a2, b2, c2)] = val
    return table


def heisenberg(p=3):
    return from_pc_presentation(heisenberg_presentation(p))


def closure_oracle(table, gens):
    """Naive closure under multiplication, using only raw table lookups."""
    members = set(gens) | {0}
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                c = table[a][b]
                if c not in members:
                    members.add(c)
                    changed = True
    return members


def test_load_trivial_group():
    g = trivial_group()
    assert g.order == 1
    assert g.exponent() == 1


def test_load_c3_cyclic_shift():
    g = load_group([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert g.order == 3
    assert g.exponent() == 3


def test_load_group_rejects_bad_tables():
    with pytest.raises(ValidationError, match="square"):
        load_group([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(ValidationError, match="identity"):
        load_group([[1, 0], [0, 1]])
    with pytest.raises(ValidationError, match="Latin"):
        load_group([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    # Latin square with identity but broken associativity: build one of order 5.
    # Quasigroup from a non-associative Latin square.
    bad = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValidationError, match="associativity fails at triple"):
        load_group(bad)


def test_heisenberg_pc_matches_formula_oracle():
    got = heisenberg(3)
    want = heisenberg_table_oracle(3)
    assert got.order == 27
    assert got.table.astype(int).tolist() == want
    # The oracle table itself passes full validation.
    load_group(want)


def test_from_pc_single_generator_is_cyclic():
    g = from_pc_presentation(PcPresentation(3, 1, ((0,),), ()))
    assert g.order == 3
    assert g.exponent() == 3


def test_from_pc_two_trivial_generators_is_elementary_abelian():
    g = from_pc_presentation(PcPresentation(5, 2, ((0, 0), (0, 0)), ()))
    assert g.order == 25
    assert g.exponent() == 5
    assert g.is_abelian()


def test_from_pc_heisenberg_is_nonabelian_exponent_p():
    g = heisenberg(3)
    assert g.order == 27
    assert not g.is_abelian()
    assert g.exponent() == 3


def test_from_pc_modular_group_order_27():
    # Nontrivial power relation: second generator cubes to the third.
    zero = (0, 0, 0)
    pres = PcPresentation(3, 3, (zero, (0, 0, 1), zero), ((1, 0, (0, 0, 1)),))
    g = from_pc_presentation(pres)
    assert g.order == 27
    assert g.exponent() == 9
    assert not g.is_abelian()
    assert derived_subgroup(g).order == 3
    assert is_powerful(g, 3)


def test_pc_presentation_rejects_bad_words():
    with pytest.raises(ValidationError, match="index >= 1"):
        PcPresentation(3, 2, ((1, 0), (0, 0)), ())
    with pytest.raises(ValidationError, match="j > i"):
        PcPresentation(3, 2, ((0, 0), (0, 0)), ((0, 1, (0, 0)),))


def test_generated_subgroup_examples():
    g = heisenberg(3)
    assert generated_subgroup(g, []).members == (0,)
    x = 9  # exponent vector (1,0,0)
    sub = generated_subgroup(g, [x])
    assert sub.order == 3
    assert set(sub.members) == closure_oracle(g.table.tolist(), [x])
    y = 3  # exponent vector (0,1,0)
    assert generated_subgroup(g, [x, y]).order == 27


def test_generated_subgroup_matches_closure_oracle():
    g = heisenberg(3)
    table = g.table.tolist()
    for gens in ([], [1], [9, 3], [9, 1], [3, 1]):
        assert set(generated_subgroup(g, gens).members) == closure_oracle(table, gens)


def test_series_abelian_cube():
    g = direct_product(cyclic_group(5), direct_product(cyclic_group(5), cyclic_group(5)))
    derived = series(g, "derived")
    assert [s.order for s in derived] == [125, 1]
    assert nilpotency_class(g) == 1


def test_series_heisenberg_lower_central():
    g = heisenberg(3)
    lower = series(g, "lower_central")
    assert [s.order for s in lower] == [27, 3, 1]
    assert nilpotency_class(g) == 2
    z = 1  # exponent vector (0,0,1)
    assert lower[1].members == generated_subgroup(g, [z]).members


def test_series_upper_central_heisenberg():
    g = heisenberg(3)
    upper = series(g, "upper_central")
    assert [s.order for s in upper] == [1, 3, 27]


def test_lower_central_orders_divide():
    for g in (heisenberg(3), cyclic_group(9)):
        lower = series(g, "lower_central")
        for a, b in zip(lower, lower[1:]):
            assert a.order % b.order == 0


def test_power_subgroup_c9():
    g = cyclic_group(9)
    cubes = sorted({g.power(x, 3) for x in range(9)})
    sub = power_subgroup(g, 3)
    assert sub.order == 3
    assert set(sub.members) == closure_oracle(g.table.tolist(), cubes)
    assert power_subgroup(g, g.exponent()).is_trivial()


def test_power_subgroup_heisenberg_trivial():
    g = heisenberg(3)
    cubes = {g.power(x, 3) for x in range(27)}
    assert cubes == {0}
    assert power_subgroup(g, 3).is_trivial()


def test_power_subgroup_nested():
    for g in (cyclic_group(9), heisenberg(3), cyclic_group(15)):
        for e1 in (2, 3):
            for e2 in (2, 3):
                assert power_subgroup(g, e1).contains_subgroup(power_subgroup(g, e1 * e2))


def test_exponent_examples():
    assert exponent(trivial_group()) == 1
    assert exponent(heisenberg(3)) == 3
    assert exponent(cyclic_group(9)) == 9


def test_quotient_heisenberg_by_center():
    g = heisenberg(3)
    z = generated_subgroup(g, [1])
    q, proj = quotient(g, z)
    assert q.order == 9
    assert q.is_abelian()
    assert q.exponent() == 3
    # Projection is a homomorphism.
    for a in range(27):
        for b in range(27):
            assert proj[g.mul(a, b)] == q.mul(int(proj[a]), int(proj[b]))


def test_quotient_trivial_and_whole():
    g = heisenberg(3)
    q, _ = quotient(g, generated_subgroup(g, []))
    assert q.order == 27
    q2, _ = quotient(g, whole_group(g))
    assert q2.order == 1


def test_quotient_requires_normal():
    g = from_mult_function(6, lambda a, b: _s3_mul(a, b))
    sub = generated_subgroup(g, [_S3.index((1, 0, 2))])
    assert not sub.is_normal()
    with pytest.raises(ValidationError, match="normal"):
        quotient(g, sub)


_S3 = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]


def _s3_mul(a, b):
    pa, pb = _S3[a], _S3[b]
    return _S3.index(tuple(pb[pa[i]] for i in range(3)))


def test_exponent_of_quotient_divides():
    g = cyclic_group(9)
    q, _ = quotient(g, power_subgroup(g, 3))
    assert g.exponent() % q.exponent() == 0


def test_centralizer_examples():
    g = heisenberg(3)
    assert centralizer_of_set(g, [0]).order == 27
    x = 9
    cx = centralizer_of_set(g, [x])
    assert cx.order == 9
    oracle = {y for y in range(27) if g.mul(y, x) == g.mul(x, y)}
    assert set(cx.members) == oracle
    assert center(g).order == 3
    assert set(center(g).members) == set(centralizer_of_set(g, range(27)).members)


def test_is_powerful():
    assert is_powerful(cyclic_group(9), 3)
    assert is_powerful(direct_product(cyclic_group(5), cyclic_group(5)), 5)
    assert not is_powerful(heisenberg(3), 3)
    with pytest.raises(ValidationError):
        is_powerful(cyclic_group(15), 3)


def test_powerful_generation_property():
    # For powerful H and e = p^k, H^e equals the group generated by the
    # e-th powers of any fixed generating set.
    cases = [
        (cyclic_group(9), [1], 3),
        (cyclic_group(27), [1], 3),
        (cyclic_group(27), [1], 9),
        (direct_product(cyclic_group(5), cyclic_group(5)), [1, 5], 5),
    ]
    zero = (0, 0, 0)
    m27 = from_pc_presentation(
        PcPresentation(3, 3, (zero, (0, 0, 1), zero), ((1, 0, (0, 0, 1)),))
    )
    cases.append((m27, pc_generators(heisenberg_presentation(3))[:2], 3))
    for g, gens, e in cases:
        p = 3 if g.order % 3 == 0 else 5
        assert is_powerful(g, p)
        assert generated_subgroup(g, gens).order == g.order
        lhs = power_subgroup(g, e)
        rhs = generated_subgroup(g, [g.power(x, e) for x in gens])
        assert lhs.members == rhs.members


def test_nilpotency_criteria_agree():
    for g in (heisenberg(3), cyclic_group(9), trivial_group()):
        lower = series(g, "lower_central")
        upper = series(g, "upper_central")
        assert (lower[-1].order == 1) == (upper[-1].order == g.order)


def test_subgroup_as_group_roundtrip():
    g = heisenberg(3)
    sub = centralizer_of_set(g, [9])
    h, members = subgroup_as_group(sub)
    assert h.order == sub.order
    for i in range(h.order):
        for j in range(h.order):
            assert members[h.mul(i, j)] == g.mul(int(members[i]), int(members[j]))


def test_group_file_roundtrip(tmp_path):
    g = heisenberg(3)
    path = tmp_path / "h27.group.json"
    write_group_file(g, path)
    g2 = read_group_file(path)
    assert g2.order == 27
    assert (g2.table == g.table).all()


def test_group_file_rejects_garbage(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    with pytest.raises(InputFormatError):
        read_group_file(path)
    with pytest.raises(InputFormatError):
        group_from_dict({"order": 2})
    with pytest.raises(InputFormatError):
        group_from_dict({"order": 3, "table": [[0, 1], [1, 0]]})


def test_group_dict_roundtrip_is_bit_exact():
    g = heisenberg(3)
    d = group_to_dict(g)
    g2 = group_from_dict(d)
    assert group_to_dict(g2) == d


def test_element_order_and_power():
    g = cyclic_group(9)
    assert g.element_order(1) == 9
    assert g.element_order(3) == 3
    assert g.power(1, 7) == 7
    assert g.power(2, -1) == g.inv(2)
