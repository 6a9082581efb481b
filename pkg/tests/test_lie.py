import pytest

from fourgroup.errors import ValidationError
from fourgroup.fplinalg import FpMatrix, FpSubspace
from fourgroup.lie import (
    LieAction,
    LieSubspace,
    ad_index,
    center_of,
    component_projections,
    derived_length_of,
    generate,
    lie_centralizer,
    lie_from_dict,
    lie_series,
    lie_to_dict,
    load_lie,
    nilpotency_class_of,
    quotient_algebra,
    read_lie_file,
    restrict_to_subalgebra,
    v_grading,
    write_lie_file,
)


def heisenberg_lie(p=3):
    return load_lie(p, 3, [(0, 1, (0, 0, 1))], labels=("x", "y", "z"))


def sl2_f5():
    # Basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    return load_lie(5, 3, [(0, 1, (3, 0, 0)), (0, 2, (0, 1, 0)), (1, 2, (0, 0, 3))])


def sl2_d8_action(alg):
    v1 = FpMatrix.from_rows(5, [[4, 0, 0], [0, 1, 0], [0, 0, 4]])
    v2 = FpMatrix.from_rows(5, [[0, 0, 1], [0, 4, 0], [1, 0, 0]])
    alpha = FpMatrix.from_rows(5, [[2, 3, 3], [1, 0, 1], [3, 3, 2]])
    return LieAction(alg, "D8", {"v1": v1, "v2": v2, "alpha": alpha})


def abelian_lie(p, n):
    return load_lie(p, n, [])


def test_load_abelian():
    alg = abelian_lie(3, 3)
    assert alg.bracket((1, 2, 0), (0, 1, 1)) == (0, 0, 0)


def test_load_heisenberg_constants():
    alg = heisenberg_lie()
    assert alg.bracket((1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert alg.bracket((0, 1, 0), (1, 0, 0)) == (0, 0, 2)
    assert nilpotency_class_of(alg) == 2


def test_load_rejects_jacobi_violation():
    # [b0,b1] = b2 and [b0,b2] = b0 break Jacobi on the triple (0,1,2).
    with pytest.raises(ValidationError, match=r"Jacobi identity fails on basis triple \(0, ?1, ?2\)"):
        load_lie(3, 3, [(0, 1, (0, 0, 1)), (0, 2, (1, 0, 0))])


def test_load_rejects_bad_pairs():
    with pytest.raises(ValidationError, match="i < j"):
        load_lie(3, 2, [(1, 0, (0, 0))])


def test_generate_examples():
    alg = heisenberg_lie()
    assert generate(alg, [(0, 0, 0)], "ideal").dim == 0
    ideal = generate(alg, [(1, 0, 0)], "ideal")
    assert ideal.dim == 2
    assert ideal.contains_vector((0, 0, 1))
    assert not ideal.contains_vector((0, 1, 0))
    assert generate(alg, [(1, 0, 0), (0, 1, 0)], "subalgebra").dim == 3


def test_generate_ideal_closed_under_all_brackets():
    alg = sl2_f5()
    sub = generate(alg, [(1, 0, 0)], "ideal")
    for u in sub.space.basis.entries:
        for i in range(3):
            basis = [0, 0, 0]
            basis[i] = 1
            assert sub.contains_vector(alg.bracket(u, tuple(basis)))


def test_generate_mode_guards():
    alg = heisenberg_lie()
    with pytest.raises(ValidationError, match="needs an action"):
        generate(alg, [(1, 0, 0)], "invariant_ideal")
    with pytest.raises(ValidationError, match="unknown generate mode"):
        generate(alg, [(1, 0, 0)], "weird")


def test_lie_series_examples():
    abelian = abelian_lie(3, 2)
    _, cls, term = lie_series(abelian, "lower_central")
    assert (cls, term) == (1, True)
    _, dl, _ = lie_series(abelian, "derived")
    assert dl == 1
    heis = heisenberg_lie()
    assert nilpotency_class_of(heis) == 2
    assert derived_length_of(heis) == 2
    sl2 = sl2_f5()
    terms, cls, term = lie_series(sl2, "lower_central")
    assert cls is None and not term
    assert terms[-1].dim == 3
    assert derived_length_of(sl2) is None


def test_ad_index_examples():
    heis = heisenberg_lie()
    assert ad_index(heis, (0, 0, 0)) == 1
    assert ad_index(heis, (1, 0, 0)) == 2
    sl2 = sl2_f5()
    assert ad_index(sl2, (0, 1, 0)) is None
    assert ad_index(sl2, (1, 0, 0)) == 3


def test_ad_index_bound_and_sharpness():
    heis = heisenberg_lie()
    for v in ((1, 0, 0), (1, 1, 0), (0, 0, 1), (2, 1, 1)):
        idx = ad_index(heis, v)
        assert idx is not None and idx <= heis.dim + 1
        if idx > 1:
            assert not heis.ad_matrix(v).power(idx - 1).is_zero()


def test_lie_centralizer_examples():
    heis = heisenberg_lie()
    assert lie_centralizer(heis, [(0, 0, 0)]).dim == 3
    c = center_of(heis)
    assert c.dim == 1
    assert c.contains_vector((0, 0, 1))
    assert lie_centralizer(abelian_lie(5, 2), [(1, 1)]).dim == 2


def test_v_grading_diagonal_signs():
    alg = abelian_lie(3, 3)
    mk = lambda d: FpMatrix.from_rows(3, [[d[0], 0, 0], [0, d[1], 0], [0, 0, d[2]]])
    action = LieAction(alg, "V", {"v1": mk((1, 2, 2)), "v2": mk((2, 1, 2))})
    l1, l2, l3 = v_grading(alg, action)
    assert l1.space.contains_vector((1, 0, 0)) and l1.dim == 1
    assert l2.space.contains_vector((0, 1, 0)) and l2.dim == 1
    assert l3.space.contains_vector((0, 0, 1)) and l3.dim == 1


def test_v_grading_sl2_with_d8():
    alg = sl2_f5()
    action = sl2_d8_action(alg)
    l1, l2, l3 = v_grading(alg, action)
    assert l1.space.contains_vector((0, 1, 0))
    assert l2.space.contains_vector((1, 0, 1))
    assert l3.space.contains_vector((1, 0, 4))


def test_v_grading_rejects_fixed_points():
    alg = abelian_lie(3, 2)
    ident = FpMatrix.identity(3, 2)
    action = LieAction(alg, "V", {"v1": ident, "v2": ident})
    with pytest.raises(ValidationError, match="not fixed point free"):
        v_grading(alg, action)


def test_component_projections_split():
    alg = sl2_f5()
    comps = v_grading(alg, sl2_d8_action(alg))
    x = (2, 1, 3)
    parts = component_projections(alg, comps, x)
    total = tuple((parts[0][k] + parts[1][k] + parts[2][k]) % 5 for k in range(3))
    assert total == x
    for part, comp in zip(parts, comps):
        assert comp.contains_vector(part)


def test_quotient_by_zero_and_by_center():
    heis = heisenberg_lie()
    zero_ideal = generate(heis, [], "ideal")
    q, proj, _ = quotient_algebra(heis, zero_ideal)
    assert q.dim == 3
    assert q.constants == heis.constants
    z_ideal = generate(heis, [(0, 0, 1)], "ideal")
    q2, proj2, _ = quotient_algebra(heis, z_ideal)
    assert q2.dim == 2
    assert nilpotency_class_of(q2) == 1
    # projection is a homomorphism onto the quotient
    for u in ((1, 0, 0), (0, 1, 0), (1, 2, 1)):
        for v in ((0, 1, 0), (1, 1, 1)):
            assert proj2.apply(heis.bracket(u, v)) == q2.bracket(proj2.apply(u), proj2.apply(v))


def test_quotient_by_whole_algebra():
    heis = heisenberg_lie()
    whole = generate(heis, [(1, 0, 0), (0, 1, 0)], "ideal")
    q, _, _ = quotient_algebra(heis, whole)
    assert q.dim == 0


def test_quotient_requires_ideal_flag():
    heis = heisenberg_lie()
    sub = generate(heis, [(1, 0, 0)], "subalgebra")
    with pytest.raises(ValidationError, match="ideal"):
        quotient_algebra(heis, sub)


def test_quotient_with_action():
    alg = sl2_f5()
    action = sl2_d8_action(alg)
    ideal = generate(alg, [], "invariant_ideal", action)
    q, _, qaction = quotient_algebra(alg, ideal, action)
    assert q.dim == 3
    assert qaction is not None
    assert qaction.acting_type == "D8"


def test_restrict_to_subalgebra():
    heis = heisenberg_lie()
    sub = generate(heis, [(1, 0, 0), (0, 0, 1)], "subalgebra")
    small, inclusion, _ = restrict_to_subalgebra(heis, sub)
    assert small.dim == 2
    assert nilpotency_class_of(small) == 1
    assert inclusion.rows == 2


def test_lie_action_relation_guards():
    alg = abelian_lie(3, 2)
    ident = FpMatrix.identity(3, 2)
    shear = FpMatrix.from_rows(3, [[1, 1], [0, 1]])  # order 3, not an involution
    with pytest.raises(ValidationError, match="involution"):
        LieAction(alg, "V", {"v1": shear, "v2": ident})


def test_grading_validation():
    grading = (
        FpSubspace.from_vectors(3, 3, [(1, 0, 0), (0, 1, 0)]),
        FpSubspace.from_vectors(3, 3, [(0, 0, 1)]),
    )
    alg = load_lie(3, 3, [(0, 1, (0, 0, 1))], grading=grading)
    assert alg.grading is not None
    bad_grading = (
        FpSubspace.from_vectors(3, 3, [(1, 0, 0), (0, 0, 1)]),
        FpSubspace.from_vectors(3, 3, [(0, 1, 0)]),
    )
    with pytest.raises(ValidationError, match="grading violated"):
        load_lie(3, 3, [(0, 1, (0, 0, 1))], grading=bad_grading)


def test_lie_file_roundtrip(tmp_path):
    alg = heisenberg_lie()
    alg.grading = (
        FpSubspace.from_vectors(3, 3, [(1, 0, 0), (0, 1, 0)]),
        FpSubspace.from_vectors(3, 3, [(0, 0, 1)]),
    )
    path = tmp_path / "heis.lie.json"
    write_lie_file(alg, path)
    loaded, action = read_lie_file(path)
    assert action is None
    assert loaded.constants == alg.constants
    assert loaded.grading == alg.grading
    assert lie_to_dict(loaded) == lie_to_dict(alg)


def test_lie_file_with_action_roundtrip(tmp_path):
    alg = sl2_f5()
    action = sl2_d8_action(alg)
    path = tmp_path / "sl2.lie.json"
    write_lie_file(alg, path, action)
    loaded, laction = read_lie_file(path)
    assert laction is not None
    assert laction.matrix("alpha") == action.matrix("alpha")
    d = lie_to_dict(alg, action)
    alg2, act2 = lie_from_dict(d)
    assert lie_to_dict(alg2, act2) == d
