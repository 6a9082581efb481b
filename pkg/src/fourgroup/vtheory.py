"""Structure theory of a group with a fixed-point-free four-group action.

The three centralizer components G_i = C_G(v_i) are abelian, intersect
trivially, and cover G as a product set.  Conjugation between distinct
components factors uniquely as y^x = s*t*s, which defines the star
operation; the R_i/T_i subgroups it spans tie the components to the
derived group.  ``verify_v_lemmas`` runs the whole battery exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .actions import ActionSpec, GroupAction, ensure_action
from .groups import (
    FiniteGroup,
    Subgroup,
    center,
    derived_subgroup,
    enumerate_subgroups_within,
    generated_subgroup,
    nilpotency_class,
    series,
    subgroup_from_members,
    whole_group,
)
from .reporting import VerificationReport

FULL_NORMAL_ENUMERATION_LIMIT = 200


@dataclass(frozen=True)
class VDecomposition:
    """The components G_i = C_G(v_i) of a validated fixed-point-free action."""

    group: FiniteGroup
    action: GroupAction
    components: tuple[Subgroup, Subgroup, Subgroup]

    def component(self, i: int) -> Subgroup:
        return self.components[i - 1]

    def component_of(self, x: int) -> int | None:
        """1-based component index of x, or None (identity sits in all three)."""
        if x == 0:
            return None
        for i in (1, 2, 3):
            if self.components[i - 1].contains(x):
                return i
        return None

    def component_orders(self) -> tuple[int, int, int]:
        return tuple(c.order for c in self.components)


def v_components(g: FiniteGroup, action: GroupAction | ActionSpec) -> VDecomposition:
    """Compute and validate the component decomposition.

    Errors signal a violated hypothesis: a nontrivial C_G(V), a
    non-abelian component, or a failure of the inversion rule
    x^{v_j} = x^{-1} on G_i for j != i.
    """
    action = ensure_action(g, action)
    if not action.is_fpf_on_v():
        raise ValidationError("C_G(V) is not trivial; the action is not fixed point free")
    v_perms = [action.perm(name) for name in ("v1", "v2", "v3")]
    comps = []
    idx = np.arange(g.order)
    for perm in v_perms:
        members = np.flatnonzero(perm == idx)
        comps.append(subgroup_from_members(g, members.tolist()))
    for i, comp in enumerate(comps, start=1):
        if not comp.is_abelian():
            raise ValidationError(f"component G_{i} is not abelian")
        mem = comp.member_array()
        for j, perm in enumerate(v_perms, start=1):
            if j == i:
                continue
            if not (perm[mem] == g.inverse[mem]).all():
                raise ValidationError(f"v_{j} does not invert G_{i}")
    for i in range(3):
        for j in range(i + 1, 3):
            common = set(comps[i].members) & set(comps[j].members)
            if common != {0}:
                raise ValidationError(f"components G_{i+1} and G_{j+1} overlap nontrivially")
    return VDecomposition(g, action, tuple(comps))


def _third_index(i: int, j: int) -> int:
    return 6 - i - j


def triple_decompose(
    dec: VDecomposition,
    x: int,
    i: int,
    s: Subgroup | None = None,
    outer: int | None = None,
) -> tuple[int, int]:
    """The unique (y, t) with x = y*t*y, y in G_outer, t in the remaining
    component, both inside the invariant subgroup s.

    ``i`` names the involution inverting x.  The pair (outer, remaining)
    fixes which of the two symmetric factorizations is meant; uniqueness
    holds for each choice and the full scan certifies it.
    """
    g = dec.group
    if i not in (1, 2, 3):
        raise ValidationError("component index must be 1, 2 or 3")
    if s is None:
        s = whole_group(g)
    if not s.contains(x):
        raise ValidationError("element lies outside the given subgroup")
    if dec.action.perm(f"v{i}")[x] != g.inv(x):
        raise ValidationError(f"v_{i} does not invert the element; decomposition undefined")
    if outer is None:
        outer = min(k for k in (1, 2, 3) if k != i)
    if outer == i or outer not in (1, 2, 3):
        raise ValidationError("outer component must differ from the inverting index")
    k = _third_index(i, outer)
    s_set = s.member_set()
    outer_members = [m for m in dec.component(outer).members if m in s_set]
    inner_set = set(dec.component(k).members) & s_set
    hits = []
    for y in outer_members:
        y_inv = g.inv(y)
        t = g.mul(g.mul(y_inv, x), y_inv)
        if t in inner_set:
            hits.append((y, t))
    if not hits:
        raise ValidationError("no factorization found; hypothesis violated")
    if len(hits) > 1:
        raise ValidationError(f"factorization is not unique: {hits}")
    return hits[0]


class StarTable:
    """Memoized star operation x*y over a component decomposition.

    The memo is a write-once cache: concurrent lookups may recompute a
    value but always store the same pair.
    """

    def __init__(self, dec: VDecomposition):
        self.dec = dec
        self._memo: dict[tuple[int, int], tuple[int, int]] = {}

    def star_pair(self, x: int, y: int, i: int | None = None, j: int | None = None) -> tuple[int, int]:
        """(s, t) with y^x = s*t*s, s in the third component, t alongside y."""
        key = (x, y)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        dec, g = self.dec, self.dec.group
        if i is None:
            i = dec.component_of(x)
        if j is None:
            j = dec.component_of(y)
        if x == 0 or y == 0:
            pair = (0, y)
        else:
            if i is None or j is None or i == j:
                raise ValidationError("star needs elements of two distinct components")
            w = g.conj(y, x)
            k = _third_index(i, j)
            pair = triple_decompose(dec, w, i, outer=k)
        self._memo[key] = pair
        return pair

    def star(self, x: int, y: int, i: int | None = None, j: int | None = None) -> int:
        return self.star_pair(x, y, i, j)[0]


def star(dec: VDecomposition, x: int, y: int) -> int:
    return StarTable(dec).star(x, y)


def r_t_subgroups(dec: VDecomposition, table: StarTable | None = None) -> tuple[Subgroup, ...]:
    """(R1, R2, R3, T1, T2, T3) generated by the star values between
    component pairs: R_k from a*b and T_k from b*a, with (a, b) running
    over the two components other than k."""
    if table is None:
        table = StarTable(dec)
    pairs = {1: (2, 3), 2: (1, 3), 3: (1, 2)}
    g = dec.group
    rs, ts = [], []
    for k in (1, 2, 3):
        i, j = pairs[k]
        r_gens = set()
        t_gens = set()
        for a in dec.component(i).members:
            for b in dec.component(j).members:
                r_gens.add(table.star(a, b, i, j))
                t_gens.add(table.star(b, a, j, i))
        rs.append(generated_subgroup(g, sorted(r_gens)))
        ts.append(generated_subgroup(g, sorted(t_gens)))
    return tuple(rs + ts)


def _normal_closure_within(g: FiniteGroup, sub_members: np.ndarray, element: int) -> Subgroup:
    """Normal closure of one element inside the subgroup with the given members."""
    t = g.table.astype(np.int64)
    mid = t[g.inverse[sub_members], element]
    conj = np.unique(t[mid, sub_members])
    return generated_subgroup(g, conj.tolist())


_derived_cache_key = lambda members: members.tobytes()


class _SubgroupScratch:
    """Per-run caches keyed by member sets; com1 revisits the same spans."""

    def __init__(self, g: FiniteGroup):
        self.g = g
        self.closures: dict[tuple[int, int], np.ndarray] = {}
        self.derived: dict[bytes, tuple[int, ...]] = {}

    def two_generated(self, x: int, y: int) -> np.ndarray:
        key = (x, y) if x <= y else (y, x)
        got = self.closures.get(key)
        if got is None:
            got = generated_subgroup(self.g, [x, y]).member_array()
            self.closures[key] = got
        return got

    def derived_of(self, members: np.ndarray) -> tuple[int, ...]:
        key = members.tobytes()
        got = self.derived.get(key)
        if got is None:
            sub_group = Subgroup(self.g, tuple(int(m) for m in members))
            from .groups import commutator_subgroup

            got = commutator_subgroup(self.g, sub_group, sub_group).members
            self.derived[key] = got
        return got


def verify_v_lemmas(
    g: FiniteGroup,
    action: GroupAction | ActionSpec,
    *,
    full_normal_limit: int = FULL_NORMAL_ENUMERATION_LIMIT,
) -> VerificationReport:
    """Exhaustively check the component lemmas on one group.

    A fail entry indicates an implementation bug or an invalid fixture,
    never a finding against the theory; the checked statements are theorems
    under the validated hypotheses.
    """
    action = ensure_action(g, action)
    report = VerificationReport(subject=f"vtheory(order={g.order})")
    dec = v_components(g, action)
    table = StarTable(dec)
    g1, g2, g3 = dec.components

    # Abelian components and the inversion rule (validated in v_components).
    report.add("lemma_112_components", "pass", f"component orders {dec.component_orders()}")

    # Unique factorization for every inverted element, both assignments.
    bad = 0
    checked = 0
    for x in range(g.order):
        for i in (1, 2, 3):
            if dec.action.perm(f"v{i}")[x] != g.inv(x):
                continue
            for outer in (j for j in (1, 2, 3) if j != i):
                checked += 1
                try:
                    triple_decompose(dec, x, i, outer=outer)
                except ValidationError:
                    bad += 1
    report.add(
        "lemma_113_unique_factorization",
        "pass" if bad == 0 else "fail",
        f"{checked} (element, assignment) scans, {bad} failures",
    )

    # Product cover G = G1 G2 G3.
    t = g.table.astype(np.int64)
    p12 = np.unique(t[np.ix_(g1.member_array(), g2.member_array())])
    p123 = np.unique(t[np.ix_(p12, g3.member_array())])
    covers = len(p123) == g.order
    orders_multiply = g1.order * g2.order * g3.order == g.order
    report.add(
        "lemma_114_product_cover",
        "pass" if covers and orders_multiply else "fail",
        f"|G1 G2 G3| = {len(p123)}, |G1||G2||G3| = {g1.order * g2.order * g3.order}, |G| = {g.order}",
    )

    # Pairwise joins: normal, contain G', intersect exactly in G'.
    derived = derived_subgroup(g)
    joins = {}
    for a, b in ((1, 2), (2, 3), (3, 1)):
        join = generated_subgroup(g, list(dec.component(a).members) + list(dec.component(b).members))
        joins[(a, b)] = join
    joins_normal = all(j.is_normal() for j in joins.values())
    joins_contain = all(j.contains_subgroup(derived) for j in joins.values())
    inter = set(joins[(1, 2)].members) & set(joins[(2, 3)].members) & set(joins[(3, 1)].members)
    inter_is_derived = inter == set(derived.members)
    report.add(
        "lemma_115_joins_and_derived",
        "pass" if joins_normal and joins_contain and inter_is_derived else "fail",
        f"join orders {[j.order for j in joins.values()]}, |G'| = {derived.order}, "
        f"intersection order {len(inter)}",
    )

    # Normal closure of x*y in <x, y> equals the derived subgroup of <x, y>.
    scratch = _SubgroupScratch(g)
    com1_checked = com1_bad = 0
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i == j:
                continue
            for x in dec.component(i).members:
                for y in dec.component(j).members:
                    com1_checked += 1
                    s_val = table.star(x, y, i, j)
                    h_members = scratch.two_generated(x, y)
                    closure = _normal_closure_within(g, h_members, s_val)
                    if closure.members != scratch.derived_of(h_members):
                        com1_bad += 1
    report.add(
        "lemma_com1_normal_closure",
        "pass" if com1_bad == 0 else "fail",
        f"{com1_checked} ordered pairs, {com1_bad} failures",
    )

    nilpotent = nilpotency_class(g) is not None
    if nilpotent:
        r1, r2, r3, t1, t2, t3 = r_t_subgroups(dec, table)
        symmetr_ok = all(r.members == s.members for r, s in ((r1, t1), (r2, t2), (r3, t3)))
        report.add(
            "lemma_symmetr_r_equals_t",
            "pass" if symmetr_ok else "fail",
            f"R orders {[r1.order, r2.order, r3.order]}, T orders {[t1.order, t2.order, t3.order]}",
        )
        commu_ok = True
        k_orders = []
        for idx, r in enumerate((r1, r2, r3), start=1):
            k_i = set(dec.component(idx).members) & set(derived.members)
            k_orders.append(len(k_i))
            if k_i != set(r.members):
                commu_ok = False
        report.add(
            "lemma_commu22_component_derived",
            "pass" if commu_ok else "fail",
            f"|G_i ∩ G'| = {k_orders}, R orders {[r1.order, r2.order, r3.order]}",
        )
    else:
        report.add("lemma_symmetr_r_equals_t", "skipped", "group is not nilpotent")
        report.add("lemma_commu22_component_derived", "skipped", "group is not nilpotent")

    # Normal subgroups inside G3 are central.  Always test the normal
    # closures of single G3 elements; below the limit also enumerate every
    # subgroup of G3 and test the normal ones.
    z_members = set(center(g).members)
    g3_set = set(g3.members)
    whole_members = whole_group(g).member_array()
    single_checked = single_bad = 0
    for b in g3.members:
        closure = _normal_closure_within(g, whole_members, b)
        if set(closure.members) <= g3_set:
            single_checked += 1
            if not set(closure.members) <= z_members:
                single_bad += 1
    detail = f"single-element closures: {single_checked} applicable, {single_bad} failures"
    full_bad = None
    if g.order <= full_normal_limit:
        full_checked = full_bad = 0
        for members in enumerate_subgroups_within(g, g3.members):
            sub = subgroup_from_members(g, members)
            if not sub.is_normal():
                continue
            full_checked += 1
            if not set(sub.members) <= z_members:
                full_bad += 1
        detail += f"; full enumeration: {full_checked} normal subgroups, {full_bad} failures"
    ok = single_bad == 0 and not full_bad
    report.add("lemma_normg3_central", "pass" if ok else "fail", detail)

    report.measured.update(
        {
            "order": g.order,
            "component_orders": list(dec.component_orders()),
            "exp_G": g.exponent(),
            "exp_G_derived": derived.exponent(),
            "nilpotent": nilpotent,
        }
    )
    return report
