"""Dimension subgroups and the graded Lie algebra of a finite p-group.

The chain D_i is generated by the p^k-th powers of the lower central terms
gamma_j with j p^k >= i.  Its layers D_i/D_{i+1} are elementary abelian and
assemble into a Lie algebra over F_p whose bracket is induced by group
commutation; the subalgebra generated by the first layer is the part that
sees the group's generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian

import numpy as np

from .errors import ValidationError
from .actions import ActionSpec, GroupAction, ensure_action
from .fplinalg import FpMatrix, FpSubspace, Vector, unit_vector, zero_vector
from .groups import (
    FiniteGroup,
    Subgroup,
    generated_subgroup,
    is_p_power,
    power_subgroup,
    series,
    subgroup_from_members,
    trivial_subgroup,
)
from .lie import LieAction, LieAlgebra, LieSubspace, generate, load_lie, restrict_to_subalgebra
from .reporting import VerificationReport


@dataclass(frozen=True)
class JenningsFiltration:
    """The chain D_1 >= D_2 >= ... >= D_s = 1 with layer data.

    ``terms[i]`` is D_{i+1}; ``layer_reps[w-1]`` lists coset representatives
    spanning D_w/D_{w+1}, chosen minimal in element-index order.
    """

    prime: int
    group: FiniteGroup
    terms: tuple[Subgroup, ...]
    layer_reps: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        """Number of terms; the last one is trivial."""
        return len(self.terms)

    @property
    def top_weight(self) -> int:
        return len(self.terms) - 1

    def term(self, i: int) -> Subgroup:
        """D_i, with D_i = 1 for every i past the chain."""
        if i < 1:
            raise ValidationError("filtration index starts at 1")
        if i > len(self.terms):
            return self.terms[-1]
        return self.terms[i - 1]

    def layer_dims(self) -> tuple[int, ...]:
        return tuple(len(reps) for reps in self.layer_reps)


def jennings_series(g: FiniteGroup, p: int) -> JenningsFiltration:
    """Compute the filtration and verify both defining inclusions."""
    if not is_p_power(g.order, p):
        raise ValidationError(f"order {g.order} is not a power of {p}")
    lower = series(g, "lower_central")
    if lower[-1].order != 1:
        raise ValidationError("p-group must be nilpotent; corrupt table")
    gammas = lower
    # gamma_j for j beyond the class is trivial.
    power_cache: dict[tuple[int, int], Subgroup] = {}

    def gamma_power(j: int, k: int) -> Subgroup:
        if j > len(gammas):
            return trivial_subgroup(g)
        key = (j, k)
        if key not in power_cache:
            power_cache[key] = power_subgroup(gammas[j - 1], p**k)
        return power_cache[key]

    max_k = 0
    while p**max_k < g.order:
        max_k += 1
    terms = []
    i = 1
    while True:
        members: set[int] = {0}
        for j in range(1, len(gammas) + 1):
            for k in range(0, max_k + 1):
                if j * p**k >= i:
                    members.update(int(m) for m in gamma_power(j, k).members)
        d_i = generated_subgroup(g, sorted(members))
        terms.append(d_i)
        if d_i.order == 1:
            break
        i += 1
        if i > 4 * g.order:
            raise ValidationError("filtration did not reach the identity")
    if terms[0].order != g.order:
        raise ValidationError("first term must be the whole group")

    s = len(terms)

    def term_at(idx: int) -> Subgroup:
        return terms[idx - 1] if idx <= s else terms[-1]

    t = g.table.astype(np.int64)
    for i in range(1, s + 1):
        d_i = terms[i - 1]
        mem_i = d_i.member_array()
        # power inclusion D_i^p <= D_pi
        target = term_at(min(i * p, s))
        mask = np.zeros(g.order, dtype=bool)
        mask[target.member_array()] = True
        if not mask[g.power_map(p)[mem_i]].all():
            raise ValidationError(f"power inclusion fails at D_{i}")
        for j in range(1, s + 1):
            d_j = terms[j - 1]
            target = term_at(min(i + j, s))
            mask = np.zeros(g.order, dtype=bool)
            mask[target.member_array()] = True
            mem_j = d_j.member_array()
            x = t[np.ix_(g.inverse[mem_i], g.inverse[mem_j])]
            y = t[x, mem_i[:, None]]
            z = t[y, mem_j[None, :]]
            if not mask[z].all():
                raise ValidationError(f"commutator inclusion fails at [D_{i}, D_{j}]")

    layer_reps = []
    for i in range(1, s):
        d_i, d_next = terms[i - 1], terms[i]
        reps: list[int] = []
        span = d_next
        for x in d_i.members:
            if span.contains(x):
                continue
            reps.append(int(x))
            span = generated_subgroup(g, list(span.members) + [int(x)])
        if span.order != d_i.order:
            raise ValidationError("layer basis does not span the layer")
        # elementary abelian layer: p-th powers and commutators drop a level
        next_set = d_next.member_set()
        mem = d_i.member_array()
        if not all(int(v) in next_set for v in g.power_map(p)[mem]):
            raise ValidationError(f"layer {i} is not exponent p")
        layer_reps.append(tuple(reps))
    return JenningsFiltration(p, g, tuple(terms), tuple(layer_reps))


class GradedCorrespondence:
    """Coordinates between group elements and vectors of the graded algebra."""

    def __init__(self, filtration: JenningsFiltration):
        self.filtration = filtration
        g = filtration.group
        p = filtration.prime
        self.offsets: list[int] = []
        total = 0
        for reps in filtration.layer_reps:
            self.offsets.append(total)
            total += len(reps)
        self.dim = total
        # weight[x] = the unique i with x in D_i minus D_{i+1}
        self._weight = np.zeros(g.order, dtype=np.int64)
        for i, term in enumerate(filtration.terms, start=1):
            mask = np.zeros(g.order, dtype=bool)
            mask[term.member_array()] = True
            self._weight[mask] = i
        # per-layer coset coordinates
        self._layer_coords: list[dict[int, tuple[int, ...]]] = []
        for w, reps in enumerate(filtration.layer_reps, start=1):
            next_members = filtration.terms[w].members
            coords: dict[int, tuple[int, ...]] = {}
            for combo in _cartesian(range(p), repeat=len(reps)):
                base = 0
                for rep, e in zip(reps, combo):
                    base = g.mul(base, g.power(rep, e))
                for d in next_members:
                    coords[g.mul(base, d)] = combo
            if len(coords) != filtration.terms[w - 1].order:
                raise ValidationError(f"layer {w} coordinates do not cover D_{w}")
            self._layer_coords.append(coords)

    def weight(self, x: int) -> int:
        if x == 0:
            raise ValidationError("the identity has no weight")
        return int(self._weight[x])

    def layer_coordinates(self, w: int, x: int) -> tuple[int, ...]:
        """Class of x in D_w/D_{w+1}; zero when x lies deeper."""
        if w > self.filtration.top_weight:
            raise ValidationError(f"no layer of weight {w}")
        return self._layer_coords[w - 1][x]

    def embed(self, w: int, coords: tuple[int, ...]) -> Vector:
        vec = [0] * self.dim
        off = self.offsets[w - 1]
        for t, c in enumerate(coords):
            vec[off + t] = c
        return tuple(vec)

    def to_vector(self, x: int) -> Vector:
        """The image of a nonidentity element in its own layer."""
        w = self.weight(x)
        if w > self.filtration.top_weight:
            raise ValidationError("element has no layer")
        return self.embed(w, self.layer_coordinates(w, x))

    def bracket_vector(self, x: int, wx: int, y: int, wy: int) -> Vector:
        """Image of the group commutator [x, y] in layer wx + wy.

        Representative independence of the induced bracket is exactly the
        statement that this value does not change when x or y moves within
        its coset.
        """
        g = self.filtration.group
        c = g.comm(x, y)
        w = wx + wy
        if w > self.filtration.top_weight:
            if self.filtration.term(w).order != 1 and c != 0:
                raise ValidationError("commutator escaped the filtration")
            return zero_vector(self.dim)
        return self.embed(w, self.layer_coordinates(w, c))

    def basis_elements(self) -> list[tuple[int, int]]:
        """(weight, representative) per graded basis vector, in order."""
        out = []
        for w, reps in enumerate(self.filtration.layer_reps, start=1):
            out.extend((w, rep) for rep in reps)
        return out

    def weight_of_coordinate(self, index: int) -> int:
        for w, off in enumerate(self.offsets, start=1):
            size = len(self.filtration.layer_reps[w - 1])
            if off <= index < off + size:
                return w
        raise ValidationError("coordinate index out of range")


def build_DL(g: FiniteGroup, p: int) -> tuple[LieAlgebra, GradedCorrespondence]:
    """The graded algebra of the filtration, with weight grading attached."""
    filtration = jennings_series(g, p)
    corr = GradedCorrespondence(filtration)
    basis = corr.basis_elements()
    n = corr.dim
    if p**n != g.order:
        raise ValidationError("layer dimensions do not account for the group order")
    brackets = []
    for a in range(n):
        wa, xa = basis[a]
        for b in range(a + 1, n):
            wb, xb = basis[b]
            vec = corr.bracket_vector(xa, wa, xb, wb)
            if any(vec):
                brackets.append((a, b, vec))
    grading = []
    for w in range(1, filtration.top_weight + 1):
        off = corr.offsets[w - 1]
        size = len(filtration.layer_reps[w - 1])
        grading.append(
            FpSubspace.from_vectors(p, n, [unit_vector(n, off + t) for t in range(size)])
        )
    labels = tuple(f"w{w}_{g.name_of(rep)}" if g.names else f"w{w}_e{rep}" for w, rep in basis)
    alg = load_lie(p, n, brackets, grading=tuple(grading), labels=labels)
    return alg, corr


def build_Lp(g: FiniteGroup, p: int, dl: LieAlgebra | None = None, corr: GradedCorrespondence | None = None) -> LieSubspace:
    """Subalgebra of the graded algebra generated by the first layer."""
    if dl is None or corr is None:
        dl, corr = build_DL(g, p)
    first_dim = len(corr.filtration.layer_reps[0]) if corr.filtration.layer_reps else 0
    gens = [unit_vector(dl.dim, corr.offsets[0] + t) for t in range(first_dim)]
    return generate(dl, gens, "subalgebra")


def lazard_check(
    g: FiniteGroup,
    p: int,
    dl: LieAlgebra | None = None,
    corr: GradedCorrespondence | None = None,
) -> VerificationReport:
    """For every nonidentity x: (ad xbar)^p = ad of the image of x^p in the
    weight p*weight(x) component, and the index of ad xbar is at most the
    order of x."""
    if dl is None or corr is None:
        dl, corr = build_DL(g, p)
    report = VerificationReport(subject=f"lazard(order={g.order}, p={p})")
    identity_bad = 0
    index_bad = 0
    from .lie import ad_index as lie_ad_index

    for x in range(1, g.order):
        xbar = corr.to_vector(x)
        lhs = dl.ad_matrix(xbar).power(p)
        xp = g.power(x, p)
        target_weight = p * corr.weight(x)
        if xp == 0 or target_weight > corr.filtration.top_weight:
            rhs = FpMatrix.zeros(p, dl.dim, dl.dim)
        else:
            if corr.weight(xp) < target_weight:
                raise ValidationError("power sank less than the power inclusion allows")
            rhs = dl.ad_matrix(corr.embed(target_weight, corr.layer_coordinates(target_weight, xp)))
        if lhs != rhs:
            identity_bad += 1
        idx = lie_ad_index(dl, xbar)
        if idx is None or idx > g.element_order(x):
            index_bad += 1
    report.add(
        "lazard_identity",
        "pass" if identity_bad == 0 else "fail",
        f"{g.order - 1} elements checked, {identity_bad} failures",
    )
    report.add(
        "lazard_ad_index_bound",
        "pass" if index_bad == 0 else "fail",
        f"index of ad xbar bounded by the element order; {index_bad} failures",
    )
    report.measured["dl_dim"] = dl.dim
    report.measured["layer_dims"] = list(corr.filtration.layer_dims())
    return report


def induce_action(
    g: FiniteGroup,
    p: int,
    spec: ActionSpec | GroupAction,
    dl: LieAlgebra | None = None,
    corr: GradedCorrespondence | None = None,
) -> LieAction:
    """Transport a group action to the graded algebra, layer by layer.

    The filtration terms are characteristic, but invariance is still
    verified; a failure indicates a bug.  When the group action is fixed
    point free on V, the induced four-group has no fixed vectors either,
    and that is asserted.
    """
    action = ensure_action(g, spec)
    if dl is None or corr is None:
        dl, corr = build_DL(g, p)
    for term in corr.filtration.terms:
        if not action.is_invariant(term.member_array()):
            raise ValidationError("filtration term not invariant; table or action corrupt")
    lie_type = "V" if action.acting_type == "V" else "D8"
    names = ("v1", "v2") if lie_type == "V" else ("v1", "v2", "alpha")
    basis = corr.basis_elements()
    matrices = {}
    for name in names:
        perm = action.perm(name)
        rows = []
        for w, rep in basis:
            image = int(perm[rep])
            rows.append(corr.embed(w, corr.layer_coordinates(w, image)))
        matrices[name] = FpMatrix.from_rows(p, rows, cols=dl.dim)
    laction = LieAction(dl, lie_type, matrices)
    if action.is_fpf_on_v():
        if g.order % 2 == 0:
            raise ValidationError("fixed point free four-group forces odd order")
        if laction.fixed_space_of_v().dim != 0:
            raise ValidationError("induced four-group action has unexpected fixed vectors")
    return laction


def lp_algebra(
    g: FiniteGroup,
    p: int,
    spec: ActionSpec | GroupAction | None = None,
) -> tuple[LieAlgebra, FpMatrix, LieAction | None]:
    """The first-layer subalgebra as a standalone algebra, with the induced
    action restricted to it when a group action is supplied."""
    dl, corr = build_DL(g, p)
    sub = build_Lp(g, p, dl, corr)
    laction = induce_action(g, p, spec, dl, corr) if spec is not None else None
    if laction is not None:
        invariant = all(
            sub.space.contains_vector(laction.matrix(name).apply(row))
            for name in laction.generator_names()
            for row in sub.space.basis.entries
        )
        if not invariant:
            raise ValidationError("first-layer subalgebra is not action invariant")
    return restrict_to_subalgebra(dl, sub, laction)
