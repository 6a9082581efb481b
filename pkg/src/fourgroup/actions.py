"""Automorphism actions of the abstract groups V, D8 and S4 on a finite group.

The acting groups are hard coded: V is the four-group, D8 its extension by
an involution alpha with v1^alpha = v2, and S4 the symmetric group on four
points with V as its maximal normal 2-subgroup.  An action is specified by
images of the named generators; the homomorphism is extended to every
abstract element and validated as a whole, which subsumes every defining
relation.

Exponent convention: x^(ab) = (x^a)^b, so the permutation of a product
composes the left factor first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InputFormatError, ValidationError
from .groups import (
    FiniteGroup,
    Subgroup,
    generated_subgroup,
    load_group,
    quotient,
    subgroup_from_members,
)

GENERATOR_NAMES = {
    "V": ("v1", "v2"),
    "D8": ("v1", "v2", "alpha"),
    "S4": ("v1", "v2", "alpha", "beta"),
}


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # left-to-right: apply a, then b
    return tuple(b[a[i]] for i in range(len(a)))


_ID4 = (0, 1, 2, 3)
_V1 = (1, 0, 3, 2)
_V2 = (2, 3, 0, 1)
_V3 = (3, 2, 1, 0)
_ALPHA = (0, 2, 1, 3)
_BETA = (1, 2, 0, 3)


class ActingGroup:
    """One of the abstract acting groups, with designated generators."""

    def __init__(self, kind: str, perms: list[tuple[int, ...]], designated: dict[str, tuple[int, ...]]):
        self.kind = kind
        self.order = len(perms)
        self.perms = perms
        index = {p: i for i, p in enumerate(perms)}
        self.table = np.array(
            [[index[_compose(a, b)] for b in perms] for a in perms], dtype=np.int32
        )
        self.inverse = np.argmax(self.table == 0, axis=1).astype(np.int32)
        self.generators = {name: index[p] for name, p in designated.items() if p in index}
        self.v_indices = tuple(index[p] for p in (_V1, _V2, _V3))
        self.generator_names = GENERATOR_NAMES[kind]
        # Express every element as a word in the designated generators.
        words: dict[int, tuple[str, ...]] = {0: ()}
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for name in self.generator_names:
                    f = int(self.table[e, self.generators[name]])
                    if f not in words:
                        words[f] = words[e] + (name,)
                        nxt.append(f)
            frontier = nxt
        if len(words) != self.order:
            raise ValidationError(f"designated generators do not generate {kind}")
        self.words = words

    def name_of(self, idx: int) -> str:
        word = self.words[idx]
        return "1" if not word else "*".join(word)


def _s4_elements() -> list[tuple[int, ...]]:
    perms = {_ID4}
    frontier = [_ID4]
    gens = [_V1, _V2, _ALPHA, _BETA]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(p, g)
                if q not in perms:
                    perms.add(q)
                    nxt.append(q)
        frontier = nxt
    return [_ID4] + sorted(perms - {_ID4})


@lru_cache(maxsize=None)
def abstract_acting_group(kind: str) -> ActingGroup:
    if kind not in GENERATOR_NAMES:
        raise ValidationError(f"acting type must be one of V, D8, S4, got {kind!r}")
    all24 = _s4_elements()
    designated = {"v1": _V1, "v2": _V2, "v3": _V3, "alpha": _ALPHA, "beta": _BETA}
    if kind == "S4":
        return ActingGroup(kind, all24, designated)
    members = {_ID4, _V1, _V2, _V3}
    if kind == "D8":
        frontier = list(members)
        while frontier:
            nxt = []
            for p in frontier:
                for g in (_V1, _V2, _ALPHA):
                    q = _compose(p, g)
                    if q not in members:
                        members.add(q)
                        nxt.append(q)
            frontier = nxt
    perms = [_ID4] + sorted(members - {_ID4})
    return ActingGroup(kind, perms, designated)


@dataclass(frozen=True)
class Automorphism:
    """A bijection of element indices that respects the multiplication."""

    group: FiniteGroup
    perm: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "perm", np.asarray(self.perm, dtype=np.int32))
        validate_automorphism(self.group, self.perm)
        self.perm.setflags(write=False)

    def __call__(self, x: int) -> int:
        return int(self.perm[x])

    def compose(self, other: "Automorphism") -> "Automorphism":
        """Apply self first, then other."""
        return Automorphism(self.group, np.asarray(other.perm[self.perm]))

    def is_identity(self) -> bool:
        return bool((self.perm == np.arange(self.group.order)).all())

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.group is other.group and (self.perm == other.perm).all()

    def __hash__(self):
        return hash(self.perm.tobytes())


def validate_automorphism(g: FiniteGroup, perm: np.ndarray) -> None:
    perm = np.asarray(perm)
    if perm.shape != (g.order,):
        raise ValidationError(f"mapping must be a permutation of {g.order} indices")
    if not (np.sort(perm) == np.arange(g.order)).all():
        raise ValidationError("mapping is not a bijection")
    if perm[0] != 0:
        raise ValidationError("mapping must fix the identity")
    lhs = perm[g.table.astype(np.int64)]
    rhs = g.table[np.ix_(perm, perm)]
    if not (lhs == rhs).all():
        a, b = np.argwhere(lhs != rhs)[0]
        raise ValidationError(f"mapping is not multiplicative at pair ({a}, {b})")


@dataclass(frozen=True, eq=False)
class ActionSpec:
    """Named generator images defining an action of V, D8 or S4.

    v3 is always derived as v1*v2 and may not be supplied.
    """

    acting_type: str
    images: dict[str, np.ndarray]

    def __post_init__(self):
        if self.acting_type not in GENERATOR_NAMES:
            raise ValidationError(f"acting type must be one of V, D8, S4, got {self.acting_type!r}")
        required = GENERATOR_NAMES[self.acting_type]
        if "v3" in self.images:
            raise ValidationError("v3 is derived from v1*v2 and may not be supplied")
        missing = [n for n in required if n not in self.images]
        extra = [n for n in self.images if n not in required]
        if missing or extra:
            raise ValidationError(
                f"{self.acting_type} action needs generators {list(required)}; "
                f"missing {missing}, unexpected {extra}"
            )

    @classmethod
    def from_dict(cls, data: dict) -> "ActionSpec":
        try:
            kind = data["acting_type"]
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"bad action payload: {exc}") from exc
        images = {
            k: np.asarray(v, dtype=np.int64)
            for k, v in data.items()
            if k != "acting_type"
        }
        return cls(kind, images)

    def to_dict(self) -> dict:
        out: dict = {"acting_type": self.acting_type}
        for name in GENERATOR_NAMES[self.acting_type]:
            out[name] = [int(x) for x in self.images[name]]
        return out


def write_action_file(spec: ActionSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec.to_dict(), indent=1) + "\n")


def read_action_file(path: str | Path) -> ActionSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON: {exc}") from exc
    return ActionSpec.from_dict(data)


class GroupAction:
    """A validated homomorphism from an abstract acting group into Aut(G)."""

    def __init__(self, group: FiniteGroup, acting: ActingGroup, maps: np.ndarray, spec: ActionSpec):
        self.group = group
        self.acting = acting
        self.maps = maps
        self.spec = spec

    @property
    def acting_type(self) -> str:
        return self.acting.kind

    def perm(self, name: str) -> np.ndarray:
        if name == "v3":
            return self.maps[self.acting.v_indices[2]]
        return self.maps[self.acting.generators[name]]

    def has_alpha(self) -> bool:
        return "alpha" in self.acting.generators and "alpha" in GENERATOR_NAMES[self.acting.kind]

    def automorphism(self, name: str) -> Automorphism:
        return Automorphism(self.group, np.asarray(self.perm(name)))

    def apply(self, name: str, x: int) -> int:
        return int(self.perm(name)[x])

    def is_coprime(self) -> bool:
        return math.gcd(self.group.order, self.acting.order) == 1

    def fixed_members(self, abstract_indices: Iterable[int]) -> np.ndarray:
        mask = np.ones(self.group.order, dtype=bool)
        idx = np.arange(self.group.order)
        for a in abstract_indices:
            mask &= self.maps[a] == idx
        return np.flatnonzero(mask)

    def fixed_subgroup(self, names: Sequence[str]) -> Subgroup:
        indices = []
        for name in names:
            if name == "v3":
                indices.append(self.acting.v_indices[2])
            else:
                indices.append(self.acting.generators[name])
        return subgroup_from_members(self.group, self.fixed_members(indices).tolist())

    def fixed_of_v(self) -> Subgroup:
        """C_G(V): fixed points of the whole four-group."""
        return subgroup_from_members(self.group, self.fixed_members(self.acting.v_indices[:2]).tolist())

    def is_fpf_on_v(self) -> bool:
        return self.fixed_of_v().order == 1

    def is_invariant(self, members: np.ndarray) -> bool:
        mask = np.zeros(self.group.order, dtype=bool)
        mask[members] = True
        for name in self.acting.generator_names:
            if not mask[self.perm(name)[members]].all():
                return False
        return True

    def restrict_to(self, sub: Subgroup, sub_group: FiniteGroup, members: np.ndarray) -> "GroupAction":
        """The action induced on an invariant subgroup extracted by
        :func:`fourgroup.groups.subgroup_as_group`."""
        if not self.is_invariant(sub.member_array()):
            raise ValidationError("subgroup is not invariant under the action")
        relabel = np.full(self.group.order, -1, dtype=np.int64)
        relabel[members] = np.arange(len(members))
        images = {
            name: relabel[self.perm(name)[members]] for name in self.acting.generator_names
        }
        return build_action(sub_group, ActionSpec(self.acting_type, images))


def _extend_maps(g: FiniteGroup, acting: ActingGroup, images: dict[str, np.ndarray]) -> np.ndarray:
    n = g.order
    maps = np.full((acting.order, n), -1, dtype=np.int32)
    maps[0] = np.arange(n)
    for idx in range(acting.order):
        word = acting.words[idx]
        perm = np.arange(n)
        for name in word:
            perm = images[name][perm]
        maps[idx] = perm
    return maps


def build_action(g: FiniteGroup, spec: ActionSpec) -> GroupAction:
    """Validate a spec completely and return the full action.

    Raises on any failure; use :func:`validate_action` for a non-throwing
    report.
    """
    acting = abstract_acting_group(spec.acting_type)
    images = {}
    for name in acting.generator_names:
        perm = np.asarray(spec.images[name], dtype=np.int64)
        validate_automorphism(g, perm)
        images[name] = perm
    maps = _extend_maps(g, acting, images)
    for a in range(acting.order):
        pa = maps[a]
        for b in range(acting.order):
            c = int(acting.table[a, b])
            if not (maps[c] == maps[b][pa]).all():
                raise ValidationError(
                    f"defining relations fail: image of {acting.name_of(a)}*{acting.name_of(b)} "
                    "is not the composite of the images"
                )
    maps.setflags(write=False)
    return GroupAction(g, acting, maps, spec)


@dataclass(frozen=True)
class ActionReport:
    well_defined: bool
    relations_hold: bool
    coprime: bool
    fpf_on_V: bool
    details: str
    action: GroupAction | None

    def all_valid(self) -> bool:
        return self.well_defined and self.relations_hold


def validate_action(g: FiniteGroup, spec: ActionSpec) -> ActionReport:
    """Check well-definedness, the abstract relations, coprimeness and
    fixed-point-freeness of V, without raising."""
    acting = abstract_acting_group(spec.acting_type)
    details = []
    well_defined = True
    images = {}
    for name in acting.generator_names:
        perm = np.asarray(spec.images[name], dtype=np.int64)
        try:
            validate_automorphism(g, perm)
            images[name] = perm
        except ValidationError as exc:
            well_defined = False
            details.append(f"{name}: {exc}")
    relations_hold = False
    action = None
    if well_defined:
        try:
            action = build_action(g, spec)
            relations_hold = True
        except ValidationError as exc:
            details.append(str(exc))
    coprime = math.gcd(g.order, acting.order) == 1
    fpf = False
    if well_defined and {"v1", "v2"} <= set(images):
        idx = np.arange(g.order)
        mask = (images["v1"] == idx) & (images["v2"] == idx)
        fpf = int(mask.sum()) == 1
    return ActionReport(well_defined, relations_hold, coprime, fpf, "; ".join(details), action)


def fixed_points(g: FiniteGroup, autos: Iterable[Automorphism]) -> Subgroup:
    """Subgroup of elements fixed by every automorphism in the set."""
    mask = np.ones(g.order, dtype=bool)
    idx = np.arange(g.order)
    for a in autos:
        if a.group is not g:
            raise ValidationError("automorphism belongs to a different group")
        mask &= a.perm == idx
    return subgroup_from_members(g, np.flatnonzero(mask).tolist())


@dataclass(frozen=True)
class QuotientActionResult:
    quotient: FiniteGroup
    projection: np.ndarray
    induced_spec: ActionSpec
    induced_action: GroupAction
    # True/False when the action is coprime; None when not applicable.
    centralizer_formula_holds: bool | None


def quotient_action(g: FiniteGroup, n: Subgroup, action: GroupAction | ActionSpec) -> QuotientActionResult:
    """Quotient by an invariant normal subgroup with the induced action.

    For coprime actions the report also checks, for every abstract element
    a, that the fixed points of a in G/N are exactly the image of the fixed
    points of a in G.
    """
    action = ensure_action(g, action)
    if not action.is_invariant(n.member_array()):
        raise ValidationError("subgroup is not invariant under the action")
    q, proj = quotient(g, n)
    images = {}
    for name in action.acting.generator_names:
        perm = action.perm(name).astype(np.int64)
        qperm = np.full(q.order, -1, dtype=np.int64)
        qperm[proj] = proj[perm]
        if not (qperm[proj] == proj[perm]).all():
            raise ValidationError("induced mapping is not well defined on cosets")
        images[name] = qperm
    spec = ActionSpec(action.acting_type, images)
    induced = build_action(q, spec)
    formula: bool | None = None
    if action.is_coprime():
        formula = True
        for a in range(action.acting.order):
            fixed_g = action.fixed_members([a])
            image = np.unique(proj[fixed_g])
            fixed_q = induced.fixed_members([a])
            if not np.array_equal(image, fixed_q):
                formula = False
                break
    return QuotientActionResult(q, proj, spec, induced, formula)


def ensure_action(g: FiniteGroup, action: GroupAction | ActionSpec) -> GroupAction:
    if isinstance(action, GroupAction):
        if action.group is not g:
            raise ValidationError("action belongs to a different group")
        return action
    return build_action(g, action)


def minimal_invariant_closure(h: Subgroup, seed: Subgroup, action: GroupAction | ActionSpec) -> Subgroup:
    """Least subgroup of h containing seed, normal in h and closed under the
    whole acting group."""
    g = h.parent
    action = ensure_action(g, action)
    if not seed.member_set() <= h.member_set():
        raise ValidationError("seed must lie inside the ambient subgroup")
    if not action.is_invariant(h.member_array()):
        raise ValidationError("ambient subgroup is not invariant under the action")
    t = g.table.astype(np.int64)
    hm = h.member_array()
    gen_perms = [action.perm(name) for name in action.acting.generator_names]
    cur = seed.member_array()
    while True:
        grown = set(int(x) for x in cur)
        # conjugates by members of h
        mid = t[np.ix_(g.inverse[hm], cur)]
        conj = t[mid, hm[:, None]]
        grown.update(int(x) for x in np.unique(conj))
        for perm in gen_perms:
            grown.update(int(x) for x in perm[cur])
        closed = generated_subgroup(g, sorted(grown)).member_array()
        if len(closed) == len(cur):
            break
        cur = closed
    members = tuple(int(x) for x in cur)
    if not set(members) <= h.member_set():
        raise ValidationError("closure escaped the ambient subgroup")
    return Subgroup(g, members, tuple(int(x) for x in seed.members))


@dataclass(frozen=True)
class ProductDecomposition:
    holds: bool
    subgroup_order: int
    closure_order: int
    centralizer_order: int
    product_order: int


def check_product_decomposition(h: Subgroup, action: GroupAction | ActionSpec) -> ProductDecomposition:
    """Does h factor as N * C_h(v3), with N the minimal invariant normal
    closure of C_h(alpha)?"""
    g = h.parent
    action = ensure_action(g, action)
    if not action.has_alpha():
        raise ValidationError("product decomposition needs a D8 or S4 action")
    alpha_perm = action.perm("alpha")
    hm = h.member_array()
    fixed_alpha = hm[alpha_perm[hm] == hm]
    c_alpha = subgroup_from_members(g, fixed_alpha.tolist())
    n = minimal_invariant_closure(h, c_alpha, action)
    v3_perm = action.perm("v3")
    fixed_v3 = hm[v3_perm[hm] == hm]
    c_v3 = subgroup_from_members(g, fixed_v3.tolist())
    t = g.table.astype(np.int64)
    product = np.unique(t[np.ix_(n.member_array(), c_v3.member_array())])
    holds = np.array_equal(product, hm)
    return ProductDecomposition(holds, h.order, n.order, c_v3.order, len(product))
