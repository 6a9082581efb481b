"""Finite groups as validated Cayley tables plus the subgroup calculus.

Elements are indices 0..n-1 with the identity fixed at 0.  Tables are
numpy int32 arrays frozen after validation; every operation below is pure,
so groups and subgroups can be shared freely between threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputFormatError, ValidationError

DEFAULT_ORDER_CAP = 5000
# Full O(n^3) associativity is skipped above this order for tables produced
# by collection, which are already covered by the generator-pair check.
FULL_ASSOC_LIMIT = 1000
_COLLECT_STEP_CAP = 500_000


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, table: np.ndarray, inverse: np.ndarray, names: tuple[str, ...] | None):
        self.table = table
        self.inverse = inverse
        self.names = names
        self.order = len(table)
        self._cache: dict = {}

    # -- element arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        t = self.table
        return int(t[t[self.inverse[g], x], g])

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        t = self.table
        return int(t[t[t[self.inverse[a], self.inverse[b]], a], b])

    def power(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        result, base = 0, x
        while e > 0:
            if e & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            e >>= 1
        return result

    def element_orders(self) -> np.ndarray:
        orders = self._cache.get("orders")
        if orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            orders[0] = 1
            cur = np.arange(n)
            idx = np.arange(n)
            k = 1
            while (orders == 0).any():
                k += 1
                cur = self.table[cur, idx]
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
                if k > self.order:
                    raise ValidationError("element order exceeded group order; corrupt table")
            self._cache["orders"] = orders
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders()[x])

    def exponent(self) -> int:
        exp = self._cache.get("exponent")
        if exp is None:
            exp = reduce(math.lcm, (int(o) for o in self.element_orders()), 1)
            self._cache["exponent"] = exp
        return exp

    def is_abelian(self) -> bool:
        val = self._cache.get("abelian")
        if val is None:
            val = bool((self.table == self.table.T).all())
            self._cache["abelian"] = val
        return val

    def power_map(self, e: int) -> np.ndarray:
        """Array m with m[x] = x^e for every element at once."""
        n = self.order
        result = np.zeros(n, dtype=np.int64)
        base = np.arange(n)
        while e > 0:
            if e & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            e >>= 1
        return result

    def conjugates_of(self, x: int) -> np.ndarray:
        """All g^-1 x g as g runs over the group."""
        t = self.table
        mid = t[self.inverse, x]
        return t[mid, np.arange(self.order)]

    def name_of(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A validated subgroup: sorted member indices plus generators."""

    parent: FiniteGroup
    members: tuple[int, ...]
    generators: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.members or self.members[0] != 0:
            raise ValidationError("subgroup must contain the identity at index 0")

    @property
    def order(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def member_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def contains(self, x: int) -> bool:
        return x in self.member_set()

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return self.member_set() >= other.member_set()

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole_group(self) -> bool:
        return self.order == self.parent.order

    def is_abelian(self) -> bool:
        g, mem = self.parent, self.member_array()
        block = g.table[np.ix_(mem, mem)]
        return bool((block == block.T).all())

    def is_normal(self) -> bool:
        g, mem = self.parent, self.member_array()
        t = g.table
        mid = t[np.ix_(g.inverse, mem)]
        conj = t[mid, np.arange(g.order)[:, None]]
        mask = np.zeros(g.order, dtype=bool)
        mask[mem] = True
        return bool(mask[conj].all())

    def exponent(self) -> int:
        orders = self.parent.element_orders()
        return reduce(math.lcm, (int(orders[m]) for m in self.members), 1)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.order})"


# -- validation and construction -------------------------------------------


def _first_assoc_failure(table: np.ndarray) -> tuple[int, int, int] | None:
    n = len(table)
    rng = np.arange(n)
    for a in range(n):
        row = table[a]
        lhs = table[row][:, rng]
        rhs = row[table]
        if not (lhs == rhs).all():
            b, c = np.argwhere(lhs != rhs)[0]
            return a, int(b), int(c)
    return None


def _generator_assoc_ok(table: np.ndarray, gens: Sequence[int]) -> bool:
    # (a b) g == a (b g) for all a, b and generators g.  Combined with the
    # fact that every element is a left-to-right product of generators this
    # implies full associativity.
    for g in gens:
        lhs = table[table, g]
        rhs = table[:, table[:, g]]
        if not (lhs == rhs).all():
            return False
    return True


def load_group(
    table_data: Sequence[Sequence[int]] | np.ndarray,
    names: Sequence[str] | None = None,
    *,
    check_associativity: bool = True,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a FiniteGroup.

    The identity must sit at index 0.  Diagnostics name the first failing
    triple or row.  ``check_associativity=False`` is only safe for tables
    whose associativity is guaranteed structurally (see
    :func:`from_pc_presentation`).
    """
    table = np.asarray(table_data, dtype=np.int64)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ValidationError(f"table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise ValidationError("empty table")
    if n > order_cap:
        raise ValidationError(f"order {n} exceeds cap {order_cap}")
    if table.min() < 0 or table.max() >= n:
        raise ValidationError("table entries must be element indices in [0, n)")
    rng = np.arange(n)
    if not (table[0] == rng).all() or not (table[:, 0] == rng).all():
        raise ValidationError("identity must be the element at index 0")
    if not (np.sort(table, axis=1) == rng).all():
        bad = next(i for i in range(n) if not (np.sort(table[i]) == rng).all())
        raise ValidationError(f"row {bad} is not a permutation (not a Latin square)")
    if not (np.sort(table, axis=0) == rng[:, None]).all():
        bad = next(j for j in range(n) if not (np.sort(table[:, j]) == rng).all())
        raise ValidationError(f"column {bad} is not a permutation (not a Latin square)")
    if check_associativity:
        fail = _first_assoc_failure(table)
        if fail is not None:
            raise ValidationError(f"associativity fails at triple {fail}")
    inverse = np.argmax(table == 0, axis=1)
    if not (table[rng, inverse] == 0).all() or not (table[inverse, rng] == 0).all():
        raise ValidationError("two-sided inverses missing")
    table = np.ascontiguousarray(table, dtype=np.int32)
    table.setflags(write=False)
    inverse = inverse.astype(np.int32)
    inverse.setflags(write=False)
    if names is not None:
        if len(names) != n:
            raise ValidationError("names length must match order")
        names = tuple(str(s) for s in names)
    return FiniteGroup(table, inverse, names)


def trivial_group() -> FiniteGroup:
    return load_group([[0]])


def cyclic_group(n: int) -> FiniteGroup:
    rng = np.arange(n)
    return load_group((rng[:, None] + rng[None, :]) % n, check_associativity=n <= FULL_ASSOC_LIMIT)


def from_mult_function(n: int, mul: Callable[[int, int], int], names: Sequence[str] | None = None) -> FiniteGroup:
    table = [[mul(a, b) for b in range(n)] for a in range(n)]
    return load_group(table, names, check_associativity=n <= FULL_ASSOC_LIMIT)


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product with index (a, b) -> a * |g2| + b."""
    n1, n2 = g1.order, g2.order
    t1 = g1.table.astype(np.int64)
    t2 = g2.table.astype(np.int64)
    a1, b1 = np.divmod(np.arange(n1 * n2), n2)
    left = t1[np.ix_(a1, a1)] * n2
    right = t2[np.ix_(b1, b1)]
    return load_group(left + right, check_associativity=False)


# -- polycyclic presentations ----------------------------------------------


@dataclass(frozen=True)
class PcPresentation:
    """Power-commutator presentation of a finite p-group.

    ``powers[i]`` is the normal word (exponent vector) for the p-th power of
    generator i and may only involve generators with index > i.
    ``commutators[(j, i)]`` with j > i is the normal word for [g_j, g_i] and
    may only involve generators with index > j; omitted pairs commute.
    """

    prime: int
    ngens: int
    powers: tuple[tuple[int, ...], ...]
    commutators: tuple[tuple[int, int, tuple[int, ...]], ...]

    def __post_init__(self):
        from .fplinalg import check_prime

        check_prime(self.prime)
        if self.ngens < 1:
            raise ValidationError("need at least one generator")
        if len(self.powers) != self.ngens:
            raise ValidationError("one power word per generator required")
        for i, word in enumerate(self.powers):
            self._check_word(word, min_gen=i + 1, what=f"power of g{i}")
        seen = set()
        for j, i, word in self.commutators:
            if not (0 <= i < j < self.ngens):
                raise ValidationError(f"commutator pair ({j},{i}) must satisfy ngens > j > i >= 0")
            if (j, i) in seen:
                raise ValidationError(f"duplicate commutator pair ({j},{i})")
            seen.add((j, i))
            self._check_word(word, min_gen=j + 1, what=f"[g{j},g{i}]")

    def _check_word(self, word: Sequence[int], min_gen: int, what: str) -> None:
        if len(word) != self.ngens:
            raise ValidationError(f"{what}: word must list {self.ngens} exponents")
        if any(not (0 <= e < self.prime) for e in word):
            raise ValidationError(f"{what}: exponents must lie in [0, {self.prime})")
        if any(e != 0 for e in word[:min_gen]):
            raise ValidationError(f"{what}: may only use generators with index >= {min_gen}")

    def commutator_word(self, j: int, i: int) -> tuple[int, ...]:
        for jj, ii, word in self.commutators:
            if (jj, ii) == (j, i):
                return word
        return (0,) * self.ngens

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "ngens": self.ngens,
            "powers": [list(w) for w in self.powers],
            "commutators": [[j, i, list(w)] for j, i, w in self.commutators],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PcPresentation":
        try:
            return cls(
                prime=int(data["prime"]),
                ngens=int(data["ngens"]),
                powers=tuple(tuple(int(e) for e in w) for w in data["powers"]),
                commutators=tuple(
                    (int(j), int(i), tuple(int(e) for e in w)) for j, i, w in data["commutators"]
                ),
            )
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"bad pc presentation payload: {exc}") from exc


def _word_letters(word: Sequence[int]) -> list[int]:
    letters = []
    for g, e in enumerate(word):
        letters.extend([g] * e)
    return letters


def _collect(letters: list[int], pres: PcPresentation) -> tuple[int, ...]:
    """Collection from the left: rewrite to the sorted normal form.

    Letters are single generator indices.  Rewrites fix the leftmost
    violation: either an out-of-order adjacent pair or a run of p equal
    letters.
    """
    p = pres.prime
    comm_cache = {}
    steps = 0
    while True:
        steps += 1
        if steps > _COLLECT_STEP_CAP:
            raise ValidationError("collection did not terminate; inconsistent presentation")
        violation = None
        run_start, run_len = 0, 0
        for k in range(len(letters)):
            if k + 1 < len(letters) and letters[k] > letters[k + 1]:
                violation = ("swap", k)
                break
            if k > 0 and letters[k] == letters[k - 1]:
                run_len += 1
            else:
                run_start, run_len = k, 1
            if run_len == p:
                violation = ("power", run_start)
                break
        if violation is None:
            break
        kind, k = violation
        if kind == "swap":
            a, b = letters[k], letters[k + 1]
            key = (a, b)
            tail = comm_cache.get(key)
            if tail is None:
                tail = _word_letters(pres.commutator_word(a, b))
                comm_cache[key] = tail
            letters[k : k + 2] = [b, a] + tail
        else:
            g = letters[k]
            letters[k : k + p] = _word_letters(pres.powers[g])
    exps = [0] * pres.ngens
    for g in letters:
        exps[g] += 1
    return tuple(exps)


def _pc_index(exps: Sequence[int], p: int, d: int) -> int:
    idx = 0
    for e in exps:
        idx = idx * p + e
    return idx


def _pc_exps(idx: int, p: int, d: int) -> list[int]:
    exps = [0] * d
    for t in range(d - 1, -1, -1):
        idx, exps[t] = divmod(idx, p)
    return exps


def from_pc_presentation(pres: PcPresentation) -> FiniteGroup:
    """Materialize the group of order p^d defined by a pc presentation.

    Multiplication is collection from the left.  The induced table is
    validated; for orders above FULL_ASSOC_LIMIT the O(n^3) associativity
    check is replaced by the generator-pair check, which suffices because
    every element is by construction a left-to-right product of generators.
    """
    p, d = pres.prime, pres.ngens
    n = p**d
    if n > DEFAULT_ORDER_CAP:
        raise ValidationError(f"presentation order {n} exceeds cap {DEFAULT_ORDER_CAP}")

    # Right multiplication by each generator, as a permutation of indices.
    rho = np.empty((d, n), dtype=np.int64)
    for t in range(d):
        for m in range(n):
            letters = _word_letters(_pc_exps(m, p, d)) + [t]
            rho[t, m] = _pc_index(_collect(letters, pres), p, d)

    # rho_pows[t][e] sends x to x * g_t^e.
    rho_pows = []
    for t in range(d):
        pows = [np.arange(n)]
        for _ in range(1, p):
            pows.append(rho[t][pows[-1]])
        rho_pows.append(pows)

    table = np.empty((n, n), dtype=np.int64)
    for b in range(n):
        exps = _pc_exps(b, p, d)
        perm = rho_pows[0][exps[0]]
        for t in range(1, d):
            e = exps[t]
            if e:
                perm = rho_pows[t][e][perm]
        table[:, b] = perm

    gens = [_pc_index([1 if k == t else 0 for k in range(d)], p, d) for t in range(d)]
    if not _generator_assoc_ok(table, gens):
        raise ValidationError("inconsistent presentation: generator associativity fails")
    group = load_group(table, check_associativity=n <= FULL_ASSOC_LIMIT)

    # Re-check the defining relations directly on the table.
    for t in range(d):
        want = _pc_index(pres.powers[t], p, d)
        if group.power(gens[t], p) != want:
            raise ValidationError(f"power relation of generator {t} fails on the table")
    for j, i, word in pres.commutators:
        if group.comm(gens[j], gens[i]) != _pc_index(word, p, d):
            raise ValidationError(f"commutator relation [g{j},g{i}] fails on the table")
    return group


def pc_generators(pres: PcPresentation) -> list[int]:
    return [_pc_index([1 if k == t else 0 for k in range(pres.ngens)], pres.prime, pres.ngens) for t in range(pres.ngens)]


# -- subgroup machinery -----------------------------------------------------


def _closure_members(g: FiniteGroup, gens: Iterable[int]) -> np.ndarray:
    """Members of the subgroup generated by gens.

    In a finite group the submonoid generated from the identity by right
    multiplication is already the subgroup.
    """
    gen_list = sorted(set(int(x) for x in gens))
    gen_arr = np.asarray(gen_list, dtype=np.int64) if gen_list else np.empty(0, np.int64)
    in_set = np.zeros(g.order, dtype=bool)
    in_set[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and gen_arr.size:
        prods = g.table[np.ix_(frontier, gen_arr)].ravel()
        prods = np.unique(prods)
        new = prods[~in_set[prods]]
        in_set[new] = True
        frontier = new
    return np.flatnonzero(in_set)


def generated_subgroup(g: FiniteGroup, gens: Iterable[int], normal: bool = False) -> Subgroup:
    """Subgroup generated by ``gens``; with ``normal`` the normal closure."""
    gens = [int(x) for x in gens]
    for x in gens:
        if not 0 <= x < g.order:
            raise ValidationError(f"generator index {x} out of range")
    if normal and gens:
        conj = np.unique(np.concatenate([g.conjugates_of(x) for x in gens]))
        members = _closure_members(g, conj.tolist())
    else:
        members = _closure_members(g, gens)
    return Subgroup(g, tuple(int(m) for m in members), tuple(gens))


def whole_group(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(range(g.order)))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (0,))


def subgroup_from_members(g: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Wrap a member set after checking closure under product and inverse."""
    mem = np.unique(np.asarray(sorted(set(int(x) for x in members)), dtype=np.int64))
    mask = np.zeros(g.order, dtype=bool)
    mask[mem] = True
    if not mask[0]:
        raise ValidationError("member set must contain the identity")
    prods = g.table[np.ix_(mem, mem)]
    if not mask[prods].all():
        raise ValidationError("member set is not closed under multiplication")
    return Subgroup(g, tuple(int(m) for m in mem))


def _commutator_members(g: FiniteGroup, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """All [a, b] with a in left, b in right."""
    t = g.table
    x = t[np.ix_(g.inverse[left], g.inverse[right])]
    y = t[x, left[:, None]]
    z = t[y, right[None, :]]
    return np.unique(z)


def commutator_subgroup(g: FiniteGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    comms = _commutator_members(g, a.member_array(), b.member_array())
    return generated_subgroup(g, comms.tolist())


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    w = whole_group(g)
    return commutator_subgroup(g, w, w)


def series(g: FiniteGroup, kind: str) -> list[Subgroup]:
    """Lower central, derived, or upper central series until stable.

    lower_central: [G, [G,G], ...]; derived: [G, G', G'', ...];
    upper_central: [1, Z(G), Z_2(G), ...].
    """
    if kind == "lower_central":
        terms = [whole_group(g)]
        while True:
            nxt = commutator_subgroup(g, terms[-1], whole_group(g))
            if nxt.members == terms[-1].members:
                break
            terms.append(nxt)
        return terms
    if kind == "derived":
        terms = [whole_group(g)]
        while True:
            nxt = commutator_subgroup(g, terms[-1], terms[-1])
            if nxt.members == terms[-1].members:
                break
            terms.append(nxt)
        return terms
    if kind == "upper_central":
        terms = [trivial_subgroup(g)]
        n = g.order
        t = g.table
        comm_table = None
        while True:
            cur = terms[-1]
            mask = np.zeros(n, dtype=bool)
            mask[cur.member_array()] = True
            if comm_table is None:
                inv = g.inverse
                mid = t[np.ix_(inv, inv)]
                rows = t[mid, np.arange(n)[:, None]]
                comm_table = t[rows, np.arange(n)[None, :]]
            central = mask[comm_table].all(axis=1)
            members = np.flatnonzero(central)
            nxt = subgroup_from_members(g, members.tolist())
            if nxt.members == cur.members:
                break
            terms.append(nxt)
        return terms
    raise ValidationError(f"unknown series kind {kind!r}")


def nilpotency_class(g: FiniteGroup) -> int | None:
    terms = series(g, "lower_central")
    if terms[-1].order != 1:
        return None
    return len(terms) - 1


def is_nilpotent(g: FiniteGroup) -> bool:
    return nilpotency_class(g) is not None


def derived_length(g: FiniteGroup) -> int | None:
    terms = series(g, "derived")
    if terms[-1].order != 1:
        return None
    return len(terms) - 1


def power_subgroup(g_or_sub: FiniteGroup | Subgroup, e: int) -> Subgroup:
    """Subgroup generated by the e-th powers of all members."""
    if e < 1:
        raise ValidationError("exponent must be positive")
    if isinstance(g_or_sub, Subgroup):
        g = g_or_sub.parent
        powers = g.power_map(e)[g_or_sub.member_array()]
    else:
        g = g_or_sub
        powers = g.power_map(e)
    return generated_subgroup(g, np.unique(powers).tolist())


def exponent(g_or_sub: FiniteGroup | Subgroup) -> int:
    return g_or_sub.exponent()


def centralizer_of_set(g: FiniteGroup, s: Iterable[int]) -> Subgroup:
    s_arr = np.asarray(sorted(set(int(x) for x in s)), dtype=np.int64)
    if s_arr.size == 0:
        return whole_group(g)
    left = g.table[:, s_arr]
    right = g.table[s_arr, :].T
    members = np.flatnonzero((left == right).all(axis=1))
    return subgroup_from_members(g, members.tolist())


def center(g: FiniteGroup) -> Subgroup:
    members = np.flatnonzero((g.table == g.table.T).all(axis=1))
    return subgroup_from_members(g, members.tolist())


def quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient by a normal subgroup: (quotient group, projection array).

    Cosets are labelled by their least member, relabelled in increasing
    order, so the identity coset is index 0.
    """
    if not n.is_normal():
        raise ValidationError("quotient requires a normal subgroup")
    mem = n.member_array()
    reps = g.table[:, mem].min(axis=1)
    uniq = np.unique(reps)
    proj = np.searchsorted(uniq, reps)
    qn = len(uniq)
    qtable = proj[g.table[np.ix_(uniq, uniq)].astype(np.int64)]
    qgroup = load_group(qtable, check_associativity=qn <= FULL_ASSOC_LIMIT)
    proj = proj.astype(np.int32)
    proj.setflags(write=False)
    return qgroup, proj


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def prime_of_order(n: int) -> int | None:
    """The unique prime p with n a power of p, or None."""
    if n <= 1:
        return None
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            return d if is_p_power(n, d) else None
        d += 1
    return m


def is_powerful(g: FiniteGroup, p: int) -> bool:
    """G^p >= [G, G] for odd p (G^4 >= [G, G] for p = 2)."""
    if not is_p_power(g.order, p):
        raise ValidationError(f"order {g.order} is not a power of {p}")
    e = 4 if p == 2 else p
    gp = power_subgroup(g, e)
    return gp.contains_subgroup(derived_subgroup(g))


def subgroup_as_group(sub: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """Extract a subgroup as a standalone group.

    Returns (group, members) where members[new_index] = old index.
    """
    g = sub.parent
    mem = sub.member_array()
    relabel = np.full(g.order, -1, dtype=np.int64)
    relabel[mem] = np.arange(len(mem))
    block = relabel[g.table[np.ix_(mem, mem)].astype(np.int64)]
    if (block < 0).any():
        raise ValidationError("member set is not closed")
    names = tuple(g.name_of(int(m)) for m in mem) if g.names else None
    return load_group(block, names, check_associativity=len(mem) <= FULL_ASSOC_LIMIT), mem


def enumerate_subgroups_within(g: FiniteGroup, members: Iterable[int]) -> list[frozenset[int]]:
    """Every subgroup of G whose members lie in the given closed set.

    Breadth-first closure over one-element extensions; intended for small
    member sets only.
    """
    pool = sorted(set(int(x) for x in members))
    found = {frozenset([0])}
    queue = [frozenset([0])]
    while queue:
        s = queue.pop()
        for x in pool:
            if x in s:
                continue
            closed = frozenset(int(m) for m in _closure_members_from(g, s | {x}))
            if not closed.issubset(set(pool)):
                continue
            if closed not in found:
                found.add(closed)
                queue.append(closed)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _closure_members_from(g: FiniteGroup, seed: Iterable[int]) -> np.ndarray:
    return _closure_members(g, list(seed))


# -- file formats ------------------------------------------------------------


def group_to_dict(g: FiniteGroup) -> dict:
    data = {"order": g.order, "table": g.table.astype(int).tolist()}
    if g.names:
        data["names"] = list(g.names)
    return data


def group_from_dict(data: dict, **kwargs) -> FiniteGroup:
    try:
        table = data["table"]
        order = int(data["order"])
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"bad group payload: {exc}") from exc
    if len(table) != order:
        raise InputFormatError("declared order does not match table size")
    return load_group(table, data.get("names"), **kwargs)


def write_group_file(g: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(json.dumps(group_to_dict(g), indent=1) + "\n")


def read_group_file(path: str | Path, **kwargs) -> FiniteGroup:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON: {exc}") from exc
    return group_from_dict(data, **kwargs)


def write_pc_file(pres: PcPresentation, path: str | Path) -> None:
    Path(path).write_text(json.dumps(pres.to_dict(), indent=1) + "\n")


def read_pc_file(path: str | Path) -> PcPresentation:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON: {exc}") from exc
    return PcPresentation.from_dict(data)
