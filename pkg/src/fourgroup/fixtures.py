"""Deterministic groups-with-actions covering every hypothesis combination.

heisenberg_d8: extraspecial p^3 of exponent p with the dihedral action,
the smallest family where the derived group is nontrivial.
cube_s4: elementary abelian p^3 acted on by the even-signed permutation
matrices, the S4 family.
affine_v: F_q^2 semidirect C_3 with a four-group action, the non-nilpotent
family (its derived group is the translation plane).
product_fixture: diagonal actions on direct products, for scaling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .actions import ActionSpec, GroupAction, build_action, write_action_file
from .fplinalg import check_prime
from .groups import (
    DEFAULT_ORDER_CAP,
    FULL_ASSOC_LIMIT,
    FiniteGroup,
    PcPresentation,
    derived_subgroup,
    from_pc_presentation,
    load_group,
    trivial_group,
    write_group_file,
)

FIXTURE_FAMILIES = ("heisenberg_d8", "cube_s4", "affine_v")


@dataclass(frozen=True)
class Fixture:
    name: str
    prime: int
    group: FiniteGroup
    spec: ActionSpec
    action: GroupAction
    expected: dict

    def components(self):
        from .vtheory import v_components

        return v_components(self.group, self.action)


def _verify_expected(fix: Fixture) -> Fixture:
    g = fix.group
    exp = fix.expected
    checks = {
        "order": g.order,
        "exponent": g.exponent(),
        "exp_G_derived": derived_subgroup(g).exponent(),
    }
    for key, got in checks.items():
        if exp[key] != got:
            raise ValidationError(f"{fix.name}: expected {key}={exp[key]}, computed {got}")
    comps = fix.components()
    if list(exp["component_orders"]) != list(comps.component_orders()):
        raise ValidationError(
            f"{fix.name}: expected component orders {exp['component_orders']}, "
            f"computed {list(comps.component_orders())}"
        )
    if exp.get("exp_C_alpha") is not None:
        c_alpha = fix.action.fixed_subgroup(["alpha"])
        if c_alpha.exponent() != exp["exp_C_alpha"]:
            raise ValidationError(f"{fix.name}: exp C_G(alpha) mismatch")
    return fix


def heisenberg_group(p: int) -> FiniteGroup:
    """Extraspecial group of order p^3 and exponent p, built by collection."""
    check_prime(p)
    zero = (0,) * 3
    pres = PcPresentation(p, 3, (zero, zero, zero), ((1, 0, (0, 0, p - 1)),))
    return from_pc_presentation(pres)


def _heis_perm(p: int, fn) -> np.ndarray:
    n = p**3
    idx = np.arange(n)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    a2, b2, c2 = fn(a, b, c)
    return ((a2 % p) * p + (b2 % p)) * p + (c2 % p)


def heisenberg_d8(p: int) -> Fixture:
    """Heisenberg group with v1 fixing x, v2 fixing y, alpha swapping them.

    alpha sends x^a y^b z^c to x^b y^a z^(-c-ab), the unique extension of
    the swap compatible with z = [x, y].
    """
    check_prime(p)
    g = heisenberg_group(p)
    spec = ActionSpec(
        "D8",
        {
            "v1": _heis_perm(p, lambda a, b, c: (a, -b, -c)),
            "v2": _heis_perm(p, lambda a, b, c: (-a, b, -c)),
            "alpha": _heis_perm(p, lambda a, b, c: (b, a, -c - a * b)),
        },
    )
    action = build_action(g, spec)
    expected = {
        "order": p**3,
        "exponent": p,
        "component_orders": [p, p, p],
        "exp_G_derived": p,
        "exp_C_alpha": p,
        "e_value": p,
    }
    return _verify_expected(Fixture(f"heisenberg_d8_p{p}", p, g, spec, action, expected))


def elementary_abelian_cube(p: int) -> FiniteGroup:
    n = p**3
    idx = np.arange(n)
    u = np.stack([idx // (p * p), (idx // p) % p, idx % p])
    table = (
        ((u[0][:, None] + u[0][None, :]) % p) * p * p
        + ((u[1][:, None] + u[1][None, :]) % p) * p
        + ((u[2][:, None] + u[2][None, :]) % p)
    )
    return load_group(table, check_associativity=n <= FULL_ASSOC_LIMIT)


def _cube_perm(p: int, fn) -> np.ndarray:
    n = p**3
    idx = np.arange(n)
    u0, u1, u2 = idx // (p * p), (idx // p) % p, idx % p
    w0, w1, w2 = fn(u0, u1, u2)
    return (w0 % p) * p * p + (w1 % p) * p + (w2 % p)


def cube_s4(p: int) -> Fixture:
    """C_p^3 with the group of signed coordinate permutations of even sign
    pattern, an S4 whose maximal normal 2-subgroup is the diagonal four-group."""
    check_prime(p)
    g = elementary_abelian_cube(p)
    spec = ActionSpec(
        "S4",
        {
            "v1": _cube_perm(p, lambda a, b, c: (a, -b, -c)),
            "v2": _cube_perm(p, lambda a, b, c: (-a, b, -c)),
            "alpha": _cube_perm(p, lambda a, b, c: (b, a, c)),
            "beta": _cube_perm(p, lambda a, b, c: (b, c, a)),
        },
    )
    action = build_action(g, spec)
    expected = {
        "order": p**3,
        "exponent": p,
        "component_orders": [p, p, p],
        "exp_G_derived": 1,
        "exp_C_alpha": p,
        "e_value": p,
    }
    return _verify_expected(Fixture(f"cube_s4_p{p}", p, g, spec, action, expected))


def affine_group(q: int) -> FiniteGroup:
    """F_q^2 semidirect C_3, the C_3 acting by the companion matrix of
    x^2 + x + 1 (irreducible exactly when q = 2 mod 3)."""
    n = 3 * q * q
    idx = np.arange(n)
    j = idx % 3
    w2 = (idx // 3) % q
    w1 = idx // (3 * q)
    m_pows = _affine_m_powers(q)
    table = np.empty((n, n), dtype=np.int64)
    for jx in (0, 1, 2):
        rows = np.flatnonzero(j == jx)
        m = m_pows[jx]
        ty1 = (m[0][0] * w1 + m[0][1] * w2) % q
        ty2 = (m[1][0] * w1 + m[1][1] * w2) % q
        res1 = (w1[rows][:, None] + ty1[None, :]) % q
        res2 = (w2[rows][:, None] + ty2[None, :]) % q
        resj = (jx + j[None, :]) % 3
        table[rows, :] = (res1 * q + res2) * 3 + resj
    return load_group(table, check_associativity=n <= FULL_ASSOC_LIMIT)


def _affine_m_powers(q: int):
    m = [[0, q - 1], [1, q - 1]]
    m2 = _mat2_mul(m, m, q)
    ident = [[1, 0], [0, 1]]
    # The companion matrix of x^2+x+1 is a cube root of the identity.
    if _mat2_mul(m2, m, q) != ident:
        raise ValidationError("companion matrix is not of order 3")
    return [ident, m, m2]


def _mat2_mul(a, b, q):
    return [
        [(a[0][0] * b[0][0] + a[0][1] * b[1][0]) % q, (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % q],
        [(a[1][0] * b[0][0] + a[1][1] * b[1][0]) % q, (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % q],
    ]


def _affine_perm(q: int, wfn, jfn) -> np.ndarray:
    n = 3 * q * q
    idx = np.arange(n)
    j = idx % 3
    w2 = (idx // 3) % q
    w1 = idx // (3 * q)
    r1, r2 = wfn(w1, w2)
    rj = jfn(j)
    return ((r1 % q) * q + (r2 % q)) * 3 + (rj % 3)


def affine_v(q: int) -> Fixture:
    """The non-nilpotent family: G = F_q^2 x| C_3 of order 3q^2.

    v3 negates the translation plane; v1 acts by sigma = [[1,-1],[0,-1]]
    and inverts the C_3 part, which is compatible because sigma conjugates
    the companion matrix to its square.
    """
    check_prime(q)
    if q < 5 or q % 3 != 2:
        raise ValidationError(f"affine_v needs a prime q >= 5 with q = 2 mod 3, got {q}")
    m = [[0, q - 1], [1, q - 1]]
    sigma = [[1, q - 1], [0, q - 1]]
    if _mat2_mul(sigma, sigma, q) != [[1, 0], [0, 1]]:
        raise ValidationError("sigma is not an involution")
    m2 = _mat2_mul(m, m, q)
    if _mat2_mul(_mat2_mul(sigma, m, q), sigma, q) != m2:
        raise ValidationError("sigma does not conjugate the companion matrix to its square")
    g = affine_group(q)
    spec = ActionSpec(
        "V",
        {
            "v1": _affine_perm(q, lambda a, b: (a - b, -b), lambda j: -j),
            "v2": _affine_perm(q, lambda a, b: (b - a, b), lambda j: -j),
        },
    )
    action = build_action(g, spec)
    expected = {
        "order": 3 * q * q,
        "exponent": 3 * q,
        "component_orders": [q, q, 3],
        "exp_G_derived": q,
        "exp_C_alpha": None,
        "e_value": q,
    }
    return _verify_expected(Fixture(f"affine_v_q{q}", q, g, spec, action, expected))


def trivial_fixture(acting_type: str = "V") -> Fixture:
    g = trivial_group()
    names = {"V": ("v1", "v2"), "D8": ("v1", "v2", "alpha"), "S4": ("v1", "v2", "alpha", "beta")}
    spec = ActionSpec(acting_type, {n: np.zeros(1, dtype=np.int64) for n in names[acting_type]})
    action = build_action(g, spec)
    expected = {
        "order": 1,
        "exponent": 1,
        "component_orders": [1, 1, 1],
        "exp_G_derived": 1,
        "exp_C_alpha": 1 if acting_type != "V" else None,
        "e_value": 1,
    }
    return _verify_expected(Fixture(f"trivial_{acting_type}", 1, g, spec, action, expected))


def product_fixture(f1: Fixture, f2: Fixture) -> Fixture:
    """Direct product with the diagonal action; acting types must agree."""
    if f1.spec.acting_type != f2.spec.acting_type:
        raise ValidationError("product fixtures need the same acting type")
    n1, n2 = f1.group.order, f2.group.order
    if n1 * n2 > DEFAULT_ORDER_CAP:
        raise ValidationError(f"product order {n1 * n2} exceeds cap {DEFAULT_ORDER_CAP}")
    from .groups import direct_product

    g = direct_product(f1.group, f2.group)
    images = {}
    for name in f1.action.acting.generator_names:
        p1 = f1.action.perm(name).astype(np.int64)
        p2 = f2.action.perm(name).astype(np.int64)
        images[name] = (p1[:, None] * n2 + p2[None, :]).ravel()
    spec = ActionSpec(f1.spec.acting_type, images)
    action = build_action(g, spec)
    e1, e2 = f1.expected, f2.expected
    expected = {
        "order": e1["order"] * e2["order"],
        "exponent": math.lcm(e1["exponent"], e2["exponent"]),
        "component_orders": [a * b for a, b in zip(e1["component_orders"], e2["component_orders"])],
        "exp_G_derived": math.lcm(e1["exp_G_derived"], e2["exp_G_derived"]),
        "exp_C_alpha": (
            math.lcm(e1["exp_C_alpha"], e2["exp_C_alpha"])
            if e1.get("exp_C_alpha") and e2.get("exp_C_alpha")
            else None
        ),
        "e_value": math.lcm(e1["e_value"], e2["e_value"]),
    }
    name = f"product({f1.name},{f2.name})"
    return _verify_expected(Fixture(name, f1.prime, g, spec, action, expected))


def build_fixture(family: str, param: int) -> Fixture:
    builders = {"heisenberg_d8": heisenberg_d8, "cube_s4": cube_s4, "affine_v": affine_v}
    if family not in builders:
        raise ValidationError(f"unknown fixture family {family!r}; known: {sorted(builders)}")
    return builders[family](param)


def parse_fixture_selector(selector: str) -> Fixture:
    """Build from a name like ``heisenberg_d8:3`` or a product of two such
    separated by ``x``."""
    if "x" in selector:
        left, right = selector.split("x", 1)
        return product_fixture(parse_fixture_selector(left), parse_fixture_selector(right))
    try:
        family, param = selector.rsplit(":", 1)
        return build_fixture(family.strip(), int(param))
    except ValueError as exc:
        raise ValidationError(f"bad fixture selector {selector!r}: {exc}") from exc


DEFAULT_FIXTURE_SELECTORS = (
    "heisenberg_d8:3",
    "heisenberg_d8:5",
    "cube_s4:3",
    "cube_s4:5",
    "affine_v:5",
    "affine_v:11",
)


def write_fixture_files(fix: Fixture, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    base = fix.name.replace("(", "_").replace(")", "").replace(",", "_")
    group_path = outdir / f"{base}.group.json"
    action_path = outdir / f"{base}.action.json"
    expected_path = outdir / f"{base}.expected.json"
    write_group_file(fix.group, group_path)
    write_action_file(fix.spec, action_path)
    payload = {"name": fix.name, "prime": fix.prime, "acting_type": fix.spec.acting_type}
    payload.update(fix.expected)
    expected_path.write_text(json.dumps(payload, indent=1) + "\n")
    return [group_path, action_path, expected_path]
