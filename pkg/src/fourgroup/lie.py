"""Finite-dimensional Lie algebras over F_p given by structure constants.

Brackets are stored on basis pairs and extended bilinearly.  Antisymmetry
and the Jacobi identity are validated exhaustively at load time, as are
the grading axioms when a grading is supplied.  Subspaces carry flags
(subalgebra, ideal, invariant) verified at construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputFormatError, ValidationError
from .fplinalg import (
    FpMatrix,
    FpSubspace,
    Vector,
    check_prime,
    matrix_nilpotency_index,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_reduce,
    vec_scale,
    vec_sub,
    zero_vector,
)


class LieAlgebra:
    """Structure constants c[i][j] = bracket of basis elements i and j."""

    def __init__(
        self,
        prime: int,
        dim: int,
        constants: tuple[tuple[Vector, ...], ...],
        grading: tuple[FpSubspace, ...] | None = None,
        labels: tuple[str, ...] | None = None,
    ):
        self.prime = prime
        self.dim = dim
        self.constants = constants
        self.grading = grading
        self.labels = labels
        self._ad_basis: list[FpMatrix] | None = None

    def bracket(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        p = self.prime
        u = vec_reduce(u, p)
        v = vec_reduce(v, p)
        acc = [0] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.constants[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                cij = row[j]
                c = ui * vj
                for k in range(self.dim):
                    acc[k] += c * cij[k]
        return tuple(x % p for x in acc)

    def ad_matrix(self, a: Sequence[int]) -> FpMatrix:
        """Matrix of x -> [x, a] acting on row vectors."""
        if self._ad_basis is None:
            self._ad_basis = [
                FpMatrix.from_rows(self.prime, [self.constants[t][j] for t in range(self.dim)], cols=self.dim)
                for j in range(self.dim)
            ]
        a = vec_reduce(a, self.prime)
        acc = FpMatrix.zeros(self.prime, self.dim, self.dim)
        for j, c in enumerate(a):
            if c:
                acc = acc.add(self._ad_basis[j].scale(c))
        return acc

    def full_space(self) -> FpSubspace:
        return FpSubspace.full(self.prime, self.dim)

    def zero_space(self) -> FpSubspace:
        return FpSubspace.zero(self.prime, self.dim)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim} over F_{self.prime})"


def load_lie(
    prime: int,
    dim: int,
    brackets: Iterable[tuple[int, int, Sequence[int]]],
    grading: Sequence[FpSubspace] | None = None,
    labels: Sequence[str] | None = None,
) -> LieAlgebra:
    """Build and validate an algebra from sparse bracket data for i < j."""
    check_prime(prime)
    if dim < 0:
        raise ValidationError("dimension must be nonnegative")
    table: list[list[Vector]] = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
    for i, j, vec in brackets:
        if not (0 <= i < j < dim):
            raise ValidationError(f"bracket pair ({i},{j}) must satisfy 0 <= i < j < dim")
        v = vec_reduce(vec, prime)
        if len(v) != dim:
            raise ValidationError(f"bracket ({i},{j}): coefficient vector must have length {dim}")
        table[i][j] = v
        table[j][i] = vec_scale(-1, v, prime)
    constants = tuple(tuple(row) for row in table)
    alg = LieAlgebra(prime, dim, constants, None, tuple(labels) if labels else None)
    _validate_jacobi(alg)
    if grading is not None:
        alg.grading = tuple(grading)
        validate_grading(alg)
    return alg


def from_constants(prime: int, constants: Sequence[Sequence[Sequence[int]]], **kwargs) -> LieAlgebra:
    dim = len(constants)
    brackets = []
    for i in range(dim):
        for j in range(i + 1, dim):
            vec = vec_reduce(constants[i][j], prime)
            if not vec_is_zero(vec):
                brackets.append((i, j, vec))
            anti = vec_reduce(constants[j][i], prime)
            if anti != vec_scale(-1, vec, prime):
                raise ValidationError(f"constants are not antisymmetric at ({i},{j})")
        if not vec_is_zero(vec_reduce(constants[i][i], prime)):
            raise ValidationError(f"[b{i}, b{i}] must vanish")
    return load_lie(prime, dim, brackets, **kwargs)


def _validate_jacobi(alg: LieAlgebra) -> None:
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ei, ej, ek = (unit_vector(n, t) for t in (i, j, k))
                total = alg.bracket(alg.bracket(ei, ej), ek)
                total = vec_add(total, alg.bracket(alg.bracket(ej, ek), ei), alg.prime)
                total = vec_add(total, alg.bracket(alg.bracket(ek, ei), ej), alg.prime)
                if not vec_is_zero(total):
                    raise ValidationError(f"Jacobi identity fails on basis triple ({i},{j},{k})")


def validate_grading(alg: LieAlgebra) -> None:
    """Components independent, spanning, and multiplicative in the weights."""
    if alg.grading is None:
        return
    total = alg.zero_space()
    dim_sum = 0
    for comp in alg.grading:
        dim_sum += comp.dim
        total = total.sum(comp)
    if total.dim != alg.dim or dim_sum != alg.dim:
        raise ValidationError("grading components must be independent and span the algebra")
    top = len(alg.grading)
    for wu, u_comp in enumerate(alg.grading, start=1):
        for wv, v_comp in enumerate(alg.grading, start=1):
            target = alg.grading[wu + wv - 1] if wu + wv <= top else alg.zero_space()
            for urow in u_comp.basis.entries:
                for vrow in v_comp.basis.entries:
                    if not target.contains_vector(alg.bracket(urow, vrow)):
                        raise ValidationError(
                            f"grading violated: [W_{wu}, W_{wv}] escapes W_{wu + wv}"
                        )


@dataclass(frozen=True)
class LieSubspace:
    """A subspace with structural flags verified at construction."""

    algebra: LieAlgebra
    space: FpSubspace
    is_subalgebra: bool = False
    is_ideal: bool = False
    is_invariant: bool = False

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains_vector(self, v: Sequence[int]) -> bool:
        return self.space.contains_vector(v)


def _close_under(
    alg: LieAlgebra,
    start: FpSubspace,
    mode: str,
    action: "LieAction | None",
) -> FpSubspace:
    cur = start
    full_basis = [unit_vector(alg.dim, i) for i in range(alg.dim)]
    while True:
        new_vecs: list[Vector] = []
        basis = list(cur.basis.entries)
        partners = basis if mode == "subalgebra" else full_basis
        for u in basis:
            for v in partners:
                w = alg.bracket(u, v)
                if not cur.contains_vector(w):
                    new_vecs.append(w)
        if mode == "invariant_ideal" and action is not None:
            for name in action.generator_names():
                mat = action.matrix(name)
                for u in basis:
                    w = mat.apply(u)
                    if not cur.contains_vector(w):
                        new_vecs.append(w)
        if not new_vecs:
            return cur
        cur = cur.sum(FpSubspace.from_vectors(alg.prime, alg.dim, new_vecs))


def generate(
    alg: LieAlgebra,
    vectors: Iterable[Sequence[int]],
    mode: str = "subalgebra",
    action: "LieAction | None" = None,
) -> LieSubspace:
    """Smallest subalgebra / ideal / invariant ideal containing the vectors."""
    if mode not in ("subalgebra", "ideal", "invariant_ideal"):
        raise ValidationError(f"unknown generate mode {mode!r}")
    if mode == "invariant_ideal" and action is None:
        raise ValidationError("invariant_ideal mode needs an action")
    if mode != "invariant_ideal" and action is not None:
        raise ValidationError(f"mode {mode!r} does not take an action")
    start = FpSubspace.from_vectors(alg.prime, alg.dim, list(vectors))
    space = _close_under(alg, start, mode, action)
    return LieSubspace(
        alg,
        space,
        is_subalgebra=True,
        is_ideal=mode in ("ideal", "invariant_ideal"),
        is_invariant=mode == "invariant_ideal",
    )


def span_bracket(alg: LieAlgebra, a: FpSubspace, b: FpSubspace) -> FpSubspace:
    vecs = [alg.bracket(u, v) for u in a.basis.entries for v in b.basis.entries]
    return FpSubspace.from_vectors(alg.prime, alg.dim, vecs)


def lie_series(alg: LieAlgebra, kind: str) -> tuple[list[FpSubspace], int | None, bool]:
    """Lower central or derived series until stable.

    Returns (terms, class-or-length, terminated).  The class (resp. derived
    length) is None when the series stabilizes above zero.
    """
    full = alg.full_space()
    if kind == "lower_central":
        terms = [full]
        while True:
            nxt = span_bracket(alg, terms[-1], full)
            if nxt == terms[-1]:
                break
            terms.append(nxt)
            if nxt.dim == 0:
                break
        terminated = terms[-1].dim == 0
        cls = len(terms) - 1 if terminated else None
        return terms, cls, terminated
    if kind == "derived":
        terms = [full]
        while True:
            nxt = span_bracket(alg, terms[-1], terms[-1])
            if nxt == terms[-1]:
                break
            terms.append(nxt)
            if nxt.dim == 0:
                break
        terminated = terms[-1].dim == 0
        length = len(terms) - 1 if terminated else None
        return terms, length, terminated
    raise ValidationError(f"unknown series kind {kind!r}")


def nilpotency_class_of(alg: LieAlgebra) -> int | None:
    return lie_series(alg, "lower_central")[1]


def derived_length_of(alg: LieAlgebra) -> int | None:
    return lie_series(alg, "derived")[1]


def ad_index(alg: LieAlgebra, a: Sequence[int]) -> int | None:
    """Least m with (ad a)^m = 0, or None when ad a is not nilpotent."""
    return matrix_nilpotency_index(alg.ad_matrix(a))


def lie_centralizer(alg: LieAlgebra, s: Iterable[Sequence[int]] | LieSubspace | FpSubspace) -> LieSubspace:
    """C_L(S): everything whose bracket with a spanning set of S vanishes."""
    if isinstance(s, LieSubspace):
        vectors = list(s.space.basis.entries)
    elif isinstance(s, FpSubspace):
        vectors = list(s.basis.entries)
    else:
        vectors = [vec_reduce(v, alg.prime) for v in s]
    if not vectors:
        return LieSubspace(alg, alg.full_space(), is_subalgebra=True)
    stacked_cols: list[Vector] = []
    for v in vectors:
        mat = alg.ad_matrix(v)
        stacked_cols.extend(mat.transpose().entries)
    stacked = FpMatrix.from_rows(alg.prime, stacked_cols, cols=alg.dim)
    from .fplinalg import nullspace

    kernel = nullspace(stacked)
    space = FpSubspace.from_vectors(alg.prime, alg.dim, kernel.entries)
    sub = LieSubspace(alg, space, is_subalgebra=_is_subalgebra(alg, space))
    return sub


def _is_subalgebra(alg: LieAlgebra, space: FpSubspace) -> bool:
    return all(
        space.contains_vector(alg.bracket(u, v))
        for u in space.basis.entries
        for v in space.basis.entries
    )


def center_of(alg: LieAlgebra) -> LieSubspace:
    return lie_centralizer(alg, alg.full_space())


class LieAction:
    """Invertible bracket-preserving matrices for v1, v2 and optionally alpha.

    Vectors transform as rows: the image of x under the element named a is
    x times the matrix of a, and matrices of products compose left factor
    first.  v3 is always derived as v1 v2.
    """

    def __init__(self, algebra: LieAlgebra, acting_type: str, matrices: dict[str, FpMatrix]):
        if acting_type not in ("V", "D8"):
            raise ValidationError("Lie actions support acting types V and D8")
        needed = ("v1", "v2") if acting_type == "V" else ("v1", "v2", "alpha")
        if set(matrices) != set(needed):
            raise ValidationError(f"{acting_type} Lie action needs matrices {needed}")
        self.algebra = algebra
        self.acting_type = acting_type
        self.matrices = dict(matrices)
        self._validate()

    def generator_names(self) -> tuple[str, ...]:
        return ("v1", "v2") if self.acting_type == "V" else ("v1", "v2", "alpha")

    def matrix(self, name: str) -> FpMatrix:
        if name == "v3":
            return self.matrices["v1"].mul(self.matrices["v2"])
        return self.matrices[name]

    def apply(self, name: str, v: Sequence[int]) -> Vector:
        return self.matrix(name).apply(vec_reduce(v, self.algebra.prime))

    def _validate(self) -> None:
        alg = self.algebra
        n = alg.dim
        ident = FpMatrix.identity(alg.prime, n)
        for name, mat in self.matrices.items():
            if (mat.rows, mat.cols) != (n, n):
                raise ValidationError(f"{name}: matrix shape must be {n}x{n}")
            if not mat.is_invertible():
                raise ValidationError(f"{name}: matrix is not invertible")
            for i in range(n):
                for j in range(i + 1, n):
                    lhs = alg.bracket(mat.row(i), mat.row(j))
                    rhs = mat.apply(alg.constants[i][j])
                    if lhs != rhs:
                        raise ValidationError(f"{name}: bracket not preserved on pair ({i},{j})")
        v1, v2 = self.matrices["v1"], self.matrices["v2"]
        if v1.mul(v1) != ident or v2.mul(v2) != ident:
            raise ValidationError("v1 and v2 must be involutions")
        if v1.mul(v2) != v2.mul(v1):
            raise ValidationError("v1 and v2 must commute")
        if self.acting_type == "D8":
            alpha = self.matrices["alpha"]
            if alpha.mul(alpha) != ident:
                raise ValidationError("alpha must be an involution")
            if alpha.mul(v1).mul(alpha) != v2:
                raise ValidationError("alpha must conjugate v1 to v2")

    def fixed_space(self, name: str) -> FpSubspace:
        mat = self.matrix(name)
        diff = mat.sub(FpMatrix.identity(self.algebra.prime, self.algebra.dim))
        from .fplinalg import nullspace

        # Row convention: fixed vectors satisfy x (M - I) = 0.
        kernel = nullspace(diff.transpose())
        return FpSubspace.from_vectors(self.algebra.prime, self.algebra.dim, kernel.entries)

    def fixed_space_of_v(self) -> FpSubspace:
        return self.fixed_space("v1").intersect(self.fixed_space("v2"))


def v_grading(alg: LieAlgebra, action: LieAction) -> tuple[LieSubspace, LieSubspace, LieSubspace]:
    """The decomposition L = L1 + L2 + L3 into centralizers of the v_i.

    Every structural consequence of a fixed-point-free four-group action is
    asserted as a hard error: failure means invalid input or a bug, not a
    reportable finding.
    """
    if action.fixed_space_of_v().dim != 0:
        raise ValidationError("C_L(V) is not zero; the action is not fixed point free")
    spaces = [action.fixed_space(f"v{i}") for i in (1, 2, 3)]
    n = alg.dim
    if sum(s.dim for s in spaces) != n:
        raise ValidationError("component dimensions do not sum to dim L")
    total = spaces[0].sum(spaces[1]).sum(spaces[2])
    if total.dim != n:
        raise ValidationError("components do not span L")
    for i, s in enumerate(spaces, start=1):
        for u in s.basis.entries:
            for v in s.basis.entries:
                if not vec_is_zero(alg.bracket(u, v)):
                    raise ValidationError(f"component L_{i} is not abelian")
        for j in (1, 2, 3):
            if j == i:
                continue
            mat = action.matrix(f"v{j}")
            for u in s.basis.entries:
                if mat.apply(u) != vec_scale(-1, u, alg.prime):
                    raise ValidationError(f"v_{j} does not negate L_{i}")
    cyclic = {(1, 2): 3, (2, 3): 1, (3, 1): 2}
    for (i, j), k in cyclic.items():
        target = spaces[k - 1]
        for u in spaces[i - 1].basis.entries:
            for v in spaces[j - 1].basis.entries:
                if not target.contains_vector(alg.bracket(u, v)):
                    raise ValidationError(f"[L_{i}, L_{j}] escapes L_{k}")
    if action.acting_type == "D8":
        alpha = action.matrix("alpha")
        image1 = FpSubspace.from_vectors(alg.prime, n, [alpha.apply(u) for u in spaces[0].basis.entries])
        if image1 != spaces[1]:
            raise ValidationError("alpha does not map L_1 onto L_2")
        image3 = FpSubspace.from_vectors(alg.prime, n, [alpha.apply(u) for u in spaces[2].basis.entries])
        if image3 != spaces[2]:
            raise ValidationError("alpha does not preserve L_3")
    return tuple(
        LieSubspace(alg, s, is_subalgebra=True, is_invariant=True) for s in spaces
    )


def component_projections(
    alg: LieAlgebra, components: tuple[LieSubspace, LieSubspace, LieSubspace], v: Sequence[int]
) -> tuple[Vector, Vector, Vector]:
    """Split v into its three component parts."""
    p, n = alg.prime, alg.dim
    rows = []
    sizes = []
    for comp in components:
        rows.extend(comp.space.basis.entries)
        sizes.append(comp.space.dim)
    from .fplinalg import solve_row

    combo = solve_row(FpMatrix.from_rows(p, rows, cols=n), vec_reduce(v, p))
    if combo is None:
        raise ValidationError("vector is outside the component sum")
    parts = []
    offset = 0
    for comp, size in zip(components, sizes):
        part = zero_vector(n)
        for c, row in zip(combo[offset : offset + size], comp.space.basis.entries):
            if c:
                part = vec_add(part, vec_scale(c, row, p), p)
        parts.append(part)
        offset += size
    return tuple(parts)


def quotient_algebra(
    alg: LieAlgebra, ideal: LieSubspace, action: LieAction | None = None
) -> tuple[LieAlgebra, FpMatrix, LieAction | None]:
    """Quotient by an ideal, with the induced action when one is given.

    The quotient basis is the coordinate complement of the ideal, taken
    greedily in coordinate order, so structure constants are reproducible.
    A stored grading is pushed forward only if the images still satisfy the
    grading axioms; otherwise the quotient carries no grading.
    """
    if not ideal.is_ideal:
        raise ValidationError("quotient needs a verified ideal")
    if action is not None and not ideal.is_invariant:
        raise ValidationError("quotient with an action needs an invariant ideal")
    p, n = alg.prime, alg.dim
    comp_idx = ideal.space.coordinate_complement()
    qdim = len(comp_idx)
    basis_rows = list(ideal.space.basis.entries) + [unit_vector(n, i) for i in comp_idx]
    basis_mat = FpMatrix.from_rows(p, basis_rows, cols=n)
    from .fplinalg import solve_row

    def project(v: Sequence[int]) -> Vector:
        combo = solve_row(basis_mat, vec_reduce(v, p))
        if combo is None:
            raise ValidationError("projection failed; basis is not complete")
        return tuple(combo[ideal.space.dim :])

    projection = FpMatrix.from_rows(p, [project(unit_vector(n, i)) for i in range(n)], cols=qdim)
    brackets = []
    for a in range(qdim):
        for b in range(a + 1, qdim):
            vec = project(alg.bracket(unit_vector(n, comp_idx[a]), unit_vector(n, comp_idx[b])))
            if not vec_is_zero(vec):
                brackets.append((a, b, vec))
    labels = tuple(alg.label(i) for i in comp_idx) if alg.labels else None
    qalg = load_lie(p, qdim, brackets, labels=labels)
    if alg.grading is not None:
        pushed = []
        ok = True
        for compspace in alg.grading:
            image = FpSubspace.from_vectors(p, qdim, [project(r) for r in compspace.basis.entries])
            pushed.append(image)
        qalg.grading = tuple(pushed)
        try:
            validate_grading(qalg)
        except ValidationError:
            qalg.grading = None
    qaction = None
    if action is not None:
        mats = {}
        for name in action.generator_names():
            rows = [project(action.matrix(name).apply(unit_vector(n, comp_idx[a]))) for a in range(qdim)]
            mats[name] = FpMatrix.from_rows(p, rows, cols=qdim)
        qaction = LieAction(qalg, action.acting_type, mats)
    return qalg, projection, qaction


def restrict_to_subalgebra(
    alg: LieAlgebra, sub: LieSubspace, action: LieAction | None = None
) -> tuple[LieAlgebra, FpMatrix, LieAction | None]:
    """Extract a subalgebra as a standalone algebra on its echelon basis.

    Returns (algebra, inclusion matrix whose rows are the chosen basis, and
    the restricted action when one is given and the subspace is invariant).
    """
    if not sub.is_subalgebra:
        raise ValidationError("restriction needs a verified subalgebra")
    p = alg.prime
    rows = list(sub.space.basis.entries)
    k = len(rows)
    inclusion = FpMatrix.from_rows(p, rows, cols=alg.dim)
    brackets = []
    for a in range(k):
        for b in range(a + 1, k):
            w = alg.bracket(rows[a], rows[b])
            coords = sub.space.coordinates_of(w)
            if coords is None:
                raise ValidationError("bracket escapes the subalgebra")
            if not vec_is_zero(coords):
                brackets.append((a, b, coords))
    salg = load_lie(p, k, brackets)
    saction = None
    if action is not None:
        mats = {}
        for name in action.generator_names():
            srows = []
            for r in rows:
                image = action.matrix(name).apply(r)
                coords = sub.space.coordinates_of(image)
                if coords is None:
                    raise ValidationError(f"{name} does not preserve the subalgebra")
                srows.append(coords)
            mats[name] = FpMatrix.from_rows(p, srows, cols=k)
        saction = LieAction(salg, action.acting_type, mats)
    return salg, inclusion, saction


# -- file format --------------------------------------------------------------


def lie_to_dict(alg: LieAlgebra, action: LieAction | None = None) -> dict:
    brackets = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            vec = alg.constants[i][j]
            if not vec_is_zero(vec):
                brackets.append([i, j, list(vec)])
    data: dict = {"prime": alg.prime, "dim": alg.dim, "brackets": brackets}
    if alg.grading is not None:
        data["grading"] = [comp.basis.to_lists() for comp in alg.grading]
    if alg.labels:
        data["labels"] = list(alg.labels)
    if action is not None:
        data["action"] = {"acting_type": action.acting_type}
        for name in action.generator_names():
            data["action"][name] = action.matrix(name).to_lists()
    return data


def lie_from_dict(data: dict) -> tuple[LieAlgebra, LieAction | None]:
    try:
        prime = int(data["prime"])
        dim = int(data["dim"])
        brackets = [(int(i), int(j), [int(c) for c in vec]) for i, j, vec in data["brackets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad lie algebra payload: {exc}") from exc
    grading = None
    if "grading" in data:
        grading = [FpSubspace.from_vectors(prime, dim, rows) for rows in data["grading"]]
    alg = load_lie(prime, dim, brackets, grading=grading, labels=data.get("labels"))
    action = None
    if "action" in data:
        spec = data["action"]
        try:
            kind = spec["acting_type"]
            mats = {
                name: FpMatrix.from_rows(prime, spec[name], cols=dim)
                for name in (("v1", "v2") if kind == "V" else ("v1", "v2", "alpha"))
            }
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"bad lie action payload: {exc}") from exc
        action = LieAction(alg, kind, mats)
    return alg, action


def write_lie_file(alg: LieAlgebra, path: str | Path, action: LieAction | None = None) -> None:
    Path(path).write_text(json.dumps(lie_to_dict(alg, action), indent=1) + "\n")


def read_lie_file(path: str | Path) -> tuple[LieAlgebra, LieAction | None]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON: {exc}") from exc
    return lie_from_dict(data)
