"""Rational polyhedral cones in the space of symmetric g x g matrices.

The ambient lattice is Lambda = scale * Sym_g(Z) with the standard basis
delta_{ii} = E_ii, delta_{ij} = E_ij + E_ji (i < j), listed in the order
(1,1),(1,2),...,(1,g),(2,2),...,(g,g).  Cones are simplicial and marked:
the generators carry a fixed order.  GL(g,Z) acts by A -> f A f^T.

All predicates here are exact (integer / Fraction arithmetic); membership
and intersection questions reduce to rational linear feasibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactlp import cone_membership, feasible_eq_nonneg

IntMatrix = tuple[tuple[int, ...], ...]


class NotInLatticeError(ValueError):
    """Matrix entries are not divisible by the lattice scale."""


class DegenerateConeError(ValueError):
    """The generators do not span a full-dimensional cone."""


class ConeShapeError(ValueError):
    """Structurally invalid cone or group data."""


def sym_dim(g: int) -> int:
    """Dimension N = g(g+1)/2 of Sym_g."""
    return g * (g + 1) // 2


def delta_index_pairs(g: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i <= j, in the fixed basis order (0-based)."""
    return [(i, j) for i in range(g) for j in range(i, g)]


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    mat = tuple(tuple(int(v) for v in row) for row in rows)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ConeShapeError("matrix is not square")
    return mat


def is_symmetric(m: IntMatrix) -> bool:
    g = len(m)
    return all(m[i][j] == m[j][i] for i in range(g) for j in range(i + 1, g))


def delta_basis(g: int) -> list[IntMatrix]:
    """Standard Z-basis of Sym_g(Z): E_ii and E_ij + E_ji for i < j."""
    if g < 1:
        raise ConeShapeError(f"g must be positive, got {g}")
    basis = []
    for i, j in delta_index_pairs(g):
        rows = [[0] * g for _ in range(g)]
        rows[i][j] = 1
        rows[j][i] = 1
        if i == j:
            rows[i][i] = 1
        basis.append(as_int_matrix(rows))
    return basis


def zeta_matrix(g: int, i: int, j: int) -> IntMatrix:
    """Principal-cone edge generators: E_ii on the diagonal and
    -E_ij - E_ji + E_ii + E_jj off it (0-based indices, i <= j)."""
    rows = [[0] * g for _ in range(g)]
    if i == j:
        rows[i][i] = 1
    else:
        rows[i][i] = 1
        rows[j][j] = 1
        rows[i][j] = -1
        rows[j][i] = -1
    return as_int_matrix(rows)


def coords_in_lattice(m: Sequence[Sequence[int]], scale: int) -> tuple[int, ...]:
    """Coordinates c with m = scale * sum_k c_k delta_k.

    Raises NotInLatticeError when some entry is not divisible by scale.
    """
    mat = as_int_matrix(m)
    if not is_symmetric(mat):
        raise ConeShapeError("matrix is not symmetric")
    if scale < 1:
        raise ConeShapeError(f"scale must be positive, got {scale}")
    g = len(mat)
    coords = []
    for i, j in delta_index_pairs(g):
        v = mat[i][j]
        if v % scale != 0:
            raise NotInLatticeError(
                f"entry ({i + 1},{j + 1})={v} not divisible by scale {scale}")
        coords.append(v // scale)
    return tuple(coords)


def matrix_from_coords(coords: Sequence[int | Fraction], g: int):
    """Symmetric matrix with the given delta-basis coordinates."""
    rows = [[Fraction(0)] * g for _ in range(g)]
    for (i, j), c in zip(delta_index_pairs(g), coords):
        rows[i][j] = Fraction(c)
        rows[j][i] = Fraction(c)
    return [list(r) for r in rows]


# ----------------------------------------------------------------------
# exact symmetric-matrix predicates


def _frac_rows(m) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in m]


def matrix_rank(m: Sequence[Sequence[int | Fraction]]) -> int:
    rows = _frac_rows(m)
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][c]
        rows[rank] = [v / pv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [vr - f * vp for vr, vp in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def psd_rank(m: Sequence[Sequence[int | Fraction]]) -> Optional[int]:
    """Rank of a symmetric PSD matrix, or None when it is not PSD.

    Symmetric pivoting on positive diagonal entries with exact Schur
    complements: a negative diagonal entry kills semidefiniteness, and a
    PSD matrix with zero diagonal must vanish entirely.
    """
    a = _frac_rows(m)
    n = len(a)
    rank = 0
    active = list(range(n))
    while active:
        diag = [(i, a[i][i]) for i in active]
        if any(v < 0 for _, v in diag):
            return None
        pivot = next((i for i, v in diag if v > 0), None)
        if pivot is None:
            # all active diagonal entries are zero
            for i in active:
                for j in active:
                    if a[i][j] != 0:
                        return None
            return rank
        active.remove(pivot)
        pv = a[pivot][pivot]
        for i in active:
            if a[i][pivot] != 0:
                f = a[i][pivot] / pv
                for j in active:
                    a[i][j] -= f * a[pivot][j]
        rank += 1
    return rank


def is_psd(m) -> bool:
    return psd_rank(m) is not None


def is_positive_definite(m) -> bool:
    r = psd_rank(m)
    return r is not None and r == len(m)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ConeShapeError("determinant of a non-square matrix")
    a = [[int(v) for v in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_divisors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors of an integer matrix."""
    a = [[int(v) for v in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    divisors = []
    top = 0
    while top < m and top < n:
        # locate a minimal nonzero entry in the remaining block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        pivot = a[top][top]
        clean = True
        for i in range(top + 1, m):
            q = a[i][top] // pivot
            if q:
                a[i] = [vi - q * vt for vi, vt in zip(a[i], a[top])]
            if a[i][top] != 0:
                clean = False
        for j in range(top + 1, n):
            q = a[top][j] // pivot
            if q:
                for row in a:
                    row[j] -= q * row[top]
            if a[top][j] != 0:
                clean = False
        if not clean:
            continue
        # ensure the pivot divides the remaining block
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[top] = [vt + vo for vt, vo in zip(a[top], a[offender])]
            continue
        divisors.append(abs(pivot))
        top += 1
    return divisors


# ----------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class MarkedCone:
    """Simplicial cone in scale*Sym_g(Z) with an ordered generator list."""

    g: int
    scale: int
    generators: tuple[IntMatrix, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.g < 1:
            raise ConeShapeError(f"g must be positive, got {self.g}")
        if self.scale < 1:
            raise ConeShapeError(f"scale must be positive, got {self.scale}")
        n = sym_dim(self.g)
        gens = tuple(as_int_matrix(m) for m in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ConeShapeError("cone needs at least one generator")
        if len(gens) > n:
            raise ConeShapeError(
                f"{len(gens)} generators exceed dim Sym_{self.g} = {n}")
        coords = []
        for idx, m in enumerate(gens):
            if len(m) != self.g:
                raise ConeShapeError(f"generator {idx} is not {self.g}x{self.g}")
            if not is_symmetric(m):
                raise ConeShapeError(f"generator {idx} is not symmetric")
            if all(v == 0 for row in m for v in row):
                raise ConeShapeError(f"generator {idx} is zero")
            coords.append(coords_in_lattice(m, self.scale))
        for i in range(len(coords)):
            for j in range(i + 1, len(coords)):
                if _proportional(coords[i], coords[j]):
                    raise ConeShapeError(f"generators {i} and {j} are proportional")
        if matrix_rank(coords) != len(coords):
            raise ConeShapeError("generators are linearly dependent (cone not simplicial)")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(gens):
                raise ConeShapeError("labels/generators length mismatch")
            object.__setattr__(self, "labels", labels)

    @property
    def nvars(self) -> int:
        return sym_dim(self.g)

    def coordinate_rows(self) -> list[tuple[int, ...]]:
        """Generator coordinates relative to the lattice scale*delta basis."""
        return [coords_in_lattice(m, self.scale) for m in self.generators]

    def rays(self) -> set[tuple[int, ...]]:
        """Primitive ray directions of the generators."""
        return {primitive_ray(r) for r in self.coordinate_rows()}


def _proportional(u: Sequence[int], v: Sequence[int]) -> bool:
    # nonzero integer vectors u, v: proportional iff cross terms all vanish
    pairs = [(a, b) for a, b in zip(u, v)]
    return all(a * d == c * b for (a, b) in pairs for (c, d) in pairs)


def primitive_ray(vec: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*(abs(v) for v in vec))
    if g == 0:
        raise ConeShapeError("zero vector has no ray")
    return tuple(v // g for v in vec)


@dataclass(frozen=True)
class GroupElement:
    """Unimodular integer matrix acting on Sym_g by A -> f A f^T."""

    matrix: IntMatrix

    def __post_init__(self):
        mat = as_int_matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        d = int_det(mat)
        if d not in (1, -1):
            raise ConeShapeError(f"matrix has determinant {d}, expected +-1")

    @property
    def g(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class Fan:
    """A list of marked cones sharing g and scale, to be checked by is_fan."""

    cones: tuple[MarkedCone, ...]

    def __post_init__(self):
        cones = tuple(self.cones)
        object.__setattr__(self, "cones", cones)
        if not cones:
            raise ConeShapeError("empty fan")
        g, scale = cones[0].g, cones[0].scale
        for c in cones:
            if c.g != g or c.scale != scale:
                raise ConeShapeError("fan cones disagree on g or scale")

    @property
    def g(self) -> int:
        return self.cones[0].g

    @property
    def scale(self) -> int:
        return self.cones[0].scale


@dataclass(frozen=True)
class EdgeClass:
    kind: str                     # "interior" | "boundary" | "invalid"
    rank: Optional[int] = None    # None only for invalid edges
    flagged: bool = False         # rank strictly between 1 and g


# ----------------------------------------------------------------------
# operations


def lattice_volume(c: MarkedCone) -> int:
    """|det| of the generator-coordinate matrix; needs all N generators."""
    n = sym_dim(c.g)
    rows = c.coordinate_rows()
    if len(rows) != n:
        raise DegenerateConeError(
            f"lattice volume needs {n} generators, cone has {len(rows)}")
    d = int_det(rows)
    if d == 0:
        raise DegenerateConeError("generator coordinate matrix is singular")
    return abs(d)


def is_regular(c: MarkedCone) -> bool:
    """True iff the generators extend to a Z-basis of the lattice
    (all elementary divisors of the coordinate matrix equal 1)."""
    rows = c.coordinate_rows()
    divs = smith_divisors(rows)
    if len(divs) != len(rows):
        raise DegenerateConeError("generators are linearly dependent")
    return all(d == 1 for d in divs)


def edge_class(m: Sequence[Sequence[int]]) -> EdgeClass:
    """Classify an edge generator: interior of the positive cone
    (positive definite), boundary (singular PSD, rank reported), or
    invalid (not PSD)."""
    mat = as_int_matrix(m)
    if not is_symmetric(mat):
        raise ConeShapeError("matrix is not symmetric")
    if all(v == 0 for row in mat for v in row):
        raise ConeShapeError("zero matrix has no edge class")
    r = psd_rank(mat)
    if r is None:
        return EdgeClass(kind="invalid")
    g = len(mat)
    if r == g:
        return EdgeClass(kind="interior", rank=g)
    return EdgeClass(kind="boundary", rank=r, flagged=1 < r < g)


def gl_act(gamma: GroupElement, c: MarkedCone) -> MarkedCone:
    """Replace each generator A by gamma A gamma^T, preserving order."""
    if gamma.g != c.g:
        raise ConeShapeError(
            f"group element is {gamma.g}x{gamma.g}, cone has g={c.g}")
    f = gamma.matrix
    g = c.g
    new_gens = []
    for a in c.generators:
        fa = [[sum(f[i][k] * a[k][j] for k in range(g)) for j in range(g)]
              for i in range(g)]
        fat = [[sum(fa[i][k] * f[j][k] for k in range(g)) for j in range(g)]
               for i in range(g)]
        new_gens.append(as_int_matrix(fat))
    return MarkedCone(g=c.g, scale=c.scale, generators=tuple(new_gens),
                      labels=c.labels)


def transform_matrix(gamma: GroupElement, m: Sequence[Sequence[int]]) -> IntMatrix:
    """gamma m gamma^T for a single symmetric matrix."""
    f = gamma.matrix
    g = len(f)
    a = as_int_matrix(m)
    fa = [[sum(f[i][k] * a[k][j] for k in range(g)) for j in range(g)]
          for i in range(g)]
    return as_int_matrix(
        [[sum(fa[i][k] * f[j][k] for k in range(g)) for j in range(g)]
         for i in range(g)])


def cones_meet_nontrivially(a: MarkedCone, b: MarkedCone) -> bool:
    """True iff the cones share a nonzero point.

    Decided exactly: sum lambda_i u_i = sum mu_j v_j with lambda, mu >= 0
    and sum lambda_i = 1 (legitimate normalization because the generators
    of each cone are linearly independent, so no nonzero nonnegative
    combination vanishes).
    """
    if a.g != b.g:
        raise ConeShapeError("cones live in different Sym_g")
    ua = a.coordinate_rows()
    vb = b.coordinate_rows()
    n = sym_dim(a.g)
    sa, sb = Fraction(a.scale), Fraction(b.scale)
    nvars = len(ua) + len(vb)
    rows = []
    rhs = []
    for k in range(n):
        row = [sa * ua[i][k] for i in range(len(ua))]
        row += [-sb * vb[j][k] for j in range(len(vb))]
        rows.append(row)
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * len(ua) + [Fraction(0)] * len(vb))
    rhs.append(Fraction(1))
    return feasible_eq_nonneg(rows, rhs, nvars)


def _support_indices(a: MarkedCone, b: MarkedCone) -> list[int]:
    """Indices i of a's generators with lambda_i > 0 somewhere on a cap b."""
    ua = [list(map(Fraction, r)) for r in a.coordinate_rows()]
    vb = [list(map(Fraction, r)) for r in b.coordinate_rows()]
    n = sym_dim(a.g)
    sa, sb = Fraction(a.scale), Fraction(b.scale)
    support = []
    for i in range(len(ua)):
        rows = []
        rhs = []
        for k in range(n):
            row = [sa * ua[p][k] for p in range(len(ua))]
            row += [-sb * vb[q][k] for q in range(len(vb))]
            rows.append(row)
            rhs.append(Fraction(0))
        pin = [Fraction(0)] * (len(ua) + len(vb))
        pin[i] = Fraction(1)
        rows.append(pin)
        rhs.append(Fraction(1))
        if feasible_eq_nonneg(rows, rhs, len(ua) + len(vb)):
            support.append(i)
    return support


def _gen_in_cone(gen_coords: Sequence[int], gen_scale: int, c: MarkedCone) -> bool:
    point = [Fraction(gen_scale) * v for v in gen_coords]
    gens = [[Fraction(c.scale) * v for v in row] for row in c.coordinate_rows()]
    return cone_membership(point, gens)


@dataclass(frozen=True)
class FanReport:
    ok: bool
    violations: tuple[str, ...] = ()


def is_fan(cones: Sequence[MarkedCone]) -> FanReport:
    """Check the fan condition: every pairwise intersection is a common face.

    For simplicial cones sigma, tau the intersection is a common face iff
    every generator of sigma that can appear with positive weight in a
    point of sigma cap tau lies in tau, and symmetrically.
    """
    cones = list(cones)
    if not cones:
        raise ConeShapeError("empty cone list")
    g, scale = cones[0].g, cones[0].scale
    for c in cones:
        if c.g != g or c.scale != scale:
            raise ConeShapeError("cones disagree on g or scale")
    violations: list[str] = []
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            a, b = cones[i], cones[j]
            if not cones_meet_nontrivially(a, b):
                continue
            for idx in _support_indices(a, b):
                if not _gen_in_cone(a.coordinate_rows()[idx], a.scale, b):
                    violations.append(
                        f"cones {i} and {j}: intersection is not a face of cone {i} "
                        f"(generator {idx} escapes)")
                    break
            else:
                for idx in _support_indices(b, a):
                    if not _gen_in_cone(b.coordinate_rows()[idx], b.scale, a):
                        violations.append(
                            f"cones {i} and {j}: intersection is not a face of cone {j} "
                            f"(generator {idx} escapes)")
                        break
    return FanReport(ok=not violations, violations=tuple(violations))


@dataclass(frozen=True)
class SeparabilityViolation:
    group_index: int
    cone_index: int
    moved_generator: int


@dataclass(frozen=True)
class SeparabilityReport:
    separable: bool
    violations: tuple[SeparabilityViolation, ...] = ()


def is_separable(cones: Sequence[MarkedCone],
                 group: Sequence[GroupElement]) -> SeparabilityReport:
    """Separability certificate against an explicit list of group elements.

    For every pair (gamma, sigma) whose transformed cone still meets sigma
    nontrivially, gamma must fix every generator of sigma exactly; any
    moved generator is recorded as a violation.  Sound but incomplete: it
    certifies nothing about group elements outside the supplied list.
    """
    violations: list[SeparabilityViolation] = []
    for gi, gamma in enumerate(group):
        for ci, cone in enumerate(cones):
            moved = gl_act(gamma, cone)
            if not cones_meet_nontrivially(moved, cone):
                continue
            for k, gen in enumerate(cone.generators):
                if transform_matrix(gamma, gen) != gen:
                    violations.append(SeparabilityViolation(
                        group_index=gi, cone_index=ci, moved_generator=k))
                    break
    return SeparabilityReport(separable=not violations,
                              violations=tuple(violations))


def component_count(index: int, interior_orbits: int) -> int:
    """Number of irreducible boundary components:
    index * (1 + number of interior-edge orbits)."""
    if index < 1:
        raise ValueError(f"group index must be positive, got {index}")
    if interior_orbits < 0:
        raise ValueError("interior orbit count must be nonnegative")
    return index * (1 + interior_orbits)
