"""Local volume polynomials and the Monge-Ampere determinant identity.

A marked top-dimensional cone with generators l(1), ..., l(N) in
scale*Sym_g(Z) produces the degree-g homogeneous volume polynomial

    F(x_1, ..., x_N) = det( sum_mu x_mu * l(mu)/scale )

and the log-Hessian numerator matrix T with T_ij = F*F_ij - F_i*F_j.
The Kaehler-Einstein metric forces the determinant identity

    det(T) = (-1)^N * 2^(g(g-1)/2) * vol^2 * F^((g+1)(g-1)),

where vol is the lattice volume of the cone.  Checking that identity,
symbolically or at random rational points, is what this module does; the
set of coefficient equations it encodes cuts out the KE-characteristic
variety, and integral matrix pencils can be tested for membership.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cone_lattice import (
    DegenerateConeError,
    MarkedCone,
    delta_index_pairs,
    lattice_volume,
    sym_dim,
)
from .exact_algebra import (
    DimensionError,
    MultiPoly,
    PolyMatrix,
    pencil_det,
)

# symbolic verification is allowed up to this many pencil variables
SYMBOLIC_NVARS_MAX = 6

RANDOM_COORD_MAX = 10 ** 6


class CostGuardError(RuntimeError):
    """Symbolic mode requested beyond the N <= 6 cost guard."""


@dataclass(frozen=True)
class VolumeFunction:
    """Volume polynomial of a marked cone together with its pencil data."""

    g: int
    nvars: int
    pencil: tuple[tuple[tuple[Fraction, ...], ...], ...]
    F: MultiPoly
    vol: int
    cone: Optional[MarkedCone] = None

    def __post_init__(self):
        if self.F.is_zero():
            raise DegenerateConeError("volume polynomial is identically zero")


def _normalized_pencil(c: MarkedCone) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
    s = Fraction(1, c.scale)
    return tuple(
        tuple(tuple(Fraction(v) * s for v in row) for row in gen)
        for gen in c.generators
    )


def volume_function(c: MarkedCone) -> VolumeFunction:
    """Build F = det(sum x_mu A_mu) for the scale-normalized generators."""
    n = sym_dim(c.g)
    if len(c.generators) != n:
        raise DegenerateConeError(
            f"volume polynomial needs {n} generators, cone has {len(c.generators)}")
    vol = lattice_volume(c)
    pencil = _normalized_pencil(c)
    f = pencil_det(pencil)
    if f.is_zero():
        raise DegenerateConeError("degenerate pencil: det vanishes identically")
    return VolumeFunction(g=c.g, nvars=n, pencil=pencil, F=f, vol=vol, cone=c)


def volume_function_from_pencil(mats: Sequence[Sequence[Sequence[Fraction | int]]],
                                g: int, vol: int) -> VolumeFunction:
    """Volume-function wrapper around an explicit pencil (no cone attached)."""
    pencil = tuple(
        tuple(tuple(Fraction(v) for v in row) for row in m) for m in mats)
    f = pencil_det(pencil)
    if f.is_zero():
        raise DegenerateConeError("degenerate pencil: det vanishes identically")
    return VolumeFunction(g=g, nvars=len(pencil), pencil=pencil, F=f, vol=vol)


def t_matrix(v: VolumeFunction) -> PolyMatrix:
    """The N x N matrix T_ij = F*F_ij - F_i*F_j (symmetric, degree 2g-2)."""
    n = v.nvars
    f = v.F
    grads = [f.partial(i) for i in range(n)]
    entries: list[Optional[MultiPoly]] = [None] * (n * n)
    for i in range(n):
        for j in range(i, n):
            t = f * grads[i].partial(j) - grads[i] * grads[j]
            entries[i * n + j] = t
            entries[j * n + i] = t
    return PolyMatrix(n, n, entries)  # type: ignore[arg-type]


def det_t_symbolic(v: VolumeFunction) -> MultiPoly:
    """Exact det(T) through the rank-one update identity.

    With H the Hessian of F and grad its gradient,
        det(F*H - grad grad^T) = F^N det(H) - F^(N-1) grad^T adj(H) grad,
    which avoids expanding the determinant of degree 2g-2 entries directly.
    Agrees with PolyMatrix.det of t_matrix (tested on small cases).
    """
    n = v.nvars
    f = v.F
    grads = [f.partial(i) for i in range(n)]
    hess = [[grads[i].partial(j) for j in range(n)] for i in range(n)]
    hess_mat = PolyMatrix(n, n, [hess[i][j] for i in range(n) for j in range(n)])
    det_h = hess_mat.det()
    if n == 1:
        adj = [[MultiPoly.const(f.nvars, 1)]]
    else:
        adj = [[MultiPoly.zero(f.nvars)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                keep_r = [r for r in range(n) if r != i]
                keep_c = [c for c in range(n) if c != j]
                cof = hess_mat.submatrix(keep_r, keep_c).det()
                if (i + j) % 2 == 1:
                    cof = -cof
                # adj = cofactor transpose; Hessian symmetry keeps adj symmetric
                adj[j][i] = cof
                adj[i][j] = cof
    quad = MultiPoly.zero(f.nvars)
    for i in range(n):
        for j in range(n):
            if not adj[i][j].is_zero():
                quad = quad + grads[i] * adj[i][j] * grads[j]
    return (f ** n) * det_h - (f ** (n - 1)) * quad


def ma_rhs_constant(g: int, vol: int) -> Fraction:
    n = sym_dim(g)
    return Fraction((-1) ** n * 2 ** (g * (g - 1) // 2) * vol * vol)


def ma_rhs(v: VolumeFunction) -> MultiPoly:
    """(-1)^N 2^(g(g-1)/2) vol^2 F^((g+1)(g-1))."""
    power = (v.g + 1) * (v.g - 1)
    return (v.F ** power).scale(ma_rhs_constant(v.g, v.vol))


@dataclass(frozen=True)
class MAWitness:
    point: tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class MAReport:
    holds: bool
    mode: str                      # "symbolic" | "randomized"
    witnesses: tuple[MAWitness, ...] = ()
    seed: Optional[int] = None
    g: int = 0
    vol: int = 0

    def __post_init__(self):
        if self.holds and self.witnesses:
            raise ValueError("a holding identity cannot carry failure witnesses")


def random_rational_point(rng: random.Random, nvars: int) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.randint(1, RANDOM_COORD_MAX), rng.randint(1, RANDOM_COORD_MAX))
        for _ in range(nvars))


def _frac_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [row[:] for row in rows]
    det = Fraction(1)
    for k in range(n):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for r in range(k + 1, n):
            if a[r][k] != 0:
                f = a[r][k] * inv
                a[r] = [vr - f * vk for vr, vk in zip(a[r], a[k])]
    return det


def _identity_values_at(v: VolumeFunction, point: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """(det T(point), rhs(point)) evaluated exactly."""
    n = v.nvars
    f = v.F
    fval = f.eval_at(point)
    grads = [f.partial(i) for i in range(n)]
    gvals = [p.eval_at(point) for p in grads]
    hvals = [[grads[i].partial(j).eval_at(point) for j in range(n)] for i in range(n)]
    tvals = [[fval * hvals[i][j] - gvals[i] * gvals[j] for j in range(n)]
             for i in range(n)]
    lhs = _frac_det(tvals)
    rhs = ma_rhs_constant(v.g, v.vol) * fval ** ((v.g + 1) * (v.g - 1))
    return lhs, rhs


def verify_ma_identity(v: VolumeFunction, mode: str = "symbolic",
                       trials: int = 20, seed: int = 0) -> MAReport:
    """Check det(T) = (-1)^N 2^(g(g-1)/2) vol^2 F^((g+1)(g-1)).

    Symbolic mode proves exact polynomial equality (guarded to N <= 6);
    randomized mode compares both sides at `trials` random rational points
    with numerators and denominators in [1, 10^6], recording any failing
    point as an exact, replayable witness.
    """
    if mode == "symbolic":
        if v.nvars > SYMBOLIC_NVARS_MAX:
            raise CostGuardError(
                f"symbolic mode limited to N <= {SYMBOLIC_NVARS_MAX}, got N={v.nvars}")
        holds = det_t_symbolic(v) == ma_rhs(v)
        return MAReport(holds=holds, mode="symbolic", g=v.g, vol=v.vol)
    if mode != "randomized":
        raise ValueError(f"unknown mode {mode!r}")
    if trials < 1:
        raise ValueError("randomized mode needs trials >= 1")
    rng = random.Random(seed)
    witnesses = []
    for _ in range(trials):
        point = random_rational_point(rng, v.nvars)
        lhs, rhs = _identity_values_at(v, point)
        if lhs != rhs:
            witnesses.append(MAWitness(point=point, lhs=lhs, rhs=rhs))
    return MAReport(holds=not witnesses, mode="randomized",
                    witnesses=tuple(witnesses), seed=seed, g=v.g, vol=v.vol)


# ----------------------------------------------------------------------
# KE-characteristic membership for integral pencils


def _pencil_coordinate_det(mats: Sequence[Sequence[Sequence[int | Fraction]]]) -> Fraction:
    """det of the N x N matrix whose rows are the delta-coordinates of mats."""
    n = len(mats)
    g = len(mats[0])
    if n != sym_dim(g):
        raise DimensionError(
            f"expected {sym_dim(g)} matrices for g={g}, got {n}")
    rows = []
    for m in mats:
        if len(m) != g or any(len(r) != g for r in m):
            raise DimensionError("ragged pencil")
        for i in range(g):
            for j in range(g):
                if Fraction(m[i][j]) != Fraction(m[j][i]):
                    raise DimensionError("pencil matrix is not symmetric")
        rows.append([Fraction(m[i][j]) for i, j in delta_index_pairs(g)])
    return _frac_det(rows)


def is_ke_point(mats: Sequence[Sequence[Sequence[int]]]) -> bool:
    """Membership of an independent symmetric pencil in the variety cut out
    by the Monge-Ampere coefficient equations.

    Equivalent to the symbolic identity det(T) = (-1)^N 2^(g(g-1)/2) D^2
    F^((g+1)(g-1)) with F = det(sum x_i mats[i]) and D the determinant of
    the coordinate matrix of the pencil.
    """
    d = _pencil_coordinate_det(mats)
    if d == 0:
        raise DegenerateConeError("matrices are linearly dependent")
    g = len(mats[0])
    v = volume_function_from_pencil(mats, g=g, vol=1)
    lhs = det_t_symbolic(v)
    n = sym_dim(g)
    rhs = (v.F ** ((g + 1) * (g - 1))).scale(
        Fraction((-1) ** n * 2 ** (g * (g - 1) // 2)) * d * d)
    return lhs == rhs


def ke_coefficient(mats: Sequence[Sequence[Sequence[int]]],
                   multi_index: Sequence[int]) -> Fraction:
    """Coefficient of x^multi_index in det(T) - (-1)^N 2^(g(g-1)/2)
    F^((g+1)(g-1)) D^2, evaluated at the given pencil.

    The admissible multi-indices sum to g(g^2-1), the x-degree of both
    determinant sides.
    """
    g = len(mats[0])
    target = g * (g * g - 1)
    idx = tuple(int(e) for e in multi_index)
    if sum(idx) != target or any(e < 0 for e in idx):
        raise ValueError(
            f"multi-index must consist of nonnegative entries summing to {target}")
    d = _pencil_coordinate_det(mats)
    f = pencil_det(mats)
    n = sym_dim(g)
    if len(idx) != len(mats):
        raise DimensionError("multi-index length must match the pencil size")
    if f.is_zero():
        lhs = MultiPoly.zero(len(mats))
        rhs = MultiPoly.zero(len(mats))
    else:
        v = volume_function_from_pencil(mats, g=g, vol=1)
        lhs = det_t_symbolic(v)
        rhs = (f ** ((g + 1) * (g - 1))).scale(
            Fraction((-1) ** n * 2 ** (g * (g - 1) // 2)) * d * d)
    return (lhs - rhs).coeff(idx)


def permutation_check(mats: Sequence[Sequence[Sequence[int]]],
                      perm: Sequence[int], trials: int = 20,
                      seed: int = 0) -> bool:
    """Reindexing symmetry of the pencil determinant.

    Confirms det(sum_i x_i Y(perm(i))) = det(sum_i x_{perm^-1(i)} Y(i)) at
    random rational points, and that KE membership does not change when the
    pencil list is permuted (skipped for dependent pencils, where
    membership is undefined).
    """
    n = len(mats)
    p = tuple(int(k) for k in perm)
    if sorted(p) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    inv = [0] * n
    for i, k in enumerate(p):
        inv[k] = i
    permuted = [mats[p[i]] for i in range(n)]
    f_perm = pencil_det(permuted)
    f_orig = pencil_det(mats)
    rng = random.Random(seed)
    for _ in range(max(1, trials)):
        point = random_rational_point(rng, n)
        moved_point = tuple(point[inv[i]] for i in range(n))
        if f_perm.eval_at(point) != f_orig.eval_at(moved_point):
            return False
    if _pencil_coordinate_det(mats) != 0:
        if is_ke_point(mats) != is_ke_point(permuted):
            return False
    return True


def g2_closed_form(a: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """Closed-form coefficients (A, B, C, L, M, N) of the genus-2 volume
    polynomial F = A x^2 + B y^2 + C z^2 + L xy + M xz + N yz built from the
    rows a_i = (a_i1, a_i2, a_i3) of a 3 x 3 matrix, where row i encodes
    the symmetric matrix [[a_i1, a_i2], [a_i2, a_i3]]."""
    if len(a) != 3 or any(len(row) != 3 for row in a):
        raise DimensionError("expected a 3x3 coefficient matrix")
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = (
        tuple(Fraction(v) for v in row) for row in a)
    coeff_a = a11 * a13 - a12 * a12
    coeff_b = a21 * a23 - a22 * a22
    coeff_c = a31 * a33 - a32 * a32
    coeff_l = a11 * a23 + a21 * a13 - 2 * a12 * a22
    coeff_m = a11 * a33 + a31 * a13 - 2 * a12 * a32
    coeff_n = a21 * a33 + a31 * a23 - 2 * a22 * a32
    return (coeff_a, coeff_b, coeff_c, coeff_l, coeff_m, coeff_n)


def g2_rows_to_pencil(a: Sequence[Sequence[int]]) -> list[list[list[Fraction]]]:
    """Symmetric 2x2 matrices [[a_i1, a_i2], [a_i2, a_i3]] from the rows of a."""
    return [[[Fraction(r[0]), Fraction(r[1])], [Fraction(r[1]), Fraction(r[2])]]
            for r in a]
