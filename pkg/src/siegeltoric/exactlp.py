"""Exact rational linear feasibility.

Decides whether {x >= 0 : A x = b} is nonempty, entirely over Fraction
arithmetic.  Equalities are first removed by Gaussian elimination; the
remaining inequality system in the free variables goes through
Fourier-Motzkin elimination when the variable count is small, otherwise
through a phase-1 simplex with Bland's rule.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal, Sequence

# Fourier-Motzkin is used up to this many free variables, exact simplex beyond.
FM_VAR_CAP = 24

Method = Literal["auto", "fm", "simplex"]


def feasible_eq_nonneg(
    rows: Sequence[Sequence[Fraction | int]],
    rhs: Sequence[Fraction | int],
    nvars: int,
    method: Method = "auto",
) -> bool:
    """True iff some x >= 0 in Q^nvars satisfies rows . x = rhs."""
    a = [[Fraction(v) for v in row] for row in rows]
    b = [Fraction(v) for v in rhs]
    if any(len(row) != nvars for row in a):
        raise ValueError("row length disagrees with nvars")
    if len(a) != len(b):
        raise ValueError("rows/rhs length mismatch")

    if method == "simplex":
        return _simplex_feasible(a, b, nvars)

    reduced = _eliminate_equalities(a, b, nvars)
    if reduced is None:
        return False
    ineqs, nfree = reduced
    if nfree == 0:
        return all(c >= 0 for _, c in ineqs) if ineqs else True
    if method == "fm" or nfree <= FM_VAR_CAP:
        return _fm_feasible(ineqs, nfree)
    return _simplex_feasible(a, b, nvars)


def cone_membership(
    point: Sequence[Fraction | int],
    generators: Sequence[Sequence[Fraction | int]],
    method: Method = "auto",
) -> bool:
    """True iff point = sum_j mu_j * generators[j] for some mu >= 0."""
    dim = len(point)
    rows = [[Fraction(gen[i]) for gen in generators] for i in range(dim)]
    return feasible_eq_nonneg(rows, point, len(generators), method)


def _eliminate_equalities(a, b, nvars):
    """Gaussian elimination of A x = b over Q.

    Returns None when the equalities are inconsistent; otherwise a pair
    (ineqs, nfree) where ineqs encode x >= 0 rewritten over the free
    variables as constraints coeffs . y <= const.
    """
    m = len(a)
    tab = [row[:] + [b[i]] for i, row in enumerate(a)]
    pivot_col_of_row: list[int] = []
    r = 0
    for c in range(nvars):
        pivot = next((i for i in range(r, m) if tab[i][c] != 0), None)
        if pivot is None:
            continue
        tab[r], tab[pivot] = tab[pivot], tab[r]
        pv = tab[r][c]
        tab[r] = [v / pv for v in tab[r]]
        for i in range(m):
            if i != r and tab[i][c] != 0:
                f = tab[i][c]
                tab[i] = [vi - f * vr for vi, vr in zip(tab[i], tab[r])]
        pivot_col_of_row.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if tab[i][nvars] != 0:
            return None

    pivot_cols = set(pivot_col_of_row)
    free_cols = [c for c in range(nvars) if c not in pivot_cols]
    index_of_free = {c: k for k, c in enumerate(free_cols)}
    nfree = len(free_cols)

    # x_pivot = const - sum(coeff * y_free); x_pivot >= 0 becomes
    # sum(coeff * y) <= const, and x_free >= 0 becomes -y_k <= 0.
    ineqs: list[tuple[list[Fraction], Fraction]] = []
    for row_idx, c in enumerate(pivot_col_of_row):
        coeffs = [Fraction(0)] * nfree
        for fc in free_cols:
            v = tab[row_idx][fc]
            if v != 0:
                coeffs[index_of_free[fc]] = v
        ineqs.append((coeffs, tab[row_idx][nvars]))
    for k in range(nfree):
        coeffs = [Fraction(0)] * nfree
        coeffs[k] = Fraction(-1)
        ineqs.append((coeffs, Fraction(0)))
    return ineqs, nfree


def _fm_feasible(ineqs, nfree) -> bool:
    """Fourier-Motzkin elimination on the system coeffs . y <= const."""
    system = ineqs
    for var in range(nfree):
        pos, neg, rest = [], [], []
        for coeffs, const in system:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, const))
            elif c < 0:
                neg.append((coeffs, const))
            else:
                rest.append((coeffs, const))
        new_system = rest
        for pc, pconst in pos:
            for nc, nconst in neg:
                # eliminate y_var between pc.y <= pconst and nc.y <= nconst
                alpha, beta = pc[var], -nc[var]
                coeffs = [beta * pv + alpha * nv for pv, nv in zip(pc, nc)]
                coeffs[var] = Fraction(0)
                new_system.append((coeffs, beta * pconst + alpha * nconst))
        system = _dedupe_ineqs(new_system)
    return all(const >= 0 for _, const in system)


def _dedupe_ineqs(system):
    seen = set()
    out = []
    for coeffs, const in system:
        nonzero = [c for c in coeffs if c != 0]
        if not nonzero:
            if const < 0:
                # keep one witness of infeasibility
                return [(coeffs, const)]
            continue
        # normalize by the first nonzero coefficient's absolute value
        scale = abs(nonzero[0])
        key = (tuple(c / scale for c in coeffs), const / scale)
        if key not in seen:
            seen.add(key)
            out.append(([c / scale for c in coeffs], const / scale))
    return out


def _simplex_feasible(a, b, nvars) -> bool:
    """Phase-1 simplex with Bland's rule; exact Fractions throughout."""
    m = len(a)
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-v for v in a[i]])
            rhs.append(-b[i])
        else:
            rows.append(a[i][:])
            rhs.append(b[i])
    total = nvars + m  # original variables plus artificials
    tab = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [nvars + i for i in range(m)]
    # phase-1 objective w = sum of artificials expressed over nonbasic
    # columns: w = sum(b) - sum_j (sum_i a_ij) x_j, so the row must carry
    # zero entries on the (basic) artificial columns
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            obj[j] += tab[i][j]
    for k in range(m):
        obj[nvars + k] = Fraction(0)

    while True:
        enter = next((j for j in range(total) if j not in basis and obj[j] > 0), None)
        if enter is None:
            break
        ratios = [(tab[i][total] / tab[i][enter], basis[i], i)
                  for i in range(m) if tab[i][enter] > 0]
        if not ratios:
            break  # unbounded cannot happen in phase 1, defensive
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        pv = tab[leave][enter]
        tab[leave] = [v / pv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [vi - f * vr for vi, vr in zip(tab[i], tab[leave])]
        f = obj[enter]
        if f != 0:
            obj = [vo - f * vr for vo, vr in zip(obj, tab[leave])]
        basis[leave] = enter
    return obj[total] == 0
