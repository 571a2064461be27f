"""Independent straightforward oracle used to freeze golden values.

Deliberately naive and separate from the package: polynomials are plain
dicts of exponent tuples with Fraction coefficients, determinants are
always cofactor expansions, and the leading-coefficient chain is written
directly off its definition.  No shared code with siegeltoric.
"""

from fractions import Fraction


def p_zero():
    return {}


def p_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def p_neg(a):
    return {e: -c for e, c in a.items()}


def p_sub(a, b):
    return p_add(a, p_neg(b))


def p_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, Fraction(0)) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def p_scale(a, c):
    c = Fraction(c)
    if c == 0:
        return {}
    return {e: v * c for e, v in a.items()}


def p_pow(a, k):
    out = None
    for _ in range(k):
        out = dict(a) if out is None else p_mul(out, a)
    if out is None:
        nvars = len(next(iter(a))) if a else 0
        return {(0,) * nvars: Fraction(1)}
    return out


def p_partial(a, var):
    out = {}
    for e, c in a.items():
        if e[var] == 0:
            continue
        e2 = list(e)
        e2[var] -= 1
        out[tuple(e2)] = c * e[var]
    return out


def p_eval(a, point):
    total = Fraction(0)
    for e, c in a.items():
        term = Fraction(c)
        for v, k in zip(point, e):
            term *= Fraction(v) ** k
        total += term
    return total


def p_deg_in(a, var):
    if not a:
        return -1
    return max(e[var] for e in a)


def p_leading_coeff(a, var):
    d = p_deg_in(a, var)
    out = {}
    for e, c in a.items():
        if e[var] == d:
            e2 = list(e)
            e2[var] = 0
            out[tuple(e2)] = c
    return d, out


def det_cofactor(grid):
    n = len(grid)
    if n == 1:
        return dict(grid[0][0])
    total = {}
    for j in range(n):
        if not grid[0][j]:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in grid[1:]]
        term = p_mul(grid[0][j], det_cofactor(minor))
        total = p_add(total, term) if j % 2 == 0 else p_sub(total, term)
    return total


def pencil_determinant(mats):
    nvars = len(mats)
    g = len(mats[0])
    grid = []
    for i in range(g):
        row = []
        for j in range(g):
            p = {}
            for k, m in enumerate(mats):
                c = Fraction(m[i][j])
                if c:
                    e = [0] * nvars
                    e[k] = 1
                    p[tuple(e)] = c
            row.append(p)
        grid.append(row)
    return det_cofactor(grid)


def t_matrix_grid(f, nvars):
    grads = [p_partial(f, i) for i in range(nvars)]
    return [[p_sub(p_mul(f, p_partial(grads[i], j)), p_mul(grads[i], grads[j]))
             for j in range(nvars)] for i in range(nvars)]


def residue_chain_naive(f, nvars, d):
    """S_0 = f, S_k = leading coefficient of S_{k-1} in variable k-1;
    g_d = cofactor determinant of the minor of P on the unselected block."""
    chain = [dict(f)]
    cur = f
    for k in range(1, d + 1):
        _, cur = p_leading_coeff(cur, k - 1)
        chain.append(dict(cur))
    s_d = chain[-1]
    keep = list(range(d, nvars))
    grads = {l: p_partial(s_d, l) for l in keep}
    grid = [[p_sub(p_mul(s_d, p_partial(grads[l], m)), p_mul(grads[l], grads[m]))
             for m in keep] for l in keep]
    return chain, det_cofactor(grid)


def poly_sorted_json(p):
    """Same JSON shape the package emits, for golden-file comparisons."""
    items = sorted(p.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    return {
        "nvars": len(next(iter(p))) if p else None,
        "terms": [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                  for e, c in items],
    }
