"""Weight functions from the auxiliary-space trace.

With the |ξ| auxiliary legs ordered lexicographically by (level a, index i),
the trace against E_21^{⊗ξ¹}⊗…⊗E_{N,N-1}^{⊗ξ^{N-1}} only sees one column of
the R-matrix product.  Writing c = (∏ R) e_J0, where J0 puts level a+1 on
every leg of level a,

    B̂_ξ(t) = Σ_J c_J · T_{I0_1 J_1}(t_1) ⋯ T_{I0_k J_k}(t_k),   I0 = levels.

This is what ``hat_weight_trace`` evaluates.  ``dense_hat_trace`` materializes
the whole product on aux^{⊗k} ⊗ V and takes the partial trace; it is slow and
only meant as an independent check on small cases.
"""

from .errors import ValidationError
from .field import ONE, ZERO, div
from .tensor import (LinearOperator, Space, add_all, embed_leg, kron,
                     matrix_unit, partial_trace, r_matrix)

MAX_AUX = 256


def legs(xi):
    """Flattened auxiliary legs as (level, index) pairs, 1-based, lexicographic."""
    return [(a + 1, i + 1) for a, k in enumerate(xi) for i in range(k)]


def leg_values(xi, t):
    return [t[a - 1][i - 1] for a, i in legs(xi)]


def check_shape(xi, t, n=None):
    if n is not None and len(xi) != n - 1:
        raise ValidationError(f"composition needs {n - 1} parts, got {len(xi)}", "/xi")
    if any((not isinstance(k, int)) or k < 0 for k in xi):
        raise ValidationError("composition parts must be nonnegative integers", "/xi")
    if len(t) != len(xi):
        raise ValidationError("variable collection does not match the composition", "/t")
    for a, (k, row) in enumerate(zip(xi, t)):
        if len(row) != k:
            raise ValidationError(f"level {a + 1} needs {k} variables, got {len(row)}", f"/t/{a}")


def r_factors(case, xi, t, order="lex"):
    """The ordered R-factors as (first leg, second leg, argument), 1-based legs.

    order "lex" sorts pairs ((a,i),(b,j)) lexicographically; "by-later" sorts by
    the later leg first; "reversed" reverses the lexicographic list.
    """
    L = legs(xi)
    vals = leg_values(xi, t)
    pairs = [(p, s) for p in range(len(L)) for s in range(p + 1, len(L))]
    if order == "by-later":
        pairs.sort(key=lambda ps: (ps[1], ps[0]))
    elif order == "reversed":
        pairs.reverse()
    elif order != "lex":
        raise ValidationError(f"unknown R-product order {order!r}")
    out = []
    for p, s in pairs:
        if case == "rational":
            z = vals[s] - vals[p]
        else:
            z = div(vals[s], vals[p], f"t^{L[p][0]}_{L[p][1]}")
        out.append((s + 1, p + 1, z))
    return out


def _r_tables(case, n, z, q):
    R = r_matrix(case, n, z, q)
    cols, rows = {}, {}
    for r, row in enumerate(R.rows):
        for c, x in enumerate(row):
            if x:
                cols.setdefault((c // n, c % n), []).append(((r // n, r % n), x))
                rows.setdefault((r // n, r % n), []).append(((c // n, c % n), x))
    return cols, rows


def _apply_leg_pair(vec, first, second, table):
    out = {}
    f, s = first - 1, second - 1
    for J, val in vec.items():
        for (c, d), x in table.get((J[f], J[s]), ()):
            K = list(J)
            K[f], K[s] = c, d
            K = tuple(K)
            out[K] = out.get(K, ZERO) + x * val
    return {K: v for K, v in out.items() if v}


def coefficient_vector(case, n, xi, t, q=None, order="lex"):
    """c = (∏ R) e_J0 as a dict from 0-based index tuples to Scalars."""
    L = legs(xi)
    J0 = tuple(a for a, _ in L)          # 0-based value a means basis vector a+1
    vec = {J0: ONE}
    for first, second, z in reversed(r_factors(case, xi, t, order)):
        cols, _ = _r_tables(case, n, z, q)
        vec = _apply_leg_pair(vec, first, second, cols)
    return vec


def row_vector(case, n, xi, t, q=None, order="lex"):
    """e_I0^T (∏ R) as a dict, for the flipped form of the trace."""
    L = legs(xi)
    I0 = tuple(a - 1 for a, _ in L)
    vec = {I0: ONE}
    for first, second, z in r_factors(case, xi, t, order):
        _, rows = _r_tables(case, n, z, q)
        vec = _apply_leg_pair(vec, first, second, rows)
    return vec


def _check_rank(series, xi):
    if len(xi) != series.rank - 1:
        raise ValidationError(f"composition needs {series.rank - 1} parts", "/xi")
    if series.rank ** sum(xi) > MAX_AUX ** 2:
        raise ValidationError("auxiliary space too large", "/xi")


def hat_weight_trace(series, xi, t, order="lex"):
    """B̂_ξ(t) as an operator on the series carrier."""
    _check_rank(series, xi)
    check_shape(xi, t)
    L = legs(xi)
    vals = leg_values(xi, t)
    I0 = [a for a, _ in L]
    c = coefficient_vector(series.case, series.rank, xi, t, series.q, order)
    terms = []
    for J in sorted(c):
        op = series.identity()
        for k in range(len(L)):
            op = op @ series.T(I0[k], J[k] + 1, vals[k])
        terms.append(op.scale(c[J]))
    return add_all(terms, series.identity())


def flipped_hat_trace(series, xi, t, order="lex"):
    """B̂_ξ(t) from the row e_I0^T ∏R with the T-factors in reversed order."""
    _check_rank(series, xi)
    L = legs(xi)
    vals = leg_values(xi, t)
    J0 = [a + 1 for a, _ in L]
    r = row_vector(series.case, series.rank, xi, t, series.q, order)
    terms = []
    for A in sorted(r):
        op = series.identity()
        for k in reversed(range(len(L))):
            op = op @ series.T(A[k] + 1, J0[k], vals[k])
        terms.append(op.scale(r[A]))
    return add_all(terms, series.identity())


def dense_hat_trace(series, xi, t):
    """B̂_ξ(t) by materializing the full auxiliary product (small cases only)."""
    _check_rank(series, xi)
    n, case, q = series.rank, series.case, series.q
    L = legs(xi)
    vals = leg_values(xi, t)
    k = len(L)
    if k == 0:
        return series.identity()
    aux = Space(n, "aux")
    spaces = (aux,) * k + (series.space,)
    total = LinearOperator.identity(spaces)
    for i in range(k):
        g = series.grid(vals[i])
        parts = []
        for a in range(n):
            for b in range(n):
                op = kron([matrix_unit(n, a + 1, b + 1, "aux") if j == i else LinearOperator.identity((aux,))
                           for j in range(k)] + [g[a][b]])
                parts.append(op)
        total = total @ add_all(parts)
    big_id = LinearOperator.identity((series.space,))
    for first, second, z in r_factors(case, xi, t):
        R = embed_leg(r_matrix(case, n, z, q), [first, second], (aux,) * k)
        total = total @ kron([R, big_id])
    E = kron([matrix_unit(n, a + 1, a, "aux") for a, _ in L] + [big_id])
    total = total @ E
    out = partial_trace(total, list(range(1, k + 1)))
    return LinearOperator((series.space,), (series.space,), out.rows)


def normalization_factors(case, xi, t, q=None):
    """(name, value) pairs whose reciprocals normalize B̂_ξ into B_ξ."""
    out = []
    levels = len(xi)
    for a in range(levels):
        for i in range(xi[a]):
            for j in range(i + 1, xi[a]):
                ti, tj = t[a][i], t[a][j]
                if case == "rational":
                    out.append((f"t^{a+1}_{j+1} - t^{a+1}_{i+1} + 1", tj - ti + 1, ONE))
                else:
                    out.append((f"q t^{a+1}_{j+1} - q^-1 t^{a+1}_{i+1}", q * tj - ti / q, ti))
    for a in range(levels):
        for b in range(a + 1, levels):
            for i in range(xi[a]):
                for j in range(xi[b]):
                    ti, tj = t[a][i], t[b][j]
                    num = ONE if case == "rational" else ti
                    out.append((f"t^{b+1}_{j+1} - t^{a+1}_{i+1}", tj - ti, num))
    return out


def normalization(case, xi, t, q=None):
    c = ONE
    for name, den, num in normalization_factors(case, xi, t, q):
        c *= div(num, den, name)
    return c


def weight_trace(series, xi, t, order="lex"):
    """The normalized B_ξ(t) as an operator."""
    c = normalization(series.case, xi, t, series.q)
    return hat_weight_trace(series, xi, t, order).scale(c)


def weight_vector(series, xi, t, vector, order="lex"):
    """B_ξ(t)·vector without forming the operator."""
    _check_rank(series, xi)
    check_shape(xi, t)
    norm = normalization(series.case, xi, t, series.q)
    L = legs(xi)
    vals = leg_values(xi, t)
    I0 = [a for a, _ in L]
    c = coefficient_vector(series.case, series.rank, xi, t, series.q, order)
    k = len(L)
    memo = {}

    def tail(J):
        # T(t_s)…T(t_k) vector for the suffix J = (J_s, …, J_k)
        if not J:
            return list(vector)
        if J in memo:
            return memo[J]
        s = k - len(J)
        w = series.T(I0[s], J[0] + 1, vals[s]).apply(tail(J[1:]))
        memo[J] = w
        return w

    out = [ZERO] * len(vector)
    for J in sorted(c):
        w = tail(J)
        cj = c[J] * norm
        for i, x in enumerate(w):
            if x:
                out[i] += cj * x
    return out


def monomials(case, n, xi, t, q=None):
    """Nonzero monomials of B_ξ(t) as (label, index tuple, coefficient)."""
    norm = normalization(case, xi, t, q)
    L = legs(xi)
    c = coefficient_vector(case, n, xi, t, q)
    name = "T" if case == "rational" else "L^-"
    out = []
    for J in sorted(c):
        label = "".join(f"{name}_{{{a}{j + 1}}}(t^{a}_{i})" for (a, i), j in zip(L, J))
        out.append((label, tuple((a, j + 1) for (a, _), j in zip(L, J)), c[J] * norm))
    return out
