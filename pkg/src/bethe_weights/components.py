"""Weight functions rebuilt from rank N-1 weight functions (component form).

Both directions evaluate the rank N-1 weight function on an auxiliary tensor
product of k copies of C^{N-1} and the rank N-1 view of the module, then read
off the matrix components against the highest vectors of the auxiliary
copies.  The rank N-1 weight function is computed by the trace oracle, or
recursively by this module (``inner="self"``).
"""

from .errors import ValidationError
from .series import BarVector, TensorSeries, VecSeries, Window
from .tensor import LinearOperator, add_all
from .trace import weight_trace


def _block(op, k, r, d, out_idx, in_idx):
    """d×d block of an operator on (C^r)^{⊗k} ⊗ V at auxiliary indices out, in."""
    def flat(idx):
        f = 0
        for i in idx:
            f = f * r + i
        return f
    ro, co = flat(out_idx) * d, flat(in_idx) * d
    rows = [op.rows[ro + i][co:co + d] for i in range(d)]
    return rows


def _multi(r, k):
    idx = [[]]
    for _ in range(k):
        idx = [p + [a] for p in idx for a in range(r)]
    return [tuple(p) for p in idx]


def _rank_lower(series, xi, t, inner):
    if inner == "trace":
        return weight_trace(series, xi, t)
    return component_recursion(series, xi, t, "first")


def component_recursion(series, xi, t, direction="first", reading=None, inner="trace"):
    """B_ξ(t) as an operator on the carrier of ``series`` (rational only).

    ``reading`` selects the variant of the last-level formula; the default is
    the one that agrees with the trace (see ``LAST_READINGS``).
    """
    if series.case != "rational":
        raise ValidationError("component recursion is implemented for the rational case", "/case")
    N = series.rank
    xi = list(xi)
    if len(xi) != N - 1:
        raise ValidationError(f"composition needs {N - 1} parts", "/xi")
    if N == 1 or sum(xi) == 0:
        return series.identity()
    if N == 2:
        op = series.identity()
        for s in t[0]:
            op = op @ series.T(1, 2, s)
        return op
    d = series.space.dim
    r = N - 1
    if direction == "first":
        k = xi[0]
        aux = [VecSeries(r, s) for s in t[0]]
        asm = TensorSeries(aux + [Window(series, 1, r)], label="first-aux")
        big = _rank_lower(asm, xi[1:], t[1:], inner)
        terms = []
        for a in _multi(r, k):
            g = LinearOperator((series.space,), (series.space,), _block(big, k, r, d, a, (0,) * k))
            if g.is_zero():
                continue
            op = series.identity()
            for ai, s in zip(a, t[0]):
                op = op @ series.T(1, ai + 2, s)
            terms.append(op @ g)
        return add_all(terms, series.identity())
    if direction != "last":
        raise ValidationError(f"unknown direction {direction!r}")
    pattern, points, order = reading or LAST_READINGS[0]
    k = xi[-1] if points == "last-level" else xi[0]
    pts = t[-1] if points == "last-level" else t[0]
    aux = [BarVector(r, s) for s in pts]
    asm = TensorSeries([Window(series, 0, r)] + aux, label="last-aux")
    big = _rank_lower(asm, xi[:-1], t[:-1], inner)
    # components of g ∈ Y ⊗ (C^{N-1})^{⊗k}: the module leg comes first here
    terms = []
    for a in _multi(r, k):
        g = _block_module_first(big, k, r, d, a, (r - 1,) * k)
        g = LinearOperator((series.space,), (series.space,), g)
        if all(not any(row) for row in g.rows):
            continue
        op = series.identity()
        seq = list(zip(a, t[-1]))
        if order == "reversed":
            seq.reverse()
        for ai, s in seq:
            op = op @ (series.T(ai + 1, N, s) if pattern == "a,N" else series.T(ai + 2, 1, s))
        terms.append(op @ g)
    return add_all(terms, series.identity())


def _block_module_first(op, k, r, d, out_idx, in_idx):
    def flat(idx):
        f = 0
        for i in idx:
            f = f * r + i
        return f
    width = r ** k
    fo, fi = flat(out_idx), flat(in_idx)
    return [[op.rows[i * width + fo][j * width + fi] for j in range(d)] for i in range(d)]


# (index pattern, points, order); the first entry is the one used by default.
LAST_READINGS = [
    ("a,N", "last-level", "reversed"),
    ("a,N", "last-level", "forward"),
    ("a+1,1", "last-level", "reversed"),
    ("a+1,1", "last-level", "forward"),
    ("a,N", "first-level", "reversed"),
    ("a+1,1", "first-level", "reversed"),
]
