"""Generating-series actions T_ab(u) (rational) and L±_ab(u) (trigonometric).

A *series* is anything exposing ``rank``, ``case``, ``q``, ``space`` and
``grid(u, sign)``, the full rank×rank table of operators at the point u.  In
the rational case the sign is ignored and the table is T(u); in the
trigonometric case sign "-" gives L⁻(u) and "+" gives L⁺(u).

Concrete series: an evaluation module, an ordered tensor product (coproduct
Δ X_ab = Σ_c X_cb ⊗ X_ac), and a window that exposes a block of consecutive
indices (this realizes both rank-lowering embeddings).
"""

from fractions import Fraction

from .errors import ValidationError
from .field import ONE, ZERO, div
from .tensor import LinearOperator, Space, kron, matrix_unit


def _flat(op, sp):
    return LinearOperator((sp,), (sp,), op.rows)


class Series:
    rank = 0
    case = "rational"
    q = None
    space = None

    def __init__(self):
        self._cache = {}

    def grid(self, u, sign="-"):
        key = (Fraction(u), sign if self.case == "trigonometric" else "-")
        g = self._cache.get(key)
        if g is None:
            g = self._grid(*key)
            self._cache[key] = g
        return g

    def T(self, a, b, u, sign="-"):
        """Generator (a, b) at u; 1-based."""
        if not (1 <= a <= self.rank and 1 <= b <= self.rank):
            raise ValidationError(f"series index ({a},{b}) out of range 1..{self.rank}")
        return self.grid(u, sign)[a - 1][b - 1]

    def identity(self):
        return LinearOperator.identity((self.space,))

    def diag_eigenvalue(self, a, u, vector):
        """⟨X_aa(u)⟩ on a weight singular vector (must be an eigenvector)."""
        w = self.T(a, a, u).apply(vector)
        i = next(j for j, x in enumerate(vector) if x)
        lam = w[i] / vector[i]
        if any(wj != lam * vj for wj, vj in zip(w, vector)):
            raise ValidationError("vector is not an eigenvector of the diagonal series")
        return lam


class EvalModule(Series):
    """The evaluation module V(x) of a RepModule."""

    def __init__(self, module, x):
        super().__init__()
        self.module = module
        self.x = Fraction(x)
        self.rank = module.n
        self.case = module.case
        self.q = module.q
        self.space = module.space

    def gl(self, a, b):
        """e_ab on the carrier (rational case)."""
        return self.module.e[(a, b)]

    def cartan(self, a):
        """e_aa (rational) or k̂_a (trigonometric)."""
        if self.case == "rational":
            return self.module.e[(a, a)]
        return self.module.k[a]

    def _grid(self, u, sign):
        m, n, x = self.module, self.rank, self.x
        I = self.identity()
        g = [[None] * n for _ in range(n)]
        if self.case == "rational":
            c = div(1, u - x, f"u - x at u={u}, x={x}")
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    op = m.e[(b, a)].scale(c)
                    g[a - 1][b - 1] = op + I if a == b else op
            return g
        q = self.q
        qq = q - 1 / q
        r = div(x, u, "u") if sign == "-" else div(u, x, "x")
        for a in range(1, n + 1):
            ka, kia = m.k[a], m.kinv[a]
            for b in range(1, n + 1):
                if sign == "-":
                    if a == b:
                        op = ka - kia.scale(r)
                    elif a < b:
                        op = (ka @ m.e[(b, a)]).scale(qq)
                    else:
                        # lower-left entry L⁻_ab, b < a
                        op = (m.e[(b, a)] @ m.kinv[b]).scale(r * qq)
                else:
                    if a == b:
                        op = kia - ka.scale(r)
                    elif a < b:
                        op = (ka @ m.e[(b, a)]).scale(-r * qq)
                    else:
                        op = (m.e[(b, a)] @ m.kinv[b]).scale(-qq)
                g[a - 1][b - 1] = op
        return g


class TensorSeries(Series):
    """Ordered tensor product of series of equal rank, via the coproduct."""

    def __init__(self, factors, label="assembly"):
        super().__init__()
        factors = list(factors)
        if not factors:
            raise ValidationError("an assembly needs at least one factor")
        ranks = {f.rank for f in factors}
        cases = {f.case for f in factors}
        if len(ranks) != 1 or len(cases) != 1:
            raise ValidationError("assembly factors must share rank and case")
        self.factors = factors
        self.rank = factors[0].rank
        self.case = factors[0].case
        self.q = factors[0].q
        dim = 1
        for f in factors:
            dim *= f.space.dim
        self.space = Space(dim, label)

    def _lifted(self, ops):
        return _flat(kron(ops), self.space)

    def gl(self, a, b):
        """Σ_r 1⊗…⊗e_ab⊗…⊗1 (rational case)."""
        ids = [f.identity() for f in self.factors]
        total = None
        for r, f in enumerate(self.factors):
            term = self._lifted(ids[:r] + [f.gl(a, b)] + ids[r + 1:])
            total = term if total is None else total + term
        return total

    def cartan(self, a):
        if self.case == "rational":
            return self.gl(a, a)
        return self._lifted([f.cartan(a) for f in self.factors])

    def _grid(self, u, sign):
        n = self.rank
        acc = self.factors[0].grid(u, sign)
        for f in self.factors[1:]:
            nxt = f.grid(u, sign)
            new = [[None] * n for _ in range(n)]
            for a in range(n):
                for b in range(n):
                    terms = [kron([acc[c][b], nxt[a][c]]) for c in range(n)]
                    tot = terms[0]
                    for t in terms[1:]:
                        tot = tot + t
                    new[a][b] = tot
            acc = [[_flat(op, Space(op.nrows, "partial")) for op in row] for row in new]
        return [[_flat(op, self.space) for op in row] for row in acc]


class Window(Series):
    """Indices offset+1 .. offset+rank of a larger series.

    offset 0 with rank-1 is the embedding that keeps the first indices; offset 1
    is the shifted embedding X_ab ↦ X_{a+1,b+1}.
    """

    def __init__(self, base, offset, rank):
        super().__init__()
        if rank < 1 or offset < 0 or offset + rank > base.rank:
            raise ValidationError("window out of range")
        self.base = base
        self.offset = offset
        self.rank = rank
        self.case = base.case
        self.q = base.q
        self.space = base.space

    def grid(self, u, sign="-"):
        g = self.base.grid(u, sign)
        o, r = self.offset, self.rank
        return [row[o:o + r] for row in g[o:o + r]]


def pullback(series, which):
    """Rank-lowering view: 'phi' keeps indices 1..N-1, 'psi' shifts by one."""
    if series.rank < 2:
        raise ValidationError("pullback needs rank at least 2")
    if which == "phi":
        return Window(series, 0, series.rank - 1)
    if which == "psi":
        return Window(series, 1, series.rank - 1)
    raise ValidationError(f"unknown embedding {which!r}")


class BarVector(Series):
    """Rational series T_ab(u) = δ_ab - E_ab/(u-x) on C^rank; highest vector w_rank."""

    def __init__(self, rank, x, label="bar"):
        super().__init__()
        self.rank = rank
        self.x = Fraction(x)
        self.space = Space(rank, label)

    def _grid(self, u, sign):
        n = self.rank
        c = div(1, u - self.x, f"u - x at u={u}, x={self.x}")
        g = [[None] * n for _ in range(n)]
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                op = _flat(matrix_unit(n, a, b), self.space).scale(-c)
                if a == b:
                    op = op + self.identity()
                g[a - 1][b - 1] = op
        return g


class VecSeries(Series):
    """Rational series T_ab(u) = δ_ab + E_ba/(u-x) on C^rank; highest vector w_1."""

    def __init__(self, rank, x, label="vec"):
        super().__init__()
        self.rank = rank
        self.x = Fraction(x)
        self.space = Space(rank, label)

    def _grid(self, u, sign):
        n = self.rank
        c = div(1, u - self.x, f"u - x at u={u}, x={self.x}")
        g = [[None] * n for _ in range(n)]
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                op = _flat(matrix_unit(n, b, a), self.space).scale(c)
                if a == b:
                    op = op + self.identity()
                g[a - 1][b - 1] = op
        return g


def unit_vector(dim, i):
    v = [ZERO] * dim
    v[i] = ONE
    return v
