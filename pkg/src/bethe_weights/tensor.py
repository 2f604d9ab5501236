"""Dense exact multilinear algebra on tensor products of finite spaces.

Operators are stored as row-major lists of Fractions.  Multiplication skips
zero entries, which matters because almost everything we build (matrix units,
R-matrices, module actions) is very sparse even though storage is dense.

Leg positions are 1-based throughout, matching the superscript notation
X^{(i)}, X^{(ij)} for embedded factors.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import PoleError, ShapeError, ValidationError
from .field import ONE, ZERO, check_q, div


@dataclass(frozen=True)
class Space:
    dim: int
    label: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeError(f"space dimension must be positive, got {self.dim}")


def _prod(dims):
    out = 1
    for d in dims:
        out *= d
    return out


class LinearOperator:
    """An exact matrix between ordered lists of spaces."""

    __slots__ = ("codomain", "domain", "rows", "_nz")

    def __init__(self, codomain, domain, rows):
        self.codomain = tuple(codomain)
        self.domain = tuple(domain)
        self.rows = rows
        self._nz = None
        if len(rows) != self.nrows or any(len(r) != self.ncols for r in rows):
            raise ShapeError("entry grid does not match the space lists")

    @property
    def nrows(self):
        return _prod(s.dim for s in self.codomain)

    @property
    def ncols(self):
        return _prod(s.dim for s in self.domain)

    @classmethod
    def zeros(cls, codomain, domain):
        codomain, domain = tuple(codomain), tuple(domain)
        m = _prod(s.dim for s in codomain)
        n = _prod(s.dim for s in domain)
        return cls(codomain, domain, [[ZERO] * n for _ in range(m)])

    @classmethod
    def identity(cls, spaces):
        spaces = tuple(spaces)
        op = cls.zeros(spaces, spaces)
        for i in range(op.nrows):
            op.rows[i][i] = ONE
        return op

    @classmethod
    def from_rows(cls, rows, label=""):
        """Square or rectangular operator on single anonymous spaces."""
        rows = [[Fraction(x) for x in r] for r in rows]
        return cls((Space(len(rows), label),), (Space(len(rows[0]), label),), rows)

    def nonzeros(self):
        if self._nz is None:
            self._nz = [[(j, x) for j, x in enumerate(r) if x] for r in self.rows]
        return self._nz

    def is_square(self):
        return self.codomain == self.domain

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return (self.codomain == other.codomain and self.domain == other.domain
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.codomain, self.domain, tuple(map(tuple, self.rows))))

    def __repr__(self):
        return f"LinearOperator({self.nrows}x{self.ncols})"

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def _check_same(self, other):
        if self.codomain != other.codomain or self.domain != other.domain:
            raise ShapeError("operators live on different spaces")

    def __add__(self, other):
        self._check_same(other)
        return LinearOperator(self.codomain, self.domain,
                              [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check_same(other)
        return LinearOperator(self.codomain, self.domain,
                              [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return LinearOperator(self.codomain, self.domain, [[c * a for a in r] for r in self.rows])

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if self.domain != other.codomain:
            raise ShapeError("inner space lists do not match")
        ncols = other.ncols
        onz = other.nonzeros()
        out = []
        for row in self.nonzeros():
            acc = [ZERO] * ncols
            for k, a in row:
                for j, b in onz[k]:
                    acc[j] += a * b
            out.append(acc)
        return LinearOperator(self.codomain, other.domain, out)

    def apply(self, vec):
        """Matrix times coordinate vector."""
        if len(vec) != self.ncols:
            raise ShapeError("vector length does not match the domain")
        return [sum((x * vec[j] for j, x in row), ZERO) for row in self.nonzeros()]

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return LinearOperator(self.domain, self.codomain, [list(c) for c in zip(*self.rows)])

    def trace(self):
        if self.nrows != self.ncols:
            raise ShapeError("trace of a non-square operator")
        return sum((self.rows[i][i] for i in range(self.nrows)), ZERO)


def add_all(ops, like=None):
    """Sum of a list of operators (``like`` supplies the shape when empty)."""
    ops = list(ops)
    if not ops:
        return LinearOperator.zeros(like.codomain, like.domain)
    rows = [list(r) for r in ops[0].rows]
    for op in ops[1:]:
        ops[0]._check_same(op)
        for r, s in zip(rows, op.rows):
            for j, x in enumerate(s):
                if x:
                    r[j] += x
    return LinearOperator(ops[0].codomain, ops[0].domain, rows)


def matrix_unit(n, a, b, label=""):
    """E_ab on C^n, 1-based indices."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValidationError(f"matrix unit index ({a},{b}) out of range 1..{n}")
    sp = Space(n, label)
    op = LinearOperator.zeros((sp,), (sp,))
    op.rows[a - 1][b - 1] = ONE
    return op


def identity(n, label=""):
    return LinearOperator.identity((Space(n, label),))


def kron(ops):
    """Kronecker product in the given order; space lists concatenate."""
    ops = list(ops)
    if not ops:
        raise ShapeError("kron needs at least one factor")
    out = ops[0]
    for op in ops[1:]:
        m, n = op.nrows, op.ncols
        rows = []
        onz = op.nonzeros()
        for r in out.rows:
            block = [[ZERO] * (len(r) * n) for _ in range(m)]
            for j, a in enumerate(r):
                if not a:
                    continue
                base = j * n
                for i in range(m):
                    brow = block[i]
                    for jj, b in onz[i]:
                        brow[base + jj] = a * b
            rows.extend(block)
        out = LinearOperator(out.codomain + op.codomain, out.domain + op.domain, rows)
    return out


def _strides(dims):
    st = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        st[i] = st[i + 1] * dims[i + 1]
    return st


def embed_leg(op, positions, spaces):
    """Place ``op`` (acting on len(positions) legs) at ``positions`` of ``spaces``.

    positions[k] is the 1-based target leg of op's k-th leg, so positions (2,1)
    realizes the transposed placement (a⊗b)^{(21)} = b⊗a.
    """
    spaces = tuple(spaces)
    positions = [int(p) for p in positions]
    if len(positions) != len(op.domain) or len(op.domain) != len(op.codomain):
        raise ShapeError("operator legs and positions disagree")
    if len(set(positions)) != len(positions):
        raise ValidationError(f"repeated leg position in {positions}")
    for k, p in enumerate(positions):
        if not 1 <= p <= len(spaces):
            raise ValidationError(f"leg position {p} out of range 1..{len(spaces)}")
        if op.domain[k].dim != spaces[p - 1].dim or op.codomain[k].dim != spaces[p - 1].dim:
            raise ShapeError(f"leg {p} dimension mismatch")
    dims = [s.dim for s in spaces]
    st = _strides(dims)
    odims = [s.dim for s in op.domain]
    ost = _strides(odims)
    pos0 = [p - 1 for p in positions]
    rest = [i for i in range(len(dims)) if i not in pos0]
    total = _prod(dims)
    out = [[ZERO] * total for _ in range(total)]
    onz = op.nonzeros()
    # decompose op indices into per-leg offsets in the big space
    def offsets(idx):
        off = 0
        for k, p in enumerate(pos0):
            off += ((idx // ost[k]) % odims[k]) * st[p]
        return off
    ooff = [offsets(i) for i in range(op.nrows)]
    for rest_idx in product(*(range(dims[i]) for i in rest)):
        base = sum(v * st[i] for v, i in zip(rest_idx, rest))
        for oi in range(op.nrows):
            row = out[base + ooff[oi]]
            for oj, x in onz[oi]:
                row[base + ooff[oj]] = x
    return LinearOperator(spaces, spaces, out)


def partial_trace(op, traced):
    """Trace over the listed 1-based legs; legs must be square."""
    if len(op.domain) != len(op.codomain):
        raise ShapeError("partial trace needs matching leg counts")
    traced = sorted(set(int(p) for p in traced))
    for p in traced:
        if not 1 <= p <= len(op.domain):
            raise ValidationError(f"traced leg {p} out of range")
        if op.domain[p - 1].dim != op.codomain[p - 1].dim:
            raise ShapeError(f"traced leg {p} is not square")
    keep = [i for i in range(len(op.domain)) if i + 1 not in traced]
    rdims = [s.dim for s in op.codomain]
    cdims = [s.dim for s in op.domain]
    rst, cst = _strides(rdims), _strides(cdims)
    tdims = [rdims[p - 1] for p in traced]
    tr_r = [sum(v * rst[p - 1] for v, p in zip(idx, traced)) for idx in product(*map(range, tdims))]
    tr_c = [sum(v * cst[p - 1] for v, p in zip(idx, traced)) for idx in product(*map(range, tdims))]
    kr = [sum(v * rst[i] for v, i in zip(idx, keep)) for idx in product(*(range(rdims[i]) for i in keep))]
    kc = [sum(v * cst[i] for v, i in zip(idx, keep)) for idx in product(*(range(cdims[i]) for i in keep))]
    rows = []
    for r0 in kr:
        row = []
        for c0 in kc:
            s = ZERO
            for a, b in zip(tr_r, tr_c):
                x = op.rows[r0 + a][c0 + b]
                if x:
                    s += x
            row.append(s)
        rows.append(row)
    cod = tuple(op.codomain[i] for i in keep) or (Space(1, "scalar"),)
    dom = tuple(op.domain[i] for i in keep) or (Space(1, "scalar"),)
    return LinearOperator(cod, dom, rows)


def flip(n, label="aux"):
    """The permutation P on C^n ⊗ C^n."""
    sp = Space(n, label)
    op = LinearOperator.zeros((sp, sp), (sp, sp))
    for a in range(n):
        for b in range(n):
            op.rows[a * n + b][b * n + a] = ONE
    return op


def r_matrix(case, n, u, q=None, label="aux"):
    """Rational R(u) = u + P or the trigonometric R_q(u) on C^n ⊗ C^n."""
    u = Fraction(u)
    sp = Space(n, label)
    op = LinearOperator.zeros((sp, sp), (sp, sp))
    rows = op.rows
    if case == "rational":
        for c in range(n):
            for d in range(n):
                rows[c * n + d][c * n + d] += u
                rows[d * n + c][c * n + d] += ONE
        return op
    if case != "trigonometric":
        raise ValidationError(f"unknown case {case!r}")
    q = check_q(q)
    qq = q - 1 / q
    for c in range(n):
        rows[c * n + c][c * n + c] = u * q - 1 / q
        for d in range(n):
            if c == d:
                continue
            rows[c * n + d][c * n + d] = u - 1
            rows[d * n + c][c * n + d] = u * qq if c > d else qq
    return op


def r_check(case, n, u, q=None, normalized=False, label="aux"):
    """P·R(u); with ``normalized`` the rational (u+1)^-1 P R(u)."""
    op = flip(n, label) @ r_matrix(case, n, u, q, label)
    if normalized:
        if case != "rational":
            raise ValidationError("the normalized braid form is defined for the rational case")
        op = op.scale(div(1, Fraction(u) + 1, "u+1 in normalized R-check"))
    return op


def transposed_r(op):
    """R^{(21)} = P R P for an operator on two equal legs."""
    n = op.domain[0].dim
    P = flip(n, op.domain[0].label)
    return P @ op @ P


__all__ = [
    "Space", "LinearOperator", "matrix_unit", "identity", "kron", "embed_leg",
    "partial_trace", "flip", "r_matrix", "r_check", "transposed_r", "add_all",
    "PoleError",
]
