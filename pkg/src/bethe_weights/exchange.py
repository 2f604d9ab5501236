"""Exchange relations between the blocks A, B, D of T(u).

T(u) is split as A = T_11, the row B = (T_12 … T_1N) and the square block
D = (T_ij)_{i,j≥2}.  Products of these blocks placed on auxiliary legs are held
in ``LegMatrix``: an operator-valued matrix whose legs are either a row
(1 × (N-1)), a square block, or absent (identity of whatever size the context
needs).  Relations are compared after flattening, which forgets the leg on
which a row or column index sits but keeps the order of legs.

Every relation is returned as a (left, right) pair of flattened dictionaries;
``verify`` compares them exactly.
"""

from itertools import permutations

from .errors import ShapeError, ValidationError
from .field import ONE, div, factorial
from .tensor import LinearOperator, kron, r_check, r_matrix
from .series import TensorSeries


class LegMatrix:
    """Operator-valued matrix over ``nlegs`` auxiliary legs."""

    def __init__(self, shapes, entries):
        self.shapes = tuple(shapes)
        self.entries = entries

    @classmethod
    def scalar(cls, op, nlegs):
        return cls((None,) * nlegs, {(None,) * nlegs: op})

    @classmethod
    def on_leg(cls, table, leg, nlegs):
        """Place a rows × cols table of operators on one leg."""
        shape = (len(table), len(table[0]))
        shapes = [None] * nlegs
        shapes[leg] = shape
        entries = {}
        for i, row in enumerate(table):
            for j, op in enumerate(row):
                if not op.is_zero():
                    key = [None] * nlegs
                    key[leg] = (i, j)
                    entries[tuple(key)] = op
        return cls(shapes, entries)

    @classmethod
    def numeric(cls, op, legs, dim, nlegs, ident):
        """A numeric matrix on two legs, scaled into module operators."""
        shapes = [None] * nlegs
        for leg in legs:
            shapes[leg] = (dim, dim)
        entries = {}
        for r, row in enumerate(op.nonzeros()):
            for c, x in row:
                key = [None] * nlegs
                key[legs[0]] = (r // dim, c // dim)
                key[legs[1]] = (r % dim, c % dim)
                entries[tuple(key)] = ident.scale(x)
        return cls(shapes, entries)

    def scale(self, c):
        return LegMatrix(self.shapes, {k: v.scale(c) for k, v in self.entries.items()})

    def __matmul__(self, other):
        shapes, both = [], []
        for leg, (s, t) in enumerate(zip(self.shapes, other.shapes)):
            if s is None:
                shapes.append(t)
            elif t is None:
                shapes.append(s)
            else:
                if s[1] != t[0]:
                    raise ShapeError(f"leg {leg}: {s} cannot precede {t}")
                shapes.append((s[0], t[1]))
                both.append(leg)
        groups = {}
        for yk, yo in other.entries.items():
            groups.setdefault(tuple(yk[l][0] for l in both), []).append((yk, yo))
        out = {}
        for xk, xo in self.entries.items():
            for yk, yo in groups.get(tuple(xk[l][1] for l in both), ()):
                key = tuple(_merge(a, b) for a, b in zip(xk, yk))
                prod = xo @ yo
                out[key] = out[key] + prod if key in out else prod
        return LegMatrix(shapes, {k: v for k, v in out.items() if not v.is_zero()})

    def flat(self):
        out = {}
        for key, op in self.entries.items():
            rows = tuple(k[0] for k, s in zip(key, self.shapes) if s and s[0] > 1)
            cols = tuple(k[1] for k, s in zip(key, self.shapes) if s and s[1] > 1)
            out[(rows, cols)] = op
        return out


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return (a[0], b[1])


def flat_sum(terms):
    """Σ c·X over (c, LegMatrix) pairs, flattened, zero entries dropped."""
    out = {}
    for c, m in terms:
        if c == 0:
            continue
        for key, op in m.flat().items():
            term = op.scale(c) if c != 1 else op
            out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if not v.is_zero()}


def mul(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


class Blocks:
    """A, B and D of a rational series, placed on legs 0 … nlegs-1."""

    def __init__(self, series, nlegs):
        if series.case != "rational":
            raise ValidationError("block relations are checked in the rational case")
        if series.rank < 2:
            raise ValidationError("block relations need N ≥ 2")
        self.series = series
        self.n = series.rank - 1
        self.nlegs = nlegs
        self.ident = series.identity()

    def A(self, u):
        return LegMatrix.scalar(self.series.T(1, 1, u), self.nlegs)

    def B(self, leg, u):
        g = self.series.grid(u)
        return LegMatrix.on_leg([g[0][1:]], leg, self.nlegs)

    def D(self, leg, u):
        g = self.series.grid(u)
        return LegMatrix.on_leg([row[1:] for row in g[1:]], leg, self.nlegs)

    def one(self):
        return LegMatrix.scalar(self.ident, self.nlegs)

    def r_bar(self, legs, u):
        """R̄(u) = u^-1 (u + P) on C^{N-1} ⊗ C^{N-1}."""
        op = r_matrix("rational", self.n, u).scale(div(1, u, "argument of R-bar"))
        return LegMatrix.numeric(op, legs, self.n, self.nlegs, self.ident)

    def r_check(self, legs, u):
        """Ř(u) = (u+1)^-1 P (u + P)."""
        op = r_check("rational", self.n, u, normalized=True)
        return LegMatrix.numeric(op, legs, self.n, self.nlegs, self.ident)


# -- the symmetric-group action through Ř ------------------------------------

def reduced_word(perm):
    """Adjacent transpositions (0-based i for (i, i+1)) composing to perm."""
    perm, word = list(perm), []
    changed = True
    while changed:
        changed = False
        for i in range(len(perm) - 1):
            if perm[i] > perm[i + 1]:
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                word.append(i)
                changed = True
    return word


def transposition(blocks, f, i, legs):
    """(i, i+1) f (u) = f(u with u_i, u_{i+1} swapped) Ř^{(i,i+1)}(u_i - u_{i+1}).

    ``legs[i]`` is the auxiliary leg carrying variable i.
    """

    def g(u):
        v = list(u)
        v[i], v[i + 1] = v[i + 1], v[i]
        return f(v) @ blocks.r_check((legs[i], legs[i + 1]), u[i] - u[i + 1])

    return g


def act(blocks, f, word, legs):
    for i in reversed(word):
        f = transposition(blocks, f, i, legs)
    return f


def r_sym(blocks, f, u, legs):
    """Σ_σ (σ f)(u) over S_k, k = len(u); a flattened dictionary."""
    terms = []
    for perm in permutations(range(len(u))):
        terms.append((ONE, act(blocks, f, reduced_word(perm), legs)(u)))
    return flat_sum(terms)


# -- individual relations ----------------------------------------------------

def rel_aa(series, u, v):
    b = Blocks(series, 1)
    return flat_sum([(1, b.A(u) @ b.A(v))]), flat_sum([(1, b.A(v) @ b.A(u))])


def rel_bbr(series, u, v):
    b = Blocks(series, 2)
    lhs = flat_sum([(1, b.B(0, u) @ b.B(1, v))])
    c = div(u - v, u - v + 1, "u - v + 1")
    rhs = flat_sum([(c, mul(b.B(1, v), b.B(0, u), b.r_bar((0, 1), u - v)))])
    return lhs, rhs


def rel_ab(series, u, v):
    b = Blocks(series, 1)
    lhs = flat_sum([(1, b.A(u) @ b.B(0, v))])
    rhs = flat_sum([
        (div(u - v - 1, u - v, "u - v"), b.B(0, v) @ b.A(u)),
        (div(1, u - v, "u - v"), b.B(0, u) @ b.A(v)),
    ])
    return lhs, rhs


def rel_db(series, u, v, variant="plain"):
    """``variant="scaled"`` puts (u-v+1)/(u-v) in front of the first term."""
    b = Blocks(series, 2)
    lhs = flat_sum([(1, b.D(0, u) @ b.B(1, v))])
    c = div(u - v + 1, u - v, "u - v") if variant == "scaled" else ONE
    rhs = flat_sum([
        (c, mul(b.B(1, v), b.D(0, u), b.r_bar((0, 1), u - v))),
        (-div(1, u - v, "u - v"), b.B(0, u) @ b.D(1, v)),
    ])
    return lhs, rhs


def rel_dd(series, u, v):
    b = Blocks(series, 2)
    lhs = flat_sum([(1, mul(b.r_bar((0, 1), u - v), b.D(0, u), b.D(1, v)))])
    rhs = flat_sum([(1, mul(b.D(1, v), b.D(0, u), b.r_bar((0, 1), u - v)))])
    return lhs, rhs


def b_product(b, us, legs):
    out = b.one()
    for leg, x in zip(legs, us):
        out = out @ b.B(leg, x)
    return out


def rel_braid(series, us):
    """s1 s2 s1 = s2 s1 s2 for the Ř-action on a generic expression."""
    k = len(us)
    b = Blocks(series, k)
    legs = list(range(k))

    def f(v):
        # products of different blocks at distinct points: no symmetry to hide behind
        out = b.D(0, v[0])
        for leg in range(1, k):
            out = out @ b.D(leg, v[leg] + leg)
        return out

    lhs = flat_sum([(1, act(b, f, [0, 1, 0], legs)(us))])
    rhs = flat_sum([(1, act(b, f, [1, 0, 1], legs)(us))])
    return lhs, rhs


def rel_b_invariance(series, us, i):
    """B¹(u_1)…B^k(u_k) is fixed by the transposition (i, i+1)."""
    k = len(us)
    b = Blocks(series, k)
    legs = list(range(k))
    f = lambda v: b_product(b, v, legs)
    return flat_sum([(1, f(us))]), flat_sum([(1, transposition(b, f, i, legs)(us))])


def rel_abb(series, u, us):
    k = len(us)
    b = Blocks(series, k)
    legs = list(range(k))
    c = ONE
    for x in us:
        c *= div(u - x - 1, u - x, "u - u_i")
    lhs = flat_sum([(1, b.A(u) @ b_product(b, us, legs))])
    first = flat_sum([(c, b_product(b, us, legs) @ b.A(u))])

    def f(v):
        w = div(1, u - v[0], "u - u_1")
        for x in v[1:]:
            w *= div(v[0] - x - 1, v[0] - x, "u_1 - u_i")
        return mul(b.B(0, u), b_product(b, v[1:], legs[1:]), b.A(v[0])).scale(w)

    second = r_sym(b, f, us, legs)
    return lhs, _add(first, second, div(1, factorial(k - 1)))


def rel_dbb(series, u, us, variant="plain"):
    """D⁰(u) B¹(u_1)…B^k(u_k) expanded; legs 0 … k.

    ``variant="scaled"`` is the form with ∏ (u-u_i+1)/(u-u_i) in front of the
    first term and B⁰(u) together with the extra kernel inside the symmetrizer.
    """
    k = len(us)
    b = Blocks(series, k + 1)
    legs = list(range(1, k + 1))
    lhs = flat_sum([(1, b.D(0, u) @ b_product(b, us, legs))])
    first = b_product(b, us, legs) @ b.D(0, u)
    for i in reversed(range(k)):
        first = first @ b.r_bar((0, legs[i]), u - us[i])
    c = ONE
    if variant == "scaled":
        for x in us:
            c *= div(u - x + 1, u - x, "u - u_i")
    first = flat_sum([(c, first)])

    def f(v):
        w = div(1, u - v[0], "u - u_1")
        if variant == "scaled":
            for x in v[1:]:
                w *= div(v[0] - x + 1, v[0] - x, "u_1 - u_i")
        # B⁰(u) stands left of every Ř factor, so it may sit inside the sum
        out = mul(b.B(0, u), b_product(b, v[1:], legs[1:]), b.D(legs[0], v[0]))
        for i in reversed(range(1, k)):
            out = out @ b.r_bar((legs[0], legs[i]), v[0] - v[i])
        return out.scale(w)

    sym = r_sym(b, f, us, legs)
    return lhs, _add(first, sym, -div(1, factorial(k - 1)))


def _add(x, y, c):
    out = dict(x)
    for key, op in y.items():
        term = op.scale(c)
        out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if not v.is_zero()}


# -- the coproduct of a B-product --------------------------------------------

def rel_coproduct(v1, v2, us):
    """Δ(B¹(u_1)…B^k(u_k)) against the l-sum of symmetrized factor products."""
    k = len(us)
    asm = TensorSeries([v1, v2])
    big = Blocks(asm, k)
    legs = list(range(k))
    lhs = flat_sum([(1, b_product(big, us, legs))])

    I1, I2 = v1.identity(), v2.identity()

    def first(op):
        return LinearOperator((asm.space,), (asm.space,), kron([op, I2]).rows)

    def second(op):
        return LinearOperator((asm.space,), (asm.space,), kron([I1, op]).rows)

    def lifted(series, lift):
        class View:
            rank, case = series.rank, series.case

            @staticmethod
            def grid(u, sign="-"):
                return [[lift(op) for op in row] for row in series.grid(u)]

            @staticmethod
            def T(a, c, u, sign="-"):
                return lift(series.T(a, c, u))

            @staticmethod
            def identity():
                return asm.identity()

        return Blocks(View, k)

    b1, b2 = lifted(v1, first), lifted(v2, second)
    terms = {}
    for l in range(k + 1):
        def f(v, l=l):
            w = ONE
            for i in range(k):
                for j in range(i + 1, k):
                    w *= div(v[i] - v[j] - 1, v[i] - v[j], "u_i - u_j")
            out = big.one()
            for i in range(l):
                out = out @ b1.B(i, v[i])
            for i in range(l, k):
                out = out @ b2.B(i, v[i])
            for i in range(l):
                out = out @ b2.A(v[i])
            for i in range(l, k):
                out = out @ b1.D(i, v[i])
            return out.scale(w)

        part = r_sym(big, f, us, legs)
        terms = _add(terms, part, div(1, factorial(l) * factorial(k - l)))
    return lhs, terms


RELATIONS = ("AA", "BBR", "AB", "DB", "DD", "ABB", "DBB", "B-coproduct")
