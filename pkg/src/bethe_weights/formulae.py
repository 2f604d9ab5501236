"""Combinatorial formulae for weight functions on evaluation modules.

All routes return the coordinate vector of B_ξ(t)·v on the module carrier.

* ``recursion_last`` / ``recursion_first`` peel off the last / first level and
  recurse to rank N-1 through the corresponding embedding;
* ``closed_last`` / ``closed_first`` are the unrolled single sums over
  triangular arrays m^{ab};
* ``tensor_split`` expresses the weight function on a tensor product through
  weight functions on the factors.

Rational and trigonometric cases share the code; the trigonometric case uses
q-factorials, q-power prefactors, the lowering generators ě_ab = k̂_b ê_ab and
the numerators (q A - q^-1 B) in place of (A - B + 1).
"""

from fractions import Fraction
from itertools import combinations, product

from .errors import ValidationError
from .field import ONE, ZERO, div, factorial, q_factorial
from .sym import Accumulator, ddot, dot, head, permute, sym_bar, tail, w_factor


class ModuleView:
    """A module at evaluation point x, seen through indices offset+1..offset+rank."""

    def __init__(self, module, x, offset=0, rank=None, lowering="standard"):
        self.module = module
        self.x = Fraction(x)
        self.offset = offset
        self.rank = module.n if rank is None else rank
        self.case = module.case
        self.q = module.q
        self.lowering = lowering
        self._memo = {}

    def phi(self):
        return ModuleView(self.module, self.x, self.offset, self.rank - 1, self.lowering)

    def psi(self):
        return ModuleView(self.module, self.x, self.offset + 1, self.rank - 1, self.lowering)

    def lam(self, a):
        return self.module.lam[self.offset + a - 1]

    def lower(self, a, b):
        """e_ab (rational) or ě_ab (trigonometric), a > b, window indices."""
        m, o = self.module, self.offset
        if self.case == "rational":
            return m.e[(a + o, b + o)]
        if self.lowering == "transposed":
            # k̂_b ê_ba uses a raising generator and kills v; kept as a contrast
            return m.k[b + o] @ m.e[(b + o, a + o)]
        return m.k[b + o] @ m.e[(a + o, b + o)]

    @property
    def vector(self):
        return self.module.vector


def _cross(case, q, a, b, what):
    """(a - b + 1)/(a - b), or (q a - q^-1 b)/(a - b)."""
    d = a - b
    num = d + 1 if case == "rational" else q * a - b / q
    return div(num, d, what)


def _qfac(case, n, q):
    return factorial(n) if case == "rational" else q_factorial(n, q)


def _shift_factor(view, a, s):
    """(s - x + Λ^a)/(s - x), or q^{Λ^a} s - q^{-Λ^a} x."""
    lam, x = view.lam(a), view.x
    if view.case == "rational":
        return div(s - x + lam, s - x, f"t - x at level {a}")
    q = view.q
    return q ** lam * s - q ** (-lam) * x


def apply_word(view, word, vec):
    """Apply [(a, b, power), ...] right to left (last entry acts first)."""
    for a, b, p in reversed(word):
        if p:
            op = view.lower(a, b)
            for _ in range(p):
                vec = op.apply(vec)
    return vec


def x_factor(case, eta, s, q=None):
    out = ONE
    for a in range(1, len(eta)):
        for j in range(1, eta[a - 1] + 1):
            out *= div(1, s[a][j - 1] - s[a - 1][j - 1], f"s^{a+1}_{j} - s^{a}_{j}")
            for i in range(1, j):
                out *= _cross(case, q, s[a][i - 1], s[a - 1][j - 1], f"s^{a+1}_{i} - s^{a}_{j}")
    return out


def y_factor(case, eta, s, q=None):
    out = ONE
    for a in range(2, len(eta) + 1):
        for j in range(1, eta[a - 1] + 1):
            k = j + eta[a - 2] - eta[a - 1]
            out *= div(1, s[a - 1][j - 1] - s[a - 2][k - 1], f"s^{a}_{j} - s^{a-1}_{k}")
            for i in range(1, j):
                out *= _cross(case, q, s[a - 1][i - 1], s[a - 2][k - 1], f"s^{a}_{i} - s^{a-1}_{k}")
    return out


def z_factor(case, xi, eta, t, s, q=None):
    out = ONE
    for a in range(1, len(xi)):
        for i in range(1, xi[a] + 1):
            for j in range(1, eta[a - 1] + 1):
                out *= _cross(case, q, t[a][i - 1], s[a - 1][j - 1], f"t^{a+1}_{i} - s^{a}_{j}")
    return out


def _key(xi, t):
    return (tuple(xi), tuple(tuple(r) for r in t))


def _etas_last(xi):
    """η¹ ≤ … ≤ η^{L} = ξ^{L}, η^a ≤ ξ^a."""
    L = len(xi)
    out = []

    def rec(a, upper, acc):
        if a < 0:
            out.append(tuple(reversed(acc)))
            return
        for e in range(min(xi[a], upper), -1, -1):
            rec(a - 1, e, acc + [e])

    rec(L - 2, xi[-1], [xi[-1]])
    return sorted(out)


def _etas_first(xi):
    """ξ¹ = η¹ ≥ … ≥ η^{L}, η^a ≤ ξ^a."""
    L = len(xi)
    out = []

    def rec(a, upper, acc):
        if a == L:
            out.append(tuple(acc))
            return
        for e in range(min(xi[a], upper) + 1):
            rec(a + 1, e, acc + [e])

    rec(1, xi[0], [xi[0]])
    return sorted(out)


def recursion_last(view, xi, t):
    """Peel the last level, recurse through the embedding keeping indices 1..N-1."""
    xi = list(xi)
    if not xi:
        return list(view.vector)
    key = _key(xi, t)
    if key in view._memo:
        return view._memo[key]
    case, q, r = view.case, view.q, view.rank
    inner_view = view.phi()
    acc = Accumulator()
    for eta in _etas_last(xi):
        rest = [x - e for x, e in zip(xi, eta)]
        if case == "rational":
            c = Fraction(1, factorial(eta[0]))
            for a in range(1, r - 1):
                c /= factorial(rest[a - 1]) * factorial(eta[a] - eta[a - 1])
        else:
            c = (q - 1 / q) ** sum(eta) / q_factorial(eta[0], q)
            for a in range(1, r - 1):
                c *= Fraction(q) ** (eta[a - 1] * (eta[a - 1] - eta[a]))
                c /= q_factorial(rest[a - 1], q) * q_factorial(eta[a] - eta[a - 1], q)
        word = [(r, b, eta[b - 1] - (eta[b - 2] if b > 1 else 0)) for b in range(r - 1, 0, -1)]

        def f(s, eta=eta, rest=rest, word=word):
            A, B = head(s, rest), tail(s, rest)
            val = x_factor(case, eta, B, q) * z_factor(case, rest, eta, A, B, q)
            for a in range(1, r - 1):
                for i in range(eta[a - 1]):
                    val *= _shift_factor(view, a + 1, s[a - 1][xi[a - 1] - i - 1])
            if val == 0:
                return None
            inner = recursion_last(inner_view, dot(rest), dot(A))
            return [val * y for y in apply_word(view, word, inner)]

        acc.add(sym_bar(case, t, f, q, zero=None), c)
    out = acc.result([ZERO] * len(view.vector))
    if case == "rational":
        for i, s in enumerate(t[-1]):
            out = [div(1, s - view.x, f"t^{r-1}_{i+1} - x") * y for y in out]
    view._memo[key] = out
    return out


def recursion_first(view, xi, t):
    """Peel the first level, recurse through the shifted embedding."""
    xi = list(xi)
    if not xi:
        return list(view.vector)
    key = _key(xi, t)
    if key in view._memo:
        return view._memo[key]
    case, q, r = view.case, view.q, view.rank
    inner_view = view.psi()
    acc = Accumulator()
    for eta in _etas_first(xi):
        rest = [x - e for x, e in zip(xi, eta)]
        if case == "rational":
            c = Fraction(1, factorial(eta[-1]))
            for a in range(2, r):
                c /= factorial(rest[a - 1]) * factorial(eta[a - 2] - eta[a - 1])
        else:
            c = (q - 1 / q) ** sum(eta) / q_factorial(eta[-1], q)
            for a in range(2, r):
                c *= Fraction(q) ** (eta[a - 1] * (eta[a - 2] - eta[a - 1]))
                c /= q_factorial(rest[a - 1], q) * q_factorial(eta[a - 2] - eta[a - 1], q)
        ext = list(eta) + [0]
        word = [(b + 1, 1, ext[b - 1] - ext[b]) for b in range(1, r)]

        def f(s, eta=eta, rest=rest, word=word):
            H, T = head(s, eta), tail(s, eta)
            val = y_factor(case, eta, H, q) * z_factor(case, eta, rest, H, T, q)
            for a in range(2, r):
                for i in range(eta[a - 1]):
                    val *= _shift_factor(view, a, s[a - 1][i])
            if val == 0:
                return None
            inner = recursion_first(inner_view, ddot(rest), ddot(T))
            return [val * y for y in apply_word(view, word, inner)]

        acc.add(sym_bar(case, t, f, q, zero=None), c)
    out = acc.result([ZERO] * len(view.vector))
    if case == "rational":
        for i, s in enumerate(t[0]):
            out = [div(1, s - view.x, f"t^1_{i+1} - x") * y for y in out]
    view._memo[key] = out
    return out


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def m_arrays_last(xi):
    """Arrays with Σ_{c>b} m^{cb} = ξ^b and m^{a1} ≤ … ≤ m^{a,a-1}."""
    r = len(xi) + 1
    out = []

    def rec(b, m):
        if b == r:
            out.append(dict(m))
            return
        # column b holds m^{b+1,b}, …, m^{r,b}
        for col in _compositions(xi[b - 1], r - b):
            ok = all(b == 1 or col[i] >= m[(b + 1 + i, b - 1)] for i in range(r - b))
            if not ok:
                continue
            for i, v in enumerate(col):
                m[(b + 1 + i, b)] = v
            rec(b + 1, m)
            for i in range(r - b):
                del m[(b + 1 + i, b)]

    rec(1, {})
    return out


def m_arrays_first(xi):
    """Arrays with Σ_{b≤a} m^{a+1,b} = ξ^a and m^{b+1,b} ≥ … ≥ m^{r,b}."""
    r = len(xi) + 1
    out = []

    def rec(a, m):
        if a == r:
            # column monotonicity
            for b in range(1, r):
                col = [m[(c, b)] for c in range(b + 1, r + 1)]
                if any(col[i] < col[i + 1] for i in range(len(col) - 1)):
                    return
            out.append(dict(m))
            return
        for row in _compositions(xi[a - 1], a):
            for b, v in enumerate(row, start=1):
                m[(a + 1, b)] = v
            rec(a + 1, m)
        for b in range(1, a + 1):
            m.pop((a + 1, b), None)

    rec(1, {})
    return out


def word_order_last(pairs):
    """e_ab left of e_cd if a > c, or a = c and b > d."""
    return sorted(pairs, key=lambda ab: (-ab[0], -ab[1]))


def word_order_first(pairs):
    """e_ab left of e_cd if b < d, or b = d and a < c."""
    return sorted(pairs, key=lambda ab: (ab[1], ab[0]))


def closed_last(view, xi, t):
    """Single sum over arrays m, unrolling the last-level recursion."""
    case, q, r = view.case, view.q, view.rank
    xi = list(xi)
    if not xi or sum(xi) == 0:
        return list(view.vector)
    pairs = [(a, b) for a in range(2, r + 1) for b in range(1, a)]
    acc = Accumulator()
    for m in m_arrays_last(xi):
        def mm(a, b):
            return 0 if b == 0 else m[(a, b)]
        c = ONE
        word = []
        for a, b in word_order_last(pairs):
            p = mm(a, b) - mm(a, b - 1)
            if case == "rational":
                c /= factorial(p)
            else:
                c *= Fraction(q) ** (mm(a, b - 1) * (mm(a, b - 1) - mm(a, b))) / q_factorial(p, q)
            word.append((a, b, p))
        vec = apply_word(view, word, view.vector)
        if not any(vec):
            continue

        def mt(a, b):
            return sum(m[(c, b)] for c in range(b + 1, a))

        def f(s):
            val = ONE
            for a in range(3, r + 1):
                for b in range(1, a - 1):
                    for i in range(1, m[(a, b)] + 1):
                        sb = s[b - 1][i + mt(a, b) - 1]
                        k = i + mt(a, b + 1)
                        top = (sb - view.x + view.lam(b + 1) if case == "rational"
                               else q ** view.lam(b + 1) * sb - q ** (-view.lam(b + 1)) * view.x)
                        val *= div(top, s[b][k - 1] - sb, f"t^{b+1}_{k} - t^{b}")
                        for j in range(1, k):
                            val *= _cross(case, q, s[b][j - 1], sb, f"t^{b+1}_{j} - t^{b}")
            return val

        acc.add(vec, c * sym_bar(case, t, f, q))
    out = acc.result([ZERO] * len(view.vector))
    if case == "rational":
        pre = ONE
        for a, row in enumerate(t):
            for i, s in enumerate(row):
                pre *= div(1, s - view.x, f"t^{a+1}_{i+1} - x")
    else:
        pre = (q - 1 / q) ** sum(xi)
    return [pre * y for y in out]


def closed_first(view, xi, t):
    """Single sum over arrays m, unrolling the first-level recursion."""
    case, q, r = view.case, view.q, view.rank
    xi = list(xi)
    if not xi or sum(xi) == 0:
        return list(view.vector)
    pairs = [(a, b) for a in range(2, r + 1) for b in range(1, a)]
    acc = Accumulator()
    for m in m_arrays_first(xi):
        def mm(a, b):
            return 0 if a == r + 1 else m[(a, b)]
        c = ONE
        word = []
        for a, b in word_order_first(pairs):
            p = mm(a, b) - mm(a + 1, b)
            if case == "rational":
                c /= factorial(p)
            else:
                c *= Fraction(q) ** (mm(a + 1, b) * p) / q_factorial(p, q)
            word.append((a, b, p))
        vec = apply_word(view, word, view.vector)
        if not any(vec):
            continue

        def mh(a, b):
            return sum(m[(a, c)] for c in range(1, b + 1))

        def f(s):
            val = ONE
            for a in range(2, r):
                for b in range(1, a):
                    for i in range(m[(a + 1, b)]):
                        k = mh(a + 1, b) - i
                        sa = s[a - 1][k - 1]
                        l = mh(a, b) - i
                        top = (sa - view.x + view.lam(a) if case == "rational"
                               else q ** view.lam(a) * sa - q ** (-view.lam(a)) * view.x)
                        val *= div(top, sa - s[a - 2][l - 1], f"t^{a}_{k} - t^{a-1}_{l}")
                        for j in range(l + 1, xi[a - 2] + 1):
                            val *= _cross(case, q, sa, s[a - 2][j - 1], f"t^{a}_{k} - t^{a-1}_{j}")
            return val

        acc.add(vec, c * sym_bar(case, t, f, q))
    out = acc.result([ZERO] * len(view.vector))
    if case == "rational":
        pre = ONE
        for a, row in enumerate(t):
            for i, s in enumerate(row):
                pre *= div(1, s - view.x, f"t^{a+1}_{i+1} - x")
    else:
        pre = (q - 1 / q) ** sum(xi)
    return [pre * y for y in out]


# --- tensor products -------------------------------------------------------

def _kron_vectors(vs):
    out = [ONE]
    for v in vs:
        out = [a * b for a in out for b in v]
    return out


def _chains(xi, length):
    """η_1 ≤ … ≤ η_length ≤ ξ componentwise, in a fixed order."""
    out = []

    def rec(prev, acc):
        if len(acc) == length:
            out.append(tuple(acc))
            return
        for eta in product(*(range(p, k + 1) for p, k in zip(prev, xi))):
            rec(eta, acc + [eta])

    rec(tuple(0 for _ in xi), [])
    return out


def split_summand(factors, vectors, xi, etas, inner):
    """One chain η_0 = 0 ≤ η_1 ≤ … ≤ η_n = ξ of the tensor-product formula.

    Returns (c, f): the factorial prefactor and the bracketed expression as a
    function of the reordered variables (None where it vanishes).
    """
    n = len(factors)
    case, q = factors[0].case, factors[0].q
    L = len(xi)
    c = ONE
    for rr in range(1, n + 1):
        for a in range(L):
            c /= _qfac(case, etas[rr][a] - etas[rr - 1][a], q)

    def f(s):
        val = ONE
        for rr in range(1, n):
            lo, hi = etas[rr - 1], etas[rr]
            for a in range(L - 1):
                for i in range(lo[a + 1], hi[a + 1]):
                    for j in range(hi[a], xi[a]):
                        val *= _cross(case, q, s[a + 1][i], s[a][j], f"t^{a+2}_{i+1} - t^{a+1}_{j+1}")
        for rr in range(1, n + 1):
            fac, v = factors[rr - 1], vectors[rr - 1]
            lo, hi = etas[rr - 1], etas[rr]
            for a in range(L):
                for i in range(lo[a]):
                    val *= fac.diag_eigenvalue(a + 1, s[a][i], v)
                for j in range(hi[a], xi[a]):
                    val *= fac.diag_eigenvalue(a + 2, s[a][j], v)
        if val == 0:
            return None
        parts = []
        for rr in range(1, n + 1):
            lo, hi = etas[rr - 1], etas[rr]
            zeta = [h - l for h, l in zip(hi, lo)]
            parts.append(inner(rr - 1, zeta, [row[l:h] for row, l, h in zip(s, lo, hi)]))
        return [val * y for y in _kron_vectors(parts)]

    return c, f


def split_chains(xi, n):
    """All chains (η_0, …, η_n) with η_0 = 0 and η_n = ξ."""
    xi = tuple(xi)
    zero = tuple(0 for _ in xi)
    return [(zero,) + tuple(ch) + (xi,) for ch in _chains(xi, n - 1)]


def tensor_split(factors, vectors, xi, t, inner):
    """B_ξ(t)(v_1⊗…⊗v_n) from weight functions on the factors.

    ``factors`` are series, ``vectors`` their singular vectors and
    ``inner(i, eta, s)`` returns B_eta(s)·v_i on factor i.
    """
    case, q = factors[0].case, factors[0].q
    xi = list(xi)
    acc = Accumulator()
    for etas in split_chains(xi, len(factors)):
        c, f = split_summand(factors, vectors, xi, etas, inner)
        acc.add(sym_bar(case, t, f, q, zero=None), c)
    dim = 1
    for v in vectors:
        dim *= len(v)
    return acc.result([ZERO] * dim)


def coset_representatives(xi, eta, system="shuffle"):
    """One permutation per left coset of S_η×S_{ξ-η} in S_ξ, level by level."""
    per_level = []
    for k, e in zip(xi, eta):
        reps = []
        for chosen in combinations(range(k), e):
            rest = [i for i in range(k) if i not in chosen]
            if system == "shuffle":
                reps.append(tuple(chosen) + tuple(rest))
            elif system == "reversed":
                reps.append(tuple(reversed(chosen)) + tuple(reversed(rest)))
            else:
                raise ValidationError(f"unknown representative system {system!r}")
        per_level.append(reps)
    return list(product(*per_level))


def cross_w(case, eta, s, q=None):
    """∏_a ∏_{i≤η^a<j} W-pair factors linking the two blocks of each level."""
    out = ONE
    for row, e in zip(s, eta):
        for i in range(e):
            for j in range(e, len(row)):
                out *= w_factor(case, [row[i], row[j]], q)
    return out


def coset_sum(case, t, eta, g, system="shuffle", q=None):
    """Σ over coset representatives ρ of (g·W_cross)(ρt)."""
    acc = Accumulator()
    xi = [len(r) for r in t]
    for rho in coset_representatives(xi, eta, system):
        s = permute(t, rho)
        w = cross_w(case, eta, s, q)
        if w == 0:
            continue
        acc.add(g(s), w)
    return acc.result()
