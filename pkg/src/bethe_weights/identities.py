"""Symmetrization identities behind the combinatorial formulae.

Each identity is given as a pair of functions ``*_lhs`` / ``*_rhs`` evaluated
at a point.  The left sides go through the shared ``sym_bar`` machinery; the
right sides enumerate permutations and index tuples explicitly with their own
kernel code, so that the two sides never share a summation path.
"""

from itertools import combinations, permutations

from .field import ONE, ZERO, div, factorial, q_factorial
from .sym import sym_bar


# -- independent kernels used by the right-hand sides -----------------------

def _kernel(case, vals, q=None):
    """W_k(vals), written out independently of ``sym.w_factor``."""
    out = ONE
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            a, b = vals[i], vals[j]
            if case == "rational":
                num = a - b - 1
            else:
                num = a / q - q * b
            out *= div(num, a - b, "coincident symmetrized variables")
    return out


def _ratio(case, y, z, q=None):
    """(y - z + 1)/(y - z) or (q y - q^-1 z)/(y - z)."""
    num = y - z + 1 if case == "rational" else q * y - z / q
    return div(num, y - z, "y - z")


def _ratio_inv(y, z, q):
    """(q^-1 y - q z)/(y - z)."""
    return div(y / q - q * z, y - z, "y - z")


# -- permutation sums -------------------------------------------------------

def perm_sum_w(case, k, vals, q=None):
    """Σ_σ W_k(σ t) by direct enumeration; equals k! or [k]_q!."""
    total = ZERO
    for perm in permutations(vals[:k]):
        total += _kernel(case, perm, q)
    return total


def perm_sum_expected(case, k, q=None):
    return factorial(k) if case == "rational" else q_factorial(k, q)


# -- rational G identities --------------------------------------------------

def g_function(y, z):
    """G_{p,r}(y; z) through Sym-bar over z."""
    p, r = len(y), len(z)

    def f(s):
        zz = s[0]
        out = ONE
        for i in range(p):
            out *= div(1, y[i] - zz[i + r - p], "y - z")
            for j in range(i + 1, p):
                out *= _ratio("rational", y[i], zz[j + r - p])
        return out

    return sym_bar("rational", [list(z)], f) / factorial(r - p)


def g_function_dsum(y, z):
    """Explicit d-tuple sum equal to G_{p,r}."""
    p, r = len(y), len(z)
    total = ZERO
    for d in combinations(range(r), p):
        for perm in permutations(y):
            term = _kernel("rational", perm)
            for i in range(p):
                term *= div(1, perm[i] - z[d[i]], "y - z")
                for j in range(d[i] + 1, r):
                    term *= _ratio("rational", perm[i], z[j])
            total += term
    return total


def _shifted(y, z, shift):
    return div(y - z + shift, y - z, "y - z")


def g_mirror_lhs(y, z, shift=-1):
    """(1/(r-p)!) Sym-bar_z of ∏ 1/(y_i - z_i) ∏_{j<i} (y_i - z_j + shift)/(y_i - z_j).

    The mirror image of ``g_function`` under y, z -> -y, -z carries shift -1;
    shift +1 is kept selectable to show that it does not give an identity.
    """
    p, r = len(y), len(z)

    def f(s):
        zz = s[0]
        out = ONE
        for i in range(p):
            out *= div(1, y[i] - zz[i], "y - z")
            for j in range(i):
                out *= _shifted(y[i], zz[j], shift)
        return out

    return sym_bar("rational", [list(z)], f) / factorial(r - p)


def g_mirror_rhs(y, z, shift=-1):
    p, r = len(y), len(z)
    total = ZERO
    for d in combinations(range(r), p):
        for perm in permutations(y):
            term = _kernel("rational", perm)
            for i in range(p):
                term *= div(1, perm[i] - z[d[i]], "y - z")
                for j in range(d[i]):
                    term *= _shifted(perm[i], z[j], shift)
            total += term
    return total


# -- trigonometric G identities ---------------------------------------------

def gq_lhs(y, z, q):
    """Sym_z of the shifted product times the trigonometric W_r(z)."""
    p, r = len(y), len(z)

    def f(s):
        zz = s[0]
        out = ONE
        for i in range(p):
            out *= div(1, y[i] - zz[i + r - p], "y - z")
            for j in range(i + 1, p):
                out *= _ratio("trigonometric", y[i], zz[j + r - p], q)
        return out

    return sym_bar("trigonometric", [list(z)], f, q)


def gq_rhs(y, z, q):
    p, r = len(y), len(z)
    total = ZERO
    for d in combinations(range(r), p):
        for perm in permutations(y):
            term = _kernel("trigonometric", perm, q)
            for i in range(p):
                term *= q ** (i - d[i]) * div(1, perm[i] - z[d[i]], "y - z")
                for j in range(d[i] + 1, r):
                    term *= _ratio("trigonometric", perm[i], z[j], q)
            total += term
    return q_factorial(r - p, q) * total


def gq_mirror_lhs(y, z, q, inclusive=False):
    """Mirrored trigonometric left side over 1 ≤ j < i.

    ``inclusive=True`` also takes the j = i factor; that variant is not an
    identity and exists only so the difference can be demonstrated.
    """
    p, r = len(y), len(z)

    def f(s):
        zz = s[0]
        out = ONE
        for i in range(p):
            out *= q ** (p - r) * div(1, y[i] - zz[i], "y - z")
            for j in range(i + 1 if inclusive else i):
                out *= _ratio_inv(y[i], zz[j], q)
        return out

    return sym_bar("trigonometric", [list(z)], f, q)


def gq_mirror_rhs(y, z, q):
    p, r = len(y), len(z)
    total = ZERO
    for d in combinations(range(r), p):
        for perm in permutations(y):
            term = _kernel("trigonometric", perm, q)
            for i in range(p):
                term *= q ** (i - d[i]) * div(1, perm[i] - z[d[i]], "y - z")
                for j in range(d[i]):
                    term *= _ratio_inv(perm[i], z[j], q)
            total += term
    return q_factorial(r - p, q) * total


# -- the F / Y identity -----------------------------------------------------

def y_function(eta, s):
    """Y_η(s) for nonincreasing η (rational)."""
    out = ONE
    for a in range(len(eta) - 1):
        shift = eta[a] - eta[a + 1]
        for i in range(eta[a + 1]):
            out *= div(1, s[a + 1][i] - s[a][i + shift], "s - s")
            for j in range(i + 1, eta[a + 1]):
                out *= _ratio("rational", s[a + 1][i], s[a][j + shift])
    return out


def level_sum_lhs(eta, s):
    scale = factorial(eta[-1])
    for a in range(len(eta) - 1):
        scale *= factorial(eta[a] - eta[a + 1])
    return sym_bar("rational", [list(r) for r in s], lambda ss: y_function(eta, ss)) / scale


def l_collections(eta):
    """All l with 1 ≤ l^a_1 < … < l^a_{η^{a+1}} ≤ η^a (0-based tuples)."""
    choices = [list(combinations(range(eta[a]), eta[a + 1])) for a in range(len(eta) - 1)]
    out = [[]]
    for opts in choices:
        out = [c + [o] for c in out for o in opts]
    return out


def f_function(eta, l, s):
    out = ONE
    for a, la in enumerate(l):
        for i in range(eta[a + 1]):
            out *= div(1, s[a + 1][i] - s[a][la[i]], "s - s")
            for j in range(la[i] + 1, eta[a]):
                out *= _ratio("rational", s[a + 1][i], s[a][j])
    return out


def level_sum_rhs(eta, s):
    """Σ_l Sym-bar over levels 2..N-1 of F_l, by explicit enumeration."""
    levels = [list(permutations(range(k))) for k in eta[1:]]
    sigmas = [[]]
    for opts in levels:
        sigmas = [c + [o] for c in sigmas for o in opts]
    total = ZERO
    for sigma in sigmas:
        ss = [list(s[0])] + [[row[i] for i in perm] for row, perm in zip(s[1:], sigma)]
        w = ONE
        for row in ss[1:]:
            w *= _kernel("rational", row)
        if w == 0:
            continue
        for l in l_collections(eta):
            total += w * f_function(eta, l, ss)
    return total
