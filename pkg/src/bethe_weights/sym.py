"""Symmetrization over the product of symmetric groups S_{ξ¹}×…×S_{ξ^{N-1}}.

Variables are stored level by level: ``t[a][i]`` is the (i+1)-th variable of
level a+1.  Summands may be Scalars, coordinate lists or LinearOperators.
"""

from fractions import Fraction
from itertools import permutations, product

from .errors import BetheError
from .field import ONE, ZERO, div
from .tensor import LinearOperator


def w_factor(case, vars_, q=None):
    """W_k: ∏_{i<j} (t_i-t_j-1)/(t_i-t_j), or ∏ (q^-1 t_i - q t_j)/(t_i-t_j)."""
    out = ONE
    k = len(vars_)
    for i in range(k):
        for j in range(i + 1, k):
            d = vars_[i] - vars_[j]
            if case == "rational":
                num = d - 1
            else:
                num = vars_[i] / q - q * vars_[j]
            out *= div(num, d, f"t_{i+1} - t_{j+1}")
    return out


class Accumulator:
    """Exact sum of Scalars, coordinate lists or operators."""

    def __init__(self):
        self.value = None

    def add(self, item, c=ONE):
        if item is None or c == 0:
            return
        if isinstance(item, LinearOperator):
            term = item.scale(c) if c != 1 else item
            self.value = term if self.value is None else self.value + term
        elif isinstance(item, list):
            if self.value is None:
                self.value = [ZERO] * len(item)
            v = self.value
            for i, x in enumerate(item):
                if x:
                    v[i] += c * x
        else:
            term = c * Fraction(item)
            self.value = term if self.value is None else self.value + term

    def result(self, zero=ZERO):
        return zero if self.value is None else self.value


def level_permutations(xi):
    """All tuples (σ¹,…,σ^{N-1}) in a fixed order."""
    return product(*(permutations(range(k)) for k in xi))


def permute(t, sigma):
    return [[row[i] for i in s] for row, s in zip(t, sigma)]


def sym(t, f, xi=None, zero=ZERO):
    """Σ_σ f(σt)."""
    xi = xi if xi is not None else [len(r) for r in t]
    acc = Accumulator()
    for sigma in level_permutations(xi):
        acc.add(_call(f, permute(t, sigma), sigma))
    return acc.result(zero)


def sym_bar(case, t, f, q=None, zero=ZERO):
    """Σ_σ f(σt) ∏_a W_{ξ^a}(σt^a)."""
    xi = [len(r) for r in t]
    acc = Accumulator()
    for sigma in level_permutations(xi):
        s = permute(t, sigma)
        w = ONE
        for row in s:
            w *= w_factor(case, row, q)
        if w == 0:
            continue
        acc.add(_call(f, s, sigma), w)
    return acc.result(zero)


def _call(f, s, sigma):
    try:
        return f(s)
    except BetheError as exc:
        exc.args = (f"{exc.args[0] if exc.args else exc} [permutation {sigma}]",)
        raise


def head(t, eta):
    """t_[η]: the first η^a variables of every level."""
    return [row[:k] for row, k in zip(t, eta)]


def middle(t, eta, zeta):
    """t_(η,ζ]: variables η^a+1 … ζ^a of every level."""
    return [row[e:z] for row, e, z in zip(t, eta, zeta)]


def tail(t, eta):
    """t_(η,ξ] with ξ the full level lengths."""
    return [row[e:] for row, e in zip(t, eta)]


def dot(seq):
    """Drop the last level."""
    return list(seq[:-1])


def ddot(seq):
    """Drop the first level."""
    return list(seq[1:])
