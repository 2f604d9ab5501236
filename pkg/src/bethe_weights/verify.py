"""Verification suites.

A suite is a list of tasks; each task is one grid cell of one check and runs
a number of sampled points.  Every point produces a ``ReportEntry`` comparing
two independently computed exact values.  Points are drawn from small-height
rationals with a generator seeded by (seed, check, cell, point index), so any
entry can be reproduced on its own.  Points hitting a pole are redrawn up to
``MAX_TRIES`` times and then recorded as skipped.

Tasks are plain data, so they can be farmed out to worker processes; results
are merged back in task order, which keeps reports byte-identical.
"""

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import exchange, identities
from .components import component_recursion
from .errors import PoleError, ValidationError
from .expansions import REFERENCE_CELLS, reference_expansion
from .field import ONE, ZERO, format_scalar
from .jobs import weight_defect
from .formulae import (ModuleView, closed_first, closed_last, coset_sum, recursion_first,
                       recursion_last, split_summand, tensor_split)
from .modules import ModuleSpec, build_module
from .series import EvalModule, TensorSeries, Window
from .sym import sym_bar
from .tensor import LinearOperator, Space, embed_leg, r_check, r_matrix, transposed_r
from .trace import (dense_hat_trace, flipped_hat_trace, hat_weight_trace, monomials,
                    weight_trace, weight_vector)

SUITES = ("r-matrix", "rtt", "section5", "identities", "cross-validate")
HEIGHT = 13
MAX_TRIES = 50
Q_VALUES = (Fraction(2), Fraction(2, 3), Fraction(-3, 5))
ROUTES = {
    "recursion-last": recursion_last,
    "recursion-first": recursion_first,
    "closed-last": closed_last,
    "closed-first": closed_first,
}
KINDS = (("vector", 1), ("wedge_power", 2), ("symmetric_power", 2))


@dataclass
class ReportEntry:
    check: str
    point: dict
    verdict: str
    detail: dict = dc_field(default_factory=dict)

    def to_json(self):
        out = {"check": self.check, "point": self.point, "verdict": self.verdict}
        if self.detail:
            out["detail"] = self.detail
        return out


class Sampler:
    """Small-height rationals from a string-seeded generator."""

    def __init__(self, key):
        self.rng = random.Random(key)

    def scalar(self):
        return Fraction(self.rng.randint(-HEIGHT, HEIGHT), self.rng.randint(1, HEIGHT))

    def generic(self, k, q=None):
        """k nonzero values, pairwise distinct, no differences ±1, no ratios q^±2."""
        while True:
            vals = [self.scalar() for _ in range(k)]
            if self._generic(vals, q):
                return vals

    @staticmethod
    def _generic(vals, q):
        if any(v == 0 for v in vals):
            return False
        for a, b in combinations(vals, 2):
            if a == b or a - b in (1, -1):
                return False
            if q is not None and a / b in (q * q, 1 / (q * q)):
                return False
        return True


# -- value encoding -----------------------------------------------------------

def encode(value):
    if isinstance(value, Fraction) or isinstance(value, int):
        return format_scalar(value)
    if isinstance(value, LinearOperator):
        return [[format_scalar(x) for x in row] for row in value.rows]
    if isinstance(value, dict):
        return [[str(k), encode(value[k])] for k in sorted(value, key=str)]
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def difference(left, right):
    if isinstance(left, LinearOperator) and isinstance(right, LinearOperator):
        if left.rows and right.rows and left.nrows == right.nrows and left.ncols == right.ncols:
            return [[a - b for a, b in zip(r, s)] for r, s in zip(left.rows, right.rows)]
        return None
    if isinstance(left, dict) and isinstance(right, dict):
        out = {}
        for k in set(left) | set(right):
            a, b = left.get(k), right.get(k)
            if a is None or b is None:
                out[k] = "missing on one side"
            elif a != b:
                out[k] = difference(a, b)
        return out
    if isinstance(left, list) and isinstance(right, list) and len(left) == len(right):
        return [difference(a, b) for a, b in zip(left, right)]
    if isinstance(left, (Fraction, int)) and isinstance(right, (Fraction, int)):
        return left - right
    return None


def _values(d):
    return {k: encode(v) for k, v in d.items()}


def run_points(check, cell, seed, npoints, body):
    """Evaluate body(sampler) -> (values, left, right) at npoints points."""
    out = []
    for index in range(npoints):
        point = {"cell": cell, "index": index, "seed": seed}
        last = None
        for attempt in range(MAX_TRIES):
            smp = Sampler(f"{seed}|{check}|{_cell_key(cell)}|{index}|{attempt}")
            try:
                values, left, right = body(smp)
            except PoleError as exc:
                last = exc
                continue
            point["attempt"] = attempt
            point["values"] = _values(values)
            if left == right:
                out.append(ReportEntry(check, point, "pass"))
            else:
                out.append(ReportEntry(check, point, "fail", {
                    "left": encode(left), "right": encode(right),
                    "difference": encode(difference(left, right))}))
            break
        else:
            out.append(ReportEntry(check, point, "skipped",
                                   {"reason": f"{MAX_TRIES} draws hit a pole; last: {last}"}))
    return out


def _cell_key(cell):
    return ",".join(f"{k}={cell[k]}" for k in sorted(cell))


def _q(cell):
    return Fraction(cell["q"]) if cell.get("q") else None


@lru_cache(maxsize=None)
def module(n, kind, k, case, q):
    return build_module(ModuleSpec(n, kind, ZERO, k), case, q)


def _split(flat, xi):
    t, pos = [], 0
    for k in xi:
        t.append(list(flat[pos:pos + k]))
        pos += k
    return t


def _kron_vec(vs):
    out = [ONE]
    for v in vs:
        out = [a * b for a in out for b in v]
    return out


# -- R-matrix checks ----------------------------------------------------------

def _aux(n):
    return (Space(n, "aux"),) * 3


def check_yang_baxter(cell, smp):
    case, n, q = cell["case"], cell["n"], _q(cell)
    u, v = smp.generic(2, q)
    sp = _aux(n)

    def R(z, legs):
        return embed_leg(r_matrix(case, n, z, q), legs, sp)

    z12 = u - v if case == "rational" else u / v
    left = R(z12, [1, 2]) @ R(u, [1, 3]) @ R(v, [2, 3])
    right = R(v, [2, 3]) @ R(u, [1, 3]) @ R(z12, [1, 2])
    return {"u": u, "v": v}, left, right


def check_inversion(cell, smp):
    case, n, q = cell["case"], cell["n"], _q(cell)
    (u,) = smp.generic(1, q)
    if case == "rational":
        left = r_matrix(case, n, u) @ transposed_r(r_matrix(case, n, -u))
        c = 1 - u * u
    else:
        left = r_matrix(case, n, u, q) @ transposed_r(r_matrix(case, n, 1 / u, q))
        c = (u * q - 1 / q) * (q / u - 1 / q)
    right = LinearOperator.identity(left.domain).scale(c)
    return {"u": u}, left, right


def check_r_check_unitarity(cell, smp):
    n = cell["n"]
    (u,) = smp.generic(1)
    left = r_check("rational", n, u, normalized=True) @ r_check("rational", n, -u, normalized=True)
    return {"u": u}, left, LinearOperator.identity(left.domain)


def check_span(cell, smp):
    """R(u) maps v_a⊗v_b into span{v_a⊗v_b, v_b⊗v_a}; left lists escapes."""
    case, n, q = cell["case"], cell["n"], _q(cell)
    (u,) = smp.generic(1, q)
    R = r_matrix(case, n, u, q)
    escapes = []
    for a in range(n):
        for b in range(n):
            allowed = {a * n + b, b * n + a}
            col = [R.rows[i][a * n + b] for i in range(n * n)]
            escapes += [(a, b, i) for i, x in enumerate(col) if x and i not in allowed]
    return {"u": u}, escapes, []


def check_restriction(cell, smp):
    """R^{(N)} restricted to the span of v_2 … v_N equals R^{(N-1)}."""
    case, n, q = cell["case"], cell["n"], _q(cell)
    (u,) = smp.generic(1, q)
    big = r_matrix(case, n, u, q)
    small = r_matrix(case, n - 1, u, q)
    m = n - 1
    idx = [(a + 1) * n + (b + 1) for a in range(m) for b in range(m)]
    left = [[big.rows[i][j] for j in idx] for i in idx]
    return {"u": u}, left, small.rows


# -- RTT, invariance and singular vectors --------------------------------------

def assembly(cell):
    """The series described by cell["modules"] = [[kind, k], ...] and its vector."""
    case, n, q = cell["case"], cell["n"], _q(cell)
    mods = [module(n, kind, k, case, q) for kind, k in cell["modules"]]
    return mods


def _series(mods, xs):
    evs = [EvalModule(m, x) for m, x in zip(mods, xs)]
    if len(evs) == 1:
        return evs[0], mods[0].vector
    return TensorSeries(evs), _kron_vec([m.vector for m in mods])


def _rtt_blocks(series, R, u, v, mu, nu):
    """Both sides of R T_1(u) T_2(v) = T_2(v) T_1(u) R, block (ac),(bd) each.

    Blocks are carrier operators; R enters only through its matrix entries.
    """
    n = series.rank
    Tu = [[series.T(a, b, u, mu) for b in range(1, n + 1)] for a in range(1, n + 1)]
    Tv = [[series.T(a, b, v, nu) for b in range(1, n + 1)] for a in range(1, n + 1)]
    zero = LinearOperator.zeros((series.space,), (series.space,))
    uv = {}
    vu = {}
    rnz = R.nonzeros()
    cols = [[] for _ in range(n * n)]
    for i, row in enumerate(rnz):
        for j, x in row:
            cols[j].append((i, x))
    left, right = [], []
    for a, c, b, d in product(range(n), repeat=4):
        lhs = zero
        for ef, x in rnz[a * n + c]:
            e, f = divmod(ef, n)
            key = (e, b, f, d)
            if key not in uv:
                uv[key] = Tu[e][b] @ Tv[f][d]
            lhs = lhs + uv[key].scale(x)
        rhs = zero
        for gh, x in cols[b * n + d]:
            g, h = divmod(gh, n)
            key = (c, h, a, g)
            if key not in vu:
                vu[key] = Tv[c][h] @ Tu[a][g]
            rhs = rhs + vu[key].scale(x)
        left.append(lhs)
        right.append(rhs)
    return left, right


def check_rtt(cell, smp):
    mods = assembly(cell)
    q = _q(cell)
    vals = smp.generic(len(mods) + 2, q)
    u, v, xs = vals[0], vals[1], vals[2:]
    series, _ = _series(mods, xs)
    mu, nu = cell.get("signs", "--")
    z = u - v if series.case == "rational" else u / v
    left, right = _rtt_blocks(series, r_matrix(series.case, series.rank, z, q), u, v, mu, nu)
    return {"u": u, "v": v, "x": xs}, left, right


def check_window_rtt(cell, smp):
    """The defining relation for the rank-lowering views."""
    mods = assembly(cell)
    q = _q(cell)
    vals = smp.generic(len(mods) + 2, q)
    u, v, xs = vals[0], vals[1], vals[2:]
    base, _ = _series(mods, xs)
    series = Window(base, 1 if cell["view"] == "psi" else 0, base.rank - 1)
    z = u - v if series.case == "rational" else u / v
    left, right = _rtt_blocks(series, r_matrix(series.case, series.rank, z, q), u, v, "-", "-")
    return {"u": u, "v": v, "x": xs}, left, right


def check_invariance(cell, smp):
    """[E_ab⊗1 + 1⊗e_ab, T(u)] = 0 for all a, b, compared block by block.

    Block (i, j) of (E_ab⊗1 + 1⊗e_ab)·T(u) is δ_ia T_bj + e_ab T_ij; of
    T(u)·(E_ab⊗1 + 1⊗e_ab) it is T_ia δ_bj + T_ij e_ab.
    """
    mods = assembly(cell)
    vals = smp.generic(len(mods) + 1)
    u, xs = vals[0], vals[1:]
    series, _ = _series(mods, xs)
    n = series.rank
    T = [[series.T(i, j, u) for j in range(1, n + 1)] for i in range(1, n + 1)]
    left, right = [], []
    for a, b in product(range(n), repeat=2):
        g = series.gl(a + 1, b + 1)
        for i, j in product(range(n), repeat=2):
            lhs = g @ T[i][j]
            if i == a:
                lhs = lhs + T[b][j]
            rhs = T[i][j] @ g
            if j == b:
                rhs = rhs + T[i][a]
            left.append(lhs)
            right.append(rhs)
    return {"u": u, "x": xs}, left, right


def check_singular(cell, smp):
    """Lowering series kill the joint vector; diagonal series act by the
    product of the factor eigenvalues."""
    mods = assembly(cell)
    q = _q(cell)
    vals = smp.generic(len(mods) + 1, q)
    u, xs = vals[0], vals[1:]
    series, vec = _series(mods, xs)
    n = series.rank
    signs = ("-",) if series.case == "rational" else ("-", "+")
    left, right = [], []
    for sign in signs:
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                left.append(series.T(b, a, u, sign).apply(vec))
                right.append([ZERO] * len(vec))
            expected = ONE
            for m, x in zip(mods, xs):
                expected *= _highest_eigenvalue(m, a, u, x, sign)
            left.append(series.T(a, a, u, sign).apply(vec))
            right.append([expected * c for c in vec])
    return {"u": u, "x": xs}, left, right


def _highest_eigenvalue(m, a, u, x, sign):
    lam = m.lam[a - 1]
    if m.case == "rational":
        return 1 + Fraction(lam) / (u - x)
    q = m.q
    if sign == "-":
        return q ** lam - q ** (-lam) * x / u
    return q ** (-lam) - q ** lam * u / x


def check_module_relations(cell, smp):
    """Commutators (rational) or k̂ ê k̂^-1 = q^… ê (trigonometric) on one module."""
    case, n, q = cell["case"], cell["n"], _q(cell)
    kind, k = cell["modules"][0]
    m = module(n, kind, k, case, q)
    left, right = [], []
    idx = range(1, n + 1)
    if case == "rational":
        for a, b, c, d in product(idx, repeat=4):
            left.append(m.e[(a, b)] @ m.e[(c, d)] - m.e[(c, d)] @ m.e[(a, b)])
            r = LinearOperator.zeros(m.e[(a, b)].codomain, m.e[(a, b)].domain)
            if b == c:
                r = r + m.e[(a, d)]
            if a == d:
                r = r - m.e[(c, b)]
            right.append(r)
    else:
        for a in idx:
            left.append(m.k[a] @ m.kinv[a])
            right.append(LinearOperator.identity(m.k[a].domain))
            for b, c in product(idx, repeat=2):
                if b == c:
                    continue
                left.append(m.k[a] @ m.e[(b, c)] @ m.kinv[a])
                right.append(m.e[(b, c)].scale(q ** ((a == b) - (a == c))))
    return {}, left, right


# -- exchange relations -------------------------------------------------------

def _vector_assembly(n, count, xs):
    m = module(n, "vector", 1, "rational", None)
    evs = [EvalModule(m, x) for x in xs[:count]]
    return evs[0] if count == 1 else TensorSeries(evs)


def check_exchange(cell, smp):
    n, count, rel, k = cell["n"], cell["factors"], cell["relation"], cell.get("k", 0)
    vals = smp.generic(count + k + 2)
    xs, u, v, us = vals[:count], vals[count], vals[count + 1], vals[count + 2:]
    values = {"x": xs, "u": u}
    if rel == "B-coproduct":
        m = module(n, "vector", 1, "rational", None)
        left_part = [EvalModule(m, x) for x in xs[:-1]]
        v1 = left_part[0] if len(left_part) == 1 else TensorSeries(left_part)
        v2 = EvalModule(m, xs[-1])
        values["u_i"] = us
        left, right = exchange.rel_coproduct(v1, v2, us)
        return values, left, right
    series = _vector_assembly(n, count, xs)
    if rel in ("AA", "BBR", "AB", "DB", "DD"):
        values["v"] = v
        fn = {"AA": exchange.rel_aa, "BBR": exchange.rel_bbr, "AB": exchange.rel_ab,
              "DB": exchange.rel_db, "DD": exchange.rel_dd}[rel]
        left, right = fn(series, u, v)
    elif rel == "ABB":
        values["u_i"] = us
        left, right = exchange.rel_abb(series, u, us)
    elif rel == "DBB":
        values["u_i"] = us
        left, right = exchange.rel_dbb(series, u, us)
    elif rel == "braid":
        values["u_i"] = us
        left, right = exchange.rel_braid(series, us)
    elif rel == "B-invariance":
        values["u_i"] = us
        pairs = [exchange.rel_b_invariance(series, us, i) for i in range(k - 1)]
        left, right = [p[0] for p in pairs], [p[1] for p in pairs]
    else:
        raise ValidationError(f"unknown relation {rel!r}")
    return values, left, right


# -- identities ---------------------------------------------------------------

def check_identity(cell, smp):
    which, q = cell["identity"], _q(cell)
    if which == "factorial-sum":
        k = cell["k"]
        vals = smp.generic(k, q)
        case = "rational" if q is None else "trigonometric"
        return {"t": vals}, identities.perm_sum_w(case, k, vals, q), \
            identities.perm_sum_expected(case, k, q)
    if which == "level-sum":
        eta = cell["eta"]
        vals = smp.generic(sum(eta))
        s = _split(vals, eta)
        return {"s": vals}, identities.level_sum_lhs(eta, s), identities.level_sum_rhs(eta, s)
    p, r = cell["p"], cell["r"]
    vals = smp.generic(p + r, q)
    y, z = vals[:p], vals[p:]
    pairs = {
        "shifted-sum": (identities.g_function, identities.g_function_dsum),
        "shifted-sum-mirror": (identities.g_mirror_lhs, identities.g_mirror_rhs),
        "q-shifted-sum": (identities.gq_lhs, identities.gq_rhs),
        "q-shifted-sum-mirror": (identities.gq_mirror_lhs, identities.gq_mirror_rhs),
    }
    lhs, rhs = pairs[which]
    args = (y, z) if q is None else (y, z, q)
    return {"y": y, "z": z}, lhs(*args), rhs(*args)


# -- route equivalence and properties of the oracle ---------------------------

def _route_setup(cell, smp):
    case, n, q, xi = cell["case"], cell["n"], _q(cell), cell["xi"]
    kind, k = cell["modules"][0]
    m = module(n, kind, k, case, q)
    vals = smp.generic(1 + sum(xi), q)
    x, t = vals[0], _split(vals[1:], xi)
    return m, x, t


def check_route(cell, smp):
    m, x, t = _route_setup(cell, smp)
    xi = cell["xi"]
    series = EvalModule(m, x)
    oracle = weight_vector(series, xi, t, m.vector)
    route = ROUTES[cell["route"]](ModuleView(m, x), xi, t)
    # the route result must also lie in the expected weight space
    defect = weight_defect(series, m.lam, xi, route)
    zero = [[ZERO] * len(route)] * len(defect)
    return {"x": x, "t": t}, [oracle, defect], [route, zero]


def check_weight(cell, smp):
    if "factors" in cell:
        series, vec, t, values = _split_setup(cell, smp)
        lam = [cell["factors"] * int(a == 0) for a in range(cell["n"])]
    else:
        m, x, t = _route_setup(cell, smp)
        series, vec, lam, values = EvalModule(m, x), m.vector, m.lam, {"x": x, "t": t}
    out = weight_vector(series, cell["xi"], t, vec)
    defect = weight_defect(series, lam, cell["xi"], out)
    return values, defect, [[ZERO] * len(out)] * len(defect)


def _transpositions(xi):
    return [(a, i) for a, k in enumerate(xi) for i in range(k - 1)]


def check_symmetry(cell, smp):
    """The weight function is unchanged by each adjacent same-level swap."""
    if "factors" in cell:
        series, vec, t, values = _split_setup(cell, smp)
    else:
        m, x, t = _route_setup(cell, smp)
        series, vec, values = EvalModule(m, x), m.vector, {"x": x, "t": t}
    xi = cell["xi"]
    base = weight_vector(series, xi, t, vec)
    left, right = [], []
    for a, i in _transpositions(xi):
        s = [list(r) for r in t]
        s[a][i], s[a][i + 1] = s[a][i + 1], s[a][i]
        left.append(base)
        right.append(weight_vector(series, xi, s, vec))
    return values, left, right


def check_trace_order(cell, smp):
    m, x, t = _route_setup(cell, smp)
    series = EvalModule(m, x)
    xi = cell["xi"]
    mode = cell["mode"]
    if mode == "flip":
        return {"x": x, "t": t}, hat_weight_trace(series, xi, t), flipped_hat_trace(series, xi, t)
    if mode == "dense":
        return {"x": x, "t": t}, hat_weight_trace(series, xi, t), dense_hat_trace(series, xi, t)
    return {"x": x, "t": t}, hat_weight_trace(series, xi, t), hat_weight_trace(series, xi, t, mode)


def check_component(cell, smp):
    m, x, t = _route_setup(cell, smp)
    series = EvalModule(m, x)
    xi = cell["xi"]
    left = weight_trace(series, xi, t)
    right = component_recursion(series, xi, t, cell["direction"])
    return {"x": x, "t": t}, left, right


def _split_setup(cell, smp):
    case, n, q, xi, count = cell["case"], cell["n"], _q(cell), cell["xi"], cell["factors"]
    m = module(n, "vector", 1, case, q)
    vals = smp.generic(count + sum(xi), q)
    xs, t = vals[:count], _split(vals[count:], xi)
    evs = [EvalModule(m, x) for x in xs]
    series = evs[0] if count == 1 else TensorSeries(evs)
    vec = _kron_vec([m.vector] * count)
    return series, vec, t, {"x": xs, "t": t}


def check_split(cell, smp):
    series, vec, t, values = _split_setup(cell, smp)
    xi = cell["xi"]
    factors = series.factors if isinstance(series, TensorSeries) else [series]
    vecs = [f.module.vector for f in factors]
    left = weight_vector(series, xi, t, vec)

    def inner(i, zeta, s):
        return weight_vector(factors[i], zeta, s, vecs[i])

    if cell["form"] == "n-ary":
        right = tensor_split(factors, vecs, xi, t, inner)
    else:
        # ((V_1 ⊗ V_2) ⊗ V_3 …) built one binary split at a time
        def nested(j, zeta, s):
            # weight function on the first j+1 factors
            if j == 0:
                return inner(0, zeta, s)
            head_series = TensorSeries(factors[:j]) if j > 1 else factors[0]
            head_vec = _kron_vec(vecs[:j])
            return tensor_split([head_series, factors[j]], [head_vec, vecs[j]], zeta, s,
                                lambda i, z2, s2: nested(j - 1, z2, s2) if i == 0 else inner(j, z2, s2))
        right = nested(len(factors) - 1, xi, t)
    lam = [len(factors) * int(a == 0) for a in range(series.rank)]
    defect = weight_defect(series, lam, xi, right)
    zero = [[ZERO] * len(right)] * len(defect)
    return values, [left, defect], [right, zero]


def check_coset(cell, smp):
    """(1/|stabilizer|) Sym-bar of a binary split summand equals its coset sum."""
    series, vec, t, values = _split_setup(cell, smp)
    xi, eta = cell["xi"], cell["eta"]
    factors = series.factors
    vecs = [f.module.vector for f in factors]
    case, q = series.case, series.q

    def inner(i, zeta, s):
        return weight_vector(factors[i], zeta, s, vecs[i])

    etas = (tuple(0 for _ in xi), tuple(eta), tuple(xi))
    c, f = split_summand(factors, vecs, xi, etas, inner)
    zero = [ZERO] * len(vec)
    left = [c * y for y in sym_bar(case, t, f, q, zero=zero)]

    def g(s):
        out = f(s)
        return zero if out is None else out

    right = coset_sum(case, t, eta, g, cell["system"], q) or zero
    return values, left, right


def check_expansion(cell, smp):
    case, n, xi, q = cell["case"], cell["n"], cell["xi"], _q(cell)
    vals = smp.generic(sum(xi), q)
    t = _split(vals, xi)
    got = {label: c for label, _, c in monomials(case, n, xi, t, q) if c}
    return {"t": t}, got, reference_expansion(case, n, xi, t, q)


# -- grids --------------------------------------------------------------------

CHECKS = {
    "yang-baxter": check_yang_baxter,
    "inversion": check_inversion,
    "r-check-unitarity": check_r_check_unitarity,
    "span": check_span,
    "restriction": check_restriction,
    "rtt": check_rtt,
    "view-rtt": check_window_rtt,
    "gl-invariance": check_invariance,
    "singular-vector": check_singular,
    "module-relations": check_module_relations,
    "exchange": check_exchange,
    "identity": check_identity,
    "route": check_route,
    "weight": check_weight,
    "symmetry": check_symmetry,
    "trace-order": check_trace_order,
    "component": check_component,
    "split": check_split,
    "coset": check_coset,
    "expansion": check_expansion,
}


def _cases(trig_qs):
    return [("rational", None)] + [("trigonometric", format_scalar(q)) for q in trig_qs]


def compositions(parts, max_total, min_total=1):
    return [list(c) for c in product(range(max_total + 1), repeat=parts)
            if min_total <= sum(c) <= max_total]


def grid_r_matrix(scale):
    pts = 20 if scale == "full" else 3
    tasks = []
    for case, q in _cases(Q_VALUES):
        for n in (2, 3, 4):
            cell = {"case": case, "n": n, "q": q}
            tasks.append(("yang-baxter", cell, pts))
            tasks.append(("inversion", cell, pts))
            tasks.append(("span", cell, 1))
            if n > 2:
                tasks.append(("restriction", cell, 1))
    for n in (2, 3, 4):
        tasks.append(("r-check-unitarity", {"case": "rational", "n": n, "q": None}, pts))
    return tasks


def _assemblies(n):
    singles = [[["vector", 1]], [["symmetric_power", 2]]]
    if n > 2:
        singles.append([["wedge_power", 2]])
    pairs = [[["vector", 1], ["vector", 1]], [["symmetric_power", 2], ["vector", 1]]]
    if n > 2:
        pairs.append([["vector", 1], ["wedge_power", 2]])
    return singles + pairs


def grid_rtt(scale):
    pts = 10 if scale == "full" else 2
    tasks = []
    for case, q in _cases(Q_VALUES if scale == "full" else Q_VALUES[:1]):
        for n in (2, 3):
            for mods in _assemblies(n):
                cell = {"case": case, "n": n, "q": q, "modules": mods}
                if case == "rational":
                    tasks.append(("rtt", cell, pts))
                    tasks.append(("gl-invariance", cell, pts))
                else:
                    for signs in ("--", "++", "+-"):
                        tasks.append(("rtt", dict(cell, signs=signs), pts))
                tasks.append(("singular-vector", cell, 2))
                if len(mods) == 1:
                    tasks.append(("module-relations", cell, 1))
            if n == 3:
                for view in ("phi", "psi"):
                    cell = {"case": case, "n": n, "q": q, "modules": [["vector", 1], ["vector", 1]],
                            "view": view}
                    tasks.append(("view-rtt", cell, 2))
    return tasks


def grid_section5(scale):
    pts = 3 if scale == "full" else 1
    tasks = []
    for n in (2, 3):
        for count in (1, 2):
            for rel in ("AA", "BBR", "AB", "DB", "DD"):
                tasks.append(("exchange", {"n": n, "factors": count, "relation": rel}, pts))
        for k in (1, 2, 3):
            # products of k row operators need k vector factors to stay nonzero
            count = max(k, 1)
            for rel in ("ABB", "DBB"):
                tasks.append(("exchange", {"n": n, "factors": count, "relation": rel, "k": k}, pts))
            tasks.append(("exchange", {"n": n, "factors": max(k, 2), "relation": "B-coproduct", "k": k}, pts))
            if k > 1:
                tasks.append(("exchange", {"n": n, "factors": k, "relation": "B-invariance", "k": k}, pts))
        tasks.append(("exchange", {"n": n, "factors": 1, "relation": "braid", "k": 3}, pts))
    return tasks


def grid_identities(scale):
    pts = 3 if scale == "full" else 1
    tasks = []
    for case, q in _cases(Q_VALUES):
        for k in range(7):
            tasks.append(("identity", {"identity": "factorial-sum", "k": k, "q": q}, pts))
    for p in range(1, 4):
        for r in range(p, 6):
            tasks.append(("identity", {"identity": "shifted-sum", "p": p, "r": r, "q": None}, pts))
            tasks.append(("identity", {"identity": "shifted-sum-mirror", "p": p, "r": r, "q": None}, pts))
            for q in Q_VALUES[:2]:
                for which in ("q-shifted-sum", "q-shifted-sum-mirror"):
                    tasks.append(("identity", {"identity": which, "p": p, "r": r,
                                               "q": format_scalar(q)}, pts))
    for n in (2, 3, 4):
        for eta in product(range(4), repeat=n - 1):
            if all(eta[i] >= eta[i + 1] for i in range(len(eta) - 1)):
                tasks.append(("identity", {"identity": "level-sum", "eta": list(eta), "q": None}, pts))
    return tasks


def route_cells(trig_qs, small_rank_total=3):
    """Single-module cells; N ≤ 3 may go up to |ξ| = small_rank_total."""
    cells = []
    for case, q in _cases(trig_qs):
        for n in (2, 3, 4):
            for kind, k in KINDS:
                for xi in compositions(n - 1, small_rank_total if n < 4 else 3):
                    cells.append({"case": case, "n": n, "q": q, "modules": [[kind, k]], "xi": xi})
    return cells


def split_cells(trig_qs):
    cells = []
    for case, q in _cases(trig_qs):
        for n in (2, 3):
            for count in (2, 3):
                for xi in compositions(n - 1, 2):
                    cells.append({"case": case, "n": n, "q": q, "factors": count, "xi": xi})
    return cells


COSET_FAMILIES = (
    # (case, n, xi, eta, q): binary split summands with nontrivial stabilizers
    ("rational", 2, [2], [1], None),
    ("rational", 2, [3], [1], None),
    ("rational", 2, [3], [2], None),
    ("rational", 3, [2, 1], [1, 0], None),
    ("rational", 3, [2, 1], [1, 1], None),
    ("rational", 3, [1, 2], [1, 1], None),
    ("rational", 3, [2, 2], [1, 1], None),
    ("trigonometric", 2, [3], [1], "2/1"),
    ("trigonometric", 3, [2, 1], [1, 1], "2/3"),
    ("trigonometric", 3, [2, 2], [1, 1], "2/1"),
)


def grid_routes(scale, trig_qs, small_rank_total=3):
    pts = 20 if scale == "full" else 2
    tasks = []
    for cell in route_cells(trig_qs, small_rank_total):
        for route in ROUTES:
            tasks.append(("route", dict(cell, route=route), pts))
        tasks.append(("weight", cell, pts))
        if _transpositions(cell["xi"]):
            tasks.append(("symmetry", cell, pts))
    return tasks


def grid_cross(scale):
    trig_qs = Q_VALUES if scale == "full" else Q_VALUES[:2]
    tasks = grid_routes(scale, trig_qs, 4 if scale == "full" else 3)
    tasks += grid_splits(scale, trig_qs)
    pts = 3 if scale == "full" else 1
    for case, q in _cases(Q_VALUES[:2]):
        for n in (2, 3, 4):
            for xi in compositions(n - 1, 3):
                cell = {"case": case, "n": n, "q": q, "modules": [["vector", 1]], "xi": xi}
                for mode in ("by-later", "reversed", "flip"):
                    tasks.append(("trace-order", dict(cell, mode=mode), pts))
                if sum(xi) <= 2:
                    tasks.append(("trace-order", dict(cell, mode="dense"), 1))
    for n in (2, 3, 4):
        for kind, k in KINDS:
            for xi in compositions(n - 1, 3 if n < 4 else 2):
                cell = {"case": "rational", "n": n, "q": None, "modules": [[kind, k]], "xi": xi}
                for direction in ("first", "last"):
                    tasks.append(("component", dict(cell, direction=direction), pts))
    tasks += grid_cosets(scale)
    tasks += grid_expansions(scale)
    return tasks


def grid_splits(scale, trig_qs):
    pts = 5 if scale == "full" else 1
    tasks = []
    for cell in split_cells(trig_qs):
        tasks.append(("split", dict(cell, form="n-ary"), pts))
        tasks.append(("weight", cell, pts))
        if cell["factors"] == 3:
            tasks.append(("split", dict(cell, form="iterated"), pts))
        if _transpositions(cell["xi"]):
            tasks.append(("symmetry", cell, pts))
    return tasks


def grid_cosets(scale):
    tasks = []
    for case, n, xi, eta, q in COSET_FAMILIES:
        for system in ("shuffle", "reversed"):
            cell = {"case": case, "n": n, "q": q, "factors": 2, "xi": xi, "eta": eta,
                    "system": system}
            tasks.append(("coset", cell, 2 if scale == "full" else 1))
    return tasks


def grid_expansions(scale):
    tasks = []
    for case, n, xi in REFERENCE_CELLS:
        q = None if case == "rational" else "2/3"
        tasks.append(("expansion", {"case": case, "n": n, "q": q, "xi": list(xi)}, 5))
    return tasks


GRIDS = {
    "r-matrix": grid_r_matrix,
    "rtt": grid_rtt,
    "section5": grid_section5,
    "identities": grid_identities,
    "cross-validate": grid_cross,
}


def suite_tasks(suite, scale="small"):
    if scale not in ("small", "full"):
        raise ValidationError(f"unknown scale {scale!r}", "/scale")
    if suite == "all":
        return [t for name in SUITES for t in GRIDS[name](scale)]
    if suite not in GRIDS:
        raise ValidationError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}", "/suite")
    return GRIDS[suite](scale)


def run_task(task, seed):
    check, cell, npoints = task
    return run_points(check, cell, seed, npoints, lambda smp: CHECKS[check](cell, smp))


def _run_task_star(args):
    return run_task(*args)


def workers_from_env(default=1):
    raw = os.environ.get("BETHE_WORKERS")
    if raw is None:
        return default
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"BETHE_WORKERS must be an integer, got {raw!r}", "BETHE_WORKERS")
    return max(1, n)


def run_tasks(tasks, seed, workers=1):
    """Run tasks and return their entries in task order."""
    if workers <= 1:
        chunks = [run_task(t, seed) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_task_star, [(t, seed) for t in tasks], chunksize=1))
    return [e for chunk in chunks for e in chunk]


def run_suite(suite, seed=0, scale="small", workers=1):
    return run_tasks(suite_tasks(suite, scale), seed, workers)


def summarize(entries):
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for e in entries:
        out[e.verdict] += 1
    return out
