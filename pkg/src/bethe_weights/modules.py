"""Finite-dimensional gl_N and U_q(gl_N) modules with a singular vector.

Every module is realized inside a tensor power of the vector representation.
The classical generators act as sums of matrix units over the tensor legs;
the quantum Chevalley generators act through the iterated coproduct

    Δk_a = k_a ⊗ k_a,
    Δê_{a,a+1} = 1 ⊗ ê_{a,a+1} + ê_{a,a+1} ⊗ k_a k_{a+1}^{-1},
    Δê_{a+1,a} = ê_{a+1,a} ⊗ 1 + k_{a+1} k_a^{-1} ⊗ ê_{a+1,a},

and the remaining ê_ab come from the q-bracket recursion.  The module basis
is the row-reduced span of lowering words applied to the singular vector,
computed weight space by weight space, so every basis vector has a weight.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .field import ONE, ZERO, check_q, format_scalar, parse_scalar
from .linalg import Echelon, nullspace
from .tensor import LinearOperator, Space, identity, kron, matrix_unit

KINDS = ("vector", "wedge_power", "symmetric_power", "cyclic_span")


@dataclass(frozen=True)
class ModuleSpec:
    n: int
    kind: str
    x: Fraction
    k: int = 1
    word: tuple = ()
    weight: tuple = ()

    def to_json(self):
        real = {"kind": self.kind}
        if self.kind in ("wedge_power", "symmetric_power"):
            real["k"] = self.k
        if self.kind == "cyclic_span":
            real["word"] = list(self.word)
            real["weight"] = list(self.weight)
        return {"n": self.n, "realization": real, "x": format_scalar(self.x)}

    @classmethod
    def from_json(cls, doc, path="", n=None):
        if not isinstance(doc, dict):
            raise ValidationError("module spec must be an object", path)
        rank = doc.get("n", n)
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise ValidationError("rank must be a positive integer", path + "/n")
        if n is not None and rank != n:
            raise ValidationError(f"module rank {rank} differs from job rank {n}", path + "/n")
        real = doc.get("realization", {"kind": "vector"})
        if not isinstance(real, dict):
            raise ValidationError("realization must be an object", path + "/realization")
        kind = real.get("kind")
        if kind not in KINDS:
            raise ValidationError(f"unknown realization {kind!r}", path + "/realization/kind")
        if "x" not in doc:
            raise ValidationError("missing evaluation point", path + "/x")
        x = parse_scalar(doc["x"], path + "/x")
        k, word, weight = 1, (), ()
        if kind in ("wedge_power", "symmetric_power"):
            k = real.get("k")
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise ValidationError("k must be a positive integer", path + "/realization/k")
            if kind == "wedge_power" and k > rank:
                raise ValidationError(f"wedge power {k} exceeds rank {rank}", path + "/realization/k")
        if kind == "cyclic_span":
            word = real.get("word")
            if not isinstance(word, list) or not word:
                raise ValidationError("cyclic_span needs a non-empty word", path + "/realization/word")
            for i, w in enumerate(word):
                if not isinstance(w, int) or isinstance(w, bool) or not 1 <= w <= rank:
                    raise ValidationError(f"letter must be in 1..{rank}", f"{path}/realization/word/{i}")
            weight = real.get("weight")
            if not isinstance(weight, list) or len(weight) != rank:
                raise ValidationError(f"weight must be a list of {rank} integers", path + "/realization/weight")
            for i, w in enumerate(weight):
                if not isinstance(w, int) or isinstance(w, bool):
                    raise ValidationError("weight entries must be integers", f"{path}/realization/weight/{i}")
            word, weight, k = tuple(word), tuple(weight), len(word)
        return cls(rank, kind, x, k, word, weight)

    def declared_weight(self):
        n = self.n
        if self.kind == "vector":
            return (1,) + (0,) * (n - 1)
        if self.kind == "wedge_power":
            return (1,) * self.k + (0,) * (n - self.k)
        if self.kind == "symmetric_power":
            return (self.k,) + (0,) * (n - 1)
        return tuple(self.weight)

    def tensor_degree(self):
        return 1 if self.kind == "vector" else self.k


@dataclass
class RepModule:
    """Action tables of a gl_N (rational) or U_q(gl_N) (trigonometric) module.

    ``e[(a, b)]`` holds e_ab, resp. ê_ab for a != b.  In the trigonometric case
    ``k[a]`` and ``kinv[a]`` hold k̂_a and its inverse.  Indices are 1-based.
    """
    n: int
    case: str
    q: Fraction
    space: Space
    labels: list
    weights: list
    lam: tuple
    vector: list
    e: dict
    k: dict = field(default_factory=dict)
    kinv: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.space.dim

    def ech(self, b, a):
        """ě_ba = k̂_a ê_ba for a < b: the lowering generator used in the q-formulae."""
        return self.k[a] @ self.e[(b, a)]


def _ambient_ops(n, deg, case, q):
    """Generators acting on (C^n)^{⊗deg}, flattened to one space."""
    sp = Space(n ** deg, "ambient")
    one = identity(n)

    def flat(op):
        return LinearOperator((sp,), (sp,), op.rows)

    def legwise(local):
        # Σ_i 1⊗…⊗local⊗…⊗1
        total = None
        for i in range(deg):
            term = kron([local if j == i else one for j in range(deg)])
            total = term if total is None else total + term
        return flat(total)

    e = {}
    if case == "rational":
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                e[(a, b)] = legwise(matrix_unit(n, a, b))
        return sp, e, {}, {}
    kd, kid = {}, {}
    for a in range(1, n + 1):
        ka = identity(n)
        ka.rows[a - 1][a - 1] = q
        kia = identity(n)
        kia.rows[a - 1][a - 1] = 1 / q
        kd[a] = flat(kron([ka] * deg))
        kid[a] = flat(kron([kia] * deg))
    for a in range(1, n):
        up = matrix_unit(n, a, a + 1)
        down = matrix_unit(n, a + 1, a)
        kr = identity(n)          # k_a k_{a+1}^{-1}
        kr.rows[a - 1][a - 1] = q
        kr.rows[a][a] = 1 / q
        kl = identity(n)          # k_{a+1} k_a^{-1}
        kl.rows[a - 1][a - 1] = 1 / q
        kl.rows[a][a] = q
        eu = ed = None
        for i in range(deg):
            tu = kron([one] * i + [up] + [kr] * (deg - i - 1))
            td = kron([kl] * i + [down] + [one] * (deg - i - 1))
            eu = tu if eu is None else eu + tu
            ed = td if ed is None else ed + td
        e[(a, a + 1)] = flat(eu)
        e[(a + 1, a)] = flat(ed)
    _fill_nonsimple(e, n, q)
    return sp, e, kd, kid


def _fill_nonsimple(e, n, q):
    """ê_ab for |a-b| > 1 via the q-bracket recursion on the first index."""
    for span in range(2, n):
        for a in range(1, n - span + 1):
            b = a + span
            e[(a, b)] = e[(a, a + 1)] @ e[(a + 1, b)] - (e[(a + 1, b)] @ e[(a, a + 1)]).scale(q)
            e[(b, a)] = e[(b, a + 1)] @ e[(a + 1, a)] - (e[(a + 1, a)] @ e[(b, a + 1)]).scale(1 / q)


def _word_weight(index, n, deg):
    w = [0] * n
    for _ in range(deg):
        w[index % n] += 1
        index //= n
    return tuple(w)


def _word(index, n, deg):
    letters = []
    for _ in range(deg):
        letters.append(index % n + 1)
        index //= n
    return tuple(reversed(letters))


def _raising(n):
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def _lowering(n):
    return [(a + 1, a) for a in range(1, n)]


def _singular_in(span_rows, ops, n, deg, lam):
    """Singular vectors of weight lam inside the span of span_rows (ambient coords)."""
    rows = [r for r in span_rows if _word_weight(next(j for j, x in enumerate(r) if x), n, deg) == lam]
    if not rows:
        return []
    # combinations Σ c_i rows_i killed by every raising operator
    images = [[op.apply(r) for r in rows] for op in (ops[ab] for ab in _raising(n))]
    eqs = []
    dim = len(rows[0])
    for img in images:
        for j in range(dim):
            coeffs = [im[j] for im in img]
            if any(coeffs):
                eqs.append(coeffs)
    sols = nullspace(eqs, len(rows))
    out = []
    for s in sols:
        v = [ZERO] * dim
        for c, r in zip(s, rows):
            if c:
                for j, x in enumerate(r):
                    if x:
                        v[j] += c * x
        out.append(v)
    return out


def _span_under(start, ops, n, deg):
    """Per-weight echelon bases of the span of start under the given operators."""
    spaces = {}
    order = []
    queue = []

    def push(v):
        nz = next((j for j, x in enumerate(v) if x), None)
        if nz is None:
            return
        wt = _word_weight(nz, n, deg)
        if wt not in spaces:
            spaces[wt] = Echelon()
            order.append(wt)
        row = spaces[wt].add(v)
        if row is not None:
            queue.append(list(row))

    push(start)
    while queue:
        v = queue.pop(0)
        for op in ops:
            push(op.apply(v))
    return spaces, order


def build_module(spec, case="rational", q=None):
    """Construct the module described by ``spec`` with exact action tables."""
    n = spec.n
    if case == "trigonometric":
        q = check_q(q)
    elif case != "rational":
        raise ValidationError(f"unknown case {case!r}", "/case")
    deg = spec.tensor_degree()
    lam = spec.declared_weight()
    sp, amb, kd, kid = _ambient_ops(n, deg, case, q)
    dim = sp.dim

    if spec.kind == "cyclic_span":
        if sum(lam) != deg or any(w < 0 for w in lam):
            raise ValidationError("declared weight must be a nonnegative split of the word length",
                                  "/realization/weight")
        start = [ZERO] * dim
        idx = 0
        for letter in spec.word:
            idx = idx * n + (letter - 1)
        start[idx] = ONE
        gens = [amb[ab] for ab in _raising(n)] + [amb[ab] for ab in _lowering(n)]
        sub, _ = _span_under(start, gens, n, deg)
        rows = [r for ech in sub.values() for r in ech.rows]
        sing = _singular_in(rows, amb, n, deg, lam)
    else:
        basis_rows = []
        for j in range(dim):
            if _word_weight(j, n, deg) == lam:
                r = [ZERO] * dim
                r[j] = ONE
                basis_rows.append(r)
        sing = _singular_in(basis_rows, amb, n, deg, lam)
    if len(sing) != 1:
        raise ValidationError(
            f"expected exactly one singular vector of weight {list(lam)}, found {len(sing)}",
            "/realization")
    spaces, order = _span_under(sing[0], [amb[ab] for ab in _lowering(n)], n, deg)

    basis, labels, weights, where = [], [], [], {}
    for wt in order:
        rows, pivots = spaces[wt].sorted()
        where[wt] = (len(basis), spaces[wt])
        for r, p in zip(rows, pivots):
            basis.append(r)
            weights.append(list(wt))
            labels.append(".".join(str(c) for c in _word(p, n, deg)))
    mdim = len(basis)
    msp = Space(mdim, f"module:{spec.kind}")

    def restrict(op):
        out = [[ZERO] * mdim for _ in range(mdim)]
        for j, b in enumerate(basis):
            w = op.apply(b)
            nz = next((i for i, x in enumerate(w) if x), None)
            if nz is None:
                continue
            wt = _word_weight(nz, n, deg)
            if wt not in where:
                raise ValidationError("generator leaves the module span", "/realization")
            off, ech = where[wt]
            coords = ech.coordinates(w)
            if coords is None:
                raise ValidationError("generator leaves the module span", "/realization")
            # coordinates follow insertion order; map to the sorted order
            srt = sorted(range(len(ech.pivots)), key=lambda i: ech.pivots[i])
            for pos, i in enumerate(srt):
                out[off + pos][j] = coords[i]
        return LinearOperator((msp,), (msp,), out)

    e = {ab: restrict(op) for ab, op in amb.items()}
    k = {a: restrict(op) for a, op in kd.items()}
    kinv = {a: restrict(op) for a, op in kid.items()}
    vec = [ZERO] * mdim
    vec[0] = ONE
    if case == "rational":
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                e.setdefault((a, b), restrict(amb[(a, b)]))
    return RepModule(n, case, q, msp, labels, weights, lam, vec, e, k, kinv)


def vector_module(n, case="rational", q=None):
    return build_module(ModuleSpec(n, "vector", Fraction(0)), case, q)
