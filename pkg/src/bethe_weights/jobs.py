"""Job files: parsing, dispatch to a computation route, and canonical output.

A job names an assembly (rank, case, modules), a composition ξ, a variable
collection t and a method.  Results are written as canonical JSON (sorted
keys, no whitespace, scalars as "p/q" strings) so that identical jobs give
byte-identical files.
"""

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .errors import InvariantError, ValidationError
from .field import ONE, ZERO, check_q, format_scalar, parse_scalar
from .formulae import ModuleView, closed_first, closed_last, recursion_first, recursion_last, tensor_split
from .modules import ModuleSpec, build_module
from .series import EvalModule, TensorSeries
from .trace import MAX_AUX, monomials, weight_vector

CASES = ("rational", "trigonometric")
ROUTES = {
    "recursion-first": recursion_first,
    "recursion-last": recursion_last,
    "closed-first": closed_first,
    "closed-last": closed_last,
}
METHODS = ("trace",) + tuple(ROUTES) + ("tensor-split",)
EXPLAIN_MAX = 3


@dataclass(frozen=True)
class JobSpec:
    case: str
    n: int
    q: Fraction
    modules: tuple
    xi: tuple
    t: tuple
    method: str = "trace"

    def to_json(self, with_method=True):
        doc = {
            "case": self.case,
            "n": self.n,
            "modules": [m.to_json() for m in self.modules],
            "xi": list(self.xi),
            "t": [[format_scalar(s) for s in row] for row in self.t],
        }
        if self.q is not None:
            doc["q"] = format_scalar(self.q)
        if with_method:
            doc["method"] = self.method
        return doc


def _int(value, path, low=0):
    if not isinstance(value, int) or isinstance(value, bool) or value < low:
        raise ValidationError(f"expected an integer ≥ {low}, got {value!r}", path)
    return value


def parse_job(doc):
    """Validate a decoded job document; errors carry JSON pointers."""
    if not isinstance(doc, dict):
        raise ValidationError("job must be a JSON object", "")
    known = {"case", "n", "q", "modules", "xi", "t", "method"}
    for key in sorted(doc):
        if key not in known:
            raise ValidationError(f"unknown field {key!r}", f"/{key}")
    case = doc.get("case")
    if case not in CASES:
        raise ValidationError(f"case must be one of {CASES}", "/case")
    n = _int(doc.get("n"), "/n", 1)
    q = None
    if case == "trigonometric":
        if "q" not in doc:
            raise ValidationError("the trigonometric case needs q", "/q")
        q = check_q(parse_scalar(doc["q"], "/q"))
    elif doc.get("q") is not None:
        raise ValidationError("q is only used in the trigonometric case", "/q")
    mods = doc.get("modules")
    if not isinstance(mods, list) or not mods:
        raise ValidationError("modules must be a non-empty list", "/modules")
    modules = tuple(ModuleSpec.from_json(m, f"/modules/{i}", n) for i, m in enumerate(mods))
    xi = doc.get("xi")
    if not isinstance(xi, list) or len(xi) != n - 1:
        raise ValidationError(f"xi must be a list of {n - 1} integers", "/xi")
    xi = tuple(_int(k, f"/xi/{a}") for a, k in enumerate(xi))
    t = doc.get("t")
    if not isinstance(t, list) or len(t) != len(xi):
        raise ValidationError(f"t must be a list of {len(xi)} lists", "/t")
    rows = []
    for a, (k, row) in enumerate(zip(xi, t)):
        if not isinstance(row, list) or len(row) != k:
            raise ValidationError(f"level {a + 1} needs {k} variables", f"/t/{a}")
        rows.append(tuple(parse_scalar(s, f"/t/{a}/{i}") for i, s in enumerate(row)))
    method = doc.get("method", "trace")
    if method not in METHODS:
        raise ValidationError(f"method must be one of {METHODS}", "/method")
    job = JobSpec(case, n, q, modules, xi, tuple(rows), method)
    check_method(job)
    return job


def check_method(job):
    """Method preconditions, checked before any computation."""
    if job.method in ROUTES and len(job.modules) != 1:
        raise ValidationError(f"method {job.method} needs a single module", "/modules")
    if n_aux(job) > MAX_AUX:
        raise ValidationError(f"N^|xi| = {n_aux(job)} exceeds the cap {MAX_AUX}", "/xi")


def n_aux(job):
    return job.n ** sum(job.xi)


def canonical_bytes(doc):
    return (json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n").encode("utf-8")


def fingerprint(job):
    """Content hash of the canonical job, method excluded."""
    return hashlib.sha256(canonical_bytes(job.to_json(with_method=False))).hexdigest()


def manifest(fp, seed=None):
    # timing is left null so that repeated runs produce identical bytes
    return {"fingerprint": fp, "version": __version__, "seed": seed, "timing": None}


# -- computation --------------------------------------------------------------

def build_assembly(job):
    """(series, joint singular vector, factor list, module list)."""
    mods = [build_module(spec, job.case, job.q) for spec in job.modules]
    factors = [EvalModule(m, spec.x) for m, spec in zip(mods, job.modules)]
    if len(factors) == 1:
        return factors[0], list(mods[0].vector), factors, mods
    vec = [ONE]
    for m in mods:
        vec = [a * b for a in vec for b in m.vector]
    return TensorSeries(factors), vec, factors, mods


def basis_labels(mods):
    labels = [""]
    for m in mods:
        labels = [f"{a}⊗{b}" if a else b for a in labels for b in m.labels]
    return labels


def total_weight(mods):
    return [sum(m.lam[a] for m in mods) for a in range(mods[0].n)]


def expected_weight(lam, xi):
    """Λ^a - ξ^a + ξ^{a-1} with ξ^0 = ξ^N = 0."""
    ext = [0] + list(xi) + [0]
    return [lam[a] - ext[a + 1] + ext[a] for a in range(len(lam))]


def weight_defect(series, lam, xi, vec):
    """Per index a, cartan(a)·vec minus the expected eigenvalue times vec."""
    out = []
    for a, w in enumerate(expected_weight(lam, xi), start=1):
        ev = Fraction(w) if series.case == "rational" else series.q ** w
        img = series.cartan(a).apply(vec)
        out.append([y - ev * c for y, c in zip(img, vec)])
    return out


def check_weight(series, lam, xi, vec):
    for a, row in enumerate(weight_defect(series, lam, xi, vec), start=1):
        if any(row):
            raise InvariantError(f"result is not a weight vector for index {a}")


def apply_to_singular(op, series, vector, lam, xi):
    """op·vector, checked to lie in the expected weight space."""
    out = op.apply(vector)
    check_weight(series, lam, xi, out)
    return out


def evaluate(job):
    """Coordinates of B_ξ(t) applied to the joint singular vector."""
    series, vec, factors, mods = build_assembly(job)
    xi, t = list(job.xi), [list(r) for r in job.t]
    if job.method == "trace":
        out = weight_vector(series, xi, t, vec)
    elif job.method in ROUTES:
        out = ROUTES[job.method](ModuleView(mods[0], job.modules[0].x), xi, t)
    else:
        def inner(i, zeta, s):
            return weight_vector(factors[i], zeta, s, factors[i].module.vector)
        out = tensor_split(factors, [m.vector for m in mods], xi, t, inner)
    check_weight(series, total_weight(mods), xi, out)
    return out, mods


def compute(job):
    coords, mods = evaluate(job)
    return {
        "basis": basis_labels(mods),
        "coordinates": [format_scalar(c) for c in coords],
        "weight": expected_weight(total_weight(mods), job.xi),
        "method": job.method,
        "manifest": manifest(fingerprint(job)),
    }


def explain(job):
    """Monomial expansion of B_ξ(t) in the generators at the job's points."""
    if job.method != "trace":
        raise ValidationError("explain works on trace jobs", "/method")
    if sum(job.xi) > EXPLAIN_MAX:
        raise ValidationError(f"explain is limited to |xi| ≤ {EXPLAIN_MAX}", "/xi")
    t = [list(r) for r in job.t]
    terms = [{"monomial": label, "coefficient": format_scalar(c)}
             for label, _, c in monomials(job.case, job.n, list(job.xi), t, job.q) if c != ZERO]
    return {"monomials": terms, "manifest": manifest(fingerprint(job))}


def parse_result(doc):
    """Decode a result document back to exact values."""
    for key in ("basis", "coordinates", "weight", "manifest"):
        if key not in doc:
            raise ValidationError(f"missing field {key!r}", f"/{key}")
    coords = [parse_scalar(c, f"/coordinates/{i}") for i, c in enumerate(doc["coordinates"])]
    return dict(doc, coordinates=coords)


def serialize_result(result):
    return dict(result, coordinates=[format_scalar(c) for c in result["coordinates"]])
