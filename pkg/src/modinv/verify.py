"""Wilkerson's criterion as a checker, plus the invariant-dimension oracle.

``F_p[V]^G = F_p[f_1, ..., f_n]`` exactly when the f_i are G-invariant,
F_p[V] is integral over the algebra they generate, and the product of their
degrees is |G|. Every check here is three-valued: "pass", "fail" or
"inconclusive"; an inconclusive check never turns into a pass.
"""

from __future__ import annotations

import math
import time
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from . import _core
from .construct import InvariantPresentation, fingerprint
from .group import CapExceeded, GroupSpec, act_on_poly, act_on_variable, group_order
from .groebner import groebner
from .poly import Polynomial, is_homogeneous

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

GROEBNER_MAX_VARS = 3
GROEBNER_MAX_DEGREE = 30
ORACLE_CAP = 100_000


def combine(statuses: Sequence[str]) -> str:
    if any(s == FAIL for s in statuses):
        return FAIL
    if all(s == PASS for s in statuses):
        return PASS
    return INCONCLUSIVE


# -- condition (1) ------------------------------------------------------------


@dataclass
class InvarianceResult:
    invariant: bool
    failing_generator: int | None = None


def check_invariance(f: Polynomial, spec: GroupSpec) -> InvarianceResult:
    """Invariance under every generator, hence under the group."""
    if f.nvars != spec.n or f.p != spec.p:
        raise ValueError("polynomial and group do not match")
    for k, g in enumerate(spec.generators):
        if act_on_poly(g, f) != f:
            return InvarianceResult(False, k)
    return InvarianceResult(True)


def cond1_invariance(pres: InvariantPresentation, spec: GroupSpec) -> dict:
    witnesses = []
    for i, (f, label) in enumerate(zip(pres.generators, pres.labels)):
        homogeneous, degree = is_homogeneous(f)
        res = check_invariance(f, spec)
        witnesses.append({
            "index": i,
            "name": label,
            "degree": degree,
            "homogeneous": homogeneous,
            "invariant": res.invariant,
            "failing_generator": res.failing_generator,
        })
    ok = all(w["homogeneous"] and w["invariant"] and w["degree"] is not None for w in witnesses)
    return {"status": PASS if ok else FAIL, "generators_checked": len(spec.generators), "witnesses": witnesses}


# -- condition (2) ------------------------------------------------------------


def hsop_groebner(gens: Sequence[Polynomial], degree_cap: int | None = None, time_budget: float | None = 60.0) -> dict:
    """Integrality of F_p[V] over F_p[gens], decided by zero-dimensionality of
    the ideal the generators span (pure powers of every variable among the
    leading monomials of a Gröbner basis)."""
    for g in gens:
        ok, d = is_homogeneous(g)
        if not ok or d is None:
            return {"status": FAIL, "method": "groebner", "detail": "generator not homogeneous"}
    gb = groebner(gens, degree_cap=degree_cap, time_budget=time_budget)
    detail = {
        "basis_size": len(gb.polys),
        "leading_monomials": [list(m) for m in gb.leading_monomials],
        "elapsed": round(gb.elapsed, 6),
        **gb.stats,
    }
    zero_dim = gb.is_zero_dimensional()
    if gb.status != "complete":
        # pure powers found so far already lie in the leading ideal
        return {"status": PASS if zero_dim else INCONCLUSIVE, "method": "groebner", "complete": False, "detail": detail}
    return {"status": PASS if zero_dim else FAIL, "method": "groebner", "complete": True, "detail": detail}


def monomials(n: int, d: int) -> list[tuple]:
    """Exponent tuples of total degree d in n variables, lexicographically descending."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def hsop_macaulay(gens: Sequence[Polynomial]) -> dict:
    """Independent hsop test for n homogeneous forms in n variables.

    They form an hsop iff the ideal contains every monomial of degree
    sum(deg f_i - 1) + 1, which is a rank condition on the Macaulay matrix.
    """
    n, p = gens[0].nvars, gens[0].p
    if len(gens) != n:
        raise ValueError("Macaulay test needs exactly as many forms as variables")
    degs = []
    for g in gens:
        ok, d = is_homogeneous(g)
        if not ok or d is None:
            return {"status": FAIL, "method": "macaulay", "detail": "generator not homogeneous"}
        degs.append(d)
    D = sum(d - 1 for d in degs) + 1
    cols = monomials(n, D)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g, d in zip(gens, degs):
        for q in monomials(n, D - d):
            row = np.zeros(len(cols), dtype=np.int64)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, q))]] = c
            rows.append(row)
    rank = _core.rank_mod_p(np.array(rows, dtype=np.int64), p) if rows else 0
    return {
        "status": PASS if rank == len(cols) else FAIL,
        "method": "macaulay",
        "detail": {"degree": D, "rank": rank, "monomials": len(cols)},
    }


def _pure_powers(gens: Sequence[Polynomial], n: int) -> bool:
    seen = set()
    for g in gens:
        if len(g.terms) != 1:
            return False
        (e, _), = g.terms.items()
        support = [i for i, x in enumerate(e) if x]
        if len(support) != 1:
            return False
        seen.add(support[0])
    return seen == set(range(n))


def cond2_structural(pres: InvariantPresentation) -> dict:
    """Integrality from how the presentation was built.

    Dickson leaves are classical; leaves of pure variable powers are
    immediate; block compositions and disjoint products inherit integrality
    from their children. Other explicit leaves need a Gröbner certificate.
    """
    chain = []

    def visit(node: InvariantPresentation, path: str, depth: int) -> tuple[str, int]:
        prov = node.provenance
        if prov.fingerprint != fingerprint(node.generators):
            chain.append({"path": path, "kind": prov.kind, "rule": "generators differ from provenance record", "status": INCONCLUSIVE})
            return INCONCLUSIVE, depth
        if len(node.generators) != node.nvars:
            chain.append({"path": path, "kind": prov.kind, "rule": "generator count differs from variable count", "status": FAIL})
            return FAIL, depth
        if prov.kind in ("dickson-SL", "dickson-GL"):
            chain.append({"path": path, "kind": prov.kind, "rule": "base-dickson", "status": PASS})
            return PASS, depth
        if prov.kind == "explicit":
            if _pure_powers(node.generators, node.nvars):
                chain.append({"path": path, "kind": prov.kind, "rule": "pure-powers", "status": PASS})
                return PASS, depth
            cert = node.certificate
            if cert is not None and cert.cond2.get("method") == "groebner" and cert.cond2.get("status") == PASS:
                chain.append({"path": path, "kind": prov.kind, "rule": "groebner-certificate", "status": PASS})
                return PASS, depth
            chain.append({"path": path, "kind": prov.kind, "rule": "no evidence", "status": INCONCLUSIVE})
            return INCONCLUSIVE, depth
        if prov.kind in ("theorem5", "product") and prov.children:
            results = [visit(c, f"{path}.{i}", depth + 1) for i, c in enumerate(prov.children)]
            status = combine([r[0] for r in results])
            rule = "block-composition" if prov.kind == "theorem5" else "disjoint-product"
            chain.append({"path": path, "kind": prov.kind, "rule": rule, "status": status})
            return status, max(r[1] for r in results)
        chain.append({"path": path, "kind": prov.kind, "rule": "unknown provenance", "status": INCONCLUSIVE})
        return INCONCLUSIVE, depth

    status, depth = visit(pres, "root", 1)
    return {"status": status, "method": "structural", "depth": depth, "chain": sorted(chain, key=lambda c: c["path"])}


def _groebner_allowed(pres: InvariantPresentation) -> bool:
    degs = [d for d in pres.poly_degrees if d is not None]
    return pres.nvars <= GROEBNER_MAX_VARS and bool(degs) and max(degs) <= GROEBNER_MAX_DEGREE


def cond2_integrality(pres: InvariantPresentation, policy: str = "auto") -> dict:
    if policy == "groebner":
        return hsop_groebner(pres.generators)
    if policy == "structural":
        return cond2_structural(pres)
    if policy != "auto":
        raise ValueError(f"unknown policy {policy!r}")
    if _groebner_allowed(pres):
        res = hsop_groebner(pres.generators)
        if res["status"] != INCONCLUSIVE:
            return res
        fallback = cond2_structural(pres)
        fallback["groebner_attempt"] = res
        return fallback
    return cond2_structural(pres)


# -- condition (3) ------------------------------------------------------------


def cond3_degree_product(pres: InvariantPresentation, spec: GroupSpec, cap: int | None = None) -> dict:
    degs = pres.poly_degrees
    if any(d is None for d in degs):
        return {"status": FAIL, "degree_product": None, "group_order": None, "equal": False, "detail": "non-homogeneous generator"}
    prod = math.prod(degs)
    try:
        order = group_order(spec, cap) if cap is not None else group_order(spec)
    except CapExceeded as exc:
        return {"status": INCONCLUSIVE, "degree_product": prod, "group_order": None, "equal": None, "detail": str(exc)}
    equal = prod == order.order
    return {
        "status": PASS if equal else FAIL,
        "degree_product": prod,
        "group_order": order.order,
        "order_method": order.method,
        "equal": equal,
    }


# -- the certificate ------------------------------------------------------------


@dataclass
class VerificationCertificate:
    cond1: dict
    cond2: dict
    cond3: dict
    verdict: str
    elapsed: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def wilkerson_verify(pres: InvariantPresentation, spec: GroupSpec, policy: str = "auto") -> VerificationCertificate:
    if pres.p != spec.p or pres.nvars != spec.n:
        raise ValueError("presentation and group do not match")
    times = {}
    t = time.perf_counter()
    c1 = cond1_invariance(pres, spec)
    times["cond1"] = time.perf_counter() - t
    t = time.perf_counter()
    c2 = cond2_integrality(pres, policy)
    times["cond2"] = time.perf_counter() - t
    t = time.perf_counter()
    c3 = cond3_degree_product(pres, spec)
    times["cond3"] = time.perf_counter() - t
    verdict = combine([c1["status"], c2["status"], c3["status"]])
    return VerificationCertificate(c1, c2, c3, verdict, {k: round(v, 3) for k, v in times.items()})


# -- invariant dimensions and Hilbert series ------------------------------------


class OracleCapExceeded(RuntimeError):
    pass


def _action_rows(p: int, degree_images: dict, basis: list, index: dict) -> list:
    # column j holds the coordinates of rho(g) m_j - m_j
    rows = {}
    for j, m in enumerate(basis):
        img = degree_images[m]
        for e, c in img.terms.items():
            rows.setdefault(index[e], {})[j] = c
        rows.setdefault(j, {})
        rows[j][j] = (rows[j].get(j, 0) - 1) % p
    return [r for r in rows.values() if any(r.values())]


class _Images:
    """Images of monomials under one matrix, built degree by degree."""

    def __init__(self, g, n: int, p: int):
        self.n, self.p = n, p
        self.lin = [act_on_variable(g, i) for i in range(n)]
        self.by_degree = {0: {(0,) * n: Polynomial.one(p, n)}}

    def degree(self, d: int) -> dict:
        for k in range(max(self.by_degree) + 1, d + 1):
            prev = self.by_degree[k - 1]
            cur = {}
            for m in monomials(self.n, k):
                i = max(j for j, e in enumerate(m) if e)
                lower = m[:i] + (m[i] - 1,) + m[i + 1:]
                cur[m] = prev[lower] * self.lin[i]
            self.by_degree[k] = cur
            if k - 2 in self.by_degree and k - 2 > 0:
                del self.by_degree[k - 2]
        return self.by_degree[d]


def invariant_dimension(spec: GroupSpec, d: int, cap: int = ORACLE_CAP, _images=None) -> int:
    """dim of the degree-d invariants: the joint kernel of (rho_d(g) - 1) over the generators."""
    n, p = spec.n, spec.p
    size = math.comb(d + n - 1, n - 1)
    if size > cap:
        raise OracleCapExceeded(f"{size} monomials of degree {d} exceeds cap {cap}")
    if d == 0:
        return 1
    basis = monomials(n, d)
    index = {m: i for i, m in enumerate(basis)}
    images = _images or [_Images(g, n, p) for g in spec.generators]
    sparse_rows = []
    for img in images:
        sparse_rows += _action_rows(p, img.degree(d), basis, index)
    if not sparse_rows:
        return size
    mat = np.zeros((len(sparse_rows), size), dtype=np.int64)
    for r, row in enumerate(sparse_rows):
        for j, c in row.items():
            mat[r, j] = c
    return size - _core.rank_mod_p(mat, p)


def invariant_dimensions(spec: GroupSpec, D: int, cap: int = ORACLE_CAP) -> list[int]:
    images = [_Images(g, spec.n, spec.p) for g in spec.generators]
    return [invariant_dimension(spec, d, cap, images) for d in range(D + 1)]


def hilbert_coefficient(degrees: Sequence[int], d: int) -> int:
    """Number of monomials of degree d in free generators of the given degrees."""
    return hilbert_series(degrees, d).coefficients[d]


@dataclass
class HilbertSeries:
    degrees: tuple[int, ...]
    truncation: int
    coefficients: list[int]


def hilbert_series(degrees: Sequence[int], D: int) -> HilbertSeries:
    if any(k <= 0 for k in degrees):
        raise ValueError("generator degrees must be positive")
    if D < 0:
        return HilbertSeries(tuple(degrees), D, [])
    coeffs = [1] + [0] * D
    for k in degrees:
        for d in range(k, D + 1):
            coeffs[d] += coeffs[d - k]
    return HilbertSeries(tuple(degrees), D, coeffs)


def hilbert_match(spec: GroupSpec, degrees: Sequence[int], D: int, cap: int = ORACLE_CAP) -> dict:
    """Compare invariant dimensions with the series of a free algebra on ``degrees`` for d = 0..D."""
    series = hilbert_series(degrees, D).coefficients
    dims = []
    first_mismatch = None
    status = PASS
    images = [_Images(g, spec.n, spec.p) for g in spec.generators]
    for d in range(D + 1):
        try:
            dim = invariant_dimension(spec, d, cap, images)
        except OracleCapExceeded:
            status = INCONCLUSIVE
            break
        dims.append(dim)
        if dim != series[d] and first_mismatch is None:
            first_mismatch = d
            status = FAIL
    return {
        "status": status,
        "matches": status == PASS,
        "first_mismatch": first_mismatch,
        "depth": len(dims) - 1,
        "dimensions": dims,
        "series": series[: len(dims)],
    }
