"""Buchberger's algorithm over F_p in graded reverse lexicographic order."""

from __future__ import annotations

import heapq
import time
from collections.abc import Sequence
from dataclasses import dataclass, field

from .poly import Polynomial


def grevlex_key(exps: tuple) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class _Elem:
    __slots__ = ("terms", "lm")

    def __init__(self, terms: dict, lm: tuple):
        self.terms = terms
        self.lm = lm


def _leading(terms: dict) -> tuple:
    return max(terms, key=grevlex_key)


def _monic(terms: dict, p: int) -> _Elem:
    lm = _leading(terms)
    inv = pow(terms[lm], p - 2, p)
    return _Elem({e: c * inv % p for e, c in terms.items()}, lm)


def normal_form(terms: dict, basis: Sequence[_Elem], p: int, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by monic ``basis``; with ``full=False``
    only leading terms are reduced."""
    h = dict(terms)
    heap = [(tuple(-k for k in _flat(grevlex_key(e))), e) for e in h]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, lm = heapq.heappop(heap)
        c = h.get(lm)
        if not c:
            continue
        for g in basis:
            if _divides(g.lm, lm):
                q = tuple(a - b for a, b in zip(lm, g.lm))
                f = p - c
                for e, gc in g.terms.items():
                    m = tuple(a + b for a, b in zip(e, q))
                    old = h.get(m)
                    if old is None:
                        h[m] = f * gc % p
                        heapq.heappush(heap, (tuple(-k for k in _flat(grevlex_key(m))), m))
                    else:
                        h[m] = (old + f * gc) % p
                break
        else:
            del h[lm]
            rem[lm] = c
            if not full:
                rem.update((e, v) for e, v in h.items() if v)
                return rem
    return rem


def _flat(key):
    d, rest = key
    return (d,) + rest


def s_polynomial(f: _Elem, g: _Elem, p: int) -> dict:
    L = _lcm(f.lm, g.lm)
    qf = tuple(a - b for a, b in zip(L, f.lm))
    qg = tuple(a - b for a, b in zip(L, g.lm))
    out = {}
    for e, c in f.terms.items():
        m = tuple(a + b for a, b in zip(e, qf))
        out[m] = c
    for e, c in g.terms.items():
        m = tuple(a + b for a, b in zip(e, qg))
        v = (out.get(m, 0) - c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


@dataclass
class GroebnerBasis:
    p: int
    nvars: int
    polys: list[Polynomial]
    degree_cap: int | None
    status: str  # "complete" or "capped"
    order: str = "grevlex"
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def leading_monomials(self) -> list[tuple]:
        return [_leading(g.terms) for g in self.polys]

    def is_zero_dimensional(self) -> bool:
        """Every variable has a pure power among the leading monomials."""
        lms = self.leading_monomials
        for i in range(self.nvars):
            if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
                return False
        return True

    def self_check(self) -> bool:
        """All S-polynomials reduce to zero."""
        elems = [_monic(g.terms, self.p) for g in self.polys]
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                s = s_polynomial(elems[i], elems[j], self.p)
                if s and normal_form(s, elems, self.p, full=False):
                    return False
        return True


def groebner(
    gens: Sequence[Polynomial],
    degree_cap: int | None = None,
    time_budget: float | None = None,
    reduce: bool = True,
) -> GroebnerBasis:
    """Gröbner basis by Buchberger with the normal selection strategy and
    both of Buchberger's criteria. Pairs beyond ``degree_cap`` or work past
    ``time_budget`` seconds leave the result marked ``capped``."""
    start = time.perf_counter()
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    p, n = gens[0].p, gens[0].nvars
    basis: list[_Elem] = []
    for g in gens:
        r = normal_form(g.terms, basis, p)
        if r:
            basis.append(_monic(r, p))

    pairs = {}  # (i, j) -> lcm
    heap = []

    def add_pairs(j):
        for i in range(j):
            L = _lcm(basis[i].lm, basis[j].lm)
            pairs[(i, j)] = L
            heapq.heappush(heap, (sum(L), grevlex_key(L), i, j))

    for j in range(1, len(basis)):
        add_pairs(j)

    status = "complete"
    reductions = skipped = 0
    while heap:
        if time_budget is not None and time.perf_counter() - start > time_budget:
            status = "capped"
            break
        deg, _, i, j = heapq.heappop(heap)
        L = pairs.pop((i, j), None)
        if L is None:
            continue
        if degree_cap is not None and deg > degree_cap:
            status = "capped"
            break
        fi, fj = basis[i], basis[j]
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            skipped += 1
            continue
        # chain criterion
        if any(
            k != i and k != j
            and _divides(basis[k].lm, L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            skipped += 1
            continue
        reductions += 1
        r = normal_form(s_polynomial(fi, fj, p), basis, p)
        if r:
            basis.append(_monic(r, p))
            add_pairs(len(basis) - 1)

    elems = basis
    if reduce and status == "complete":
        elems = _reduce_basis(basis, p)
    polys = [Polynomial(p, n, e.terms, _clean=True) for e in elems]
    return GroebnerBasis(
        p, n, polys, degree_cap, status,
        elapsed=time.perf_counter() - start,
        stats={"reductions": reductions, "skipped_pairs": skipped, "size": len(polys)},
    )


def _reduce_basis(basis: list[_Elem], p: int) -> list[_Elem]:
    # drop elements whose leading monomial is divisible by another's, then inter-reduce
    minimal = []
    for i, g in enumerate(basis):
        if any(
            _divides(h.lm, g.lm) and (h.lm != g.lm or j < i)
            for j, h in enumerate(basis)
            if j != i
        ):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g.terms, others, p)
        out.append(_monic(r, p))
    return sorted(out, key=lambda e: grevlex_key(e.lm))
