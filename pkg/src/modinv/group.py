"""Finite matrix groups over F_p and their action on polynomials.

A matrix g acts on the dual variables by ``g.x_i = sum_j (g^-1)[i][j] x_j``
and multiplicatively on polynomials, which makes ``f -> g.f`` a left action:
``g.(h.f) == (gh).f``.
"""

from __future__ import annotations

import functools
import random
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from . import _core
from .field import GF
from .poly import Polynomial, ShapeMismatch, substitute

import numpy as np

DEFAULT_CAP = 2_000_000


class SingularMatrix(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Closure enumeration outgrew its cap; use the block order formula instead."""


@dataclass(frozen=True)
class MatrixF:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) % self.p for a in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ShapeMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixF:
        return cls(p, tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: MatrixF) -> MatrixF:
        if other.p != self.p or other.n != self.n:
            raise ShapeMismatch("incompatible matrices")
        cols = list(zip(*other.rows))
        p = self.p
        return MatrixF(p, tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows))

    def det(self) -> int:
        p, n = self.p, self.n
        m = [list(r) for r in self.rows]
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c] % p
            inv = pow(m[c][c], p - 2, p)
            for r in range(c + 1, n):
                f = m[r][c] * inv % p
                if f:
                    m[r] = [(a - f * b) % p for a, b in zip(m[r], m[c])]
        return d % p

    @functools.cached_property
    def inverse(self) -> MatrixF:
        """Gauss-Jordan inverse, computed once per matrix."""
        p, n = self.p, self.n
        m = [list(r) + [int(r_ == c) for c in range(n)] for r_, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise SingularMatrix(f"matrix is singular mod {p}")
            m[c], m[piv] = m[piv], m[c]
            inv = pow(m[c][c], p - 2, p)
            m[c] = [a * inv % p for a in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [(a - f * b) % p for a, b in zip(m[r], m[c])]
        return MatrixF(p, tuple(tuple(r[n:]) for r in m))

    def is_invertible(self) -> bool:
        return self.det() != 0

    def block(self, r0: int, r1: int, c0: int, c1: int) -> tuple[tuple[int, ...], ...]:
        return tuple(row[c0:c1] for row in self.rows[r0:r1])

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"MatrixF(p={self.p}, {self.to_json()})"


def embed_matrix(a: MatrixF, n: int, offset: int) -> MatrixF:
    """Place ``a`` on the diagonal of the n x n identity starting at ``offset``."""
    rows = [[int(r == c) for c in range(n)] for r in range(n)]
    for i, row in enumerate(a.rows):
        for j, v in enumerate(row):
            rows[offset + i][offset + j] = v
    return MatrixF(a.p, tuple(map(tuple, rows)))


@dataclass(frozen=True)
class BlockInfo:
    """Block upper-triangular structure ``[[g1, m0], [0, g2]]`` with g1 of size m."""

    m: int
    g1: tuple[MatrixF, ...]
    g2: tuple[MatrixF, ...]


@dataclass(frozen=True)
class GroupSpec:
    p: int
    n: int
    generators: tuple[MatrixF, ...]
    block: BlockInfo | None = None
    name: str = ""

    def __post_init__(self):
        gens = tuple(g if isinstance(g, MatrixF) else MatrixF(self.p, g) for g in self.generators)
        for g in gens:
            if g.p != self.p or g.n != self.n:
                raise ShapeMismatch(f"generator of shape {g.n} over GF({g.p}) in GL_{self.n}(F_{self.p})")
            if not g.is_invertible():
                raise SingularMatrix(f"generator {g.to_json()} is singular")
        object.__setattr__(self, "generators", gens)

    def to_json(self) -> dict:
        out = {"p": self.p, "n": self.n, "generators": [g.to_json() for g in self.generators]}
        if self.block is not None:
            out["block"] = {
                "m": self.block.m,
                "g1": [g.to_json() for g in self.block.g1],
                "g2": [g.to_json() for g in self.block.g2],
            }
        return out

    @classmethod
    def from_json(cls, data) -> GroupSpec:
        p, n = int(data["p"]), int(data["n"])
        gens = tuple(MatrixF(p, tuple(map(tuple, g))) for g in data["generators"])
        block = None
        if data.get("block") is not None:
            b = data["block"]
            block = BlockInfo(
                int(b["m"]),
                tuple(MatrixF(p, tuple(map(tuple, g))) for g in b["g1"]),
                tuple(MatrixF(p, tuple(map(tuple, g))) for g in b["g2"]),
            )
        return cls(p, n, gens, block)


@dataclass(frozen=True)
class OrderResult:
    order: int
    method: str  # "closure" or "block-formula"
    detail: dict = field(default_factory=dict, compare=False)


# -- the action -------------------------------------------------------------


def act_on_variable(g: MatrixF, i: int) -> Polynomial:
    """Image of x_{i+1}: the linear form with coefficients from row i of g^-1."""
    if not 0 <= i < g.n:
        raise IndexError(f"variable index {i} out of range")
    return Polynomial.linear(g.p, g.inverse.rows[i])


def act_on_poly(g: MatrixF, f: Polynomial) -> Polynomial:
    if f.nvars != g.n or f.p != g.p:
        raise ShapeMismatch(f"matrix of size {g.n} over GF({g.p}) acting on {f.nvars} variables over GF({f.p})")
    return substitute(f, [act_on_variable(g, i) for i in range(g.n)])


# -- orders -----------------------------------------------------------------


def _closure(gens: Sequence[MatrixF], n: int, p: int, cap: int) -> int:
    if not gens:
        return 1
    arr = np.array([g.rows for g in gens], dtype=np.int64).reshape(len(gens), n, n)
    if (n * n) * np.log2(p) < 62:
        count = _core.closure_order(arr, p, cap)
    else:
        from . import _fallback

        count = _fallback.closure_order(arr, p, cap)
    if count < 0:
        raise CapExceeded(f"group has more than {cap} elements")
    return int(count)


def closure_order(spec: GroupSpec, cap: int = DEFAULT_CAP) -> OrderResult:
    """|G| by breadth-first closure under right multiplication by the generators."""
    return OrderResult(_closure(spec.generators, spec.n, spec.p, cap), "closure", {"backend": _core.BACKEND})


def block_order(spec: GroupSpec, cap: int = DEFAULT_CAP) -> OrderResult:
    """|G1| * |G2| * p^(m(n-m)), with the factor orders found by closure."""
    if spec.block is None:
        raise ValueError("group has no block structure")
    b, p, n = spec.block, spec.p, spec.n
    o1 = _closure(b.g1, b.m, p, cap)
    o2 = _closure(b.g2, n - b.m, p, cap)
    unipotent = p ** (b.m * (n - b.m))
    return OrderResult(o1 * o2 * unipotent, "block-formula", {"g1": o1, "g2": o2, "unipotent": unipotent})


def group_order(spec: GroupSpec, cap: int = DEFAULT_CAP) -> OrderResult:
    if spec.block is not None:
        return block_order(spec, cap)
    return closure_order(spec, cap)


def elements(gens: Sequence[MatrixF], n: int, p: int, cap: int = 100_000) -> set[MatrixF]:
    """All elements of a small group, for membership tests."""
    ident = MatrixF.identity(n, p)
    seen = {ident}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = cur @ g
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceeded(f"group has more than {cap} elements")
                queue.append(nxt)
    return seen


def random_element(spec: GroupSpec, rng: random.Random, length: int = 12) -> MatrixF:
    g = MatrixF.identity(spec.n, spec.p)
    for _ in range(length):
        if spec.generators:
            g = g @ rng.choice(spec.generators)
    return g


# -- generators ---------------------------------------------------------------


def standard_generators(family: str, n: int, p: int) -> list[MatrixF]:
    """Generators of SL_n(F_p) or GL_n(F_p).

    SL uses the transvection 1 + E_12 and the cyclic shift with sign chosen
    so its determinant is 1; GL adds diag(r, 1, ..., 1) for a primitive root r.
    """
    family = family.upper()
    if family not in ("SL", "GL"):
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("n must be positive")
    F = GF(p)
    gens = []
    if n >= 2:
        t = [[int(r == c) for c in range(n)] for r in range(n)]
        t[0][1] = 1
        gens.append(MatrixF(p, tuple(map(tuple, t))))
        # column j of the shift is e_{j+1}, wrapping to (-1)^(n-1) e_1
        s = [[0] * n for _ in range(n)]
        for j in range(n - 1):
            s[j + 1][j] = 1
        s[0][n - 1] = (-1) ** (n - 1) % p
        gens.append(MatrixF(p, tuple(map(tuple, s))))
    if family == "GL" and p > 2:
        d = [[int(r == c) for c in range(n)] for r in range(n)]
        d[0][0] = F.primitive_root
        gens.append(MatrixF(p, tuple(map(tuple, d))))
    return gens


def direct_sum_generators(gens_a: Sequence[MatrixF], na: int, gens_b: Sequence[MatrixF], nb: int, p: int) -> list[MatrixF]:
    """Generators of A x B acting block-diagonally on na + nb coordinates."""
    n = na + nb
    return [embed_matrix(g, n, 0) for g in gens_a] + [embed_matrix(g, n, na) for g in gens_b]


def block_group_generators(
    g1_gens: Iterable[MatrixF], g2_gens: Iterable[MatrixF], m: int, n: int, p: int, name: str = ""
) -> GroupSpec:
    """The group of all ``[[g1, m0], [0, g2]]``: embedded factor generators plus
    the m(n-m) elementary unipotents 1 + E_{i, m+j}."""
    g1_gens, g2_gens = tuple(g1_gens), tuple(g2_gens)
    if not 0 <= m <= n:
        raise ShapeMismatch(f"block size {m} outside 0..{n}")
    for g in g1_gens:
        if g.n != m or g.p != p:
            raise ShapeMismatch(f"G1 generator must be {m} x {m} over GF({p})")
    for g in g2_gens:
        if g.n != n - m or g.p != p:
            raise ShapeMismatch(f"G2 generator must be {n - m} x {n - m} over GF({p})")
    gens = [embed_matrix(g, n, 0) for g in g1_gens]
    gens += [embed_matrix(g, n, m) for g in g2_gens]
    for i in range(m):
        for j in range(n - m):
            u = [[int(r == c) for c in range(n)] for r in range(n)]
            u[i][m + j] = 1
            gens.append(MatrixF(p, tuple(map(tuple, u))))
    return GroupSpec(p, n, tuple(gens), BlockInfo(m, g1_gens, g2_gens), name)


def is_block_upper(g: MatrixF, m: int) -> bool:
    return all(g[r, c] == 0 for r in range(m, g.n) for c in range(m))


def decompose(g: MatrixF, m: int) -> tuple[MatrixF, MatrixF, MatrixF]:
    """Split a block matrix as ``u @ d1 @ d2`` with u unipotent ``[[1, m0 g2^-1], [0, 1]]``,
    d1 = diag(g1, 1) and d2 = diag(1, g2)."""
    if not is_block_upper(g, m):
        raise ValueError("matrix is not block upper triangular")
    n, p = g.n, g.p
    g1 = MatrixF(p, g.block(0, m, 0, m))
    g2 = MatrixF(p, g.block(m, n, m, n))
    m0 = g.block(0, m, m, n)
    g2inv = g2.inverse.rows
    u = [[int(r == c) for c in range(n)] for r in range(n)]
    for i in range(m):
        for j in range(n - m):
            u[i][m + j] = sum(m0[i][k] * g2inv[k][j] for k in range(n - m)) % p
    return MatrixF(p, tuple(map(tuple, u))), embed_matrix(g1, n, 0), embed_matrix(g2, n, m)
