"""Sparse multivariate polynomials over F_p.

A polynomial is a map from exponent tuples (the monomials) to nonzero
coefficients in ``range(p)``. Instances are immutable. Large products are
handed to the packed-monomial kernel in :mod:`modinv._core`.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence

import numpy as np

from . import _core
from .field import GF, FieldElement, ModulusMismatch

Monomial = tuple  # tuple[int, ...] of length nvars

EXPONENT_LIMIT = 1 << 31
# below this many term pairs the dict loop beats packing into numpy arrays
KERNEL_THRESHOLD = 4096


class ShapeMismatch(ValueError):
    pass


def _canonical_key(item):
    exps = item[0]
    return (sum(exps), exps)


class Polynomial:
    __slots__ = ("p", "nvars", "terms", "_hash")

    def __init__(self, p: int, nvars: int, terms: Mapping[tuple, int] | None = None, *, _clean=False):
        self.p = p
        self.nvars = nvars
        self._hash = None
        if _clean:
            self.terms = terms
            return
        GF(p)
        out = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ShapeMismatch(f"monomial {exps} has length {len(exps)}, expected {nvars}")
            if any(e < 0 or e >= EXPONENT_LIMIT for e in exps):
                raise OverflowError(f"exponent out of range in {exps}")
            c = (out.get(exps, 0) + int(c)) % p
            if c:
                out[exps] = c
            else:
                out.pop(exps, None)
        self.terms = out

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int, nvars: int) -> Polynomial:
        return cls(p, nvars, {}, _clean=True)

    @classmethod
    def constant(cls, p: int, nvars: int, c: int = 1) -> Polynomial:
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, p: int, nvars: int) -> Polynomial:
        return cls.constant(p, nvars, 1)

    @classmethod
    def var(cls, p: int, nvars: int, i: int) -> Polynomial:
        """The variable x_{i+1} (indices are 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls(p, nvars, {tuple(exps): 1}, _clean=True)

    @classmethod
    def linear(cls, p: int, coeffs: Sequence[int]) -> Polynomial:
        """The linear form sum(coeffs[i] * x_{i+1})."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c % p:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = c % p
        return cls(p, n, terms, _clean=True)

    @classmethod
    def monomial(cls, p: int, exps: Sequence[int], c: int = 1) -> Polynomial:
        return cls(p, len(exps), {tuple(exps): c})

    # -- basic properties -----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Total degree; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> tuple[bool, int | None]:
        return is_homogeneous(self)

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return GF(self.p)(self.terms.get(tuple(exps), 0))

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=_canonical_key, reverse=True)

    def support_vars(self) -> set[int]:
        return {i for exps in self.terms for i, e in enumerate(exps) if e}

    def _check(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"GF({self.p}) vs GF({other.p})")
        if other.nvars != self.nvars:
            raise ShapeMismatch(f"{self.nvars} vs {other.nvars} variables")

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.p, self.nvars, other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.p
        out = dict(self.terms)
        for exps, c in other.terms.items():
            c = (out.get(exps, 0) + c) % p
            if c:
                out[exps] = c
            else:
                del out[exps]
        return Polynomial(p, self.nvars, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Polynomial(p, self.nvars, {e: p - c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.p, self.nvars, other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> Polynomial:
        c = int(c) % self.p
        if c == 0:
            return Polynomial.zero(self.p, self.nvars)
        p = self.p
        return Polynomial(p, self.nvars, {e: v * c % p for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return _mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def frobenius(self) -> Polynomial:
        """f**p, computed as sum(c * m**p) since c**p == c in F_p."""
        p = self.p
        return Polynomial(
            p, self.nvars, {tuple(p * x for x in e): c for e, c in self.terms.items()}, _clean=True
        )

    def mul_monomial(self, exps: Sequence[int], c: int = 1) -> Polynomial:
        p = self.p
        c %= p
        if not c:
            return Polynomial.zero(p, self.nvars)
        return Polynomial(
            p,
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): v * c % p for e, v in self.terms.items()},
            _clean=True,
        )

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.p, self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- formatting -----------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exps, c in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        if len(self.terms) > 8:
            return f"<Polynomial over GF({self.p}) in {self.nvars} vars, {len(self.terms)} terms, degree {self.degree}>"
        return f"Polynomial({self.to_str()!r} over GF({self.p}))"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "nvars": self.nvars,
            "terms": [[c, list(e)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Polynomial:
        p, n = int(data["p"]), int(data["nvars"])
        terms = {}
        for c, exps in data["terms"]:
            exps = tuple(exps)
            if exps in terms:
                raise ValueError(f"duplicate monomial {exps}")
            if not 0 < int(c) < p:
                raise ValueError(f"coefficient {c} not in [1, {p})")
            terms[exps] = int(c)
        return cls(p, n, terms)


def dumps(obj) -> str:
    """Deterministic compact JSON used for golden files and CLI output."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- multiplication ------------------------------------------------------


def _mul_dict(a: dict, b: dict, p: int) -> dict:
    acc = {}
    get = acc.get
    b_items = list(b.items())
    for ea, ca in a.items():
        for eb, cb in b_items:
            k = tuple(x + y for x, y in zip(ea, eb))
            acc[k] = get(k, 0) + ca * cb
    return {k: v % p for k, v in acc.items() if v % p}


def _field_width(max_degree: int) -> int:
    return max(1, int(max_degree).bit_length())


def _packable(nvars: int, max_degree: int) -> bool:
    return nvars > 0 and nvars * _field_width(max_degree) <= 62


def _shifts(nvars: int, width: int) -> np.ndarray:
    return np.array([width * (nvars - 1 - i) for i in range(nvars)], dtype=np.int64)


def _pack(f: Polynomial, width: int):
    if not f.terms:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    exps = np.array(list(f.terms.keys()), dtype=np.int64).reshape(len(f.terms), f.nvars)
    keys = (exps << _shifts(f.nvars, width)).sum(axis=1)
    coefs = np.fromiter(f.terms.values(), dtype=np.int64, count=len(f.terms))
    return keys, coefs


def _unpack(keys, coefs, p: int, nvars: int, width: int) -> Polynomial:
    mask = (1 << width) - 1
    exps = (keys[:, None] >> _shifts(nvars, width)) & mask
    terms = dict(zip(map(tuple, exps.tolist()), coefs.tolist()))
    return Polynomial(p, nvars, terms, _clean=True)


def _mul(f: Polynomial, g: Polynomial) -> Polynomial:
    p, n = f.p, f.nvars
    if not f.terms or not g.terms:
        return Polynomial.zero(p, n)
    bound = f.degree + g.degree
    if len(f.terms) * len(g.terms) >= KERNEL_THRESHOLD and _packable(n, bound):
        w = _field_width(bound)
        ka, ca = _pack(f, w)
        kb, cb = _pack(g, w)
        keys, coefs = _core.mul_packed(ka, ca, kb, cb, p)
        return _unpack(keys, coefs, p, n, w)
    return Polynomial(p, n, _mul_dict(f.terms, g.terms, p), _clean=True)


def product(factors: Iterable[Polynomial], p: int, nvars: int) -> Polynomial:
    """Multiply ``factors`` left to right.

    When the degree bound allows, the running product stays in packed form
    for the whole loop instead of being rebuilt as a dict after every step.
    """
    factors = list(factors)
    for f in factors:
        if f.p != p or f.nvars != nvars:
            raise ShapeMismatch("factor does not live in the target ring")
    acc = Polynomial.one(p, nvars)
    if not factors:
        return acc
    if any(not f.terms for f in factors):
        return Polynomial.zero(p, nvars)
    bound = sum(f.degree for f in factors)
    if not _packable(nvars, bound):
        for f in factors:
            acc = acc * f
        return acc
    w = _field_width(bound)
    keys, coefs = _pack(acc, w)
    for f in factors:
        kf, cf = _pack(f, w)
        keys, coefs = _core.mul_packed(keys, coefs, kf, cf, p)
    return _unpack(keys, coefs, p, nvars, w)


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_pow(f: Polynomial, e: int) -> Polynomial:
    """f**e by repeated squaring, peeling factors of p off as Frobenius maps."""
    if e < 0:
        raise ValueError("negative exponent")
    frob = 0
    while e and e % f.p == 0:
        e //= f.p
        frob += 1
    result = Polynomial.one(f.p, f.nvars)
    base = f
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    for _ in range(frob):
        result = result.frobenius()
    return result


def is_homogeneous(f: Polynomial) -> tuple[bool, int | None]:
    """``(True, d)`` if every term has total degree d; the zero polynomial gives ``(True, None)``."""
    degrees = {sum(e) for e in f.terms}
    if not degrees:
        return True, None
    if len(degrees) == 1:
        return True, degrees.pop()
    return False, None


# -- substitution --------------------------------------------------------


def substitute(f: Polynomial, images: Sequence[Polynomial], nvars: int | None = None) -> Polynomial:
    """Ring homomorphism sending x_{i+1} to ``images[i]``.

    ``nvars`` fixes the target ring when ``images`` is empty.
    """
    if len(images) != f.nvars:
        raise ShapeMismatch(f"{len(images)} images for {f.nvars} variables")
    if images:
        n = images[0].nvars
        for img in images:
            if img.p != f.p:
                raise ModulusMismatch(f"GF({img.p}) image in GF({f.p}) substitution")
            if img.nvars != n:
                raise ShapeMismatch("images live in different rings")
        if nvars is not None and nvars != n:
            raise ShapeMismatch(f"images have {n} variables, target has {nvars}")
    elif nvars is None:
        raise ValueError("target variable count needed for an empty substitution")
    else:
        n = nvars
    p = f.p

    single = []
    for img in images:
        if len(img.terms) == 1:
            (m, c), = img.terms.items()
            single.append((m, c))
        else:
            single.append(None)
    powers = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = poly_pow(images[i], e)
        return powers[key]

    acc = {}
    get = acc.get
    for exps, c in f.terms.items():
        mono = [0] * n
        factor = None
        for i, e in enumerate(exps):
            if not e:
                continue
            s = single[i]
            if s is not None:
                m, a = s
                c = c * pow(a, e, p) % p
                for j, mj in enumerate(m):
                    if mj:
                        mono[j] += mj * e
            elif not images[i].terms:
                c = 0
                break
            else:
                pw = power(i, e)
                factor = pw if factor is None else factor * pw
        if not c:
            continue
        if factor is None:
            k = tuple(mono)
            acc[k] = get(k, 0) + c
        else:
            for m, a in factor.terms.items():
                k = tuple(x + y for x, y in zip(m, mono))
                acc[k] = get(k, 0) + a * c
    return Polynomial(p, n, {k: v % p for k, v in acc.items() if v % p}, _clean=True)


def embed(f: Polynomial, nvars: int, offset: int) -> Polynomial:
    """Rename x_{i+1} to x_{offset+i+1} inside a ring with ``nvars`` variables."""
    if offset < 0 or offset + f.nvars > nvars:
        raise ShapeMismatch(f"cannot place {f.nvars} variables at offset {offset} in {nvars}")
    pad_l, pad_r = (0,) * offset, (0,) * (nvars - offset - f.nvars)
    return Polynomial(
        f.p, nvars, {pad_l + e + pad_r: c for e, c in f.terms.items()}, _clean=True
    )
