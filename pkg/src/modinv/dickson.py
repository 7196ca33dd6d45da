"""The O-operator, Dickson invariants and the Euler class.

For a subspace W of the linear forms, ``O X = prod_{w in W} (X + w)`` is an
additive polynomial in X: ``O X = sum_k S_k X^(p^k)``. The Dickson invariants
are ``c_{d,k} = (-1)^(d-k) S_k`` with d = dim W, so ``c_{d,d} = 1``.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

from .poly import Polynomial, is_homogeneous, product


class NonAdditiveExpansion(ArithmeticError):
    """O X had a term whose X-exponent is not a power of p."""


def _span(p: int, nvars: int, basis: Sequence[int]):
    """Linear forms of span{x_b : b in basis}, in lexicographic coefficient order."""
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        form = [0] * nvars
        for b, c in zip(basis, coeffs):
            form[b] = c
        yield Polynomial.linear(p, form)


def _check_basis(basis: Sequence[int], nvars: int):
    if len(set(basis)) != len(basis):
        raise ValueError(f"repeated basis variable in {list(basis)}")
    if any(not 0 <= b < nvars for b in basis):
        raise IndexError(f"basis {list(basis)} out of range for {nvars} variables")


def o_apply(target: Polynomial, v2_basis: Sequence[int]) -> Polynomial:
    """``prod_{w} (target + w)`` over every w in the span of the basis variables,
    multiplied out directly."""
    ok, deg = is_homogeneous(target)
    if not ok or deg not in (1, None):
        raise ValueError("O can only be applied to a linear form")
    _check_basis(v2_basis, target.nvars)
    factors = [target + w for w in _span(target.p, target.nvars, v2_basis)]
    return product(factors, target.p, target.nvars)


@dataclass(frozen=True)
class OExpansion:
    p: int
    nvars: int
    basis: tuple[int, ...]
    summands: tuple[Polynomial, ...]  # S_0, ..., S_d with O X = sum S_k X^(p^k)

    @property
    def subspace_dim(self) -> int:
        return len(self.basis)

    @property
    def coefficients(self) -> tuple[Polynomial, ...]:
        """Dickson invariants c_{d,0}, ..., c_{d,d}."""
        d = self.subspace_dim
        return tuple(s if (d - k) % 2 == 0 else -s for k, s in enumerate(self.summands))

    def dickson(self, k: int) -> Polynomial:
        return self.coefficients[k]

    def apply(self, x: Polynomial) -> Polynomial:
        """O x for a linear form x, as ``sum S_k x^(p^k)``."""
        out = Polynomial.zero(self.p, self.nvars)
        xp = x
        for k, s in enumerate(self.summands):
            if k:
                xp = xp.frobenius()
            out = out + s * xp
        return out


def _expansion_by_product(basis, nvars, p) -> tuple[Polynomial, ...]:
    # X is an extra variable appended after the ambient ones
    X = Polynomial.var(p, nvars + 1, nvars)
    full = o_apply(X, list(basis))
    d = len(basis)
    powers = {p**k: k for k in range(d + 1)}
    parts = [{} for _ in range(d + 1)]
    for exps, c in full.terms.items():
        k = powers.get(exps[-1])
        if k is None:
            raise NonAdditiveExpansion(f"X^{exps[-1]} appears in O X")
        parts[k][exps[:-1]] = c
    return tuple(Polynomial(p, nvars, t) for t in parts)


def _expansion_by_recursion(basis, nvars, p) -> tuple[Polynomial, ...]:
    # Adjoining v to W: prod_c P(X + c v) = P(X)^p - P(v)^(p-1) P(X) for additive P.
    summands = [Polynomial.one(p, nvars)]
    for i, b in enumerate(basis):
        v = Polynomial.var(p, nvars, b)
        pv = OExpansion(p, nvars, tuple(basis[:i]), tuple(summands)).apply(v)
        a = pv ** (p - 1)
        new = [-(a * summands[0])]
        for k in range(1, len(summands)):
            new.append(summands[k - 1].frobenius() - a * summands[k])
        new.append(summands[-1].frobenius())
        summands = new
    return tuple(summands)


def o_expansion(v2_basis: Sequence[int], nvars: int, p: int, method: str = "recursive") -> OExpansion:
    """Additive expansion of O X over span{x_b : b in v2_basis}.

    ``method="product"`` multiplies out the p^d linear factors in a fresh
    variable X and reads the coefficients off; ``"recursive"`` builds them one
    basis vector at a time. Both give identical results.
    """
    basis = tuple(v2_basis)
    _check_basis(basis, nvars)
    if method == "product":
        summands = _expansion_by_product(basis, nvars, p)
    elif method == "recursive":
        summands = _expansion_by_recursion(basis, nvars, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    if summands[-1] != Polynomial.one(p, nvars):
        raise NonAdditiveExpansion("leading coefficient of O X is not 1")
    return OExpansion(p, nvars, basis, summands)


def dickson_generators(n: int, p: int, method: str = "recursive") -> list[Polynomial]:
    """c_{n,0}, ..., c_{n,n-1} in n variables; c_{n,k} has degree p^n - p^k."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(o_expansion(range(n), n, p, method).coefficients[:n])


@dataclass(frozen=True)
class EulerClass:
    n: int
    p: int
    polynomial: Polynomial
    sigma: int  # e^(p-1) == sigma * c_{n,0}

    @property
    def degree(self) -> int:
        return self.polynomial.degree


def projective_points(n: int, p: int):
    """Nonzero vectors of F_p^n whose first nonzero coordinate is 1, lexicographically."""
    for v in itertools.product(range(p), repeat=n):
        nz = next((a for a in v if a), 0)
        if nz == 1:
            yield v


def euler_class(n: int, p: int) -> EulerClass:
    """Product of one linear form per point of P^{n-1}(F_p)."""
    e = product([Polynomial.linear(p, v) for v in projective_points(n, p)], p, n)
    c0 = dickson_generators(n, p)[0]
    lhs = e ** (p - 1)
    lead_exps, lead_c = lhs.sorted_terms()[0]
    sigma = lead_c * pow(c0.terms.get(lead_exps, 0), p - 2, p) % p
    if not sigma or lhs != c0 * sigma:
        raise ArithmeticError(f"e^{p - 1} is not a scalar multiple of c_{{{n},0}}")
    return EulerClass(n, p, e, sigma)
