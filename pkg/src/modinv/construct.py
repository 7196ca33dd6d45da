"""Invariant-ring presentations, block composition, and the Weyl-group catalog.

Degrees are stored as polynomial degrees. The catalog reports cohomological
degrees, which are twice as large because each variable t_i sits in degree 2.
"""

from __future__ import annotations

import dataclasses
import functools
import hashlib
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from .dickson import dickson_generators, euler_class, o_expansion
from .group import (
    GroupSpec,
    block_group_generators,
    direct_sum_generators,
    standard_generators,
)
from .poly import Polynomial, dumps, embed, is_homogeneous, substitute


class UnverifiedInput(ValueError):
    """A composition input has no passing certificate."""


def fingerprint(generators: Sequence[Polynomial]) -> str:
    h = hashlib.sha256()
    for g in generators:
        h.update(dumps(g.to_json()).encode())
        h.update(b"\n")
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class Provenance:
    kind: str  # dickson-SL | dickson-GL | explicit | theorem5 | product
    children: tuple[InvariantPresentation, ...] = ()
    detail: str = ""
    fingerprint: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "fingerprint": self.fingerprint}
        if self.detail:
            out["detail"] = self.detail
        if self.children:
            out["children"] = [c.provenance.to_json() for c in self.children]
        return out


@dataclass(frozen=True)
class InvariantPresentation:
    """A claimed ring of invariants ``F_p[f_1, ..., f_k]`` inside ``F_p[x_1..x_n]``."""

    p: int
    nvars: int
    generators: tuple[Polynomial, ...]
    provenance: Provenance
    names: tuple[str, ...] = ()
    certificate: Any = field(default=None, compare=False)

    @property
    def poly_degrees(self) -> list[int | None]:
        """Degree of each generator; ``None`` where a generator is not homogeneous."""
        return [is_homogeneous(g)[1] for g in self.generators]

    @property
    def cohomological_degrees(self) -> list[int | None]:
        return [None if d is None else 2 * d for d in self.poly_degrees]

    @property
    def labels(self) -> list[str]:
        if self.names:
            return list(self.names)
        return [f"x{d}" if d is not None else f"f{i + 1}" for i, d in enumerate(self.cohomological_degrees)]

    @property
    def verified(self) -> bool:
        return self.certificate is not None and self.certificate.verdict == "pass"

    def with_certificate(self, certificate) -> InvariantPresentation:
        return dataclasses.replace(self, certificate=certificate)

    def summary(self) -> dict:
        return {
            "p": self.p,
            "nvars": self.nvars,
            "generators": self.labels,
            "poly_degrees": self.poly_degrees,
            "cohomological_degrees": self.cohomological_degrees,
            "terms": [len(g) for g in self.generators],
            "provenance": self.provenance.to_json(),
        }


def presentation(p, nvars, generators, kind, children=(), detail="", names=()) -> InvariantPresentation:
    generators = tuple(generators)
    prov = Provenance(kind, tuple(children), detail, fingerprint(generators))
    return InvariantPresentation(p, nvars, generators, prov, tuple(names))


# -- leaves ---------------------------------------------------------------------


def trivial_presentation(n: int, p: int) -> InvariantPresentation:
    """F_p[x_1, ..., x_n], the invariants of the trivial group."""
    gens = [Polynomial.var(p, n, i) for i in range(n)]
    return presentation(p, n, gens, "explicit", detail="trivial group")


def gl_presentation(n: int, p: int) -> InvariantPresentation:
    """Dickson invariants c_{n,0}, ..., c_{n,n-1} (for n = 1 this is t^(p-1))."""
    gens = sorted(dickson_generators(n, p), key=lambda f: f.degree)
    return presentation(p, n, gens, "dickson-GL", detail=f"GL_{n}(F_{p})")


def sl_presentation(n: int, p: int) -> InvariantPresentation:
    """Euler class e (with e^(p-1) = c_{n,0}) and c_{n,1}, ..., c_{n,n-1}."""
    euler = euler_class(n, p)
    if euler.sigma != 1:
        raise ArithmeticError(f"Euler class normalization gives sigma = {euler.sigma}")
    gens = [euler.polynomial] + sorted(dickson_generators(n, p)[1:], key=lambda f: f.degree)
    return presentation(p, n, gens, "dickson-SL", detail=f"SL_{n}(F_{p}); e^{p - 1} = c_{n},0")


# -- composition -------------------------------------------------------------------


def product_presentation(a: InvariantPresentation, b: InvariantPresentation) -> InvariantPresentation:
    """Invariants of A x B acting on disjoint variable blocks; a's variables come first."""
    if a.p != b.p:
        raise ValueError("presentations over different fields")
    n = a.nvars + b.nvars
    if a.nvars == 0:
        return b
    if b.nvars == 0:
        return a
    gens = [embed(f, n, 0) for f in a.generators] + [embed(f, n, a.nvars) for f in b.generators]
    names = (a.labels + b.labels) if (a.names or b.names) else ()
    return presentation(a.p, n, gens, "product", (a, b), names=names)


def theorem5_compose(
    inv1: InvariantPresentation,
    inv2: InvariantPresentation,
    block: GroupSpec,
    require_certified: bool = True,
) -> InvariantPresentation:
    """Invariants of the block group from those of its diagonal blocks.

    The G1-generators are evaluated at ``O x_1, ..., O x_m`` where O runs over
    the span of the last n - m variables; the G2-generators move to
    x_{m+1}, ..., x_n unchanged.
    """
    if block.block is None:
        raise ValueError("group has no block structure")
    m, n, p = block.block.m, block.n, block.p
    if inv1.nvars != m or inv2.nvars != n - m:
        raise ValueError(f"presentations on {inv1.nvars} + {inv2.nvars} variables for blocks {m} + {n - m}")
    if inv1.p != p or inv2.p != p:
        raise ValueError("presentation and group over different fields")
    if require_certified:
        for label, inv in (("G1", inv1), ("G2", inv2)):
            if not inv.verified:
                raise UnverifiedInput(f"{label} presentation has no passing certificate")
    if m == 0:
        return inv2
    expansion = o_expansion(range(m, n), n, p)
    images = [expansion.apply(Polynomial.var(p, n, j)) for j in range(m)]
    bar = [substitute(f, images) for f in inv1.generators]
    rest = [embed(f, n, m) for f in inv2.generators]
    return presentation(
        p, n, bar + rest, "theorem5", (inv1, inv2), detail=f"m={m}, n={n}, O over x{m + 1}..x{n}"
    )


# -- catalog -----------------------------------------------------------------------

CATALOG_KEYS = ("EE8^3", "EF4^3", "E3E6^4", "E2E7^4", "EE8^5a")

CLAIMED = {
    "EE8^3": (62, 200, 240),
    "EF4^3": (26, 36, 48),
    "E3E6^4": (26, 36, 48, 54),
    "E2E7^4": (26, 36, 48, 108),
    "EE8^5a": (4, 26, 36, 48, 324),
}

DESCRIPTIONS = {
    "EE8^3": "p=5, E8, rank-3 nontoral subgroup; W(A) = SL_3(F_5)",
    "EF4^3": "p=3, F4, rank-3 nontoral subgroup; W(A) = SL_3(F_3)",
    "E3E6^4": "p=3, E6, rank 4; W(A) = [[1, m0], [0, SL_3(F_3)]]",
    "E2E7^4": "p=3, E7, rank 4; W(A) = [[GL_1(F_3), m0], [0, SL_3(F_3)]]",
    "EE8^5a": "p=3, E8, rank 5; W(A) = [[GL_1(F_3), m0], [0, SL_3(F_3) x GL_1(F_3)]]",
}


@dataclass(frozen=True)
class CatalogCase:
    key: str
    group: GroupSpec
    claimed_cohomological_degrees: tuple[int, ...]
    presentation: InvariantPresentation
    description: str = ""

    @property
    def computed_cohomological_degrees(self) -> list[int | None]:
        return sorted(self.presentation.cohomological_degrees, key=lambda d: (d is None, d))

    @property
    def degrees_match(self) -> bool:
        return self.computed_cohomological_degrees == sorted(self.claimed_cohomological_degrees)

    def summary(self) -> dict:
        return {
            "key": self.key,
            "description": self.description,
            "p": self.group.p,
            "n": self.group.n,
            "claimed_cohomological_degrees": sorted(self.claimed_cohomological_degrees),
            "computed_cohomological_degrees": self.computed_cohomological_degrees,
            "degrees_match": self.degrees_match,
            "presentation": self.presentation.summary(),
        }


def _certified(inv: InvariantPresentation, group: GroupSpec) -> InvariantPresentation:
    from .verify import wilkerson_verify

    cert = wilkerson_verify(inv, group, policy="structural")
    if cert.verdict != "pass":
        raise UnverifiedInput(f"{inv.provenance.kind} leaf failed verification: {cert.verdict}")
    return inv.with_certificate(cert)


def _named(inv: InvariantPresentation) -> InvariantPresentation:
    order = sorted(range(len(inv.generators)), key=lambda i: inv.poly_degrees[i])
    gens = tuple(inv.generators[i] for i in order)
    names = tuple(f"x{2 * inv.poly_degrees[i]}" for i in order)
    return dataclasses.replace(
        inv, generators=gens, names=names, provenance=dataclasses.replace(inv.provenance, fingerprint=fingerprint(gens))
    )


def _sl_group(n: int, p: int) -> GroupSpec:
    return GroupSpec(p, n, tuple(standard_generators("SL", n, p)), name=f"SL_{n}(F_{p})")


def _build(key: str) -> CatalogCase:
    if key == "EE8^3":
        group = _sl_group(3, 5)
        pres = sl_presentation(3, 5)
    elif key == "EF4^3":
        group = _sl_group(3, 3)
        pres = sl_presentation(3, 3)
    elif key in ("E3E6^4", "E2E7^4"):
        p = 3
        sl3 = _certified(sl_presentation(3, p), _sl_group(3, p))
        if key == "E3E6^4":
            g1_gens, leaf = [], trivial_presentation(1, p)
        else:
            g1_gens, leaf = standard_generators("GL", 1, p), gl_presentation(1, p)
        leaf = _certified(leaf, GroupSpec(p, 1, tuple(g1_gens)))
        group = block_group_generators(g1_gens, standard_generators("SL", 3, p), 1, 4, p, name=key)
        pres = theorem5_compose(leaf, sl3, group)
    elif key == "EE8^5a":
        p = 3
        sl3 = _certified(sl_presentation(3, p), _sl_group(3, p))
        gl1_gens = standard_generators("GL", 1, p)
        gl1_group = GroupSpec(p, 1, tuple(gl1_gens))
        g2_gens = direct_sum_generators(standard_generators("SL", 3, p), 3, gl1_gens, 1, p)
        g2 = _certified(product_presentation(sl3, _certified(gl_presentation(1, p), gl1_group)), GroupSpec(p, 4, tuple(g2_gens)))
        g1 = _certified(gl_presentation(1, p), gl1_group)
        group = block_group_generators(gl1_gens, g2_gens, 1, 5, p, name=key)
        pres = theorem5_compose(g1, g2, group)
    else:
        raise KeyError(f"unknown catalog key {key!r}; expected one of {', '.join(CATALOG_KEYS)}")
    if not group.name:
        group = dataclasses.replace(group, name=key)
    return CatalogCase(key, group, CLAIMED[key], _named(pres), DESCRIPTIONS[key])


@functools.cache
def catalog_case(key: str) -> CatalogCase:
    """Group and presentation for one of the five Weyl-group cases."""
    return _build(key)


def catalog_list() -> list[str]:
    return list(CATALOG_KEYS)
