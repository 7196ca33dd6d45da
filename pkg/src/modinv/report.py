"""Degree audit for E8 at p = 3.

Given a certified free presentation of the Weyl-group invariants and an
upper bound B on the generator degrees of the E2 page, checks that exactly
one invariant generator lies above B and that the free algebra on the
generators at or below B first misses it in its own degree.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .construct import CatalogCase, catalog_case
from .verify import PASS, hilbert_series, wilkerson_verify

SCHEMA_VERSION = 1

COTOR_BOUND = 168
COTOR_BOUND_SOURCE = (
    "upper bound on algebra-generator degrees of Cotor_{H*E8}(F3, F3) "
    "from the Mimura-Sambe computation; consumed as an input, not recomputed"
)


@dataclass
class NoncollapseReport:
    case: str
    status: str  # collapse-excluded | not-excluded | inconclusive
    conclusion: bool | None
    verified: str
    cohomological_degrees: list[int]
    bound: int
    bound_source: str
    witness_degree: int | None
    generators_above_bound: list[int]
    divergence_degree: int | None
    divergence_jump: int | None
    series_agreement_limit: int | None
    evidence: dict = field(default_factory=dict)
    reasons: list[str] = field(default_factory=list)
    text: str = ""
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> NoncollapseReport:
        return cls(**data)


def _series_comparison(small: list[int], full: list[int], depth: int):
    """First degree where the free-algebra series on ``small`` and ``full`` differ."""
    a = hilbert_series(small, depth).coefficients if small else [1] + [0] * depth
    b = hilbert_series(full, depth).coefficients
    for d in range(depth + 1):
        if a[d] != b[d]:
            agree = max((k for k in range(0, d, 2)), default=None)
            return d, b[d] - a[d], agree
    return None, None, max(k for k in range(0, depth + 1, 2))


def noncollapse_audit(
    bound: int = COTOR_BOUND,
    case: CatalogCase | None = None,
    policy: str = "structural",
) -> NoncollapseReport:
    case = case or catalog_case("EE8^5a")
    cert = wilkerson_verify(case.presentation, case.group, policy=policy)
    degrees = sorted(d for d in case.presentation.cohomological_degrees if d is not None)
    evidence = {
        "group_order": cert.cond3.get("group_order"),
        "degree_product": cert.cond3.get("degree_product"),
        "cond1": cert.cond1["status"],
        "cond2": cert.cond2["status"],
        "cond2_method": cert.cond2.get("method"),
        "cond3": cert.cond3["status"],
        "generators_checked": cert.cond1.get("generators_checked"),
    }
    report = NoncollapseReport(
        case=case.key,
        status="inconclusive",
        conclusion=None,
        verified=cert.verdict,
        cohomological_degrees=degrees,
        bound=bound,
        bound_source=COTOR_BOUND_SOURCE,
        witness_degree=None,
        generators_above_bound=[d for d in degrees if d > bound],
        divergence_degree=None,
        divergence_jump=None,
        series_agreement_limit=None,
        evidence=evidence,
    )
    if cert.verdict != PASS:
        report.reasons.append(f"invariant ring not certified (verdict {cert.verdict}); refusing to conclude")
        report.text = f"{case.key}: no conclusion, the claimed invariant ring did not verify."
        return report

    above = report.generators_above_bound
    if len(above) != 1:
        report.status, report.conclusion = "not-excluded", False
        report.reasons.append(
            "no generator above the bound" if not above else f"{len(above)} generators above the bound"
        )
        report.text = f"{case.key}: degree argument does not apply with bound {bound}."
        return report

    witness = above[0]
    small = [d for d in degrees if d <= bound]
    div, jump, agree = _series_comparison(small, degrees, witness)
    report.witness_degree = witness
    report.divergence_degree, report.divergence_jump = div, jump
    report.series_agreement_limit = agree
    if div == witness and jump == 1 and witness > bound:
        report.status, report.conclusion = "collapse-excluded", True
        report.reasons.append(
            f"invariants are free on degrees {degrees}; the series of the subalgebra on {small} "
            f"agrees through degree {agree} and first misses one class at {witness}"
        )
        report.text = (
            f"E2 collapse excluded for BE8 at p=3: the invariant generator x{witness} has degree "
            f"{witness} > {bound}, so any algebra generated in degrees <= {bound} lies in "
            f"F3[{', '.join(f'x{d}' for d in small)}], over which x{witness} is not integral."
        )
    else:
        report.status, report.conclusion = "not-excluded", False
        report.reasons.append(f"series first differ at {div} (jump {jump}), expected {witness} (jump 1)")
        report.text = f"{case.key}: degree argument inconclusive for bound {bound}."
    return report
