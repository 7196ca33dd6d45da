import random

import pytest

from modinv.poly import Polynomial


def evaluate(f: Polynomial, point) -> int:
    """Value of f at a point of F_p^n, straight from the term list."""
    total = 0
    for exps, c in f.terms.items():
        term = c
        for x, e in zip(point, exps):
            term *= pow(x, e, f.p)
        total += term
    return total % f.p


def random_poly(rng: random.Random, p: int, nvars: int, max_degree: int = 6, max_terms: int = 6) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = rng.randrange(p)
    return Polynomial(p, nvars, terms)


def random_linear(rng: random.Random, p: int, nvars: int) -> Polynomial:
    return Polynomial.linear(p, [rng.randrange(p) for _ in range(nvars)])


@pytest.fixture
def rng():
    return random.Random(20261016)
