import json
import random

import pytest

from modinv.construct import catalog_case
from modinv.group import (
    CapExceeded,
    GroupSpec,
    MatrixF,
    SingularMatrix,
    act_on_poly,
    act_on_variable,
    block_group_generators,
    block_order,
    closure_order,
    decompose,
    direct_sum_generators,
    elements,
    embed_matrix,
    random_element,
    standard_generators,
)
from modinv.poly import Polynomial

from conftest import random_poly


def sl_order(n, q):
    """|SL_n(F_q)| = q^(n(n-1)/2) prod_{i=2}^n (q^i - 1)."""
    out = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        out *= q**i - 1
    return out


def gl_order(n, q):
    return sl_order(n, q) * (q - 1)


def spec(family, n, p):
    return GroupSpec(p, n, tuple(standard_generators(family, n, p)))


x = lambda i, n=2, p=3: Polynomial.var(p, n, i)


def test_act_identity():
    I = MatrixF.identity(3, 5)
    for i in range(3):
        assert act_on_variable(I, i) == x(i, 3, 5)


def test_act_on_variable_uses_inverse_rows():
    g = MatrixF(3, ((1, 1), (0, 1)))
    assert g.inverse == MatrixF(3, ((1, 2), (0, 1)))
    assert act_on_variable(g, 0) == x(0) + 2 * x(1)
    assert act_on_variable(g, 1) == x(1)


def test_act_on_variable_diagonal():
    g = MatrixF(3, ((2, 0), (0, 1)))
    assert act_on_variable(g, 0) == 2 * x(0)


def test_act_on_poly_examples():
    g = MatrixF(3, ((1, 1), (0, 1)))
    f = x(0) ** 2 * x(1) + 2 * x(1) ** 3
    assert act_on_poly(MatrixF.identity(2, 3), f) == f
    assert act_on_poly(g, x(1)) == x(1)


def test_singular_and_mismatched_generators():
    with pytest.raises(SingularMatrix):
        GroupSpec(3, 2, (((1, 1), (1, 1)),))
    with pytest.raises(SingularMatrix):
        MatrixF(3, ((0, 0), (0, 0))).inverse
    with pytest.raises(ValueError):
        GroupSpec(3, 2, (MatrixF.identity(3, 3),))


@pytest.mark.parametrize("gens,expected", [((), 1), ((MatrixF.identity(2, 3),), 1)])
def test_trivial_closure(gens, expected):
    assert closure_order(GroupSpec(3, 2, gens)).order == expected


@pytest.mark.parametrize(
    "family,n,p",
    [("SL", 1, 3), ("SL", 2, 3), ("SL", 2, 5), ("SL", 3, 3), ("GL", 1, 3), ("GL", 1, 5), ("GL", 2, 3), ("GL", 3, 3), ("SL", 2, 7)],
)
def test_standard_generators_generate(family, n, p):
    expected = sl_order(n, p) if family == "SL" else gl_order(n, p)
    assert closure_order(spec(family, n, p)).order == expected


def test_standard_generator_shapes():
    assert standard_generators("SL", 1, 3) == []
    assert standard_generators("GL", 1, 3) == [MatrixF(3, ((2,),))]
    assert len(standard_generators("SL", 2, 3)) == 2
    assert all(g.det() == 1 for n in (2, 3, 4) for g in standard_generators("SL", n, 5))


def test_closure_cap():
    with pytest.raises(CapExceeded):
        closure_order(spec("SL", 3, 3), cap=100)


def test_sl3_f5_closure():
    assert closure_order(spec("SL", 3, 5)).order == 372000 == sl_order(3, 5)


def _block_spec(g1_family, m, g2_gens, n, p=3):
    g1 = standard_generators(g1_family, m, p) if m else []
    return block_group_generators(g1, g2_gens, m, n, p)


def test_block_generator_count():
    G = _block_spec("SL", 1, standard_generators("SL", 3, 3), 4)
    assert len(G.generators) == 0 + 2 + 3


@pytest.mark.parametrize(
    "g1_family,expected",
    [("SL", 151632), ("GL", 303264)],
)
def test_block_order_agrees_with_closure(g1_family, expected):
    G = _block_spec(g1_family, 1, standard_generators("SL", 3, 3), 4)
    formula = block_order(G)
    assert formula.order == expected
    assert formula.detail["g2"] == 5616 and formula.detail["unipotent"] == 27
    assert closure_order(G).order == expected


@pytest.mark.slow
def test_rank5_block_order_by_closure():
    G = catalog_case("EE8^5a").group
    assert block_order(G).order == 1819584
    assert closure_order(G, cap=3_000_000).order == 1819584


def test_degenerate_blocks():
    sl3 = standard_generators("SL", 3, 3)
    G = block_group_generators([], sl3, 0, 3, 3)
    assert list(G.generators) == sl3
    G = block_group_generators(sl3, [], 3, 3, 3)
    assert list(G.generators) == sl3
    assert block_order(G).order == 5616


def test_block_shape_errors():
    with pytest.raises(ValueError):
        block_group_generators(standard_generators("SL", 2, 3), [], 1, 3, 3)


def test_direct_sum():
    gens = direct_sum_generators(standard_generators("SL", 2, 3), 2, standard_generators("GL", 1, 3), 1, 3)
    assert closure_order(GroupSpec(3, 3, tuple(gens))).order == 48


def test_action_law(rng):
    groups = [spec("SL", 2, 3), spec("GL", 1, 3), spec("GL", 2, 3), spec("SL", 2, 5)]
    for trial in range(200):
        G = groups[trial % len(groups)]
        g, h = random_element(G, rng), random_element(G, rng)
        f = random_poly(rng, G.p, G.n, max_degree=5)
        assert act_on_poly(g, act_on_poly(h, f)) == act_on_poly(g @ h, f)
        assert act_on_poly(MatrixF.identity(G.n, G.p), f) == f


def test_action_preserves_degree(rng):
    G = spec("SL", 3, 3)
    for _ in range(50):
        d = rng.randint(0, 6)
        f = Polynomial.zero(3, 3)
        while f.is_zero():
            f = random_poly(rng, 3, 3, max_degree=d, max_terms=4)
            f = Polynomial(3, 3, {e: c for e, c in f.terms.items() if sum(e) == f.degree})
        image = act_on_poly(random_element(G, rng), f)
        assert image.is_homogeneous and image.degree == f.degree


def test_decomposition_law(rng):
    G = catalog_case("EE8^5a").group
    m = G.block.m
    for _ in range(100):
        g = random_element(G, rng, length=30)
        u, d1, d2 = decompose(g, m)
        assert u @ d1 @ d2 == g
        assert all(u[i, i] == 1 for i in range(g.n))
        assert u.block(0, m, 0, m) == MatrixF.identity(m, 3).rows


def test_elements_enumerates_group():
    els = elements(spec("SL", 2, 3).generators, 2, 3)
    assert len(els) == 24
    assert all(e.det() == 1 for e in els)


def test_embed_matrix():
    g = MatrixF(3, ((2,),))
    assert embed_matrix(g, 3, 1).rows == ((1, 0, 0), (0, 2, 0), (0, 0, 1))


def test_groupspec_json_round_trip():
    G = catalog_case("E2E7^4").group
    data = json.loads(json.dumps(G.to_json()))
    back = GroupSpec.from_json(data)
    assert back.generators == G.generators
    assert back.block == G.block
