import random

import pytest

from fermatlat import _intlinalg as la
from fermatlat.errors import ResourceBoundError
from fermatlat.fermat_homology import (
    build_milnor,
    build_primitive,
    connecting_map,
    milnor_basis,
    monomial_pairing,
    monomial_pairing_oracle,
    rank_formula,
    resolution_check,
)
from fermatlat.lattice_core import (
    determinant,
    discriminant,
    is_even,
    lattice_to_json,
    short_vectors,
    signature,
)


def test_rank_formula_values():
    assert [rank_formula(3, n) for n in range(5)] == [2, 2, 6, 10, 22]
    assert rank_formula(5, 2) == 52
    assert rank_formula(4, 1) == 6
    assert rank_formula(3, 0) == 2


def test_milnor_shapes():
    m = build_milnor(3, 1)
    assert m.lattice.rank == 4 and m.lattice.symmetry == "antisymmetric"
    m2 = build_milnor(3, 2)
    assert m2.lattice.rank == 8 and m2.lattice.symmetry == "symmetric"
    assert la.rank_exact(m2.gram) == 6  # radical of rank 2
    m0 = build_milnor(3, 0)
    assert m0.lattice.rank == 2
    assert m0.lattice.gram == [[2, -1], [-1, 2]]


def test_milnor_size_bound():
    with pytest.raises(ResourceBoundError):
        build_milnor(3, 99)


def test_star_parity_identity():
    # star(a, b) = (-1)^n bar(star(b, a)) on monomials
    rng = random.Random(2)
    for n in (1, 2, 3):
        m = build_milnor(3, n)
        for _ in range(10):
            K = rng.choice(m.basis)
            L = rng.choice(m.basis)
            lhs = m.star(K, L)
            rhs = m.star(L, K).bar() * ((-1) ** n)
            assert lhs == rhs


def test_monomial_pairing_examples():
    assert monomial_pairing(3, 4, (0,) * 6, (0,) * 6) == 2
    assert monomial_pairing(3, 3, (0,) * 5, (0,) * 5) == 0
    assert monomial_pairing(3, 4, (0,) * 6, (0, 2, 0, 0, 0, 0)) == -1


def test_monomial_pairing_against_expansion_oracle():
    rng = random.Random(3)
    for _ in range(200):
        d = rng.choice([3, 4, 5])
        n = rng.randrange(0, 4)
        K = tuple(rng.randrange(d) for _ in range(n + 2))
        L = tuple(rng.randrange(d) for _ in range(n + 2))
        assert monomial_pairing(d, n, K, L) == monomial_pairing_oracle(d, n, K, L)


@pytest.mark.parametrize("n,rank", [(0, 2), (1, 2), (2, 6), (3, 10), (4, 22)])
def test_primitive_ranks_d3(n, rank):
    assert build_primitive(3, n).lattice.rank == rank


def test_primitive_rank_d4():
    assert build_primitive(4, 1).lattice.rank == 6
    assert build_primitive(4, 1).lattice.symmetry == "antisymmetric"


def test_cubic_surface_lattice():
    lat = build_primitive(3, 2).lattice
    assert signature(lat) == (0, 6)
    assert is_even(lat)
    assert discriminant(lat).elementary_divisors == (3,)
    assert len(short_vectors(lat, -2)) == 72


def test_odd_n_unimodular():
    for n in (1, 3):
        lat = build_primitive(3, n).lattice
        assert lat.symmetry == "antisymmetric"
        assert abs(determinant(lat)) == 1


def test_fourfold_lattice():
    prim = build_primitive(3, 4)
    assert signature(prim.lattice) == (20, 2)
    assert is_even(prim.lattice)
    assert discriminant(prim.lattice).elementary_divisors == (3,)
    for v in prim.monomial_images.values():
        assert prim.lattice.norm(v) == 2


def test_actions_preserve_gram_and_orders():
    for d, n in [(3, 2), (3, 4), (4, 1)]:
        prim = build_primitive(d, n)
        g = prim.lattice.gram
        ident = la.mat_identity(prim.lattice.rank)
        for name, m in prim.actions.items():
            assert la.mat_mul(la.mat_mul(m, g), la.mat_transpose(m)) == g
            order = d if name.startswith("u_") else 2
            p = ident
            for _ in range(order):
                p = la.mat_mul(p, m)
            assert p == ident
        prod = ident
        for i in range(n + 2):
            prod = la.mat_mul(prod, prim.actions[f"u_{i}"])
        assert prod == ident


def test_class_image_consistency():
    # pairing of class images equals the four-case monomial pairing
    rng = random.Random(4)
    prim = build_primitive(3, 2)
    for _ in range(30):
        K = tuple(rng.randrange(3) for _ in range(4))
        L = tuple(rng.randrange(3) for _ in range(4))
        vk = prim.class_image(K)
        vl = prim.class_image(L)
        assert prim.lattice.pairing(vk, vl) == monomial_pairing(3, 2, K, L)


def test_resolution_reports():
    rep = resolution_check(3, 2)
    assert rep["module_ranks"] == [2, 4, 8, 6]
    assert rep["exact"]
    rep41 = resolution_check(4, 1)
    assert rep41["module_ranks"] == [3, 9, 6]
    rep34 = resolution_check(3, 4)
    assert rep34["module_ranks"] == [2, 4, 8, 16, 32, 22]
    # the integral image sits with index d inside the kernel at odd stages
    assert [s["image_kernel_index"] for s in rep34["stages"]] == [3, 1, 3, 1]


def test_resolution_composites_are_zero():
    for d, n in [(3, 3), (4, 2)]:
        maps = [connecting_map(d, k) for k in range(1, n + 1)]
        for a, b in zip(maps, maps[1:]):
            comp = la.mat_mul(a, b)
            assert not any(x for row in comp for x in row)


def test_build_deterministic_json():
    a = lattice_to_json(build_primitive(3, 3).lattice)
    b = lattice_to_json(build_primitive(3, 3).lattice)
    assert a == b


def test_milnor_basis_order():
    basis = milnor_basis(3, 1)
    assert basis == [(0, 0), (0, 1), (1, 0), (1, 1)]
