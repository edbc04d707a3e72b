import random

import pytest

from groupoidal import catalog
from groupoidal.isomorphisms import bisection_action
from groupoidal.partial_actions import SpaceFunction, induce_algebra_action
from groupoidal.scalars import SpanTracker, zero_vector
from groupoidal.skew_rings import (CovarianceModule, SkewElement, build_ideal,
                                   build_quotient, build_skew_group_ring,
                                   check_pregrading, ideal_generators,
                                   skew_multiply)


def module_for_action(name, ring):
    action = catalog.load_action(name)
    return build_skew_group_ring(induce_algebra_action(action, ring))


def module_for_groupoid(name, ring):
    g = catalog.load_groupoid(name)
    alg = induce_algebra_action(bisection_action(g), ring)
    module = CovarianceModule(alg)
    module.verify_associativity()
    return module


def test_identity_block_multiplies_pointwise(Q):
    module = module_for_action("z2_partial_3pt", Q)
    alg = module.algebra_action
    rng = random.Random(2)
    e = alg.index.identity
    for _ in range(20):
        f = SpaceFunction(Q, {x: Q.random(rng) for x in alg.space})
        g = SpaceFunction(Q, {x: Q.random(rng) for x in alg.space})
        lhs = skew_multiply(SkewElement(alg, {e: f}), SkewElement(alg, {e: g}))
        assert lhs == SkewElement(alg, {e: f * g})


def test_global_swap_delta_g_squares_to_identity_block(Q):
    module = module_for_action("z2_global_swap", Q)
    alg = module.algebra_action
    one_x = SpaceFunction.indicator(Q, alg.space)
    dg = SkewElement(alg, {"g": one_x})
    assert dg * dg == SkewElement(alg, {"e": one_x})


def test_multiplication_by_zero(Q):
    module = module_for_action("z2_global_swap", Q)
    alg = module.algebra_action
    x = SkewElement.basis(alg, "g", "1")
    assert x * SkewElement.zero(alg) == SkewElement.zero(alg)


def test_coefficient_containment_on_basis_pairs(Q):
    # the product coefficient must vanish off X_{st}; the SkewElement
    # constructor raises if it does not, so products proving this exist
    for name in catalog.action_names():
        module = module_for_action(name, Q)
        alg = module.algebra_action
        for s, x in module.basis_labels:
            for t, y in module.basis_labels:
                product = skew_multiply(SkewElement.basis(alg, s, x),
                                        SkewElement.basis(alg, t, y))
                st = alg.index.mul(s, t)
                for u, f in product.terms.items():
                    assert u == st
                    assert f.vanishes_off(alg.domains[st])


def test_mixed_actions_rejected(Q):
    m1 = module_for_action("z2_global_swap", Q)
    m2 = module_for_action("z2_partial_3pt", Q)
    with pytest.raises(ValueError):
        SkewElement.basis(m1.algebra_action, "g", "1") * \
            SkewElement.basis(m2.algebra_action, "g", "1")


def test_skew_group_ring_dimensions(Q):
    assert module_for_action("z2_global_swap", Q).dim == 4
    assert module_for_action("z2_partial_3pt", Q).dim == 5
    assert module_for_action("trivial_3pt", Q).dim == 3


def test_trivial_group_ring_is_commutative(Q):
    module = module_for_action("trivial_3pt", Q)
    for i in range(module.dim):
        for j in range(module.dim):
            assert module.mul_sparse(i, j) == module.mul_sparse(j, i)


@pytest.mark.parametrize("name", catalog.action_names())
def test_associativity_exhaustive_group_case(name, Q):
    module = module_for_action(name, Q)
    assert module.associativity_counterexample is None


@pytest.mark.parametrize("name", ["trivial_groupoid", "two_isolated_units",
                                  "z2_one_unit", "pair_groupoid_2", "two_z2"])
def test_associativity_exhaustive_bisection_case(name, Q):
    module = module_for_groupoid(name, Q)
    assert module.associativity_counterexample is None


def test_group_ideal_is_zero(Q):
    module = module_for_action("z2_partial_3pt", Q)
    assert ideal_generators(module) == []
    ideal = build_ideal(module)
    assert ideal.dimension == 0
    quotient = build_quotient(module, ideal)
    assert quotient.dim == module.dim


def test_two_isolated_units_ideal(Q):
    module = module_for_groupoid("two_isolated_units", Q)
    assert module.dim == 4
    gens = ideal_generators(module)
    # only {u} < {u,v} and {v} < {u,v} contribute: one point each
    assert len(gens) == 2
    ideal = build_ideal(module)
    assert ideal.dimension == 2
    quotient = build_quotient(module, ideal)
    assert quotient.dim == 2


def test_ideal_generators_work_over_non_fields(Z):
    module = module_for_groupoid("two_isolated_units", Z)
    assert len(ideal_generators(module)) == 2
    with pytest.raises(ValueError):
        build_ideal(module)
    with pytest.raises(ValueError):
        build_quotient(module, None)


def test_ideal_dimension_independent_of_schedule(Q):
    module = module_for_groupoid("pair_groupoid_2", Q)
    reference = build_ideal(module).dimension
    gens = ideal_generators(module)
    for seed in (1, 2, 3):
        rng = random.Random(seed)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        tracker = SpanTracker(Q, module.dim)
        pending = [g for g in shuffled if tracker.add(g)]
        rng.shuffle(pending)
        while pending:
            v = pending.pop(rng.randrange(len(pending)))
            for k in range(module.dim):
                for product in (module.basis_mul_vector(k, v),
                                module.vector_mul_basis(v, k)):
                    if tracker.add(product):
                        pending.append(product)
        assert tracker.dimension == reference


def test_ideal_is_two_sided(Q):
    module = module_for_groupoid("two_z2", Q)
    ideal = build_ideal(module)
    for row in ideal.rows:
        for k in range(module.dim):
            assert ideal.contains(module.basis_mul_vector(k, row))
            assert ideal.contains(module.vector_mul_basis(row, k))


def test_order_identified_classes_agree(Q):
    from groupoidal.inverse_semigroups import natural_order
    module = module_for_groupoid("pair_groupoid_2", Q)
    quotient = build_quotient(module, build_ideal(module))
    alg = module.algebra_action
    order = natural_order(alg.index)
    for t in alg.index.elements:
        for s in order.strictly_below(t):
            for x in alg.domain_points(s):
                vs = module.to_vector(SkewElement.basis(alg, s, x))
                vt = module.to_vector(SkewElement.basis(alg, t, x))
                assert quotient.class_of(vs) == quotient.class_of(vt)


def test_quotient_product_well_defined_on_representatives(Q):
    module = module_for_groupoid("z2_one_unit", Q)
    ideal = build_ideal(module)
    quotient = build_quotient(module, ideal)
    assert quotient.representative_independence_verified
    rng = random.Random(23)
    for _ in range(50):
        u = [Q.random(rng) for _ in range(module.dim)]
        v = [Q.random(rng) for _ in range(module.dim)]
        shift = zero_vector(Q, module.dim)
        for row in ideal.rows:
            c = Q.random(rng)
            shift = [a + c * b for a, b in zip(shift, row)]
        u_shifted = [a + b for a, b in zip(u, shift)]
        lhs = quotient.class_of(module.mul_vectors(u, v))
        rhs = quotient.class_of(module.mul_vectors(u_shifted, v))
        assert lhs == rhs


def test_pregrading_group_case_is_honest_grading(Q):
    module = module_for_action("z2_partial_3pt", Q)
    report = check_pregrading(module)
    assert report.ok
    # blocks meet only in zero: distinct delta components never overlap
    seen = {}
    for i, (s, _) in enumerate(module.basis_labels):
        seen.setdefault(s, set()).add(i)
    blocks = list(seen.values())
    for i, b1 in enumerate(blocks):
        for b2 in blocks[i + 1:]:
            assert not (b1 & b2)


def test_pregrading_module_fails_for_strict_order(Q):
    module = module_for_groupoid("two_isolated_units", Q)
    report = check_pregrading(module)
    assert not report.ok  # B_s is not inside B_t before taking the quotient


def test_pregrading_quotient_case(Q):
    module = module_for_groupoid("two_isolated_units", Q)
    quotient = build_quotient(module, build_ideal(module))
    report = check_pregrading(quotient)
    assert report.ok
    # the block of {u} sits inside the block of {u, v} with nonzero overlap
    alg = module.algebra_action
    small = frozenset({"u"})
    big = frozenset({"u", "v"})
    vec_small = quotient.class_of(
        module.to_vector(SkewElement.basis(alg, small, "u")))
    big_tracker = SpanTracker(Q, quotient.dim)
    for x in alg.domain_points(big):
        big_tracker.add(quotient.class_of(
            module.to_vector(SkewElement.basis(alg, big, x))))
    assert big_tracker.contains(vec_small)
    assert any(vec_small)


def test_empty_bisection_block_is_zero(Q):
    module = module_for_groupoid("z2_one_unit", Q)
    assert all(s != frozenset() for s, _ in module.basis_labels)


def test_quotient_dimension_formula(Q):
    for name in ["trivial_groupoid", "two_isolated_units", "z2_one_unit",
                 "pair_groupoid_2", "two_z2", "pair_plus_unit"]:
        module = module_for_groupoid(name, Q)
        ideal = build_ideal(module)
        quotient = build_quotient(module, ideal)
        assert quotient.dim == module.dim - ideal.dimension
