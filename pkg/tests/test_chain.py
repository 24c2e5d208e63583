import itertools

import pytest

from kaninj import (
    MonotoneMap,
    antichain,
    build_poset,
    chain,
    class_bottom,
    class_bottom_join,
    class_join,
    enumerate_monotone,
    extend_along_unit,
    init_chain,
    is_dense,
    is_injective,
    kz_laws,
    reflect,
    step_even,
    step_odd,
    strong_objects,
    vee,
)

from oracles import brute_iso, oracle_least_strict


def dsb():
    """Diamond without its bottom: a, b < t < top."""
    return build_poset(["a", "b", "t", "top"], [("a", "t"), ("b", "t"), ("t", "top")])


def test_golden_bottom_completion():
    r = reflect(chain(2), class_bottom())
    assert r.converged
    assert brute_iso(r.reflected, chain(3))
    # the unit lands above the adjoined bottom
    assert is_dense(r.unit)


def test_golden_join_completion():
    r = reflect(antichain(2), class_join())
    assert r.converged
    assert brute_iso(r.reflected, vee())


def test_golden_bottom_join_completion():
    r = reflect(antichain(2), class_bottom_join())
    assert r.converged
    assert brute_iso(r.reflected, build_poset(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    ))


def test_algebra_reflects_to_free_algebra():
    # V is already strong for joins, yet the reflection freely adds a
    # join below the existing top; the unit is not an isomorphism
    r = reflect(vee(), class_join())
    assert r.converged
    assert brute_iso(r.reflected, dsb())
    assert not r.unit.is_order_iso()


def test_fixed_point_converges_immediately():
    r = reflect(chain(3), class_join())
    assert r.converged and r.stages_used == 0
    assert r.unit.is_order_iso()


def test_free_join_semilattice_on_three():
    # nonempty subsets of a 3-element set under union
    r = reflect(antichain(3), class_join())
    assert r.converged and r.reflected.n == 7
    labels = ["".join(s) for k in range(1, 4) for s in itertools.combinations("abc", k)]
    rels = []
    for s in labels:
        for t in labels:
            if set(s) <= set(t) and s != t:
                rels.append((s, t))
    assert brute_iso(r.reflected, build_poset(labels, rels))


def test_free_powerset_on_three():
    r = reflect(antichain(3), class_bottom_join())
    assert r.converged and r.reflected.n == 8


def test_non_convergence_returns_prefix():
    r = reflect(antichain(2), class_join(), max_steps=2)
    assert not r.converged
    assert r.omega is not None
    assert r.omega.kind == "chain"
    assert r.reflected.n == r.omega.object.n


def test_step_parity_guards():
    st = init_chain(antichain(2))
    with pytest.raises(ValueError):
        step_even(st, class_join())
    st1 = step_odd(st, class_join())
    with pytest.raises(ValueError):
        step_odd(st1, class_join())


def test_no_spans_gives_identity_stage():
    st = init_chain(chain(2))
    st1 = step_odd(st, class_bottom())
    st2 = step_even(st1, class_bottom())
    st3 = step_odd(st2, class_bottom())
    # the bottom witness was minted once; nothing new afterwards
    assert st3.stages[3].n == st3.stages[2].n
    assert st3.connectors[2].is_order_iso()


def test_extend_along_unit_matches_oracle_slice():
    klass = class_join()
    x = antichain(2)
    res = reflect(x, klass)
    for p_target in strong_objects(4, klass):
        for p in enumerate_monotone(x, p_target):
            pins = {
                res.unit.assignment[i]: p.assignment[i] for i in range(x.n)
            }
            want = oracle_least_strict(res.reflected, p_target, pins)
            got = extend_along_unit(p, res, klass)
            assert want is not None
            assert tuple(got.assignment) == want
            # strictness: the extension restricts back to p on the nose
            assert res.unit.then(got) == p


def test_kz_laws_on_goldens():
    for x, klass in [
        (chain(2), class_bottom()),
        (antichain(2), class_join()),
        (antichain(2), class_bottom_join()),
        (vee(), class_join()),
        (chain(3), class_join()),
    ]:
        rep = kz_laws(x, klass)
        assert rep.unit_dense
        assert rep.restriction_identity
        assert rep.algebra_equivalence
        assert rep.ok


def test_kz_algebra_strong_field_tracks_strength():
    assert kz_laws(vee(), class_join()).algebra_strong
    assert not kz_laws(antichain(2), class_join()).algebra_strong


def test_kz_free_algebra_law_skipped_when_large():
    rep = kz_laws(antichain(3), class_join(), free_cap=0)
    assert rep.free_algebra is None
    assert rep.ok


def test_reflection_result_is_strong_and_dense():
    for klass in [class_bottom(), class_join(), class_bottom_join()]:
        r = reflect(antichain(2), klass)
        assert is_injective(r.reflected, klass).strong
        assert is_dense(r.unit)


def test_registry_dedup_regression():
    # the same span must not be minted twice across stages; if it were,
    # stage sizes would grow between rounds instead of stabilizing
    r = reflect(antichain(3), class_join())
    even = [s.n for s in r.trace.stages[::2]]
    assert even[-1] == even[-2] == 7
