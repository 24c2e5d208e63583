import dataclasses

import pytest

from kaninj import (
    MonotoneMap,
    antichain,
    chain,
    diamond,
    empty,
    enumerate_monotone,
    point,
    two_cell_exists,
    vee,
)
from kaninj.colimits import (
    chain_colimit,
    cocomma,
    coequifier,
    coequinserter,
    coinserter,
    coproduct,
    glue,
    pushout,
    record_colimits,
    verify_universal,
    wide_pushout,
)
from kaninj.errors import NotParallel
from kaninj.poset import TwoCell

from oracles import brute_monotone


def brute_unique_mediator(res, targets):
    """Re-verify the universal property from scratch.

    A cocone is a choice of monotone map per piece that respects every
    generating pair; each must factor through the computed object by
    exactly one monotone map.
    """
    pieces = [inj.dom for inj in res.injections]
    offsets = res.piece_offsets
    for t in targets:
        piece_maps = [brute_monotone(p, t) for p in pieces]
        import itertools

        for combo in itertools.product(*piece_maps):
            slots = [None] * len(res.gen_labels)
            for pi, m in enumerate(combo):
                for k, v in enumerate(m):
                    slots[offsets[pi] + k] = v
            if any(slots[i] is None for i in range(len(slots))):
                return False
            if not all(t.leq[slots[i], slots[j]] for i, j in res.gen_pairs):
                continue
            mediators = [
                u
                for u in brute_monotone(res.object, t)
                if all(
                    u[res.injections[pi].assignment[k]] == combo[pi][k]
                    for pi in range(len(pieces))
                    for k in range(pieces[pi].n)
                )
            ]
            if len(mediators) != 1:
                return False
    return True


def test_coproduct_universal_brute():
    res = coproduct([chain(2), antichain(2)])
    assert res.object.n == 4
    assert brute_unique_mediator(res, [chain(2), vee(), antichain(2)])


def test_coproduct_empty_family():
    res = coproduct([])
    assert res.object.n == 0


def test_pushout_universal_brute():
    f = MonotoneMap(antichain(2), vee(), [0, 1])
    h = MonotoneMap(antichain(2), chain(2), [0, 1])
    res = pushout(f, h)
    assert brute_unique_mediator(res, [chain(3), diamond()])
    # legs agree on the shared span
    assert f.then(res.injections[0]) == h.then(res.injections[1])


def test_wide_pushout_three_legs():
    legs = [MonotoneMap(point(), chain(2), [0]) for _ in range(3)]
    res = wide_pushout(point(), legs)
    # three chains glued at the bottom point
    assert res.object.n == 4
    assert brute_unique_mediator(res, [vee(), chain(2)])


def test_cocomma_of_identity_is_cylinder():
    h = MonotoneMap(antichain(2), vee(), [0, 1])
    res = cocomma(MonotoneMap.identity(antichain(2)), h)
    i, j = res.injections
    assert res.object.n == antichain(2).n + vee().n
    assert res.two_cell is not None
    assert two_cell_exists(i, h.then(j))


def test_coinserter_forces_inequality():
    f = MonotoneMap(point(), antichain(2), [0])
    g = MonotoneMap(point(), antichain(2), [1])
    res = coinserter(f, g)
    q = res.injections[0]
    assert two_cell_exists(f.then(q), g.then(q))
    assert brute_unique_mediator(res, [chain(2), vee()])


def test_coinserter_requires_parallel_pair():
    f = MonotoneMap(point(), antichain(2), [0])
    g = MonotoneMap(point(), chain(2), [0])
    with pytest.raises(NotParallel):
        coinserter(f, g)


def test_coequifier_is_identity_quotient():
    # posets are locally thin, so coequifiers never merge anything
    f = MonotoneMap(point(), chain(2), [0])
    g = MonotoneMap(point(), chain(2), [1])
    sigma = TwoCell(f, g)
    tau = TwoCell(f, g)
    res = coequifier(sigma, tau)
    assert res.object.n == chain(2).n
    assert res.injections[0].is_order_iso()


def test_coequinserter_equals_coinserter():
    # comparable pair: the mediating cell lives over the identity
    f = MonotoneMap(point(), chain(2), [0])
    g = MonotoneMap(point(), chain(2), [1])
    h = MonotoneMap.identity(point())
    gamma = TwoCell(h.then(f), h.then(g))
    a = coinserter(f, g)
    b = coequinserter(h, f, g, gamma)
    assert a.object.key == b.object.key
    assert sorted(a.gen_pairs) == sorted(b.gen_pairs)
    # incomparable pair: restrict along the empty shape instead
    f2 = MonotoneMap(point(), antichain(2), [0])
    g2 = MonotoneMap(point(), antichain(2), [1])
    h2 = MonotoneMap(empty(), point(), [])
    gamma2 = TwoCell(h2.then(f2), h2.then(g2))
    a2 = coinserter(f2, g2)
    b2 = coequinserter(h2, f2, g2, gamma2)
    assert a2.object.key == b2.object.key
    assert [tuple(m.assignment) for m in a2.injections] == [
        tuple(m.assignment) for m in b2.injections
    ]


def test_coequinserter_validates_gamma():
    f = MonotoneMap(point(), antichain(2), [0])
    g = MonotoneMap(point(), antichain(2), [1])
    h = MonotoneMap.identity(point())
    bad = TwoCell(
        MonotoneMap(point(), antichain(2), [0]),
        MonotoneMap(point(), antichain(2), [0]),
    )
    with pytest.raises(Exception):
        coequinserter(h, f, g, bad)


def test_chain_colimit_of_inclusions():
    stages = [chain(1), chain(2), chain(3)]
    conns = [
        MonotoneMap(chain(1), chain(2), [0]),
        MonotoneMap(chain(2), chain(3), [0, 1]),
    ]
    res = chain_colimit(stages, conns)
    assert res.object.n == 3
    # every stage element survives into the colimit coherently
    for k in range(2):
        assert conns[k].then(res.injections[k + 1]) == res.injections[k]


def test_chain_colimit_validates_shapes():
    with pytest.raises(Exception):
        chain_colimit([chain(1), chain(2)], [])


def test_verify_universal_healthy_and_mutated():
    f = MonotoneMap(antichain(2), vee(), [0, 1])
    h = MonotoneMap(antichain(2), chain(2), [0, 1])
    res = pushout(f, h)
    rep = verify_universal(res)
    assert rep.ok and rep.complete
    broken = dataclasses.replace(res, gen_pairs=res.gen_pairs[:-1])
    rep2 = verify_universal(broken)
    assert not rep2.ok


def test_glue_single_piece_keeps_labels():
    res = glue("quotient", [("q", vee())], ineq_pairs=[((0, 2), (0, 0))])
    # top <= a collapses the poset to a and b with a,b joined... check labels
    assert set(res.object.elements) <= {"a", "b", "top"}
    # merged class takes the smallest label
    assert "a" in res.object.elements


def test_glue_multi_piece_label_scheme():
    res = glue("sum", [("l", point("x")), ("r", point("x"))])
    assert sorted(res.object.elements) == ["l:x", "r:x"]


def test_record_colimits_captures():
    with record_colimits() as log:
        coproduct([point(), point("y")])
        pushout(
            MonotoneMap(antichain(2), vee(), [0, 1]),
            MonotoneMap(antichain(2), chain(2), [0, 1]),
        )
    kinds = [r.kind for r in log]
    assert "coproduct" in kinds and "pushout" in kinds
