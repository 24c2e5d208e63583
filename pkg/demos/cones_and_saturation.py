"""Weak injectivity as strong injectivity in disguise, and what else a
class drags along with it.

Run with:  python3 demos/cones_and_saturation.py
"""

from kaninj import (
    MonotoneMap,
    SaturationWitness,
    all_posets,
    chain,
    class_join,
    closure_check,
    cone_class,
    is_injective,
    is_weakly_injective,
    mapping_cone,
    point,
    sat_lari,
    sat_pushout,
    witness_menu,
)


def main():
    klass = class_join()
    h = klass.maps[0]
    c, i, j, rho = mapping_cone(h)
    print(f"cone over {h.as_dict()} has elements {list(c.elements)}")
    print(f"domain leg i = {i.as_dict()}")
    print()

    # weak injectivity along h agrees with strong injectivity along i
    # on every small poset
    cones = cone_class(klass)
    agree = 0
    for x in all_posets(4):
        w = is_weakly_injective(x, klass).weak
        s = is_injective(x, cones).strong
        assert w == s, x.elements
        agree += 1
    print(f"weak(h) == strong(cone leg) on all {agree} posets up to 4 elements")
    print()

    # the saturation: maps every strong object is automatically strong
    # against.  The menu derives a batch and closure_check probes them.
    sample = all_posets(3)
    for w in witness_menu(klass):
        ok = closure_check(w, klass, sample)
        print(f"  {w.recipe:<18} {w.produced.as_dict()}  ok={ok}")
    print()

    # build one by hand: push the class map out along a leg swap, then
    # check the result the same way
    f = MonotoneMap(h.dom, h.dom, [1, 0])
    pushed = sat_pushout(h, f)
    print(f"pushout witness {pushed.produced.as_dict()}: "
          f"{closure_check(pushed, klass, sample)}")

    # a map that is not in the saturation fails loudly
    fake = SaturationWitness(MonotoneMap(chain(2), point(), [0, 0]), "assumed")
    print(f"collapse passes closure_check: {closure_check(fake, klass, sample)}")

    # laris are always saturated; the bottom inclusion is one
    w = sat_lari(MonotoneMap(point(), chain(2), [0]))
    print(f"lari witness {w.produced.as_dict()}: {closure_check(w, klass, sample)}")


if __name__ == "__main__":
    main()
