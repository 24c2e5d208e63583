"""Walk the reflection chain on a few small posets and print what
comes out.

Run with:  python3 demos/free_completions.py
"""

from kaninj import (
    antichain,
    chain,
    class_bottom,
    class_bottom_join,
    class_join,
    is_injective,
    poset_to_dot,
    reflect,
    vee,
)


def show(name, x, klass):
    r = reflect(x, klass)
    sizes = [s.n for s in r.trace.stages]
    print(f"{name}: {x.n} elements, class {klass.name}")
    print(f"  stage sizes {sizes}, converged={r.converged} after {r.stages_used} steps")
    print(f"  reflected elements: {list(r.reflected.elements)}")
    print(f"  unit sends {r.unit.as_dict()}")
    print(f"  strong afterwards: {is_injective(r.reflected, klass).strong}")
    print()
    return r


def main():
    # adjoining a bottom to the 2-chain gives the 3-chain
    show("2-chain, bottoms", chain(2), class_bottom())

    # adjoining binary joins to a 2-element antichain gives the V
    show("antichain, joins", antichain(2), class_join())

    # both at once gives the diamond
    show("antichain, bottom and joins", antichain(2), class_bottom_join())

    # an object that is already a join semilattice still moves: the
    # reflection adds a formal join below the existing top, because the
    # subcategory is not full and the new element is free
    r = show("V, joins (already strong)", vee(), class_join())
    print("Hasse diagram of that last one:")
    print(poset_to_dot(r.reflected, name="free_on_V"))

    # free join semilattice on three generators: nonempty subsets
    r = reflect(antichain(3), class_join())
    print(f"free join semilattice on 3 generators has {r.reflected.n} elements")
    r = reflect(antichain(3), class_bottom_join())
    print(f"with a bottom as well it has {r.reflected.n} elements")


if __name__ == "__main__":
    main()
