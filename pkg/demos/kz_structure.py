"""The lax-idempotent structure of the reflection, checked live.

The reflection pseudomonad is KZ: its unit is dense, restriction along
the unit undoes extension, and being strong is the same as the unit
splitting off with an adjoint retraction.

Run with:  python3 demos/kz_structure.py
"""

from kaninj import (
    MonotoneMap,
    antichain,
    chain,
    class_join,
    extend_along_unit,
    is_dense,
    kz_laws,
    left_kan,
    reflect,
    vee,
)


def main():
    klass = class_join()
    x = antichain(2)
    r = reflect(x, klass)
    print(f"unit of antichain-2 reflection is dense: {is_dense(r.unit)}")

    # extending along the unit and restricting back is the identity
    p = MonotoneMap(x, vee(), [0, 1])
    ext = extend_along_unit(p, r, klass)
    print(f"p           = {p.as_dict()}")
    print(f"extension   = {ext.as_dict()}")
    print(f"restricts back to p: {r.unit.then(ext) == p}")

    # the extension is least among all extensions, not just one of them
    others = [
        g
        for g in _all_maps(r.reflected, vee())
        if r.unit.then(g) == p
    ]
    least = all(
        all(vee().leq[ext.assignment[i], g.assignment[i]] for i in range(r.reflected.n))
        for g in others
    )
    print(f"least among {len(others)} strict extensions: {least}")
    print()

    # the full law bundle, one strong object and one that is not
    for x in (chain(3), antichain(2)):
        rep = kz_laws(x, klass)
        print(f"kz_laws on {list(x.elements)}:")
        print(f"  unit dense          {rep.unit_dense}")
        print(f"  restriction identity {rep.restriction_identity}")
        print(f"  strong <=> lali unit {rep.algebra_equivalence}")
        print(f"  (object is strong:   {rep.algebra_strong})")
        print()

    # density means the left Kan extension of the unit along itself is
    # the identity; spell that out once
    k = left_kan(r.unit, r.unit)
    print(f"unit/unit = identity: {k.extension == MonotoneMap.identity(r.reflected)}")


def _all_maps(dom, cod):
    from kaninj import enumerate_monotone

    return enumerate_monotone(dom, cod)


if __name__ == "__main__":
    main()
