"""Finite posets, monotone maps, and the adjoint calculus between them.

Conventions used throughout the package:

* A poset holds a sorted tuple of string labels plus the full
  reflexive-transitive ``leq`` matrix (numpy bool, frozen).  At the sizes
  this library targets, keeping the closed matrix beats recomputing
  reachability.
* Monotone maps are total index assignments, validated against the cover
  relation of the domain.
* Hom-sets are locally thin: a 2-cell between parallel maps exists exactly
  when the source is pointwise below the target, and carries no data.
  ``TwoCell`` therefore only records its boundary.
* Iteration order is deterministic everywhere: element labels are sorted at
  construction and enumerations are emitted in lexicographic assignment
  order, so repeated runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import config
from .errors import (
    CycleDetected,
    DuplicateLabel,
    InvalidTwoCell,
    NotComposable,
    NotMonotone,
    NotParallel,
    SizeCapExceeded,
    UnknownLabel,
)


def _closure(mat: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated boolean squaring.

    The squaring runs in float64 so the matmul hits BLAS and path
    counts cannot wrap on stages with a few hundred elements."""
    m = mat.astype(bool).copy()
    np.fill_diagonal(m, True)
    while True:
        f = m.astype(np.float64)
        nxt = (f @ f) > 0
        if np.array_equal(nxt, m):
            return nxt
        m = nxt


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset on string labels."""

    def __init__(self, elements: Sequence[str], leq: np.ndarray, validate: bool = True):
        self.elements = tuple(elements)
        mat = np.asarray(leq, dtype=bool).copy()
        mat.setflags(write=False)
        self.leq = mat
        if validate:
            self._validate()

    def validate(self) -> None:
        """Re-check all poset invariants (reflexive, antisymmetric, closed)."""
        self._validate()

    def _validate(self) -> None:
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise DuplicateLabel("duplicate element labels")
        if self.leq.shape != (n, n):
            raise ValueError("leq matrix has wrong shape")
        if n == 0:
            return
        if not self.leq.diagonal().all():
            raise ValueError("leq is not reflexive")
        sym = self.leq & self.leq.T
        if sym.sum() != n:
            raise CycleDetected("leq is not antisymmetric")
        m = self.leq.astype(np.uint8)
        if ((m @ m) > 0).astype(bool).sum() != self.leq.sum() or not (
            ((m @ m) > 0) <= self.leq
        ).all():
            raise ValueError("leq is not transitively closed")

    # -- basic access ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {lbl: i for i, lbl in enumerate(self.elements)}

    def le(self, a: str, b: str) -> bool:
        return bool(self.leq[self.index[a], self.index[b]])

    @cached_property
    def key(self) -> bytes:
        return ("\x00".join(self.elements)).encode() + b"\x01" + np.packbits(self.leq).tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)!r}, {int(self.leq.sum())} pairs)"

    # -- derived structure -----------------------------------------------

    @cached_property
    def up_masks(self) -> list:
        """up_masks[i] = bitmask of {j : i <= j}, as plain ints so the
        bit tricks elsewhere never touch numpy scalars."""
        return [
            sum(1 << int(j) for j in np.flatnonzero(self.leq[i]))
            for i in range(self.n)
        ]

    @cached_property
    def down_masks(self) -> list:
        return [
            sum(1 << int(j) for j in np.flatnonzero(self.leq[:, i]))
            for i in range(self.n)
        ]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def covers(self) -> np.ndarray:
        """covers[i, j] iff j covers i (i < j with nothing strictly between)."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        via = (strict.astype(np.uint8) @ strict.astype(np.uint8)) > 0
        return strict & ~via

    @cached_property
    def cover_pairs(self) -> tuple:
        rows, cols = np.nonzero(self.covers)
        return tuple(zip(rows.tolist(), cols.tolist()))

    @cached_property
    def lower_covers(self) -> list:
        out = [[] for _ in range(self.n)]
        for i, j in self.cover_pairs:
            out[j].append(i)
        return out

    @cached_property
    def cover_forest(self) -> bool:
        """True when the undirected cover graph is acyclic."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.cover_pairs:
            ri, rj = find(i), find(j)
            if ri == rj:
                return False
            parent[ri] = rj
        return True

    @cached_property
    def topo_order(self) -> tuple:
        """A linear extension: ascending by size of the down-set."""
        sizes = [self.down_masks[i].bit_count() for i in range(self.n)]
        return tuple(sorted(range(self.n), key=lambda i: (sizes[i], i)))

    # -- bounds ------------------------------------------------------------

    def least_of(self, mask: int) -> Optional[int]:
        """Least element of the subset given by ``mask``, if any."""
        for i in _bits(mask):
            if mask & ~self.up_masks[i] == 0:
                return i
        return None

    def greatest_of(self, mask: int) -> Optional[int]:
        for i in _bits(mask):
            if mask & ~self.down_masks[i] == 0:
                return i
        return None

    def join_of(self, indices: Iterable[int]) -> Optional[int]:
        """Least upper bound of the given elements; None when it does not exist."""
        upper = self.full_mask
        for i in indices:
            upper &= self.up_masks[i]
        return self.least_of(upper)

    def join_index(self, i: int, j: int) -> Optional[int]:
        return self.join_of((i, j))

    def bottom_index(self) -> Optional[int]:
        return self.least_of(self.full_mask) if self.n else None

    def top_index(self) -> Optional[int]:
        return self.greatest_of(self.full_mask) if self.n else None

    def dual(self) -> "Poset":
        return Poset(self.elements, self.leq.T, validate=False)

    # -- isomorphism -------------------------------------------------------

    @cached_property
    def _refined_signature(self) -> tuple:
        """Per-element signatures stable under isomorphism (iterated degrees)."""
        n = self.n
        sig = [
            (self.down_masks[i].bit_count(), self.up_masks[i].bit_count()) for i in range(n)
        ]
        below = [list(_bits(self.down_masks[i] & ~(1 << i))) for i in range(n)]
        above = [list(_bits(self.up_masks[i] & ~(1 << i))) for i in range(n)]
        while True:
            ordered = sorted(set(sig))
            ids = {s: k for k, s in enumerate(ordered)}
            lab = [ids[s] for s in sig]
            new = [
                (lab[i], tuple(sorted(lab[j] for j in below[i])), tuple(sorted(lab[j] for j in above[i])))
                for i in range(n)
            ]
            if len(set(new)) == len(ordered):
                return tuple(new)
            sig = new

    def canonical_form(self) -> bytes:
        """Canonical encoding: equal for isomorphic posets, distinct otherwise.

        Refines element classes by iterated degree signatures, then searches
        class-respecting orderings for the lexicographically least relation
        encoding.  Intended for small posets (raises above 14 elements).
        """
        n = self.n
        if n > 14:
            raise ValueError("canonical_form supports at most 14 elements")
        if n == 0:
            return b"0"
        sig = self._refined_signature
        ordered = sorted(set(sig))
        ids = {s: k for k, s in enumerate(ordered)}
        cls = [ids[s] for s in sig]
        blocks = [sorted(i for i in range(n) if cls[i] == k) for k in range(len(ordered))]
        leq = self.leq
        best: Optional[tuple] = None

        def rec(placed: list, used: int, enc: tuple):
            nonlocal best
            if best is not None and enc > best[: len(enc)]:
                return
            if len(placed) == n:
                if best is None or enc < best:
                    best = enc
                return
            block = next(b for b in blocks if any(not (used >> i) & 1 for i in b))
            cands = [i for i in block if not (used >> i) & 1]
            steps = []
            for e in cands:
                down = sum(1 << t for t, p in enumerate(placed) if leq[e, p])
                up = sum(1 << t for t, p in enumerate(placed) if leq[p, e])
                steps.append(((down, up), e))
            low = min(s for s, _ in steps)
            for s, e in steps:
                if s == low:
                    rec(placed + [e], used | (1 << e), enc + s)

        rec([], 0, ())
        return (str(n) + "|" + ",".join(map(str, best))).encode()

    def isomorphism_to(self, other: "Poset") -> Optional["MonotoneMap"]:
        """An order isomorphism onto ``other``, or None."""
        if self.n != other.n:
            return None
        if sorted(self._refined_signature) != sorted(other._refined_signature):
            return None
        n = self.n
        mine, theirs = self._refined_signature, other._refined_signature
        cands = [
            [j for j in range(n) if theirs[j] == mine[i]]
            for i in range(n)
        ]
        order = sorted(range(n), key=lambda i: len(cands[i]))
        assign = [-1] * n
        used = [False] * n

        def rec(k: int) -> bool:
            if k == n:
                return True
            i = order[k]
            for j in cands[i]:
                if used[j]:
                    continue
                ok = True
                for i2 in order[:k]:
                    j2 = assign[i2]
                    if self.leq[i, i2] != other.leq[j, j2] or self.leq[i2, i] != other.leq[j2, j]:
                        ok = False
                        break
                if ok:
                    assign[i] = j
                    used[j] = True
                    if rec(k + 1):
                        return True
                    used[j] = False
                    assign[i] = -1
            return False

        if not rec(0):
            return None
        return MonotoneMap(self, other, assign)

    def is_isomorphic(self, other: "Poset") -> bool:
        return self.isomorphism_to(other) is not None


class MonotoneMap:
    """Order-preserving map between posets, stored as an index assignment."""

    __slots__ = ("dom", "cod", "assignment", "_key")

    def __init__(self, dom: Poset, cod: Poset, assignment: Sequence[int], validate: bool = True):
        self.dom = dom
        self.cod = cod
        self.assignment = tuple(int(a) for a in assignment)
        self._key = None
        if validate:
            if len(self.assignment) != dom.n:
                raise ValueError("assignment length mismatch")
            if any(a < 0 or a >= cod.n for a in self.assignment):
                raise ValueError("assignment out of range")
            for i, j in dom.cover_pairs:
                if not cod.leq[self.assignment[i], self.assignment[j]]:
                    raise NotMonotone(
                        f"map is not monotone on {dom.elements[i]} <= {dom.elements[j]}"
                    )

    @staticmethod
    def identity(p: Poset) -> "MonotoneMap":
        return MonotoneMap(p, p, range(p.n), validate=False)

    def apply_idx(self, i: int) -> int:
        return self.assignment[i]

    def __call__(self, label: str) -> str:
        return self.cod.elements[self.assignment[self.dom.index[label]]]

    def then(self, g: "MonotoneMap") -> "MonotoneMap":
        """Composite ``g ∘ self`` (apply self first)."""
        if self.cod.key != g.dom.key:
            raise NotComposable("codomain/domain mismatch")
        return MonotoneMap(
            self.dom, g.cod, tuple(g.assignment[a] for a in self.assignment), validate=False
        )

    def as_dict(self) -> dict:
        return {
            self.dom.elements[i]: self.cod.elements[a] for i, a in enumerate(self.assignment)
        }

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.dom.key, self.cod.key, self.assignment)
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, MonotoneMap) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"MonotoneMap({self.as_dict()!r})"

    def is_identity(self) -> bool:
        return self.dom.key == self.cod.key and self.assignment == tuple(range(self.dom.n))

    def is_order_iso(self) -> bool:
        """Bijective and order-reflecting (hence an isomorphism of posets)."""
        if self.dom.n != self.cod.n or len(set(self.assignment)) != self.dom.n:
            return False
        a = list(self.assignment)
        return bool(np.array_equal(self.dom.leq, self.cod.leq[np.ix_(a, a)]))

    def pointwise_leq(self, other: "MonotoneMap") -> bool:
        if self.dom.key != other.dom.key or self.cod.key != other.cod.key:
            raise NotParallel("maps are not parallel")
        return all(
            self.cod.leq[a, b] for a, b in zip(self.assignment, other.assignment)
        )


@dataclass(frozen=True)
class TwoCell:
    """A 2-cell src => tgt between parallel maps.  Thinness: no data beyond
    the boundary, and construction fails when the inequality does not hold."""

    src: MonotoneMap
    tgt: MonotoneMap

    def __post_init__(self):
        if self.src.dom.key != self.tgt.dom.key or self.src.cod.key != self.tgt.cod.key:
            raise NotParallel("two-cell endpoints are not parallel")
        if not self.src.pointwise_leq(self.tgt):
            raise InvalidTwoCell("source is not pointwise below target")

    def is_identity(self) -> bool:
        return self.src == self.tgt


def two_cell_exists(f: MonotoneMap, g: MonotoneMap) -> bool:
    try:
        return f.pointwise_leq(g)
    except NotParallel:
        return False


# -- construction ----------------------------------------------------------


def build_poset(labels: Iterable[str], pairs: Iterable) -> Poset:
    """Poset from labels and generating inequalities (closure is implied).

    Raises DuplicateLabel, UnknownLabel, or CycleDetected when the input is
    not a presentation of a poset.
    """
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("duplicate labels in poset description")
    elements = tuple(sorted(labels))
    index = {lbl: i for i, lbl in enumerate(elements)}
    n = len(elements)
    mat = np.eye(n, dtype=bool)
    for a, b in pairs:
        if a not in index or b not in index:
            raise UnknownLabel(f"unknown label in pair ({a!r}, {b!r})")
        mat[index[a], index[b]] = True
    closed = _closure(mat) if n else mat
    sym = closed & closed.T
    if n and sym.sum() != n:
        i, j = map(int, np.argwhere(sym & ~np.eye(n, dtype=bool))[0])
        raise CycleDetected(
            f"labels {elements[i]!r} and {elements[j]!r} are forced equal"
        )
    return Poset(elements, closed, validate=False)


def preorder_collapse(labels: Iterable[str], pairs: Iterable) -> tuple:
    """Close the stated inequalities and collapse symmetric pairs.

    Returns ``(poset, assignment)`` where ``assignment`` maps each input
    label to the label of its class (named after the least member).
    """
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("duplicate labels in preorder description")
    ordered = sorted(labels)
    index = {lbl: i for i, lbl in enumerate(ordered)}
    n = len(ordered)
    mat = np.eye(n, dtype=bool)
    for a, b in pairs:
        if a not in index or b not in index:
            raise UnknownLabel(f"unknown label in pair ({a!r}, {b!r})")
        mat[index[a], index[b]] = True
    closed = _closure(mat) if n else mat
    sym = closed & closed.T
    comp = [-1] * n
    classes = []
    for i in range(n):
        if comp[i] < 0:
            members = [int(j) for j in np.flatnonzero(sym[i])]
            for j in members:
                comp[j] = len(classes)
            classes.append(members)
    class_labels = [min(ordered[j] for j in cls) for cls in classes]
    order = sorted(range(len(classes)), key=lambda c: class_labels[c])
    rank = {c: k for k, c in enumerate(order)}
    q = len(classes)
    qmat = np.zeros((q, q), dtype=bool)
    for c, members in enumerate(classes):
        for d, others in enumerate(classes):
            qmat[rank[c], rank[d]] = bool(closed[members[0], others[0]])
    poset = Poset([class_labels[c] for c in order], qmat, validate=False)
    assignment = {ordered[i]: class_labels[comp[i]] for i in range(n)}
    return poset, assignment


# -- enumeration -----------------------------------------------------------


def _lower_masks(a: Poset, x: Poset, lower: Optional[Mapping[int, Iterable[int]]]) -> list:
    full = x.full_mask
    masks = [full] * a.n
    if lower:
        for i, vals in lower.items():
            m = full
            for v in vals:
                m &= x.up_masks[v]
            masks[i] = m
    return masks


def iter_monotone_assignments(
    a: Poset,
    x: Poset,
    lower: Optional[Mapping[int, Iterable[int]]] = None,
    cap: Optional[int] = None,
):
    """Yield assignment tuples of monotone maps a -> x, optionally bounded
    below pointwise (``lower[i]`` lists elements of x that must lie below the
    image of i).  Backtracks over a linear extension with bitmask pruning;
    raises SizeCapExceeded when the visited-node budget is exhausted."""
    if cap is None:
        cap = config.size_cap()
    n = a.n
    if n == 0:
        yield ()
        return
    if x.n == 0:
        return
    base = _lower_masks(a, x, lower)
    order = a.topo_order
    lower_cov = a.lower_covers
    assign = [0] * n
    visited = 0

    def rec(k: int):
        nonlocal visited
        if k == n:
            yield tuple(assign)
            return
        e = order[k]
        mask = base[e]
        for c in lower_cov[e]:
            mask &= x.up_masks[assign[c]]
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            mask ^= low
            visited += 1
            if visited > cap:
                raise SizeCapExceeded(
                    f"monotone map search exceeded cap of {cap} nodes"
                )
            assign[e] = v
            yield from rec(k + 1)

    yield from rec(0)


def enumerate_monotone(
    a: Poset,
    x: Poset,
    lower: Optional[Mapping[int, Iterable[int]]] = None,
    cap: Optional[int] = None,
) -> list:
    """All monotone maps a -> x, each exactly once, in lexicographic
    assignment order."""
    out = sorted(iter_monotone_assignments(a, x, lower=lower, cap=cap))
    return [MonotoneMap(a, x, t, validate=False) for t in out]


def monotone_value_sets(
    a: Poset,
    x: Poset,
    lower: Optional[Mapping[int, Iterable[int]]] = None,
) -> Optional[list]:
    """For each element of ``a``, the bitmask of values that some monotone
    map a -> x (respecting ``lower``) takes there; None when no map exists.

    Arc consistency over the cover constraints, which is exact when the
    cover graph is a forest; otherwise each surviving value is certified by
    an explicit extension search.
    """
    n = a.n
    if n == 0:
        return []
    if x.n == 0:
        return None
    cand = _lower_masks(a, x, lower)

    def up_union(mask: int) -> int:
        out = 0
        for v in _bits(mask):
            out |= x.up_masks[v]
        return out

    def down_union(mask: int) -> int:
        out = 0
        for v in _bits(mask):
            out |= x.down_masks[v]
        return out

    pairs = a.cover_pairs
    changed = True
    while changed:
        changed = False
        for i, j in pairs:
            new_j = cand[j] & up_union(cand[i])
            new_i = cand[i] & down_union(cand[j])
            if new_j != cand[j]:
                cand[j] = new_j
                changed = True
            if new_i != cand[i]:
                cand[i] = new_i
                changed = True
        if any(c == 0 for c in cand):
            return None
    if a.cover_forest:
        return cand

    order = a.topo_order
    lower_cov = a.lower_covers

    def extendable(i: int, v: int) -> bool:
        assign = [-1] * n

        def rec(k: int) -> bool:
            if k == n:
                return True
            e = order[k]
            mask = cand[e]
            if e == i:
                mask &= 1 << v
            else:
                if a.leq[e, i]:
                    mask &= x.down_masks[v]
                if a.leq[i, e]:
                    mask &= x.up_masks[v]
            for c in lower_cov[e]:
                mask &= x.up_masks[assign[c]]
            for w in _bits(mask):
                assign[e] = w
                if rec(k + 1):
                    return True
            assign[e] = -1
            return False

        return rec(0)

    exact = []
    for i in range(n):
        m = 0
        for v in _bits(cand[i]):
            if extendable(i, v):
                m |= 1 << v
        if m == 0:
            return None
        exact.append(m)
    return exact


# -- adjoints ----------------------------------------------------------------


def right_adjoint(m: MonotoneMap) -> Optional[MonotoneMap]:
    """The right adjoint of ``m`` (so m ⊣ result), or None.

    Pointwise: result(b) is the greatest a with m(a) <= b; existence for
    every b plus the two adjunction inequalities are verified in full.
    """
    a, b = m.dom, m.cod
    assign = []
    for j in range(b.n):
        mask = 0
        for i in range(a.n):
            if b.leq[m.assignment[i], j]:
                mask |= 1 << i
        g = a.greatest_of(mask) if mask else None
        if g is None:
            return None
        assign.append(g)
    try:
        r = MonotoneMap(b, a, assign)
    except NotMonotone:
        return None
    for i in range(a.n):
        for j in range(b.n):
            if bool(b.leq[m.assignment[i], j]) != bool(a.leq[i, assign[j]]):
                return None
    return r


def left_adjoint(m: MonotoneMap) -> Optional[MonotoneMap]:
    """The left adjoint of ``m`` (so result ⊣ m), or None."""
    a, b = m.dom, m.cod
    assign = []
    for j in range(b.n):
        mask = 0
        for i in range(a.n):
            if b.leq[j, m.assignment[i]]:
                mask |= 1 << i
        l = a.least_of(mask) if mask else None
        if l is None:
            return None
        assign.append(l)
    try:
        lmap = MonotoneMap(b, a, assign)
    except NotMonotone:
        return None
    for i in range(a.n):
        for j in range(b.n):
            if bool(a.leq[assign[j], i]) != bool(b.leq[j, m.assignment[i]]):
                return None
    return lmap


@dataclass(frozen=True)
class AdjointFlags:
    """Classification of a map by adjoints with identity (co)unit.

    lari: has a right adjoint r with r∘m = id (left adjoint right inverse).
    rali: has a left adjoint t with m∘t = id (right adjoint left inverse).
    lali: is a left adjoint and m∘r = id on the codomain side.
    rari: is a right adjoint and t∘m = id on the domain side.
    """

    is_lari: bool
    is_rali: bool
    is_lali: bool
    is_rari: bool


def classify_adjoint(m: MonotoneMap) -> AdjointFlags:
    r = right_adjoint(m)
    t = left_adjoint(m)
    ida = MonotoneMap.identity(m.dom)
    idb = MonotoneMap.identity(m.cod)
    is_lari = r is not None and m.then(r) == ida
    is_lali = r is not None and r.then(m) == idb
    is_rali = t is not None and t.then(m) == idb
    is_rari = t is not None and m.then(t) == ida
    return AdjointFlags(is_lari=is_lari, is_rali=is_rali, is_lali=is_lali, is_rari=is_rari)
