"""Monotone, sup-preserving and inf-preserving maps between finite lattices.

Maps are stored as value tables indexed by source element.  The heavy
routines also come in batched table form (one numpy row per map) so the
exhaustive verifier can process whole homsets at once.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from supq.lattice import Lattice


class MapError(ValueError):
    """A map violates a precondition (mismatched lattices, wrong shape...)."""


class LatticeMap:
    """A function between two finite lattices, given by its value table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: Lattice, target: Lattice, table):
        table = tuple(int(t) for t in table)
        if len(table) != source.n:
            raise MapError(f"table has {len(table)} entries for a {source.n}-element source")
        if any(t < 0 or t >= target.n for t in table):
            raise MapError("table value out of range")
        self.source = source
        self.target = target
        self.table = table

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatticeMap)
            and self.table == other.table
            and self.source.same_structure(other.source)
            and self.target.same_structure(other.target)
        )

    def __hash__(self) -> int:
        return hash((self.source.hash_id, self.target.hash_id, self.table))

    def __repr__(self) -> str:
        return f"LatticeMap{self.table}"

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int16)

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self after other."""
        if not other.target.same_structure(self.source):
            raise MapError("composition needs matching middle lattice")
        return LatticeMap(other.source, self.target, tuple(self.table[t] for t in other.table))

    def leq(self, other: "LatticeMap") -> bool:
        """Pointwise order in the target lattice."""
        if not _same_homset(self, other):
            raise MapError("maps live in different homsets")
        t = self.target.leq
        return all(t[a, b] for a, b in zip(self.table, other.table))


def _same_homset(f: LatticeMap, g: LatticeMap) -> bool:
    return f.source.same_structure(g.source) and f.target.same_structure(g.target)


def monotone_witness(f: LatticeMap):
    """A pair (x, y) with x <= y but f(x) not<= f(y), or None."""
    s, t = f.source.leq, f.target.leq
    for x in range(f.source.n):
        for y in range(f.source.n):
            if s[x, y] and not t[f.table[x], f.table[y]]:
                return (x, y)
    return None


def sup_witness(f: LatticeMap):
    """Why f fails to preserve finite joins: 'bottom' or a pair (x, y)."""
    if f.table[f.source.bottom] != f.target.bottom:
        return "bottom"
    sj, tj = f.source.join, f.target.join
    for x in range(f.source.n):
        for y in range(x + 1, f.source.n):
            if f.table[sj[x, y]] != tj[f.table[x], f.table[y]]:
                return (x, y)
    return None


def inf_witness(f: LatticeMap):
    if f.table[f.source.top] != f.target.top:
        return "top"
    sm, tm = f.source.meet, f.target.meet
    for x in range(f.source.n):
        for y in range(x + 1, f.source.n):
            if f.table[sm[x, y]] != tm[f.table[x], f.table[y]]:
                return (x, y)
    return None


def is_monotone(f: LatticeMap) -> bool:
    return monotone_witness(f) is None


def is_sup_preserving(f: LatticeMap) -> bool:
    return sup_witness(f) is None


def is_inf_preserving(f: LatticeMap) -> bool:
    return inf_witness(f) is None


def monotone_map(source: Lattice, target: Lattice, table) -> LatticeMap:
    f = LatticeMap(source, target, table)
    w = monotone_witness(f)
    if w is not None:
        raise MapError(f"map is not monotone at pair {w}")
    return f


def sup_map(source: Lattice, target: Lattice, table) -> LatticeMap:
    f = LatticeMap(source, target, table)
    w = sup_witness(f)
    if w is not None:
        raise MapError(f"map does not preserve joins, witness {w}")
    return f


def inf_map(source: Lattice, target: Lattice, table) -> LatticeMap:
    f = LatticeMap(source, target, table)
    w = inf_witness(f)
    if w is not None:
        raise MapError(f"map does not preserve meets, witness {w}")
    return f


def identity_map(L: Lattice) -> LatticeMap:
    return LatticeMap(L, L, range(L.n))


def bottom_map(source: Lattice, target: Lattice) -> LatticeMap:
    return LatticeMap(source, target, [target.bottom] * source.n)


def top_q_map(source: Lattice, target: Lattice) -> LatticeMap:
    """Greatest sup-preserving map: bottom to bottom, everything else to top."""
    return LatticeMap(
        source, target,
        [target.bottom if x == source.bottom else target.top for x in range(source.n)],
    )


# -- generator maps ----------------------------------------------------------


def c_map(source: Lattice, target: Lattice, y: int) -> LatticeMap:
    """Sends bottom to bottom and every other element to y."""
    return LatticeMap(
        source, target,
        [target.bottom if x == source.bottom else y for x in range(source.n)],
    )


def a_map(source: Lattice, target: Lattice, x: int) -> LatticeMap:
    """Sends t to top when t not<= x, else to bottom."""
    leq = source.leq
    return LatticeMap(
        source, target,
        [target.bottom if leq[t, x] else target.top for t in range(source.n)],
    )


def tensor_over(source: Lattice, target: Lattice, y: int, x: int) -> LatticeMap:
    """The sup-preserving map sending t to top when t not<= x, to y when
    bottom < t <= x, and to bottom at t = bottom."""
    leq = source.leq
    tab = []
    for t in range(source.n):
        if not leq[t, x]:
            tab.append(target.top)
        elif t == source.bottom:
            tab.append(target.bottom)
        else:
            tab.append(y)
    return LatticeMap(source, target, tab)


def e_map(source: Lattice, target: Lattice, y: int, x: int) -> LatticeMap:
    """Sends t to y when t not<= x, else to bottom."""
    leq = source.leq
    return LatticeMap(
        source, target,
        [y if not leq[t, x] else target.bottom for t in range(source.n)],
    )


def gamma_map(source: Lattice, target: Lattice, y: int) -> LatticeMap:
    """Inf-preserving: sends top to top and every other element to y."""
    return LatticeMap(
        source, target,
        [target.top if x == source.top else y for x in range(source.n)],
    )


def alpha_map(source: Lattice, target: Lattice, x: int) -> LatticeMap:
    """Inf-preserving: sends t to top when x <= t, else to bottom."""
    leq = source.leq
    return LatticeMap(
        source, target,
        [target.top if leq[x, t] else target.bottom for t in range(source.n)],
    )


def tensor_under(source: Lattice, target: Lattice, y: int, x: int) -> LatticeMap:
    """The inf-preserving map sending top to top, t to y when x <= t < top,
    and everything else to bottom."""
    leq = source.leq
    tab = []
    for t in range(source.n):
        if t == source.top:
            tab.append(target.top)
        elif leq[x, t]:
            tab.append(y)
        else:
            tab.append(target.bottom)
    return LatticeMap(source, target, tab)


# -- pointwise lattice of maps ----------------------------------------------


def pointwise_join(f: LatticeMap, g: LatticeMap) -> LatticeMap:
    if not _same_homset(f, g):
        raise MapError("maps live in different homsets")
    jt = f.target.join
    return LatticeMap(f.source, f.target, tuple(jt[a, b] for a, b in zip(f.table, g.table)))


def pointwise_meet(f: LatticeMap, g: LatticeMap) -> LatticeMap:
    if not _same_homset(f, g):
        raise MapError("maps live in different homsets")
    mt = f.target.meet
    return LatticeMap(f.source, f.target, tuple(mt[a, b] for a, b in zip(f.table, g.table)))


# -- adjoints ----------------------------------------------------------------


def right_adjoint(f: LatticeMap) -> LatticeMap:
    """For sup-preserving f, the map y -> join of {x : f(x) <= y}."""
    w = sup_witness(f)
    if w is not None:
        raise MapError(f"right adjoint needs a join-preserving map, witness {w}")
    tl = f.target.leq
    tab = []
    for y in range(f.target.n):
        acc = f.source.bottom
        for x in range(f.source.n):
            if tl[f.table[x], y]:
                acc = int(f.source.join[acc, x])
        tab.append(acc)
    return LatticeMap(f.target, f.source, tab)


def left_adjoint(g: LatticeMap) -> LatticeMap:
    """For inf-preserving g, the map y -> meet of {x : y <= g(x)}."""
    w = inf_witness(g)
    if w is not None:
        raise MapError(f"left adjoint needs a meet-preserving map, witness {w}")
    tl = g.target.leq
    tab = []
    for y in range(g.target.n):
        acc = g.source.top
        for x in range(g.source.n):
            if tl[y, g.table[x]]:
                acc = int(g.source.meet[acc, x])
        tab.append(acc)
    return LatticeMap(g.target, g.source, tab)


# -- greatest sup-preserving map below a monotone one ------------------------


def sup_interior_tables(source: Lattice, target: Lattice, tables: np.ndarray) -> np.ndarray:
    """Batched core of sup_interior: one map per row of `tables`.

    Iterates a decreasing operator until every row is bottom-preserving,
    monotone, and sub-additive on joins; the fixpoint is then the greatest
    join-preserving map below each input row.
    """
    K = np.array(tables, dtype=np.int16)
    if K.ndim == 1:
        K = K[None, :]
    jt, mt = target.join, target.meet
    desc = source.descending_order
    cover_parents = [list(np.flatnonzero(source.covers[x])) for x in range(source.n)]
    pair_groups = source.incomparable_join_pairs
    while True:
        before = K.copy()
        K[:, source.bottom] = target.bottom
        for x in desc:
            for p in cover_parents[x]:
                K[:, x] = mt[K[:, x], K[:, p]]
        for x in range(source.n):
            for a, b in pair_groups[x]:
                K[:, x] = mt[K[:, x], jt[K[:, a], K[:, b]]]
        if (K == before).all():
            return K


def sup_interior(k: LatticeMap) -> LatticeMap:
    """Greatest sup-preserving map below a monotone map."""
    w = monotone_witness(k)
    if w is not None:
        raise MapError(f"sup_interior needs a monotone map, witness {w}")
    out = sup_interior_tables(k.source, k.target, k.as_array())
    return LatticeMap(k.source, k.target, out[0])


# -- tensor characterization and bimorphism extension -------------------------


def characterization_check(f: LatticeMap, x: int, y: int) -> bool:
    """Returns f(x) <= y, checking it agrees with f <= tensor_over(y, x)."""
    b1 = bool(f.target.leq[f.table[x], y])
    b2 = f.leq(tensor_over(f.source, f.target, y, x))
    if b1 != b2:
        raise AssertionError(f"tensor characterization failed at ({x}, {y})")
    return b1


def extend_bimorphism(psi, g: LatticeMap) -> LatticeMap:
    """Extension of a bimorphism along an inf-preserving map.

    psi(y, x) must return maps in one fixed homset; the result is the
    pointwise join of psi(g(x), x) over all x in g's source.
    """
    w = inf_witness(g)
    if w is not None:
        raise MapError(f"extension needs a meet-preserving map, witness {w}")
    acc = None
    for x in range(g.source.n):
        piece = psi(g.table[x], x)
        acc = piece if acc is None else pointwise_join(acc, piece)
    return acc


# -- factorization ------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Surjection-isomorphism-inclusion decomposition of a sup-preserving map."""

    closure: LatticeMap        # right_adjoint(f) after f, on the source
    interior: LatticeMap       # f after right_adjoint(f), on the target
    source_fixed: tuple[int, ...]
    target_fixed: tuple[int, ...]
    iso: dict[int, int]        # restriction of f: source_fixed -> target_fixed


def factorize(f: LatticeMap) -> Factorization:
    rho = right_adjoint(f)
    j = rho.compose(f)
    o = f.compose(rho)
    source_fixed = tuple(x for x in range(f.source.n) if j.table[x] == x)
    target_fixed = tuple(y for y in range(f.target.n) if o.table[y] == y)
    iso = {x: f.table[x] for x in source_fixed}
    if sorted(iso.values()) != sorted(target_fixed):
        raise AssertionError("factorization middle is not a bijection")
    for x in range(f.source.n):
        if iso[j.table[x]] != f.table[x]:
            raise AssertionError("factorization does not recompose to f")
    return Factorization(j, o, source_fixed, target_fixed, iso)
