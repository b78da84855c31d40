"""The quantale of sup-preserving endomaps of a finite lattice.

The multiplication is composition, the join is pointwise, and the meet is
the sup-interior of the pointwise meet.  An EndoHomset holds every member
as one row of an int16 table so residuals, transforms and the searches for
cyclic and dualizing elements run as batched numpy passes.
"""
from __future__ import annotations

import numpy as np

from supq.lattice import Lattice, LatticeError, dual, join_irreducibles
from supq.maps import (
    LatticeMap,
    MapError,
    a_map,
    c_map,
    e_map,
    identity_map,
    pointwise_join,
    pointwise_meet,
    right_adjoint,
    sup_interior,
    sup_interior_tables,
    sup_witness,
    tensor_over,
    top_q_map,
)

DEFAULT_HOMSET_CAP = 100_000


class CapExceeded(LatticeError):
    """Homset enumeration or search grew past its configured cap."""

    def __init__(self, message: str, partial_count: int = 0):
        super().__init__(message)
        self.partial_count = partial_count


class NotDualizing(LatticeError):
    """The element is not dualizing, so no automorphism corresponds to it."""


class NotAutomorphism(LatticeError):
    """The permutation is not a lattice automorphism."""


class NotCompletelyDistributive(LatticeError):
    """The construction needs a completely distributive lattice."""


# -- rowwise join/meet of element sets via packed order masks -----------------


def _mask_lookup(L: Lattice):
    got = L._cache.get("mask_lookup")
    if got is None:
        up_order = np.argsort(L.upmask)
        down_order = np.argsort(L.downmask)
        got = (
            L.upmask[up_order],
            up_order,
            L.downmask[down_order],
            down_order,
        )
        L._cache["mask_lookup"] = got
    return got


def _elem_of_upmask(L: Lattice, red: np.ndarray) -> np.ndarray:
    """Each value of `red` is an intersection of up-sets; return the joins."""
    vals, order, _, _ = _mask_lookup(L)
    pos = np.searchsorted(vals, red.ravel())
    return order[pos].reshape(red.shape).astype(np.int16)


def _elem_of_downmask(L: Lattice, red: np.ndarray) -> np.ndarray:
    _, _, vals, order = _mask_lookup(L)
    pos = np.searchsorted(vals, red.ravel())
    return order[pos].reshape(red.shape).astype(np.int16)


def _as_rows(tables) -> np.ndarray:
    arr = np.asarray(tables, dtype=np.int16)
    return arr[None, :] if arr.ndim == 1 else arr


# -- transforms on raw tables --------------------------------------------------


def raney_down_tables(L: Lattice, tables: np.ndarray) -> np.ndarray:
    """Rowwise transform g -> (x -> join of g(t) over t not above x)."""
    g = _as_rows(tables)
    sel = L.upmask[g]  # (m, n) uint64 of up-sets of values
    out = np.empty_like(g)
    neutral = L.upmask[L.bottom]
    for x in range(L.n):
        cols = np.flatnonzero(~L.leq[x])
        red = np.bitwise_and.reduce(sel[:, cols], axis=1) if cols.size else np.full(len(g), neutral)
        out[:, x] = _elem_of_upmask(L, red)
    return out


def raney_up_tables(L: Lattice, tables: np.ndarray) -> np.ndarray:
    """Rowwise transform f -> (x -> meet of f(t) over t not below x)."""
    f = _as_rows(tables)
    sel = L.downmask[f]
    out = np.empty_like(f)
    neutral = L.downmask[L.top]
    for x in range(L.n):
        cols = np.flatnonzero(~L.leq[:, x])
        red = np.bitwise_and.reduce(sel[:, cols], axis=1) if cols.size else np.full(len(f), neutral)
        out[:, x] = _elem_of_downmask(L, red)
    return out


def right_adjoint_tables(L: Lattice, tables: np.ndarray) -> np.ndarray:
    """Rowwise right adjoint of join-preserving tables."""
    f = _as_rows(tables)
    out = np.empty_like(f)
    elem_up = L.upmask[np.arange(L.n)]
    for y in range(L.n):
        mask = L.leq[:, y][f]  # (m, n): f(x) <= y
        red = np.bitwise_and.reduce(
            np.where(mask, elem_up[None, :], L.upmask[L.bottom]), axis=1
        )
        out[:, y] = _elem_of_upmask(L, red)
    return out


def left_adjoint_tables(L: Lattice, tables: np.ndarray) -> np.ndarray:
    """Rowwise left adjoint of meet-preserving tables."""
    g = _as_rows(tables)
    out = np.empty_like(g)
    elem_down = L.downmask[np.arange(L.n)]
    for y in range(L.n):
        mask = L.leq[y][g]  # (m, n): y <= g(x)
        red = np.bitwise_and.reduce(
            np.where(mask, elem_down[None, :], L.downmask[L.top]), axis=1
        )
        out[:, y] = _elem_of_downmask(L, red)
    return out


def _endo(f: LatticeMap) -> Lattice:
    if not f.source.same_structure(f.target):
        raise MapError("operation needs an endomap")
    return f.source


def raney_down(g: LatticeMap) -> LatticeMap:
    """x -> join of g(t) over t not above x; join-preserving for any g."""
    L = _endo(g)
    return LatticeMap(L, L, raney_down_tables(L, g.as_array())[0])


def raney_up(f: LatticeMap) -> LatticeMap:
    """x -> meet of f(t) over t not below x; meet-preserving for any f."""
    L = _endo(f)
    return LatticeMap(L, L, raney_up_tables(L, f.as_array())[0])


def tight_interior(f: LatticeMap) -> LatticeMap:
    return raney_down(raney_up(f))


def is_tight(f: LatticeMap) -> bool:
    """A map is tight when the down-transform of its up-transform returns it."""
    return tight_interior(f) == f


def star(f: LatticeMap) -> LatticeMap:
    """Left adjoint of the up-transform; equals the down-transform of the
    right adjoint."""
    return raney_down(right_adjoint(f))


def is_completely_distributive(L: Lattice) -> bool:
    """Holds exactly when the identity map is tight."""
    return is_tight(identity_map(L))


# -- the quantale operations ----------------------------------------------------


def q_join(f: LatticeMap, g: LatticeMap) -> LatticeMap:
    return pointwise_join(f, g)


def q_meet(f: LatticeMap, g: LatticeMap) -> LatticeMap:
    """Meet in the quantale: sup-interior of the pointwise meet."""
    return sup_interior(pointwise_meet(f, g))


def right_residual(h: LatticeMap, f: LatticeMap) -> LatticeMap:
    """Largest g with g o f <= h: the quantale meet of h(x) tensor f(x)."""
    L = _endo(h)
    acc = top_q_map(L, L)
    for x in range(L.n):
        acc = pointwise_meet(acc, tensor_over(L, L, h.table[x], f.table[x]))
    return sup_interior(acc)


def left_residual(g: LatticeMap, h: LatticeMap) -> LatticeMap:
    """Largest f with g o f <= h: sup-interior of (right adjoint of g) o h."""
    return sup_interior(right_adjoint(g).compose(h))


# -- pointwise characterizations --------------------------------------------------


def relation_dual_profile(f: LatticeMap, y: int, x: int) -> tuple[bool, ...]:
    """Six equivalent readings of "y is below the up-transform of f at x"."""
    L = _endo(f)
    up_f = raney_up(f)
    st = star(f)
    c1 = all(L.leq[t, x] or L.leq[y, f.table[t]] for t in range(L.n))
    c2 = e_map(L, L, y, x).leq(f)
    c3 = all(
        L.leq[v, up_f.table[t]]
        for t, v in enumerate(
            [L.top if t == L.top else (y if L.leq[x, t] else L.bottom) for t in range(L.n)]
        )
    )
    c4 = bool(L.leq[y, up_f.table[x]])
    c5 = bool(L.leq[st.table[y], x])
    c6 = st.leq(tensor_over(L, L, x, y))
    return (c1, c2, c3, c4, c5, c6)


def adjunction_formulas(f: LatticeMap) -> dict[str, bool]:
    """Closed-form order comparisons against the one-step generator maps."""
    L = _endo(f)
    up_f = raney_up(f)
    st = star(f)
    rho = right_adjoint(f)
    out = {
        "c_below_f": all(
            c_map(L, L, y).leq(f) == bool(L.leq[y, up_f.table[L.bottom]]) for y in range(L.n)
        ),
        "f_below_c": all(
            f.leq(c_map(L, L, y)) == bool(L.leq[f.table[L.top], y]) for y in range(L.n)
        ),
        "a_below_f": all(
            a_map(L, L, x).leq(f) == bool(L.leq[st.table[L.top], x]) for x in range(L.n)
        ),
        "f_below_a": all(
            f.leq(a_map(L, L, x)) == bool(L.leq[x, rho.table[L.bottom]]) for x in range(L.n)
        ),
    }
    return out


def division_formulas(f: LatticeMap, y: int, x: int) -> dict[str, LatticeMap]:
    """Closed forms for residuals of f by generator maps.

    Each closed form is checked against the generic residual and a mismatch
    raises AssertionError.
    """
    L = _endo(f)
    up_f = raney_up(f)
    st = star(f)
    bot, top = L.bottom, L.top
    e = e_map(L, L, y, x)
    t = tensor_over(L, L, y, x)
    closed = {
        "f_over_a": c_map(L, L, up_f.table[x]),
        "c_under_f": a_map(L, L, st.table[y]),
        "f_over_c": tensor_over(L, L, up_f.table[bot], y),
        "a_under_f": tensor_over(L, L, x, st.table[top]),
        "f_over_e": tensor_over(L, L, up_f.table[x], y),
        "e_under_f": tensor_over(L, L, x, st.table[y]),
        "f_over_tensor": q_meet(
            c_map(L, L, up_f.table[x]), tensor_over(L, L, up_f.table[bot], y)
        ),
        "tensor_under_f": q_meet(
            a_map(L, L, st.table[y]), tensor_over(L, L, x, st.table[top])
        ),
    }
    generic = {
        "f_over_a": right_residual(f, a_map(L, L, x)),
        "c_under_f": left_residual(c_map(L, L, y), f),
        "f_over_c": right_residual(f, c_map(L, L, y)),
        "a_under_f": left_residual(a_map(L, L, x), f),
        "f_over_e": right_residual(f, e),
        "e_under_f": left_residual(e, f),
        "f_over_tensor": right_residual(f, t),
        "tensor_under_f": left_residual(t, f),
    }
    for name, lhs in closed.items():
        if lhs != generic[name]:
            raise AssertionError(f"division formula {name} failed at (y={y}, x={x})")
    if up_f.table[bot] == bot:
        reduced = c_map(L, L, up_f.table[x]).compose(a_map(L, L, y))
        if reduced != generic["f_over_tensor"]:
            raise AssertionError(f"reduced tensor division failed at (y={y}, x={x})")
    if st.table[top] == top:
        reduced = c_map(L, L, x).compose(a_map(L, L, st.table[y]))
        if reduced != generic["tensor_under_f"]:
            raise AssertionError(f"reduced tensor co-division failed at (y={y}, x={x})")
    return closed


# -- homset enumeration ------------------------------------------------------------


def enumerate_homset(L: Lattice, cap: int = DEFAULT_HOMSET_CAP) -> "EndoHomset":
    """All join-preserving endomaps of L, enumerated through values on the
    join-irreducibles and capped at `cap` members."""
    J = join_irreducibles(L)
    order = sorted(J, key=lambda j: int(L.leq[:, j].sum()))
    work_cap = max(1_000_000, 16 * cap)
    part = np.zeros((1, 0), dtype=np.int16)
    for k, j in enumerate(order):
        below = [p for p in range(k) if L.leq[order[p], j]]
        if below:
            allowed = np.ones((len(part), L.n), dtype=bool)
            for p in below:
                allowed &= L.leq[part[:, p]]
        else:
            allowed = np.ones((len(part), L.n), dtype=bool)
        rows, vals = np.nonzero(allowed)
        if len(rows) > work_cap:
            raise CapExceeded(
                f"homset enumeration grew past {work_cap} candidate assignments", 0
            )
        part = np.concatenate([part[rows], vals[:, None].astype(np.int16)], axis=1)

    pos_of = {j: k for k, j in enumerate(order)}
    chunks = []
    total = 0
    join_tab = L.join
    pair_items = [(x, pairs) for x, pairs in L.incomparable_join_pairs.items() if pairs]
    for start in range(0, len(part), 1 << 16):
        block = part[start : start + (1 << 16)]
        ext = np.empty((len(block), L.n), dtype=np.int16)
        for x in range(L.n):
            cols = [pos_of[j] for j in order if L.leq[j, x]]
            if cols:
                red = np.bitwise_and.reduce(L.upmask[block[:, cols]], axis=1)
                ext[:, x] = _elem_of_upmask(L, red)
            else:
                ext[:, x] = L.bottom
        ok = np.ones(len(block), dtype=bool)
        for x, pairs in pair_items:
            for a, b in pairs:
                ok &= ext[:, x] == join_tab[ext[:, a], ext[:, b]]
        chunks.append(ext[ok])
        total += int(ok.sum())
        if total > 4 * cap:
            found = len(np.unique(np.concatenate(chunks), axis=0))
            if found > cap:
                raise CapExceeded(f"homset has more than {cap} maps", found)
    tables = np.unique(np.concatenate(chunks), axis=0)
    if len(tables) > cap:
        raise CapExceeded(f"homset has more than {cap} maps", len(tables))
    return EndoHomset(L, tables)


def enumerate_inf_maps(L: Lattice, cap: int = DEFAULT_HOMSET_CAP) -> np.ndarray:
    """Tables of all meet-preserving endomaps (the homset of the dual)."""
    return enumerate_homset(dual(L), cap).tables


class EndoHomset:
    """The lex-sorted table of every join-preserving endomap of a lattice."""

    def __init__(self, L: Lattice, tables: np.ndarray):
        self.lattice = L
        tables = np.array(tables, dtype=np.int16)
        tables.flags.writeable = False
        self.tables = tables
        self.m = len(tables)
        self._cache: dict = {}

    # -- lookup ---------------------------------------------------------

    def _keys(self):
        got = self._cache.get("keys")
        if got is None:
            n = self.lattice.n
            if n ** n < 2**62:
                radix = (np.int64(n) ** np.arange(n, dtype=np.int64))[None, :]
                keys = (self.tables.astype(np.int64) * radix).sum(axis=1)
                order = np.argsort(keys)
                got = ("radix", radix, keys[order], order)
            else:
                got = ("dict", {t.tobytes(): i for i, t in enumerate(self.tables)})
            self._cache["keys"] = got
        return got

    def index_rows(self, rows: np.ndarray, strict: bool = True) -> np.ndarray:
        """Index of each row in the homset table; -1 for absent rows when
        strict is off."""
        rows = _as_rows(rows)
        keys = self._keys()
        if keys[0] == "radix":
            _, radix, sorted_keys, order = keys
            q = (rows.astype(np.int64) * radix).sum(axis=1)
            pos = np.searchsorted(sorted_keys, q)
            pos = np.minimum(pos, self.m - 1)
            idx = order[pos]
            hit = sorted_keys[pos] == q
        else:
            lut = keys[1]
            idx = np.array([lut.get(r.tobytes(), -1) for r in rows], dtype=np.int64)
            hit = idx >= 0
        if strict:
            if not hit.all():
                raise KeyError("row is not a join-preserving member of the homset")
            return idx
        return np.where(hit, idx, -1)

    def index_of(self, f: LatticeMap) -> int:
        return int(self.index_rows(f.as_array())[0])

    def map_at(self, i: int) -> LatticeMap:
        return LatticeMap(self.lattice, self.lattice, self.tables[i])

    # -- distinguished members -------------------------------------------

    @property
    def identity_index(self) -> int:
        got = self._cache.get("id_idx")
        if got is None:
            got = int(self.index_rows(np.arange(self.lattice.n, dtype=np.int16))[0])
            self._cache["id_idx"] = got
        return got

    @property
    def bottom_index(self) -> int:
        got = self._cache.get("bot_idx")
        if got is None:
            got = self.index_of(LatticeMap(self.lattice, self.lattice,
                                           [self.lattice.bottom] * self.lattice.n))
            self._cache["bot_idx"] = got
        return got

    @property
    def top_index(self) -> int:
        got = self._cache.get("top_idx")
        if got is None:
            got = self.index_of(top_q_map(self.lattice, self.lattice))
            self._cache["top_idx"] = got
        return got

    # -- cached batch transforms ------------------------------------------

    @property
    def rho_tables(self) -> np.ndarray:
        got = self._cache.get("rho")
        if got is None:
            got = right_adjoint_tables(self.lattice, self.tables)
            self._cache["rho"] = got
        return got

    @property
    def up_transform_tables(self) -> np.ndarray:
        got = self._cache.get("up_t")
        if got is None:
            got = raney_up_tables(self.lattice, self.tables)
            self._cache["up_t"] = got
        return got

    @property
    def tight_interior_tables(self) -> np.ndarray:
        got = self._cache.get("tight_t")
        if got is None:
            got = raney_down_tables(self.lattice, self.up_transform_tables)
            self._cache["tight_t"] = got
        return got

    @property
    def tight_mask(self) -> np.ndarray:
        got = self._cache.get("tight_mask")
        if got is None:
            got = (self.tight_interior_tables == self.tables).all(axis=1)
            got.flags.writeable = False
            self._cache["tight_mask"] = got
        return got

    def tight_indices(self) -> np.ndarray:
        return np.flatnonzero(self.tight_mask)

    @property
    def star_indices(self) -> np.ndarray:
        """Index of the star of each member (down-transform of its adjoint)."""
        got = self._cache.get("star_idx")
        if got is None:
            got = self.index_rows(raney_down_tables(self.lattice, self.rho_tables))
            got.flags.writeable = False
            self._cache["star_idx"] = got
        return got

    # -- pointwise order ----------------------------------------------------

    def leq_mask_above(self, tab: np.ndarray) -> np.ndarray:
        """mask[i] holds when tab <= tables[i] pointwise."""
        L = self.lattice
        ok = np.ones(self.m, dtype=bool)
        one = np.uint64(1)
        for k in range(L.n):
            ok &= (L.upmask[int(tab[k])] >> self.tables[:, k].astype(np.uint64) & one).astype(bool)
        return ok

    def leq_mask_below(self, tab: np.ndarray) -> np.ndarray:
        """mask[i] holds when tables[i] <= tab pointwise."""
        L = self.lattice
        ok = np.ones(self.m, dtype=bool)
        one = np.uint64(1)
        for k in range(L.n):
            ok &= (L.downmask[int(tab[k])] >> self.tables[:, k].astype(np.uint64) & one).astype(bool)
        return ok

    def leq_matrix(self) -> np.ndarray:
        """Full pointwise order between members (guarded to 4096 members)."""
        got = self._cache.get("leq_q")
        if got is None:
            if self.m > 4096:
                raise CapExceeded(f"order matrix for {self.m} maps exceeds the 4096 cap", self.m)
            L = self.lattice
            got = np.ones((self.m, self.m), dtype=bool)
            for k in range(L.n):
                col = self.tables[:, k]
                got &= L.leq[np.ix_(col, col)]
            got.flags.writeable = False
            self._cache["leq_q"] = got
        return got

    # -- batched residuals ---------------------------------------------------

    def _interior(self, tables: np.ndarray) -> np.ndarray:
        return sup_interior_tables(self.lattice, self.lattice, tables)

    def _rdiv_fixed_divisor(self, g_tab: np.ndarray) -> np.ndarray:
        """Tables of h/g for every member h and the fixed divisor g."""
        L = self.lattice
        acc = np.full((self.m, L.n), L.top, dtype=np.int16)
        leq_t = L.leq.T
        for x in range(L.n):
            mask = leq_t[int(g_tab[x])]  # (n,) profile of t <= g(x)
            val = np.where(mask[None, :], self.tables[:, x][:, None], np.int16(L.top))
            val[:, L.bottom] = L.bottom
            acc = L.meet[acc, val].astype(np.int16)
        return self._interior(acc)

    def _ldiv_fixed_divisor(self, g_idx: int) -> np.ndarray:
        """Tables of g\\h for every member h and the fixed divisor g."""
        rho_g = self.rho_tables[g_idx]
        comp = rho_g[self.tables]
        return self._interior(comp)

    def _rdiv_pairs(self, h_tabs: np.ndarray, f_tabs: np.ndarray) -> np.ndarray:
        """Rowwise h_i / f_i."""
        L = self.lattice
        m = len(h_tabs)
        acc = np.full((m, L.n), L.top, dtype=np.int16)
        leq_t = L.leq.T
        for x in range(L.n):
            mask = leq_t[f_tabs[:, x]]  # (m, n)
            val = np.where(mask, h_tabs[:, x][:, None], np.int16(L.top))
            val[:, L.bottom] = L.bottom
            acc = L.meet[acc, val].astype(np.int16)
        return self._interior(acc)

    def _ldiv_pairs(self, g_tabs: np.ndarray, h_tabs: np.ndarray) -> np.ndarray:
        """Rowwise g_i \\ h_i."""
        rho = right_adjoint_tables(self.lattice, g_tabs)
        comp = np.take_along_axis(rho, h_tabs.astype(np.int64), axis=1).astype(np.int16)
        return self._interior(comp)

    def rdiv_indices(self, i: int) -> np.ndarray:
        """Index of h/g for h = member i and every divisor g."""
        got = self._rdiv_pairs(np.broadcast_to(self.tables[i], self.tables.shape), self.tables)
        return self.index_rows(got)

    def ldiv_indices(self, i: int) -> np.ndarray:
        """Index of g\\h for h = member i and every divisor g."""
        h_tab = self.tables[i]
        comp = self.rho_tables[:, h_tab]
        return self.index_rows(self._interior(comp))


# -- cyclic and dualizing elements ---------------------------------------------------


def is_cyclic(H: EndoHomset, i: int) -> bool:
    """Both residuals by every divisor agree."""
    return bool((H.ldiv_indices(i) == H.rdiv_indices(i)).all())


def is_dualizing(H: EndoHomset, i: int) -> bool:
    """Dividing into the element twice recovers every divisor."""
    ld = H.ldiv_indices(i)
    rd = H.rdiv_indices(i)
    idx = np.arange(H.m)
    return bool((rd[ld] == idx).all() and (ld[rd] == idx).all())


def _generator_indices(H: EndoHomset) -> list[int]:
    L = H.lattice
    gens = set()
    for v in range(L.n):
        gens.add(H.index_of(c_map(L, L, v)))
        gens.add(H.index_of(a_map(L, L, v)))
    return sorted(gens)


def find_cyclic(H: EndoHomset) -> list[int]:
    """All cyclic members, by generator prefilter plus a full confirming scan."""
    alive = np.ones(H.m, dtype=bool)
    for gi in _generator_indices(H):
        lhs = H._rdiv_fixed_divisor(H.tables[gi])
        rhs = H._ldiv_fixed_divisor(gi)
        alive &= (lhs == rhs).all(axis=1)
        if not alive.any():
            return []
    return [int(i) for i in np.flatnonzero(alive) if is_cyclic(H, int(i))]


def find_dualizing(H: EndoHomset) -> list[int]:
    """All dualizing members, by generator prefilter plus a confirming scan."""
    alive = np.ones(H.m, dtype=bool)
    for gi in _generator_indices(H):
        g_tab = H.tables[gi]
        # h / (g \ h) must be g again
        back = H._rdiv_pairs(H.tables, H._ldiv_fixed_divisor(gi))
        alive &= (back == g_tab).all(axis=1)
        if not alive.any():
            return []
        # (h / g) \ h must be g again
        back = H._ldiv_pairs(H._rdiv_fixed_divisor(g_tab), H.tables)
        alive &= (back == g_tab).all(axis=1)
        if not alive.any():
            return []
    return [int(i) for i in np.flatnonzero(alive) if is_dualizing(H, int(i))]


def is_girard(H: EndoHomset) -> bool:
    """Some member is both cyclic and dualizing."""
    dual_set = set(find_dualizing(H))
    if not dual_set:
        return False
    return any(i in dual_set for i in find_cyclic(H))


# -- the correspondence with automorphisms ---------------------------------------------


def dualizing_to_automorphism(H: EndoHomset, i: int) -> tuple[int, ...]:
    """The star of a dualizing member is a lattice automorphism."""
    if not is_dualizing(H, i):
        raise NotDualizing(f"member {i} is not dualizing")
    perm = tuple(int(v) for v in H.tables[H.star_indices[i]])
    L = H.lattice
    if sorted(perm) != list(range(L.n)):
        raise NotDualizing("star of the member is not a bijection")
    return perm


def automorphism_to_dualizing(H: EndoHomset, perm) -> int:
    """Residual of the down-transform of the identity by the automorphism."""
    L = H.lattice
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(L.n)):
        raise NotAutomorphism("not a permutation of the elements")
    for x in range(L.n):
        for y in range(L.n):
            if bool(L.leq[x, y]) != bool(L.leq[perm[x], perm[y]]):
                raise NotAutomorphism(f"order not preserved at pair ({x}, {y})")
    if not is_completely_distributive(L):
        raise NotCompletelyDistributive(
            "the dualizing correspondence needs a completely distributive lattice"
        )
    o = raney_down(identity_map(L))
    h = LatticeMap(L, L, perm)
    return H.index_of(right_residual(o, h))


# -- tight members under composition ---------------------------------------------------


def tight_has_unit(H: EndoHomset):
    """Index of a two-sided unit for composition among the tight members,
    or None."""
    tight = H.tight_indices()
    sub = H.tables[tight]
    for u in tight:
        tab_u = H.tables[u]
        left = tab_u[sub]  # u o t for each tight t
        right = np.take_along_axis(sub, np.broadcast_to(tab_u, sub.shape).astype(np.int64), axis=1)
        if (left == sub).all() and (right == sub).all():
            return int(u)
    return None


def conucleus_gap(H: EndoHomset):
    """First pair (i, j) with tight_interior(f_i o f_j) different from
    tight_interior(f_i) o tight_interior(f_j), or None.

    The composite of the interiors always sits below the interior of the
    composite; the gap is the failure of the opposite inclusion, which is
    what the interior would need to restrict composition."""
    t_idx = H.index_rows(H.tight_interior_tables)
    if (t_idx == np.arange(H.m)).all():
        return None
    L = H.lattice
    t_tables = H.tables[t_idx]
    for i in range(H.m):
        lhs = H.tables[t_idx[i]][t_tables]  # T(f_i) o T(f_j) for all j
        comp = H.tables[i][H.tables]        # f_i o f_j for all j
        rhs = H.tables[t_idx[H.index_rows(comp)]]
        bad = np.flatnonzero((lhs != rhs).any(axis=1))
        if bad.size:
            j = int(bad[0])
            if not all(L.leq[lhs[j, t], rhs[j, t]] for t in range(L.n)):
                raise AssertionError("interior composite escaped the lax inclusion")
            return (i, j)
    return None
