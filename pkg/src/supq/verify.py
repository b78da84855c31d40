"""Batch verification suite: every structural property the package promises,
run against a concrete lattice and reported as named checks."""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass

import numpy as np

from supq.lattice import (
    Lattice,
    Poset,
    SearchCapExceeded,
    automorphisms,
    downset_lattice,
    dual,
    is_distributive,
    join_irreducibles,
    make_boolean,
    make_chain,
    make_mk,
    make_n5,
)
from supq.maps import (
    LatticeMap,
    a_map,
    c_map,
    e_map,
    identity_map,
    pointwise_join,
    pointwise_meet,
    sup_interior_tables,
    tensor_over,
)
from supq.quantale import (
    CapExceeded,
    _elem_of_upmask,
    EndoHomset,
    automorphism_to_dualizing,
    conucleus_gap,
    dualizing_to_automorphism,
    enumerate_homset,
    enumerate_inf_maps,
    find_cyclic,
    find_dualizing,
    is_completely_distributive,
    is_girard,
    left_adjoint_tables,
    raney_down,
    raney_down_tables,
    raney_up_tables,
    right_adjoint_tables,
    star,
    tight_has_unit,
)
from supq.structures import (
    abstract_raney_check,
    autodual_report,
    classify_natural,
    downset_automorphism,
    find_order_isomorphism,
    homset_irreducibles,
    m5_quantale,
    q_cyclic,
    q_dualizing,
    q_residuals,
    supmap_from_wk,
    wk_compose,
    wk_from_automorphism,
    wk_from_supmap,
)

EXHAUSTIVE_PAIR_CAP = 512      # full (g, h) / (f, g) quantification
TABLE_SCAN_CAP = 2000          # quadratic table constructions
MATRIX_CAP = 4096              # order-matrix-sized scans


class _Skip(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str  # "pass" | "fail" | "skipped"
    witness: str | None = None
    reason: str | None = None
    elapsed: float = 0.0

    def to_doc(self) -> dict:
        doc = {"check_id": self.check_id, "status": self.status}
        if self.status == "fail":
            doc["witness"] = self.witness
        if self.status == "skipped":
            doc["reason"] = self.reason
        return doc


@dataclass(frozen=True)
class SuiteConfig:
    max_homset: int = 100_000
    max_autodual: int = 2000
    checks: tuple[str, ...] | None = None


@dataclass
class Report:
    name: str
    size: int
    hash: str
    results: list[CheckResult]
    summary: dict

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.status == "fail")

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.results if r.status == "skipped")

    def to_doc(self) -> dict:
        return {
            "lattice": {"name": self.name, "size": self.size, "hash": self.hash},
            "summary": self.summary,
            "checks": [r.to_doc() for r in self.results],
        }


class _Ctx:
    """Lazy, cached access to the expensive artifacts a check may need."""

    def __init__(self, L: Lattice, config: SuiteConfig, poset: Poset | None = None):
        self.L = L
        self.config = config
        self.poset = poset
        self._homset: EndoHomset | str | None = None
        self._inf: np.ndarray | str | None = None

    @property
    def homset(self) -> EndoHomset:
        if self._homset is None:
            try:
                self._homset = enumerate_homset(self.L, cap=self.config.max_homset)
            except CapExceeded as e:
                self._homset = str(e)
        if isinstance(self._homset, str):
            raise _Skip(self._homset)
        return self._homset

    @property
    def inf_tables(self) -> np.ndarray:
        if self._inf is None:
            try:
                self._inf = enumerate_inf_maps(self.L, cap=self.config.max_homset)
            except CapExceeded as e:
                self._inf = str(e)
        if isinstance(self._inf, str):
            raise _Skip(self._inf)
        return self._inf

    def homset_capped(self, cap: int, what: str) -> EndoHomset:
        H = self.homset
        if H.m > cap:
            raise _Skip(f"homset has {H.m} members; {what} capped at {cap}")
        return H


# -- lattice-level checks ----------------------------------------------------------


def check_lattice_axioms(ctx: _Ctx):
    L = ctx.L
    idx = np.arange(L.n)
    for op, name in ((L.join, "join"), (L.meet, "meet")):
        if not (op[idx, idx] == idx).all():
            return f"{name} is not idempotent"
        if not (op == op.T).all():
            return f"{name} is not commutative"
        left = op[op]
        right = op[idx[:, None, None], op[None, :, :]]
        if not (left == right).all():
            x, y, z = np.argwhere(left != right)[0]
            return f"{name} is not associative at ({x}, {y}, {z})"
    if not (L.meet[idx[:, None], L.join] == np.broadcast_to(idx[:, None], (L.n, L.n))).all():
        return "absorption fails"
    if not (L.join[idx[:, None], L.meet[idx[:, None], idx[None, :]]] == idx[:, None]).all():
        return "dual absorption fails"
    order_from_join = L.join == np.broadcast_to(idx[None, :], (L.n, L.n))
    order_from_meet = L.meet == np.broadcast_to(idx[:, None], (L.n, L.n))
    if not (order_from_join == L.leq).all() or not (order_from_meet == L.leq).all():
        return "order disagrees with the operations"
    return None


def check_dual_involution(ctx: _Ctx):
    DD = dual(dual(ctx.L))
    if not (DD.leq == ctx.L.leq).all():
        return "double dual changed the order"
    if not (DD.join == ctx.L.join).all() or not (DD.meet == ctx.L.meet).all():
        return "double dual changed the operations"
    return None


def check_distributivity_agreement(ctx: _Ctx):
    a = is_distributive(ctx.L)
    b = is_completely_distributive(ctx.L)
    if a != b:
        return f"pair/triple distributivity says {a}, transform identity says {b}"
    return None


def check_downset_irreducibles(ctx: _Ctx):
    L = ctx.L
    J = join_irreducibles(L)
    P = Poset(L.leq[np.ix_(J, J)].copy())
    D = downset_lattice(P)
    if len(join_irreducibles(D)) != P.n:
        return (
            f"downset lattice of the {P.n}-point order has "
            f"{len(join_irreducibles(D))} join-irreducibles"
        )
    if is_distributive(L):
        if D.n != L.n:
            return f"representation size {D.n} differs from lattice size {L.n}"
        if find_order_isomorphism(D.leq, L.leq) is None:
            return "downset representation is not isomorphic to the lattice"
    return None


# -- map-level checks ---------------------------------------------------------------


def check_galois_adjunction(ctx: _Ctx):
    H = ctx.homset
    L = ctx.L
    rho = H.rho_tables
    for start in range(0, H.m, 4096):
        tab = H.tables[start : start + 4096].astype(np.int64)
        rh = rho[start : start + 4096].astype(np.int64)
        lhs = L.leq[tab]                       # [i, x, y] = f(x) <= y
        rhs = L.leq.T[rh].transpose(0, 2, 1)   # [i, x, y] = x <= rho f (y)
        if not (lhs == rhs).all():
            i = int(np.argwhere((lhs != rhs).any(axis=(1, 2)))[0][0]) + start
            return f"adjunction fails for member {i}"
    back = left_adjoint_tables(L, rho)
    if not (back == H.tables).all():
        return "lower adjoint does not invert the upper adjoint"
    inf = ctx.inf_tables
    if not (right_adjoint_tables(L, left_adjoint_tables(L, inf)) == inf).all():
        return "upper adjoint does not invert the lower adjoint"
    if len(np.unique(rho, axis=0)) != H.m:
        return "adjoint assignment is not injective"
    return None


def check_generator_relations(ctx: _Ctx):
    L = ctx.L
    for y in range(L.n):
        for x in range(L.n):
            c, a = c_map(L, L, y), a_map(L, L, x)
            if pointwise_join(c, a).table != tensor_over(L, L, y, x).table:
                return f"tensor is not the pointwise join at ({y}, {x})"
            if pointwise_meet(c, a).table != e_map(L, L, y, x).table:
                return f"e map is not the pointwise meet at ({y}, {x})"
    for y in range(L.n):
        if tensor_over(L, L, y, L.top).table != c_map(L, L, y).table:
            return f"constant-style map differs from tensor at y={y}"
    for x in range(L.n):
        if tensor_over(L, L, L.bottom, x).table != a_map(L, L, x).table:
            return f"step map differs from tensor at x={x}"
    return None


def check_tensor_meet_decomposition(ctx: _Ctx):
    H = ctx.homset
    L = ctx.L
    acc = np.full(H.tables.shape, L.top, dtype=np.int16)
    for x in range(L.n):
        col = H.tables[:, x]
        val = np.where(L.leq[:, x][None, :], col[:, None], np.int16(L.top))
        val[:, L.bottom] = L.bottom
        acc = L.meet[acc, val].astype(np.int16)
    if not (acc == H.tables).all():
        i = int(np.argwhere((acc != H.tables).any(axis=1))[0][0])
        return f"canonical meet of tensors differs from member {i}"
    return None


def check_infmap_join_decomposition(ctx: _Ctx):
    L = ctx.L
    inf = ctx.inf_tables
    acc = np.full(inf.shape, L.bottom, dtype=np.int16)
    for x in range(L.n):
        col = inf[:, x]
        val = np.where(L.leq[x][None, :], col[:, None], np.int16(L.bottom))
        val[:, L.top] = L.top
        acc = L.join[acc, val].astype(np.int16)
    if not (acc == inf).all():
        i = int(np.argwhere((acc != inf).any(axis=1))[0][0])
        return f"canonical join of co-tensors differs from member {i}"
    return None


def _monotone_inputs(ctx: _Ctx) -> np.ndarray:
    L = ctx.L
    if L.n ** L.n <= 4000:
        grids = np.indices((L.n,) * L.n).reshape(L.n, -1).T.astype(np.int16)
        ok = np.ones(len(grids), dtype=bool)
        for x in range(L.n):
            for y in range(L.n):
                if L.leq[x, y]:
                    ok &= L.leq[grids[:, x], grids[:, y]]
        return grids[ok]
    H = ctx.homset
    rng = np.random.default_rng(2024)
    rows = rng.integers(0, H.m, size=200)
    consts = rng.integers(0, L.n, size=200).astype(np.int16)
    return L.join[H.tables[rows], consts[:, None]].astype(np.int16)


def check_sup_interior_props(ctx: _Ctx):
    L = ctx.L
    H = ctx.homset
    K = _monotone_inputs(ctx)
    out = sup_interior_tables(L, L, K)
    for t in range(L.n):
        if not L.leq[out[:, t], K[:, t]].all():
            return "interior is not deflationary"
    if not (sup_interior_tables(L, L, out) == out).all():
        return "interior is not idempotent"
    idx = H.index_rows(out, strict=False)
    if (idx < 0).any():
        return "interior produced a map outside the homset"
    for k_i in range(len(K)):
        below = np.ones(H.m, dtype=bool)
        for t in range(L.n):
            below &= L.leq[H.tables[:, t], K[k_i, t]]
        if below.any():
            red = np.bitwise_and.reduce(L.upmask[H.tables[below].astype(np.int64)], axis=0)
            join_tab = _elem_of_upmask(L, red)
        else:
            join_tab = np.full(L.n, L.bottom, dtype=np.int16)
        if not (join_tab == out[k_i]).all():
            return f"interior differs from the join of maps below input {k_i}"
    rng = np.random.default_rng(7)
    for _ in range(min(300, len(K) ** 2)):
        i, j = rng.integers(0, len(K), size=2)
        upper = L.join[K[i], K[j]]
        big = sup_interior_tables(L, L, upper)[0]
        if not all(L.leq[out[i, t], big[t]] for t in range(L.n)):
            return "interior is not monotone as an operator"
    return None


# -- transform and residual checks -----------------------------------------------------


def check_raney_adjunction(ctx: _Ctx):
    H = ctx.homset_capped(MATRIX_CAP, "transform adjunction scan")
    L = ctx.L
    inf = ctx.inf_tables
    down = raney_down_tables(L, inf)
    up = raney_up_tables(L, H.tables)
    lhs = np.ones((len(inf), H.m), dtype=bool)
    rhs = np.ones((len(inf), H.m), dtype=bool)
    for t in range(L.n):
        lhs &= L.leq[down[:, t][:, None], H.tables[:, t][None, :]]
        rhs &= L.leq[inf[:, t][:, None], up[:, t][None, :]]
    if not (lhs == rhs).all():
        g, f = np.argwhere(lhs != rhs)[0]
        return f"transform adjunction fails at pair ({g}, {f})"
    return None


def check_raney_transform_exchange(ctx: _Ctx):
    L = ctx.L
    H = ctx.homset
    inf = ctx.inf_tables
    if not (right_adjoint_tables(L, raney_down_tables(L, inf))
            == raney_up_tables(L, left_adjoint_tables(L, inf))).all():
        return "upper adjoint of the down transform differs from the up transform of the lower adjoint"
    if not (left_adjoint_tables(L, raney_up_tables(L, H.tables))
            == raney_down_tables(L, H.rho_tables)).all():
        return "lower adjoint of the up transform differs from the down transform of the upper adjoint"
    return None


def check_naturality_generators(ctx: _Ctx):
    H = ctx.homset
    L = ctx.L
    for y in range(L.n):
        c_tab = np.array(c_map(L, L, y).table, dtype=np.int64)
        comp = H.tables[:, c_tab]
        want = np.where(
            np.arange(L.n)[None, :] == L.bottom, np.int16(L.bottom), H.tables[:, y][:, None]
        )
        if not (comp == want).all():
            return f"composing with the constant-style map fails at y={y}"
    for x in range(L.n):
        a_tab = np.array(a_map(L, L, x).table, dtype=np.int16)
        comp = a_tab[H.tables]
        rho_col = H.rho_tables[:, x]
        want = np.where(L.leq.T[rho_col.astype(np.int64)], np.int16(L.bottom), np.int16(L.top))
        if not (comp == want).all():
            return f"composing with the step map fails at x={x}"
    return None


def check_naturality_composite(ctx: _Ctx):
    H = ctx.homset_capped(EXHAUSTIVE_PAIR_CAP, "exhaustive composite naturality")
    L = ctx.L
    tabs = H.tables.astype(np.int64)
    rho = H.rho_tables.astype(np.int64)
    for y in range(L.n):
        for x in range(L.n):
            e_tab = np.array(e_map(L, L, y, x).table, dtype=np.int64)
            mid = e_tab[tabs]                      # e o g, per g
            got = H.tables[:, mid]                 # f o e o g, per (f, g)
            fy = tabs[:, y][:, None, None]
            gx = rho[:, x][None, :, None]
            t_le = L.leq.T[gx, np.arange(L.n)[None, None, :]]
            want = np.where(t_le, np.int16(L.bottom), fy.astype(np.int16))
            if not (got == want).all():
                return f"composite naturality fails at (y={y}, x={x})"
    return None


def check_tight_subset(ctx: _Ctx):
    H = ctx.homset_capped(MATRIX_CAP, "tight subset scan")
    L = ctx.L
    tight = H.tight_indices()
    mask = H.tight_mask
    for t in tight:
        t_tab = H.tables[t]
        if not mask[H.index_rows(t_tab[H.tables])].all():
            return f"left composite with tight member {t} escapes the tight subset"
        if not mask[H.index_rows(H.tables[:, t_tab.astype(np.int64)])].all():
            return f"right composite with tight member {t} escapes the tight subset"
    sub = H.tables[tight].astype(np.int64)
    for i in range(len(tight)):
        joined = L.join[sub[i][None, :], sub]
        if not mask[H.index_rows(joined)].all():
            return "tight subset is not closed under joins"
    down_idx = np.unique(H.index_rows(raney_down_tables(L, ctx.inf_tables)))
    if set(down_idx.tolist()) != set(int(i) for i in tight):
        return "image of the down transform differs from the tight subset"
    surjective = len(down_idx) == H.m
    if surjective != bool(mask[H.identity_index]):
        return "down transform surjectivity disagrees with tightness of the identity"
    return None


def check_cd_raney(ctx: _Ctx):
    L = ctx.L
    cd = is_completely_distributive(L)
    if cd != is_distributive(L):
        return "transform identity disagrees with distributivity"
    H = ctx.homset
    if cd != bool(H.tight_mask[H.identity_index]):
        return "identity tightness disagrees with the transform identity"
    return None


def check_residual_adjunction(ctx: _Ctx):
    H = ctx.homset_capped(EXHAUSTIVE_PAIR_CAP, "exhaustive residual adjunction")
    leq = H.leq_matrix()
    comp = np.empty((H.m, H.m), dtype=np.int64)
    tabs = H.tables.astype(np.int64)
    for g in range(H.m):
        comp[g] = H.index_rows(H.tables[g][tabs])
    for h in range(H.m):
        ld = H.ldiv_indices(h)     # g \ h per g
        rd = H.rdiv_indices(h)     # h / g per g
        solutions = leq[comp, h]   # [g, f] = (g o f <= h)
        if not (solutions == leq[:, ld].T).all():
            g = int(np.argwhere((solutions != leq[:, ld].T).any(axis=1))[0][0])
            return f"left residual adjunction fails at (g={g}, h={h})"
        if not (solutions == leq[:, rd]).all():
            f = int(np.argwhere((solutions != leq[:, rd]).any(axis=0))[0][0])
            return f"right residual adjunction fails at (f={f}, h={h})"
    return None


def check_division_formulas(ctx: _Ctx):
    H = ctx.homset_capped(TABLE_SCAN_CAP, "generator division scan")
    L = ctx.L
    n, top, bot = L.n, L.top, L.bottom
    up = H.up_transform_tables
    st = H.tables[H.star_indices.astype(np.int64)]
    arange = np.arange(n)

    def c_rows(vals):
        return np.where(arange[None, :] == bot, np.int16(bot), vals[:, None].astype(np.int16))

    def a_rows(vals):
        return np.where(L.leq.T[vals.astype(np.int64)], np.int16(bot), np.int16(top))

    def tensor_rows(vals, x):
        out = np.where(L.leq[:, x][None, :], vals[:, None].astype(np.int16), np.int16(top))
        out[:, bot] = bot
        return out

    def tensor_rows_varying(y, xs):
        out = np.where(L.leq.T[xs.astype(np.int64)], np.int16(y), np.int16(top))
        out[:, bot] = bot
        return out

    for x in range(n):
        a_tab = np.array(a_map(L, L, x).table, dtype=np.int16)
        if not (H._rdiv_fixed_divisor(a_tab) == c_rows(up[:, x])).all():
            return f"division by the step map fails at x={x}"
        a_idx = H.index_of(a_map(L, L, x))
        got = H._ldiv_fixed_divisor(a_idx)
        if not (got == tensor_rows_varying(x, st[:, top])).all():
            return f"co-division by the step map fails at x={x}"
    for y in range(n):
        c_tab = np.array(c_map(L, L, y).table, dtype=np.int16)
        if not (H._rdiv_fixed_divisor(c_tab) == tensor_rows(up[:, bot], y)).all():
            return f"division by the constant-style map fails at y={y}"
        c_idx = H.index_of(c_map(L, L, y))
        if not (H._ldiv_fixed_divisor(c_idx) == a_rows(st[:, y])).all():
            return f"co-division by the constant-style map fails at y={y}"
    for y in range(n):
        for x in range(n):
            e_tab = np.array(e_map(L, L, y, x).table, dtype=np.int16)
            if not (H._rdiv_fixed_divisor(e_tab) == tensor_rows(up[:, x], y)).all():
                return f"division by the e map fails at (y={y}, x={x})"
            e_idx = H.index_of(e_map(L, L, y, x))
            got = H._ldiv_fixed_divisor(e_idx)
            if not (got == tensor_rows_varying(x, st[:, y])).all():
                return f"co-division by the e map fails at (y={y}, x={x})"
            t_tab = np.array(tensor_over(L, L, y, x).table, dtype=np.int16)
            got = H._rdiv_fixed_divisor(t_tab)
            want = H._interior(L.meet[c_rows(up[:, x]), tensor_rows(up[:, bot], y)].astype(np.int16))
            if not (got == want).all():
                return f"division by the tensor fails at (y={y}, x={x})"
            t_idx = H.index_rows(t_tab[None, :])[0]
            got = H._ldiv_fixed_divisor(int(t_idx))
            want = H._interior(
                L.meet[a_rows(st[:, y]), tensor_rows_varying(x, st[:, top])].astype(np.int16)
            )
            if not (got == want).all():
                return f"co-division by the tensor fails at (y={y}, x={x})"
            reduced_rows = np.flatnonzero(up[:, bot] == bot)
            if reduced_rows.size:
                red = np.where(L.leq[:, y][None, :], np.int16(bot), up[reduced_rows, x][:, None].astype(np.int16))
                full = H._rdiv_fixed_divisor(t_tab)[reduced_rows]
                if not (full == red).all():
                    return f"reduced tensor division fails at (y={y}, x={x})"
            reduced_rows = np.flatnonzero(st[:, top] == top)
            if reduced_rows.size:
                red = np.where(L.leq.T[st[reduced_rows, y].astype(np.int64)], np.int16(bot), np.int16(x))
                full = H._ldiv_fixed_divisor(int(t_idx))[reduced_rows]
                if not (full == red).all():
                    return f"reduced tensor co-division fails at (y={y}, x={x})"
    return None


# -- cyclic / dualizing / tight-structure checks ------------------------------------------


def check_girard_cyclic(ctx: _Ctx):
    H = ctx.homset
    L = ctx.L
    cd = is_completely_distributive(L)
    cyc = set(find_cyclic(H))
    duals = set(find_dualizing(H))
    o_idx = H.index_rows(raney_down_tables(L, np.arange(L.n, dtype=np.int16)[None, :]))[0]
    if is_girard(H) != cd:
        return "self-duality of the homset disagrees with complete distributivity"
    if cd:
        if int(o_idx) not in duals or int(o_idx) not in cyc:
            return "transform of the identity is not cyclic dualizing on a distributive lattice"
    else:
        if duals:
            return f"dualizing members {sorted(duals)} found on a non-distributive lattice"
        if cyc != {H.top_index}:
            return f"cyclic set {sorted(cyc)} is not just the top member"
    return None


def check_dualizing_structure(ctx: _Ctx):
    H = ctx.homset
    L = ctx.L
    cd = is_completely_distributive(L)
    duals = find_dualizing(H)
    if duals and not cd:
        return "dualizing member exists although the lattice is not distributive"
    star_tabs = H.tables[H.star_indices.astype(np.int64)]
    perm = (np.sort(star_tabs, axis=1) == np.arange(L.n)[None, :]).all(axis=1)
    if cd:
        if set(duals) != set(int(i) for i in np.flatnonzero(perm)):
            return "dualizing members differ from those whose star is invertible"
        try:
            auts = automorphisms(L)
        except SearchCapExceeded as e:
            raise _Skip(str(e))
        if len(duals) != len(auts):
            return f"{len(duals)} dualizing members vs {len(auts)} automorphisms"
        for i in duals:
            f = H.map_at(i)
            st = star(f)
            up_tab = raney_up_tables(L, H.tables[i][None, :])[0]
            if tuple(int(up_tab[st.table[t]]) for t in range(L.n)) != tuple(range(L.n)):
                return f"star and up transform of member {i} are not mutually inverse"
            if tuple(int(st.table[up_tab[t]]) for t in range(L.n)) != tuple(range(L.n)):
                return f"up transform and star of member {i} are not mutually inverse"
            g = dualizing_to_automorphism(H, i)
            if automorphism_to_dualizing(H, g) != i:
                return f"round trip through the automorphism differs for member {i}"
        for g in auts:
            i = automorphism_to_dualizing(H, g)
            if i not in duals:
                return f"automorphism {g} does not give a dualizing member"
            if dualizing_to_automorphism(H, i) != tuple(g):
                return f"round trip through the dualizing member differs for {g}"
    return None


def check_tight_unitality(ctx: _Ctx):
    H = ctx.homset_capped(MATRIX_CAP, "tight unit scan")
    cd = is_completely_distributive(ctx.L)
    unit = tight_has_unit(H)
    if cd and unit != H.identity_index:
        return f"unit of the tight members is {unit}, expected the identity"
    if not cd and unit is not None:
        return f"unexpected unit {unit} among the tight members"
    gap = conucleus_gap(H)
    if cd and gap is not None:
        return f"interior failed to respect composition at {gap}"
    if not cd and gap is None:
        return "interior respected all composites although the lattice is not distributive"
    return None


# -- structure-level checks --------------------------------------------------------------


def check_homset_irreducibles(ctx: _Ctx):
    H = ctx.homset_capped(TABLE_SCAN_CAP, "irreducible scan")
    rep = homset_irreducibles(H, cap=TABLE_SCAN_CAP)
    if not rep.meet_equals_tensors:
        return "meet-irreducibles differ from the elementary tensors"
    if not rep.e_within_join_irreducibles:
        return "an e map is not join-irreducible"
    if not rep.tensors_pairwise_distinct or not rep.e_pairwise_distinct:
        return "generator maps are not pairwise distinct"
    nj = len(rep.join_irreducible_indices)
    nm = len(rep.meet_irreducible_indices)
    if nm != rep.product_count:
        return f"{nm} meet-irreducibles vs {rep.product_count} tensor pairs"
    if is_distributive(ctx.L):
        if nj != rep.product_count:
            return f"{nj} join-irreducibles on a distributive lattice, expected {rep.product_count}"
    elif nj <= rep.product_count:
        return f"only {nj} join-irreducibles on a non-distributive lattice"
    return None


def check_autodual(ctx: _Ctx):
    H = ctx.homset
    rep = autodual_report(H, cap=ctx.config.max_autodual)
    if rep.verdict == "inconclusive":
        raise _Skip(rep.reason)
    cd = is_distributive(ctx.L)
    if rep.verdict == "autodual":
        if not cd:
            return "order-reversing bijection found on a non-distributive lattice"
        w = np.array(rep.witness)
        leq = H.leq_matrix()
        if sorted(rep.witness) != list(range(H.m)) or not (leq[np.ix_(w, w)] == leq.T).all():
            return "autoduality witness is not an order-reversing bijection"
    elif cd:
        return "distributive lattice reported as not autodual"
    return None


def check_natural_arrows(ctx: _Ctx):
    H = ctx.homset_capped(TABLE_SCAN_CAP, "naturality classification")
    res = classify_natural(H)
    expected = 1 if ctx.L.n == 1 else 2
    if res.count != expected:
        return f"{res.count} natural families, expected {expected}"
    labels = sorted(f.label for f in res.natural)
    if ctx.L.n > 1 and labels != ["raney", "trivial"]:
        return f"unexpected family labels {labels}"
    return None


def check_abstract_raney(ctx: _Ctx):
    H = ctx.homset_capped(TABLE_SCAN_CAP, "two-valued family scan")
    v = abstract_raney_check(H)
    if not v.chain_image:
        return "canonical family does not have chain image"
    if v.identity_in_image != v.completely_distributive:
        return (
            f"identity in image says {v.identity_in_image}, "
            f"distributivity says {v.completely_distributive}"
        )
    if not v.implication_holds:
        return "two-valued family implication fails"
    return None


# -- weakening-relation checks (need the generating poset) ----------------------------------


def check_wk_bijection(ctx: _Ctx):
    P = ctx.poset
    D = downset_lattice(P)
    H = enumerate_homset(D, cap=ctx.config.max_homset)
    seen = set()
    for i in range(H.m):
        f = LatticeMap(D, D, H.tables[i])
        R = wk_from_supmap(P, f)
        if supmap_from_wk(R).table != f.table:
            return f"relation round trip differs for map {i}"
        seen.add(R.pairs)
    if len(seen) != H.m:
        return "map-to-relation translation is not injective"
    total = 0
    n = P.n
    cells = list(itertools.product(range(n), repeat=2))
    for bits in range(1 << len(cells)):
        chosen = {cells[k] for k in range(len(cells)) if bits >> k & 1}
        if all(
            (y2, x2) in chosen
            for (y, x) in chosen
            for y2 in range(n)
            for x2 in range(n)
            if P.leq[y2, y] and P.leq[x, x2]
        ):
            total += 1
            if chosen and frozenset(chosen) not in seen:
                return "a weakening relation is not reached by any map"
    if total != H.m:
        return f"{total} weakening relations vs {H.m} maps"
    below = frozenset((y, x) for y in range(n) for x in range(n) if P.leq[y, x])
    if wk_from_supmap(P, identity_map(D)).pairs != below:
        return "identity map does not give the order relation"
    not_above = frozenset((y, x) for y in range(n) for x in range(n) if not P.leq[x, y])
    if wk_from_supmap(P, raney_down(identity_map(D))).pairs != not_above:
        return "down transform of the identity does not give the complement relation"
    return None


def check_wk_composition(ctx: _Ctx):
    P = ctx.poset
    D = downset_lattice(P)
    H = enumerate_homset(D, cap=ctx.config.max_homset)
    n = P.n
    relations = [wk_from_supmap(P, LatticeMap(D, D, H.tables[i])) for i in range(H.m)]
    rels = np.zeros((H.m, n, n), dtype=np.int32)
    for i, R in enumerate(relations):
        for (y, x) in R.pairs:
            rels[i, y, x] = 1
    tabs = H.tables.astype(np.int64)
    for i in range(H.m):
        comp_idx = H.index_rows(H.tables[i][tabs])
        rel_comp = (rels[i] @ rels) > 0
        if not (rel_comp == (rels[comp_idx] > 0)).all():
            j = int(np.argwhere((rel_comp != (rels[comp_idx] > 0)).any(axis=(1, 2)))[0][0])
            return f"relational composition differs from map composition at ({i}, {j})"
    rng = np.random.default_rng(11)
    pairs = rng.integers(0, H.m, size=(min(400, H.m * H.m), 2))
    for i, j in pairs:
        composed = wk_compose(relations[i], relations[j])
        want = frozenset(
            (int(y), int(x))
            for y, x in np.argwhere((rels[i] @ rels[j]) > 0)
        )
        if composed.pairs != want:
            return f"pair composition differs from the matrix product at ({i}, {j})"
    return None


def check_wk_automorphism_dualizing(ctx: _Ctx):
    P = ctx.poset
    D = downset_lattice(P)
    H = enumerate_homset(D, cap=ctx.config.max_homset)
    duals = set(find_dualizing(H))
    for g in P.automorphisms():
        R = wk_from_automorphism(P, g)
        want = frozenset(
            (y, x) for y in range(P.n) for x in range(P.n) if not P.leq[x, g[y]]
        )
        if R.pairs != want:
            return f"automorphism relation has wrong pairs for {g}"
        f = supmap_from_wk(R)
        if H.index_of(f) not in duals:
            return f"relation of automorphism {g} is not dualizing"
        if star(f).table != downset_automorphism(P, g).table:
            return f"star of the relation map differs from the induced automorphism for {g}"
    return None


# -- catalog -------------------------------------------------------------------------------


CHECKS: list[tuple[str, object]] = [
    ("lattice-axioms", check_lattice_axioms),
    ("dual-involution", check_dual_involution),
    ("distributivity-agreement", check_distributivity_agreement),
    ("downset-irreducibles", check_downset_irreducibles),
    ("galois-adjunction", check_galois_adjunction),
    ("generator-relations", check_generator_relations),
    ("tensor-meet-decomposition", check_tensor_meet_decomposition),
    ("infmap-join-decomposition", check_infmap_join_decomposition),
    ("sup-interior-props", check_sup_interior_props),
    ("raney-adjunction", check_raney_adjunction),
    ("raney-transform-exchange", check_raney_transform_exchange),
    ("naturality-generators", check_naturality_generators),
    ("naturality-composite", check_naturality_composite),
    ("tight-subset", check_tight_subset),
    ("cd-raney", check_cd_raney),
    ("residual-adjunction", check_residual_adjunction),
    ("division-formulas", check_division_formulas),
    ("girard-cyclic", check_girard_cyclic),
    ("dualizing-structure", check_dualizing_structure),
    ("tight-unitality", check_tight_unitality),
    ("homset-irreducibles", check_homset_irreducibles),
    ("autodual", check_autodual),
    ("natural-arrows", check_natural_arrows),
    ("abstract-raney", check_abstract_raney),
]

POSET_CHECKS: list[tuple[str, object]] = [
    ("wk-bijection", check_wk_bijection),
    ("wk-composition", check_wk_composition),
    ("wk-automorphism-dualizing", check_wk_automorphism_dualizing),
]

ALL_CHECK_IDS = [cid for cid, _ in CHECKS] + [cid for cid, _ in POSET_CHECKS]


def _summary_flags(ctx: _Ctx) -> dict:
    L = ctx.L
    flags: dict = {"is_CD": is_distributive(L)}
    try:
        H = ctx.homset
        flags["is_girard"] = is_girard(H)
        flags["dualizing_count"] = len(find_dualizing(H))
    except _Skip:
        flags["is_girard"] = None
        flags["dualizing_count"] = None
    try:
        flags["automorphism_count"] = len(automorphisms(L))
    except SearchCapExceeded:
        flags["automorphism_count"] = None
    try:
        H = ctx.homset
        if H.m <= MATRIX_CAP:
            flags["tight_unital"] = tight_has_unit(H) is not None
        else:
            flags["tight_unital"] = None
    except _Skip:
        flags["tight_unital"] = None
    try:
        flags["autodual_verdict"] = autodual_report(ctx.homset, cap=ctx.config.max_autodual).verdict
    except _Skip:
        flags["autodual_verdict"] = "inconclusive"
    return flags


def run_suite(
    L: Lattice,
    config: SuiteConfig | None = None,
    name: str = "lattice",
    poset: Poset | None = None,
) -> Report:
    """Run the named checks against one lattice and collect a report."""
    config = config or SuiteConfig()
    ctx = _Ctx(L, config, poset=poset)
    catalog = list(CHECKS)
    if poset is not None:
        catalog += POSET_CHECKS
    if config.checks is not None:
        unknown = [c for c in config.checks if c not in ALL_CHECK_IDS]
        if unknown:
            raise ValueError(f"unknown check ids: {', '.join(unknown)}")
        catalog = [(cid, fn) for cid, fn in catalog if cid in config.checks]
    results = []
    for cid, fn in catalog:
        t0 = time.perf_counter()
        try:
            witness = fn(ctx)
            status = "pass" if witness is None else "fail"
            reason = None
        except _Skip as s:
            status, witness, reason = "skipped", None, s.reason
        except (CapExceeded, SearchCapExceeded) as s:
            status, witness, reason = "skipped", None, str(s)
        results.append(
            CheckResult(
                check_id=cid,
                status=status,
                witness=witness,
                reason=reason,
                elapsed=time.perf_counter() - t0,
            )
        )
    return Report(
        name=name,
        size=L.n,
        hash=L.hash_id,
        results=results,
        summary=_summary_flags(ctx),
    )


# -- abstract quantale suite ------------------------------------------------------------


def _m5_axioms():
    m5_quantale()
    return None


def _m5_unit():
    Q = m5_quantale()
    u = Q.unit()
    if u != list(Q.carrier.names).index("u"):
        return f"unit is {u}"
    return None


def _m5_residual_adjunction():
    Q = m5_quantale()
    L = Q.carrier
    for x in range(L.n):
        for y in range(L.n):
            under, over = q_residuals(Q, x, y)
            for z in range(L.n):
                if bool(L.leq[Q.mult[x, z], y]) != bool(L.leq[z, under]):
                    return f"left residual adjunction fails at ({x}, {y}, {z})"
                if bool(L.leq[Q.mult[z, x], y]) != bool(L.leq[z, over]):
                    return f"right residual adjunction fails at ({x}, {y}, {z})"
    return None


def _m5_cyclic_dualizing():
    Q = m5_quantale()
    d = list(Q.carrier.names).index("d")
    cyc = q_cyclic(Q)
    if cyc != [i for i in range(Q.carrier.n) if i != d]:
        return f"cyclic members {cyc}"
    if q_dualizing(Q) != [d]:
        return f"dualizing members {q_dualizing(Q)}"
    return None


def _m5_unit_from_dualizing():
    Q = m5_quantale()
    n = Q.carrier.n
    for d in q_dualizing(Q):
        u, _ = q_residuals(Q, d, d)
        if Q.mult[u].tolist() != list(range(n)) or Q.mult[:, u].tolist() != list(range(n)):
            return f"self-division of dualizing member {d} gives non-unit {u}"
    return None


M5_CHECKS: list[tuple[str, object]] = [
    ("m5-axioms", _m5_axioms),
    ("m5-unit", _m5_unit),
    ("m5-residual-adjunction", _m5_residual_adjunction),
    ("m5-cyclic-dualizing", _m5_cyclic_dualizing),
    ("m5-unit-from-dualizing", _m5_unit_from_dualizing),
]


def run_m5_suite(checks: tuple[str, ...] | None = None) -> Report:
    """Checks for the hard-coded seven-element quantale."""
    catalog = list(M5_CHECKS)
    if checks is not None:
        unknown = [c for c in checks if c not in {cid for cid, _ in M5_CHECKS}]
        if unknown:
            raise ValueError(f"unknown check ids: {', '.join(unknown)}")
        catalog = [(cid, fn) for cid, fn in catalog if cid in checks]
    Q = m5_quantale()
    results = []
    for cid, fn in catalog:
        t0 = time.perf_counter()
        try:
            witness = fn()
            status = "pass" if witness is None else "fail"
            reason = None
        except Exception as e:  # validation errors are failures with witnesses
            status, witness, reason = "fail", str(e), None
        results.append(
            CheckResult(cid, status, witness=witness, reason=reason,
                        elapsed=time.perf_counter() - t0)
        )
    d = list(Q.carrier.names).index("d")
    summary = {
        "unit": Q.unit(),
        "cyclic_count": len(q_cyclic(Q)),
        "dualizing_count": len(q_dualizing(Q)),
        "non_cyclic": [i for i in range(Q.carrier.n) if i not in q_cyclic(Q)],
        "dualizing": q_dualizing(Q),
    }
    return Report(
        name="m5-quantale",
        size=Q.carrier.n,
        hash=Q.carrier.hash_id,
        results=results,
        summary=summary,
    )


# -- corpus --------------------------------------------------------------------------------


def corpus() -> list[tuple[str, Lattice, Poset | None]]:
    """The reference collection: chains, boolean cubes, the three modular /
    non-modular examples, and downset lattices of every order with at most
    three points."""
    entries: list[tuple[str, Lattice, Poset | None]] = []
    for k in range(1, 6):
        entries.append((f"chain{k}", make_chain(k), None))
    for k in range(1, 4):
        entries.append((f"boolean{k}", make_boolean(k), None))
    entries.append(("m3", make_mk(3), None))
    entries.append(("m5", make_mk(5), None))
    entries.append(("n5", make_n5(), None))
    posets = [
        ("point", Poset(np.ones((1, 1), dtype=bool))),
        ("antichain2", Poset(np.eye(2, dtype=bool))),
        ("chain2", Poset.from_covers(2, [(0, 1)])),
        ("antichain3", Poset(np.eye(3, dtype=bool))),
        ("chain3", Poset.from_covers(3, [(0, 1), (1, 2)])),
        ("vee", Poset.from_covers(3, [(0, 1), (0, 2)])),
        ("wedge", Poset.from_covers(3, [(0, 2), (1, 2)])),
        ("chain2-plus-point", Poset.from_covers(3, [(0, 1)])),
    ]
    for pname, P in posets:
        entries.append((f"downset-{pname}", downset_lattice(P), P))
    return entries


# -- rendering -----------------------------------------------------------------------------


def report_to_json(reports: list[Report]) -> str:
    doc = {"reports": [r.to_doc() for r in reports]}
    return json.dumps(doc, indent=2) + "\n"


def report_to_text(reports: list[Report]) -> str:
    lines = []
    for r in reports:
        lines.append(f"== {r.name} (size {r.size}, hash {r.hash}) ==")
        flags = " ".join(f"{k}={json.dumps(v)}" for k, v in r.summary.items())
        lines.append(f"summary: {flags}")
        for c in r.results:
            if c.status == "pass":
                lines.append(f"[PASS] {c.check_id} ({c.elapsed:.3f}s)")
            elif c.status == "fail":
                lines.append(f"[FAIL] {c.check_id}: {c.witness}")
            else:
                lines.append(f"[SKIP] {c.check_id}: {c.reason}")
        if r.results:
            passed = sum(1 for c in r.results if c.status == "pass")
            lines.append(f"{passed} passed, {r.failed} failed, {r.skipped} skipped")
        lines.append("")
    return "\n".join(lines)
