"""Finite complete lattices and posets with precomputed operation tables.

Elements are dense indices 0..n-1.  The order relation is stored as a
boolean matrix and binary join/meet as n x n index tables, so the
exhaustive checks elsewhere in the package pay O(1) per operation.
"""
from __future__ import annotations

import hashlib
import json

import numpy as np

MAX_LATTICE_SIZE = 64
MAX_DOWNSET_LATTICE_SIZE = 4096
AUTOMORPHISM_NODE_CAP = 2_000_000


class LatticeError(Exception):
    """Base error for order-structure construction and search failures."""


class NotAPartialOrder(LatticeError):
    """Input relation is not reflexive, antisymmetric and transitive."""


class NotALattice(LatticeError):
    """Some pair of elements lacks a least upper or greatest lower bound."""


class NoBoundedElement(LatticeError):
    """Empty input: there is no bottom or top element."""


class SizeGuardExceeded(LatticeError):
    """A construction exceeded its configured size cap."""


class SearchCapExceeded(LatticeError):
    """An exhaustive search exceeded its node budget."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    diag = np.diagonal(leq)
    if not diag.all():
        i = int(np.flatnonzero(~diag)[0])
        raise NotAPartialOrder(f"relation is not reflexive at element {i}")
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        i, j = np.argwhere(sym)[0]
        raise NotAPartialOrder(
            f"relation is not antisymmetric: {int(i)} <= {int(j)} and {int(j)} <= {int(i)}"
        )
    # leq must already contain its own composite
    comp = (leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0
    bad = comp & ~leq
    if bad.any():
        i, k = np.argwhere(bad)[0]
        j = int(np.flatnonzero(leq[i] & leq[:, k])[0])
        raise NotAPartialOrder(
            f"relation is not transitive: {int(i)} <= {j} <= {int(k)} but not {int(i)} <= {int(k)}"
        )


class Poset:
    """A finite partial order on indices 0..n-1."""

    __slots__ = ("n", "leq", "names")

    def __init__(self, leq, names=None, *, _validated: bool = False):
        leq = np.array(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise ValueError("order matrix must be square")
        if not _validated:
            _check_partial_order(leq)
        self.n = int(leq.shape[0])
        self.leq = _freeze(leq)
        self.names = list(names) if names is not None else [str(i) for i in range(self.n)]
        if len(self.names) != self.n:
            raise ValueError("wrong number of element names")

    @classmethod
    def from_covers(cls, n: int, covers, names=None) -> "Poset":
        """Build a poset from strict cover pairs (lower, upper), taking the
        reflexive-transitive closure before validating."""
        reach = np.eye(n, dtype=bool)
        for pair in covers:
            i, j = int(pair[0]), int(pair[1])
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"cover pair ({i}, {j}) out of range")
            if i == j:
                raise NotAPartialOrder(f"cover pair ({i}, {j}) is a loop")
            reach[i, j] = True
        for k in range(n):
            reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
        sym = reach & reach.T & ~np.eye(n, dtype=bool)
        if sym.any():
            i, j = np.argwhere(sym)[0]
            raise NotAPartialOrder(f"cover relation has a cycle through {int(i)} and {int(j)}")
        return cls(reach, names, _validated=True)

    def dual(self) -> "Poset":
        return Poset(self.leq.T.copy(), self.names, _validated=True)

    def downset_masks(self) -> list[int]:
        """All down-closed subsets as bitmasks, ordered by (size, mask)."""
        if self.n > 20:
            raise SizeGuardExceeded(f"poset too large for downset enumeration: {self.n}")
        elem_down = [int(sum(1 << j for j in range(self.n) if self.leq[j, i])) for i in range(self.n)]
        closed = []
        for mask in range(1 << self.n):
            need = 0
            m = mask
            while m:
                low = m & -m
                need |= elem_down[low.bit_length() - 1]
                m ^= low
            if need == mask:
                closed.append(mask)
        closed.sort(key=lambda m: (bin(m).count("1"), m))
        return closed

    def downsets(self) -> list[frozenset]:
        return [frozenset(i for i in range(self.n) if mask >> i & 1) for mask in self.downset_masks()]

    def automorphisms(self) -> list[tuple[int, ...]]:
        return order_automorphisms(self.leq)

    def same_structure(self, other: "Poset") -> bool:
        return self.n == other.n and bool((self.leq == other.leq).all())


class Lattice:
    """A finite lattice: a bounded poset with total join and meet tables."""

    __slots__ = ("poset", "join", "meet", "bottom", "top", "_cache")

    def __init__(self, leq, names=None, *, join=None, meet=None, _validated: bool = False):
        if isinstance(leq, Poset):
            poset = leq if names is None else Poset(leq.leq, names, _validated=True)
        else:
            poset = Poset(leq, names, _validated=_validated)
        n = poset.n
        if n == 0:
            raise NoBoundedElement("a lattice needs at least one element")
        self.poset = poset
        if join is not None and meet is not None:
            self.join = _freeze(np.array(join, dtype=np.int16))
            self.meet = _freeze(np.array(meet, dtype=np.int16))
        else:
            self.join, self.meet = self._build_tables()
        bottoms = np.flatnonzero(poset.leq.all(axis=1))
        tops = np.flatnonzero(poset.leq.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise NoBoundedElement("lattice lacks a unique bottom or top")
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])
        self._cache = {}

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        leq = self.poset.leq
        n = self.poset.n
        # the lub of (i, j), when it exists, is the unique element whose
        # up-set equals the intersection of their up-sets; dually for glb
        by_upset = {leq[z].tobytes(): z for z in range(n)}
        by_downset = {leq[:, z].tobytes(): z for z in range(n)}
        join = np.zeros((n, n), dtype=np.int16)
        meet = np.zeros((n, n), dtype=np.int16)
        for i in range(n):
            for j in range(i, n):
                z = by_upset.get((leq[i] & leq[j]).tobytes())
                if z is None:
                    raise NotALattice(f"elements {i} and {j} have no least upper bound")
                join[i, j] = join[j, i] = z
                w = by_downset.get((leq[:, i] & leq[:, j]).tobytes())
                if w is None:
                    raise NotALattice(f"elements {i} and {j} have no greatest lower bound")
                meet[i, j] = meet[j, i] = w
        return _freeze(join), _freeze(meet)

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def names(self) -> list[str]:
        return self.poset.names

    def le(self, x: int, y: int) -> bool:
        return bool(self.poset.leq[x, y])

    def join_of(self, xs) -> int:
        acc = self.bottom
        for x in xs:
            acc = int(self.join[acc, x])
        return acc

    def meet_of(self, xs) -> int:
        acc = self.top
        for x in xs:
            acc = int(self.meet[acc, x])
        return acc

    # -- derived structure ------------------------------------------------

    @property
    def covers(self) -> np.ndarray:
        """covers[i, j] is True when j covers i."""
        got = self._cache.get("covers")
        if got is None:
            strict = self.leq & ~np.eye(self.n, dtype=bool)
            s = strict.astype(np.float32)
            got = _freeze(strict & ~((s @ s) > 0.5))
            self._cache["covers"] = got
        return got

    @property
    def upmask(self) -> np.ndarray:
        """upmask[i] packs the up-set of i into a uint64 (n <= 64 only)."""
        got = self._cache.get("upmask")
        if got is None:
            if self.n > 64:
                raise SizeGuardExceeded("bitmask tables need n <= 64")
            weights = (np.uint64(1) << np.arange(self.n, dtype=np.uint64))
            got = _freeze((self.leq * weights[None, :]).sum(axis=1, dtype=np.uint64))
            self._cache["upmask"] = got
        return got

    @property
    def downmask(self) -> np.ndarray:
        got = self._cache.get("downmask")
        if got is None:
            if self.n > 64:
                raise SizeGuardExceeded("bitmask tables need n <= 64")
            weights = (np.uint64(1) << np.arange(self.n, dtype=np.uint64))
            got = _freeze((self.leq.T * weights[None, :]).sum(axis=1, dtype=np.uint64))
            self._cache["downmask"] = got
        return got

    @property
    def incomparable_join_pairs(self) -> dict[int, list[tuple[int, int]]]:
        """For each x, the incomparable pairs (a, b), a < b, with a v b = x."""
        got = self._cache.get("ijp")
        if got is None:
            got = {x: [] for x in range(self.n)}
            for a in range(self.n):
                for b in range(a + 1, self.n):
                    if not self.leq[a, b] and not self.leq[b, a]:
                        got[int(self.join[a, b])].append((a, b))
            self._cache["ijp"] = got
        return got

    @property
    def descending_order(self) -> list[int]:
        """Elements sorted from top to bottom (by decreasing down-set size)."""
        got = self._cache.get("desc")
        if got is None:
            sizes = self.leq.sum(axis=0)
            got = sorted(range(self.n), key=lambda i: (-int(sizes[i]), i))
            self._cache["desc"] = got
        return got

    @property
    def hash_id(self) -> str:
        got = self._cache.get("hash")
        if got is None:
            h = hashlib.sha256()
            h.update(self.n.to_bytes(4, "big"))
            h.update(np.packbits(self.leq).tobytes())
            got = h.hexdigest()[:12]
            self._cache["hash"] = got
        return got

    def same_structure(self, other: "Lattice") -> bool:
        return (
            self.n == other.n
            and bool((self.leq == other.leq).all())
            and bool((self.join == other.join).all())
            and bool((self.meet == other.meet).all())
        )

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, hash={self.hash_id})"


# -- constructors ----------------------------------------------------------


def parse_lattice(text: str | bytes, max_size: int = MAX_LATTICE_SIZE) -> Lattice:
    """Parse a lattice from its JSON file format.

    Accepted shapes: {"elements": [names], "covers": [[i, j], ...]} with
    i covered by j, or {"leq": [[bool, ...], ...]} with optional names.
    Unknown keys are rejected.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ValueError("lattice file must be a JSON object")
    keys = set(doc)
    if not keys <= {"elements", "covers", "leq"}:
        raise ValueError(f"unknown keys in lattice file: {sorted(keys - {'elements', 'covers', 'leq'})}")
    if ("covers" in keys) == ("leq" in keys):
        raise ValueError("lattice file needs exactly one of 'covers' or 'leq'")
    names = doc.get("elements")
    if names is not None and not (isinstance(names, list) and all(isinstance(s, str) for s in names)):
        raise ValueError("'elements' must be a list of strings")
    if "covers" in keys:
        if names is None:
            raise ValueError("'covers' format requires 'elements'")
        n = len(names)
        if n > max_size:
            raise SizeGuardExceeded(f"lattice size {n} exceeds cap {max_size}")
        covers = doc["covers"]
        if not isinstance(covers, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(v, int) for v in p) for p in covers
        ):
            raise ValueError("'covers' must be a list of [int, int] pairs")
        if n == 0:
            raise NoBoundedElement("a lattice needs at least one element")
        return Lattice(Poset.from_covers(n, covers, names))
    rows = doc["leq"]
    if not isinstance(rows, list) or not all(
        isinstance(r, list) and all(isinstance(v, bool) for v in r) for r in rows
    ):
        raise ValueError("'leq' must be a list of lists of booleans")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("'leq' must be square")
    if n > max_size:
        raise SizeGuardExceeded(f"lattice size {n} exceeds cap {max_size}")
    if n == 0:
        raise NoBoundedElement("a lattice needs at least one element")
    if names is not None and len(names) != n:
        raise ValueError("wrong number of element names")
    return Lattice(np.array(rows, dtype=bool), names)


def serialize_lattice(L: Lattice) -> str:
    """Inverse of parse_lattice, in the covers format."""
    pairs = [[int(i), int(j)] for i, j in np.argwhere(L.covers)]
    doc = {"elements": list(L.names), "covers": pairs}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def make_chain(n: int) -> Lattice:
    if n < 1:
        raise ValueError("chain needs n >= 1")
    if n > MAX_LATTICE_SIZE:
        raise SizeGuardExceeded(f"lattice size {n} exceeds cap {MAX_LATTICE_SIZE}")
    idx = np.arange(n)
    leq = idx[:, None] <= idx[None, :]
    join = np.maximum(idx[:, None], idx[None, :]).astype(np.int16)
    meet = np.minimum(idx[:, None], idx[None, :]).astype(np.int16)
    return Lattice(leq, join=join, meet=meet, _validated=True)


def make_boolean(k: int) -> Lattice:
    if k < 0:
        raise ValueError("boolean lattice needs k >= 0")
    n = 1 << k
    if n > MAX_LATTICE_SIZE:
        raise SizeGuardExceeded(f"lattice size {n} exceeds cap {MAX_LATTICE_SIZE}")
    masks = np.arange(n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    join = (masks[:, None] | masks[None, :]).astype(np.int16)
    meet = (masks[:, None] & masks[None, :]).astype(np.int16)
    names = ["{" + ",".join(str(i) for i in range(k) if m >> i & 1) + "}" for m in masks]
    return Lattice(leq, names, join=join, meet=meet, _validated=True)


def make_mk(k: int, names=None) -> Lattice:
    """Height-two modular lattice: bottom, k pairwise-incomparable atoms, top."""
    if k < 0:
        raise ValueError("make_mk needs k >= 0")
    n = k + 2
    if n > MAX_LATTICE_SIZE:
        raise SizeGuardExceeded(f"lattice size {n} exceeds cap {MAX_LATTICE_SIZE}")
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    if names is None:
        names = ["bot"] + [f"a{i}" for i in range(1, k + 1)] + ["top"]
    return Lattice(leq, names)


def make_n5() -> Lattice:
    """The pentagon: bot < a < c < top and bot < b < top."""
    covers = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]
    return Lattice(Poset.from_covers(5, covers, ["bot", "a", "c", "b", "top"]))


def dual(L: Lattice) -> Lattice:
    """Order-reversed lattice on the same indices (join and meet swap)."""
    return Lattice(
        Poset(L.leq.T.copy(), L.names, _validated=True),
        join=L.meet.copy(),
        meet=L.join.copy(),
        _validated=True,
    )


def downset_lattice(P: Poset) -> Lattice:
    """Lattice of down-closed subsets of P, ordered by inclusion."""
    if P.n > 12 or (1 << P.n) > MAX_DOWNSET_LATTICE_SIZE:
        raise SizeGuardExceeded(f"downset lattice of a {P.n}-element poset exceeds cap")
    masks = P.downset_masks()
    arr = np.array(masks, dtype=np.int64)
    index_of = np.full(1 << P.n, -1, dtype=np.int64)
    index_of[arr] = np.arange(len(masks))
    leq = (arr[:, None] & ~arr[None, :]) == 0
    join = index_of[arr[:, None] | arr[None, :]].astype(np.int16)
    meet = index_of[arr[:, None] & arr[None, :]].astype(np.int16)
    names = ["{" + ",".join(P.names[i] for i in range(P.n) if m >> i & 1) + "}" for m in masks]
    return Lattice(leq, names, join=join, meet=meet, _validated=True)


# -- structure queries ------------------------------------------------------


def join_irreducibles(L: Lattice) -> list[int]:
    """Elements with exactly one lower cover."""
    counts = L.covers.sum(axis=0)
    return [int(x) for x in np.flatnonzero(counts == 1)]


def meet_irreducibles(L: Lattice) -> list[int]:
    """Elements with exactly one upper cover."""
    counts = L.covers.sum(axis=1)
    return [int(x) for x in np.flatnonzero(counts == 1)]


def is_distributive(L: Lattice) -> bool:
    for x in range(L.n):
        lhs = L.meet[x][L.join]
        row = L.meet[x]
        rhs = L.join[np.ix_(row, row)]
        if not (lhs == rhs).all():
            return False
    return True


def order_automorphisms(leq: np.ndarray, cap: int = AUTOMORPHISM_NODE_CAP) -> list[tuple[int, ...]]:
    """All order-preserving bijections with order-preserving inverse."""
    n = leq.shape[0]
    if n == 0:
        return [()]
    down = leq.sum(axis=0)
    up = leq.sum(axis=1)
    strict = leq & ~np.eye(n, dtype=bool)
    s = strict.astype(np.float32)
    child = strict & ~((s @ s) > 0.5)
    clow = child.sum(axis=0)
    cup = child.sum(axis=1)
    profile = [(int(down[i]), int(up[i]), int(clow[i]), int(cup[i])) for i in range(n)]
    cands = [[j for j in range(n) if profile[j] == profile[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: (len(cands[i]), i))
    sigma = [-1] * n
    used = [False] * n
    out: list[tuple[int, ...]] = []
    nodes = 0

    def place(k: int) -> None:
        nonlocal nodes
        if k == n:
            out.append(tuple(sigma))
            return
        i = order[k]
        for j in cands[i]:
            if used[j]:
                continue
            nodes += 1
            if nodes > cap:
                raise SearchCapExceeded(f"automorphism search exceeded {cap} nodes")
            ok = True
            for t in range(k):
                p = order[t]
                if leq[i, p] != leq[j, sigma[p]] or leq[p, i] != leq[sigma[p], j]:
                    ok = False
                    break
            if ok:
                sigma[i] = j
                used[j] = True
                place(k + 1)
                sigma[i] = -1
                used[j] = False

    place(0)
    out.sort()
    return out


def automorphisms(L: Lattice) -> list[tuple[int, ...]]:
    return order_automorphisms(L.leq)
