"""Ranked face lattices, flags, flag graphs and sections.

A :class:`FaceLattice` stores a finite ranked poset through its Hasse diagram.
Face ids are dense and canonical: sorted by rank, ties broken by the order in
which the caller supplied them, so id 0 is the least face and id ``N - 1`` the
greatest.  Faces of one rank therefore occupy a contiguous id range.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DiamondViolation, MissingBound, NotComparable, PolytopeError, RankSkip


class FaceLattice:
    """Immutable ranked poset given by cover relations.

    Parameters are already canonical; use :func:`build_lattice` for raw input.
    """

    def __init__(self, rank: int, face_rank, down, vertex_sets=None, keys=None):
        self.rank = int(rank)
        self.face_rank = np.asarray(face_rank, dtype=np.int64)
        self.down = tuple(tuple(sorted(d)) for d in down)
        up = [[] for _ in self.down]
        for hi, lows in enumerate(self.down):
            for lo in lows:
                up[lo].append(hi)
        self.up = tuple(tuple(u) for u in up)
        self.vertex_sets = None if vertex_sets is None else tuple(tuple(v) for v in vertex_sets)
        self.keys = None if keys is None else tuple(keys)
        counts = np.bincount(self.face_rank + 1, minlength=self.rank + 2)
        self._offsets = np.concatenate([[0], np.cumsum(counts)])
        self._cache = {}

    # basic accessors -------------------------------------------------------

    @property
    def n_faces(self) -> int:
        return len(self.down)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n_faces - 1

    def faces_of_rank(self, r: int) -> range:
        if r < -1 or r > self.rank:
            return range(0)
        return range(int(self._offsets[r + 1]), int(self._offsets[r + 2]))

    def covers(self) -> list[tuple[int, int]]:
        return [(lo, hi) for hi, lows in enumerate(self.down) for lo in lows]

    def vertices(self) -> range:
        return self.faces_of_rank(0)

    def __repr__(self):
        counts = [len(self.faces_of_rank(r)) for r in range(-1, self.rank + 1)]
        return f"FaceLattice(rank={self.rank}, f={tuple(counts)})"

    # order relation --------------------------------------------------------

    def below_bits(self) -> list[int]:
        """``below[g]`` is an int bitset of every face ``f <= g``; memoized."""
        if "below" not in self._cache:
            below = [0] * self.n_faces
            for g in range(self.n_faces):
                b = 1 << g
                for f in self.down[g]:
                    b |= below[f]
                below[g] = b
            self._cache["below"] = below
        return self._cache["below"]

    def leq(self, a: int, b: int) -> bool:
        if a == b:
            return True
        if self.face_rank[a] >= self.face_rank[b]:
            return False
        return bool(self.below_bits()[b] >> a & 1)

    def upset(self, a: int) -> list[int]:
        """Faces ``>= a`` in increasing id order."""
        seen = {a}
        frontier = [a]
        while frontier:
            nxt = []
            for f in frontier:
                for g in self.up[f]:
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(seen)

    def downset(self, b: int) -> list[int]:
        seen = {b}
        frontier = [b]
        while frontier:
            nxt = []
            for g in frontier:
                for f in self.down[g]:
                    if f not in seen:
                        seen.add(f)
                        nxt.append(f)
            frontier = nxt
        return sorted(seen)

    def interval(self, a: int, b: int) -> list[int]:
        if not self.leq(a, b):
            return []
        lo = self.upset(a)
        hi = set(self.downset(b))
        return [f for f in lo if f in hi]

    def between(self) -> dict[tuple[int, int], list[int]]:
        """Map (F, G) with rank gap two and F < G to the faces strictly between."""
        if "between" not in self._cache:
            table = defaultdict(list)
            for f in range(self.n_faces):
                for h in self.up[f]:
                    for g in self.up[h]:
                        table[(f, g)].append(h)
            self._cache["between"] = dict(table)
        return self._cache["between"]

    def vertex_bits(self) -> list[int]:
        """Bitset (over vertex positions 0..f_0-1) of the vertices below each face."""
        if "vbits" not in self._cache:
            v0 = self.faces_of_rank(0).start
            bits = [0] * self.n_faces
            for g in range(self.n_faces):
                if self.face_rank[g] == 0:
                    bits[g] = 1 << (g - v0)
                else:
                    b = 0
                    for f in self.down[g]:
                        b |= bits[f]
                    bits[g] = b
            self._cache["vbits"] = bits
        return self._cache["vbits"]


class SectionView(FaceLattice):
    """A section G/F re-indexed as a lattice of its own.

    ``parent_ids[i]`` is the face of the parent lattice that section face ``i``
    came from.
    """

    def __init__(self, rank, face_rank, down, parent_ids, bottom_face, top_face, vertex_sets=None):
        super().__init__(rank, face_rank, down, vertex_sets=vertex_sets)
        self.parent_ids = np.asarray(parent_ids, dtype=np.int64)
        self.bottom_face = bottom_face
        self.top_face = top_face


def build_lattice(
    rank: int,
    covers: Iterable[tuple[Hashable, Hashable]],
    ranks: Mapping[Hashable, int] | Sequence[int],
    vertex_sets: Mapping[Hashable, Iterable] | None = None,
) -> FaceLattice:
    """Build a canonical :class:`FaceLattice` from arbitrary face keys.

    ``ranks`` maps each face key to its rank (a sequence is read as a map from
    positions).  Canonical ids sort faces by rank, then by insertion order.
    """
    if not isinstance(ranks, Mapping):
        ranks = dict(enumerate(ranks))
    keys = list(ranks)
    for k in keys:
        r = ranks[k]
        if not -1 <= r <= rank:
            raise PolytopeError(f"face {k!r} has rank {r} outside -1..{rank}")
    order = sorted(range(len(keys)), key=lambda i: (ranks[keys[i]], i))
    new_id = {keys[i]: pos for pos, i in enumerate(order)}
    face_rank = [ranks[keys[i]] for i in order]

    n_bottom = face_rank.count(-1)
    n_top = face_rank.count(rank)
    if n_bottom != 1 or n_top != 1:
        raise MissingBound(f"need exactly one face of rank -1 and of rank {rank}, got {n_bottom} and {n_top}")

    down = [set() for _ in keys]
    for lo, hi in covers:
        try:
            a, b = new_id[lo], new_id[hi]
        except KeyError as exc:
            raise PolytopeError(f"cover refers to unknown face {exc.args[0]!r}") from None
        if face_rank[b] - face_rank[a] != 1:
            raise RankSkip(f"cover {lo!r} -> {hi!r} goes from rank {face_rank[a]} to {face_rank[b]}")
        down[b].add(a)

    has_up = [False] * len(keys)
    for b, lows in enumerate(down):
        for a in lows:
            has_up[a] = True
    top = len(keys) - 1
    for f in range(len(keys)):
        if f != 0 and not down[f]:
            raise MissingBound(f"face {keys[order[f]]!r} is minimal but not the least face")
        if f != top and not has_up[f]:
            raise MissingBound(f"face {keys[order[f]]!r} is maximal but not the greatest face")

    vs = None
    if vertex_sets is not None:
        vs = [tuple(sorted(vertex_sets.get(keys[i], ()))) for i in order]
    return FaceLattice(rank, face_rank, down, vertex_sets=vs, keys=[keys[i] for i in order])


# validation -------------------------------------------------------------------


@dataclass
class ValidationReport:
    unique_bounds: bool = True
    full_flags: bool = True
    diamond: bool = True
    strongly_flag_connected: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.unique_bounds and self.full_flags and self.diamond and self.strongly_flag_connected

    def __bool__(self):
        return self.ok


def validate_polytope(L: FaceLattice, max_failures: int = 20) -> ValidationReport:
    """Check the abstract polytope axioms and report every failing axiom."""
    rep = ValidationReport()
    n = L.rank
    if len(L.faces_of_rank(-1)) != 1 or len(L.faces_of_rank(n)) != 1:
        rep.unique_bounds = False
        rep.failures.append("least/greatest face not unique")
    for f in range(L.n_faces):
        if (f != L.bottom and not L.down[f]) or (f != L.top and not L.up[f]):
            rep.full_flags = False
            rep.failures.append(f"face {f} ends a maximal chain early")
            break

    for (a, c), mids in L.between().items():
        if len(mids) != 2:
            rep.diamond = False
            if len(rep.failures) < max_failures:
                rep.failures.append(f"diamond: {len(mids)} faces between {a} and {c}")
    if not (rep.diamond and rep.full_flags and rep.unique_bounds):
        rep.strongly_flag_connected = False
        rep.failures.append("strong flag-connectedness not checked (earlier axiom failed)")
        return rep

    bad = _disconnected_sections(L, max_failures)
    if bad:
        rep.strongly_flag_connected = False
        rep.failures.extend(f"section {lo}/{hi} has a disconnected flag graph" for lo, hi in bad)
    return rep


def _disconnected_sections(L: FaceLattice, limit: int) -> list[tuple[int, int]]:
    # Sections of rank <= 1 are connected once the diamond condition holds.
    between = L.between()
    rank = L.face_rank
    bad = []
    for f in range(L.n_faces):
        if rank[f] > L.rank - 3:
            break
        by_top = defaultdict(list)
        stack = [(f,)]
        while stack:
            chain = stack.pop()
            last = chain[-1]
            if rank[last] - rank[f] >= 3:
                by_top[last].append(chain)
            for g in L.up[last]:
                stack.append(chain + (g,))
        for g, chains in by_top.items():
            if not _chains_connected(chains, between):
                bad.append((f, g))
                if len(bad) >= limit:
                    return bad
    return bad


def _chains_connected(chains, between) -> bool:
    index = {c: i for i, c in enumerate(chains)}
    seen = bytearray(len(chains))
    seen[0] = 1
    todo = [chains[0]]
    count = 1
    while todo:
        c = todo.pop()
        for i in range(1, len(c) - 1):
            a, b = between[(c[i - 1], c[i + 1])]
            other = b if a == c[i] else a
            d = c[:i] + (other,) + c[i + 1 :]
            j = index[d]
            if not seen[j]:
                seen[j] = 1
                count += 1
                todo.append(d)
    return count == len(chains)


# flags ---------------------------------------------------------------------------


def _row_keys(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.int32)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


@dataclass
class FlagGraph:
    """Flags as rows of face ids (rank -1..n) and their i-adjacency table.

    ``adj[t, i]`` is the flag that differs from flag ``t`` exactly in its
    rank-``i`` face.
    """

    lattice: FaceLattice
    flags: np.ndarray
    adj: np.ndarray
    _sorted_keys: np.ndarray = field(default=None, repr=False)
    _order: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        keys = _row_keys(self.flags)
        self._order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order]

    def __len__(self):
        return len(self.flags)

    def index_of(self, rows) -> np.ndarray:
        """Flag indices of the given rows; -1 for rows that are not flags."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int32))
        keys = _row_keys(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        hit = self._sorted_keys[pos] == keys
        return np.where(hit, self._order[pos], -1)

    def act(self, face_perm) -> np.ndarray:
        """Permutation of flag indices induced by a face permutation."""
        images = np.asarray(face_perm)[self.flags]
        idx = self.index_of(images)
        if (idx < 0).any():
            raise PolytopeError("face map does not send flags to flags")
        return idx


def flags(L: FaceLattice) -> np.ndarray:
    """All flags as an array of shape (n_flags, n + 2), in lexicographic id order."""
    if "flags" in L._cache:
        return L._cache["flags"]
    out = []
    top_rank = L.rank
    stack = [(L.bottom,)]
    up = L.up
    rank = L.face_rank
    while stack:
        chain = stack.pop()
        last = chain[-1]
        if rank[last] == top_rank:
            out.append(chain)
            continue
        for g in reversed(up[last]):
            stack.append(chain + (g,))
    arr = np.array(out, dtype=np.int32).reshape(len(out), L.rank + 2)
    L._cache["flags"] = arr
    return arr


def flag_graph(L: FaceLattice) -> FlagGraph:
    if "flag_graph" in L._cache:
        return L._cache["flag_graph"]
    fl = flags(L)
    n = L.rank
    n_flags = len(fl)
    between = L.between()
    adj = np.empty((n_flags, max(n, 0)), dtype=np.int32)
    fg = FlagGraph(L, fl, adj)
    for i in range(n):
        swapped = fl.copy()
        col = swapped[:, i + 1]
        for t in range(n_flags):
            mids = between.get((int(fl[t, i]), int(fl[t, i + 2])), ())
            if len(mids) != 2:
                raise DiamondViolation(
                    f"flag {t} has {len(mids) - 1} faces {i}-adjacent between {fl[t, i]} and {fl[t, i + 2]}"
                )
            a, b = mids
            col[t] = b if a == fl[t, i + 1] else a
        adj[:, i] = fg.index_of(swapped)
    L._cache["flag_graph"] = fg
    return fg


# sections ------------------------------------------------------------------------


def section(L: FaceLattice, bottom: int, top: int) -> SectionView:
    """The section top/bottom as a lattice of rank rank(top) - rank(bottom) - 1."""
    if not L.leq(bottom, top):
        raise NotComparable(f"face {bottom} is not below face {top}")
    members = L.interval(bottom, top)
    idx = {f: i for i, f in enumerate(members)}
    shift = int(L.face_rank[bottom]) + 1
    down = [[idx[g] for g in L.down[f] if g in idx] if f != bottom else [] for f in members]
    vs = None
    if L.vertex_sets is not None and bottom == L.bottom:
        vs = [L.vertex_sets[f] for f in members]
    return SectionView(
        int(L.face_rank[top]) - shift,
        [int(L.face_rank[f]) - shift for f in members],
        down,
        members,
        bottom,
        top,
        vertex_sets=vs,
    )


def vertex_figure(L: FaceLattice, v: int) -> SectionView:
    return section(L, v, L.top)


def facet_as_polytope(L: FaceLattice, f: int) -> SectionView:
    return section(L, L.bottom, f)
