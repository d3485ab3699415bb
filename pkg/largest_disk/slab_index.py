"""
Persistent slab search over pairwise non-crossing y-monotone curves.

The plane is cut into horizontal slabs at every curve endpoint height.
Curves get one global left-to-right rank (consistent inside every slab), and
the set of curves alive in each slab is one version of a treap keyed by that
rank. The treap is made partially persistent by node copying: every node
carries one spare child slot stamped with the version that filled it, and a
node is copied only when its slot is already taken. A treap update changes
O(1) child pointers in expectation, so the whole history takes linear space.

Queries locate the slab by binary search and descend that slab's version:
`first_right` finds the nearest curve strictly right of a point. For a closed
boundary whose chains keep the interior on their left, the direction of that
curve answers point-in-region.
"""

import logging
import sys
from bisect import bisect_right
from graphlib import CycleError, TopologicalSorter
from typing import Protocol, Sequence

import numpy as np
from sortedcontainers import SortedList

from largest_disk.errors import DegenerateInput

logger = logging.getLogger(__name__)

NIL = -1
LEFT, RIGHT = 0, 1
LATEST = sys.maxsize
TABLES = ("ys", "roots", "curve", "left", "right", "mod_version", "mod_side", "mod_child")


class MonotoneCurve(Protocol):
    @property
    def y_min(self) -> float: ...

    @property
    def y_max(self) -> float: ...

    def x_at(self, y: float) -> float: ...


class _Height:
    """Middle height of the slab being swept."""
    y = 0.0


class _Ranked:
    """A curve in the sweep status, ordered by x at the current slab's middle."""
    __slots__ = ("index", "curve", "height")

    def __init__(self, index: int, curve: MonotoneCurve, height: _Height):
        self.index = index
        self.curve = curve
        self.height = height

    def __lt__(self, other: "_Ranked") -> bool:
        xa, xb = self.curve.x_at(self.height.y), other.curve.x_at(self.height.y)
        return xa < xb if xa != xb else self.index < other.index


class SlabIndex:
    """Immutable after construction; safe for concurrent readers."""

    def __init__(self, curves: Sequence[MonotoneCurve]):
        self.curves = list(curves)
        self.ys: list[float] = []
        self.roots: list[int] = []
        # node tables: base fields plus one versioned spare child slot
        self.curve: list[int] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.mod_version: list[int] = []
        self.mod_side: list[int] = []
        self.mod_child: list[int] = []
        if self.curves:
            self._build()

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def _events(self) -> tuple[list[float], dict[float, list[int]], dict[float, list[int]]]:
        starts: dict[float, list[int]] = {}
        ends: dict[float, list[int]] = {}
        for i, c in enumerate(self.curves):
            lo, hi = c.y_min, c.y_max
            if hi <= lo:
                continue  # zero height: never strictly crossed by a horizontal ray
            starts.setdefault(lo, []).append(i)
            ends.setdefault(hi, []).append(i)
        ys = sorted(set(starts) | set(ends))
        return ys, starts, ends

    def _global_order(self, ys, starts, ends) -> list[int]:
        """Rank curves left to right; adjacency in any slab gives an order edge."""
        graph: TopologicalSorter = TopologicalSorter()
        height = _Height()
        ranked = [_Ranked(i, c, height) for i, c in enumerate(self.curves)]
        active = SortedList()
        for k, y in enumerate(ys):
            # Removals compare at the middle of the slab below y.
            for i in ends.get(y, ()):
                try:
                    p = active.index(ranked[i])
                except ValueError as e:
                    raise DegenerateInput(f"curve {i} crosses its neighbours below y={y}") from e
                del active[p]
                if 0 < p < len(active):
                    graph.add(active[p].index, active[p - 1].index)
            if k + 1 == len(ys):
                break
            # Survivors are non-crossing, so their order holds in the slab above.
            height.y = 0.5 * (y + ys[k + 1])
            for i in starts.get(y, ()):
                graph.add(i)
                active.add(ranked[i])
                p = active.index(ranked[i])
                if p > 0:
                    graph.add(i, active[p - 1].index)
                if p + 1 < len(active):
                    graph.add(active[p + 1].index, i)
        try:
            return list(graph.static_order())
        except CycleError as e:
            logger.warning("curves cannot be ordered left to right: %s", e.args[1])
            raise DegenerateInput("curves cross or touch inside a slab") from e

    def _build(self) -> None:
        ys, starts, ends = self._events()
        order = self._global_order(ys, starts, ends)
        tree = _TreapBuilder(self, {curve: r for r, curve in enumerate(order)})
        for version, y in enumerate(ys):
            tree.version = version
            for i in ends.get(y, ()):
                tree.delete(i)
            for i in starts.get(y, ()):
                tree.insert(i)
            self.ys.append(y)
            self.roots.append(tree.root_node())
        logger.debug(
            "slab index: %d curves, %d slabs, %d nodes", len(order), len(self.ys), len(self.curve)
        )

    def _node(self, curve: int, left: int, right: int) -> int:
        self.curve.append(curve)
        self.left.append(left)
        self.right.append(right)
        self.mod_version.append(NIL)
        self.mod_side.append(LEFT)
        self.mod_child.append(NIL)
        return len(self.curve) - 1

    def child(self, node: int, side: int, version: int) -> int:
        """Child pointer of `node` as seen by `version`."""
        if self.mod_version[node] != NIL and self.mod_version[node] <= version and self.mod_side[node] == side:
            return self.mod_child[node]
        return self.left[node] if side == LEFT else self.right[node]

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def _root_at(self, y: float) -> tuple[int, int, int]:
        """(root, version, comparisons) of the slab containing y (boundaries belong to the slab above)."""
        k = bisect_right(self.ys, y) - 1
        comparisons = max(len(self.ys), 1).bit_length()
        if k < 0 or k >= len(self.ys) - 1:
            return NIL, k, comparisons
        return self.roots[k], k, comparisons

    def first_right(self, x: float, y: float) -> tuple[int | None, int]:
        """(index of the nearest curve strictly right of (x, y) or None, comparisons)."""
        node, version, comparisons = self._root_at(y)
        best = None
        while node != NIL:
            comparisons += 1
            curve = self.curve[node]
            if self.curves[curve].x_at(y) > x:
                best = curve
                node = self.child(node, LEFT, version)
            else:
                node = self.child(node, RIGHT, version)
        return best, comparisons

    # ------------------------------------------------------------------
    # Size and serialization
    # ------------------------------------------------------------------

    @property
    def entry_count(self) -> int:
        return len(self.curve) + len(self.roots)

    def to_arrays(self) -> dict[str, np.ndarray]:
        return {
            name: np.asarray(getattr(self, name), dtype=np.float64 if name == "ys" else np.int64)
            for name in TABLES
        }

    @classmethod
    def from_arrays(cls, curves: Sequence[MonotoneCurve], arrays: dict[str, np.ndarray]) -> "SlabIndex":
        index = cls([])
        index.curves = list(curves)
        for name in TABLES:
            setattr(index, name, arrays[name].tolist())
        return index


class _TreapBuilder:
    """
    The latest version as an ordinary treap over curve ids, mirrored into
    the persistent node tables of `index` after every pointer change.
    """

    def __init__(self, index: SlabIndex, rank: dict[int, int]):
        self.index = index
        self.rank = rank
        m = len(index.curves)
        self.priority = np.random.default_rng(m).random(m).tolist()
        self.left = [NIL] * m
        self.right = [NIL] * m
        self.parent = [NIL] * m
        self.node = [NIL] * m  # latest persistent node of each curve
        self.born: list[int] = []
        self.root = NIL
        self.version = 0

    def root_node(self) -> int:
        return NIL if self.root == NIL else self.node[self.root]

    # -- persistent mirror ---------------------------------------------

    def _new_node(self, curve: int, left: int, right: int) -> int:
        node = self.index._node(curve, left, right)
        self.born.append(self.version)
        self.node[curve] = node
        return node

    def _persist(self, curve: int, side: int) -> None:
        """Make the latest node of `curve` point at its current child on `side`."""
        idx = self.index
        kid = (self.left if side == LEFT else self.right)[curve]
        target = NIL if kid == NIL else self.node[kid]
        node = self.node[curve]
        if idx.child(node, side, LATEST) == target:
            return
        if self.born[node] == self.version:
            (idx.left if side == LEFT else idx.right)[node] = target
            return
        slot = idx.mod_version[node]
        if slot == NIL or (slot == self.version and idx.mod_side[node] == side):
            idx.mod_version[node] = self.version
            idx.mod_side[node] = side
            idx.mod_child[node] = target
            return
        # Slot taken: copy the node with its latest children and repoint the parent.
        left, right = idx.child(node, LEFT, LATEST), idx.child(node, RIGHT, LATEST)
        if side == LEFT:
            left = target
        else:
            right = target
        self._new_node(curve, left, right)
        up = self.parent[curve]
        if up != NIL:
            self._persist(up, LEFT if self.left[up] == curve else RIGHT)

    def _sync(self, curve: int) -> None:
        self._persist(curve, LEFT)
        self._persist(curve, RIGHT)

    # -- treap ---------------------------------------------------------

    def _rotate_up(self, c: int) -> None:
        p = self.parent[c]
        g = self.parent[p]
        if self.left[p] == c:
            moved = self.right[c]
            self.left[p] = moved
            self.right[c] = p
        else:
            moved = self.left[c]
            self.right[p] = moved
            self.left[c] = p
        if moved != NIL:
            self.parent[moved] = p
        self.parent[p] = c
        self.parent[c] = g
        if g == NIL:
            self.root = c
        elif self.left[g] == p:
            self.left[g] = c
        else:
            self.right[g] = c
        self._sync(p)
        self._sync(c)
        if g != NIL:
            self._sync(g)

    def insert(self, c: int) -> None:
        self.left[c] = self.right[c] = NIL
        self._new_node(c, NIL, NIL)
        if self.root == NIL:
            self.root, self.parent[c] = c, NIL
            return
        at = self.root
        while True:
            side = LEFT if self.rank[c] < self.rank[at] else RIGHT
            links = self.left if side == LEFT else self.right
            if links[at] == NIL:
                links[at] = c
                break
            at = links[at]
        self.parent[c] = at
        self._persist(at, side)
        while self.parent[c] != NIL and self.priority[c] > self.priority[self.parent[c]]:
            self._rotate_up(c)

    def delete(self, c: int) -> None:
        while self.left[c] != NIL or self.right[c] != NIL:
            lo, hi = self.left[c], self.right[c]
            if hi == NIL or (lo != NIL and self.priority[lo] > self.priority[hi]):
                self._rotate_up(lo)
            else:
                self._rotate_up(hi)
        p = self.parent[c]
        self.parent[c] = NIL
        if p == NIL:
            self.root = NIL
            return
        side = LEFT if self.left[p] == c else RIGHT
        (self.left if side == LEFT else self.right)[p] = NIL
        self._persist(p, side)
