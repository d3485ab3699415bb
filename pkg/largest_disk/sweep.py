"""
Horizontal-line sweep over two families of y-monotone curves.

Red and blue curves enter the sweep at their lower end and leave at their
upper end (reversed when sweeping downward). The curves crossing the sweep
line are kept in a `SortedList` ordered by x at the current height, and only
curves that become neighbors in that order are tested against each other.
Two curves swap places at every interior crossing; red/blue crossings are
reported in sweep order. The callback may retire a red curve, after which it
leaves the status and its pending events are skipped.

Events are ordered by (y, x, kind) with end < crossing < start, so curves
meeting at a shared endpoint are resolved the same way on every run.
"""

import heapq
import logging
from itertools import count
from typing import Any, Callable, Sequence

from sortedcontainers import SortedList

logger = logging.getLogger(__name__)

END, CROSSING, START = 0, 1, 2
RED, BLUE = 0, 1

# (y_min, y_max, x_min, x_max)
Bounds = tuple[float, float, float, float]
# crossings(a, b) -> [(x, y, (param on a, param on b)), ...]
Crossings = Callable[[Any, Any], list[tuple[float, float, Any]]]
# on_crossing(red_index, blue_index, y, (param on red, param on blue)) -> retire red
OnCrossing = Callable[[int, int, float, Any], bool]


class _Cursor:
    """Sweep height shared by every status entry; the order is read at it."""

    def __init__(self, sign: float, eps: float):
        self.sign = sign
        self.eps = eps
        self.s = float("-inf")
        self.ahead = True

    def move(self, s: float, ahead: bool) -> None:
        self.s = s
        self.ahead = ahead

    def before(self, a: "_Entry", b: "_Entry") -> bool:
        y = self.sign * self.s
        xa, xb = a.curve.x_at(y), b.curve.x_at(y)
        if abs(xa - xb) > self.eps:
            return xa < xb
        # Tied at the sweep line: look just past it, or just before it when
        # the tied pair is about to be taken out.
        if self.ahead:
            target = min(a.s_last, b.s_last)
            room = target - self.s
        else:
            target = max(a.s_first, b.s_first)
            room = self.s - target
        if room > self.eps:
            y = self.sign * 0.5 * (self.s + target)
            xa, xb = a.curve.x_at(y), b.curve.x_at(y)
            if xa != xb:
                return xa < xb
        return (a.color, a.index) < (b.color, b.index)


class _Entry:
    __slots__ = ("color", "index", "curve", "s_first", "s_last", "cursor", "live", "done", "retired")

    def __init__(self, color: int, index: int, curve: Any, s_first: float, s_last: float, cursor: _Cursor):
        self.color = color
        self.index = index
        self.curve = curve
        self.s_first = s_first
        self.s_last = s_last
        self.cursor = cursor
        self.live = False
        self.done = False
        self.retired = False

    def __lt__(self, other: "_Entry") -> bool:
        return self.cursor.before(self, other)

    def interior(self, s: float, eps: float) -> bool:
        return self.s_first + eps < s < self.s_last - eps


def overlay_sweep(
    red: Sequence[Any],
    blue: Sequence[Any],
    red_bounds: Sequence[Bounds],
    blue_bounds: Sequence[Bounds],
    crossings: Crossings,
    on_crossing: OnCrossing,
    descending: bool = False,
    eps: float = 1e-9,
) -> int:
    """
    Run the sweep and return the number of events processed.

    Curves must provide `x_at(y)`. Blue curves must be pairwise non-crossing;
    red curves may cross each other, which only reorders them. `crossings(a, b)`
    is called with the red curve first for red/blue pairs, and
    `on_crossing(red_index, blue_index, y, params)` receives the params it
    returned for that point, in sweep order. Returning True retires the red
    curve.
    """
    sign = -1.0 if descending else 1.0
    cursor = _Cursor(sign, eps)
    status = SortedList()
    boxes = (red_bounds, blue_bounds)
    queue: list[tuple] = []
    seq = count()
    paired: set[tuple[int, int, int, int]] = set()

    for color, curves in ((RED, red), (BLUE, blue)):
        for i, (curve, (y_min, y_max, _, _)) in enumerate(zip(curves, boxes[color])):
            first, last = (y_max, y_min) if descending else (y_min, y_max)
            entry = _Entry(color, i, curve, sign * first, sign * last, cursor)
            queue.append((sign * first, curve.x_at(first), START, next(seq), entry, None))
            queue.append((sign * last, curve.x_at(last), END, next(seq), entry, None))
    heapq.heapify(queue)

    def locate(entry: _Entry) -> int:
        try:
            return status.index(entry)
        except ValueError:
            # Rounding left the status out of order around this entry.
            logger.debug("sweep status out of order at y=%g", sign * cursor.s)
            return next(k for k, e in enumerate(status) if e is entry)

    def schedule(a: _Entry, b: _Entry) -> None:
        if (a.color == BLUE and b.color == BLUE) or a.retired or b.retired:
            return
        if a.color == BLUE or (a.color == b.color and b.index < a.index):
            a, b = b, a
        ba, bb = boxes[a.color][a.index], boxes[b.color][b.index]
        if ba[2] > bb[3] + eps or bb[2] > ba[3] + eps:
            return
        key = (a.color, a.index, b.color, b.index)
        if key in paired:
            return
        paired.add(key)
        for x, y, data in crossings(a.curve, b.curve):
            s = sign * y
            # Only crossings inside both curves and not yet passed reorder the status.
            interior = a.interior(s, eps) and b.interior(s, eps) and s >= cursor.s - eps
            if not interior and a.color == b.color:
                continue
            heapq.heappush(queue, (s, x, CROSSING, next(seq), a, (b, y, data, interior)))

    def neighbors(entry: _Entry) -> None:
        pos = locate(entry)
        if pos > 0:
            schedule(status[pos - 1], entry)
        if pos + 1 < len(status):
            schedule(entry, status[pos + 1])

    def take_out(entry: _Entry) -> tuple[_Entry | None, _Entry | None]:
        pos = locate(entry)
        pred = status[pos - 1] if pos > 0 else None
        succ = status[pos + 1] if pos + 1 < len(status) else None
        del status[pos]
        entry.live = False
        return pred, succ

    events = 0
    while queue:
        s, _, kind, _, entry, payload = heapq.heappop(queue)
        if entry.retired:
            continue

        if kind == START:
            if entry.done:
                continue
            events += 1
            cursor.move(s, ahead=True)
            status.add(entry)
            entry.live = True
            neighbors(entry)
            continue

        if kind == END:
            entry.done = True
            if not entry.live:
                continue
            events += 1
            cursor.move(s, ahead=False)
            pred, succ = take_out(entry)
            if pred is not None and succ is not None:
                schedule(pred, succ)
            continue

        other, y, data, interior = payload
        if other.retired:
            continue
        events += 1
        retire = entry.color != other.color and on_crossing(entry.index, other.index, y, data)
        if interior and entry.live and other.live:
            cursor.move(s, ahead=False)
            take_out(entry)
            take_out(other)
            cursor.move(s, ahead=True)
            survivors = (other,) if retire else (entry, other)
            for e in survivors:
                status.add(e)
                e.live = True
            for e in survivors:
                neighbors(e)
        elif retire and entry.live:
            cursor.move(s, ahead=False)
            pred, succ = take_out(entry)
            if pred is not None and succ is not None:
                schedule(pred, succ)
        if retire:
            entry.retired = True

    logger.debug("sweep over %d red / %d blue curves: %d events", len(red), len(blue), events)
    return events
