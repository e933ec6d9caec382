"""Link diagrams in PD notation, smoothing states and enhanced states.

PD convention: each crossing ``X(a,b,c,d)`` lists its four arcs
counterclockwise starting from the incoming under-strand, so ``a -> c`` is
the under-strand. The A-smoothing joins ``(a,b)`` and ``(c,d)``; the
B-smoothing joins ``(a,d)`` and ``(b,c)``. A crossing is positive when the
over-strand runs ``d -> b``.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from . import config
from .errors import ArityError, MalformedDiagram, NotASite, PDSyntaxError, TooLarge

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple
    free_loops: int = 0
    signs: tuple = field(default=None, compare=False)

    def __post_init__(self):
        crossings = tuple(tuple(int(x) for x in c) for c in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        if self.free_loops < 0:
            raise MalformedDiagram("negative free-loop count")
        counts: dict = {}
        for c in crossings:
            if len(c) != 4:
                raise MalformedDiagram(f"crossing {c} does not have four arcs")
            for a in c:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, n in counts.items() if n != 2)
        if bad:
            raise MalformedDiagram(f"arcs {bad} do not occur exactly twice")
        if self.signs is None:
            object.__setattr__(self, "signs", _crossing_signs(crossings))

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> tuple:
        return tuple(sorted({a for c in self.crossings for a in c}))

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    @property
    def n_positive(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_negative(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def indexed_tuples(self):
        """Crossing tuples with arcs renumbered 0..arc_count-1 (sorted label order)."""
        index = {a: i for i, a in enumerate(self.arcs)}
        return [tuple(index[a] for a in c) for c in self.crossings]

    def to_json(self) -> dict:
        return {"crossings": [list(c) for c in self.crossings], "free_loops": self.free_loops}

    @classmethod
    def from_json(cls, data) -> "LinkDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(c) for c in data.get("crossings", [])), int(data.get("free_loops", 0)))

    def to_pd(self) -> str:
        parts = ["X(%d,%d,%d,%d)" % c for c in self.crossings]
        if self.free_loops or not parts:
            parts.append(f"O({self.free_loops})")
        return "; ".join(parts)

    def is_planar(self) -> bool:
        """True when every connected piece of the projection has genus zero."""
        return _is_planar(self.crossings)

    def disjoint_union(self, other: "LinkDiagram") -> "LinkDiagram":
        shift = max(self.arcs, default=0)
        moved = tuple(tuple(a + shift for a in c) for c in other.crossings)
        return LinkDiagram(self.crossings + moved, self.free_loops + other.free_loops)

    def mirror(self) -> "LinkDiagram":
        """Switch every crossing."""
        return from_unoriented([(b, c, d, a) for a, b, c, d in self.crossings], self.free_loops)


def _positions(crossings):
    occ: dict = {}
    for k, c in enumerate(crossings):
        for p, a in enumerate(c):
            occ.setdefault(a, []).append((k, p))
    return occ


def _orient(crossings, fix_under=True):
    """Direction (+1 in / -1 out) for every (crossing, position).

    With ``fix_under`` position 0 is incoming; otherwise any consistent
    orientation is chosen. Raises MalformedDiagram on contradiction.
    """
    occ = _positions(crossings)
    direction: dict = {}

    def other(k, p):
        a = crossings[k][p]
        first, second = occ[a]
        if first == (k, p):
            return second
        return first

    def assign(k, p, d):
        stack = [(k, p, d)]
        while stack:
            k, p, d = stack.pop()
            known = direction.get((k, p))
            if known is not None:
                if known != d:
                    raise MalformedDiagram(f"strand orientation is inconsistent at crossing {k}")
                continue
            direction[(k, p)] = d
            # straight through the crossing, and along the arc
            stack.append((k, (p + 2) % 4, -d))
            k2, p2 = other(k, p)
            stack.append((k2, p2, -d))

    if fix_under:
        for k in range(len(crossings)):
            assign(k, 0, +1)
    for k in range(len(crossings)):
        for p in range(4):
            if (k, p) not in direction:
                assign(k, p, +1)
    return direction


def _crossing_signs(crossings):
    direction = _orient(crossings, fix_under=True)
    return tuple(+1 if direction[(k, 3)] == +1 else -1 for k in range(len(crossings)))


def from_unoriented(crossings, free_loops=0) -> LinkDiagram:
    """Build a diagram from tuples whose under-strand direction is unknown.

    Each tuple lists arcs counterclockwise with positions 0 and 2 on the
    under-strand. Tuples are rotated by two where needed so position 0 is
    the incoming under-arc.
    """
    crossings = [tuple(c) for c in crossings]
    direction = _orient(crossings, fix_under=False)
    fixed = []
    for k, c in enumerate(crossings):
        if direction[(k, 0)] == +1:
            fixed.append(c)
        else:
            fixed.append(c[2:] + c[:2])
    return LinkDiagram(tuple(fixed), free_loops)


def _is_planar(crossings) -> bool:
    if not crossings:
        return True
    occ = _positions(crossings)

    def other(k, p):
        first, second = occ[crossings[k][p]]
        return second if first == (k, p) else first

    # faces of the 4-valent projection graph
    seen = set()
    face_of = {}
    n_faces = 0
    for start in itertools.product(range(len(crossings)), range(4)):
        if start in seen:
            continue
        dart = start
        while dart not in seen:
            seen.add(dart)
            face_of[dart] = n_faces
            k2, p2 = other(*dart)
            dart = (k2, (p2 + 1) % 4)
        n_faces += 1
    # connected pieces of the projection
    parent = list(range(len(crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in range(len(crossings)):
        for p in range(4):
            k2, _ = other(k, p)
            parent[find(k)] = find(k2)
    pieces: dict = {}
    for k in range(len(crossings)):
        pieces.setdefault(find(k), set()).add(k)
    for members in pieces.values():
        faces = {face_of[(k, p)] for k in members for p in range(4)}
        if len(faces) != len(members) + 2:
            return False
    return True


_ENTRY = re.compile(r"\s*([XO])\s*\(\s*([^)]*)\)\s*")
_SEP = re.compile(r"[\s;,]*")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d)`` / ``O(k)`` entries separated by semicolons or newlines."""
    crossings = []
    free = 0
    pos = _SEP.match(text, 0).end()
    while pos < len(text):
        m = _ENTRY.match(text, pos)
        if not m:
            raise PDSyntaxError(f"unexpected token {text[pos:pos + 10]!r}", pos)
        kind, body = m.group(1), m.group(2)
        try:
            values = [int(x) for x in body.split(",")] if body.strip() else []
        except ValueError:
            raise PDSyntaxError(f"non-integer arc label in {m.group(0).strip()!r}", m.start(2)) from None
        if kind == "X":
            if len(values) != 4:
                raise PDSyntaxError("X entry needs four arc labels", m.start())
            crossings.append(tuple(values))
        else:
            if len(values) != 1 or values[0] < 0:
                raise PDSyntaxError("O entry needs one nonnegative count", m.start())
            free += values[0]
        pos = _SEP.match(text, m.end()).end()
    return LinkDiagram(tuple(crossings), free)


# -- states -----------------------------------------------------------

@dataclass(frozen=True)
class SmoothingState:
    choices: tuple
    loops: tuple  # tuple of sorted arc tuples; free loops are empty tuples at the end

    @property
    def n_B(self) -> int:
        return sum(self.choices)

    @property
    def n_loops(self) -> int:
        return len(self.loops)

    def loop_of_arc(self, arc) -> int:
        for i, loop in enumerate(self.loops):
            if arc in loop:
                return i
        raise KeyError(arc)

    def key(self) -> str:
        return "".join(map(str, self.choices))


@dataclass(frozen=True)
class EnhancedState:
    state: SmoothingState
    labels: tuple  # +1 for "1", -1 for "X", one per loop

    @property
    def n_B(self) -> int:
        return self.state.n_B

    @property
    def lam(self) -> int:
        return sum(self.labels)

    @property
    def j(self) -> int:
        return self.state.n_B + sum(self.labels)


def _check_choices(d: LinkDiagram, choices) -> tuple:
    choices = tuple(int(x) for x in choices)
    if len(choices) != d.n_crossings:
        raise ArityError(f"expected {d.n_crossings} smoothing choices, got {len(choices)}")
    if any(x not in (0, 1) for x in choices):
        raise ValueError("smoothing choices must be 0 (A) or 1 (B)")
    return choices


def resolve_state(d: LinkDiagram, choices) -> SmoothingState:
    choices = _check_choices(d, choices)
    parent = {a: a for a in d.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, bit in zip(d.crossings, choices):
        for i, j in (B_PAIRS if bit else A_PAIRS):
            ra, rb = find(c[i]), find(c[j])
            if ra != rb:
                parent[ra] = rb
    groups: dict = {}
    for a in d.arcs:
        groups.setdefault(find(a), []).append(a)
    loops = sorted(tuple(sorted(g)) for g in groups.values())
    return SmoothingState(choices, tuple(loops) + ((),) * d.free_loops)


def iter_states(d: LinkDiagram) -> Iterator[SmoothingState]:
    for choices in itertools.product((0, 1), repeat=d.n_crossings):
        yield resolve_state(d, choices)


def _check_cap(d: LinkDiagram, limit: int):
    if d.n_crossings > limit:
        raise TooLarge(
            f"{d.n_crossings} crossings exceed the cap of {limit} "
            f"({2 ** d.n_crossings} smoothing states required)",
            required=d.n_crossings,
            cap=limit,
        )


def enumerate_enhanced_states(d: LinkDiagram, cap: int | None = None) -> Iterator[EnhancedState]:
    """All enhanced states: choices ascending, then labels ascending (+1 before -1)."""
    _check_cap(d, cap if cap is not None else config.cap("max_crossings"))
    for s in iter_states(d):
        for labels in itertools.product((1, -1), repeat=s.n_loops):
            yield EnhancedState(s, labels)


def enhanced_state_count(d: LinkDiagram) -> int:
    return sum(2 ** s.n_loops for s in iter_states(d))


class Merge(NamedTuple):
    sources: tuple  # two loop indices in the old state
    target: int  # loop index in the new state
    correspondence: dict  # old -> new index for untouched loops


class Split(NamedTuple):
    source: int
    targets: tuple  # two loop indices in the new state
    correspondence: dict


def resmooth(d: LinkDiagram, s: SmoothingState, site: int):
    """Switch ``site`` from A to B; report how the loops merge or split."""
    if not 0 <= site < d.n_crossings:
        raise ArityError(f"site {site} out of range")
    if s.choices[site]:
        raise NotASite(f"site {site} is already B-smoothed")
    choices = list(s.choices)
    choices[site] = 1
    new = resolve_state(d, choices)
    touched = set(d.crossings[site])
    old_hit = sorted({s.loop_of_arc(a) for a in touched})
    new_hit = sorted({new.loop_of_arc(a) for a in touched})
    new_index = {loop: i for i, loop in enumerate(new.loops) if loop}
    correspondence = {}
    for i, loop in enumerate(s.loops):
        if i in old_hit:
            continue
        if loop:
            correspondence[i] = new_index[loop]
        else:
            # free loops keep their relative order at the end
            correspondence[i] = i - len(s.loops) + len(new.loops)
    if len(old_hit) == 2 and len(new_hit) == 1:
        return new, Merge(tuple(old_hit), new_hit[0], correspondence)
    if len(old_hit) == 1 and len(new_hit) == 2:
        return new, Split(old_hit[0], tuple(new_hit), correspondence)
    raise MalformedDiagram(f"resmoothing site {site} neither merges nor splits loops (non-planar diagram?)")


def writhe(d: LinkDiagram) -> int:
    return sum(d.signs)
