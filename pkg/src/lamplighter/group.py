"""Lamplighter group core: configurations, generator moves, word metric.

The group is the restricted wreath product of the order-2 group by the
integers.  An element is a finitely supported lamp pattern over Z together
with a cursor position.  Generators: toggle the lamp under the cursor,
move the cursor one step right, move it one step left.  The word metric
has a closed form (visit every lamp that must change, sweep once each
way at worst); a breadth-first oracle over the Cayley graph is kept as an
independent cross-check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from collections import deque
from typing import Iterable, Iterator


class Step(Enum):
    """One generator move of the lamplighter."""

    TOGGLE = "toggle"
    RIGHT = "right"
    LEFT = "left"


class _Exceeds:
    """Sentinel: a capped search ran out of budget without an answer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Exceeds"


EXCEEDS = _Exceeds()


@dataclass(frozen=True)
class Configuration:
    """Immutable group element: finite lamp set over Z plus cursor."""

    lamps: frozenset[int]
    cursor: int

    def __init__(self, lamps: Iterable[int] = (), cursor: int = 0):
        object.__setattr__(self, "lamps", frozenset(lamps))
        object.__setattr__(self, "cursor", int(cursor))

    def __repr__(self) -> str:
        return f"Configuration({sorted(self.lamps)}, {self.cursor})"

    def sorted_lamps(self) -> list[int]:
        return sorted(self.lamps)


IDENTITY = Configuration((), 0)

_GENERATORS = {
    Step.TOGGLE: Configuration((0,), 0),
    Step.RIGHT: Configuration((), 1),
    Step.LEFT: Configuration((), -1),
}


def generator(step: Step) -> Configuration:
    """The group element realised by a single generator move."""
    return _GENERATORS[step]


def apply_step(g: Configuration, step: Step) -> Configuration:
    """Right-multiply g by one generator move."""
    if step is Step.TOGGLE:
        return Configuration(g.lamps ^ {g.cursor}, g.cursor)
    if step is Step.RIGHT:
        return Configuration(g.lamps, g.cursor + 1)
    return Configuration(g.lamps, g.cursor - 1)


def compose(g: Configuration, h: Configuration) -> Configuration:
    """Group product: h's lamps are laid down relative to g's cursor."""
    shifted = frozenset(p + g.cursor for p in h.lamps)
    return Configuration(g.lamps ^ shifted, g.cursor + h.cursor)


def invert(g: Configuration) -> Configuration:
    """Group inverse."""
    return Configuration(frozenset(p - g.cursor for p in g.lamps), -g.cursor)


def dyadic_views(g: Configuration) -> tuple[int, int]:
    """Read the lamp pattern as two binary numbers.

    The nonnegative positions give the first value (bit p contributes
    2**p), the negative positions give the second (position p contributes
    2**(-p-1)).  The cursor is ignored.
    """
    plus = 0
    minus = 0
    for p in g.lamps:
        if p >= 0:
            plus += 1 << p
        else:
            minus += 1 << (-p - 1)
    return plus, minus


def _travel(l: int, r: int, start: int, end: int) -> int:
    """Minimal walk length from start to end visiting all of [l, r]."""
    return min(
        (start - l) + (r - l) + (r - end),
        (r - start) + (r - l) + (end - l),
    )


def word_distance(g: Configuration, h: Configuration) -> int:
    """Word metric: toggles for every differing lamp plus optimal sweep.

    The cursor must visit each position where the lamp patterns differ,
    starting at g's cursor and ending at h's.  On a line the optimal
    route sweeps to one extreme first, then the other; the cheaper of
    the two orders is exact.  Left-invariant by construction.
    """
    diff = g.lamps ^ h.lamps
    lo = min(g.cursor, h.cursor)
    hi = max(g.cursor, h.cursor)
    if diff:
        lo = min(lo, min(diff))
        hi = max(hi, max(diff))
    return len(diff) + _travel(lo, hi, g.cursor, h.cursor)


def neighbors(g: Configuration) -> Iterator[Configuration]:
    """The (up to three) distinct Cayley-graph neighbors of g."""
    yield apply_step(g, Step.TOGGLE)
    yield apply_step(g, Step.RIGHT)
    yield apply_step(g, Step.LEFT)


def bfs_ball(center: Configuration, radius: int) -> dict[Configuration, int]:
    """Exhaustive breadth-first distances from center out to radius.

    Independent of the closed form on purpose: this is the oracle the
    metric is validated against.
    """
    dist = {center: 0}
    frontier = deque([center])
    while frontier:
        g = frontier.popleft()
        d = dist[g]
        if d == radius:
            continue
        for nb in neighbors(g):
            if nb not in dist:
                dist[nb] = d + 1
                frontier.append(nb)
    return dist


def bfs_distance(g: Configuration, h: Configuration, cap: int):
    """Breadth-first distance from g to h, giving up beyond cap.

    Returns the exact distance if it is at most cap, else EXCEEDS.
    EXCEEDS is a value, not an error.
    """
    if g == h:
        return 0
    dist = {g: 0}
    frontier = deque([g])
    while frontier:
        x = frontier.popleft()
        d = dist[x]
        if d == cap:
            continue
        for nb in neighbors(x):
            if nb not in dist:
                if nb == h:
                    return d + 1
                dist[nb] = d + 1
                frontier.append(nb)
    return EXCEEDS


class CodecError(ValueError):
    """Rejected configuration text, with a position when one makes sense."""


def encode_config(g: Configuration) -> str:
    """Canonical single-line JSON form: cursor, then ascending lamps."""
    return json.dumps(
        {"cursor": g.cursor, "lamps": g.sorted_lamps()},
        separators=(",", ":"),
    )


def _require_int(value, what: str) -> int:
    # bool is an int subclass; reject it explicitly.
    if isinstance(value, bool) or not isinstance(value, int):
        raise CodecError(f"{what} must be an integer, got {value!r}")
    return value


def decode_config(text: str) -> Configuration:
    """Parse the canonical form, rejecting malformed input with position."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"invalid JSON at position {exc.pos}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise CodecError("configuration must be a JSON object")
    extra = set(raw) - {"cursor", "lamps"}
    if extra:
        raise CodecError(f"unexpected keys: {sorted(extra)}")
    if "cursor" not in raw or "lamps" not in raw:
        raise CodecError("configuration needs both 'cursor' and 'lamps'")
    cursor = _require_int(raw["cursor"], "cursor")
    lamps = raw["lamps"]
    if not isinstance(lamps, list):
        raise CodecError("lamps must be an array")
    out = []
    for i, p in enumerate(lamps):
        p = _require_int(p, f"lamp at index {i}")
        if out and p <= out[-1]:
            raise CodecError(
                f"lamps must be strictly ascending: index {i} holds {p} "
                f"after {out[-1]}"
            )
        out.append(p)
    return Configuration(out, cursor)
