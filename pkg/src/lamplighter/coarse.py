"""Ball-local coarse geometry for the lamplighter Cayley graph.

Metric balls are built by breadth-first search over a packed integer
encoding (lamp window plus cursor in one 64-bit word), so radius 22 with
a few million vertices stays cheap.  Obstacles are the explicit walks;
removing an obstacle neighborhood and decomposing what is left gives
ball-local separation verdicts.  Enumeration of the infinite paths is
truncated by provable per-stage lower bounds: lamps above the trailing
block never change during a stage, so any stage whose persistent high
bits already cost more than the budget cannot reach the ball.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .group import EXCEEDS, IDENTITY, Configuration, compose, invert, word_distance
from .walks import (
    Walk,
    half_quasi_line,
    probes,
    quasi_circle,
    quasi_interval,
    quasi_line,
    stage_config,
    stage_steps,
    trailing_ones,
)

DEFAULT_MEMBER_CAP = 5_000_000
DEFAULT_RADIUS_CAP = 12
DEFAULT_INDEX_CAP = 10_000

_CUR_BITS = 7
_CUR_MASK = np.uint64((1 << _CUR_BITS) - 1)
_MAX_RADIUS = 28  # packing limit: 2*28+1 lamp bits + 7 cursor bits < 64


class ResourceLimitError(RuntimeError):
    """A configured resource cap (members, stages) would be exceeded."""


class ProbeOutsideBallError(ValueError):
    """A probe configuration lies outside the requested ball."""


class ProbeInsideObstacleError(ValueError):
    """A probe configuration lies inside the removed obstacle region."""


@dataclass(frozen=True)
class PathSpec:
    """Which explicit path plays the obstacle or profile subject.

    kind "N" is the half-quasi-line, "R" the two-sided quasi-line,
    "I" the quasi-interval at scale n, "C" the quasi-circle at scale n.
    """

    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in ("N", "R", "I", "C"):
            raise ValueError(f"unknown path kind {self.kind!r}")
        if self.kind in ("I", "C"):
            if self.n is None or self.n < 1:
                raise ValueError(f"kind {self.kind} needs n >= 1")
        elif self.n is not None:
            raise ValueError(f"kind {self.kind} takes no n")

    def label(self) -> str:
        return self.kind if self.n is None else f"{self.kind}{self.n}"


def _isin_sorted(values: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Membership mask of values in a sorted table."""
    if len(table) == 0:
        return np.zeros(len(values), dtype=bool)
    pos = np.searchsorted(table, values)
    pos[pos == len(table)] = 0
    return table[pos] == values


class Ball:
    """Exhaustive metric ball around a center, with exact distances.

    Members are stored as sorted packed integers (lamp window shifted by
    the radius, then the cursor) relative to the center; decoding shifts
    back.  Deterministic: member order is the packed order, which sorts
    by lamp pattern as a binary value, then cursor.
    """

    def __init__(self, center: Configuration, radius: int, keys: np.ndarray, dists: np.ndarray):
        self.center = center
        self.radius = radius
        self._keys = keys
        self._dists = dists

    @property
    def member_count(self) -> int:
        return len(self._keys)

    def __len__(self) -> int:
        return len(self._keys)

    def pack(self, g: Configuration) -> int | None:
        """Packed key of g relative to the center, or None if outside
        the representable window (such a vertex cannot be a member)."""
        if self.center != IDENTITY:
            g = compose(invert(self.center), g)
        r = self.radius
        if abs(g.cursor) > r:
            return None
        mask = 0
        for p in g.lamps:
            if abs(p) > r:
                return None
            mask |= 1 << (p + r)
        return (mask << _CUR_BITS) | (g.cursor + r)

    def unpack(self, key: int) -> Configuration:
        r = self.radius
        key = int(key)
        cursor = (key & ((1 << _CUR_BITS) - 1)) - r
        mask = key >> _CUR_BITS
        lamps = [b - r for b in range(mask.bit_length()) if (mask >> b) & 1]
        rel = Configuration(lamps, cursor)
        if self.center != IDENTITY:
            return compose(self.center, rel)
        return rel

    def __contains__(self, g: Configuration) -> bool:
        key = self.pack(g)
        if key is None:
            return False
        return bool(_isin_sorted(np.array([key], dtype=np.uint64), self._keys)[0])

    def distance(self, g: Configuration) -> int:
        """Exact distance from the center to a member."""
        key = self.pack(g)
        if key is not None:
            pos = int(np.searchsorted(self._keys, np.uint64(key)))
            if pos < len(self._keys) and self._keys[pos] == np.uint64(key):
                return int(self._dists[pos])
        raise KeyError(f"{g!r} is not in the ball")

    def items(self) -> Iterator[tuple[Configuration, int]]:
        """(member, distance) pairs in deterministic packed order."""
        for key, d in zip(self._keys, self._dists):
            yield self.unpack(int(key)), int(d)

    def sphere_sizes(self) -> list[int]:
        """Member counts per exact distance, index 0..radius."""
        counts = np.bincount(self._dists, minlength=self.radius + 1)
        return [int(c) for c in counts]


def _neighbor_keys(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Toggle, right, left neighbors of packed keys (same window)."""
    toggled = keys ^ (np.uint64(1) << (np.uint64(_CUR_BITS) + (keys & _CUR_MASK)))
    return toggled, keys + np.uint64(1), keys - np.uint64(1)


def ball(center: Configuration, radius: int, *, member_cap: int = DEFAULT_MEMBER_CAP) -> Ball:
    """Exhaustive BFS ball with exact distances.

    Growth is exponential (ratio around 1.8 per unit radius); the member
    cap aborts construction with ResourceLimitError before memory does.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius > _MAX_RADIUS:
        raise ValueError(f"radius {radius} exceeds the packing window ({_MAX_RADIUS})")
    r = radius
    origin = np.array([r], dtype=np.uint64)  # identity: empty lamps, cursor 0
    levels = [origin]
    prev, cur = np.array([], dtype=np.uint64), origin
    total = 1
    for _ in range(radius):
        if len(cur) == 0:
            break
        tog, rgt, lft = _neighbor_keys(cur)
        cand = np.unique(np.concatenate([tog, rgt, lft]))
        # the Cayley graph is bipartite (every generator flips lamp count
        # plus cursor mod 2), so new vertices can only collide with the
        # previous level
        fresh = cand[~_isin_sorted(cand, prev)]
        total += len(fresh)
        if total > member_cap:
            raise ResourceLimitError(
                f"ball(radius={radius}) exceeds member cap {member_cap}"
            )
        levels.append(fresh)
        prev, cur = cur, fresh
    keys = np.concatenate(levels)
    dists = np.concatenate(
        [np.full(len(lvl), d, dtype=np.uint8) for d, lvl in enumerate(levels)]
    )
    order = np.argsort(keys)
    return Ball(center, radius, keys[order], dists[order])


def _walk_keys_in_ball(walk_vertices: Iterable[Configuration], b: Ball) -> np.ndarray:
    keys = []
    for v in walk_vertices:
        key = b.pack(v)
        if key is not None:
            keys.append(key)
    if not keys:
        return np.array([], dtype=np.uint64)
    arr = np.unique(np.array(keys, dtype=np.uint64))
    return arr[_isin_sorted(arr, b._keys)]


def _stage_lb_origin(stages: np.ndarray) -> np.ndarray:
    """Provable lower bound for d(identity, v) over vertices v of each stage.

    Bits above the trailing-ones block persist through the stage and the
    cursor must sweep past the top persistent bit; an all-ones stage
    keeps at least one lamp lit at all times while reaching its top bit.
    """
    s = stages.astype(np.uint64)
    low = s ^ (s + np.uint64(1))
    high = s & ~low
    hi_cnt = np.bitwise_count(high).astype(np.int64)
    top = np.frexp(s.astype(np.float64))[1] - 1  # floor(log2 s), -1 at s=0
    return np.where(high > 0, hi_cnt + top, top + 1)


def _replay_stage_packed(stage: int, off: int) -> list[tuple[int, int]]:
    """(lamp mask shifted by off, cursor) for every vertex of a stage walk."""
    mask = stage << off
    cursor = 0
    out = [(mask, cursor)]
    for step in stage_steps(stage):
        name = step.name
        if name == "TOGGLE":
            mask ^= 1 << (cursor + off)
        elif name == "RIGHT":
            cursor += 1
        else:
            cursor -= 1
        out.append((mask, cursor))
    return out


_SCAN_CHUNK = 1 << 18


def _counter_line_keys_in_ball(b: Ball, stage_bound: int | None) -> np.ndarray:
    """Packed keys of half-quasi-line vertices inside an identity ball."""
    r = b.radius
    bound = stage_bound if stage_bound is not None else 1 << (r + 1)
    found: set[int] = set()
    lo = 0
    while lo < bound:
        hi = min(lo + _SCAN_CHUNK, bound)
        arr = np.arange(lo, hi, dtype=np.uint64)
        survivors = arr[_stage_lb_origin(arr) <= r]
        for s in survivors.tolist():
            batch = [
                (mask << _CUR_BITS) | (cursor + r)
                for mask, cursor in _replay_stage_packed(s, r)
            ]
            keys = np.array(batch, dtype=np.uint64)
            found.update(keys[_isin_sorted(keys, b._keys)].tolist())
        lo = hi
    return np.array(sorted(found), dtype=np.uint64)


def _ray_vertices(max_index: int) -> list[Configuration]:
    """Negative-ray vertices of the quasi-line out to anchor max_index."""
    return quasi_line(max_index, 0).vertices[:-1]  # drop the identity


def _path_keys_in_ball(spec: PathSpec | None, b: Ball, stage_bound: int | None = None) -> np.ndarray:
    if spec is None:
        return np.array([], dtype=np.uint64)
    if b.center != IDENTITY:
        raise ValueError("path enumeration requires a ball centered at the identity")
    if spec.kind in ("I", "C"):
        walk = quasi_interval(spec.n) if spec.kind == "I" else quasi_circle(spec.n)
        return _walk_keys_in_ball(walk.vertices, b)
    line = _counter_line_keys_in_ball(b, stage_bound)
    if spec.kind == "N":
        return line
    # quasi-line: the ray anchor i sits at distance 2i, interpolants at 2i+1
    ray = _walk_keys_in_ball(_ray_vertices(b.radius // 2 + 1), b)
    return np.union1d(line, ray)


def path_in_ball(spec: PathSpec, b: Ball, *, stage_bound: int | None = None) -> set[Configuration]:
    """Exact set of vertices of the (possibly infinite) path in the ball.

    For the infinite kinds the stage enumeration bound defaults to
    2**(radius+1); stages beyond it sit deeper than the radius.
    """
    keys = _path_keys_in_ball(spec, b, stage_bound)
    return {b.unpack(int(k)) for k in keys}


def _dist_masks(m1: int, c1: int, m2: int, c2: int, off: int) -> int:
    """word_distance on (mask, cursor) pairs sharing one lamp offset."""
    x = m1 ^ m2
    count = x.bit_count()
    lo = min(c1, c2)
    hi = max(c1, c2)
    if x:
        lo = min(lo, ((x & -x).bit_length() - 1) - off)
        hi = max(hi, (x.bit_length() - 1) - off)
    return count + min(
        (c1 - lo) + (hi - lo) + (hi - c2),
        (hi - c1) + (hi - lo) + (c2 - lo),
    )


_PROBE_OFF = 64


def _pack_probe(v: Configuration) -> tuple[int, int]:
    mask = 0
    for p in v.lamps:
        mask |= 1 << (p + _PROBE_OFF)
    return mask, v.cursor


def _stage_lb_probe(stages: np.ndarray, v: Configuration) -> np.ndarray:
    """Provable lower bound for d(v, vertex of stage s), vectorized over s.

    During stage s the lamps above the trailing block equal the bits of
    s, stage lamps never go below -k, and the cursor stays within
    [-k, k]; every resulting forced mismatch or forced travel is a cost.
    """
    s = stages.astype(np.uint64)
    low = s ^ (s + np.uint64(1))
    k = np.bitwise_count(low).astype(np.int64) - 1
    vmask = np.uint64(0)
    far = 0
    for p in v.lamps:
        if 0 <= p < 58:
            vmask |= np.uint64(1 << p)
        elif p >= 58:
            far += 1  # beyond any stage bit in range: always a mismatch
    hi_mismatch = np.bitwise_count((s ^ vmask) & ~low).astype(np.int64)
    cursor_gap = np.maximum(0, abs(v.cursor) - k)
    neg = np.array(sorted(p for p in v.lamps if p < 0), dtype=np.int64)
    below = np.searchsorted(neg, -k) if len(neg) else np.zeros(len(k), dtype=np.int64)
    return hi_mismatch + cursor_gap + below + far


def _distance_to_counter_line(v: Configuration, cap: int, stage_budget: int) -> int:
    """Min distance from v to the half-quasi-line, capped.

    Ascending stage sweep with a live best value: a stage is skipped when
    its provable lower bound cannot beat the best, and the sweep stops at
    the stage bound implied by the best (deeper stages sit too far from
    the identity to matter).
    """
    vmask, vcur = _pack_probe(v)
    d0 = word_distance(IDENTITY, v)
    best = d0  # the identity is on the line
    plus = sum(1 << p for p in v.lamps if p >= 0)
    best = min(best, _stage_dist(plus, vmask, vcur))

    def bound() -> int:
        t = min(best - 1, cap)
        if t < 0:
            return 0
        return 1 << (d0 + t + 1)

    lo = 0
    while lo < bound():
        if lo >= stage_budget:
            raise ResourceLimitError(
                f"stage sweep needs {bound()} stages (budget {stage_budget})"
            )
        hi = min(lo + _SCAN_CHUNK, bound())
        arr = np.arange(lo, hi, dtype=np.uint64)
        t = min(best - 1, cap)
        # a stage that is provably far from the identity is also far
        # from the probe, up to d(identity, probe)
        lb = np.maximum(_stage_lb_probe(arr, v), _stage_lb_origin(arr) - d0)
        for s in arr[lb <= t].tolist():
            if s >= bound():
                break
            d = _stage_dist(s, vmask, vcur)
            if d < best:
                best = d
        lo = hi
    return best


def _stage_dist(stage: int, vmask: int, vcur: int) -> int:
    """Min distance from a packed probe to any vertex of one stage walk."""
    return min(
        _dist_masks(mask, cursor, vmask, vcur, _PROBE_OFF)
        for mask, cursor in _replay_stage_packed(stage, _PROBE_OFF)
    )


def distance_to_path(v: Configuration, spec: PathSpec, cap: int, *, stage_budget: int = 1 << 26):
    """Min word distance from v to the path if at most cap, else EXCEEDS.

    The infinite kinds are enumerated with sound truncation; a probe very
    far from the identity would need an astronomical sweep, which raises
    ResourceLimitError instead of silently hanging.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if spec.kind in ("I", "C"):
        walk = quasi_interval(spec.n) if spec.kind == "I" else quasi_circle(spec.n)
        best = min(word_distance(v, w) for w in walk.vertices)
    else:
        best = _distance_to_counter_line(v, cap, stage_budget)
        if spec.kind == "R":
            d0 = word_distance(IDENTITY, v)
            limit = min(best - 1, cap)
            # ray vertices sit at distance 2i and 2i+1 from the identity
            max_anchor = max(0, (d0 + limit) // 2 + 1)
            for w in _ray_vertices(max_anchor):
                d = word_distance(v, w)
                if d < best:
                    best = d
    return best if best <= cap else EXCEEDS


@dataclass(frozen=True)
class Component:
    """One connected piece of the ball after removal."""

    id: int
    size: int
    representative: Configuration
    max_distance_to_obstacle: int | None


def _ball_bfs_from(b: Ball, source_keys: np.ndarray) -> np.ndarray:
    """Graph distances from a source set across the whole ball, -1 if
    unreachable (cannot happen for nonempty sources: balls are connected)."""
    dist = np.full(len(b._keys), -1, dtype=np.int32)
    if len(source_keys) == 0:
        return dist
    pos = np.searchsorted(b._keys, source_keys)
    dist[pos] = 0
    frontier = source_keys
    level = 0
    while len(frontier):
        level += 1
        tog, rgt, lft = _neighbor_keys(frontier)
        cand = np.unique(np.concatenate([tog, rgt, lft]))
        pos = np.searchsorted(b._keys, cand)
        pos[pos == len(b._keys)] = 0
        ok = (b._keys[pos] == cand) & (dist[pos] < 0)
        dist[pos[ok]] = level
        frontier = cand[ok]
    return dist


def _decompose(b: Ball, removed_keys: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Kept keys, component label per kept key, and component order.

    Labels are relabeled so that component 0 holds the smallest packed
    key, component 1 the next, and so on (canonical configuration order:
    lamp pattern as a binary value, then cursor).
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    keep = ~_isin_sorted(b._keys, removed_keys)
    kept = b._keys[keep]
    m = len(kept)
    if m == 0:
        return kept, np.array([], dtype=np.int64), np.array([], dtype=np.uint64)
    rows = []
    cols = []
    for nb in _neighbor_keys(kept):
        pos = np.searchsorted(kept, nb)
        pos[pos == m] = 0
        ok = kept[pos] == nb
        rows.append(np.nonzero(ok)[0].astype(np.int32))
        cols.append(pos[ok].astype(np.int32))
    graph = coo_matrix(
        (np.ones(sum(len(r) for r in rows), dtype=bool),
         (np.concatenate(rows), np.concatenate(cols))),
        shape=(m, m),
    )
    ncomp, labels = connected_components(graph, directed=False)
    rep = np.full(ncomp, np.iinfo(np.uint64).max, dtype=np.uint64)
    np.minimum.at(rep, labels, kept)
    order = np.argsort(rep)
    relabel = np.empty(ncomp, dtype=np.int64)
    relabel[order] = np.arange(ncomp)
    return kept, relabel[labels], rep[order]


def components_after_removal(b: Ball, removed: Iterable[Configuration]) -> list[Component]:
    """Connected components of the ball minus a removed vertex set.

    Removed configurations outside the ball are ignored.  Deepness is the
    maximum ball-graph distance from the removed set; None when nothing
    was removed.
    """
    removed_list = [b.pack(v) for v in removed]
    removed_keys = np.array(
        sorted(k for k in removed_list if k is not None), dtype=np.uint64
    )
    removed_keys = removed_keys[_isin_sorted(removed_keys, b._keys)]
    kept, labels, reps = _decompose(b, removed_keys)
    return _build_components(b, removed_keys, kept, labels, reps)


def _build_components(
    b: Ball,
    removed_keys: np.ndarray,
    kept: np.ndarray,
    labels: np.ndarray,
    reps: np.ndarray,
) -> list[Component]:
    if len(kept) == 0:
        return []
    sizes = np.bincount(labels)
    if len(removed_keys):
        dist = _ball_bfs_from(b, removed_keys)
        keep_dist = dist[~_isin_sorted(b._keys, removed_keys)]
        deep = np.zeros(len(sizes), dtype=np.int64)
        np.maximum.at(deep, labels, keep_dist)
        deepness: list[int | None] = [int(x) for x in deep]
    else:
        deepness = [None] * len(sizes)
    return [
        Component(
            id=i,
            size=int(sizes[i]),
            representative=b.unpack(int(reps[i])),
            max_distance_to_obstacle=deepness[i],
        )
        for i in range(len(sizes))
    ]


@dataclass(frozen=True)
class ProbePlacement:
    """Where one probe landed in the decomposition."""

    config: Configuration
    component_id: int
    distance_to_obstacle: int | None


@dataclass(frozen=True)
class SeparationReport:
    """Outcome of removing an obstacle neighborhood around a path.

    Everything is ball-local: the obstacle is the path intersected with
    the ball, the K-neighborhood is taken inside the ball graph, and the
    verdict says whether the probes fall in distinct components of what
    remains.  A verdict of separated-in-ball is evidence at radius R,
    not a statement about the whole group.
    """

    path: PathSpec | None
    k_neighborhood: int
    radius: int
    ball_size: int
    obstacle_size: int
    components: tuple[Component, ...]
    probes: tuple[ProbePlacement, ...]
    verdict: str

    def to_dict(self) -> dict:
        def cfg(c: Configuration) -> dict:
            return {"cursor": c.cursor, "lamps": c.sorted_lamps()}

        return {
            "obstacle": {
                "kind": self.path.kind if self.path else None,
                "n": self.path.n if self.path else None,
                "size_in_ball": self.obstacle_size,
            },
            "K": self.k_neighborhood,
            "radius": self.radius,
            "ball_size": self.ball_size,
            "components": [
                {
                    "id": c.id,
                    "size": c.size,
                    "representative": cfg(c.representative),
                    "max_distance_to_obstacle": c.max_distance_to_obstacle,
                }
                for c in self.components
            ],
            "probes": [
                {
                    "config": cfg(p.config),
                    "component": p.component_id,
                    "distance_to_obstacle": p.distance_to_obstacle,
                }
                for p in self.probes
            ],
            "verdict": self.verdict,
        }


def separation_report(
    spec: PathSpec | None,
    k_neighborhood: int,
    radius: int,
    probe_a: Configuration,
    probe_b: Configuration,
    *,
    member_cap: int = DEFAULT_MEMBER_CAP,
    prebuilt_ball: Ball | None = None,
    stage_bound: int | None = None,
) -> SeparationReport:
    """Remove the K-neighborhood of a path from a ball and place probes.

    Raises ProbeOutsideBallError or ProbeInsideObstacleError when a probe
    cannot be placed, and ResourceLimitError when the ball would exceed
    the member cap.
    """
    if k_neighborhood < 0:
        raise ValueError("K must be nonnegative")
    b = prebuilt_ball if prebuilt_ball is not None else ball(
        IDENTITY, radius, member_cap=member_cap
    )
    if b.radius != radius or b.center != IDENTITY:
        raise ValueError("prebuilt ball does not match the requested radius")
    obstacle_keys = _path_keys_in_ball(spec, b, stage_bound)
    if len(obstacle_keys) and k_neighborhood > 0:
        dist = _ball_bfs_from(b, obstacle_keys)
        removed_keys = b._keys[(dist >= 0) & (dist <= k_neighborhood)]
    else:
        removed_keys = obstacle_keys

    probe_keys = []
    for p in (probe_a, probe_b):
        key = b.pack(p)
        if key is None or not _isin_sorted(np.array([key], dtype=np.uint64), b._keys)[0]:
            raise ProbeOutsideBallError(f"probe {p!r} is outside ball(e, {radius})")
        if _isin_sorted(np.array([key], dtype=np.uint64), removed_keys)[0]:
            raise ProbeInsideObstacleError(
                f"probe {p!r} lies in the removed obstacle neighborhood"
            )
        probe_keys.append(key)

    kept, labels, reps = _decompose(b, removed_keys)
    comps = _build_components(b, removed_keys, kept, labels, reps)
    placements = []
    for p, key in zip((probe_a, probe_b), probe_keys):
        pos = int(np.searchsorted(kept, np.uint64(key)))
        comp_id = int(labels[pos])
        if spec is not None:
            d = distance_to_path(p, spec, cap=radius)
            dist_val = None if d is EXCEEDS else int(d)
        else:
            dist_val = None
        placements.append(ProbePlacement(p, comp_id, dist_val))
    verdict = (
        "separated-in-ball"
        if placements[0].component_id != placements[1].component_id
        else "connected-in-ball"
    )
    return SeparationReport(
        path=spec,
        k_neighborhood=k_neighborhood,
        radius=radius,
        ball_size=b.member_count,
        obstacle_size=int(len(removed_keys)),
        components=tuple(comps),
        probes=tuple(placements),
        verdict=verdict,
    )


@dataclass(frozen=True)
class DistortionProfile:
    """Max index gap per ambient distance bound along one path.

    entries[M] is the largest index gap (linear for open paths, cyclic
    for circles) over vertex pairs at word distance at most M.
    """

    kind: str
    n: int | None
    index_limit: int
    m_max: int
    metric_mode: str
    entries: tuple[int, ...]

    def csv_text(self) -> str:
        lines = ["M,D"]
        for m, d in enumerate(self.entries):
            lines.append(f"{m},{d}")
        return "\n".join(lines) + "\n"


_CLIP_LO = -32
_CLIP_BITS = 64


def _profile_arrays(vertices: Sequence[Configuration]):
    n = len(vertices)
    masks = np.zeros(n, dtype=np.uint64)
    cursors = np.zeros(n, dtype=np.int64)
    outside = np.zeros(n, dtype=np.int64)
    for i, v in enumerate(vertices):
        m = 0
        out = 0
        for p in v.lamps:
            q = p - _CLIP_LO
            if 0 <= q < _CLIP_BITS:
                m |= 1 << q
            else:
                out += 1
        masks[i] = m
        cursors[i] = v.cursor
        outside[i] = out
    return masks, cursors, outside


def _scan_pairs(
    vertices: Sequence[Configuration],
    m_max: int,
    cyclic: bool,
    gap_limit: int,
) -> list[int]:
    """Best index gap per exact distance <= m_max, scanning gaps up to
    gap_limit.  The lamp masks are clipped to a window; clipped lamps are
    counted separately so the prefilter stays a valid lower bound."""
    n = len(vertices)
    masks, cursors, outside = _profile_arrays(vertices)
    if cyclic:
        masks2 = np.concatenate([masks, masks[:gap_limit]])
        cursors2 = np.concatenate([cursors, cursors[:gap_limit]])
        outside2 = np.concatenate([outside, outside[:gap_limit]])
    best = [0] * (m_max + 1)
    for gap in range(1, gap_limit + 1):
        if cyclic:
            mb, cb, ob = (
                masks2[gap : gap + n],
                cursors2[gap : gap + n],
                outside2[gap : gap + n],
            )
            ma, ca, oa = masks, cursors, outside
        else:
            ma, ca, oa = masks[:-gap], cursors[:-gap], outside[:-gap]
            mb, cb, ob = masks[gap:], cursors[gap:], outside[gap:]
        lamp_lb = np.bitwise_count(ma ^ mb).astype(np.int64) + np.abs(oa - ob)
        cand = (np.abs(ca - cb) <= m_max) & (lamp_lb <= m_max)
        for i in np.nonzero(cand)[0].tolist():
            j = (i + gap) % n if cyclic else i + gap
            d = word_distance(vertices[i], vertices[j])
            if d <= m_max and gap > best[d]:
                best[d] = gap
    for m in range(1, m_max + 1):
        best[m] = max(best[m], best[m - 1])
    return best


def _profile_vertices(spec: PathSpec, index_limit: int) -> tuple[list[Configuration], str]:
    if spec.kind == "N":
        return list(half_quasi_line(index_limit).vertices), "linear"
    if spec.kind == "R":
        neg = index_limit // 4
        walk = quasi_line(neg, index_limit - 2 * neg)
        return list(walk.vertices), "linear"
    if spec.kind == "I":
        verts = list(quasi_interval(spec.n).vertices)
        return verts[: index_limit + 1], "linear"
    # circles are always profiled whole: truncating a cycle breaks the
    # cyclic gap metric
    return list(quasi_circle(spec.n).vertices[:-1]), "cyclic"


_FULL_SCAN_LIMIT = 4096
_WINDOW_START = 256
_WINDOW_SLACK = 64


def distortion_profile(
    spec: PathSpec,
    index_limit: int,
    m_max: int,
    *,
    window: int | None = None,
) -> DistortionProfile:
    """Empirical distortion along a path: D(M) = max index gap at word
    distance <= M, for M = 0..m_max.

    Pairs are scanned by index gap with a vectorized necessary-condition
    prefilter; survivors get the exact distance.  Long paths use a
    sliding window (window=None picks full scan up to 4096 vertices,
    else a growing window): exact as long as no qualifying pair exceeds
    the window, and the window is regrown until the observed maximum
    sits well inside it.  window=0 forces a full scan.
    """
    if index_limit < 2:
        raise ValueError("index_limit must be at least 2")
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    vertices, mode = _profile_vertices(spec, index_limit)
    n = len(vertices)
    max_gap = (n // 2) if mode == "cyclic" else (n - 1)
    if window == 0 or (window is None and n <= _FULL_SCAN_LIMIT):
        w = max_gap
    elif window is None:
        w = _WINDOW_START
    else:
        w = window
    while True:
        w = min(w, max_gap)
        best = _scan_pairs(vertices, m_max, mode == "cyclic", w)
        if w >= max_gap or best[m_max] + _WINDOW_SLACK <= w:
            break
        w = min(max_gap, w * 4)
    return DistortionProfile(
        kind=spec.kind,
        n=spec.n,
        index_limit=index_limit,
        m_max=m_max,
        metric_mode=mode,
        entries=tuple(best),
    )


@dataclass(frozen=True)
class CircleFamilyDistortion:
    """Pointwise-max distortion over a family of quasi-circles."""

    n_values: tuple[int, ...]
    m_max: int
    profiles: dict[int, DistortionProfile]
    h: tuple[int, ...]
    attaining: tuple[int, ...]

    def csv_text(self) -> str:
        lines = ["M,D,n_attaining"]
        for m in range(len(self.h)):
            lines.append(f"{m},{self.h[m]},{self.attaining[m]}")
        return "\n".join(lines) + "\n"


def circle_family_distortion(n_values: Iterable[int], m_max: int) -> CircleFamilyDistortion:
    """Cyclic distortion profile of each circle plus the family maximum.

    h[M] is the largest D(M) over the family; attaining[M] is the
    smallest n reaching it.  A family whose h stops changing as larger
    circles join behaves like circles of bounded distortion.
    """
    ns = sorted(set(n_values))
    if not ns:
        raise ValueError("need at least one circle")
    if any(n < 1 or n > 6 for n in ns):
        raise ValueError("circle scales must be within 1..6")
    profiles = {}
    for n in ns:
        cycle_len = len(quasi_circle(n).vertices) - 1
        profiles[n] = distortion_profile(PathSpec("C", n), cycle_len, m_max)
    h = []
    attaining = []
    for m in range(m_max + 1):
        values = [(profiles[n].entries[m], n) for n in ns]
        top = max(v for v, _ in values)
        h.append(top)
        attaining.append(min(n for v, n in values if v == top))
    return CircleFamilyDistortion(
        n_values=tuple(ns),
        m_max=m_max,
        profiles=profiles,
        h=tuple(h),
        attaining=tuple(attaining),
    )
