"""The dyadic tessellation of the disc with a distinguished oriented edge.

Circle points are parameter values in [0,1) (exact dyadic rationals); the
hyperbolic picture only appears in the SVG renderer.  The standard tessellation
tau_0 is infinite, so a general admissible tessellation is stored as a finite
diff against it: the set of tau_0 chords that were removed, the set of foreign
chords that were added, and the oriented distinguished edge (doe).
"""

from __future__ import annotations

import functools
import heapq
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dyadic import (
    HALF,
    ZERO,
    DyadicPartition,
    DyadicRational,
    StdDyadicInterval,
)
from .errors import EdgeNotFound, LabelNotRepresented, SearchExhausted
from .thompson import TreeDiagram, to_pl_map

__all__ = [
    "Chord",
    "Tessellation",
    "FareyLabeling",
    "Cutoff",
    "chord",
    "interval_chord",
    "in_standard_set",
    "standard_tessellation",
    "pachner_flip",
    "apply_flips",
    "farey_labels",
    "characteristic_map",
    "apply_element",
    "flips_realizing",
    "cutoff_to_partition",
    "partition_to_cutoff",
    "render_svg",
]


@dataclass(frozen=True, order=True)
class Chord:
    """Unordered geodesic between two distinct circle points, stored sorted."""

    a: DyadicRational
    b: DyadicRational

    def endpoints(self):
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}~{self.b}"


def chord(p: DyadicRational, q: DyadicRational) -> Chord:
    p, q = p.mod1(), q.mod1()
    if p == q:
        raise ValueError("a chord needs two distinct circle points")
    return Chord(p, q) if p < q else Chord(q, p)


def interval_chord(iv: StdDyadicInterval) -> Chord:
    return chord(iv.left, iv.right)


@functools.lru_cache(maxsize=None)
def _standard_interval_of(c: Chord) -> StdDyadicInterval | None:
    """The standard dyadic interval (level >= 1) subtended by c, if any."""
    try:
        iv = StdDyadicInterval.from_endpoints(c.a, c.b)
        if iv.n >= 1:
            return iv
    except Exception:
        pass
    if c.a == ZERO:
        # the complementary arc [b, 1] may be the standard interval
        try:
            iv = StdDyadicInterval.from_endpoints(c.b, DyadicRational(1, 0))
            if iv.n >= 1:
                return iv
        except Exception:
            pass
    return None


def in_standard_set(c: Chord) -> bool:
    """Whether c belongs to the standard dyadic tessellation tau_0."""
    return _standard_interval_of(c) is not None


E0 = chord(ZERO, HALF)


def _in_open_arc(x: DyadicRational, start: DyadicRational, end: DyadicRational) -> bool:
    """x strictly inside the counterclockwise arc from start to end."""
    if start < end:
        return start < x < end
    return x > start or x < end


@functools.lru_cache(maxsize=None)
def _default_apex(c: Chord, ccw_from_a: bool) -> DyadicRational | None:
    """Third vertex of the tau_0 face of c on the given side.

    ccw_from_a selects the side swept counterclockwise from c.a to c.b.
    """
    iv = _standard_interval_of(c)
    if iv is None:
        return None
    inside = _in_open_arc(
        iv.left + StdDyadicInterval(2 * iv.a, iv.n + 1).length, c.a, c.b
    )
    if inside == ccw_from_a:
        return (iv.halves()[0].right).mod1()
    if iv.n == 1:
        # the other side of e0 is the interior of the complementary half
        other = StdDyadicInterval(1 - iv.a, 1)
        return other.halves()[0].right.mod1()
    parent = StdDyadicInterval(iv.a // 2, iv.n - 1)
    far = parent.right if iv.a % 2 == 0 else parent.left
    return far.mod1()


@dataclass(frozen=True)
class Tessellation:
    """Admissible tessellation as a finite diff against tau_0.

    `removed` are tau_0 chords absent here; `added` are present non-tau_0
    chords; `doe` is the oriented distinguished edge; `depth` bounds the
    rendered/enumerated window; `flips` is the construction history when
    known (None after a group action).
    """

    depth: int
    removed: frozenset[Chord]
    added: frozenset[Chord]
    doe: tuple[DyadicRational, DyadicRational]
    flips: tuple[Chord, ...] | None = ()

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        for c in self.removed:
            if not in_standard_set(c):
                raise ValueError(f"removed chord {c} is not a standard edge")
        for c in self.added:
            if in_standard_set(c):
                raise ValueError(f"added chord {c} is already a standard edge")
        if not self.has_edge(chord(*self.doe)):
            raise ValueError("doe must be an edge of the tessellation")

    def has_edge(self, c: Chord) -> bool:
        if c in self.added:
            return True
        return in_standard_set(c) and c not in self.removed

    def doe_chord(self) -> Chord:
        return chord(*self.doe)

    def same_tessellation(self, other: "Tessellation") -> bool:
        """Equality as tessellations-with-doe, ignoring depth and history."""
        return (
            self.removed == other.removed
            and self.added == other.added
            and self.doe == other.doe
        )

    # -- enumeration within the depth window --------------------------------

    def window_edges(self) -> list[Chord]:
        """Edges of the depth window: tau_0 levels <= depth+2, minus removed,
        plus every added chord."""
        out = [E0] if E0 not in self.removed else []
        for n in range(2, self.depth + 3):
            for a in range(2**n):
                c = interval_chord(StdDyadicInterval(a, n))
                if c not in self.removed:
                    out.append(c)
        out.extend(sorted(self.added))
        return out

    def face_apex(self, c: Chord, ccw_from_a: bool) -> DyadicRational:
        """Third vertex of the face adjacent to c on the selected side."""
        if not self.has_edge(c):
            raise EdgeNotFound(f"{c} is not an edge of this tessellation")
        start, end = (c.a, c.b) if ccw_from_a else (c.b, c.a)
        candidates = set()
        default = _default_apex(c, ccw_from_a)
        if default is not None:
            candidates.add(default)
        for mod in (self.removed, self.added):
            for m in mod:
                candidates.update(m.endpoints())
        found = None
        for x in candidates:
            if not _in_open_arc(x, start, end):
                continue
            if self.has_edge(chord(c.a, x)) and self.has_edge(chord(c.b, x)):
                found = x
                break
        if found is None:
            raise EdgeNotFound(f"no face found beside {c}; tessellation corrupt")
        return found

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        if self.flips is None:
            raise ValueError(
                "tessellation has no recorded flip history; "
                "use flips_realizing to recover one"
            )
        return json.dumps(
            {
                "depth": self.depth,
                "doe": [str(self.doe[0]), str(self.doe[1])],
                "flips": [[str(c.a), str(c.b)] for c in self.flips],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Tessellation":
        data = json.loads(text)
        t = standard_tessellation(int(data["depth"]))
        for p, q in data.get("flips", []):
            t = pachner_flip(
                t, chord(DyadicRational.parse(p), DyadicRational.parse(q))
            )
        doe = tuple(DyadicRational.parse(s) for s in data["doe"])
        if t.doe != doe:
            raise ValueError(f"doe {doe} does not match flip history (got {t.doe})")
        return t


def standard_tessellation(depth: int) -> Tessellation:
    """tau_0 with doe from 0 to 1/2, rendered to `depth` triangle layers."""
    return Tessellation(depth, frozenset(), frozenset(), (ZERO, HALF), ())


def pachner_flip(t: Tessellation, edge: Chord) -> Tessellation:
    """Replace the diagonal `edge` with the opposite diagonal of its quad.

    Flipping the doe carries it to the new diagonal rotated clockwise, so
    four doe flips restore the original tessellation-with-doe.
    """
    if not t.has_edge(edge):
        raise EdgeNotFound(f"{edge} is not an edge of this tessellation")
    x = t.face_apex(edge, True)   # side swept ccw from edge.a to edge.b
    y = t.face_apex(edge, False)
    new_edge = chord(x, y)
    removed, added = set(t.removed), set(t.added)
    if in_standard_set(edge):
        removed.add(edge)
    else:
        added.discard(edge)
    if in_standard_set(new_edge):
        removed.discard(new_edge)
    else:
        added.add(new_edge)
    if chord(*t.doe) == edge:
        u, v = t.doe
        # quadrilateral in ccw order is (u, a, v, b); rotate clockwise
        a = t.face_apex(edge, (u, v) == (edge.a, edge.b))
        b = x if a == y else y
        doe = (b, a)
    else:
        doe = t.doe
    flips = None if t.flips is None else t.flips + (edge,)
    return Tessellation(t.depth, frozenset(removed), frozenset(added), doe, flips)


def apply_flips(t: Tessellation, edges) -> Tessellation:
    for e in edges:
        t = pachner_flip(t, e)
    return t


# ---------------------------------------------------------------------------
# Farey labels and characteristic maps


@dataclass(frozen=True)
class FareyLabeling:
    """Bidirectional map between represented vertices and Farey labels p/q."""

    vertex_to_label: tuple  # of (vertex, (p, q)) pairs
    _by_vertex: dict = field(default=None, compare=False, repr=False)
    _by_label: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_vertex", dict(self.vertex_to_label))
        object.__setattr__(
            self, "_by_label", {l: v for v, l in self.vertex_to_label}
        )

    def label_of(self, vertex: DyadicRational) -> tuple[int, int]:
        return self._by_vertex[vertex.mod1()]

    def vertex_of(self, label) -> DyadicRational:
        label = _normalize_label(label)
        if label not in self._by_label:
            raise LabelNotRepresented(f"label {label[0]}/{label[1]} not represented")
        return self._by_label[label]

    def vertices(self):
        return list(self._by_vertex)


def _normalize_label(label) -> tuple[int, int]:
    if isinstance(label, Fraction):
        return (label.numerator, label.denominator)
    p, q = label
    g = math.gcd(p, q)
    if g > 1:
        p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def farey_labels(t: Tessellation, max_exponent: int | None = None) -> FareyLabeling:
    """Mediant labelling seeded by the doe: start 0/1, end 1/0, right face 1/1.

    Vertices are explored while their dyadic exponent stays within the
    window (depth + 2 by default) or they touch a modified chord.
    """
    if max_exponent is None:
        max_exponent = t.depth + 2
    special = set()
    for mod in (t.removed, t.added):
        for m in mod:
            special.update(m.endpoints())

    u, v = t.doe
    labels: dict[DyadicRational, tuple[int, int]] = {u: (0, 1), v: (1, 0)}
    out = [(u, (0, 1)), (v, (1, 0))]
    # (edge endpoints with labels, side to explore); the left face of the doe
    # sees the seed 1/0 as -1/0 so its labels come out negative.
    queue = [((u, (0, 1)), (v, (1, 0)), True), ((u, (0, 1)), (v, (-1, 0)), False)]
    while queue:
        (p, lp), (q, lq), ccw_from_first = queue.pop(0)
        c = chord(p, q)
        ccw = ccw_from_first == ((p, q) == (c.a, c.b))
        try:
            x = t.face_apex(c, ccw)
        except EdgeNotFound:
            continue
        if x in labels:
            continue
        if x.exp > max_exponent and x not in special:
            continue
        lx = _normalize_label((lp[0] + lq[0], lp[1] + lq[1]))
        labels[x] = lx
        out.append((x, lx))
        # recurse across the two new edges, away from the current face
        queue.append(((p, lp), (x, lx), not _side_of(p, x, q)))
        queue.append(((x, lx), (q, lq), not _side_of(x, q, p)))
    return FareyLabeling(tuple(out))


def _side_of(p: DyadicRational, q: DyadicRational, x: DyadicRational) -> bool:
    """Whether x lies on the side of chord {p,q} swept ccw from p to q."""
    return _in_open_arc(x, p, q)


def characteristic_map(t: Tessellation, label, max_exponent: int | None = None):
    """Vertex of t carrying the given Farey label."""
    return farey_labels(t, max_exponent).vertex_of(label)


# ---------------------------------------------------------------------------
# the T action


def _internal_chords(tree) -> list[tuple[DyadicRational, DyadicRational]]:
    """Endpoint pairs of chords of internal tree nodes at depth >= 1."""
    return [
        (iv.left, iv.right)
        for iv in tree.internal_intervals()
        if iv.n >= 1
    ]


def apply_element(t: Tessellation, f: TreeDiagram) -> Tessellation:
    """Image tessellation f(t): f-images of all edges, f-image of the doe."""
    from .thompson import reduce_diagram

    f = reduce_diagram(f)
    pl = to_pl_map(f)

    def image(c: Chord) -> Chord:
        return chord(pl(c.a), pl(c.b))

    # f(tau_0) = (tau_0 minus internal chords of the range tree)
    #            union images of internal chords of the domain tree.
    # A chord below or equal to a leaf of the range tree survives as a leaf
    # image; e0 names two intervals, so it is only cut when both are internal.
    range_internal = {
        chord(p, q) for p, q in _internal_chords(f.range_tree)
    } - {
        interval_chord(iv)
        for iv in f.range_tree.leaf_intervals()
        if iv.n >= 1
    }
    domain_images = {
        chord(pl(p), pl(q)) for p, q in _internal_chords(f.domain_tree)
    }
    removed_images = {image(c) for c in t.removed}
    added_images = {image(c) for c in t.added}

    def present(c: Chord) -> bool:
        in_f_tau0 = (in_standard_set(c) and c not in range_internal) or (
            c in domain_images
        )
        return (in_f_tau0 and c not in removed_images) or c in added_images

    candidates = range_internal | domain_images | removed_images | added_images
    removed = frozenset(c for c in candidates if in_standard_set(c) and not present(c))
    added = frozenset(c for c in candidates if not in_standard_set(c) and present(c))
    doe = (pl(t.doe[0]), pl(t.doe[1]))
    return Tessellation(t.depth, removed, added, doe, None)


# ---------------------------------------------------------------------------
# flip sequences realizing group elements


def _chord_key(c: Chord):
    return (c.a.as_fraction(), c.b.as_fraction())


def _state_of(t: Tessellation):
    return (t.removed, t.added, t.doe)


@functools.lru_cache(maxsize=None)
def _window_standard_edges(window: int) -> tuple[Chord, ...]:
    """tau_0 chords whose endpoints both have exponent <= window, sorted."""
    out = {E0}
    # a level-n interval has an odd endpoint numerator, so n <= window
    for n in range(2, window + 1):
        for a in range(2**n):
            c = interval_chord(StdDyadicInterval(a, n))
            if c.a.exp <= window and c.b.exp <= window:
                out.add(c)
    return tuple(sorted(out, key=_chord_key))


def _flip_candidates(t: Tessellation, window: int) -> list[Chord]:
    """Present edges whose endpoints both have exponent <= window."""
    out = [c for c in _window_standard_edges(window) if c not in t.removed]
    out.extend(
        sorted(
            (c for c in t.added if c.a.exp <= window and c.b.exp <= window),
            key=_chord_key,
        )
    )
    return out


def _distance_bound(t: Tessellation, target: Tessellation) -> int:
    """Admissible lower bound on the number of flips from t to target."""
    diff = len(t.removed ^ target.removed) + len(t.added ^ target.added)
    h = (diff + 1) // 2
    if h == 0 and t.doe != target.doe:
        h = 1
    return h


def _direct_flip_search(target: Tessellation, max_flips: int, node_cap: int):
    """Iterative-deepening A* from tau_0 to the target diff, or None.

    Each vertex-exponent window gets a full budget sweep under a node cap
    before the window is widened.
    """
    start = standard_tessellation(target.depth)
    if start.same_tessellation(target):
        return []
    needed = max(
        [2]
        + [max(c.a.exp, c.b.exp) for c in target.removed | target.added]
        + [p.exp for p in target.doe]
    )
    for window in range(needed, needed + 3):
        nodes_left = [node_cap]
        for budget in range(1, max_flips + 1):
            result = _astar_flips(start, target, window, budget, nodes_left)
            if result is not None:
                return result
            if nodes_left[0] <= 0:
                break
    return None


def _sequence_image(f: TreeDiagram, seq) -> list[Chord]:
    """Transport a flip sequence by f; flips commute with the group action."""
    pl = to_pl_map(f)
    return [chord(pl(c.a), pl(c.b)) for c in seq]


def flips_realizing(f: TreeDiagram, depth: int, max_flips: int = 24) -> list[Chord]:
    """A flip sequence carrying (tau_0, e0) to apply_element(tau_0, f).

    Short sequences are found by windowed iterative-deepening A* over flip
    sequences; longer elements are peeled into generator factors whose
    cached sequences are transported by the group action and concatenated.
    Every returned sequence is checked against the apply_element oracle.
    """
    from .thompson import reduce_diagram

    f = reduce_diagram(f)
    start = standard_tessellation(depth)
    target = apply_element(start, f)
    seq = _realize(f, depth, max_flips, _seen=frozenset())
    if seq is None:
        raise SearchExhausted(
            f"no flip sequence of length <= {max_flips} found within the window"
        )
    if not apply_flips(start, seq).same_tessellation(target):
        raise SearchExhausted("flip search produced an inconsistent sequence")
    return seq


_GENERATOR_SEQ_CACHE: dict = {}


def _realize(f: TreeDiagram, depth, max_flips, _seen):
    from .thompson import compose, generator, inverse, reduce_diagram

    target = apply_element(standard_tessellation(depth), f)
    key = (f.domain_tree, f.range_tree, f.marker)
    if key in _GENERATOR_SEQ_CACHE:
        return list(_GENERATOR_SEQ_CACHE[key])
    # generators get a thorough search; larger elements only a shallow probe
    # before being peeled into generator factors
    if f.num_leaves <= 3:
        budget, cap = min(max_flips, 8), 4000
    else:
        budget, cap = min(max_flips, 3), 600
    direct = _direct_flip_search(target, budget, node_cap=cap)
    if direct is not None:
        if f.num_leaves <= 4:
            _GENERATOR_SEQ_CACHE[key] = tuple(direct)
        return direct
    if key in _seen or max_flips <= 0:
        return None
    # peel a generator from the left: f = l . g with g strictly simpler
    letters = [
        (name, gen)
        for name in "ABC"
        for gen in (generator(name), inverse(generator(name)))
    ]
    options = []
    for _, l in letters:
        g = reduce_diagram(compose(inverse(l), f))
        options.append((g.num_leaves, l, g))
    options.sort(key=lambda o: o[0])
    for _, l, g in options:
        sub = _realize(g, depth, max_flips - 1, _seen | {key})
        if sub is None:
            continue
        head = _realize(l, depth, max_flips, _seen | {key})
        if head is None:
            continue
        return head + _sequence_image(l, sub)
    return None


def _astar_flips(start, target, window, max_flips, nodes_left):
    t_state = _state_of(target)
    counter = 0
    heap = [(_distance_bound(start, target), 0, (), counter, start)]
    best: dict = {_state_of(start): 0}
    while heap:
        est, cost, path, _, t = heapq.heappop(heap)
        if _state_of(t) == t_state:
            return [c for _, c in path]
        if cost >= max_flips or best.get(_state_of(t), max_flips + 1) < cost:
            continue
        nodes_left[0] -= 1
        if nodes_left[0] < 0:
            return None
        for c in _flip_candidates(t, window):
            t2 = pachner_flip(t, c)
            s2 = _state_of(t2)
            cost2 = cost + 1
            if best.get(s2, max_flips + 1) <= cost2:
                continue
            best[s2] = cost2
            h = _distance_bound(t2, target)
            if cost2 + h > max_flips:
                continue
            counter += 1
            path2 = path + ((_chord_key(c), c),)
            heapq.heappush(heap, (cost2 + h, cost2, path2, counter, t2))
    return None


# ---------------------------------------------------------------------------
# cutoffs


@dataclass(frozen=True)
class Cutoff:
    """Cycle of geodesics bounding a finite convex region around the doe."""

    edges: tuple[Chord, ...]

    def __post_init__(self):
        if len(self.edges) < 2:
            raise ValueError("a cutoff needs at least two geodesics")


def cutoff_to_partition(c: Cutoff) -> DyadicPartition:
    points = sorted({p for e in c.edges for p in e.endpoints()})
    if len(points) != len(c.edges):
        raise ValueError("cutoff edges do not form a single cycle")
    return DyadicPartition(points + [DyadicRational(1, 0)])


def partition_to_cutoff(p: DyadicPartition) -> Cutoff:
    return Cutoff(tuple(interval_chord(iv) for iv in p.intervals))


# ---------------------------------------------------------------------------
# rendering


def _circle_xy(x: DyadicRational, radius: float = 480.0):
    th = 2.0 * math.pi * float(x)
    return (500.0 + radius * math.cos(th), 500.0 - radius * math.sin(th))


def _arc_path(p: DyadicRational, q: DyadicRational) -> str:
    """SVG path for the geodesic between boundary points p and q."""
    x1, y1 = _circle_xy(p)
    x2, y2 = _circle_xy(q)
    delta = abs(float(p) - float(q)) % 1.0
    delta = min(delta, 1.0 - delta)
    if abs(delta - 0.5) < 1e-12:
        return f"M {x1:.3f} {y1:.3f} L {x2:.3f} {y2:.3f}"
    r = 480.0 * math.tan(math.pi * delta)
    # sweep so the arc bends toward the disc centre
    cross = (x1 - 500.0) * (y2 - 500.0) - (y1 - 500.0) * (x2 - 500.0)
    sweep = 1 if cross < 0 else 0
    return f"M {x1:.3f} {y1:.3f} A {r:.3f} {r:.3f} 0 0 {sweep} {x2:.3f} {y2:.3f}"


def _render_tessellation(t: Tessellation, labels: bool) -> list[str]:
    parts = []
    for c in sorted(set(t.window_edges()) - {t.doe_chord()}, key=_chord_key):
        parts.append(
            f'<path d="{_arc_path(c.a, c.b)}" fill="none" '
            'stroke="black" stroke-width="1"/>'
        )
    u, v = t.doe
    parts.append(
        f'<path d="{_arc_path(u, v)}" fill="none" stroke="red" '
        'stroke-width="3" marker-end="url(#arrow)"/>'
    )
    if labels:
        for vert, (p, q) in farey_labels(t).vertex_to_label:
            x, y = _circle_xy(vert, 455.0)
            parts.append(
                f'<text x="{x:.1f}" y="{y:.1f}" font-size="14" '
                f'text-anchor="middle">{p}/{q}</text>'
            )
    return parts


def _render_tree(tree, x0: float, x1: float, y: float, parts: list[str]):
    xm = (x0 + x1) / 2.0
    if tree.is_leaf:
        parts.append(f'<circle cx="{xm:.2f}" cy="{y:.2f}" r="4" fill="black"/>')
        return
    for child, (a, b) in ((tree.left, (x0, xm)), (tree.right, (xm, x1))):
        xc = (a + b) / 2.0
        parts.append(
            f'<line x1="{xm:.2f}" y1="{y:.2f}" x2="{xc:.2f}" y2="{y + 60:.2f}" '
            'stroke="black" stroke-width="1.5"/>'
        )
        _render_tree(child, a, b, y + 60.0, parts)


def render_svg(obj, labels: bool = False) -> str:
    """Deterministic SVG for a Tessellation, TreeDiagram or Cutoff."""
    header = (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000">'
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
        'markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
        '<path d="M 0 0 L 10 5 L 0 10 z" fill="red"/></marker></defs>'
    )
    parts = [header]
    if isinstance(obj, Tessellation):
        parts.append(
            '<circle cx="500" cy="500" r="480" fill="none" '
            'stroke="gray" stroke-width="2"/>'
        )
        parts.extend(_render_tessellation(obj, labels))
    elif isinstance(obj, TreeDiagram):
        for tree, x0 in ((obj.domain_tree, 20.0), (obj.range_tree, 520.0)):
            _render_tree(tree, x0, x0 + 460.0, 100.0, parts)
        parts.append(
            f'<text x="500" y="60" font-size="20" text-anchor="middle">'
            f"marker {obj.marker}</text>"
        )
    elif isinstance(obj, Cutoff):
        parts.append(
            '<circle cx="500" cy="500" r="480" fill="none" '
            'stroke="gray" stroke-width="2"/>'
        )
        for c in sorted(obj.edges, key=_chord_key):
            parts.append(
                f'<path d="{_arc_path(c.a, c.b)}" fill="none" '
                'stroke="blue" stroke-width="2"/>'
            )
    else:
        raise TypeError(f"cannot render object of type {type(obj).__name__}")
    parts.append("</svg>")
    return "\n".join(parts)
