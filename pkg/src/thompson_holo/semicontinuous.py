"""Cutoff states, fine-graining isometries and the unitary T-action.

A state of the semicontinuous limit is represented by a pair (cutoff,
amplitudes); two representatives are identified when fine-graining to a
common refinement makes them equal.  Fine grainers are tensor networks of a
fixed perfect tensor V, one copy per caret of the refinement, and the group
acts by refining until the image cutoff is standard and re-anchoring the
legs cyclically according to the element's marker.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .dyadic import (
    HALF,
    ONE,
    ZERO,
    DyadicPartition,
    DyadicRational,
    StdDyadicInterval,
    TTree,
    common_refinement,
    partition_to_tree,
    refines,
    tree_to_partition,
)
from .errors import NotARefinement, ResourceLimit, TheoryMismatch
from .tensor import DenseTensor, contract, TensorNetwork, verify_perfect
from .thompson import TreeDiagram, compose, inverse, reduce_diagram, to_pl_map

__all__ = [
    "CutoffState",
    "FineGrainer",
    "BulkKet",
    "BTZState",
    "fine_grainer",
    "vacuum",
    "inner_product",
    "act",
    "vacuum_matrix_element",
    "bulk_inner",
    "gram_matrix",
    "btz_state",
    "entanglement_entropy",
    "amplitude_cap",
]

BASE_PARTITION = DyadicPartition([ZERO, HALF, ONE])

DEFAULT_AMPLITUDE_CAP = 2**24


def amplitude_cap() -> int:
    """Largest permitted amplitude-vector length, overridable by env var."""
    raw = os.environ.get("THOMPSON_HOLO_MAX_AMPLITUDES")
    return int(raw) if raw else DEFAULT_AMPLITUDE_CAP


def _check_cap(num_legs: int, d: int):
    if d**num_legs > amplitude_cap():
        raise ResourceLimit(
            f"{d}^{num_legs} amplitudes exceed the cap of {amplitude_cap()}"
        )


def _normalized_splitter(V: DenseTensor) -> np.ndarray:
    """The 1->2 isometry W (d^2 x d matrix) cut out of the perfect tensor."""
    cert = verify_perfect(V)
    c = cert.constant([0])
    m = V.flatten_map([0])
    return np.asarray(m) / math.sqrt(c)


@dataclass(frozen=True)
class CutoffState:
    """A representative (cutoff, amplitudes) of a semicontinuous-limit state."""

    cutoff: DyadicPartition
    amplitudes: np.ndarray
    tensor: DenseTensor

    def __post_init__(self):
        d = self.tensor.leg_dims[0]
        n = len(self.cutoff)
        arr = np.asarray(self.amplitudes, dtype=complex)
        if arr.shape != (d,) * n:
            arr = arr.reshape((d,) * n)
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.tensor.leg_dims[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    # -- text format --------------------------------------------------------

    def to_text(self, tensor_name: str = "custom") -> str:
        lines = [f"cutoff: {self.cutoff}; d: {self.dim}; tensor: {tensor_name}"]
        flat = self.amplitudes.reshape(-1)
        for i, v in enumerate(flat):
            if v != 0:
                v = complex(v)
                lines.append(f"{i} {v.real!r} {v.imag!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, tensor: DenseTensor) -> "CutoffState":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(
            part.strip().split(":", 1) for part in lines[0].split(";")
        )
        cutoff = DyadicPartition.parse(head["cutoff"].strip())
        d = int(head["d"].strip())
        if d != tensor.leg_dims[0]:
            raise TheoryMismatch("header dimension does not match tensor")
        flat = np.zeros(d ** len(cutoff), dtype=complex)
        for ln in lines[1:]:
            idx, re, im = ln.split()
            flat[int(idx)] = complex(float(re), float(im))
        return cls(cutoff, flat, tensor)


@dataclass(frozen=True)
class FineGrainer:
    """Isometric embedding from states at `source` to states at `target`.

    `carets` is the exact network description: the set of intervals that get
    split by one copy of V; the composition law is set union of carets.
    """

    source: DyadicPartition
    target: DyadicPartition
    tensor: DenseTensor
    carets: frozenset[StdDyadicInterval]

    @property
    def matrix(self) -> np.ndarray:
        d = self.tensor.leg_dims[0]
        W = _normalized_splitter(self.tensor)

        def block(tree: TTree) -> np.ndarray:
            # isometry from one leg to the leaves of `tree`
            if tree.is_leaf:
                return np.eye(d, dtype=complex)
            left = block(tree.left)
            right = block(tree.right)
            return np.kron(left, right) @ W

        src_tree = partition_to_tree(self.source)
        tgt_tree = partition_to_tree(self.target)
        blocks = [
            block(_subtree_at(tgt_tree, leaf_path))
            for leaf_path in _leaf_paths(src_tree)
        ]
        out = np.eye(1, dtype=complex)
        for b in blocks:
            out = np.kron(out, b)
        return out

    def apply(self, state: CutoffState) -> CutoffState:
        d = state.dim
        n = len(self.target)
        vec = self.matrix @ state.amplitudes.reshape(-1)
        return CutoffState(self.target, vec.reshape((d,) * n), state.tensor)


def _leaf_paths(tree: TTree, prefix=()):
    if tree.is_leaf:
        yield prefix
        return
    yield from _leaf_paths(tree.left, prefix + (0,))
    yield from _leaf_paths(tree.right, prefix + (1,))


def _subtree_at(tree: TTree, path) -> TTree:
    for step in path:
        if tree.is_leaf:
            raise NotARefinement("target partition does not refine the source")
        tree = tree.left if step == 0 else tree.right
    return tree


def fine_grainer(
    gamma: DyadicPartition, gamma2: DyadicPartition, V: DenseTensor
) -> FineGrainer:
    """The network of V's filling the region between nested cutoffs."""
    if not refines(gamma, gamma2):
        raise NotARefinement(f"{gamma2} does not refine {gamma}")
    src_internal = set(partition_to_tree(gamma).internal_intervals())
    tgt_internal = set(partition_to_tree(gamma2).internal_intervals())
    carets = frozenset(tgt_internal - src_internal)
    _check_cap(len(gamma2), V.leg_dims[0])
    return FineGrainer(gamma, gamma2, V, carets)


def _cup(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex).reshape(-1) / math.sqrt(d)


def vacuum(gamma: DyadicPartition, V: DenseTensor) -> CutoffState:
    """The holographic state of the standard tessellation inside `gamma`."""
    if len(gamma) < 2:
        raise ValueError("the vacuum needs a cutoff with at least two intervals")
    d = V.leg_dims[0]
    base = CutoffState(BASE_PARTITION, _cup(d), V)
    if gamma == BASE_PARTITION:
        return base
    return fine_grainer(BASE_PARTITION, gamma, V).apply(base)


def inner_product(s1: CutoffState, s2: CutoffState) -> complex:
    """<s1|s2> after fine-graining both to a common refinement."""
    if s1.tensor != s2.tensor:
        raise TheoryMismatch("states belong to different theories")
    gamma = common_refinement(s1.cutoff, s2.cutoff)
    a1 = fine_grainer(s1.cutoff, gamma, s1.tensor).apply(s1)
    a2 = fine_grainer(s2.cutoff, gamma, s2.tensor).apply(s2)
    return complex(np.vdot(a1.amplitudes, a2.amplitudes))


def act(f: TreeDiagram, s: CutoffState) -> CutoffState:
    """The unitary action of a Thompson-T element on a cutoff state.

    The cutoff is refined until the image partition is standard dyadic; the
    amplitudes travel with their intervals, so the leg order is re-anchored
    cyclically by the element's marker.
    """
    f = reduce_diagram(f)
    gamma = common_refinement(s.cutoff, f.domain_partition)
    refined = fine_grainer(s.cutoff, gamma, s.tensor).apply(s)
    pl = to_pl_map(f)
    n = len(gamma)
    images = []
    for iv in gamma.intervals:
        left = pl(iv.left)
        length = iv.length.scale_pow2(_slope_exp_at(pl, iv.left))
        images.append((left, length))
    breaks = sorted(left for left, _ in images)
    image_partition = DyadicPartition(breaks + [ONE])
    # interval j of gamma lands at position (m + j) mod n of the image
    m = breaks.index(images[0][0])
    perm = [(k - m) % n for k in range(n)]
    amps = refined.amplitudes.transpose(perm)
    return CutoffState(image_partition, amps, s.tensor)


def _slope_exp_at(pl, x: DyadicRational) -> int:
    for x0, x1, _, k in pl.pieces:
        if x0 <= x < x1:
            return k
    raise ValueError(f"{x} not covered")


# ---------------------------------------------------------------------------
# matrix elements


def _grain_network(tree: TTree, W3: np.ndarray, nodes, bonds, open_legs, feed):
    """Wire one copy of W3 per internal node of `tree` below the root.

    `feed` is the (node, leg) pair supplying this subtree's input; open leaf
    legs are appended to open_legs left to right.
    """
    if tree.is_leaf:
        open_legs.append(feed)
        return
    idx = len(nodes)
    nodes.append(W3)
    bonds.append((feed, (idx, 0)))
    _grain_network(tree.left, W3, nodes, bonds, open_legs, (idx, 1))
    _grain_network(tree.right, W3, nodes, bonds, open_legs, (idx, 2))


def _diagram_matrix_element(f: TreeDiagram, V: DenseTensor) -> complex:
    """Reflect-and-join evaluation of <Omega|pi(f)|Omega> from the reduced
    diagram: ket network from the domain tree, reflected (conjugated) bra
    network from the range tree, leaves joined with the marker offset."""
    f = reduce_diagram(f)
    if f.domain_tree.is_leaf:
        return complex(1.0)
    d = V.leg_dims[0]
    W = _normalized_splitter(V)
    W3 = DenseTensor(W.reshape(d, d, d).transpose(2, 0, 1))  # legs (in, out, out)
    W3c = DenseTensor(np.conj(W3.array))
    nodes: list[DenseTensor] = []
    bonds: list = []
    ket_leaves = _grain_like_side(f.domain_tree, W3, d, nodes, bonds)
    bra_leaves = _grain_like_side(f.range_tree, W3c, d, nodes, bonds)
    n = f.num_leaves
    for j in range(n):
        bonds.append((ket_leaves[j], bra_leaves[(f.marker + j) % n]))
    net = TensorNetwork(nodes, bonds, [])
    value = contract(net)
    return complex(value.array)


def _grain_like_side(tree: TTree, W3: DenseTensor, d: int, nodes, bonds):
    cup = DenseTensor(np.eye(d) / math.sqrt(d))
    idx = len(nodes)
    nodes.append(cup)
    open_legs: list = []
    _grain_network(tree.left, W3, nodes, bonds, open_legs, (idx, 0))
    _grain_network(tree.right, W3, nodes, bonds, open_legs, (idx, 1))
    return open_legs


def vacuum_matrix_element(
    f: TreeDiagram, V: DenseTensor, route: str = "action"
) -> complex:
    """<Omega|pi(f)|Omega> by the action route or the diagram route."""
    if route == "action":
        omega = vacuum(BASE_PARTITION, V)
        return inner_product(omega, act(f, omega))
    if route == "diagram":
        return _diagram_matrix_element(f, V)
    raise ValueError(f"unknown route {route!r}; use 'action' or 'diagram'")


# ---------------------------------------------------------------------------
# bulk kets and the Gram matrix


@dataclass(frozen=True)
class BulkKet:
    """The ket |R,S> of the bulk space, realized as pi((R,S,marker))|Omega>."""

    domain_tree: TTree
    range_tree: TTree
    marker: int = 0

    def element(self) -> TreeDiagram:
        return TreeDiagram(self.domain_tree, self.range_tree, self.marker)

    def state(self, V: DenseTensor) -> CutoffState:
        return act(self.element(), vacuum(BASE_PARTITION, V))


def bulk_inner(k1: BulkKet, k2: BulkKet, V: DenseTensor) -> complex:
    """<R,S|R',S'>: carets are adjoined implicitly by the common refinement
    taken inside the state inner product."""
    return inner_product(k1.state(V), k2.state(V))


def gram_matrix(words, V: DenseTensor) -> np.ndarray:
    """Gram matrix G[i,j] = <Omega|pi(w_i^-1 w_j)|Omega>."""
    words = list(words)
    n = len(words)
    G = np.zeros((n, n), dtype=complex)
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            G[i, j] = vacuum_matrix_element(compose(inverse(wi), wj), V)
    return G


# ---------------------------------------------------------------------------
# the BTZ state


@dataclass(frozen=True)
class BTZState:
    """Two-boundary state of the cylinder made by identifying two geodesics.

    Amplitude legs are ordered A legs first, then B legs.
    """

    halfwidth: int
    left_cutoff: DyadicPartition
    right_cutoff: DyadicPartition
    amplitudes: np.ndarray
    tensor: DenseTensor

    @property
    def num_a(self) -> int:
        return 2 * self.halfwidth

    @property
    def num_b(self) -> int:
        return 2 * self.halfwidth

    @property
    def cut_bonds(self) -> int:
        return 4 * self.halfwidth


def btz_state(halfwidth: int, V: DenseTensor) -> BTZState:
    """Contract the ring of 4*halfwidth triangles of the finite BTZ strip.

    The strip has 2*halfwidth triangle columns between the two identified
    geodesics; each column is two triangles sharing a diagonal, and closing
    the strip into a ring performs the identification.  Even triangles face
    boundary A, odd triangles boundary B.
    """
    if halfwidth < 1:
        raise ValueError("halfwidth must be at least 1")
    d = V.leg_dims[0]
    ntri = 4 * halfwidth
    _check_cap(ntri, d)
    nodes = [V] * ntri
    bonds = []
    open_a, open_b = [], []
    for i in range(ntri):
        # triangle legs: 0 = bond to previous, 1 = boundary, 2 = bond to next
        bonds.append(((i, 2), ((i + 1) % ntri, 0)))
        (open_a if i % 2 == 0 else open_b).append((i, 1))
    net = TensorNetwork(nodes, bonds, open_a + open_b)
    amps = contract(net).array
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise ValueError("BTZ network contracted to zero")
    amps = amps / norm
    cutoff = _staircase_partition(2 * halfwidth)
    return BTZState(halfwidth, cutoff, cutoff, amps, V)


def _staircase_partition(count: int) -> DyadicPartition:
    """A standard dyadic partition with `count` intervals, halving rightward."""
    breaks = [ZERO] + [
        ONE - DyadicRational(1, k) for k in range(1, count)
    ]
    return DyadicPartition(breaks + [ONE])


def entanglement_entropy(state, subsystem) -> float:
    """Von Neumann entropy (natural log) of the reduced state on `subsystem`."""
    amps = np.asarray(state.amplitudes, dtype=complex)
    n = amps.ndim
    sub = sorted(set(subsystem))
    if any(not 0 <= j < n for j in sub):
        raise IndexError("subsystem leg index out of range")
    rest = [j for j in range(n) if j not in sub]
    m = amps.transpose(sub + rest).reshape(
        math.prod(amps.shape[j] for j in sub), -1
    )
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-14]
    return float(-np.sum(evals * np.log(evals)))
