"""Perfect tensors and a small deterministic dense contraction engine.

Tensor entries are complex doubles; exactness lives in the combinatorics.
Networks here are trees or single cycles, so a greedy smallest-intermediate
pairwise contraction order is already optimal enough and fully deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotPerfect

__all__ = [
    "DenseTensor",
    "PerfectTensorCertificate",
    "TensorNetwork",
    "four_colour_tensor",
    "singlet_tensor",
    "qutrit_code_tensor",
    "builtin_tensor",
    "verify_perfect",
    "normalize_isometry",
    "contract",
]

DEFAULT_TOL = 1e-12


class DenseTensor:
    """Dense complex tensor; immutable wrapper over a numpy array."""

    __slots__ = ("array",)

    def __init__(self, array):
        arr = np.asarray(array, dtype=complex)
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.setflags(write=False)
        self.array = arr

    @property
    def leg_dims(self) -> tuple[int, ...]:
        return self.array.shape

    @property
    def num_legs(self) -> int:
        return self.array.ndim

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self.leg_dims == other.leg_dims and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.leg_dims, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"DenseTensor(dims={list(self.leg_dims)})"

    def flatten_map(self, in_legs) -> np.ndarray:
        """Matrix of the linear map from the legs `in_legs` to the rest."""
        in_legs = list(in_legs)
        out_legs = [j for j in range(self.num_legs) if j not in in_legs]
        perm = out_legs + in_legs
        din = math.prod(self.leg_dims[j] for j in in_legs)
        return self.array.transpose(perm).reshape(-1, din)

    # -- text file format ---------------------------------------------------

    def to_text(self) -> str:
        lines = ["dims: " + " ".join(str(d) for d in self.leg_dims)]
        for idx in itertools.product(*(range(d) for d in self.leg_dims)):
            v = complex(self.array[idx])
            if v != 0:
                lines.append(
                    " ".join(str(i) for i in idx) + f"  {v.real!r} {v.imag!r}"
                )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DenseTensor":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("dims:"):
            raise ValueError("tensor text must start with a 'dims:' line")
        dims = tuple(int(tok) for tok in lines[0].split(":", 1)[1].split())
        arr = np.zeros(dims, dtype=complex)
        for ln in lines[1:]:
            toks = ln.split()
            idx = tuple(int(t) for t in toks[: len(dims)])
            re, im = float(toks[len(dims)]), float(toks[len(dims) + 1])
            arr[idx] = complex(re, im)
        return cls(arr)


def four_colour_tensor() -> DenseTensor:
    """3-leg, d=3 tensor: entry 1 iff the indices are pairwise distinct."""
    arr = np.zeros((3, 3, 3))
    for j, k, l in itertools.permutations(range(3)):
        arr[j, k, l] = 1.0
    return DenseTensor(arr)


def singlet_tensor() -> DenseTensor:
    """3-leg, d=4 singlet-insertion map; legs are qubit pairs.

    Leg 0 is the input pair (j,k); legs 1 and 2 are the output pairs
    (j, s1) and (s2, k), with (s1, s2) running over the singlet.
    """
    arr = np.zeros((4, 4, 4))
    s = 1.0 / math.sqrt(2.0)
    for j in range(2):
        for k in range(2):
            arr[2 * j + k, 2 * j + 0, 2 * 1 + k] += 0.5 * s
            arr[2 * j + k, 2 * j + 1, 2 * 0 + k] += -0.5 * s
    return DenseTensor(arr)


def qutrit_code_tensor() -> DenseTensor:
    """4-leg, d=3 permutation tensor |x,y> -> |2x+y mod 3, x+y mod 3>."""
    arr = np.zeros((3, 3, 3, 3))
    for x in range(3):
        for y in range(3):
            arr[x, y, (2 * x + y) % 3, (x + y) % 3] = 1.0
    return DenseTensor(arr)


_BUILTINS = {
    "four-colour": four_colour_tensor,
    "singlet": singlet_tensor,
    "qutrit-code": qutrit_code_tensor,
}


def builtin_tensor(name: str) -> DenseTensor:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(
            f"unknown builtin tensor {name!r}; choose from {sorted(_BUILTINS)}"
        ) from None


@dataclass(frozen=True)
class PerfectTensorCertificate:
    tensor: DenseTensor
    normalization: dict  # frozenset of in-leg indices -> proportionality constant
    rotation_invariant: bool
    tolerance: float

    def constant(self, in_legs) -> float:
        return self.normalization[frozenset(in_legs)]


def _bipartitions(n: int):
    """All index subsets A with 1 <= |A| <= n/2, smaller-first, deterministic."""
    for size in range(1, n // 2 + 1):
        for combo in itertools.combinations(range(n), size):
            yield combo


def verify_perfect(t: DenseTensor, tol: float = DEFAULT_TOL) -> PerfectTensorCertificate:
    """Check proportional-isometry across every bipartition; raises NotPerfect."""
    dims = set(t.leg_dims)
    if len(dims) != 1:
        raise NotPerfect("all leg dimensions must be equal for perfectness")
    norm2 = float(np.vdot(t.array, t.array).real)
    if norm2 <= tol:
        raise NotPerfect("zero tensor is not perfect", bipartition=())
    constants = {frozenset(): norm2}
    for combo in _bipartitions(t.num_legs):
        m = t.flatten_map(combo)
        gram = m.conj().T @ m
        c = float(np.trace(gram).real) / gram.shape[0]
        deviation = float(np.max(np.abs(gram - c * np.eye(gram.shape[0]))))
        if c <= tol or deviation > tol * max(1.0, c):
            raise NotPerfect(
                f"flattening onto legs {list(combo)} deviates from a scaled "
                f"isometry by {deviation:.3e}",
                bipartition=combo,
                deviation=deviation,
            )
        constants[frozenset(combo)] = c
    rotated = t.array
    rotation_invariant = True
    for _ in range(t.num_legs - 1):
        rotated = np.moveaxis(rotated, 0, -1)
        if np.max(np.abs(rotated - t.array)) > tol:
            rotation_invariant = False
            break
    return PerfectTensorCertificate(t, constants, rotation_invariant, tol)


def normalize_isometry(t: DenseTensor, split) -> DenseTensor:
    """Rescale so the flattening with input legs `split` is an exact isometry."""
    cert = verify_perfect(t)
    c = cert.constant(split)
    return DenseTensor(t.array / math.sqrt(c))


# ---------------------------------------------------------------------------
# networks


@dataclass
class TensorNetwork:
    """Contraction graph: tensors per node, bonds between (node, leg) pairs,
    plus an ordered list of open (node, leg) pairs."""

    tensors: list[DenseTensor]
    bonds: list[tuple[tuple[int, int], tuple[int, int]]]
    open_legs: list[tuple[int, int]] = field(default_factory=list)

    def validate(self):
        seen: dict[tuple[int, int], int] = {}
        for b, ((n1, l1), (n2, l2)) in enumerate(self.bonds):
            for node, leg in ((n1, l1), (n2, l2)):
                if not 0 <= node < len(self.tensors):
                    raise ValueError(f"bond {b} references missing node {node}")
                if not 0 <= leg < self.tensors[node].num_legs:
                    raise ValueError(f"bond {b} references missing leg {leg} of node {node}")
                if (node, leg) in seen:
                    raise ValueError(f"leg ({node},{leg}) used more than once")
                seen[(node, leg)] = b
            if self.tensors[n1].leg_dims[l1] != self.tensors[n2].leg_dims[l2]:
                raise DimensionMismatch(
                    f"bond {b} joins legs of dimension "
                    f"{self.tensors[n1].leg_dims[l1]} and {self.tensors[n2].leg_dims[l2]}"
                )
        for node, leg in self.open_legs:
            if (node, leg) in seen:
                raise ValueError(f"open leg ({node},{leg}) is also bonded")
            seen[(node, leg)] = -1
        for node, t in enumerate(self.tensors):
            for leg in range(t.num_legs):
                if (node, leg) not in seen:
                    raise ValueError(f"leg ({node},{leg}) is neither bonded nor open")


def contract(net: TensorNetwork) -> DenseTensor:
    """Contract the whole network into a dense tensor over its open legs.

    Disconnected components are contracted independently and combined by
    outer product; the result is deterministic for a given network.
    """
    net.validate()
    # label every leg with a bond id or an open id
    labels: dict[tuple[int, int], int] = {}
    for b, (end1, end2) in enumerate(net.bonds):
        labels[end1] = b
        labels[end2] = b
    open_ids = {}
    for j, end in enumerate(net.open_legs):
        labels[end] = len(net.bonds) + j
        open_ids[len(net.bonds) + j] = j

    pool: list[tuple[np.ndarray, list[int]]] = []
    for node, t in enumerate(net.tensors):
        pool.append((t.array, [labels[(node, leg)] for leg in range(t.num_legs)]))

    def contract_pair(a, b):
        arr_a, lab_a = a
        arr_b, lab_b = b
        shared = [l for l in lab_a if l in lab_b]
        ax_a = [lab_a.index(l) for l in shared]
        ax_b = [lab_b.index(l) for l in shared]
        out = np.tensordot(arr_a, arr_b, axes=(ax_a, ax_b))
        lab = [l for l in lab_a if l not in shared] + [l for l in lab_b if l not in shared]
        # self-bonds may remain duplicated after the pairwise step
        return trace_dups((out, lab))

    def trace_dups(item):
        arr, lab = item
        while True:
            dup = None
            for i, l in enumerate(lab):
                if l in lab[i + 1 :]:
                    dup = (i, i + 1 + lab[i + 1 :].index(l))
                    break
            if dup is None:
                return arr, lab
            i, j = dup
            arr = np.trace(arr, axis1=i, axis2=j)
            lab = [l for k, l in enumerate(lab) if k not in (i, j)]

    pool = [trace_dups(item) for item in pool]
    while len(pool) > 1:
        best = None
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                shared = set(pool[i][1]) & set(pool[j][1])
                if not shared:
                    continue
                size = math.prod(
                    d
                    for arr, lab in (pool[i], pool[j])
                    for d, l in zip(arr.shape, lab)
                    if l not in shared
                )
                if best is None or size < best[0]:
                    best = (size, i, j)
        if best is None:
            # disconnected: outer-product the first two components
            i, j = 0, 1
        else:
            _, i, j = best
        merged = contract_pair(pool[i], pool[j]) if best is not None else (
            np.multiply.outer(pool[i][0], pool[j][0]),
            pool[i][1] + pool[j][1],
        )
        pool = [p for k, p in enumerate(pool) if k not in (i, j)] + [merged]

    arr, lab = pool[0]
    order = sorted(range(len(lab)), key=lambda k: open_ids[lab[k]])
    return DenseTensor(arr.transpose(order))
