"""Parity decision trees: construction, checking, certificates, decompositions.

Every query mask stored in a tree or certificate lives in the ORIGINAL
coordinates of the input function.  Builders that work through a chain of
restrictions carry an affine frame (basis images plus shift) and translate
each chosen direction back before recording it, so the recorded masks along
any root-to-leaf path are linearly independent by construction.

Trace l1 numerators are always expressed over the root denominator
``2**f.n`` so they are comparable along every path.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ._bits import (
    delete_bit,
    dot,
    highest_set_bit,
    lex_key,
    lowest_set_bit,
    mask_to_string,
    string_to_mask,
)
from .core import BooleanFunction, Spectrum, anf_of, deg2, to_pm_spectrum, wht
from .errors import (
    BoolFourierError,
    ConstantInput,
    DimensionMismatch,
    InvalidTree,
    NotFound,
    TooLarge,
)
from .gf2 import echelon_pivots, gf2_rank, solve_linear_system
from .restrict import (
    AffineConstraint,
    _restrict_once,
    _translate_constraint,
    derivative,
    fold,
    restrict_affine,
    spectrum_split,
)

__all__ = [
    "PdtLeaf",
    "PdtNode",
    "Pdt",
    "TraceNode",
    "BuildTrace",
    "PdtCheckReport",
    "Certificate",
    "RankResult",
    "pdt_eval",
    "pdt_check",
    "build_greedy_l1",
    "build_heavy_hitter",
    "build_span_query",
    "build_degree_reduce",
    "rank_exact",
    "degree_reducing_subspace",
    "cert_greedy_l1",
    "cert_norm_halving",
    "cert_norm_halving_with_trace",
    "HalvingStep",
    "certificate_check",
    "green_sanders_decompose",
    "tree_to_dict",
    "tree_from_dict",
    "tree_to_dot",
    "DEGREE_SEARCH_BUDGET",
]

# Candidate-subspace budget for the degree-reducing search; exceeding it makes
# the search report NotFound so callers can fall back.
DEGREE_SEARCH_BUDGET = 50_000
_SEARCH_N_LIMIT = 12


@dataclass(frozen=True)
class PdtLeaf:
    value: int


@dataclass(frozen=True)
class PdtNode:
    mask: int
    child0: "PdtNodeOrLeaf"
    child1: "PdtNodeOrLeaf"


PdtNodeOrLeaf = Union[PdtLeaf, PdtNode]


class Pdt:
    """A parity decision tree over {0,1}^n with query masks in original coords."""

    __slots__ = ("n", "root")

    def __init__(self, n: int, root: PdtNodeOrLeaf):
        self.n = n
        self.root = root
        self.validate()

    def validate(self) -> None:
        top = 1 << self.n

        def walk(node: PdtNodeOrLeaf, path_masks: List[int]) -> None:
            if isinstance(node, PdtLeaf):
                if node.value not in (0, 1):
                    raise InvalidTree(f"leaf value {node.value} not a bit")
                return
            if not 0 < node.mask < top:
                raise InvalidTree(f"query mask {node.mask} out of range for n={self.n}")
            path_masks.append(node.mask)
            if gf2_rank(path_masks) != len(path_masks):
                raise InvalidTree("query masks along a path are dependent")
            walk(node.child0, path_masks)
            walk(node.child1, path_masks)
            path_masks.pop()

        walk(self.root, [])

    def depth(self) -> int:
        def d(node: PdtNodeOrLeaf) -> int:
            if isinstance(node, PdtLeaf):
                return 0
            return 1 + max(d(node.child0), d(node.child1))

        return d(self.root)

    def size(self) -> int:
        """Total node count, internal nodes plus leaves."""

        def s(node: PdtNodeOrLeaf) -> int:
            if isinstance(node, PdtLeaf):
                return 1
            return 1 + s(node.child0) + s(node.child1)

        return s(self.root)

    def num_leaves(self) -> int:
        def c(node: PdtNodeOrLeaf) -> int:
            if isinstance(node, PdtLeaf):
                return 1
            return c(node.child0) + c(node.child1)

        return c(self.root)

    def leaf_paths(self) -> Iterator[Tuple[List[AffineConstraint], int]]:
        """Yield (path constraints, leaf value) for every leaf, left to right."""

        def walk(node: PdtNodeOrLeaf, path: List[AffineConstraint]):
            if isinstance(node, PdtLeaf):
                yield list(path), node.value
                return
            for bit, child in ((0, node.child0), (1, node.child1)):
                path.append(AffineConstraint(node.mask, bit))
                yield from walk(child, path)
                path.pop()

        yield from walk(self.root, [])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pdt):
            return NotImplemented
        return self.n == other.n and self.root == other.root

    def __repr__(self) -> str:
        return f"Pdt(n={self.n}, depth={self.depth()}, size={self.size()})"


@dataclass(frozen=True)
class TraceNode:
    """One node of a build trace.

    ``l0``/``l1_num`` describe the +/-1 spectrum of the subfunction handled at
    this node, with l1_num over the root denominator 2**n.  ``mask`` is the
    recorded (original-coordinates) query, None for leaves.  ``info`` carries
    builder-specific annotations.
    """

    node_id: int
    parent_id: Optional[int]
    branch: Optional[int]
    mask: Optional[int]
    l0: int
    l1_num: int
    info: dict = field(default_factory=dict)


@dataclass
class BuildTrace:
    n: int
    denom_exp: int
    nodes: List[TraceNode] = field(default_factory=list)

    def add(self, **kw) -> int:
        node_id = len(self.nodes)
        self.nodes.append(TraceNode(node_id=node_id, **kw))
        return node_id


@dataclass(frozen=True)
class PdtCheckReport:
    correct: bool
    depth: int
    size: int
    first_mismatch: Optional[int]


@dataclass(frozen=True)
class Certificate:
    """Independent affine constraints forcing f to a constant value."""

    constraints: Tuple[AffineConstraint, ...]
    value: int

    @property
    def codim(self) -> int:
        return len(self.constraints)


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: Tuple[AffineConstraint, ...]


def pdt_eval(tree: Pdt, x: int) -> int:
    """Evaluate the tree on a point by following parity answers."""
    if not 0 <= x < (1 << tree.n):
        raise DimensionMismatch(f"point {x} out of range for n={tree.n}")
    node = tree.root
    while isinstance(node, PdtNode):
        node = node.child1 if dot(node.mask, x) else node.child0
    return node.value


def _eval_all(tree: Pdt) -> np.ndarray:
    """Tree output on every point, computed by index partitioning."""
    out = np.zeros(1 << tree.n, dtype=np.uint8)

    def walk(node: PdtNodeOrLeaf, idx: np.ndarray) -> None:
        if isinstance(node, PdtLeaf):
            out[idx] = node.value
            return
        bits = np.bitwise_count(np.bitwise_and(idx, np.int64(node.mask))) & 1
        walk(node.child0, idx[bits == 0])
        walk(node.child1, idx[bits == 1])

    walk(tree.root, np.arange(1 << tree.n, dtype=np.int64))
    return out


def pdt_check(f: BooleanFunction, tree: Pdt) -> PdtCheckReport:
    """Exhaustively compare the tree with f; report depth, size, first mismatch."""
    if tree.n != f.n:
        raise DimensionMismatch(f"tree on {tree.n} variables, f on {f.n}")
    outputs = _eval_all(tree)
    diff = np.nonzero(outputs != f.table)[0]
    correct = diff.size == 0
    depth = tree.depth()
    if correct:
        l0 = wht(f).l0()
        if l0 > 4 ** depth:
            raise BoolFourierError(
                f"internal: sparsity {l0} exceeds 4^depth with a correct tree"
            )
    return PdtCheckReport(
        correct=correct,
        depth=depth,
        size=tree.size(),
        first_mismatch=None if correct else int(diff[0]),
    )


# ---------------------------------------------------------------------------
# Affine frame threading original coordinates through restrictions.


class _Frame:
    """Embedding of the current coordinates into the original space.

    A current point y maps to x = shift ^ XOR of basis[i] over set bits of y.
    """

    __slots__ = ("n", "basis", "shift")

    def __init__(self, n: int, basis: List[int], shift: int):
        self.n = n
        self.basis = basis
        self.shift = shift

    @classmethod
    def identity(cls, n: int) -> "_Frame":
        return cls(n, [1 << i for i in range(n)], 0)

    @property
    def m(self) -> int:
        return len(self.basis)

    def query_mask(self, t: int) -> int:
        """Original mask Q with <Q, x> = <t, y> ^ <Q, shift> on the subspace."""
        rhs = [(t >> i) & 1 for i in range(self.m)]
        q = solve_linear_system(self.basis, rhs, self.n)
        if q is None or q == 0:
            raise BoolFourierError("internal: frame query has no nonzero solution")
        return q

    def pullback(self, q: int) -> int:
        """Current-coordinates direction of an original mask (may be zero)."""
        t = 0
        for i, v in enumerate(self.basis):
            if dot(v, q):
                t |= 1 << i
        return t

    def restricted(self, t: int, b: int) -> "_Frame":
        """Frame after restricting the current coordinates along <t, y> = b."""
        p = lowest_set_bit(t)
        h = highest_set_bit(t)
        new_basis = []
        for q in range(self.m):
            if q == p:
                continue
            v = self.basis[q]
            if (t >> q) & 1:
                v ^= self.basis[p]
            new_basis.append(v)
        shift = self.shift ^ (self.basis[h] if b else 0)
        return _Frame(self.n, new_basis, shift)


def _restrict_with_frame(
    g: BooleanFunction,
    frame: _Frame,
    constraints: Sequence[Tuple[int, int]],
) -> Tuple[BooleanFunction, _Frame, List[AffineConstraint]]:
    """Apply current-coordinate constraints stepwise; report original ones."""
    recorded = []
    pending = list(constraints)
    while pending:
        t, b = pending[0]
        q = frame.query_mask(t)
        recorded.append(AffineConstraint(q, b ^ dot(q, frame.shift)))
        g = _restrict_once(g, t, b)
        frame = frame.restricted(t, b)
        pending = [_translate_constraint(tj, bj, t, b) for tj, bj in pending[1:]]
    return g, frame, recorded


def _pm_of(g: BooleanFunction) -> Spectrum:
    return to_pm_spectrum(wht(g))


def _leaf_bit(spectrum: Spectrum) -> int:
    """Leaf value of a constant +/-1 spectrum (f = (1 - f_pm) / 2)."""
    num = spectrum.coeffs.get(0, 0)
    unit = 1 << spectrum.denom_exp
    if num == unit:
        return 0
    if num == -unit:
        return 1
    raise BoolFourierError("internal: spectrum is not a +/-1 constant")


def _top_two(spectrum: Spectrum) -> Tuple[int, int]:
    """The two largest-magnitude coefficients; ties by x1-first mask order."""
    n = spectrum.n
    items = heapq.nsmallest(
        2, spectrum.coeffs.items(), key=lambda kv: (-abs(kv[1]), lex_key(kv[0], n))
    )
    return items[0][0], items[1][0]


# ---------------------------------------------------------------------------
# Builders.


def _build_by_choice(f: BooleanFunction, choose):
    """Shared recursion: fold the +/-1 spectrum along chosen directions.

    ``choose(spectrum)`` returns (direction, trace annotations) for a spectrum
    with l0 >= 2; single characters and constants are handled here.
    """
    trace = BuildTrace(n=f.n, denom_exp=f.n)

    def rec(spec: Spectrum, frame: _Frame, parent: Optional[int], branch) -> PdtNodeOrLeaf:
        stats_l0 = spec.l0()
        l1 = spec.l1_num()
        masks = list(spec.coeffs)
        if stats_l0 <= 1 and (not masks or masks[0] == 0):
            value = _leaf_bit(spec)
            trace.add(parent_id=parent, branch=branch, mask=None, l0=stats_l0, l1_num=l1)
            return PdtLeaf(value)
        if stats_l0 == 1:
            t, info = masks[0], {}
        else:
            t, info = choose(spec)
        q = frame.query_mask(t)
        offset = dot(q, frame.shift)
        node_id = trace.add(
            parent_id=parent, branch=branch, mask=q, l0=stats_l0, l1_num=l1, info=info
        )
        children = {}
        for beta in (0, 1):
            b = beta ^ offset
            children[beta] = rec(
                fold(spec, t, b), frame.restricted(t, b), node_id, beta
            )
        return PdtNode(q, children[0], children[1])

    root = rec(_pm_of(f), _Frame.identity(f.n), None, None)
    return Pdt(f.n, root), trace


def build_greedy_l1(f: BooleanFunction) -> Tuple[Pdt, BuildTrace]:
    """Fold along the XOR of the two largest-magnitude +/-1 coefficients.

    Ties are broken by x1-first mask order; both branches are expanded.
    """

    def choose(spec: Spectrum):
        a1, a2 = _top_two(spec)
        return a1 ^ a2, {}

    return _build_by_choice(f, choose)


def _heavy_direction(spec: Spectrum) -> Tuple[int, int]:
    """Direction maximizing the number of support pairs {s, s'} with s^s' = t."""
    sup = np.array(spec.support(), dtype=np.int64)
    iu = np.triu_indices(sup.size, k=1)
    xors = (sup[:, None] ^ sup[None, :])[iu]
    values, counts = np.unique(xors, return_counts=True)
    best = counts.max()
    n = spec.n
    t = min((int(v) for v in values[counts == best]), key=lambda m: lex_key(m, n))
    return t, int(best)


def build_heavy_hitter(f: BooleanFunction) -> Tuple[Pdt, BuildTrace]:
    """Fold along the direction pairing up the most support masks.

    Every fold removes at least p(t) coefficients from each child's support.
    """

    def choose(spec: Spectrum):
        t, pairs = _heavy_direction(spec)
        return t, {"pairs": pairs}

    return _build_by_choice(f, choose)


def _span_basis(spectrum: Spectrum) -> List[int]:
    """Greedy independent subset of the support, scanned in x1-first order."""
    n = spectrum.n
    basis: List[int] = []
    ech: List[int] = []
    for s in sorted(spectrum.coeffs, key=lambda m: lex_key(m, n)):
        r = s
        for e in ech:
            r = min(r, r ^ e)
        if r:
            basis.append(s)
            ech.append(r)
    return basis


def build_span_query(f: BooleanFunction) -> Tuple[Pdt, BuildTrace]:
    """Query a basis of the span of the support; depth is exactly span_dim."""
    spec01 = wht(f)
    basis = _span_basis(spec01)
    d = len(basis)
    if d > 20:
        raise TooLarge(f"span dimension {d} would need 2^{d} leaves")
    trace = BuildTrace(n=f.n, denom_exp=f.n)

    def rec(spec: Spectrum, frame: _Frame, level: int, parent, branch) -> PdtNodeOrLeaf:
        l0, l1 = spec.l0(), spec.l1_num()
        if level == d:
            trace.add(parent_id=parent, branch=branch, mask=None, l0=l0, l1_num=l1)
            return PdtLeaf(_leaf_bit(spec))
        q = basis[level]
        t = frame.pullback(q)
        if t == 0:
            raise BoolFourierError("internal: span basis collapsed under folding")
        offset = dot(q, frame.shift)
        node_id = trace.add(
            parent_id=parent, branch=branch, mask=q, l0=l0, l1_num=l1
        )
        children = {}
        for beta in (0, 1):
            b = beta ^ offset
            children[beta] = rec(
                fold(spec, t, b), frame.restricted(t, b), level + 1, node_id, beta
            )
        return PdtNode(q, children[0], children[1])

    root = rec(_pm_of(f), _Frame.identity(f.n), 0, None, None)
    return Pdt(f.n, root), trace


# ---------------------------------------------------------------------------
# Degree-drop subspace search.


def _spread_bits(c: int, positions: Sequence[int]) -> int:
    t = 0
    i = 0
    while c:
        if c & 1:
            t |= 1 << positions[i]
        c >>= 1
        i += 1
    return t


def _rref_bases(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Canonical reduced-echelon bases (lowest-bit pivots) of k-dim mask spaces.

    Yields each subspace exactly once, as its unique canonical basis sorted
    ascending, in ascending tuple order.
    """

    def rec(start: int, chosen: Tuple[int, ...], pivots: int, union: int):
        if len(chosen) == k:
            yield chosen
            return
        positions = [q for q in range(n) if not (pivots >> q) & 1]
        m = len(positions)
        lo, hi = 1, 1 << m
        while lo < hi:  # first counter whose spread reaches start
            mid = (lo + hi) // 2
            if _spread_bits(mid, positions) >= start:
                hi = mid
            else:
                lo = mid + 1
        for c in range(lo, 1 << m):
            t = _spread_bits(c, positions)
            p = t & -t
            if union & p:
                continue  # chosen rows must be zero at the new pivot
            yield from rec(t + 1, chosen + (t,), pivots | p, union | t)

    yield from rec(1, (), 0, 0)


class _DegreeDropChecker:
    """Fast exact test for deg2(f restricted to an affine subspace) < deg2(f).

    The restricted table is packed into a single int and the GF(2) Moebius
    transform runs word-parallel; the degree drops exactly when no monomial
    of weight >= deg2(f) survives.
    """

    def __init__(self, f: BooleanFunction):
        self.f = f
        self.n = f.n
        self.degree = deg2(f)
        self.table = f.table
        self._mob_masks: Dict[int, List[int]] = {}
        self._weight_masks: Dict[int, int] = {}

    def _mobius_masks(self, m: int) -> List[int]:
        masks = self._mob_masks.get(m)
        if masks is None:
            masks = []
            size = 1 << m
            for i in range(m):
                step = 1 << i
                unit = (1 << step) - 1
                period = (1 << (2 * step)) - 1
                masks.append(((1 << size) - 1) // period * unit)
            self._mob_masks[m] = masks
        return masks

    def _weight_mask(self, m: int) -> int:
        key = m
        mask = self._weight_masks.get(key)
        if mask is None:
            mask = 0
            for x in range(1 << m):
                if x.bit_count() >= self.degree:
                    mask |= 1 << x
            self._weight_masks[key] = mask
        return mask

    def subspace_points(self, basis_masks: Sequence[int]) -> np.ndarray:
        """Points of the kernel of the constraint masks, one per quotient index."""
        ech, pivots = echelon_pivots(basis_masks)
        free = [q for q in range(self.n) if q not in pivots]
        kernel = []
        for q in free:
            v = 1 << q
            for r, p in zip(ech, pivots):
                if (r >> q) & 1:
                    v |= 1 << p
            kernel.append(v)
        pts = np.zeros(1, dtype=np.int64)
        for v in kernel:
            pts = np.concatenate([pts, pts ^ np.int64(v)])
        return pts

    def shift_points(self, basis_masks: Sequence[int]) -> List[int]:
        """Points a_j with <t_i, a_j> = delta_ij, for composing coset shifts."""
        k = len(basis_masks)
        out = []
        for j in range(k):
            rhs = [1 if i == j else 0 for i in range(k)]
            a = solve_linear_system(basis_masks, rhs, self.n)
            if a is None:
                raise BoolFourierError("internal: dual point solve failed")
            out.append(a)
        return out

    def drops_on(self, pts: np.ndarray, shift: int) -> bool:
        m = int(pts.size).bit_length() - 1
        bits = self.table[pts ^ np.int64(shift)]
        packed = np.packbits(bits, bitorder="little").tobytes()
        t = int.from_bytes(packed, "little")
        for i, mask in enumerate(self._mobius_masks(m)):
            t ^= (t & mask) << (1 << i)
        return (t & self._weight_mask(m)) == 0


def rank_exact(
    f: BooleanFunction, max_codim: int = 4, max_candidates: Optional[int] = None
) -> RankResult:
    """Least codimension of an affine subspace where the GF(2) degree drops.

    Exhaustive search over constraint subspaces in increasing codimension;
    subspaces are enumerated once each via canonical reduced-echelon bases in
    ascending tuple order, and coset shifts in ascending binary order.
    Raises NotFound when no drop exists within max_codim (or the optional
    candidate budget is exhausted).
    """
    if f.is_constant():
        raise ConstantInput("rank is undefined for constant functions")
    if f.n > _SEARCH_N_LIMIT:
        raise TooLarge(f"subspace search supports n <= {_SEARCH_N_LIMIT}")
    checker = _DegreeDropChecker(f)
    examined = 0
    for k in range(1, min(max_codim, f.n) + 1):
        for basis_masks in _rref_bases(f.n, k):
            if max_candidates is not None and examined >= max_candidates:
                raise NotFound(
                    f"candidate budget {max_candidates} exhausted at codim {k}"
                )
            examined += 1
            pts = checker.subspace_points(basis_masks)
            duals = checker.shift_points(basis_masks)
            for bits in range(1 << k):
                shift = 0
                for j in range(k):
                    if (bits >> j) & 1:
                        shift ^= duals[j]
                if checker.drops_on(pts, shift):
                    witness = tuple(
                        AffineConstraint(t, (bits >> j) & 1)
                        for j, t in enumerate(basis_masks)
                    )
                    return RankResult(rank=k, witness=witness)
    raise NotFound(f"no degree drop within codimension {max_codim}")


def degree_reducing_subspace(
    f: BooleanFunction,
    max_codim: int = 4,
    max_candidates: int = DEGREE_SEARCH_BUDGET,
) -> List[int]:
    """Minimal independent constraint set dropping the degree on ALL cosets.

    Same enumeration order as rank_exact; raises NotFound on budget
    exhaustion or when no subspace within max_codim works.
    """
    if f.is_constant():
        raise ConstantInput("constant functions have no degree to reduce")
    if f.n > _SEARCH_N_LIMIT:
        raise TooLarge(f"subspace search supports n <= {_SEARCH_N_LIMIT}")
    checker = _DegreeDropChecker(f)
    examined = 0
    for k in range(1, min(max_codim, f.n) + 1):
        for basis_masks in _rref_bases(f.n, k):
            if examined >= max_candidates:
                raise NotFound(f"candidate budget {max_candidates} exhausted")
            examined += 1
            pts = checker.subspace_points(basis_masks)
            duals = checker.shift_points(basis_masks)
            ok = True
            for bits in range(1 << k):
                shift = 0
                for j in range(k):
                    if (bits >> j) & 1:
                        shift ^= duals[j]
                if not checker.drops_on(pts, shift):
                    ok = False
                    break
            if ok:
                return list(basis_masks)
    raise NotFound(f"no all-coset degree drop within codimension {max_codim}")


def build_degree_reduce(
    f: BooleanFunction,
    max_codim: int = 4,
    max_candidates: int = DEGREE_SEARCH_BUDGET,
) -> Tuple[Pdt, BuildTrace]:
    """Rounds of degree-reducing subspace queries; span-query fallback.

    Each round finds a minimal constraint set whose every coset drops the
    GF(2) degree of the current restriction, queries all of it (expanding the
    subtree over every answer combination), restricts, and repeats; at most
    deg2(f) rounds on any path.  If the subspace search exceeds its budget
    (or the function is too large for it), the subtree is finished by
    span-query construction and flagged in the trace.
    """
    trace = BuildTrace(n=f.n, denom_exp=f.n)

    def node_stats(g: BooleanFunction) -> Tuple[int, int]:
        spec = _pm_of(g)
        return spec.l0(), spec.l1_num() << (f.n - g.n)

    def span_tail(
        g: BooleanFunction, frame: _Frame, parent, branch, round_no: int
    ) -> PdtNodeOrLeaf:
        spec = _pm_of(g)
        basis = _span_basis(wht(g))

        def rec(spec_pm: Spectrum, fr: _Frame, level: int, parent, branch):
            l0 = spec_pm.l0()
            l1 = spec_pm.l1_num()
            if level == len(basis):
                trace.add(
                    parent_id=parent,
                    branch=branch,
                    mask=None,
                    l0=l0,
                    l1_num=l1,
                    info={"fallback": True, "round": round_no},
                )
                return PdtLeaf(_leaf_bit(spec_pm))
            t_local = basis[level]
            q = fr.query_mask(t_local)
            offset = dot(q, fr.shift)
            node_id = trace.add(
                parent_id=parent,
                branch=branch,
                mask=q,
                l0=l0,
                l1_num=l1,
                info={"fallback": True, "round": round_no},
            )
            children = {}
            for beta in (0, 1):
                b = beta ^ offset
                children[beta] = rec(
                    fold(spec_pm, t_local, b),
                    fr.restricted(t_local, b),
                    level + 1,
                    node_id,
                    beta,
                )
            return PdtNode(q, children[0], children[1])

        # Rescale so trace l1 numerators sit over the root denominator.
        scaled = Spectrum(
            spec.n, f.n, {m: v << (f.n - g.n) for m, v in spec.coeffs.items()}
        )
        return rec(scaled, frame, 0, parent, branch)

    def rec_round(
        g: BooleanFunction,
        frame: _Frame,
        pending: List[int],
        round_no: int,
        parent,
        branch,
    ) -> PdtNodeOrLeaf:
        l0, l1 = node_stats(g)
        if not pending:
            if deg2(g) == 0:
                trace.add(
                    parent_id=parent,
                    branch=branch,
                    mask=None,
                    l0=l0,
                    l1_num=l1,
                    info={"round": round_no},
                )
                return PdtLeaf(int(g.table[0]))
            try:
                if g.n > _SEARCH_N_LIMIT:
                    raise NotFound(f"n={g.n} beyond search limit")
                subspace = degree_reducing_subspace(g, max_codim, max_candidates)
            except NotFound:
                return span_tail(g, frame, parent, branch, round_no + 1)
            queries = [frame.query_mask(t) for t in subspace]
            return descend(
                g,
                frame,
                queries,
                round_no + 1,
                len(subspace),
                parent,
                branch,
            )
        return descend(g, frame, pending, round_no, None, parent, branch)

    def descend(
        g: BooleanFunction,
        frame: _Frame,
        pending: List[int],
        round_no: int,
        round_queries: Optional[int],
        parent,
        branch,
    ) -> PdtNodeOrLeaf:
        l0, l1 = node_stats(g)
        q = pending[0]
        t_local = frame.pullback(q)
        if t_local == 0:
            raise BoolFourierError("internal: round query collapsed")
        offset = dot(q, frame.shift)
        info = {"round": round_no}
        if round_queries is not None:
            info["round_queries"] = round_queries
        node_id = trace.add(
            parent_id=parent, branch=branch, mask=q, l0=l0, l1_num=l1, info=info
        )
        children = {}
        for beta in (0, 1):
            b = beta ^ offset
            g2 = _restrict_once(g, t_local, b)
            fr2 = frame.restricted(t_local, b)
            children[beta] = rec_round(g2, fr2, pending[1:], round_no, node_id, beta)
        return PdtNode(q, children[0], children[1])

    root = rec_round(f, _Frame.identity(f.n), [], 0, None, None)
    return Pdt(f.n, root), trace


# ---------------------------------------------------------------------------
# Certificates.


def certificate_check(f: BooleanFunction, cert: Certificate) -> bool:
    """Exhaustively verify that f is constant cert.value on the subspace."""
    g = restrict_affine(f, list(cert.constraints))
    return g.is_constant() and int(g.table[0]) == cert.value


def _greedy_constraints(
    spec: Spectrum, frame: _Frame, out: List[AffineConstraint]
) -> int:
    """Greedy sign-aligned folding until constant; returns the constant bit."""
    while True:
        masks = list(spec.coeffs)
        if spec.l0() <= 1 and (not masks or masks[0] == 0):
            return _leaf_bit(spec)
        if spec.l0() == 1:
            t, b = masks[0], 0
        else:
            a1, a2 = _top_two(spec)
            t = a1 ^ a2
            b = 0 if spec.coeffs[a1] * spec.coeffs[a2] > 0 else 1
        q = frame.query_mask(t)
        out.append(AffineConstraint(q, b ^ dot(q, frame.shift)))
        spec = fold(spec, t, b)
        frame = frame.restricted(t, b)


def cert_greedy_l1(f: BooleanFunction) -> Certificate:
    """Certificate from greedy folding, following only the sign-aligned branch.

    At each step the two largest-magnitude +/-1 coefficients a1, a2 (ties by
    x1-first mask order) give the direction a1 ^ a2; the branch making the
    merged coefficient |a1| + |a2| is taken, so the max coefficient grows
    until the restriction is constant.
    """
    if f.is_constant():
        raise ConstantInput("constant functions need no certificate")
    constraints: List[AffineConstraint] = []
    value = _greedy_constraints(_pm_of(f), _Frame.identity(f.n), constraints)
    return Certificate(tuple(constraints), value)


def _anchored_greedy(
    g: BooleanFunction, anchor: int
) -> List[Tuple[int, int]]:
    """Greedy-fold constraints (entry coordinates of g) through a fixed point.

    Branches are forced to keep the anchor inside the subspace, so the final
    constant equals g(anchor).  Constraints are reported in the coordinates g
    was supplied in, not the shrinking fold coordinates.
    """
    spec = _pm_of(g)
    local = _Frame.identity(g.n)
    out: List[Tuple[int, int]] = []
    y0 = anchor
    while True:
        masks = list(spec.coeffs)
        if spec.l0() <= 1 and (not masks or masks[0] == 0):
            return out
        if spec.l0() == 1:
            t = masks[0]
        else:
            a1, a2 = _top_two(spec)
            t = a1 ^ a2
        b = dot(t, y0)
        q = local.query_mask(t)
        out.append((q, b ^ dot(q, local.shift)))
        spec = fold(spec, t, b)
        local = local.restricted(t, b)
        p = lowest_set_bit(t)
        h = highest_set_bit(t)
        # quotient coords of the anchor: non-pivot bits of y0 ^ b*e_h
        y0 = delete_bit(y0 ^ (b << h), p)


def cert_norm_halving(f: BooleanFunction) -> Certificate:
    """Certificate whose outer iterations halve the +/-1 l1 numerator."""
    cert, _ = cert_norm_halving_with_trace(f)
    return cert


@dataclass(frozen=True)
class HalvingStep:
    """Outer-iteration record: l1 numerators over the root denominator."""

    derivative_mask: int
    chosen_branch: int
    l1_before: int
    l1_split: Tuple[int, int]
    l1_after: int
    sub_codims: Tuple[int, int]


def cert_norm_halving_with_trace(
    f: BooleanFunction,
) -> Tuple[Certificate, List[HalvingStep]]:
    """Derivative-driven certificate plus its outer-iteration trace.

    Loop on the current restriction g: degree <= 1 finishes with at most one
    constraint; degree 2 finishes by greedy folding; otherwise take the
    x1-first direction t with a non-constant derivative, certify both values
    of the derivative on recursively chosen subspaces, adopt the branch whose
    split l1 is at most half the total (ties toward 0), restrict and repeat.
    The adopted restriction's l1 numerator is at most half its predecessor;
    violation would be an internal error and raises.
    """
    if f.is_constant():
        raise ConstantInput("constant functions need no certificate")
    n = f.n
    g = f
    frame = _Frame.identity(n)
    constraints: List[AffineConstraint] = []
    steps: List[HalvingStep] = []
    while True:
        d = deg2(g)
        if d == 0:
            value = int(g.table[0])
            break
        if d == 1:
            anf = anf_of(g)
            linear = 0
            for m in anf.monomials:
                linear |= m  # affine: the linear form is the XOR of singletons
            const = 1 if 0 in anf.monomials else 0
            q = frame.query_mask(linear)
            constraints.append(AffineConstraint(q, dot(q, frame.shift)))
            value = const
            break
        if d == 2:
            value = _greedy_constraints(_pm_of(g), frame, constraints)
            break
        m = g.n
        spec = _pm_of(g)
        t = None
        for cand in sorted(range(1, 1 << m), key=lambda u: lex_key(u, m)):
            h = derivative(g, cand)
            if not h.is_constant():
                t = cand
                deriv = h
                break
        if t is None:
            raise BoolFourierError("internal: no non-constant derivative at deg >= 2")
        split0, split1 = spectrum_split(spec, t)
        l1_total = spec.l1_num()
        l1_0, l1_1 = split0.l1_num(), split1.l1_num()
        sub0 = _anchored_greedy(deriv, int(np.nonzero(deriv.table == 0)[0][0]))
        sub1 = _anchored_greedy(deriv, int(np.nonzero(deriv.table == 1)[0][0]))
        b_star = 0 if 2 * l1_0 <= l1_total else 1
        chosen = sub0 if b_star == 0 else sub1
        scale = n - g.n
        g, frame, recorded = _restrict_with_frame(g, frame, chosen)
        constraints.extend(recorded)
        l1_after = _pm_of(g).l1_num() << (n - g.n)
        step = HalvingStep(
            derivative_mask=t,
            chosen_branch=b_star,
            l1_before=l1_total << scale,
            l1_split=(l1_0 << scale, l1_1 << scale),
            l1_after=l1_after,
            sub_codims=(len(sub0), len(sub1)),
        )
        steps.append(step)
        if 2 * step.l1_after > step.l1_before:
            raise BoolFourierError("internal: l1 numerator failed to halve")
    return Certificate(tuple(constraints), value), steps


# ---------------------------------------------------------------------------
# Green-Sanders style decomposition from the 1-leaves of a tree.


def green_sanders_decompose(
    tree: Pdt, f: BooleanFunction
) -> List[Tuple[int, Tuple[int, ...]]]:
    """Signed linear-subspace indicators summing pointwise to f.

    The tree must compute f.  Each 1-leaf's affine subspace H (constraints
    <l_i, x> = a_i) contributes 1_H = 1_V1 - 1_V2 where V2 is the fully
    homogenized subspace (all constraints set to 0) and V1 drops the first
    constraint with a_i = 1, XORing its mask into the other inhomogeneous
    ones; when every a_i is 0, H is already linear and contributes a single
    +1 term.  Subspaces are returned as (sign, constraint masks); at most
    two terms per 1-leaf.
    """
    if not pdt_check(f, tree).correct:
        raise InvalidTree("tree does not compute the supplied function")
    terms: List[Tuple[int, Tuple[int, ...]]] = []
    for path, value in tree.leaf_paths():
        if value != 1:
            continue
        masks = [c.mask for c in path]
        hot = [i for i, c in enumerate(path) if c.bit == 1]
        if not hot:
            terms.append((1, tuple(masks)))
            continue
        j = hot[0]
        v1 = []
        for i, c in enumerate(path):
            if i == j:
                continue
            v1.append(c.mask ^ masks[j] if c.bit == 1 else c.mask)
        terms.append((1, tuple(v1)))
        terms.append((-1, tuple(masks)))
    return terms


# ---------------------------------------------------------------------------
# Serialization.


def _node_to_dict(node: PdtNodeOrLeaf, n: int) -> dict:
    if isinstance(node, PdtLeaf):
        return {"value": node.value}
    return {
        "query": mask_to_string(node.mask, n),
        "child0": _node_to_dict(node.child0, n),
        "child1": _node_to_dict(node.child1, n),
    }


def tree_to_dict(tree: Pdt) -> dict:
    """JSON-ready mirror: {"n": ..., "root": nested nodes with mask bitstrings}."""
    return {"n": tree.n, "root": _node_to_dict(tree.root, tree.n)}


def _node_from_dict(obj: dict, n: int) -> PdtNodeOrLeaf:
    if not isinstance(obj, dict):
        raise InvalidTree("tree nodes must be JSON objects")
    if "value" in obj:
        value = obj["value"]
        if value not in (0, 1):
            raise InvalidTree(f"leaf value {value!r} not a bit")
        return PdtLeaf(value)
    if "query" not in obj or "child0" not in obj or "child1" not in obj:
        raise InvalidTree("internal nodes need query, child0 and child1")
    bits = obj["query"]
    if not isinstance(bits, str) or len(bits) != n:
        raise InvalidTree(f"query {bits!r} is not a length-{n} bitstring")
    try:
        mask = string_to_mask(bits)
    except ValueError as exc:
        raise InvalidTree(str(exc)) from exc
    return PdtNode(mask, _node_from_dict(obj["child0"], n), _node_from_dict(obj["child1"], n))


def tree_from_dict(obj: dict) -> Pdt:
    """Rebuild a tree from its JSON mirror, validating structure."""
    if not isinstance(obj, dict) or "n" not in obj or "root" not in obj:
        raise InvalidTree("tree JSON needs n and root")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise InvalidTree(f"invalid n {n!r}")
    return Pdt(n, _node_from_dict(obj["root"], n))


def tree_to_dot(tree: Pdt) -> str:
    """Graphviz rendering: boxes labeled with mask bitstrings, 0/1 edges."""
    lines = ["digraph pdt {"]
    counter = [0]

    def walk(node: PdtNodeOrLeaf) -> str:
        name = f"n{counter[0]}"
        counter[0] += 1
        if isinstance(node, PdtLeaf):
            lines.append(f'  {name} [shape=circle, label="{node.value}"];')
            return name
        lines.append(f'  {name} [shape=box, label="{mask_to_string(node.mask, tree.n)}"];')
        for bit, child in ((0, node.child0), (1, node.child1)):
            cname = walk(child)
            lines.append(f'  {name} -> {cname} [label="{bit}"];')
        return name

    walk(tree.root)
    lines.append("}")
    return "\n".join(lines) + "\n"
