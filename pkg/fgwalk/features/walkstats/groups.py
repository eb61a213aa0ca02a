# fgwalk/features/walkstats/groups.py
"""
Closed walks on a graph whose vertices are labelled by elements of a finite
group, counted by the ordered product of the labels they enter.

Group file format ('#' starts a comment):

    group 3                 # order; element 0 is the identity
    mul 1 2 0               # 1 * 2 = 0, one line per pair (complete table)
    vlabel 0 1              # vertex 0 carries element 1
"""
import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from ...core.config import logger
from ...core.errors import GraphFormatError, GuardExceededError, PreconditionError
from ...graphcore.exact import trace_power
from ...graphcore.graph import Graph
from ...graphcore.spectrum import spectral_radius
from .variance import mean_zero_basis, require_ergodic_regular

STATE_LIMIT = 4000
FULL_ASSOCIATIVITY_ORDER = 64


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a multiplication table; table[a][b] = a * b, identity 0."""

    order: int
    table: Tuple[Tuple[int, ...], ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        m = self.order
        if m < 1:
            raise PreconditionError(f"group order must be >= 1, got {m}")
        if len(self.table) != m or any(len(row) != m for row in self.table):
            raise PreconditionError(f"multiplication table must be {m}x{m}")
        for a, row in enumerate(self.table):
            if sorted(row) != list(range(m)):
                raise PreconditionError(f"row {a} of the table is not a permutation")
            if row[0] != a or self.table[0][a] != a:
                raise PreconditionError("element 0 is not the identity")
        for b in range(m):
            if sorted(self.table[a][b] for a in range(m)) != list(range(m)):
                raise PreconditionError(f"column {b} of the table is not a permutation")
        self._check_associative()

    def _check_associative(self):
        m = self.order
        if m <= FULL_ASSOCIATIVITY_ORDER:
            triples: Iterable = itertools.product(range(m), repeat=3)
        else:
            rng = np.random.default_rng(0)
            triples = rng.integers(0, m, size=(5000, 3)).tolist()
        t = self.table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise PreconditionError(f"table is not associative at ({a}, {b}, {c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def closure(self, generators: Iterable[int]) -> Set[int]:
        """Subgroup generated by ``generators``."""
        gens = list(set(generators))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def commutator_subgroup(self) -> Set[int]:
        m = self.order
        commutators = {
            self.mul(self.mul(a, b), self.mul(self.inverse(a), self.inverse(b)))
            for a in range(m)
            for b in range(m)
        }
        return self.closure(commutators)


def cyclic_group(m: int) -> FiniteGroup:
    if m < 1:
        raise PreconditionError(f"group order must be >= 1, got {m}")
    return FiniteGroup(m, tuple(tuple((a + b) % m for b in range(m)) for a in range(m)))


def symmetric_group(n: int) -> FiniteGroup:
    """
    S_n with elements in lexicographic order of their one-line notation
    (so the identity is element 0) and (a * b)(x) = a(b(x)).
    """
    if n < 1:
        raise PreconditionError(f"symmetric group degree must be >= 1, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(a[b[x]] for x in range(n))] for b in perms) for a in perms
    )
    names = tuple("".join(str(x) for x in p) for p in perms)
    return FiniteGroup(len(perms), table, names)


BUILTIN_GROUPS = {"cyclic": cyclic_group, "symmetric": symmetric_group}


@dataclass(frozen=True)
class GroupLabeling:
    group: FiniteGroup
    labels: Tuple[int, ...]

    def __post_init__(self):
        for v, g in enumerate(self.labels):
            if not 0 <= g < self.group.order:
                raise PreconditionError(
                    f"label {g} of vertex {v} is not a group element"
                )

    @classmethod
    def from_dict(
        cls, group: FiniteGroup, labels: Dict[int, int], n: int
    ) -> "GroupLabeling":
        missing = [v for v in range(n) if v not in labels]
        if missing:
            raise PreconditionError(f"vertices without a group label: {missing}")
        extra = [v for v in labels if not 0 <= v < n]
        if extra:
            raise PreconditionError(f"labels for unknown vertices: {extra}")
        return cls(group, tuple(labels[v] for v in range(n)))


# --- file format ---


def parse_group(text: str) -> Tuple[FiniteGroup, Dict[int, int]]:
    """
    Parses the group file format.

    Returns:
        The group and the vertex labels found (possibly empty).

    Raises:
        GraphFormatError: malformed header, bad line, or incomplete table.
    """
    order: Optional[int] = None
    entries: Dict[Tuple[int, int], int] = {}
    labels: Dict[int, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        keyword = parts[0]
        if order is None:
            if keyword != "group" or len(parts) != 2:
                raise GraphFormatError("expected header 'group <order>'", line_no)
            order = _parse_int(parts[1], line_no)
            if order < 1:
                raise GraphFormatError(
                    f"group order must be >= 1, got {order}", line_no
                )
            continue
        if keyword == "mul" and len(parts) == 4:
            a, b, c = (_parse_element(p, order, line_no) for p in parts[1:])
            if (a, b) in entries and entries[(a, b)] != c:
                raise GraphFormatError(f"conflicting product for {a} * {b}", line_no)
            entries[(a, b)] = c
        elif keyword == "vlabel" and len(parts) == 3:
            v = _parse_int(parts[1], line_no)
            if v < 0:
                raise GraphFormatError(f"negative vertex {v}", line_no)
            labels[v] = _parse_element(parts[2], order, line_no)
        else:
            raise GraphFormatError(f"unrecognized line '{line}'", line_no)
    if order is None:
        raise GraphFormatError("empty group file")
    if len(entries) != order * order:
        raise GraphFormatError(
            f"incomplete multiplication table: {len(entries)} of {order * order}"
            " products"
        )
    table = tuple(tuple(entries[(a, b)] for b in range(order)) for a in range(order))
    try:
        group = FiniteGroup(order, table)
    except PreconditionError as exc:
        raise GraphFormatError(str(exc)) from exc
    return group, labels


def emit_group(group: FiniteGroup, labels: Optional[Sequence[int]] = None) -> str:
    lines = [f"group {group.order}"]
    for a in range(group.order):
        for b in range(group.order):
            lines.append(f"mul {a} {b} {group.table[a][b]}")
    for v, g in enumerate(labels or ()):
        lines.append(f"vlabel {v} {g}")
    return "\n".join(lines) + "\n"


def load_group(path: Union[str, Path]) -> Tuple[FiniteGroup, Dict[int, int]]:
    return parse_group(Path(path).read_text(encoding="utf-8"))


def _parse_int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got '{token}'", line_no)


def _parse_element(token: str, order: int, line_no: int) -> int:
    value = _parse_int(token, line_no)
    if not 0 <= value < order:
        raise GraphFormatError(
            f"element {value} out of range for order {order}", line_no
        )
    return value


# --- hypotheses and distribution ---


@dataclass(frozen=True)
class HypothesisReport:
    generates: bool
    coset_condition: bool
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.generates and self.coset_condition


def check_hypotheses(labeling: GroupLabeling) -> HypothesisReport:
    """
    The labels must generate the group, and must not all lie in one coset of
    a proper subgroup containing the commutator subgroup. The smallest such
    subgroup is generated by [T, T] and the quotients t_i t_1^-1, so the
    second condition is that this subgroup is everything.
    """
    group, labels = labeling.group, labeling.labels
    generated = group.closure(labels)
    generates = len(generated) == group.order
    first_inv = group.inverse(labels[0])
    quotients = {group.mul(t, first_inv) for t in labels}
    H = group.closure(quotients | group.commutator_subgroup())
    coset = len(H) == group.order
    witness = None
    if not generates:
        witness = (
            f"labels generate a subgroup of order {len(generated)} < {group.order}"
        )
    elif not coset:
        witness = (
            f"labels lie in one coset of a subgroup of order {len(H)}"
            " with abelian quotient;"
            " some nontrivial character is constant on them"
        )
    return HypothesisReport(generates, coset, witness)


@dataclass(frozen=True)
class GroupWalkDistribution:
    N: int
    counts: Tuple[int, ...]
    tv_distance: float
    rate: float
    hypotheses: HypothesisReport

    @property
    def total(self) -> int:
        return sum(self.counts)


def _check_states(k: int, m: int):
    if k * m > STATE_LIMIT:
        raise GuardExceededError("vertex x group state space", k * m, STATE_LIMIT)


def group_rate(graph: Graph, labeling: GroupLabeling) -> float:
    """
    Spectral radius of the (vertex, element) transfer operator on functions
    with zero sum over each vertex fibre, divided by rho(A); equals the max
    over nontrivial irreducible representations of rho(U A) / rho(A).
    """
    group, labels = labeling.group, labeling.labels
    k, m = graph.n, group.order
    _check_states(k, m)
    A = graph.float_matrix()
    K = np.zeros((k * m, k * m))
    for v in range(k):
        for w in range(k):
            if A[v, w]:
                for g in range(m):
                    K[v * m + g, w * m + group.mul(labels[w], g)] += A[v, w]
    if m == 1:
        return 0.0
    B = np.kron(np.eye(k), mean_zero_basis(m))
    return spectral_radius(B.T @ K @ B) / spectral_radius(A)


def _total_variation(counts: Sequence[int]) -> float:
    total = sum(counts)
    m = len(counts)
    return float(sum(abs(Fraction(c, total) - Fraction(1, m)) for c in counts) / 2)


def group_walk_distribution(
    graph: Graph, labeling: GroupLabeling, N: int
) -> GroupWalkDistribution:
    """
    Exact counts of closed walks of length N by the product
    t_{v_N} ... t_{v_1} of the labels entered, by dynamic programming over
    (vertex, group element), with the total variation distance to uniform.

    Hypothesis violations are logged as warnings and reported, not raised.

    Raises:
        PreconditionError: graph not connected, bipartite, or not regular;
            label count differs from the vertex count.
    """
    require_ergodic_regular(graph)
    if len(labeling.labels) != graph.n:
        raise PreconditionError(
            f"expected {graph.n} labels, got {len(labeling.labels)}"
        )
    if N < 1:
        raise PreconditionError(f"walk length must be >= 1, got {N}")
    group, labels = labeling.group, labeling.labels
    k, m = graph.n, group.order
    _check_states(k, m)
    A = graph.big()
    perms = [np.array(group.table[labels[w]]) for w in range(k)]
    counts = np.zeros(m, dtype=object)
    for start in range(k):
        current = np.zeros((k, m), dtype=object)
        current[start, 0] = 1
        for _ in range(N):
            moved = A.T.dot(current)
            nxt = np.zeros((k, m), dtype=object)
            for w in range(k):
                nxt[w, perms[w]] = moved[w]
            current = nxt
        counts = counts + current[start]
    counts = tuple(int(c) for c in counts)
    hypotheses = check_hypotheses(labeling)
    if not hypotheses.ok:
        logger.warning(f"equidistribution hypotheses fail: {hypotheses.witness}")
    rate = group_rate(graph, labeling)
    return GroupWalkDistribution(N, counts, _total_variation(counts), rate, hypotheses)


def abelian_characters(group: FiniteGroup) -> np.ndarray:
    """
    Character table of an abelian group, one row per character, from a joint
    eigenbasis of the left regular representation.
    """
    if not group.is_abelian():
        raise PreconditionError(
            "character table by joint diagonalization needs an abelian group"
        )
    m = group.order
    rng = np.random.default_rng(0)
    weights = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    X = np.zeros((m, m), dtype=complex)
    for g in range(m):
        for h in range(m):
            X[group.mul(g, h), h] += weights[g]
    _, vectors = np.linalg.eig(X)
    inverse = [group.inverse(g) for g in range(m)]
    table = np.array([[e[inverse[g]] / e[0] for g in range(m)] for e in vectors.T])
    return table / np.abs(table)


@dataclass(frozen=True)
class CharacterBound:
    rates: List[float]
    tv_bound: float


def abelian_tv_bound(graph: Graph, labeling: GroupLabeling, N: int) -> CharacterBound:
    """
    Upper bound on the total variation distance at length N for an abelian
    group: 1/2 sum over nontrivial characters of |tr((U_chi A)^N)| / W, with
    the per-character rates rho(U_chi A) / rho(A).
    """
    group, labels = labeling.group, labeling.labels
    chars = abelian_characters(group)
    A = graph.float_matrix()
    base = spectral_radius(A)
    total = float(trace_power(graph.adj, N))
    rates, bound = [], 0.0
    for row in chars:
        if np.allclose(row, 1.0):
            continue
        UA = row[list(labels)][:, None] * A
        rates.append(spectral_radius(UA) / base)
        bound += abs(np.trace(np.linalg.matrix_power(UA, N))) / total
    return CharacterBound(sorted(rates, reverse=True), 0.5 * bound)
