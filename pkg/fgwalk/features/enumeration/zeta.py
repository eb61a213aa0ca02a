# fgwalk/features/enumeration/zeta.py
"""
Zeta functions of graphs counting primitive cycle classes.

With the product over rotation classes of primitive cycles taken as
prod (1 - u^l(c)), the zeta function of a finite graph is the polynomial

    zeta_G(u) = det(I - u A(G))

and u d/du log zeta_G(u) = -sum_i N_i u^i with N_i = tr(A^i).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from ...core.config import logger
from ...core.errors import FormulaMismatchError, PreconditionError
from ...graphcore.exact import det_poly_matrix, reversed_char_poly, trace_power
from ...graphcore.graph import Graph
from ...graphcore.polynomial import RationalPoly
from ...graphcore.structure import connectivity_and_bipartite
from ..freegroup.model import FreeRank
from ..linegraph.line import line_digraph
from .conjugacy import divisors, moebius


def zeta(G: Graph) -> RationalPoly:
    """det(I - u A(G)), exact; zeta(0) = 1 and degree <= n."""
    poly = reversed_char_poly(G.big())
    logger.debug(f"zeta: n={G.n}, degree {poly.degree}")
    return poly


def free_group_zeta_closed_form(r: int) -> RationalPoly:
    """(1 - (2r-1)u)(1 - u)(1 - u^2)^(r-1), the zeta function of G_r."""
    FreeRank(r)
    return (
        RationalPoly([1, -(2 * r - 1)])
        * RationalPoly([1, -1])
        * RationalPoly([1, 0, -1]) ** (r - 1)
    )


def free_group_cycle_counts(r: int, n_max: int) -> List[int]:
    """N_i = (2r-1)^i + r + (r-1)(-1)^i for i = 1..n_max, from the spectrum of G_r."""
    FreeRank(r)
    return [(2 * r - 1) ** i + r + (r - 1) * (-1) ** i for i in range(1, n_max + 1)]


def printed_free_group_cycle_series(r: int, n_max: int) -> List[int]:
    """
    Coefficients of 1/(1 + (2r-1)u) + r/(1 - u) + (r-1)/(1 + u) for
    i = 1..n_max. This form disagrees with tr(A^i); kept as a diagnostic.
    """
    FreeRank(r)
    return [(-(2 * r - 1)) ** i + r + (r - 1) * (-1) ** i for i in range(1, n_max + 1)]


def cycle_counts_from_zeta(z: RationalPoly, n_max: int) -> List[int]:
    """
    N_1..N_n_max from the coefficients c_j of zeta(u) = det(I - uA) by the
    Newton identities N_m = -m c_m - sum_{j=1}^{m-1} c_j N_(m-j).

    Raises:
        PreconditionError: zeta(0) != 1.
        FormulaMismatchError: a recovered count is not an integer.
    """
    if z[0] != 1:
        raise PreconditionError(
            f"zeta polynomial must have constant term 1, got {z[0]}"
        )
    counts: List[Fraction] = []
    for m in range(1, n_max + 1):
        value = -m * z[m] - sum(z[j] * counts[m - j - 1] for j in range(1, m))
        counts.append(value)
    for m, value in enumerate(counts, start=1):
        if value.denominator != 1:
            raise FormulaMismatchError(
                f"cycle count N_{m} = {value} is not an integer", m
            )
    return [int(value) for value in counts]


def cycle_counts(G: Graph, n_max: int) -> List[int]:
    """N_1..N_n_max directly as tr(A^i)."""
    return [trace_power(G.big(), i) for i in range(1, n_max + 1)]


def primitive_cycle_counts(G: Graph, n_max: int) -> List[int]:
    """
    P_1..P_n_max, rotation classes of primitive cycles of each length, by
    Moebius inversion P_n = (1/n) sum_{d | n} mu(d) N_(n/d).
    """
    N = [0] + cycle_counts_from_zeta(zeta(G), n_max)
    out = []
    for n in range(1, n_max + 1):
        total = sum(moebius(d) * N[n // d] for d in divisors(n))
        if total % n:
            raise FormulaMismatchError(
                f"primitive count sum {total} is not divisible by {n}", n
            )
        out.append(total // n)
    return out


@dataclass(frozen=True)
class IharaReport:
    ihara: RationalPoly
    bass: RationalPoly
    equal: bool


def ihara_side(G: Graph) -> RationalPoly:
    """
    (1 - u^2)^(E - V) det(I - uA + u^2 (D - I)), D the degree matrix; for an
    r-regular G the determinant is det((1 + (r-1)u^2) I - uA).
    """
    degrees = G.out_degrees()
    E, V = G.num_edges(), G.n
    entries = [
        [
            (
                RationalPoly([1, -G.adj[i][i], degrees[i] - 1])
                if i == j
                else RationalPoly([0, -G.adj[i][j]])
            )
            for j in range(V)
        ]
        for i in range(V)
    ]
    return RationalPoly([1, 0, -1]) ** (E - V) * det_poly_matrix(entries)


def ihara_identity_check(G: Graph) -> IharaReport:
    """
    Compares the two determinant forms of the inverse Ihara zeta function:
    the vertex form above and det(I - uB) with B the adjacency matrix of the
    line digraph (the non-backtracking operator).

    Raises:
        PreconditionError: G directed, with self-loops, disconnected, or with
            fewer edges than vertices.
    """
    if G.directed:
        raise PreconditionError(
            "the Ihara identity takes an undirected graph; use directed_zeta_identity"
        )
    if G.has_self_loops():
        raise PreconditionError("the Ihara identity check rejects self-loops")
    if not connectivity_and_bipartite(G).connected:
        raise PreconditionError("the Ihara identity check needs a connected graph")
    if G.num_edges() < G.n:
        raise PreconditionError(
            "the Ihara identity check needs at least as many edges as vertices"
        )
    ihara = ihara_side(G)
    bass = reversed_char_poly(line_digraph(G).L.big())
    equal = ihara == bass
    logger.info(f"ihara_identity_check: n={G.n}, E={G.num_edges()}, equal={equal}")
    return IharaReport(ihara, bass, equal)


def directed_zeta_identity(G: Graph) -> IharaReport:
    """
    For a digraph, det(I - uA(G)) = det(I - uA(L(G))): A(G) = T^t H and
    A(L(G)) = H T^t share their nonzero eigenvalues.
    """
    if not G.directed:
        raise PreconditionError("directed_zeta_identity takes a directed graph")
    base = zeta(G)
    line = reversed_char_poly(line_digraph(G).L.big())
    return IharaReport(base, line, base == line)
