"""Exact minimum-cost transportation solver with dual certificates.

The set of couplings of two fixed marginals is a transportation
polytope, so "minimize Pr{x != y} over all couplings" is a balanced
transportation LP with 0/1 mismatch cost.  This module solves that LP
(and any other rational-cost instance on the same marginals) exactly:

* transportation simplex on a spanning-tree basis, chosen over general
  simplex because the constraint matrix is totally unimodular and every
  pivot stays cheap in exact rationals;
* degeneracy handled with zero-flow basic cells and a Bland-style
  smallest-index rule (first negative reduced cost enters, smallest tied
  cell leaves), which guarantees termination without perturbing data;
* the returned :class:`DualCertificate` carries row/column potentials
  whose feasibility plus exact objective equality proves optimality
  without trusting the solver's internals;
* :func:`vertex_enumerate` walks every spanning-forest basis at desk
  scale, as a second, exhaustive oracle over the whole polytope.

Everything is pure and reentrant; concurrent solves on separate inputs
share no state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .coupling import Coupling
from .distributions import ONE, ZERO, Pmf, require_same_alphabet
from .errors import (
    CorruptedCouplingError,
    EnumerationLimitError,
    ShapeMismatchError,
    UnbalancedProblemError,
)

DEFAULT_VERTEX_LIMIT = 4

CostMatrix = tuple[tuple[Fraction, ...], ...]
Cell = tuple[int, int]


@dataclass(frozen=True)
class TransportProblem:
    """Balanced transportation instance: row/column marginals plus a cost matrix."""

    supply: Pmf
    demand: Pmf
    cost: CostMatrix

    def __init__(self, supply: Pmf, demand: Pmf, cost: Sequence[Sequence[Fraction]]):
        require_same_alphabet(supply, demand)
        n = len(supply.alphabet)
        rows = tuple(tuple(row) for row in cost)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ShapeMismatchError(f"cost matrix must be {n}x{n}")
        total_supply = sum(supply.p, ZERO)
        total_demand = sum(demand.p, ZERO)
        if total_supply != total_demand:
            raise UnbalancedProblemError(
                f"total supply {total_supply} != total demand {total_demand}"
            )
        object.__setattr__(self, "supply", supply)
        object.__setattr__(self, "demand", demand)
        object.__setattr__(self, "cost", rows)

    @classmethod
    def mismatch(cls, p: Pmf, q: Pmf) -> "TransportProblem":
        """0/1 cost: pay 1 everywhere off the diagonal. Objective = Pr{x != y}."""
        n = len(p.alphabet)
        cost = tuple(
            tuple(ZERO if i == j else ONE for j in range(n)) for i in range(n)
        )
        return cls(p, q, cost)

    def objective(self, c: Coupling) -> Fraction:
        return sum(
            (cv * jv for crow, jrow in zip(self.cost, c.j) for cv, jv in zip(crow, jrow)),
            ZERO,
        )


@dataclass(frozen=True)
class DualCertificate:
    """Row/column potentials proving optimality.

    Feasibility (u_i + v_j <= cost_ij everywhere) makes the dual value
    a lower bound on every coupling's cost; exact equality with the
    primal objective pins the optimum.
    """

    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    objective: Fraction

    def to_json_dict(self) -> dict:
        return {
            "u": [str(x) for x in self.u],
            "v": [str(x) for x in self.v],
            "objective": str(self.objective),
        }


@dataclass(frozen=True)
class BasisTree:
    """Basic cells of a transportation-simplex solution.

    Always 2N - 1 cells forming a spanning tree of the bipartite
    supply/demand graph; degenerate cells carry explicit zero flow.
    """

    cells: tuple[Cell, ...]


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


def _initial_basis(supply: Sequence[Fraction], demand: Sequence[Fraction]) -> tuple[list[list[Fraction]], list[Cell]]:
    """Initial basic feasible solution with exactly 2N - 1 cells.

    Keeps the pointwise overlap min(s_i, d_i) on the diagonal and routes
    the leftover row mass to the leftover column mass through a
    staircase; the result is a spanning forest that a union-find pads to
    a tree, preferring cells from over-supplied rows to over-demanded
    columns (those are tight for 0/1 mismatch cost, which keeps pivots
    rare on the common path).  Contracting each diagonal cell fuses
    row i and column i into one node, so acyclicity only needs checking
    on off-diagonal cells.
    """
    n = len(supply)
    flow = [[ZERO] * n for _ in range(n)]
    basis: list[Cell] = [(i, i) for i in range(n)]
    for i in range(n):
        flow[i][i] = min(supply[i], demand[i])
    rx = [supply[i] - flow[i][i] for i in range(n)]
    ry = [demand[j] - flow[j][j] for j in range(n)]
    dsu = _DisjointSet(n)
    rows = [i for i in range(n) if rx[i] > 0]
    cols = [j for j in range(n) if ry[j] > 0]
    a = b = 0
    while a < len(rows) and b < len(cols):
        i, j = rows[a], cols[b]
        take = min(rx[i], ry[j])
        flow[i][j] = take
        basis.append((i, j))
        dsu.union(i, j)
        rx[i] -= take
        ry[j] -= take
        if a == len(rows) - 1 and b == len(cols) - 1:
            break
        if rx[i] == 0 and a < len(rows) - 1:
            a += 1
        else:
            b += 1
    if len(basis) < 2 * n - 1:
        over = [i for i in range(n) if supply[i] >= demand[i]]
        under = [j for j in range(n) if supply[j] < demand[j]]
        padding = [(i, j) for i in over for j in under] + [
            (i, j) for i in range(n) for j in range(n) if i != j
        ]
        for i, j in padding:
            if dsu.union(i, j):
                basis.append((i, j))
                if len(basis) == 2 * n - 1:
                    break
    return flow, sorted(basis)


def _tree_potentials(basis: Sequence[Cell], cost: CostMatrix, n: int) -> tuple[list[Fraction], list[Fraction]]:
    """Solve u_i + v_j = cost_ij over the basis tree, anchored at u_0 = 0."""
    row_adj: list[list[int]] = [[] for _ in range(n)]
    col_adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in basis:
        row_adj[a].append(b)
        col_adj[b].append(a)
    u: list[Fraction | None] = [None] * n
    v: list[Fraction | None] = [None] * n
    u[0] = ZERO
    queue: deque[tuple[str, int]] = deque([("row", 0)])
    while queue:
        kind, idx = queue.popleft()
        if kind == "row":
            for b in row_adj[idx]:
                if v[b] is None:
                    v[b] = cost[idx][b] - u[idx]
                    queue.append(("col", b))
        else:
            for a in col_adj[idx]:
                if u[a] is None:
                    u[a] = cost[a][idx] - v[idx]
                    queue.append(("row", a))
    if any(x is None for x in u) or any(x is None for x in v):
        raise CorruptedCouplingError("basis does not span the bipartite graph")
    return u, v  # type: ignore[return-value]


def _pivot_cycle(basis: Sequence[Cell], entering: Cell) -> list[Cell]:
    """Unique cycle closed by the entering cell, ordered from it; signs alternate."""
    edges = set(basis) | {entering}
    # strip leaves until only the cycle remains
    while True:
        deg_r: dict[int, int] = {}
        deg_c: dict[int, int] = {}
        for a, b in edges:
            deg_r[a] = deg_r.get(a, 0) + 1
            deg_c[b] = deg_c.get(b, 0) + 1
        leaves = {e for e in edges if deg_r[e[0]] == 1 or deg_c[e[1]] == 1}
        if not leaves:
            break
        edges -= leaves
    # walk the cycle starting at the entering cell, moving off its column first
    by_row: dict[int, list[Cell]] = {}
    by_col: dict[int, list[Cell]] = {}
    for e in edges:
        by_row.setdefault(e[0], []).append(e)
        by_col.setdefault(e[1], []).append(e)
    ordered = [entering]
    prev = entering
    kind, node = "col", entering[1]
    while True:
        candidates = by_col[node] if kind == "col" else by_row[node]
        nxt = next(e for e in candidates if e != prev)
        if nxt == entering:
            break
        ordered.append(nxt)
        kind, node = ("row", nxt[0]) if kind == "col" else ("col", nxt[1])
        prev = nxt
    return ordered


def solve_transport(tp: TransportProblem) -> tuple[Coupling, DualCertificate, BasisTree]:
    """Exact optimal basic solution via transportation simplex.

    Entering variable: first cell in row-major order with negative
    reduced cost.  Leaving variable: smallest-index cell among those
    attaining the minimum flow on the cycle's decreasing positions.
    This Bland-style rule terminates under degeneracy.
    """
    n = len(tp.supply.alphabet)
    flow, basis = _initial_basis(tp.supply.p, tp.demand.p)
    basis_set = set(basis)
    while True:
        u, v = _tree_potentials(basis, tp.cost, n)
        entering = None
        for a in range(n):
            for b in range(n):
                if (a, b) not in basis_set and tp.cost[a][b] - u[a] - v[b] < 0:
                    entering = (a, b)
                    break
            if entering is not None:
                break
        if entering is None:
            break
        cycle = _pivot_cycle(basis, entering)
        decreasing = cycle[1::2]
        theta = min(flow[a][b] for a, b in decreasing)
        leaving = min(cell for cell in decreasing if flow[cell[0]][cell[1]] == theta)
        for idx, (a, b) in enumerate(cycle):
            if idx % 2 == 0:
                flow[a][b] += theta
            else:
                flow[a][b] -= theta
        basis_set.remove(leaving)
        basis_set.add(entering)
        basis = sorted(basis_set)

    coupling = Coupling(tuple(tuple(row) for row in flow), tp.supply, tp.demand)
    objective = tp.objective(coupling)
    u, v = _tree_potentials(basis, tp.cost, n)
    dual_value = sum((ui * si for ui, si in zip(u, tp.supply.p)), ZERO) + sum(
        (vj * dj for vj, dj in zip(v, tp.demand.p)), ZERO
    )
    if dual_value != objective:
        raise CorruptedCouplingError(
            f"strong duality failed: dual {dual_value} != primal {objective}"
        )
    certificate = DualCertificate(u=tuple(u), v=tuple(v), objective=objective)
    return coupling, certificate, BasisTree(cells=tuple(sorted(basis_set)))


def lp_min_mismatch(p: Pmf, q: Pmf) -> tuple[Coupling, DualCertificate]:
    """Certified minimizer of Pr{x != y} over all couplings of p and q."""
    coupling, certificate, _ = solve_transport(TransportProblem.mismatch(p, q))
    return coupling, certificate


def certify(c: Coupling, cert: DualCertificate, tp: TransportProblem) -> bool:
    """True iff the pair (coupling, certificate) exactly proves optimality.

    Checks primal feasibility against the problem's marginals, dual
    feasibility of the potentials, and exact equality of primal,
    certificate, and dual objectives.  Exact arithmetic rejects any
    perturbation, however small.
    """
    n = len(tp.supply.alphabet)
    if len(c.alphabet) != n or len(cert.u) != n or len(cert.v) != n:
        raise ShapeMismatchError("coupling/certificate size does not match problem")
    if c.left != tp.supply or c.right != tp.demand:
        return False
    for i in range(n):
        for j in range(n):
            if cert.u[i] + cert.v[j] > tp.cost[i][j]:
                return False
    primal = tp.objective(c)
    dual = sum((ui * si for ui, si in zip(cert.u, tp.supply.p)), ZERO) + sum(
        (vj * dj for vj, dj in zip(cert.v, tp.demand.p)), ZERO
    )
    return primal == cert.objective == dual


def _spanning_tree_flows(
    cells: Sequence[Cell], supply: Sequence[Fraction], demand: Sequence[Fraction], n: int
) -> list[list[Fraction]] | None:
    """Unique flows on a candidate tree basis, or None if infeasible/not a tree.

    Resolves leaf nodes first: a node incident to exactly one unresolved
    cell forces that cell's flow to its remaining mass.
    """
    s = list(supply)
    d = list(demand)
    flow = [[ZERO] * n for _ in range(n)]
    alive = set(cells)
    row_cells: list[set[Cell]] = [set() for _ in range(n)]
    col_cells: list[set[Cell]] = [set() for _ in range(n)]
    for cell in cells:
        row_cells[cell[0]].add(cell)
        col_cells[cell[1]].add(cell)
    queue = deque()
    for i in range(n):
        if len(row_cells[i]) == 1:
            queue.append(("row", i))
    for j in range(n):
        if len(col_cells[j]) == 1:
            queue.append(("col", j))
    while queue:
        kind, idx = queue.popleft()
        incident = row_cells[idx] if kind == "row" else col_cells[idx]
        if len(incident) != 1:
            continue  # stale queue entry
        (cell,) = incident
        a, b = cell
        amount = s[a] if kind == "row" else d[b]
        if amount < 0:
            return None
        flow[a][b] = amount
        s[a] -= amount
        d[b] -= amount
        alive.discard(cell)
        row_cells[a].discard(cell)
        col_cells[b].discard(cell)
        if len(row_cells[a]) == 1:
            queue.append(("row", a))
        if len(col_cells[b]) == 1:
            queue.append(("col", b))
    if alive:
        return None  # a cycle survived stripping: not a tree
    if any(x != 0 for x in s) or any(x != 0 for x in d):
        return None  # disconnected forest left unserved mass
    if any(v < 0 for row in flow for v in row):
        return None
    return flow


def vertex_enumerate(tp: TransportProblem, max_size: int = DEFAULT_VERTEX_LIMIT) -> list[Coupling]:
    """All vertices of the transportation polytope, via exhaustive bases.

    Walks every (2N - 1)-subset of cells, keeps those forming a spanning
    tree with nonnegative flows, and deduplicates coinciding (degenerate)
    vertices.  Deliberately capped: the basis count grows fast, and this
    exists purely as an independent cross-check at desk scale.
    """
    n = len(tp.supply.alphabet)
    if n > max_size:
        raise EnumerationLimitError(
            f"vertex enumeration is capped at N <= {max_size}, got N = {n}"
        )
    all_cells = [(i, j) for i in range(n) for j in range(n)]
    vertices: dict[tuple, Coupling] = {}
    for cells in combinations(all_cells, 2 * n - 1):
        flow = _spanning_tree_flows(cells, tp.supply.p, tp.demand.p, n)
        if flow is None:
            continue
        matrix = tuple(tuple(row) for row in flow)
        if matrix not in vertices:
            vertices[matrix] = Coupling(matrix, tp.supply, tp.demand)
    return list(vertices.values())
