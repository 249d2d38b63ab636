"""Exact Wasserstein-1 distance with primal and dual optimality certificates.

The solver is a network simplex on the bipartite transportation graph, with
Bland's rule for anti-cycling and every pivot carried out in exact rational
arithmetic. Zero-weight points participate as nodes with zero supply and
demand, so index bookkeeping matches the dense measure representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .measure import Measure, integrate
from .metric import ShortFunctional, zero_functional


@dataclass(frozen=True)
class TransportPlan:
    """A coupling certifying a transport cost between two measures.

    Rows are indexed by source points and columns by target points of the
    common space. Row sums must equal the source weights exactly, column sums
    the target weights, and ``cost`` the coupling-weighted sum of distances.
    """

    source: Measure
    target: Measure
    coupling: tuple
    cost: Fraction

    def __post_init__(self):
        coupling = tuple(tuple(Fraction(x) for x in row) for row in self.coupling)
        object.__setattr__(self, "coupling", coupling)
        object.__setattr__(self, "cost", Fraction(self.cost))
        if self.source.space != self.target.space:
            raise ValueError("coupling endpoints live on different spaces")
        n = len(self.source.space)
        if len(coupling) != n or any(len(row) != n for row in coupling):
            raise ValueError(f"coupling must be {n}x{n}")
        for row in coupling:
            for x in row:
                if x < 0:
                    raise ValueError("coupling entries must be nonnegative")
        for i, row in enumerate(coupling):
            if sum(row) != self.source.weights[i]:
                raise ValueError(
                    f"row {i} sums to {sum(row)}, expected {self.source.weights[i]}"
                )
        for j in range(n):
            col = sum(row[j] for row in coupling)
            if col != self.target.weights[j]:
                raise ValueError(
                    f"column {j} sums to {col}, expected {self.target.weights[j]}"
                )
        dist = self.source.space.dist
        total = sum(
            (coupling[i][j] * dist[i][j] for i in range(n) for j in range(n)),
            start=Fraction(0),
        )
        if total != self.cost:
            raise ValueError(f"stated cost {self.cost} differs from actual {total}")


@dataclass(frozen=True)
class DualWitness:
    """A short functional certifying optimality of a transport plan.

    For the plan between p and q it satisfies
    integrate(potential, p) - integrate(potential, q) == plan cost,
    which together with shortness proves the plan cost cannot be beaten.
    """

    potential: ShortFunctional


def _northwest_basis(supplies, demands):
    """Initial spanning-tree basis of the transportation problem.

    Returns a dict mapping basic cells (i, j) to their flow; the staircase
    always contains exactly m + n - 1 cells and forms a tree even when
    degenerate zero-flow cells appear.
    """
    m, n = len(supplies), len(demands)
    a = list(supplies)
    b = list(demands)
    flows = {}
    i = j = 0
    while True:
        t = a[i] if a[i] < b[j] else b[j]
        flows[(i, j)] = t
        a[i] -= t
        b[j] -= t
        if i == m - 1 and j == n - 1:
            break
        if a[i] == 0 and i < m - 1:
            i += 1
        else:
            j += 1
    return flows


def _potentials(m, n, basis, costs):
    """Node potentials (u, v) with u[i] + v[j] = cost[i][j] on basic cells."""
    adj = {k: [] for k in range(m + n)}
    for (i, j) in basis:
        adj[i].append((m + j, i, j))
        adj[m + j].append((i, i, j))
    u = [None] * m
    v = [None] * n
    u[0] = Fraction(0)
    stack = [0]
    while stack:
        node = stack.pop()
        for nb, i, j in adj[node]:
            if nb >= m:
                if v[nb - m] is None:
                    v[nb - m] = costs[i][j] - u[i]
                    stack.append(nb)
            elif u[nb] is None:
                u[nb] = costs[i][j] - v[j]
                stack.append(nb)
    return u, v


def _cycle_arcs(m, basis, i0, j0):
    """Arcs of the unique tree path from target node j0 back to source i0.

    The first arc is incident to j0; around the pivot cycle the signs
    alternate -, +, -, ... starting from it.
    """
    adj = {}
    for (i, j) in basis:
        adj.setdefault(i, []).append(m + j)
        adj.setdefault(m + j, []).append(i)
    parent = {i0: None}
    stack = [i0]
    goal = m + j0
    while stack:
        node = stack.pop()
        if node == goal:
            break
        for nb in adj[node]:
            if nb not in parent:
                parent[nb] = node
                stack.append(nb)
    arcs = []
    node = goal
    while parent[node] is not None:
        prev = parent[node]
        if node >= m:
            arcs.append((prev, node - m))
        else:
            arcs.append((node, prev - m))
        node = prev
    return arcs


def _solve_transportation(costs, supplies, demands):
    """Exact network simplex; returns (basic flows, u, v) at optimality."""
    m, n = len(supplies), len(demands)
    flows = _northwest_basis(supplies, demands)
    while True:
        u, v = _potentials(m, n, flows, costs)
        entering = None
        for i in range(m):
            ui = u[i]
            row = costs[i]
            for j in range(n):
                if (i, j) not in flows and row[j] - ui - v[j] < 0:
                    entering = (i, j)
                    break
            if entering is not None:
                break
        if entering is None:
            return flows, u, v
        arcs = _cycle_arcs(m, flows, *entering)
        minus = arcs[0::2]
        theta = min(flows[a] for a in minus)
        leaving = min(a for a in minus if flows[a] == theta)
        for a in arcs[1::2]:
            flows[a] += theta
        for a in minus:
            flows[a] -= theta
        del flows[leaving]
        flows[entering] = theta


def wasserstein(p: Measure, q: Measure):
    """Exact Wasserstein-1 distance with primal and dual certificates.

    Returns ``(value, plan, witness)`` where the plan is an optimal coupling
    and the witness a short functional with
    integrate(witness, p) - integrate(witness, q) == value, checked exactly.
    The witness comes from the optimal node potentials restricted to the
    support of p and extended to the whole space by the Lipschitz lower
    envelope x -> max over support s of (u(s) - d(x, s)), then normalized so
    the first point of the space takes value 0.
    """
    if p.space != q.space:
        raise ValueError("measures live on different spaces")
    space = p.space
    n = len(space)
    if p == q:
        coupling = tuple(
            tuple(p.weights[i] if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
        plan = TransportPlan(p, q, coupling, Fraction(0))
        return Fraction(0), plan, DualWitness(zero_functional(space))

    costs = space.dist
    flows, u, v = _solve_transportation(costs, p.weights, q.weights)
    grid = [[Fraction(0)] * n for _ in range(n)]
    cost = Fraction(0)
    for (i, j), f in flows.items():
        grid[i][j] = f
        cost += f * costs[i][j]
    plan = TransportPlan(p, q, tuple(tuple(row) for row in grid), cost)

    support = [i for i, w in enumerate(p.weights) if w > 0]
    values = [max(u[s] - costs[k][s] for s in support) for k in range(n)]
    base = values[0]
    potential = ShortFunctional(space, tuple(x - base for x in values))
    witness = DualWitness(potential)
    attained = integrate(potential, p) - integrate(potential, q)
    if attained != cost:
        raise RuntimeError(
            f"dual witness attains {attained}, primal cost is {cost}"
        )
    return cost, plan, witness


def wasserstein_distance(p: Measure, q: Measure) -> Fraction:
    """The Wasserstein-1 value alone."""
    return wasserstein(p, q)[0]


def wasserstein_oracle(p: Measure, q: Measure) -> Fraction:
    """Brute-force Wasserstein-1 for small instances.

    Enumerates every basic feasible solution of the transportation polytope,
    one per spanning tree of the bipartite support graph, and returns the
    minimum cost. Completely independent of the simplex pivoting path.
    """
    if p.space != q.space:
        raise ValueError("measures live on different spaces")
    src = [(i, w) for i, w in enumerate(p.weights) if w > 0]
    tgt = [(j, w) for j, w in enumerate(q.weights) if w > 0]
    m, n = len(src), len(tgt)
    if m + n > 8:
        raise ValueError("oracle handles combined support size at most 8")
    dist = p.space.dist
    edges = [(a, b) for a in range(m) for b in range(n)]
    nodes = m + n
    best = None
    for tree in combinations(edges, nodes - 1):
        parent = list(range(nodes))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for a, b in tree:
            ra, rb = find(a), find(m + b)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if not acyclic:
            continue

        balance = [w for _, w in src] + [-w for _, w in tgt]
        incident = {k: [] for k in range(nodes)}
        for e, (a, b) in enumerate(tree):
            incident[a].append(e)
            incident[m + b].append(e)
        alive = [True] * len(tree)
        degree = [len(incident[k]) for k in range(nodes)]
        leaves = [k for k in range(nodes) if degree[k] == 1]
        cost = Fraction(0)
        feasible = True
        for _ in range(nodes - 1):
            leaf = leaves.pop()
            e = next(idx for idx in incident[leaf] if alive[idx])
            a, b = tree[e]
            flow = balance[a] if leaf == a else -balance[m + b]
            if flow < 0:
                feasible = False
                break
            alive[e] = False
            other = m + b if leaf == a else a
            if leaf == a:
                balance[m + b] += flow
            else:
                balance[a] -= flow
            degree[leaf] -= 1
            degree[other] -= 1
            if degree[other] == 1:
                leaves.append(other)
            cost += flow * dist[src[a][0]][tgt[b][0]]
        if feasible and (best is None or cost < best):
            best = cost
    return best
