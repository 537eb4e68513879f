"""Route assignment and evaluation for a survey fleet.

``plan_routes`` implements round-robin nearest-neighbor assignment: agents
take turns claiming the cheapest unvisited waypoint reachable from the end of
their route so far. The remaining operations are desk-scale evaluation tools:
exact TSP by Held-Karp dynamic programming, an exhaustive min-makespan
oracle, and the optimal-tour / n lower bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .geodesy import GeoPoint, distance_m

CostFunction = Callable[[GeoPoint, GeoPoint], float]

HELD_KARP_MAX_POINTS = 18  # 2^18 * 18 table; larger instances have no exact reference
ORACLE_MAX_POINTS = 8
ORACLE_MAX_AGENTS = 3


@dataclass(frozen=True)
class Agent:
    """A survey drone: unique id, launch point, constant cruise speed."""

    id: str
    home: GeoPoint
    velocity_mps: float

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("agent id must be non-empty")
        if not (math.isfinite(self.velocity_mps) and self.velocity_mps > 0.0):
            raise ValueError(f"velocity_mps must be positive and finite, got {self.velocity_mps}")


@dataclass
class RoutePlan:
    """Ordered per-agent waypoint sequences forming a partition of the input set.

    ``homes`` records each agent's launch point (routes themselves exclude
    it); ``visit_sequence`` is the global claim order the planner produced
    (interleaved across agents); ``grid`` is the source grid, when planning
    started from one.
    """

    routes: dict[str, list]
    homes: dict[str, GeoPoint] = field(default_factory=dict)
    visit_sequence: list = field(default_factory=list)
    grid: object | None = None


def position_of(waypoint) -> GeoPoint:
    """The GeoPoint of a waypoint-like object (bare GeoPoints pass through)."""
    return waypoint.point if hasattr(waypoint, "point") else waypoint


def _check_fleet(agents: Sequence[Agent]) -> None:
    ids = [a.id for a in agents]
    if len(set(ids)) != len(ids):
        raise ValueError("agent ids must be unique within a fleet")


def plan_routes(agents: Sequence[Agent], waypoints, cost: CostFunction = distance_m, *, grid=None) -> RoutePlan:
    """Assign every waypoint to exactly one agent by round-robin nearest neighbor.

    Each agent's path is seeded at its home. On its turn an agent claims the
    unvisited waypoint cheapest to reach from its current path end, then the
    turn passes to the next agent. Ties go to the lowest lattice index when
    all waypoints carry one, then to input order.
    """
    agents = list(agents)
    if not agents:
        raise ValueError("at least one agent is required")
    _check_fleet(agents)

    order = list(waypoints)
    if order and all(hasattr(w, "index") for w in order):
        order.sort(key=lambda w: w.index)
    positions = [position_of(w) for w in order]
    seen: set[tuple[float, float, float]] = set()
    for p in positions:
        key = (p.lat_deg, p.lon_deg, p.alt_m)
        if key in seen:
            raise ValueError(f"duplicate waypoint at {key}; each point must be visited exactly once")
        seen.add(key)

    routes: dict[str, list] = {a.id: [] for a in agents}
    ends = {a.id: a.home for a in agents}
    visit_sequence: list = []
    remaining = list(range(len(order)))
    turn = 0
    while remaining:
        agent = agents[turn % len(agents)]
        here = ends[agent.id]
        best_k = remaining[0]
        best_cost = cost(here, positions[best_k])
        for k in remaining[1:]:
            c = cost(here, positions[k])
            if c < best_cost:
                best_cost = c
                best_k = k
        routes[agent.id].append(order[best_k])
        visit_sequence.append(order[best_k])
        ends[agent.id] = positions[best_k]
        remaining.remove(best_k)
        turn += 1
    homes = {a.id: a.home for a in agents}
    return RoutePlan(routes=routes, homes=homes, visit_sequence=visit_sequence, grid=grid)


def route_length(home: GeoPoint, route, cost: CostFunction = distance_m) -> float:
    """Total cost of flying home -> route[0] -> ... -> route[-1]."""
    total = 0.0
    here = home
    for wp in route:
        p = position_of(wp)
        total += cost(here, p)
        here = p
    return total


def makespan(plan: RoutePlan, agents: Sequence[Agent], cost: CostFunction = distance_m) -> float:
    """Longest per-agent completion time, all agents launching at once.

    Per agent: (home-to-first leg plus consecutive legs) / velocity.
    """
    by_id = {a.id: a for a in agents}
    _check_fleet(agents)
    unknown = [aid for aid in plan.routes if aid not in by_id]
    if unknown:
        raise ValueError(f"plan references agents not in the fleet: {unknown}")
    worst = 0.0
    for aid, route in plan.routes.items():
        agent = by_id[aid]
        duration = route_length(agent.home, route, cost) / agent.velocity_mps
        if duration > worst:
            worst = duration
    return worst


def tsp_optimal(points, cost: CostFunction = distance_m, mode: str = "tour", start=None) -> float:
    """Exact minimum Hamiltonian tour or open-path cost via Held-Karp.

    ``mode="tour"`` closes the cycle; ``mode="path"`` leaves it open and may
    fix a start point. Limited to HELD_KARP_MAX_POINTS.
    """
    if mode not in ("tour", "path"):
        raise ValueError(f"mode must be 'tour' or 'path', got {mode!r}")
    pts = [position_of(p) for p in points]
    n = len(pts)
    if n > HELD_KARP_MAX_POINTS:
        raise ValueError(
            f"tsp_optimal supports at most {HELD_KARP_MAX_POINTS} points, got {n}; "
            "use mtsp_lower_bound at desk scale only"
        )
    starts = range(n)
    if start is not None:
        if mode != "path":
            raise ValueError("start applies to path mode only")
        target = position_of(start)
        matches = [k for k, p in enumerate(pts) if p == target]
        if not matches:
            raise ValueError("start point is not among the input points")
        starts = matches[:1]
    if n <= 1:
        return 0.0

    c = [[cost(a, b) for b in pts] for a in pts]
    size = 1 << n
    inf = math.inf
    dp = [inf] * (size * n)

    if mode == "tour":
        # Anchor the cycle at vertex 0; dp[mask*n + k] = cheapest path 0 -> k
        # visiting exactly `mask` (mask includes bits 0 and k).
        for k in range(1, n):
            dp[((1 | (1 << k)) * n) + k] = c[0][k]
        for mask in range(size):
            if not mask & 1:
                continue
            base = mask * n
            for k in range(1, n):
                kbit = 1 << k
                if not mask & kbit:
                    continue
                prev = mask ^ kbit
                if prev == 1:
                    continue  # base case already seeded
                pbase = prev * n
                best = inf
                for j in range(1, n):
                    if prev & (1 << j):
                        v = dp[pbase + j] + c[j][k]
                        if v < best:
                            best = v
                dp[base + k] = best
        full = (size - 1) * n
        return min(dp[full + k] + c[k][0] for k in range(1, n))

    for s in starts:
        dp[((1 << s) * n) + s] = 0.0
    for mask in range(size):
        base = mask * n
        for k in range(n):
            kbit = 1 << k
            if not mask & kbit:
                continue
            prev = mask ^ kbit
            if prev == 0:
                continue
            pbase = prev * n
            best = dp[base + k]
            for j in range(n):
                if prev & (1 << j):
                    v = dp[pbase + j] + c[j][k]
                    if v < best:
                        best = v
            dp[base + k] = best
    full = (size - 1) * n
    return min(dp[full + k] for k in range(n))


def mtsp_lower_bound(points, n_agents: int, cost: CostFunction = distance_m) -> float:
    """Optimal single-agent tour cost divided by the agent count."""
    if n_agents < 1:
        raise ValueError(f"n_agents must be >= 1, got {n_agents}")
    return tsp_optimal(points, cost, mode="tour") / n_agents


def brute_force_mtsp(points, agents: Sequence[Agent], cost: CostFunction = distance_m):
    """Exhaustive min-makespan reference: every assignment of points to agents,
    every visiting order, agents starting from their homes.

    Returns ``(makespan_seconds, partition)`` where partition maps agent id to
    its optimally ordered waypoint list. Limited to ORACLE_MAX_POINTS points
    and ORACLE_MAX_AGENTS agents.
    """
    agents = list(agents)
    if not agents:
        raise ValueError("at least one agent is required")
    _check_fleet(agents)
    wps = list(points)
    n = len(wps)
    if n > ORACLE_MAX_POINTS or len(agents) > ORACLE_MAX_AGENTS:
        raise ValueError(
            f"instance too large for the exhaustive oracle "
            f"(max {ORACLE_MAX_POINTS} points, {ORACLE_MAX_AGENTS} agents)"
        )
    positions = [position_of(w) for w in wps]
    home_cost = [[cost(a.home, p) for p in positions] for a in agents]
    pair_cost = [[cost(p, q) for q in positions] for p in positions]

    best_path_cache: dict[tuple[int, tuple[int, ...]], tuple[float, tuple[int, ...]]] = {}

    def best_path(ai: int, bucket: tuple[int, ...]) -> tuple[float, tuple[int, ...]]:
        if not bucket:
            return 0.0, ()
        key = (ai, bucket)
        hit = best_path_cache.get(key)
        if hit is not None:
            return hit
        from_home = home_cost[ai]
        best = (math.inf, bucket)
        for perm in itertools.permutations(bucket):
            here = perm[0]
            total = from_home[here]
            for k in perm[1:]:
                total += pair_cost[here][k]
                here = k
            if total < best[0]:
                best = (total, perm)
        best_path_cache[key] = best
        return best

    best_value = math.inf
    best_orders: list[tuple[int, ...]] = [()] * len(agents)
    for assignment in itertools.product(range(len(agents)), repeat=n):
        buckets: list[list[int]] = [[] for _ in agents]
        for point_idx, ai in enumerate(assignment):
            buckets[ai].append(point_idx)
        worst = 0.0
        orders: list[tuple[int, ...]] = []
        for ai, bucket in enumerate(buckets):
            length, order = best_path(ai, tuple(bucket))
            orders.append(order)
            duration = length / agents[ai].velocity_mps
            if duration > worst:
                worst = duration
        if worst < best_value:
            best_value = worst
            best_orders = orders
    partition = {agents[ai].id: [wps[k] for k in best_orders[ai]] for ai in range(len(agents))}
    return best_value, partition
