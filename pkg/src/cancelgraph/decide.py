"""Reconstructibility and cancellation deciders plus report assembly.

A graph is neighborhood-reconstructible when every permuted graph G^a is
isomorphic to G, and strongly so when every G^a equals G on the nose. By the
product cancellation theorem the first property is also equivalent to G
cancelling from direct products, so the cancellation decider is the same
test; the oracle module re-derives the answer by brute-force scanning so the
two routes can be compared.

Fast paths, in the order applied:
  "involution"  no order-2 automorphism means reconstructible outright
  "bipartite"   bipartite graphs delegate to the reversal-involution decider
  "orbit"       check one 2-power-order representative per action orbit
  "odd_power"   the power reduction alone: a and a^(odd) give isomorphic
                permuted graphs, so only 2-power-order elements matter

Each path can be switched off to compare against the plain enumeration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .antiauto import (
    ANT_MAX,
    TF_MAX,
    ant_orbits,
    apply_anti_rows,
    enumerate_ant,
)
from .errors import CapacityError, InvariantViolationError, UsageError
from .graphs import Graph, Permutation
from .iso import _canonical, adjacency_key, involution_witness
from .product import Bipartition, bipartition

FAST_PATH_NAMES = ("involution", "bipartite", "orbit", "odd_power")
DEFAULT_FAST_PATHS = ("involution", "bipartite", "orbit")


def perm_order(image: tuple[int, ...]) -> int:
    order = 1
    seen = 0
    for v in range(len(image)):
        if seen >> v & 1:
            continue
        length = 0
        w = v
        while not seen >> w & 1:
            seen |= 1 << w
            w = image[w]
            length += 1
        order = lcm(order, length)
    return order


def _has_two_power_order(image: tuple[int, ...]) -> bool:
    order = perm_order(image)
    return order & (order - 1) == 0


def _guard(g: Graph, force: bool) -> None:
    if g.n > ANT_MAX and not force:
        raise CapacityError(
            f"decider needs the anti-automorphism listing, guarded at n<={ANT_MAX}"
        )


def _full_route(n: int, rows: tuple[int, ...], images) -> bool:
    """Certificate comparison of every distinct permuted graph against G."""
    base = None
    seen = set()
    for img in images:
        arows = apply_anti_rows(rows, img)
        if arows == rows or arows in seen:
            continue
        seen.add(arows)
        if base is None:
            base = _canonical(n, rows)[0]
        if _canonical(n, arows)[0] != base:
            return False
    return True


def is_neighborhood_reconstructible(
    g: Graph,
    *,
    fast_paths: tuple[str, ...] = DEFAULT_FAST_PATHS,
    force: bool = False,
) -> bool:
    for name in fast_paths:
        if name not in FAST_PATH_NAMES:
            raise UsageError(f"unknown fast path {name!r}")
    _guard(g, force)
    if "involution" in fast_paths and involution_witness(g) is None:
        return True
    if "bipartite" in fast_paths:
        bp = bipartition(g)
        if bp.is_bipartite:
            return _bip_decide(g, bp)[0]
    images = [p.image for p in enumerate_ant(g, force=force)]
    if "orbit" in fast_paths and g.n <= TF_MAX:
        reps = []
        for orbit in ant_orbits(g, force=force).orbits:
            two_pow = [p.image for p in orbit if _has_two_power_order(p.image)]
            if not two_pow:
                raise InvariantViolationError(
                    "an action orbit has no 2-power-order member"
                )
            reps.append(min(two_pow))
        images = reps
    elif "orbit" in fast_paths or "odd_power" in fast_paths:
        images = [img for img in images if _has_two_power_order(img)]
    return _full_route(g.n, g.adj, images)


def reconstruction_counterexample(
    g: Graph, *, force: bool = False
) -> tuple[Permutation, Graph] | None:
    """The non-isomorphic permuted graph with the least adjacency encoding,
    with its anti-automorphism; ties broken by least image vector."""
    _guard(g, force)
    base = _canonical(g.n, g.adj)[0]
    best = None
    for p in enumerate_ant(g, force=force):
        arows = apply_anti_rows(g.adj, p.image)
        if arows == g.adj or _canonical(g.n, arows)[0] == base:
            continue
        key = (adjacency_key(g.n, arows), p.image)
        if best is None or key < best[0]:
            best = (key, p, arows)
    if best is None:
        return None
    return best[1], Graph(g.n, best[2])


def is_strongly_reconstructible(g: Graph, *, force: bool = False) -> bool:
    """True when every permuted graph equals G exactly.

    Recomputed two ways: directly, and through the characterization that
    Ant(G) must consist exactly of the permutations fixing every duplicate
    -neighborhood class setwise. Disagreement is an engine bug.
    """
    _guard(g, force)
    ant = enumerate_ant(g, force=force)
    rows = g.adj
    direct = all(apply_anti_rows(rows, p.image) == rows for p in ant)
    classwise = {p.image for p in ant} == set(_class_preserving_images(g.n, rows))
    if direct != classwise:
        raise InvariantViolationError(
            f"strong-reconstructibility routes disagree: direct={direct} classwise={classwise}"
        )
    return direct


def _class_preserving_images(n: int, rows: tuple[int, ...]):
    """All permutations mapping each equal-neighborhood class onto itself."""
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(rows[v], []).append(v)
    blocks = list(classes.values())
    for choice in itertools.product(
        *(itertools.permutations(block) for block in blocks)
    ):
        img = [0] * n
        for block, assigned in zip(blocks, choice):
            for v, w in zip(block, assigned):
                img[v] = w
        yield tuple(img)


def strong_counterexample(g: Graph, *, force: bool = False) -> Permutation | None:
    """Least anti-automorphism whose permuted graph differs from G."""
    _guard(g, force)
    for p in enumerate_ant(g, force=force):
        if apply_anti_rows(g.adj, p.image) != g.adj:
            return p
    return None


def is_cancellation_graph(g: Graph, *, force: bool = False) -> bool:
    return is_neighborhood_reconstructible(g, force=force)


def bipartite_cancellation_decider(g: Graph) -> bool:
    return _bip_decide(g, bipartition(g))[0]


def bipartite_reversal_witness(g: Graph) -> Permutation | None:
    """An involution swapping some component's partite sets, or None."""
    return _bip_decide(g, bipartition(g))[1]


def _bip_decide(g: Graph, bp: Bipartition) -> tuple[bool, Permutation | None]:
    if not bp.is_bipartite:
        raise UsageError("bipartite decider called on a non-bipartite graph")
    for sides in bp.component_sides:
        assert sides is not None
        xs, ys = sides
        if not ys or len(xs) != len(ys):
            continue
        image = _reversing_involution(g.n, g.adj, sorted(xs), sorted(ys))
        if image is not None:
            return False, Permutation(image)
    return True, None


def _reversing_involution(
    n: int, rows: tuple[int, ...], xs: list[int], ys: list[int]
) -> tuple[int, ...] | None:
    """Involutory automorphism swapping xs and ys (identity elsewhere), as a
    pairing search: fixing sigma(x)=y also fixes sigma(y)=x."""
    image = list(range(n))
    deg = [rows[v].bit_count() for v in range(n)]

    def extend(i: int, used: int) -> bool:
        if i == len(xs):
            return True
        x = xs[i]
        rx = rows[x]
        for y in ys:
            if used >> y & 1 or deg[y] != deg[x]:
                continue
            ry = rows[y]
            ok = True
            for j in range(i):
                xj = xs[j]
                yj = image[xj]
                if (rx >> yj & 1) != (ry >> xj & 1) or (rx >> xj & 1) != (
                    ry >> yj & 1
                ):
                    ok = False
                    break
            if ok:
                image[x] = y
                image[y] = x
                if extend(i + 1, used | 1 << y):
                    return True
                image[x] = x
                image[y] = y
        return False

    if extend(0, 0):
        return tuple(image)
    return None


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    reconstructible: bool
    strongly: bool
    cancellation: bool
    bipartite: bool
    has_involution: bool
    orbit_count: int
    orbit_classes: tuple[str, ...]
    counterexample_alpha: Permutation | None
    counterexample_graph: Graph | None
    witness_involution: Permutation | None
    strongly_witness: Permutation | None

    def __post_init__(self):
        if self.cancellation != self.reconstructible:
            raise InvariantViolationError("cancellation flag differs from reconstructible")
        if self.strongly and not self.reconstructible:
            raise InvariantViolationError("strongly set without reconstructible")
        if (self.counterexample_alpha is None) != self.reconstructible:
            raise InvariantViolationError("counterexample presence mismatches flag")
        if (self.counterexample_graph is None) != self.reconstructible:
            raise InvariantViolationError("counterexample graph mismatches flag")
        if (self.witness_involution is not None) != (
            self.bipartite and not self.reconstructible
        ):
            raise InvariantViolationError("witness involution presence is wrong")
        if (self.strongly_witness is None) != self.strongly:
            raise InvariantViolationError("strong witness presence mismatches flag")

    def to_json_dict(self) -> dict:
        counterexample = None
        if self.counterexample_alpha is not None:
            assert self.counterexample_graph is not None
            counterexample = {
                "alpha": list(self.counterexample_alpha.image),
                "g_alpha_edges": [list(e) for e in self.counterexample_graph.edges()],
            }
        return {
            "n": self.n,
            "reconstructible": self.reconstructible,
            "strongly": self.strongly,
            "cancellation": self.cancellation,
            "bipartite": self.bipartite,
            "has_involution": self.has_involution,
            "orbit_count": self.orbit_count,
            "orbit_classes": list(self.orbit_classes),
            "counterexample": counterexample,
            "witness_involution": (
                None
                if self.witness_involution is None
                else list(self.witness_involution.image)
            ),
            "strongly_witness": (
                None
                if self.strongly_witness is None
                else list(self.strongly_witness.image)
            ),
        }


def classify(g: Graph, *, force: bool = False) -> AnalysisReport:
    _guard(g, force)
    bp = bipartition(g)
    reconstructible = is_neighborhood_reconstructible(g, force=force)
    strongly = is_strongly_reconstructible(g, force=force)
    counterexample = None if reconstructible else reconstruction_counterexample(g, force=force)
    if not reconstructible and counterexample is None:
        raise InvariantViolationError("non-reconstructible graph without counterexample")
    witness_involution = None
    if bp.is_bipartite and not reconstructible:
        witness_involution = bipartite_reversal_witness(g)
        if witness_involution is None:
            raise InvariantViolationError(
                "bipartite non-reconstructible graph without a reversing involution"
            )
    certs = set()
    seen_rows = set()
    for p in enumerate_ant(g, force=force):
        arows = apply_anti_rows(g.adj, p.image)
        if arows in seen_rows:
            continue
        seen_rows.add(arows)
        certs.add(_canonical(g.n, arows)[0])
    return AnalysisReport(
        n=g.n,
        reconstructible=reconstructible,
        strongly=strongly,
        cancellation=is_cancellation_graph(g, force=force),
        bipartite=bp.is_bipartite,
        has_involution=involution_witness(g) is not None,
        orbit_count=len(certs),
        orbit_classes=tuple(sorted(c.hex() for c in certs)),
        counterexample_alpha=None if counterexample is None else counterexample[0],
        counterexample_graph=None if counterexample is None else counterexample[1],
        witness_involution=witness_involution,
        strongly_witness=None if strongly else strong_counterexample(g, force=force),
    )
