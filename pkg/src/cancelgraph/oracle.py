"""Brute-force oracles and the exhaustive verification suites.

Everything here deliberately avoids anti-automorphism reasoning when
producing a verdict: the neighborhood oracle scans every labeled graph on
the same vertex set and compares neighborhood multisets; the cancellation
oracle scans the same universe and compares product certificates. Agreement
with the decide module is then actual evidence, because the two routes share
no theory beyond the isomorphism engine.

The verification suites group the scan by key instead of calling the oracles
once per graph: one pass over the universe buckets every H by multiset key
and by product certificate, marking a bucket mixed as soon as two members
are non-isomorphic. A graph's oracle verdict is then just its bucket's flag.
H-universes always allow loops, whatever the mode, because a loopless graph
can have loopy product mates.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable

from .antiauto import (
    _tf_generators,
    apply_anti_rows,
    is_anti_automorphism,
    iter_ant_images,
)
from .decide import _bip_decide, _has_two_power_order, perm_order
from .errors import CapacityError, InvariantViolationError, UsageError
from .graphs import (
    Graph,
    Permutation,
    component_masks,
    enumerate_count,
    iter_adj_rows,
    multiset_key,
    permute_mask,
    upper_cells,
)
from .iso import (
    adjacency_key,
    canon_connected,
    canon_rows,
    cert_bytes,
    compact_rows,
    iter_automorphism_images,
)
from .product import bipartition, direct_product

ORACLE_MAX = 6
VERIFY_MAX_LOOPS = 5
VERIFY_MAX_SIMPLE = 6
BIP_SWEEP_MAX = 7

K2 = Graph(2, (2, 1))
K3 = Graph(3, (6, 5, 3))

_SPREAD = tuple(
    sum(1 << 2 * j for j in range(7) if m >> j & 1) for m in range(128)
)


def _oracle_guard(n: int, force: bool) -> None:
    if n > ORACLE_MAX and not force:
        raise CapacityError(
            f"oracle scans 2^(n(n+1)/2) graphs; guarded at n<={ORACLE_MAX}"
        )


def neighborhood_oracle(g: Graph, *, force: bool = False) -> list[Graph]:
    """Every labeled graph on V(G) (loops allowed) with the same neighborhood
    multiset, in enumeration order. Contains g itself."""
    _oracle_guard(g.n, force)
    target = multiset_key(g.adj)
    out = []
    for rows in iter_adj_rows(g.n, True):
        if tuple(sorted(rows)) == target:
            out.append(Graph(g.n, tuple(rows)))
    return out


def _product_with_k2_rows(n: int, rows) -> tuple[int, ...]:
    """Rows of G x K2 under the (x,k) -> 2x+k encoding, for n <= 7."""
    out = []
    for v in range(n):
        spread = _SPREAD[rows[v]]
        out.append(spread << 1)
        out.append(spread)
    return tuple(out)


def _cancellation_scan(g: Graph, force: bool) -> tuple[bool, Graph | None]:
    _oracle_guard(g.n, force)
    n = g.n
    base_prod = direct_product(g, K2)
    base_cert = cert_bytes(base_prod.n, canon_rows(base_prod.n, base_prod.adj)[0])
    base_sizes = sorted(m.bit_count() for m in component_masks(base_prod.n, base_prod.adj))
    own_cert = cert_bytes(n, canon_rows(n, g.adj)[0])
    degs = sorted(r.bit_count() for r in g.adj)
    offenders = []
    for rows in iter_adj_rows(n, True):
        if sorted(r.bit_count() for r in rows) != degs:
            continue
        prod = _product_with_k2_rows(n, rows)
        if sorted(m.bit_count() for m in component_masks(2 * n, prod)) != base_sizes:
            continue
        if cert_bytes(2 * n, canon_rows(2 * n, prod)[0]) != base_cert:
            continue
        frozen = tuple(rows)
        if cert_bytes(n, canon_rows(n, frozen)[0]) != own_cert:
            offenders.append(frozen)
    if not offenders:
        return True, None
    best = min(offenders, key=lambda r: adjacency_key(n, r))
    return False, Graph(n, best)


def cancellation_oracle(g: Graph, *, force: bool = False) -> bool:
    """True iff every labeled H on V(G) (loops allowed) with
    H x K2 isomorphic to G x K2 is itself isomorphic to G.

    The product test with K2 covers every bipartite K with an edge, since
    homomorphisms run both ways between K2 and such K; graphs with an odd
    cycle cancel unconditionally, so K2 is the only test needed.
    """
    return _cancellation_scan(g, force)[0]


def cancellation_counterexample(g: Graph, *, force: bool = False) -> Graph | None:
    """The product mate not isomorphic to g with the least adjacency
    encoding, or None when g cancels."""
    return _cancellation_scan(g, force)[1]


def product_iso_witness(g: Graph, a: Permutation, k: Graph) -> Permutation:
    """The explicit isomorphism G x K -> G^a x K sending (x,j) to itself when
    j is in the left partite class of K and to (a(x),j) otherwise."""
    if not is_anti_automorphism(g, a):
        raise UsageError(f"{a.image} is not an anti-automorphism of G")
    bp = bipartition(k)
    if not bp.is_bipartite:
        raise UsageError("K must be bipartite")
    if all(row == 0 for row in k.adj):
        raise UsageError("K must have at least one edge")
    left = bp.left()
    nk = k.n
    theta = []
    for x in range(g.n):
        ax = a.image[x]
        for j in range(nk):
            theta.append((x if j in left else ax) * nk + j)
    image = tuple(theta)
    before = direct_product(g, k)
    after = direct_product(Graph(g.n, apply_anti_rows(g.adj, a.image)), k)
    for v in range(before.n):
        if permute_mask(before.adj[v], image) != after.adj[image[v]]:
            raise InvariantViolationError(
                "product witness failed the edge-by-edge check"
            )
    return Permutation(image)


def extract_anti_from_product_iso(
    g: Graph, h: Graph, *, force: bool = False
) -> tuple[Permutation, Permutation] | None:
    """Search for bijections with xy in E(G) iff mu(x)lambda(y) in E(H); when
    found, return (a, mu) with a = mu^-1 lambda, so that mu: G^a -> H.

    This is exactly a layer-preserving isomorphism G x K2 -> H x K2 with
    mu the layer-0 and lambda the layer-1 action. Returns None when no
    layer-preserving isomorphism exists.
    """
    if g.n != h.n:
        raise UsageError(f"vertex counts differ: {g.n} vs {h.n}")
    _oracle_guard(g.n, force)
    n = g.n
    grows = g.adj
    hrows = h.adj
    gdeg = [r.bit_count() for r in grows]
    hdeg = [r.bit_count() for r in hrows]
    mu = [-1] * n
    lam = [-1] * n

    def place_mu(v: int, used_mu: int, used_lam: int) -> bool:
        if v == n:
            return True
        for b in range(n):
            if used_mu >> b & 1 or hdeg[b] != gdeg[v]:
                continue
            ok = True
            for y in range(v):
                if (grows[v] >> y & 1) != (hrows[b] >> lam[y] & 1):
                    ok = False
                    break
            if ok:
                mu[v] = b
                if place_lam(v, used_mu | 1 << b, used_lam):
                    return True
                mu[v] = -1
        return False

    def place_lam(v: int, used_mu: int, used_lam: int) -> bool:
        for c in range(n):
            if used_lam >> c & 1 or hdeg[c] != gdeg[v]:
                continue
            ok = True
            for x in range(v + 1):
                if (grows[x] >> v & 1) != (hrows[mu[x]] >> c & 1):
                    ok = False
                    break
            if ok:
                lam[v] = c
                if place_mu(v + 1, used_mu, used_lam | 1 << c):
                    return True
                lam[v] = -1
        return False

    if not place_mu(0, 0, 0):
        return None
    mu_p = Permutation(tuple(mu))
    lam_p = Permutation(tuple(lam))
    alpha = mu_p.inverse().compose(lam_p)
    if not is_anti_automorphism(g, alpha):
        raise InvariantViolationError("extracted map is not an anti-automorphism")
    moved = apply_anti_rows(grows, alpha.image)
    for x in range(n):
        if permute_mask(moved[x], mu_p.image) != hrows[mu_p.image[x]]:
            raise InvariantViolationError("extracted mu is not an isomorphism onto H")
    return alpha, mu_p


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    n: int
    graphs: int
    non_reconstructible: int
    non_strongly: int
    bipartite_failures: int


@dataclass(frozen=True)
class BipSweepRow:
    n: int
    bipartite_graphs: int
    reversal_failures: int


@dataclass(frozen=True)
class VerificationReport:
    nmax: int
    loops_allowed: bool
    bip_max: int
    jobs: int
    census: tuple[CensusRow, ...]
    bipartite_census: tuple[BipSweepRow, ...]
    violations: tuple[dict, ...]
    suite_seconds: tuple[tuple[str, float], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "nmax": self.nmax,
            "loops_allowed": self.loops_allowed,
            "bip_max": self.bip_max,
            "jobs": self.jobs,
            "ok": self.ok,
            "census": [
                {
                    "n": row.n,
                    "graphs": row.graphs,
                    "non_reconstructible": row.non_reconstructible,
                    "non_strongly": row.non_strongly,
                    "bipartite_failures": row.bipartite_failures,
                }
                for row in self.census
            ],
            "bipartite_census": [
                {
                    "n": row.n,
                    "bipartite_graphs": row.bipartite_graphs,
                    "reversal_failures": row.reversal_failures,
                }
                for row in self.bipartite_census
            ],
            "violations": list(self.violations),
            "suite_seconds": {name: secs for name, secs in self.suite_seconds},
        }


MAX_RECORDED_VIOLATIONS = 200


class _Violations:
    """Bounded collector; the count is exact even when details are dropped."""

    def __init__(self) -> None:
        self.items: list[dict] = []
        self.total = 0

    def add(self, suite: str, n: int, **detail) -> None:
        self.total += 1
        if len(self.items) < MAX_RECORDED_VIOLATIONS:
            self.items.append({"suite": suite, "n": n, **detail})
        elif len(self.items) == MAX_RECORDED_VIOLATIONS:
            self.items.append({"suite": "truncated", "n": 0, "note": "further violations omitted"})


def _edges_of_rows(n: int, rows) -> list[list[int]]:
    out = []
    for x in range(n):
        row = rows[x] >> x
        y = x
        while row:
            b = row & -row
            out.append([x, x + b.bit_length() - 1])
            row ^= b
    return out


def _pack(n: int, rows) -> int:
    acc = 0
    for i, row in enumerate(rows):
        acc |= row << n * i
    return acc


def _rows_to_index(n: int, rows, cells) -> int:
    """Position of a graph in the lexicographic enumeration over cells."""
    m = len(cells)
    k = 0
    for t, (i, j) in enumerate(cells):
        if rows[i] >> j & 1:
            k |= 1 << (m - 1 - t)
    return k


def _canon_pack(n: int, rows: tuple[int, ...]) -> int:
    return _pack(n, canon_rows(n, rows)[0])


def _product_class_key(n: int, canon: tuple[int, ...]) -> bytes:
    """Certificate of (the iso class of) G x K2, keyed per component.

    Computed from canonical rows only: relabeling G relabels the product, so
    the product's isomorphism class depends only on G's class.
    """
    prod = _product_with_k2_rows(n, canon)
    pn = 2 * n
    parts = []
    for mask in component_masks(pn, prod):
        local = compact_rows(prod, mask)
        crows, _ = canon_connected(len(local), local)
        parts.append(cert_bytes(len(local), crows))
    parts.sort()
    return b"".join(parts)


class _UniverseIndex:
    """Single-pass bucketing of the loops-allowed universe at one n.

    canon_packs[k] is the packed canonical rows of enumeration index k.
    nbhd maps a packed sorted-rows key to (rep_canon << 1 | mixed).
    product maps a product-class id to the same packed shape.
    """

    def __init__(self, n: int) -> None:
        self.n = n
        self.cells = upper_cells(n, True)
        self.canon_packs: list[int] = []
        self.nbhd: dict[int, int] = {}
        self.product: dict[int, int] = {}
        self.class_product: dict[int, int] = {}
        self._product_ids: dict[bytes, int] = {}

    def build(self, start: int = 0, stop: int | None = None) -> None:
        n = self.n
        total = 1 << len(self.cells)
        if stop is None:
            stop = total
        canon_packs = [0] * (stop - start)
        nbhd = self.nbhd
        product = self.product
        class_product = self.class_product
        product_ids = self._product_ids
        pos = 0
        for rows in iter_adj_rows(n, True, start=start, stop=stop):
            frozen = tuple(rows)
            canon = canon_rows(n, frozen)[0]
            cp = _pack(n, canon)
            canon_packs[pos] = cp
            pos += 1
            mkey = _pack(n, sorted(frozen))
            prev = nbhd.get(mkey)
            if prev is None:
                nbhd[mkey] = cp << 1
            elif prev >> 1 != cp:
                nbhd[mkey] = prev | 1
            pid = class_product.get(cp)
            if pid is None:
                key = _product_class_key(n, canon)
                pid = product_ids.setdefault(key, len(product_ids))
                class_product[cp] = pid
            prev = product.get(pid)
            if prev is None:
                product[pid] = cp << 1
            elif prev >> 1 != cp:
                product[pid] = prev | 1

        self.canon_packs = canon_packs

    def merge(self, other: "_UniverseIndex") -> None:
        self.canon_packs.extend(other.canon_packs)
        for mkey, packed in other.nbhd.items():
            prev = self.nbhd.get(mkey)
            if prev is None:
                self.nbhd[mkey] = packed
            elif (prev | packed) & 1 or prev >> 1 != packed >> 1:
                self.nbhd[mkey] = prev | packed | 1
        remap = {}
        for key, oid in other._product_ids.items():
            remap[oid] = self._product_ids.setdefault(key, len(self._product_ids))
        for cp, oid in other.class_product.items():
            self.class_product.setdefault(cp, remap[oid])
        for oid, packed in other.product.items():
            pid = remap[oid]
            prev = self.product.get(pid)
            if prev is None:
                self.product[pid] = packed
            elif (prev | packed) & 1 or prev >> 1 != packed >> 1:
                self.product[pid] = prev | packed | 1

    def canon_of(self, rows) -> int:
        return self.canon_packs[_rows_to_index(self.n, rows, self.cells)]

    def neighborhood_pure(self, rows) -> bool:
        return not self.nbhd[_pack(self.n, sorted(rows))] & 1

    def product_pure(self, rows) -> bool:
        return not self.product[self.class_product[self.canon_of(rows)]] & 1


def _iter_mode_rows(n: int, loops_allowed: bool, start: int = 0, stop: int | None = None):
    return iter_adj_rows(n, loops_allowed, start=start, stop=stop)


def _decider_slow(n: int, rows: tuple[int, ...], ant_images, index: _UniverseIndex) -> bool:
    """The anti-automorphism route with only the power reduction applied,
    certificates served from the prebuilt index."""
    base = index.canon_of(rows)
    seen = set()
    for img in ant_images:
        if not _has_two_power_order(img):
            continue
        arows = apply_anti_rows(rows, img)
        if arows == rows or arows in seen:
            continue
        seen.add(arows)
        if index.canon_of(arows) != base:
            return False
    return True


def _strong_routes(n: int, rows: tuple[int, ...], ant_images) -> tuple[bool, bool]:
    direct = True
    preserve = True
    count = 0
    for img in ant_images:
        count += 1
        if direct and apply_anti_rows(rows, img) != rows:
            direct = False
        if preserve and any(rows[img[v]] != rows[v] for v in range(n)):
            preserve = False
    expected = 1
    classes: dict[int, int] = {}
    for row in rows:
        classes[row] = classes.get(row, 0) + 1
    for size in classes.values():
        for i in range(2, size + 1):
            expected *= i
    classwise = preserve and count == expected
    return direct, classwise


def _main_pass_for_n(
    n: int,
    loops_allowed: bool,
    index: _UniverseIndex,
    violations: _Violations,
    start: int = 0,
    stop: int | None = None,
) -> tuple[int, int, int, int]:
    graphs = 0
    non_rec = 0
    non_strong = 0
    bip_failures = 0
    for rows in _iter_mode_rows(n, loops_allowed, start=start, stop=stop):
        frozen = tuple(rows)
        graphs += 1
        ant = list(iter_ant_images(n, frozen))
        mkey = tuple(sorted(frozen))
        for img in ant:
            if tuple(sorted(apply_anti_rows(frozen, img))) != mkey:
                violations.add(
                    "eq1_multiset", n,
                    edges=_edges_of_rows(n, frozen), alpha=list(img),
                )
        slow = _decider_slow(n, frozen, ant, index)
        if not slow:
            non_rec += 1
        g = Graph(n, frozen)
        bip = bipartition(g)
        bip_verdict = _bip_decide(g, bip)[0] if bip.is_bipartite else None
        if bip_verdict is False:
            bip_failures += 1
        has_inv = any(
            any(img[v] != v for v in range(n)) and all(img[img[v]] == v for v in range(n))
            for img in iter_automorphism_images(n, frozen)
        )
        if not has_inv:
            fast = True
        elif bip_verdict is not None:
            fast = bip_verdict
        else:
            fast = slow
        if fast != slow:
            violations.add(
                "fast_paths", n,
                edges=_edges_of_rows(n, frozen), fast=fast, slow=slow,
            )
        oracle_n = index.neighborhood_pure(frozen)
        if oracle_n != slow:
            violations.add(
                "theorem_vs_neighborhood_oracle", n,
                edges=_edges_of_rows(n, frozen), decider=slow, oracle=oracle_n,
            )
        oracle_p = index.product_pure(frozen)
        if oracle_p != slow:
            violations.add(
                "theorem_vs_cancellation_oracle", n,
                edges=_edges_of_rows(n, frozen), decider=slow, oracle=oracle_p,
            )
        direct, classwise = _strong_routes(n, frozen, ant)
        if direct != classwise:
            violations.add(
                "strong_routes", n,
                edges=_edges_of_rows(n, frozen), direct=direct, classwise=classwise,
            )
        if not direct:
            non_strong += 1
    return graphs, non_rec, non_strong, bip_failures


def _neighborhood_prop_pass(n: int, violations: _Violations) -> None:
    """Oracle members must be exactly the permuted graphs, both directions."""
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for rows in iter_adj_rows(n, True):
        frozen = tuple(rows)
        groups.setdefault(tuple(sorted(frozen)), []).append(frozen)
    for members in groups.values():
        member_set = set(members)
        for frozen in members:
            images = {
                apply_anti_rows(frozen, img) for img in iter_ant_images(n, frozen)
            }
            if images != member_set:
                violations.add(
                    "neighborhood_prop", n,
                    edges=_edges_of_rows(n, frozen),
                    missing=len(member_set - images),
                    extra=len(images - member_set),
                )


def _simeqiso_pass(
    n: int, loops_allowed: bool, violations: _Violations,
    start: int = 0, stop: int | None = None,
) -> None:
    """Orbit mates give isomorphic permuted graphs and vice versa."""
    for rows in _iter_mode_rows(n, loops_allowed, start=start, stop=stop):
        frozen = tuple(rows)
        ant = list(iter_ant_images(n, frozen))
        if len(ant) == 1:
            continue
        gens = _tf_generators(n, frozen)
        gen_data = []
        for lam, mu in gens:
            inv = [0] * n
            for v, w in enumerate(mu):
                inv[w] = v
            gen_data.append((lam, tuple(inv)))
        index = {img: i for i, img in enumerate(ant)}
        orbit_of = [-1] * len(ant)
        norbits = 0
        for i, img in enumerate(ant):
            if orbit_of[i] >= 0:
                continue
            orbit_of[i] = norbits
            frontier = [img]
            while frontier:
                cur = frontier.pop()
                for lam, mu_inv in gen_data:
                    moved = tuple(lam[cur[mu_inv[v]]] for v in range(n))
                    j = index.get(moved)
                    if j is None:
                        violations.add(
                            "simeqiso_closure", n,
                            edges=_edges_of_rows(n, frozen), alpha=list(moved),
                        )
                        continue
                    if orbit_of[j] < 0:
                        orbit_of[j] = norbits
                        frontier.append(moved)
            norbits += 1
        cert_of = {}
        orbit_cert: list[bytes | None] = [None] * norbits
        distinct = set()
        for i, img in enumerate(ant):
            arows = apply_anti_rows(frozen, img)
            cert = cert_of.get(arows)
            if cert is None:
                cert = cert_bytes(n, canon_rows(n, arows)[0])
                cert_of[arows] = cert
            o = orbit_of[i]
            if orbit_cert[o] is None:
                orbit_cert[o] = cert
                distinct.add(cert)
            elif orbit_cert[o] != cert:
                violations.add(
                    "simeqiso_within_orbit", n,
                    edges=_edges_of_rows(n, frozen), alpha=list(img),
                )
        if len(distinct) != norbits:
            violations.add(
                "simeqiso_across_orbits", n,
                edges=_edges_of_rows(n, frozen),
                orbits=norbits, classes=len(distinct),
            )


def _simplus2_pass(
    n: int, loops_allowed: bool, violations: _Violations,
    start: int = 0, stop: int | None = None,
) -> None:
    """G^a is isomorphic to G^(a^e) for every odd exponent e."""
    for rows in _iter_mode_rows(n, loops_allowed, start=start, stop=stop):
        frozen = tuple(rows)
        for img in iter_ant_images(n, frozen):
            order = perm_order(img)
            if order <= 2:
                continue
            base_rows = apply_anti_rows(frozen, img)
            base_cert = None
            power = img
            square = tuple(img[img[v]] for v in range(n))
            for _ in range(order):
                power = tuple(square[power[v]] for v in range(n))
                prows = apply_anti_rows(frozen, power)
                if prows == base_rows:
                    continue
                if base_cert is None:
                    base_cert = cert_bytes(n, canon_rows(n, base_rows)[0])
                if cert_bytes(n, canon_rows(n, prows)[0]) != base_cert:
                    violations.add(
                        "simplus2", n,
                        edges=_edges_of_rows(n, frozen),
                        alpha=list(img), exponent_image=list(power),
                    )


def _pair_membership_pass(n: int, violations: _Violations) -> None:
    """Brute-force Aut^TF against the enumerator; anti and auto embeddings."""
    from itertools import permutations as _perms

    from .antiauto import enumerate_aut_tf

    perms = list(_perms(range(n)))
    for rows in iter_adj_rows(n, True):
        frozen = tuple(rows)
        g = Graph(n, frozen)
        brute = set()
        for lam in perms:
            for mu in perms:
                if all(
                    permute_mask(frozen[x], lam) == frozen[mu[x]] for x in range(n)
                ):
                    brute.add((lam, mu))
        listed = {
            (pair.lam.image, pair.mu.image) for pair in enumerate_aut_tf(g)
        }
        if brute != listed:
            violations.add(
                "aut_tf_enumeration", n, edges=_edges_of_rows(n, frozen),
            )
        ant = set(iter_ant_images(n, frozen))
        aut = set(iter_automorphism_images(n, frozen))
        from_pairs_anti = set()
        from_pairs_auto = set()
        for lam, mu in brute:
            inv = [0] * n
            for v, w in enumerate(mu):
                inv[w] = v
            if tuple(inv) == lam:
                from_pairs_anti.add(lam)
            if lam == mu:
                from_pairs_auto.add(lam)
        if from_pairs_anti != ant:
            violations.add(
                "anti_pair_embedding", n, edges=_edges_of_rows(n, frozen),
            )
        if from_pairs_auto != aut:
            violations.add(
                "auto_pair_embedding", n, edges=_edges_of_rows(n, frozen),
            )
        for lam, mu in brute:
            inv = [0] * n
            for v, w in enumerate(mu):
                inv[w] = v
            for a in ant:
                moved = tuple(lam[a[inv[v]]] for v in range(n))
                if moved not in ant:
                    violations.add(
                        "action_closure", n,
                        edges=_edges_of_rows(n, frozen),
                        pair=[list(lam), list(mu)], alpha=list(a),
                    )
                    break


def _digraph_symmetry_pass(n: int, violations: _Violations) -> None:
    from itertools import permutations as _perms

    perms = list(_perms(range(n)))
    for rows in iter_adj_rows(n, True):
        frozen = tuple(rows)
        for p in perms:
            arcs = [permute_mask(frozen[x], p) for x in range(n)]
            symmetric = all(
                not arcs[x] >> y & 1 or arcs[y] >> x & 1
                for x in range(n)
                for y in range(n)
            )
            inv = [0] * n
            for v, w in enumerate(p):
                inv[w] = v
            anti = all(
                frozen[p[x]] == permute_mask(frozen[x], tuple(inv)) for x in range(n)
            )
            if symmetric != anti:
                violations.add(
                    "digraph_symmetry", n,
                    edges=_edges_of_rows(n, frozen), perm=list(p),
                )


def _connected_row_sets(n: int, loops_allowed: bool) -> list[tuple[int, ...]]:
    out = []
    for rows in iter_adj_rows(n, loops_allowed):
        if len(component_masks(n, rows)) == 1:
            out.append(tuple(rows))
    return out


def _weichsel_pass(nmax: int, violations: _Violations) -> None:
    """Connectivity of products of connected factors with at least one edge:
    connected iff some factor is non-bipartite; two components when both are
    bipartite with edges."""
    pools: dict[int, list[tuple[int, ...]]] = {}
    for n in range(1, min(nmax, 3) + 1):
        pools[n] = [r for r in _connected_row_sets(n, True) if any(r)]
    simple_cap = min(nmax, 4)
    simple: dict[int, list[tuple[int, ...]]] = {}
    for n in range(1, simple_cap + 1):
        simple[n] = [r for r in _connected_row_sets(n, False) if any(r)]
    candidates: list[tuple[int, tuple[int, ...]]] = []
    for n, rows_list in pools.items():
        candidates.extend((n, r) for r in rows_list)
    for n, rows_list in simple.items():
        candidates.extend((n, r) for r in rows_list)
    seen_pairs = set()
    for ng, grows in candidates:
        for nh, hrows in candidates:
            if ng * nh > 36 or (ng, grows, nh, hrows) in seen_pairs:
                continue
            seen_pairs.add((ng, grows, nh, hrows))
            g = Graph(ng, grows)
            h = Graph(nh, hrows)
            prod = direct_product(g, h)
            ncomp = len(component_masks(prod.n, prod.adj))
            g_bip = bipartition(g).is_bipartite
            h_bip = bipartition(h).is_bipartite
            if not g_bip or not h_bip:
                expected = 1
            else:
                expected = 2
            if ncomp != expected:
                violations.add(
                    "weichsel", max(ng, nh),
                    g_edges=_edges_of_rows(ng, grows),
                    h_edges=_edges_of_rows(nh, hrows),
                    components=ncomp, expected=expected,
                )


def _lovasz_pass(nmax: int, violations: _Violations) -> None:
    """G x K3 iso H x K3 forces G iso H over loopless graphs."""
    for n in range(1, min(nmax, 4) + 1):
        buckets: dict[bytes, int] = {}
        mixed: dict[bytes, bool] = {}
        for rows in iter_adj_rows(n, False):
            frozen = tuple(rows)
            prod = direct_product(Graph(n, frozen), K3)
            key = cert_bytes(prod.n, canon_rows(prod.n, prod.adj)[0])
            cp = _canon_pack(n, frozen)
            if key not in buckets:
                buckets[key] = cp
                mixed[key] = False
            elif buckets[key] != cp:
                mixed[key] = True
        for key, is_mixed in mixed.items():
            if is_mixed:
                violations.add("lovasz_k3", n, note="product class contains non-isomorphic members")


def _roundtrip_pass(n: int, violations: _Violations) -> None:
    for rows in iter_adj_rows(n, True):
        frozen = tuple(rows)
        g = Graph(n, frozen)
        for img in iter_ant_images(n, frozen):
            target_rows = apply_anti_rows(frozen, img)
            result = extract_anti_from_product_iso(g, Graph(n, target_rows))
            if result is None:
                violations.add(
                    "roundtrip_missing", n,
                    edges=_edges_of_rows(n, frozen), alpha=list(img),
                )
                continue
            alpha, _mu = result
            got = apply_anti_rows(frozen, alpha.image)
            if got != target_rows and cert_bytes(n, canon_rows(n, got)[0]) != cert_bytes(
                n, canon_rows(n, target_rows)[0]
            ):
                violations.add(
                    "roundtrip_mismatch", n,
                    edges=_edges_of_rows(n, frozen),
                    alpha=list(img), recovered=list(alpha.image),
                )


def _component_class_multiset(n: int, rows) -> tuple[bytes, ...]:
    parts = []
    for mask in component_masks(n, rows):
        local = compact_rows(rows, mask)
        crows, _ = canon_connected(len(local), local)
        parts.append(cert_bytes(len(local), crows))
    return tuple(sorted(parts))


def _bip_sweep_for_n(
    n: int, violations: _Violations, start: int = 0, stop: int | None = None
) -> tuple[int, int]:
    """Bipartite-only sweep: the reversal-involution decider must agree with
    the anti-automorphism route, and G x K2 must equal G + G up to iso."""
    checked = 0
    failures = 0
    for rows in iter_adj_rows(n, False, start=start, stop=stop):
        frozen = tuple(rows)
        g = Graph(n, frozen)
        bip = bipartition(g)
        if not bip.is_bipartite:
            continue
        checked += 1
        bip_verdict, _ = _bip_decide(g, bip)
        if not bip_verdict:
            failures += 1
        base = None
        slow = True
        seen = set()
        for img in iter_ant_images(n, frozen):
            if not _has_two_power_order(img):
                continue
            arows = apply_anti_rows(frozen, img)
            if arows == frozen or arows in seen:
                continue
            seen.add(arows)
            if base is None:
                base = cert_bytes(n, canon_rows(n, frozen)[0])
            if cert_bytes(n, canon_rows(n, arows)[0]) != base:
                slow = False
                break
        if bip_verdict != slow:
            violations.add(
                "biprevinv", n,
                edges=_edges_of_rows(n, frozen),
                reversal_decider=bip_verdict, anti_route=slow,
            )
        doubled = _component_class_multiset(n, frozen) * 2
        cover = _component_class_multiset(2 * n, _product_with_k2_rows(n, frozen))
        if tuple(sorted(doubled)) != cover:
            violations.add(
                "double_cover", n, edges=_edges_of_rows(n, frozen),
            )
    return checked, failures


# ---------------------------------------------------------------------------
# parallel plumbing
# ---------------------------------------------------------------------------
#
# Workers rebuild iteration state from (n, start, stop). Large read-only
# state (the universe index) travels by fork inheritance: it is stashed in
# _FORK_STATE before the pool for that phase is created, so every child gets
# it for free via copy-on-write. That requires a fresh pool per phase, which
# fork makes cheap.

_FORK_STATE: dict = {}

_POOL_THRESHOLD = 1 << 12


def _run_pool(worker, argslist: list, jobs: int) -> list:
    import multiprocessing as mp

    ctx = mp.get_context("fork")
    with ctx.Pool(min(jobs, len(argslist))) as pool:
        return pool.map(worker, argslist)


def _fork_available() -> bool:
    import multiprocessing as mp

    try:
        mp.get_context("fork")
    except ValueError:
        return False
    return True


def _worker_universe(args: tuple[int, int, int]) -> "_UniverseIndex":
    n, start, stop = args
    index = _UniverseIndex(n)
    index.build(start=start, stop=stop)
    return index


def _worker_main(args: tuple[int, bool, int, int]):
    n, loops_allowed, start, stop = args
    index: _UniverseIndex = _FORK_STATE["index"]
    violations = _Violations()
    counts = _main_pass_for_n(
        n, loops_allowed, index, violations, start=start, stop=stop
    )
    return counts, violations.items, violations.total


def _worker_simeqiso(args: tuple[int, bool, int, int]):
    n, loops_allowed, start, stop = args
    violations = _Violations()
    _simeqiso_pass(n, loops_allowed, violations, start=start, stop=stop)
    return violations.items, violations.total


def _worker_simplus2(args: tuple[int, bool, int, int]):
    n, loops_allowed, start, stop = args
    violations = _Violations()
    _simplus2_pass(n, loops_allowed, violations, start=start, stop=stop)
    return violations.items, violations.total


def _worker_bip_sweep(args: tuple[int, int, int]):
    n, start, stop = args
    violations = _Violations()
    checked, failures = _bip_sweep_for_n(n, violations, start=start, stop=stop)
    return checked, failures, violations.items, violations.total


def _shards(total: int, jobs: int) -> list[tuple[int, int]]:
    chunk = (total + jobs - 1) // jobs
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def _absorb(violations: _Violations, items: list[dict], total: int) -> None:
    for item in items:
        if len(violations.items) < MAX_RECORDED_VIOLATIONS:
            violations.items.append(item)
    violations.total += total


def verify_theorems(
    nmax: int,
    loops_allowed: bool,
    *,
    bip_max: int = BIP_SWEEP_MAX,
    jobs: int | None = None,
    force: bool = False,
) -> VerificationReport:
    """Run every exhaustive invariant suite up to nmax and report violations.

    The main suite compares the decider against both scan oracles for every
    graph of the mode's universe; side suites cover the multiset identity,
    orbit/isomorphism agreement, odd powers, two-fold membership, digraph
    symmetry, product structure, and the bipartite sweep (which always runs
    loopless up to bip_max, independent of mode).
    """
    limit = VERIFY_MAX_LOOPS if loops_allowed else VERIFY_MAX_SIMPLE
    if nmax > limit and not force:
        raise CapacityError(
            f"verification guarded at nmax<={limit} "
            f"({'loops' if loops_allowed else 'loopless'}); pass force=True"
        )
    if bip_max > BIP_SWEEP_MAX and not force:
        raise CapacityError(f"bipartite sweep guarded at n<={BIP_SWEEP_MAX}")
    if nmax < 1:
        raise UsageError("nmax must be at least 1")
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and not _fork_available():
        jobs = 1

    violations = _Violations()
    census = []
    bip_census = []
    seconds: list[tuple[str, float]] = []

    def timed(name: str, fn: Callable[[], None]) -> None:
        t0 = time.perf_counter()
        fn()
        seconds.append((name, round(time.perf_counter() - t0, 3)))

    def run_main() -> None:
        for n in range(1, nmax + 1):
            total = enumerate_count(n, True)
            if jobs > 1 and total >= _POOL_THRESHOLD:
                parts = _run_pool(
                    _worker_universe,
                    [(n, lo, hi) for lo, hi in _shards(total, jobs)],
                    jobs,
                )
                index = parts[0]
                for part in parts[1:]:
                    index.merge(part)
            else:
                index = _UniverseIndex(n)
                index.build()
            mode_total = enumerate_count(n, loops_allowed)
            if jobs > 1 and mode_total >= _POOL_THRESHOLD:
                _FORK_STATE["index"] = index
                try:
                    results = _run_pool(
                        _worker_main,
                        [
                            (n, loops_allowed, lo, hi)
                            for lo, hi in _shards(mode_total, jobs)
                        ],
                        jobs,
                    )
                finally:
                    _FORK_STATE.clear()
                graphs = non_rec = non_strong = bipf = 0
                for counts, items, vtotal in results:
                    graphs += counts[0]
                    non_rec += counts[1]
                    non_strong += counts[2]
                    bipf += counts[3]
                    _absorb(violations, items, vtotal)
            else:
                graphs, non_rec, non_strong, bipf = _main_pass_for_n(
                    n, loops_allowed, index, violations
                )
            if graphs != mode_total:
                raise InvariantViolationError(
                    f"census covered {graphs} graphs, expected {mode_total}"
                )
            census.append(CensusRow(n, graphs, non_rec, non_strong, bipf))

    timed("main", run_main)
    timed(
        "neighborhood_prop",
        lambda: [
            _neighborhood_prop_pass(n, violations)
            for n in range(1, min(4, nmax) + 1)
        ],
    )

    def run_simeqiso() -> None:
        for n in range(1, min(5, nmax) + 1):
            total = enumerate_count(n, loops_allowed)
            if jobs > 1 and total >= _POOL_THRESHOLD:
                for items, vtotal in _run_pool(
                    _worker_simeqiso,
                    [(n, loops_allowed, lo, hi) for lo, hi in _shards(total, jobs)],
                    jobs,
                ):
                    _absorb(violations, items, vtotal)
            else:
                _simeqiso_pass(n, loops_allowed, violations)

    timed("simeqiso", run_simeqiso)

    def run_simplus2() -> None:
        for n in range(1, min(5, nmax) + 1):
            total = enumerate_count(n, loops_allowed)
            if jobs > 1 and total >= _POOL_THRESHOLD:
                for items, vtotal in _run_pool(
                    _worker_simplus2,
                    [(n, loops_allowed, lo, hi) for lo, hi in _shards(total, jobs)],
                    jobs,
                ):
                    _absorb(violations, items, vtotal)
            else:
                _simplus2_pass(n, loops_allowed, violations)

    timed("simplus2", run_simplus2)
    timed(
        "pair_membership",
        lambda: [
            _pair_membership_pass(n, violations)
            for n in range(1, min(4, nmax) + 1)
        ],
    )
    timed(
        "digraph_symmetry",
        lambda: [
            _digraph_symmetry_pass(n, violations)
            for n in range(1, min(4, nmax) + 1)
        ],
    )
    timed("weichsel", lambda: _weichsel_pass(nmax, violations))
    timed("lovasz", lambda: _lovasz_pass(nmax, violations))
    timed(
        "roundtrip",
        lambda: [
            _roundtrip_pass(n, violations) for n in range(1, min(4, nmax) + 1)
        ],
    )

    def run_sweep() -> None:
        for n in range(1, bip_max + 1):
            total = enumerate_count(n, False)
            if jobs > 1 and total >= _POOL_THRESHOLD:
                checked = failures = 0
                for c, f, items, vtotal in _run_pool(
                    _worker_bip_sweep,
                    [(n, lo, hi) for lo, hi in _shards(total, jobs)],
                    jobs,
                ):
                    checked += c
                    failures += f
                    _absorb(violations, items, vtotal)
            else:
                checked, failures = _bip_sweep_for_n(n, violations)
            bip_census.append(BipSweepRow(n, checked, failures))

    timed("bipartite_sweep", run_sweep)

    return VerificationReport(
        nmax=nmax,
        loops_allowed=loops_allowed,
        bip_max=bip_max,
        jobs=jobs,
        census=tuple(census),
        bipartite_census=tuple(bip_census),
        violations=tuple(violations.items),
        suite_seconds=tuple(seconds),
    )
