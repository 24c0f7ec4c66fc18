"""Exhaustive generation of origamis by degree and stratum.

Every transitive pair is simultaneously conjugate to one whose ``right``
permutation is the standard representative of its cycle type (cycles of
non-increasing length on consecutive symbols).  So it suffices to fix
``right`` to one representative per partition of d and scan all d!
candidates for ``up``, keeping those whose commutator has the cycle type
demanded by the stratum; canonical forms deduplicate the survivors.  The
scan over S_d is vectorized with numpy and processed in chunks.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .components import component_label
from .errors import InputError, InternalCheckError
from .origami import Origami, Stratum
from .orbits import (
    OrbitCache,
    OrbitSummary,
    Pair,
    _pair_to_origami,
    _s_key,
    _summary_from_parts,
    _t_key,
    _unpack,
    canonical_key,
    format_rational,
    summarize_pairs,
)

_CHUNK = 200_000


def partitions(n: int):
    """Partitions of n in decreasing lexicographic order, as tuples."""
    if n == 0:
        yield ()
        return
    a = [n]
    while True:
        yield tuple(a)
        k = len(a) - 1
        while k >= 0 and a[k] == 1:
            k -= 1
        if k < 0:
            return
        ones = len(a) - k - 1
        new = a[k] - 1
        a = a[: k + 1]
        a[k] = new
        total = ones + 1
        while total:
            take = min(new, total)
            a.append(take)
            total -= take


def partition_representative(parts: tuple[int, ...]) -> tuple[int, ...]:
    """0-based images of the standard permutation with the given cycle type."""
    images = []
    start = 0
    for length in parts:
        images.extend(list(range(start + 1, start + length)) + [start])
        start += length
    return tuple(images)


def commutator_cycle_type(s: Stratum, degree: int) -> tuple[int, ...] | None:
    """Cycle type the commutator must have at this degree, or None when
    the stratum cannot occur (not enough squares)."""
    support = sum(m + 1 for m in s.orders)
    if support > degree:
        return None
    return tuple(
        sorted(list(m + 1 for m in s.orders) + [1] * (degree - support), reverse=True)
    )


def _perm_table(d: int) -> np.ndarray:
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(d))),
        dtype=np.int8,
    )
    return flat.reshape(-1, d)


def _scan_degree(
    d: int, targets: dict[Stratum, tuple[int, ...]]
) -> dict[Stratum, set[bytes]]:
    """All canonical transitive pairs of degree d per target stratum,
    as packed canonical keys."""
    found: dict[Stratum, set[bytes]] = {s: set() for s in targets}
    if not targets:
        return found
    lengths = sorted({l for t in targets.values() for l in t})
    wants = {}
    for s, target in targets.items():
        want = {l: 0 for l in lengths}
        for l in target:
            want[l] += l
        if sum(want.values()) != d:
            raise InternalCheckError("cycle-type target does not fill the degree")
        wants[s] = want
    table = _perm_table(d)
    idx = np.arange(d, dtype=np.int8)

    for parts in partitions(d):
        r = np.array(partition_representative(parts), dtype=np.int8)
        rinv = np.empty(d, dtype=np.int8)
        rinv[r] = idx
        rz = tuple(int(x) for x in r)
        for lo in range(0, len(table), _CHUNK):
            u = table[lo : lo + _CHUNK]
            uinv = np.argsort(u, axis=1).astype(np.int8)
            # commutator c = u^-1 r^-1 u r, evaluated right to left
            t2 = rinv[u[:, r]]
            c = np.take_along_axis(uinv, t2, axis=1)
            # minimal period of every symbol under c
            period = np.zeros_like(c)
            power = c.copy()
            for k in range(1, d + 1):
                hit = (power == idx) & (period == 0)
                period[hit] = k
                if k < d:
                    power = np.take_along_axis(c, power, axis=1)
            counts = {l: (period == l).sum(axis=1) for l in lengths}
            for s, want in wants.items():
                mask = np.ones(len(u), dtype=bool)
                for l in lengths:
                    mask &= counts[l] == want[l]
                for row in np.nonzero(mask)[0]:
                    uz = tuple(int(x) for x in u[row])
                    if not _transitive(rz, uz):
                        continue
                    found[s].add(canonical_key(rz, uz))
    return found


def _transitive(rz, uz) -> bool:
    d = len(rz)
    seen = [False] * d
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        x = stack.pop()
        for y in (rz[x], uz[x]):
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == d


def enumerate_origamis(d: int, s: Stratum) -> list[Origami]:
    """All origamis of degree d in the stratum, one canonical
    representative per conjugacy class, sorted."""
    if d < 1:
        raise InputError("degree must be positive")
    target = commutator_cycle_type(s, d)
    if target is None:
        return []
    keys = _scan_degree(d, {s: target})[s]
    return [_pair_to_origami(_unpack(k)) for k in sorted(keys)]


@dataclass(frozen=True)
class OrbitClass:
    """One SL(2,Z) orbit inside an enumerated set."""

    representative: Origami
    members: tuple[Pair, ...]
    summary: OrbitSummary


def orbit_partition(
    origamis: list[Origami], cache: OrbitCache | None = None
) -> list[OrbitClass]:
    """Partition conjugacy classes into SL(2,Z) orbits.

    The input must be closed under the action (it is when it comes from
    ``enumerate_origamis``: T and S preserve degree and stratum).
    """
    if not origamis:
        return []
    degrees = {o.degree for o in origamis}
    strata = {o.stratum() for o in origamis}
    if len(degrees) != 1 or len(strata) != 1:
        raise InputError("orbit partition needs a single degree and stratum")
    (degree,) = degrees
    (stratum,) = strata

    keys = [
        canonical_key(o.right.zero_based(), o.up.zero_based()) for o in origamis
    ]
    index = {k: i for i, k in enumerate(keys)}
    if len(index) != len(keys):
        raise InputError("duplicate conjugacy classes in the input")

    parent = list(range(len(keys)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for i, k in enumerate(keys):
        for neighbor in (_t_key(k, degree), _s_key(k, degree)):
            j = index.get(neighbor)
            if j is None:
                raise InternalCheckError("enumerated set is not closed under T and S")
            union(i, j)

    groups: dict[int, list[bytes]] = {}
    for i in range(len(keys)):
        groups.setdefault(find(i), []).append(keys[i])

    out = []
    for root in sorted(groups, key=lambda i: keys[i]):
        members = {_unpack(k) for k in groups[root]}
        least = min(groups[root])
        summary = None
        if cache is not None:
            hit = cache.lookup(least)
            if hit is not None:
                n, cusp_count, total = hit
                if n != len(members):
                    raise InternalCheckError("cached orbit size disagrees")
                summary = _summary_from_parts(degree, stratum, n, cusp_count, total)
        if summary is None:
            summary = summarize_pairs(members, degree, stratum)
            if cache is not None:
                cache.store(least, summary.orbit_size, summary.cusp_count, summary.total_hw)
        out.append(
            OrbitClass(
                representative=_pair_to_origami(_unpack(least)),
                members=tuple(sorted(members)),
                summary=summary,
            )
        )
    return out


@dataclass(frozen=True)
class ReportEntry:
    stratum: Stratum
    component: str
    degree: int
    orbit_size: int
    L: Fraction
    c: Fraction
    s: Fraction
    witness: Origami


@dataclass(frozen=True)
class StratumReport:
    """Distinct Lyapunov sums per component across a degree range."""

    stratum: Stratum
    d_max: int
    entries: tuple[ReportEntry, ...]

    def values_by_component(self) -> dict[str, set[Fraction]]:
        out: dict[str, set[Fraction]] = {}
        for e in self.entries:
            out.setdefault(e.component, set()).add(e.L)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["stratum", "component", "degree", "orbit_size", "L", "c", "s", "witness"]
        )
        for e in self.entries:
            writer.writerow(
                [
                    str(e.stratum),
                    e.component,
                    e.degree,
                    e.orbit_size,
                    format_rational(e.L),
                    format_rational(e.c),
                    format_rational(e.s),
                    str(e.witness),
                ]
            )
        return buf.getvalue()

    def to_json(self) -> list[dict]:
        return [
            {
                "stratum": str(e.stratum),
                "component": e.component,
                "degree": e.degree,
                "orbit_size": e.orbit_size,
                "L": format_rational(e.L),
                "c": format_rational(e.c),
                "s": format_rational(e.s),
                "witness": str(e.witness),
            }
            for e in self.entries
        ]


def nonvarying_report(
    s: Stratum,
    d_max: int,
    d_min: int | None = None,
    cache: OrbitCache | None = None,
) -> StratumReport:
    """Aggregate orbit L values per component over all degrees <= d_max.

    One entry per distinct (component, L) pair, witnessed by the orbit
    of smallest degree (then smallest representative) realizing it.
    """
    if s.genus < 2:
        raise InputError("non-varying reports need genus >= 2")
    support = sum(m + 1 for m in s.orders)
    lo = max(d_min or support, support)
    entries: list[ReportEntry] = []
    seen: set[tuple[str, Fraction]] = set()
    for d in range(lo, d_max + 1):
        for oc in orbit_partition(enumerate_origamis(d, s), cache=cache):
            label = component_label(oc.representative).kind
            key = (label, oc.summary.L)
            if key in seen:
                continue
            seen.add(key)
            entries.append(
                ReportEntry(
                    stratum=s,
                    component=label,
                    degree=d,
                    orbit_size=oc.summary.orbit_size,
                    L=oc.summary.L,
                    c=oc.summary.c,
                    s=oc.summary.s,
                    witness=oc.representative,
                )
            )
    return StratumReport(stratum=s, d_max=d_max, entries=tuple(entries))
