"""SL(2,Z) action, orbit enumeration and the exact Lyapunov-sum formula.

The group SL(2,Z) acts on origamis through the two generators

    T (horizontal shear):  (r, u) -> (r, u * r^-1)
    S (quarter rotation):  (r, u) -> (u^-1, r)

up to simultaneous relabelling of the squares, so orbits are sets of
canonical forms.  For an origami orbit the sum of Lyapunov exponents is

    L = kappa + (1/N) * sum over the orbit of sum_cylinders h/w

with N the orbit size; the Siegel-Veech constant is c = L - kappa and
the slope is s = 12 - 12 kappa / L.  Everything is exact rational
arithmetic; no floating point enters anywhere in this module.

Degree-11 orbits run into the millions of elements, so the breadth-first
search works on packed byte strings: a canonical pair of 0-based image
tuples (r, u) is stored as the 2d-byte key bytes(r) + bytes(u), whose
lexicographic order agrees with tuple order.
"""
from __future__ import annotations

import hashlib
import os
from array import array
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import InputError, InternalCheckError, ResourceCapError
from .origami import Origami, Stratum, kappa
from .permutation import Permutation

DEFAULT_ORBIT_CAP = 10**7

#: 0-based image tuples for one origami; the friendly currency.
Pair = tuple[tuple[int, ...], tuple[int, ...]]


def act_T(o: Origami) -> Origami:
    """Image under the horizontal shear [[1,1],[0,1]]."""
    return Origami(o.right, o.up * o.right.inverse())


def act_S(o: Origami) -> Origami:
    """Image under the rotation by pi/2."""
    return Origami(o.up.inverse(), o.right)


# -- packed-pair plumbing ----------------------------------------------------

def _pack(p: Pair) -> bytes:
    return bytes(p[0]) + bytes(p[1])


def _unpack(key: bytes) -> Pair:
    d = len(key) // 2
    return tuple(key[:d]), tuple(key[d:])


def _pair_of(o: Origami) -> Pair:
    return o.right.zero_based(), o.up.zero_based()


def _pair_to_origami(p: Pair) -> Origami:
    return Origami(
        Permutation(tuple(x + 1 for x in p[0])),
        Permutation(tuple(x + 1 for x in p[1])),
    )


def canonical_key(rz, uz) -> bytes:
    """Packed canonical form; ``rz``/``uz`` may be any int sequences."""
    d = len(rz)
    best = None
    # the first output byte is 0 exactly when the base square is fixed by
    # r, so bases at r-fixed points dominate whenever any exist
    bases = [x for x in range(d) if rz[x] == x] or range(d)
    for base in bases:
        label = [-1] * d
        order = [0] * d
        label[base] = 0
        order[0] = base
        filled = 1
        i = 0
        while i < filled:
            x = order[i]
            i += 1
            y = rz[x]
            if label[y] < 0:
                label[y] = filled
                order[filled] = y
                filled += 1
            y = uz[x]
            if label[y] < 0:
                label[y] = filled
                order[filled] = y
                filled += 1
        if filled != d:
            raise InputError("canonical form needs a transitive pair")
        out = bytearray(2 * d)
        for k in range(d):
            x = order[k]
            lx = label[x]
            out[lx] = label[rz[x]]
            out[d + lx] = label[uz[x]]
        cand = bytes(out)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def _t_key(key: bytes, d: int) -> bytes:
    """Canonical key of T applied to a packed pair: (r, u r^-1)."""
    rz = key[:d]
    uz = key[d:]
    rinv = [0] * d
    for i in range(d):
        rinv[rz[i]] = i
    return canonical_key(rz, [uz[x] for x in rinv])


def _s_key(key: bytes, d: int) -> bytes:
    """Canonical key of S applied to a packed pair: (u^-1, r)."""
    rz = key[:d]
    uz = key[d:]
    uinv = [0] * d
    for i in range(d):
        uinv[uz[i]] = i
    return canonical_key(uinv, rz)


@dataclass(frozen=True)
class CylinderDecomposition:
    """Horizontal cylinders as (width, height) pairs, widest first."""

    cylinders: tuple[tuple[int, int], ...]

    @property
    def sum_h_over_w(self) -> Fraction:
        return sum((Fraction(h, w) for w, h in self.cylinders), Fraction(0))

    @property
    def total_area(self) -> int:
        return sum(w * h for w, h in self.cylinders)

    def __iter__(self):
        return iter(self.cylinders)

    def __len__(self):
        return len(self.cylinders)


def horizontal_cylinders(o: Origami) -> CylinderDecomposition:
    """Decompose into horizontal cylinders.

    Rows are the cycles of ``right``.  The circle between a row R and the
    row above it carries no cone point exactly when up(right(j)) equals
    right(up(j)) for every j in R; in that case both rows belong to the
    same cylinder.  Cylinders are the maximal chains of rows, with width
    the common row length and height the number of rows.  A chain closing
    up into a torus happens in genus one only.
    """
    o.validate()
    return CylinderDecomposition(_cylinders(o.right.zero_based(), o.up.zero_based()))


def _cylinders(rz, uz) -> tuple[tuple[int, int], ...]:
    d = len(rz)
    row_of = [-1] * d
    rows: list[list[int]] = []
    for start in range(d):
        if row_of[start] >= 0:
            continue
        idx = len(rows)
        cyc = [start]
        row_of[start] = idx
        x = rz[start]
        while x != start:
            cyc.append(x)
            row_of[x] = idx
            x = rz[x]
        rows.append(cyc)

    n = len(rows)
    # above[i] = row glued on top of row i across a cone-point-free circle
    above = [-1] * n
    has_below = [False] * n
    for i, cyc in enumerate(rows):
        if all(uz[rz[j]] == rz[uz[j]] for j in cyc):
            k = row_of[uz[cyc[0]]]
            above[i] = k
            has_below[k] = True

    cylinders = []
    seen = [False] * n
    for i in range(n):
        if seen[i] or has_below[i]:
            continue
        height = 0
        j = i
        while j >= 0 and not seen[j]:
            seen[j] = True
            height += 1
            j = above[j]
        cylinders.append((len(rows[i]), height))
    for i in range(n):
        if seen[i]:
            continue
        height = 0
        j = i
        while not seen[j]:
            seen[j] = True
            height += 1
            j = above[j]
        cylinders.append((len(rows[i]), height))

    if sum(w * h for w, h in cylinders) != d:
        raise InternalCheckError("cylinder areas do not add up to the degree")
    return tuple(sorted(cylinders, reverse=True))


def _hw_sum(rz, uz) -> Fraction:
    return sum((Fraction(h, w) for w, h in _cylinders(rz, uz)), Fraction(0))


# -- orbit scan ---------------------------------------------------------------

@dataclass
class OrbitScan:
    """Raw result of the breadth-first orbit search."""

    degree: int
    keys: list[bytes]          # discovery order
    t_next: array              # index of the T image of keys[i]
    total_hw: Fraction

    @property
    def size(self) -> int:
        return len(self.keys)

    def min_key(self) -> bytes:
        return min(self.keys)

    def cusp_widths(self) -> list[tuple[int, bytes]]:
        """(width, least member) per T-orbit, sorted."""
        n = len(self.keys)
        seen = bytearray(n)
        cusps = []
        for start in range(n):
            if seen[start]:
                continue
            width = 0
            best = self.keys[start]
            x = start
            while not seen[x]:
                seen[x] = 1
                width += 1
                if self.keys[x] < best:
                    best = self.keys[x]
                x = self.t_next[x]
            if x != start:
                # T is invertible, so its graph on the orbit is a disjoint
                # union of cycles; a tail means the closure was incomplete.
                raise InternalCheckError("T-orbit left the computed SL(2,Z) orbit")
            cusps.append((width, best))
        return sorted(cusps)


def orbit_scan(o: Origami, max_size: int = DEFAULT_ORBIT_CAP) -> OrbitScan:
    """Close the canonical form of ``o`` under T and S.

    The visited set is keyed by packed canonical forms, so the resulting
    set is independent of scheduling; the cylinder sums are accumulated
    along the way.
    """
    if max_size < 1:
        raise InputError("orbit-size cap must be at least 1")
    o.validate()
    d = o.degree
    start = canonical_key(*_pair_of(o))
    index: dict[bytes, int] = {start: 0}
    keys = [start]
    t_next = array("l", [-1])
    total = Fraction(0)
    frontier = deque((0,))
    while frontier:
        i = frontier.popleft()
        key = keys[i]
        total += _hw_sum(key[:d], key[d:])
        tk = _t_key(key, d)
        j = index.get(tk)
        if j is None:
            j = len(keys)
            if j >= max_size:
                raise ResourceCapError(
                    f"orbit exceeds the configured cap of {max_size} elements"
                )
            index[tk] = j
            keys.append(tk)
            t_next.append(-1)
            frontier.append(j)
        t_next[i] = j
        sk = _s_key(key, d)
        if sk not in index:
            j = len(keys)
            if j >= max_size:
                raise ResourceCapError(
                    f"orbit exceeds the configured cap of {max_size} elements"
                )
            index[sk] = j
            keys.append(sk)
            t_next.append(-1)
            frontier.append(j)
    return OrbitScan(degree=d, keys=keys, t_next=t_next, total_hw=total)


def orbit_pairs(start: Pair, max_size: int = DEFAULT_ORBIT_CAP) -> set[Pair]:
    """BFS closure as a set of canonical pairs (small-scale API)."""
    scan = orbit_scan(_pair_to_origami(start), max_size=max_size)
    return {_unpack(k) for k in scan.keys}


def orbit(o: Origami, max_size: int = DEFAULT_ORBIT_CAP) -> list[Origami]:
    """The SL(2,Z) orbit of ``o`` as a sorted list of canonical origamis."""
    scan = orbit_scan(o, max_size=max_size)
    return [_pair_to_origami(_unpack(k)) for k in sorted(scan.keys)]


# -- orbit invariants ---------------------------------------------------------

@dataclass(frozen=True)
class OrbitSummary:
    """Exact invariants of one SL(2,Z) orbit."""

    degree: int
    stratum: Stratum
    orbit_size: int
    cusp_count: int
    total_hw: Fraction
    L: Fraction
    c: Fraction
    s: Fraction

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "stratum": list(self.stratum.orders),
            "orbit_size": self.orbit_size,
            "cusp_count": self.cusp_count,
            "total_hw": format_rational(self.total_hw),
            "L": format_rational(self.L),
            "c": format_rational(self.c),
            "s": format_rational(self.s),
        }


def format_rational(x: Fraction) -> str:
    """Lowest terms, always with an explicit positive denominator."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _summary_from_parts(
    degree: int,
    stratum: Stratum,
    n: int,
    cusp_count: int,
    total: Fraction,
) -> OrbitSummary:
    if stratum.genus < 2:
        raise InputError("Lyapunov data needs genus >= 2")
    k = kappa(stratum)
    L = k + total / n
    c = L - k
    s = 12 - 12 * k / L
    if s != 12 * c / L:
        raise InternalCheckError("slope identities disagree")
    if not (L > 0 and 0 < s < 12):
        raise InternalCheckError(f"orbit invariants out of range: L={L}, s={s}")
    return OrbitSummary(
        degree=degree,
        stratum=stratum,
        orbit_size=n,
        cusp_count=cusp_count,
        total_hw=total,
        L=L,
        c=c,
        s=s,
    )


def summarize_pairs(pairs: set[Pair], degree: int, stratum: Stratum) -> OrbitSummary:
    """Exact invariants from a complete orbit given as canonical pairs.

    The reduction runs in canonical-form order, so the result does not
    depend on how the orbit was discovered.
    """
    total = Fraction(0)
    for p in sorted(pairs):
        total += _hw_sum(p[0], p[1])
    widths = _t_widths_of_pairs(pairs, degree)
    if sum(widths) != len(pairs):
        raise InternalCheckError("cusp widths do not partition the orbit")
    return _summary_from_parts(degree, stratum, len(pairs), len(widths), total)


def _t_widths_of_pairs(pairs: set[Pair], d: int) -> list[int]:
    remaining = {_pack(p) for p in pairs}
    widths = []
    while remaining:
        seed = min(remaining)
        width = 0
        x = seed
        while True:
            remaining.discard(x)
            width += 1
            x = _t_key(x, d)
            if x == seed:
                break
            if x not in remaining:
                raise InternalCheckError("T-orbit left the computed SL(2,Z) orbit")
        widths.append(width)
    return widths


def cusps(
    o: Origami, max_size: int = DEFAULT_ORBIT_CAP
) -> list[tuple[int, Origami, CylinderDecomposition]]:
    """Cusps of the Teichmueller curve: one (width, representative,
    cylinder data) triple per T-orbit; widths add up to the orbit size."""
    s = o.stratum()
    if s.genus < 2:
        raise InputError("cusp data needs genus >= 2")
    scan = orbit_scan(o, max_size=max_size)
    d = o.degree
    out = []
    for width, key in scan.cusp_widths():
        p = _unpack(key)
        out.append((width, _pair_to_origami(p), CylinderDecomposition(_cylinders(p[0], p[1]))))
    return out


def lyapunov_sum(
    o: Origami,
    max_size: int = DEFAULT_ORBIT_CAP,
    cache: "OrbitCache | None" = None,
) -> OrbitSummary:
    """Sum of Lyapunov exponents (with c and s) for the orbit of ``o``."""
    stratum = o.stratum()
    if stratum.genus < 2:
        raise InputError(
            f"Lyapunov data needs genus >= 2, got genus {stratum.genus}"
        )
    if cache is not None:
        hit = cache.lookup_any(canonical_key(*_pair_of(o)))
        if hit is not None:
            n, cusp_count, total = hit
            return _summary_from_parts(o.degree, stratum, n, cusp_count, total)
    scan = orbit_scan(o, max_size=max_size)
    cusp_count = len(scan.cusp_widths())
    summary = _summary_from_parts(
        o.degree, stratum, scan.size, cusp_count, scan.total_hw
    )
    if cache is not None:
        cache.store(
            scan.min_key(), summary.orbit_size, cusp_count, summary.total_hw
        )
        cache.store_alias(canonical_key(*_pair_of(o)), scan.min_key())
    return summary


class OrbitCache:
    """Persistent orbit results under FLATLYAP_CACHE_DIR.

    ``orbits.cache`` holds one line per orbit,
    ``<canonical-form-hash> <N> <cusp_count> <total_hw> <line-hash>``,
    keyed by the orbit's least canonical pair; ``aliases.cache`` maps
    hashes of other queried representatives to the orbit key so repeated
    queries hit without a fresh search.  The trailing line hash detects
    corruption: bad lines are dropped, forcing a recompute.
    """

    ENV_VAR = "FLATLYAP_CACHE_DIR"

    def __init__(self, directory: str | os.PathLike | None = None):
        if directory is None:
            directory = os.environ.get(self.ENV_VAR)
        if directory is None:
            raise InputError(
                "no cache directory: pass one or set FLATLYAP_CACHE_DIR"
            )
        base = Path(directory)
        self.path = base / "orbits.cache"
        self.alias_path = base / "aliases.cache"
        self._entries: dict[str, tuple[int, int, Fraction]] = {}
        self._aliases: dict[str, str] = {}
        self._load()

    @staticmethod
    def key_hash(key: bytes) -> str:
        return hashlib.sha256(key).hexdigest()

    @staticmethod
    def _line_hash(payload: str) -> str:
        return hashlib.sha256(payload.encode()).hexdigest()[:12]

    def _load(self) -> None:
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    digest, n_text, cusp_text, total_text, check = line.split()
                    if check != self._line_hash(
                        f"{digest} {n_text} {cusp_text} {total_text}"
                    ):
                        raise ValueError
                    n, cusp_count = int(n_text), int(cusp_text)
                    total = parse_rational(total_text)
                    if n < 1 or cusp_count < 1 or len(digest) != 64:
                        raise ValueError
                except ValueError:
                    continue  # corrupted line: recompute later
                self._entries[digest] = (n, cusp_count, total)
        if self.alias_path.exists():
            for line in self.alias_path.read_text().splitlines():
                parts = line.split()
                if len(parts) == 2 and len(parts[0]) == 64 and len(parts[1]) == 64:
                    self._aliases[parts[0]] = parts[1]

    def lookup(self, key: bytes) -> tuple[int, int, Fraction] | None:
        return self._entries.get(self.key_hash(key))

    def lookup_any(self, key: bytes) -> tuple[int, int, Fraction] | None:
        digest = self.key_hash(key)
        if digest in self._entries:
            return self._entries[digest]
        alias = self._aliases.get(digest)
        if alias is not None:
            return self._entries.get(alias)
        return None

    def store(self, key: bytes, n: int, cusp_count: int, total: Fraction) -> None:
        digest = self.key_hash(key)
        if digest in self._entries:
            return
        self._entries[digest] = (n, cusp_count, total)
        payload = f"{digest} {n} {cusp_count} {format_rational(total)}"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(f"{payload} {self._line_hash(payload)}\n")

    def store_alias(self, key: bytes, target: bytes) -> None:
        digest = self.key_hash(key)
        target_digest = self.key_hash(target)
        if digest == target_digest or digest in self._aliases:
            return
        self._aliases[digest] = target_digest
        self.alias_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.alias_path, "a") as fh:
            fh.write(f"{digest} {target_digest}\n")
