"""Exact permutation arithmetic on the symbols 1..d.

Permutations are stored as a tuple ``images`` with ``images[i-1]`` the
image of the symbol ``i``.  The composition convention is fixed once and
for all as ``(p * q)(x) = p(q(x))`` (right-to-left); every formula in the
rest of the package assumes it.

Besides the basic group operations this module provides the canonical
form of a permutation *pair* under simultaneous conjugation, which is
what makes hash-based orbit enumeration possible.
"""
from __future__ import annotations

import re
from collections import deque
from math import lcm
from typing import Sequence

from .errors import DisconnectedError, InputError

_TOKEN = re.compile(r"\d+")


class Permutation:
    """A bijection of {1..d}, immutable and hashable.

    >>> p = Permutation([2, 3, 4, 1, 5])
    >>> str(p)
    '(1 2 3 4)'
    >>> p.cycle_type()
    (4, 1)
    """

    __slots__ = ("_images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        d = len(images)
        seen = [False] * d
        for x in images:
            if not 1 <= x <= d:
                raise InputError(f"image {x} out of range 1..{d}")
            if seen[x - 1]:
                raise InputError(f"repeated image {x}: not a bijection")
            seen[x - 1] = True
        self._images = images

    # -- construction ---------------------------------------------------

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 0:
            raise InputError("degree must be non-negative")
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation, e.g. ``"(1 2 3 4)(5)"`` or ``"(1,14)"``.

        Symbols inside a cycle are separated by spaces or commas; symbols
        not listed are fixed.  Every symbol must lie in 1..degree and may
        appear at most once, otherwise the input is rejected.
        """
        return cls(_parse_cycle_images(text, degree))

    @classmethod
    def from_one_line(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse the one-line image format, e.g. ``"2 3 4 1 5"``."""
        images = [int(t) for t in _TOKEN.findall(text)]
        if degree is not None and len(images) != degree:
            raise InputError(f"expected {degree} images, got {len(images)}")
        return cls(images)

    # -- basic protocol --------------------------------------------------

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    @property
    def degree(self) -> int:
        return len(self._images)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= self.degree:
            raise InputError(f"symbol {x} out of range 1..{self.degree}")
        return self._images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __repr__(self) -> str:
        return f"Permutation({list(self._images)})"

    def __str__(self) -> str:
        cycles = [c for c in self.cycles() if len(c) > 1]
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)

    # -- structure -------------------------------------------------------

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self._images):
            inv[x - 1] = i + 1
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles including fixed points, each starting at its least
        symbol, ordered by that symbol."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            x = self._images[start - 1]
            while x != start:
                cyc.append(x)
                seen[x - 1] = True
                x = self._images[x - 1]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return cycle_type(self)

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def is_identity(self) -> bool:
        return all(x == i + 1 for i, x in enumerate(self._images))

    def zero_based(self) -> tuple[int, ...]:
        """Images as a 0-based tuple, for the hot loops."""
        return tuple(x - 1 for x in self._images)


def _parse_cycle_images(text: str, degree: int) -> list[int]:
    if degree < 0:
        raise InputError("degree must be non-negative")
    stripped = text.strip()
    if stripped and not re.fullmatch(
        r"(\(\s*(\d+(\s*[, ]\s*\d+)*)?\s*\)\s*)*", stripped
    ):
        raise InputError(f"malformed cycle notation: {text!r}")
    images = list(range(1, degree + 1))
    used = [False] * degree
    for cyc_text in re.findall(r"\(([^()]*)\)", stripped):
        tokens = _TOKEN.findall(cyc_text)
        symbols = []
        for token in tokens:
            value = int(token)
            if 1 <= value <= degree:
                symbols.append(value)
            elif (
                len(tokens) == 1
                and len(token) > 1
                and all(1 <= int(ch) <= degree for ch in token)
            ):
                # compressed single-digit run like "(1234)"; separated
                # symbols are always literal, so "(1 14)" at degree 13
                # stays an error rather than a guess
                symbols.extend(int(ch) for ch in token)
            else:
                raise InputError(f"symbol {value} out of range 1..{degree}")
        for s in symbols:
            if used[s - 1]:
                raise InputError(f"symbol {s} appears twice")
            used[s - 1] = True
        for a, b in zip(symbols, symbols[1:] + symbols[:1]):
            images[a - 1] = b
    return images


# -- module-level operations (the public vocabulary) ----------------------

def parse_cycles(text: str, degree: int) -> Permutation:
    """Cycle-notation parser; unlisted symbols are fixed points."""
    return Permutation.from_cycles(text, degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition ``(p*q)(x) = p(q(x))``; degrees must agree."""
    if p.degree != q.degree:
        raise InputError(f"degree mismatch: {p.degree} != {q.degree}")
    pq = p.images
    return Permutation(tuple(pq[x - 1] for x in q.images))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Multiset of cycle lengths (fixed points included), sorted descending."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def is_transitive(r: Permutation, u: Permutation) -> bool:
    """True iff the group generated by ``r`` and ``u`` has a single orbit.

    Forward moves suffice: in a finite group every inverse is a positive
    power, so the reachable set under r, u alone is already a block.
    """
    if r.degree != u.degree:
        raise InputError(f"degree mismatch: {r.degree} != {u.degree}")
    d = r.degree
    if d == 0:
        return False
    rz, uz = r.zero_based(), u.zero_based()
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


def canonical_form(r: Permutation, u: Permutation) -> tuple[Permutation, Permutation]:
    """Least pair among all simultaneous conjugates of ``(r, u)``.

    For every base square the pair is relabelled by BFS order over the
    moves (r first, then u); the lexicographic minimum over base squares
    is a normal form: two transitive pairs are simultaneously conjugate
    iff their canonical forms coincide.
    """
    if not is_transitive(r, u):
        raise DisconnectedError("canonical form needs a transitive pair")
    rc, uc = canonical_pair_tuples(r.zero_based(), u.zero_based())
    return (
        Permutation(tuple(x + 1 for x in rc)),
        Permutation(tuple(x + 1 for x in uc)),
    )


def canonical_pair_tuples(
    rz: Sequence[int], uz: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical form on 0-based image tuples; assumes transitivity."""
    d = len(rz)
    best = None
    for base in range(d):
        label = [-1] * d
        label[base] = 0
        order = [base]
        queue = deque((base,))
        next_label = 1
        while queue:
            x = queue.popleft()
            for y in (rz[x], uz[x]):
                if label[y] < 0:
                    label[y] = next_label
                    next_label += 1
                    order.append(y)
                    queue.append(y)
        rr = [0] * d
        uu = [0] * d
        for x in order:
            lx = label[x]
            rr[lx] = label[rz[x]]
            uu[lx] = label[uz[x]]
        cand = (tuple(rr), tuple(uu))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def random_permutation(degree: int, rng) -> Permutation:
    """Uniform random permutation drawn from ``rng`` (a random.Random)."""
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Permutation(images)


def conjugate(p: Permutation, s: Permutation) -> Permutation:
    """s p s^-1."""
    return compose(compose(s, p), s.inverse())
