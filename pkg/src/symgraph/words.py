"""Vertices of a polygon-symmetric graph as reduced words.

A graph of type k and order r is glued from k-gons, with r polygons through
every vertex and no two sharing more than one vertex.  Its vertex set is
modelled by the free product of r copies of Z/kZ: a vertex is a reduced word
``a_{i1}^{e1} ... a_{in}^{en}`` with adjacent generator indices distinct and
exponents in [1, k-1], and the polygon distance d(x, y) is the syllable count
of the reduced quotient x^-1 y.  For k = 2 polygons are single edges and the
graph is the homogeneous tree of degree r, with every exponent equal to 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebraic import AlgebraicValue, q_half_power

__all__ = [
    "GraphParams",
    "ReducedWord",
    "SpectralDomainError",
    "distance",
    "sphere",
    "ball",
    "parse_word",
]


class SpectralDomainError(ValueError):
    """Raised by spectral quantities that degenerate when q = (r-1)(k-1) < 2."""


@dataclass(frozen=True)
class GraphParams:
    """Polygon side count k and polygons-per-vertex count r, both >= 2."""

    k: int
    r: int

    def __post_init__(self):
        if self.k < 2 or self.r < 2:
            raise ValueError(f"need k >= 2 and r >= 2, got k={self.k}, r={self.r}")

    @property
    def q(self) -> int:
        return (self.r - 1) * (self.k - 1)

    @property
    def sigma(self) -> int:
        return self.k - 2

    @property
    def degree(self) -> int:
        """Number of neighbours of a vertex, r(k-1)."""
        return self.r * (self.k - 1)

    @property
    def tau(self) -> float:
        """Period 2*pi/ln(q) of the spectral parameter; needs q >= 2."""
        self.require_spectral()
        return 2.0 * math.pi / math.log(self.q)

    @property
    def alpha(self) -> Fraction:
        """(q+1)/degree, the diagonal constant of the radial Laplacian."""
        return Fraction(self.q + 1, self.degree)

    @property
    def beta(self) -> AlgebraicValue:
        """2*sqrt(q)/degree, the off-diagonal constant of the radial Laplacian."""
        return q_half_power(self.q, 1) * Fraction(2, self.degree)

    @property
    def spectral_gap(self) -> AlgebraicValue:
        """alpha - beta = 1 - gamma(0), the distance of the L2 spectrum from 1."""
        return AlgebraicValue(self.alpha, 0, self.q) - self.beta

    def require_spectral(self) -> None:
        if self.q < 2:
            raise SpectralDomainError(
                f"(k, r) = ({self.k}, {self.r}) has q = 1; spectral calculus is degenerate"
            )

    def delta(self, n: int) -> int:
        """Cardinality of the sphere of radius n: 1 for n = 0, r(k-1)q^(n-1) after."""
        if n < 0:
            raise ValueError(f"radius must be nonnegative, got {n}")
        if n == 0:
            return 1
        return self.degree * self.q ** (n - 1)

    def identity(self) -> "ReducedWord":
        return ReducedWord(self, ())

    def generator(self, index: int, exponent: int = 1) -> "ReducedWord":
        return ReducedWord(self, ((index, exponent),))


def _reduce(syllables, k: int) -> tuple:
    out: list = []
    for g, e in syllables:
        e %= k
        if e == 0:
            continue
        if out and out[-1][0] == g:
            merged = (out[-1][1] + e) % k
            out.pop()
            if merged:
                out.append((g, merged))
        else:
            out.append((g, e))
    return tuple(out)


class ReducedWord:
    """An element of the free product of r copies of Z/kZ, kept reduced.

    Supports ``x * y`` (product with reduction), ``~x`` (inverse) and
    ``len(x)`` (syllable count, which is the polygon distance to the origin).
    """

    __slots__ = ("params", "syllables", "_hash")

    def __init__(self, params: GraphParams, syllables=()):
        syllables = tuple((int(g), int(e)) for g, e in syllables)
        for i, (g, e) in enumerate(syllables):
            if not 0 <= g < params.r:
                raise ValueError(f"generator index {g} outside [0, {params.r})")
            if not 1 <= e < params.k:
                raise ValueError(f"exponent {e} outside [1, {params.k})")
            if i and syllables[i - 1][0] == g:
                raise ValueError(f"word is not reduced at syllable {i}")
        self.params = params
        self.syllables = syllables
        self._hash = hash(syllables)

    @classmethod
    def _make(cls, params: GraphParams, syllables: tuple) -> "ReducedWord":
        word = object.__new__(cls)
        word.params = params
        word.syllables = syllables
        word._hash = hash(syllables)
        return word

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        if self.params != other.params:
            raise ValueError("cannot multiply words over different graph parameters")
        return ReducedWord._make(
            self.params, _reduce(self.syllables + other.syllables, self.params.k)
        )

    def __invert__(self) -> "ReducedWord":
        k = self.params.k
        return ReducedWord._make(
            self.params, tuple((g, k - e) for g, e in reversed(self.syllables))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return self.syllables == other.syllables and self.params == other.params

    def __hash__(self):
        return self._hash

    def __str__(self) -> str:
        if not self.syllables:
            return "e"
        return ".".join(f"a{g}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"<word {self} (k={self.params.k}, r={self.params.r})>"


def distance(x: ReducedWord, y: ReducedWord) -> int:
    """Polygon distance: the syllable count of x^-1 y.

    Computed through the longest common prefix; the first differing syllable
    pair merges into one syllable exactly when it shares a generator.
    """
    if x.params != y.params:
        raise ValueError("cannot measure distance between different graphs")
    a, b = x.syllables, y.syllables
    common = 0
    for sa, sb in zip(a, b):
        if sa != sb:
            break
        common += 1
    la = len(a) - common
    lb = len(b) - common
    if la and lb and a[common][0] == b[common][0]:
        return la + lb - 1
    return la + lb


def sphere(params: GraphParams, n: int) -> Iterator[ReducedWord]:
    """Yield every reduced word of exactly n syllables once.

    Depth-first over syllables, lexicographic by (generator, exponent); the
    order is deterministic and is part of the CLI output contract.
    """
    if n < 0:
        raise ValueError(f"radius must be nonnegative, got {n}")
    if n == 0:
        yield params.identity()
        return
    k, r = params.k, params.r
    stack: list = [((), 0)]
    while stack:
        prefix, depth = stack.pop()
        last = prefix[-1][0] if prefix else -1
        # push in reverse so that words come out in lexicographic order
        children = [
            prefix + ((g, e),)
            for g in range(r)
            if g != last
            for e in range(1, k)
        ]
        if depth + 1 == n:
            for child in children:
                yield ReducedWord._make(params, child)
        else:
            for child in reversed(children):
                stack.append((child, depth + 1))


def ball(params: GraphParams, n: int) -> Iterator[ReducedWord]:
    """Yield every word of length <= n, sphere by sphere."""
    for m in range(n + 1):
        yield from sphere(params, m)


_SYLLABLE_RE = re.compile(r"^a(\d+)\^(\d+)$")


def parse_word(params: GraphParams, text: str) -> ReducedWord:
    """Parse the CLI word literal "a0^1.a1^2"; the identity is "e"."""
    text = text.strip()
    if text in ("e", ""):
        return params.identity()
    syllables = []
    for part in text.split("."):
        m = _SYLLABLE_RE.match(part.strip())
        if not m:
            raise ValueError(f"cannot parse syllable {part!r} (expected e.g. 'a0^1')")
        syllables.append((int(m.group(1)), int(m.group(2))))
    return ReducedWord(params, syllables)
