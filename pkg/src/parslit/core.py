"""Combinatorial and coordinate data of a parallel slit domain.

A point of a top-dimensional cell is a pair (label, coordinates):

* the label consists of permutations sigma_0, ..., sigma_h of
  {0, ..., 2h} with sigma_i(2h) = 0 and sigma_0 the forced long cycle
  j -> j+1, together with a labeling nu of the cycles of sigma_h by
  puncture names 0..m (the cycle through 0 is always puncture 0);
* the coordinates are two strictly monotone rational sequences
  a_1 > ... > a_h (slit tip abscissae) and b_1 < ... < b_2h (slit
  levels), normalized so that a_1 = b_1 = 0 to kill the translation
  ambiguity.

All values are immutable after validation and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction

from .xrat import parse_rational


class SlitError(Exception):
    """Base class for all domain errors of this package."""


class CellLabelError(SlitError):
    pass


class BadSigmaZero(CellLabelError):
    """sigma_0 is not the long cycle j -> j+1 (mod 2h+1)."""


class Fixed2hViolated(CellLabelError):
    """Some sigma_i does not map 2h to 0."""


class NuMismatch(CellLabelError):
    """nu is not a bijection onto cyc(sigma_h) with nu(0) containing 0."""


class CycleCountMismatch(CellLabelError):
    """sigma_h does not have exactly m+1 cycles."""


class NotStrict(SlitError):
    """Ties in a coordinate sequence that must be strictly monotone."""


class Permutation:
    """A permutation of {0, ..., n-1} in one-line notation."""

    __slots__ = ("word",)

    def __init__(self, word):
        word = tuple(int(x) for x in word)
        n = len(word)
        if sorted(word) != list(range(n)):
            raise ValueError("not a permutation of 0..%d: %r" % (n - 1, word))
        object.__setattr__(self, "word", word)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def long_cycle(cls, n):
        """The cycle 0 -> 1 -> ... -> n-1 -> 0."""
        return cls(tuple(range(1, n)) + (0,))

    @classmethod
    def transposition(cls, n, x, y):
        word = list(range(n))
        word[x], word[y] = y, x
        return cls(word)

    def __call__(self, i):
        return self.word[i]

    def __len__(self):
        return len(self.word)

    @property
    def degree(self):
        return len(self.word)

    def inverse(self):
        inv = [0] * len(self.word)
        for i, j in enumerate(self.word):
            inv[j] = i
        return Permutation(inv)

    def __mul__(self, other):
        """Composition self after other."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other.word) != len(self.word):
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.word[j] for j in other.word))

    def cycles(self):
        """The set of cycles, each rotated to start at its minimum."""
        seen = [False] * len(self.word)
        out = set()
        for start in range(len(self.word)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.word[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.word[j]
            out.add(tuple(cyc))
        return frozenset(out)

    def cycle_containing(self, x):
        cyc = [x]
        j = self.word[x]
        while j != x:
            cyc.append(j)
            j = self.word[j]
        return canonical_cycle(cyc)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return "Permutation(%r)" % (list(self.word),)


def canonical_cycle(cyc):
    """Rotate a cyclic sequence so that its minimum comes first."""
    cyc = tuple(cyc)
    k = cyc.index(min(cyc))
    return cyc[k:] + cyc[:k]


def cycles(p: Permutation):
    """Cycle decomposition of p as a set of canonically rotated tuples."""
    return p.cycles()


class CellLabel:
    """Validated combinatorial index of a top-dimensional cell."""

    __slots__ = ("g", "m", "sigmas", "nu")

    def __init__(self, g, m, sigmas, nu):
        g = int(g)
        m = int(m)
        if g < 0 or m < 0 or 2 * g + m < 1:
            raise CellLabelError("need g >= 0, m >= 0, 2g + m >= 1")
        h = 2 * g + m
        sigmas = tuple(
            s if isinstance(s, Permutation) else Permutation(s) for s in sigmas
        )
        if len(sigmas) != h + 1:
            raise CellLabelError(
                "expected %d permutations, got %d" % (h + 1, len(sigmas))
            )
        for s in sigmas:
            if s.degree != 2 * h + 1:
                raise CellLabelError("permutations must act on {0, ..., %d}" % (2 * h,))
            if s(2 * h) != 0:
                raise Fixed2hViolated("sigma(%d) = %d != 0" % (2 * h, s(2 * h)))
        if sigmas[0] != Permutation.long_cycle(2 * h + 1):
            raise BadSigmaZero("sigma_0 must be the long cycle j -> j+1")

        sigma_h_cycles = sigmas[h].cycles()
        if len(sigma_h_cycles) != m + 1:
            raise CycleCountMismatch(
                "sigma_h has %d cycles, expected m+1 = %d"
                % (len(sigma_h_cycles), m + 1)
            )
        nu = _canonicalize_nu(nu, m)
        if len(set(nu)) != m + 1 or set(nu) != sigma_h_cycles:
            raise NuMismatch("nu is not a bijection onto the cycles of sigma_h")
        if 0 not in nu[0]:
            raise NuMismatch("nu(0) must be the cycle containing 0")
        for cyc in nu:
            if sigmas[h].cycle_containing(cyc[0]) != cyc:
                raise NuMismatch("%r is not a cycle of sigma_h" % (cyc,))

        object.__setattr__(self, "g", g)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "sigmas", sigmas)
        object.__setattr__(self, "nu", nu)

    def __setattr__(self, name, value):
        raise AttributeError("CellLabel is immutable")

    @property
    def h(self):
        return 2 * self.g + self.m

    def __eq__(self, other):
        return (
            isinstance(other, CellLabel)
            and self.g == other.g
            and self.m == other.m
            and self.sigmas == other.sigmas
            and self.nu == other.nu
        )

    def __hash__(self):
        return hash((self.g, self.m, self.sigmas, self.nu))

    def __repr__(self):
        return "CellLabel(g=%d, m=%d, sigmas=%r, nu=%r)" % (
            self.g,
            self.m,
            [list(s.word) for s in self.sigmas],
            [list(c) for c in self.nu],
        )


def _canonicalize_nu(nu, m):
    if isinstance(nu, dict):
        items = sorted(nu.items())
        if [k for k, _ in items] != list(range(m + 1)):
            raise NuMismatch("nu must be defined exactly on {0, ..., %d}" % m)
        nu = [c for _, c in items]
    nu = tuple(canonical_cycle(c) for c in nu)
    if len(nu) != m + 1:
        raise NuMismatch("nu must have %d entries" % (m + 1))
    return nu


def validate_cell_label(g, m, sigmas, nu) -> CellLabel:
    """Check raw label data and return the validated CellLabel."""
    return CellLabel(g, m, sigmas, nu)


class SlitCoordinates:
    """Normalized exact coordinates a_1 > ... > a_h, b_1 < ... < b_2h."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a = tuple(Fraction(x) for x in a)
        b = tuple(Fraction(x) for x in b)
        if not a or not b:
            raise NotStrict("empty coordinate sequence")
        for i in range(len(a) - 1):
            if not a[i] > a[i + 1]:
                raise NotStrict("a must be strictly decreasing: %r" % (a,))
        for j in range(len(b) - 1):
            if not b[j] < b[j + 1]:
                raise NotStrict("b must be strictly increasing: %r" % (b,))
        if a[0] != 0 or b[0] != 0:
            raise ValueError("coordinates not normalized; use normalize()")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("SlitCoordinates is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SlitCoordinates)
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return "SlitCoordinates(a=%r, b=%r)" % (
            [str(x) for x in self.a],
            [str(x) for x in self.b],
        )


def normalize(a, b) -> SlitCoordinates:
    """Translate raw a/b sequences to the canonical a_1 = b_1 = 0 form.

    Accepts ints, Fractions or 'p/q' strings.  Idempotent.
    """
    a = [parse_rational(x) for x in a]
    b = [parse_rational(x) for x in b]
    if len(set(a)) != len(a) or len(set(b)) != len(b):
        raise NotStrict("tied coordinate values")
    if not a or not b:
        raise NotStrict("empty coordinate sequence")
    a0, b0 = a[0], b[0]
    return SlitCoordinates([x - a0 for x in a], [y - b0 for y in b])


class ParallelSlitDomain:
    """A point in a top-dimensional cell: label plus coordinates."""

    __slots__ = ("label", "coords")

    def __init__(self, label: CellLabel, coords: SlitCoordinates):
        if not isinstance(label, CellLabel):
            raise TypeError("label must be a CellLabel")
        if not isinstance(coords, SlitCoordinates):
            raise TypeError("coords must be SlitCoordinates")
        h = label.h
        if len(coords.a) != h:
            raise SlitError("expected %d a-values, got %d" % (h, len(coords.a)))
        if len(coords.b) != 2 * h:
            raise SlitError("expected %d b-values, got %d" % (2 * h, len(coords.b)))
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("ParallelSlitDomain is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ParallelSlitDomain)
            and self.label == other.label
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.label, self.coords))

    def __repr__(self):
        return "ParallelSlitDomain(%r, %r)" % (self.label, self.coords)


def cell_dimension(label_or_g, m=None) -> int:
    """Real dimension of a top cell, from a label or from (g, m).

    Equals (h-1) + (2h-1) = 3h - 2, which for h = 2g + m agrees with
    the dimension 6g - 6 + 5 + 3m - 1 of the full moduli space with a
    single dipole point.
    """
    if m is None:
        g, m = label_or_g.g, label_or_g.m
    else:
        g = label_or_g
    h = 2 * g + m
    if h < 1:
        raise ValueError("need 2g + m >= 1")
    dim = 3 * h - 2
    assert dim == 6 * g - 6 + 5 + 3 * m - 1
    return dim
