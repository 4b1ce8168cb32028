"""Enumeration of the top-dimensional cells for small complexity.

Two generation strategies over the permutation sequences
sigma_1, ..., sigma_h (sigma_0 is forced):

* ``brute``: every sequence with sigma_i(2h) = 0;
* ``stepped``: sigma_i = tau_i * sigma_{i-1} with tau_i a transposition
  fixing 0, which builds in the one-simple-zero-per-wall condition.

Both filter by the cycle count of sigma_h, by the genus computed from
the glued surface (both oracles), and by genericity.  Genericity of a
cell is a combinatorial property: the separatrix trace follows seams
regardless of the coordinate values, so the canonical sample
coordinates a_i = -i, b_j = j decide it for the whole cell.  Sequences
that pass the type checks but carry an unavoidable saddle connection
are reported separately rather than silently dropped.
"""

from __future__ import annotations

import itertools
import random

from .core import CellLabel, ParallelSlitDomain, Permutation, SlitError, normalize
from .surface import genus_via_cones, genus_via_euler, glue, is_generic

BRUTE_MAX_H = 2
STEPPED_MAX_H = 4


class TooLarge(SlitError):
    """The requested search space exceeds the configured bound."""


FLAGGED_SAMPLE_LIMIT = 50


class CensusReport:
    __slots__ = (
        "g",
        "m",
        "h",
        "method",
        "labels",
        "count",
        "count_sigma",
        "flagged",
        "flagged_count",
        "digests",
    )

    def __init__(self, g, m, method, labels, flagged, digests, flagged_count=None):
        labels = tuple(sorted(labels, key=_label_key))
        flagged = tuple(flagged)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "h", 2 * g + m)
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "count", len(labels))
        object.__setattr__(
            self, "count_sigma", len({l.sigmas for l in labels})
        )
        object.__setattr__(self, "flagged", flagged)
        object.__setattr__(
            self,
            "flagged_count",
            len(flagged) if flagged_count is None else flagged_count,
        )
        object.__setattr__(self, "digests", tuple(digests))

    def __setattr__(self, name, value):
        raise AttributeError("CensusReport is immutable")

    def __repr__(self):
        return "CensusReport(g=%d, m=%d, method=%r, count=%d)" % (
            self.g,
            self.m,
            self.method,
            self.count,
        )


def _label_key(label: CellLabel):
    return (tuple(s.word for s in label.sigmas), label.nu)


def sample_coordinates(h):
    """The canonical strict sample coordinates, normalized."""
    return normalize([-i for i in range(1, h + 1)], list(range(1, 2 * h + 1)))


def _cycle_count(word):
    seen = [False] * len(word)
    count = 0
    for i in range(len(word)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = word[j]
    return count


def _sigma0_word(h):
    n = 2 * h + 1
    return tuple(range(1, n)) + (0,)


def _brute_sequences(h):
    n = 2 * h + 1
    for words in itertools.product(
        itertools.permutations(range(1, n)), repeat=h
    ):
        yield tuple(w + (0,) for w in words)


def _stepped_sequences(h):
    """All stepped sequences, with the wall-pair disjointness verdict.

    Yields ``(words, disjoint)``.  The quotient of consecutive
    permutations at the wall between them moves exactly the two strips
    at the positions of the swapped values; a leftward separatrix keeps
    its strip index, so it avoids every other zero exactly when the h
    moved pairs are pairwise disjoint.  That makes combinatorial
    genericity a matching condition, checked here without any tracing.
    """
    n = 2 * h + 1
    transpositions = [(x, y) for x in range(1, n) for y in range(x + 1, n)]
    seq = [_sigma0_word(h)]
    used = []

    def rec(disjoint):
        if len(seq) == h + 1:
            yield tuple(seq[1:]), disjoint
            return
        prev = seq[-1]
        for x, y in transpositions:
            word = list(prev)
            px, py = word.index(x), word.index(y)
            word[px], word[py] = y, x
            still = disjoint and px not in used and py not in used
            seq.append(tuple(word))
            used.extend((px, py))
            yield from rec(still)
            del used[-2:]
            seq.pop()

    yield from rec(True)


def canonical_nu(sigma_h: Permutation):
    """Label the cycle through 0 with 0 and the rest by increasing minimum."""
    rest = sorted(c for c in sigma_h.cycles() if 0 not in c)
    return {0: sigma_h.cycle_containing(0), **{p: c for p, c in enumerate(rest, 1)}}


def nu_labelings(sigma_h: Permutation, m):
    """All bijective labelings of the non-dipole cycles by 1..m."""
    zero_cycle = sigma_h.cycle_containing(0)
    rest = sorted(c for c in sigma_h.cycles() if 0 not in c)
    out = []
    for perm in itertools.permutations(range(1, m + 1)):
        nu = {0: zero_cycle}
        for p, c in zip(perm, rest):
            nu[p] = c
        out.append(nu)
    return out


def enumerate_cells(g, m, method="brute") -> CensusReport:
    """Count and list the valid top cells for the given (g, m)."""
    h = 2 * g + m
    if h < 1:
        raise TooLarge("need 2g + m >= 1")
    if method == "brute":
        if h > BRUTE_MAX_H:
            raise TooLarge("brute enumeration is limited to h <= %d" % BRUTE_MAX_H)
        candidates = ((w, None) for w in _brute_sequences(h))
    elif method == "stepped":
        if h > STEPPED_MAX_H:
            raise TooLarge(
                "stepped enumeration is limited to h <= %d" % STEPPED_MAX_H
            )
        candidates = _stepped_sequences(h)
    else:
        raise ValueError("unknown method %r" % (method,))

    coords = sample_coordinates(h)
    sigma0 = Permutation(_sigma0_word(h))
    labels = []
    flagged = []
    flagged_count = 0
    digests = []
    for words, disjoint in candidates:
        if _cycle_count(words[-1]) != m + 1:
            continue
        if disjoint is False:
            # type conditions hold but a separatrix must hit a second zero
            flagged_count += 1
            if len(flagged) < FLAGGED_SAMPLE_LIMIT:
                flagged.append((words, "SaddleConnection"))
            continue
        sigmas = (sigma0,) + tuple(Permutation(w) for w in words)
        try:
            label = CellLabel(g, m, sigmas, canonical_nu(sigmas[-1]))
        except SlitError:
            continue
        grid = glue(ParallelSlitDomain(label, coords))
        try:
            if genus_via_cones(grid) != g or genus_via_euler(grid) != g:
                continue
        except SlitError:
            continue
        report = is_generic(grid)
        if not report:
            if report.diagnosis == "SaddleConnection":
                flagged_count += 1
                if len(flagged) < FLAGGED_SAMPLE_LIMIT:
                    flagged.append((words, report.diagnosis))
            continue
        for nu in nu_labelings(sigmas[-1], m):
            labels.append(CellLabel(g, m, sigmas, nu))
        zeros = [
            str(grid.wall_positions[w]) for w in range(grid.num_columns - 1)
        ]
        digests.append(
            {
                "sigmas": [list(w) for w in words],
                "genus": g,
                "punctures": m + 1,
                "zero_positions": zeros,
            }
        )
    return CensusReport(
        g, m, method, labels, flagged, digests, flagged_count=flagged_count
    )


def random_cell_label(g, m, rng: random.Random, max_tries=100000) -> CellLabel:
    """A uniform-ish random generic cell label by rejection sampling."""
    h = 2 * g + m
    n = 2 * h + 1
    coords = sample_coordinates(h)
    sigma0 = Permutation(_sigma0_word(h))
    for _ in range(max_tries):
        words = []
        prev = _sigma0_word(h)
        for _ in range(h):
            x = rng.randint(1, n - 1)
            y = rng.randint(1, n - 1)
            while y == x:
                y = rng.randint(1, n - 1)
            word = list(prev)
            px, py = word.index(x), word.index(y)
            word[px], word[py] = y, x
            prev = tuple(word)
            words.append(prev)
        if _cycle_count(words[-1]) != m + 1:
            continue
        sigmas = (sigma0,) + tuple(Permutation(w) for w in words)
        try:
            label = CellLabel(g, m, sigmas, canonical_nu(sigmas[-1]))
        except SlitError:
            continue
        grid = glue(ParallelSlitDomain(label, coords))
        if not is_generic(grid):
            continue
        nus = nu_labelings(sigmas[-1], m)
        nu = nus[rng.randrange(len(nus))]
        return CellLabel(g, m, sigmas, nu)
    raise SlitError("no generic label found for (g, m) = (%d, %d)" % (g, m))


def random_coordinates(h, rng: random.Random):
    """Random strict normalized coordinates with small rational steps."""
    a = [0]
    for _ in range(h - 1):
        a.append(a[-1] - rng.randint(1, 6) * _unit(rng))
    b = [0]
    for _ in range(2 * h - 1):
        b.append(b[-1] + rng.randint(1, 6) * _unit(rng))
    return normalize(a, b)


def _unit(rng):
    from fractions import Fraction

    return Fraction(1, rng.randint(1, 4))


def random_domain(g, m, rng: random.Random) -> ParallelSlitDomain:
    """A random point of a random top cell of the given type."""
    label = random_cell_label(g, m, rng)
    return ParallelSlitDomain(label, random_coordinates(label.h, rng))
