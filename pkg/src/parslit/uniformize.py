"""The normal-form map from generic flat grids back to slit coordinates.

Pipeline: merge fake walls, trace the critical graph (one leftward
horizontal separatrix per seam germ at each simple zero), cut the
surface along it, develop the contractible complement into the plane,
and read off the canonical slit data: bank levels give the b-sequence,
slit tip abscissae give the a-sequence, and the re-gluing of the slit
banks gives back the column permutations.

The module also provides the presentation scrambler: seeded
equivalence-preserving moves (fake walls, strip splits, relabelings,
translations) that change the grid presentation without changing the
underlying translation surface.  Invariance of the normal form under
these moves is what makes the map a genuine normal-form algorithm.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from fractions import Fraction

from .core import (
    CellLabel,
    ParallelSlitDomain,
    Permutation,
    SlitError,
    normalize,
)
from .surface import GluedGrid, InternalAssertion, cone_points
from .xrat import XRat, POS_INF


class UniformizeError(SlitError):
    pass


class SaddleConnection(UniformizeError):
    """A separatrix ray runs into a second zero: the input is not generic."""


class NotSimple(UniformizeError):
    """A zero of order >= 2 is present."""


class HolonomyMismatch(UniformizeError):
    """The complement of the critical graph is not simply connected."""


class OverlapDetected(UniformizeError):
    """Two developed rectangle interiors overlap."""


class NonGeneric(UniformizeError):
    """The grid is not in the preimage of a top-dimensional cell."""

    def __init__(self, diagnosis, detail=""):
        super().__init__("%s: %s" % (diagnosis, detail) if detail else diagnosis)
        self.diagnosis = diagnosis
        self.detail = detail


def merge_fake_walls(grid: GluedGrid) -> GluedGrid:
    """Remove walls across which the column permutation does not change.

    Adjacent columns with equal permutations are merged, adding widths.
    The result is independent of merge order: merging only ever fuses
    maximal runs of equal permutations.
    """
    widths = []
    perms = []
    for w, p in zip(grid.col_widths, grid.col_perms):
        if perms and perms[-1] == p:
            widths[-1] = widths[-1] + w
        else:
            widths.append(w)
            perms.append(p)
    if len(perms) == 1:
        raise NonGeneric("NoWall", "every wall of the grid is fake")
    if len(widths) == grid.num_columns:
        return grid
    return GluedGrid(
        col_widths=widths,
        col_perms=perms,
        strip_heights=grid.strip_heights,
        bottom_open=grid.bottom_open,
        top_open=grid.top_open,
        end_labels=grid.end_labels,
        origin_x=grid.origin_x,
    )


class Ray:
    """One leftward separatrix: the strip-top seam of ``strip`` in all
    columns from the zero's wall down to the left-infinite column."""

    __slots__ = ("zero_wall", "strip", "columns")

    def __init__(self, zero_wall, strip, columns):
        object.__setattr__(self, "zero_wall", zero_wall)
        object.__setattr__(self, "strip", strip)
        object.__setattr__(self, "columns", tuple(columns))

    def __setattr__(self, name, value):
        raise AttributeError("Ray is immutable")

    @property
    def segments(self):
        return tuple((c, self.strip) for c in self.columns)

    def __repr__(self):
        return "Ray(zero_wall=%d, strip=%d)" % (self.zero_wall, self.strip)


class CriticalGraph:
    """The 2h separatrix rays, two per simple zero."""

    __slots__ = ("rays", "zeros")

    def __init__(self, rays, zeros):
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "zeros", tuple(zeros))

    def __setattr__(self, name, value):
        raise AttributeError("CriticalGraph is immutable")

    @property
    def cut_seams(self):
        cuts = set()
        for ray in self.rays:
            cuts.update(ray.segments)
        return cuts


def trace_critical_graph(grid: GluedGrid) -> CriticalGraph:
    """Trace both leftward separatrices of every simple zero.

    A separatrix follows a strip-top seam; at each wall vertex it either
    continues flat (the two adjacent columns glue the strip the same
    way) or hits a cone point, which means a saddle connection.  Since
    wall gluings are the identity strip by strip, a ray keeps its strip
    index, so it is flat at the wall between columns c-1 and c exactly
    when pi_{c-1}(strip) = pi_c(strip).
    """
    cones = cone_points(grid)
    zeros = cones.zeros
    for z in zeros:
        if z.k > 2:
            raise NotSimple("zero of order %d at wall %d" % (z.zero_order, z.wall))

    zero_walls = {z.wall: z for z in zeros}
    rays = []
    for z in zeros:
        for s in z.strips:
            columns = [z.wall]
            c = z.wall
            while c > 0:
                if grid.col_perms[c - 1](s) != grid.col_perms[c](s):
                    hit = zero_walls.get(c - 1)
                    raise SaddleConnection(
                        "separatrix of the zero at wall %d hits the %s at wall %d"
                        % (
                            z.wall,
                            "zero" if hit is not None else "cone point",
                            c - 1,
                        )
                    )
                c -= 1
                columns.append(c)
            rays.append(Ray(z.wall, s, columns))
    if len(rays) != 2 * len(zeros):
        raise InternalAssertion("expected two rays per zero")
    return CriticalGraph(rays, zeros)


class Bank:
    """Developed data of one cut ray: the levels of its two sides and
    the abscissa of its tip (the developed image of its zero)."""

    __slots__ = ("ray", "lower_level", "upper_level", "tip_x")

    def __init__(self, ray, lower_level, upper_level, tip_x):
        object.__setattr__(self, "ray", ray)
        object.__setattr__(self, "lower_level", Fraction(lower_level))
        object.__setattr__(self, "upper_level", Fraction(upper_level))
        object.__setattr__(self, "tip_x", Fraction(tip_x))

    def __setattr__(self, name, value):
        raise AttributeError("Bank is immutable")

    def __repr__(self):
        return "Bank(tip_x=%s, lower=%s, upper=%s)" % (
            self.tip_x,
            self.lower_level,
            self.upper_level,
        )


class Development:
    """Planar development of the complex cut along the critical graph.

    ``anchor[(c, s)]`` is the developed y of the bottom edge of the
    rectangle (for the bottom-open strip: of its top edge); the x-extent
    of column c is given by the grid wall positions.
    """

    __slots__ = ("grid", "graph", "anchor", "banks", "zero_images")

    def __init__(self, grid, graph, anchor, banks, zero_images):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "anchor", dict(anchor))
        object.__setattr__(self, "banks", tuple(banks))
        object.__setattr__(self, "zero_images", dict(zero_images))

    def __setattr__(self, name, value):
        raise AttributeError("Development is immutable")

    @property
    def bank_levels(self):
        return sorted(b.lower_level for b in self.banks)

    @property
    def tip_values(self):
        return sorted({b.tip_x for b in self.banks}, reverse=True)


def develop(grid: GluedGrid, graph: CriticalGraph) -> Development:
    """Assign planar offsets to the rectangles of the cut complex.

    Spanning traversal over the adjacency graph of rectangles, crossing
    walls (zero vertical jump) and non-critical seams (jump by the
    gluing translation); every non-tree adjacency must close up exactly
    and the developed interiors must be pairwise disjoint.
    """
    C, S = grid.num_columns, grid.num_strips
    cuts = graph.cut_seams

    def top_of(c, s, anchor):
        if s == grid.bottom_open:
            return anchor[(c, s)]
        return anchor[(c, s)] + grid.strip_heights[s].finite

    neighbors = {}

    def add_edge(r1, r2, kind):
        neighbors.setdefault(r1, []).append((r2, kind))
        neighbors.setdefault(r2, []).append((r1, ("rev",) + kind))

    for c in range(C):
        for s in range(S):
            if c + 1 < C:
                add_edge((c, s), (c + 1, s), ("wall",))
            if s != grid.top_open and (c, s) not in cuts:
                add_edge((c, s), (c, grid.col_perms[c](s)), ("seam", s))

    start = (C - 1, grid.bottom_open)
    anchor = {start: Fraction(0)}
    stack = [start]
    tree_edges = set()
    while stack:
        r = stack.pop()
        for (r2, kind) in neighbors.get(r, ()):  # noqa: B007
            if r2 in anchor:
                continue
            c, s = r
            c2, s2 = r2
            if kind[0] == "wall" or kind == ("rev", "wall"):
                anchor[r2] = anchor[r]
            elif kind[0] == "seam":
                # crossing up from r = (c, s) into r2 = (c, pi_c(s))
                anchor[r2] = top_of(c, s, anchor)
            else:
                # reversed seam: r is above, r2 below, shared seam is
                # the top of strip kind[2]
                s_below = kind[2]
                anchor_r2 = anchor[r]
                if s_below == grid.bottom_open:
                    anchor[r2] = anchor_r2
                else:
                    anchor[r2] = anchor_r2 - grid.strip_heights[s_below].finite
            tree_edges.add(frozenset((r, r2)))
            stack.append(r2)

    if len(anchor) != C * S:
        raise HolonomyMismatch(
            "the complement of the critical graph is not connected"
        )

    # non-tree closure
    for r, nbrs in neighbors.items():
        for (r2, kind) in nbrs:
            if kind[0] == "rev":
                continue
            c, s = r
            if kind[0] == "wall":
                if anchor[r2] != anchor[r]:
                    raise HolonomyMismatch(
                        "wall between %r and %r does not close up" % (r, r2)
                    )
            else:
                if anchor[r2] != top_of(c, s, anchor):
                    raise HolonomyMismatch(
                        "seam between %r and %r does not close up" % (r, r2)
                    )

    # injectivity: within each column the developed strip intervals must
    # be pairwise disjoint (the x-slabs of distinct columns already are)
    for c in range(C):
        intervals = []
        for s in range(S):
            lo_open = s == grid.bottom_open
            hi_open = s == grid.top_open
            lo = None if lo_open else anchor[(c, s)]
            hi = None if hi_open else top_of(c, s, anchor)
            intervals.append((lo, hi, s))
        finite_sorted = sorted(
            (iv for iv in intervals if iv[0] is not None), key=lambda iv: iv[0]
        )
        bottoms = [iv for iv in intervals if iv[0] is None]
        if len(bottoms) != 1:
            raise InternalAssertion("exactly one bottom-open strip expected")
        prev_hi = bottoms[0][1]
        for lo, hi, s in finite_sorted:
            if lo < prev_hi:
                raise OverlapDetected(
                    "strips overlap in column %d near level %s" % (c, lo)
                )
            if hi is not None:
                prev_hi = hi

    walls = grid.wall_positions
    banks = []
    zero_images = {}
    for ray in graph.rays:
        s = ray.strip
        lower = top_of(0, s, anchor)
        t = grid.col_perms[0](s)
        upper = anchor[(0, t)]
        tip_x = walls[ray.zero_wall]
        banks.append(Bank(ray, lower, upper, tip_x))
        images = zero_images.setdefault(ray.zero_wall, set())
        images.add((tip_x, lower))
        images.add((tip_x, upper))

    for wall, images in zero_images.items():
        if len({x for x, _ in images}) != 1:
            raise InternalAssertion("developed images of one zero differ in x")

    return Development(grid, graph, anchor, banks, zero_images)


class PeriodMatrix:
    """The relative periods z_{k,l} between zeros, as complex rationals.

    Zeros are numbered 1..h by descending critical value (so zero k
    sits at abscissa a_k).  The access point of each zero is the tip of
    its upper slit; z_{k,k} is (upper tip) - (lower tip).
    """

    __slots__ = ("h", "entries")

    def __init__(self, h, entries):
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "entries", dict(entries))

    def __setattr__(self, name, value):
        raise AttributeError("PeriodMatrix is immutable")

    def __getitem__(self, kl):
        return self.entries[kl]

    def items(self):
        return sorted(self.entries.items())


def _zero_slit_pairs(dev: Development):
    """Per zero wall: its two slit levels (lower, upper), verified.

    The two rays of a zero must develop crosswise: the lower side of
    one ray is the upper side of the other, giving exactly two distinct
    levels per zero.
    """
    by_wall = {}
    for bank in dev.banks:
        by_wall.setdefault(bank.ray.zero_wall, []).append(bank)
    pairs = {}
    for wall, banks in sorted(by_wall.items()):
        if len(banks) != 2:
            raise NonGeneric("BankCount", "zero at wall %d has %d rays" % (wall, len(banks)))
        b1, b2 = banks
        if (
            b1.lower_level != b2.upper_level
            or b2.lower_level != b1.upper_level
            or b1.lower_level == b1.upper_level
        ):
            raise NonGeneric(
                "CoincidentLevels",
                "slit banks of the zero at wall %d do not pair up" % wall,
            )
        lo, hi = sorted((b1.lower_level, b2.lower_level))
        pairs[wall] = (lo, hi)
    return pairs


def periods(dev: Development) -> PeriodMatrix:
    """All z_{k,l} under the upper-tip access convention."""
    pairs = _zero_slit_pairs(dev)
    # zeros numbered by descending abscissa: k = 1 is the rightmost wall
    walls_desc = sorted(pairs, key=lambda w: dev.grid.wall_positions[w], reverse=True)
    entries = {}
    for k, wk in enumerate(walls_desc, start=1):
        ak = dev.grid.wall_positions[wk]
        lo_k, hi_k = pairs[wk]
        entries[(k, k)] = (Fraction(0), hi_k - lo_k)
        for l, wl in enumerate(walls_desc, start=1):
            if l == k:
                continue
            al = dev.grid.wall_positions[wl]
            hi_l = pairs[wl][1]
            entries[(k, l)] = (al - ak, hi_l - hi_k)
    return PeriodMatrix(len(walls_desc), entries)


def uniformize(grid: GluedGrid) -> ParallelSlitDomain:
    """The normal form of a generic grid: its parallel slit domain.

    Raises NonGeneric whenever the grid is not in the preimage of a
    top-dimensional cell (multiple or non-simple zeros on a wall,
    saddle connections, coincident slit levels).
    """
    merged = merge_fake_walls(grid)
    cones = cone_points(merged)
    zeros = cones.zeros
    for z in zeros:
        if z.k != 2:
            raise NonGeneric(
                "NonSimpleOrColocated",
                "zero of order %d at wall %d" % (z.zero_order, z.wall),
            )
    zero_walls = [z.wall for z in zeros]
    if len(set(zero_walls)) != len(zero_walls):
        raise NonGeneric("NonSimpleOrColocated", "two zeros share a wall")
    if set(zero_walls) != set(range(merged.num_columns - 1)):
        # after merging, every wall is non-fake, hence must carry a zero
        raise NonGeneric("NonSimpleOrColocated", "a non-fake wall carries no zero")

    try:
        graph = trace_critical_graph(merged)
    except SaddleConnection as exc:
        raise NonGeneric("SaddleConnection", str(exc)) from exc
    dev = develop(merged, graph)

    pairs = _zero_slit_pairs(dev)
    h = len(pairs)
    levels = sorted(level for pair in pairs.values() for level in pair)
    if len(set(levels)) != 2 * h:
        raise NonGeneric("CoincidentLevels", "two slits develop to one level")

    walls = merged.wall_positions
    a_desc = sorted((walls[w] for w in pairs), reverse=True)
    if len(set(a_desc)) != h:
        raise InternalAssertion("wall positions are not distinct")

    # partner map: crossing the covered part of a level continues on the
    # other slit of the same zero
    partner_index = {}
    tip_of_level = {}
    for wall, (lo, hi) in pairs.items():
        i_lo = levels.index(lo)
        i_hi = levels.index(hi)
        partner_index[i_lo] = i_hi
        partner_index[i_hi] = i_lo
        tip_of_level[i_lo] = walls[wall]
        tip_of_level[i_hi] = walls[wall]

    sigmas = []
    for i in range(h + 1):
        word = []
        for j in range(2 * h):
            # crossing the level levels[j] (= b_{j+1}) upward in the
            # column between a_{i+1} and a_i
            covered = i >= 1 and tip_of_level[j] >= a_desc[i - 1]
            if covered:
                word.append(partner_index[j] + 1)
            else:
                word.append(j + 1)
        word.append(0)
        sigmas.append(Permutation(word))

    sigma_h = sigmas[h]
    m = merged.m
    if len(sigma_h.cycles()) != m + 1:
        raise InternalAssertion(
            "reconstructed sigma_h has %d cycles, expected %d"
            % (len(sigma_h.cycles()), m + 1)
        )
    if (h - m) % 2 != 0:
        raise InternalAssertion("h and m have different parity")
    g = (h - m) // 2

    # puncture labels: map each strip of a labeled left cylinder to the
    # slit-normal-form strip containing its developed image
    nu = {0: sigma_h.cycle_containing(0)}
    for p in range(1, m + 1):
        mapped = set()
        for s in merged.end_labels[p]:
            dy = dev.anchor[(0, s)]
            mapped.add(bisect_right(levels, dy))
        cyc = sigma_h.cycle_containing(min(mapped))
        if set(cyc) != mapped:
            raise InternalAssertion(
                "left cylinder %d does not map onto a cycle of sigma_h" % p
            )
        nu[p] = cyc

    coords = normalize(a_desc, levels)
    label = CellLabel(g, m, sigmas, nu)
    return ParallelSlitDomain(label, coords)


def scramble(grid: GluedGrid, seed) -> GluedGrid:
    """A seed-determined equivalent presentation of the same surface.

    Applies a random sequence of fake-wall insertions, strip splits,
    strip relabelings and horizontal translations.
    """
    rng = random.Random(seed)
    moves = rng.randint(3, 8)
    for _ in range(moves):
        move = rng.choice(("fake_wall", "split_strip", "relabel", "translate"))
        if move == "fake_wall":
            grid = insert_fake_wall(
                grid,
                rng.randrange(grid.num_columns),
                Fraction(rng.randint(1, 7), rng.randint(8, 16)),
            )
        elif move == "split_strip":
            grid = split_strip(
                grid,
                rng.randrange(grid.num_strips),
                Fraction(rng.randint(1, 7), rng.randint(8, 16)),
            )
        elif move == "relabel":
            word = list(range(grid.num_strips))
            rng.shuffle(word)
            grid = relabel_strips(grid, Permutation(word))
        else:
            grid = translate(
                grid, Fraction(rng.randint(-12, 12), rng.randint(1, 6))
            )
    return grid


def insert_fake_wall(grid: GluedGrid, c, t) -> GluedGrid:
    """Split column c into two columns with the same permutation.

    For a finite column the width is split in ratio t : 1-t; for the
    outer infinite columns a finite piece of width t is cut off on the
    inner side.
    """
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("need 0 < t < 1")
    w = grid.col_widths[c]
    if w.is_finite:
        left_w, right_w = XRat(w.finite * t), XRat(w.finite * (1 - t))
    elif c == 0:
        left_w, right_w = POS_INF, XRat(t)
    else:
        left_w, right_w = XRat(t), POS_INF
    widths = list(grid.col_widths)
    perms = list(grid.col_perms)
    widths[c : c + 1] = [left_w, right_w]
    perms[c : c + 1] = [perms[c], perms[c]]
    origin_x = grid.origin_x
    if c == len(grid.col_widths) - 1:
        # the new rightmost wall sits t to the right of the old one
        origin_x = origin_x + t
    return GluedGrid(
        widths,
        perms,
        grid.strip_heights,
        grid.bottom_open,
        grid.top_open,
        grid.end_labels,
        origin_x,
    )


def split_strip(grid: GluedGrid, s, t) -> GluedGrid:
    """Split strip s by a new horizontal seam glued trivially everywhere.

    The lower part keeps index s, the upper part becomes a new strip
    appended at the end.  For a finite strip the height splits in ratio
    t : 1-t; for an open strip a finite piece of height t is cut off on
    its closed side.
    """
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("need 0 < t < 1")
    u = grid.num_strips
    heights = list(grid.strip_heights)
    hgt = heights[s]
    bottom_open, top_open = grid.bottom_open, grid.top_open
    if hgt.is_finite:
        heights[s] = XRat(hgt.finite * t)
        heights.append(XRat(hgt.finite * (1 - t)))
    elif s == bottom_open:
        heights.append(XRat(t))
    else:
        heights[s] = XRat(t)
        heights.append(POS_INF)
        top_open = u
    perms = []
    for p in grid.col_perms:
        word = list(p.word) + [p(s)]
        word[s] = u
        perms.append(Permutation(word))
    end_labels = [
        cyc | {u} if s in cyc else cyc for cyc in grid.end_labels
    ]
    return GluedGrid(
        grid.col_widths,
        perms,
        heights,
        bottom_open,
        top_open,
        end_labels,
        grid.origin_x,
    )


def relabel_strips(grid: GluedGrid, rho: Permutation) -> GluedGrid:
    """Rename strip indices by rho, conjugating all column permutations."""
    if rho.degree != grid.num_strips:
        raise ValueError("relabeling degree mismatch")
    inv = rho.inverse()
    heights = [grid.strip_heights[inv(s)] for s in range(grid.num_strips)]
    perms = [rho * p * inv for p in grid.col_perms]
    end_labels = [frozenset(rho(s) for s in cyc) for cyc in grid.end_labels]
    return GluedGrid(
        grid.col_widths,
        perms,
        heights,
        rho(grid.bottom_open),
        rho(grid.top_open),
        end_labels,
        grid.origin_x,
    )


def translate(grid: GluedGrid, dx) -> GluedGrid:
    """Shift the whole picture horizontally.

    Vertical translations are invisible in this presentation: strips
    carry heights only, never absolute levels.
    """
    return GluedGrid(
        grid.col_widths,
        grid.col_perms,
        grid.strip_heights,
        grid.bottom_open,
        grid.top_open,
        grid.end_labels,
        grid.origin_x + Fraction(dx),
    )
