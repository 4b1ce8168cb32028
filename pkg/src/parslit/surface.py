"""Flat surfaces glued from rectangular grids, and their invariants.

The gluing construction takes a parallel slit domain and produces an
explicit translation surface: a grid of rectangles (columns x strips)
where consecutive columns are identified wall-by-wall by the identity
and each column carries a strip permutation identifying the top edge of
strip s with the bottom edge of pi_c(s) by a vertical translation.

Internally columns are ordered left to right; the classical convention
indexes them right to left (the rightmost column carries the forced
long cycle).  The conversion happens only at the serialization
boundary.

Strip indices are pure labels.  Only the grids freshly produced by
``glue`` have strips stacked in index order; the presentation moves in
:mod:`parslit.uniformize` may relabel them arbitrarily.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Permutation, SlitError, ParallelSlitDomain
from .xrat import XRat, POS_INF


class SurfaceError(SlitError):
    pass


class EndStructure(SurfaceError):
    """Puncture labels do not match the end structure of the grid."""


class NonIntegralGenus(SurfaceError):
    pass


class BoundaryCircuitMismatch(SurfaceError):
    pass


class NotClosed(SurfaceError):
    """A combinatorial loop does not close up (or crosses a missing edge)."""


class InternalAssertion(SurfaceError):
    """A structural property that should hold for every grid failed."""


class GluedGrid:
    """An explicit flat surface built from columns and strips.

    Fields
    ------
    col_widths : tuple of XRat, left to right; first and last infinite
    col_perms : tuple of Permutation on strip indices, one per column
    strip_heights : tuple of XRat; the two open strips are infinite
    bottom_open, top_open : indices of the two infinite strips
    end_labels : tuple of frozensets of strip indices; entry p is the
        cycle of the leftmost column permutation that bounds puncture p
        (entry 0 is the cycle through the infinite strips)
    origin_x : x-coordinate of the rightmost wall
    """

    __slots__ = (
        "col_widths",
        "col_perms",
        "strip_heights",
        "bottom_open",
        "top_open",
        "end_labels",
        "origin_x",
        "_walls",
    )

    def __init__(
        self,
        col_widths,
        col_perms,
        strip_heights,
        bottom_open,
        top_open,
        end_labels,
        origin_x=0,
    ):
        col_widths = tuple(XRat(w) if not isinstance(w, XRat) else w for w in col_widths)
        col_perms = tuple(
            p if isinstance(p, Permutation) else Permutation(p) for p in col_perms
        )
        strip_heights = tuple(
            h if isinstance(h, XRat) else XRat(h) for h in strip_heights
        )
        bottom_open = int(bottom_open)
        top_open = int(top_open)
        end_labels = tuple(frozenset(int(s) for s in c) for c in end_labels)
        origin_x = Fraction(origin_x)

        ncols = len(col_widths)
        nstrips = len(strip_heights)
        if ncols < 2:
            raise SurfaceError("need at least two columns")
        if len(col_perms) != ncols:
            raise SurfaceError("one permutation per column required")
        if col_widths[0] != POS_INF or col_widths[-1] != POS_INF:
            raise SurfaceError("outer columns must be infinite")
        for w in col_widths[1:-1]:
            if not (w.is_finite and w.finite > 0):
                raise SurfaceError("interior column widths must be finite positive")
        if bottom_open == top_open or not (
            0 <= bottom_open < nstrips and 0 <= top_open < nstrips
        ):
            raise SurfaceError("bad open strip markers")
        for s, hgt in enumerate(strip_heights):
            if s in (bottom_open, top_open):
                if hgt != POS_INF:
                    raise SurfaceError("open strips must have infinite height")
            elif not (hgt.is_finite and hgt.finite > 0):
                raise SurfaceError("strip heights must be finite positive")
        for p in col_perms:
            if p.degree != nstrips:
                raise SurfaceError("permutation degree must match strip count")
            if p(top_open) != bottom_open:
                raise SurfaceError(
                    "every column must close the infinite end "
                    "(pi(top_open) = bottom_open)"
                )

        left_cycles = {frozenset(c) for c in col_perms[0].cycles()}
        if set(end_labels) != left_cycles:
            raise EndStructure("end labels must be the cycles of the leftmost column")
        if not end_labels or bottom_open not in end_labels[0]:
            raise EndStructure("label 0 must be the end containing the open strips")
        if top_open not in end_labels[0]:
            raise EndStructure("open strips must share one end")

        object.__setattr__(self, "col_widths", col_widths)
        object.__setattr__(self, "col_perms", col_perms)
        object.__setattr__(self, "strip_heights", strip_heights)
        object.__setattr__(self, "bottom_open", bottom_open)
        object.__setattr__(self, "top_open", top_open)
        object.__setattr__(self, "end_labels", end_labels)
        object.__setattr__(self, "origin_x", origin_x)
        object.__setattr__(self, "_walls", None)

    def __setattr__(self, name, value):
        raise AttributeError("GluedGrid is immutable")

    @property
    def num_columns(self):
        return len(self.col_widths)

    @property
    def num_strips(self):
        return len(self.strip_heights)

    @property
    def m(self):
        return len(self.end_labels) - 1

    @property
    def wall_positions(self):
        """x-coordinates of the finite walls, anchored at origin_x."""
        if self._walls is None:
            nwalls = self.num_columns - 1
            walls = [Fraction(0)] * nwalls
            walls[-1] = self.origin_x
            for w in range(nwalls - 2, -1, -1):
                walls[w] = walls[w + 1] - self.col_widths[w + 1].finite
            object.__setattr__(self, "_walls", tuple(walls))
        return self._walls

    @property
    def level_positions(self):
        """y-levels of the finite seams, for stacked (freshly glued) grids."""
        if self.bottom_open != 0 or self.top_open != self.num_strips - 1:
            raise SurfaceError("level positions only defined for stacked grids")
        levels = [Fraction(0)]
        for s in range(1, self.num_strips - 1):
            levels.append(levels[-1] + self.strip_heights[s].finite)
        return tuple(levels)

    def __eq__(self, other):
        return isinstance(other, GluedGrid) and all(
            getattr(self, f) == getattr(other, f)
            for f in self.__slots__
            if f != "_walls"
        )

    def __hash__(self):
        return hash(
            (
                self.col_widths,
                self.col_perms,
                self.strip_heights,
                self.bottom_open,
                self.top_open,
                self.end_labels,
                self.origin_x,
            )
        )

    def __repr__(self):
        return "GluedGrid(%d columns, %d strips, m=%d)" % (
            self.num_columns,
            self.num_strips,
            self.m,
        )


def glue(domain: ParallelSlitDomain) -> GluedGrid:
    """Assemble the flat surface of a parallel slit domain.

    Column c (internal, left to right) carries sigma_{h-c}; strip j
    spans the y-interval [b_j, b_{j+1}] with b_0 = -inf, b_{2h+1} = +inf.
    """
    label, coords = domain.label, domain.coords
    h = label.h
    a, b = coords.a, coords.b

    widths = [POS_INF]
    for c in range(1, h):
        # column c lies between the walls at a_{h-c+1} and a_{h-c}
        widths.append(XRat(a[h - c - 1] - a[h - c]))
    widths.append(POS_INF)

    perms = tuple(label.sigmas[h - c] for c in range(h + 1))

    heights = [POS_INF]
    for j in range(1, 2 * h):
        heights.append(XRat(b[j] - b[j - 1]))
    heights.append(POS_INF)

    end_labels = tuple(frozenset(c) for c in label.nu)
    return GluedGrid(
        col_widths=widths,
        col_perms=perms,
        strip_heights=heights,
        bottom_open=0,
        top_open=2 * h,
        end_labels=end_labels,
        origin_x=a[0],
    )


class ConeClass:
    """A vertex class of finite grid corners, with its cone angle 2*pi*k."""

    __slots__ = ("wall", "strips", "corners", "k")

    def __init__(self, wall, strips, corners, k):
        object.__setattr__(self, "wall", wall)
        object.__setattr__(self, "strips", tuple(strips))
        object.__setattr__(self, "corners", tuple(corners))
        object.__setattr__(self, "k", k)

    def __setattr__(self, name, value):
        raise AttributeError("ConeClass is immutable")

    @property
    def is_zero(self):
        return self.k >= 2

    @property
    def zero_order(self):
        return self.k - 1

    def __repr__(self):
        return "ConeClass(wall=%d, strips=%r, k=%d)" % (self.wall, self.strips, self.k)


class ConeData:
    """All vertex classes of a grid, flat ones included."""

    __slots__ = ("classes",)

    def __init__(self, classes):
        object.__setattr__(self, "classes", tuple(classes))

    def __setattr__(self, name, value):
        raise AttributeError("ConeData is immutable")

    @property
    def zeros(self):
        return tuple(c for c in self.classes if c.is_zero)

    @property
    def total_zero_order(self):
        return sum(c.zero_order for c in self.classes)


def cone_points(grid: GluedGrid) -> ConeData:
    """Vertex classes of the finite grid corners under the gluings.

    Rotates around each vertex: alternately cross the wall (identity
    per strip) and the seam (column permutation).  One full turn visits
    four corners, so every class size is a multiple of four; the cone
    angle is 2*pi times the number of turns.
    """
    classes = []
    for w in range(grid.num_columns - 1):
        c, c1 = w, w + 1
        inv_left = grid.col_perms[c].inverse()
        right = grid.col_perms[c1]
        seen = set()
        for s0 in range(grid.num_strips):
            if s0 == grid.top_open or s0 in seen:
                continue
            corners = []
            cycle = []
            s = s0
            while True:
                seen.add(s)
                cycle.append(s)
                t = right(s)
                corners.extend(
                    [(c, s, "NE"), (c1, s, "NW"), (c1, t, "SW"), (c, t, "SE")]
                )
                s = inv_left(t)
                if s == s0:
                    break
            if len(corners) % 4 != 0:
                raise InternalAssertion("corner class size not divisible by 4")
            classes.append(ConeClass(w, cycle, corners, len(corners) // 4))
    return ConeData(classes)


class EndEntry:
    __slots__ = ("label", "pole_order", "circumference")

    def __init__(self, label, pole_order, circumference):
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "pole_order", pole_order)
        object.__setattr__(self, "circumference", Fraction(circumference))

    def __setattr__(self, name, value):
        raise AttributeError("EndEntry is immutable")

    @property
    def residue_times_2pi(self):
        """The residue of the differential at this end, times 2*pi."""
        return self.circumference

    def __repr__(self):
        return "EndEntry(label=%d, pole_order=%d, circumference=%s)" % (
            self.label,
            self.pole_order,
            self.circumference,
        )


class EndData:
    __slots__ = ("entries",)

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("EndData is immutable")

    def __getitem__(self, label):
        return self.entries[label]

    @property
    def residue_sum(self):
        return sum(e.circumference for e in self.entries)


def ends(grid: GluedGrid) -> EndData:
    """Puncture data: pole orders and residues (as cylinder circumferences).

    The m finite-height left cylinders carry simple poles with positive
    residue equal to their circumference over 2*pi; the dipole end gets
    a double pole whose residue balances the sum to zero.
    """
    left = grid.col_perms[0]
    cycles = {frozenset(c) for c in left.cycles()}
    infinite = frozenset(grid.end_labels[0])
    if infinite not in cycles:
        raise EndStructure("label-0 end is not a cycle of the leftmost column")
    if grid.bottom_open not in infinite or grid.top_open not in infinite:
        raise EndStructure("more than one end would contain an infinite strip")
    finite_cycles = cycles - {infinite}
    labeled = set(grid.end_labels[1:])
    if labeled != finite_cycles:
        raise EndStructure("left cylinders do not match the puncture labels")
    if len(grid.col_perms[-1].cycles()) != 1:
        raise EndStructure("dipole end is not unique at the right")

    entries = []
    total = Fraction(0)
    for p in range(1, grid.m + 1):
        circ = Fraction(0)
        for s in grid.end_labels[p]:
            circ += grid.strip_heights[s].finite
        if circ <= 0:
            raise EndStructure("nonpositive cylinder circumference")
        total += circ
        entries.append(EndEntry(p, 1, circ))
    entries.insert(0, EndEntry(0, 2, -total))
    return EndData(entries)


def genus_via_cones(grid: GluedGrid) -> int:
    """Genus from the degree of the divisor of dz.

    Zeros contribute sum(k-1); the m simple poles and the double pole
    subtract m + 2, and the total must be 2g - 2.
    """
    total = cone_points(grid).total_zero_order
    m = grid.m
    twice = total - m
    if twice < 0 or twice % 2 != 0:
        raise NonIntegralGenus(
            "zero orders %d and %d punctures give no integral genus" % (total, m)
        )
    return twice // 2


_CORNERS_OF_SIDE = {
    "L": ("SW", "NW"),
    "R": ("SE", "NE"),
    "B": ("SW", "SE"),
    "T": ("NW", "NE"),
}


def genus_via_euler(grid: GluedGrid) -> int:
    """Genus by truncating the ends, capping, and counting V - E + F.

    Cuts the surface along artificial walls and levels beyond all finite
    data, which removes one open disk neighborhood per puncture.  The
    boundary must consist of exactly m+1 circuits; capping them with
    disks gives a closed complex whose Euler characteristic is 2 - 2g.

    Independent of the cone-point computation: identifications are
    resolved by union-find over all rectangle corners.
    """
    C, S = grid.num_columns, grid.num_strips

    parent = list(range(4 * C * S))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    pos_index = {"SW": 0, "SE": 1, "NW": 2, "NE": 3}

    def cid(c, s, pos):
        return 4 * (c * S + s) + pos_index[pos]

    def glue_edges(e1, e2):
        # translation gluing: matching corner orientations
        (c1, s1, side1), (c2, s2, side2) = e1, e2
        p1, q1 = _CORNERS_OF_SIDE[side1]
        p2, q2 = _CORNERS_OF_SIDE[side2]
        union(cid(c1, s1, p1), cid(c2, s2, p2))
        union(cid(c1, s1, q1), cid(c2, s2, q2))

    identifications = 0
    for c in range(C - 1):
        for s in range(S):
            glue_edges((c, s, "R"), ((c + 1), s, "L"))
            identifications += 1
    for c in range(C):
        for s in range(S):
            if s == grid.top_open:
                continue
            glue_edges((c, s, "T"), (c, grid.col_perms[c](s), "B"))
            identifications += 1

    V = len({find(x) for x in range(4 * C * S)})
    E = 4 * C * S - identifications
    F = C * S

    boundary_edges = []
    for s in range(S):
        boundary_edges.append((0, s, "L"))
        boundary_edges.append((C - 1, s, "R"))
    for c in range(C):
        boundary_edges.append((c, grid.top_open, "T"))
        boundary_edges.append((c, grid.bottom_open, "B"))

    # boundary circuits: each boundary vertex must meet exactly two
    # boundary edge-ends, and circuits are the components of that graph
    incidence = {}
    for c, s, side in boundary_edges:
        p, q = _CORNERS_OF_SIDE[side]
        for pos in (p, q):
            incidence.setdefault(find(cid(c, s, pos)), []).append((c, s, side))
    for v, edges_at in incidence.items():
        if len(edges_at) != 2:
            raise BoundaryCircuitMismatch(
                "boundary vertex with %d edge-ends" % len(edges_at)
            )
    bparent = {e: e for e in boundary_edges}

    def bfind(e):
        while bparent[e] != e:
            bparent[e] = bparent[bparent[e]]
            e = bparent[e]
        return e

    for v, (e1, e2) in incidence.items():
        r1, r2 = bfind(e1), bfind(e2)
        if r1 != r2:
            bparent[r1] = r2
    circuits = len({bfind(e) for e in boundary_edges})

    expected = grid.m + 1
    if circuits != expected:
        raise BoundaryCircuitMismatch(
            "%d boundary circuits, expected %d" % (circuits, expected)
        )

    chi = V - E + F + circuits
    if (2 - chi) % 2 != 0 or chi > 2:
        raise NonIntegralGenus("Euler characteristic %d is inconsistent" % chi)
    return (2 - chi) // 2


def period_of_loop(grid: GluedGrid, crossings):
    """Integral of dz along a closed combinatorial loop.

    The loop is a sequence of oriented edge crossings
    ``(direction, column, strip)`` with direction one of ``"up"``,
    ``"down"``, ``"left"``, ``"right"``: the loop leaves the rectangle
    (column, strip) through that edge.  Returns the period as a pair of
    exact rationals (real, imaginary).  The real part is always zero:
    every gluing preserves the global horizontal coordinate.
    """
    crossings = list(crossings)
    if not crossings:
        return (Fraction(0), Fraction(0))

    def height(s):
        hgt = grid.strip_heights[s]
        return hgt.finite if hgt.is_finite else Fraction(0)

    cur = (crossings[0][1], crossings[0][2])
    start = cur
    imag = Fraction(0)
    for direction, c, s in crossings:
        if (c, s) != cur:
            raise NotClosed("crossing leaves %r but loop is at %r" % ((c, s), cur))
        if not (0 <= c < grid.num_columns and 0 <= s < grid.num_strips):
            raise NotClosed("no such rectangle %r" % ((c, s),))
        if direction == "right":
            if c == grid.num_columns - 1:
                raise NotClosed("no wall to the right of the last column")
            cur = (c + 1, s)
        elif direction == "left":
            if c == 0:
                raise NotClosed("no wall to the left of the first column")
            cur = (c - 1, s)
        elif direction == "up":
            if s == grid.top_open:
                raise NotClosed("the top-open strip has no upper edge")
            t = grid.col_perms[c](s)
            imag += height(s)
            cur = (c, t)
        elif direction == "down":
            if s == grid.bottom_open:
                raise NotClosed("the bottom-open strip has no lower edge")
            r = grid.col_perms[c].inverse()(s)
            imag -= height(r)
            cur = (c, r)
        else:
            raise NotClosed("unknown crossing direction %r" % (direction,))
    if cur != start:
        raise NotClosed("loop ends at %r, started at %r" % (cur, start))
    return (Fraction(0), imag)


class GenericityReport:
    """Outcome of the genericity test, with a diagnosis on failure."""

    __slots__ = ("is_generic", "diagnosis", "detail")

    def __init__(self, is_generic, diagnosis=None, detail=""):
        object.__setattr__(self, "is_generic", is_generic)
        object.__setattr__(self, "diagnosis", diagnosis)
        object.__setattr__(self, "detail", detail)

    def __setattr__(self, name, value):
        raise AttributeError("GenericityReport is immutable")

    def __bool__(self):
        return self.is_generic

    def __repr__(self):
        if self.is_generic:
            return "GenericityReport(generic)"
        return "GenericityReport(%s: %s)" % (self.diagnosis, self.detail)


def is_generic(grid: GluedGrid) -> GenericityReport:
    """Check the three genericity conditions of the differential.

    (a) all zeros are simple and there are exactly h of them,
    (b) every wall of the fake-wall-free grid carries at most one zero
        (distinct critical values), and
    (c) no leftward separatrix runs into a second zero.
    """
    from .uniformize import merge_fake_walls, trace_critical_graph
    from .uniformize import SaddleConnection, NotSimple

    merged = merge_fake_walls(grid)
    cones = cone_points(merged)
    zeros = cones.zeros
    # for a consistent grid sum(k-1) = 2g - 2 + m + 2 = h, so simplicity
    # of every zero forces exactly h of them
    expected = cones.total_zero_order
    for z in zeros:
        if z.k != 2:
            return GenericityReport(
                False,
                "NonSimpleOrColocated",
                "zero of order %d at wall %d" % (z.zero_order, z.wall),
            )
    walls_hit = [z.wall for z in zeros]
    if len(set(walls_hit)) != len(walls_hit):
        return GenericityReport(
            False, "NonSimpleOrColocated", "two zeros share a wall"
        )
    if len(zeros) != expected:
        return GenericityReport(
            False,
            "NonSimpleOrColocated",
            "%d zeros, expected %d" % (len(zeros), expected),
        )
    try:
        trace_critical_graph(merged)
    except SaddleConnection as exc:
        return GenericityReport(False, "SaddleConnection", str(exc))
    except NotSimple as exc:  # pragma: no cover - screened above
        return GenericityReport(False, "NonSimpleOrColocated", str(exc))
    return GenericityReport(True)
