"""Exact parallel slit domains: gluing, invariants, normal forms.

The package realizes the cell model of flat surfaces with one dipole
and m logarithmic singularities: combinatorial cell labels with exact
rational coordinates, the gluing construction into explicit translation
surfaces, the uniformization normal form recovering the canonical slit
picture from any equivalent presentation, and a census of the
top-dimensional cells for small complexity.
"""

from .core import (
    BadSigmaZero,
    CellLabel,
    CellLabelError,
    CycleCountMismatch,
    Fixed2hViolated,
    NotStrict,
    NuMismatch,
    ParallelSlitDomain,
    Permutation,
    SlitCoordinates,
    SlitError,
    cell_dimension,
    cycles,
    normalize,
    validate_cell_label,
)
from .surface import (
    BoundaryCircuitMismatch,
    ConeClass,
    ConeData,
    EndData,
    EndEntry,
    EndStructure,
    GenericityReport,
    GluedGrid,
    InternalAssertion,
    NonIntegralGenus,
    NotClosed,
    cone_points,
    ends,
    genus_via_cones,
    genus_via_euler,
    glue,
    is_generic,
    period_of_loop,
)
from .uniformize import (
    Bank,
    CriticalGraph,
    Development,
    HolonomyMismatch,
    NonGeneric,
    NotSimple,
    OverlapDetected,
    PeriodMatrix,
    Ray,
    SaddleConnection,
    develop,
    insert_fake_wall,
    merge_fake_walls,
    periods,
    relabel_strips,
    scramble,
    split_strip,
    trace_critical_graph,
    translate,
    uniformize,
)
from .census import CensusReport, TooLarge, enumerate_cells, random_domain
from .io import InvariantViolation, ParseError, read_document, write_document
from .render import EmptyView, View, parse_view, render_svg
from .xrat import NEG_INF, POS_INF, XRat

__version__ = "0.1.0"
