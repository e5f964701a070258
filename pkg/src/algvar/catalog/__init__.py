"""Embedded classification tables, proof artifacts and file formats."""

from .data import (
    AUT_SHAPES,
    ENTRIES,
    FAMILIES,
    GEO,
    STEPS,
    CatalogEntry,
    CocycleFamily,
    GeoEntry,
    ProofStep,
    entry,
    get,
    ids,
    lie,
)
from .formats import (
    detect_kind,
    parse,
    parse_algebra,
    parse_closed_set,
    parse_cocycle,
    parse_matrix,
    parse_witness,
    render,
    render_matrix,
)
from .verify import THEOREMS, Report, ReportItem, verify_theorem
