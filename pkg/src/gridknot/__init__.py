"""Lattice links in a box: projections, linking numbers, and fast invariant counting."""

from gridknot.bench import (
    OPS,
    ScalingRow,
    fit_loglog,
    render_figures,
    run_scaling,
    write_rows,
)
from gridknot.counting import (
    CountingInstance,
    brute_count,
    count_increasing,
    count_with_z,
    format_instance,
    parse_instance,
)
from gridknot.diagram import (
    CROSSING_TYPES,
    Arrow,
    Crossing,
    CrossingField,
    CrossingType,
    GaussDiagram,
    PlanarDiagram,
    build_diagram,
    crossing_count,
    crossing_type,
    enumerate_fields,
    field_crossings,
    format_gauss,
    sign_table,
    to_gauss,
)
from gridknot.fastphi import (
    LabeledArrow,
    LabeledDiagram,
    build_instance,
    enumerate_labeled_diagrams,
    phi_3d,
)
from gridknot.grid import (
    Component,
    GridLink,
    GridLinkError,
    InfeasibleError,
    OpenCycleError,
    OutOfBoundsError,
    ParseError,
    Passage,
    Point,
    SelfIntersectionError,
    Violation,
    make_dense_fill,
    make_dense_pair,
    make_hopf_link,
    make_torus_link,
    make_unknot,
    mirror_x,
    mix_link,
    normalize,
    parse_grid_link,
    passages,
    random_grid_link,
    reverse_orientations,
    serialize_grid_link,
    translate,
    validate,
)
from gridknot.invariants import (
    ComponentCountError,
    Functional,
    PhiVector,
    SignSumParityError,
    apply_functional,
    field_pair_count,
    format_phi,
    lk_2d,
    lk_3d,
    omega_lk,
    phi_2d,
    subdiagram_code,
)
from gridknot.shear import DegeneracyError, diagrams_equal, oracle_shear_diagram

__all__ = [
    "Arrow",
    "CROSSING_TYPES",
    "Component",
    "ComponentCountError",
    "CountingInstance",
    "Crossing",
    "CrossingField",
    "CrossingType",
    "DegeneracyError",
    "Functional",
    "GaussDiagram",
    "GridLink",
    "GridLinkError",
    "InfeasibleError",
    "LabeledArrow",
    "LabeledDiagram",
    "OPS",
    "OpenCycleError",
    "OutOfBoundsError",
    "ParseError",
    "Passage",
    "PhiVector",
    "PlanarDiagram",
    "Point",
    "ScalingRow",
    "SelfIntersectionError",
    "SignSumParityError",
    "Violation",
    "apply_functional",
    "brute_count",
    "build_diagram",
    "build_instance",
    "count_increasing",
    "count_with_z",
    "crossing_count",
    "crossing_type",
    "diagrams_equal",
    "enumerate_fields",
    "enumerate_labeled_diagrams",
    "field_crossings",
    "field_pair_count",
    "fit_loglog",
    "format_gauss",
    "format_instance",
    "format_phi",
    "lk_2d",
    "lk_3d",
    "make_dense_fill",
    "make_dense_pair",
    "make_hopf_link",
    "make_torus_link",
    "make_unknot",
    "mirror_x",
    "mix_link",
    "normalize",
    "omega_lk",
    "oracle_shear_diagram",
    "parse_grid_link",
    "parse_instance",
    "passages",
    "phi_2d",
    "phi_3d",
    "random_grid_link",
    "render_figures",
    "reverse_orientations",
    "run_scaling",
    "serialize_grid_link",
    "sign_table",
    "subdiagram_code",
    "translate",
    "validate",
    "write_rows",
]
