//! Generalized tilings over polycells: directed graphs with distinguished
//! k-cells, tilings as edge selections, their height functions, flips, the
//! lattice structure of each flip component, constructive tilability, and
//! exactly uniform random sampling.

pub mod encoders;
pub mod error;
pub mod fixtures;
pub mod flips;
pub mod format;
pub mod graph;
mod linalg;
pub mod oracle;
pub mod polycell;
pub mod sampler;
pub mod tilability;
pub mod tiling;

pub use encoders::{
    decode_dominoes, decode_rhombus, encode_polyomino, encode_rhombus,
    encode_rhombus_with_max_dim, polyomino_geometry, rhombus_geometry, PolyominoRegion,
    RhombusRegion, TileKind, TilePlacement, DEFAULT_MAX_DIMENSION,
};
pub use error::Error;
pub use flips::{
    count_components, efg_orientation, flip, flip_graph, flip_terminal,
    flip_terminal_with_order, interior_sinks, join, maximal_vertices, meet, FlipGraph,
    Orientation,
};
pub use format::{
    read_polycell, read_polyomino_ascii, read_rhombus_points, read_tiling, write_polycell,
    write_polyomino_ascii, write_rhombus_points, write_tiling, FormatError,
};
pub use graph::{flux, DirectedGraph, EdgeId, Flow, Step, StepDir, Travel, VertexId};
pub use oracle::{brute_force_tilings, brute_force_tilings_capped, subset_filter_tilings};
pub use polycell::{
    cell_lattice_z_spans, is_balanced_boundary, is_contractible, is_tension, tiles, validate,
    Cell, Polycell, Tile, ValidationReport, Violation,
};
pub use sampler::{
    counter_value, coupling_update, derive_subseed, sample_cftp, sample_exact, CounterRng,
    SampleMethod, SamplerConfig,
};
pub use tilability::{
    is_tilable, maximal_tiling, maximal_tiling_with, FrontierOrder, TilabilityStats,
    TilingOutcome, UntilableReason,
};
pub use tiling::{
    height_function, height_on_boundary, heights_of_tension, is_valid_tiling, tension_to_tiling,
    tiling_to_tension, HeightFunction, Tiling,
};
