//! Subdivision search, linkages, packings and certificate checks.

mod bitset;
mod embedding;
pub(crate) mod flow;
mod linkage;
mod packing;
mod pattern;
mod reduce;
mod search;
mod templates;

pub use bitset::BitSet;
pub use embedding::{
    embedding_defect, linkage_defect, packing_defect, verify_embedding, Embedding, Linkage, Packing,
};
pub use linkage::{
    find_linkage, find_linkage_between, find_two_edge_disjoint_linkages, LinkageOutcome, TwoLinkageOutcome,
};
pub use packing::{find_edge_disjoint_packing, pack_figures, CertificateCache, PackingOutcome};
pub use pattern::{Pattern, PatternEdge};
pub use reduce::subdivision_certificate;
pub use templates::{
    certify, construct_figure_embedding, construct_figure_embedding_with, figure_host, place_figure, place_walks, Exterior, Figure,
    FigureEmbedding, FigureHost, PlacedFigure,
    TEMPLATE_BUDGET,
};
pub use search::{
    check_all_embeddings, enumerate_embeddings, find_topological_minor, Enumeration, SearchConstraints,
    SearchOutcome, SearchStats, UniversalCheck, DEFAULT_BUDGET,
};
