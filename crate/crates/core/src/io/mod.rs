//! File formats: graph documents, JSON certificates and DOT.

mod certificate;
mod dot;
mod text;

pub use certificate::{CertificateDocument, EmbeddingRecord, PackingRecord};
pub use dot::{export_dot, OVERLAY_COLORS};
pub use text::{class_token, parse_class, parse_role, role_token, GraphDocument};
