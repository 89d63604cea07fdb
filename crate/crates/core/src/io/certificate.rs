//! JSON certificates: embeddings, linkages, packings and lemma reports.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::embed::{Embedding, Linkage, Packing};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, Path, VertexId};
use crate::lemmas::{LemmaReport, Witness};

/// An embedding with its branch map written as (pattern vertex, host vertex)
/// pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub pattern: String,
    pub branch_map: Vec<(usize, VertexId)>,
    pub path_map: Vec<Vec<VertexId>>,
}

impl From<&Embedding> for EmbeddingRecord {
    fn from(e: &Embedding) -> EmbeddingRecord {
        EmbeddingRecord {
            pattern: e.pattern.clone(),
            branch_map: e.branch_map.iter().copied().enumerate().collect(),
            path_map: e.path_map.iter().map(|p| p.0.clone()).collect(),
        }
    }
}

impl EmbeddingRecord {
    pub fn to_embedding(&self) -> Result<Embedding> {
        let k = self.branch_map.len();
        let mut map = vec![None; k];
        for &(i, v) in &self.branch_map {
            match map.get_mut(i) {
                Some(slot @ None) => *slot = Some(v),
                Some(Some(_)) => return Err(Error::MalformedCertificate(format!("pattern vertex {i} mapped twice"))),
                None => return Err(Error::MalformedCertificate(format!("pattern vertex {i} out of range 0..{k}"))),
            }
        }
        if self.path_map.iter().any(|p| p.is_empty()) {
            return Err(Error::MalformedCertificate("empty path".into()));
        }
        Ok(Embedding {
            pattern: self.pattern.clone(),
            branch_map: map.into_iter().map(|v| v.expect("all slots filled")).collect(),
            path_map: self.path_map.iter().map(|p| Path(p.clone())).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingRecord {
    pub pattern: String,
    pub embeddings: Vec<EmbeddingRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateDocument {
    Embedding(EmbeddingRecord),
    Linkage(Linkage),
    Packing(PackingRecord),
    LemmaReport(LemmaReport),
}

impl CertificateDocument {
    pub fn embedding(e: &Embedding) -> CertificateDocument {
        CertificateDocument::Embedding(e.into())
    }

    pub fn packing(pattern: &str, p: &Packing) -> CertificateDocument {
        CertificateDocument::Packing(PackingRecord {
            pattern: pattern.to_string(),
            embeddings: p.embeddings.iter().map(Into::into).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<CertificateDocument> {
        serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    /// Edge sets to draw, one per certificate member.
    pub fn overlays(&self) -> Vec<BTreeSet<Edge>> {
        let path_edges = |ps: &[&Vec<VertexId>]| -> BTreeSet<Edge> {
            ps.iter().flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1]))).collect()
        };
        let record = |e: &EmbeddingRecord| path_edges(&e.path_map.iter().collect::<Vec<_>>());
        match self {
            CertificateDocument::Embedding(e) => vec![record(e)],
            CertificateDocument::Linkage(l) => vec![l.pab.edges().collect(), l.pcd.edges().collect()],
            CertificateDocument::Packing(p) => p.embeddings.iter().map(record).collect(),
            CertificateDocument::LemmaReport(r) => match &r.witness {
                None => vec![],
                Some(Witness::Embedding { embedding, .. }) => vec![embedding.edges()],
                Some(Witness::Linkage { linkage }) => vec![linkage.pab.edges().collect(), linkage.pcd.edges().collect()],
                Some(Witness::TwoLinkages { first, second }) => vec![first.edges(), second.edges()],
                Some(Witness::Packing { embeddings, .. }) => embeddings.iter().map(Embedding::edges).collect(),
                Some(Witness::Expansion { embedding, linkage }) => vec![embedding.edges(), linkage.edges()],
                Some(Witness::Deletion { deleted, .. }) => vec![deleted.iter().copied().collect()],
            },
        }
    }

    /// Every vertex id the certificate mentions.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.overlays().iter().flatten().flat_map(|e| [e.0, e.1]).collect();
        let mut add_record = |e: &EmbeddingRecord| {
            out.extend(e.branch_map.iter().map(|&(_, v)| v));
            out.extend(e.path_map.iter().flatten().copied());
        };
        match self {
            CertificateDocument::Embedding(e) => add_record(e),
            CertificateDocument::Packing(p) => p.embeddings.iter().for_each(add_record),
            CertificateDocument::Linkage(l) => out.extend(l.pab.0.iter().chain(&l.pcd.0).copied()),
            CertificateDocument::LemmaReport(r) => {
                let mut add = |e: &Embedding| out.extend(e.vertices());
                match &r.witness {
                    Some(Witness::Embedding { embedding, .. }) | Some(Witness::Expansion { embedding, .. }) => add(embedding),
                    Some(Witness::Packing { embeddings, .. }) => embeddings.iter().for_each(add),
                    _ => {}
                }
            }
        }
        out
    }

    /// Checks that every referenced vertex exists in `g`.
    pub fn check_against(&self, g: &LabeledGraph) -> Result<()> {
        match self.vertices().into_iter().find(|&v| !g.contains_vertex(v)) {
            Some(v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }
}
