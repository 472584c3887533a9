//! Repo-wide JSON interchange schema.
//!
//! Every document carries the versioned schema id and a `type` tag.
//! Factorisations are lists of `[a, b]` pairs plus `n`; trees are
//! children-count sequences (optionally with a parent-index array, `-1`
//! for the root); labelled trees add the two label arrays with `0` for
//! unlabeled; chords are exact `[numerator, denominator]` pairs.

use crate::bijection::LabeledTree;
use crate::lamination::{Chord, Lamination, StepLaminationProcess};
use crate::perm::Factorisation;
use crate::tree::PlaneTree;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Versioned schema id embedded in every document.
pub const SCHEMA_ID: &str = "monofact/1";

/// A typed, schema-tagged payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    #[serde(flatten)]
    pub payload: Payload,
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        Self { schema: SCHEMA_ID.to_string(), payload }
    }

    /// Parses and checks the schema id.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)
            .map_err(|e| Error::BadConfig(format!("invalid document: {e}")))?;
        if doc.schema != SCHEMA_ID {
            return Err(Error::BadConfig(format!("unsupported schema id {:?}", doc.schema)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Factorisation(FactorisationDoc),
    PlaneTree(PlaneTreeDoc),
    LabeledTree(LabeledTreeDoc),
    Lamination(LaminationDoc),
    LaminationProcess(LaminationProcessDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorisationDoc {
    pub n: usize,
    pub taus: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Children counts of the generating tree, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<Vec<usize>>,
}

impl FactorisationDoc {
    pub fn from_factorisation(f: &Factorisation) -> Self {
        Self {
            n: f.n(),
            taus: f.taus().iter().map(|t| [t.a(), t.b()]).collect(),
            kind: None,
            tree: None,
        }
    }

    pub fn to_factorisation(&self) -> Result<Factorisation> {
        Factorisation::from_pairs(self.n, &self.taus.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneTreeDoc {
    pub children_counts: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parents: Option<Vec<i64>>,
}

impl PlaneTreeDoc {
    pub fn from_tree(t: &PlaneTree, with_parents: bool) -> Self {
        Self {
            children_counts: t.children_counts().to_vec(),
            parents: with_parents.then(|| {
                t.parents().iter().map(|p| p.map_or(-1, |v| v as i64)).collect()
            }),
        }
    }

    pub fn to_tree(&self) -> Result<PlaneTree> {
        PlaneTree::from_children_counts(self.children_counts.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledTreeDoc {
    pub children_counts: Vec<usize>,
    pub vertex_labels: Vec<usize>,
    pub edge_labels: Vec<usize>,
}

impl LabeledTreeDoc {
    pub fn from_labeled(t: &LabeledTree) -> Self {
        Self {
            children_counts: t.shape.children_counts().to_vec(),
            vertex_labels: t.vertex_labels.clone(),
            edge_labels: t.edge_labels.clone(),
        }
    }

    pub fn to_labeled(&self) -> Result<LabeledTree> {
        let shape = PlaneTree::from_children_counts(self.children_counts.clone())?;
        let n = shape.n();
        if self.vertex_labels.len() != n || self.edge_labels.len() != n {
            return Err(Error::BadConfig("label arrays must have one entry per vertex".into()));
        }
        Ok(LabeledTree {
            shape,
            vertex_labels: self.vertex_labels.clone(),
            edge_labels: self.edge_labels.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaminationDoc {
    pub chords: Vec<Chord>,
}

impl LaminationDoc {
    pub fn from_lamination(l: &Lamination) -> Self {
        Self { chords: l.chords().to_vec() }
    }

    pub fn to_lamination(&self) -> Result<Lamination> {
        Lamination::new(self.chords.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaminationProcessDoc {
    pub n: usize,
    pub snapshots: Vec<Vec<Chord>>,
}

impl LaminationProcessDoc {
    pub fn from_process(p: &StepLaminationProcess) -> Self {
        Self {
            n: p.n,
            snapshots: p.snapshots.iter().map(|l| l.chords().to_vec()).collect(),
        }
    }
}
