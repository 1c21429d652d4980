//! Unimodal components and decompositions, with independent re-verification.

use serde::Serialize;

use crate::error::Result;
use crate::function::VertexFunction;
use crate::graph::{Graph, VertexSubset};
use crate::scalar::{Rational, Scalar};
use crate::unimodality::{is_unimodal, Witness};

/// One unimodal summand: values, their support and the mode.
#[derive(Clone, Debug, PartialEq)]
pub struct Component<S = Rational> {
    pub support: VertexSubset,
    pub root: usize,
    pub values: VertexFunction<S>,
}

impl<S: Scalar> Component<S> {
    /// Wraps nonzero values, taking the smallest-index maximum as the mode.
    pub fn from_values(values: VertexFunction<S>) -> Option<Self> {
        let support = values.support();
        let root = values.argmax_within(support.iter())?;
        Some(Component { support, root, values })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sum,
    Max,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<S = Rational> {
    pub mode: Mode,
    pub components: Vec<Component<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateError {
    /// Combined value at `vertex` differs from the target.
    Mismatch { vertex: usize },
    NotUnimodal { index: usize, witness: Witness },
}

impl<S: Scalar> Decomposition<S> {
    pub fn sum(components: Vec<Component<S>>) -> Self {
        Decomposition { mode: Mode::Sum, components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn functions(&self) -> Vec<VertexFunction<S>> {
        self.components.iter().map(|c| c.values.clone()).collect()
    }

    /// Combines the components (sum or max) over `n` vertices.
    pub fn combined(&self, n: usize) -> VertexFunction<S> {
        let parts = self.components.iter().map(|c| &c.values);
        match self.mode {
            Mode::Sum => VertexFunction::sum(n, parts),
            Mode::Max => VertexFunction::max_of(n, parts),
        }
    }

    /// Re-checks the certificate from the definitions: the combination
    /// equals `target` exactly and every component is unimodal.
    pub fn check(&self, g: &Graph, target: &VertexFunction<S>) -> Result<std::result::Result<(), CertificateError>> {
        let combined = self.combined(g.vertex_count());
        if let Some(vertex) = (0..g.vertex_count()).find(|&v| combined.value(v) != target.value(v)) {
            return Ok(Err(CertificateError::Mismatch { vertex }));
        }
        for (index, c) in self.components.iter().enumerate() {
            if let Some(w) = is_unimodal(g, &c.values)?.witness() {
                return Ok(Err(CertificateError::NotUnimodal { index, witness: w.clone() }));
            }
        }
        Ok(Ok(()))
    }

    pub fn verifies(&self, g: &Graph, target: &VertexFunction<S>) -> bool {
        matches!(self.check(g, target), Ok(Ok(())))
    }
}
