//! Two-label colourings and labelled graphs.

use alloc::vec::Vec;

use crate::error::{malformed, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    One,
    Two,
}

impl Label {
    pub fn from_u8(v: u8) -> Option<Label> {
        match v {
            1 => Some(Label::One),
            2 => Some(Label::Two),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Label::One => 1,
            Label::Two => 2,
        }
    }

    /// 0 for label 1, 1 for label 2.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn swapped(self) -> Label {
        match self {
            Label::One => Label::Two,
            Label::Two => Label::One,
        }
    }
}

impl core::fmt::Display for Label {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A total map from vertices to labels, indexed by vertex id.
pub type Labelling = Vec<Label>;

/// The swapped labelling `s(l)`.
pub fn swap_labelling(l: &[Label]) -> Labelling {
    l.iter().map(|x| x.swapped()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    pub graph: Graph,
    pub labels: Labelling,
}

impl LabelledGraph {
    pub fn new(graph: Graph, labels: Labelling) -> Result<LabelledGraph> {
        if labels.len() != graph.n() {
            return Err(malformed!(
                "{} labels given for {} vertices",
                labels.len(),
                graph.n()
            ));
        }
        Ok(LabelledGraph { graph, labels })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    /// Vertices carrying `label`, ascending.
    pub fn class(&self, label: Label) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.labels[v] == label).collect()
    }

    /// Induced labelled subgraph on a sorted vertex list.
    pub(crate) fn induced_sorted(&self, w: &[usize]) -> LabelledGraph {
        LabelledGraph {
            graph: self.graph.induced_sorted(w),
            labels: w.iter().map(|&v| self.labels[v]).collect(),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> LabelledGraph {
        let mut labels = self.labels.clone();
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v];
        }
        LabelledGraph {
            graph: self.graph.permuted(perm),
            labels,
        }
    }

    pub fn swapped(&self) -> LabelledGraph {
        LabelledGraph {
            graph: self.graph.clone(),
            labels: swap_labelling(&self.labels),
        }
    }
}
