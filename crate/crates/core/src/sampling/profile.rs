use std::io::Write;

use serde::Serialize;

use super::{sample_batch, SampleError, SamplerSpec};
use crate::family::Family;
use crate::terms::stats;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    /// Nodes per edge depth.
    Depth,
    /// Nodes per number of unary ancestors.
    UnaryLevel,
}

/// Summed node profiles of a batch of samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileAggregate {
    pub family: Family,
    pub size: usize,
    pub samples: usize,
    /// Total nodes over the batch at each depth.
    pub depth_totals: Vec<u64>,
    pub unary_level_totals: Vec<u64>,
    /// Total size over the batch.
    pub node_total: u64,
}

impl ProfileAggregate {
    pub fn totals(&self, kind: ProfileKind) -> &[u64] {
        match kind {
            ProfileKind::Depth => &self.depth_totals,
            ProfileKind::UnaryLevel => &self.unary_level_totals,
        }
    }

    pub fn mean(&self, kind: ProfileKind) -> Vec<f64> {
        self.totals(kind).iter().map(|&c| c as f64 / self.samples as f64).collect()
    }
}

fn add(acc: &mut Vec<u64>, v: &[usize]) {
    if acc.len() < v.len() {
        acc.resize(v.len(), 0);
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        *a += x as u64;
    }
}

/// Profiles summed over `batch` draws of `spec`.
pub fn aggregate_profiles(spec: &SamplerSpec, batch: usize) -> Result<ProfileAggregate, SampleError> {
    let terms = sample_batch(spec, batch)?;
    let mut agg = ProfileAggregate {
        family: spec.family,
        size: spec.size,
        samples: batch,
        depth_totals: Vec::new(),
        unary_level_totals: Vec::new(),
        node_total: 0,
    };
    for t in &terms {
        let s = stats(t);
        add(&mut agg.depth_totals, &s.profile_by_depth);
        add(&mut agg.unary_level_totals, &s.profile_by_unary_level);
        agg.node_total += s.size as u64;
    }
    Ok(agg)
}

/// CSV with header `level,mean_nodes`.
pub fn write_profile_csv(agg: &ProfileAggregate, kind: ProfileKind, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "level,mean_nodes")?;
    for (level, m) in agg.mean(kind).iter().enumerate() {
        writeln!(out, "{level},{m:.10}")?;
    }
    Ok(())
}
