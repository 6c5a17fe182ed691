//! Graph universes: exhaustive enumeration of small graphs up to isomorphism,
//! and ingestion of graph6 streams.
//!
//! Enumeration grows graphs one vertex at a time. Each representative on
//! `n - 1` vertices is extended by a new vertex with every possible
//! neighbourhood; the result is canonically relabeled and kept if its form is
//! new. Connected-only runs extend connected representatives only.

use std::collections::HashSet;
use std::io::BufRead;

use thiserror::Error;

use crate::canon::canonical_graph;
use crate::graph::{Graph, VertexSet};
use crate::graph6::{parse_graph6, Graph6Error};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("built-in enumeration supports 1 <= n_min <= n_max <= {max}, got {n_min}..={n_max}", max = EnumSpec::BUILTIN_MAX_N)]
    Capacity { n_min: usize, n_max: usize },
    #[error("edge window {m_min}..={m_max} is empty")]
    EmptyWindow { m_min: usize, m_max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub m_min: usize,
    /// `None` means no upper limit.
    pub m_max: Option<usize>,
    pub connected_only: bool,
}

impl EnumSpec {
    pub const BUILTIN_MAX_N: usize = 10;

    /// Connected graphs on `1..=n_max` vertices.
    pub fn connected_up_to(n_max: usize) -> Self {
        EnumSpec {
            n_min: 1,
            n_max,
            m_min: 0,
            m_max: None,
            connected_only: true,
        }
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        let m = g.m();
        (self.n_min..=self.n_max).contains(&g.n())
            && m >= self.m_min
            && self.m_max.is_none_or(|hi| m <= hi)
            && (!self.connected_only || g.is_connected())
    }

    fn validate(&self) -> Result<(), EnumError> {
        if self.n_min == 0 || self.n_min > self.n_max || self.n_max > Self::BUILTIN_MAX_N {
            return Err(EnumError::Capacity {
                n_min: self.n_min,
                n_max: self.n_max,
            });
        }
        if let Some(hi) = self.m_max {
            if hi < self.m_min {
                return Err(EnumError::EmptyWindow {
                    m_min: self.m_min,
                    m_max: hi,
                });
            }
        }
        Ok(())
    }
}

/// Lazily yields graphs level by level (by vertex count); each isomorphism
/// class in the window appears exactly once, canonically labeled.
pub struct GraphStream {
    spec: EnumSpec,
    level: Vec<Graph>,
    n: usize,
    cursor: usize,
}

pub fn enumerate_graphs(spec: &EnumSpec) -> Result<GraphStream, EnumError> {
    spec.validate()?;
    Ok(GraphStream {
        spec: spec.clone(),
        level: vec![crate::graph::named::empty(1)],
        n: 1,
        cursor: 0,
    })
}

impl GraphStream {
    fn next_level(&mut self) {
        let connected = self.spec.connected_only;
        let m_max = self.spec.m_max;
        let n = self.n;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for parent in &self.level {
            // Edge counts only grow under augmentation.
            if m_max.is_some_and(|hi| parent.m() > hi) {
                continue;
            }
            let first = if connected { 1u64 } else { 0 };
            for bits in first..(1u64 << n) {
                let mut g = parent.clone();
                let v = g.add_vertex().expect("n below capacity");
                for w in VertexSet::from_bits(bits) {
                    g.add_edge(v, w);
                }
                let canon = canonical_graph(&g);
                if seen.insert(canon.clone()) {
                    next.push(canon);
                }
            }
        }
        self.level = next;
        self.n += 1;
        self.cursor = 0;
    }
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if self.n > self.spec.n_max {
                return None;
            }
            if self.n >= self.spec.n_min {
                while self.cursor < self.level.len() {
                    let g = &self.level[self.cursor];
                    self.cursor += 1;
                    if self.spec.accepts(g) {
                        return Some(g.clone());
                    }
                }
            }
            if self.n == self.spec.n_max {
                self.n += 1;
                return None;
            }
            self.next_level();
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error("line {line}: read failed: {message}")]
    Io { line: usize, message: String },
}

impl IngestError {
    pub fn line(&self) -> usize {
        match self {
            IngestError::Parse { line, .. } | IngestError::Io { line, .. } => *line,
        }
    }
}

/// Parses newline-delimited graph6. Yields each graph with its 1-based line
/// number; the first error ends the stream.
pub fn ingest_graph6<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = Result<(usize, Graph), IngestError>> {
    let mut lines = reader.split(b'\n').enumerate();
    let mut failed = false;
    std::iter::from_fn(move || {
        if failed {
            return None;
        }
        let (idx, line) = lines.next()?;
        let line_no = idx + 1;
        let item = match line {
            Err(e) => Err(IngestError::Io {
                line: line_no,
                message: e.to_string(),
            }),
            Ok(mut bytes) => {
                if bytes.last() == Some(&b'\r') {
                    bytes.pop();
                }
                parse_graph6(&bytes)
                    .map(|g| (line_no, g))
                    .map_err(|source| IngestError::Parse {
                        line: line_no,
                        source,
                    })
            }
        };
        failed = item.is_err();
        Some(item)
    })
}
