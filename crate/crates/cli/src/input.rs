use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{ArgGroup, Args};
use lefschetz_core::graphs::{parse_graph, Generator};
use lefschetz_core::{parse_complex, Graph, SimplicialComplex};
use serde::Serialize;

/// Where the graph or complex comes from.
#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("source").required(true)))]
pub struct InputArgs {
    /// Edge-list file: a header `n m`, then `m` lines `u v`.
    #[arg(long, group = "source", value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Named graph, e.g. `complete:5,minus-edge`, `star:5`, `broom:3`.
    #[arg(long, group = "source", value_name = "SPEC")]
    pub generator: Option<Generator>,
    /// Facet-list file: a header `m s`, then `s` lines of vertex labels.
    #[arg(long, group = "source", value_name = "FILE")]
    pub complex: Option<PathBuf>,
}

pub enum Input {
    Graph(Graph),
    Complex(SimplicialComplex),
}

/// How the input is echoed in reports.
#[derive(Debug, Serialize)]
pub struct InputSummary {
    pub source: String,
    pub vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<usize>>>,
    pub whiskered: bool,
}

impl InputArgs {
    pub fn load(&self) -> anyhow::Result<(Input, String)> {
        if let Some(spec) = &self.generator {
            return Ok((Input::Graph(spec.build()?), format!("generator:{spec}")));
        }
        if let Some(path) = &self.graph {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let g = parse_graph(&text).with_context(|| format!("in {}", path.display()))?;
            return Ok((Input::Graph(g), format!("graph:{}", path.display())));
        }
        if let Some(path) = &self.complex {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let c = parse_complex(&text).with_context(|| format!("in {}", path.display()))?;
            return Ok((Input::Complex(c), format!("complex:{}", path.display())));
        }
        unreachable!("clap requires one input source")
    }
}

impl Input {
    pub fn summary(&self, source: String, whiskered: bool) -> InputSummary {
        match self {
            Input::Graph(g) => InputSummary {
                source,
                vertices: g.vertex_count(),
                edges: Some(g.edges().collect()),
                facets: None,
                whiskered,
            },
            Input::Complex(c) => InputSummary {
                source,
                vertices: c.vertex_count(),
                edges: None,
                facets: Some(c.facets().iter().map(|f| f.iter().collect()).collect()),
                whiskered,
            },
        }
    }
}

/// Expands `--caps`: nothing means all 2, a single value is repeated.
pub fn expand_caps(caps: &[u8], n: usize) -> anyhow::Result<Vec<u8>> {
    match caps.len() {
        0 => Ok(vec![2; n]),
        1 => Ok(vec![caps[0]; n]),
        k if k == n => Ok(caps.to_vec()),
        k => bail!("--caps lists {k} values for {n} vertices"),
    }
}

/// Refusal threshold on the size of the algebra.
#[derive(Args, Debug, Clone)]
pub struct SizeArgs {
    /// Largest graded piece (in monomials) accepted without --force.
    #[arg(long, default_value_t = 50_000, value_name = "N")]
    pub max_monomials: u64,
    /// Proceed even when the size estimate exceeds --max-monomials.
    #[arg(long)]
    pub force: bool,
}

/// Highest possible degree count; caps are at most 255 on at most 64 vertices,
/// but a face of size k always contributes the squarefree monomial of degree k.
const MAX_FACE_SIZES: u64 = 65;

impl SizeArgs {
    /// Face budget: beyond it some face size, and hence some graded piece,
    /// exceeds the monomial cap.
    pub fn face_budget(&self) -> u64 {
        self.max_monomials.saturating_mul(MAX_FACE_SIZES)
    }

    /// Turns a bounded face count into a refusal.
    pub fn check_faces(&self, count: Option<u64>) -> anyhow::Result<()> {
        if count.is_none() && !self.force {
            bail!(
                "refusing: the complex has more than {} faces, so some graded piece exceeds {} monomials \
                 (use --force to proceed anyway)",
                self.face_budget(),
                self.max_monomials
            );
        }
        Ok(())
    }

    /// Refuses when the predicted Hilbert function peaks above the cap.
    pub fn check_hilbert(&self, predicted: &[u64]) -> anyhow::Result<()> {
        let (degree, &peak) = predicted.iter().enumerate().max_by_key(|&(_, h)| *h).unwrap_or((0, &0));
        if peak > self.max_monomials && !self.force {
            bail!(
                "refusing: estimated largest graded piece is {peak} monomials in degree {degree}, \
                 above the cap of {} (use --force to proceed anyway)",
                self.max_monomials
            );
        }
        Ok(())
    }
}
