use std::io::{self, Write};

use anyhow::bail;
use clap::Args;
use lefschetz_core::graphs::nonisomorphic_graphs;
use lefschetz_core::lefschetz::wlp_check;
use lefschetz_core::{GradedMonomialAlgebra, Graph};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{join, write_timings, Report, Timings};
use crate::CommonArgs;

/// Exhaustive enumeration stops being a desk-scale job beyond this.
pub const MAX_SWEEP_VERTICES: usize = 7;

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Test every graph on 1..=N vertices (up to isomorphism); at most 7.
    #[arg(long, value_name = "N")]
    max_vertices: usize,
    /// Restrict to bipartite graphs.
    #[arg(long)]
    bipartite: bool,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    config: Config,
    sizes: Vec<SizeSummary>,
    counterexamples: Vec<Counterexample>,
    /// True when no graph with α ≥ 3 keeps the WLP after whiskering.
    holds: bool,
    timings: Timings,
}

#[derive(Debug, Serialize)]
struct Config {
    command: &'static str,
    max_vertices: usize,
    bipartite: bool,
    min_alpha: usize,
}

#[derive(Debug, Serialize)]
struct SizeSummary {
    n: usize,
    /// Isomorphism classes enumerated (after the bipartite filter).
    graphs: usize,
    /// Those with α ≥ 3.
    tested: usize,
    wlp_holders: usize,
}

#[derive(Debug, Serialize)]
struct Counterexample {
    n: usize,
    edges: Vec<(usize, usize)>,
    hilbert: Vec<usize>,
}

const MIN_ALPHA: usize = 3;

fn has_wlp_whiskered(g: &Graph) -> (bool, Vec<usize>) {
    let alg = GradedMonomialAlgebra::whiskered(g, &vec![2; g.vertex_count()]).expect("at most 7 vertices");
    let report = wlp_check(&alg);
    (report.wlp, report.hilbert)
}

pub fn run(args: &SweepArgs, common: &CommonArgs) -> anyhow::Result<SweepReport> {
    let mut timings = Timings::new(common.timings);
    if args.max_vertices > MAX_SWEEP_VERTICES {
        bail!(
            "refusing: --max-vertices {} is above {MAX_SWEEP_VERTICES}; exhaustive sweeps grow super-exponentially",
            args.max_vertices
        );
    }
    let mut sizes = vec![];
    let mut counterexamples = vec![];
    for n in 1..=args.max_vertices {
        let graphs: Vec<Graph> =
            nonisomorphic_graphs(n).into_iter().filter(|g| !args.bipartite || g.is_bipartite()).collect();
        let tested: Vec<&Graph> = graphs.iter().filter(|g| g.independence_number() >= MIN_ALPHA).collect();
        let holders: Vec<(&Graph, Vec<usize>)> = tested
            .par_iter()
            .filter_map(|g| {
                let (wlp, hilbert) = has_wlp_whiskered(g);
                wlp.then_some((*g, hilbert))
            })
            .collect();
        sizes.push(SizeSummary { n, graphs: graphs.len(), tested: tested.len(), wlp_holders: holders.len() });
        counterexamples.extend(holders.into_iter().map(|(g, hilbert)| Counterexample {
            n,
            edges: g.edges().collect(),
            hilbert,
        }));
    }
    timings.lap("sweep");
    Ok(SweepReport {
        config: Config {
            command: "sweep",
            max_vertices: args.max_vertices,
            bipartite: args.bipartite,
            min_alpha: MIN_ALPHA,
        },
        sizes,
        holds: counterexamples.is_empty(),
        counterexamples,
        timings,
    })
}

impl Report for SweepReport {
    fn write_text(&self, w: &mut dyn Write) -> io::Result<()> {
        let kind = if self.config.bipartite { "bipartite graphs" } else { "graphs" };
        writeln!(
            w,
            "sweep: {kind} on at most {} vertices, alpha >= {}",
            self.config.max_vertices, self.config.min_alpha
        )?;
        for s in &self.sizes {
            writeln!(w, "  n={}: {} classes, {} tested, {} keep the WLP", s.n, s.graphs, s.tested, s.wlp_holders)?;
        }
        for c in &self.counterexamples {
            let edges: Vec<String> = c.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            writeln!(w, "counterexample n={}: {} (hilbert {})", c.n, edges.join(" "), join(&c.hilbert, " "))?;
        }
        writeln!(w, "no counterexample: {}", self.holds)?;
        write_timings(w, &self.timings)
    }

    fn write_csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(["n", "graphs", "tested", "wlp_holders"])?;
        for s in &self.sizes {
            w.write_record([s.n.to_string(), s.graphs.to_string(), s.tested.to_string(), s.wlp_holders.to_string()])?;
        }
        Ok(())
    }
}
