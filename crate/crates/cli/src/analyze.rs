use std::collections::BTreeMap;
use std::io::{self, Write};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use lefschetz_core::lefschetz::{
    alpha_criterion, non_surjectivity_witness_in, predicted_hilbert_function, slp_check_over, wlp_check_over, Failure,
    MapStatus,
};
use lefschetz_core::{Field, GradedMonomialAlgebra, SimplicialComplex, VertexSet};
use serde::Serialize;

use crate::input::{expand_caps, Input, InputArgs, InputSummary, SizeArgs};
use crate::output::{join, write_timings, Report, Timings};
use crate::CommonArgs;

/// Witnesses with more terms than this are reported without their expansion.
const MAX_PRINTED_TERMS: usize = 256;

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Use the whiskered graph w(G) (graph inputs only).
    #[arg(long)]
    whisker: bool,
    /// Exponent caps d_i ≥ 2, comma-separated; a single value applies to every vertex.
    #[arg(long, value_delimiter = ',', value_name = "D,...")]
    caps: Vec<u8>,
    /// Test the weak Lefschetz property (the default when neither test is chosen).
    #[arg(long)]
    wlp: bool,
    /// Test the strong Lefschetz property: every power of L.
    #[arg(long)]
    slp: bool,
    /// Build non-surjectivity witnesses: for one maximum independent set, or for every maximal one.
    #[arg(long, value_enum, value_name = "MODE")]
    witness: Option<WitnessMode>,
    /// Field characteristic: 0 for the rationals or a prime below 2^32.
    #[arg(long = "char", default_value_t = 0, value_name = "P")]
    characteristic: u64,
    #[command(flatten)]
    size: SizeArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessMode {
    Auto,
    List,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    input: InputSummary,
    config: Config,
    hilbert: Vec<usize>,
    maps: Vec<MapRow>,
    verdicts: Verdicts,
    witnesses: Vec<WitnessRow>,
    timings: Timings,
}

#[derive(Debug, Serialize)]
struct Config {
    command: &'static str,
    caps: Vec<u8>,
    characteristic: u64,
    wlp: bool,
    slp: bool,
    witness: Option<WitnessMode>,
    jobs: usize,
    max_monomials: u64,
    force: bool,
}

#[derive(Debug, Serialize)]
struct MapRow {
    i: usize,
    s: usize,
    dims: (usize, usize),
    rank: usize,
    status: MapStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<Failure>,
}

#[derive(Debug, Serialize)]
struct Verdicts {
    wlp: bool,
    slp: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_criterion: Option<AlphaCriterion>,
}

/// Degrees `i` where `×L: A_{i-1} -> A_i` must fail to be surjective, and
/// whether the computed maps agree.
#[derive(Debug, Serialize)]
struct AlphaCriterion {
    degrees: Vec<usize>,
    confirmed: bool,
}

#[derive(Debug, Serialize)]
struct WitnessRow {
    independent_set: Vec<usize>,
    degree: usize,
    terms: usize,
    polynomial: Option<String>,
    annihilated_by_l: bool,
    rank_confirmed: bool,
}

pub fn run(args: &AnalyzeArgs, common: &CommonArgs, jobs: usize) -> anyhow::Result<AnalyzeReport> {
    let mut timings = Timings::new(common.timings);
    let field = Field::from_characteristic(args.characteristic)?;
    let (input, source) = args.input.load()?;

    let (alg, graph, caps) = match &input {
        Input::Graph(g) if args.whisker => {
            let caps = expand_caps(&args.caps, g.vertex_count())?;
            let w = g.whisker()?;
            args.size.check_faces(w.count_independent_sets_up_to(args.size.face_budget()))?;
            let doubled: Vec<u8> = caps.iter().chain(&caps).copied().collect();
            let complex = SimplicialComplex::independence_complex(&w);
            args.size.check_hilbert(&predicted_hilbert_function(&complex, &doubled)?)?;
            (GradedMonomialAlgebra::whiskered(g, &caps)?, Some(g), caps)
        }
        Input::Graph(g) => {
            let caps = expand_caps(&args.caps, g.vertex_count())?;
            args.size.check_faces(g.count_independent_sets_up_to(args.size.face_budget()))?;
            let complex = SimplicialComplex::independence_complex(g);
            args.size.check_hilbert(&predicted_hilbert_function(&complex, &caps)?)?;
            (GradedMonomialAlgebra::build(complex, &caps)?, None, caps)
        }
        Input::Complex(c) => {
            if args.whisker {
                bail!("--whisker needs a graph input");
            }
            let caps = expand_caps(&args.caps, c.vertex_count())?;
            args.size.check_faces(c.count_faces_up_to(args.size.face_budget()))?;
            args.size.check_hilbert(&predicted_hilbert_function(c, &caps)?)?;
            (GradedMonomialAlgebra::build(c.clone(), &caps)?, None, caps)
        }
    };
    timings.lap("build");

    let report = if args.slp { slp_check_over(&alg, field)? } else { wlp_check_over(&alg, field)? };
    timings.lap("ranks");

    let squarefree_whisker = graph.filter(|_| caps.iter().all(|&d| d == 2));
    let alpha = squarefree_whisker.and_then(alpha_criterion).map(|range| {
        let failing = report.surjectivity_failures();
        let degrees: Vec<usize> = range.collect();
        let confirmed = degrees.iter().all(|i| failing.contains(i));
        AlphaCriterion { degrees, confirmed }
    });

    let witnesses = match (args.witness, graph) {
        (None, _) => vec![],
        (Some(_), None) => bail!("--witness needs a graph input with --whisker"),
        (Some(mode), Some(g)) => {
            if squarefree_whisker.is_none() {
                bail!("--witness needs every cap equal to 2");
            }
            let sets: Vec<VertexSet> = match mode {
                WitnessMode::List => g.maximal_independent_sets(),
                WitnessMode::Auto => {
                    let alpha = g.independence_number();
                    g.maximal_independent_sets().into_iter().filter(|s| s.len() == alpha).take(1).collect()
                }
            };
            let mut confirmed_at: BTreeMap<usize, bool> = BTreeMap::new();
            let mut rows = vec![];
            for c in sets {
                let w = non_surjectivity_witness_in(&alg, g, c)
                    .with_context(|| format!("witness for {{{}}}", join(&c.iter().collect::<Vec<_>>(), ",")))?;
                let rank_confirmed = *confirmed_at.entry(w.degree).or_insert_with(|| w.confirm_rank(&alg));
                rows.push(WitnessRow {
                    independent_set: c.iter().collect(),
                    degree: w.degree,
                    terms: w.terms.len(),
                    polynomial: (w.terms.len() <= MAX_PRINTED_TERMS).then(|| w.display_with(alg.variable_names())),
                    annihilated_by_l: true,
                    rank_confirmed,
                });
            }
            rows
        }
    };
    timings.lap("witnesses");

    let maps = report
        .maps
        .iter()
        .map(|m| MapRow {
            i: m.degree,
            s: m.shift,
            dims: m.dims,
            rank: m.rank,
            status: m.status,
            failures: m.failures.clone(),
        })
        .collect();
    Ok(AnalyzeReport {
        input: input.summary(source, args.whisker),
        config: Config {
            command: "analyze",
            caps,
            characteristic: field.characteristic(),
            wlp: args.wlp || !args.slp,
            slp: args.slp,
            witness: args.witness,
            jobs,
            max_monomials: args.size.max_monomials,
            force: args.size.force,
        },
        hilbert: report.hilbert,
        maps,
        verdicts: Verdicts { wlp: report.wlp, slp: report.slp, alpha_criterion: alpha },
        witnesses,
        timings,
    })
}

fn failure_text(failures: &[Failure]) -> String {
    failures
        .iter()
        .map(|f| match f {
            Failure::NotInjective => "not injective",
            Failure::NotSurjective => "not surjective",
        })
        .collect::<Vec<_>>()
        .join(", ")
}

impl Report for AnalyzeReport {
    fn write_text(&self, w: &mut dyn Write) -> io::Result<()> {
        let kind = if self.input.whiskered { ", whiskered" } else { "" };
        writeln!(w, "input: {} ({} vertices{kind})", self.input.source, self.input.vertices)?;
        let field = match self.config.characteristic {
            0 => "QQ".to_string(),
            p => format!("GF({p})"),
        };
        writeln!(w, "field: {field}  caps: {}", join(&self.config.caps, ","))?;
        writeln!(w, "hilbert: {}", join(&self.hilbert, " "))?;
        for m in &self.maps {
            let status = if m.failures.is_empty() {
                format!("{:?}", m.status).to_lowercase()
            } else {
                failure_text(&m.failures)
            };
            writeln!(
                w,
                "  xL^{}: A_{} -> A_{}  {}x{}  rank {}  {status}",
                m.s,
                m.i,
                m.i + m.s,
                m.dims.0,
                m.dims.1,
                m.rank
            )?;
        }
        writeln!(w, "WLP: {}", self.verdicts.wlp)?;
        if let Some(slp) = self.verdicts.slp {
            writeln!(w, "SLP: {slp}")?;
        }
        if let Some(a) = &self.verdicts.alpha_criterion {
            writeln!(
                w,
                "independence-number criterion: surjectivity must fail into degrees {} ({})",
                join(&a.degrees, ","),
                if a.confirmed { "confirmed" } else { "NOT confirmed" }
            )?;
        }
        for wit in &self.witnesses {
            writeln!(
                w,
                "witness C={{{}}} degree {}: {} terms, rank {}",
                join(&wit.independent_set, ","),
                wit.degree,
                wit.terms,
                if wit.rank_confirmed { "confirmed" } else { "NOT confirmed" }
            )?;
            if let Some(p) = &wit.polynomial {
                writeln!(w, "  f = {p}")?;
            }
        }
        write_timings(w, &self.timings)
    }

    fn write_csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(["i", "s", "source_dim", "target_dim", "rank", "status", "failures"])?;
        for m in &self.maps {
            w.write_record([
                m.i.to_string(),
                m.s.to_string(),
                m.dims.0.to_string(),
                m.dims.1.to_string(),
                m.rank.to_string(),
                format!("{:?}", m.status).to_lowercase(),
                failure_text(&m.failures),
            ])?;
        }
        Ok(())
    }
}
