use std::io::{self, Write};

use anyhow::bail;
use clap::Args;
use lefschetz_core::lefschetz::{MapRecord, MapStatus};
use lefschetz_core::perazzo::{
    apolarity_dims, gorenstein_wlp_report, idealization_hilbert, perazzo_report, perazzo_wlp_predicate,
    simplicial_form, IdealizationHilbert, PerazzoReport, PerazzoWlpPrediction, GORENSTEIN_CHECK_MAX_VERTICES,
};
use lefschetz_core::SimplicialComplex;
use serde::Serialize;

use crate::input::{Input, InputArgs, InputSummary, SizeArgs};
use crate::output::{join, write_timings, Report, Timings};
use crate::CommonArgs;

/// Catalecticant computations beyond this many facets need --force.
const APOLARITY_MAX_FACETS: usize = 64;
/// Forms with more terms than this are reported without their expansion.
const MAX_PRINTED_TERMS: usize = 64;

#[derive(Args, Debug)]
pub struct PerazzoArgs {
    /// A graph G (the form is built from Ind(w(G))) or a pure complex used as is.
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    size: SizeArgs,
}

#[derive(Debug, Serialize)]
pub struct PerazzoCliReport {
    input: InputSummary,
    config: Config,
    form: FormSummary,
    perazzo: PerazzoReport,
    idealization: IdealizationHilbert,
    apolarity: Apolarity,
    wlp: WlpVerdict,
    timings: Timings,
}

#[derive(Debug, Serialize)]
struct Config {
    command: &'static str,
    max_monomials: u64,
    force: bool,
}

#[derive(Debug, Serialize)]
struct FormSummary {
    x_count: usize,
    u_count: usize,
    degree: usize,
    terms: usize,
    polynomial: Option<String>,
}

/// Catalecticant ranks of the form against the idealization Hilbert function.
#[derive(Debug, Serialize)]
struct Apolarity {
    computed: bool,
    h: Option<Vec<usize>>,
    matches_idealization: Option<bool>,
}

#[derive(Debug, Serialize)]
struct WlpVerdict {
    /// `"fails"`, `"holds"` or `"unknown"`.
    verdict: &'static str,
    /// What the verdict rests on.
    basis: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<PerazzoWlpPrediction>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    deficient_maps: Vec<MapRecord>,
}

pub fn run(args: &PerazzoArgs, common: &CommonArgs) -> anyhow::Result<PerazzoCliReport> {
    let mut timings = Timings::new(common.timings);
    let (input, source) = args.input.load()?;
    let (complex, graph): (SimplicialComplex, _) = match &input {
        Input::Graph(g) => {
            let w = g.whisker()?;
            args.size.check_faces(w.count_independent_sets_up_to(args.size.face_budget()))?;
            (SimplicialComplex::independence_complex(&w), Some(g))
        }
        Input::Complex(c) => {
            args.size.check_faces(c.count_faces_up_to(args.size.face_budget()))?;
            (c.clone(), None)
        }
    };
    if !complex.is_pure() {
        bail!("the complex is not pure, so it has no simplicial Perazzo form");
    }
    let form = simplicial_form(&complex)?;
    let idealization = idealization_hilbert(&complex)?;
    args.size.check_hilbert(&idealization.h)?;
    let perazzo = perazzo_report(&complex)?;
    timings.lap("perazzo");

    let small = complex.facets().len() <= APOLARITY_MAX_FACETS || args.size.force;
    let apolarity = if small {
        let h = apolarity_dims(&form)?;
        let matches = h.iter().map(|&x| x as u64).eq(idealization.h.iter().copied());
        Apolarity { computed: true, h: Some(h), matches_idealization: Some(matches) }
    } else {
        Apolarity { computed: false, h: None, matches_idealization: None }
    };
    timings.lap("apolarity");

    let prediction = match graph {
        Some(g) => perazzo_wlp_predicate(g)?,
        None => None,
    };
    let wlp = if let Some(p) = prediction {
        let deficient_maps = p.gorenstein_failure.iter().cloned().collect();
        WlpVerdict {
            verdict: "fails",
            basis: Some("independence-number criterion"),
            prediction: Some(p),
            deficient_maps,
        }
    } else if args.size.force || (small && complex.vertex_count() <= 2 * GORENSTEIN_CHECK_MAX_VERTICES) {
        let report = gorenstein_wlp_report(&form)?;
        WlpVerdict {
            verdict: if report.wlp { "holds" } else { "fails" },
            basis: Some("gorenstein ranks"),
            prediction: None,
            deficient_maps: report.maps.into_iter().filter(|m| m.status == MapStatus::Deficient).collect(),
        }
    } else {
        WlpVerdict { verdict: "unknown", basis: None, prediction: None, deficient_maps: vec![] }
    };
    timings.lap("wlp");

    Ok(PerazzoCliReport {
        input: input.summary(source, graph.is_some()),
        config: Config { command: "perazzo", max_monomials: args.size.max_monomials, force: args.size.force },
        form: FormSummary {
            x_count: form.x_count(),
            u_count: form.u_count(),
            degree: form.degree(),
            terms: form.terms().len(),
            polynomial: (form.terms().len() <= MAX_PRINTED_TERMS).then(|| form.to_string()),
        },
        perazzo,
        idealization,
        apolarity,
        wlp,
        timings,
    })
}

impl Report for PerazzoCliReport {
    fn write_text(&self, w: &mut dyn Write) -> io::Result<()> {
        let kind = if self.input.whiskered { ", whiskered" } else { "" };
        writeln!(w, "input: {} ({} vertices{kind})", self.input.source, self.input.vertices)?;
        writeln!(
            w,
            "form: degree {} in {} x and {} u variables, {} terms",
            self.form.degree, self.form.x_count, self.form.u_count, self.form.terms
        )?;
        if let Some(p) = &self.form.polynomial {
            writeln!(w, "  F = {p}")?;
        }
        let p = &self.perazzo;
        writeln!(
            w,
            "perazzo: {} ({} facets on {} vertices, log rank {}, xL^d rank {})",
            p.is_perazzo, p.facets, p.vertices, p.log_rank, p.mult_rank
        )?;
        writeln!(w, "idealization hilbert (d = {}): {}", self.idealization.d, join(&self.idealization.h, " "))?;
        match (&self.apolarity.h, self.apolarity.matches_idealization) {
            (Some(h), Some(ok)) => {
                writeln!(w, "apolarity: {} ({})", join(h, " "), if ok { "matches" } else { "MISMATCH" })?
            }
            _ => writeln!(w, "apolarity: skipped (more than {APOLARITY_MAX_FACETS} facets; use --force)")?,
        }
        match self.wlp.basis {
            Some(basis) => writeln!(w, "WLP: {} ({basis})", self.wlp.verdict)?,
            None => writeln!(w, "WLP: {}", self.wlp.verdict)?,
        }
        for m in &self.wlp.deficient_maps {
            writeln!(w, "  xL: A_{} -> A_{}  {}x{}  rank {}", m.degree, m.degree + 1, m.dims.0, m.dims.1, m.rank)?;
        }
        write_timings(w, &self.timings)
    }

    fn write_csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(["degree", "idealization_h", "apolarity_h"])?;
        for (i, h) in self.idealization.h.iter().enumerate() {
            let apolar = self.apolarity.h.as_ref().map_or(String::new(), |a| a[i].to_string());
            w.write_record([i.to_string(), h.to_string(), apolar])?;
        }
        Ok(())
    }
}
