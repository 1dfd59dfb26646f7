use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use lefschetz_core::rollercoaster::{
    certificate_check, default_pair_range, epsilon_bound, pair_order_violations, ratio_condition, target_sequence,
    upper_half, Certificate, Permutation,
};
use serde::Serialize;

use crate::output::{join, write_timings, Report, Timings};
use crate::CommonArgs;

#[derive(Args, Debug)]
pub struct RollercoasterArgs {
    /// Sequence length q ≥ 2.
    #[arg(long)]
    q: usize,
    /// Images of ⌈q/2⌉, …, q in order, e.g. "5 3 4" (default: identity).
    #[arg(long, value_name = "IMAGES")]
    pi: Option<String>,
    /// Pair-order range `LO..HI` (inclusive) instead of ⌊q/2⌋+2..q.
    #[arg(long, value_name = "LO..HI", value_parser = parse_range)]
    range: Option<RangeInclusive<usize>>,
    /// JSON certificate `{"graph": {"n", "edges"}, "T": "p/q", "epsilon": "p/q"}` to verify.
    #[arg(long, value_name = "FILE")]
    certificate: Option<PathBuf>,
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = text.split_once("..").ok_or("expected LO..HI")?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    Ok(lo..=hi)
}

/// Big integers are written as decimal strings to stay exact in every JSON reader.
#[derive(Debug, Serialize)]
pub struct RollercoasterReport {
    config: Config,
    sequence: Vec<String>,
    c: String,
    ratio_condition: bool,
    epsilon: Epsilon,
    pair_order: PairOrder,
    certificate: Option<CertificateVerdict>,
    timings: Timings,
}

#[derive(Debug, Serialize)]
struct Config {
    command: &'static str,
    q: usize,
    pi_domain: (usize, usize),
    pi: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct Epsilon {
    bound: Option<String>,
    zero_pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize)]
struct PairOrder {
    range: (usize, usize),
    holds: bool,
    violations: Vec<Violation>,
}

#[derive(Debug, Serialize)]
struct Violation {
    k: usize,
    l: usize,
    sum_k: String,
    sum_l: String,
    /// `k + l = q + 1`: the two pair sums are the same sum.
    tie: bool,
}

#[derive(Debug, Serialize)]
struct CertificateVerdict {
    path: String,
    holds: bool,
}

pub fn run(args: &RollercoasterArgs, common: &CommonArgs) -> anyhow::Result<RollercoasterReport> {
    let mut timings = Timings::new(common.timings);
    if args.q < 2 {
        bail!("--q must be at least 2");
    }
    let half = upper_half(args.q);
    let pi = match &args.pi {
        Some(text) => Permutation::parse(*half.start(), text).context("parsing --pi")?,
        None => Permutation::identity(half),
    };
    let target = target_sequence(args.q, &pi)?;
    let ratio = ratio_condition(&target.a);

    // An all-equal set of pair sums (q = 2, 3) leaves no bound to report.
    let epsilon = match epsilon_bound(&target.a) {
        Ok(e) => Epsilon { bound: Some(e.bound.to_string()), zero_pairs: e.zero_pairs },
        Err(lefschetz_core::Error::DegenerateSequence) => Epsilon { bound: None, zero_pairs: vec![] },
        Err(e) => return Err(e.into()),
    };

    let range = args.range.clone().unwrap_or_else(|| default_pair_range(args.q));
    let violations: Vec<Violation> = pair_order_violations(&target.a, &pi, range.clone())?
        .into_iter()
        .map(|v| Violation { k: v.k, l: v.l, sum_k: v.sum_k.to_string(), sum_l: v.sum_l.to_string(), tie: v.tie })
        .collect();

    let certificate = match &args.certificate {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cert: Certificate =
                serde_json::from_str(&text).with_context(|| format!("parsing certificate {}", path.display()))?;
            let cert = Certificate::new(cert.graph, cert.scale, cert.epsilon)?;
            Some(CertificateVerdict { path: path.display().to_string(), holds: certificate_check(&cert, &target.a)? })
        }
        None => None,
    };
    timings.lap("total");

    Ok(RollercoasterReport {
        config: Config {
            command: "rollercoaster",
            q: args.q,
            pi_domain: (*pi.domain().start(), *pi.domain().end()),
            pi: pi.images().to_vec(),
        },
        sequence: target.a.iter().map(ToString::to_string).collect(),
        c: target.c.to_string(),
        ratio_condition: ratio,
        epsilon,
        pair_order: PairOrder { range: (*range.start(), *range.end()), holds: violations.is_empty(), violations },
        certificate,
        timings,
    })
}

impl Report for RollercoasterReport {
    fn write_text(&self, w: &mut dyn Write) -> io::Result<()> {
        let (lo, hi) = self.config.pi_domain;
        writeln!(w, "q = {}, pi on {lo}..{hi}: {}", self.config.q, join(&self.config.pi, " "))?;
        writeln!(w, "a = ({})", self.sequence.join(", "))?;
        writeln!(w, "c = {}", self.c)?;
        writeln!(w, "ratio condition: {}", self.ratio_condition)?;
        match &self.epsilon.bound {
            Some(b) => writeln!(w, "epsilon bound: {b}")?,
            None => writeln!(w, "epsilon bound: none (all pair sums equal)")?,
        }
        for (k, l) in &self.epsilon.zero_pairs {
            writeln!(w, "  equal pair sums: {k}, {l}")?;
        }
        let (lo, hi) = self.pair_order.range;
        writeln!(w, "pair order on {lo}..{hi}: {}", self.pair_order.holds)?;
        for v in &self.pair_order.violations {
            let tie = if v.tie { " (same pair)" } else { "" };
            writeln!(w, "  k={} l={}: {} vs {}{tie}", v.k, v.l, v.sum_k, v.sum_l)?;
        }
        if let Some(c) = &self.certificate {
            writeln!(w, "certificate {}: {}", c.path, c.holds)?;
        }
        write_timings(w, &self.timings)
    }

    fn write_csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()> {
        w.write_record(["i", "a_i"])?;
        for (i, a) in self.sequence.iter().enumerate() {
            w.write_record([(i + 1).to_string(), a.clone()])?;
        }
        Ok(())
    }
}
