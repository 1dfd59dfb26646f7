use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;

use crate::CommonArgs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command result that can be rendered in every output format.
///
/// JSON carries the whole report; CSV carries its main table.
pub trait Report: Serialize {
    fn write_text(&self, w: &mut dyn Write) -> io::Result<()>;
    fn write_csv(&self, w: &mut csv::Writer<&mut dyn Write>) -> csv::Result<()>;
}

pub fn emit<R: Report>(report: &R, common: &CommonArgs) -> anyhow::Result<()> {
    let mut sink: Box<dyn Write> = match &common.out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match common.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, report)?;
            writeln!(sink)?;
        }
        Format::Text => report.write_text(&mut sink)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *sink as &mut dyn Write);
            report.write_csv(&mut w)?;
            w.flush()?;
        }
    }
    sink.flush()?;
    Ok(())
}

/// Per-phase wall-clock times in milliseconds; serializes to `null` when disabled.
#[derive(Debug, Default)]
pub struct Timings {
    enabled: bool,
    phases: Vec<(&'static str, f64)>,
    last: Option<Instant>,
}

impl Timings {
    pub fn new(enabled: bool) -> Self {
        Timings { enabled, phases: vec![], last: Some(Instant::now()) }
    }

    /// Closes the current phase under `name`.
    pub fn lap(&mut self, name: &'static str) {
        let now = Instant::now();
        if let Some(start) = self.last.replace(now) {
            self.phases.push((name, (now - start).as_secs_f64() * 1e3));
        }
    }
}

impl Serialize for Timings {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        if !self.enabled {
            return s.serialize_none();
        }
        let mut map = s.serialize_map(Some(self.phases.len()))?;
        for (name, ms) in &self.phases {
            map.serialize_entry(name, &((ms * 1e3).round() / 1e3))?;
        }
        map.end()
    }
}

pub fn write_timings(w: &mut dyn Write, t: &Timings) -> io::Result<()> {
    if t.enabled {
        for (name, ms) in &t.phases {
            writeln!(w, "time {name}: {ms:.1} ms")?;
        }
    }
    Ok(())
}

pub fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
