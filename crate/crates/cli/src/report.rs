use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

/// What a command prints, in all three formats, and whether it found
/// what it was checking.
pub struct Report {
    pub pretty: String,
    pub json: Value,
    pub csv: Vec<String>,
    pub ok: bool,
}

impl Report {
    pub fn new(pretty: String, json: Value, csv: Vec<String>) -> Self {
        Report { pretty, json, csv, ok: true }
    }

    pub fn with_ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Pretty => self.pretty.trim_end().to_string(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json values serialize"),
            Format::Csv => self.csv.join("\n"),
        }
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
