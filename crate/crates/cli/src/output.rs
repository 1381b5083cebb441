use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// What a subcommand produced. `pass` selects exit code 0 or 1.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub latex: Option<String>,
    pub pass: bool,
}

impl Report {
    pub fn new(pass: bool, json: Value) -> Report {
        Report { text: String::new(), json, latex: None, pass }
    }

    /// Appends a `key: value` line to the text form.
    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.text, "{key}: {value}");
        self
    }

    pub fn raw(&mut self, s: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.text, "{s}");
        self
    }

    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Text => Some(self.text.clone()),
            Format::Json => Some(serde_json::to_string_pretty(&self.json).expect("reports serialize") + "\n"),
            Format::Latex => self.latex.clone(),
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
