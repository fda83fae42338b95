use std::process::ExitCode;

use serde_json::Value;

/// Text and JSON renderings of one command's result.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Self { text, json, code: 0, warnings: Vec::new() }
    }

    pub fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }

    pub fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }

    pub fn emit(self, machine: bool) -> ExitCode {
        for w in &self.warnings {
            eprintln!("warning: {w}");
        }
        if machine {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("json"));
        } else {
            print!("{}", self.text);
            if !self.text.ends_with('\n') {
                println!();
            }
        }
        ExitCode::from(self.code)
    }
}
