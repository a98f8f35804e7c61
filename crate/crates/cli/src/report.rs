// SPDX-License-Identifier: Apache-2.0

//! JSON-lines run reports.

use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Default, Serialize)]
pub struct Counters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
}

/// One line of output.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_digest: Option<String>,
    #[serde(flatten)]
    pub body: Map<String, Value>,
    pub counters: Counters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// Writes reports to the output sink, stamping the command echo and, with
/// `--timing`, the time since the previous line.
pub struct Emitter {
    out: Box<dyn Write>,
    command: String,
    timing: bool,
    last: Instant,
}

impl Emitter {
    pub fn new(out: Box<dyn Write>, command: String, timing: bool) -> Self {
        Emitter {
            out,
            command,
            timing,
            last: Instant::now(),
        }
    }

    pub fn report(&mut self) -> ReportBuilder {
        ReportBuilder(RunReport {
            command: self.command.clone(),
            instance_digest: None,
            body: Map::new(),
            counters: Counters::default(),
            pass: None,
            wall_ms: None,
        })
    }

    pub fn emit(&mut self, ReportBuilder(mut r): ReportBuilder) -> Result<()> {
        if self.timing {
            let now = Instant::now();
            r.wall_ms = Some(now.duration_since(self.last).as_secs_f64() * 1e3);
            self.last = now;
        }
        serde_json::to_writer(&mut self.out, &r)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    /// Writes raw text (graph files).
    pub fn raw(&mut self, text: &str) -> Result<()> {
        self.out.write_all(text.as_bytes())?;
        if !text.ends_with('\n') {
            self.out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

pub struct ReportBuilder(RunReport);

impl ReportBuilder {
    pub fn digest(mut self, d: String) -> Self {
        self.0.instance_digest = Some(d);
        self
    }

    pub fn field(mut self, key: &str, v: impl Serialize) -> Result<Self> {
        self.0.body.insert(key.to_string(), serde_json::to_value(v)?);
        Ok(self)
    }

    /// Merges the fields of a serializable struct.
    pub fn merge(mut self, v: impl Serialize) -> Result<Self> {
        if let Value::Object(m) = serde_json::to_value(v)? {
            self.0.body.extend(m);
        }
        Ok(self)
    }

    pub fn counters(mut self, c: Counters) -> Self {
        self.0.counters = c;
        self
    }

    pub fn pass(mut self, p: bool) -> Self {
        self.0.pass = Some(p);
        self
    }
}
