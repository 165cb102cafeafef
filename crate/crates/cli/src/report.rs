//! Report assembly and rendering. Reports are deterministic byte for byte
//! given the same document and options.

use hdet_core::exact::RatFun;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Md,
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "md" => Some(Format::Md),
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Section {
    pub title: String,
    pub lines: Vec<(String, String)>,
    pub conflicts: Vec<String>,
    pub error: Option<String>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn line(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    pub fn conflict(&mut self, message: impl Into<String>) {
        self.conflicts.push(message.into());
    }

    /// Series in canonical form plus the factored display when an exact
    /// factorization over (1 -+ t^k) factors exists.
    pub fn series_line(&mut self, key: &str, f: &RatFun) {
        self.line(key, f.to_string());
        if let Some(fac) = f.pm_factorization() {
            self.line(format!("{key} (factored)"), fac.to_string());
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.render_md(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_md(&self) -> String {
        let mut out = String::from("# hdet report\n");
        for (k, v) in &self.header {
            out.push_str(&format!("- {k}: {v}\n"));
        }
        for s in &self.sections {
            out.push_str(&format!("\n## {}\n", s.title));
            for (k, v) in &s.lines {
                out.push_str(&format!("- {k}: {v}\n"));
            }
            for c in &s.conflicts {
                out.push_str(&format!("- CONFLICT: {c}\n"));
            }
            if let Some(e) = &s.error {
                out.push_str(&format!("- ERROR: {e}\n"));
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let sections: Vec<serde_json::Value> = self
            .sections
            .iter()
            .map(|s| {
                serde_json::json!({
                    "title": s.title,
                    "lines": s.lines.iter().map(|(k, v)| serde_json::json!([k, v])).collect::<Vec<_>>(),
                    "conflicts": s.conflicts,
                    "error": s.error,
                })
            })
            .collect();
        let value = serde_json::json!({
            "header": self.header.iter().map(|(k, v)| serde_json::json!([k, v])).collect::<Vec<_>>(),
            "sections": sections,
        });
        serde_json::to_string_pretty(&value).expect("report serializes") + "\n"
    }

    fn render_csv(&self) -> String {
        let esc = |s: &str| -> String {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = String::from("section,key,value\n");
        for (k, v) in &self.header {
            out.push_str(&format!(",{},{}\n", esc(k), esc(v)));
        }
        for s in &self.sections {
            for (k, v) in &s.lines {
                out.push_str(&format!("{},{},{}\n", esc(&s.title), esc(k), esc(v)));
            }
            for c in &s.conflicts {
                out.push_str(&format!("{},CONFLICT,{}\n", esc(&s.title), esc(c)));
            }
            if let Some(e) = &s.error {
                out.push_str(&format!("{},ERROR,{}\n", esc(&s.title), esc(e)));
            }
        }
        out
    }
}
