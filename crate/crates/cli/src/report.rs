//! Report rendering. The body (everything after the `# generated_unix_ms:`
//! header line) is a pure function of the configuration and seed, so repeated
//! runs can be compared byte for byte.

use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub struct Report {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Key/value pairs rendered after the rows ("# key=value" in CSV).
    pub summary: Vec<(String, String)>,
    pub pass: bool,
}

impl Report {
    pub fn new(name: &'static str, columns: Vec<&'static str>) -> Self {
        Report {
            name,
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
            pass: true,
        }
    }

    pub fn row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summary(&mut self, key: &str, value: String) {
        self.summary.push((key.to_string(), value));
    }

    pub fn render(&self, format: Format) -> String {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        let mut out = format!("# generated_unix_ms: {stamp}\n");
        out.push_str(&self.render_body(format));
        out
    }

    pub fn render_body(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&format!(
            "# result={}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            })
            .collect();
        let summary: serde_json::Map<String, serde_json::Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let doc = serde_json::json!({
            "report": self.name,
            "rows": rows,
            "summary": summary,
            "result": if self.pass { "PASS" } else { "FAIL" },
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}
