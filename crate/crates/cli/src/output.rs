//! Rendering of reports as JSON or CSV, and all-or-nothing file output.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::Value;

/// Plot-ready rows with a header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }
}

fn quote(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Shortest round-trip decimal form with `.` as separator.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "+inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:?}")
    }
}

/// Leaf values of a JSON document as `key,value` rows, keys as dotted paths.
pub fn flatten(v: &Value) -> Table {
    fn walk(prefix: &str, v: &Value, t: &mut Table) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, v)| walk(&key(k), v, t)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| walk(&key(&i.to_string()), v, t)),
            Value::String(s) => t.push(vec![prefix.to_string(), s.clone()]),
            Value::Null => t.push(vec![prefix.to_string(), String::new()]),
            other => t.push(vec![prefix.to_string(), other.to_string()]),
        }
    }
    let mut t = Table::new(&["key", "value"]);
    walk("", v, &mut t);
    t
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// A file to be written once every output is ready; `None` is stdout.
pub struct Pending {
    pub path: Option<PathBuf>,
    pub contents: String,
}

fn temp_path(path: &Path) -> PathBuf {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!(".{name}.{}.tmp", std::process::id()))
}

/// Writes every file through a temporary sibling and renames them in place
/// only after all temporaries are complete.
pub fn commit(files: Vec<Pending>) -> io::Result<()> {
    let mut staged = Vec::new();
    let mut stdout = Vec::new();
    let result = (|| {
        for f in files {
            match f.path {
                None => stdout.push(f.contents),
                Some(p) => {
                    let tmp = temp_path(&p);
                    staged.push((tmp.clone(), p));
                    fs::write(&tmp, f.contents)?;
                }
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        for (tmp, _) in &staged {
            let _ = fs::remove_file(tmp);
        }
        return Err(e);
    }
    for (tmp, p) in &staged {
        if let Err(e) = fs::rename(tmp, p) {
            for (t, _) in &staged {
                let _ = fs::remove_file(t);
            }
            return Err(e);
        }
    }
    let mut out = io::stdout().lock();
    for s in stdout {
        out.write_all(s.as_bytes())?;
    }
    out.flush()
}
