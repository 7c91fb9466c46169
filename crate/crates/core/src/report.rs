//! Pass/fail reports for identity sweeps.

use std::fmt;

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, passed: bool, checked: usize) -> Self {
        CheckItem { name: name.into(), passed, checked, witness: None }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }
}

/// An ordered list of named checks. Reports compose by concatenation.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn single(item: CheckItem) -> Self {
        Report { items: vec![item] }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn merge(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn total_checked(&self) -> usize {
        self.items.iter().map(|i| i.checked).sum()
    }

    /// Records a plain boolean check.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, checked: usize, witness: impl FnOnce() -> String) {
        let w = if passed { None } else { Some(witness()) };
        self.push(CheckItem::new(name, passed, checked).with_witness(w));
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.items
                .iter()
                .map(|i| {
                    let mut m = serde_json::Map::new();
                    m.insert("name".into(), i.name.clone().into());
                    m.insert("passed".into(), i.passed.into());
                    m.insert("checked".into(), i.checked.into());
                    if let Some(w) = &i.witness {
                        m.insert("witness".into(), w.clone().into());
                    }
                    serde_json::Value::Object(m)
                })
                .collect(),
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            writeln!(
                f,
                "{} {} ({} checked){}",
                if i.passed { "PASS" } else { "FAIL" },
                i.name,
                i.checked,
                i.witness.as_deref().map(|w| format!(" — {w}")).unwrap_or_default()
            )?;
        }
        Ok(())
    }
}
