//! Check reports: one record per verified identity, with a witness tuple
//! on failure.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

static PARALLELISM: AtomicUsize = AtomicUsize::new(1);

/// Worker threads used by exhaustive tuple checks.
pub fn set_parallelism(n: usize) {
    PARALLELISM.store(n.max(1), Ordering::Relaxed);
}

pub fn parallelism() -> usize {
    PARALLELISM.load(Ordering::Relaxed)
}

fn nth_tuple(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

/// Lexicographically first tuple in `dims` where `ok` is false.
pub fn first_failure<F>(dims: &[usize], ok: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let total: usize = dims.iter().product();
    let threads = parallelism().min(total.max(1));
    if threads <= 1 {
        return (0..total).map(|f| nth_tuple(dims, f)).find(|t| !ok(t));
    }
    let chunk = total.div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|k| {
                let ok = &ok;
                scope.spawn(move || {
                    (k * chunk..((k + 1) * chunk).min(total)).map(|f| nth_tuple(dims, f)).find(|t| !ok(t))
                })
            })
            .collect();
        // chunks are in order, so the first failing chunk holds the minimum
        handles.into_iter().filter_map(|h| h.join().expect("check worker panicked")).next()
    })
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report { subject: subject.into(), checks: Vec::new() }
    }

    pub fn record(&mut self, id: &str, anchor: &str, witness: Option<Vec<usize>>) {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.checks.push(Check { id: id.into(), anchor: anchor.into(), status, witness, note: None });
    }

    /// Exhaustive check over all tuples of `dims`.
    pub fn check<F>(&mut self, id: &str, anchor: &str, dims: &[usize], ok: F)
    where
        F: Fn(&[usize]) -> bool + Sync,
    {
        let witness = first_failure(dims, ok);
        self.record(id, anchor, witness);
    }

    pub fn check_bool(&mut self, id: &str, anchor: &str, ok: bool) {
        self.record(id, anchor, (!ok).then(Vec::new));
    }

    pub fn not_applicable(&mut self, id: &str, anchor: &str, note: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::NotApplicable,
            witness: None,
            note: Some(note.into()),
        });
    }

    pub fn note_last(&mut self, note: impl Into<String>) {
        if let Some(c) = self.checks.last_mut() {
            c.note = Some(note.into());
        }
    }

    /// Append another report's checks under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.id = format!("{prefix}.{}", c.id);
            }
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Comma-separated ids of the failed checks.
    pub fn failure_ids(&self) -> String {
        self.failures().map(|c| c.id.as_str()).collect::<Vec<_>>().join(", ")
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.get(id).map(|c| c.status)
    }

    /// Canonical ordering by check id.
    pub fn sorted(mut self) -> Report {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::NotApplicable => "n/a ",
            };
            write!(f, "  [{tag}] {}  ({})", c.id, c.anchor)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness {w:?}")?;
            }
            if let Some(n) = &c.note {
                write!(f, "  -- {n}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "  {} checks, {} failed", self.checks.len(), failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_lexicographic() {
        let w = first_failure(&[3, 3], |t| t[0] + t[1] < 3);
        assert_eq!(w, Some(vec![1, 2]));
        set_parallelism(3);
        let w2 = first_failure(&[3, 3], |t| t[0] + t[1] < 3);
        set_parallelism(1);
        assert_eq!(w2, w);
        assert_eq!(first_failure(&[2, 2], |_| true), None);
    }

    #[test]
    fn not_applicable_does_not_fail() {
        let mut r = Report::new("x");
        r.not_applicable("a", "b", "skipped");
        r.check_bool("c", "d", true);
        assert!(r.passed());
        r.check_bool("e", "f", false);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
