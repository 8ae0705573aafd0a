// SPDX-License-Identifier: Apache-2.0

//! Per-axiom pass/fail reports with capped, lexicographically ordered witnesses.

use serde::Serialize;

/// Witnesses kept per failing check.
pub const WITNESS_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub failures: u64,
    pub witnesses: Vec<Vec<usize>>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check from its failing tuples, which must arrive in
    /// lexicographic order.
    pub fn record(&mut self, name: &str, failures: impl IntoIterator<Item = Vec<usize>>) {
        let mut count = 0u64;
        let mut witnesses = Vec::new();
        for w in failures {
            if witnesses.len() < WITNESS_CAP {
                witnesses.push(w);
            }
            count += 1;
        }
        self.checks.push(Check { name: name.to_string(), failures: count, witnesses });
    }

    pub fn record_bool(&mut self, name: &str, ok: bool) {
        self.record(name, if ok { None } else { Some(vec![]) });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn total_failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "  ok    {}", c.name)?;
            } else {
                writeln!(f, "  FAIL  {} ({} failures, first {:?})", c.name, c.failures, c.witnesses[0])?;
            }
        }
        Ok(())
    }
}

/// Failing tuples over `0..n₁ × … × 0..n_k`, in lexicographic order.
/// The outermost coordinate is scanned in parallel.
pub fn scan(dims: &[usize], fails: impl Fn(&[usize]) -> bool + Sync) -> Vec<Vec<usize>> {
    use rayon::prelude::*;
    if dims.contains(&0) {
        return vec![];
    }
    if dims.is_empty() {
        return if fails(&[]) { vec![vec![]] } else { vec![] };
    }
    let per_first: Vec<Vec<Vec<usize>>> = (0..dims[0])
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut t = vec![0; dims.len()];
            t[0] = first;
            loop {
                if fails(&t) {
                    out.push(t.clone());
                }
                let mut k = dims.len() - 1;
                loop {
                    if k == 0 {
                        return out;
                    }
                    t[k] += 1;
                    if t[k] < dims[k] {
                        break;
                    }
                    t[k] = 0;
                    k -= 1;
                }
            }
        })
        .collect();
    per_first.into_iter().flatten().collect()
}
