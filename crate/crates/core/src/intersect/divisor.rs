use std::collections::BTreeMap;
use std::fmt;

use crate::geometry::{LatticeAffineMap, Point, Transform};

/// A finite formal sum of rational points; zero multiplicities are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    entries: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn new(points: impl IntoIterator<Item = (Point, i64)>) -> Self {
        let mut d = Divisor::default();
        for (p, m) in points {
            d.add(p, m);
        }
        d
    }

    pub fn add(&mut self, p: Point, m: i64) {
        let slot = self.entries.entry(p.clone()).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.entries.remove(&p);
        }
    }

    pub fn entries(&self) -> &BTreeMap<Point, i64> {
        &self.entries
    }

    pub fn mult(&self, p: &Point) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn restrict(&self, keep: impl Fn(&Point) -> bool) -> Divisor {
        Divisor {
            entries: self
                .entries
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, m)| (p.clone(), *m))
                .collect(),
        }
    }

    pub fn merge(&mut self, other: &Divisor) {
        for (p, m) in &other.entries {
            self.add(p.clone(), *m);
        }
    }

    /// Points listed with repetition.
    pub fn expanded(&self) -> Vec<Point> {
        let mut v = Vec::new();
        for (p, &m) in &self.entries {
            for _ in 0..m.max(0) {
                v.push(p.clone());
            }
        }
        v
    }
}

impl Transform for Divisor {
    fn transform(&self, m: &LatticeAffineMap) -> Self {
        Divisor::new(self.entries.iter().map(|(p, &k)| (m.point(p), k)))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, m)| if *m == 1 { format!("{p}") } else { format!("{m}{p}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
