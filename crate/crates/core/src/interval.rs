//! Finite unions of closed real intervals.

/// Sorted, pairwise disjoint intervals [lo, hi] with lo < hi.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    parts: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        if lo < hi {
            IntervalSet { parts: vec![(lo, hi)] }
        } else {
            IntervalSet::empty()
        }
    }

    pub fn parts(&self) -> &[(f64, f64)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.parts.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|&(a, b)| a <= x && x <= b)
    }

    pub fn intersect_interval(&self, lo: f64, hi: f64) -> Self {
        let parts = self
            .parts
            .iter()
            .filter_map(|&(a, b)| {
                let (a, b) = (a.max(lo), b.min(hi));
                (a < b).then_some((a, b))
            })
            .collect();
        IntervalSet { parts }
    }

    /// Remove the open interval (lo, hi); endpoints are measure zero.
    pub fn subtract_interval(&self, lo: f64, hi: f64) -> Self {
        if lo >= hi {
            return self.clone();
        }
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        for &(a, b) in &self.parts {
            if b <= lo || a >= hi {
                parts.push((a, b));
                continue;
            }
            if a < lo {
                parts.push((a, lo));
            }
            if b > hi {
                parts.push((hi, b));
            }
        }
        IntervalSet { parts }
    }

    pub fn intersect(&self, other: &IntervalSet) -> Self {
        let mut parts = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a1, b1) = self.parts[i];
            let (a2, b2) = other.parts[j];
            let (a, b) = (a1.max(a2), b1.min(b2));
            if a < b {
                parts.push((a, b));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { parts }
    }

    pub fn union(&self, other: &IntervalSet) -> Self {
        let mut all: Vec<(f64, f64)> = self.parts.iter().chain(&other.parts).copied().collect();
        all.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut parts: Vec<(f64, f64)> = Vec::with_capacity(all.len());
        for (a, b) in all {
            match parts.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => parts.push((a, b)),
            }
        }
        IntervalSet { parts }
    }

    pub fn subtract(&self, other: &IntervalSet) -> Self {
        other.parts.iter().fold(self.clone(), |acc, &(a, b)| acc.subtract_interval(a, b))
    }
}
