//! Small convex polytopes {x : A x ≤ b} in a handful of dimensions.
//!
//! Linear programs are solved by vertex enumeration, which is exact enough and
//! fast enough for the ≤ 5 variables and few dozen rows used here.

use nalgebra::{DMatrix, DVector};

const FEAS_TOL: f64 = 1e-10;

/// One half-space a·x ≤ b.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub a: Vec<f64>,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    rows: Vec<HalfSpace>,
}

impl Polytope {
    pub fn new(dim: usize) -> Self {
        Polytope { dim, rows: Vec::new() }
    }

    /// The cube [lo, hi]^dim.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        let mut p = Polytope::new(dim);
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            p.add_ge(e.clone(), lo);
            p.add_le(e, hi);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[HalfSpace] {
        &self.rows
    }

    pub fn add_le(&mut self, a: Vec<f64>, b: f64) {
        assert_eq!(a.len(), self.dim);
        self.rows.push(HalfSpace { a, b });
    }

    pub fn add_ge(&mut self, a: Vec<f64>, b: f64) {
        self.add_le(a.into_iter().map(|x| -x).collect(), -b);
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|r| dot(&r.a, x) <= r.b + tol)
    }

    /// All vertices, found by solving every d-subset of tight rows.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        let d = self.dim;
        if d == 0 {
            return if self.rows.iter().all(|r| r.b >= -FEAS_TOL) { vec![vec![]] } else { vec![] };
        }
        let n = self.rows.len();
        let mut out: Vec<Vec<f64>> = Vec::new();
        let mut idx: Vec<usize> = (0..d).collect();
        if n < d {
            return out;
        }
        loop {
            let m = DMatrix::from_fn(d, d, |r, c| self.rows[idx[r]].a[c]);
            let rhs = DVector::from_fn(d, |r, _| self.rows[idx[r]].b);
            if let Some(x) = m.lu().solve(&rhs) {
                let x: Vec<f64> = x.iter().copied().collect();
                let scale = 1.0 + x.iter().fold(0.0f64, |s, v| s.max(v.abs()));
                if x.iter().all(|v| v.is_finite())
                    && self.contains(&x, FEAS_TOL * scale)
                    && !out.iter().any(|y| y.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-12))
                {
                    out.push(x);
                }
            }
            // next combination
            let mut i = d;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < n - d + i {
                    idx[i] += 1;
                    for j in i + 1..d {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// (min, max) of c·x over the polytope, or `None` if it is empty.
    /// Assumes the polytope is bounded.
    pub fn range(&self, c: &[f64]) -> Option<(f64, f64)> {
        let vs = self.vertices();
        if vs.is_empty() {
            return None;
        }
        let vals = vs.iter().map(|v| dot(c, v));
        Some(vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn is_empty(&self) -> bool {
        self.vertices().is_empty()
    }

    /// Bounding box, one (min, max) per coordinate.
    pub fn bounding_box(&self) -> Option<Vec<(f64, f64)>> {
        let vs = self.vertices();
        if vs.is_empty() {
            return None;
        }
        Some(
            (0..self.dim)
                .map(|i| {
                    vs.iter()
                        .map(|v| v[i])
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
                })
                .collect(),
        )
    }

    /// Fourier–Motzkin elimination of the last coordinate.
    pub fn project_out_last(&self) -> Polytope {
        assert!(self.dim > 0);
        let k = self.dim - 1;
        let mut keep = Vec::new();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for r in &self.rows {
            let c = r.a[k];
            if c.abs() < 1e-14 {
                keep.push(HalfSpace { a: r.a[..k].to_vec(), b: r.b });
            } else if c > 0.0 {
                upper.push(r);
            } else {
                lower.push(r);
            }
        }
        for u in &upper {
            for l in &lower {
                let (cu, cl) = (u.a[k], -l.a[k]);
                let a: Vec<f64> = (0..k).map(|j| u.a[j] / cu + l.a[j] / cl).collect();
                keep.push(HalfSpace { a, b: u.b / cu + l.b / cl });
            }
        }
        let mut p = Polytope { dim: k, rows: Vec::new() };
        for r in keep {
            p.push_unique(r);
        }
        p
    }

    fn push_unique(&mut self, r: HalfSpace) {
        let norm = r.a.iter().fold(0.0f64, |s, v| s.max(v.abs()));
        if norm < 1e-14 {
            // 0 ≤ b: either vacuous or infeasible
            if r.b < -FEAS_TOL {
                self.rows.push(HalfSpace { a: vec![0.0; self.dim], b: -1.0 });
            }
            return;
        }
        let a: Vec<f64> = r.a.iter().map(|v| v / norm).collect();
        let b = r.b / norm;
        for existing in &mut self.rows {
            if existing.a.iter().zip(&a).all(|(x, y)| (x - y).abs() < 1e-12) {
                existing.b = existing.b.min(b);
                return;
            }
        }
        self.rows.push(HalfSpace { a, b });
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_vertices() {
        let mut p = Polytope::cube(2, 0.0, 1.0);
        p.add_le(vec![1.0, 1.0], 1.0);
        let mut vs = p.vertices();
        vs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(vs, vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(p.range(&[1.0, 2.0]), Some((0.0, 2.0)));
    }

    #[test]
    fn empty() {
        let mut p = Polytope::cube(3, 0.0, 1.0);
        p.add_ge(vec![1.0, 1.0, 1.0], 3.5);
        assert!(p.is_empty());
        assert_eq!(p.range(&[1.0, 0.0, 0.0]), None);
    }

    #[test]
    fn projection_matches_vertices() {
        let mut p = Polytope::cube(3, 0.0, 1.0);
        p.add_le(vec![1.0, 1.0, 1.0], 1.5);
        p.add_ge(vec![1.0, -1.0, 2.0], 0.5);
        let q = p.project_out_last().project_out_last();
        let (lo, hi) = p.range(&[1.0, 0.0, 0.0]).unwrap();
        let (qlo, qhi) = q.range(&[1.0]).unwrap();
        assert!((lo - qlo).abs() < 1e-12 && (hi - qhi).abs() < 1e-12);
    }
}
