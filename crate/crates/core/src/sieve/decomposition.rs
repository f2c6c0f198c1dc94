use serde::Serialize;

use super::constraint::{Coverage, ExponentConstraint, Relation, SubproductRule};
use super::params::{Exponent, SieveParams};
use super::term::{InnerSieve, Part, SieveTerm, TermId};
use crate::arith::Factorization;
use crate::{Error, Result};

use Relation::{Ge, Gt, Le, Lt};

fn c(terms: &[(usize, i8)], rel: Relation, rhs: Exponent) -> ExponentConstraint {
    ExponentConstraint::new(terms, rel, rhs)
}

/// z ≤ p_i
fn rough(i: usize) -> ExponentConstraint {
    c(&[(i, 1)], Ge, Exponent::Z)
}

/// p_{i+1} < p_i
fn below(i: usize) -> ExponentConstraint {
    c(&[(i + 1, 1), (i, -1)], Lt, Exponent::ZERO)
}

/// Extend a chain with z ≤ p_{i+1} < p_i.
fn extend(mut cons: Vec<ExponentConstraint>, i: usize) -> Vec<ExponentConstraint> {
    cons.push(rough(i + 1));
    cons.push(below(i));
    cons
}

fn some_in(mask: u8) -> SubproductRule {
    SubproductRule { mask, coverage: Coverage::SomeIn }
}

fn none_in(mask: u8) -> SubproductRule {
    SubproductRule { mask, coverage: Coverage::NoneIn }
}

/// Every ψ-term of the construction, including both parts of each split term.
#[derive(Debug, Clone)]
pub struct TermCatalog {
    terms: Vec<SieveTerm>,
}

impl TermCatalog {
    pub fn new(params: &SieveParams) -> Self {
        use InnerSieve::{LastVar, None as Bare, ZCut};
        let mut terms = Vec::new();
        let mut add = |index: u8, arity: usize, cons: &[ExponentConstraint], rules: &[SubproductRule], inner, split: Option<u8>| {
            let mk = |id, rules: Vec<SubproductRule>| SieveTerm::new(id, arity, cons.to_vec(), rules, inner, params);
            terms.push(mk(TermId::whole(index), rules.to_vec()));
            if let Some(mask) = split {
                let mut g = rules.to_vec();
                g.push(some_in(mask));
                let mut b = rules.to_vec();
                b.push(none_in(mask));
                terms.push(mk(TermId::good(index), g));
                terms.push(mk(TermId::bad(index), b));
            }
        };

        add(1, 0, &[], &[], Bare, None);
        add(2, 1, &[rough(0), c(&[(0, 1)], Lt, Exponent::V)], &[], LastVar, None);
        add(3, 1, &[c(&[(0, 1)], Ge, Exponent::V), c(&[(0, 1)], Le, Exponent::W)], &[], LastVar, None);
        add(4, 1, &[c(&[(0, 1)], Gt, Exponent::W), c(&[(0, 2)], Lt, Exponent::ONE)], &[], LastVar, None);
        add(5, 1, &[rough(0), c(&[(0, 1)], Lt, Exponent::V)], &[], ZCut, None);

        // z ≤ p₂ < p₁ < V
        let psi6 = extend(vec![rough(0), c(&[(0, 1)], Lt, Exponent::V)], 0);
        add(6, 2, &psi6, &[], LastVar, None);
        let with = |base: &Vec<ExponentConstraint>, extra: &[ExponentConstraint]| {
            let mut v = base.clone();
            v.extend_from_slice(extra);
            v
        };
        let p12 = [(0, 1), (1, 1)];
        let psi7 = with(&psi6, &[c(&p12, Lt, Exponent::V)]);
        let psi8 = with(&psi6, &[c(&p12, Ge, Exponent::V), c(&p12, Le, Exponent::W)]);
        let psi9 = with(&psi6, &[c(&p12, Gt, Exponent::W), c(&p12, Le, Exponent::Y)]);
        let psi10 = with(&psi6, &[c(&p12, Gt, Exponent::Y)]);
        add(7, 2, &psi7, &[], LastVar, None);
        add(8, 2, &psi8, &[], LastVar, None);
        add(9, 2, &psi9, &[], LastVar, None);
        add(10, 2, &psi10, &[], LastVar, None);

        add(11, 2, &psi7, &[], ZCut, None);
        let psi12 = extend(psi7.clone(), 1);
        add(12, 3, &psi12, &[], ZCut, None);
        add(13, 4, &extend(psi12, 2), &[], LastVar, Some(0b1111));

        add(14, 2, &psi9, &[], ZCut, None);
        let psi9_3 = extend(psi9.clone(), 1);
        let p123 = [(0, 1), (1, 1), (2, 1)];
        let psi15 = with(&psi9_3, &[c(&p123, Le, Exponent::Y)]);
        add(15, 3, &psi15, &[], LastVar, None);
        add(16, 3, &with(&psi9_3, &[c(&p123, Gt, Exponent::Y)]), &[], LastVar, Some(0b111));
        let p23 = [(1, 1), (2, 1)];
        add(17, 3, &with(&psi15, &[c(&p23, Ge, Exponent::V)]), &[], LastVar, None);
        let psi18 = with(&psi15, &[c(&p23, Lt, Exponent::V)]);
        add(18, 3, &psi18, &[], ZCut, None);
        add(19, 4, &extend(psi18, 2), &[], LastVar, Some(0b1111));

        // p² ≤ Y  ⇔  2u ≤ 1 − 3σ
        let sq_le_y = c(&[(0, 2)], Le, Exponent::Y);
        let below_v = c(&[(0, 1)], Lt, Exponent::V);
        add(20, 1, &[rough(0), sq_le_y, below_v], &[], LastVar, None);
        add(21, 1, &[c(&[(0, 2)], Gt, Exponent::Y), below_v], &[], LastVar, None);
        let psi22 = vec![rough(0), sq_le_y];
        add(22, 1, &psi22, &[], ZCut, None);
        let psi23 = extend(psi22, 0);
        add(23, 2, &psi23, &[], ZCut, None);
        let psi24 = extend(psi23, 1);
        add(24, 3, &psi24, &[], LastVar, Some(0b111));
        let bad24 = [none_in(0b111)];
        let p1233 = [(0, 1), (1, 1), (2, 2)];
        let psi25 = with(&psi24, &[c(&p1233, Le, Exponent::Y)]);
        add(25, 3, &psi25, &bad24, LastVar, None);
        add(26, 3, &with(&psi24, &[c(&p1233, Gt, Exponent::Y)]), &bad24, LastVar, Some(0b111));
        add(27, 3, &psi25, &bad24, ZCut, None);
        let psi28 = extend(psi25, 2);
        add(28, 4, &psi28, &bad24, ZCut, None);
        add(29, 5, &extend(psi28, 3), &bad24, LastVar, Some(0b11111));

        TermCatalog { terms }
    }

    pub fn terms(&self) -> &[SieveTerm] {
        &self.terms
    }

    pub fn get(&self, id: TermId) -> &SieveTerm {
        self.terms
            .iter()
            .find(|t| t.id == id)
            .unwrap_or_else(|| panic!("no term {id}"))
    }
}

/// The weights g₁, b₁, b₂, g₂, b₃ as signed term lists.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub params: SieveParams,
    pub catalog: TermCatalog,
    pub g1: Vec<SieveTerm>,
    pub b1: Vec<SieveTerm>,
    pub b2: Vec<SieveTerm>,
    pub g2: Vec<SieveTerm>,
    pub b3: Vec<SieveTerm>,
}

/// Which combination of terms to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Weight {
    G1,
    B1,
    B2,
    G2,
    B3,
}

pub fn build_decomposition(params: &SieveParams) -> Decomposition {
    let catalog = TermCatalog::new(params);
    let pick = |list: &[(i8, TermId)]| -> Vec<SieveTerm> {
        list.iter().map(|&(s, id)| catalog.get(id).clone().with_sign(s)).collect()
    };
    let w = TermId::whole;
    let g = TermId::good;
    let b = TermId::bad;
    let g1 = pick(&[
        (1, w(1)),
        (-1, w(3)),
        (-1, w(5)),
        (1, w(8)),
        (1, w(11)),
        (-1, w(12)),
        (1, g(13)),
        (1, w(14)),
        (-1, g(16)),
        (-1, w(17)),
        (-1, w(18)),
        (1, g(19)),
    ]);
    let b1 = pick(&[(1, w(4)), (1, b(16))]);
    let b2 = pick(&[(1, w(10)), (1, b(13)), (1, b(19))]);
    let g2 = pick(&[
        (1, w(1)),
        (-1, w(3)),
        (-1, w(22)),
        (1, w(23)),
        (-1, g(24)),
        (-1, g(26)),
        (-1, w(27)),
        (1, w(28)),
        (-1, g(29)),
    ]);
    let b3 = pick(&[(1, w(4)), (1, w(21)), (1, b(26)), (1, b(29))]);
    Decomposition { params: *params, catalog, g1, b1, b2, g2, b3 }
}

/// Term values at one integer, indexed like the weight lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct WeightValues {
    pub g1: i64,
    pub b1: i64,
    pub b2: i64,
    pub g2: i64,
    pub b3: i64,
    /// ψ(m, P^{1/2})
    pub prime_like: i64,
}

impl WeightValues {
    pub fn rho(&self, j: usize) -> i64 {
        match j {
            0 => self.prime_like,
            1 => self.g1,
            2 => self.g2,
            3 => self.b1,
            _ => panic!("rho index {j} out of range"),
        }
    }
}

fn signed_sum(list: &[SieveTerm], m: &Factorization, params: &SieveParams) -> i64 {
    list.iter().map(|t| t.sign as i64 * t.eval(m, params) as i64).sum()
}

impl Decomposition {
    pub fn weight(&self, w: Weight) -> &[SieveTerm] {
        match w {
            Weight::G1 => &self.g1,
            Weight::B1 => &self.b1,
            Weight::B2 => &self.b2,
            Weight::G2 => &self.g2,
            Weight::B3 => &self.b3,
        }
    }

    /// Terms of ρ_j: ρ₁ = g₁, ρ₂ = g₂, ρ₃ = b₁.
    pub fn rho(&self, j: usize) -> Result<&[SieveTerm]> {
        match j {
            1 => Ok(&self.g1),
            2 => Ok(&self.g2),
            3 => Ok(&self.b1),
            _ => Err(Error::Domain(format!("rho index must be 1, 2 or 3, got {j}"))),
        }
    }

    pub fn eval_weight(&self, w: Weight, m: &Factorization) -> i64 {
        signed_sum(self.weight(w), m, &self.params)
    }

    /// ρ_j(m); j = 0 gives the indicator of integers without a prime factor below P^{1/2}.
    pub fn eval_rho(&self, j: usize, m: &Factorization) -> Result<i64> {
        if j == 0 {
            return Ok(self.params.sqrt_rough(m.smallest_prime()) as i64);
        }
        Ok(signed_sum(self.rho(j)?, m, &self.params))
    }

    pub fn eval_all(&self, m: &Factorization) -> WeightValues {
        let p = &self.params;
        // Every term requires p_i ≥ z and a z-rough cofactor.
        if let Some(q) = m.smallest_prime() {
            if (q as f64) < p.z {
                return WeightValues::default();
            }
        }
        WeightValues {
            g1: signed_sum(&self.g1, m, p),
            b1: signed_sum(&self.b1, m, p),
            b2: signed_sum(&self.b2, m, p),
            g2: signed_sum(&self.g2, m, p),
            b3: signed_sum(&self.b3, m, p),
            prime_like: p.sqrt_rough(m.smallest_prime()) as i64,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |terms: &[SieveTerm]| -> serde_json::Value {
            terms
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "id": t.id.to_string(),
                        "sign": t.sign,
                        "arity": t.arity,
                        "inner": t.inner,
                        "constraints": t.constraints,
                        "subproduct_rules": t.rules,
                    })
                })
                .collect()
        };
        serde_json::json!({
            "params": self.params,
            "g1": list(&self.g1),
            "b1": list(&self.b1),
            "b2": list(&self.b2),
            "g2": list(&self.g2),
            "b3": list(&self.b3),
        })
    }
}

impl Part {
    pub fn is_split(self) -> bool {
        self != Part::Whole
    }
}
