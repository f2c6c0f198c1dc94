use serde::{Deserialize, Serialize};

/// A rational approximation a/q to α with `err = α − a/q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RationalApprox {
    pub a: i64,
    pub q: u64,
    pub err: f64,
}

/// Dirichlet approximation via continued-fraction convergents: the last
/// convergent with denominator ≤ `q_max`, so that |qα − a| < 1/(q_max + 1).
pub fn diophantine_approx(alpha: f64, q_max: u64) -> RationalApprox {
    assert!(q_max >= 1, "q_max must be positive");
    assert!(alpha.is_finite(), "alpha must be finite");

    let a0 = alpha.floor();
    // (h_{k-1}, k_{k-1}) and (h_k, k_k)
    let (mut h_prev, mut k_prev) = (1i64, 0u64);
    let (mut h, mut k) = (a0 as i64, 1u64);
    let mut x = alpha - a0;

    for _ in 0..64 {
        if x.abs() < 1e-15 * k as f64 {
            break;
        }
        let inv = 1.0 / x;
        let digit = inv.floor();
        if !digit.is_finite() || digit > 1e15 {
            break;
        }
        let d = digit as u64;
        let Some(k_next) = d.checked_mul(k).and_then(|v| v.checked_add(k_prev)) else {
            break;
        };
        if k_next > q_max {
            break;
        }
        let h_next = d as i64 * h + h_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        x = inv - digit;
    }
    RationalApprox {
        a: h,
        q: k,
        err: alpha - h as f64 / k as f64,
    }
}
