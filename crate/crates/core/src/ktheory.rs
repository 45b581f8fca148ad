//! Rational rank arithmetic for the K-theory side.
//!
//! `Q[C_k]` splits as the product of the cyclotomic fields `Q(ζ_d)`, `d | k`,
//! and Borel's theorem gives the rational ranks of `K_t` of their rings of
//! integers from the signature `(r1, r2)`. The `d = k` factor is the part not
//! coming from proper subgroups.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("subgroup order must be at least 1")]
    ZeroOrder,
    #[error("{name} must be at least 1, got {value}")]
    NonPositive { name: &'static str, value: u64 },
}

fn check_order(k: u64) -> Result<(), KTheoryError> {
    if k == 0 {
        Err(KTheoryError::ZeroOrder)
    } else {
        Ok(())
    }
}

pub fn euler_phi(k: u64) -> u64 {
    let mut n = k;
    let mut result = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(k: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            small.push(d);
            if d * d != k {
                large.push(k / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rank of `K_t(Z[ζ_k]) ⊗ Q`.
pub fn cyclotomic_rank(k: u64, t: u64) -> Result<u64, KTheoryError> {
    check_order(k)?;
    let (r1, r2) = if k <= 2 {
        (1, 0)
    } else {
        (0, euler_phi(k) / 2)
    };
    Ok(match t {
        0 => 1,
        1 => r1 + r2 - 1,
        t if t % 2 == 0 => 0,
        t if t % 4 == 1 => r1 + r2,
        _ => r2,
    })
}

/// Dimension of the summand of `K_t(Z C_k) ⊗ Q` not induced from proper subgroups.
pub fn theta_dim(k: u64, t: u64) -> Result<u64, KTheoryError> {
    cyclotomic_rank(k, t)
}

/// Rank of `K_t(Z C_k) ⊗ Q`.
pub fn group_ring_rank(k: u64, t: u64) -> Result<u64, KTheoryError> {
    check_order(k)?;
    divisors(k).into_iter().map(|d| cyclotomic_rank(d, t)).sum()
}

/// `dim Wh(C_k) ⊗ Q = ⌊k/2⌋ + 1 - d(k)`.
pub fn wh_rank(k: u64) -> Result<u64, KTheoryError> {
    check_order(k)?;
    Ok(k / 2 + 1 - divisors(k).len() as u64)
}

/// `dim H_s(BT; Q)`: monomials of degree `s` in two degree-2 generators.
pub fn h_bt_dim(s: u64) -> u64 {
    if s.is_multiple_of(2) {
        s / 2 + 1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub k: u64,
    pub s: u64,
    pub t: u64,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTable {
    pub n: i64,
    pub k_max: u64,
    pub t_min: u64,
    pub rows: Vec<RankRow>,
    pub total: u64,
}

impl RankTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }
}

/// Nonzero summands `H_s(BT; Q) ⊗ Θ_{C_k}(K_t)` with `s + t = n`, `k <= k_max`, `t >= 0`.
pub fn fj_source_table(n: i64, k_max: u64) -> Result<RankTable, KTheoryError> {
    if k_max == 0 {
        return Err(KTheoryError::NonPositive {
            name: "k_max",
            value: 0,
        });
    }
    let mut rows = Vec::new();
    if n >= 0 {
        let n = n as u64;
        for k in 1..=k_max {
            for s in 0..=n {
                let t = n - s;
                let dim = h_bt_dim(s) * theta_dim(k, t)?;
                if dim != 0 {
                    rows.push(RankRow { k, s, t, dim });
                }
            }
        }
    }
    let total = rows.iter().map(|r| r.dim).sum();
    Ok(RankTable {
        n,
        k_max,
        t_min: 0,
        rows,
        total,
    })
}

/// `[wh_rank(2^j) for j in 1..=j_max]`.
pub fn wh_growth_chain(j_max: u32) -> Result<Vec<u64>, KTheoryError> {
    if j_max == 0 {
        return Err(KTheoryError::NonPositive {
            name: "j_max",
            value: 0,
        });
    }
    (1..=j_max).map(|j| wh_rank(1u64 << j)).collect()
}

/// Morphisms `C_k -> C_l` in the finite-subgroup category of `T`.
pub fn subfin_morphism_count(k: u64, l: u64) -> Result<u64, KTheoryError> {
    check_order(k)?;
    check_order(l)?;
    Ok(u64::from(l.is_multiple_of(k)))
}
