//! Integer degree arithmetic: suspension/retraction families, Moore-space
//! retraction dimensions, Z/8Z-summand degree tables, b-sequences and
//! stable ranges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree data of a smash product of two-cell factors, optionally tagged
/// as the Moore space P^m(2) (a single factor with degrees (m-1, m)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplexSpec {
    pub factors: Vec<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moore_dim: Option<i64>,
}

impl CellComplexSpec {
    pub fn new(factors: Vec<(i64, i64)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidCellData("at least one factor required".into()));
        }
        for &(u, v) in &factors {
            if u < 1 || u >= v {
                return Err(Error::InvalidCellData(format!(
                    "need 1 <= |u| < |v|, got ({u}, {v})"
                )));
            }
        }
        Ok(CellComplexSpec {
            factors,
            moore_dim: None,
        })
    }

    /// The Moore space P^m(2), with cells in degrees m-1 and m.
    pub fn moore(m: i64) -> Result<Self> {
        if m < 3 {
            return Err(Error::NotSimplyConnected(m));
        }
        Ok(CellComplexSpec {
            factors: vec![(m - 1, m)],
            moore_dim: Some(m),
        })
    }

    /// The smash of the factors is (m-1)-connected for m the sum of the
    /// bottom-cell degrees.
    pub fn connectivity(&self) -> i64 {
        self.factors.iter().map(|&(u, _)| u).sum()
    }

    pub fn degree_sum(&self) -> i64 {
        self.factors.iter().map(|&(u, v)| u + v).sum()
    }
}

/// Suspension shift 1 + k(|u|+|v|) of the k-th retract in the single-factor
/// splitting; k = 0 is the degenerate identity retract.
pub fn suspension_family(pair: (i64, i64), k: i64) -> i64 {
    1 + k * (pair.0 + pair.1)
}

#[derive(Debug, Clone, Serialize)]
pub struct SuspensionRow {
    pub k: i64,
    pub shift: i64,
    /// whether k is an odd prime (the narrower of the two enumerations of
    /// the retract family; the wider one allows all k >= 1)
    pub odd_prime_k: bool,
    pub degenerate: bool,
}

fn is_odd_prime(k: i64) -> bool {
    if k < 3 || k % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= k {
        if k % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Both enumerations of the retract family, tagged rather than adjudicated.
pub fn suspension_rows(pair: (i64, i64), k_max: i64) -> Vec<SuspensionRow> {
    (0..=k_max)
        .map(|k| SuspensionRow {
            k,
            shift: suspension_family(pair, k),
            odd_prime_k: is_odd_prime(k),
            degenerate: k == 0,
        })
        .collect()
}

/// Dimension N = m + k(2m - 3) of the k-th Moore-space retract of P^m(2).
pub fn moore_retraction_dim(m: i64, k: i64) -> Result<i64> {
    if m < 3 {
        return Err(Error::NotSimplyConnected(m));
    }
    Ok(m + k * (2 * m - 3))
}

/// Where the rule "P^{2N'}(2) has a Z/8Z-summand in degree 4N' - 2 for
/// N' odd, N' >= 5" applies: Ok(2N - 2) when N = 2N' qualifies, otherwise
/// the reason it does not.
pub fn cohen_wu_degree(n: i64) -> std::result::Result<i64, String> {
    if n % 2 != 0 {
        return Err(format!("dimension {n} is odd"));
    }
    let half = n / 2;
    if half % 2 == 0 {
        return Err(format!("half-dimension {half} is even"));
    }
    if half < 5 {
        return Err(format!("half-dimension {half} is below the threshold 5"));
    }
    Ok(2 * n - 2)
}

/// One row of the Z/8Z-summand table for P^m(2).
#[derive(Debug, Clone, Serialize)]
pub struct SummandRow {
    pub k: i64,
    pub retract_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub valid: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Z8Table {
    pub m: i64,
    pub rows: Vec<SummandRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Z/8Z-summand degrees in the homotopy of P^m(2), for k = 0..k_max.
/// Rows failing the validity rule are kept with valid = false.
pub fn z8_table(m: i64, k_max: i64) -> Result<Z8Table> {
    let mut rows = Vec::with_capacity((k_max + 1) as usize);
    for k in 0..=k_max {
        let n = moore_retraction_dim(m, k)?;
        let (degree, valid, reason) = match cohen_wu_degree(n) {
            Ok(d) => {
                let reason = if k == 0 {
                    "identity retraction".to_string()
                } else {
                    String::new()
                };
                (Some(d), true, reason)
            }
            Err(why) => {
                let reason = if k == 0 {
                    format!("identity retraction; {why}")
                } else {
                    why
                };
                (None, false, reason)
            }
        };
        rows.push(SummandRow {
            k,
            retract_dim: n,
            degree,
            valid,
            reason,
        });
    }
    let note = (m % 4 == 2).then(|| {
        "the m \u{2261} 2 (mod 4) family is sometimes attributed to dimension m + 1; \
         degrees here are recomputed from the m \u{2261} 2 family itself"
            .to_string()
    });
    Ok(Z8Table { m, rows, note })
}

/// Closed forms for the four residue families m = 4n + case: the retract
/// dimension and summand degree as functions of (n, k).
pub fn corollary2_closed_form(case: i64, n: i64, k: i64) -> Result<(i64, i64)> {
    if !(0..=3).contains(&case) || n < 1 || k < 0 {
        return Err(Error::Parse(format!(
            "closed form wants case in 0..=3, n >= 1, k >= 0; got ({case}, {n}, {k})"
        )));
    }
    let dim = match case {
        0 => (8 * k + 4) * n - 3 * k,
        1 => (8 * k + 4) * n + 1 - k,
        2 => (8 * k + 4) * n + 2 + k,
        _ => (8 * k + 4) * n + 3 + 3 * k,
    };
    let degree = match case {
        0 => (16 * k + 8) * n - 6 * k - 2,
        1 => (16 * k + 8) * n - 2 * k,
        2 => (16 * k + 8) * n + 2 * k + 2,
        _ => (16 * k + 8) * n + 6 * k + 4,
    };
    Ok((dim, degree))
}

/// The residue class of k (mod 4) in which the m-family acquires summands.
pub fn residue_class(m: i64) -> i64 {
    // solves m + k(2m-3) == 2 (mod 4)
    [2, 3, 0, 1][(m.rem_euclid(4)) as usize]
}

/// b_k = sum_i (3^k - 1)/2 * (|u_i| + |v_i|).
pub fn b_sequence(spec: &CellComplexSpec, k: u32) -> i64 {
    (3i64.pow(k) - 1) / 2 * spec.degree_sum()
}

/// The recursion b_0 = 0, b_i = (1 + dimV) b_{i-1} + M, cross-checked
/// against its closed form M((1 + dimV)^i - 1)/dimV.
pub fn b_recursive(dim_v: i64, m: i64, i: u32) -> Result<i64> {
    if dim_v < 1 || m < 1 {
        return Err(Error::Parse(format!(
            "recursion wants dimV >= 1, M >= 1; got ({dim_v}, {m})"
        )));
    }
    let mut b = 0i64;
    for _ in 0..i {
        b = (1 + dim_v) * b + m;
    }
    debug_assert_eq!(b, m * ((1 + dim_v).pow(i) - 1) / dim_v);
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeStatus {
    Iso,
    Epi,
    Outside,
}

#[derive(Debug, Clone, Serialize)]
pub struct StableRangeRow {
    pub j: i64,
    pub k: u32,
    pub b: i64,
    pub unstable_degree: i64,
    pub status: RangeStatus,
}

fn range_status(j: i64, b: i64, m: i64) -> RangeStatus {
    if j <= b + 2 * m {
        RangeStatus::Iso
    } else if j == b + 2 * m + 1 {
        RangeStatus::Epi
    } else {
        RangeStatus::Outside
    }
}

/// Minimal k with j <= b_k + 2m, where m is the connectivity bound of the
/// smash of factors.
pub fn stable_range(j: i64, spec: &CellComplexSpec) -> Result<StableRangeRow> {
    if j < 1 {
        return Err(Error::Parse(format!("stable range wants j >= 1, got {j}")));
    }
    let m = spec.connectivity();
    let mut k = 0u32;
    loop {
        let b = b_sequence(spec, k);
        if j <= b + 2 * m {
            return Ok(StableRangeRow {
                j,
                k,
                b,
                unstable_degree: j + b,
                status: RangeStatus::Iso,
            });
        }
        k += 1;
    }
}

/// All rows k = 0..=k_max with their Freudenthal status.
pub fn stable_range_scan(j: i64, spec: &CellComplexSpec, k_max: u32) -> Result<Vec<StableRangeRow>> {
    if j < 1 {
        return Err(Error::Parse(format!("stable range wants j >= 1, got {j}")));
    }
    let m = spec.connectivity();
    Ok((0..=k_max)
        .map(|k| {
            let b = b_sequence(spec, k);
            StableRangeRow {
                j,
                k,
                b,
                unstable_degree: j + b,
                status: range_status(j, b, m),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct BComparisonRow {
    pub i: u32,
    pub b_sum: i64,
    pub b_rec: i64,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BComparison {
    pub dim_v: i64,
    pub big_m: i64,
    pub rows: Vec<BComparisonRow>,
    pub mismatch: bool,
}

/// Compare the per-factor sum formula for b_i with the recursion applied to
/// the total homology of the smash (dim V = 2^n generators, M their degree
/// sum).  The two disagree for two or more factors; both are reported.
pub fn compare_b_models(spec: &CellComplexSpec, i_max: u32) -> Result<BComparison> {
    let n = spec.factors.len() as u32;
    let dim_v = 2i64.pow(n);
    let big_m = 2i64.pow(n - 1) * spec.degree_sum();
    let mut rows = Vec::with_capacity(i_max as usize + 1);
    for i in 0..=i_max {
        let b_sum = b_sequence(spec, i);
        let b_rec = b_recursive(dim_v, big_m, i)?;
        rows.push(BComparisonRow {
            i,
            b_sum,
            b_rec,
            agree: b_sum == b_rec,
        });
    }
    let mismatch = rows.iter().any(|r| !r.agree);
    Ok(BComparison {
        dim_v,
        big_m,
        rows,
        mismatch,
    })
}
