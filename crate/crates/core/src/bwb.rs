//! Borel–Weil–Bott cohomology of irreducible homogeneous bundles on
//! Grassmannians `G(k, n)`, with exact dimensions.
//!
//! # Convention
//!
//! An irreducible homogeneous bundle is written `E_{α,β} = Σ^α S^v ⊗ Σ^β Q^v`
//! where `S` is the rank-`k` tautological subbundle, `Q` the rank-`(n-k)`
//! quotient, and `α`, `β` are weakly decreasing integer strings of lengths
//! `k` and `n - k`.  Set `μ = (α | β)` (concatenation, `S`-block first) and
//! `ρ = (n-1, n-2, ..., 1, 0)`.  Then:
//!
//! * if `μ + ρ` has a repeated entry, the bundle is *singular*: all
//!   cohomology vanishes;
//! * otherwise sort `μ + ρ` strictly decreasingly; the cohomological degree
//!   is the number of inversions of the unsorted string, and the unique
//!   nonzero group is the irreducible GL(n) representation `Σ^λ V^v` with
//!   `λ = sort(μ + ρ) - ρ`, whose dimension the Weyl formula gives.
//!
//! The calibration anchors in the test module (structure sheaf, canonical
//! bundle, dual tautological bundle, projective-space line bundles) pin this
//! convention; every other module of the crate trusts it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::weights::{binomial, weyl_dim_weight, SBundle};

/// An irreducible homogeneous bundle `Σ^α S^v ⊗ Σ^β Q^v` on `G(k, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousBundle {
    k: usize,
    n: usize,
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

impl HomogeneousBundle {
    /// Validates `0 < k < n`, `|α| = k`, `|β| = n - k`, both weakly
    /// decreasing.
    pub fn new(k: usize, n: usize, alpha: Vec<i64>, beta: Vec<i64>) -> Result<Self, Error> {
        if k == 0 || k >= n {
            return Err(Error::InvalidInput(format!(
                "Grassmannian G({k},{n}) requires 0 < k < n"
            )));
        }
        if alpha.len() != k {
            return Err(Error::InvalidInput(format!(
                "alpha must have {k} entries, got {}",
                alpha.len()
            )));
        }
        if beta.len() != n - k {
            return Err(Error::InvalidInput(format!(
                "beta must have {} entries, got {}",
                n - k,
                beta.len()
            )));
        }
        for (name, s) in [("alpha", &alpha), ("beta", &beta)] {
            if s.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be weakly decreasing, got {s:?}"
                )));
            }
        }
        Ok(HomogeneousBundle { k, n, alpha, beta })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The concatenated weight `μ = (α | β)`.
    pub fn mu(&self) -> Vec<i64> {
        let mut mu = self.alpha.clone();
        mu.extend_from_slice(&self.beta);
        mu
    }

    /// Dimension of the underlying Grassmannian, `k (n - k)`; all cohomology
    /// lives in degrees `0 ..= dim`.
    pub fn space_dim(&self) -> usize {
        self.k * (self.n - self.k)
    }
}

/// One nonzero cohomology group: the dominant GL(n) weight labelling the
/// irreducible representation `Σ^weight V^v`, and its dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub weight: Vec<i64>,
    pub dim: BigInt,
}

/// Full cohomology of a bundle: degree → group, in ascending degree order.
/// For an irreducible homogeneous bundle at most one degree is populated;
/// the type also serves for direct sums, where several degrees can appear.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CohomologyProfile {
    entries: BTreeMap<u32, CohomologyGroup>,
}

impl CohomologyProfile {
    pub fn empty() -> Self {
        CohomologyProfile { entries: BTreeMap::new() }
    }

    fn single(degree: u32, weight: Vec<i64>, dim: BigInt) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(degree, CohomologyGroup { weight, dim });
        CohomologyProfile { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &CohomologyGroup)> {
        self.entries.iter()
    }

    /// Dimension in a given degree (zero if absent).
    pub fn dim_at(&self, degree: u32) -> BigInt {
        self.entries.get(&degree).map_or_else(BigInt::zero, |g| g.dim.clone())
    }

    /// Degree → dimension map.
    pub fn dims(&self) -> BTreeMap<u32, BigInt> {
        self.entries.iter().map(|(d, g)| (*d, g.dim.clone())).collect()
    }

    /// Euler characteristic `Σ (-1)^d dim H^d`.
    pub fn euler(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(d, g)| if d % 2 == 0 { g.dim.clone() } else { -g.dim.clone() })
            .sum()
    }
}

/// Outcome of the dotted Weyl-group walk on `μ + ρ`: `None` for a singular
/// weight, otherwise the inversion count (= cohomological degree) and the
/// dominant weight `sort(μ + ρ) - ρ`.
fn dotted_weyl(n: usize, mu: &[i64]) -> Option<(u32, Vec<i64>)> {
    let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let v: Vec<i64> = mu.iter().zip(&rho).map(|(m, r)| m + r).collect();
    // Repeated entry => singular.
    let mut sorted = v.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mut inversions = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            if v[i] < v[j] {
                inversions += 1;
            }
        }
    }
    let lambda: Vec<i64> = sorted.iter().zip(&rho).map(|(s, r)| s - r).collect();
    Some((inversions, lambda))
}

/// Memo table for resolved weights, keyed by `(n, μ)`.  (The split of `μ`
/// into `α | β` does not influence the computation, so keying on the
/// concatenation merges equivalent queries.)
static BOTT_MEMO: LazyLock<RwLock<HashMap<(usize, Vec<i64>), CohomologyProfile>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn bott_resolve(n: usize, mu: &[i64]) -> CohomologyProfile {
    let key = (n, mu.to_vec());
    if let Some(hit) = BOTT_MEMO.read().expect("memo poisoned").get(&key) {
        return hit.clone();
    }
    let profile = match dotted_weyl(n, mu) {
        None => CohomologyProfile::empty(),
        Some((degree, lambda)) => {
            let dim = weyl_dim_weight(&lambda);
            CohomologyProfile::single(degree, lambda, dim)
        }
    };
    BOTT_MEMO.write().expect("memo poisoned").insert(key, profile.clone());
    profile
}

/// Cohomology of an irreducible homogeneous bundle by the dotted Weyl-group
/// algorithm.  At most one degree is nonzero, and it lies in
/// `0 ..= k(n-k)`.
pub fn bwb_cohomology(bundle: &HomogeneousBundle) -> CohomologyProfile {
    bott_resolve(bundle.n, &bundle.mu())
}

/// The `G(2, n)` weight of `S_{l,m} = Sym^l S(m)`: since
/// `Sym^l S (m) = Σ^{(m, m-l)} S^v`, the weight is `α = (m, m-l)` with
/// `β = 0^{n-2}`.
pub fn s_bundle_weight(n: usize, e: &SBundle) -> Vec<i64> {
    let mut mu = vec![e.m, e.m - e.l as i64];
    mu.extend(std::iter::repeat(0).take(n - 2));
    mu
}

/// Cohomology of `S_{l,m}` on `G(2, n)`.
pub fn cohomology_s_bundle(n: usize, e: &SBundle) -> CohomologyProfile {
    assert!(n > 2, "G(2,n) needs n > 2");
    bott_resolve(n, &s_bundle_weight(n, e))
}

/// Cohomology of `S_{l,m}` on `G(2, 7)`, the main space of the crate.
pub fn cohomology_g27(e: &SBundle) -> CohomologyProfile {
    cohomology_s_bundle(7, e)
}

/// Cohomology of the line bundle `O(d)` on `P^6` in closed form:
/// `H^0 = C(d+6, 6)` for `d >= 0`, `H^6 = C(-d-1, 6)` for `d <= -7`,
/// nothing otherwise.  (An independent check against the Bott algorithm on
/// `G(1,7)` lives in the test module.)
pub fn p6_line_cohomology(d: i64) -> CohomologyProfile {
    if d >= 0 {
        let weight = {
            let mut w = vec![d];
            w.extend(std::iter::repeat(0).take(6));
            w
        };
        let dim = binomial((d + 6) as u64, 6);
        CohomologyProfile::single(0, weight, dim)
    } else if d <= -7 {
        let mut weight = vec![-1; 6];
        weight.push(d + 6);
        let dim = binomial((-d - 1) as u64, 6);
        CohomologyProfile::single(6, weight, dim)
    } else {
        CohomologyProfile::empty()
    }
}

/// Euler characteristic of the homogeneous bundle with weight `μ` on the
/// `n`-flag Grassmannian setting, via the *product* form of the Weyl
/// character formula rather than the dotted walk:
/// `χ = Π_{i<j} ((μ+ρ)_i - (μ+ρ)_j) / (ρ_i - ρ_j)`.
///
/// This is an independent oracle: it never sorts, never counts inversions,
/// and automatically returns zero on singular weights and
/// `(-1)^inversions * dim` otherwise, so it cross-checks both the degree
/// parity and the dimension produced by [`bwb_cohomology`].
pub fn euler_char_weight(n: usize, mu: &[i64]) -> BigInt {
    let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let v: Vec<i64> = mu.iter().zip(&rho).map(|(m, r)| m + r).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(v[i] - v[j]);
            den *= BigInt::from(rho[i] - rho[j]);
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "alternating Weyl product was not integral");
    q
}

/// Euler characteristic of `S_{l,m}` on `G(2, n)` by the product oracle.
pub fn euler_char_s_bundle(n: usize, e: &SBundle) -> BigInt {
    euler_char_weight(n, &s_bundle_weight(n, e))
}
