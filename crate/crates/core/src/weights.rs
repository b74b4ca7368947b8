//! Weight combinatorics for GL(2) x GL(n): twisted symmetric powers of the
//! rank-2 tautological subbundle, their Clebsch–Gordan products and duals,
//! Cauchy decompositions of symmetric powers of a tensor product, the Weyl
//! dimension formula, and Koszul-complex multiplicities.
//!
//! Throughout, `S` denotes a rank-2 bundle with `det S = O(-1)` (the
//! tautological subbundle of a Grassmannian of 2-planes), and `S_{l,m}`
//! abbreviates the twist `Sym^l S (m) = Sym^l S ⊗ O(m)`.  All irreducible
//! GL(2)-homogeneous bundles built from `S` have this form, which is why the
//! pair `(l, m)` suffices as a label.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// Binomial coefficient `C(n, k)` as a `BigInt` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// An integer partition: weakly decreasing non-negative parts, trailing zeros
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition, Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be weakly decreasing, got {:?}",
                parts
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i`, with zeros beyond the last stored part.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The twisted symmetric power `S_{l,m} = Sym^l S (m)` of the rank-2
/// tautological subbundle.  Rank `l + 1`.
///
/// The derived ordering (by `l`, then `m`) is the canonical storage order
/// used for window generators throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SBundle {
    /// Symmetric power degree (`l >= 0`).
    pub l: u32,
    /// Twist by `O(m)`.
    pub m: i64,
}

impl SBundle {
    pub fn new(l: u32, m: i64) -> SBundle {
        SBundle { l, m }
    }

    pub fn rank(&self) -> u32 {
        self.l + 1
    }

    /// Additional twist: `S_{l,m}(k) = S_{l,m+k}`.
    pub fn twist(&self, k: i64) -> SBundle {
        SBundle::new(self.l, self.m + k)
    }

    /// The dual bundle in `S_{l,m}` form.  Since `Sym^l S` is self-dual up to
    /// `(det S)^l = O(-l)`, one has `(Sym^l S (m))^v = Sym^l S (l - m)`.
    pub fn dual(&self) -> SBundle {
        SBundle::new(self.l, self.l as i64 - self.m)
    }

    /// Weight of the centre of GL(2) acting on `S_{l,m}`: the highest weight
    /// is `(l - m, -m)` on `S`-coordinates, and the central (determinant)
    /// weight is the sum `l - 2m`.  Tensor products add this weight, which is
    /// what makes it useful for finiteness cutoffs.
    pub fn central_weight(&self) -> i64 {
        self.l as i64 - 2 * self.m
    }
}

impl fmt::Display for SBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.l {
            0 => write!(f, "O({})", self.m),
            1 => write!(f, "S({})", self.m),
            l => write!(f, "Sym^{l} S({})", self.m),
        }
    }
}

/// Convert the dual-side generator `Sym^l S^v (m)` to `S_{l,m}` form:
/// `Sym^l S^v = Sym^l S ⊗ (det S^v)^l = Sym^l S (l)`, so
/// `Sym^l S^v (m) = S_{l, m+l}`.
pub fn dual_to_s_form(l: u32, m: i64) -> SBundle {
    SBundle::new(l, m + l as i64)
}

/// A two-row Schur functor `Σ^{(a,b)} S` of the rank-2 bundle in `S_{l,m}`
/// form: `Σ^{(a,b)} S = Sym^{a-b} S ⊗ (det S)^b = S_{a-b, -b}`.
pub fn schur2_to_s_form(lambda: &Partition) -> Result<SBundle, Error> {
    if lambda.len() > 2 {
        return Err(Error::InvalidInput(format!(
            "Schur functor of a rank-2 bundle needs at most two rows, got {lambda}"
        )));
    }
    let (a, b) = (lambda.part(0), lambda.part(1));
    Ok(SBundle::new(a - b, -(b as i64)))
}

/// A formal non-negative integer combination of `S_{l,m}` bundles, used for
/// tensor-product decompositions.  Deterministically ordered.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SDecomposition(BTreeMap<SBundle, BigInt>);

impl SDecomposition {
    pub fn new() -> SDecomposition {
        SDecomposition(BTreeMap::new())
    }

    pub fn add(&mut self, b: SBundle, mult: BigInt) {
        if mult.is_zero() {
            return;
        }
        let e = self.0.entry(b).or_insert_with(BigInt::zero);
        *e += mult;
        if e.is_zero() {
            self.0.remove(&b);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SBundle, &BigInt)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total rank of the underlying bundle: `Σ mult * (l + 1)`.
    pub fn rank(&self) -> BigInt {
        self.0.iter().map(|(b, m)| m * BigInt::from(b.rank())).sum()
    }
}

/// Clebsch–Gordan for rank 2 with `det S = O(-1)`:
/// `Sym^a S ⊗ Sym^b S = ⊕_{t=0}^{min(a,b)} Sym^{a+b-2t} S ⊗ (det S)^t
///                    = ⊕_t S_{a+b-2t, -t}`.
pub fn cg_decompose(a: u32, b: u32) -> SDecomposition {
    let mut out = SDecomposition::new();
    for t in 0..=a.min(b) {
        out.add(SBundle::new(a + b - 2 * t, -(t as i64)), BigInt::one());
    }
    out
}

/// Tensor product of two twisted symmetric powers:
/// `S_{l,m} ⊗ S_{l',m'} = ⊕_{t=0}^{min(l,l')} S_{l+l'-2t, m+m'-t}`.
pub fn tensor_s(e: &SBundle, f: &SBundle) -> SDecomposition {
    let mut out = SDecomposition::new();
    for (b, mult) in cg_decompose(e.l, f.l).iter() {
        out.add(b.twist(e.m + f.m), mult.clone());
    }
    out
}

/// Cauchy decomposition of `Sym^n (S ⊗ C^d)` for rank-2 `S`:
/// the sum over two-row partitions `λ` of `n` of `Σ^λ S ⊗ Σ^λ C^d`, returned
/// as pairs `(λ, dim Σ^λ C^d)`.  Partitions whose length exceeds `d`
/// contribute zero and are omitted.
pub fn cauchy_sym(n: u32, d: usize) -> Vec<(Partition, BigInt)> {
    let mut out = Vec::new();
    for j in 0..=n / 2 {
        let lambda = Partition::new(vec![n - j, j]).expect("two-row partition");
        if lambda.len() > d {
            continue;
        }
        let dim = weyl_dim(&lambda, d).expect("length checked");
        out.push((lambda, dim));
    }
    out
}

/// Weyl dimension formula for the irreducible GL(n) representation with
/// highest weight `λ` (a partition with at most `n` parts):
/// `dim = Π_{1<=i<j<=n} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_dim(lambda: &Partition, n: usize) -> Result<BigInt, Error> {
    if lambda.len() > n {
        return Err(Error::InvalidInput(format!(
            "partition {lambda} has more than {n} parts"
        )));
    }
    let w: Vec<i64> = (0..n).map(|i| lambda.part(i) as i64).collect();
    Ok(weyl_dim_weight(&w))
}

/// Weyl dimension formula for a dominant (weakly decreasing) GL(n) weight
/// with possibly negative entries.  The formula is invariant under adding a
/// constant to all entries, so negative weights need no special casing.
/// Panics if the weight is not weakly decreasing (callers pass dominant
/// weights by construction).
pub fn weyl_dim_weight(w: &[i64]) -> BigInt {
    assert!(
        w.windows(2).all(|p| p[0] >= p[1]),
        "weyl_dim_weight needs a weakly decreasing weight, got {w:?}"
    );
    let n = w.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(w[i] - w[j] + (j as i64 - i as i64));
            den *= BigInt::from(j as i64 - i as i64);
        }
    }
    // The denominator divides the numerator exactly (both are products of
    // hook-type factors); check it to catch convention bugs.
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "Weyl dimension was not integral");
    q
}

/// One term of a Koszul complex of a rank-`r` bundle of twisted line bundles:
/// the `i`-th exterior power contributes `C(r, i)` copies of the line bundle
/// `O(i * step)` in homological degree `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulTerm {
    /// Homological degree `i` (0 through `r`).
    pub degree: u32,
    /// Twist of the line bundle appearing there, `i * step`.
    pub twist: i64,
    /// Multiplicity `C(r, i)`.
    pub multiplicity: BigInt,
}

/// Terms of the Koszul complex `Λ^• (O(step)^{⊕ r})`: for `i = 0..=r`, the
/// term `O(i * step)^{⊕ C(r,i)}` in degree `i`.
pub fn koszul_terms(r: u32, step: i64) -> Vec<KoszulTerm> {
    (0..=r)
        .map(|i| KoszulTerm {
            degree: i,
            twist: i as i64 * step,
            multiplicity: binomial(r as u64, i as u64),
        })
        .collect()
}
