//! The rank-21 K-theory lattice of `G(2,7)` and its numerical Calabi–Yau
//! quotient.
//!
//! # Bases and certificates
//!
//! Classes live in coordinates on the *canonical basis*: the 21 generators
//! of the standard window `(0,0,0)` in `(l, m)` order.  To expand an
//! arbitrary `S_{l,m}` in that basis the module routes through the Kapranov
//! reference collection `Σ^{(a,b)} S^v` (`5 >= a >= b >= 0`): its Euler–Gram
//! matrix is unimodular, so pairing against it recovers Kapranov
//! coordinates by an exact solve, and a second unimodular solve converts to
//! the canonical basis.  Both unimodularity facts are *verified at build
//! time*; a failed solve anywhere surfaces as a certificate error rather
//! than a wrong answer.
//!
//! # The two pairings
//!
//! `χ_G` is the Euler pairing of the ambient Grassmannian.  The hypersurface
//! pairing `χ_Y(e, f) = Σ_{i=0}^{7} (-1)^i C(7,i) χ_G(e, f(-i))` computes
//! the Euler pairing of the restrictions to a degree-(1,…,1) complete
//! intersection Calabi–Yau threefold (Koszul resolution of the structure
//! sheaf of the hypersurface locus; no Riemann–Roch input).  It is
//! antisymmetric; its radical is computed exactly by Smith normal form, and
//! the quotient — the *numerical Calabi–Yau lattice* — carries a
//! nondegenerate antisymmetric form `J` on which spherical twists act by
//! transvections and line-bundle twists descend.
//!
//! # Window operators
//!
//! [`KLattice::jshriek_class`] implements the class of the fibrewise-compact
//! pushforward of a generator into the total space of `O(-1)^{⊕7}` — two
//! independent Koszul routes must agree, pinning the global sign.
//! [`KLattice::transfer_matrix`] implements the window-shift operator
//! `x -> x - dim Hom(j_! E_l, x) · [j_! E_l]`, and
//! [`KLattice::intertwine_check`] compares its descent against the
//! corresponding transvection.

use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::extcalc::ext_g27;
use crate::matrix::{IMat, Solver};
use crate::weights::{binomial, cauchy_sym, schur2_to_s_form, tensor_s, SBundle};
use crate::windows::{exceptional_order_ending_at, mutation_chain, WindowSpec};

/// A K-theory class in canonical coordinates (the 21 standard-window
/// generators in `(l, m)` order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass(Vec<BigInt>);

impl KClass {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn zero() -> KClass {
        KClass(vec![BigInt::zero(); 21])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn add_scaled(&mut self, other: &KClass, scale: &BigInt) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += scale * b;
        }
    }
}

/// Certificate that a window's 21 classes form a Z-basis of the lattice:
/// their coordinate matrix over the Kapranov reference basis together with
/// its determinant; the basis claim holds exactly when `|det| = 1`.
#[derive(Debug, Clone)]
pub struct FullnessCertificate {
    /// Column `i` = Kapranov coordinates of the window's `i`-th generator.
    pub coordinates: IMat,
    pub det: BigInt,
}

impl FullnessCertificate {
    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }
}

/// The numerical Calabi–Yau lattice: the quotient of the rank-21 lattice by
/// the radical of the antisymmetric hypersurface pairing.
#[derive(Debug, Clone)]
pub struct Cy3Lattice {
    /// Rank of the quotient (always even; 4 here).
    pub rank: usize,
    /// `rank x 21` projection: canonical coordinates -> quotient coordinates.
    pub res: IMat,
    /// `21 x rank` section with `res * section = I`.
    pub section: IMat,
    /// The induced nondegenerate antisymmetric pairing on the quotient.
    pub pairing: IMat,
    /// Nonzero invariant factors of the full 21x21 pairing matrix.
    pub invariant_factors: Vec<BigInt>,
    /// The 21x21 hypersurface pairing Gram matrix on the canonical basis.
    pub n_matrix: IMat,
}

impl Cy3Lattice {
    /// Apply the projection to a class.
    pub fn project(&self, x: &KClass) -> Vec<BigInt> {
        self.res.mul_vec(x.coords())
    }

    /// The quotient-level pairing `u^T J w`.
    pub fn pair(&self, u: &[BigInt], w: &[BigInt]) -> BigInt {
        let jw = self.pairing.mul_vec(w);
        u.iter().zip(&jw).map(|(a, b)| a * b).sum()
    }

    /// Descend a 21x21 canonical-coordinate operator to the quotient.
    /// Errors unless the operator preserves the radical (kernel of `res`),
    /// which is exactly the condition for `res * T = descended * res`.
    pub fn descend(&self, t: &IMat) -> Result<IMat, Error> {
        let descended = self.res.mul(&t.mul(&self.section));
        if descended.mul(&self.res) != self.res.mul(t) {
            return Err(Error::CertificateFailure(
                "operator does not preserve the radical of the hypersurface pairing".into(),
            ));
        }
        Ok(descended)
    }

    /// Whether a quotient operator preserves the antisymmetric pairing,
    /// `M^T J M = J`.
    pub fn preserves_pairing(&self, m: &IMat) -> bool {
        m.transpose().mul(&self.pairing).mul(m) == self.pairing
    }
}

/// Report of the transfer-operator analysis for one window shift.
#[derive(Debug, Clone)]
pub struct TransferReport {
    /// Which of the three shifts (`l` = 0, 1, 2) this is.
    pub l: u32,
    /// The distinguished generator `Sym^l S` of the source window.
    pub object: SBundle,
    /// `Hom(j_! Sym^l S, x)` dimension for each source-window generator `x`.
    pub coefficients: Vec<(SBundle, BigInt)>,
    /// The operator on canonical coordinates.
    pub matrix: IMat,
    /// Coefficients are 1 on the distinguished generator, 0 on the other 20.
    pub fixes_other_generators: bool,
    /// Every transformed generator expands integrally in the target window.
    pub image_in_next_window: bool,
}

/// Result of comparing the descended transfer operator against the
/// corresponding transvection.
#[derive(Debug, Clone)]
pub struct IntertwineReport {
    pub l: u32,
    /// The two true window-shift facts (see [`TransferReport`]).
    pub coefficients_ok: bool,
    pub image_ok: bool,
    /// The strict matrix identity `res ∘ Tr = Tw ∘ res`.
    pub matrix_identity: bool,
    /// When the identity fails: a source generator plus the two sides'
    /// quotient coordinates of its image.
    pub witness: Option<(SBundle, Vec<BigInt>, Vec<BigInt>)>,
}

/// The K-theory lattice with all cached structure.  Build once (it
/// self-certifies) and share; see [`global`].
pub struct KLattice {
    kapranov: Vec<SBundle>,
    canonical: Vec<SBundle>,
    kapranov_solver: Solver,
    c0_solver: Solver,
    /// `χ_G` Gram matrix on the canonical basis.
    gram_g: IMat,
    cy3: Cy3Lattice,
}

/// Euler pairing `χ_G(e, f)` on the Grassmannian: alternating sum of the
/// Ext profile.
pub fn chi_g(e: &SBundle, f: &SBundle) -> BigInt {
    ext_g27(e, f).euler()
}

/// Hypersurface Euler pairing
/// `χ_Y(e, f) = Σ_{i=0}^{7} (-1)^i C(7, i) χ_G(e, f(-i))`.
pub fn chi_y(e: &SBundle, f: &SBundle) -> BigInt {
    let mut total = BigInt::zero();
    for i in 0..=7i64 {
        let term = binomial(7, i as u64) * chi_g(e, &f.twist(-i));
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

impl KLattice {
    /// Build and self-certify the lattice.  Any failure here is an
    /// [`Error::Inconsistency`]: the construction is theorem-backed, so a
    /// failure means a convention broke, not that input was bad.
    pub fn new() -> Result<KLattice, Error> {
        // Kapranov reference basis Σ^{(a,b)} S^v = S_{a-b, a}, lex order.
        let mut kapranov = Vec::with_capacity(21);
        for a in 0..=5u32 {
            for b in 0..=a {
                kapranov.push(SBundle::new(a - b, a as i64));
            }
        }
        let kapranov_gram =
            IMat::from_fn(21, 21, |i, j| chi_g(&kapranov[i], &kapranov[j]));
        let kapranov_solver = Solver::new(&kapranov_gram);
        kapranov_solver.inverse().map_err(|_| {
            Error::Inconsistency("Kapranov Euler–Gram matrix is not unimodular".into())
        })?;

        let canonical = WindowSpec::twist_chain(0).generators().to_vec();

        // Kapranov coordinates of e: solve  Gram * c = (χ_G(K_i, e))_i.
        let kapranov_coords = |e: &SBundle| -> Result<Vec<BigInt>, Error> {
            let rhs: Vec<BigInt> = kapranov.iter().map(|k| chi_g(k, e)).collect();
            kapranov_solver.solve(&rhs)
        };
        let mut c0 = IMat::zeros(21, 21);
        for (j, g) in canonical.iter().enumerate() {
            for (i, x) in kapranov_coords(g)?.into_iter().enumerate() {
                c0.set(i, j, x);
            }
        }
        if !c0.det().abs().is_one() {
            return Err(Error::Inconsistency(
                "standard window is not a Z-basis over the Kapranov collection".into(),
            ));
        }
        let c0_solver = Solver::new(&c0);

        // χ_G Gram on the canonical basis: direct computation, then verify
        // bilinearity against the basis change (two independent routes).
        let gram_g = IMat::from_fn(21, 21, |i, j| chi_g(&canonical[i], &canonical[j]));
        let via_kapranov = c0.transpose().mul(&kapranov_gram).mul(&c0);
        if gram_g != via_kapranov {
            return Err(Error::Inconsistency(
                "canonical Euler–Gram disagrees with its Kapranov conjugate".into(),
            ));
        }
        let cy3 = Self::build_cy3(&canonical)?;

        Ok(KLattice { kapranov, canonical, kapranov_solver, c0_solver, gram_g, cy3 })
    }

    fn build_cy3(canonical: &[SBundle]) -> Result<Cy3Lattice, Error> {
        let n_matrix = IMat::from_fn(21, 21, |i, j| chi_y(&canonical[i], &canonical[j]));
        if n_matrix.add(&n_matrix.transpose()) != IMat::zeros(21, 21) {
            return Err(Error::Inconsistency(
                "hypersurface pairing is not antisymmetric".into(),
            ));
        }
        let snf = n_matrix.snf();
        let rank = snf.rank();
        if rank % 2 != 0 {
            return Err(Error::Inconsistency(format!(
                "antisymmetric pairing has odd rank {rank}"
            )));
        }
        // d = u N v  =>  N v = u^-1 d: the last 21 - rank columns of v span
        // the radical; the quotient coordinates are the first `rank` rows of
        // v^-1, with section the first `rank` columns of v.
        let v_inv = Solver::new(&snf.v).inverse().map_err(|_| {
            Error::Inconsistency("Smith transform was not unimodular".into())
        })?;
        let res = v_inv.block(0, rank, 0, 21);
        let section = snf.v.block(0, 21, 0, rank);

        let conj = snf.v.transpose().mul(&n_matrix).mul(&snf.v);
        let pairing = conj.block(0, rank, 0, rank);
        // The conjugated pairing must be exactly block-diagonal [J 0; 0 0].
        for i in 0..21 {
            for j in 0..21 {
                let expected = if i < rank && j < rank {
                    pairing.get(i, j).clone()
                } else {
                    BigInt::zero()
                };
                if *conj.get(i, j) != expected {
                    return Err(Error::Inconsistency(
                        "pairing did not block-diagonalise over the radical".into(),
                    ));
                }
            }
        }
        if !res.mul(&section).is_identity() {
            return Err(Error::Inconsistency("radical section failed".into()));
        }
        // N = res^T * J * res exactly.
        if res.transpose().mul(&pairing).mul(&res) != n_matrix {
            return Err(Error::Inconsistency(
                "quotient pairing does not reconstruct the hypersurface pairing".into(),
            ));
        }
        Ok(Cy3Lattice {
            rank,
            res,
            section,
            pairing,
            invariant_factors: snf.invariant_factors(),
            n_matrix,
        })
    }

    pub fn canonical_basis(&self) -> &[SBundle] {
        &self.canonical
    }

    pub fn kapranov_basis(&self) -> &[SBundle] {
        &self.kapranov
    }

    pub fn cy3(&self) -> &Cy3Lattice {
        &self.cy3
    }

    /// Kapranov coordinates of a bundle: exact solve against the reference
    /// Euler–Gram matrix.
    pub fn kapranov_coords(&self, e: &SBundle) -> Result<Vec<BigInt>, Error> {
        let rhs: Vec<BigInt> = self.kapranov.iter().map(|k| chi_g(k, e)).collect();
        self.kapranov_solver.solve(&rhs)
    }

    /// Canonical coordinates of a bundle's class.
    pub fn class_of(&self, e: &SBundle) -> Result<KClass, Error> {
        let kap = self.kapranov_coords(e)?;
        Ok(KClass(self.c0_solver.solve(&kap)?))
    }

    /// `χ_G` extended bilinearly to classes.
    pub fn chi_g_classes(&self, x: &KClass, y: &KClass) -> BigInt {
        let gy = self.gram_g.mul_vec(y.coords());
        x.coords().iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `χ_Y` extended bilinearly to classes.
    pub fn chi_y_classes(&self, x: &KClass, y: &KClass) -> BigInt {
        let ny = self.cy3.n_matrix.mul_vec(y.coords());
        x.coords().iter().zip(&ny).map(|(a, b)| a * b).sum()
    }

    /// Euler–Gram matrix of an ordered collection.  Errors (inconsistency)
    /// unless it is unit-diagonal and upper-triangular — the numerical
    /// shadow of an exceptional ordered collection.
    pub fn gram(&self, order: &[SBundle]) -> Result<IMat, Error> {
        let g = IMat::from_fn(order.len(), order.len(), |i, j| chi_g(&order[i], &order[j]));
        for i in 0..order.len() {
            if !g.get(i, i).is_one() {
                return Err(Error::Inconsistency(format!(
                    "Gram diagonal is not 1 at {}",
                    order[i]
                )));
            }
            for j in 0..i {
                if !g.get(i, j).is_zero() {
                    return Err(Error::Inconsistency(format!(
                        "Gram matrix not upper-triangular: χ({}, {}) = {}",
                        order[i],
                        order[j],
                        g.get(i, j)
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Fullness certificate for a window: Kapranov coordinates of its 21
    /// generators and their determinant (`|det| = 1` certifies a Z-basis).
    pub fn kapranov_fullness_certificate(
        &self,
        w: &WindowSpec,
    ) -> Result<FullnessCertificate, Error> {
        let mut coordinates = IMat::zeros(21, 21);
        for (j, g) in w.generators().iter().enumerate() {
            for (i, x) in self.kapranov_coords(g)?.into_iter().enumerate() {
                coordinates.set(i, j, x);
            }
        }
        let det = coordinates.det();
        Ok(FullnessCertificate { coordinates, det })
    }

    /// Canonical-coordinate class matrix of a window: column `i` is the
    /// class of the window's `i`-th generator.
    pub fn window_class_matrix(&self, w: &WindowSpec) -> Result<IMat, Error> {
        Ok(self.window_basis(w)?.0)
    }

    /// Canonical-coordinate matrix of a window's generators (columns), with
    /// an exact-solver for expansions in that basis.
    fn window_basis(&self, w: &WindowSpec) -> Result<(IMat, Solver), Error> {
        let mut b = IMat::zeros(21, 21);
        for (j, g) in w.generators().iter().enumerate() {
            for (i, x) in self.class_of(g)?.0.into_iter().enumerate() {
                b.set(i, j, x);
            }
        }
        let solver = Solver::new(&b);
        Ok((b, solver))
    }

    /// The K-theoretic mutation identity: for an exceptional order
    /// `E_1, ..., E_N`, folding the last object through the preceding ones by
    /// `y -> y - χ(E_i, y) [E_i]` (for `i = N-1` down to `1`) must land on
    /// the Serre twist `[E_N ⊗ O(-7)]` (the shift is by the even number 10,
    /// so no sign appears).
    pub fn serre_mutation_identity(&self, order: &[SBundle]) -> Result<bool, Error> {
        let last = order.last().ok_or_else(|| {
            Error::InvalidInput("mutation identity needs a nonempty order".into())
        })?;
        let mut y = self.class_of(last)?;
        for e in order[..order.len() - 1].iter().rev() {
            let ce = self.class_of(e)?;
            let coeff = self.chi_g_classes(&ce, &y);
            y.add_scaled(&ce, &(-coeff));
        }
        Ok(y == self.class_of(&last.twist(-7))?)
    }

    /// Replay the window mutation chain and check the K-level identity at
    /// every step: the traded generator, mutated through the other twenty in
    /// an exceptional order ending at it, must land on its `O(-7)` twist —
    /// which is exactly the generator the next window gains.
    pub fn mutation_chain_identities(&self) -> Result<bool, Error> {
        for step in mutation_chain()? {
            let before = crate::windows::build_window(step.before)?;
            let order = exceptional_order_ending_at(&before, &step.removed)?;
            if !self.serre_mutation_identity(&order)? {
                return Err(Error::CertificateFailure(format!(
                    "mutation identity failed at step {step}"
                )));
            }
        }
        Ok(true)
    }

    /// Matrix of the line-bundle twist `- ⊗ O(k)` on canonical coordinates:
    /// column `i` is the class of the `i`-th canonical generator twisted by
    /// `O(k)`.
    pub fn line_twist_matrix(&self, k: i64) -> Result<IMat, Error> {
        let mut t = IMat::zeros(21, 21);
        for (j, g) in self.canonical.iter().enumerate() {
            for (i, x) in self.class_of(&g.twist(k))?.0.into_iter().enumerate() {
                t.set(i, j, x);
            }
        }
        Ok(t)
    }

    /// The Koszul alternating-sum operator `Σ (-1)^i C(7,i) T_{-i}` on
    /// canonical coordinates — the class-level effect of pulling a
    /// Grassmannian class to the total space of `O(-1)^{⊕7}` and pushing
    /// back compactly.  Squares to zero and dies under the hypersurface
    /// pairing (tested), which is what makes the transfer/transvection
    /// comparison delicate.
    pub fn koszul_operator(&self) -> Result<IMat, Error> {
        let mut out = IMat::zeros(21, 21);
        for i in 0..=7i64 {
            let t = self.line_twist_matrix(-i)?;
            let c = binomial(7, i as u64);
            let sign = if i % 2 == 0 { c } else { -c };
            out = out.add(&IMat::from_fn(21, 21, |r, s| &sign * t.get(r, s)));
        }
        Ok(out)
    }

    /// Class of the compactly-supported pushforward `j_! E` of a generator
    /// into the total space of `O(-1)^{⊕7}`, via the *hypersurface* Koszul
    /// route: `Σ_{i=0}^{7} (-1)^i C(7,i) [E(-i)]`.
    pub fn jshriek_class(&self, e: &SBundle) -> Result<KClass, Error> {
        let mut out = KClass::zero();
        for i in 0..=7i64 {
            let c = binomial(7, i as u64);
            let sign = if i % 2 == 0 { c } else { -c };
            out.add_scaled(&self.class_of(&e.twist(-i))?, &sign);
        }
        Ok(out)
    }

    /// The same class via the *zero-section* Koszul route:
    /// `j_! E = j_*(E(-7))[-7]`, and the zero section resolves by exterior
    /// powers of `O(1)^{⊕7}`, giving `(-1)^7 Σ_{i=0}^{7} (-1)^i C(7,i)
    /// [E(i-7)]`.  Must equal [`Self::jshriek_class`]; the two routes carry
    /// their signs independently, so agreement pins the global convention.
    pub fn jshriek_class_zero_section_route(&self, e: &SBundle) -> Result<KClass, Error> {
        let mut out = KClass::zero();
        for i in 0..=7i64 {
            let c = binomial(7, i as u64);
            // (-1)^7 * (-1)^i = -(-1)^i
            let sign = if i % 2 == 0 { -c } else { c };
            out.add_scaled(&self.class_of(&e.twist(i - 7))?, &sign);
        }
        Ok(out)
    }

    /// Verify that the two Koszul routes agree for all three distinguished
    /// objects `O`, `S`, `Sym^2 S`, with one shared sign convention.
    pub fn prop_images_check(&self) -> Result<bool, Error> {
        for l in 0..=2u32 {
            let e = SBundle::new(l, 0);
            if self.jshriek_class(&e)? != self.jshriek_class_zero_section_route(&e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `dim Hom(j_! e, x)` for the ambient-stack pushforward: by adjunction
    /// this is the space of maps `e -> x ⊗ Sym(S ⊗ C^7)` over the
    /// Grassmannian, i.e.
    /// `Σ_{a >= 0} Σ_{λ ⊢ a} dim Σ^λ C^7 · dim Hom_G(e, x ⊗ Σ^λ S)`.
    /// The sum is finite: a Hom needs a Clebsch–Gordan component `S_{L,M}`
    /// with `M >= L >= 0`, whose GL(2)-central weight `L - 2M` is `<= 0`;
    /// the central weight of `e^v ⊗ x ⊗ Σ^λ S` is `-e.central + x.central +
    /// a`, so `a <= e.central_weight() - x.central_weight()` bounds the
    /// Cauchy grade.  Higher Ext of the same summands is verified absent
    /// (it would make the dimension count ill-defined).
    pub fn hom_from_jshriek(&self, e: &SBundle, x: &SBundle) -> Result<BigInt, Error> {
        let cutoff = e.central_weight() - x.central_weight();
        let mut total = BigInt::zero();
        if cutoff < 0 {
            return Ok(total);
        }
        for a in 0..=cutoff as u32 {
            for (lambda, outer) in cauchy_sym(a, 7) {
                let schur = schur2_to_s_form(&lambda)?;
                for (s1, m1) in tensor_s(&e.dual(), x).iter() {
                    for (s2, m2) in tensor_s(s1, &schur).iter() {
                        let profile = crate::bwb::cohomology_g27(s2);
                        for (deg, group) in profile.iter() {
                            if *deg > 0 {
                                return Err(Error::Inconsistency(format!(
                                    "higher cohomology in a Hom count: \
                                     Ext^{deg}(j_!{e}, {x}) via {s2}"
                                )));
                            }
                            total += &group.dim * m1 * m2 * &outer;
                        }
                    }
                }
            }
        }
        Ok(total)
    }

    /// Build the transfer operator for shift `l`: on the source window
    /// `W^l` (the `l`-th chain window) it acts by
    /// `x -> x - dim Hom(j_! Sym^l S, x) · [j_! Sym^l S]`, extended linearly
    /// to the whole lattice via the window basis.  Also verifies the two
    /// window-shift facts: the coefficient is `δ_{x, Sym^l S}` on
    /// generators, and every image expands integrally in the next window's
    /// basis.
    pub fn transfer_matrix(&self, l: u32) -> Result<TransferReport, Error> {
        assert!(l <= 2, "three window shifts exist");
        let source = WindowSpec::twist_chain(l as usize);
        let target = WindowSpec::twist_chain(l as usize + 1);
        let object = SBundle::new(l, 0);
        debug_assert_eq!(object, source.top_of_row(l));

        let jclass = self.jshriek_class(&object)?;
        let mut coefficients = Vec::with_capacity(21);
        for x in source.generators() {
            coefficients.push((*x, self.hom_from_jshriek(&object, x)?));
        }
        let fixes_other_generators = coefficients.iter().all(|(x, c)| {
            if x == &object {
                c.is_one()
            } else {
                c.is_zero()
            }
        });

        // Matrix: source basis columns map to class(x) - c_x * jclass.
        let (_, src_solver) = self.window_basis(&source)?;
        let (_, tgt_solver) = self.window_basis(&target)?;
        let mut image = IMat::zeros(21, 21);
        let mut image_in_next_window = true;
        for (j, (x, c)) in coefficients.iter().enumerate() {
            let mut y = self.class_of(x)?;
            y.add_scaled(&jclass, &(-c));
            if tgt_solver.solve(y.coords()).is_err() {
                image_in_next_window = false;
            }
            for (i, v) in y.0.into_iter().enumerate() {
                image.set(i, j, v);
            }
        }
        // T * B_src = image, so T = image * B_src^{-1} (B_src is unimodular
        // because windows are Z-bases).
        let matrix = image.mul(&src_solver.inverse()?);

        Ok(TransferReport {
            l,
            object,
            coefficients,
            matrix,
            fixes_other_generators,
            image_in_next_window,
        })
    }

    /// Transvection on the Calabi–Yau quotient attached to a spherical
    /// object's class: `u -> u - (v^T J u) v` with `v` the projected class.
    /// Unipotent (since `v^T J v = 0`) and pairing-preserving.
    pub fn transvection_matrix(&self, e: &SBundle) -> Result<IMat, Error> {
        let v = self.cy3.project(&self.class_of(e)?);
        let r = self.cy3.rank;
        let jv = self.cy3.pairing.transpose().mul_vec(&v); // (v^T J)_u = Σ v_i J_iu
        Ok(IMat::from_fn(r, r, |i, j| {
            let delta = if i == j { BigInt::one() } else { BigInt::zero() };
            delta - &v[i] * &jv[j]
        }))
    }

    /// Compare the descended transfer operator against the matching
    /// transvection: the strict matrix identity `res ∘ Tr_l = Tw_l ∘ res`,
    /// alongside the two window-shift facts that do hold.  The identity
    /// compares a restriction-induced map with a twist conjugated through
    /// the window equivalences; the report records exactly what holds.
    pub fn intertwine_check(&self, l: u32) -> Result<IntertwineReport, Error> {
        let transfer = self.transfer_matrix(l)?;
        let tw = self.transvection_matrix(&transfer.object)?;
        let lhs = self.cy3.res.mul(&transfer.matrix);
        let rhs = tw.mul(&self.cy3.res);
        let matrix_identity = lhs == rhs;
        let witness = if matrix_identity {
            None
        } else {
            // First source generator whose image projects differently.
            let source = WindowSpec::twist_chain(l as usize);
            let mut found = None;
            for x in source.generators() {
                let cx = self.class_of(x)?;
                let a = lhs.mul_vec(cx.coords());
                let b = rhs.mul_vec(cx.coords());
                if a != b {
                    found = Some((*x, a, b));
                    break;
                }
            }
            found
        };
        Ok(IntertwineReport {
            l,
            coefficients_ok: transfer.fixes_other_generators,
            image_ok: transfer.image_in_next_window,
            matrix_identity,
            witness,
        })
    }
}

static GLOBAL: LazyLock<Result<KLattice, Error>> = LazyLock::new(KLattice::new);

/// The shared, build-once lattice.  Errors are construction-time
/// inconsistencies (never input-dependent) and are propagated so callers can
/// exit cleanly.
pub fn global() -> Result<&'static KLattice, Error> {
    GLOBAL.as_ref().map_err(Clone::clone)
}

/// Independent cross-check values for `χ_Y` on line bundles: for a
/// Calabi–Yau threefold of degree 42 with `c_2 · H = 84`,
/// Hirzebruch–Riemann–Roch gives `χ(O(k)) = 42 k^3 / 6 + 84 k / 12
/// = 7k^3 + 7k`.  Used only as a test oracle.
pub fn hrr_line_euler(k: i64) -> BigInt {
    BigInt::from(7 * k * k * k + 7 * k)
}

/// Degree → dimension data distilled from the pairing: `χ_Y(O, O(1)) = 14`
/// determines `H^3 = 6 · 14 - 84/2`… kept as a named constant pair for the
/// tests: the threefold has degree 42 and `c_2 · H = 84`.
pub const DEGREE_AND_C2H: (i64, i64) = (42, 84);

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn s(l: u32, m: i64) -> SBundle {
        SBundle::new(l, m)
    }

    fn kl() -> &'static KLattice {
        global().expect("lattice builds")
    }

    #[test]
    fn kapranov_expansion_of_reference_basis_is_identity() {
        let k = kl();
        for (j, b) in k.kapranov_basis().to_vec().iter().enumerate() {
            let coords = k.kapranov_coords(b).unwrap();
            for (i, c) in coords.iter().enumerate() {
                assert_eq!(*c, if i == j { bi(1) } else { bi(0) });
            }
        }
    }

    #[test]
    fn canonical_expansion_of_canonical_basis_is_identity() {
        let k = kl();
        for (j, b) in k.canonical_basis().to_vec().iter().enumerate() {
            let class = k.class_of(b).unwrap();
            for (i, c) in class.coords().iter().enumerate() {
                assert_eq!(*c, if i == j { bi(1) } else { bi(0) });
            }
        }
    }

    #[test]
    fn chi_g_bilinearity_matches_direct_pairing() {
        let k = kl();
        // A bundle outside both bases: Sym^3 S(-2).
        let e = s(3, -2);
        let ce = k.class_of(&e).unwrap();
        for f in [s(0, 0), s(1, -4), s(2, 1), s(4, 2)] {
            let cf = k.class_of(&f).unwrap();
            assert_eq!(k.chi_g_classes(&ce, &cf), chi_g(&e, &f), "χ_G({e}, {f})");
            assert_eq!(k.chi_y_classes(&ce, &cf), chi_y(&e, &f), "χ_Y({e}, {f})");
        }
    }

    #[test]
    fn hypersurface_pairing_frozen_values() {
        assert_eq!(chi_y(&s(0, 0), &s(0, 1)), bi(14));
        assert_eq!(chi_y(&s(0, 0), &s(0, 2)), bi(70));
        assert_eq!(chi_y(&s(0, 0), &s(0, -1)), bi(-14));
        assert_eq!(chi_y(&s(0, 0), &s(1, 0)), bi(-7));
        assert_eq!(chi_y(&s(1, 0), &s(0, 0)), bi(7));
        assert_eq!(chi_y(&s(0, 0), &s(1, -3)), bi(-637));
        for l in 0..=2u32 {
            assert_eq!(chi_y(&s(l, 0), &s(l, 0)), bi(0));
        }
    }

    #[test]
    fn hypersurface_pairing_matches_riemann_roch_on_lines() {
        for k in -4..=4i64 {
            assert_eq!(chi_y(&s(0, 0), &s(0, k)), hrr_line_euler(k), "χ_Y(O, O({k}))");
        }
    }

    #[test]
    fn hypersurface_pairing_is_antisymmetric_on_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc43b);
        for _ in 0..120 {
            let e = s(rng.gen_range(0..=3), rng.gen_range(-6..=6));
            let f = s(rng.gen_range(0..=3), rng.gen_range(-6..=6));
            assert_eq!(chi_y(&e, &f), -chi_y(&f, &e), "antisymmetry at ({e}, {f})");
        }
    }

    #[test]
    fn gram_of_certified_order_is_unitriangular() {
        let k = kl();
        let w = WindowSpec::twist_chain(0);
        let order = crate::windows::check_exceptionality(&w).order;
        let g = k.gram(&order).unwrap();
        assert!(g.get(0, 0).is_one());
        // A deliberately bad order errors.
        let bad = [s(0, 0), s(1, 0)]; // Hom(S, O) != 0 but S comes last
        assert!(k.gram(&bad).is_err());
    }

    #[test]
    fn fullness_certificates_for_chain_windows() {
        let k = kl();
        for idx in 0..=3 {
            let w = WindowSpec::twist_chain(idx);
            let cert = k.kapranov_fullness_certificate(&w).unwrap();
            assert!(cert.is_unimodular(), "window {idx} det = {}", cert.det);
        }
    }

    #[test]
    fn serre_mutation_identity_on_standard_window() {
        let k = kl();
        let w = WindowSpec::twist_chain(0);
        let order = crate::windows::check_exceptionality(&w).order;
        assert!(k.serre_mutation_identity(&order).unwrap());
    }

    #[test]
    fn mutation_chain_k_level() {
        assert!(kl().mutation_chain_identities().unwrap());
    }

    #[test]
    fn cy3_lattice_shape() {
        let k = kl();
        let cy3 = k.cy3();
        assert_eq!(cy3.rank, 4);
        assert_eq!(cy3.rank % 2, 0);
        assert!(!cy3.invariant_factors.is_empty());
        // res is surjective with an integral section.
        assert!(cy3.res.mul(&cy3.section).is_identity());
        // The quotient pairing is antisymmetric and nondegenerate.
        assert_eq!(cy3.pairing.add(&cy3.pairing.transpose()), IMat::zeros(4, 4));
        assert!(!cy3.pairing.det().is_zero());
    }

    #[test]
    fn cy3_pairing_reconstructs_chi_y() {
        let k = kl();
        let cy3 = k.cy3();
        for (e, f) in [(s(0, 0), s(0, 1)), (s(1, 0), s(2, -3)), (s(3, 1), s(0, -2))] {
            let (ce, cf) = (k.class_of(&e).unwrap(), k.class_of(&f).unwrap());
            assert_eq!(
                cy3.pair(&cy3.project(&ce), &cy3.project(&cf)),
                chi_y(&e, &f),
                "projected pairing at ({e}, {f})"
            );
        }
    }

    #[test]
    fn line_twists_act_and_invert() {
        let k = kl();
        let t = k.line_twist_matrix(-1).unwrap();
        let t_inv = k.line_twist_matrix(1).unwrap();
        assert!(t.mul(&t_inv).is_identity());
        // The twisted standard window is the third chain window: matrixwise,
        // T_{-1} maps the canonical basis columns to W^3's classes.
        let w3 = WindowSpec::twist_chain(3);
        let (b3, _) = k.window_basis(&w3).unwrap();
        assert_eq!(t, b3, "T_{{-1}} columns are the (-1,-1,-1)-window classes");
    }

    #[test]
    fn koszul_operator_squares_to_zero_and_dies_under_pairing() {
        let k = kl();
        let kz = k.koszul_operator().unwrap();
        assert!(kz.mul(&kz).is_zero(), "Koszul operator must square to zero");
        assert!(
            k.cy3().res.mul(&kz).is_zero(),
            "Koszul image must lie in the radical of the hypersurface pairing"
        );
        // Consistency with the classwise route.
        for e in [s(0, 0), s(1, -2)] {
            let via_matrix = kz.mul_vec(k.class_of(&e).unwrap().coords());
            assert_eq!(KClass(via_matrix), k.jshriek_class(&e).unwrap());
        }
    }

    #[test]
    fn jshriek_routes_agree() {
        assert!(kl().prop_images_check().unwrap());
    }

    #[test]
    fn transfer_coefficients_and_window_images() {
        let k = kl();
        for l in 0..=2u32 {
            let report = k.transfer_matrix(l).unwrap();
            assert!(report.fixes_other_generators, "coefficients at shift {l}");
            assert!(report.image_in_next_window, "image at shift {l}");
        }
    }

    #[test]
    fn transfer_of_structure_sheaf_is_the_koszul_complex() {
        // Tr_0 sends [O] to [O] - [j_! O] = Σ_{i=1}^{7} (-1)^{i-1} C(7,i)
        // [O(-i)], the class of the complex O(-1)^{⊕7} -> … -> O(-7): every
        // term lies in the next window.
        let k = kl();
        let report = k.transfer_matrix(0).unwrap();
        let co = k.class_of(&s(0, 0)).unwrap();
        let image = KClass(report.matrix.mul_vec(co.coords()));
        let mut expected = KClass::zero();
        for i in 1..=7i64 {
            let c = binomial(7, i as u64);
            let sign = if i % 2 == 1 { c } else { -c };
            expected.add_scaled(&k.class_of(&s(0, -i)).unwrap(), &sign);
        }
        assert_eq!(image, expected);
    }

    #[test]
    fn transvections_are_unipotent_and_preserve_pairing() {
        let k = kl();
        let cy3 = k.cy3();
        for l in 0..=2u32 {
            let m = k.transvection_matrix(&s(l, 0)).unwrap();
            let mi = m.sub(&IMat::identity(cy3.rank));
            assert!(mi.mul(&mi).is_zero(), "unipotence at Sym^{l} S");
            assert!(cy3.preserves_pairing(&m), "pairing preservation at Sym^{l} S");
        }
    }

    #[test]
    fn transvection_of_structure_sheaf_example() {
        // Tw at S: res[O] -> res[O] - χ_Y(S, O) res[S] = res[O] - 7 res[S].
        let k = kl();
        let cy3 = k.cy3();
        let m = k.transvection_matrix(&s(1, 0)).unwrap();
        let o = cy3.project(&k.class_of(&s(0, 0)).unwrap());
        let sv = cy3.project(&k.class_of(&s(1, 0)).unwrap());
        let lhs = m.mul_vec(&o);
        let rhs: Vec<BigInt> =
            o.iter().zip(&sv).map(|(a, b)| a - bi(7) * b).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn line_twist_descends_and_preserves_pairing() {
        let k = kl();
        let cy3 = k.cy3();
        for twist in [-1i64, 1] {
            let t = k.line_twist_matrix(twist).unwrap();
            let desc = cy3.descend(&t).unwrap();
            assert!(cy3.preserves_pairing(&desc), "twist by O({twist})");
            // Nontrivial: L^2 != I (needed for the monodromy calibration).
            assert!(!desc.mul(&desc).is_identity());
        }
    }

    #[test]
    fn intertwine_facts_and_the_strict_identity() {
        // The two window-shift facts hold; the strict matrix identity
        // res∘Tr = Tw∘res does not (restriction is not the transported
        // equivalence on classes killed by the Koszul operator).  The first
        // failing generator for shift 0 is O(-6) — or rather, whichever
        // generator the deterministic scan hits first; pin the established
        // counterexample O(-1) explicitly below.
        let k = kl();
        let cy3 = k.cy3();
        for l in 0..=2u32 {
            let report = k.intertwine_check(l).unwrap();
            assert!(report.coefficients_ok);
            assert!(report.image_ok);
            assert!(!report.matrix_identity, "shift {l} unexpectedly intertwined");
            assert!(report.witness.is_some());
        }
        // Explicit counterexample: Tr_0 fixes O(-1) (its Hom coefficient
        // vanishes), but the transvection moves res[O(-1)] by
        // -χ_Y(O, O(-1)) res[O] = +14 res[O] != 0.
        let report = k.transfer_matrix(0).unwrap();
        let om1 = k.class_of(&s(0, -1)).unwrap();
        let fixed = KClass(report.matrix.mul_vec(om1.coords()));
        assert_eq!(fixed, om1, "Tr_0 fixes O(-1)");
        let tw = k.transvection_matrix(&s(0, 0)).unwrap();
        let moved = tw.mul_vec(&cy3.project(&om1));
        assert_ne!(moved, cy3.project(&om1), "Tw_0 moves res[O(-1)]");
    }

    #[test]
    fn kapranov_basis_has_21_elements_in_s_form() {
        let k = kl();
        assert_eq!(k.kapranov_basis().len(), 21);
        let set: BTreeSet<_> = k.kapranov_basis().iter().copied().collect();
        assert_eq!(set.len(), 21);
        assert!(set.contains(&s(0, 0))); // Σ^{(0,0)} S^v = O
        assert!(set.contains(&s(1, 1))); // Σ^{(1,0)} S^v = S^v
        assert!(set.contains(&s(0, 5))); // Σ^{(5,5)} S^v = O(5)
    }
}
