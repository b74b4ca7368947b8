//! Monodromy of the stringy Kähler moduli: loop words, path reduction, and
//! the calibrated matrix representation on the numerical Calabi–Yau lattice.
//!
//! # The groupoid picture
//!
//! The moduli of stability parameters relevant here is a genus-zero curve
//! with two special points (a large-volume point for the Grassmannian side
//! and one for the Pfaffian side) and a distinguished equator of windows
//! between them.  Its fundamental groupoid is generated by
//!
//! * five loops `gG, g0, g1, g2, gP` — one around each large-volume point
//!   and one around each of the three wall points separating adjacent
//!   windows — subject to the big-circle relation
//!   `gG g2 g1 g0 gP = 1`, and
//! * four paths `psi0..psi3`, one through each window, connecting the two
//!   large-volume points.
//!
//! Paths are not loops, so only *composable* words act on K-theory: a
//! `psi` generator can appear only in an adjacent pair `psi_a^-1 psi_b`,
//! which is a loop and rewrites as a ladder of wall loops
//! ([`reduce_path`]).
//!
//! # The representation
//!
//! On the numerical Calabi–Yau lattice the wall loops act by the spherical
//! transvections of `O`, `S`, `Sym^2 S` and the Grassmannian large-volume
//! loop by a line-bundle twist.  The Pfaffian loop is determined by the
//! big-circle relation.  [`assign_representation`] calibrates the twist
//! direction: the pole loop must decompose as
//! `(- ⊗ O(1)) ∘ Tw_2 ∘ Tw_1 ∘ Tw_0` (inverted), and only one sign of the
//! line twist satisfies this — the check is non-vacuous because the twist
//! matrix does not square to the identity.  Words evaluate left-to-right
//! as matrix products, so the rightmost generator acts first on column
//! vectors.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::klattice;
use crate::matrix::{inverse, IMat};
use crate::weights::SBundle;

/// A loop generator of the fundamental groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopGen {
    /// Loop around the Grassmannian large-volume point (`gG`).
    Grassmannian,
    /// Loop around the wall point between windows `l` and `l+1`
    /// (`g0`, `g1`, `g2`).
    Wall(u8),
    /// Loop around the Pfaffian large-volume point (`gP`).
    Pfaffian,
}

/// A generator token: a loop, or one of the four window paths `psi0..psi3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    Loop(LoopGen),
    Psi(u8),
}

/// One token of a word: a generator, possibly inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub base: Base,
    pub inverse: bool,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::Loop(LoopGen::Grassmannian) => write!(f, "gG")?,
            Base::Loop(LoopGen::Wall(l)) => write!(f, "g{l}")?,
            Base::Loop(LoopGen::Pfaffian) => write!(f, "gP")?,
            Base::Psi(a) => write!(f, "psi{a}")?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A word in the groupoid generators: whitespace-separated tokens, each
/// optionally suffixed `^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<Token>);

impl Word {
    pub fn parse(input: &str) -> Result<Word, Error> {
        let mut tokens = Vec::new();
        for raw in input.split_whitespace() {
            let (name, inverse) = match raw.strip_suffix("^-1") {
                Some(stem) => (stem, true),
                None => (raw, false),
            };
            let base = match name {
                "gG" => Base::Loop(LoopGen::Grassmannian),
                "g0" => Base::Loop(LoopGen::Wall(0)),
                "g1" => Base::Loop(LoopGen::Wall(1)),
                "g2" => Base::Loop(LoopGen::Wall(2)),
                "gP" => Base::Loop(LoopGen::Pfaffian),
                "psi0" => Base::Psi(0),
                "psi1" => Base::Psi(1),
                "psi2" => Base::Psi(2),
                "psi3" => Base::Psi(3),
                other => {
                    return Err(Error::WordParse(format!(
                        "unknown generator `{other}` \
                         (expected gG, g0, g1, g2, gP, or psi0..psi3, \
                         optionally suffixed ^-1)"
                    )));
                }
            };
            tokens.push(Token { base, inverse });
        }
        Ok(Word(tokens))
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn is_loop_word(&self) -> bool {
        self.0.iter().all(|t| matches!(t.base, Base::Loop(_)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The ladder of wall loops equal to the composite path `psi_a^-1 psi_b`:
/// crossing from window `b` to window `a` wall by wall.  Empty when
/// `a == b`; `g_{a-1} ... g_b` (indices descending) when `a > b`; the
/// inverted ascending ladder when `a < b`.
pub fn ladder(a: u8, b: u8) -> Vec<Token> {
    let mut out = Vec::new();
    if a > b {
        for i in (b..a).rev() {
            out.push(Token { base: Base::Loop(LoopGen::Wall(i)), inverse: false });
        }
    } else {
        for i in a..b {
            out.push(Token { base: Base::Loop(LoopGen::Wall(i)), inverse: true });
        }
    }
    out
}

/// Rewrite a composable word as a pure loop word.  `psi` generators must
/// occur in adjacent pairs `psi_a^-1 psi_b` (a path back to base followed by
/// a path out), which rewrite via [`ladder`]; any unpaired or wrongly
/// oriented `psi` is a [`Error::PathReduction`].
pub fn reduce_path(word: &Word) -> Result<Word, Error> {
    let mut out = Vec::new();
    let mut iter = word.0.iter().enumerate().peekable();
    while let Some((pos, t)) = iter.next() {
        match t.base {
            Base::Loop(_) => out.push(*t),
            Base::Psi(a) => {
                if !t.inverse {
                    return Err(Error::PathReduction(format!(
                        "token {} at position {pos} starts a path away from \
                         base; only return-first pairs psi_a^-1 psi_b are loops",
                        t
                    )));
                }
                match iter.next() {
                    Some((_, u)) => match u.base {
                        Base::Psi(b) if !u.inverse => out.extend(ladder(a, b)),
                        _ => {
                            return Err(Error::PathReduction(format!(
                                "psi{a}^-1 at position {pos} must be followed \
                                 by an uninverted psi generator, found {u}"
                            )));
                        }
                    },
                    None => {
                        return Err(Error::PathReduction(format!(
                            "psi{a}^-1 at position {pos} has no matching \
                             return path"
                        )));
                    }
                }
            }
        }
    }
    Ok(Word(out))
}

/// The single defining relation of the loop subgroup, as a word.
pub fn big_circle_word() -> Word {
    Word::parse("gG g2 g1 g0 gP").expect("fixed word parses")
}

/// The calibrated monodromy representation on the rank-4 numerical
/// Calabi–Yau lattice.
#[derive(Debug, Clone)]
pub struct Representation {
    /// `ρ(g0), ρ(g1), ρ(g2)`: the spherical transvections.
    pub walls: [IMat; 3],
    /// `ρ(gG)`: the descended line-bundle twist.
    pub grassmannian: IMat,
    /// `ρ(gP)`: determined by the big-circle relation.
    pub pfaffian: IMat,
    /// Which twist direction calibration selected (`+1`).
    pub line_twist_direction: i64,
    /// The quotient pairing, kept for invariance checks.
    pub pairing: IMat,
}

impl Representation {
    pub fn matrix_of(&self, g: LoopGen) -> &IMat {
        match g {
            LoopGen::Grassmannian => &self.grassmannian,
            LoopGen::Wall(l) => &self.walls[l as usize],
            LoopGen::Pfaffian => &self.pfaffian,
        }
    }

    /// Evaluate a pure loop word, left to right (the rightmost token acts
    /// first on column vectors).  Words containing path generators are a
    /// [`Error::PathReduction`]; reduce them first.
    pub fn evaluate_loop(&self, word: &Word) -> Result<IMat, Error> {
        let n = self.pairing.rows();
        let mut acc = IMat::identity(n);
        for t in word.tokens() {
            let m = match t.base {
                Base::Loop(g) => self.matrix_of(g).clone(),
                Base::Psi(a) => {
                    return Err(Error::PathReduction(format!(
                        "psi{a} is a path, not a loop; apply path reduction \
                         before evaluating"
                    )));
                }
            };
            let m = if t.inverse { inverse(&m)? } else { m };
            acc = acc.mul(&m);
        }
        Ok(acc)
    }

    /// Reduce then evaluate: the composite action of any composable word.
    pub fn evaluate(&self, word: &Word) -> Result<IMat, Error> {
        self.evaluate_loop(&reduce_path(word)?)
    }

    /// Matrix of the loop `psi_a^-1 psi_b` through the ladder rewrite.
    pub fn pair_matrix(&self, a: u8, b: u8) -> Result<IMat, Error> {
        self.evaluate_loop(&Word(ladder(a, b)))
    }
}

/// Build the representation and calibrate the line-twist direction.
///
/// Ground truth: the pole loop around the Pfaffian point decomposes as
/// `(- ⊗ O(1)) ∘ Tw_2 ∘ Tw_1 ∘ Tw_0` inverted, i.e. `ρ(gP) = (L_{+1} M_2
/// M_1 M_0)^{-1}`.  For each candidate direction `k ∈ {+1, -1}` the
/// relation-completing product `(L_k M_2 M_1 M_0)^{-1}` is compared against
/// it; exactly one direction must match, and the comparison is only
/// meaningful when `L_{+1} != L_{-1}` — equivalently `L^2 != 1` — which is
/// verified first.
pub fn assign_representation() -> Result<Representation, Error> {
    let lattice = klattice::global()?;
    let cy3 = lattice.cy3();

    let walls = [
        lattice.transvection_matrix(&SBundle::new(0, 0))?,
        lattice.transvection_matrix(&SBundle::new(1, 0))?,
        lattice.transvection_matrix(&SBundle::new(2, 0))?,
    ];
    let line_plus = cy3.descend(&lattice.line_twist_matrix(1)?)?;
    let line_minus = cy3.descend(&lattice.line_twist_matrix(-1)?)?;
    if line_plus == line_minus {
        return Err(Error::Inconsistency(
            "line twist squares to the identity; calibration would be vacuous".into(),
        ));
    }

    let twists_product = walls[2].mul(&walls[1]).mul(&walls[0]);
    let pole_truth = inverse(&line_plus.mul(&twists_product))?;

    let mut calibrated = None;
    for (k, line) in [(1i64, &line_plus), (-1i64, &line_minus)] {
        let candidate = inverse(&line.mul(&twists_product))?;
        if candidate == pole_truth {
            if calibrated.is_some() {
                return Err(Error::Inconsistency(
                    "both twist directions satisfy the pole relation".into(),
                ));
            }
            calibrated = Some((k, line.clone(), candidate));
        }
    }
    let Some((k, line, pole)) = calibrated else {
        return Err(Error::Inconsistency(
            "no twist direction satisfies the pole relation".into(),
        ));
    };

    Ok(Representation {
        walls,
        grassmannian: line,
        pfaffian: pole,
        line_twist_direction: k,
        pairing: cy3.pairing.clone(),
    })
}

/// Outcome of the relation audit for a representation.
#[derive(Debug, Clone)]
pub struct RelationsReport {
    /// `ρ(gG g2 g1 g0 gP) = 1`.
    pub big_circle: bool,
    /// `ρ(gP)^-1 = L M_2 M_1 M_0`.
    pub pole_decomposition: bool,
    /// Each wall loop is a unipotent transvection.
    pub walls_unipotent: bool,
    /// Every generator preserves the quotient pairing.
    pub pairing_preserved: bool,
    /// `P(a,b) P(b,c) = P(a,c)` for all window indices.
    pub ladders_compose: bool,
    /// Reduce-then-evaluate agrees with direct pair-matrix evaluation on
    /// seeded random composable words.
    pub random_words_consistent: bool,
}

impl RelationsReport {
    pub fn all_hold(&self) -> bool {
        self.big_circle
            && self.pole_decomposition
            && self.walls_unipotent
            && self.pairing_preserved
            && self.ladders_compose
            && self.random_words_consistent
    }
}

fn preserves(rep: &Representation, m: &IMat) -> bool {
    m.transpose().mul(&rep.pairing).mul(m) == rep.pairing
}

/// Audit the groupoid relations, including a seeded randomized consistency
/// check between path reduction and direct evaluation.
pub fn check_relations(rep: &Representation) -> Result<RelationsReport, Error> {
    let n = rep.pairing.rows();
    let big_circle = rep.evaluate_loop(&big_circle_word())?.is_identity();

    let twists_product = rep.walls[2].mul(&rep.walls[1]).mul(&rep.walls[0]);
    let pole_decomposition =
        rep.pfaffian.mul(&rep.grassmannian.mul(&twists_product)).is_identity();

    let walls_unipotent = rep.walls.iter().all(|m| {
        let nilpotent = m.sub(&IMat::identity(n));
        nilpotent.mul(&nilpotent).is_zero()
    });

    let pairing_preserved = rep.walls.iter().all(|m| preserves(rep, m))
        && preserves(rep, &rep.grassmannian)
        && preserves(rep, &rep.pfaffian);

    let mut ladders_compose = true;
    for a in 0..=3u8 {
        for b in 0..=3u8 {
            for c in 0..=3u8 {
                let lhs = rep.pair_matrix(a, b)?.mul(&rep.pair_matrix(b, c)?);
                if lhs != rep.pair_matrix(a, c)? {
                    ladders_compose = false;
                }
            }
        }
    }

    let random_words_consistent = random_word_consistency(rep, 100, 0x5c0de)?;

    Ok(RelationsReport {
        big_circle,
        pole_decomposition,
        walls_unipotent,
        pairing_preserved,
        ladders_compose,
        random_words_consistent,
    })
}

/// Generate `count` seeded random composable words; each is evaluated two
/// ways — reduce-then-evaluate, and directly with precomputed pair matrices
/// for the `psi` pairs — and the results must agree.
pub fn random_word_consistency(
    rep: &Representation,
    count: usize,
    seed: u64,
) -> Result<bool, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let loops = [
        LoopGen::Grassmannian,
        LoopGen::Wall(0),
        LoopGen::Wall(1),
        LoopGen::Wall(2),
        LoopGen::Pfaffian,
    ];
    let n = rep.pairing.rows();
    for _ in 0..count {
        let mut tokens = Vec::new();
        let mut direct = IMat::identity(n);
        let segments = rng.gen_range(1..=6);
        for _ in 0..segments {
            if rng.gen_bool(0.5) {
                let g = loops[rng.gen_range(0..loops.len())];
                let invert = rng.gen_bool(0.5);
                tokens.push(Token { base: Base::Loop(g), inverse: invert });
                let m = rep.matrix_of(g);
                direct = direct.mul(&if invert { inverse(m)? } else { m.clone() });
            } else {
                let a = rng.gen_range(0..=3u8);
                let b = rng.gen_range(0..=3u8);
                tokens.push(Token { base: Base::Psi(a), inverse: true });
                tokens.push(Token { base: Base::Psi(b), inverse: false });
                direct = direct.mul(&rep.pair_matrix(a, b)?);
            }
        }
        let via_reduction = rep.evaluate(&Word(tokens))?;
        if via_reduction != direct {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep() -> Representation {
        assign_representation().expect("representation calibrates")
    }

    #[test]
    fn word_parsing_roundtrips() {
        let w = Word::parse("gG g2^-1 psi1^-1 psi0 gP").unwrap();
        assert_eq!(w.to_string(), "gG g2^-1 psi1^-1 psi0 gP");
        assert_eq!(w.tokens().len(), 5);
        assert!(!w.is_loop_word());
        assert!(Word::parse("g3").is_err());
        assert!(Word::parse("psi4").is_err());
        assert!(Word::parse("gG^1").is_err());
        assert!(matches!(Word::parse("bogus"), Err(Error::WordParse(_))));
        assert_eq!(Word::parse("").unwrap().tokens().len(), 0);
    }

    #[test]
    fn ladder_rewrites_match_the_window_walks() {
        let w = reduce_path(&Word::parse("psi1^-1 psi0").unwrap()).unwrap();
        assert_eq!(w.to_string(), "g0");
        let w = reduce_path(&Word::parse("psi3^-1 psi0").unwrap()).unwrap();
        assert_eq!(w.to_string(), "g2 g1 g0");
        let w = reduce_path(&Word::parse("psi0^-1 psi3").unwrap()).unwrap();
        assert_eq!(w.to_string(), "g0^-1 g1^-1 g2^-1");
        let w = reduce_path(&Word::parse("psi2^-1 psi2").unwrap()).unwrap();
        assert_eq!(w.tokens().len(), 0);
        let w = reduce_path(&Word::parse("gG psi1^-1 psi2 gP^-1").unwrap()).unwrap();
        assert_eq!(w.to_string(), "gG g1^-1 gP^-1");
    }

    #[test]
    fn unpaired_paths_are_rejected() {
        for bad in ["psi0", "psi0^-1", "psi1 psi0^-1", "psi1^-1 psi0^-1", "psi1^-1 gG"] {
            let err = reduce_path(&Word::parse(bad).unwrap()).unwrap_err();
            assert!(
                matches!(err, Error::PathReduction(_)),
                "{bad} should fail reduction, got {err:?}"
            );
        }
    }

    #[test]
    fn calibration_selects_the_positive_twist() {
        let r = rep();
        assert_eq!(r.line_twist_direction, 1);
        // Non-vacuity: the line twist does not square to the identity.
        assert!(!r.grassmannian.mul(&r.grassmannian).is_identity());
    }

    #[test]
    fn big_circle_is_the_identity() {
        let r = rep();
        assert!(r.evaluate_loop(&big_circle_word()).unwrap().is_identity());
    }

    #[test]
    fn loop_evaluation_handles_inverses() {
        let r = rep();
        for word in ["g0 g0^-1", "gG gG^-1", "gP^-1 gP", "g2 g2^-1 g1 g1^-1"] {
            let m = r.evaluate_loop(&Word::parse(word).unwrap()).unwrap();
            assert!(m.is_identity(), "{word}");
        }
        let err = r.evaluate_loop(&Word::parse("psi0^-1 psi1").unwrap()).unwrap_err();
        assert!(matches!(err, Error::PathReduction(_)));
        // But the same word evaluates after reduction.
        r.evaluate(&Word::parse("psi0^-1 psi1").unwrap()).unwrap();
    }

    #[test]
    fn relations_report_is_all_green() {
        let r = rep();
        let report = check_relations(&r).unwrap();
        assert!(report.big_circle, "big circle");
        assert!(report.pole_decomposition, "pole decomposition");
        assert!(report.walls_unipotent, "wall unipotence");
        assert!(report.pairing_preserved, "pairing preservation");
        assert!(report.ladders_compose, "ladder composition");
        assert!(report.random_words_consistent, "random word consistency");
        assert!(report.all_hold());
    }

    #[test]
    fn pair_matrices_compose_and_invert() {
        let r = rep();
        let p30 = r.pair_matrix(3, 0).unwrap();
        let p03 = r.pair_matrix(0, 3).unwrap();
        assert!(p30.mul(&p03).is_identity());
        assert_eq!(
            r.pair_matrix(2, 1).unwrap().mul(&r.pair_matrix(1, 0).unwrap()),
            r.pair_matrix(2, 0).unwrap()
        );
        assert!(r.pair_matrix(1, 1).unwrap().is_identity());
    }

    #[test]
    fn wall_loops_match_the_lattice_transvections() {
        let r = rep();
        let lattice = klattice::global().unwrap();
        for l in 0..=2u32 {
            let m = lattice.transvection_matrix(&SBundle::new(l, 0)).unwrap();
            assert_eq!(&m, r.matrix_of(LoopGen::Wall(l as u8)), "wall {l}");
        }
    }
}
