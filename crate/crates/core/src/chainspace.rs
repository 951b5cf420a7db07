//! The pseudometric space of step chains: distance, balls, reparametrization equivalence
//! and the chamber test.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::chains::{hn_filtration, phase_word, Phase, StepChain};
use crate::classset::ClassSet;
use crate::error::{input_err, internal_err, Result};
use crate::repcat::ModClass;
use crate::torsion::{Lattice, Universe};

/// Which extremal phase of an indecomposable attains the distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// `φ(X⁻)`, the first letter of the phase word.
    Minus,
    /// `φ(X⁺)`, the last letter.
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceResult {
    pub value: Phase,
    /// First indecomposable (in table order) attaining the maximum; `Minus` before `Plus`.
    pub witness: (usize, Side),
}

fn same_universe(u: &Universe, chains: &[&StepChain]) -> Result<()> {
    for c in chains {
        if c.left_of(Phase::zero()) != u.all() {
            return Err(input_err!("chain belongs to a universe with a different table"));
        }
    }
    Ok(())
}

/// `d(a, b)`: the largest change of `φ(X⁻)` or `φ(X⁺)` over indecomposables `X`. Both
/// orientations of the interval formula are recomputed and must agree.
pub fn distance(u: &Universe, a: &StepChain, b: &StepChain) -> Result<DistanceResult> {
    let sup = distance_sup(u, a, b)?;
    for (x, y) in [(a, b), (b, a)] {
        let inf = distance_inf(u, x, y)?;
        if inf != sup.value {
            return Err(internal_err!("distance formulas disagree: sup {} vs inf {inf}", sup.value));
        }
    }
    Ok(sup)
}

/// The sup formula alone.
pub fn distance_sup(u: &Universe, a: &StepChain, b: &StepChain) -> Result<DistanceResult> {
    same_universe(u, &[a, b])?;
    let mut best = DistanceResult { value: Phase::zero(), witness: (0, Side::Minus) };
    for x in 0..u.len() {
        let m = u.table().rep(x);
        let (wa, wb) = (phase_word(u, a, m)?, phase_word(u, b, m)?);
        for (side, d) in [(Side::Minus, wa.first() - wb.first()), (Side::Plus, wa.last() - wb.last())] {
            if d.abs() > best.value {
                best = DistanceResult { value: d.abs(), witness: (x, side) };
            }
        }
    }
    Ok(best)
}

/// The least `ε` with `P^b_r ⊆ P^a_[r-ε, r+ε]` for every `r`. The condition only changes
/// when `r ± ε` crosses a breakpoint of `a`, so the candidates are breakpoint differences.
pub fn distance_inf(u: &Universe, a: &StepChain, b: &StepChain) -> Result<Phase> {
    same_universe(u, &[a, b])?;
    let mut candidates = vec![Phase::zero()];
    for x in a.breakpoints() {
        for y in b.breakpoints() {
            candidates.push((x - y).abs());
        }
    }
    candidates.sort();
    candidates.dedup();
    let cats = b.nonzero_categories(u);
    for eps in candidates {
        if cats.iter().all(|c| c.members.is_subset(a.interval_category(u, c.phase - eps, c.phase + eps))) {
            return Ok(eps);
        }
    }
    Err(internal_err!("no candidate radius covers every phase category"))
}

/// `d(center, candidate) < eps`.
pub fn ball_contains(u: &Universe, center: &StepChain, eps: Phase, candidate: &StepChain) -> Result<bool> {
    if !eps.is_positive() {
        return Err(input_err!("ball radius must be positive, got {eps}"));
    }
    Ok(distance(u, center, candidate)?.value < eps)
}

/// Where a phase sits in `[0, 1]`. Reparametrizations fix both ends, so the ends are
/// distinguished from each other and from everything in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhaseTag {
    Zero,
    Interior,
    One,
}

impl PhaseTag {
    pub fn of(r: Phase) -> Self {
        if r.is_zero() {
            PhaseTag::Zero
        } else if r.is_one() {
            PhaseTag::One
        } else {
            PhaseTag::Interior
        }
    }
}

/// The nonzero `P_t` in increasing phase, with each phase reduced to its tag.
pub fn category_profile(u: &Universe, c: &StepChain) -> Vec<(PhaseTag, ClassSet)> {
    c.nonzero_categories(u).iter().map(|p| (PhaseTag::of(p.phase), p.members)).collect()
}

/// Whether an increasing homeomorphism of `[0, 1]` carries one family of `P_t` to the other.
pub fn equivalent(u: &Universe, a: &StepChain, b: &StepChain) -> bool {
    category_profile(u, a) == category_profile(u, b)
}

/// `A` first, `{0}` last and a Hasse cover at every step.
pub fn is_chamber_point(u: &Universe, a: &StepChain, lattice: &Lattice) -> bool {
    let p = a.pieces();
    p[0] == u.all() && p[p.len() - 1].is_empty() && p.windows(2).all(|w| lattice.is_cover(w[0], w[1]))
}

/// HN factors of one module with their phase tags.
pub type HnProfile = Vec<(ModClass, PhaseTag)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationWitness {
    pub perturbation: StepChain,
    pub module: ModClass,
    pub before: HnProfile,
    pub after: HnProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationReport {
    pub perturbations_checked: usize,
    pub modules_checked: usize,
    /// The first perturbation (in generation order) that changes some filtration.
    pub witness: Option<PerturbationWitness>,
}

impl PerturbationReport {
    pub fn invariant(&self) -> bool {
        self.witness.is_none()
    }
}

fn hn_profile(u: &Universe, chain: &StepChain, class: &ModClass) -> Result<HnProfile> {
    let hn = hn_filtration(u, chain, &u.table().direct_sum(class))?;
    Ok(hn.steps().map(|(f, r)| (f.clone(), PhaseTag::of(*r))).collect())
}

/// Nearby chains inside `B_eps(a)`: shifts of interior breakpoints by multiples of `eps/4`
/// (one at a time and all together), and one extra class inserted on a width `eps/2`
/// interval next to each breakpoint, using every lattice element that fits.
pub fn perturbations(u: &Universe, a: &StepChain, eps: Phase, lattice: &Lattice) -> Result<Vec<StepChain>> {
    let b = a.breakpoints();
    let x = a.pieces();
    let m = x.len();
    if !eps.is_positive() || b.windows(2).any(|w| eps * 2 >= w[1] - w[0]) {
        return Err(input_err!("perturbation radius {eps} must be positive and under half of every breakpoint gap"));
    }
    let spec = a.spec();
    let mut out = Vec::new();
    let quarter = eps / 4;
    for k in [-3i64, -2, -1, 1, 2, 3] {
        let shift = quarter * k;
        for i in 0..m - 1 {
            let mut s = spec.clone();
            s[i].0 += shift;
            out.push(StepChain::new(u, &s)?);
        }
        if m > 2 {
            let mut s = spec.clone();
            for piece in &mut s[..m - 1] {
                piece.0 += shift;
            }
            out.push(StepChain::new(u, &s)?);
        }
    }
    let half = eps / 2;
    for &y in lattice.classes().iter().filter(|&&y| x[0].is_proper_subset(y)) {
        let mut s = spec.clone();
        s.insert(0, (half, y));
        out.push(StepChain::new(u, &s)?);
    }
    for i in 0..m - 1 {
        for y in lattice.strictly_between(x[i], x[i + 1]) {
            let mut left = spec.clone();
            left[i].0 -= half;
            left.insert(i + 1, (b[i + 1], y));
            out.push(StepChain::new(u, &left)?);
            let mut right = spec.clone();
            right.insert(i + 1, (b[i + 1] + half, y));
            out.push(StepChain::new(u, &right)?);
        }
    }
    for &y in lattice.classes().iter().filter(|&&y| y.is_proper_subset(x[m - 1])) {
        let mut s = spec.clone();
        s[m - 1].0 -= half;
        s.push((Phase::one(), y));
        out.push(StepChain::new(u, &s)?);
    }
    Ok(out)
}

/// Compare the HN filtration of every indecomposable and every sum of two against each
/// perturbation of `a` inside `B_eps(a)`.
pub fn perturb_invariance_test(
    u: &Universe,
    a: &StepChain,
    eps: Phase,
    lattice: &Lattice,
) -> Result<PerturbationReport> {
    let family = perturbations(u, a, eps, lattice)?;
    let n = u.len();
    let mut modules = Vec::new();
    for i in 0..n {
        modules.push(ModClass::single(n, i));
        for j in i..n {
            modules.push(ModClass::single(n, i).add(&ModClass::single(n, j)));
        }
    }
    let base: Vec<HnProfile> = modules.iter().map(|c| hn_profile(u, a, c)).collect::<Result<_>>()?;
    let mut report = PerturbationReport { perturbations_checked: 0, modules_checked: modules.len(), witness: None };
    for p in family {
        if !ball_contains(u, a, eps, &p)? {
            return Err(internal_err!("perturbation {} left the ball of radius {eps}", p.describe(u)));
        }
        report.perturbations_checked += 1;
        for (class, before) in modules.iter().zip(&base) {
            let after = hn_profile(u, &p, class)?;
            if after != *before {
                report.witness =
                    Some(PerturbationWitness { perturbation: p, module: class.clone(), before: before.clone(), after });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greenseq::{enumerate_mgs, mgs_to_chain};
    use crate::linalg::Prime;
    use crate::repcat::{IndecTable, Orientation, Orientation::Right};
    use crate::torsion::enumerate_lattice;

    fn q(n: i64, d: i64) -> Phase {
        Phase::new(n, d)
    }

    fn universe(orient: &[Orientation]) -> Universe {
        Universe::new(IndecTable::type_a(orient, Prime::new(2).unwrap()).unwrap()).unwrap()
    }

    fn set(u: &Universe, names: &[&str]) -> ClassSet {
        u.parse_set(names.iter().copied()).unwrap()
    }

    fn nowide(u: &Universe, first: Phase) -> StepChain {
        let x1 = set(u, &["S1", "S2", "M[2..3]", "M[1..2]", "M[1..3]"]);
        StepChain::new(u, &[(first, x1), (q(2, 3), set(u, &["S1"])), (q(1, 1), ClassSet::EMPTY)]).unwrap()
    }

    #[test]
    fn distance_examples() {
        let u = universe(&[Right]);
        let t = set(&u, &["S2"]);
        let a = StepChain::from_torsion_pair(&u, t, q(1, 3), q(2, 3)).unwrap();
        let b = StepChain::from_torsion_pair(&u, t, q(1, 4), q(5, 6)).unwrap();
        assert_eq!(distance(&u, &a, &a).unwrap().value, q(0, 1));
        let d = distance(&u, &a, &b).unwrap();
        assert_eq!(d.value, q(1, 6));
        // S2 sits at r2 in both chains
        assert_eq!(d.witness, (u.table().index_of("S2").unwrap(), Side::Minus));

        let u3 = universe(&[Right, Right]);
        assert_eq!(distance(&u3, &nowide(&u3, q(1, 3)), &nowide(&u3, q(2, 5))).unwrap().value, q(1, 15));
        assert!(distance(&u, &a, &StepChain::trivial(&u3)).is_err());
    }

    #[test]
    fn balls_are_open() {
        let u = universe(&[Right]);
        let a = StepChain::trivial(&u);
        let b = StepChain::from_torsion_pair(&u, u.all(), q(1, 2), q(3, 4)).unwrap();
        assert_eq!(distance(&u, &a, &b).unwrap().value, q(1, 4));
        assert!(!ball_contains(&u, &a, q(1, 4), &b).unwrap());
        assert!(ball_contains(&u, &a, q(3, 10), &b).unwrap());
        assert!(ball_contains(&u, &a, q(1, 1000), &a).unwrap());
        assert!(ball_contains(&u, &a, q(0, 1), &a).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let u = universe(&[Right]);
        let t = set(&u, &["M[1..2]", "S1"]);
        let a = StepChain::from_torsion_pair(&u, t, q(1, 3), q(2, 3)).unwrap();
        let b = StepChain::from_torsion_pair(&u, t, q(1, 4), q(3, 4)).unwrap();
        assert!(equivalent(&u, &a, &a) && equivalent(&u, &a, &b));
        let c = StepChain::from_torsion_pair(&u, set(&u, &["S2"]), q(1, 3), q(2, 3)).unwrap();
        assert!(!equivalent(&u, &a, &c));
        // the same categories, but one of them moved onto the endpoint
        let d = StepChain::new(&u, &[(q(1, 3), u.all()), (q(1, 1), t)]).unwrap();
        assert!(!equivalent(&u, &a, &d));
    }

    #[test]
    fn chamber_points() {
        let u = universe(&[Right]);
        let lat = enumerate_lattice(&u).unwrap();
        for g in enumerate_mgs(&lat) {
            assert!(is_chamber_point(&u, &mgs_to_chain(&u, &g).unwrap(), &lat));
        }
        assert!(!is_chamber_point(&u, &StepChain::trivial(&u), &lat));
        let u3 = universe(&[Right, Right]);
        assert!(!is_chamber_point(&u3, &nowide(&u3, q(1, 3)), &enumerate_lattice(&u3).unwrap()));
    }

    #[test]
    fn perturbation_examples() {
        let u = universe(&[Right]);
        let lat = enumerate_lattice(&u).unwrap();
        for g in enumerate_mgs(&lat) {
            let report = perturb_invariance_test(&u, &mgs_to_chain(&u, &g).unwrap(), q(1, 20), &lat).unwrap();
            assert!(report.invariant(), "{report:?}");
            assert!(report.perturbations_checked > 0);
        }
        let w = perturb_invariance_test(&u, &StepChain::trivial(&u), q(1, 10), &lat).unwrap().witness.unwrap();
        assert!(w.before.len() == 1 && w.before[0].1 == PhaseTag::One);

        let u3 = universe(&[Right, Right]);
        let lat3 = enumerate_lattice(&u3).unwrap();
        let three = StepChain::new(
            &u3,
            &[(q(1, 3), u3.all()), (q(2, 3), set(&u3, &["S1", "M[1..2]", "M[1..3]"])), (q(1, 1), ClassSet::EMPTY)],
        )
        .unwrap();
        assert!(!perturb_invariance_test(&u3, &three, q(1, 10), &lat3).unwrap().invariant());
        assert!(perturb_invariance_test(&u3, &three, q(1, 6), &lat3).is_err());
    }
}
