use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{FiltrationOracle, Phase, PhaseCategory, StepChain};
use crate::classset::ClassSet;
use crate::error::{input_err, internal_err, Result};
use crate::repcat::ModClass;
use crate::torsion::Universe;

/// A module whose filtrations disagree with the slicing axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationViolation {
    pub module: ModClass,
    /// Number of valid filtrations the exhaustive search found.
    pub found: usize,
    /// Whether the algorithmic HN filtration is among them.
    pub algorithm_matches: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SlicingReport {
    /// `(higher phase, X, lower phase, Y)` with `Hom(X, Y) != 0`.
    pub hom_violations: Vec<(Phase, usize, Phase, usize)>,
    pub filtration_violations: Vec<FiltrationViolation>,
    pub modules_checked: usize,
}

impl SlicingReport {
    pub fn passed(&self) -> bool {
        self.hom_violations.is_empty() && self.filtration_violations.is_empty()
    }
}

fn downward_hom_violations(u: &Universe, cats: &[PhaseCategory]) -> Vec<(Phase, usize, Phase, usize)> {
    let mut out = Vec::new();
    for hi in cats {
        for lo in cats.iter().filter(|c| c.phase < hi.phase) {
            for x in hi.members.iter() {
                for y in lo.members.iter() {
                    if u.table().hom_dim(x, y) != 0 {
                        out.push((hi.phase, x, lo.phase, y));
                    }
                }
            }
        }
    }
    out
}

/// Check that the `P_t` of `chain` form a slicing: Hom vanishes from higher to lower phase,
/// and every module up to `max_total_dim` has exactly one filtration with decreasing phases,
/// namely the one the HN algorithm builds.
pub fn verify_slicing(u: &Universe, chain: &StepChain, max_total_dim: usize) -> Result<SlicingReport> {
    let cats = chain.nonzero_categories(u);
    let mut report = SlicingReport { hom_violations: downward_hom_violations(u, &cats), ..Default::default() };
    for class in u.table().classes_up_to_total_dim(max_total_dim) {
        if class.is_zero() {
            continue;
        }
        let m = u.table().direct_sum(&class);
        let algorithm = super::hn_filtration(u, chain, &m)?;
        let found = FiltrationOracle::new(u, m)?.filtrations(chain)?;
        report.modules_checked += 1;
        if found.len() != 1 || found[0] != algorithm {
            report.filtration_violations.push(FiltrationViolation {
                module: class,
                found: found.len(),
                algorithm_matches: found.contains(&algorithm),
            });
        }
    }
    Ok(report)
}

/// The chain with `T_s = Filt(∪_{t ≥ s} P_t)`, breakpoints at the given phases.
pub fn chain_from_slicing(u: &Universe, assignments: &[(Phase, ClassSet)]) -> Result<StepChain> {
    let mut cats: Vec<PhaseCategory> = assignments
        .iter()
        .filter(|(_, members)| !members.is_empty())
        .map(|&(phase, members)| PhaseCategory { phase, members })
        .collect();
    cats.sort_by_key(|c| c.phase);
    for w in cats.windows(2) {
        if w[0].phase == w[1].phase {
            return Err(input_err!("phase {} is assigned twice", w[0].phase));
        }
    }
    if cats.iter().any(|c| c.phase < Phase::zero() || c.phase > Phase::one()) {
        return Err(input_err!("phases must lie in [0, 1]"));
    }
    if let Some(&(hi, x, lo, y)) = downward_hom_violations(u, &cats).first() {
        let t = u.table();
        return Err(input_err!("Hom({}, {}) != 0 although {hi} > {lo}", t.name(x), t.name(y)));
    }
    let mut ends: Vec<Phase> = cats.iter().map(|c| c.phase).filter(|r| *r > Phase::zero()).collect();
    if ends.last() != Some(&Phase::one()) {
        ends.push(Phase::one());
    }
    let mut spec = Vec::with_capacity(ends.len());
    for end in ends {
        let gens = cats.iter().filter(|c| c.phase >= end).fold(ClassSet::EMPTY, |acc, c| acc.union(c.members));
        let piece = u.filt(gens);
        if !u.is_torsion_class(piece) {
            return Err(internal_err!("Filt of the phases >= {end} is not a torsion class: {}", u.format_set(piece)));
        }
        spec.push((end, piece));
    }
    StepChain::new(u, &spec)
}
