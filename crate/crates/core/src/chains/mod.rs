//! Step chains of torsion classes and the categories `P_t` they cut out.

mod hn;
mod slicing;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::classset::ClassSet;
use crate::error::{input_err, Result};
use crate::torsion::Universe;

pub use hn::{
    compare, hn_filtration, max_destab, phase_word, FiltrationOracle, HnFiltration, PhaseWord, ORACLE_DIM_GUARD,
};
pub use slicing::{chain_from_slicing, verify_slicing, FiltrationViolation, SlicingReport};

/// Exact phases in `[0, 1]`.
pub type Phase = Ratio<i64>;

/// Finitely many torsion classes `X_1 ⊋ … ⊋ X_m` on the open intervals `(b_{i-1}, b_i)`
/// of `0 = b_0 < … < b_m = 1`. The values at `0` and `1` are pinned to `A` and `{0}` and
/// breakpoint values are never stored: nothing downstream reads them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepChain {
    breakpoints: Vec<Phase>,
    pieces: Vec<ClassSet>,
    all: ClassSet,
}

/// The nonzero category `P_t` at one phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseCategory {
    pub phase: Phase,
    pub members: ClassSet,
}

impl StepChain {
    /// Build from `(right endpoint, class)` pairs. Adjacent equal classes are merged; the
    /// remaining sequence must be strictly decreasing.
    pub fn new(u: &Universe, spec: &[(Phase, ClassSet)]) -> Result<Self> {
        if spec.is_empty() {
            return Err(input_err!("a chain needs at least one piece"));
        }
        let mut prev = Phase::zero();
        for (end, class) in spec {
            if *end <= prev {
                return Err(input_err!("breakpoints must be strictly increasing in (0, 1]; got {end} after {prev}"));
            }
            if !u.is_torsion_class(*class) {
                return Err(input_err!("{} is not a torsion class", u.format_set(*class)));
            }
            prev = *end;
        }
        if prev != Phase::one() {
            return Err(input_err!("the last piece must end at 1, not {prev}"));
        }
        let mut breakpoints = alloc::vec![Phase::zero()];
        let mut pieces: Vec<ClassSet> = Vec::new();
        for &(end, class) in spec {
            match pieces.last() {
                Some(&last) if last == class => *breakpoints.last_mut().expect("nonempty") = end,
                Some(&last) if !class.is_proper_subset(last) => {
                    return Err(input_err!(
                        "classes must decrease: {} does not contain {}",
                        u.format_set(last),
                        u.format_set(class)
                    ))
                }
                _ => {
                    pieces.push(class);
                    breakpoints.push(end);
                }
            }
        }
        Ok(StepChain { breakpoints, pieces, all: u.all() })
    }

    /// `T_r = A` for every `r` in `(0, 1)`.
    pub fn trivial(u: &Universe) -> Self {
        StepChain { breakpoints: alloc::vec![Phase::zero(), Phase::one()], pieces: alloc::vec![u.all()], all: u.all() }
    }

    /// `A` on `(0, r1)`, `t` on `(r1, r2)` and `{0}` on `(r2, 1)`.
    pub fn from_torsion_pair(u: &Universe, t: ClassSet, r1: Phase, r2: Phase) -> Result<Self> {
        if !(Phase::zero() < r1 && r1 < r2 && r2 <= Phase::one()) {
            return Err(input_err!("need 0 < r1 < r2 <= 1, got r1 = {r1}, r2 = {r2}"));
        }
        let mut spec = alloc::vec![(r1, u.all()), (r2, t)];
        if r2 < Phase::one() {
            spec.push((Phase::one(), ClassSet::EMPTY));
        }
        Self::new(u, &spec)
    }

    /// `0 = b_0 < … < b_m = 1`.
    pub fn breakpoints(&self) -> &[Phase] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[ClassSet] {
        &self.pieces
    }

    /// `(right endpoint, class)` pairs, the input format of [`StepChain::new`].
    pub fn spec(&self) -> Vec<(Phase, ClassSet)> {
        self.breakpoints[1..].iter().copied().zip(self.pieces.iter().copied()).collect()
    }

    /// The value just below `t`: `A` at `t = 0`.
    pub fn left_of(&self, t: Phase) -> ClassSet {
        if t <= Phase::zero() {
            return self.all;
        }
        let i = self.breakpoints[1..].iter().position(|b| t <= *b).unwrap_or(self.pieces.len() - 1);
        self.pieces[i]
    }

    /// The value just above `t`: `{0}` at `t = 1`.
    pub fn right_of(&self, t: Phase) -> ClassSet {
        if t >= Phase::one() {
            return ClassSet::EMPTY;
        }
        let i = self.breakpoints[1..].iter().position(|b| t < *b).unwrap_or(self.pieces.len() - 1);
        self.pieces[i]
    }

    /// `P_t = X_left(t) ∩ perp(X_right(t))`.
    pub fn phase_category(&self, u: &Universe, t: Phase) -> ClassSet {
        self.left_of(t).intersection(u.perp(self.right_of(t)))
    }

    /// `P_[a, b]`: objects all of whose phases lie in `[a, b]`.
    pub fn interval_category(&self, u: &Universe, a: Phase, b: Phase) -> ClassSet {
        self.left_of(a).intersection(u.perp(self.right_of(b)))
    }

    /// Every nonzero `P_t` in increasing phase. Only breakpoints can carry one.
    pub fn nonzero_categories(&self, u: &Universe) -> Vec<PhaseCategory> {
        self.breakpoints
            .iter()
            .map(|&phase| PhaseCategory { phase, members: self.phase_category(u, phase) })
            .filter(|c| !c.members.is_empty())
            .collect()
    }

    pub fn describe(&self, u: &Universe) -> String {
        let mut s = String::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            if i > 0 {
                s.push_str("; ");
            }
            let _ = write!(s, "({}, {}) {}", self.breakpoints[i], self.breakpoints[i + 1], u.format_set(*piece));
        }
        s
    }
}

/// Format a phase as `a/b` (or `a` for integers).
pub fn format_phase(r: &Phase) -> String {
    format!("{r}")
}
