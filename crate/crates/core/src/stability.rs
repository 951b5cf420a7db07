//! Stability functions `φ = θ·d / ρ·d` and the chains of torsion classes they induce.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::chains::{hn_filtration, Phase, StepChain};
use crate::classset::ClassSet;
use crate::error::{input_err, internal_err, Result};
use crate::repcat::{submodules, ModClass, Rep};
use crate::torsion::Universe;

/// A ratio of integer linear forms on dimension vectors, with `0 <= φ <= 1` on the universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilityForm {
    theta: Vec<i64>,
    rho: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Semistability {
    pub semistable: bool,
    pub stable: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StabilityReport {
    /// `(t, P_t, semistables of phase t)` wherever the two differ.
    pub phase_mismatches: Vec<(Phase, ClassSet, ClassSet)>,
    /// Modules with an HN factor that is not semistable of the factor's phase.
    pub hn_violations: Vec<ModClass>,
    pub modules_checked: usize,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.phase_mismatches.is_empty() && self.hn_violations.is_empty()
    }
}

fn dot(a: &[i64], d: &[usize]) -> i64 {
    a.iter().zip(d).map(|(x, &y)| x * y as i64).sum()
}

impl StabilityForm {
    pub fn new(u: &Universe, theta: Vec<i64>, rho: Vec<i64>) -> Result<Self> {
        let n = u.table().quiver().vertex_count();
        if theta.len() != n || rho.len() != n {
            return Err(input_err!("theta and rho need one entry per vertex ({n})"));
        }
        if rho.iter().any(|&r| r <= 0) {
            return Err(input_err!("rho must be positive at every vertex"));
        }
        for i in 0..u.len() {
            let d = u.table().dims(i);
            let (t, r) = (dot(&theta, d), dot(&rho, d));
            if t < 0 || t > r {
                return Err(input_err!("phase of {} is {t}/{r}, outside [0, 1]", u.table().name(i)));
            }
        }
        Ok(StabilityForm { theta, rho })
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    pub fn phi_dims(&self, d: &[usize]) -> Result<Phase> {
        let r = dot(&self.rho, d);
        if r == 0 {
            return Err(input_err!("the zero module has no phase"));
        }
        Ok(Phase::new(dot(&self.theta, d), r))
    }

    pub fn phi(&self, m: &Rep) -> Result<Phase> {
        self.phi_dims(m.dims())
    }

    /// Compare `φ(L)` with `φ(M)` over every nonzero proper submodule `L`.
    pub fn semistability(&self, m: &Rep) -> Result<Semistability> {
        let own = self.phi(m)?;
        let mut out = Semistability { semistable: true, stable: true };
        for l in submodules(m)? {
            if l.is_zero() || l.is_full() {
                continue;
            }
            let phi = self.phi_dims(&l.dims())?;
            if phi > own {
                out.semistable = false;
            }
            if phi >= own {
                out.stable = false;
            }
        }
        Ok(out)
    }

    pub fn is_semistable(&self, m: &Rep) -> Result<bool> {
        Ok(self.semistability(m)?.semistable)
    }

    /// Distinct values of `φ` on the indecomposables, increasing.
    pub fn realized_phases(&self, u: &Universe) -> Vec<Phase> {
        let mut v: Vec<Phase> =
            (0..u.len()).map(|i| self.phi_dims(u.table().dims(i)).expect("indecomposables are nonzero")).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Smallest phase of a nonzero quotient of `X_i`.
    pub fn min_quotient_phase(&self, u: &Universe, i: usize) -> Result<Phase> {
        let x = u.table().rep(i);
        let mut best = self.phi(x)?;
        for s in submodules(x)? {
            if !s.is_full() {
                let dims: Vec<usize> = x.dims().iter().zip(s.dims()).map(|(a, b)| a - b).collect();
                best = best.min(self.phi_dims(&dims)?);
            }
        }
        Ok(best)
    }

    /// Largest phase of a nonzero subobject of `X_i`.
    pub fn max_subobject_phase(&self, u: &Universe, i: usize) -> Result<Phase> {
        let x = u.table().rep(i);
        let mut best = self.phi(x)?;
        for s in submodules(x)? {
            if !s.is_zero() {
                best = best.max(self.phi_dims(&s.dims())?);
            }
        }
        Ok(best)
    }

    /// `T_{≥s}`: indecomposables all of whose nonzero quotients have phase at least `s`.
    pub fn torsion_at_least(&self, u: &Universe, s: Phase) -> Result<ClassSet> {
        let mut out = ClassSet::EMPTY;
        for i in 0..u.len() {
            if self.min_quotient_phase(u, i)? >= s {
                out = out.with(i);
            }
        }
        Ok(out)
    }

    /// The induced chain `η_φ` with `T_s = T_{≥s}`. It can only jump at realized phases, so
    /// each piece is evaluated at the midpoint of two consecutive ones.
    pub fn chain(&self, u: &Universe) -> Result<StepChain> {
        let mut bps = self.realized_phases(u);
        bps.push(Phase::zero());
        bps.push(Phase::one());
        bps.sort();
        bps.dedup();
        let half = Phase::new(1, 2);
        let mut spec = Vec::with_capacity(bps.len() - 1);
        for w in bps.windows(2) {
            let piece = self.torsion_at_least(u, (w[0] + w[1]) * half)?;
            if !u.is_torsion_class(piece) {
                return Err(internal_err!("T_>= near {} is not a torsion class: {}", w[1], u.format_set(piece)));
            }
            spec.push((w[1], piece));
        }
        StepChain::new(u, &spec).map_err(|e| internal_err!("induced chain is malformed: {e}"))
    }

    /// Compare `P_t` of the induced chain with the semistables of phase `t`, and check that
    /// HN factors of modules up to `max_total_dim` are semistable with decreasing phase.
    pub fn verify_semistable_equality(&self, u: &Universe, max_total_dim: usize) -> Result<StabilityReport> {
        let chain = self.chain(u)?;
        let mut report = StabilityReport::default();
        let mut semistable = Vec::with_capacity(u.len());
        for i in 0..u.len() {
            semistable.push(self.is_semistable(u.table().rep(i))?);
        }
        let mut phases = self.realized_phases(u);
        phases.extend(chain.breakpoints().iter().copied());
        phases.sort();
        phases.dedup();
        for t in phases {
            let p = chain.phase_category(u, t);
            let expected = ClassSet::from_indices(
                (0..u.len()).filter(|&i| semistable[i] && self.phi_dims(u.table().dims(i)).ok() == Some(t)),
            );
            if p != expected {
                report.phase_mismatches.push((t, p, expected));
            }
        }
        for class in u.table().classes_up_to_total_dim(max_total_dim) {
            if class.is_zero() {
                continue;
            }
            let m = u.table().direct_sum(&class);
            let hn = hn_filtration(u, &chain, &m)?;
            let mut ok = hn.phases.windows(2).all(|w| w[0] > w[1]);
            for k in 0..hn.len() {
                let f = hn.factor_rep(&m, k)?;
                ok &= self.phi(&f)? == hn.phases[k] && self.is_semistable(&f)?;
            }
            report.modules_checked += 1;
            if !ok {
                report.hn_violations.push(class);
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::chain_from_slicing;
    use crate::linalg::Prime;
    use crate::repcat::{is_brick, IndecTable, Orientation::Right};
    use alloc::vec;

    fn q(n: i64, d: i64) -> Phase {
        Phase::new(n, d)
    }

    fn universe(orient: &[crate::repcat::Orientation]) -> Universe {
        Universe::new(IndecTable::type_a(orient, Prime::new(2).unwrap()).unwrap()).unwrap()
    }

    fn set(u: &Universe, names: &[&str]) -> ClassSet {
        u.parse_set(names.iter().copied()).unwrap()
    }

    #[test]
    fn phi_examples() {
        let u = universe(&[Right]);
        let f = StabilityForm::new(&u, vec![1, 0], vec![1, 1]).unwrap();
        let t = u.table();
        let phases: Vec<_> = (0..3).map(|i| f.phi(t.rep(i)).unwrap()).collect();
        assert_eq!(phases, [q(1, 1), q(0, 1), q(1, 2)]);
        let m = t.rep(2);
        let mm = t.direct_sum(&t.parse_class("2*M[1..2]").unwrap());
        assert_eq!(f.phi(&mm).unwrap(), f.phi(m).unwrap());
        assert!(f.phi(&t.zero_rep()).is_err());
        assert!(StabilityForm::new(&u, vec![2, 0], vec![1, 1]).is_err());
        assert!(StabilityForm::new(&u, vec![0, 0], vec![1, 0]).is_err());
        assert!(StabilityForm::new(&u, vec![-1, 0], vec![1, 1]).is_err());
    }

    #[test]
    fn semistability_examples() {
        let u = universe(&[Right]);
        let t = u.table();
        let f = StabilityForm::new(&u, vec![1, 0], vec![1, 1]).unwrap();
        for i in 0..2 {
            assert_eq!(f.semistability(t.rep(i)).unwrap(), Semistability { semistable: true, stable: true });
        }
        assert_eq!(f.semistability(t.rep(2)).unwrap(), Semistability { semistable: true, stable: true });
        let g = StabilityForm::new(&u, vec![0, 1], vec![1, 1]).unwrap();
        assert!(!g.is_semistable(t.rep(2)).unwrap());
        let s1s1 = t.direct_sum(&t.parse_class("2*S1").unwrap());
        assert_eq!(f.semistability(&s1s1).unwrap(), Semistability { semistable: true, stable: false });
    }

    #[test]
    fn induced_chain_examples() {
        let u = universe(&[Right]);
        let constant = StabilityForm::new(&u, vec![1, 1], vec![1, 1]).unwrap();
        assert_eq!(constant.chain(&u).unwrap(), StepChain::trivial(&u));

        let f = StabilityForm::new(&u, vec![1, 0], vec![1, 1]).unwrap();
        let c = f.chain(&u).unwrap();
        assert_eq!(c.breakpoints(), &[q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(c.pieces(), &[set(&u, &["S1", "M[1..2]"]), set(&u, &["S1"])]);
        for k in 1..8 {
            let s = q(k, 8);
            assert_eq!(c.left_of(s), f.torsion_at_least(&u, s).unwrap());
        }
        let report = f.verify_semistable_equality(&u, 4).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(c.phase_category(&u, q(1, 2)), set(&u, &["M[1..2]"]));

        let a3 = universe(&[Right, Right]);
        let g = StabilityForm::new(&a3, vec![1, 1, 0], vec![1, 1, 1]).unwrap();
        assert!(g.verify_semistable_equality(&a3, 3).unwrap().passed());
    }

    #[test]
    fn a1_forms_pass() {
        let u = universe(&[]);
        for r in 1..4 {
            for t in 0..=r {
                let f = StabilityForm::new(&u, vec![t], vec![r]).unwrap();
                assert!(f.verify_semistable_equality(&u, 3).unwrap().passed());
            }
        }
    }

    fn admissible_forms(u: &Universe, range: core::ops::RangeInclusive<i64>, rho_max: i64) -> Vec<StabilityForm> {
        let n = u.table().quiver().vertex_count();
        let mut out = Vec::new();
        let mut theta = vec![*range.start(); n];
        loop {
            let mut rho = vec![1i64; n];
            loop {
                if let Ok(f) = StabilityForm::new(u, theta.clone(), rho.clone()) {
                    out.push(f);
                }
                match (0..n).find(|&i| rho[i] < rho_max) {
                    Some(i) => {
                        rho[i] += 1;
                        rho[..i].fill(1);
                    }
                    None => break,
                }
            }
            match (0..n).find(|&i| theta[i] < *range.end()) {
                Some(i) => {
                    theta[i] += 1;
                    theta[..i].fill(*range.start());
                }
                None => break,
            }
        }
        out
    }

    #[test]
    fn torsion_pairs_from_a_form() {
        let u = universe(&[Right, Right]);
        for f in admissible_forms(&u, 0..=2, 2) {
            for p in f.realized_phases(&u).into_iter().chain([q(1, 3)]) {
                let mut ge = ClassSet::EMPTY;
                let mut gt = ClassSet::EMPTY;
                let mut le = ClassSet::EMPTY;
                let mut lt = ClassSet::EMPTY;
                for i in 0..u.len() {
                    let lo = f.min_quotient_phase(&u, i).unwrap();
                    let hi = f.max_subobject_phase(&u, i).unwrap();
                    if lo >= p {
                        ge = ge.with(i);
                    }
                    if lo > p {
                        gt = gt.with(i);
                    }
                    if hi <= p {
                        le = le.with(i);
                    }
                    if hi < p {
                        lt = lt.with(i);
                    }
                }
                assert!(u.is_torsion_class(ge) && u.is_torsion_class(gt));
                assert!(u.is_torsion_free_class(le) && u.is_torsion_free_class(lt));
                assert_eq!(u.perp(ge), lt);
                assert_eq!(u.perp(gt), le);
                assert_eq!(u.left_perp(lt), ge);
            }
        }
    }

    #[test]
    fn see_saw_on_every_short_exact_sequence() {
        let u = universe(&[Right, Right]);
        let forms = admissible_forms(&u, 0..=2, 2);
        for class in u.table().classes_up_to_total_dim(3) {
            let m = u.table().direct_sum(&class);
            for s in submodules(&m).unwrap() {
                if s.is_zero() || s.is_full() {
                    continue;
                }
                let (l, n) = (s.dims(), m.quotient(&s).unwrap());
                for f in &forms {
                    let (pl, pm, pn) = (f.phi_dims(&l).unwrap(), f.phi(&m).unwrap(), f.phi(&n).unwrap());
                    let ok = (pl < pm && pm < pn) || (pl > pm && pm > pn) || (pl == pm && pm == pn);
                    assert!(ok, "{pl} {pm} {pn}");
                }
            }
        }
    }

    #[test]
    fn stable_indecomposables_are_bricks() {
        let u = universe(&[Right, Right]);
        for f in admissible_forms(&u, 0..=2, 2) {
            for class in u.table().classes_up_to_total_dim(3).into_iter().filter(|c| !c.is_zero()) {
                let m = u.table().direct_sum(&class);
                if f.semistability(&m).unwrap().stable {
                    assert!(is_brick(&m).unwrap());
                }
            }
        }
    }

    /// S1 and M[1..2] sharing a phase forces S2 to share it as well, so no form puts S2 lower.
    #[test]
    fn a_chain_no_form_induces() {
        let u = universe(&[Right]);
        let target = StepChain::new(&u, &[(q(1, 2), set(&u, &["M[1..2]", "S1"])), (q(1, 1), ClassSet::EMPTY)]).unwrap();
        assert_eq!(target.phase_category(&u, q(0, 1)), set(&u, &["S2"]));
        let target_profile: Vec<_> = target.nonzero_categories(&u).into_iter().map(|c| c.members).collect();
        let forms = admissible_forms(&u, -3..=3, 3);
        assert!(forms.len() > 20);
        for f in forms {
            let c = f.chain(&u).unwrap();
            assert_ne!(c, target);
            let profile: Vec<_> = c.nonzero_categories(&u).into_iter().map(|c| c.members).collect();
            assert_ne!(profile, target_profile);
        }
        // it is still a perfectly good slicing
        let assignments: Vec<_> = target.nonzero_categories(&u).into_iter().map(|c| (c.phase, c.members)).collect();
        assert_eq!(chain_from_slicing(&u, &assignments).unwrap(), target);
    }
}
