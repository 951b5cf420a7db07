use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::One;

use super::{Phase, PhaseCategory, StepChain};
use crate::classset::ClassSet;
use crate::error::{input_err, resource_err, Result};
use crate::repcat::{submodules, ModClass, Rep, SubRep};
use crate::torsion::Universe;

/// Largest total dimension the exhaustive filtration search accepts.
pub const ORACLE_DIM_GUARD: usize = 6;

/// `0 = M_0 ⊂ M_1 ⊂ … ⊂ M_n = M` with `M_k / M_{k-1}` in `P_{r_k}` and `r_1 > … > r_n`.
/// `terms` holds `M_1, …, M_n` as subrepresentations of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnFiltration {
    pub terms: Vec<SubRep>,
    pub phases: Vec<Phase>,
    pub factors: Vec<ModClass>,
}

impl HnFiltration {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The factor `M_k / M_{k-1}` (0-based `k`) as an explicit representation.
    pub fn factor_rep(&self, m: &Rep, k: usize) -> Result<Rep> {
        let top = m.restrict(&self.terms[k])?;
        if k == 0 {
            return Ok(top);
        }
        top.quotient(&m.relative(&self.terms[k], &self.terms[k - 1])?)
    }

    /// The filtration as `[(factor class, phase)]` from `M_1` upward.
    pub fn steps(&self) -> impl Iterator<Item = (&ModClass, &Phase)> {
        self.factors.iter().zip(&self.phases)
    }
}

/// HN phases in increasing order; the first letter is the phase of the last factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseWord(pub Vec<Phase>);

impl PhaseWord {
    pub fn first(&self) -> Phase {
        self.0[0]
    }

    pub fn last(&self) -> Phase {
        self.0[self.0.len() - 1]
    }
}

impl fmt::Display for PhaseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.0.iter().map(|r| alloc::format!("{r}")).collect();
        write!(f, "({})", letters.join(", "))
    }
}

fn nonzero(m: &Rep) -> Result<()> {
    if m.is_zero() {
        return Err(input_err!("the zero module has no Harder-Narasimhan filtration"));
    }
    Ok(())
}

/// Peel off the quotient of smallest phase, `M / t_{X_i} M` for the first piece `X_i` not
/// containing `M`, and repeat on the torsion part.
pub fn hn_filtration(u: &Universe, chain: &StepChain, m: &Rep) -> Result<HnFiltration> {
    nonzero(m)?;
    let mut terms = Vec::new();
    let mut phases = Vec::new();
    let mut factors = Vec::new();
    let mut current = m.full_subrep();
    loop {
        let cur = m.restrict(&current)?;
        let support = u.support(&cur)?;
        let (phase, next_class) = match chain.pieces().iter().position(|x| !support.is_subset(*x)) {
            Some(i) => (chain.breakpoints()[i], chain.pieces()[i]),
            None => (Phase::one(), ClassSet::EMPTY),
        };
        let inner = u.trace(&cur, next_class)?;
        factors.push(u.table().classify(&cur.quotient(&inner)?)?);
        phases.push(phase);
        terms.push(current.clone());
        if inner.is_zero() {
            break;
        }
        current = m.embed(&current, &inner);
    }
    terms.reverse();
    phases.reverse();
    factors.reverse();
    Ok(HnFiltration { terms, phases, factors })
}

pub fn phase_word(u: &Universe, chain: &StepChain, m: &Rep) -> Result<PhaseWord> {
    let mut letters = hn_filtration(u, chain, m)?.phases;
    letters.reverse();
    Ok(PhaseWord(letters))
}

/// Lexicographic comparison of phase words; a strict prefix is smaller.
pub fn compare(u: &Universe, chain: &StepChain, m: &Rep, n: &Rep) -> Result<Ordering> {
    Ok(phase_word(u, chain, m)?.cmp(&phase_word(u, chain, n)?))
}

/// `(M⁻, M⁺)`: the last HN factor (a quotient of `M`) and the first HN term (a submodule).
pub fn max_destab(u: &Universe, chain: &StepChain, m: &Rep) -> Result<(Rep, Rep)> {
    let hn = hn_filtration(u, chain, m)?;
    let n = hn.len();
    let minus = if n == 1 { m.clone() } else { m.quotient(&hn.terms[n - 2])? };
    let plus = m.restrict(&hn.terms[0])?;
    Ok((minus, plus))
}

/// Every filtration of one module by quasisemistable factors with strictly decreasing
/// phases, found by depth-first search over chains of submodules. Factor supports are
/// memoized so one oracle can be queried against many chains.
pub struct FiltrationOracle<'a> {
    u: &'a Universe,
    m: Rep,
    subs: Vec<SubRep>,
    memo: BTreeMap<(usize, usize), ClassSet>,
}

impl<'a> FiltrationOracle<'a> {
    pub fn new(u: &'a Universe, m: Rep) -> Result<Self> {
        nonzero(&m)?;
        if m.total_dim() > ORACLE_DIM_GUARD {
            return Err(resource_err!(
                "filtration search limited to total dimension {ORACLE_DIM_GUARD}, module has {}",
                m.total_dim()
            ));
        }
        let mut subs = submodules(&m)?;
        subs.sort_by_key(SubRep::total_dim);
        Ok(FiltrationOracle { u, m, subs, memo: BTreeMap::new() })
    }

    pub fn module(&self) -> &Rep {
        &self.m
    }

    fn factor_support(&mut self, lower: usize, upper: usize) -> Result<ClassSet> {
        if let Some(s) = self.memo.get(&(lower, upper)) {
            return Ok(*s);
        }
        let top = self.m.restrict(&self.subs[upper])?;
        let rel = self.m.relative(&self.subs[upper], &self.subs[lower])?;
        let s = self.u.support(&top.quotient(&rel)?)?;
        self.memo.insert((lower, upper), s);
        Ok(s)
    }

    /// All valid filtrations for `chain`; the HN theorem says there is exactly one.
    pub fn filtrations(&mut self, chain: &StepChain) -> Result<Vec<HnFiltration>> {
        let cats = chain.nonzero_categories(self.u);
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.search(&cats, 0, None, &mut path, &mut out)?;
        Ok(out)
    }

    fn search(
        &mut self,
        cats: &[PhaseCategory],
        at: usize,
        bound: Option<Phase>,
        path: &mut Vec<(usize, Phase)>,
        out: &mut Vec<HnFiltration>,
    ) -> Result<()> {
        if self.subs[at].is_full() {
            let terms = path.iter().map(|&(i, _)| self.subs[i].clone()).collect();
            let phases = path.iter().map(|&(_, r)| r).collect();
            let mut factors = Vec::with_capacity(path.len());
            let mut lower = 0;
            for &(i, _) in path.iter() {
                let top = self.m.restrict(&self.subs[i])?;
                let rel = self.m.relative(&self.subs[i], &self.subs[lower])?;
                factors.push(self.u.table().classify(&top.quotient(&rel)?)?);
                lower = i;
            }
            out.push(HnFiltration { terms, phases, factors });
            return Ok(());
        }
        for next in 0..self.subs.len() {
            if self.subs[next].total_dim() <= self.subs[at].total_dim()
                || !self.subs[at].is_contained_in(&self.subs[next])
            {
                continue;
            }
            let support = self.factor_support(at, next)?;
            let Some(cat) = cats.iter().find(|c| support.is_subset(c.members)) else { continue };
            if bound.is_some_and(|b| cat.phase >= b) {
                continue;
            }
            path.push((next, cat.phase));
            self.search(cats, next, Some(cat.phase), path, out)?;
            path.pop();
        }
        Ok(())
    }
}
