//! Maximal green sequences: maximal chains of the torsion lattice, their step chains and brick labels.

use alloc::vec;
use alloc::vec::Vec;

use crate::chains::{Phase, StepChain};
use crate::classset::ClassSet;
use crate::error::{input_err, internal_err, Result};
use crate::repcat::{is_brick, submodules};
use crate::torsion::{Lattice, Universe};

/// `A = T_0 ⊋ T_1 ⊋ … ⊋ T_t = {0}` with every step a cover.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GreenSequence {
    classes: Vec<ClassSet>,
}

/// One brick per cover, in cover order (increasing phase on the associated chain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickLabels {
    pub bricks: Vec<usize>,
    pub phases: Vec<Phase>,
    pub c_vectors: Vec<Vec<usize>>,
}

impl GreenSequence {
    /// Validate a hand-written sequence against the lattice.
    pub fn new(u: &Universe, lattice: &Lattice, classes: Vec<ClassSet>) -> Result<Self> {
        if classes.first() != Some(&u.all()) || classes.last() != Some(&ClassSet::EMPTY) {
            return Err(input_err!("a green sequence runs from A down to {{0}}"));
        }
        for w in classes.windows(2) {
            if !lattice.is_cover(w[0], w[1]) {
                return Err(input_err!("{} does not cover {}", u.format_set(w[0]), u.format_set(w[1])));
            }
        }
        Ok(GreenSequence { classes })
    }

    pub fn classes(&self) -> &[ClassSet] {
        &self.classes
    }

    /// Number of covers `t`.
    pub fn len(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Every maximal chain from `A` to `{0}`, by depth-first search along Hasse covers.
pub fn enumerate_mgs(lattice: &Lattice) -> Vec<GreenSequence> {
    let (Some(&top), Some(&bottom)) = (lattice.classes().last(), lattice.classes().first()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut path = vec![top];
    dfs(lattice, bottom, &mut path, &mut out);
    out.sort();
    out
}

fn dfs(lattice: &Lattice, bottom: ClassSet, path: &mut Vec<ClassSet>, out: &mut Vec<GreenSequence>) {
    let here = *path.last().expect("path starts at the top");
    if here == bottom {
        out.push(GreenSequence { classes: path.clone() });
        return;
    }
    for next in lattice.lower_covers(here) {
        path.push(next);
        dfs(lattice, bottom, path, out);
        path.pop();
    }
}

/// Number of maximal chains, by dynamic programming over classes sorted by size.
/// Shares no code with [`enumerate_mgs`] beyond the cover relation.
pub fn count_maximal_chains(lattice: &Lattice) -> u64 {
    let n = lattice.len();
    if n == 0 {
        return 0;
    }
    // classes are sorted by size, so every cover goes from a larger to a smaller index
    let mut ways = vec![0u64; n];
    ways[0] = 1;
    for i in 1..n {
        ways[i] = lattice.covers().iter().filter(|&&(u, _)| u == i).map(|&(_, l)| ways[l]).sum();
    }
    ways[n - 1]
}

/// `T_i` on `(i/(t+1), (i+1)/(t+1))` for `i = 0..=t`, so the brick of the `i`-th cover sits
/// at phase `i/(t+1)`.
pub fn mgs_to_chain(u: &Universe, g: &GreenSequence) -> Result<StepChain> {
    let parts = g.classes.len() as i64;
    let spec: Vec<(Phase, ClassSet)> =
        g.classes.iter().enumerate().map(|(i, &c)| (Phase::new(i as i64 + 1, parts), c)).collect();
    StepChain::new(u, &spec)
}

/// Members of `p` with no proper nonzero subobject `L` such that `L` and `X/L` lie in `p`.
pub fn relatively_simple(u: &Universe, p: ClassSet) -> Result<ClassSet> {
    let mut out = ClassSet::EMPTY;
    for x in p.iter() {
        let m = u.table().rep(x);
        let mut simple = true;
        for s in submodules(m)? {
            if s.is_zero() || s.is_full() {
                continue;
            }
            if u.contains(p, &m.restrict(&s)?)? && u.contains(p, &m.quotient(&s)?)? {
                simple = false;
                break;
            }
        }
        if simple {
            out = out.with(x);
        }
    }
    Ok(out)
}

/// The brick `B_i` with `P = Filt(B_i)` at each cover of `g`.
pub fn brick_labels(u: &Universe, g: &GreenSequence) -> Result<BrickLabels> {
    let chain = mgs_to_chain(u, g)?;
    let parts = g.classes.len() as i64;
    let mut labels = BrickLabels { bricks: Vec::new(), phases: Vec::new(), c_vectors: Vec::new() };
    for i in 1..g.classes.len() {
        let phase = Phase::new(i as i64, parts);
        let p = chain.phase_category(u, phase);
        let simples = relatively_simple(u, p)?;
        if simples.len() != 1 {
            return Err(internal_err!(
                "cover {} ⊋ {} has {} relatively simple objects in {}",
                u.format_set(g.classes[i - 1]),
                u.format_set(g.classes[i]),
                simples.len(),
                u.format_set(p)
            ));
        }
        let b = simples.iter().next().expect("one element");
        if !is_brick(u.table().rep(b))? {
            return Err(internal_err!("label {} is not a brick", u.table().name(b)));
        }
        if u.filt(ClassSet::singleton(b)) != p {
            return Err(internal_err!("Filt({}) is not {}", u.table().name(b), u.format_set(p)));
        }
        labels.bricks.push(b);
        labels.phases.push(phase);
        labels.c_vectors.push(u.table().dims(b).to_vec());
    }
    Ok(labels)
}

pub fn c_vectors(u: &Universe, g: &GreenSequence) -> Result<Vec<Vec<usize>>> {
    Ok(brick_labels(u, g)?.c_vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{hn_filtration, FiltrationOracle};
    use crate::linalg::Prime;
    use crate::repcat::{IndecTable, Orientation, Orientation::Left, Orientation::Right};
    use crate::torsion::enumerate_lattice;
    use alloc::collections::BTreeSet;

    fn universe(orient: &[Orientation]) -> Universe {
        Universe::new(IndecTable::type_a(orient, Prime::new(2).unwrap()).unwrap()).unwrap()
    }

    fn set(u: &Universe, names: &[&str]) -> ClassSet {
        u.parse_set(names.iter().copied()).unwrap()
    }

    #[test]
    fn counts() {
        let a1 = universe(&[]);
        assert_eq!(enumerate_mgs(&enumerate_lattice(&a1).unwrap()).len(), 1);
        let a2 = universe(&[Right]);
        let lat = enumerate_lattice(&a2).unwrap();
        assert_eq!(enumerate_mgs(&lat).len(), 2);
        for orient in [&[Right, Right][..], &[Right, Left], &[Left, Right], &[Right, Right, Right]] {
            let u = universe(orient);
            let lat = enumerate_lattice(&u).unwrap();
            assert_eq!(enumerate_mgs(&lat).len() as u64, count_maximal_chains(&lat));
        }
    }

    #[test]
    fn a2_sequences() {
        let u = universe(&[Right]);
        let lat = enumerate_lattice(&u).unwrap();
        let short = GreenSequence::new(&u, &lat, vec![u.all(), set(&u, &["S2"]), ClassSet::EMPTY]).unwrap();
        let long =
            GreenSequence::new(&u, &lat, vec![u.all(), set(&u, &["M[1..2]", "S1"]), set(&u, &["S1"]), ClassSet::EMPTY])
                .unwrap();
        let all = enumerate_mgs(&lat);
        assert!(all.len() == 2 && all.contains(&short) && all.contains(&long));
        assert_eq!(mgs_to_chain(&u, &short).unwrap().pieces().len(), 3);
        assert_eq!(mgs_to_chain(&u, &long).unwrap().pieces().len(), 4);
        assert_eq!(c_vectors(&u, &short).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(c_vectors(&u, &long).unwrap(), vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
        assert!(GreenSequence::new(&u, &lat, vec![u.all(), ClassSet::EMPTY]).is_err());
    }

    #[test]
    fn a1_labels() {
        let u = universe(&[]);
        let lat = enumerate_lattice(&u).unwrap();
        let g = &enumerate_mgs(&lat)[0];
        assert_eq!(c_vectors(&u, g).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn labels_are_orthogonal_bricks_and_determine_the_sequence() {
        for orient in [&[Right][..], &[Right, Right], &[Left, Right]] {
            let u = universe(orient);
            let lat = enumerate_lattice(&u).unwrap();
            let mut seen = BTreeSet::new();
            for g in enumerate_mgs(&lat) {
                let labels = brick_labels(&u, &g).unwrap();
                assert_eq!(labels.bricks.len(), g.len());
                for (k, &a) in labels.bricks.iter().enumerate() {
                    for &b in &labels.bricks[..k] {
                        // later labels sit at higher phase: nothing maps down
                        assert_eq!(u.table().hom_dim(a, b), 0);
                    }
                }
                assert!(seen.insert(labels.c_vectors));
            }
        }
    }

    #[test]
    fn hn_factors_are_filtered_by_labels() {
        let u = universe(&[Right, Right]);
        let lat = enumerate_lattice(&u).unwrap();
        for g in enumerate_mgs(&lat) {
            let chain = mgs_to_chain(&u, &g).unwrap();
            let labels = brick_labels(&u, &g).unwrap();
            for class in u.table().classes_up_to_total_dim(3).into_iter().filter(|c| !c.is_zero()) {
                let m = u.table().direct_sum(&class);
                let hn = hn_filtration(&u, &chain, &m).unwrap();
                assert_eq!(
                    FiltrationOracle::new(&u, m.clone()).unwrap().filtrations(&chain).unwrap(),
                    vec![hn.clone()]
                );
                for (factor, phase) in hn.steps() {
                    let k = labels.phases.iter().position(|r| r == phase).expect("factor phases are label phases");
                    let brick = ClassSet::singleton(labels.bricks[k]);
                    assert!(u.class_contains(u.filt(brick), factor));
                }
            }
        }
    }
}
