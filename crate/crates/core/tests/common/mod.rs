//! Universes and chain families shared by the integration tests.
#![allow(dead_code)]

use torschain_core::greenseq::{enumerate_mgs, mgs_to_chain};
use torschain_core::repcat::Orientation::{self, Right};
use torschain_core::{
    enumerate_lattice, ClassSet, IndecTable, Lattice, Phase, Prime, StabilityForm, StepChain, Universe,
};

pub fn q(n: i64, d: i64) -> Phase {
    Phase::new(n, d)
}

pub fn universe(orient: &[Orientation], p: u32) -> Universe {
    Universe::new(IndecTable::type_a(orient, Prime::new(p).unwrap()).unwrap()).unwrap()
}

pub fn a2(p: u32) -> Universe {
    universe(&[Right], p)
}

pub fn a3(p: u32) -> Universe {
    universe(&[Right, Right], p)
}

pub fn set(u: &Universe, names: &[&str]) -> ClassSet {
    u.parse_set(names.iter().copied()).unwrap()
}

/// The non-wide example on linear A3.
pub fn nowide(u: &Universe) -> StepChain {
    let x1 = set(u, &["S1", "S2", "M[2..3]", "M[1..2]", "M[1..3]"]);
    StepChain::new(u, &[(q(1, 3), x1), (q(2, 3), set(u, &["S1"])), (q(1, 1), ClassSet::EMPTY)]).unwrap()
}

/// `0 <= θ <= ρ` entrywise, with entries of `θ` in `0..=2` and of `ρ` in `1..=2`.
pub fn forms(u: &Universe) -> Vec<StabilityForm> {
    let n = u.table().quiver().vertex_count();
    let mut out = Vec::new();
    for code in 0..(3usize.pow(n as u32) * 2usize.pow(n as u32)) {
        let (mut t, mut r) = (code % 3usize.pow(n as u32), code / 3usize.pow(n as u32));
        let (mut theta, mut rho) = (Vec::new(), Vec::new());
        for _ in 0..n {
            theta.push((t % 3) as i64);
            rho.push((r % 2) as i64 + 1);
            t /= 3;
            r /= 2;
        }
        if theta.iter().zip(&rho).all(|(a, b)| a <= b) {
            out.push(StabilityForm::new(u, theta, rho).unwrap());
        }
    }
    out
}

/// Strictly decreasing runs of lattice elements of length up to `max_len`, spread evenly.
fn lattice_runs(u: &Universe, lattice: &Lattice, max_len: usize) -> Vec<StepChain> {
    fn extend(lattice: &Lattice, run: &mut Vec<ClassSet>, max_len: usize, out: &mut Vec<Vec<ClassSet>>) {
        out.push(run.clone());
        if run.len() == max_len {
            return;
        }
        let last = *run.last().unwrap();
        for &c in lattice.classes() {
            if c.is_proper_subset(last) {
                run.push(c);
                extend(lattice, run, max_len, out);
                run.pop();
            }
        }
    }
    let mut runs = Vec::new();
    for &c in lattice.classes() {
        extend(lattice, &mut vec![c], max_len, &mut runs);
    }
    runs.iter()
        .map(|run| {
            let k = run.len() as i64;
            let spec: Vec<_> = run.iter().enumerate().map(|(i, &c)| (q(i as i64 + 1, k), c)).collect();
            StepChain::new(u, &spec).unwrap()
        })
        .collect()
}

/// MGS chains, torsion-pair chains, the trivial chain, chains induced by a few forms and
/// short decreasing runs in the lattice, without duplicates.
pub fn family(u: &Universe, max_run: usize) -> Vec<StepChain> {
    let lattice = enumerate_lattice(u).unwrap();
    let mut out: Vec<StepChain> = enumerate_mgs(&lattice).iter().map(|g| mgs_to_chain(u, g).unwrap()).collect();
    out.push(StepChain::trivial(u));
    for &t in lattice.classes() {
        out.push(StepChain::from_torsion_pair(u, t, q(1, 3), q(2, 3)).unwrap());
    }
    if u.len() == 6 && u.table().quiver().arrows() == [(0, 1), (1, 2)] {
        out.push(nowide(u));
    }
    for f in forms(u).iter().step_by(3) {
        out.push(f.chain(u).unwrap());
    }
    out.extend(lattice_runs(u, &lattice, max_run));
    let mut seen = Vec::new();
    out.retain(|c| {
        if seen.contains(c) {
            false
        } else {
            seen.push(c.clone());
            true
        }
    });
    out
}
