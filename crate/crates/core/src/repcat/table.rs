use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::rep::{hom_dim, is_indecomposable, is_iso, Orientation, Quiver, Rep};
use crate::error::{input_err, internal_err, Error, Result};
use crate::linalg::{FpMatrix, Prime};

/// Isomorphism class of a module as multiplicities over the indecomposable table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModClass(Vec<u32>);

impl ModClass {
    pub fn zero(table_len: usize) -> Self {
        ModClass(vec![0; table_len])
    }

    pub fn single(table_len: usize, index: usize) -> Self {
        let mut m = Self::zero(table_len);
        m.0[index] = 1;
        m
    }

    pub fn from_multiplicities(mults: Vec<u32>) -> Self {
        ModClass(mults)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.0
    }

    pub fn multiplicity(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn summand_count(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, _)| i)
    }

    /// `(index, multiplicity)` pairs with nonzero multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied().enumerate().filter(|&(_, m)| m > 0)
    }

    pub fn add(&self, other: &ModClass) -> ModClass {
        ModClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn increment(&mut self, index: usize) {
        self.0[index] += 1;
    }
}

/// One representative per isomorphism class of indecomposables, with the Hom-dimension table.
#[derive(Debug, Clone)]
pub struct IndecTable {
    quiver: Arc<Quiver>,
    p: Prime,
    names: Vec<String>,
    reps: Vec<Rep>,
    hom_dims: Vec<Vec<usize>>,
    // inverse of the transposed Hom table, used to solve for multiplicities
    solver: Vec<Vec<Ratio<i64>>>,
}

impl IndecTable {
    /// The interval modules `M[i..j]` of a type-A quiver, ordered by length and then by start.
    pub fn type_a(orientation: &[Orientation], p: Prime) -> Result<Self> {
        let quiver = Arc::new(Quiver::type_a(orientation));
        let n = quiver.vertex_count();
        let mut names = Vec::new();
        let mut reps = Vec::new();
        for len in 1..=n {
            for start in 0..=(n - len) {
                let end = start + len - 1;
                names.push(if len == 1 { format!("S{}", start + 1) } else { format!("M[{}..{}]", start + 1, end + 1) });
                reps.push(interval_module(&quiver, p, start, end)?);
            }
        }
        Self::assemble(quiver, p, names, reps)
    }

    /// A user-supplied table; entries must be indecomposable and pairwise non-isomorphic.
    pub fn from_entries(quiver: Arc<Quiver>, p: Prime, entries: Vec<(String, Rep)>) -> Result<Self> {
        let (names, reps): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        for (name, r) in names.iter().zip(&reps) {
            if r.prime() != p || **r.quiver() != *quiver {
                return Err(input_err!("table entry {name} lives over a different quiver or field"));
            }
            if !is_indecomposable(r)? {
                return Err(input_err!("table entry {name} is not indecomposable"));
            }
        }
        for i in 0..reps.len() {
            for j in 0..i {
                if is_iso(&reps[i], &reps[j])? {
                    return Err(input_err!("table entries {} and {} are isomorphic", names[j], names[i]));
                }
            }
        }
        Self::assemble(quiver, p, names, reps)
    }

    fn assemble(quiver: Arc<Quiver>, p: Prime, names: Vec<String>, reps: Vec<Rep>) -> Result<Self> {
        let n = reps.len();
        let mut hom_dims = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                hom_dims[i][j] = hom_dim(&reps[i], &reps[j])?;
            }
        }
        let transposed: Vec<Vec<Ratio<i64>>> =
            (0..n).map(|j| (0..n).map(|i| Ratio::from_integer(hom_dims[i][j] as i64)).collect()).collect();
        let solver = invert(transposed).ok_or_else(|| input_err!("Hom-dimension table is singular"))?;
        Ok(IndecTable { quiver, p, names, reps, hom_dims, solver })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rep(&self, i: usize) -> &Rep {
        &self.reps[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn hom_dims(&self) -> &[Vec<usize>] {
        &self.hom_dims
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom_dims[i][j]
    }

    pub fn dims(&self, i: usize) -> &[usize] {
        self.reps[i].dims()
    }

    pub fn zero_rep(&self) -> Rep {
        Rep::zero(self.quiver.clone(), self.p)
    }

    pub fn class_dims(&self, class: &ModClass) -> Vec<usize> {
        let mut d = vec![0usize; self.quiver.vertex_count()];
        for (i, m) in class.iter() {
            for (acc, &x) in d.iter_mut().zip(self.dims(i)) {
                *acc += m as usize * x;
            }
        }
        d
    }

    /// The explicit direct sum representing `class`.
    pub fn direct_sum(&self, class: &ModClass) -> Rep {
        let parts: Vec<&Rep> =
            class.iter().flat_map(|(i, m)| core::iter::repeat_n(&self.reps[i], m as usize)).collect();
        Rep::direct_sum(&parts, self.quiver.clone(), self.p).expect("table entries share quiver and field")
    }

    /// Multiplicities from Hom counts, without the isomorphism cross-check of [`IndecTable::decompose`].
    pub fn classify(&self, m: &Rep) -> Result<ModClass> {
        let n = self.len();
        let mut h = Vec::with_capacity(n);
        for j in 0..n {
            h.push(Ratio::from_integer(hom_dim(m, &self.reps[j])? as i64));
        }
        let mut mults = Vec::with_capacity(n);
        for row in &self.solver {
            let v: Ratio<i64> = row.iter().zip(&h).fold(Ratio::zero(), |acc, (a, b)| acc + a * b);
            if !v.is_integer() || v < Ratio::zero() {
                return Err(internal_err!("Hom counts give non-integral or negative multiplicity {v}"));
            }
            mults.push(v.to_integer() as u32);
        }
        let class = ModClass(mults);
        if self.class_dims(&class) != m.dims() {
            return Err(internal_err!("decomposition has the wrong dimension vector"));
        }
        Ok(class)
    }

    /// Krull-Schmidt decomposition, validated by an isomorphism test against the explicit sum.
    pub fn decompose(&self, m: &Rep) -> Result<ModClass> {
        let class = self.classify(m)?;
        let sum = self.direct_sum(&class);
        let matches = match is_iso(m, &sum) {
            Ok(b) => b,
            // too many endomorphisms to search: compare the covariant Hom counts instead
            Err(Error::Resource(_)) => {
                let mut same = true;
                for j in 0..self.len() {
                    let expected: usize = class.iter().map(|(i, k)| k as usize * self.hom_dims[j][i]).sum();
                    same &= hom_dim(&self.reps[j], m)? == expected;
                }
                same
            }
            Err(e) => return Err(e),
        };
        if !matches {
            return Err(internal_err!(
                "module is not isomorphic to its Hom-count decomposition {}",
                self.format_class(&class)
            ));
        }
        Ok(class)
    }

    /// Every class whose dimension vector equals `dims`.
    pub fn classes_with_dims(&self, dims: &[usize]) -> Vec<ModClass> {
        let mut out = Vec::new();
        let mut cur = ModClass::zero(self.len());
        let mut remaining = dims.to_vec();
        self.classes_rec(0, &mut remaining, &mut cur, &mut |c, rem| {
            if rem.iter().all(|&x| x == 0) {
                out.push(c.clone());
            }
        });
        out
    }

    /// Every class (including zero) whose dimension vector is componentwise at most `bound`.
    pub fn classes_within(&self, bound: &[usize]) -> Vec<ModClass> {
        let mut out = Vec::new();
        let mut cur = ModClass::zero(self.len());
        let mut remaining = bound.to_vec();
        self.classes_rec(0, &mut remaining, &mut cur, &mut |c, _| out.push(c.clone()));
        out.sort();
        out
    }

    /// Every class (including zero) of total dimension at most `max_total`.
    pub fn classes_up_to_total_dim(&self, max_total: usize) -> Vec<ModClass> {
        let mut out = Vec::new();
        let mut cur = ModClass::zero(self.len());
        self.total_rec(0, max_total, &mut cur, &mut out);
        out.sort();
        out
    }

    fn total_rec(&self, idx: usize, budget: usize, cur: &mut ModClass, out: &mut Vec<ModClass>) {
        if idx == self.len() {
            out.push(cur.clone());
            return;
        }
        let size: usize = self.dims(idx).iter().sum();
        let mut k = 0;
        loop {
            self.total_rec(idx + 1, budget - k * size, cur, out);
            if (k + 1) * size > budget {
                break;
            }
            k += 1;
            cur.0[idx] += 1;
        }
        cur.0[idx] -= k as u32;
    }

    fn classes_rec(
        &self,
        idx: usize,
        remaining: &mut [usize],
        cur: &mut ModClass,
        f: &mut impl FnMut(&ModClass, &[usize]),
    ) {
        if idx == self.len() {
            f(cur, remaining);
            return;
        }
        let d = self.dims(idx).to_vec();
        let mut taken = 0;
        loop {
            self.classes_rec(idx + 1, remaining, cur, f);
            if remaining.iter().zip(&d).any(|(&r, &x)| r < x) {
                break;
            }
            for (r, &x) in remaining.iter_mut().zip(&d) {
                *r -= x;
            }
            cur.0[idx] += 1;
            taken += 1;
        }
        for (r, &x) in remaining.iter_mut().zip(&d) {
            *r += taken * x;
        }
        cur.0[idx] -= taken as u32;
    }

    /// `"S1+S3"`, `"2*S1"`, or `"0"` for the zero class.
    pub fn format_class(&self, class: &ModClass) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, m) in class.iter() {
            match m {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{m}*{}", self.names[i])),
            }
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join("+")
        }
    }

    /// Inverse of [`IndecTable::format_class`]; also accepts `k*NAME` terms.
    pub fn parse_class(&self, text: &str) -> Result<ModClass> {
        let mut class = ModClass::zero(self.len());
        let text = text.trim();
        if text == "0" {
            return Ok(class);
        }
        for term in text.split('+') {
            let term = term.trim();
            let (count, name) = match term.split_once('*') {
                Some((k, name)) => {
                    (k.trim().parse::<u32>().map_err(|_| input_err!("bad multiplicity in {term:?}"))?, name.trim())
                }
                None => (1, term),
            };
            let idx = self.index_of(name).ok_or_else(|| input_err!("unknown indecomposable {name:?}"))?;
            class.0[idx] += count;
        }
        Ok(class)
    }
}

fn interval_module(quiver: &Arc<Quiver>, p: Prime, start: usize, end: usize) -> Result<Rep> {
    let inside = |v: usize| v >= start && v <= end;
    let dims: Vec<usize> = (0..quiver.vertex_count()).map(|v| usize::from(inside(v))).collect();
    let maps = quiver
        .arrows()
        .iter()
        .map(
            |&(s, t)| {
                if inside(s) && inside(t) {
                    FpMatrix::identity(p, 1)
                } else {
                    FpMatrix::zeros(p, dims[t], dims[s])
                }
            },
        )
        .collect();
    Rep::new(quiver.clone(), p, dims, maps)
}

fn invert(mut a: Vec<Vec<Ratio<i64>>>) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Ratio<i64>>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col];
        for j in 0..n {
            a[col][j] /= pv;
            inv[col][j] /= pv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for j in 0..n {
                let (x, y) = (a[col][j], inv[col][j]);
                a[r][j] -= f * x;
                inv[r][j] -= f * y;
            }
        }
    }
    Some(inv)
}

impl fmt::Display for ModClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
