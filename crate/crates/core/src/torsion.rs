//! Torsion classes as sets of indecomposables: closure operations, traces, and the lattice.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::classset::{ClassSet, MAX_INDECS};
use crate::error::{input_err, internal_err, resource_err, Result};
use crate::repcat::{hom_basis, submodules, IndecTable, ModClass, Rep, SubRep};

/// Largest table for which the full torsion lattice is enumerated.
pub const LATTICE_GUARD: usize = 12;

/// An indecomposable table together with the quotient, subobject and extension data that
/// every closure operation reads. Built once, immutable afterwards.
#[derive(Debug, Clone)]
pub struct Universe {
    table: IndecTable,
    quotients: Vec<ClassSet>,
    subobjects: Vec<ClassSet>,
    // extensions[a][c]: summands of middle terms E in 0 -> X_a -> E -> X_c -> 0
    extensions: Vec<Vec<ClassSet>>,
}

/// `0 -> tM -> M -> M/tM -> 0`, with `torsion` given as a subrepresentation of `M`.
#[derive(Debug, Clone)]
pub struct CanonicalSes {
    pub torsion: SubRep,
    pub torsion_part: Rep,
    pub quotient_part: Rep,
}

impl Universe {
    pub fn new(table: IndecTable) -> Result<Self> {
        let n = table.len();
        if n > MAX_INDECS {
            return Err(resource_err!("{n} indecomposables; class sets hold at most {MAX_INDECS}"));
        }
        let mut quotients = Vec::with_capacity(n);
        let mut subobjects = Vec::with_capacity(n);
        for i in 0..n {
            let x = table.rep(i);
            let mut q = ClassSet::EMPTY;
            let mut s = ClassSet::EMPTY;
            for u in submodules(x)? {
                q = q.union(support_of(&table.classify(&x.quotient(&u)?)?));
                s = s.union(support_of(&table.classify(&x.restrict(&u)?)?));
            }
            quotients.push(q);
            subobjects.push(s);
        }
        let extensions = (0..n)
            .map(|a| (0..n).map(|c| middle_term_summands(&table, a, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Universe { table, quotients, subobjects, extensions })
    }

    pub fn table(&self) -> &IndecTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// The whole category `A`.
    pub fn all(&self) -> ClassSet {
        ClassSet::full(self.len())
    }

    /// Indecomposable summands of quotients of `X_i` (including `X_i`).
    pub fn quotient_summands(&self, i: usize) -> ClassSet {
        self.quotients[i]
    }

    /// Indecomposable summands of subobjects of `X_i` (including `X_i`).
    pub fn subobject_summands(&self, i: usize) -> ClassSet {
        self.subobjects[i]
    }

    /// Indecomposable summands of every middle term `E` of `0 -> X_sub -> E -> X_quot -> 0`.
    pub fn extension_summands(&self, sub: usize, quot: usize) -> ClassSet {
        self.extensions[sub][quot]
    }

    /// The set of indecomposables occurring as summands of `m`.
    pub fn support(&self, m: &Rep) -> Result<ClassSet> {
        Ok(support_of(&self.table.classify(m)?))
    }

    /// Whether `m` lies in the additive closure of `s`.
    pub fn contains(&self, s: ClassSet, m: &Rep) -> Result<bool> {
        Ok(self.support(m)?.is_subset(s))
    }

    pub fn class_contains(&self, s: ClassSet, class: &ModClass) -> bool {
        support_of(class).is_subset(s)
    }

    fn extension_closed(&self, s: ClassSet) -> bool {
        s.iter().all(|a| s.iter().all(|c| self.extensions[a][c].is_subset(s)))
    }

    /// Closed under quotients and under extensions between indecomposable members.
    pub fn is_torsion_class(&self, s: ClassSet) -> bool {
        s.iter().all(|i| self.quotients[i].is_subset(s)) && self.extension_closed(s)
    }

    /// Closed under subobjects and under extensions between indecomposable members.
    pub fn is_torsion_free_class(&self, s: ClassSet) -> bool {
        s.iter().all(|i| self.subobjects[i].is_subset(s)) && self.extension_closed(s)
    }

    /// `{Y : Hom(X, Y) = 0 for all X in s}`.
    pub fn perp(&self, s: ClassSet) -> ClassSet {
        ClassSet::from_indices((0..self.len()).filter(|&y| s.iter().all(|x| self.table.hom_dim(x, y) == 0)))
    }

    /// `{X : Hom(X, Y) = 0 for all Y in s}`.
    pub fn left_perp(&self, s: ClassSet) -> ClassSet {
        ClassSet::from_indices((0..self.len()).filter(|&x| s.iter().all(|y| self.table.hom_dim(x, y) == 0)))
    }

    /// Smallest torsion class containing `gens`.
    pub fn tors_closure(&self, gens: ClassSet) -> ClassSet {
        let mut s = gens;
        loop {
            let mut next = s;
            for a in s.iter() {
                next = next.union(self.quotients[a]);
                for c in s.iter() {
                    next = next.union(self.extensions[a][c]);
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Extension closure `Filt(gens)`.
    pub fn filt(&self, gens: ClassSet) -> ClassSet {
        let mut s = gens;
        loop {
            let mut next = s;
            for a in s.iter() {
                for c in s.iter() {
                    next = next.union(self.extensions[a][c]);
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Trace of `add(s)` in `m`: the sum of the images of all morphisms from members of `s`.
    pub fn trace(&self, m: &Rep, s: ClassSet) -> Result<SubRep> {
        let mut acc = m.zero_subrep();
        for x in s.iter() {
            for f in hom_basis(self.table.rep(x), m)? {
                acc = acc.sum(&m.image_of(&f));
            }
        }
        Ok(acc)
    }

    /// `Fac(M)`: indecomposables that are quotients of a power of `class`.
    pub fn fac_closure(&self, class: &ModClass) -> Result<ClassSet> {
        let gens = support_of(class);
        let mut out = ClassSet::EMPTY;
        for y in 0..self.len() {
            if self.trace(self.table.rep(y), gens)?.is_full() {
                out = out.with(y);
            }
        }
        Ok(out)
    }

    /// The canonical sequence of `m` for the torsion pair `(t, perp(t))`.
    pub fn torsion_subobject(&self, m: &Rep, t: ClassSet) -> Result<CanonicalSes> {
        if !self.is_torsion_class(t) {
            return Err(input_err!("{} is not a torsion class", self.format_set(t)));
        }
        let torsion = self.trace(m, t)?;
        let torsion_part = m.restrict(&torsion)?;
        let quotient_part = m.quotient(&torsion)?;
        if !self.contains(t, &torsion_part)? || !self.contains(self.perp(t), &quotient_part)? {
            return Err(internal_err!("trace of {} does not split the module into a torsion pair", self.format_set(t)));
        }
        Ok(CanonicalSes { torsion, torsion_part, quotient_part })
    }

    /// Reference answer for traces: the largest submodule lying in `add(s)`, by brute force.
    /// `None` if there is no unique largest one.
    pub fn max_subobject_in(&self, m: &Rep, s: ClassSet) -> Result<Option<SubRep>> {
        let inside: Vec<SubRep> = submodules(m)?
            .into_iter()
            .map(|u| Ok((self.contains(s, &m.restrict(&u)?)?, u)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter_map(|(ok, u)| ok.then_some(u))
            .collect();
        let best = inside.iter().max_by_key(|u| u.total_dim()).cloned();
        Ok(best.filter(|b| inside.iter().all(|u| u.is_contained_in(b))))
    }

    /// `add{S1, M[1..2]}`, or `{0}` for the zero class.
    pub fn format_set(&self, s: ClassSet) -> String {
        if s.is_empty() {
            return String::from("{0}");
        }
        let names: Vec<&str> = s.iter().map(|i| self.table.name(i)).collect();
        alloc::format!("add{{{}}}", names.join(", "))
    }

    /// Parse a list of indecomposable names.
    pub fn parse_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<ClassSet> {
        let mut s = ClassSet::EMPTY;
        for name in names {
            let i = self.table.index_of(name.trim()).ok_or_else(|| input_err!("unknown indecomposable {name:?}"))?;
            s = s.with(i);
        }
        Ok(s)
    }
}

pub fn support_of(class: &ModClass) -> ClassSet {
    ClassSet::from_indices(class.support())
}

fn middle_term_summands(table: &IndecTable, a: usize, c: usize) -> Result<ClassSet> {
    let n = table.len();
    let da = table.dims(a).to_vec();
    let dims: Vec<usize> = da.iter().zip(table.dims(c)).map(|(x, y)| x + y).collect();
    let want_sub = ModClass::single(n, a);
    let want_quot = ModClass::single(n, c);
    let mut out = ClassSet::EMPTY;
    for e in table.classes_with_dims(&dims) {
        let support = support_of(&e);
        if support.is_subset(out) {
            continue;
        }
        let rep = table.direct_sum(&e);
        for u in submodules(&rep)? {
            if u.dims() != da {
                continue;
            }
            if table.classify(&rep.restrict(&u)?)? == want_sub && table.classify(&rep.quotient(&u)?)? == want_quot {
                out = out.union(support);
                break;
            }
        }
    }
    Ok(out)
}

/// Every torsion class, ordered by size and then by bits, with the Hasse cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    classes: Vec<ClassSet>,
    index: BTreeMap<ClassSet, usize>,
    // (upper, lower) index pairs
    covers: Vec<(usize, usize)>,
}

impl Lattice {
    fn from_classes(mut classes: Vec<ClassSet>) -> Self {
        classes.sort_by_key(|s| (s.len(), s.bits()));
        classes.dedup();
        let index = classes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut covers = Vec::new();
        for (u, &upper) in classes.iter().enumerate() {
            for (l, &lower) in classes.iter().enumerate() {
                if lower.is_proper_subset(upper)
                    && !classes.iter().any(|&mid| lower.is_proper_subset(mid) && mid.is_proper_subset(upper))
                {
                    covers.push((u, l));
                }
            }
        }
        Lattice { classes, index, covers }
    }

    pub fn classes(&self) -> &[ClassSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, s: ClassSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: ClassSet) -> bool {
        self.index.contains_key(&s)
    }

    pub fn is_cover(&self, upper: ClassSet, lower: ClassSet) -> bool {
        match (self.index_of(upper), self.index_of(lower)) {
            (Some(u), Some(l)) => self.covers.contains(&(u, l)),
            _ => false,
        }
    }

    /// Classes covered by `upper`.
    pub fn lower_covers(&self, upper: ClassSet) -> Vec<ClassSet> {
        let Some(u) = self.index_of(upper) else { return Vec::new() };
        self.covers.iter().filter(|&&(a, _)| a == u).map(|&(_, l)| self.classes[l]).collect()
    }

    /// Lattice elements strictly between `lower` and `upper`.
    pub fn strictly_between(&self, upper: ClassSet, lower: ClassSet) -> Vec<ClassSet> {
        self.classes.iter().copied().filter(|&m| lower.is_proper_subset(m) && m.is_proper_subset(upper)).collect()
    }
}

fn check_lattice_guard(u: &Universe) -> Result<()> {
    if u.len() > LATTICE_GUARD {
        return Err(resource_err!("{} indecomposables exceed the lattice guard of {LATTICE_GUARD}", u.len()));
    }
    Ok(())
}

/// All torsion classes by scanning every subset of the table.
pub fn enumerate_lattice(u: &Universe) -> Result<Lattice> {
    check_lattice_guard(u)?;
    let classes = (0..1u64 << u.len()).map(ClassSet::from_bits).filter(|&s| u.is_torsion_class(s)).collect();
    Ok(Lattice::from_classes(classes))
}

/// All torsion classes by breadth-first search from `{0}`, stepping `T -> tors(T + X)`.
/// Independent of the subset scan: it never calls the torsion-class test.
pub fn lattice_by_closure(u: &Universe) -> Result<Vec<ClassSet>> {
    check_lattice_guard(u)?;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([ClassSet::EMPTY]);
    seen.insert(ClassSet::EMPTY);
    while let Some(t) = queue.pop_front() {
        for x in 0..u.len() {
            if t.contains(x) {
                continue;
            }
            let next = u.tors_closure(t.with(x));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
