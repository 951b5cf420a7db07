//! The Hall algebra truncated by a dimension-vector cap, and the wall-crossing identities.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chains::{Phase, StepChain};
use crate::classset::ClassSet;
use crate::error::{input_err, Result};
use crate::repcat::{submodules, IndecTable, ModClass};
use crate::torsion::{support_of, Universe};

/// A formal sum `Σ a_M [M]` over classes with dimension vector at most `bound`.
/// Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallElem {
    bound: Vec<usize>,
    coeffs: BTreeMap<ModClass, BigInt>,
}

impl HallElem {
    pub fn zero(bound: &[usize]) -> Self {
        HallElem { bound: bound.to_vec(), coeffs: BTreeMap::new() }
    }

    pub fn bound(&self) -> &[usize] {
        &self.bound
    }

    pub fn coeff(&self, class: &ModClass) -> BigInt {
        self.coeffs.get(class).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModClass, &BigInt)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, class: ModClass, c: BigInt) {
        use alloc::collections::btree_map::Entry;
        match self.coeffs.entry(class) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &HallElem) -> Result<HallElem> {
        if self.bound != other.bound {
            return Err(input_err!("Hall elements truncated at different bounds"));
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }
}

/// Counts `c^M_{LN}` for every class `M` within a bound, tallied once from the submodules of `M`.
#[derive(Debug, Clone)]
pub struct HallAlgebra {
    table: IndecTable,
    bound: Vec<usize>,
    classes: Vec<ModClass>,
    tally: BTreeMap<ModClass, BTreeMap<(ModClass, ModClass), u64>>,
}

/// Submodules `L'` of the standard representative of `m` with `L' ≅ l` and `M/L' ≅ n`.
pub fn hall_number(table: &IndecTable, l: &ModClass, n: &ModClass, m: &ModClass) -> Result<u64> {
    let rep = table.direct_sum(m);
    let ld = table.class_dims(l);
    let mut count = 0;
    for s in submodules(&rep)? {
        if s.dims() == ld && table.decompose(&rep.restrict(&s)?)? == *l && table.decompose(&rep.quotient(&s)?)? == *n {
            count += 1;
        }
    }
    Ok(count)
}

impl HallAlgebra {
    pub fn new(table: &IndecTable, bound: &[usize]) -> Result<Self> {
        if bound.len() != table.quiver().vertex_count() {
            return Err(input_err!("bound needs one entry per vertex"));
        }
        let classes = table.classes_within(bound);
        let mut tally = BTreeMap::new();
        for m in &classes {
            let rep = table.direct_sum(m);
            let mut counts: BTreeMap<(ModClass, ModClass), u64> = BTreeMap::new();
            for s in submodules(&rep)? {
                let l = table.classify(&rep.restrict(&s)?)?;
                let n = table.classify(&rep.quotient(&s)?)?;
                *counts.entry((l, n)).or_default() += 1;
            }
            tally.insert(m.clone(), counts);
        }
        Ok(HallAlgebra { table: table.clone(), bound: bound.to_vec(), classes, tally })
    }

    pub fn table(&self) -> &IndecTable {
        &self.table
    }

    pub fn bound(&self) -> &[usize] {
        &self.bound
    }

    /// Every class within the bound, sorted; includes the zero class.
    pub fn classes(&self) -> &[ModClass] {
        &self.classes
    }

    /// `c^M_{LN}` from the tally; zero when `M` is outside the bound.
    pub fn structure_constant(&self, l: &ModClass, n: &ModClass, m: &ModClass) -> u64 {
        self.tally.get(m).and_then(|t| t.get(&(l.clone(), n.clone()))).copied().unwrap_or(0)
    }

    pub fn basis(&self, class: &ModClass) -> HallElem {
        let mut e = HallElem::zero(&self.bound);
        if self.tally.contains_key(class) {
            e.add_term(class.clone(), BigInt::one());
        }
        e
    }

    /// `[0]`, the unit.
    pub fn unit(&self) -> HallElem {
        self.basis(&ModClass::zero(self.table.len()))
    }

    /// `[L]·[N] = Σ_M c^M_{LN} [M]`, extended bilinearly and truncated at the bound.
    pub fn product(&self, a: &HallElem, b: &HallElem) -> Result<HallElem> {
        if a.bound != self.bound || b.bound != self.bound {
            return Err(input_err!("Hall elements truncated at a different bound"));
        }
        let mut out = HallElem::zero(&self.bound);
        for (m, counts) in &self.tally {
            let mut c = BigInt::zero();
            for ((l, n), &k) in counts {
                if let (Some(x), Some(y)) = (a.coeffs.get(l), b.coeffs.get(n)) {
                    c += x * y * BigInt::from(k);
                }
            }
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// `e_X = Σ_{M ∈ add X} [M]`.
    pub fn e_subcategory(&self, members: ClassSet) -> HallElem {
        let mut e = HallElem::zero(&self.bound);
        for m in &self.classes {
            if support_of(m).is_subset(members) {
                e.add_term(m.clone(), BigInt::one());
            }
        }
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallCrossingReport {
    /// The factors `P_t`, in the order they were multiplied (decreasing `t`).
    pub factors: Vec<(Phase, ClassSet)>,
    /// `(class, coefficient in e_A, coefficient in the product)` wherever they differ.
    pub mismatches: Vec<(ModClass, BigInt, BigInt)>,
    /// Every product coefficient lies in `{0, 1}`.
    pub coefficients_zero_one: bool,
    pub classes_compared: usize,
}

impl WallCrossingReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.coefficients_zero_one
    }
}

/// Compare `e_A` with the ordered product of `e_{P_t}` over decreasing `t`.
pub fn verify_wallcrossing(u: &Universe, alg: &HallAlgebra, chain: &StepChain) -> Result<WallCrossingReport> {
    let mut cats = chain.nonzero_categories(u);
    cats.reverse();
    let mut product = alg.unit();
    for c in &cats {
        product = alg.product(&product, &alg.e_subcategory(c.members))?;
    }
    let expected = alg.e_subcategory(u.all());
    let mut mismatches = Vec::new();
    for m in alg.classes() {
        let (want, got) = (expected.coeff(m), product.coeff(m));
        if want != got {
            mismatches.push((m.clone(), want, got));
        }
    }
    let coefficients_zero_one = product.iter().all(|(_, c)| c.is_one());
    Ok(WallCrossingReport {
        factors: cats.iter().map(|c| (c.phase, c.members)).collect(),
        mismatches,
        coefficients_zero_one,
        classes_compared: alg.classes().len(),
    })
}

/// `e_A = e_T · e_F`, as the wall-crossing identity of the chain `A | T | {0}`.
pub fn verify_torsion_pair_identity(u: &Universe, alg: &HallAlgebra, t: ClassSet) -> Result<WallCrossingReport> {
    let chain = StepChain::from_torsion_pair(u, t, Phase::new(1, 3), Phase::new(2, 3))?;
    verify_wallcrossing(u, alg, &chain)
}
