//! Quiver representations over F_p: Hom spaces, subobjects, quotients,
//! isomorphism and brick tests, and the table of indecomposables.

mod rep;
mod table;

pub use rep::{
    hom_basis, hom_dim, is_brick, is_indecomposable, is_iso, submodules, Morphism, Orientation, Quiver, Rep, SubRep,
    HOM_ENUM_GUARD,
};
pub use table::{IndecTable, ModClass};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gaussian_binomial, FpMatrix, Prime};
    use alloc::sync::Arc;
    use alloc::vec;
    use alloc::vec::Vec;
    use Orientation::Right;

    fn f(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn a2(p: u32) -> IndecTable {
        IndecTable::type_a(&[Right], f(p)).unwrap()
    }

    fn a3(p: u32) -> IndecTable {
        IndecTable::type_a(&[Right, Right], f(p)).unwrap()
    }

    fn idx(t: &IndecTable, name: &str) -> usize {
        t.index_of(name).unwrap()
    }

    fn sum(t: &IndecTable, text: &str) -> Rep {
        t.direct_sum(&t.parse_class(text).unwrap())
    }

    #[test]
    fn type_a_tables() {
        let t = a3(2);
        assert_eq!(t.names(), &["S1", "S2", "S3", "M[1..2]", "M[2..3]", "M[1..3]"]);
        assert_eq!(IndecTable::type_a(&[], f(3)).unwrap().len(), 1);
        assert_eq!(a2(3).len(), 3);
        for n in 1..=5 {
            let t = IndecTable::type_a(&vec![Right; n - 1], f(2)).unwrap();
            assert_eq!(t.len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn a2_classification_by_exhaustion() {
        // every rep of 1->2 over F_3 with dims <= (1,1), grouped into isomorphism classes
        let p = f(3);
        let q = Arc::new(Quiver::type_a(&[Right]));
        let mut reps = Vec::new();
        for d1 in 0..=1usize {
            for d2 in 0..=1usize {
                let entries: Vec<i64> = if d1 * d2 == 1 { (0..3).collect() } else { vec![0] };
                for a in entries {
                    let mut m = FpMatrix::zeros(p, d2, d1);
                    if d1 * d2 == 1 {
                        m.set(0, 0, a as u8);
                    }
                    reps.push(Rep::new(q.clone(), p, vec![d1, d2], vec![m]).unwrap());
                }
            }
        }
        let indecs: Vec<&Rep> = reps.iter().filter(|r| is_indecomposable(r).unwrap()).collect();
        let mut classes: Vec<&Rep> = Vec::new();
        for r in indecs {
            if !classes.iter().any(|c| is_iso(c, r).unwrap()) {
                classes.push(r);
            }
        }
        assert_eq!(classes.len(), 3);
        assert_eq!(a2(3).len(), classes.len());
    }

    #[test]
    fn hom_examples() {
        let t = a2(2);
        let s1 = t.rep(idx(&t, "S1"));
        let s2 = t.rep(idx(&t, "S2"));
        let m12 = t.rep(idx(&t, "M[1..2]"));
        for p in [2, 3, 5, 7] {
            let tp = a2(p);
            assert_eq!(hom_dim(tp.rep(0), tp.rep(0)).unwrap(), 1);
        }
        assert_eq!(hom_dim(s1, s2).unwrap(), 0);
        assert_eq!(hom_dim(s2, m12).unwrap(), 1);
        assert_eq!(hom_dim(m12, s1).unwrap(), 1);
        assert_eq!(hom_dim(s1, m12).unwrap(), 0);
    }

    /// Count all tuples of per-vertex matrices commuting with the arrows.
    fn brute_hom_count(m: &Rep, n: &Rep) -> usize {
        let p = m.prime();
        let q = p.get() as usize;
        let entries: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
        let mut count = 0;
        for mut code in 0..q.pow(entries as u32) {
            let comps: Vec<FpMatrix> = m
                .dims()
                .iter()
                .zip(n.dims())
                .map(|(&dm, &dn)| {
                    let mut c = FpMatrix::zeros(p, dn, dm);
                    for i in 0..dn {
                        for j in 0..dm {
                            c.set(i, j, (code % q) as u8);
                            code /= q;
                        }
                    }
                    c
                })
                .collect();
            let commutes = m
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .all(|(k, &(s, t))| comps[t].mul(&m.maps()[k]) == n.maps()[k].mul(&comps[s]));
            count += usize::from(commutes);
        }
        count
    }

    #[test]
    fn hom_dims_match_brute_force() {
        let t = a2(2);
        for i in 0..t.len() {
            for j in 0..t.len() {
                let expected = brute_hom_count(t.rep(i), t.rep(j));
                assert_eq!(2usize.pow(t.hom_dim(i, j) as u32), expected);
            }
        }
        let t3 = a3(2);
        for i in 0..t3.len() {
            for j in 0..t3.len() {
                assert_eq!(2usize.pow(t3.hom_dim(i, j) as u32), brute_hom_count(t3.rep(i), t3.rep(j)));
            }
        }
    }

    #[test]
    fn hom_is_additive() {
        let t = a3(3);
        for i in 0..t.len() {
            for k in 0..t.len() {
                let sum = Rep::direct_sum(&[t.rep(i), t.rep(k)], t.quiver().clone(), t.prime()).unwrap();
                for j in 0..t.len() {
                    assert_eq!(hom_dim(&sum, t.rep(j)).unwrap(), t.hom_dim(i, j) + t.hom_dim(k, j));
                    assert_eq!(hom_dim(t.rep(j), &sum).unwrap(), t.hom_dim(j, i) + t.hom_dim(j, k));
                }
            }
        }
    }

    #[test]
    fn hom_rejects_mismatch() {
        let a = a2(2);
        let b = a2(3);
        assert!(matches!(hom_basis(a.rep(0), b.rep(0)), Err(crate::Error::Input(_))));
        let c = a3(2);
        assert!(hom_basis(a.rep(0), c.rep(0)).is_err());
    }

    #[test]
    fn iso_examples() {
        let t = a2(2);
        let m12 = t.rep(idx(&t, "M[1..2]"));
        assert!(is_iso(m12, m12).unwrap());
        assert!(!is_iso(t.rep(0), t.rep(1)).unwrap());
        assert!(!is_iso(m12, &sum(&t, "S1+S2")).unwrap());
        // the Hom space M[1..2] -> S1+S2 has 2 elements over F_2, neither invertible
        assert_eq!(hom_dim(m12, &sum(&t, "S1+S2")).unwrap(), 1);
    }

    #[test]
    fn iso_guard_trips() {
        let t = a2(7);
        let big = sum(&t, "3*S1");
        // End(S1^3) has dimension 9 and 7^9 > 2^16
        assert!(matches!(is_iso(&big, &big), Err(crate::Error::Resource(_))));
    }

    #[test]
    fn submodule_examples() {
        let t = a2(2);
        let m12 = t.rep(idx(&t, "M[1..2]"));
        let subs = submodules(m12).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().any(|u| u.dims() == vec![0, 1]));
        assert!(!subs.iter().any(|u| u.dims() == vec![1, 0]));
        assert_eq!(submodules(t.rep(0)).unwrap().len(), 2);
        assert_eq!(submodules(&sum(&t, "S1+S2")).unwrap().len(), 4);
    }

    #[test]
    fn submodules_match_subspace_tuple_filter() {
        // brute force: filter the full product of per-vertex subspaces by arrow stability
        let t = a3(2);
        let m = sum(&t, "M[1..3]+M[2..3]+S2");
        let per: Vec<Vec<crate::linalg::Subspace>> =
            m.dims().iter().map(|&d| crate::linalg::all_subspaces(d, m.prime()).unwrap()).collect();
        let mut count = 0;
        for a in &per[0] {
            for b in &per[1] {
                for c in &per[2] {
                    let u = SubRep { spaces: vec![a.clone(), b.clone(), c.clone()] };
                    count += usize::from(m.is_subrep(&u));
                }
            }
        }
        assert_eq!(submodules(&m).unwrap().len(), count);
    }

    #[test]
    fn semisimple_submodule_counts() {
        for p in [2u32, 3] {
            let t = a2(p);
            for k in 1..=4usize {
                let m = t.direct_sum(&ModClass::from_multiplicities(vec![k as u32, 0, 0]));
                let expected: u64 = (0..=k).map(|j| gaussian_binomial(k, j, p as u64)).sum();
                assert_eq!(submodules(&m).unwrap().len() as u64, expected);
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let t = a2(2);
        let m12 = t.rep(idx(&t, "M[1..2]"));
        let q0 = m12.quotient(&m12.zero_subrep()).unwrap();
        assert!(is_iso(&q0, m12).unwrap());
        assert!(m12.quotient(&m12.full_subrep()).unwrap().is_zero());
        let s2_sub = submodules(m12).unwrap().into_iter().find(|u| u.dims() == vec![0, 1]).unwrap();
        let q = m12.quotient(&s2_sub).unwrap();
        assert!(is_iso(&q, t.rep(idx(&t, "S1"))).unwrap());
        assert!(is_iso(&m12.restrict(&s2_sub).unwrap(), t.rep(idx(&t, "S2"))).unwrap());
        // the S1-shaped tuple is not stable under the arrow
        let bad =
            SubRep { spaces: vec![crate::linalg::Subspace::full(f(2), 1), crate::linalg::Subspace::zero(f(2), 1)] };
        assert!(matches!(m12.quotient(&bad), Err(crate::Error::Input(_))));
    }

    #[test]
    fn inclusion_and_projection_compose_to_zero() {
        let t = a3(3);
        let m = sum(&t, "M[1..3]+M[1..2]+S2");
        for u in submodules(&m).unwrap() {
            let inc = m.inclusion(&u);
            let proj = m.projection(&u);
            assert!(proj.compose(&inc).is_zero());
            assert!(inc.is_mono() && proj.is_epi());
        }
    }

    #[test]
    fn decompose_examples() {
        let t = a2(3);
        let s1 = idx(&t, "S1");
        assert_eq!(t.decompose(t.rep(s1)).unwrap(), ModClass::single(3, s1));
        assert_eq!(t.decompose(&sum(&t, "S1+S1")).unwrap(), ModClass::from_multiplicities(vec![2, 0, 0]));
        // non-split extension 0 -> S2 -> E -> S1 -> 0 with arrow map 2 over F_3
        let mut a = FpMatrix::zeros(f(3), 1, 1);
        a.set(0, 0, 2);
        let e = Rep::new(t.quiver().clone(), f(3), vec![1, 1], vec![a]).unwrap();
        let s2_sub = submodules(&e).unwrap().into_iter().find(|u| u.dims() == vec![0, 1]).unwrap();
        assert!(is_iso(&e.quotient(&s2_sub).unwrap(), t.rep(s1)).unwrap());
        assert_eq!(t.decompose(&e).unwrap(), ModClass::single(3, idx(&t, "M[1..2]")));
    }

    #[test]
    fn decompose_inverts_direct_sum() {
        for t in [a2(2), a3(2)] {
            for class in t.classes_up_to_total_dim(6) {
                assert_eq!(t.decompose(&t.direct_sum(&class)).unwrap(), class);
            }
        }
    }

    #[test]
    fn brick_examples() {
        let t = a3(2);
        assert!(is_brick(t.rep(0)).unwrap());
        assert!(!is_brick(&sum(&t, "S1+S1")).unwrap());
        assert!(is_brick(t.rep(idx(&t, "M[1..3]"))).unwrap());
        for i in 0..t.len() {
            assert!(is_brick(t.rep(i)).unwrap());
            assert!(is_indecomposable(t.rep(i)).unwrap());
        }
        assert!(!is_indecomposable(&sum(&t, "S1+S2")).unwrap());
    }

    #[test]
    fn explicit_tables_are_validated() {
        let t = a2(2);
        let good: Vec<_> = (0..t.len()).map(|i| (t.name(i).into(), t.rep(i).clone())).collect();
        let rebuilt = IndecTable::from_entries(t.quiver().clone(), t.prime(), good.clone()).unwrap();
        assert_eq!(rebuilt.hom_dims(), t.hom_dims());
        let mut dup = good.clone();
        dup.push(("copy".into(), t.rep(0).clone()));
        assert!(IndecTable::from_entries(t.quiver().clone(), t.prime(), dup).is_err());
        let mut dec = good;
        dec[0] = ("sum".into(), sum(&t, "S1+S2"));
        assert!(IndecTable::from_entries(t.quiver().clone(), t.prime(), dec).is_err());
    }

    #[test]
    fn class_enumeration() {
        let t = a2(2);
        let within = t.classes_within(&[1, 1]);
        let names: Vec<_> = within.iter().map(|c| t.format_class(c)).collect();
        assert_eq!(within.len(), 5, "{names:?}");
        assert_eq!(t.classes_with_dims(&[1, 1]).len(), 2);
        assert_eq!(t.parse_class("S1+2*S2").unwrap(), ModClass::from_multiplicities(vec![1, 2, 0]));
        assert_eq!(t.format_class(&t.parse_class("0").unwrap()), "0");
        assert_eq!(t.format_class(&t.parse_class("S2+S1+S2").unwrap()), "S1+2*S2");
        assert!(t.parse_class("S9").is_err());
    }

    #[test]
    fn mixed_orientation_tables() {
        // 1 <- 2 -> 3
        let t = IndecTable::type_a(&[Orientation::Left, Right], f(2)).unwrap();
        assert_eq!(t.len(), 6);
        for class in t.classes_up_to_total_dim(4) {
            assert_eq!(t.decompose(&t.direct_sum(&class)).unwrap(), class);
        }
    }
}
