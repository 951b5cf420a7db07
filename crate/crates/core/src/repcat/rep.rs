use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{input_err, resource_err, Result};
use crate::linalg::{all_subspaces, FpMatrix, Prime, Subspace};

/// Largest `p^dim` for which a Hom space is enumerated element by element.
pub const HOM_ENUM_GUARD: u64 = 1 << 16;

/// A finite quiver with vertices `0..vertex_count` (displayed 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

/// Direction of the arrow between vertices `i` and `i + 1` of a type-A quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `i -> i + 1`
    Right,
    /// `i + 1 -> i`
    Left,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(input_err!("a quiver needs at least one vertex"));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertex_count || t >= vertex_count) {
            return Err(input_err!("arrow {}->{} leaves the vertex range 1..{}", s + 1, t + 1, vertex_count));
        }
        Ok(Quiver { vertex_count, arrows })
    }

    /// The type-A quiver on `orientation.len() + 1` vertices.
    pub fn type_a(orientation: &[Orientation]) -> Self {
        let arrows = orientation
            .iter()
            .enumerate()
            .map(|(i, o)| match o {
                Orientation::Right => (i, i + 1),
                Orientation::Left => (i + 1, i),
            })
            .collect();
        Quiver { vertex_count: orientation.len() + 1, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
}

/// A representation: a vector space `F_p^{dims[v]}` per vertex and a matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    quiver: Arc<Quiver>,
    p: Prime,
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

/// A morphism of representations, one matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub components: Vec<FpMatrix>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(FpMatrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(FpMatrix::is_invertible)
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.rows())
    }

    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism { components: self.components.iter().zip(&first.components).map(|(g, f)| g.mul(f)).collect() }
    }

    fn is_nilpotent(&self) -> bool {
        self.components.iter().all(|c| {
            let mut acc = c.clone();
            for _ in 1..c.rows().max(1) {
                acc = acc.mul(c);
            }
            acc.is_zero()
        })
    }
}

/// A subrepresentation given by one subspace per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubRep {
    pub spaces: Vec<Subspace>,
}

impl SubRep {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn is_contained_in(&self, other: &SubRep) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    pub fn sum(&self, other: &SubRep) -> SubRep {
        SubRep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect() }
    }
}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, p: Prime, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(input_err!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                quiver.vertex_count()
            ));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(input_err!("{} matrices supplied for {} arrows", maps.len(), quiver.arrows().len()));
        }
        for (k, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.prime() != p {
                return Err(input_err!("matrix of arrow {k} is over F_{}, expected F_{p}", m.prime()));
            }
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(input_err!(
                    "matrix of arrow {}->{} is {}x{}, expected {}x{}",
                    s + 1,
                    t + 1,
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                ));
            }
        }
        Ok(Rep { quiver, p, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, p: Prime) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| FpMatrix::zeros(p, 0, 0)).collect();
        Rep { quiver, p, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    fn check_compatible(&self, other: &Rep) -> Result<()> {
        if self.p != other.p {
            return Err(input_err!("representations over F_{} and F_{}", self.p, other.p));
        }
        if !Arc::ptr_eq(&self.quiver, &other.quiver) && *self.quiver != *other.quiver {
            return Err(input_err!("representations of different quivers"));
        }
        Ok(())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(parts: &[&Rep], quiver: Arc<Quiver>, p: Prime) -> Result<Rep> {
        for r in parts {
            if r.p != p || *r.quiver != *quiver {
                return Err(input_err!("direct sum of incompatible representations"));
            }
        }
        let n = quiver.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let mut maps = Vec::with_capacity(quiver.arrows().len());
        for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
            let mut m = FpMatrix::zeros(p, dims[t], dims[s]);
            let (mut ro, mut co) = (0, 0);
            for r in parts {
                let a = &r.maps[k];
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(ro + i, co + j, a.get(i, j));
                    }
                }
                ro += r.dims[t];
                co += r.dims[s];
            }
            maps.push(m);
        }
        Ok(Rep { quiver, p, dims, maps })
    }

    pub fn full_subrep(&self) -> SubRep {
        SubRep { spaces: self.dims.iter().map(|&d| Subspace::full(self.p, d)).collect() }
    }

    pub fn zero_subrep(&self) -> SubRep {
        SubRep { spaces: self.dims.iter().map(|&d| Subspace::zero(self.p, d)).collect() }
    }

    /// Whether the tuple of subspaces is stable under every arrow.
    pub fn is_subrep(&self, u: &SubRep) -> bool {
        u.spaces.len() == self.dims.len()
            && u.spaces.iter().zip(&self.dims).all(|(s, &d)| s.ambient() == d && s.prime() == self.p)
            && self
                .quiver
                .arrows()
                .iter()
                .zip(&self.maps)
                .all(|(&(s, t), m)| u.spaces[s].basis().iter().all(|v| u.spaces[t].contains(&m.apply(v))))
    }

    fn check_subrep(&self, u: &SubRep) -> Result<()> {
        if self.is_subrep(u) {
            Ok(())
        } else {
            Err(input_err!("subspace tuple is not a subrepresentation"))
        }
    }

    /// The representation carried by a subrepresentation, in its canonical bases.
    pub fn restrict(&self, u: &SubRep) -> Result<Rep> {
        self.check_subrep(u)?;
        let dims = u.dims();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(s, t), m)| {
                let cols: Vec<Vec<u8>> = u.spaces[s]
                    .basis()
                    .iter()
                    .map(|v| u.spaces[t].coordinates(&m.apply(v)).expect("checked stable"))
                    .collect();
                FpMatrix::from_columns(self.p, dims[t], &cols)
            })
            .collect();
        Ok(Rep { quiver: self.quiver.clone(), p: self.p, dims, maps })
    }

    /// The quotient representation `self / u`, using the complement coordinates of each `u_v`.
    pub fn quotient(&self, u: &SubRep) -> Result<Rep> {
        self.check_subrep(u)?;
        let dims: Vec<usize> = self.dims.iter().zip(&u.spaces).map(|(&d, s)| d - s.dim()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(s, t), m)| {
                let cols: Vec<Vec<u8>> = u.spaces[s]
                    .complement_indices()
                    .into_iter()
                    .map(|j| u.spaces[t].quotient_coordinates(&m.column(j)))
                    .collect();
                FpMatrix::from_columns(self.p, dims[t], &cols)
            })
            .collect();
        Ok(Rep { quiver: self.quiver.clone(), p: self.p, dims, maps })
    }

    /// Inclusion `u -> self` matching [`Rep::restrict`].
    pub fn inclusion(&self, u: &SubRep) -> Morphism {
        Morphism { components: u.spaces.iter().map(Subspace::basis_matrix).collect() }
    }

    /// Projection `self -> self / u` matching [`Rep::quotient`].
    pub fn projection(&self, u: &SubRep) -> Morphism {
        let components = u
            .spaces
            .iter()
            .zip(&self.dims)
            .map(|(s, &d)| {
                let cols: Vec<Vec<u8>> = (0..d)
                    .map(|j| {
                        let mut e = vec![0u8; d];
                        e[j] = 1;
                        s.quotient_coordinates(&e)
                    })
                    .collect();
                FpMatrix::from_columns(self.p, d - s.dim(), &cols)
            })
            .collect();
        Morphism { components }
    }

    /// Image of a morphism `source -> self` as a subrepresentation of `self`.
    pub fn image_of(&self, f: &Morphism) -> SubRep {
        SubRep {
            spaces: f
                .components
                .iter()
                .zip(&self.dims)
                .map(|(c, &d)| Subspace::span(self.p, d, &c.rank_and_basis().1))
                .collect(),
        }
    }

    /// Push a subrepresentation of `u`'s carrier (given in `u`'s coordinates) into `self`.
    pub fn embed(&self, u: &SubRep, inner: &SubRep) -> SubRep {
        SubRep { spaces: u.spaces.iter().zip(&inner.spaces).map(|(outer, w)| w.image(&outer.basis_matrix())).collect() }
    }

    /// Express `inner ⊆ u` in the canonical coordinates of `u`.
    pub fn relative(&self, u: &SubRep, inner: &SubRep) -> Result<SubRep> {
        let mut spaces = Vec::with_capacity(u.spaces.len());
        for (outer, w) in u.spaces.iter().zip(&inner.spaces) {
            let mut coords = Vec::with_capacity(w.dim());
            for v in w.basis() {
                coords.push(outer.coordinates(v).ok_or_else(|| input_err!("subrepresentations are not nested"))?);
            }
            spaces.push(Subspace::span(self.p, outer.dim(), &coords));
        }
        Ok(SubRep { spaces })
    }
}

/// A basis of `Hom(m, n)`, computed as the kernel of the commutativity equations
/// `f_t * m_a = n_a * f_s` for every arrow `a: s -> t`.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<Vec<Morphism>> {
    m.check_compatible(n)?;
    let p = m.p;
    let nv = m.dims.len();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    // f_v[i][j] lives at offset[v] + i * dm[v] + j
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;
    let eq_count: usize = m.quiver.arrows().iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let mut system = FpMatrix::zeros(p, eq_count, unknowns);
    let mut row = 0;
    for (k, &(s, t)) in m.quiver.arrows().iter().enumerate() {
        let ma = &m.maps[k];
        let na = &n.maps[k];
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                // sum_l f_t[i][l] * ma[l][j]
                for l in 0..m.dims[t] {
                    let c = ma.get(l, j);
                    if c != 0 {
                        let col = var(t, i, l);
                        system.set(row, col, p.add(system.get(row, col), c));
                    }
                }
                // - sum_l na[i][l] * f_s[l][j]
                for l in 0..n.dims[s] {
                    let c = na.get(i, l);
                    if c != 0 {
                        let col = var(s, l, j);
                        system.set(row, col, p.sub(system.get(row, col), c));
                    }
                }
                row += 1;
            }
        }
    }
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|vec| {
            let components = (0..nv)
                .map(|v| {
                    let mut c = FpMatrix::zeros(p, n.dims[v], m.dims[v]);
                    for i in 0..n.dims[v] {
                        for j in 0..m.dims[v] {
                            c.set(i, j, vec[var(v, i, j)]);
                        }
                    }
                    c
                })
                .collect();
            Morphism { components }
        })
        .collect())
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    hom_basis(m, n).map(|b| b.len())
}

/// Call `f` on every element of the span of `basis` (including zero); stops early when `f` returns true.
pub(crate) fn any_in_span(
    basis: &[Morphism],
    p: Prime,
    template: &Rep,
    target: &Rep,
    mut f: impl FnMut(&Morphism) -> bool,
) -> Result<bool> {
    match p.checked_pow(basis.len()) {
        Some(v) if v <= HOM_ENUM_GUARD => {}
        _ => {
            return Err(resource_err!(
                "Hom space of dimension {} over F_{p} exceeds the enumeration guard p^dim <= 2^16",
                basis.len()
            ))
        }
    }
    let q = p.get() as u8;
    let mut digits = vec![0u8; basis.len()];
    loop {
        let components = (0..template.dims.len())
            .map(|v| {
                let mut acc = FpMatrix::zeros(p, target.dims[v], template.dims[v]);
                for (b, &d) in basis.iter().zip(&digits) {
                    if d != 0 {
                        acc = acc.add(&b.components[v].scale(d));
                    }
                }
                acc
            })
            .collect();
        if f(&Morphism { components }) {
            return Ok(true);
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(false);
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Isomorphism test by exhaustive search for an invertible element of `Hom(m, n)`.
pub fn is_iso(m: &Rep, n: &Rep) -> Result<bool> {
    m.check_compatible(n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    let basis = hom_basis(m, n)?;
    any_in_span(&basis, m.p, m, n, Morphism::is_iso)
}

/// True iff every nonzero endomorphism is invertible.
pub fn is_brick(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = hom_basis(m, m)?;
    let bad = any_in_span(&basis, m.p, m, m, |f| !f.is_zero() && !f.is_iso())?;
    Ok(!bad)
}

/// Fitting's criterion: `m` is indecomposable iff every endomorphism is nilpotent or invertible.
pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = hom_basis(m, m)?;
    let bad = any_in_span(&basis, m.p, m, m, |f| !f.is_iso() && !f.is_nilpotent())?;
    Ok(!bad)
}

/// Every subrepresentation of `m`, canonical and duplicate-free.
pub fn submodules(m: &Rep) -> Result<Vec<SubRep>> {
    let per_vertex: Vec<Vec<Subspace>> = m.dims.iter().map(|&d| all_subspaces(d, m.p)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut chosen: Vec<Subspace> = Vec::with_capacity(m.dims.len());
    submodules_rec(m, &per_vertex, &mut chosen, &mut out);
    Ok(out)
}

fn submodules_rec(m: &Rep, per_vertex: &[Vec<Subspace>], chosen: &mut Vec<Subspace>, out: &mut Vec<SubRep>) {
    let v = chosen.len();
    if v == per_vertex.len() {
        out.push(SubRep { spaces: chosen.clone() });
        return;
    }
    for cand in &per_vertex[v] {
        let ok = m.quiver.arrows().iter().zip(&m.maps).all(|(&(s, t), a)| {
            if s == v && t <= v {
                let target = if t == v { cand } else { &chosen[t] };
                cand.basis().iter().all(|x| target.contains(&a.apply(x)))
            } else if t == v && s < v {
                chosen[s].basis().iter().all(|x| cand.contains(&a.apply(x)))
            } else {
                true
            }
        });
        if ok {
            chosen.push(cand.clone());
            submodules_rec(m, per_vertex, chosen, out);
            chosen.pop();
        }
    }
}
