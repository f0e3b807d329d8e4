//! Finite groups (stored as monomial normal forms: a permutation plus root-of-
//! unity phases), their unitary representations, exterior powers, the
//! pseudo-reflection / irreducibility checkers, and the determinant-of-sum
//! minor expansion.
//!
//! Every group in scope embeds in some G(m, 1, d): S_r is G(1, 1, r), the
//! cyclic group Z/m is G(m, 1, 1). Representations keep exact matrices
//! whenever the entries live in Q(zeta_12); the standard representation of
//! S_r is carried numerically (Helmert basis) and all of its exact
//! arithmetic is routed through the permutation representation, which splits
//! as std + triv.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

use crate::cyclo::Cyclo;
use crate::linalg::{rank, CMat, Mat};

pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("exterior power index {m} out of range for dimension {d}")]
    PowerOutOfRange { m: usize, d: usize },
    #[error("character inner product {value} is not integral within 1e-9")]
    NumericalDegeneracy { value: f64 },
    #[error("representation is not irreducible (character norm {0})")]
    NotIrreducible(f64),
    #[error("generators do not generate the group (closure {closure} of {order})")]
    GeneratorsDoNotGenerate { closure: usize, order: usize },
    #[error("unknown group descriptor {0:?}")]
    BadDescriptor(String),
}

// ---------------------------------------------------------------------------
// Group elements and groups
// ---------------------------------------------------------------------------

/// Monomial normal form: the matrix with entry zeta_m^{phases[j]} in row
/// perm[j], column j. Plain permutations have modulus 1 and zero phases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub perm: Vec<u8>,
    pub phases: Vec<u8>,
    pub modulus: u16,
}

impl GroupElem {
    pub fn identity(degree: usize, modulus: u16) -> Self {
        GroupElem {
            perm: (0..degree as u8).collect(),
            phases: vec![0; degree],
            modulus,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
            && self.phases.iter().all(|&p| p == 0)
    }

    /// Matrix product: self * other.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let d = self.perm.len();
        let m = self.modulus;
        let mut perm = vec![0u8; d];
        let mut phases = vec![0u8; d];
        for j in 0..d {
            let t = other.perm[j] as usize;
            perm[j] = self.perm[t];
            phases[j] = ((self.phases[t] as u16 + other.phases[j] as u16) % m) as u8;
        }
        GroupElem { perm, phases, modulus: m }
    }

    pub fn inv(&self) -> Self {
        let d = self.perm.len();
        let m = self.modulus;
        let mut perm = vec![0u8; d];
        let mut phases = vec![0u8; d];
        for j in 0..d {
            perm[self.perm[j] as usize] = j as u8;
        }
        for j in 0..d {
            let src = perm[j] as usize; // = sigma^{-1}(j)
            phases[j] = ((m - self.phases[src] as u16) % m) as u8;
        }
        GroupElem { perm, phases, modulus: m }
    }

    /// Number of cycles of the permutation part (fixed points included).
    pub fn perm_cycles(&self) -> usize {
        let d = self.perm.len();
        let mut seen = vec![false; d];
        let mut cycles = 0;
        for start in 0..d {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.perm[v] as usize;
            }
        }
        cycles
    }

    pub fn perm_sign(&self) -> i8 {
        let d = self.perm.len();
        if (d - self.perm_cycles()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn perm_fixed_points(&self) -> usize {
        self.perm.iter().enumerate().filter(|(i, &p)| p as usize == *i).count()
    }
}

/// A finite group given by explicit element enumeration in a deterministic
/// order (lexicographic on (perm, phases)); elems[0] is the identity.
#[derive(Debug)]
pub struct FiniteGroup {
    pub name: String,
    pub degree: usize,
    pub modulus: u16,
    elems: Vec<GroupElem>,
    index: HashMap<GroupElem, u32>,
}

impl FiniteGroup {
    fn from_elems(name: String, degree: usize, modulus: u16, mut elems: Vec<GroupElem>) -> Self {
        elems.sort();
        elems.dedup();
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let g = FiniteGroup { name, degree, modulus, elems, index };
        debug_assert!(g.elems[0].is_identity());
        g
    }

    pub fn symmetric(r: usize, cap: usize) -> Result<Arc<Self>, RepError> {
        let order: usize = (1..=r).product();
        if order > cap {
            return Err(RepError::OrderCapExceeded { order, cap });
        }
        let mut elems = vec![];
        let mut images: Vec<u8> = (0..r as u8).collect();
        loop {
            elems.push(GroupElem { perm: images.clone(), phases: vec![0; r], modulus: 1 });
            if !next_permutation(&mut images) {
                break;
            }
        }
        Ok(Arc::new(Self::from_elems(format!("S{r}"), r, 1, elems)))
    }

    pub fn cyclic(m: u16, cap: usize) -> Result<Arc<Self>, RepError> {
        if m as usize > cap {
            return Err(RepError::OrderCapExceeded { order: m as usize, cap });
        }
        let elems = (0..m)
            .map(|k| GroupElem { perm: vec![0], phases: vec![k as u8], modulus: m })
            .collect();
        Ok(Arc::new(Self::from_elems(format!("Z{m}"), 1, m, elems)))
    }

    /// G(m, 1, d): monomial matrices with m-th root-of-unity entries.
    pub fn gm1d(m: u16, d: usize, cap: usize) -> Result<Arc<Self>, RepError> {
        let order = (1..=d).product::<usize>() * (m as usize).pow(d as u32);
        if order > cap {
            return Err(RepError::OrderCapExceeded { order, cap });
        }
        let mut elems = vec![];
        let mut images: Vec<u8> = (0..d as u8).collect();
        loop {
            let mut phases = vec![0u8; d];
            loop {
                elems.push(GroupElem {
                    perm: images.clone(),
                    phases: phases.clone(),
                    modulus: m,
                });
                if !next_tuple(&mut phases, m as u8) {
                    break;
                }
            }
            if !next_permutation(&mut images) {
                break;
            }
        }
        Ok(Arc::new(Self::from_elems(format!("G({m},1,{d})"), d, m, elems)))
    }

    /// Closure of a generating set (plus inverses) under multiplication.
    pub fn from_generators(
        name: String,
        degree: usize,
        modulus: u16,
        gens: &[GroupElem],
        cap: usize,
    ) -> Result<Arc<Self>, RepError> {
        let id = GroupElem::identity(degree, modulus);
        let mut seen: Vec<GroupElem> = vec![id];
        let mut frontier = vec![0usize];
        let mut set: HashMap<GroupElem, ()> = seen.iter().map(|e| (e.clone(), ())).collect();
        while let Some(i) = frontier.pop() {
            let base = seen[i].clone();
            for g in gens.iter().flat_map(|g| [g.clone(), g.inv()]) {
                let prod = base.mul(&g);
                if !set.contains_key(&prod) {
                    if seen.len() >= cap {
                        return Err(RepError::OrderCapExceeded { order: seen.len() + 1, cap });
                    }
                    set.insert(prod.clone(), ());
                    frontier.push(seen.len());
                    seen.push(prod);
                }
            }
        }
        Ok(Arc::new(Self::from_elems(name, degree, modulus, seen)))
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[GroupElem] {
        &self.elems
    }

    pub fn elem(&self, id: u32) -> &GroupElem {
        &self.elems[id as usize]
    }

    pub fn id_of(&self, e: &GroupElem) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn identity_id(&self) -> u32 {
        0
    }

    pub fn mul_ids(&self, a: u32, b: u32) -> u32 {
        let p = self.elem(a).mul(self.elem(b));
        *self.index.get(&p).expect("closed under product")
    }

    pub fn inv_id(&self, a: u32) -> u32 {
        let p = self.elem(a).inv();
        *self.index.get(&p).expect("closed under inverse")
    }

    /// Subgroup generated by the given element ids, as a sorted id set.
    pub fn closure_of(&self, ids: &[u32]) -> Vec<u32> {
        let mut in_set = vec![false; self.order()];
        in_set[0] = true;
        let mut frontier = vec![0u32];
        let mut members = vec![0u32];
        while let Some(a) = frontier.pop() {
            for &g in ids {
                for b in [self.mul_ids(a, g), self.mul_ids(a, self.inv_id(g))] {
                    if !in_set[b as usize] {
                        in_set[b as usize] = true;
                        members.push(b);
                        frontier.push(b);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }
}

fn next_permutation(arr: &mut [u8]) -> bool {
    let n = arr.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

fn next_tuple(arr: &mut [u8], base: u8) -> bool {
    for x in arr.iter_mut().rev() {
        if *x + 1 < base {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

type ExactMat = Mat<Cyclo<BigRational>>;

#[derive(Debug, Clone)]
pub enum RepKind {
    Trivial,
    /// Permutation matrices of the permutation part (dim = degree).
    PermAction,
    /// Sign of the permutation part (dim 1).
    SignOfPerm,
    /// Standard representation of S_r on the complement of the all-ones
    /// vector, realized numerically in the Helmert basis (dim = degree - 1).
    Std,
    /// Monomial matrices with zeta_m phases (dim = degree).
    Monomial,
    /// 1-dim character of a cyclic group: k -> zeta_m^{power k}.
    CyclicPower(u32),
    /// Arbitrary exact matrices in Q(zeta_12), one per element id.
    ExplicitExact(Vec<ExactMat>),
    /// Arbitrary float matrices, one per element id.
    ExplicitFloat(Vec<CMat>),
}

#[derive(Debug, Clone)]
pub struct Representation {
    pub group: Arc<FiniteGroup>,
    pub dim: usize,
    pub name: String,
    pub kind: RepKind,
}

pub fn build_trivial(group: Arc<FiniteGroup>) -> Representation {
    Representation { dim: 1, name: format!("triv({})", group.name), group, kind: RepKind::Trivial }
}

pub fn build_perm(r: usize, cap: usize) -> Result<Representation, RepError> {
    let group = FiniteGroup::symmetric(r, cap)?;
    Ok(Representation { group, dim: r, name: format!("perm(S{r})"), kind: RepKind::PermAction })
}

pub fn build_sign(r: usize, cap: usize) -> Result<Representation, RepError> {
    let group = FiniteGroup::symmetric(r, cap)?;
    Ok(Representation { group, dim: 1, name: format!("sign(S{r})"), kind: RepKind::SignOfPerm })
}

pub fn build_std(r: usize, cap: usize) -> Result<Representation, RepError> {
    let group = FiniteGroup::symmetric(r, cap)?;
    Ok(Representation { group, dim: r - 1, name: format!("std(S{r})"), kind: RepKind::Std })
}

pub fn build_cyclic(m: u16, cap: usize) -> Result<Representation, RepError> {
    build_cyclic_power(m, 1, cap)
}

/// The character k -> zeta_m^{power k} of Z/m.
pub fn build_cyclic_power(m: u16, power: u32, cap: usize) -> Result<Representation, RepError> {
    let group = FiniteGroup::cyclic(m, cap)?;
    Ok(Representation {
        group,
        dim: 1,
        name: format!("cyclic(Z{m})^{power}"),
        kind: RepKind::CyclicPower(power),
    })
}

/// Natural d-dimensional monomial representation of G(m, 1, d).
pub fn build_g_m1d(m: u16, d: usize, cap: usize) -> Result<Representation, RepError> {
    let group = FiniteGroup::gm1d(m, d, cap)?;
    Ok(Representation { group, dim: d, name: format!("G({m},1,{d})"), kind: RepKind::Monomial })
}

/// Regular representation: right-multiplication permutation matrices.
pub fn build_regular(group: Arc<FiniteGroup>) -> Representation {
    let n = group.order();
    let mats = group
        .elems()
        .iter()
        .map(|g| {
            let mut m: ExactMat = Mat::zeros(n, n);
            for j in 0..n {
                let target = group.elem(j as u32).mul(g);
                let i = group.id_of(&target).expect("closed") as usize;
                *m.at_mut(i, j) = Cyclo::one();
            }
            m
        })
        .collect();
    Representation {
        dim: n,
        name: format!("regular({})", group.name),
        group,
        kind: RepKind::ExplicitExact(mats),
    }
}

pub fn from_exact_matrices(
    group: Arc<FiniteGroup>,
    mats: Vec<ExactMat>,
    name: String,
) -> Representation {
    assert_eq!(mats.len(), group.order());
    let dim = mats[0].rows;
    Representation { group, dim, name, kind: RepKind::ExplicitExact(mats) }
}

fn helmert_basis(r: usize) -> Vec<Vec<f64>> {
    // columns of the r x (r-1) matrix U with orthonormal columns spanning
    // the complement of the all-ones vector
    (1..r)
        .map(|k| {
            let norm = (k as f64 * (k + 1) as f64).sqrt();
            (0..r)
                .map(|i| {
                    if i < k {
                        1.0 / norm
                    } else if i == k {
                        -(k as f64) / norm
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

impl Representation {
    /// Exact matrix in Q(zeta_12) when one exists for this kind.
    pub fn mat_exact(&self, id: u32) -> Option<ExactMat> {
        let e = self.group.elem(id);
        let m = self.group.modulus as u32;
        match &self.kind {
            RepKind::Trivial => Some(Mat::identity(1)),
            RepKind::PermAction => {
                let d = self.dim;
                let mut out: ExactMat = Mat::zeros(d, d);
                for j in 0..d {
                    *out.at_mut(e.perm[j] as usize, j) = Cyclo::one();
                }
                Some(out)
            }
            RepKind::SignOfPerm => {
                let mut out: ExactMat = Mat::zeros(1, 1);
                let one: Cyclo<BigRational> = Cyclo::one();
                *out.at_mut(0, 0) = if e.perm_sign() > 0 { one } else { one.neg() };
                Some(out)
            }
            RepKind::Std => None,
            RepKind::Monomial => {
                if m == 0 || 12 % m != 0 {
                    return None;
                }
                let d = self.dim;
                let mut out: ExactMat = Mat::zeros(d, d);
                for j in 0..d {
                    *out.at_mut(e.perm[j] as usize, j) =
                        Cyclo::root_of_unity(m, e.phases[j] as i64)?;
                }
                Some(out)
            }
            RepKind::CyclicPower(p) => {
                if m == 0 || 12 % m != 0 {
                    return None;
                }
                let mut out: ExactMat = Mat::zeros(1, 1);
                *out.at_mut(0, 0) = Cyclo::root_of_unity(m, *p as i64 * e.phases[0] as i64)?;
                Some(out)
            }
            RepKind::ExplicitExact(mats) => Some(mats[id as usize].clone()),
            RepKind::ExplicitFloat(_) => None,
        }
    }

    /// Matrix with cyclotomic-integer entries, for the kinds whose entries
    /// are 0, +-1, or roots of unity (the exact twisted-adjacency path).
    pub fn mat_cyclo_int(&self, id: u32) -> Option<Mat<Cyclo<BigInt>>> {
        let e = self.group.elem(id);
        let m = self.group.modulus as u32;
        match &self.kind {
            RepKind::Trivial => Some(Mat::identity(1)),
            RepKind::PermAction => {
                let d = self.dim;
                let mut out: Mat<Cyclo<BigInt>> = Mat::zeros(d, d);
                for j in 0..d {
                    *out.at_mut(e.perm[j] as usize, j) = Cyclo::one();
                }
                Some(out)
            }
            RepKind::SignOfPerm => {
                let mut out: Mat<Cyclo<BigInt>> = Mat::zeros(1, 1);
                let one: Cyclo<BigInt> = Cyclo::one();
                *out.at_mut(0, 0) = if e.perm_sign() > 0 { one } else { one.neg() };
                Some(out)
            }
            RepKind::Monomial => {
                if m == 0 || 12 % m != 0 {
                    return None;
                }
                let d = self.dim;
                let mut out: Mat<Cyclo<BigInt>> = Mat::zeros(d, d);
                for j in 0..d {
                    *out.at_mut(e.perm[j] as usize, j) =
                        Cyclo::root_of_unity(m, e.phases[j] as i64)?;
                }
                Some(out)
            }
            RepKind::CyclicPower(p) => {
                if m == 0 || 12 % m != 0 {
                    return None;
                }
                let mut out: Mat<Cyclo<BigInt>> = Mat::zeros(1, 1);
                *out.at_mut(0, 0) = Cyclo::root_of_unity(m, *p as i64 * e.phases[0] as i64)?;
                Some(out)
            }
            _ => None,
        }
    }

    pub fn mat_f64(&self, id: u32) -> CMat {
        match &self.kind {
            RepKind::Std => {
                let r = self.group.degree;
                let e = self.group.elem(id);
                let u = helmert_basis(r);
                // (U^T P U)_{k,l} = sum_j u_k[p(j)] u_l[j]
                CMat::from_fn(r - 1, r - 1, |k, l| {
                    let mut s = 0.0;
                    for j in 0..r {
                        s += u[k][e.perm[j] as usize] * u[l][j];
                    }
                    Complex64::new(s, 0.0)
                })
            }
            RepKind::ExplicitFloat(mats) => mats[id as usize].clone(),
            RepKind::Monomial | RepKind::CyclicPower(_) if self.mat_exact(id).is_none() => {
                // roots of unity outside Q(zeta_12): direct complex entries
                let e = self.group.elem(id);
                let m = self.group.modulus as f64;
                let power = if let RepKind::CyclicPower(p) = self.kind { p as f64 } else { 1.0 };
                let d = self.dim;
                CMat::from_fn(d, d, |i, j| {
                    if e.perm[j] as usize == i {
                        Complex64::from_polar(
                            1.0,
                            2.0 * std::f64::consts::PI * power * e.phases[j] as f64 / m,
                        )
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }
            _ => {
                let m = self.mat_exact(id).expect("exact kinds have matrices");
                CMat::from_fn(m.rows, m.cols, |i, j| m.at(i, j).to_complex64())
            }
        }
    }

    pub fn character(&self, id: u32) -> Complex64 {
        match &self.kind {
            RepKind::Trivial => Complex64::new(1.0, 0.0),
            RepKind::PermAction => {
                Complex64::new(self.group.elem(id).perm_fixed_points() as f64, 0.0)
            }
            RepKind::SignOfPerm => Complex64::new(self.group.elem(id).perm_sign() as f64, 0.0),
            RepKind::Std => {
                Complex64::new(self.group.elem(id).perm_fixed_points() as f64 - 1.0, 0.0)
            }
            _ => self.mat_f64(id).trace(),
        }
    }

    pub fn character_vector(&self) -> Vec<Complex64> {
        (0..self.group.order() as u32).map(|id| self.character(id)).collect()
    }

    /// rank(pi(g) - I), exactly where possible.
    pub fn rank_minus_identity(&self, id: u32) -> usize {
        let e = self.group.elem(id);
        match &self.kind {
            RepKind::Trivial => 0,
            RepKind::PermAction => self.dim - e.perm_cycles(),
            // perm = std + triv and triv contributes rank 0
            RepKind::Std => self.group.degree - e.perm_cycles(),
            RepKind::SignOfPerm => {
                if e.perm_sign() < 0 {
                    1
                } else {
                    0
                }
            }
            RepKind::ExplicitFloat(mats) => {
                let m = &mats[id as usize];
                let diff = CMat::from_fn(m.rows, m.cols, |i, j| {
                    m.at(i, j) - if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
                });
                diff.rank_tol(FLOAT_TOL)
            }
            _ => match self.mat_exact(id) {
                Some(m) => {
                    let diff = m.sub_mat(&Mat::identity(self.dim));
                    rank(&diff)
                }
                None => {
                    let m = self.mat_f64(id);
                    let mut diff = m.clone();
                    for i in 0..self.dim {
                        *diff.at_mut(i, i) -= Complex64::new(1.0, 0.0);
                    }
                    diff.rank_tol(FLOAT_TOL)
                }
            },
        }
    }

    /// Is pi(g) a pseudo-reflection (finite order, rank(pi(g) - I) = 1)?
    pub fn elem_is_pseudo_reflection(&self, id: u32) -> bool {
        self.rank_minus_identity(id) == 1
    }

    /// Elements acting as the identity matrix.
    pub fn kernel(&self) -> Vec<u32> {
        (0..self.group.order() as u32)
            .filter(|&id| self.rank_minus_identity(id) == 0)
            .collect()
    }

    /// Entries are integers in Z[zeta_m] with m in {1, 2, 3, 4, 6}: the exact
    /// twisted-adjacency path applies.
    pub fn is_cyclotomic_exact(&self) -> bool {
        let m = self.group.modulus as u32;
        let m_ok = matches!(m, 1 | 2 | 3 | 4 | 6);
        match &self.kind {
            RepKind::Trivial | RepKind::PermAction | RepKind::SignOfPerm => true,
            RepKind::Monomial | RepKind::CyclicPower(_) => m_ok,
            _ => false,
        }
    }
}

/// Exact pseudo-reflection test on a matrix over Q(zeta_12).
pub fn is_pseudo_reflection(m: &ExactMat) -> bool {
    assert!(m.is_square());
    let diff = m.sub_mat(&Mat::identity(m.rows));
    rank(&diff) == 1
}

// ---------------------------------------------------------------------------
// Exterior powers
// ---------------------------------------------------------------------------

fn subsets_lex(d: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn go(start: usize, d: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i + 1, d, m, cur, out);
            cur.pop();
        }
    }
    go(0, d, m, &mut cur, &mut out);
    out
}

/// The m-th exterior power on the lexicographically ordered m-subset basis;
/// entries are the (I, J) minor determinants.
pub fn exterior_power(rep: &Representation, m: usize) -> Result<Representation, RepError> {
    let d = rep.dim;
    if m > d {
        return Err(RepError::PowerOutOfRange { m, d });
    }
    if m == 0 {
        return Ok(build_trivial(rep.group.clone()));
    }
    let subsets = subsets_lex(d, m);
    let dim = subsets.len();
    let name = format!("wedge^{m}({})", rep.name);
    // exact when the base rep is exact
    if rep.mat_exact(0).is_some() {
        let mats = (0..rep.group.order() as u32)
            .map(|id| {
                let base = rep.mat_exact(id).expect("exact");
                Mat::from_fn(dim, dim, |i, j| {
                    base.submatrix(&subsets[i], &subsets[j]).det()
                })
            })
            .collect();
        return Ok(Representation {
            group: rep.group.clone(),
            dim,
            name,
            kind: RepKind::ExplicitExact(mats),
        });
    }
    let mats = (0..rep.group.order() as u32)
        .map(|id| {
            let base = rep.mat_f64(id);
            CMat::from_fn(dim, dim, |i, j| {
                cmat_minor_det(&base, &subsets[i], &subsets[j])
            })
        })
        .collect();
    Ok(Representation {
        group: rep.group.clone(),
        dim,
        name,
        kind: RepKind::ExplicitFloat(mats),
    })
}

fn cmat_minor_det(m: &CMat, rows: &[usize], cols: &[usize]) -> Complex64 {
    let n = rows.len();
    let mut a = CMat::from_fn(n, n, |i, j| m.at(rows[i], cols[j]));
    // LU with partial pivoting
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut best = col;
        for r in col..n {
            if a.at(r, col).norm() > a.at(best, col).norm() {
                best = r;
            }
        }
        if a.at(best, col).norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if best != col {
            for j in 0..n {
                a.data.swap(best * n + j, col * n + j);
            }
            det = -det;
        }
        let piv = a.at(col, col);
        det *= piv;
        for r in (col + 1)..n {
            let f = a.at(r, col) / piv;
            for j in col..n {
                let s = f * a.at(col, j);
                *a.at_mut(r, j) -= s;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// (P1) and (P2)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct PowerReport {
    pub power: usize,
    pub dim: usize,
    /// <chi_m, chi_m> rounded to an integer; 1 means irreducible.
    pub norm: i64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct P1Report {
    pub pass: bool,
    pub powers: Vec<PowerReport>,
    /// (i, j, <chi_i, chi_j>) for i < j; all must vanish.
    pub pairwise: Vec<(usize, usize, i64)>,
}

fn inner_product(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let n = a.len() as f64;
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<Complex64>() / n
}

fn round_integral(v: Complex64) -> Result<i64, RepError> {
    let r = v.re.round();
    if (v.re - r).abs() > FLOAT_TOL || v.im.abs() > FLOAT_TOL {
        return Err(RepError::NumericalDegeneracy { value: v.re });
    }
    Ok(r as i64)
}

/// Property (P1): all exterior powers 0..=dim irreducible and pairwise
/// non-isomorphic, decided by character orthogonality.
pub fn check_p1(rep: &Representation) -> Result<P1Report, RepError> {
    let d = rep.dim;
    let mut chars: Vec<Vec<Complex64>> = Vec::with_capacity(d + 1);
    let mut powers = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let w = exterior_power(rep, m)?;
        let chi = w.character_vector();
        let norm = round_integral(inner_product(&chi, &chi))?;
        powers.push(PowerReport { power: m, dim: w.dim, norm });
        chars.push(chi);
    }
    let mut pairwise = vec![];
    let mut pass = powers.iter().all(|p| p.norm == 1);
    for i in 0..=d {
        for j in (i + 1)..=d {
            let ip = round_integral(inner_product(&chars[i], &chars[j]))?;
            if ip != 0 {
                pass = false;
            }
            pairwise.push((i, j, ip));
        }
    }
    Ok(P1Report { pass, powers, pairwise })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct P2Report {
    pub pass: bool,
    pub pseudo_reflections: usize,
    pub kernel_size: usize,
    pub generated_order: usize,
    pub group_order: usize,
}

/// Property (P2): the image pi(Gamma) is generated by pseudo-reflections.
/// Checked as closure(S union ker) = Gamma with S the pseudo-reflection
/// elements (S is a union of kernel cosets, so this is equivalent).
pub fn check_p2(rep: &Representation) -> P2Report {
    let n = rep.group.order() as u32;
    let s: Vec<u32> = (0..n).filter(|&id| rep.elem_is_pseudo_reflection(id)).collect();
    let kernel = rep.kernel();
    let mut gens = s.clone();
    gens.extend_from_slice(&kernel);
    let closure = rep.group.closure_of(&gens);
    P2Report {
        pass: closure.len() == rep.group.order(),
        pseudo_reflections: s.len(),
        kernel_size: kernel.len(),
        generated_order: closure.len(),
        group_order: rep.group.order(),
    }
}

// ---------------------------------------------------------------------------
// Peter-Weyl orthogonality
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct PeterWeylReport {
    pub pass: bool,
    /// Maximal |E_g[pi1(g)_{i1 j1} conj(pi2(g)_{i2 j2})] - expected|.
    pub max_residual: f64,
    pub same_rep: bool,
    /// The reproduced 1/d value for matching index pairs (same-rep case).
    pub normalization: Option<f64>,
}

/// Coefficient orthogonality of two irreducible unitary representations.
pub fn peter_weyl_check(r1: &Representation, r2: &Representation) -> Result<PeterWeylReport, RepError> {
    assert!(Arc::ptr_eq(&r1.group, &r2.group) || r1.group.name == r2.group.name);
    for r in [r1, r2] {
        let chi = r.character_vector();
        let norm = inner_product(&chi, &chi);
        if (norm.re - 1.0).abs() > 1e-6 || norm.im.abs() > 1e-6 {
            return Err(RepError::NotIrreducible(norm.re));
        }
    }
    let n = r1.group.order() as u32;
    let mats1: Vec<CMat> = (0..n).map(|id| r1.mat_f64(id)).collect();
    let mats2: Vec<CMat> = (0..n).map(|id| r2.mat_f64(id)).collect();
    let same_rep = r1.dim == r2.dim
        && mats1
            .iter()
            .zip(&mats2)
            .all(|(a, b)| a.max_abs_diff(b) < 1e-8);
    let d = r1.dim as f64;
    let mut max_residual: f64 = 0.0;
    for i1 in 0..r1.dim {
        for j1 in 0..r1.dim {
            for i2 in 0..r2.dim {
                for j2 in 0..r2.dim {
                    let avg = mats1
                        .iter()
                        .zip(&mats2)
                        .map(|(a, b)| a.at(i1, j1) * b.at(i2, j2).conj())
                        .sum::<Complex64>()
                        / n as f64;
                    let expected = if same_rep && (i1, j1) == (i2, j2) {
                        Complex64::new(1.0 / d, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    max_residual = max_residual.max((avg - expected).norm());
                }
            }
        }
    }
    Ok(PeterWeylReport {
        pass: max_residual <= FLOAT_TOL,
        max_residual,
        same_rep,
        normalization: if same_rep { Some(1.0 / d) } else { None },
    })
}

/// Homomorphism property check (exhaustive for small groups, sampled above).
pub fn homomorphism_residual(rep: &Representation, exhaustive_limit: usize) -> f64 {
    let n = rep.group.order();
    let mats: Vec<CMat> = (0..n as u32).map(|id| rep.mat_f64(id)).collect();
    let mut worst: f64 = 0.0;
    let pairs: Vec<(usize, usize)> = if n <= exhaustive_limit {
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    } else {
        // deterministic sample
        (0..n).map(|k| (k, (k * 7 + 3) % n)).collect()
    };
    for (a, b) in pairs {
        let prod = mats[a].matmul(&mats[b]);
        let direct = &mats[rep.group.mul_ids(a as u32, b as u32) as usize];
        worst = worst.max(prod.max_abs_diff(direct));
    }
    worst
}

// ---------------------------------------------------------------------------
// Determinant of a sum via minors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ExpansionTerm {
    pub row_parts: Vec<Vec<usize>>,
    pub col_parts: Vec<Vec<usize>>,
    pub sign: i8,
    pub minors: Vec<BigRational>,
}

#[derive(Debug)]
pub struct DetOfSum {
    pub value: BigRational,
    pub direct: BigRational,
    pub terms: Vec<ExpansionTerm>,
}

fn sign_of_partition_pair(row_parts: &[Vec<usize>], col_parts: &[Vec<usize>], d: usize) -> i8 {
    // permutation mapping sorted(R_l)[i] -> sorted(C_l)[i]
    let mut img = vec![0usize; d];
    for (r, c) in row_parts.iter().zip(col_parts) {
        for (x, y) in r.iter().zip(c) {
            img[*x] = *y;
        }
    }
    let mut seen = vec![false; d];
    let mut sign = 1i8;
    for s in 0..d {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = img[v];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// det(A_1 + ... + A_q) expanded as a signed sum over pairs of ordered
/// partitions of [d] with matching part sizes, of products of minors; the
/// expansion trace is returned together with the directly computed value.
pub fn det_of_sum(mats: &[Mat<BigRational>]) -> DetOfSum {
    let q = mats.len();
    assert!(q >= 1);
    let d = mats[0].rows;
    for m in mats {
        assert!(m.is_square() && m.rows == d);
    }
    // direct determinant of the sum
    let mut sum = mats[0].clone();
    for m in &mats[1..] {
        sum = sum.add_mat(m);
    }
    let direct = sum.det();

    // enumerate assignments [d] -> [q] for rows and columns
    let assignments: Vec<Vec<usize>> = {
        let mut out = vec![];
        let mut cur = vec![0usize; d];
        'odometer: loop {
            out.push(cur.clone());
            let mut i = d;
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < q {
                    break;
                }
                cur[i] = 0;
            }
        }
        out
    };
    let part_sizes = |a: &[usize]| -> Vec<usize> {
        let mut s = vec![0usize; q];
        for &x in a {
            s[x] += 1;
        }
        s
    };
    let to_parts = |a: &[usize]| -> Vec<Vec<usize>> {
        let mut parts = vec![vec![]; q];
        for (i, &x) in a.iter().enumerate() {
            parts[x].push(i);
        }
        parts
    };
    let mut value = BigRational::zero();
    let mut terms = vec![];
    for ra in &assignments {
        let rs = part_sizes(ra);
        for ca in &assignments {
            if part_sizes(ca) != rs {
                continue;
            }
            let row_parts = to_parts(ra);
            let col_parts = to_parts(ca);
            let sign = sign_of_partition_pair(&row_parts, &col_parts, d);
            let mut minors = Vec::with_capacity(q);
            let mut prod = BigRational::one();
            for l in 0..q {
                let minor = if row_parts[l].is_empty() {
                    BigRational::one()
                } else {
                    mats[l].submatrix(&row_parts[l], &col_parts[l]).det()
                };
                prod *= &minor;
                minors.push(minor);
            }
            if sign < 0 {
                value -= &prod;
            } else {
                value += &prod;
            }
            if !prod.is_zero() {
                terms.push(ExpansionTerm { row_parts, col_parts, sign, minors });
            }
        }
    }
    DetOfSum { value, direct, terms }
}

// ---------------------------------------------------------------------------
// Exact characters for integer-entried reps (used by exact identity tests)
// ---------------------------------------------------------------------------

/// Exact rational character value, when the representation is exact and the
/// trace is rational.
pub fn character_exact(rep: &Representation, id: u32) -> Option<BigRational> {
    let m = rep.mat_exact(id)?;
    let mut tr = Cyclo::<BigRational>::zero();
    for i in 0..m.rows {
        tr = tr.add(m.at(i, i));
    }
    tr.as_rational().cloned()
}

pub fn to_f64_lossy(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn bigint_to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat_int;

    const CAP: usize = 5040;

    #[test]
    fn group_axioms_s3() {
        let g = FiniteGroup::symmetric(3, CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.elem(0).is_identity());
        for a in 0..6u32 {
            let inv = g.inv_id(a);
            assert_eq!(g.mul_ids(a, inv), 0);
            assert_eq!(g.mul_ids(inv, a), 0);
            for b in 0..6u32 {
                for c in 0..6u32 {
                    let ab_c = g.mul_ids(g.mul_ids(a, b), c);
                    let a_bc = g.mul_ids(a, g.mul_ids(b, c));
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn gm1d_order_and_closure() {
        // G(2,1,2): signed 2x2 permutation matrices, order 2! * 2^2 = 8
        let g = FiniteGroup::gm1d(2, 2, CAP).unwrap();
        assert_eq!(g.order(), 8);
        for a in 0..8u32 {
            for b in 0..8u32 {
                let _ = g.mul_ids(a, b); // panics if not closed
            }
        }
        let g = FiniteGroup::gm1d(3, 2, CAP).unwrap();
        assert_eq!(g.order(), 18);
    }

    #[test]
    fn std_of_s2_is_sign() {
        let std2 = build_std(2, CAP).unwrap();
        assert_eq!(std2.dim, 1);
        let swap = std2.group.id_of(&GroupElem {
            perm: vec![1, 0],
            phases: vec![0, 0],
            modulus: 1,
        })
        .unwrap();
        let m = std2.mat_f64(swap);
        assert!((m.at(0, 0).re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn std_is_homomorphic_and_unitary() {
        for r in 2..=4 {
            let std = build_std(r, CAP).unwrap();
            assert!(homomorphism_residual(&std, 200) < 1e-9);
            for id in 0..std.group.order() as u32 {
                assert!(std.mat_f64(id).unitarity_residual() < 1e-9);
            }
        }
    }

    #[test]
    fn pseudo_reflection_examples() {
        // sign rep matrix (-1) in dim 1
        let sign = build_sign(3, CAP).unwrap();
        let transposition = sign
            .group
            .id_of(&GroupElem { perm: vec![1, 0, 2], phases: vec![0, 0, 0], modulus: 1 })
            .unwrap();
        assert!(sign.elem_is_pseudo_reflection(transposition));
        // permutation matrix of a transposition has rank(P - I) = 1
        let perm = build_perm(4, CAP).unwrap();
        let t = perm
            .group
            .id_of(&GroupElem { perm: vec![1, 0, 2, 3], phases: vec![0; 4], modulus: 1 })
            .unwrap();
        assert!(perm.elem_is_pseudo_reflection(t));
        // identity is not
        assert!(!perm.elem_is_pseudo_reflection(0));
        // exact matrix interface
        let m: Mat<Cyclo<BigRational>> = Mat::identity(2);
        assert!(!is_pseudo_reflection(&m));
    }

    #[test]
    fn exterior_power_shapes_and_hom() {
        let std3 = build_std(3, CAP).unwrap();
        // wedge^0 = trivial
        let w0 = exterior_power(&std3, 0).unwrap();
        assert_eq!(w0.dim, 1);
        // wedge^2 of std(S3) (d = 2) is the sign rep: transpositions -> -1
        let w2 = exterior_power(&std3, 2).unwrap();
        assert_eq!(w2.dim, 1);
        let t = std3
            .group
            .id_of(&GroupElem { perm: vec![1, 0, 2], phases: vec![0, 0, 0], modulus: 1 })
            .unwrap();
        let v = w2.mat_f64(t).at(0, 0);
        assert!((v.re + 1.0).abs() < 1e-9 && v.im.abs() < 1e-9);
        // dimension = binom(d, m)
        let perm4 = build_perm(4, CAP).unwrap();
        let w2p = exterior_power(&perm4, 2).unwrap();
        assert_eq!(w2p.dim, 6);
        assert!(homomorphism_residual(&w2p, 50) < 1e-9);
        assert!(exterior_power(&perm4, 5).is_err());
    }

    #[test]
    fn p1_examples() {
        assert!(check_p1(&build_std(3, CAP).unwrap()).unwrap().pass);
        assert!(check_p1(&build_std(4, CAP).unwrap()).unwrap().pass);
        // perm rep of S3 is reducible: <chi, chi> = 2
        let rep = build_perm(3, CAP).unwrap();
        let report = check_p1(&rep).unwrap();
        assert!(!report.pass);
        assert_eq!(report.powers[1].norm, 2);
        // regular rep of Z/4 splits; exterior powers collide
        let z4 = FiniteGroup::cyclic(4, CAP).unwrap();
        let reg = build_regular(z4);
        assert!(!check_p1(&reg).unwrap().pass);
    }

    #[test]
    fn p2_examples() {
        assert!(check_p2(&build_std(4, CAP).unwrap()).pass);
        // faithful cyclic rep
        assert!(check_p2(&build_cyclic(6, CAP).unwrap()).pass);
        // {I, -I} in dim 2: -I - I has rank 2, no pseudo-reflections
        let z2 = FiniteGroup::cyclic(2, CAP).unwrap();
        let minus: Mat<Cyclo<BigRational>> = Mat::from_fn(2, 2, |i, j| {
            if i == j {
                Cyclo::from_scalar(rat_int(-1))
            } else {
                Cyclo::zero()
            }
        });
        let rep = from_exact_matrices(z2, vec![Mat::identity(2), minus], "pm_I".into());
        let rep_report = check_p2(&rep);
        assert!(!rep_report.pass);
        assert_eq!(rep_report.pseudo_reflections, 0);
    }

    #[test]
    fn peter_weyl_examples() {
        let std3 = build_std(3, CAP).unwrap();
        let sign3 = build_sign(3, CAP).unwrap();
        let r = peter_weyl_check(&std3, &sign3).unwrap();
        assert!(r.pass && !r.same_rep);
        let r = peter_weyl_check(&std3, &std3).unwrap();
        assert!(r.pass && r.same_rep);
        assert_eq!(r.normalization, Some(0.5));
        let triv = build_trivial(std3.group.clone());
        let r = peter_weyl_check(&triv, &triv).unwrap();
        assert!(r.pass);
        assert_eq!(r.normalization, Some(1.0));
        // reducible input is rejected
        let perm3 = build_perm(3, CAP).unwrap();
        assert!(peter_weyl_check(&perm3, &perm3).is_err());
    }

    #[test]
    fn det_of_sum_small() {
        // q = 2, d = 1: |a + b| = a + b
        let a: Mat<BigRational> = Mat::from_fn(1, 1, |_, _| rat_int(3));
        let b: Mat<BigRational> = Mat::from_fn(1, 1, |_, _| rat_int(4));
        let r = det_of_sum(&[a, b]);
        assert_eq!(r.value, rat_int(7));
        assert_eq!(r.direct, rat_int(7));
        // q = 1: plain determinant
        let m: Mat<BigRational> = Mat::from_fn(2, 2, |i, j| rat_int((2 * i + j + 1) as i64));
        let r = det_of_sum(std::slice::from_ref(&m));
        assert_eq!(r.value, m.det());
    }
}
