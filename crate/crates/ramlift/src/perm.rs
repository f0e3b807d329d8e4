//! Permutations, finitely supported distributions over group elements with
//! exact rational weights, and the rank-1 factorizations of the uniform
//! distribution used per edge by the covering search: the inductive
//! swap scheme on S_r, the explicit X, Y, Z triple on S_3, single uniform
//! factors on Z/m, phase factors on G(m, 1, d), and lazy-walk factors with a
//! reported total-variation distance.

use num::{BigRational, One, Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

use crate::ratio::{self, rat};
use crate::repgroup::{FiniteGroup, GroupElem, RepError, Representation};

#[derive(Debug, Error)]
pub enum PermError {
    #[error("degree {r} out of range for this operation")]
    BadDegree { r: usize },
    #[error("weights must be positive and sum to 1 (sum = {sum})")]
    BadWeights { sum: String },
    #[error("support elements must be distinct")]
    DuplicateSupport,
    #[error("factor is not rank-1 under {rep}: rank(pi(g1 g2^-1) - I) = {rank}")]
    NotRankOne { rep: String, rank: usize },
    #[error("generators do not generate the group (closure {closure} of {order})")]
    GeneratorsDoNotGenerate { closure: usize, order: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A permutation of 0..r-1 given by its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    pub images: Vec<u8>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Permutation { images: (0..r as u8).collect() }
    }

    pub fn transposition(i: usize, j: usize, r: usize) -> Self {
        let mut images: Vec<u8> = (0..r as u8).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn is_valid(&self) -> bool {
        let r = self.images.len();
        let mut seen = vec![false; r];
        for &x in &self.images {
            if x as usize >= r || seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        true
    }

    /// self after other: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn to_elem(&self) -> GroupElem {
        GroupElem { perm: self.images.clone(), phases: vec![0; self.images.len()], modulus: 1 }
    }

    pub fn from_elem(e: &GroupElem) -> Self {
        Permutation { images: e.perm.clone() }
    }

    /// One-line serialization `[s0,s1,...]`.
    pub fn to_wire(&self) -> Vec<u8> {
        self.images.clone()
    }
}

/// Finitely supported probability distribution over group elements.
#[derive(Debug, Clone)]
pub struct FactorDistribution {
    pub group: Arc<FiniteGroup>,
    /// (element id, weight); weights positive, sum exactly 1, ids distinct.
    pub support: Vec<(u32, BigRational)>,
}

impl FactorDistribution {
    pub fn new(group: Arc<FiniteGroup>, support: Vec<(u32, BigRational)>) -> Result<Self, PermError> {
        let mut sum = BigRational::zero();
        let mut ids: Vec<u32> = support.iter().map(|(id, _)| *id).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(PermError::DuplicateSupport);
        }
        for (_, w) in &support {
            if !w.is_positive() {
                return Err(PermError::BadWeights { sum: ratio::format_rational(w) });
            }
            sum += w;
        }
        if !sum.is_one() {
            return Err(PermError::BadWeights { sum: ratio::format_rational(&sum) });
        }
        Ok(FactorDistribution { group, support })
    }

    pub fn point(group: Arc<FiniteGroup>, id: u32) -> Self {
        FactorDistribution { group, support: vec![(id, BigRational::one())] }
    }

    pub fn uniform(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let w = BigRational::new(1.into(), (n as i64).into());
        FactorDistribution {
            support: (0..n as u32).map(|id| (id, w.clone())).collect(),
            group,
        }
    }

    /// Convolution: distribution of XY for independent X ~ self, Y ~ other.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); self.group.order()];
        for (a, wa) in &self.support {
            for (b, wb) in &other.support {
                let c = self.group.mul_ids(*a, *b) as usize;
                acc[c] += wa * wb;
            }
        }
        FactorDistribution {
            group: self.group.clone(),
            support: acc
                .into_iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(id, w)| (id as u32, w))
                .collect(),
        }
    }

    /// Exact total-variation distance from the uniform distribution.
    pub fn tv_from_uniform(&self) -> BigRational {
        let n = self.group.order();
        let u = BigRational::new(1.into(), (n as i64).into());
        let mut acc = BigRational::zero();
        let mut covered = 0usize;
        for (_, w) in &self.support {
            acc += (w - &u).abs();
            covered += 1;
        }
        acc += u * ratio::rat_int((n - covered) as i64);
        acc / ratio::rat_int(2)
    }

    pub fn is_uniform(&self) -> bool {
        self.tv_from_uniform().is_zero()
    }

    /// Rank-1 property under a representation: every two distinct support
    /// values g1, g2 satisfy rank(pi(g1 g2^-1) - I) = 1.
    pub fn validate_rank1(&self, rep: &Representation) -> Result<(), PermError> {
        for i in 0..self.support.len() {
            for j in (i + 1)..self.support.len() {
                let ratio_id =
                    self.group.mul_ids(self.support[i].0, self.group.inv_id(self.support[j].0));
                let rank = rep.rank_minus_identity(ratio_id);
                if rank != 1 {
                    return Err(PermError::NotRankOne { rep: rep.name.clone(), rank });
                }
            }
        }
        Ok(())
    }
}

/// An ordered list of factors whose product distribution is a target
/// distribution on the group (exactly, unless `epsilon` reports the
/// total-variation gap of an approximate lazy-walk factorization).
#[derive(Debug, Clone)]
pub struct EdgeFactorization {
    pub group: Arc<FiniteGroup>,
    pub factors: Vec<FactorDistribution>,
    /// TV distance of the convolution from uniform; None means exactly 0.
    pub epsilon: Option<BigRational>,
}

impl EdgeFactorization {
    pub fn product_distribution(&self) -> FactorDistribution {
        let mut acc = FactorDistribution::point(self.group.clone(), self.group.identity_id());
        for f in &self.factors {
            acc = acc.convolve(f);
        }
        acc
    }
}

/// The uniform distribution on S_r as a single explicit factor.
pub fn uniform_sr(r: usize, cap_r: usize, group_cap: usize) -> Result<FactorDistribution, PermError> {
    if r < 1 || r > cap_r {
        return Err(PermError::BadDegree { r });
    }
    let group = FiniteGroup::symmetric(r, group_cap.max((1..=r).product()))?;
    Ok(FactorDistribution::uniform(group))
}

/// The inductive swap factorization of uniform on S_r with binom(r, 2)
/// two-point factors: uniform(S_{s-1}) extended by Y_j = {(j-1, s-1) with
/// probability 1/(s-j+1), id otherwise} for j = 1..s-1, for s = 2..r.
pub fn swap_factorization(r: usize, group_cap: usize) -> Result<EdgeFactorization, PermError> {
    if r < 2 {
        return Err(PermError::BadDegree { r });
    }
    let group = FiniteGroup::symmetric(r, group_cap.max((1..=r).product()))?;
    let id = group.identity_id();
    let mut factors = vec![];
    for s in 2..=r {
        for j in 1..s {
            let t = Permutation::transposition(j - 1, s - 1, r).to_elem();
            let t_id = group.id_of(&t).expect("transposition in group");
            let p = rat(1, (s - j + 1) as i64);
            factors.push(FactorDistribution::new(
                group.clone(),
                vec![(id, BigRational::one() - &p), (t_id, p)],
            )?);
        }
    }
    Ok(EdgeFactorization { group, factors, epsilon: None })
}

/// The explicit X, Y, Z factor triple on S_3:
/// X = {id 1/2, (0 1) 1/2}, Y = {id 1/3, (0 2) 2/3}, Z = {id 1/2, (0 1) 1/2};
/// the product X Y Z is uniform on S_3.
pub fn xyz_s3(group_cap: usize) -> Result<EdgeFactorization, PermError> {
    let group = FiniteGroup::symmetric(3, group_cap.max(6))?;
    let id = group.identity_id();
    let t01 = group.id_of(&Permutation::transposition(0, 1, 3).to_elem()).unwrap();
    let t02 = group.id_of(&Permutation::transposition(0, 2, 3).to_elem()).unwrap();
    let half = rat(1, 2);
    let third = rat(1, 3);
    let factors = vec![
        FactorDistribution::new(group.clone(), vec![(id, half.clone()), (t01, half.clone())])?,
        FactorDistribution::new(group.clone(), vec![(id, third.clone()), (t02, rat(2, 3))])?,
        FactorDistribution::new(group.clone(), vec![(id, half.clone()), (t01, half)])?,
    ];
    Ok(EdgeFactorization { group, factors, epsilon: None })
}

/// Uniform distribution on Z/m as a single factor (rank-1 for any faithful
/// one-dimensional representation).
pub fn cyclic_uniform(m: u16, group_cap: usize) -> Result<EdgeFactorization, PermError> {
    if m < 2 {
        return Err(PermError::BadDegree { r: m as usize });
    }
    let group = FiniteGroup::cyclic(m, group_cap.max(m as usize))?;
    let factors = vec![FactorDistribution::uniform(group.clone())];
    Ok(EdgeFactorization { group, factors, epsilon: None })
}

/// Factorization of uniform on G(m, 1, d): the swap factors of uniform S_d on
/// the permutation part, then d uniform single-coordinate phase factors.
pub fn gm1d_factorization(m: u16, d: usize, group_cap: usize) -> Result<EdgeFactorization, PermError> {
    let group = FiniteGroup::gm1d(m, d, group_cap)?;
    let id = group.identity_id();
    let mut factors: Vec<FactorDistribution> = vec![];
    // permutation part: same scheme as swap_factorization, embedded
    for s in 2..=d {
        for j in 1..s {
            let mut e = GroupElem::identity(d, m);
            e.perm.swap(j - 1, s - 1);
            let t_id = group.id_of(&e).expect("transposition in G(m,1,d)");
            let p = rat(1, (s - j + 1) as i64);
            factors.push(FactorDistribution::new(
                group.clone(),
                vec![(id, BigRational::one() - &p), (t_id, p)],
            )?);
        }
    }
    // phase part: coordinate i uniform over zeta^0..zeta^{m-1}
    let w = rat(1, m as i64);
    for i in 0..d {
        let mut support = vec![];
        for k in 0..m {
            let mut e = GroupElem::identity(d, m);
            e.phases[i] = k as u8;
            support.push((group.id_of(&e).expect("phase in group"), w.clone()));
        }
        factors.push(FactorDistribution::new(group.clone(), support)?);
    }
    Ok(EdgeFactorization { group, factors, epsilon: None })
}

/// Lazy random-walk factorization: `steps` factors {g_i: 1/3, g_i^-1: 1/3,
/// id: 1/3} cycling through the generators; the exact TV distance of the
/// convolution from uniform is recorded as epsilon.
pub fn lazy_walk_factorization(
    group: Arc<FiniteGroup>,
    generators: &[GroupElem],
    steps: usize,
) -> Result<EdgeFactorization, PermError> {
    let gen_ids: Vec<u32> = generators
        .iter()
        .map(|g| group.id_of(g).ok_or(PermError::GeneratorsDoNotGenerate {
            closure: 0,
            order: group.order(),
        }))
        .collect::<Result<_, _>>()?;
    let closure = group.closure_of(&gen_ids);
    if closure.len() != group.order() {
        return Err(PermError::GeneratorsDoNotGenerate {
            closure: closure.len(),
            order: group.order(),
        });
    }
    let third = rat(1, 3);
    let mut factors = vec![];
    for i in 0..steps {
        let g = gen_ids[i % gen_ids.len()];
        let ginv = group.inv_id(g);
        let id = group.identity_id();
        // merge duplicate support values (g may be an involution or identity)
        let mut support: Vec<(u32, BigRational)> = vec![];
        for v in [g, ginv, id] {
            match support.iter_mut().find(|(x, _)| *x == v) {
                Some((_, w)) => *w += &third,
                None => support.push((v, third.clone())),
            }
        }
        support.sort_by_key(|(x, _)| *x);
        factors.push(FactorDistribution::new(group.clone(), support)?);
    }
    let fact = EdgeFactorization { group, factors, epsilon: None };
    let eps = fact.product_distribution().tv_from_uniform();
    Ok(EdgeFactorization { epsilon: Some(eps), ..fact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat_int;
    use crate::repgroup::build_std;

    const CAP: usize = 5040;

    #[test]
    fn permutation_group_axioms() {
        let a = Permutation { images: vec![1, 2, 0] };
        let b = Permutation { images: vec![0, 2, 1] };
        assert!(a.is_valid() && b.is_valid());
        let ab = a.compose(&b);
        // (a b)(x) = a(b(x))
        for x in 0..3 {
            assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
        assert!(!Permutation { images: vec![0, 0, 1] }.is_valid());
    }

    #[test]
    fn uniform_sr_examples() {
        let u1 = uniform_sr(1, 8, CAP).unwrap();
        assert_eq!(u1.support.len(), 1);
        assert!(u1.support[0].1.is_one());
        let u2 = uniform_sr(2, 8, CAP).unwrap();
        assert_eq!(u2.support.len(), 2);
        assert_eq!(u2.support[0].1, rat(1, 2));
        let u3 = uniform_sr(3, 8, CAP).unwrap();
        assert_eq!(u3.support.len(), 6);
        assert!(u3.support.iter().all(|(_, w)| *w == rat(1, 6)));
        assert!(uniform_sr(9, 8, CAP).is_err());
    }

    #[test]
    fn swap_factorization_is_exactly_uniform() {
        for r in 2..=5 {
            let f = swap_factorization(r, CAP).unwrap();
            assert_eq!(f.factors.len(), r * (r - 1) / 2);
            let prod = f.product_distribution();
            assert!(prod.is_uniform(), "swap factorization of S{r} not uniform");
        }
        assert!(swap_factorization(1, CAP).is_err());
    }

    #[test]
    fn swap_factors_are_rank1_under_std() {
        for r in 2..=5 {
            let f = swap_factorization(r, CAP).unwrap();
            let std = build_std(r, CAP).unwrap();
            for factor in &f.factors {
                factor.validate_rank1(&std).unwrap();
            }
        }
    }

    #[test]
    fn xyz_matches_uniform_s3() {
        let f = xyz_s3(CAP).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.iter().all(|fd| fd.support.len() == 2));
        let prod = f.product_distribution();
        assert_eq!(prod.support.len(), 6);
        assert!(prod.is_uniform());
        // the X marginal alone is not uniform on S3
        assert!(!f.factors[0].is_uniform());
        // rank-1 under std
        let std = build_std(3, CAP).unwrap();
        for factor in &f.factors {
            factor.validate_rank1(&std).unwrap();
        }
    }

    #[test]
    fn cyclic_uniform_examples() {
        let f = cyclic_uniform(2, CAP).unwrap();
        let d = &f.factors[0];
        assert_eq!(d.support.len(), 2);
        assert_eq!(d.support[0].1, rat(1, 2));
        let f = cyclic_uniform(3, CAP).unwrap();
        assert!(f.factors[0].support.iter().all(|(_, w)| *w == rat(1, 3)));
        let f = cyclic_uniform(6, CAP).unwrap();
        assert_eq!(f.factors[0].support.len(), 6);
        // rank-1 under the faithful 1-dim rep
        let rep = crate::repgroup::build_cyclic(6, CAP).unwrap();
        f.factors[0].validate_rank1(&rep).unwrap();
    }

    #[test]
    fn gm1d_factorization_uniform() {
        let f = gm1d_factorization(2, 2, CAP).unwrap();
        assert!(f.product_distribution().is_uniform());
        let rep = crate::repgroup::build_g_m1d(2, 2, CAP).unwrap();
        for factor in &f.factors {
            factor.validate_rank1(&rep).unwrap();
        }
        let f = gm1d_factorization(3, 2, CAP).unwrap();
        assert!(f.product_distribution().is_uniform());
    }

    #[test]
    fn lazy_walk_tv_distances() {
        // Z/2, one generator, one step: {1: 2/3, 0: 1/3}, TV = 1/6
        let z2 = FiniteGroup::cyclic(2, CAP).unwrap();
        let gen = GroupElem { perm: vec![0], phases: vec![1], modulus: 2 };
        let f = lazy_walk_factorization(z2.clone(), &[gen.clone()], 1).unwrap();
        assert_eq!(f.epsilon, Some(rat(1, 6)));
        // TV non-increasing along full sweeps
        let mut last = rat_int(1);
        for steps in [1, 2, 4, 8, 16] {
            let f = lazy_walk_factorization(z2.clone(), &[gen.clone()], steps).unwrap();
            let eps = f.epsilon.unwrap();
            assert!(eps <= last);
            last = eps;
        }
        // S3 with two transposition generators, 30 steps: TV < 1e-6
        let s3 = FiniteGroup::symmetric(3, CAP).unwrap();
        let g1 = Permutation::transposition(0, 1, 3).to_elem();
        let g2 = Permutation::transposition(1, 2, 3).to_elem();
        let f = lazy_walk_factorization(s3.clone(), &[g1.clone(), g2], 30).unwrap();
        assert!(f.epsilon.unwrap() < rat(1, 1_000_000));
        // non-generating set is rejected
        assert!(lazy_walk_factorization(s3, &[g1], 5).is_err());
    }

    #[test]
    fn distribution_validation() {
        let g = FiniteGroup::cyclic(2, CAP).unwrap();
        assert!(FactorDistribution::new(g.clone(), vec![(0, rat(1, 2)), (1, rat(1, 3))]).is_err());
        assert!(FactorDistribution::new(
            g.clone(),
            vec![(0, rat(1, 2)), (0, rat(1, 2))]
        )
        .is_err());
        assert!(FactorDistribution::new(g, vec![(0, rat(1, 2)), (1, rat(1, 2))]).is_ok());
    }
}
