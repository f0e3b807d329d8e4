//! The matching polynomial, d-multi-matchings with their exact rational
//! weights, the closed-form d-matching polynomial, and the brute-force
//! covering-average oracle it is cross-validated against.
//!
//! A loop never participates in an ordinary matching (it covers its vertex
//! twice), so loops contribute nothing to the matching polynomial; in the
//! multi-matching weight they appear twice in their vertex's multinomial.

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::cover::{build_covering, GroupLabeling};
use crate::graph::OrientedMultigraph;
use crate::poly::RatPoly;
use crate::repgroup::FiniteGroup;

#[derive(Debug, Error)]
pub enum MatchingError {
    #[error("covering enumeration needs {needed} coverings, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("d must be at least 1")]
    BadD,
}

/// Edge multiplicity function with every vertex covered at most d times
/// (loops count twice at their vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMatching {
    pub mult: Vec<u32>,
}

impl MultiMatching {
    pub fn total(&self) -> u32 {
        self.mult.iter().sum()
    }

    /// Number of oriented edges at v in the multi-matching.
    pub fn vertex_load(&self, g: &OrientedMultigraph, v: usize) -> u32 {
        let mut s = 0;
        for (j, e) in g.edges().iter().enumerate() {
            if e.head == v {
                s += self.mult[j];
            }
            if e.tail == v {
                s += self.mult[j];
            }
        }
        s
    }
}

/// Number of i-edge matchings, for i = 0..=floor(n/2), via the classical
/// one-edge recursion m_i(G) = m_i(G - e) + m_{i-1}(G - u - v).
fn matching_counts(g: &OrientedMultigraph) -> Vec<BigInt> {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (e.head, e.tail))
        .collect();

    fn rec(edges: &[(usize, usize)]) -> Vec<BigInt> {
        let Some((&(u, v), rest)) = edges.split_last().map(|(l, r)| (l, r)) else {
            return vec![BigInt::one()];
        };
        let without = rec(rest);
        let contracted: Vec<(usize, usize)> = rest
            .iter()
            .copied()
            .filter(|&(a, b)| a != u && a != v && b != u && b != v)
            .collect();
        let with = rec(&contracted);
        let mut out = vec![BigInt::zero(); without.len().max(with.len() + 1)];
        for (i, c) in without.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in with.iter().enumerate() {
            out[i + 1] += c;
        }
        while out.last().map_or(false, |c| c.is_zero()) {
            out.pop();
        }
        out
    }
    rec(&edges)
}

/// M_G(x) = sum_i (-1)^i m_i x^(n - 2i).
pub fn matching_poly(g: &OrientedMultigraph) -> RatPoly {
    let n = g.n();
    let counts = matching_counts(g);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (i, m) in counts.iter().enumerate() {
        if 2 * i > n {
            break;
        }
        coeffs[n - 2 * i] = if i % 2 == 0 { m.clone() } else { -m.clone() };
    }
    RatPoly::from_bigint_coeffs(coeffs)
}

/// All d-multi-matchings, zero included, by depth-first assignment over edge
/// indices with running vertex budgets.
pub fn enumerate_multimatchings(g: &OrientedMultigraph, d: u32) -> Vec<MultiMatching> {
    let n = g.n();
    let mut out = vec![];
    let mut load = vec![0u32; n];
    let mut mult = vec![0u32; g.edge_count()];
    fn rec(
        g: &OrientedMultigraph,
        d: u32,
        j: usize,
        load: &mut Vec<u32>,
        mult: &mut Vec<u32>,
        out: &mut Vec<MultiMatching>,
    ) {
        if j == g.edge_count() {
            out.push(MultiMatching { mult: mult.clone() });
            return;
        }
        let e = g.edges()[j];
        let max_k = if e.is_loop() {
            (d - load[e.head]) / 2
        } else {
            (d - load[e.head]).min(d - load[e.tail])
        };
        for k in 0..=max_k {
            mult[j] = k;
            if e.is_loop() {
                load[e.head] += 2 * k;
            } else {
                load[e.head] += k;
                load[e.tail] += k;
            }
            rec(g, d, j + 1, load, mult, out);
            if e.is_loop() {
                load[e.head] -= 2 * k;
            } else {
                load[e.head] -= k;
                load[e.tail] -= k;
            }
        }
        mult[j] = 0;
    }
    rec(g, d, 0, &mut load, &mut mult, &mut out);
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    &factorial(n) / (factorial(k) * factorial(n - k))
}

/// multinomial(d; a_1, ..., a_k) = d! / (a_1! ... a_k! (d - sum a_i)!).
fn multinomial(d: u32, parts: &[u32]) -> BigInt {
    let s: u32 = parts.iter().sum();
    debug_assert!(s <= d);
    let mut denom = factorial(d - s);
    for &a in parts {
        denom *= factorial(a);
    }
    factorial(d) / denom
}

/// W_d(m): the average number of ordinary matchings in a random d-covering
/// projecting to the multi-matching m. Numerator: per-vertex multinomials
/// over the oriented edges at the vertex (loops twice); denominator:
/// binom(d, m(e)) per positive edge.
pub fn weight(g: &OrientedMultigraph, m: &MultiMatching, d: u32) -> BigRational {
    let mut num = BigInt::one();
    for v in 0..g.n() {
        let mut parts = vec![];
        for (j, e) in g.edges().iter().enumerate() {
            if e.is_loop() && e.head == v {
                parts.push(m.mult[j]);
                parts.push(m.mult[j]);
            } else {
                if e.head == v {
                    parts.push(m.mult[j]);
                }
                if e.tail == v {
                    parts.push(m.mult[j]);
                }
            }
        }
        num *= multinomial(d, &parts);
    }
    let mut den = BigInt::one();
    for (j, _) in g.edges().iter().enumerate() {
        den *= binomial(d, m.mult[j]);
    }
    BigRational::new(num, den)
}

/// Closed form: M_{d,G}(x) = sum over d-multi-matchings of
/// (-1)^|m| W_d(m) x^(nd - 2|m|). Monic of degree nd; equals the matching
/// polynomial at d = 1.
pub fn d_matching_poly(g: &OrientedMultigraph, d: u32) -> Result<RatPoly, MatchingError> {
    if d < 1 {
        return Err(MatchingError::BadD);
    }
    let nd = g.n() * d as usize;
    let mut coeffs = vec![BigRational::zero(); nd + 1];
    for m in enumerate_multimatchings(g, d) {
        let total = m.total() as usize;
        let w = weight(g, &m, d);
        let idx = nd - 2 * total;
        if total % 2 == 0 {
            coeffs[idx] += w;
        } else {
            coeffs[idx] -= w;
        }
    }
    Ok(RatPoly::from_coeffs(coeffs))
}

/// Brute-force oracle: the exact average of the matching polynomials of all
/// (d!)^|E+| coverings in C_{d,G}.
pub fn d_matching_poly_oracle(
    g: &OrientedMultigraph,
    d: u32,
    cap: u64,
) -> Result<RatPoly, MatchingError> {
    if d < 1 {
        return Err(MatchingError::BadD);
    }
    let order: u128 = (1..=d as u128).product();
    let needed = order.checked_pow(g.edge_count() as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(MatchingError::CapExceeded { needed, cap });
    }
    let group = FiniteGroup::symmetric(d as usize, (order as usize).max(2))
        .expect("order within its own cap");
    let ecount = g.edge_count();
    let mut values = vec![0u32; ecount];
    let mut sum = RatPoly::zero();
    let mut count = 0u64;
    loop {
        let lab = GroupLabeling { group: group.clone(), values: values.clone() };
        let h = build_covering(g, &lab).expect("valid covering");
        sum = sum.add(&matching_poly(&h));
        count += 1;
        // odometer over labelings
        let mut j = 0;
        loop {
            if j == ecount {
                let avg = sum.scale(&BigRational::new(BigInt::one(), BigInt::from(count)));
                return Ok(avg);
            }
            values[j] += 1;
            if (values[j] as usize) < group.order() {
                break;
            }
            values[j] = 0;
            j += 1;
        }
        if ecount == 0 {
            let avg = sum.scale(&BigRational::new(BigInt::one(), BigInt::from(count)));
            return Ok(avg);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::poly;
    use crate::ratio::{rat, rat_int};

    /// Independent oracle: count matchings by brute subset enumeration.
    fn matching_counts_oracle(g: &OrientedMultigraph) -> Vec<BigInt> {
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.head, e.tail))
            .collect();
        let mut counts = vec![BigInt::zero(); g.n() / 2 + 1];
        let m = edges.len();
        'subset: for mask in 0u32..(1 << m) {
            let mut used = 0u64;
            let mut size = 0usize;
            for (j, &(u, v)) in edges.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    let bits = (1u64 << u) | (1u64 << v);
                    if used & bits != 0 || u == v {
                        continue 'subset;
                    }
                    used |= bits;
                    size += 1;
                }
            }
            counts[size] += 1;
        }
        while counts.last().map_or(false, |c| c.is_zero()) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn matching_poly_examples() {
        assert_eq!(matching_poly(&corpus::k2()), RatPoly::from_int_coeffs(&[-1, 0, 1]));
        assert_eq!(matching_poly(&corpus::cycle(3)), RatPoly::from_int_coeffs(&[0, -3, 0, 1]));
        // K4 minus an edge: m_1 = 5, and exactly two 2-matchings
        // (the enumeration oracle fixes the constant at 2)
        let k4me = corpus::k4_minus_edge();
        assert_eq!(matching_counts_oracle(&k4me), vec![1.into(), 5.into(), 2.into()]);
        assert_eq!(matching_poly(&k4me), RatPoly::from_int_coeffs(&[2, 0, -5, 0, 1]));
        // loops never match
        assert_eq!(matching_poly(&corpus::bouquet(2)), RatPoly::from_int_coeffs(&[0, 1]));
    }

    #[test]
    fn matching_counts_match_subset_oracle() {
        for g in [
            corpus::cycle(4),
            corpus::cycle(5),
            corpus::theta(3),
            corpus::k4_minus_edge(),
            corpus::path(5),
        ] {
            assert_eq!(matching_counts(&g), matching_counts_oracle(&g), "graph {g:?}");
        }
    }

    #[test]
    fn enumerate_multimatchings_examples() {
        let k2 = corpus::k2();
        assert_eq!(enumerate_multimatchings(&k2, 1).len(), 2);
        assert_eq!(enumerate_multimatchings(&k2, 2).len(), 3);
        assert_eq!(enumerate_multimatchings(&corpus::cycle(3), 1).len(), 4);
        // loops: vertex budget consumed twice
        let b = corpus::bouquet(1);
        assert_eq!(enumerate_multimatchings(&b, 2).len(), 2); // k = 0, 1
        assert_eq!(enumerate_multimatchings(&b, 3).len(), 2);
    }

    #[test]
    fn weight_examples() {
        let k2 = corpus::k2();
        let zero = MultiMatching { mult: vec![0] };
        assert_eq!(weight(&k2, &zero, 2), rat_int(1));
        let one = MultiMatching { mult: vec![1] };
        assert_eq!(weight(&k2, &one, 2), rat_int(2));
        let two = MultiMatching { mult: vec![2] };
        assert_eq!(weight(&k2, &two, 2), rat_int(1));
    }

    #[test]
    fn d_matching_poly_examples() {
        // the displayed K4-minus-edge value at d = 3
        let k4me = corpus::k4_minus_edge();
        let m3 = d_matching_poly(&k4me, 3).unwrap();
        let expected = RatPoly::from_coeffs(vec![
            rat_int(4),
            rat_int(0),
            rat(-178, 3),
            rat_int(0),
            rat_int(180),
            rat_int(0),
            rat_int(-189),
            rat_int(0),
            rat_int(81),
            rat_int(0),
            rat_int(-15),
            rat_int(0),
            rat_int(1),
        ]);
        assert_eq!(m3, expected);
        // d = 1 is the ordinary matching polynomial
        for g in [corpus::cycle(3), corpus::theta(3), k4me] {
            assert_eq!(d_matching_poly(&g, 1).unwrap(), matching_poly(&g));
        }
        // K2 at d = 2: (x^2 - 1)^2
        let m2 = d_matching_poly(&corpus::k2(), 2).unwrap();
        assert_eq!(m2, RatPoly::from_int_coeffs(&[1, 0, -2, 0, 1]));
        // C3 at d = 2 (hand-expanded from the weights)
        let m2 = d_matching_poly(&corpus::cycle(3), 2).unwrap();
        assert_eq!(m2, RatPoly::from_int_coeffs(&[-1, 0, 9, 0, -6, 0, 1]));
    }

    #[test]
    fn oracle_equivalence_small() {
        let cap = 1_000_000;
        for (g, d) in [
            (corpus::k2(), 2),
            (corpus::k2(), 3),
            (corpus::cycle(3), 2),
            (corpus::bouquet(1), 2),
            (corpus::bouquet(1), 3),
            (corpus::path(3), 2),
        ] {
            let closed = d_matching_poly(&g, d).unwrap();
            let oracle = d_matching_poly_oracle(&g, d, cap).unwrap();
            assert_eq!(closed, oracle, "graph {g:?} d={d}");
        }
        // d = 1 oracle is the matching polynomial itself
        let g = corpus::cycle(4);
        assert_eq!(d_matching_poly_oracle(&g, 1, cap).unwrap(), matching_poly(&g));
        // cap errors
        assert!(matches!(
            d_matching_poly_oracle(&corpus::cycle(3), 4, 10),
            Err(MatchingError::CapExceeded { .. })
        ));
    }

    #[test]
    fn degree_parity_and_monic() {
        for (g, d) in [(corpus::cycle(3), 2), (corpus::theta(3), 3), (corpus::bouquet(2), 2)] {
            let m = d_matching_poly(&g, d).unwrap();
            assert_eq!(m.degree(), Some(g.n() * d as usize));
            assert!(m.leading().unwrap().is_one());
            assert!(m.has_pure_parity());
        }
    }

    #[test]
    fn heilmann_lieb_real_rooted_small() {
        for g in [corpus::cycle(3), corpus::cycle(4), corpus::theta(3), corpus::k4_minus_edge()] {
            assert!(poly::is_real_rooted(&matching_poly(&g)));
        }
    }
}
