//! Dense univariate polynomials with exact rational coefficients, Sturm-based
//! real-root counting and isolation, root brackets, and the interlacing
//! predicates used by the covering search.
//!
//! All root work happens on primitive integer images of the polynomials (same
//! roots), with half-open Sturm counts: `count(a, b)` is the number of roots in
//! `(a, b]`, which is exactly the bracket semantics certificates use.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::ratio;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder (old spectrum must divide)")]
    NotDivisible,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree mismatch: expected deg g = deg f - 1, got deg f = {f}, deg g = {g}")]
    DegreeMismatch { f: usize, g: usize },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("leading coefficients must share a sign")]
    LeadingSignMismatch,
    #[error("cannot parse polynomial coefficient {0:?}")]
    BadCoefficient(String),
}

/// Dense univariate polynomial, coefficients lowest-degree first.
/// Canonical form: empty vector for zero, otherwise nonzero last coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = RatPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn x() -> Self {
        RatPoly { coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ratio::rat_int(c)).collect())
    }

    pub fn from_bigint_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + o.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - o.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RatPoly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * ratio::rat_int(i as i64))
            .collect();
        Self::from_coeffs(out)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&(BigRational::one() / lc.clone())),
        }
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        let gd = g.degree().ok_or(PolyError::DivisionByZero)?;
        let glc = g.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < gd + 1 {
            return Ok((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - gd;
        let mut q = vec![BigRational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + gd].clone() / &glc;
            if c.is_zero() {
                continue;
            }
            q[k] = c.clone();
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] -= &c * gc;
            }
        }
        Ok((Self::from_coeffs(q), Self::from_coeffs(rem)))
    }

    /// Exact division; errors with `NotDivisible` on a nonzero remainder.
    pub fn div_exact(&self, g: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.divrem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Monic gcd (via primitive integer remainder sequences).
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let a = IntPoly::from_rat(self);
        let b = IntPoly::from_rat(o);
        a.gcd(&b).to_rat().monic()
    }

    /// Square-free part `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().map_or(true, |d| d == 0) {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun square-free decomposition: returns [(q_k, k)] with
    /// f = lc * prod q_k^k, the q_k monic, square-free, pairwise coprime.
    pub fn yun(&self) -> Vec<(RatPoly, usize)> {
        let Some(deg) = self.degree() else { return vec![] };
        if deg == 0 {
            return vec![];
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = fp.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut out = vec![];
        let mut i = 1;
        while b.degree() != Some(0) {
            let ai = b.gcd(&d);
            if ai.degree().map_or(false, |dg| dg > 0) {
                out.push((ai.clone(), i));
            }
            b = b.div_exact(&ai).unwrap();
            c = d.div_exact(&ai).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Clears denominators and content; same roots, integer coefficients.
    pub(crate) fn to_int_primitive(&self) -> IntPoly {
        IntPoly::from_rat(self)
    }

    /// True iff all coefficients are integers.
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// True iff only exponents with `e % 2 == parity` carry nonzero coefficients.
    pub fn has_pure_parity(&self) -> bool {
        let Some(d) = self.degree() else { return true };
        let parity = d % 2;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % 2 == parity)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*x", c)?,
                _ => write!(f, "{}*x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<serde_json::Value>,
}

impl Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| serde_json::Value::String(ratio::format_rational(c)))
            .collect();
        PolyJson { coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(raw.coeffs.len());
        for v in raw.coeffs {
            let q = match &v {
                serde_json::Value::String(s) => {
                    ratio::parse_rational(s).map_err(serde::de::Error::custom)?
                }
                serde_json::Value::Number(n) if n.is_i64() => {
                    ratio::rat_int(n.as_i64().unwrap())
                }
                other => {
                    return Err(serde::de::Error::custom(format!(
                        "bad polynomial coefficient {other}"
                    )))
                }
            };
            coeffs.push(q);
        }
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

// ---------------------------------------------------------------------------
// Integer-primitive internals (Sturm machinery)
// ---------------------------------------------------------------------------

/// Primitive integer polynomial (content 1), ascending coefficients.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    fn normalize(&mut self) {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = num::Integer::gcd(&g, x);
        }
        g
    }

    fn make_primitive(&mut self) {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return;
        }
        for x in &mut self.c {
            *x /= &g;
        }
    }

    pub(crate) fn from_rat(p: &RatPoly) -> IntPoly {
        let mut lcm = BigInt::one();
        for c in p.coeffs() {
            lcm = num::Integer::lcm(&lcm, c.denom());
        }
        let mut out = IntPoly {
            c: p.coeffs()
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        };
        out.normalize();
        out.make_primitive();
        out
    }

    fn to_rat(&self) -> RatPoly {
        RatPoly::from_bigint_coeffs(self.c.clone())
    }

    fn derivative(&self) -> IntPoly {
        if self.c.len() <= 1 {
            return IntPoly { c: vec![] };
        }
        let mut out = IntPoly {
            c: self
                .c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * BigInt::from(i))
                .collect(),
        };
        out.normalize();
        out
    }

    /// Sign of p(n/d) for d > 0: sign of sum c_i n^i d^(deg-i).
    fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        let Some(deg) = self.degree() else { return 0 };
        // Horner from the top: acc = acc * num + c_i * den^(deg - i)
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // denominator powers from deg..0 need den^(deg-i); iterate downward
        // computing acc in terms of num while multiplying coefficient by the
        // growing power of den.
        for i in (0..=deg).rev() {
            acc = acc * num + &self.c[i] * &dpow;
            if i > 0 {
                dpow *= den;
            }
        }
        match acc.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        }
    }

    fn sign_at_rational(&self, q: &BigRational) -> i8 {
        self.sign_at(q.numer(), q.denom())
    }

    fn leading_sign(&self) -> i8 {
        match self.c.last() {
            None => 0,
            Some(x) => {
                if x.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    fn sign_at_pos_inf(&self) -> i8 {
        self.leading_sign()
    }

    fn sign_at_neg_inf(&self) -> i8 {
        let Some(deg) = self.degree() else { return 0 };
        let s = self.leading_sign();
        if deg % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Pseudo-remainder scaled to keep the sign of the true rational
    /// remainder, made primitive.
    fn signed_prem(&self, g: &IntPoly) -> IntPoly {
        let fd = self.degree().unwrap();
        let gd = g.degree().unwrap();
        debug_assert!(fd >= gd);
        let glc = g.c[gd].clone();
        let mut rem = self.c.clone();
        // classic pseudo-division: rem <- glc*rem - lead*g*x^k, so the top
        // coefficient cancels exactly; total multiplier is glc^steps
        let steps = fd - gd + 1;
        for k in (0..steps).rev() {
            let lead = rem[k + gd].clone();
            for x in rem.iter_mut() {
                *x *= &glc;
            }
            if !lead.is_zero() {
                for (j, gc) in g.c.iter().enumerate() {
                    rem[k + j] -= &lead * gc;
                }
            }
        }
        let mut r = IntPoly { c: rem };
        r.normalize();
        // The multiplier was glc^steps; if negative and steps odd, signs flipped.
        if glc.is_negative() && steps % 2 == 1 {
            for x in &mut r.c {
                *x = -x.clone();
            }
        }
        r.make_primitive();
        r
    }

    /// Primitive gcd via Euclidean pseudo-remainders.
    fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        a.make_primitive();
        b.make_primitive();
        while !b.is_zero() {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.signed_prem(&b);
            a = b;
            b = r;
        }
        a.make_primitive();
        a
    }
}

/// Sturm chain of a (square-free) integer polynomial.
pub(crate) struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub(crate) fn new(p: &IntPoly) -> SturmChain {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        loop {
            let n = chain.len();
            if n < 2 || chain[n - 1].degree().is_none() {
                break;
            }
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let r = chain[n - 2].signed_prem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let mut neg = r;
            for x in &mut neg.c {
                *x = -x.clone();
            }
            chain.push(neg);
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn var_at(&self, q: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_rational(q)))
    }

    fn var_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_pos_inf()))
    }

    fn var_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_neg_inf()))
    }

    /// Number of distinct roots in (a, b], a < b.
    pub(crate) fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.var_at(a).saturating_sub(self.var_at(b))
    }

    /// Number of distinct roots in (a, +inf).
    pub(crate) fn count_above(&self, a: &BigRational) -> usize {
        self.var_at(a).saturating_sub(self.var_at_pos_inf())
    }

    /// Number of distinct roots in (-inf, b].
    pub(crate) fn count_upto(&self, b: &BigRational) -> usize {
        self.var_at_neg_inf().saturating_sub(self.var_at(b))
    }

    /// Total number of distinct real roots.
    pub(crate) fn count_all(&self) -> usize {
        self.var_at_neg_inf().saturating_sub(self.var_at_pos_inf())
    }
}

// ---------------------------------------------------------------------------
// Multiplicity-aware counting
// ---------------------------------------------------------------------------

/// Square-free decomposition with Sturm chains attached, for counting roots
/// of the original polynomial with multiplicity.
pub(crate) struct MultCounter {
    parts: Vec<(SturmChain, IntPoly, usize)>,
}

impl MultCounter {
    pub(crate) fn new(f: &RatPoly) -> MultCounter {
        let parts = f
            .yun()
            .into_iter()
            .map(|(q, k)| {
                let ip = q.to_int_primitive();
                (SturmChain::new(&ip), ip, k)
            })
            .collect();
        MultCounter { parts }
    }

    pub(crate) fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.parts.iter().map(|(s, _, k)| k * s.count_in(a, b)).sum()
    }

    pub(crate) fn count_above(&self, a: &BigRational) -> usize {
        self.parts.iter().map(|(s, _, k)| k * s.count_above(a)).sum()
    }

    pub(crate) fn count_upto(&self, b: &BigRational) -> usize {
        self.parts.iter().map(|(s, _, k)| k * s.count_upto(b)).sum()
    }

    pub(crate) fn count_all(&self) -> usize {
        self.parts.iter().map(|(s, _, k)| k * s.count_all()).sum()
    }

    pub(crate) fn multiplicity_at(&self, q: &BigRational) -> usize {
        self.parts
            .iter()
            .filter(|(_, p, _)| p.sign_at_rational(q) == 0)
            .map(|(_, _, k)| k)
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Public root predicates
// ---------------------------------------------------------------------------

/// Bracket certifying the location of a root (usually the largest one).
/// When lower < upper, the half-open interval (lower, upper] contains
/// `multiplicity_count` roots (with multiplicity); a collapsed bracket
/// (lower == upper) pins an exact rational root with its multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootBracket {
    #[serde(with = "crate::ratio::serde_rational")]
    pub lower: BigRational,
    #[serde(with = "crate::ratio::serde_rational")]
    pub upper: BigRational,
    pub multiplicity_count: usize,
}

/// Strict upper bound on |roots|: 1 + max |c_i| / |c_deg|.
pub fn cauchy_bound(f: &RatPoly) -> BigRational {
    let p = f.to_int_primitive();
    let deg = p.degree().expect("nonzero");
    let lead = p.c[deg].clone();
    let mut best = BigRational::zero();
    for c in &p.c {
        let r = BigRational::new(c.abs(), lead.abs());
        if r > best {
            best = r;
        }
    }
    best + BigRational::one()
}

/// True iff f (nonzero) has all roots real, counted with multiplicity.
pub fn is_real_rooted(f: &RatPoly) -> bool {
    let Some(deg) = f.degree() else { return false };
    if deg == 0 {
        return true;
    }
    let s = f.squarefree_part();
    let sd = s.degree().unwrap();
    let chain = SturmChain::new(&s.to_int_primitive());
    chain.count_all() == sd
}

/// Total number of real roots of f, with multiplicity.
pub fn count_real_roots(f: &RatPoly) -> usize {
    MultCounter::new(f).count_all()
}

/// Number of roots of f strictly greater than t, with multiplicity.
pub fn count_roots_above(f: &RatPoly, t: &BigRational) -> usize {
    MultCounter::new(f).count_above(t)
}

/// Number of roots of f strictly less than t, with multiplicity.
pub fn count_roots_below(f: &RatPoly, t: &BigRational) -> usize {
    let mc = MultCounter::new(f);
    mc.count_upto(t) - mc.multiplicity_at(t)
}

/// Bracket of width <= tol around the largest real root of f.
/// Rational largest roots collapse to exact [q, q] brackets.
pub fn largest_root(f: &RatPoly, tol: &BigRational) -> Result<RootBracket, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Err(PolyError::NoRealRoot);
    }
    let mc = MultCounter::new(f);
    let s = f.squarefree_part();
    let chain = SturmChain::new(&s.to_int_primitive());
    if chain.count_all() == 0 {
        return Err(PolyError::NoRealRoot);
    }
    let bound = cauchy_bound(f);
    let mut lo = -bound.clone();
    let mut hi = bound;
    let two = ratio::rat_int(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if chain.count_above(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Try to snap to an exact rational root.
    let snap = ratio::simplest_in_interval(&lo, &hi);
    let sp = s.to_int_primitive();
    if sp.sign_at_rational(&snap) == 0 && chain.count_above(&snap) == 0 {
        let mult = mc.multiplicity_at(&snap);
        return Ok(RootBracket { lower: snap.clone(), upper: snap, multiplicity_count: mult });
    }
    let mult = mc.count_in(&lo, &hi);
    Ok(RootBracket { lower: lo, upper: hi, multiplicity_count: mult })
}

/// Re-run largest_root at a finer tolerance.
pub fn refine_largest_root(f: &RatPoly, tol: &BigRational) -> Result<RootBracket, PolyError> {
    largest_root(f, tol)
}

// ---------------------------------------------------------------------------
// Root isolation across several polynomials, with shared-root detection
// ---------------------------------------------------------------------------

/// One isolated root of the union of root sets: the half-open interval
/// (lo, hi] contains exactly one distinct real number that is a root of at
/// least one input; mult[i] is its multiplicity in input i.
#[derive(Debug, Clone)]
pub struct RootSlot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub mult: Vec<usize>,
}

/// Isolates the union of the real roots of the inputs into disjoint ordered
/// half-open intervals, each containing exactly one distinct root. Shared
/// roots land in the same slot, so slot indices give exact root comparisons.
pub fn isolate_union(polys: &[&RatPoly]) -> Vec<RootSlot> {
    let mut product = RatPoly::one();
    for p in polys {
        if let Some(d) = p.degree() {
            if d > 0 {
                product = product.mul(&p.squarefree_part());
            }
        }
    }
    if product.degree().map_or(true, |d| d == 0) {
        return vec![];
    }
    let sq = product.squarefree_part();
    let chain = SturmChain::new(&sq.to_int_primitive());
    let total = chain.count_all();
    if total == 0 {
        return vec![];
    }
    let bound = cauchy_bound(&sq);
    let two = ratio::rat_int(2);
    // Bisect (lo, hi] until each piece holds exactly one root.
    let mut stack = vec![(-bound.clone(), bound, total)];
    let mut slots: Vec<(BigRational, BigRational)> = vec![];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            slots.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        let left = chain.count_in(&lo, &mid);
        let right = count - left;
        // push right first so the stack pops left-to-right ascending
        stack.push((mid.clone(), hi, right));
        stack.push((lo, mid, left));
    }
    slots.sort_by(|a, b| a.0.cmp(&b.0));
    let counters: Vec<MultCounter> = polys.iter().map(|p| MultCounter::new(p)).collect();
    slots
        .into_iter()
        .map(|(lo, hi)| {
            let mult = counters.iter().map(|mc| mc.count_in(&lo, &hi)).collect();
            RootSlot { lo, hi, mult }
        })
        .collect()
}

/// Ascending slot indices of the roots of input `i`, with multiplicity.
fn root_sequence(slots: &[RootSlot], i: usize) -> Vec<usize> {
    let mut seq = vec![];
    for (s, slot) in slots.iter().enumerate() {
        for _ in 0..slot.mult[i] {
            seq.push(s);
        }
    }
    seq
}

/// Do f and g interlace? Requires both real-rooted and deg g = deg f - 1.
/// With ascending roots a_1..a_n of f and b_1..b_{n-1} of g, checks
/// a_i <= b_i <= a_{i+1} (root equality certified via shared isolation slots).
pub fn interlaces(g: &RatPoly, f: &RatPoly) -> Result<bool, PolyError> {
    let fd = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    let gd = g.degree().ok_or(PolyError::ZeroPolynomial)?;
    if gd + 1 != fd {
        return Err(PolyError::DegreeMismatch { f: fd, g: gd });
    }
    if !is_real_rooted(f) || !is_real_rooted(g) {
        return Err(PolyError::NotRealRooted);
    }
    let slots = isolate_union(&[f, g]);
    let a = root_sequence(&slots, 0);
    let b = root_sequence(&slots, 1);
    debug_assert_eq!(a.len(), fd);
    debug_assert_eq!(b.len(), gd);
    for i in 0..b.len() {
        if !(a[i] <= b[i] && b[i] <= a[i + 1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Common interlacing of a set of same-degree real-rooted polynomials with
/// same-sign leading coefficients, via the pairwise chain condition: for each
/// pair, with ascending roots a and b, a_j <= b_{j+1} and b_j <= a_{j+1}.
pub fn common_interlacing(fs: &[RatPoly]) -> Result<bool, PolyError> {
    if fs.is_empty() {
        return Ok(true);
    }
    let deg = fs[0].degree().ok_or(PolyError::ZeroPolynomial)?;
    let sign0 = fs[0].leading().unwrap().is_negative();
    for f in fs {
        let d = f.degree().ok_or(PolyError::ZeroPolynomial)?;
        if d != deg {
            return Err(PolyError::DegreeMismatch { f: deg, g: d });
        }
        if f.leading().unwrap().is_negative() != sign0 {
            return Err(PolyError::LeadingSignMismatch);
        }
        if !is_real_rooted(f) {
            return Err(PolyError::NotRealRooted);
        }
    }
    let refs: Vec<&RatPoly> = fs.iter().collect();
    let slots = isolate_union(&refs);
    let seqs: Vec<Vec<usize>> = (0..fs.len()).map(|i| root_sequence(&slots, i)).collect();
    for x in 0..fs.len() {
        for y in (x + 1)..fs.len() {
            let (a, b) = (&seqs[x], &seqs[y]);
            for j in 0..deg.saturating_sub(1) {
                if a[j] > b[j + 1] || b[j] > a[j + 1] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};

    fn poly(c: &[i64]) -> RatPoly {
        RatPoly::from_int_coeffs(c)
    }

    #[test]
    fn div_exact_examples() {
        // (x^2-1)^2 / (x^2-1) = x^2-1
        let f = poly(&[-1, 0, 1]);
        let f2 = f.mul(&f);
        assert_eq!(f2.div_exact(&f).unwrap(), f);
        // (x^4-5x^2+4) / (x^2-1) = x^2-4
        let q = poly(&[4, 0, -5, 0, 1]).div_exact(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(q, poly(&[-4, 0, 1]));
        // remainder nonzero
        assert!(matches!(
            poly(&[1, 0, 1]).div_exact(&poly(&[-1, 1])),
            Err(PolyError::NotDivisible)
        ));
    }

    #[test]
    fn real_rootedness_examples() {
        assert!(is_real_rooted(&poly(&[-2, 0, 1]))); // x^2 - 2
        assert!(!is_real_rooted(&poly(&[1, 0, 1]))); // x^2 + 1
        // ((x^2-4)^2 + (x^2-1)^2) / 2
        let a = poly(&[-4, 0, 1]);
        let b = poly(&[-1, 0, 1]);
        let mix = a.mul(&a).add(&b.mul(&b)).scale(&rat(1, 2));
        assert!(!is_real_rooted(&mix));
        // multiplicities count: (x-1)^2 real-rooted
        let sq = poly(&[-1, 1]).mul(&poly(&[-1, 1]));
        assert!(is_real_rooted(&sq));
    }

    #[test]
    fn largest_root_brackets() {
        let tol = ratio::pow2(-30);
        // x^2 - 3 -> sqrt(3)
        let b = largest_root(&poly(&[-3, 0, 1]), &tol).unwrap();
        assert!(&b.upper - &b.lower <= tol);
        assert!(&b.lower * &b.lower <= rat_int(3));
        assert!(&b.upper * &b.upper >= rat_int(3));
        assert_eq!(b.multiplicity_count, 1);
        // x^3 - 3x -> sqrt(3) again
        let b = largest_root(&poly(&[0, -3, 0, 1]), &tol).unwrap();
        assert!(&b.lower * &b.lower <= rat_int(3) && rat_int(3) <= &b.upper * &b.upper);
        // x - 5 -> exact [5, 5]
        let b = largest_root(&poly(&[-5, 1]), &tol).unwrap();
        assert_eq!(b.lower, rat_int(5));
        assert_eq!(b.upper, rat_int(5));
        assert_eq!(b.multiplicity_count, 1);
        // no real root
        assert!(matches!(largest_root(&poly(&[1, 0, 1]), &tol), Err(PolyError::NoRealRoot)));
        // bracket invariant: no roots above upper, >=1 in (lower, upper]
        let f = poly(&[-3, 0, 1]);
        let b = largest_root(&f, &tol).unwrap();
        assert_eq!(count_roots_above(&f, &b.upper), 0);
        assert!(MultCounter::new(&f).count_in(&b.lower, &b.upper) >= 1);
    }

    #[test]
    fn interlacing_examples() {
        let f = poly(&[-1, 0, 1]); // x^2 - 1
        let g = poly(&[0, 1]); // x
        assert!(interlaces(&g, &f).unwrap());
        // (x-1)(x-3) vs x-5: false
        let f = poly(&[3, -4, 1]);
        let g = poly(&[-5, 1]);
        assert!(!interlaces(&g, &f).unwrap());
        // f and f' interlace for real-rooted f (Rolle)
        let f = poly(&[-1, 1]).mul(&poly(&[-2, 1])).mul(&poly(&[5, 1]));
        assert!(interlaces(&f.derivative(), &f).unwrap());
        // shared roots: f = (x-1)(x+1), g = (x-1): chain -1 <= 1 <= 1 holds
        let f = poly(&[-1, 0, 1]);
        let g = poly(&[-1, 1]);
        assert!(interlaces(&g, &f).unwrap());
        // degree mismatch is an error
        assert!(interlaces(&poly(&[1, 0, 1]), &poly(&[0, 1])).is_err());
    }

    #[test]
    fn common_interlacing_examples() {
        let a = poly(&[-1, 0, 1]); // roots -1, 1
        let b = poly(&[-4, 0, 1]); // roots -2, 2
        assert!(common_interlacing(&[a.clone(), b]).unwrap());
        // disjoint pairs violate the chain
        let c = poly(&[2, -3, 1]); // (x-1)(x-2)
        let d = poly(&[12, -7, 1]); // (x-3)(x-4)
        assert!(!common_interlacing(&[c.clone(), d]).unwrap());
        // {f, f} trivially ok
        assert!(common_interlacing(&[c.clone(), c]).unwrap());
        // sign mismatch is an error
        assert!(common_interlacing(&[a, poly(&[4, 0, -1])]).is_err());
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)
        let f = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
        let parts = f.yun();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (poly(&[2, 1]).monic(), 1));
        assert_eq!(parts[1], (poly(&[-1, 1]).monic(), 2));
    }

    #[test]
    fn count_helpers() {
        let f = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[-3, 1]));
        // roots: 1 (x2), 3
        assert_eq!(count_roots_above(&f, &rat_int(0)), 3);
        assert_eq!(count_roots_above(&f, &rat_int(1)), 1);
        assert_eq!(count_roots_above(&f, &rat_int(3)), 0);
        assert_eq!(count_roots_below(&f, &rat_int(1)), 0);
        assert_eq!(count_roots_below(&f, &rat_int(2)), 2);
    }

    #[test]
    fn poly_json_roundtrip() {
        let f = RatPoly::from_coeffs(vec![rat(1, 3), rat_int(0), rat_int(-2), rat_int(1)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"coeffs":["1/3","0","-2","1"]}"#);
        let back: RatPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let from_ints: RatPoly = serde_json::from_str(r#"{"coeffs":[1,0,-2,1]}"#).unwrap();
        assert_eq!(from_ints, poly(&[1, 0, -2, 1]));
    }
}
