//! Exact arithmetic in the cyclotomic field Q(zeta_12).
//!
//! Elements are stored on the power basis 1, z, z^2, z^3 with z = e^{i pi/6}
//! and the reduction z^4 = z^2 - 1 (the 12th cyclotomic polynomial is
//! x^4 - x^2 + 1). The field contains i = z^3, zeta_6 = z^2, zeta_3 = z^2 - 1
//! and zeta_2 = -1, so every root of unity of order 1, 2, 3, 4, 6 (and 12) is
//! exact here. Entries of twisted adjacency matrices live in the subring of
//! integer combinations.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Scalar trait for the coefficient ring of a `Cyclo` value.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn to_f64(&self) -> f64;
}

impl Scalar for BigInt {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// An element c0 + c1 z + c2 z^2 + c3 z^3 of Q(zeta_12).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo<T> {
    pub c: [T; 4],
}

impl<T: Scalar> Cyclo<T> {
    pub fn zero() -> Self {
        Cyclo { c: [T::zero(), T::zero(), T::zero(), T::zero()] }
    }

    pub fn one() -> Self {
        Cyclo { c: [T::one(), T::zero(), T::zero(), T::zero()] }
    }

    pub fn from_scalar(t: T) -> Self {
        Cyclo { c: [t, T::zero(), T::zero(), T::zero()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// z^k for any integer k (reduced mod 12).
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        let (idx, neg) = if k < 4 {
            (k, false)
        } else if k < 6 {
            // z^4 = z^2 - 1, z^5 = z^3 - z
            return match k {
                4 => Cyclo { c: [-T::one(), T::zero(), T::one(), T::zero()] },
                _ => Cyclo { c: [T::zero(), -T::one(), T::zero(), T::one()] },
            };
        } else if k < 10 {
            (k - 6, true) // z^6 = -1
        } else {
            // z^10 = -z^4 = 1 - z^2, z^11 = -z^5 = z - z^3
            return match k {
                10 => Cyclo { c: [T::one(), T::zero(), -T::one(), T::zero()] },
                _ => Cyclo { c: [T::zero(), T::one(), T::zero(), -T::one()] },
            };
        };
        let mut c = [T::zero(), T::zero(), T::zero(), T::zero()];
        c[idx] = if neg { -T::one() } else { T::one() };
        Cyclo { c }
    }

    /// zeta_m^k as an element of Q(zeta_12). Requires m | 12.
    pub fn root_of_unity(m: u32, k: i64) -> Option<Self> {
        if m == 0 || 12 % m != 0 {
            return None;
        }
        Some(Self::zeta_pow((12 / m as i64) * k))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.c.clone();
        for i in 0..4 {
            c[i] = c[i].clone() + &o.c[i];
        }
        Cyclo { c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut c = self.c.clone();
        for i in 0..4 {
            c[i] = c[i].clone() - &o.c[i];
        }
        Cyclo { c }
    }

    pub fn neg(&self) -> Self {
        Cyclo { c: [-self.c[0].clone(), -self.c[1].clone(), -self.c[2].clone(), -self.c[3].clone()] }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // Convolution up to degree 6, then reduce with z^4 = z^2 - 1,
        // z^5 = z^3 - z, z^6 = -1.
        let mut raw = [
            T::zero(), T::zero(), T::zero(), T::zero(),
            T::zero(), T::zero(), T::zero(),
        ];
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if o.c[j].is_zero() {
                    continue;
                }
                let p = self.c[i].clone() * &o.c[j];
                raw[i + j] = raw[i + j].clone() + &p;
            }
        }
        let [r0, r1, r2, r3, r4, r5, r6] = raw;
        Cyclo {
            c: [
                r0 - &r4 - &r6,
                r1 - &r5,
                r2 + &r4,
                r3 + &r5,
            ],
        }
    }

    /// Galois action z -> z^k for k coprime to 12 (k in {1, 5, 7, 11}).
    pub fn galois(&self, k: i64) -> Self {
        let mut acc = Self::from_scalar(self.c[0].clone());
        for i in 1..4 {
            if self.c[i].is_zero() {
                continue;
            }
            let term = Self::zeta_pow(k * i as i64).scale(&self.c[i]);
            acc = acc.add(&term);
        }
        acc
    }

    fn scale(&self, t: &T) -> Self {
        Cyclo {
            c: [
                self.c[0].clone() * t,
                self.c[1].clone() * t,
                self.c[2].clone() * t,
                self.c[3].clone() * t,
            ],
        }
    }

    /// Complex conjugate (z -> z^11).
    pub fn conj(&self) -> Self {
        self.galois(11)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn as_rational(&self) -> Option<&T> {
        if self.is_rational() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for i in 0..4 {
            acc += pw * self.c[i].to_f64();
            pw *= z;
        }
        acc
    }
}

impl Cyclo<BigRational> {
    /// Multiplicative inverse via the product of Galois conjugates:
    /// a^-1 = s5(a) s7(a) s11(a) / N(a) with rational norm N.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let prod = self.galois(5).mul(&self.galois(7)).mul(&self.galois(11));
        let norm = self.mul(&prod);
        let n = norm.as_rational()?.clone();
        if n.is_zero() {
            return None;
        }
        let inv_n = BigRational::one() / n;
        Some(prod.scale(&inv_n))
    }

    pub fn from_int_cyclo(c: &Cyclo<BigInt>) -> Self {
        Cyclo {
            c: [
                BigRational::from_integer(c.c[0].clone()),
                BigRational::from_integer(c.c[1].clone()),
                BigRational::from_integer(c.c[2].clone()),
                BigRational::from_integer(c.c[3].clone()),
            ],
        }
    }
}

impl<T: Scalar + fmt::Debug> fmt::Debug for Cyclo<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}z + {:?}z^2 + {:?}z^3)", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

/// Is every component's absolute value bounded by `bound`? (Overflow guard.)
pub fn int_cyclo_small(c: &Cyclo<BigInt>, bound: i64) -> bool {
    let b = BigInt::from(bound);
    c.c.iter().all(|x| x.abs() <= b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn zi(k: i64) -> Cyclo<BigInt> {
        Cyclo::zeta_pow(k)
    }

    #[test]
    fn zeta_powers_multiply() {
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(zi(a).mul(&zi(b)), zi(a + b), "z^{} * z^{}", a, b);
            }
        }
        assert_eq!(zi(6), Cyclo::from_scalar(BigInt::from(-1)));
    }

    #[test]
    fn conjugation_and_realness() {
        for a in 0..12 {
            assert_eq!(zi(a).conj(), zi(-a));
            assert!(zi(a).mul(&zi(a).conj()) == Cyclo::one());
        }
        // zeta_3 + conj(zeta_3) = -1
        let z3: Cyclo<BigInt> = Cyclo::root_of_unity(3, 1).unwrap();
        let s = z3.add(&z3.conj());
        assert_eq!(s.as_rational(), Some(&BigInt::from(-1)));
    }

    #[test]
    fn rational_inverse() {
        let x = Cyclo::<BigRational> {
            c: [
                BigRational::from_integer(2.into()),
                BigRational::from_integer(1.into()),
                BigRational::from_integer((-3).into()),
                BigRational::from_integer(5.into()),
            ],
        };
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), Cyclo::one());
        let z: Cyclo<BigRational> = Cyclo::zero();
        assert!(z.inv().is_none());
    }

    #[test]
    fn complex_embedding_consistent() {
        let z4: Cyclo<BigInt> = Cyclo::root_of_unity(4, 1).unwrap();
        let c = z4.to_complex64();
        assert!((c.re).abs() < 1e-12 && (c.im - 1.0).abs() < 1e-12);
        assert!(Cyclo::<BigInt>::root_of_unity(5, 1).is_none());
    }
}
