//! Truncated formal power series in `q` with big-integer coefficients.
//!
//! A series carries its truncation order `N` and stores coefficients of
//! `q^0 ..= q^N`. Binary operations refuse operands of different orders;
//! use [`IntSeries::truncate`] to bring them to a common order first.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(order: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Series with the given leading coefficients, padded with zeros (or cut) to `order`.
    pub fn from_coeffs<I, T>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    /// `Σ_{n ≤ N} qⁿ`.
    pub fn geometric(order: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::one(); order + 1],
        }
    }

    /// The monomial `c·q^k`, zero if `k > order`.
    pub fn monomial(order: usize, k: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c.into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `qⁿ`; `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-truncates to a lower (or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        IntSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntSeries { coeffs })
    }

    pub fn negate(&self) -> Self {
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; the divisor must have constant term ±1.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.check_order(divisor)?;
        let lead = &divisor.coeffs[0];
        if lead.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstant(lead.to_string()));
        }
        let negative = lead.is_negative();
        let support: Vec<usize> = (1..divisor.coeffs.len())
            .filter(|&k| !divisor.coeffs[k].is_zero())
            .collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for n in 0..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for &k in support.iter().take_while(|&&k| k <= n) {
                acc -= &divisor.coeffs[k] * &out[n - k];
            }
            out.push(if negative { -acc } else { acc });
        }
        Ok(IntSeries { coeffs: out })
    }

    /// `f(q) ↦ f(q^m)`, keeping the truncation order.
    pub fn substitute_power(&self, m: usize) -> Result<Self, SeriesError> {
        if m == 0 {
            return Err(SeriesError::ZeroPower);
        }
        let mut out = Self::zero(self.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            match k.checked_mul(m) {
                Some(e) if e <= self.order() => out.coeffs[e] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }

    /// The operator `q·d/dq`: coefficient `n` is multiplied by `n`.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * BigInt::from(n))
            .collect();
        IntSeries { coeffs }
    }

    /// Multiplies in place by `(1 - q^k)`.
    fn mul_one_minus_qk(&mut self, k: usize) {
        for n in (k..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            hi[0] -= &lo[n - k];
        }
    }

    /// Coefficients reduced into `0..m`.
    pub fn reduce_mod(&self, m: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.mod_floor(m)).collect()
    }

    /// Two-column CSV `n,coefficient` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coefficient\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{n},{c}");
        }
        out
    }
}

/// `(q^a; q^a)_∞^e`, truncated.
pub fn pochhammer_inf(a: usize, e: usize, order: usize) -> IntSeries {
    assert!(a >= 1 && e >= 1, "pochhammer_inf needs a, e ≥ 1");
    let mut s = IntSeries::one(order);
    for k in (a..=order).step_by(a) {
        for _ in 0..e {
            s.mul_one_minus_qk(k);
        }
    }
    s
}

/// Euler's product `(q; q)_∞`.
pub fn euler_product(order: usize) -> IntSeries {
    pochhammer_inf(1, 1, order)
}

/// σ₁(1), …, σ₁(N) by a divisor sieve; index 0 holds 0.
pub fn divisor_sums(order: usize) -> Vec<BigInt> {
    let mut sigma = vec![0u64; order + 1];
    for d in 1..=order {
        for m in (d..=order).step_by(d) {
            sigma[m] += d as u64;
        }
    }
    sigma.into_iter().map(BigInt::from).collect()
}

/// `G₂⁰(q) = Σ_{n≥1} σ₁(n) qⁿ`.
pub fn g2_zero(order: usize) -> IntSeries {
    IntSeries {
        coeffs: divisor_sums(order),
    }
}

/// `G₂⁰(q)` as the Lambert series `Σ_{n≥1} n qⁿ / (1 − qⁿ)`.
pub fn g2_zero_lambert(order: usize) -> IntSeries {
    let mut out = IntSeries::zero(order);
    for n in 1..=order {
        // n qⁿ/(1 − qⁿ) = n (qⁿ + q²ⁿ + …)
        for m in (n..=order).step_by(n) {
            out.coeffs[m] += n;
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    truncation_order: usize,
    coeffs: Vec<String>,
}

impl Serialize for IntSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            truncation_order: self.order(),
            coeffs: self.coeffs.iter().map(BigInt::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.truncation_order + 1 {
            return Err(D::Error::custom(SeriesError::Malformed(format!(
                "{} coefficients for truncation order {}",
                raw.coeffs.len(),
                raw.truncation_order
            ))));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<_, _>>()
            .map_err(|e| D::Error::custom(SeriesError::Malformed(e.to_string())))?;
        Ok(IntSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_partitions, partition_counts};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ring_identities() {
        let f = IntSeries::from_coeffs(6, [3, -1, 4, 1, -5, 9, 2]);
        assert_eq!(f.mul(&IntSeries::one(6)).unwrap(), f);
        assert_eq!(f.add(&f.negate()).unwrap(), IntSeries::zero(6));
        let one_minus_q = IntSeries::from_coeffs(12, [1, -1]);
        assert_eq!(
            one_minus_q.mul(&IntSeries::geometric(12)).unwrap(),
            IntSeries::one(12)
        );
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let a = IntSeries::one(4);
        let b = IntSeries::one(5);
        assert_eq!(a.add(&b), Err(SeriesError::OrderMismatch(4, 5)));
        assert_eq!(a.mul(&b), Err(SeriesError::OrderMismatch(4, 5)));
        assert_eq!(a.div(&b), Err(SeriesError::OrderMismatch(4, 5)));
        assert_eq!(a.add(&b.truncate(4)).unwrap().coeffs()[0], BigInt::from(2));
    }

    #[test]
    fn division() {
        let f = IntSeries::from_coeffs(5, [1, 2, 3]);
        assert_eq!(f.div(&IntSeries::one(5)).unwrap(), f);
        let two = IntSeries::from_coeffs(5, [2, 1]);
        assert!(matches!(f.div(&two), Err(SeriesError::NonUnitConstant(_))));
        let neg = IntSeries::from_coeffs(5, [-1, 1]);
        assert_eq!(f.div(&neg).unwrap().mul(&neg).unwrap(), f);
        let p = IntSeries::one(200).div(&euler_product(200)).unwrap();
        assert_eq!(p.coeffs(), partition_counts(200).as_slice());
    }

    #[test]
    fn substitution() {
        let f = IntSeries::from_coeffs(9, [1, 2, 3, 4]);
        assert_eq!(f.substitute_power(1).unwrap(), f);
        assert_eq!(
            IntSeries::monomial(9, 1, 1).substitute_power(3).unwrap(),
            IntSeries::monomial(9, 3, 1)
        );
        assert_eq!(
            g2_zero(10).substitute_power(2).unwrap().coeffs()[6],
            BigInt::from(4)
        );
        assert_eq!(f.substitute_power(0), Err(SeriesError::ZeroPower));
    }

    #[test]
    fn derivative() {
        assert!(IntSeries::one(8).q_derivative().is_zero());
        let d = IntSeries::geometric(8).q_derivative();
        assert_eq!(d.coeffs(), ints(&[0, 1, 2, 3, 4, 5, 6, 7, 8]).as_slice());
        let p = IntSeries::one(60).div(&euler_product(60)).unwrap();
        let counts = partition_counts(60);
        for (n, c) in p.q_derivative().coeffs().iter().enumerate() {
            assert_eq!(*c, &counts[n] * BigInt::from(n));
        }
    }

    #[test]
    fn pochhammer_products() {
        assert_eq!(
            euler_product(7).coeffs(),
            ints(&[1, -1, -1, 0, 0, 1, 0, 1]).as_slice()
        );
        // Pentagonal number theorem, checked to order 100.
        let e = euler_product(100);
        let mut expected = vec![0i64; 101];
        for k in 0i64.. {
            let g = (k * (3 * k - 1) / 2) as usize;
            if g > 100 {
                break;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            expected[g] = sign;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if k > 0 && g2 <= 100 {
                expected[g2] = sign;
            }
        }
        assert_eq!(e.coeffs(), ints(&expected).as_slice());
        let even = pochhammer_inf(2, 3, 30);
        assert!(even
            .coeffs()
            .iter()
            .enumerate()
            .all(|(n, c)| n % 2 == 0 || c.is_zero()));
        let inv = IntSeries::one(40).div(&euler_product(40)).unwrap();
        assert_eq!(euler_product(40).mul(&inv).unwrap(), IntSeries::one(40));
    }

    #[test]
    fn divisor_series() {
        let g = g2_zero(12);
        assert_eq!(&g.coeffs()[..7], ints(&[0, 1, 3, 4, 7, 6, 12]).as_slice());
        for prime in [2usize, 3, 5, 7, 11] {
            assert_eq!(g.coeffs()[prime], BigInt::from(prime + 1));
        }
        assert_eq!(g2_zero(300), g2_zero_lambert(300));
    }

    #[test]
    fn logarithmic_derivative_of_euler_product() {
        let n = 200;
        let e = euler_product(n);
        assert_eq!(e.q_derivative(), g2_zero(n).mul(&e).unwrap().negate());
        let lhs = g2_zero(n).div(&e).unwrap();
        let p = partition_counts(n);
        for (k, c) in lhs.coeffs().iter().enumerate() {
            assert_eq!(*c, BigInt::from(k) * &p[k]);
        }
    }

    #[test]
    fn regular_partition_products() {
        for m in [2usize, 3, 5] {
            let s = pochhammer_inf(m, 1, 25).div(&euler_product(25)).unwrap();
            for n in 0..=25 {
                let count = enumerate_partitions(n)
                    .filter(|l| l.parts().iter().all(|&p| p % m != 0))
                    .count();
                assert_eq!(s.coeffs()[n], BigInt::from(count), "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn json_and_csv() {
        let s = IntSeries::from_coeffs(2, [1, -2, 3]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"truncation_order":2,"coeffs":["1","-2","3"]}"#);
        assert_eq!(serde_json::from_str::<IntSeries>(&json).unwrap(), s);
        assert!(
            serde_json::from_str::<IntSeries>(r#"{"truncation_order":3,"coeffs":["1"]}"#).is_err()
        );
        assert_eq!(s.to_csv(), "n,coefficient\n0,1\n1,-2\n2,3\n");
    }

    fn series(order: usize) -> impl Strategy<Value = IntSeries> {
        prop::collection::vec(-50i64..50, order + 1)
            .prop_map(move |v| IntSeries::from_coeffs(order, v))
    }

    fn unit_series(order: usize) -> impl Strategy<Value = IntSeries> {
        (prop::bool::ANY, series(order)).prop_map(|(neg, mut s)| {
            s.coeffs[0] = BigInt::from(if neg { -1 } else { 1 });
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in series(8), b in series(8), c in series(8)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn division_round_trip(a in series(12), b in unit_series(12)) {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b).unwrap(), a);
        }

        #[test]
        fn json_round_trip(a in series(6)) {
            let back: IntSeries = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
