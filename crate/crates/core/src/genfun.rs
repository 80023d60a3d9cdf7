//! Generating functions of tower statistics, built two ways.
//!
//! Each `*_closed` builder assembles a series from q-series primitives; each
//! `*_brute` builder sums a statistic over every partition of every `n ≤ N`.
//! The `check_*` functions compare the two, or test a congruence or recursion
//! on the closed form, and return a [`VerificationReport`].
//!
//! Brute-force builders evaluate the sizes `0..=N` on the current rayon pool.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, partition_counts, Partition};
use crate::series::{euler_product, g2_zero, pochhammer_inf, IntSeries};
use crate::tower::{defect, is_generalized_core, row_size, Modulus};

fn pow_checked(t: Modulus, exp: usize) -> Result<usize> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| t.get().checked_pow(e))
        .ok_or(Error::ExponentOverflow {
            base: t.get(),
            exp: exp as u32,
        })
}

fn big_pow(t: Modulus, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(t.get()), exp)
}

/// `G₂⁰(q^m)` truncated at `order`.
fn g2_at_power(m: usize, order: usize) -> IntSeries {
    g2_zero(order)
        .substitute_power(m)
        .expect("power is positive")
}

/// `T_{j,t}(q) = (tʲ G₂⁰(q^{tʲ}) − t^{j+2} G₂⁰(q^{t^{j+1}})) / (q)_∞`.
pub fn t_closed(j: usize, t: Modulus, order: usize) -> Result<IntSeries> {
    let inner = pow_checked(t, j)?;
    let outer = pow_checked(t, j + 1)?;
    let numerator = g2_at_power(inner, order)
        .scale(&big_pow(t, j))
        .sub(&g2_at_power(outer, order).scale(&big_pow(t, j + 2)))?;
    Ok(numerator.div(&euler_product(order))?)
}

/// Coefficient `n` is `Σ_{λ ⊢ n} f(λ)`.
fn brute_series<F>(order: usize, f: F) -> IntSeries
where
    F: Fn(&Partition) -> usize + Sync,
{
    let sums: Vec<usize> = (0..=order)
        .into_par_iter()
        .map(|n| enumerate_partitions(n).map(|l| f(&l)).sum())
        .collect();
    IntSeries::from_coeffs(order, sums)
}

/// `Σ_λ |β_j(t; λ)| q^{|λ|}` by enumeration.
pub fn t_brute(j: usize, t: Modulus, order: usize) -> IntSeries {
    brute_series(order, |l| row_size(l, t, j))
}

/// `D_t(q) = Σ_{j≥1} tʲ G₂⁰(q^{tʲ}) / (q)_∞`.
///
/// Terms with `tʲ > N` vanish below `q^{N+1}`, so the sum stops there.
pub fn d_closed(t: Modulus, order: usize) -> IntSeries {
    let mut numerator = IntSeries::zero(order);
    let mut power = t.get();
    let mut j = 1;
    while power <= order {
        numerator = numerator
            .add(&g2_at_power(power, order).scale(&big_pow(t, j)))
            .expect("same order");
        power = match power.checked_mul(t.get()) {
            Some(p) => p,
            None => break,
        };
        j += 1;
    }
    numerator
        .div(&euler_product(order))
        .expect("unit denominator")
}

/// `Σ_λ d_t(λ) q^{|λ|}` by enumeration.
pub fn d_brute(t: Modulus, order: usize) -> IntSeries {
    brute_series(order, |l| defect(l, t))
}

/// `Σ c_{j,t}(n) qⁿ = (q^{t^{j+1}}; q^{t^{j+1}})_∞^{t^{j+1}} / (q)_∞`.
pub fn gen_core_closed(j: usize, t: Modulus, order: usize) -> Result<IntSeries> {
    let e = pow_checked(t, j + 1)?;
    Ok(pochhammer_inf(e, e, order).div(&euler_product(order))?)
}

/// Number of generalized (j,t)-cores of each size, by enumeration.
pub fn gen_core_brute(j: usize, t: Modulus, order: usize) -> IntSeries {
    brute_series(order, |l| usize::from(is_generalized_core(l, j, t)))
}

/// a_t(0), …, a_t(N): total size of the t-cores of all partitions of n.
pub fn a_t(t: Modulus, order: usize) -> Vec<BigInt> {
    t_closed(0, t, order).expect("t^1 fits").into_coeffs()
}

/// p_t(0), …, p_t(N): partitions with no part divisible by t, from the product
/// `(q^t; q^t)_∞ / (q)_∞`.
pub fn regular_partition_counts(t: Modulus, order: usize) -> Vec<BigInt> {
    pochhammer_inf(t.get(), 1, order)
        .div(&euler_product(order))
        .expect("unit denominator")
        .into_coeffs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// First index at which the two compared sequences disagree.
///
/// For identities, `closed_value` is the closed-form coefficient and
/// `brute_value` the independently computed one. Congruence reports hold the
/// two residues; monotonicity reports hold the offending coefficient and the
/// one before it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    #[serde(serialize_with = "decimal")]
    pub closed_value: BigInt,
    #[serde(serialize_with = "decimal")]
    pub brute_value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity_name: String,
    pub t: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub order_checked: usize,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
}

impl VerificationReport {
    fn new(
        name: &str,
        t: Modulus,
        j: Option<usize>,
        order: usize,
        mismatch: Option<Mismatch>,
    ) -> Self {
        VerificationReport {
            identity_name: name.to_string(),
            t: t.get(),
            j,
            order_checked: order,
            status: if mismatch.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            first_mismatch: mismatch,
        }
    }

    /// Coefficientwise equality of two sequences over `0..=order`.
    pub fn compare(
        name: &str,
        t: Modulus,
        j: Option<usize>,
        order: usize,
        closed: &[BigInt],
        brute: &[BigInt],
    ) -> Self {
        let mismatch = (0..=order).find_map(|n| {
            let c = closed.get(n).cloned().unwrap_or_default();
            let b = brute.get(n).cloned().unwrap_or_default();
            (c != b).then_some(Mismatch {
                n,
                closed_value: c,
                brute_value: b,
            })
        });
        Self::new(name, t, j, order, mismatch)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn check_t_identity(j: usize, t: Modulus, order: usize) -> Result<VerificationReport> {
    let closed = t_closed(j, t, order)?;
    let brute = t_brute(j, t, order);
    Ok(VerificationReport::compare(
        "T",
        t,
        Some(j),
        order,
        closed.coeffs(),
        brute.coeffs(),
    ))
}

pub fn check_defect_identity(t: Modulus, order: usize) -> VerificationReport {
    let closed = d_closed(t, order);
    let brute = d_brute(t, order);
    VerificationReport::compare("D", t, None, order, closed.coeffs(), brute.coeffs())
}

pub fn check_gen_core_identity(j: usize, t: Modulus, order: usize) -> Result<VerificationReport> {
    let closed = gen_core_closed(j, t, order)?;
    let brute = gen_core_brute(j, t, order);
    Ok(VerificationReport::compare(
        "cores",
        t,
        Some(j),
        order,
        closed.coeffs(),
        brute.coeffs(),
    ))
}

/// `Σ_{k≤j} t^k T_{k,t}(q)` against `(G₂⁰(q) − t^{2j+2} G₂⁰(q^{t^{j+1}})) / (q)_∞`.
pub fn check_telescoping(j: usize, t: Modulus, order: usize) -> Result<VerificationReport> {
    let mut lhs = IntSeries::zero(order);
    for k in 0..=j {
        lhs = lhs.add(&t_closed(k, t, order)?.scale(&big_pow(t, k)))?;
    }
    let rhs = g2_zero(order)
        .sub(&g2_at_power(pow_checked(t, j + 1)?, order).scale(&big_pow(t, 2 * j + 2)))?
        .div(&euler_product(order))?;
    Ok(VerificationReport::compare(
        "telescoping",
        t,
        Some(j),
        order,
        lhs.coeffs(),
        rhs.coeffs(),
    ))
}

/// `a_t(n) ≡ n·p(n) (mod t²)` for `n ≤ N`.
pub fn check_congruence_np(t: Modulus, order: usize) -> VerificationReport {
    let modulus = big_pow(t, 2);
    let a = t_closed(0, t, order)
        .expect("t^1 fits")
        .reduce_mod(&modulus);
    let p = partition_counts(order);
    let np: Vec<BigInt> = p
        .iter()
        .enumerate()
        .map(|(n, pn)| (BigInt::from(n) * pn) % &modulus)
        .map(|r| if r.is_negative() { r + &modulus } else { r })
        .collect();
    VerificationReport::compare(
        "congruence a_t(n) = n p(n) mod t^2",
        t,
        None,
        order,
        &a,
        &np,
    )
}

/// `a_t(tn) ≡ 0 (mod t²)` for `n ≤ N`; mismatches report the index `tn`.
pub fn check_congruence_multiple(t: Modulus, order: usize) -> VerificationReport {
    let modulus = big_pow(t, 2);
    let top = order * t.get();
    let a = t_closed(0, t, top).expect("t^1 fits").reduce_mod(&modulus);
    let mismatch = (0..=order).map(|n| n * t.get()).find_map(|m| {
        (!a[m].is_zero()).then(|| Mismatch {
            n: m,
            closed_value: a[m].clone(),
            brute_value: BigInt::zero(),
        })
    });
    VerificationReport::new("congruence a_t(tn) = 0 mod t^2", t, None, order, mismatch)
}

/// Both congruences; the report carries the first failure found, if any.
pub fn check_congruence(t: Modulus, order: usize) -> VerificationReport {
    let np = check_congruence_np(t, order);
    let multiple = check_congruence_multiple(t, order);
    let mismatch = np.first_mismatch.or(multiple.first_mismatch);
    VerificationReport::new("congruence", t, None, order, mismatch)
}

/// Enumeration ceiling for the regular-partition cross-check.
pub const REGULAR_ENUMERATION_CEILING: usize = 25;

/// `a_t(n) = n p(n) − t Σ_{t | j ≤ n} j p(j/t) p_t(n − j)` for `n ≤ N`,
/// with `p_t` read from a product and cross-checked by enumeration.
pub fn check_recursion(t: Modulus, order: usize) -> VerificationReport {
    let tv = t.get();
    let pt = regular_partition_counts(t, order);
    let enum_top = order.min(REGULAR_ENUMERATION_CEILING);
    let enumerated: Vec<BigInt> = (0..=enum_top)
        .map(|n| {
            let c = enumerate_partitions(n)
                .filter(|l| l.parts().iter().all(|&part| part % tv != 0))
                .count();
            BigInt::from(c)
        })
        .collect();
    let cross =
        VerificationReport::compare("regular partitions", t, None, enum_top, &pt, &enumerated);
    if !cross.passed() {
        return cross;
    }

    let a = a_t(t, order);
    let p = partition_counts(order);
    let rhs: Vec<BigInt> = (0..=order)
        .map(|n| {
            let sum: BigInt = (tv..=n)
                .step_by(tv)
                .map(|j| BigInt::from(j) * &p[j / tv] * &pt[n - j])
                .sum();
            BigInt::from(n) * &p[n] - BigInt::from(tv) * sum
        })
        .collect();
    VerificationReport::compare("recursion", t, None, order, &a, &rhs)
}

/// Coefficients of `D_t` are nonnegative and weakly increasing from `n = 1`.
pub fn monotonicity_check(t: Modulus, order: usize) -> VerificationReport {
    let d = d_closed(t, order);
    let c = d.coeffs();
    let mismatch = (0..=order).find_map(|n| {
        if c[n].is_negative() {
            return Some(Mismatch {
                n,
                closed_value: c[n].clone(),
                brute_value: BigInt::zero(),
            });
        }
        (n >= 2 && c[n] < c[n - 1]).then(|| Mismatch {
            n,
            closed_value: c[n].clone(),
            brute_value: c[n - 1].clone(),
        })
    });
    VerificationReport::new("monotone", t, None, order, mismatch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: usize) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn t_series_small_coefficients() {
        let closed = t_closed(0, t(2), 4).unwrap();
        assert_eq!(&closed.coeffs()[..4], ints(&[0, 1, 0, 5]).as_slice());
        let brute = t_brute(0, t(2), 4);
        assert_eq!(closed, brute);
        assert_eq!(brute.coeffs()[4], BigInt::from(0));
        assert!(t_brute(1, t(3), 0).is_zero());
        for tv in 2..=9 {
            let s = t_closed(0, t(tv), 5).unwrap();
            assert_eq!(s.coeffs()[0], BigInt::from(0));
            assert_eq!(s.coeffs()[1], BigInt::from(1));
            assert_eq!(t_closed(3, t(tv), 5).unwrap().coeffs()[0], BigInt::from(0));
        }
    }

    #[test]
    fn exponent_overflow_is_reported() {
        assert!(matches!(
            t_closed(70, t(2), 5),
            Err(Error::ExponentOverflow { .. })
        ));
        assert!(matches!(
            gen_core_closed(70, t(3), 5),
            Err(Error::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn defect_series_small_coefficients() {
        for tv in 2..=6 {
            let d = d_closed(t(tv), 3);
            assert!(d.coeffs()[0].is_zero() && d.coeffs()[1].is_zero());
            assert!(d_brute(t(tv), 0).is_zero());
        }
        assert_eq!(d_closed(t(2), 2).coeffs()[2], BigInt::from(2));
        assert_eq!(d_brute(t(2), 2).coeffs()[2], BigInt::from(2));
        // Every partition of 3 has a 3-hook at (1,1): core ∅, one quotient cell, defect 1.
        assert_eq!(d_brute(t(3), 3).coeffs()[3], BigInt::from(3));
        assert_eq!(d_closed(t(3), 3).coeffs()[3], BigInt::from(3));
    }

    #[test]
    fn two_cores_sit_on_triangular_numbers() {
        let brute = gen_core_brute(0, t(2), 6);
        assert_eq!(brute.coeffs(), ints(&[1, 1, 0, 1, 0, 0, 1]).as_slice());
        let closed = gen_core_closed(0, t(2), 60).unwrap();
        for (n, c) in closed.coeffs().iter().enumerate() {
            let triangular = (0..=n).any(|k| k * (k + 1) / 2 == n);
            assert_eq!(*c, BigInt::from(u8::from(triangular)), "n = {n}");
        }
        let by_hooks: Vec<BigInt> = (0..=4)
            .map(|n| {
                BigInt::from(
                    enumerate_partitions(n)
                        .filter(|l| l.is_core_by_hooks(3))
                        .count(),
                )
            })
            .collect();
        assert_eq!(gen_core_brute(0, t(3), 4).coeffs(), by_hooks.as_slice());
        assert!(gen_core_brute(2, t(2), 0).coeffs()[0] == BigInt::from(1));
        assert_eq!(
            check_gen_core_identity(1, t(2), 10).unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn a_t_small_values() {
        let a = a_t(t(2), 4);
        assert_eq!(a, ints(&[0, 1, 0, 5, 0]));
        let brute4: usize = enumerate_partitions(4).map(|l| row_size(&l, t(2), 0)).sum();
        assert_eq!(a[4], BigInt::from(brute4));
    }

    #[test]
    fn congruence_witnesses() {
        // a_2(3) = 5 and 3 p(3) = 9 agree mod 4.
        let r = check_congruence_np(t(2), 3);
        assert!(r.passed());
        // a_2(6) = 6: only (3,2,1) has a nonempty 2-core among partitions of 6.
        assert_eq!(a_t(t(2), 6)[6], BigInt::from(6));
        let m = check_congruence_multiple(t(2), 5);
        assert_eq!(
            m.first_mismatch,
            Some(Mismatch {
                n: 6,
                closed_value: BigInt::from(2),
                brute_value: BigInt::from(0)
            })
        );
    }

    #[test]
    fn recursion_witness() {
        assert_eq!(regular_partition_counts(t(2), 1)[1], BigInt::from(1));
        let r = check_recursion(t(2), 3);
        assert!(r.passed());
        let r0 = check_recursion(t(5), 0);
        assert!(r0.passed());
    }

    #[test]
    fn monotone_boundary() {
        let r = monotonicity_check(t(2), 30);
        assert!(r.passed());
        let d = d_closed(t(7), 10);
        assert!(d.coeffs()[1] <= d.coeffs()[2]);
    }

    #[test]
    fn telescoping_small() {
        for tv in [2, 3] {
            for j in 0..=2 {
                assert!(check_telescoping(j, t(tv), 40).unwrap().passed());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = VerificationReport::compare("T", t(2), Some(0), 1, &ints(&[0, 1]), &ints(&[0, 2]));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["first_mismatch"]["n"], 1);
        assert_eq!(v["first_mismatch"]["closed_value"], "1");
        assert_eq!(v["first_mismatch"]["brute_value"], "2");
        let ok = VerificationReport::compare("T", t(2), None, 1, &ints(&[0, 1]), &ints(&[0, 1]));
        assert!(ok.passed() && ok.first_mismatch.is_none());
    }
}
