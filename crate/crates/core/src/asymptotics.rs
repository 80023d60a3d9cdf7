//! High-precision evaluation of the asymptotic statements.
//!
//! Everything here is floating point, carried at a configurable number of
//! decimal digits. Exact inputs (p(n), coefficients of `D_t`) come from
//! [`crate::partition`] and [`crate::genfun`] and are only converted to floats
//! at the point of comparison.

use std::fmt::Write as _;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::genfun::d_closed;
use crate::partition::partition_counts;
use crate::tower::Modulus;

pub const DEFAULT_DIGITS: usize = 50;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision plus the constants cache the transcendental functions need.
pub struct Real {
    bits: usize,
    digits: usize,
    cc: Consts,
}

impl Real {
    pub fn with_digits(digits: usize) -> Self {
        // log2(10) ≈ 3.3219; 64 guard bits absorb cancellation in the residuals.
        let bits = (digits as f64 * 3.322).ceil() as usize + 64;
        Real {
            bits,
            digits,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    fn int(&self, x: u64) -> BigFloat {
        BigFloat::from_u64(x, self.bits)
    }

    fn big(&mut self, x: &BigInt) -> BigFloat {
        BigFloat::parse(&x.to_string(), Radix::Dec, self.bits, RM, &mut self.cc)
    }

    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.cc)
    }

    fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.cc)
    }

    fn pow(&mut self, a: &BigFloat, e: &BigFloat) -> BigFloat {
        a.pow(e, self.bits, RM, &mut self.cc)
    }

    fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, RM)
    }

    /// `10^{-digits}`.
    fn epsilon(&mut self) -> BigFloat {
        let ten = self.int(10);
        let e = self.num(-(self.digits as f64));
        self.pow(&ten, &e)
    }

    fn to_f64(&self, a: &BigFloat) -> f64 {
        to_f64(a)
    }
}

fn to_f64(a: &BigFloat) -> f64 {
    a.to_string().parse().unwrap_or(f64::NAN)
}

fn is_below(a: &BigFloat, b: &BigFloat) -> bool {
    a.abs().cmp(&b.abs()).is_some_and(|c| c < 0)
}

/// Coefficient asymptotic from a growth rate `f(e^{-ε}) ~ ℓ ε^α e^{A/ε}`:
/// `ℓ A^{α/2+1/4} / (2√π n^{α/2+3/4}) · e^{2√(An)}`.
pub fn ingham_predict(a: f64, alpha: f64, ell: f64, n: u64, digits: usize) -> f64 {
    let mut r = Real::with_digits(digits);
    let (a, alpha, ell) = (r.num(a), r.num(alpha), r.num(ell));
    let v = ingham_predict_big(&mut r, &a, &alpha, &ell, n);
    r.to_f64(&v)
}

fn ingham_predict_big(
    r: &mut Real,
    a: &BigFloat,
    alpha: &BigFloat,
    ell: &BigFloat,
    n: u64,
) -> BigFloat {
    let nn = r.int(n);
    let half_alpha = r.div(alpha, &r.int(2));
    let e1 = r.add(&half_alpha, &r.num(0.25));
    let e2 = r.add(&half_alpha, &r.num(0.75));
    let a_pow = r.pow(a, &e1);
    let n_pow = r.pow(&nn, &e2);
    let pi = r.pi();
    let denom = r.mul(&r.mul(&r.int(2), &r.sqrt(&pi)), &n_pow);
    let an = r.mul(a, &nn);
    let growth_arg = r.mul(&r.int(2), &r.sqrt(&an));
    let growth = r.exp(&growth_arg);
    r.mul(&r.div(&r.mul(ell, &a_pow), &denom), &growth)
}

/// Growth parameters of `1/(q)_∞` near `q = 1`: `A = π²/6`, `α = 1/2`, `ℓ = 1/√(2π)`.
fn partition_parameters(r: &mut Real) -> (BigFloat, BigFloat, BigFloat) {
    let pi = r.pi();
    let a = r.div(&r.mul(&pi, &pi), &r.int(6));
    let alpha = r.num(0.5);
    let ell = r.div(&r.int(1), &r.sqrt(&r.mul(&r.int(2), &pi)));
    (a, alpha, ell)
}

/// The general coefficient asymptotic specialized to the partition function.
pub fn partition_predict(n: u64, digits: usize) -> f64 {
    let mut r = Real::with_digits(digits);
    let (a, alpha, ell) = partition_parameters(&mut r);
    let v = ingham_predict_big(&mut r, &a, &alpha, &ell, n);
    r.to_f64(&v)
}

/// `e^{π√(2n/3)} / (4n√3)`.
pub fn hardy_ramanujan(n: u64, digits: usize) -> f64 {
    let mut r = Real::with_digits(digits);
    let v = hardy_ramanujan_big(&mut r, n);
    r.to_f64(&v)
}

fn hardy_ramanujan_big(r: &mut Real, n: u64) -> BigFloat {
    let nn = r.int(n);
    let pi = r.pi();
    let inner = r.sqrt(&r.div(&r.mul(&r.int(2), &nn), &r.int(3)));
    let growth = r.exp(&r.mul(&pi, &inner));
    let denom = r.mul(&r.mul(&r.int(4), &nn), &r.sqrt(&r.int(3)));
    r.div(&growth, &denom)
}

/// The two leading-order forms of `Σ_{λ⊢n} d_t(λ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DefectPrediction {
    /// `√3 / (12(t−1)) · e^{π√(2n/3)}`.
    pub main_term: f64,
    /// `n p(n) / (t−1)` with exact `p(n)`.
    pub np_over_t1: f64,
}

pub fn defect_predict(t: Modulus, n: u64, digits: usize) -> DefectPrediction {
    let mut r = Real::with_digits(digits);
    let p = partition_counts(n as usize).pop().expect("nonempty");
    let (main, np) = defect_predict_big(&mut r, t, n, &p);
    DefectPrediction {
        main_term: r.to_f64(&main),
        np_over_t1: r.to_f64(&np),
    }
}

fn defect_predict_big(r: &mut Real, t: Modulus, n: u64, p_n: &BigInt) -> (BigFloat, BigFloat) {
    let t1 = r.int(t.get() as u64 - 1);
    let nn = r.int(n);
    let pi = r.pi();
    let inner = r.sqrt(&r.div(&r.mul(&r.int(2), &nn), &r.int(3)));
    let growth = r.exp(&r.mul(&pi, &inner));
    let coeff = r.div(&r.sqrt(&r.int(3)), &r.mul(&r.int(12), &t1));
    let main = r.mul(&coeff, &growth);
    let pn = r.big(p_n);
    let np = r.div(&r.mul(&nn, &pn), &t1);
    (main, np)
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One row of the average-defect comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticSample {
    pub n: usize,
    /// `Σ_{λ⊢n} d_t(λ)`, read verbatim from the exact series.
    #[serde(serialize_with = "decimal")]
    pub exact_value: BigInt,
    pub predicted_main_term: f64,
    pub predicted_np_over_t1: f64,
    /// `exact / (n p(n)/(t−1))`, i.e. the average defect divided by `n/(t−1)`.
    pub ratio: f64,
}

/// Exact defect totals at each `n` in `samples`, beside both predictions.
pub fn defect_samples(t: Modulus, samples: &[usize], digits: usize) -> Vec<AsymptoticSample> {
    let top = samples.iter().copied().max().unwrap_or(0);
    let d = d_closed(t, top);
    let p = partition_counts(top);
    let mut r = Real::with_digits(digits);
    samples
        .iter()
        .map(|&n| {
            let exact = d.coeffs()[n].clone();
            let (main, np) = defect_predict_big(&mut r, t, n as u64, &p[n]);
            let ratio = if n == 0 {
                f64::NAN
            } else {
                let e = r.big(&exact);
                r.to_f64(&r.div(&e, &np))
            };
            AsymptoticSample {
                n,
                exact_value: exact,
                predicted_main_term: r.to_f64(&main),
                predicted_np_over_t1: r.to_f64(&np),
                ratio,
            }
        })
        .collect()
}

/// CSV with columns `n,exact,predicted_main_term,predicted_np_over_t1,ratio`.
pub fn samples_to_csv(samples: &[AsymptoticSample]) -> String {
    let mut out = String::from("n,exact,predicted_main_term,predicted_np_over_t1,ratio\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{:e},{:e},{}",
            s.n, s.exact_value, s.predicted_main_term, s.predicted_np_over_t1, s.ratio
        );
    }
    out
}

/// `G₂⁰(q^m)` at `q = e^{-ε}` by direct Lambert summation `Σ n x^n/(1 − x^n)`,
/// `x = e^{-mε}`, stopping once a term drops below `10^{-digits}` of the total.
fn g2_direct(r: &mut Real, m: u64, eps: &BigFloat) -> BigFloat {
    let me = r.mul(&r.int(m), eps);
    let x = r.exp(&me.neg());
    let one = r.int(1);
    let tol = r.epsilon();
    let mut total = r.int(0);
    let mut xn = one.clone();
    for n in 1u64.. {
        xn = r.mul(&xn, &x);
        let term = r.div(&r.mul(&r.int(n), &xn), &r.sub(&one, &xn));
        total = r.add(&total, &term);
        if n > 1 && is_below(&term, &r.mul(&total, &tol)) {
            break;
        }
    }
    total
}

/// `Σ_{n≥1} σ₁(n) y^n`, summed until terms drop below `10^{-digits}`.
fn divisor_sum_at(r: &mut Real, y: &BigFloat) -> BigFloat {
    let tol = r.epsilon();
    let mut total = r.int(0);
    let mut yn = r.int(1);
    let mut n = 1u64;
    loop {
        yn = r.mul(&yn, y);
        let sigma: u64 = (1..=n).filter(|d| n.is_multiple_of(*d)).sum();
        let term = r.mul(&r.int(sigma), &yn);
        total = r.add(&total, &term);
        if is_below(&term, &tol) || n > 1_000_000 {
            break;
        }
        n += 1;
    }
    total
}

/// Right side of the inversion formula for `G₂⁰(q^m)` at `q = e^{-ε}`:
/// `1/24 + π²/(6m²ε²)·(1 − 24 Σ σ₁(n) e^{-4π²n/(εm)}) − 1/(2mε)`.
fn g2_transformed(r: &mut Real, m: u64, eps: &BigFloat, linear: LinearTerm) -> BigFloat {
    let pi = r.pi();
    let pi2 = r.mul(&pi, &pi);
    let mm = r.int(m);
    let me = r.mul(&mm, eps);
    let dual_q = r.exp(&r.div(&r.mul(&r.int(4), &pi2), &me).neg());
    let dual = divisor_sum_at(r, &dual_q);
    let bracket = r.sub(&r.int(1), &r.mul(&r.int(24), &dual));
    let lead = r.div(&pi2, &r.mul(&r.int(6), &r.mul(&me, &me)));
    let constant = r.div(&r.int(1), &r.int(24));
    let linear_term = match linear {
        LinearTerm::MinusHalf => r.div(&r.int(1), &r.mul(&r.int(2), &me)).neg(),
        LinearTerm::PlusQuarter => r.div(&r.int(1), &r.mul(&r.int(4), &me)),
    };
    r.add(&r.add(&constant, &r.mul(&lead, &bracket)), &linear_term)
}

/// Coefficient of `1/(mε)` in the transformed expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LinearTerm {
    /// `−1/(2mε)`, from `E₂(−1/τ) = τ²E₂(τ) + 6τ/(πi)`.
    MinusHalf,
    /// `+1/(4mε)`; kept only to show it does not balance.
    #[cfg_attr(not(test), allow(dead_code))]
    PlusQuarter,
}

fn g2_residual(m: u64, eps: f64, digits: usize, linear: LinearTerm) -> f64 {
    let mut r = Real::with_digits(digits);
    let e = r.num(eps);
    let lhs = g2_direct(&mut r, m, &e);
    let rhs = g2_transformed(&mut r, m, &e, linear);
    let rel = r.div(&r.sub(&lhs, &rhs), &lhs);
    r.to_f64(&rel).abs()
}

/// Relative residual `|LHS − RHS| / |LHS|` between direct summation of
/// `G₂⁰(q^m)` at `q = e^{-ε}` and its modular inversion.
pub fn g2_transform_check(m: u64, eps: f64, digits: usize) -> f64 {
    assert!(m >= 1 && eps > 0.0, "need m ≥ 1 and ε > 0");
    g2_residual(m, eps, digits, LinearTerm::MinusHalf)
}

/// `1/(e^{-ε}; e^{-ε})_∞` by the product, stopping once `e^{-kε} < 10^{-digits}`.
fn inverse_euler_product(r: &mut Real, q: &BigFloat) -> BigFloat {
    let tol = r.epsilon();
    let one = r.int(1);
    let mut prod = one.clone();
    let mut qk = one.clone();
    loop {
        qk = r.mul(&qk, q);
        prod = r.mul(&prod, &r.sub(&one, &qk));
        if is_below(&qk, &tol) {
            break;
        }
    }
    r.div(&one, &prod)
}

/// Ratio of `1/(e^{-ε}; e^{-ε})_∞` to `√ε e^{π²/(6ε)} / √(2π)`; tends to 1 as ε → 0⁺.
pub fn eta_asymptotic_check(eps: f64, digits: usize) -> f64 {
    assert!(eps > 0.0, "need ε > 0");
    let mut r = Real::with_digits(digits);
    let e = r.num(eps);
    let q = r.exp(&e.neg());
    let lhs = inverse_euler_product(&mut r, &q);
    // log-space: ln RHS = ½ln ε + π²/(6ε) − ½ln(2π)
    let pi = r.pi();
    let half = r.num(0.5);
    let ln_eps = r.ln(&e);
    let ln_2pi = r.ln(&r.mul(&r.int(2), &pi));
    let growth = r.div(&r.mul(&pi, &pi), &r.mul(&r.int(6), &e));
    let ln_rhs = r.add(&r.mul(&half, &r.sub(&ln_eps, &ln_2pi)), &growth);
    let ln_lhs = r.ln(&lhs);
    let diff = r.sub(&ln_lhs, &ln_rhs);
    let ratio = r.exp(&diff);
    r.to_f64(&ratio)
}

/// `1/(q)_∞` at `q = e^{-ε}`, once as a product and once as `Σ p(n) qⁿ`.
pub fn inverse_euler_two_ways(eps: f64, digits: usize) -> (f64, f64) {
    let mut r = Real::with_digits(digits);
    let e = r.num(eps);
    let q = r.exp(&e.neg());
    let product = inverse_euler_product(&mut r, &q);

    let tol = r.epsilon();
    let mut terms = 64;
    let sum = loop {
        let p = partition_counts(terms);
        let mut total = r.int(0);
        let mut qn = r.int(1);
        let mut last = r.int(1);
        for pn in &p {
            let pn = r.big(pn);
            last = r.mul(&pn, &qn);
            total = r.add(&total, &last);
            qn = r.mul(&qn, &q);
        }
        if is_below(&last, &r.mul(&total, &tol)) {
            break total;
        }
        terms *= 2;
    };
    (r.to_f64(&product), r.to_f64(&sum))
}
