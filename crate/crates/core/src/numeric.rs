//! Numeric carrier for the floating-point side of the toolkit.
//!
//! Everything numeric is generic over [`Real`], implemented for `f64` and for
//! [`Ext`], an arbitrary-precision binary float with a globally configured
//! mantissa length. [`Precision`] is the single switch that selects between
//! them at the API boundary.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

/// A complex value over the carrier `R`.
pub type Cx<R> = Complex<R>;
/// Binary64 complex value.
pub type C64 = Complex<f64>;

/// Real scalar usable as the numeric carrier.
pub trait Real:
    Num + Clone + Neg<Output = Self> + PartialOrd + fmt::Debug + Send + Sync + 'static
{
    fn from_f64(x: f64) -> Self;
    fn from_i64(x: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    /// `(sin(pi * num / den), cos(pi * num / den))`; exact at multiples of pi/2.
    fn sin_cos_pi(num: i64, den: i64) -> (Self, Self);
    /// Unit roundoff of the carrier, as binary64.
    fn unit_roundoff() -> f64;
}

/// Reduces `num/den` modulo 2 into `(-1, 1]` and reports exact quarter turns.
fn reduce_turn(num: i64, den: i64) -> (i64, i64, Option<(f64, f64)>) {
    assert!(den != 0, "zero denominator in angle");
    let (mut num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    num = num.rem_euclid(2 * den);
    if num > den {
        num -= 2 * den;
    }
    let exact = if num == 0 {
        Some((0.0, 1.0))
    } else if num == den {
        Some((0.0, -1.0))
    } else if 2 * num == den {
        Some((1.0, 0.0))
    } else if 2 * num == -den {
        Some((-1.0, 0.0))
    } else {
        None
    };
    (num, den, exact)
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(x: i64) -> Self {
        x as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sin_cos_pi(num: i64, den: i64) -> (Self, Self) {
        let (num, den, exact) = reduce_turn(num, den);
        if let Some(sc) = exact {
            return sc;
        }
        (std::f64::consts::PI * num as f64 / den as f64).sin_cos()
    }
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
}

static EXT_BITS: AtomicUsize = AtomicUsize::new(128);
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn ext_bits() -> usize {
    EXT_BITS.load(AtomicOrdering::Relaxed)
}

/// Extended-precision real. The mantissa length is global; see [`set_precision`].
#[derive(Clone, Debug)]
pub struct Ext(BigFloat);

impl Ext {
    pub fn inner(&self) -> &BigFloat {
        &self.0
    }
}

impl PartialEq for Ext {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! ext_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Ext {
            type Output = Ext;
            fn $method(self, rhs: Ext) -> Ext {
                Ext(self.0.$method(&rhs.0, ext_bits(), RM))
            }
        }
    };
}

ext_binop!(Add, add);
ext_binop!(Sub, sub);
ext_binop!(Mul, mul);
ext_binop!(Div, div);

impl Rem for Ext {
    type Output = Ext;
    fn rem(self, rhs: Ext) -> Ext {
        Ext(self.0.rem(&rhs.0))
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext(self.0.neg())
    }
}

impl Zero for Ext {
    fn zero() -> Self {
        Ext(BigFloat::from_f64(0.0, ext_bits()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Ext {
    fn one() -> Self {
        Ext(BigFloat::from_f64(1.0, ext_bits()))
    }
}

impl Num for Ext {
    type FromStrRadixErr = Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self> {
        if radix != 10 {
            return Err(Error::Parse(format!("unsupported radix {radix}")));
        }
        let v = BigFloat::parse(s, astro_float::Radix::Dec, ext_bits(), RM, &mut Consts::new().map_err(|e| Error::Parse(e.to_string()))?);
        if v.is_nan() {
            return Err(Error::Parse(format!("not a number: {s}")));
        }
        Ok(Ext(v))
    }
}

impl Real for Ext {
    fn from_f64(x: f64) -> Self {
        Ext(BigFloat::from_f64(x, ext_bits()))
    }
    fn from_i64(x: i64) -> Self {
        Ext(BigFloat::from_i64(x, ext_bits()))
    }
    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _, sign, exponent, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        // value = 0.m * 2^exponent, most significant word last
        let mut mantissa = 0.0f64;
        let mut scale = 1.0f64;
        for w in words.iter().rev().take(2) {
            scale /= 18446744073709551616.0;
            mantissa += *w as f64 * scale;
        }
        let magnitude = mantissa * 2f64.powi(exponent);
        if sign.is_negative() {
            -magnitude
        } else {
            magnitude
        }
    }
    fn sqrt(&self) -> Self {
        Ext(self.0.sqrt(ext_bits(), RM))
    }
    fn abs(&self) -> Self {
        Ext(self.0.abs())
    }
    fn sin_cos_pi(num: i64, den: i64) -> (Self, Self) {
        let (num, den, exact) = reduce_turn(num, den);
        if let Some((s, c)) = exact {
            return (Ext::from_f64(s), Ext::from_f64(c));
        }
        let p = ext_bits();
        let guard = p + 64;
        CONSTS.with(|cc| {
            let mut cc = cc.borrow_mut();
            let pi = cc.pi(guard, RM);
            let angle = pi
                .mul(&BigFloat::from_i64(num, guard), guard, RM)
                .div(&BigFloat::from_i64(den, guard), guard, RM);
            let s = angle.sin(p, RM, &mut cc);
            let c = angle.cos(p, RM, &mut cc);
            (Ext(s), Ext(c))
        })
    }
    fn unit_roundoff() -> f64 {
        2f64.powi(-(ext_bits() as i32))
    }
}

/// Selects the numeric carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended { bits: usize },
}

impl Precision {
    /// Largest accepted distance from the nearest integer when rounding sums.
    pub fn rounding_threshold(self) -> f64 {
        match self {
            Precision::Double => 1e-6,
            Precision::Extended { bits } => 1e-6 * 2f64.powi(53 - bits as i32),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Double => write!(f, "double"),
            Precision::Extended { bits } => write!(f, "extended:{bits}"),
        }
    }
}

impl FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "double" {
            return Ok(Precision::Double);
        }
        if s == "extended" {
            return Ok(Precision::Extended { bits: 128 });
        }
        if let Some(bits) = s.strip_prefix("extended:") {
            let bits: usize = bits
                .parse()
                .map_err(|_| Error::Parse(format!("bad mantissa bits in {s:?}")))?;
            if !(64..=4096).contains(&bits) {
                return Err(Error::Parse(format!(
                    "mantissa bits must be in 64..=4096, got {bits}"
                )));
            }
            return Ok(Precision::Extended { bits });
        }
        Err(Error::Parse(format!(
            "precision must be `double` or `extended:<bits>`, got {s:?}"
        )))
    }
}

const UNSET: usize = usize::MAX;
static GLOBAL_PRECISION: AtomicUsize = AtomicUsize::new(UNSET);

/// Environment variable consulted when no precision was set explicitly.
pub const PRECISION_ENV: &str = "QGRASS_PRECISION";

/// Sets the global numeric carrier.
pub fn set_precision(p: Precision) {
    let code = match p {
        Precision::Double => 0,
        Precision::Extended { bits } => {
            EXT_BITS.store(bits, AtomicOrdering::Relaxed);
            bits
        }
    };
    GLOBAL_PRECISION.store(code, AtomicOrdering::Relaxed);
}

/// The global numeric carrier; falls back to `QGRASS_PRECISION`, then binary64.
pub fn precision() -> Precision {
    match GLOBAL_PRECISION.load(AtomicOrdering::Relaxed) {
        UNSET => {
            let p = std::env::var(PRECISION_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(Precision::Double);
            set_precision(p);
            p
        }
        0 => Precision::Double,
        bits => Precision::Extended { bits },
    }
}

/// `exp(i * pi * num / den)`.
pub fn unit_root<R: Real>(num: i64, den: i64) -> Cx<R> {
    let (s, c) = R::sin_cos_pi(num, den);
    Complex::new(c, s)
}

pub fn cabs<R: Real>(z: &Cx<R>) -> R {
    z.norm_sqr().sqrt()
}

pub fn cabs_f64<R: Real>(z: &Cx<R>) -> f64 {
    cabs(z).to_f64()
}

pub fn to_c64<R: Real>(z: &Cx<R>) -> C64 {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<R: Real>(z: C64) -> Cx<R> {
    Complex::new(R::from_f64(z.re), R::from_f64(z.im))
}

pub fn czero<R: Real>() -> Cx<R> {
    Complex::new(R::zero(), R::zero())
}

pub fn cone<R: Real>() -> Cx<R> {
    Complex::new(R::one(), R::zero())
}

pub fn is_finite<R: Real>(z: &Cx<R>) -> bool {
    z.re.to_f64().is_finite() && z.im.to_f64().is_finite()
}

/// Determinant by fraction-free (Bareiss) elimination with partial pivoting.
pub fn det<R: Real>(mut m: Vec<Vec<Cx<R>>>) -> Cx<R> {
    let size = m.len();
    if size == 0 {
        return cone();
    }
    debug_assert!(m.iter().all(|row| row.len() == size));
    let mut negate = false;
    let mut prev = cone::<R>();
    for k in 0..size - 1 {
        let pivot_row = (k..size)
            .max_by(|&a, &b| {
                m[a][k]
                    .norm_sqr()
                    .partial_cmp(&m[b][k].norm_sqr())
                    .unwrap_or(Ordering::Equal)
            })
            .expect("nonempty range");
        if m[pivot_row][k].is_zero() {
            return czero();
        }
        if pivot_row != k {
            m.swap(pivot_row, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[size - 1][size - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Pairwise (tree) summation in a fixed order.
pub fn pairwise_sum<R: Real>(values: &[Cx<R>]) -> Cx<R> {
    match values.len() {
        0 => czero(),
        1 => values[0].clone(),
        len => {
            let (lo, hi) = values.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_quarter_turns() {
        assert_eq!(f64::sin_cos_pi(0, 4), (0.0, 1.0));
        assert_eq!(f64::sin_cos_pi(4, 4), (0.0, -1.0));
        assert_eq!(f64::sin_cos_pi(2, 4), (1.0, 0.0));
        assert_eq!(f64::sin_cos_pi(-2, 4), (-1.0, 0.0));
        assert_eq!(f64::sin_cos_pi(9, 4).0, f64::sin_cos_pi(1, 4).0);
    }

    #[test]
    fn ext_matches_f64() {
        let (s, c) = Ext::sin_cos_pi(1, 6);
        assert!((s.to_f64() - 0.5).abs() < 1e-16);
        assert!((c.to_f64() - 3f64.sqrt() / 2.0).abs() < 1e-16);
        let x = Ext::from_f64(-3.25) * Ext::from_i64(4);
        assert_eq!(x.to_f64(), -13.0);
        assert_eq!(Ext::from_f64(1e-300).to_f64(), 1e-300);
        let two = Ext::from_i64(2).sqrt();
        assert!((two.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-16);
    }

    #[test]
    fn ext_is_more_precise() {
        let third = Ext::one() / Ext::from_i64(3);
        let err = (third * Ext::from_i64(3) - Ext::one()).abs();
        assert!(err.to_f64() < 1e-30);
    }

    #[test]
    fn determinant_small() {
        let m = |v: &[[f64; 3]; 3]| {
            v.iter()
                .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect::<Vec<_>>()
        };
        let d = det(m(&[[0.0, 2.0, 1.0], [1.0, 1.0, 1.0], [2.0, 0.0, 5.0]]));
        // 0*(5-0) - 2*(5-2) + 1*(0-2) = -8
        assert!((d.re + 8.0).abs() < 1e-12 && d.im.abs() < 1e-12);
        let singular = det(m(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]]));
        assert!(singular.norm() < 1e-12);
        assert_eq!(det::<f64>(vec![]), C64::new(1.0, 0.0));
    }

    #[test]
    fn precision_parsing() {
        assert_eq!("double".parse::<Precision>().unwrap(), Precision::Double);
        assert_eq!(
            "extended:200".parse::<Precision>().unwrap(),
            Precision::Extended { bits: 200 }
        );
        assert!("extended:12".parse::<Precision>().is_err());
        assert!("quad".parse::<Precision>().is_err());
    }

    #[test]
    fn pairwise_matches_naive() {
        let v: Vec<C64> = (0..37).map(|k| C64::new(k as f64, -(k as f64) / 2.0)).collect();
        let s = pairwise_sum(&v);
        assert_eq!(s, C64::new(666.0, -333.0));
    }
}
