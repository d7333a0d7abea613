//! Index tuples `I_{d,n}` labelling d-tuples of distinct n-th roots of
//! `(-1)^(d+1)`, with their complement/transpose bijections and Vandermonde
//! weights.
//!
//! Entries are half-integers (integers when `d` is odd); they are stored
//! doubled so that all set operations are exact.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numeric::{unit_root, Cx, Real};
use crate::partitions::BoxShape;

/// Strictly increasing d-tuple of (half-)integers, stored doubled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    doubled: Vec<i64>,
    shape: BoxShape,
}

/// Doubled values of the base set `{-(d-1)/2 + m : m = 0..n-1}`.
pub fn base_set(shape: BoxShape) -> Vec<i64> {
    let lo = -(shape.d() as i64 - 1);
    (0..shape.n() as i64).map(|m| lo + 2 * m).collect()
}

fn format_half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("{doubled}/2")
    }
}

fn parse_half(s: &str) -> Result<i64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad half-integer {s:?}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "2" => Ok(num),
                "1" => Ok(2 * num),
                _ => Err(bad()),
            }
        }
        None => {
            if let Ok(v) = s.parse::<i64>() {
                return Ok(2 * v);
            }
            let v: f64 = s.parse().map_err(|_| bad())?;
            let doubled = 2.0 * v;
            if doubled.fract() != 0.0 {
                return Err(bad());
            }
            Ok(doubled as i64)
        }
    }
}

impl IndexTuple {
    pub fn new(doubled: Vec<i64>, shape: BoxShape) -> Result<Self> {
        let d = shape.d() as i64;
        let lo = -(d - 1);
        let hi = 2 * shape.n() as i64 - (d + 1);
        let ok = doubled.len() == shape.d()
            && doubled.windows(2).all(|w| w[0] < w[1])
            && doubled
                .iter()
                .all(|&v| (v - lo).rem_euclid(2) == 0 && (lo..=hi).contains(&v));
        if !ok {
            return Err(Error::NotAnIndexTuple {
                tuple: format!("{:?}", doubled.iter().map(|&v| format_half(v)).collect::<Vec<_>>()),
                d: shape.d(),
                n: shape.n(),
            });
        }
        Ok(IndexTuple { doubled, shape })
    }

    /// `I_0 = (-(d-1)/2, ..., (d-1)/2)`, the label of the totally positive point.
    pub fn i0(shape: BoxShape) -> Self {
        let d = shape.d() as i64;
        IndexTuple {
            doubled: (0..d).map(|m| -(d - 1) + 2 * m).collect(),
            shape,
        }
    }

    /// Parses `-1/2,1/2` (or whitespace separated, optionally bracketed).
    pub fn parse(s: &str, shape: BoxShape) -> Result<Self> {
        let inner = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let doubled = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_half)
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(doubled, shape)
    }

    /// Reads the JSON form: an array of exact strings (`"3/2"`), numbers, or
    /// `[numerator, denominator]` pairs with denominator 1 or 2.
    pub fn from_json(value: &Value, shape: BoxShape) -> Result<Self> {
        let bad = || Error::Parse(format!("bad index tuple JSON {value}"));
        let items = value.as_array().ok_or_else(bad)?;
        let doubled = items
            .iter()
            .map(|item| match item {
                Value::String(s) => parse_half(s),
                Value::Number(num) => parse_half(&num.to_string()),
                Value::Array(pair) if pair.len() == 2 => {
                    let num = pair[0].as_i64().ok_or_else(bad)?;
                    match pair[1].as_i64() {
                        Some(2) => Ok(num),
                        Some(1) => Ok(2 * num),
                        _ => Err(bad()),
                    }
                }
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(doubled, shape)
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    /// `2 * ||I||`, twice the sum of the entries.
    pub fn norm_doubled(&self) -> i64 {
        self.doubled.iter().sum()
    }

    /// `||I||` as a float.
    pub fn norm(&self) -> f64 {
        self.norm_doubled() as f64 / 2.0
    }

    /// Exact string form of each entry.
    pub fn entries(&self) -> Vec<String> {
        self.doubled.iter().map(|&v| format_half(v)).collect()
    }

    /// Shifts every entry by the integer `k`, wrapping into the base set.
    /// Multiplies the root tuple by `zeta^k`.
    pub fn rotate(&self, k: i64) -> IndexTuple {
        let lo = -(self.shape.d() as i64 - 1);
        let period = 2 * self.shape.n() as i64;
        let mut doubled: Vec<i64> = self
            .doubled
            .iter()
            .map(|&v| lo + (v + 2 * k - lo).rem_euclid(period))
            .collect();
        doubled.sort_unstable();
        IndexTuple {
            doubled,
            shape: self.shape,
        }
    }

    /// The roots `zeta^{i_1}, ..., zeta^{i_d}`.
    pub fn roots<R: Real>(&self) -> Vec<Cx<R>> {
        self.doubled
            .iter()
            .map(|&v| eval_root_doubled(v, self.shape.n()))
            .collect()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries().join(","))
    }
}

impl Serialize for IndexTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(serializer)
    }
}

/// Every tuple of `I_{d,n}`, in lexicographic order.
pub fn enumerate_index_tuples(shape: BoxShape) -> Vec<IndexTuple> {
    let base = base_set(shape);
    let mut out = Vec::with_capacity(shape.num_classes());
    let mut chosen = Vec::with_capacity(shape.d());
    fn rec(base: &[i64], start: usize, need: usize, chosen: &mut Vec<i64>, shape: BoxShape, out: &mut Vec<IndexTuple>) {
        if need == 0 {
            out.push(IndexTuple {
                doubled: chosen.clone(),
                shape,
            });
            return;
        }
        for i in start..=base.len() - need {
            chosen.push(base[i]);
            rec(base, i + 1, need - 1, chosen, shape, out);
            chosen.pop();
        }
    }
    rec(&base, 0, shape.d(), &mut chosen, shape, &mut out);
    out
}

/// `I^` : the `c` base-set values not in `I`, increasing, doubled.
pub fn complement(index: &IndexTuple) -> Vec<i64> {
    base_set(index.shape)
        .into_iter()
        .filter(|v| index.doubled.binary_search(v).is_err())
        .collect()
}

/// `I^t = (n/2 - i^_c, ..., n/2 - i^_1)` in `I_{c,n}`.
pub fn transpose(index: &IndexTuple) -> IndexTuple {
    let n = index.shape.n() as i64;
    let doubled: Vec<i64> = complement(index).iter().rev().map(|&v| n - v).collect();
    IndexTuple::new(doubled, index.shape.transposed()).expect("transpose lands in I_{c,n}")
}

/// `exp(2 pi i * i / n)` for the half-integer `i = doubled / 2`.
pub fn eval_root_doubled<R: Real>(doubled: i64, n: usize) -> Cx<R> {
    unit_root(doubled, n as i64)
}

/// `|prod_{k<j} (zeta^{i_k} - zeta^{i_j})|^2`.
pub fn vandermonde_sq<R: Real>(index: &IndexTuple) -> R {
    // |e^{ia} - e^{ib}| = 2 |sin((a - b) / 2)|
    let two_n = 2 * index.shape.n() as i64;
    let mut acc = R::one();
    for (k, &a) in index.doubled.iter().enumerate() {
        for &b in &index.doubled[k + 1..] {
            let (s, _) = R::sin_cos_pi(b - a, two_n);
            let chord = R::from_i64(2) * s;
            acc = acc * chord.clone() * chord;
        }
    }
    acc
}
