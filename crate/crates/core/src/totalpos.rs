//! The totally positive family `u_{>0}(t)`, the hook/sine closed forms,
//! total-nonnegativity tests and the factorization into one-parameter
//! subgroups `x_i(a) = I + a E_{i,i+1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Real, C64};
use crate::partitions::{BoxShape, Partition};
use crate::rootdata::IndexTuple;
use crate::toeplitz::{fiber_points, ToeplitzPoint};

/// Imaginary parts below this count as real.
pub const REAL_TOL: f64 = 1e-12;

fn sin_pi(num: i64, n: usize) -> f64 {
    f64::sin_cos_pi(num, n as i64).0
}

/// `u_{>0}(t)`, with `x_j = t^j prod_{m<j} sin((d-m) pi/n) / sin((m+1) pi/n)`.
pub fn positive_point(t: f64, shape: BoxShape) -> ToeplitzPoint {
    let (d, n) = (shape.d(), shape.n());
    let mut x = vec![C64::new(0.0, 0.0); n - 1];
    let mut coeff = 1.0;
    for j in 1..=d.min(n - 1) {
        let m = j as i64 - 1;
        coeff *= sin_pi(d as i64 - m, n) / sin_pi(m + 1, n);
        x[j - 1] = C64::new(t.powi(j as i32) * coeff, 0.0);
    }
    ToeplitzPoint::from_bands(x, shape).expect("n - 1 bands")
}

/// `t^{|lambda|} prod sin((d-i+j) pi/n) / sin(hl(i,j) pi/n)`; exactly zero
/// for `lambda` outside the box.
pub fn hook_schur_value(lambda: &Partition, t: f64, shape: BoxShape) -> f64 {
    if !lambda.fits(shape) {
        return 0.0;
    }
    let (d, n) = (shape.d() as i64, shape.n());
    let hooks = lambda.hook_lengths();
    let mut value = t.powi(lambda.size() as i32);
    for ((i, j), hl) in hooks {
        value *= sin_pi(d - i as i64 + j as i64, n) / sin_pi(hl as i64, n);
    }
    value
}

/// How [`is_totally_nonnegative`] enumerates minors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TnnMethod {
    /// Contiguous column sets, all row sets.
    ConnectedColumns,
    /// Every minor; only for `n <= 6`.
    AllMinors,
}

/// A minor that came out negative, 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TnnReport {
    pub nonnegative: bool,
    pub minors_checked: usize,
    /// The most negative minor, if any minor is below `-tol`.
    pub violation: Option<MinorWitness>,
}

/// Bands as reals; errors if an imaginary part exceeds [`REAL_TOL`] (scaled).
pub fn real_bands(u: &ToeplitzPoint) -> Result<Vec<f64>> {
    let scale = u.bands().iter().map(|v| v.norm()).fold(1.0, f64::max);
    let imag = u.bands().iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag > REAL_TOL * scale {
        return Err(Error::NotReal { imag });
    }
    Ok(u.bands().iter().map(|v| v.re).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Checks that every minor of the chosen family is `>= -tol * max(1, |x|)^k`.
pub fn is_totally_nonnegative(u: &ToeplitzPoint, method: TnnMethod, tol: f64) -> Result<TnnReport> {
    real_bands(u)?;
    let n = u.n();
    if method == TnnMethod::AllMinors && n > 6 {
        return Err(Error::TooLarge(format!("all-minors test limited to n <= 6, got {n}")));
    }
    let scale = u.bands().iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut checked = 0;
    let mut worst: Option<MinorWitness> = None;
    for k in 1..=n {
        let row_sets = subsets(n, k);
        let col_sets: Vec<Vec<usize>> = match method {
            TnnMethod::ConnectedColumns => (1..=n + 1 - k).map(|s| (s..s + k).collect()).collect(),
            TnnMethod::AllMinors => row_sets.clone(),
        };
        let bound = tol * scale.powi(k as i32);
        for cols in &col_sets {
            for rows in &row_sets {
                checked += 1;
                let value = u.minor(rows, cols).re;
                if value < -bound && worst.as_ref().is_none_or(|w| value < w.value) {
                    worst = Some(MinorWitness {
                        rows: rows.clone(),
                        cols: cols.clone(),
                        value,
                    });
                }
            }
        }
    }
    Ok(TnnReport {
        nonnegative: worst.is_none(),
        minors_checked: checked,
        violation: worst,
    })
}

/// Rectangular values `s_{(m^k)}(u)`, `m <= c`, `k <= d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityReport {
    pub positive: bool,
    /// The rectangle with the smallest value.
    pub min_rectangle: Partition,
    pub min_value: f64,
}

/// Whether `s_{(m^k)}(u) > tol` for every rectangle in the box.
pub fn positivity_certificate(u: &ToeplitzPoint, tol: f64) -> Result<PositivityReport> {
    real_bands(u)?;
    let shape = u.shape();
    let mut min: Option<(Partition, f64)> = None;
    for k in 1..=shape.d() {
        for m in 1..=shape.c() {
            let rect = Partition::rectangle(m, k);
            let v = u.schubert_value(&rect)?.re;
            if min.as_ref().is_none_or(|(_, w)| v < *w) {
                min = Some((rect, v));
            }
        }
    }
    let (min_rectangle, min_value) = min.expect("box has at least one cell");
    Ok(PositivityReport {
        positive: min_value > tol,
        min_rectangle,
        min_value,
    })
}

/// Parameters `a_{(i,j)}` on the box `B(d,c)`, 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorGrid {
    shape: BoxShape,
    a: BTreeMap<(usize, usize), f64>,
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    d: usize,
    n: usize,
    a: Vec<(usize, usize, f64)>,
}

impl FactorGrid {
    pub fn new(shape: BoxShape, a: BTreeMap<(usize, usize), f64>) -> Result<Self> {
        for i in 1..=shape.d() {
            for j in 1..=shape.c() {
                if !a.contains_key(&(i, j)) {
                    return Err(Error::Parse(format!("grid misses cell ({i},{j})")));
                }
            }
        }
        if a.len() != shape.d() * shape.c() {
            return Err(Error::Parse("grid has cells outside the box".into()));
        }
        Ok(FactorGrid { shape, a })
    }

    /// The closed form `a_{(i,j)} = t sin((i+j-1) pi/n) / sin((d-i+j) pi/n)`.
    pub fn closed_form(t: f64, shape: BoxShape) -> Self {
        let (d, n) = (shape.d() as i64, shape.n());
        let mut a = BTreeMap::new();
        for i in 1..=shape.d() {
            for j in 1..=shape.c() {
                let (i, j) = (i as i64, j as i64);
                a.insert(
                    (i as usize, j as usize),
                    t * sin_pi(i + j - 1, n) / sin_pi(d - i + j, n),
                );
            }
        }
        FactorGrid { shape, a }
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.a.get(&(i, j)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.a.iter().map(|(k, v)| (*k, *v))
    }

    pub fn max_abs_diff(&self, other: &FactorGrid) -> f64 {
        self.a
            .iter()
            .map(|(k, v)| (v - other.a.get(k).copied().unwrap_or(f64::NAN)).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let repr = GridRepr {
            d: self.shape.d(),
            n: self.shape.n(),
            a: self.cells().map(|((i, j), v)| (i, j, v)).collect(),
        };
        serde_json::to_value(repr).expect("grid serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: GridRepr =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let shape = BoxShape::new(repr.d, repr.n)?;
        FactorGrid::new(shape, repr.a.into_iter().map(|(i, j, v)| ((i, j), v)).collect())
    }
}

/// `Delta_{[i,j]}`: rows `1..1+j-i`, columns `i..j`; the empty interval gives 1.
pub fn interval_minor(u: &ToeplitzPoint, i: usize, j: usize) -> C64 {
    if j < i {
        return C64::new(1.0, 0.0);
    }
    let rows: Vec<usize> = (1..=1 + j - i).collect();
    let cols: Vec<usize> = (i..=j).collect();
    u.minor(&rows, &cols)
}

/// Recovers `a_{(d-k+1,m)}` from ratios of interval minors.
pub fn factor_params(u: &ToeplitzPoint, tol: f64) -> Result<FactorGrid> {
    real_bands(u)?;
    let shape = u.shape();
    let minor = |i: usize, j: usize| interval_minor(u, i, j).re;
    let mut a = BTreeMap::new();
    for k in 1..=shape.d() {
        for m in 1..=shape.c() {
            let den = [(k + 1, k + m - 1), (k, k + m - 1)];
            let mut denom = 1.0;
            for (i, j) in den {
                let v = minor(i, j);
                if v.abs() < tol {
                    return Err(Error::SingularMinor {
                        name: format!("Delta[{i},{j}]"),
                        value: v,
                    });
                }
                denom *= v;
            }
            let value = minor(k + 1, k + m) * minor(k, k + m - 2) / denom;
            a.insert((shape.d() - k + 1, m), value);
        }
    }
    FactorGrid::new(shape, a)
}

/// Canonical factor order: `i` from `d` down to 1, and within each `i`,
/// `j` from `c` down to 1.
pub fn canonical_order(shape: BoxShape) -> Vec<(usize, usize)> {
    (1..=shape.d())
        .rev()
        .flat_map(|i| (1..=shape.c()).rev().map(move |j| (i, j)))
        .collect()
}

/// Whether `order` lists `B(d,c)` so that `(i,j)` precedes `(i',j')`
/// whenever `i >= i'` and `j >= j'`.
pub fn is_linear_extension(order: &[(usize, usize)], shape: BoxShape) -> bool {
    if order.len() != shape.d() * shape.c() {
        return false;
    }
    let mut pos = BTreeMap::new();
    for (p, &cell) in order.iter().enumerate() {
        if pos.insert(cell, p).is_some() {
            return false;
        }
    }
    for (&(i, j), &p) in &pos {
        for (&(i2, j2), &p2) in &pos {
            if (i, j) != (i2, j2) && i >= i2 && j >= j2 && p > p2 {
                return false;
            }
        }
    }
    true
}

/// `prod (I + a_{(i,j)} E_{d-i+j, d-i+j+1})` in the given order, dense.
pub fn reconstruct_dense(g: &FactorGrid, order: &[(usize, usize)]) -> Result<Vec<Vec<f64>>> {
    let shape = g.shape;
    if !is_linear_extension(order, shape) {
        return Err(Error::Parse("factor order is not a linear extension".into()));
    }
    let n = shape.n();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|r| (0..n).map(|s| if r == s { 1.0 } else { 0.0 }).collect())
        .collect();
    for &(i, j) in order {
        let a = g.get(i, j).expect("complete grid");
        let col = shape.d() - i + j; // 1-based simple root index
        // right multiplication by I + a E_{col,col+1}: column col+1 += a * column col
        for row in m.iter_mut() {
            row[col] += a * row[col - 1];
        }
    }
    Ok(m)
}

/// The point `x(a)` in the canonical order, read off the first row.
pub fn reconstruct(g: &FactorGrid) -> Result<ToeplitzPoint> {
    let m = reconstruct_dense(g, &canonical_order(g.shape))?;
    let x = m[0][1..].iter().map(|&v| C64::new(v, 0.0)).collect();
    ToeplitzPoint::from_bands(x, g.shape)
}

/// Largest entrywise difference between a dense real matrix and a point.
pub fn dense_diff(m: &[Vec<f64>], u: &ToeplitzPoint) -> f64 {
    let du = u.dense();
    m.iter()
        .zip(&du)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (C64::new(*x, 0.0) - y).norm()))
        .fold(0.0, f64::max)
}

/// The points `u_n(zeta^I)` of the fiber over `q = 1` with real bands.
pub fn real_fiber_points(shape: BoxShape) -> Vec<ToeplitzPoint> {
    fiber_points(shape)
        .into_iter()
        .filter(|u| u.bands().iter().all(|v| v.im.abs() < REAL_TOL))
        .collect()
}

/// The labels `I` of [`real_fiber_points`].
pub fn real_fiber_labels(shape: BoxShape) -> Vec<IndexTuple> {
    real_fiber_points(shape)
        .iter()
        .filter_map(|u| u.provenance().map(|(_, i)| i.clone()))
        .collect()
}
