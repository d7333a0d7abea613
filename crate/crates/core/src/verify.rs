//! Identity and inequality harness over roots of unity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gwcalc::ViTable;
use crate::numeric::C64;
use crate::partitions::{enumerate_box, poincare_dual, BoxShape, Partition};
use crate::qring::structure_constant;
use crate::rootdata::{complement, enumerate_index_tuples, transpose, vandermonde_sq, IndexTuple};
use crate::symfun::{eval_schur, SchurMethod};

/// Random sample points per index for the identities in free variables.
const SAMPLES: usize = 5;
const SEED: u64 = 0x5eed;

/// Identities checked by [`check_orthogonality`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orthogonality {
    Littlewood,
    Column1,
    Column2,
    Column3,
    RowChar,
    RowPd,
}

impl Orthogonality {
    pub const ALL: [Orthogonality; 6] = [
        Orthogonality::Littlewood,
        Orthogonality::Column1,
        Orthogonality::Column2,
        Orthogonality::Column3,
        Orthogonality::RowChar,
        Orthogonality::RowPd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Orthogonality::Littlewood => "littlewood",
            Orthogonality::Column1 => "orthogonality1",
            Orthogonality::Column2 => "orthogonality2",
            Orthogonality::Column3 => "orthogonality3",
            Orthogonality::RowChar => "row-char",
            Orthogonality::RowPd => "row-pd",
        }
    }
}

impl fmt::Display for Orthogonality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Orthogonality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('_', "-").as_str() {
            "littlewood" => Orthogonality::Littlewood,
            "orthogonality1" => Orthogonality::Column1,
            "orthogonality2" => Orthogonality::Column2,
            "orthogonality3" => Orthogonality::Column3,
            "row-char" | "char-orth" => Orthogonality::RowChar,
            "row-pd" | "pd-orth" => Orthogonality::RowPd,
            other => return Err(Error::Parse(format!("unknown identity {other:?}"))),
        })
    }
}

/// Worst case of a check, with the argmax that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    #[serde(rename = "box")]
    pub shape: BoxShape,
    pub max_residual: f64,
    pub witness: Value,
    pub tol: f64,
    pub pass: bool,
}

impl Report {
    fn new(check: &str, shape: BoxShape, tol: f64) -> Self {
        Report {
            check: check.to_string(),
            shape,
            max_residual: 0.0,
            witness: Value::Null,
            tol,
            pass: true,
        }
    }

    fn record(&mut self, residual: f64, witness: impl FnOnce() -> Value) {
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
            self.witness = witness();
        }
    }

    fn finish(mut self) -> Self {
        self.pass = self.max_residual < self.tol;
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `|lhs - rhs| / max(1, |rhs|, sum |terms|)`.
fn scaled(lhs: C64, rhs: C64, magnitude: f64) -> f64 {
    (lhs - rhs).norm() / 1f64.max(rhs.norm()).max(magnitude)
}

fn schur_row(classes: &[Partition], z: &[C64]) -> Vec<C64> {
    classes
        .iter()
        .map(|l| eval_schur(l, z, SchurMethod::JacobiTrudi).expect("jacobi-trudi never fails"))
        .collect()
}

fn random_tuple(rng: &mut ChaCha8Rng, len: usize, t: C64) -> Vec<C64> {
    (0..len)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * t)
        .collect()
}

fn pd_positions(classes: &[Partition], shape: BoxShape) -> Vec<usize> {
    classes
        .iter()
        .map(|l| {
            let pd = poincare_dual(l, shape).expect("in box");
            classes.iter().position(|m| m == &pd).expect("dual in box")
        })
        .collect()
}

/// Evaluates both sides of an identity over all index or partition pairs.
pub fn check_orthogonality(shape: BoxShape, which: Orthogonality, t: C64, tol: f64) -> Result<Report> {
    let (d, c, n) = (shape.d(), shape.c(), shape.n());
    let nd = (n as f64).powi(d as i32);
    let classes = enumerate_box(shape);
    let tuples = enumerate_index_tuples(shape);
    let pd = pd_positions(&classes, shape);
    let top = classes.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut report = Report::new(which.name(), shape, tol);
    let at = |i: &IndexTuple, s: C64| -> Vec<C64> { i.roots::<f64>().iter().map(|r| r * s).collect() };
    let one = C64::new(1.0, 0.0);

    match which {
        Orthogonality::Littlewood => {
            for sample in 0..SAMPLES * 4 {
                let z = random_tuple(&mut rng, d, t);
                let w = random_tuple(&mut rng, c, one);
                let terms: Vec<C64> = classes
                    .iter()
                    .map(|l| {
                        eval_schur(l, &z, SchurMethod::JacobiTrudi).expect("jt")
                            * eval_schur(&l.conjugate(), &w, SchurMethod::JacobiTrudi).expect("jt")
                    })
                    .collect();
                let lhs: C64 = terms.iter().sum();
                let rhs: C64 = z
                    .iter()
                    .flat_map(|zi| w.iter().map(move |wj| one + zi * wj))
                    .product();
                let mag = terms.iter().map(|v| v.norm()).sum();
                report.record(scaled(lhs, rhs, mag), || json!({ "sample": sample }));
            }
        }
        Orthogonality::Column1 => {
            for j in &tuples {
                let sj = schur_row(&classes, &j.roots::<f64>());
                let hat: Vec<C64> = complement(j)
                    .iter()
                    .map(|&v| crate::rootdata::eval_root_doubled::<f64>(-v, n))
                    .collect();
                for sample in 0..SAMPLES {
                    let z = random_tuple(&mut rng, d, t);
                    let sz = schur_row(&classes, &z);
                    let terms: Vec<C64> = (0..classes.len()).map(|l| sz[l] * sj[pd[l]]).collect();
                    let lhs: C64 = terms.iter().sum();
                    let rhs = sj[top]
                        * z.iter()
                            .flat_map(|zk| hat.iter().map(move |h| one - zk * h))
                            .product::<C64>();
                    let mag = terms.iter().map(|v| v.norm()).sum();
                    report.record(scaled(lhs, rhs, mag), || json!({ "J": j, "sample": sample }));
                }
            }
        }
        Orthogonality::Column2 | Orthogonality::Column3 => {
            let scale = if which == Orthogonality::Column2 { t } else { one };
            let rows: Vec<Vec<C64>> = tuples.iter().map(|i| schur_row(&classes, &at(i, scale))).collect();
            for (a, i) in tuples.iter().enumerate() {
                let vand = vandermonde_sq::<f64>(i);
                for (b, j) in tuples.iter().enumerate() {
                    let terms: Vec<C64> = (0..classes.len())
                        .map(|l| match which {
                            Orthogonality::Column2 => rows[a][l] * rows[b][pd[l]],
                            _ => rows[a][l] * rows[b][l].conj(),
                        })
                        .collect();
                    let lhs: C64 = terms.iter().sum();
                    let rhs = if a != b {
                        C64::zero()
                    } else if which == Orthogonality::Column2 {
                        rows[a][top] * nd / vand
                    } else {
                        C64::new(nd / vand, 0.0)
                    };
                    let mag = terms.iter().map(|v| v.norm()).sum();
                    report.record(scaled(lhs, rhs, mag), || json!({ "I": i, "J": j }));
                }
            }
        }
        Orthogonality::RowChar | Orthogonality::RowPd => {
            let table = ViTable::<f64>::new(shape)?;
            let weights: Vec<f64> = table.vandermonde().iter().map(|v| v / nd).collect();
            let stop = table.schur(&shape.top())?;
            for (a, l) in classes.iter().enumerate() {
                let sl = table.schur(l)?;
                for (b, m) in classes.iter().enumerate() {
                    let terms: Vec<C64> = if which == Orthogonality::RowChar {
                        let sm = table.schur(m)?;
                        (0..tuples.len()).map(|j| sl[j] * sm[j].conj() * weights[j]).collect()
                    } else {
                        let sp = table.schur(&classes[pd[b]])?;
                        (0..tuples.len()).map(|j| sl[j] * sp[j] * weights[j] / stop[j]).collect()
                    };
                    let lhs: C64 = terms.iter().sum();
                    let rhs = C64::new(if a == b { 1.0 } else { 0.0 }, 0.0);
                    let mag = terms.iter().map(|v| v.norm()).sum();
                    report.record(scaled(lhs, rhs, mag), || json!({ "lambda": l, "mu": m }));
                }
            }
        }
    }
    Ok(report.finish())
}

/// Max of `|S_{lambda^t}(zeta^{I^t}) - S_{PD(lambda)}(zeta^I)/S_{(c^d)}(zeta^I)|`
/// and `|S_{lambda^t}(zeta^{I^t}) - conj(S_lambda(zeta^I))|`.
pub fn schur_duality_residual(lambda: &Partition, index: &IndexTuple) -> Result<f64> {
    let shape = index.shape();
    lambda.check_fits(shape)?;
    let z = index.roots::<f64>();
    let zt = transpose(index).roots::<f64>();
    let jt = SchurMethod::JacobiTrudi;
    let lhs = eval_schur(&lambda.conjugate(), &zt, jt)?;
    let ratio = eval_schur(&poincare_dual(lambda, shape)?, &z, jt)? / eval_schur(&shape.top(), &z, jt)?;
    let conj = eval_schur(lambda, &z, jt)?.conj();
    Ok((lhs - ratio).norm().max((lhs - conj).norm()))
}

/// Number of Littlewood–Richardson tableaux of shape `nu / lambda` and content `mu`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigInt {
    if lambda.size() + mu.size() != nu.size()
        || nu.len() < lambda.len()
        || (0..lambda.len()).any(|i| lambda.part(i) > nu.part(i))
    {
        return BigInt::zero();
    }
    // cells of the skew shape in reverse reading order: rows top to bottom, right to left
    let cells: Vec<(usize, usize)> = (0..nu.len())
        .flat_map(|r| (lambda.part(r)..nu.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut filling: Vec<Vec<usize>> = (0..nu.len()).map(|r| vec![0; nu.part(r)]).collect();
    let mut counts = vec![0usize; mu.len() + 1];
    fn rec(
        pos: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        nu: &Partition,
        mu: &Partition,
        filling: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
    ) -> u64 {
        let Some(&(r, c)) = cells.get(pos) else {
            return 1;
        };
        let mut total = 0;
        for v in 1..=mu.len() {
            if counts[v] >= mu.part(v - 1) {
                continue;
            }
            if v > 1 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            if c + 1 < nu.part(r) && v > filling[r][c + 1] {
                continue;
            }
            if r > 0 && c >= lambda.part(r - 1) && c < nu.part(r - 1) && v <= filling[r - 1][c] {
                continue;
            }
            filling[r][c] = v;
            counts[v] += 1;
            total += rec(pos + 1, cells, lambda, nu, mu, filling, counts);
            counts[v] -= 1;
            filling[r][c] = 0;
        }
        total
    }
    BigInt::from(rec(0, &cells, lambda, nu, mu, &mut filling, &mut counts))
}

/// Per-partition outcome of [`inequality_scan`].
#[derive(Clone, Debug, Serialize)]
pub struct InequalityRow {
    pub lambda: Partition,
    pub positive_value: f64,
    pub max_abs: f64,
    pub argmax: IndexTuple,
    /// Tuples attaining the bound within the tolerance.
    pub equality_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    #[serde(rename = "box")]
    pub shape: BoxShape,
    pub violations: usize,
    /// Largest `|S_lambda(zeta^I)| - S_lambda(zeta^{I_0})`.
    pub max_excess: f64,
    pub rows: Vec<InequalityRow>,
}

/// `|S_lambda(zeta^I)| <= S_lambda(zeta^{I_0}) + tol` over every `lambda` and `I`.
pub fn inequality_scan(shape: BoxShape, tol: f64) -> Result<InequalityReport> {
    let table = ViTable::<f64>::new(shape)?;
    let i0 = IndexTuple::i0(shape);
    let pos0 = table
        .tuples()
        .iter()
        .position(|j| j == &i0)
        .expect("I_0 is enumerated");
    let mut rows = Vec::new();
    let mut violations = 0;
    let mut max_excess = f64::NEG_INFINITY;
    for lambda in table.classes() {
        let values = table.schur(lambda)?;
        let bound = values[pos0].re;
        let (arg, max_abs) = values
            .iter()
            .enumerate()
            .map(|(j, v)| (j, v.norm()))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        let excess = max_abs - bound;
        max_excess = max_excess.max(excess);
        violations += values.iter().filter(|v| v.norm() > bound + tol).count();
        rows.push(InequalityRow {
            lambda: lambda.clone(),
            positive_value: bound,
            max_abs,
            argmax: table.tuples()[arg].clone(),
            equality_count: values.iter().filter(|v| (v.norm() - bound).abs() <= tol).count(),
        });
    }
    Ok(InequalityReport {
        shape,
        violations,
        max_excess,
        rows,
    })
}

/// Every box with `d < n <= n_max`.
pub fn inequality_sweep(n_max: usize, tol: f64) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for d in 1..n {
            out.push(inequality_scan(BoxShape::new(d, n)?, tol)?);
        }
    }
    Ok(out)
}

/// `<lambda, mu, nu>_0` against [`lr_coefficient`] for every triple.
pub fn check_classical_limit(shape: BoxShape) -> Result<Report> {
    let mut report = Report::new("lr", shape, 0.5);
    for l in enumerate_box(shape) {
        for m in enumerate_box(shape) {
            for v in enumerate_box(shape) {
                if l.size() + m.size() + v.size() != shape.dim() {
                    continue;
                }
                let engine = structure_constant(&l, &m, &v, 0, shape)?;
                let tableau = lr_coefficient(&l, &m, &poincare_dual(&v, shape)?);
                let diff = if engine == tableau { 0.0 } else { 1.0 };
                report.record(diff, || {
                    json!({ "lambda": l, "mu": m, "nu": v, "engine": engine.to_string(), "lr": tableau.to_string() })
                });
            }
        }
    }
    Ok(report.finish())
}

/// [`schur_duality_residual`] over every `lambda` and `I`.
pub fn check_duality(shape: BoxShape, tol: f64) -> Result<Report> {
    let mut report = Report::new("duality", shape, tol);
    for l in enumerate_box(shape) {
        for i in enumerate_index_tuples(shape) {
            let r = schur_duality_residual(&l, &i)?;
            report.record(r, || json!({ "lambda": l, "I": i }));
        }
    }
    Ok(report.finish())
}
