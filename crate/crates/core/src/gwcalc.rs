//! Vafa–Intriligator sums over `I_{d,n}`, numeric Schubert expansion of
//! symmetric polynomials, and the quantum Poincaré pairing.

use std::collections::HashMap;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{
    cabs_f64, czero, pairwise_sum, precision, to_c64, Cx, Ext, Precision, Real, C64,
};
use crate::partitions::{enumerate_box, BoxShape, Partition};
use crate::qring::{product_table, RingElement};
use crate::rootdata::{enumerate_index_tuples, vandermonde_sq, IndexTuple};
use crate::symfun::{eval_schur, SchurMethod};

/// A rounded sum together with how far it was from an integer.
#[derive(Clone, Debug, PartialEq)]
pub struct ViValue {
    pub value: BigInt,
    /// The sum before rounding, as binary64.
    pub raw: C64,
    /// `max(|re - round(re)|, |im|)`.
    pub residual: f64,
    pub precision: Precision,
}

/// Schur values `S_lambda(zeta^J)` for every class and every `J`, plus the
/// weights `|Vand(zeta^J)|^2 / (n^d S_{(c^d)}(zeta^J))`.
pub struct ViTable<R: Real> {
    shape: BoxShape,
    tuples: Vec<IndexTuple>,
    classes: Vec<Partition>,
    index: HashMap<Partition, usize>,
    schur: Vec<Vec<Cx<R>>>,
    vand: Vec<R>,
    weight: Vec<Cx<R>>,
}

impl<R: Real> ViTable<R> {
    pub fn new(shape: BoxShape) -> Result<Self> {
        let tuples = enumerate_index_tuples(shape);
        let classes = enumerate_box(shape);
        let index = classes
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let roots: Vec<Vec<Cx<R>>> = tuples.iter().map(|j| j.roots()).collect();
        let schur = classes
            .iter()
            .map(|l| {
                roots
                    .iter()
                    .map(|z| eval_schur(l, z, SchurMethod::DualJacobiTrudi))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let vand: Vec<R> = tuples.iter().map(vandermonde_sq).collect();
        let nd = R::from_i64((shape.n() as i64).pow(shape.d() as u32));
        let top = &schur[classes.len() - 1];
        let weight = vand
            .iter()
            .zip(top)
            .map(|(v, s)| Cx::new(v.clone() / nd.clone(), R::zero()) / s.clone())
            .collect();
        Ok(ViTable {
            shape,
            tuples,
            classes,
            index,
            schur,
            vand,
            weight,
        })
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn tuples(&self) -> &[IndexTuple] {
        &self.tuples
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    fn slot(&self, lambda: &Partition) -> Result<usize> {
        self.index.get(lambda).copied().ok_or_else(|| Error::OutsideBox {
            partition: lambda.to_string(),
            d: self.shape.d(),
            c: self.shape.c(),
        })
    }

    /// `S_lambda(zeta^J)` for every `J`, in [`Self::tuples`] order.
    pub fn schur(&self, lambda: &Partition) -> Result<&[Cx<R>]> {
        Ok(&self.schur[self.slot(lambda)?])
    }

    /// `|Vand(zeta^J)|^2` for every `J`.
    pub fn vandermonde(&self) -> &[R] {
        &self.vand
    }

    /// The unrounded sum `(1/n^d) sum_J S_lambda S_mu S_nu |Vand|^2 / S_{(c^d)}`.
    pub fn raw_sum(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Cx<R>> {
        let (a, b, c) = (self.slot(lambda)?, self.slot(mu)?, self.slot(nu)?);
        let terms: Vec<Cx<R>> = (0..self.tuples.len())
            .map(|j| {
                self.schur[a][j].clone()
                    * self.schur[b][j].clone()
                    * self.schur[c][j].clone()
                    * self.weight[j].clone()
            })
            .collect();
        Ok(pairwise_sum(&terms))
    }

    /// `<lambda, mu, nu>_k`, rounded, without enforcing a threshold.
    pub fn evaluate(&self, lambda: &Partition, mu: &Partition, nu: &Partition, k: usize) -> Result<ViValue> {
        let degree = self.shape.dim() + k * self.shape.n();
        let prec = carrier_precision::<R>();
        if degree != lambda.size() + mu.size() + nu.size() {
            for p in [lambda, mu, nu] {
                self.slot(p)?;
            }
            return Ok(ViValue {
                value: BigInt::zero(),
                raw: C64::new(0.0, 0.0),
                residual: 0.0,
                precision: prec,
            });
        }
        let raw = self.raw_sum(lambda, mu, nu)?;
        Ok(round_sum(&raw, prec))
    }

    /// [`Self::evaluate`], failing if the residual reaches the rounding threshold.
    pub fn invariant(&self, lambda: &Partition, mu: &Partition, nu: &Partition, k: usize) -> Result<ViValue> {
        let v = self.evaluate(lambda, mu, nu, k)?;
        let threshold = v.precision.rounding_threshold();
        if !(v.residual < threshold) {
            return Err(Error::PrecisionFailure {
                residual: v.residual,
                threshold,
            });
        }
        Ok(v)
    }
}

fn carrier_precision<R: Real>() -> Precision {
    if R::unit_roundoff() == f64::unit_roundoff() {
        Precision::Double
    } else {
        Precision::Extended {
            bits: (-R::unit_roundoff().log2()).round() as usize,
        }
    }
}

fn round_sum<R: Real>(raw: &Cx<R>, prec: Precision) -> ViValue {
    let nearest = raw.re.to_f64().round();
    let off = (raw.re.clone() - R::from_f64(nearest)).abs().to_f64();
    let imag = raw.im.abs().to_f64();
    ViValue {
        value: BigInt::from(nearest as i64),
        raw: to_c64(raw),
        residual: off.max(imag),
        precision: prec,
    }
}

/// `<lambda, mu, nu>_k` by the Vafa–Intriligator sum in the global precision.
pub fn vi_invariant(lambda: &Partition, mu: &Partition, nu: &Partition, k: usize, shape: BoxShape) -> Result<ViValue> {
    match precision() {
        Precision::Double => ViTable::<f64>::new(shape)?.invariant(lambda, mu, nu, k),
        Precision::Extended { .. } => ViTable::<Ext>::new(shape)?.invariant(lambda, mu, nu, k),
    }
}

/// Like [`vi_invariant`], retrying in extended precision after a binary64
/// precision failure.
pub fn vi_invariant_auto(lambda: &Partition, mu: &Partition, nu: &Partition, k: usize, shape: BoxShape) -> Result<ViValue> {
    match vi_invariant(lambda, mu, nu, k, shape) {
        Err(Error::PrecisionFailure { .. }) if precision() == Precision::Double => {
            ViTable::<Ext>::new(shape)?.invariant(lambda, mu, nu, k)
        }
        other => other,
    }
}

/// Coefficients `m^P_nu(t)` of a homogeneous symmetric polynomial `P`.
#[derive(Clone, Debug)]
pub struct NumericExpansion<R: Real> {
    pub coeffs: Vec<(Partition, Cx<R>)>,
    /// Largest `|m^P_nu|` over `nu` with `|nu|` not congruent to `deg P` mod `n`.
    pub filter_residual: f64,
}

impl<R: Real> NumericExpansion<R> {
    pub fn coeff(&self, nu: &Partition) -> Option<&Cx<R>> {
        self.coeffs.iter().find(|(p, _)| p == nu).map(|(_, c)| c)
    }
}

/// `m^P_nu(t) = (1/n^d) sum_J P(t zeta^J) S_nu(t^{-1} zeta^{-J}) |Vand(zeta^J)|^2`.
pub fn expand_numeric<R: Real>(
    p: &dyn Fn(&[Cx<R>]) -> Cx<R>,
    degree: usize,
    t: Cx<R>,
    shape: BoxShape,
) -> Result<NumericExpansion<R>> {
    if cabs_f64(&t) == 0.0 {
        return Err(Error::Degenerate("expansion needs t != 0".into()));
    }
    let n = shape.n();
    let nd = R::from_i64((n as i64).pow(shape.d() as u32));
    let tuples = enumerate_index_tuples(shape);
    let tinv = Cx::new(R::one(), R::zero()) / t.clone();
    let mut samples = Vec::with_capacity(tuples.len());
    for j in &tuples {
        let roots: Vec<Cx<R>> = j.roots();
        let scaled: Vec<Cx<R>> = roots.iter().map(|z| z.clone() * t.clone()).collect();
        let inverse: Vec<Cx<R>> = roots.iter().map(|z| z.conj() * tinv.clone()).collect();
        let weight = Cx::new(vandermonde_sq::<R>(j) / nd.clone(), R::zero());
        samples.push((p(&scaled) * weight, inverse));
    }
    let mut coeffs = Vec::new();
    let mut filter_residual: f64 = 0.0;
    for nu in enumerate_box(shape) {
        let terms = samples
            .iter()
            .map(|(pw, inv)| Ok(pw.clone() * eval_schur(&nu, inv, SchurMethod::DualJacobiTrudi)?))
            .collect::<Result<Vec<_>>>()?;
        let m = pairwise_sum(&terms);
        if !(nu.size() + n - degree % n).is_multiple_of(n) {
            filter_residual = filter_residual.max(cabs_f64(&m));
        }
        coeffs.push((nu, m));
    }
    Ok(NumericExpansion {
        coeffs,
        filter_residual,
    })
}

/// Recovers the Schubert coefficients `p_{lambda,k}` of a homogeneous ring
/// element of the given degree from its values `p(u(zeta^J))` at the fiber
/// over `q = 1`.
pub fn expand_from_fiber_values(
    values: &dyn Fn(&IndexTuple) -> C64,
    degree: usize,
    shape: BoxShape,
) -> Result<RingElement> {
    let table = ViTable::<f64>::new(shape)?;
    let n = shape.n();
    let nd = (n as f64).powi(shape.d() as i32);
    let pv: Vec<C64> = table.tuples().iter().map(values).collect();
    let mut out = RingElement::zero(shape);
    for lambda in table.classes() {
        if lambda.size() > degree || !(degree - lambda.size()).is_multiple_of(n) {
            continue;
        }
        let k = (degree - lambda.size()) / n;
        let s = table.schur(lambda)?;
        let terms: Vec<C64> = (0..pv.len())
            .map(|j| pv[j] * s[j].conj() * table.vandermonde()[j] / nd)
            .collect();
        let v = round_sum(&pairwise_sum(&terms), Precision::Double);
        if !(v.residual < Precision::Double.rounding_threshold()) {
            return Err(Error::PrecisionFailure {
                residual: v.residual,
                threshold: Precision::Double.rounding_threshold(),
            });
        }
        let term = RingElement::schubert(lambda, shape)?
            .shift_q(k)
            .scale(&v.value);
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Coefficient of `q^k s_{(c^d)}` in `s_lambda s_mu`, as `(k, coeff)`; `None`
/// when the degree admits no such term or the coefficient vanishes.
pub fn quantum_pairing(lambda: &Partition, mu: &Partition, shape: BoxShape) -> Result<Option<(usize, BigInt)>> {
    let product = crate::qring::multiply(
        &RingElement::schubert(lambda, shape)?,
        &RingElement::schubert(mu, shape)?,
    )?;
    let total = lambda.size() + mu.size();
    let top = shape.dim();
    if total < top || !(total - top).is_multiple_of(shape.n()) {
        return Ok(None);
    }
    let k = (total - top) / shape.n();
    let coeff = product.coeff(k, &shape.top());
    Ok((!coeff.is_zero()).then_some((k, coeff)))
}

/// One row of a Gromov–Witten table.
#[derive(Clone, Debug, Serialize)]
pub struct GwRow {
    pub d: usize,
    pub n: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub k: usize,
    /// From the Pieri engine.
    #[serde(serialize_with = "big_as_number")]
    pub value: BigInt,
    /// Rounded Vafa–Intriligator sum.
    #[serde(serialize_with = "big_as_number")]
    pub vi: BigInt,
    pub residual: f64,
}

fn big_as_number<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// All triples with an admissible `k`, computed by both engines.
#[derive(Clone, Debug)]
pub struct GwTable {
    pub shape: BoxShape,
    /// Every admissible `(lambda, mu, nu, k)`, including zeros.
    pub rows: Vec<GwRow>,
    pub threshold: f64,
}

impl GwTable {
    pub fn nonzero_rows(&self) -> impl Iterator<Item = &GwRow> {
        self.rows
            .iter()
            .filter(|r| !r.value.is_zero() || !r.vi.is_zero())
    }

    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn mismatches(&self) -> Vec<&GwRow> {
        self.rows.iter().filter(|r| r.value != r.vi).collect()
    }

    pub fn ok(&self) -> bool {
        self.mismatches().is_empty() && self.max_residual() < self.threshold
    }

    pub fn write_json_lines<W: Write>(&self, mut w: W) -> Result<()> {
        for row in self.nonzero_rows() {
            let line = serde_json::to_string(row).map_err(|e| Error::Parse(e.to_string()))?;
            writeln!(w, "{line}").map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        out.write_record(["d", "n", "lambda", "mu", "nu", "k", "value", "vi", "residual"])
            .map_err(io)?;
        let bracket = |p: &Partition| {
            let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        };
        for r in self.nonzero_rows() {
            out.write_record([
                r.d.to_string(),
                r.n.to_string(),
                bracket(&r.lambda),
                bracket(&r.mu),
                bracket(&r.nu),
                r.k.to_string(),
                r.value.to_string(),
                r.vi.to_string(),
                format!("{:e}", r.residual),
            ])
            .map_err(io)?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

/// Builds the table for `shape` in the global precision.
pub fn gw_table(shape: BoxShape) -> Result<GwTable> {
    match precision() {
        Precision::Double => gw_table_with::<f64>(shape),
        Precision::Extended { .. } => gw_table_with::<Ext>(shape),
    }
}

pub fn gw_table_with<R: Real>(shape: BoxShape) -> Result<GwTable> {
    let vi = ViTable::<R>::new(shape)?;
    let products: HashMap<(Partition, Partition), RingElement> = product_table(shape)?
        .into_iter()
        .map(|(l, m, p)| ((l, m), p))
        .collect();
    let classes = enumerate_box(shape);
    let (d, n, top) = (shape.d(), shape.n(), shape.dim());
    let mut cells = Vec::new();
    for l in &classes {
        for m in &classes {
            for v in &classes {
                let total = l.size() + m.size() + v.size();
                if total >= top && (total - top) % n == 0 {
                    cells.push((l, m, v, (total - top) / n));
                }
            }
        }
    }
    let rows = cells
        .into_par_iter()
        .map(|(l, m, v, k)| {
            let value = products[&(l.clone(), m.clone())]
                .coeff(k, &crate::partitions::poincare_dual(v, shape)?);
            let numeric = vi.evaluate(l, m, v, k)?;
            Ok(GwRow {
                d,
                n,
                lambda: l.clone(),
                mu: m.clone(),
                nu: v.clone(),
                k,
                value,
                vi: numeric.value,
                residual: numeric.residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GwTable {
        shape,
        rows,
        threshold: carrier_precision::<R>().rounding_threshold(),
    })
}

/// `sum_J m(zeta^J)` for a callable `m`.
pub fn fiber_sum<R: Real>(m: &dyn Fn(&[Cx<R>]) -> Cx<R>, shape: BoxShape) -> Cx<R> {
    let terms: Vec<Cx<R>> = enumerate_index_tuples(shape)
        .iter()
        .map(|j| m(&j.roots::<R>()))
        .collect();
    if terms.is_empty() {
        return czero();
    }
    pairwise_sum(&terms)
}
