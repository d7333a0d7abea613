//! Exact arithmetic in `Lambda_{d,n} = Z[X_1..X_d] / (Y_{c+1}, ..., Y_{n-1})`
//! in the Schubert basis `{q^k s_lambda}`.
//!
//! Multiplication by a generator `X_k` is the dual quantum Pieri rule; a
//! general product expands the second factor into `X`-monomials and folds
//! Pieri steps onto the first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_box, poincare_dual, BoxShape, Partition};

/// A signed monomial `coeff * X_1^{e_1} ... X_d^{e_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMonomial {
    pub exponents: Vec<u32>,
    pub coeff: BigInt,
}

impl XMonomial {
    /// Weighted degree `sum_j j * e_j`.
    pub fn degree(&self) -> usize {
        self.exponents
            .iter()
            .enumerate()
            .map(|(j, &e)| (j + 1) * e as usize)
            .sum()
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                if e == 1 {
                    format!("X{}", j + 1)
                } else {
                    format!("X{}^{}", j + 1, e)
                }
            })
            .collect();
        if vars.is_empty() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff == -BigInt::one() {
            write!(f, "-")?;
        } else if !self.coeff.is_one() {
            write!(f, "{}*", self.coeff)?;
        }
        write!(f, "{}", vars.join("*"))
    }
}

/// Polynomial in `X_1..X_d` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XPolynomial {
    d: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl XPolynomial {
    pub fn zero(d: usize) -> Self {
        XPolynomial {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, value: BigInt) -> Self {
        let mut p = XPolynomial::zero(d);
        p.add_term(vec![0; d], value);
        p
    }

    /// `X_j` for `1 <= j <= d`; `X_0 = 1` and `X_j = 0` otherwise.
    pub fn generator(d: usize, j: i64) -> Self {
        if j == 0 {
            return XPolynomial::constant(d, BigInt::one());
        }
        if j < 0 || j as usize > d {
            return XPolynomial::zero(d);
        }
        let mut e = vec![0; d];
        e[j as usize - 1] = 1;
        let mut p = XPolynomial::zero(d);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> XPolynomial {
        let mut out = XPolynomial::zero(self.d);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = XPolynomial::zero(self.d);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn monomials(&self) -> Vec<XMonomial> {
        self.terms
            .iter()
            .map(|(e, c)| XMonomial {
                exponents: e.clone(),
                coeff: c.clone(),
            })
            .collect()
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.monomials().iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Determinant of a square matrix of polynomials, by a dynamic program over
/// the set of used columns.
fn polynomial_det(d: usize, m: &[Vec<XPolynomial>]) -> XPolynomial {
    let size = m.len();
    if size == 0 {
        return XPolynomial::constant(d, BigInt::one());
    }
    let mut layer: HashMap<u32, XPolynomial> = HashMap::new();
    layer.insert(0, XPolynomial::constant(d, BigInt::one()));
    for row in m {
        let mut next: HashMap<u32, XPolynomial> = HashMap::new();
        for (&mask, acc) in &layer {
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (j + 1)).count_ones();
                let mut term = acc.mul(entry);
                if inversions % 2 == 1 {
                    term = term.scale(&-BigInt::one());
                }
                let slot = next
                    .entry(mask | (1 << j))
                    .or_insert_with(|| XPolynomial::zero(d));
                *slot = slot.add(&term);
            }
        }
        layer = next;
    }
    layer
        .remove(&((1u32 << size) - 1))
        .unwrap_or_else(|| XPolynomial::zero(d))
}

/// `s_lambda = det(X_{lambda^t_i - i + j})_{c x c}` as a polynomial in the `X_j`.
pub fn schubert_polynomial(lambda: &Partition, shape: BoxShape) -> Result<XPolynomial> {
    lambda.check_fits(shape)?;
    let (d, c) = (shape.d(), shape.c());
    let conj = lambda.conjugate();
    let m: Vec<Vec<XPolynomial>> = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| XPolynomial::generator(d, conj.part(i) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    Ok(polynomial_det(d, &m))
}

/// Signed monomial expansion of `s_lambda`.
pub fn expand_schubert_poly(lambda: &Partition, shape: BoxShape) -> Result<Vec<XMonomial>> {
    Ok(schubert_polynomial(lambda, shape)?.monomials())
}

/// `Y_m = det(X_{i-j+1})_{m x m}`, via `Y_m = sum_j (-1)^{j+1} X_j Y_{m-j}`.
pub fn y_polynomial(m: usize, d: usize) -> XPolynomial {
    let mut ys = vec![XPolynomial::constant(d, BigInt::one())];
    for k in 1..=m {
        let mut acc = XPolynomial::zero(d);
        for j in 1..=d.min(k) {
            let term = XPolynomial::generator(d, j as i64).mul(&ys[k - j]);
            let sign = if j % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            acc = acc.add(&term.scale(&sign));
        }
        ys.push(acc);
    }
    ys.pop().expect("at least Y_0")
}

/// Element of `Lambda_{d,n}`: finite sum of `coeff * q^k s_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    shape: BoxShape,
    terms: BTreeMap<(usize, Partition), BigInt>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: usize,
    lambda: Partition,
    coeff: String,
}

impl RingElement {
    pub fn zero(shape: BoxShape) -> Self {
        RingElement {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: BoxShape) -> Self {
        RingElement::monomial(shape, 0, Partition::empty(), BigInt::one())
    }

    /// The Schubert class `s_lambda`.
    pub fn schubert(lambda: &Partition, shape: BoxShape) -> Result<Self> {
        lambda.check_fits(shape)?;
        Ok(RingElement::monomial(shape, 0, lambda.clone(), BigInt::one()))
    }

    /// `q^k`.
    pub fn q_power(shape: BoxShape, k: usize) -> Self {
        RingElement::monomial(shape, k, Partition::empty(), BigInt::one())
    }

    fn monomial(shape: BoxShape, k: usize, lambda: Partition, coeff: BigInt) -> Self {
        let mut el = RingElement::zero(shape);
        el.add_term(k, lambda, coeff);
        el
    }

    /// The generator `X_j = s_{(1^j)}`.
    pub fn x_generator(shape: BoxShape, j: usize) -> Result<Self> {
        if j == 0 || j > shape.d() {
            return Err(Error::PieriDegree { k: j, d: shape.d() });
        }
        RingElement::schubert(&Partition::column(j), shape)
    }

    /// Image of an `X`-polynomial in the ring.
    pub fn from_x_polynomial(poly: &XPolynomial, shape: BoxShape) -> Result<Self> {
        if poly.nvars() != shape.d() {
            return Err(Error::BoxMismatch);
        }
        let one = RingElement::one(shape);
        let mut out = RingElement::zero(shape);
        for mono in poly.monomials() {
            out = out.add(&apply_monomial(&one, &mono.exponents)?.scale(&mono.coeff))?;
        }
        Ok(out)
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: usize, lambda: &Partition) -> BigInt {
        self.terms
            .get(&(k, lambda.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// `(k, lambda, coeff)` triples in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Partition, &BigInt)> {
        self.terms.iter().map(|((k, l), c)| (*k, l, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree `k n + |lambda|` if all terms share it.
    pub fn degree(&self) -> Option<usize> {
        let n = self.shape.n();
        let mut degrees = self.terms.keys().map(|(k, l)| k * n + l.size());
        let first = degrees.next()?;
        degrees.all(|g| g == first).then_some(first)
    }

    fn add_term(&mut self, k: usize, lambda: Partition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (k, lambda);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        if self.shape != other.shape {
            return Err(Error::BoxMismatch);
        }
        let mut out = self.clone();
        for ((k, l), c) in &other.terms {
            out.add_term(*k, l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, factor: &BigInt) -> RingElement {
        let mut out = RingElement::zero(self.shape);
        for ((k, l), c) in &self.terms {
            out.add_term(*k, l.clone(), c * factor);
        }
        out
    }

    /// Multiplies by `q^j`.
    pub fn shift_q(&self, j: usize) -> RingElement {
        RingElement {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .map(|((k, l), c)| ((k + j, l.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|((k, l), c)| TermRepr {
                k: *k,
                lambda: l.clone(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }

    pub fn from_json(value: &serde_json::Value, shape: BoxShape) -> Result<Self> {
        let terms: Vec<TermRepr> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = RingElement::zero(shape);
        for t in terms {
            t.lambda.check_fits(shape)?;
            let coeff: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            out.add_term(t.k, t.lambda, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((k, l), c) in &self.terms {
            let neg = c.is_negative();
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q*")?,
                _ => write!(f, "q^{k}*")?,
            }
            write!(f, "s{l}")?;
        }
        Ok(())
    }
}

/// Dual quantum Pieri rule for `X_k s_lambda`: `(q-exponent, partition)` terms,
/// all with coefficient one.
pub fn pieri_terms(lambda: &Partition, k: usize, shape: BoxShape) -> Result<Vec<(usize, Partition)>> {
    let (d, c, n) = (shape.d(), shape.c(), shape.n());
    if k == 0 || k > d {
        return Err(Error::PieriDegree { k, d });
    }
    lambda.check_fits(shape)?;
    let conj: Vec<usize> = (0..c).map(|j| lambda.conjugate().part(j)).collect();
    let size = lambda.size();
    let mut out = Vec::new();

    // Classical part: nu^t_1 >= lambda^t_1 >= nu^t_2 >= ... >= nu^t_c >= lambda^t_c, nu^t_1 <= d.
    let classical_bounds: Vec<(usize, usize)> = (0..c)
        .map(|j| (conj[j], if j == 0 { d } else { conj[j - 1] }))
        .collect();
    for cols in interlacing(&classical_bounds, size + k) {
        out.push((0, conjugate_columns(&cols)));
    }

    // q-part: lambda^t_j - 1 >= mu^t_j >= lambda^t_{j+1} - 1, needs lambda^t_c >= 1.
    if conj[c - 1] >= 1 && size + k >= n {
        let quantum_bounds: Vec<(usize, usize)> = (0..c)
            .map(|j| {
                let next = if j + 1 < c { conj[j + 1] } else { 0 };
                (next.saturating_sub(1), conj[j] - 1)
            })
            .collect();
        for cols in interlacing(&quantum_bounds, size + k - n) {
            out.push((1, conjugate_columns(&cols)));
        }
    }
    Ok(out)
}

/// Integer vectors with `lo_j <= v_j <= hi_j` and the given sum.
fn interlacing(bounds: &[(usize, usize)], total: usize) -> Vec<Vec<usize>> {
    fn rec(bounds: &[(usize, usize)], remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(&(lo, hi)) = bounds.first() else {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let rest = &bounds[1..];
        let rest_min: usize = rest.iter().map(|b| b.0).sum();
        let rest_max: usize = rest.iter().map(|b| b.1).sum();
        for v in lo..=hi.min(remaining) {
            let left = remaining - v;
            if left < rest_min || left > rest_max {
                continue;
            }
            prefix.push(v);
            rec(rest, left, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if bounds.iter().any(|&(lo, hi)| lo > hi) {
        return out;
    }
    rec(bounds, total, &mut Vec::new(), &mut out);
    out
}

fn conjugate_columns(cols: &[usize]) -> Partition {
    Partition::new(cols.to_vec())
        .expect("interlacing columns are weakly decreasing")
        .conjugate()
}

/// `X_k * el` in the Schubert basis.
pub fn pieri_multiply(el: &RingElement, k: usize) -> Result<RingElement> {
    let shape = el.shape;
    if k == 0 || k > shape.d() {
        return Err(Error::PieriDegree { k, d: shape.d() });
    }
    let mut out = RingElement::zero(shape);
    for ((qk, lambda), coeff) in &el.terms {
        for (shift, nu) in pieri_terms(lambda, k, shape)? {
            out.add_term(qk + shift, nu, coeff.clone());
        }
    }
    Ok(out)
}

fn apply_monomial(el: &RingElement, exponents: &[u32]) -> Result<RingElement> {
    let mut acc = el.clone();
    for (j, &e) in exponents.iter().enumerate() {
        for _ in 0..e {
            acc = pieri_multiply(&acc, j + 1)?;
        }
    }
    Ok(acc)
}

/// Product in `Lambda_{d,n}`: expands `b` into `X`-monomials and folds
/// Pieri steps onto `a`.
pub fn multiply(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    if a.shape != b.shape {
        return Err(Error::BoxMismatch);
    }
    let shape = a.shape;
    let mut expansions: HashMap<Partition, Vec<XMonomial>> = HashMap::new();
    let mut out = RingElement::zero(shape);
    for ((k, mu), coeff) in &b.terms {
        if !expansions.contains_key(mu) {
            expansions.insert(mu.clone(), expand_schubert_poly(mu, shape)?);
        }
        for mono in &expansions[mu] {
            let term = apply_monomial(a, &mono.exponents)?
                .shift_q(*k)
                .scale(&(coeff * &mono.coeff));
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// [`multiply`] in both orders; fails if the two disagree.
pub fn multiply_checked(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    let ab = multiply(a, b)?;
    let ba = multiply(b, a)?;
    if ab != ba {
        return Err(Error::Degenerate(format!(
            "product depends on factor order: {ab} vs {ba}"
        )));
    }
    Ok(ab)
}

/// `<s_lambda, s_mu, s_nu>_k`: coefficient of `q^k s_{PD(nu)}` in `s_lambda s_mu`.
pub fn structure_constant(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    k: usize,
    shape: BoxShape,
) -> Result<BigInt> {
    for p in [lambda, mu, nu] {
        p.check_fits(shape)?;
    }
    if shape.dim() + k * shape.n() != lambda.size() + mu.size() + nu.size() {
        return Ok(BigInt::zero());
    }
    let product = multiply(
        &RingElement::schubert(lambda, shape)?,
        &RingElement::schubert(mu, shape)?,
    )?;
    Ok(product.coeff(k, &poincare_dual(nu, shape)?))
}

/// All products `s_lambda s_mu` for `lambda, mu` in the box, in enumeration order.
pub fn product_table(shape: BoxShape) -> Result<Vec<(Partition, Partition, RingElement)>> {
    use rayon::prelude::*;
    let classes = enumerate_box(shape);
    let pairs: Vec<(Partition, Partition)> = classes
        .iter()
        .flat_map(|l| classes.iter().map(move |m| (l.clone(), m.clone())))
        .collect();
    pairs
        .into_par_iter()
        .map(|(l, m)| {
            let p = multiply(
                &RingElement::schubert(&l, shape)?,
                &RingElement::schubert(&m, shape)?,
            )?;
            Ok((l, m, p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn b(d: usize, n: usize) -> BoxShape {
        BoxShape::new(d, n).unwrap()
    }

    fn s(parts: &[usize], shape: BoxShape) -> RingElement {
        RingElement::schubert(&p(parts), shape).unwrap()
    }

    #[test]
    fn pieri_examples() {
        let sh = b(2, 4);
        let x1 = pieri_multiply(&s(&[2, 1], sh), 1).unwrap();
        let expect = s(&[2, 2], sh).add(&RingElement::q_power(sh, 1)).unwrap();
        assert_eq!(x1, expect);
        assert_eq!(pieri_multiply(&s(&[1, 1], sh), 2).unwrap(), s(&[2, 2], sh));
        assert_eq!(pieri_multiply(&RingElement::one(sh), 1).unwrap(), s(&[1], sh));
        assert!(matches!(
            pieri_multiply(&s(&[1], sh), 3),
            Err(Error::PieriDegree { .. })
        ));
    }

    #[test]
    fn schubert_polynomial_examples() {
        let sh = b(2, 4);
        assert_eq!(schubert_polynomial(&p(&[1, 1]), sh).unwrap().to_string(), "X2");
        let s2 = schubert_polynomial(&p(&[2]), sh).unwrap();
        let expect = XPolynomial::generator(2, 1)
            .mul(&XPolynomial::generator(2, 1))
            .add(&XPolynomial::generator(2, 2).scale(&-BigInt::one()));
        assert_eq!(s2, expect);
        let s22 = schubert_polynomial(&p(&[2, 2]), sh).unwrap();
        assert_eq!(s22, XPolynomial::generator(2, 2).mul(&XPolynomial::generator(2, 2)));
        assert_eq!(
            schubert_polynomial(&p(&[]), sh).unwrap(),
            XPolynomial::constant(2, BigInt::one())
        );
    }

    #[test]
    fn small_products() {
        let sh = b(2, 4);
        assert_eq!(multiply(&s(&[2], sh), &s(&[2], sh)).unwrap(), s(&[2, 2], sh));
        assert_eq!(multiply(&s(&[1, 1], sh), &s(&[1, 1], sh)).unwrap(), s(&[2, 2], sh));
        let el = s(&[2, 1], sh).add(&s(&[1], sh).shift_q(2)).unwrap();
        assert_eq!(multiply(&RingElement::one(sh), &el).unwrap(), el);
        assert_eq!(multiply(&el, &RingElement::one(sh)).unwrap(), el);
    }

    #[test]
    fn named_structure_constants() {
        let sh = b(2, 4);
        let sc = |l: &[usize], m: &[usize], n: &[usize], k| {
            structure_constant(&p(l), &p(m), &p(n), k, sh).unwrap()
        };
        assert_eq!(sc(&[1], &[2, 1], &[2, 2], 1), BigInt::one());
        assert_eq!(sc(&[1], &[1], &[1, 1], 0), BigInt::one());
        assert_eq!(sc(&[1, 1], &[1, 1], &[2, 2], 1), BigInt::zero());
        // degree mismatch
        assert_eq!(sc(&[1], &[1], &[1], 0), BigInt::zero());
        let d1 = b(1, 2);
        let one = structure_constant(&p(&[1]), &p(&[1]), &p(&[1]), 1, d1).unwrap();
        assert_eq!(one, BigInt::one());
    }

    #[test]
    fn relations_vanish() {
        for (d, n) in [(1, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 7)] {
            let sh = b(d, n);
            for m in sh.c() + 1..n {
                let y = RingElement::from_x_polynomial(&y_polynomial(m, d), sh).unwrap();
                assert!(y.is_zero(), "Y_{m} = {y} in {sh}");
            }
            let yn = RingElement::from_x_polynomial(&y_polynomial(n, d), sh).unwrap();
            let sign = if d % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(yn, RingElement::q_power(sh, 1).scale(&sign));
            // q = X_d Y_c
            let xd_yc = RingElement::from_x_polynomial(
                &XPolynomial::generator(d, d as i64).mul(&y_polynomial(sh.c(), d)),
                sh,
            )
            .unwrap();
            assert_eq!(xd_yc, RingElement::q_power(sh, 1));
        }
    }

    #[test]
    fn y_is_the_determinant() {
        // Y_3 = X1^3 - 2 X1 X2 + X3 for d = 3
        let y3 = y_polynomial(3, 3);
        let x = |j| XPolynomial::generator(3, j);
        let expect = x(1)
            .mul(&x(1))
            .mul(&x(1))
            .add(&x(1).mul(&x(2)).scale(&BigInt::from(-2)))
            .add(&x(3));
        assert_eq!(y3, expect);
        // Y_k = s_(k) for k <= c
        let sh = b(2, 5);
        for k in 1..=3 {
            assert_eq!(y_polynomial(k, 2), schubert_polynomial(&Partition::row(k), sh).unwrap());
        }
    }

    #[test]
    fn symmetric_variant_agrees() {
        let sh = b(3, 6);
        let a = s(&[2, 1], sh).add(&s(&[3], sh)).unwrap();
        let c = s(&[2, 2, 1], sh).scale(&BigInt::from(3));
        assert!(multiply_checked(&a, &c).is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let sh = b(2, 4);
        let el = s(&[2, 2], sh)
            .add(&RingElement::q_power(sh, 1).scale(&BigInt::from(-7)))
            .unwrap();
        let v = el.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"coeff":"1","k":0,"lambda":[2,2]},{"coeff":"-7","k":1,"lambda":[]}]"#
        );
        assert_eq!(RingElement::from_json(&v, sh).unwrap(), el);
        assert!(RingElement::from_json(&v, b(1, 3)).is_err());
    }

    #[test]
    fn display() {
        let sh = b(2, 4);
        let el = s(&[2, 2], sh).add(&RingElement::q_power(sh, 1)).unwrap();
        assert_eq!(el.to_string(), "s(2,2) + q*s()");
        assert_eq!(el.degree(), Some(4));
    }
}
