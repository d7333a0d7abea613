//! Unipotent upper-triangular Toeplitz matrices: points of `(U^+)^e` and of
//! `V_{d,n}`, their minors, strata and the evaluation homomorphism.

use std::collections::BTreeSet;
use std::io::Write;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::{det, C64};
use crate::partitions::{BoxShape, Partition};
use crate::qring::RingElement;
use crate::rootdata::{enumerate_index_tuples, IndexTuple};
use crate::symfun::{elementary_all, homogeneous_all};

/// Absolute membership tolerance before scaling by `max(1, |t|^n)`.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// An upper unitriangular `n x n` Toeplitz matrix stored by its bands
/// `x_1, ..., x_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzPoint {
    shape: BoxShape,
    x: Vec<C64>,
    provenance: Option<(C64, IndexTuple)>,
}

/// `u_n(z)`: bands `x_j = E_j(z)`, zero past `d`.
pub fn build_point(z: &[C64], shape: BoxShape) -> Result<ToeplitzPoint> {
    if z.len() != shape.d() {
        return Err(Error::Parse(format!(
            "expected {} entries, got {}",
            shape.d(),
            z.len()
        )));
    }
    let e = elementary_all(z, shape.n() - 1);
    Ok(ToeplitzPoint {
        shape,
        x: e[1..].to_vec(),
        provenance: None,
    })
}

/// `u_n(t zeta^I)`, remembering `(t, I)`.
pub fn point_at(t: C64, index: &IndexTuple) -> ToeplitzPoint {
    let z: Vec<C64> = index.roots::<f64>().iter().map(|r| r * t).collect();
    let mut u = build_point(&z, index.shape()).expect("index tuple has d entries");
    u.provenance = Some((t, index.clone()));
    u
}

/// The fiber over `q = 1`: `u_n(zeta^I)` for every `I`.
pub fn fiber_points(shape: BoxShape) -> Vec<ToeplitzPoint> {
    enumerate_index_tuples(shape)
        .iter()
        .map(|i| point_at(C64::new(1.0, 0.0), i))
        .collect()
}

/// `(H_{c+1}(z), ..., H_{n-1}(z))`.
pub fn membership_residuals(z: &[C64], shape: BoxShape) -> Vec<C64> {
    let h = homogeneous_all(z, shape.n() - 1);
    h[shape.c() + 1..].to_vec()
}

impl ToeplitzPoint {
    /// A point with arbitrary bands; `x` has `n - 1` entries.
    pub fn from_bands(x: Vec<C64>, shape: BoxShape) -> Result<Self> {
        if x.len() != shape.n() - 1 {
            return Err(Error::Parse(format!(
                "expected {} band entries, got {}",
                shape.n() - 1,
                x.len()
            )));
        }
        Ok(ToeplitzPoint {
            shape,
            x,
            provenance: None,
        })
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// `x_1, ..., x_{n-1}`.
    pub fn bands(&self) -> &[C64] {
        &self.x
    }

    /// `x_j`, with `x_0 = 1` and zero outside `0..n`.
    pub fn band(&self, j: i64) -> C64 {
        match j {
            0 => C64::new(1.0, 0.0),
            j if j < 0 || j as usize >= self.n() => C64::zero(),
            j => self.x[j as usize - 1],
        }
    }

    pub fn provenance(&self) -> Option<&(C64, IndexTuple)> {
        self.provenance.as_ref()
    }

    pub fn dense(&self) -> Vec<Vec<C64>> {
        let n = self.n();
        (0..n)
            .map(|r| (0..n).map(|s| self.band(s as i64 - r as i64)).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|v| v.is_zero())
    }

    /// Minor on 1-based `rows` and `cols` (equal lengths).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> C64 {
        assert_eq!(rows.len(), cols.len(), "minor needs a square selection");
        let m = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&s| self.band(s as i64 - r as i64))
                    .collect()
            })
            .collect();
        det(m)
    }

    /// `Delta_j`: rows `1..n-j`, columns `j+1..n`.
    pub fn corner_minor(&self, j: usize) -> Result<C64> {
        let n = self.n();
        if j == 0 || j >= n {
            return Err(Error::Parse(format!("corner minor index {j} not in 1..{n}")));
        }
        let rows: Vec<usize> = (1..=n - j).collect();
        let cols: Vec<usize> = (j + 1..=n).collect();
        Ok(self.minor(&rows, &cols))
    }

    /// `K_u = {j : |Delta_j(u)| < tol}`.
    pub fn stratum_signature(&self, tol: f64) -> BTreeSet<usize> {
        (1..self.n())
            .filter(|&j| self.corner_minor(j).expect("in range").norm() < tol)
            .collect()
    }

    /// `y_1, ..., y_{n-1}` with `y_k = det(x_{i-j+1})_{k x k}`.
    pub fn inverse_entries(&self) -> Vec<C64> {
        let mut y = self.y_upto(self.n() - 1);
        y.remove(0);
        y
    }

    fn y_upto(&self, m: usize) -> Vec<C64> {
        let mut y = vec![C64::new(1.0, 0.0)];
        for k in 1..=m {
            let mut acc = C64::zero();
            for j in 1..=k {
                let term = self.band(j as i64) * y[k - j];
                if j % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            y.push(acc);
        }
        y
    }

    /// `u^{-1}`, whose bands are `(-1)^k y_k`.
    pub fn inverse(&self) -> ToeplitzPoint {
        let x = self
            .inverse_entries()
            .iter()
            .enumerate()
            .map(|(i, y)| if i % 2 == 0 { -y } else { *y })
            .collect();
        ToeplitzPoint {
            shape: self.shape,
            x,
            provenance: None,
        }
    }

    /// The action `x_j -> t^j x_j`.
    pub fn scale(&self, t: C64) -> ToeplitzPoint {
        let x = self
            .x
            .iter()
            .enumerate()
            .map(|(i, v)| v * t.powu(i as u32 + 1))
            .collect();
        let provenance = self
            .provenance
            .as_ref()
            .map(|(s, i)| (s * t, i.clone()));
        ToeplitzPoint {
            shape: self.shape,
            x,
            provenance,
        }
    }

    /// `q(u) = (-1)^{d+1} y_n(u)`.
    pub fn q_value(&self) -> C64 {
        let y = self.y_upto(self.n())[self.n()];
        if self.shape.d() % 2 == 1 {
            y
        } else {
            -y
        }
    }

    /// `s_lambda(u) = det(x_{lambda^t_i - i + j})_{c x c}`.
    pub fn schubert_value(&self, lambda: &Partition) -> Result<C64> {
        lambda.check_fits(self.shape)?;
        let c = self.shape.c();
        let conj = lambda.conjugate();
        let m = (0..c)
            .map(|i| {
                (0..c)
                    .map(|j| {
                        let idx = conj.part(i) as i64 - i as i64 + j as i64;
                        if idx as usize > self.shape.d() {
                            C64::zero()
                        } else {
                            self.band(idx)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(det(m))
    }

    /// Largest of `|x_j|` for `j > d` and `|y_{c+1}|, ..., |y_{n-1}|`.
    pub fn membership_residual(&self) -> f64 {
        let (d, c, n) = (self.shape.d(), self.shape.c(), self.n());
        let y = self.y_upto(n - 1);
        let bands = (d + 1..n).map(|j| self.band(j as i64).norm());
        let relations = (c + 1..n).map(|k| y[k].norm());
        bands.chain(relations).fold(0.0, f64::max)
    }

    /// Tolerance `MEMBERSHIP_TOL * max(1, |t|^n)`, with `|t|^n` read off `|q(u)|`.
    pub fn membership_tolerance(&self) -> f64 {
        MEMBERSHIP_TOL * self.q_value().norm().max(1.0)
    }

    pub fn in_variety(&self) -> bool {
        self.membership_residual() < self.membership_tolerance()
    }

    /// Value of a ring element at this point.
    pub fn evaluate(&self, el: &RingElement) -> Result<C64> {
        if el.shape() != self.shape {
            return Err(Error::BoxMismatch);
        }
        let residual = self.membership_residual();
        if residual >= self.membership_tolerance() {
            return Err(Error::NotInVariety {
                d: self.shape.d(),
                n: self.n(),
                residual,
            });
        }
        let q = self.q_value();
        let mut acc = C64::zero();
        for (k, lambda, coeff) in el.terms() {
            let c: f64 = coeff.to_string().parse().expect("integer coefficient");
            acc += self.schubert_value(lambda)? * q.powu(k as u32) * c;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let x: Vec<[f64; 2]> = self.x.iter().map(|v| [v.re, v.im]).collect();
        let mut out = json!({ "d": self.shape.d(), "n": self.n(), "x": x });
        if let Some((t, i)) = &self.provenance {
            out["t"] = json!([t.re, t.im]);
            out["I"] = json!(i);
        }
        out
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("point JSON: {what}"));
        let field = |k: &str| value.get(k).and_then(Value::as_u64).ok_or_else(|| bad(k));
        let shape = BoxShape::new(field("d")? as usize, field("n")? as usize)?;
        let pair = |v: &Value| -> Result<C64> {
            match v.as_array().map(|a| a.as_slice()) {
                Some([re, im]) => Ok(C64::new(
                    re.as_f64().ok_or_else(|| bad("re"))?,
                    im.as_f64().ok_or_else(|| bad("im"))?,
                )),
                _ => v.as_f64().map(|re| C64::new(re, 0.0)).ok_or_else(|| bad("complex value")),
            }
        };
        let x = value
            .get("x")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("x"))?
            .iter()
            .map(pair)
            .collect::<Result<Vec<_>>>()?;
        let mut u = ToeplitzPoint::from_bands(x, shape)?;
        if let (Some(t), Some(i)) = (value.get("t"), value.get("I")) {
            u.provenance = Some((pair(t)?, IndexTuple::from_json(i, shape)?));
        }
        Ok(u)
    }

    /// Dense matrix as CSV, one row per line, entries `re+imi`.
    pub fn write_matrix_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for row in self.dense() {
            let cells: Vec<String> = row
                .iter()
                .map(|v| {
                    if v.im == 0.0 {
                        format!("{}", v.re)
                    } else {
                        format!("{}{:+}i", v.re, v.im)
                    }
                })
                .collect();
            out.write_record(&cells)
                .map_err(|e| Error::Parse(e.to_string()))?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))
    }
}
