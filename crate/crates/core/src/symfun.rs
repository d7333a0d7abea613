//! Numeric evaluation of elementary, complete homogeneous and Schur
//! polynomials at complex tuples.

use crate::error::{Error, Result};
use crate::numeric::{cabs_f64, cone, czero, det, Cx, Real};
use crate::partitions::Partition;

/// How [`eval_schur`] evaluates the Schur polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurMethod {
    /// Determinant in the elementary symmetric polynomials (size `lambda_1`).
    DualJacobiTrudi,
    /// Determinant in the complete homogeneous polynomials (size `d`).
    JacobiTrudi,
    /// Ratio of alternants; needs pairwise distinct entries.
    Bialternant,
}

/// `E_0, ..., E_upto` of `z`; entries past `d` are zero.
pub fn elementary_all<R: Real>(z: &[Cx<R>], upto: usize) -> Vec<Cx<R>> {
    let mut e = vec![czero::<R>(); upto + 1];
    e[0] = cone();
    for (i, zi) in z.iter().enumerate() {
        for j in (1..=(i + 1).min(upto)).rev() {
            e[j] = e[j].clone() + zi.clone() * e[j - 1].clone();
        }
    }
    e
}

/// `H_0, ..., H_upto` of `z`.
pub fn homogeneous_all<R: Real>(z: &[Cx<R>], upto: usize) -> Vec<Cx<R>> {
    // H_m(x_1..x_i) = H_m(x_1..x_{i-1}) + x_i H_{m-1}(x_1..x_i)
    let mut h = vec![czero::<R>(); upto + 1];
    h[0] = cone();
    for zi in z {
        for m in 1..=upto {
            h[m] = h[m].clone() + zi.clone() * h[m - 1].clone();
        }
    }
    h
}

pub fn eval_elementary<R: Real>(k: usize, z: &[Cx<R>]) -> Cx<R> {
    if k > z.len() {
        return czero();
    }
    elementary_all(z, k).pop().expect("k + 1 entries")
}

pub fn eval_homogeneous<R: Real>(k: usize, z: &[Cx<R>]) -> Cx<R> {
    homogeneous_all(z, k).pop().expect("k + 1 entries")
}

fn at<R: Real>(table: &[Cx<R>], idx: i64) -> Cx<R> {
    if idx < 0 {
        czero()
    } else {
        table.get(idx as usize).cloned().unwrap_or_else(czero)
    }
}

/// `det(table[lambda_i - i + j])` for `i, j = 1..size`, with `table[k] = 0`
/// for `k < 0` or past the end.
pub(crate) fn jt_determinant<R: Real>(parts: &Partition, size: usize, table: &[Cx<R>]) -> Cx<R> {
    let m = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| at(table, parts.part(i) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    det(m)
}

/// `S_lambda(z)`. Partitions with more than `d = z.len()` parts give zero.
pub fn eval_schur<R: Real>(lambda: &Partition, z: &[Cx<R>], method: SchurMethod) -> Result<Cx<R>> {
    let d = z.len();
    if lambda.len() > d {
        return Ok(czero());
    }
    match method {
        SchurMethod::DualJacobiTrudi => {
            let conj = lambda.conjugate();
            let size = conj.len();
            let e = elementary_all(z, d);
            Ok(jt_determinant(&conj, size, &e))
        }
        SchurMethod::JacobiTrudi => {
            let h = homogeneous_all(z, lambda.part(0) + d);
            Ok(jt_determinant(lambda, d, &h))
        }
        SchurMethod::Bialternant => {
            let scale = z.iter().map(cabs_f64).fold(1.0, f64::max);
            for a in 0..d {
                for b in a + 1..d {
                    if cabs_f64(&(z[a].clone() - z[b].clone())) <= 1e-13 * scale {
                        return Err(Error::Degenerate(format!(
                            "bialternant needs distinct entries; entries {a} and {b} coincide"
                        )));
                    }
                }
            }
            let alternant = |shift: &dyn Fn(usize) -> usize| {
                let m = (0..d)
                    .map(|i| z.iter().map(|zj| zj.powu(shift(i) as u32)).collect())
                    .collect();
                det(m)
            };
            let num = alternant(&|i| lambda.part(i) + d - 1 - i);
            let den = alternant(&|i| d - 1 - i);
            Ok(num / den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::C64;
    use crate::partitions::{enumerate_box, BoxShape};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_tuple(rng: &mut ChaCha8Rng, d: usize) -> Vec<C64> {
        (0..d)
            .map(|_| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect()
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1.0)
    }

    #[test]
    fn elementary_values() {
        let z = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 1.0)];
        assert_eq!(eval_elementary(0, &z), c(1.0, 0.0));
        assert_eq!(eval_elementary(1, &z), c(6.0, 1.0));
        assert_eq!(eval_elementary(4, &z), c(0.0, 0.0));
        let w = std::f64::consts::FRAC_PI_4;
        let pair = vec![C64::from_polar(1.0, -w), C64::from_polar(1.0, w)];
        assert!((eval_elementary(2, &pair) - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(eval_elementary(3, &pair), c(0.0, 0.0));
    }

    #[test]
    fn homogeneous_values() {
        assert_eq!(eval_homogeneous(3, &[c(1.0, 0.0), c(-1.0, 0.0)]), c(0.0, 0.0));
        let t = c(0.7, -0.2);
        assert!((eval_homogeneous(5, &[t]) - t.powu(5)).norm() < 1e-15);
        for n in 2..9u32 {
            let z = c(0.9, 0.3);
            let lhs = eval_homogeneous((n - 1) as usize, &[z, z]);
            assert!(rel(lhs, z.powu(n - 1) * n as f64) < 1e-13);
        }
        assert_eq!(eval_homogeneous(0, &[c(5.0, 0.0)]), c(1.0, 0.0));
    }

    #[test]
    fn schur_special_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=4 {
            let z = random_tuple(&mut rng, d);
            let empty = eval_schur(&Partition::empty(), &z, SchurMethod::JacobiTrudi).unwrap();
            assert_eq!(empty, c(1.0, 0.0));
            for k in 1..=d {
                let s = eval_schur(&Partition::column(k), &z, SchurMethod::JacobiTrudi).unwrap();
                assert!(rel(s, eval_elementary(k, &z)) < 1e-12);
            }
            for k in 1..=4 {
                let s = eval_schur(&Partition::row(k), &z, SchurMethod::DualJacobiTrudi).unwrap();
                assert!(rel(s, eval_homogeneous(k, &z)) < 1e-12);
            }
        }
        let z = random_tuple(&mut rng, 2);
        let s = eval_schur(&Partition::column(3), &z, SchurMethod::DualJacobiTrudi).unwrap();
        assert_eq!(s, c(0.0, 0.0));
    }

    #[test]
    fn methods_agree_on_random_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let shapes = [(2, 5), (3, 6), (4, 8)];
        for trial in 0..50 {
            let (d, n) = shapes[trial % shapes.len()];
            let z = random_tuple(&mut rng, d);
            for l in enumerate_box(BoxShape::new(d, n).unwrap()) {
                let a = eval_schur(&l, &z, SchurMethod::DualJacobiTrudi).unwrap();
                let b = eval_schur(&l, &z, SchurMethod::JacobiTrudi).unwrap();
                let c3 = eval_schur(&l, &z, SchurMethod::Bialternant).unwrap();
                assert!(rel(a, b) < 1e-10, "{l}: {a} vs {b}");
                assert!(rel(a, c3) < 1e-10, "{l}: {a} vs {c3}");
            }
        }
    }

    #[test]
    fn bialternant_rejects_repeats() {
        let z = vec![c(1.0, 0.0), c(1.0, 0.0)];
        let err = eval_schur(&Partition::row(1), &z, SchurMethod::Bialternant);
        assert!(matches!(err, Err(Error::Degenerate(_))));
        assert!(eval_schur(&Partition::row(1), &z, SchurMethod::JacobiTrudi).is_ok());
    }

    #[test]
    fn homogeneity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let z = random_tuple(&mut rng, 3);
            let t = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let tz: Vec<C64> = z.iter().map(|v| v * t).collect();
            for l in enumerate_box(BoxShape::new(3, 6).unwrap()) {
                let lhs = eval_schur(&l, &tz, SchurMethod::JacobiTrudi).unwrap();
                let rhs = eval_schur(&l, &z, SchurMethod::JacobiTrudi).unwrap()
                    * t.powu(l.size() as u32);
                assert!(rel(lhs, rhs) < 1e-10);
            }
        }
    }

    #[test]
    fn littlewood_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 1..=3 {
            for cc in 1..=3 {
                let shape = BoxShape::new(d, d + cc).unwrap();
                let z = random_tuple(&mut rng, d);
                let w = random_tuple(&mut rng, cc);
                let lhs: C64 = enumerate_box(shape)
                    .iter()
                    .map(|l| {
                        eval_schur(l, &z, SchurMethod::JacobiTrudi).unwrap()
                            * eval_schur(&l.conjugate(), &w, SchurMethod::JacobiTrudi).unwrap()
                    })
                    .sum();
                let rhs: C64 = z
                    .iter()
                    .flat_map(|zi| w.iter().map(move |wj| c(1.0, 0.0) + zi * wj))
                    .product();
                assert!(rel(lhs, rhs) < 1e-9, "d={d} c={cc}");
            }
        }
    }
}
