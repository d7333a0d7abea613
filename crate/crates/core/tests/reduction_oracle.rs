//! Independent normal form in Z[X_1..X_d, q] modulo the defining ideal,
//! computed by linear algebra over a large prime field.

use std::collections::{BTreeMap, HashMap};

use qgrass::partitions::{enumerate_box, BoxShape, Partition};
use qgrass::qring::{multiply, pieri_multiply, schubert_polynomial, RingElement};

const P: u64 = (1 << 61) - 1;

fn addm(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn subm(a: u64, b: u64) -> u64 {
    addm(a, P - b)
}

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    powm(a, P - 2)
}

fn from_i64(v: i64) -> u64 {
    if v >= 0 {
        v as u64 % P
    } else {
        P - ((-v) as u64 % P)
    }
}

fn lift(v: u64) -> i64 {
    if v > P / 2 {
        -((P - v) as i64)
    } else {
        v as i64
    }
}

/// Exponents of `X_1..X_d` then `q`.
type Mono = Vec<u32>;

#[derive(Clone, Debug, Default)]
struct Poly(BTreeMap<Mono, u64>);

impl Poly {
    fn term(m: Mono, c: u64) -> Poly {
        let mut p = Poly::default();
        if c != 0 {
            p.0.insert(m, c);
        }
        p
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            let e = out.0.entry(m.clone()).or_insert(0);
            *e = addm(*e, *c);
            if *e == 0 {
                out.0.remove(m);
            }
        }
        out
    }

    fn scale(&self, s: u64) -> Poly {
        Poly(
            self.0
                .iter()
                .map(|(m, c)| (m.clone(), mulm(*c, s)))
                .filter(|(_, c)| *c != 0)
                .collect(),
        )
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out: BTreeMap<Mono, u64> = BTreeMap::new();
        for (a, ca) in &self.0 {
            for (b, cb) in &o.0 {
                let m: Mono = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let e = out.entry(m).or_insert(0);
                *e = addm(*e, mulm(*ca, *cb));
            }
        }
        out.retain(|_, c| *c != 0);
        Poly(out)
    }
}

struct Oracle {
    shape: BoxShape,
    y: Vec<Poly>,
    cache: HashMap<usize, Degree>,
}

/// Echelon data for one weighted degree.
struct Degree {
    index: HashMap<Mono, usize>,
    basis: Vec<(usize, Partition)>,
    /// Rows `(pivot, monomial part, tag part)` with pivot entry 1.
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

fn monomials_of_degree(weights: &[usize], deg: usize) -> Vec<Mono> {
    fn rec(w: &[usize], i: usize, left: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= left {
            cur.push(e as u32);
            rec(w, i + 1, left - e * w[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, deg, &mut Vec::new(), &mut out);
    out
}

impl Oracle {
    fn new(shape: BoxShape) -> Oracle {
        let (d, n) = (shape.d(), shape.n());
        let one = Poly::term(vec![0; d + 1], 1);
        let mut y = vec![one];
        for m in 1..=n {
            let mut acc = Poly::default();
            for j in 1..=m.min(d) {
                let mut e = vec![0; d + 1];
                e[j - 1] = 1;
                let sign = if j % 2 == 1 { 1 } else { P - 1 };
                acc = acc.add(&Poly::term(e, sign).mul(&y[m - j]));
            }
            y.push(acc);
        }
        Oracle {
            shape,
            y,
            cache: HashMap::new(),
        }
    }

    fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = (1..=self.shape.d()).collect();
        w.push(self.shape.n());
        w
    }

    fn yk(&self, m: i64) -> Poly {
        if m < 0 {
            Poly::default()
        } else {
            self.y[m as usize].clone()
        }
    }

    /// `s_lambda = det(Y_{lambda_i - i + j})`, a `d x d` determinant.
    fn schur(&self, lambda: &Partition) -> Poly {
        let d = self.shape.d();
        let mat: Vec<Vec<Poly>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.yk(lambda.part(i) as i64 - i as i64 + j as i64))
                    .collect()
            })
            .collect();
        let mut total = Poly::default();
        let mut perm: Vec<usize> = (0..d).collect();
        permutations(&mut perm, 0, &mut |p, sign| {
            let mut term = Poly::term(vec![0; d + 1], if sign { 1 } else { P - 1 });
            for (i, &j) in p.iter().enumerate() {
                term = term.mul(&mat[i][j]);
            }
            total = total.add(&term);
        });
        total
    }

    fn q(&self, k: usize) -> Poly {
        let mut e = vec![0; self.shape.d() + 1];
        e[self.shape.d()] = k as u32;
        Poly::term(e, 1)
    }

    fn build(&self, deg: usize) -> Degree {
        let (d, c, n) = (self.shape.d(), self.shape.c(), self.shape.n());
        let w = self.weights();
        let monos = monomials_of_degree(&w, deg);
        let index: HashMap<Mono, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut basis = Vec::new();
        for k in 0..=deg / n {
            for nu in enumerate_box(self.shape) {
                if nu.size() + k * n == deg {
                    basis.push((k, nu));
                }
            }
        }
        let sign = if d % 2 == 1 { 1 } else { P - 1 };
        let mut gens = Vec::new();
        for m in c + 1..=n {
            if m > deg {
                break;
            }
            let g = if m < n {
                self.y[m].clone()
            } else {
                self.y[n].add(&self.q(1).scale(P - sign))
            };
            for mono in monomials_of_degree(&w, deg - m) {
                gens.push(Poly::term(mono, 1).mul(&g));
            }
        }
        let width = monos.len();
        let tags = basis.len();
        let to_vec = |p: &Poly| {
            let mut v = vec![0u64; width];
            for (m, c) in &p.0 {
                v[*index.get(m).unwrap_or_else(|| panic!("{m:?} deg {deg}"))] = *c;
            }
            v
        };
        let mut out = Degree {
            index: index.clone(),
            basis: basis.clone(),
            rows: Vec::new(),
        };
        for g in &gens {
            out.insert(to_vec(g), vec![0; tags]);
        }
        for (i, (k, nu)) in basis.iter().enumerate() {
            let mut tag = vec![0; tags];
            tag[i] = 1;
            let inserted = out.insert(to_vec(&self.q(*k).mul(&self.schur(nu))), tag);
            assert!(inserted, "basis element q^{k} s_{nu} lies in the ideal");
        }
        out
    }

    /// Coefficients of `f` in the basis `q^k s_nu`, `f` homogeneous of degree `deg`.
    fn reduce(&mut self, f: &Poly, deg: usize) -> BTreeMap<(usize, Partition), i64> {
        if !self.cache.contains_key(&deg) {
            let built = self.build(deg);
            self.cache.insert(deg, built);
        }
        let dg = &self.cache[&deg];
        let mut v = vec![0u64; dg.index.len()];
        for (m, c) in &f.0 {
            v[dg.index[m]] = *c;
        }
        let mut tag = vec![0u64; dg.basis.len()];
        for (pivot, row, rtag) in &dg.rows {
            let a = v[*pivot];
            if a != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = subm(*x, mulm(a, *r));
                }
                for (x, r) in tag.iter_mut().zip(rtag) {
                    *x = subm(*x, mulm(a, *r));
                }
            }
        }
        assert!(v.iter().all(|x| *x == 0), "basis does not span degree {deg}");
        dg.basis
            .iter()
            .zip(&tag)
            .map(|(b, t)| (b.clone(), lift(subm(0, *t))))
            .filter(|(_, c)| *c != 0)
            .collect()
    }
}

impl Degree {
    /// Reduces and inserts; false if the monomial part reduces to zero.
    fn insert(&mut self, mut v: Vec<u64>, mut tag: Vec<u64>) -> bool {
        for (pivot, row, rtag) in &self.rows {
            let a = v[*pivot];
            if a != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = subm(*x, mulm(a, *r));
                }
                for (x, r) in tag.iter_mut().zip(rtag) {
                    *x = subm(*x, mulm(a, *r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| *x != 0) else {
            return false;
        };
        let s = inv(v[pivot]);
        for x in v.iter_mut().chain(tag.iter_mut()) {
            *x = mulm(*x, s);
        }
        for (_, row, rtag) in self.rows.iter_mut() {
            let a = row[pivot];
            if a != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = subm(*x, mulm(a, *r));
                }
                for (x, r) in rtag.iter_mut().zip(&tag) {
                    *x = subm(*x, mulm(a, *r));
                }
            }
        }
        self.rows.push((pivot, v, tag));
        true
    }
}

fn permutations(p: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize], bool)) {
    fn rec(p: &mut Vec<usize>, i: usize, even: bool, f: &mut dyn FnMut(&[usize], bool)) {
        if i == p.len() {
            f(p, even);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            rec(p, i + 1, if i == j { even } else { !even }, f);
            p.swap(i, j);
        }
    }
    rec(p, i, true, f)
}

fn engine_terms(el: &RingElement) -> BTreeMap<(usize, Partition), i64> {
    el.terms()
        .map(|(k, l, c)| ((k, l.clone()), i64::try_from(c.clone()).expect("small coefficient")))
        .collect()
}

const BOXES: [(usize, usize); 4] = [(1, 3), (2, 4), (2, 5), (3, 6)];

#[test]
fn products_match_normal_form() {
    for (d, n) in BOXES {
        let shape = BoxShape::new(d, n).unwrap();
        let mut oracle = Oracle::new(shape);
        let classes = enumerate_box(shape);
        let polys: Vec<Poly> = classes.iter().map(|l| oracle.schur(l)).collect();
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate().skip(i) {
                let expected = oracle.reduce(&polys[i].mul(&polys[j]), a.size() + b.size());
                let got = multiply(
                    &RingElement::schubert(a, shape).unwrap(),
                    &RingElement::schubert(b, shape).unwrap(),
                )
                .unwrap();
                assert_eq!(engine_terms(&got), expected, "s{a} * s{b} in ({d},{n})");
            }
        }
    }
}

#[test]
fn pieri_matches_normal_form() {
    for (d, n) in BOXES {
        let shape = BoxShape::new(d, n).unwrap();
        let mut oracle = Oracle::new(shape);
        for lambda in enumerate_box(shape) {
            let s = oracle.schur(&lambda);
            for k in 1..=d {
                let expected = oracle.reduce(&oracle.schur(&Partition::column(k)).mul(&s), lambda.size() + k);
                let got = pieri_multiply(&RingElement::schubert(&lambda, shape).unwrap(), k).unwrap();
                assert_eq!(engine_terms(&got), expected, "X_{k} * s{lambda} in ({d},{n})");
            }
        }
    }
}

#[test]
fn engine_schubert_polynomials_are_schur_classes() {
    for (d, n) in BOXES {
        let shape = BoxShape::new(d, n).unwrap();
        let mut oracle = Oracle::new(shape);
        for lambda in enumerate_box(shape) {
            let mut f = Poly::default();
            for m in schubert_polynomial(&lambda, shape).unwrap().monomials() {
                let mut e = m.exponents.clone();
                e.push(0);
                let c = i64::try_from(m.coeff.clone()).unwrap();
                f = f.add(&Poly::term(e, from_i64(c)));
            }
            let got = oracle.reduce(&f, lambda.size());
            let expected: BTreeMap<_, _> = [((0, lambda.clone()), 1i64)].into_iter().collect();
            assert_eq!(got, expected, "{lambda} in ({d},{n})");
        }
    }
}

#[test]
fn q_is_signed_y_n() {
    for (d, n) in BOXES {
        let shape = BoxShape::new(d, n).unwrap();
        let mut oracle = Oracle::new(shape);
        let yn = oracle.y[n].clone();
        let got = oracle.reduce(&yn, n);
        let sign = if d % 2 == 1 { 1 } else { -1 };
        let expected: BTreeMap<_, _> = [((1, Partition::empty()), sign)].into_iter().collect();
        assert_eq!(got, expected);
    }
}
