//! Partitions in a `d x c` box.
//!
//! A [`Partition`] indexes a Schubert class; the ambient [`BoxShape`] fixes
//! the Grassmannian of `d`-planes in `n`-space with `c = n - d`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::IndexTuple;

/// Weakly decreasing sequence of positive integers. Trailing zeros are
/// dropped on construction, so `(2, 0)` and `(2)` are the same value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The rectangle `(m^k)`: `k` rows of length `m`.
    pub fn rectangle(m: usize, k: usize) -> Self {
        if m == 0 {
            return Partition::empty();
        }
        Partition { parts: vec![m; k] }
    }

    /// The column `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition::rectangle(1, k)
    }

    /// The row `(k)`.
    pub fn row(k: usize) -> Self {
        Partition::rectangle(k, 1)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i`-th part, zero-based, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn fits(&self, shape: BoxShape) -> bool {
        self.len() <= shape.d() && self.part(0) <= shape.c()
    }

    pub fn check_fits(&self, shape: BoxShape) -> Result<()> {
        if self.fits(shape) {
            Ok(())
        } else {
            Err(Error::OutsideBox {
                partition: self.to_string(),
                d: shape.d(),
                c: shape.c(),
            })
        }
    }

    /// Whether `(row, col)` (one-based) is a box of the Young diagram.
    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.part(row - 1) >= col
    }

    /// Boxes of the Young diagram, one-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// Hook length of every box: `lambda_i + lambda^t_j - i - j + 1`.
    pub fn hook_lengths(&self) -> BTreeMap<(usize, usize), usize> {
        let conj = self.conjugate();
        self.cells()
            .map(|(i, j)| ((i, j), self.part(i - 1) + conj.part(j - 1) + 1 - i - j))
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    /// Accepts `2,1`, `(2,1)`, `[2, 1]`, `2 1` and the empty partition as `()` or ``.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// The `d x c` box of the Grassmannian of `d`-planes in `n`-space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BoxRepr", into = "BoxRepr")]
pub struct BoxShape {
    d: usize,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct BoxRepr {
    d: usize,
    n: usize,
}

impl TryFrom<BoxRepr> for BoxShape {
    type Error = Error;
    fn try_from(r: BoxRepr) -> Result<Self> {
        BoxShape::new(r.d, r.n)
    }
}

impl From<BoxShape> for BoxRepr {
    fn from(b: BoxShape) -> Self {
        BoxRepr { d: b.d, n: b.n }
    }
}

impl BoxShape {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || d >= n {
            return Err(Error::InvalidBox { d, n });
        }
        Ok(BoxShape { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> usize {
        self.n - self.d
    }

    /// The box with rows and columns exchanged, `(c, n)`.
    pub fn transposed(&self) -> BoxShape {
        BoxShape {
            d: self.c(),
            n: self.n,
        }
    }

    /// `binomial(n, d)`, the number of Schubert classes.
    pub fn num_classes(&self) -> usize {
        binomial(self.n, self.d)
    }

    /// The full rectangle `(c^d)`, the top class.
    pub fn top(&self) -> Partition {
        Partition::rectangle(self.c(), self.d)
    }

    /// Complex dimension `c * d` of the Grassmannian.
    pub fn dim(&self) -> usize {
        self.c() * self.d
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, n={})", self.d, self.n)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All partitions in the box, graded by size, then lexicographically decreasing.
pub fn enumerate_box(shape: BoxShape) -> Vec<Partition> {
    fn extend(prefix: &mut Vec<usize>, rows_left: usize, max_part: usize, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()).expect("decreasing by construction"));
        if rows_left == 0 {
            return;
        }
        for p in 1..=max_part {
            prefix.push(p);
            extend(prefix, rows_left - 1, p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(shape.num_classes());
    extend(&mut Vec::new(), shape.d(), shape.c(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.parts.cmp(&a.parts)));
    out
}

/// `PD(lambda) = (c - lambda_d, ..., c - lambda_1)`.
pub fn poincare_dual(lambda: &Partition, shape: BoxShape) -> Result<Partition> {
    lambda.check_fits(shape)?;
    let (d, c) = (shape.d(), shape.c());
    Partition::new((0..d).map(|i| c - lambda.part(d - 1 - i)).collect())
}

/// `I_lambda`, the index tuple labelling `lambda`.
pub fn index_of_partition(lambda: &Partition, shape: BoxShape) -> Result<IndexTuple> {
    lambda.check_fits(shape)?;
    let d = shape.d();
    // k-th entry (1-based) is (d+1)/2 + lambda_{d+1-k} - (d+1-k); stored doubled
    let doubled = (1..=d)
        .map(|k| {
            let row = d + 1 - k;
            (d as i64 + 1) + 2 * lambda.part(row - 1) as i64 - 2 * row as i64
        })
        .collect();
    IndexTuple::new(doubled, shape)
}

/// Inverse of [`index_of_partition`].
pub fn partition_of_index(index: &IndexTuple) -> Partition {
    let shape = index.shape();
    let d = shape.d() as i64;
    let mut parts = vec![0usize; shape.d()];
    for (k, &doubled) in index.doubled().iter().enumerate() {
        let row = d - k as i64; // d + 1 - (k + 1)
        let part = (doubled - (d + 1)) / 2 + row;
        parts[(row - 1) as usize] = part as usize;
    }
    Partition::new(parts).expect("valid index tuples map to partitions")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small_boxes() {
        let b11 = BoxShape::new(1, 2).unwrap();
        assert_eq!(enumerate_box(b11), vec![p(&[]), p(&[1])]);
        let b22 = BoxShape::new(2, 4).unwrap();
        assert_eq!(
            enumerate_box(b22),
            vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])]
        );
        assert_eq!(enumerate_box(BoxShape::new(3, 6).unwrap()).len(), 20);
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[2]).conjugate(), p(&[1, 1]));
        assert_eq!(p(&[]).conjugate(), p(&[]));
        assert_eq!(p(&[4, 2, 2, 1]).conjugate(), p(&[4, 3, 1, 1]));
    }

    #[test]
    fn trailing_zeros_normalize() {
        assert_eq!(p(&[2, 0]), p(&[2]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!("[2, 1]".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), p(&[]));
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        assert_eq!(serde_json::from_str::<Partition>("[3,0]").unwrap(), p(&[3]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn poincare_duals() {
        let b = BoxShape::new(2, 4).unwrap();
        assert_eq!(poincare_dual(&p(&[]), b).unwrap(), p(&[2, 2]));
        assert_eq!(poincare_dual(&p(&[2, 1]), b).unwrap(), p(&[1]));
        assert!(poincare_dual(&p(&[3]), b).is_err());
        let b23 = BoxShape::new(2, 5).unwrap();
        for l in enumerate_box(b23) {
            assert_eq!(poincare_dual(&poincare_dual(&l, b23).unwrap(), b23).unwrap(), l);
        }
    }

    #[test]
    fn hooks() {
        let h = |parts: &[usize]| p(parts).hook_lengths().into_iter().collect::<Vec<_>>();
        assert_eq!(h(&[1]), vec![((1, 1), 1)]);
        assert_eq!(h(&[2, 2]), vec![((1, 1), 3), ((1, 2), 2), ((2, 1), 2), ((2, 2), 1)]);
        assert_eq!(h(&[2, 1]), vec![((1, 1), 3), ((1, 2), 1), ((2, 1), 1)]);
    }

    #[test]
    fn hooks_below_n_inside_box() {
        for (d, n) in [(2, 4), (2, 5), (3, 6), (4, 7)] {
            let b = BoxShape::new(d, n).unwrap();
            for l in enumerate_box(b) {
                assert!(l.hook_lengths().values().all(|&h| h < n));
            }
        }
    }

    #[test]
    fn index_identification() {
        let b = BoxShape::new(2, 4).unwrap();
        assert_eq!(index_of_partition(&p(&[]), b).unwrap().doubled(), &[-1, 1]);
        assert_eq!(index_of_partition(&p(&[2, 2]), b).unwrap().doubled(), &[3, 5]);
        let b25 = BoxShape::new(2, 5).unwrap();
        let i = index_of_partition(&p(&[2, 1]), b25).unwrap();
        assert_eq!(i.norm_doubled(), 6);
        for l in enumerate_box(b25) {
            let idx = index_of_partition(&l, b25).unwrap();
            assert_eq!(partition_of_index(&idx), l);
            assert_eq!(idx.norm_doubled(), 2 * l.size() as i64);
        }
    }

    #[test]
    fn conjugation_maps_box_onto_transpose() {
        let b = BoxShape::new(3, 7).unwrap();
        let mut image: Vec<_> = enumerate_box(b).iter().map(Partition::conjugate).collect();
        image.sort();
        let mut target = enumerate_box(b.transposed());
        target.sort();
        assert_eq!(image, target);
    }

    #[test]
    fn invalid_boxes() {
        assert!(BoxShape::new(0, 3).is_err());
        assert!(BoxShape::new(3, 3).is_err());
        assert_eq!(BoxShape::new(2, 5).unwrap().c(), 3);
    }
}
