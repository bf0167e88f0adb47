//! Subspaces of `Q(ζ_n)^r` in reduced row echelon form.

use super::cyclotomic::Cyclotomic;
use super::ArithError;

pub type Vector = Vec<Cyclotomic>;

/// Row-reduce in place; returns the pivot columns. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        if !inv.is_one() {
            rows[r] = rows[r].iter().map(|x| x.mul(&inv)).collect();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`.
pub fn kernel(rows: &[Vector], ncols: usize, conductor: u32) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Cyclotomic::zero(conductor); ncols];
            v[f] = Cyclotomic::one(conductor);
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = row[f].neg();
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceCF {
    ambient: usize,
    conductor: u32,
    basis: Vec<Vector>,
}

impl SubspaceCF {
    pub fn from_rows(conductor: u32, ambient: usize, rows: Vec<Vector>) -> Result<Self, ArithError> {
        for row in &rows {
            if row.len() != ambient {
                return Err(ArithError::DimensionMismatch { expected: ambient, found: row.len() });
            }
            if let Some(x) = row.iter().find(|x| x.conductor() != conductor) {
                return Err(ArithError::ConductorMismatch(conductor, x.conductor()));
            }
        }
        let mut basis = rows;
        rref(&mut basis, ambient);
        Ok(SubspaceCF { ambient, conductor, basis })
    }

    pub fn zero(conductor: u32, ambient: usize) -> Self {
        SubspaceCF { ambient, conductor, basis: Vec::new() }
    }

    pub fn whole(conductor: u32, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| Cyclotomic::from_int(conductor, (i == j) as i64)).collect())
            .collect();
        SubspaceCF { ambient, conductor, basis }
    }

    /// Kernel of a square matrix given by rows.
    pub fn kernel_of(conductor: u32, rows: &[Vector]) -> Self {
        let n = rows.len();
        Self::from_rows(conductor, n, kernel(rows, n, conductor)).expect("square matrix")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn compatible(&self, other: &Self) -> Result<(), ArithError> {
        if self.ambient != other.ambient {
            return Err(ArithError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        if self.conductor != other.conductor {
            return Err(ArithError::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(())
    }

    /// `{x : b · x = 0 for every basis vector b}`.
    pub fn annihilator(&self) -> Self {
        let rows = kernel(&self.basis, self.ambient, self.conductor);
        Self::from_rows(self.conductor, self.ambient, rows).expect("consistent dimensions")
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, ArithError> {
        self.compatible(other)?;
        let mut stacked = self.annihilator().basis;
        stacked.extend(other.annihilator().basis);
        let rows = kernel(&stacked, self.ambient, self.conductor);
        Self::from_rows(self.conductor, self.ambient, rows)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, ArithError> {
        self.compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::from_rows(self.conductor, self.ambient, rows)
    }

    pub fn leq(&self, other: &Self) -> Result<bool, ArithError> {
        Ok(self.sum(other)?.dim() == other.dim())
    }

    /// Re-express over `Q(ζ_m)`.
    pub fn lift(&self, m: u32) -> Self {
        let basis = self.basis.iter().map(|row| row.iter().map(|x| x.lift(m)).collect()).collect();
        SubspaceCF { ambient: self.ambient, conductor: m, basis }
    }

    /// Whether the integer matrix `g` (acting on column vectors) fixes every vector.
    pub fn fixed_pointwise_by(&self, g: &[Vec<i64>]) -> bool {
        self.basis.iter().all(|b| {
            (0..self.ambient).all(|i| {
                let mut acc = b[i].neg();
                for (j, bj) in b.iter().enumerate() {
                    if g[i][j] != 0 && !bj.is_zero() {
                        acc = acc.add(&bj.scale(&num_rational::BigRational::from_integer(g[i][j].into())));
                    }
                }
                acc.is_zero()
            })
        })
    }
}

pub fn subspace_canonicalize(conductor: u32, ambient: usize, rows: Vec<Vector>) -> Result<SubspaceCF, ArithError> {
    SubspaceCF::from_rows(conductor, ambient, rows)
}

pub fn subspace_intersect(a: &SubspaceCF, b: &SubspaceCF) -> Result<SubspaceCF, ArithError> {
    a.intersect(b)
}

pub fn subspace_leq(a: &SubspaceCF, b: &SubspaceCF) -> Result<bool, ArithError> {
    a.leq(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vector {
        v.iter().map(|&x| Cyclotomic::from_int(1, x)).collect()
    }

    fn span(rows: &[&[i64]], n: usize) -> SubspaceCF {
        SubspaceCF::from_rows(1, n, rows.iter().map(|r| q(r)).collect()).unwrap()
    }

    #[test]
    fn basic_examples() {
        let line = span(&[&[1, 2]], 2);
        let whole = SubspaceCF::whole(1, 2);
        assert_eq!(whole.intersect(&line).unwrap(), line);
        assert!(SubspaceCF::zero(1, 2).leq(&line).unwrap());
        let other = span(&[&[1, -1]], 2);
        assert!(line.intersect(&other).unwrap().is_zero());
        assert_eq!(span(&[&[2, 4], &[1, 2]], 2), line);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = SubspaceCF::whole(1, 2);
        let b = SubspaceCF::whole(1, 3);
        assert!(matches!(a.intersect(&b), Err(ArithError::DimensionMismatch { .. })));
        assert!(SubspaceCF::from_rows(1, 2, vec![q(&[1, 2, 3])]).is_err());
    }

    #[test]
    fn eigenspace_over_cyclotomic_field() {
        // 3-cycle on the A2 root lattice: s1 s2
        let c = Cyclotomic::zeta_power(3, 1);
        let m = [[-1i64, -1], [1, 0]];
        let rows: Vec<Vector> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        let x = Cyclotomic::from_int(3, m[i][j]);
                        if i == j {
                            x.sub(&c)
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let e = SubspaceCF::kernel_of(3, &rows);
        assert_eq!(e.dim(), 1);
    }

    fn arb_space(n: usize) -> impl Strategy<Value = SubspaceCF> {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=n)
            .prop_map(move |rows| SubspaceCF::from_rows(1, n, rows.iter().map(|r| q(r)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(a in arb_space(3)) {
            let again = SubspaceCF::from_rows(1, 3, a.basis().to_vec()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn intersection_laws(a in arb_space(3), b in arb_space(3), c in arb_space(3)) {
            let ab = a.intersect(&b).unwrap();
            prop_assert_eq!(&ab, &b.intersect(&a).unwrap());
            prop_assert_eq!(ab.intersect(&c).unwrap(), a.intersect(&b.intersect(&c).unwrap()).unwrap());
            prop_assert!(ab.leq(&a).unwrap() && ab.leq(&b).unwrap());
            if a.leq(&b).unwrap() {
                prop_assert!(a.intersect(&c).unwrap().leq(&b.intersect(&c).unwrap()).unwrap());
                prop_assert_eq!(ab, a);
            }
        }
    }
}
