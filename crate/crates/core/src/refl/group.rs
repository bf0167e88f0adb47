//! Integer matrices, closure of finite groups and Cayley-table groups.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::ReflError;

pub const DEFAULT_ORDER_CAP: usize = 100_000;
/// Largest group for which a full Cayley table is built.
pub const TABLE_CAP: usize = 2_000;

/// A square integer matrix acting on column vectors; ordered lexicographically
/// on its entries in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    e: Vec<i64>,
}

impl Mat {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, ReflError> {
        let n = rows.len();
        let mut e = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(ReflError::DimensionMismatch { expected: n, found: row.len() });
            }
            e.extend_from_slice(row);
        }
        Ok(Mat { n, e })
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Mat { n, e }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.e[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.e.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] += a * other.e[k * n + j];
                }
            }
        }
        Mat { n, e }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Coefficients `c_0..c_n` of `det(1 - t·A) = Σ c_k t^k` (Faddeev–LeVerrier).
    pub fn det_one_minus_t(&self) -> Vec<i128> {
        let n = self.n;
        let a: Vec<i128> = self.e.iter().map(|&x| x as i128).collect();
        let mut c = vec![0i128; n + 1];
        c[n] = 1;
        let mut m = vec![0i128; n * n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for l in 0..n {
                    let x = a[i * n + l];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i * n + j] += x * m[l * n + j];
                    }
                }
                next[i * n + i] += c[n - k + 1];
            }
            m = next;
            let mut tr = 0i128;
            for i in 0..n {
                for l in 0..n {
                    tr += a[i * n + l] * m[l * n + i];
                }
            }
            assert_eq!(tr % k as i128, 0, "Faddeev–LeVerrier division is exact");
            c[n - k] = -tr / k as i128;
        }
        // char poly x^n + c_{n-1} x^{n-1} + ... + c_0 reversed
        c.reverse();
        c
    }

    pub fn det(&self) -> i128 {
        let c = self.det_one_minus_t();
        // det(1 - tA) has leading coefficient (-1)^n det A
        let lead = c[self.n];
        if self.n.is_multiple_of(2) {
            lead
        } else {
            -lead
        }
    }

    /// `Some(k)` for the least `k ≥ 1` with `A^k = 1`, searching up to `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    pub fn pow(&self, k: usize) -> Mat {
        (0..k).fold(Mat::identity(self.n), |acc, _| acc.mul(self))
    }

    /// Rank of `A - 1` over `Q`.
    pub fn corank_of_fixed_space(&self) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<i128>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j) as i128 - (i == j) as i128).collect()).collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(p) = (rank..n).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(rank, p);
            for i in 0..n {
                if i != rank && rows[i][c] != 0 {
                    let (a, b) = (rows[rank][c], rows[i][c]);
                    for j in 0..n {
                        rows[i][j] = rows[i][j] * a - rows[rank][j] * b;
                    }
                    let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                    if g > 1 {
                        rows[i].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Breadth-first closure of `gens` under `mul`, sorted.
pub fn closure<T, F>(gens: &[T], identity: T, mul: F, cap: usize) -> Result<Vec<T>, ReflError>
where
    T: Clone + Eq + Hash + Ord,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashMap<T, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone(), ());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(ReflError::TooLarge { cap });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<T> = seen.into_keys().collect();
    out.sort();
    Ok(out)
}

/// All elements of the group generated by integer matrices, ordered lexicographically.
pub fn generate_group(gens: &[Mat], cap: usize) -> Result<Vec<Mat>, ReflError> {
    generate_group_in(gens.first().map_or(0, Mat::dim), gens, cap)
}

/// [`generate_group`] with an explicit dimension, so that an empty generator list is allowed.
pub fn generate_group_in(n: usize, gens: &[Mat], cap: usize) -> Result<Vec<Mat>, ReflError> {
    for g in gens {
        if g.dim() != n {
            return Err(ReflError::DimensionMismatch { expected: n, found: g.dim() });
        }
        if g.det() == 0 {
            return Err(ReflError::Singular);
        }
    }
    closure(gens, Mat::identity(n), Mat::mul, cap)
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl FiniteGroup {
    /// Build from an explicit element list closed under `mul`.
    pub fn from_elements<T, F>(elements: &[T], mul: F) -> Result<Self, ReflError>
    where
        T: Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        if n > TABLE_CAP {
            return Err(ReflError::TooLarge { cap: TABLE_CAP });
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = mul(a, b);
                let k = *index.get(&c).ok_or(ReflError::NotClosed)?;
                table[i * n + j] = k as u32;
            }
        }
        Self::from_table(n, table)
    }

    /// Build from a multiplication table; checks identity, inverses and the Latin property.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self, ReflError> {
        if n == 0 || table.len() != n * n {
            return Err(ReflError::NotClosed);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or(ReflError::NotClosed)?;
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n).find(|&y| table[x * n + y] as usize == identity).ok_or(ReflError::NotClosed)?;
            inv[x] = y as u32;
        }
        for x in 0..n {
            let mut seen = vec![false; n];
            for y in 0..n {
                let z = table[x * n + y] as usize;
                if seen[z] {
                    return Err(ReflError::NotClosed);
                }
                seen[z] = true;
            }
        }
        Ok(FiniteGroup { n, table, inv, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Self::from_table(n, table).expect("cyclic group table")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The group generated by permutations of `0..m` (images listed), composed as maps.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, ReflError> {
        let m = gens.first().map_or(0, Vec::len);
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..m).map(|i| a[b[i]]).collect() };
        let elems = closure(gens, (0..m).collect(), compose, TABLE_CAP)?;
        Self::from_elements(&elems, compose)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conj(&self, u: usize, x: usize) -> usize {
        self.mul(self.mul(u, x), self.inv(u))
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Orbits of `x ↦ u x σ(u)^{-1}`; classes sorted by least element, each sorted.
    pub fn twisted_classes(&self, sigma: &[usize]) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..self.n).map(|u| self.mul(self.mul(u, x), self.inv(sigma[u]))).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        classes
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..self.n).collect();
        self.twisted_classes(&id)
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.mul(u, a) == self.mul(a, u)).collect()
    }

    /// `{u : u H u^{-1} = H}` for a subgroup given as a sorted index list.
    pub fn normalizer(&self, sub: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.n];
        for &h in sub {
            mask[h] = true;
        }
        (0..self.n).filter(|&u| sub.iter().all(|&h| mask[self.conj(u, h)])).collect()
    }

    /// The subgroup on the given (sorted, closed) index set, relabelled `0..k`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<Self, ReflError> {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = elems.len();
        let mut table = vec![0u32; k * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * k + j] = *pos.get(&self.mul(a, b)).ok_or(ReflError::NotClosed)? as u32;
            }
        }
        Self::from_table(k, table)
    }

    /// Closure of a set of elements under multiplication, sorted.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        closure(gens, self.identity, |&a, &b| self.mul(a, b), usize::MAX).expect("finite")
    }
}
