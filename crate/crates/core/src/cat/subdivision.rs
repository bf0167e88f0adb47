//! The poset of isomorphism classes of the subdivision category of a finite EI
//! category, and order-isomorphism search between small posets.

use serde::Serialize;

use super::category::FinCategory;
use super::CatError;

/// A chain `x_0 → x_1 → ... → x_n` of non-isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatChain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

/// `[S(C)]`: isomorphism classes of chains ordered by "isomorphic to a face".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionPoset {
    pub classes: Vec<CatChain>,
    pub leq: Vec<Vec<bool>>,
}

const MAX_OBJECTS: usize = 12;

fn all_chains(cat: &FinCategory) -> Vec<CatChain> {
    fn grow(cat: &FinCategory, c: &mut CatChain, out: &mut Vec<CatChain>) {
        out.push(c.clone());
        let last = *c.objects.last().expect("nonempty");
        for y in 0..cat.len() {
            for &f in cat.hom(last, y) {
                if !cat.is_iso(f) {
                    c.objects.push(y);
                    c.arrows.push(f);
                    grow(cat, c, out);
                    c.objects.pop();
                    c.arrows.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..cat.len() {
        grow(cat, &mut CatChain { objects: vec![x], arrows: vec![] }, &mut out);
    }
    out
}

fn isos(cat: &FinCategory, x: usize, y: usize) -> Vec<usize> {
    cat.hom(x, y).iter().copied().filter(|&f| cat.is_iso(f)).collect()
}

/// Isomorphism in `S(C)`: isos `μ_i : x_i → y_i` with `φ_i ; μ_{i+1} = μ_i ; ψ_i`.
fn chains_isomorphic(cat: &FinCategory, a: &CatChain, b: &CatChain) -> bool {
    fn extend(cat: &FinCategory, a: &CatChain, b: &CatChain, i: usize, mu: usize) -> bool {
        if i + 1 == a.objects.len() {
            return true;
        }
        let rhs = cat.compose(mu, b.arrows[i]);
        isos(cat, a.objects[i + 1], b.objects[i + 1])
            .into_iter()
            .any(|next| cat.compose(a.arrows[i], next) == rhs && extend(cat, a, b, i + 1, next))
    }
    a.objects.len() == b.objects.len()
        && isos(cat, a.objects[0], b.objects[0]).into_iter().any(|mu| extend(cat, a, b, 0, mu))
}

fn faces(cat: &FinCategory, c: &CatChain) -> Vec<CatChain> {
    let n = c.objects.len();
    (1u64..(1u64 << n))
        .map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let arrows = idx
                .windows(2)
                .map(|w| (w[0] + 1..w[1]).fold(c.arrows[w[0]], |acc, j| cat.compose(acc, c.arrows[j])))
                .collect();
            CatChain { objects: idx.iter().map(|&i| c.objects[i]).collect(), arrows }
        })
        .collect()
}

pub fn subdivision_class_poset(cat: &FinCategory) -> Result<SubdivisionPoset, CatError> {
    if cat.len() > MAX_OBJECTS {
        return Err(CatError::TooLarge(cat.len()));
    }
    if !cat.is_ei() {
        return Err(CatError::NotEi);
    }
    let mut classes: Vec<CatChain> = Vec::new();
    for c in all_chains(cat) {
        if !classes.iter().any(|k| chains_isomorphic(cat, k, &c)) {
            classes.push(c);
        }
    }
    classes.sort_by(|a, b| (a.objects.len(), &a.objects, &a.arrows).cmp(&(b.objects.len(), &b.objects, &b.arrows)));
    let class_of = |c: &CatChain| {
        classes.iter().position(|k| chains_isomorphic(cat, k, c)).expect("every face is a chain of non-isomorphisms")
    };
    let m = classes.len();
    let mut leq = vec![vec![false; m]; m];
    for (t, tau) in classes.iter().enumerate() {
        for f in faces(cat, tau) {
            leq[class_of(&f)][t] = true;
        }
    }
    Ok(SubdivisionPoset { classes, leq })
}

/// An order isomorphism `p → q` (as an index map), if one exists.
pub fn poset_isomorphism(p: &[Vec<bool>], q: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = p.len();
    if q.len() != n {
        return None;
    }
    let profile = |r: &[Vec<bool>], i: usize| {
        let down = (0..r.len()).filter(|&j| r[j][i]).count();
        let up = (0..r.len()).filter(|&j| r[i][j]).count();
        (down, up)
    };
    fn search(
        p: &[Vec<bool>],
        q: &[Vec<bool>],
        candidates: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for &j in &candidates[i] {
            if used[j] || !(0..i).all(|k| p[k][i] == q[map[k]][j] && p[i][k] == q[j][map[k]]) {
                continue;
            }
            map.push(j);
            used[j] = true;
            if search(p, q, candidates, map, used) {
                return true;
            }
            map.pop();
            used[j] = false;
        }
        false
    }
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| profile(p, i) == profile(q, j)).collect()).collect();
    let mut map = Vec::new();
    search(p, q, &candidates, &mut map, &mut vec![false; n]).then_some(map)
}
