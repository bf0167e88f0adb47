//! Built-in Weyl groups on their root lattices.

use super::group::Mat;
use super::ReflError;

/// Cartan matrix `a_ij = <α_j, α_i^∨>`.
pub fn cartan_matrix(cartan_type: &str) -> Result<Vec<Vec<i64>>, ReflError> {
    let a = match cartan_type {
        "A1" => vec![vec![2]],
        "A2" => vec![vec![2, -1], vec![-1, 2]],
        "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        "B2" => vec![vec![2, -2], vec![-1, 2]],
        "B3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
        "G2" => vec![vec![2, -1], vec![-3, 2]],
        other => return Err(ReflError::UnknownType(other.to_string())),
    };
    Ok(a)
}

/// Simple reflections `s_i(α_j) = α_j - a_ij α_i` in the basis of simple roots.
pub fn simple_reflections(cartan: &[Vec<i64>]) -> Vec<Mat> {
    let r = cartan.len();
    (0..r)
        .map(|i| {
            let mut rows: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|j| (k == j) as i64).collect()).collect();
            for j in 0..r {
                rows[i][j] -= cartan[i][j];
            }
            Mat::from_rows(&rows).expect("square")
        })
        .collect()
}

/// The diagram automorphism reversing the simple roots of type `A_n`.
pub fn graph_twist(cartan_type: &str) -> Result<Mat, ReflError> {
    let r = match cartan_type {
        "A1" => 1,
        "A2" => 2,
        "A3" => 3,
        other => return Err(ReflError::UnknownType(format!("no graph automorphism for {other}"))),
    };
    let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (j == r - 1 - i) as i64).collect()).collect();
    Mat::from_rows(&rows)
}

/// Generators and twist for a named coset: `A2`, or `2A2` for the twisted form.
pub fn builtin_coset(name: &str, twist: &str) -> Result<(Vec<Mat>, Mat), ReflError> {
    let (base, twisted_by_name) = match name.strip_prefix('2') {
        Some(rest) if rest.starts_with('A') => (rest, true),
        _ => (name, false),
    };
    let cartan = cartan_matrix(base)?;
    let gens = simple_reflections(&cartan);
    let phi = match (twist, twisted_by_name) {
        ("graph", _) | (_, true) => graph_twist(base)?,
        ("id", false) => Mat::identity(cartan.len()),
        (other, _) => return Err(ReflError::UnknownType(format!("unknown twist {other}"))),
    };
    Ok((gens, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refl::group::{generate_group, DEFAULT_ORDER_CAP};

    #[test]
    fn builtin_orders() {
        for (t, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("G2", 12)] {
            let (gens, _) = builtin_coset(t, "id").unwrap();
            assert_eq!(generate_group(&gens, DEFAULT_ORDER_CAP).unwrap().len(), n, "{t}");
        }
        assert!(builtin_coset("E8", "id").is_err());
        assert!(builtin_coset("B2", "graph").is_err());
    }
}
