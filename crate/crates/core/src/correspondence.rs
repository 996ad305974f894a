//! Symmetric correspondences on a generic fiber and their quadratic
//! identities `D² = aI + bD + cU`, with `U` the all-ones matrix.
//!
//! `U` is the fiber-level image of pulling back a pushed-forward divisor
//! through the base line. The Jacobian of the line is trivial, so `U` acts
//! as zero on the Jacobian of the curve and the identity becomes
//! `γ² = a + bγ`. Matching this with `(1 - γ)(γ + q - 1) = 0` gives
//! `b = 2 - q` and `a = q - 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{intersection_size, FiberKind};
use crate::matrix::IntMatrix;

/// A correspondence restricted to a generic fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCorrespondence {
    pub kind: FiberKind,
    pub matrix: IntMatrix,
    pub bidegree: usize,
}

impl FiberCorrespondence {
    pub fn size(&self) -> usize {
        self.matrix.dim()
    }

    /// Checks symmetry, non-negativity, zero diagonal, and constant row and
    /// column sums equal to the bidegree.
    pub fn is_well_formed(&self) -> bool {
        let m = &self.matrix;
        let d = self.bidegree as i64;
        m.is_symmetric()
            && (0..m.dim()).all(|i| m.get(i, i) == 0 && m.row(i).iter().all(|&x| x >= 0))
            && m.row_sums().iter().all(|&s| s == d)
            && m.col_sums().iter().all(|&s| s == d)
    }
}

pub fn build_correspondence(kind: FiberKind) -> FiberCorrespondence {
    let points: Vec<Vec<usize>> = (0..kind.size()).map(|i| kind.point(i)).collect();
    let meet = kind.meet();
    let matrix = IntMatrix::from_fn(kind.size(), |i, j| {
        i64::from(intersection_size(&points[i], &points[j]) == meet)
    });
    FiberCorrespondence { kind, matrix, bidegree: kind.bidegree() }
}

/// `I ~ J` iff `|I ∩ J| = n - 2` on the `n`-subsets of `n + 2` sheets.
pub fn build_subset_matrix(n: usize) -> Result<FiberCorrespondence> {
    Ok(build_correspondence(FiberKind::subset(n)?))
}

/// Rook adjacency on the `m × m` grid.
pub fn build_grid_matrix(m: usize) -> Result<FiberCorrespondence> {
    Ok(build_correspondence(FiberKind::grid(m)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticIdentity {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    /// False when the entries do not determine `(a, b, c)`; the stored
    /// coefficients are then one solution (free coefficients set to zero,
    /// preferring `b`, then `c`, then `a` as pivots).
    pub unique: bool,
}

impl QuadraticIdentity {
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self { a: ratio(a), b: ratio(b), c: ratio(c), unique: true }
    }
}

pub(crate) fn ratio(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn render_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// First entry where an identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityWitness {
    pub row: usize,
    pub col: usize,
    pub square_entry: i64,
    pub expected: String,
}

/// Exact entrywise comparison of `D²` with `aI + bD + cU`.
pub fn verify_identity(
    d: &FiberCorrespondence,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> Result<std::result::Result<(), IdentityWitness>> {
    let sq = d.matrix.square()?;
    let witness = |i: usize, j: usize| {
        let mut rhs = b * ratio(d.matrix.get(i, j)) + c;
        if i == j {
            rhs += a;
        }
        (ratio(sq.get(i, j)) != rhs).then(|| IdentityWitness {
            row: i,
            col: j,
            square_entry: sq.get(i, j),
            expected: render_rational(&rhs),
        })
    };
    // clear denominators once and compare in i128; rationals only as fallback
    let scale = BigRational::from_integer(a.denom() * b.denom() * c.denom());
    let scaled = |x: &BigRational| (x * &scale).to_integer().to_i128();
    let fast = (scaled(&scale), scaled(a), scaled(b), scaled(c));
    for i in 0..d.size() {
        for j in 0..d.size() {
            let ok = match fast {
                (Some(l), Some(a), Some(b), Some(c)) => {
                    let rhs = b
                        .checked_mul(i128::from(d.matrix.get(i, j)))
                        .and_then(|x| x.checked_add(c))
                        .and_then(|x| if i == j { x.checked_add(a) } else { Some(x) });
                    match (rhs, l.checked_mul(i128::from(sq.get(i, j)))) {
                        (Some(rhs), Some(lhs)) => lhs == rhs,
                        _ => witness(i, j).is_none(),
                    }
                }
                _ => witness(i, j).is_none(),
            };
            if !ok {
                return Ok(Err(witness(i, j).expect("mismatch has a witness")));
            }
        }
    }
    Ok(Ok(()))
}

/// Solves `D² = aI + bD + cU` from the entries of `D` and `D²`, then
/// verifies the solution entrywise. `None` when no such identity exists.
pub fn discover_identity(d: &FiberCorrespondence) -> Result<Option<QuadraticIdentity>> {
    let sq = d.matrix.square()?;
    // each entry gives  b·D_ij + c + a·[i = j] = (D²)_ij
    let mut equations: BTreeMap<(i64, bool), i64> = BTreeMap::new();
    for i in 0..d.size() {
        for j in 0..d.size() {
            let key = (d.matrix.get(i, j), i == j);
            match equations.insert(key, sq.get(i, j)) {
                Some(prev) if prev != sq.get(i, j) => return Ok(None),
                _ => {}
            }
        }
    }
    // columns ordered (b, c, a)
    let rows: Vec<[BigRational; 4]> = equations
        .iter()
        .map(|(&(dij, diag), &rhs)| [ratio(dij), BigRational::one(), ratio(i64::from(diag)), ratio(rhs)])
        .collect();
    let Some((solution, rank)) = solve_3(rows) else {
        return Ok(None);
    };
    let [b, c, a] = solution;
    let identity = QuadraticIdentity { a, b, c, unique: rank == 3 };
    match verify_identity(d, &identity.a, &identity.b, &identity.c)? {
        Ok(()) => Ok(Some(identity)),
        Err(_) => Ok(None),
    }
}

/// Gauss–Jordan elimination on an augmented system in three unknowns.
/// Returns the solution with free unknowns set to zero and the rank, or
/// `None` if inconsistent.
fn solve_3(mut rows: Vec<[BigRational; 4]>) -> Option<([BigRational; 3], usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x /= lead.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[3].is_zero()) {
        return None;
    }
    let mut x = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][3].clone();
    }
    Some((x, pivots.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentResult {
    pub q: u64,
    pub identity: QuadraticIdentity,
}

/// Reads off `q` from `γ² = a + bγ`: requires `q = 2 - b`, `a = q - 1`,
/// `q ≥ 2` integral.
pub fn exponent_from_identity(identity: &QuadraticIdentity) -> Result<ExponentResult> {
    let fail = || Error::NoExponent { a: render_rational(&identity.a), b: render_rational(&identity.b) };
    let q = ratio(2) - &identity.b;
    if !q.is_integer() || q < ratio(2) || identity.a != &q - BigRational::one() || q.is_negative() {
        return Err(fail());
    }
    let q = q.to_integer().to_u64().ok_or_else(fail)?;
    Ok(ExponentResult { q, identity: identity.clone() })
}

/// Identity summary for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub a: String,
    pub b: String,
    pub c: String,
    pub unique: bool,
    pub verified: bool,
    pub q: Option<u64>,
    pub diagnostic: Option<String>,
}

pub fn identity_report(d: &FiberCorrespondence) -> Result<IdentityReport> {
    match discover_identity(d)? {
        None => Ok(IdentityReport {
            a: String::new(),
            b: String::new(),
            c: String::new(),
            unique: false,
            verified: false,
            q: None,
            diagnostic: Some("D² is not a combination of I, D and U".into()),
        }),
        Some(id) => {
            let exponent = exponent_from_identity(&id);
            Ok(IdentityReport {
                a: render_rational(&id.a),
                b: render_rational(&id.b),
                c: render_rational(&id.c),
                unique: id.unique,
                verified: true,
                q: exponent.as_ref().ok().map(|e| e.q),
                diagnostic: exponent.err().map(|e| e.to_string()),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        ratio(x)
    }

    #[test]
    fn subset_matrices() {
        for (n, size, d) in [(2, 6, 1), (3, 10, 3), (4, 15, 6)] {
            let c = build_subset_matrix(n).unwrap();
            assert_eq!((c.size(), c.bidegree), (size, d));
            assert!(c.is_well_formed());
        }
        assert!(build_subset_matrix(1).is_err());
    }

    #[test]
    fn n2_is_complement_involution() {
        let c = build_subset_matrix(2).unwrap();
        let k = c.kind;
        for i in 0..6 {
            let j = (0..6).find(|&j| c.matrix.get(i, j) == 1).unwrap();
            let mut union = k.point(i);
            union.extend(k.point(j));
            union.sort_unstable();
            assert_eq!(union, vec![0, 1, 2, 3]);
        }
        assert_eq!(c.matrix.square().unwrap(), IntMatrix::identity(6));
    }

    #[test]
    fn grid_matrices() {
        let c = build_grid_matrix(3).unwrap();
        assert_eq!((c.size(), c.bidegree), (9, 4));
        assert!(c.is_well_formed());
        assert!(c.matrix.row_sums().iter().all(|&s| s == 4));

        // m = 2: D = U - I - antidiagonal pairing
        let c = build_grid_matrix(2).unwrap();
        let expected = IntMatrix::from_fn(4, |i, j| i64::from(i != j && i + j != 3));
        assert_eq!(c.matrix, expected);
        assert!(build_grid_matrix(1).is_err());
    }

    #[test]
    fn verify_examples() {
        let petersen = build_subset_matrix(3).unwrap();
        assert_eq!(verify_identity(&petersen, &q(2), &q(-1), &q(1)).unwrap(), Ok(()));
        let inv = build_subset_matrix(2).unwrap();
        assert_eq!(verify_identity(&inv, &q(1), &q(0), &q(0)).unwrap(), Ok(()));
        let grid = build_grid_matrix(3).unwrap();
        assert_eq!(verify_identity(&grid, &q(2), &q(-1), &q(2)).unwrap(), Ok(()));

        // wrong c: the first entry already differs
        let witness = verify_identity(&petersen, &q(2), &q(-1), &q(0)).unwrap().unwrap_err();
        assert_eq!((witness.row, witness.col, witness.square_entry), (0, 0, 3));
        assert_eq!(witness.expected, "2");
    }

    #[test]
    fn discover_subset_n4() {
        let id = discover_identity(&build_subset_matrix(4).unwrap()).unwrap().unwrap();
        assert_eq!(id, QuadraticIdentity::from_ints(3, -2, 3));
    }

    #[test]
    fn discover_degenerate_identity_matrix() {
        let d = FiberCorrespondence { kind: FiberKind::Grid { m: 2 }, matrix: IntMatrix::identity(4), bidegree: 1 };
        let id = discover_identity(&d).unwrap().unwrap();
        assert!(!id.unique);
        assert_eq!((id.a.clone(), id.b.clone(), id.c.clone()), (q(0), q(1), q(0)));
        assert!(exponent_from_identity(&id).is_err());
    }

    #[test]
    fn discover_rejects_non_quadratic() {
        // path on three vertices: D² has entries that I, D, U cannot fit
        let path = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        let d = FiberCorrespondence { kind: FiberKind::Grid { m: 2 }, matrix: path, bidegree: 1 };
        assert_eq!(discover_identity(&d).unwrap(), None);
    }

    #[test]
    fn exponents() {
        let e = exponent_from_identity(&QuadraticIdentity::from_ints(2, -1, 2)).unwrap();
        assert_eq!(e.q, 3);
        assert_eq!(exponent_from_identity(&QuadraticIdentity::from_ints(1, 0, 0)).unwrap().q, 2);
        for n in 2..13i64 {
            let id = QuadraticIdentity::from_ints(n - 1, -(n - 2), (n - 1) * (n - 2) / 2);
            assert_eq!(exponent_from_identity(&id).unwrap().q, n as u64);
        }
        // grid m = 2: (0, -2, 2) does not factor
        let err = exponent_from_identity(&QuadraticIdentity::from_ints(0, -2, 2)).unwrap_err();
        assert!(err.to_string().contains("hypothesis (a) fails"));
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(render_rational(&q(-5)), "-5");
        let half = BigRational::new(BigInt::from(6), BigInt::from(4));
        assert_eq!(render_rational(&half), "3/2");
    }
}
