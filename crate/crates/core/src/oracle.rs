//! Direct Hankel determinants by fraction-free elimination.
//!
//! This is the ground truth every other route is checked against, so it is
//! deliberately plain: each order is computed from scratch, with no state
//! shared between orders.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{ExactInt, ExactRat, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("order {order} Hankel determinant needs {needed} coefficients, got {available}")]
    InsufficientCoefficients {
        order: usize,
        needed: usize,
        available: usize,
    },
}

/// Coefficients `a_0, a_1, ...` and the matrix order `n`.
#[derive(Debug, Clone, Copy)]
pub struct HankelSpec<'a> {
    pub seq: &'a [ExactRat],
    pub n: usize,
}

impl<'a> HankelSpec<'a> {
    pub fn new(seq: &'a [ExactRat], n: usize) -> Self {
        Self { seq, n }
    }

    fn check(&self) -> Result<(), OracleError> {
        let needed = (2 * self.n).saturating_sub(1);
        if self.seq.len() < needed {
            return Err(OracleError::InsufficientCoefficients {
                order: self.n,
                needed,
                available: self.seq.len(),
            });
        }
        Ok(())
    }
}

/// `det(a_{i+j})_{0 <= i,j < n}`, with `H_0 = 1`.
pub fn hankel_det(spec: HankelSpec<'_>) -> Result<ExactRat, OracleError> {
    spec.check()?;
    let n = spec.n;
    if n == 0 {
        return Ok(ExactRat::one());
    }
    let used = &spec.seq[..2 * n - 1];
    let lcm = used
        .iter()
        .fold(ExactInt::one(), |acc, a| acc.lcm(a.denom()));
    let scaled: Vec<ExactInt> = used
        .iter()
        .map(|a| a.numer() * (&lcm / a.denom()))
        .collect();
    let matrix = (0..n)
        .map(|i| scaled[i..i + n].to_vec())
        .collect::<Vec<_>>();
    let det = bareiss_det(matrix);
    Ok(ExactRat::new(det, num_traits::pow(lcm, n)))
}

/// Integer Hankel determinant; the input must be an integer sequence.
pub fn hankel_det_int(seq: &[ExactInt], n: usize) -> Result<ExactInt, OracleError> {
    let needed = (2 * n).saturating_sub(1);
    if seq.len() < needed {
        return Err(OracleError::InsufficientCoefficients {
            order: n,
            needed,
            available: seq.len(),
        });
    }
    if n == 0 {
        return Ok(ExactInt::one());
    }
    Ok(bareiss_det((0..n).map(|i| seq[i..i + n].to_vec()).collect()))
}

/// `H_0 ..= H_max` of a sequence, one independent elimination per order.
pub fn hankel_table(seq: &[ExactRat], max: usize) -> Result<Vec<ExactRat>, OracleError> {
    (0..=max)
        .map(|n| hankel_det(HankelSpec::new(seq, n)))
        .collect()
}

/// Same as [`hankel_table`] for a series; reads only known coefficients.
pub fn series_hankel_table(
    s: &TruncatedSeries,
    max: usize,
) -> Result<Vec<ExactRat>, OracleError> {
    hankel_table(s.coeffs(), max)
}

/// `hankel_table` over integers, computed in parallel across orders.
pub fn hankel_table_int(seq: &[ExactInt], max: usize) -> Result<Vec<ExactInt>, OracleError> {
    use rayon::prelude::*;
    (0..=max)
        .into_par_iter()
        .map(|n| hankel_det_int(seq, n))
        .collect()
}

/// Fraction-free Gaussian elimination. Zero pivots are replaced by a row
/// swap; a column with no usable pivot makes the determinant zero.
pub fn bareiss_det(mut m: Vec<Vec<ExactInt>>) -> ExactInt {
    let n = m.len();
    if n == 0 {
        return ExactInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = ExactInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return ExactInt::zero(),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = ExactInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Laplace expansion along the first row. Exponential; test-scale only.
pub fn cofactor_det(m: &[Vec<ExactInt>]) -> ExactInt {
    let n = m.len();
    match n {
        0 => ExactInt::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut total = ExactInt::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<ExactInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * cofactor_det(&minor);
                if col % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn seq(v: &[i64]) -> Vec<ExactRat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn order_zero_is_one() {
        assert_eq!(hankel_det(HankelSpec::new(&[], 0)).unwrap(), rat(1));
    }

    #[test]
    fn fourth_power_order_two() {
        let s = seq(&[1, 4, 14]);
        assert_eq!(hankel_det(HankelSpec::new(&s, 2)).unwrap(), rat(-2));
    }

    #[test]
    fn motzkin_all_ones() {
        let s = seq(&[1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]);
        let t = hankel_table(&s, 5).unwrap();
        assert!(t.iter().all(|h| h == &rat(1)));
    }

    #[test]
    fn zero_sequence() {
        let s = seq(&[0, 0, 0]);
        assert_eq!(hankel_table(&s, 2).unwrap(), seq(&[1, 0, 0]));
    }

    #[test]
    fn too_short() {
        let s = seq(&[1, 2]);
        assert_eq!(
            hankel_det(HankelSpec::new(&s, 2)),
            Err(OracleError::InsufficientCoefficients {
                order: 2,
                needed: 3,
                available: 2
            })
        );
    }

    #[test]
    fn rational_entries() {
        // det [[1/2, 1/3], [1/3, 1/4]] = 1/8 - 1/9 = 1/72
        let s = vec![crate::exact::ratio(1, 2), crate::exact::ratio(1, 3), crate::exact::ratio(1, 4)];
        assert_eq!(hankel_det(HankelSpec::new(&s, 2)).unwrap(), crate::exact::ratio(1, 72));
    }

    #[test]
    fn pivot_search() {
        // anti-diagonal 3x3 needs row swaps
        let m = vec![
            vec![ExactInt::from(0), ExactInt::from(0), ExactInt::from(2)],
            vec![ExactInt::from(0), ExactInt::from(3), ExactInt::from(1)],
            vec![ExactInt::from(5), ExactInt::from(1), ExactInt::from(1)],
        ];
        assert_eq!(bareiss_det(m.clone()), cofactor_det(&m));
        assert_eq!(bareiss_det(m), ExactInt::from(-30));
    }
}
