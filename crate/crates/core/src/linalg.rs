//! Gaussian elimination over Q_p and E with valuation-based pivoting: the
//! pivot is always the entry of smallest valuation in the active column,
//! which keeps the multipliers integral and limits precision loss.

use crate::error::{Error, Result};

pub trait PivotEntry: Clone {
    /// `None` when the entry is indistinguishable from zero.
    fn pivot_valuation(&self) -> Option<i64>;
    fn minus_product(&self, a: &Self, b: &Self) -> Result<Self>;
    fn divided_by(&self, d: &Self) -> Result<Self>;
}

/// Reduce `rows` to row echelon form in place. Returns the pivot columns.
fn echelon<T: PivotEntry>(rows: &mut [Vec<T>], ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter_map(|i| rows[i][col].pivot_valuation().map(|v| (v, i)))
            .min();
        let Some((_, i)) = best else { continue };
        rows.swap(r, i);
        let pivot = rows[r][col].clone();
        for i in r + 1..rows.len() {
            if rows[i][col].pivot_valuation().is_none() {
                continue;
            }
            let factor = rows[i][col].divided_by(&pivot)?;
            for j in col..rows[i].len() {
                let updated = rows[i][j].minus_product(&factor, &rows[r][j])?;
                rows[i][j] = updated;
            }
        }
        pivots.push(col);
        r += 1;
    }
    Ok(pivots)
}

/// Rank of a matrix given by rows, at the available precision.
pub fn rank<T: PivotEntry>(mut rows: Vec<Vec<T>>) -> Result<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    Ok(echelon(&mut rows, ncols)?.len())
}

/// Solve the square system `a x = b`.
pub fn solve<T: PivotEntry>(a: Vec<Vec<T>>, b: Vec<T>) -> Result<Vec<T>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("system must be square".into()));
    }
    let mut aug: Vec<Vec<T>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let pivots = echelon(&mut aug, n)?;
    if pivots.len() < n {
        return Err(Error::DivisionByZero);
    }
    let mut x: Vec<Option<T>> = vec![None; n];
    for i in (0..n).rev() {
        let mut acc = aug[i][n].clone();
        for j in i + 1..n {
            acc = acc.minus_product(&aug[i][j], x[j].as_ref().expect("back substitution order"))?;
        }
        x[i] = Some(acc.divided_by(&aug[i][i])?);
    }
    Ok(x.into_iter().map(|v| v.expect("solved")).collect())
}
