//! Exact Gaussian elimination over [`CycloRational`].

use crate::cyclo::CycloRational;

/// Rank of a row list. Rows may have different lengths; missing entries are zero.
pub fn rank(rows: &[Vec<CycloRational>]) -> usize {
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut m: Vec<Vec<CycloRational>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(width, CycloRational::zero());
            r
        })
        .collect();
    row_reduce(&mut m, width)
}

/// In-place forward elimination; returns the rank.
fn row_reduce(m: &mut [Vec<CycloRational>], width: usize) -> usize {
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for x in m[r][col..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a: &[Vec<CycloRational>]) -> Option<Vec<Vec<CycloRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<CycloRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    CycloRational::one()
                } else {
                    CycloRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> CycloRational {
        CycloRational::from_integer(n)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn inverse_over_cyclotomics() {
        let z = CycloRational::root_power(3, 1);
        let a = vec![vec![q(1), z.clone()], vec![q(0), q(2)]];
        let inv = invert(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = q(0);
                for k in 0..2 {
                    s += &(&a[i][k] * &inv[k][j]);
                }
                assert_eq!(s, q((i == j) as i64));
            }
        }
        assert!(invert(&[vec![q(1), q(1)], vec![q(2), q(2)]]).is_none());
    }
}
