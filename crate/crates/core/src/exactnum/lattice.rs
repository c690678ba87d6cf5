use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A basis of the lattice `{v in Z^c : A v = 0}` for an integer matrix `A`
/// given by rows of length `c`. The basis is returned in Hermite normal form
/// (rows, positive pivots, reduced above-pivot entries).
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // u holds the unimodular column transform, stored column-major: u[j] is column j
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut col = vec![BigInt::zero(); ncols];
            col[j] = BigInt::one();
            col
        })
        .collect();
    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot == ncols {
            break;
        }
        loop {
            // smallest nonzero entry in row r among the free columns
            let best = (pivot..ncols)
                .filter(|&j| !a[r][j].is_zero())
                .min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()));
            let Some(b) = best else { break };
            swap_cols(&mut a, &mut u, pivot, b);
            let mut done = true;
            for j in pivot + 1..ncols {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][pivot]);
                sub_col(&mut a, &mut u, j, pivot, &q);
                if !a[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = u[pivot..].to_vec();
    hermite_rows(basis)
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// column j -= q * column k
fn sub_col(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let d = &row[k] * q;
        row[j] -= d;
    }
    let colk = u[k].clone();
    for (x, y) in u[j].iter_mut().zip(colk) {
        *x -= y * q;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
pub(crate) fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out_row = 0;
    for c in 0..ncols {
        loop {
            let best = (out_row..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&x, &y| rows[x][c].abs().cmp(&rows[y][c].abs()));
            let Some(b) = best else { break };
            rows.swap(out_row, b);
            let mut done = true;
            for i in out_row + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[out_row][c]);
                let piv = rows[out_row].clone();
                for (x, y) in rows[i].iter_mut().zip(piv) {
                    *x -= y * &q;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[out_row][c].is_negative() {
                    for x in rows[out_row].iter_mut() {
                        *x = -&*x;
                    }
                }
                for i in 0..out_row {
                    let q = rows[i][c].div_floor(&rows[out_row][c]);
                    if !q.is_zero() {
                        let piv = rows[out_row].clone();
                        for (x, y) in rows[i].iter_mut().zip(piv) {
                            *x -= y * &q;
                        }
                    }
                }
                out_row += 1;
                break;
            }
        }
    }
    rows.truncate(out_row);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn apply(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    #[test]
    fn kernel_of_single_relation() {
        let a = m(&[&[2, 3, 5]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&a, v).iter().all(Zero::is_zero));
        }
        // the lattice {2x+3y+5z=0} has determinant 1 in the plane; (1,1,-1) is in it
        // and must be an integer combination of the basis
        let target = [1i64, 1, -1].map(BigInt::from);
        let (b0, b1) = (&k[0], &k[1]);
        let det = &b0[0] * &b1[1] - &b0[1] * &b1[0];
        assert!(!det.is_zero());
        let s = (&target[0] * &b1[1] - &target[1] * &b1[0]) / &det;
        let t = (&b0[0] * &target[1] - &b0[1] * &target[0]) / &det;
        for i in 0..3 {
            assert_eq!(&b0[i] * &s + &b1[i] * &t, target[i]);
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert!(integer_kernel(&a, 2).is_empty());
        assert_eq!(integer_kernel(&[], 2).len(), 2);
    }

    #[test]
    fn kernel_is_saturated() {
        // x - 2y = 0 over Z^2: kernel generated by (2, 1), not by a multiple
        let k = integer_kernel(&m(&[&[1, -2]]), 2);
        assert_eq!(k, m(&[&[2, 1]]));
    }
}
