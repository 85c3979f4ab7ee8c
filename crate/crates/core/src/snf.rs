//! Smith normal form of integer matrices, enough to read off abelian
//! invariants of a finitely presented group.

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors `d₁ | d₂ | … | d_k` (all positive) of an integer
/// matrix given as rows; `k` is the rank.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry in the remaining block
        let pivot = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            let f = a[i][t] / a[t][t];
            if f != 0 {
                for j in t..ncols {
                    a[i][j] -= f * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..ncols {
            let f = a[t][j] / a[t][t];
            if f != 0 {
                for i in t..nrows {
                    a[i][j] -= f * a[i][t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if clean {
            diag.push(a[t][t].abs());
            t += 1;
        }
    }
    // enforce divisibility: diag(a, b) ~ diag(gcd, lcm)
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        assert_eq!(invariant_factors(&[vec![2, 4], vec![6, 8]]), [2, 4]);
        assert_eq!(invariant_factors(&[vec![4, 0], vec![0, 6]]), [2, 12]);
        assert_eq!(invariant_factors(&[vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(invariant_factors(&[vec![4, 0], vec![0, 2], vec![2, 2], vec![4, 0]]), [2, 2]);
        assert_eq!(invariant_factors(&[]), Vec::<i64>::new());
        assert_eq!(invariant_factors(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), [1, 3]);
    }
}
