//! Smith normal form over the integers, enough for first homology.

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn invariant_factors(rows: usize, cols: usize, entries: &[i64]) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = (0..rows)
        .map(|r| entries[r * cols..(r + 1) * cols].iter().map(|&x| x as i128).collect())
        .collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for r in t + 1..rows {
                let q = a[r][t] / p;
                if q != 0 {
                    for c in t..cols {
                        a[r][c] -= q * a[t][c];
                    }
                }
                dirty |= a[r][t] != 0;
            }
            for c in t + 1..cols {
                let q = a[t][c] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[c] -= q * row[t];
                    }
                }
                dirty |= a[t][c] != 0;
            }
            if !dirty {
                // Pivot must divide the rest, otherwise fold an offending row in.
                let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a[r][c] % p != 0));
                match bad {
                    Some(r) => {
                        for c in t..cols {
                            a[t][c] += a[r][c];
                        }
                    }
                    None => break,
                }
            }
            let (pr, pc) = min_entry_in_cross(&a, t);
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
        }
        out.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    out
}

fn min_entry(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                best = Some((x.abs(), r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// Smallest nonzero entry in row `t` or column `t`.
fn min_entry_in_cross(a: &[Vec<i128>], t: usize) -> (usize, usize) {
    let mut best = (a[t][t].abs(), t, t);
    let mut consider = |x: i128, r: usize, c: usize| {
        if x != 0 && (best.0 == 0 || x.abs() < best.0) {
            best = (x.abs(), r, c);
        }
    };
    for c in t..a[t].len() {
        consider(a[t][c], t, c);
    }
    for (r, row) in a.iter().enumerate().skip(t) {
        consider(row[t], r, t);
    }
    (best.1, best.2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_forms() {
        assert_eq!(invariant_factors(1, 1, &[2]), vec![2]);
        assert_eq!(invariant_factors(1, 1, &[-1]), vec![1]);
        assert_eq!(invariant_factors(2, 2, &[2, 0, 0, 3]), vec![1, 6]);
        assert_eq!(invariant_factors(2, 3, &[0, 0, 0, 0, 0, 0]), Vec::<u64>::new());
        assert_eq!(invariant_factors(3, 2, &[2, 4, 6, 8, 10, 12]), vec![2, 4]);
    }
}
