/// Rank over GF(2) of packed rows, each `n_cols` bits wide.
pub(crate) fn rank(mut rows: Vec<Vec<u64>>, n_cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..n_cols {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right null space `{x : H x = 0}`, each vector packed like the rows.
pub(crate) fn null_space(mut rows: Vec<Vec<u64>>, n_cols: usize) -> Vec<Vec<u64>> {
    let words = n_cols.div_ceil(64);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n_cols {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let is_pivot = {
        let mut m = vec![false; n_cols];
        pivots.iter().for_each(|&p| m[p] = true);
        m
    };
    (0..n_cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u64; words];
            x[free / 64] |= 1 << (free % 64);
            for (r, &p) in pivots.iter().enumerate() {
                if rows[r][free / 64] & (1 << (free % 64)) != 0 {
                    x[p / 64] |= 1 << (p % 64);
                }
            }
            x
        })
        .collect()
}
