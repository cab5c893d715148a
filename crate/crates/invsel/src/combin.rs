//! Allocation-free lexicographic enumeration of index subsets, shared by the
//! exhaustive oracle search and the sparse-eigenvalue diagnostic.

/// Visit every size-`k` subset of `{1,…,p}` in lexicographic order.
pub(crate) fn for_each_combination<F: FnMut(&[usize])>(p: usize, k: usize, mut visit: F) {
    if k > p {
        return;
    }
    if k == 0 {
        visit(&[]);
        return;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        visit(&idx);
        // advance to the lexicographic successor
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] < p - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

/// Binomial coefficient with saturation, used for enumeration guards.
pub(crate) fn binomial(p: usize, k: usize) -> u128 {
    if k > p {
        return 0;
    }
    let k = k.min(p - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((p - i) as u128) / (i as u128 + 1);
        if acc == u128::MAX {
            return u128::MAX;
        }
    }
    acc
}

/// Number of models of size at most `cap` over `p` indices (including ∅).
pub(crate) fn count_models(p: usize, cap: usize) -> u128 {
    (0..=cap.min(p)).fold(0u128, |acc, k| acc.saturating_add(binomial(p, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_match_binomials() {
        for (p, k) in [(5, 0), (5, 1), (5, 3), (6, 6), (12, 3)] {
            let mut count = 0u128;
            let mut prev: Option<Vec<usize>> = None;
            for_each_combination(p, k, |c| {
                count += 1;
                assert!(c.windows(2).all(|w| w[0] < w[1]));
                if let Some(p0) = &prev {
                    assert!(p0.as_slice() < c, "not lexicographically increasing");
                }
                prev = Some(c.to_vec());
            });
            assert_eq!(count, binomial(p, k));
        }
    }

    #[test]
    fn model_space_sizes() {
        // 1 + 12 + 66 + 220 models of size ≤ 3 over 12 indices
        assert_eq!(count_models(12, 3), 299);
        assert_eq!(count_models(24, 2), 301);
    }
}
