//! Small deterministic iteration helpers: lexicographic permutations and
//! combinations. Everything that scans "all orderings" or "subsets by size"
//! goes through these so tie-breaking is identical everywhere.

/// Advances `items` to the next lexicographic permutation; false at the end.
pub(crate) fn next_permutation(items: &mut [usize]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Calls `f` on every permutation of `0..n` in lexicographic order until it
/// returns false.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if !f(&perm) {
            return;
        }
        if !next_permutation(&mut perm) {
            return;
        }
    }
}

/// Calls `f` on every `k`-combination of `0..n` (ascending index vectors, in
/// lexicographic order) until it returns false.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // Advance.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_lexicographic_and_complete() {
        let mut seen = Vec::new();
        for_each_permutation(3, |p| {
            seen.push(p.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn combinations_count_and_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(sorted, seen);
    }

    #[test]
    fn early_stop() {
        let mut count = 0;
        for_each_permutation(4, |_| {
            count += 1;
            count < 5
        });
        assert_eq!(count, 5);
    }
}
