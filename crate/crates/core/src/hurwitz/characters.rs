//! Irreducible characters of symmetric groups by the Murnaghan–Nakayama
//! rule, with partitions handled through their beta-sets.

/// Partitions of `n` as non-increasing part lists, in reverse lexicographic
/// order (`[n]` first, `[1, .., 1]` last).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `chi^lambda` evaluated on the class of cycle type `mu`. Both must be
/// partitions of the same integer.
pub fn character(lambda: &[usize], mu: &[usize]) -> i64 {
    assert_eq!(
        lambda.iter().sum::<usize>(),
        mu.iter().sum::<usize>(),
        "partitions of different sizes"
    );
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut parts: Vec<usize> = mu.iter().copied().filter(|&p| p > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    strip(&beta, &parts)
}

// Removing a rim hook of length r moves one bead of the beta-set down by r;
// the sign counts the beads jumped over.
fn strip(beta: &[usize], mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.to_vec();
        next[i] = b - r;
        let v = strip(&next, rest);
        total += if jumped % 2 == 0 { v } else { -v };
    }
    total
}

/// Degree of the irreducible representation `lambda`.
pub fn dimension(lambda: &[usize]) -> i64 {
    let n = lambda.iter().sum();
    character(lambda, &vec![1; n])
}

/// Size of the conjugacy class of cycle type `mu` in `S_n`.
pub fn class_size(mu: &[usize]) -> u128 {
    let n: usize = mu.iter().sum();
    let mut centralizer: u128 = 1;
    let mut counts = std::collections::BTreeMap::new();
    for &p in mu {
        *counts.entry(p).or_insert(0u32) += 1;
        centralizer *= p as u128;
    }
    for &c in counts.values() {
        centralizer *= factorial(c as usize);
    }
    factorial(n) / centralizer
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn s3_table() {
        // rows [3], [2,1], [1,1,1]; columns 1^3, (2 1), (3)
        let cols = [vec![1, 1, 1], vec![2, 1], vec![3]];
        let table: Vec<Vec<i64>> = partitions(3)
            .iter()
            .map(|l| cols.iter().map(|m| character(l, m)).collect())
            .collect();
        assert_eq!(table, vec![vec![1, 1, 1], vec![2, 0, -1], vec![1, -1, 1]]);
    }

    #[test]
    fn dimensions_square_sum_to_order() {
        for n in 1..=7 {
            let s: i64 = partitions(n).iter().map(|l| dimension(l).pow(2)).sum();
            assert_eq!(s as u128, factorial(n));
        }
        assert_eq!(dimension(&[3, 2, 1]), 16);
        assert_eq!(dimension(&[2, 2]), 2);
    }

    #[test]
    fn column_orthogonality_in_s5() {
        let ps = partitions(5);
        for a in &ps {
            for b in &ps {
                let s: i64 = ps.iter().map(|l| character(l, a) * character(l, b)).sum();
                let expect = if a == b { (factorial(5) / class_size(a)) as i64 } else { 0 };
                assert_eq!(s, expect, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn class_sizes_partition_the_group() {
        for n in 1..=6 {
            let s: u128 = partitions(n).iter().map(|m| class_size(m)).sum();
            assert_eq!(s, factorial(n));
        }
        assert_eq!(class_size(&[2, 1, 1]), 6);
    }
}
