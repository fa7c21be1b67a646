//! Strictly increasing index tuples (basis labels of Λ^p) in lexicographic
//! order, with rank/unrank and sorting-sign helpers.

/// Binomial coefficient as usize (small arguments only).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All strictly increasing p-tuples from 0..n, lexicographic.
pub fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    let mut cur = Vec::with_capacity(p);
    fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        let remaining = p - cur.len();
        for i in start..=(n - remaining) {
            cur.push(i);
            rec(n, p, i + 1, cur, out);
            cur.pop();
        }
    }
    if p == 0 {
        out.push(Vec::new());
    } else if p <= n {
        rec(n, p, 0, &mut cur, &mut out);
    }
    out
}

/// Lexicographic rank of a sorted combination within `combinations(n, p)`.
pub fn combo_rank(n: usize, combo: &[usize]) -> usize {
    let p = combo.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &c) in combo.iter().enumerate() {
        for skipped in prev..c {
            rank += binomial(n - skipped - 1, p - pos - 1);
        }
        prev = c + 1;
    }
    rank
}

/// Sorts indices ascending, returning `None` on a repeat, else the sorted
/// tuple and the sign of the sorting permutation.
pub fn sort_signed(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // Insertion sort, counting swaps; tuples here are tiny.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}
