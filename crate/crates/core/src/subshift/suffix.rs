use crate::word::Letter;

/// Suffix array by prefix doubling, `O(N log² N)`.
pub fn suffix_array(word: &[Letter]) -> Vec<usize> {
    let n = word.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<usize> = word.iter().map(|&a| a as usize).collect();
    let mut tmp = vec![0usize; n];
    let mut k = 1;
    loop {
        // rank 0 marks "past the end", so real ranks are shifted by one
        let key = |i: usize| (rank[i] + 1, if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai's algorithm: `lcp[i]` is the longest common prefix of the suffixes
/// at `sa[i − 1]` and `sa[i]`, with `lcp[0] = 0`.
pub fn lcp_array(word: &[Letter], sa: &[usize]) -> Vec<usize> {
    let n = word.len();
    let mut rank = vec![0; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p] = i;
    }
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for p in 0..n {
        if rank[p] == 0 {
            h = 0;
            continue;
        }
        let q = sa[rank[p] - 1];
        while p + h < n && q + h < n && word[p + h] == word[q + h] {
            h += 1;
        }
        lcp[rank[p]] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(word: &[Letter]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..word.len()).collect();
        sa.sort_by(|&a, &b| word[a..].cmp(&word[b..]));
        sa
    }

    #[test]
    fn banana() {
        let w: Vec<Letter> = "banana".bytes().map(u32::from).collect();
        let sa = suffix_array(&w);
        assert_eq!(sa, vec![5, 3, 1, 0, 4, 2]);
        assert_eq!(lcp_array(&w, &sa), vec![0, 1, 3, 0, 0, 2]);
    }

    #[test]
    fn matches_naive_sort() {
        let mut x: u64 = 12345;
        for len in 0..60 {
            for _ in 0..20 {
                let w: Vec<Letter> = (0..len)
                    .map(|_| {
                        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((x >> 33) % 3) as u32
                    })
                    .collect();
                let sa = suffix_array(&w);
                assert_eq!(sa, naive_sa(&w));
                let lcp = lcp_array(&w, &sa);
                for i in 1..sa.len() {
                    let l = w[sa[i - 1]..]
                        .iter()
                        .zip(&w[sa[i]..])
                        .take_while(|(a, b)| a == b)
                        .count();
                    assert_eq!(lcp[i], l);
                }
            }
        }
    }
}
