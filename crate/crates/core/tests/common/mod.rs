#![allow(dead_code)]

/// Brute-force count of `q`-tuples over `2g` letters with no adjacent `(1, 2)`.
pub fn tuples_avoiding(g: u64, q: u32) -> u64 {
    let letters = 2 * g as usize;
    if letters == 0 {
        return u64::from(q == 0);
    }
    let mut count = 0;
    let mut t = vec![1usize; q as usize];
    loop {
        if t.windows(2).all(|w| w != [1, 2]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == t.len() {
                return count;
            }
            if t[i] < letters {
                t[i] += 1;
                break;
            }
            t[i] = 1;
            i += 1;
        }
    }
}

/// `1 + N(1) + ⋯ + N(q)` from the brute-force count.
pub fn partial_sum(g: u64, q: u32) -> u64 {
    (0..=q).map(|k| tuples_avoiding(g, k)).sum()
}

/// Rank of an integer matrix over F_p by schoolbook elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|&x| x * m[rank][c] % p == 1).expect("field");
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over Q via fraction-free elimination in i128.
pub fn rank_over_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            let (a, b) = (m[rank][c], m[r][c]);
            for k in 0..cols {
                m[r][k] = m[r][k] * a - m[rank][k] * b;
            }
            let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                for x in m[r].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
