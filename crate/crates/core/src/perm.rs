//! Small permutation helpers on `u8`-labelled points.

/// Cycles of `perm`, each starting at its smallest point, ordered by that point.
pub fn cycles(perm: &[u8]) -> Vec<Vec<u8>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            cyc.push(h as u8);
            h = perm[h] as usize;
        }
        out.push(cyc);
    }
    out
}

/// For every point, the index of its cycle (cycles ordered by smallest point),
/// together with the number of cycles.
pub fn cycle_ids(perm: &[u8]) -> (Vec<u8>, usize) {
    const NONE: u8 = u8::MAX;
    let mut ids = vec![NONE; perm.len()];
    let mut count = 0usize;
    for start in 0..perm.len() {
        if ids[start] != NONE {
            continue;
        }
        let mut h = start;
        while ids[h] == NONE {
            ids[h] = count as u8;
            h = perm[h] as usize;
        }
        count += 1;
    }
    (ids, count)
}

pub fn is_permutation(perm: &[u8]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &x in perm {
        let x = x as usize;
        if x >= perm.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn inverse(perm: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; perm.len()];
    for (i, &x) in perm.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// `(a ∘ b)(h) = a(b(h))`.
pub fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Parity of a sequence that is a rearrangement of `0..seq.len()`;
/// returns `true` when odd.
pub fn is_odd(seq: &[u8]) -> bool {
    let mut seen = vec![false; seq.len()];
    let mut transpositions = 0usize;
    for start in 0..seq.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = seq[h] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_are_sorted_by_min() {
        let p = [2u8, 0, 1, 4, 3, 5];
        assert_eq!(cycles(&p), vec![vec![0, 2, 1], vec![3, 4], vec![5]]);
        let (ids, n) = cycle_ids(&p);
        assert_eq!(n, 3);
        assert_eq!(ids, vec![0, 0, 0, 1, 1, 2]);
    }

    #[test]
    fn parity() {
        assert!(!is_odd(&[0, 1, 2]));
        assert!(is_odd(&[1, 0, 2]));
        assert!(!is_odd(&[1, 2, 0]));
        assert!(!is_odd(&[3, 2, 1, 0, 4]));
    }

    #[test]
    fn compose_and_inverse() {
        let p = [1u8, 2, 0];
        let q = inverse(&p);
        assert_eq!(compose(&p, &q), vec![0, 1, 2]);
        assert!(is_permutation(&p));
        assert!(!is_permutation(&[0, 0]));
    }
}
