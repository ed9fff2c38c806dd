//! The 16 basis blades of the exterior algebra over a 4-dimensional chart.
//!
//! Canonical order is grade-major, lexicographic within each grade:
//!
//! ```text
//! 1;  dx0, dx1, dx2, dx3;
//! dx0^dx1, dx0^dx2, dx0^dx3, dx1^dx2, dx1^dx3, dx2^dx3;
//! dx0^dx1^dx2, dx0^dx1^dx3, dx0^dx2^dx3, dx1^dx2^dx3;
//! dx0^dx1^dx2^dx3
//! ```
//!
//! Every serialization and coefficient array in the crate uses this order.
//! Bit `i` of a blade mask marks the presence of `dx^i`.

pub const BLADE_COUNT: usize = 16;
pub const DIM: usize = 4;

/// Blade masks in canonical order.
pub const BLADE_MASKS: [u8; BLADE_COUNT] = [
    0b0000, // 1
    0b0001, 0b0010, 0b0100, 0b1000, // dx0 .. dx3
    0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, // grade 2
    0b0111, 0b1011, 0b1101, 0b1110, // grade 3
    0b1111, // volume
];

/// Inverse of [`BLADE_MASKS`]: canonical index of each mask.
pub const MASK_TO_INDEX: [usize; BLADE_COUNT] = {
    let mut inv = [0usize; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        inv[BLADE_MASKS[i] as usize] = i;
        i += 1;
    }
    inv
};

/// Grade (number of covector factors) of each canonical blade.
pub const BLADE_GRADES: [usize; BLADE_COUNT] = {
    let mut g = [0usize; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        g[i] = BLADE_MASKS[i].count_ones() as usize;
        i += 1;
    }
    g
};

/// Canonical blade indices of grade `k`.
pub fn blades_of_grade(k: usize) -> impl Iterator<Item = usize> {
    (0..BLADE_COUNT).filter(move |&i| BLADE_GRADES[i] == k)
}

/// Coordinate indices present in a mask, ascending.
pub fn mask_indices(mask: u8) -> impl Iterator<Item = usize> {
    (0..DIM).filter(move |i| mask & (1 << i) != 0)
}

/// Canonical index of the grade-1 blade `dx^mu`.
pub const fn covector_index(mu: usize) -> usize {
    1 + mu
}

/// Canonical index of `dx^i ^ dx^j` for `i < j`.
pub fn bivector_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < DIM);
    MASK_TO_INDEX[((1u8 << i) | (1u8 << j)) as usize]
}

/// Wedge of two canonical blades: `None` when they share a covector,
/// otherwise the target blade and the reordering sign.
pub fn wedge_blades(a: usize, b: usize) -> Option<(usize, f64)> {
    let (ma, mb) = (BLADE_MASKS[a], BLADE_MASKS[b]);
    if ma & mb != 0 {
        return None;
    }
    // Parity of the merge: for each factor of `a`, count factors of `b`
    // that must move past it.
    let mut swaps = 0u32;
    for i in mask_indices(ma) {
        swaps += (mb & ((1 << i) - 1)).count_ones();
    }
    let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    Some((MASK_TO_INDEX[(ma | mb) as usize], sign))
}

/// Normalize an arbitrary tuple of coordinate indices to a canonical blade.
/// Returns `None` when an index repeats. The sign is the parity of the sort.
pub fn tuple_to_blade(tuple: &[usize]) -> Option<(usize, f64)> {
    let mut mask = 0u8;
    for &i in tuple {
        debug_assert!(i < DIM);
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
    }
    let mut inv = 0usize;
    for a in 0..tuple.len() {
        for b in a + 1..tuple.len() {
            if tuple[a] > tuple[b] {
                inv += 1;
            }
        }
    }
    let sign = if inv % 2 == 0 { 1.0 } else { -1.0 };
    Some((MASK_TO_INDEX[mask as usize], sign))
}

/// Antisymmetric component of a blade: the signed coefficient multiplier for
/// reading `u_{tuple}` out of the stored strictly-increasing components.
/// Returns the canonical blade index whose stored coefficient carries it.
pub fn antisym_lookup(tuple: &[usize]) -> Option<(usize, f64)> {
    tuple_to_blade(tuple)
}

/// Sign of a permutation of `{0,1,2,3}` (the Levi-Civita symbol with
/// `eps_{0123} = +1`).
pub fn perm_sign(p: &[usize; 4]) -> f64 {
    let mut inv = 0usize;
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// All 24 permutations of `(0,1,2,3)`.
pub static PERMUTATIONS4: [[usize; 4]; 24] = {
    let mut out = [[0usize; 4]; 24];
    let mut count = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let mut d = 0;
                while d < 4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[count] = [a, b, c, d];
                        count += 1;
                    }
                    d += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

/// Visit every permutation of `items` together with its parity sign.
pub fn for_each_permutation<F: FnMut(&[usize], f64)>(items: &[usize], mut f: F) {
    let mut buf = [0usize; 4];
    let n = items.len();
    buf[..n].copy_from_slice(items);
    permute_rec(&mut buf, n, 0, 1.0, &mut f);
}

fn permute_rec<F: FnMut(&[usize], f64)>(buf: &mut [usize; 4], n: usize, k: usize, sign: f64, f: &mut F) {
    if k == n {
        f(&buf[..n], sign);
        return;
    }
    for i in k..n {
        let s = if i == k { sign } else { -sign };
        buf.swap(k, i);
        permute_rec(buf, n, k + 1, s, f);
        buf.swap(k, i);
    }
}

pub const FACTORIAL: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// Human-readable blade label, e.g. `dx0^dx2`.
pub fn blade_label(i: usize) -> String {
    if i == 0 {
        return "1".to_string();
    }
    mask_indices(BLADE_MASKS[i])
        .map(|k| format!("dx{k}"))
        .collect::<Vec<_>>()
        .join("^")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_grade_major_lexicographic() {
        let labels: Vec<String> = (0..16).map(blade_label).collect();
        assert_eq!(
            labels,
            vec![
                "1", "dx0", "dx1", "dx2", "dx3", "dx0^dx1", "dx0^dx2", "dx0^dx3", "dx1^dx2",
                "dx1^dx3", "dx2^dx3", "dx0^dx1^dx2", "dx0^dx1^dx3", "dx0^dx2^dx3", "dx1^dx2^dx3",
                "dx0^dx1^dx2^dx3"
            ]
        );
        for i in 0..16 {
            assert_eq!(MASK_TO_INDEX[BLADE_MASKS[i] as usize], i);
        }
    }

    #[test]
    fn wedge_sign_matches_bubble_sort_parity() {
        // Independent parity oracle: concatenate index lists and bubble sort.
        for a in 0..16 {
            for b in 0..16 {
                let mut tuple: Vec<usize> = mask_indices(BLADE_MASKS[a]).collect();
                tuple.extend(mask_indices(BLADE_MASKS[b]));
                let expected = {
                    let mut t = tuple.clone();
                    let mut sign = 1.0;
                    let mut dup = false;
                    for i in 0..t.len() {
                        for j in (i + 1..t.len()).rev() {
                            if t[j - 1] > t[j] {
                                t.swap(j - 1, j);
                                sign = -sign;
                            }
                        }
                    }
                    for w in t.windows(2) {
                        if w[0] == w[1] {
                            dup = true;
                        }
                    }
                    if dup {
                        None
                    } else {
                        Some(sign)
                    }
                };
                match (wedge_blades(a, b), expected) {
                    (None, None) => {}
                    (Some((_, s)), Some(e)) => assert_eq!(s, e, "blades {a} {b}"),
                    other => panic!("mismatch for {a},{b}: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn permutation_table_is_complete() {
        assert_eq!(PERMUTATIONS4.len(), 24);
        let mut seen = std::collections::HashSet::new();
        for p in PERMUTATIONS4 {
            assert!(seen.insert(p));
        }
        assert_eq!(perm_sign(&[0, 1, 2, 3]), 1.0);
        assert_eq!(perm_sign(&[1, 0, 2, 3]), -1.0);
        assert_eq!(perm_sign(&[1, 2, 3, 0]), -1.0);
        assert_eq!(perm_sign(&[0, 2, 3, 1]), 1.0);
    }

    #[test]
    fn parity_of_recursive_enumeration_agrees() {
        for_each_permutation(&[0, 1, 2, 3], |p, s| {
            let arr = [p[0], p[1], p[2], p[3]];
            assert_eq!(s, perm_sign(&arr));
        });
    }
}
