//! Multi-index bookkeeping for forms on ℝ⁷.
//!
//! A strictly increasing multi-index is encoded as a 7-bit mask. Each degree
//! stores its masks in lexicographic order of the index tuples, which is the
//! coefficient order of [`super::KForm`]. Indices are 0-based throughout the
//! code; user-facing labels (`"123"`) are 1-based.

use std::sync::LazyLock;

pub const DIM: usize = 7;
pub const TOP_MASK: u8 = 0x7f;

struct Tables {
    masks: [Vec<u8>; DIM + 1],
    position: [u8; 128],
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    let mut masks: [Vec<u8>; DIM + 1] = Default::default();
    let mut position = [0u8; 128];
    for (k, slot) in masks.iter_mut().enumerate() {
        combos(k, 0, 0, slot);
        for (p, &m) in slot.iter().enumerate() {
            position[m as usize] = p as u8;
        }
    }
    Tables { masks, position }
});

fn combos(k: usize, start: usize, acc: u8, out: &mut Vec<u8>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    for i in start..DIM {
        if DIM - i >= k {
            combos(k - 1, i + 1, acc | (1 << i), out);
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Masks of degree `k` in coefficient order.
pub fn masks(k: usize) -> &'static [u8] {
    &TABLES.masks[k]
}

/// Coefficient slot of a mask within its degree.
pub fn position(mask: u8) -> usize {
    TABLES.position[mask as usize] as usize
}

pub fn indices(mask: u8) -> impl Iterator<Item = usize> {
    (0..8).filter(move |i| mask & (1 << i) != 0)
}

pub fn mask_of(indices: &[usize]) -> u8 {
    indices.iter().fold(0u8, |m, &i| m | (1 << i))
}

/// Sign of e^a ∧ e^b relative to e^{a|b}; zero if the masks overlap.
pub fn wedge_sign(a: u8, b: u8) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (i in a, j in b) with j < i
    let mut inv = 0;
    for i in indices(a) {
        inv += (b & ((1u8 << i) - 1)).count_ones();
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the permutation sorting `idx`; zero on repeated entries.
pub fn sort_sign(idx: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// 1-based label such as `"145"`.
pub fn label(mask: u8) -> String {
    indices(mask).map(|i| char::from(b'1' + i as u8)).collect()
}

/// Parse a 1-based label; returns the mask and the sign of sorting it.
pub fn parse_label(s: &str) -> Option<(u8, i32)> {
    let mut idx = Vec::new();
    for c in s.chars() {
        let d = c.to_digit(10)? as usize;
        if !(1..=DIM).contains(&d) {
            return None;
        }
        idx.push(d - 1);
    }
    let sign = sort_sign(&idx);
    if sign == 0 {
        return None;
    }
    Some((mask_of(&idx), sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes_match_binomials() {
        for k in 0..=DIM {
            assert_eq!(masks(k).len(), binomial(DIM, k));
            for (p, &m) in masks(k).iter().enumerate() {
                assert_eq!(position(m), p);
                assert_eq!(m.count_ones() as usize, k);
            }
        }
    }

    #[test]
    fn lexicographic_order() {
        let labels: Vec<String> = masks(3).iter().take(6).map(|&m| label(m)).collect();
        assert_eq!(labels, ["123", "124", "125", "126", "127", "134"]);
    }

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(0b010, 0b001), -1);
        assert_eq!(wedge_sign(0b001, 0b010), 1);
        assert_eq!(wedge_sign(0b011, 0b010), 0);
        assert_eq!(sort_sign(&[2, 0, 1]), 1);
        assert_eq!(sort_sign(&[1, 0, 2]), -1);
        assert_eq!(parse_label("213"), Some((0b111, -1)));
    }
}
