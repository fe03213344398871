//! Normal forms in free products of finite cyclic groups.
//!
//! A reduced element is an alternating sequence of syllables `g_i^e` with
//! `0 < e < m_i` and no two consecutive syllables from the same factor. The
//! syllable is spelled with `e` copies of `g_i` when `2e <= m_i`, otherwise
//! with `m_i - e` copies of `g_i^-1`, which is geodesic.

use super::Word;

pub(super) fn invert_letter(orders: &[u32], letter: u8) -> u8 {
    if orders[(letter >> 1) as usize] == 2 {
        letter & !1
    } else {
        letter ^ 1
    }
}

/// Reduces an arbitrary sequence of letters to the canonical normal form.
pub(super) fn normalize(orders: &[u32], letters: impl Iterator<Item = u8>) -> Word {
    // (factor, exponent mod m)
    let mut stack: Vec<(u8, u32)> = Vec::new();
    for letter in letters {
        let factor = letter >> 1;
        let m = orders[factor as usize];
        let step = if letter & 1 == 1 { m - 1 } else { 1 };
        match stack.last_mut() {
            Some((f, e)) if *f == factor => {
                *e = (*e + step) % m;
                if *e == 0 {
                    stack.pop();
                }
            }
            _ => stack.push((factor, step % m)),
        }
    }
    spell(orders, &stack)
}

fn spell(orders: &[u32], syllables: &[(u8, u32)]) -> Word {
    let mut out = Word::new();
    for &(f, e) in syllables {
        let m = orders[f as usize];
        if 2 * e <= m {
            out.extend(std::iter::repeat(2 * f).take(e as usize));
        } else {
            out.extend(std::iter::repeat(2 * f + 1).take((m - e) as usize));
        }
    }
    out
}

/// Number of syllables of a normal-form word.
pub fn syllable_count(word: &[u8]) -> usize {
    let mut count = 0;
    let mut last = None;
    for &l in word {
        let f = l >> 1;
        if last != Some(f) {
            count += 1;
            last = Some(f);
        }
    }
    count
}
