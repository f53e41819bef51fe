//! Terminated texts and the string families used as ground truth.
//!
//! Every [`Text`] ends with the sentinel byte `0`, which occurs nowhere else
//! and compares smaller than every other symbol. Fibonacci words are written
//! over `a = 1`, `b = 2`; de Bruijn and the cumulative-edit family use the
//! symbols `1..=sigma` (plus `sigma + 1` for the edits).

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const SENTINEL: u8 = 0;

/// Symbols of the Fibonacci alphabet.
pub const FIB_A: u8 = 1;
pub const FIB_B: u8 = 2;

/// Default cap on the number of symbols a generator may produce.
pub const DEFAULT_BUDGET: usize = 1 << 28;

/// Positions are stored as `u32`; texts must stay below this length.
pub const MAX_TEXT_LEN: usize = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Text {
    bytes: Vec<u8>,
    sigma: usize,
}

impl Text {
    /// Appends the sentinel to `raw`. Fails if `raw` already contains byte 0.
    pub fn from_raw(raw: &[u8]) -> Result<Text> {
        if let Some(position) = raw.iter().position(|&c| c == SENTINEL) {
            return Err(Error::SentinelCollision { position });
        }
        if raw.len() >= MAX_TEXT_LEN {
            return Err(Error::SizeLimit {
                requested: raw.len() as u128 + 1,
                limit: MAX_TEXT_LEN,
            });
        }
        let mut bytes = Vec::with_capacity(raw.len() + 1);
        bytes.extend_from_slice(raw);
        bytes.push(SENTINEL);
        Ok(Text::from_terminated_unchecked(bytes))
    }

    /// Wraps an already terminated byte vector. Fails unless the last byte is
    /// the only sentinel.
    pub fn from_terminated(bytes: Vec<u8>) -> Result<Text> {
        match bytes.iter().position(|&c| c == SENTINEL) {
            Some(p) if p + 1 == bytes.len() => Ok(Text::from_terminated_unchecked(bytes)),
            Some(position) => Err(Error::SentinelCollision { position }),
            None => Err(Error::InvalidParameter(
                "text is not terminated by the sentinel",
            )),
        }
    }

    fn from_terminated_unchecked(bytes: Vec<u8>) -> Text {
        let mut seen = [false; 256];
        for &c in &bytes[..bytes.len() - 1] {
            seen[c as usize] = true;
        }
        let sigma = seen.iter().filter(|&&s| s).count();
        Text { bytes, sigma }
    }

    /// Length including the sentinel.
    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false: a text holds at least the sentinel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct symbols, sentinel excluded.
    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// All symbols, sentinel included.
    #[inline]
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// The symbols before the sentinel.
    #[inline]
    pub fn raw(&self) -> &[u8] {
        &self.bytes[..self.bytes.len() - 1]
    }

    #[inline]
    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

impl core::ops::Index<usize> for Text {
    type Output = u8;

    #[inline]
    fn index(&self, i: usize) -> &u8 {
        &self.bytes[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FibVariant {
    /// `F_1 = b`, `F_2 = a`, `F_k = F_{k-1} F_{k-2}`.
    Standard,
    /// `F_1 = a`, `F_2 = ba`, `F_k = F_{k-2} F_{k-1}`.
    Alt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Fibonacci,
    FibonacciAlt,
    DeBruijn,
    Lemma35,
}

/// A member of one of the generated families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub k: u32,
    /// Alphabet size; ignored by the Fibonacci families.
    pub sigma: u32,
}

impl FamilySpec {
    pub fn fibonacci(k: u32) -> Self {
        FamilySpec {
            family: Family::Fibonacci,
            k,
            sigma: 2,
        }
    }

    pub fn fibonacci_alt(k: u32) -> Self {
        FamilySpec {
            family: Family::FibonacciAlt,
            k,
            sigma: 2,
        }
    }

    pub fn de_bruijn(k: u32, sigma: u32) -> Self {
        FamilySpec {
            family: Family::DeBruijn,
            k,
            sigma,
        }
    }

    pub fn lemma35(sigma: u32) -> Self {
        FamilySpec {
            family: Family::Lemma35,
            k: 0,
            sigma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Fibonacci | Family::FibonacciAlt if self.k < 1 => Err(Error::InvalidParameter(
                "Fibonacci order must be at least 1",
            )),
            Family::DeBruijn if self.k < 1 => Err(Error::InvalidParameter(
                "de Bruijn order must be at least 1",
            )),
            Family::DeBruijn if !(2..=255).contains(&self.sigma) => Err(Error::InvalidParameter(
                "de Bruijn alphabet size must be in 2..=255",
            )),
            Family::Lemma35 if self.sigma < 4 || self.sigma > 254 => Err(Error::InvalidParameter(
                "cumulative-edit family needs 4 <= sigma <= 254",
            )),
            Family::Lemma35 if self.sigma % 3 == 0 => Err(Error::InvalidParameter(
                "cumulative-edit family needs sigma not divisible by 3",
            )),
            _ => Ok(()),
        }
    }

    pub fn generate(&self, budget: usize) -> Result<Text> {
        self.validate()?;
        match self.family {
            Family::Fibonacci => fibonacci_word(self.k, FibVariant::Standard, budget),
            Family::FibonacciAlt => fibonacci_word(self.k, FibVariant::Alt, budget),
            Family::DeBruijn => de_bruijn(self.k, self.sigma, budget),
            Family::Lemma35 => lemma35_text(self.sigma),
        }
    }
}

/// The Fibonacci number `f_k` with `f_1 = f_2 = 1`, or `None` on overflow.
pub fn fibonacci_number(k: u32) -> Option<u128> {
    if k == 0 {
        return Some(0);
    }
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 2..k {
        let c = a.checked_add(b)?;
        a = b;
        b = c;
    }
    Some(b)
}

fn check_budget(requested: u128, budget: usize) -> Result<usize> {
    let limit = budget.min(MAX_TEXT_LEN - 1);
    if requested > limit as u128 {
        Err(Error::SizeLimit { requested, limit })
    } else {
        Ok(requested as usize)
    }
}

/// The `k`-th Fibonacci word, terminated.
pub fn fibonacci_word(k: u32, variant: FibVariant, budget: usize) -> Result<Text> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "Fibonacci order must be at least 1",
        ));
    }
    let len = match variant {
        FibVariant::Standard => fibonacci_number(k),
        FibVariant::Alt => fibonacci_number(k + 1),
    }
    .unwrap_or(u128::MAX);
    let len = check_budget(len, budget)?;

    let (first, second): (Vec<u8>, Vec<u8>) = match variant {
        FibVariant::Standard => (alloc::vec![FIB_B], alloc::vec![FIB_A]),
        FibVariant::Alt => (alloc::vec![FIB_A], alloc::vec![FIB_B, FIB_A]),
    };
    let mut word = if k == 1 {
        first
    } else {
        let (mut prev, mut cur) = (first, second);
        for _ in 2..k {
            let mut next = Vec::with_capacity(prev.len() + cur.len() + 1);
            match variant {
                FibVariant::Standard => {
                    next.extend_from_slice(&cur);
                    next.extend_from_slice(&prev);
                }
                FibVariant::Alt => {
                    next.extend_from_slice(&prev);
                    next.extend_from_slice(&cur);
                }
            }
            prev = cur;
            cur = next;
        }
        cur
    };
    debug_assert_eq!(word.len(), len);
    word.push(SENTINEL);
    Ok(Text::from_terminated_unchecked(word))
}

/// A linear de Bruijn sequence of order `k` over `1..=sigma`, of length
/// `sigma^k + k - 1`, built from the concatenation of Lyndon words whose
/// length divides `k` (Fredricksen-Kessler-Maiorana).
pub fn de_bruijn(k: u32, sigma: u32, budget: usize) -> Result<Text> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "de Bruijn order must be at least 1",
        ));
    }
    if !(2..=255).contains(&sigma) {
        return Err(Error::InvalidParameter(
            "de Bruijn alphabet size must be in 2..=255",
        ));
    }
    let cycle_len = (sigma as u128).checked_pow(k).unwrap_or(u128::MAX);
    let total = check_budget(cycle_len.saturating_add(k as u128 - 1), budget)?;

    let k = k as usize;
    let sigma = sigma as u8;
    let mut out = Vec::with_capacity(total + 1);
    // Iterative FKM over 0-based digits.
    let mut a = alloc::vec![0u8; k + 1];
    let mut t = 1usize;
    loop {
        if k % t == 0 {
            out.extend(a[1..=t].iter().map(|&d| d + 1));
        }
        // next prenecklace
        t = k;
        while t > 0 && a[t] == sigma - 1 {
            t -= 1;
        }
        if t == 0 {
            break;
        }
        a[t] += 1;
        for j in t + 1..=k {
            a[j] = a[j - t];
        }
    }
    debug_assert_eq!(out.len() as u128, cycle_len);
    for i in 0..k - 1 {
        let c = out[i];
        out.push(c);
    }
    out.push(SENTINEL);
    Ok(Text::from_terminated_unchecked(out))
}

/// The cumulative-edit family: `S_1 = (2 3 .. sigma 1)^3`, and `S_{i+1}` is
/// `S_i` with its (1-based) position `3 sigma - 3 i` replaced by `sigma + 1`;
/// the text is `S_1 S_2 .. S_sigma`, of length `3 sigma^2`.
pub fn lemma35_text(sigma: u32) -> Result<Text> {
    if sigma % 3 == 0 {
        return Err(Error::InvalidParameter(
            "cumulative-edit family needs sigma not divisible by 3",
        ));
    }
    if !(4..=254).contains(&sigma) {
        return Err(Error::InvalidParameter(
            "cumulative-edit family needs 4 <= sigma <= 254",
        ));
    }
    let s = sigma as usize;
    let mut block: Vec<u8> = (0..3 * s).map(|i| ((i + 1) % s + 1) as u8).collect();
    let mut out = Vec::with_capacity(3 * s * s + 1);
    out.extend_from_slice(&block);
    for i in 1..s {
        block[3 * s - 3 * i - 1] = (s + 1) as u8;
        out.extend_from_slice(&block);
    }
    out.push(SENTINEL);
    Ok(Text::from_terminated_unchecked(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ab(t: &Text) -> alloc::string::String {
        t.raw()
            .iter()
            .map(|&c| if c == FIB_A { 'a' } else { 'b' })
            .collect()
    }

    #[test]
    fn load_appends_sentinel() {
        let t = Text::from_raw(b"alabaralalabarda").unwrap();
        assert_eq!(t.len(), 17);
        assert_eq!(t[16], SENTINEL);
        assert_eq!(t.sigma(), 5);

        let empty = Text::from_raw(b"").unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.sigma(), 0);

        let unary = Text::from_raw(b"aaa").unwrap();
        assert_eq!((unary.len(), unary.sigma()), (4, 1));
    }

    #[test]
    fn load_rejects_embedded_zero() {
        assert_eq!(
            Text::from_raw(b"ab\0c"),
            Err(Error::SentinelCollision { position: 2 })
        );
        assert!(Text::from_terminated(vec![1, 0, 2, 0]).is_err());
        assert!(Text::from_terminated(vec![1, 2]).is_err());
    }

    #[test]
    fn fibonacci_small_words() {
        let f = |k| fibonacci_word(k, FibVariant::Standard, DEFAULT_BUDGET).unwrap();
        assert_eq!(ab(&f(1)), "b");
        assert_eq!(ab(&f(2)), "a");
        assert_eq!(ab(&f(5)), "abaab");
        assert_eq!(ab(&f(6)), "abaababa");
        assert_eq!(f(10).raw().len(), 55);
        let alt = |k| fibonacci_word(k, FibVariant::Alt, DEFAULT_BUDGET).unwrap();
        assert_eq!(ab(&alt(1)), "a");
        assert_eq!(ab(&alt(2)), "ba");
        assert_eq!(ab(&alt(4)), "baaba");
    }

    #[test]
    fn fibonacci_budget() {
        assert!(matches!(
            fibonacci_word(40, FibVariant::Standard, 1000),
            Err(Error::SizeLimit { .. })
        ));
        assert!(fibonacci_word(0, FibVariant::Standard, 1000).is_err());
    }

    #[test]
    fn de_bruijn_small() {
        let t = de_bruijn(2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.raw(), &[1, 1, 2, 2, 1]);
        let t = de_bruijn(1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.raw(), &[1, 2]);
        assert_eq!(de_bruijn(3, 2, DEFAULT_BUDGET).unwrap().raw().len(), 10);
        assert!(de_bruijn(30, 2, 1 << 20).is_err());
        assert!(de_bruijn(3, 1, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn lemma35_shape() {
        let t = lemma35_text(4).unwrap();
        assert_eq!(t.raw().len(), 48);
        assert!(t.raw().iter().all(|&c| (1..=5).contains(&c)));
        let t = lemma35_text(5).unwrap();
        assert_eq!(t.raw().len(), 75);
        // Edits accumulate: S_i carries i - 1 of them.
        assert_eq!(t.raw().iter().filter(|&&c| c == 6).count(), 10);
        assert_eq!(t.raw()[60..].iter().filter(|&&c| c == 6).count(), 4);
        assert_eq!(
            lemma35_text(6),
            Err(Error::InvalidParameter(
                "cumulative-edit family needs sigma not divisible by 3"
            ))
        );
    }

    #[test]
    fn family_spec_dispatch() {
        assert!(FamilySpec::fibonacci(0).generate(DEFAULT_BUDGET).is_err());
        assert!(FamilySpec::lemma35(9).generate(DEFAULT_BUDGET).is_err());
        assert_eq!(
            FamilySpec::fibonacci_alt(3)
                .generate(DEFAULT_BUDGET)
                .unwrap()
                .raw(),
            &[1, 2, 1]
        );
    }
}
