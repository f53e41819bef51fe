//! Lempel-Ziv parses, the lex-parse and greedy ordered parses.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rmq::RmqIndex;
use crate::scheme::{first_unordered, Phrase, Scheme};
use crate::suffix::SuffixContext;
use crate::text::Text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    LzOverlap,
    LzNoOverlap,
    LexParse,
    GreedyOrdered,
    GreedyNaive,
    /// Leaves of a grammar tree or collage parse tree.
    GrammarTree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseResult {
    pub scheme: Scheme,
    pub method: Method,
}

impl ParseResult {
    #[inline]
    pub fn phrase_count(&self) -> usize {
        self.scheme.len()
    }

    /// `(start, len, is_copy)` for each phrase, ignoring sources.
    pub fn shape(&self) -> Vec<(usize, usize, bool)> {
        self.scheme
            .phrases()
            .iter()
            .map(|p| (p.target(), p.len(), p.is_copy()))
            .collect()
    }
}

fn phrase(t: &[u8], p: usize, len: usize, source: usize) -> Phrase {
    if len == 0 {
        Phrase::Explicit {
            target: p,
            symbol: t[p],
        }
    } else {
        Phrase::Copy {
            target: p,
            source,
            len,
        }
    }
}

fn lce(t: &[u8], a: usize, b: usize) -> usize {
    t[a..]
        .iter()
        .zip(&t[b..])
        .take_while(|(x, y)| x == y)
        .count()
}

/// Greedy left-to-right parse where each phrase is the longest prefix of the
/// remaining text that occurs starting at an earlier position. With
/// `allow_overlap = false` the occurrence must also end before the phrase
/// starts.
pub fn lz_parse(ctx: &SuffixContext, allow_overlap: bool) -> ParseResult {
    if allow_overlap {
        lz_overlap(ctx)
    } else {
        lz_no_overlap(ctx)
    }
}

/// For each position, the nearest lexicographic neighbours that start
/// earlier in the text bound the longest previous factor.
fn lz_overlap(ctx: &SuffixContext) -> ParseResult {
    let t = ctx.text().as_bytes();
    let n = t.len();
    let sa = ctx.sa();
    // psv[p] / nsv[p]: text position of the closest smaller SA value before /
    // after rank isa[p], or NONE.
    const NONE: u32 = u32::MAX;
    let mut psv = vec![NONE; n];
    let mut nsv = vec![NONE; n];
    let mut stack: Vec<u32> = Vec::new();
    for &p in sa {
        while let Some(&top) = stack.last() {
            if top > p {
                nsv[top as usize] = p;
                stack.pop();
            } else {
                break;
            }
        }
        psv[p as usize] = stack.last().copied().unwrap_or(NONE);
        stack.push(p);
    }

    let mut phrases = Vec::new();
    let mut p = 0usize;
    while p < n {
        let mut best = (0usize, 0usize);
        for cand in [psv[p], nsv[p]] {
            if cand == NONE {
                continue;
            }
            let s = cand as usize;
            let l = lce(t, p, s);
            if l > best.0 || (l == best.0 && l > 0 && s < best.1) {
                best = (l, s);
            }
        }
        let ph = phrase(t, p, best.0, best.1);
        p = ph.end();
        phrases.push(ph);
    }
    ParseResult {
        scheme: Scheme::new(n, phrases),
        method: Method::LzOverlap,
    }
}

fn lz_no_overlap(ctx: &SuffixContext) -> ParseResult {
    let t = ctx.text().as_bytes();
    let n = t.len();
    let rmq = RmqIndex::new(ctx.sa().to_vec()).expect("text is never empty");
    let mut phrases = Vec::new();
    let mut p = 0usize;
    while p < n {
        let (len, source) = descend(ctx, p, |lo, hi, len| {
            let k = rmq.query_unchecked(lo, hi);
            let s = ctx.sa()[k] as usize;
            (s + len <= p).then_some(s)
        });
        let ph = phrase(t, p, len, source);
        p = ph.end();
        phrases.push(ph);
    }
    ParseResult {
        scheme: Scheme::new(n, phrases),
        method: Method::LzNoOverlap,
    }
}

/// Walks down the SA intervals of `T[p..p+j]`, asking `accept` about each
/// one together with its depth. Stops at the first refusal and returns the
/// deepest accepted length with the source `accept` chose there.
fn descend(
    ctx: &SuffixContext,
    p: usize,
    mut accept: impl FnMut(usize, usize, usize) -> Option<usize>,
) -> (usize, usize) {
    let t = ctx.text().as_bytes();
    let sa = ctx.sa();
    let n = t.len();
    let (mut lo, mut hi) = (0usize, n - 1);
    let mut best = (0usize, 0usize);
    let mut j = 0usize;
    while p + j < n {
        let c = t[p + j];
        // All suffixes in lo..=hi share j symbols and, while the interval has
        // more than one suffix, none of them has ended.
        let key = |k: usize| t[sa[k] as usize + j];
        let new_lo = lo + partition_point(lo, hi + 1, |k| key(k) < c);
        let new_hi = lo + partition_point(lo, hi + 1, |k| key(k) <= c) - 1;
        lo = new_lo;
        hi = new_hi;
        j += 1;
        match accept(lo, hi, j) {
            Some(s) => best = (j, s),
            None => break,
        }
        if lo == hi {
            break;
        }
    }
    best
}

/// Number of `k` in `lo..hi` for which `pred` holds, assuming it holds on a
/// prefix of the range.
fn partition_point(lo: usize, hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut a, mut b) = (lo, hi);
    while a < b {
        let m = a + (b - a) / 2;
        if pred(m) {
            a = m + 1;
        } else {
            b = m;
        }
    }
    a - lo
}

/// Each phrase copies from the lexicographically preceding suffix for as
/// long as the two agree, or is explicit when they share nothing.
pub fn lex_parse(ctx: &SuffixContext) -> ParseResult {
    let t = ctx.text().as_bytes();
    let n = t.len();
    let (sa, isa, lcp) = (ctx.sa(), ctx.isa(), ctx.lcp());
    let mut phrases = Vec::new();
    let mut p = 0usize;
    while p < n {
        let i = isa[p] as usize;
        let len = lcp[i] as usize;
        let source = if i > 0 { sa[i - 1] as usize } else { 0 };
        let ph = phrase(t, p, len, source);
        p = ph.end();
        phrases.push(ph);
    }
    ParseResult {
        scheme: Scheme::new(n, phrases),
        method: Method::LexParse,
    }
}

pub(crate) fn check_permutation(io: &[u32], n: usize) -> Result<()> {
    if io.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: io.len(),
        });
    }
    let mut seen = vec![false; n];
    for &r in io {
        let r = r as usize;
        if r >= n || seen[r] {
            return Err(Error::InvalidParameter(
                "order ranks are not a permutation of 0..n",
            ));
        }
        seen[r] = true;
    }
    Ok(())
}

/// Greedy parse under the suffix order given by ranks `io` (`io[p]` is the
/// rank of the suffix at `p`). Each phrase is extended while some other
/// suffix with a smaller rank shares the prefix. This is optimal when the
/// order is extensible; otherwise the result fails the order check and
/// [`Error::NonExtensibleOrder`] is returned.
pub fn greedy_ordered(ctx: &SuffixContext, io: &[u32]) -> Result<ParseResult> {
    let t = ctx.text().as_bytes();
    let n = t.len();
    check_permutation(io, n)?;
    let k: Vec<u32> = ctx.sa().iter().map(|&p| io[p as usize]).collect();
    let rmq = RmqIndex::new(k)?;
    let mut phrases = Vec::new();
    let mut p = 0usize;
    while p < n {
        let (len, source) = descend(ctx, p, |lo, hi, _| {
            let k = rmq.query_unchecked(lo, hi);
            (rmq.values()[k] < io[p]).then(|| ctx.sa()[k] as usize)
        });
        let ph = phrase(t, p, len, source);
        p = ph.end();
        phrases.push(ph);
    }
    let scheme = Scheme::new(n, phrases);
    if let Some(phrase) = first_unordered(&scheme, io) {
        return Err(Error::NonExtensibleOrder { phrase });
    }
    Ok(ParseResult {
        scheme,
        method: Method::GreedyOrdered,
    })
}

/// Greedy ordered parse by direct comparison, for any strict total order
/// `precedes(a, b)` ("suffix `a` comes before suffix `b`"). For a phrase
/// starting at `p` and a candidate source `s` the match runs while the
/// symbols agree and `s + j` precedes `p + j`; the phrase takes the longest
/// match, earliest source on ties.
pub fn greedy_naive(t: &Text, precedes: impl Fn(usize, usize) -> bool) -> ParseResult {
    let t = t.as_bytes();
    let n = t.len();
    let mut phrases = Vec::new();
    let mut p = 0usize;
    while p < n {
        let mut best = (0usize, 0usize);
        for s in 0..n {
            if s == p {
                continue;
            }
            let mut j = 0usize;
            while p + j < n && s + j < n && t[p + j] == t[s + j] && precedes(s + j, p + j) {
                j += 1;
            }
            if j > best.0 {
                best = (j, s);
            }
        }
        let ph = phrase(t, p, best.0, best.1);
        p = ph.end();
        phrases.push(ph);
    }
    ParseResult {
        scheme: Scheme::new(n, phrases),
        method: Method::GreedyNaive,
    }
}
