//! Brute-force oracles for small inputs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::parse::lz_parse;
use crate::scheme::{Phrase, Scheme};
use crate::suffix::{inverse, SuffixContext};
use crate::text::Text;

/// Limits for the exhaustive searches. `abort` is polled during long
/// searches; returning true stops them with [`Error::Aborted`].
#[derive(Clone, Copy)]
pub struct SearchBudget<'a> {
    pub max_n: usize,
    pub abort: Option<&'a dyn Fn() -> bool>,
}

impl core::fmt::Debug for SearchBudget<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SearchBudget")
            .field("max_n", &self.max_n)
            .field("abort", &self.abort.is_some())
            .finish()
    }
}

impl<'a> SearchBudget<'a> {
    pub const SCHEME_SEARCH_N: usize = 14;
    pub const NAIVE_SA_N: usize = 500;

    pub fn new(max_n: usize) -> SearchBudget<'a> {
        SearchBudget { max_n, abort: None }
    }

    pub fn with_abort(self, abort: &'a dyn Fn() -> bool) -> SearchBudget<'a> {
        SearchBudget {
            abort: Some(abort),
            ..self
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            Err(Error::BudgetExceeded {
                n,
                max_n: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    fn aborted(&self) -> bool {
        self.abort.is_some_and(|f| f())
    }
}

/// Suffix structures by sorting suffixes and scanning prefixes directly.
pub fn naive_suffix_structures(t: &Text, budget: SearchBudget<'_>) -> Result<SuffixContext> {
    let s = t.as_bytes();
    let n = s.len();
    budget.check(n)?;
    let mut sa: Vec<u32> = (0..n as u32).collect();
    sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
    let mut lcp = vec![0u32; n];
    for i in 1..n {
        let (a, b) = (&s[sa[i] as usize..], &s[sa[i - 1] as usize..]);
        lcp[i] = a.iter().zip(b).take_while(|(x, y)| x == y).count() as u32;
    }
    let bwt = sa.iter().map(|&p| s[(p as usize + n - 1) % n]).collect();
    let isa = inverse(&sa);
    Ok(SuffixContext::from_parts(t.clone(), sa, isa, lcp, bwt))
}

/// Smallest bidirectional scheme by exhaustive search: iterative deepening
/// on the phrase count, choosing phrases left to right, each either explicit
/// or a copy of some length from some source, rejecting a copy as soon as it
/// closes a cycle in `f`. The Lempel-Ziv parse bounds the search.
pub fn smallest_bidirectional(t: &Text, budget: SearchBudget<'_>) -> Result<(usize, Scheme)> {
    let s = t.as_bytes();
    let n = s.len();
    budget.check(n)?;
    let lz = lz_parse(&SuffixContext::new(t.clone()), true).scheme;

    let mut distinct = [false; 256];
    for &c in s {
        distinct[c as usize] = true;
    }
    let lower = distinct.iter().filter(|&&x| x).count();

    let mut search = Search {
        s,
        n,
        f: vec![NONE; n],
        explicit_count: [0u32; 256],
        remaining: [0u32; 256],
        phrases: Vec::new(),
        budget,
        nodes: 0,
    };
    for &c in s {
        search.remaining[c as usize] += 1;
    }
    for k in lower..lz.len() {
        if search.dfs(0, k)? {
            return Ok((k, Scheme::new(n, search.phrases)));
        }
    }
    Ok((lz.len(), lz))
}

const NONE: u32 = u32::MAX;

struct Search<'a, 'b> {
    s: &'a [u8],
    n: usize,
    f: Vec<u32>,
    /// Explicit phrases placed so far, per symbol.
    explicit_count: [u32; 256],
    /// Occurrences at or after the current position, per symbol.
    remaining: [u32; 256],
    phrases: Vec<Phrase>,
    budget: SearchBudget<'b>,
    nodes: u64,
}

impl Search<'_, '_> {
    /// Symbols with no explicit phrase yet; each needs one of its own.
    fn missing(&self) -> usize {
        (0..256)
            .filter(|&c| self.remaining[c] > 0 && self.explicit_count[c] == 0)
            .count()
    }

    /// True iff some symbol has no explicit phrase and no occurrence left
    /// to place one.
    fn stranded(&self, from: usize, until: usize) -> bool {
        self.s[from..until]
            .iter()
            .any(|&c| self.explicit_count[c as usize] == 0 && self.remaining[c as usize] == 0)
    }

    /// Follows `f` from `v`; true iff it reaches `u`.
    fn reaches(&self, mut v: usize, u: usize) -> bool {
        loop {
            if v == u {
                return true;
            }
            match self.f[v] {
                NONE => return false,
                w => v = w as usize,
            }
        }
    }

    fn dfs(&mut self, p: usize, k: usize) -> Result<bool> {
        if p == self.n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.budget.aborted() {
            return Err(Error::Aborted);
        }
        let used = self.phrases.len();
        if used + self.missing().max(1) > k {
            return Ok(false);
        }
        let (s, n) = (self.s, self.n);

        // Copies, longest first.
        for len in (1..n - p).rev() {
            for src in 0..=n - len {
                if src == p || s[src..src + len] != s[p..p + len] {
                    continue;
                }
                let mut placed = 0;
                let mut ok = true;
                for j in 0..len {
                    if self.reaches(src + j, p + j) {
                        ok = false;
                        break;
                    }
                    self.f[p + j] = (src + j) as u32;
                    self.remaining[s[p + j] as usize] -= 1;
                    placed += 1;
                }
                if ok && !self.stranded(p, p + len) {
                    self.phrases.push(Phrase::Copy {
                        target: p,
                        source: src,
                        len,
                    });
                    if self.dfs(p + len, k)? {
                        return Ok(true);
                    }
                    self.phrases.pop();
                }
                for j in 0..placed {
                    self.f[p + j] = NONE;
                    self.remaining[s[p + j] as usize] += 1;
                }
            }
        }

        let c = s[p] as usize;
        self.remaining[c] -= 1;
        self.explicit_count[c] += 1;
        self.phrases.push(Phrase::Explicit {
            target: p,
            symbol: s[p],
        });
        if self.dfs(p + 1, k)? {
            return Ok(true);
        }
        self.phrases.pop();
        self.explicit_count[c] -= 1;
        self.remaining[c] += 1;
        Ok(false)
    }
}

/// Fewest phrases of any parse whose copies respect `precedes` at every
/// offset (`precedes(a, b)`: suffix `a` comes before suffix `b`), by a
/// shortest path over positions. A copy of length `l` from `p` is possible
/// iff some source matches `l` symbols with each offset preceding.
pub fn min_ordered_parse(
    t: &Text,
    precedes: impl Fn(usize, usize) -> bool,
    budget: SearchBudget<'_>,
) -> Result<usize> {
    let s = t.as_bytes();
    let n = s.len();
    budget.check(n)?;
    // reach[p]: the longest copy possible at p.
    let mut reach = vec![0usize; n];
    for (p, r) in reach.iter_mut().enumerate() {
        if budget.aborted() {
            return Err(Error::Aborted);
        }
        for src in 0..n {
            if src == p {
                continue;
            }
            let mut j = 0;
            while p + j < n && src + j < n && s[p + j] == s[src + j] && precedes(src + j, p + j) {
                j += 1;
            }
            *r = (*r).max(j);
        }
    }
    let mut dist = vec![usize::MAX; n + 1];
    dist[0] = 0;
    for p in 0..n {
        let d = dist[p] + 1;
        for len in 1..=reach[p].max(1) {
            if d < dist[p + len] {
                dist[p + len] = d;
            }
        }
    }
    Ok(dist[n])
}

/// Start of the lexicographically smallest rotation, smallest index on ties.
pub fn smallest_rotation(word: &[u8]) -> Result<usize> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let rot = |i: usize| word[i..].iter().chain(&word[..i]);
    let mut best = 0;
    for i in 1..n {
        if rot(i).cmp(rot(best)).is_lt() {
            best = i;
        }
    }
    Ok(best)
}
