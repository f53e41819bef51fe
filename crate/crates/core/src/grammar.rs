//! Run-length straight-line programs built by rounds of locally consistent
//! parsing, and the parses read off their grammar trees.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::parse::{check_permutation, Method, ParseResult};
use crate::rules::{Rule, RuleSet, RuleSink};
use crate::scheme::first_unordered;
use crate::text::Text;

/// A run-length SLP: terminal, concatenation and power rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rlslp {
    set: RuleSet,
}

impl Rlslp {
    /// Checks definition-before-use, exponents, reachability and lengths.
    pub fn new(rules: Vec<Rule>, start: u32) -> Result<Rlslp> {
        Ok(Rlslp {
            set: RuleSet::new(rules, start, false)?,
        })
    }

    #[inline]
    pub fn rules(&self) -> &[Rule] {
        &self.set.rules
    }

    /// Number of rules.
    #[inline]
    pub fn size(&self) -> usize {
        self.set.rules.len()
    }

    #[inline]
    pub fn start(&self) -> u32 {
        self.set.start
    }

    /// Expansion length of rule `id`.
    #[inline]
    pub fn rule_len(&self, id: u32) -> u64 {
        self.set.lens[id as usize]
    }

    #[inline]
    pub fn expanded_len(&self) -> u64 {
        self.set.expanded_len()
    }

    pub fn expand_bytes(&self) -> Result<Vec<u8>> {
        self.set.expand()
    }

    /// Expands and checks that the result is a terminated text.
    pub fn expand(&self) -> Result<Text> {
        Text::from_terminated(self.set.expand()?)
    }
}

/// One round of locally consistent parsing over `seq`, whose symbols are
/// rule ids in `sink`. Maximal runs become power rules, then pairs of a
/// left symbol followed by a right symbol become concatenations. The
/// left/right split is chosen greedily by conditional expectations so that
/// at least a quarter of the boundaries pair up.
pub fn lcp_round(seq: &[u32], sink: &mut RuleSink) -> Vec<u32> {
    let seq = compact_runs(seq, sink);
    let left = choose_partition(&seq);
    pair_up(&seq, sink, |s| left[s as usize])
}

/// [`lcp_round`] with the left symbols given by the caller.
pub fn lcp_round_with_partition(
    seq: &[u32],
    sink: &mut RuleSink,
    is_left: impl Fn(u32) -> bool,
) -> Vec<u32> {
    let seq = compact_runs(seq, sink);
    pair_up(&seq, sink, is_left)
}

/// Replaces maximal runs by power rules, repeating until no two adjacent
/// symbols are equal (a new power rule can coincide with a neighbour).
fn compact_runs(seq: &[u32], sink: &mut RuleSink) -> Vec<u32> {
    let mut cur = seq.to_vec();
    loop {
        let mut out = Vec::with_capacity(cur.len());
        let mut changed = false;
        let mut i = 0;
        while i < cur.len() {
            let mut j = i + 1;
            while j < cur.len() && cur[j] == cur[i] {
                j += 1;
            }
            if j - i >= 2 {
                out.push(sink.intern(Rule::Power(cur[i], (j - i) as u32)));
                changed = true;
            } else {
                out.push(cur[i]);
            }
            i = j;
        }
        if !changed {
            return out;
        }
        cur = out;
    }
}

/// `left[s]` for every symbol below the largest one in `seq`. Symbols are
/// decided in first-occurrence order; a symbol goes left when the expected
/// number of pairs it would start is at least the number it would end.
fn choose_partition(seq: &[u32]) -> Vec<bool> {
    let width = seq.iter().copied().max().map_or(0, |m| m as usize + 1);
    const NONE: u32 = u32::MAX;
    let mut local = vec![NONE; width];
    let mut order: Vec<u32> = Vec::new();
    for &s in seq {
        if local[s as usize] == NONE {
            local[s as usize] = order.len() as u32;
            order.push(s);
        }
    }
    let k = order.len();

    let mut pairs: Vec<(u32, u32)> = seq
        .windows(2)
        .filter(|w| w[0] != w[1])
        .map(|w| (local[w[0] as usize], local[w[1] as usize]))
        .collect();
    pairs.sort_unstable();
    let mut out_edges: Vec<(u32, u32, u64)> = Vec::new();
    for &(a, b) in &pairs {
        match out_edges.last_mut() {
            Some(e) if e.0 == a && e.1 == b => e.2 += 1,
            _ => out_edges.push((a, b, 1)),
        }
    }
    let mut in_edges: Vec<(u32, u32, u64)> = out_edges.iter().map(|&(a, b, c)| (b, a, c)).collect();
    in_edges.sort_unstable();
    let group = |edges: &[(u32, u32, u64)]| {
        let mut start = vec![0usize; k + 1];
        for e in edges {
            start[e.0 as usize + 1] += 1;
        }
        for i in 0..k {
            start[i + 1] += start[i];
        }
        start
    };
    let (out_start, in_start) = (group(&out_edges), group(&in_edges));

    // 0 undecided, 1 left, 2 right. Weights are doubled probabilities.
    let mut state = vec![0u8; k];
    let w_right = |s: u8| -> u64 {
        match s {
            0 => 1,
            2 => 2,
            _ => 0,
        }
    };
    let w_left = |s: u8| -> u64 {
        match s {
            0 => 1,
            1 => 2,
            _ => 0,
        }
    };
    for c in 0..k {
        let as_left: u64 = out_edges[out_start[c]..out_start[c + 1]]
            .iter()
            .map(|&(_, y, n)| n * w_right(state[y as usize]))
            .sum();
        let as_right: u64 = in_edges[in_start[c]..in_start[c + 1]]
            .iter()
            .map(|&(_, x, n)| n * w_left(state[x as usize]))
            .sum();
        state[c] = if as_left >= as_right { 1 } else { 2 };
    }

    let mut left = vec![false; width];
    for (i, &s) in order.iter().enumerate() {
        left[s as usize] = state[i] == 1;
    }
    left
}

fn pair_up(seq: &[u32], sink: &mut RuleSink, is_left: impl Fn(u32) -> bool) -> Vec<u32> {
    let mut out = Vec::with_capacity(seq.len());
    let mut i = 0;
    while i < seq.len() {
        if i + 1 < seq.len() && seq[i] != seq[i + 1] && is_left(seq[i]) && !is_left(seq[i + 1]) {
            out.push(sink.intern(Rule::Concat(seq[i], seq[i + 1])));
            i += 2;
        } else {
            out.push(seq[i]);
            i += 1;
        }
    }
    out
}

/// Builds an RLSLP for `t` by parsing rounds until one symbol remains.
pub fn build_rlslp(t: &Text) -> Rlslp {
    build_rlslp_traced(t).0
}

/// [`build_rlslp`] together with the sequence length before each round and
/// after the last one.
pub fn build_rlslp_traced(t: &Text) -> (Rlslp, Vec<usize>) {
    let mut sink = RuleSink::new();
    let mut seq: Vec<u32> = t
        .as_bytes()
        .iter()
        .map(|&c| sink.intern(Rule::Terminal(c)))
        .collect();
    let mut trace = vec![seq.len()];
    while seq.len() > 1 {
        let next = lcp_round(&seq, &mut sink);
        if next.len() >= seq.len() {
            // Safety net; the shrinkage bound makes this unreachable.
            let mut acc = next[0];
            for &s in &next[1..] {
                acc = sink.intern(Rule::Concat(acc, s));
            }
            seq = vec![acc];
        } else {
            seq = next;
        }
        trace.push(seq.len());
    }
    let start = seq[0];
    let g = Rlslp::new(sink.into_rules(), start).expect("constructed rules are well formed");
    (g, trace)
}

/// Reads a parse off the grammar tree of `g`. With `io = None` each rule
/// keeps its leftmost occurrence and the parse is left-to-right; with ranks
/// `io` each rule keeps the occurrence starting at the smallest suffix.
/// Power rules split as `Y Y^{t-1}` or `Y^{t-1} Y` so that the copy points to
/// the smaller suffix. Fails with [`Error::OrderViolation`] when the result
/// does not respect the order.
pub fn grammar_to_parse(g: &Rlslp, io: Option<&[u32]>) -> Result<ParseResult> {
    if let Some(io) = io {
        check_permutation(io, g.expanded_len() as usize)?;
    }
    let scheme = g.set.tree_scheme(io)?;
    let violation = match io {
        Some(io) => first_unordered(&scheme, io),
        None => scheme
            .phrases()
            .iter()
            .position(|ph| ph.source().is_some_and(|s| s >= ph.target())),
    };
    if let Some(phrase) = violation {
        return Err(Error::OrderViolation { phrase });
    }
    Ok(ParseResult {
        scheme,
        method: Method::GrammarTree,
    })
}
