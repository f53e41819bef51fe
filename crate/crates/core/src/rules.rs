//! Rules shared by run-length grammars and collage systems: validation,
//! iterative expansion and the grammar-tree conversion into a parse.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scheme::{Phrase, Scheme};
use crate::text::MAX_TEXT_LEN;

/// A rule; children are referenced by index and must have smaller indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Terminal(u8),
    Concat(u32, u32),
    /// `base^exp` with `exp >= 2`.
    Power(u32, u32),
    /// `exp(base)[start..end]`, half-open and 0-based.
    Substring {
        base: u32,
        start: u64,
        end: u64,
    },
}

/// Appends rules, returning the index of an existing identical rule when
/// there is one.
#[derive(Debug, Clone, Default)]
pub struct RuleSink {
    rules: Vec<Rule>,
    index: BTreeMap<Rule, u32>,
}

impl RuleSink {
    pub fn new() -> RuleSink {
        RuleSink::default()
    }

    pub fn intern(&mut self, rule: Rule) -> u32 {
        if let Some(&id) = self.index.get(&rule) {
            return id;
        }
        let id = self.rules.len() as u32;
        self.rules.push(rule);
        self.index.insert(rule, id);
        id
    }

    /// Appends without looking for duplicates.
    pub fn push(&mut self, rule: Rule) -> u32 {
        let id = self.rules.len() as u32;
        self.rules.push(rule);
        self.index.entry(rule).or_insert(id);
        id
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    #[inline]
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn into_rules(self) -> Vec<Rule> {
        self.rules
    }

    /// Expansion of rule `id`, which must only refer to earlier rules.
    pub fn expansion(&self, id: u32) -> Result<Vec<u8>> {
        let prefix = self.rules[..=id as usize].to_vec();
        let mut lens: Vec<u64> = Vec::with_capacity(prefix.len());
        for rule in &prefix {
            let len = match *rule {
                Rule::Terminal(_) => 1,
                Rule::Concat(l, r) => lens[l as usize] + lens[r as usize],
                Rule::Power(b, t) => lens[b as usize] * t as u64,
                Rule::Substring { start, end, .. } => end - start,
            };
            lens.push(len);
        }
        RuleSet {
            rules: prefix,
            lens,
            start: id,
        }
        .expand()
    }
}

/// A checked rule list with a start rule and cached expansion lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RuleSet {
    pub(crate) rules: Vec<Rule>,
    pub(crate) lens: Vec<u64>,
    pub(crate) start: u32,
}

impl RuleSet {
    pub(crate) fn new(rules: Vec<Rule>, start: u32, allow_substring: bool) -> Result<RuleSet> {
        let m = rules.len();
        if m == 0 {
            return Err(Error::EmptyInput);
        }
        if start as usize >= m {
            return Err(Error::MalformedRules {
                rule: start as usize,
                reason: "start rule does not exist",
            });
        }
        let mut lens = Vec::with_capacity(m);
        for (id, rule) in rules.iter().enumerate() {
            let child = |c: u32| -> Result<u64> {
                if (c as usize) < id {
                    Ok(lens[c as usize])
                } else {
                    Err(Error::MalformedRules {
                        rule: id,
                        reason: "rule refers to a rule that is not defined before it",
                    })
                }
            };
            let overflow = Error::MalformedRules {
                rule: id,
                reason: "expansion length overflows",
            };
            let len = match *rule {
                Rule::Terminal(_) => 1,
                Rule::Concat(l, r) => child(l)?.checked_add(child(r)?).ok_or(overflow)?,
                Rule::Power(b, t) => {
                    if t < 2 {
                        return Err(Error::MalformedRules {
                            rule: id,
                            reason: "run-length exponent must be at least 2",
                        });
                    }
                    child(b)?.checked_mul(t as u64).ok_or(overflow)?
                }
                Rule::Substring { base, start, end } => {
                    if !allow_substring {
                        return Err(Error::MalformedRules {
                            rule: id,
                            reason: "substring rules are not allowed here",
                        });
                    }
                    let bl = child(base)?;
                    if start >= end || end > bl {
                        return Err(Error::TruncationOutOfRange { rule: id });
                    }
                    end - start
                }
            };
            lens.push(len);
        }

        let mut reach = vec![false; m];
        reach[start as usize] = true;
        for id in (0..m).rev() {
            if !reach[id] {
                continue;
            }
            match rules[id] {
                Rule::Terminal(_) => {}
                Rule::Concat(l, r) => {
                    reach[l as usize] = true;
                    reach[r as usize] = true;
                }
                Rule::Power(b, _) | Rule::Substring { base: b, .. } => reach[b as usize] = true,
            }
        }
        if let Some(id) = reach.iter().position(|&x| !x) {
            return Err(Error::MalformedRules {
                rule: id,
                reason: "rule is unreachable from the start rule",
            });
        }
        Ok(RuleSet { rules, lens, start })
    }

    #[inline]
    pub(crate) fn expanded_len(&self) -> u64 {
        self.lens[self.start as usize]
    }

    /// Expansion of the start rule, without recursion.
    pub(crate) fn expand(&self) -> Result<Vec<u8>> {
        let total = self.expanded_len();
        if total > MAX_TEXT_LEN as u64 {
            return Err(Error::SizeLimit {
                requested: total as u128,
                limit: MAX_TEXT_LEN,
            });
        }
        enum Frame {
            Range(u32, u64, u64),
            /// Append the last `len` bytes `count` more times.
            Repeat(usize, u64),
            /// The full expansion of a rule was written from this offset.
            Done(u32, usize),
        }
        const UNKNOWN: usize = usize::MAX;
        // Where each rule's full expansion already sits in `out`.
        let mut at = vec![UNKNOWN; self.rules.len()];
        let mut out: Vec<u8> = Vec::with_capacity(total as usize);
        let mut stack = vec![Frame::Range(self.start, 0, total)];
        while let Some(frame) = stack.pop() {
            let (id, lo, hi) = match frame {
                Frame::Range(id, lo, hi) => (id, lo, hi),
                Frame::Repeat(len, count) => {
                    let from = out.len() - len;
                    for _ in 0..count {
                        out.extend_from_within(from..from + len);
                    }
                    continue;
                }
                Frame::Done(id, from) => {
                    at[id as usize] = from;
                    continue;
                }
            };
            let o = at[id as usize];
            if o != UNKNOWN {
                out.extend_from_within(o + lo as usize..o + hi as usize);
                continue;
            }
            if lo == 0 && hi == self.lens[id as usize] {
                stack.push(Frame::Done(id, out.len()));
            }
            match self.rules[id as usize] {
                Rule::Terminal(c) => out.push(c),
                Rule::Concat(l, r) => {
                    let ll = self.lens[l as usize];
                    if hi > ll {
                        stack.push(Frame::Range(r, lo.max(ll) - ll, hi - ll));
                    }
                    if lo < ll {
                        stack.push(Frame::Range(l, lo, hi.min(ll)));
                    }
                }
                Rule::Power(b, _) => {
                    let bl = self.lens[b as usize];
                    let (first, last) = (lo / bl, (hi - 1) / bl);
                    if first == last {
                        stack.push(Frame::Range(b, lo - first * bl, hi - first * bl));
                        continue;
                    }
                    // head, full copies, tail; pushed in reverse.
                    stack.push(Frame::Range(b, 0, hi - last * bl));
                    let full = last - first - 1;
                    if full > 0 {
                        if full > 1 {
                            stack.push(Frame::Repeat(bl as usize, full - 1));
                        }
                        stack.push(Frame::Range(b, 0, bl));
                    }
                    stack.push(Frame::Range(b, lo - first * bl, bl));
                }
                Rule::Substring { base, start, .. } => {
                    stack.push(Frame::Range(base, start + lo, start + hi))
                }
            }
        }
        if out.len() as u64 != total {
            return Err(Error::LengthMismatch {
                expected: total as usize,
                actual: out.len(),
            });
        }
        Ok(out)
    }

    /// Converts the parse tree into phrases. Each rule stays internal at one
    /// occurrence: the one whose starting position has the smallest rank
    /// under `io` (or the leftmost when `io` is `None`); every other
    /// occurrence, and every substring rule, becomes a copy leaf.
    pub(crate) fn tree_scheme(&self, io: Option<&[u32]>) -> Result<Scheme> {
        const UNSET: u64 = u64::MAX;
        let m = self.rules.len();
        let n = self.expanded_len();
        if n > MAX_TEXT_LEN as u64 {
            return Err(Error::SizeLimit {
                requested: n as u128,
                limit: MAX_TEXT_LEN,
            });
        }
        if let Some(io) = io {
            if io.len() as u64 != n {
                return Err(Error::LengthMismatch {
                    expected: n as usize,
                    actual: io.len(),
                });
            }
        }
        let rank = |p: u64| -> u64 {
            match io {
                Some(io) => io[p as usize] as u64,
                None => p,
            }
        };
        // Whether a power at x keeps its first copy internal (Y . Y^{t-1}).
        let leading = |x: u64, bl: u64| rank(x) < rank(x + bl);

        let mut minpos = vec![UNSET; m];
        minpos[self.start as usize] = 0;
        let offer = |minpos: &mut [u64], c: u32, pos: u64| {
            let cur = minpos[c as usize];
            if cur == UNSET || rank(pos) < rank(cur) {
                minpos[c as usize] = pos;
            }
        };
        for id in (0..m).rev() {
            let x = minpos[id];
            if x == UNSET {
                continue;
            }
            match self.rules[id] {
                Rule::Terminal(_) | Rule::Substring { .. } => {}
                Rule::Concat(l, r) => {
                    offer(&mut minpos, l, x);
                    offer(&mut minpos, r, x + self.lens[l as usize]);
                }
                Rule::Power(b, t) => {
                    let bl = self.lens[b as usize];
                    let at = if leading(x, bl) {
                        x
                    } else {
                        x + (t as u64 - 1) * bl
                    };
                    offer(&mut minpos, b, at);
                }
            }
        }

        // Source position of each substring rule, inside the kept occurrence
        // of its base.
        let mut sub_src = vec![UNSET; m];
        for id in 0..m {
            if let Rule::Substring { base, start, .. } = self.rules[id] {
                let b = base as usize;
                let at = match self.rules[b] {
                    Rule::Substring { .. } => sub_src[b],
                    _ => minpos[b],
                };
                if at != UNSET {
                    sub_src[id] = at + start;
                }
            }
        }

        enum Frame {
            Node(u32, u64),
            Leaf(Phrase),
        }
        let mut phrases = Vec::new();
        let mut stack = vec![Frame::Node(self.start, 0)];
        while let Some(frame) = stack.pop() {
            let (id, x) = match frame {
                Frame::Leaf(ph) => {
                    phrases.push(ph);
                    continue;
                }
                Frame::Node(id, x) => (id, x),
            };
            let len = self.lens[id as usize];
            let rule = self.rules[id as usize];
            if let Rule::Substring { .. } = rule {
                let src = sub_src[id as usize];
                if src == UNSET {
                    return Err(Error::NotInternal { rule: id as usize });
                }
                phrases.push(Phrase::Copy {
                    target: x as usize,
                    source: src as usize,
                    len: len as usize,
                });
                continue;
            }
            if minpos[id as usize] != x {
                phrases.push(Phrase::Copy {
                    target: x as usize,
                    source: minpos[id as usize] as usize,
                    len: len as usize,
                });
                continue;
            }
            match rule {
                Rule::Terminal(c) => phrases.push(Phrase::Explicit {
                    target: x as usize,
                    symbol: c,
                }),
                Rule::Concat(l, r) => {
                    stack.push(Frame::Node(r, x + self.lens[l as usize]));
                    stack.push(Frame::Node(l, x));
                }
                Rule::Power(b, t) => {
                    let bl = self.lens[b as usize];
                    let rest = ((t as u64 - 1) * bl) as usize;
                    if leading(x, bl) {
                        stack.push(Frame::Leaf(Phrase::Copy {
                            target: (x + bl) as usize,
                            source: x as usize,
                            len: rest,
                        }));
                        stack.push(Frame::Node(b, x));
                    } else {
                        stack.push(Frame::Node(b, x + rest as u64));
                        stack.push(Frame::Leaf(Phrase::Copy {
                            target: x as usize,
                            source: (x + bl) as usize,
                            len: rest,
                        }));
                    }
                }
                Rule::Substring { .. } => unreachable!(),
            }
        }
        Ok(Scheme::new(n as usize, phrases))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_expansion_shapes() {
        // a^5, then substrings of it crossing copies.
        let rules = vec![
            Rule::Terminal(b'a'),
            Rule::Terminal(b'b'),
            Rule::Concat(0, 1),
            Rule::Power(2, 5),
            Rule::Substring {
                base: 3,
                start: 1,
                end: 8,
            },
        ];
        let set = RuleSet::new(rules.clone(), 3, false);
        // Rule 4 is unreachable from 3 and substrings are refused anyway.
        assert!(set.is_err());
        let set = RuleSet::new(rules, 4, true).unwrap();
        assert_eq!(set.expand().unwrap(), b"babababa"[..7]);
    }

    #[test]
    fn malformed_rules() {
        assert!(matches!(
            RuleSet::new(vec![Rule::Concat(0, 0)], 0, false),
            Err(Error::MalformedRules { .. })
        ));
        assert!(matches!(
            RuleSet::new(vec![Rule::Terminal(1), Rule::Power(0, 1)], 1, false),
            Err(Error::MalformedRules { .. })
        ));
        assert!(matches!(
            RuleSet::new(
                vec![
                    Rule::Terminal(1),
                    Rule::Substring {
                        base: 0,
                        start: 0,
                        end: 2
                    }
                ],
                1,
                true
            ),
            Err(Error::TruncationOutOfRange { rule: 1 })
        ));
        assert_eq!(
            RuleSet::new(vec![], 0, true).unwrap_err(),
            Error::EmptyInput
        );
    }

    #[test]
    fn interning() {
        let mut sink = RuleSink::new();
        let a = sink.intern(Rule::Terminal(1));
        assert_eq!(sink.intern(Rule::Terminal(1)), a);
        let c = sink.intern(Rule::Concat(a, a));
        assert_eq!(c, 1);
        assert_eq!(sink.push(Rule::Terminal(1)), 2);
    }
}
