//! Internal collage systems: run-length grammars with substring rules.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::parse::ParseResult;
use crate::rules::{Rule, RuleSet};
use crate::scheme::{Phrase, Scheme};
use crate::suffix::SuffixContext;
use crate::text::Text;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollageSystem {
    set: RuleSet,
}

impl CollageSystem {
    pub fn new(rules: Vec<Rule>, start: u32) -> Result<CollageSystem> {
        Ok(CollageSystem {
            set: RuleSet::new(rules, start, true)?,
        })
    }

    #[inline]
    pub fn rules(&self) -> &[Rule] {
        &self.set.rules
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.set.rules.len()
    }

    #[inline]
    pub fn start(&self) -> u32 {
        self.set.start
    }

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

    pub fn expand(&self) -> Result<Text> {
        Text::from_terminated(self.set.expand()?)
    }

    /// Whether every rule expands to a substring of the start rule's
    /// expansion. Expands every rule, so only suited to small systems.
    /// Returns the first rule that does not occur.
    pub fn first_external(&self) -> Result<Option<usize>> {
        let text = Text::from_terminated(self.set.expand()?)?;
        let ctx = SuffixContext::new(text);
        let t = ctx.text().as_bytes();
        let sa = ctx.sa();
        for id in 0..self.size() {
            let pat = self.set_expansion(id as u32)?;
            let lo = sa.partition_point(|&p| &t[p as usize..] < &pat[..]);
            let found = lo < sa.len() && t[sa[lo] as usize..].starts_with(&pat);
            if !found {
                return Ok(Some(id));
            }
        }
        Ok(None)
    }

    fn set_expansion(&self, id: u32) -> Result<Vec<u8>> {
        RuleSet {
            rules: self.set.rules[..=id as usize].to_vec(),
            lens: self.set.lens[..=id as usize].to_vec(),
            start: id,
        }
        .expand()
    }
}

/// The collage system built phrase by phrase from a left-to-right parse
/// whose copies start before their targets. `S_i` generates the prefix
/// covered by the first `i` phrases:
///
/// * the first phrase (a symbol `a`) gives `S_1 -> a`;
/// * an explicit `a` gives `A_i -> a` and `S_i -> S_{i-1} A_i`;
/// * a copy of `T[x..y)` inside the prefix gives `N_i -> S_{i-1}[x..y)` and
///   `S_i -> S_{i-1} N_i`;
/// * a copy overlapping its target has period `p = |S_{i-1}| - x` and gives
///   `O_i -> S_{i-1}[x..]`, `O'_i -> O_i[..len mod p]`, `R_i -> O_i^q`,
///   `N_i -> R_i O'_i` and `S_i -> S_{i-1} N_i`, dropping `O'_i` when `p`
///   divides the length and `R_i` when `q = 1`.
pub fn lz_to_collage(parse: &ParseResult, t: &Text) -> Result<CollageSystem> {
    let text = t.as_bytes();
    let phrases = parse.scheme.phrases();
    let mut rules: Vec<Rule> = Vec::new();
    let mut terminals: BTreeMap<u8, u32> = BTreeMap::new();
    let push = |rules: &mut Vec<Rule>, r: Rule| -> u32 {
        rules.push(r);
        (rules.len() - 1) as u32
    };
    let bad = |phrase: usize, reason: &'static str| Error::InvalidParse { phrase, reason };

    let mut prefix = 0usize;
    let mut s_prev: Option<u32> = None;
    for (i, ph) in phrases.iter().enumerate() {
        if ph.target() != prefix {
            return Err(bad(i, "phrases do not tile the text left to right"));
        }
        if ph.end() > text.len() {
            return Err(bad(i, "phrase exceeds the text"));
        }
        let n_i = match (*ph, s_prev) {
            (Phrase::Explicit { symbol, .. }, _) if symbol != text[prefix] => {
                return Err(bad(i, "explicit symbol differs from the text"))
            }
            (Phrase::Explicit { symbol, .. }, None) => {
                let s = push(&mut rules, Rule::Terminal(symbol));
                terminals.insert(symbol, s);
                s_prev = Some(s);
                prefix += 1;
                continue;
            }
            (Phrase::Copy { .. }, None) => return Err(bad(i, "the first phrase must be explicit")),
            (Phrase::Explicit { symbol, .. }, Some(_)) => match terminals.get(&symbol) {
                Some(&a) => a,
                None => {
                    let a = push(&mut rules, Rule::Terminal(symbol));
                    terminals.insert(symbol, a);
                    a
                }
            },
            (
                Phrase::Copy {
                    source: x,
                    len,
                    target,
                },
                Some(s),
            ) => {
                if x >= target {
                    return Err(bad(i, "copy source must start before the target"));
                }
                if text[x..x + len] != text[target..target + len] {
                    return Err(bad(i, "copied content differs from the text"));
                }
                if x + len <= prefix {
                    push(
                        &mut rules,
                        Rule::Substring {
                            base: s,
                            start: x as u64,
                            end: (x + len) as u64,
                        },
                    )
                } else {
                    let p = prefix - x;
                    let (q, rem) = (len / p, len % p);
                    let o = push(
                        &mut rules,
                        Rule::Substring {
                            base: s,
                            start: x as u64,
                            end: prefix as u64,
                        },
                    );
                    let o2 = (rem > 0).then(|| {
                        push(
                            &mut rules,
                            Rule::Substring {
                                base: o,
                                start: 0,
                                end: rem as u64,
                            },
                        )
                    });
                    let r = if q >= 2 {
                        push(&mut rules, Rule::Power(o, q as u32))
                    } else {
                        o
                    };
                    match o2 {
                        Some(o2) => push(&mut rules, Rule::Concat(r, o2)),
                        None => r,
                    }
                }
            }
        };
        let s = s_prev.unwrap();
        s_prev = Some(push(&mut rules, Rule::Concat(s, n_i)));
        prefix = ph.end();
    }
    if prefix != text.len() {
        return Err(bad(phrases.len(), "phrases do not cover the text"));
    }
    let start = s_prev.ok_or(Error::EmptyInput)?;
    CollageSystem::new(rules, start)
}

/// The bidirectional scheme read off the parse tree of an internal collage
/// system: substring nodes and all but the leftmost occurrence of every
/// other rule become copy leaves. Fails with [`Error::NotInternal`] when a
/// substring rule truncates a base with no internal node in the tree.
pub fn collage_to_scheme(c: &CollageSystem, t: &Text) -> Result<Scheme> {
    if c.expanded_len() != t.len() as u64 {
        return Err(Error::LengthMismatch {
            expected: t.len(),
            actual: c.expanded_len() as usize,
        });
    }
    c.set.tree_scheme(None)
}
