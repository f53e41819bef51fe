//! Bidirectional schemes: phrase lists that copy from elsewhere in the text
//! or store a symbol, together with the source function `f`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::suffix::SuffixContext;
use crate::text::{fibonacci_number, fibonacci_word, FibVariant, Text, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phrase {
    Copy {
        target: usize,
        source: usize,
        len: usize,
    },
    Explicit {
        target: usize,
        symbol: u8,
    },
}

impl Phrase {
    #[inline]
    pub fn target(&self) -> usize {
        match *self {
            Phrase::Copy { target, .. } | Phrase::Explicit { target, .. } => target,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        match *self {
            Phrase::Copy { len, .. } => len,
            Phrase::Explicit { .. } => 1,
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One past the last target position.
    #[inline]
    pub fn end(&self) -> usize {
        self.target() + self.len()
    }

    #[inline]
    pub fn is_copy(&self) -> bool {
        matches!(self, Phrase::Copy { .. })
    }

    /// Source start of a copy.
    #[inline]
    pub fn source(&self) -> Option<usize> {
        match *self {
            Phrase::Copy { source, .. } => Some(source),
            Phrase::Explicit { .. } => None,
        }
    }
}

/// A sequence of phrases meant to tile `0..n`.
///
/// Construction does not check the tiling; [`validate`] reports on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scheme {
    n: usize,
    phrases: Vec<Phrase>,
}

const NONE: u32 = u32::MAX;

impl Scheme {
    pub fn new(n: usize, phrases: Vec<Phrase>) -> Scheme {
        Scheme { n, phrases }
    }

    /// One explicit phrase per symbol.
    pub fn all_explicit(text: &[u8]) -> Scheme {
        let phrases = text
            .iter()
            .enumerate()
            .map(|(target, &symbol)| Phrase::Explicit { target, symbol })
            .collect();
        Scheme {
            n: text.len(),
            phrases,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn into_phrases(self) -> Vec<Phrase> {
        self.phrases
    }

    /// Checks that the phrases tile `0..n` and that every copy source lies
    /// inside the text. Returns the first offending position.
    pub fn check_tiling(&self) -> core::result::Result<(), usize> {
        let mut next = 0usize;
        for ph in &self.phrases {
            if ph.target() != next || ph.is_empty() || ph.end() > self.n {
                return Err(next);
            }
            if let Phrase::Copy { source, len, .. } = *ph {
                if source.checked_add(len).is_none_or(|e| e > self.n) {
                    return Err(ph.target());
                }
            }
            next = ph.end();
        }
        if next != self.n {
            return Err(next);
        }
        Ok(())
    }

    /// Renders the phrases of `text` separated by `|`, writing the sentinel
    /// as `$` and other bytes as chars.
    pub fn render(&self, text: &[u8]) -> String {
        let mut out = String::new();
        for (i, ph) in self.phrases.iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            for &c in &text[ph.target()..ph.end().min(text.len())] {
                out.push(if c == 0 { '$' } else { c as char });
            }
        }
        out
    }

    fn f_raw(&self) -> Result<Vec<u32>> {
        self.check_tiling()
            .map_err(|position| Error::NotATiling { position })?;
        let mut f = vec![NONE; self.n];
        for ph in &self.phrases {
            if let Phrase::Copy {
                target,
                source,
                len,
            } = *ph
            {
                for j in 0..len {
                    f[target + j] = (source + j) as u32;
                }
            }
        }
        Ok(f)
    }
}

/// The source function: `Some(q)` when position `p` is copied from `q`,
/// `None` at explicit symbols.
pub fn f_map(s: &Scheme) -> Result<Vec<Option<usize>>> {
    Ok(s.f_raw()?
        .into_iter()
        .map(|q| if q == NONE { None } else { Some(q as usize) })
        .collect())
}

/// Follows `f` from every position. Returns, for each position, the number
/// of steps to an explicit symbol and that explicit position, or the first
/// position (in chain order) that never grounds.
fn resolve(f: &[u32]) -> core::result::Result<(Vec<u32>, Vec<u32>), usize> {
    const UNSEEN: u32 = u32::MAX;
    const ON_STACK: u32 = u32::MAX - 1;
    let n = f.len();
    let mut depth = vec![UNSEEN; n];
    let mut root = vec![0u32; n];
    let mut stack: Vec<u32> = Vec::new();
    for start in 0..n {
        if depth[start] != UNSEEN {
            continue;
        }
        let mut p = start;
        loop {
            match depth[p] {
                UNSEEN => {
                    if f[p] == NONE {
                        depth[p] = 0;
                        root[p] = p as u32;
                        break;
                    }
                    depth[p] = ON_STACK;
                    stack.push(p as u32);
                    p = f[p] as usize;
                }
                ON_STACK => return Err(p),
                _ => break,
            }
        }
        // p is resolved; unwind.
        while let Some(q) = stack.pop() {
            let q = q as usize;
            let src = f[q] as usize;
            depth[q] = depth[src] + 1;
            root[q] = root[src];
        }
    }
    Ok((depth, root))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub position: usize,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub covers: bool,
    pub contents_match: bool,
    pub acyclic: bool,
    /// Result of the order check when an order was supplied.
    pub ordered_under: Option<bool>,
    pub first_violation: Option<Violation>,
}

impl ValidationReport {
    #[inline]
    pub fn valid(&self) -> bool {
        self.covers && self.contents_match && self.acyclic
    }
}

pub fn validate(s: &Scheme, t: &Text) -> ValidationReport {
    let text = t.as_bytes();
    let mut first: Option<Violation> = None;
    let note = |position: usize, reason: &'static str, first: &mut Option<Violation>| {
        if first.is_none() {
            *first = Some(Violation { position, reason });
        }
    };

    let covers = if s.n != text.len() {
        note(0, "scheme length differs from the text length", &mut first);
        false
    } else {
        match s.check_tiling() {
            Ok(()) => true,
            Err(p) => {
                note(p, "phrases do not tile the text", &mut first);
                false
            }
        }
    };

    let mut contents_match = true;
    for ph in &s.phrases {
        match *ph {
            Phrase::Explicit { target, symbol } => {
                if text.get(target) != Some(&symbol) {
                    contents_match = false;
                    note(target, "explicit symbol differs from the text", &mut first);
                }
            }
            Phrase::Copy {
                target,
                source,
                len,
            } => {
                let ok = target.checked_add(len).is_some_and(|e| e <= text.len())
                    && source.checked_add(len).is_some_and(|e| e <= text.len());
                if !ok {
                    contents_match = false;
                    note(target, "copy exceeds the text", &mut first);
                } else if let Some(j) = (0..len).find(|&j| text[source + j] != text[target + j]) {
                    contents_match = false;
                    note(
                        target + j,
                        "copied symbol differs from the text",
                        &mut first,
                    );
                }
            }
        }
    }

    let acyclic = covers
        && match s.f_raw().ok().map(|f| resolve(&f)) {
            Some(Ok(_)) => true,
            Some(Err(p)) => {
                note(
                    p,
                    "position never resolves to an explicit symbol",
                    &mut first,
                );
                false
            }
            None => false,
        };

    ValidationReport {
        covers,
        contents_match,
        acyclic,
        ordered_under: None,
        first_violation: first,
    }
}

/// [`validate`] plus the order check under `io`.
pub fn validate_with_order(s: &Scheme, t: &Text, io: &[u32]) -> ValidationReport {
    let mut rep = validate(s, t);
    let ordered = first_unordered(s, io).is_none();
    if !ordered && rep.first_violation.is_none() {
        let phrase = first_unordered(s, io).unwrap();
        rep.first_violation = Some(Violation {
            position: s.phrases[phrase].target(),
            reason: "copy does not respect the order",
        });
    }
    rep.ordered_under = Some(ordered);
    rep
}

/// Rebuilds the text the scheme describes.
pub fn decode(s: &Scheme) -> Result<Vec<u8>> {
    let f = s.f_raw()?;
    let (_, root) = resolve(&f).map_err(|position| Error::CyclicScheme { position })?;
    let mut sym = vec![0u8; s.n];
    for ph in &s.phrases {
        if let Phrase::Explicit { target, symbol } = *ph {
            sym[target] = symbol;
        }
    }
    Ok(root.iter().map(|&q| sym[q as usize]).collect())
}

/// An order under which the scheme is ordered: positions sorted by the
/// length of their chain to an explicit symbol, ties by position. Returns
/// `io` with `io[p]` the rank of position `p`.
pub fn scheme_to_order(s: &Scheme) -> Result<Vec<u32>> {
    let f = s.f_raw()?;
    let (depth, _) = resolve(&f).map_err(|position| Error::CyclicScheme { position })?;
    let max = depth.iter().copied().max().unwrap_or(0) as usize;
    let mut start = vec![0u32; max + 2];
    for &d in &depth {
        start[d as usize + 1] += 1;
    }
    for d in 0..=max {
        start[d + 1] += start[d];
    }
    let mut io = vec![0u32; s.n];
    for (p, &d) in depth.iter().enumerate() {
        io[p] = start[d as usize];
        start[d as usize] += 1;
    }
    Ok(io)
}

/// Index of the first copy phrase with some `io[source + j] >= io[target + j]`.
pub fn first_unordered(s: &Scheme, io: &[u32]) -> Option<usize> {
    s.phrases.iter().position(|ph| match *ph {
        Phrase::Copy {
            target,
            source,
            len,
        } => (0..len).any(|j| match (io.get(source + j), io.get(target + j)) {
            (Some(a), Some(b)) => a >= b,
            _ => true,
        }),
        Phrase::Explicit { .. } => false,
    })
}

/// True iff every copy points to smaller ranks at each offset.
pub fn check_ordered(s: &Scheme, io: &[u32]) -> bool {
    first_unordered(s, io).is_none()
}

/// The scheme induced by the BWT runs: the text starting positions of the
/// runs, sorted, split the text into stretches; each stretch copies all but
/// its last symbol from the φ image of its start, and the last is explicit.
pub fn bwt_scheme(ctx: &SuffixContext) -> Scheme {
    let n = ctx.len();
    let text = ctx.text().as_bytes();
    let mut starts: Vec<usize> = ctx
        .run_starts()
        .iter()
        .map(|&i| ctx.sa()[i as usize] as usize)
        .collect();
    starts.sort_unstable();
    debug_assert_eq!(starts[0], 0);
    let mut phrases = Vec::with_capacity(2 * starts.len());
    for (i, &t) in starts.iter().enumerate() {
        let next = starts.get(i + 1).copied().unwrap_or(n);
        let last = next - 1;
        if last > t {
            phrases.push(Phrase::Copy {
                target: t,
                source: ctx.phi_unchecked(t),
                len: last - t,
            });
        }
        phrases.push(Phrase::Explicit {
            target: last,
            symbol: text[last],
        });
    }
    Scheme { n, phrases }
}

/// The four-phrase scheme of the Fibonacci word `F_k`, `k >= 6`, plus the
/// sentinel as a fifth explicit phrase.
pub fn lemma_bms_scheme(k: u32) -> Result<Scheme> {
    if k < 6 {
        return Err(Error::InvalidParameter(
            "the four-phrase Fibonacci scheme needs k >= 6",
        ));
    }
    let text = fibonacci_word(k, FibVariant::Standard, DEFAULT_BUDGET)?;
    let t = text.as_bytes();
    let f1 = fibonacci_number(k - 1).unwrap() as usize;
    let f2 = fibonacci_number(k - 2).unwrap() as usize;
    let fk = f1 + f2;
    let phrases = vec![
        Phrase::Copy {
            target: 0,
            source: f2,
            len: f1 - 2,
        },
        Phrase::Explicit {
            target: f1 - 2,
            symbol: t[f1 - 2],
        },
        Phrase::Explicit {
            target: f1 - 1,
            symbol: t[f1 - 1],
        },
        Phrase::Copy {
            target: f1,
            source: f2,
            len: f2,
        },
        Phrase::Explicit {
            target: fk,
            symbol: t[fk],
        },
    ];
    Ok(Scheme { n: fk + 1, phrases })
}
