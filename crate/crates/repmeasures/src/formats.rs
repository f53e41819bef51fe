//! Line-oriented file formats. Text positions in files are 1-based, rule
//! ids are the 0-based rule indices.
//!
//! ```text
//! SCHEME n=<n>
//! C <target> <source> <len>
//! E <target> <byte>
//!
//! RLSLP n=<n> start=<id>        (COLLAGE is accepted as a synonym)
//! T <id> <byte>
//! C <id> <left> <right>
//! P <id> <base> <exp>
//! S <id> <base> <from> <to>     (collage systems only; inclusive)
//! ```

use std::fmt::Write as _;

use repmeasures_core::{CollageSystem, Phrase, Rlslp, Rule, Scheme, SuffixContext};

use crate::error::{Error, Result};

fn format_err(context: &str, line: usize, reason: impl Into<String>) -> Error {
    Error::Format {
        context: context.to_string(),
        line,
        reason: reason.into(),
    }
}

/// Non-blank lines with their 1-based line numbers.
fn lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn field<T: std::str::FromStr>(tok: Option<&str>, ctx: &str, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| format_err(ctx, line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| format_err(ctx, line, format!("bad {what} `{tok}`")))
}

fn header_value<T: std::str::FromStr>(tok: Option<&str>, key: &str, ctx: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| format_err(ctx, 1, format!("header lacks {key}=")))?;
    let v = tok.strip_prefix(key).and_then(|t| t.strip_prefix('='));
    let v = v.ok_or_else(|| format_err(ctx, 1, format!("expected {key}=..., found `{tok}`")))?;
    v.parse()
        .map_err(|_| format_err(ctx, 1, format!("bad {key} value `{v}`")))
}

fn no_trailing(mut toks: std::str::SplitWhitespace<'_>, ctx: &str, line: usize) -> Result<()> {
    match toks.next() {
        Some(t) => Err(format_err(
            ctx,
            line,
            format!("unexpected trailing field `{t}`"),
        )),
        None => Ok(()),
    }
}

pub fn write_scheme(s: &Scheme) -> String {
    let mut out = format!("SCHEME n={}\n", s.n());
    for p in s.phrases() {
        match *p {
            Phrase::Copy {
                target,
                source,
                len,
            } => writeln!(out, "C {} {} {}", target + 1, source + 1, len),
            Phrase::Explicit { target, symbol } => writeln!(out, "E {} {}", target + 1, symbol),
        }
        .unwrap();
    }
    out
}

/// Parses a scheme file. Tiling and content are left to validation.
pub fn parse_scheme(src: &str, ctx: &str) -> Result<Scheme> {
    let mut it = lines(src);
    let (_, head) = it
        .next()
        .ok_or_else(|| format_err(ctx, 1, "empty scheme file"))?;
    let mut toks = head.split_whitespace();
    if toks.next() != Some("SCHEME") {
        return Err(format_err(ctx, 1, "expected header `SCHEME n=<n>`"));
    }
    let n: usize = header_value(toks.next(), "n", ctx)?;
    no_trailing(toks, ctx, 1)?;
    let mut phrases = Vec::new();
    for (line, l) in it {
        let mut toks = l.split_whitespace();
        let pos = |v: usize| {
            v.checked_sub(1)
                .ok_or_else(|| format_err(ctx, line, "positions are 1-based"))
        };
        match toks.next() {
            Some("C") => {
                let target = pos(field(toks.next(), ctx, line, "target")?)?;
                let source = pos(field(toks.next(), ctx, line, "source")?)?;
                let len: usize = field(toks.next(), ctx, line, "length")?;
                if len == 0 {
                    return Err(format_err(ctx, line, "copy length must be positive"));
                }
                if source == target {
                    return Err(format_err(ctx, line, "copy source equals its target"));
                }
                phrases.push(Phrase::Copy {
                    target,
                    source,
                    len,
                });
            }
            Some("E") => {
                let target = pos(field(toks.next(), ctx, line, "target")?)?;
                let symbol: u8 = field(toks.next(), ctx, line, "byte")?;
                phrases.push(Phrase::Explicit { target, symbol });
            }
            Some(tag) => return Err(format_err(ctx, line, format!("unknown phrase tag `{tag}`"))),
            None => unreachable!(),
        }
        no_trailing(toks, ctx, line)?;
    }
    Ok(Scheme::new(n, phrases))
}

fn write_rules(head: &str, n: u64, start: u32, rules: &[Rule]) -> String {
    let mut out = format!("{head} n={n} start={start}\n");
    for (id, r) in rules.iter().enumerate() {
        match *r {
            Rule::Terminal(b) => writeln!(out, "T {id} {b}"),
            Rule::Concat(l, r) => writeln!(out, "C {id} {l} {r}"),
            Rule::Power(b, e) => writeln!(out, "P {id} {b} {e}"),
            Rule::Substring { base, start, end } => {
                writeln!(out, "S {id} {base} {} {end}", start + 1)
            }
        }
        .unwrap();
    }
    out
}

pub fn write_grammar(g: &Rlslp) -> String {
    write_rules("RLSLP", g.expanded_len(), g.start(), g.rules())
}

pub fn write_collage(c: &CollageSystem) -> String {
    write_rules("COLLAGE", c.expanded_len(), c.start(), c.rules())
}

struct RuleFile {
    n: u64,
    start: u32,
    rules: Vec<Rule>,
}

fn parse_rules(src: &str, ctx: &str, allow_substring: bool) -> Result<RuleFile> {
    let mut it = lines(src);
    let (_, head) = it
        .next()
        .ok_or_else(|| format_err(ctx, 1, "empty grammar file"))?;
    let mut toks = head.split_whitespace();
    match toks.next() {
        Some("RLSLP") | Some("COLLAGE") => {}
        _ => {
            return Err(format_err(
                ctx,
                1,
                "expected header `RLSLP n=<n> start=<id>`",
            ))
        }
    }
    let n: u64 = header_value(toks.next(), "n", ctx)?;
    let start: u32 = header_value(toks.next(), "start", ctx)?;
    no_trailing(toks, ctx, 1)?;
    let mut rules = Vec::new();
    for (line, l) in it {
        let mut toks = l.split_whitespace();
        let tag = toks.next().unwrap();
        let id: usize = field(toks.next(), ctx, line, "rule id")?;
        if id != rules.len() {
            return Err(format_err(
                ctx,
                line,
                format!("rule id {id} out of sequence, expected {}", rules.len()),
            ));
        }
        let rule = match tag {
            "T" => Rule::Terminal(field(toks.next(), ctx, line, "byte")?),
            "C" => Rule::Concat(
                field(toks.next(), ctx, line, "left")?,
                field(toks.next(), ctx, line, "right")?,
            ),
            "P" => Rule::Power(
                field(toks.next(), ctx, line, "base")?,
                field(toks.next(), ctx, line, "exponent")?,
            ),
            "S" if allow_substring => {
                let base = field(toks.next(), ctx, line, "base")?;
                let from: u64 = field(toks.next(), ctx, line, "from")?;
                let to: u64 = field(toks.next(), ctx, line, "to")?;
                if from == 0 || from > to {
                    return Err(format_err(
                        ctx,
                        line,
                        "substring bounds need 1 <= from <= to",
                    ));
                }
                Rule::Substring {
                    base,
                    start: from - 1,
                    end: to,
                }
            }
            "S" => {
                return Err(format_err(
                    ctx,
                    line,
                    "substring rules are not allowed in an RLSLP",
                ))
            }
            _ => return Err(format_err(ctx, line, format!("unknown rule tag `{tag}`"))),
        };
        no_trailing(toks, ctx, line)?;
        rules.push(rule);
    }
    Ok(RuleFile { n, start, rules })
}

fn check_len(n: u64, actual: u64, ctx: &str) -> Result<()> {
    if n != actual {
        return Err(format_err(
            ctx,
            1,
            format!("header says n={n} but the rules expand to {actual} symbols"),
        ));
    }
    Ok(())
}

pub fn parse_grammar(src: &str, ctx: &str) -> Result<Rlslp> {
    let f = parse_rules(src, ctx, false)?;
    let g = Rlslp::new(f.rules, f.start).map_err(|e| Error::core(ctx, e))?;
    check_len(f.n, g.expanded_len(), ctx)?;
    Ok(g)
}

pub fn parse_collage(src: &str, ctx: &str) -> Result<CollageSystem> {
    let f = parse_rules(src, ctx, true)?;
    let c = CollageSystem::new(f.rules, f.start).map_err(|e| Error::core(ctx, e))?;
    check_len(f.n, c.expanded_len(), ctx)?;
    Ok(c)
}

/// Reads `n` whitespace-separated 1-based ranks forming a permutation and
/// returns them 0-based.
pub fn parse_order(src: &str, n: usize, ctx: &str) -> Result<Vec<u32>> {
    let mut io = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for (line, l) in lines(src) {
        for tok in l.split_whitespace() {
            let rank: usize = tok
                .parse()
                .map_err(|_| format_err(ctx, line, format!("bad rank `{tok}`")))?;
            if rank == 0 || rank > n {
                return Err(format_err(
                    ctx,
                    line,
                    format!("rank {rank} outside 1..={n}"),
                ));
            }
            if std::mem::replace(&mut seen[rank - 1], true) {
                return Err(format_err(ctx, line, format!("rank {rank} repeated")));
            }
            io.push((rank - 1) as u32);
        }
    }
    if io.len() != n {
        return Err(format_err(
            ctx,
            1,
            format!("expected {n} ranks, found {}", io.len()),
        ));
    }
    Ok(io)
}

pub fn write_order(io: &[u32]) -> String {
    let mut out = String::new();
    for (i, r) in io.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{}", r + 1).unwrap();
    }
    out.push('\n');
    out
}

/// Renders one symbol: `$` for the sentinel, printable ASCII as itself,
/// anything else as `\xHH`.
pub fn render_symbol(c: u8, out: &mut String) {
    match c {
        0 => out.push('$'),
        b'!'..=b'~' => out.push(c as char),
        _ => write!(out, "\\x{c:02x}").unwrap(),
    }
}

/// Suffix structure dump: `rank sa lcp bwt`, 1-based rank and position.
pub fn dump_sa(ctx: &SuffixContext) -> String {
    let mut out = String::from("rank\tsa\tlcp\tbwt\n");
    for i in 0..ctx.len() {
        write!(out, "{}\t{}\t{}\t", i + 1, ctx.sa()[i] + 1, ctx.lcp()[i]).unwrap();
        render_symbol(ctx.bwt()[i], &mut out);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use repmeasures_core::{lz_parse, Text};

    #[test]
    fn scheme_text_is_exact() {
        let t = Text::from_raw(b"abab").unwrap();
        let s = lz_parse(&SuffixContext::new(t), true).scheme;
        let src = write_scheme(&s);
        assert_eq!(src, "SCHEME n=5\nE 1 97\nE 2 98\nC 3 1 2\nE 5 0\n");
        assert_eq!(parse_scheme(&src, "x").unwrap(), s);
    }

    #[test]
    fn scheme_errors_carry_lines() {
        let e = parse_scheme("SCHEME n=3\nE 1 97\nX 2 3\n", "f").unwrap_err();
        assert!(matches!(e, Error::Format { line: 3, .. }), "{e}");
        assert!(parse_scheme("SCHEME n=3\nC 0 1 1\n", "f").is_err());
        assert!(parse_scheme("SCHEMA n=3\n", "f").is_err());
        assert!(parse_scheme("SCHEME n=3\nE 1 300\n", "f").is_err());
    }

    #[test]
    fn grammar_and_collage_round_trip() {
        let rules = vec![
            Rule::Terminal(b'a'),
            Rule::Power(0, 4),
            Rule::Terminal(0),
            Rule::Concat(1, 2),
        ];
        let g = Rlslp::new(rules, 3).unwrap();
        let src = write_grammar(&g);
        assert_eq!(src, "RLSLP n=5 start=3\nT 0 97\nP 1 0 4\nT 2 0\nC 3 1 2\n");
        assert_eq!(parse_grammar(&src, "g").unwrap(), g);
        assert!(
            parse_grammar("RLSLP n=4 start=3\nT 0 97\nP 1 0 4\nT 2 0\nC 3 1 2\n", "g").is_err()
        );

        let rules = vec![
            Rule::Terminal(b'a'),
            Rule::Power(0, 4),
            Rule::Substring {
                base: 1,
                start: 1,
                end: 3,
            },
            Rule::Terminal(0),
            Rule::Concat(2, 3),
        ];
        let c = CollageSystem::new(rules, 4).unwrap();
        let src = write_collage(&c);
        assert!(src.contains("S 2 1 2 3\n"));
        assert_eq!(parse_collage(&src, "c").unwrap(), c);
        assert_eq!(
            parse_collage(&src.replace("COLLAGE", "RLSLP"), "c").unwrap(),
            c
        );
        assert!(parse_grammar(&src, "c").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("3 1\n2\n", 3, "o").unwrap(), vec![2, 0, 1]);
        assert_eq!(write_order(&[2, 0, 1]), "3 1 2\n");
        assert!(parse_order("1 1 2", 3, "o").is_err());
        assert!(parse_order("1 2", 3, "o").is_err());
        assert!(parse_order("0 1 2", 3, "o").is_err());
    }

    #[test]
    fn sa_dump() {
        let ctx = SuffixContext::new(Text::from_raw(b"ba").unwrap());
        assert_eq!(
            dump_sa(&ctx),
            "rank\tsa\tlcp\tbwt\n1\t3\t0\ta\n2\t2\t0\tb\n3\t1\t0\t$\n"
        );
    }
}
