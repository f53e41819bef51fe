//! Measure reports and their human, JSON and TSV renderings.

use std::fmt::Write as _;

use repmeasures_core::{
    build_rlslp, bwt_scheme, collage_to_scheme, lex_parse, lz_parse, lz_to_collage, validate,
    SuffixContext, Text,
};
use serde::Serialize;

use crate::error::{Error, Result};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ratios {
    pub z_over_v: f64,
    pub r_over_v: f64,
}

/// The deep columns are `None` unless requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub name: String,
    /// Length including the sentinel, unless built with `exclude_sentinel`.
    pub n: usize,
    pub sigma: usize,
    pub r: usize,
    pub z: usize,
    pub z_no: usize,
    pub v: usize,
    pub bwt_scheme_size: usize,
    pub rlslp_rules: Option<usize>,
    pub collage_rules: Option<usize>,
    pub scheme_from_collage_size: Option<usize>,
    pub ratios: Ratios,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MeasureOptions {
    pub deep: bool,
    /// Report `n` without the sentinel.
    pub exclude_sentinel: bool,
}

/// Runs the pipeline on one text, failing with [`Error::Invariant`] if any
/// of the bounds the measures must satisfy is broken.
pub fn measures(name: &str, t: &Text, opts: MeasureOptions) -> Result<MeasureReport> {
    let ctx = SuffixContext::new(t.clone());
    let r = ctx.r();
    let z_parse = lz_parse(&ctx, true);
    let z = z_parse.phrase_count();
    let z_no = lz_parse(&ctx, false).phrase_count();
    let v = lex_parse(&ctx).phrase_count();
    let bs = bwt_scheme(&ctx);

    let violated = |what: String| Error::Invariant {
        name: name.to_string(),
        what,
    };
    let check =
        |ok: bool, what: &dyn Fn() -> String| if ok { Ok(()) } else { Err(violated(what())) };
    check(v <= 2 * r, &|| format!("v={v} > 2r={}", 2 * r))?;
    check(z <= z_no, &|| format!("z={z} > z_no={z_no}"))?;
    check(bs.len() <= 2 * r, &|| {
        format!("bwt scheme has {} > 2r={} phrases", bs.len(), 2 * r)
    })?;
    check(validate(&bs, t).valid(), &|| {
        "bwt scheme does not validate".into()
    })?;

    let (mut rlslp_rules, mut collage_rules, mut scheme_from_collage_size) = (None, None, None);
    if opts.deep {
        let g = build_rlslp(t).size();
        check(z <= g + 1, &|| format!("z={z} > rlslp_rules+1={}", g + 1))?;
        check(v <= g + 1, &|| format!("v={v} > rlslp_rules+1={}", g + 1))?;
        let c = lz_to_collage(&z_parse, t).map_err(|e| Error::core(name, e))?;
        check(c.size() <= 4 * z, &|| {
            format!("collage_rules={} > 4z={}", c.size(), 4 * z)
        })?;
        let round_trip = c.expand().map(|x| x == *t).unwrap_or(false);
        check(round_trip, &|| {
            "collage system does not expand to the text".into()
        })?;
        let s = collage_to_scheme(&c, t).map_err(|e| Error::core(name, e))?;
        check(s.len() <= c.size() + 1, &|| {
            format!("collage scheme has {} > {} phrases", s.len(), c.size() + 1)
        })?;
        check(validate(&s, t).valid(), &|| {
            "collage scheme does not validate".into()
        })?;
        rlslp_rules = Some(g);
        collage_rules = Some(c.size());
        scheme_from_collage_size = Some(s.len());
    }

    Ok(MeasureReport {
        name: name.to_string(),
        n: if opts.exclude_sentinel {
            t.len() - 1
        } else {
            t.len()
        },
        sigma: t.sigma(),
        r,
        z,
        z_no,
        v,
        bwt_scheme_size: bs.len(),
        rlslp_rules,
        collage_rules,
        scheme_from_collage_size,
        ratios: Ratios {
            z_over_v: z as f64 / v as f64,
            r_over_v: r as f64 / v as f64,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Tsv,
}

#[derive(Serialize)]
struct Envelope<'a> {
    version: u32,
    reports: &'a [MeasureReport],
}

const COLUMNS: [&str; 13] = [
    "name",
    "n",
    "r",
    "z",
    "v",
    "z/v",
    "r/v",
    "sigma",
    "z_no",
    "bwt_scheme",
    "rlslp_rules",
    "collage_rules",
    "scheme_from_collage",
];

fn cells(r: &MeasureReport) -> [String; 13] {
    let opt = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |x| x.to_string());
    [
        r.name.clone(),
        r.n.to_string(),
        r.r.to_string(),
        r.z.to_string(),
        r.v.to_string(),
        format!("{:.3}", r.ratios.z_over_v),
        format!("{:.3}", r.ratios.r_over_v),
        r.sigma.to_string(),
        r.z_no.to_string(),
        r.bwt_scheme_size.to_string(),
        opt(r.rlslp_rules),
        opt(r.collage_rules),
        opt(r.scheme_from_collage_size),
    ]
}

pub fn render(format: Format, reports: &[MeasureReport]) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&Envelope {
                version: REPORT_VERSION,
                reports,
            })
            .unwrap();
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut out = COLUMNS.join("\t");
            out.push('\n');
            for r in reports {
                out.push_str(&cells(r).join("\t"));
                out.push('\n');
            }
            out
        }
        Format::Human => {
            let rows: Vec<[String; 13]> = reports.iter().map(cells).collect();
            let mut width = COLUMNS.map(str::len);
            for row in &rows {
                for (w, c) in width.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let mut out = String::new();
            let mut line = |cols: &mut dyn Iterator<Item = &str>| {
                let mut l = String::new();
                for (i, c) in cols.enumerate() {
                    if i == 0 {
                        write!(l, "{c:<w$}", w = width[0]).unwrap();
                    } else {
                        write!(l, "  {c:>w$}", w = width[i]).unwrap();
                    }
                }
                out.push_str(l.trim_end());
                out.push('\n');
            };
            line(&mut COLUMNS.iter().copied());
            for row in &rows {
                line(&mut row.iter().map(String::as_str));
            }
            out
        }
    }
}
