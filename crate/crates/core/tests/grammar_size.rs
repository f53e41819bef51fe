use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repmeasures_core::*;

// Rule count against B * ceil(log_{4/3}(n / B)) + 1, with B the size of the
// BWT-run scheme and the log term clamped to at least one round. The
// construction keeps this below 24 plus lower-order terms; 30 is a
// regression tripwire.
const TRIPWIRE: f64 = 30.0;

fn ratio(t: &Text) -> f64 {
    let ctx = SuffixContext::new(t.clone());
    let b = bwt_scheme(&ctx).len() as f64;
    let n = t.len() as f64;
    let rounds = ((n / b).ln() / (4.0f64 / 3.0).ln()).ceil().max(1.0);
    build_rlslp(t).size() as f64 / (b * rounds + 1.0)
}

#[test]
fn rlslp_size_stays_under_tripwire() {
    let mut texts: Vec<(String, Text)> = Vec::new();
    for k in 1..=25 {
        texts.push((
            format!("fib {k}"),
            fibonacci_word(k, FibVariant::Standard, DEFAULT_BUDGET).unwrap(),
        ));
        texts.push((
            format!("fib-alt {k}"),
            fibonacci_word(k, FibVariant::Alt, DEFAULT_BUDGET).unwrap(),
        ));
    }
    for sigma in 2..=5 {
        for k in 1..=8 {
            texts.push((
                format!("de bruijn {k} {sigma}"),
                de_bruijn(k, sigma, DEFAULT_BUDGET).unwrap(),
            ));
        }
    }
    for sigma in [4, 5, 7, 8, 10, 20, 40] {
        texts.push((format!("edit family {sigma}"), lemma35_text(sigma).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let sigma = rng.gen_range(1u8..=8);
        let len = rng.gen_range(0..3000);
        let raw: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=sigma)).collect();
        texts.push((format!("random {i}"), Text::from_raw(&raw).unwrap()));
    }
    texts.push(("unary".into(), Text::from_raw(&[b'a'; 1024]).unwrap()));
    let (mut worst, mut name) = (0.0, "");
    for (label, t) in &texts {
        let x = ratio(t);
        if x > worst {
            (worst, name) = (x, label);
        }
    }
    println!("largest size ratio {worst:.3} on {name}");
    assert!(worst < TRIPWIRE, "size ratio {worst} on {name}");
}

#[test]
fn unary_grammar_is_small() {
    let t = Text::from_raw(&[b'a'; 1024]).unwrap();
    let g = build_rlslp(&t);
    assert!(g.size() <= 25, "{} rules", g.size());
    assert!(g.rules().iter().any(|r| matches!(r, Rule::Power(_, _))));
    assert_eq!(build_rlslp(&Text::from_raw(b"").unwrap()).size(), 1);
}
