use proptest::prelude::*;
use repmeasures_core::*;

fn text_strategy(max_len: usize) -> impl Strategy<Value = Text> {
    (1u8..=8).prop_flat_map(move |sigma| {
        proptest::collection::vec(1u8..=sigma, 0..max_len)
            .prop_map(|raw| Text::from_raw(&raw).unwrap())
    })
}

fn naive_sa(s: &[u8]) -> Vec<u32> {
    let mut sa: Vec<u32> = (0..s.len() as u32).collect();
    sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
    sa
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn suffix_structures_match_naive(t in text_strategy(500)) {
        let ctx = SuffixContext::new(t.clone());
        prop_assert_eq!(ctx.sa(), &naive_sa(t.as_bytes())[..]);
        if t.len() <= SearchBudget::NAIVE_SA_N {
            let slow = naive_suffix_structures(&t, SearchBudget::new(SearchBudget::NAIVE_SA_N)).unwrap();
            prop_assert_eq!(ctx.lcp(), slow.lcp());
            prop_assert_eq!(ctx.bwt(), slow.bwt());
        }
        for (i, &p) in ctx.sa().iter().enumerate() {
            prop_assert_eq!(ctx.isa()[p as usize] as usize, i);
        }
        prop_assert_eq!(ctx.invert_bwt(), t.as_bytes());
        prop_assert_eq!(ctx.run_starts().len(), ctx.r());
        prop_assert_eq!(ctx.run_starts()[0], 0);
    }

    #[test]
    fn phi_is_a_permutation_and_constant_within_runs(t in text_strategy(300)) {
        let ctx = SuffixContext::new(t.clone());
        let n = ctx.len();
        let mut seen = vec![false; n];
        for p in 0..n {
            seen[ctx.phi(p).unwrap()] = true;
        }
        prop_assert!(seen.iter().all(|&x| x));
        let starts: std::collections::BTreeSet<u32> = ctx.run_starts().iter().copied().collect();
        let s = t.as_bytes();
        for q in 1..n {
            if !starts.contains(&ctx.isa()[q]) {
                let fq = ctx.phi(q).unwrap();
                prop_assert!(fq >= 1);
                prop_assert_eq!(ctx.phi(q - 1).unwrap(), fq - 1);
                prop_assert_eq!(s[q - 1], s[fq - 1]);
            }
        }
    }

    #[test]
    fn rmq_matches_scan(values in proptest::collection::vec(0u32..50, 1..200)) {
        let rmq = RmqIndex::new(values.clone()).unwrap();
        for lo in 0..values.len() {
            for hi in lo..values.len() {
                let mut best = lo;
                for i in lo..=hi {
                    if values[i] < values[best] {
                        best = i;
                    }
                }
                prop_assert_eq!(rmq.query(lo, hi).unwrap(), best);
            }
        }
    }

    #[test]
    fn parses_validate_and_decode(t in text_strategy(400)) {
        let ctx = SuffixContext::new(t.clone());
        let z = lz_parse(&ctx, true);
        let zno = lz_parse(&ctx, false);
        let v = lex_parse(&ctx);
        let b = bwt_scheme(&ctx);
        let identity: Vec<u32> = (0..t.len() as u32).collect();
        prop_assert!(z.phrase_count() <= zno.phrase_count());
        prop_assert!(v.phrase_count() <= 2 * ctx.r());
        prop_assert!(b.len() <= 2 * ctx.r());
        for s in [&z.scheme, &zno.scheme, &v.scheme, &b] {
            prop_assert!(validate(s, &t).valid());
            prop_assert_eq!(decode(s).unwrap(), t.as_bytes());
            let io = scheme_to_order(s).unwrap();
            prop_assert!(check_ordered(s, &io));
        }
        prop_assert!(check_ordered(&z.scheme, &identity));
        prop_assert!(check_ordered(&zno.scheme, &identity));
        prop_assert!(check_ordered(&v.scheme, ctx.isa()));
        for p in zno.scheme.phrases() {
            if let Phrase::Copy { target, source, len } = *p {
                prop_assert!(source + len <= target);
            }
        }
        let last = *v.scheme.phrases().last().unwrap();
        let sentinel_explicit = matches!(last, Phrase::Explicit { symbol: 0, .. });
        prop_assert!(sentinel_explicit);
    }

    #[test]
    fn greedy_agrees_with_specialised_parses(t in text_strategy(300)) {
        let ctx = SuffixContext::new(t.clone());
        let identity: Vec<u32> = (0..t.len() as u32).collect();
        let by_isa = greedy_ordered(&ctx, ctx.isa()).unwrap();
        let by_pos = greedy_ordered(&ctx, &identity).unwrap();
        prop_assert_eq!(by_isa.shape(), lex_parse(&ctx).shape());
        prop_assert_eq!(by_pos.shape(), lz_parse(&ctx, true).shape());
        let bio = scheme_to_order(&bwt_scheme(&ctx)).unwrap();
        if let Ok(g) = greedy_ordered(&ctx, &bio) {
            prop_assert!(g.phrase_count() <= 2 * ctx.r());
        }
    }

    #[test]
    fn naive_greedy_agrees_on_small_texts(t in text_strategy(40)) {
        let ctx = SuffixContext::new(t.clone());
        let isa = ctx.isa();
        let lex = greedy_naive(&t, |a, b| isa[a] < isa[b]);
        prop_assert_eq!(lex.shape(), lex_parse(&ctx).shape());
        let pos = greedy_naive(&t, |a, b| a < b);
        prop_assert_eq!(pos.shape(), lz_parse(&ctx, true).shape());
        let rev = greedy_naive(&t, |a, b| a > b);
        prop_assert!(validate(&rev.scheme, &t).valid());
    }

    #[test]
    fn ordered_parses_are_acyclic(t in text_strategy(200), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        // Any parse that is ordered under a random order must validate.
        let mut io: Vec<u32> = (0..t.len() as u32).collect();
        io.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let rank = io.clone();
        let g = greedy_naive(&t, |a, b| rank[a] < rank[b]);
        prop_assert!(check_ordered(&g.scheme, &io));
        prop_assert!(validate(&g.scheme, &t).valid());
    }

    #[test]
    fn grammar_round_trip_and_bounds(t in text_strategy(600)) {
        let (g, lens) = build_rlslp_traced(&t);
        prop_assert_eq!(g.expand().unwrap(), t.clone());
        for w in lens.windows(2) {
            prop_assert!(w[1] <= (3 * w[0]).div_ceil(4), "{:?}", lens);
        }
        let ctx = SuffixContext::new(t.clone());
        let left = grammar_to_parse(&g, None).unwrap();
        let ordered = grammar_to_parse(&g, Some(ctx.isa())).unwrap();
        prop_assert!(left.phrase_count() <= g.size() + 1);
        prop_assert!(ordered.phrase_count() <= g.size() + 1);
        prop_assert!(validate(&left.scheme, &t).valid());
        prop_assert!(validate_with_order(&ordered.scheme, &t, ctx.isa()).valid());
        prop_assert!(check_ordered(&ordered.scheme, ctx.isa()));
        prop_assert!(lz_parse(&ctx, true).phrase_count() <= g.size() + 1);
        prop_assert!(lex_parse(&ctx).phrase_count() <= g.size() + 1);
    }

    #[test]
    fn lcp_round_shrinks(seq in proptest::collection::vec(0u32..6, 2..2000)) {
        let mut sink = RuleSink::new();
        // Leaves 0..6 as terminals so the sink can resolve blocks.
        for c in 0..6u8 {
            sink.push(Rule::Terminal(c + 1));
        }
        let out = lcp_round(&seq, &mut sink);
        prop_assert!(out.len() <= (3 * seq.len()).div_ceil(4));
        let mut expanded = Vec::new();
        for &id in &out {
            expanded.extend(sink.expansion(id).unwrap());
        }
        let want: Vec<u8> = seq.iter().map(|&c| c as u8 + 1).collect();
        prop_assert_eq!(expanded, want);
    }

    #[test]
    fn collage_round_trip_and_bounds(t in text_strategy(400)) {
        let ctx = SuffixContext::new(t.clone());
        let z = lz_parse(&ctx, true);
        let c = lz_to_collage(&z, &t).unwrap();
        prop_assert_eq!(c.expand().unwrap(), t.clone());
        prop_assert!(c.size() <= 4 * z.phrase_count());
        let s = collage_to_scheme(&c, &t).unwrap();
        prop_assert!(s.len() <= c.size() + 1);
        prop_assert!(validate(&s, &t).valid());
    }

    #[test]
    fn internal_check_on_lz_collage(t in text_strategy(80)) {
        let ctx = SuffixContext::new(t.clone());
        let c = lz_to_collage(&lz_parse(&ctx, true), &t).unwrap();
        prop_assert_eq!(c.first_external().unwrap(), None);
    }
}

#[test]
fn fibonacci_words_recur_and_avoid_factors() {
    let fib = |k| fibonacci_word(k, FibVariant::Standard, DEFAULT_BUDGET).unwrap();
    let has = |hay: &[u8], pat: &[u8]| hay.windows(pat.len()).any(|w| w == pat);
    let (a, b) = (FIB_A, FIB_B);
    for k in 3..=25 {
        let w = fib(k);
        let cat: Vec<u8> = fib(k - 1)
            .raw()
            .iter()
            .chain(fib(k - 2).raw())
            .copied()
            .collect();
        assert_eq!(w.raw(), &cat[..]);
        assert_eq!(w.raw().len() as u128, fibonacci_number(k).unwrap());
        assert!(!has(w.raw(), &[b, b]));
        assert!(!has(w.raw(), &[a, a, a]));
        assert!(!has(w.raw(), &[a, b, a, b, a, b]));
        if k >= 5 {
            let prev = fib(k - 1);
            let occ: Vec<usize> = w
                .raw()
                .windows(prev.raw().len())
                .enumerate()
                .filter(|(_, x)| *x == prev.raw())
                .map(|(i, _)| i)
                .collect();
            assert_eq!(occ, vec![0], "k={k}");
        }
    }
}

#[test]
fn de_bruijn_census() {
    for sigma in 2..=4u32 {
        for k in 1..=5u32 {
            let t = de_bruijn(k, sigma, DEFAULT_BUDGET).unwrap();
            let raw = t.raw();
            assert_eq!(raw.len(), sigma.pow(k) as usize + k as usize - 1);
            let mut seen = std::collections::BTreeMap::new();
            for w in raw.windows(k as usize) {
                *seen.entry(w.to_vec()).or_insert(0) += 1;
            }
            assert_eq!(seen.len(), sigma.pow(k) as usize);
            assert!(seen.values().all(|&c| c == 1));
        }
    }
}

#[test]
fn lemma_bms_schemes_validate() {
    for k in 6..=20 {
        let t = fibonacci_word(k, FibVariant::Standard, DEFAULT_BUDGET).unwrap();
        let s = lemma_bms_scheme(k).unwrap();
        assert!(s.len() <= 5);
        assert!(validate(&s, &t).valid(), "k={k}");
        assert_eq!(decode(&s).unwrap(), t.as_bytes());
    }
    assert!(lemma_bms_scheme(5).is_err());
}
