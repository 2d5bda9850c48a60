use std::collections::BTreeMap;

use mcskit::simgen::alphabet;
use mcskit::*;
use proptest::collection::vec;
use proptest::prelude::*;

/// `l` strings of length up to `n` over the first `sigma` generator symbols.
fn string_set(l: std::ops::RangeInclusive<usize>, n: usize, sigma: usize) -> impl Strategy<Value = StringSet> {
    let symbols = alphabet(sigma);
    vec(vec(proptest::sample::select(symbols), 0..=n), l).prop_map(|s| StringSet::from_chars(s).unwrap())
}

/// A string set plus a subsequence of its first string chosen by a mask.
fn set_and_candidate(
    l: std::ops::RangeInclusive<usize>,
    n: usize,
    sigma: usize,
) -> impl Strategy<Value = (StringSet, Vec<char>)> {
    (string_set(l, n, sigma), vec(any::<bool>(), n)).prop_map(|(set, mask)| {
        let w = set.strings()[0]
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(&c, _)| c)
            .collect();
        (set, w)
    })
}

fn brute_force_maximal(set: &StringSet, w: &[char]) -> bool {
    let symbols: std::collections::BTreeSet<char> = set.iter().flatten().copied().collect();
    (0..=w.len()).all(|k| {
        symbols.iter().all(|&c| {
            let mut v = w.to_vec();
            v.insert(k, c);
            !is_common(set, &v)
        })
    })
}

fn offset_in(a: &[char], part: &[char]) -> usize {
    (part.as_ptr() as usize - a.as_ptr() as usize) / std::mem::size_of::<char>()
}

fn classic_lcs_len(a: &[char], b: &[char]) -> usize {
    let mut row = vec![0usize; b.len() + 1];
    for &x in a {
        let mut diag = 0;
        for (j, &y) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[b.len()]
}

fn glob_matches(pattern: &str, value: &str) -> bool {
    let mut re = String::from("^(?s:");
    let mut chars = pattern.chars();
    while let Some(c) = chars.next() {
        match c {
            '*' => re.push_str(".*"),
            '\\' => re.push_str(&regex::escape(&chars.next().map(String::from).unwrap_or_default())),
            c => re.push_str(&regex::escape(&c.to_string())),
        }
    }
    re.push_str(")$");
    regex::Regex::new(&re).unwrap().is_match(value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn middle_is_the_gap_between_tight_embeddings((set, w) in set_and_candidate(1..=3, 10, 3), k in 0usize..12) {
        prop_assume!(is_common(&set, &w));
        let k = k % (w.len() + 1);
        for a in set.iter() {
            let m = middle(a, &w, k).unwrap();
            let start = offset_in(a, m);
            let end = start + m.len();
            prop_assert!(end <= a.len());
            prop_assert!(is_subsequence(&w[..k], &a[..start]));
            prop_assert!(is_subsequence(&w[k..], &a[end..]));
            if k > 0 {
                prop_assert!(!is_subsequence(&w[..k], &a[..start - 1]));
            }
            if k < w.len() {
                prop_assert!(!is_subsequence(&w[k..], &a[end + 1..]));
            }
        }
        if w.is_empty() {
            prop_assert_eq!(middle(&set.strings()[0], &[], 0).unwrap(), &set.strings()[0][..]);
        }
    }

    #[test]
    fn maximality_matches_exhaustive_insertion((set, w) in set_and_candidate(1..=3, 8, 4)) {
        prop_assume!(is_common(&set, &w));
        prop_assert_eq!(is_maximal(&set, &w), brute_force_maximal(&set, &w));
        let bp = breakpoints(&set, &w).unwrap();
        for k in 0..=w.len() {
            let insertable = ['a', 'b', 'c', 'd'].iter().any(|&c| {
                let mut v = w.clone();
                v.insert(k, c);
                is_common(&set, &v)
            });
            prop_assert_eq!(bp.contains(k), insertable, "k = {}", k);
        }
    }

    #[test]
    fn non_common_candidates_are_rejected((set, w) in set_and_candidate(2..=3, 8, 3)) {
        prop_assume!(!is_common(&set, &w));
        let rejected = matches!(breakpoints(&set, &w), Err(McsError::NotCommon { .. }));
        prop_assert!(rejected);
        prop_assert!(!is_maximal(&set, &w));
    }

    #[test]
    fn shared_character_multiplicities_are_minima(set in string_set(1..=4, 12, 4)) {
        let bag = common_chars(&set);
        let mut expected: BTreeMap<char, usize> = BTreeMap::new();
        for c in alphabet(4) {
            let m = set.iter().map(|a| a.iter().filter(|&&x| x == c).count()).min().unwrap();
            if m > 0 {
                expected.insert(c, m);
            }
        }
        prop_assert_eq!(bag.iter().collect::<BTreeMap<_, _>>(), expected);
    }

    #[test]
    fn random_mcs_is_maximal_and_keeps_the_start(
        (set, start) in set_and_candidate(1..=4, 14, 4),
        seed in any::<u64>(),
        run in 0u64..1000,
        weighted in any::<bool>(),
    ) {
        let mode = if weighted { WeightingMode::FrequencyWeighted } else { WeightingMode::Uniform };
        let spec = SeedSpec::new(seed, run);
        let start = Subsequence::from_chars(start);
        if is_common(&set, start.chars()) {
            let w = random_mcs(&set, spec, mode, Some(&start)).unwrap();
            prop_assert!(is_maximal(&set, w.chars()));
            prop_assert!(is_subsequence(start.chars(), w.chars()));
            prop_assert_eq!(&w, &random_mcs(&set, spec, mode, Some(&start)).unwrap());
        } else {
            let rejected = matches!(random_mcs(&set, spec, mode, Some(&start)), Err(McsError::NotCommon { .. }));
            prop_assert!(rejected);
        }
        let w = random_mcs(&set, spec, mode, None).unwrap();
        prop_assert!(is_maximal(&set, w.chars()));
    }

    #[test]
    fn batches_match_single_runs(set in string_set(2..=3, 10, 3), seed in any::<u64>()) {
        let batch = run_batch(&set, 40, seed, WeightingMode::Uniform, None).unwrap();
        for (i, w) in batch.iter().enumerate() {
            prop_assert_eq!(w, &random_mcs(&set, SeedSpec::new(seed, i as u64), WeightingMode::Uniform, None).unwrap());
        }
        prop_assert_eq!(run_many(&set, 40, seed, WeightingMode::Uniform), RunSummary::from_outputs(batch));
    }

    #[test]
    fn one_mcs_is_common_and_maximal(set in string_set(1..=8, 30, 5)) {
        for s in [set.clone(), set.reversed()] {
            let w = one_mcs(&s);
            prop_assert!(is_common(&s, w.chars()));
            prop_assert!(is_maximal(&s, w.chars()), "{:?} -> {}", s.to_strings(), w);
        }
    }

    #[test]
    fn common_segment_matches_brute_force(
        set in string_set(1..=4, 10, 3),
        cuts in vec((0usize..11, 0usize..11), 4),
    ) {
        let (idx_p, idx_r): (Vec<usize>, Vec<usize>) = set
            .iter()
            .zip(&cuts)
            .map(|(a, &(x, y))| {
                let (x, y) = (x.min(a.len()), y.min(a.len()));
                (x.min(y), x.max(y))
            })
            .unzip();
        let segments: Vec<&[char]> = set.iter().zip(idx_p.iter().zip(&idx_r)).map(|(a, (&p, &r))| &a[p..r]).collect();
        let expected = if segments.iter().any(|s| s.is_empty()) {
            SegmentMatch::NoCommon
        } else {
            segments
                .iter()
                .enumerate()
                .map(|(j, s)| (j, *s.last().unwrap()))
                .find(|&(_, c)| segments.iter().all(|s| s.contains(&c)))
                .map_or(SegmentMatch::NoCommon, |(string, ch)| SegmentMatch::Found { string, ch })
        };
        prop_assert_eq!(common_segment(&set, &idx_p, &idx_r), expected);
    }

    #[test]
    fn idx_before_and_after_duality(a in vec(proptest::sample::select(alphabet(3)), 0..15), c in proptest::sample::select(alphabet(3)), i in 0usize..16) {
        let i = i.min(a.len());
        let j = idx_before(&a, c, i);
        prop_assert!(j <= i);
        prop_assert!(!a[j..i].contains(&c));
        if j > 0 {
            prop_assert_eq!(a[j - 1], c);
        }
        let j = idx_after(&a, c, i);
        prop_assert!(j >= i && j <= a.len());
        prop_assert!(!a[i..j].contains(&c));
        if j < a.len() {
            prop_assert_eq!(a[j], c);
        }
    }

    #[test]
    fn lcs_is_the_longest_mcs((set, w) in set_and_candidate(1..=3, 7, 3)) {
        let lcs = lcs_dp(&set).unwrap();
        let all = enumerate_mcs(&set).unwrap();
        prop_assert!(is_common(&set, lcs.chars()));
        prop_assert_eq!(Some(lcs.len()), all.iter().map(Subsequence::len).max());
        prop_assert!(all.contains(&lcs));
        for m in &all {
            prop_assert!(is_maximal(&set, m.chars()));
        }
        // The candidate is drawn from the first string; map it onto the
        // shortest one by requiring it to be common anyway.
        if is_common(&set, &w) && is_maximal(&set, &w) {
            prop_assert!(all.contains(&Subsequence::from_chars(w)));
        }
    }

    #[test]
    fn planted_sequences_embed_everywhere(
        num_strings in 1usize..20,
        lengths in vec(0usize..8, 1..5),
        filler in 0usize..20,
        core in 1usize..10,
        extra in 0usize..10,
        seed in any::<u64>(),
    ) {
        let spec = PlantedSpec {
            num_strings,
            string_length: lengths.iter().sum::<usize>() + filler,
            planted: lengths.iter().copied().map(Planted::Random).collect(),
            core_alphabet_size: core,
            full_alphabet_size: core + extra,
            seed,
        };
        let corpus = gen_planted(&spec).unwrap();
        prop_assert_eq!(&corpus, &gen_planted(&spec).unwrap());
        for s in corpus.strings.iter() {
            prop_assert_eq!(s.len(), spec.string_length);
            for p in &corpus.planted {
                prop_assert!(is_subsequence(p.chars(), s));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn lcs_dp_matches_two_string_dp(a in vec(proptest::sample::select(alphabet(4)), 0..40), b in vec(proptest::sample::select(alphabet(4)), 0..40)) {
        let set = StringSet::from_chars(vec![a.clone(), b.clone()]).unwrap();
        let lcs = lcs_dp(&set).unwrap();
        prop_assert_eq!(lcs.len(), classic_lcs_len(&a, &b));
        prop_assert!(is_common(&set, lcs.chars()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_is_the_mcs_set(set in string_set(2..=3, 6, 3), seed in any::<u64>()) {
        let summary = run_many(&set, 3_000, seed, WeightingMode::Uniform);
        let want: Vec<String> = enumerate_mcs(&set).unwrap().iter().map(ToString::to_string).collect();
        prop_assert_eq!(summary.support().map(str::to_owned).collect::<Vec<_>>(), want);
    }

    #[test]
    fn patterns_are_sound_and_tight(
        values in vec(vec(proptest::sample::select(vec!['a', 'b', '-', '*', '\\', '1']), 0..8), 1..8),
        seed in any::<u64>(),
    ) {
        let values: Vec<String> = values.into_iter().map(|v| v.into_iter().collect()).collect();
        let pattern = extract_pattern(&values, 30, seed, WeightingMode::Uniform).unwrap();
        let rendered = pattern.render();
        let literal: Vec<char> = pattern.literal_text().chars().collect();
        for v in &values {
            prop_assert!(glob_matches(&rendered, v), "`{}` does not match `{}`", v, rendered);
            prop_assert!(pattern.matches(v));
            prop_assert!(is_subsequence(&literal, &v.chars().collect::<Vec<_>>()));
        }
        let tokens = pattern.tokens();
        for (i, t) in tokens.iter().enumerate() {
            if *t == Token::Wildcard {
                let mut fused = tokens.to_vec();
                fused.remove(i);
                let fused = ColumnPattern::new(fused).render();
                prop_assert!(values.iter().any(|v| !glob_matches(&fused, v)), "wildcard {} in `{}` is unnecessary", i, rendered);
            }
        }
        prop_assert_eq!(pattern, extract_pattern(&values, 30, seed, WeightingMode::Uniform).unwrap());
    }
}

#[test]
fn required_runs_is_the_smallest_sufficient_count() {
    for &p in &[0.9, 0.5, 1.0 / 3.0, 0.1, 0.01, 1e-4] {
        for &eps in &[0.5, 0.1, 0.01, 1e-6] {
            let t = required_runs(p, eps).unwrap();
            assert!((1.0 - p).powf(t as f64) <= eps * (1.0 + 1e-9), "p={p} eps={eps} t={t}");
            if t > 1 {
                assert!((1.0 - p).powf((t - 1) as f64) > eps, "p={p} eps={eps} t={t}");
            }
        }
    }
    for bad in [0.0, 1.0, -0.5, f64::NAN] {
        assert!(required_runs(bad, 0.1).is_err());
        assert!(required_runs(0.5, bad).is_err());
    }
}

#[test]
fn text_input_round_trips() {
    let set = StringSet::new(["ab", "", "c a"]).unwrap();
    let text: String = set.to_strings().iter().map(|s| format!("{s}\n")).collect();
    assert_eq!(StringSet::parse_lines(&text).unwrap(), set);
    assert_eq!(StringSet::parse_lines(text.trim_end_matches('\n')).unwrap(), set);
}
