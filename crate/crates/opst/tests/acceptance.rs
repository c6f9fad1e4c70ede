//! Acceptance gate for the crate: nine end-to-end criteria, one test per
//! criterion, each printing a `criterion N (...): PASS` / `FAIL` line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The criteria pit the indexed implementations against the deliberately
//! naive ones in [`opst::refkit`] at fixed scales, freeze known example
//! values, and bound wall-clock time and memory at scale. Seeds are fixed,
//! so every run checks the same instances.

use opst::tree::{suf_codes, validate_quasi_suffix, OpSuffixTree, Symbol};
use opst::{
    all_op_squares, code, is_op_square, is_order_isomorphic, non_extendible_squares, phi, refkit,
    shape, shape_from_code, square_length_index, CharCode, OpSquare,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

fn criterion<F>(n: usize, label: &str, body: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("criterion {n} ({label}): PASS"),
        Err(cause) => {
            println!("criterion {n} ({label}): FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn cc(lt: u32, eq: u32) -> CharCode {
    CharCode::new(lt, eq)
}

fn rand_text(rng: &mut StdRng, n: usize, alpha: i64) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(0..alpha)).collect()
}

/// Texts that historically stress suffix structures: long runs of equal
/// values, monotone ramps, short periods.
fn adversarial_texts(n: usize) -> Vec<Vec<i64>> {
    vec![
        vec![7; n],
        (0..n as i64).collect(),
        (0..n as i64).rev().collect(),
        (0..n).map(|i| (i % 2) as i64).collect(),
        (0..n).map(|i| (i % 3) as i64).collect(),
        (0..n).map(|i| if i % 3 == 2 { 1 } else { 0 }).collect(),
    ]
}

#[test]
fn criterion_1_reference_example_values() {
    criterion(1, "reference example values", || {
        let w1 = [5i64, 2, 7, 5, 1, 4, 9, 4, 5];
        let w2 = [6i64, 4, 7, 6, 3, 5, 8, 5, 6];
        let expected_code = vec![
            cc(0, 0),
            cc(0, 0),
            cc(2, 0),
            cc(1, 1),
            cc(0, 0),
            cc(2, 0),
            cc(6, 0),
            cc(2, 1),
            cc(4, 2),
        ];
        assert_eq!(code(&w1), expected_code);
        assert_eq!(code(&w2), expected_code);
        assert!(is_order_isomorphic(&w1, &w2));
        let expected_shape = vec![3, 1, 4, 3, 0, 2, 5, 2, 3];
        assert_eq!(shape(&w1), expected_shape);
        assert_eq!(shape(&w2), expected_shape);
        assert_eq!(shape_from_code(&expected_code).unwrap(), expected_shape);
        // The shape is itself a sequence with that code.
        assert_eq!(code(&expected_shape), expected_code);

        assert_eq!(phi(&[5i64, 4, 7, 5, 8, 6, 1, 5, 6], 9), cc(5, 1));

        let text = [6i64, 8, 2, 0, 7, 9, 3, 1, 4, 5];
        let first_lt: Vec<u32> = code(&text).iter().map(|c| c.lt).collect();
        assert_eq!(first_lt, vec![0, 1, 0, 0, 3, 5, 2, 1, 4, 5]);
        let t = OpSuffixTree::build(&text);
        assert_eq!(t.occurrences(&[1i64, 2, 3]), vec![4, 8]);
        assert_eq!(t.leaf_count(), 10);
    });
}

#[test]
fn criterion_2_code_characterizes_isomorphism() {
    criterion(2, "code characterizes order-isomorphism", || {
        let start = Instant::now();

        // Exhaustive: every pair of sequences over {1,2,3} up to length 6.
        let mut all: Vec<Vec<i64>> = vec![];
        for len in 1..=6usize {
            let mut stack: Vec<Vec<i64>> = vec![vec![]];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == len {
                    all.push(prefix);
                    continue;
                }
                for v in 1..=3i64 {
                    let mut next = prefix.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
        }
        let codes: Vec<_> = all.iter().map(|w| code(w)).collect();
        for i in 0..all.len() {
            for j in 0..all.len() {
                let by_code = codes[i] == codes[j];
                assert_eq!(
                    by_code,
                    refkit::naive_iso(&all[i], &all[j]),
                    "x={:?} y={:?}",
                    all[i],
                    all[j]
                );
                assert_eq!(by_code, is_order_isomorphic(&all[i], &all[j]));
            }
        }

        // Random pairs up to length 50, a third of them isomorphic by
        // construction (order-preserving value remap).
        let mut rng = StdRng::seed_from_u64(0xc0de);
        for case in 0..10_000 {
            let n = rng.random_range(1..=50);
            let alpha = [2, 4, 25, 1 << 40][rng.random_range(0..4) as usize];
            let x = rand_text(&mut rng, n, alpha);
            let y = if case % 3 == 0 {
                remap_monotone(&mut rng, &x)
            } else {
                let m = rng.random_range(1..=50);
                rand_text(&mut rng, m, alpha)
            };
            let by_def = refkit::naive_iso(&x, &y);
            assert_eq!(is_order_isomorphic(&x, &y), by_def, "x={x:?} y={y:?}");
            assert_eq!((code(&x) == code(&y)) && x.len() == y.len(), by_def);
            if case % 3 == 0 {
                assert!(by_def, "remap must preserve order: x={x:?} y={y:?}");
            }
        }

        assert!(start.elapsed() < Duration::from_secs(30), "over budget");
    });
}

/// Replaces values by their images under a random strictly increasing map,
/// preserving every comparison outcome.
fn remap_monotone(rng: &mut StdRng, x: &[i64]) -> Vec<i64> {
    let mut distinct: Vec<i64> = x.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut image = Vec::with_capacity(distinct.len());
    let mut v = rng.random_range(-1000..=1000);
    for _ in &distinct {
        image.push(v);
        v += rng.random_range(1..=9);
    }
    x.iter()
        .map(|a| image[distinct.binary_search(a).unwrap()])
        .collect()
}

#[test]
fn criterion_3_oracle_agrees_with_direct_encoding() {
    criterion(3, "oracle agrees with direct suffix encoding", || {
        let mut rng = StdRng::seed_from_u64(0x0a0e);
        for case in 0..100 {
            let n = rng.random_range(1..=64);
            let alpha = [1, 2, 5, 1 << 40][case % 4];
            let w = rand_text(&mut rng, n, alpha);
            let oracle = opst::CharacterOracle::build(&w);
            for j in 1..=n {
                for i in j..=n {
                    assert_eq!(
                        oracle.suffix_char_code(j, i),
                        phi(&w[j - 1..], i - j + 1),
                        "w={w:?} j={j} i={i}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_4_suffix_encodings_form_quasi_suffix_collection() {
    criterion(4, "suffix encodings form a quasi-suffix collection", || {
        let mut rng = StdRng::seed_from_u64(0x9a51);
        let mut texts = adversarial_texts(48);
        texts.push(vec![6, 8, 2, 0, 7, 9, 3, 1, 4, 5]);
        for _ in 0..100 {
            let n = rng.random_range(1..=64);
            let alpha = [1, 3, 1000][rng.random_range(0..3) as usize];
            texts.push(rand_text(&mut rng, n, alpha));
        }
        for w in &texts {
            let rows = suf_codes(w);
            assert!(validate_quasi_suffix(&rows), "w={w:?}");
            // Terminators close every row and appear nowhere else.
            for row in &rows {
                assert_eq!(*row.last().unwrap(), Symbol::Terminator);
                assert!(!row[..row.len() - 1].contains(&Symbol::Terminator));
            }
        }
        // And the validator is not vacuous: break each condition.
        let rows = suf_codes(&[1i64, 2, 3]);
        let mut longer_lower = rows.clone();
        longer_lower.swap(0, 1);
        assert!(!validate_quasi_suffix(&longer_lower));
        let mut prefix_violation = rows.clone();
        prefix_violation[2] = rows[0][..2].to_vec();
        assert!(!validate_quasi_suffix(&prefix_violation));
    });
}

#[test]
fn criterion_5_tree_equals_naive_compacted_trie() {
    criterion(5, "tree equals the naive compacted trie", || {
        let start = Instant::now();
        let mut rng = StdRng::seed_from_u64(0x7e11);
        let mut texts = adversarial_texts(150);
        while texts.len() < 200 {
            let n = rng.random_range(1..=200);
            let alpha = [1, 2, 4, 16, 1 << 40][rng.random_range(0..5) as usize];
            texts.push(rand_text(&mut rng, n, alpha));
        }
        for w in &texts {
            let tree = OpSuffixTree::build(w);
            let trie = refkit::naive_compacted_trie(&suf_codes(w));
            assert!(refkit::trie_matches_tree(&trie, &tree), "w={w:?}");
            assert_eq!(trie.leaf_count(), w.len());
            assert!(tree.node_count() <= 2 * w.len());
        }
        assert!(start.elapsed() < Duration::from_secs(60), "over budget");
    });
}

#[test]
fn criterion_6_matching_agrees_with_exhaustive_search() {
    criterion(6, "matching agrees with exhaustive window search", || {
        let start = Instant::now();
        let mut rng = StdRng::seed_from_u64(0x6a7c);

        for case in 0..500 {
            let n = rng.random_range(1..=300);
            let alpha = [2, 3, 8, 1 << 40][rng.random_range(0..4) as usize];
            let w = rand_text(&mut rng, n, alpha);
            let tree = OpSuffixTree::build(&w);
            let m = rng.random_range(1..=10);
            let x: Vec<i64> = if case % 2 == 0 && m <= n {
                // A window of the text: guaranteed occurrences.
                let at = rng.random_range(0..=n - m);
                w[at..at + m].to_vec()
            } else {
                rand_text(&mut rng, m, alpha)
            };
            assert_eq!(
                tree.occurrences(&x),
                refkit::naive_occurrences(&w, &x),
                "w={w:?} x={x:?}"
            );
        }

        for w in &adversarial_texts(200) {
            let tree = OpSuffixTree::build(w);
            for x in [
                vec![0i64; 7],
                (0..7i64).collect(),
                (0..7i64).rev().collect(),
                vec![0, 1, 0, 1, 0],
                vec![0, 1, 2, 0, 1, 2],
                w[..10.min(w.len())].to_vec(),
            ] {
                assert_eq!(
                    tree.occurrences(&x),
                    refkit::naive_occurrences(w, &x),
                    "w={w:?} x={x:?}"
                );
            }
        }
        assert!(start.elapsed() < Duration::from_secs(60), "over budget");
    });
}

#[test]
fn criterion_7_square_tests_match_the_definition() {
    criterion(7, "square tests match the window definition", || {
        let mut rng = StdRng::seed_from_u64(0x5417);
        let mut texts = adversarial_texts(64);
        for _ in 0..50 {
            let n = rng.random_range(2..=64);
            let alpha = [1, 2, 3, 1 << 40][rng.random_range(0..4) as usize];
            texts.push(rand_text(&mut rng, n, alpha));
        }
        for w in &texts {
            let n = w.len();
            let tree = OpSuffixTree::build(w);
            let ne: Vec<OpSquare> = non_extendible_squares(&tree);
            for k in 1..=n / 2 {
                for i in 1..=n - 2 * k + 1 {
                    // Square test <=> halves order-isomorphic.
                    let by_windows =
                        refkit::naive_iso(&w[i - 1..i - 1 + k], &w[i - 1 + k..i - 1 + 2 * k]);
                    assert_eq!(
                        is_op_square(&tree, i, k),
                        by_windows,
                        "w={w:?} i={i} k={k}"
                    );
                    // Square test <=> the suffix encodings agree on k symbols.
                    assert_eq!(tree.lca_depth(i, i + k) >= k, by_windows);
                    // Non-extendible <=> square whose one-longer halves stop
                    // being isomorphic (or hit the end of the text).
                    let non_ext = by_windows
                        && (i + 2 * k - 1 == n
                            || !refkit::naive_iso(&w[i - 1..i + k], &w[i - 1 + k..i + 2 * k]));
                    assert_eq!(
                        ne.contains(&OpSquare { start: i, half: k }),
                        non_ext,
                        "w={w:?} i={i} k={k}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_8_square_enumeration_matches_exhaustive_search() {
    criterion(8, "square enumeration matches exhaustive search", || {
        let start = Instant::now();
        let mut rng = StdRng::seed_from_u64(0x8888);
        let mut texts = adversarial_texts(150);
        while texts.len() < 200 {
            let n = rng.random_range(1..=150);
            let alpha = [1, 2, 3, 6, 1 << 40][rng.random_range(0..5) as usize];
            texts.push(rand_text(&mut rng, n, alpha));
        }
        for w in &texts {
            let tree = OpSuffixTree::build(w);
            let all = all_op_squares(&tree);
            assert_eq!(all, refkit::naive_all_op_squares(w), "w={w:?}");
            assert_eq!(
                non_extendible_squares(&tree),
                refkit::naive_non_extendible_squares(w),
                "w={w:?}"
            );
            let idx = square_length_index(&tree);
            for k in 1..=w.len() / 2 {
                assert_eq!(
                    idx.has_square_of_half(k),
                    all.iter().any(|sq| sq.half == k),
                    "w={w:?} k={k}"
                );
            }
        }
        assert!(start.elapsed() < Duration::from_secs(120), "over budget");
    });
}

#[test]
fn criterion_9_scale_and_near_linearity() {
    criterion(9, "scale, latency and near-linear oracle use", || {
        let mut rng = StdRng::seed_from_u64(0x5ca1e);
        let n = 100_000;
        let w = rand_text(&mut rng, n, 512);

        let t0 = Instant::now();
        let tree = OpSuffixTree::build(&w);
        let build = t0.elapsed();
        assert!(
            build < Duration::from_secs(30),
            "build of n={n} took {build:?}"
        );

        let estimate = estimated_resident_bytes(&tree);
        assert!(
            estimate < 1 << 30,
            "estimated index footprint {estimate} bytes exceeds 1 GiB"
        );
        if let Some(rss) = process_rss_bytes() {
            assert!(rss < 1 << 30, "process RSS {rss} bytes exceeds 1 GiB");
        }

        // Pattern queries: windows of the text, length 100. Median over a
        // batch keeps the bound robust against scheduler noise.
        let mut latencies = Vec::new();
        for _ in 0..25 {
            let at = rng.random_range(0..n - 100);
            let x = &w[at..at + 100];
            let q0 = Instant::now();
            let occ = tree.occurrences(x);
            latencies.push(q0.elapsed());
            assert!(occ.contains(&(at + 1)));
        }
        latencies.sort_unstable();
        let median = latencies[latencies.len() / 2];
        assert!(
            median < Duration::from_millis(10),
            "median query latency {median:?}"
        );

        // Near-linearity: oracle calls per text position stay flat while n
        // grows 8x.
        let mut ratios = Vec::new();
        for (i, &m) in [10_000usize, 20_000, 40_000, 80_000].iter().enumerate() {
            let mut r = StdRng::seed_from_u64(0x11ea + i as u64);
            let t = OpSuffixTree::build(&rand_text(&mut r, m, 512));
            ratios.push(t.oracle().query_count() as f64 / m as f64);
        }
        let (lo, hi) = (
            ratios.iter().cloned().fold(f64::INFINITY, f64::min),
            ratios.iter().cloned().fold(0.0, f64::max),
        );
        assert!(
            hi / lo <= 3.0,
            "oracle calls per position drift superlinearly: {ratios:?}"
        );
        println!(
            "  scale detail: build={build:?}, median_query={median:?}, \
             estimate={:.1} MiB, calls/n={ratios:?}",
            estimate as f64 / (1024.0 * 1024.0)
        );
    });
}

/// Generous accounting of the index's heap footprint from its public
/// counters: arena nodes, child-table entries, oracle bitmaps and rank
/// arrays, Euler tour and its sparse range-minimum table. Constants are
/// upper bounds per element and leave 2x for allocator slack.
fn estimated_resident_bytes(tree: &OpSuffixTree<i64>) -> usize {
    let n = tree.len();
    let nodes = tree.node_count();
    let tour = 2 * nodes - 1;
    let rmq_rows = usize::BITS as usize - tour.leading_zeros() as usize;
    let node_arena = nodes * 128;
    let child_tables = (nodes - 1) * 64;
    let oracle = n * 12 + 34 * (n / 8 + n / 16 + 64);
    let tours = tour * 4 + nodes * 8 + (n + 1) * 8;
    let rmq = tour * rmq_rows * 4;
    2 * (node_arena + child_tables + oracle + tours + rmq)
}

/// Resident set size of the current process, if the platform exposes it.
fn process_rss_bytes() -> Option<usize> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmRSS:"))?;
    let kb: usize = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}
