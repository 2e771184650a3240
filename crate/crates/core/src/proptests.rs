//! Property tests across modules, each against an oracle written out here
//! rather than shared with the implementation.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::curve::{sample_curve, BoundKind, CurveOptions};
use crate::bounds::{bound_bb, ensemble_rate, entropy, g_beta, spectrum_exponent, zyablov};
use crate::gf2::{self, nullspace_basis, weight_enumerator, BitMatrix, BitVector};
use crate::graph::{BipartiteGraph, MixingQuery};
use crate::localcode::{
    constrained_qary_profile, golay23, hamming7, random_code, LocalCode, Ratio,
};
use crate::tanner::ExpanderCode;

fn matrix(rows: usize, cols: usize, seed: u64) -> BitMatrix {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..rows)
        .map(|_| BitVector::from_bits(&(0..cols).map(|_| rng.gen::<bool>()).collect::<Vec<_>>()))
        .collect();
    BitMatrix::from_rows(cols, rows).unwrap()
}

/// Every vector of length `n` as a bit mask, kept when `keep` accepts it.
fn all_vectors(n: usize, mut keep: impl FnMut(&BitVector) -> bool) -> Vec<BitVector> {
    (0u64..1 << n)
        .map(|m| BitVector::from_support(n, (0..n).filter(|&i| m >> i & 1 == 1)))
        .filter(|v| keep(v))
        .collect()
}

fn parity_ok(h: &BitMatrix, x: &BitVector) -> bool {
    (0..h.rows()).all(|r| !h.row(r).dot(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nullspace_is_annihilated_and_complete(rows in 1usize..8, cols in 1usize..12, seed in any::<u64>()) {
        let m = matrix(rows, cols, seed);
        let basis = nullspace_basis(&m);
        prop_assert_eq!(m.rank() + basis.len(), cols);
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        // The span of the basis is exactly the set of solutions.
        let solutions = all_vectors(cols, |x| parity_ok(&m, x)).len();
        prop_assert_eq!(solutions, 1usize << basis.len());
    }

    #[test]
    fn enumerator_is_permutation_invariant(n in 4usize..14, k_frac in 0.2f64..0.8, seed in any::<u64>()) {
        let k = ((n as f64 * k_frac) as usize).max(1);
        let code = random_code(n, k, seed).unwrap();
        let a = code.weight_enumerator().unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let permuted: Vec<BitVector> = code.generator().iter().map(|g| g.gather(&perm)).collect();
        prop_assert_eq!(&weight_enumerator(n, &permuted).unwrap(), &a);
        // Brute force over all words satisfying the parity checks.
        let mut oracle = vec![0u64; n + 1];
        for x in all_vectors(n, |x| parity_ok(code.parity(), x)) {
            oracle[x.weight()] += 1;
        }
        prop_assert_eq!(&oracle, &a);
        let d = (1..=n).find(|&w| a[w] > 0).unwrap();
        prop_assert_eq!(code.distance().unwrap(), d);
    }

    #[test]
    fn profile_matches_direct_scan(symbols in 2usize..6, t in 1usize..4, seed in any::<u64>()) {
        let n = symbols * t;
        let k = (n / 2).max(1);
        let code = random_code(n, k, seed).unwrap().with_symbol_size(t).unwrap();
        let profile = constrained_qary_profile(&code).unwrap();
        let mut oracle: BTreeMap<Ratio, (usize, usize)> = BTreeMap::new();
        for x in all_vectors(n, |x| !x.is_zero() && parity_ok(code.parity(), x)) {
            let nz = (0..symbols).filter(|&s| (0..t).any(|b| x.get(s * t + b))).count();
            let beta = Ratio::new(x.weight() as u64, (t * nz) as u64);
            let e = oracle.entry(beta).or_insert((usize::MAX, usize::MAX));
            e.0 = e.0.min(nz);
            e.1 = e.1.min(x.weight());
        }
        prop_assert_eq!(profile.entries.len(), oracle.len());
        let d = code.distance().unwrap();
        for (beta, e) in &profile.entries {
            prop_assert_eq!((e.min_qary, e.min_binary), oracle[beta]);
            prop_assert!(e.min_binary >= d);
        }
        if t == 1 {
            prop_assert!(profile.entries.keys().all(|b| b.is_one()));
        }
    }

    #[test]
    fn subcode_minima_dominate(symbols in 3usize..6, t in 1usize..3, drop in 1usize..3, seed in any::<u64>()) {
        let n = symbols * t;
        let code = random_code(n, (n / 2 + 1).min(n), seed).unwrap().with_symbol_size(t).unwrap();
        let keep = code.k().saturating_sub(drop).max(1);
        let sub = LocalCode::from_generator("sub", symbols, t, code.generator()[..keep].to_vec()).unwrap();
        let full = constrained_qary_profile(&code).unwrap();
        for (beta, e) in constrained_qary_profile(&sub).unwrap().entries {
            let f = full.entries[&beta];
            prop_assert!(f.min_qary <= e.min_qary && f.min_binary <= e.min_binary);
        }
    }

    #[test]
    fn tanner_codewords_satisfy_profile_identities(n in 2usize..6, seed in any::<u64>()) {
        let g = BipartiteGraph::random_regular(n, 7, seed, false).unwrap();
        let h = hamming7();
        let code = ExpanderCode::build_basic(&g, &h, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let x = code.random_codeword(&mut rng);
            if x.is_zero() {
                continue;
            }
            let p = code.codeword_profile(&x).unwrap();
            prop_assert!(p.averaging_identity_holds());
            let left_total: usize = p.s.iter().map(|&v| g.left_edges(v).filter(|&e| x.get(e)).count()).sum();
            prop_assert_eq!(left_total, x.weight());
            for e in x.ones_iter() {
                let (v, w) = g.endpoints(e);
                prop_assert!(p.s.contains(&v) && p.t_set.contains(&w));
            }
            for vp in p.left.iter().chain(&p.right) {
                prop_assert!(vp.beta_v + 1e-12 >= vp.gamma_v);
            }
        }
    }

    #[test]
    fn spectrum_dominates_binomial_exponent(r0 in 0.51f64..0.99, omega in 0.01f64..0.99) {
        let f = spectrum_exponent(r0, omega).unwrap().exponent;
        let binomial = entropy(omega) + ensemble_rate(r0) - 1.0;
        let junction = 1.0 - 2f64.powf(r0 - 1.0);
        if omega >= junction + 1e-9 {
            prop_assert!((f - binomial).abs() < 1e-9);
        } else if omega < junction - 1e-6 {
            prop_assert!(f > binomial);
        }
    }
}

#[test]
fn golay_enumerator_matches_direct_expansion() {
    let code = golay23();
    let g = code.generator();
    let mut a = vec![0u64; 24];
    for m in 0u32..1 << 12 {
        let mut x = BitVector::zeros(23);
        for (i, row) in g.iter().enumerate() {
            if m >> i & 1 == 1 {
                x.xor_assign(row);
            }
        }
        a[x.weight()] += 1;
    }
    let mut expected = vec![0u64; 24];
    for (w, c) in [
        (0, 1),
        (7, 253),
        (8, 506),
        (11, 1288),
        (12, 1288),
        (15, 506),
        (16, 253),
        (23, 1),
    ] {
        expected[w] = c;
    }
    assert_eq!(a, expected);
    assert_eq!(code.weight_enumerator().unwrap(), expected);
}

#[test]
fn fixed_local_projections_respect_local_distance() {
    let g = BipartiteGraph::random_regular(4, 7, 21, false).unwrap();
    let h = hamming7();
    let code = ExpanderCode::build_basic(&g, &h, &h).unwrap();
    let mut bad = 0;
    gf2::for_each_codeword(code.len(), code.basis(), |x| {
        for v in 0..g.n() {
            let wl = g.left_edges(v).filter(|&e| x.get(e)).count();
            let wr = g.right_edges(v).iter().filter(|&&e| x.get(e)).count();
            if (wl > 0 && wl < 3) || (wr > 0 && wr < 3) {
                bad += 1;
            }
        }
    })
    .unwrap();
    assert_eq!(bad, 0);
}

#[test]
fn atypical_fraction_shrinks_with_degree() {
    // At sigma = 1/2 the binomial expectation of the fraction decreases
    // strictly over these degrees (about 0.125, 0.039, 0.021, 0.015); at
    // other densities the integer window edges can break the trend.
    let n = 1000;
    let sigma = 0.5;
    let mut fractions = Vec::new();
    for delta in [4usize, 9, 16, 25] {
        let alpha = (delta as f64).powf(-0.25);
        let mut total = 0.0;
        for seed in 0..8u64 {
            let g = BipartiteGraph::random_regular(n, delta, 40 + seed, true).unwrap();
            let mut vertices: Vec<usize> = (0..n).collect();
            vertices.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let s = &vertices[..(sigma * n as f64) as usize];
            total += MixingQuery::new(&g, s, alpha).unwrap().atypical_fraction();
        }
        fractions.push(total / 8.0);
    }
    assert!(fractions.windows(2).all(|w| w[1] < w[0]), "{fractions:?}");
}

#[test]
fn curves_are_monotone_and_in_range() {
    let rates: Vec<f64> = (1..20).map(|i| i as f64 * 0.05).collect();
    for kind in [
        BoundKind::Gv,
        BoundKind::Zyablov,
        BoundKind::Mult,
        BoundKind::Ensemble,
        BoundKind::Bz,
    ] {
        let pts = sample_curve(kind, &rates, CurveOptions::default()).unwrap();
        for w in pts.windows(2) {
            assert!(
                w[1].delta <= w[0].delta + 1e-12,
                "{kind} not monotone at {}",
                w[1].rate
            );
        }
        assert!(
            pts.iter().all(|p| (0.0..=0.5).contains(&p.delta)),
            "{kind} out of range"
        );
    }
}

#[test]
fn bb_and_zyablov_swap_order_between_table_rows() {
    for r in [0.1, 0.2] {
        assert!(bound_bb(r).unwrap().delta < zyablov(r).unwrap().delta);
    }
    for r in [0.3, 0.5, 0.7, 0.9] {
        assert!(bound_bb(r).unwrap().delta > zyablov(r).unwrap().delta);
    }
}

#[test]
fn g_beta_has_nonnegative_second_differences() {
    for r0 in [0.3, 0.5, 0.7, 0.9] {
        let c = g_beta(r0).unwrap();
        let h = 1e-3;
        let xs: Vec<f64> = (1..999).map(|i| i as f64 * h).collect();
        for w in xs.windows(3) {
            let d2 = c.eval(w[0]) - 2.0 * c.eval(w[1]) + c.eval(w[2]);
            assert!(d2 >= -1e-9, "r0={r0} beta={}: {d2}", w[1]);
        }
    }
}
