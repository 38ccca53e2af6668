//! Integration tests for the exponent calculus: closed forms, the prefix
//! suprema against brute force, product comparisons, and the exceptional set.

use gsp_core::exponent::{
    alpha_product, exceptional_genera, exceptional_witnesses, gamma_ratio_search, gamma_simple,
    is_exceptional, mt_dimension, prefix_max, prefix_max_multi, prefix_sup_bruteforce,
    prefix_sup_bruteforce_multi, rho0, rho0_flag_oracle, rho1, verify_exponent_comparison,
    ExceptionalFamily, Factor, GammaWitness, ProductShape,
};
use gsp_core::padic::rational;
use gsp_core::rng::SplitMix64;

#[test]
fn gamma_closed_form_table_is_frozen() {
    let expected = ["1/2", "4/11", "3/11", "8/37", "5/28"];
    for (g, want) in (1u32..=5).zip(expected) {
        assert_eq!(gamma_simple(g).unwrap().to_string(), want);
    }
    assert!(gamma_simple(0).is_err());
}

#[test]
fn gamma_is_strictly_decreasing() {
    let mut prev = gamma_simple(1).unwrap();
    for g in 2..=40u32 {
        let cur = gamma_simple(g).unwrap();
        assert!(cur < prev, "γ must strictly decrease at g={g}");
        prev = cur;
    }
}

#[test]
fn search_recovers_the_closed_form_with_the_canonical_witness() {
    for g in 1..=3u32 {
        let result = gamma_ratio_search(g, 2, 3).unwrap();
        assert_eq!(result.ratio, gamma_simple(g).unwrap());
        let canonical = GammaWitness {
            levels: vec![1],
            multiplicities: vec![2 * g],
            flags: vec![(g, g)],
        };
        assert!(
            result.witnesses.contains(&canonical),
            "missing canonical maximizer at g={g}"
        );
    }
}

#[test]
fn alpha_of_a_single_factor_matches_the_closed_form() {
    for g in 1..=12u32 {
        let shape = ProductShape::simple(g).unwrap();
        assert_eq!(alpha_product(&shape).unwrap(), gamma_simple(g).unwrap());
        assert_eq!(mt_dimension(&shape), u64::from(2 * g * g + g + 1));
    }
    // A doubled elliptic factor: 2·2·1/(1 + 3) = 1.
    let doubled = ProductShape::new(vec![Factor {
        genus: 1,
        weight: 2,
    }])
    .unwrap();
    assert_eq!(alpha_product(&doubled).unwrap(), rational(1, 1));
    // Elliptic × abelian surface: the elliptic factor alone wins.
    let mixed = ProductShape::new(vec![
        Factor {
            genus: 1,
            weight: 1,
        },
        Factor {
            genus: 2,
            weight: 1,
        },
    ])
    .unwrap();
    assert_eq!(alpha_product(&mixed).unwrap(), rational(1, 2));
}

#[test]
fn exponent_comparison_holds_on_a_small_exhaustive_grid() {
    for g1 in 1..=3u32 {
        for n1 in 1..=3u32 {
            let single = ProductShape::new(vec![Factor {
                genus: g1,
                weight: n1,
            }])
            .unwrap();
            assert!(verify_exponent_comparison(&single).unwrap());
            // ρ₀ routes must agree wherever both are defined.
            assert_eq!(rho0(&single).unwrap(), rho0_flag_oracle(&single).unwrap());
            assert!(rho1(&single).unwrap() <= rho0(&single).unwrap());
            for g2 in 1..=3u32 {
                for n2 in 1..=3u32 {
                    let shape = ProductShape::new(vec![
                        Factor {
                            genus: g1,
                            weight: n1,
                        },
                        Factor {
                            genus: g2,
                            weight: n2,
                        },
                    ])
                    .unwrap();
                    assert!(
                        verify_exponent_comparison(&shape).unwrap(),
                        "comparison failed at ({g1},{n1})×({g2},{n2})"
                    );
                    assert_eq!(rho0(&shape).unwrap(), rho0_flag_oracle(&shape).unwrap());
                }
            }
        }
    }
}

#[test]
fn prefix_supremum_matches_bruteforce_on_seeded_grids() {
    let mut root = SplitMix64::new(0xab31);
    for t in 0..100u64 {
        let mut rng = root.fork(t);
        let k = 1 + rng.below(4) as usize;
        let a: Vec<u64> = (0..k).map(|_| rng.below(10)).collect();
        let b: Vec<u64> = (0..k).map(|_| 1 + rng.below(9)).collect();
        assert_eq!(
            prefix_max(&a, &b).unwrap(),
            prefix_sup_bruteforce(&a, &b, 6).unwrap(),
            "single collection diverged at trial {t}: a={a:?} b={b:?}"
        );
    }
    for t in 0..40u64 {
        let mut rng = root.fork(1_000_000 + t);
        let d = 2 + rng.below(2) as usize;
        let mut collections = Vec::with_capacity(d);
        for _ in 0..d {
            let k = 1 + rng.below(3) as usize;
            let a: Vec<u64> = (0..k).map(|_| rng.below(10)).collect();
            let b: Vec<u64> = (0..k).map(|_| 1 + rng.below(9)).collect();
            collections.push((a, b));
        }
        assert_eq!(
            prefix_max_multi(&collections).unwrap(),
            prefix_sup_bruteforce_multi(&collections, 4).unwrap(),
            "multi collection diverged at trial {t}: {collections:?}"
        );
    }
}

#[test]
fn tail_heavy_collections_need_the_joint_cut() {
    // A pair of collections whose individual prefix maxima undershoot the
    // joint supremum: both routes must settle on the same exact value.
    let collections = vec![(vec![1, 100], vec![1, 1]), (vec![1, 1], vec![1, 100])];
    let fast = prefix_max_multi(&collections).unwrap();
    let brute = prefix_sup_bruteforce_multi(&collections, 3).unwrap();
    assert_eq!(fast, brute);
    // And the joint value dominates each collection on its own.
    for (a, b) in &collections {
        assert!(prefix_max(a, b).unwrap() <= fast);
    }
}

#[test]
fn exceptional_set_is_frozen_with_witnesses() {
    assert_eq!(exceptional_genera(130), vec![4, 10, 16, 32, 64, 108, 126]);
    let witnesses = exceptional_witnesses(130);
    let find = |g: u64| -> Vec<ExceptionalFamily> {
        witnesses
            .iter()
            .find(|(genus, _)| *genus == g)
            .map(|(_, fams)| fams.clone())
            .unwrap()
    };
    assert!(find(4).contains(&ExceptionalFamily::HalvedPower { k: 3, a: 1 }));
    assert!(find(10).contains(&ExceptionalFamily::CentralBinomial { k: 3 }));
    assert!(find(32).contains(&ExceptionalFamily::HalvedPower { k: 3, a: 2 }));
    assert!(find(64).contains(&ExceptionalFamily::HalvedPower { k: 7, a: 1 }));
    assert!(find(108).contains(&ExceptionalFamily::HalvedPower { k: 3, a: 3 }));
    assert!(find(126).contains(&ExceptionalFamily::CentralBinomial { k: 5 }));
    // The membership test agrees with the enumerated list on [1, 130].
    let listed: Vec<u64> = exceptional_genera(130);
    for g in 1..=130u64 {
        assert_eq!(is_exceptional(g), listed.contains(&g), "g={g}");
    }
    // No overflow on extreme inputs.
    assert!(!is_exceptional(u64::MAX));
}
