mod common;

use common::*;
use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};
use wirtgraph::gauss::{
    parse_link_gauss, parse_spatial_gauss, validate_link, validate_spatial, LinkGaussCode,
    SpatialGaussCode,
};
use wirtgraph::generate::{singularizable_pairs, singularize};
use wirtgraph::quandle::{count_colorings_with, is_homogeneous, CountOptions};
use wirtgraph::wirt::{
    colored_set, embedding_certificate, is_k_colorable, seed_items, tangle_report,
    wirtinger_number, CrossingClass,
};
use wirtgraph::{Diagram, Exec, FiniteQuandle, SearchOptions, SeedItem};

fn braid() -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=4).prop_flat_map(|n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        (Just(n), prop::collection::vec(letter, 1..14))
    })
}

fn link() -> impl Strategy<Value = LinkGaussCode> {
    braid().prop_map(|(n, w)| LinkGaussCode::braid_closure(n, &w))
}

/// Theta and handcuff graphs built on braid closures.
fn graph() -> impl Strategy<Value = SpatialGaussCode> {
    (braid(), any::<usize>(), any::<usize>()).prop_filter_map("needs a knot or 2-link", |((n, w), i, j)| {
        let l = shifted(&LinkGaussCode::braid_closure(n, &w), 2);
        match l.components.len() {
            1 if !l.components[0].is_empty() => {
                let k = &l.components[0];
                Some(theta_from_knot(k, i % k.len(), j % k.len()))
            }
            2 => Some(handcuff_from_link(&l, i, j)),
            _ => None,
        }
    })
}

/// Theta-4 graphs singularized from two-component closures.
fn theta4() -> impl Strategy<Value = SpatialGaussCode> {
    (link(), any::<usize>()).prop_filter_map("needs a singularizable pair", |(l, pick)| {
        let l = shifted(&l, 2);
        let pairs = singularizable_pairs(&l, 0).ok()?;
        let p = pairs.get(pick % pairs.len().max(1))?;
        singularize(&l, p).ok()
    })
}

fn any_diagram() -> impl Strategy<Value = Diagram> {
    prop_oneof![
        link().prop_map(|l| Diagram::from_link(&l).unwrap()),
        graph().prop_map(|g| Diagram::from_spatial(&g).unwrap()),
        theta4().prop_map(|g| Diagram::from_spatial(&g).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn link_codes_round_trip(l in link()) {
        prop_assert!(validate_link(&l).ok);
        prop_assert_eq!(parse_link_gauss(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn spatial_codes_round_trip(g in graph()) {
        prop_assert!(validate_spatial(&g).ok);
        prop_assert_eq!(parse_spatial_gauss(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn flipped_sign_rejected(l in link(), pick in any::<usize>()) {
        let total: usize = l.components.iter().map(Vec::len).sum();
        prop_assume!(total > 0);
        let mut bad = l.clone();
        let mut k = pick % total;
        for c in bad.components.iter_mut() {
            if k < c.len() {
                c[k] = -c[k];
                break;
            }
            k -= c.len();
        }
        prop_assert!(!validate_link(&bad).ok);
    }

    #[test]
    fn dropped_passage_rejected(l in link(), pick in any::<usize>()) {
        let total: usize = l.components.iter().map(Vec::len).sum();
        prop_assume!(total > 0);
        let mut bad = l.clone();
        let mut k = pick % total;
        for c in bad.components.iter_mut() {
            if k < c.len() {
                c.remove(k);
                break;
            }
            k -= c.len();
        }
        prop_assert!(!validate_link(&bad).ok);
    }

    #[test]
    fn label_vertex_collision_rejected(g in graph()) {
        prop_assume!(g.crossing_count() > 0);
        let mut bad = g.clone();
        // relabel one crossing to vertex number 1
        let label = bad.edges.iter().flat_map(|e| e.passages.iter()).next().unwrap().abs();
        for e in bad.edges.iter_mut() {
            for p in e.passages.iter_mut() {
                if p.abs() == label {
                    *p = p.signum();
                }
            }
        }
        prop_assert!(!validate_spatial(&bad).ok);
    }

    #[test]
    fn colored_set_is_order_independent(d in any_diagram(), seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 1..4)) {
        let items = seed_items(&d);
        let seeds: Vec<SeedItem> = picks.iter().map(|&p| items[p % items.len()]).collect();
        let expected = colored_set(&d, &seeds);
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..5 {
            prop_assert_eq!(random_order_colored(&d, &seeds, &mut rng), expected.clone());
        }
    }

    #[test]
    fn colorability_monotone_in_k(d in any_diagram()) {
        let n = seed_items(&d).len();
        let opts = SearchOptions::sequential();
        let mut seen = false;
        for k in 1..=n.min(6) {
            let ok = is_k_colorable(&d, k, &opts).unwrap().is_some();
            prop_assert!(ok || !seen, "colorable below {} but not at it", k);
            seen |= ok;
        }
    }

    #[test]
    fn search_is_deterministic(d in any_diagram()) {
        let seq = wirtinger_number(&d, &SearchOptions::sequential()).unwrap();
        let par = wirtinger_number(&d, &SearchOptions::default()).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn bound_never_exceeds_omega(d in any_diagram()) {
        let r = wirtinger_number(&d, &SearchOptions::default()).unwrap();
        for (name, q) in builtin_quandles() {
            let c = count_colorings_with(&d, &q, &r, &CountOptions::default()).unwrap();
            prop_assert!(c.count >= q.order() as u64, "{}", name);
            prop_assert!(c.bound as usize <= r.omega, "{}: bound {} > omega {}", name, c.bound, r.omega);
        }
    }

    #[test]
    fn homogeneous_counts_divisible(d in any_diagram()) {
        let r = wirtinger_number(&d, &SearchOptions::default()).unwrap();
        for (name, q) in builtin_quandles() {
            if is_homogeneous(&q, None).unwrap().homogeneous {
                let c = count_colorings_with(&d, &q, &r, &CountOptions::default()).unwrap();
                prop_assert_eq!(c.count % q.order() as u64, 0, "{}", name);
            }
        }
    }

    #[test]
    fn counts_invariant_under_relabeling(d in any_diagram(), perm in Just((0u32..4).collect::<Vec<_>>()).prop_shuffle()) {
        let r = wirtinger_number(&d, &SearchOptions::default()).unwrap();
        let q = FiniteQuandle::alexander4();
        let base = count_colorings_with(&d, &q, &r, &CountOptions::default()).unwrap();
        for h in q.automorphisms(None).unwrap() {
            let c = count_colorings_with(&d, &q.relabel(&h), &r, &CountOptions::default()).unwrap();
            prop_assert_eq!(c, base);
        }
        // an arbitrary relabeling is an isomorphic quandle
        let c = count_colorings_with(&d, &q.relabel(&perm), &r, &CountOptions::default()).unwrap();
        prop_assert_eq!(c, base);
    }

    #[test]
    fn parallel_count_matches_sequential(d in any_diagram()) {
        let r = wirtinger_number(&d, &SearchOptions::default()).unwrap();
        let q = FiniteQuandle::dihedral(5);
        let seq = count_colorings_with(&d, &q, &r, &CountOptions { budget: None, exec: Exec::Sequential }).unwrap();
        let par = count_colorings_with(&d, &q, &r, &CountOptions { budget: None, exec: Exec::Parallel }).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn singularization_contract(l in link(), min_arc in 0usize..4) {
        prop_assume!(l.components.len() == 2);
        let pairs = singularizable_pairs(&l, min_arc).unwrap();
        let looser = singularizable_pairs(&l, 0).unwrap();
        prop_assert!(pairs.len() <= looser.len());
        let total: usize = l.components.iter().map(Vec::len).sum();
        for p in pairs {
            let g = singularize(&l, &p).unwrap();
            prop_assert!(validate_spatial(&g).ok, "{}", g);
            prop_assert_eq!(g.edges.len(), 4);
            prop_assert_eq!((g.degree(1), g.degree(2)), (4, 4));
            prop_assert!(g.edges.iter().all(|e| e.passages.len() >= min_arc));
            let out: usize = g.edges.iter().map(|e| e.passages.len()).sum();
            prop_assert_eq!(out, total - 4);
            // each surviving crossing keeps one over and one under passage
            prop_assert_eq!(g.crossing_count(), total / 2 - 2);
            prop_assert!(Diagram::from_spatial(&g).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn certificate_invariants(d in any_diagram()) {
        let r = wirtinger_number(&d, &SearchOptions::sequential()).unwrap();
        prop_assert!(r.fully_colored);
        let cert = embedding_certificate(&d, &r).unwrap();
        prop_assert_eq!(cert.upper_pods + cert.maxima, r.omega);
        prop_assert_eq!(cert.minima + cert.lower_pods, r.tau2);
        let multi: Vec<u32> = cert
            .crossing_class
            .iter()
            .filter(|(_, &c)| c == CrossingClass::MinimumMulti)
            .map(|(&l, _)| l)
            .collect();
        prop_assert_eq!(&multi, &r.multicolored_crossings);
        prop_assert_eq!(r.tau2 >= r.multicolored_crossings.len() + r.non_seed_pods(&d), true);
        let t = tangle_report(&d, &r).unwrap();
        prop_assert_eq!(t.chi, t.tau1 as i64 + t.tau2 as i64 - t.degree_sum as i64);
        prop_assert!(cert.height.iter().all(|&h| h <= 0));
    }
}
