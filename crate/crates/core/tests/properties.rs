mod common;

use common::{arb_perms, arb_presentation, config, corpus, face_oracle, fixture, identity_positions};
use proptest::prelude::*;
use ribbon_genus::genus::{
    genus_upper_bound, hierarchy_check, link_genus, link_lower_bound, presentation_genus, SearchBudget,
};
use ribbon_genus::presentation::{Presentation, Word};
use ribbon_genus::ribbon::{Convention, RibbonGraph, Shuffle};

fn with_shuffle() -> impl Strategy<Value = (Presentation, Vec<Vec<usize>>)> {
    arb_presentation(3, 3, 5).prop_flat_map(|p| {
        let degrees = p.occurrence_stats().degrees.clone();
        (Just(p), arb_perms(degrees))
    })
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn euler_is_even_and_genus_is_integral(p in arb_presentation(4, 3, 6)) {
        for convention in [Convention::Aligned, Convention::Mirrored] {
            let s = RibbonGraph::canonical(&p, convention).summary().unwrap();
            prop_assert_eq!(s.euler % 2, 0);
            prop_assert_eq!(2 * s.genus as i64, 2 * s.components as i64 - s.euler);
            prop_assert_eq!(s.component_genera.iter().sum::<usize>(), s.genus);
        }
    }

    #[test]
    fn face_trace_matches_boundary_walk((p, perms) in with_shuffle()) {
        let shuffle = Shuffle::new(perms.clone()).unwrap();
        for convention in [Convention::Aligned, Convention::Mirrored] {
            let g = RibbonGraph::canonical(&p, convention);
            for (graph, positions) in [(g.clone(), identity_positions(&p)), (g.apply_shuffle(&shuffle).unwrap(), perms.clone())] {
                let s = graph.summary().unwrap();
                let o = face_oracle(&p, convention, &positions);
                prop_assert_eq!((s.faces, s.components, s.euler, s.genus), (o.faces, o.components, o.euler, o.genus));
            }
        }
    }

    #[test]
    fn cyclic_rotations_preserve_the_surface(
        (p, shifts) in arb_presentation(3, 3, 5).prop_flat_map(|p| {
            let n = p.generator_count();
            (Just(p), prop::collection::vec(0usize..8, n))
        })
    ) {
        let degrees = p.occurrence_stats().degrees.clone();
        for convention in [Convention::Aligned, Convention::Mirrored] {
            let g = RibbonGraph::canonical(&p, convention);
            let rotated = g.apply_shuffle(&Shuffle::cyclic(&degrees, &shifts)).unwrap();
            let (a, b) = (g.summary().unwrap(), rotated.summary().unwrap());
            prop_assert_eq!((a.faces, a.components, a.euler, a.genus), (b.faces, b.components, b.euler, b.genus));
        }
    }

    #[test]
    fn connectify_connects(p in arb_presentation(4, 3, 5)) {
        let q = p.connectify();
        prop_assert_eq!(q.generator_count(), p.generator_count() + 1);
        prop_assert!(RibbonGraph::canonical(&q, Convention::default()).is_connected());
    }

    #[test]
    fn exponent_reduction_is_idempotent_and_keeps_genus(p in arb_presentation(3, 3, 8)) {
        let r = p.reduce_exponents();
        prop_assert_eq!(r.reduce_exponents(), r.clone());
        prop_assert_eq!(presentation_genus(&r), presentation_genus(&p));
    }

    #[test]
    fn degree3_output_has_degree_three(p in arb_presentation(3, 3, 5)) {
        match p.degree3_normalize() {
            Ok(q) => {
                prop_assert!(q.occurrence_stats().degrees.iter().all(|&d| d == 3));
                prop_assert_eq!(presentation_genus(&q), presentation_genus(&p));
            }
            Err(_) => prop_assert!(p.occurrence_stats().degrees.contains(&0)),
        }
    }

    #[test]
    fn render_parse_round_trip(p in arb_presentation(4, 3, 6)) {
        let text = p.render();
        prop_assert_eq!(text.parse::<Presentation>().unwrap(), p);
    }

    #[test]
    fn plumbing_matches_the_two_relator_surface(
        (p1, p2) in (1usize..=3).prop_flat_map(|n| {
            let word = prop::collection::vec((0..n, any::<bool>()), 1..=4);
            (word.clone(), word, Just(n))
        }).prop_map(|(w1, w2, n)| {
            let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let word = |w: Vec<(usize, bool)>| -> Word {
                w.into_iter().map(|(g, neg)| ribbon_genus::presentation::Letter::new(g, if neg {
                    ribbon_genus::presentation::Sign::Minus } else { ribbon_genus::presentation::Sign::Plus })).collect()
            };
            (Presentation::new(names.clone(), vec![word(w1)]).unwrap(), Presentation::new(names, vec![word(w2)]).unwrap())
        })
    ) {
        let both = Presentation::new(
            p1.generators().to_vec(),
            vec![p1.relators()[0].clone(), p2.relators()[0].clone()],
        ).unwrap();
        for convention in [Convention::Aligned, Convention::Mirrored] {
            let plumbed = RibbonGraph::canonical(&p1, convention).plumb(&RibbonGraph::canonical(&p2, convention)).unwrap();
            prop_assert!(plumbed.structurally_equal(&RibbonGraph::canonical(&both, convention)));
        }
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn hierarchy_chain_holds(p in arb_presentation(2, 2, 4)) {
        let r = hierarchy_check(&p, &SearchBudget::default()).unwrap();
        prop_assert!(r.chain_checked);
        prop_assert!(r.link_genus.upper <= r.shuffle_min.genus);
        prop_assert!(r.shuffle_min.genus <= r.t_genus);
    }

    #[test]
    fn link_lower_bound_is_a_lower_bound(p in arb_presentation(2, 2, 4)) {
        let g = RibbonGraph::canonical(&p, Convention::default()).link_graph();
        let l = link_genus(&g, &SearchBudget::default());
        prop_assert!(l.exact);
        prop_assert!(link_lower_bound(&g) <= l.lower);
    }

    #[test]
    fn length_bound_holds_when_it_applies(p in arb_presentation(3, 3, 5)) {
        if let Ok(b) = genus_upper_bound(&p) {
            prop_assert!(b.admits(presentation_genus(&p)), "{} > {}", presentation_genus(&p), b);
        }
    }
}

#[test]
fn exponent_reduction_on_the_corpus() {
    for (name, p) in corpus() {
        let r = p.reduce_exponents();
        assert_eq!(r.reduce_exponents(), r, "{name}");
        assert_eq!(presentation_genus(&r), presentation_genus(&p), "{name}");
    }
}

#[test]
fn degree3_on_the_named_fixtures() {
    for name in ["bs23", "z6", "utilities"] {
        let p = fixture(name);
        let q = p.degree3_normalize().unwrap();
        assert!(q.occurrence_stats().degrees.iter().all(|&d| d == 3), "{name}");
        assert_eq!(presentation_genus(&q), presentation_genus(&p), "{name}");
    }
}

#[test]
fn corpus_round_trips() {
    for (name, p) in corpus() {
        assert_eq!(p.render().parse::<Presentation>().unwrap(), p, "{name}");
    }
    assert!(corpus().len() >= 20);
}
