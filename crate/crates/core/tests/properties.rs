//! Randomized invariants of the word algebra, the pair enumeration, and
//! the bracket/cobracket. Every assertion is exact; proptest only picks
//! the inputs.

use proptest::prelude::*;

use ccurves_core::bialgebra;
use ccurves_core::linking;
use ccurves_core::sampling::WordSampler;
use ccurves_core::surface::SurfaceSymbol;
use ccurves_core::words::{CyclicWord, Letter};

fn letter(rank: usize) -> impl Strategy<Value = Letter> {
    (1..=rank, any::<bool>()).prop_map(|(i, barred)| Letter::new(i, barred))
}

fn raw_letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(rank), 1..=max_len)
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = CyclicWord> {
    raw_letters(rank, max_len)
        .prop_filter_map("word reduces to the trivial class", |ls| {
            CyclicWord::reduce(&ls).ok()
        })
}

fn symbol(idx: usize) -> SurfaceSymbol {
    match idx {
        0 => SurfaceSymbol::from_genus_boundary(1, 1).unwrap(),
        1 => SurfaceSymbol::from_genus_boundary(0, 3).unwrap(),
        _ => SurfaceSymbol::from_genus_boundary(2, 1).unwrap(),
    }
}

/// One of the three standard symbols together with `n` words over its rank.
fn symbol_and_words(
    n: usize,
    max_len: usize,
) -> impl Strategy<Value = (SurfaceSymbol, Vec<CyclicWord>)> {
    (0..3usize).prop_flat_map(move |idx| {
        let o = symbol(idx);
        let rank = o.rank();
        (Just(o), prop::collection::vec(word(rank, max_len), n))
    })
}

proptest! {
    #[test]
    fn reduction_is_rotation_invariant(ls in raw_letters(4, 12), shift in 0usize..12) {
        let shift = shift % ls.len();
        let mut rotated = ls[shift..].to_vec();
        rotated.extend_from_slice(&ls[..shift]);
        prop_assert_eq!(CyclicWord::reduce(&rotated), CyclicWord::reduce(&ls));
    }

    #[test]
    fn reversal_then_inversion_commutes_with_reduction(ls in raw_letters(4, 12)) {
        let inverted: Vec<Letter> = ls.iter().rev().map(|l| l.inverse()).collect();
        match (CyclicWord::reduce(&ls), CyclicWord::reduce(&inverted)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.inverse(), b),
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "one side reduced, the other did not: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn reduced_words_are_cyclically_reduced(w in word(4, 12)) {
        for i in 0..w.len() {
            prop_assert_ne!(w.letter_at(i + 1), w.letter_at(i).inverse());
        }
    }

    #[test]
    fn stored_rotation_is_lex_least(w in word(4, 10)) {
        let base: Vec<Letter> = (0..w.len()).map(|i| w.letter_at(i)).collect();
        for s in 1..w.len() {
            let rot: Vec<Letter> = (0..w.len()).map(|i| w.letter_at(s + i)).collect();
            prop_assert!(base <= rot);
        }
    }

    #[test]
    fn display_parse_round_trip(w in word(4, 12)) {
        let back: CyclicWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn inversion_is_an_involution(w in word(4, 12)) {
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn inversion_negates_homology(w in word(4, 12)) {
        prop_assert!((w.homology(4) + w.inverse().homology(4)).is_zero());
    }

    #[test]
    fn powers_scale_homology(w in word(4, 8), k in 1usize..=4) {
        prop_assert_eq!(w.pow(k).homology(4), w.homology(4).scaled(k as i64));
    }

    #[test]
    fn primitive_root_round_trip(w in word(4, 8), k in 1usize..=3) {
        let p = w.pow(k);
        let (root, m) = p.primitive_root();
        prop_assert!(root.is_primitive());
        prop_assert_eq!(m % k, 0, "multiplicity {} of a {}-th power", m, k);
        prop_assert_eq!(root.pow(m), p);
    }

    #[test]
    fn self_pairs_mirror_with_negated_signs((o, ws) in symbol_and_words(1, 10)) {
        let w = &ws[0];
        let pairs = linking::self_linked_pairs(w, &o);
        prop_assert!(pairs.len() <= w.len() * (w.len() - 1));
        prop_assert_eq!(pairs.len() % 2, 0);
        for pr in &pairs {
            let mirror = pairs
                .iter()
                .find(|m| m.p == pr.q && m.q == pr.p)
                .copied();
            match mirror {
                Some(m) => {
                    prop_assert_eq!(m.kind, pr.kind);
                    prop_assert_eq!(m.sign, -pr.sign);
                }
                None => prop_assert!(false, "pair {pr:?} of {w} has no mirror"),
            }
        }
    }

    #[test]
    fn cross_pair_count_is_within_bound((o, ws) in symbol_and_words(2, 10)) {
        let pairs = linking::linked_pairs(&ws[0], &ws[1], &o);
        prop_assert!(pairs.len() <= ws[0].len() * ws[1].len());
    }

    #[test]
    fn widened_windows_add_no_pairs((o, ws) in symbol_and_words(2, 8)) {
        prop_assert_eq!(
            linking::linked_pairs_slack(&ws[0], &ws[1], &o, 1),
            linking::linked_pairs(&ws[0], &ws[1], &o)
        );
    }

    #[test]
    fn bracket_is_antisymmetric((o, ws) in symbol_and_words(2, 8)) {
        let mut s = bialgebra::bracket(&ws[0], &ws[1], &o);
        s.add_sum(&bialgebra::bracket(&ws[1], &ws[0], &o));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn cobracket_is_antisymmetric((o, ws) in symbol_and_words(1, 10)) {
        let d = bialgebra::cobracket(&ws[0], &o);
        let mut s = d.clone();
        s.add_sum(&d.swapped());
        prop_assert!(s.is_zero());
    }

    #[test]
    fn bracket_terms_carry_summed_homology((o, ws) in symbol_and_words(2, 8)) {
        let h = ws[0].homology(o.rank()) + ws[1].homology(o.rank());
        for (term, _) in bialgebra::bracket(&ws[0], &ws[1], &o).iter() {
            prop_assert_eq!(term.homology(o.rank()), h.clone());
        }
    }

    #[test]
    fn splices_add_homology((o, ws) in symbol_and_words(2, 8)) {
        let h = ws[0].homology(o.rank()) + ws[1].homology(o.rank());
        for pr in linking::linked_pairs(&ws[0], &ws[1], &o) {
            let spliced = bialgebra::splice(&ws[0], &ws[1], &pr, &o).unwrap();
            prop_assert_eq!(spliced.homology(o.rank()), h.clone());
        }
    }

    #[test]
    fn cut_words_split_homology((o, ws) in symbol_and_words(1, 10)) {
        let w = &ws[0];
        let h = w.homology(o.rank());
        for pr in linking::self_linked_pairs(w, &o) {
            let (w1, w2) = bialgebra::resolve(w, &pr, &o).unwrap();
            prop_assert_eq!(w1.homology(o.rank()) + w2.homology(o.rank()), h.clone());
        }
    }

    #[test]
    fn cobracket_terms_split_homology((o, ws) in symbol_and_words(1, 10)) {
        let h = ws[0].homology(o.rank());
        for ((left, right), _) in bialgebra::cobracket(&ws[0], &o).iter() {
            prop_assert_eq!(
                left.homology(o.rank()) + right.homology(o.rank()),
                h.clone()
            );
        }
    }

    #[test]
    fn sampler_is_deterministic_and_in_bounds(seed in any::<u64>()) {
        let mut a = WordSampler::new(seed, 2, 9);
        let mut b = WordSampler::new(seed, 2, 9);
        for _ in 0..5 {
            let w = a.next_word();
            prop_assert_eq!(&w, &b.next_word());
            prop_assert!(w.len() <= 9);
            prop_assert!((0..w.len()).all(|i| w.letter_at(i).index() <= 2));
        }
    }
}
