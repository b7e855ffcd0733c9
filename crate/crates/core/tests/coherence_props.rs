use proptest::prelude::*;

use tricat_core::coherence::*;

fn word(letters: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..letters, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word::new(v.into_iter().map(|(i, neg)| if neg { Letter::neg(i) } else { Letter::pos(i) }).collect()))
}

fn positive(letters: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters, 0..=max_len).prop_map(|v| Word::new(v.into_iter().map(Letter::pos).collect()))
}

fn alphabet() -> Alphabet {
    Alphabet::parse("a,b,c,d").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normalization_keeps_coefficients(w in word(4, 8)) {
        let n = normalize_word(&w);
        prop_assert_eq!(n.coefficients(4), w.coefficients(4));
        prop_assert_eq!(normalize_word(&n), n.clone());
        let text = w.render(&alphabet());
        prop_assert_eq!(alphabet().parse_word(&text).unwrap().coefficients(4), w.coefficients(4));
    }

    #[test]
    fn terms_render_and_parse(w in word(4, 6)) {
        let t = interpret(&w);
        let al = alphabet();
        prop_assert_eq!(Term::parse(&t.render(&al), &al).unwrap(), t.clone());
        prop_assert_eq!(t.word().coefficients(4), w.coefficients(4));
    }

    #[test]
    fn lambda_tilde_reaches_the_sum(x in word(4, 4), y in word(4, 3)) {
        let lt = lambda_tilde_detailed(&x, &y).unwrap();
        prop_assert_eq!(lt.path.source(), &Term::prod(interpret(&x), interpret(&y)));
        prop_assert_eq!(lt.path.target(), &interpret(&x.concat(&y)));
        prop_assert_eq!(lt.midpoint(), &ordered_product(&x, &y));
        let replay = Path::new(lt.path.source().clone(), lt.path.moves().to_vec()).unwrap();
        prop_assert_eq!(replay.target(), lt.path.target());
        let back = lt.path.reversed().unwrap();
        prop_assert_eq!(back.target(), lt.path.source());
    }

    #[test]
    fn monoid_lambda_counts(x in positive(4, 4), y in positive(4, 4)) {
        let l = lambda_detailed(&x, &y).unwrap();
        prop_assert_eq!(l.path.count(MoveKind::SwapAdjacent), inversion_count(&x, &y).unwrap());
        prop_assert_eq!(l.corners.clone(), corner_schedule(&x, &y).unwrap());
        if !x.is_empty() && !y.is_empty() {
            prop_assert_eq!(l.step1, y.len() - 1);
        }
        if !x.is_empty() && !y.is_empty() {
            prop_assert!(l.path.is_skeletal());
        }
        let s = shuffle_of(&x, &y).unwrap();
        prop_assert_eq!(s.rights() + s.ups(), x.len() + y.len());
    }

    #[test]
    fn psi_witnesses_verify(x in positive(3, 2), y in positive(3, 1), z in positive(3, 1)) {
        prop_assume!(!x.is_empty() && !y.is_empty() && !z.is_empty());
        let w = psi_cell(&x, &y, &z).unwrap();
        w.verify().unwrap();
        prop_assert_eq!(w.top.source(), w.bottom.source());
        prop_assert_eq!(w.top.target(), w.bottom.target());
    }

    #[test]
    fn phi_witnesses_verify(x in positive(4, 2), y in positive(4, 2)) {
        prop_assume!(!x.is_empty() && !y.is_empty());
        let c = phi_cell(&x, &y).unwrap();
        c.witness.verify().unwrap();
        prop_assert!(c.substituted.is_skeletal());
        for s in &c.log {
            for r in s.replaced_by {
                prop_assert!(r.0 + r.1 < s.sizes.0 + s.sizes.1);
            }
        }
    }

    #[test]
    fn signed_phi_and_psi_verify(x in word(2, 2), y in word(2, 2), z in word(2, 1)) {
        prop_assume!(!normalize_word(&x).is_empty() || !normalize_word(&y).is_empty());
        let c = phi_tilde(&x, &y).unwrap();
        c.witness.verify().unwrap();
        let w = psi_tilde(&x, &y, &z).unwrap();
        w.verify().unwrap();
    }
}
