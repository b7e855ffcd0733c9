use std::collections::HashSet;

use tricat_core::coherence::*;

fn al(s: &str) -> Alphabet {
    Alphabet::parse(s).unwrap()
}

fn w(a: &Alphabet, s: &str) -> Word {
    a.parse_word(s).unwrap()
}

#[test]
fn lambda_examples() {
    let ab = al("a,b");
    let p = lambda_path(&w(&ab, "b"), &w(&ab, "a")).unwrap();
    assert_eq!(p.render_moves(), vec!["swap_adjacent@".to_string()]);

    let abc = al("a,b,c");
    assert!(lambda_path(&w(&abc, "a+b"), &w(&abc, "c")).unwrap().is_empty());
    assert!(lambda_path(&w(&abc, "a"), &w(&abc, "-b")).is_err());
}

#[test]
fn lambda_phases_follow_the_laws() {
    let a = al("a,b,c,d,e");
    let (w1, w2) = (w(&a, "b+e"), w(&a, "a+c+d"));
    let l = lambda_detailed(&w1, &w2).unwrap();
    assert_eq!(l.step1, 2);
    assert_eq!(l.swaps(), inversion_count(&w1, &w2).unwrap());
    assert_eq!(inversion_count(&w1, &w2).unwrap(), 4);
    assert_eq!(l.corners, corner_schedule(&w1, &w2).unwrap());
    assert_eq!(l.path.target(), &interpret(&w1.concat(&w2)));
}

#[test]
fn shuffle_staircases() {
    let a = al("a,b");
    let s = shuffle_of(&w(&a, "a"), &w(&a, "b")).unwrap();
    assert_eq!(s.steps, vec![Step::Right, Step::Up]);
    assert_eq!(inversion_count(&w(&a, "a"), &w(&a, "b")).unwrap(), 0);
    let t = shuffle_of(&w(&a, "a+b"), &Word::empty()).unwrap();
    assert_eq!(t, LatticePath::concatenation(2, 0));
}

#[test]
fn lambda_tilde_examples() {
    let a = al("a,b,c");
    let lt = lambda_tilde_detailed(&w(&a, "b+c"), &w(&a, "a-b")).unwrap();
    assert_eq!(lt.midpoint().render(&a), "(((Fa*Fb)*(Fb)^-)*Fc)");
    assert_eq!(lt.path.target().render(&a), "(Fa*Fc)");
    assert_eq!(lt.blocks, 1);

    let single = lambda_tilde_detailed(&w(&a, "a"), &w(&a, "-a")).unwrap();
    assert_eq!(single.path.target(), &Term::Unit);
    assert_eq!(single.blocks, 1);

    let (x, y) = (w(&a, "a+c"), w(&a, "b"));
    assert_eq!(lambda_tilde(&x, &y).unwrap(), lambda_path(&x, &y).unwrap());
}

#[test]
fn psi_examples() {
    let a = al("a,b,c");
    let eq = psi_cell(&w(&a, "a"), &w(&a, "c"), &w(&a, "b")).unwrap();
    assert_eq!(eq.case, Case::EqualPaths);

    let si = psi_cell(&w(&a, "c"), &w(&a, "a"), &w(&a, "b")).unwrap();
    assert_eq!(si.case, Case::StrictInclusion);
    assert_eq!(si.label, "a a^{-1} => id");

    // equal letters never swap, so λ_{a,a} is the identity here too
    let baa = psi_cell(&w(&a, "b"), &w(&a, "a"), &w(&a, "a")).unwrap();
    assert_eq!(baa.case, Case::StrictInclusion);

    let rev = psi_cell(&w(&a, "c"), &w(&a, "b"), &w(&a, "a")).unwrap();
    assert_eq!(rev.case, Case::Tiling);
    assert_eq!(rev.cell_count(CellKind::Dodecagon), 1);
    rev.verify().unwrap();
}

#[test]
fn phi_table() {
    let a = al("a,b");
    let ab = phi_cell(&w(&a, "a"), &w(&a, "b")).unwrap();
    assert_eq!(ab.witness.label, "id => c^2");
    let aa = phi_cell(&w(&a, "a"), &w(&a, "a")).unwrap();
    assert_eq!(aa.witness.label, "id");
    let ba = phi_cell(&w(&a, "b"), &w(&a, "a")).unwrap();
    assert_eq!(ba.witness.case, Case::EqualPaths);
}

#[test]
fn phi_sample_residuals() {
    let a = al("a,b,c,d,e");
    let cell = phi_cell(&w(&a, "b+e"), &w(&a, "a+c+d")).unwrap();
    let got: HashSet<String> = cell.residual.iter().map(|r| r.render(&a)).collect();
    let want: HashSet<String> = ["a|b", "c|b", "d|b", "a|e", "c|e", "d|e"]
        .iter()
        .map(|s| format!("c_{{({s})}}"))
        .collect();
    assert_eq!(got, want);
    assert_eq!(cell.residual.len(), 6);
    for s in &cell.log {
        for r in s.replaced_by {
            assert!(r.0 + r.1 < s.sizes.0 + s.sizes.1);
        }
    }
    assert!(cell.substituted.is_skeletal());
    cell.witness.verify().unwrap();
}

#[test]
fn phi_tilde_cancels() {
    let a = al("a");
    let c = phi_tilde(&w(&a, "a"), &w(&a, "-a")).unwrap();
    assert_eq!(c.witness.top.target(), &Term::Unit);
    assert_eq!(c.witness.bottom.target(), &Term::Unit);
    assert_eq!(c.witness.segments.len(), 2);
}

#[test]
fn psi_sweep_small() {
    let a = al("a,b,c");
    let mut words = Vec::new();
    for i in 0..3 {
        words.push(Word::new(vec![Letter::pos(i)]));
        for j in i..3 {
            words.push(Word::new(vec![Letter::pos(i), Letter::pos(j)]));
        }
    }
    let mut n = 0;
    for x in &words {
        for y in &words {
            for z in &words {
                if x.len() + y.len() + z.len() > 4 {
                    continue;
                }
                let wt = psi_cell(x, y, z).unwrap_or_else(|e| panic!("{} {} {}: {e}", x.render(&a), y.render(&a), z.render(&a)));
                wt.verify().unwrap();
                let l23 = lambda_path(y, z).unwrap();
                let l12 = lambda_path(x, y).unwrap();
                let a1 = l23.len() == 1 && l23.count(MoveKind::SwapAdjacent) == 1 && l12.is_empty();
                let a2 = l23.is_empty();
                let want = if a1 {
                    Case::EqualPaths
                } else if a2 {
                    Case::StrictInclusion
                } else {
                    Case::Tiling
                };
                assert_eq!(wt.case, want, "{} {} {}", x.render(&a), y.render(&a), z.render(&a));
                n += 1;
            }
        }
    }
    assert_eq!(n, 189);
}

fn signed_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                if (a.abs() + b.abs() + c.abs()) as usize <= max_len {
                    out.push(Word::from_coefficients(&[a, b, c]));
                }
            }
        }
    }
    out
}

#[test]
fn lambda_tilde_sweep_ends_correctly() {
    let words = signed_words(5);
    for x in &words {
        for y in &words {
            if x.len() + y.len() > 5 {
                continue;
            }
            let lt = lambda_tilde_detailed(x, y).unwrap();
            assert_eq!(lt.path.target(), &interpret(&x.concat(y)));
            assert_eq!(lt.midpoint(), &ordered_product(x, y));
        }
    }
}

#[test]
fn psi_tilde_small_signed() {
    let words: Vec<Word> = signed_words(2).into_iter().filter(|w| !w.is_empty()).collect();
    let mut split = 0;
    for x in &words {
        for y in &words {
            for z in &words {
                if x.len() + y.len() + z.len() > 4 {
                    continue;
                }
                let wt = psi_tilde(x, y, z).unwrap();
                wt.verify().unwrap();
                if wt.split.is_some() {
                    split += 1;
                }
            }
        }
    }
    assert!(split > 0);
}

#[test]
fn phi_of_a_word_with_itself() {
    // the outer braiding is a loop when both operands agree
    let a = al("a,b");
    for s in ["a+b", "2a", "a+2b"] {
        let x = w(&a, s);
        let c = phi_cell(&x, &x).unwrap();
        c.witness.verify().unwrap();
        assert!(c.witness.cells.iter().any(|c| c.label == "c_{x,x}^2 => id"));
    }
}
