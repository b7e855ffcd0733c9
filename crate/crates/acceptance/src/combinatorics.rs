use std::collections::BTreeSet;

use tricat_core::coherence::{
    interpret, inversion_count, lambda_detailed, lambda_path, lambda_tilde_detailed, phi_cell, psi_cell, Alphabet,
    Case, Letter, MoveKind, Path, Term, Word,
};

use crate::{ensure, Context};

type Check = Result<String, String>;

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

pub fn lambda_sweep() -> Check {
    let abc = Alphabet::parse("a,b,c").ctx("alphabet")?;
    let words = signed_words(5);
    let (mut pairs, mut monoid) = (0, 0);
    for x in &words {
        for y in &words {
            if x.len() + y.len() > 5 {
                continue;
            }
            let name = || format!("{} / {}", x.render(&abc), y.render(&abc));
            let lt = lambda_tilde_detailed(x, y).ctx("lambda tilde")?;
            let replayed = Path::new(lt.path.source().clone(), lt.path.moves().to_vec()).ctx("replay")?;
            ensure!(replayed.target() == lt.path.target(), "{}: replay disagrees", name());
            ensure!(
                lt.path.source() == &Term::prod(interpret(x), interpret(y)),
                "{}: wrong source",
                name()
            );
            ensure!(lt.path.target() == &interpret(&x.concat(y)), "{}: wrong endpoint", name());
            pairs += 1;
            if x.is_positive() && y.is_positive() {
                monoid += 1;
                let l = lambda_detailed(x, y).ctx("lambda")?;
                let swaps = l.path.count(MoveKind::SwapAdjacent);
                ensure!(swaps == inversion_count(x, y).ctx("inversions")?, "{}: {swaps} swaps", name());
                let first = &l.path.moves()[..l.step1];
                ensure!(first.iter().all(|m| m.kind == MoveKind::AssocLeft), "{}: step 1 is not reassociation", name());
                if !y.is_empty() {
                    ensure!(l.step1 == y.len() - 1, "{}: {} step-1 moves", name(), l.step1);
                }
                ensure!(lt.path == l.path, "{}: tilde differs from the monoid path", name());
            }
        }
    }
    Ok(format!("{pairs} signed pairs, {monoid} in the monoid"))
}

/// Nonempty positive words in normal form, with at most two letters.
fn short_positive_words() -> Vec<Word> {
    let mut words = Vec::new();
    for i in 0..3 {
        words.push(Word::new(vec![Letter::pos(i)]));
        for j in i..3 {
            words.push(Word::new(vec![Letter::pos(i), Letter::pos(j)]));
        }
    }
    words
}

pub fn psi_trichotomy() -> Check {
    let words = short_positive_words();
    let mut counts = [0usize; 3];
    for x in &words {
        for y in &words {
            for z in &words {
                if x.len() + y.len() + z.len() > 4 {
                    continue;
                }
                let w = psi_cell(x, y, z).ctx("psi")?;
                w.verify().ctx("witness")?;
                let l23 = lambda_path(y, z).ctx("lambda")?;
                let l12 = lambda_path(x, y).ctx("lambda")?;
                let single_swap = l23.len() == 1 && l23.count(MoveKind::SwapAdjacent) == 1;
                let want = if single_swap && l12.is_empty() {
                    Case::EqualPaths
                } else if l23.is_empty() {
                    Case::StrictInclusion
                } else {
                    Case::Tiling
                };
                ensure!(w.case == want, "triple {x:?} {y:?} {z:?}: {} instead of {}", w.case.name(), want.name());
                counts[match want {
                    Case::EqualPaths => 0,
                    Case::StrictInclusion => 1,
                    Case::Tiling => 2,
                }] += 1;
            }
        }
    }
    let total: usize = counts.iter().sum();
    Ok(format!(
        "{total} triples: {} equal, {} strict inclusion, {} tiling",
        counts[0], counts[1], counts[2]
    ))
}

pub fn phi_sample() -> Check {
    let al = Alphabet::parse("a,b,c,d,e").ctx("alphabet")?;
    let w1 = al.parse_word("b+e").ctx("word")?;
    let w2 = al.parse_word("a+c+d").ctx("word")?;
    let cell = phi_cell(&w1, &w2).ctx("phi")?;
    let got: Vec<String> = cell.residual.iter().map(|r| r.render(&al)).collect();
    let want: BTreeSet<String> = ["a|b", "c|b", "d|b", "a|e", "c|e", "d|e"]
        .iter()
        .map(|s| format!("c_{{({s})}}"))
        .collect();
    ensure!(got.len() == 6, "{} residual braidings", got.len());
    ensure!(got.iter().cloned().collect::<BTreeSet<_>>() == want, "residuals {got:?}");
    for s in &cell.log {
        for r in s.replaced_by {
            ensure!(r.0 + r.1 < s.sizes.0 + s.sizes.1, "substitution does not shrink");
        }
    }
    ensure!(cell.substituted.is_skeletal(), "substituted path keeps a braid");
    cell.witness.verify().ctx("witness")?;
    Ok(format!("residuals {}, {} substitutions", got.join(" "), cell.log.len()))
}
