//! JSON documents: a `kind` tag, a schema version and a payload.
//!
//! Decoding rebuilds every object through its checked constructor, so a
//! document that parses is also mathematically valid.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::butterflies::{make_butterfly, Butterfly};
use crate::coherence::{Alphabet, Case, Cell, CellKind, Letter, Move, MoveKind, Path, Position, Term, TwoCellWitness, Word};
use crate::complexes::{ChainMap, Complex2, Complex3, Homotopy, SecondHomotopy};
use crate::error::{Error, Result};
use crate::fractions::{Diamond, Fraction, Roof};
use crate::group::{FGAbelianGroup, GroupHom};
use crate::matrix::IntegerMatrix;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Group(FGAbelianGroup),
    Hom(GroupHom),
    Complex2(Complex2),
    Complex3(Complex3),
    ChainMap(ChainMap),
    Homotopy(Homotopy),
    SecondHomotopy(SecondHomotopy),
    Fraction(Fraction),
    Roof(Roof),
    Diamond(Diamond),
    Butterfly(Butterfly),
    Word(Alphabet, Word),
    Path(Alphabet, Path),
    Witness(Alphabet, TwoCellWitness),
    /// Free-form command output.
    Report(Value),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    kind: String,
    schema_version: String,
    payload: Value,
}

type Mat = Vec<Vec<Number>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupW {
    ambient_rank: usize,
    relations: Mat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomW {
    source: GroupW,
    target: GroupW,
    matrix: Mat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Complex3W {
    #[serde(rename = "G")]
    groups: Vec<GroupW>,
    d2: Mat,
    d1: Mat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Complex2W {
    #[serde(rename = "G")]
    groups: Vec<GroupW>,
    d: Mat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainMapW {
    source: Complex3W,
    target: Complex3W,
    f: Vec<Mat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomotopyW {
    from: ChainMapW,
    to: ChainMapW,
    s1: Mat,
    s0: Mat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecondHomotopyW {
    from: HomotopyW,
    to: HomotopyW,
    v: Mat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FractionW {
    q: ChainMapW,
    p: ChainMapW,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoofW {
    from: FractionW,
    to: FractionW,
    s: ChainMapW,
    r: ChainMapW,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiamondW {
    from: RoofW,
    to: RoofW,
    t: ChainMapW,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ButterflyW {
    source: Complex2W,
    target: Complex2W,
    #[serde(rename = "E")]
    e: GroupW,
    kappa: Mat,
    iota: Mat,
    rho: Mat,
    jmath: Mat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordW {
    alphabet: Vec<String>,
    letters: Vec<(String, i8)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveW {
    kind: String,
    position: String,
    direction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    letter: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathBody {
    source: String,
    target: String,
    moves: Vec<MoveW>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathW {
    alphabet: Vec<String>,
    source: String,
    target: String,
    moves: Vec<MoveW>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellW {
    kind: String,
    label: String,
    coefficient: i64,
    boundary: PathBody,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessBody {
    case: String,
    label: String,
    top: PathBody,
    bottom: PathBody,
    cells: Vec<CellW>,
    segments: Vec<WitnessBody>,
    split: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessW {
    alphabet: Vec<String>,
    witness: WitnessBody,
}

fn num(b: &BigInt) -> Number {
    b.to_string().parse().expect("integers are valid JSON numbers")
}

fn big(n: &Number) -> Result<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| Error::invalid(format!("matrix entry {n} is not an integer")))
}

fn enc_mat(m: &IntegerMatrix) -> Mat {
    m.to_rows().iter().map(|r| r.iter().map(num).collect()).collect()
}

fn dec_mat(rows: &Mat, cols: usize) -> Result<IntegerMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(big).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_rows(cols, rows).ok_or_else(|| Error::invalid(format!("matrix rows must have {cols} entries")))
}

fn enc_group(g: &FGAbelianGroup) -> GroupW {
    GroupW {
        ambient_rank: g.ambient_rank(),
        relations: enc_mat(g.relations()),
    }
}

fn dec_group(w: &GroupW) -> Result<FGAbelianGroup> {
    FGAbelianGroup::new(w.ambient_rank, dec_mat(&w.relations, w.ambient_rank)?)
}

fn dec_map(source: &FGAbelianGroup, target: &FGAbelianGroup, m: &Mat) -> Result<GroupHom> {
    let matrix = dec_mat(m, source.ambient_rank())?;
    if matrix.rows() != target.ambient_rank() {
        return Err(Error::invalid("hom matrix must have one row per target generator"));
    }
    GroupHom::new(source.clone(), target.clone(), matrix)
}

fn enc_hom(f: &GroupHom) -> HomW {
    HomW {
        source: enc_group(f.source()),
        target: enc_group(f.target()),
        matrix: enc_mat(f.matrix()),
    }
}

fn dec_hom(w: &HomW) -> Result<GroupHom> {
    dec_map(&dec_group(&w.source)?, &dec_group(&w.target)?, &w.matrix)
}

fn enc_c3(c: &Complex3) -> Complex3W {
    Complex3W {
        groups: vec![enc_group(c.g2()), enc_group(c.g1()), enc_group(c.g0())],
        d2: enc_mat(c.d2().matrix()),
        d1: enc_mat(c.d1().matrix()),
    }
}

fn dec_c3(w: &Complex3W) -> Result<Complex3> {
    let [g2, g1, g0] = dec_groups::<3>(&w.groups)?;
    Complex3::new(dec_map(&g2, &g1, &w.d2)?, dec_map(&g1, &g0, &w.d1)?)
}

fn dec_groups<const N: usize>(gs: &[GroupW]) -> Result<[FGAbelianGroup; N]> {
    let v = gs.iter().map(dec_group).collect::<Result<Vec<_>>>()?;
    v.try_into().map_err(|_| Error::invalid(format!("expected {N} groups in \"G\"")))
}

fn enc_c2(c: &Complex2) -> Complex2W {
    Complex2W {
        groups: vec![enc_group(c.g1()), enc_group(c.g0())],
        d: enc_mat(c.d().matrix()),
    }
}

fn dec_c2(w: &Complex2W) -> Result<Complex2> {
    let [g1, g0] = dec_groups::<2>(&w.groups)?;
    Ok(Complex2::new(dec_map(&g1, &g0, &w.d)?))
}

fn enc_cm(f: &ChainMap) -> ChainMapW {
    ChainMapW {
        source: enc_c3(f.source()),
        target: enc_c3(f.target()),
        f: vec![enc_mat(f.f2().matrix()), enc_mat(f.f1().matrix()), enc_mat(f.f0().matrix())],
    }
}

fn dec_cm(w: &ChainMapW) -> Result<ChainMap> {
    let (a, b) = (dec_c3(&w.source)?, dec_c3(&w.target)?);
    if w.f.len() != 3 {
        return Err(Error::invalid("a chain map has three components"));
    }
    ChainMap::new(
        &a,
        &b,
        dec_map(a.g2(), b.g2(), &w.f[0])?,
        dec_map(a.g1(), b.g1(), &w.f[1])?,
        dec_map(a.g0(), b.g0(), &w.f[2])?,
    )
}

fn enc_hty(h: &Homotopy) -> HomotopyW {
    HomotopyW {
        from: enc_cm(h.from_map()),
        to: enc_cm(h.to_map()),
        s1: enc_mat(h.s1().matrix()),
        s0: enc_mat(h.s0().matrix()),
    }
}

fn dec_hty(w: &HomotopyW) -> Result<Homotopy> {
    let (f, g) = (dec_cm(&w.from)?, dec_cm(&w.to)?);
    let (a, b) = (f.source().clone(), f.target().clone());
    Homotopy::new(&f, &g, dec_map(a.g1(), b.g2(), &w.s1)?, dec_map(a.g0(), b.g1(), &w.s0)?)
}

fn enc_fr(f: &Fraction) -> FractionW {
    FractionW {
        q: enc_cm(f.q()),
        p: enc_cm(f.p()),
    }
}

fn dec_fr(w: &FractionW) -> Result<Fraction> {
    Fraction::new(dec_cm(&w.q)?, dec_cm(&w.p)?)
}

fn enc_roof(h: &Roof) -> RoofW {
    RoofW {
        from: enc_fr(h.from_fraction()),
        to: enc_fr(h.to_fraction()),
        s: enc_cm(h.s()),
        r: enc_cm(h.r()),
    }
}

fn dec_roof(w: &RoofW) -> Result<Roof> {
    Roof::new(&dec_fr(&w.from)?, &dec_fr(&w.to)?, dec_cm(&w.s)?, dec_cm(&w.r)?)
}

fn alphabet_of(names: &[String]) -> Result<Alphabet> {
    Alphabet::new(names.iter().cloned())
}

fn enc_move(m: &Move, al: &Alphabet) -> MoveW {
    MoveW {
        kind: m.kind.name().to_string(),
        position: m.position.to_string(),
        direction: if m.inverse { "inverse" } else { "forward" }.to_string(),
        letter: m.letter.map(|l| al.name(l.index).to_string()),
    }
}

fn dec_move(w: &MoveW, al: &Alphabet) -> Result<Move> {
    let inverse = match w.direction.as_str() {
        "forward" => false,
        "inverse" => true,
        d => return Err(Error::invalid(format!("unknown direction {d:?}"))),
    };
    Ok(Move {
        kind: MoveKind::from_name(&w.kind)?,
        position: Position::parse(&w.position)?,
        inverse,
        letter: w.letter.as_deref().map(|n| al.index_of(n).map(Letter::pos)).transpose()?,
    })
}

fn enc_path(p: &Path, al: &Alphabet) -> PathBody {
    PathBody {
        source: p.source().render(al),
        target: p.target().render(al),
        moves: p.moves().iter().map(|m| enc_move(m, al)).collect(),
    }
}

fn dec_path(w: &PathBody, al: &Alphabet) -> Result<Path> {
    let moves = w.moves.iter().map(|m| dec_move(m, al)).collect::<Result<Vec<_>>>()?;
    Path::with_target(Term::parse(&w.source, al)?, moves, &Term::parse(&w.target, al)?)
}

fn enc_witness(w: &TwoCellWitness, al: &Alphabet) -> WitnessBody {
    WitnessBody {
        case: w.case.name().to_string(),
        label: w.label.clone(),
        top: enc_path(&w.top, al),
        bottom: enc_path(&w.bottom, al),
        cells: w
            .cells
            .iter()
            .map(|c| CellW {
                kind: c.kind.name().to_string(),
                label: c.label.clone(),
                coefficient: c.coefficient,
                boundary: enc_path(&c.boundary, al),
            })
            .collect(),
        segments: w.segments.iter().map(|s| enc_witness(s, al)).collect(),
        split: w.split.as_ref().map(|t| t.render(al)),
    }
}

fn dec_witness(w: &WitnessBody, al: &Alphabet) -> Result<TwoCellWitness> {
    let cells = w
        .cells
        .iter()
        .map(|c| {
            Ok(Cell {
                kind: CellKind::from_name(&c.kind)?,
                label: c.label.clone(),
                coefficient: c.coefficient,
                boundary: dec_path(&c.boundary, al)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let out = TwoCellWitness {
        case: Case::from_name(&w.case)?,
        label: w.label.clone(),
        top: dec_path(&w.top, al)?,
        bottom: dec_path(&w.bottom, al)?,
        cells,
        segments: w.segments.iter().map(|s| dec_witness(s, al)).collect::<Result<Vec<_>>>()?,
        split: w.split.as_deref().map(|t| Term::parse(t, al)).transpose()?,
    };
    out.verify().map_err(|e| Error::invalid(format!("witness does not verify: {e}")))?;
    Ok(out)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("wire types serialize")
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::invalid(format!("malformed payload: {e}")))
}

impl Document {
    pub const KINDS: [&'static str; 15] = [
        "group",
        "hom",
        "complex2",
        "complex3",
        "chainmap",
        "homotopy",
        "second_homotopy",
        "fraction",
        "roof",
        "diamond",
        "butterfly",
        "word",
        "path",
        "witness",
        "report",
    ];

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Hom(_) => "hom",
            Document::Complex2(_) => "complex2",
            Document::Complex3(_) => "complex3",
            Document::ChainMap(_) => "chainmap",
            Document::Homotopy(_) => "homotopy",
            Document::SecondHomotopy(_) => "second_homotopy",
            Document::Fraction(_) => "fraction",
            Document::Roof(_) => "roof",
            Document::Diamond(_) => "diamond",
            Document::Butterfly(_) => "butterfly",
            Document::Word(..) => "word",
            Document::Path(..) => "path",
            Document::Witness(..) => "witness",
            Document::Report(_) => "report",
        }
    }

    fn payload(&self) -> Value {
        match self {
            Document::Group(g) => to_value(&enc_group(g)),
            Document::Hom(f) => to_value(&enc_hom(f)),
            Document::Complex2(c) => to_value(&enc_c2(c)),
            Document::Complex3(c) => to_value(&enc_c3(c)),
            Document::ChainMap(f) => to_value(&enc_cm(f)),
            Document::Homotopy(h) => to_value(&enc_hty(h)),
            Document::SecondHomotopy(s) => to_value(&SecondHomotopyW {
                from: enc_hty(s.from_homotopy()),
                to: enc_hty(s.to_homotopy()),
                v: enc_mat(s.v().matrix()),
            }),
            Document::Fraction(f) => to_value(&enc_fr(f)),
            Document::Roof(h) => to_value(&enc_roof(h)),
            Document::Diamond(d) => to_value(&DiamondW {
                from: enc_roof(d.from_roof()),
                to: enc_roof(d.to_roof()),
                t: enc_cm(d.t()),
            }),
            Document::Butterfly(b) => to_value(&ButterflyW {
                source: enc_c2(b.source()),
                target: enc_c2(b.target()),
                e: enc_group(b.e()),
                kappa: enc_mat(b.kappa().matrix()),
                iota: enc_mat(b.iota().matrix()),
                rho: enc_mat(b.rho().matrix()),
                jmath: enc_mat(b.jmath().matrix()),
            }),
            Document::Word(al, w) => to_value(&WordW {
                alphabet: al.symbols().to_vec(),
                letters: w
                    .letters
                    .iter()
                    .map(|l| (al.name(l.index).to_string(), l.sign() as i8))
                    .collect(),
            }),
            Document::Path(al, p) => {
                let body = enc_path(p, al);
                to_value(&PathW {
                    alphabet: al.symbols().to_vec(),
                    source: body.source,
                    target: body.target,
                    moves: body.moves,
                })
            }
            Document::Witness(al, w) => to_value(&WitnessW {
                alphabet: al.symbols().to_vec(),
                witness: enc_witness(w, al),
            }),
            Document::Report(v) => v.clone(),
        }
    }

    pub fn to_value(&self) -> Value {
        to_value(&Envelope {
            kind: self.kind().to_string(),
            schema_version: SCHEMA_VERSION.to_string(),
            payload: self.payload(),
        })
    }

    /// Pretty JSON with sorted object keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Document> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::invalid(format!("not JSON: {e}")))?;
        Self::from_value(v)
    }

    pub fn from_value(v: Value) -> Result<Document> {
        let env: Envelope = from_value(v)?;
        if env.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!("unsupported schema_version {:?}", env.schema_version)));
        }
        let p = env.payload;
        Ok(match env.kind.as_str() {
            "group" => Document::Group(dec_group(&from_value(p)?)?),
            "hom" => Document::Hom(dec_hom(&from_value(p)?)?),
            "complex2" => Document::Complex2(dec_c2(&from_value(p)?)?),
            "complex3" => Document::Complex3(dec_c3(&from_value(p)?)?),
            "chainmap" => Document::ChainMap(dec_cm(&from_value(p)?)?),
            "homotopy" => Document::Homotopy(dec_hty(&from_value(p)?)?),
            "second_homotopy" => {
                let w: SecondHomotopyW = from_value(p)?;
                let (s, t) = (dec_hty(&w.from)?, dec_hty(&w.to)?);
                let (a, b) = (s.from_map().source().clone(), s.from_map().target().clone());
                Document::SecondHomotopy(SecondHomotopy::new(&s, &t, dec_map(a.g0(), b.g2(), &w.v)?)?)
            }
            "fraction" => Document::Fraction(dec_fr(&from_value(p)?)?),
            "roof" => Document::Roof(dec_roof(&from_value(p)?)?),
            "diamond" => {
                let w: DiamondW = from_value(p)?;
                Document::Diamond(Diamond::new(&dec_roof(&w.from)?, &dec_roof(&w.to)?, dec_cm(&w.t)?)?)
            }
            "butterfly" => {
                let w: ButterflyW = from_value(p)?;
                let (a, b, e) = (dec_c2(&w.source)?, dec_c2(&w.target)?, dec_group(&w.e)?);
                Document::Butterfly(make_butterfly(
                    &a,
                    &b,
                    dec_map(a.g1(), &e, &w.kappa)?,
                    dec_map(b.g1(), &e, &w.iota)?,
                    dec_map(&e, a.g0(), &w.rho)?,
                    dec_map(&e, b.g0(), &w.jmath)?,
                )?)
            }
            "word" => {
                let w: WordW = from_value(p)?;
                let al = alphabet_of(&w.alphabet)?;
                let letters = w
                    .letters
                    .iter()
                    .map(|(n, s)| {
                        let i = al.index_of(n)?;
                        match s {
                            1 => Ok(Letter::pos(i)),
                            -1 => Ok(Letter::neg(i)),
                            _ => Err(Error::invalid("letter signs are +1 or -1")),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Document::Word(al, Word::new(letters))
            }
            "path" => {
                let w: PathW = from_value(p)?;
                let al = alphabet_of(&w.alphabet)?;
                let body = PathBody {
                    source: w.source,
                    target: w.target,
                    moves: w.moves,
                };
                let path = dec_path(&body, &al)?;
                Document::Path(al, path)
            }
            "witness" => {
                let w: WitnessW = from_value(p)?;
                let al = alphabet_of(&w.alphabet)?;
                let wit = dec_witness(&w.witness, &al)?;
                Document::Witness(al, wit)
            }
            "report" => Document::Report(p),
            k => return Err(Error::invalid(format!("unknown document kind {k:?}"))),
        })
    }
}
