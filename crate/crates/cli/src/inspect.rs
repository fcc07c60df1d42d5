//! Drill-down for one element of `W` or one ideal.

use clap::{ArgGroup, Args};
use fcspherical::affine::{is_commutative_affine, is_fc_affine, AffineRootRecord};
use fcspherical::ideals::CombinatorialIdeal;
use fcspherical::report::SCHEMA_VERSION;
use fcspherical::spherical::{generic_height, orbit_fingerprint, spherical_report, Fingerprint, SphericalReport, SubjectKind};
use fcspherical::weyl::{self, element_from_biconvex, WeylElement};
use fcspherical::chevalley::ChevalleyAlgebra;
use fcspherical::{CartanType, Error, PosRootSet, Root, RootSystem};
use serde::Serialize;

use crate::{Failure, RunConfig};

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("subject").required(true).args(["word", "ideal_gen", "roots"])))]
pub struct Target {
    /// Reduced word such as `1,2,1`, acting right to left.
    #[arg(long)]
    pub word: Option<String>,
    /// Generator of an ideal as simple-root coefficients, e.g. `2,1`; repeatable.
    #[arg(long = "ideal-gen")]
    pub ideal_gen: Vec<String>,
    /// Explicit root set, e.g. `1,0;2,1`; must be biconvex or an ideal.
    #[arg(long)]
    pub roots: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Pairing {
    pub alpha: Vec<i32>,
    pub beta: Vec<i32>,
    pub value: i32,
}

#[derive(Debug, Serialize)]
pub struct IdealData {
    pub generators: Vec<Vec<i32>>,
    pub layers: Vec<Vec<Vec<i32>>>,
    pub psi_hat: Vec<AffineRootRecord>,
    pub w_word: Vec<u8>,
    pub abelian: bool,
}

#[derive(Debug, Serialize)]
pub struct Inspection {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub kind: SubjectKind,
    /// Canonical reduced word for elements of `W`.
    pub word: Option<Vec<u8>>,
    pub roots: Vec<Vec<i32>>,
    /// Pairs with a negative pairing `⟨α, β⟩`.
    pub negative_pairings: Vec<Pairing>,
    pub fc: bool,
    pub commutative: bool,
    /// Word-level deciders; `null` when the word cap was hit.
    pub fc_words: Option<bool>,
    pub commutative_words: Option<bool>,
    pub ideal: Option<IdealData>,
    pub height: usize,
    pub fingerprint: Fingerprint,
    pub report: SphericalReport,
}

fn parse_coords(s: &str) -> Result<Vec<i32>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i32>().map_err(|_| Failure::Usage(format!("cannot parse root {s:?}"))))
        .collect()
}

fn parse_root(rs: &RootSystem, s: &str) -> Result<Root, Failure> {
    let c = parse_coords(s)?;
    if c.len() != rs.rank() {
        return Err(Failure::Usage(format!("root {s:?} needs {} coordinates", rs.rank())));
    }
    let r = rs.root_checked(&c)?;
    if !rs.is_positive(r) {
        return Err(Error::NotNilpotentSupport.into());
    }
    Ok(r)
}

fn word_decision(r: fcspherical::Result<bool>) -> Result<Option<bool>, Failure> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::WordCapExceeded(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

enum Subject<'a> {
    Element(WeylElement<'a>),
    Ideal(CombinatorialIdeal),
}

fn subject<'a>(rs: &'a RootSystem, target: &Target) -> Result<Subject<'a>, Failure> {
    if let Some(w) = &target.word {
        let letters = w
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("cannot parse word {w:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let w = WeylElement::from_word(rs, &letters)?;
        if w.length() != letters.len() {
            return Err(Error::NotReduced(letters.iter().map(|&c| c as u8).collect()).into());
        }
        return Ok(Subject::Element(w));
    }
    if !target.ideal_gen.is_empty() {
        let gens = target.ideal_gen.iter().map(|g| parse_root(rs, g)).collect::<Result<Vec<_>, _>>()?;
        return Ok(Subject::Ideal(CombinatorialIdeal::generated_by(rs, &gens)?));
    }
    let text = target.roots.as_deref().unwrap_or_default();
    let roots = text
        .split(';')
        .filter(|x| !x.trim().is_empty())
        .map(|g| parse_root(rs, g))
        .collect::<Result<Vec<_>, _>>()?;
    let psi = PosRootSet::from_roots(rs.num_positive(), roots);
    if weyl::is_biconvex(rs, psi) {
        return Ok(Subject::Element(element_from_biconvex(rs, psi)?));
    }
    CombinatorialIdeal::from_members(rs, psi)
        .map(Subject::Ideal)
        .map_err(|_| Failure::Usage("root set is neither biconvex nor an ideal".into()))
}

pub fn inspect(config: &RunConfig, rs: &RootSystem, target: &Target) -> Result<Inspection, Failure> {
    let alg = ChevalleyAlgebra::new(rs);
    let coords = |psi: PosRootSet| -> Vec<Vec<i32>> { psi.iter().map(|r| rs.coords(r).to_vec()).collect() };
    let subject = subject(rs, target)?;
    let (kind, psi) = match &subject {
        Subject::Element(w) => (SubjectKind::Biconvex, w.inversions()),
        Subject::Ideal(i) => (SubjectKind::Ideal, i.members()),
    };
    let members: Vec<Root> = psi.iter().collect();
    let mut negative_pairings = Vec::new();
    for &a in &members {
        for &b in &members {
            if rs.pair(a, b) < 0 {
                negative_pairings.push(Pairing {
                    alpha: rs.coords(a).to_vec(),
                    beta: rs.coords(b).to_vec(),
                    value: rs.pair(a, b),
                });
            }
        }
    }
    let (word, fc, commutative, fc_words, commutative_words, ideal) = match &subject {
        Subject::Element(w) => (
            Some(w.word().to_vec()),
            weyl::is_fc_inv(rs, psi),
            weyl::is_commutative_inv(rs, psi),
            word_decision(weyl::is_fc_def(w, config.cap_words))?,
            word_decision(weyl::is_commutative_def(w, config.cap_words))?,
            None,
        ),
        Subject::Ideal(i) => {
            let hat = i.psi_hat(rs);
            let data = IdealData {
                generators: i.generators(rs).iter().map(|&g| rs.coords(g).to_vec()).collect(),
                layers: i.layers().iter().map(|&l| coords(l)).collect(),
                psi_hat: hat.records(rs),
                w_word: i.w_of_ideal(rs).word().to_vec(),
                abelian: i.is_abelian(rs),
            };
            (None, is_fc_affine(rs, &hat)?, is_commutative_affine(rs, &hat), None, None, Some(data))
        }
    };
    Ok(Inspection {
        schema_version: SCHEMA_VERSION,
        cartan_type: rs.cartan_type(),
        kind,
        word,
        roots: coords(psi),
        negative_pairings,
        fc,
        commutative,
        fc_words,
        commutative_words,
        ideal,
        height: generic_height(&alg, psi, config.trials, config.seed),
        fingerprint: orbit_fingerprint(&alg, psi, config.trials, config.seed),
        report: spherical_report(&alg, kind, psi),
    })
}
