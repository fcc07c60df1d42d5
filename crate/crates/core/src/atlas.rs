//! Tabular exports of ideals and fully commutative elements.

use serde::{Deserialize, Serialize};

use crate::affine::{is_fc_affine, AffineRootRecord};
use crate::error::Result;
use crate::ideals::enumerate_ideals;
use crate::roots::RootSystem;
use crate::rootset::PosRootSet;
use crate::spherical::Context;
use crate::weyl::{self, enumerate_weyl};

fn coords(rs: &RootSystem, psi: PosRootSet) -> Vec<Vec<i32>> {
    psi.iter().map(|r| rs.coords(r).to_vec()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRecord {
    pub generators: Vec<Vec<i32>>,
    pub members: Vec<Vec<i32>>,
    pub layers: Vec<Vec<Vec<i32>>>,
    pub psi_hat: Vec<AffineRootRecord>,
    pub w_word: Vec<u8>,
    pub abelian: bool,
    pub spherical: bool,
    pub fc: bool,
}

/// One record per ideal, in enumeration order.
pub fn ideal_atlas(ctx: &Context<'_>) -> Vec<IdealRecord> {
    let rs = ctx.rs;
    enumerate_ideals(rs)
        .iter()
        .map(|ideal| {
            let hat = ideal.psi_hat(rs);
            IdealRecord {
                generators: ideal.generators(rs).iter().map(|&g| rs.coords(g).to_vec()).collect(),
                members: coords(rs, ideal.members()),
                layers: ideal.layers().iter().map(|&l| coords(rs, l)).collect(),
                psi_hat: hat.records(rs),
                w_word: ideal.w_of_ideal(rs).word().to_vec(),
                abelian: ideal.is_abelian(rs),
                spherical: ctx.oracle.is_spherical(ideal.members()),
                fc: is_fc_affine(rs, &hat).expect("Ψ̂ is biconvex"),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FcRecord {
    pub word: Vec<u8>,
    pub length: usize,
    pub inversions: Vec<Vec<i32>>,
    pub commutative: bool,
    pub spherical: bool,
}

/// The fully commutative elements in shortlex order of their canonical words.
pub fn fc_atlas(ctx: &Context<'_>, budget: u128) -> Result<Vec<FcRecord>> {
    let rs = ctx.rs;
    Ok(enumerate_weyl(rs, budget)?
        .iter()
        .filter(|w| weyl::is_fc_inv(rs, w.inversions()))
        .map(|w| FcRecord {
            word: w.word().to_vec(),
            length: w.length(),
            inversions: coords(rs, w.inversions()),
            commutative: weyl::is_commutative_inv(rs, w.inversions()),
            spherical: ctx.oracle.is_spherical(w.inversions()),
        })
        .collect())
}
