use serde::Serialize;

use super::series::SeriesData;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable, Subgroup};
use crate::intensity::Automorphism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusMinus {
    /// `G⁺ = {g : α(g) = g}`.
    #[serde(skip)]
    pub plus: Subgroup,
    /// `G⁻ = {g : α(g) = g⁻¹}`.
    #[serde(skip)]
    pub minus: Vec<Elem>,
    pub plus_order: usize,
    pub minus_size: usize,
    /// `∏ p^wt` over the even jumps of `G`.
    pub even_jump_product: usize,
    /// `∏ p^wt` over the odd jumps of `G`.
    pub odd_jump_product: usize,
}

impl PlusMinus {
    pub fn product_matches(&self, g: &GroupTable) -> bool {
        self.plus_order * self.minus_size == g.order()
    }

    pub fn jump_formulas_match(&self) -> bool {
        self.plus_order == self.even_jump_product && self.minus_size == self.odd_jump_product
    }
}

/// Fixed points and inverted points of an involution of an odd-order group.
pub fn plus_minus_decomposition(g: &GroupTable, s: &SeriesData, alpha: &Automorphism) -> Result<PlusMinus> {
    if g.order().is_multiple_of(2) {
        return Err(Error::Precondition("group order must be odd".into()));
    }
    if alpha.order() != 2 {
        return Err(Error::Precondition("automorphism must have order 2".into()));
    }
    let fixed: Vec<Elem> = g.elements().filter(|&x| alpha.apply(x) == x).collect();
    let gens = g.small_generating_set(&fixed);
    let plus = g.generated(&gens);
    if plus.order() != fixed.len() {
        return Err(Error::Consistency("fixed points do not form a subgroup".into()));
    }
    let minus: Vec<Elem> = g.elements().filter(|&x| alpha.apply(x) == g.inv(x)).collect();
    if plus.order() * minus.len() != g.order() {
        return Err(Error::Consistency("|G| differs from |G+| |G-|".into()));
    }
    let prof = s.jump_profile(&g.whole());
    let pw = |parity: u32| {
        prof.jumps.iter().filter(|j| j.index % 2 == parity).map(|j| (s.p as usize).pow(j.width)).product()
    };
    Ok(PlusMinus {
        plus_order: plus.order(),
        minus_size: minus.len(),
        plus,
        minus,
        even_jump_product: pw(0),
        odd_jump_product: pw(1),
    })
}
