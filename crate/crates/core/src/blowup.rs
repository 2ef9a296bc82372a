//! The blow-up of a nonsingular simple G-variety at its sink.
//!
//! Divisor coordinates are taken in the basis `(Bl*D_1, .., Bl*D_r, E)` and
//! curve coordinates in `(C~_1, .., C~_r, e)`, where `e` is a line in the
//! exceptional divisor `E` and `C~_i = Bl*C_i - e` is the strict transform of
//! the distinguished curve `C_i`. The pairing is
//!
//! ```text
//!   Bl*D_j . C~_i = delta_ij    Bl*D_j . e = 0
//!        E . C~_i = 1                E . e = -1
//! ```
//!
//! The class `Bl*L - cE` with `L = sum b_i D_i` has coordinates `(b, -c)`.

use num::{Signed, Zero};
use serde::Serialize;

use crate::cones::{dual_cone, RationalCone};
use crate::error::{check_len, Error, Result};
use crate::model::{require_ample, DivisorClass, VarietyModel};
use crate::rational::{dot, from_int, Rational};

/// Label of the blown-up point when none is given.
pub const SINK: &str = "x-";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupModel {
    #[serde(skip)]
    base: VarietyModel,
    /// Name of the blown-up point. The cone structure is the same at the
    /// sink of the variety and at the sink of any boundary divisor, so this
    /// is metadata only.
    center: String,
    divisor_basis: Vec<String>,
    curve_basis: Vec<String>,
    /// rows: divisor basis, columns: curve basis
    pairing_matrix: Vec<Vec<i64>>,
}

pub fn build_blowup(model: &VarietyModel) -> BlowupModel {
    build_blowup_at(model, SINK)
}

pub fn build_blowup_at(model: &VarietyModel, center: &str) -> BlowupModel {
    let r = model.rank();
    let mut divisor_basis: Vec<String> = model
        .divisor_labels()
        .iter()
        .map(|d| format!("Bl*{d}"))
        .collect();
    divisor_basis.push("E".into());
    let mut curve_basis: Vec<String> = (0..r)
        .map(|i| format!("{}~", model.distinguished_curve(i).name))
        .collect();
    curve_basis.push("e".into());

    let mut pairing_matrix = vec![vec![0i64; r + 1]; r + 1];
    for (j, row) in pairing_matrix.iter_mut().take(r).enumerate() {
        row[j] = 1;
    }
    for i in 0..r {
        pairing_matrix[r][i] = 1;
    }
    pairing_matrix[r][r] = -1;

    BlowupModel {
        base: model.clone(),
        center: center.to_string(),
        divisor_basis,
        curve_basis,
        pairing_matrix,
    }
}

impl BlowupModel {
    pub fn base(&self) -> &VarietyModel {
        &self.base
    }

    pub fn center(&self) -> &str {
        &self.center
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing_matrix
    }

    pub fn divisor_basis(&self) -> &[String] {
        &self.divisor_basis
    }

    pub fn curve_basis(&self) -> &[String] {
        &self.curve_basis
    }

    fn pairing_rows(&self) -> Vec<Vec<Rational>> {
        self.pairing_matrix
            .iter()
            .map(|row| row.iter().map(|&x| from_int(x)).collect())
            .collect()
    }

    fn pairing_columns(&self) -> Vec<Vec<Rational>> {
        let n = self.rank() + 1;
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| from_int(self.pairing_matrix[i][j]))
                    .collect()
            })
            .collect()
    }

    /// Intersection number of a divisor class with a curve class.
    pub fn pair(&self, divisor: &[Rational], curve: &[Rational]) -> Result<Rational> {
        let n = self.rank() + 1;
        check_len(n, divisor.len())?;
        check_len(n, curve.len())?;
        let image: Vec<Rational> = self
            .pairing_columns()
            .iter()
            .map(|c| dot(c, divisor))
            .collect();
        Ok(dot(&image, curve))
    }

    /// Coordinates of `Bl*(sum b_i D_i) - cE`.
    pub fn divisor_vector(&self, b: &[Rational], c: &Rational) -> Result<Vec<Rational>> {
        check_len(self.rank(), b.len())?;
        let mut v = b.to_vec();
        v.push(-c.clone());
        Ok(v)
    }

    /// Dual of a cone of divisor classes, in curve coordinates.
    pub fn dual_of_divisor_cone(&self, cone: &RationalCone) -> Result<RationalCone> {
        // y is in the dual iff (P^T x) . y >= 0 for every generator x
        dual_cone(&cone.map_linear(&self.pairing_columns())?)
    }

    /// Dual of a cone of curve classes, in divisor coordinates.
    pub fn dual_of_curve_cone(&self, cone: &RationalCone) -> Result<RationalCone> {
        dual_cone(&cone.map_linear(&self.pairing_rows())?)
    }

    /// The first Mori cone generator on which `Bl*L - cE` is negative.
    pub fn nef_witness(&self, b: &[Rational], c: &Rational) -> Result<Option<(String, Rational)>> {
        let v = self.divisor_vector(b, c)?;
        let mori = blowup_mori_generators(self);
        for (label, g) in self.curve_basis.iter().zip(mori.generators()) {
            let value = self.pair(&v, g)?;
            if value.is_negative() {
                return Ok(Some((label.clone(), value)));
            }
        }
        Ok(None)
    }
}

/// `Bl*D_1, .., Bl*D_r` and `sum Bl*D_i - E`.
pub fn blowup_nef_generators(bm: &BlowupModel) -> RationalCone {
    let r = bm.rank();
    let mut gens: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..=r).map(|j| (i == j) as i64).collect())
        .collect();
    let mut sum_minus_exceptional = vec![1; r];
    sum_minus_exceptional.push(-1);
    gens.push(sum_minus_exceptional);
    RationalCone::from_integers(r + 1, &gens).expect("generators are nonzero")
}

/// `C~_1, .., C~_r, e` as the standard basis of curve coordinates.
pub fn blowup_mori_generators(bm: &BlowupModel) -> RationalCone {
    RationalCone::orthant(bm.rank() + 1)
}

/// `Bl*(sum b_i D_i) - cE` is nef iff `c >= 0` and `b_j >= c` for every `j`.
pub fn is_nef_on_blowup(bm: &BlowupModel, b: &[Rational], c: &Rational) -> Result<bool> {
    check_len(bm.rank(), b.len())?;
    Ok(!c.is_negative() && b.iter().all(|bj| bj >= c))
}

/// Largest `lambda` with `Bl*L - lambda E` nef, found by intersecting the
/// half-lines cut out by each Mori cone generator.
pub fn seshadri_via_blowup(bm: &BlowupModel, l: &DivisorClass) -> Result<Rational> {
    require_ample(&bm.base, l)?;
    let base: Vec<Rational> = l.coeffs.iter().map(|&a| from_int(a)).collect();
    let pullback = bm.divisor_vector(&base, &Rational::zero())?;
    let exceptional = bm.divisor_vector(&vec![Rational::zero(); bm.rank()], &from_int(-1))?;

    // (Bl*L - lambda E) . g >= 0  <=>  lambda * (E . g) <= Bl*L . g
    let mut upper: Option<Rational> = None;
    let mut lower = Rational::zero();
    for g in blowup_mori_generators(bm).generators() {
        let lg = bm.pair(&pullback, g)?;
        let eg = bm.pair(&exceptional, g)?;
        if eg.is_positive() {
            let bound = lg / eg;
            upper = Some(match upper {
                Some(u) if u <= bound => u,
                _ => bound,
            });
        } else if eg.is_negative() {
            let bound = lg / eg;
            if bound > lower {
                lower = bound;
            }
        } else if lg.is_negative() {
            return Err(Error::Internal(
                "pullback of an ample class is not nef".into(),
            ));
        }
    }
    let sup = upper.ok_or_else(|| Error::Internal("no Mori generator bounds lambda".into()))?;
    if sup < lower || !is_nef_on_blowup(bm, &base, &sup)? {
        return Err(Error::Internal(format!(
            "supremum {sup} is not admissible for the nef cone of the blow-up"
        )));
    }
    Ok(sup)
}
