//! Combinatorial model of a nonsingular simple G-projective variety.
//!
//! The Picard group is free on the boundary divisors `D_1..D_r`, the cone of
//! effective curves is generated by the distinguished curves `C_1..C_r`, and
//! `D_i . C_j = delta_ij`. A curve is therefore stored by its coordinates in
//! the `C_i` basis, and a line bundle `L = sum a_i D_i` by its coefficients.

use num::bigint::BigInt;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::rational::Rational;
use crate::report::ValidationReport;

fn default_true() -> bool {
    true
}

fn default_mult() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRecord {
    pub name: String,
    #[serde(rename = "class")]
    pub class_vector: Vec<i64>,
    pub distinguished: bool,
    #[serde(default = "default_true")]
    pub through_sink: bool,
    #[serde(default = "default_mult")]
    pub mult_at_sink: i64,
}

impl CurveRecord {
    pub fn distinguished(name: impl Into<String>, rank: usize, index: usize) -> Self {
        let mut class_vector = vec![0; rank];
        class_vector[index] = 1;
        CurveRecord {
            name: name.into(),
            class_vector,
            distinguished: true,
            through_sink: true,
            mult_at_sink: 1,
        }
    }
}

/// Wire form of [`VarietyModel`]; may be invalid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyModelJson {
    pub name: String,
    pub rank: usize,
    pub divisors: Vec<String>,
    pub curves: Vec<CurveRecord>,
}

impl VarietyModelJson {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let r = self.rank;
        if r == 0 {
            report.fail("rank", "Picard rank must be positive");
        }
        if self.divisors.len() != r {
            report.fail(
                "divisors",
                format!("expected {r} divisor labels, found {}", self.divisors.len()),
            );
        }
        let mut names = std::collections::BTreeSet::new();
        for label in &self.divisors {
            if !names.insert(label.as_str()) {
                report.fail(format!("divisor {label}"), "duplicate divisor label");
            }
        }

        let mut curve_names = std::collections::BTreeSet::new();
        let mut basis_hits = vec![0usize; r];
        let mut distinguished = 0usize;
        for curve in &self.curves {
            let subject = format!("curve {}", curve.name);
            if !curve_names.insert(curve.name.as_str()) {
                report.fail(&subject, "duplicate curve name");
            }
            if curve.class_vector.len() != r {
                report.fail(
                    &subject,
                    format!(
                        "class vector has length {}, expected {r}",
                        curve.class_vector.len()
                    ),
                );
                continue;
            }
            if curve.class_vector.iter().any(|&x| x < 0) {
                report.fail(
                    &subject,
                    "class vector has a negative entry; effective curve classes are non-negative combinations of the distinguished curves",
                );
            }
            if !curve.through_sink {
                report.fail(
                    &subject,
                    "every B-stable curve of a simple G-variety passes through the sink",
                );
            }
            if curve.mult_at_sink != 1 {
                report.fail(
                    &subject,
                    format!(
                        "mult_at_sink = {}; B-stable curves are smooth at the sink in a nonsingular model",
                        curve.mult_at_sink
                    ),
                );
            }
            if curve.distinguished {
                distinguished += 1;
                let ones: Vec<usize> = curve
                    .class_vector
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, _)| i)
                    .collect();
                match ones.as_slice() {
                    [i] if curve.class_vector[*i] == 1 => basis_hits[*i] += 1,
                    _ => report.fail(
                        &subject,
                        "distinguished curve must have a standard basis vector as class",
                    ),
                }
            }
        }
        if distinguished != r {
            report.fail(
                "curves",
                format!("expected exactly {r} distinguished curves, found {distinguished}"),
            );
        }
        for (i, hits) in basis_hits.iter().enumerate() {
            if *hits != 1 && distinguished == r {
                report.fail(
                    "curves",
                    format!(
                        "basis vector e_{} is hit by {hits} distinguished curves",
                        i + 1
                    ),
                );
            }
        }
        report
    }
}

/// A validated model. Construct through [`VarietyModel::new`] or by
/// deserializing, both of which run the full validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VarietyModelJson", into = "VarietyModelJson")]
pub struct VarietyModel {
    name: String,
    rank: usize,
    divisors: Vec<String>,
    curves: Vec<CurveRecord>,
    /// distinguished[i] is the index into `curves` of C_{i+1}
    distinguished: Vec<usize>,
}

impl TryFrom<VarietyModelJson> for VarietyModel {
    type Error = Error;

    fn try_from(raw: VarietyModelJson) -> Result<Self> {
        let report = raw.validate();
        if !report.passed {
            return Err(Error::input(format!(
                "invalid variety model: {}",
                report.summary()
            )));
        }
        let mut distinguished = vec![0; raw.rank];
        for (idx, curve) in raw.curves.iter().enumerate() {
            if curve.distinguished {
                let i = curve.class_vector.iter().position(|&x| x == 1).unwrap_or(0);
                distinguished[i] = idx;
            }
        }
        Ok(VarietyModel {
            name: raw.name,
            rank: raw.rank,
            divisors: raw.divisors,
            curves: raw.curves,
            distinguished,
        })
    }
}

impl From<VarietyModel> for VarietyModelJson {
    fn from(m: VarietyModel) -> Self {
        VarietyModelJson {
            name: m.name,
            rank: m.rank,
            divisors: m.divisors,
            curves: m.curves,
        }
    }
}

impl VarietyModel {
    pub fn new(
        name: impl Into<String>,
        divisors: Vec<String>,
        curves: Vec<CurveRecord>,
    ) -> Result<Self> {
        VarietyModel::try_from(VarietyModelJson {
            name: name.into(),
            rank: divisors.len(),
            divisors,
            curves,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::input(format!("variety model: {e}")))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisor_labels(&self) -> &[String] {
        &self.divisors
    }

    pub fn curves(&self) -> &[CurveRecord] {
        &self.curves
    }

    pub fn curve(&self, name: &str) -> Option<&CurveRecord> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// The distinguished curve `C_{i+1}`.
    pub fn distinguished_curve(&self, i: usize) -> &CurveRecord {
        &self.curves[self.distinguished[i]]
    }

    /// Same model with divisor `i` renamed to position `perm[i]`, and the
    /// curve classes permuted to match.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_len(self.rank, perm.len())?;
        let mut seen = vec![false; self.rank];
        for &p in perm {
            if p >= self.rank || std::mem::replace(&mut seen[p], true) {
                return Err(Error::input("not a permutation"));
            }
        }
        let mut divisors = vec![String::new(); self.rank];
        for (i, label) in self.divisors.iter().enumerate() {
            divisors[perm[i]] = label.clone();
        }
        let curves = self
            .curves
            .iter()
            .map(|c| {
                let mut class_vector = vec![0; self.rank];
                for (i, &x) in c.class_vector.iter().enumerate() {
                    class_vector[perm[i]] = x;
                }
                CurveRecord {
                    class_vector,
                    ..c.clone()
                }
            })
            .collect();
        VarietyModel::new(self.name.clone(), divisors, curves)
    }
}

/// `L = sum a_i D_i`, stored by its coefficients `(a_1, .., a_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    pub coeffs: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivisorClass { coeffs }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[perm[i]] = a;
        }
        DivisorClass { coeffs }
    }
}

impl From<Vec<i64>> for DivisorClass {
    fn from(coeffs: Vec<i64>) -> Self {
        DivisorClass { coeffs }
    }
}

pub(crate) fn dot_i64(a: &[i64], b: &[i64]) -> BigInt {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| BigInt::from(x) * BigInt::from(y))
        .sum()
}

/// Intersection number `L . C`.
pub fn intersect(model: &VarietyModel, l: &DivisorClass, curve: &CurveRecord) -> Result<BigInt> {
    check_len(model.rank(), l.coeffs.len())?;
    check_len(model.rank(), curve.class_vector.len())?;
    Ok(dot_i64(&l.coeffs, &curve.class_vector))
}

/// First curve of the model on which `L` has negative degree, if any.
pub fn nef_obstruction<'m>(
    model: &'m VarietyModel,
    l: &DivisorClass,
) -> Result<Option<(&'m CurveRecord, BigInt)>> {
    check_len(model.rank(), l.coeffs.len())?;
    for curve in model.curves() {
        let deg = intersect(model, l, curve)?;
        if deg < BigInt::zero() {
            return Ok(Some((curve, deg)));
        }
    }
    Ok(None)
}

/// `L` is nef iff it has non-negative degree on every B-stable curve.
pub fn nef_check_linebundle(model: &VarietyModel, l: &DivisorClass) -> Result<bool> {
    Ok(nef_obstruction(model, l)?.is_none())
}

/// `L` is ample iff all of its coefficients are positive.
pub fn ample_check_linebundle(model: &VarietyModel, l: &DivisorClass) -> Result<bool> {
    check_len(model.rank(), l.coeffs.len())?;
    Ok(l.coeffs.iter().all(|&a| a >= 1))
}

pub(crate) fn require_ample(model: &VarietyModel, l: &DivisorClass) -> Result<()> {
    if !ample_check_linebundle(model, l)? {
        let (i, a) = l
            .coeffs
            .iter()
            .enumerate()
            .find(|(_, &a)| a < 1)
            .map(|(i, &a)| (i, a))
            .unwrap_or((0, 0));
        return Err(Error::refused(format!(
            "the Seshadri constant formula at the sink requires an ample line bundle, \
             but coefficient a_{} = {a} of {} is not positive",
            i + 1,
            model.divisor_labels()[i]
        )));
    }
    Ok(())
}

/// Seshadri constant of an ample `L` at the sink: `min_i a_i`.
pub fn seshadri_line(model: &VarietyModel, l: &DivisorClass) -> Result<Rational> {
    require_ample(model, l)?;
    let min = l.coeffs.iter().copied().min().unwrap_or(0);
    Ok(Rational::from_integer(min.into()))
}
