//! Equivariant vector bundles given by their splitting on invariant curves.
//!
//! Every invariant curve is a `P^1`, so the restriction of a rank `n` bundle
//! splits as `O(a_1) + .. + O(a_n)`. Nefness, ampleness and the Seshadri
//! constant at the sink are read off these degrees.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{dot_i64, VarietyModel};
use crate::rational::Rational;
use crate::report::ValidationReport;
use crate::toric::{check_cone_index, divisor_degree_on_wall, Fan, ToricDivisor};

/// Splitting degrees `a_1(C) <= .. <= a_n(C)` per curve, plus `c_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingData {
    pub rank: usize,
    pub c1: Vec<i64>,
    pub per_curve: BTreeMap<String, Vec<i64>>,
}

impl SplittingData {
    /// Builds the record with each degree list sorted ascending.
    pub fn new(rank: usize, c1: Vec<i64>, per_curve: BTreeMap<String, Vec<i64>>) -> Self {
        SplittingData {
            rank,
            c1,
            per_curve,
        }
        .canonical()
    }

    pub fn canonical(mut self) -> Self {
        for degrees in self.per_curve.values_mut() {
            degrees.sort_unstable();
        }
        self
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: SplittingData =
            serde_json::from_str(s).map_err(|e| Error::input(format!("splitting data: {e}")))?;
        Ok(raw.canonical())
    }

    /// A line bundle viewed as a rank one bundle.
    pub fn line_bundle(base: &BundleBase<'_>, c1: Vec<i64>) -> Result<Self> {
        let mut per_curve = BTreeMap::new();
        for curve in base.curves() {
            let degree = i64::try_from(base.c1_degree(&c1, &curve)?)
                .map_err(|_| Error::input("degree does not fit in 64 bits"))?;
            per_curve.insert(curve.label, vec![degree]);
        }
        Ok(SplittingData::new(1, c1, per_curve))
    }
}

#[derive(Debug, Clone)]
pub struct BaseCurve {
    pub label: String,
    kind: CurveKind,
}

#[derive(Debug, Clone)]
enum CurveKind {
    Class(Vec<i64>),
    Wall(usize),
}

/// The variety a bundle lives on, with its finite list of invariant curves.
#[derive(Debug, Clone)]
pub enum BundleBase<'a> {
    /// A simple G-variety; curves are the model's B-stable curves.
    Simple(&'a VarietyModel),
    /// A smooth complete toric variety; curves are the walls of the fan.
    Toric(&'a Fan),
}

impl<'a> BundleBase<'a> {
    pub fn curves(&self) -> Vec<BaseCurve> {
        match self {
            BundleBase::Simple(model) => model
                .curves()
                .iter()
                .map(|c| BaseCurve {
                    label: c.name.clone(),
                    kind: CurveKind::Class(c.class_vector.clone()),
                })
                .collect(),
            BundleBase::Toric(fan) => fan
                .walls()
                .iter()
                .enumerate()
                .map(|(i, w)| BaseCurve {
                    label: w.label(),
                    kind: CurveKind::Wall(i),
                })
                .collect(),
        }
    }

    fn c1_len(&self) -> usize {
        match self {
            BundleBase::Simple(model) => model.rank(),
            BundleBase::Toric(fan) => fan.rays().len(),
        }
    }

    /// `c_1 . C`.
    fn c1_degree(&self, c1: &[i64], curve: &BaseCurve) -> Result<BigInt> {
        crate::error::check_len(self.c1_len(), c1.len())?;
        match (&curve.kind, self) {
            (CurveKind::Class(class), _) => Ok(dot_i64(c1, class)),
            (CurveKind::Wall(i), BundleBase::Toric(fan)) => {
                divisor_degree_on_wall(fan, &ToricDivisor::new(c1.to_vec()), &fan.walls()[*i])
            }
            (CurveKind::Wall(_), BundleBase::Simple(_)) => {
                Err(Error::Internal("wall curve on a simple G-model".into()))
            }
        }
    }
}

/// Checks curve coverage, list lengths and `sum_j a_j(C) = c_1 . C`.
pub fn validate_splitting(base: &BundleBase<'_>, s: &SplittingData) -> ValidationReport {
    let mut report = ValidationReport::new();
    if s.rank == 0 {
        report.fail("rank", "bundle rank must be positive");
    }
    if s.c1.len() != base.c1_len() {
        report.fail(
            "c1",
            format!("has length {}, expected {}", s.c1.len(), base.c1_len()),
        );
        return report;
    }
    let curves = base.curves();
    for curve in &curves {
        let subject = format!("curve {}", curve.label);
        let Some(degrees) = s.per_curve.get(&curve.label) else {
            report.fail(&subject, "no splitting degrees given");
            continue;
        };
        if degrees.len() != s.rank {
            report.fail(
                &subject,
                format!(
                    "{} degrees given for a rank {} bundle",
                    degrees.len(),
                    s.rank
                ),
            );
            continue;
        }
        let total: BigInt = degrees.iter().map(|&a| BigInt::from(a)).sum();
        match base.c1_degree(&s.c1, curve) {
            Ok(expected) if expected == total => {}
            Ok(expected) => report.fail(
                &subject,
                format!("degrees sum to {total} but c1 . C = {expected}"),
            ),
            Err(e) => report.fail(&subject, e.to_string()),
        }
    }
    for label in s.per_curve.keys() {
        if !curves.iter().any(|c| &c.label == label) {
            report.fail(
                format!("curve {label}"),
                "not an invariant curve of the base",
            );
        }
    }
    report
}

fn ensure_valid(base: &BundleBase<'_>, s: &SplittingData) -> Result<()> {
    let report = validate_splitting(base, s);
    if report.passed {
        Ok(())
    } else {
        Err(Error::input(format!(
            "invalid splitting data: {}",
            report.summary()
        )))
    }
}

/// First `(curve, degree)` with a negative summand, if any.
pub fn bundle_nef_obstruction(
    base: &BundleBase<'_>,
    s: &SplittingData,
) -> Result<Option<(String, i64)>> {
    ensure_valid(base, s)?;
    Ok(s.per_curve
        .iter()
        .flat_map(|(label, degrees)| degrees.iter().map(move |&a| (label, a)))
        .find(|&(_, a)| a < 0)
        .map(|(label, a)| (label.clone(), a)))
}

/// Nef iff every summand on every invariant curve has degree `>= 0`.
pub fn nef_check_bundle(base: &BundleBase<'_>, s: &SplittingData) -> Result<bool> {
    Ok(bundle_nef_obstruction(base, s)?.is_none())
}

/// Ample iff every summand on every B-stable curve has degree `>= 1`.
/// Only available on simple G-varieties.
pub fn ample_check_bundle(base: &BundleBase<'_>, s: &SplittingData) -> Result<bool> {
    if let BundleBase::Toric(_) = base {
        return Err(Error::refused(
            "the finite ampleness criterion for bundles needs a simple G-variety; \
             on toric models only the nefness test is available",
        ));
    }
    ensure_valid(base, s)?;
    Ok(s.per_curve.values().flatten().all(|&a| a >= 1))
}

/// Seshadri constant of a nef bundle: the least splitting degree over the
/// invariant curves through the point.
///
/// On a simple G-variety every B-stable curve passes through the sink and
/// `fixed_point` must be `None`. On a toric variety `fixed_point` names the
/// maximal cone whose torus-fixed point is meant, and only its walls count.
pub fn seshadri_bundle(
    base: &BundleBase<'_>,
    s: &SplittingData,
    fixed_point: Option<usize>,
) -> Result<Rational> {
    if let Some((label, a)) = bundle_nef_obstruction(base, s)? {
        return Err(Error::refused(format!(
            "Seshadri constants are defined here for nef bundles only; \
             the restriction to {label} has a summand O({a})"
        )));
    }
    let through_point: Vec<String> = match (base, fixed_point) {
        (BundleBase::Simple(model), None) => model
            .curves()
            .iter()
            .filter(|c| c.through_sink)
            .map(|c| c.name.clone())
            .collect(),
        (BundleBase::Simple(_), Some(_)) => {
            return Err(Error::input(
                "a simple G-variety has a single sink; do not pass a fixed point",
            ))
        }
        (BundleBase::Toric(fan), Some(sigma)) => {
            check_cone_index(fan, sigma)?;
            fan.walls()
                .iter()
                .filter(|w| w.is_incident_to(sigma))
                .map(|w| w.label())
                .collect()
        }
        (BundleBase::Toric(_), None) => {
            return Err(Error::input(
                "toric bundles need a fixed point (maximal cone index)",
            ))
        }
    };
    through_point
        .iter()
        .filter_map(|label| s.per_curve.get(label))
        .flatten()
        .min()
        .map(|&a| Rational::from_integer(a.into()))
        .ok_or_else(|| Error::Internal("no invariant curve passes through the point".into()))
}
