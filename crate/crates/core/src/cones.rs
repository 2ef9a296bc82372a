//! Finitely generated rational polyhedral cones and their duals.
//!
//! Duality is computed with an exact double description pass: the dual of
//! `cone(g_1, .., g_k)` is `{y : g_i . y >= 0}`, and the inequalities are
//! intersected one at a time starting from the whole space. The running cone
//! is kept as a lineality basis plus extreme rays modulo lineality; new rays
//! are formed only from adjacent pairs, with adjacency decided by a rank test
//! on the common tight inequalities.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{check_len, Error, Result};
use crate::linalg::rank;
use crate::rational::{self, dot, primitive, Rational};

/// Default bound on the ambient dimension accepted by [`dual_cone`].
pub const DEFAULT_MAX_DIM: usize = 12;

/// The set of non-negative combinations of `generators` in `Q^ambient_dim`.
/// An empty generator list is the zero cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    ambient_dim: usize,
    generators: Vec<Vec<Rational>>,
}

impl RationalCone {
    pub fn new(ambient_dim: usize, generators: Vec<Vec<Rational>>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::input("cone ambient dimension must be positive"));
        }
        for (k, g) in generators.iter().enumerate() {
            check_len(ambient_dim, g.len())?;
            if g.iter().all(Zero::is_zero) {
                return Err(Error::input(format!("cone generator {k} is zero")));
            }
        }
        Ok(RationalCone {
            ambient_dim,
            generators,
        })
    }

    pub fn from_integers(ambient_dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        RationalCone::new(
            ambient_dim,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| rational::from_int(x)).collect())
                .collect(),
        )
    }

    /// The non-negative orthant of `Q^m`.
    pub fn orthant(m: usize) -> Self {
        let gens = (0..m)
            .map(|i| {
                let mut e = vec![0; m];
                e[i] = 1;
                e
            })
            .collect::<Vec<_>>();
        RationalCone::from_integers(m, &gens).expect("orthant generators are nonzero")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    /// Image under the linear map `v -> M v`; zero images are dropped.
    pub fn map_linear(&self, rows: &[Vec<Rational>]) -> Result<Self> {
        let out_dim = rows.len();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                check_len(self.ambient_dim, g.len())?;
                Ok(rows.iter().map(|row| dot(row, g)).collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        RationalCone::new(
            out_dim,
            gens.into_iter()
                .filter(|g| !g.iter().all(Zero::is_zero))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| {
                Value::Array(
                    g.iter()
                        .map(|q| {
                            if q.is_integer() {
                                rational::to_json(q)["num"].clone()
                            } else {
                                let j = rational::to_json(q);
                                Value::Array(vec![j["num"].clone(), j["den"].clone()])
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "dim": self.ambient_dim, "generators": gens })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let wire: ConeJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("cone: {e}")))?;
        let gens = wire
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(rational::from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RationalCone::new(wire.dim, gens)
    }
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ConeJson {
    dim: usize,
    generators: Vec<Vec<Value>>,
}

struct DoubleDescription {
    dim: usize,
    /// inequalities processed so far
    constraints: Vec<Vec<Rational>>,
    lineality: Vec<Vec<Rational>>,
    rays: Vec<Vec<Rational>>,
}

impl DoubleDescription {
    fn whole_space(dim: usize) -> Self {
        let lineality = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| rational::from_int((i == j) as i64))
                    .collect()
            })
            .collect();
        DoubleDescription {
            dim,
            constraints: Vec::new(),
            lineality,
            rays: Vec::new(),
        }
    }

    fn tight_set(&self, v: &[Rational]) -> Vec<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, a)| dot(a, v).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    fn adjacent(&self, p: &[usize], n: &[usize]) -> bool {
        let common: Vec<Vec<Rational>> = p
            .iter()
            .filter(|i| n.contains(i))
            .map(|&i| self.constraints[i].clone())
            .collect();
        let pointed_dim = self.dim - self.lineality.len();
        pointed_dim >= 2 && rank(&common) == pointed_dim - 2
    }

    fn add_inequality(&mut self, a: Vec<Rational>) {
        let pivot = self.lineality.iter().position(|l| !dot(&a, l).is_zero());
        if let Some(pivot) = pivot {
            let mut l = self.lineality.remove(pivot);
            let mut al = dot(&a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                al = -al;
            }
            let project = |v: &mut Vec<Rational>| {
                let t = dot(&a, v) / &al;
                if !t.is_zero() {
                    for (x, y) in v.iter_mut().zip(&l) {
                        *x -= &t * y;
                    }
                }
                *v = primitive(v);
            };
            self.lineality.iter_mut().for_each(project);
            self.rays.iter_mut().for_each(project);
            self.rays.push(primitive(&l));
            self.constraints.push(a);
            return;
        }

        let values: Vec<Rational> = self.rays.iter().map(|r| dot(&a, r)).collect();
        // tight sets are taken before `a` joins the constraint list
        let tight: Vec<Vec<usize>> = self.rays.iter().map(|r| self.tight_set(r)).collect();
        let mut next = Vec::new();
        for (r, v) in self.rays.iter().zip(&values) {
            if !v.is_negative() {
                next.push(r.clone());
            }
        }
        for (i, vp) in values.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (j, vn) in values.iter().enumerate() {
                if !vn.is_negative() || !self.adjacent(&tight[i], &tight[j]) {
                    continue;
                }
                let combo: Vec<Rational> = self.rays[j]
                    .iter()
                    .zip(&self.rays[i])
                    .map(|(n, p)| vp * n - vn * p)
                    .collect();
                next.push(primitive(&combo));
            }
        }
        next.sort();
        next.dedup();
        self.rays = next;
        self.constraints.push(a);
    }

    fn into_generators(self) -> Vec<Vec<Rational>> {
        let mut gens = self.rays;
        for l in self.lineality {
            let l = primitive(&l);
            gens.push(l.iter().map(|x| -x.clone()).collect());
            gens.push(l);
        }
        gens.sort();
        gens.dedup();
        gens
    }
}

/// Dual cone `{y : y . x >= 0 for all x in C}`, refusing ambient dimensions
/// above `max_dim`.
pub fn dual_cone_bounded(cone: &RationalCone, max_dim: usize) -> Result<RationalCone> {
    if cone.ambient_dim > max_dim {
        return Err(Error::refused(format!(
            "cone duality is limited to ambient dimension {max_dim}, got {}",
            cone.ambient_dim
        )));
    }
    let mut dd = DoubleDescription::whole_space(cone.ambient_dim);
    // lexicographic order keeps the pivot sequence and output deterministic
    let mut gens = cone
        .generators
        .iter()
        .map(|g| primitive(g))
        .collect::<Vec<_>>();
    gens.sort();
    gens.dedup();
    for g in gens {
        dd.add_inequality(g);
    }
    RationalCone::new(cone.ambient_dim, dd.into_generators())
}

pub fn dual_cone(cone: &RationalCone) -> Result<RationalCone> {
    dual_cone_bounded(cone, DEFAULT_MAX_DIM)
}

/// Membership test against precomputed dual generators.
pub fn contains_with_dual(dual: &RationalCone, v: &[Rational]) -> Result<bool> {
    check_len(dual.ambient_dim, v.len())?;
    Ok(dual.generators.iter().all(|y| !dot(y, v).is_negative()))
}

/// `v` lies in `C` iff it pairs non-negatively with every generator of the
/// dual cone.
pub fn contains(cone: &RationalCone, v: &[Rational]) -> Result<bool> {
    contains_bounded(cone, v, DEFAULT_MAX_DIM)
}

pub fn contains_bounded(cone: &RationalCone, v: &[Rational], max_dim: usize) -> Result<bool> {
    check_len(cone.ambient_dim, v.len())?;
    contains_with_dual(&dual_cone_bounded(cone, max_dim)?, v)
}

fn is_subcone(a: &RationalCone, dual_b: &RationalCone) -> Result<bool> {
    for g in &a.generators {
        if !contains_with_dual(dual_b, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semantic equality: each cone's generators lie in the other.
pub fn cones_equal(a: &RationalCone, b: &RationalCone) -> Result<bool> {
    cones_equal_bounded(a, b, DEFAULT_MAX_DIM)
}

pub fn cones_equal_bounded(a: &RationalCone, b: &RationalCone, max_dim: usize) -> Result<bool> {
    check_len(a.ambient_dim, b.ambient_dim)?;
    Ok(is_subcone(a, &dual_cone_bounded(b, max_dim)?)?
        && is_subcone(b, &dual_cone_bounded(a, max_dim)?)?)
}
