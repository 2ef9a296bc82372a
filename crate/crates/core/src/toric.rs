//! Complete smooth toric varieties presented by a fan.
//!
//! The torus-invariant curves are the walls of the fan. For a wall with shared
//! rays `u_1..u_{d-1}` and opposite rays `u, u'` the wall relation reads
//! `u + u' = sum b_i u_i`, and the degree of `D = sum a_rho D_rho` on the
//! wall curve is `a_u + a_u' - sum b_i a_{u_i}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::bigint::BigInt;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::linalg::{is_unimodular, solve_columns};
use crate::rational::{from_int, Rational};
use crate::report::ValidationReport;

/// Wire form of a fan; may be invalid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn ray_matrix(spec: &FanSpec, cone: &[usize]) -> Vec<Vec<Rational>> {
    cone.iter()
        .map(|&i| spec.rays[i].iter().map(|&x| from_int(x)).collect())
        .collect()
}

/// Facets of each cone, keyed by the sorted shared ray indices.
fn facet_map(cones: &[Vec<usize>]) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (c, cone) in cones.iter().enumerate() {
        for skip in 0..cone.len() {
            let mut facet: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &r)| r)
                .collect();
            facet.sort_unstable();
            map.entry(facet).or_default().push(c);
        }
    }
    map
}

/// Checks primitivity, smoothness and the facet-pairing completeness proxy.
pub fn validate_fan(spec: &FanSpec) -> ValidationReport {
    let mut report = ValidationReport::new();
    let d = spec.dim;
    if d == 0 {
        report.fail("dim", "dimension must be positive");
        return report;
    }

    let mut seen_rays = BTreeMap::new();
    let mut rays_ok = true;
    for (i, ray) in spec.rays.iter().enumerate() {
        let subject = format!("ray {i}");
        if ray.len() != d {
            report.fail(&subject, format!("has length {}, expected {d}", ray.len()));
            rays_ok = false;
            continue;
        }
        let g = ray.iter().fold(0, |acc, &x| gcd(acc, x));
        if g == 0 {
            report.fail(&subject, "is the zero vector");
            rays_ok = false;
        } else if g != 1 {
            report.fail(&subject, format!("{ray:?} is not primitive (gcd {g})"));
        }
        if let Some(prev) = seen_rays.insert(ray.clone(), i) {
            report.fail(&subject, format!("duplicates ray {prev}"));
        }
    }

    let mut cones_ok = true;
    let mut seen_cones = BTreeSet::new();
    for (c, cone) in spec.max_cones.iter().enumerate() {
        let subject = format!("cone {c}");
        if cone.len() != d {
            report.fail(&subject, format!("has {} rays, expected {d}", cone.len()));
            cones_ok = false;
            continue;
        }
        if let Some(&bad) = cone.iter().find(|&&r| r >= spec.rays.len()) {
            report.fail(&subject, format!("ray index {bad} out of range"));
            cones_ok = false;
            continue;
        }
        let sorted: BTreeSet<usize> = cone.iter().copied().collect();
        if sorted.len() != d {
            report.fail(&subject, "repeats a ray index");
            cones_ok = false;
            continue;
        }
        if !seen_cones.insert(sorted) {
            report.fail(&subject, "duplicates an earlier cone");
        }
        if rays_ok && !is_unimodular(&ray_matrix(spec, cone)) {
            report.fail(
                &subject,
                "ray generators do not form a Z-basis (not smooth)",
            );
        }
    }
    if spec.max_cones.is_empty() {
        report.fail("max_cones", "fan has no maximal cones");
        cones_ok = false;
    }
    if !cones_ok {
        return report;
    }

    for (facet, owners) in facet_map(&spec.max_cones) {
        if owners.len() != 2 {
            report.fail(
                format!("facet {facet:?}"),
                format!(
                    "shared by {} maximal cones {owners:?}; a complete fan pairs every facet",
                    owners.len()
                ),
            );
        }
    }

    let n = spec.max_cones.len();
    let mut adjacency = vec![Vec::new(); n];
    for owners in facet_map(&spec.max_cones).values() {
        for &a in owners {
            for &b in owners {
                if a != b {
                    adjacency[a].push(b);
                }
            }
        }
    }
    let mut visited = vec![false; n];
    let mut queue = VecDeque::from([0]);
    visited[0] = true;
    while let Some(c) = queue.pop_front() {
        for &next in &adjacency[c] {
            if !std::mem::replace(&mut visited[next], true) {
                queue.push_back(next);
            }
        }
    }
    if let Some(c) = visited.iter().position(|v| !v) {
        report.fail(
            format!("cone {c}"),
            "not connected to cone 0 through shared facets",
        );
    }
    report.note(
        "completeness is checked by facet pairing and connectivity, not by covering the space",
    );
    report
}

/// A codimension-one cone shared by two maximal cones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub ray_indices: Vec<usize>,
    pub cone_pair: (usize, usize),
    pub opposite_rays: (usize, usize),
    /// `b` in `u + u' = sum b_i u_i`, aligned with `ray_indices`.
    pub relation_coeffs: Vec<i64>,
}

impl Wall {
    /// Stable identifier built from the shared ray indices, e.g. `w0_2`.
    pub fn label(&self) -> String {
        let joined: Vec<String> = self.ray_indices.iter().map(|r| r.to_string()).collect();
        format!("w{}", joined.join("_"))
    }

    pub fn is_incident_to(&self, cone: usize) -> bool {
        self.cone_pair.0 == cone || self.cone_pair.1 == cone
    }
}

/// A validated smooth complete fan with its walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    spec: FanSpec,
    walls: Vec<Wall>,
}

impl Fan {
    pub fn new(spec: FanSpec) -> Result<Self> {
        let report = validate_fan(&spec);
        if !report.passed {
            return Err(Error::input(format!("invalid fan: {}", report.summary())));
        }
        let walls = solve_walls(&spec)?;
        Ok(Fan { spec, walls })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let spec: FanSpec =
            serde_json::from_str(s).map_err(|e| Error::input(format!("fan: {e}")))?;
        Fan::new(spec)
    }

    pub fn spec(&self) -> &FanSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.spec.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.spec.max_cones
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall(&self, label: &str) -> Option<&Wall> {
        self.walls.iter().find(|w| w.label() == label)
    }
}

fn solve_walls(spec: &FanSpec) -> Result<Vec<Wall>> {
    let mut walls = Vec::new();
    for (facet, owners) in facet_map(&spec.max_cones) {
        let [first, second] = owners[..] else {
            return Err(Error::Internal(format!(
                "facet {facet:?} is not shared by two cones"
            )));
        };
        let opposite = |c: usize| {
            spec.max_cones[c]
                .iter()
                .copied()
                .find(|r| !facet.contains(r))
                .expect("a maximal cone has one ray off each facet")
        };
        let (u, u_prime) = (opposite(first), opposite(second));
        let ray = |i: usize| {
            spec.rays[i]
                .iter()
                .map(|&x| from_int(x))
                .collect::<Vec<_>>()
        };
        let target: Vec<Rational> = ray(u)
            .iter()
            .zip(ray(u_prime))
            .map(|(a, b)| a + b)
            .collect();
        let columns: Vec<Vec<Rational>> = facet.iter().map(|&r| ray(r)).collect();

        let coeffs = if columns.is_empty() {
            if target.iter().any(|x| !x.is_zero()) {
                None
            } else {
                Some(Vec::new())
            }
        } else {
            solve_columns(&columns, &target)
        };
        let Some(coeffs) = coeffs else {
            return Err(Error::Internal(format!(
                "wall relation around facet {facet:?} has no solution"
            )));
        };
        let relation_coeffs = coeffs
            .iter()
            .map(|q| {
                if q.is_integer() {
                    i64::try_from(q.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<i64>>>()
            .ok_or_else(|| {
                Error::Internal(format!(
                    "wall relation around facet {facet:?} is not integral"
                ))
            })?;
        walls.push(Wall {
            ray_indices: facet,
            cone_pair: (first, second),
            opposite_rays: (u, u_prime),
            relation_coeffs,
        });
    }
    Ok(walls)
}

/// The walls of a validated fan, sorted by shared ray index set.
pub fn enumerate_walls(fan: &Fan) -> Vec<Wall> {
    fan.walls.clone()
}

/// Checks `u + u' - sum b_i u_i = 0` exactly.
pub fn wall_relation_holds(fan: &Fan, wall: &Wall) -> bool {
    (0..fan.dim()).all(|k| {
        let r = |i: usize| i128::from(fan.rays()[i][k]);
        let lhs = r(wall.opposite_rays.0) + r(wall.opposite_rays.1);
        let rhs: i128 = wall
            .ray_indices
            .iter()
            .zip(&wall.relation_coeffs)
            .map(|(&i, &b)| i128::from(b) * r(i))
            .sum();
        lhs == rhs
    })
}

/// `D = sum a_rho D_rho`, indexed like the fan's rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ToricDivisor {
    pub coeffs: Vec<i64>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        ToricDivisor { coeffs }
    }

    /// `m * D_rho`.
    pub fn ray_multiple(n_rays: usize, rho: usize, m: i64) -> Self {
        let mut coeffs = vec![0; n_rays];
        coeffs[rho] = m;
        ToricDivisor { coeffs }
    }
}

pub fn divisor_degree_on_wall(fan: &Fan, d: &ToricDivisor, wall: &Wall) -> Result<BigInt> {
    check_len(fan.rays().len(), d.coeffs.len())?;
    let a = |i: usize| BigInt::from(d.coeffs[i]);
    let shared: BigInt = wall
        .ray_indices
        .iter()
        .zip(&wall.relation_coeffs)
        .map(|(&i, &b)| BigInt::from(b) * a(i))
        .sum();
    Ok(a(wall.opposite_rays.0) + a(wall.opposite_rays.1) - shared)
}

/// First wall on which `D` has negative degree, if any.
pub fn toric_nef_obstruction<'f>(
    fan: &'f Fan,
    d: &ToricDivisor,
) -> Result<Option<(&'f Wall, BigInt)>> {
    for wall in fan.walls() {
        let deg = divisor_degree_on_wall(fan, d, wall)?;
        if deg < BigInt::zero() {
            return Ok(Some((wall, deg)));
        }
    }
    Ok(None)
}

/// `D` is nef iff it has non-negative degree on every torus-invariant curve.
pub fn nef_check_toric(fan: &Fan, d: &ToricDivisor) -> Result<bool> {
    check_len(fan.rays().len(), d.coeffs.len())?;
    Ok(toric_nef_obstruction(fan, d)?.is_none())
}

pub(crate) fn check_cone_index(fan: &Fan, sigma: usize) -> Result<()> {
    if sigma >= fan.max_cones().len() {
        return Err(Error::input(format!(
            "cone index {sigma} out of range; the fan has {} maximal cones",
            fan.max_cones().len()
        )));
    }
    Ok(())
}

/// Seshadri constant of a nef `D` at the torus-fixed point of maximal cone
/// `sigma`: the minimum degree over the invariant curves through that point,
/// i.e. the walls that are facets of `sigma`.
pub fn seshadri_toric_fixed_point(fan: &Fan, d: &ToricDivisor, sigma: usize) -> Result<Rational> {
    check_cone_index(fan, sigma)?;
    if let Some((wall, deg)) = toric_nef_obstruction(fan, d)? {
        return Err(Error::refused(format!(
            "Seshadri constants are defined here for nef divisors only; D has degree {deg} on wall {}",
            wall.label()
        )));
    }
    let mut min: Option<BigInt> = None;
    for wall in fan.walls().iter().filter(|w| w.is_incident_to(sigma)) {
        let deg = divisor_degree_on_wall(fan, d, wall)?;
        min = Some(match min {
            Some(m) if m <= deg => m,
            _ => deg,
        });
    }
    let min = min.ok_or_else(|| Error::Internal(format!("cone {sigma} has no walls")))?;
    Ok(Rational::from_integer(min))
}

/// Fans used in tests and examples.
pub mod standard {
    use super::FanSpec;

    /// Fan of `P^n`: rays `e_1..e_n, -(e_1+..+e_n)`, cones omitting one ray each.
    pub fn projective_space(n: usize) -> FanSpec {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        rays.push(vec![-1; n]);
        let max_cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        FanSpec {
            dim: n,
            rays,
            max_cones,
        }
    }

    pub fn p1_x_p1() -> FanSpec {
        FanSpec {
            dim: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        }
    }

    /// Hirzebruch surface `F_a`: rays `e_1, e_2, -e_1 + a e_2, -e_2`.
    pub fn hirzebruch(a: i64) -> FanSpec {
        FanSpec {
            dim: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    fn degrees(fan: &Fan, d: &[i64]) -> Vec<i64> {
        let d = ToricDivisor::new(d.to_vec());
        fan.walls()
            .iter()
            .map(|w| i64::try_from(divisor_degree_on_wall(fan, &d, w).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_fan(&projective_space(2)).passed);
        assert!(validate_fan(&p1_x_p1()).passed);
        let mut bad = projective_space(2);
        bad.rays[0] = vec![2, 0];
        let report = validate_fan(&bad);
        assert!(!report.passed);
        assert!(report.summary().contains("not primitive"));
    }

    #[test]
    fn validation_catches_incomplete_and_singular() {
        let mut open = projective_space(2);
        open.max_cones.pop();
        let report = validate_fan(&open);
        assert!(!report.passed);
        assert!(report.summary().contains("shared by 1"));

        let singular = FanSpec {
            dim: 2,
            rays: vec![vec![1, 0], vec![1, 2], vec![-1, 0], vec![0, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        };
        assert!(validate_fan(&singular).summary().contains("not smooth"));

        let mut dup = p1_x_p1();
        dup.rays[2] = vec![1, 0];
        assert!(!validate_fan(&dup).passed);

        let mut range = p1_x_p1();
        range.max_cones[0] = vec![0, 9];
        assert!(!validate_fan(&range).passed);
        assert!(Fan::new(range).is_err());
    }

    #[test]
    fn wall_counts() {
        assert_eq!(
            enumerate_walls(&Fan::new(projective_space(2)).unwrap()).len(),
            3
        );
        assert_eq!(enumerate_walls(&Fan::new(p1_x_p1()).unwrap()).len(), 4);
        let f2 = Fan::new(hirzebruch(2)).unwrap();
        assert_eq!(f2.walls().len(), 4);
        let at_e2 = f2.wall("w1").unwrap();
        assert_eq!(at_e2.relation_coeffs, vec![2]);
        assert_eq!(at_e2.opposite_rays, (0, 2));
        for w in f2.walls() {
            assert!(wall_relation_holds(&f2, w));
        }
        let p3 = Fan::new(projective_space(3)).unwrap();
        assert_eq!(p3.walls().len(), 6);
    }

    #[test]
    fn one_dimensional_fan() {
        let p1 = Fan::new(projective_space(1)).unwrap();
        assert_eq!(p1.walls().len(), 1);
        assert_eq!(degrees(&p1, &[1, 0]), vec![1]);
        assert_eq!(degrees(&p1, &[2, 3]), vec![5]);
    }

    #[test]
    fn degrees_on_p2_and_f2() {
        let p2 = Fan::new(projective_space(2)).unwrap();
        assert_eq!(degrees(&p2, &[1, 0, 0]), vec![1, 1, 1]);
        assert_eq!(degrees(&p2, &[0, 0, 0]), vec![0, 0, 0]);

        let f2 = Fan::new(hirzebruch(2)).unwrap();
        // walls sorted: w0, w1, w2, w3
        assert_eq!(degrees(&f2, &[0, 1, 0, 0]), vec![1, -2, 1, 0]);
        assert_eq!(degrees(&f2, &[0, 0, 0, 0]), vec![0; 4]);
    }

    #[test]
    fn nef_examples() {
        let p2 = Fan::new(projective_space(2)).unwrap();
        for m in 0..4 {
            assert!(nef_check_toric(&p2, &ToricDivisor::ray_multiple(3, 0, m)).unwrap());
        }
        let f2 = Fan::new(hirzebruch(2)).unwrap();
        assert!(!nef_check_toric(&f2, &ToricDivisor::new(vec![0, 1, 0, 0])).unwrap());
        // D_{e2} + 2 D_{-e2}: degree -2 on the wall at e2
        assert_eq!(degrees(&f2, &[0, 1, 0, 2]), vec![3, -2, 3, 4]);
        assert!(!nef_check_toric(&f2, &ToricDivisor::new(vec![0, 1, 0, 2])).unwrap());
        // D_{-e2} alone: degree 0 on the wall at e2
        assert_eq!(degrees(&f2, &[0, 0, 0, 1]), vec![1, 0, 1, 2]);
        assert!(nef_check_toric(&f2, &ToricDivisor::new(vec![0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn seshadri_examples() {
        let p2 = Fan::new(projective_space(2)).unwrap();
        for sigma in 0..3 {
            let d = ToricDivisor::ray_multiple(3, 0, 4);
            assert_eq!(
                seshadri_toric_fixed_point(&p2, &d, sigma).unwrap(),
                from_int(4)
            );
            let zero = ToricDivisor::new(vec![0, 0, 0]);
            assert_eq!(
                seshadri_toric_fixed_point(&p2, &zero, sigma).unwrap(),
                from_int(0)
            );
        }
        assert!(seshadri_toric_fixed_point(&p2, &ToricDivisor::new(vec![0, 0, 0]), 3).is_err());

        let f2 = Fan::new(hirzebruch(2)).unwrap();
        let d = ToricDivisor::new(vec![0, 0, 0, 1]);
        // cone(e1, e2) meets walls w0 (degree 1) and w1 (degree 0)
        assert_eq!(seshadri_toric_fixed_point(&f2, &d, 0).unwrap(), from_int(0));
        // cone(-e2, e1) meets w3 (degree 2) and w0 (degree 1)
        assert_eq!(seshadri_toric_fixed_point(&f2, &d, 3).unwrap(), from_int(1));
        let err = seshadri_toric_fixed_point(&f2, &ToricDivisor::new(vec![0, 1, 0, 2]), 0);
        assert!(matches!(err, Err(Error::Refused(_))));
    }
}
