mod common;

use common::{q, toric_intersection_oracle};
use poskit::flag::build_projective_space_model;
use poskit::model::{seshadri_line, DivisorClass};
use poskit::toric::{
    divisor_degree_on_wall, enumerate_walls, seshadri_toric_fixed_point, standard,
    wall_relation_holds, Fan, FanSpec, ToricDivisor,
};

fn fans() -> Vec<(&'static str, FanSpec)> {
    vec![
        ("P1", standard::projective_space(1)),
        ("P2", standard::projective_space(2)),
        ("P3", standard::projective_space(3)),
        ("P4", standard::projective_space(4)),
        ("P1xP1", standard::p1_x_p1()),
        ("F1", standard::hirzebruch(1)),
        ("F2", standard::hirzebruch(2)),
        ("F3", standard::hirzebruch(3)),
        (
            "P1xP1xP1",
            FanSpec {
                dim: 3,
                rays: vec![
                    vec![1, 0, 0],
                    vec![-1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, -1, 0],
                    vec![0, 0, 1],
                    vec![0, 0, -1],
                ],
                max_cones: (0..8)
                    .map(|k| vec![(k & 1), 2 + ((k >> 1) & 1), 4 + ((k >> 2) & 1)])
                    .collect(),
            },
        ),
    ]
}

#[test]
fn wall_relations_hold_exactly() {
    for (name, spec) in fans() {
        let fan = Fan::new(spec).unwrap();
        for w in enumerate_walls(&fan) {
            assert!(wall_relation_holds(&fan, &w), "{name} {}", w.label());
        }
        let labels: Vec<_> = fan.walls().iter().map(|w| w.ray_indices.clone()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted, "{name}: walls not in sorted order");
    }
}

#[test]
fn degrees_match_linear_equivalence_oracle() {
    for (name, spec) in fans() {
        let oracle = toric_intersection_oracle(spec.dim, &spec.rays, &spec.max_cones);
        let fan = Fan::new(spec).unwrap();
        assert_eq!(oracle.len(), fan.walls().len(), "{name}");
        for wall in fan.walls() {
            for rho in 0..fan.rays().len() {
                let d = ToricDivisor::ray_multiple(fan.rays().len(), rho, 1);
                let deg = divisor_degree_on_wall(&fan, &d, wall).unwrap();
                assert_eq!(
                    num::rational::BigRational::from_integer(deg),
                    oracle[&wall.ray_indices][rho],
                    "{name} D_{rho} on {}",
                    wall.label()
                );
            }
        }
    }
}

#[test]
fn projective_space_cross_model() {
    for n in 1..=4 {
        let spec = standard::projective_space(n);
        let fan = Fan::new(spec).unwrap();
        let model = build_projective_space_model(n).unwrap();
        for m in 0..=6 {
            for rho in 0..=n {
                let d = ToricDivisor::ray_multiple(n + 1, rho, m);
                for sigma in 0..=n {
                    let eps = seshadri_toric_fixed_point(&fan, &d, sigma).unwrap();
                    assert_eq!(eps, q(m));
                    if m > 0 {
                        assert_eq!(
                            eps,
                            seshadri_line(&model, &DivisorClass::new(vec![m])).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn fixed_point_constant_is_bounded_below_by_global_minimum() {
    let fan = Fan::new(standard::hirzebruch(3)).unwrap();
    let mut strict = 0;
    for a in 0..4 {
        for b in 0..4 {
            // a D_{e1} + b D_{-e2}
            let d = ToricDivisor::new(vec![a, 0, 0, b]);
            let degrees: Vec<_> = fan
                .walls()
                .iter()
                .map(|w| divisor_degree_on_wall(&fan, &d, w).unwrap())
                .collect();
            if degrees.iter().any(|x| x.sign() == num::bigint::Sign::Minus) {
                continue;
            }
            let global =
                num::rational::BigRational::from_integer(degrees.iter().min().unwrap().clone());
            let local: Vec<_> = (0..4)
                .map(|sigma| seshadri_toric_fixed_point(&fan, &d, sigma).unwrap())
                .collect();
            assert!(local.iter().all(|eps| *eps >= global));
            // every wall meets some fixed point
            assert_eq!(local.iter().min().unwrap(), &global);
            strict += local.iter().filter(|eps| **eps > global).count();
        }
    }
    assert!(
        strict > 0,
        "expected some fixed point above the global minimum on F3"
    );
}

#[test]
fn all_walls_incident_gives_global_minimum() {
    let fan = Fan::new(standard::projective_space(2)).unwrap();
    for d in [vec![1, 2, 0], vec![3, 0, 0], vec![1, 1, 1]] {
        let d = ToricDivisor::new(d);
        let global = fan
            .walls()
            .iter()
            .map(|w| divisor_degree_on_wall(&fan, &d, w).unwrap())
            .min()
            .unwrap();
        for sigma in 0..3 {
            assert_eq!(
                seshadri_toric_fixed_point(&fan, &d, sigma).unwrap(),
                num::rational::BigRational::from_integer(global.clone())
            );
        }
    }
}
