//! Models of full flag varieties `G/B` and of projective space.
//!
//! For `G/B` the boundary divisors are the Schubert divisors `D_i` (closures
//! of `B^- s_i B / B`) and the B-stable curves are exactly the Schubert curves
//! `C_i` (closures of `B s_i B / B`), with `D_i . C_j = delta_ij`.

use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::model::{CurveRecord, VarietyModel};
use crate::rational::from_int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Cartan type such as `A3` or `G2`. Only valid (family, rank) pairs can be
/// constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::input(format!(
                "{}{rank} is not a valid Cartan type (A n>=1, B n>=2, C n>=3, D n>=4, E 6..8, F4, G2)",
                family.letter()
            )))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the Dynkin diagram in Bourbaki numbering (0-based), as
    /// `(i, j, a_ij, a_ji)`.
    fn bonds(&self) -> Vec<(usize, usize, i64, i64)> {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, -1, -1));
        match self.family {
            Family::A => chain(n).collect(),
            Family::B => {
                // alpha_n short
                let mut b: Vec<_> = chain(n - 1).collect();
                b.push((n - 2, n - 1, -2, -1));
                b
            }
            Family::C => {
                // alpha_n long
                let mut b: Vec<_> = chain(n - 1).collect();
                b.push((n - 2, n - 1, -1, -2));
                b
            }
            Family::D => {
                let mut b: Vec<_> = chain(n - 1).collect();
                b.push((n - 3, n - 1, -1, -1));
                b
            }
            Family::E => {
                // 1-3-4-5-6(-7-8), 2 attached to 4
                let mut b = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
                b.extend((2..n - 1).map(|i| (i, i + 1, -1, -1)));
                b
            }
            Family::F => vec![(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)],
            Family::G => vec![(0, 1, -1, -3)],
        }
    }

    /// Cartan matrix with entries `a_ij = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, aij, aji) in self.bonds() {
            a[i][j] = aij;
            a[j][i] = aji;
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::input(format!("unknown Cartan type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::input(format!("unknown Cartan type {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// Model of `G/B` for the given Cartan type.
pub fn build_flag_model(t: CartanType) -> Result<VarietyModel> {
    let cartan: Vec<Vec<_>> = t
        .cartan_matrix()
        .iter()
        .map(|row| row.iter().map(|&x| from_int(x)).collect())
        .collect();
    if determinant(&cartan).is_zero() {
        return Err(Error::Internal(format!("Cartan matrix of {t} is singular")));
    }
    let r = t.rank();
    let divisors = (1..=r).map(|i| format!("D{i}")).collect();
    let curves = (0..r)
        .map(|i| CurveRecord::distinguished(format!("C{}", i + 1), r, i))
        .collect();
    VarietyModel::new(format!("G/B type {t}"), divisors, curves)
}

/// Model of `P^n` under `PGL(n+1)`: hyperplane `H` and the line `C`.
pub fn build_projective_space_model(n: usize) -> Result<VarietyModel> {
    if n < 1 {
        return Err(Error::input("projective space needs dimension n >= 1"));
    }
    VarietyModel::new(
        format!("P^{n}"),
        vec!["H".to_string()],
        vec![CurveRecord::distinguished("C", 1, 0)],
    )
}
