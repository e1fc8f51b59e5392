//! Finite-dimensional rational G-modules as action matrices over K[G].
//!
//! `action[i][j]` is the `i`-th coordinate of `σ·e_j`, a polynomial in the
//! coordinates of one generic point, kept in normal form modulo the group
//! relations. `blocks` lists the sizes of a decomposition into G-stable
//! coordinate blocks; functions on the module are multigraded by it.

pub mod coordring;
pub mod faithful;
pub mod functors;
pub mod intertwine;
pub mod matrix;
pub mod submodule;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, GroupJson, GroupPresentation};
use crate::json::{parse_matrix, print_matrix};
use crate::polycore::Poly;

pub use coordring::{component_rep, monomials_of_multidegree, FunctionAction};
pub use faithful::is_faithful;
pub use functors::{
    direct_sum, direct_sum_all, dual, extend_by_cocycle, frobenius_power, hom0, quotient, restrict,
    symmetric_power, tensor, Hom0,
};
pub use intertwine::{
    find_embedding, find_isomorphism, intertwiners, is_intertwiner, summand_witness, SummandWitness,
};
pub use matrix::PolyMatrix;
pub use submodule::Submodule;

/// How a module was built, for reproducible labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub op: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<Provenance>,
}

impl Provenance {
    pub fn leaf(op: impl Into<String>) -> Self {
        Provenance {
            op: op.into(),
            args: vec![],
        }
    }

    pub fn node(op: impl Into<String>, args: Vec<Provenance>) -> Self {
        Provenance {
            op: op.into(),
            args,
        }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.op)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub group: Group,
    pub action: PolyMatrix,
    pub labels: Vec<String>,
    pub blocks: Vec<usize>,
    pub provenance: Provenance,
}

impl PartialEq for Representation {
    fn eq(&self, o: &Self) -> bool {
        *self.group == *o.group && self.action == o.action && self.blocks == o.blocks
    }
}

impl Representation {
    /// Builds a module and checks the representation laws.
    pub fn new(
        group: Group,
        action: PolyMatrix,
        labels: Vec<String>,
        blocks: Vec<usize>,
        provenance: Provenance,
    ) -> Result<Self> {
        let rep = Self::new_unchecked(group, action, labels, blocks, provenance)?;
        rep.check_laws()?;
        Ok(rep)
    }

    /// Builds a module whose laws follow from its construction; only the shape
    /// is checked and entries are put in normal form.
    pub fn new_unchecked(
        group: Group,
        action: PolyMatrix,
        labels: Vec<String>,
        blocks: Vec<usize>,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = action.len();
        if action.iter().any(|r| r.len() != n) {
            return Err(Error::RepresentationLaw(
                "action matrix is not square".into(),
            ));
        }
        if labels.len() != n {
            return Err(Error::RepresentationLaw(
                "label count differs from dimension".into(),
            ));
        }
        if blocks.iter().sum::<usize>() != n || blocks.contains(&0) {
            return Err(Error::RepresentationLaw(
                "blocks do not partition the basis".into(),
            ));
        }
        for e in action.iter().flatten() {
            if e.characteristic() != group.p {
                return Err(Error::RingMismatch(group.p, e.characteristic()));
            }
            if e.width() > group.ncoords() {
                return Err(Error::RepresentationLaw(format!(
                    "entry {e} uses non-group variables"
                )));
            }
        }
        let action = matrix::reduce(&group, &action, 1, 0);
        Ok(Self {
            group,
            action,
            labels,
            blocks,
            provenance,
        })
    }

    pub fn trivial(group: &Group, n: usize) -> Self {
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        Self {
            group: group.clone(),
            action: matrix::identity(group.p, n),
            labels,
            blocks: vec![1; n],
            provenance: Provenance::leaf(format!("trivial{n}")),
        }
    }

    /// The defining matrix representation of the group.
    pub fn natural(group: &Group) -> Result<Self> {
        let n = group.natural_dim();
        let labels = match n {
            1 => vec!["X".to_string()],
            2 => vec!["X".to_string(), "Y".to_string()],
            _ => (0..n).map(|i| format!("X{i}")).collect(),
        };
        Self::new(
            group.clone(),
            group.natural.clone(),
            labels,
            vec![n],
            Provenance::leaf("natural"),
        )
    }

    pub fn dim(&self) -> usize {
        self.action.len()
    }

    pub fn p(&self) -> u32 {
        self.group.p
    }

    /// Half-open coordinate ranges of the blocks.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    /// The action at generic point `point`, variables placed at `offset`.
    pub fn action_at(&self, point: usize, offset: usize) -> PolyMatrix {
        let shift = offset + point * self.group.ncoords();
        matrix::map(&self.action, |e| e.shift_vars(shift))
    }

    /// `A(σ⁻¹)` in normal form.
    pub fn inverse_action(&self) -> PolyMatrix {
        let g = &self.group;
        let inv = g.inv_of(&g.point(0, 0));
        matrix::map(&self.action, |e| {
            e.substitute_with(&inv, |q| g.reduce(&q, 1, 0))
        })
    }

    /// `A(στ)` with σ, τ generic points 0 and 1.
    fn action_of_product(&self) -> PolyMatrix {
        let g = &self.group;
        let st = g.mult_of(&g.point(0, 0), &g.point(1, 0));
        matrix::map(&self.action, |e| {
            e.substitute_with(&st, |q| g.reduce(&q, 2, 0))
        })
    }

    pub fn check_laws(&self) -> Result<()> {
        let g: &GroupPresentation = &self.group;
        let n = self.dim();
        let p = self.p();
        let law = |msg: String| {
            Err(Error::RepresentationLaw(format!(
                "{}: {msg}",
                self.provenance
            )))
        };
        let e = g.unit_point();
        for i in 0..n {
            for j in 0..n {
                if self.action[i][j].substitute(&e) != Poly::constant(p, (i == j) as i64) {
                    return law(format!("action at the unit differs from I at ({i},{j})"));
                }
            }
        }
        let ranges = self.block_ranges();
        for (bi, ri) in ranges.iter().enumerate() {
            for (bj, rj) in ranges.iter().enumerate() {
                if bi != bj
                    && ri
                        .clone()
                        .any(|i| rj.clone().any(|j| !self.action[i][j].is_zero()))
                {
                    return law(format!("blocks {bi} and {bj} are coupled"));
                }
            }
        }
        let lhs = self.action_of_product();
        let rhs = matrix::mul(p, &self.action_at(0, 0), &self.action_at(1, 0));
        if !matrix::congruent(g, &lhs, &rhs, 2) {
            return law("A(στ) differs from A(σ)A(τ)".into());
        }
        Ok(())
    }

    pub fn verify_laws(&self) -> bool {
        self.check_laws().is_ok()
    }

    pub fn same_group(&self, other: &Representation) -> Result<()> {
        if *self.group != *other.group {
            return Err(Error::GroupMismatch(
                self.group.name.clone(),
                other.group.name.clone(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            group: self.group.to_json(),
            dim: self.dim(),
            labels: self.labels.clone(),
            blocks: self.blocks.clone(),
            action: print_matrix(&self.action),
            provenance: self.provenance.clone(),
        }
    }

    /// Rebuilds and re-verifies a serialized module.
    pub fn from_json(j: &RepJson) -> Result<Self> {
        let group = GroupPresentation::from_json(&j.group)?;
        group.check_group_laws()?;
        let action = parse_matrix(&j.action, group.p)?;
        if action.len() != j.dim {
            return Err(Error::Schema(format!(
                "dim {} but {} rows",
                j.dim,
                action.len()
            )));
        }
        Self::new(
            group,
            action,
            j.labels.clone(),
            j.blocks.clone(),
            j.provenance.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub group: GroupJson,
    pub dim: usize,
    pub labels: Vec<String>,
    pub blocks: Vec<usize>,
    pub action: Vec<Vec<String>>,
    pub provenance: Provenance,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, BuiltinGroup};

    #[test]
    fn natural_modules_pass_laws() {
        for p in [2, 3] {
            for name in [BuiltinGroup::SL2, BuiltinGroup::Ga, BuiltinGroup::Gm] {
                let g = builtin_group(name, p).unwrap();
                let v = Representation::natural(&g).unwrap();
                assert!(v.verify_laws());
                assert!(Representation::trivial(&g, 2).verify_laws());
            }
        }
    }

    #[test]
    fn broken_action_is_rejected() {
        let g = builtin_group(BuiltinGroup::SL2, 3).unwrap();
        let p = 3;
        // transpose of the natural action is an anti-homomorphism
        let a = matrix::transpose(p, &g.natural);
        let r = Representation::new(
            g,
            a,
            vec!["X".into(), "Y".into()],
            vec![2],
            Provenance::leaf("t"),
        );
        assert!(matches!(r, Err(Error::RepresentationLaw(_))));
    }

    #[test]
    fn json_roundtrip() {
        let g = builtin_group(BuiltinGroup::SL2, 2).unwrap();
        let v = Representation::natural(&g).unwrap();
        let back = Representation::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        assert_eq!(back.labels, v.labels);
    }
}
