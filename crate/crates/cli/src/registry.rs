//! Builds the objects a scenario declares, in declaration order.

use std::collections::BTreeMap;
use std::sync::Arc;

use braidbox_core::bialgebra::BraidedBialgebra;
use braidbox_core::bicharacter::{bicharacter_from_pairing, AbelianPairing, Bicharacter};
use braidbox_core::catalog::{
    action_bialgebra, clifford1, degenerate_bialgebra, diagonal_algebra, graded_coaction, scalar_bialgebra,
    trivial_function_bialgebra, GroupPair,
};
use braidbox_core::coaction::{Coaction, CovariantRep, YdCovariantRep};
use braidbox_core::corep::{coordinate_grading, grading_corepresentation, Corepresentation};
use braidbox_core::qgroup::{FiniteGroup, QuantumGroup};
use braidbox_core::twisted::{inclusion_rep, standard_covariant_rep};
use braidbox_core::{ComplexMatrix, Tolerance, UnitaryMatrix, C64};
use ndarray::Array2;

use crate::scenario::{
    AlgebraName, BialgebraStructure, BicharacterPreset, CoactionConstruction, Directive, LoadError, MatrixPayload,
    Scenario,
};

pub struct GroupEntry {
    pub pair: Arc<GroupPair>,
}

pub struct BicharacterEntry {
    pub group: String,
    pub chi: Bicharacter,
}

pub struct CoactionEntry {
    pub group: String,
    pub rep: CovariantRep,
}

pub struct BialgebraEntry {
    pub group: String,
    /// the quantum group's own Yetter–Drinfeld representation
    pub a: YdCovariantRep,
    pub b: BraidedBialgebra,
}

#[derive(Default)]
pub struct Registry {
    pub groups: BTreeMap<String, GroupEntry>,
    pub bicharacters: BTreeMap<String, BicharacterEntry>,
    pub coactions: BTreeMap<String, CoactionEntry>,
    pub bialgebras: BTreeMap<String, BialgebraEntry>,
}

fn invalid(msg: impl Into<String>) -> LoadError {
    LoadError::Invalid(msg.into())
}

fn at(id: &str) -> impl Fn(braidbox_core::Error) -> LoadError + '_ {
    move |e| invalid(format!("'{id}': {e}"))
}

pub fn matrix_from_payload(p: &MatrixPayload, rows: usize, cols: usize, what: &str) -> Result<ComplexMatrix, LoadError> {
    if p.len() != rows || p.iter().any(|r| r.len() != cols) {
        return Err(invalid(format!("{what} must be a {rows}x{cols} matrix")));
    }
    let mut m = Array2::zeros((rows, cols));
    for (i, row) in p.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(invalid(format!("{what} has a non-finite entry at ({i}, {j})")));
            }
            m[[i, j]] = C64::new(re, im);
        }
    }
    Ok(m)
}

/// Checks that `table` is an associative operation on `0..n`.
fn validate_semigroup(table: &[Vec<usize>]) -> Result<(), String> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err("semigroup table must be square with entries below its size".into());
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(format!("semigroup table is not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}

impl Registry {
    pub fn group(&self, id: &str) -> Result<&GroupEntry, LoadError> {
        self.groups.get(id).ok_or_else(|| invalid(format!("'{id}' is not a group")))
    }

    pub fn bicharacter(&self, id: &str) -> Result<&BicharacterEntry, LoadError> {
        self.bicharacters.get(id).ok_or_else(|| invalid(format!("'{id}' is not a bicharacter")))
    }

    pub fn coaction(&self, id: &str) -> Result<&CoactionEntry, LoadError> {
        self.coactions.get(id).ok_or_else(|| invalid(format!("'{id}' is not a coaction")))
    }

    pub fn bialgebra(&self, id: &str) -> Result<&BialgebraEntry, LoadError> {
        self.bialgebras.get(id).ok_or_else(|| invalid(format!("'{id}' is not a braided bialgebra")))
    }

    pub fn build(scenario: &Scenario, tol: &Tolerance) -> Result<Registry, LoadError> {
        scenario.validate_references()?;
        let mut reg = Registry::default();
        for d in &scenario.constructions {
            reg.add(d, tol)?;
        }
        Ok(reg)
    }

    fn add(&mut self, d: &Directive, tol: &Tolerance) -> Result<(), LoadError> {
        match d {
            Directive::Group { id, cyclic, symmetric, table } => {
                let group = match (cyclic, symmetric, table) {
                    (Some(n), None, None) => {
                        if *n == 0 {
                            return Err(invalid(format!("'{id}': cyclic order must be positive")));
                        }
                        FiniteGroup::cyclic(*n)
                    }
                    (None, Some(3), None) => FiniteGroup::symmetric3(),
                    (None, Some(n), None) => {
                        return Err(invalid(format!("'{id}': only the symmetric group on 3 letters is built in, got {n}")))
                    }
                    (None, None, Some(t)) => FiniteGroup::from_table(t.clone()).map_err(at(id))?,
                    _ => return Err(invalid(format!("'{id}': give exactly one of cyclic, symmetric, table"))),
                };
                let pair = GroupPair::new(group).map_err(at(id))?;
                self.groups.insert(id.clone(), GroupEntry { pair: Arc::new(pair) });
            }
            Directive::Bicharacter { id, group, cyclic_power, pairing, matrix, preset } => {
                let pair = self.group(group)?.pair.clone();
                let qg = pair.qg.clone();
                let n = pair.group.order();
                let given = [cyclic_power.is_some(), pairing.is_some(), matrix.is_some(), preset.is_some()];
                if given.iter().filter(|&&x| x).count() != 1 {
                    return Err(invalid(format!(
                        "'{id}': give exactly one of cyclic_power, pairing, matrix, preset"
                    )));
                }
                let chi = if let Some(k) = cyclic_power {
                    if pair.group != FiniteGroup::cyclic(n) {
                        return Err(invalid(format!("'{id}': cyclic_power needs a cyclic group")));
                    }
                    bicharacter_from_pairing(qg, &AbelianPairing::cyclic(n, *k), tol).map_err(at(id))?
                } else if let Some(p) = pairing {
                    let values = matrix_from_payload(p, n, n, "pairing")?;
                    let p = AbelianPairing::new(&pair.group, values, tol).map_err(at(id))?;
                    bicharacter_from_pairing(qg, &p, tol).map_err(at(id))?
                } else if let Some(m) = matrix {
                    let m = matrix_from_payload(m, n * n, n * n, "bicharacter matrix")?;
                    let m = UnitaryMatrix::new(m, tol).map_err(at(id))?.into_inner();
                    Bicharacter::unchecked(qg.clone(), qg, m).map_err(at(id))?
                } else {
                    match preset.expect("one field is set") {
                        BicharacterPreset::Trivial => Bicharacter::trivial(qg.clone(), qg),
                        BicharacterPreset::MultiplicativeUnitary => {
                            Bicharacter::from_unitary(qg, pair.dual.clone(), tol).map_err(at(id))?
                        }
                    }
                };
                self.bicharacters.insert(id.clone(), BicharacterEntry { group: group.clone(), chi });
            }
            Directive::Coaction { id, group, construction, algebra, degrees, function_side } => {
                let pair = self.group(group)?.pair.clone();
                let qg: &Arc<QuantumGroup> = if *function_side { &pair.dual } else { &pair.qg };
                let rep = match construction {
                    CoactionConstruction::Comultiplication => {
                        if algebra.is_some() || degrees.is_some() {
                            return Err(invalid(format!("'{id}': comultiplication takes no algebra or degrees")));
                        }
                        standard_covariant_rep(qg, tol).map_err(at(id))?
                    }
                    CoactionConstruction::Grading => {
                        if *function_side {
                            return Err(invalid(format!("'{id}': gradings are coactions of the group algebra side")));
                        }
                        let degrees = match (algebra, degrees) {
                            (_, Some(d)) => d.clone(),
                            (Some(AlgebraName::Clifford1), None) => vec![0, 1],
                            _ => return Err(invalid(format!("'{id}': grading needs degrees"))),
                        };
                        let n = pair.group.order();
                        if let Some(&g) = degrees.iter().find(|&&g| g >= n) {
                            return Err(invalid(format!("'{id}': degree {g} is not a group element")));
                        }
                        let alg = algebra_named(id, algebra.unwrap_or(AlgebraName::Diagonal), degrees.len())?;
                        let u = grading_corepresentation(qg, &pair.group, &coordinate_grading(&degrees, n), tol)
                            .map_err(at(id))?;
                        let gamma = graded_coaction(alg, &u, tol).map_err(at(id))?;
                        inclusion_rep(&gamma, &u)
                    }
                    CoactionConstruction::Trivial => {
                        let size = degrees.as_ref().map_or(2, Vec::len);
                        let alg = algebra_named(id, algebra.unwrap_or(AlgebraName::Clifford1), size)?;
                        let h = alg.ambient_dim();
                        inclusion_rep(
                            &Coaction::trivial(alg, qg.bialgebra().clone()),
                            &Corepresentation::trivial(qg.bialgebra().clone(), h),
                        )
                    }
                };
                self.coactions.insert(id.clone(), CoactionEntry { group: group.clone(), rep });
            }
            Directive::BraidedBialgebra { id, group, structure, table, on, action, function_side } => {
                let pair = self.group(group)?.pair.clone();
                let (qg, dual) = if *function_side {
                    (&pair.dual, &pair.qg)
                } else {
                    (&pair.qg, &pair.dual)
                };
                let regular = || pair.regular_yd_rep(*function_side, tol).map_err(at(id));
                let (a, b) = match structure {
                    BialgebraStructure::Scalars => (regular()?, scalar_bialgebra(qg, dual, tol).map_err(at(id))?),
                    BialgebraStructure::Degenerate => {
                        (regular()?, degenerate_bialgebra(qg, dual, tol).map_err(at(id))?)
                    }
                    BialgebraStructure::Functions => match (on, table) {
                        (Some(k), None) => {
                            let k = self.group(k)?.pair.group.clone();
                            let action = match action {
                                Some(a) => a.clone(),
                                None => vec![(0..k.order()).collect(); pair.group.order()],
                            };
                            action_bialgebra(&pair, &k, &action, *function_side, tol).map_err(at(id))?
                        }
                        (None, Some(t)) => {
                            if action.is_some() {
                                return Err(invalid(format!("'{id}': an action needs a group given by 'on'")));
                            }
                            validate_semigroup(t).map_err(|e| invalid(format!("'{id}': {e}")))?;
                            (regular()?, trivial_function_bialgebra(id, qg, dual, t, tol).map_err(at(id))?)
                        }
                        _ => return Err(invalid(format!("'{id}': functions need exactly one of 'on' and 'table'"))),
                    },
                };
                self.bialgebras.insert(id.clone(), BialgebraEntry { group: group.clone(), a, b });
            }
        }
        Ok(())
    }
}

fn algebra_named(
    id: &str,
    name: AlgebraName,
    size: usize,
) -> Result<Arc<braidbox_core::algebra::StarAlgebra>, LoadError> {
    match name {
        AlgebraName::Clifford1 if size == 2 => Ok(clifford1()),
        AlgebraName::Clifford1 => Err(invalid(format!("'{id}': clifford1 lives on a 2-dimensional space"))),
        AlgebraName::Diagonal if size > 0 => Ok(diagonal_algebra(size)),
        AlgebraName::Diagonal => Err(invalid(format!("'{id}': diagonal algebra needs a positive size"))),
    }
}
