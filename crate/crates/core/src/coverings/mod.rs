//! Coverings of a presentation complex, as right `G`-sets.
//!
//! A connected covering is a transitive [`CosetTable`]; a general
//! covering is a [`MonodromyAction`], which splits into its orbits. Maps
//! of coverings are `G`-equivariant maps of fibres. A map out of a
//! transitive `G`-set is fixed by where it sends the basepoint, so every
//! hom-set is found by trying each basepoint image and propagating.

mod low_index;

use std::collections::VecDeque;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::enumerator::{validate_action, Coset, CosetTable, TableError};
use crate::words::Presentation;

pub use low_index::{low_index_coverings, orbit_category, OrbitCategory, SearchBudget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("relator {relator} acts nontrivially on fibre point {point}; not a covering of the presentation complex")]
    RelatorViolation { relator: usize, point: usize },
    #[error("invalid monodromy action: {0}")]
    InvalidAction(TableError),
    #[error("low-index search exceeded its budget of {0} nodes")]
    BudgetExceeded(usize),
    #[error("maximum degree must be at least 1")]
    InvalidDegree,
}

impl From<TableError> for CoveringError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::RelatorViolation { relator, point } => CoveringError::RelatorViolation { relator, point },
            other => CoveringError::InvalidAction(other),
        }
    }
}

/// A finite right `G`-set: one permutation of `{0, .., degree-1}` per
/// generator, with every relator acting trivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyAction {
    presentation: Arc<Presentation>,
    degree: usize,
    action: Vec<Vec<usize>>,
}

impl MonodromyAction {
    pub fn new(presentation: Arc<Presentation>, action: Vec<Vec<usize>>) -> Result<Self, CoveringError> {
        let degree = validate_action(&presentation, &action)?;
        Ok(MonodromyAction { presentation, degree, action })
    }

    pub fn from_table(table: &CosetTable) -> Self {
        MonodromyAction {
            presentation: table.shared_presentation().clone(),
            degree: table.num_cosets(),
            action: table.permutations(),
        }
    }

    /// Disjoint union, the second summand's points shifted past the first's.
    pub fn disjoint_union(&self, other: &MonodromyAction) -> MonodromyAction {
        assert_eq!(self.action.len(), other.action.len(), "actions of different groups");
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&x| x + self.degree)).collect())
            .collect();
        MonodromyAction { presentation: self.presentation.clone(), degree: self.degree + other.degree, action }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn permutation(&self, generator: usize) -> &[usize] {
        &self.action[generator]
    }

    /// Orbits as sorted point lists, ordered by smallest point.
    pub fn orbit_points(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.degree];
        for perm in &self.action {
            for (i, &j) in perm.iter().enumerate() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        orbit.push(w);
                        queue.push_back(w);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// Splits a covering into its connected components, one standardized
/// transitive table per orbit, based at the orbit's smallest point.
pub fn orbits(action: &MonodromyAction) -> Vec<CosetTable> {
    action
        .orbit_points()
        .into_iter()
        .map(|points| {
            let mut local = vec![usize::MAX; action.degree];
            for (i, &p) in points.iter().enumerate() {
                local[p] = i;
            }
            let images: Vec<Vec<usize>> = action
                .action
                .iter()
                .map(|perm| points.iter().map(|&p| local[perm[p]]).collect())
                .collect();
            CosetTable::from_permutations(action.presentation.clone(), &images, 0)
                .expect("an orbit of a valid action is a valid transitive action")
        })
        .collect()
}

/// Fibre points fixed by every generator: the sections of the covering.
pub fn sections(action: &MonodromyAction) -> Vec<usize> {
    (0..action.degree).filter(|&x| action.action.iter().all(|perm| perm[x] == x)).collect()
}

/// The `G`-map `from -> to` sending coset 0 to `target`, if one exists.
pub fn equivariant_map(from: &CosetTable, to: &CosetTable, target: Coset) -> Option<Vec<Coset>> {
    const UNSET: usize = usize::MAX;
    let mut phi = vec![UNSET; from.num_cosets()];
    phi[0] = target;
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for col in 0..from.num_columns() {
            let d = from.entry(c, col);
            let img = to.entry(phi[c], col);
            if phi[d] == UNSET {
                phi[d] = img;
                queue.push_back(d);
            } else if phi[d] != img {
                return None;
            }
        }
    }
    Some(phi)
}

/// All covering maps `from -> to`, in order of the image of the basepoint.
///
/// Both tables must come from presentations with the same generators.
pub fn covering_morphisms(from: &CosetTable, to: &CosetTable) -> Vec<Vec<Coset>> {
    assert_eq!(from.num_generators(), to.num_generators(), "tables over different presentations");
    (0..to.num_cosets()).filter_map(|c| equivariant_map(from, to, c)).collect()
}

/// True if the two connected coverings are isomorphic (the subgroups are
/// conjugate).
pub fn is_isomorphic(a: &CosetTable, b: &CosetTable) -> bool {
    a.num_cosets() == b.num_cosets() && (0..b.num_cosets()).any(|c| equivariant_map(a, b, c).is_some())
}

/// The deck transformation group of a connected covering, as permutations
/// of its fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckGroup {
    elements: Vec<Vec<Coset>>,
}

impl DeckGroup {
    pub fn elements(&self) -> &[Vec<Coset>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        let compose = |p: &[Coset], q: &[Coset]| p.iter().map(|&x| q[x]).collect::<Vec<_>>();
        self.elements.iter().all(|p| self.elements.iter().all(|q| compose(p, q) == compose(q, p)))
    }

    pub fn to_json(&self) -> Value {
        json!({ "order": self.order(), "elements": self.elements })
    }
}

pub fn deck_group(table: &CosetTable) -> DeckGroup {
    DeckGroup { elements: covering_morphisms(table, table) }
}

/// A connected covering is normal when its deck group is transitive on the
/// fibre.
pub fn is_normal(table: &CosetTable) -> bool {
    deck_group(table).order() == table.num_cosets()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{coset_enumerate, EnumerationLimits};
    use crate::words::{parse_presentation, parse_word_list};

    fn table_in(p: &Arc<Presentation>, subgroup: &str) -> CosetTable {
        let h = parse_word_list(subgroup, p).unwrap();
        coset_enumerate(p, &h, &EnumerationLimits::default()).unwrap()
    }

    fn pres(s: &str) -> Arc<Presentation> {
        Arc::new(parse_presentation(s).unwrap())
    }

    #[test]
    fn orbit_decomposition() {
        let p = pres("<a|a^2>");
        let one = table_in(&p, "a");
        let two = table_in(&p, "");
        let u = MonodromyAction::from_table(&one).disjoint_union(&MonodromyAction::from_table(&two));
        let comps = orbits(&u);
        assert_eq!(comps.iter().map(|t| t.num_cosets()).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(comps[1], two);
        assert_eq!(orbits(&MonodromyAction::from_table(&two)), vec![two.clone()]);
        assert_eq!(sections(&u), vec![0]);
    }

    #[test]
    fn two_point_actions_of_free_group() {
        let p = pres("<a,b|>");
        let count = |a: Vec<usize>, b: Vec<usize>| orbits(&MonodromyAction::new(p.clone(), vec![a, b]).unwrap()).len();
        assert_eq!(count(vec![1, 0], vec![1, 0]), 1);
        assert_eq!(count(vec![1, 0], vec![0, 1]), 1);
        assert_eq!(count(vec![0, 1], vec![0, 1]), 2);
    }

    #[test]
    fn rejects_non_coverings() {
        let p = pres("<a|a^2>");
        assert_eq!(
            MonodromyAction::new(p.clone(), vec![vec![1, 2, 0]]),
            Err(CoveringError::RelatorViolation { relator: 0, point: 0 })
        );
        assert!(matches!(
            MonodromyAction::new(p.clone(), vec![vec![0, 0]]),
            Err(CoveringError::InvalidAction(TableError::NotAPermutation { generator: 0 }))
        ));
        assert!(matches!(
            MonodromyAction::new(p, vec![]),
            Err(CoveringError::InvalidAction(TableError::WrongGeneratorCount { .. }))
        ));
    }

    #[test]
    fn infinite_dihedral_decks() {
        let p = pres("<a,b|a^2,b^2>");
        let t6 = table_in(&p, "(a b)^3");
        let d = deck_group(&t6);
        assert_eq!(d.order(), 6);
        assert!(!d.is_abelian());
        assert!(is_normal(&t6));
        let t3 = table_in(&p, "(a b)^3, a");
        assert_eq!(deck_group(&t3).order(), 1);
        assert!(!is_normal(&t3));
    }

    #[test]
    fn circle_morphisms() {
        let p = pres("<a|>");
        let t6 = table_in(&p, "a^6");
        let t3 = table_in(&p, "a^3");
        let t2 = table_in(&p, "a^2");
        let t1 = table_in(&p, "a");
        assert_eq!(covering_morphisms(&t6, &t3).len(), 3);
        assert_eq!(covering_morphisms(&t2, &t3).len(), 0);
        assert_eq!(covering_morphisms(&t1, &t1).len(), 1);
        assert!(is_isomorphic(&t3, &t3));
        assert!(!is_isomorphic(&t3, &t6));
    }

    #[test]
    fn sections_examples() {
        let p = pres("<a,b|a^2,b^3,(a b)^2>");
        let t3 = table_in(&p, "a");
        let t1 = table_in(&p, "a, b");
        assert!(sections(&MonodromyAction::from_table(&t3)).is_empty());
        assert_eq!(sections(&MonodromyAction::from_table(&t1)), vec![0]);
        let u = MonodromyAction::from_table(&t1).disjoint_union(&MonodromyAction::from_table(&t3));
        assert_eq!(sections(&u), vec![0]);
        let u = MonodromyAction::from_table(&t3).disjoint_union(&MonodromyAction::from_table(&t1));
        assert_eq!(sections(&u), vec![3]);
        assert_eq!(orbits(&u).iter().map(|t| t.num_cosets()).collect::<Vec<_>>(), vec![3, 1]);
    }
}
