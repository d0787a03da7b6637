//! Low-index search: every connected covering of bounded degree, one per
//! isomorphism class.
//!
//! Backtracking over partial coset tables. The lowest undefined entry is
//! filled either with an existing coset whose inverse slot is free or with
//! the next unused coset number, so every complete table reached is
//! already standardized and each subgroup is met exactly once. Relator
//! consequences are propagated after each choice; a forced coincidence
//! kills the branch. A complete table is kept only when it is the least
//! of its basepoint relocations, which picks one table per conjugacy
//! class.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{covering_morphisms, deck_group, CoveringError};
use crate::enumerator::{conjugates_by_column, CosetTable};
use crate::words::Presentation;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 10_000_000 }
    }
}

#[derive(Clone)]
struct Partial {
    rows: usize,
    table: Vec<usize>,
}

struct Search<'a> {
    columns: usize,
    max_degree: usize,
    conjugates: Vec<Vec<Vec<usize>>>,
    budget: &'a SearchBudget,
    nodes: usize,
    found: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

impl Partial {
    #[inline]
    fn get(&self, columns: usize, c: usize, col: usize) -> usize {
        self.table[c * columns + col]
    }
}

impl Search<'_> {
    fn assign(&self, p: &mut Partial, c: usize, col: usize, d: usize) -> bool {
        let cols = self.columns;
        p.table[c * cols + col] = d;
        p.table[d * cols + (col ^ 1)] = c;
        let mut stack = vec![(c, col)];
        while let Some((c, col)) = stack.pop() {
            for word in &self.conjugates[col] {
                if !scan(p, cols, c, word, &mut stack) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, p: Partial) -> Result<(), CoveringError> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(CoveringError::BudgetExceeded(self.budget.max_nodes));
        }
        let cols = self.columns;
        let hole = (0..p.rows * cols).find(|&i| p.table[i] == NONE);
        let Some(i) = hole else {
            self.found.push(p.table[..p.rows * cols].to_vec());
            self.sizes.push(p.rows);
            return Ok(());
        };
        let (c, col) = (i / cols, i % cols);
        for d in 0..p.rows {
            if p.get(cols, d, col ^ 1) == NONE {
                let mut q = p.clone();
                if self.assign(&mut q, c, col, d) {
                    self.run(q)?;
                }
            }
        }
        if p.rows < self.max_degree {
            let mut q = p.clone();
            let d = q.rows;
            q.rows += 1;
            if self.assign(&mut q, c, col, d) {
                self.run(q)?;
            }
        }
        Ok(())
    }
}

// Scans one relator cycle from c; records a deduction for a single gap.
// Returns false if the cycle closes up at the wrong coset.
fn scan(p: &mut Partial, cols: usize, c: usize, word: &[usize], stack: &mut Vec<(usize, usize)>) -> bool {
    let n = word.len();
    let mut f = c;
    let mut i = 0;
    while i < n {
        let next = p.table[f * cols + word[i]];
        if next == NONE {
            break;
        }
        f = next;
        i += 1;
    }
    if i == n {
        return f == c;
    }
    let mut b = c;
    let mut j = n;
    while j > i {
        let prev = p.table[b * cols + (word[j - 1] ^ 1)];
        if prev == NONE {
            break;
        }
        b = prev;
        j -= 1;
    }
    if j == i {
        return f == b;
    }
    if j == i + 1 {
        p.table[f * cols + word[i]] = b;
        p.table[b * cols + (word[i] ^ 1)] = f;
        stack.push((f, word[i]));
    }
    true
}

/// All connected coverings of degree at most `max_degree`, one per
/// isomorphism class, ordered by degree and then by table entries.
pub fn low_index_coverings(
    presentation: &Arc<Presentation>,
    max_degree: usize,
    budget: &SearchBudget,
) -> Result<Vec<CosetTable>, CoveringError> {
    if max_degree == 0 {
        return Err(CoveringError::InvalidDegree);
    }
    let columns = 2 * presentation.num_generators();
    let mut search = Search {
        columns,
        max_degree,
        conjugates: conjugates_by_column(presentation),
        budget,
        nodes: 0,
        found: Vec::new(),
        sizes: Vec::new(),
    };
    let root = Partial { rows: 1, table: vec![NONE; max_degree * columns] };
    search.run(root)?;

    let mut tables: Vec<CosetTable> = search
        .found
        .into_iter()
        .zip(search.sizes)
        .map(|(entries, n)| {
            let images: Vec<Vec<usize>> =
                (0..columns / 2).map(|g| (0..n).map(|c| entries[c * columns + 2 * g]).collect()).collect();
            CosetTable::from_permutations(presentation.clone(), &images, 0)
                .expect("complete search tables satisfy all relators")
        })
        .filter(|t| {
            debug_assert!(t.check_invariants().is_ok());
            (1..t.num_cosets()).all(|b| t.relocated_entries(b).as_slice() >= t.entries())
        })
        .collect();
    tables.sort_by(|a, b| a.num_cosets().cmp(&b.num_cosets()).then_with(|| a.entries().cmp(b.entries())));
    Ok(tables)
}

/// Hom-set sizes between the connected coverings of bounded degree: the
/// orbit category restricted to those objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCategory {
    pub coverings: Vec<CosetTable>,
    /// `homs[i][j]` = number of covering maps from covering `i` to covering `j`.
    pub homs: Vec<Vec<usize>>,
}

impl OrbitCategory {
    pub fn degrees(&self) -> Vec<usize> {
        self.coverings.iter().map(|t| t.num_cosets()).collect()
    }

    /// Orders of the automorphism (deck) groups, the diagonal of `homs`.
    pub fn aut_orders(&self) -> Vec<usize> {
        (0..self.homs.len()).map(|i| self.homs[i][i]).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degrees": self.degrees(),
            "homs": self.homs,
            "aut_orders": self.aut_orders(),
        })
    }
}

pub fn orbit_category(
    presentation: &Arc<Presentation>,
    max_degree: usize,
    budget: &SearchBudget,
) -> Result<OrbitCategory, CoveringError> {
    let coverings = low_index_coverings(presentation, max_degree, budget)?;
    let homs = coverings
        .iter()
        .map(|a| {
            coverings
                .iter()
                .map(|b| if std::ptr::eq(a, b) { deck_group(a).order() } else { covering_morphisms(a, b).len() })
                .collect()
        })
        .collect();
    Ok(OrbitCategory { coverings, homs })
}
