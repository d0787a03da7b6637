use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::words::{Letter, Presentation, Word};

/// A point of the fibre `H\G`; coset 0 is the basepoint `H`.
pub type Coset = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("coset {coset} out of range (table has {num_cosets} cosets)")]
    CosetOutOfRange { coset: Coset, num_cosets: usize },
    #[error("word uses a generator the presentation does not have")]
    ForeignWord,
    #[error("generator {generator} does not act as a permutation")]
    NotAPermutation { generator: usize },
    #[error("expected {expected} generator actions, got {found}")]
    WrongGeneratorCount { expected: usize, found: usize },
    #[error("relator {relator} does not act as the identity (at point {point})")]
    RelatorViolation { relator: usize, point: usize },
    #[error("action is not transitive")]
    NotTransitive,
    #[error("action has degree 0")]
    Empty,
}

/// One of the structural properties every complete coset table satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("entry ({coset}, {column}) is undefined")]
    Totality { coset: Coset, column: usize },
    #[error("entry ({coset}, {column}) is not inverse to its partner")]
    InverseConsistency { coset: Coset, column: usize },
    #[error("relator {relator} does not close at coset {coset}")]
    RelatorClosure { relator: usize, coset: Coset },
    #[error("subgroup generator {index} does not fix the basepoint")]
    SubgroupClosure { index: usize },
    #[error("table is not in breadth-first standard form")]
    Standardization,
}

/// A complete coset table: the right action of `G` on `H\G`.
///
/// Columns are indexed by [`Letter::column`]: `2g` for generator `g`,
/// `2g + 1` for its inverse. Tables are always standardized, so two
/// tables describe the same subgroup exactly when they are equal.
/// Equality ignores which words were used to generate the subgroup.
#[derive(Clone)]
pub struct CosetTable {
    presentation: Arc<Presentation>,
    subgroup_gens: Vec<Word>,
    num_cosets: usize,
    columns: usize,
    table: Vec<Coset>,
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.num_cosets == other.num_cosets && self.table == other.table && self.presentation == other.presentation
    }
}

impl Eq for CosetTable {}

impl std::hash::Hash for CosetTable {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num_cosets.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CosetTable")
            .field("num_cosets", &self.num_cosets)
            .field("rows", &self.table.chunks(self.columns.max(1)).collect::<Vec<_>>())
            .finish()
    }
}

/// BFS renumbering from `base`: returns old -> new map (None if unreachable)
/// and new -> old order.
pub(crate) fn standard_order(
    columns: usize,
    n: usize,
    base: Coset,
    entry: impl Fn(Coset, usize) -> Coset,
) -> (Vec<Option<Coset>>, Vec<Coset>) {
    let mut new_of = vec![None; n];
    let mut order = Vec::with_capacity(n);
    new_of[base] = Some(0);
    order.push(base);
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for col in 0..columns {
            let d = entry(c, col);
            if new_of[d].is_none() {
                new_of[d] = Some(order.len());
                order.push(d);
            }
        }
        i += 1;
    }
    (new_of, order)
}

impl CosetTable {
    /// Assembles a table from a complete raw table. Callers guarantee
    /// totality, inverse consistency and standard numbering.
    pub(crate) fn from_raw(
        presentation: Arc<Presentation>,
        subgroup_gens: Vec<Word>,
        num_cosets: usize,
        table: Vec<Coset>,
    ) -> Self {
        let columns = 2 * presentation.num_generators();
        debug_assert_eq!(table.len(), num_cosets * columns);
        CosetTable { presentation, subgroup_gens, num_cosets, columns, table }
    }

    /// Builds the table of a transitive action given by one permutation
    /// (image list) per generator. Point `base` becomes coset 0; the
    /// subgroup generators are Schreier generators of its stabilizer.
    pub fn from_permutations(
        presentation: Arc<Presentation>,
        images: &[Vec<usize>],
        base: usize,
    ) -> Result<Self, TableError> {
        let degree = validate_action(&presentation, images)?;
        if base >= degree {
            return Err(TableError::CosetOutOfRange { coset: base, num_cosets: degree });
        }
        let columns = 2 * presentation.num_generators();
        let inverses: Vec<Vec<usize>> = images
            .iter()
            .map(|perm| {
                let mut inv = vec![0; perm.len()];
                for (i, &j) in perm.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        let entry = |c: usize, col: usize| {
            let l = Letter::from_column(col);
            if l.inverted {
                inverses[l.generator][c]
            } else {
                images[l.generator][c]
            }
        };
        let (new_of, order) = standard_order(columns, degree, base, entry);
        if order.len() != degree {
            return Err(TableError::NotTransitive);
        }
        let mut table = Vec::with_capacity(degree * columns);
        for &old in &order {
            for col in 0..columns {
                table.push(new_of[entry(old, col)].expect("transitive"));
            }
        }
        let mut t = CosetTable::from_raw(presentation, Vec::new(), degree, table);
        t.subgroup_gens = t.schreier_generators();
        Ok(t)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn shared_presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_gens
    }

    /// Index `|G : H|`, the covering degree.
    pub fn num_cosets(&self) -> usize {
        self.num_cosets
    }

    pub fn num_generators(&self) -> usize {
        self.columns / 2
    }

    pub fn num_columns(&self) -> usize {
        self.columns
    }

    #[inline]
    pub fn entry(&self, coset: Coset, column: usize) -> Coset {
        self.table[coset * self.columns + column]
    }

    #[inline]
    pub fn image(&self, coset: Coset, letter: Letter) -> Coset {
        self.entry(coset, letter.column())
    }

    pub fn row(&self, coset: Coset) -> &[Coset] {
        &self.table[coset * self.columns..(coset + 1) * self.columns]
    }

    /// Flat row-major entries, used for ordering tables.
    pub fn entries(&self) -> &[Coset] {
        &self.table
    }

    /// Right action of a word: the endpoint of the lift of `word` starting
    /// at `coset`.
    pub fn act(&self, coset: Coset, word: &Word) -> Result<Coset, TableError> {
        if coset >= self.num_cosets {
            return Err(TableError::CosetOutOfRange { coset, num_cosets: self.num_cosets });
        }
        if !self.presentation.contains_word(word) {
            return Err(TableError::ForeignWord);
        }
        Ok(self.act_unchecked(coset, word))
    }

    pub(crate) fn act_unchecked(&self, mut coset: Coset, word: &Word) -> Coset {
        for s in word.syllables() {
            let col = Letter::new(s.generator, s.exponent < 0).column();
            // Powers of a permutation cycle; reduce long runs modulo the cycle length.
            let steps = s.exponent.unsigned_abs();
            if steps as usize > self.num_cosets {
                let mut cycle = 1u64;
                let mut c = self.entry(coset, col);
                while c != coset {
                    c = self.entry(c, col);
                    cycle += 1;
                }
                for _ in 0..steps % cycle {
                    coset = self.entry(coset, col);
                }
            } else {
                for _ in 0..steps {
                    coset = self.entry(coset, col);
                }
            }
        }
        coset
    }

    /// Image list of generator `g` (the forward column).
    pub fn permutation(&self, generator: usize) -> Vec<Coset> {
        (0..self.num_cosets).map(|c| self.entry(c, 2 * generator)).collect()
    }

    pub fn permutations(&self) -> Vec<Vec<Coset>> {
        (0..self.num_generators()).map(|g| self.permutation(g)).collect()
    }

    /// Shortest-in-BFS-order words `t_c` with `0 . t_c = c`.
    pub fn transversal(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.num_cosets];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for col in 0..self.columns {
                let d = self.entry(c, col);
                if words[d].is_none() {
                    let w = words[c].as_ref().expect("visited") * &Word::from_letters([Letter::from_column(col)]);
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.expect("table is transitive")).collect()
    }

    /// Schreier generators of the basepoint stabilizer, one per
    /// positively labelled edge outside the BFS spanning tree. For a free
    /// presentation they form a free basis of `H`.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let t = self.transversal();
        let mut tree = vec![None; self.num_cosets];
        let mut seen = vec![false; self.num_cosets];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for col in 0..self.columns {
                let d = self.entry(c, col);
                if !seen[d] {
                    seen[d] = true;
                    // Record the tree edge in its positive orientation.
                    let l = Letter::from_column(col);
                    tree[d] = Some(if l.inverted { (d, l.generator) } else { (c, l.generator) });
                    queue.push_back(d);
                }
            }
        }
        let tree_edges: std::collections::HashSet<(usize, usize)> = tree.into_iter().flatten().collect();
        let mut gens = Vec::new();
        for c in 0..self.num_cosets {
            for g in 0..self.num_generators() {
                if tree_edges.contains(&(c, g)) {
                    continue;
                }
                let d = self.entry(c, 2 * g);
                gens.push(&(&t[c] * &Word::generator(g)) * &t[d].inverse());
            }
        }
        gens
    }

    /// The same covering with basepoint moved to `base`, restandardized.
    pub fn relocated(&self, base: Coset) -> Result<CosetTable, TableError> {
        CosetTable::from_permutations(self.presentation.clone(), &self.permutations(), base)
    }

    /// Flat entries of the table restandardized at `base`, without
    /// building the full table.
    pub(crate) fn relocated_entries(&self, base: Coset) -> Vec<Coset> {
        let (new_of, order) = standard_order(self.columns, self.num_cosets, base, |c, col| self.entry(c, col));
        let mut out = Vec::with_capacity(self.table.len());
        for &old in &order {
            for col in 0..self.columns {
                out.push(new_of[self.entry(old, col)].expect("transitive"));
            }
        }
        out
    }

    /// Checks totality, inverse consistency, relator closure, subgroup
    /// closure and standard numbering.
    pub fn check_invariants(&self) -> Result<(), InvariantViolation> {
        for c in 0..self.num_cosets {
            for col in 0..self.columns {
                let d = self.entry(c, col);
                if d >= self.num_cosets {
                    return Err(InvariantViolation::Totality { coset: c, column: col });
                }
                if self.entry(d, col ^ 1) != c {
                    return Err(InvariantViolation::InverseConsistency { coset: c, column: col });
                }
            }
        }
        for (i, r) in self.presentation.relators().iter().enumerate() {
            for c in 0..self.num_cosets {
                if self.act_unchecked(c, r) != c {
                    return Err(InvariantViolation::RelatorClosure { relator: i, coset: c });
                }
            }
        }
        for (i, w) in self.subgroup_gens.iter().enumerate() {
            if self.act_unchecked(0, w) != 0 {
                return Err(InvariantViolation::SubgroupClosure { index: i });
            }
        }
        if self.relocated_entries(0) != self.table {
            return Err(InvariantViolation::Standardization);
        }
        Ok(())
    }

    /// JSON export: generators, subgroup words, index, and one image array
    /// per generator and inverse.
    pub fn to_json(&self) -> Value {
        let names = self.presentation.generator_names();
        let mut action = Map::new();
        for (g, name) in names.iter().enumerate() {
            let fwd: Vec<Coset> = (0..self.num_cosets).map(|c| self.entry(c, 2 * g)).collect();
            let bwd: Vec<Coset> = (0..self.num_cosets).map(|c| self.entry(c, 2 * g + 1)).collect();
            action.insert(name.clone(), json!(fwd));
            action.insert(format!("{name}^-1"), json!(bwd));
        }
        json!({
            "generators": names,
            "subgroup": self.subgroup_gens.iter().map(|w| w.display(names).to_string()).collect::<Vec<_>>(),
            "num_cosets": self.num_cosets,
            "action": action,
        })
    }
}

/// Checks that `images` is one permutation per generator, all of the same
/// degree, with every relator acting trivially. Returns the degree.
pub(crate) fn validate_action(presentation: &Presentation, images: &[Vec<usize>]) -> Result<usize, TableError> {
    if images.len() != presentation.num_generators() {
        return Err(TableError::WrongGeneratorCount {
            expected: presentation.num_generators(),
            found: images.len(),
        });
    }
    let degree = match images.first() {
        Some(p) => p.len(),
        None => return Err(TableError::Empty),
    };
    if degree == 0 {
        return Err(TableError::Empty);
    }
    for (g, perm) in images.iter().enumerate() {
        if perm.len() != degree {
            return Err(TableError::NotAPermutation { generator: g });
        }
        let mut hit = vec![false; degree];
        for &j in perm {
            if j >= degree || std::mem::replace(&mut hit[j], true) {
                return Err(TableError::NotAPermutation { generator: g });
            }
        }
    }
    let inverses: Vec<Vec<usize>> = images
        .iter()
        .map(|perm| {
            let mut inv = vec![0; degree];
            for (i, &j) in perm.iter().enumerate() {
                inv[j] = i;
            }
            inv
        })
        .collect();
    for (i, r) in presentation.relators().iter().enumerate() {
        for point in 0..degree {
            let mut c = point;
            for s in r.syllables() {
                let perm = if s.exponent < 0 { &inverses[s.generator] } else { &images[s.generator] };
                c = apply_power(perm, c, s.exponent.unsigned_abs());
            }
            if c != point {
                return Err(TableError::RelatorViolation { relator: i, point });
            }
        }
    }
    Ok(degree)
}

// c . perm^steps, reducing `steps` modulo the length of c's cycle.
pub(crate) fn apply_power(perm: &[usize], mut c: usize, steps: u64) -> usize {
    let steps = if steps as usize > perm.len() {
        let mut cycle = 1u64;
        let mut d = perm[c];
        while d != c {
            d = perm[d];
            cycle += 1;
        }
        steps % cycle
    } else {
        steps
    };
    for _ in 0..steps {
        c = perm[c];
    }
    c
}
