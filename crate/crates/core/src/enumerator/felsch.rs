//! Felsch-style Todd–Coxeter enumeration over a growable partial table.
//!
//! Definitions always fill the lowest undefined entry. Every definition
//! and deduction is pushed on a stack and scanned through each cyclic
//! conjugate of each relator (and its inverse) starting with that
//! column. Coincidences are resolved with a union-find queue, the smaller
//! coset surviving.

use super::{EnumerationError, EnumerationLimits, Limit};
use crate::words::{Presentation, Word};

pub(crate) const NONE: usize = usize::MAX;

/// Column sequences of all cyclic conjugates of the relators and their
/// inverses, bucketed by first column.
pub(crate) fn conjugates_by_column(presentation: &Presentation) -> Vec<Vec<Vec<usize>>> {
    let columns = 2 * presentation.num_generators();
    let mut by_col: Vec<Vec<Vec<usize>>> = vec![Vec::new(); columns];
    for r in presentation.relators() {
        let r = r.cyclic_reduce();
        for w in [r.clone(), r.inverse()] {
            let cols: Vec<usize> = w.letters().map(|l| l.column()).collect();
            for k in 0..cols.len() {
                let rot: Vec<usize> = cols[k..].iter().chain(&cols[..k]).copied().collect();
                if !by_col[rot[0]].contains(&rot) {
                    by_col[rot[0]].push(rot);
                }
            }
        }
    }
    by_col
}

pub(crate) struct Felsch<'a> {
    columns: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    live: usize,
    definitions: usize,
    deductions: Vec<(usize, usize)>,
    conjugates: Vec<Vec<Vec<usize>>>,
    relators: Vec<Vec<usize>>,
    subgroup: Vec<Vec<usize>>,
    limits: &'a EnumerationLimits,
}

enum Scan {
    Done,
    Coincidence(usize, usize),
}

impl<'a> Felsch<'a> {
    pub(crate) fn new(presentation: &Presentation, subgroup: &[Word], limits: &'a EnumerationLimits) -> Self {
        let columns = 2 * presentation.num_generators();
        let cols = |w: &Word| w.letters().map(|l| l.column()).collect::<Vec<_>>();
        Felsch {
            columns,
            table: vec![NONE; columns],
            parent: vec![0],
            live: 1,
            definitions: 0,
            deductions: Vec::new(),
            conjugates: conjugates_by_column(presentation),
            relators: presentation
                .relators()
                .iter()
                .map(|r| cols(&r.cyclic_reduce()))
                .filter(|r| !r.is_empty())
                .collect(),
            subgroup: subgroup.iter().map(cols).filter(|w| !w.is_empty()).collect(),
            limits,
        }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> usize {
        self.table[c * self.columns + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, d: usize) {
        self.table[c * self.columns + col] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, col: usize) -> Result<usize, EnumerationError> {
        if self.live >= self.limits.max_cosets {
            return Err(EnumerationError::LimitExceeded(Limit::MaxCosets(self.limits.max_cosets)));
        }
        if self.definitions >= self.limits.max_definitions {
            return Err(EnumerationError::LimitExceeded(Limit::MaxDefinitions(self.limits.max_definitions)));
        }
        let d = self.parent.len();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.columns));
        self.live += 1;
        self.definitions += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        self.deductions.push((c, col));
        Ok(d)
    }

    /// Scans `word` from `c` in both directions; fills a single gap as a
    /// deduction. With `fill`, larger gaps are closed by new definitions.
    fn scan(&mut self, c: usize, word: &[usize], fill: bool) -> Result<Scan, EnumerationError> {
        let n = word.len();
        let mut f = c;
        let mut i = 0;
        loop {
            while i < n {
                let next = self.get(f, word[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == n {
                return Ok(if f != c { Scan::Coincidence(f, c) } else { Scan::Done });
            }
            let mut b = c;
            let mut j = n;
            while j > i {
                let prev = self.get(b, word[j - 1] ^ 1);
                if prev == NONE {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j == i {
                return Ok(if f != b { Scan::Coincidence(f, b) } else { Scan::Done });
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                self.deductions.push((f, word[i]));
                return Ok(Scan::Done);
            }
            if !fill {
                return Ok(Scan::Done);
            }
            f = self.define(f, word[i])?;
            i += 1;
        }
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for col in 0..self.columns {
                let d = self.get(dead, col);
                if d == NONE {
                    continue;
                }
                if self.get(d, col ^ 1) == dead {
                    self.set(d, col ^ 1, NONE);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_img = self.get(mu, col);
                if mu_img != NONE {
                    self.merge(nu, mu_img, &mut queue);
                } else {
                    let nu_img = self.get(nu, col ^ 1);
                    if nu_img != NONE {
                        self.merge(mu, nu_img, &mut queue);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                        self.deductions.push((mu, col));
                    }
                }
            }
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, col)) = self.deductions.pop() {
            if !self.is_live(c) || self.get(c, col) == NONE {
                continue;
            }
            for k in 0..self.conjugates[col].len() {
                if !self.is_live(c) {
                    break;
                }
                let word = std::mem::take(&mut self.conjugates[col][k]);
                let outcome = self.scan(c, &word, false);
                self.conjugates[col][k] = word;
                if let Ok(Scan::Coincidence(x, y)) = outcome {
                    self.coincidence(x, y);
                }
            }
        }
    }

    fn first_undefined(&self, from: usize) -> Option<(usize, usize)> {
        (from..self.parent.len())
            .filter(|&c| self.is_live(c))
            .find_map(|c| (0..self.columns).find(|&col| self.get(c, col) == NONE).map(|col| (c, col)))
    }

    /// Full scan of every relator at every live coset and of every subgroup
    /// generator at the basepoint. Returns true if anything changed.
    fn verify(&mut self) -> Result<bool, EnumerationError> {
        let mut changed = false;
        let subgroup = self.subgroup.clone();
        for w in &subgroup {
            if let Scan::Coincidence(x, y) = self.scan(0, w, true)? {
                self.coincidence(x, y);
                changed = true;
            }
        }
        let relators = self.relators.clone();
        for c in 0..self.parent.len() {
            for r in &relators {
                if !self.is_live(c) {
                    break;
                }
                if let Scan::Coincidence(x, y) = self.scan(c, r, false)? {
                    self.coincidence(x, y);
                    changed = true;
                }
            }
        }
        if changed || !self.deductions.is_empty() {
            self.process_deductions();
            changed = true;
        }
        Ok(changed)
    }

    /// Runs to completion; returns the standardized complete table.
    pub(crate) fn run(mut self) -> Result<(usize, Vec<usize>), EnumerationError> {
        let subgroup = self.subgroup.clone();
        for w in &subgroup {
            let c = self.rep(0);
            if let Scan::Coincidence(x, y) = self.scan(c, w, true)? {
                self.coincidence(x, y);
            }
            self.process_deductions();
        }
        let mut cursor = 0;
        loop {
            match self.first_undefined(cursor) {
                Some((c, col)) => {
                    cursor = c;
                    self.define(c, col)?;
                    self.process_deductions();
                }
                None => {
                    if cursor > 0 && self.first_undefined(0).is_some() {
                        cursor = 0;
                        continue;
                    }
                    if !self.verify()? && self.first_undefined(0).is_none() {
                        break;
                    }
                    cursor = 0;
                }
            }
        }
        Ok(self.standardize())
    }

    fn standardize(&self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let (new_of, order) = super::table::standard_order(self.columns, n, 0, |c, col| self.get(c, col));
        let mut out = Vec::with_capacity(order.len() * self.columns);
        for &old in &order {
            for col in 0..self.columns {
                out.push(new_of[self.get(old, col)].expect("reachable"));
            }
        }
        (order.len(), out)
    }
}
