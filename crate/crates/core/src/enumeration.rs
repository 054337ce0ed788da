//! Exhaustive generation of path families, statistic tables and the
//! H-insertion construction.
//!
//! Everything here is the brute-force side of an identity: generators walk
//! the full search tree in a fixed order (`Up < Down < Horizontal`,
//! magnitudes ascending), so outputs are deterministic and can be frozen
//! into golden expectations.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::{BigRational, BigUint, One, Zero};
use rayon::prelude::*;

use crate::path::{stats, validate, LatticePath, Step, StepSet, Variant};
use crate::{Error, Result};

/// Ceilings on the order accepted by the generators, per family, plus a
/// ceiling on the number of inserted steps. These are configuration, not
/// policy: raise them on machines that can take it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guards {
    limits: [usize; 6],
    pub max_insertions: usize,
}

impl Default for Guards {
    fn default() -> Self {
        // Budgets scaled to roughly comparable path counts: the growth rates
        // of the six families are 4, 9, 5.8, 10.5, 6.2 and 10.3 per order.
        Guards {
            limits: [12, 9, 12, 8, 10, 8],
            max_insertions: 8,
        }
    }
}

impl Guards {
    pub fn max_order(&self, set: StepSet) -> usize {
        self.limits[set as usize]
    }

    pub fn with_max_order(mut self, set: StepSet, max: usize) -> Self {
        self.limits[set as usize] = max;
        self
    }

    pub fn with_max_insertions(mut self, max: usize) -> Self {
        self.max_insertions = max;
        self
    }

    fn admit(&self, set: StepSet, order: usize) -> Result<()> {
        let guard = self.max_order(set);
        if order > guard {
            return Err(Error::GuardExceeded { set, order, guard });
        }
        Ok(())
    }
}

/// Candidate steps at a node of the search tree, in enumeration order.
/// `rem` is the width still to cover, `h` the current height.
fn candidates(set: StepSet, variant: Variant, rem: u64, h: u64, out: &mut Vec<Step>) {
    out.clear();
    let up_max = (rem - h) / 2;
    let up_hi = if set.free_diagonal_magnitude() { up_max } else { up_max.min(1) };
    for r in 1..=up_hi {
        out.push(Step::up(r as u32));
    }
    let down_hi = if set.free_diagonal_magnitude() { h } else { h.min(1) };
    for r in 1..=down_hi {
        out.push(Step::down(r as u32));
    }
    if set.allows_horizontal() && !(variant == Variant::A && h == 0) {
        let h_max = (rem - h) / 2;
        let h_hi = if set.free_horizontal_magnitude() { h_max } else { h_max.min(1) };
        for r in 1..=h_hi {
            out.push(Step::horizontal(r as u32));
        }
    }
}

/// Depth-first iterator over all paths of a fixed order.
pub struct PathIter {
    set: StepSet,
    variant: Variant,
    frames: Vec<Frame>,
    path: Vec<Step>,
    rem: u64,
    height: u64,
}

struct Frame {
    options: Vec<Step>,
    next: usize,
}

impl PathIter {
    fn new(set: StepSet, variant: Variant, order: usize) -> Self {
        let rem = 2 * order as u64;
        let mut options = Vec::new();
        candidates(set, variant, rem, 0, &mut options);
        PathIter {
            set,
            variant,
            frames: vec![Frame { options, next: 0 }],
            path: Vec::new(),
            rem,
            height: 0,
        }
    }
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        loop {
            let frame = self.frames.last_mut()?;
            if frame.next >= frame.options.len() {
                self.frames.pop();
                if let Some(s) = self.path.pop() {
                    self.rem += s.width();
                    self.height = (self.height as i64 - s.rise()) as u64;
                }
                continue;
            }
            let step = frame.options[frame.next];
            frame.next += 1;
            self.path.push(step);
            self.rem -= step.width();
            self.height = (self.height as i64 + step.rise()) as u64;
            if self.rem == 0 {
                // the height invariant (h <= rem) forces height 0 here
                let out = LatticePath::from_steps(self.path.clone());
                let s = self.path.pop().expect("just pushed");
                self.rem += s.width();
                self.height = (self.height as i64 - s.rise()) as u64;
                return Some(out);
            }
            let mut options = Vec::new();
            candidates(self.set, self.variant, self.rem, self.height, &mut options);
            self.frames.push(Frame { options, next: 0 });
        }
    }
}

/// Every path of the given order, exactly once, in enumeration order.
pub fn enumerate(
    set: StepSet,
    order: usize,
    variant: Variant,
    guards: &Guards,
) -> Result<PathIter> {
    guards.admit(set, order)?;
    Ok(PathIter::new(set, variant, order))
}

fn count_subtree(set: StepSet, variant: Variant, rem: u64, h: u64) -> u128 {
    if rem == 0 {
        return 1;
    }
    let mut options = Vec::new();
    candidates(set, variant, rem, h, &mut options);
    let mut total = 0u128;
    for s in options {
        total += count_subtree(set, variant, rem - s.width(), (h as i64 + s.rise()) as u64);
    }
    total
}

/// Cardinality of [`enumerate`]'s output, parallelized over the first step.
pub fn count(set: StepSet, order: usize, variant: Variant, guards: &Guards) -> Result<BigUint> {
    guards.admit(set, order)?;
    let rem = 2 * order as u64;
    let mut first = Vec::new();
    candidates(set, variant, rem, 0, &mut first);
    let total: u128 = first
        .par_iter()
        .map(|s| count_subtree(set, variant, rem - s.width(), s.rise() as u64))
        .sum();
    Ok(BigUint::from(total))
}

/// An exact joint distribution of statistics: a map from a key tuple to a
/// count. Keys are ordered lexicographically, so iteration and rendering
/// are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    columns: Vec<&'static str>,
    rows: BTreeMap<Vec<u64>, BigUint>,
}

impl DistributionTable {
    pub fn new(columns: Vec<&'static str>) -> Self {
        DistributionTable {
            columns,
            rows: BTreeMap::new(),
        }
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn bump(&mut self, key: Vec<u64>) {
        debug_assert_eq!(key.len(), self.columns.len() - 1);
        *self.rows.entry(key).or_insert_with(BigUint::zero) += 1u32;
    }

    pub fn get(&self, key: &[u64]) -> BigUint {
        self.rows.get(key).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[u64], &BigUint)> {
        self.rows.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total count over all keys whose first component equals `n`.
    pub fn marginal(&self, n: u64) -> BigUint {
        self.rows
            .iter()
            .filter(|(k, _)| k[0] == n)
            .fold(BigUint::zero(), |acc, (_, v)| acc + v)
    }

    /// For `(n, dr, hr)` tables: `Σ count · y^dr · z^hr` over the keys at
    /// first component `n`.
    pub fn eval_markers(&self, n: u64, y: &BigRational, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, v) in &self.rows {
            if k[0] != n {
                continue;
            }
            let term = crate::series::pow(y, k[1]) * crate::series::pow(z, k[2]);
            acc += term * BigRational::from_integer(v.clone().into());
        }
        acc
    }
}

/// Joint `(order, diagonal runs, horizontal runs)` distribution for all
/// orders up to `n_max`.
pub fn weighted_table(
    set: StepSet,
    n_max: usize,
    variant: Variant,
    guards: &Guards,
) -> Result<DistributionTable> {
    guards.admit(set, n_max)?;
    let mut table = DistributionTable::new(vec!["n", "dr", "hr", "count"]);
    for n in 1..=n_max {
        for p in enumerate(set, n, variant, guards)? {
            let st = stats(&p).expect("generated paths are nonempty");
            table.bump(vec![n as u64, st.diagonal_runs, st.horizontal_runs]);
        }
    }
    Ok(table)
}

/// `(order, peaks)` distribution of Dyck paths up to `n_max`.
pub fn peak_table(n_max: usize, guards: &Guards) -> Result<DistributionTable> {
    guards.admit(StepSet::S1, n_max)?;
    let mut table = DistributionTable::new(vec!["n", "k", "count"]);
    for n in 1..=n_max {
        for p in enumerate(StepSet::S1, n, Variant::L, guards)? {
            let st = stats(&p).expect("nonempty");
            table.bump(vec![n as u64, st.peaks]);
        }
    }
    Ok(table)
}

/// `(order, pyramid weight)` distribution of Dyck paths up to `n_max`.
pub fn pyramid_table(n_max: usize, guards: &Guards) -> Result<DistributionTable> {
    guards.admit(StepSet::S1, n_max)?;
    let mut table = DistributionTable::new(vec!["n", "k", "count"]);
    for n in 1..=n_max {
        for p in enumerate(StepSet::S1, n, Variant::L, guards)? {
            let w = crate::path::pyramid_weight(&p).expect("Dyck by construction");
            table.bump(vec![n as u64, w]);
        }
    }
    Ok(table)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of ways to distribute `items` indistinguishable items into
/// `slots` ordered slots: `C(items + slots - 1, items)`, with the
/// conventions `(0, 0) -> 1` and `(items > 0, 0) -> 0`.
pub fn multichoose(items: u64, slots: u64) -> BigUint {
    if items == 0 {
        return BigUint::one();
    }
    if slots == 0 {
        return BigUint::zero();
    }
    binomial(items + slots - 1, items)
}

/// Closed-form cardinality of the insertion set for a Dyck base of the
/// given order and peak count: `Σ_{i,j} C(2k+1, i) C(2n-2k, j) ·
/// multichoose(m-i-j, i+j)`.
pub fn insertion_count(order: u64, peaks: u64, added: u64) -> BigUint {
    let v = 2 * peaks + 1;
    let r = 2 * order - 2 * peaks;
    let mut total = BigUint::zero();
    for i in 0..=added.min(v) {
        for j in 0..=(added - i).min(r) {
            total += binomial(v, i) * binomial(r, j) * multichoose(added - i - j, i + j);
        }
    }
    total
}

/// Record of one insertion: which non-run and run vertices of the base
/// received a horizontal step, and how many extra horizontals were chained
/// after each (aligned with the chosen vertices in increasing order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionPlan {
    pub nonrun_choice: Vec<usize>,
    pub run_choice: Vec<usize>,
    pub extras: Vec<u64>,
}

impl InsertionPlan {
    pub fn i(&self) -> u64 {
        self.nonrun_choice.len() as u64
    }

    pub fn j(&self) -> u64 {
        self.run_choice.len() as u64
    }

    pub fn chained(&self) -> u64 {
        self.extras.iter().sum()
    }
}

fn weak_compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(parts);
    fn rec(left: u64, parts: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            acc.push(left);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for v in 0..=left {
            acc.push(v);
            rec(left - v, parts - 1, acc, out);
            acc.pop();
        }
    }
    rec(total, parts, &mut acc, &mut out);
    out
}

/// All Schröder paths obtained from a Dyck base by inserting `added`
/// horizontal steps: choose non-run vertices, choose run vertices, insert
/// one `H` at each, then chain the remaining horizontals immediately after
/// already-inserted ones. Each result is paired with the plan that
/// produced it; results are pairwise distinct.
pub fn insert_h(
    base: &LatticePath,
    added: usize,
    guards: &Guards,
) -> Result<Vec<(LatticePath, InsertionPlan)>> {
    if !validate(base, StepSet::S1) {
        return Err(Error::NotDyck);
    }
    if added > guards.max_insertions {
        return Err(Error::InsertionGuard {
            count: added,
            guard: guards.max_insertions,
        });
    }
    let steps = base.steps();
    let s = steps.len();
    let st = stats(base)?;
    let run_vertices: Vec<usize> = (1..s).filter(|&t| steps[t - 1] == steps[t]).collect();
    let nonrun_vertices: Vec<usize> = (0..=s)
        .filter(|t| *t == 0 || *t == s || steps[t - 1] != steps[*t])
        .collect();
    // vertex bookkeeping: 2n+1 vertices split into 2n-2k runs and 2k+1 others
    assert_eq!(nonrun_vertices.len() as u64, 2 * st.peaks + 1);
    assert_eq!(run_vertices.len() as u64, 2 * st.order - 2 * st.peaks);

    let m = added as u64;
    let mut out = Vec::new();
    for i in 0..=(added.min(nonrun_vertices.len())) {
        for j in 0..=((added - i).min(run_vertices.len())) {
            for nonrun_choice in nonrun_vertices.iter().copied().combinations(i) {
                for run_choice in run_vertices.iter().copied().combinations(j) {
                    let mut spots: Vec<usize> =
                        nonrun_choice.iter().chain(&run_choice).copied().collect();
                    spots.sort_unstable();
                    for extras in weak_compositions(m - (i + j) as u64, i + j) {
                        let mut blocks: BTreeMap<usize, u64> = BTreeMap::new();
                        for (t, e) in spots.iter().zip(&extras) {
                            blocks.insert(*t, 1 + e);
                        }
                        let mut built =
                            Vec::with_capacity(s + added);
                        for t in 0..=s {
                            for _ in 0..blocks.get(&t).copied().unwrap_or(0) {
                                built.push(Step::horizontal(1));
                            }
                            if t < s {
                                built.push(steps[t]);
                            }
                        }
                        out.push((
                            LatticePath::from_steps(built),
                            InsertionPlan {
                                nonrun_choice: nonrun_choice.clone(),
                                run_choice: run_choice.clone(),
                                extras: extras.clone(),
                            },
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn names(set: StepSet, n: usize, variant: Variant) -> BTreeSet<String> {
        enumerate(set, n, variant, &Guards::default())
            .unwrap()
            .map(|q| q.to_string())
            .collect()
    }

    #[test]
    fn schroeder_order_two() {
        let l: BTreeSet<String> =
            ["HH", "HUD", "UHD", "UDH", "UDUD", "UUDD"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names(StepSet::S3, 2, Variant::L), l);
        let a: BTreeSet<String> = ["UHD", "UDUD", "UUDD"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names(StepSet::S3, 2, Variant::A), a);
    }

    #[test]
    fn s2_order_two() {
        let expect: BTreeSet<String> =
            ["UDUD", "UUDD", "U2D2", "U2DD", "UUD2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names(StepSet::S2, 2, Variant::L), expect);
    }

    #[test]
    fn s4_order_two() {
        assert_eq!(names(StepSet::S4, 2, Variant::L).len(), 10);
        assert_eq!(names(StepSet::S4, 2, Variant::A).len(), 6);
    }

    #[test]
    fn counts() {
        let g = Guards::default();
        assert_eq!(count(StepSet::S1, 4, Variant::L, &g).unwrap(), 14u32.into());
        assert_eq!(count(StepSet::S3, 3, Variant::L, &g).unwrap(), 22u32.into());
        assert_eq!(count(StepSet::S3, 3, Variant::A, &g).unwrap(), 11u32.into());
        assert_eq!(count(StepSet::S4, 2, Variant::L, &g).unwrap(), 10u32.into());
        assert_eq!(count(StepSet::S4, 2, Variant::A, &g).unwrap(), 6u32.into());
    }

    #[test]
    fn enumeration_is_deterministic_and_valid() {
        let g = Guards::default();
        let first: Vec<String> = enumerate(StepSet::S3, 3, Variant::L, &g)
            .unwrap()
            .map(|q| q.to_string())
            .collect();
        let second: Vec<String> = enumerate(StepSet::S3, 3, Variant::L, &g)
            .unwrap()
            .map(|q| q.to_string())
            .collect();
        assert_eq!(first, second);
        assert_eq!(first.len(), 22);
        for q in enumerate(StepSet::S5, 3, Variant::A, &g).unwrap() {
            assert!(crate::path::validate_variant(&q, StepSet::S5, Variant::A));
        }
    }

    #[test]
    fn guard_refuses_large_orders() {
        let g = Guards::default();
        assert!(matches!(
            enumerate(StepSet::S4, 9, Variant::L, &g),
            Err(Error::GuardExceeded { set: StepSet::S4, order: 9, guard: 8 })
        ));
        let raised = Guards::default().with_max_order(StepSet::S4, 9);
        assert!(enumerate(StepSet::S4, 9, Variant::L, &raised).is_ok());
    }

    #[test]
    fn weighted_table_small_orders() {
        let t = weighted_table(StepSet::S3, 2, Variant::L, &Guards::default()).unwrap();
        assert_eq!(t.get(&[1, 0, 0]), 2u32.into());
        assert_eq!(t.get(&[2, 0, 0]), 4u32.into());
        assert_eq!(t.get(&[2, 2, 0]), 1u32.into());
        assert_eq!(t.get(&[2, 0, 1]), 1u32.into());
        assert_eq!(t.marginal(2), 6u32.into());
        let val = t.eval_markers(2, &crate::series::rat(1), &crate::series::rat(3));
        assert_eq!(val, crate::series::rat(8));
    }

    #[test]
    fn peak_table_matches_known_values() {
        let t = peak_table(5, &Guards::default()).unwrap();
        assert_eq!(t.get(&[4, 2]), 6u32.into());
        for n in 1..=5 {
            assert_eq!(t.get(&[n, 1]), 1u32.into());
            assert_eq!(t.get(&[n, n]), 1u32.into());
        }
    }

    #[test]
    fn multichoose_conventions() {
        assert_eq!(multichoose(0, 0), 1u32.into());
        assert_eq!(multichoose(3, 0), 0u32.into());
        assert_eq!(multichoose(2, 1), 1u32.into());
        assert_eq!(multichoose(2, 3), 6u32.into());
        assert_eq!(binomial(5, 2), 10u32.into());
        assert_eq!(binomial(2, 5), 0u32.into());
    }

    #[test]
    fn insertion_examples() {
        let g = Guards::default();
        let one = insert_h(&p("UD"), 1, &g).unwrap();
        let got: BTreeSet<String> = one.iter().map(|(q, _)| q.to_string()).collect();
        let expect: BTreeSet<String> =
            ["HUD", "UHD", "UDH"].iter().map(|s| s.to_string()).collect();
        assert_eq!(got, expect);

        let zero = insert_h(&p("UD"), 0, &g).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].0, p("UD"));

        let two = insert_h(&p("UDUD"), 2, &g).unwrap();
        assert_eq!(two.len(), 15);
        assert_eq!(BigUint::from(two.len()), insertion_count(2, 2, 2));

        assert!(insert_h(&p("UHD"), 1, &g).is_err());
        assert!(matches!(
            insert_h(&p("UD"), 9, &g),
            Err(Error::InsertionGuard { count: 9, guard: 8 })
        ));
    }

    #[test]
    fn insertion_outputs_are_distinct_valid_schroeder_paths() {
        let g = Guards::default();
        for (base, m) in [("UUDD", 3), ("UDUD", 3), ("UUDUDD", 2)] {
            let out = insert_h(&p(base), m, &g).unwrap();
            let set: BTreeSet<&LatticePath> = out.iter().map(|(q, _)| q).collect();
            assert_eq!(set.len(), out.len(), "duplicate insertion output");
            for (q, plan) in &out {
                assert!(validate(q, StepSet::S3));
                assert_eq!(q.order(), p(base).order() + m as u64);
                assert_eq!(plan.i() + plan.j() + plan.chained(), m as u64);
            }
        }
    }

    #[test]
    fn weak_composition_edge_cases() {
        assert_eq!(weak_compositions(0, 0), vec![Vec::<u64>::new()]);
        assert!(weak_compositions(2, 0).is_empty());
        assert_eq!(weak_compositions(2, 2).len(), 3);
    }
}
