//! Adversarial hierarchy construction: pairwise dominance, Boolean
//! reachability, cycle condensation, skeleton extraction, and opposed
//! top-down / bottom-up level extraction over the same closure.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::Real;

/// Whether smaller or larger values of a profile column are preferable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    SmallerBetter,
    LargerBetter,
}

/// One comparable column of a profile: a metric name plus its preference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileColumn {
    pub metric: String,
    pub preference: Preference,
}

impl ProfileColumn {
    pub fn new(metric: impl Into<String>, preference: Preference) -> Self {
        ProfileColumn { metric: metric.into(), preference }
    }
}

/// A set of alternatives scored on directed columns, the input to
/// dominance comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaProfile<F> {
    alternatives: Vec<String>,
    columns: Vec<ProfileColumn>,
    values: Vec<F>,
}

impl<F: Real> CriteriaProfile<F> {
    /// Builds a profile from per-alternative rows, validating shape,
    /// finiteness, and id uniqueness.
    pub fn new(
        alternatives: Vec<String>,
        columns: Vec<ProfileColumn>,
        rows: Vec<Vec<F>>,
    ) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(Error::EmptyInput("no alternatives in profile".into()));
        }
        if columns.is_empty() {
            return Err(Error::EmptyInput("no columns in profile".into()));
        }
        if rows.len() != alternatives.len() {
            return Err(Error::Shape(format!(
                "{} rows for {} alternatives",
                rows.len(),
                alternatives.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for id in &alternatives {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let mut values = Vec::with_capacity(alternatives.len() * columns.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::Shape(format!(
                    "row {} has {} values, expected {}",
                    i + 1,
                    row.len(),
                    columns.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Range(format!(
                        "non-finite value for '{}', column '{}'",
                        alternatives[i], columns[j].metric
                    )));
                }
                values.push(*v);
            }
        }
        Ok(CriteriaProfile { alternatives, columns, values })
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn columns(&self) -> &[ProfileColumn] {
        &self.columns
    }

    pub fn value(&self, alternative: usize, column: usize) -> F {
        self.values[alternative * self.columns.len() + column]
    }
}

/// A square 0/1 matrix with Boolean algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanSquareMatrix {
    order: usize,
    bits: Vec<bool>,
}

impl BooleanSquareMatrix {
    pub fn zeros(order: usize) -> Self {
        BooleanSquareMatrix { order, bits: vec![false; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, true);
        }
        m
    }

    /// Parses rows of '0'/'1' characters, e.g. `["010", "001", "000"]`.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut bits = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    order
                )));
            }
            for &c in row {
                match c {
                    b'0' => bits.push(false),
                    b'1' => bits.push(true),
                    other => {
                        return Err(Error::Range(format!(
                            "matrix entries must be 0 or 1, found '{}'",
                            other as char
                        )))
                    }
                }
            }
        }
        Ok(BooleanSquareMatrix { order, bits })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.bits[row * self.order + col] = value;
    }

    /// Self with the diagonal forced to 1.
    pub fn or_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            m.set(i, i, true);
        }
        m
    }

    /// Boolean matrix product: out[x][y] = OR_z self[x][z] AND other[z][y].
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let mut out = Self::zeros(n);
        for x in 0..n {
            for z in 0..n {
                if self.get(x, z) {
                    for y in 0..n {
                        if other.get(z, y) {
                            out.set(x, y, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Boolean difference: out = self AND NOT other (1-1=0, 0-anything=0).
    pub fn minus(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| a && !b)
            .collect();
        BooleanSquareMatrix { order: self.order, bits }
    }

    /// Rows of comma-separated 0/1, one line per row.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for x in 0..self.order {
            for y in 0..self.order {
                if y > 0 {
                    out.push(',');
                }
                out.push(if self.get(x, y) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

/// Pairwise weak-dominance adjacency: entry (x, y) is 1 when y scores at
/// least as well as x on every column and the two differ.
pub fn dominance_adjacency<F: Real>(profile: &CriteriaProfile<F>) -> BooleanSquareMatrix {
    dominance_adjacency_eps(profile, F::zero()).expect("zero tolerance is valid")
}

/// Weak dominance with an absolute tolerance: y beats x on a column even
/// when it trails by up to eps. Zero reproduces exact comparison.
pub fn dominance_adjacency_eps<F: Real>(
    profile: &CriteriaProfile<F>,
    eps: F,
) -> Result<BooleanSquareMatrix> {
    if !(eps >= F::zero() && eps.is_finite()) {
        return Err(Error::Range(format!("dominance tolerance {eps} must be finite and >= 0")));
    }
    let n = profile.n_alternatives();
    let cols = profile.columns().len();
    let mut a = BooleanSquareMatrix::zeros(n);
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let dominates = (0..cols).all(|j| {
                let vx = profile.value(x, j);
                let vy = profile.value(y, j);
                match profile.columns()[j].preference {
                    Preference::SmallerBetter => vy <= vx + eps,
                    Preference::LargerBetter => vy >= vx - eps,
                }
            });
            if dominates {
                a.set(x, y, true);
            }
        }
    }
    Ok(a)
}

/// Reflexive-transitive closure by Boolean squaring of (a OR I) to a
/// fixed point.
pub fn reachability(a: &BooleanSquareMatrix) -> BooleanSquareMatrix {
    let mut current = a.or_identity();
    loop {
        let next = current.multiply(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Merges mutual-reachability classes of a closure into single nodes.
///
/// Returns the closure over merged nodes plus, for each original node,
/// the id of its group. Groups are numbered by first appearance.
pub fn condense(r: &BooleanSquareMatrix) -> (BooleanSquareMatrix, Vec<usize>) {
    let n = r.order();
    let mut scc_of = vec![usize::MAX; n];
    let mut groups = 0usize;
    for i in 0..n {
        if scc_of[i] != usize::MAX {
            continue;
        }
        scc_of[i] = groups;
        for (j, slot) in scc_of.iter_mut().enumerate().skip(i + 1) {
            if *slot == usize::MAX && r.get(i, j) && r.get(j, i) {
                *slot = groups;
            }
        }
        groups += 1;
    }
    let mut merged = BooleanSquareMatrix::zeros(groups);
    for x in 0..n {
        for y in 0..n {
            if r.get(x, y) {
                merged.set(scc_of[x], scc_of[y], true);
            }
        }
    }
    (merged, scc_of)
}

/// Group id to member list (ascending original index) from a node-to-group map.
pub fn scc_groups(scc_of: &[usize]) -> Vec<Vec<usize>> {
    let count = scc_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); count];
    for (node, &g) in scc_of.iter().enumerate() {
        groups[g].push(node);
    }
    groups
}

/// Transitive reduction of an antisymmetric closure: with T the closure
/// minus the diagonal, the skeleton is T minus T*T, dropping every edge
/// that a two-step route already implies.
pub fn skeleton(r_prime: &BooleanSquareMatrix) -> Result<BooleanSquareMatrix> {
    let n = r_prime.order();
    for x in 0..n {
        for y in (x + 1)..n {
            if r_prime.get(x, y) && r_prime.get(y, x) {
                return Err(Error::Cycle(format!(
                    "nodes {x} and {y} reach each other; condense cycles first"
                )));
            }
        }
    }
    let t = r_prime.minus(&BooleanSquareMatrix::identity(n));
    Ok(t.minus(&t.multiply(&t)))
}

/// Re-expands merged groups of a skeleton back to original nodes: each
/// group of two or more members becomes a directed ring through its
/// members in input order, and edges between groups attach to the first
/// member of each group.
pub fn expand_cycles(
    s: &BooleanSquareMatrix,
    groups: &[Vec<usize>],
) -> Result<BooleanSquareMatrix> {
    if s.order() != groups.len() {
        return Err(Error::Shape(format!(
            "skeleton of order {} for {} groups",
            s.order(),
            groups.len()
        )));
    }
    let n: usize = groups.iter().map(Vec::len).sum();
    let mut seen = vec![false; n];
    for group in groups {
        if group.is_empty() {
            return Err(Error::Shape("empty group".into()));
        }
        for &member in group {
            if member >= n || seen[member] {
                return Err(Error::Shape(format!(
                    "groups do not partition nodes 0..{n}"
                )));
            }
            seen[member] = true;
        }
    }
    let mut out = BooleanSquareMatrix::zeros(n);
    for group in groups {
        if group.len() >= 2 {
            for w in 0..group.len() {
                out.set(group[w], group[(w + 1) % group.len()], true);
            }
        }
    }
    for x in 0..groups.len() {
        for y in 0..groups.len() {
            if x != y && s.get(x, y) {
                out.set(groups[x][0], groups[y][0], true);
            }
        }
    }
    Ok(out)
}

/// Which end of the hierarchy to peel first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionMode {
    /// Peel undominated nodes first: level 1 is the top (best).
    Up,
    /// Peel non-dominating nodes first: level 1 is the bottom (worst).
    Down,
}

/// Peels a condensed closure into levels. For each remaining node e,
/// R(e) is the set it reaches (itself and everything better) and Q(e)
/// the set reaching it (itself and everything worse). UP removes nodes
/// with R(e) inside Q(e); DOWN removes nodes with Q(e) inside R(e).
pub fn extract_levels(
    r: &BooleanSquareMatrix,
    mode: ExtractionMode,
) -> Result<Vec<Vec<usize>>> {
    let n = r.order();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut levels = Vec::new();
    while !remaining.is_empty() {
        let mut level = Vec::new();
        for &e in &remaining {
            let fits = remaining.iter().all(|&f| match mode {
                ExtractionMode::Up => !r.get(e, f) || r.get(f, e),
                ExtractionMode::Down => !r.get(f, e) || r.get(e, f),
            });
            if fits {
                level.push(e);
            }
        }
        if level.is_empty() {
            return Err(Error::Internal(
                "level extraction stalled; input is not a condensed closure".into(),
            ));
        }
        remaining.retain(|e| !level.contains(e));
        levels.push(level);
    }
    Ok(levels)
}

/// Complete output of one hierarchy pass.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyResult {
    /// Alternative ids in input order.
    pub nodes: Vec<String>,
    /// Pairwise dominance adjacency over the original nodes.
    pub adjacency: BooleanSquareMatrix,
    /// Reflexive-transitive closure over the original nodes.
    pub closure: BooleanSquareMatrix,
    /// Group id of each original node.
    pub scc_of: Vec<usize>,
    /// Group id to member node indices, input order.
    pub groups: Vec<Vec<usize>>,
    /// Transitive reduction over merged groups.
    pub skeleton: BooleanSquareMatrix,
    /// Original node indices per level; level 1 (index 0) is the top.
    pub up_levels: Vec<Vec<usize>>,
    /// Original node indices per level; level 1 (index 0) is the bottom.
    pub down_levels: Vec<Vec<usize>>,
}

impl HierarchyResult {
    fn level_names(&self, levels: &[Vec<usize>]) -> Vec<Vec<String>> {
        levels
            .iter()
            .map(|level| level.iter().map(|&i| self.nodes[i].clone()).collect())
            .collect()
    }

    /// Node names per UP level, top first.
    pub fn up_level_names(&self) -> Vec<Vec<String>> {
        self.level_names(&self.up_levels)
    }

    /// Node names per DOWN level, bottom first.
    pub fn down_level_names(&self) -> Vec<Vec<String>> {
        self.level_names(&self.down_levels)
    }

    /// Comma-joined member names of one merged group.
    pub fn group_label(&self, group: usize) -> String {
        self.groups[group]
            .iter()
            .map(|&i| self.nodes[i].as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Runs the full pass: dominance, closure, condensation, skeleton, and
/// both level extractions.
pub fn analyze<F: Real>(profile: &CriteriaProfile<F>, eps: F) -> Result<HierarchyResult> {
    let adjacency = dominance_adjacency_eps(profile, eps)?;
    let closure = reachability(&adjacency);
    let (merged, scc_of) = condense(&closure);
    let groups = scc_groups(&scc_of);
    let skeleton = skeleton(&merged)?;
    let expand = |condensed_levels: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        condensed_levels
            .into_iter()
            .map(|level| {
                let mut nodes: Vec<usize> = level
                    .into_iter()
                    .flat_map(|g| groups[g].iter().copied())
                    .collect();
                nodes.sort_unstable();
                nodes
            })
            .collect()
    };
    let up_levels = expand(extract_levels(&merged, ExtractionMode::Up)?);
    let down_levels = expand(extract_levels(&merged, ExtractionMode::Down)?);
    Ok(HierarchyResult {
        nodes: profile.alternatives().to_vec(),
        adjacency,
        closure,
        scc_of,
        groups,
        skeleton,
        up_levels,
        down_levels,
    })
}

fn escape_label(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders one hierarchy direction as deterministic DOT. Each level is a
/// same-rank block (UP: level 1 topmost, DOWN: level 1 bottommost);
/// merged groups appear as single nodes with comma-joined labels; edges
/// run from dominated toward dominating nodes.
pub fn to_dot(h: &HierarchyResult, mode: ExtractionMode) -> String {
    let mut out = String::from("digraph {\n  rankdir=TB;\n  node [shape=box];\n");
    let node_levels: Vec<&Vec<usize>> = match mode {
        ExtractionMode::Up => h.up_levels.iter().collect(),
        ExtractionMode::Down => h.down_levels.iter().rev().collect(),
    };
    let mut group_levels: Vec<Vec<usize>> = Vec::with_capacity(node_levels.len());
    for level in node_levels {
        let mut groups = Vec::new();
        for &node in level {
            let g = h.scc_of[node];
            if !groups.contains(&g) {
                groups.push(g);
            }
        }
        group_levels.push(groups);
    }
    for groups in &group_levels {
        out.push_str("  { rank=same;");
        for &g in groups {
            out.push_str(&format!(" \"g{g}\" [label=\"{}\"];", escape_label(&h.group_label(g))));
        }
        out.push_str(" }\n");
    }
    for x in 0..h.skeleton.order() {
        for y in 0..h.skeleton.order() {
            if h.skeleton.get(x, y) {
                out.push_str(&format!("  \"g{x}\" -> \"g{y}\" [constraint=false];\n"));
            }
        }
    }
    for pair in group_levels.windows(2) {
        out.push_str(&format!(
            "  \"g{}\" -> \"g{}\" [style=invis];\n",
            pair[0][0], pair[1][0]
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(
        columns: Vec<ProfileColumn>,
        rows: Vec<Vec<f64>>,
    ) -> CriteriaProfile<f64> {
        let names = (0..rows.len()).map(|i| format!("n{i}")).collect();
        CriteriaProfile::new(names, columns, rows).unwrap()
    }

    fn smaller(metric: &str) -> ProfileColumn {
        ProfileColumn::new(metric, Preference::SmallerBetter)
    }

    fn larger(metric: &str) -> ProfileColumn {
        ProfileColumn::new(metric, Preference::LargerBetter)
    }

    #[test]
    fn single_alternative_has_no_dominance() {
        let p = profile(vec![smaller("m")], vec![vec![1.0]]);
        assert_eq!(dominance_adjacency(&p), BooleanSquareMatrix::zeros(1));
    }

    #[test]
    fn dominance_respects_both_preferences() {
        // Node 1 is better on both columns, so it dominates node 0.
        let p = profile(
            vec![smaller("cost"), larger("gain")],
            vec![vec![2.0, 1.0], vec![1.0, 2.0]],
        );
        let a = dominance_adjacency(&p);
        assert!(a.get(0, 1));
        assert!(!a.get(1, 0));
    }

    #[test]
    fn conflicting_columns_block_dominance() {
        let p = profile(
            vec![smaller("x"), smaller("y")],
            vec![vec![1.0, 2.0], vec![2.0, 1.0]],
        );
        assert_eq!(dominance_adjacency(&p), BooleanSquareMatrix::zeros(2));
    }

    #[test]
    fn identical_rows_dominate_mutually() {
        let p = profile(vec![smaller("m")], vec![vec![3.0], vec![3.0]]);
        let a = dominance_adjacency(&p);
        assert!(a.get(0, 1) && a.get(1, 0));
    }

    #[test]
    fn tolerance_widens_dominance() {
        let p = profile(vec![smaller("m")], vec![vec![1.0], vec![1.05]]);
        let exact = dominance_adjacency(&p);
        assert!(exact.get(1, 0) && !exact.get(0, 1));
        let loose = dominance_adjacency_eps(&p, 0.1).unwrap();
        assert!(loose.get(0, 1) && loose.get(1, 0));
        assert!(dominance_adjacency_eps(&p, -0.1).is_err());
    }

    #[test]
    fn dominance_matches_brute_force_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let n = rng.gen_range(1..8);
            let c = rng.gen_range(1..5);
            let columns: Vec<ProfileColumn> = (0..c)
                .map(|j| {
                    if rng.gen() {
                        smaller(&format!("m{j}"))
                    } else {
                        larger(&format!("m{j}"))
                    }
                })
                .collect();
            // Small integer scores make ties common.
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..c).map(|_| rng.gen_range(0..4) as f64).collect())
                .collect();
            let p = profile(columns.clone(), rows.clone());
            let a = dominance_adjacency(&p);
            for x in 0..n {
                for y in 0..n {
                    let expect = x != y
                        && (0..c).all(|j| match columns[j].preference {
                            Preference::SmallerBetter => rows[y][j] <= rows[x][j],
                            Preference::LargerBetter => rows[y][j] >= rows[x][j],
                        });
                    assert_eq!(a.get(x, y), expect);
                }
            }
        }
    }

    #[test]
    fn closure_of_zero_matrix_is_identity() {
        let z = BooleanSquareMatrix::zeros(4);
        assert_eq!(reachability(&z), BooleanSquareMatrix::identity(4));
    }

    #[test]
    fn closure_adds_the_chain_shortcut() {
        let a = BooleanSquareMatrix::from_rows(&["010", "001", "000"]).unwrap();
        let r = reachability(&a);
        assert!(r.get(0, 2));
        assert!(r.get(0, 0) && r.get(1, 1) && r.get(2, 2));
        assert!(!r.get(2, 0));
    }

    #[test]
    fn closure_is_idempotent() {
        let a = BooleanSquareMatrix::from_rows(&["0110", "0010", "0000", "1000"]).unwrap();
        let r = reachability(&a);
        assert_eq!(reachability(&r), r);
    }

    #[test]
    fn condense_merges_mutual_pairs() {
        // 0 and 2 reach each other; 1 sits above both.
        let a = BooleanSquareMatrix::from_rows(&["010", "000", "010"]).unwrap();
        let mut with_cycle = a.clone();
        with_cycle.set(0, 2, true);
        with_cycle.set(2, 0, true);
        let r = reachability(&with_cycle);
        let (merged, scc_of) = condense(&r);
        assert_eq!(scc_of, vec![0, 1, 0]);
        assert_eq!(merged.order(), 2);
        assert!(merged.get(0, 1));
        assert!(!merged.get(1, 0));
        assert_eq!(scc_groups(&scc_of), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn condense_on_acyclic_closure_is_identity() {
        let a = BooleanSquareMatrix::from_rows(&["011", "001", "000"]).unwrap();
        let r = reachability(&a);
        let (merged, scc_of) = condense(&r);
        assert_eq!(scc_of, vec![0, 1, 2]);
        assert_eq!(merged, r);
    }

    #[test]
    fn skeleton_reduces_a_total_order_to_a_chain() {
        let r = reachability(
            &BooleanSquareMatrix::from_rows(&["011", "001", "000"]).unwrap(),
        );
        let s = skeleton(&r).unwrap();
        assert_eq!(s, BooleanSquareMatrix::from_rows(&["010", "001", "000"]).unwrap());
    }

    #[test]
    fn skeleton_rejects_cycles() {
        let r = reachability(
            &BooleanSquareMatrix::from_rows(&["010", "100", "000"]).unwrap(),
        );
        assert!(matches!(skeleton(&r), Err(Error::Cycle(_))));
    }

    #[test]
    fn skeleton_then_closure_recovers_the_input() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let n = rng.gen_range(1..9);
            // Random DAG: edges only from lower to higher index.
            let mut a = BooleanSquareMatrix::zeros(n);
            for x in 0..n {
                for y in (x + 1)..n {
                    if rng.gen_bool(0.4) {
                        a.set(x, y, true);
                    }
                }
            }
            let r = reachability(&a);
            let s = skeleton(&r).unwrap();
            assert_eq!(reachability(&s), r);
        }
    }

    #[test]
    fn expand_rebuilds_rings_and_reattaches_edges() {
        // Two groups: {0, 2} (a merged pair) above single {1}; the merged
        // group dominates... rather, group 0 reaches group 1.
        let s = BooleanSquareMatrix::from_rows(&["01", "00"]).unwrap();
        let groups = vec![vec![0, 2], vec![1]];
        let out = expand_cycles(&s, &groups).unwrap();
        assert_eq!(out.order(), 3);
        assert!(out.get(0, 2) && out.get(2, 0));
        assert!(out.get(0, 1));
        assert!(!out.get(2, 1));
        assert!(!out.get(1, 0));
    }

    #[test]
    fn expand_without_groups_is_identity() {
        let s = BooleanSquareMatrix::from_rows(&["010", "001", "000"]).unwrap();
        let groups = vec![vec![0], vec![1], vec![2]];
        assert_eq!(expand_cycles(&s, &groups).unwrap(), s);
    }

    #[test]
    fn expand_ring_is_minimal() {
        let s = BooleanSquareMatrix::zeros(1);
        let out = expand_cycles(&s, &[vec![0, 1, 2]]).unwrap();
        let mut edges = 0;
        for x in 0..3 {
            for y in 0..3 {
                if out.get(x, y) {
                    edges += 1;
                }
            }
        }
        assert_eq!(edges, 3);
        assert_eq!(reachability(&out), reachability(&BooleanSquareMatrix::from_rows(&["011", "101", "110"]).unwrap()));
    }

    #[test]
    fn expand_validates_the_partition() {
        let s = BooleanSquareMatrix::zeros(2);
        assert!(expand_cycles(&s, &[vec![0]]).is_err());
        assert!(expand_cycles(&s, &[vec![0], vec![0]]).is_err());
        assert!(expand_cycles(&s, &[vec![0], vec![]]).is_err());
    }

    #[test]
    fn levels_of_a_chain_are_singletons_in_opposite_order() {
        // 0 -> 1 -> 2 with "toward dominating" direction: 2 is best.
        let r = reachability(
            &BooleanSquareMatrix::from_rows(&["011", "001", "000"]).unwrap(),
        );
        let up = extract_levels(&r, ExtractionMode::Up).unwrap();
        assert_eq!(up, vec![vec![2], vec![1], vec![0]]);
        let down = extract_levels(&r, ExtractionMode::Down).unwrap();
        assert_eq!(down, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn single_node_is_one_level() {
        let r = BooleanSquareMatrix::identity(1);
        assert_eq!(extract_levels(&r, ExtractionMode::Up).unwrap(), vec![vec![0]]);
        assert_eq!(extract_levels(&r, ExtractionMode::Down).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn up_and_down_levels_partition_the_same_universe() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..30 {
            let n = rng.gen_range(1..9);
            let mut a = BooleanSquareMatrix::zeros(n);
            for x in 0..n {
                for y in (x + 1)..n {
                    if rng.gen_bool(0.3) {
                        a.set(x, y, true);
                    }
                }
            }
            let r = reachability(&a);
            let up = extract_levels(&r, ExtractionMode::Up).unwrap();
            let down = extract_levels(&r, ExtractionMode::Down).unwrap();
            let mut from_up: Vec<usize> = up.into_iter().flatten().collect();
            let mut from_down: Vec<usize> = down.into_iter().flatten().collect();
            from_up.sort_unstable();
            from_down.sort_unstable();
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(from_up, all);
            assert_eq!(from_down, all);
        }
    }

    #[test]
    fn analyze_merges_tied_alternatives() {
        let p = CriteriaProfile::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![smaller("m")],
            vec![vec![2.0], vec![1.0], vec![1.0]],
        )
        .unwrap();
        let h = analyze(&p, 0.0).unwrap();
        assert_eq!(h.scc_of, vec![0, 1, 1]);
        assert_eq!(h.groups, vec![vec![0], vec![1, 2]]);
        assert_eq!(h.up_levels, vec![vec![1, 2], vec![0]]);
        assert_eq!(h.down_levels, vec![vec![0], vec![1, 2]]);
        assert_eq!(h.group_label(1), "b, c");
        // The merged pair sits above node a: skeleton edge a -> {b, c}.
        assert!(h.skeleton.get(0, 1));
    }

    #[test]
    fn skeleton_edges_climb_up_levels() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.gen_range(2..8);
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| vec![rng.gen_range(0..5) as f64, rng.gen_range(0..5) as f64])
                .collect();
            let names = (0..n).map(|i| format!("n{i}")).collect();
            let p = CriteriaProfile::new(
                names,
                vec![smaller("x"), larger("y")],
                rows,
            )
            .unwrap();
            let h = analyze(&p, 0.0).unwrap();
            let level_of_group = |g: usize| -> usize {
                let member = h.groups[g][0];
                h.up_levels
                    .iter()
                    .position(|level| level.contains(&member))
                    .expect("every node has a level")
            };
            for x in 0..h.skeleton.order() {
                for y in 0..h.skeleton.order() {
                    if h.skeleton.get(x, y) {
                        // Toward dominating means toward smaller level index.
                        assert!(level_of_group(y) < level_of_group(x));
                    }
                }
            }
        }
    }

    #[test]
    fn dot_output_is_deterministic_and_ordered() {
        let p = CriteriaProfile::new(
            vec!["low".into(), "mid".into(), "top".into()],
            vec![larger("score")],
            vec![vec![1.0], vec![2.0], vec![3.0]],
        )
        .unwrap();
        let h = analyze(&p, 0.0).unwrap();
        let up = to_dot(&h, ExtractionMode::Up);
        assert_eq!(up, to_dot(&h, ExtractionMode::Up));
        let top_pos = up.find("\"g2\" [label=\"top\"]").unwrap();
        let low_pos = up.find("\"g0\" [label=\"low\"]").unwrap();
        assert!(top_pos < low_pos);
        assert!(up.contains("\"g0\" -> \"g1\" [constraint=false];"));
        assert!(up.contains("\"g1\" -> \"g2\" [constraint=false];"));
        assert!(up.contains("[style=invis]"));
        let down = to_dot(&h, ExtractionMode::Down);
        let top_pos = down.find("\"g2\" [label=\"top\"]").unwrap();
        let low_pos = down.find("\"g0\" [label=\"low\"]").unwrap();
        assert!(top_pos < low_pos);
    }

    #[test]
    fn dot_escapes_quotes_and_backslashes() {
        let p = CriteriaProfile::new(
            vec!["say \"hi\"".into(), "back\\slash".into()],
            vec![larger("score")],
            vec![vec![1.0], vec![2.0]],
        )
        .unwrap();
        let h = analyze(&p, 0.0).unwrap();
        let dot = to_dot(&h, ExtractionMode::Up);
        assert!(dot.contains("label=\"say \\\"hi\\\"\""));
        assert!(dot.contains("label=\"back\\\\slash\""));
    }

    #[test]
    fn empty_hierarchy_renders_a_bare_digraph() {
        let h = HierarchyResult {
            nodes: vec![],
            adjacency: BooleanSquareMatrix::zeros(0),
            closure: BooleanSquareMatrix::zeros(0),
            scc_of: vec![],
            groups: vec![],
            skeleton: BooleanSquareMatrix::zeros(0),
            up_levels: vec![],
            down_levels: vec![],
        };
        assert_eq!(
            to_dot(&h, ExtractionMode::Up),
            "digraph {\n  rankdir=TB;\n  node [shape=box];\n}\n"
        );
    }

    #[test]
    fn csv_rendering_uses_bare_zero_one() {
        let m = BooleanSquareMatrix::from_rows(&["01", "10"]).unwrap();
        assert_eq!(m.to_csv_string(), "0,1\n1,0\n");
    }

    #[test]
    fn profile_validation_catches_bad_input() {
        assert!(matches!(
            CriteriaProfile::<f64>::new(vec![], vec![smaller("m")], vec![]),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            CriteriaProfile::new(
                vec!["a".into(), "a".into()],
                vec![smaller("m")],
                vec![vec![1.0], vec![2.0]],
            ),
            Err(Error::DuplicateId(_))
        ));
        assert!(matches!(
            CriteriaProfile::new(
                vec!["a".into()],
                vec![smaller("m")],
                vec![vec![1.0, 2.0]],
            ),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            CriteriaProfile::new(
                vec!["a".into()],
                vec![smaller("m")],
                vec![vec![f64::NAN]],
            ),
            Err(Error::Range(_))
        ));
    }
}
