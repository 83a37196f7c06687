//! Solver for the restricted total belief problem.
//!
//! Given a prior with pairwise-disjoint focal elements on a coarsening and
//! one conditional mass function per partition cell, find a belief function
//! on the fine frame whose restriction is the prior and whose Dempster
//! conditioning on each cell reproduces the conditionals, using the
//! minimum number of focal elements.
//!
//! Each prior focal element yields an independent subproblem: candidate
//! focal elements are unions of exactly one focal element per in-scope
//! conditional, and a minimal solution selects `Σ(n_i - 1) + 1` of them so
//! that the square linear system of conditional constraints has a
//! non-negative solution. The search walks the solution graph by
//! substituting the column with the most negative component against a
//! covering set of companions, falling back to exhaustive enumeration of
//! column selections when the walk stalls.

use std::collections::BTreeMap;

use crate::combine::dempster_condition;
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::{MassFunction, Mode, MASS_TOL};
use crate::partition::Refining;

/// Components above this threshold count as non-negative; small negative
/// round-off from the 0/1 LU solves is clamped to zero.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Cap on `n_max` for the exhaustive selection fallback.
pub const EXHAUSTIVE_CAP: usize = 24;
/// Cap on the number of candidate solution systems in a solution graph.
pub const GRAPH_CAP: usize = 10_000;

/// A restricted total-belief instance.
///
/// The prior lives on the coarse frame and must have pairwise-disjoint
/// focal elements; `conditionals[i]` is a mass function on the fine frame
/// whose core lies inside the image cell of coarse element `i`. A
/// conditional is required for every element of every prior focal element.
#[derive(Debug, Clone)]
pub struct TotalBeliefProblem {
    refining: Refining,
    prior: MassFunction,
    conditionals: BTreeMap<usize, MassFunction>,
}

impl TotalBeliefProblem {
    pub fn new(
        refining: Refining,
        prior: MassFunction,
        conditionals: BTreeMap<usize, MassFunction>,
    ) -> Result<Self> {
        refining
            .source()
            .ensure_same(prior.frame(), "total-belief prior")?;
        let mut seen = refining.source().empty();
        for (set, _) in prior.focal_elements() {
            if set.intersects(&seen) {
                return Err(Error::InvalidProblem(
                    "prior focal elements must be pairwise disjoint".into(),
                ));
            }
            seen = seen.union(set);
            for omega in set.iter() {
                let cell = refining.image_of_element(omega);
                let cond = conditionals.get(&omega).ok_or_else(|| {
                    Error::InvalidProblem(format!(
                        "missing conditional for element {}",
                        refining.source().label(omega)
                    ))
                })?;
                refining
                    .target()
                    .ensure_same(cond.frame(), "conditional frame")?;
                if !cond.core().is_subset_of(cell) {
                    return Err(Error::InvalidProblem(format!(
                        "conditional for {} has support outside its cell",
                        refining.source().label(omega)
                    )));
                }
            }
        }
        Ok(TotalBeliefProblem {
            refining,
            prior,
            conditionals,
        })
    }

    pub fn refining(&self) -> &Refining {
        &self.refining
    }

    pub fn prior(&self) -> &MassFunction {
        &self.prior
    }

    pub fn conditional(&self, omega: usize) -> Option<&MassFunction> {
        self.conditionals.get(&omega)
    }

    pub fn fine_frame(&self) -> &Frame {
        self.refining.target()
    }

    /// The independent subproblem attached to one prior focal element.
    pub fn cell_problem(&self, prior_focal: &Subset) -> Result<CellProblem> {
        let mut cells = Vec::new();
        for omega in prior_focal.iter() {
            let cond = self.conditionals.get(&omega).ok_or_else(|| {
                Error::InvalidProblem(format!("missing conditional for element index {omega}"))
            })?;
            let focal: Vec<(Subset, f64)> =
                cond.focal_elements().map(|(s, v)| (s.clone(), v)).collect();
            cells.push(CellConditional { focal });
        }
        CellProblem::new(self.fine_frame().clone(), cells)
    }
}

#[derive(Debug, Clone)]
struct CellConditional {
    focal: Vec<(Subset, f64)>,
}

/// A candidate focal element of the total belief function: the disjoint
/// union of exactly one focal element per in-scope conditional.
#[derive(Debug, Clone)]
pub struct CandidateColumn {
    /// Chosen focal-element index per cell, in cell order.
    pub choices: Vec<usize>,
    /// The union subset on the fine frame.
    pub subset: Subset,
}

/// The subproblem for a single prior focal element.
#[derive(Debug, Clone)]
pub struct CellProblem {
    frame: Frame,
    cells: Vec<CellConditional>,
    columns: Vec<CandidateColumn>,
    /// Constraint rows: (cell position, focal index) for every conditional
    /// focal element except each cell's last. The final row is the
    /// normalization constraint.
    rows: Vec<(usize, usize)>,
}

impl CellProblem {
    fn new(frame: Frame, cells: Vec<CellConditional>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidProblem(
                "prior focal element with no cells".into(),
            ));
        }
        let counts: Vec<usize> = cells.iter().map(|c| c.focal.len()).collect();
        let n_max: usize = counts.iter().product();
        let mut columns = Vec::with_capacity(n_max);
        let mut choices = vec![0usize; cells.len()];
        loop {
            let mut subset = frame.empty();
            for (cell, &j) in cells.iter().zip(choices.iter()) {
                subset = subset.union(&cell.focal[j].0);
            }
            columns.push(CandidateColumn {
                choices: choices.clone(),
                subset,
            });
            let mut pos = cells.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choices[pos] += 1;
                if choices[pos] < counts[pos] {
                    break;
                }
                choices[pos] = 0;
            }
            if choices.iter().all(|&c| c == 0) {
                break;
            }
        }
        let mut rows = Vec::new();
        for (i, count) in counts.iter().enumerate() {
            for j in 0..count - 1 {
                rows.push((i, j));
            }
        }
        Ok(CellProblem {
            frame,
            cells,
            columns,
            rows,
        })
    }

    pub fn columns(&self) -> &[CandidateColumn] {
        &self.columns
    }

    pub fn n_max(&self) -> usize {
        self.columns.len()
    }

    /// Minimum number of focal elements of a solution: `Σ(n_i - 1) + 1`.
    pub fn min_focal_count(&self) -> usize {
        self.rows.len() + 1
    }

    fn column_entry(&self, col: &CandidateColumn, row: usize) -> f64 {
        if row == self.rows.len() {
            1.0
        } else {
            let (cell, j) = self.rows[row];
            if col.choices[cell] == j {
                1.0
            } else {
                0.0
            }
        }
    }

    /// Build and solve the square system for a selection of
    /// `min_focal_count` columns (indices into [`Self::columns`]).
    pub fn build_system(&self, selection: &[usize]) -> Result<SolutionSystem> {
        let n = self.min_focal_count();
        if selection.len() != n {
            return Err(Error::InvalidArgument(format!(
                "selection of {} columns, expected {n}",
                selection.len()
            )));
        }
        let mut matrix = vec![vec![0.0f64; n]; n];
        let mut rhs = vec![0.0f64; n];
        for (r, rhs_v) in rhs.iter_mut().enumerate() {
            for (c, &col) in selection.iter().enumerate() {
                matrix[r][c] = self.column_entry(&self.columns[col], r);
            }
            *rhs_v = if r == self.rows.len() {
                1.0
            } else {
                let (cell, j) = self.rows[r];
                self.cells[cell].focal[j].1
            };
        }
        let solution = lu_solve(matrix.clone(), rhs.clone())
            .ok_or_else(|| Error::SingularSystem(selection.to_vec()))?;
        Ok(SolutionSystem {
            selection: selection.to_vec(),
            matrix,
            rhs,
            solution,
        })
    }

    /// Class-T substitutions available from `selection` for the selected
    /// column at position `pos`. Each consists of a covering set of
    /// companions (selected columns matching every cell choice of the
    /// target) and `|companions| - 2` further selection columns, chosen so
    /// that the formal sum of columns is another admissible column not yet
    /// selected. Candidates are ordered by the replacement column's subset
    /// mask for deterministic tie-breaking.
    fn substitutions(&self, selection: &[usize], pos: usize) -> Vec<Substitution> {
        let n_cells = self.cells.len();
        let target = &self.columns[selection[pos]];
        let others: Vec<usize> = (0..selection.len()).filter(|&k| k != pos).collect();
        let mut out: Vec<Substitution> = Vec::new();
        let max_companions = n_cells.min(others.len());
        for size in 2..=max_companions {
            for companions in combinations(&others, size) {
                let covers = (0..n_cells).all(|cell| {
                    companions
                        .iter()
                        .any(|&k| self.columns[selection[k]].choices[cell] == target.choices[cell])
                });
                if !covers {
                    continue;
                }
                let free: Vec<usize> = others
                    .iter()
                    .copied()
                    .filter(|k| !companions.contains(k))
                    .collect();
                for extras in combinations(&free, size - 2) {
                    if let Some(new_col) = self.formal_sum(selection, pos, &companions, &extras) {
                        if !selection.contains(&new_col)
                            && !out.iter().any(|s| s.replacement == new_col)
                        {
                            out.push(Substitution {
                                position: pos,
                                replacement: new_col,
                                companions: companions.clone(),
                                selections: extras.clone(),
                            });
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            self.columns[a.replacement]
                .subset
                .cmp(&self.columns[b.replacement].subset)
        });
        out
    }

    /// Evaluate `-e + Σ companions - Σ extras` rowwise; a valid substitution
    /// yields the 0/1 pattern of another admissible column, which is then
    /// decoded back into per-cell choices.
    fn formal_sum(
        &self,
        selection: &[usize],
        pos: usize,
        companions: &[usize],
        extras: &[usize],
    ) -> Option<usize> {
        let rows = self.rows.len() + 1;
        let mut pattern = vec![0i32; rows];
        for (r, p) in pattern.iter_mut().enumerate() {
            let mut v = -(self.column_entry(&self.columns[selection[pos]], r) as i32);
            for &k in companions {
                v += self.column_entry(&self.columns[selection[k]], r) as i32;
            }
            for &k in extras {
                v -= self.column_entry(&self.columns[selection[k]], r) as i32;
            }
            if v != 0 && v != 1 {
                return None;
            }
            *p = v;
        }
        if pattern[rows - 1] != 1 {
            return None;
        }
        let mut choices: Vec<usize> = self.cells.iter().map(|c| c.focal.len() - 1).collect();
        let mut assigned = vec![false; self.cells.len()];
        for (r, &(cell, j)) in self.rows.iter().enumerate() {
            if pattern[r] == 1 {
                if assigned[cell] {
                    return None; // two rows of the same cell set
                }
                assigned[cell] = true;
                choices[cell] = j;
            }
        }
        self.columns.iter().position(|c| c.choices == choices)
    }

    /// Find a selection with a non-negative solution. Deterministic: the
    /// walk starts from the lexicographically first non-singular selection
    /// and substitutes the most negative component; if the walk stalls,
    /// every selection is tried in lexicographic order (when `n_max` is
    /// within the exhaustive cap).
    pub fn solve(&self) -> Result<CellSolution> {
        let n = self.min_focal_count();
        let n_max = self.n_max();
        let mut trace = Vec::new();

        let initial = self.first_nonsingular(n, n_max, &mut trace)?;
        if let Some(found) = self.walk(initial, &mut trace)? {
            return Ok(found);
        }
        if n_max <= EXHAUSTIVE_CAP {
            let mut sel: Vec<usize> = (0..n).collect();
            loop {
                if let Ok(sys) = self.build_system(&sel) {
                    if sys.min_component() >= -POSITIVITY_TOL {
                        return Ok(self.accept(sys));
                    }
                }
                if !next_combination(&mut sel, n_max) {
                    break;
                }
            }
            trace.push("exhaustive enumeration found no admissible selection".into());
        } else {
            trace.push(format!(
                "n_max {n_max} above the exhaustive cap {EXHAUSTIVE_CAP}"
            ));
        }
        Err(Error::UnsolvedInstance(format!(
            "no admissible selection of {n} of {n_max} columns; trace: {}",
            trace.join("; ")
        )))
    }

    fn first_nonsingular(
        &self,
        n: usize,
        n_max: usize,
        trace: &mut Vec<String>,
    ) -> Result<SolutionSystem> {
        let mut sel: Vec<usize> = (0..n).collect();
        loop {
            match self.build_system(&sel) {
                Ok(sys) => return Ok(sys),
                Err(_) => trace.push(format!("initial selection {sel:?} singular")),
            }
            if !next_combination(&mut sel, n_max) {
                return Err(Error::UnsolvedInstance(
                    "every minimal column selection is singular".into(),
                ));
            }
        }
    }

    /// Iterated class-T substitution of the most negative component.
    /// Returns `Ok(None)` when the walk stalls on a system that still has
    /// negative components but admits no substitution.
    fn walk(
        &self,
        mut sys: SolutionSystem,
        trace: &mut Vec<String>,
    ) -> Result<Option<CellSolution>> {
        // The most negative component shrinks at every step, so systems are
        // never revisited; the budget is a defensive bound only.
        let mut budget = 4 * binomial(self.n_max(), self.min_focal_count()).max(16);
        loop {
            let (pos, worst) = sys.most_negative();
            if worst >= -POSITIVITY_TOL {
                return Ok(Some(self.accept(sys)));
            }
            let subs = self.substitutions(&sys.selection, pos);
            let Some(sub) = subs.first() else {
                trace.push(format!(
                    "walk stalled at {:?} with component {worst:.6}",
                    sys.selection
                ));
                return Ok(None);
            };
            let mut selection = sys.selection.clone();
            selection[pos] = sub.replacement;
            let next = self.build_system(&selection)?;
            self.check_substitution_effects(&sys, &next, sub, worst)?;
            trace.push(format!("substitute {:?} -> {:?}", sys.selection, selection));
            // Canonical column order for reproducible traces and results.
            selection.sort_unstable();
            sys = self.build_system(&selection)?;
            budget -= 1;
            if budget == 0 {
                trace.push("walk budget exhausted".into());
                return Ok(None);
            }
        }
    }

    /// The predicted effect of a class-T substitution on the solution:
    /// the replaced component flips sign, companions decrease by |s|,
    /// selection columns increase by |s|, everything else is unchanged.
    /// Checked on every applied substitution.
    fn check_substitution_effects(
        &self,
        old: &SolutionSystem,
        new: &SolutionSystem,
        sub: &Substitution,
        s: f64,
    ) -> Result<()> {
        let tol = 1e-7;
        for k in 0..old.selection.len() {
            let expected = if k == sub.position {
                -s
            } else if sub.companions.contains(&k) {
                old.solution[k] - s.abs()
            } else if sub.selections.contains(&k) {
                old.solution[k] + s.abs()
            } else {
                old.solution[k]
            };
            if (new.solution[k] - expected).abs() > tol {
                return Err(Error::UnsolvedInstance(format!(
                    "substitution effect mismatch at position {k}: got {}, expected {expected}",
                    new.solution[k]
                )));
            }
        }
        Ok(())
    }

    fn accept(&self, sys: SolutionSystem) -> CellSolution {
        let entries: Vec<(Subset, f64)> = sys
            .selection
            .iter()
            .zip(sys.solution.iter())
            .filter(|(_, &v)| v > POSITIVITY_TOL)
            .map(|(&c, &v)| (self.columns[c].subset.clone(), v))
            .collect();
        let mass = MassFunction::new(self.frame.clone(), entries, Mode::Normalized)
            .expect("admissible solution is a mass function");
        CellSolution { system: sys, mass }
    }

    /// Count the admissible selections by exhaustive enumeration.
    pub fn count_admissible(&self) -> Result<usize> {
        let n = self.min_focal_count();
        let n_max = self.n_max();
        if n_max > EXHAUSTIVE_CAP {
            return Err(Error::OperationTooLarge {
                what: "admissible-selection count",
                size: n_max,
                cap: EXHAUSTIVE_CAP,
            });
        }
        let mut sel: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            if let Ok(sys) = self.build_system(&sel) {
                if sys.min_component() >= -POSITIVITY_TOL {
                    count += 1;
                }
            }
            if !next_combination(&mut sel, n_max) {
                return Ok(count);
            }
        }
    }

    /// The solution graph: nodes are the non-singular minimal column
    /// selections, edges the class-T substitutions between them.
    pub fn solution_graph(&self) -> Result<SolutionGraph> {
        let n = self.min_focal_count();
        let n_max = self.n_max();
        let total = binomial(n_max, n);
        if total > GRAPH_CAP {
            return Err(Error::OperationTooLarge {
                what: "solution graph",
                size: total,
                cap: GRAPH_CAP,
            });
        }
        let mut nodes = Vec::new();
        let mut sel: Vec<usize> = (0..n).collect();
        loop {
            if let Ok(sys) = self.build_system(&sel) {
                let admissible = sys.min_component() >= -POSITIVITY_TOL;
                nodes.push(GraphNode {
                    selection: sel.clone(),
                    solution: sys.solution,
                    admissible,
                });
            }
            if !next_combination(&mut sel, n_max) {
                break;
            }
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (a, node) in nodes.iter().enumerate() {
            for pos in 0..node.selection.len() {
                for sub in self.substitutions(&node.selection, pos) {
                    let mut other = node.selection.clone();
                    other[pos] = sub.replacement;
                    other.sort_unstable();
                    if let Some(b) = nodes.iter().position(|m| m.selection == other) {
                        let edge = (a.min(b), a.max(b));
                        if a != b && !edges.contains(&edge) {
                            edges.push(edge);
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        Ok(SolutionGraph { nodes, edges })
    }
}

#[derive(Debug, Clone)]
struct Substitution {
    position: usize,
    replacement: usize,
    companions: Vec<usize>,
    selections: Vec<usize>,
}

/// A solved square system over a minimal column selection.
#[derive(Debug, Clone)]
pub struct SolutionSystem {
    pub selection: Vec<usize>,
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub solution: Vec<f64>,
}

impl SolutionSystem {
    pub fn min_component(&self) -> f64 {
        self.solution.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn most_negative(&self) -> (usize, f64) {
        let mut pos = 0;
        let mut worst = f64::INFINITY;
        for (k, &v) in self.solution.iter().enumerate() {
            if v < worst {
                worst = v;
                pos = k;
            }
        }
        (pos, worst)
    }
}

/// An admissible minimal solution for one prior focal element.
#[derive(Debug, Clone)]
pub struct CellSolution {
    pub system: SolutionSystem,
    pub mass: MassFunction,
}

#[derive(Debug, Clone)]
pub struct GraphNode {
    pub selection: Vec<usize>,
    pub solution: Vec<f64>,
    pub admissible: bool,
}

#[derive(Debug, Clone)]
pub struct SolutionGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<(usize, usize)>,
}

impl SolutionGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &(x, y) in &self.edges {
                let next = if x == a {
                    y
                } else if y == a {
                    x
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The full solution: one admissible minimal fragment per prior focal
/// element, weighed by the prior masses into a total belief function.
#[derive(Debug, Clone)]
pub struct TotalBeliefSolution {
    pub total: MassFunction,
    pub cells: Vec<(Subset, CellSolution)>,
}

/// Solve every cell subproblem (optionally across `threads`) and assemble
/// the total belief function.
pub fn solve(problem: &TotalBeliefProblem, threads: usize) -> Result<TotalBeliefSolution> {
    let focals: Vec<Subset> = problem
        .prior()
        .focal_elements()
        .map(|(s, _)| s.clone())
        .collect();
    let solutions: Vec<Result<(Subset, CellSolution)>> = if threads > 1 && focals.len() > 1 {
        std::thread::scope(|scope| {
            let handles: Vec<_> = focals
                .iter()
                .map(|focal| {
                    let focal = focal.clone();
                    scope.spawn(move || -> Result<(Subset, CellSolution)> {
                        let cell = problem.cell_problem(&focal)?;
                        Ok((focal, cell.solve()?))
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("cell solver panicked"))
                .collect()
        })
    } else {
        focals
            .iter()
            .map(|focal| {
                let cell = problem.cell_problem(focal)?;
                Ok((focal.clone(), cell.solve()?))
            })
            .collect()
    };
    let cells: Vec<(Subset, CellSolution)> = solutions.into_iter().collect::<Result<Vec<_>>>()?;
    let total = assemble_total(problem, &cells)?;
    Ok(TotalBeliefSolution { total, cells })
}

/// Scale each cell solution by its prior mass and merge into one mass
/// function on the fine frame.
pub fn assemble_total(
    problem: &TotalBeliefProblem,
    cells: &[(Subset, CellSolution)],
) -> Result<MassFunction> {
    let mut entries: Vec<(Subset, f64)> = Vec::new();
    for (focal, weight) in problem.prior().focal_elements() {
        let (_, cell) = cells.iter().find(|(s, _)| s == focal).ok_or_else(|| {
            Error::InvalidProblem(format!(
                "missing cell solution for prior focal element {}",
                problem.prior().frame().describe(focal)
            ))
        })?;
        for (s, v) in cell.mass.focal_elements() {
            entries.push((s.clone(), weight * v));
        }
    }
    MassFunction::new(problem.fine_frame().clone(), entries, Mode::Normalized)
}

/// Constraint replay for a candidate total belief function.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Restriction of the candidate equals the prior (within 1e-9).
    pub restriction_ok: bool,
    /// Per-cell check that conditioning on the cell reproduces the
    /// conditional.
    pub conditionals: Vec<(usize, bool)>,
    /// Every focal element outer-reduces to a prior focal element.
    pub structure_ok: bool,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.restriction_ok && self.structure_ok && self.conditionals.iter().all(|(_, ok)| *ok)
    }
}

/// Check the two total-belief constraints and the focal-element structure.
/// Report-only: a bad candidate yields a failing report, not an error.
pub fn verify_total(
    candidate: &MassFunction,
    problem: &TotalBeliefProblem,
) -> Result<VerifyReport> {
    problem
        .fine_frame()
        .ensure_same(candidate.frame(), "total-belief candidate")?;
    let restriction = problem.refining().restriction(candidate)?;
    let restriction_ok = restriction.approx_eq(problem.prior(), MASS_TOL);

    let mut conditionals = Vec::new();
    for (focal, _) in problem.prior().focal_elements() {
        for omega in focal.iter() {
            let cell = problem.refining().image_of_element(omega);
            let expected = problem
                .conditional(omega)
                .expect("validated at construction");
            let ok = match dempster_condition(candidate, cell) {
                Ok(conditioned) => conditioned.approx_eq(expected, MASS_TOL),
                Err(_) => false,
            };
            conditionals.push((omega, ok));
        }
    }

    let mut structure_ok = true;
    for (s, _) in candidate.focal_elements() {
        let reduced = problem.refining().outer_reduction(s)?;
        if problem.prior().mass(&reduced) <= 0.0 {
            structure_ok = false;
        }
    }
    Ok(VerifyReport {
        restriction_ok,
        conditionals,
        structure_ok,
    })
}

/// Dense LU with partial pivoting; `None` on a singular matrix.
#[allow(clippy::needless_range_loop)] // the elimination reads one row while writing another
fn lu_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Advance `sel` to the next k-combination of `0..n` in lexicographic
/// order; false when exhausted.
fn next_combination(sel: &mut [usize], n: usize) -> bool {
    let k = sel.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if sel[i] < n - (k - i) {
            sel[i] += 1;
            for j in i + 1..k {
                sel[j] = sel[j - 1] + 1;
            }
            return true;
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > items.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        if !next_combination(&mut idx, items.len()) {
            return out;
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
