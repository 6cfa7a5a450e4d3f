//! Exhaustive adversarial search over certificate assignments.
//!
//! The search assigns candidates vertex by vertex in BFS order and evaluates
//! the verifier at a vertex as soon as its whole radius-`r` ball has been
//! assigned. A rejection prunes the subtree: no completion of that partial
//! assignment can be accepted everywhere. The pruned search therefore visits
//! the same accepted assignments, in the same order, as plain enumeration.

use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{Certificates, Scheme};
use crate::bits::{all_strings_up_to, count_strings_up_to, BitString};
use crate::error::{Error, Result};
use crate::graph::{induced_view, Graph, LocalView, VertexId};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of candidate placements tried before giving up.
    pub budget: u64,
    /// Wall-clock limit; hitting it is reported like an exhausted budget.
    pub deadline: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 50_000_000, deadline: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SoundnessOutcome {
    /// Every assignment in the space is rejected somewhere.
    Sound {
        /// `log2` of the number of assignments covered.
        space_log2: u64,
        steps: u64,
    },
    /// An assignment accepted at every vertex.
    Fooled { witness: Certificates, steps: u64 },
    /// The search stopped before covering the space.
    BudgetExceeded { at: u64 },
}

impl SoundnessOutcome {
    pub fn is_sound(&self) -> bool {
        matches!(self, SoundnessOutcome::Sound { .. })
    }

    pub fn witness(&self) -> Option<&Certificates> {
        match self {
            SoundnessOutcome::Fooled { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// The raw search space: every vertex ranges over all bit strings of length
/// `0..=max_bits`, shorter first and lexicographic within a length.
pub fn search_space(g: &Graph, max_bits: usize) -> BTreeMap<VertexId, Vec<BitString>> {
    let all: Vec<BitString> = all_strings_up_to(max_bits).collect();
    g.vertices().map(|v| (v, all.clone())).collect()
}

/// Searches every assignment of bit strings of length at most `max_bits`.
pub fn soundness_search(
    scheme: &dyn Scheme,
    no_instance: &Graph,
    max_bits: usize,
    config: &SearchConfig,
) -> Result<SoundnessOutcome> {
    let per_vertex = count_strings_up_to(max_bits);
    let space_log2 = (no_instance.vertex_count() as f64 * (per_vertex as f64).log2()).ceil();
    if space_log2 > 4096.0 || max_bits > 24 {
        return Ok(SoundnessOutcome::BudgetExceeded { at: 0 });
    }
    soundness_search_in(scheme, no_instance, &search_space(no_instance, max_bits), config)
}

/// Searches the product of the given per-vertex candidate lists.
pub fn soundness_search_in(
    scheme: &dyn Scheme,
    g: &Graph,
    candidates: &BTreeMap<VertexId, Vec<BitString>>,
    config: &SearchConfig,
) -> Result<SoundnessOutcome> {
    if let Some(v) = g.vertices().find(|v| !candidates.contains_key(v)) {
        return Err(Error::Input(format!("no candidate list for vertex {v}")));
    }
    let plan = Plan::new(scheme, g)?;
    let lists: Vec<&[BitString]> = plan.order.iter().map(|v| candidates[v].as_slice()).collect();
    let space_log2 = lists.iter().map(|l| (l.len().max(1) as f64).log2()).sum::<f64>().ceil() as u64;
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(SoundnessOutcome::Sound { space_log2: 0, steps: 0 });
    }

    let started = Instant::now();
    let branches = lists[0].len() as u64;
    let branch_budget = config.budget.div_ceil(branches).max(1);
    let results: Vec<(Branch, u64)> = (0..lists[0].len())
        .into_par_iter()
        .map(|first| {
            let mut run = Run {
                scheme,
                plan: &plan,
                lists: &lists,
                views: plan.views.clone(),
                chosen: vec![0; lists.len()],
                steps: 0,
                budget: branch_budget,
                started,
                deadline: config.deadline,
            };
            let outcome = run.place(0, first);
            (outcome, run.steps)
        })
        .collect();

    let mut total = 0u64;
    for (outcome, steps) in results {
        total += steps;
        match outcome {
            Branch::Exhausted => {}
            Branch::Found(chosen) => {
                let witness =
                    plan.order.iter().zip(&chosen).enumerate().map(|(i, (&v, &c))| (v, lists[i][c].clone())).collect();
                return Ok(SoundnessOutcome::Fooled { witness, steps: total });
            }
            Branch::OutOfBudget => return Ok(SoundnessOutcome::BudgetExceeded { at: total }),
        }
    }
    Ok(SoundnessOutcome::Sound { space_log2, steps: total })
}

struct Plan {
    order: Vec<VertexId>,
    position: BTreeMap<VertexId, usize>,
    /// `views[k]` is the view of vertex `k`'s ball with placeholder certificates.
    views: Vec<LocalView>,
    /// Ball members of each view, as positions in `order`.
    members: Vec<Vec<usize>>,
    /// Views that become fully assigned when position `i` is placed.
    ready_at: Vec<Vec<usize>>,
}

impl Plan {
    fn new(scheme: &dyn Scheme, g: &Graph) -> Result<Self> {
        let order = bfs_order(g);
        let position: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let blank = Certificates::empty_for(g);
        let r = scheme.radius();
        let mut views = Vec::with_capacity(order.len());
        let mut members = Vec::with_capacity(order.len());
        let mut ready_at = vec![Vec::new(); order.len()];
        for &v in &order {
            let view = induced_view(g, &blank, v, r)?;
            let m: Vec<usize> = view.graph().vertices().map(|u| position[&u]).collect();
            let last = *m.iter().max().expect("a ball contains its center");
            ready_at[last].push(views.len());
            members.push(m);
            views.push(view);
        }
        Ok(Plan { order, position, views, members, ready_at })
    }
}

fn bfs_order(g: &Graph) -> Vec<VertexId> {
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut seen = std::collections::BTreeSet::new();
    for start in g.vertices() {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

enum Branch {
    Exhausted,
    Found(Vec<usize>),
    OutOfBudget,
}

struct Run<'a> {
    scheme: &'a dyn Scheme,
    plan: &'a Plan,
    lists: &'a [&'a [BitString]],
    views: Vec<LocalView>,
    chosen: Vec<usize>,
    steps: u64,
    budget: u64,
    started: Instant,
    deadline: Option<Duration>,
}

impl Run<'_> {
    /// Places candidate `c` at position `depth` and explores below it.
    fn place(&mut self, depth: usize, c: usize) -> Branch {
        self.steps += 1;
        if self.steps > self.budget {
            return Branch::OutOfBudget;
        }
        if self.steps.is_multiple_of(4096) {
            if let Some(limit) = self.deadline {
                if self.started.elapsed() > limit {
                    return Branch::OutOfBudget;
                }
            }
        }
        self.chosen[depth] = c;
        if !self.ready_views_accept(depth) {
            return Branch::Exhausted;
        }
        if depth + 1 == self.lists.len() {
            return Branch::Found(self.chosen.clone());
        }
        for next in 0..self.lists[depth + 1].len() {
            match self.place(depth + 1, next) {
                Branch::Exhausted => {}
                other => return other,
            }
        }
        Branch::Exhausted
    }

    fn ready_views_accept(&mut self, depth: usize) -> bool {
        for &k in &self.plan.ready_at[depth] {
            for &p in &self.plan.members[k] {
                let v = self.plan.order[p];
                debug_assert_eq!(self.plan.position[&v], p);
                let cert = self.lists[p][self.chosen[p]].clone();
                self.views[k].set_cert(v, cert);
            }
            if !self.scheme.verify(&self.views[k]) {
                return false;
            }
        }
        true
    }
}
