//! Wave-function-collapse set covering.
//!
//! Every set starts *active*, as does every element. Each active set tracks
//!
//! * `entropy`: how many of its elements are still active, and
//! * `conflicts`: for each of its active elements, how many *other* active
//!   sets contain that element, summed.
//!
//! The solver repeatedly *observes* the active set with the worst score,
//! *propagates* its removal, and *collapses* (commits to the answer) any set
//! that has become the sole active container of some element. Collapsing
//! deactivates the set's elements and drops every set left with entropy 0.
//! The loop ends when no active set remains, at which point the answer covers
//! the universe.
//!
//! All counters are maintained incrementally. [`WfcState::recompute_audit`]
//! rebuilds them from the active flags alone so tests can compare the two.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::{Cover, ElemId, Instance, SetId};
use crate::rng::{seeded, SolverRng, TieBreak};

/// Conflicts exponent used by the scored observe unless overridden.
pub const DEFAULT_CONFLICT_EXPONENT: f64 = 0.9;

/// How observe ranks active sets. Higher is removed first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scoring {
    /// `conflicts / entropy`.
    AverageConflicts,
    /// `conflicts^c / entropy^exp`.
    Scored { exp: f64, c: f64 },
}

impl Scoring {
    pub fn score(self, conflicts: i64, entropy: i64) -> f64 {
        match self {
            Scoring::AverageConflicts => conflicts as f64 / entropy as f64,
            Scoring::Scored { exp, c } => (conflicts as f64).powf(c) / (entropy as f64).powf(exp),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Scoring::AverageConflicts => Ok(()),
            Scoring::Scored { exp, c } => {
                if !(c > 0.0 && c.is_finite()) {
                    return Err(Error::InvalidParam(format!(
                        "conflicts exponent must be finite and > 0, got {c}"
                    )));
                }
                if !exp.is_finite() {
                    return Err(Error::InvalidParam(format!(
                        "entropy exponent must be finite, got {exp}"
                    )));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WfcParams {
    pub seed: u64,
    pub scoring: Scoring,
    pub tie_break: TieBreak,
}

impl WfcParams {
    /// Average-conflicts observe.
    pub fn plain(seed: u64) -> Self {
        Self {
            seed,
            scoring: Scoring::AverageConflicts,
            tie_break: TieBreak::Random,
        }
    }

    /// `conflicts^c / entropy^exp` observe.
    pub fn scored(seed: u64, exp: f64, c: f64) -> Self {
        Self {
            seed,
            scoring: Scoring::Scored { exp, c },
            tie_break: TieBreak::Random,
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }
}

/// Counters keyed by identifier, for active sets and active elements only.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Audit {
    pub conflicts: BTreeMap<SetId, i64>,
    pub entropy: BTreeMap<SetId, i64>,
    pub containers: BTreeMap<ElemId, i64>,
}

/// Cached observe scores plus the list of sets that may still be active.
///
/// Scores are recomputed only for sets whose counters changed since the last
/// observe. Powers are memoised per integer argument, which keeps the values
/// bit-identical to [`Scoring::score`].
#[derive(Debug, Clone)]
struct ScoreBoard {
    scoring: Option<Scoring>,
    values: Vec<f64>,
    dirty: Vec<SetId>,
    is_dirty: Vec<bool>,
    /// Ascending; entries for deactivated sets are dropped lazily.
    candidates: Vec<SetId>,
    conflict_pow: Vec<f64>,
    entropy_pow: Vec<f64>,
}

impl ScoreBoard {
    fn new(num_sets: usize, max_conflicts: i64, max_entropy: i64) -> Self {
        Self {
            scoring: None,
            values: vec![0.0; num_sets],
            dirty: Vec::new(),
            is_dirty: vec![false; num_sets],
            candidates: (0..num_sets).collect(),
            conflict_pow: vec![f64::NAN; max_conflicts as usize + 1],
            entropy_pow: vec![f64::NAN; max_entropy as usize + 1],
        }
    }

    fn touch(&mut self, s: SetId) {
        if !self.is_dirty[s] {
            self.is_dirty[s] = true;
            self.dirty.push(s);
        }
    }

    fn score(&mut self, scoring: Scoring, conflicts: i64, entropy: i64) -> f64 {
        let Scoring::Scored { exp, c } = scoring else {
            return scoring.score(conflicts, entropy);
        };
        let memo = |table: &mut Vec<f64>, x: i64, power: f64| {
            let slot = &mut table[x as usize];
            if slot.is_nan() {
                *slot = (x as f64).powf(power);
            }
            *slot
        };
        memo(&mut self.conflict_pow, conflicts, c) / memo(&mut self.entropy_pow, entropy, exp)
    }

    fn refresh(&mut self, scoring: Scoring, active: &[bool], conflicts: &[i64], entropy: &[i64]) {
        self.candidates.retain(|&s| active[s]);
        if self.scoring != Some(scoring) {
            self.scoring = Some(scoring);
            self.conflict_pow.fill(f64::NAN);
            self.entropy_pow.fill(f64::NAN);
            for i in 0..self.candidates.len() {
                let s = self.candidates[i];
                self.values[s] = self.score(scoring, conflicts[s], entropy[s]);
            }
            for s in self.dirty.drain(..) {
                self.is_dirty[s] = false;
            }
            return;
        }
        while let Some(s) = self.dirty.pop() {
            self.is_dirty[s] = false;
            if active[s] {
                self.values[s] = self.score(scoring, conflicts[s], entropy[s]);
            }
        }
    }

    /// Best (score desc, entropy asc) among the candidates, with the tie
    /// class resolved by `tie_break`.
    fn best(&self, entropy: &[i64], tie_break: TieBreak, rng: &mut SolverRng) -> Option<SetId> {
        let mut best_score = f64::NEG_INFINITY;
        let mut best_entropy = i64::MAX;
        let mut first = None;
        let mut ties = 0;
        for &s in &self.candidates {
            let (v, e) = (self.values[s], entropy[s]);
            if v > best_score || (v == best_score && e < best_entropy) {
                best_score = v;
                best_entropy = e;
                first = Some(s);
                ties = 1;
            } else if v == best_score && e == best_entropy {
                ties += 1;
            }
        }
        let winner = pick_tied(ties, tie_break, rng);
        if winner == 0 {
            return first;
        }
        self.candidates
            .iter()
            .copied()
            .filter(|&s| self.values[s] == best_score && entropy[s] == best_entropy)
            .nth(winner)
    }
}

/// Index of the winner among `ties` candidates listed in ascending id order.
pub(crate) fn pick_tied(ties: usize, tie_break: TieBreak, rng: &mut SolverRng) -> usize {
    match tie_break {
        _ if ties <= 1 => 0,
        TieBreak::LowestIndex => 0,
        TieBreak::Random => rng.gen_range(0..ties),
    }
}

/// Mutable solver state for one WFC run over a shared [`Instance`].
#[derive(Debug, Clone)]
pub struct WfcState<'a> {
    instance: &'a Instance,
    scoring: Scoring,
    set_active: Vec<bool>,
    elem_active: Vec<bool>,
    conflicts: Vec<i64>,
    entropy: Vec<i64>,
    containers: Vec<i64>,
    active_sets: usize,
    ans: Vec<SetId>,
    rng: SolverRng,
    tie_break: TieBreak,
    pending: VecDeque<SetId>,
    board: ScoreBoard,
}

impl<'a> WfcState<'a> {
    /// Everything active, counters computed from scratch, no collapses yet.
    pub fn fresh(instance: &'a Instance, params: &WfcParams) -> Result<Self> {
        params.scoring.validate()?;
        let m = instance.num_sets();
        let n = instance.universe_size();
        let containers: Vec<i64> = (0..n).map(|x| instance.sets_containing(x).len() as i64).collect();
        let entropy = (0..m).map(|s| instance.elements_of(s).len() as i64).collect();
        let conflicts: Vec<i64> = (0..m)
            .map(|s| instance.elements_of(s).iter().map(|&x| containers[x] - 1).sum())
            .collect();
        let board = ScoreBoard::new(
            m,
            conflicts.iter().copied().max().unwrap_or(0),
            instance.max_set_size() as i64,
        );
        Ok(Self {
            instance,
            scoring: params.scoring,
            set_active: vec![true; m],
            elem_active: vec![true; n],
            conflicts,
            entropy,
            containers,
            active_sets: m,
            ans: Vec::new(),
            rng: seeded(params.seed),
            tie_break: params.tie_break,
            pending: VecDeque::new(),
            board,
        })
    }

    /// [`WfcState::fresh`] followed by collapsing the sole container of
    /// every element that has exactly one.
    pub fn init(instance: &'a Instance, params: &WfcParams) -> Result<Self> {
        let mut state = Self::fresh(instance, params)?;
        for x in 0..instance.universe_size() {
            if state.elem_active[x] && state.containers[x] == 1 {
                let sole = state.sole_container(x)?;
                state.collapse(sole)?;
            }
        }
        Ok(state)
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn active_set_count(&self) -> usize {
        self.active_sets
    }

    pub fn is_set_active(&self, s: SetId) -> bool {
        self.set_active[s]
    }

    pub fn is_elem_active(&self, x: ElemId) -> bool {
        self.elem_active[x]
    }

    /// `None` for inactive sets.
    pub fn conflicts(&self, s: SetId) -> Option<i64> {
        self.set_active[s].then(|| self.conflicts[s])
    }

    /// `None` for inactive sets.
    pub fn entropy(&self, s: SetId) -> Option<i64> {
        self.set_active[s].then(|| self.entropy[s])
    }

    /// `None` for inactive elements.
    pub fn containers(&self, x: ElemId) -> Option<i64> {
        self.elem_active[x].then(|| self.containers[x])
    }

    /// Sets collapsed so far, in commit order.
    pub fn answer(&self) -> &[SetId] {
        &self.ans
    }

    pub fn into_cover(self) -> Cover {
        Cover::from_distinct(self.instance.name(), self.ans)
    }

    /// Observe with the scoring rule this state was built with.
    pub fn observe_default(&mut self) -> Result<SetId> {
        self.observe_with(self.scoring)
    }

    /// The active set with the highest average conflicts.
    pub fn observe(&mut self) -> Result<SetId> {
        self.observe_with(Scoring::AverageConflicts)
    }

    /// The active set with the highest `conflicts^c / entropy^exp`.
    pub fn observe_scored(&mut self, exp: f64, c: f64) -> Result<SetId> {
        let scoring = Scoring::Scored { exp, c };
        scoring.validate()?;
        self.observe_with(scoring)
    }

    /// Highest score wins; ties go to the lowest entropy, then to the
    /// tie-break rule. Scores tie only when bit-equal.
    fn observe_with(&mut self, scoring: Scoring) -> Result<SetId> {
        self.board
            .refresh(scoring, &self.set_active, &self.conflicts, &self.entropy);
        self.board
            .best(&self.entropy, self.tie_break, &mut self.rng)
            .ok_or(Error::Exhausted)
    }

    /// Removes active set `s` without adding it to the answer, then collapses
    /// every set that became the sole container of one of its elements.
    pub fn propagate(&mut self, s: SetId) -> Result<()> {
        self.require_active(s)?;
        let instance = self.instance;
        if let Some(&x) = instance
            .elements_of(s)
            .iter()
            .find(|&&x| self.elem_active[x] && self.containers[x] < 2)
        {
            return Err(Error::Contract(format!(
                "removing set {s} would leave element {x} without an active container"
            )));
        }
        self.deactivate(s);
        for &x in instance.elements_of(s) {
            if !self.elem_active[x] {
                continue;
            }
            self.containers[x] -= 1;
            for &t in instance.sets_containing(x) {
                if self.set_active[t] {
                    self.conflicts[t] -= 1;
                    self.board.touch(t);
                }
            }
            if self.containers[x] == 1 {
                let sole = self.sole_container(x)?;
                self.pending.push_back(sole);
            }
        }
        self.drain_pending();
        Ok(())
    }

    /// Commits active set `s` to the answer and deactivates its elements.
    pub fn collapse(&mut self, s: SetId) -> Result<()> {
        self.require_active(s)?;
        self.pending.push_back(s);
        self.drain_pending();
        Ok(())
    }

    /// One iteration of the main loop: observe, then propagate.
    pub fn step(&mut self) -> Result<SetId> {
        let s = self.observe_default()?;
        self.propagate(s)?;
        Ok(s)
    }

    fn drain_pending(&mut self) {
        while let Some(s) = self.pending.pop_front() {
            if self.set_active[s] {
                self.collapse_one(s);
            }
        }
    }

    fn collapse_one(&mut self, s: SetId) {
        let instance = self.instance;
        self.ans.push(s);
        for &x in instance.elements_of(s) {
            if !self.elem_active[x] {
                continue;
            }
            let others = self.containers[x] - 1;
            for &t in instance.sets_containing(x) {
                if t == s || !self.set_active[t] {
                    continue;
                }
                self.conflicts[t] -= others;
                self.entropy[t] -= 1;
                self.board.touch(t);
                if self.entropy[t] == 0 {
                    self.deactivate(t);
                }
            }
            self.elem_active[x] = false;
            self.containers[x] = 0;
        }
        self.deactivate(s);
    }

    fn deactivate(&mut self, s: SetId) {
        debug_assert!(self.set_active[s]);
        self.set_active[s] = false;
        self.board.touch(s);
        self.active_sets -= 1;
    }

    fn require_active(&self, s: SetId) -> Result<()> {
        match self.set_active.get(s) {
            Some(true) => Ok(()),
            Some(false) => Err(Error::Contract(format!("set {s} is not active"))),
            None => Err(Error::UnknownSet(s)),
        }
    }

    fn sole_container(&self, x: ElemId) -> Result<SetId> {
        self.instance
            .sets_containing(x)
            .iter()
            .copied()
            .find(|&t| self.set_active[t])
            .ok_or_else(|| Error::Contract(format!("element {x} has no active container")))
    }

    /// Counters rebuilt from the active flags alone.
    pub fn recompute_audit(&self) -> Audit {
        let inst = self.instance;
        let mut audit = Audit::default();
        for x in (0..inst.universe_size()).filter(|&x| self.elem_active[x]) {
            let k = inst.sets_containing(x).iter().filter(|&&t| self.set_active[t]).count();
            audit.containers.insert(x, k as i64);
        }
        for s in (0..inst.num_sets()).filter(|&s| self.set_active[s]) {
            let active: Vec<ElemId> = inst
                .elements_of(s)
                .iter()
                .copied()
                .filter(|&x| self.elem_active[x])
                .collect();
            audit.entropy.insert(s, active.len() as i64);
            audit
                .conflicts
                .insert(s, active.iter().map(|x| audit.containers[x] - 1).sum());
        }
        audit
    }

    /// The incrementally maintained counters in [`Audit`] form.
    pub fn incremental(&self) -> Audit {
        let active_sets = || (0..self.set_active.len()).filter(|&s| self.set_active[s]);
        Audit {
            conflicts: active_sets().map(|s| (s, self.conflicts[s])).collect(),
            entropy: active_sets().map(|s| (s, self.entropy[s])).collect(),
            containers: (0..self.elem_active.len())
                .filter(|&x| self.elem_active[x])
                .map(|x| (x, self.containers[x]))
                .collect(),
        }
    }

    /// Checks every state invariant that must hold between top-level
    /// operations: counters match the audit, active elements have at least
    /// two containers, and inactive elements are covered by the answer.
    pub fn check_invariants(&self) -> Result<()> {
        let incremental = self.incremental();
        if incremental != self.recompute_audit() {
            return Err(Error::Contract(
                "incremental counters diverge from recomputation".into(),
            ));
        }
        if let Some((x, k)) = incremental.containers.iter().find(|(_, &k)| k < 2) {
            return Err(Error::Contract(format!("active element {x} has {k} container(s)")));
        }
        for (&s, &e) in &incremental.entropy {
            if e < 1 || incremental.conflicts[&s] < e {
                return Err(Error::Contract(format!(
                    "set {s}: entropy {e}, conflicts {}",
                    incremental.conflicts[&s]
                )));
            }
        }
        if self.active_sets != incremental.entropy.len() {
            return Err(Error::Contract("active set count out of sync".into()));
        }
        let covered = self.instance.union_of(&self.ans);
        if let Some(x) = (0..self.elem_active.len()).find(|&x| self.elem_active[x] == covered.contains(x)) {
            return Err(Error::Contract(format!(
                "element {x}: activity disagrees with coverage by the answer"
            )));
        }
        Ok(())
    }
}

/// Linear-scan observe over raw counters, used to check the ranked index.
/// Candidates must arrive in ascending identifier order.
#[cfg(test)]
pub(crate) fn select_best(
    candidates: impl Iterator<Item = (SetId, f64, i64)>,
    tie_break: TieBreak,
    rng: &mut SolverRng,
) -> Option<SetId> {
    let mut best: Option<(f64, i64)> = None;
    let mut tied = Vec::new();
    for (s, score, entropy) in candidates {
        let better = match best {
            None => true,
            Some((b, e)) => score > b || (score == b && entropy < e),
        };
        if better {
            best = Some((score, entropy));
            tied.clear();
            tied.push(s);
        } else if best == Some((score, entropy)) {
            tied.push(s);
        }
    }
    (!tied.is_empty()).then(|| tied[pick_tied(tied.len(), tie_break, rng)])
}

/// Runs WFC to completion and returns the collapsed sets.
pub fn wfc_solve(instance: &Instance, params: &WfcParams) -> Result<Cover> {
    let mut state = WfcState::init(instance, params)?;
    while state.active_set_count() > 0 {
        state.step()?;
    }
    Ok(state.into_cover())
}
