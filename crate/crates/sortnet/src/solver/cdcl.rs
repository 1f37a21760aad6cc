//! Conflict-driven clause learning with two-literal watching, first-UIP
//! learning with deep minimization, activity-based branching and learnt-clause
//! management, phase saving, and geometric restarts.

use std::time::Instant;

use super::{SolveResult, SolveStats, SolverConfig, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lit(u32);

impl Lit {
    #[inline]
    fn new(var: u32, negated: bool) -> Lit {
        Lit(var << 1 | negated as u32)
    }

    fn from_dimacs(lit: i32) -> Lit {
        Lit::new(lit.unsigned_abs() - 1, lit < 0)
    }

    #[inline]
    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    fn inverse(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    #[inline]
    fn index(self) -> usize {
        self.0 as usize
    }
}

const VALUE_FALSE: u8 = 0;
const VALUE_TRUE: u8 = 1;
const VALUE_UNDEF: u8 = 2;

const LEARNT_BIT: u32 = 1 << 31;

#[derive(Debug, Clone, Copy)]
struct ClauseId(u32);

impl ClauseId {
    fn problem(idx: usize) -> Self {
        ClauseId(idx as u32)
    }
    fn learnt(idx: usize) -> Self {
        ClauseId(idx as u32 | LEARNT_BIT)
    }
    fn is_learnt(self) -> bool {
        self.0 & LEARNT_BIT != 0
    }
    fn idx(self) -> usize {
        (self.0 & !LEARNT_BIT) as usize
    }
}

#[derive(Debug)]
struct LearntClause {
    lits: Vec<Lit>,
    activity: f64,
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    clause: ClauseId,
    blocker: Lit,
}

/// Max-heap over variable activities with position tracking.
#[derive(Debug, Default)]
struct VarHeap {
    heap: Vec<u32>,
    position: Vec<i32>,
}

impl VarHeap {
    fn new(num_vars: usize) -> Self {
        VarHeap {
            heap: (0..num_vars as u32).collect(),
            position: (0..num_vars as i32).collect(),
        }
    }

    fn build(&mut self, activity: &[f64]) {
        for i in (0..self.heap.len() / 2).rev() {
            self.sift_down(i, activity);
        }
    }

    fn contains(&self, var: usize) -> bool {
        self.position[var] >= 0
    }

    fn push(&mut self, var: u32, activity: &[f64]) {
        if self.contains(var as usize) {
            return;
        }
        self.position[var as usize] = self.heap.len() as i32;
        self.heap.push(var);
        self.sift_up(self.heap.len() - 1, activity);
    }

    fn pop(&mut self, activity: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.position[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0, activity);
        }
        Some(top)
    }

    fn decreased_key(&mut self, var: usize, activity: &[f64]) {
        if self.contains(var) {
            self.sift_up(self.position[var] as usize, activity);
        }
    }

    fn sift_up(&mut self, mut i: usize, activity: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if activity[self.heap[i] as usize] <= activity[self.heap[parent] as usize] {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize, activity: &[f64]) {
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let mut best = left;
            if right < self.heap.len()
                && activity[self.heap[right] as usize] > activity[self.heap[left] as usize]
            {
                best = right;
            }
            if activity[self.heap[best] as usize] <= activity[self.heap[i] as usize] {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.position[self.heap[a] as usize] = a as i32;
        self.position[self.heap[b] as usize] = b as i32;
    }
}

struct Solver<'a> {
    cfg: &'a SolverConfig,
    num_vars: usize,
    problem: Vec<Vec<Lit>>,
    learnts: Vec<LearntClause>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<Option<ClauseId>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    queue_head: usize,
    activity: Vec<f64>,
    heap: VarHeap,
    phase: Vec<bool>,
    var_inc: f64,
    cla_inc: f64,
    seen: Vec<bool>,
    stats: SolveStats,
    start: Instant,
    ok: bool,
}

pub(super) fn run(
    num_vars: u32,
    clauses: &[Vec<i32>],
    cfg: &SolverConfig,
    probe_vars: u32,
) -> SolveResult {
    let mut solver = Solver::new(num_vars as usize, cfg);
    for clause in clauses {
        if !solver.add_clause(clause) {
            return solver.finish(Status::Unsat);
        }
    }
    if solver.propagate().is_some() {
        return solver.finish(Status::Unsat);
    }
    if probe_vars > 0 && !solver.probe(probe_vars as usize) {
        return solver.finish(Status::Unsat);
    }
    let status = solver.search();
    solver.finish(status)
}

impl<'a> Solver<'a> {
    fn new(num_vars: usize, cfg: &'a SolverConfig) -> Self {
        Solver {
            cfg,
            num_vars,
            problem: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![VALUE_UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            queue_head: 0,
            activity: vec![0.0; num_vars],
            heap: VarHeap::new(num_vars),
            phase: vec![false; num_vars],
            var_inc: 1.0,
            cla_inc: 1.0,
            seen: vec![false; num_vars],
            stats: SolveStats::default(),
            start: Instant::now(),
            ok: true,
        }
    }

    #[inline]
    fn value(&self, lit: Lit) -> u8 {
        let v = self.assigns[lit.var()];
        if v == VALUE_UNDEF {
            VALUE_UNDEF
        } else {
            v ^ lit.negated() as u8
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Returns false when the clause set is already contradictory.
    fn add_clause(&mut self, clause: &[i32]) -> bool {
        if !self.ok {
            return false;
        }
        let mut lits: Vec<Lit> = clause.iter().map(|&l| Lit::from_dimacs(l)).collect();
        lits.sort_unstable_by_key(|l| l.0);
        lits.dedup();
        // tautology?
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            return true;
        }
        // level-0 simplification
        lits.retain(|&l| self.value(l) != VALUE_FALSE);
        if lits.iter().any(|&l| self.value(l) == VALUE_TRUE) {
            return true;
        }
        match lits.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.unchecked_enqueue(lits[0], None);
                true
            }
            _ => {
                let id = ClauseId::problem(self.problem.len());
                self.attach(id, lits[0], lits[1]);
                self.problem.push(lits);
                true
            }
        }
    }

    fn attach(&mut self, id: ClauseId, first: Lit, second: Lit) {
        self.watches[first.inverse().index()].push(Watcher {
            clause: id,
            blocker: second,
        });
        self.watches[second.inverse().index()].push(Watcher {
            clause: id,
            blocker: first,
        });
    }

    fn clause_lits(&self, id: ClauseId) -> &[Lit] {
        if id.is_learnt() {
            &self.learnts[id.idx()].lits
        } else {
            &self.problem[id.idx()]
        }
    }

    fn unchecked_enqueue(&mut self, lit: Lit, from: Option<ClauseId>) {
        debug_assert_eq!(self.value(lit), VALUE_UNDEF);
        self.assigns[lit.var()] = !lit.negated() as u8;
        self.level[lit.var()] = self.decision_level();
        self.reason[lit.var()] = from;
        self.trail.push(lit);
    }

    fn propagate(&mut self) -> Option<ClauseId> {
        while self.queue_head < self.trail.len() {
            let p = self.trail[self.queue_head];
            self.queue_head += 1;
            self.stats.propagations += 1;
            let false_lit = p.inverse();
            let mut watchers = std::mem::take(&mut self.watches[p.index()]);
            let mut kept = 0;
            let mut i = 0;
            let mut conflict = None;
            'watchers: while i < watchers.len() {
                let w = watchers[i];
                i += 1;
                if self.value(w.blocker) == VALUE_TRUE {
                    watchers[kept] = w;
                    kept += 1;
                    continue;
                }
                let id = w.clause;
                // ensure the false literal sits at position 1
                let first = {
                    let lits = self.clause_lits_mut(id);
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                    debug_assert_eq!(lits[1], false_lit);
                    lits[0]
                };
                if first != w.blocker && self.value(first) == VALUE_TRUE {
                    watchers[kept] = Watcher {
                        clause: id,
                        blocker: first,
                    };
                    kept += 1;
                    continue;
                }
                // search a replacement watch
                let replacement = {
                    let lits = self.clause_lits(id);
                    (2..lits.len()).find(|&k| self.value(lits[k]) != VALUE_FALSE)
                };
                if let Some(k) = replacement {
                    let new_watch = {
                        let lits = self.clause_lits_mut(id);
                        lits.swap(1, k);
                        lits[1]
                    };
                    self.watches[new_watch.inverse().index()].push(Watcher {
                        clause: id,
                        blocker: first,
                    });
                    continue 'watchers;
                }
                // unit or conflicting
                watchers[kept] = Watcher {
                    clause: id,
                    blocker: first,
                };
                kept += 1;
                if self.value(first) == VALUE_FALSE {
                    conflict = Some(id);
                    self.queue_head = self.trail.len();
                    while i < watchers.len() {
                        watchers[kept] = watchers[i];
                        kept += 1;
                        i += 1;
                    }
                } else {
                    self.unchecked_enqueue(first, Some(id));
                }
            }
            watchers.truncate(kept);
            self.watches[p.index()] = watchers;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn clause_lits_mut(&mut self, id: ClauseId) -> &mut Vec<Lit> {
        if id.is_learnt() {
            &mut self.learnts[id.idx()].lits
        } else {
            &mut self.problem[id.idx()]
        }
    }

    fn cancel_until(&mut self, target: u32) {
        if self.decision_level() <= target {
            return;
        }
        let bound = self.trail_lim[target as usize];
        for idx in (bound..self.trail.len()).rev() {
            let lit = self.trail[idx];
            let var = lit.var();
            self.phase[var] = self.assigns[var] == VALUE_TRUE;
            self.assigns[var] = VALUE_UNDEF;
            self.reason[var] = None;
            self.heap.push(var as u32, &self.activity);
        }
        self.trail.truncate(bound);
        self.trail_lim.truncate(target as usize);
        self.queue_head = self.trail.len();
    }

    fn bump_var(&mut self, var: usize) {
        self.activity[var] += self.var_inc;
        if self.activity[var] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.decreased_key(var, &self.activity);
    }

    fn bump_clause(&mut self, id: ClauseId) {
        if !id.is_learnt() {
            return;
        }
        let c = &mut self.learnts[id.idx()];
        c.activity += self.cla_inc;
        if c.activity > 1e100 {
            for l in &mut self.learnts {
                l.activity *= 1e-100;
            }
            self.cla_inc *= 1e-100;
        }
    }

    /// First-UIP learning. Returns the learnt clause (asserting literal
    /// first) and the backjump level.
    fn analyze(&mut self, mut conflict: ClauseId) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut to_clear: Vec<usize> = Vec::new();
        let mut counter = 0u32;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        loop {
            self.bump_clause(conflict);
            let start = usize::from(p.is_some());
            let lits_len = self.clause_lits(conflict).len();
            for k in start..lits_len {
                let q = self.clause_lits(conflict)[k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    to_clear.push(v);
                    self.bump_var(v);
                    if self.level[v] >= self.decision_level() {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let pivot = self.trail[index];
            p = Some(pivot);
            counter -= 1;
            if counter == 0 {
                break;
            }
            conflict = self.reason[pivot.var()].expect("non-decision must have a reason");
        }
        learnt[0] = p.unwrap().inverse();

        // deep minimization: drop literals entailed by the rest of the clause
        let abstract_levels: u32 = learnt[1..]
            .iter()
            .fold(0, |acc, l| acc | 1 << (self.level[l.var()] & 31));
        let mut kept = vec![learnt[0]];
        for &l in &learnt[1..] {
            if self.reason[l.var()].is_none() || !self.redundant(l, abstract_levels, &mut to_clear)
            {
                kept.push(l);
            }
        }
        let mut learnt = kept;

        // place the highest remaining level at position 1 for the watch
        let backjump = if learnt.len() == 1 {
            0
        } else {
            let mut max_idx = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var()] > self.level[learnt[max_idx].var()] {
                    max_idx = k;
                }
            }
            learnt.swap(1, max_idx);
            self.level[learnt[1].var()]
        };
        for v in to_clear {
            self.seen[v] = false;
        }
        (learnt, backjump)
    }

    /// Is `lit` implied by seen literals? Walks the implication graph; any
    /// path reaching a decision or a level outside the clause aborts.
    fn redundant(&mut self, lit: Lit, abstract_levels: u32, to_clear: &mut Vec<usize>) -> bool {
        let mut stack = vec![lit];
        let checkpoint = to_clear.len();
        while let Some(q) = stack.pop() {
            let reason = self.reason[q.var()].expect("redundancy walk hit a decision");
            let lits_len = self.clause_lits(reason).len();
            for k in 0..lits_len {
                let l = self.clause_lits(reason)[k];
                let v = l.var();
                if v == q.var() || self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                if self.reason[v].is_none() || 1 << (self.level[v] & 31) & abstract_levels == 0 {
                    for &u in &to_clear[checkpoint..] {
                        self.seen[u] = false;
                    }
                    to_clear.truncate(checkpoint);
                    return false;
                }
                self.seen[v] = true;
                to_clear.push(v);
                stack.push(l);
            }
        }
        true
    }

    fn record_learnt(&mut self, lits: Vec<Lit>) {
        debug_assert!(!lits.is_empty());
        if lits.len() == 1 {
            self.unchecked_enqueue(lits[0], None);
            return;
        }
        let id = ClauseId::learnt(self.learnts.len());
        self.attach(id, lits[0], lits[1]);
        let first = lits[0];
        self.learnts.push(LearntClause {
            lits,
            activity: self.cla_inc,
        });
        self.unchecked_enqueue(first, Some(id));
    }

    fn decay_activities(&mut self) {
        self.var_inc /= self.cfg.var_decay;
        self.cla_inc /= self.cfg.clause_decay;
    }

    fn locked(&self, id: ClauseId) -> bool {
        let first = self.clause_lits(id)[0];
        self.value(first) == VALUE_TRUE
            && matches!(self.reason[first.var()], Some(r) if r.0 == id.0)
    }

    /// Drop the less active half of the learnt clauses (binary and locked
    /// clauses are kept), compacting indices and rebuilding the watches.
    fn reduce_learnts(&mut self) {
        let mut order: Vec<usize> = (0..self.learnts.len()).collect();
        order.sort_by(|&a, &b| {
            self.learnts[a]
                .activity
                .partial_cmp(&self.learnts[b].activity)
                .unwrap()
        });
        let mut drop_flags = vec![false; self.learnts.len()];
        let mut budget = self.learnts.len() / 2;
        for idx in order {
            if budget == 0 {
                break;
            }
            let id = ClauseId::learnt(idx);
            if self.learnts[idx].lits.len() > 2 && !self.locked(id) {
                drop_flags[idx] = true;
                budget -= 1;
            }
        }
        let mut remap = vec![u32::MAX; self.learnts.len()];
        let mut survivors = Vec::with_capacity(self.learnts.len() - self.learnts.len() / 2);
        for (idx, clause) in std::mem::take(&mut self.learnts).into_iter().enumerate() {
            if !drop_flags[idx] {
                remap[idx] = survivors.len() as u32;
                survivors.push(clause);
            }
        }
        self.learnts = survivors;
        for id in self.reason.iter_mut().flatten() {
            if id.is_learnt() {
                let new_idx = remap[id.idx()];
                debug_assert_ne!(new_idx, u32::MAX, "locked clause dropped");
                *id = ClauseId::learnt(new_idx as usize);
            }
        }
        for w in &mut self.watches {
            w.clear();
        }
        for idx in 0..self.problem.len() {
            let (a, b) = (self.problem[idx][0], self.problem[idx][1]);
            self.attach(ClauseId::problem(idx), a, b);
        }
        for idx in 0..self.learnts.len() {
            let (a, b) = (self.learnts[idx].lits[0], self.learnts[idx].lits[1]);
            self.attach(ClauseId::learnt(idx), a, b);
        }
    }

    fn pick_branch_var(&mut self) -> Option<u32> {
        while let Some(var) = self.heap.pop(&self.activity) {
            if self.assigns[var as usize] == VALUE_UNDEF {
                return Some(var);
            }
        }
        None
    }

    fn budget_exhausted(&self) -> bool {
        if let Some(max) = self.cfg.max_conflicts {
            if self.stats.conflicts >= max {
                return true;
            }
        }
        if let Some(max) = self.cfg.max_seconds {
            if self.stats.conflicts.is_multiple_of(512) && self.start.elapsed().as_secs_f64() >= max {
                return true;
            }
        }
        false
    }

    /// Assume each unassigned gate variable in both polarities at level 1;
    /// a polarity that propagates to a conflict fixes the opposite at the
    /// root. Returns false on refutation.
    fn probe(&mut self, vars: usize) -> bool {
        for var in 0..vars.min(self.num_vars) {
            for negated in [false, true] {
                if self.assigns[var] != VALUE_UNDEF {
                    break;
                }
                let lit = Lit::new(var as u32, negated);
                self.trail_lim.push(self.trail.len());
                self.unchecked_enqueue(lit, None);
                let conflict = self.propagate().is_some();
                self.cancel_until(0);
                if conflict {
                    self.unchecked_enqueue(lit.inverse(), None);
                    if self.propagate().is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self) -> Status {
        self.heap.build(&self.activity);
        let mut restart_limit = self.cfg.restart_first.max(1) as f64;
        let mut conflicts_at_restart = self.stats.conflicts;
        let mut max_learnts = (self.problem.len() as f64 / 3.0).max(1000.0);
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    return Status::Unsat;
                }
                let (learnt, backjump) = self.analyze(conflict);
                self.cancel_until(backjump);
                self.record_learnt(learnt);
                self.decay_activities();
                if self.budget_exhausted() {
                    return Status::Unknown;
                }
            } else {
                if self.stats.conflicts - conflicts_at_restart >= restart_limit as u64 {
                    restart_limit *= self.cfg.restart_factor;
                    conflicts_at_restart = self.stats.conflicts;
                    self.cancel_until(0);
                    continue;
                }
                if self.learnts.len() as f64 >= max_learnts {
                    self.reduce_learnts();
                    max_learnts *= 1.1;
                }
                let Some(var) = self.pick_branch_var() else {
                    return Status::Sat;
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                let lit = Lit::new(var, !self.phase[var as usize]);
                self.unchecked_enqueue(lit, None);
            }
        }
    }

    fn finish(mut self, status: Status) -> SolveResult {
        self.stats.seconds = self.start.elapsed().as_secs_f64();
        let model = if status == Status::Sat {
            let mut model = vec![false; self.num_vars + 1];
            for var in 0..self.num_vars {
                model[var + 1] = self.assigns[var] == VALUE_TRUE;
            }
            Some(model)
        } else {
            None
        };
        SolveResult {
            status,
            model,
            stats: self.stats,
        }
    }
}
