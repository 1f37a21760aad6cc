//! CNF encodings of "a depth-`d` network on `n` channels extending prefix `P`
//! sorts every input in `X`".
//!
//! Variables: `g(k,i,j)` says layer `k` carries a comparator on channels
//! `(i,j)`; per input, `v(k,i)` holds the value on channel `i` after layer
//! `k`. Prefix layers are hard-coded: values after the prefix and after the
//! last layer are substituted as constants, and only channels inside the
//! input's window get variables at all. Channels outside the window are
//! constant 0 or 1 through the whole network, so comparators crossing the
//! window boundary act as identity on the in-window end and are left out of
//! that input's constraints.
//!
//! Two clause sets are available. `Original` spells out the frame condition
//! ("no comparator on `i`, value unchanged") and three clauses per comparator
//! end. `Improved` replaces the frame clauses with two propagation clauses
//! through `oneDown`/`oneUp` indicator variables (is there a comparator
//! leaving `i` downwards / entering `i` from above, within the window) and
//! keeps only the two residual clauses per comparator end that the
//! indicators do not cover. Both encodings admit exactly the same networks.
//!
//! Variable numbering is fixed for DIMACS reproducibility: the `g` block
//! first (layer-major, then `i`, then `j`), then one `v` block per input in
//! input order, then indicator variables in order of first use.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::net::{Comparator, ComparatorNetwork, Layer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingMode {
    Original,
    Improved,
}

impl fmt::Display for EncodingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingMode::Original => "original",
            EncodingMode::Improved => "improved",
        })
    }
}

impl FromStr for EncodingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(EncodingMode::Original),
            "improved" => Ok(EncodingMode::Improved),
            other => Err(Error::InvalidConfig(format!("unknown encoding mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum AuxKind {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct AuxKey {
    kind: AuxKind,
    layer: usize,
    i: usize,
    j: usize,
}

/// One encoded input: the constants around its window and the base of its
/// `v`-variable block.
#[derive(Debug, Clone)]
struct InputBlock {
    input_index: usize,
    z: BitVector,
    y: BitVector,
    win_lo: usize,
    win_hi: usize,
    base: u32,
}

/// Maps `(k,i,j)` triples to CNF variables. `noneDown`/`noneUp` are the
/// negative literals of `oneDown`/`oneUp`, never separate variables.
#[derive(Debug, Clone)]
pub struct VarMap {
    n: usize,
    d: usize,
    prefix_depth: usize,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    blocks: Vec<InputBlock>,
    aux: HashMap<AuxKey, u32>,
    aux_order: Vec<AuxKey>,
    next_var: u32,
}

impl VarMap {
    fn new(n: usize, d: usize, prefix_depth: usize) -> Self {
        let mut pairs = Vec::new();
        let mut pair_index = HashMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pair_index.insert((i, j), pairs.len());
                pairs.push((i, j));
            }
        }
        let free_layers = d - prefix_depth;
        let next_var = (free_layers * pairs.len()) as u32 + 1;
        VarMap {
            n,
            d,
            prefix_depth,
            pairs,
            pair_index,
            blocks: Vec::new(),
            aux: HashMap::new(),
            aux_order: Vec::new(),
            next_var,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn prefix_depth(&self) -> usize {
        self.prefix_depth
    }

    fn free_layers(&self) -> usize {
        self.d - self.prefix_depth
    }

    pub fn g_var_count(&self) -> u32 {
        (self.free_layers() * self.pairs.len()) as u32
    }

    /// Variable for a comparator on `(i,j)` in free layer `k`
    /// (`prefix_depth < k <= d`, `i < j`).
    pub fn g_var(&self, k: usize, i: usize, j: usize) -> u32 {
        debug_assert!(k > self.prefix_depth && k <= self.d);
        let pair = self.pair_index[&(i, j)];
        ((k - self.prefix_depth - 1) * self.pairs.len() + pair) as u32 + 1
    }

    /// Inverse of [`g_var`](Self::g_var) for variables inside the g block.
    pub fn g_role(&self, var: u32) -> Option<(usize, usize, usize)> {
        if var == 0 || var > self.g_var_count() {
            return None;
        }
        let idx = (var - 1) as usize;
        let layer = self.prefix_depth + 1 + idx / self.pairs.len();
        let (i, j) = self.pairs[idx % self.pairs.len()];
        Some((layer, i, j))
    }

    fn v_var(&self, block: &InputBlock, k: usize, i: usize) -> u32 {
        debug_assert!(k > self.prefix_depth && k < self.d);
        debug_assert!(i >= block.win_lo && i <= block.win_hi);
        let width = block.win_hi - block.win_lo + 1;
        block.base + ((k - self.prefix_depth - 1) * width + (i - block.win_lo)) as u32
    }

    pub fn num_vars(&self) -> u32 {
        self.next_var - 1
    }
}

/// Provenance of one instance: enough to re-encode it from scratch.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub n: usize,
    pub d: usize,
    pub prefix: ComparatorNetwork,
    pub prefix_hash: u64,
    pub inputs: Vec<BitVector>,
    pub mode: EncodingMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodeStats {
    pub vars: u32,
    pub clauses: usize,
    pub literals: usize,
}

/// A CNF instance for one synthesis question. Clauses hold nonzero signed
/// literals; an empty clause appears only when constant propagation already
/// refuted the instance.
#[derive(Debug, Clone)]
pub struct CnfInstance {
    clauses: Vec<Vec<i32>>,
    pub varmap: VarMap,
    pub provenance: Provenance,
    trivially_unsat: bool,
}

/// Constant-or-literal operand used while substituting window constants.
#[derive(Debug, Clone, Copy)]
enum Val {
    T,
    F,
    L(i32),
}

impl Val {
    fn not(self) -> Val {
        match self {
            Val::T => Val::F,
            Val::F => Val::T,
            Val::L(l) => Val::L(-l),
        }
    }
}

impl CnfInstance {
    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn num_vars(&self) -> u32 {
        self.varmap.num_vars()
    }

    pub fn is_trivially_unsat(&self) -> bool {
        self.trivially_unsat
    }

    pub fn stats(&self) -> EncodeStats {
        EncodeStats {
            vars: self.num_vars(),
            clauses: self.clauses.len(),
            literals: self.clauses.iter().map(Vec::len).sum(),
        }
    }

    /// Push a clause after constant simplification: satisfied clauses are
    /// dropped, false operands removed, duplicate literals merged.
    fn push(&mut self, operands: &[Val]) {
        let mut clause: Vec<i32> = Vec::with_capacity(operands.len());
        for op in operands {
            match op {
                Val::T => return,
                Val::F => {}
                Val::L(l) => {
                    debug_assert!(*l != 0);
                    if clause.contains(&-l) {
                        return; // tautology
                    }
                    if !clause.contains(l) {
                        clause.push(*l);
                    }
                }
            }
        }
        if clause.is_empty() {
            self.trivially_unsat = true;
        }
        self.clauses.push(clause);
    }

    /// Pairwise channel-exclusion clauses for every free layer.
    fn encode_valid(&mut self) {
        let pairs = self.varmap.pairs.clone();
        for k in self.varmap.prefix_depth + 1..=self.varmap.d {
            for (p1, &(i1, j1)) in pairs.iter().enumerate() {
                for &(i2, j2) in pairs.iter().skip(p1 + 1) {
                    let shares = i1 == i2 || i1 == j2 || j1 == i2 || j1 == j2;
                    if shares {
                        let a = self.varmap.g_var(k, i1, j1) as i32;
                        let b = self.varmap.g_var(k, i2, j2) as i32;
                        self.push(&[Val::L(-a), Val::L(-b)]);
                    }
                }
            }
        }
    }

    /// Register an input: compute its prefix image, window and sorted copy,
    /// and reserve its `v` block. Returns the block index when the input
    /// yields any constraints.
    fn register_input(&mut self, x: BitVector) -> Result<Option<usize>> {
        let n = self.varmap.n;
        if x.width() != n {
            return Err(Error::WidthMismatch {
                input: x.width(),
                channels: n,
            });
        }
        if self.provenance.inputs.contains(&x) {
            return Err(Error::DuplicateInput(x.to_string()));
        }
        let input_index = self.provenance.inputs.len();
        self.provenance.inputs.push(x);
        let z = self.provenance.prefix.apply(&x)?;
        let y = x.sorted_copy();
        let w = z.window();
        if w.size == 0 {
            return Ok(None);
        }
        if self.varmap.d == self.varmap.prefix_depth {
            // no free layers and the prefix output is unsorted
            self.push(&[]);
            return Ok(None);
        }
        let win_lo = w.a + 1;
        let win_hi = n - w.b;
        let width = win_hi - win_lo + 1;
        let base = self.varmap.next_var;
        self.varmap.next_var += ((self.varmap.free_layers() - 1) * width) as u32;
        self.varmap.blocks.push(InputBlock {
            input_index,
            z,
            y,
            win_lo,
            win_hi,
            base,
        });
        Ok(Some(self.varmap.blocks.len() - 1))
    }

    /// Value on channel `i` after layer `k` for a registered input, as a
    /// constant or a literal.
    fn val(&self, block: usize, k: usize, i: usize) -> Val {
        let b = &self.varmap.blocks[block];
        let constant = |bit: bool| if bit { Val::T } else { Val::F };
        if i < b.win_lo || i > b.win_hi {
            // outside the window the value never changes
            return constant(b.z.get(i));
        }
        if k == self.varmap.prefix_depth {
            constant(b.z.get(i))
        } else if k == self.varmap.d {
            constant(b.y.get(i))
        } else {
            Val::L(self.varmap.v_var(b, k, i) as i32)
        }
    }

    fn one_down(&mut self, k: usize, i: usize, j: usize) -> i32 {
        self.aux_var(AuxKey {
            kind: AuxKind::Down,
            layer: k,
            i,
            j,
        })
    }

    fn one_up(&mut self, k: usize, i: usize, j: usize) -> i32 {
        self.aux_var(AuxKey {
            kind: AuxKind::Up,
            layer: k,
            i,
            j,
        })
    }

    /// Indicator variable with full biconditional definition, created on
    /// first use and shared across inputs with the same range.
    fn aux_var(&mut self, key: AuxKey) -> i32 {
        if let Some(&var) = self.varmap.aux.get(&key) {
            return var as i32;
        }
        let var = self.varmap.next_var;
        self.varmap.next_var += 1;
        self.varmap.aux.insert(key, var);
        self.varmap.aux_order.push(key);
        let members: Vec<u32> = match key.kind {
            // oneDown(k,i,j) <-> OR of g(k,i,l) for i < l <= j
            AuxKind::Down => (key.i + 1..=key.j)
                .map(|l| self.varmap.g_var(key.layer, key.i, l))
                .collect(),
            // oneUp(k,i,j) <-> OR of g(k,l,j) for i <= l < j
            AuxKind::Up => (key.i..key.j)
                .map(|l| self.varmap.g_var(key.layer, l, key.j))
                .collect(),
        };
        let mut big: Vec<Val> = Vec::with_capacity(members.len() + 1);
        big.push(Val::L(-(var as i32)));
        for g in &members {
            big.push(Val::L(*g as i32));
        }
        self.push(&big);
        for g in &members {
            self.push(&[Val::L(-(*g as i32)), Val::L(var as i32)]);
        }
        var as i32
    }

    fn in_window_neighbors(&self, block: usize, i: usize) -> Vec<usize> {
        let b = &self.varmap.blocks[block];
        (b.win_lo..=b.win_hi).filter(|&j| j != i).collect()
    }

    fn encode_input(&mut self, block: usize) {
        match self.provenance.mode {
            EncodingMode::Original => self.sorts_original(block),
            EncodingMode::Improved => self.sorts_improved(block),
        }
    }

    fn sorts_original(&mut self, block: usize) {
        let (win_lo, win_hi) = {
            let b = &self.varmap.blocks[block];
            (b.win_lo, b.win_hi)
        };
        for k in self.varmap.prefix_depth + 1..=self.varmap.d {
            for i in win_lo..=win_hi {
                let cur = self.val(block, k, i);
                let prev = self.val(block, k - 1, i);
                let neighbors = self.in_window_neighbors(block, i);
                let used: Vec<Val> = neighbors
                    .iter()
                    .map(|&j| {
                        Val::L(self.varmap.g_var(k, i.min(j), i.max(j)) as i32)
                    })
                    .collect();
                // frame: no comparator on i in this layer leaves the value
                let mut frame = vec![prev.not(), cur];
                frame.extend_from_slice(&used);
                self.push(&frame);
                let mut frame = vec![prev, cur.not()];
                frame.extend_from_slice(&used);
                self.push(&frame);
                for &j in &neighbors {
                    let pj = self.val(block, k - 1, j);
                    if j < i {
                        // i is the max end: cur <-> pj OR prev
                        let g = Val::L(-(self.varmap.g_var(k, j, i) as i32));
                        self.push(&[g, cur, pj.not()]);
                        self.push(&[g, cur, prev.not()]);
                        self.push(&[g, cur.not(), pj, prev]);
                    } else {
                        // i is the min end: cur <-> pj AND prev
                        let g = Val::L(-(self.varmap.g_var(k, i, j) as i32));
                        self.push(&[g, cur.not(), pj]);
                        self.push(&[g, cur.not(), prev]);
                        self.push(&[g, cur, pj.not(), prev.not()]);
                    }
                }
            }
        }
    }

    fn sorts_improved(&mut self, block: usize) {
        let (win_lo, win_hi) = {
            let b = &self.varmap.blocks[block];
            (b.win_lo, b.win_hi)
        };
        for k in self.varmap.prefix_depth + 1..=self.varmap.d {
            for i in win_lo..=win_hi {
                let cur = self.val(block, k, i);
                let prev = self.val(block, k - 1, i);
                // a 1 on i survives unless a comparator leaves i downwards
                let mut stay_one = vec![prev.not()];
                if i < win_hi {
                    let dn = self.one_down(k, i, win_hi);
                    stay_one.push(Val::L(dn));
                }
                stay_one.push(cur);
                self.push(&stay_one);
                // a 0 on i survives unless a comparator enters i from above
                let mut stay_zero = vec![prev];
                if i > win_lo {
                    let up = self.one_up(k, win_lo, i);
                    stay_zero.push(Val::L(up));
                }
                stay_zero.push(cur.not());
                self.push(&stay_zero);
                // residual update clauses not covered by the indicators
                for j in self.in_window_neighbors(block, i) {
                    let pj = self.val(block, k - 1, j);
                    if j < i {
                        let g = Val::L(-(self.varmap.g_var(k, j, i) as i32));
                        self.push(&[g, cur, pj.not()]);
                        self.push(&[g, cur.not(), pj, prev]);
                    } else {
                        let g = Val::L(-(self.varmap.g_var(k, i, j) as i32));
                        self.push(&[g, cur.not(), pj]);
                        self.push(&[g, cur, pj.not(), prev.not()]);
                    }
                }
            }
        }
    }

    /// Append one more input to a live instance, reusing the `g` variables.
    pub fn append_input(&mut self, x: BitVector) -> Result<()> {
        if let Some(block) = self.register_input(x)? {
            self.encode_input(block);
        }
        Ok(())
    }

    /// Pin every gate variable with unit clauses so the instance asks
    /// whether `net` itself satisfies the constraints. `net` must extend the
    /// instance's prefix to its full depth.
    pub fn force_network(&mut self, net: &ComparatorNetwork) -> Result<()> {
        let vm = &self.varmap;
        if net.channels() != vm.n || net.depth() != vm.d {
            return Err(Error::InvalidConfig(format!(
                "forced network is {}x{}, instance wants {}x{}",
                net.channels(),
                net.depth(),
                vm.n,
                vm.d
            )));
        }
        let mut units = Vec::new();
        for k in vm.prefix_depth + 1..=vm.d {
            let layer = &net.layers()[k - 1];
            for &(i, j) in &vm.pairs {
                let var = vm.g_var(k, i, j) as i32;
                let present = layer
                    .comparators()
                    .iter()
                    .any(|c| c.min_channel() == i && c.max_channel() == j);
                units.push(if present { var } else { -var });
            }
        }
        for lit in units {
            self.push(&[Val::L(lit)]);
        }
        Ok(())
    }
}

/// Conjunction of `valid` and one `sorts` constraint per input, with the
/// prefix hard-coded. Inputs must be distinct.
pub fn encode_problem(
    n: usize,
    d: usize,
    prefix: &ComparatorNetwork,
    inputs: &[BitVector],
    mode: EncodingMode,
) -> Result<CnfInstance> {
    if prefix.channels() != n {
        return Err(Error::WidthMismatch {
            input: prefix.channels(),
            channels: n,
        });
    }
    if !prefix.is_standard() {
        return Err(Error::InvalidConfig("prefix must be a standard network".into()));
    }
    if prefix.depth() > d {
        return Err(Error::PrefixTooDeep {
            prefix: prefix.depth(),
            d,
        });
    }
    let mut seen = HashSet::new();
    for x in inputs {
        if !seen.insert(*x) {
            return Err(Error::DuplicateInput(x.to_string()));
        }
    }
    let prefix_hash = crate::hash::fnv1a64(prefix.to_json()?.as_bytes());
    let mut inst = CnfInstance {
        clauses: Vec::new(),
        varmap: VarMap::new(n, d, prefix.depth()),
        provenance: Provenance {
            n,
            d,
            prefix: prefix.clone(),
            prefix_hash,
            inputs: Vec::new(),
            mode,
        },
        trivially_unsat: false,
    };
    inst.encode_valid();
    // all v blocks first, indicator variables after
    let mut blocks = Vec::with_capacity(inputs.len());
    for x in inputs {
        blocks.push(inst.register_input(*x)?);
    }
    for block in blocks.into_iter().flatten() {
        inst.encode_input(block);
    }
    Ok(inst)
}

/// Rebuild a network from a satisfying assignment: prefix layers plus the
/// free layers read off the true `g` variables. `model` is indexed by
/// variable (entry 0 unused) and must cover every variable.
pub fn decode_model(inst: &CnfInstance, model: &[bool]) -> Result<ComparatorNetwork> {
    if model.len() <= inst.num_vars() as usize {
        return Err(Error::MalformedClause(format!(
            "model covers {} variables, instance has {}",
            model.len().saturating_sub(1),
            inst.num_vars()
        )));
    }
    let vm = &inst.varmap;
    let mut net = inst.provenance.prefix.clone();
    for k in vm.prefix_depth + 1..=vm.d {
        let mut comparators = Vec::new();
        for &(i, j) in &vm.pairs {
            if model[vm.g_var(k, i, j) as usize] {
                comparators.push(Comparator::new(i, j)?);
            }
        }
        let layer = Layer::new(comparators).map_err(|e| match e {
            Error::DuplicateChannel { channel, .. } => Error::DecodeConflict { layer: k, channel },
            other => other,
        })?;
        net.push_layer(layer)?;
    }
    net.canonicalize();
    Ok(net)
}

/// DIMACS text: `p cnf <vars> <clauses>` then one 0-terminated clause per line.
pub fn write_dimacs(inst: &CnfInstance) -> String {
    dimacs_text(inst.num_vars(), inst.clauses())
}

pub fn dimacs_text(num_vars: u32, clauses: &[Vec<i32>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("p cnf {} {}\n", num_vars, clauses.len()));
    for clause in clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Parse DIMACS CNF into a variable count and clause list.
pub fn parse_dimacs(text: &str) -> Result<(u32, Vec<Vec<i32>>)> {
    let mut num_vars: Option<u32> = None;
    let mut declared_clauses = 0usize;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(Error::BadDimacs(format!("bad problem line `{line}`")));
            }
            num_vars = Some(
                fields[1]
                    .parse()
                    .map_err(|_| Error::BadDimacs(format!("bad variable count in `{line}`")))?,
            );
            declared_clauses = fields[2]
                .parse()
                .map_err(|_| Error::BadDimacs(format!("bad clause count in `{line}`")))?;
            continue;
        }
        let nv = num_vars.ok_or_else(|| Error::BadDimacs("clause before problem line".into()))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::BadDimacs(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() > nv as u64 {
                    return Err(Error::BadDimacs(format!(
                        "literal {lit} out of range for {nv} variables"
                    )));
                }
                current.push(lit as i32);
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::BadDimacs("unterminated clause".into()));
    }
    let nv = num_vars.ok_or_else(|| Error::BadDimacs("missing problem line".into()))?;
    if clauses.len() != declared_clauses {
        return Err(Error::BadDimacs(format!(
            "declared {declared_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    Ok((nv, clauses))
}

/// Sidecar document mapping variables to their roles, for decoding models of
/// externally solved instances.
#[derive(Debug, Serialize, Deserialize)]
pub struct VarMapDoc {
    pub num_vars: u32,
    pub n: usize,
    pub d: usize,
    pub prefix_depth: usize,
    pub mode: EncodingMode,
    /// `(var, layer, i, j)`
    pub g: Vec<(u32, usize, usize, usize)>,
    /// `(var, input index, layer, channel)`
    pub v: Vec<(u32, usize, usize, usize)>,
    /// `(var, layer, i, j)`
    pub one_down: Vec<(u32, usize, usize, usize)>,
    /// `(var, layer, i, j)`
    pub one_up: Vec<(u32, usize, usize, usize)>,
}

pub fn varmap_doc(inst: &CnfInstance) -> VarMapDoc {
    let vm = &inst.varmap;
    let mut g = Vec::new();
    for k in vm.prefix_depth + 1..=vm.d {
        for &(i, j) in &vm.pairs {
            g.push((vm.g_var(k, i, j), k, i, j));
        }
    }
    let mut v = Vec::new();
    for b in &vm.blocks {
        for k in vm.prefix_depth + 1..vm.d {
            for i in b.win_lo..=b.win_hi {
                v.push((vm.v_var(b, k, i), b.input_index, k, i));
            }
        }
    }
    let mut one_down = Vec::new();
    let mut one_up = Vec::new();
    for key in &vm.aux_order {
        let entry = (vm.aux[key], key.layer, key.i, key.j);
        match key.kind {
            AuxKind::Down => one_down.push(entry),
            AuxKind::Up => one_up.push(entry),
        }
    }
    VarMapDoc {
        num_vars: vm.num_vars(),
        n: vm.n,
        d: vm.d,
        prefix_depth: vm.prefix_depth,
        mode: inst.provenance.mode,
        g,
        v,
        one_down,
        one_up,
    }
}
