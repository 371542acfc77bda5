//! The corrected dynamic program.
//!
//! `f(i, j, k)` is the length of the longest common subsequence of X[1..i]
//! and Y[1..j] that excludes the pattern as a substring and whose state
//! (longest suffix matching a pattern prefix) is exactly `k`. States run
//! over 0..r-1 only: state r would mean the pattern occurs. The answer for
//! the whole instance is the maximum of `f(n, m, t)` over all t below r.
//!
//! Two fills are provided: a direct one that evaluates the recurrence cell
//! by cell (the match case gathers its candidate with a state scan), and an
//! amortized one that replaces the scan with a copy-down pass followed by a
//! scatter through the transition table, for O(1) work per cell. Both produce
//! identical tensors.

use crate::error::Error;
use crate::pattern::ConstraintPattern;
use crate::sequence::Sequence;

/// Hard cap on tensor payload bytes. Requests beyond it (or beyond what the
/// allocator grants) fail with `Error::TensorTooLarge` before any work runs.
pub const TENSOR_BYTE_LIMIT: usize = 1 << 34;

pub(crate) fn alloc_cells(n: usize, m: usize, states: usize) -> Result<Vec<i32>, Error> {
    let cells = n
        .checked_add(1)
        .and_then(|a| m.checked_add(1).and_then(|b| a.checked_mul(b)))
        .and_then(|a| a.checked_mul(states));
    let bytes = cells.and_then(|c| c.checked_mul(std::mem::size_of::<i32>()));
    match bytes {
        Some(b) if b <= TENSOR_BYTE_LIMIT => {}
        _ => return Err(Error::TensorTooLarge { n, m, states }),
    }
    let cells = cells.expect("checked above");
    let mut values = Vec::new();
    if values.try_reserve_exact(cells).is_err() {
        return Err(Error::TensorTooLarge { n, m, states });
    }
    values.resize(cells, 0);
    Ok(values)
}

/// The full (n+1) x (m+1) x r table of `f` values, state index fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTensor {
    n: usize,
    m: usize,
    states: usize,
    values: Vec<i32>,
}

impl DpTensor {
    fn zeroed(n: usize, m: usize, states: usize) -> Result<Self, Error> {
        debug_assert!(states >= 1);
        let values = alloc_cells(n, m, states)?;
        Ok(Self {
            n,
            m,
            states,
            values,
        })
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * (self.m + 1) + j) * self.states + k
    }

    /// `f(i, j, k)`; boundaries `i = 0` and `j = 0` are all zero.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i32 {
        assert!(i <= self.n && j <= self.m && k < self.states);
        self.values[self.idx(i, j, k)]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, k: usize, v: i32) {
        let idx = self.idx(i, j, k);
        self.values[idx] = v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of states, i.e. the pattern length r.
    pub fn states(&self) -> usize {
        self.states
    }

    /// Smallest state maximizing `f(n, m, t)`, with that maximum.
    pub fn best_final(&self) -> (usize, i32) {
        let mut best_state = 0;
        let mut best = self.get(self.n, self.m, 0);
        for t in 1..self.states {
            let v = self.get(self.n, self.m, t);
            if v > best {
                best = v;
                best_state = t;
            }
        }
        (best_state, best)
    }
}

/// Result of a solve: the optimal length, the state it was found in, and —
/// in witness mode — one optimal subsequence plus the tensor it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub length: usize,
    pub best_state: usize,
    pub witness: Option<Sequence>,
    pub tensor: Option<DpTensor>,
}

/// Smallest state `t < r` maximizing `f(i-1, j-1, t)` among those with
/// `lambda(t, symbol) = state`, or `None` when no state can reach `state` on
/// `symbol` — the match candidate then simply does not apply.
pub fn max_sigma(
    tensor: &DpTensor,
    pattern: &ConstraintPattern,
    i: usize,
    j: usize,
    symbol: u8,
    state: usize,
) -> Option<usize> {
    debug_assert!(i >= 1 && j >= 1);
    let mut best: Option<(usize, i32)> = None;
    for t in 0..tensor.states() {
        if pattern.lambda(t, symbol) != state {
            continue;
        }
        let v = tensor.get(i - 1, j - 1, t);
        // strict improvement keeps the smallest qualifying state on ties
        if best.is_none_or(|(_, bv)| v > bv) {
            best = Some((t, v));
        }
    }
    best.map(|(t, _)| t)
}

/// Direct fill: every cell evaluates the recurrence as written, with a state
/// scan per match cell (O(nmr^2) overall). Kept as the readable reference
/// for the amortized fill.
pub fn solve_naive(
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
) -> Result<SolveOutcome, Error> {
    let (n, m, r) = (x.len(), y.len(), p.len());
    let mut f = DpTensor::zeroed(n, m, r)?;
    let (xs, ys) = (x.symbols(), y.symbols());
    for i in 1..=n {
        for j in 1..=m {
            for k in 0..r {
                let v = if xs[i - 1] != ys[j - 1] {
                    f.get(i - 1, j, k).max(f.get(i, j - 1, k))
                } else {
                    let keep = f.get(i - 1, j - 1, k);
                    match max_sigma(&f, p, i, j, xs[i - 1], k) {
                        Some(t) => keep.max(1 + f.get(i - 1, j - 1, t)),
                        None => keep,
                    }
                };
                f.set(i, j, k, v);
            }
        }
    }
    finish(f, x, y, p)
}

/// One cell of the amortized fill: a copy-down over all states, then — on a
/// symbol match — a scatter that pushes `1 + f(i-1, j-1, k)` into state
/// `transitions[k]`. Transitions into state r are skipped: they would
/// complete the forbidden pattern.
#[inline]
fn amortized_cell(
    cell: &mut [i32],
    up: &[i32],
    left: &[i32],
    diag: &[i32],
    matched: bool,
    transitions: &[u32],
) {
    let r = cell.len();
    assert!(up.len() == r && left.len() == r && diag.len() == r && transitions.len() == r);
    for k in 0..r {
        cell[k] = up[k].max(left[k]);
    }
    if matched {
        for k in 0..r {
            let t = transitions[k] as usize;
            if t < r {
                let cand = 1 + diag[k];
                if cand > cell[t] {
                    cell[t] = cand;
                }
            }
        }
    }
}

/// Amortized fill over the full tensor: copy-down plus scatter, O(1)
/// amortized work per tensor cell.
pub fn solve_optimized(
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
) -> Result<SolveOutcome, Error> {
    let (n, m, r) = (x.len(), y.len(), p.len());
    let mut f = DpTensor::zeroed(n, m, r)?;
    let (xs, ys) = (x.symbols(), y.symbols());
    let row_cells = (m + 1) * r;
    for i in 1..=n {
        let xc = xs[i - 1];
        let transitions = p.transitions().symbol_row(xc);
        for j in 1..=m {
            let base = (i * (m + 1) + j) * r;
            // everything before `base` is finished: the up/left/diag blocks
            let (done, rest) = f.values.split_at_mut(base);
            let up = &done[base - row_cells..base - row_cells + r];
            let diag = &done[base - row_cells - r..base - row_cells];
            let left = &done[base - r..];
            amortized_cell(&mut rest[..r], up, left, diag, xc == ys[j - 1], transitions);
        }
    }
    finish(f, x, y, p)
}

/// Length-only mode of the amortized fill: keeps two (m+1) x r layers
/// instead of the full tensor, so no witness or tensor is returned.
pub fn solve_length_only(
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
) -> Result<SolveOutcome, Error> {
    let (n, m, r) = (x.len(), y.len(), p.len());
    let mut prev = alloc_cells(0, m, r)?;
    let mut cur = alloc_cells(0, m, r)?;
    let (xs, ys) = (x.symbols(), y.symbols());
    for i in 1..=n {
        let xc = xs[i - 1];
        let transitions = p.transitions().symbol_row(xc);
        for j in 1..=m {
            let at = j * r;
            let (done, rest) = cur.split_at_mut(at);
            let left = &done[at - r..];
            let up = &prev[at..at + r];
            let diag = &prev[at - r..at];
            amortized_cell(&mut rest[..r], up, left, diag, xc == ys[j - 1], transitions);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    // prev holds row n; the j = 0 block of either buffer was never written
    let final_block = &prev[m * r..m * r + r];
    let mut best_state = 0;
    let mut best = final_block[0];
    for (t, &v) in final_block.iter().enumerate().skip(1) {
        if v > best {
            best = v;
            best_state = t;
        }
    }
    Ok(SolveOutcome {
        length: best as usize,
        best_state,
        witness: None,
        tensor: None,
    })
}

fn finish(
    f: DpTensor,
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
) -> Result<SolveOutcome, Error> {
    let (best_state, best) = f.best_final();
    let witness = backtrace(&f, x, y, p, f.n(), f.m(), best_state)?;
    debug_assert_eq!(witness.len(), best as usize);
    Ok(SolveOutcome {
        length: best as usize,
        best_state,
        witness: Some(witness),
        tensor: Some(f),
    })
}

/// Reconstructs one optimal subsequence for cell `(i, j, k)` by replaying
/// the recurrence backwards.
///
/// On a symbol match, a cell equal to its diagonal predecessor steps back
/// without emitting; otherwise the cell's value must come from the match
/// candidate, so the walk emits the symbol and continues from the
/// `max_sigma` state. On a mismatch it follows the larger of the up/left
/// neighbors, taking the left (j-decrement) branch on ties. Each step moves
/// strictly toward a boundary, so the walk is a plain loop; symbols come out
/// last-first and are reversed at the end.
pub fn backtrace(
    tensor: &DpTensor,
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
    i: usize,
    j: usize,
    state: usize,
) -> Result<Sequence, Error> {
    assert!(
        tensor.n() == x.len() && tensor.m() == y.len() && tensor.states() == p.len(),
        "tensor does not match the instance it is traced against"
    );
    assert!(i <= tensor.n() && j <= tensor.m() && state < tensor.states());
    let (xs, ys) = (x.symbols(), y.symbols());
    let (mut i, mut j, mut k) = (i, j, state);
    let mut out = Vec::new();
    while i > 0 && j > 0 {
        if xs[i - 1] == ys[j - 1] {
            if tensor.get(i, j, k) != tensor.get(i - 1, j - 1, k) {
                let t = max_sigma(tensor, p, i, j, xs[i - 1], k)
                    .ok_or(Error::InconsistentTensor { i, j, state: k })?;
                out.push(xs[i - 1]);
                k = t;
            }
            i -= 1;
            j -= 1;
        } else if tensor.get(i - 1, j, k) > tensor.get(i, j - 1, k) {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    out.reverse();
    Ok(Sequence::new(out).expect("witness length is bounded by the inputs"))
}
