//! Differential-testing baselines.
//!
//! `chen_chao_solve` reimplements the earlier published recurrences for this
//! problem faithfully, including their flaw: on some instances they count
//! subsequences that contain the forbidden pattern. They exist purely as the
//! thing the corrected solver is tested against. `brute_force_oracle` is the
//! ground truth at desk scale, and the `*_by_definition` helpers give the
//! machinery in `pattern` an independent route to check against.

use crate::dp::{alloc_cells, SolveOutcome};
use crate::error::Error;
use crate::pattern::ConstraintPattern;
use crate::sequence::Sequence;

/// Default cap on n + m for the brute-force oracle.
pub const ORACLE_SIZE_LIMIT: usize = 30;

/// Which of the two historical recurrences to run. They differ only in the
/// match-on-pattern-symbol case for k >= 2; on many instances (including the
/// counterexample) they produce identical tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChenChaoVariant {
    One,
    Two,
}

/// `L(i, j, k)` for 0 <= k <= r, as defined by the refuted recurrences. The
/// reported answer is `L(n, m, r)`. Deliberately NOT required to equal the
/// true constrained-LCS length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChenChaoTable {
    n: usize,
    m: usize,
    r: usize,
    variant: ChenChaoVariant,
    values: Vec<i32>,
}

impl ChenChaoTable {
    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * (self.m + 1) + j) * (self.r + 1) + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i32 {
        assert!(i <= self.n && j <= self.m && k <= self.r);
        self.values[self.idx(i, j, k)]
    }

    /// The answer the method reports: `L(n, m, r)`.
    pub fn length(&self) -> usize {
        self.get(self.n, self.m, self.r) as usize
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn variant(&self) -> ChenChaoVariant {
        self.variant
    }
}

/// Fills the `L` table exactly as the cited four-case formulas state it,
/// boundary `L(i, 0, k) = L(0, j, k) = 0`.
pub fn chen_chao_solve(
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
    variant: ChenChaoVariant,
) -> Result<ChenChaoTable, Error> {
    let (n, m, r) = (x.len(), y.len(), p.len());
    let values = alloc_cells(n, m, r + 1)?;
    let mut table = ChenChaoTable {
        n,
        m,
        r,
        variant,
        values,
    };
    let (xs, ys, ps) = (x.symbols(), y.symbols(), p.symbols());
    for i in 1..=n {
        for j in 1..=m {
            for k in 0..=r {
                let matched = xs[i - 1] == ys[j - 1];
                let on_pattern = matched && k >= 1 && xs[i - 1] == ps[k - 1];
                let v = if on_pattern && k == 1 {
                    table.get(i - 1, j - 1, k)
                } else if on_pattern {
                    match variant {
                        ChenChaoVariant::One => {
                            1 + table
                                .get(i - 1, j - 1, k - 1)
                                .max(table.get(i - 1, j - 1, k))
                        }
                        ChenChaoVariant::Two => 1 + table.get(i - 1, j - 1, k),
                    }
                } else if matched {
                    1 + table.get(i - 1, j - 1, k)
                } else {
                    table.get(i - 1, j, k).max(table.get(i, j - 1, k))
                };
                let idx = table.idx(i, j, k);
                table.values[idx] = v;
            }
        }
    }
    Ok(table)
}

/// Enumerates every subsequence of the shorter input, keeps those that are
/// also subsequences of the longer one and contain no pattern occurrence,
/// and returns the maximum length with its lexicographically smallest
/// witness. Refuses instances beyond `limit` total symbols.
pub fn brute_force_oracle_with_limit(
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
    limit: usize,
) -> Result<SolveOutcome, Error> {
    let (n, m) = (x.len(), y.len());
    if n + m > limit || n.min(m) >= 63 {
        return Err(Error::OracleBound { n, m, limit });
    }
    let (short, long) = if n <= m {
        (x.symbols(), y.symbols())
    } else {
        (y.symbols(), x.symbols())
    };
    // the empty subsequence always qualifies since the pattern is nonempty
    let mut best: Vec<u8> = Vec::new();
    let mut buf = Vec::with_capacity(short.len());
    for mask in 0u64..(1u64 << short.len()) {
        buf.clear();
        for (idx, &c) in short.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                buf.push(c);
            }
        }
        if contains_substring(&buf, p.symbols()) || !is_subsequence(&buf, long) {
            continue;
        }
        if buf.len() > best.len() || (buf.len() == best.len() && buf[..] < best[..]) {
            best.clear();
            best.extend_from_slice(&buf);
        }
    }
    let best_state = sigma_by_definition(p.symbols(), &best);
    Ok(SolveOutcome {
        length: best.len(),
        best_state,
        witness: Some(Sequence::new(best)?),
        tensor: None,
    })
}

/// `brute_force_oracle_with_limit` at the default size cap.
pub fn brute_force_oracle(
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
) -> Result<SolveOutcome, Error> {
    brute_force_oracle_with_limit(x, y, p, ORACLE_SIZE_LIMIT)
}

/// Classic two-row LCS length, used by the reduction checks.
pub fn plain_lcs(x: &[u8], y: &[u8]) -> usize {
    let m = y.len();
    let mut prev = vec![0usize; m + 1];
    let mut cur = vec![0usize; m + 1];
    for &xc in x {
        for (j, &yc) in y.iter().enumerate() {
            cur[j + 1] = if xc == yc {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// True when `needle` can be obtained from `haystack` by deleting symbols.
pub fn is_subsequence(needle: &[u8], haystack: &[u8]) -> bool {
    let mut rest = haystack.iter();
    needle.iter().all(|c| rest.any(|h| h == c))
}

/// True when `needle` occurs in `haystack` as a contiguous run.
pub fn contains_substring(haystack: &[u8], needle: &[u8]) -> bool {
    if needle.is_empty() {
        return true;
    }
    if needle.len() > haystack.len() {
        return false;
    }
    haystack.windows(needle.len()).any(|w| w == needle)
}

/// Sigma straight from its definition — the longest suffix of `s` that is a
/// prefix of `pattern`, found by checking every candidate length. Quadratic
/// on purpose: the independent route the table-backed machinery is verified
/// against.
pub fn sigma_by_definition(pattern: &[u8], s: &[u8]) -> usize {
    (0..=s.len().min(pattern.len()))
        .rev()
        .find(|&l| s[s.len() - l..] == pattern[..l])
        .unwrap_or(0)
}
