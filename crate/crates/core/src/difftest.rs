//! Randomized differential campaigns.
//!
//! Instances are generated from a portable 64-bit PRNG so every run (and
//! every reimplementation) sees the same stream. Each trial compares the
//! requested solvers against the brute-force oracle; disagreements and
//! invalid witnesses become `Discrepancy` records, which can then be
//! greedily minimized with `shrink`.

use std::fmt;
use std::str::FromStr;

use crate::dp::{solve_naive, solve_optimized, SolveOutcome};
use crate::error::Error;
use crate::pattern::ConstraintPattern;
use crate::reference::{
    brute_force_oracle, chen_chao_solve, contains_substring, is_subsequence, sigma_by_definition,
    ChenChaoVariant, ORACLE_SIZE_LIMIT,
};
use crate::sequence::Sequence;

/// splitmix64: state advances by `0x9E3779B97F4A7C15` per draw; the output
/// mix multiplies by `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB` between
/// xor-shifts of 30, 27 and 31 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Draw in `0..bound` by modulo reduction. The bias is immaterial at the
    /// desk-scale bounds used here and keeps the stream trivial to port.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }
}

/// Bounds and seeding for one campaign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub max_n: usize,
    pub max_m: usize,
    pub max_r: usize,
    pub alphabet: Vec<u8>,
    pub seed: u64,
    pub trials: u64,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::InvalidSpec("trials must be at least 1"));
        }
        if self.max_r == 0 {
            return Err(Error::InvalidSpec("max_r must be at least 1"));
        }
        if self.alphabet.is_empty() {
            return Err(Error::InvalidSpec("alphabet must not be empty"));
        }
        Ok(())
    }
}

/// Solvers a campaign can pit against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverId {
    Naive,
    Optimized,
    ChenChao1,
    ChenChao2,
}

impl SolverId {
    pub const ALL: [SolverId; 4] = [
        SolverId::Naive,
        SolverId::Optimized,
        SolverId::ChenChao1,
        SolverId::ChenChao2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverId::Naive => "naive",
            SolverId::Optimized => "optimized",
            SolverId::ChenChao1 => "chen-chao-1",
            SolverId::ChenChao2 => "chen-chao-2",
        }
    }

    /// Solvers that reconstruct a witness, and therefore get it validated on
    /// every trial.
    pub fn produces_witness(self) -> bool {
        matches!(self, SolverId::Naive | SolverId::Optimized)
    }
}

impl fmt::Display for SolverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(SolverId::Naive),
            "optimized" => Ok(SolverId::Optimized),
            "chen-chao-1" => Ok(SolverId::ChenChao1),
            "chen-chao-2" => Ok(SolverId::ChenChao2),
            _ => Err(Error::InvalidSpec("unknown solver name")),
        }
    }
}

/// One instance on which a solver's length disagrees with the oracle, or a
/// solver's witness failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub trial: u64,
    pub x: Sequence,
    pub y: Sequence,
    pub pattern: Sequence,
    /// Oracle length.
    pub expected: usize,
    /// Length reported by every solver in the campaign, in campaign order.
    pub reported: Vec<(SolverId, usize)>,
    pub witness_errors: Vec<(SolverId, String)>,
    pub minimized: bool,
}

impl Discrepancy {
    /// Solvers whose reported length differs from the oracle.
    pub fn disagreeing(&self) -> impl Iterator<Item = SolverId> + '_ {
        self.reported
            .iter()
            .filter(move |&&(_, len)| len != self.expected)
            .map(|&(s, _)| s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub trials: u64,
    /// Number of witness validations performed (one per witness-producing
    /// solver per trial).
    pub witness_checks: u64,
    pub discrepancies: Vec<Discrepancy>,
}

/// Deterministic instance for `(spec.seed, trial)`.
///
/// The per-trial generator is seeded with
/// `seed + trial * 0x9E3779B97F4A7C15` and draws, in order: n in 0..=max_n,
/// m in 0..=max_m, r in 1..=max_r, then the symbols of x, y and the pattern,
/// each uniform over the alphabet.
///
/// The spec must be valid; trials are otherwise independent and can run in
/// any order.
pub fn generate_instance(
    spec: &InstanceSpec,
    trial: u64,
) -> (Sequence, Sequence, ConstraintPattern) {
    spec.validate().expect("instance spec must be valid");
    let mut rng = SplitMix64::new(
        spec.seed
            .wrapping_add(trial.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
    );
    let n = rng.next_below(spec.max_n as u64 + 1) as usize;
    let m = rng.next_below(spec.max_m as u64 + 1) as usize;
    let r = 1 + rng.next_below(spec.max_r as u64) as usize;
    let mut draw = |len: usize| -> Vec<u8> {
        (0..len)
            .map(|_| spec.alphabet[rng.next_below(spec.alphabet.len() as u64) as usize])
            .collect()
    };
    let x = Sequence::new(draw(n)).expect("bounded by max_n");
    let y = Sequence::new(draw(m)).expect("bounded by max_m");
    let p = ConstraintPattern::new(draw(r)).expect("r is at least 1");
    (x, y, p)
}

fn run_solver(
    solver: SolverId,
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
) -> Result<(usize, Option<SolveOutcome>), Error> {
    match solver {
        SolverId::Naive => {
            let out = solve_naive(x, y, p)?;
            Ok((out.length, Some(out)))
        }
        SolverId::Optimized => {
            let out = solve_optimized(x, y, p)?;
            Ok((out.length, Some(out)))
        }
        SolverId::ChenChao1 => Ok((
            chen_chao_solve(x, y, p, ChenChaoVariant::One)?.length(),
            None,
        )),
        SolverId::ChenChao2 => Ok((
            chen_chao_solve(x, y, p, ChenChaoVariant::Two)?.length(),
            None,
        )),
    }
}

/// Checks a solve outcome against the definitional predicates: the witness
/// must have exactly the reported length, be a common subsequence of both
/// inputs, contain no pattern occurrence, and its definitional sigma must
/// equal the reported state.
pub fn validate_witness(
    x: &Sequence,
    y: &Sequence,
    p: &ConstraintPattern,
    outcome: &SolveOutcome,
) -> Result<(), String> {
    let w = outcome.witness.as_ref().ok_or("no witness produced")?;
    if w.len() != outcome.length {
        return Err(format!(
            "witness has {} symbols but the reported length is {}",
            w.len(),
            outcome.length
        ));
    }
    if !is_subsequence(w.symbols(), x.symbols()) {
        return Err("witness is not a subsequence of x".into());
    }
    if !is_subsequence(w.symbols(), y.symbols()) {
        return Err("witness is not a subsequence of y".into());
    }
    if contains_substring(w.symbols(), p.symbols()) {
        return Err("witness contains the forbidden pattern".into());
    }
    let state = sigma_by_definition(p.symbols(), w.symbols());
    if state != outcome.best_state {
        return Err(format!(
            "witness sits in state {state} but the solver reported state {}",
            outcome.best_state
        ));
    }
    Ok(())
}

/// Runs `spec.trials` generated instances, comparing every solver's length
/// against the oracle and validating every witness. Discrepancies are data,
/// not errors; the report lists them in trial order.
pub fn run_campaign(spec: &InstanceSpec, solvers: &[SolverId]) -> Result<CampaignReport, Error> {
    spec.validate()?;
    if spec.max_n + spec.max_m > ORACLE_SIZE_LIMIT {
        return Err(Error::OracleBound {
            n: spec.max_n,
            m: spec.max_m,
            limit: ORACLE_SIZE_LIMIT,
        });
    }
    let mut discrepancies = Vec::new();
    let mut witness_checks = 0u64;
    for trial in 0..spec.trials {
        let (x, y, p) = generate_instance(spec, trial);
        let oracle = brute_force_oracle(&x, &y, &p)?;
        let mut reported = Vec::with_capacity(solvers.len());
        let mut witness_errors = Vec::new();
        for &solver in solvers {
            let (length, outcome) = run_solver(solver, &x, &y, &p)?;
            reported.push((solver, length));
            if let Some(outcome) = outcome {
                witness_checks += 1;
                if let Err(msg) = validate_witness(&x, &y, &p, &outcome) {
                    witness_errors.push((solver, msg));
                }
            }
        }
        let disagrees = reported.iter().any(|&(_, len)| len != oracle.length);
        if disagrees || !witness_errors.is_empty() {
            discrepancies.push(Discrepancy {
                trial,
                x,
                y,
                pattern: Sequence::new(p.symbols().to_vec())?,
                expected: oracle.length,
                reported,
                witness_errors,
                minimized: false,
            });
        }
    }
    Ok(CampaignReport {
        trials: spec.trials,
        witness_checks,
        discrepancies,
    })
}

/// Outcome of `shrink`: `reproduced` is false when the input failed to
/// reproduce at all, in which case the discrepancy is returned unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkResult {
    pub discrepancy: Discrepancy,
    pub reproduced: bool,
}

enum FailureKind {
    Length(SolverId),
    Witness(SolverId),
}

/// Greedy 1-minimization. Symbols are deleted left to right from x, then y,
/// then the pattern (which never shrinks below one symbol), keeping each
/// deletion only if the original failure — the first solver whose length
/// disagreed with the oracle, or failing that the first invalid witness —
/// still reproduces; the passes repeat until a full sweep changes nothing,
/// so no single deletion of the result reproduces the failure.
pub fn shrink(d: &Discrepancy) -> Result<ShrinkResult, Error> {
    let kind = match d.reported.iter().find(|&&(_, len)| len != d.expected) {
        Some(&(solver, _)) => FailureKind::Length(solver),
        None => match d.witness_errors.first() {
            Some(&(solver, _)) => FailureKind::Witness(solver),
            None => {
                return Ok(ShrinkResult {
                    discrepancy: d.clone(),
                    reproduced: false,
                })
            }
        },
    };

    let reproduces = |xv: &[u8], yv: &[u8], pv: &[u8]| -> Result<bool, Error> {
        let x = Sequence::new(xv.to_vec())?;
        let y = Sequence::new(yv.to_vec())?;
        let p = ConstraintPattern::new(pv.to_vec())?;
        let oracle = brute_force_oracle(&x, &y, &p)?;
        Ok(match kind {
            FailureKind::Length(solver) => run_solver(solver, &x, &y, &p)?.0 != oracle.length,
            FailureKind::Witness(solver) => {
                let (_, outcome) = run_solver(solver, &x, &y, &p)?;
                outcome.is_some_and(|o| validate_witness(&x, &y, &p, &o).is_err())
            }
        })
    };

    let mut xv = d.x.symbols().to_vec();
    let mut yv = d.y.symbols().to_vec();
    let mut pv = d.pattern.symbols().to_vec();
    if !reproduces(&xv, &yv, &pv)? {
        return Ok(ShrinkResult {
            discrepancy: d.clone(),
            reproduced: false,
        });
    }

    loop {
        let mut changed = false;
        let mut i = 0;
        while i < xv.len() {
            let mut cand = xv.clone();
            cand.remove(i);
            if reproduces(&cand, &yv, &pv)? {
                xv = cand;
                changed = true;
            } else {
                i += 1;
            }
        }
        let mut i = 0;
        while i < yv.len() {
            let mut cand = yv.clone();
            cand.remove(i);
            if reproduces(&xv, &cand, &pv)? {
                yv = cand;
                changed = true;
            } else {
                i += 1;
            }
        }
        let mut i = 0;
        while pv.len() > 1 && i < pv.len() {
            let mut cand = pv.clone();
            cand.remove(i);
            if reproduces(&xv, &yv, &cand)? {
                pv = cand;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }

    // re-run every original solver on the minimized instance
    let x = Sequence::new(xv)?;
    let y = Sequence::new(yv)?;
    let p = ConstraintPattern::new(pv)?;
    let oracle = brute_force_oracle(&x, &y, &p)?;
    let mut reported = Vec::with_capacity(d.reported.len());
    let mut witness_errors = Vec::new();
    for &(solver, _) in &d.reported {
        let (length, outcome) = run_solver(solver, &x, &y, &p)?;
        reported.push((solver, length));
        if let Some(outcome) = outcome {
            if let Err(msg) = validate_witness(&x, &y, &p, &outcome) {
                witness_errors.push((solver, msg));
            }
        }
    }
    Ok(ShrinkResult {
        discrepancy: Discrepancy {
            trial: d.trial,
            x,
            y,
            pattern: Sequence::new(p.symbols().to_vec())?,
            expected: oracle.length,
            reported,
            witness_errors,
            minimized: true,
        },
        reproduced: true,
    })
}
