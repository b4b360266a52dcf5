//! Typical real ranks of random 2x2x2 tensors, by the reality of pencil roots.
//!
//! Random numbers come from ChaCha8 seeded with `seed_from_u64(seed)`. Each
//! trial consumes a fixed number of 64-bit words (4 for `sym222`, 8 for
//! `asym222`), turned into standard normals pairwise by Box–Muller. Trial `i`
//! therefore reads a fixed window of the stream, and any split of the trials
//! into contiguous shards reproduces the sequential result exactly.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::ExponentVector;
use crate::decompose::{classify_quadratic, pencil_quadratic, sym222_slices, PencilReality};
use crate::error::{Error, Result};
use crate::tensor::SymmetricTensor;

const BLOCK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// Symmetric tensors: four i.i.d. normal class values.
    Sym222,
    /// General tensors: eight i.i.d. normal entries.
    Asym222,
}

impl Case {
    fn words_per_trial(self) -> u64 {
        match self {
            Case::Sym222 => 4,
            Case::Asym222 => 8,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Sym222 => "sym222",
            Case::Asym222 => "asym222",
        })
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym222" => Ok(Case::Sym222),
            "asym222" => Ok(Case::Asym222),
            other => Err(Error::Invalid(format!("unknown case {other:?}; expected sym222 or asym222"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialStats {
    pub case: Case,
    pub samples: u64,
    pub seed: u64,
    pub rank2_count: u64,
    pub rank3_count: u64,
    pub degenerate_count: u64,
    /// `rank2 / (samples - degenerate)`, or 0 when every draw was degenerate.
    pub fraction_rank2: f64,
    /// `sqrt(f (1 - f) / samples)`.
    pub stderr: f64,
}

impl TrialStats {
    pub const CSV_HEADER: &'static str = "case,samples,seed,rank2,rank3,degenerate,fraction,stderr";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.case,
            self.samples,
            self.seed,
            self.rank2_count,
            self.rank3_count,
            self.degenerate_count,
            self.fraction_rank2,
            self.stderr
        )
    }
}

#[derive(Clone, Copy, Default)]
struct Counts {
    rank2: u64,
    rank3: u64,
    degenerate: u64,
}

impl Counts {
    fn add(self, o: Self) -> Self {
        Counts {
            rank2: self.rank2 + o.rank2,
            rank3: self.rank3 + o.rank3,
            degenerate: self.degenerate + o.degenerate,
        }
    }
}

fn normal_pair(rng: &mut impl RngCore) -> (f64, f64) {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * SCALE;
    let u2 = (rng.next_u64() >> 11) as f64 * SCALE;
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    (r * c, r * s)
}

fn normals<const N: usize>(rng: &mut impl RngCore) -> [f64; N] {
    let mut out = [0.0; N];
    for pair in out.chunks_mut(2) {
        let (a, b) = normal_pair(rng);
        pair[0] = a;
        if pair.len() > 1 {
            pair[1] = b;
        }
    }
    out
}

/// Draws the four class values `a_(3,0), a_(2,1), a_(1,2), a_(0,3)` i.i.d. standard normal.
pub fn sample_sym222(rng: &mut impl RngCore) -> SymmetricTensor<f64> {
    let c: [f64; 4] = normals(rng);
    let coeffs = (0..4u32).map(|j| (ExponentVector::from(vec![3 - j, j]), c[j as usize]));
    SymmetricTensor::from_coeffs(3, 2, coeffs).expect("valid shape")
}

/// Reality of the pencil roots of a real symmetric 2x2x2 tensor.
pub fn classify_pencil_reality(a: &SymmetricTensor<f64>) -> Result<PencilReality> {
    let [a0, a1] = sym222_slices(a)?;
    Ok(classify_quadratic(pencil_quadratic(&a0, &a1)))
}

fn trial(case: Case, rng: &mut impl RngCore) -> PencilReality {
    let (a0, a1) = match case {
        Case::Sym222 => {
            let [c0, c1, c2, c3]: [f64; 4] = normals(rng);
            ([[c0, c1], [c1, c2]], [[c1, c2], [c2, c3]])
        }
        Case::Asym222 => {
            let g: [f64; 8] = normals(rng);
            ([[g[0], g[1]], [g[2], g[3]]], [[g[4], g[5]], [g[6], g[7]]])
        }
    };
    classify_quadratic(pencil_quadratic(&a0, &a1))
}

/// Runs trials `start..end` of the stream for `seed`.
fn run_range(case: Case, seed: u64, start: u64, end: u64) -> Counts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // word positions count 32-bit words
    rng.set_word_pos(u128::from(start) * u128::from(case.words_per_trial()) * 2);
    let mut counts = Counts::default();
    for _ in start..end {
        match trial(case, &mut rng) {
            PencilReality::Real2 => counts.rank2 += 1,
            PencilReality::Complex3 => counts.rank3 += 1,
            PencilReality::Degenerate => counts.degenerate += 1,
        }
    }
    counts
}

fn finish(case: Case, samples: u64, seed: u64, c: Counts) -> TrialStats {
    let effective = samples - c.degenerate;
    let f = if effective == 0 { 0.0 } else { c.rank2 as f64 / effective as f64 };
    TrialStats {
        case,
        samples,
        seed,
        rank2_count: c.rank2,
        rank3_count: c.rank3,
        degenerate_count: c.degenerate,
        fraction_rank2: f,
        stderr: (f * (1.0 - f) / samples as f64).sqrt(),
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::Invalid("samples must be at least 1".into()));
    }
    Ok(())
}

/// Classifies `samples` random tensors, in parallel over fixed blocks of trials.
pub fn typical_rank_experiment(case: Case, samples: u64, seed: u64) -> Result<TrialStats> {
    check_samples(samples)?;
    let blocks = samples.div_ceil(BLOCK);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|b| run_range(case, seed, b * BLOCK, ((b + 1) * BLOCK).min(samples)))
        .reduce(Counts::default, Counts::add);
    Ok(finish(case, samples, seed, counts))
}

/// Same experiment split into `workers` contiguous shards, run one after another.
pub fn typical_rank_experiment_sharded(case: Case, samples: u64, seed: u64, workers: u64) -> Result<TrialStats> {
    check_samples(samples)?;
    if workers == 0 {
        return Err(Error::Invalid("workers must be at least 1".into()));
    }
    let counts = (0..workers)
        .map(|w| run_range(case, seed, samples * w / workers, samples * (w + 1) / workers))
        .fold(Counts::default(), Counts::add);
    Ok(finish(case, samples, seed, counts))
}
