//! Exhaustive and sampled sweeps over a construction's parameter space.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    build, default_lambda, gold_valid_lambdas, lemma2_is_permutation, prediction_matches, semibent_pair_count,
    ConstructionKind, ConstructionReport, Inputs,
};
use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field, FieldConfig};
use crate::walsh::ClassTag;

/// Default for `BFWALSH_MAX_N`.
pub const DEFAULT_MAX_N: u32 = 20;

/// Upper bound on `tuples * 2^n` for a single sweep.
pub const MAX_WORK: u128 = 1 << 36;

const MISMATCH_EXAMPLES: usize = 5;

/// Field-size cap from `BFWALSH_MAX_N`, falling back to the default.
pub fn max_n_from_env() -> Result<u32> {
    match std::env::var("BFWALSH_MAX_N") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("BFWALSH_MAX_N={s:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

pub fn check_size(n_vars: u32, max_n: u32) -> Result<()> {
    if n_vars > max_n {
        return Err(Error::ResourceCap(format!(
            "{n_vars} variables exceed the cap of {max_n}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Random(u64),
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepMode::Exhaustive => write!(f, "exhaustive"),
            SweepMode::Random(n) => write!(f, "random:{n}"),
        }
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(SweepMode::Exhaustive);
        }
        s.strip_prefix("random:")
            .and_then(|n| n.parse().ok())
            .filter(|&n| n > 0)
            .map(SweepMode::Random)
            .ok_or_else(|| Error::Config(format!("sweep must be exhaustive or random:N, got {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub kind: ConstructionKind,
    /// Fixed parameters (`lambda`, `k`, `s`); the swept ones are ignored.
    pub base: Inputs,
    pub mode: SweepMode,
    pub seed: u64,
    pub jobs: Option<usize>,
    /// Keep sampling until every condition pattern has this many hits.
    pub min_per_pattern: Option<u64>,
    pub max_n: u32,
}

impl SweepConfig {
    pub fn new(kind: ConstructionKind, mode: SweepMode) -> Self {
        SweepConfig {
            kind,
            base: Inputs::default(),
            mode,
            seed: 0,
            jobs: None,
            min_per_pattern: None,
            max_n: DEFAULT_MAX_N,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaScan {
    pub valid: u64,
    pub permutations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub construction: String,
    pub field: FieldConfig,
    pub mode: String,
    pub seed: u64,
    pub samples: u64,
    pub mismatches: u64,
    pub by_class: BTreeMap<String, u64>,
    pub by_pattern: BTreeMap<String, u64>,
    pub semibent: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_semibent_pairs: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_scan: Option<LambdaScan>,
    pub mismatch_examples: Vec<ConstructionReport>,
}

/// One point of the parameter space: packed `u, v` and optionally `r`.
type Tuple = (usize, usize, Option<usize>);

#[derive(Default)]
struct Tally {
    samples: u64,
    mismatches: u64,
    by_class: BTreeMap<String, u64>,
    by_pattern: BTreeMap<String, u64>,
    semibent: u64,
    examples: Vec<(usize, ConstructionReport)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.samples += other.samples;
        self.mismatches += other.mismatches;
        self.semibent += other.semibent;
        for (k, v) in other.by_class {
            *self.by_class.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.by_pattern {
            *self.by_pattern.entry(k).or_insert(0) += v;
        }
        self.examples.extend(other.examples);
        self.examples.sort_by_key(|(i, _)| *i);
        self.examples.truncate(MISMATCH_EXAMPLES);
        self
    }
}

fn pattern_key(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

/// Elements the swept parameters range over (packed pairs for bivariate kinds).
fn candidates(kind: ConstructionKind, field: &Field, base: &Inputs) -> Result<Vec<usize>> {
    match kind {
        ConstructionKind::NihoTriple => {
            let m = field.n() / 2;
            Ok(field
                .subfield_elements(m)?
                .into_iter()
                .skip(1)
                .map(|e| e.index())
                .collect())
        }
        ConstructionKind::MmNihoPower => {
            let s = base
                .s
                .ok_or_else(|| Error::InvalidParams("missing parameter s".into()))?;
            let sub = field.subfield_elements(s)?;
            let n = field.n();
            let mut out: Vec<usize> = sub
                .iter()
                .flat_map(|a| sub.iter().map(move |b| a.index() | (b.index() << n)))
                .filter(|&p| p != 0)
                .collect();
            out.sort_unstable();
            Ok(out)
        }
        k if k.is_bivariate() => Ok((1..1usize << (2 * field.n())).collect()),
        _ => Ok((1..field.size()).collect()),
    }
}

fn legal_tuple(kind: ConstructionKind, field: &Field, t: Tuple) -> bool {
    let (u, v, r) = t;
    if u == v {
        return false;
    }
    match r {
        Some(r) => r != u && r != v && u ^ v ^ r != 0,
        None => {
            if kind == ConstructionKind::MmNihoPower {
                let n = field.n();
                let mask = (1usize << n) - 1;
                let (u1, u2) = (Elem((u & mask) as u32), Elem((u >> n) as u32));
                let (v1, v2) = (Elem((v & mask) as u32), Elem((v >> n) as u32));
                (field.mul(u1, v2) + field.mul(v1, u2)).is_zero()
            } else {
                true
            }
        }
    }
}

fn inputs_for(kind: ConstructionKind, field: &Field, base: &Inputs, t: Tuple) -> Inputs {
    let mut p = base.clone();
    let (u, v, r) = t;
    if kind.is_bivariate() {
        let n = field.n();
        let mask = (1usize << n) - 1;
        let split = |x: usize| (Some(Elem((x & mask) as u32)), Some(Elem((x >> n) as u32)));
        (p.u1, p.u2) = split(u);
        (p.v1, p.v2) = split(v);
        if let Some(r) = r {
            (p.r1, p.r2) = split(r);
        }
    } else {
        p.u = Some(Elem(u as u32));
        p.v = Some(Elem(v as u32));
        p.r = r.map(|r| Elem(r as u32));
    }
    p
}

fn exhaustive_tuples(kind: ConstructionKind, field: &Field, cands: &[usize], size: u128) -> Result<Vec<Tuple>> {
    let c = cands.len() as u128;
    let count = if kind.is_triple() {
        c * c.saturating_sub(1) * c.saturating_sub(2) / 6
    } else {
        c * c.saturating_sub(1)
    };
    if count * size > MAX_WORK {
        return Err(Error::ResourceCap(format!(
            "exhaustive sweep of {count} tuples on {size} points exceeds the work cap"
        )));
    }
    let mut out = Vec::new();
    if kind.is_triple() {
        for (i, &u) in cands.iter().enumerate() {
            for (j, &v) in cands.iter().enumerate().skip(i + 1) {
                for &r in &cands[j + 1..] {
                    let t = (u, v, Some(r));
                    if legal_tuple(kind, field, t) {
                        out.push(t);
                    }
                }
            }
        }
    } else {
        for &u in cands {
            for &v in cands {
                let t = (u, v, None);
                if legal_tuple(kind, field, t) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

fn sample_tuples(
    kind: ConstructionKind,
    field: &Field,
    cands: &[usize],
    rng: &mut ChaCha8Rng,
    count: u64,
) -> Result<Vec<Tuple>> {
    let need = if kind.is_triple() { 3 } else { 2 };
    if cands.len() < need {
        return Err(Error::InvalidParams("parameter space is empty".into()));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut attempts = 0u64;
    while (out.len() as u64) < count {
        attempts += 1;
        if attempts > 1000 * count + 10_000 {
            return Err(Error::InvalidParams("no legal parameters found by sampling".into()));
        }
        let pick: Vec<usize> = cands.choose_multiple(rng, need).copied().collect();
        let t = (pick[0], pick[1], pick.get(2).copied());
        if legal_tuple(kind, field, t) {
            out.push(t);
        }
    }
    Ok(out)
}

fn evaluate(
    kind: ConstructionKind,
    field: &Arc<Field>,
    base: &Inputs,
    tuples: &[Tuple],
    offset: usize,
) -> Result<Tally> {
    tuples
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let c = build(kind, field, &inputs_for(kind, field, base, t))?;
            let measured = c.measure()?;
            let ok = prediction_matches(&c.predicted, &measured);
            let mut tally = Tally {
                samples: 1,
                mismatches: (!ok) as u64,
                semibent: (measured.class == ClassTag::SemiBent) as u64,
                ..Default::default()
            };
            tally.by_class.insert(measured.class.to_string(), 1);
            tally.by_pattern.insert(pattern_key(&c.conditions), 1);
            if !ok {
                tally.examples.push((offset + i, c.report()?));
            }
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

fn pattern_universe(kind: ConstructionKind) -> Vec<String> {
    match kind {
        ConstructionKind::NihoTriple => vec![String::new()],
        k if k.is_triple() => (0..8u8)
            .map(|p| pattern_key(&[(p >> 2) & 1, (p >> 1) & 1, p & 1]))
            .collect(),
        _ => vec!["0".into(), "1".into()],
    }
}

pub fn run_sweep(field: &Arc<Field>, cfg: &SweepConfig) -> Result<SweepSummary> {
    let kind = cfg.kind;
    let domain = kind.domain(field);
    check_size(domain.n_vars(), cfg.max_n)?;
    let mut base = cfg.base.clone();
    if base.lambda.is_none() {
        base.lambda = default_lambda(kind, field)?;
    }
    let cands = candidates(kind, field, &base)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;

    let tally = pool.install(|| -> Result<Tally> {
        match cfg.mode {
            SweepMode::Exhaustive => {
                let tuples = exhaustive_tuples(kind, field, &cands, domain.size() as u128)?;
                evaluate(kind, field, &base, &tuples, 0)
            }
            SweepMode::Random(count) => {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                let tuples = sample_tuples(kind, field, &cands, &mut rng, count)?;
                let mut tally = evaluate(kind, field, &base, &tuples, 0)?;
                if let Some(min) = cfg.min_per_pattern {
                    let universe = pattern_universe(kind);
                    let limit = 200 * count;
                    while universe
                        .iter()
                        .any(|p| tally.by_pattern.get(p).copied().unwrap_or(0) < min)
                        && tally.samples < limit
                    {
                        let more = sample_tuples(kind, field, &cands, &mut rng, 100)?;
                        let offset = tally.samples as usize;
                        tally = tally.merge(evaluate(kind, field, &base, &more, offset)?);
                    }
                }
                Ok(tally)
            }
        }
    })?;

    let predicted_semibent_pairs = match kind {
        ConstructionKind::KasamiDouble => Some(semibent_pair_count(field, base.lambda.unwrap_or(Elem::ONE))?),
        _ => None,
    };
    let lambda_scan = match kind {
        ConstructionKind::GoldTriple | ConstructionKind::GoldDouble => {
            let lams = gold_valid_lambdas(field)?;
            let mut permutations = 0;
            for &l in &lams {
                permutations += lemma2_is_permutation(field, l)? as u64;
            }
            Some(LambdaScan {
                valid: lams.len() as u64,
                permutations,
            })
        }
        _ => None,
    };

    Ok(SweepSummary {
        construction: kind.name().to_string(),
        field: field.config(),
        mode: cfg.mode.to_string(),
        seed: cfg.seed,
        samples: tally.samples,
        mismatches: tally.mismatches,
        by_class: tally.by_class,
        by_pattern: tally.by_pattern,
        semibent: tally.semibent,
        predicted_semibent_pairs,
        lambda_scan,
        mismatch_examples: tally.examples.into_iter().map(|(_, r)| r).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u32) -> Arc<Field> {
        Arc::new(Field::standard(n).unwrap())
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exhaustive".parse::<SweepMode>().unwrap(), SweepMode::Exhaustive);
        assert_eq!("random:500".parse::<SweepMode>().unwrap(), SweepMode::Random(500));
        assert!("random:0".parse::<SweepMode>().is_err());
        assert!("random".parse::<SweepMode>().is_err());
        assert_eq!(SweepMode::Random(7).to_string(), "random:7");
    }

    #[test]
    fn semibent_pair_sweep() {
        let f = field(6);
        let cfg = SweepConfig::new(ConstructionKind::KasamiDouble, SweepMode::Exhaustive);
        let s = run_sweep(&f, &cfg).unwrap();
        assert_eq!(s.samples, 63 * 62);
        assert_eq!(s.mismatches, 0);
        assert_eq!(s.semibent, 2016);
        assert_eq!(s.predicted_semibent_pairs, Some(2016));
    }

    #[test]
    fn deterministic_across_job_counts() {
        let f = field(6);
        let mut cfg = SweepConfig::new(ConstructionKind::KasamiTriple, SweepMode::Random(60));
        cfg.seed = 11;
        cfg.jobs = Some(1);
        let a = serde_json::to_string(&run_sweep(&f, &cfg).unwrap()).unwrap();
        cfg.jobs = Some(4);
        let b = serde_json::to_string(&run_sweep(&f, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gold_lambda_scan() {
        let f = field(8);
        let mut cfg = SweepConfig::new(ConstructionKind::GoldTriple, SweepMode::Random(20));
        cfg.seed = 3;
        let s = run_sweep(&f, &cfg).unwrap();
        assert_eq!(
            s.lambda_scan,
            Some(LambdaScan {
                valid: 4,
                permutations: 4
            })
        );
        assert_eq!(s.mismatches, 0);
    }

    #[test]
    fn caps() {
        let f = field(8);
        let mut cfg = SweepConfig::new(ConstructionKind::KasamiTriple, SweepMode::Random(5));
        cfg.max_n = 6;
        assert!(matches!(run_sweep(&f, &cfg), Err(Error::ResourceCap(_))));
        let f = field(12);
        let cfg = SweepConfig::new(ConstructionKind::KasamiTriple, SweepMode::Exhaustive);
        assert!(matches!(run_sweep(&f, &cfg), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn small_exhaustive_niho_and_power() {
        let f = field(8);
        let mut cfg = SweepConfig::new(ConstructionKind::NihoTriple, SweepMode::Exhaustive);
        cfg.base.k = Some(3);
        let s = run_sweep(&f, &cfg).unwrap();
        assert_eq!(s.mismatches, 0);
        assert_eq!(s.by_class.get("Bent"), Some(&s.samples));
        let f3 = field(3);
        let mut cfg = SweepConfig::new(ConstructionKind::MmNihoPower, SweepMode::Exhaustive);
        cfg.base.s = Some(3);
        let s = run_sweep(&f3, &cfg).unwrap();
        assert_eq!(s.mismatches, 0);
        assert!(s.samples > 0);
    }
}
