//! Seeded property fuzzing over every layer of the order.
//!
//! Case `k` draws from a ChaCha stream keyed by the seed with stream number
//! `k`, so cases are independent of each other and of the worker that runs
//! them. The report is sorted by case index and contains no timings, so the
//! same configuration always prints the same bytes.

use std::fmt;

use bforder::braid::{artin_comb, sign_pure_with_ceiling, strand_delete, strand_double};
use bforder::freegroup::{magnus_expand, sign_free_with_ceiling};
use bforder::gen::{random_free_word, random_pure_braid, random_tree};
use bforder::{BraidWord, BvElement, Class, FreeWord, Letter, Relation, Sign, TreePair};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::doc::element_inline;
use crate::{CliError, CliResult};

/// Budget of property evaluations spent shrinking one counterexample.
const SHRINK_BUDGET: usize = 4000;
/// Cap used by the Magnus multiplicativity check.
const MAGNUS_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_strands: usize,
    pub max_letters: usize,
    pub max_leaves: usize,
    pub ceiling: Option<usize>,
    /// Harness self-check: replaces the Magnus sign by the exponent of the
    /// first letter, which is not an order; the run must then fail.
    pub corrupt_sign: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            cases: 100,
            max_strands: 6,
            max_letters: 16,
            max_leaves: 6,
            ceiling: None,
            corrupt_sign: false,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> CliResult<()> {
        let bounds = [
            ("cases", self.cases),
            ("max-strands", self.max_strands),
            ("max-letters", self.max_letters),
            ("max-leaves", self.max_leaves),
        ];
        match bounds.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => {
                Err(bforder::Error::Usage(format!("--{name} must be positive")).into())
            }
            None => Ok(()),
        }
    }
}

/// The inputs of one family of properties.
#[derive(Debug, Clone)]
enum Subject {
    Pure {
        p: BraidWord,
        t: usize,
    },
    Words {
        u: FreeWord,
        v: FreeWord,
        i: usize,
    },
    Triple([BvElement; 3]),
    Chain {
        x: BvElement,
        steps: Vec<usize>,
        f: TreePair,
    },
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Pure { p, t } => write!(f, "    braid: {p}\n    t: {t}"),
            Subject::Words { u, v, i } => write!(f, "    u: {u}\n    v: {v}\n    i: {i}"),
            Subject::Triple(xs) => {
                for (name, x) in ["x", "y", "z"].iter().zip(xs) {
                    writeln!(f, "    {name}: {}", element_inline(x))?;
                }
                Ok(())
            }
            Subject::Chain { x, steps, f: g } => {
                let steps: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
                write!(
                    f,
                    "    x: {}\n    expansions: {}\n    f: {g}",
                    element_inline(x),
                    steps.join(" ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Property {
    CombRoundTrip,
    DoublingLemma,
    StrandCalculus,
    MagnusMultiplicative,
    SignAntisymmetry,
    ConeSemigroup,
    ThetaSign,
    Trichotomy,
    Antisymmetry,
    Transitivity,
    LeftInvariance,
    RightInvariance,
    ConeProduct,
    ConeConjugation,
    RepresentativeIndependence,
    SplittingCompatibility,
}

use Property::*;

const PURE: &[Property] = &[CombRoundTrip, DoublingLemma, StrandCalculus];
const WORDS: &[Property] = &[
    MagnusMultiplicative,
    SignAntisymmetry,
    ConeSemigroup,
    ThetaSign,
];
const TRIPLE: &[Property] = &[
    Trichotomy,
    Antisymmetry,
    Transitivity,
    LeftInvariance,
    RightInvariance,
    ConeProduct,
    ConeConjugation,
];
const CHAIN: &[Property] = &[RepresentativeIndependence, SplittingCompatibility];

impl Property {
    fn name(self) -> &'static str {
        match self {
            CombRoundTrip => "comb-round-trip",
            DoublingLemma => "doubling-lemma",
            StrandCalculus => "strand-calculus",
            MagnusMultiplicative => "magnus-multiplicative",
            SignAntisymmetry => "sign-antisymmetry",
            ConeSemigroup => "cone-semigroup",
            ThetaSign => "theta-sign",
            Trichotomy => "trichotomy",
            Antisymmetry => "antisymmetry",
            Transitivity => "transitivity",
            LeftInvariance => "left-invariance",
            RightInvariance => "right-invariance",
            ConeProduct => "cone-product",
            ConeConjugation => "cone-conjugation",
            RepresentativeIndependence => "representative-independence",
            SplittingCompatibility => "splitting-compatibility",
        }
    }
}

/// The signs under test, possibly corrupted.
#[derive(Debug, Clone, Copy)]
struct Oracle {
    ceiling: Option<usize>,
    corrupt: bool,
}

/// The corrupted convention: the exponent of the first letter of the reduced
/// word. Not conjugation invariant, and not even antisymmetric.
fn first_letter_sign(w: &FreeWord) -> Sign {
    w.reduce()
        .letters()
        .first()
        .map_or(Sign::Zero, |l| Sign::of(&l.exp))
}

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: bforder::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

impl Oracle {
    fn sign_pure(&self, p: &BraidWord) -> Result<Sign, String> {
        if !self.corrupt {
            return core(sign_pure_with_ceiling(p, self.ceiling)).map(|s| s.sign);
        }
        let c = core(artin_comb(p))?;
        Ok(c.first_nontrivial()
            .map_or(Sign::Zero, |k| first_letter_sign(&c.factor_word(k))))
    }

    fn sign_bf(&self, x: &BvElement) -> Result<Sign, String> {
        if x.classify() == Class::General {
            return Err(format!("{} is not in BF", element_inline(x)));
        }
        match x.f_part().sign().0 {
            Sign::Zero => self.sign_pure(x.braid()),
            s => Ok(s),
        }
    }

    fn compare(&self, x: &BvElement, y: &BvElement) -> Result<Relation, String> {
        Ok(Relation::from_quotient_sign(self.sign_bf(&x.inv().mul(y))?))
    }

    fn sign_free(&self, w: &FreeWord) -> Result<Sign, String> {
        if self.corrupt {
            return Ok(first_letter_sign(w));
        }
        core(sign_free_with_ceiling(w, self.ceiling))
    }

    fn check(&self, prop: Property, s: &Subject) -> Check {
        match (prop, s) {
            (CombRoundTrip, Subject::Pure { p, .. }) => {
                let c = core(artin_comb(p))?;
                ensure(c.is_well_formed(), || format!("malformed combing:\n{c}"))?;
                ensure(core(c.expand().braid_equal(p))?, || {
                    format!("combing does not re-expand:\n{c}")
                })
            }
            (DoublingLemma, Subject::Pure { p, t }) => {
                let (a, b) = (
                    self.sign_pure(p)?,
                    self.sign_pure(&core(strand_double(p, *t))?)?,
                );
                ensure(a == b, || format!("sign {a} but doubled sign {b}"))
            }
            (StrandCalculus, Subject::Pure { p, t }) => {
                let d = core(strand_double(p, *t))?;
                for k in [*t, *t + 1] {
                    let back = core(strand_delete(&d, k))?;
                    ensure(core(back.braid_equal(p))?, || {
                        format!("deleting copy {k} gives {back}")
                    })?;
                }
                Ok(())
            }
            (MagnusMultiplicative, Subject::Words { u, v, .. }) => {
                let mu = core(magnus_expand::<BigInt>(u, MAGNUS_CAP))?;
                let mv = core(magnus_expand::<BigInt>(v, MAGNUS_CAP))?;
                let muv = core(magnus_expand::<BigInt>(&core(u.mul(v))?, MAGNUS_CAP))?;
                ensure(muv == core(mu.checked_mul(&mv))?, || {
                    "φ(uv) ≠ φ(u)φ(v)".into()
                })
            }
            (SignAntisymmetry, Subject::Words { u, v, .. }) => {
                let w = core(u.mul(v))?;
                let (a, b) = (self.sign_free(&w)?, self.sign_free(&w.inv())?);
                ensure(b == a.flip(), || format!("sign {a} and inverse sign {b}"))
            }
            (ConeSemigroup, Subject::Words { u, v, .. }) => {
                if self.sign_free(u)?.is_positive() && self.sign_free(v)?.is_positive() {
                    let s = self.sign_free(&core(u.mul(v))?)?;
                    ensure(s.is_positive(), || format!("product of positives is {s}"))?;
                }
                Ok(())
            }
            (ThetaSign, Subject::Words { u, i, .. }) => {
                let (a, b) = (
                    self.sign_free(u)?,
                    self.sign_free(&core(u.theta_apply(*i))?)?,
                );
                ensure(a == b, || format!("sign {a} but θ{i} sign {b}"))
            }
            (Trichotomy, Subject::Triple([x, y, _])) => {
                let rel = self.compare(x, y)?;
                let id = x.inv().mul(y).is_identity();
                ensure((rel == Relation::Equal) == id, || {
                    format!("relation {rel} but x⁻¹y identity = {id}")
                })
            }
            (Antisymmetry, Subject::Triple([x, y, _])) => {
                let (a, b) = (self.compare(x, y)?, self.compare(y, x)?);
                ensure(b == a.reverse(), || format!("x {a} y but y {b} x"))
            }
            (Transitivity, Subject::Triple([x, y, z])) => {
                let (a, b) = (self.compare(x, y)?, self.compare(y, z)?);
                if a == b {
                    let c = self.compare(x, z)?;
                    ensure(c == a, || format!("x {a} y {b} z but x {c} z"))?;
                }
                Ok(())
            }
            (LeftInvariance, Subject::Triple([x, y, z])) => {
                let (a, b) = (self.compare(x, y)?, self.compare(&z.mul(x), &z.mul(y))?);
                ensure(a == b, || format!("x {a} y but zx {b} zy"))
            }
            (RightInvariance, Subject::Triple([x, y, z])) => {
                let (a, b) = (self.compare(x, y)?, self.compare(&x.mul(z), &y.mul(z))?);
                ensure(a == b, || format!("x {a} y but xz {b} yz"))
            }
            (ConeProduct, Subject::Triple([x, y, _])) => {
                if self.sign_bf(x)?.is_positive() && self.sign_bf(y)?.is_positive() {
                    let s = self.sign_bf(&x.mul(y))?;
                    ensure(s.is_positive(), || format!("product of positives is {s}"))?;
                }
                Ok(())
            }
            (ConeConjugation, Subject::Triple([x, _, z])) => {
                let (a, b) = (self.sign_bf(x)?, self.sign_bf(&z.mul(x).mul(&z.inv()))?);
                ensure(a == b, || format!("sign {a} but conjugate sign {b}"))
            }
            (RepresentativeIndependence, Subject::Chain { x, steps, .. }) => {
                let s = self.sign_pure(x.braid())?;
                let mut y = x.clone();
                for &i in steps {
                    y = core(y.expand(i))?;
                    let sy = self.sign_pure(y.braid())?;
                    ensure(sy == s, || {
                        format!("sign {s} but {sy} after expanding at {i}")
                    })?;
                }
                Ok(())
            }
            (SplittingCompatibility, Subject::Chain { x, f, .. }) => {
                let g = BvElement::from_f(f);
                let conj = g.mul(x).mul(&g.inv());
                ensure(conj.classify() == Class::Pbv, || {
                    format!("f x f⁻¹ = {} is not in PBV", element_inline(&conj))
                })?;
                let (a, b) = (self.sign_pure(x.braid())?, self.sign_pure(conj.braid())?);
                ensure(a == b, || format!("sign {a} but f x f⁻¹ sign {b}"))
            }
            (p, _) => unreachable!("{} applied to the wrong subject", p.name()),
        }
    }
}

/// Removes one letter, or two, from the braid, keeping it pure.
fn braid_shrinks(b: &BraidWord) -> Vec<BraidWord> {
    let letters = b.letters();
    let n = b.strands();
    let mut out = Vec::new();
    let mut push = |v: Vec<Letter>| {
        let c = BraidWord::new(n, v).expect("sub-word of a valid braid");
        if c.is_pure() {
            out.push(c);
        }
    };
    let reduced = b.free_reduce();
    if reduced.len() < b.len() {
        push(reduced.letters().to_vec());
    }
    for i in 0..letters.len() {
        push([&letters[..i], &letters[i + 1..]].concat());
    }
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            push([&letters[..i], &letters[i + 1..j], &letters[j + 1..]].concat());
        }
    }
    out
}

fn word_shrinks(w: &FreeWord) -> Vec<FreeWord> {
    let letters = w.letters();
    (0..letters.len())
        .map(|i| {
            FreeWord::new(w.rank(), [&letters[..i], &letters[i + 1..]].concat()).expect("sub-word")
        })
        .collect()
}

fn with_braid(x: &BvElement, b: BraidWord) -> BvElement {
    BvElement::new(x.minus().clone(), b, x.plus().clone()).expect("same strand count")
}

impl Subject {
    fn size(&self) -> usize {
        match self {
            Subject::Pure { p, .. } => p.len(),
            Subject::Words { u, v, .. } => u.len() + v.len(),
            Subject::Triple(xs) => xs.iter().map(|x| x.braid().len() + x.strands()).sum(),
            Subject::Chain { x, steps, f } => x.braid().len() + steps.len() + f.leaves(),
        }
    }

    /// Strictly smaller variants, most aggressive first.
    fn shrinks(&self) -> Vec<Subject> {
        match self {
            Subject::Pure { p, t } => braid_shrinks(p)
                .into_iter()
                .map(|p| Subject::Pure { p, t: *t })
                .collect(),
            Subject::Words { u, v, i } => {
                let mut out: Vec<Subject> = word_shrinks(u)
                    .into_iter()
                    .map(|u| Subject::Words {
                        u,
                        v: v.clone(),
                        i: *i,
                    })
                    .collect();
                out.extend(word_shrinks(v).into_iter().map(|v| Subject::Words {
                    u: u.clone(),
                    v,
                    i: *i,
                }));
                out
            }
            Subject::Triple(xs) => {
                let mut out = Vec::new();
                for k in 0..3 {
                    if xs[k].strands() > 1 || !xs[k].braid().is_empty() {
                        let mut ys = xs.clone();
                        ys[k] = BvElement::identity();
                        out.push(Subject::Triple(ys));
                    }
                    for b in braid_shrinks(xs[k].braid()) {
                        let mut ys = xs.clone();
                        ys[k] = with_braid(&xs[k], b);
                        out.push(Subject::Triple(ys));
                    }
                }
                out
            }
            Subject::Chain { x, steps, f } => {
                let mut out: Vec<Subject> = (0..steps.len())
                    .map(|k| {
                        let mut s = steps.clone();
                        s.truncate(k);
                        Subject::Chain {
                            x: x.clone(),
                            steps: s,
                            f: f.clone(),
                        }
                    })
                    .collect();
                if !f.is_identity() {
                    out.push(Subject::Chain {
                        x: x.clone(),
                        steps: steps.clone(),
                        f: TreePair::identity(),
                    });
                }
                out.extend(
                    braid_shrinks(x.braid())
                        .into_iter()
                        .map(|b| Subject::Chain {
                            x: with_braid(x, b),
                            steps: steps.clone(),
                            f: f.clone(),
                        }),
                );
                out
            }
        }
        .into_iter()
        .filter(|c| c.size() < self.size())
        .collect()
    }
}

/// Greedy shrinking: keep the first smaller variant that still fails.
fn minimize(oracle: &Oracle, prop: Property, start: &Subject) -> (Subject, String) {
    let mut current = start.clone();
    let mut message = oracle.check(prop, start).err().unwrap_or_default();
    let mut budget = SHRINK_BUDGET;
    'outer: while budget > 0 {
        for candidate in current.shrinks() {
            if budget == 0 {
                break 'outer;
            }
            budget -= 1;
            if let Err(m) = oracle.check(prop, &candidate) {
                current = candidate;
                message = m;
                continue 'outer;
            }
        }
        break;
    }
    (current, message)
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub case: usize,
    pub property: &'static str,
    pub message: String,
    subject: Subject,
    prop: Property,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub checks: usize,
    pub violations: Vec<Violation>,
    /// The first violation after shrinking, with its message.
    minimized: Option<(Subject, String)>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "fuzz seed={} cases={} max-strands={} max-letters={} max-leaves={}",
            c.seed, c.cases, c.max_strands, c.max_letters, c.max_leaves
        )?;
        write!(
            f,
            "checks: {}, violations: {}",
            self.checks,
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\ncase {}: {}: {}", v.case, v.property, v.message)?;
        }
        if let (Some(first), Some((subject, message))) = (self.violations.first(), &self.minimized)
        {
            write!(
                f,
                "\nminimized counterexample (case {}, {}): {message}\n{subject}",
                first.case, first.property
            )?;
        }
        Ok(())
    }
}

/// A `BF` element whose trees are copied from `like` half the time, so
/// quotients often fall in `PBV` and reach the braid layer.
fn draw_bf(rng: &mut ChaCha8Rng, cfg: &FuzzConfig, like: Option<&BvElement>) -> BvElement {
    match like {
        Some(x) if rng.gen_bool(0.5) => {
            with_braid(x, random_pure_braid(rng, x.strands(), cfg.max_letters))
        }
        _ => {
            let n = rng.gen_range(1..=cfg.max_leaves);
            let braid = random_pure_braid(rng, n, cfg.max_letters);
            BvElement::new(random_tree(rng, n), braid, random_tree(rng, n))
                .expect("matching leaf counts")
        }
    }
}

fn draw_subjects(cfg: &FuzzConfig, case: usize) -> [Subject; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(case as u64);
    let n = rng.gen_range(1..=cfg.max_strands);
    let pure = Subject::Pure {
        p: random_pure_braid(&mut rng, n, cfg.max_letters),
        t: rng.gen_range(1..=n),
    };
    let rank = rng.gen_range(1..=4);
    let (lu, lv) = (
        rng.gen_range(0..=cfg.max_letters.min(8)),
        rng.gen_range(0..=cfg.max_letters.min(8)),
    );
    let words = Subject::Words {
        u: random_free_word(&mut rng, rank, lu),
        v: random_free_word(&mut rng, rank, lv),
        i: rng.gen_range(1..=rank),
    };
    let x = draw_bf(&mut rng, cfg, None);
    let y = draw_bf(&mut rng, cfg, Some(&x));
    let z = draw_bf(&mut rng, cfg, Some(&x));
    let leaves = rng.gen_range(1..=cfg.max_leaves);
    let tree = random_tree(&mut rng, leaves);
    let px = BvElement::pbv(tree, random_pure_braid(&mut rng, leaves, cfg.max_letters))
        .expect("matching leaves");
    let depth = rng.gen_range(0..=4);
    let steps: Vec<usize> = (leaves..leaves + depth)
        .map(|s| rng.gen_range(1..=s))
        .collect();
    let fl = rng.gen_range(1..=cfg.max_leaves);
    let f = TreePair::new(random_tree(&mut rng, fl), random_tree(&mut rng, fl))
        .expect("matching leaves");
    [
        pure,
        words,
        Subject::Triple([x, y, z]),
        Subject::Chain { x: px, steps, f },
    ]
}

fn properties_of(s: &Subject) -> &'static [Property] {
    match s {
        Subject::Pure { .. } => PURE,
        Subject::Words { .. } => WORDS,
        Subject::Triple(_) => TRIPLE,
        Subject::Chain { .. } => CHAIN,
    }
}

fn run_case(cfg: &FuzzConfig, oracle: &Oracle, case: usize) -> (usize, Vec<Violation>) {
    let mut checks = 0;
    let mut violations = Vec::new();
    for subject in draw_subjects(cfg, case) {
        for &prop in properties_of(&subject) {
            checks += 1;
            if let Err(message) = oracle.check(prop, &subject) {
                violations.push(Violation {
                    case,
                    property: prop.name(),
                    message,
                    subject: subject.clone(),
                    prop,
                });
            }
        }
    }
    (checks, violations)
}

pub fn run(cfg: &FuzzConfig) -> CliResult<FuzzReport> {
    cfg.validate()?;
    let oracle = Oracle {
        ceiling: cfg.ceiling,
        corrupt: cfg.corrupt_sign,
    };
    let mut results: Vec<(usize, usize, Vec<Violation>)> = (0..cfg.cases)
        .into_par_iter()
        .map(|case| {
            let (checks, v) = run_case(cfg, &oracle, case);
            (case, checks, v)
        })
        .collect();
    results.sort_by_key(|r| r.0);
    let checks = results.iter().map(|r| r.1).sum();
    let violations: Vec<Violation> = results.into_iter().flat_map(|r| r.2).collect();
    let minimized = violations
        .first()
        .map(|v| minimize(&oracle, v.prop, &v.subject));
    Ok(FuzzReport {
        config: cfg.clone(),
        checks,
        violations,
        minimized,
    })
}

/// Runs the harness; a failing report becomes a [`CliError::Violation`].
pub fn command(cfg: &FuzzConfig) -> CliResult<String> {
    let report = run(cfg)?;
    if report.passed() {
        Ok(report.to_string())
    } else {
        Err(CliError::Violation(report.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> FuzzConfig {
        FuzzConfig {
            seed,
            cases: 12,
            max_strands: 4,
            max_letters: 10,
            max_leaves: 4,
            ..FuzzConfig::default()
        }
    }

    #[test]
    fn clean_run_is_deterministic() {
        let a = run(&small(1)).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a.to_string(), run(&small(1)).unwrap().to_string());
        assert_eq!(a.checks, 12 * 16);
    }

    #[test]
    fn corrupted_sign_is_caught_and_shrunk() {
        let cfg = FuzzConfig {
            corrupt_sign: true,
            cases: 40,
            ..small(2)
        };
        let report = run(&cfg).unwrap();
        assert!(!report.passed());
        let (subject, _) = report.minimized.as_ref().unwrap();
        assert!(subject.size() <= report.violations[0].subject.size());
        assert!(matches!(command(&cfg), Err(CliError::Violation(_))));
    }

    #[test]
    fn bounds_must_be_positive() {
        let cfg = FuzzConfig {
            max_leaves: 0,
            ..FuzzConfig::default()
        };
        assert!(matches!(
            run(&cfg),
            Err(CliError::Core(bforder::Error::Usage(_)))
        ));
    }
}
