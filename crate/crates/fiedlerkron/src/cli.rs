//! Command-line front end: build pencils from tuple specs, derive block Kronecker views,
//! enumerate partitions, verify linearizations and print spectra.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fiedlerkron_core::kronecker::{
    enumerate_ebk, fiedler_ebk, gfp_ebk, gfpr_ebk, gfpr_partition, nonproper_normalize, recognize_all, EbkView,
};
use fiedlerkron_core::pencils::{fiedler, gfp, gfpr, GfprSpec};
use fiedlerkron_core::tuples::{format_indices, format_tuple, parse_indices, parse_tuple, Index};
use fiedlerkron_core::{BlockPencil, MatrixPolynomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{exit, Error, Result};
use crate::fixtures::{integer_polynomial, random_polynomial};
use crate::io::{check_compatible, read_document, to_json_string, write_json, Document, EbkJson, PencilJson};
use crate::verify::{certify, pencil_eigs, polyeig_reference, strong_linearization_check, Certificate, SpectrumReport, Verdict, DEFAULT_TOL};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "FIEDLERKRON_TOL";

/// Fiedler-like pencils, their block Kronecker structure and spectral certification.
#[derive(Debug, Parser)]
#[command(name = "fiedlerkron", version, about)]
pub struct Cli {
    /// Command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a pencil and write it as JSON.
    Build(JobArgs),
    /// Derive the block permutations exposing the extended block Kronecker form.
    Permute(JobArgs),
    /// List every partition under which the pencil is an extended block Kronecker pencil.
    Enumerate(JobArgs),
    /// Check AS, CAS, wing structure and spectral agreement with the companion form.
    Verify(JobArgs),
    /// Print the spectrum of the pencil and of the companion reference.
    Eig(JobArgs),
    /// Run a short built-in certification suite.
    Selftest(JobArgs),
}

/// Pencil families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `lambda M_{-k} - M_q`.
    Fiedler,
    /// `lambda M_z - M_q`.
    Gfp,
    /// `M_{lq,lz} (lambda M_z - M_q) M_{rz,rq}` with trivial assignments.
    Gfpr,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// Pencil family.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Grade of the polynomial.
    #[arg(long)]
    pub k: Option<usize>,
    /// Block size of generated polynomials.
    #[arg(long)]
    pub n: Option<usize>,
    /// Tuple `q`, e.g. `0,2,4,1,3,5` or `3:5,2,0:1`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Tuple `z`, e.g. `-1,-6,-5` or `-6:-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Left `q`-side tuple of a GFPR.
    #[arg(long, allow_hyphen_values = true)]
    pub lq: Option<String>,
    /// Right `q`-side tuple of a GFPR.
    #[arg(long, allow_hyphen_values = true)]
    pub rq: Option<String>,
    /// Left `z`-side tuple of a GFPR.
    #[arg(long, allow_hyphen_values = true)]
    pub lz: Option<String>,
    /// Right `z`-side tuple of a GFPR.
    #[arg(long, allow_hyphen_values = true)]
    pub rz: Option<String>,
    /// Split index of a GFPR; defaults `q = (0:h)` and `z = (-k:-h-1)` when those are omitted.
    #[arg(long)]
    pub h: Option<usize>,
    /// Seed for a random complex normal polynomial.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Tolerance; overrides the environment variable and the default.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file for JSON; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Pencil or polynomial JSON files; may be repeated.
    #[arg(long)]
    pub input: Vec<PathBuf>,
}

/// A parsed family specification.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Fiedler pencil.
    Fiedler(Vec<i64>),
    /// Generalized Fiedler pencil.
    Gfp(Vec<Index>, Vec<Index>),
    /// Generalized Fiedler pencil with repetition.
    Gfpr(GfprSpec),
}

fn opt_tuple(s: &Option<String>) -> Result<Vec<i64>> {
    Ok(s.as_deref().map(parse_tuple).transpose()?.unwrap_or_default())
}

fn required<'a>(s: &'a Option<String>, name: &str, family: &str) -> Result<&'a str> {
    s.as_deref().ok_or_else(|| Error::Input(format!("--{name} is required for --family {family}")))
}

impl FamilySpec {
    /// Parses the tuple flags for `family`; `k` is only needed for GFPR defaults from `--h`.
    pub fn parse(family: Family, a: &JobArgs) -> Result<Self> {
        match family {
            Family::Fiedler => Ok(Self::Fiedler(parse_tuple(required(&a.q, "q", "fiedler")?)?)),
            Family::Gfp => {
                let q = a.q.as_deref().map(parse_indices).transpose()?.unwrap_or_default();
                let z = a.z.as_deref().map(parse_indices).transpose()?.unwrap_or_default();
                Ok(Self::Gfp(q, z))
            }
            Family::Gfpr => {
                let (q, z) = match (a.q.as_deref(), a.z.as_deref(), a.h) {
                    (Some(q), Some(z), _) => (parse_tuple(q)?, parse_tuple(z)?),
                    (q, z, Some(h)) => {
                        let k = a.k.ok_or_else(|| Error::Input("--h needs --k".into()))? as i64;
                        let h = h as i64;
                        let q = q.map(parse_tuple).transpose()?.unwrap_or_else(|| (0..=h).collect());
                        let z = z.map(parse_tuple).transpose()?.unwrap_or_else(|| (-k..=-h - 1).collect());
                        (q, z)
                    }
                    _ => return Err(Error::Input("--family gfpr needs --q and --z, or --h and --k".into())),
                };
                let spec = GfprSpec::new(q, z).with_outer(opt_tuple(&a.lq)?, opt_tuple(&a.rq)?, opt_tuple(&a.lz)?, opt_tuple(&a.rz)?);
                Ok(Self::Gfpr(spec))
            }
        }
    }

    /// Grade implied by the tuples.
    pub fn grade(&self) -> usize {
        match self {
            Self::Fiedler(q) => q.len(),
            Self::Gfp(q, z) => (q.len() + z.len()).saturating_sub(1),
            Self::Gfpr(s) => (s.q.len() + s.z.len()).saturating_sub(1),
        }
    }

    /// The pencil for `p`.
    pub fn build(&self, p: &MatrixPolynomial) -> Result<BlockPencil> {
        Ok(match self {
            Self::Fiedler(q) => fiedler(p, q)?,
            Self::Gfp(q, z) => gfp(p, q, z)?.pencil,
            Self::Gfpr(s) => gfpr(p, s)?,
        })
    }

    /// Human-readable family classification.
    pub fn classify(&self, p: &MatrixPolynomial) -> Result<String> {
        Ok(match self {
            Self::Fiedler(q) => format!("Fiedler pencil, q = ({})", format_tuple(q)),
            Self::Gfp(q, z) => {
                let kind = if gfp(p, q, z)?.is_proper { "proper" } else { "nonproper" };
                format!("{kind} GFP, q = ({}), z = ({})", format_indices(q), format_indices(z))
            }
            Self::Gfpr(s) => {
                s.validate(p.grade())?;
                let outer = [&s.lq, &s.rq, &s.lz, &s.rz].iter().any(|t| !t.is_empty());
                let kind = if outer { "FPR (trivial assignments)" } else { "GFPR with empty outer tuples" };
                format!(
                    "{kind}, h = {}, q = ({}), z = ({}), lq = ({}), rq = ({}), lz = ({}), rz = ({})",
                    s.h(),
                    format_tuple(&s.q),
                    format_tuple(&s.z),
                    format_tuple(&s.lq),
                    format_tuple(&s.rq),
                    format_tuple(&s.lz),
                    format_tuple(&s.rz)
                )
            }
        })
    }

    /// The view predicted by the structure theorems for this family.
    pub fn derive(&self, p: &MatrixPolynomial, tol: f64) -> Result<EbkView> {
        Ok(match self {
            Self::Fiedler(q) => fiedler_ebk(p, q, tol)?,
            Self::Gfp(q, z) => gfp_ebk(p, q, z, tol)?,
            Self::Gfpr(s) => gfpr_ebk(p, s, tol)?,
        })
    }

    /// Predicted partition `(p, q)` for the GFPR family.
    pub fn predicted_partition(&self, k: usize) -> Option<(usize, usize)> {
        match self {
            Self::Gfpr(s) => gfpr_partition(s, k).ok(),
            _ => None,
        }
    }
}

/// Inputs gathered from the flags and files.
#[derive(Debug, Clone)]
pub struct Job {
    /// Parsed family, when `--family` is given.
    pub family: Option<FamilySpec>,
    /// The polynomial.
    pub poly: MatrixPolynomial,
    /// Where the polynomial came from.
    pub poly_source: String,
    /// A pencil read from `--input`.
    pub pencil: Option<BlockPencil>,
    /// Effective tolerance.
    pub tol: f64,
}

/// Tolerance from `--tol`, then the environment, then the default.
pub fn tolerance(a: &JobArgs, env: Option<&str>) -> Result<f64> {
    let tol = match (a.tol, env) {
        (Some(t), _) => t,
        (None, Some(s)) => s.trim().parse().map_err(|_| Error::Input(format!("{TOL_ENV}={s:?} is not a number")))?,
        (None, None) => DEFAULT_TOL,
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::Input(format!("tolerance {tol} must be finite and nonnegative")));
    }
    Ok(tol)
}

impl Job {
    /// Resolves the polynomial: an input file, else a seeded random one, else the integer fixture.
    pub fn from_args(a: &JobArgs, env_tol: Option<&str>) -> Result<Self> {
        let tol = tolerance(a, env_tol)?;
        let family = a.family.map(|f| FamilySpec::parse(f, a)).transpose()?;
        let (mut poly, mut pencil) = (None, None);
        for path in &a.input {
            match read_document(path)? {
                Document::Polynomial(p) if poly.is_none() => poly = Some((p, path.display().to_string())),
                Document::Pencil(l) if pencil.is_none() => pencil = Some(l),
                _ => return Err(Error::Input("at most one polynomial and one pencil may be given".into())),
            }
        }
        let k = a
            .k
            .or(poly.as_ref().map(|(p, _)| p.grade()))
            .or(pencil.as_ref().map(|l: &BlockPencil| l.grid_rows()))
            .or(family.as_ref().map(FamilySpec::grade))
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Input("cannot determine the grade; pass --k".into()))?;
        let n = a.n.or(pencil.as_ref().map(|l| l.n)).unwrap_or(2);
        if n == 0 {
            return Err(Error::Input("--n must be positive".into()));
        }
        let (poly, poly_source) = match (poly, a.seed) {
            (Some(p), _) => p,
            (None, Some(seed)) => (random_polynomial(&mut ChaCha8Rng::seed_from_u64(seed), n, k), format!("random complex normal, n = {n}, k = {k}, seed = {seed}")),
            (None, None) => (integer_polynomial(k, n), format!("integer fixture, n = {n}, k = {k}")),
        };
        if poly.grade() != k {
            return Err(Error::Input(format!("--k {k} differs from the polynomial grade {}", poly.grade())));
        }
        if let Some(l) = &pencil {
            check_compatible(l, &poly)?;
        }
        Ok(Self { family, poly, poly_source, pencil, tol })
    }

    /// The input pencil, or the pencil built from the family.
    pub fn pencil(&self) -> Result<BlockPencil> {
        match (&self.pencil, &self.family) {
            (Some(l), _) => Ok(l.clone()),
            (None, Some(f)) => f.build(&self.poly),
            (None, None) => Err(Error::Input("pass --family with tuples or an --input pencil".into())),
        }
    }
}

/// Block map of a view: `B` both coefficients nonzero, `L` only the `lambda` part, `C` only the
/// constant part, `.` zero; bars separate the body from the wings.
pub fn block_map(v: &EbkView) -> String {
    let (k, p) = (v.k(), v.p);
    let mut out = String::new();
    for i in 0..k {
        if i == k - p && p > 0 {
            out.push_str(&"-".repeat(2 * k + 1));
            out.push('\n');
        }
        for j in 0..k {
            if j == p + 1 && j < k {
                out.push_str("| ");
            }
            let (b1, b0) = v.pencil.block(i, j);
            let nz = |m: &fiedlerkron_core::Mat| m.iter().any(|z| z.norm() > 0.0);
            out.push(match (nz(&b1), nz(&b0)) {
                (true, true) => 'B',
                (true, false) => 'L',
                (false, true) => 'C',
                (false, false) => '.',
            });
            out.push(' ');
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

fn describe_view(w: &mut dyn Write, v: &EbkView, poly: &MatrixPolynomial, tol: f64) -> Result<()> {
    writeln!(w, "partition (p, q) = ({}, {}), n = {}", v.p, v.q, v.n())?;
    writeln!(w, "permL = {:?}", v.perm_l.as_slice())?;
    writeln!(w, "permR = {:?}", v.perm_r.as_slice())?;
    writeln!(w, "wing block rows = {:?}, wing block columns = {:?}", v.wing_rows(), v.wing_cols())?;
    writeln!(w, "AS condition: {}", if v.check_as(poly, tol) { "holds" } else { "fails" })?;
    let [a, b] = v.minimal_basis_flags(tol);
    writeln!(w, "minimal-basis flags: K1 {a}, K2 {b}")?;
    write!(w, "{}", block_map(v))?;
    Ok(())
}

fn emit<T: Serialize>(w: &mut dyn Write, a: &JobArgs, value: &T) -> Result<()> {
    match &a.out {
        Some(path) => {
            write_json(path, value)?;
            writeln!(w, "wrote {}", path.display())?;
        }
        None => writeln!(w, "{}", to_json_string(value)?)?,
    }
    Ok(())
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => exit::PASS,
        Verdict::Fail => exit::CHECK_FAILED,
        Verdict::Ineligible => exit::INELIGIBLE,
    }
}

/// Views of an input pencil in place, else every permuted view, ordered by `p`.
fn generic_views(l: &BlockPencil, poly: &MatrixPolynomial, tol: f64) -> Vec<EbkView> {
    let in_place: Vec<EbkView> = recognize_all(l, tol).into_iter().filter(|v| v.check_as(poly, tol)).collect();
    if in_place.is_empty() {
        enumerate_ebk(l, Some(poly), tol)
    } else {
        in_place
    }
}

fn cmd_build(job: &Job, a: &JobArgs, w: &mut dyn Write) -> Result<i32> {
    let f = job.family.as_ref().ok_or_else(|| Error::Input("build needs --family".into()))?;
    let class = f.classify(&job.poly)?;
    let l = f.build(&job.poly)?;
    writeln!(w, "{class}")?;
    writeln!(w, "polynomial: {}", job.poly_source)?;
    emit(w, a, &PencilJson::from_pencil(&l))?;
    Ok(exit::PASS)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct NonproperReport {
    q: String,
    z: String,
    proper_q: String,
    proper_z: String,
    identity_verified: bool,
    proper_view: EbkJson,
}

fn cmd_permute(job: &Job, a: &JobArgs, w: &mut dyn Write) -> Result<i32> {
    let tol = job.tol;
    if let Some(f) = &job.family {
        writeln!(w, "{}", f.classify(&job.poly)?)?;
        if let FamilySpec::Gfp(q, z) = f {
            if !gfp(&job.poly, q, z)?.is_proper {
                let norm = nonproper_normalize(&job.poly, q, z, tol)?;
                let view = gfp_ebk(&job.poly, &norm.q, &norm.z, tol)?;
                writeln!(w, "nonproper: left * K * right equals the proper GFP q = ({}), z = ({})", format_indices(&norm.q), format_indices(&norm.z))?;
                describe_view(w, &view, &job.poly, tol)?;
                let report = NonproperReport {
                    q: format_indices(q),
                    z: format_indices(z),
                    proper_q: format_indices(&norm.q),
                    proper_z: format_indices(&norm.z),
                    identity_verified: true,
                    proper_view: EbkJson::from_view(&view, Some(&job.poly), tol),
                };
                emit(w, a, &report)?;
                return Ok(exit::INELIGIBLE);
            }
        }
        let view = f.derive(&job.poly, tol)?;
        describe_view(w, &view, &job.poly, tol)?;
        emit(w, a, &EbkJson::from_view(&view, Some(&job.poly), tol))?;
        return Ok(exit::PASS);
    }
    let l = job.pencil()?;
    let view = generic_views(&l, &job.poly, tol)
        .into_iter()
        .next()
        .ok_or_else(|| fiedlerkron_core::Error::NoPermutation("no partition yields an AS-verified view".into()))?;
    describe_view(w, &view, &job.poly, tol)?;
    emit(w, a, &EbkJson::from_view(&view, Some(&job.poly), tol))?;
    Ok(exit::PASS)
}

fn cmd_enumerate(job: &Job, a: &JobArgs, w: &mut dyn Write) -> Result<i32> {
    let l = job.pencil()?;
    let views = enumerate_ebk(&l, Some(&job.poly), job.tol);
    writeln!(w, "{} partition(s)", views.len())?;
    for v in &views {
        writeln!(w, "(p, q) = ({}, {}), permL = {:?}, permR = {:?}", v.p, v.q, v.perm_l.as_slice(), v.perm_r.as_slice())?;
    }
    let json: Vec<EbkJson> = views.iter().map(|v| EbkJson::from_view(v, Some(&job.poly), job.tol)).collect();
    emit(w, a, &json)?;
    Ok(if views.is_empty() { exit::DERIVATION_FAILED } else { exit::PASS })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SpectralOnly {
    classification: String,
    passed: bool,
    failures: Vec<String>,
}

fn print_certificate(w: &mut dyn Write, c: &Certificate) -> Result<()> {
    writeln!(w, "partition (p, q) = ({}, {})", c.p, c.q)?;
    writeln!(w, "AS: {}", if c.as_failures.is_empty() { "pass" } else { "FAIL" })?;
    writeln!(w, "CAS: {}", if c.cas { "pass" } else { "FAIL" })?;
    writeln!(w, "wings: K1 {}, K2 {}; zero corner {}", c.wings[0], c.wings[1], c.zero_corner)?;
    writeln!(w, "minimal-basis flags: K1 {}, K2 {}", c.minimal_basis_flags[0], c.minimal_basis_flags[1])?;
    if let Some(r) = &c.linearization {
        writeln!(
            w,
            "spectrum: {} finite, {} infinite, max relative error {:.3e}",
            r.pencil.finite_eigs.len(),
            r.pencil.inf_count,
            r.pencil.max_rel_error.unwrap_or(0.0)
        )?;
    }
    for f in &c.failures {
        writeln!(w, "failed: {f}")?;
    }
    writeln!(w, "verdict: {}", match c.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Ineligible => "ineligible (singular wing factor)",
    })?;
    Ok(())
}

fn cmd_verify(job: &Job, a: &JobArgs, w: &mut dyn Write) -> Result<i32> {
    let tol = job.tol;
    let view = match &job.family {
        Some(f) => {
            writeln!(w, "{}", f.classify(&job.poly)?)?;
            if let FamilySpec::Gfp(q, z) = f {
                if !gfp(&job.poly, q, z)?.is_proper {
                    let norm = nonproper_normalize(&job.poly, q, z, tol)?;
                    writeln!(w, "nonproper: normalizes to q = ({}), z = ({})", format_indices(&norm.q), format_indices(&norm.z))?;
                    let l = job.pencil()?;
                    let r = strong_linearization_check(&l, &job.poly, tol)?;
                    for f in &r.failures {
                        writeln!(w, "failed: {f}")?;
                    }
                    let report = SpectralOnly { classification: f.classify(&job.poly)?, passed: r.passed, failures: r.failures };
                    emit(w, a, &report)?;
                    return Ok(if report.passed { exit::PASS } else { exit::CHECK_FAILED });
                }
            }
            let clean = f.derive(&job.poly, tol)?;
            match &job.pencil {
                // Apply the derived permutations to the supplied pencil.
                Some(l) => EbkView { pencil: l.permute(&clean.perm_l, &clean.perm_r), ..clean },
                None => clean,
            }
        }
        None => {
            let l = job.pencil()?;
            let views = generic_views(&l, &job.poly, tol);
            match views.iter().find(|v| v.is_eligible(tol)).or(views.first()) {
                Some(v) => v.clone(),
                None => {
                    writeln!(w, "failed: no partition of the pencil satisfies the AS condition")?;
                    return Ok(exit::CHECK_FAILED);
                }
            }
        }
    };
    let cert = certify(&view, &job.poly, tol)?;
    print_certificate(w, &cert)?;
    emit(w, a, &cert)?;
    Ok(verdict_code(cert.verdict))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EigReport {
    pencil: SpectrumReport,
    reference: Option<SpectrumReport>,
}

fn cmd_eig(job: &Job, a: &JobArgs, w: &mut dyn Write) -> Result<i32> {
    let l = match (&job.pencil, &job.family) {
        (None, None) => crate::verify::companion(&job.poly),
        _ => job.pencil()?,
    };
    let pencil = pencil_eigs(&l)?;
    let reference = polyeig_reference(&job.poly).ok();
    writeln!(w, "pencil: {} finite, {} infinite eigenvalues", pencil.finite_eigs.len(), pencil.inf_count)?;
    if let Some(r) = &reference {
        writeln!(w, "companion reference: {} finite, {} infinite eigenvalues", r.finite_eigs.len(), r.inf_count)?;
    }
    emit(w, a, &EigReport { pencil, reference })?;
    Ok(exit::PASS)
}

/// One line of the self test.
#[derive(Debug, Clone, Serialize)]
pub struct SelftestLine {
    /// Case description.
    pub name: String,
    /// Verdict.
    pub passed: bool,
    /// Detail or failure reason.
    pub detail: String,
}

/// Certifies one pencil of each family on seeded random polynomials.
pub fn selftest(seed: u64, tol: f64) -> Vec<SelftestLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p6 = random_polynomial(&mut rng, 2, 6);
    let p3 = random_polynomial(&mut rng, 2, 3);
    let cases: Vec<(&str, FamilySpec, &MatrixPolynomial)> = vec![
        ("fiedler q = (0,2,4,1,3,5)", FamilySpec::Fiedler(vec![0, 2, 4, 1, 3, 5]), &p6),
        ("proper gfp q = (3,4,2,0), z = (-1,-6,-5)", FamilySpec::Gfp(parse_indices("3,4,2,0").expect("literal"), parse_indices("-1,-6,-5").expect("literal")), &p6),
        ("fpr grade 6", FamilySpec::Gfpr(crate::fixtures::tuples::fpr()), &p6),
        ("gfpr d1", FamilySpec::Gfpr(crate::fixtures::tuples::d1()), &p3),
        ("gfpr d2", FamilySpec::Gfpr(crate::fixtures::tuples::d2()), &p3),
        ("gfpr d3", FamilySpec::Gfpr(crate::fixtures::tuples::d3()), &p3),
    ];
    cases
        .into_iter()
        .map(|(name, f, p)| {
            let outcome = f.derive(p, tol).map_err(|e| e.to_string()).and_then(|v| certify(&v, p, tol).map_err(|e| e.to_string()));
            match outcome {
                Ok(c) if c.verdict == Verdict::Pass => SelftestLine {
                    name: name.into(),
                    passed: true,
                    detail: format!("(p, q) = ({}, {})", c.p, c.q),
                },
                Ok(c) => SelftestLine { name: name.into(), passed: false, detail: c.failures.join("; ") },
                Err(e) => SelftestLine { name: name.into(), passed: false, detail: e },
            }
        })
        .collect()
}

fn cmd_selftest(job_args: &JobArgs, tol: f64, w: &mut dyn Write) -> Result<i32> {
    let lines = selftest(job_args.seed.unwrap_or(0), tol);
    for l in &lines {
        writeln!(w, "{} {}: {}", if l.passed { "PASS" } else { "FAIL" }, l.name, l.detail)?;
    }
    if job_args.out.is_some() {
        emit(w, job_args, &lines)?;
    }
    Ok(if lines.iter().all(|l| l.passed) { exit::PASS } else { exit::CHECK_FAILED })
}

/// Runs a parsed command, writing human-readable output to `w`; `env_tol` is the value of
/// [`TOL_ENV`] if set.
pub fn run(cli: &Cli, env_tol: Option<&str>, w: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Selftest(a) => cmd_selftest(a, tolerance(a, env_tol)?, w),
        Command::Build(a) => cmd_build(&Job::from_args(a, env_tol)?, a, w),
        Command::Permute(a) => cmd_permute(&Job::from_args(a, env_tol)?, a, w),
        Command::Enumerate(a) => cmd_enumerate(&Job::from_args(a, env_tol)?, a, w),
        Command::Verify(a) => cmd_verify(&Job::from_args(a, env_tol)?, a, w),
        Command::Eig(a) => cmd_eig(&Job::from_args(a, env_tol)?, a, w),
    }
}

/// Runs the command and maps errors to exit codes, reporting them on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::PASS };
            let _ = e.print();
            return code;
        }
    };
    let env = std::env::var(TOL_ENV).ok();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, env.as_deref(), &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
