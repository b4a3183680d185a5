use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use serde_json::json;

use exposed_maps::antisym::{
    antisymmetry_residual, canonical_decompose, eigenphase_pairs, random_antisymmetric_unitary, unitarity_residual,
};
use exposed_maps::commutant::{commutant_of_range, is_irreducible};
use exposed_maps::numlin::{family_rank, norm, normalized, seeded_rng};
use exposed_maps::posmap::{breuer_hall, positivity_sample_test, reduction_map, robertson_map, transpose_map, LinearMap};
use exposed_maps::witness::{
    dn_bound, dn_formula, estimate_m_dim, estimate_n_dim, n_target, reduction_m_dim, reduction_n_dim,
    EstimatorConfig, ReferenceFamily, SpanReport,
};
use exposed_maps::{Error, MapRep, Result, Tolerances};

use crate::report::{Expected, ReportBuilder, Table, VerificationReport};

/// Settings shared by every check.
#[derive(Debug, Clone)]
pub struct CheckContext {
    pub seed: u64,
    pub budget: Option<usize>,
    /// Overrides the per-check default dimension list.
    pub n: Option<Vec<usize>>,
    pub timing: bool,
}

impl Default for CheckContext {
    fn default() -> Self {
        Self {
            seed: 0,
            budget: None,
            n: None,
            timing: false,
        }
    }
}

impl CheckContext {
    fn config(&self) -> EstimatorConfig<f64> {
        EstimatorConfig {
            budget: self.budget,
            ..EstimatorConfig::with_seed(self.seed)
        }
    }

    fn dims(&self, default: &[usize]) -> Vec<usize> {
        self.n.clone().unwrap_or_else(|| default.to_vec())
    }

    fn builder(&self, name: &str) -> ReportBuilder {
        ReportBuilder::new(name, self.seed, tolerance_map(&Tolerances::<f64>::default()))
    }
}

fn tolerance_map(t: &Tolerances<f64>) -> BTreeMap<String, f64> {
    BTreeMap::from([
        ("hermitian".to_string(), t.hermitian),
        ("kernel".to_string(), t.kernel),
        ("rank".to_string(), t.rank),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    BhRandomExposed,
    CanonicalFormRoundtrip,
    DnTable,
    Example1Transpose,
    Example2Reduction,
    PositivitySample,
    Prop3Robertson60,
    ReductionNFails,
    RobertsonIrreducible,
    RobertsonStrongSpanning,
}

impl Check {
    /// Every check, ordered by name.
    pub const ALL: [Check; 10] = [
        Check::BhRandomExposed,
        Check::CanonicalFormRoundtrip,
        Check::DnTable,
        Check::Example1Transpose,
        Check::Example2Reduction,
        Check::PositivitySample,
        Check::Prop3Robertson60,
        Check::ReductionNFails,
        Check::RobertsonIrreducible,
        Check::RobertsonStrongSpanning,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::BhRandomExposed => "bh-random-exposed",
            Check::CanonicalFormRoundtrip => "canonical-form-roundtrip",
            Check::DnTable => "dn-table",
            Check::Example1Transpose => "example1-transpose",
            Check::Example2Reduction => "example2-reduction",
            Check::PositivitySample => "positivity-sample",
            Check::Prop3Robertson60 => "prop3-robertson-60",
            Check::ReductionNFails => "reduction-n-fails",
            Check::RobertsonIrreducible => "robertson-irreducible",
            Check::RobertsonStrongSpanning => "robertson-strong-spanning",
        }
    }

    pub fn run(self, ctx: &CheckContext) -> Result<VerificationReport> {
        let start = Instant::now();
        let mut report = match self {
            Check::BhRandomExposed => bh_random_exposed(ctx),
            Check::CanonicalFormRoundtrip => canonical_form_roundtrip(ctx),
            Check::DnTable => dn_table(ctx),
            Check::Example1Transpose => example1_transpose(ctx),
            Check::Example2Reduction => example2_reduction(ctx),
            Check::PositivitySample => positivity_sample(ctx),
            Check::Prop3Robertson60 => prop3_robertson_60(ctx),
            Check::ReductionNFails => reduction_n_fails(ctx),
            Check::RobertsonIrreducible => robertson_irreducible(ctx),
            Check::RobertsonStrongSpanning => robertson_strong_spanning(ctx),
        }?;
        if ctx.timing {
            report.runtime_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(report)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

/// Records a span run under `prefix`; flags the report when the run was cut short.
fn record_span(b: &mut ReportBuilder, prefix: &str, r: &SpanReport, expected_dim: Expected) {
    b.expect(format!("{prefix}_dim"), r.achieved_dim, expected_dim)
        .expect(format!("{prefix}_saturated"), r.saturated, Expected::eq(true))
        .measure(format!("{prefix}_samples"), r.samples_used);
    if !r.saturated {
        b.budget_limited();
    }
}

fn example1_transpose(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("example1-transpose");
    let tol = Tolerances::<f64>::default().rank;
    let corrected = ReferenceFamily::TransposeSix.vectors::<f64>();
    let printed = ReferenceFamily::TransposeSixPrinted.vectors::<f64>();
    b.expect("family_rank", family_rank(&corrected, tol)?, Expected::eq(6))
        .measure("printed_family_rank", family_rank(&printed, tol)?);
    // the tabulated sixth pair, checked against the kernel condition
    let tau = transpose_map::<f64>(2)?;
    let (x6, y6) = &ReferenceFamily::TransposeSixPrinted.pairs::<f64>()[5];
    let (x6, y6) = (normalized(x6).expect("nonzero"), normalized(y6).expect("nonzero"));
    b.measure(
        "printed_y6_kernel_residual",
        norm(&tau.apply_to_projector(&x6)?.matvec(&y6)?),
    );
    let r = estimate_n_dim(&transpose_map(2)?, &ctx.config())?;
    record_span(&mut b, "n_span", &r, Expected::eq(n_target(2)));
    Ok(b.finish())
}

fn example2_reduction(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("example2-reduction");
    let tol = Tolerances::<f64>::default().rank;
    let family = ReferenceFamily::ReductionSix.vectors::<f64>();
    b.expect("family_rank", family_rank(&family, tol)?, Expected::eq(6));
    let r2 = reduction_map(2)?;
    let n = estimate_n_dim(&r2, &ctx.config())?;
    record_span(&mut b, "n_span", &n, Expected::eq(n_target(2)));
    let m = estimate_m_dim(&r2, &ctx.config())?;
    record_span(&mut b, "m_span", &m, Expected::eq(reduction_m_dim(2)));
    Ok(b.finish())
}

fn prop3_robertson_60(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("prop3-robertson-60");
    let family = ReferenceFamily::RobertsonSixty.vectors::<f64>();
    b.measure("family_size", family.len()).expect(
        "family_rank",
        family_rank(&family, Tolerances::<f64>::default().rank)?,
        Expected::eq(60),
    );
    Ok(b.finish())
}

fn robertson_irreducible(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("robertson-irreducible");
    let tol = Tolerances::<f64>::default().rank;
    let c = commutant_of_range(&robertson_map::<f64>(), tol)?;
    b.expect("commutant_dim", c.dim, Expected::eq(1))
        .expect("contains_identity", c.contains_identity, Expected::eq(true))
        .expect("commutator_residual", c.max_residual, Expected::Le(1e-10));
    Ok(b.finish())
}

fn robertson_strong_spanning(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("robertson-strong-spanning");
    let phi = robertson_map::<f64>();
    b.expect("unitality_deviation", phi.unitality_deviation(), Expected::Le(1e-12));
    let r = estimate_n_dim(&phi, &ctx.config())?;
    record_span(&mut b, "n_span", &r, Expected::eq(n_target(4)));
    Ok(b.finish())
}

fn random_breuer_hall(n: usize, seed: u64) -> Result<MapRep> {
    let u = random_antisymmetric_unitary::<f64, _>(&mut seeded_rng(seed), n)?;
    breuer_hall(&u)
}

fn bh_random_exposed(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("bh-random-exposed");
    let tol = Tolerances::<f64>::default().rank;
    for n in ctx.dims(&[4]) {
        let phi = random_breuer_hall(n, ctx.seed)?;
        b.expect(format!("n{n}_irreducible"), is_irreducible(&phi, tol)?, Expected::eq(true))
            .expect(format!("n{n}_unitality_deviation"), phi.unitality_deviation(), Expected::Le(1e-12));
        let r = estimate_n_dim(&phi, &ctx.config())?;
        record_span(&mut b, &format!("n{n}_n_span"), &r, Expected::eq(n_target(n)));
    }
    Ok(b.finish())
}

fn reduction_n_fails(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("reduction-n-fails");
    for n in ctx.dims(&[3]) {
        let r = estimate_n_dim(&reduction_map(n)?, &ctx.config())?;
        b.measure(format!("n{n}_target"), n_target(n))
            .expect(format!("n{n}_below_target"), r.achieved_dim < n_target(n), Expected::eq(true));
        record_span(&mut b, &format!("n{n}_n_span"), &r, Expected::eq(reduction_n_dim(n)));
    }
    Ok(b.finish())
}

fn dn_table(ctx: &CheckContext) -> Result<VerificationReport> {
    let mut b = ctx.builder("dn-table");
    let mut rows = Vec::new();
    for n in ctx.dims(&[4, 6, 8]) {
        let r = estimate_n_dim(&random_breuer_hall(n, ctx.seed)?, &ctx.config())?;
        b.measure(format!("n{n}_bound"), dn_bound(n));
        record_span(&mut b, &format!("n{n}"), &r, Expected::eq(dn_formula(n)));
        rows.push(vec![json!(n), json!(dn_formula(n)), json!(dn_bound(n)), json!(r.achieved_dim)]);
    }
    b.table(Table {
        header: ["n", "Dn", "bound", "measured"].map(String::from).to_vec(),
        rows,
    });
    Ok(b.finish())
}

fn canonical_form_roundtrip(ctx: &CheckContext) -> Result<VerificationReport> {
    const SAMPLES: usize = 100;
    let mut b = ctx.builder("canonical-form-roundtrip");
    b.tolerance("reconstruction", 1e-8)
        .tolerance("orthogonality", 1e-10)
        .tolerance("pairing", 1e-8);
    let mut rng = seeded_rng(ctx.seed);
    for n in ctx.dims(&[4, 6, 8]) {
        let (mut recon, mut orth, mut real, mut pair, mut input) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for _ in 0..SAMPLES {
            let u = random_antisymmetric_unitary::<f64, _>(&mut rng, n)?;
            input = input
                .max(antisymmetry_residual(u.matrix()))
                .max(unitarity_residual(u.matrix()));
            let form = canonical_decompose(&u, 1e-8)?;
            recon = recon.max(form.reconstruct().max_abs_diff(u.matrix()));
            orth = orth.max(form.orthogonality_residual());
            real = real.max(form.realness_residual());
            for p in eigenphase_pairs(&u)? {
                pair = pair.max(p.residual);
            }
        }
        b.measure(format!("n{n}_samples"), SAMPLES)
            .expect(format!("n{n}_input_residual"), input, Expected::Le(1e-12))
            .expect(format!("n{n}_reconstruction_residual"), recon, Expected::Le(1e-8))
            .expect(format!("n{n}_orthogonality_residual"), orth, Expected::Le(1e-10))
            .expect(format!("n{n}_realness_residual"), real, Expected::Le(0.0))
            .expect(format!("n{n}_pairing_residual"), pair, Expected::Le(1e-8));
    }
    Ok(b.finish())
}

fn positivity_sample(ctx: &CheckContext) -> Result<VerificationReport> {
    const TRIALS: usize = 10_000;
    const TOL: f64 = 1e-10;
    let mut b = ctx.builder("positivity-sample");
    b.tolerance("positivity", TOL);
    for n in ctx.dims(&[4, 6]) {
        let phi = random_breuer_hall(n, ctx.seed)?;
        let s = positivity_sample_test(&phi, TRIALS, ctx.seed, TOL)?;
        b.measure(format!("n{n}_trials"), TRIALS)
            .expect(format!("n{n}_min_value"), s.min_value, Expected::Ge(-TOL));
    }
    let negation = LinearMap::from_fn("negation", 4, |x| x.scale_real(-1.0));
    let s = positivity_sample_test(&negation, 10, ctx.seed, TOL)?;
    b.expect(
        "negation_first_violation",
        s.first_violation.map_or(json!(null), |k| json!(k)),
        Expected::Le(10.0),
    );
    Ok(b.finish())
}
