//! Windowed probe of the stability index sigma(R): corpus generation over a
//! fixed ring, per-module detection of the least n with U(Omega^n M) = 0,
//! and cross-checks of the probe evidence against the proved bounds.
//!
//! The probe never reports sigma(R) as a number.  A finite corpus can only
//! produce evidence: a lower bound with a witness module, plus the statement
//! that every sampled module reached U(Omega^n M) = 0 within the window.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{depth_of, matlis_dual, u_total, Depth};
use crate::error::{Error, Result};
use crate::field_linalg::FMatrix;
use crate::polyring::{ModulePresentation, Monomial, Polynomial, RingPresentation};
use crate::resolution::{default_internal_cap, resolution_of_k, syzygy_presentation};
use crate::serieslab::classify;

/// One corpus member with its provenance tag.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub tag: String,
    pub module: ModulePresentation,
}

/// A finite family of modules standing in for "all finitely generated
/// modules" over a fixed ring.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub ring: Arc<RingPresentation>,
    pub entries: Vec<CorpusEntry>,
}

/// Corpus size controls; generation is deterministic for a fixed seed.
#[derive(Debug, Clone)]
pub struct CorpusParams {
    pub monomial_cyclics: usize,
    pub binomial_cyclics: usize,
    pub degree_bound: i64,
    pub seed: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { monomial_cyclics: 6, binomial_cyclics: 4, degree_bound: 2, seed: 0 }
    }
}

/// Default probe window: n_max = edim + 2, homological window n_max + 6.
/// Every bound exercised by the bundled test families lands inside.
pub fn default_probe_params(ring: &RingPresentation) -> (i64, i64) {
    let (edim, _) = ring.ring_numerics();
    let n_max = edim as i64 + 2;
    (n_max, n_max + 6)
}

fn render_ring(ring: &RingPresentation) -> String {
    let gens: Vec<String> =
        ring.ideal_gens.iter().map(|g| g.render(&ring.var_names)).collect();
    format!(
        "F_{}[{}]/({})",
        ring.field.p(),
        ring.var_names.join(","),
        gens.join(", ")
    )
}

/// Deterministic corpus: always k, R, Omega^1 k, and (artinian case) the
/// dual R^v; then monomial cyclics R/(m) in degrevlex order and seeded
/// random binomial cyclics R/(m1 - c*m2).
pub fn corpus_generate(ring: &Arc<RingPresentation>, params: &CorpusParams) -> Result<Corpus> {
    let planned = 4 + params.monomial_cyclics + params.binomial_cyclics;
    if planned > 1000 {
        return Err(Error::Unsupported(format!("corpus of {planned} entries exceeds the 1000 cap")));
    }
    let field = ring.field;
    let v = ring.nvars();
    let k = ModulePresentation::residue_field(ring);
    let free = ModulePresentation::free_rank_one(ring);
    let mut entries = vec![
        CorpusEntry { tag: "k".into(), module: k.clone() },
        CorpusEntry { tag: "R".into(), module: free.clone() },
    ];
    let omega1 = syzygy_presentation(&k, 1, default_internal_cap(ring, 2))?;
    entries.push(CorpusEntry { tag: "syzygy-of-k".into(), module: omega1 });
    if ring.is_artinian() {
        let dual = matlis_dual(&free)?;
        entries.push(CorpusEntry { tag: "matlis-dual-of-R".into(), module: dual.pres });
    }

    // monomial cyclics: standard monomials in degrevlex order, low degree first
    let mut taken = 0usize;
    'mono: for d in 1..=params.degree_bound {
        for m in ring.degree_basis(d) {
            if taken >= params.monomial_cyclics {
                break 'mono;
            }
            let g = Polynomial::monomial(field, 1, m);
            let tag = format!("monomial-cyclic R/({})", g.render(&ring.var_names));
            entries.push(CorpusEntry { tag, module: ModulePresentation::cyclic(ring, &[g])? });
            taken += 1;
        }
    }

    // seeded binomial cyclics
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut made = 0usize;
    let mut attempts = 0usize;
    while made < params.binomial_cyclics && attempts < 50 * params.binomial_cyclics.max(1) {
        attempts += 1;
        let d = rng.gen_range(1..=params.degree_bound.max(1));
        let basis = ring.degree_basis(d);
        if basis.is_empty() {
            continue;
        }
        let m1 = basis[rng.gen_range(0..basis.len())].clone();
        let m2 = basis[rng.gen_range(0..basis.len())].clone();
        let c = rng.gen_range(1..field.p());
        let g = if m1 == m2 {
            Polynomial::monomial(field, 1, m1)
        } else {
            Polynomial::from_terms(field, vec![(1, m1), (field.p() - c, m2)])
        };
        if ring.normal_form(&g).is_zero() {
            continue;
        }
        let tag = format!("binomial-cyclic R/({})", g.render(&ring.var_names));
        entries.push(CorpusEntry { tag, module: ModulePresentation::cyclic(ring, &[g])? });
        made += 1;
    }
    let _ = v;
    Ok(Corpus { ring: Arc::clone(ring), entries })
}

/// The filtration machinery resolves k out to homological degree
/// window + n_max + 1, and Betti numbers can grow exponentially, so the
/// probe budgets the total resolution rank it is willing to pay for and
/// shrinks the homological window accordingly.  Returns the largest usable
/// combined depth, estimated by extrapolating the observed Betti growth.
fn depth_budget(ring: &Arc<RingPresentation>) -> Result<i64> {
    const PROBE_D: i64 = 5;
    const RANK_BUDGET: f64 = 1200.0;
    const DEPTH_CAP: i64 = 24;
    let res = resolution_of_k(ring, PROBE_D, default_internal_cap(ring, PROBE_D))?;
    let ranks: Vec<f64> = (0..=PROBE_D).map(|i| res.rank(i) as f64).collect();
    let last_two = (ranks[PROBE_D as usize - 1], ranks[PROBE_D as usize]);
    let ratio = if last_two.0 > 0.0 { (last_two.1 / last_two.0).max(1.0) } else { 1.0 };
    let mut total: f64 = ranks.iter().sum();
    let mut last = last_two.1;
    let mut d = PROBE_D;
    while d < DEPTH_CAP {
        let next = last * ratio;
        if total + next > RANK_BUDGET {
            break;
        }
        total += next;
        last = next;
        d += 1;
    }
    Ok(d)
}

/// Per-entry probe outcome.  `least_n` is the smallest n <= n_max with
/// U(Omega^n M) = 0 certified within the window (via the equivalence
/// U(Omega^n M) = 0 iff U_n(M) = U(M)); None when the window was exhausted
/// before a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub tag: String,
    pub least_n: Option<i64>,
    pub stabilized: bool,
    /// homological window actually used for this entry (may be smaller than
    /// the requested window when the rank budget forces a cut)
    pub window: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaReport {
    pub ring: String,
    pub n_max: i64,
    pub window: i64,
    pub entries: Vec<EntryReport>,
    /// max of least_n over decided entries; None when nothing was decided
    pub max_least_n: Option<i64>,
    /// tags of entries without a verdict at n_max
    pub exhausted: Vec<String>,
}

impl SigmaReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Human-readable evidence line; deliberately never a value for sigma.
    pub fn evidence(&self) -> String {
        match self.max_least_n {
            Some(a) => {
                let witness = self
                    .entries
                    .iter()
                    .find(|e| e.least_n == Some(a))
                    .map(|e| e.tag.clone())
                    .unwrap_or_default();
                if self.exhausted.is_empty() {
                    format!(
                        "evidence: sigma(R) >= {a} (witness {witness}); all {} sampled modules \
                         satisfied U(Omega^n M)=0 within n <= {}, window {}",
                        self.entries.len(),
                        self.n_max,
                        self.window
                    )
                } else {
                    format!(
                        "evidence: sigma(R) >= {a} (witness {witness}); {} of {} entries \
                         undecided at n_max {}",
                        self.exhausted.len(),
                        self.entries.len(),
                        self.n_max
                    )
                }
            }
            None => format!("no verdicts within n <= {}, window {}", self.n_max, self.window),
        }
    }
}

/// Runs the filtration probe over every corpus entry.  `window` is the
/// homological cutoff handed to the U-filtration machinery.
pub fn sigma_probe(corpus: &Corpus, n_max: i64, window: i64) -> Result<SigmaReport> {
    let budget = depth_budget(&corpus.ring)?;
    let h_eff = window.min((budget - n_max - 1).max(2));
    let mut entries = Vec::new();
    let mut exhausted = Vec::new();
    let mut max_least: Option<i64> = None;
    for e in &corpus.entries {
        let ut = u_total(&e.module, n_max, h_eff)?;
        let least = if ut.stabilized { ut.n_star } else { None };
        match least {
            Some(n) => max_least = Some(max_least.map_or(n, |m| m.max(n))),
            None => exhausted.push(e.tag.clone()),
        }
        entries.push(EntryReport {
            tag: e.tag.clone(),
            least_n: least,
            stabilized: ut.stabilized,
            window: h_eff,
        });
    }
    Ok(SigmaReport {
        ring: render_ring(&corpus.ring),
        n_max,
        window,
        entries,
        max_least_n: max_least,
        exhausted,
    })
}

/// One theorem bound evaluated against probe evidence.  `pass` is None when
/// the bound does not apply or could not be evaluated (reason in `observed`).
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass != Some(false))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn check(name: &str, expected: String, observed: String, pass: Option<bool>) -> BoundCheck {
    BoundCheck { name: name.into(), expected, observed, pass }
}

/// Builds the ring R/(x_i) by setting one variable to zero.  Only a plain
/// variable is supported; general linear forms would need a coordinate
/// change first.
fn quotient_by_variable(
    ring: &RingPresentation,
    var: usize,
) -> Result<Arc<RingPresentation>> {
    let v = ring.nvars();
    let names: Vec<String> = ring
        .var_names
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != var)
        .map(|(_, n)| n.clone())
        .collect();
    let mut gens = Vec::new();
    for g in &ring.ideal_gens {
        let terms: Vec<(u64, Monomial)> = g
            .terms
            .iter()
            .filter(|(_, m)| m.exps[var] == 0)
            .map(|(c, m)| {
                let exps: Vec<u16> = m
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != var)
                    .map(|(_, &e)| e)
                    .collect();
                (*c, Monomial { exps })
            })
            .collect();
        let q = Polynomial::from_terms(ring.field, terms);
        if !q.is_zero() {
            gens.push(q);
        }
    }
    let _ = v;
    RingPresentation::new(ring.field, names, gens)
}

/// Verifies that multiplication by x is injective on every strand R_d for
/// d within the window.
fn nonzerodivisor_within_window(
    ring: &RingPresentation,
    x: &Polynomial,
    window: i64,
) -> Result<bool> {
    let field = ring.field;
    let xd = x.degree().ok_or_else(|| Error::Unsupported("zero element supplied".into()))?;
    for d in 0..=window {
        let src = ring.degree_basis(d);
        if src.is_empty() {
            continue;
        }
        let tgt = ring.degree_basis(d + xd);
        let idx: std::collections::HashMap<&Monomial, usize> =
            tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut cols = Vec::with_capacity(src.len());
        for m in &src {
            let prod = ring.normal_form(&x.mul_term(1, m));
            let mut col = vec![0u64; tgt.len()];
            for (c, mm) in &prod.terms {
                let i = *idx.get(mm).ok_or_else(|| {
                    Error::Inconsistent("normal form outside the strand basis".into())
                })?;
                col[i] = *c;
            }
            cols.push(col);
        }
        let mat = FMatrix::from_cols(field, tgt.len(), &cols);
        if mat.rank() < src.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cross-checks the probe evidence against every applicable proved bound:
/// sigma >= depth + 1; Gorenstein artinian sigma = dim + 1; Golod
/// sigma <= edim; Ext-algebra generation sigma <= s + 1; and the
/// nonzerodivisor descent sigma(R) <= sigma(R/Rx) + 1 when the caller
/// supplies x.  Upper-bound failures indicate implementation bugs.
pub fn bounds_report(
    ring: &Arc<RingPresentation>,
    probe: &SigmaReport,
    nzd: Option<&Polynomial>,
) -> Result<BoundsReport> {
    let mut checks = Vec::new();
    let (edim, dim) = ring.ring_numerics();
    let cls = classify(ring, probe.window)?;
    let max = probe.max_least_n;
    let all_decided = probe.exhausted.is_empty();
    let max_str =
        max.map(|m| m.to_string()).unwrap_or_else(|| "no verdicts".into());

    // sigma >= depth + 1 (lower bound: the corpus can fail to witness it
    // without contradicting the theorem, so a miss is reported as not
    // witnessed rather than as a failure)
    let free = ModulePresentation::free_rank_one(ring);
    match depth_of(&free, probe.window)? {
        Depth::Exact(dep) => {
            let pass = match max {
                Some(m) if all_decided => Some(m >= dep + 1),
                _ => None,
            };
            checks.push(check(
                "sigma >= depth + 1",
                format!("max least-n >= {}", dep + 1),
                format!("max least-n = {max_str}, all decided: {all_decided}"),
                pass,
            ));
        }
        Depth::AtLeast(lo) => {
            checks.push(check(
                "sigma >= depth + 1",
                "depth known exactly".into(),
                format!("only depth >= {lo} certified in the window; skipped"),
                None,
            ));
        }
    }

    // Gorenstein artinian: sigma = dim + 1
    if cls.gorenstein == Some(true) && ring.is_artinian() {
        let pass = max.map(|m| m == dim as i64 + 1);
        checks.push(check(
            "Gorenstein: sigma = dim + 1",
            format!("max least-n = {}", dim as i64 + 1),
            format!("max least-n = {max_str}"),
            pass,
        ));
    }

    // Golod non-regular: sigma <= edim
    if cls.golod_evidence && !cls.regular {
        let pass = max.map(|m| m <= edim as i64).or(Some(false));
        let pass = if all_decided { pass } else { Some(probe.exhausted.is_empty()) };
        checks.push(check(
            "Golod: sigma <= edim",
            format!("every least-n <= {edim}"),
            format!("max least-n = {max_str}, undecided: {}", probe.exhausted.len()),
            pass,
        ));
    }

    // Ext-algebra generation: sigma <= s + 1
    {
        let alg = crate::extalgebra::ext_alg(ring, probe.window)?;
        let er = crate::cohomology::ext_k(&free, probe.window)?;
        match crate::extalgebra::generation_degree(&alg, &er, probe.window)? {
            crate::extalgebra::GenerationVerdict::Generated { s } => {
                let pass = if all_decided {
                    max.map(|m| m <= s + 1)
                } else {
                    Some(false)
                };
                checks.push(check(
                    "generation: sigma <= s + 1",
                    format!("every least-n <= {}", s + 1),
                    format!("s = {s}, max least-n = {max_str}"),
                    pass,
                ));
            }
            crate::extalgebra::GenerationVerdict::NotWithinWindow { .. } => {
                checks.push(check(
                    "generation: sigma <= s + 1",
                    "finite generation degree".into(),
                    "not certified within the window; skipped".into(),
                    None,
                ));
            }
        }
    }

    // nonzerodivisor descent: sigma(R) <= sigma(R/Rx) + 1
    if let Some(x) = nzd {
        let var = match &x.terms[..] {
            [(c, m)] if *c == 1 && m.degree() == 1 => {
                m.exps.iter().position(|&e| e == 1)
            }
            _ => None,
        };
        match var {
            None => {
                checks.push(check(
                    "descent: sigma(R) <= sigma(R/Rx) + 1",
                    "x a plain variable".into(),
                    format!("unsupported element {}; skipped", x.render(&ring.var_names)),
                    None,
                ));
            }
            Some(i) if !nonzerodivisor_within_window(ring, x, probe.window)? => {
                let _ = i;
                checks.push(check(
                    "descent: sigma(R) <= sigma(R/Rx) + 1",
                    "x a nonzerodivisor".into(),
                    format!(
                        "{} is a zerodivisor within the window; skipped",
                        x.render(&ring.var_names)
                    ),
                    None,
                ));
            }
            Some(i) => {
                let q = quotient_by_variable(ring, i)?;
                let corpus = corpus_generate(&q, &CorpusParams::default())?;
                let sub = sigma_probe(&corpus, probe.n_max, probe.window)?;
                let pass = match (max, sub.max_least_n) {
                    (Some(a), Some(b)) if all_decided && sub.exhausted.is_empty() => {
                        Some(a <= b + 1)
                    }
                    _ => None,
                };
                checks.push(check(
                    "descent: sigma(R) <= sigma(R/Rx) + 1",
                    format!("max least-n over R <= (max over {}) + 1", sub.ring),
                    format!(
                        "R: {max_str}; R/Rx: {}",
                        sub.max_least_n
                            .map(|m| m.to_string())
                            .unwrap_or_else(|| "no verdicts".into())
                    ),
                    pass,
                ));
            }
        }
    }

    Ok(BoundsReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hypersurface() -> Arc<RingPresentation> {
        RingPresentation::parse(101, "x", &["x^2"]).unwrap()
    }

    fn golod() -> Arc<RingPresentation> {
        RingPresentation::parse(101, "x y", &["x^2", "x*y", "y^2"]).unwrap()
    }

    #[test]
    fn corpus_core_and_determinism() {
        let r = hypersurface();
        let p = CorpusParams { monomial_cyclics: 0, binomial_cyclics: 0, ..Default::default() };
        let c = corpus_generate(&r, &p).unwrap();
        let tags: Vec<&str> = c.entries.iter().map(|e| e.tag.as_str()).collect();
        assert_eq!(tags, vec!["k", "R", "syzygy-of-k", "matlis-dual-of-R"]);

        let p2 = CorpusParams { seed: 7, ..Default::default() };
        let c1 = corpus_generate(&golod(), &p2).unwrap();
        let c2 = corpus_generate(&golod(), &p2).unwrap();
        let t1: Vec<_> = c1.entries.iter().map(|e| e.tag.clone()).collect();
        let t2: Vec<_> = c2.entries.iter().map(|e| e.tag.clone()).collect();
        assert_eq!(t1, t2);
    }

    #[test]
    fn monomial_cyclics_present_when_requested() {
        let r = golod();
        let p = CorpusParams { monomial_cyclics: 3, binomial_cyclics: 0, ..Default::default() };
        let c = corpus_generate(&r, &p).unwrap();
        let tags: Vec<&str> = c.entries.iter().map(|e| e.tag.as_str()).collect();
        assert!(tags.contains(&"monomial-cyclic R/(x)"));
        assert!(tags.contains(&"monomial-cyclic R/(y)"));
    }

    #[test]
    fn probe_hypersurface_max_is_one() {
        let r = hypersurface();
        let c = corpus_generate(&r, &CorpusParams::default()).unwrap();
        let (n_max, window) = default_probe_params(&r);
        let rep = sigma_probe(&c, n_max, window).unwrap();
        assert!(rep.exhausted.is_empty(), "{:?}", rep.exhausted);
        assert_eq!(rep.max_least_n, Some(1));
        let free_entry = rep.entries.iter().find(|e| e.tag == "R").unwrap();
        assert!(free_entry.least_n.unwrap() >= 1);
    }

    #[test]
    fn probe_golod_respects_edim_bound() {
        let r = golod();
        let p = CorpusParams { monomial_cyclics: 2, binomial_cyclics: 1, ..Default::default() };
        let c = corpus_generate(&r, &p).unwrap();
        let rep = sigma_probe(&c, 3, 4).unwrap();
        assert!(rep.exhausted.is_empty(), "{:?}", rep.exhausted);
        assert!(rep.max_least_n.unwrap() <= 2, "{:?}", rep);
    }

    #[test]
    fn bounds_hypersurface() {
        let r = hypersurface();
        let c = corpus_generate(&r, &CorpusParams::default()).unwrap();
        let (n_max, window) = default_probe_params(&r);
        let rep = sigma_probe(&c, n_max, window).unwrap();
        let bounds = bounds_report(&r, &rep, None).unwrap();
        assert!(bounds.all_pass(), "{:?}", bounds);
        assert!(bounds
            .checks
            .iter()
            .any(|b| b.name.starts_with("Gorenstein") && b.pass == Some(true)));
    }

    #[test]
    fn bounds_golod() {
        let r = golod();
        let p = CorpusParams { monomial_cyclics: 2, binomial_cyclics: 1, ..Default::default() };
        let c = corpus_generate(&r, &p).unwrap();
        let rep = sigma_probe(&c, 3, 4).unwrap();
        let bounds = bounds_report(&r, &rep, None).unwrap();
        assert!(bounds.all_pass(), "{:?}", bounds);
        assert!(bounds
            .checks
            .iter()
            .any(|b| b.name.starts_with("Golod") && b.pass == Some(true)));
    }

    #[test]
    fn descent_along_nonzerodivisor() {
        let r = RingPresentation::parse(101, "x y", &["x^2"]).unwrap();
        let p = CorpusParams { monomial_cyclics: 2, binomial_cyclics: 0, ..Default::default() };
        let c = corpus_generate(&r, &p).unwrap();
        let rep = sigma_probe(&c, 3, 5).unwrap();
        let y = Polynomial::parse(r.field, &r.var_names, "y").unwrap();
        let bounds = bounds_report(&r, &rep, Some(&y)).unwrap();
        assert!(bounds.all_pass(), "{:?}", bounds);
        let descent =
            bounds.checks.iter().find(|b| b.name.starts_with("descent")).unwrap();
        assert_eq!(descent.pass, Some(true), "{:?}", descent);
    }

    #[test]
    fn descent_skips_zerodivisor() {
        let r = hypersurface();
        let c = corpus_generate(&r, &CorpusParams::default()).unwrap();
        let (n_max, window) = default_probe_params(&r);
        let rep = sigma_probe(&c, n_max, window).unwrap();
        let x = Polynomial::parse(r.field, &r.var_names, "x").unwrap();
        let bounds = bounds_report(&r, &rep, Some(&x)).unwrap();
        let descent =
            bounds.checks.iter().find(|b| b.name.starts_with("descent")).unwrap();
        assert_eq!(descent.pass, None);
        assert!(descent.observed.contains("zerodivisor"));
    }
}
