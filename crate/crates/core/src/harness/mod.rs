//! Executable transfer results over catalogs of amalgamation instances.
//!
//! Each clause is a hypothesis predicate and a conclusion predicate over
//! lazily computed [`InstanceFacts`]; a sweep evaluates a clause on every
//! instance and aggregates a [`Verdict`].

pub mod catalog;
pub mod examples;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::amalgamation::{
    distinguished_ideals, f_image_plus_j, hypothesis_report, AmalgamationInstance, HypothesisReport,
};
use crate::error::{Error, Result};
use crate::properties::{
    is_arithmetical, is_field, is_gaussian, is_local, is_prufer, is_reduced,
    is_total_quotient_ring,
};
use crate::ring::{HomExpr, Limits, Ring};

pub use catalog::{build_catalog, Catalog, CatalogParams};
pub use examples::{reproduce_example, reproduce_examples, ExampleReport, ExampleStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClauseId {
    /// `R` local iff `A` local and `J ⊆ Rad(B)`.
    Locality,
    /// `R` Gaussian implies `A` and `f(A) + J` Gaussian.
    GaussianDescends,
    /// With `J² = 0`: `R` Gaussian iff `A` Gaussian and `f(a)J = f(a)²J`.
    SquareZero,
    /// `f` injective, `f(A) ∩ J = 0`: `R` Gaussian iff `f(A) + J` is.
    InjectiveDisjoint,
    /// `f` injective, `f(A) ∩ J != 0`, `A` reduced.
    InjectiveMeeting,
    /// `f` not injective, `J ∩ Nilp(B) = 0`, `A` reduced: `R` not Gaussian.
    NonInjectiveNilFree,
    /// `f` not injective, `J ∩ Nilp(B) != 0`, `A` reduced.
    NonInjectiveNilMeeting,
    /// `A ⋈ I` Gaussian iff `A` Gaussian, `I² = 0`, `aI = a²I` on `m`.
    Duplication,
    /// Local total quotient ring transfer, injective `f` meeting `J`.
    QuotientRingInjective,
    /// Local total quotient ring transfer, non-injective `f`.
    QuotientRingNonInjective,
    /// Arithmetical implies Gaussian implies Prüfer.
    Chain,
}

impl ClauseId {
    pub const ALL: [ClauseId; 11] = [
        ClauseId::Locality,
        ClauseId::GaussianDescends,
        ClauseId::SquareZero,
        ClauseId::InjectiveDisjoint,
        ClauseId::InjectiveMeeting,
        ClauseId::NonInjectiveNilFree,
        ClauseId::NonInjectiveNilMeeting,
        ClauseId::Duplication,
        ClauseId::QuotientRingInjective,
        ClauseId::QuotientRingNonInjective,
        ClauseId::Chain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClauseId::Locality => "lemma-2.2",
            ClauseId::GaussianDescends => "thm-2.1:1",
            ClauseId::SquareZero => "thm-2.1:2",
            ClauseId::InjectiveDisjoint => "thm-2.1:3c1",
            ClauseId::InjectiveMeeting => "thm-2.1:3c2",
            ClauseId::NonInjectiveNilFree => "thm-2.1:4c1",
            ClauseId::NonInjectiveNilMeeting => "thm-2.1:4c2",
            ClauseId::Duplication => "cor-2.3",
            ClauseId::QuotientRingInjective => "prop-2.8:1",
            ClauseId::QuotientRingNonInjective => "prop-2.8:2",
            ClauseId::Chain => "chain",
        }
    }

    /// Clauses whose hypotheses include a reduced local `A`; over finite
    /// rings that forces `A` to be a field and the hypotheses to be empty.
    pub fn needs_reduced_local(self) -> bool {
        matches!(
            self,
            ClauseId::InjectiveMeeting | ClauseId::NonInjectiveNilFree | ClauseId::NonInjectiveNilMeeting
        )
    }
}

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClauseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClauseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown clause `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Verified,
    Vacuous,
    HypothesesUnmet,
    Violation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Vacuous => "vacuous",
            Status::HypothesesUnmet => "hypotheses-unmet",
            Status::Violation => "violation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub clause: ClauseId,
    pub status: Status,
    /// Instances (or rings, for the chain) examined.
    pub checked: usize,
    /// Those meeting the clause hypotheses.
    pub applicable: usize,
    /// Applicable cases split by the truth of the clause's right-hand side.
    pub rhs_true: usize,
    pub rhs_false: usize,
    /// First violating case: its label and the offending values.
    pub witness: Option<String>,
    pub reason: Option<String>,
}

/// Facts about one instance, computed on first use.
pub struct InstanceFacts<'a> {
    pub inst: &'a AmalgamationInstance,
    limits: Limits,
    hyp: OnceLock<HypothesisReport>,
    r_local: OnceLock<bool>,
    r_gaussian: OnceLock<Result<bool>>,
    a_gaussian: OnceLock<Result<bool>>,
    image_gaussian: OnceLock<Result<bool>>,
    r_tqr: OnceLock<bool>,
    r_prufer: OnceLock<Result<bool>>,
}

impl<'a> InstanceFacts<'a> {
    pub fn new(inst: &'a AmalgamationInstance, limits: &Limits) -> Self {
        InstanceFacts {
            inst,
            limits: *limits,
            hyp: OnceLock::new(),
            r_local: OnceLock::new(),
            r_gaussian: OnceLock::new(),
            a_gaussian: OnceLock::new(),
            image_gaussian: OnceLock::new(),
            r_tqr: OnceLock::new(),
            r_prufer: OnceLock::new(),
        }
    }

    pub fn hyp(&self) -> &HypothesisReport {
        self.hyp.get_or_init(|| hypothesis_report(self.inst))
    }

    pub fn r_local(&self) -> bool {
        *self.r_local.get_or_init(|| is_local(&self.inst.ring).is_some())
    }

    pub fn r_gaussian(&self) -> Result<bool> {
        self.r_gaussian
            .get_or_init(|| Ok(is_gaussian(&self.inst.ring)?.holds()))
            .clone()
    }

    pub fn a_gaussian(&self) -> Result<bool> {
        self.a_gaussian
            .get_or_init(|| Ok(is_gaussian(&self.inst.a)?.holds()))
            .clone()
    }

    /// Whether `f(A) + J` is Gaussian.
    pub fn image_gaussian(&self) -> Result<bool> {
        self.image_gaussian
            .get_or_init(|| {
                let (sub, _) = f_image_plus_j(&self.inst.f, &self.inst.j)?;
                Ok(is_gaussian(&sub)?.holds())
            })
            .clone()
    }

    pub fn r_total_quotient_ring(&self) -> bool {
        *self.r_tqr.get_or_init(|| is_total_quotient_ring(&self.inst.ring))
    }

    pub fn r_prufer(&self) -> Result<bool> {
        self.r_prufer
            .get_or_init(|| Ok(is_prufer(&self.inst.ring, &self.limits)?.outcome.holds()))
            .clone()
    }

    pub fn is_duplication(&self) -> bool {
        self.inst.f.expr() == Some(&HomExpr::Id) && self.inst.a.id() == self.inst.b.id()
    }

    /// The Gaussian criterion's right-hand side: `A` Gaussian, `J² = 0`,
    /// and `f(a)J = f(a)²J` for all `a ∈ m`.
    fn gaussian_criterion(&self) -> Result<bool> {
        let h = self.hyp();
        Ok(self.a_gaussian()?
            && h.j_squared_zero.holds()
            && h.cond_faj.as_ref().is_some_and(|c| c.holds()))
    }
}

/// Outcome of one clause on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub holds: bool,
    pub rhs: bool,
    pub detail: String,
}

fn iff(lhs_name: &str, lhs: bool, rhs: bool) -> Evaluation {
    Evaluation {
        holds: lhs == rhs,
        rhs,
        detail: format!("{lhs_name}={lhs} rhs={rhs}"),
    }
}

/// Hypothesis predicate of an instance clause.
pub fn hypothesis(clause: ClauseId, x: &InstanceFacts) -> bool {
    let h = x.hyp();
    let local = h.local_setting();
    let a_tqr = || is_total_quotient_ring(&x.inst.a);
    let a_reduced = h.a_reduced.holds();
    match clause {
        ClauseId::Locality => h.j_proper,
        ClauseId::GaussianDescends => local,
        ClauseId::SquareZero => local && h.j_squared_zero.holds(),
        ClauseId::InjectiveDisjoint => local && h.f_injective.holds() && h.fa_meet_j_zero.holds(),
        ClauseId::InjectiveMeeting => {
            local && h.f_injective.holds() && !h.fa_meet_j_zero.holds() && a_reduced
        }
        ClauseId::NonInjectiveNilFree => {
            local && !h.f_injective.holds() && h.j_meet_nilp_b_zero.holds() && a_reduced
        }
        ClauseId::NonInjectiveNilMeeting => {
            local && !h.f_injective.holds() && !h.j_meet_nilp_b_zero.holds() && a_reduced
        }
        ClauseId::Duplication => {
            x.is_duplication() && h.a_local.is_some() && h.j_proper && x.inst.a.size() <= 16
        }
        ClauseId::QuotientRingInjective | ClauseId::QuotientRingNonInjective => {
            let injective = clause == ClauseId::QuotientRingInjective;
            h.a_local.is_some()
                && h.j_proper
                && h.j_in_rad_b.holds()
                && h.j_in_zb.holds()
                && h.f_injective.holds() == injective
                && (!injective || !h.fa_meet_j_zero.holds())
                && a_tqr()
        }
        ClauseId::Chain => false,
    }
}

/// Conclusion predicate of an instance clause; call only when the
/// hypothesis holds.
pub fn conclusion(clause: ClauseId, x: &InstanceFacts) -> Result<Evaluation> {
    let h = x.hyp();
    Ok(match clause {
        ClauseId::Locality => iff(
            "R_local",
            x.r_local(),
            h.a_local.is_some() && h.j_in_rad_b.holds(),
        ),
        ClauseId::GaussianDescends => {
            let r = x.r_gaussian()?;
            let rhs = x.a_gaussian()? && x.image_gaussian()?;
            Evaluation {
                holds: !r || rhs,
                rhs,
                detail: format!("R_gaussian={r} A_and_image_gaussian={rhs}"),
            }
        }
        ClauseId::SquareZero => {
            let rhs = x.a_gaussian()? && h.cond_faj.as_ref().is_some_and(|c| c.holds());
            iff("R_gaussian", x.r_gaussian()?, rhs)
        }
        ClauseId::InjectiveDisjoint => {
            let mut e = iff("R_gaussian", x.r_gaussian()?, x.image_gaussian()?);
            let (sub, _) = f_image_plus_j(&x.inst.f, &x.inst.j)?;
            let bijective = x.inst.p_b.is_injective()
                && x.inst.p_b.image().count_ones(..) == sub.size();
            if !bijective {
                e.holds = false;
                e.detail.push_str(" p_B_bijective=false");
            }
            e
        }
        ClauseId::InjectiveMeeting | ClauseId::NonInjectiveNilMeeting | ClauseId::Duplication => {
            iff("R_gaussian", x.r_gaussian()?, x.gaussian_criterion()?)
        }
        ClauseId::NonInjectiveNilFree => {
            let r = x.r_gaussian()?;
            Evaluation {
                holds: !r,
                rhs: !r,
                detail: format!("R_gaussian={r}"),
            }
        }
        ClauseId::QuotientRingInjective | ClauseId::QuotientRingNonInjective => {
            let local = x.r_local();
            let expected_max = distinguished_ideals(x.inst)?.1;
            let max_ok = is_local(&x.inst.ring).as_ref() == Some(&expected_max);
            let tqr = x.r_total_quotient_ring();
            let prufer = x.r_prufer()?;
            let ok = local && max_ok && tqr && prufer;
            Evaluation {
                holds: ok,
                rhs: ok,
                detail: format!(
                    "R_local={local} max_is_m_join_J={max_ok} R_total_quotient_ring={tqr} R_prufer={prufer}"
                ),
            }
        }
        ClauseId::Chain => {
            return Err(Error::InvalidArgument(
                "the chain clause ranges over rings, not instances".into(),
            ))
        }
    })
}

/// Evaluates `clause` on one instance: `None` when the hypotheses fail.
pub fn evaluate(clause: ClauseId, x: &InstanceFacts) -> Result<Option<Evaluation>> {
    if hypothesis(clause, x) {
        conclusion(clause, x).map(Some)
    } else {
        Ok(None)
    }
}

/// Checks that every local reduced ring among `rings` is a field.
/// Returns the number of local reduced rings examined, or the label of a
/// counterexample.
pub fn reduced_local_rings_are_fields(rings: &[Ring]) -> std::result::Result<usize, String> {
    let mut count = 0;
    for r in rings {
        if is_reduced(r) && is_local(r).is_some() {
            if !is_field(r) {
                return Err(r.label().to_string());
            }
            count += 1;
        }
    }
    Ok(count)
}

pub const VACUITY_REASON: &str = "finite reduced local ring is a field";

/// Facts for a batch of instances, shared across clauses.
pub struct Sweep<'a> {
    facts: Vec<InstanceFacts<'a>>,
    /// Rings examined by the vacuity argument.
    rings: Vec<Ring>,
}

impl<'a> Sweep<'a> {
    pub fn new(instances: &'a [AmalgamationInstance], extra_rings: &[Ring], limits: &Limits) -> Self {
        let mut seen = BTreeSet::new();
        let mut rings = Vec::new();
        for r in extra_rings.iter().chain(instances.iter().map(|i| &i.a)) {
            if seen.insert(r.label().to_string()) {
                rings.push(r.clone());
            }
        }
        Sweep {
            facts: instances.iter().map(|i| InstanceFacts::new(i, limits)).collect(),
            rings,
        }
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn facts(&self) -> &[InstanceFacts<'a>] {
        &self.facts
    }

    pub fn verify(&self, clause: ClauseId) -> Result<Verdict> {
        if clause == ClauseId::Chain {
            return implication_chain(&self.rings, &self.facts.first().map_or(Limits::default(), |f| f.limits));
        }
        let evals: Vec<Result<Option<Evaluation>>> =
            self.facts.par_iter().map(|x| evaluate(clause, x)).collect();
        let mut verdict = Verdict {
            clause,
            status: Status::Verified,
            checked: self.facts.len(),
            applicable: 0,
            rhs_true: 0,
            rhs_false: 0,
            witness: None,
            reason: None,
        };
        let mut first_violation = None;
        for (k, e) in evals.into_iter().enumerate() {
            let Some(e) = e? else { continue };
            verdict.applicable += 1;
            if e.rhs {
                verdict.rhs_true += 1;
            } else {
                verdict.rhs_false += 1;
            }
            if !e.holds && first_violation.is_none() {
                first_violation = Some((k, e));
            }
        }
        if let Some((k, e)) = first_violation {
            // Re-derive from scratch so the witness does not rest on cached facts.
            let fresh = InstanceFacts::new(self.facts[k].inst, &self.facts[k].limits);
            if evaluate(clause, &fresh)?.map(|r| r.holds) != Some(false) {
                return Err(Error::CrossCheck(format!(
                    "{clause}: violation on {} does not reproduce",
                    self.facts[k].inst.label
                )));
            }
            verdict.status = Status::Violation;
            verdict.witness = Some(format!("{}: {}", self.facts[k].inst.label, e.detail));
        } else if verdict.applicable == 0 {
            verdict.status = Status::HypothesesUnmet;
            verdict.reason = Some("no instance meets the hypotheses".into());
            if clause.needs_reduced_local() {
                match reduced_local_rings_are_fields(&self.rings) {
                    Ok(n) => {
                        verdict.status = Status::Vacuous;
                        verdict.reason = Some(format!(
                            "{VACUITY_REASON}: {n} local reduced rings checked, all fields; \
                             no instance meets the hypotheses"
                        ));
                    }
                    Err(label) => {
                        verdict.reason = Some(format!("local reduced non-field found: {label}"));
                    }
                }
            }
        }
        Ok(verdict)
    }
}

/// `arithmetical ⇒ Gaussian ⇒ Prüfer` on every ring.
pub fn implication_chain(rings: &[Ring], limits: &Limits) -> Result<Verdict> {
    let rows: Vec<Result<(bool, bool, bool)>> = rings
        .par_iter()
        .map(|r| {
            Ok((
                is_arithmetical(r, limits)?.outcome.holds(),
                is_gaussian(r)?.holds(),
                is_prufer(r, limits)?.outcome.holds(),
            ))
        })
        .collect();
    let mut verdict = Verdict {
        clause: ClauseId::Chain,
        status: Status::Verified,
        checked: rings.len(),
        applicable: rings.len(),
        rhs_true: 0,
        rhs_false: 0,
        witness: None,
        reason: None,
    };
    for (r, row) in rings.iter().zip(rows) {
        let (a, g, p) = row?;
        let ok = (!a || g) && (!g || p);
        if ok {
            verdict.rhs_true += 1;
        } else {
            verdict.rhs_false += 1;
            if verdict.witness.is_none() {
                verdict.status = Status::Violation;
                verdict.witness = Some(format!(
                    "{}: arithmetical={a} gaussian={g} prufer={p}",
                    r.label()
                ));
            }
        }
    }
    if rings.is_empty() {
        verdict.status = Status::HypothesesUnmet;
        verdict.reason = Some("no rings".into());
    }
    Ok(verdict)
}

/// Witnesses that the implications do not reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub rings_searched: usize,
    pub gaussian_not_arithmetical: Option<String>,
    pub prufer_not_gaussian: Option<String>,
}

/// First ring, in order, for each non-reversal witness. Stops once both
/// are found; `rings_searched` counts the rings examined.
pub fn counterexample_search(rings: &[Ring], limits: &Limits) -> Result<SearchReport> {
    let mut report = SearchReport {
        rings_searched: 0,
        gaussian_not_arithmetical: None,
        prufer_not_gaussian: None,
    };
    for r in rings {
        if report.gaussian_not_arithmetical.is_some() && report.prufer_not_gaussian.is_some() {
            break;
        }
        report.rings_searched += 1;
        let g = is_gaussian(r)?.holds();
        if g && report.gaussian_not_arithmetical.is_none() && !is_arithmetical(r, limits)?.outcome.holds() {
            report.gaussian_not_arithmetical = Some(r.label().to_string());
        }
        if !g && report.prufer_not_gaussian.is_none() && is_prufer(r, limits)?.outcome.holds() {
            report.prufer_not_gaussian = Some(r.label().to_string());
        }
    }
    Ok(report)
}

/// Everything the `suite` command reports.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub rings: usize,
    pub instances: usize,
    pub verdicts: Vec<Verdict>,
    pub examples: Vec<ExampleReport>,
    pub search: SearchReport,
}

impl SuiteReport {
    pub fn has_violation(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Violation)
            || self.examples.iter().any(|e| e.status == ExampleStatus::Failed)
    }
}

pub fn run_suite(catalog: &Catalog) -> Result<SuiteReport> {
    let limits = &catalog.params.limits;
    let sweep = Sweep::new(&catalog.instances, &catalog.rings, limits);
    let verdicts = ClauseId::ALL
        .iter()
        .map(|&c| match c {
            ClauseId::Chain => implication_chain(&catalog.rings, limits),
            _ => sweep.verify(c),
        })
        .collect::<Result<Vec<_>>>()?;
    let examples = reproduce_examples(catalog)?;
    let search = counterexample_search(&search_rings(catalog), limits)?;
    Ok(SuiteReport {
        rings: catalog.rings.len(),
        instances: catalog.instances.len(),
        verdicts,
        examples,
        search,
    })
}

/// Catalog rings followed by the amalgamated rings of instances with at
/// most 64 elements, in catalog order, without duplicate labels.
pub fn search_rings(catalog: &Catalog) -> Vec<Ring> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in catalog.rings.iter().chain(catalog.instances.iter().map(|i| &i.ring)) {
        if r.size() <= 64 && seen.insert(r.label().to_string()) {
            out.push(r.clone());
        }
    }
    out
}
