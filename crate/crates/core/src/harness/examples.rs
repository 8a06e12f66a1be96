//! Reproduction of the worked examples on finite data.
//!
//! Every stated hypothesis is recomputed. When a finite surrogate fails one,
//! the catalog is searched for an instance meeting all of them; when none
//! exists the example is inconclusive.

use std::fmt;

use crate::amalgamation::{amalgamate, duplication, AmalgamationInstance};
use crate::error::Result;
use crate::ideal::{ideal_generated, ideal_power, ideal_product, Ideal};
use crate::lattice::{nilradical, zero_divisors};
use crate::module::{module_quotient, ring_as_module, trivial_extension, vspace_over_residue, ModuleEncoding};
use crate::properties::{
    is_arithmetical, is_field, is_gaussian, is_local, is_prufer, is_total_quotient_ring,
};
use crate::ring::{quotient, truncated_poly_algebra, zmod, Limits, Ring};

use super::{Catalog, InstanceFacts};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleStatus {
    /// All hypotheses and conclusions confirmed on the constructed data.
    Reproduced,
    /// The surrogate failed a hypothesis; a catalog instance meeting all of
    /// them confirmed the conclusions instead.
    Replaced,
    OutOfScope,
    /// Neither the surrogate nor any catalog instance meets the hypotheses.
    Inconclusive,
    /// A conclusion failed on data meeting every hypothesis.
    Failed,
}

impl fmt::Display for ExampleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleStatus::Reproduced => "reproduced",
            ExampleStatus::Replaced => "replaced",
            ExampleStatus::OutOfScope => "out-of-scope",
            ExampleStatus::Inconclusive => "inconclusive",
            ExampleStatus::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: bool,
    pub actual: bool,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport {
    pub id: &'static str,
    pub status: ExampleStatus,
    /// Label of the instance the conclusions were checked on.
    pub instance: String,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
    pub note: Option<String>,
}

pub const EXAMPLE_IDS: [&str; 7] = ["2.4", "2.5", "2.6", "2.7", "2.9", "2.10", "2.11"];

fn check(name: &str, expected: bool, actual: bool) -> Check {
    Check {
        name: name.to_string(),
        expected,
        actual,
    }
}

fn lim() -> Limits {
    Limits::default()
}

fn gaussian(r: &Ring) -> Result<bool> {
    Ok(is_gaussian(r)?.holds())
}

fn arithmetical(r: &Ring) -> Result<bool> {
    Ok(is_arithmetical(r, &lim())?.outcome.holds())
}

fn prufer(r: &Ring) -> Result<bool> {
    Ok(is_prufer(r, &lim())?.outcome.holds())
}

/// Common instance-level hypotheses, read off the hypothesis report.
struct Hyp<'a>(&'a InstanceFacts<'a>);

impl Hyp<'_> {
    fn a_local(&self) -> Check {
        check("A local", true, self.0.hyp().a_local.is_some())
    }
    fn j_proper(&self) -> Check {
        check("J proper", true, self.0.hyp().j_proper)
    }
    fn j_nonzero(&self) -> Check {
        check("J nonzero", true, self.0.hyp().j_nonzero)
    }
    fn j_in_rad(&self) -> Check {
        check("J in Rad(B)", true, self.0.hyp().j_in_rad_b.holds())
    }
    fn j_in_zb(&self) -> Check {
        check("J in Z(B)", true, self.0.hyp().j_in_zb.holds())
    }
    fn injective(&self, expected: bool) -> Check {
        check("f injective", expected, self.0.hyp().f_injective.holds())
    }
    fn j_square_zero(&self, expected: bool) -> Check {
        check("J^2 = 0", expected, self.0.hyp().j_squared_zero.holds())
    }
    fn cond(&self) -> Check {
        let c = self.0.hyp().cond_faj.as_ref().is_some_and(|c| c.holds());
        check("f(a)J = f(a)^2 J for a in m", true, c)
    }
    fn a_tqr(&self) -> Check {
        check("A total quotient ring", true, is_total_quotient_ring(&self.0.inst.a))
    }
}

fn finish(
    id: &'static str,
    inst: &AmalgamationInstance,
    hypotheses: Vec<Check>,
    conclusions: Vec<Check>,
    note: Option<String>,
) -> ExampleReport {
    let status = if hypotheses.iter().all(Check::passed) {
        if conclusions.iter().all(Check::passed) {
            ExampleStatus::Reproduced
        } else {
            ExampleStatus::Failed
        }
    } else {
        ExampleStatus::Inconclusive
    };
    ExampleReport {
        id,
        status,
        instance: inst.label.clone(),
        hypotheses,
        conclusions,
        note,
    }
}

/// `A ⋉ (A/m²)` for local `A`, with `I = 0 × m/m²`, `B = A'/I`, the
/// projection, and `J = (0 × A/m²)/I`.
fn square_quotient_instance(a0: &Ring) -> Result<AmalgamationInstance> {
    let m = is_local(a0).expect("surrogate base is local");
    let m2 = ideal_power(a0, &m, 2)?;
    let e0 = module_quotient(&ring_as_module(a0), &m2.to_vec())?;
    let ext = trivial_extension(a0, &e0, &lim())?;
    let reps = match e0.encoding() {
        ModuleEncoding::Quotient { reps, .. } => reps.clone(),
        _ => unreachable!("module_quotient builds a quotient module"),
    };
    let ne = e0.size();
    let zero_row = a0.zero() * ne;
    // A coset lies in m/m² exactly when its minimal representative is in m.
    let i = Ideal::new(
        &ext.ring,
        (0..ne).filter(|&k| m.contains(reps[k])).map(|k| zero_row + k),
    )?;
    let (b, proj) = quotient(&ext.ring, &i)?;
    let j = Ideal::new(&b, (0..ne).map(|k| proj.apply(zero_row + k)))?;
    amalgamate(&proj, &j, &lim())
}

fn example_2_4() -> Result<ExampleReport> {
    let a = zmod(16, &lim())?;
    let ext = trivial_extension(&a, &ring_as_module(&a), &lim())?;
    let b = &ext.ring;
    // J = 2A × A.
    let j = Ideal::new(b, b.elements().filter(|x| (x / 16) % 2 == 0))?;
    let inst = amalgamate(&ext.embedding, &j, &lim())?;
    let x = InstanceFacts::new(&inst, &lim());
    let h = Hyp(&x);
    let hypotheses = vec![
        h.a_local(),
        h.injective(true),
        h.j_proper(),
        check("A reduced", false, x.hyp().a_reduced.holds()),
        h.j_square_zero(false),
    ];
    let conclusions = vec![check("R gaussian", false, x.r_gaussian()?)];
    Ok(ExampleReport {
        id: "2.4",
        status: ExampleStatus::OutOfScope,
        instance: inst.label.clone(),
        hypotheses,
        conclusions,
        note: Some(
            "the source ring is an infinite reduced local domain; a finite reduced local ring \
             is a field, so the non-reduced analogue above is reported for reference only"
                .into(),
        ),
    })
}

fn example_2_5() -> Result<ExampleReport> {
    let a = zmod(4, &lim())?;
    let m = is_local(&a).expect("Z/4 is local");
    let e = vspace_over_residue(&a, &m, 1, &lim())?;
    let ext = trivial_extension(&a, &e, &lim())?;
    let b = &ext.ring;
    // J = m × E: generated by (2, 0) and (0, 1).
    let j = ideal_generated(b, &[2 * e.size(), 1])?;
    let inst = amalgamate(&ext.embedding, &j, &lim())?;
    let x = InstanceFacts::new(&inst, &lim());
    let h = Hyp(&x);
    let hypotheses = vec![
        h.a_local(),
        check("A arithmetical", true, arithmetical(&a)?),
        check("A not a field", true, !is_field(&a)),
        check("m^2 = 0", true, ideal_product(&a, &m, &m)?.is_zero()),
        h.injective(true),
        h.j_proper(),
        h.j_in_rad(),
        h.j_square_zero(true),
        h.cond(),
        check("A gaussian", true, x.a_gaussian()?),
    ];
    let conclusions = vec![
        check("R gaussian", true, x.r_gaussian()?),
        check("R arithmetical", false, arithmetical(&inst.ring)?),
    ];
    Ok(finish("2.5", &inst, hypotheses, conclusions, None))
}

fn example_2_6() -> Result<ExampleReport> {
    let a0 = zmod(4, &lim())?;
    let m0 = is_local(&a0).expect("Z/4 is local");
    let a = trivial_extension(&a0, &vspace_over_residue(&a0, &m0, 1, &lim())?, &lim())?.ring;
    let m = is_local(&a).expect("idealization of a local ring is local");
    let ext = trivial_extension(&a, &vspace_over_residue(&a, &m, 1, &lim())?, &lim())?;
    let inst = amalgamate(&ext.embedding, &ext.ideal, &lim())?;
    let x = InstanceFacts::new(&inst, &lim());
    let h = Hyp(&x);
    let (image_size, b_size) = (
        crate::amalgamation::f_image_plus_j(&inst.f, &inst.j)?.0.size(),
        inst.b.size(),
    );
    let hypotheses = vec![
        check("A0 local gaussian", true, is_local(&a0).is_some() && gaussian(&a0)?),
        h.a_local(),
        h.injective(true),
        check("f(A) meet J = 0", true, x.hyp().fa_meet_j_zero.holds()),
        h.j_proper(),
        h.j_in_rad(),
        check("f(A) + J = B", true, image_size == b_size),
        check("B gaussian", true, x.image_gaussian()?),
    ];
    let conclusions = vec![
        check("R gaussian", true, x.r_gaussian()?),
        check("R arithmetical", false, arithmetical(&inst.ring)?),
    ];
    Ok(finish("2.6", &inst, hypotheses, conclusions, None))
}

fn example_2_7_hypotheses(x: &InstanceFacts) -> Result<Vec<Check>> {
    let h = Hyp(x);
    let nil = nilradical(&x.inst.b);
    Ok(vec![
        h.a_local(),
        check("A gaussian", true, x.a_gaussian()?),
        check("A arithmetical", false, arithmetical(&x.inst.a)?),
        h.injective(false),
        h.j_proper(),
        h.j_nonzero(),
        h.j_in_rad(),
        check("J in Nilp(B)", true, x.inst.j.is_subset(&nil)),
        h.j_square_zero(true),
        h.cond(),
    ])
}

fn example_2_7_conclusions(x: &InstanceFacts) -> Result<Vec<Check>> {
    Ok(vec![
        check("R gaussian", true, x.r_gaussian()?),
        check("R arithmetical", false, arithmetical(&x.inst.ring)?),
    ])
}

fn example_2_7(catalog: &Catalog) -> Result<ExampleReport> {
    let k = truncated_poly_algebra(2, 1, 3, &lim())?;
    let mk = is_local(&k).expect("truncated algebra is local");
    let a0 = trivial_extension(&k, &vspace_over_residue(&k, &mk, 2, &lim())?, &lim())?.ring;
    let m = is_local(&a0).expect("idealization of a local ring is local");
    let inst = square_quotient_instance(&a0)?;
    let x = InstanceFacts::new(&inst, &lim());
    let mut hypotheses = vec![
        check("A0 gaussian", true, gaussian(&a0)?),
        check("A0 arithmetical", false, arithmetical(&a0)?),
        check("m^2 != m", true, ideal_power(&a0, &m, 2)? != m),
    ];
    hypotheses.extend(example_2_7_hypotheses(&x)?);
    let conclusions = example_2_7_conclusions(&x)?;
    let report = finish("2.7", &inst, hypotheses, conclusions, None);
    if report.status != ExampleStatus::Inconclusive {
        return Ok(report);
    }
    let failed: Vec<String> = report
        .hypotheses
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.clone())
        .collect();
    let mut witness = String::new();
    if let Some(w) = is_gaussian(&inst.a)?.witness() {
        witness = format!(" (pair {}, {} of A fails the Gaussian condition)", w.lifted.0, w.lifted.1);
    }
    let note = format!(
        "surrogate {} fails: {}{witness}",
        inst.label,
        failed.join(", ")
    );
    replace(catalog, "2.7", note, example_2_7_hypotheses, example_2_7_conclusions)
}

fn replace(
    catalog: &Catalog,
    id: &'static str,
    note: String,
    hypotheses: fn(&InstanceFacts) -> Result<Vec<Check>>,
    conclusions: fn(&InstanceFacts) -> Result<Vec<Check>>,
) -> Result<ExampleReport> {
    let limits = &catalog.params.limits;
    for inst in &catalog.instances {
        let x = InstanceFacts::new(inst, limits);
        // Cheap structural screen before the full hypothesis list.
        let h = x.hyp();
        if h.a_local.is_none() || !h.j_proper || !h.j_nonzero || !h.j_in_rad_b.holds() {
            continue;
        }
        let hyps = hypotheses(&x)?;
        if !hyps.iter().all(Check::passed) {
            continue;
        }
        let concl = conclusions(&x)?;
        let status = if concl.iter().all(Check::passed) {
            ExampleStatus::Replaced
        } else {
            ExampleStatus::Failed
        };
        return Ok(ExampleReport {
            id,
            status,
            instance: inst.label.clone(),
            hypotheses: hyps,
            conclusions: concl,
            note: Some(format!("{note}; replaced by the first catalog instance meeting every hypothesis")),
        });
    }
    Ok(ExampleReport {
        id,
        status: ExampleStatus::Inconclusive,
        instance: String::new(),
        hypotheses: Vec::new(),
        conclusions: Vec::new(),
        note: Some(format!("{note}; no catalog instance meets every hypothesis")),
    })
}

fn total_quotient_conclusions(x: &InstanceFacts) -> Result<Vec<Check>> {
    Ok(vec![
        check("R local", true, x.r_local()),
        check("R total quotient ring", true, x.r_total_quotient_ring()),
        check("R prufer", true, x.r_prufer()?),
        check("R gaussian", false, x.r_gaussian()?),
    ])
}

fn example_2_9() -> Result<ExampleReport> {
    let a = zmod(8, &lim())?;
    let i = ideal_generated(&a, &[2])?;
    let inst = duplication(&a, &i, &lim())?;
    let x = InstanceFacts::new(&inst, &lim());
    let h = Hyp(&x);
    let zd = zero_divisors(&a);
    let hypotheses = vec![
        h.a_local(),
        h.a_tqr(),
        h.j_proper(),
        h.j_square_zero(false),
        check("A meet I != 0", true, !i.is_zero()),
        check("I in Z(A)", true, i.iter().all(|v| zd.contains(&v))),
    ];
    let mut conclusions = total_quotient_conclusions(&x)?;
    conclusions.push(check("R prufer (direct)", true, prufer(&inst.ring)?));
    Ok(finish("2.9", &inst, hypotheses, conclusions, None))
}

fn example_2_10() -> Result<ExampleReport> {
    let a0 = zmod(4, &lim())?;
    let a = trivial_extension(&a0, &ring_as_module(&a0), &lim())?.ring;
    let m = is_local(&a).expect("idealization of a local ring is local");
    let e = vspace_over_residue(&a, &m, 1, &lim())?;
    let ext = trivial_extension(&a, &e, &lim())?;
    let b = &ext.ring;
    // J = m × E.
    let j = Ideal::new(b, b.elements().filter(|x| m.contains(x / e.size())))?;
    let inst = amalgamate(&ext.embedding, &j, &lim())?;
    let x = InstanceFacts::new(&inst, &lim());
    let h = Hyp(&x);
    let hypotheses = vec![
        h.a_local(),
        h.a_tqr(),
        h.injective(true),
        check("f(A) meet J != 0", true, !x.hyp().fa_meet_j_zero.holds()),
        h.j_proper(),
        h.j_in_rad(),
        h.j_in_zb(),
        check("A gaussian", false, x.a_gaussian()?),
    ];
    let conclusions = total_quotient_conclusions(&x)?;
    Ok(finish("2.10", &inst, hypotheses, conclusions, None))
}

fn example_2_11() -> Result<ExampleReport> {
    let a0 = truncated_poly_algebra(2, 2, 3, &lim())?;
    let inst = square_quotient_instance(&a0)?;
    let x = InstanceFacts::new(&inst, &lim());
    let h = Hyp(&x);
    let hypotheses = vec![
        check("A0 gaussian", false, gaussian(&a0)?),
        h.a_local(),
        h.a_tqr(),
        h.injective(false),
        h.j_proper(),
        h.j_nonzero(),
        h.j_in_rad(),
        h.j_in_zb(),
        check("B local", true, is_local(&inst.b).is_some()),
        check("A gaussian", false, x.a_gaussian()?),
    ];
    let conclusions = total_quotient_conclusions(&x)?;
    Ok(finish("2.11", &inst, hypotheses, conclusions, None))
}

pub fn reproduce_example(id: &str, catalog: &Catalog) -> Result<ExampleReport> {
    match id {
        "2.4" => example_2_4(),
        "2.5" => example_2_5(),
        "2.6" => example_2_6(),
        "2.7" => example_2_7(catalog),
        "2.9" => example_2_9(),
        "2.10" => example_2_10(),
        "2.11" => example_2_11(),
        _ => Err(crate::error::Error::InvalidArgument(format!("unknown example `{id}`"))),
    }
}

pub fn reproduce_examples(catalog: &Catalog) -> Result<Vec<ExampleReport>> {
    EXAMPLE_IDS.iter().map(|id| reproduce_example(id, catalog)).collect()
}
