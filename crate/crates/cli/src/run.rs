//! One function per subcommand. Each returns a [`Rendered`] report; the
//! exit code is decided by the report status alone.

use std::collections::HashMap;

use serde_json::{json, Map, Value};

use duality_core::bitset::{subset_masks, BitSet};
use duality_core::caps::Caps;
use duality_core::fo::algebra::{generated_subalgebra, SubAlgebra};
use duality_core::fo::enumerate::enumerate_structures;
use duality_core::fo::formula::{evaluate, parse_fo, FoFormula};
use duality_core::fo::signature::Signature;
use duality_core::fo::space::ModelSpace;
use duality_core::functors::arrow::{f_arrow, f_arrow_at_primes, point_as_filter_map, point_as_ji_map};
use duality_core::functors::erp::{check_lattice_erp, dual_poset_erp, erp_retraction, ErpReport};
use duality_core::functors::fbox::{check_fbox_duality, f_box_quotient, ExpansionMode};
use duality_core::functors::ma::ma_functor;
use duality_core::functors::spaces::{dual_ba, dual_dl, smyth, vietoris};
use duality_core::gamma::pairing::{measure_of, stone_pairing, stone_pairing_gamma};
use duality_core::gamma::prob::{check_rules, parse_prob, prob_sat, rule_universe};
use duality_core::layers::layer::{
    exists_layer, semiring_layer, verify_exists_duality, verify_semiring_duality, DualityReport,
    Layer,
};
use duality_core::modal::tower::ModalTower;
use duality_core::order::boolalg::FinBoolAlg;
use duality_core::order::enumerate::{dist_lattices_up_to, dist_lattices_with_ji_up_to};
use duality_core::order::iso::is_isomorphism;
use duality_core::order::json::{poset_to_dot, PosetJson};
use duality_core::order::lattice::{filters, filters_poset, FinDistLattice};
use duality_core::order::map::{monotone_function_space, LatticeMap};
use duality_core::order::poset::FinPoset;
use duality_core::presented::presentation::PresentedLattice;

use crate::inputs;
use crate::report::{CliError, Rendered, Report};

fn poset_json(p: &FinPoset) -> Value {
    serde_json::to_value(PosetJson::from_poset(p)).expect("poset serializes")
}

fn names_of(p: &FinPoset, s: &BitSet) -> Vec<String> {
    s.iter().map(|i| p.name(i).to_string()).collect()
}

fn usage_phi<T>(r: Result<T, duality_core::fo::FoError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(format!("formula: {e}")))
}

pub fn dual_ba_cmd(input: &str) -> Result<Rendered, CliError> {
    let b = inputs::load_boolalg(input)?;
    let d = dual_ba(&b);
    let mut hat = Map::new();
    if b.len() <= 4096 {
        for e in 0..b.len() {
            hat.insert(b.name(e).to_string(), json!(names_of(&d.space, &d.hat[e])));
        }
    }
    let payload = json!({
        "points": d.space.names(),
        "elements": b.len(),
        "hat": hat,
    });
    let table = vec![
        format!("atoms: {}", d.space.len()),
        format!("elements: {}", b.len()),
        format!("points: {}", d.space.names().join(", ")),
    ];
    Ok(Rendered::new(Report::ok("dual ba", payload), table)
        .with_dot(poset_to_dot(&d.space, "dual")))
}

pub fn dual_dl_cmd(input: &str) -> Result<Rendered, CliError> {
    let l = inputs::load_lattice(input)?;
    let d = dual_dl(&l);
    let mut hat = Map::new();
    for e in 0..l.len() {
        hat.insert(l.name(e).to_string(), json!(names_of(&d.space, &d.hat[e])));
    }
    let payload = json!({
        "space": poset_json(&d.space),
        "hat": hat,
    });
    let mut table = vec![
        format!("elements: {}", l.len()),
        format!("join-irreducibles: {}", d.space.len()),
    ];
    for i in 0..d.space.len() {
        let above: Vec<&str> = d
            .space
            .upper_covers(i)
            .iter()
            .map(|&j| d.space.name(j))
            .collect();
        table.push(if above.is_empty() {
            format!("  {}", d.space.name(i))
        } else {
            format!("  {} < {}", d.space.name(i), above.join(", "))
        });
    }
    Ok(Rendered::new(Report::ok("dual dl", payload), table)
        .with_dot(poset_to_dot(&d.space, "dual")))
}

pub fn vietoris_cmd(
    points: Option<usize>,
    input: Option<&str>,
    caps: &Caps,
) -> Result<Rendered, CliError> {
    let x = match (points, input) {
        (Some(n), None) => FinPoset::discrete((0..n).map(|i| format!("x{i}")).collect()),
        (None, Some(path)) => inputs::load_poset(path)?,
        _ => {
            return Err(CliError::Usage(
                "pass exactly one of --points or --in".into(),
            ))
        }
    };
    let v = vietoris(&x, caps)?;
    let payload = json!({
        "base_points": x.len(),
        "points": v.space.len(),
        "subsets": v.space.names(),
    });
    let table = vec![
        format!("base points: {}", x.len()),
        format!("hyperspace points: {}", v.space.len()),
        format!("subsets: {}", v.space.names().join(" ")),
    ];
    Ok(Rendered::new(Report::ok("vietoris", payload), table)
        .with_dot(poset_to_dot(&v.space, "vietoris")))
}

pub fn smyth_cmd(input: &str, caps: &Caps) -> Result<Rendered, CliError> {
    let x = inputs::load_poset(input)?;
    let s = smyth(&x, caps)?;
    let payload = json!({
        "base": poset_json(&x),
        "points": s.space.len(),
        "space": poset_json(&s.space),
    });
    let table = vec![
        format!("base points: {}", x.len()),
        format!("upsets: {}", s.space.len()),
    ];
    Ok(Rendered::new(Report::ok("smyth", payload), table)
        .with_dot(poset_to_dot(&s.space, "smyth")))
}

pub fn ma_cmd(atoms: usize, caps: &Caps) -> Result<Rendered, CliError> {
    let names: Vec<String> = (0..atoms).map(|i| format!("a{i}")).collect();
    let b = FinBoolAlg::powerset(&names);
    let ma = ma_functor(&b, caps)?;
    let payload = json!({
        "base_atoms": atoms,
        "base_elements": b.len(),
        "points": ma.point_count(),
        "elements": ma.element_count().to_string(),
    });
    let table = vec![
        format!("base atoms: {atoms}"),
        format!("atoms: {}", ma.point_count()),
        format!("elements: {}", ma.element_count()),
    ];
    Ok(Rendered::new(Report::ok("ma", payload), table))
}

pub fn tower_cmd(vars: usize, depth: usize, caps: &Caps) -> Result<Rendered, CliError> {
    let names: Vec<String> = (1..=vars).map(|i| format!("p{i}")).collect();
    let t = ModalTower::build(names, depth, caps)?;
    let spaces: Vec<usize> = (0..=depth).map(|n| t.x_size(n)).collect();
    let algebras: Vec<String> = (0..=depth).map(|n| t.b_size(n).to_string()).collect();
    let payload = json!({
        "vars": vars,
        "depth": depth,
        "space_sizes": spaces,
        "algebra_sizes": algebras,
    });
    let join = |xs: Vec<String>| xs.join(", ");
    let table = vec![
        format!(
            "space sizes: {}",
            join(spaces.iter().map(|n| n.to_string()).collect())
        ),
        format!("algebra sizes: {}", join(algebras)),
    ];
    Ok(Rendered::new(Report::ok("tower", payload), table))
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum FboxMode {
    Full,
    Binary,
}

impl FboxMode {
    fn expansion(self) -> ExpansionMode {
        match self {
            FboxMode::Full => ExpansionMode::FullSubsets,
            FboxMode::Binary => ExpansionMode::BinaryNullary,
        }
    }
}

pub fn fbox_cmd(input: &str, mode: FboxMode, caps: &Caps) -> Result<Rendered, CliError> {
    let l = inputs::load_lattice(input)?;
    let q = f_box_quotient(&l, mode.expansion(), caps)?;
    let dual = q.dual_space();
    let payload = json!({
        "index_elements": l.len(),
        "points": q.point_count(),
        "space": poset_json(&dual),
    });
    let table = vec![
        format!("index lattice elements: {}", l.len()),
        format!("points: {}", q.point_count()),
    ];
    Ok(Rendered::new(Report::ok("fbox", payload), table)
        .with_dot(poset_to_dot(&dual, "fbox")))
}

pub fn farrow_cmd(
    left: &str,
    right: &str,
    at_primes: bool,
    caps: &Caps,
) -> Result<Rendered, CliError> {
    let l = inputs::load_lattice(left)?;
    let m = inputs::load_lattice(right)?;
    let ap = if at_primes {
        f_arrow_at_primes(&l, &m)?
    } else {
        f_arrow(&l, &m)?
    };
    let q = PresentedLattice::quotient(ap.presentation.clone(), caps)?;
    let dual = q.dual_space();
    let payload = json!({
        "left_elements": l.len(),
        "right_elements": m.len(),
        "at_primes": at_primes,
        "points": q.point_count(),
        "space": poset_json(&dual),
    });
    let table = vec![
        format!("generators: {}", l.len() * m.len()),
        format!("points: {}", q.point_count()),
    ];
    Ok(Rendered::new(Report::ok("farrow", payload), table)
        .with_dot(poset_to_dot(&dual, "farrow")))
}

pub fn erp_cmd(input: &str, sub: &str) -> Result<Rendered, CliError> {
    let l = inputs::load_lattice(input)?;
    let mut keep = BitSet::new(l.len());
    for name in sub.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = l
            .poset()
            .index_of(name)
            .ok_or_else(|| CliError::Usage(format!("no element named {name:?}")))?;
        keep.insert(i);
    }
    let report = erp_retraction(&l, &keep)?;
    let retraction: Option<Map<String, Value>> = report.retraction.as_ref().map(|h| {
        (0..l.len())
            .map(|b| {
                (
                    l.name(b).to_string(),
                    json!(report.sub.name(h.apply(b))),
                )
            })
            .collect()
    });
    let erp_holds = report
        .retraction
        .as_ref()
        .map(|h| {
            check_lattice_erp(&report.inclusion, h)
                .map(|c| c.holds())
                .unwrap_or(false)
        })
        .unwrap_or(false);
    let payload = json!({
        "sublattice": report.sub_elements.iter().map(|&i| l.name(i)).collect::<Vec<_>>(),
        "principal_condition": report.principal_condition(),
        "ji_condition": report.ji_condition(),
        "non_principal_witness": report.non_principal_witness,
        "ji_witness": report.ji_witness,
        "retraction": retraction,
        "erp_holds": erp_holds,
    });
    let table = vec![
        format!("principal condition: {}", report.principal_condition()),
        format!("join-irreducible condition: {}", report.ji_condition()),
        format!(
            "retraction: {}",
            if report.retraction.is_some() {
                "exists"
            } else {
                "none"
            }
        ),
    ];
    Ok(Rendered::new(Report::ok("erp", payload), table))
}

pub fn fo_eval_cmd(
    input: &str,
    sig_arg: Option<&str>,
    phi_text: &str,
    assignment_arg: Option<&str>,
) -> Result<Rendered, CliError> {
    let (sig, a) = inputs::load_structure(input, sig_arg)?;
    let phi = usage_phi(parse_fo(phi_text, &sig))?;
    let vars: Vec<usize> = phi.free_vars().into_iter().collect();
    let assignment = match assignment_arg {
        Some(t) => inputs::parse_assignment(t)?,
        None if vars.is_empty() => vec![],
        None => {
            return Err(CliError::Usage(format!(
                "formula has free variables {}; pass --assignment",
                vars.iter()
                    .map(|v| format!("v{v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            )))
        }
    };
    if assignment.len() != vars.len() {
        return Err(CliError::Usage(format!(
            "assignment has {} entries for {} free variables",
            assignment.len(),
            vars.len()
        )));
    }
    if let Some(&bad) = assignment.iter().find(|&&e| e >= a.universe()) {
        return Err(CliError::Usage(format!(
            "assignment element {} is outside the universe of size {}",
            bad + 1,
            a.universe()
        )));
    }
    let holds = evaluate(&a, &vars, &assignment, &phi)?;
    let shown: Map<String, Value> = vars
        .iter()
        .zip(&assignment)
        .map(|(v, e)| (format!("v{v}"), json!(e + 1)))
        .collect();
    let payload = json!({
        "formula": phi.display(&sig).to_string(),
        "assignment": shown,
        "holds": holds,
    });
    let counterexample = (!holds).then(|| {
        json!({
            "formula": phi.display(&sig).to_string(),
            "assignment": payload["assignment"],
            "universe": a.universe(),
        })
    });
    let table = vec![format!("holds: {holds}")];
    Ok(Rendered::new(
        Report::verdict("fo eval", "the formula holds in the structure", payload, counterexample),
        table,
    ))
}

pub fn fo_enum_cmd(
    sig_arg: Option<&str>,
    max_size: usize,
    up_to_iso: bool,
    theory_texts: &[String],
    caps: &Caps,
) -> Result<Rendered, CliError> {
    let sig = match sig_arg {
        Some(s) => inputs::load_signature(s)?,
        None => inputs::default_signature(),
    };
    let mut theory = Vec::new();
    for t in theory_texts {
        let phi = usage_phi(parse_fo(t, &sig))?;
        if !phi.free_vars().is_empty() {
            return Err(CliError::Usage(format!(
                "theory axiom {t:?} has free variables; axioms must be sentences"
            )));
        }
        theory.push(phi);
    }
    let structures = enumerate_structures(&sig, max_size, &theory, up_to_iso, caps)?;
    let mut by_size: HashMap<usize, usize> = HashMap::new();
    for a in &structures {
        *by_size.entry(a.universe()).or_default() += 1;
    }
    let mut sizes: Vec<usize> = by_size.keys().copied().collect();
    sizes.sort_unstable();
    let listed = structures.len() <= 128;
    let payload = json!({
        "count": structures.len(),
        "by_size": sizes
            .iter()
            .map(|n| json!({"universe": n, "count": by_size[n]}))
            .collect::<Vec<_>>(),
        "structures": listed
            .then(|| structures.iter().map(|a| a.to_json(&sig)).collect::<Vec<_>>()),
    });
    let mut table = vec![format!("count: {}", structures.len())];
    for n in &sizes {
        table.push(format!("  universe {}: {}", n, by_size[n]));
    }
    Ok(Rendered::new(Report::ok("fo enum", payload), table))
}

/// Shared setup for the layer and quantifier-duality subcommands: the
/// model space over all structures up to the size bound, and the
/// subalgebra generated by the formula extents.
struct LayerSetup {
    space: ModelSpace,
    algebra: SubAlgebra,
    formulas: Vec<String>,
}

fn layer_setup(
    sig: &Signature,
    sizes: usize,
    window: usize,
    phi_texts: &[String],
    caps: &Caps,
) -> Result<LayerSetup, CliError> {
    let texts: Vec<String> = if phi_texts.is_empty() {
        vec!["P(v1)".into()]
    } else {
        phi_texts.to_vec()
    };
    let mut formulas = Vec::new();
    for t in &texts {
        let phi = usage_phi(parse_fo(t, sig))?;
        if let Some(&v) = phi.free_vars().iter().find(|&&v| v == 0 || v > window) {
            return Err(CliError::Usage(format!(
                "formula {t:?} uses v{v}, outside the window of {window} variables"
            )));
        }
        formulas.push(phi);
    }
    let structures = enumerate_structures(sig, sizes, &[], false, caps)?;
    let space = ModelSpace::new(structures, window);
    let extents = formulas
        .iter()
        .map(|phi| space.semantics_set(phi))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from)?;
    let algebra = generated_subalgebra(&extents, space.len(), caps)?;
    Ok(LayerSetup {
        space,
        algebra,
        formulas: texts,
    })
}

fn check_var(var: usize, window: usize) -> Result<(), CliError> {
    if var == 0 || var > window {
        return Err(CliError::Usage(format!(
            "--var must name a window variable (1..={window})"
        )));
    }
    Ok(())
}

fn layer_payload(setup: &LayerSetup, layer: &Layer, extra: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("formulas".into(), json!(setup.formulas));
    m.insert("source_points".into(), json!(setup.space.len()));
    m.insert("algebra_atoms".into(), json!(setup.algebra.blocks.len()));
    m.insert("target_points".into(), json!(layer.target.len()));
    m.insert("generators".into(), json!(layer.generator_extents.len()));
    m.insert("layer_atoms".into(), json!(layer.sub.blocks.len()));
    m.extend(extra);
    Value::Object(m)
}

#[allow(clippy::too_many_arguments)]
pub fn layer_cmd(
    semiring: Option<&str>,
    sig_arg: Option<&str>,
    sizes: usize,
    window: usize,
    var: usize,
    phi_texts: &[String],
    caps: &Caps,
) -> Result<Rendered, CliError> {
    check_var(var, window)?;
    let sig = match sig_arg {
        Some(s) => inputs::load_signature(s)?,
        None => inputs::default_signature(),
    };
    let setup = layer_setup(&sig, sizes, window, phi_texts, caps)?;
    let (command, layer, extra) = match semiring {
        None => {
            let layer = exists_layer(&setup.algebra, &setup.space, var, caps)?;
            (
                "layer exists",
                layer,
                Map::new(),
            )
        }
        Some(name) => {
            let s = inputs::load_semiring(name)?;
            let layer = semiring_layer(&setup.algebra, &setup.space, var, &s, caps)?;
            let mut extra = Map::new();
            extra.insert("semiring".into(), s.to_json());
            ("layer semiring", layer, extra)
        }
    };
    let payload = layer_payload(&setup, &layer, extra);
    let table = vec![
        format!("source points: {}", setup.space.len()),
        format!("target points: {}", layer.target.len()),
        format!("layer atoms: {}", layer.sub.blocks.len()),
    ];
    Ok(Rendered::new(Report::ok(command, payload), table))
}

fn duality_payload(report: &DualityReport) -> Value {
    json!({
        "generator_identity": report.generator_identity,
        "kernel_matches": report.kernel_matches,
        "layer_atoms": report.layer_atoms,
        "kernel_classes": report.kernel_classes,
    })
}

fn duality_counterexample(report: &DualityReport) -> Option<Value> {
    (!report.ok()).then(|| {
        json!({
            "generator_identity": report.generator_identity,
            "kernel_matches": report.kernel_matches,
            "layer_atoms": report.layer_atoms,
            "kernel_classes": report.kernel_classes,
        })
    })
}

#[allow(clippy::too_many_arguments)]
pub fn verify_quantifier_cmd(
    semiring: Option<&str>,
    sig_arg: Option<&str>,
    sizes: usize,
    window: usize,
    var: usize,
    phi_texts: &[String],
    caps: &Caps,
) -> Result<Rendered, CliError> {
    check_var(var, window)?;
    let sig = match sig_arg {
        Some(s) => inputs::load_signature(s)?,
        None => inputs::default_signature(),
    };
    let setup = layer_setup(&sig, sizes, window, phi_texts, caps)?;
    let (command, verifies, report, semiring_json) = match semiring {
        None => (
            "verify exists",
            "forgetting a variable maps the model space onto the dual of the \
             existential layer: preimages of the subbasic hit-sets are the \
             direct-image generators and the kernel is the layer's atom partition",
            verify_exists_duality(&setup.algebra, &setup.space, var, caps)?,
            None,
        ),
        Some(name) => {
            let s = inputs::load_semiring(name)?;
            let report = verify_semiring_duality(&setup.algebra, &setup.space, var, &s, caps)?;
            (
                "verify semiring",
                "the measure-valued map presents the dual of the counting layer: \
                 preimages of the sets measuring an element as k are the counting \
                 generators and the kernel is the layer's atom partition",
                report,
                Some(s.to_json()),
            )
        }
    };
    let mut payload = duality_payload(&report);
    if let Some(s) = semiring_json {
        payload["semiring"] = s;
    }
    payload["sizes"] = json!(sizes);
    payload["window"] = json!(window);
    payload["var"] = json!(var);
    payload["formulas"] = json!(setup.formulas);
    let counterexample = duality_counterexample(&report);
    let table = vec![
        format!("layer atoms: {}", report.layer_atoms),
        format!("kernel classes: {}", report.kernel_classes),
        format!("generator identity: {}", report.generator_identity),
        format!("kernel matches: {}", report.kernel_matches),
    ];
    Ok(Rendered::new(
        Report::verdict(command, verifies, payload, counterexample),
        table,
    ))
}

pub fn verify_fbox_cmd(max_ji: usize, mode: FboxMode, caps: &Caps) -> Result<Rendered, CliError> {
    let mut rows = Vec::new();
    let mut table = vec![format!(
        "{:<10} {:>8} {:>8} {:>12} {:>6}",
        "lattice", "elements", "filters", "dual_points", "ok"
    )];
    let mut counterexample = None;
    for (i, l) in dist_lattices_with_ji_up_to(max_ji).iter().enumerate() {
        let q = f_box_quotient(l, mode.expansion(), caps)?;
        let points = q.point_count();
        let filter_count = filters(l).len();
        let check = check_fbox_duality(l, mode.expansion(), caps)?;
        let ok = check.order_iso && points == filter_count;
        rows.push(json!({
            "lattice": i,
            "elements": l.len(),
            "filters": filter_count,
            "dual_points": points,
            "ok": ok,
        }));
        table.push(format!(
            "{:<10} {:>8} {:>8} {:>12} {:>6}",
            format!("#{i}"),
            l.len(),
            filter_count,
            points,
            ok
        ));
        if !ok && counterexample.is_none() {
            counterexample = Some(json!({
                "lattice": poset_json(l.poset()),
                "filters": filter_count,
                "dual_points": points,
            }));
        }
    }
    let payload = json!({
        "max_ji": max_ji,
        "lattices": rows.len(),
        "rows": rows,
    });
    Ok(Rendered::new(
        Report::verdict(
            "verify fbox",
            "the dual space of the box-token lattice on L is the filter space of L",
            payload,
            counterexample,
        ),
        table,
    ))
}

pub fn verify_farrow_cmd(max_ji: usize, caps: &Caps) -> Result<Rendered, CliError> {
    let lattices = dist_lattices_with_ji_up_to(max_ji);
    let mut rows = Vec::new();
    let mut counterexample = None;
    let mut table = vec![format!(
        "{:>4} {:>4} {:>8} {:>8} {:>10} {:>10} {:>6}",
        "L", "M", "points", "maps", "pts@primes", "maps@pr", "ok"
    )];
    for (li, l) in lattices.iter().enumerate() {
        for (mi, m) in lattices.iter().enumerate() {
            let ji = l.join_irreducibles();

            let ap = f_arrow(l, m)?;
            let q = PresentedLattice::quotient(ap.presentation.clone(), caps)?;
            let filt_list = filters(m);
            let (fspace, fmaps) = monotone_function_space(&ji, &filters_poset(m));
            let image: Option<Vec<usize>> = q
                .points()
                .iter()
                .map(|pt| {
                    let gens = point_as_filter_map(&ap, l, m, pt)?;
                    let fm: Vec<usize> = gens
                        .into_iter()
                        .map(|c| {
                            filt_list
                                .iter()
                                .position(|f| f.generator == c)
                                .expect("principal filter")
                        })
                        .collect();
                    fmaps.iter().position(|g| *g == fm)
                })
                .collect();
            let plain_ok = q.point_count() == fmaps.len()
                && image
                    .as_ref()
                    .is_some_and(|img| is_isomorphism(&q.dual_space(), &fspace, img));

            let at = f_arrow_at_primes(l, m)?;
            let qat = PresentedLattice::quotient(at.presentation.clone(), caps)?;
            let jim = m.join_irreducibles();
            let (pspace, pmaps) = monotone_function_space(&ji, &jim);
            let image_at: Option<Vec<usize>> = qat
                .points()
                .iter()
                .map(|pt| {
                    let fm = point_as_ji_map(&at, l, m, pt)?;
                    pmaps.iter().position(|g| *g == fm)
                })
                .collect();
            let primes_ok = qat.point_count() == pmaps.len()
                && image_at
                    .as_ref()
                    .is_some_and(|img| is_isomorphism(&qat.dual_space(), &pspace, img));

            let ok = plain_ok && primes_ok;
            rows.push(json!({
                "left": li,
                "right": mi,
                "points": q.point_count(),
                "monotone_maps": fmaps.len(),
                "points_at_primes": qat.point_count(),
                "monotone_ji_maps": pmaps.len(),
                "ok": ok,
            }));
            table.push(format!(
                "{:>4} {:>4} {:>8} {:>8} {:>10} {:>10} {:>6}",
                li,
                mi,
                q.point_count(),
                fmaps.len(),
                qat.point_count(),
                pmaps.len(),
                ok
            ));
            if !ok && counterexample.is_none() {
                counterexample = Some(json!({
                    "left": poset_json(l.poset()),
                    "right": poset_json(m.poset()),
                    "points": q.point_count(),
                    "monotone_maps": fmaps.len(),
                    "points_at_primes": qat.point_count(),
                    "monotone_ji_maps": pmaps.len(),
                }));
            }
        }
    }
    let payload = json!({
        "max_ji": max_ji,
        "pairs": rows.len(),
        "rows": rows,
    });
    Ok(Rendered::new(
        Report::verdict(
            "verify farrow",
            "points of the arrow-token lattice are the monotone maps into the \
             filter space, and with joins at primes, the monotone maps between \
             the join-irreducible posets, as ordered spaces",
            payload,
            counterexample,
        ),
        table,
    ))
}

/// Exhaustive search for a homomorphism h: L -> K that is adjoint to the
/// inclusion. Adjointness forces h to fix K pointwise, so only the other
/// positions are swept.
fn retraction_exists_brute(l: &FinDistLattice, report: &ErpReport) -> Result<bool, CliError> {
    let n = l.len();
    let sub_elements = &report.sub_elements;
    let pos_of: HashMap<usize, usize> = sub_elements
        .iter()
        .enumerate()
        .map(|(j, &i)| (i, j))
        .collect();
    let free: Vec<usize> = (0..n).filter(|i| !pos_of.contains_key(i)).collect();
    let k = sub_elements.len();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut h = vec![0usize; n];
        for (&i, &j) in pos_of.iter() {
            h[i] = j;
        }
        for (slot, &i) in free.iter().enumerate() {
            h[i] = choice[slot];
        }
        let hom = (0..n).all(|a| {
            (0..n).all(|b| {
                let meet_ok =
                    sub_elements[h[l.meet(a, b)]] == l.meet(sub_elements[h[a]], sub_elements[h[b]]);
                let join_ok =
                    sub_elements[h[l.join(a, b)]] == l.join(sub_elements[h[a]], sub_elements[h[b]]);
                meet_ok && join_ok
            })
        });
        if hom {
            let h_map = LatticeMap::new(l.clone(), report.sub.clone(), h)
                .map_err(|e| CliError::Fail(e.to_string()))?;
            if check_lattice_erp(&report.inclusion, &h_map)?.holds() {
                return Ok(true);
            }
        }
        let mut slot = 0;
        loop {
            if slot == choice.len() {
                return Ok(false);
            }
            choice[slot] += 1;
            if choice[slot] < k {
                break;
            }
            choice[slot] = 0;
            slot += 1;
        }
    }
}

pub fn verify_erp_cmd(max_elems: usize, _caps: &Caps) -> Result<Rendered, CliError> {
    let mut instances = 0u64;
    let mut positive = 0u64;
    let mut counterexample = None;
    for l in dist_lattices_up_to(max_elems) {
        for mask in subset_masks(l.len()) {
            let keep = BitSet::from_mask(l.len(), mask);
            if !l.is_sublattice(&keep) {
                continue;
            }
            instances += 1;
            let report = erp_retraction(&l, &keep)?;
            let predicted = report.retraction.is_some();
            let brute = retraction_exists_brute(&l, &report)?;
            let mut ok = predicted == brute;
            if let Some(h) = &report.retraction {
                positive += 1;
                let direct = check_lattice_erp(&report.inclusion, h)?;
                let (_, _, dual_check) = dual_poset_erp(&report.inclusion, h)?;
                ok = ok && direct.holds() && dual_check.holds();
            }
            if !ok && counterexample.is_none() {
                counterexample = Some(json!({
                    "lattice": poset_json(l.poset()),
                    "sublattice": report
                        .sub_elements
                        .iter()
                        .map(|&i| l.name(i))
                        .collect::<Vec<_>>(),
                    "conditions_hold": predicted,
                    "brute_force_retraction": brute,
                }));
            }
        }
    }
    let payload = json!({
        "max_elements": max_elems,
        "sublattice_pairs": instances,
        "with_retraction": positive,
    });
    let table = vec![
        format!("sublattice pairs checked: {instances}"),
        format!("with retraction: {positive}"),
    ];
    Ok(Rendered::new(
        Report::verdict(
            "verify erp",
            "the two sublattice conditions hold exactly when the inclusion \
             has an adjoint retraction homomorphism, and every such pair \
             dualizes to an embedding-retraction pair on the join-irreducible \
             posets",
            payload,
            counterexample,
        ),
        table,
    ))
}

pub fn verify_rules_cmd(
    sig_arg: Option<&str>,
    sizes: usize,
    window: usize,
    qgrid: i64,
    phi_texts: &[String],
    caps: &Caps,
) -> Result<Rendered, CliError> {
    if qgrid < 1 {
        return Err(CliError::Usage("--qgrid must be at least 1".into()));
    }
    let sig = match sig_arg {
        Some(s) => inputs::load_signature(s)?,
        None => inputs::default_signature(),
    };
    let texts: Vec<String> = if phi_texts.is_empty() {
        vec!["P(v1)".into()]
    } else {
        phi_texts.to_vec()
    };
    let mut pool = Vec::new();
    for t in &texts {
        let phi = usage_phi(parse_fo(t, &sig))?;
        if let Some(&v) = phi.free_vars().iter().find(|&&v| v == 0 || v > window) {
            return Err(CliError::Usage(format!(
                "formula {t:?} uses v{v}, outside the window of {window} variables"
            )));
        }
        pool.push(phi);
    }
    let universe = rule_universe(&sig, sizes, &pool, window, qgrid, caps)?;
    let reports = check_rules(&universe, &pool, qgrid)?;
    let mut counterexample = None;
    let mut rows = Vec::new();
    let mut table = vec![format!(
        "{:<28} {:>10} {:>8}",
        "rule", "instances", "sound"
    )];
    for r in &reports {
        rows.push(json!({
            "rule": r.name,
            "instances": r.instances,
            "sound": r.sound(),
            "counterexample": r.counterexample,
        }));
        table.push(format!(
            "{:<28} {:>10} {:>8}",
            r.name,
            r.instances,
            r.sound()
        ));
        if let (None, Some(ce)) = (&counterexample, &r.counterexample) {
            counterexample = Some(json!({"rule": r.name, "instance": ce}));
        }
    }
    let payload = json!({
        "sizes": sizes,
        "window": window,
        "qgrid": qgrid,
        "formulas": texts,
        "measures": universe.len(),
        "rules": rows,
    });
    Ok(Rendered::new(
        Report::verdict(
            "verify rules",
            "the nine inference rules of the graded logic are sound over all \
             measures of enumerated structures and all grid measures",
            payload,
            counterexample,
        ),
        table,
    ))
}

pub fn pairing_cmd(
    input: &str,
    sig_arg: Option<&str>,
    phi_text: &str,
    window: usize,
    caps: &Caps,
) -> Result<Rendered, CliError> {
    let (sig, a) = inputs::load_structure(input, sig_arg)?;
    let phi = usage_phi(parse_fo(phi_text, &sig))?;
    if let Some(&v) = phi.free_vars().iter().find(|&&v| v == 0 || v > window) {
        return Err(CliError::Usage(format!(
            "formula uses v{v}, outside the window of {window} variables"
        )));
    }
    let value = stone_pairing(&phi, &a, window)?;
    let gamma = stone_pairing_gamma(&phi, &a, window, caps)?;
    let payload = json!({
        "formula": phi.display(&sig).to_string(),
        "window": window,
        "value": value.to_string(),
        "gamma": gamma.to_string(),
    });
    let table = vec![
        format!("value: {value}"),
        format!("gamma: {gamma}"),
    ];
    Ok(Rendered::new(Report::ok("pairing", payload), table))
}

pub fn prob_sat_cmd(
    input: &str,
    sig_arg: Option<&str>,
    pi_text: &str,
    window: usize,
    caps: &Caps,
) -> Result<Rendered, CliError> {
    let (sig, a) = inputs::load_structure(input, sig_arg)?;
    let pi = parse_prob(pi_text, &sig)
        .map_err(|e| CliError::Usage(format!("graded formula: {e}")))?;
    let pool: Vec<FoFormula> = pi.fo_parts().into_iter().cloned().collect();
    for phi in &pool {
        if let Some(&v) = phi.free_vars().iter().find(|&&v| v == 0 || v > window) {
            return Err(CliError::Usage(format!(
                "formula under a grade uses v{v}, outside the window of {window} variables"
            )));
        }
    }
    let mu = measure_of(std::slice::from_ref(&a), 0, &pool, window, caps)?;
    let satisfied = prob_sat(&mu, &pi)?;
    let mut values = Map::new();
    for phi in &pool {
        values.insert(
            phi.display(&sig).to_string(),
            json!(mu.value_of(phi)?.to_string()),
        );
    }
    let payload = json!({
        "formula": pi.display(&sig).to_string(),
        "window": window,
        "satisfied": satisfied,
        "values": values,
    });
    let counterexample = (!satisfied).then(|| {
        json!({
            "formula": pi.display(&sig).to_string(),
            "values": payload["values"],
        })
    });
    let table = vec![format!("satisfied: {satisfied}")];
    Ok(Rendered::new(
        Report::verdict(
            "prob sat",
            "the structure's measure satisfies the graded formula",
            payload,
            counterexample,
        ),
        table,
    ))
}
