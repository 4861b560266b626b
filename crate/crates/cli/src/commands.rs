//! The commands. Each one turns a resolved document into a report and an
//! exit code: 0 when every verdict is true, 1 when some verdict is false,
//! 2 when a route could not answer.

use serde_json::{json, Map as JsonMap, Value};

use intcat_core::cosmos::{global_elements, Cosmos, Map, Obj};
use intcat_core::enriched::is_representable_by;
use intcat_core::enriched::VPresheaf;
use intcat_core::grothendieck::{counit_epsilon, groth, unit_eta};
use intcat_core::internal::{
    composable_square_is_pullback, internalize, is_discrete_fibration, transpose_to_internal,
    transpose_to_vfunctor, underlying, InternalFunctor,
};
use intcat_core::limits::{
    candidate_cones, find_v_tensor, is_representable_via_elements, is_representable_via_shifted,
    is_representable_via_und_tensors, is_weighted_limit_conical, is_weighted_limit_direct,
    is_weighted_limit_elements, is_weighted_limit_shifted, is_weighted_limit_und_tensors,
    representation_verdicts, tensor_bridge_terminal, weighted_cone_cross_check,
    weighted_cone_internal, weighted_limit_verdicts, Verdict, WeightedLimitProblem,
};
use intcat_testkit::{GenConfig, Generator};

use crate::document::{self, Document, ProblemSpec};
use crate::error::CliError;
use crate::export::{map_body, Exporter};
use crate::resolve::{Instance, Presheaf, Problem};

type Res<T> = Result<T, CliError>;

/// A report with its exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit: i32,
}

/// Which representability route to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepMethod {
    Direct,
    Elements,
    Shifted,
    UndTensors,
    All,
}

/// Which weighted-limit route to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitMethod {
    Direct,
    Elements,
    Shifted,
    Conical,
    UndTensors,
    All,
}

fn exit_of(v: &Verdict) -> i32 {
    match v {
        Verdict::True => 0,
        Verdict::False => 1,
        Verdict::NotApplicable(_) => 2,
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::NotApplicable(why) => json!({ "verdict": v.to_string(), "reason": why }),
        _ => json!(v.to_string()),
    }
}

fn bool_verdict(b: bool) -> Verdict {
    if b {
        Verdict::True
    } else {
        Verdict::False
    }
}

/// Combines the verdicts of several routes: the common answer when every
/// applicable route agrees, `None` on disagreement.
fn combine(vs: &[&Verdict]) -> Option<Verdict> {
    let answers: Vec<bool> = vs.iter().filter_map(|v| v.as_bool()).collect();
    match answers.first() {
        None => Some(Verdict::NotApplicable("no route applies".into())),
        Some(&a) if answers.iter().all(|&b| b == a) => Some(bool_verdict(a)),
        Some(_) => None,
    }
}

/// Picks the problems named by `filter` (all of `kind` when empty). A
/// filter entry may carry a `kind:` prefix, which is ignored.
fn select<'i>(
    inst: &'i Instance,
    filter: &[String],
    kind: fn(&Problem) -> bool,
    what: &str,
) -> Res<Vec<(&'i str, &'i Problem)>> {
    let mut out = Vec::new();
    if filter.is_empty() {
        out.extend(
            inst.problems
                .iter()
                .filter(|(_, p)| kind(p))
                .map(|(n, p)| (n.as_str(), p)),
        );
    } else {
        for f in filter {
            let name = f.split_once(':').map_or(f.as_str(), |(_, n)| n);
            let (n, p) = inst
                .problems
                .get_key_value(name)
                .ok_or_else(|| CliError::Usage(format!("no problem named `{name}`")))?;
            if !kind(p) {
                return Err(CliError::Usage(format!(
                    "problem `{name}` is not a {what} problem"
                )));
            }
            out.push((n.as_str(), p));
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!(
            "the document has no {what} problems"
        )));
    }
    Ok(out)
}

fn summary(command: &str, body: JsonMap<String, Value>, exit: i32) -> Outcome {
    let mut report = JsonMap::new();
    report.insert("command".into(), json!(command));
    report.extend(body);
    report.insert("exit".into(), json!(exit));
    Outcome {
        report: Value::Object(report),
        exit,
    }
}

/// Reports what a document contains once every entity has validated.
pub fn validate(inst: &Instance) -> Outcome {
    let mut body = JsonMap::new();
    body.insert("cosmos".into(), json!(inst.cosmos.tag()));
    body.insert("valid".into(), json!(true));
    body.insert(
        "counts".into(),
        json!({
            "objects": inst.objects.len(),
            "maps": inst.maps.len(),
            "vcategories": inst.vcategories.len(),
            "presheaves": inst.presheaves.len(),
            "vfunctors": inst.vfunctors.len(),
            "vnats": inst.vnats.len(),
            "internal_categories": inst.internal.len(),
            "internal_functors": inst.functors.len(),
            "problems": inst.problems.len(),
        }),
    );
    summary("validate", body, 0)
}

fn labels(x: &Obj) -> Vec<String> {
    (0..x.n_objs() as u32)
        .map(|o| x.obj_label(o).into_owned())
        .collect()
}

/// Builds the category of elements of each contravariant presheaf and
/// certifies its projection, the unit and the counit.
pub fn groth_cmd(inst: &Instance, presheaf: Option<&str>) -> Res<Outcome> {
    let chosen: Vec<(&String, &VPresheaf)> = inst
        .presheaves
        .iter()
        .filter(|(n, _)| presheaf.is_none_or(|p| p == n.as_str()))
        .filter_map(|(n, p)| match p {
            Presheaf::Contravariant(f) => Some((n, f)),
            Presheaf::Covariant(_) => None,
        })
        .collect();
    if chosen.is_empty() {
        return Err(CliError::Usage(
            "no contravariant presheaf to build elements of".into(),
        ));
    }
    let mut exit = 0;
    let mut out = JsonMap::new();
    for (name, f) in chosen {
        let g = groth(f.base(), f)?;
        let eta = unit_eta(&g, f)?;
        let eps = counit_epsilon(&g.packet)?;
        let ok = g.packet.certificate && eta.certificate && eps.certificate;
        exit = exit.max(if ok { 0 } else { 1 });
        out.insert(
            name.clone(),
            json!({
                "elements": labels(g.total.a0()),
                "morphism_cells": g.total.a1().n_objs(),
                "projection_is_discrete_fibration": g.packet.certificate,
                "unit_is_iso": eta.certificate,
                "counit_is_iso": eps.certificate,
            }),
        );
    }
    let mut body = JsonMap::new();
    body.insert("presheaves".into(), Value::Object(out));
    Ok(summary("groth", body, exit))
}

/// Decides whether each internal functor is a discrete fibration.
pub fn fibration_cmd(inst: &Instance, functor: Option<&str>) -> Res<Outcome> {
    let chosen: Vec<_> = inst
        .functors
        .iter()
        .filter(|(n, _)| functor.is_none_or(|f| f == n.as_str()))
        .collect();
    if chosen.is_empty() {
        return Err(CliError::Usage("no internal functor to check".into()));
    }
    let mut exit = 0;
    let mut out = JsonMap::new();
    for (name, e) in chosen {
        let packet = is_discrete_fibration(&e.functor, e.base.as_ref())?;
        let square = composable_square_is_pullback(&e.functor)?;
        exit = exit.max(if packet.certificate { 0 } else { 1 });
        out.insert(
            name.clone(),
            json!({
                "discrete_fibration": packet.certificate,
                "composable_square_is_pullback": square,
            }),
        );
    }
    let mut body = JsonMap::new();
    body.insert("functors".into(), Value::Object(out));
    Ok(summary("fibration", body, exit))
}

/// Lists the fiber of a discrete fibration over one object of its base.
pub fn fiber_cmd(inst: &Instance, functor: &str, object: &str) -> Res<Outcome> {
    let e = inst
        .functors
        .get(functor)
        .ok_or_else(|| CliError::Usage(format!("no internal functor `{functor}`")))?;
    let base = e.base.as_ref().ok_or_else(|| {
        CliError::Usage(format!(
            "`{functor}` does not land in an internalized V-category"
        ))
    })?;
    let a = base
        .vcat
        .find(object)
        .map_err(|_| CliError::Usage(format!("no object `{object}` in the base")))?;
    let packet = is_discrete_fibration(&e.functor, Some(base))?;
    let mut body = JsonMap::new();
    body.insert("functor".into(), json!(functor));
    body.insert("object".into(), json!(object));
    body.insert("discrete_fibration".into(), json!(packet.certificate));
    if !packet.certificate {
        return Ok(summary("fiber", body, 1));
    }
    let fiber = packet.require_fibers()?.fiber(a);
    body.insert("fiber".into(), json!(labels(fiber)));
    Ok(summary("fiber", body, 0))
}

/// Compares internal terminality with terminality in the underlying
/// `V`-category and the shifted test, reporting the tensor hypotheses.
pub fn terminal_cmd(inst: &Instance, filter: &[String]) -> Res<Outcome> {
    let mut exit = 0;
    let mut out = JsonMap::new();
    for (name, p) in select(
        inst,
        filter,
        |p| matches!(p, Problem::Terminal { .. }),
        "terminal",
    )? {
        let Problem::Terminal { internal, object } = p else {
            unreachable!("selected by kind")
        };
        let r = tensor_bridge_terminal(internal, None, *object, &inst.cosmos.generators())?;
        let code = if r.unexpected {
            2
        } else if r.internal_terminal {
            0
        } else {
            1
        };
        exit = exit.max(code);
        out.insert(
            name.into(),
            json!({
                "object": internal.a0().obj_label(*object),
                "internal_terminal": r.internal_terminal,
                "v_terminal_in_underlying": r.v_terminal,
                "shifted": r.shifted,
                "tensor_hypotheses": if r.hypotheses { "satisfied" } else { "missing" },
                "missing_tensors": r.missing,
                "divergence": r.divergence,
                "verdict": bool_verdict(r.internal_terminal).to_string(),
            }),
        );
    }
    let mut body = JsonMap::new();
    body.insert("problems".into(), Value::Object(out));
    Ok(summary("terminal", body, exit))
}

fn rep_routes(
    f: &VPresheaf,
    a: usize,
    x: &Map,
    method: RepMethod,
) -> Res<(JsonMap<String, Value>, Option<Verdict>)> {
    let one = |name: &str, v: Verdict| {
        let mut m = JsonMap::new();
        m.insert(name.into(), verdict_json(&v));
        (m, Some(v))
    };
    Ok(match method {
        RepMethod::Direct => one("direct", Verdict::from_route(is_representable_by(f, a, x))?),
        RepMethod::Elements => one(
            "elements",
            Verdict::from_route(is_representable_via_elements(f, a, x))?,
        ),
        RepMethod::Shifted => one(
            "shifted",
            Verdict::from_route(is_representable_via_shifted(f, a, x))?,
        ),
        RepMethod::UndTensors => one(
            "und-tensors",
            Verdict::from_route(is_representable_via_und_tensors(f, a, x))?,
        ),
        RepMethod::All => {
            let v = representation_verdicts(f, a, x)?;
            let mut m = JsonMap::new();
            m.insert("direct".into(), verdict_json(&v.direct));
            m.insert("elements".into(), verdict_json(&v.elements));
            m.insert("shifted".into(), verdict_json(&v.shifted));
            m.insert("und-tensors".into(), verdict_json(&v.und_tensors));
            (
                m,
                combine(&[&v.direct, &v.elements, &v.shifted, &v.und_tensors]),
            )
        }
    })
}

/// Decides representability, at the given candidate or by searching every
/// global element of every `F(A)`.
pub fn representable_cmd(
    inst: &Instance,
    filter: &[String],
    method: RepMethod,
    search: bool,
) -> Res<Outcome> {
    let mut exit = 0;
    let mut out = JsonMap::new();
    for (name, p) in select(
        inst,
        filter,
        |p| matches!(p, Problem::Representability { .. }),
        "representability",
    )? {
        let Problem::Representability {
            presheaf: f,
            object,
            element,
        } = p
        else {
            unreachable!("selected by kind")
        };
        let base = f.base();
        let mut entry = JsonMap::new();
        let code = match (object, element, search) {
            (Some(a), Some(x), false) => {
                entry.insert(
                    "candidate".into(),
                    json!({ "object": base.objects()[*a].as_ref(), "element": f.at(*a).obj_label(x.on_obj(0)) }),
                );
                let (routes, v) = rep_routes(f, *a, x, method)?;
                entry.insert("routes".into(), Value::Object(routes));
                entry.insert("agree".into(), json!(v.is_some()));
                match v {
                    Some(v) => {
                        entry.insert("verdict".into(), json!(v.to_string()));
                        exit_of(&v)
                    }
                    None => {
                        entry.insert("verdict".into(), json!("disagreement"));
                        2
                    }
                }
            }
            _ => {
                let mut found = Vec::new();
                let (mut checked, mut inapplicable, mut disagree) = (0, 0, false);
                for a in (0..base.len()).filter(|a| object.is_none_or(|o| o == *a)) {
                    for x in global_elements(f.at(a)) {
                        checked += 1;
                        match rep_routes(f, a, &x, method)?.1 {
                            Some(Verdict::True) => found.push(json!({
                                "object": base.objects()[a].as_ref(),
                                "element": f.at(a).obj_label(x.on_obj(0)),
                            })),
                            Some(Verdict::False) => {}
                            Some(Verdict::NotApplicable(_)) => inapplicable += 1,
                            None => disagree = true,
                        }
                    }
                }
                entry.insert("search".into(), json!(true));
                entry.insert("candidates_checked".into(), json!(checked));
                entry.insert("agree".into(), json!(!disagree));
                let code = if disagree || inapplicable > 0 {
                    entry.insert(
                        "verdict".into(),
                        json!(if disagree {
                            "disagreement"
                        } else {
                            "not-applicable"
                        }),
                    );
                    2
                } else if found.is_empty() {
                    entry.insert("verdict".into(), json!("false"));
                    entry.insert("message".into(), json!("no representation"));
                    1
                } else {
                    entry.insert("verdict".into(), json!("true"));
                    0
                };
                entry.insert("representations".into(), Value::Array(found));
                code
            }
        };
        exit = exit.max(code);
        out.insert(name.into(), Value::Object(entry));
    }
    let mut body = JsonMap::new();
    body.insert("method".into(), json!(rep_method_name(method)));
    body.insert("problems".into(), Value::Object(out));
    Ok(summary("representable", body, exit))
}

fn rep_method_name(m: RepMethod) -> &'static str {
    match m {
        RepMethod::Direct => "direct",
        RepMethod::Elements => "elements",
        RepMethod::Shifted => "shifted",
        RepMethod::UndTensors => "und-tensors",
        RepMethod::All => "all",
    }
}

fn limit_method_name(m: LimitMethod) -> &'static str {
    match m {
        LimitMethod::Direct => "direct",
        LimitMethod::Elements => "elements",
        LimitMethod::Shifted => "shifted",
        LimitMethod::Conical => "conical",
        LimitMethod::UndTensors => "und-tensors",
        LimitMethod::All => "all",
    }
}

fn limit_routes(
    p: &WeightedLimitProblem,
    method: LimitMethod,
) -> Res<(JsonMap<String, Value>, Option<Verdict>)> {
    let one = |name: &str, v: Verdict| {
        let mut m = JsonMap::new();
        m.insert(name.into(), verdict_json(&v));
        (m, Some(v))
    };
    Ok(match method {
        LimitMethod::Direct => one("direct", Verdict::from_route(is_weighted_limit_direct(p))?),
        LimitMethod::Elements => one(
            "elements",
            Verdict::from_route(is_weighted_limit_elements(p))?,
        ),
        LimitMethod::Shifted => one(
            "shifted",
            Verdict::from_route(is_weighted_limit_shifted(p))?,
        ),
        LimitMethod::Conical => one(
            "conical",
            Verdict::from_route(is_weighted_limit_conical(p))?,
        ),
        LimitMethod::UndTensors => one(
            "und-tensors",
            Verdict::from_route(is_weighted_limit_und_tensors(p))?,
        ),
        LimitMethod::All => {
            let v = weighted_limit_verdicts(p)?;
            let mut m = JsonMap::new();
            m.insert("direct".into(), verdict_json(&v.direct));
            m.insert("elements".into(), verdict_json(&v.elements));
            m.insert("shifted".into(), verdict_json(&v.shifted));
            m.insert("conical".into(), verdict_json(&v.conical));
            m.insert("und-tensors".into(), verdict_json(&v.und_tensors));
            (
                m,
                combine(&[
                    &v.direct,
                    &v.elements,
                    &v.shifted,
                    &v.conical,
                    &v.und_tensors,
                ]),
            )
        }
    })
}

fn cone_json(p: &WeightedLimitProblem) -> Value {
    let shape = p.weight.base();
    let mut m = JsonMap::new();
    for (i, c) in p.cone.components.iter().enumerate() {
        m.insert(
            shape.objects()[i].to_string(),
            serde_json::to_value(map_body(c)).expect("map bodies serialize"),
        );
    }
    Value::Object(m)
}

/// Decides whether an apex with a cone is a weighted limit. Without a cone,
/// every cone at the apex is tried and the apex is a limit when one of them is.
pub fn weighted_limit_cmd(inst: &Instance, filter: &[String], method: LimitMethod) -> Res<Outcome> {
    let mut exit = 0;
    let mut out = JsonMap::new();
    for (name, p) in select(
        inst,
        filter,
        |p| matches!(p, Problem::WeightedLimit { .. }),
        "weighted-limit",
    )? {
        let Problem::WeightedLimit {
            weight,
            diagram,
            apex,
            cone,
        } = p
        else {
            unreachable!("selected by kind")
        };
        let wc = weighted_cone_internal(weight, diagram)?;
        let certificate = weighted_cone_cross_check(weight, diagram, &wc)?.certificate;
        let mut entry = JsonMap::new();
        entry.insert(
            "apex".into(),
            json!(diagram.target.objects()[*apex].as_ref()),
        );
        entry.insert("cone_cross_check".into(), json!(certificate));
        let mut code = if certificate { 0 } else { 2 };
        match cone {
            Some(problem) => {
                let (routes, v) = limit_routes(problem, method)?;
                entry.insert("cone".into(), cone_json(problem));
                entry.insert("routes".into(), Value::Object(routes));
                entry.insert("agree".into(), json!(v.is_some()));
                let c = match &v {
                    Some(v) => exit_of(v),
                    None => 2,
                };
                entry.insert(
                    "verdict".into(),
                    json!(v.map_or("disagreement".into(), |v| v.to_string())),
                );
                code = code.max(c);
            }
            None => {
                let cones = candidate_cones(weight, diagram, *apex)?;
                let mut results = Vec::with_capacity(cones.len());
                let (mut any_true, mut worst) = (false, 0);
                for problem in &cones {
                    let (routes, v) = limit_routes(problem, method)?;
                    let c = match &v {
                        Some(Verdict::True) => {
                            any_true = true;
                            0
                        }
                        Some(Verdict::False) => 0,
                        _ => 2,
                    };
                    worst = worst.max(c);
                    results.push(json!({
                        "cone": cone_json(problem),
                        "routes": Value::Object(routes),
                        "verdict": v.map_or("disagreement".into(), |v| v.to_string()),
                    }));
                }
                entry.insert("cones_checked".into(), json!(cones.len()));
                entry.insert("cones".into(), Value::Array(results));
                let c = if worst == 2 {
                    2
                } else if any_true {
                    0
                } else {
                    1
                };
                if cones.is_empty() {
                    entry.insert("message".into(), json!("no cone at this apex"));
                }
                entry.insert(
                    "verdict".into(),
                    json!(match c {
                        0 => "true",
                        1 => "false",
                        _ => "not-applicable",
                    }),
                );
                code = code.max(c);
            }
        }
        exit = exit.max(code);
        out.insert(name.into(), Value::Object(entry));
    }
    let mut body = JsonMap::new();
    body.insert("method".into(), json!(limit_method_name(method)));
    body.insert("problems".into(), Value::Object(out));
    Ok(summary("weighted-limit", body, exit))
}

/// Searches for the tensor of an object by a cosmos object.
pub fn tensor_cmd(inst: &Instance, filter: &[String]) -> Res<Outcome> {
    let mut exit = 0;
    let mut out = JsonMap::new();
    for (name, p) in select(
        inst,
        filter,
        |p| matches!(p, Problem::Tensor { .. }),
        "tensor",
    )? {
        let Problem::Tensor {
            vcategory,
            object,
            by,
        } = p
        else {
            unreachable!("selected by kind")
        };
        let w = find_v_tensor(vcategory, *object, by)?;
        let mut entry = JsonMap::new();
        entry.insert(
            "object".into(),
            json!(vcategory.objects()[*object].as_ref()),
        );
        match w {
            Some(w) => {
                entry.insert(
                    "tensor".into(),
                    json!(vcategory.objects()[w.tensor].as_ref()),
                );
                entry.insert(
                    "unit".into(),
                    serde_json::to_value(map_body(&w.unit)).expect("map bodies serialize"),
                );
                entry.insert("verdict".into(), json!("true"));
            }
            None => {
                exit = exit.max(1);
                entry.insert("verdict".into(), json!("false"));
                entry.insert("message".into(), json!("no tensor"));
            }
        }
        out.insert(name.into(), Value::Object(entry));
    }
    let mut body = JsonMap::new();
    body.insert("problems".into(), Value::Object(out));
    Ok(summary("tensor", body, exit))
}

/// Checks that emitting and re-parsing the document is the identity, and
/// that transposing the identity of each `Int C` across `Int ⊣ Und` and back
/// returns it.
pub fn roundtrip_cmd(doc: &Document, inst: &Instance) -> Res<Outcome> {
    let text = document::emit(doc);
    let again = document::parse(&text)?;
    let stable = &again == doc && document::emit(&again) == text;
    let mut transposes = JsonMap::new();
    for (name, c) in &inst.vcategories {
        let int = internalize(c)?;
        let und = underlying(&int.cat)?;
        let h = InternalFunctor::identity(&int.cat);
        let f = transpose_to_vfunctor(&int, &h, &und)?;
        let back = transpose_to_internal(&int, &f, &und)?;
        let forth = transpose_to_vfunctor(&int, &back, &und)?;
        transposes.insert(name.clone(), json!(back == h && forth == f));
    }
    let ok = stable && transposes.values().all(|v| v == &json!(true));
    let mut body = JsonMap::new();
    body.insert("document_stable".into(), json!(stable));
    body.insert("transposes".into(), Value::Object(transposes));
    Ok(summary("roundtrip", body, if ok { 0 } else { 1 }))
}

/// A random document: a `V`-category with a presheaf to search for
/// representations, a weighted-limit instance with one problem per apex, and
/// an internal category.
pub fn generate(seed: u64, cosmos: Cosmos, max_objects: usize, max_cells: usize) -> Res<Document> {
    let cfg = GenConfig::new(seed, cosmos).with_caps(max_objects, max_cells);
    let mut g = Generator::new(cfg)?;
    let c = g.vcategory();
    let f = g.presheaf(&c);
    let weighted = g.weighted()?;
    let a = g.internal();
    let mut ex = Exporter::new(cosmos);
    ex.vcategory("C", &c);
    ex.presheaf("F", "C", &f);
    ex.problem(
        "F",
        ProblemSpec::Representability {
            presheaf: "F".into(),
            object: None,
            element: None,
        },
    );
    let (w, d) = (&weighted.weight, &weighted.diagram);
    ex.vcategory("I", w.base());
    ex.vcategory("D", &d.target);
    ex.copresheaf("W", "I", w);
    ex.vfunctor("G", "I", "D", d);
    for l in d.target.objects() {
        ex.problem(
            &format!("lim.{l}"),
            ProblemSpec::WeightedLimit {
                weight: "W".into(),
                diagram: "G".into(),
                apex: l.to_string(),
                cone: None,
            },
        );
    }
    ex.internal("A", &a);
    Ok(ex.finish())
}
