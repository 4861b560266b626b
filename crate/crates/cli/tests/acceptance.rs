//! The acceptance suite: one PASS or FAIL line per criterion, exit status 1
//! if any criterion fails.

use std::path::Path;
use std::time::Instant;

use intcat_cli::goldens::{check, manifest};
use intcat_core::cosmos::{global_elements, maps_between, Cosmos, Label, Map, Obj};
use intcat_core::enriched::{
    find_representations, functor_hom, hom_copresheaf, VCategory, VFunctor,
};
use intcat_core::grothendieck::{change_of_base, counit_epsilon, groth, unit_eta};
use intcat_core::internal::{
    arrow_hom, arrow_object, composable_square_is_pullback, hom_cst, internal_hom, internalize,
    is_discrete_fibration, pullback_internal, transpose_to_internal, transpose_to_vfunctor,
    underlying, InternalCategory, InternalFunctor,
};
use intcat_core::limits::{
    candidate_cones, compare_ar_x, representation_verdicts, tensor_bridge_terminal,
    weighted_cone_cross_check, weighted_cone_internal, weighted_limit_verdicts, Verdict,
    WeightedLimitProblem,
};
use intcat_core::Error;
use intcat_testkit::fixtures::{p1, p2, p3};
use intcat_testkit::oracle::{oracle_functor_enum, oracle_isoofslices, oracle_nat_enum};
use intcat_testkit::{gen_copresheaf, gen_internal, gen_vcategory, GenConfig, Generator};

type Outcome = Result<String, String>;

const COSMOSES: [Cosmos; 2] = [Cosmos::FinSet, Cosmos::FinCat];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn set(k: usize) -> Obj {
    Obj::set((0..k).map(|i| Label::from(format!("e{i}"))).collect()).expect("distinct labels")
}

fn equivalence() -> Outcome {
    let mut per = Vec::new();
    for cosmos in COSMOSES {
        let mut n = 0;
        for seed in 0..100 {
            let mut g = Generator::new(GenConfig::new(seed, cosmos)).map_err(e)?;
            let c = g.vcategory();
            let (f, packet) = g.fibration(&c).map_err(e)?;
            let elements = groth(&c, &f).map_err(e)?;
            let eta = unit_eta(&elements, &f).map_err(e)?;
            ensure(eta.certificate, || {
                format!("{} seed {seed}: unit is not an iso", cosmos.tag())
            })?;
            let eps = counit_epsilon(&packet).map_err(e)?;
            ensure(eps.certificate, || {
                format!("{} seed {seed}: counit is not an iso", cosmos.tag())
            })?;
            n += 1;
        }
        per.push(format!("{} {n}", cosmos.tag()));
    }
    Ok(format!("unit and counit isos on {}", per.join(", ")))
}

fn fibrations() -> Outcome {
    let (mut projections, mut pullbacks, mut squares) = (0, 0, 0);
    for cosmos in COSMOSES {
        for seed in 0..100 {
            let mut g = Generator::new(GenConfig::new(seed, cosmos)).map_err(e)?;
            let c = g.vcategory();
            let (f, packet) = g.fibration(&c).map_err(e)?;
            let tag = || format!("{} seed {seed}", cosmos.tag());
            ensure(packet.certificate, || {
                format!("{}: projection not certified", tag())
            })?;
            projections += 1;
            ensure(
                composable_square_is_pullback(&packet.functor).map_err(e)?,
                || format!("{}: composable square is not a pullback", tag()),
            )?;
            squares += 1;
            for a in 0..c.len() {
                let bc = change_of_base(&VFunctor::point(&c, a), &f).map_err(e)?;
                ensure(bc.certificate, || {
                    format!("{}: change of base at {a} not a pullback", tag())
                })?;
                let pb = pullback_internal(&bc.base_functor, &packet.functor).map_err(e)?;
                let leg = is_discrete_fibration(&pb.leg0, None).map_err(e)?;
                ensure(leg.certificate, || {
                    format!("{}: pullback along {a} not certified", tag())
                })?;
                ensure(composable_square_is_pullback(&pb.leg0).map_err(e)?, || {
                    format!("{}: pulled back square is not a pullback", tag())
                })?;
                pullbacks += 1;
                squares += 1;
            }
        }
    }
    let total = projections + pullbacks;
    ensure(total >= 200, || format!("only {total} cases"))?;
    Ok(format!("{projections} projections, {pullbacks} pullbacks, {squares} composable squares; 0 failures"))
}

fn representation() -> Outcome {
    let (mut cases, mut und) = (0, 0);
    for cosmos in COSMOSES {
        for seed in 0..60 {
            let mut g = Generator::new(GenConfig::new(seed, cosmos)).map_err(e)?;
            for inst in g.representation_instances() {
                let v = representation_verdicts(&inst.presheaf, inst.object, &inst.element)
                    .map_err(e)?;
                let tag = || format!("{} seed {seed} object {}", cosmos.tag(), inst.object);
                ensure(
                    v.direct.is_applicable()
                        && v.elements.is_applicable()
                        && v.shifted.is_applicable(),
                    || format!("{}: a core route refused", tag()),
                )?;
                ensure(v.direct == v.elements && v.direct == v.shifted, || {
                    format!("{}: {v:?}", tag())
                })?;
                if v.und_tensors.is_applicable() {
                    ensure(v.und_tensors == v.direct, || {
                        format!("{}: und-tensors differs", tag())
                    })?;
                    und += 1;
                }
                cases += 1;
            }
        }
    }
    let f = p1();
    let v = representation_verdicts(&f.f0, 1, &f.x0).map_err(e)?;
    for r in [&v.direct, &v.elements, &v.shifted, &v.und_tensors] {
        ensure(r == &Verdict::True, || format!("P1 F0 at (1, id): {v:?}"))?;
    }
    ensure(find_representations(&f.f1).is_empty(), || {
        "P1 F1 has a representation".into()
    })?;
    for a in 0..2 {
        for x in global_elements(f.f1.at(a)) {
            let v = representation_verdicts(&f.f1, a, &x).map_err(e)?;
            ensure(v.agree() && v.direct == Verdict::False, || {
                format!("P1 F1 at {a}: {v:?}")
            })?;
        }
    }
    Ok(format!(
        "{cases} instances agree ({und} with tensor hypotheses); P1 F0 true, F1 no representation"
    ))
}

fn counterexample() -> Outcome {
    let p = p2();
    let r = tensor_bridge_terminal(&p.cat, None, p.terminal, &p.cat.cosmos().generators())
        .map_err(e)?;
    ensure(r.v_terminal, || "P2: not V-terminal in Und".into())?;
    ensure(!r.internal_terminal, || "P2: internally terminal".into())?;
    ensure(!r.hypotheses && !r.missing.is_empty(), || {
        "P2: tensor hypothesis not flagged".into()
    })?;
    ensure(!r.unexpected, || {
        "P2: divergence contradicts the hypotheses".into()
    })?;
    Ok(format!(
        "P2 V-terminal in Und true, internal terminal false, {} missing tensor(s) flagged",
        r.missing.len()
    ))
}

fn weighted() -> Outcome {
    let (mut problems, mut certs) = (0, 0);
    for cosmos in COSMOSES {
        for seed in 0..60 {
            let mut g = Generator::new(GenConfig::new(seed, cosmos)).map_err(e)?;
            let inst = g.weighted().map_err(e)?;
            let wc = weighted_cone_internal(&inst.weight, &inst.diagram).map_err(e)?;
            for p in &inst.problems {
                let v = weighted_limit_verdicts(p).map_err(e)?;
                ensure(v.agree(), || format!("{} seed {seed}: {v:?}", cosmos.tag()))?;
                let cert = weighted_cone_cross_check(&inst.weight, &inst.diagram, &wc)
                    .map_err(e)?
                    .certificate;
                ensure(cert, || {
                    format!("{} seed {seed}: cone cross-check failed", cosmos.tag())
                })?;
                problems += 1;
                certs += 1;
            }
        }
    }
    ensure(problems >= 100, || format!("only {problems} problems"))?;
    let f = p3();
    let diagonal: Vec<Map> = (0..f.weight.base().len())
        .map(|i| {
            Map::constant(
                f.weight.at(i),
                f.cat.hom(f.candidate, 1),
                f.cat.ident_obj(1),
            )
        })
        .collect();
    let x = WeightedLimitProblem::new(f.weight.clone(), f.diagram.clone(), f.candidate, diagonal)
        .map_err(e)?;
    let v = weighted_limit_verdicts(&x).map_err(e)?;
    for r in [&v.direct, &v.elements, &v.shifted, &v.conical] {
        ensure(r == &Verdict::True, || format!("P3 candidate: {v:?}"))?;
    }
    ensure(v.agree(), || format!("P3 candidate: {v:?}"))?;
    let top = candidate_cones(&f.weight, &f.diagram, f.top).map_err(e)?;
    ensure(top.is_empty(), || "P3 top carries a cone".into())?;
    let wc = weighted_cone_internal(&f.weight, &f.diagram).map_err(e)?;
    ensure(
        weighted_cone_cross_check(&f.weight, &f.diagram, &wc)
            .map_err(e)?
            .certificate,
        || "P3 cross-check failed".into(),
    )?;
    Ok(format!(
        "{problems} problems agree, {certs} cross-check certificates; P3 candidate true on every route, top has no cone (false)"
    ))
}

fn oracles() -> Outcome {
    let mut nats = 0;
    for cosmos in COSMOSES {
        for seed in 0..25 {
            let cfg = GenConfig::new(seed, cosmos).with_caps(2, 4);
            let i = gen_vcategory(&cfg).map_err(e)?;
            let f = gen_copresheaf(&cfg, &i).map_err(e)?;
            let g = gen_copresheaf(&GenConfig::new(seed + 1000, cosmos), &i).map_err(e)?;
            let end = functor_hom(&f, &g).map_err(e)?;
            let raw = oracle_nat_enum(&f, &g).map_err(e)?;
            ensure(raw == global_elements(&end.obj).len(), || {
                format!("{} seed {seed}: end count", cosmos.tag())
            })?;
            nats += 1;
        }
    }
    let mut functors = 0;
    for cosmos in COSMOSES {
        for seed in 0..20 {
            let i = gen_internal(&GenConfig::new(seed, cosmos).with_caps(2, 3)).map_err(e)?;
            let a = gen_internal(&GenConfig::new(seed + 500, cosmos).with_caps(2, 3)).map_err(e)?;
            let raw = match oracle_functor_enum(&i, &a) {
                Ok(n) => n,
                Err(Error::CapExceeded(_)) => continue,
                Err(err) => return Err(e(err)),
            };
            let hom = internal_hom(&i, &a).map_err(e)?;
            ensure(raw == global_elements(hom.cat.a0()).len(), || {
                format!("{} seed {seed}: internal functor count", cosmos.tag())
            })?;
            functors += 1;
        }
    }
    let mut tuples = 0;
    let f = p3();
    let mut shapes = vec![(f.weight.clone(), f.diagram.clone())];
    for cosmos in COSMOSES {
        for seed in 0..12 {
            let inst = Generator::new(GenConfig::new(seed, cosmos).with_caps(3, 3))
                .map_err(e)?
                .weighted()
                .map_err(e)?;
            shapes.push((inst.weight, inst.diagram));
        }
    }
    for (w, g) in &shapes {
        let cosmos = g.target.cosmos();
        let probes: Vec<Obj> = match cosmos {
            Cosmos::FinSet => vec![set(1), set(2)],
            Cosmos::FinCat => vec![cosmos.terminal(), Obj::walking_arrow()],
        };
        for a in 0..g.target.len() {
            for x in &probes {
                let r = match oracle_isoofslices(w, g, a, x) {
                    Ok(r) => r,
                    Err(Error::CapExceeded(_)) => continue,
                    Err(err) => return Err(e(err)),
                };
                let end = functor_hom(w, &hom_copresheaf(g, a).map_err(e)?).map_err(e)?;
                let want = maps_between(x, &end.obj).map_err(e)?.len();
                ensure(r.agrees() && r.enriched.len() == want, || {
                    format!("slice families at apex {a}")
                })?;
                tuples += 1;
            }
        }
    }
    ensure(functors >= 10, || format!("only {functors} functor counts"))?;
    ensure(tuples >= 30, || format!("only {tuples} slice tuples"))?;
    Ok(format!(
        "{nats} end counts, {functors} internal functor counts, {tuples} slice tuples match"
    ))
}

fn transpose_round_trip(
    int: &intcat_core::internal::Internalization,
    h: &InternalFunctor,
) -> Result<bool, String> {
    let und = underlying(&h.target).map_err(e)?;
    let f = transpose_to_vfunctor(int, h, &und).map_err(e)?;
    let back = transpose_to_internal(int, &f, &und).map_err(e)?;
    Ok(back == *h && transpose_to_vfunctor(int, &back, &und).map_err(e)? == f)
}

fn adjunction() -> Outcome {
    let mut transposes = 0;
    for cosmos in COSMOSES {
        for seed in 0..15 {
            let cfg = GenConfig::new(seed, cosmos).with_caps(2, 3);
            let c = gen_vcategory(&cfg).map_err(e)?;
            let int = internalize(&c).map_err(e)?;
            ensure(
                transpose_round_trip(&int, &InternalFunctor::identity(&int.cat))?,
                || format!("{} seed {seed}: identity transpose", cosmos.tag()),
            )?;
            transposes += 1;
            let a = gen_internal(&GenConfig::new(seed + 300, cosmos).with_caps(2, 3)).map_err(e)?;
            let hom = internal_hom(&int.cat, &a).map_err(e)?;
            for k in 0..hom.functor_count().min(3) as u32 {
                ensure(transpose_round_trip(&int, &hom.functor(k))?, || {
                    format!("{} seed {seed}: transpose of functor {k}", cosmos.tag())
                })?;
                transposes += 1;
            }
        }
    }
    ensure(transposes >= 25, || format!("only {transposes} transposes"))?;
    let mut closed = 0;
    for cosmos in COSMOSES {
        for seed in 0..10 {
            let a = gen_internal(&GenConfig::new(seed, cosmos).with_caps(2, 3)).map_err(e)?;
            let x = match cosmos {
                Cosmos::FinSet => set(2),
                Cosmos::FinCat => cosmos.discrete(vec!["p".into(), "q".into()]),
            };
            let generic = internal_hom(&InternalCategory::cst(&x), &a).map_err(e)?;
            let cmp = generic
                .compare_with_hom_cst(&hom_cst(&x, &a).map_err(e)?)
                .map_err(e)?;
            ensure(cmp.validate().is_valid() && cmp.is_iso(), || {
                format!("{} seed {seed}: hom_cst", cosmos.tag())
            })?;
            let (two, generic) = arrow_hom(&a).map_err(e)?;
            let cmp = generic
                .compare_with_arrows(&two, &arrow_object(&a).map_err(e)?)
                .map_err(e)?;
            ensure(cmp.validate().is_valid() && cmp.is_iso(), || {
                format!("{} seed {seed}: arrows", cosmos.tag())
            })?;
            closed += 2;
        }
    }
    let mut ar = 0;
    for cosmos in COSMOSES {
        let exps: Vec<Obj> = match cosmos {
            Cosmos::FinSet => vec![cosmos.terminal()],
            Cosmos::FinCat => vec![cosmos.terminal(), Obj::walking_arrow()],
        };
        for seed in 0..10 {
            let c = gen_vcategory(&GenConfig::new(seed, cosmos).with_caps(2, 3)).map_err(e)?;
            for x in &exps {
                let cmp = compare_ar_x(&c, x).map_err(e)?;
                ensure(cmp.iso, || {
                    format!("{} seed {seed}: Ar_X comparison", cosmos.tag())
                })?;
                ar += 1;
            }
        }
    }
    let chain: VCategory = p3().cat;
    ensure(compare_ar_x(&chain, &set(2)).is_err(), || {
        "Ar_X accepted a disconnected exponent".into()
    })?;
    Ok(format!(
        "{transposes} transposes, {closed} closed-form comparisons, {ar} Ar_X comparisons are isos"
    ))
}

fn cli() -> Outcome {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let bin = Path::new(env!("CARGO_BIN_EXE_intcat"));
    let cases = manifest(&fixtures).map_err(|err| err.to_string())?;
    for name in ["P1", "P2", "P3"] {
        ensure(
            cases
                .iter()
                .any(|c| c.args.last().map(String::as_str) == Some(name)),
            || format!("no golden for {name}"),
        )?;
    }
    let failures: Vec<String> = cases
        .iter()
        .filter_map(|c| check(bin, &fixtures, c).err())
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let code = std::process::Command::new(bin)
        .args(["validate", "no-such-document"])
        .output()
        .map_err(|err| err.to_string())?
        .status
        .code();
    ensure(code == Some(2), || {
        format!("missing document exits {code:?}")
    })?;
    let exits: std::collections::BTreeSet<i32> = cases.iter().map(|c| c.exit).collect();
    Ok(format!(
        "{} goldens byte-identical, exit codes {exits:?} plus 2 on input errors",
        cases.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("equivalence of elements and presheaves", equivalence),
        ("discrete fibrations", fibrations),
        ("representability routes", representation),
        ("terminal object counterexample", counterexample),
        ("weighted limits", weighted),
        ("brute-force oracles", oracles),
        ("adjunction and shortcuts", adjunction),
        ("CLI goldens and exit codes", cli),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({name}; {secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}; {secs:.1}s): {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
