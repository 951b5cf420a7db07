//! One function per subcommand. Each returns plain text, a JSON value and a pass flag.

use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use torschain_core::chains::{chain_from_slicing, verify_slicing};
use torschain_core::chainspace::{
    distance, distance_inf, distance_sup, equivalent, is_chamber_point, perturb_invariance_test, PhaseTag, Side,
};
use torschain_core::greenseq::{brick_labels, enumerate_mgs, GreenSequence};
use torschain_core::hall::{verify_torsion_pair_identity, verify_wallcrossing, HallAlgebra, WallCrossingReport};
use torschain_core::repcat::is_brick;
use torschain_core::{
    enumerate_lattice, hn_filtration, phase_word, ClassSet, Error, Lattice, Phase, Result, StabilityForm, StepChain,
    Universe,
};

use crate::scenario::{parse_members, parse_phase, Scenario};
use crate::{Command, Common};

pub struct Output {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

fn members(u: &Universe, s: ClassSet) -> Value {
    json!(s.iter().map(|i| u.table().name(i)).collect::<Vec<_>>())
}

fn phase(r: Phase) -> Value {
    json!(r.to_string())
}

fn chain_json(u: &Universe, c: &StepChain) -> Value {
    let pieces: Vec<Value> = c
        .breakpoints()
        .windows(2)
        .zip(c.pieces())
        .map(|(w, &x)| json!({"from": phase(w[0]), "to": phase(w[1]), "members": members(u, x)}))
        .collect();
    let cats: Vec<Value> = c
        .nonzero_categories(u)
        .iter()
        .map(|p| json!({"phase": phase(p.phase), "members": members(u, p.members)}))
        .collect();
    json!({"pieces": pieces, "categories": cats})
}

fn describe_categories(u: &Universe, c: &StepChain, text: &mut String) {
    for p in c.nonzero_categories(u) {
        let _ = writeln!(text, "  P_{} = {}", p.phase, u.format_set(p.members));
    }
}

fn lattice(s: &Scenario) -> Result<Lattice> {
    enumerate_lattice(&s.universe)
}

fn report(command: &str, passed: bool, text: String, mut body: Value) -> Output {
    body["command"] = json!(command);
    body["status"] = json!(if passed { "pass" } else { "fail" });
    Output { passed, text, json: body }
}

pub fn run(command: &Command, s: &Scenario) -> Result<Output> {
    match command {
        Command::Indecs { .. } => indecs(s),
        Command::TorsLattice { .. } => tors_lattice(s),
        Command::TorsCheck { torsion, members, .. } => tors_check(s, torsion.as_deref(), members.as_deref()),
        Command::ChainPt { chain, t, .. } => chain_pt(s, chain.as_deref(), t.as_deref()),
        Command::Hn { chain, module, .. } => hn(s, chain, module),
        Command::PhaseWord { chain, module, .. } => word(s, chain, module),
        Command::MgsList { .. } => mgs_list(s),
        Command::MgsBricks { index, .. } => mgs_bricks(s, *index),
        Command::StabChain { form, .. } => stab_chain(s, form.as_deref()),
        Command::StabVerify { form, samples, common } => stab_verify(s, form.as_deref(), *samples, common),
        Command::HallVerify { chain, torsion, bound, .. } => {
            hall_verify(s, chain.as_deref(), torsion.as_deref(), bound.as_deref())
        }
        Command::Dist { chain, other, .. } => dist(s, chain, other),
        Command::ChamberTest { chain, eps, .. } => chamber_test(s, chain.as_deref(), eps.as_deref()),
        Command::SlicingVerify { chain, .. } => slicing_verify(s, chain.as_deref()),
    }
}

fn indecs(s: &Scenario) -> Result<Output> {
    let t = s.universe.table();
    let mut text = format!("{} indecomposables over F_{} ({})\n", t.len(), t.prime().get(), s.quiver);
    let mut rows = Vec::new();
    for i in 0..t.len() {
        let brick = is_brick(t.rep(i))?;
        let dims: Vec<String> = t.dims(i).iter().map(usize::to_string).collect();
        let _ = writeln!(text, "  {:<10} ({}){}", t.name(i), dims.join(","), if brick { "  brick" } else { "" });
        rows.push(json!({"name": t.name(i), "dims": t.dims(i), "brick": brick}));
    }
    Ok(report("indecs", true, text, json!({"quiver": s.quiver, "p": t.prime().get(), "indecomposables": rows})))
}

fn tors_lattice(s: &Scenario) -> Result<Output> {
    let u = &s.universe;
    let lat = lattice(s)?;
    let mgs = enumerate_mgs(&lat);
    let mut text = format!("{} torsion classes, {} maximal green sequences\n", lat.len(), mgs.len());
    let mut rows = Vec::new();
    for (i, &c) in lat.classes().iter().enumerate() {
        let lower: Vec<usize> = lat.covers().iter().filter(|&&(up, _)| up == i).map(|&(_, lo)| lo).collect();
        let _ = writeln!(text, "  T{i} = {}  covers {lower:?}", u.format_set(c));
        rows.push(json!({"index": i, "members": members(u, c), "covers": lower}));
    }
    Ok(report(
        "tors-lattice",
        true,
        text,
        json!({"torsion_class_count": lat.len(), "mgs_count": mgs.len(), "torsion_classes": rows}),
    ))
}

/// Torsion class, torsion-free perpendicular, and a canonical sequence for every module in the guard.
fn tors_check(s: &Scenario, torsion: Option<&str>, literal: Option<&str>) -> Result<Output> {
    let u = &s.universe;
    let targets: Vec<(String, ClassSet)> = match (torsion, literal) {
        (_, Some(list)) => {
            let names: Vec<String> = list.split(',').map(str::to_string).collect();
            vec![(list.to_string(), parse_members(u, &names)?)]
        }
        (Some(name), None) => vec![(name.to_string(), s.torsion_class(name)?)],
        (None, None) => s.torsion_classes.iter().map(|(k, &v)| (k.clone(), v)).collect(),
    };
    if targets.is_empty() {
        return Err(Error::Input("no torsion classes given: pass --torsion or --members, or name some".into()));
    }
    let modules: Vec<_> =
        u.table().classes_up_to_total_dim(s.max_total_dim).into_iter().filter(|c| !c.is_zero()).collect();
    let mut passed = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, t) in targets {
        let is_torsion = u.is_torsion_class(t);
        let f = u.perp(t);
        let pair = is_torsion && u.is_torsion_free_class(f) && u.left_perp(f) == t;
        let mut ses_failures = Vec::new();
        if is_torsion {
            for class in &modules {
                match u.torsion_subobject(&u.table().direct_sum(class), t) {
                    Ok(_) => {}
                    Err(Error::Internal(_)) => ses_failures.push(u.table().format_class(class)),
                    Err(e) => return Err(e),
                }
            }
        }
        let ok = is_torsion && pair && ses_failures.is_empty();
        passed &= ok;
        let _ = writeln!(text, "{name}: {}", u.format_set(t));
        if is_torsion {
            let _ = writeln!(text, "  torsion class; F = {}", u.format_set(f));
            let _ = writeln!(text, "  torsion pair {}", if pair { "holds" } else { "FAILS" });
            let _ = writeln!(text, "  canonical sequences: {} modules, {} failures", modules.len(), ses_failures.len());
        } else {
            let _ = writeln!(text, "  not a torsion class; closure {}", u.format_set(u.tors_closure(t)));
        }
        rows.push(json!({
            "name": name,
            "members": members(u, t),
            "torsion_class": is_torsion,
            "closure": members(u, u.tors_closure(t)),
            "torsion_free_part": members(u, f),
            "torsion_pair": pair,
            "modules_checked": if is_torsion { modules.len() } else { 0 },
            "sequence_failures": ses_failures,
        }));
    }
    Ok(report("tors-check", passed, text, json!({"classes": rows})))
}

fn chain_pt(s: &Scenario, chain: Option<&str>, t: Option<&str>) -> Result<Output> {
    let u = &s.universe;
    let t = t.map(parse_phase).transpose()?;
    if let Some(t) = t {
        if t < Phase::from(0) || t > Phase::from(1) {
            return Err(Error::Input(format!("--t {t} is outside [0, 1]")));
        }
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, c) in s.selected_chains(chain)? {
        let _ = writeln!(text, "{name}: {}", c.describe(u));
        let mut row = chain_json(u, c);
        row["name"] = json!(name);
        if let Some(t) = t {
            let p = c.phase_category(u, t);
            let _ = writeln!(text, "  P_{t} = {}", u.format_set(p));
            row["at"] = json!({"phase": phase(t), "members": members(u, p)});
        } else {
            describe_categories(u, c, &mut text);
        }
        rows.push(row);
    }
    Ok(report("chain-pt", true, text, json!({"chains": rows})))
}

fn hn(s: &Scenario, chain: &str, module: &str) -> Result<Output> {
    let u = &s.universe;
    let c = s.chain(chain)?;
    let class = u.table().parse_class(module)?;
    let m = u.table().direct_sum(&class);
    let f = hn_filtration(u, c, &m)?;
    let steps: Vec<String> = f.steps().map(|(x, r)| format!("{} @ {r}", u.table().format_class(x))).collect();
    let text = format!("filtration [{}]\n", steps.join(", "));
    let factors: Vec<Value> = f
        .terms
        .iter()
        .zip(f.steps())
        .map(
            |(term, (x, r))| json!({"factor": u.table().format_class(x), "phase": phase(*r), "term_dims": term.dims()}),
        )
        .collect();
    Ok(report("hn", true, text, json!({"chain": chain, "module": u.table().format_class(&class), "factors": factors})))
}

fn word(s: &Scenario, chain: &str, module: &str) -> Result<Output> {
    let u = &s.universe;
    let class = u.table().parse_class(module)?;
    let w = phase_word(u, s.chain(chain)?, &u.table().direct_sum(&class))?;
    let letters: Vec<Value> = w.0.iter().map(|&r| phase(r)).collect();
    Ok(report(
        "phase-word",
        true,
        format!("{w}\n"),
        json!({"chain": chain, "module": u.table().format_class(&class), "word": letters}),
    ))
}

fn sequences(s: &Scenario) -> Result<Vec<GreenSequence>> {
    Ok(enumerate_mgs(&lattice(s)?))
}

fn mgs_list(s: &Scenario) -> Result<Output> {
    let u = &s.universe;
    let seqs = sequences(s)?;
    let mut text = format!("{} maximal green sequences\n", seqs.len());
    let mut rows = Vec::new();
    for (i, g) in seqs.iter().enumerate() {
        let names: Vec<String> = g.classes().iter().map(|&c| u.format_set(c)).collect();
        let _ = writeln!(text, "  {i}: {}", names.join(" > "));
        let classes: Vec<Value> = g.classes().iter().map(|&c| members(u, c)).collect();
        rows.push(json!({"index": i, "length": g.len(), "classes": classes}));
    }
    Ok(report("mgs-list", true, text, json!({"count": seqs.len(), "sequences": rows})))
}

fn mgs_bricks(s: &Scenario, index: Option<usize>) -> Result<Output> {
    let u = &s.universe;
    let seqs = sequences(s)?;
    let chosen: Vec<usize> = match index {
        Some(i) if i >= seqs.len() => {
            return Err(Error::Input(format!("--index {i} out of range, there are {} sequences", seqs.len())))
        }
        Some(i) => vec![i],
        None => (0..seqs.len()).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in chosen {
        let labels = brick_labels(u, &seqs[i])?;
        let names: Vec<&str> = labels.bricks.iter().map(|&b| u.table().name(b)).collect();
        let cv: Vec<String> = labels
            .c_vectors
            .iter()
            .map(|v| format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(text, "  {i}: bricks {}  c-vectors {}", names.join(", "), cv.join(" "));
        rows.push(json!({"index": i, "bricks": names, "c_vectors": labels.c_vectors}));
    }
    Ok(report("mgs-bricks", true, text, json!({"sequences": rows})))
}

fn selected_forms<'a>(s: &'a Scenario, form: Option<&str>) -> Result<Vec<(String, &'a StabilityForm)>> {
    match form {
        Some(n) => Ok(vec![(n.to_string(), s.form(n)?)]),
        None => Ok(s.forms.iter().map(|(k, v)| (k.clone(), v)).collect()),
    }
}

fn require_forms<T>(forms: &[T]) -> Result<()> {
    if forms.is_empty() {
        return Err(Error::Input("no stability forms: name some in the scenario".into()));
    }
    Ok(())
}

fn stab_chain(s: &Scenario, form: Option<&str>) -> Result<Output> {
    let u = &s.universe;
    let mut text = String::new();
    let mut rows = Vec::new();
    let forms = selected_forms(s, form)?;
    require_forms(&forms)?;
    for (name, f) in forms {
        let c = f.chain(u)?;
        let phases: Vec<Value> = f.realized_phases(u).into_iter().map(phase).collect();
        let _ = writeln!(text, "{name}: theta {:?} rho {:?}", f.theta(), f.rho());
        let _ = writeln!(text, "  chain {}", c.describe(u));
        describe_categories(u, &c, &mut text);
        let mut row = chain_json(u, &c);
        row["name"] = json!(name);
        row["theta"] = json!(f.theta());
        row["rho"] = json!(f.rho());
        row["realized_phases"] = json!(phases);
        rows.push(row);
    }
    Ok(report("stab-chain", true, text, json!({"forms": rows})))
}

/// `0 <= θ_i <= ρ_i` with `ρ_i` in `1..=3`: admissible by construction.
fn random_form(u: &Universe, rng: &mut ChaCha8Rng) -> Result<StabilityForm> {
    let n = u.table().quiver().vertex_count();
    let rho: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let theta: Vec<i64> = rho.iter().map(|&r| rng.gen_range(0..=r)).collect();
    StabilityForm::new(u, theta, rho)
}

fn stab_verify(s: &Scenario, form: Option<&str>, samples: usize, common: &Common) -> Result<Output> {
    let u = &s.universe;
    let mut forms: Vec<(String, StabilityForm)> =
        selected_forms(s, form)?.into_iter().map(|(k, f)| (k, f.clone())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    for i in 0..samples {
        forms.push((format!("sample{i}"), random_form(u, &mut rng)?));
    }
    require_forms(&forms)?;
    let mut passed = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, f) in &forms {
        let r = f.verify_semistable_equality(u, s.max_total_dim)?;
        passed &= r.passed();
        let _ = writeln!(
            text,
            "{name} theta {:?} rho {:?}: {} ({} modules, {} phase mismatches, {} HN violations)",
            f.theta(),
            f.rho(),
            if r.passed() { "pass" } else { "FAIL" },
            r.modules_checked,
            r.phase_mismatches.len(),
            r.hn_violations.len()
        );
        let mismatches: Vec<Value> = r
            .phase_mismatches
            .iter()
            .map(|&(t, p, e)| json!({"phase": phase(t), "category": members(u, p), "semistables": members(u, e)}))
            .collect();
        let hn: Vec<String> = r.hn_violations.iter().map(|c| u.table().format_class(c)).collect();
        rows.push(json!({
            "name": name, "theta": f.theta(), "rho": f.rho(), "passed": r.passed(),
            "modules_checked": r.modules_checked, "phase_mismatches": mismatches, "hn_violations": hn,
        }));
    }
    Ok(report("stab-verify", passed, text, json!({"seed": common.seed, "forms": rows})))
}

fn parse_bound(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Input(format!("--bound `{text}` is not a list like 2,2"))))
        .collect()
}

fn wall_json(u: &Universe, r: &WallCrossingReport) -> Value {
    let factors: Vec<Value> =
        r.factors.iter().map(|&(t, p)| json!({"phase": phase(t), "members": members(u, p)})).collect();
    let mismatches: Vec<Value> = r
        .mismatches
        .iter()
        .map(|(m, want, got)| {
            json!({"class": u.table().format_class(m), "expected": want.to_string(), "product": got.to_string()})
        })
        .collect();
    json!({
        "passed": r.passed(), "factors": factors, "mismatches": mismatches,
        "coefficients_zero_one": r.coefficients_zero_one, "classes_compared": r.classes_compared,
    })
}

fn hall_verify(s: &Scenario, chain: Option<&str>, torsion: Option<&str>, bound: Option<&str>) -> Result<Output> {
    let u = &s.universe;
    let bound = match bound {
        Some(b) => parse_bound(b)?,
        None => s
            .bounds
            .get("hall")
            .cloned()
            .ok_or_else(|| Error::Input("no --bound given and the scenario has no `hall` bound".into()))?,
    };
    let alg = HallAlgebra::new(u.table(), &bound)?;
    let mut runs = Vec::new();
    if let Some(t) = torsion {
        runs.push((
            t.to_string(),
            "torsion pair identity",
            verify_torsion_pair_identity(u, &alg, s.torsion_class(t)?)?,
        ));
    } else {
        for (name, c) in s.selected_chains(chain)? {
            runs.push((name, "wall-crossing identity", verify_wallcrossing(u, &alg, c)?));
        }
    }
    let mut passed = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, what, r) in &runs {
        passed &= r.passed();
        let verdict = if r.passed() { "holds" } else { "FAILS" };
        let _ = writeln!(text, "{name}: {what} {verdict} ({} classes within bound)", r.classes_compared);
        for (m, want, got) in &r.mismatches {
            let _ = writeln!(text, "  [{}]: expected {want}, product {got}", u.table().format_class(m));
        }
        let mut row = wall_json(u, r);
        row["name"] = json!(name);
        rows.push(row);
    }
    Ok(report("hall-verify", passed, text, json!({"bound": bound, "runs": rows})))
}

fn dist(s: &Scenario, a: &str, b: &str) -> Result<Output> {
    let u = &s.universe;
    let (ca, cb) = (s.chain(a)?, s.chain(b)?);
    // `distance` already raises if the two formulas disagree; report both anyway
    let d = distance(u, ca, cb)?;
    let sup = distance_sup(u, ca, cb)?.value;
    let inf = distance_inf(u, ca, cb)?;
    let side = match d.witness.1 {
        Side::Minus => "minus",
        Side::Plus => "plus",
    };
    let witness = u.table().name(d.witness.0);
    let text = format!("d({a}, {b}) = {}  (attained by {witness}, {side} side)\n", d.value);
    Ok(report(
        "dist",
        true,
        text,
        json!({"chains": [a, b], "distance": phase(d.value), "sup_formula": phase(sup), "inf_formula": phase(inf),
               "witness": {"indecomposable": witness, "side": side}}),
    ))
}

fn tag(t: PhaseTag) -> &'static str {
    match t {
        PhaseTag::Zero => "0",
        PhaseTag::Interior => "(0,1)",
        PhaseTag::One => "1",
    }
}

fn default_eps(c: &StepChain) -> Phase {
    let gap = c.breakpoints().windows(2).map(|w| w[1] - w[0]).min().expect("at least one piece");
    (gap / 3).min(Ratio::new(1, 20))
}

/// A chamber point must be invariant under every perturbation; anything else must show a witness.
fn chamber_test(s: &Scenario, chain: Option<&str>, eps: Option<&str>) -> Result<Output> {
    let u = &s.universe;
    let lat = lattice(s)?;
    let eps = eps.map(parse_phase).transpose()?;
    let mut passed = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, c) in s.selected_chains(chain)? {
        let e = eps.unwrap_or_else(|| default_eps(c));
        let chamber = is_chamber_point(u, c, &lat);
        let r = perturb_invariance_test(u, c, e, &lat)?;
        let agree = chamber == r.invariant();
        passed &= agree;
        let kind = if chamber { "chamber (maximal green sequence)" } else { "wall point" };
        let n = r.perturbations_checked;
        let seen = if r.invariant() {
            format!("invariant under {n} perturbations")
        } else {
            format!("witness at perturbation {n}")
        };
        let _ = writeln!(text, "{name}: {kind}; {seen}, radius {e}");
        let mut row = json!({
            "name": name, "eps": phase(e), "chamber": chamber, "invariant": r.invariant(), "agree": agree,
            "perturbations_checked": r.perturbations_checked, "modules_checked": r.modules_checked,
        });
        if let Some(w) = &r.witness {
            let fmt = |p: &[(torschain_core::ModClass, PhaseTag)]| -> Vec<String> {
                p.iter().map(|(x, t)| format!("{} @ {}", u.table().format_class(x), tag(*t))).collect()
            };
            let _ =
                writeln!(text, "  witness: {} under {}", u.table().format_class(&w.module), w.perturbation.describe(u));
            let _ = writeln!(text, "    before [{}]", fmt(&w.before).join(", "));
            let _ = writeln!(text, "    after  [{}]", fmt(&w.after).join(", "));
            row["witness"] = json!({
                "module": u.table().format_class(&w.module),
                "perturbation": chain_json(u, &w.perturbation),
                "before": fmt(&w.before), "after": fmt(&w.after),
            });
        }
        if !agree {
            let _ = writeln!(text, "  DISAGREEMENT between the cover test and the perturbation test");
        }
        rows.push(row);
    }
    Ok(report("chamber-test", passed, text, json!({"chains": rows})))
}

fn slicing_verify(s: &Scenario, chain: Option<&str>) -> Result<Output> {
    let u = &s.universe;
    let mut passed = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, c) in s.selected_chains(chain)? {
        let r = verify_slicing(u, c, s.max_total_dim)?;
        let cats: Vec<(Phase, ClassSet)> = c.nonzero_categories(u).iter().map(|p| (p.phase, p.members)).collect();
        let round_trip = equivalent(u, c, &chain_from_slicing(u, &cats)?);
        let ok = r.passed() && round_trip;
        passed &= ok;
        let _ = writeln!(
            text,
            "{name}: {} ({} modules, {} Hom violations, {} filtration violations, round trip {})",
            if ok { "pass" } else { "FAIL" },
            r.modules_checked,
            r.hom_violations.len(),
            r.filtration_violations.len(),
            if round_trip { "equivalent" } else { "NOT equivalent" }
        );
        let hom: Vec<Value> = r
            .hom_violations
            .iter()
            .map(|&(a, x, b, y)| json!({"from_phase": phase(a), "from": u.table().name(x), "to_phase": phase(b), "to": u.table().name(y)}))
            .collect();
        let filt: Vec<Value> = r
            .filtration_violations
            .iter()
            .map(|v| json!({"module": u.table().format_class(&v.module), "found": v.found, "algorithm_matches": v.algorithm_matches}))
            .collect();
        rows.push(json!({
            "name": name, "passed": ok, "modules_checked": r.modules_checked, "round_trip_equivalent": round_trip,
            "hom_violations": hom, "filtration_violations": filt,
        }));
    }
    Ok(report("slicing-verify", passed, text, json!({"chains": rows})))
}
