use std::fmt::Write;

use orthodual::frame::OrthoFrame;
use orthodual::lattice::{to_dot, Catalog};
use orthodual::morphism::{
    dualize_hom, dualize_map, square_lattice_report, square_space_report, Morphism, MorphismDoc,
};
use orthodual::qlogic::{
    check_derivation, consequence_alg, consequence_top, eval_alg, eval_top, prove_with, AlgCountermodel,
    Consequence, Derivation, ProofSearch, SearchOptions, SpaceValuation, TopCountermodel, Valuation,
};
use orthodual::spectral::{build_dual_space_with, realization_map_with, representation_iso_with, SpaceDoc};
use orthodual::{Error, FiniteOrtholattice, Limits, OrthoSpace, Outcome, Report};
use serde_json::{json, Value};

use crate::input::{self, Failure, Res};
use crate::{CatalogCmd, CheckCmd, Cli, Command, ExportCmd, LogicCmd, VerifyCmd};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
    /// Set when the command failed before producing a report.
    pub error: Option<String>,
}

fn done(json: Value, text: String, ok: bool) -> Res<Output> {
    Ok(Output {
        json,
        text,
        code: if ok { 0 } else { 1 },
        error: None,
    })
}

pub fn run(cli: &Cli) -> Output {
    match dispatch(cli) {
        Ok(out) => out,
        Err(f) => Output {
            json: json!({"error": {"kind": f.kind(), "message": f.message(), "exit_code": f.code()}}),
            text: String::new(),
            code: f.code(),
            error: Some(f.message()),
        },
    }
}

fn dispatch(cli: &Cli) -> Res<Output> {
    let limits = cli.limits();
    match &cli.command {
        Command::Catalog(CatalogCmd::List { max_size }) => catalog_list(*max_size),
        Command::Catalog(CatalogCmd::Show { name }) => catalog_show(name, &limits),
        Command::Check(CheckCmd::Lattice { input }) => check_lattice(input, &limits),
        Command::Check(CheckCmd::Frame { input }) => check_frame(input, &limits),
        Command::Check(CheckCmd::Space { input }) => check_space(input, &limits),
        Command::Dualize { lattice, out } => dualize(lattice, out.as_deref(), &limits),
        Command::Verify(VerifyCmd::Duality { lattice }) => verify_duality(lattice, &limits),
        Command::Verify(VerifyCmd::Square { hom }) => verify_square(hom, &limits),
        Command::Logic(cmd) => logic(cmd, &limits),
        Command::Export(ExportCmd::Dot { lattice, out }) => export_dot(lattice, out.as_deref(), &limits),
    }
}

fn write_file(path: &std::path::Path, contents: &str) -> Res<()> {
    std::fs::write(path, contents).map_err(|e| Failure::Usage(format!("cannot write `{}`: {e}", path.display())))
}

// ------------------------------------------------------------------ catalog

fn catalog_entries(max_size: usize) -> Vec<Catalog> {
    let mut out = vec![Catalog::O2x2, Catalog::O6, Catalog::Oml6];
    for c in Catalog::orthomodular_up_to(max_size) {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn catalog_list(max_size: usize) -> Res<Output> {
    let mut rows = Vec::new();
    let mut text = String::new();
    writeln!(text, "{:<12} {:>8}  {:<12} distributive", "name", "elements", "orthomodular").unwrap();
    for c in catalog_entries(max_size) {
        let l = c.build(usize::MAX)?;
        let (om, d) = (l.is_orthomodular(), l.is_distributive());
        writeln!(text, "{:<12} {:>8}  {:<12} {}", c.to_string(), l.len(), yes(om), yes(d)).unwrap();
        rows.push(json!({"name": c.to_string(), "elements": l.len(), "orthomodular": om, "distributive": d}));
    }
    done(json!({ "catalog": rows }), text, true)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn catalog_show(name: &str, limits: &Limits) -> Res<Output> {
    let c: Catalog = name.parse()?;
    let l = c.build(limits.max_lattice)?;
    let mut text = String::new();
    writeln!(text, "{} ({} elements)", l.name(), l.len()).unwrap();
    let labels: Vec<&str> = l.elements().map(|a| l.label(a)).collect();
    let w = labels.iter().map(|s| s.len()).max().unwrap_or(1).max(1);
    writeln!(text, "orthocomplement:").unwrap();
    for a in l.elements() {
        writeln!(text, "  −{:<w$} = {}", labels[a], labels[l.ortho(a)]).unwrap();
    }
    writeln!(text, "meet:").unwrap();
    write!(text, "  {:>w$} |", "·").unwrap();
    for s in &labels {
        write!(text, " {s:>w$}").unwrap();
    }
    writeln!(text).unwrap();
    for a in l.elements() {
        write!(text, "  {:>w$} |", labels[a]).unwrap();
        for b in l.elements() {
            write!(text, " {:>w$}", labels[l.meet(a, b)]).unwrap();
        }
        writeln!(text).unwrap();
    }
    let doc: orthodual::lattice::LatticeDoc = l.into();
    done(serde_json::to_value(doc).map_err(Error::from)?, text, true)
}

// ------------------------------------------------------------------ check

fn labelled(l: &FiniteOrtholattice, witness: &[usize]) -> String {
    let parts: Vec<&str> = witness.iter().map(|&a| l.label(a)).collect();
    format!("({})", parts.join(", "))
}

fn classification(l: &FiniteOrtholattice, name: &str, w: Option<Vec<usize>>) -> (Value, String) {
    let text = match &w {
        None => format!("{name}: pass"),
        Some(w) => format!("{name}: FAIL {}", labelled(l, w)),
    };
    let labels: Option<Vec<&str>> = w.as_ref().map(|w| w.iter().map(|&a| l.label(a)).collect());
    let outcome = Outcome::from_witness(w);
    let mut v = serde_json::to_value(&outcome).expect("outcome serializes");
    if let Some(labels) = labels {
        v["labels"] = json!(labels);
    }
    (v, text)
}

fn check_lattice(input: &str, limits: &Limits) -> Res<Output> {
    let doc = input::lattice_doc(input, limits)?;
    orthodual_cap("lattice", doc.elements.len(), limits.max_lattice)?;
    let report = doc.condition_report()?;
    let ok = report.all_passed();
    let mut text = report.to_string();
    writeln!(text, "ortholattice: {}", if ok { "pass" } else { "FAIL" }).unwrap();
    let mut classes = Value::Null;
    if ok {
        let l = FiniteOrtholattice::try_from(doc)?;
        let (om, om_text) = classification(&l, "orthomodular", l.check_orthomodular().err().map(|w| vec![w.a, w.b]));
        let (d, d_text) = classification(&l, "distributive", l.check_distributive().err().map(|w| w.to_vec()));
        writeln!(text, "{om_text}\n{d_text}").unwrap();
        classes = json!({"orthomodular": om, "distributive": d});
    }
    done(
        json!({"report": report, "ortholattice": ok, "classification": classes}),
        text,
        ok,
    )
}

fn orthodual_cap(what: &'static str, size: usize, cap: usize) -> Res<()> {
    if size > cap {
        return Err(Error::SizeCapExceeded {
            what,
            size: size as u128,
            cap: cap as u128,
        }
        .into());
    }
    Ok(())
}

/// A space JSON file, or the dual space of a catalog lattice.
fn space(input: &str, limits: &Limits) -> Res<OrthoSpace> {
    if std::path::Path::new(input).is_file() {
        let doc: SpaceDoc = input::read_json(input)?;
        orthodual_cap("space", doc.points, limits.max_points)?;
        return Ok(doc.into_space(limits)?);
    }
    let l = input::lattice(input, limits)?;
    Ok(build_dual_space_with(&l, limits)?.into_space())
}

fn check_frame(input: &str, limits: &Limits) -> Res<Output> {
    let frame: OrthoFrame = if std::path::Path::new(input).is_file() {
        let doc: orthodual::frame::FrameDoc = input::read_json(input)?;
        orthodual_cap("frame", doc.points, limits.max_points)?;
        doc.into_frame()?
    } else {
        space(input, limits)?.frame().clone()
    };
    let report = frame.check();
    let ok = report.all_passed();
    done(json!({"report": report, "passed": ok}), report.to_string(), ok)
}

fn check_space(input: &str, limits: &Limits) -> Res<Output> {
    let x = space(input, limits)?;
    let r = x.check();
    let ok = r.all_passed();
    done(json!({"frame": r.frame, "space": r.space, "passed": ok}), r.to_string(), ok)
}

// ------------------------------------------------------------------ duality

fn dualize(input: &str, out: Option<&std::path::Path>, limits: &Limits) -> Res<Output> {
    let l = input::lattice(input, limits)?;
    let d = build_dual_space_with(&l, limits)?;
    let doc = SpaceDoc::from(d.space());
    let body = serde_json::to_string_pretty(&doc).map_err(Error::from)?;
    match out {
        Some(path) => {
            write_file(path, &(body + "\n"))?;
            let text = format!("wrote dual space of {} ({} points) to {}\n", l.name(), d.space().len(), path.display());
            done(json!({"written": path.display().to_string(), "points": d.space().len()}), text, true)
        }
        None => done(serde_json::to_value(&doc).map_err(Error::from)?, body + "\n", true),
    }
}

fn verify_duality(input: &str, limits: &Limits) -> Res<Output> {
    let l = input::lattice(input, limits)?;
    let rep = representation_iso_with(&l, limits)?;
    let real = realization_map_with(rep.dual.space(), limits)?;
    let (h_ok, f_ok) = (rep.report.all_passed(), real.report.all_passed());
    let mut text = String::new();
    if h_ok {
        writeln!(text, "h: isomorphism verified ({} elements)", l.len()).unwrap();
    } else {
        write!(text, "h: FAILED\n{}", rep.report).unwrap();
    }
    if f_ok {
        writeln!(text, "f: relational homeomorphism verified ({} points)", rep.dual.space().len()).unwrap();
    } else {
        write!(text, "f: FAILED\n{}", real.report).unwrap();
    }
    done(
        json!({"representation": rep.report, "realization": real.report, "passed": h_ok && f_ok}),
        text,
        h_ok && f_ok,
    )
}

fn verify_square(path: &str, limits: &Limits) -> Res<Output> {
    let doc: MorphismDoc = input::read_json(path)?;
    let mut reports: Vec<Report> = Vec::new();
    match doc.resolve(limits)? {
        Morphism::Hom(phi) => {
            let r = square_lattice_report(&phi, limits)?;
            let ok = r.all_passed();
            reports.push(r);
            if ok {
                reports.push(square_space_report(&dualize_hom(&phi)?, limits)?);
            }
        }
        Morphism::Map(psi) => {
            let r = square_space_report(&psi, limits)?;
            let ok = r.all_passed();
            reports.push(r);
            if ok {
                reports.push(square_lattice_report(&dualize_map(&psi)?, limits)?);
            }
        }
    }
    let ok = reports.len() == 2 && reports.iter().all(Report::all_passed);
    let mut text: String = reports.iter().map(|r| r.to_string()).collect();
    writeln!(text, "squares: {}", if ok { "both commute" } else { "FAIL" }).unwrap();
    done(json!({"reports": reports, "passed": ok}), text, ok)
}

// ------------------------------------------------------------------ logic

fn render(d: &Derivation, depth: usize, out: &mut String) {
    writeln!(out, "{:indent$}[{}] {}", "", d.rule, d.conclusion, indent = 2 * depth).unwrap();
    for p in &d.premises {
        render(p, depth + 1, out);
    }
}

fn alg_verdict(c: &Consequence<AlgCountermodel>) -> String {
    match c {
        Consequence::HoldsOverFamily { models, valuations } => {
            format!("holds over {models} lattices ({valuations} valuations)")
        }
        Consequence::Countermodel(m) => {
            let l = &m.lattice;
            let vals: Vec<String> = m.valuation.iter().map(|(p, &a)| format!("p{p}={}", l.label(a))).collect();
            format!(
                "countermodel in {}: {} (lhs {}, rhs {})",
                l.name(),
                vals.join(", "),
                l.label(m.lhs),
                l.label(m.rhs)
            )
        }
        Consequence::Inconclusive { sampled, seed } => {
            format!("inconclusive: no countermodel in {sampled} sampled valuations (seed {seed})")
        }
    }
}

fn top_verdict(c: &Consequence<TopCountermodel>) -> String {
    match c {
        Consequence::HoldsOverFamily { models, valuations } => {
            format!("holds over {models} spaces ({valuations} valuations)")
        }
        Consequence::Countermodel(m) => {
            let vals: Vec<String> = m.valuation.iter().map(|(p, u)| format!("p{p}={:?}", u.to_vec())).collect();
            format!(
                "countermodel in {}: {} (lhs {:?}, rhs {:?})",
                m.space.name(),
                vals.join(", "),
                m.lhs.to_vec(),
                m.rhs.to_vec()
            )
        }
        Consequence::Inconclusive { sampled, seed } => {
            format!("inconclusive: no countermodel in {sampled} sampled valuations (seed {seed})")
        }
    }
}

fn logic(cmd: &LogicCmd, limits: &Limits) -> Res<Output> {
    match cmd {
        LogicCmd::Prove {
            alpha,
            beta,
            depth,
            prune,
            family,
        } => {
            let (a, b) = (input::formula(alpha)?, input::formula(beta)?);
            let fam = if *prune {
                Some(input::family(&family.family, family.max_size, limits)?)
            } else {
                None
            };
            let mut opts = SearchOptions::new(*depth);
            opts.prune_with = fam.as_deref();
            let r = prove_with(&a, &b, &opts);
            let mut text = String::new();
            let found = match &r {
                ProofSearch::Found { derivation } => {
                    writeln!(text, "derivation of height {} found:", derivation.height()).unwrap();
                    render(derivation, 1, &mut text);
                    true
                }
                ProofSearch::NotFoundWithinBound { depth, complete } => {
                    let how = if *complete { "search complete" } else { "step budget exhausted" };
                    writeln!(text, "no derivation of height ≤ {depth} ({how})").unwrap();
                    false
                }
            };
            done(serde_json::to_value(&r).map_err(Error::from)?, text, found)
        }
        LogicCmd::CheckProof { file } => {
            let d: Derivation = input::read_json(file)?;
            let r = check_derivation(&d);
            let text = match &r {
                Ok(()) => format!("valid derivation of {} (height {}, {} nodes)\n", d.conclusion, d.height(), d.node_count()),
                Err(v) => format!("invalid: {v}\n"),
            };
            done(
                json!({
                    "valid": r.is_ok(),
                    "violation": r.as_ref().err(),
                    "conclusion": d.conclusion,
                    "height": d.height(),
                    "nodes": d.node_count(),
                }),
                text,
                r.is_ok(),
            )
        }
        LogicCmd::Eval {
            formula,
            model,
            valuation,
        } => {
            let f = input::formula(formula)?;
            let l = input::lattice(model, limits)?;
            let pairs = input::valuation(valuation, &l)?;
            let v: Valuation = pairs.iter().copied().collect();
            let value = eval_alg(&f, &l, &v)?;
            let dual = build_dual_space_with(&l, limits)?;
            let w: SpaceValuation = pairs.iter().map(|&(p, a)| (p, dual.h(a))).collect();
            let u = eval_top(&f, dual.space(), &w)?;
            let agrees = u == dual.h(value);
            let text = format!(
                "algebraic: {}\ntopological: {:?} ({})\n",
                l.label(value),
                u.to_vec(),
                if agrees { "= h of the algebraic value" } else { "DISAGREES with h" }
            );
            let labels: serde_json::Map<String, Value> =
                pairs.iter().map(|&(p, a)| (format!("p{p}"), json!(l.label(a)))).collect();
            done(
                json!({
                    "formula": f,
                    "model": l.name(),
                    "valuation": labels,
                    "algebraic": l.label(value),
                    "topological": u.to_vec(),
                    "agrees_with_h": agrees,
                }),
                text,
                agrees,
            )
        }
        LogicCmd::Consequence { alpha, beta, family } => {
            let (a, b) = (input::formula(alpha)?, input::formula(beta)?);
            let fam = input::family(&family.family, family.max_size, limits)?;
            let spaces = fam
                .iter()
                .map(|l| Ok(build_dual_space_with(l, limits)?.into_space()))
                .collect::<Res<Vec<_>>>()?;
            let alg = consequence_alg(&a, &b, &fam, limits, family.seed);
            let top = consequence_top(&a, &b, &spaces, limits, family.seed);
            let ok = alg.holds() && top.holds();
            let agree = alg.holds() == top.holds();
            let text = format!(
                "{a} ⊨ {b}\nalgebraic: {}\ntopological: {}\n",
                alg_verdict(&alg),
                top_verdict(&top)
            );
            done(
                json!({
                    "sequent": [a, b],
                    "algebraic": alg,
                    "topological": top,
                    "agree": agree,
                }),
                text,
                ok,
            )
        }
        LogicCmd::Countermodel { alpha, beta, family } => {
            let (a, b) = (input::formula(alpha)?, input::formula(beta)?);
            let fam = input::family(&family.family, family.max_size, limits)?;
            let alg = consequence_alg(&a, &b, &fam, limits, family.seed);
            match &alg {
                Consequence::Countermodel(m) => {
                    let v = serde_json::to_value(m).map_err(Error::from)?;
                    let text = serde_json::to_string_pretty(&v).map_err(Error::from)? + "\n";
                    done(v, text, true)
                }
                _ => done(
                    serde_json::to_value(&alg).map_err(Error::from)?,
                    format!("no countermodel: {}\n", alg_verdict(&alg)),
                    false,
                ),
            }
        }
    }
}

// ------------------------------------------------------------------ export

fn export_dot(input: &str, out: Option<&std::path::Path>, limits: &Limits) -> Res<Output> {
    let l = input::lattice(input, limits)?;
    let dot = to_dot(&l);
    match out {
        Some(path) => {
            write_file(path, &dot)?;
            done(
                json!({"written": path.display().to_string()}),
                format!("wrote Hasse diagram of {} to {}\n", l.name(), path.display()),
                true,
            )
        }
        None => done(json!({ "dot": dot }), dot, true),
    }
}
