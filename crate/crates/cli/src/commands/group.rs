use kercal_core::braid::{homogenize, BraidWord, QmSpec};
use kercal_core::permgroup::{
    build_group, conj_norm, qi_diagnostic, tsuboi_metric, verify_submultiplicativity, GroupTable, SymClass,
};
use kercal_core::Permutation;
use serde::Serialize;

use super::Outcome;
use crate::config::Params;
use crate::output::{csv_with_hash, json_bytes, sha256_hex, write_atomic, Envelope};
use crate::CliError;

fn group(p: &Params) -> Result<GroupTable, CliError> {
    let degree: usize = p.get("degree")?;
    let alternating = match p.get::<String>("group")?.as_str() {
        "alternating" => true,
        "symmetric" => false,
        other => {
            return Err(CliError::Config(format!(
                "group: expected alternating or symmetric, got {other:?}"
            )))
        }
    };
    Ok(build_group(degree, alternating)?)
}

fn find_class(g: &GroupTable, text: &str) -> Result<SymClass, CliError> {
    if text.trim_start().starts_with('(') {
        let perm = Permutation::parse_cycles(text, g.degree())?;
        let idx = g.index_of(&perm).ok_or(kercal_core::Error::NotInGroup)?;
        return g
            .sym_class_of(idx)
            .ok_or_else(|| CliError::Config("base-class: the identity generates nothing".into()));
    }
    let mut lens = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Config(format!("base-class: cannot parse cycle type {text:?}")))?;
    let moved: usize = lens.iter().sum();
    if moved > g.degree() {
        return Err(CliError::Config(format!(
            "base-class: cycle type {text:?} exceeds the degree"
        )));
    }
    lens.extend(std::iter::repeat_n(1, g.degree() - moved));
    lens.sort_unstable_by(|a, b| b.cmp(a));
    let matches: Vec<SymClass> = g
        .sym_classes()
        .into_iter()
        .filter(|c| c.representative.cycle_type() == lens)
        .collect();
    match matches.len() {
        0 => Err(CliError::Config(format!("base-class: no class of cycle type {text:?}"))),
        1 => Ok(matches.into_iter().next().expect("one match")),
        _ => Err(CliError::Config(format!(
            "base-class: cycle type {text:?} splits into several classes; give a representative in cycle notation"
        ))),
    }
}

#[derive(Serialize)]
struct MetricSummary {
    degree: usize,
    order: usize,
    classes: usize,
    triples_checked: usize,
    submultiplicativity_violations: usize,
}

pub fn group_metric(p: &Params) -> Result<Outcome, CliError> {
    let g = group(p)?;
    let hash = sha256_hex(&p.canonical()?);
    let out = p.path("out")?;
    if let Some(text) = p.opt::<String>("base-class")? {
        let base = find_class(&g, &text)?;
        let norms = conj_norm(&g, &[base.rep_index])?;
        let mut csv = String::from("class_repr,size,q\n");
        for c in g.sym_classes() {
            csv.push_str(&format!(
                "{},{},{}\n",
                c.representative,
                c.member_count(),
                norms.get(c.rep_index)
            ));
        }
        write_atomic(&out, csv_with_hash(&hash, None, &csv).as_bytes())?;
        println!("q_K for K = [{}] written to {}", base.representative, out.display());
        return Ok(Outcome::Pass);
    }
    let metric = tsuboi_metric(&g)?;
    let sub = verify_submultiplicativity(&g)?;
    write_atomic(&out, csv_with_hash(&hash, None, &metric.to_csv()).as_bytes())?;
    let summary = MetricSummary {
        degree: g.degree(),
        order: g.order(),
        classes: metric.len(),
        triples_checked: sub.triples_checked,
        submultiplicativity_violations: sub.violations,
    };
    let env = Envelope {
        command: &p.command,
        config_hash: &hash,
        seed: None,
        report: &summary,
    };
    print!("{}", String::from_utf8_lossy(&json_bytes(&env)?));
    Ok(if sub.passed() { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Serialize)]
struct QiOutput<'a> {
    note: &'static str,
    classes: Vec<String>,
    diagnostic: &'a kercal_core::permgroup::DistortionReport,
}

pub fn qi(p: &Params) -> Result<Outcome, CliError> {
    let g = group(p)?;
    let metric = tsuboi_metric(&g)?;
    let report = qi_diagnostic(&metric, p.get("basepoint")?)?;
    let hash = sha256_hex(&p.canonical()?);
    let body = QiOutput {
        note: "finite-scale proxy: every map between finite metric spaces is a quasi-isometry",
        classes: metric.classes.iter().map(|c| c.representative.to_string()).collect(),
        diagnostic: &report,
    };
    let env = Envelope {
        command: &p.command,
        config_hash: &hash,
        seed: None,
        report: &body,
    };
    write_atomic(&p.path("out")?, &json_bytes(&env)?)?;
    Ok(Outcome::Pass)
}

pub fn braid_eval(p: &Params) -> Result<Outcome, CliError> {
    let word = BraidWord::parse(&p.get::<String>("word")?, 3)?;
    let qm: QmSpec = p.get::<String>("qm")?.parse()?;
    println!("{}", qm.evaluate(&word)?);
    if let Some(p_max) = p.opt::<u32>("homogenize")? {
        for (k, v) in homogenize(|w| qm.evaluate(w), &word, p_max)?.iter().enumerate() {
            println!("{} {v}", k + 1);
        }
    }
    Ok(Outcome::Pass)
}
