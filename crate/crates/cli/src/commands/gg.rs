use std::path::{Path, PathBuf};

use kercal_core::braid::QmSpec;
use kercal_core::disk::{parse_map, DiskMap, Point};
use kercal_core::gg::{
    gamma_estimate, gamma_extrapolate, scaling_check, sequence_point, sequence_preconditions, sequence_report,
    trace_samples, GGEstimate, ScalingStatus, SequenceParams, SequencePoint, Validity,
};
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::config::Params;
use crate::output::{csv_with_hash, json_bytes, sha256_hex, sibling, write_atomic, Envelope};
use crate::CliError;

fn load_map(p: &Params, key: &str) -> Result<DiskMap, CliError> {
    let path = p.path(key)?;
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_map(&text).map_err(|e| match e {
        kercal_core::Error::MapParse { .. } => CliError::Config(format!("{}: {e}", path.display())),
        other => other.into(),
    })
}

fn qm(p: &Params) -> Result<QmSpec, CliError> {
    Ok(p.get::<String>("qm")?.parse()?)
}

fn write_report<T: Serialize>(p: &Params, hash: &str, seed: u64, path: &Path, report: &T) -> Result<(), CliError> {
    let env = Envelope {
        command: &p.command,
        config_hash: hash,
        seed: Some(seed),
        report,
    };
    write_atomic(path, &json_bytes(&env)?)
}

#[derive(Serialize)]
struct TraceLine<'a> {
    config_hash: &'a str,
    seed: u64,
    index: usize,
    config: [Point; 3],
    word: &'a [i32],
    linking: &'a [Vec<i64>],
    phi: String,
    inside: [bool; 3],
}

pub fn trace(p: &Params) -> Result<Outcome, CliError> {
    let f = load_map(p, "map")?;
    let seed: u64 = p.get("seed")?;
    let batch = trace_samples(&f, &qm(p)?, p.get("power")?, p.get("samples")?, seed)?;
    let hash = sha256_hex(&p.canonical()?);
    let mut out = String::new();
    for s in &batch.samples {
        let line = TraceLine {
            config_hash: &hash,
            seed,
            index: s.index,
            config: s.config,
            word: &s.word,
            linking: &s.linking,
            phi: s.phi.to_string(),
            inside: s.inside,
        };
        out.push_str(&serde_json::to_string(&line).map_err(|e| CliError::Io(e.to_string()))?);
        out.push('\n');
    }
    write_atomic(&p.path("out")?, out.as_bytes())?;
    println!(
        "{} samples, {} rejections, config_hash {hash}",
        batch.samples.len(),
        batch.rejections
    );
    Ok(Outcome::Pass)
}

fn strata_csv(e: &GGEstimate) -> String {
    let mut csv = String::from("counts,weight,samples,mean,stddev\n");
    for s in &e.strata {
        let counts: Vec<String> = s.counts.iter().map(usize::to_string).collect();
        csv.push_str(&format!(
            "{},{:e},{},{:e},{:e}\n",
            counts.join(" "),
            s.weight,
            s.samples,
            s.mean,
            s.stddev
        ));
    }
    csv
}

pub fn estimate(p: &Params) -> Result<Outcome, CliError> {
    let f = load_map(p, "map")?;
    let qm = qm(p)?;
    let seed: u64 = p.get("seed")?;
    let samples: usize = p.get("samples")?;
    let hash = sha256_hex(&p.canonical()?);
    let out = p.path("out")?;
    match p.opt::<String>("powers")? {
        Some(list) => {
            let powers = list
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Config(format!("powers: cannot parse {list:?}")))?;
            let x = gamma_extrapolate(&f, &qm, &powers, samples, seed)?;
            let mut csv = String::from("power,mean,stderr,rejections\n");
            for e in &x.estimates {
                csv.push_str(&format!("{},{:e},{:e},{}\n", e.power, e.mean, e.stderr, e.rejections));
            }
            write_atomic(
                &sibling(&out, "trend"),
                csv_with_hash(&hash, Some(seed), &csv).as_bytes(),
            )?;
            write_report(p, &hash, seed, &out, &x)?;
        }
        None => {
            let e = gamma_estimate(&f, &qm, p.get("power")?, samples, seed)?;
            write_atomic(
                &sibling(&out, "strata"),
                csv_with_hash(&hash, Some(seed), &strata_csv(&e)).as_bytes(),
            )?;
            write_report(p, &hash, seed, &out, &e)?;
        }
    }
    Ok(Outcome::Pass)
}

pub fn scaling(p: &Params) -> Result<Outcome, CliError> {
    let f = load_map(p, "map")?;
    let seed: u64 = p.get("seed")?;
    let rep = scaling_check(
        &f,
        &qm(p)?,
        p.get("r")?,
        p.get("power")?,
        p.get("samples")?,
        seed,
        p.get("z")?,
    )?;
    let hash = sha256_hex(&p.canonical()?);
    write_report(p, &hash, seed, &p.path("out")?, &rep)?;
    println!(
        "ratio {:.6e} +- {:.3e} (expected {:.6e}): {:?}",
        rep.ratio, rep.ratio_stderr, rep.expected, rep.status
    );
    Ok(match rep.status {
        ScalingStatus::Pass => Outcome::Pass,
        _ => Outcome::Fail,
    })
}

/// Work already done by an interrupted sequence experiment.
#[derive(Serialize, Deserialize)]
struct Checkpoint {
    config_hash: String,
    calabi: f64,
    g_estimate: GGEstimate,
    points: Vec<SequencePoint>,
}

fn checkpoint_path(p: &Params, out: &Path) -> Result<PathBuf, CliError> {
    let c = p.path("checkpoint")?;
    Ok(if c.as_os_str() == "-" {
        out.with_extension("ckpt.json")
    } else {
        c
    })
}

fn load_checkpoint(path: &Path, hash: &str) -> Option<Checkpoint> {
    let text = std::fs::read_to_string(path).ok()?;
    let ck: Checkpoint = serde_json::from_str(&text).ok()?;
    (ck.config_hash == hash).then_some(ck)
}

pub fn sequence(p: &Params) -> Result<Outcome, CliError> {
    let f = load_map(p, "f")?;
    let g = load_map(p, "g")?;
    let qm = qm(p)?;
    let prm = SequenceParams {
        r: p.get("r")?,
        n_max: p.get("nmax")?,
        m_max: p.get("mmax")?,
        power: p.get("power")?,
        samples: p.get("samples")?,
        seed: p.get("seed")?,
        assumed_defect: p.get("defect-assumed")?,
    };
    let hash = sha256_hex(&p.canonical()?);
    let out = p.path("out")?;
    let ck_path = checkpoint_path(p, &out)?;
    let mut ck = match load_checkpoint(&ck_path, &hash) {
        Some(ck) => {
            eprintln!("resuming from {} ({} points done)", ck_path.display(), ck.points.len());
            ck
        }
        None => {
            let (calabi, g_estimate) = sequence_preconditions(&f, &g, &qm, &prm)?;
            Checkpoint {
                config_hash: hash.clone(),
                calabi,
                g_estimate,
                points: Vec::new(),
            }
        }
    };
    write_atomic(&ck_path, &json_bytes(&ck)?)?;
    for n in ck.points.len() as u32..=prm.n_max {
        ck.points
            .push(sequence_point(&f, &qm, prm.r, n, prm.power, prm.samples, prm.seed)?);
        write_atomic(&ck_path, &json_bytes(&ck)?)?;
    }
    let rep = sequence_report(&f, &prm, ck.calabi, ck.g_estimate, ck.points)?;

    let mut area = String::from("m,n,bound,area_m,area_n\n");
    for row in &rep.area_table {
        for a in row {
            area.push_str(&format!(
                "{},{},{:e},{:e},{:e}\n",
                a.m, a.n, a.bound, a.area_m, a.area_n
            ));
        }
    }
    let mut points = String::from("n,mean,stderr,predicted,combined_stderr,paired_stderr\n");
    for q in &rep.points {
        points.push_str(&format!(
            "{},{:e},{:e},{:e},{:e},{:e}\n",
            q.n, q.mean, q.stderr, q.predicted, q.combined_stderr, q.diff_stderr
        ));
    }
    let mut certs = String::from("m,bound,phi_g,defect,c_k,validity\n");
    for c in &rep.certificates {
        certs.push_str(&format!(
            "{},{:e},{:e},{:e},{:e},{}\n",
            c.m,
            c.bound,
            c.phi_value,
            c.defect,
            c.c_k,
            match c.validity {
                Validity::Exact => "exact",
                Validity::ConditionalOnD => "conditional-on-D",
            }
        ));
    }
    let seed = Some(prm.seed);
    write_atomic(&sibling(&out, "area"), csv_with_hash(&hash, seed, &area).as_bytes())?;
    write_atomic(&sibling(&out, "points"), csv_with_hash(&hash, seed, &points).as_bytes())?;
    write_atomic(
        &sibling(&out, "certificates"),
        csv_with_hash(&hash, seed, &certs).as_bytes(),
    )?;
    write_report(p, &hash, prm.seed, &out, &rep)?;
    std::fs::remove_file(&ck_path).map_err(|e| CliError::Io(format!("{}: {e}", ck_path.display())))?;
    Ok(if rep.scaling_consistent {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
