mod gg;
mod group;

use crate::config::{input, output, value, OptSpec, Params};
use crate::CliError;

/// Exit status of a run that did not error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// A statistical or exhaustive acceptance check failed.
    Fail,
}

pub struct CommandSpec {
    pub name: &'static str,
    pub about: &'static str,
    pub options: &'static [OptSpec],
    pub run: fn(&Params) -> Result<Outcome, CliError>,
}

const QM: OptSpec = value(
    "qm",
    "quasi-morphism: rademacher-minus-writhe, writhe or linking-combination:c12,c13,c23",
    Some("rademacher-minus-writhe"),
);
const SEED: OptSpec = value("seed", "random seed", Some("0"));
const SAMPLES: OptSpec = value("samples", "number of sampled configurations", None);
const DEGREE: OptSpec = value("degree", "degree n of the group (3..=8)", None);
const GROUP: OptSpec = value("group", "alternating or symmetric", Some("alternating"));

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec {
        name: "group-metric",
        about: "Conjugation norms and the metric on symmetrized conjugacy classes",
        options: &[
            DEGREE,
            GROUP,
            value(
                "base-class",
                "emit q_K for one class, given by cycle type (3,1,1) or a representative ((1 2 3))",
                None,
            ),
            output("out", "CSV output", "metric.csv"),
        ],
        run: group::group_metric,
    },
    CommandSpec {
        name: "qi-diagnostic",
        about: "Distortion of the distance-to-basepoint embedding into the half line",
        options: &[
            DEGREE,
            GROUP,
            value("basepoint", "index of the basepoint class", Some("0")),
            output("out", "JSON output", "qi.json"),
        ],
        run: group::qi,
    },
    CommandSpec {
        name: "braid-eval",
        about: "Exact value of a quasi-morphism on a 3-strand braid word",
        options: &[
            value(
                "word",
                "whitespace-separated signed generator indices, e.g. \"1 2 -1 2\"",
                None,
            ),
            QM,
            value("homogenize", "also print phi(w^p)/p for p up to this power", None),
        ],
        run: group::braid_eval,
    },
    CommandSpec {
        name: "trace",
        about: "Pure braids of sampled configurations under a disk map",
        options: &[
            input("map", "map description file"),
            value("power", "iterate f^p", Some("1")),
            SAMPLES,
            SEED,
            QM,
            output("out", "JSON-lines output", "braids.jsonl"),
        ],
        run: gg::trace,
    },
    CommandSpec {
        name: "gg-estimate",
        about: "Monte Carlo estimate of the averaged quasi-morphism",
        options: &[
            input("map", "map description file"),
            QM,
            value("power", "iterate f^p", Some("1")),
            value("powers", "comma-separated increasing powers; reports the trend", None),
            SAMPLES,
            SEED,
            output("out", "JSON output", "gg_estimate.json"),
        ],
        run: gg::estimate,
    },
    CommandSpec {
        name: "scaling-check",
        about: "Compares the estimates for f and its shrink s_r(f) with r^-6",
        options: &[
            input("map", "map description file"),
            QM,
            value("r", "shrink factor", Some("2")),
            value("power", "iterate f^p", Some("8")),
            SAMPLES,
            SEED,
            value("z", "pass threshold in combined standard errors", Some("3")),
            output("out", "JSON output", "scaling.json"),
        ],
        run: gg::scaling,
    },
    CommandSpec {
        name: "sequence-experiment",
        about: "Bounds for the sequence f_n = s_r^n(f) against the powers of g",
        options: &[
            input("f", "map in the kernel of the Calabi invariant"),
            input("g", "map with nonzero estimate"),
            QM,
            value("r", "shrink factor", Some("2")),
            value("nmax", "largest index n", None),
            value("mmax", "largest power m of g", None),
            value(
                "defect-assumed",
                "assumed defect D of the averaged quasi-morphism",
                None,
            ),
            value("power", "iterate f^p", Some("8")),
            SAMPLES,
            SEED,
            output("out", "JSON output", "sequence.json"),
            output(
                "checkpoint",
                "checkpoint file for resuming (default: next to the output)",
                "-",
            ),
        ],
        run: gg::sequence,
    },
];

pub fn find(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}
