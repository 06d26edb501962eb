use std::fs;
use std::path::Path;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use rsc_core::applications::{
    culture_dynamics, media_menu_choice_with, CultureParams, MediaConfig, MediaMenu, MediaParams,
};
use rsc_core::choice::ChoiceFunctionSpace;
use rsc_core::normative::{freedom_table, FreedomModel, WelfareReport};
use rsc_core::random::{random_single_peaked_structure, random_structure, seeded};
use rsc_core::{
    certify_single_peaked, parse_choice_function, synthesize_rs, AxiomChecker, ChoiceFormat, ChoiceFunction,
    GroundSet, RSStructure, RevealedReport,
};
use serde_json::json;

use crate::{to_json, write_file, ChoiceInput, Failure, Format, Report};

/// Largest ground set `enumerate` walks exhaustively.
const EXHAUSTIVE_MAX: usize = 4;
/// Largest ground set `enumerate --samples` accepts.
const SAMPLED_MAX: usize = 10;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))
}

pub fn load_choice(input: &ChoiceInput) -> Result<ChoiceFunction, Failure> {
    let format = match input.input_format {
        Some(Format::Json) => ChoiceFormat::Json,
        Some(Format::Csv) => ChoiceFormat::Csv,
        None => ChoiceFormat::from_path(&input.file),
    };
    Ok(parse_choice_function(&read(&input.file)?, format)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AxiomName {
    Exp,
    Nrs,
    Ir,
    Spr,
    Iia,
}

pub fn check_axioms(cf: &ChoiceFunction, axioms: &[AxiomName], cap: usize) -> Result<Report, Failure> {
    let checker = AxiomChecker::new(cap);
    let report = RevealedReport::new(cf);
    let verdicts: Vec<_> = axioms
        .iter()
        .map(|a| match a {
            AxiomName::Exp => checker.exp(cf),
            AxiomName::Nrs => checker.nrs(cf, &report.similarity),
            AxiomName::Ir => checker.ir(cf, &report.similarity),
            AxiomName::Spr => checker.spr(cf, &report),
            AxiomName::Iia => checker.iia(cf),
        })
        .collect();
    let violations = verdicts.iter().any(|v| !v.holds);
    let named: Vec<_> = verdicts.iter().map(|v| v.to_named(cf.ground())).collect();
    Ok(Report {
        body: to_json(&named)?,
        violations,
    })
}

pub fn reveal(cf: &ChoiceFunction) -> Result<Report, Failure> {
    Ok(Report::clean(to_json(&RevealedReport::new(cf).to_named(cf.ground()))?))
}

pub fn synthesize(cf: &ChoiceFunction, structure_out: Option<&Path>) -> Result<Report, Failure> {
    let (s, trace) = synthesize_rs(cf)?;
    let g = cf.ground();
    let names = |xs: &[usize]| xs.iter().map(|&x| g.name(x).to_string()).collect::<Vec<_>>();
    let certificate = certify_single_peaked(&s);
    let body = json!({
        "structure": s.to_file(),
        "certificate": certificate.to_named(g),
        "trace": {
            "types": trace.types.names(g),
            "dominance": trace.dominance.named_pairs(g),
            "ties": trace.ties.named_pairs(g),
            "peak_candidates": names(&trace.peak_candidates),
            "thresholds": names(&trace.thresholds),
            "extension_log": names(&trace.extension_log),
        },
    });
    if let Some(path) = structure_out {
        write_file(path, &format!("{}\n", s.to_json()?))?;
    }
    Ok(Report::clean(to_json(&body)?))
}

pub fn welfare(cf: &ChoiceFunction, closure: bool) -> Result<Report, Failure> {
    let report = WelfareReport::new(cf, closure)?;
    Ok(Report::clean(to_json(&report.to_named(cf.ground()))?))
}

pub fn freedom(path: &Path, format: Format) -> Result<Report, Failure> {
    let s = RSStructure::from_json(&read(path)?)?;
    let ground = s.ground().clone();
    let model = FreedomModel::new(s)?;
    let table = freedom_table(&model, &ground);
    let body = match format {
        Format::Json => {
            let rows: Vec<_> = table.iter().map(|(menu, n)| json!({ "menu": menu, "n": n })).collect();
            to_json(&rows)?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut write = |rec: [&str; 2]| w.write_record(rec).map_err(rsc_core::Error::from);
            write(["menu", "n"])?;
            for (menu, n) in &table {
                write([menu, &n.to_string()])?;
            }
            csv_string(w)?
        }
    };
    Ok(Report::clean(body))
}

pub fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::input("io", e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::input("io", e.to_string()))
}

#[derive(Args, Debug, Clone)]
pub struct MediaArgs {
    /// Prior probability of state R, in (0, 1/2).
    #[arg(long)]
    pub p: f64,
    /// Moderate-source precision, in (1/2, 3/4).
    #[arg(long)]
    pub lambda: f64,
    /// M holds all four sources; N lacks the moderate R source.
    #[arg(long, default_value = "N", value_parser = parse_menu)]
    pub menu: MediaMenu,
    /// Value extreme sources like any other.
    #[arg(long)]
    pub no_reactance: bool,
    /// Posterior of R at which a reacting reader acts on an extreme source.
    #[arg(long)]
    pub reaction_threshold: Option<f64>,
}

fn parse_menu(s: &str) -> Result<MediaMenu, String> {
    s.parse().map_err(|e: rsc_core::Error| e.to_string())
}

impl MediaArgs {
    pub fn config(&self) -> MediaConfig<f64> {
        let mut config = MediaConfig {
            reactance: !self.no_reactance,
            ..MediaConfig::default()
        };
        if let Some(t) = self.reaction_threshold {
            config.reaction_action_threshold = t;
        }
        config
    }
}

pub fn simulate_media(args: &MediaArgs) -> Result<Report, Failure> {
    if let Some(t) = args.reaction_threshold {
        if !(0.0..=1.0).contains(&t) {
            return Err(rsc_core::Error::InvalidParams(format!("reaction threshold {t} outside [0, 1]")).into());
        }
    }
    let params = MediaParams::new(args.p, args.lambda)?;
    let outcome = media_menu_choice_with(&params, &args.config(), args.menu)?;
    Ok(Report::clean(to_json(&outcome)?))
}

#[derive(Args, Debug, Clone)]
pub struct CultureArgs {
    /// Convexity of the effort cost.
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    /// Policy level above which parents react.
    #[arg(long, default_value_t = 1.5)]
    pub g_hat: f64,
    /// Value of transmission at or below the threshold.
    #[arg(long, default_value_t = 1.2)]
    pub v_hat: f64,
    /// Reactance rate.
    #[arg(long, default_value_t = 2.0)]
    pub lambda_r: f64,
    /// Policy faced by the minority.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Initial minority share.
    #[arg(long, default_value_t = 0.3)]
    pub q0: f64,
    /// Integration step.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Integration horizon.
    #[arg(long, default_value_t = 200.0)]
    pub horizon: f64,
}

impl CultureArgs {
    pub fn params(&self) -> Result<CultureParams<f64>, Failure> {
        let mut p = CultureParams::new(self.beta, self.g_hat, self.v_hat, self.lambda_r, self.g, self.q0)?;
        p.dt = self.dt;
        p.horizon = self.horizon;
        p.validate()?;
        Ok(p)
    }
}

fn trajectory_csv(trajectory: &[[f64; 2]]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["tau", "q"]).map_err(rsc_core::Error::from)?;
    for [tau, q] in trajectory {
        w.write_record([tau.to_string(), q.to_string()])
            .map_err(rsc_core::Error::from)?;
    }
    csv_string(w)
}

pub fn simulate_culture(args: &CultureArgs, trajectory_out: Option<&Path>, format: Format) -> Result<Report, Failure> {
    let params = args.params()?;
    let out = culture_dynamics(&params)?;
    let csv = trajectory_csv(&out.trajectory)?;
    if let Some(path) = trajectory_out {
        write_file(path, &csv)?;
    }
    let body = match format {
        Format::Csv => csv,
        Format::Json => to_json(&json!({
            "params": params,
            "d_star_minority": out.d_star_minority,
            "d_star_majority": out.d_star_majority,
            "q_steady": out.q_steady,
            "q_final": out.q_final,
            "residual": out.residual,
            "converged": out.converged,
            "g_bar": out.g_bar,
        }))?,
    };
    Ok(Report::clean(body))
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    /// Ground-set size.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Sample this many random structures instead of walking every
    /// choice function.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    total: u64,
    rsc: u64,
    reproduced: u64,
    spr: u64,
    certified: u64,
    mismatches: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            total: self.total + o.total,
            rsc: self.rsc + o.rsc,
            reproduced: self.reproduced + o.reproduced,
            spr: self.spr + o.spr,
            certified: self.certified + o.certified,
            mismatches: self.mismatches + o.mismatches,
        }
    }

    /// Checks one choice function: the RSC axioms hold exactly when
    /// synthesis reproduces it, and then SPR holds exactly when the
    /// synthesized structure certifies.
    fn of(cf: &ChoiceFunction) -> Tally {
        let report = RevealedReport::new(cf);
        let checker = AxiomChecker::new(1);
        let rsc = checker.rsc(cf, &report).iter().all(|v| v.holds);
        let synthesized = synthesize_rs(cf).ok().filter(|(s, _)| s.evaluate() == *cf);
        let mut t = Tally {
            total: 1,
            rsc: rsc as u64,
            reproduced: synthesized.is_some() as u64,
            mismatches: (rsc != synthesized.is_some()) as u64,
            ..Tally::default()
        };
        if let Some((s, _)) = synthesized {
            let spr = checker.spr(cf, &report).holds;
            let certified = certify_single_peaked(&s).verified;
            t.spr = spr as u64;
            t.certified = certified as u64;
            t.mismatches += (spr != certified) as u64;
        }
        t
    }
}

pub fn enumerate(args: &EnumerateArgs, seed: u64) -> Result<Report, Failure> {
    let ground = std::sync::Arc::new(GroundSet::numbered(args.n)?);
    // a mismatch, or a generated structure failing its own axioms, is a
    // violation of the characterization
    let (body, violations) = match args.samples {
        None => {
            if args.n > EXHAUSTIVE_MAX {
                return Err(rsc_core::Error::GroundSetTooLarge {
                    size: args.n,
                    cap: EXHAUSTIVE_MAX,
                }
                .into());
            }
            let space = ChoiceFunctionSpace::new(ground)?;
            let tally = (0..space.len())
                .into_par_iter()
                .map(|i| Tally::of(&space.get(i).expect("index in range")))
                .reduce(Tally::default, Tally::add);
            let body = json!({
                "mode": "exhaustive",
                "options": args.n,
                "choice_functions": tally.total,
                "pass_exp_nrs_ir": tally.rsc,
                "synthesis_reproduces": tally.reproduced,
                "pass_spr": tally.spr,
                "certified_single_peaked": tally.certified,
                "mismatches": tally.mismatches,
            });
            (body, tally.mismatches > 0)
        }
        Some(samples) => {
            if args.n > SAMPLED_MAX {
                return Err(rsc_core::Error::GroundSetTooLarge {
                    size: args.n,
                    cap: SAMPLED_MAX,
                }
                .into());
            }
            // structures are drawn sequentially so the sample only depends
            // on the seed
            let mut rng = seeded(seed);
            let plain: Vec<RSStructure> = (0..samples).map(|_| random_structure(&mut rng, &ground)).collect();
            let peaked: Vec<RSStructure> = (0..samples)
                .map(|_| random_single_peaked_structure(&mut rng, &ground))
                .collect();
            let count = |v: &[RSStructure]| {
                v.par_iter()
                    .map(|s| Tally::of(&s.evaluate()))
                    .reduce(Tally::default, Tally::add)
            };
            let (a, b) = (count(&plain), count(&peaked));
            let body = json!({
                "mode": "sampled",
                "options": args.n,
                "seed": seed,
                "random_structures": {
                    "samples": a.total,
                    "pass_exp_nrs_ir": a.rsc,
                    "synthesis_reproduces": a.reproduced,
                    "pass_spr": a.spr,
                    "certified_single_peaked": a.certified,
                    "mismatches": a.mismatches,
                },
                "single_peaked_structures": {
                    "samples": b.total,
                    "pass_exp_nrs_ir": b.rsc,
                    "pass_spr": b.spr,
                    "certified_single_peaked": b.certified,
                    "mismatches": b.mismatches,
                },
            });
            let broken = a.mismatches + b.mismatches > 0 || a.rsc < a.total || b.spr < b.total;
            (body, broken)
        }
    };
    Ok(Report {
        body: to_json(&body)?,
        violations,
    })
}
