//! Grid and random parameter sweeps. Points are laid out (or drawn from
//! the seeded generator) up front, solved on the worker pool and written
//! in point order, so output depends only on the arguments and the seed.

use clap::{Args, Subcommand};
use rand::Rng;
use rayon::prelude::*;
use rsc_core::applications::{culture_dynamics, media_menu_choice_with, media_pstar, CultureParams, MediaParams};
use rsc_core::random::seeded;
use rsc_core::Error;

use crate::commands::{csv_string, CultureArgs};
use crate::{Failure, Report};

struct Range {
    min: f64,
    max: f64,
    steps: usize,
}

#[derive(Subcommand, Debug)]
pub enum SweepModel {
    /// Source choice over prior p and precision λ.
    Media {
        #[arg(long, default_value_t = 0.01)]
        p_min: f64,
        #[arg(long, default_value_t = 0.49)]
        p_max: f64,
        #[arg(long, default_value_t = 49)]
        p_steps: usize,
        #[arg(long, default_value_t = 0.7)]
        lambda_min: f64,
        #[arg(long, default_value_t = 0.7)]
        lambda_max: f64,
        #[arg(long, default_value_t = 1)]
        lambda_steps: usize,
        #[command(flatten)]
        media: MediaFlags,
        /// Draw this many uniform points from the box instead of a grid.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Steady states over policy g and reactance rate λ_r.
    Culture {
        #[arg(long, default_value_t = 1.0)]
        g_min: f64,
        #[arg(long, default_value_t = 4.0)]
        g_max: f64,
        #[arg(long, default_value_t = 31)]
        g_steps: usize,
        #[arg(long, default_value_t = 2.0)]
        lambda_r_min: f64,
        #[arg(long, default_value_t = 2.0)]
        lambda_r_max: f64,
        #[arg(long, default_value_t = 1)]
        lambda_r_steps: usize,
        #[command(flatten)]
        base: CultureArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct MediaFlags {
    #[arg(long, default_value = "N", value_parser = parse_menu)]
    menu: rsc_core::applications::MediaMenu,
    #[arg(long)]
    no_reactance: bool,
}

fn parse_menu(s: &str) -> Result<rsc_core::applications::MediaMenu, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Range {
    fn new(name: &str, min: f64, max: f64, steps: usize) -> Result<Range, Error> {
        if steps == 0 || !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::InvalidRange(format!("{name}: [{min}, {max}] in {steps} steps")));
        }
        if steps > 1 && min == max {
            return Err(Error::InvalidRange(format!("{name}: {steps} steps over a single point")));
        }
        Ok(Range { min, max, steps })
    }

    fn grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| self.min + (self.max - self.min) * k as f64 / last)
            .collect()
    }
}

/// Grid product, or `samples` uniform draws, of two ranges.
fn points(a: &Range, b: &Range, samples: Option<usize>, seed: u64) -> Result<Vec<(f64, f64)>, Error> {
    match samples {
        Some(0) => Err(Error::InvalidRange("zero samples".into())),
        Some(n) => {
            let mut rng = seeded(seed);
            let mut draw = |r: &Range| if r.min == r.max { r.min } else { rng.gen_range(r.min..=r.max) };
            Ok((0..n).map(|_| (draw(a), draw(b))).collect())
        }
        None => {
            let bs = b.grid();
            Ok(a.grid().into_iter().flat_map(|x| bs.iter().map(move |&y| (x, y))).collect())
        }
    }
}

fn write_rows(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(Error::from)?;
    for row in rows {
        w.write_record(row).map_err(Error::from)?;
    }
    csv_string(w)
}

fn media_row(p: f64, lambda: f64, flags: &MediaFlags) -> Result<Vec<String>, Error> {
    let params = MediaParams::new(p, lambda)?;
    let config = rsc_core::applications::MediaConfig {
        reactance: !flags.no_reactance,
        ..Default::default()
    };
    let out = media_menu_choice_with(&params, &config, flags.menu)?;
    let action = |a: rsc_core::applications::Action| match a {
        rsc_core::applications::Action::L => "l",
        rsc_core::applications::Action::R => "r",
    };
    Ok(vec![
        p.to_string(),
        lambda.to_string(),
        media_pstar(lambda)?.to_string(),
        out.chosen_source.id().to_string(),
        out.posterior_by_signal[0].to_string(),
        out.posterior_by_signal[1].to_string(),
        action(out.action_by_signal[0]).to_string(),
        action(out.action_by_signal[1]).to_string(),
    ])
}

fn culture_row(base: &CultureParams<f64>, g: f64, lambda_r: f64) -> Result<Vec<String>, Error> {
    let params = CultureParams { g, lambda_r, ..*base };
    let out = culture_dynamics(&params)?;
    Ok(vec![
        g.to_string(),
        lambda_r.to_string(),
        out.q_steady.to_string(),
        out.q_final.to_string(),
        out.converged.to_string(),
        out.d_star_minority.to_string(),
        out.d_star_majority.to_string(),
    ])
}

pub fn run(model: &SweepModel, seed: u64) -> Result<Report, Failure> {
    let body = match model {
        SweepModel::Media {
            p_min,
            p_max,
            p_steps,
            lambda_min,
            lambda_max,
            lambda_steps,
            media,
            samples,
        } => {
            let p = Range::new("p", *p_min, *p_max, *p_steps)?;
            let l = Range::new("lambda", *lambda_min, *lambda_max, *lambda_steps)?;
            let rows = points(&p, &l, *samples, seed)?
                .par_iter()
                .map(|&(p, l)| media_row(p, l, media))
                .collect::<Result<Vec<_>, _>>()?;
            write_rows(
                &["p", "lambda", "p_star", "chosen_source", "posterior_sL", "posterior_sR", "action_sL", "action_sR"],
                rows,
            )?
        }
        SweepModel::Culture {
            g_min,
            g_max,
            g_steps,
            lambda_r_min,
            lambda_r_max,
            lambda_r_steps,
            base,
            samples,
        } => {
            let g = Range::new("g", *g_min, *g_max, *g_steps)?;
            let l = Range::new("lambda_r", *lambda_r_min, *lambda_r_max, *lambda_r_steps)?;
            let base = base.params()?;
            let rows = points(&g, &l, *samples, seed)?
                .par_iter()
                .map(|&(g, l)| culture_row(&base, g, l))
                .collect::<Result<Vec<_>, _>>()?;
            write_rows(
                &["g", "lambda_r", "q_steady", "q_final", "converged", "d_star_minority", "d_star_majority"],
                rows,
            )?
        }
    };
    Ok(Report::clean(body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_both_ends() {
        let r = Range::new("x", 1.0, 2.0, 5).unwrap();
        assert_eq!(r.grid(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert_eq!(Range::new("x", 3.0, 3.0, 1).unwrap().grid(), vec![3.0]);
    }

    #[test]
    fn bad_ranges_are_rejected() {
        for (min, max, steps) in [(2.0, 1.0, 3), (1.0, 2.0, 0), (1.0, 1.0, 4), (f64::NAN, 1.0, 2)] {
            assert!(matches!(Range::new("x", min, max, steps), Err(Error::InvalidRange(_))));
        }
    }

    #[test]
    fn samples_stay_in_the_box_and_follow_the_seed() {
        let a = Range::new("a", 0.1, 0.2, 2).unwrap();
        let b = Range::new("b", 5.0, 5.0, 1).unwrap();
        let pts = points(&a, &b, Some(100), 3).unwrap();
        assert!(pts.iter().all(|&(x, y)| (0.1..=0.2).contains(&x) && y == 5.0));
        assert_eq!(pts, points(&a, &b, Some(100), 3).unwrap());
        assert!(points(&a, &b, Some(0), 3).is_err());
        assert_eq!(points(&a, &b, None, 3).unwrap(), vec![(0.1, 5.0), (0.2, 5.0)]);
    }
}
