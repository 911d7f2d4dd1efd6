use std::path::PathBuf;

use clap::Args;
use plyfold::scaling::{upper_bound, SweepParam};
use rayon::prelude::*;

use crate::output::{csv_writer, grid};
use crate::{Failure, SpecArgs};

#[derive(Args, Debug)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Base angle (used unless alpha is a swept axis).
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// First swept axis: alpha, gamma, h, L or N.
    #[arg(long)]
    pub x: SweepParam,
    #[arg(long = "x-min")]
    pub x_min: f64,
    #[arg(long = "x-max")]
    pub x_max: f64,
    #[arg(long = "x-points")]
    pub x_points: usize,
    /// Second swept axis.
    #[arg(long)]
    pub y: SweepParam,
    #[arg(long = "y-min")]
    pub y_min: f64,
    #[arg(long = "y-max")]
    pub y_max: f64,
    #[arg(long = "y-points")]
    pub y_points: usize,
    #[arg(long, default_value = "phase.csv")]
    pub out: PathBuf,
}

/// Bound value and regime label of one cell; `None` outside the valid parameter set.
type Cell = Option<(f64, String)>;

pub fn run(a: &PhaseArgs) -> Result<(), Failure> {
    let base = a.spec.spec()?;
    if a.x == a.y {
        return Err(Failure::Usage(format!("swept axes coincide (both {})", a.x)));
    }
    let xs = grid(a.x_min, a.x_max, a.x_points, true, "x range")?;
    let ys = grid(a.y_min, a.y_max, a.y_points, true, "y range")?;
    let cells: Vec<(f64, f64)> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| (x, y))).collect();
    // cells outside the valid parameter set (h > L/4, alpha > pi/2, ...) are marked, not dropped
    let rows: Vec<(f64, f64, Cell)> = cells
        .par_iter()
        .map(|&(x, y)| {
            let cell =
                a.x.apply(&base, a.alpha, x)
                    .and_then(|(s, al)| a.y.apply(&s, al, y))
                    .and_then(|(s, al)| upper_bound(&s, al))
                    .ok()
                    .map(|(v, l)| (v, l.to_string()));
            (x, y, cell)
        })
        .collect();
    let mut w = csv_writer(&a.out)?;
    w.write_record([a.x.name(), a.y.name(), "regime", "bound"])?;
    for (x, y, cell) in &rows {
        let (label, bound) = match cell {
            Some((v, l)) => (l.clone(), v.to_string()),
            None => ("invalid".to_string(), String::new()),
        };
        w.write_record([x.to_string(), y.to_string(), label, bound])?;
    }
    w.flush()?;
    println!("{} cells written to {}", rows.len(), a.out.display());
    Ok(())
}
