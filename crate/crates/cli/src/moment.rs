use std::path::PathBuf;

use clap::Args;
use plyfold::scaling::{moment_curve, MomentMode};

use crate::output::{csv_writer, grid};
use crate::svg::{self, Panel};
use crate::{Failure, SpecArgs};

#[derive(Args, Debug)]
pub struct MomentArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long = "alpha-min")]
    pub alpha_min: f64,
    #[arg(long = "alpha-max")]
    pub alpha_max: f64,
    #[arg(long)]
    pub points: usize,
    /// `analytic` bound formulas or `measured` optimized constructions.
    #[arg(long, default_value = "analytic")]
    pub mode: MomentMode,
    /// Linearly spaced angles instead of log-spaced.
    #[arg(long)]
    pub linear: bool,
    #[arg(long, default_value = "moment.csv")]
    pub out: PathBuf,
    /// Plot path; defaults to the CSV path with an `.svg` extension.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

pub fn run(a: &MomentArgs) -> Result<(), Failure> {
    let spec = a.spec.spec()?;
    if a.points < 2 {
        return Err(Failure::Usage(format!("--points must be at least 2, got {}", a.points)));
    }
    if !(a.alpha_min > 0.0 && a.alpha_max <= std::f64::consts::FRAC_PI_2) {
        return Err(Failure::Usage("alpha range must lie in (0, pi/2]".into()));
    }
    let g = grid(a.alpha_min, a.alpha_max, a.points, !a.linear, "alpha range")?;
    let curve = moment_curve(&spec, &g, a.mode)?;

    let mut w = csv_writer(&a.out)?;
    w.write_record(["alpha", "energy", "moment", "regime"])?;
    for r in &curve.rows {
        w.write_record([r.alpha.to_string(), r.energy.to_string(), r.moment.to_string(), r.regime.to_string()])?;
    }
    w.flush()?;
    drop(w);
    // footer: the elastic/delaminated crossing, where the moment jumps
    let mut f = std::fs::OpenOptions::new().append(true).open(&a.out)?;
    use std::io::Write;
    match curve.crossing {
        Some(c) => writeln!(f, "# crossing alpha* = {c}")?,
        None => writeln!(f, "# crossing alpha* = none in range")?,
    }

    // split the moment curve at the jump so the plot shows the discontinuity
    let split = |pick: fn(&plyfold::scaling::MomentRow) -> f64| -> Vec<Vec<(f64, f64)>> {
        let mut out = vec![Vec::new()];
        for (k, r) in curve.rows.iter().enumerate() {
            if k > 0 && curve.rows[k - 1].delaminated != r.delaminated {
                out.push(Vec::new());
            }
            out.last_mut().unwrap().push((r.alpha, pick(r)));
        }
        out
    };
    let positive = curve.rows.iter().all(|r| r.moment > 0.0);
    let marks: Vec<f64> = curve.crossing.into_iter().collect();
    let doc = svg::panels(&[
        Panel {
            title: "energy",
            x_label: "alpha",
            y_label: "E",
            x_log: !a.linear,
            y_log: !a.linear,
            series: vec![curve.rows.iter().map(|r| (r.alpha, r.energy)).collect()],
            marks: marks.clone(),
        },
        Panel {
            title: "moment",
            x_label: "alpha",
            y_label: "dE/dalpha",
            x_log: !a.linear,
            y_log: !a.linear && positive,
            series: split(|r| r.moment),
            marks,
        },
    ]);
    std::fs::write(a.svg.clone().unwrap_or_else(|| a.out.with_extension("svg")), doc)?;
    println!(
        "{} rows written to {}; crossing {}",
        curve.rows.len(),
        a.out.display(),
        curve.crossing.map_or("none".to_string(), |c| format!("{c:.6e}"))
    );
    Ok(())
}
