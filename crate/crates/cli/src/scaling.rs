use std::path::PathBuf;

use clap::Args;
use plyfold::scaling::{verify_scaling, RegimeLabel, SweepParam, SweepSpec};

use crate::output::{csv_writer, write_json};
use crate::{Failure, SpecArgs};

#[derive(Args, Debug)]
pub struct ScalingArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub alpha: f64,
    /// Swept parameter: alpha, gamma, h, L or N.
    #[arg(long)]
    pub sweep: SweepParam,
    /// Declared regime, e.g. localized-full.
    #[arg(long)]
    pub regime: RegimeLabel,
    /// Width of the sweep in decades, centred (log scale) on the base value.
    #[arg(long, default_value_t = 1.0)]
    pub decades: f64,
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    /// Slope tolerance (default 0.05 elastic, 0.1 otherwise).
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, default_value = "scaling.json")]
    pub out: PathBuf,
    /// Optional per-point CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub fn run(a: &ScalingArgs) -> Result<(), Failure> {
    let base = a.spec.spec()?;
    if !(a.decades > 0.0 && a.decades.is_finite()) {
        return Err(Failure::Usage(format!("--decades must be positive, got {}", a.decades)));
    }
    let centre = a.sweep.value(&base, a.alpha);
    let half = 10f64.powf(a.decades / 2.0);
    let sweep = SweepSpec {
        base,
        alpha: a.alpha,
        param: a.sweep,
        lo: centre / half,
        hi: centre * half,
        points: a.points,
        regime: a.regime,
        tolerance: a.tolerance,
    };
    let r = verify_scaling(&sweep)?;
    write_json(&a.out, &r)?;
    if let Some(p) = &a.csv {
        let mut w = csv_writer(p)?;
        w.write_record([a.sweep.name(), "energy", "regime", "upper_bound", "conditional_floor"])?;
        for pt in &r.points {
            w.write_record([
                pt.value.to_string(),
                pt.energy.to_string(),
                pt.label.to_string(),
                pt.upper_bound.to_string(),
                pt.lower_bound.to_string(),
            ])?;
        }
        w.flush()?;
    }
    println!(
        "{} sweep in {}: slope {:.4}, expected {:.4} +- {}, max residual {:.3e}",
        a.sweep, a.regime, r.slope, r.expected, r.tolerance, r.max_residual
    );
    if !r.in_regime {
        let out: Vec<String> =
            r.points.iter().filter(|p| !p.in_regime).map(|p| format!("{} ({})", p.value, p.label)).collect();
        return Err(Failure::Regime(format!("sweep leaves {}: {}", a.regime, out.join(", "))));
    }
    if !r.passed {
        return Err(Failure::Slope(format!("slope {:.4} outside {:.4} +- {}", r.slope, r.expected, r.tolerance)));
    }
    Ok(())
}
