use std::path::PathBuf;

use clap::Args;
use plyfold::construct::{build_multilayer, ConstructionParams};
use plyfold::energy::{total_energy, QuadratureSettings};
use plyfold::scaling::{
    lower_bound, optimal_delam_length, optimize_construction, upper_bound, ConstructionKind, RegimeLabel,
};
use plyfold::verify::certify;
use plyfold::{Breakdown, Field, Params, Spec};
use serde::Serialize;

use crate::output::write_json;
use crate::{svg, Failure, SpecArgs};

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Bending angle (half the total turn).
    #[arg(long)]
    pub alpha: f64,
    /// Fold angle of the multilayer construction.
    #[arg(long, conflicts_with = "optimize")]
    pub beta: Option<f64>,
    /// Number of delaminating layers.
    #[arg(long, conflicts_with = "optimize")]
    pub n: Option<usize>,
    /// Arc length of each fold arc.
    #[arg(long = "l-arc", conflicts_with = "optimize")]
    pub l_arc: Option<f64>,
    /// Pick the lowest-energy construction instead of explicit parameters.
    #[arg(long)]
    pub optimize: bool,
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Serialize)]
struct EnergyDoc<'a> {
    construction: ConstructionKind,
    spec: Spec,
    alpha: f64,
    /// Sample and angle of the stored field (one fold of a two-fold split).
    field_spec: Spec,
    field_alpha: f64,
    params: Option<&'a Params>,
    #[serde(flatten)]
    breakdown: &'a Breakdown,
    delaminated_half_length: f64,
    predicted_half_length: Option<f64>,
    regime: RegimeLabel,
    upper_bound: f64,
    conditional_floor: f64,
}

fn outline(field: &Field) -> Vec<Vec<[f64; 2]>> {
    let l = field.spec().l;
    let m = 400;
    let xs: Vec<f64> = (0..=m).map(|i| (-l + 2.0 * l * i as f64 / m as f64).clamp(-l, l)).collect();
    field
        .layers()
        .iter()
        .map(|layer| {
            let bottom = xs.iter().map(|&x| layer.lift(x, 0.0));
            let top = xs.iter().rev().map(|&x| layer.lift(x, layer.thickness));
            bottom.chain(top).collect()
        })
        .collect()
}

pub fn run(a: &ConstructArgs) -> Result<(), Failure> {
    let spec = a.spec.spec()?;
    if !(a.alpha > 0.0 && a.alpha <= std::f64::consts::FRAC_PI_2) {
        return Err(Failure::Usage(format!("--alpha must lie in (0, pi/2], got {}", a.alpha)));
    }
    let (kind, field, breakdown, params) = if a.optimize {
        let o = optimize_construction(&spec, a.alpha)?;
        (o.kind, o.field()?, o.breakdown.clone(), o.params.clone())
    } else {
        let missing: Vec<&str> = [("--beta", a.beta.is_none()), ("--n", a.n.is_none()), ("--l-arc", a.l_arc.is_none())]
            .into_iter()
            .filter_map(|(f, m)| m.then_some(f))
            .collect();
        if !missing.is_empty() {
            return Err(Failure::Usage(format!("missing {} (or pass --optimize)", missing.join(", "))));
        }
        let p = ConstructionParams::new(&spec, a.beta.unwrap(), a.n.unwrap(), a.l_arc.unwrap())?;
        let field = build_multilayer(&spec, a.alpha, &p)?;
        let b = total_energy(&field, &QuadratureSettings::default(), 128);
        (ConstructionKind::Multilayer, field, b, Some(p))
    };
    let cert = certify(&field);
    let (ub, regime) = upper_bound(&spec, a.alpha)?;
    let doc = EnergyDoc {
        construction: kind,
        spec,
        alpha: a.alpha,
        field_spec: *field.spec(),
        field_alpha: field.alpha(),
        params: params.as_ref(),
        breakdown: &breakdown,
        delaminated_half_length: if breakdown.jump_lengths.is_empty() {
            0.0
        } else {
            breakdown.jump_lengths.iter().sum::<f64>() / (2.0 * breakdown.jump_lengths.len() as f64)
        },
        predicted_half_length: optimal_delam_length(&spec, a.alpha).ok(),
        regime,
        upper_bound: ub,
        conditional_floor: lower_bound(&spec, a.alpha, spec.n)?,
    };
    std::fs::create_dir_all(&a.out_dir)?;
    std::fs::write(a.out_dir.join("field.json"), field.to_json() + "\n")?;
    write_json(&a.out_dir.join("certificate.json"), &cert)?;
    write_json(&a.out_dir.join("energy.json"), &doc)?;
    std::fs::write(a.out_dir.join("outline.svg"), svg::outline(&outline(&field)))?;
    println!(
        "{} construction, energy {:.6e} (elastic {:.6e}, delamination {:.6e}), regime {}, certified {}",
        match kind {
            ConstructionKind::Plate => "plate",
            ConstructionKind::Multilayer => "multilayer",
            ConstructionKind::TwoFold => "two-fold",
        },
        breakdown.total,
        breakdown.elastic,
        breakdown.delamination,
        regime,
        cert.certified
    );
    if cert.certified {
        Ok(())
    } else {
        Err(Failure::Certification(format!("certificate failed: {}", cert.failures().join(", "))))
    }
}
