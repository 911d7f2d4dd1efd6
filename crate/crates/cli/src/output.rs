use std::fs::{self, File};
use std::io::Write;
use std::path::Path;

use crate::Failure;

/// `# plyfold <version> <args...>`: the provenance line heading every CSV.
pub fn provenance() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("# plyfold {} {}", env!("CARGO_PKG_VERSION"), args.join(" "))
}

/// CSV writer whose first line is the provenance comment.
pub fn csv_writer(path: &Path) -> Result<csv::Writer<File>, Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut f = File::create(path)?;
    writeln!(f, "{}", provenance())?;
    Ok(csv::Writer::from_writer(f))
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

/// `n` points from `lo` to `hi`, log- or linearly spaced; a single point needs `lo == hi`.
pub fn grid(lo: f64, hi: f64, n: usize, log: bool, what: &str) -> Result<Vec<f64>, Failure> {
    let bad = |m: String| Err(Failure::Usage(format!("{what}: {m}")));
    if !(lo.is_finite() && hi.is_finite()) {
        return bad("range must be finite".into());
    }
    if n == 0 {
        return bad("need at least one point".into());
    }
    if log && lo <= 0.0 {
        return bad(format!("log grid needs a positive lower end, got {lo}"));
    }
    if n == 1 {
        return if lo == hi { Ok(vec![lo]) } else { bad("a single point needs min == max".into()) };
    }
    if hi <= lo {
        return bad(format!("empty range [{lo}, {hi}]"));
    }
    Ok((0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if log {
                (lo.ln() + t * (hi / lo).ln()).exp()
            } else {
                lo + t * (hi - lo)
            }
        })
        .map(|x| x.clamp(lo, hi))
        .collect())
}
