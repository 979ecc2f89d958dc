//! CSV emission and parsing for the benchmark results.
//!
//! Numbers are written with 17 significant digits so a rerun with the same
//! seed reproduces the files byte for byte.

use unibandit::{Real, RealRunResult};

/// Fixed-width scientific notation, 17 significant digits.
pub fn fmt_real(x: Real) -> String {
    format!("{x:.16e}")
}

/// One row per policy and checkpoint: `policy,t,mean_regret,stderr,replicates`.
pub fn aggregate_csv(result: &RealRunResult) -> String {
    let mut out = String::from("policy,t,mean_regret,stderr,replicates\n");
    for policy in &result.policies {
        for (i, &t) in result.checkpoints.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                policy.name,
                t,
                fmt_real(policy.mean_regret[i]),
                fmt_real(policy.stderr_regret[i]),
                result.replicates,
            ));
        }
    }
    out
}

/// One row per policy and arm: `policy,arm,mean_pulls`.
pub fn pulls_csv(result: &RealRunResult) -> String {
    let mut out = String::from("policy,arm,mean_pulls\n");
    for policy in &result.policies {
        for (i, &pulls) in policy.mean_pulls.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", policy.name, i + 1, fmt_real(pulls)));
        }
    }
    out
}

/// A parsed regret curve for one policy.
#[derive(Debug, Clone)]
pub struct Series {
    pub policy: String,
    pub points: Vec<(u64, Real, Real)>,
}

/// Parse the aggregate schema back; policies keep first-appearance order.
pub fn parse_aggregate_csv(text: &str) -> Result<Vec<Series>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some("policy,t,mean_regret,stderr,replicates") => {}
        Some(other) => return Err(format!("unexpected CSV header {other:?}")),
        None => return Err("empty CSV".into()),
    }
    let mut series: Vec<Series> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(format!("line {}: expected 5 fields", lineno + 2));
        }
        let parse_f = |s: &str, what: &str| -> Result<Real, String> {
            s.parse()
                .map_err(|_| format!("line {}: bad {what} {s:?}", lineno + 2))
        };
        let t: u64 = fields[1]
            .parse()
            .map_err(|_| format!("line {}: bad t {:?}", lineno + 2, fields[1]))?;
        if t == 0 {
            return Err(format!("line {}: t must be at least 1", lineno + 2));
        }
        let mean = parse_f(fields[2], "mean_regret")?;
        let stderr = parse_f(fields[3], "stderr")?;
        match series.iter_mut().find(|s| s.policy == fields[0]) {
            Some(s) => s.points.push((t, mean, stderr)),
            None => series.push(Series {
                policy: fields[0].to_string(),
                points: vec![(t, mean, stderr)],
            }),
        }
    }
    if series.is_empty() {
        return Err("CSV has a header but no data rows".into());
    }
    Ok(series)
}
