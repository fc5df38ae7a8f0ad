use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::campaign::{CampaignOutcome, CampaignReport};
use crate::error::NoahError;
use crate::result::RunResult;

/// Pretty JSON with a trailing newline.
pub fn summary_json(report: &CampaignReport) -> Result<String, NoahError> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn trace_csv(run: &RunResult<f64>) -> Result<Vec<u8>, NoahError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "iteration",
        "best_fitness",
        "free_agents",
        "active_colonies",
    ])?;
    for row in &run.trace {
        w.write_record([
            row.iteration.to_string(),
            row.best_fitness.to_string(),
            row.free_agents.to_string(),
            row.active_colonies.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| NoahError::Io(e.into_error()))
}

/// One row per method: mean and rank for every benchmark, then the average rank.
pub fn ranking_csv(report: &CampaignReport) -> Result<Vec<u8>, NoahError> {
    let t = &report.ranking;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["method".to_string()];
    for b in &t.benchmarks {
        header.push(format!("{b}_mean"));
        header.push(format!("{b}_rank"));
    }
    header.push("average_rank".into());
    w.write_record(&header)?;
    for (mi, m) in t.methods.iter().enumerate() {
        let mut rec = vec![m.name().to_string()];
        for bi in 0..t.benchmarks.len() {
            rec.push(t.means[mi][bi].to_string());
            rec.push(t.ranks[mi][bi].to_string());
        }
        rec.push(t.average_rank[mi].to_string());
        w.write_record(&rec)?;
    }
    w.into_inner().map_err(|e| NoahError::Io(e.into_error()))
}

/// Relative path of a run's trace inside the report directory. Campaigns
/// over several objectives keep each objective's traces in its own folder.
pub fn trace_path(run: &RunResult<f64>, multi_objective: bool) -> PathBuf {
    let file = format!("trace_{}_{}.csv", run.method, run.seed);
    if multi_objective {
        PathBuf::from(&run.objective).join(file)
    } else {
        PathBuf::from(file)
    }
}

fn temp_name(path: &Path) -> PathBuf {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!(".{name}.partial"))
}

/// Writes every file to a temporary sibling first and renames only when all
/// writes succeeded, so a failure never leaves a truncated report behind.
fn write_all_atomic(files: &[(PathBuf, Vec<u8>)]) -> Result<(), NoahError> {
    let mut staged: Vec<PathBuf> = Vec::with_capacity(files.len());
    let result = (|| {
        for (path, bytes) in files {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            let tmp = temp_name(path);
            staged.push(tmp.clone());
            let mut f = fs::File::create(&tmp)?;
            f.write_all(bytes)?;
            f.sync_all()?;
        }
        for ((path, _), tmp) in files.iter().zip(&staged) {
            fs::rename(tmp, path)?;
        }
        Ok(())
    })();
    if result.is_err() {
        for tmp in &staged {
            let _ = fs::remove_file(tmp);
        }
    }
    result
}

/// Writes `summary.json`, `ranking.csv` and one trace CSV per run into `dir`.
/// Returns the written paths.
pub fn emit_report(outcome: &CampaignOutcome, dir: &Path) -> Result<Vec<PathBuf>, NoahError> {
    let multi = outcome.report.benchmarks.len() > 1;
    let mut files = vec![
        (
            dir.join("summary.json"),
            summary_json(&outcome.report)?.into_bytes(),
        ),
        (dir.join("ranking.csv"), ranking_csv(&outcome.report)?),
    ];
    for run in &outcome.runs {
        files.push((dir.join(trace_path(run, multi)), trace_csv(run)?));
    }
    fs::create_dir_all(dir)?;
    write_all_atomic(&files)?;
    Ok(files.into_iter().map(|(p, _)| p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_campaign, CampaignConfig};

    fn tiny() -> CampaignConfig {
        CampaignConfig::parse("methods = noah\nn_agents = 5\nmax_iterations = 5\nn_seeds = 1\n")
            .unwrap()
    }

    #[test]
    fn one_method_one_seed_gives_three_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_campaign(&tiny(), Some(1)).unwrap();
        let written = emit_report(&out, dir.path()).unwrap();
        assert_eq!(written.len(), 3);
        let mut names: Vec<String> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        names.sort();
        assert_eq!(
            names,
            vec!["ranking.csv", "summary.json", "trace_noah_0.csv"]
        );
    }

    #[test]
    fn trace_header_and_rows() {
        let out = run_campaign(&tiny(), Some(1)).unwrap();
        let text = String::from_utf8(trace_csv(&out.runs[0]).unwrap()).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("iteration,best_fitness,free_agents,active_colonies")
        );
        assert_eq!(lines.count(), out.runs[0].trace.len());
    }

    #[test]
    fn summary_round_trips() {
        let out = run_campaign(&tiny(), Some(1)).unwrap();
        let text = summary_json(&out.report).unwrap();
        let parsed: CampaignReport = serde_json::from_str(&text).unwrap();
        assert_eq!(summary_json(&parsed).unwrap(), text);
    }

    #[test]
    fn failed_write_leaves_nothing() {
        let dir = tempfile::tempdir().unwrap();
        // a directory where a file should go makes the final rename fail
        fs::create_dir(dir.path().join("b.csv")).unwrap();
        fs::write(dir.path().join("b.csv").join("keep"), "x").unwrap();
        let files = vec![
            (dir.path().join("a.csv"), b"1".to_vec()),
            (dir.path().join("b.csv"), b"2".to_vec()),
        ];
        assert!(write_all_atomic(&files).is_err());
        let mut left: Vec<String> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        left.sort();
        assert!(!left.iter().any(|n| n.ends_with(".partial")), "{left:?}");
    }
}
