use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{classify_field, enumerate_tasks, ClassifyOptions, FieldReport, FieldTask};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_n: u64,
    pub jobs: usize,
    pub out_path: PathBuf,
    pub checkpoint_path: PathBuf,
    /// Stop after this many newly classified tasks (an orderly interruption).
    pub stop_after: Option<usize>,
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletedTask {
    pub p: u64,
    pub m: u32,
    pub e: u32,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub bound: u64,
    pub completed: Vec<CompletedTask>,
}

impl Checkpoint {
    pub fn new(bound: u64) -> Self {
        Checkpoint {
            bound,
            completed: Vec::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text)
                .map(Some)
                .map_err(|source| Error::Json {
                    path: path.to_path_buf(),
                    source,
                }),
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(err) => Err(Error::io(path, err)),
        }
    }

    /// Writes to a sibling temp file, then renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        write_atomic(path, text.as_bytes())
    }

    fn digests(&self) -> HashMap<(u64, u32, u32), &str> {
        self.completed
            .iter()
            .map(|c| ((c.p, c.m, c.e), c.digest.as_str()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSummary {
    pub total: usize,
    pub already_done: usize,
    pub processed: usize,
    pub violations: usize,
    pub complete: bool,
    pub wall_ms: u64,
}

/// Lowercase hex SHA-256 of one report line.
pub fn digest(line: &str) -> String {
    hex::encode(Sha256::digest(line.as_bytes()))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut file = File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        file.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
        file.sync_all().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Lines of the previous output that the checkpoint vouches for, keyed by task.
fn recover_lines(out_path: &Path, checkpoint: &Checkpoint) -> Result<BTreeMap<FieldTask, String>> {
    let mut kept = BTreeMap::new();
    let file = match File::open(out_path) {
        Ok(f) => f,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(kept),
        Err(err) => return Err(Error::io(out_path, err)),
    };
    let digests = checkpoint.digests();
    for line in BufReader::new(file).split(b'\n') {
        let line = line.map_err(|e| Error::io(out_path, e))?;
        let Ok(line) = String::from_utf8(line) else {
            continue;
        };
        let Ok(report) = serde_json::from_str::<FieldReport>(&line) else {
            continue;
        };
        let task = report.task();
        if digests.get(&(task.p, task.m, task.e)) == Some(&digest(&line).as_str()) {
            kept.insert(task, line);
        }
    }
    Ok(kept)
}

fn line_violates(line: &str) -> bool {
    serde_json::from_str::<FieldReport>(line).is_ok_and(|r| !r.conjecture_holds)
}

/// Classifies every field with `n <= max_n`, appending one JSON line per
/// field and checkpointing after each. A rerun with the same paths resumes;
/// a completed run ends with the output rewritten in `(n, q, e)` order.
pub fn run_search(config: &SearchConfig) -> Result<SearchSummary> {
    let start = Instant::now();
    let tasks = enumerate_tasks(config.max_n);
    if tasks.is_empty() {
        return Err(Error::NoTasks(config.max_n));
    }
    let mut checkpoint = match Checkpoint::load(&config.checkpoint_path)? {
        Some(cp) if cp.bound != config.max_n => {
            return Err(Error::Checkpoint {
                path: config.checkpoint_path.clone(),
                reason: format!(
                    "checkpoint bound {} differs from requested bound {}",
                    cp.bound, config.max_n
                ),
            })
        }
        Some(cp) => cp,
        None => Checkpoint::new(config.max_n),
    };

    let mut lines = recover_lines(&config.out_path, &checkpoint)?;
    checkpoint
        .completed
        .retain(|c| lines.keys().any(|t| (t.p, t.m, t.e) == (c.p, c.m, c.e)));
    let already_done = lines.len();

    // Drop anything unverified before appending.
    let mut body = String::new();
    for line in lines.values() {
        body.push_str(line);
        body.push('\n');
    }
    write_atomic(&config.out_path, body.as_bytes())?;
    checkpoint.save(&config.checkpoint_path)?;

    let pending: Vec<FieldTask> = tasks
        .iter()
        .filter(|t| !lines.contains_key(t))
        .copied()
        .collect();
    let budget = config.stop_after.unwrap_or(usize::MAX).min(pending.len());
    let options = ClassifyOptions {
        timings: config.timings,
        ..ClassifyOptions::default()
    };

    let next = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);
    let mut processed = 0usize;
    let mut failure: Option<Error> = None;
    let jobs = config.jobs.max(1).min(budget.max(1));

    std::thread::scope(|scope| -> Result<()> {
        let (tx, rx) = mpsc::channel::<Result<FieldReport>>();
        for _ in 0..jobs {
            let tx = tx.clone();
            let (next, abort, pending) = (&next, &abort, &pending);
            scope.spawn(move || loop {
                if abort.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= budget {
                    break;
                }
                if tx.send(classify_field(pending[i], options)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut out = OpenOptions::new()
            .append(true)
            .open(&config.out_path)
            .map_err(|e| Error::io(&config.out_path, e))?;
        for result in rx {
            let report = match result {
                Ok(r) => r,
                Err(err) => {
                    abort.store(true, Ordering::Relaxed);
                    failure.get_or_insert(err);
                    continue;
                }
            };
            if failure.is_some() {
                continue;
            }
            let line = report.to_json_line();
            let step = writeln!(out, "{line}")
                .and_then(|_| out.flush())
                .map_err(|e| Error::io(&config.out_path, e))
                .and_then(|_| {
                    checkpoint.completed.push(CompletedTask {
                        p: report.p,
                        m: report.m,
                        e: report.e,
                        digest: digest(&line),
                    });
                    checkpoint.save(&config.checkpoint_path)
                });
            if let Err(err) = step {
                abort.store(true, Ordering::Relaxed);
                failure = Some(err);
                continue;
            }
            lines.insert(report.task(), line);
            processed += 1;
        }
        Ok(())
    })?;
    if let Some(err) = failure {
        return Err(err);
    }

    let complete = lines.len() == tasks.len();
    if complete {
        let mut body = String::new();
        for line in lines.values() {
            body.push_str(line);
            body.push('\n');
        }
        write_atomic(&config.out_path, body.as_bytes())?;
        checkpoint.completed.sort_by_key(|c| {
            lines
                .keys()
                .position(|t| (t.p, t.m, t.e) == (c.p, c.m, c.e))
        });
        checkpoint.save(&config.checkpoint_path)?;
    }
    Ok(SearchSummary {
        total: tasks.len(),
        already_done,
        processed,
        violations: lines.values().filter(|l| line_violates(l)).count(),
        complete,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(dir: &Path, max_n: u64, jobs: usize) -> SearchConfig {
        SearchConfig {
            max_n,
            jobs,
            out_path: dir.join("out.jsonl"),
            checkpoint_path: dir.join("out.ckpt"),
            stop_after: None,
            timings: false,
        }
    }

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(
            digest(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn full_run_is_sorted_and_checkpointed() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(dir.path(), 100, 3);
        let summary = run_search(&cfg).unwrap();
        assert!(summary.complete);
        assert_eq!(summary.violations, 0);
        let text = fs::read_to_string(&cfg.out_path).unwrap();
        let reports: Vec<FieldReport> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        let keys: Vec<_> = reports.iter().map(|r| r.task().key()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(reports.len(), enumerate_tasks(100).len());
        let cp = Checkpoint::load(&cfg.checkpoint_path).unwrap().unwrap();
        assert_eq!(cp.bound, 100);
        for (line, done) in text.lines().zip(&cp.completed) {
            assert_eq!(digest(line), done.digest);
        }
    }

    #[test]
    fn interrupted_run_resumes_to_identical_output() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_search(&config(a.path(), 200, 1)).unwrap();

        let mut cfg = config(b.path(), 200, 2);
        cfg.stop_after = Some(3);
        let first = run_search(&cfg).unwrap();
        assert!(!first.complete);
        assert_eq!(first.processed, 3);
        // a torn trailing line is discarded on resume
        let mut out = OpenOptions::new().append(true).open(&cfg.out_path).unwrap();
        write!(out, "{{\"n\":99").unwrap();
        drop(out);
        cfg.stop_after = None;
        let second = run_search(&cfg).unwrap();
        assert_eq!(second.already_done, 3);
        assert!(second.complete);
        assert_eq!(
            fs::read(a.path().join("out.jsonl")).unwrap(),
            fs::read(&cfg.out_path).unwrap()
        );
    }

    #[test]
    fn bound_mismatch_and_empty_bound() {
        let dir = tempfile::tempdir().unwrap();
        run_search(&config(dir.path(), 30, 1)).unwrap();
        assert!(matches!(
            run_search(&config(dir.path(), 40, 1)),
            Err(Error::Checkpoint { .. })
        ));
        assert!(matches!(
            run_search(&config(dir.path(), 3, 1)),
            Err(Error::NoTasks(3))
        ));
    }
}
