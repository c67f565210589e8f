//! Append-only JSON-lines store of exact counts.
//!
//! One record per line:
//! `{"class":"magic","n":4,"d":2,"t":7,"strict":false,"count":"2024"}`.
//! Counts are decimal strings because they outgrow 64 bits quickly.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::classes::{ClassKind, SquareClass};
use crate::count::{CountSample, LatticeCounter, DEFAULT_BUDGET};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    class: String,
    n: usize,
    d: usize,
    t: u64,
    strict: bool,
    count: String,
}

impl From<&CountSample> for Record {
    fn from(s: &CountSample) -> Self {
        Record {
            class: s.class.kind().name().to_string(),
            n: s.class.n(),
            d: s.class.d(),
            t: s.t,
            strict: s.strict,
            count: s.count.to_string(),
        }
    }
}

impl TryFrom<Record> for CountSample {
    type Error = Error;

    fn try_from(r: Record) -> Result<Self> {
        let kind = ClassKind::from_name(&r.class)
            .ok_or_else(|| Error::Cache(format!("unknown class {:?}", r.class)))?;
        let count = r
            .count
            .parse::<BigUint>()
            .map_err(|e| Error::Cache(format!("bad count {:?}: {e}", r.count)))?;
        Ok(CountSample {
            class: SquareClass::with_dimension(kind, r.n, r.d)?,
            t: r.t,
            strict: r.strict,
            count,
        })
    }
}

impl CountSample {
    /// The sample as one cache line (without the trailing newline).
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&Record::from(self)).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let record: Record = serde_json::from_str(line)?;
        record.try_into()
    }
}

type Key = (SquareClass, u64, bool);

/// Count store keyed on `(class, n, d, t, strict)`, optionally backed by a
/// file. Writes are serialized through a lock.
#[derive(Debug, Default)]
pub struct SampleCache {
    path: Option<PathBuf>,
    entries: Mutex<HashMap<Key, BigUint>>,
    file: Mutex<Option<File>>,
}

impl SampleCache {
    /// A cache that lives only as long as the value.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; new samples are appended to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let s = CountSample::from_json_line(&line)
                    .map_err(|e| Error::Cache(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
                entries.insert((s.class, s.t, s.strict), s.count);
            }
        }
        Ok(SampleCache {
            path: Some(path),
            entries: Mutex::new(entries),
            file: Mutex::new(None),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, class: &SquareClass, t: u64, strict: bool) -> Option<BigUint> {
        self.entries
            .lock()
            .expect("cache lock")
            .get(&(*class, t, strict))
            .cloned()
    }

    pub fn insert(&self, sample: &CountSample) -> Result<()> {
        let key = (sample.class, sample.t, sample.strict);
        {
            let mut entries = self.entries.lock().expect("cache lock");
            if entries.contains_key(&key) {
                return Ok(());
            }
            entries.insert(key, sample.count.clone());
        }
        if let Some(path) = &self.path {
            let mut file = self.file.lock().expect("cache file lock");
            if file.is_none() {
                *file = Some(OpenOptions::new().create(true).append(true).open(path)?);
            }
            let f = file.as_mut().expect("opened above");
            writeln!(f, "{}", sample.to_json_line())?;
            f.flush()?;
        }
        Ok(())
    }
}

/// Counts through a cache, one [`LatticeCounter`] per call.
#[derive(Debug)]
pub struct Sampler {
    cache: SampleCache,
    budget: u64,
}

impl Sampler {
    pub fn new(cache: SampleCache) -> Self {
        Sampler {
            cache,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn cache(&self) -> &SampleCache {
        &self.cache
    }

    pub fn count(&self, class: &SquareClass, t: u64, strict: bool) -> Result<BigUint> {
        Ok(self.count_batch(class, &[t], strict)?.remove(0).count)
    }

    /// One sample per `t`, in input order. Cache hits skip recomputation.
    pub fn count_batch(
        &self,
        class: &SquareClass,
        ts: &[u64],
        strict: bool,
    ) -> Result<Vec<CountSample>> {
        let mut counter = None;
        ts.iter()
            .map(|&t| {
                if let Some(count) = self.cache.get(class, t, strict) {
                    return Ok(CountSample {
                        class: *class,
                        t,
                        strict,
                        count,
                    });
                }
                if counter.is_none() {
                    counter = Some(LatticeCounter::new(class)?.with_budget(self.budget));
                }
                let sample = counter.as_ref().expect("set above").sample(t, strict)?;
                self.cache.insert(&sample)?;
                Ok(sample)
            })
            .collect()
    }
}
