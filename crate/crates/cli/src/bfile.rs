//! OEIS b-file parsing, fetching with a verbatim byte cache, and termwise
//! comparison against computed series.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use num::{BigInt, BigRational};
use schroder_core::series::Series;

/// Where the entries of a [`BFile`] came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BFileSource {
    Bundled,
    LocalFile(PathBuf),
    Cache(PathBuf),
    Fetched,
}

/// A block of sequence terms in the OEIS bulk format: lines of
/// `n a(n)`, `#` comments and blank lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub id: String,
    pub entries: Vec<(i64, BigInt)>,
    pub source: BFileSource,
}

impl BFile {
    pub fn value_at(&self, index: i64) -> Option<&BigInt> {
        self.entries
            .iter()
            .find(|(n, _)| *n == index)
            .map(|(_, v)| v)
    }
}

/// Is `id` of the form `A` followed by six digits?
pub fn well_formed_id(id: &str) -> bool {
    let bytes = id.as_bytes();
    bytes.len() == 7 && bytes[0] == b'A' && bytes[1..].iter().all(u8::is_ascii_digit)
}

/// Parse b-file text. Indices must be strictly increasing; malformed lines
/// are reported with their line number.
pub fn parse_bfile(id: &str, text: &str, source: BFileSource) -> anyhow::Result<BFile> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (n, v, rest) = (parts.next(), parts.next(), parts.next());
        let parsed: Option<(i64, BigInt)> = match (n, v, rest) {
            (Some(n), Some(v), None) => n
                .parse()
                .ok()
                .zip(BigInt::from_str(v).ok()),
            _ => None,
        };
        let (n, v) = parsed.ok_or_else(|| {
            anyhow!("{id}: malformed b-file line {}: `{line}`", lineno + 1)
        })?;
        if let Some((prev, _)) = entries.last() {
            if n <= *prev {
                bail!("{id}: non-monotone index {n} after {prev} on line {}", lineno + 1);
            }
        }
        entries.push((n, v));
    }
    Ok(BFile {
        id: id.to_string(),
        entries,
        source,
    })
}

fn cache_path(cache_dir: &Path, id: &str) -> PathBuf {
    cache_dir.join(format!("{id}.txt"))
}

/// Fetch a b-file, reading the verbatim byte cache first. With `offline`
/// set, a cold cache is an error (callers usually map it to a skip).
pub fn fetch_bfile(id: &str, cache_dir: &Path, offline: bool) -> anyhow::Result<BFile> {
    if !well_formed_id(id) {
        bail!("`{id}` is not a well-formed sequence id (expected A followed by six digits)");
    }
    let path = cache_path(cache_dir, id);
    if path.exists() {
        let text = fs::read_to_string(&path)
            .with_context(|| format!("reading cached {}", path.display()))?;
        return parse_bfile(id, &text, BFileSource::Cache(path));
    }
    if offline {
        bail!("offline and no cached copy of {id} in {}", cache_dir.display());
    }
    let url = format!("https://oeis.org/{id}/b{}.txt", &id[1..]);
    let config = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(30)))
        .build();
    let agent: ureq::Agent = config.into();
    // stay polite to the sequence server; fetches are rare and serialized
    std::thread::sleep(Duration::from_millis(500));
    let text = agent
        .get(&url)
        .call()
        .with_context(|| format!("fetching {url}"))?
        .body_mut()
        .read_to_string()
        .with_context(|| format!("reading body of {url}"))?;
    fs::create_dir_all(cache_dir)
        .with_context(|| format!("creating cache dir {}", cache_dir.display()))?;
    fs::write(&path, text.as_bytes())
        .with_context(|| format!("writing cache file {}", path.display()))?;
    parse_bfile(id, &text, BFileSource::Fetched)
}

/// Outcome of a termwise comparison over the overlapping index range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareOutcome {
    pub compared: usize,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: BigInt,
    pub computed: BigRational,
}

impl CompareOutcome {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn describe(&self) -> String {
        match &self.first_mismatch {
            None => format!("{} terms agree", self.compared),
            Some(m) => format!(
                "mismatch at index {}: sequence value {} vs computed {}",
                m.index, m.expected, m.computed
            ),
        }
    }
}

/// Compare series coefficients against b-file values; series index 0 is
/// aligned with b-file index `offset`.
pub fn compare(series: &Series, bfile: &BFile, offset: i64) -> anyhow::Result<CompareOutcome> {
    let mut compared = 0usize;
    let mut first_mismatch = None;
    for (n, value) in &bfile.entries {
        let i = n - offset;
        if i < 0 || i as usize > series.trunc() {
            continue;
        }
        compared += 1;
        let computed = series.coeff(i as usize);
        if first_mismatch.is_none()
            && computed != &BigRational::from_integer(value.clone())
        {
            first_mismatch = Some(Mismatch {
                index: *n,
                expected: value.clone(),
                computed: computed.clone(),
            });
        }
    }
    if compared == 0 {
        bail!(
            "empty overlap between {} and a series truncated at {}",
            bfile.id,
            series.trunc()
        );
    }
    Ok(CompareOutcome {
        compared,
        first_mismatch,
    })
}
