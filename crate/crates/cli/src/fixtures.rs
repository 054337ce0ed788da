//! Sequence prefixes bundled into the binary so every comparison can run
//! air-gapped. Regenerate with `schroder series <name>` / the enumeration
//! commands; the files live under `fixtures/`.

/// Ids with a bundled prefix, in report order.
pub const BUNDLED_IDS: [&str; 6] = [
    "A000108", "A001003", "A001263", "A006318", "A078009", "A186338",
];

/// The bundled b-file text for an id, if any.
pub fn bundled(id: &str) -> Option<&'static str> {
    match id {
        "A000108" => Some(include_str!("../fixtures/A000108.txt")),
        "A001003" => Some(include_str!("../fixtures/A001003.txt")),
        "A001263" => Some(include_str!("../fixtures/A001263.txt")),
        "A006318" => Some(include_str!("../fixtures/A006318.txt")),
        "A078009" => Some(include_str!("../fixtures/A078009.txt")),
        "A186338" => Some(include_str!("../fixtures/A186338.txt")),
        _ => None,
    }
}

/// Resolve a sequence: local cache first, then the bundled copy, then the
/// network (unless offline).
pub fn resolve(
    id: &str,
    cache_dir: &std::path::Path,
    offline: bool,
) -> anyhow::Result<crate::bfile::BFile> {
    let cached = cache_dir.join(format!("{id}.txt"));
    if cached.exists() {
        return crate::bfile::fetch_bfile(id, cache_dir, true);
    }
    if let Some(text) = bundled(id) {
        return crate::bfile::parse_bfile(id, text, crate::bfile::BFileSource::Bundled);
    }
    crate::bfile::fetch_bfile(id, cache_dir, offline)
}
