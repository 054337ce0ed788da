//! Steps, lattice paths, admissibility and path statistics.
//!
//! A path lives on the integer lattice, starts at the origin, never goes
//! below the x-axis and ends on it. Steps come in three kinds; an up or
//! down step of magnitude `r` displaces by `(r, ±r)`, a horizontal step of
//! magnitude `r` displaces by `(2r, 0)`. The *order* of a path is half its
//! total width.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// The three step shapes. The declaration order (`Up < Down < Horizontal`)
/// is the enumeration order used everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    Up,
    Down,
    Horizontal,
}

/// A single step: a kind together with a positive magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    kind: StepKind,
    magnitude: u32,
}

impl Step {
    pub fn new(kind: StepKind, magnitude: u32) -> Self {
        assert!(magnitude >= 1, "step magnitude must be positive");
        Step { kind, magnitude }
    }

    pub fn up(r: u32) -> Self {
        Step::new(StepKind::Up, r)
    }

    pub fn down(r: u32) -> Self {
        Step::new(StepKind::Down, r)
    }

    pub fn horizontal(r: u32) -> Self {
        Step::new(StepKind::Horizontal, r)
    }

    pub fn kind(&self) -> StepKind {
        self.kind
    }

    pub fn magnitude(&self) -> u32 {
        self.magnitude
    }

    /// Horizontal displacement: `r` for diagonal steps, `2r` for horizontal.
    pub fn width(&self) -> u64 {
        match self.kind {
            StepKind::Up | StepKind::Down => u64::from(self.magnitude),
            StepKind::Horizontal => 2 * u64::from(self.magnitude),
        }
    }

    /// Vertical displacement.
    pub fn rise(&self) -> i64 {
        match self.kind {
            StepKind::Up => i64::from(self.magnitude),
            StepKind::Down => -i64::from(self.magnitude),
            StepKind::Horizontal => 0,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            StepKind::Up => 'U',
            StepKind::Down => 'D',
            StepKind::Horizontal => 'H',
        };
        if self.magnitude == 1 {
            write!(f, "{c}")
        } else {
            write!(f, "{c}{}", self.magnitude)
        }
    }
}

/// One of the six step families.
///
/// * `S1` — up/down of magnitude 1 (Dyck paths);
/// * `S2` — up/down of any magnitude;
/// * `S3` — up/down of magnitude 1 plus the `(2,0)` horizontal (Schröder paths);
/// * `S4` — all kinds, any magnitude;
/// * `S5` — up/down of magnitude 1, horizontals of any magnitude;
/// * `S6` — up/down of any magnitude, horizontals of magnitude 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepSet {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl StepSet {
    pub const ALL: [StepSet; 6] = [
        StepSet::S1,
        StepSet::S2,
        StepSet::S3,
        StepSet::S4,
        StepSet::S5,
        StepSet::S6,
    ];

    /// Whether horizontal steps are allowed at all.
    pub fn allows_horizontal(self) -> bool {
        !matches!(self, StepSet::S1 | StepSet::S2)
    }

    /// Whether up/down steps may have magnitude greater than 1.
    pub fn free_diagonal_magnitude(self) -> bool {
        matches!(self, StepSet::S2 | StepSet::S4 | StepSet::S6)
    }

    /// Whether horizontal steps may have magnitude greater than 1.
    pub fn free_horizontal_magnitude(self) -> bool {
        matches!(self, StepSet::S4 | StepSet::S5)
    }

    /// Is this step admissible in the family?
    pub fn admits(self, step: Step) -> bool {
        match step.kind() {
            StepKind::Up | StepKind::Down => {
                step.magnitude() == 1 || self.free_diagonal_magnitude()
            }
            StepKind::Horizontal => {
                self.allows_horizontal()
                    && (step.magnitude() == 1 || self.free_horizontal_magnitude())
            }
        }
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as u8 + 1;
        write!(f, "S{i}")
    }
}

impl FromStr for StepSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1" => Ok(StepSet::S1),
            "s2" => Ok(StepSet::S2),
            "s3" => Ok(StepSet::S3),
            "s4" => Ok(StepSet::S4),
            "s5" => Ok(StepSet::S5),
            "s6" => Ok(StepSet::S6),
            other => Err(Error::ParsePath(format!("unknown step set `{other}`"))),
        }
    }
}

/// Which class of a family is meant: `L` is the full set of paths, `A` the
/// subset with no horizontal step on the x-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    L,
    A,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::L => write!(f, "L"),
            Variant::A => write!(f, "A"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l" => Ok(Variant::L),
            "a" => Ok(Variant::A),
            other => Err(Error::ParsePath(format!("unknown variant `{other}`"))),
        }
    }
}

/// A finite sequence of steps. Paths are immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn from_steps(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn width(&self) -> u64 {
        self.steps.iter().map(Step::width).sum()
    }

    /// Half the total width. Meaningful for balanced paths, whose width is
    /// always even.
    pub fn order(&self) -> u64 {
        self.width() / 2
    }

    /// Vertex heights after each step (the initial height 0 is not included).
    pub fn heights(&self) -> impl Iterator<Item = i64> + '_ {
        self.steps.iter().scan(0i64, |h, s| {
            *h += s.rise();
            Some(*h)
        })
    }

    pub fn contains_up(&self) -> bool {
        self.steps.iter().any(|s| s.kind() == StepKind::Up)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        let mut chars = s.chars().peekable();
        let mut pos = 0usize;
        while let Some(c) = chars.next() {
            pos += 1;
            let kind = match c {
                'U' => StepKind::Up,
                'D' => StepKind::Down,
                'H' => StepKind::Horizontal,
                other => {
                    return Err(Error::ParsePath(format!(
                        "unexpected character `{other}` at position {pos}"
                    )))
                }
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
                pos += 1;
            }
            let magnitude = if digits.is_empty() {
                1
            } else {
                digits
                    .parse::<u32>()
                    .ok()
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| {
                        Error::ParsePath(format!("bad magnitude `{digits}` at position {pos}"))
                    })?
            };
            steps.push(Step::new(kind, magnitude));
        }
        Ok(LatticePath::from_steps(steps))
    }
}

/// Statistics of a nonempty path. `pyramid_weight` is only defined for
/// Dyck paths and is `None` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStats {
    pub order: u64,
    pub diagonal_runs: u64,
    pub horizontal_runs: u64,
    pub peaks: u64,
    pub runs: u64,
    pub pyramid_weight: Option<u64>,
}

/// Position of a path relative to the four first/last-step classes of
/// up-containing Schröder paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UClass {
    /// starts with `U`, ends with `D`
    U1,
    /// starts with `H`, ends with `D`
    U2,
    /// starts with `U`, ends with `H`
    U3,
    /// starts and ends with `H`
    U4,
    /// no up step at all
    HOnly,
}

impl fmt::Display for UClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UClass::U1 => write!(f, "U1"),
            UClass::U2 => write!(f, "U2"),
            UClass::U3 => write!(f, "U3"),
            UClass::U4 => write!(f, "U4"),
            UClass::HOnly => write!(f, "H-only"),
        }
    }
}

/// Is `path` a member of the family over `set` (variant `L`)? The empty
/// path is not a member of any family.
pub fn validate(path: &LatticePath, set: StepSet) -> bool {
    if path.is_empty() {
        return false;
    }
    let mut h = 0i64;
    for s in path.steps() {
        if !set.admits(*s) {
            return false;
        }
        h += s.rise();
        if h < 0 {
            return false;
        }
    }
    h == 0
}

/// As [`validate`], additionally rejecting horizontal steps at height 0
/// when `variant` is [`Variant::A`].
pub fn validate_variant(path: &LatticePath, set: StepSet, variant: Variant) -> bool {
    if !validate(path, set) {
        return false;
    }
    match variant {
        Variant::L => true,
        Variant::A => !has_axis_horizontal(path),
    }
}

fn has_axis_horizontal(path: &LatticePath) -> bool {
    let mut h = 0i64;
    for s in path.steps() {
        if s.kind() == StepKind::Horizontal && h == 0 {
            return true;
        }
        h += s.rise();
    }
    false
}

/// All statistics of a nonempty path.
///
/// A *run* is a vertex joining two consecutive identical steps (same kind
/// and same magnitude); it is diagonal when the steps are up or down,
/// horizontal when they are horizontal. A *peak* is a vertex joining an up
/// step to a down step.
pub fn stats(path: &LatticePath) -> Result<PathStats> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut diagonal_runs = 0;
    let mut horizontal_runs = 0;
    let mut peaks = 0;
    for pair in path.steps().windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a == b {
            match a.kind() {
                StepKind::Up | StepKind::Down => diagonal_runs += 1,
                StepKind::Horizontal => horizontal_runs += 1,
            }
        }
        if a.kind() == StepKind::Up && b.kind() == StepKind::Down {
            peaks += 1;
        }
    }
    let pyramid_weight = if validate(path, StepSet::S1) {
        Some(dyck_pyramid_weight(path))
    } else {
        None
    };
    Ok(PathStats {
        order: path.order(),
        diagonal_runs,
        horizontal_runs,
        peaks,
        runs: diagonal_runs + horizontal_runs,
        pyramid_weight,
    })
}

/// Pyramid weight of a Dyck path: the sum of heights of its maximal
/// `U^h D^h` factors. Each such factor contains exactly one peak, and its
/// height is the smaller of the up-run ending at the peak and the down-run
/// starting there.
pub fn pyramid_weight(path: &LatticePath) -> Result<u64> {
    if !validate(path, StepSet::S1) {
        return Err(Error::NotDyck);
    }
    Ok(dyck_pyramid_weight(path))
}

fn dyck_pyramid_weight(path: &LatticePath) -> u64 {
    let steps = path.steps();
    let mut weight = 0u64;
    for t in 1..steps.len() {
        if steps[t - 1].kind() == StepKind::Up && steps[t].kind() == StepKind::Down {
            let ups = steps[..t]
                .iter()
                .rev()
                .take_while(|s| s.kind() == StepKind::Up)
                .count();
            let downs = steps[t..]
                .iter()
                .take_while(|s| s.kind() == StepKind::Down)
                .count();
            weight += ups.min(downs) as u64;
        }
    }
    weight
}

/// True when every intermediate vertex lies strictly above the x-axis.
pub fn is_primitive(path: &LatticePath) -> bool {
    let n = path.len();
    path.heights().take(n.saturating_sub(1)).all(|h| h > 0)
}

/// The unique factorization of a path at its interior returns to the
/// x-axis. Fails when a horizontal step sits on the axis, since such a
/// factor would not be primitive.
pub fn primitive_factorization(path: &LatticePath) -> Result<Vec<LatticePath>> {
    if has_axis_horizontal(path) {
        return Err(Error::HorizontalOnAxis);
    }
    let mut factors = Vec::new();
    let mut current = Vec::new();
    let mut h = 0i64;
    for s in path.steps() {
        current.push(*s);
        h += s.rise();
        if h == 0 {
            factors.push(LatticePath::from_steps(std::mem::take(&mut current)));
        }
    }
    debug_assert!(current.is_empty(), "path must end on the x-axis");
    Ok(factors)
}

/// Classify a Schröder path by its first and last step.
///
/// Expects a valid path over `S3` (so the first step is `U` or `H` and the
/// last is `D` or `H`).
pub fn classify_u(path: &LatticePath) -> UClass {
    if !path.contains_up() {
        return UClass::HOnly;
    }
    let first = path.steps().first().map(Step::kind);
    let last = path.steps().last().map(Step::kind);
    match (first, last) {
        (Some(StepKind::Up), Some(StepKind::Down)) => UClass::U1,
        (Some(StepKind::Horizontal), Some(StepKind::Down)) => UClass::U2,
        (Some(StepKind::Up), Some(StepKind::Horizontal)) => UClass::U3,
        _ => UClass::U4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["UD", "UHD", "U3D2DH2", "H2", ""] {
            assert_eq!(path(s).to_string(), s);
        }
        assert_eq!(path("U3").steps()[0], Step::up(3));
        assert_eq!(path("H2").steps()[0].width(), 4);
        assert_eq!(path("U12").steps()[0].magnitude(), 12);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("X".parse::<LatticePath>().is_err());
        assert!("U0".parse::<LatticePath>().is_err());
        assert!("3U".parse::<LatticePath>().is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&path("UD"), StepSet::S1));
        assert!(!validate(&path("DU"), StepSet::S1));
        assert!(!validate(&path("H"), StepSet::S1));
        assert!(validate(&path("H"), StepSet::S3));
        assert!(validate(&path("U2D2"), StepSet::S2));
        assert!(!validate(&path("U2D2"), StepSet::S1));
        assert!(!validate(&path("UU"), StepSet::S1)); // does not return to the axis
        assert!(!validate(&LatticePath::default(), StepSet::S1));
        assert!(validate(&path("H2"), StepSet::S4));
        assert!(!validate(&path("H2"), StepSet::S6));
    }

    #[test]
    fn validate_variant_a() {
        assert!(validate_variant(&path("UHD"), StepSet::S3, Variant::A));
        assert!(!validate_variant(&path("HUD"), StepSet::S3, Variant::A));
        assert!(!validate_variant(&path("UDH"), StepSet::S3, Variant::A));
    }

    #[test]
    fn stats_examples() {
        let s = stats(&path("UUDD")).unwrap();
        assert_eq!((s.order, s.diagonal_runs, s.horizontal_runs, s.peaks), (2, 2, 0, 1));
        let s = stats(&path("UDUD")).unwrap();
        assert_eq!((s.order, s.diagonal_runs, s.horizontal_runs, s.peaks), (2, 0, 0, 2));
        let s = stats(&path("HHUD")).unwrap();
        assert_eq!((s.order, s.diagonal_runs, s.horizontal_runs, s.peaks), (3, 0, 1, 1));
        assert_eq!(s.runs, 1);
        assert_eq!(stats(&LatticePath::default()), Err(Error::EmptyPath));
    }

    #[test]
    fn runs_compare_magnitudes() {
        // U2 followed by U is not a run
        let s = stats(&path("U2UD2D")).unwrap();
        assert_eq!(s.runs, 0);
        let s = stats(&path("U2U2D2D2")).unwrap();
        assert_eq!(s.diagonal_runs, 2);
        let s = stats(&path("UH2H2D")).unwrap();
        assert_eq!(s.horizontal_runs, 1);
    }

    #[test]
    fn pyramid_weight_examples() {
        assert_eq!(pyramid_weight(&path("UD")).unwrap(), 1);
        assert_eq!(pyramid_weight(&path("UUDD")).unwrap(), 2);
        assert_eq!(pyramid_weight(&path("UUDUDD")).unwrap(), 2);
        assert_eq!(pyramid_weight(&path("UDUD")).unwrap(), 2);
        assert_eq!(pyramid_weight(&path("UUDDUD")).unwrap(), 3);
        assert_eq!(pyramid_weight(&path("UHD")), Err(Error::NotDyck));
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&path("UD")));
        assert!(!is_primitive(&path("UDUD")));
        assert!(is_primitive(&path("UHD")));
    }

    #[test]
    fn factorization_examples() {
        let factors = primitive_factorization(&path("UDUD")).unwrap();
        assert_eq!(factors, vec![path("UD"), path("UD")]);
        assert_eq!(primitive_factorization(&path("UUDD")).unwrap(), vec![path("UUDD")]);
        assert_eq!(
            primitive_factorization(&path("UHDUD")).unwrap(),
            vec![path("UHD"), path("UD")]
        );
        assert_eq!(
            primitive_factorization(&path("UDHUD")),
            Err(Error::HorizontalOnAxis)
        );
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_u(&path("UD")), UClass::U1);
        assert_eq!(classify_u(&path("HUD")), UClass::U2);
        assert_eq!(classify_u(&path("UDH")), UClass::U3);
        assert_eq!(classify_u(&path("HUDH")), UClass::U4);
        assert_eq!(classify_u(&path("HH")), UClass::HOnly);
        assert_eq!(classify_u(&path("UHD")), UClass::U1);
    }
}
