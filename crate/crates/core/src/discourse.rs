//! Story arc and turning point taxonomies, shape signatures, relative-position
//! math, and the fuzzy-equivalence rules used by scoring.
//!
//! All types here are immutable value objects and freely shareable across
//! threads. The canonical string names produced by [`ArcType::name`] and
//! [`TurningPoint::name`] are the spellings used in every file format, prompt,
//! and report emitted by this crate.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Fuzzy turning-point matches credit predictions within this many sentences
/// of the reference position.
pub const DEFAULT_TP_WINDOW: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscourseError {
    #[error("sentence position {position} out of range 1..={total}")]
    PositionOutOfRange { position: usize, total: usize },
    #[error("unknown story arc name: {0:?}")]
    UnknownArc(String),
    #[error("unknown turning point name: {0:?}")]
    UnknownTurningPoint(String),
}

/// The seven macro-level story arc types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcType {
    RagsToRiches,
    RichesToRags,
    ManInHole,
    DoubleManInHole,
    Icarus,
    Cinderella,
    Oedipus,
}

impl ArcType {
    /// All arcs, in canonical report order.
    pub const ALL: [ArcType; 7] = [
        ArcType::RagsToRiches,
        ArcType::RichesToRags,
        ArcType::ManInHole,
        ArcType::DoubleManInHole,
        ArcType::Icarus,
        ArcType::Cinderella,
        ArcType::Oedipus,
    ];

    /// Canonical name used in files, prompts, and reports.
    pub fn name(self) -> &'static str {
        match self {
            ArcType::RagsToRiches => "Rags to Riches",
            ArcType::RichesToRags => "Riches to Rags",
            ArcType::ManInHole => "Man in Hole",
            ArcType::DoubleManInHole => "Double Man in Hole",
            ArcType::Icarus => "Icarus",
            ArcType::Cinderella => "Cinderella",
            ArcType::Oedipus => "Oedipus",
        }
    }

    /// Canonical one-line definition of the fortune trajectory.
    pub fn description(self) -> &'static str {
        match self {
            ArcType::RagsToRiches => "Starts low and gradually rises, ending in a high state.",
            ArcType::RichesToRags => "Starts high and gradually falls, ending in a low state.",
            ArcType::ManInHole => {
                "Starts high, falls into a dilemma or crisis, and finally finds a way out."
            }
            ArcType::DoubleManInHole => "Starts high and goes through two cycles of fall and rise.",
            ArcType::Icarus => "Starts low, rises, and ends with a sharp fall.",
            ArcType::Cinderella => {
                "Starts low, rises, falls back, and ends with a significant rise."
            }
            ArcType::Oedipus => {
                "Starts high, falls, recovers, and ends with a significant fall."
            }
        }
    }

    /// The rise/fall signature of this arc.
    pub fn shape(self) -> ArcShape {
        use Direction::{Fall, Rise};
        use Emphasis::{Normal, Significant};
        use FortuneLevel::{High, Low};
        let seg = |d, e| Segment {
            direction: d,
            emphasis: e,
        };
        match self {
            ArcType::RagsToRiches => ArcShape::new(Low, High, vec![seg(Rise, Normal)]),
            ArcType::RichesToRags => ArcShape::new(High, Low, vec![seg(Fall, Normal)]),
            ArcType::ManInHole => {
                ArcShape::new(High, High, vec![seg(Fall, Normal), seg(Rise, Normal)])
            }
            ArcType::DoubleManInHole => ArcShape::new(
                High,
                High,
                vec![
                    seg(Fall, Normal),
                    seg(Rise, Normal),
                    seg(Fall, Normal),
                    seg(Rise, Normal),
                ],
            ),
            ArcType::Icarus => {
                ArcShape::new(Low, Low, vec![seg(Rise, Normal), seg(Fall, Significant)])
            }
            ArcType::Cinderella => ArcShape::new(
                Low,
                High,
                vec![seg(Rise, Normal), seg(Fall, Normal), seg(Rise, Significant)],
            ),
            ArcType::Oedipus => ArcShape::new(
                High,
                Low,
                vec![seg(Fall, Normal), seg(Rise, Normal), seg(Fall, Significant)],
            ),
        }
    }

    /// Arcs easily confused with this one. Fuzzy arc scoring credits a
    /// prediction that falls within the reference label's hard pairs.
    /// The relation is symmetric; Icarus has no near-neighbors.
    pub fn hard_pairs(self) -> &'static [ArcType] {
        match self {
            ArcType::ManInHole => &[ArcType::DoubleManInHole, ArcType::Cinderella],
            ArcType::DoubleManInHole => &[ArcType::ManInHole, ArcType::Cinderella],
            ArcType::Cinderella => &[
                ArcType::RagsToRiches,
                ArcType::ManInHole,
                ArcType::DoubleManInHole,
            ],
            ArcType::RagsToRiches => &[ArcType::Cinderella],
            ArcType::RichesToRags => &[ArcType::Oedipus],
            ArcType::Oedipus => &[ArcType::RichesToRags],
            ArcType::Icarus => &[],
        }
    }

    /// Parse an arc name. Accepts the canonical spelling, compact forms
    /// ("ManInHole", "rags_to_riches"), and article variants
    /// ("Man in a Hole"), case-insensitively.
    pub fn parse(s: &str) -> Result<ArcType, DiscourseError> {
        let key = normalize_arc_key(s);
        for arc in ArcType::ALL {
            if normalize_arc_key(arc.name()) == key {
                return Ok(arc);
            }
        }
        Err(DiscourseError::UnknownArc(s.to_string()))
    }
}

/// Lowercase, split camel-case and punctuation, and drop articles so that
/// "Man in a Hole", "ManInHole", and "man_in_hole" share one key.
fn normalize_arc_key(s: &str) -> String {
    let mut spaced = String::with_capacity(s.len() + 8);
    let mut prev_lower = false;
    for c in s.chars() {
        if c.is_uppercase() && prev_lower {
            spaced.push(' ');
        }
        prev_lower = c.is_lowercase();
        spaced.push(c);
    }
    spaced
        .to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty() && *w != "a" && *w != "the")
        .collect::<Vec<_>>()
        .join("")
}

impl fmt::Display for ArcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ArcType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ArcType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        ArcType::parse(&s).map_err(D::Error::custom)
    }
}

/// A protagonist fortune level at an arc boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FortuneLevel {
    Low,
    High,
}

impl FortuneLevel {
    pub fn word(self) -> &'static str {
        match self {
            FortuneLevel::Low => "low",
            FortuneLevel::High => "high",
        }
    }

    fn flipped(self) -> FortuneLevel {
        match self {
            FortuneLevel::Low => FortuneLevel::High,
            FortuneLevel::High => FortuneLevel::Low,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rise,
    Fall,
}

/// Whether a segment is an ordinary movement or a sharp/significant one.
/// Emphasis is descriptive only; matching never depends on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emphasis {
    Normal,
    Significant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub direction: Direction,
    pub emphasis: Emphasis,
}

impl Segment {
    /// "rise", "fall", "significant rise", or "significant fall".
    pub fn phrase(self) -> String {
        let dir = match self.direction {
            Direction::Rise => "rise",
            Direction::Fall => "fall",
        };
        match self.emphasis {
            Emphasis::Normal => dir.to_string(),
            Emphasis::Significant => format!("significant {dir}"),
        }
    }
}

/// The rise/fall signature of a story arc: start and end fortune levels plus
/// an alternating sequence of directional segments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcShape {
    pub start: FortuneLevel,
    pub end: FortuneLevel,
    pub segments: Vec<Segment>,
}

impl ArcShape {
    fn new(start: FortuneLevel, end: FortuneLevel, segments: Vec<Segment>) -> Self {
        let shape = ArcShape {
            start,
            end,
            segments,
        };
        debug_assert!(shape.is_consistent());
        shape
    }

    /// Replay the segments from the start level and return where they land.
    pub fn replay_end(&self) -> FortuneLevel {
        self.segments
            .iter()
            .fold(self.start, |level, _| level.flipped())
    }

    /// Segments are non-empty, alternate direction, and land on `end`.
    pub fn is_consistent(&self) -> bool {
        if self.segments.is_empty() {
            return false;
        }
        let alternating = self
            .segments
            .windows(2)
            .all(|w| w[0].direction != w[1].direction);
        let first_ok = match (self.start, self.segments[0].direction) {
            (FortuneLevel::Low, Direction::Rise) | (FortuneLevel::High, Direction::Fall) => true,
            _ => false,
        };
        alternating && first_ok && self.replay_end() == self.end
    }

    /// One-line shape requirement for prompts, e.g.
    /// "3 major movements of fortune: a rise, then a fall, then a significant
    /// rise. The protagonist starts in a low state and ends in a high state."
    pub fn summary(&self) -> String {
        let n = self.segments.len();
        let noun = if n == 1 {
            "major movement"
        } else {
            "major movements"
        };
        let listing = self
            .segments
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i == 0 {
                    format!("a {}", s.phrase())
                } else {
                    format!("then a {}", s.phrase())
                }
            })
            .collect::<Vec<_>>()
            .join(", ");
        format!(
            "{n} {noun} of fortune: {listing}. The protagonist starts in a {} state and ends in a {} state.",
            self.start.word(),
            self.end.word()
        )
    }
}

/// The five meso-level turning point types, totally ordered TP1 < .. < TP5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TurningPoint {
    Opportunity,
    ChangeOfPlans,
    PointOfNoReturn,
    MajorSetback,
    Climax,
}

impl TurningPoint {
    pub const ALL: [TurningPoint; 5] = [
        TurningPoint::Opportunity,
        TurningPoint::ChangeOfPlans,
        TurningPoint::PointOfNoReturn,
        TurningPoint::MajorSetback,
        TurningPoint::Climax,
    ];

    /// Zero-based rank: Opportunity is 0, Climax is 4.
    pub fn index(self) -> usize {
        match self {
            TurningPoint::Opportunity => 0,
            TurningPoint::ChangeOfPlans => 1,
            TurningPoint::PointOfNoReturn => 2,
            TurningPoint::MajorSetback => 3,
            TurningPoint::Climax => 4,
        }
    }

    /// Short key used in file columns and JSON: "tp1".."tp5".
    pub fn code(self) -> &'static str {
        ["tp1", "tp2", "tp3", "tp4", "tp5"][self.index()]
    }

    /// Canonical name used in prompts and reports.
    pub fn name(self) -> &'static str {
        match self {
            TurningPoint::Opportunity => "Opportunity",
            TurningPoint::ChangeOfPlans => "Change of Plans",
            TurningPoint::PointOfNoReturn => "Point of No Return",
            TurningPoint::MajorSetback => "Major Setback",
            TurningPoint::Climax => "Climax",
        }
    }

    /// "TP1 - Opportunity" .. "TP5 - Climax".
    pub fn label(self) -> String {
        format!("TP{} - {}", self.index() + 1, self.name())
    }

    /// Canonical one-line definition.
    pub fn definition(self) -> &'static str {
        match self {
            TurningPoint::Opportunity => {
                "The introductory event that sets the stage for the narrative."
            }
            TurningPoint::ChangeOfPlans => {
                "A pivotal moment where the main goal of the narrative is defined or altered."
            }
            TurningPoint::PointOfNoReturn => {
                "The commitment point beyond which the protagonists are fully invested in their goals."
            }
            TurningPoint::MajorSetback => {
                "A critical juncture where the protagonists face significant challenges or failures."
            }
            TurningPoint::Climax => {
                "The peak of the narrative arc, encompassing the resolution of the central conflict."
            }
        }
    }

    pub fn parse(s: &str) -> Result<TurningPoint, DiscourseError> {
        let key: String = s
            .to_lowercase()
            .chars()
            .filter(|c| c.is_alphanumeric())
            .collect();
        for tp in TurningPoint::ALL {
            let name_key: String = tp
                .name()
                .to_lowercase()
                .chars()
                .filter(|c| c.is_alphanumeric())
                .collect();
            if key == tp.code() || key == name_key {
                return Ok(tp);
            }
        }
        Err(DiscourseError::UnknownTurningPoint(s.to_string()))
    }
}

impl fmt::Display for TurningPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Five 1-based sentence positions, one per turning point type.
///
/// Positions are not required to be strictly increasing: turning points are
/// only generally in sequential order, so [`TurningPointSet::is_ordered`] is
/// a soft check for callers that want to log a warning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TurningPointSet {
    positions: [usize; 5],
}

impl TurningPointSet {
    /// Build a set from positions in TP1..TP5 order. Every position must be
    /// at least 1; range-checking against a narrative length is separate
    /// (see [`TurningPointSet::validate_range`]).
    pub fn new(positions: [usize; 5]) -> Result<Self, DiscourseError> {
        for &p in &positions {
            if p < 1 {
                return Err(DiscourseError::PositionOutOfRange {
                    position: p,
                    total: usize::MAX,
                });
            }
        }
        Ok(TurningPointSet { positions })
    }

    pub fn position(&self, tp: TurningPoint) -> usize {
        self.positions[tp.index()]
    }

    pub fn positions(&self) -> [usize; 5] {
        self.positions
    }

    /// Check every position against a narrative of `total` sentences.
    pub fn validate_range(&self, total: usize) -> Result<(), DiscourseError> {
        for &p in &self.positions {
            if p < 1 || p > total {
                return Err(DiscourseError::PositionOutOfRange { position: p, total });
            }
        }
        Ok(())
    }

    /// True when positions are non-decreasing from TP1 to TP5.
    pub fn is_ordered(&self) -> bool {
        self.positions.windows(2).all(|w| w[0] <= w[1])
    }

    /// Canonical JSON form: `{"tp1":3,"tp2":6,"tp3":14,"tp4":17,"tp5":22}`.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("turning point set serializes")
    }
}

impl Serialize for TurningPointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(5))?;
        for tp in TurningPoint::ALL {
            map.serialize_entry(tp.code(), &self.position(tp))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for TurningPointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = std::collections::BTreeMap::<String, usize>::deserialize(deserializer)?;
        let mut positions = [0usize; 5];
        for tp in TurningPoint::ALL {
            positions[tp.index()] = *raw
                .get(tp.code())
                .ok_or_else(|| D::Error::custom(format!("missing turning point {}", tp.code())))?;
        }
        TurningPointSet::new(positions).map_err(D::Error::custom)
    }
}

/// A turning point's relative position within a narrative: `p / total`,
/// in (0, 1]. A value of 0.5 means the turning point sits exactly in the
/// middle of the story.
pub fn relative_position(position: usize, total: usize) -> Result<f64, DiscourseError> {
    if position < 1 || position > total {
        return Err(DiscourseError::PositionOutOfRange { position, total });
    }
    Ok(position as f64 / total as f64)
}

/// True when the predicted arc equals the reference arc or falls within the
/// reference's hard pairs.
pub fn fuzzy_arc_match(predicted: ArcType, reference: ArcType) -> bool {
    predicted == reference || reference.hard_pairs().contains(&predicted)
}

/// True when the predicted position lies within `window` sentences of the
/// reference position, inclusive at both boundaries. A window of 0 is an
/// exact match.
pub fn tp_window_match(predicted: usize, reference: usize, window: usize) -> bool {
    predicted.abs_diff(reference) <= window
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_names_round_trip() {
        for arc in ArcType::ALL {
            assert_eq!(ArcType::parse(arc.name()).unwrap(), arc);
        }
        assert_eq!(ArcType::parse("Man in a Hole").unwrap(), ArcType::ManInHole);
        assert_eq!(ArcType::parse("ManInHole").unwrap(), ArcType::ManInHole);
        assert_eq!(
            ArcType::parse("double man in a hole").unwrap(),
            ArcType::DoubleManInHole
        );
        assert_eq!(
            ArcType::parse("rags_to_riches").unwrap(),
            ArcType::RagsToRiches
        );
        assert!(ArcType::parse("Phoenix").is_err());
    }

    #[test]
    fn shapes_match_canonical_signatures() {
        use Direction::{Fall, Rise};
        let dirs = |arc: ArcType| -> Vec<Direction> {
            arc.shape().segments.iter().map(|s| s.direction).collect()
        };
        assert_eq!(dirs(ArcType::RagsToRiches), vec![Rise]);
        assert_eq!(dirs(ArcType::RichesToRags), vec![Fall]);
        assert_eq!(dirs(ArcType::ManInHole), vec![Fall, Rise]);
        assert_eq!(dirs(ArcType::DoubleManInHole), vec![Fall, Rise, Fall, Rise]);
        assert_eq!(dirs(ArcType::Icarus), vec![Rise, Fall]);
        assert_eq!(dirs(ArcType::Cinderella), vec![Rise, Fall, Rise]);
        assert_eq!(dirs(ArcType::Oedipus), vec![Fall, Rise, Fall]);

        let shape = ArcType::RagsToRiches.shape();
        assert_eq!(shape.start, FortuneLevel::Low);
        assert_eq!(shape.end, FortuneLevel::High);

        let shape = ArcType::Oedipus.shape();
        assert_eq!(shape.end, FortuneLevel::Low);
        assert_eq!(shape.segments.last().unwrap().emphasis, Emphasis::Significant);

        let shape = ArcType::DoubleManInHole.shape();
        assert_eq!(shape.start, FortuneLevel::High);
        assert_eq!(shape.end, FortuneLevel::High);
    }

    #[test]
    fn every_shape_replays_to_its_end_level() {
        for arc in ArcType::ALL {
            let shape = arc.shape();
            assert!(shape.is_consistent(), "{arc} shape inconsistent");
            assert_eq!(shape.replay_end(), shape.end, "{arc} replay mismatch");
        }
    }

    #[test]
    fn shape_summary_wording() {
        let s = ArcType::Cinderella.shape().summary();
        assert!(s.contains("3 major movements"), "{s}");
        assert!(s.contains("a rise, then a fall, then a significant rise"), "{s}");
        assert!(s.contains("starts in a low state"), "{s}");
        assert!(s.contains("ends in a high state"), "{s}");

        let s = ArcType::RagsToRiches.shape().summary();
        assert!(s.contains("1 major movement of fortune"), "{s}");
    }

    #[test]
    fn hard_pairs_are_symmetric_and_exact() {
        // The full relation, spelled out both ways.
        let expected: &[(ArcType, &[ArcType])] = &[
            (ArcType::ManInHole, &[ArcType::DoubleManInHole, ArcType::Cinderella]),
            (ArcType::DoubleManInHole, &[ArcType::ManInHole, ArcType::Cinderella]),
            (
                ArcType::Cinderella,
                &[ArcType::RagsToRiches, ArcType::ManInHole, ArcType::DoubleManInHole],
            ),
            (ArcType::RagsToRiches, &[ArcType::Cinderella]),
            (ArcType::RichesToRags, &[ArcType::Oedipus]),
            (ArcType::Oedipus, &[ArcType::RichesToRags]),
            (ArcType::Icarus, &[]),
        ];
        for (arc, pairs) in expected {
            assert_eq!(arc.hard_pairs(), *pairs, "{arc}");
        }
        for a in ArcType::ALL {
            for b in ArcType::ALL {
                assert_eq!(
                    a.hard_pairs().contains(&b),
                    b.hard_pairs().contains(&a),
                    "asymmetric pair {a} / {b}"
                );
            }
        }
        let ordered_pairs: usize = ArcType::ALL.iter().map(|a| a.hard_pairs().len()).sum();
        assert_eq!(ordered_pairs, 10);
    }

    #[test]
    fn fuzzy_arc_match_follows_hard_pairs() {
        assert!(fuzzy_arc_match(ArcType::Cinderella, ArcType::ManInHole));
        assert!(fuzzy_arc_match(ArcType::Icarus, ArcType::Icarus));
        assert!(!fuzzy_arc_match(ArcType::Icarus, ArcType::ManInHole));
        assert!(fuzzy_arc_match(ArcType::Oedipus, ArcType::RichesToRags));
        // Reflexive + exact implies fuzzy.
        for a in ArcType::ALL {
            assert!(fuzzy_arc_match(a, a));
        }
        // Symmetric.
        for a in ArcType::ALL {
            for b in ArcType::ALL {
                assert_eq!(fuzzy_arc_match(a, b), fuzzy_arc_match(b, a));
            }
        }
    }

    #[test]
    fn window_match_boundaries() {
        assert!(tp_window_match(13, 10, 3));
        assert!(!tp_window_match(14, 10, 3));
        assert!(tp_window_match(7, 10, 3));
        assert!(!tp_window_match(6, 10, 3));
        assert!(tp_window_match(10, 10, 0));
        assert!(!tp_window_match(11, 10, 0));
    }

    #[test]
    fn relative_position_math() {
        assert_eq!(relative_position(16, 32).unwrap(), 0.5);
        assert_eq!(relative_position(10, 10).unwrap(), 1.0);
        assert!(relative_position(0, 10).is_err());
        assert!(relative_position(11, 10).is_err());
    }

    #[test]
    fn turning_point_set_serde() {
        let set = TurningPointSet::new([3, 6, 14, 17, 22]).unwrap();
        assert_eq!(
            set.canonical_json(),
            r#"{"tp1":3,"tp2":6,"tp3":14,"tp4":17,"tp5":22}"#
        );
        let back: TurningPointSet = serde_json::from_str(&set.canonical_json()).unwrap();
        assert_eq!(back, set);
        assert!(set.is_ordered());
        assert!(set.validate_range(22).is_ok());
        assert!(set.validate_range(21).is_err());

        let unordered = TurningPointSet::new([5, 3, 14, 17, 22]).unwrap();
        assert!(!unordered.is_ordered());

        assert!(TurningPointSet::new([0, 1, 2, 3, 4]).is_err());
        assert!(serde_json::from_str::<TurningPointSet>(r#"{"tp1":3}"#).is_err());
    }

    #[test]
    fn turning_point_metadata() {
        assert_eq!(TurningPoint::Climax.code(), "tp5");
        assert_eq!(TurningPoint::Opportunity.label(), "TP1 - Opportunity");
        assert_eq!(
            TurningPoint::parse("Point of No Return").unwrap(),
            TurningPoint::PointOfNoReturn
        );
        assert_eq!(TurningPoint::parse("tp4").unwrap(), TurningPoint::MajorSetback);
        assert!(TurningPoint::parse("tp6").is_err());
    }
}
