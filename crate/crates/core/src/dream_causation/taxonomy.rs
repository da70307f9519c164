use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::DreamError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Phenotype,
    Genotype,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenotypeCategory {
    DriverObservation,
    DriverInterpretation,
    DriverPermanentPersonal,
    TrafficEnvironment,
    Organization,
    Vehicle,
}

impl GenotypeCategory {
    pub const ALL: [GenotypeCategory; 6] = [
        GenotypeCategory::DriverObservation,
        GenotypeCategory::DriverInterpretation,
        GenotypeCategory::DriverPermanentPersonal,
        GenotypeCategory::TrafficEnvironment,
        GenotypeCategory::Organization,
        GenotypeCategory::Vehicle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenotypeCategory::DriverObservation => "driver-observation",
            GenotypeCategory::DriverInterpretation => "driver-interpretation",
            GenotypeCategory::DriverPermanentPersonal => "driver-permanent-personal",
            GenotypeCategory::TrafficEnvironment => "traffic-environment",
            GenotypeCategory::Organization => "organization",
            GenotypeCategory::Vehicle => "vehicle",
        }
    }
}

impl fmt::Display for GenotypeCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenotypeCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenotypeCategory::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown genotype category `{s}`"))
    }
}

/// A taxonomy entry. Phenotypes carry their observable class (`timing`,
/// `speed`, ...), genotypes their category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Phenotype { class: String },
    Genotype { category: GenotypeCategory },
}

impl Term {
    pub fn kind(&self) -> NodeKind {
        match self {
            Term::Phenotype { .. } => NodeKind::Phenotype,
            Term::Genotype { .. } => NodeKind::Genotype,
        }
    }
}

const PHENOTYPES: [(&str, &str); 5] = [
    ("timing", "timing/too-early-action"),
    ("timing", "timing/no-action"),
    ("speed", "speed"),
    ("distance", "distance"),
    ("direction", "direction"),
];

const GENOTYPES: [(GenotypeCategory, &str); 13] = [
    (GenotypeCategory::DriverInterpretation, "misjudgement-of-time-gaps"),
    (GenotypeCategory::DriverInterpretation, "misjudgement-of-situation"),
    (GenotypeCategory::DriverPermanentPersonal, "expectancy-of-certain-behaviours"),
    (GenotypeCategory::DriverPermanentPersonal, "habitually-stretching-rules"),
    (GenotypeCategory::DriverPermanentPersonal, "insufficient-skills-knowledge"),
    (GenotypeCategory::DriverObservation, "missed-observation"),
    (GenotypeCategory::DriverObservation, "late-observation"),
    (GenotypeCategory::TrafficEnvironment, "permanent-obstruction-of-view"),
    (GenotypeCategory::TrafficEnvironment, "temporary-obstruction-of-view"),
    (GenotypeCategory::TrafficEnvironment, "insufficient-guidance"),
    (GenotypeCategory::TrafficEnvironment, "inadequate-road-geometry"),
    (GenotypeCategory::Vehicle, "equipment-failure"),
    (GenotypeCategory::Vehicle, "vehicle-illumination-problems"),
];

/// Closed vocabulary of node labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    terms: BTreeMap<String, Term>,
}

impl Default for Taxonomy {
    fn default() -> Self {
        Taxonomy::bundled()
    }
}

impl Taxonomy {
    pub fn bundled() -> Taxonomy {
        let mut terms = BTreeMap::new();
        for (class, label) in PHENOTYPES {
            terms.insert(label.to_string(), Term::Phenotype { class: class.to_string() });
        }
        for (category, label) in GENOTYPES {
            terms.insert(label.to_string(), Term::Genotype { category });
        }
        Taxonomy { terms }
    }

    pub fn get(&self, label: &str) -> Option<&Term> {
        self.terms.get(label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.terms.contains_key(label)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.terms.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Adds a term. Re-registering an identical term is a no-op.
    pub fn register(&mut self, label: &str, term: Term) -> Result<(), DreamError> {
        if label.is_empty() || label.contains(char::is_whitespace) || label.contains("->") {
            return Err(DreamError::BadLabel(label.to_string()));
        }
        match self.terms.get(label) {
            Some(existing) if *existing == term => Ok(()),
            Some(_) => Err(DreamError::ConflictingTerm(label.to_string())),
            None => {
                self.terms.insert(label.to_string(), term);
                Ok(())
            }
        }
    }

    /// Reads `genotype <category> <label>` and `phenotype <class> <label>`
    /// lines; `#` starts a comment.
    pub fn extend_from_str(&mut self, text: &str) -> Result<(), DreamError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| DreamError::Syntax { line: idx + 1, message };
            let words: Vec<&str> = line.split_whitespace().collect();
            let [kind, group, label] = words[..] else {
                return Err(syntax(format!("expected `<genotype|phenotype> <group> <label>`, got `{line}`")));
            };
            let term = match kind {
                "genotype" => Term::Genotype {
                    category: group.parse().map_err(syntax)?,
                },
                "phenotype" => Term::Phenotype { class: group.to_string() },
                other => return Err(syntax(format!("unknown term kind `{other}`"))),
            };
            self.register(label, term).map_err(|e| syntax(e.to_string()))?;
        }
        Ok(())
    }
}
