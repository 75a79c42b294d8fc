//! Ring corpora: the builtin list and JSON corpus files.

use serde::Deserialize;
use thiserror::Error;

use crate::classifier::Classifier;
use crate::dsl::{parse_ring_spec_with, SpecError};
use crate::ideal::LatticeCaps;
use crate::ring::{Ring, DEFAULT_MAX_ORDER};

/// Environment variable overriding the construction cap.
pub const MAX_ORDER_ENV: &str = "NILARY_MAX_ORDER";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("ring spec {spec:?}: {source}")]
    Spec { spec: String, source: SpecError },
    #[error("ring {spec:?} has order {order}, above the cap {cap}")]
    OrderCap { spec: String, order: usize, cap: usize },
    #[error("corpus file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{MAX_ORDER_ENV}={0:?} is not a positive integer")]
    BadEnv(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest ring any spec may build.
    pub max_order: usize,
    pub lattice: LatticeCaps,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_order: DEFAULT_MAX_ORDER, lattice: LatticeCaps::default() }
    }
}

impl Caps {
    /// Defaults, with `NILARY_MAX_ORDER` applied when set.
    pub fn from_env() -> Result<Caps, CorpusError> {
        let mut caps = Caps::default();
        if let Ok(raw) = std::env::var(MAX_ORDER_ENV) {
            caps.max_order = match raw.trim().parse() {
                Ok(n) if n > 0 => n,
                _ => return Err(CorpusError::BadEnv(raw)),
            };
        }
        Ok(caps)
    }
}

/// Ring specs to load, plus the caps that bound them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusConfig {
    pub specs: Vec<String>,
    pub caps: Caps,
    /// Silently drop rings above `caps.max_order` instead of failing.
    pub filter_oversized: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CorpusFile {
    List(Vec<String>),
    Object {
        rings: Vec<String>,
        #[serde(default)]
        max_order: Option<usize>,
        #[serde(default)]
        max_lattice_order: Option<usize>,
        #[serde(default)]
        max_ideals: Option<usize>,
    },
}

/// Specs of the default corpus, in corpus order.
pub fn builtin_specs() -> Vec<String> {
    let mut specs: Vec<String> = (1..=30).map(|n| format!("Zn:{n}")).collect();
    for a in 2..=6 {
        for b in a..=6 {
            specs.push(format!("dsum(Zn:{a},Zn:{b})"));
        }
    }
    specs.extend((2..=8).map(|n| format!("zmul:{n}")));
    specs.extend(
        [
            "M:2:Zn:2",
            "M:2:Zn:3",
            "T:2:Zn:2",
            "T:2:Zn:3",
            "T:2:Zn:4",
            "T:3:Zn:2",
            "dsum(M:2:Zn:2,Zn:2)",
            "dsum(T:2:Zn:2,Zn:3)",
            "dsum(zmul:2,Zn:2)",
            "quot(Zn:12,gen(4))",
            "quot(Zn:12,gen(6))",
            "quot(T:2:Zn:4,gen(2))",
        ]
        .map(String::from),
    );
    specs
}

impl CorpusConfig {
    /// The builtin corpus. Rings above `caps.max_order` are left out.
    pub fn builtin(caps: Caps) -> CorpusConfig {
        CorpusConfig { specs: builtin_specs(), caps, filter_oversized: true }
    }

    /// Parses a corpus file: either a JSON list of specs or
    /// `{"rings": [...], "max_order": n, "max_lattice_order": n, "max_ideals": n}`.
    pub fn from_json(text: &str, base: Caps) -> Result<CorpusConfig, CorpusError> {
        let mut caps = base;
        let specs = match serde_json::from_str(text)? {
            CorpusFile::List(specs) => specs,
            CorpusFile::Object { rings, max_order, max_lattice_order, max_ideals } => {
                caps.max_order = max_order.unwrap_or(caps.max_order);
                caps.lattice.max_order = max_lattice_order.unwrap_or(caps.lattice.max_order);
                caps.lattice.max_ideals = max_ideals.unwrap_or(caps.lattice.max_ideals);
                rings
            }
        };
        Ok(CorpusConfig { specs, caps, filter_oversized: false })
    }

    /// Parses every spec before any classification work.
    pub fn build(&self) -> Result<Corpus, CorpusError> {
        let build_cap =
            if self.filter_oversized { self.caps.max_order.max(DEFAULT_MAX_ORDER) } else { self.caps.max_order };
        let mut entries = Vec::new();
        for spec in &self.specs {
            let ring = parse_ring_spec_with(spec, build_cap)
                .map_err(|source| CorpusError::Spec { spec: spec.clone(), source })?;
            if ring.order() > self.caps.max_order {
                if self.filter_oversized {
                    continue;
                }
                return Err(CorpusError::OrderCap {
                    spec: spec.clone(),
                    order: ring.order(),
                    cap: self.caps.max_order,
                });
            }
            entries
                .push(CorpusEntry { spec: spec.clone(), classifier: Classifier::with_caps(&ring, self.caps.lattice) });
        }
        Ok(Corpus { entries, caps: self.caps })
    }
}

pub struct CorpusEntry {
    pub spec: String,
    pub classifier: Classifier,
}

impl CorpusEntry {
    pub fn ring(&self) -> &Ring {
        self.classifier.ring()
    }
}

/// Parsed rings, each with its own classifier cache.
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub caps: Caps,
}

impl Corpus {
    pub fn empty() -> Corpus {
        Corpus { entries: Vec::new(), caps: Caps::default() }
    }

    pub fn builtin() -> Corpus {
        CorpusConfig::builtin(Caps::default()).build().expect("builtin corpus is well formed")
    }

    pub fn from_rings(rings: impl IntoIterator<Item = Ring>) -> Corpus {
        let caps = Caps::default();
        let entries = rings
            .into_iter()
            .map(|r| CorpusEntry { spec: r.label().to_string(), classifier: Classifier::with_caps(&r, caps.lattice) })
            .collect();
        Corpus { entries, caps }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.ring().label().to_string()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.ring().label() == label)
    }
}
