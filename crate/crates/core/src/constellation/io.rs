//! Versioned JSON forms. Permutations are lists of 1-based cycles with
//! fixed points omitted.

use serde::{Deserialize, Serialize};

use super::{Constellation, ConstellationError, CycleType, InnerMonodromy, Perm, SchreierGenerators};

pub const FORMAT_VERSION: u32 = 1;

type Cycles = Vec<Vec<usize>>;

fn to_perm(d: usize, c: &Cycles, what: &str) -> Result<Perm, ConstellationError> {
    Perm::from_cycles(d, c).ok_or_else(|| ConstellationError::Invalid(format!("{what}: invalid cycles")))
}

fn check_format(v: u32) -> Result<(), ConstellationError> {
    if v != FORMAT_VERSION {
        return Err(ConstellationError::Invalid(format!("unsupported format version {v}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstellationJson {
    pub format: u32,
    pub degree: usize,
    #[serde(default)]
    pub base_genus: usize,
    pub labels: Vec<String>,
    pub slots: Vec<Cycles>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub handles: Vec<(Cycles, Cycles)>,
    /// Informational; recomputed on read.
    #[serde(default)]
    pub cycle_types: Vec<CycleType>,
    #[serde(default)]
    pub genus: Option<u32>,
}

impl From<&Constellation> for ConstellationJson {
    fn from(c: &Constellation) -> Self {
        ConstellationJson {
            format: FORMAT_VERSION,
            degree: c.degree(),
            base_genus: c.base_genus(),
            labels: c.labels().to_vec(),
            slots: c.slots().iter().map(Perm::cycles).collect(),
            handles: c.handles().iter().map(|(a, b)| (a.cycles(), b.cycles())).collect(),
            cycle_types: c.cycle_types(),
            genus: c.genus().ok(),
        }
    }
}

impl TryFrom<&ConstellationJson> for Constellation {
    type Error = ConstellationError;
    fn try_from(j: &ConstellationJson) -> Result<Self, Self::Error> {
        check_format(j.format)?;
        let d = j.degree;
        let slots = j
            .slots
            .iter()
            .enumerate()
            .map(|(i, c)| to_perm(d, c, &format!("slot {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let handles = j
            .handles
            .iter()
            .enumerate()
            .map(|(i, (a, b))| Ok((to_perm(d, a, &format!("handle {i}"))?, to_perm(d, b, &format!("handle {i}"))?)))
            .collect::<Result<Vec<_>, ConstellationError>>()?;
        if handles.len() != j.base_genus {
            return Err(ConstellationError::Invalid("base_genus does not match the handle count".into()));
        }
        let mut c = Constellation::with_handles(handles, slots)?;
        if j.labels.len() == c.slots().len() {
            c = c.with_labels(j.labels.clone());
        }
        Ok(c)
    }
}

impl Constellation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ConstellationJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, ConstellationError> {
        let j: ConstellationJson = serde_json::from_str(s).map_err(|e| ConstellationError::Invalid(e.to_string()))?;
        Constellation::try_from(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    /// 1-based sheet.
    pub sheet: usize,
    /// 0-based slot.
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerJson {
    pub format: u32,
    pub outer_degree: usize,
    pub degree: usize,
    pub generators: Vec<GeneratorJson>,
    pub images: Vec<Cycles>,
}

impl InnerJson {
    pub fn new(outer: &Constellation, inner: &InnerMonodromy) -> Result<Self, ConstellationError> {
        let gens = SchreierGenerators::new(outer)?;
        Ok(InnerJson {
            format: FORMAT_VERSION,
            outer_degree: outer.degree(),
            degree: inner.degree,
            generators: gens.edges().into_iter().map(|(sheet, slot)| GeneratorJson { sheet, slot }).collect(),
            images: inner.images.iter().map(Perm::cycles).collect(),
        })
    }

    pub fn to_inner(&self) -> Result<InnerMonodromy, ConstellationError> {
        check_format(self.format)?;
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, c)| to_perm(self.degree, c, &format!("generator {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(InnerMonodromy {
            degree: self.degree,
            images,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResultJson {
    pub format: u32,
    pub query: String,
    pub exhaustive: bool,
    /// `found`, `none` or `resource-limit`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub constellations: Vec<ConstellationJson>,
}
