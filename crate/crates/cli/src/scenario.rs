//! Scenario files: a JSON description of the algebra and the named objects to work with.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use torschain_core::greenseq::{enumerate_mgs, mgs_to_chain};
use torschain_core::repcat::Orientation;
use torschain_core::{
    enumerate_lattice, ClassSet, Error, IndecTable, Phase, Prime, Result, StabilityForm, StepChain, Universe,
};

pub const DEFAULT_MAX_TOTAL_DIM: usize = 4;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    quiver: String,
    p: u32,
    #[serde(default)]
    torsion_classes: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    forms: BTreeMap<String, RawForm>,
    #[serde(default)]
    chains: BTreeMap<String, RawChain>,
    #[serde(default)]
    bounds: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    guards: RawGuards,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    theta: Vec<i64>,
    rho: Vec<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGuards {
    max_total_dim: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawChain {
    Steps { pieces: Vec<RawPiece> },
    TorsionPair { torsion: String, r1: String, r2: String },
    Mgs { index: usize },
    Form { form: String },
    Trivial {},
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    end: String,
    generators: Vec<String>,
}

/// A validated scenario. Maps are keyed by name, so iteration order is alphabetical.
pub struct Scenario {
    pub quiver: String,
    pub universe: Universe,
    pub torsion_classes: BTreeMap<String, ClassSet>,
    pub forms: BTreeMap<String, StabilityForm>,
    pub chains: BTreeMap<String, StepChain>,
    pub bounds: BTreeMap<String, Vec<usize>>,
    pub max_total_dim: usize,
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{path}: {m}")),
        other => other,
    }
}

pub fn parse_phase(text: &str) -> Result<Phase> {
    text.trim().parse::<Phase>().map_err(|_| Error::Input(format!("`{text}` is not a rational a/b")))
}

/// `A<n>` followed by `:` and one `>` or `<` per arrow, e.g. `A3:><`; `A1` has no arrows.
pub fn parse_quiver(text: &str) -> Result<Vec<Orientation>> {
    let bad = || Error::Input(format!("quiver `{text}` is not of the form An:<arrows>"));
    let (size, arrows) = text.split_once(':').unwrap_or((text, ""));
    let n: usize = size.strip_prefix('A').and_then(|s| s.parse().ok()).filter(|&n| n >= 1).ok_or_else(bad)?;
    let orient = arrows
        .chars()
        .map(|c| match c {
            '>' => Ok(Orientation::Right),
            '<' => Ok(Orientation::Left),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>>>()?;
    if orient.len() != n - 1 {
        return Err(Error::Input(format!("quiver `{text}` needs {} arrows, found {}", n - 1, orient.len())));
    }
    Ok(orient)
}

pub fn parse_members(u: &Universe, names: &[String]) -> Result<ClassSet> {
    u.parse_set(names.iter().map(|s| s.trim()))
}

pub fn load(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Scenario> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| Error::Input(format!("scenario: {e}")))?;
    let orient = parse_quiver(&raw.quiver).map_err(|e| at("quiver", e))?;
    let p = Prime::new(raw.p).map_err(|e| at("p", e))?;
    let universe = Universe::new(IndecTable::type_a(&orient, p)?)?;
    let u = &universe;

    let mut torsion_classes = BTreeMap::new();
    for (name, gens) in &raw.torsion_classes {
        let g = parse_members(u, gens).map_err(|e| at(&format!("torsion_classes.{name}"), e))?;
        torsion_classes.insert(name.clone(), u.tors_closure(g));
    }

    let mut forms = BTreeMap::new();
    for (name, f) in raw.forms {
        let form = StabilityForm::new(u, f.theta, f.rho).map_err(|e| at(&format!("forms.{name}"), e))?;
        forms.insert(name, form);
    }

    for (name, b) in &raw.bounds {
        if b.len() != orient.len() + 1 {
            return Err(Error::Input(format!("bounds.{name}: needs {} entries", orient.len() + 1)));
        }
    }

    let mut lattice = None;
    let mut chains = BTreeMap::new();
    for (name, c) in raw.chains {
        let path = format!("chains.{name}");
        let chain = match c {
            RawChain::Trivial {} => StepChain::trivial(u),
            RawChain::Steps { pieces } => {
                let mut spec = Vec::new();
                for (i, piece) in pieces.iter().enumerate() {
                    let here = format!("{path}.pieces[{i}]");
                    let end = parse_phase(&piece.end).map_err(|e| at(&format!("{here}.end"), e))?;
                    let gens = parse_members(u, &piece.generators).map_err(|e| at(&format!("{here}.generators"), e))?;
                    spec.push((end, u.tors_closure(gens)));
                }
                StepChain::new(u, &spec).map_err(|e| at(&path, e))?
            }
            RawChain::TorsionPair { torsion, r1, r2 } => {
                let t = *torsion_classes
                    .get(&torsion)
                    .ok_or_else(|| Error::Input(format!("{path}.torsion: no torsion class named `{torsion}`")))?;
                let r1 = parse_phase(&r1).map_err(|e| at(&format!("{path}.r1"), e))?;
                let r2 = parse_phase(&r2).map_err(|e| at(&format!("{path}.r2"), e))?;
                StepChain::from_torsion_pair(u, t, r1, r2).map_err(|e| at(&path, e))?
            }
            RawChain::Mgs { index } => {
                if lattice.is_none() {
                    lattice = Some(enumerate_mgs(&enumerate_lattice(u)?));
                }
                let seqs = lattice.as_ref().expect("just filled");
                let g = seqs.get(index).ok_or_else(|| {
                    Error::Input(format!("{path}.index: {index} out of range, there are {} sequences", seqs.len()))
                })?;
                mgs_to_chain(u, g)?
            }
            RawChain::Form { form } => forms
                .get(&form)
                .ok_or_else(|| Error::Input(format!("{path}.form: no form named `{form}`")))?
                .chain(u)?,
        };
        chains.insert(name, chain);
    }

    Ok(Scenario {
        quiver: raw.quiver,
        universe,
        torsion_classes,
        forms,
        chains,
        bounds: raw.bounds,
        max_total_dim: raw.guards.max_total_dim.unwrap_or(DEFAULT_MAX_TOTAL_DIM),
    })
}

impl Scenario {
    pub fn chain(&self, name: &str) -> Result<&StepChain> {
        self.chains.get(name).ok_or_else(|| Error::Input(format!("no chain named `{name}`")))
    }

    pub fn form(&self, name: &str) -> Result<&StabilityForm> {
        self.forms.get(name).ok_or_else(|| Error::Input(format!("no form named `{name}`")))
    }

    pub fn torsion_class(&self, name: &str) -> Result<ClassSet> {
        self.torsion_classes.get(name).copied().ok_or_else(|| Error::Input(format!("no torsion class named `{name}`")))
    }

    /// The chains named on the command line, or every chain in the scenario.
    pub fn selected_chains(&self, name: Option<&str>) -> Result<Vec<(String, &StepChain)>> {
        match name {
            Some(n) => Ok(vec![(n.to_string(), self.chain(n)?)]),
            None => Ok(self.chains.iter().map(|(k, v)| (k.clone(), v)).collect()),
        }
    }
}
