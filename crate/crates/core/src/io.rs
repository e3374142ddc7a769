//! JSON file formats. Sets are sorted integer arrays; rationals are `"p/q"`
//! strings or `"inf"`. Serialization is canonical, so parsing a file this
//! module wrote and writing it again reproduces the same bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::banach::VectorSequence;
use crate::colorings::{BarrierColoring, PairColoring};
use crate::error::{Error, Result};
use crate::pathology::CoveringInstance;
use crate::pointset::{GroundSet, PointSet};
use crate::rational::{format_rational, parse_rational, RationalX};
use crate::reductions::PointMap;
use crate::submeasure::{mazur_from_chain_capped, sup_of_measures, AritySchedule, Measure, Repr, Submeasure};
use crate::Limits;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubmeasureFile {
    ground: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    repr: ReprFile,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ReprFile {
    Table { values: Vec<TableEntry> },
    SupMeasures { measures: Vec<Vec<String>> },
    MinCover { family: Vec<Vec<usize>> },
    MazurChain {
        level1: Vec<Vec<usize>>,
        #[serde(default)]
        arity: AritySchedule,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        level_cap: Option<u32>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntry {
    set: Vec<usize>,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoveringFile {
    ground: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    family: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringFile {
    ground: usize,
    pairs1: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "is_false")]
    signed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    source: usize,
    target: usize,
    map: Vec<usize>,
}

/// Reference to a barrier coloring: the threshold and the matrix file it
/// is computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierFile {
    pub p: u32,
    pub matrix_ref: String,
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let field = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.contains("field"))
            .unwrap_or("document")
            .to_string();
        Error::parse(field, msg)
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn ground_of(size: usize, labels: Option<Vec<String>>, field: &str) -> Result<GroundSet> {
    match labels {
        Some(l) => {
            if l.len() != size {
                return Err(Error::parse(field, format!("{} labels for ground {size}", l.len())));
            }
            GroundSet::with_labels(l).map_err(|e| Error::parse(field, e.to_string()))
        }
        None => GroundSet::new(size).map_err(|e| Error::parse("ground", e.to_string())),
    }
}

fn set_of(n: usize, points: &[usize], field: &str) -> Result<PointSet> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::parse(field, "repeated point"));
    }
    PointSet::from_points(n, sorted).map_err(|e| Error::parse(field, e.to_string()))
}

fn rational_x(s: &str, field: &str) -> Result<RationalX> {
    s.parse::<RationalX>().map_err(|_| Error::parse(field, format!("cannot parse {s:?} as p/q or inf")))
}

pub fn parse_submeasure(text: &str) -> Result<Submeasure> {
    let file: SubmeasureFile = from_json(text)?;
    let n = file.ground;
    let labels = file.labels;
    let phi = match file.repr {
        ReprFile::Table { values } => {
            let ground = ground_of(n, None, "ground")?;
            let mut map = BTreeMap::new();
            for (i, e) in values.iter().enumerate() {
                let set = set_of(n, &e.set, &format!("repr.values[{i}].set"))?;
                let value = rational_x(&e.value, &format!("repr.values[{i}].value"))?;
                if map.insert(set, value).is_some() {
                    return Err(Error::parse(format!("repr.values[{i}].set"), "duplicate set"));
                }
            }
            Submeasure::table(ground, map)?
        }
        ReprFile::SupMeasures { measures } => {
            let mut ms = Vec::with_capacity(measures.len());
            for (i, w) in measures.iter().enumerate() {
                let field = format!("repr.measures[{i}]");
                if w.len() != n {
                    return Err(Error::parse(field, format!("{} weights for ground {n}", w.len())));
                }
                let weights = w
                    .iter()
                    .map(|s| parse_rational(s).map_err(|e| Error::parse(&field, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                ms.push(Measure::new(weights).map_err(|e| Error::parse(&field, e.to_string()))?);
            }
            if ms.is_empty() {
                return Err(Error::parse("repr.measures", "empty measure list"));
            }
            sup_of_measures(ms)?
        }
        ReprFile::MinCover { family } => {
            let ground = ground_of(n, None, "ground")?;
            let fam = family
                .iter()
                .enumerate()
                .map(|(i, s)| set_of(n, s, &format!("repr.family[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Submeasure::min_cover(ground, fam)?
        }
        ReprFile::MazurChain {
            level1,
            arity,
            level_cap,
        } => {
            let ground = ground_of(n, None, "ground")?;
            let gens = level1
                .iter()
                .enumerate()
                .map(|(i, s)| set_of(n, s, &format!("repr.level1[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let cap = level_cap.unwrap_or(crate::submeasure::DEFAULT_LEVEL_CAP);
            mazur_from_chain_capped(ground, gens, arity, cap).map_err(|e| Error::parse("repr.arity", e.to_string()))?
        }
    };
    match labels {
        Some(l) => {
            ground_of(n, Some(l.clone()), "labels")?;
            phi.with_labels(l)
        }
        None => Ok(phi),
    }
}

/// Serializes `φ`. Lazy representations are materialized to a table,
/// subject to `limits`.
pub fn write_submeasure(phi: &Submeasure, limits: &Limits) -> Result<String> {
    let materialized;
    let phi = match phi.repr() {
        Repr::DirectSum(..) | Repr::Pushforward(..) | Repr::Restrict(..) => {
            materialized = phi.to_table(limits)?;
            &materialized
        }
        _ => phi,
    };
    let repr = match phi.repr() {
        Repr::Table(values) => ReprFile::Table {
            values: values
                .iter()
                .map(|(s, v)| TableEntry {
                    set: s.to_vec(),
                    value: v.to_string(),
                })
                .collect(),
        },
        Repr::SupMeasures(ms) => ReprFile::SupMeasures {
            measures: ms.iter().map(|m| m.weights().iter().map(format_rational).collect()).collect(),
        },
        Repr::MinCover(fam) => ReprFile::MinCover {
            family: fam.iter().map(PointSet::to_vec).collect(),
        },
        Repr::MazurChain(c) => ReprFile::MazurChain {
            level1: c.level1.iter().map(PointSet::to_vec).collect(),
            arity: c.arity.clone(),
            level_cap: Some(c.level_cap),
        },
        Repr::DirectSum(..) | Repr::Pushforward(..) | Repr::Restrict(..) => unreachable!("materialized above"),
    };
    Ok(to_json(&SubmeasureFile {
        ground: phi.size(),
        labels: phi.ground().labels().map(<[String]>::to_vec),
        repr,
    }))
}

pub fn parse_covering(text: &str) -> Result<CoveringInstance> {
    let file: CoveringFile = from_json(text)?;
    let ground = ground_of(file.ground, file.labels, "labels")?;
    let family = file
        .family
        .iter()
        .enumerate()
        .map(|(i, s)| set_of(file.ground, s, &format!("family[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    CoveringInstance::new(ground, family)
}

pub fn write_covering(inst: &CoveringInstance) -> String {
    to_json(&CoveringFile {
        ground: inst.ground.size(),
        labels: inst.ground.labels().map(<[String]>::to_vec),
        family: inst.family.iter().map(PointSet::to_vec).collect(),
    })
}

pub fn parse_coloring(text: &str) -> Result<PairColoring> {
    let file: ColoringFile = from_json(text)?;
    let mut pairs = Vec::with_capacity(file.pairs1.len());
    for (i, [a, b]) in file.pairs1.iter().copied().enumerate() {
        if a == b || a >= file.ground || b >= file.ground {
            return Err(Error::parse(format!("pairs1[{i}]"), format!("[{a},{b}] is not a pair of distinct points below {}", file.ground)));
        }
        pairs.push((a.min(b), a.max(b)));
    }
    PairColoring::from_pairs1(file.ground, &pairs)
}

pub fn write_coloring(c: &PairColoring) -> String {
    to_json(&ColoringFile {
        ground: c.size(),
        pairs1: c.pairs1().into_iter().map(|(a, b)| [a, b]).collect(),
    })
}

pub fn write_barrier(b: &BarrierColoring, matrix_ref: &str) -> String {
    to_json(&BarrierFile {
        p: b.p,
        matrix_ref: matrix_ref.to_string(),
    })
}

pub fn parse_barrier(text: &str) -> Result<BarrierFile> {
    from_json(text)
}

pub fn parse_matrix(text: &str) -> Result<VectorSequence> {
    let file: MatrixFile = from_json(text)?;
    if file.entries.len() != file.rows {
        return Err(Error::parse("entries", format!("{} rows, header says {}", file.entries.len(), file.rows)));
    }
    let mut entries = Vec::with_capacity(file.rows);
    for (k, row) in file.entries.iter().enumerate() {
        if row.len() != file.cols {
            return Err(Error::parse(format!("entries[{k}]"), format!("{} columns, header says {}", row.len(), file.cols)));
        }
        entries.push(
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_rational(s).map_err(|e| Error::parse(format!("entries[{k}][{j}]"), e.to_string())))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    VectorSequence::new(entries, file.signed)
}

pub fn write_matrix(x: &VectorSequence) -> String {
    to_json(&MatrixFile {
        rows: x.rows(),
        cols: x.cols(),
        entries: x.entries().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        signed: x.signed(),
    })
}

pub fn parse_map(text: &str) -> Result<PointMap> {
    let file: MapFile = from_json(text)?;
    if file.map.len() != file.source {
        return Err(Error::parse("map", format!("{} images, source is {}", file.map.len(), file.source)));
    }
    PointMap::new(file.target, file.map).map_err(|e| Error::parse("map", e.to_string()))
}

pub fn write_map(f: &PointMap) -> String {
    to_json(&MapFile {
        source: f.source(),
        target: f.target(),
        map: f.map().to_vec(),
    })
}

/// Pretty JSON with a trailing newline, keys in the order given by the
/// value's serialization.
pub fn render<T: Serialize>(value: &T) -> String {
    to_json(value)
}

/// Compact single-line JSON.
pub fn render_compact(value: &Value) -> String {
    serde_json::to_string(value).expect("serializable")
}
