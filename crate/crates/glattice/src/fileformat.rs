//! The on-disk description of a group with named lattices and maps: a
//! single UTF-8 JSON document. Matrices are row-major and act on column
//! vectors. Every lattice must list an action matrix for every group
//! element, identity included; omissions are errors, not defaults.

use crate::groups::{FiniteGroup, GroupError};
use crate::lattices::{GLattice, LatticeError, LatticeMap};
use crate::matrix::IntMat;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("lattice {lattice:?}: no action matrix for element {element:?}")]
    MissingElement { lattice: String, element: String },
    #[error("lattice {lattice:?}: unknown element label {element:?}")]
    UnknownElement { lattice: String, element: String },
    #[error("lattice {lattice:?}: ragged or misshapen matrix for element {element:?}")]
    BadMatrix { lattice: String, element: String },
    #[error("lattice {name:?}: {source}")]
    Lattice {
        name: String,
        source: LatticeError,
    },
    #[error("map {name:?}: endpoint {endpoint:?} is not a declared lattice")]
    UnknownLattice { name: String, endpoint: String },
    #[error("map {name:?}: {source}")]
    Map {
        name: String,
        source: LatticeError,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeDoc {
    pub rank: usize,
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapDoc {
    pub dom: String,
    pub cod: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Document {
    pub group: GroupDoc,
    #[serde(default)]
    pub lattices: BTreeMap<String, LatticeDoc>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDoc>,
}

/// A parsed and fully validated document.
pub struct Compiled {
    pub group: Arc<FiniteGroup>,
    pub lattices: BTreeMap<String, Arc<GLattice>>,
    pub maps: BTreeMap<String, LatticeMap>,
}

fn matrix_from_rows(
    rows: &[Vec<i64>],
    want_rows: usize,
    want_cols: usize,
) -> Option<IntMat> {
    if rows.len() != want_rows || rows.iter().any(|r| r.len() != want_cols) {
        return None;
    }
    Some(IntMat::from_fn(want_rows, want_cols, |i, j| {
        BigInt::from(rows[i][j])
    }))
}

pub fn parse(text: &str) -> Result<Compiled, FormatError> {
    let doc: Document = serde_json::from_str(text)?;
    compile(&doc)
}

pub fn compile(doc: &Document) -> Result<Compiled, FormatError> {
    let group = Arc::new(FiniteGroup::new(
        doc.group.elements.clone(),
        doc.group.table.clone(),
    )?);
    let mut lattices = BTreeMap::new();
    for (name, lat) in &doc.lattices {
        for element in lat.action.keys() {
            if group.element_by_label(element).is_none() {
                return Err(FormatError::UnknownElement {
                    lattice: name.clone(),
                    element: element.clone(),
                });
            }
        }
        let mut action = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let label = group.label(g);
            let rows = lat.action.get(label).ok_or_else(|| {
                FormatError::MissingElement {
                    lattice: name.clone(),
                    element: label.to_owned(),
                }
            })?;
            let m = matrix_from_rows(rows, lat.rank, lat.rank).ok_or_else(|| {
                FormatError::BadMatrix {
                    lattice: name.clone(),
                    element: label.to_owned(),
                }
            })?;
            action.push(m);
        }
        let lattice = GLattice::new(Arc::clone(&group), lat.rank, action).map_err(|source| {
            FormatError::Lattice {
                name: name.clone(),
                source,
            }
        })?;
        lattices.insert(name.clone(), Arc::new(lattice));
    }
    let mut maps = BTreeMap::new();
    for (name, m) in &doc.maps {
        let dom = lattices.get(&m.dom).ok_or_else(|| FormatError::UnknownLattice {
            name: name.clone(),
            endpoint: m.dom.clone(),
        })?;
        let cod = lattices.get(&m.cod).ok_or_else(|| FormatError::UnknownLattice {
            name: name.clone(),
            endpoint: m.cod.clone(),
        })?;
        let matrix = matrix_from_rows(&m.matrix, cod.rank(), dom.rank()).ok_or_else(|| {
            FormatError::BadMatrix {
                lattice: name.clone(),
                element: String::new(),
            }
        })?;
        let map = LatticeMap::new(Arc::clone(dom), Arc::clone(cod), matrix).map_err(
            |source| FormatError::Map {
                name: name.clone(),
                source,
            },
        )?;
        maps.insert(name.clone(), map);
    }
    Ok(Compiled {
        group,
        lattices,
        maps,
    })
}

fn doc_matrix(m: &IntMat) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| i64::try_from(m[(i, j)].clone()).expect("preset entries are small"))
                .collect()
        })
        .collect()
}

fn lattice_doc(l: &GLattice) -> LatticeDoc {
    let group = l.group();
    let action = (0..group.order())
        .map(|g| (group.label(g).to_owned(), doc_matrix(l.action(g))))
        .collect();
    LatticeDoc {
        rank: l.rank(),
        action,
    }
}

/// The compiled-in preset: the Klein group with the lattice cast of the
/// verification suites (`Z`, `ZG`, `IG`, `Tstar`, `Fstar`, the embedding
/// codomain `ZGIG` and the resolution middle `ZG2`) plus the structural
/// maps between them. The names `klein`, `local` and `global` all resolve
/// to it: the three suites share the same group and lattice data.
pub fn preset(name: &str) -> Option<Document> {
    if !matches!(name, "klein" | "local" | "global") {
        return None;
    }
    let data = crate::klein::build().expect("Klein data assembles");
    let group = &data.group;
    let group_doc = GroupDoc {
        elements: group.labels().to_vec(),
        table: group.table().to_vec(),
    };
    let z = crate::lattices::trivial_lattice(group, 1);
    let mut lattices = BTreeMap::new();
    lattices.insert("Z".to_owned(), lattice_doc(&z));
    lattices.insert("ZG".to_owned(), lattice_doc(&data.zg));
    lattices.insert("IG".to_owned(), lattice_doc(&data.ig));
    lattices.insert("Tstar".to_owned(), lattice_doc(&data.tstar));
    lattices.insert(
        "Fstar".to_owned(),
        lattice_doc(data.resolution.kernel_term()),
    );
    lattices.insert("ZGIG".to_owned(), lattice_doc(&data.zg_plus_ig));
    lattices.insert(
        "ZG2".to_owned(),
        lattice_doc(data.defining_map.codomain()),
    );
    let mut maps = BTreeMap::new();
    maps.insert(
        "augmentation".to_owned(),
        MapDoc {
            dom: "ZG".into(),
            cod: "Z".into(),
            matrix: vec![vec![1, 1, 1, 1]],
        },
    );
    maps.insert(
        "ig_incl".to_owned(),
        MapDoc {
            dom: "IG".into(),
            cod: "ZG".into(),
            matrix: doc_matrix(data.ig_incl.matrix()),
        },
    );
    maps.insert(
        "embed".to_owned(),
        MapDoc {
            dom: "Tstar".into(),
            cod: "ZGIG".into(),
            matrix: doc_matrix(data.embed.matrix()),
        },
    );
    maps.insert(
        "defining".to_owned(),
        MapDoc {
            dom: "ZGIG".into(),
            cod: "ZG2".into(),
            matrix: doc_matrix(data.defining_map.matrix()),
        },
    );
    Some(Document {
        group: group_doc,
        lattices,
        maps,
    })
}
