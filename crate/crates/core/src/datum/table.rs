use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    BasisElement, CPrimeEntry, Conventions, EtaClass, GradedDatum, Grading, Leaf, OrbitLabel,
    PairingOrbit, PrimitiveClass,
};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;
use crate::type_a;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumFile {
    name: String,
    delta: [i64; 2],
    basis: Vec<BasisElement>,
    primitive_classes: Vec<ClassFile>,
    pairing: Vec<PairingOrbit>,
    sigma: Vec<usize>,
    orbits: BTreeMap<String, Vec<OrbitLabel>>,
    #[serde(default)]
    closure: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    etas: BTreeMap<String, Vec<EtaFile>>,
    leaf: LeafFile,
    #[serde(default)]
    constant_sheaf_word: BTreeMap<String, usize>,
    #[serde(default)]
    children: BTreeMap<String, DatumFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassFile {
    id: usize,
    dual: usize,
    #[serde(rename = "c_F")]
    c_f: i64,
    members: Vec<usize>,
    theta_ratio: LaurentPoly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ChildRef {
    Named(String),
    Inline(Box<DatumFile>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EtaFile {
    d: i64,
    orbit: String,
    child: ChildRef,
    induction: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LeafFile {
    rigid: bool,
    #[serde(default)]
    cprime: Vec<CPrimeFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CPrimeFile {
    #[serde(rename = "s_F")]
    s_f: usize,
    #[serde(rename = "r_F")]
    r_f: LaurentPoly,
    kappa_label: String,
}

/// Parses a table datum. Children are given inline, by a name listed under
/// `children`, or as a `glq:` specification built by the `GL` builder.
pub fn load_datum_str(json: &str, conv: Conventions) -> Result<Arc<GradedDatum>> {
    let file: DatumFile =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("datum JSON: {e}")))?;
    let named = file.children.clone();
    let mut stack = Vec::new();
    convert(&file, &named, conv, &mut stack)
}

pub fn load_datum_file(path: &Path, conv: Conventions) -> Result<Arc<GradedDatum>> {
    let text = std::fs::read_to_string(path)?;
    load_datum_str(&text, conv)
}

fn resolve_child(
    child: &ChildRef,
    named: &BTreeMap<String, DatumFile>,
    conv: Conventions,
    stack: &mut Vec<String>,
) -> Result<Arc<GradedDatum>> {
    match child {
        ChildRef::Inline(f) => convert(f, named, conv, stack),
        ChildRef::Named(name) if name.starts_with("glq:") => {
            let spec: type_a::TypeASpec = name.parse()?;
            type_a::build_datum(&spec, conv)
        }
        ChildRef::Named(name) => {
            let f = named
                .get(name)
                .ok_or_else(|| Error::DatumInvalid(format!("unknown child datum '{name}'")))?;
            convert(f, named, conv, stack)
        }
    }
}

fn key_for(map: &BTreeMap<String, impl Sized>, n: i64, what: &str, name: &str) -> Result<String> {
    let k = n.to_string();
    if map.contains_key(&k) {
        Ok(k)
    } else {
        Err(Error::DatumInvalid(format!(
            "{name}: no {what} entry for n={n}"
        )))
    }
}

fn convert(
    f: &DatumFile,
    named: &BTreeMap<String, DatumFile>,
    conv: Conventions,
    stack: &mut Vec<String>,
) -> Result<Arc<GradedDatum>> {
    if stack.contains(&f.name) {
        return Err(Error::DatumInvalid(format!(
            "cyclic child reference through '{}'",
            f.name
        )));
    }
    if f.delta[0] != -f.delta[1] || f.delta[0] == 0 {
        return Err(Error::DatumInvalid(format!(
            "{}: delta must be [n, -n] with n != 0",
            f.name
        )));
    }
    stack.push(f.name.clone());
    for k in f
        .orbits
        .keys()
        .chain(f.closure.keys())
        .chain(f.etas.keys())
        .chain(f.constant_sheaf_word.keys())
    {
        if !f.delta.iter().any(|d| d.to_string() == *k) {
            return Err(Error::DatumInvalid(format!(
                "{}: key '{k}' is not an element of delta",
                f.name
            )));
        }
    }
    let mut gradings = Vec::with_capacity(2);
    for &n in &f.delta {
        let ok = key_for(&f.orbits, n, "orbits", &f.name)?;
        let mut etas = Vec::new();
        if let Some(list) = f.etas.get(&n.to_string()) {
            for e in list {
                etas.push(EtaClass {
                    d: e.d,
                    orbit: e.orbit.clone(),
                    child: resolve_child(&e.child, named, conv, stack)?,
                    induction: e.induction.clone(),
                });
            }
        }
        gradings.push(Grading {
            n,
            orbits: f.orbits[&ok].clone(),
            closure: f.closure.get(&n.to_string()).cloned().unwrap_or_default(),
            etas,
            constant_sheaf_word: f.constant_sheaf_word.get(&n.to_string()).copied(),
        });
    }
    stack.pop();
    let g1 = gradings.pop().unwrap();
    let g0 = gradings.pop().unwrap();
    Ok(Arc::new(GradedDatum {
        name: f.name.clone(),
        delta: f.delta,
        basis: f.basis.clone(),
        primitive_classes: f
            .primitive_classes
            .iter()
            .map(|c| PrimitiveClass {
                id: c.id,
                dual: c.dual,
                c_f: c.c_f,
                members: c.members.clone(),
                theta_ratio: c.theta_ratio.clone(),
            })
            .collect(),
        pairing: f.pairing.clone(),
        sigma: f.sigma.clone(),
        gradings: [g0, g1],
        leaf: Leaf {
            rigid: f.leaf.rigid,
            cprime: f
                .leaf
                .cprime
                .iter()
                .map(|c| CPrimeEntry {
                    s_f: c.s_f,
                    r_f: c.r_f.clone(),
                    kappa_label: c.kappa_label.clone(),
                })
                .collect(),
        },
    }))
}
