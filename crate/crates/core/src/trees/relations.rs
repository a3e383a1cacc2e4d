//! The relation table and its verification in the groupoid model.
//!
//! The table lives in `data/relations.txt`. A relation instance holds when
//! both sides end at the same tree, their braids agree in the braid group,
//! and each braid carries the source normal form to the target one.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::{interpret_morphism_with, Generator, GTree, Interpretation, MorphismWord, Step, TreeError};
use crate::groups::{Elem, FiniteGroup};
use crate::hurwitz::{braid_act_labeled, DecoratedTuple};

const TABLE: &str = include_str!("../../data/relations.txt");

/// One line of the relation table, still carrying `{var}` placeholders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub ids: Vec<String>,
    pub source: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub reading: String,
}

impl Relation {
    /// Placeholder names other than `e`, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = Vec::new();
        let all = std::iter::once(self.source.as_str())
            .chain(self.lhs.iter().map(String::as_str))
            .chain(self.rhs.iter().map(String::as_str));
        for text in all {
            let mut rest = text;
            while let Some(open) = rest.find('{') {
                let close = rest[open..].find('}').map_or(rest.len(), |c| open + c);
                let name = &rest[open + 1..close];
                if name != "e" && !vars.iter().any(|v| v == name) {
                    vars.push(name.to_string());
                }
                rest = &rest[(close + 1).min(rest.len())..];
            }
        }
        vars.sort();
        vars
    }

    /// Both sides as morphism words for a concrete assignment.
    pub fn instantiate(&self, assignment: &BTreeMap<String, Elem>) -> Result<(MorphismWord, MorphismWord), TreeError> {
        let source = GTree::parse(&substitute(&self.source, assignment)?)?;
        let side = |steps: &[String]| -> Result<MorphismWord, TreeError> {
            let steps = steps
                .iter()
                .map(|s| parse_step(&substitute(s, assignment)?))
                .collect::<Result<_, _>>()?;
            Ok(MorphismWord::new(source.clone(), steps))
        };
        Ok((side(&self.lhs)?, side(&self.rhs)?))
    }
}

fn substitute(text: &str, assignment: &BTreeMap<String, Elem>) -> Result<String, TreeError> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .map(|c| open + c)
            .ok_or_else(|| TreeError::MissingVariable(rest[open..].to_string()))?;
        let name = &rest[open + 1..close];
        let value = if name == "e" {
            Elem::IDENTITY
        } else {
            *assignment
                .get(name)
                .ok_or_else(|| TreeError::MissingVariable(name.to_string()))?
        };
        out.push_str(&value.to_string());
        rest = &rest[close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Parses `gamma^-1@0.1[3]`.
pub fn parse_step(text: &str) -> Result<Step, TreeError> {
    let err = |reason: &str| TreeError::Parse {
        position: 0,
        reason: format!("step `{text}`: {reason}"),
    };
    let (body, param) = match text.split_once('[') {
        Some((body, p)) => {
            let p = p.strip_suffix(']').ok_or_else(|| err("unclosed parameter"))?;
            (body, Some(Elem(p.trim().parse().map_err(|_| err("bad parameter"))?)))
        }
        None => (text, None),
    };
    let (head, address) = match body.split_once('@') {
        Some((head, addr)) => (
            head,
            addr.split('.')
                .map(|p| p.parse::<usize>().map_err(|_| err("bad address")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => (body, Vec::new()),
    };
    let (name, inverse) = match head.strip_suffix("^-1") {
        Some(name) => (name, true),
        None => (head, false),
    };
    let generator = Generator::from_name(name).ok_or_else(|| err("unknown generator"))?;
    Ok(Step {
        generator,
        address,
        inverse,
        param,
    })
}

pub fn parse_table(text: &str) -> Result<Vec<Relation>, TreeError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        if cols.len() != 6 {
            return Err(TreeError::Table {
                line: i + 1,
                reason: format!("expected 6 columns, found {}", cols.len()),
            });
        }
        let words = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
        out.push(Relation {
            name: cols[0].to_string(),
            ids: cols[1].split(',').map(|s| s.trim().to_string()).collect(),
            source: cols[2].to_string(),
            lhs: words(cols[3]),
            rhs: words(cols[4]),
            reading: cols[5].to_string(),
        });
    }
    Ok(out)
}

/// The built-in relation table.
pub fn relation_table() -> &'static [Relation] {
    static CELL: OnceLock<Vec<Relation>> = OnceLock::new();
    CELL.get_or_init(|| parse_table(TABLE).expect("bundled relation table parses"))
}

/// Table lines selected by a line name or a relation id.
pub fn relations_for(id: &str) -> Result<Vec<&'static Relation>, TreeError> {
    let found: Vec<_> = relation_table()
        .iter()
        .filter(|r| r.name == id || r.ids.iter().any(|i| i == id))
        .collect();
    if found.is_empty() {
        Err(TreeError::UnknownRelation(id.to_string()))
    } else {
        Ok(found)
    }
}

/// All assignments of the variables to group elements, lexicographically.
pub fn assignments(g: &FiniteGroup, vars: &[String]) -> Vec<BTreeMap<String, Elem>> {
    crate::hurwitz::tuples(g, vars.len())
        .map(|values| vars.iter().cloned().zip(values).collect())
        .collect()
}

fn realizes(g: &FiniteGroup, i: &Interpretation) -> bool {
    let x = DecoratedTuple {
        sigma: i.source.sigma.clone(),
        b: i.source.b.clone(),
    };
    match braid_act_labeled(g, &i.braid, &x, &i.source.signature.inputs) {
        Ok(y) => y.sigma == i.target.sigma && y.b == i.target.b,
        Err(_) => false,
    }
}

/// Checks one instance. `Ok(None)` means it holds, `Ok(Some(reason))`
/// describes the failure. With `flip_braiding` the left side interprets
/// every braiding by the inverse crossing.
pub fn check_instance(
    g: &FiniteGroup,
    relation: &Relation,
    assignment: &BTreeMap<String, Elem>,
    flip_braiding: bool,
) -> Result<Option<String>, TreeError> {
    let (lhs, rhs) = relation.instantiate(assignment)?;
    lhs.source.validate(g)?;
    let l = match interpret_morphism_with(g, &lhs, flip_braiding) {
        Ok(i) => i,
        Err(e) => return Ok(Some(format!("left side: {e}"))),
    };
    let r = match interpret_morphism_with(g, &rhs, false) {
        Ok(i) => i,
        Err(e) => return Ok(Some(format!("right side: {e}"))),
    };
    Ok(if l.target_tree != r.target_tree {
        Some(format!("targets differ: {} vs {}", l.target_tree, r.target_tree))
    } else if l.target != r.target {
        Some("target normal forms differ".into())
    } else if !l.braid.equivalent(&r.braid) {
        Some(format!("braids differ: [{}] vs [{}]", l.braid, r.braid))
    } else if !realizes(g, &l) {
        Some("left braid does not carry the source to the target".into())
    } else if !realizes(g, &r) {
        Some("right braid does not carry the source to the target".into())
    } else {
        None
    })
}

/// True iff every table line selected by `id` holds at `assignment`.
pub fn check_relation(g: &FiniteGroup, id: &str, assignment: &BTreeMap<String, Elem>) -> Result<bool, TreeError> {
    for relation in relations_for(id)? {
        if check_instance(g, relation, assignment, false)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceFailure {
    pub assignment: BTreeMap<String, Elem>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub assignments_checked: usize,
    pub failures: Vec<InstanceFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every table line over every assignment, one report per line in
/// table order. Failures are listed in assignment order.
pub fn check_all_relations(g: &FiniteGroup, flip_braiding: bool) -> Result<Vec<RelationReport>, TreeError> {
    relation_table()
        .iter()
        .map(|relation| {
            let all = assignments(g, &relation.variables());
            let outcomes: Vec<Option<String>> = all
                .par_iter()
                .map(|a| check_instance(g, relation, a, flip_braiding))
                .collect::<Result<_, _>>()?;
            let failures = all
                .iter()
                .zip(outcomes)
                .filter_map(|(a, o)| {
                    o.map(|reason| InstanceFailure {
                        assignment: a.clone(),
                        reason,
                    })
                })
                .collect();
            Ok(RelationReport {
                relation: relation.name.clone(),
                assignments_checked: all.len(),
                failures,
            })
        })
        .collect()
}
