//! Finite braided G-crossed data with scalar structure isomorphisms.
//!
//! Objects are numbered globally, sector by sector: the objects of `C_g`
//! for the element with index 0 come first, then those of index 1, and so
//! on. Every structural isomorphism is an automorphism carrying a scalar in
//! `A = ℤ/m`, so a morphism word evaluates to the sum of the scalars of its
//! steps (inverse steps subtract).
//!
//! Scalar tables are flat arrays indexed row-major by their variables:
//!
//! | table      | variables        | meaning                       |
//! |------------|------------------|-------------------------------|
//! | `alpha`    | `X, Y, Z`        | `(XY)Z → X(YZ)`               |
//! | `lambda`   | `X`              | `U⊗X → X`                     |
//! | `rho`      | `X`              | `X⊗U → X`                     |
//! | `beta`     | `h, X, Y`        | `h.X ⊗ h.Y → h.(X⊗Y)`         |
//! | `gamma`    | `h₂, h₁, X`      | `h₂.(h₁.X) → (h₂h₁).X`        |
//! | `delta`    | `X`              | `e.X → X`                     |
//! | `epsilon`  | `h`              | `h.U → U`                     |
//! | `braiding` | `X, Y`           | `X⊗Y → g.Y⊗X`, `X ∈ C_g`      |

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{make_group, Elem, FiniteGroup, GroupError};
use crate::trees::relations::{assignments, relation_table, Relation};
use crate::trees::{apply_step, Generator, GTree, MorphismWord, TreeError};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("schema error at `{path}`: {reason}")]
    Schema { path: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("object {object} is in sector {found}, expected {expected}")]
    Sector { object: usize, expected: Elem, found: Elem },
    #[error("search space exceeded the cap of {cap} nodes")]
    CapExceeded { cap: u64 },
}

fn schema(path: &str, reason: impl Into<String>) -> AlgebraError {
    AlgebraError::Schema {
        path: path.to_string(),
        reason: reason.into(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTables {
    pub alpha: Vec<u32>,
    pub lambda: Vec<u32>,
    pub rho: Vec<u32>,
    pub beta: Vec<u32>,
    pub gamma: Vec<u32>,
    pub delta: Vec<u32>,
    pub epsilon: Vec<u32>,
    pub braiding: Vec<u32>,
}

impl ScalarTables {
    /// All-zero tables for `n` objects and a group of order `g`.
    pub fn zero(n: usize, g: usize) -> Self {
        let [a, l, r, b, c, d, e, br] = table_lengths(n, g);
        Self {
            alpha: vec![0; a],
            lambda: vec![0; l],
            rho: vec![0; r],
            beta: vec![0; b],
            gamma: vec![0; c],
            delta: vec![0; d],
            epsilon: vec![0; e],
            braiding: vec![0; br],
        }
    }

    fn tables(&self) -> [(&'static str, &Vec<u32>); 8] {
        [
            ("alpha", &self.alpha),
            ("lambda", &self.lambda),
            ("rho", &self.rho),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta", &self.delta),
            ("epsilon", &self.epsilon),
            ("braiding", &self.braiding),
        ]
    }

    /// Concatenation in table order.
    pub fn flatten(&self) -> Vec<u32> {
        self.tables().iter().flat_map(|(_, t)| t.iter().copied()).collect()
    }

    pub fn from_flat(values: &[u32], n: usize, g: usize) -> Self {
        let mut rest = values;
        let mut take = |len: usize| {
            let (head, tail) = rest.split_at(len);
            rest = tail;
            head.to_vec()
        };
        let [a, l, r, b, c, d, e, br] = table_lengths(n, g);
        Self {
            alpha: take(a),
            lambda: take(l),
            rho: take(r),
            beta: take(b),
            gamma: take(c),
            delta: take(d),
            epsilon: take(e),
            braiding: take(br),
        }
    }
}

fn table_lengths(n: usize, g: usize) -> [usize; 8] {
    [n * n * n, n, n, g * n * n, g * g * n, n, g, n * n]
}

/// The JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedAlgebraData {
    /// Group descriptor, e.g. `S3` or `C2xC2`.
    pub group: String,
    /// `A = ℤ/modulus`.
    pub modulus: u32,
    /// `|C_g|` for every element index `g`.
    pub sectors: Vec<usize>,
    /// `tensor[X·N + Y] = X⊗Y`.
    pub tensor: Vec<usize>,
    /// `action[h·N + X] = h.X`.
    pub action: Vec<usize>,
    pub unit: usize,
    pub scalars: ScalarTables,
}

impl CrossedAlgebraData {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            schema(&path, e.into_inner().to_string())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Validated data with the group and sector lookup.
#[derive(Clone, Debug)]
pub struct CrossedAlgebra {
    pub data: CrossedAlgebraData,
    pub group: FiniteGroup,
    sector_of: Vec<Elem>,
}

impl CrossedAlgebra {
    pub fn new(data: CrossedAlgebraData) -> Result<Self, AlgebraError> {
        let group = make_group(&data.group)?;
        Self::with_group(data, group)
    }

    pub fn with_group(data: CrossedAlgebraData, group: FiniteGroup) -> Result<Self, AlgebraError> {
        let g = group.order();
        if data.modulus == 0 {
            return Err(schema("modulus", "must be positive"));
        }
        if data.sectors.len() != g {
            return Err(schema("sectors", format!("expected {g} entries, found {}", data.sectors.len())));
        }
        let sector_of: Vec<Elem> = data
            .sectors
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(Elem(i as u16), k))
            .collect();
        let n = sector_of.len();
        let check_len = |path: &str, v: &[usize], len: usize| {
            if v.len() != len {
                return Err(schema(path, format!("expected {len} entries, found {}", v.len())));
            }
            match v.iter().position(|&x| x >= n) {
                Some(i) => Err(schema(&format!("{path}[{i}]"), format!("object {} out of range", v[i]))),
                None => Ok(()),
            }
        };
        check_len("tensor", &data.tensor, n * n)?;
        check_len("action", &data.action, g * n)?;
        check_len("unit", &[data.unit], 1)?;
        for ((name, table), len) in data.scalars.tables().iter().zip(table_lengths(n, g)) {
            let path = format!("scalars.{name}");
            if table.len() != len {
                return Err(schema(&path, format!("expected {len} entries, found {}", table.len())));
            }
            if let Some(i) = table.iter().position(|&x| x >= data.modulus) {
                return Err(schema(&format!("{path}[{i}]"), format!("scalar {} not below {}", table[i], data.modulus)));
            }
        }
        let alg = Self { data, group, sector_of };
        alg.check_object_tables()?;
        Ok(alg)
    }

    fn check_object_tables(&self) -> Result<(), AlgebraError> {
        let g = &self.group;
        let n = self.objects();
        let sector = |object: usize, expected: Elem| {
            let found = self.sector(object);
            if found == expected {
                Ok(())
            } else {
                Err(AlgebraError::Sector { object, expected, found })
            }
        };
        sector(self.data.unit, Elem::IDENTITY)?;
        for x in 0..n {
            for y in 0..n {
                sector(self.tensor(x, y), g.mul(self.sector(x), self.sector(y)))?;
            }
            for h in g.elements() {
                sector(self.act(h, x), g.conj(h, self.sector(x)))?;
            }
        }
        // structural isomorphisms are automorphisms, so their ends agree
        let u = self.data.unit;
        let ends = |path: &str, a: usize, b: usize| {
            if a == b {
                Ok(())
            } else {
                Err(schema(path, format!("ends {a} and {b} of a structural isomorphism differ")))
            }
        };
        for x in 0..n {
            ends("tensor (lambda)", self.tensor(u, x), x)?;
            ends("tensor (rho)", self.tensor(x, u), x)?;
            ends("action (delta)", self.act(Elem::IDENTITY, x), x)?;
            for y in 0..n {
                let gx = self.sector(x);
                ends("tensor (braiding)", self.tensor(x, y), self.tensor(self.act(gx, y), x))?;
                for z in 0..n {
                    ends("tensor (alpha)", self.tensor(self.tensor(x, y), z), self.tensor(x, self.tensor(y, z)))?;
                }
                for h in g.elements() {
                    ends("action (beta)", self.tensor(self.act(h, x), self.act(h, y)), self.act(h, self.tensor(x, y)))?;
                }
            }
            for h1 in g.elements() {
                for h2 in g.elements() {
                    ends("action (gamma)", self.act(h2, self.act(h1, x)), self.act(g.mul(h2, h1), x))?;
                }
            }
        }
        for h in g.elements() {
            ends("action (epsilon)", self.act(h, u), u)?;
        }
        Ok(())
    }

    pub fn objects(&self) -> usize {
        self.sector_of.len()
    }

    pub fn sector(&self, x: usize) -> Elem {
        self.sector_of[x]
    }

    pub fn tensor(&self, x: usize, y: usize) -> usize {
        self.data.tensor[x * self.objects() + y]
    }

    pub fn act(&self, h: Elem, x: usize) -> usize {
        self.data.action[h.index() * self.objects() + x]
    }

    /// Offsets of the tables in the flattened scalar vector.
    fn offsets(&self) -> [usize; 8] {
        let mut out = [0; 8];
        let mut acc = 0;
        for (o, len) in out.iter_mut().zip(table_lengths(self.objects(), self.group.order())) {
            *o = acc;
            acc += len;
        }
        out
    }

    pub fn variable_count(&self) -> usize {
        table_lengths(self.objects(), self.group.order()).iter().sum()
    }

    /// Evaluates a tree on input objects (indexed by slot).
    pub fn evaluate_object(&self, t: &GTree, inputs: &[usize]) -> Result<usize, AlgebraError> {
        t.validate(&self.group)?;
        if inputs.len() != t.arity() {
            return Err(schema("inputs", format!("expected {} objects, found {}", t.arity(), inputs.len())));
        }
        if let Some(&x) = inputs.iter().find(|&&x| x >= self.objects()) {
            return Err(schema("inputs", format!("object {x} out of range")));
        }
        self.eval(t, inputs)
    }

    fn eval(&self, t: &GTree, inputs: &[usize]) -> Result<usize, AlgebraError> {
        Ok(match t {
            GTree::Unit => self.data.unit,
            GTree::Leaf { slot, color } => {
                let x = inputs[slot - 1];
                if self.sector(x) != *color {
                    return Err(AlgebraError::Sector {
                        object: x,
                        expected: *color,
                        found: self.sector(x),
                    });
                }
                x
            }
            GTree::Label { h, child } => self.act(*h, self.eval(child, inputs)?),
            GTree::Tensor(a, b) => self.tensor(self.eval(a, inputs)?, self.eval(b, inputs)?),
        })
    }

    /// Signed scalar variables of a morphism word, one per step.
    pub fn morphism_terms(&self, m: &MorphismWord, inputs: &[usize]) -> Result<Vec<(usize, i64)>, AlgebraError> {
        self.evaluate_object(&m.source, inputs)?;
        let n = self.objects();
        let gn = self.group.order();
        let [o_a, o_l, o_r, o_b, o_g, o_d, o_e, o_c] = self.offsets();
        let mut t = m.source.clone();
        let mut terms = Vec::with_capacity(m.steps.len());
        for step in &m.steps {
            let sub = t.get(&step.address).ok_or_else(|| TreeError::BadAddress(step.address.clone()))?;
            let next = apply_step(&self.group, &t, step)?;
            let ev = |x: &GTree| self.eval(x, inputs);
            // the side on which the generator's pattern appears
            let pattern = if step.inverse {
                next.get(&step.address).expect("address survives the step").clone()
            } else {
                sub.clone()
            };
            use GTree::*;
            let var = match (step.generator, &pattern) {
                (Generator::Alpha, Tensor(ab, c)) => match &**ab {
                    Tensor(a, b) => o_a + (ev(a)? * n + ev(b)?) * n + ev(c)?,
                    _ => unreachable!("step applied"),
                },
                (Generator::Lambda, Tensor(_, a)) => o_l + ev(a)?,
                (Generator::Rho, Tensor(a, _)) => o_r + ev(a)?,
                (Generator::Beta, Tensor(x, y)) => match (&**x, &**y) {
                    (Label { h, child: a }, Label { child: b, .. }) => o_b + (h.index() * n + ev(a)?) * n + ev(b)?,
                    _ => unreachable!("step applied"),
                },
                (Generator::Gamma, Label { h: h2, child }) => match &**child {
                    Label { h: h1, child: a } => o_g + (h2.index() * gn + h1.index()) * n + ev(a)?,
                    _ => unreachable!("step applied"),
                },
                (Generator::Delta, Label { child, .. }) => o_d + ev(child)?,
                (Generator::Epsilon, Label { h, .. }) => o_e + h.index(),
                (Generator::Braiding, Tensor(a, b)) => o_c + ev(a)? * n + ev(b)?,
                _ => unreachable!("step applied"),
            };
            terms.push((var, if step.inverse { -1 } else { 1 }));
            t = next;
        }
        Ok(terms)
    }

    /// Sum of step scalars in `ℤ/m`.
    pub fn evaluate_morphism(&self, m: &MorphismWord, inputs: &[usize]) -> Result<u32, AlgebraError> {
        let values = self.data.scalars.flatten();
        Ok(self.sum(&values, &self.morphism_terms(m, inputs)?))
    }

    fn sum(&self, values: &[u32], terms: &[(usize, i64)]) -> u32 {
        let m = self.data.modulus as i64;
        let total: i64 = terms.iter().map(|&(v, c)| c * values[v] as i64).sum();
        total.rem_euclid(m) as u32
    }

    /// Every relation instance over all input objects and labels, as a
    /// pair of term lists.
    fn instances(&self, relation: &Relation) -> Result<Vec<Instance>, AlgebraError> {
        let vars = relation.variables();
        let (colors, labels): (Vec<String>, Vec<String>) = vars.into_iter().partition(|v| is_color_var(v));
        let arity = colors.len();
        let n = self.objects();
        let mut out = Vec::new();
        let object_tuples = (0..n.pow(arity as u32)).map(|mut code| {
            let mut xs = vec![0; arity];
            for x in xs.iter_mut().rev() {
                *x = code % n;
                code /= n;
            }
            xs
        });
        let label_assignments = assignments(&self.group, &labels);
        for objects in object_tuples {
            for labels in &label_assignments {
                let mut assignment = labels.clone();
                for (i, &x) in objects.iter().enumerate() {
                    assignment.insert(format!("g{}", i + 1), self.sector(x));
                }
                let (lhs, rhs) = relation.instantiate(&assignment)?;
                out.push(Instance {
                    objects: objects.clone(),
                    labels: labels.clone(),
                    lhs: self.morphism_terms(&lhs, &objects)?,
                    rhs: self.morphism_terms(&rhs, &objects)?,
                });
            }
        }
        Ok(out)
    }
}

fn is_color_var(v: &str) -> bool {
    v.strip_prefix('g').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

struct Instance {
    objects: Vec<usize>,
    labels: BTreeMap<String, Elem>,
    lhs: Vec<(usize, i64)>,
    rhs: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceFailure {
    pub objects: Vec<usize>,
    pub labels: BTreeMap<String, Elem>,
    pub lhs: u32,
    pub rhs: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub relation: String,
    pub assignments_checked: usize,
    pub failures: Vec<CoherenceFailure>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates both sides of every relation instance; one report per
/// relation in table order.
pub fn check_coherence(alg: &CrossedAlgebra) -> Result<Vec<CoherenceReport>, AlgebraError> {
    let values = alg.data.scalars.flatten();
    relation_table()
        .par_iter()
        .map(|relation| {
            let instances = alg.instances(relation)?;
            let failures = instances
                .iter()
                .filter_map(|i| {
                    let (l, r) = (alg.sum(&values, &i.lhs), alg.sum(&values, &i.rhs));
                    (l != r).then(|| CoherenceFailure {
                        objects: i.objects.clone(),
                        labels: i.labels.clone(),
                        lhs: l,
                        rhs: r,
                    })
                })
                .collect();
            Ok(CoherenceReport {
                relation: relation.name.clone(),
                assignments_checked: instances.len(),
                failures,
            })
        })
        .collect()
}

/// The strict example: one object per sector, tensor by multiplication,
/// action by conjugation, every scalar zero.
pub fn builtin_group_example(spec: &str, modulus: u32) -> Result<CrossedAlgebra, AlgebraError> {
    let group = make_group(spec)?;
    let n = group.order();
    let mut tensor = vec![0; n * n];
    let mut action = vec![0; n * n];
    for a in group.elements() {
        for b in group.elements() {
            tensor[a.index() * n + b.index()] = group.mul(a, b).index();
            action[a.index() * n + b.index()] = group.conj(a, b).index();
        }
    }
    let data = CrossedAlgebraData {
        group: spec.to_string(),
        modulus,
        sectors: vec![1; n],
        tensor,
        action,
        unit: 0,
        scalars: ScalarTables::zero(n, n),
    };
    CrossedAlgebra::with_group(data, group)
}

/// Linear equations `Σ c_v x_v = 0 (mod m)` imposed by every relation
/// instance, reduced and deduplicated.
pub fn coherence_equations(alg: &CrossedAlgebra) -> Result<Vec<Vec<(usize, i64)>>, AlgebraError> {
    let m = alg.data.modulus as i64;
    let mut eqs = std::collections::BTreeSet::new();
    for relation in relation_table() {
        for inst in alg.instances(relation)? {
            let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
            for &(v, c) in &inst.lhs {
                *coeffs.entry(v).or_default() += c;
            }
            for &(v, c) in &inst.rhs {
                *coeffs.entry(v).or_default() -= c;
            }
            let eq: Vec<(usize, i64)> = coeffs
                .into_iter()
                .map(|(v, c)| (v, c.rem_euclid(m)))
                .filter(|&(_, c)| c != 0)
                .collect();
            if !eq.is_empty() {
                eqs.insert(eq);
            }
        }
    }
    Ok(eqs.into_iter().collect())
}

/// All scalar tables on the object tables of `shape` that satisfy every
/// relation, found by backtracking over the scalar variables with each
/// equation checked as soon as its last variable is set. Fails once more
/// than `cap` search nodes are visited.
pub fn solve_coherence(shape: &CrossedAlgebra, cap: u64) -> Result<Vec<CrossedAlgebra>, AlgebraError> {
    let m = shape.data.modulus;
    let vars = shape.variable_count();
    let eqs = coherence_equations(shape)?;
    // equations become checkable at their largest variable
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); vars];
    for (i, eq) in eqs.iter().enumerate() {
        let last = eq.iter().map(|&(v, _)| v).max().expect("nonempty equation");
        closing[last].push(i);
    }
    let mut values = vec![0u32; vars];
    let mut found = Vec::new();
    let mut nodes = 0u64;
    search(&eqs, &closing, m, 0, &mut values, &mut found, &mut nodes, cap)?;
    let n = shape.objects();
    let g = shape.group.order();
    Ok(found
        .into_iter()
        .map(|v| {
            let mut data = shape.data.clone();
            data.scalars = ScalarTables::from_flat(&v, n, g);
            CrossedAlgebra {
                data,
                group: shape.group.clone(),
                sector_of: shape.sector_of.clone(),
            }
        })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn search(
    eqs: &[Vec<(usize, i64)>],
    closing: &[Vec<usize>],
    m: u32,
    var: usize,
    values: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
    nodes: &mut u64,
    cap: u64,
) -> Result<(), AlgebraError> {
    if var == values.len() {
        found.push(values.clone());
        return Ok(());
    }
    for value in 0..m {
        *nodes += 1;
        if *nodes > cap {
            return Err(AlgebraError::CapExceeded { cap });
        }
        values[var] = value;
        let ok = closing[var].iter().all(|&e| {
            let s: i64 = eqs[e].iter().map(|&(v, c)| c * values[v] as i64).sum();
            s.rem_euclid(m as i64) == 0
        });
        if ok {
            search(eqs, closing, m, var + 1, values, found, nodes, cap)?;
        }
    }
    values[var] = 0;
    Ok(())
}
