//! Independent oracles shared by the integration suites. Nothing here calls
//! into the library's algorithms; groups are plain product tables.

#![allow(dead_code)]

use std::collections::BTreeMap;

use little_bundles::trees::GTree;
use little_bundles::Elem;

/// A finite group as a bare product table.
#[derive(Clone, Debug)]
pub struct Table {
    pub n: usize,
    pub mul: Vec<usize>,
    pub inv: Vec<usize>,
}

impl Table {
    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mul: Vec<usize> = (0..n * n).map(|i| f(i / n, i % n)).collect();
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap()).collect();
        Self { n, mul, inv }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// `S_k` on one-line permutations in lexicographic order, composed as
    /// `(ab)(i) = a(b(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = lex_permutations(k);
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self::from_fn(perms.len(), |a, b| {
            let c: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            index[&c]
        })
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.m(self.m(h, g), self.inv[h])
    }
}

pub fn lex_permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

fn components<S: Ord + Clone>(states: Vec<S>, moves: impl Fn(&S) -> Vec<S>) -> Vec<usize> {
    let index: BTreeMap<S, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut uf = UnionFind((0..states.len()).collect());
    for (i, s) in states.iter().enumerate() {
        for t in moves(s) {
            let j = *index.get(&t).expect("moves stay inside the state set");
            uf.union(i, j);
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..states.len() {
        *sizes.entry(uf.find(i)).or_default() += 1;
    }
    let mut out: Vec<usize> = sizes.into_values().collect();
    out.sort_unstable();
    out
}

fn all_tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0..n.pow(r as u32))
        .map(|mut code| {
            let mut t = vec![0; r];
            for x in t.iter_mut().rev() {
                *x = code % n;
                code /= n;
            }
            t
        })
        .collect()
}

/// Sorted orbit sizes of the colored braid action on the component of
/// `(inputs, output)`. A state is `(slot at each position, label at each
/// position)`; the color condition is the ordered product of the
/// conjugated input colors over positions.
pub fn naive_component_orbits(t: &Table, inputs: &[usize], output: usize) -> Vec<usize> {
    let r = inputs.len();
    let effective = |slots: &[usize], labels: &[usize], k: usize| t.conj(labels[k], inputs[slots[k]]);
    let mut states = Vec::new();
    for slots in lex_permutations(r) {
        for labels in all_tuples(t.n, r) {
            let h = (0..r).fold(0, |acc, k| t.m(acc, effective(&slots, &labels, k)));
            if h == output {
                states.push((slots.clone(), labels));
            }
        }
    }
    components(states, |(slots, labels)| {
        (1..r)
            .map(|j| {
                let (a, b) = (j - 1, j);
                let mut s = slots.clone();
                let mut l = labels.clone();
                l[a] = t.m(effective(slots, labels, a), labels[b]);
                l[b] = labels[a];
                s.swap(a, b);
                (s, l)
            })
            .collect()
    })
}

/// Sorted orbit sizes of braids plus global conjugation on all
/// `(positions, positional tuple)` pairs with the plain Hurwitz move.
pub fn naive_hurwitz_space_orbits(t: &Table, r: usize) -> Vec<usize> {
    let mut states = Vec::new();
    for slots in lex_permutations(r) {
        for tuple in all_tuples(t.n, r) {
            states.push((slots.clone(), tuple));
        }
    }
    components(states, |(slots, tuple)| {
        let mut out: Vec<(Vec<usize>, Vec<usize>)> = (1..r)
            .map(|j| {
                let mut s = slots.clone();
                let mut x = tuple.clone();
                x[j - 1] = t.conj(tuple[j - 1], tuple[j]);
                x[j] = tuple[j - 1];
                s.swap(j - 1, j);
                (s, x)
            })
            .collect();
        for h in 0..t.n {
            out.push((slots.clone(), tuple.iter().map(|&x| t.conj(h, x)).collect()));
        }
        out
    })
}

/// `|G|^r / |L|` for `G = ℤ/n`, where `L ⊆ G^r` is spanned by
/// `g_j e_i + g_i e_j` over `i < j`: the pure braid `A_ij` adds `g_j` to the
/// label of strand `i` and `g_i` to that of strand `j`.
pub fn abelian_prediction(n: usize, colors: &[usize]) -> usize {
    let r = colors.len();
    let mut span = std::collections::BTreeSet::from([vec![0usize; r]]);
    let mut gens = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut v = vec![0; r];
            v[i] = colors[j] % n;
            v[j] = colors[i] % n;
            gens.push(v);
        }
    }
    loop {
        let next: std::collections::BTreeSet<Vec<usize>> = span
            .iter()
            .flat_map(|v| gens.iter().map(move |g| v.iter().zip(g).map(|(a, b)| (a + b) % n).collect()))
            .chain(span.iter().cloned())
            .collect();
        if next.len() == span.len() {
            break;
        }
        span = next;
    }
    n.pow(r as u32) / span.len()
}

/// Reduced words in the free group on `x_1, …, x_n`; `-i` is `x_i⁻¹`.
pub type FreeWord = Vec<i32>;

fn reduce_push(out: &mut FreeWord, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn substitute(word: &[i32], images: &[FreeWord]) -> FreeWord {
    let mut out = Vec::new();
    for &l in word {
        let img = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            img.iter().for_each(|&x| reduce_push(&mut out, x));
        } else {
            img.iter().rev().for_each(|&x| reduce_push(&mut out, -x));
        }
    }
    out
}

/// Images of the free generators under the Artin representation of a
/// braid word. Two braids are equal iff their images agree.
pub fn artin_images(strands: usize, letters: &[i32]) -> Vec<FreeWord> {
    let mut images: Vec<FreeWord> = (1..=strands as i32).map(|i| vec![i]).collect();
    for &l in letters {
        let i = l.abs();
        let mut step: Vec<FreeWord> = (1..=strands as i32).map(|k| vec![k]).collect();
        let (a, b) = (i as usize - 1, i as usize);
        if l > 0 {
            step[a] = vec![i, i + 1, -i];
            step[b] = vec![i];
        } else {
            step[a] = vec![i + 1];
            step[b] = vec![-(i + 1), i, i + 1];
        }
        images = step.iter().map(|w| substitute(w, &images)).collect();
    }
    images
}

/// Number of solutions of a homogeneous system over `ℤ/p`, `p` prime.
pub fn count_solutions_mod_p(vars: usize, equations: &[Vec<(usize, i64)>], p: i64) -> u128 {
    let mut rows: Vec<Vec<i64>> = equations
        .iter()
        .map(|eq| {
            let mut row = vec![0; vars];
            for &(v, c) in eq {
                row[v] = (row[v] + c).rem_euclid(p);
            }
            row
        })
        .collect();
    let inv = |a: i64| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for col in 0..vars {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let f = inv(rows[rank][col]);
        rows[rank].iter_mut().for_each(|x| *x = *x * f % p);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - c * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    (p as u128).pow((vars - rank) as u32)
}

/// Binary bracketings of `n` leaves.
#[derive(Clone, Debug)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

pub fn shapes(n: usize) -> Vec<Shape> {
    if n == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in shapes(k) {
            for r in shapes(n - k) {
                out.push(Shape::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Where labels may sit in an enumerated tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Labels {
    /// Over every input leaf.
    Leaves,
    /// Over every node, units included.
    Everywhere,
}

/// Calls `f` on every tree of the given shape whose leaves are `atoms`
/// (`Some(slot)` or `None` for a unit) in order, with every choice of
/// labels from `0..order` at the chosen sites. Label `0` means no label.
pub fn for_each_labeled_tree(
    shape: &Shape,
    atoms: &[Option<usize>],
    colors: &[u16],
    order: usize,
    labels: Labels,
    f: &mut dyn FnMut(GTree),
) {
    fn sites(shape: &Shape, atoms: &[Option<usize>], next: &mut usize, labels: Labels) -> usize {
        match shape {
            Shape::Leaf => {
                let atom = atoms[*next];
                *next += 1;
                usize::from(labels == Labels::Everywhere || atom.is_some())
            }
            Shape::Node(l, r) => {
                let inner = sites(l, atoms, next, labels) + sites(r, atoms, next, labels);
                inner + usize::from(labels == Labels::Everywhere)
            }
        }
    }
    fn build(
        shape: &Shape,
        atoms: &[Option<usize>],
        colors: &[u16],
        labels: Labels,
        values: &[usize],
        next_atom: &mut usize,
        next_site: &mut usize,
    ) -> GTree {
        let wrap = |t: GTree, labeled: bool, next_site: &mut usize| {
            if !labeled {
                return t;
            }
            let h = values[*next_site];
            *next_site += 1;
            if h == 0 {
                t
            } else {
                GTree::label(Elem(h as u16), t)
            }
        };
        match shape {
            Shape::Leaf => {
                let atom = atoms[*next_atom];
                *next_atom += 1;
                let t = match atom {
                    Some(slot) => GTree::leaf(slot, Elem(colors[slot - 1])),
                    None => GTree::Unit,
                };
                wrap(t, labels == Labels::Everywhere || atom.is_some(), next_site)
            }
            Shape::Node(l, r) => {
                let a = build(l, atoms, colors, labels, values, next_atom, next_site);
                let b = build(r, atoms, colors, labels, values, next_atom, next_site);
                wrap(GTree::tensor(a, b), labels == Labels::Everywhere, next_site)
            }
        }
    }
    let count = sites(shape, atoms, &mut 0, labels);
    let mut values = vec![0; count];
    loop {
        f(build(shape, atoms, colors, labels, &values, &mut 0, &mut 0));
        let mut i = 0;
        loop {
            if i == count {
                return;
            }
            values[i] += 1;
            if values[i] < order {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

/// Every interleaving of the slot order `perm` (1-based slots) with
/// `units` unit leaves.
pub fn atom_sequences(perm: &[usize], units: usize) -> Vec<Vec<Option<usize>>> {
    let len = perm.len() + units;
    let mut out = Vec::new();
    for mask in 0u32..(1 << len) {
        if mask.count_ones() as usize != units {
            continue;
        }
        let mut it = perm.iter();
        out.push(
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { None } else { it.next().copied() })
                .collect(),
        );
    }
    out
}
