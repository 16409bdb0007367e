// SPDX-License-Identifier: Apache-2.0

//! Colorable homogeneous simplicial complexes.
//!
//! A [`ColoredComplex`] stores only its maximal `d`-simplices; every lower
//! simplex is a face of one of them. Qubits live on the maximal simplices
//! and are indexed in construction order. The boundary is recorded as a set
//! of boundary vertices: a simplex lies on the boundary iff all of its
//! vertices do.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::Verdict;

pub type VertexId = usize;

/// Exhaustive Disjoint-Union checking up to this many (simplex, color set) pairs.
pub const DISJOINT_UNION_EXHAUSTIVE_LIMIT: usize = 10_000;
const DISJOINT_UNION_SEED: u64 = 0x5eed_c01a;

/// A set of colors drawn from `Z_{d+1}`, as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// All `d + 1` colors.
    pub fn full(d: usize) -> Self {
        ColorSet((1u64 << (d + 1)) - 1)
    }

    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> Self {
        ColorSet(colors.into_iter().fold(0, |m, c| m | 1 << c))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, color: usize) -> bool {
        self.0 >> color & 1 == 1
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simplex given by its sorted, distinct vertex identifiers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Result<Self> {
        let mut v: Vec<_> = vertices.into_iter().collect();
        v.sort_unstable();
        if v.is_empty() {
            return Err(Error::InvalidParameters(
                "a simplex needs at least one vertex".into(),
            ));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameters(format!(
                "repeated vertex in {v:?}"
            )));
        }
        Ok(Simplex(v))
    }

    /// Builds from vertices already known to be sorted and distinct.
    fn from_sorted(v: Vec<VertexId>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| self.0.binary_search(v).is_ok())
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<_> = self.0.iter().chain(&other.0).copied().collect();
        Simplex(set.into_iter().collect())
    }

    /// All `k`-dimensional faces, in lexicographic order.
    pub fn faces(&self, k: usize) -> Result<Vec<Simplex>> {
        if k > self.dim() {
            return Err(Error::InvalidParameters(format!(
                "face dimension {k} exceeds simplex dimension {}",
                self.dim()
            )));
        }
        Ok(combinations(&self.0, k + 1)
            .into_iter()
            .map(Simplex)
            .collect())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All `size`-element subsets of `items`, lexicographic in position.
fn combinations<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if size > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let Some(pos) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sorted intersection of two sorted index lists.
fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A homogeneous simplicial `d`-complex with a vertex coloring in `Z_{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredComplex {
    d: usize,
    colors: Vec<usize>,
    boundary: Vec<bool>,
    maximal: Vec<Simplex>,
    /// vertex -> sorted indices of the maximal simplices containing it
    incidence: Vec<Vec<usize>>,
}

/// A two-coloring of the qubits (maximal simplices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    in_t: Vec<bool>,
}

impl Bipartition {
    pub fn from_mask(in_t: Vec<bool>) -> Self {
        Self { in_t }
    }

    pub fn empty_t(n: usize) -> Self {
        Self {
            in_t: vec![false; n],
        }
    }

    pub fn mask(&self) -> &[bool] {
        &self.in_t
    }

    pub fn contains(&self, qubit: usize) -> bool {
        self.in_t[qubit]
    }

    pub fn t(&self) -> Vec<usize> {
        (0..self.in_t.len()).filter(|&q| self.in_t[q]).collect()
    }

    pub fn tc(&self) -> Vec<usize> {
        (0..self.in_t.len()).filter(|&q| !self.in_t[q]).collect()
    }

    pub fn t_size(&self) -> usize {
        self.in_t.iter().filter(|&&b| b).count()
    }

    pub fn num_qubits(&self) -> usize {
        self.in_t.len()
    }

    /// Moves one qubit to the other class.
    pub fn toggled(&self, qubit: usize) -> Self {
        let mut in_t = self.in_t.clone();
        in_t[qubit] = !in_t[qubit];
        Self { in_t }
    }
}

impl ColoredComplex {
    /// Builds and validates a complex (proper coloring, facet counts, boundary consistency).
    pub fn new(
        d: usize,
        colors: Vec<usize>,
        boundary: Vec<bool>,
        maximal: Vec<Simplex>,
    ) -> Result<Self> {
        let complex = Self::new_unchecked(d, colors, boundary, maximal)?;
        let problems = complex.check_conditions();
        if let Some(first) = problems.first() {
            return Err(Error::InvalidLattice(format!(
                "{first} ({} problem(s) total)",
                problems.len()
            )));
        }
        Ok(complex)
    }

    /// Builds a complex checking only structural sanity (vertex ids in range,
    /// correct simplex dimension), so that faulty lattices can be inspected
    /// with [`ColoredComplex::verify_lattice`].
    pub fn new_unchecked(
        d: usize,
        colors: Vec<usize>,
        boundary: Vec<bool>,
        maximal: Vec<Simplex>,
    ) -> Result<Self> {
        if d == 0 || d >= 63 {
            return Err(Error::InvalidParameters(format!(
                "unsupported dimension {d}"
            )));
        }
        if colors.len() != boundary.len() {
            return Err(Error::InvalidLattice(
                "color and boundary tables differ in length".into(),
            ));
        }
        let mut incidence = vec![Vec::new(); colors.len()];
        for (q, s) in maximal.iter().enumerate() {
            if s.dim() != d {
                return Err(Error::InvalidLattice(format!(
                    "maximal simplex {s} is not {d}-dimensional"
                )));
            }
            for &v in s.vertices() {
                let slot = incidence.get_mut(v).ok_or_else(|| {
                    Error::InvalidLattice(format!("vertex {v} of {s} is undefined"))
                })?;
                slot.push(q);
            }
        }
        Ok(Self {
            d,
            colors,
            boundary,
            maximal,
            incidence,
        })
    }

    /// Lists violations of the lattice conditions; empty means valid.
    pub fn check_conditions(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let full = ColorSet::full(self.d);
        for (v, &c) in self.colors.iter().enumerate() {
            if c > self.d {
                problems.push(format!("vertex {v} has color {c} outside Z_{}", self.d + 1));
            }
            if self.incidence[v].is_empty() {
                problems.push(format!("vertex {v} lies in no maximal simplex"));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &self.maximal {
            if !seen.insert(s.clone()) {
                problems.push(format!("maximal simplex {s} listed twice"));
            }
            let vs = s.vertices();
            let mut proper = true;
            for (i, &u) in vs.iter().enumerate() {
                for &w in &vs[i + 1..] {
                    if self.colors[u] == self.colors[w] {
                        proper = false;
                        problems.push(format!(
                            "edge [{u}, {w}] of {s} joins two vertices of color {}",
                            self.colors[u]
                        ));
                    }
                }
            }
            if proper && self.color_set(s) != full {
                problems.push(format!("maximal simplex {s} does not carry all colors"));
            }
        }
        for (facet, count) in self.facet_counts() {
            let expected = if self.is_boundary(&facet) { 1 } else { 2 };
            if count != expected {
                let kind = if expected == 1 {
                    "boundary"
                } else {
                    "interior"
                };
                problems.push(format!(
                    "{kind} facet {facet} is shared by {count} maximal simplices, expected {expected}"
                ));
            }
        }
        problems
    }

    fn facet_counts(&self) -> BTreeMap<Simplex, usize> {
        let mut counts = BTreeMap::new();
        for s in &self.maximal {
            for facet in s.faces(self.d - 1).expect("d >= 1") {
                *counts.entry(facet).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    /// Number of qubits, i.e. maximal simplices.
    pub fn num_qubits(&self) -> usize {
        self.maximal.len()
    }

    pub fn maximal(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn color(&self, v: VertexId) -> usize {
        self.colors[v]
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.boundary[v]
    }

    pub fn boundary_vertices(&self) -> Vec<VertexId> {
        (0..self.colors.len())
            .filter(|&v| self.boundary[v])
            .collect()
    }

    pub fn interior_vertices(&self) -> Vec<VertexId> {
        (0..self.colors.len())
            .filter(|&v| !self.boundary[v])
            .collect()
    }

    pub fn color_set(&self, s: &Simplex) -> ColorSet {
        ColorSet::from_colors(s.vertices().iter().map(|&v| self.colors[v]))
    }

    /// True iff the simplex lies on the boundary (all vertices are boundary vertices).
    pub fn is_boundary(&self, s: &Simplex) -> bool {
        s.vertices().iter().all(|&v| self.boundary[v])
    }

    /// Qubit indices of the maximal simplices containing `s`; empty when `s`
    /// is not a simplex of the complex.
    pub fn support(&self, s: &Simplex) -> Vec<usize> {
        let mut vs = s.vertices().iter();
        let Some(&first) = vs.next() else {
            return Vec::new();
        };
        let Some(mut acc) = self.incidence.get(first).cloned() else {
            return Vec::new();
        };
        for &v in vs {
            match self.incidence.get(v) {
                Some(list) => acc = intersect_sorted(&acc, list),
                None => return Vec::new(),
            }
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Qubits on the maximal simplices containing the interior simplex `s`.
    pub fn qubits_on(&self, s: &Simplex) -> Result<Vec<usize>> {
        if self.is_boundary(s) {
            return Err(Error::NotInterior(s.to_string()));
        }
        let q = self.support(s);
        if q.is_empty() {
            return Err(Error::InvalidParameters(format!(
                "{s} is not a simplex of the lattice"
            )));
        }
        Ok(q)
    }

    /// All `k`-simplices not on the boundary, sorted.
    pub fn interior_simplices(&self, k: usize) -> Result<Vec<Simplex>> {
        if k > self.d {
            return Err(Error::InvalidParameters(format!(
                "simplex dimension {k} exceeds lattice dimension {}",
                self.d
            )));
        }
        if k == self.d {
            let mut all = self.maximal.clone();
            all.sort();
            return Ok(all);
        }
        let mut out = BTreeSet::new();
        for s in &self.maximal {
            for face in combinations(s.vertices(), k + 1) {
                let face = Simplex::from_sorted(face);
                if !self.is_boundary(&face) {
                    out.insert(face);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The smallest simplex containing both `a` and `b`, when their qubit
    /// sets intersect.
    pub fn smallest_containing_simplex(&self, a: &Simplex, b: &Simplex) -> Result<Option<Simplex>> {
        self.qubits_on(a)?;
        self.qubits_on(b)?;
        let joined = a.union(b);
        Ok((!self.support(&joined).is_empty()).then_some(joined))
    }

    /// All `(|C| - 1)`-simplices containing `s` whose colors are exactly `colors`.
    pub fn disjoint_union_decomposition(
        &self,
        s: &Simplex,
        colors: ColorSet,
    ) -> Result<Vec<Simplex>> {
        let qubits = self.qubits_on(s)?;
        let own = self.color_set(s);
        if !own.is_subset(colors) || !colors.is_subset(ColorSet::full(self.d)) {
            return Err(Error::InvalidParameters(format!(
                "color set {colors:?} must contain {own:?} and lie within Z_{}",
                self.d + 1
            )));
        }
        let mut parts = BTreeSet::new();
        for q in qubits {
            let face = self.maximal[q]
                .vertices()
                .iter()
                .copied()
                .filter(|&v| colors.contains(self.colors[v]))
                .collect();
            parts.insert(Simplex::from_sorted(face));
        }
        Ok(parts.into_iter().collect())
    }

    /// Adjacency of qubits through shared interior `(d-1)`-faces.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut by_facet: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
        for (q, s) in self.maximal.iter().enumerate() {
            for facet in s.faces(self.d - 1).expect("d >= 1") {
                if !self.is_boundary(&facet) {
                    by_facet.entry(facet).or_default().push(q);
                }
            }
        }
        let mut adj = vec![Vec::new(); self.maximal.len()];
        for qs in by_facet.values() {
            for (i, &a) in qs.iter().enumerate() {
                for &b in &qs[i + 1..] {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        adj
    }

    /// Splits the qubits into `T` and `T^c` so that adjacent qubits land in
    /// different classes.
    ///
    /// The seed assigned to `T` is the lexicographically smallest maximal
    /// simplex containing the lowest-numbered interior vertex; further
    /// components (if any) are seeded by their smallest simplex.
    pub fn bipartition_qubits(&self) -> Result<Bipartition> {
        let n = self.maximal.len();
        let adj = self.adjacency();
        let mut side: Vec<Option<bool>> = vec![None; n];

        let mut seeds: Vec<usize> = Vec::new();
        if let Some(v) = self.interior_vertices().first() {
            if let Some(&q) = self.incidence[*v].iter().min_by_key(|&&q| &self.maximal[q]) {
                seeds.push(q);
            }
        }
        let mut by_order: Vec<usize> = (0..n).collect();
        by_order.sort_by(|&a, &b| self.maximal[a].cmp(&self.maximal[b]));
        seeds.extend(by_order);

        for seed in seeds {
            if side[seed].is_some() {
                continue;
            }
            side[seed] = Some(true);
            let mut queue = VecDeque::from([seed]);
            while let Some(q) = queue.pop_front() {
                let here = side[q].expect("queued qubits are colored");
                for &r in &adj[q] {
                    match side[r] {
                        None => {
                            side[r] = Some(!here);
                            queue.push_back(r);
                        }
                        Some(s) if s == here => {
                            return Err(Error::NotBipartite(format!(
                                "{} and {} share a facet and have the same class",
                                self.maximal[q], self.maximal[r]
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Bipartition {
            in_t: side
                .into_iter()
                .map(|s| s.expect("every qubit visited"))
                .collect(),
        })
    }

    /// Runs the lattice condition check and the Even Support, Intersection,
    /// Disjoint Union and color-class disjointness checks.
    pub fn verify_lattice(&self) -> Vec<Verdict> {
        let label = format!("lattice(d={}, qubits={})", self.d, self.maximal.len());
        let params =
            json!({ "d": self.d, "qubits": self.maximal.len(), "vertices": self.colors.len() });

        let mut conditions = Verdict::new("lattice_conditions", &label, params.clone());
        for p in self.check_conditions() {
            conditions.fail(p);
        }
        if !conditions.pass {
            // Face-level checks assume a proper coloring; skip them.
            return vec![conditions];
        }

        let interior: Vec<Simplex> = (0..self.d)
            .flat_map(|k| self.interior_simplices(k).expect("k < d"))
            .collect();
        let supports: Vec<Vec<usize>> = interior.iter().map(|s| self.support(s)).collect();

        let mut even = Verdict::new("even_support", &label, params.clone());
        for (s, q) in interior.iter().zip(&supports) {
            even.bump(format!("dim{}", s.dim()));
            if q.len() % 2 != 0 {
                even.fail(format!("|Q({s})| = {} is odd", q.len()));
            }
        }

        let mut intersection = Verdict::new("intersection", &label, params.clone());
        for i in 0..interior.len() {
            for j in i..interior.len() {
                intersection.bump("pairs");
                let (a, b) = (&interior[i], &interior[j]);
                let common = intersect_sorted(&supports[i], &supports[j]);
                let tau = self
                    .smallest_containing_simplex(a, b)
                    .expect("interior simplices are valid");
                match tau {
                    None if common.is_empty() => {}
                    None => intersection.fail(format!(
                        "{a} and {b} share qubits but no containing simplex"
                    )),
                    Some(tau) => {
                        let colors_ok = self.color_set(&tau)
                            == self.color_set(a).union(self.color_set(b))
                            && self.color_set(&tau).len() == tau.vertices().len();
                        if self.support(&tau) != common || !colors_ok {
                            intersection.fail(format!("Q({a}) ∩ Q({b}) differs from Q({tau})"));
                        }
                    }
                }
            }
        }

        let mut disjoint = Verdict::new("disjoint_union", &label, params.clone());
        let full = ColorSet::full(self.d);
        let mut pairs: Vec<(usize, ColorSet)> = Vec::new();
        for (i, s) in interior.iter().enumerate() {
            let free = full.difference(self.color_set(s));
            // every superset of color(s) within Z_{d+1}
            let mut sub = free.bits();
            loop {
                pairs.push((i, self.color_set(s).union(ColorSet(sub))));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free.bits();
            }
        }
        let total = pairs.len();
        let chosen: Vec<(usize, ColorSet)> = if total <= DISJOINT_UNION_EXHAUSTIVE_LIMIT {
            pairs
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DISJOINT_UNION_SEED);
            let mut idx = sample(&mut rng, total, DISJOINT_UNION_EXHAUSTIVE_LIMIT).into_vec();
            idx.sort_unstable();
            disjoint.note(format!("sampled {} of {total} pairs", idx.len()));
            idx.into_iter().map(|k| pairs[k]).collect()
        };
        for (i, colors) in chosen {
            disjoint.bump("pairs");
            let s = &interior[i];
            let parts = self
                .disjoint_union_decomposition(s, colors)
                .expect("pairs are built to satisfy the preconditions");
            let mut covered = Vec::new();
            for p in &parts {
                if self.color_set(p) != colors || !p.contains(s) {
                    disjoint.fail(format!("part {p} of {s} has the wrong colors"));
                }
                covered.extend(self.support(p));
            }
            covered.sort_unstable();
            let before = covered.len();
            covered.dedup();
            if before != covered.len() {
                disjoint.fail(format!("parts of {s} for colors {colors:?} overlap"));
            }
            if covered != supports[i] {
                disjoint.fail(format!(
                    "parts of {s} for colors {colors:?} do not cover Q({s})"
                ));
            }
        }

        let mut color_classes = Verdict::new("same_color_disjoint", &label, params);
        let mut by_colors: HashMap<ColorSet, Vec<usize>> = HashMap::new();
        for (i, s) in interior.iter().enumerate() {
            by_colors.entry(self.color_set(s)).or_default().push(i);
        }
        let mut classes: Vec<_> = by_colors.into_iter().collect();
        classes.sort_by_key(|(c, _)| *c);
        for (_, members) in classes {
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    color_classes.bump("pairs");
                    if !intersect_sorted(&supports[i], &supports[j]).is_empty() {
                        color_classes.fail(format!(
                            "{} and {} have the same colors and share a qubit",
                            interior[i], interior[j]
                        ));
                    }
                }
            }
        }

        vec![conditions, even, intersection, disjoint, color_classes]
    }

    /// Checks that `partition` separates every pair of adjacent qubits
    /// (exactly one of the two qubits on each interior facet is in `T`).
    pub fn verify_bipartition(&self, partition: &Bipartition) -> Verdict {
        let mut v = Verdict::new(
            "bipartition",
            format!("lattice(d={}, qubits={})", self.d, self.maximal.len()),
            json!({ "t_size": partition.t_size(), "qubits": partition.num_qubits() }),
        );
        if partition.num_qubits() != self.maximal.len() {
            v.fail("partition size differs from qubit count");
            return v;
        }
        for facet in self.interior_simplices(self.d - 1).expect("d >= 1") {
            v.bump("facets");
            let q = self.support(&facet);
            let in_t = q.iter().filter(|&&i| partition.contains(i)).count();
            if q.len() != 2 || in_t != 1 {
                v.fail(format!("facet {facet}: {in_t} of {} qubits in T", q.len()));
            }
        }
        v
    }

    // ---- construction ----

    /// A single colored `d`-simplex whose vertices are all boundary vertices.
    pub fn simplex(d: usize) -> Result<Self> {
        Self::new(
            d,
            (0..=d).collect(),
            vec![true; d + 1],
            vec![Simplex::from_sorted((0..=d).collect())],
        )
    }

    /// Places `inner` inside a fresh outer simplex `τ` and fills the gap.
    ///
    /// For every proper face `ρ` of `τ` and every boundary face `ω` of
    /// `inner` carrying the complementary colors, the simplex `ρ ∪ ω` is
    /// added. The vertices of `τ` become the new boundary; all vertices of
    /// `inner` become interior.
    pub fn enclose(inner: &ColoredComplex) -> Result<Self> {
        let d = inner.d;
        let base = inner.num_vertices();
        let outer: Vec<VertexId> = (base..=base + d).collect();
        let mut colors = inner.colors.clone();
        colors.extend(0..=d);
        let mut boundary = vec![false; base];
        boundary.extend(std::iter::repeat_n(true, d + 1));

        // boundary faces of `inner`, grouped by color set
        let mut rim: BTreeMap<ColorSet, BTreeSet<Simplex>> = BTreeMap::new();
        for s in &inner.maximal {
            let on_rim: Vec<VertexId> = s
                .vertices()
                .iter()
                .copied()
                .filter(|&v| inner.boundary[v])
                .collect();
            for size in 1..=on_rim.len().min(d) {
                for face in combinations(&on_rim, size) {
                    let face = Simplex::from_sorted(face);
                    rim.entry(inner.color_set(&face)).or_default().insert(face);
                }
            }
        }

        let mut maximal = inner.maximal.clone();
        let full = ColorSet::full(d);
        for size in 1..=d {
            for rho in combinations(&outer, size) {
                let rho_colors = ColorSet::from_colors(rho.iter().map(|&v| colors[v]));
                let Some(omegas) = rim.get(&full.difference(rho_colors)) else {
                    continue;
                };
                for omega in omegas {
                    let mut vs = omega.vertices().to_vec();
                    vs.extend(&rho);
                    maximal.push(Simplex::from_sorted(vs));
                }
            }
        }
        Self::new(d, colors, boundary, maximal)
    }

    /// Level `level` of the fractal family in dimension `d`: level 1 encloses
    /// a single simplex, each further level encloses the previous one.
    pub fn build_fractal(d: usize, level: usize) -> Result<Self> {
        if d < 2 || level < 1 {
            return Err(Error::InvalidParameters(format!(
                "fractal lattice needs d >= 2 and level >= 1, got d={d}, level={level}"
            )));
        }
        let mut complex = Self::simplex(d)?;
        for _ in 0..level {
            complex = Self::enclose(&complex)?;
        }
        Ok(complex)
    }

    // ---- JSON ----

    pub fn to_json(&self) -> String {
        let doc = LatticeJson {
            d: self.d,
            vertices: (0..self.colors.len())
                .map(|id| VertexJson {
                    id,
                    color: self.colors[id],
                    boundary: self.boundary[id],
                })
                .collect(),
            maximal: self.maximal.iter().map(|s| s.vertices().to_vec()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("lattice serializes")
    }

    /// Parses and validates a lattice document.
    pub fn from_json(text: &str) -> Result<Self> {
        let (d, colors, boundary, maximal) = parse_lattice_json(text)?;
        Self::new(d, colors, boundary, maximal)
    }

    /// Parses a lattice document without validating the lattice conditions.
    pub fn from_json_unchecked(text: &str) -> Result<Self> {
        let (d, colors, boundary, maximal) = parse_lattice_json(text)?;
        Self::new_unchecked(d, colors, boundary, maximal)
    }
}

type LatticeParts = (usize, Vec<usize>, Vec<bool>, Vec<Simplex>);

fn parse_lattice_json(text: &str) -> Result<LatticeParts> {
    let doc: LatticeJson = serde_json::from_str(text)?;
    let n = doc.vertices.len();
    let mut colors = vec![usize::MAX; n];
    let mut boundary = vec![false; n];
    for v in &doc.vertices {
        if v.id >= n || colors[v.id] != usize::MAX {
            return Err(Error::Parse(format!(
                "vertex ids must be 0..{n} without repeats (got {})",
                v.id
            )));
        }
        colors[v.id] = v.color;
        boundary[v.id] = v.boundary;
    }
    let maximal = doc
        .maximal
        .into_iter()
        .map(Simplex::new)
        .collect::<Result<Vec<_>>>()?;
    Ok((doc.d, colors, boundary, maximal))
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    color: usize,
    boundary: bool,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    d: usize,
    vertices: Vec<VertexJson>,
    maximal: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn face_counts() {
        let tet = Simplex::new([0, 1, 2, 3]).unwrap();
        assert_eq!(tet.faces(2).unwrap().len(), 4);
        assert_eq!(tet.faces(1).unwrap().len(), 6);
        assert_eq!(tet.faces(3).unwrap(), vec![tet.clone()]);
        assert!(tet.faces(4).is_err());
        for k in 0..=3 {
            assert_eq!(tet.faces(k).unwrap().len(), binomial(4, k + 1));
        }
    }

    #[test]
    fn simplex_rejects_repeats() {
        assert!(Simplex::new([1, 1, 2]).is_err());
        assert_eq!(Simplex::new([3, 1, 2]).unwrap().vertices(), &[1, 2, 3]);
    }

    #[test]
    fn fractal_sizes_in_two_dimensions() {
        let sizes: Vec<usize> = (1..=3)
            .map(|level| {
                ColoredComplex::build_fractal(2, level)
                    .unwrap()
                    .num_qubits()
            })
            .collect();
        assert_eq!(sizes, vec![7, 13, 19]);
    }

    #[test]
    fn level_one_counts() {
        for d in 2..=5 {
            let l = ColoredComplex::build_fractal(d, 1).unwrap();
            assert_eq!(l.num_qubits(), (1 << (d + 1)) - 1);
            assert_eq!(l.interior_vertices().len(), d + 1);
            assert_eq!(l.interior_simplices(0).unwrap().len(), d + 1);
            assert_eq!(l.interior_simplices(d).unwrap().len(), l.num_qubits());
        }
    }

    #[test]
    fn outer_simplex_vertices_come_last() {
        let l = ColoredComplex::build_fractal(3, 2).unwrap();
        let n = l.num_vertices();
        assert_eq!(l.boundary_vertices(), (n - 4..n).collect::<Vec<_>>());
        for (c, v) in (n - 4..n).enumerate() {
            assert_eq!(l.color(v), c);
        }
    }

    #[test]
    fn qubits_on_examples() {
        let l = ColoredComplex::build_fractal(2, 1).unwrap();
        let s = l.maximal()[3].clone();
        assert_eq!(l.qubits_on(&s).unwrap(), vec![3]);
        for v in l.interior_vertices() {
            let q = l.qubits_on(&Simplex::new([v]).unwrap()).unwrap();
            assert_eq!(q.len() % 2, 0);
        }
        let outer = Simplex::new([l.boundary_vertices()[0]]).unwrap();
        assert!(matches!(l.qubits_on(&outer), Err(Error::NotInterior(_))));

        let l3 = ColoredComplex::build_fractal(3, 1).unwrap();
        for facet in l3.interior_simplices(2).unwrap() {
            assert_eq!(l3.qubits_on(&facet).unwrap().len(), 2);
        }
    }

    #[test]
    fn interior_counts_for_d3_level1() {
        let l = ColoredComplex::build_fractal(3, 1).unwrap();
        // edges of the inner simplex plus inner-outer edges of different colors
        assert_eq!(l.interior_simplices(1).unwrap().len(), 6 + 4 * 3);
    }

    #[test]
    fn smallest_containing_simplex_examples() {
        let l = ColoredComplex::build_fractal(2, 2).unwrap();
        let a = Simplex::new([0]).unwrap();
        assert_eq!(
            l.smallest_containing_simplex(&a, &a).unwrap(),
            Some(a.clone())
        );
        let b = Simplex::new([1]).unwrap();
        let edge = l.smallest_containing_simplex(&a, &b).unwrap().unwrap();
        assert_eq!(edge, Simplex::new([0, 1]).unwrap());
        let qa = l.qubits_on(&a).unwrap();
        let qb = l.qubits_on(&b).unwrap();
        assert_eq!(intersect_sorted(&qa, &qb), l.qubits_on(&edge).unwrap());

        // two inner vertices of the same color never share a qubit
        let same: Vec<_> = l
            .interior_vertices()
            .into_iter()
            .filter(|&v| l.color(v) == 0)
            .collect();
        assert!(same.len() >= 2);
        let (x, y) = (
            Simplex::new([same[0]]).unwrap(),
            Simplex::new([same[1]]).unwrap(),
        );
        assert_eq!(l.smallest_containing_simplex(&x, &y).unwrap(), None);
    }

    #[test]
    fn disjoint_union_examples() {
        let l = ColoredComplex::build_fractal(2, 2).unwrap();
        let s = Simplex::new([0]).unwrap();
        let own = l.color_set(&s);
        assert_eq!(
            l.disjoint_union_decomposition(&s, own).unwrap(),
            vec![s.clone()]
        );

        let q = l.qubits_on(&s).unwrap();
        let full = l
            .disjoint_union_decomposition(&s, ColorSet::full(2))
            .unwrap();
        assert_eq!(full.len(), q.len());

        let two = own.union(ColorSet::from_colors([1]));
        let edges = l.disjoint_union_decomposition(&s, two).unwrap();
        let mut covered: Vec<usize> = edges.iter().flat_map(|e| l.qubits_on(e).unwrap()).collect();
        covered.sort_unstable();
        assert_eq!(covered, q);

        assert!(l
            .disjoint_union_decomposition(&s, ColorSet::from_colors([1]))
            .is_err());
    }

    #[test]
    fn bipartition_examples() {
        let l = ColoredComplex::build_fractal(2, 1).unwrap();
        let p = l.bipartition_qubits().unwrap();
        assert_eq!((p.t_size(), p.num_qubits() - p.t_size()), (4, 3));
        assert!(p.contains(0), "the inner simplex seeds T");
        assert!(l.verify_bipartition(&p).pass);

        let single = ColoredComplex::simplex(3).unwrap();
        let p = single.bipartition_qubits().unwrap();
        assert_eq!(p.t(), vec![0]);
        assert!(p.tc().is_empty());

        for (d, level) in [(2, 2), (2, 3), (3, 1), (3, 2), (4, 1)] {
            let l = ColoredComplex::build_fractal(d, level).unwrap();
            let p = l.bipartition_qubits().unwrap();
            assert_eq!(p.num_qubits() % 2, 1);
            assert!(l.verify_bipartition(&p).pass, "d={d} level={level}");
            assert!(!l.verify_bipartition(&p.toggled(0)).pass);
        }
    }

    #[test]
    fn lattice_checks_pass_on_fractals() {
        for (d, level) in [(2, 3), (3, 1)] {
            let l = ColoredComplex::build_fractal(d, level).unwrap();
            for v in l.verify_lattice() {
                assert!(v.pass, "{}", v.summary());
            }
        }
    }

    #[test]
    fn miscoloring_is_reported() {
        let l = ColoredComplex::build_fractal(2, 1).unwrap();
        let mut colors: Vec<usize> = (0..l.num_vertices()).map(|v| l.color(v)).collect();
        colors[0] = colors[1];
        let bad = ColoredComplex::new_unchecked(
            2,
            colors.clone(),
            (0..l.num_vertices())
                .map(|v| l.is_boundary_vertex(v))
                .collect(),
            l.maximal().to_vec(),
        )
        .unwrap();
        let report = bad.verify_lattice();
        assert!(!report[0].pass);
        assert!(report[0].witnesses[0].contains("joins two vertices"));
        assert!(ColoredComplex::new(2, colors, vec![false; 6], l.maximal().to_vec()).is_err());
    }

    #[test]
    fn json_roundtrip_is_byte_stable() {
        let l = ColoredComplex::build_fractal(3, 2).unwrap();
        let text = l.to_json();
        let back = ColoredComplex::from_json(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_import_validates() {
        let text = r#"{"d":2,"vertices":[{"id":0,"color":0,"boundary":true},
            {"id":1,"color":1,"boundary":true},{"id":2,"color":1,"boundary":true}],
            "maximal":[[0,1,2]]}"#;
        assert!(matches!(
            ColoredComplex::from_json(text),
            Err(Error::InvalidLattice(_))
        ));
        assert!(ColoredComplex::from_json_unchecked(text).is_ok());
        let dup = r#"{"d":2,"vertices":[{"id":0,"color":0,"boundary":true},
            {"id":0,"color":1,"boundary":true}],"maximal":[]}"#;
        assert!(matches!(
            ColoredComplex::from_json(dup),
            Err(Error::Parse(_))
        ));
    }
}
