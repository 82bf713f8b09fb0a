//! Finite abstract simplicial complexes and their mod-2 cohomology.
//!
//! Relative cochains of a pair `(A, B)` are cochains vanishing on `B`; their
//! basis is the simplices of `A ∖ B` in canonical order. Internally every
//! cochain is a [`BitRow`] indexed by the simplices of the *ambient* complex,
//! which makes extension by zero, restriction and direct sums free.

use std::collections::HashMap;

use thiserror::Error;

use crate::gf2::{BitRow, EchelonBasis, Gf2Error, Gf2Matrix};

pub type Vertex = u32;

/// Strictly increasing vertex tuple.
pub type Simplex = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("malformed simplex {0:?}: vertices must be distinct")]
    MalformedSimplex(Vec<Vertex>),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("{0:?} is not a simplex of the parent complex")]
    NotASimplexOfParent(Vec<Vertex>),
    #[error("subcomplexes are not nested as required")]
    NotNested,
    #[error("({0}) is not an inclusion of pairs")]
    NotAPairInclusion(String),
    #[error("cochain of degree {0} is not a relative cocycle")]
    NotACocycle(usize),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Index of a simplex inside a complex: `(dimension, position)`.
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    /// `facets[k][i]` lists the positions in dimension `k-1` of the facets of
    /// simplex `i` of dimension `k`, ordered by the removed vertex.
    facets: Vec<Vec<Vec<usize>>>,
}

fn canonical(simplex: &[Vertex]) -> Result<Simplex, ComplexError> {
    if simplex.is_empty() {
        return Err(ComplexError::EmptySimplex);
    }
    let mut s = simplex.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(ComplexError::MalformedSimplex(simplex.to_vec()));
    }
    Ok(s)
}

impl SimplicialComplex {
    /// Closure of the given simplices under taking faces.
    pub fn build<S: AsRef<[Vertex]>>(maximal: &[S]) -> Result<Self, ComplexError> {
        let mut by_dim: Vec<std::collections::BTreeSet<Simplex>> = Vec::new();
        for s in maximal {
            let s = canonical(s.as_ref())?;
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Default::default);
            }
            if by_dim[d].contains(&s) {
                continue;
            }
            // every non-empty subset of the vertex set
            let n = s.len();
            assert!(n <= 20, "simplex of dimension {} is too large", n - 1);
            for mask in 1u32..(1 << n) {
                let face: Simplex = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|d| d.into_iter().collect()).collect();
        Ok(Self::from_sorted(simplices))
    }

    fn from_sorted(simplices: Vec<Vec<Simplex>>) -> Self {
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let facets = simplices
            .iter()
            .enumerate()
            .map(|(k, list)| {
                if k == 0 {
                    return vec![Vec::new(); list.len()];
                }
                list.iter()
                    .map(|s| {
                        (0..s.len())
                            .map(|skip| {
                                let f: Simplex = s
                                    .iter()
                                    .enumerate()
                                    .filter(|&(j, _)| j != skip)
                                    .map(|(_, &v)| v)
                                    .collect();
                                index[k - 1][&f]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SimplicialComplex {
            simplices,
            index,
            facets,
        }
    }

    /// Materializes a subcomplex as a complex of its own, keeping vertex ids.
    pub fn from_subcomplex(parent: &SimplicialComplex, sub: &Subcomplex) -> SimplicialComplex {
        let mut simplices: Vec<Vec<Simplex>> = (0..parent.num_dims())
            .map(|k| {
                parent.simplices[k]
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| sub.contains((k, i)))
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect();
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        Self::from_sorted(simplices)
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of stored dimensions (`dim + 1`, or 0 when empty).
    pub fn num_dims(&self) -> usize {
        self.simplices.len()
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, cell: Cell) -> &Simplex {
        &self.simplices[cell.0][cell.1]
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.simplices
            .iter()
            .enumerate()
            .flat_map(|(k, l)| (0..l.len()).map(move |i| (k, i)))
    }

    pub fn find(&self, simplex: &[Vertex]) -> Option<Cell> {
        let s = canonical(simplex).ok()?;
        let k = s.len() - 1;
        self.index.get(k)?.get(&s).map(|&i| (k, i))
    }

    /// Positions of the facets of `cell` one dimension down.
    pub fn facets_of(&self, cell: Cell) -> &[usize] {
        &self.facets[cell.0][cell.1]
    }

    /// Simplices not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut has_coface: Vec<Vec<bool>> =
            self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for k in 1..self.num_dims() {
            for i in 0..self.count(k) {
                for &f in &self.facets[k][i] {
                    has_coface[k - 1][f] = true;
                }
            }
        }
        self.cells()
            .filter(|&(k, i)| !has_coface[k][i])
            .map(|c| self.simplex(c).clone())
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }
}

/// Face-closed set of simplices of a parent complex, stored as per-dimension flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subcomplex {
    members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(parent: &SimplicialComplex) -> Self {
        Subcomplex {
            members: parent.simplices.iter().map(|l| vec![false; l.len()]).collect(),
        }
    }

    pub fn full(parent: &SimplicialComplex) -> Self {
        Subcomplex {
            members: parent.simplices.iter().map(|l| vec![true; l.len()]).collect(),
        }
    }

    /// Face-closure of `generators` inside `parent`.
    pub fn generated<S: AsRef<[Vertex]>>(
        parent: &SimplicialComplex,
        generators: &[S],
    ) -> Result<Self, ComplexError> {
        let cells = generators
            .iter()
            .map(|g| {
                parent
                    .find(g.as_ref())
                    .ok_or_else(|| ComplexError::NotASimplexOfParent(g.as_ref().to_vec()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::closure_of(parent, cells))
    }

    /// Face-closure of a set of cells.
    pub fn closure_of<I: IntoIterator<Item = Cell>>(parent: &SimplicialComplex, cells: I) -> Self {
        let mut sub = Subcomplex::empty(parent);
        let mut stack: Vec<Cell> = cells.into_iter().collect();
        while let Some((k, i)) = stack.pop() {
            if sub.members[k][i] {
                continue;
            }
            sub.members[k][i] = true;
            if k > 0 {
                stack.extend(parent.facets_of((k, i)).iter().map(|&f| (k - 1, f)));
            }
        }
        sub
    }

    #[inline]
    pub fn contains(&self, cell: Cell) -> bool {
        self.members.get(cell.0).is_some_and(|m| m[cell.1])
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.members.iter().enumerate().flat_map(|(k, m)| {
            m.iter()
                .enumerate()
                .filter(|&(_, &b)| b)
                .map(move |(i, _)| (k, i))
        })
    }

    pub fn count(&self, k: usize) -> usize {
        self.members.get(k).map_or(0, |m| m.iter().filter(|&&b| b).count())
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.members.len()).map(|k| self.count(k)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|m| !m.iter().any(|&b| b))
    }

    pub fn dim(&self) -> Option<usize> {
        (0..self.members.len()).rev().find(|&k| self.count(k) > 0)
    }

    pub fn is_subset(&self, other: &Subcomplex) -> bool {
        self.cells().all(|c| other.contains(c))
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x || y).collect())
                .collect(),
        }
    }

    pub fn insert(&mut self, cell: Cell) {
        self.members[cell.0][cell.1] = true;
    }

    pub fn is_closed(&self, parent: &SimplicialComplex) -> bool {
        self.cells()
            .all(|c| c.0 == 0 || parent.facets_of(c).iter().all(|&f| self.contains((c.0 - 1, f))))
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.members.len())
            .map(|k| if k % 2 == 0 { self.count(k) as i64 } else { -(self.count(k) as i64) })
            .sum()
    }

    fn shape_matches(&self, parent: &SimplicialComplex) -> bool {
        self.members.len() == parent.num_dims()
            && self.members.iter().enumerate().all(|(k, m)| m.len() == parent.count(k))
    }
}

pub fn build_complex<S: AsRef<[Vertex]>>(maximal: &[S]) -> Result<SimplicialComplex, ComplexError> {
    SimplicialComplex::build(maximal)
}

pub fn subcomplex<S: AsRef<[Vertex]>>(
    parent: &SimplicialComplex,
    generators: &[S],
) -> Result<Subcomplex, ComplexError> {
    Subcomplex::generated(parent, generators)
}

/// Ambient positions of the `k`-simplices in `top ∖ bottom`.
pub fn relative_cells(
    ambient: &SimplicialComplex,
    top: &Subcomplex,
    bottom: &Subcomplex,
    k: usize,
) -> Vec<usize> {
    (0..ambient.count(k))
        .filter(|&i| top.contains((k, i)) && !bottom.contains((k, i)))
        .collect()
}

/// Coboundary `C^k(top, bottom) → C^{k+1}(top, bottom)` in the relative bases.
pub fn pair_coboundary(
    ambient: &SimplicialComplex,
    top: &Subcomplex,
    bottom: &Subcomplex,
    k: usize,
) -> Gf2Matrix {
    let src = relative_cells(ambient, top, bottom, k);
    let dst = relative_cells(ambient, top, bottom, k + 1);
    let mut col_of = vec![usize::MAX; ambient.count(k)];
    for (j, &i) in src.iter().enumerate() {
        col_of[i] = j;
    }
    let mut m = Gf2Matrix::zeros(dst.len(), src.len());
    for (r, &s) in dst.iter().enumerate() {
        for &f in ambient.facets_of((k + 1, s)) {
            if col_of[f] != usize::MAX {
                m.set(r, col_of[f], true);
            }
        }
    }
    m
}

/// Matrix of the mod-2 coboundary on relative cochains of `(complex, sub)`.
pub fn coboundary_matrix(complex: &SimplicialComplex, sub: &Subcomplex, k: usize) -> Gf2Matrix {
    pair_coboundary(complex, &Subcomplex::full(complex), sub, k)
}

/// A basis of `H^k(top, bottom)`: cocycle representatives indexed by ambient
/// simplices, plus a solver that writes any relative cocycle in that basis.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    reps: Vec<BitRow>,
    solver: EchelonBasis,
}

impl CohomologyBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[BitRow] {
        &self.reps
    }

    /// Coordinates of a cocycle's class, or `None` if it is not a cocycle of the pair.
    pub fn coordinates(&self, cocycle: &BitRow) -> Option<BitRow> {
        self.solver.solve(cocycle)
    }

    /// Direct sum of bases for pairs whose relative cells are disjoint and
    /// whose coboundaries do not interact.
    pub fn direct_sum(degree: usize, width: usize, parts: &[&CohomologyBasis]) -> CohomologyBasis {
        let reps = parts.iter().flat_map(|p| p.reps.iter().cloned()).collect();
        let solvers: Vec<&EchelonBasis> = parts.iter().map(|p| &p.solver).collect();
        CohomologyBasis {
            degree,
            reps,
            solver: EchelonBasis::direct_sum(width, &solvers),
        }
    }

    /// Same classes with different representatives. Each new representative
    /// must be cohomologous to the old one in the same slot.
    pub fn with_representatives(&self, reps: Vec<BitRow>) -> Result<CohomologyBasis, ComplexError> {
        if reps.len() != self.reps.len() {
            return Err(ComplexError::NotACocycle(self.degree));
        }
        for (j, r) in reps.iter().enumerate() {
            let c = self.coordinates(r).ok_or(ComplexError::NotACocycle(self.degree))?;
            if c.ones().collect::<Vec<_>>() != vec![j] {
                return Err(ComplexError::NotACocycle(self.degree));
            }
        }
        Ok(CohomologyBasis {
            degree: self.degree,
            reps,
            solver: self.solver.clone(),
        })
    }
}

fn expand(rel: &BitRow, cells: &[usize], width: usize) -> BitRow {
    let mut out = BitRow::zeros(width);
    for j in rel.ones() {
        out.set(cells[j], true);
    }
    out
}

/// `H^k(top, bottom)` with representatives, for `bottom ⊆ top ⊆ ambient`.
pub fn pair_cohomology_degree(
    ambient: &SimplicialComplex,
    top: &Subcomplex,
    bottom: &Subcomplex,
    k: usize,
) -> CohomologyBasis {
    let width = ambient.count(k);
    let cells = relative_cells(ambient, top, bottom, k);
    let cocycles = pair_coboundary(ambient, top, bottom, k).kernel_basis();

    // Image of the previous coboundary: one vector per (k-1)-cell, listing its cofaces.
    let mut image: Vec<BitRow> = Vec::new();
    if k > 0 {
        let prev = relative_cells(ambient, top, bottom, k - 1);
        let mut slot = vec![usize::MAX; ambient.count(k - 1)];
        for (j, &i) in prev.iter().enumerate() {
            slot[i] = j;
        }
        image = vec![BitRow::zeros(width); prev.len()];
        for &s in &cells {
            for &f in ambient.facets_of((k, s)) {
                if slot[f] != usize::MAX {
                    image[slot[f]].flip(s);
                }
            }
        }
    }
    let mut probe = EchelonBasis::new(width, 0);
    for row in &image {
        probe.insert(row, BitRow::zeros(0));
    }
    // Greedy extension of the coboundaries to a basis of the cocycles.
    let mut reps = Vec::new();
    for z in cocycles.row_iter() {
        let z = expand(z, &cells, width);
        if probe.insert(&z, BitRow::zeros(0)) {
            reps.push(z);
        }
    }
    let r = reps.len();
    let mut solver = EchelonBasis::new(width, r);
    for row in &image {
        solver.insert(row, BitRow::zeros(r));
    }
    for (j, z) in reps.iter().enumerate() {
        let inserted = solver.insert(z, BitRow::from_positions(r, &[j]));
        debug_assert!(inserted);
    }
    CohomologyBasis {
        degree: k,
        reps,
        solver,
    }
}

/// All degrees `0 ≤ k ≤ dim + 1` of `H^*(top, bottom)`.
pub fn pair_cohomology(
    ambient: &SimplicialComplex,
    top: &Subcomplex,
    bottom: &Subcomplex,
) -> Vec<CohomologyBasis> {
    (0..=ambient.num_dims())
        .map(|k| pair_cohomology_degree(ambient, top, bottom, k))
        .collect()
}

/// Cohomology classes of one degree, as rows in the relative cochain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyVector {
    pub degree: usize,
    pub classes: Gf2Matrix,
}

impl CohomologyVector {
    pub fn dim(&self) -> usize {
        self.classes.rows()
    }
}

/// `H^*(complex, sub; F₂)` in degrees `0..=dim+1`.
pub fn relative_cohomology(complex: &SimplicialComplex, sub: &Subcomplex) -> Vec<CohomologyVector> {
    let full = Subcomplex::full(complex);
    pair_cohomology(complex, &full, sub)
        .into_iter()
        .map(|b| {
            let cells = relative_cells(complex, &full, sub, b.degree);
            let rows = b.reps.iter().map(|r| r.select(&cells)).collect();
            CohomologyVector {
                degree: b.degree,
                classes: Gf2Matrix::from_bit_rows(cells.len(), rows).expect("uniform widths"),
            }
        })
        .collect()
}

pub fn cohomology_dims(bases: &[CohomologyBasis]) -> Vec<usize> {
    let mut d: Vec<usize> = bases.iter().map(CohomologyBasis::dim).collect();
    while d.last() == Some(&0) {
        d.pop();
    }
    d
}

/// Coboundary in `ambient` of a `k`-cochain, read off on the `(k+1)`-cells of `top ∖ bottom`.
fn coboundary_on(
    ambient: &SimplicialComplex,
    cochain: &BitRow,
    k: usize,
    top: &Subcomplex,
    bottom: &Subcomplex,
) -> BitRow {
    let mut out = BitRow::zeros(ambient.count(k + 1));
    for s in 0..ambient.count(k + 1) {
        if !top.contains((k + 1, s)) || bottom.contains((k + 1, s)) {
            continue;
        }
        let parity = ambient
            .facets_of((k + 1, s))
            .iter()
            .filter(|&&f| cochain.get(f))
            .count()
            % 2;
        if parity == 1 {
            out.set(s, true);
        }
    }
    out
}

/// Connecting map `H^k(mid, bottom) → H^{k+1}(top, mid)` of the triple
/// `bottom ⊆ mid ⊆ top`, written in the given bases (target rows, source columns).
///
/// Each source representative is extended by zero, pushed through the
/// coboundary of `top`, and the resulting relative cocycle of `(top, mid)`
/// is expressed in the target basis.
pub fn connecting_map(
    ambient: &SimplicialComplex,
    top: &Subcomplex,
    mid: &Subcomplex,
    source: &CohomologyBasis,
    target: &CohomologyBasis,
) -> Result<Gf2Matrix, ComplexError> {
    let k = source.degree;
    let mut columns = Vec::with_capacity(source.dim());
    for z in &source.reps {
        let w = coboundary_on(ambient, z, k, top, mid);
        columns.push(target.coordinates(&w).ok_or(ComplexError::NotACocycle(k + 1))?);
    }
    Ok(Gf2Matrix::from_bit_rows(target.dim(), columns)?.transpose())
}

fn check_nested(a: &Subcomplex, b: &Subcomplex) -> Result<(), ComplexError> {
    if a.is_subset(b) {
        Ok(())
    } else {
        Err(ComplexError::NotNested)
    }
}

/// Connecting homomorphism `H^k(B, C) → H^{k+1}(A, B)` for `C ⊆ B ⊆ A`.
pub fn connecting_matrix(
    a: &SimplicialComplex,
    b: &Subcomplex,
    c: &Subcomplex,
    k: usize,
) -> Result<Gf2Matrix, ComplexError> {
    if !b.shape_matches(a) || !c.shape_matches(a) {
        return Err(ComplexError::NotNested);
    }
    check_nested(c, b)?;
    let full = Subcomplex::full(a);
    let source = pair_cohomology_degree(a, b, c, k);
    let target = pair_cohomology_degree(a, &full, b, k + 1);
    connecting_map(a, &full, b, &source, &target)
}

/// Map `H^k(top, bottom) → H^k(top', bottom')` induced by restricting cochains,
/// for an inclusion of pairs `(top', bottom') ⊆ (top, bottom)`.
pub fn pair_restriction(
    ambient: &SimplicialComplex,
    source: &CohomologyBasis,
    top2: &Subcomplex,
    bottom2: &Subcomplex,
    target: &CohomologyBasis,
) -> Result<Gf2Matrix, ComplexError> {
    let k = source.degree;
    let cells = relative_cells(ambient, top2, bottom2, k);
    let mask = BitRow::from_positions(ambient.count(k), &cells);
    let mut columns = Vec::with_capacity(source.dim());
    for z in &source.reps {
        let mut r = z.clone();
        r.and_assign(&mask);
        columns.push(target.coordinates(&r).ok_or(ComplexError::NotACocycle(k))?);
    }
    Ok(Gf2Matrix::from_bit_rows(target.dim(), columns)?.transpose())
}

/// `H^k(K, L) → H^k(K', L')` induced by the inclusion `(K', L') ⊆ (K, L)`.
pub fn restriction_matrix(
    complex: &SimplicialComplex,
    l: &Subcomplex,
    k2: &Subcomplex,
    l2: &Subcomplex,
    k: usize,
) -> Result<Gf2Matrix, ComplexError> {
    if !l2.is_subset(k2) {
        return Err(ComplexError::NotAPairInclusion("L' is not inside K'".into()));
    }
    if !l2.is_subset(l) {
        return Err(ComplexError::NotAPairInclusion("L' is not inside L".into()));
    }
    let full = Subcomplex::full(complex);
    let source = pair_cohomology_degree(complex, &full, l, k);
    let target = pair_cohomology_degree(complex, k2, l2, k);
    pair_restriction(complex, &source, k2, l2, &target)
}

/// Components of a set of cells, where two cells are adjacent when one is a
/// facet of the other and both lie in the set. Components are returned sorted
/// by their lexicographically smallest simplex; cells inside a component are
/// ordered by `(dim, position)`.
pub fn components_of<F: Fn(Cell) -> bool>(complex: &SimplicialComplex, in_set: F) -> Vec<Vec<Cell>> {
    let cells: Vec<Cell> = complex.cells().filter(|&c| in_set(c)).collect();
    let pos: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, &(k, s)) in cells.iter().enumerate() {
        if k == 0 {
            continue;
        }
        for &f in complex.facets_of((k, s)) {
            if let Some(&j) = pos.get(&(k - 1, f)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Cell>> = HashMap::new();
    for (i, &c) in cells.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(c);
    }
    let mut out: Vec<Vec<Cell>> = groups.into_values().collect();
    for g in &mut out {
        g.sort_unstable();
    }
    out.sort_by(|a, b| {
        let min = |g: &Vec<Cell>| g.iter().map(|&c| complex.simplex(c)).min().cloned();
        min(a).cmp(&min(b))
    });
    out
}

/// Connected components of a complex, as a partition of its simplices.
pub fn connected_components(complex: &SimplicialComplex) -> Vec<Vec<Cell>> {
    components_of(complex, |_| true)
}

/// Barycentric subdivision. The new vertex for simplex `(k, i)` of the input
/// gets id `offset(k) + i`; the returned vector maps each old cell to its id.
pub fn barycentric_subdivision(complex: &SimplicialComplex) -> (SimplicialComplex, Vec<Vec<Vertex>>) {
    let mut ids = Vec::new();
    let mut next: Vertex = 0;
    for k in 0..complex.num_dims() {
        ids.push((next..next + complex.count(k) as Vertex).collect::<Vec<_>>());
        next += complex.count(k) as Vertex;
    }
    let mut flags = Vec::new();
    for top in complex.maximal_simplices() {
        flags.extend(flags_of(complex, &top, &ids));
    }
    let sd = SimplicialComplex::build(&flags).expect("flags are valid simplices");
    (sd, ids)
}

/// Maximal chains of faces of `top`, as simplices of the subdivision.
pub fn flags_of(complex: &SimplicialComplex, top: &[Vertex], ids: &[Vec<Vertex>]) -> Vec<Simplex> {
    let mut out = Vec::new();
    let mut chain = Vec::new();
    fn rec(
        complex: &SimplicialComplex,
        current: Vec<Vertex>,
        ids: &[Vec<Vertex>],
        chain: &mut Vec<Vertex>,
        out: &mut Vec<Simplex>,
    ) {
        let (k, i) = complex.find(&current).expect("face of a simplex of the complex");
        chain.push(ids[k][i]);
        if current.len() == 1 {
            out.push(chain.clone());
        } else {
            for skip in 0..current.len() {
                let mut f = current.clone();
                f.remove(skip);
                rec(complex, f, ids, chain, out);
            }
        }
        chain.pop();
    }
    rec(complex, top.to_vec(), ids, &mut chain, &mut out);
    out
}

/// Staircase triangulation of `σ × τ` for simplices with vertex positions
/// `sigma` and `tau`; vertex `(a, b)` gets id `a * stride + b`.
pub fn staircase(sigma: &[usize], tau: &[usize], stride: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    fn rec(
        sigma: &[usize],
        tau: &[usize],
        i: usize,
        j: usize,
        stride: usize,
        path: &mut Vec<Vertex>,
        out: &mut Vec<Simplex>,
    ) {
        path.push((sigma[i] * stride + tau[j]) as Vertex);
        if i + 1 == sigma.len() && j + 1 == tau.len() {
            out.push(path.clone());
        }
        if i + 1 < sigma.len() {
            rec(sigma, tau, i + 1, j, stride, path, out);
        }
        if j + 1 < tau.len() {
            rec(sigma, tau, i, j + 1, stride, path, out);
        }
        path.pop();
    }
    rec(sigma, tau, 0, 0, stride, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialComplex {
        build_complex(&[[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    fn dims(c: &[CohomologyVector]) -> Vec<usize> {
        let mut d: Vec<usize> = c.iter().map(CohomologyVector::dim).collect();
        while d.last() == Some(&0) {
            d.pop();
        }
        d
    }

    /// Cylinder S¹×I over a 3-vertex circle: bottom 0,1,2, top 3,4,5.
    pub(crate) fn cylinder3() -> SimplicialComplex {
        let mut tris = Vec::new();
        for i in 0..3u32 {
            let j = (i + 1) % 3;
            tris.push(vec![i, j, 3 + i]);
            tris.push(vec![j, 3 + i, 3 + j]);
        }
        build_complex(&tris).unwrap()
    }

    #[test]
    fn build_small_complexes() {
        let e = build_complex(&[[0, 1]]).unwrap();
        assert_eq!(e.simplices(0), &[vec![0], vec![1]]);
        assert_eq!(e.simplices(1), &[vec![0, 1]]);
        let c = circle();
        assert_eq!((c.count(0), c.count(1), c.count(2)), (3, 3, 0));
        let t = build_complex(&[[0, 1, 2, 3]]).unwrap();
        assert_eq!((0..4).map(|k| t.count(k)).collect::<Vec<_>>(), vec![4, 6, 4, 1]);
        assert_eq!(t.euler_characteristic(), 1);
        assert_eq!(
            build_complex(&[[0, 0, 1]]),
            Err(ComplexError::MalformedSimplex(vec![0, 0, 1]))
        );
    }

    #[test]
    fn subcomplex_generation() {
        let disc = build_complex(&[[0, 1, 2]]).unwrap();
        let all = subcomplex(&disc, &[[0, 1, 2]]).unwrap();
        assert_eq!(all, Subcomplex::full(&disc));
        let none = subcomplex::<[Vertex; 2]>(&disc, &[]).unwrap();
        assert!(none.is_empty());
        let bd = subcomplex(&disc, &[[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(bd.counts(), vec![3, 3]);
        assert!(bd.is_closed(&disc));
        assert_eq!(
            subcomplex(&disc, &[[0, 3]]),
            Err(ComplexError::NotASimplexOfParent(vec![0, 3]))
        );
    }

    #[test]
    fn coboundary_examples() {
        let c = circle();
        let d0 = coboundary_matrix(&c, &Subcomplex::empty(&c), 0);
        assert_eq!(d0.shape(), (3, 3));
        assert_eq!(d0.rank(), 2);
        assert!(d0.row_iter().all(|r| r.count_ones() == 2));

        let disc = build_complex(&[[0, 1, 2]]).unwrap();
        let bd = subcomplex(&disc, &[[0, 1], [1, 2], [0, 2]]).unwrap();
        let d1 = coboundary_matrix(&disc, &bd, 1);
        assert_eq!(d1.shape(), (1, 0));

        let path = build_complex(&[[0, 1], [1, 2]]).unwrap();
        let ends = subcomplex(&path, &[[0], [2]]).unwrap();
        let d = coboundary_matrix(&path, &ends, 0);
        assert_eq!(d, Gf2Matrix::from_rows(1, &[[1], [1]]).unwrap());
    }

    #[test]
    fn relative_cohomology_examples() {
        let c = circle();
        assert_eq!(dims(&relative_cohomology(&c, &Subcomplex::empty(&c))), vec![1, 1]);

        let cyl = cylinder3();
        let ends = subcomplex(&cyl, &[[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        assert_eq!(dims(&relative_cohomology(&cyl, &ends)), vec![0, 1, 1]);

        let disc = build_complex(&[[0, 1, 2]]).unwrap();
        let bd = subcomplex(&disc, &[[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(dims(&relative_cohomology(&disc, &bd)), vec![0, 0, 1]);
    }

    #[test]
    fn connecting_examples() {
        let disc = build_complex(&[[0, 1, 2]]).unwrap();
        let bd = subcomplex(&disc, &[[0, 1], [1, 2], [0, 2]]).unwrap();
        let m = connecting_matrix(&disc, &bd, &bd, 0).unwrap();
        assert_eq!(m.cols(), 0);

        let path = build_complex(&[[0, 1], [1, 2]]).unwrap();
        let ends = subcomplex(&path, &[[0], [2]]).unwrap();
        let m = connecting_matrix(&path, &ends, &Subcomplex::empty(&path), 0).unwrap();
        assert_eq!(m, Gf2Matrix::from_rows(2, &[[1, 1]]).unwrap());

        // Möbius strip on five vertices and its boundary circle.
        let mob = build_complex(&[[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]]).unwrap();
        let rim = subcomplex(&mob, &[[0, 2], [2, 4], [1, 4], [1, 3], [0, 3]]).unwrap();
        let m = connecting_matrix(&mob, &rim, &Subcomplex::empty(&mob), 0).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert!(m.is_zero());

        assert_eq!(
            connecting_matrix(&path, &Subcomplex::empty(&path), &ends, 0),
            Err(ComplexError::NotNested)
        );
    }

    #[test]
    fn restriction_examples() {
        let path = build_complex(&[[0, 1], [1, 2]]).unwrap();
        let empty = Subcomplex::empty(&path);
        let full = Subcomplex::full(&path);
        let id = restriction_matrix(&path, &empty, &full, &empty, 0).unwrap();
        assert_eq!(id, Gf2Matrix::identity(1));
        let ends = subcomplex(&path, &[[0], [2]]).unwrap();
        let r = restriction_matrix(&path, &empty, &ends, &empty, 0).unwrap();
        assert_eq!(r, Gf2Matrix::from_rows(1, &[[1], [1]]).unwrap());
        assert!(matches!(
            restriction_matrix(&path, &empty, &full, &ends, 0),
            Err(ComplexError::NotAPairInclusion(_))
        ));
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&circle()).len(), 1);
        let two = build_complex(&[[0, 1], [1, 2], [0, 2], [5, 6], [6, 7], [5, 7]]).unwrap();
        assert_eq!(connected_components(&two).len(), 2);
        // Open cells: two edges sharing a vertex that is excluded are separate.
        let path = build_complex(&[[0, 1], [1, 2]]).unwrap();
        let comps = components_of(&path, |(k, _)| k == 1);
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn subdivision_and_products() {
        let t = build_complex(&[[0, 1, 2]]).unwrap();
        let (sd, _) = barycentric_subdivision(&t);
        assert_eq!((sd.count(0), sd.count(1), sd.count(2)), (7, 12, 6));
        assert_eq!(sd.euler_characteristic(), 1);
        let prism = staircase(&[0, 1, 2], &[0, 1], 2);
        assert_eq!(prism.len(), 3);
        let p = build_complex(&prism).unwrap();
        assert_eq!(p.euler_characteristic(), 1);
        assert_eq!(p.count(0), 6);
    }
}
