//! The face-rank filtration of a face `P`, its E₁ page and the B-complexes.
//!
//! Column `p` of the E₁ page is `H^{p+q}(P_p, P_{p-1})`, which splits as the
//! direct sum of `H^{p+q}(Q, ∂Q)` over the rank-`p` faces `Q ⊆ P`. The
//! differential `d₁` is the connecting map of the triple
//! `(P_{p+1}, P_p, P_{p-1})`; row `q` of the page is the complex `B(P)` whose
//! cohomology decides the syzygy order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corners::{CornerModel, FaceLattice};
use crate::gf2::{quotient_dim, Gf2Error, Gf2Matrix};
use crate::scomplex::{
    connecting_map, pair_cohomology, relative_cells, CohomologyBasis, ComplexError, Simplex,
    Subcomplex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("face {face}: simplex {simplex:?} of the filtration quotient lies in no open stratum of the right rank")]
    DecompositionMismatch { face: String, simplex: Simplex },
    #[error("d1 ∘ d1 ≠ 0 on face {face} at column {p}, row {q}")]
    CompositionNotZero { face: String, p: usize, q: usize },
    #[error("inconsistent face poset: {0}")]
    PosetInconsistent(String),
    #[error("block {from} -> {to} does not join faces of consecutive rank")]
    RankGap { from: String, to: String },
    #[error("block {from} -> {to} in degree {degree}: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    BlockShape {
        from: String,
        to: String,
        degree: usize,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
}

/// One face's summand inside an E₁ term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub face: usize,
    pub offset: usize,
    pub dim: usize,
}

/// E₁ page of the filtration of one face.
#[derive(Clone, Debug)]
pub struct FiltrationPage {
    pub face: usize,
    pub name: String,
    pub rank: usize,
    /// Number of rows `q` computed; all rows beyond are zero.
    pub rows: usize,
    /// `blocks[p][q]`: summands of `E₁^{p,q}`, ordered by face id.
    pub blocks: Vec<Vec<Vec<Block>>>,
    /// `d1[p][q]: E₁^{p,q} → E₁^{p+1,q}` for `p < rank`.
    pub d1: Vec<Vec<Gf2Matrix>>,
}

impl FiltrationPage {
    pub fn e1_dim(&self, p: usize, q: usize) -> usize {
        self.blocks
            .get(p)
            .and_then(|col| col.get(q))
            .map_or(0, |b| b.iter().map(|b| b.dim).sum())
    }

    /// `dim E₁^{p,q}` as `[p][q]` with trailing zeros trimmed per column.
    pub fn e1_table(&self) -> Vec<Vec<usize>> {
        (0..=self.rank)
            .map(|p| trim((0..self.rows).map(|q| self.e1_dim(p, q)).collect()))
            .collect()
    }

    fn incoming(&self, p: usize, q: usize) -> Gf2Matrix {
        if p == 0 {
            Gf2Matrix::zeros(self.e1_dim(0, q), 0)
        } else {
            self.d1[p - 1][q].clone()
        }
    }

    fn outgoing(&self, p: usize, q: usize) -> Gf2Matrix {
        if p == self.rank {
            Gf2Matrix::zeros(0, self.e1_dim(p, q))
        } else {
            self.d1[p][q].clone()
        }
    }

    /// Every consecutive pair of differentials composes to zero.
    pub fn d1_squares_to_zero(&self) -> bool {
        (1..self.rank).all(|p| {
            (0..self.rows).all(|q| {
                self.d1[p][q]
                    .multiply(&self.d1[p - 1][q])
                    .map(|m| m.is_zero())
                    .unwrap_or(false)
            })
        })
    }

    /// Every block `(Q, Q')` of `d1` is zero unless `covers(Q, Q')`.
    pub fn blocks_vanish_off<F: Fn(usize, usize) -> bool>(&self, covers: F) -> bool {
        for p in 0..self.rank {
            for q in 0..self.rows {
                let m = &self.d1[p][q];
                for src in &self.blocks[p][q] {
                    for dst in &self.blocks[p + 1][q] {
                        if covers(src.face, dst.face) {
                            continue;
                        }
                        for r in dst.offset..dst.offset + dst.dim {
                            for c in src.offset..src.offset + src.dim {
                                if m.get(r, c) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// `Σ (-1)^{p+q} dim E₁^{p,q}`.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for p in 0..=self.rank {
            for q in 0..self.rows {
                let d = self.e1_dim(p, q) as i64;
                chi += if (p + q) % 2 == 0 { d } else { -d };
            }
        }
        chi
    }
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Cohomology of the B-complexes of one face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub face: usize,
    pub name: String,
    pub rank: usize,
    /// `h[p][q] = dim H^p(B(P))` in row `q`; each column trimmed of trailing zeros.
    pub h: Vec<Vec<usize>>,
    /// Largest `p ≥ 1` with a nonzero `h[p][·]`, or 0.
    pub obstruction: usize,
}

impl FaceReport {
    pub fn h(&self, p: usize, q: usize) -> usize {
        self.h.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=k} h^{p,q}`.
    pub fn total(&self, k: usize) -> usize {
        (0..=k.min(self.rank)).map(|p| self.h(p, k - p)).sum()
    }
}

/// Cohomology of every row of the page.
pub fn b_cohomology(page: &FiltrationPage) -> Result<FaceReport, BError> {
    let mut h = Vec::with_capacity(page.rank + 1);
    for p in 0..=page.rank {
        let mut col = Vec::with_capacity(page.rows);
        for q in 0..page.rows {
            let d = quotient_dim(&page.incoming(p, q), &page.outgoing(p, q)).map_err(|e| match e {
                Gf2Error::CompositionNotZero => BError::CompositionNotZero {
                    face: page.name.clone(),
                    p,
                    q,
                },
                other => BError::Gf2(other),
            })?;
            col.push(d);
        }
        h.push(trim(col));
    }
    let obstruction = (1..=page.rank).rev().find(|&p| !h[p].is_empty()).unwrap_or(0);
    Ok(FaceReport {
        face: page.face,
        name: page.name.clone(),
        rank: page.rank,
        h,
        obstruction,
    })
}

/// `P_0 ⊆ … ⊆ P_{rank P}`: `P_i` is the union of the faces of `P` of rank at most `i`.
pub fn filtration(model: &CornerModel, lattice: &FaceLattice, p: usize) -> Vec<Subcomplex> {
    let face = &lattice.faces[p];
    (0..=face.rank)
        .map(|i| {
            let mut s = Subcomplex::empty(model.complex());
            for q in &lattice.faces {
                if q.rank <= i && lattice.is_below(q.id, p) {
                    s = s.union(&q.cells);
                }
            }
            s
        })
        .collect()
}

/// `H^*(Q, ∂Q)` for every face, representatives supported on the open stratum.
pub fn face_cohomology(model: &CornerModel, lattice: &FaceLattice) -> Vec<Vec<CohomologyBasis>> {
    lattice
        .faces
        .iter()
        .map(|f| pair_cohomology(model.complex(), &f.cells, &f.boundary))
        .collect()
}

/// E₁ page of the filtration of face `p`, with `d₁` from the connecting maps.
pub fn e1_page(
    model: &CornerModel,
    lattice: &FaceLattice,
    cohomology: &[Vec<CohomologyBasis>],
    p: usize,
) -> Result<FiltrationPage, BError> {
    let complex = model.complex();
    let face = &lattice.faces[p];
    let steps = filtration(model, lattice, p);
    let rows = face.dim().map_or(1, |d| d + 1);
    let by_rank: Vec<Vec<usize>> = (0..=face.rank)
        .map(|r| lattice.faces_of_rank_below(p, r))
        .collect();

    // C^*(P_i, P_{i-1}) must be the direct sum of the C^*(Q, ∂Q), rank Q = i.
    let empty = Subcomplex::empty(complex);
    for i in 0..=face.rank {
        let below = if i == 0 { &empty } else { &steps[i - 1] };
        for k in 0..complex.num_dims() {
            for s in relative_cells(complex, &steps[i], below, k) {
                let owners = by_rank[i]
                    .iter()
                    .filter(|&&q| lattice.faces[q].open_cells.contains(&(k, s)))
                    .count();
                if owners != 1 {
                    return Err(BError::DecompositionMismatch {
                        face: face.name.clone(),
                        simplex: complex.simplex((k, s)).clone(),
                    });
                }
            }
        }
    }

    let mut blocks = vec![vec![Vec::new(); rows]; face.rank + 1];
    let mut sums: Vec<Vec<Option<CohomologyBasis>>> = vec![vec![None; rows]; face.rank + 1];
    for i in 0..=face.rank {
        for q in 0..rows {
            let k = i + q;
            let mut offset = 0;
            let mut parts = Vec::new();
            for &qf in &by_rank[i] {
                let dim = cohomology[qf].get(k).map_or(0, CohomologyBasis::dim);
                blocks[i][q].push(Block {
                    face: qf,
                    offset,
                    dim,
                });
                offset += dim;
                if let Some(b) = cohomology[qf].get(k) {
                    parts.push(b);
                }
            }
            if k < complex.num_dims() {
                sums[i][q] = Some(CohomologyBasis::direct_sum(k, complex.count(k), &parts));
            }
        }
    }

    let mut d1 = Vec::with_capacity(face.rank);
    for i in 0..face.rank {
        let mut col = Vec::with_capacity(rows);
        for q in 0..rows {
            let (src_dim, dst_dim) = (
                blocks[i][q].iter().map(|b| b.dim).sum::<usize>(),
                blocks[i + 1][q].iter().map(|b| b.dim).sum::<usize>(),
            );
            let m = match (&sums[i][q], &sums[i + 1][q]) {
                (Some(src), Some(dst)) if src_dim > 0 && dst_dim > 0 => {
                    connecting_map(complex, &steps[i + 1], &steps[i], src, dst)?
                }
                _ => Gf2Matrix::zeros(dst_dim, src_dim),
            };
            col.push(m);
        }
        d1.push(col);
    }
    Ok(FiltrationPage {
        face: p,
        name: face.name.clone(),
        rank: face.rank,
        rows,
        blocks,
        d1,
    })
}

/// Alternate input: per-face cohomology dimensions and the `d₁` blocks
/// between covering faces, for models that are not triangulated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractBData {
    pub n: usize,
    pub faces: Vec<AbstractFace>,
    #[serde(default)]
    pub d1: Vec<AbstractBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractFace {
    pub name: String,
    pub rank: usize,
    /// `dim H^k(Q, ∂Q)` for `k = 0, 1, …`.
    pub cohomology: Vec<usize>,
    /// Names of faces contained in this one (any subset whose transitive
    /// closure gives the full order).
    #[serde(default)]
    pub contains: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractBlock {
    pub from: String,
    pub to: String,
    /// Source degree `k`: the block maps `H^k(from, ∂from) → H^{k+1}(to, ∂to)`.
    pub degree: usize,
    pub matrix: Vec<Vec<u8>>,
}

/// Face poset assembled from abstract data. Faces are ordered by `(rank, name)`.
#[derive(Clone, Debug)]
pub struct AbstractLattice {
    pub n: usize,
    pub names: Vec<String>,
    pub ranks: Vec<usize>,
    pub dims: Vec<Vec<usize>>,
    /// `below[p]`: faces strictly contained in `p`.
    pub below: Vec<BTreeSet<usize>>,
    /// `(from, to, degree) → block`.
    pub blocks: BTreeMap<(usize, usize, usize), Gf2Matrix>,
}

impl AbstractLattice {
    pub fn is_below(&self, q: usize, p: usize) -> bool {
        q == p || self.below[p].contains(&q)
    }

    pub fn covers(&self, q: usize, p: usize) -> bool {
        self.below[p].contains(&q) && self.ranks[p] == self.ranks[q] + 1
    }

    fn dim(&self, face: usize, k: usize) -> usize {
        self.dims[face].get(k).copied().unwrap_or(0)
    }

    pub fn page(&self, p: usize) -> FiltrationPage {
        let rank = self.ranks[p];
        let members: Vec<usize> = (0..self.names.len()).filter(|&q| self.is_below(q, p)).collect();
        let rows = members
            .iter()
            .map(|&q| self.dims[q].len().saturating_sub(self.ranks[q]))
            .max()
            .unwrap_or(0)
            .max(1);
        let by_rank: Vec<Vec<usize>> = (0..=rank)
            .map(|r| members.iter().copied().filter(|&q| self.ranks[q] == r).collect())
            .collect();
        let blocks: Vec<Vec<Vec<Block>>> = (0..=rank)
            .map(|i| {
                (0..rows)
                    .map(|q| {
                        let mut offset = 0;
                        by_rank[i]
                            .iter()
                            .map(|&f| {
                                let dim = self.dim(f, i + q);
                                let b = Block { face: f, offset, dim };
                                offset += dim;
                                b
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let d1 = (0..rank)
            .map(|i| {
                (0..rows)
                    .map(|q| {
                        let src: &Vec<Block> = &blocks[i][q];
                        let dst: &Vec<Block> = &blocks[i + 1][q];
                        let mut m = Gf2Matrix::zeros(
                            dst.iter().map(|b| b.dim).sum(),
                            src.iter().map(|b| b.dim).sum(),
                        );
                        for s in src {
                            for d in dst {
                                if let Some(b) = self.blocks.get(&(s.face, d.face, i + q)) {
                                    for r in 0..d.dim {
                                        for c in 0..s.dim {
                                            if b.get(r, c) {
                                                m.set(d.offset + r, s.offset + c, true);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        FiltrationPage {
            face: p,
            name: self.names[p].clone(),
            rank,
            rows,
            blocks,
            d1,
        }
    }
}

/// Result of running the abstract front end.
#[derive(Clone, Debug)]
pub struct AbstractAnalysis {
    pub lattice: AbstractLattice,
    pub pages: Vec<FiltrationPage>,
    pub reports: Vec<FaceReport>,
}

/// Validates abstract data, assembles every face's B-complexes and reports them.
pub fn from_abstract(data: &AbstractBData) -> Result<AbstractAnalysis, BError> {
    let mut order: Vec<usize> = (0..data.faces.len()).collect();
    order.sort_by(|&a, &b| {
        (data.faces[a].rank, &data.faces[a].name).cmp(&(data.faces[b].rank, &data.faces[b].name))
    });
    let faces: Vec<&AbstractFace> = order.iter().map(|&i| &data.faces[i]).collect();
    let mut id = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        if id.insert(f.name.clone(), i).is_some() {
            return Err(BError::PosetInconsistent(format!("duplicate face name {}", f.name)));
        }
        if f.rank > data.n {
            return Err(BError::PosetInconsistent(format!(
                "face {} has rank {} above n = {}",
                f.name, f.rank, data.n
            )));
        }
    }
    let lookup = |name: &str| {
        id.get(name)
            .copied()
            .ok_or_else(|| BError::PosetInconsistent(format!("unknown face {name}")))
    };
    let count = faces.len();
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); count];
    for (p, f) in faces.iter().enumerate() {
        for q in &f.contains {
            let q = lookup(q)?;
            if q == p {
                return Err(BError::PosetInconsistent(format!("face {} contains itself", f.name)));
            }
            below[p].insert(q);
        }
    }
    // transitive closure; ranks strictly increase upward, so cycles cannot survive the rank check
    loop {
        let mut changed = false;
        for p in 0..count {
            let extra: Vec<usize> = below[p]
                .iter()
                .flat_map(|&q| below[q].iter().copied())
                .filter(|r| !below[p].contains(r))
                .collect();
            if !extra.is_empty() {
                changed = true;
                below[p].extend(extra);
            }
            if below[p].contains(&p) {
                return Err(BError::PosetInconsistent(format!("containment cycle through {}", faces[p].name)));
            }
        }
        if !changed {
            break;
        }
    }
    for p in 0..count {
        for &q in &below[p] {
            if faces[q].rank >= faces[p].rank {
                return Err(BError::PosetInconsistent(format!(
                    "{} ⊆ {} but rank {} ≥ {}",
                    faces[q].name, faces[p].name, faces[q].rank, faces[p].rank
                )));
            }
        }
    }

    let mut blocks = BTreeMap::new();
    for b in &data.d1 {
        let (from, to) = (lookup(&b.from)?, lookup(&b.to)?);
        if faces[to].rank != faces[from].rank + 1 {
            return Err(BError::RankGap {
                from: b.from.clone(),
                to: b.to.clone(),
            });
        }
        if !below[to].contains(&from) {
            return Err(BError::PosetInconsistent(format!("block between {} and {}, which are not nested", b.from, b.to)));
        }
        let rows = faces[to].cohomology.get(b.degree + 1).copied().unwrap_or(0);
        let cols = faces[from].cohomology.get(b.degree).copied().unwrap_or(0);
        let got_cols = b.matrix.first().map_or(cols, Vec::len);
        let shape_err = || BError::BlockShape {
            from: b.from.clone(),
            to: b.to.clone(),
            degree: b.degree,
            expected_rows: rows,
            expected_cols: cols,
            rows: b.matrix.len(),
            cols: got_cols,
        };
        if b.matrix.len() != rows || b.matrix.iter().any(|r| r.len() != cols) {
            return Err(shape_err());
        }
        if b.matrix.iter().flatten().any(|&x| x > 1) {
            return Err(shape_err());
        }
        let m = Gf2Matrix::from_rows(cols, &b.matrix)?;
        if blocks.insert((from, to, b.degree), m).is_some() {
            return Err(BError::PosetInconsistent(format!(
                "duplicate block {} -> {} in degree {}",
                b.from, b.to, b.degree
            )));
        }
    }

    let lattice = AbstractLattice {
        n: data.n,
        names: faces.iter().map(|f| f.name.clone()).collect(),
        ranks: faces.iter().map(|f| f.rank).collect(),
        dims: faces.iter().map(|f| f.cohomology.clone()).collect(),
        below,
        blocks,
    };

    // Global d1 ∘ d1 = 0: for every pair two ranks apart, sum over the faces in between.
    for low in 0..count {
        for high in 0..count {
            if lattice.ranks[high] != lattice.ranks[low] + 2 || !lattice.below[high].contains(&low) {
                continue;
            }
            let max_k = lattice.dims[low].len();
            for k in 0..max_k {
                let mut acc = Gf2Matrix::zeros(lattice.dim(high, k + 2), lattice.dim(low, k));
                for mid in 0..count {
                    if let (Some(a), Some(b)) = (
                        lattice.blocks.get(&(low, mid, k)),
                        lattice.blocks.get(&(mid, high, k + 1)),
                    ) {
                        let prod = b.multiply(a)?;
                        for r in 0..prod.rows() {
                            for c in 0..prod.cols() {
                                if prod.get(r, c) {
                                    let v = acc.get(r, c);
                                    acc.set(r, c, !v);
                                }
                            }
                        }
                    }
                }
                if !acc.is_zero() {
                    return Err(BError::CompositionNotZero {
                        face: format!("{} -> {}", lattice.names[low], lattice.names[high]),
                        p: lattice.ranks[low],
                        q: k - lattice.ranks[low].min(k),
                    });
                }
            }
        }
    }

    let pages: Vec<FiltrationPage> = (0..count).map(|p| lattice.page(p)).collect();
    let reports = pages.iter().map(b_cohomology).collect::<Result<Vec<_>, _>>()?;
    Ok(AbstractAnalysis {
        lattice,
        pages,
        reports,
    })
}

/// Assembled `H^k(P)` dimension bound check helper: `dim E₁` along a total degree.
pub fn e1_total(page: &FiltrationPage, k: usize) -> usize {
    (0..=k.min(page.rank))
        .filter(|&p| k - p < page.rows)
        .map(|p| page.e1_dim(p, k - p))
        .sum()
}

/// Abstract data of a triangulated model: face cohomology dimensions and the
/// `d₁` blocks into each face, read off that face's own page.
pub fn to_abstract(lattice: &FaceLattice, face_dims: &[Vec<usize>], pages: &[FiltrationPage]) -> AbstractBData {
    let faces = lattice
        .faces
        .iter()
        .map(|f| AbstractFace {
            name: f.name.clone(),
            rank: f.rank,
            cohomology: face_dims[f.id].clone(),
            contains: f
                .contains
                .iter()
                .filter(|&&q| lattice.faces[q].rank + 1 == f.rank)
                .map(|&q| lattice.faces[q].name.clone())
                .collect(),
        })
        .collect();
    let mut d1 = Vec::new();
    for (f, page) in lattice.faces.iter().zip(pages) {
        if f.rank == 0 {
            continue;
        }
        let r = f.rank;
        for q in 0..page.rows {
            let Some(dst) = page.blocks[r][q].iter().find(|b| b.face == f.id) else {
                continue;
            };
            for src in &page.blocks[r - 1][q] {
                if src.dim == 0 || dst.dim == 0 {
                    continue;
                }
                let rows: Vec<usize> = (dst.offset..dst.offset + dst.dim).collect();
                let cols: Vec<usize> = (src.offset..src.offset + src.dim).collect();
                let block = page.d1[r - 1][q].submatrix(&rows, &cols);
                if !block.is_zero() {
                    d1.push(AbstractBlock {
                        from: lattice.faces[src.face].name.clone(),
                        to: f.name.clone(),
                        degree: r - 1 + q,
                        matrix: block.to_u8_rows(),
                    });
                }
            }
        }
    }
    AbstractBData { n: lattice.n, faces, d1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::face_lattice;

    fn triangle() -> CornerModel {
        CornerModel::from_simplices(
            &[[0, 1, 2]],
            2,
            &[("F1", vec![vec![0, 1]]), ("F2", vec![vec![1, 2]]), ("F3", vec![vec![0, 2]])],
        )
        .unwrap()
    }

    fn pages_of(model: &CornerModel) -> (FaceLattice, Vec<FiltrationPage>) {
        let lat = face_lattice(model).unwrap();
        let coh = face_cohomology(model, &lat);
        let pages = (0..lat.faces.len())
            .map(|p| e1_page(model, &lat, &coh, p).unwrap())
            .collect();
        (lat, pages)
    }

    #[test]
    fn triangle_filtration_and_page() {
        let t = triangle();
        let lat = face_lattice(&t).unwrap();
        let m = lat.by_name("M").unwrap().id;
        let f = filtration(&t, &lat, m);
        assert_eq!(f.len(), 3);
        assert_eq!(f[0].counts(), vec![3]);
        assert_eq!(f[1].counts(), vec![3, 3]);
        assert_eq!(f[2].counts(), vec![3, 3, 1]);
        let v = lat.by_name("F1&F2").unwrap().id;
        assert_eq!(filtration(&t, &lat, v).len(), 1);

        let (lat, pages) = pages_of(&t);
        let page = &pages[m];
        assert_eq!(page.e1_table(), vec![vec![3], vec![3], vec![1]]);
        assert!(page.d1_squares_to_zero());
        assert!(page.blocks_vanish_off(|a, b| lat.covering_pairs().contains(&(a, b))));
        let r = b_cohomology(page).unwrap();
        assert_eq!(r.h, vec![vec![1], vec![], vec![]]);
        assert_eq!(r.obstruction, 0);
    }

    #[test]
    fn square_page_converges_to_disc() {
        let sq = CornerModel::from_simplices(
            &[[0, 1, 2], [0, 2, 3]],
            2,
            &[
                ("F1", vec![vec![0, 1]]),
                ("F2", vec![vec![1, 2]]),
                ("F3", vec![vec![2, 3]]),
                ("F4", vec![vec![0, 3]]),
            ],
        )
        .unwrap();
        let (lat, pages) = pages_of(&sq);
        let m = lat.by_name("M").unwrap().id;
        assert_eq!(pages[m].e1_table(), vec![vec![4], vec![4], vec![1]]);
        let r = b_cohomology(&pages[m]).unwrap();
        assert_eq!(r.h, vec![vec![1], vec![], vec![]]);
    }

    #[test]
    fn mobius_has_obstruction_in_column_one() {
        let mob = CornerModel::from_simplices(
            &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]],
            1,
            &[("F1", vec![vec![0, 2], vec![2, 4], vec![1, 4], vec![1, 3], vec![0, 3]])],
        )
        .unwrap();
        let (lat, pages) = pages_of(&mob);
        assert_eq!(lat.faces.len(), 2);
        let m = lat.by_name("M").unwrap().id;
        let r = b_cohomology(&pages[m]).unwrap();
        assert_eq!(r.h(1, 0), 1);
        assert_eq!(r.obstruction, 1);
    }

    #[test]
    fn single_rank_zero_abstract_face() {
        let data = AbstractBData {
            n: 0,
            faces: vec![AbstractFace {
                name: "pt".into(),
                rank: 0,
                cohomology: vec![1],
                contains: vec![],
            }],
            d1: vec![],
        };
        let a = from_abstract(&data).unwrap();
        assert_eq!(a.reports[0].h, vec![vec![1]]);
    }

    #[test]
    fn abstract_errors() {
        let face = |name: &str, rank, coh: Vec<usize>, contains: Vec<&str>| AbstractFace {
            name: name.into(),
            rank,
            cohomology: coh,
            contains: contains.into_iter().map(String::from).collect(),
        };
        let base = AbstractBData {
            n: 1,
            faces: vec![face("a", 0, vec![1], vec![]), face("b", 0, vec![1], vec![]), face("M", 1, vec![0, 1], vec!["a", "b"])],
            d1: vec![],
        };
        assert!(from_abstract(&base).is_ok());

        let mut bad = base.clone();
        bad.faces[2].contains.push("zzz".into());
        assert!(matches!(from_abstract(&bad), Err(BError::PosetInconsistent(_))));

        let mut bad = base.clone();
        bad.d1.push(AbstractBlock { from: "a".into(), to: "b".into(), degree: 0, matrix: vec![vec![1]] });
        assert!(matches!(from_abstract(&bad), Err(BError::RankGap { .. })));

        let mut bad = base.clone();
        bad.d1.push(AbstractBlock { from: "a".into(), to: "M".into(), degree: 0, matrix: vec![vec![1, 1]] });
        assert!(matches!(from_abstract(&bad), Err(BError::BlockShape { .. })));

        // interval: both ends hit the relative class
        let mut ok = base.clone();
        for end in ["a", "b"] {
            ok.d1.push(AbstractBlock { from: end.into(), to: "M".into(), degree: 0, matrix: vec![vec![1]] });
        }
        let a = from_abstract(&ok).unwrap();
        let m = a.lattice.names.iter().position(|n| n == "M").unwrap();
        assert_eq!(a.reports[m].h, vec![vec![1], vec![]]);

        // a chain of nonzero blocks two ranks apart that does not cancel
        let chain = AbstractBData {
            n: 2,
            faces: vec![
                face("v", 0, vec![1], vec![]),
                face("e", 1, vec![0, 1], vec!["v"]),
                face("M", 2, vec![0, 0, 1], vec!["e"]),
            ],
            d1: vec![
                AbstractBlock { from: "v".into(), to: "e".into(), degree: 0, matrix: vec![vec![1]] },
                AbstractBlock { from: "e".into(), to: "M".into(), degree: 1, matrix: vec![vec![1]] },
            ],
        };
        assert!(matches!(from_abstract(&chain), Err(BError::CompositionNotZero { .. })));
    }
}
