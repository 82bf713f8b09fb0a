//! Combinatorial manifolds with corners.
//!
//! A [`CornerModel`] is a pure simplicial complex together with named facet
//! subcomplexes and the rank `n` of the acting 2-torus. Every simplex carries
//! the set of facets containing it; faces are the closures of the connected
//! components of the sets of simplices sharing one exact label set.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scomplex::{
    barycentric_subdivision, components_of, flags_of, staircase, Cell, ComplexError, Simplex,
    SimplicialComplex, Subcomplex, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CornerError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("model failed validation: {}", display_violations(.0))]
    ValidationFailed(Vec<Violation>),
    #[error("model is not nice; offending faces: {}", .0.join(", "))]
    NotNice(Vec<String>),
    #[error("face {0} has rank 0 and cannot be restricted to")]
    RankZeroFace(String),
    #[error("no face with id {0}")]
    UnknownFace(usize),
}

fn display_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A failed model invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyComplex,
    /// A simplex of `subject` (the complex, or a facet by name) is not a face
    /// of a simplex of the required top dimension.
    Purity { subject: String, simplex: Simplex },
    EmptyFacet { facet: String },
    /// A facet simplex that is not on the topological boundary of the complex.
    OffBoundary { facet: String, simplex: Simplex },
    /// More facets meet at `simplex` than the torus rank allows.
    LabelBound { simplex: Simplex, count: usize, n: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyComplex => write!(f, "complex is empty"),
            Violation::Purity { subject, simplex } => {
                write!(f, "purity violation in {subject} at {simplex:?}")
            }
            Violation::EmptyFacet { facet } => write!(f, "facet {facet} is empty"),
            Violation::OffBoundary { facet, simplex } => {
                write!(f, "facet {facet} leaves the boundary at {simplex:?}")
            }
            Violation::LabelBound { simplex, count, n } => {
                write!(f, "{count} facets meet at {simplex:?} but n = {n}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerModel {
    complex: SimplicialComplex,
    n: usize,
    facets: Vec<(String, Subcomplex)>,
}

impl CornerModel {
    pub fn new(complex: SimplicialComplex, n: usize, facets: Vec<(String, Subcomplex)>) -> Self {
        CornerModel { complex, n, facets }
    }

    /// Builds the complex spanned by `maximal` and the facets spanned by their generators.
    pub fn from_simplices<S: AsRef<[Vertex]>>(
        maximal: &[S],
        n: usize,
        facets: &[(&str, Vec<Simplex>)],
    ) -> Result<Self, CornerError> {
        let complex = SimplicialComplex::build(maximal)?;
        let facets = facets
            .iter()
            .map(|(name, gens)| Ok((name.to_string(), Subcomplex::generated(&complex, gens)?)))
            .collect::<Result<Vec<_>, ComplexError>>()?;
        Ok(CornerModel::new(complex, n, facets))
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Rank of the acting 2-torus.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Manifold dimension.
    pub fn m(&self) -> usize {
        self.complex.dim().unwrap_or(0)
    }

    pub fn facets(&self) -> &[(String, Subcomplex)] {
        &self.facets
    }

    /// Indices of the facets containing `cell`.
    pub fn label_of(&self, cell: Cell) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, (_, f))| f.contains(cell))
            .map(|(i, _)| i)
            .collect()
    }

    /// Closure of the codimension-one simplices that lie in exactly one top simplex.
    pub fn topological_boundary(&self) -> Subcomplex {
        let Some(m) = self.complex.dim() else {
            return Subcomplex::empty(&self.complex);
        };
        if m == 0 {
            return Subcomplex::empty(&self.complex);
        }
        let mut cofaces = vec![0usize; self.complex.count(m - 1)];
        for i in 0..self.complex.count(m) {
            for &f in self.complex.facets_of((m, i)) {
                cofaces[f] += 1;
            }
        }
        let rim = cofaces
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == 1)
            .map(|(f, _)| (m - 1, f));
        Subcomplex::closure_of(&self.complex, rim)
    }
}

fn pure_violations(
    complex: &SimplicialComplex,
    sub: &Subcomplex,
    top: usize,
    subject: &str,
) -> Vec<Violation> {
    let tops: Vec<Cell> = sub.cells().filter(|c| c.0 == top).collect();
    let covered = Subcomplex::closure_of(complex, tops);
    sub.cells()
        .filter(|&c| !covered.contains(c))
        .map(|c| Violation::Purity {
            subject: subject.to_string(),
            simplex: complex.simplex(c).clone(),
        })
        .collect()
}

/// Checks purity, facet dimension, facet placement and the label bound.
pub fn validate(model: &CornerModel) -> Vec<Violation> {
    let complex = &model.complex;
    let Some(m) = complex.dim() else {
        return vec![Violation::EmptyComplex];
    };
    let mut out = pure_violations(complex, &Subcomplex::full(complex), m, "complex");
    let boundary = model.topological_boundary();
    for (name, facet) in &model.facets {
        if facet.is_empty() {
            out.push(Violation::EmptyFacet { facet: name.clone() });
            continue;
        }
        if m == 0 {
            out.extend(facet.cells().map(|c| Violation::Purity {
                subject: name.clone(),
                simplex: complex.simplex(c).clone(),
            }));
            continue;
        }
        // Anything above dimension m-1 is itself a purity failure.
        out.extend(facet.cells().filter(|c| c.0 >= m).map(|c| Violation::Purity {
            subject: name.clone(),
            simplex: complex.simplex(c).clone(),
        }));
        out.extend(
            pure_violations(complex, facet, m - 1, name)
                .into_iter()
                .filter(|v| matches!(v, Violation::Purity { simplex, .. } if simplex.len() < m)),
        );
        out.extend(
            facet
                .cells()
                .filter(|&c| c.0 < m && !boundary.contains(c))
                .map(|c| Violation::OffBoundary {
                    facet: name.clone(),
                    simplex: complex.simplex(c).clone(),
                }),
        );
    }
    for c in complex.cells() {
        let count = model.label_of(c).len();
        if count > model.n {
            out.push(Violation::LabelBound {
                simplex: complex.simplex(c).clone(),
                count,
                n: model.n,
            });
        }
    }
    out
}

/// A face: the closure of one connected component of an open stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub name: String,
    /// Indices of the facets containing the face.
    pub label_set: Vec<usize>,
    pub cells: Subcomplex,
    /// The simplices whose label set is exactly `label_set`, within this component.
    pub open_cells: Vec<Cell>,
    pub boundary: Subcomplex,
    pub codim: usize,
    pub rank: usize,
    /// Faces strictly below this one.
    pub contains: Vec<usize>,
    /// Faces strictly above this one.
    pub contained_in: Vec<usize>,
}

impl Face {
    pub fn dim(&self) -> Option<usize> {
        self.cells.dim()
    }
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub n: usize,
    pub m: usize,
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn face(&self, id: usize) -> Result<&Face, CornerError> {
        self.faces.get(id).ok_or(CornerError::UnknownFace(id))
    }

    pub fn by_name(&self, name: &str) -> Option<&Face> {
        self.faces.iter().find(|f| f.name == name)
    }

    /// `q ⊆ p`, including `q == p`.
    pub fn is_below(&self, q: usize, p: usize) -> bool {
        q == p || self.faces[p].contains.contains(&q)
    }

    /// Faces of `p` (including `p`) of the given rank, in id order.
    pub fn faces_of_rank_below(&self, p: usize, rank: usize) -> Vec<usize> {
        self.faces
            .iter()
            .filter(|q| q.rank == rank && self.is_below(q.id, p))
            .map(|q| q.id)
            .collect()
    }

    /// Pairs `(q, q')` with `q ⊆ q'` and `rank q' = rank q + 1`.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for q in &self.faces {
            for &above in &q.contained_in {
                if self.faces[above].rank == q.rank + 1 {
                    out.push((q.id, above));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Derives faces, ranks, containment and boundaries from facet incidence.
pub fn face_lattice(model: &CornerModel) -> Result<FaceLattice, CornerError> {
    let violations = validate(model);
    if !violations.is_empty() {
        return Err(CornerError::ValidationFailed(violations));
    }
    let complex = &model.complex;
    let labels: Vec<Vec<Vec<usize>>> = (0..complex.num_dims())
        .map(|k| (0..complex.count(k)).map(|i| model.label_of((k, i))).collect())
        .collect();
    let mut label_sets: Vec<Vec<usize>> = labels.iter().flatten().cloned().collect();
    label_sets.sort();
    label_sets.dedup();

    struct Raw {
        label_set: Vec<usize>,
        open_cells: Vec<Cell>,
        cells: Subcomplex,
        key: (usize, Vec<usize>, Vec<Simplex>),
    }
    let mut raw = Vec::new();
    for set in &label_sets {
        for comp in components_of(complex, |(k, i)| &labels[k][i] == set) {
            let cells = Subcomplex::closure_of(complex, comp.iter().copied());
            let mut sorted: Vec<Simplex> = cells.cells().map(|c| complex.simplex(c).clone()).collect();
            sorted.sort();
            let rank = model.n.saturating_sub(set.len());
            raw.push(Raw {
                label_set: set.clone(),
                open_cells: comp,
                cells,
                key: (rank, set.clone(), sorted),
            });
        }
    }
    raw.sort_by(|a, b| a.key.cmp(&b.key));

    let mut faces: Vec<Face> = raw
        .into_iter()
        .enumerate()
        .map(|(id, r)| Face {
            id,
            name: String::new(),
            codim: r.label_set.len(),
            rank: model.n.saturating_sub(r.label_set.len()),
            label_set: r.label_set,
            boundary: Subcomplex::empty(complex),
            cells: r.cells,
            open_cells: r.open_cells,
            contains: Vec::new(),
            contained_in: Vec::new(),
        })
        .collect();

    // Names: facet names joined by '&', "M" for the interior, "#k" when a label set splits.
    for id in 0..faces.len() {
        let base = if faces[id].label_set.is_empty() {
            "M".to_string()
        } else {
            faces[id]
                .label_set
                .iter()
                .map(|&i| model.facets[i].0.as_str())
                .collect::<Vec<_>>()
                .join("&")
        };
        let siblings: Vec<usize> = faces
            .iter()
            .filter(|f| f.label_set == faces[id].label_set)
            .map(|f| f.id)
            .collect();
        faces[id].name = if siblings.len() > 1 {
            let k = siblings.iter().position(|&s| s == id).unwrap();
            format!("{base}#{k}")
        } else {
            base
        };
    }

    for p in 0..faces.len() {
        for q in 0..faces.len() {
            if p != q && faces[q].open_cells.iter().all(|&c| faces[p].cells.contains(c)) {
                faces[p].contains.push(q);
                faces[q].contained_in.push(p);
            }
        }
    }
    for p in 0..faces.len() {
        let mut boundary = Subcomplex::empty(complex);
        for &q in &faces[p].contains {
            boundary = boundary.union(&faces[q].cells);
        }
        faces[p].boundary = boundary;
    }
    Ok(FaceLattice {
        n: model.n,
        m: model.m(),
        faces,
    })
}

/// Ok when every face has the dimension its codimension predicts and its
/// boundary is exactly the complement of its open stratum.
pub fn check_nice(lattice: &FaceLattice) -> Result<(), CornerError> {
    let bad: Vec<String> = lattice
        .faces
        .iter()
        .filter(|f| {
            let dim_ok = f.dim().map(|d| d + f.codim) == Some(lattice.m);
            let open_ok = f.cells.cells().filter(|&c| !f.boundary.contains(c)).count()
                == f.open_cells.len()
                && f.open_cells.iter().all(|&c| !f.boundary.contains(c));
            !(dim_ok && open_ok)
        })
        .map(|f| f.name.clone())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CornerError::NotNice(bad))
    }
}

/// The face `p` as a corner model in its own right: its facets are the faces
/// one rank below it, and its torus rank is `rank p`.
pub fn restrict(model: &CornerModel, lattice: &FaceLattice, p: usize) -> Result<CornerModel, CornerError> {
    let face = lattice.face(p)?;
    if face.rank == 0 {
        return Err(CornerError::RankZeroFace(face.name.clone()));
    }
    let parent = &model.complex;
    let complex = SimplicialComplex::from_subcomplex(parent, &face.cells);
    let mut below: Vec<&Face> = lattice
        .faces
        .iter()
        .filter(|q| q.rank + 1 == face.rank && face.contains.contains(&q.id))
        .collect();
    // Facet order follows the parent's facet order.
    below.sort_by(|a, b| (&a.label_set, a.id).cmp(&(&b.label_set, b.id)));
    let facets = below
        .into_iter()
        .map(|q| {
            let cells = q.cells.cells().map(|c| complex.find(parent.simplex(c)).expect("face cells lie in the face"));
            (q.name.clone(), Subcomplex::closure_of(&complex, cells))
        })
        .collect();
    Ok(CornerModel::new(complex, face.rank, facets))
}

/// Barycentric subdivision of the complex, facets subdivided along with it.
pub fn subdivide(model: &CornerModel) -> CornerModel {
    let (sd, ids) = barycentric_subdivision(&model.complex);
    let facets = model
        .facets
        .iter()
        .map(|(name, f)| {
            let own = SimplicialComplex::from_subcomplex(&model.complex, f);
            let flags: Vec<Simplex> = own
                .maximal_simplices()
                .iter()
                .flat_map(|s| flags_of(&model.complex, s, &ids))
                .collect();
            (
                name.clone(),
                Subcomplex::generated(&sd, &flags).expect("flags of a facet lie in the subdivision"),
            )
        })
        .collect();
    CornerModel::new(sd, model.n, facets)
}

/// Product of two corner models with the staircase triangulation. Facets are
/// `F × B` (named `a.F`) and `A × G` (named `b.G`); the torus ranks add.
pub fn product(a: &CornerModel, b: &CornerModel) -> CornerModel {
    let va = a.complex.vertices();
    let vb = b.complex.vertices();
    let stride = vb.len();
    let pos = |vs: &[Vertex], s: &[Vertex]| -> Vec<usize> {
        s.iter().map(|v| vs.binary_search(v).expect("vertex of the complex")).collect()
    };
    let cross = |xs: &[Simplex], ys: &[Simplex]| -> Vec<Simplex> {
        let mut out = Vec::new();
        for x in xs {
            for y in ys {
                out.extend(staircase(&pos(&va, x), &pos(&vb, y), stride));
            }
        }
        out
    };
    let top_a = a.complex.maximal_simplices();
    let top_b = b.complex.maximal_simplices();
    let complex = SimplicialComplex::build(&cross(&top_a, &top_b)).expect("staircase simplices are valid");
    let mut facets = Vec::new();
    for (name, f) in &a.facets {
        let tops = SimplicialComplex::from_subcomplex(&a.complex, f).maximal_simplices();
        let sub = Subcomplex::generated(&complex, &cross(&tops, &top_b)).expect("product facet");
        facets.push((format!("a.{name}"), sub));
    }
    for (name, g) in &b.facets {
        let tops = SimplicialComplex::from_subcomplex(&b.complex, g).maximal_simplices();
        let sub = Subcomplex::generated(&complex, &cross(&top_a, &tops)).expect("product facet");
        facets.push((format!("b.{name}"), sub));
    }
    CornerModel::new(complex, a.n + b.n, facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> CornerModel {
        CornerModel::from_simplices(
            &[[0, 1, 2]],
            2,
            &[("F1", vec![vec![0, 1]]), ("F2", vec![vec![1, 2]]), ("F3", vec![vec![0, 2]])],
        )
        .unwrap()
    }

    #[test]
    fn triangle_validates_and_has_seven_faces() {
        let t = triangle();
        assert!(validate(&t).is_empty());
        let lat = face_lattice(&t).unwrap();
        assert_eq!(lat.faces.len(), 7);
        let ranks: Vec<usize> = lat.faces.iter().map(|f| f.rank).collect();
        assert_eq!(ranks, vec![0, 0, 0, 1, 1, 1, 2]);
        check_nice(&lat).unwrap();
        let m = lat.by_name("M").unwrap();
        assert_eq!(m.contains.len(), 6);
        assert_eq!(m.boundary.counts(), vec![3, 3]);
        let v = lat.by_name("F1&F3").unwrap();
        assert_eq!(v.contained_in.len(), 3);
    }

    #[test]
    fn facet_with_top_simplex_is_a_purity_violation() {
        let bad = CornerModel::from_simplices(&[[0, 1, 2]], 2, &[("F1", vec![vec![0, 1, 2]])]).unwrap();
        let v = validate(&bad);
        assert!(v.iter().any(|v| matches!(v, Violation::Purity { subject, .. } if subject == "F1")));
        assert!(matches!(face_lattice(&bad), Err(CornerError::ValidationFailed(_))));
    }

    #[test]
    fn label_bound() {
        // Vertex 1 lies in three facets.
        let bad = CornerModel::from_simplices(
            &[[0, 1, 2]],
            2,
            &[("A", vec![vec![0, 1]]), ("B", vec![vec![1, 2]]), ("C", vec![vec![0, 1]])],
        )
        .unwrap();
        assert!(validate(&bad)
            .iter()
            .any(|v| matches!(v, Violation::LabelBound { count: 3, n: 2, .. })));
    }

    #[test]
    fn facet_off_the_boundary() {
        let square = CornerModel::from_simplices(&[[0, 1, 2], [0, 2, 3]], 2, &[("D", vec![vec![0, 2]])]).unwrap();
        assert!(validate(&square)
            .iter()
            .any(|v| matches!(v, Violation::OffBoundary { .. })));
    }

    #[test]
    fn eye_is_nice() {
        let eye = CornerModel::from_simplices(
            &[[0, 1, 2], [0, 2, 3]],
            2,
            &[("A", vec![vec![0, 1], vec![1, 2]]), ("B", vec![vec![2, 3], vec![0, 3]])],
        )
        .unwrap();
        let lat = face_lattice(&eye).unwrap();
        check_nice(&lat).unwrap();
        // two corner points, two arcs, the interior
        assert_eq!(lat.faces.len(), 5);
        assert!(lat.by_name("A&B#0").is_some() && lat.by_name("A&B#1").is_some());
    }

    #[test]
    fn overlapping_facets_are_not_nice() {
        let m = CornerModel::from_simplices(
            &[[0, 1, 2], [0, 2, 3]],
            2,
            &[("A", vec![vec![0, 1], vec![1, 2]]), ("B", vec![vec![1, 2], vec![2, 3]])],
        )
        .unwrap();
        let lat = face_lattice(&m).unwrap();
        match check_nice(&lat) {
            Err(CornerError::NotNice(faces)) => assert!(faces.contains(&"A&B".to_string())),
            other => panic!("expected NotNice, got {other:?}"),
        }
    }

    #[test]
    fn restrict_to_edge_and_to_whole() {
        let t = triangle();
        let lat = face_lattice(&t).unwrap();
        let e = lat.by_name("F1").unwrap().id;
        let interval = restrict(&t, &lat, e).unwrap();
        assert_eq!(interval.n(), 1);
        assert_eq!(interval.m(), 1);
        assert_eq!(interval.facets().len(), 2);
        assert!(validate(&interval).is_empty());

        let whole = restrict(&t, &lat, lat.by_name("M").unwrap().id).unwrap();
        assert_eq!(whole, t);

        let v = lat.by_name("F1&F2").unwrap().id;
        assert!(matches!(restrict(&t, &lat, v), Err(CornerError::RankZeroFace(_))));
    }

    #[test]
    fn subdivision_and_product_stay_valid() {
        let t = triangle();
        let sd = subdivide(&t);
        assert!(validate(&sd).is_empty());
        assert_eq!(face_lattice(&sd).unwrap().faces.len(), 7);

        let i = CornerModel::from_simplices(&[[0, 1]], 1, &[("L", vec![vec![0]]), ("R", vec![vec![1]])]).unwrap();
        let sq = product(&i, &i);
        assert!(validate(&sq).is_empty());
        let lat = face_lattice(&sq).unwrap();
        check_nice(&lat).unwrap();
        assert_eq!(lat.faces.len(), 9);
        let prism = product(&t, &i);
        let lat = face_lattice(&prism).unwrap();
        check_nice(&lat).unwrap();
        // 6 vertices, 9 edges, 5 polygons, 1 solid
        assert_eq!(lat.faces.len(), 21);
    }

    #[test]
    fn lattice_invariants_on_triangle() {
        let t = triangle();
        let lat = face_lattice(&t).unwrap();
        for p in &lat.faces {
            assert_eq!(p.rank + p.codim, 2);
            for &q in &p.contains {
                let q = &lat.faces[q];
                assert!(p.label_set.iter().all(|l| q.label_set.contains(l)));
            }
        }
    }
}
