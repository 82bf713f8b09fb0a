//! Example models: small discs, strips and the configuration space of
//! triangles with sides of length at most one, the last one through an exact
//! polytope pipeline over `Q(√3)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bcomplex::{AbstractBData, AbstractBlock, AbstractFace};
use crate::corners::{CornerError, CornerModel};
use crate::scomplex::{Simplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{name} needs m >= {min}, got {got}")]
    ResolutionTooSmall { name: String, min: usize, got: usize },
    #[error("polygon resolution {0} is not supported (only m = 6)")]
    UnsupportedResolution(usize),
    #[error("halfspaces do not bound a polytope")]
    UnboundedPolytope,
    #[error("polytope has dimension {got}, expected {want}")]
    DegenerateDimension { got: usize, want: usize },
    #[error("unknown example {0}")]
    UnknownExample(String),
    #[error("bad parameter {0}")]
    BadParam(String),
    #[error(transparent)]
    Corner(#[from] CornerError),
}

/// `a + b√3` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadraticNumber { a, b }
    }

    pub fn int(a: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::zero())
    }

    /// `a + b√3` with integer parts.
    pub fn ints(a: i64, b: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn ratio(num: i64, den: i64, sqrt3_num: i64, sqrt3_den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::new(BigInt::from(sqrt3_num), BigInt::from(sqrt3_den)),
        )
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign, from `a² ≶ 3b²` when the parts disagree.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * BigRational::from_integer(3.into());
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn recip(&self) -> Option<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(3.into());
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.a / &norm, -&self.b / &norm))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√3", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{} - {}√3", self.a, -&self.b),
            _ => write!(f, "{} + {}√3", self.a, self.b),
        }
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: Self) -> QuadraticNumber {
        QuadraticNumber::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: Self) -> QuadraticNumber {
        QuadraticNumber::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: Self) -> QuadraticNumber {
        let three = BigRational::from_integer(3.into());
        QuadraticNumber::new(
            &self.a * &o.a + &self.b * &o.b * three,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-&self.a, -&self.b)
    }
}

impl Add for QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: Self) -> QuadraticNumber {
        &self + &o
    }
}

impl Sub for QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: Self) -> QuadraticNumber {
        &self - &o
    }
}

impl Mul for QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: Self) -> QuadraticNumber {
        &self * &o
    }
}

pub type Point = Vec<QuadraticNumber>;

fn dot(x: &[QuadraticNumber], y: &[QuadraticNumber]) -> QuadraticNumber {
    x.iter().zip(y).fold(QuadraticNumber::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// `⟨normal, x⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: QuadraticNumber,
    pub group: usize,
}

impl Halfspace {
    pub fn slack(&self, x: &[QuadraticNumber]) -> QuadraticNumber {
        &self.offset - &dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[QuadraticNumber]) -> bool {
        self.slack(x).signum() != Ordering::Less
    }

    pub fn is_tight(&self, x: &[QuadraticNumber]) -> bool {
        self.slack(x).is_zero()
    }
}

/// The constraints `|u₁|, |u₂|, |u₁ + u₂| ≤ 1` in coordinates `(u₁, u₂) ∈ R⁴`,
/// with the unit disc replaced by the regular `m`-gon through `1` and `e^{±iπ/3}`.
pub fn mgon_halfspaces(m: usize) -> Result<Vec<Halfspace>, BuildError> {
    if m != 6 {
        return Err(BuildError::UnsupportedResolution(m));
    }
    // outward normals of the hexagon at angles (2k+1)π/6, scaled by 2; the apothem becomes √3
    let normals = [
        (QuadraticNumber::ints(0, 1), QuadraticNumber::int(1)),
        (QuadraticNumber::int(0), QuadraticNumber::int(2)),
        (QuadraticNumber::ints(0, -1), QuadraticNumber::int(1)),
        (QuadraticNumber::ints(0, -1), QuadraticNumber::int(-1)),
        (QuadraticNumber::int(0), QuadraticNumber::int(-2)),
        (QuadraticNumber::ints(0, 1), QuadraticNumber::int(-1)),
    ];
    let offset = QuadraticNumber::ints(0, 1);
    let z = QuadraticNumber::zero();
    let mut out = Vec::with_capacity(3 * m);
    for group in 1..=3 {
        for (x, y) in &normals {
            let normal = match group {
                1 => vec![x.clone(), y.clone(), z.clone(), z.clone()],
                2 => vec![z.clone(), z.clone(), x.clone(), y.clone()],
                _ => vec![x.clone(), y.clone(), x.clone(), y.clone()],
            };
            out.push(Halfspace {
                normal,
                offset: offset.clone(),
                group,
            });
        }
    }
    Ok(out)
}

/// Solves the square system `rows · x = rhs`, or `None` when singular.
fn solve(mut rows: Vec<Point>, mut rhs: Vec<QuadraticNumber>) -> Option<Point> {
    let d = rows.len();
    for col in 0..d {
        let piv = (col..d).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, piv);
        rhs.swap(col, piv);
        let inv = rows[col][col].recip()?;
        for c in col..d {
            rows[col][c] = &rows[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..d {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..d {
                let v = &rows[col][c] * &f;
                rows[r][c] = &rows[r][c] - &v;
            }
            let v = &rhs[col] * &f;
            rhs[r] = &rhs[r] - &v;
        }
    }
    Some(rhs)
}

/// Rank of a list of vectors over `Q(√3)`.
fn rank(mut rows: Vec<Point>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][col].recip().expect("nonzero pivot");
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] * &inv;
            for c in col..width {
                let v = &rows[r][c] * &f;
                rows[i][c] = &rows[i][c] - &v;
            }
        }
        r += 1;
    }
    r
}

fn affine_dim(points: &[&Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((base, rest)) => rank(
            rest.iter()
                .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
                .collect(),
        ),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Every feasible intersection point of `d` bounding hyperplanes, sorted.
pub fn polytope_vertices(halfspaces: &[Halfspace]) -> Vec<Point> {
    let d = halfspaces.first().map_or(0, |h| h.normal.len());
    let mut found = BTreeSet::new();
    for subset in subsets(halfspaces.len(), d) {
        let rows = subset.iter().map(|&i| halfspaces[i].normal.clone()).collect();
        let rhs = subset.iter().map(|&i| halfspaces[i].offset.clone()).collect();
        if let Some(x) = solve(rows, rhs) {
            if halfspaces.iter().all(|h| h.contains(&x)) {
                found.insert(x);
            }
        }
    }
    found.into_iter().collect()
}

/// Face structure and pulling triangulation of a polytope.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Point>,
    /// Faces as sorted vertex lists, keyed by dimension.
    pub faces: BTreeMap<usize, BTreeSet<Vec<usize>>>,
    facets_of: HashMap<Vec<usize>, Vec<Vec<usize>>>,
    dim_of: HashMap<Vec<usize>, usize>,
}

impl Polytope {
    pub fn new(halfspaces: Vec<Halfspace>) -> Result<Self, BuildError> {
        let d = halfspaces.first().map_or(0, |h| h.normal.len());
        let vertices = polytope_vertices(&halfspaces);
        let all: Vec<&Point> = vertices.iter().collect();
        let got = if vertices.is_empty() { 0 } else { affine_dim(&all) };
        if vertices.is_empty() || got != d {
            return Err(BuildError::DegenerateDimension { got, want: d });
        }
        let tight: Vec<Vec<bool>> = vertices
            .iter()
            .map(|v| halfspaces.iter().map(|h| h.is_tight(v)).collect())
            .collect();
        let mut poly = Polytope {
            halfspaces,
            vertices,
            faces: BTreeMap::new(),
            facets_of: HashMap::new(),
            dim_of: HashMap::new(),
        };
        let top: Vec<usize> = (0..poly.vertices.len()).collect();
        poly.dim_of.insert(top.clone(), d);
        let mut stack = vec![top];
        while let Some(face) = stack.pop() {
            if poly.facets_of.contains_key(&face) {
                continue;
            }
            let fd = poly.dim_of[&face];
            poly.faces.entry(fd).or_default().insert(face.clone());
            let mut facets = BTreeSet::new();
            if fd > 0 {
                for h in 0..poly.halfspaces.len() {
                    let sub: Vec<usize> = face.iter().copied().filter(|&v| tight[v][h]).collect();
                    if sub.is_empty() || sub.len() == face.len() || facets.contains(&sub) {
                        continue;
                    }
                    let sd = match poly.dim_of.get(&sub) {
                        Some(&sd) => sd,
                        None => {
                            let pts: Vec<&Point> = sub.iter().map(|&v| &poly.vertices[v]).collect();
                            affine_dim(&pts)
                        }
                    };
                    if sd + 1 == fd {
                        poly.dim_of.insert(sub.clone(), sd);
                        facets.insert(sub);
                    }
                }
            }
            let facets: Vec<Vec<usize>> = facets.into_iter().collect();
            stack.extend(facets.iter().cloned());
            poly.facets_of.insert(face, facets);
        }
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.halfspaces.first().map_or(0, |h| h.normal.len())
    }

    pub fn facets_of(&self, face: &[usize]) -> &[Vec<usize>] {
        self.facets_of.get(face).map_or(&[], Vec::as_slice)
    }

    /// Pulling triangulation of every face: cone from the smallest vertex over
    /// the triangulated facets that miss it.
    pub fn pulling_triangulation(&self, face: &[usize], memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(face) {
            return t.clone();
        }
        let out = if face.len() == 1 {
            vec![face.to_vec()]
        } else {
            let apex = face[0];
            let mut out = Vec::new();
            for g in self.facets_of(face) {
                if g.contains(&apex) {
                    continue;
                }
                for s in self.pulling_triangulation(g, memo) {
                    let mut t = Vec::with_capacity(s.len() + 1);
                    t.push(apex);
                    t.extend(s);
                    out.push(t);
                }
            }
            out
        };
        memo.insert(face.to_vec(), out.clone());
        out
    }

    /// Triangulated boundary: the union of the triangulations of the facets.
    pub fn boundary_simplices(&self) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        let mut out = BTreeSet::new();
        if let Some(facets) = self.faces.get(&(self.dim() - 1)) {
            for f in facets {
                for s in self.pulling_triangulation(f, &mut memo) {
                    let mut s = s;
                    s.sort_unstable();
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Triangulated polytope, coned from the origin (which must be interior),
/// with facet `F_i` spanned by the boundary simplices on a group-`i` hyperplane.
pub fn polytope_model(halfspaces: &[Halfspace]) -> Result<CornerModel, BuildError> {
    let origin: Point = vec![QuadraticNumber::zero(); halfspaces.first().map_or(0, |h| h.normal.len())];
    if !halfspaces.iter().all(|h| h.slack(&origin).signum() == Ordering::Greater) {
        return Err(BuildError::UnboundedPolytope);
    }
    let poly = Polytope::new(halfspaces.to_vec())?;
    let d = poly.dim();
    let boundary = poly.boundary_simplices();
    let sphere = SimplicialComplex::build(
        &boundary.iter().map(|s| s.iter().map(|&v| v as u32).collect::<Vec<_>>()).collect::<Vec<_>>(),
    )
    .map_err(CornerError::from)?;
    // bounded faces only would leave a contractible complex here
    let chi_sphere = if (d - 1) % 2 == 0 { 2 } else { 0 };
    if sphere.euler_characteristic() != chi_sphere {
        return Err(BuildError::UnboundedPolytope);
    }
    let cone = poly.vertices.len() as u32;
    let solid: Vec<Simplex> = boundary
        .iter()
        .map(|s| {
            let mut t: Simplex = s.iter().map(|&v| v as u32).collect();
            t.push(cone);
            t
        })
        .collect();
    let groups: BTreeSet<usize> = halfspaces.iter().map(|h| h.group).collect();
    let mut facets: Vec<(String, Vec<Simplex>)> = Vec::new();
    for g in groups {
        let gens: Vec<Simplex> = boundary
            .iter()
            .filter(|s| {
                halfspaces
                    .iter()
                    .filter(|h| h.group == g)
                    .any(|h| s.iter().all(|&v| h.is_tight(&poly.vertices[v])))
            })
            .map(|s| s.iter().map(|&v| v as u32).collect())
            .collect();
        facets.push((format!("F{g}"), gens));
    }
    let named: Vec<(&str, Vec<Simplex>)> = facets.iter().map(|(n, g)| (n.as_str(), g.clone())).collect();
    Ok(CornerModel::from_simplices(&solid, groups_len(halfspaces), &named)?)
}

fn groups_len(halfspaces: &[Halfspace]) -> usize {
    halfspaces.iter().map(|h| h.group).collect::<BTreeSet<_>>().len()
}

/// Configuration space of planar triangles with sides at most one, `n = 3`.
pub fn triangle_space(m: usize) -> Result<CornerModel, BuildError> {
    polytope_model(&mgon_halfspaces(m)?)
}

fn model(maximal: &[Simplex], n: usize, facets: Vec<(String, Vec<Simplex>)>) -> CornerModel {
    let named: Vec<(&str, Vec<Simplex>)> = facets.iter().map(|(n, g)| (n.as_str(), g.clone())).collect();
    CornerModel::from_simplices(maximal, n, &named).expect("builder simplices are well formed")
}

/// The unit interval with its two endpoints as facets, `n = 1`.
pub fn interval() -> CornerModel {
    model(&[vec![0, 1]], 1, vec![("F1".into(), vec![vec![0]]), ("F2".into(), vec![vec![1]])])
}

/// A 2-simplex with its three edges as facets, `n = 2`.
pub fn triangle() -> CornerModel {
    model(
        &[vec![0, 1, 2]],
        2,
        vec![
            ("F1".into(), vec![vec![0, 1]]),
            ("F2".into(), vec![vec![1, 2]]),
            ("F3".into(), vec![vec![0, 2]]),
        ],
    )
}

pub fn square() -> CornerModel {
    polygon(4).expect("k = 4 is valid")
}

/// Fan-triangulated `k`-gon, one facet per edge, `n = 2`.
pub fn polygon(k: usize) -> Result<CornerModel, BuildError> {
    if k < 3 {
        return Err(BuildError::ResolutionTooSmall { name: "polygon".into(), min: 3, got: k });
    }
    let k32 = k as u32;
    let tris: Vec<Simplex> = (1..k32 - 1).map(|i| vec![0, i, i + 1]).collect();
    let facets = (0..k32)
        .map(|i| (format!("F{}", i + 1), vec![vec![i, (i + 1) % k32]]))
        .collect();
    Ok(model(&tris, 2, facets))
}

/// `S¹ × [0, 1]` on two rails of `m` vertices; the boundary circles are the facets, `n = 1`.
pub fn cylinder(m: usize) -> Result<CornerModel, BuildError> {
    if m < 3 {
        return Err(BuildError::ResolutionTooSmall { name: "cylinder".into(), min: 3, got: m });
    }
    let m = m as u32;
    let mut tris = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        tris.push(vec![i, j, m + i]);
        tris.push(vec![j, m + i, m + j]);
    }
    let bottom = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    let top = (0..m).map(|i| vec![m + i, m + (i + 1) % m]).collect();
    Ok(model(&tris, 1, vec![("F1".into(), bottom), ("F2".into(), top)]))
}

/// Möbius strip on `m` vertices with its boundary circle as the only facet, `n = 1`.
pub fn mobius(m: usize) -> Result<CornerModel, BuildError> {
    if m < 5 {
        return Err(BuildError::ResolutionTooSmall { name: "mobius".into(), min: 5, got: m });
    }
    // cyclic strip on an odd number of vertices; for even m, subdivide the interior edge {0, 1}
    let odd = if m % 2 == 1 { m } else { m - 1 } as u32;
    let mut tris: Vec<Simplex> = (0..odd).map(|i| vec![i, (i + 1) % odd, (i + 2) % odd]).collect();
    if m.is_multiple_of(2) {
        let v = odd;
        tris.retain(|t| !(t.contains(&0) && t.contains(&1)));
        tris.extend([vec![0, 2, v], vec![1, 2, v], vec![odd - 1, 0, v], vec![odd - 1, 1, v]]);
    }
    let rim = (0..odd).map(|i| vec![i, (i + 2) % odd]).collect();
    Ok(model(&tris, 1, vec![("F1".into(), rim)]))
}

/// The triangle-space face data, entered by hand: two circles of triple
/// points, three cylinders, three solid tori and the 4-ball.
pub fn triangle_space_abstract() -> AbstractBData {
    let face = |name: &str, rank, cohomology: Vec<usize>, contains: Vec<String>| AbstractFace {
        name: name.to_string(),
        rank,
        cohomology,
        contains,
    };
    let block = |from: &str, to: &str, degree| AbstractBlock {
        from: from.to_string(),
        to: to.to_string(),
        degree,
        matrix: vec![vec![1]],
    };
    let points = ["F1&F2&F3#0", "F1&F2&F3#1"];
    let edges = [("F1&F2", 1, 2), ("F1&F3", 1, 3), ("F2&F3", 2, 3)];
    let mut faces: Vec<AbstractFace> = points.iter().map(|p| face(p, 0, vec![1, 1], vec![])).collect();
    let mut d1 = Vec::new();
    for (q, _, _) in edges {
        faces.push(face(q, 1, vec![0, 1, 1], points.iter().map(|p| p.to_string()).collect()));
        for p in points {
            d1.push(block(p, q, 0));
            d1.push(block(p, q, 1));
        }
    }
    for i in 1..=3 {
        let name = format!("F{i}");
        let below: Vec<&str> = edges.iter().filter(|e| e.1 == i || e.2 == i).map(|e| e.0).collect();
        faces.push(face(&name, 2, vec![0, 0, 1, 1], below.iter().map(|q| q.to_string()).collect()));
        for q in below {
            d1.push(block(q, &name, 1));
            d1.push(block(q, &name, 2));
        }
        d1.push(block(&name, "M", 3));
    }
    faces.push(face("M", 3, vec![0, 0, 0, 0, 1], vec!["F1".into(), "F2".into(), "F3".into()]));
    AbstractBData { n: 3, faces, d1 }
}

pub fn abstract_presets() -> Vec<(&'static str, AbstractBData)> {
    vec![("triangle-space-abstract", triangle_space_abstract())]
}

/// A built example.
#[derive(Clone, Debug)]
pub enum Built {
    Geometric(CornerModel),
    Abstract(AbstractBData),
}

/// `(name, parameters, description)` for every example.
pub const CATALOGUE: &[(&str, &str, &str)] = &[
    ("interval", "", "unit interval, two endpoint facets, n = 1"),
    ("triangle", "", "2-simplex with three edge facets, n = 2"),
    ("square", "", "square with four edge facets, n = 2"),
    ("polygon", "k=5", "k-gon with k edge facets, n = 2"),
    ("cylinder", "m=4", "annulus with its two boundary circles as facets, n = 1"),
    ("mobius", "m=5", "Moebius strip with its boundary circle as facet, n = 1"),
    ("triangle-space", "m=6", "configuration space of triangles with sides at most 1, n = 3"),
    ("triangle-space-abstract", "", "face data of the triangle space, entered by hand"),
];

fn param(params: &BTreeMap<String, String>, key: &str, default: usize) -> Result<usize, BuildError> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| BuildError::BadParam(format!("{key}={v}"))),
    }
}

/// Builds a catalogue entry by name.
pub fn build(name: &str, params: &BTreeMap<String, String>) -> Result<Built, BuildError> {
    let allowed: &[&str] = match name {
        "polygon" => &["k"],
        "cylinder" | "mobius" | "triangle-space" => &["m"],
        _ => &[],
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(BuildError::BadParam(format!("{k} is not a parameter of {name}")));
    }
    Ok(match name {
        "interval" => Built::Geometric(interval()),
        "triangle" => Built::Geometric(triangle()),
        "square" => Built::Geometric(square()),
        "polygon" => Built::Geometric(polygon(param(params, "k", 5)?)?),
        "cylinder" => Built::Geometric(cylinder(param(params, "m", 4)?)?),
        "mobius" => Built::Geometric(mobius(param(params, "m", 5)?)?),
        "triangle-space" => Built::Geometric(triangle_space(param(params, "m", 6)?)?),
        _ => match abstract_presets().into_iter().find(|(n, _)| *n == name) {
            Some((_, data)) => Built::Abstract(data),
            None => return Err(BuildError::UnknownExample(name.to_string())),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::{face_lattice, validate};

    fn q(a: i64, b: i64) -> QuadraticNumber {
        QuadraticNumber::ints(a, b)
    }

    #[test]
    fn quadratic_sign_and_order() {
        assert_eq!(q(2, -1).signum(), Ordering::Greater); // 2 > √3
        assert_eq!(q(-2, 1).signum(), Ordering::Less);
        assert_eq!(q(1, -1).signum(), Ordering::Less);
        assert_eq!(q(0, 0).signum(), Ordering::Equal);
        assert_eq!(QuadraticNumber::ratio(7, 4, -1, 1).signum(), Ordering::Greater); // 1.75 > 1.732
        assert_eq!(QuadraticNumber::ratio(17, 10, -1, 1).signum(), Ordering::Less);
        assert!(q(1, 0) < q(0, 1));
        let x = q(3, 2);
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, q(1, 0));
        assert!(q(0, 0).recip().is_none());
        assert_eq!(q(1, 1).to_string(), "1 + 1√3");
    }

    #[test]
    fn hexagon_constraints() {
        let hs = mgon_halfspaces(6).unwrap();
        assert_eq!(hs.len(), 18);
        for g in 1..=3 {
            assert_eq!(hs.iter().filter(|h| h.group == g).count(), 6);
        }
        assert!(matches!(mgon_halfspaces(8), Err(BuildError::UnsupportedResolution(8))));
        let origin = vec![QuadraticNumber::zero(); 4];
        assert!(hs.iter().all(|h| !h.is_tight(&origin) && h.contains(&origin)));
        // u₁ = 1, u₂ = e^{2πi/3}
        let half = QuadraticNumber::ratio(-1, 2, 0, 1);
        let x = vec![q(1, 0), q(0, 0), half, QuadraticNumber::ratio(0, 1, 1, 2)];
        assert!(hs.iter().all(|h| h.contains(&x)));
        for g in 1..=3 {
            assert!(hs.iter().any(|h| h.group == g && h.is_tight(&x)));
        }
    }

    #[test]
    fn square_polytope_pipeline() {
        let one = |sign: i64, axis: usize, group| Halfspace {
            normal: (0..2).map(|i| if i == axis { q(sign, 0) } else { q(0, 0) }).collect(),
            offset: q(1, 0),
            group,
        };
        let hs = vec![one(1, 0, 1), one(-1, 0, 1), one(1, 1, 2), one(-1, 1, 2)];
        let poly = Polytope::new(hs.clone()).unwrap();
        assert_eq!(poly.vertices.len(), 4);
        assert_eq!(poly.faces[&1].len(), 4);
        assert_eq!(poly.boundary_simplices().len(), 4);
        let m = polytope_model(&hs).unwrap();
        assert!(validate(&m).is_empty());
        // opposite sides share a group, so each facet has two components
        assert_eq!(face_lattice(&m).unwrap().faces.len(), 9);
    }

    #[test]
    fn open_halfspaces_are_rejected() {
        let hs = vec![Halfspace { normal: vec![q(1, 0), q(0, 0)], offset: q(1, 0), group: 1 }];
        assert!(polytope_model(&hs).is_err());
    }

    #[test]
    fn small_builders_validate() {
        for m in [interval(), triangle(), square(), polygon(7).unwrap(), cylinder(3).unwrap(), mobius(5).unwrap(), mobius(6).unwrap()] {
            assert!(validate(&m).is_empty());
        }
        assert!(matches!(cylinder(2), Err(BuildError::ResolutionTooSmall { .. })));
        assert!(matches!(mobius(4), Err(BuildError::ResolutionTooSmall { .. })));
        let mob = mobius(6).unwrap();
        assert_eq!(mob.complex().euler_characteristic(), 0);
        assert_eq!(face_lattice(&mob).unwrap().faces.len(), 2);
    }

    #[test]
    fn catalogue_names_build() {
        for (name, _, _) in CATALOGUE.iter().filter(|c| c.0 != "triangle-space") {
            assert!(build(name, &BTreeMap::new()).is_ok(), "{name}");
        }
        assert!(matches!(build("nope", &BTreeMap::new()), Err(BuildError::UnknownExample(_))));
        let bad: BTreeMap<String, String> = [("m".to_string(), "x".to_string())].into();
        assert!(matches!(build("mobius", &bad), Err(BuildError::BadParam(_))));
        assert!(matches!(build("square", &bad), Err(BuildError::BadParam(_))));
    }
}
