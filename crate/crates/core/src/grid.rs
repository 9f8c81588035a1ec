//! Points, functions and varieties in `F_q^n`.
//!
//! Points are indexed big-endian: the first coordinate is the most
//! significant digit of the canonical index `sum idx(x_i) q^(n-1-i)`.
//! Counting-measure norms live on [`GridFunction`]; normalized-measure norms
//! over a point subset live on [`Variety`].

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};
use crate::field::{Field, FieldElement, FieldSpec};
use crate::numeric::{lp, weighted_norm, Exponent};

/// The ambient space `F_q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    field: Field,
    dim: usize,
    size: usize,
}

/// A point of `F_q^n` as its coordinate list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<FieldElement>);

impl Point {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl Space {
    pub fn new(field: &Field, dim: usize) -> Result<Space> {
        if dim == 0 {
            return usage("dimension must be positive");
        }
        let size = (field.q() as usize)
            .checked_pow(dim as u32)
            .filter(|&s| s <= 1 << 32)
            .ok_or_else(|| Error::Usage(format!("F_{}^{dim} is too large", field.q())))?;
        Ok(Space {
            field: field.clone(),
            dim,
            size,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `q^dim`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn q(&self) -> usize {
        self.field.q() as usize
    }

    /// `F_q^(dim+1)`, the target of the S-operator.
    pub fn lifted(&self) -> Space {
        Space::new(&self.field, self.dim + 1).expect("lifted space fits")
    }

    pub fn index(&self, x: &Point) -> Result<usize> {
        if x.dim() != self.dim {
            return usage(format!(
                "point has dimension {}, expected {}",
                x.dim(),
                self.dim
            ));
        }
        let q = self.q();
        x.0.iter().try_fold(0usize, |acc, c| {
            if c.index() as usize >= q {
                return usage(format!("coordinate {c} is not in F_{q}"));
            }
            Ok(acc * q + c.index() as usize)
        })
    }

    pub fn point(&self, idx: usize) -> Point {
        let mut coords = vec![FieldElement::default(); self.dim];
        self.fill_coords(idx, &mut coords);
        Point(coords)
    }

    /// Writes the coordinates of `idx` into `out` (length `dim`).
    #[inline]
    pub fn fill_coords(&self, mut idx: usize, out: &mut [FieldElement]) {
        let q = self.q();
        for c in out.iter_mut().rev() {
            *c = self.field.element((idx % q) as u32).expect("digit below q");
            idx /= q;
        }
    }

    /// Index of `t * x` for the point with index `idx`.
    #[inline]
    pub fn scale_index(&self, t: FieldElement, idx: usize) -> usize {
        let q = self.q();
        let mut rest = idx;
        let mut place = 1;
        let mut out = 0;
        for _ in 0..self.dim {
            let c = self
                .field
                .element((rest % q) as u32)
                .expect("digit below q");
            out += self.field.mul(t, c).index() as usize * place;
            place *= q;
            rest /= q;
        }
        out
    }

    /// `sum x_i^2`.
    pub fn norm_value(&self, x: &Point) -> FieldElement {
        let f = &self.field;
        x.0.iter().fold(f.zero(), |acc, &c| f.add(acc, f.mul(c, c)))
    }

    /// `x . y`.
    pub fn dot(&self, x: &Point, y: &Point) -> FieldElement {
        let f = &self.field;
        x.0.iter()
            .zip(&y.0)
            .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    pub fn sub(&self, x: &Point, y: &Point) -> Point {
        Point(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| self.field.sub(a, b))
                .collect(),
        )
    }

    /// `norm_value` of every point, in canonical order.
    pub fn norm_table(&self) -> Vec<FieldElement> {
        let f = &self.field;
        let q = self.q();
        let squares: Vec<FieldElement> = f.elements().map(|x| f.mul(x, x)).collect();
        let mut table = squares.clone();
        for _ in 1..self.dim {
            let mut next = Vec::with_capacity(table.len() * q);
            for &prefix in &table {
                next.extend(squares.iter().map(|&s| f.add(prefix, s)));
            }
            table = next;
        }
        table
    }

    /// `|S_j^(dim-1)|` for every `j`, by convolving the one-dimensional
    /// square counts `dim` times.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        let f = &self.field;
        let q = self.q();
        let mut base = vec![0u64; q];
        for x in f.elements() {
            base[f.mul(x, x).index() as usize] += 1;
        }
        let mut counts = base.clone();
        for _ in 1..self.dim {
            let mut next = vec![0u64; q];
            for a in f.elements() {
                let ca = counts[a.index() as usize];
                if ca == 0 {
                    continue;
                }
                for b in f.elements() {
                    next[f.add(a, b).index() as usize] += ca * base[b.index() as usize];
                }
            }
            counts = next;
        }
        counts
    }

    /// The lexicographically least point with `norm_value == j`.
    pub fn least_point_on_sphere(&self, j: FieldElement) -> Option<Point> {
        self.norm_table()
            .iter()
            .position(|&n| n == j)
            .map(|idx| self.point(idx))
    }

    /// `|E|` distinct points sampled uniformly without replacement.
    pub fn sample_points<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<Point>> {
        if count > self.size {
            return usage(format!(
                "cannot sample {count} distinct points from F_{}^{} ({} points)",
                self.q(),
                self.dim,
                self.size
            ));
        }
        Ok(rand::seq::index::sample(rng, self.size, count)
            .into_iter()
            .map(|idx| self.point(idx))
            .collect())
    }
}

/// `{ ||x - y|| : x, y in E }`.
pub fn distance_set(space: &Space, points: &[Point]) -> BTreeSet<FieldElement> {
    let mut out = BTreeSet::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i..] {
            out.insert(space.norm_value(&space.sub(x, y)));
        }
    }
    out
}

fn file_spec(q: u32, alpha: Option<u32>, modulus: Option<Vec<u32>>) -> Result<FieldSpec> {
    let spec = match modulus {
        Some(m) => FieldSpec::with_modulus(q, m)?,
        None => FieldSpec::for_order(q)?,
    };
    if let Some(a) = alpha {
        if a != spec.alpha() {
            return usage(format!("alpha {a} does not match q = {q}"));
        }
    }
    Ok(spec)
}

fn check_values(values: &[Complex64]) -> Result<()> {
    if values
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return usage("function values must be finite");
    }
    Ok(())
}

/// A dense complex-valued function on `F_q^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    space: Space,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct GridFile {
    q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
    dim: usize,
    values: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct RadialFile {
    q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
    dim: usize,
    radial: Vec<[f64; 2]>,
}

impl GridFunction {
    pub fn new(space: &Space, values: Vec<Complex64>) -> Result<GridFunction> {
        if values.len() != space.size() {
            return usage(format!(
                "expected {} values, got {}",
                space.size(),
                values.len()
            ));
        }
        check_values(&values)?;
        Ok(GridFunction {
            space: space.clone(),
            values,
        })
    }

    pub fn zeros(space: &Space) -> GridFunction {
        GridFunction {
            space: space.clone(),
            values: vec![Complex64::new(0.0, 0.0); space.size()],
        }
    }

    pub fn from_fn(space: &Space, f: impl FnMut(usize) -> Complex64) -> GridFunction {
        let values = (0..space.size()).map(f).collect();
        GridFunction {
            space: space.clone(),
            values,
        }
    }

    pub fn delta(space: &Space, idx: usize) -> GridFunction {
        let mut g = GridFunction::zeros(space);
        g.values[idx] = Complex64::new(1.0, 0.0);
        g
    }

    /// Indicator of the points of `v`.
    pub fn indicator(v: &Variety) -> GridFunction {
        let mut g = GridFunction::zeros(&v.space);
        for &i in &v.points {
            g.values[i] = Complex64::new(1.0, 0.0);
        }
        g
    }

    /// Entries with real and imaginary parts uniform in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> GridFunction {
        GridFunction::from_fn(space, |_| {
            Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// `alpha * self + beta * other`.
    pub fn combine(
        &self,
        alpha: Complex64,
        other: &GridFunction,
        beta: Complex64,
    ) -> Result<GridFunction> {
        if self.space != other.space {
            return usage("functions live on different spaces");
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        GridFunction::new(&self.space, values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Counting-measure `l^p` norm.
    pub fn lp_norm(&self, p: Exponent) -> f64 {
        lp(&self.values, p)
    }

    /// `true` if the function is constant on every sphere.
    pub fn is_radial(&self) -> bool {
        self.radial_part().is_some()
    }

    /// The shell values, if the function is radial.
    pub fn radial_part(&self) -> Option<RadialFunction> {
        let q = self.space.q();
        let mut shell: Vec<Option<Complex64>> = vec![None; q];
        for (idx, n) in self.space.norm_table().into_iter().enumerate() {
            let v = self.values[idx];
            match &mut shell[n.index() as usize] {
                slot @ None => *slot = Some(v),
                Some(w) if *w == v => {}
                Some(_) => return None,
            }
        }
        let values = shell.into_iter().map(|v| v.unwrap_or_default()).collect();
        Some(RadialFunction {
            space: self.space.clone(),
            values,
        })
    }

    pub fn to_json(&self) -> String {
        let spec = self.space.field().spec();
        let file = GridFile {
            q: spec.q(),
            alpha: Some(spec.alpha()),
            modulus: Some(spec.modulus().to_vec()),
            dim: self.space.dim(),
            values: self.values.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&file).expect("grid function serializes")
    }

    pub fn from_json(text: &str) -> Result<GridFunction> {
        let file: GridFile = serde_json::from_str(text)?;
        let field = Field::new(file_spec(file.q, file.alpha, file.modulus)?);
        let space = Space::new(&field, file.dim)?;
        let values = file
            .values
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        GridFunction::new(&space, values)
    }
}

/// A radial function on `F_q^d`, stored as its value on each sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialFunction {
    space: Space,
    values: Vec<Complex64>,
}

impl RadialFunction {
    pub fn new(space: &Space, values: Vec<Complex64>) -> Result<RadialFunction> {
        if values.len() != space.q() {
            return usage(format!(
                "radial function needs {} shell values, got {}",
                space.q(),
                values.len()
            ));
        }
        check_values(&values)?;
        Ok(RadialFunction {
            space: space.clone(),
            values,
        })
    }

    /// The indicator of the sphere `S_j`.
    pub fn shell(space: &Space, j: FieldElement) -> RadialFunction {
        let mut values = vec![Complex64::new(0.0, 0.0); space.q()];
        values[j.index() as usize] = Complex64::new(1.0, 0.0);
        RadialFunction {
            space: space.clone(),
            values,
        }
    }

    pub fn random<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> RadialFunction {
        let values = (0..space.q())
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        RadialFunction {
            space: space.clone(),
            values,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Shell values indexed by the canonical index of the norm value.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn expand(&self) -> GridFunction {
        let values = self
            .space
            .norm_table()
            .into_iter()
            .map(|n| self.values[n.index() as usize])
            .collect();
        GridFunction {
            space: self.space.clone(),
            values,
        }
    }

    /// `(sum_j |S_j| |M_j|^p)^(1/p)`; equals the norm of the expansion.
    pub fn lp_norm(&self, p: Exponent) -> f64 {
        let sizes = self.space.sphere_sizes();
        weighted_norm(
            sizes
                .iter()
                .zip(&self.values)
                .map(|(&n, z)| (n as f64, z.norm())),
            p,
        )
    }

    pub fn to_json(&self) -> String {
        let spec = self.space.field().spec();
        let file = RadialFile {
            q: spec.q(),
            alpha: Some(spec.alpha()),
            modulus: Some(spec.modulus().to_vec()),
            dim: self.space.dim(),
            radial: self.values.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&file).expect("radial function serializes")
    }

    pub fn from_json(text: &str) -> Result<RadialFunction> {
        let file: RadialFile = serde_json::from_str(text)?;
        let field = Field::new(file_spec(file.q, file.alpha, file.modulus)?);
        let space = Space::new(&field, file.dim)?;
        let values = file
            .radial
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        RadialFunction::new(&space, values)
    }
}

/// How a [`Variety`] was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyTag {
    Sphere { j: FieldElement },
    HVariety { j: FieldElement },
    LinePunctured { through: Point },
    Subspace { basis: Vec<Point> },
    Custom,
}

/// A point subset of `F_q^n`, as sorted canonical indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Variety {
    space: Space,
    points: Vec<usize>,
    tag: VarietyTag,
}

impl Variety {
    pub fn custom(space: &Space, mut points: Vec<usize>) -> Result<Variety> {
        points.sort_unstable();
        points.dedup();
        if points.last().is_some_and(|&i| i >= space.size()) {
            return usage("variety point index out of range");
        }
        Ok(Variety {
            space: space.clone(),
            points,
            tag: VarietyTag::Custom,
        })
    }

    /// `S_j^(d-1) = { x in F_q^d : sum x_k^2 = j }`.
    pub fn sphere(space: &Space, j: FieldElement) -> Result<Variety> {
        if space.dim() < 2 {
            return usage("spheres need dimension at least 2");
        }
        let points = space
            .norm_table()
            .into_iter()
            .enumerate()
            .filter_map(|(i, n)| (n == j).then_some(i))
            .collect();
        Ok(Variety {
            space: space.clone(),
            points,
            tag: VarietyTag::Sphere { j },
        })
    }

    /// `H_j^d = { (x, x_{d+1}) : ||x|| = j x_{d+1}^2 }` in `F_q^(d+1)`,
    /// where `base` is `F_q^d`.
    pub fn h_variety(base: &Space, j: FieldElement) -> Result<Variety> {
        if j.is_zero() {
            return domain("homogeneous varieties need a nonzero j");
        }
        if base.dim() < 2 {
            return usage("homogeneous varieties need d >= 2");
        }
        let f = base.field();
        let q = base.q();
        let targets: Vec<FieldElement> = f.elements().map(|u| f.mul(j, f.mul(u, u))).collect();
        let mut points = Vec::new();
        for (x, n) in base.norm_table().into_iter().enumerate() {
            for (u, &t) in targets.iter().enumerate() {
                if n == t {
                    points.push(x * q + u);
                }
            }
        }
        Ok(Variety {
            space: base.lifted(),
            points,
            tag: VarietyTag::HVariety { j },
        })
    }

    /// `{ t x0 : t != 0 }`.
    pub fn line_punctured(space: &Space, x0: &Point) -> Result<Variety> {
        let idx = space.index(x0)?;
        if idx == 0 {
            return domain("a punctured line needs a nonzero direction");
        }
        let mut points: Vec<usize> = space
            .field()
            .units()
            .map(|t| space.scale_index(t, idx))
            .collect();
        points.sort_unstable();
        Ok(Variety {
            space: space.clone(),
            points,
            tag: VarietyTag::LinePunctured {
                through: x0.clone(),
            },
        })
    }

    /// The span of `basis`; rejects linearly dependent bases.
    pub fn subspace(space: &Space, basis: &[Point]) -> Result<Variety> {
        if basis.is_empty() {
            return usage("subspace basis must be nonempty");
        }
        let f = space.field();
        let mut span: BTreeSet<usize> = BTreeSet::from([0]);
        for b in basis {
            space.index(b)?;
            let mut next = BTreeSet::new();
            for &v in &span {
                let vp = space.point(v);
                for t in f.elements() {
                    let p = Point(
                        vp.0.iter()
                            .zip(&b.0)
                            .map(|(&a, &c)| f.add(a, f.mul(t, c)))
                            .collect(),
                    );
                    next.insert(space.index(&p)?);
                }
            }
            span = next;
        }
        let expected = (space.q() as u64).pow(basis.len() as u32);
        if span.len() as u64 != expected {
            return domain("subspace basis is linearly dependent");
        }
        Ok(Variety {
            space: space.clone(),
            points: span.into_iter().collect(),
            tag: VarietyTag::Subspace {
                basis: basis.to_vec(),
            },
        })
    }

    /// Span of the first `k` standard basis vectors.
    pub fn coordinate_subspace(space: &Space, k: usize) -> Result<Variety> {
        if k == 0 || k > space.dim() {
            return usage(format!(
                "subspace dimension {k} not in [1, {}]",
                space.dim()
            ));
        }
        let f = space.field();
        let basis: Vec<Point> = (0..k)
            .map(|i| {
                let mut c = vec![f.zero(); space.dim()];
                c[i] = f.one();
                Point(c)
            })
            .collect();
        Variety::subspace(space, &basis)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn tag(&self) -> &VarietyTag {
        &self.tag
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.points.binary_search(&idx).is_ok()
    }

    /// `(|V|^-1 sum_{x in V} |f(x)|^r)^(1/r)`, or the max over `V` at `r = inf`.
    pub fn lr_norm(&self, f: &GridFunction, r: Exponent) -> Result<f64> {
        if self.points.is_empty() {
            return domain("normalized norm over an empty variety");
        }
        if f.space() != &self.space {
            return usage("function and variety live on different spaces");
        }
        let w = 1.0 / self.points.len() as f64;
        Ok(weighted_norm(
            self.points.iter().map(|&i| (w, f.values()[i].norm())),
            r,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(q: u32, d: usize) -> Space {
        Space::new(&Field::of_order(q).unwrap(), d).unwrap()
    }

    fn pt(s: &Space, c: &[i64]) -> Point {
        Point(c.iter().map(|&x| s.field().from_int(x)).collect())
    }

    #[test]
    fn norm_value_examples() {
        let s3 = space(3, 2);
        assert_eq!(s3.norm_value(&pt(&s3, &[1, 1])).index(), 2);
        let s5 = space(5, 2);
        assert_eq!(s5.norm_value(&pt(&s5, &[1, 2])).index(), 0);
        assert_eq!(s5.norm_value(&pt(&s5, &[0, 0])).index(), 0);
    }

    #[test]
    fn index_round_trip_and_big_endian() {
        let s = space(5, 3);
        assert_eq!(s.index(&pt(&s, &[0, 0, 1])).unwrap(), 1);
        assert_eq!(s.index(&pt(&s, &[1, 0, 0])).unwrap(), 25);
        for idx in 0..s.size() {
            assert_eq!(s.index(&s.point(idx)).unwrap(), idx);
        }
        assert!(s.index(&pt(&s, &[1, 0])).is_err());
    }

    #[test]
    fn norm_table_matches_pointwise() {
        let s = space(9, 3);
        let table = s.norm_table();
        for (idx, n) in table.iter().enumerate() {
            assert_eq!(*n, s.norm_value(&s.point(idx)));
        }
    }

    #[test]
    fn sphere_examples() {
        let s3 = space(3, 2);
        let f = s3.field().clone();
        let v = Variety::sphere(&s3, f.zero()).unwrap();
        assert_eq!(v.points(), &[0]);
        let s5 = space(5, 2);
        assert_eq!(Variety::sphere(&s5, s5.field().zero()).unwrap().len(), 9);
        assert!(Variety::sphere(&space(5, 1), f.zero()).is_err());
    }

    #[test]
    fn sphere_partition_and_sizes() {
        for q in [3, 5, 7, 9, 11, 13] {
            for d in 2..=4 {
                let s = space(q, d);
                let sizes = s.sphere_sizes();
                assert_eq!(sizes.iter().sum::<u64>(), s.size() as u64);
                if d <= 3 {
                    for j in s.field().elements() {
                        let v = Variety::sphere(&s, j).unwrap();
                        assert_eq!(v.len() as u64, sizes[j.index() as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn h_variety_fibres_over_last_coordinate() {
        let s3 = space(3, 2);
        let f3 = s3.field().clone();
        let h = Variety::h_variety(&s3, f3.one()).unwrap();
        // slice x3 = 0 is S_0^1 = {(0,0)}
        let slice: Vec<usize> = h.points().iter().copied().filter(|i| i % 3 == 0).collect();
        assert_eq!(slice, vec![0]);
        assert!(matches!(
            Variety::h_variety(&s3, f3.zero()),
            Err(Error::Domain(_))
        ));

        for q in [3, 5, 7, 9] {
            let s = space(q, 2);
            let f = s.field().clone();
            let sizes = s.sphere_sizes();
            for j in f.units() {
                let h = Variety::h_variety(&s, j).unwrap();
                let fibred: u64 = f
                    .elements()
                    .map(|u| sizes[f.mul(j, f.mul(u, u)).index() as usize])
                    .sum();
                assert_eq!(h.len() as u64, fibred);
                // brute force membership
                let lifted = s.lifted();
                let brute = (0..lifted.size())
                    .filter(|&i| {
                        let p = lifted.point(i);
                        let x = Point(p.0[..2].to_vec());
                        let u = p.0[2];
                        s.norm_value(&x) == f.mul(j, f.mul(u, u))
                    })
                    .count();
                assert_eq!(h.len(), brute);
            }
        }
        let s5 = space(5, 2);
        assert_eq!(Variety::h_variety(&s5, s5.field().one()).unwrap().len(), 25);
    }

    #[test]
    fn lines_and_subspaces() {
        let s5 = space(5, 2);
        let line = Variety::line_punctured(&s5, &pt(&s5, &[1, 2])).unwrap();
        assert_eq!(line.len(), 4);
        assert!(!line.contains(0));
        assert!(Variety::line_punctured(&s5, &pt(&s5, &[0, 0])).is_err());

        let s3 = space(3, 2);
        assert_eq!(
            Variety::subspace(&s3, &[pt(&s3, &[1, 1])]).unwrap().len(),
            3
        );
        let s33 = space(3, 3);
        let plane = Variety::subspace(&s33, &[pt(&s33, &[1, 0, 1]), pt(&s33, &[0, 1, 2])]).unwrap();
        assert_eq!(plane.len(), 9);
        assert!(Variety::subspace(&s33, &[pt(&s33, &[1, 0, 1]), pt(&s33, &[2, 0, 2])]).is_err());
        assert_eq!(Variety::coordinate_subspace(&s33, 3).unwrap().len(), 27);
    }

    #[test]
    fn norms_on_grid_and_variety() {
        let s = space(5, 2);
        let delta = GridFunction::delta(&s, 7);
        for p in [1.0, 1.5, 2.0, 7.0] {
            assert!((delta.lp_norm(Exponent::Finite(p)) - 1.0).abs() < 1e-15);
        }
        let ones = GridFunction::from_fn(&s, |_| Complex64::new(1.0, 0.0));
        assert!((ones.lp_norm(Exponent::Finite(3.0)) - 25f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert_eq!(ones.lp_norm(Exponent::Infinity), 1.0);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = GridFunction::random(&s, &mut rng);
        let direct: f64 = g.values().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((g.lp_norm(Exponent::Finite(2.0)) - direct).abs() < 1e-12);

        let f = s.field().clone();
        let sphere = Variety::sphere(&s, f.one()).unwrap();
        let c = GridFunction::from_fn(&s, |_| Complex64::new(0.0, -2.5));
        assert!((sphere.lr_norm(&c, Exponent::Finite(3.0)).unwrap() - 2.5).abs() < 1e-12);
        let a = sphere.points()[0];
        let spike =
            GridFunction::from_fn(&s, |i| Complex64::new(if i == a { 25.0 } else { 0.0 }, 0.0));
        let expect = 25.0 / (sphere.len() as f64).sqrt();
        assert!((sphere.lr_norm(&spike, Exponent::Finite(2.0)).unwrap() - expect).abs() < 1e-12);
        let avg: f64 = sphere
            .points()
            .iter()
            .map(|&i| g.values()[i].norm_sqr())
            .sum::<f64>()
            / sphere.len() as f64;
        assert!((sphere.lr_norm(&g, Exponent::Finite(2.0)).unwrap() - avg.sqrt()).abs() < 1e-12);

        let empty = Variety::custom(&s, vec![]).unwrap();
        assert!(matches!(
            empty.lr_norm(&g, Exponent::Finite(2.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn radial_functions() {
        let s = space(5, 2);
        let f = s.field().clone();
        let shell = RadialFunction::shell(&s, f.one());
        let sizes = s.sphere_sizes();
        assert!((shell.lp_norm(Exponent::Finite(1.0)) - sizes[1] as f64).abs() < 1e-12);
        let ones = RadialFunction::new(&s, vec![Complex64::new(1.0, 0.0); 5]).unwrap();
        assert!((ones.lp_norm(Exponent::Finite(1.0)) - 25.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for q in [3, 5, 9] {
            for d in [2, 3] {
                let s = space(q, d);
                let m = RadialFunction::random(&s, &mut rng);
                let g = m.expand();
                assert!(g.is_radial());
                assert_eq!(g.radial_part().unwrap(), m);
                for p in [
                    Exponent::Finite(1.0),
                    Exponent::Finite(2.5),
                    Exponent::Infinity,
                ] {
                    let a = m.lp_norm(p);
                    let b = g.lp_norm(p);
                    assert!((a - b).abs() <= 1e-12 * b.max(1.0));
                }
            }
        }
        let g = GridFunction::delta(&s, 1);
        assert!(!g.is_radial());
    }

    #[test]
    fn distance_sets() {
        let s = space(7, 2);
        let one = vec![pt(&s, &[3, 4])];
        assert_eq!(
            distance_set(&s, &one).into_iter().collect::<Vec<_>>(),
            vec![s.field().zero()]
        );
        for q in [3, 5, 7, 9, 11, 13] {
            for d in [2, 3] {
                let s = space(q, d);
                if s.size() > 400 {
                    continue;
                }
                let all: Vec<Point> = (0..s.size()).map(|i| s.point(i)).collect();
                assert_eq!(distance_set(&s, &all).len(), q as usize);
            }
        }
    }

    #[test]
    fn distance_set_is_translation_invariant() {
        let s = space(11, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = s.sample_points(15, &mut rng).unwrap();
        let shift = pt(&s, &[4, 9]);
        let f = s.field();
        let moved: Vec<Point> = e
            .iter()
            .map(|x| {
                Point(
                    x.0.iter()
                        .zip(&shift.0)
                        .map(|(&a, &b)| f.add(a, b))
                        .collect(),
                )
            })
            .collect();
        let d1 = distance_set(&s, &e);
        assert!(d1.contains(&f.zero()));
        assert_eq!(d1, distance_set(&s, &moved));
        assert!(s.sample_points(122, &mut rng).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = space(9, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = GridFunction::random(&s, &mut rng);
        let back = GridFunction::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let m = RadialFunction::random(&s, &mut rng);
        assert_eq!(RadialFunction::from_json(&m.to_json()).unwrap(), m);
        assert!(GridFunction::from_json(r#"{"q":9,"dim":2,"values":[[1,0]]}"#).is_err());
        assert!(
            GridFunction::from_json(r#"{"q":4,"dim":1,"values":[[1,0],[0,0],[0,0],[0,0]]}"#)
                .is_err()
        );
        let short = r#"{"q":3,"dim":1,"values":[[1,0],[0,0],[0,2]]}"#;
        assert_eq!(
            GridFunction::from_json(short).unwrap().values()[2],
            Complex64::new(0.0, 2.0)
        );
    }
}
