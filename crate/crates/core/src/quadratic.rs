//! Quadratic super-algebras `TV/(R)` and the operations on them.
//!
//! A presentation is a generator format together with the canonical
//! (RREF) relation subspace of the flattened `V (x) V`. Two presentations
//! are equal iff the formats match and the canonical relation subspaces
//! coincide; all identities below hold on the nose under the fixed basis
//! identifications.

use crate::error::{Error, Result};
use crate::linalg::{tensor_vec, unit_vec, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::superlin::{
    dual_pairing, is_even_on_square, koszul_swap, sigma23, super_antisymmetrizer,
    super_symmetrizer, Format,
};

/// Finitely generated quadratic super-algebra `TV/(R)`.
#[derive(Debug, Clone)]
pub struct QuadraticSuperAlgebra<S> {
    gen_format: Format,
    relations: Subspace<S>,
    names: Option<Vec<String>>,
}

impl<S> PartialEq for QuadraticSuperAlgebra<S>
where
    S: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        // Names are display metadata only.
        self.gen_format == other.gen_format && self.relations == other.relations
    }
}

impl<S: Scalar> QuadraticSuperAlgebra<S> {
    /// Presentation from explicit relation vectors in the flattened
    /// `d^2`-dimensional space. Each vector must sit in a single parity
    /// block of `V (x) V`.
    pub fn from_relations(format: Format, relation_vectors: Vec<Vec<S>>) -> Result<Self> {
        let d2 = format.dim() * format.dim();
        let tf = format.tensor(&format);
        for (index, v) in relation_vectors.iter().enumerate() {
            if v.len() != d2 {
                return Err(Error::DimensionMismatch(format!(
                    "relation vector {index} has length {}, expected {d2}",
                    v.len()
                )));
            }
            let mut block = None;
            for (pos, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    let p = tf.parity(pos);
                    if *block.get_or_insert(p) != p {
                        return Err(Error::NonHomogeneousRelation { index });
                    }
                }
            }
        }
        let relations = Subspace::span(d2, relation_vectors)?;
        Ok(QuadraticSuperAlgebra {
            gen_format: format,
            relations,
            names: None,
        })
    }

    /// Presentation from an already-canonical relation subspace. The
    /// subspace must be parity homogeneous; internal constructions
    /// guarantee this, so it is only debug-checked.
    pub fn from_relation_subspace(format: Format, relations: Subspace<S>) -> Self {
        debug_assert_eq!(relations.ambient_dim(), format.dim() * format.dim());
        debug_assert!(
            {
                let tf = format.tensor(&format);
                relations.basis_rows().iter().all(|v| {
                    let mut parities = v
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, _)| tf.parity(i));
                    match parities.next() {
                        None => true,
                        Some(p) => parities.all(|q| q == p),
                    }
                })
            },
            "relation subspace is not parity homogeneous"
        );
        QuadraticSuperAlgebra {
            gen_format: format,
            relations,
            names: None,
        }
    }

    /// Free algebra `TV`.
    pub fn free(format: Format) -> Self {
        let d2 = format.dim() * format.dim();
        QuadraticSuperAlgebra {
            gen_format: format,
            relations: Subspace::zero(d2),
            names: None,
        }
    }

    /// The ground field as a quadratic algebra (no generators).
    pub fn base_field() -> Self {
        Self::free(Format::empty())
    }

    /// `K[u]`: one even generator, no relations. Unit object for the
    /// white product.
    pub fn polynomial_line() -> Self {
        Self::free(Format::all_even(1))
    }

    /// `K[e]/(e^2)`: one even generator squaring to zero. Unit object for
    /// the black product.
    pub fn dual_numbers() -> Self {
        Self::from_relations(Format::all_even(1), vec![vec![S::one()]])
            .expect("single even relation")
    }

    /// Super-symmetric algebra `SV`: relations `xy = (-1)^{[x][y]} yx`,
    /// i.e. the image of the super-antisymmetrizer.
    pub fn symmetric(format: Format) -> Self {
        let a = super_antisymmetrizer::<S>(&format);
        Self::from_relation_subspace(format, Subspace::image(&a))
    }

    /// Super-exterior algebra: relations `xy = -(-1)^{[x][y]} yx`, the
    /// image of the super-symmetrizer.
    pub fn exterior(format: Format) -> Self {
        let s = super_symmetrizer::<S>(&format);
        Self::from_relation_subspace(format, Subspace::image(&s))
    }

    pub fn gen_format(&self) -> &Format {
        &self.gen_format
    }

    pub fn gen_count(&self) -> usize {
        self.gen_format.dim()
    }

    pub fn relations(&self) -> &Subspace<S> {
        &self.relations
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.gen_count());
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Vec<String> {
        match &self.names {
            Some(n) => n.clone(),
            None => (1..=self.gen_count()).map(|i| format!("x{i}")).collect(),
        }
    }

    fn embed_relation(v: &[S], own_dim: usize, total_dim: usize, offset: usize) -> Vec<S> {
        // Re-index a relation on generators [offset, offset+own_dim) into
        // the square space of `total_dim` generators.
        let mut out = vec![S::zero(); total_dim * total_dim];
        for i in 0..own_dim {
            for j in 0..own_dim {
                let c = &v[i * own_dim + j];
                if !c.is_zero() {
                    out[(i + offset) * total_dim + (j + offset)] = c.clone();
                }
            }
        }
        out
    }

    fn concat_product(&self, other: &Self, cross_sign_plus: Option<bool>) -> Self {
        let d = self.gen_count();
        let e = other.gen_count();
        let total = d + e;
        let format = self.gen_format.concat(&other.gen_format);
        let mut vectors: Vec<Vec<S>> = Vec::new();
        for r in self.relations.basis_rows() {
            vectors.push(Self::embed_relation(&r, d, total, 0));
        }
        for s in other.relations.basis_rows() {
            vectors.push(Self::embed_relation(&s, e, total, d));
        }
        if let Some(plus) = cross_sign_plus {
            // [V, W] is spanned by v (x) w - (-1)^{[v][w]} w (x) v on the
            // mixed basis pairs; [V, W]_+ takes the + sign.
            for i in 0..d {
                for b in 0..e {
                    let mut v = vec![S::zero(); total * total];
                    v[i * total + (d + b)] = S::one();
                    let koszul_odd =
                        self.gen_format.parity(i).is_odd() && other.gen_format.parity(b).is_odd();
                    v[(d + b) * total + i] = S::sign(koszul_odd) * S::sign(!plus);
                    vectors.push(v);
                }
            }
        }
        let relations = Subspace::span(total * total, vectors).expect("consistent dimensions");
        Self::from_relation_subspace(format, relations)
    }

    /// Tensor product: relations `R (+) S (+) [V, W]`.
    pub fn tensor(&self, other: &Self) -> Self {
        self.concat_product(other, Some(false))
    }

    /// Graded ("odd") tensor product: relations `R (+) S (+) [V, W]_+`.
    pub fn graded_tensor(&self, other: &Self) -> Self {
        self.concat_product(other, Some(true))
    }

    /// Coproduct (free product): relations `R (+) S` only.
    pub fn coproduct(&self, other: &Self) -> Self {
        self.concat_product(other, None)
    }

    fn manin_product(&self, other: &Self, white: bool) -> Self {
        let f = &self.gen_format;
        let g = &other.gen_format;
        let d = f.dim();
        let e = g.dim();
        let perm = sigma23::<S>(f, f, g, g);
        let mut vectors: Vec<Vec<S>> = Vec::new();
        for r in self.relations.basis_rows() {
            if white {
                // R (x) W^{(x)2}
                for wpair in 0..e * e {
                    vectors.push(perm.mul_vec(&tensor_vec(&r, &unit_vec(e * e, wpair))));
                }
            } else {
                // R (x) S
                for s in other.relations.basis_rows() {
                    vectors.push(perm.mul_vec(&tensor_vec(&r, &s)));
                }
            }
        }
        if white {
            // V^{(x)2} (x) S
            for vpair in 0..d * d {
                for s in other.relations.basis_rows() {
                    vectors.push(perm.mul_vec(&tensor_vec(&unit_vec(d * d, vpair), &s)));
                }
            }
        }
        let format = f.tensor(g);
        let total = format.dim() * format.dim();
        let relations = Subspace::span(total, vectors).expect("consistent dimensions");
        Self::from_relation_subspace(format, relations)
    }

    /// White Manin product: relations
    /// `sigma^(23)(R (x) W^{(x)2} + V^{(x)2} (x) S)`.
    pub fn white(&self, other: &Self) -> Self {
        self.manin_product(other, true)
    }

    /// Black Manin product: relations `sigma^(23)(R (x) S)`.
    pub fn black(&self, other: &Self) -> Self {
        self.manin_product(other, false)
    }

    /// Koszul dual `TV*/(R^perp)`, the annihilator taken through the
    /// signed dual pairing. The dual basis carries the same parities.
    pub fn koszul_dual(&self) -> Self {
        let pairing = dual_pairing::<S>(&self.gen_format);
        let relations = self
            .relations
            .annihilator(&pairing)
            .expect("dual pairing is nondegenerate");
        let mut out = Self::from_relation_subspace(self.gen_format.clone(), relations);
        // The dual basis carries the same parities; keep the display
        // names so that dualizing twice reproduces the presentation
        // verbatim.
        out.names = self.names.clone();
        out
    }

    /// Opposite algebra `TV/(sigma R)`.
    pub fn opposite(&self) -> Self {
        let sigma = koszul_swap::<S>(&self.gen_format, &self.gen_format);
        let vectors = self
            .relations
            .basis_rows()
            .iter()
            .map(|v| sigma.mul_vec(v))
            .collect();
        let relations =
            Subspace::span(self.relations.ambient_dim(), vectors).expect("same ambient");
        let mut out = Self::from_relation_subspace(self.gen_format.clone(), relations);
        out.names = self.names.clone();
        out
    }

    /// Parity change: flip every generator parity, keep the relations.
    pub fn parity_shift(&self) -> Self {
        let mut out = Self::from_relation_subspace(self.gen_format.flip(), self.relations.clone());
        out.names = self.names.clone();
        out
    }

    /// Transport the presentation through an even degree-1 change of
    /// basis: generator `i` is sent to the element with coordinates
    /// `map[(i, _)]`, and the relations are carried along by the induced
    /// map on tensor squares. The format is unchanged, so the map must be
    /// parity preserving.
    pub fn substitute_generators(&self, map: &Matrix<S>) -> Result<Self> {
        let d = self.gen_count();
        if map.rows() != d || map.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "substitution must be {d}x{d}, got {}x{}",
                map.rows(),
                map.cols()
            )));
        }
        for i in 0..d {
            for j in 0..d {
                if !map[(i, j)].is_zero() && self.gen_format.parity(i) != self.gen_format.parity(j)
                {
                    return Err(Error::ParityViolation(format!(
                        "substitution connects generators {i} and {j} of different parity"
                    )));
                }
            }
        }
        let sq = map.transpose().kron(&map.transpose());
        let vectors = self
            .relations
            .basis_rows()
            .iter()
            .map(|r| sq.mul_vec(r))
            .collect();
        let relations = Subspace::span(d * d, vectors)?;
        Ok(Self::from_relation_subspace(
            self.gen_format.clone(),
            relations,
        ))
    }

    /// Degree-`n` graded component. The ideal part is accumulated
    /// iteratively: `I_2 = R`, `I_k = I_{k-1} (x) V + V^{(x)(k-2)} (x) R`.
    pub fn component(&self, n: usize, cap: usize) -> Result<GradedComponent<S>> {
        let d = self.gen_count();
        let mut ambient: usize = 1;
        for _ in 0..n {
            ambient = ambient.saturating_mul(d);
            if ambient > cap {
                return Err(Error::SizeCapExceeded {
                    needed: ambient,
                    cap,
                });
            }
        }
        let mut ideal = match n {
            0 | 1 => Subspace::zero(ambient),
            _ => self.relations.clone(),
        };
        for k in 3..=n {
            let free_dim = d.pow(k as u32 - 2);
            let dim_k = free_dim * d * d;
            let mut vectors: Vec<Vec<S>> = Vec::new();
            for b in ideal.basis_rows() {
                for j in 0..d {
                    vectors.push(tensor_vec(&b, &unit_vec(d, j)));
                }
            }
            for w in 0..free_dim {
                for r in self.relations.basis_rows() {
                    vectors.push(tensor_vec(&unit_vec(free_dim, w), &r));
                }
            }
            ideal = Subspace::span(dim_k, vectors)?;
        }
        let quotient_dim = if n == 0 { 1 } else { ambient - ideal.dim() };
        Ok(GradedComponent {
            degree: n,
            ambient_dim: ambient,
            ideal_part: ideal,
            quotient_dim,
        })
    }

    /// Hilbert function `[h(0), ..., h(n_max)]`.
    pub fn hilbert(&self, n_max: usize, cap: usize) -> Result<Vec<usize>> {
        (0..=n_max)
            .map(|n| Ok(self.component(n, cap)?.quotient_dim))
            .collect()
    }
}

/// Degree-`n` piece of a quadratic super-algebra: the ideal part inside
/// `V^{(x)n}` and the dimension of the quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedComponent<S> {
    pub degree: usize,
    pub ambient_dim: usize,
    pub ideal_part: Subspace<S>,
    pub quotient_dim: usize,
}

/// Even idempotent `B` on `W (x) W`; presents the Koszul-dual pair of
/// algebras `X_B = TW*/(Im B*)` and `Xi_B = TW/(Im(1-B))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Idempotent<S> {
    format: Format,
    matrix: Matrix<S>,
}

impl<S: Scalar> Idempotent<S> {
    pub fn new(format: Format, matrix: Matrix<S>) -> Result<Self> {
        let d2 = format.dim() * format.dim();
        if matrix.rows() != d2 || matrix.cols() != d2 {
            return Err(Error::DimensionMismatch(format!(
                "idempotent must be {d2}x{d2}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.mul(&matrix) != matrix {
            return Err(Error::NotIdempotent);
        }
        if !is_even_on_square(&matrix, &format) {
            return Err(Error::NotEven("idempotent mixes parities".into()));
        }
        Ok(Idempotent { format, matrix })
    }

    /// `A_W`, the super-antisymmetrizer.
    pub fn antisymmetrizer(format: Format) -> Self {
        let matrix = super_antisymmetrizer::<S>(&format);
        Idempotent { format, matrix }
    }

    /// `S_W`, the super-symmetrizer.
    pub fn symmetrizer(format: Format) -> Self {
        let matrix = super_symmetrizer::<S>(&format);
        Idempotent { format, matrix }
    }

    pub fn zero(format: Format) -> Self {
        let d2 = format.dim() * format.dim();
        Idempotent {
            matrix: Matrix::zeros(d2, d2),
            format,
        }
    }

    pub fn one(format: Format) -> Self {
        let d2 = format.dim() * format.dim();
        Idempotent {
            matrix: Matrix::identity(d2),
            format,
        }
    }

    pub fn format(&self) -> &Format {
        &self.format
    }

    pub fn dim(&self) -> usize {
        self.format.dim()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// Entry `B^{st}_{ij}` with `(s,t)` the output pair.
    pub fn entry(&self, s: usize, t: usize, i: usize, j: usize) -> &S {
        let d = self.dim();
        &self.matrix[(s * d + t, i * d + j)]
    }

    /// Complementary idempotent `S = 1 - B`.
    pub fn complement(&self) -> Self {
        let id = Matrix::identity(self.matrix.rows());
        Idempotent {
            format: self.format.clone(),
            matrix: id.sub(&self.matrix),
        }
    }

    /// Signed dual `B* = P B^T P` where `P` is the dual pairing; an
    /// idempotent on `W* (x) W*` in the dual basis.
    pub fn signed_dual(&self) -> Self {
        let p = dual_pairing::<S>(&self.format);
        Idempotent {
            format: self.format.clone(),
            matrix: p.mul(&self.matrix.transpose()).mul(&p),
        }
    }

    /// `B^(21) = sigma B sigma`, the swap conjugate.
    pub fn swap_conjugate(&self) -> Self {
        let sigma = koszul_swap::<S>(&self.format, &self.format);
        Idempotent {
            format: self.format.clone(),
            matrix: sigma.mul(&self.matrix).mul(&sigma),
        }
    }

    /// `Pi B`: the operator transported to the parity-flipped space
    /// through the odd identification `W -> Pi W`. Applying that
    /// identification to both tensor factors contributes the
    /// first-factor parity signs, so the matrix is conjugated by
    /// `D[(i,j)] = (-1)^{k_i}`. This is the transport under which the
    /// universal Manin algebra, and hence the coend, is unchanged.
    pub fn parity_shift(&self) -> Self {
        let d = self.dim();
        let sign = Matrix::from_fn(d * d, d * d, |r, c| {
            if r == c {
                S::sign(self.format.parity(r / d).is_odd())
            } else {
                S::zero()
            }
        });
        Idempotent {
            format: self.format.flip(),
            matrix: sign.mul(&self.matrix).mul(&sign),
        }
    }

    /// `X_B = TW*/(Im B*)`, generators `x^i` with the same parities.
    pub fn x_algebra(&self) -> QuadraticSuperAlgebra<S> {
        let relations = Subspace::image(self.signed_dual().matrix());
        QuadraticSuperAlgebra::from_relation_subspace(self.format.clone(), relations)
    }

    /// `Xi_B = TW/(Im(1-B))`, generators `psi_i`.
    pub fn xi_algebra(&self) -> QuadraticSuperAlgebra<S> {
        let relations = Subspace::image(self.complement().matrix());
        QuadraticSuperAlgebra::from_relation_subspace(self.format.clone(), relations)
    }
}

/// Does the degree-1 map `f1` (coefficient of target generator `j` in the
/// image of source generator `i` at `f1[(i, j)]`) extend to a graded
/// homomorphism of the presented algebras? The map must be even;
/// extension holds iff `(f (x) f) R` lands in the target's relation
/// subspace.
pub fn extends_to_homomorphism<S: Scalar>(
    f1: &Matrix<S>,
    source: &QuadraticSuperAlgebra<S>,
    target: &QuadraticSuperAlgebra<S>,
) -> Result<bool> {
    if f1.rows() != source.gen_count() || f1.cols() != target.gen_count() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, expected {}x{}",
            f1.rows(),
            f1.cols(),
            source.gen_count(),
            target.gen_count()
        )));
    }
    for i in 0..f1.rows() {
        for j in 0..f1.cols() {
            if !f1[(i, j)].is_zero()
                && source.gen_format().parity(i) != target.gen_format().parity(j)
            {
                return Err(Error::ParityViolation(format!(
                    "generator {i} maps onto generator {j} of different parity"
                )));
            }
        }
    }
    // Image of v (x) w is f(v) (x) f(w); coordinates via the Kronecker
    // square of f1 transposed (vectors are columns).
    let sq = f1.transpose().kron(&f1.transpose());
    Ok(source
        .relations
        .basis_rows()
        .iter()
        .all(|r| target.relations.contains(&sq.mul_vec(r))))
}
