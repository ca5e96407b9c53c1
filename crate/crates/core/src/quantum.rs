//! Quantum representations, quantum linear actions and the lift of
//! classical modules.
//!
//! A presented bialgebra is a quadratic super-algebra together with a
//! degree-1 comultiplication and counit; a quantum representation on the
//! space presented by an idempotent `B` is a first-order multiplicative
//! `B`-Manin matrix over that bialgebra. Representations and coactions
//! determine each other through `delta(x^i) = sum_j M^i_j (x) x^j`.

use crate::error::{Error, Result};
use crate::linalg::{tensor_vec, Matrix};
use crate::manin::{coend, is_manin, AlgebraMatrix, Ambient, CoendComonoid};
use crate::quadratic::{extends_to_homomorphism, Idempotent, QuadraticSuperAlgebra};
use crate::scalar::Scalar;
use crate::superlin::Format;

/// A quadratic super-algebra with comonoid data on its generators.
///
/// `comult` has one row per generator; column `(j, k)` (flat row-major)
/// holds the coefficient of `x^j (x) x^k` in `Delta(x^i)`. `counit` holds
/// the scalars `eps(x^i)`. Construction validates that `Delta` is even
/// and extends to a graded homomorphism `A -> A ∘ A`, and that `eps`
/// kills the relations.
#[derive(Debug, Clone, PartialEq)]
pub struct BialgebraPresentation<S> {
    algebra: QuadraticSuperAlgebra<S>,
    comult: Matrix<S>,
    counit: Vec<S>,
}

impl<S: Scalar> BialgebraPresentation<S> {
    pub fn new(
        algebra: QuadraticSuperAlgebra<S>,
        comult: Matrix<S>,
        counit: Vec<S>,
    ) -> Result<Self> {
        let g = algebra.gen_count();
        if comult.rows() != g || comult.cols() != g * g {
            return Err(Error::InvalidBialgebra(format!(
                "comultiplication must be {g} x {}, got {} x {}",
                g * g,
                comult.rows(),
                comult.cols()
            )));
        }
        if counit.len() != g {
            return Err(Error::InvalidBialgebra(format!(
                "counit must have {g} coefficients, got {}",
                counit.len()
            )));
        }
        let fmt = algebra.gen_format();
        for i in 0..g {
            for col in 0..g * g {
                if comult[(i, col)].is_zero() {
                    continue;
                }
                let (j, k) = (col / g, col % g);
                if fmt.parity(j) + fmt.parity(k) != fmt.parity(i) {
                    return Err(Error::InvalidBialgebra(format!(
                        "comultiplication of generator {i} has a wrong-parity component at ({j},{k})"
                    )));
                }
            }
            if !counit[i].is_zero() && fmt.parity(i).is_odd() {
                return Err(Error::InvalidBialgebra(format!(
                    "counit does not vanish on odd generator {i}"
                )));
            }
        }
        // eps kills the relations: substituting eps(x^i) eps(x^j) into
        // every relation vector gives zero.
        for rel in algebra.relations().basis_rows() {
            let mut acc = S::zero();
            for (flat, coeff) in rel.iter().enumerate() {
                if !coeff.is_zero() {
                    let e = counit[flat / g].clone() * counit[flat % g].clone();
                    if !e.is_zero() {
                        acc = acc + coeff.clone() * e;
                    }
                }
            }
            if !acc.is_zero() {
                return Err(Error::InvalidBialgebra(
                    "counit does not kill the relations".into(),
                ));
            }
        }
        // Delta extends to a graded homomorphism A -> A ∘ A.
        let white = algebra.white(&algebra);
        if !extends_to_homomorphism(&comult, &algebra, &white)? {
            return Err(Error::InvalidBialgebra(
                "comultiplication does not extend to the quadratic quotient".into(),
            ));
        }
        Ok(BialgebraPresentation {
            algebra,
            comult,
            counit,
        })
    }

    pub fn algebra(&self) -> &QuadraticSuperAlgebra<S> {
        &self.algebra
    }

    pub fn comult(&self) -> &Matrix<S> {
        &self.comult
    }

    pub fn counit(&self) -> &[S] {
        &self.counit
    }

    /// `Delta` of a degree-1 element given by its generator coordinates.
    pub fn comult_of(&self, coords: &[S]) -> Vec<S> {
        let g = self.algebra.gen_count();
        let mut out = vec![S::zero(); g * g];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (col, o) in out.iter_mut().enumerate() {
                let e = &self.comult[(i, col)];
                if !e.is_zero() {
                    *o = o.clone() + c.clone() * e.clone();
                }
            }
        }
        out
    }

    /// `eps` of a degree-1 element.
    pub fn counit_of(&self, coords: &[S]) -> S {
        coords
            .iter()
            .zip(&self.counit)
            .filter(|(c, e)| !c.is_zero() && !e.is_zero())
            .fold(S::zero(), |acc, (c, e)| acc + c.clone() * e.clone())
    }

    /// Same comultiplication and counit coordinates over the opposite
    /// algebra.
    pub fn opposite(&self) -> Result<Self> {
        BialgebraPresentation::new(
            self.algebra.opposite(),
            self.comult.clone(),
            self.counit.clone(),
        )
    }

    /// Reversed comultiplication `Delta^cop = sigma . Delta`.
    pub fn coopposite(&self) -> Result<Self> {
        let g = self.algebra.gen_count();
        let fmt = self.algebra.gen_format();
        let cop = Matrix::from_fn(g, g * g, |i, col| {
            let (j, k) = (col / g, col % g);
            let negative = fmt.parity(j).is_odd() && fmt.parity(k).is_odd();
            let src = &self.comult[(i, k * g + j)];
            if src.is_zero() {
                S::zero()
            } else {
                S::sign(negative) * src.clone()
            }
        });
        BialgebraPresentation::new(self.algebra.clone(), cop, self.counit.clone())
    }
}

impl<S: Scalar> CoendComonoid<S> {
    /// The coend as a presented bialgebra; the comonoid axioms were
    /// verified when the coend was built.
    pub fn host(&self) -> BialgebraPresentation<S> {
        BialgebraPresentation {
            algebra: self.algebra().clone(),
            comult: self.comult().clone(),
            counit: self.counit().to_vec(),
        }
    }
}

/// Is `M` multiplicative over the presented bialgebra:
/// `Delta(M^i_j) = sum_l M^i_l (x) M^l_j` and `eps(M^i_j) = delta^i_j`?
pub fn check_multiplicative<S: Scalar>(
    m: &AlgebraMatrix<S>,
    host: &BialgebraPresentation<S>,
) -> Result<bool> {
    let alg = m.ambient().algebra().ok_or_else(|| {
        Error::Invalid("multiplicativity needs first-order entries over the host".into())
    })?;
    if alg != host.algebra() {
        return Err(Error::Invalid(
            "matrix ambient is not the host algebra".into(),
        ));
    }
    if m.row_format() != m.col_format() {
        return Err(Error::DimensionMismatch(
            "multiplicative matrices are square".into(),
        ));
    }
    let d = m.rows();
    let g = host.algebra().gen_count();
    for i in 0..d {
        for j in 0..d {
            let lhs = host.comult_of(m.entry(i, j));
            let mut rhs = vec![S::zero(); g * g];
            for l in 0..d {
                let prod = tensor_vec(m.entry(i, l), m.entry(l, j));
                for (r, p) in rhs.iter_mut().zip(&prod) {
                    if !p.is_zero() {
                        *r = r.clone() + p.clone();
                    }
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
            let eps = host.counit_of(m.entry(i, j));
            let want = if i == j { S::one() } else { S::zero() };
            if eps != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A quantum representation: a first-order multiplicative `B`-Manin
/// matrix over a presented bialgebra. Both conditions are checked at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumRepresentation<S> {
    host: BialgebraPresentation<S>,
    b: Idempotent<S>,
    matrix: AlgebraMatrix<S>,
}

impl<S: Scalar> QuantumRepresentation<S> {
    pub fn new(
        host: BialgebraPresentation<S>,
        b: Idempotent<S>,
        matrix: AlgebraMatrix<S>,
    ) -> Result<Self> {
        if matrix.row_format() != b.format() || matrix.col_format() != b.format() {
            return Err(Error::DimensionMismatch(
                "representation matrix must be square of the idempotent's format".into(),
            ));
        }
        let verdict = is_manin(&matrix, &b, &b)?;
        if !verdict.holds {
            return Err(Error::Invalid(format!(
                "matrix is not a Manin matrix: first violation at {:?}",
                verdict.violation.map(|v| (v.s, v.t, v.c, v.d))
            )));
        }
        if !check_multiplicative(&matrix, &host)? {
            return Err(Error::Invalid(
                "matrix is not multiplicative over the host".into(),
            ));
        }
        Ok(QuantumRepresentation { host, b, matrix })
    }

    pub fn host(&self) -> &BialgebraPresentation<S> {
        &self.host
    }

    pub fn idempotent(&self) -> &Idempotent<S> {
        &self.b
    }

    pub fn matrix(&self) -> &AlgebraMatrix<S> {
        &self.matrix
    }

    /// The universal representation of `coend(B)` on `X_B`.
    pub fn universal(b: &Idempotent<S>) -> Result<Self> {
        let c = coend(b)?;
        QuantumRepresentation::new(c.host(), b.clone(), c.universal_matrix())
    }

    /// Opposite representation: the same matrix regarded over the
    /// opposite host, with the swap-conjugated idempotent `B^(21)`.
    pub fn opposite(&self) -> Result<Self> {
        let host = self.host.opposite()?;
        let b = Idempotent::new(
            self.b.format().clone(),
            self.b.swap_conjugate().matrix().clone(),
        )?;
        let matrix = self
            .matrix
            .with_ambient(Ambient::Algebra(host.algebra().clone()))?;
        QuantumRepresentation::new(host, b, matrix)
    }

    /// Coopposite representation: `M^ist` over the reversed
    /// comultiplication. The representation space is the Koszul dual
    /// `Xi_B = TW/(Im(1-B))`, which as an X-algebra is presented by the
    /// idempotent `(1-B)* = 1 - B*`.
    pub fn coopposite(&self) -> Result<Self> {
        let host = self.host.coopposite()?;
        let b = Idempotent::new(
            self.b.format().clone(),
            self.b.signed_dual().complement().matrix().clone(),
        )?;
        let matrix = self.matrix.inverse_super_transpose();
        QuantumRepresentation::new(host, b, matrix)
    }

    /// Parity change: same matrix and host, all format parities flipped.
    pub fn parity_change(&self) -> Result<Self> {
        let b = Idempotent::new(
            self.b.format().flip(),
            self.b.parity_shift().matrix().clone(),
        )?;
        QuantumRepresentation::new(self.host.clone(), b, self.matrix.formats_flipped())
    }

    /// The coaction `delta(x^i) = sum_j M^i_j (x) x^j`; verifies the
    /// coaction axioms on generators.
    pub fn to_action(&self) -> Result<QuantumAction<S>> {
        let action = QuantumAction {
            host: self.host.clone(),
            b: self.b.clone(),
            coeffs: self.matrix.clone(),
        };
        action.verify_axioms()?;
        Ok(action)
    }
}

/// Quantum linear action of a presented bialgebra on `X_B`: the coaction
/// is stored through its coefficient matrix, `delta(x^i) =
/// sum_j coeffs^i_j (x) x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumAction<S> {
    host: BialgebraPresentation<S>,
    b: Idempotent<S>,
    coeffs: AlgebraMatrix<S>,
}

impl<S: Scalar> QuantumAction<S> {
    /// Build coaction data from raw per-generator vectors in
    /// `A_1 (x) (X_B)_1` (length `g * d`, row-major over `(p, j)`).
    pub fn from_raw(
        host: BialgebraPresentation<S>,
        b: Idempotent<S>,
        raw: Vec<Vec<S>>,
    ) -> Result<Self> {
        let d = b.dim();
        let g = host.algebra().gen_count();
        if raw.len() != d {
            return Err(Error::Shape(format!(
                "expected one coaction vector per generator ({d}), got {}",
                raw.len()
            )));
        }
        for (i, v) in raw.iter().enumerate() {
            if v.len() != g * d {
                return Err(Error::Shape(format!(
                    "coaction of generator {i} has length {}, expected {}",
                    v.len(),
                    g * d
                )));
            }
        }
        // delta(x^i) = sum_j M^i_j (x) x^j: slice out the B_1 coordinate.
        let mut entries = Vec::with_capacity(d * d);
        for row in &raw {
            for j in 0..d {
                entries.push((0..g).map(|p| row[p * d + j].clone()).collect());
            }
        }
        let coeffs = AlgebraMatrix::new(
            b.format().clone(),
            b.format().clone(),
            Ambient::Algebra(host.algebra().clone()),
            entries,
        )
        .map_err(|e| Error::Shape(e.to_string()))?;
        let action = QuantumAction { host, b, coeffs };
        action.verify_axioms()?;
        Ok(action)
    }

    pub fn host(&self) -> &BialgebraPresentation<S> {
        &self.host
    }

    pub fn idempotent(&self) -> &Idempotent<S> {
        &self.b
    }

    pub fn coeffs(&self) -> &AlgebraMatrix<S> {
        &self.coeffs
    }

    /// Coassociativity and the counit law on generators.
    fn verify_axioms(&self) -> Result<()> {
        let d = self.b.dim();
        let g = self.host.algebra().gen_count();
        for i in 0..d {
            // (Delta ∘ id) delta (x^i) vs (id ∘ delta) delta (x^i) in
            // A_1 (x) A_1 (x) B_1, coordinates (p, q, j).
            let mut lhs = vec![S::zero(); g * g * d];
            let mut rhs = vec![S::zero(); g * g * d];
            for j in 0..d {
                let dm = self.host.comult_of(self.coeffs.entry(i, j));
                for (pq, c) in dm.iter().enumerate() {
                    if !c.is_zero() {
                        lhs[pq * d + j] = lhs[pq * d + j].clone() + c.clone();
                    }
                }
                for l in 0..d {
                    let prod = tensor_vec(self.coeffs.entry(i, j), self.coeffs.entry(j, l));
                    for (pq, c) in prod.iter().enumerate() {
                        if !c.is_zero() {
                            rhs[pq * d + l] = rhs[pq * d + l].clone() + c.clone();
                        }
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::Shape(format!(
                    "coaction is not coassociative on generator {i}"
                )));
            }
            // Counit law: eps-contraction returns x^i.
            for j in 0..d {
                let eps = self.host.counit_of(self.coeffs.entry(i, j));
                let want = if i == j { S::one() } else { S::zero() };
                if eps != want {
                    return Err(Error::Shape(format!(
                        "counit contraction of the coaction fails at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The corresponding quantum representation; validation re-runs the
    /// Manin and multiplicativity checks.
    pub fn to_representation(&self) -> Result<QuantumRepresentation<S>> {
        QuantumRepresentation::new(self.host.clone(), self.b.clone(), self.coeffs.clone())
    }
}

/// Is the scalar matrix `K` an intertwiner between two representations
/// over the same host: a `(B, C)`-Manin matrix over the field with
/// `M K = K N` entrywise in the degree-1 component?
pub fn intertwiner_check<S: Scalar>(
    k: &AlgebraMatrix<S>,
    rep_m: &QuantumRepresentation<S>,
    rep_n: &QuantumRepresentation<S>,
) -> Result<bool> {
    if !k.is_scalar() {
        return Err(Error::Invalid("intertwiners are scalar matrices".into()));
    }
    if rep_m.host() != rep_n.host() {
        return Err(Error::Invalid("representations do not share a host".into()));
    }
    if k.row_format() != rep_m.idempotent().format()
        || k.col_format() != rep_n.idempotent().format()
    {
        return Err(Error::DimensionMismatch(
            "intertwiner formats do not match the representation spaces".into(),
        ));
    }
    let verdict = is_manin(k, rep_m.idempotent(), rep_n.idempotent())?;
    if !verdict.holds {
        return Ok(false);
    }
    let mk = rep_m.matrix().mul(k)?;
    let kn = k.mul(rep_n.matrix())?;
    Ok(mk == kn)
}

/// A finite-dimensional super-algebra together with a left module
/// structure on a super space `W`: structure constants, unit coordinates
/// and one action matrix per basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalModule<S> {
    algebra_format: Format,
    /// `c[(alpha, beta, gamma)]`: coefficient of `r_gamma` in
    /// `r_alpha r_beta`, flat row-major.
    structure: Vec<S>,
    unit: Vec<S>,
    space_format: Format,
    action: Vec<Matrix<S>>,
}

impl<S: Scalar> ClassicalModule<S> {
    pub fn new(
        algebra_format: Format,
        structure: Vec<S>,
        unit: Vec<S>,
        space_format: Format,
        action: Vec<Matrix<S>>,
    ) -> Result<Self> {
        let n = algebra_format.dim();
        let d = space_format.dim();
        if structure.len() != n * n * n {
            return Err(Error::InvalidModule(format!(
                "structure constants must have {} entries, got {}",
                n * n * n,
                structure.len()
            )));
        }
        if unit.len() != n {
            return Err(Error::InvalidModule(
                "unit coordinate length mismatch".into(),
            ));
        }
        if action.len() != n || action.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidModule(
                "need one d x d action matrix per algebra basis element".into(),
            ));
        }
        let module = ClassicalModule {
            algebra_format,
            structure,
            unit,
            space_format,
            action,
        };
        module.validate()?;
        Ok(module)
    }

    fn c(&self, alpha: usize, beta: usize, gamma: usize) -> &S {
        let n = self.algebra_format.dim();
        &self.structure[(alpha * n + beta) * n + gamma]
    }

    fn validate(&self) -> Result<()> {
        let n = self.algebra_format.dim();
        let d = self.space_format.dim();
        // Parity consistency of the multiplication and the unit.
        for alpha in 0..n {
            for beta in 0..n {
                for gamma in 0..n {
                    if !self.c(alpha, beta, gamma).is_zero()
                        && self.algebra_format.parity(alpha) + self.algebra_format.parity(beta)
                            != self.algebra_format.parity(gamma)
                    {
                        return Err(Error::InvalidModule(format!(
                            "structure constant ({alpha},{beta},{gamma}) violates parity"
                        )));
                    }
                }
            }
            if !self.unit[alpha].is_zero() && self.algebra_format.parity(alpha).is_odd() {
                return Err(Error::InvalidModule("unit has an odd component".into()));
            }
        }
        // Associativity.
        for alpha in 0..n {
            for beta in 0..n {
                for gamma in 0..n {
                    for eps in 0..n {
                        let lhs = (0..n).fold(S::zero(), |acc, delta| {
                            acc + self.c(alpha, beta, delta).clone()
                                * self.c(delta, gamma, eps).clone()
                        });
                        let rhs = (0..n).fold(S::zero(), |acc, delta| {
                            acc + self.c(beta, gamma, delta).clone()
                                * self.c(alpha, delta, eps).clone()
                        });
                        if lhs != rhs {
                            return Err(Error::InvalidModule(format!(
                                "structure constants are not associative at ({alpha},{beta},{gamma})"
                            )));
                        }
                    }
                }
            }
        }
        // Unit laws.
        for beta in 0..n {
            for gamma in 0..n {
                let left = (0..n).fold(S::zero(), |acc, alpha| {
                    acc + self.unit[alpha].clone() * self.c(alpha, beta, gamma).clone()
                });
                let right = (0..n).fold(S::zero(), |acc, alpha| {
                    acc + self.unit[alpha].clone() * self.c(beta, alpha, gamma).clone()
                });
                let want = if beta == gamma { S::one() } else { S::zero() };
                if left != want || right != want {
                    return Err(Error::InvalidModule("unit laws fail".into()));
                }
            }
        }
        // Action matrices are homogeneous of the basis parity.
        for (alpha, rho) in self.action.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    if !rho[(i, j)].is_zero()
                        && self.space_format.parity(i) + self.space_format.parity(j)
                            != self.algebra_format.parity(alpha)
                    {
                        return Err(Error::InvalidModule(format!(
                            "action of basis element {alpha} is not homogeneous"
                        )));
                    }
                }
            }
        }
        // rho is a homomorphism: rho_alpha rho_beta = sum_gamma c rho_gamma.
        for alpha in 0..n {
            for beta in 0..n {
                let lhs = self.action[alpha].mul(&self.action[beta]);
                let mut rhs = Matrix::zeros(d, d);
                for gamma in 0..n {
                    let coeff = self.c(alpha, beta, gamma);
                    if !coeff.is_zero() {
                        rhs = rhs.add(&self.action[gamma].scale(coeff));
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not a homomorphism at ({alpha},{beta})"
                    )));
                }
            }
        }
        // rho(1) = identity.
        let mut rho_unit = Matrix::zeros(d, d);
        for alpha in 0..n {
            if !self.unit[alpha].is_zero() {
                rho_unit = rho_unit.add(&self.action[alpha].scale(&self.unit[alpha]));
            }
        }
        if rho_unit != Matrix::identity(d) {
            return Err(Error::InvalidModule(
                "the unit does not act as the identity".into(),
            ));
        }
        Ok(())
    }

    pub fn algebra_format(&self) -> &Format {
        &self.algebra_format
    }

    pub fn space_format(&self) -> &Format {
        &self.space_format
    }

    pub fn action(&self) -> &[Matrix<S>] {
        &self.action
    }
}

/// Which quadratic host the classical lift targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftVariant {
    /// Symmetric algebra on the dual: host `S(R*)`, idempotent `A_W`.
    Symmetric,
    /// Tensor algebra on the dual: host `T(R*)`, zero idempotent.
    Free,
}

/// Host bialgebra of the lift: generators dual to the algebra basis,
/// comultiplication dual to the multiplication
/// (`Delta(r*_gamma) = sum c^gamma_{alpha beta} r*_alpha (x) r*_beta`),
/// counit the coordinates of the unit.
pub fn lift_host<S: Scalar>(
    module: &ClassicalModule<S>,
    variant: LiftVariant,
) -> Result<BialgebraPresentation<S>> {
    let n = module.algebra_format.dim();
    let algebra = match variant {
        LiftVariant::Symmetric => QuadraticSuperAlgebra::symmetric(module.algebra_format.clone()),
        LiftVariant::Free => QuadraticSuperAlgebra::free(module.algebra_format.clone()),
    };
    let comult = Matrix::from_fn(n, n * n, |gamma, col| {
        module.c(col / n, col % n, gamma).clone()
    });
    let counit = module.unit.clone();
    BialgebraPresentation::new(algebra, comult, counit)
}

/// Lift a classical module to a quantum representation: the matrix of
/// coordinate functionals `rho^i_j` is multiplicative over the lifted
/// host and Manin for `A_W` (symmetric variant) or the zero idempotent
/// (free variant).
pub fn lift_classical_module<S: Scalar>(
    module: &ClassicalModule<S>,
    variant: LiftVariant,
) -> Result<QuantumRepresentation<S>> {
    let host = lift_host(module, variant)?;
    let d = module.space_format.dim();
    let n = module.algebra_format.dim();
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            entries.push(
                (0..n)
                    .map(|alpha| module.action[alpha][(i, j)].clone())
                    .collect(),
            );
        }
    }
    let matrix = AlgebraMatrix::new(
        module.space_format.clone(),
        module.space_format.clone(),
        Ambient::Algebra(host.algebra().clone()),
        entries,
    )?;
    let b = match variant {
        LiftVariant::Symmetric => Idempotent::antisymmetrizer(module.space_format.clone()),
        LiftVariant::Free => Idempotent::zero(module.space_format.clone()),
    };
    QuantumRepresentation::new(host, b, matrix)
}
