//! JSON workspace files: named algebras, idempotents, entry matrices,
//! bialgebras and classical modules in one document.
//!
//! Rationals serialize as strings `"p/q"` (or `"p"` when the denominator
//! is one); formats as arrays of 0/1; matrices as row-major nested
//! arrays. Relations and comultiplications are lists of terms with
//! explicit monomial indices, so documents round-trip byte for byte
//! through the canonical forms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::manin::{AlgebraMatrix, Ambient};
use crate::quadratic::{Idempotent, QuadraticSuperAlgebra};
use crate::quantum::{BialgebraPresentation, ClassicalModule};
use crate::superlin::Format;
use crate::{rat, Rat};

/// Parse or cross-reference failure, with the JSON path it happened at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn err<T>(path: impl Into<String>, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError {
        path: path.into(),
        message: message.into(),
    })
}

pub fn parse_rat(s: &str, path: &str) -> Result<Rat, SchemaError> {
    Rat::from_str(s).map_err(|e| SchemaError {
        path: path.to_string(),
        message: format!("invalid rational {s:?}: {e}"),
    })
}

pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorDto {
    pub name: String,
    pub parity: u8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDto {
    pub coeff: String,
    pub mono: [usize; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDto {
    pub generators: Vec<GeneratorDto>,
    pub relations: Vec<Vec<TermDto>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdempotentDto {
    pub format: Vec<u8>,
    pub matrix: Vec<Vec<String>>,
}

/// Entry of an entry-matrix cell: a bare rational for scalar matrices, a
/// generator-name-to-coefficient map for first-order matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellDto {
    Scalar(String),
    Linear(BTreeMap<String, String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDto {
    pub row_format: Vec<u8>,
    pub col_format: Vec<u8>,
    /// `"scalar"`, `"universal"`, or the name of an algebra in the
    /// workspace.
    pub ambient: String,
    pub entries: Vec<Vec<CellDto>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComultTermDto {
    pub coeff: String,
    pub pair: [usize; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BialgebraDto {
    pub algebra: String,
    /// Row per generator: the terms of `Delta(x^i)`.
    pub comult: Vec<Vec<ComultTermDto>>,
    pub counit: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleDto {
    pub parities: Vec<u8>,
    /// `structure_constants[alpha][beta][gamma]` = coefficient of
    /// `r_gamma` in `r_alpha r_beta`.
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    pub space_parities: Vec<u8>,
    /// One matrix per basis element of the algebra.
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct WorkspaceDto {
    pub version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub idempotents: BTreeMap<String, IdempotentDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, MatrixDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bialgebras: BTreeMap<String, BialgebraDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDto>,
}

/// A parsed workspace: algebras, idempotents, bialgebras and modules are
/// validated eagerly; matrices stay in DTO form until resolved against
/// an ambient (their `"universal"` ambient needs the idempotent pair of
/// the command that uses them).
#[derive(Debug)]
pub struct Workspace {
    pub algebras: BTreeMap<String, QuadraticSuperAlgebra<Rat>>,
    pub idempotents: BTreeMap<String, Idempotent<Rat>>,
    pub matrices: BTreeMap<String, MatrixDto>,
    pub bialgebras: BTreeMap<String, BialgebraPresentation<Rat>>,
    pub modules: BTreeMap<String, ClassicalModule<Rat>>,
}

impl Workspace {
    pub fn from_json(text: &str) -> Result<Workspace, SchemaError> {
        let dto: WorkspaceDto = serde_json::from_str(text).map_err(|e| SchemaError {
            path: "$".into(),
            message: e.to_string(),
        })?;
        Workspace::from_dto(dto)
    }

    pub fn from_dto(dto: WorkspaceDto) -> Result<Workspace, SchemaError> {
        if dto.version != 1 {
            return err("version", format!("unsupported version {}", dto.version));
        }
        let mut algebras = BTreeMap::new();
        for (name, a) in &dto.algebras {
            algebras.insert(
                name.clone(),
                algebra_from_dto(a, &format!("algebras.{name}"))?,
            );
        }
        let mut idempotents = BTreeMap::new();
        for (name, i) in &dto.idempotents {
            idempotents.insert(
                name.clone(),
                idempotent_from_dto(i, &format!("idempotents.{name}"))?,
            );
        }
        let mut bialgebras = BTreeMap::new();
        for (name, b) in &dto.bialgebras {
            let path = format!("bialgebras.{name}");
            let algebra = algebras
                .get(&b.algebra)
                .ok_or_else(|| SchemaError {
                    path: format!("{path}.algebra"),
                    message: format!("unknown algebra {:?}", b.algebra),
                })?
                .clone();
            let g = algebra.gen_count();
            if b.comult.len() != g {
                return err(format!("{path}.comult"), format!("expected {g} rows"));
            }
            let mut comult = Matrix::zeros(g, g * g);
            for (i, terms) in b.comult.iter().enumerate() {
                for (t, term) in terms.iter().enumerate() {
                    let tpath = format!("{path}.comult[{i}][{t}]");
                    let [j, k] = term.pair;
                    if j >= g || k >= g {
                        return err(tpath, "generator index out of range");
                    }
                    comult[(i, j * g + k)] = parse_rat(&term.coeff, &tpath)?;
                }
            }
            if b.counit.len() != g {
                return err(
                    format!("{path}.counit"),
                    format!("expected {g} coefficients"),
                );
            }
            let counit = b
                .counit
                .iter()
                .enumerate()
                .map(|(i, s)| parse_rat(s, &format!("{path}.counit[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let host =
                BialgebraPresentation::new(algebra, comult, counit).map_err(|e| SchemaError {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
            bialgebras.insert(name.clone(), host);
        }
        let mut modules = BTreeMap::new();
        for (name, m) in &dto.modules {
            modules.insert(
                name.clone(),
                module_from_dto(m, &format!("modules.{name}"))?,
            );
        }
        // Matrix ambients must resolve (unless scalar/universal).
        for (name, m) in &dto.matrices {
            if m.ambient != "scalar"
                && m.ambient != "universal"
                && !algebras.contains_key(&m.ambient)
            {
                return err(
                    format!("matrices.{name}.ambient"),
                    format!("unknown algebra {:?}", m.ambient),
                );
            }
        }
        Ok(Workspace {
            algebras,
            idempotents,
            matrices: dto.matrices,
            bialgebras,
            modules,
        })
    }

    /// Resolve a matrix definition into an entry matrix. `universal_pair`
    /// supplies the idempotents when the ambient is `"universal"`.
    pub fn resolve_matrix(
        &self,
        name: &str,
        universal_pair: Option<(&Idempotent<Rat>, &Idempotent<Rat>)>,
    ) -> Result<AlgebraMatrix<Rat>, SchemaError> {
        let path = format!("matrices.{name}");
        let dto = self.matrices.get(name).ok_or_else(|| SchemaError {
            path: path.clone(),
            message: "unknown matrix".into(),
        })?;
        let ambient = match dto.ambient.as_str() {
            "scalar" => Ambient::Field,
            "universal" => {
                let (b, bt) = universal_pair.ok_or_else(|| SchemaError {
                    path: format!("{path}.ambient"),
                    message: "a universal ambient needs the idempotent pair of the command".into(),
                })?;
                Ambient::Algebra(crate::manin::universal_manin_algebra(b, bt).algebra)
            }
            other => Ambient::Algebra(self.algebras[other].clone()),
        };
        matrix_from_dto(dto, ambient, &path)
    }
}

pub fn algebra_from_dto(
    dto: &AlgebraDto,
    path: &str,
) -> Result<QuadraticSuperAlgebra<Rat>, SchemaError> {
    let bits: Vec<u8> = dto.generators.iter().map(|g| g.parity).collect();
    let format = Format::from_bits(&bits).map_err(|e| SchemaError {
        path: format!("{path}.generators"),
        message: e.to_string(),
    })?;
    let d = format.dim();
    let mut vectors = Vec::with_capacity(dto.relations.len());
    for (r, terms) in dto.relations.iter().enumerate() {
        let mut v = vec![rat(0); d * d];
        for (t, term) in terms.iter().enumerate() {
            let tpath = format!("{path}.relations[{r}][{t}]");
            let [i, j] = term.mono;
            if i >= d || j >= d {
                return err(tpath, "generator index out of range");
            }
            v[i * d + j] = parse_rat(&term.coeff, &tpath)?;
        }
        vectors.push(v);
    }
    let names = dto.generators.iter().map(|g| g.name.clone()).collect();
    QuadraticSuperAlgebra::from_relations(format, vectors)
        .map(|a| a.with_names(names))
        .map_err(|e| SchemaError {
            path: path.to_string(),
            message: e.to_string(),
        })
}

pub fn algebra_to_dto(algebra: &QuadraticSuperAlgebra<Rat>) -> AlgebraDto {
    let names = algebra.names();
    let generators = names
        .iter()
        .zip(algebra.gen_format().parities())
        .map(|(name, p)| GeneratorDto {
            name: name.clone(),
            parity: p.bit(),
        })
        .collect();
    let d = algebra.gen_count();
    let relations = algebra
        .relations()
        .basis_rows()
        .into_iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(flat, c)| TermDto {
                    coeff: rat_string(c),
                    mono: [flat / d, flat % d],
                })
                .collect()
        })
        .collect();
    AlgebraDto {
        generators,
        relations,
    }
}

pub fn idempotent_from_dto(
    dto: &IdempotentDto,
    path: &str,
) -> Result<Idempotent<Rat>, SchemaError> {
    let format = Format::from_bits(&dto.format).map_err(|e| SchemaError {
        path: format!("{path}.format"),
        message: e.to_string(),
    })?;
    let matrix = matrix_grid(&dto.matrix, &format!("{path}.matrix"))?;
    Idempotent::new(format, matrix).map_err(|e| SchemaError {
        path: path.to_string(),
        message: e.to_string(),
    })
}

pub fn idempotent_to_dto(b: &Idempotent<Rat>) -> IdempotentDto {
    IdempotentDto {
        format: b.format().bits(),
        matrix: (0..b.matrix().rows())
            .map(|r| b.matrix().row(r).iter().map(rat_string).collect())
            .collect(),
    }
}

fn matrix_grid(rows: &[Vec<String>], path: &str) -> Result<Matrix<Rat>, SchemaError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return err(path, "ragged matrix rows");
    }
    let mut out = Matrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            out[(i, j)] = parse_rat(cell, &format!("{path}[{i}][{j}]"))?;
        }
    }
    Ok(out)
}

fn matrix_from_dto(
    dto: &MatrixDto,
    ambient: Ambient<Rat>,
    path: &str,
) -> Result<AlgebraMatrix<Rat>, SchemaError> {
    let row_format = Format::from_bits(&dto.row_format).map_err(|e| SchemaError {
        path: format!("{path}.row_format"),
        message: e.to_string(),
    })?;
    let col_format = Format::from_bits(&dto.col_format).map_err(|e| SchemaError {
        path: format!("{path}.col_format"),
        message: e.to_string(),
    })?;
    if dto.entries.len() != row_format.dim()
        || dto.entries.iter().any(|r| r.len() != col_format.dim())
    {
        return err(
            format!("{path}.entries"),
            "entry grid shape does not match the formats",
        );
    }
    let gen_index: BTreeMap<String, usize> = match &ambient {
        Ambient::Field => BTreeMap::new(),
        Ambient::Algebra(a) => a
            .names()
            .into_iter()
            .enumerate()
            .map(|(i, n)| (n, i))
            .collect(),
    };
    let len = ambient.entry_len();
    let mut entries = Vec::new();
    for (i, row) in dto.entries.iter().enumerate() {
        for (a, cell) in row.iter().enumerate() {
            let cpath = format!("{path}.entries[{i}][{a}]");
            let coords = match (cell, &ambient) {
                (CellDto::Scalar(s), Ambient::Field) => vec![parse_rat(s, &cpath)?],
                (CellDto::Linear(map), Ambient::Algebra(_)) => {
                    let mut v = vec![rat(0); len];
                    for (gen, coeff) in map {
                        let idx = gen_index.get(gen).ok_or_else(|| SchemaError {
                            path: cpath.clone(),
                            message: format!("unknown generator {gen:?}"),
                        })?;
                        v[*idx] = parse_rat(coeff, &cpath)?;
                    }
                    v
                }
                (CellDto::Scalar(_), _) => {
                    return err(cpath, "scalar entry in a first-order matrix")
                }
                (CellDto::Linear(_), Ambient::Field) => {
                    return err(cpath, "generator map entry in a scalar matrix")
                }
            };
            entries.push(coords);
        }
    }
    AlgebraMatrix::new(row_format, col_format, ambient, entries).map_err(|e| SchemaError {
        path: path.to_string(),
        message: e.to_string(),
    })
}

pub fn matrix_to_dto(m: &AlgebraMatrix<Rat>, ambient_name: &str) -> MatrixDto {
    let names = match m.ambient() {
        Ambient::Field => Vec::new(),
        Ambient::Algebra(a) => a.names(),
    };
    let entries = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|a| {
                    let coords = m.entry(i, a);
                    if m.is_scalar() {
                        CellDto::Scalar(rat_string(&coords[0]))
                    } else {
                        CellDto::Linear(
                            coords
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                                .map(|(p, c)| (names[p].clone(), rat_string(c)))
                                .collect(),
                        )
                    }
                })
                .collect()
        })
        .collect();
    MatrixDto {
        row_format: m.row_format().bits(),
        col_format: m.col_format().bits(),
        ambient: ambient_name.to_string(),
        entries,
    }
}

pub fn bialgebra_to_dto(host: &BialgebraPresentation<Rat>, algebra_name: &str) -> BialgebraDto {
    let g = host.algebra().gen_count();
    let comult = (0..g)
        .map(|i| {
            (0..g * g)
                .filter(|&col| !num_traits::Zero::is_zero(&host.comult()[(i, col)]))
                .map(|col| ComultTermDto {
                    coeff: rat_string(&host.comult()[(i, col)]),
                    pair: [col / g, col % g],
                })
                .collect()
        })
        .collect();
    BialgebraDto {
        algebra: algebra_name.to_string(),
        comult,
        counit: host.counit().iter().map(rat_string).collect(),
    }
}

fn module_from_dto(dto: &ModuleDto, path: &str) -> Result<ClassicalModule<Rat>, SchemaError> {
    let algebra_format = Format::from_bits(&dto.parities).map_err(|e| SchemaError {
        path: format!("{path}.parities"),
        message: e.to_string(),
    })?;
    let space_format = Format::from_bits(&dto.space_parities).map_err(|e| SchemaError {
        path: format!("{path}.space_parities"),
        message: e.to_string(),
    })?;
    let n = algebra_format.dim();
    let mut structure = vec![rat(0); n * n * n];
    if dto.structure_constants.len() != n {
        return err(
            format!("{path}.structure_constants"),
            format!("expected {n} slices"),
        );
    }
    for (alpha, slice) in dto.structure_constants.iter().enumerate() {
        if slice.len() != n {
            return err(
                format!("{path}.structure_constants[{alpha}]"),
                format!("expected {n} rows"),
            );
        }
        for (beta, row) in slice.iter().enumerate() {
            if row.len() != n {
                return err(
                    format!("{path}.structure_constants[{alpha}][{beta}]"),
                    format!("expected {n} entries"),
                );
            }
            for (gamma, cell) in row.iter().enumerate() {
                structure[(alpha * n + beta) * n + gamma] = parse_rat(
                    cell,
                    &format!("{path}.structure_constants[{alpha}][{beta}][{gamma}]"),
                )?;
            }
        }
    }
    let unit = dto
        .unit
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rat(s, &format!("{path}.unit[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if dto.action.len() != n {
        return err(format!("{path}.action"), format!("expected {n} matrices"));
    }
    let action = dto
        .action
        .iter()
        .enumerate()
        .map(|(alpha, rows)| matrix_grid(rows, &format!("{path}.action[{alpha}]")))
        .collect::<Result<Vec<_>, _>>()?;
    ClassicalModule::new(algebra_format, structure, unit, space_format, action).map_err(|e| {
        SchemaError {
            path: path.to_string(),
            message: e.to_string(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    const SAMPLE: &str = r#"{
        "version": 1,
        "algebras": {
            "poly": {
                "generators": [{"name": "x", "parity": 0}, {"name": "y", "parity": 0}],
                "relations": [[{"coeff": "1", "mono": [0, 1]}, {"coeff": "-1", "mono": [1, 0]}]]
            }
        },
        "idempotents": {
            "aw": {
                "format": [0, 0],
                "matrix": [["0","0","0","0"],
                           ["0","1/2","-1/2","0"],
                           ["0","-1/2","1/2","0"],
                           ["0","0","0","0"]]
            }
        },
        "matrices": {
            "gens": {
                "row_format": [0, 0],
                "col_format": [0, 0],
                "ambient": "scalar",
                "entries": [["1", "0"], ["0", "1"]]
            }
        }
    }"#;

    #[test]
    fn sample_workspace_parses() {
        let ws = Workspace::from_json(SAMPLE).unwrap();
        let poly = &ws.algebras["poly"];
        assert_eq!(poly.relations().dim(), 1);
        assert_eq!(
            poly,
            &QuadraticSuperAlgebra::symmetric(poly.gen_format().clone())
        );
        let aw = &ws.idempotents["aw"];
        assert_eq!(aw.matrix().rank(), 1);
        let gens = ws.resolve_matrix("gens", None).unwrap();
        assert!(gens.is_scalar());
    }

    #[test]
    fn rational_string_forms() {
        assert_eq!(parse_rat("3/4", "t").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-5", "t").unwrap(), rat(-5));
        assert_eq!(rat_string(&ratio(3, 4)), "3/4");
        assert_eq!(rat_string(&rat(-5)), "-5");
        assert_eq!(rat_string(&ratio(6, 4)), "3/2");
        assert!(parse_rat("x", "t").is_err());
    }

    #[test]
    fn algebra_roundtrip_is_canonical() {
        let ws = Workspace::from_json(SAMPLE).unwrap();
        let dto = algebra_to_dto(&ws.algebras["poly"]);
        let text1 = serde_json::to_string(&dto).unwrap();
        let back = algebra_from_dto(&dto, "roundtrip").unwrap();
        let text2 = serde_json::to_string(&algebra_to_dto(&back)).unwrap();
        assert_eq!(text1, text2);
    }

    #[test]
    fn version_and_reference_errors() {
        let bad_version = r#"{"version": 2}"#;
        assert!(Workspace::from_json(bad_version).is_err());
        let dangling = r#"{
            "version": 1,
            "matrices": {"m": {"row_format": [0], "col_format": [0],
                               "ambient": "nope", "entries": [["1"]]}}
        }"#;
        let e = Workspace::from_json(dangling).unwrap_err();
        assert!(e.path.contains("matrices.m.ambient"));
    }

    #[test]
    fn malformed_parity_is_rejected() {
        let bad = r#"{
            "version": 1,
            "algebras": {"a": {"generators": [{"name": "x", "parity": 3}], "relations": []}}
        }"#;
        let e = Workspace::from_json(bad).unwrap_err();
        assert!(e.path.contains("algebras.a"));
    }
}
