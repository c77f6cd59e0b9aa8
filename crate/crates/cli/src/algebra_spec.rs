//! JSON algebra specifications and builtin algebras.

use std::path::Path;
use std::str::FromStr;

use hyperoct::{InvolutiveAlgebra, Rat, Ring};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::SpecError;

/// An exact scalar written as `[numerator, denominator]`.
pub type Scalar = [i64; 2];

/// On-disk description of an involutive algebra.
///
/// `structure` lists the nonzero constants `b_i b_j = Σ c_k b_k` as
/// `[i, j, k, num, den]`; `involution` is row-major with entry `(i, j)` the
/// coefficient of `b_i` in the image of `b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub basis: Vec<String>,
    pub structure: Vec<[i64; 5]>,
    pub involution: Vec<Vec<Scalar>>,
    pub unit: Vec<Scalar>,
    #[serde(default)]
    pub augmentation: Option<Vec<Scalar>>,
}

fn scalar(field: &str, s: Scalar) -> Result<Rat, SpecError> {
    if s[1] == 0 {
        return Err(SpecError::new(field, "denominator is zero"));
    }
    Ok(Rat::new(s[0], s[1]))
}

fn vector(field: &str, v: &[Scalar], dim: usize) -> Result<Vec<Rat>, SpecError> {
    if v.len() != dim {
        return Err(SpecError::new(field, format!("expected {dim} entries, got {}", v.len())));
    }
    v.iter().enumerate().map(|(i, s)| scalar(&format!("{field}[{i}]"), *s)).collect()
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<AlgebraSpec, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::new("algebra", e.to_string()))
    }

    pub fn build(&self, ring: Ring) -> Result<InvolutiveAlgebra, SpecError> {
        let d = self.dim;
        if d == 0 {
            return Err(SpecError::new("dim", "must be positive"));
        }
        if self.basis.len() != d {
            return Err(SpecError::new("basis", format!("expected {d} names, got {}", self.basis.len())));
        }
        let mut structure = vec![Rat::zero(); d * d * d];
        for (n, &[i, j, k, num, den]) in self.structure.iter().enumerate() {
            let field = format!("structure[{n}]");
            let index = |x: i64| usize::try_from(x).ok().filter(|&x| x < d);
            let (Some(i), Some(j), Some(k)) = (index(i), index(j), index(k)) else {
                return Err(SpecError::new(&field, format!("basis index out of range 0..{d}")));
            };
            let slot = &mut structure[(i * d + j) * d + k];
            if !slot.is_zero() {
                return Err(SpecError::new(&field, "duplicate entry"));
            }
            *slot = scalar(&field, [num, den])?;
        }
        if self.involution.len() != d {
            return Err(SpecError::new("involution", format!("expected {d} rows, got {}", self.involution.len())));
        }
        let involution = self
            .involution
            .iter()
            .enumerate()
            .map(|(i, row)| vector(&format!("involution[{i}]"), row, d))
            .collect::<Result<Vec<_>, _>>()?;
        let unit = vector("unit", &self.unit, d)?;
        let augmentation = self.augmentation.as_ref().map(|e| vector("augmentation", e, d)).transpose()?;
        InvolutiveAlgebra::new(ring, self.basis.clone(), structure, unit, involution, augmentation)
            .map_err(|e| SpecError::new("algebra", e.to_string()))
    }
}

/// Algebras available by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    Ground,
    Cyclic(usize),
    Klein,
    S3,
}

impl FromStr for Builtin {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Builtin, SpecError> {
        let s = s.trim().to_ascii_lowercase();
        let cyclic = s.strip_prefix("cyclic").or_else(|| s.strip_prefix('c')).map(|r| r.trim_start_matches([':', '-']));
        match s.as_str() {
            "ground" | "k" => return Ok(Builtin::Ground),
            "klein" | "v4" | "klein4" => return Ok(Builtin::Klein),
            "s3" | "symmetric3" => return Ok(Builtin::S3),
            _ => {}
        }
        match cyclic.map(str::parse::<usize>) {
            Some(Ok(n)) if n > 0 => Ok(Builtin::Cyclic(n)),
            _ => Err(SpecError::new("algebra", format!("{s:?} is neither a builtin nor a readable file"))),
        }
    }
}

impl Builtin {
    pub fn name(&self) -> String {
        match self {
            Builtin::Ground => "ground".into(),
            Builtin::Cyclic(n) => format!("c{n}"),
            Builtin::Klein => "klein".into(),
            Builtin::S3 => "s3".into(),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<InvolutiveAlgebra, SpecError> {
        Ok(match self {
            Builtin::Ground => InvolutiveAlgebra::ground_ring(ring),
            Builtin::Cyclic(n) => InvolutiveAlgebra::cyclic(*n, ring).map_err(|e| SpecError::new("algebra", e.to_string()))?,
            Builtin::Klein => InvolutiveAlgebra::klein_four(ring),
            Builtin::S3 => InvolutiveAlgebra::symmetric3(ring),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Builtin(Builtin),
    Inline { name: String, spec: AlgebraSpec },
}

impl AlgebraSource {
    /// A readable file is parsed as a spec; anything else must name a builtin.
    pub fn resolve(arg: &str) -> Result<AlgebraSource, SpecError> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| SpecError::new("algebra", e.to_string()))?;
            let name = path.file_stem().map_or_else(|| arg.to_string(), |s| s.to_string_lossy().into_owned());
            return Ok(AlgebraSource::Inline { name, spec: AlgebraSpec::from_json(&text)? });
        }
        arg.parse().map(AlgebraSource::Builtin)
    }

    pub fn name(&self) -> String {
        match self {
            AlgebraSource::Builtin(b) => b.name(),
            AlgebraSource::Inline { name, .. } => name.clone(),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<InvolutiveAlgebra, SpecError> {
        match self {
            AlgebraSource::Builtin(b) => b.build(ring),
            AlgebraSource::Inline { spec, .. } => spec.build(ring),
        }
    }
}

#[derive(Serialize)]
struct Canonical<'a> {
    ring: String,
    names: &'a [String],
    structure: Vec<String>,
    unit: &'a [Rat],
    involution: &'a [Vec<Rat>],
    augmentation: Option<&'a [Rat]>,
}

/// SHA-256 of a canonical serialization of the algebra over its ring.
pub fn fingerprint(a: &InvolutiveAlgebra) -> String {
    let d = a.dim();
    let structure = (0..d * d * d)
        .map(|x| a.structure_constant(x / (d * d), (x / d) % d, x % d).to_string())
        .collect();
    let canonical = Canonical {
        ring: a.ring().to_string(),
        names: a.names(),
        structure,
        unit: a.unit(),
        involution: a.involution_matrix(),
        augmentation: a.augmentation(),
    };
    let bytes = serde_json::to_vec(&canonical).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}
