use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, GamaError, Result};
use crate::graver::ConstraintKind;

/// Objective coefficient. Integers serialize as JSON integers, other values
/// as `"p/q"` strings.
pub type Coeff = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemClass {
    #[serde(rename = "CBQP")]
    Cbqp,
    #[serde(rename = "QSAP1")]
    Qsap1,
    #[serde(rename = "QSAP2")]
    Qsap2,
    #[serde(rename = "QAP")]
    Qap,
    #[serde(rename = "EXPLICIT")]
    Explicit,
}

impl ProblemClass {
    pub const STRUCTURED: [ProblemClass; 4] = [Self::Cbqp, Self::Qsap1, Self::Qsap2, Self::Qap];

    /// Constraint kind for `n` bricks of size `k` (`k` is ignored for CBQP).
    pub fn kind(self, n: usize, k: usize) -> Result<ConstraintKind> {
        let kind = match self {
            Self::Cbqp => ConstraintKind::Cardinality { n },
            Self::Qsap1 => ConstraintKind::BrickCardinality { n, k },
            Self::Qsap2 => ConstraintKind::CoordinateCardinality { n, k },
            Self::Qap => ConstraintKind::Assignment { n, k },
            Self::Explicit => {
                return Err(GamaError::InvalidDimension("explicit instances need a matrix".into()));
            }
        };
        kind.validate()?;
        Ok(kind)
    }

    pub fn of_kind(kind: &ConstraintKind) -> Self {
        match kind {
            ConstraintKind::Cardinality { .. } => Self::Cbqp,
            ConstraintKind::BrickCardinality { .. } => Self::Qsap1,
            ConstraintKind::CoordinateCardinality { .. } => Self::Qsap2,
            ConstraintKind::Assignment { .. } => Self::Qap,
            ConstraintKind::Explicit { .. } => Self::Explicit,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Cbqp => "CBQP",
            Self::Qsap1 => "QSAP1",
            Self::Qsap2 => "QSAP2",
            Self::Qap => "QAP",
            Self::Explicit => "EXPLICIT",
        }
    }
}

impl fmt::Display for ProblemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemClass {
    type Err = GamaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CBQP" => Ok(Self::Cbqp),
            "QSAP1" => Ok(Self::Qsap1),
            "QSAP2" => Ok(Self::Qsap2),
            "QAP" => Ok(Self::Qap),
            "EXPLICIT" => Ok(Self::Explicit),
            _ => Err(GamaError::Parse(format!("unknown problem class `{s}`"))),
        }
    }
}

/// `min cᵀx + xᵀQx  s.t.  A x = b,  l ≤ x ≤ u`, with `A` implied by `kind`.
/// `Q` is not assumed symmetric or positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticInstance {
    name: String,
    kind: ConstraintKind,
    c: Vec<Coeff>,
    /// row-major `N × N`
    q: Vec<Coeff>,
    b: Vec<i64>,
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl QuadraticInstance {
    pub fn new(
        name: impl Into<String>,
        kind: ConstraintKind,
        c: Vec<Coeff>,
        q: Vec<Coeff>,
        b: Vec<i64>,
        lower: Vec<i64>,
        upper: Vec<i64>,
    ) -> Result<Self> {
        kind.validate()?;
        let n = kind.dim();
        check_dim(n, c.len())?;
        check_dim(n * n, q.len())?;
        check_dim(kind.num_rows(), b.len())?;
        check_dim(n, lower.len())?;
        check_dim(n, upper.len())?;
        if let Some(i) = (0..n).find(|&i| lower[i] > upper[i]) {
            return Err(GamaError::InvalidDimension(format!(
                "lower bound exceeds upper bound at {i}"
            )));
        }
        Ok(Self {
            name: name.into(),
            kind,
            c,
            q,
            b,
            lower,
            upper,
        })
    }

    /// Binary variables (`0 ≤ x ≤ 1`) with integer coefficients.
    pub fn binary(
        name: impl Into<String>,
        kind: ConstraintKind,
        c: Vec<i64>,
        q: Vec<i64>,
        b: Vec<i64>,
    ) -> Result<Self> {
        let n = kind.dim();
        Self::new(
            name,
            kind,
            c.into_iter().map(Coeff::from_integer).collect(),
            q.into_iter().map(Coeff::from_integer).collect(),
            b,
            vec![0; n],
            vec![1; n],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ConstraintKind {
        &self.kind
    }

    pub fn class(&self) -> ProblemClass {
        ProblemClass::of_kind(&self.kind)
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn c(&self) -> &[Coeff] {
        &self.c
    }

    pub fn q(&self) -> &[Coeff] {
        &self.q
    }

    pub fn q_at(&self, i: usize, j: usize) -> Coeff {
        self.q[i * self.dim() + j]
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn is_binary(&self) -> bool {
        self.lower.iter().all(|&l| l == 0) && self.upper.iter().all(|&u| u == 1)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&InstanceFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// On-disk layout of an instance.
#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    name: String,
    class: ProblemClass,
    n: usize,
    k: usize,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    a: Option<Vec<Vec<i64>>>,
    #[serde(with = "coeff_vec")]
    c: Vec<Coeff>,
    #[serde(rename = "Q", with = "coeff_rows")]
    q: Vec<Vec<Coeff>>,
    b: Vec<i64>,
    l: Vec<i64>,
    u: Vec<i64>,
}

impl From<&QuadraticInstance> for InstanceFile {
    fn from(inst: &QuadraticInstance) -> Self {
        let (n, k, a) = match &inst.kind {
            ConstraintKind::Explicit { rows } => (inst.dim(), 1, Some(rows.clone())),
            kind => {
                let (n, k) = kind.shape().expect("structured kind");
                (n, k, None)
            }
        };
        let dim = inst.dim();
        Self {
            name: inst.name.clone(),
            class: inst.class(),
            n,
            k,
            a,
            c: inst.c.clone(),
            q: inst.q.chunks(dim.max(1)).map(<[Coeff]>::to_vec).collect(),
            b: inst.b.clone(),
            l: inst.lower.clone(),
            u: inst.upper.clone(),
        }
    }
}

impl TryFrom<InstanceFile> for QuadraticInstance {
    type Error = GamaError;

    fn try_from(file: InstanceFile) -> Result<Self> {
        let kind = match (file.class, file.a) {
            (ProblemClass::Explicit, Some(rows)) => ConstraintKind::Explicit { rows },
            (ProblemClass::Explicit, None) => {
                return Err(GamaError::Parse("EXPLICIT instance without `A`".into()));
            }
            (class, _) => class.kind(file.n, file.k)?,
        };
        let dim = kind.dim();
        if let Some(row) = file.q.iter().find(|r| r.len() != dim) {
            return Err(GamaError::DimensionMismatch {
                expected: dim,
                actual: row.len(),
            });
        }
        check_dim(dim, file.q.len())?;
        Self::new(file.name, kind, file.c, file.q.concat(), file.b, file.l, file.u)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Text(String),
    Float(f64),
}

impl From<Coeff> for CoeffRepr {
    fn from(c: Coeff) -> Self {
        if c.is_integer() {
            CoeffRepr::Int(c.to_integer())
        } else {
            CoeffRepr::Text(format!("{}/{}", c.numer(), c.denom()))
        }
    }
}

impl TryFrom<CoeffRepr> for Coeff {
    type Error = String;

    fn try_from(r: CoeffRepr) -> std::result::Result<Self, String> {
        match r {
            CoeffRepr::Int(v) => Ok(Coeff::from_integer(v)),
            CoeffRepr::Text(s) => s
                .trim()
                .parse::<Coeff>()
                .map_err(|e| format!("bad coefficient `{s}`: {e}")),
            CoeffRepr::Float(f) => {
                Coeff::approximate_float(f).ok_or_else(|| format!("coefficient {f} is not representable"))
            }
        }
    }
}

mod coeff_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Coeff], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|&c| CoeffRepr::from(c)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Coeff>, D::Error> {
        Vec::<CoeffRepr>::deserialize(d)?
            .into_iter()
            .map(|r| Coeff::try_from(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod coeff_rows {
    use super::*;

    #[derive(Serialize)]
    struct Row<'a>(#[serde(with = "coeff_vec")] &'a [Coeff]);

    #[derive(Deserialize)]
    struct OwnedRow(#[serde(with = "coeff_vec")] Vec<Coeff>);

    pub fn serialize<S: Serializer>(rows: &[Vec<Coeff>], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(rows.iter().map(|r| Row(r)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Coeff>>, D::Error> {
        Ok(Vec::<OwnedRow>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> QuadraticInstance {
        QuadraticInstance::new(
            "tiny",
            ConstraintKind::Cardinality { n: 2 },
            vec![Coeff::from_integer(1), Coeff::new(1, 3)],
            vec![
                Coeff::from_integer(0),
                Coeff::from_integer(-2),
                Coeff::new(5, 2),
                Coeff::from_integer(7),
            ],
            vec![1],
            vec![0, 0],
            vec![1, 1],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let inst = tiny();
        let text = inst.to_json().unwrap();
        assert!(text.contains("\"1/3\""));
        assert!(text.contains("\"class\": \"CBQP\""));
        assert_eq!(QuadraticInstance::from_json(&text).unwrap(), inst);
    }

    #[test]
    fn explicit_round_trip() {
        let inst = QuadraticInstance::binary(
            "e",
            ConstraintKind::Explicit {
                rows: vec![vec![1, 2, 1]],
            },
            vec![0, 0, 0],
            vec![0; 9],
            vec![2],
        )
        .unwrap();
        assert_eq!(QuadraticInstance::from_json(&inst.to_json().unwrap()).unwrap(), inst);
    }

    #[test]
    fn parses_hand_written_file() {
        let text = r#"{"name":"h","class":"QAP","n":2,"k":2,"c":[0,1,2.5,"-1/2"],
            "Q":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,1]],"b":[1,1,1,1],"l":[0,0,0,0],"u":[1,1,1,1]}"#;
        let inst = QuadraticInstance::from_json(text).unwrap();
        assert_eq!(inst.kind(), &ConstraintKind::Assignment { n: 2, k: 2 });
        assert_eq!(inst.c()[2], Coeff::new(5, 2));
        assert_eq!(inst.c()[3], Coeff::new(-1, 2));
    }

    #[test]
    fn rejects_inconsistent_shapes() {
        let text = r#"{"name":"h","class":"CBQP","n":2,"k":1,"c":[0,1],"Q":[[0,0],[0]],"b":[1],"l":[0,0],"u":[1,1]}"#;
        assert!(QuadraticInstance::from_json(text).is_err());
        let text =
            r#"{"name":"h","class":"CBQP","n":2,"k":1,"c":[0,1],"Q":[[0,0],[0,0]],"b":[1,1],"l":[0,0],"u":[1,1]}"#;
        assert!(QuadraticInstance::from_json(text).is_err());
        let text = r#"{"name":"h","class":"CBQP","n":2,"k":1,"c":[0,1],"Q":[[0,0],[0,0]],"b":[1],"l":[0,2],"u":[1,1]}"#;
        assert!(QuadraticInstance::from_json(text).is_err());
        let text =
            r#"{"name":"h","class":"EXPLICIT","n":2,"k":1,"c":[0,1],"Q":[[0,0],[0,0]],"b":[1],"l":[0,0],"u":[1,1]}"#;
        assert!(QuadraticInstance::from_json(text).is_err());
    }

    #[test]
    fn class_names_parse() {
        for class in ProblemClass::STRUCTURED {
            assert_eq!(class.name().parse::<ProblemClass>().unwrap(), class);
        }
        assert_eq!("qsap1".parse::<ProblemClass>().unwrap(), ProblemClass::Qsap1);
        assert!("foo".parse::<ProblemClass>().is_err());
    }
}
